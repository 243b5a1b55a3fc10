//! Which word pairs can a single read substitution confuse? Exactly those
//! whose read vectors differ in two positions, and those in turn are exactly
//! the pairs related by swapping (1,0) blocks to (0,1) at ell-spaced
//! positions. This example shows one such pair and then verifies the
//! equivalence exhaustively.
//!
//! ```bash
//! cargo run --example confusable_pairs
//! ```

use readcode::bounds::{confusable, verify_characterization};
use readcode::channel::{read_vector, ChannelParams, Word};

fn main() {
    let x: Word = "101100".parse().unwrap();
    let y: Word = "011010".parse().unwrap();
    let params = ChannelParams::new(3, 1).unwrap();
    println!("R(x) = {:?}", read_vector(&x, params).unwrap().values());
    println!("R(y) = {:?}", read_vector(&y, params).unwrap().values());

    let w = confusable(&x, &y, 3).unwrap().expect("the pair is confusable");
    println!(
        "confusable: reads differ at {} and {} = {} + {}*3; {} carries the (1,0) blocks",
        w.i,
        w.j,
        w.i,
        w.p,
        if w.x_leads { "x" } else { "y" }
    );

    // One bit flip is never confusable: it moves ell reads at once.
    let z: Word = "111100".parse().unwrap();
    println!("flip one bit -> confusable? {}", confusable(&x, &z, 3).unwrap().is_some());

    for (n, ell) in [(8, 3), (10, 4)] {
        let rep = verify_characterization(n, ell).unwrap();
        println!(
            "n={n} ell={ell}: {} distance-2 pairs, {} generated, match = {}",
            rep.distance_two_pairs,
            rep.generated_pairs,
            rep.passed()
        );
    }
}
