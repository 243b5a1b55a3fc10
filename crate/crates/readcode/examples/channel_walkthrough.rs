//! Walk a word through the channel: read vector, sub-derivatives,
//! interleaving, and structural validation.
//!
//! ```bash
//! cargo run --example channel_walkthrough
//! ```

use readcode::channel::{
    corrupt, interleave, read_vector, read_vector_mod2, sub_derivative, validate_read_vector,
    ChannelParams, Word,
};

fn main() {
    let x: Word = "101100".parse().unwrap();
    let params = ChannelParams::new(3, 1).unwrap();
    let r = read_vector(&x, params).unwrap();

    println!("word            : {x}");
    println!("(3,1)-read      : {:?}", r.values());
    println!("mod 2           : {:?}", read_vector_mod2(&r));
    for alpha in 0..3 {
        let d = sub_derivative(&r, alpha).unwrap();
        println!("sub-derivative {alpha}: {:?} (weight {})", d.entries(), d.weight());
    }

    let il = interleave(&r).unwrap();
    println!("interleaved     : {:?} blocks {:?}", il.values(), il.boundaries());
    println!("read index 4 sits at interleaved position {}", il.position_of_read_index(4));

    println!("clean vector valid: {}", validate_read_vector(&r).is_valid());
    let noisy = corrupt(&r, 4, 3).unwrap();
    let report = validate_read_vector(&noisy);
    println!("after corrupting read 4 to 3:");
    for v in &report.violations {
        println!("  violated: {v:?}");
    }

    // A wider window with a bigger shift: the (2,2)-read of the same word.
    let r22 = read_vector(&x, ChannelParams::new(2, 2).unwrap()).unwrap();
    println!("(2,2)-read      : {:?}", r22.values());
}
