//! Recover words from reads: full values, mod-2 image, substrings from
//! partial windows, and the halt behavior on corrupted input.
//!
//! ```bash
//! cargo run --example reconstruction
//! ```

use readcode::channel::{corrupt, read_vector, ChannelParams, Word};
use readcode::reconstruct::{
    reconstruct, reconstruct_mod2, reconstruct_substring, Direction, Side,
};

fn main() {
    let x: Word = "101100".parse().unwrap();
    let r = read_vector(&x, ChannelParams::new(3, 1).unwrap()).unwrap();

    // The mod-2 image alone pins the word down, from either end.
    let mod2 = [1, 1, 0, 0, 0, 1, 0, 0];
    let ltr = reconstruct_mod2(&mod2, 3, Direction::LeftToRight).unwrap();
    let rtl = reconstruct_mod2(&mod2, 3, Direction::RightToLeft).unwrap();
    println!("from parities {mod2:?}: left-to-right {ltr}, right-to-left {rtl}");

    // Full values as well, of course.
    println!("from full reads: {}", reconstruct(&r, Direction::LeftToRight).unwrap());

    // A middle segment x3..x6 from its flanking context and a window of reads.
    let prefix = reconstruct_substring(&[1, 0], &r.values()[2..6], Side::Prefix, 3).unwrap();
    println!("x3..x6 from x1,x2 and R3..R6 : {prefix:?}");
    let suffix = reconstruct_substring(&[0, 0], &r.values()[4..8], Side::Suffix, 3).unwrap();
    println!("x3..x6 from x7,x8 and R5..R8 : {suffix:?}");

    // On corrupted input the reconstruction halts exactly at the bad read.
    let noisy = corrupt(&r, 4, 0).unwrap();
    match reconstruct(&noisy, Direction::LeftToRight) {
        Err(e) => println!("corrupted read 4 -> {e}"),
        Ok(w) => println!("unexpectedly reconstructed {w}"),
    }
}
