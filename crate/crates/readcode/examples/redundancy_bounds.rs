//! The redundancy picture from both sides: the asymptotic log log n lower
//! bound with its cover-size intermediate, and the exact measured redundancy
//! of the constructed code at enumerable sizes.
//!
//! ```bash
//! cargo run --example redundancy_bounds
//! ```

use readcode::bounds::{log2_pullback_cover_size, redundancy_lower_bound};
use readcode::code::{code_params, Code};

fn main() {
    println!("asymptotic lower bound at epsilon = 1/2:");
    println!("{:>10} {:>4} {:>14} {:>12}", "n", "p", "n-log2|Q_p|", "bound");
    for exp in [8u32, 10, 12, 14, 16, 18, 20] {
        let n = 1u64 << exp;
        let lb = redundancy_lower_bound(n, 0.5).unwrap();
        // The exact cover-size intermediate at ell = 3.
        let log_cover = log2_pullback_cover_size(n as usize, 3, lb.p as usize);
        println!(
            "{:>10} {:>4} {:>14.6} {:>12.6}",
            n,
            lb.p,
            n as f64 - log_cover,
            lb.bound
        );
    }

    println!("\nmeasured redundancy of the construction at ell = 3:");
    println!("{:>4} {:>6} {:>11} {:>12}", "n", "|C|", "redundancy", "lower bound");
    for n in 6..=13 {
        let code = Code::new(code_params(n, 3).unwrap()).unwrap();
        let lb = redundancy_lower_bound(n as u64, 0.5).unwrap();
        println!("{n:>4} {:>6} {:>11.3} {:>12.3}", code.size(), code.redundancy(), lb.bound);
    }
}
