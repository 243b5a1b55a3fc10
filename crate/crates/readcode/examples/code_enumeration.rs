//! Enumerate the code, measure its redundancy against the analytic bound,
//! and round-trip messages through rank encoding.
//!
//! ```bash
//! cargo run --example code_enumeration
//! ```

use readcode::code::{code_params, Code};

fn main() {
    println!("{:>3} {:>3} {:>6} {:>11} {:>10}", "n", "ell", "|C|", "redundancy", "bound+2");
    for ell in [3, 4, 5] {
        for n in 6..=13 {
            if n < ell {
                continue;
            }
            let params = code_params(n, ell).unwrap();
            let code = Code::new(params).unwrap();
            let nf = n as f64;
            let bound = nf.log2().log2()
                + (1.0 + (3.0 + (1.0 + ell as f64 / nf).log2()) / nf.log2()).log2()
                + 4.0;
            println!(
                "{n:>3} {ell:>3} {:>6} {:>11.3} {:>10.3}",
                code.size(),
                code.redundancy(),
                bound
            );
        }
    }

    let code = Code::new(code_params(10, 3).unwrap()).unwrap();
    println!("\nC(10,3) holds {} codewords; parameters {:?}", code.size(), code.params());
    for index in [0, 1, code.size() - 1] {
        let word = code.encode(index).unwrap();
        assert_eq!(code.decode_index(word).unwrap(), index);
        println!("  message {index:>2} <-> {word}");
    }
}
