//! The full decoding pipeline: localize a substitution by sub-derivative
//! weights and halt indices, then pin it down with the tiled Hamming
//! syndrome. Shows the magnitude-1 and magnitude->=2 paths, and why the code
//! constraint is what disambiguates.
//!
//! ```bash
//! cargo run --example single_error_decoding
//! ```

use readcode::channel::{corrupt, read_vector, ReadVector};
use readcode::code::{code_params, decode, locate_error, Code, LocateOutcome};

fn main() {
    // The classic ambiguous case: (1,1,2,3,2,1,0,0) is one substitution away
    // from the read vectors of BOTH 101100 (at read 4) and 011100 (at read
    // 1). Localization narrows the error to those two reads; only the code
    // constraint could break the tie, and at n = 6 neither word is in the
    // code, so decoding honestly fails.
    let params = code_params(6, 3).unwrap();
    let noisy = ReadVector::from_values(vec![1, 1, 2, 3, 2, 1, 0, 0], 3, 1, 6).unwrap();
    match locate_error(&noisy, &params).unwrap() {
        LocateOutcome::Single(loc) => {
            println!("noisy reads  : {:?}", noisy.values());
            println!("error value  : {:+}", loc.error_value);
            println!("residue pair : beta={} alpha={}", loc.beta, loc.alpha);
            println!("halt indices : forward={} backward={}", loc.halts.forward, loc.halts.backward);
            println!("candidates   : {:?}", loc.candidates);
        }
        other => println!("unexpected: {other:?}"),
    }
    println!("decode -> {:?}\n", decode(&noisy, &params));

    // On a real codeword every single substitution comes back corrected.
    let params = code_params(10, 3).unwrap();
    let code = Code::new(params).unwrap();
    let c = code.encode(42).unwrap();
    let clean = read_vector(c, params.channel()).unwrap();
    println!("codeword     : {c}");
    println!("clean reads  : {:?}", clean.values());

    // Magnitude 1: resolved through the parity-check syndrome.
    let noisy = corrupt(&clean, 6, clean.get(6) + 1).unwrap();
    println!("reads[6] += 1 -> {:?}", decode(&noisy, &params));

    // Magnitude 2: the left-to-right halt finds the position outright.
    let noisy = corrupt(&clean, 6, clean.get(6) + 2).unwrap();
    println!("reads[6] += 2 -> {:?}", decode(&noisy, &params));

    // Two substitutions violate the promise and are flagged.
    let twice = corrupt(&corrupt(&clean, 1, clean.get(1) + 1).unwrap(), 3, clean.get(3) - 2).unwrap();
    println!("double hit    -> {:?}", decode(&twice, &params));
}
