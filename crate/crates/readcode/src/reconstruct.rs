//! Recovering words from read vectors, their mod-2 images, and (possibly
//! noisy) sub-derivatives.
//!
//! Reconstruction is the workhorse of the decoder: a clean read vector
//! determines its word bit by bit in either direction, and the exact spot
//! where that process leaves {0,1} localizes a substitution.

use crate::channel::{ReadVector, SubDerivative, Word};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    /// The computed symbol at `read_index` is inconsistent with a clean read
    /// vector: a non-binary bit inside the word, or a nonzero value in the
    /// padding region past the word end.
    #[error("reconstruction halted at read index {read_index} with inconsistent value {value}")]
    Halt { read_index: usize, value: i64 },
    #[error("reconstruction requires delta = 1 (got delta={delta})")]
    DeltaUnsupported { delta: usize },
    #[error("mod-2 input must be a binary sequence of length at least ell")]
    InvalidMod2Input,
    #[error("context must hold exactly ell - 1 = {expected} bits (got {got})")]
    ContextLength { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Prefix,
    Suffix,
}

/// Recovers the unique word whose read vector is `r` (delta = 1).
///
/// Left to right the rule is x_p = r_p - wt(x_{p-ell+1}..x_{p-1}); right to
/// left it is x_p = r_{p+ell-1} - wt(x_{p+1}..x_{p+ell-1}). Every read,
/// including the padding region past the word, is checked for consistency, so
/// this succeeds exactly when `r` is the noiseless read vector of some word.
/// On failure the reported halt index doubles as the error locator for
/// substitutions of magnitude greater than one.
pub fn reconstruct(r: &ReadVector, direction: Direction) -> Result<Word, ReconstructError> {
    if r.delta() != 1 {
        return Err(ReconstructError::DeltaUnsupported { delta: r.delta() });
    }
    let n = r.word_len();
    let ell = r.ell();
    let mut bits = vec![0u8; n];
    let wt = |bits: &[u8], lo: i64, hi: i64| -> i64 {
        (lo.max(1)..=hi.min(n as i64)).map(|j| i64::from(bits[(j - 1) as usize])).sum()
    };
    match direction {
        Direction::LeftToRight => {
            for p in 1..=(n + ell - 1) as i64 {
                let v = r.get(p) - wt(&bits, p - ell as i64 + 1, p - 1);
                if p <= n as i64 {
                    if v != 0 && v != 1 {
                        return Err(ReconstructError::Halt { read_index: p as usize, value: v });
                    }
                    bits[(p - 1) as usize] = v as u8;
                } else if v != 0 {
                    return Err(ReconstructError::Halt { read_index: p as usize, value: v });
                }
            }
        }
        Direction::RightToLeft => {
            for p in (1..=n as i64).rev() {
                let v = r.get(p + ell as i64 - 1) - wt(&bits, p + 1, p + ell as i64 - 1);
                if v != 0 && v != 1 {
                    return Err(ReconstructError::Halt {
                        read_index: (p + ell as i64 - 1) as usize,
                        value: v,
                    });
                }
                bits[(p - 1) as usize] = v as u8;
            }
            // Leading reads cover only prefix bits; check them as well.
            for q in 1..ell.min(n + ell - 1) as i64 {
                let v = r.get(q) - wt(&bits, q - ell as i64 + 1, q);
                if v != 0 {
                    return Err(ReconstructError::Halt { read_index: q as usize, value: v });
                }
            }
        }
    }
    Ok(Word::from_bits(bits).expect("reconstructed bits are binary"))
}

/// Recovers a word from the mod-2 image of its read vector (delta = 1).
///
/// The XOR recurrences mirror [`reconstruct`]; bits computed inside the word
/// are binary by construction, so inconsistencies only surface in the parity
/// checks over the boundary reads.
pub fn reconstruct_mod2(
    bits: &[u8],
    ell: usize,
    direction: Direction,
) -> Result<Word, ReconstructError> {
    if ell < 1 || bits.len() < ell || bits.iter().any(|&b| b > 1) {
        return Err(ReconstructError::InvalidMod2Input);
    }
    let n = bits.len() + 1 - ell;
    let get = |p: i64| -> u8 {
        if p >= 1 && p <= bits.len() as i64 {
            bits[(p - 1) as usize]
        } else {
            0
        }
    };
    let mut out = vec![0u8; n];
    let parity = |out: &[u8], lo: i64, hi: i64| -> u8 {
        (lo.max(1)..=hi.min(n as i64)).fold(0, |acc, j| acc ^ out[(j - 1) as usize])
    };
    match direction {
        Direction::LeftToRight => {
            for p in 1..=(n + ell - 1) as i64 {
                let v = get(p) ^ parity(&out, p - ell as i64 + 1, p - 1);
                if p <= n as i64 {
                    out[(p - 1) as usize] = v;
                } else if v != 0 {
                    return Err(ReconstructError::Halt {
                        read_index: p as usize,
                        value: i64::from(v),
                    });
                }
            }
        }
        Direction::RightToLeft => {
            for p in (1..=n as i64).rev() {
                out[(p - 1) as usize] = get(p + ell as i64 - 1) ^ parity(&out, p + 1, p + ell as i64 - 1);
            }
            for q in 1..ell.min(n + ell - 1) as i64 {
                let v = get(q) ^ parity(&out, q - ell as i64 + 1, q);
                if v != 0 {
                    return Err(ReconstructError::Halt {
                        read_index: q as usize,
                        value: i64::from(v),
                    });
                }
            }
        }
    }
    Ok(Word::from_bits(out).expect("reconstructed bits are binary"))
}

/// Recovers a word fragment from a window of reads plus the ell - 1 context
/// bits flanking it, in either direction.
///
/// In prefix mode `context` holds x_{i-ell+1}..x_{i-1} and `window` holds
/// R_i..R_j; in suffix mode `context` holds x_{j+1}..x_{j+ell-1} and `window`
/// holds R_{i+ell-1}..R_{j+ell-1}. Context bits outside the word are zeros.
/// The returned fragment is x_i..x_j either way.
pub fn reconstruct_substring(
    context: &[u8],
    window: &[i64],
    side: Side,
    ell: usize,
) -> Result<Vec<u8>, ReconstructError> {
    if context.len() != ell - 1 {
        return Err(ReconstructError::ContextLength { expected: ell - 1, got: context.len() });
    }
    let w = window.len();
    let mut arr = vec![0i64; w + ell - 1];
    match side {
        Side::Prefix => {
            for (slot, &b) in arr.iter_mut().zip(context) {
                *slot = i64::from(b);
            }
            for t in 0..w {
                let have: i64 = arr[t..t + ell - 1].iter().sum();
                let v = window[t] - have;
                if v != 0 && v != 1 {
                    return Err(ReconstructError::Halt { read_index: t + 1, value: v });
                }
                arr[ell - 1 + t] = v;
            }
            Ok(arr[ell - 1..].iter().map(|&v| v as u8).collect())
        }
        Side::Suffix => {
            for (slot, &b) in arr[w..].iter_mut().zip(context) {
                *slot = i64::from(b);
            }
            for t in (0..w).rev() {
                let have: i64 = arr[t + 1..t + ell].iter().sum();
                let v = window[t] - have;
                if v != 0 && v != 1 {
                    return Err(ReconstructError::Halt { read_index: t + 1, value: v });
                }
                arr[t] = v;
            }
            Ok(arr[..w].iter().map(|&v| v as u8).collect())
        }
    }
}

/// Candidate bits recovered from one sub-derivative at the word indices
/// beta+1, beta+1+ell, ...; values may leave {0,1} on noisy input and are
/// returned unclamped, since the decoder localizes errors by exactly those
/// excursions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialReconstruction {
    pub beta: usize,
    pub indices: Vec<usize>,
    pub values: Vec<i64>,
    pub direction: Direction,
}

/// Reconstructs the residue-class subsequence of a word from its
/// sub-derivative via the cumulative-sum rule (delta = 1).
///
/// Left to right the value at block m is the sum of the first m + 1 entries;
/// right to left it is minus the sum of the remaining ones, which agrees on
/// clean data because clean sub-derivatives sum to zero. Blocks are truncated
/// at word index n; padding entries still participate in the sums.
pub fn subderiv_reconstruct(d: &SubDerivative, direction: Direction) -> PartialReconstruction {
    assert_eq!(d.delta(), 1, "sub-derivative reconstruction requires delta = 1");
    let beta = d.alpha();
    let n = d.word_len() as i64;
    let ell = d.ell() as i64;
    let block_count = ((n - beta as i64 - 1).div_euclid(ell) + 1).max(0) as usize;
    let indices = (0..block_count).map(|m| beta + 1 + m * d.ell()).collect();
    let values = match direction {
        Direction::LeftToRight => {
            let mut acc = 0;
            d.entries()
                .iter()
                .take(block_count)
                .map(|&e| {
                    acc += e;
                    acc
                })
                .collect()
        }
        Direction::RightToLeft => {
            let total: i64 = d.entries().iter().sum();
            let mut acc = 0;
            d.entries()
                .iter()
                .take(block_count)
                .map(|&e| {
                    acc += e;
                    acc - total
                })
                .collect()
        }
    };
    PartialReconstruction { beta, indices, values, direction }
}

/// The halt indices bracketing a substitution, from the two partial
/// reconstructions of the same noisy sub-derivative.
///
/// `forward` is the minimum block index where the left-to-right values leave
/// {0,1} (block count if they never do); `backward` is the maximum such block
/// for the right-to-left values (-1 if none). The candidate error blocks are
/// exactly backward+1..=forward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HaltIndices {
    pub forward: i64,
    pub backward: i64,
}

impl HaltIndices {
    pub fn candidate_blocks(&self) -> std::ops::RangeInclusive<i64> {
        self.backward + 1..=self.forward
    }
}

pub fn halt_indices(hat: &PartialReconstruction, tilde: &PartialReconstruction) -> HaltIndices {
    let nonbinary = |v: &i64| *v != 0 && *v != 1;
    let forward = hat
        .values
        .iter()
        .position(nonbinary)
        .map_or(hat.values.len() as i64, |m| m as i64);
    let backward = tilde
        .values
        .iter()
        .rposition(nonbinary)
        .map_or(-1, |m| m as i64);
    HaltIndices { forward, backward }
}
