//! The single-substitution read code for unit shift and window length at
//! least 3, with its complete decoder.
//!
//! A word belongs to the code when the mod-2 image of its concatenated
//! sub-derivatives is run-length limited and the mod-2 image of its
//! interleaved read vector has zero syndrome under a tiled Hamming
//! parity-check. The first constraint caps how far apart the two halt indices
//! of a corrupted sub-derivative can drift; the second pins the error inside
//! that window.

use crate::channel::{
    corrupt, interleave, nonneg_mod2, read_vector, sub_derivative, sub_derivative_concat,
    ChannelParams, ReadVector, Word,
};
use crate::reconstruct::{
    halt_indices, reconstruct, subderiv_reconstruct, Direction, HaltIndices, ReconstructError,
};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

/// Exhaustive enumeration refuses beyond this word length.
pub const MAX_ENUMERATION_N: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("code parameters require ell >= 3 and n >= ell (got n={n}, ell={ell})")]
    InvalidParams { n: usize, ell: usize },
    #[error("bit sequence of length {got} does not match parity-check length {expected}")]
    SyndromeLength { got: usize, expected: usize },
    #[error("exhaustive enumeration is guarded to n <= {max} (got n={n})")]
    ScaleGuard { n: usize, max: usize },
    #[error("message index {index} out of range for a code of size {size}")]
    IndexRange { index: u64, size: u64 },
    #[error("word is not a codeword")]
    NotInCode,
    #[error("read vector parameters (n={got_n}, ell={got_ell}, delta={got_delta}) do not match the code (n={n}, ell={ell}, delta=1)")]
    ParamMismatch { got_n: usize, got_ell: usize, got_delta: usize, n: usize, ell: usize },
}

/// Derived parameters of the code.
///
/// `rll_limit` caps runs of 0s in the concatenated sub-derivative mod 2;
/// `window` is the localization window the decoder relies on; `hamming_order`
/// is chosen so that 2^order - 1 >= window, which makes any `window`
/// consecutive parity-check columns pairwise distinct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub n: usize,
    pub ell: usize,
    #[serde(rename = "L")]
    pub rll_limit: usize,
    #[serde(rename = "a")]
    pub hamming_order: u32,
    #[serde(rename = "W")]
    pub window: usize,
}

/// L = ceil(log2(2(n+ell))), W = 2L + 4, a = ceil(log2(W + 1)).
pub fn code_params(n: usize, ell: usize) -> Result<CodeParams, CodeError> {
    if ell < 3 || n < ell {
        return Err(CodeError::InvalidParams { n, ell });
    }
    let rll_limit = ceil_log2(2 * (n + ell) as u64) as usize;
    let window = 2 * rll_limit + 4;
    let hamming_order = ceil_log2(window as u64 + 1);
    debug_assert!((1usize << hamming_order) > window);
    Ok(CodeParams { n, ell, rll_limit, hamming_order, window })
}

impl CodeParams {
    pub fn read_len(&self) -> usize {
        self.n + self.ell - 1
    }

    pub fn layout(&self) -> ParityCheckLayout {
        ParityCheckLayout { order: self.hamming_order, length: self.read_len() }
    }

    pub fn channel(&self) -> ChannelParams {
        ChannelParams::new(self.ell, 1).expect("ell >= 3 >= delta = 1")
    }

    fn check_vector(&self, r: &ReadVector) -> Result<(), CodeError> {
        if r.word_len() != self.n || r.ell() != self.ell || r.delta() != 1 {
            return Err(CodeError::ParamMismatch {
                got_n: r.word_len(),
                got_ell: r.ell(),
                got_delta: r.delta(),
                n: self.n,
                ell: self.ell,
            });
        }
        Ok(())
    }
}

fn ceil_log2(v: u64) -> u32 {
    assert!(v >= 1);
    64 - (v - 1).leading_zeros()
}

/// Parity-check matrix of the order-`order` Hamming code, tiled cyclically to
/// `length` columns. Column i carries the value ((i-1) mod (2^order - 1)) + 1,
/// so every column is nonzero and any 2^order - 1 consecutive columns are
/// pairwise distinct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParityCheckLayout {
    pub order: u32,
    pub length: usize,
}

impl ParityCheckLayout {
    pub fn column(&self, i: usize) -> u32 {
        debug_assert!(i >= 1 && i <= self.length);
        (((i - 1) % ((1 << self.order) - 1)) + 1) as u32
    }
}

/// True iff every maximal run of 0s has length at most `limit`.
pub fn rll_check(bits: &[u8], limit: usize) -> bool {
    let mut run = 0;
    for &b in bits {
        if b == 0 {
            run += 1;
            if run > limit {
                return false;
            }
        } else {
            run = 0;
        }
    }
    true
}

/// XOR of the parity-check columns selected by the nonzero bits.
pub fn syndrome(bits: &[u8], layout: &ParityCheckLayout) -> Result<u32, CodeError> {
    if bits.len() != layout.length {
        return Err(CodeError::SyndromeLength { got: bits.len(), expected: layout.length });
    }
    Ok(bits
        .iter()
        .enumerate()
        .filter(|(_, &b)| b & 1 == 1)
        .fold(0, |acc, (idx, _)| acc ^ layout.column(idx + 1)))
}

/// Mod-2 image of the concatenated sub-derivatives of the clean read vector
/// of `x` (the sequence the RLL constraint applies to).
pub fn delta_mod2(x: &Word, ell: usize) -> Vec<u8> {
    let r = read_vector(x, ChannelParams::new(ell, 1).expect("delta = 1")).expect("delta = 1");
    sub_derivative_concat(&r).iter().map(|&d| nonneg_mod2(d)).collect()
}

/// Membership test: both the RLL and the zero-syndrome constraint must hold.
pub fn is_codeword(x: &Word, params: &CodeParams) -> bool {
    if x.len() != params.n {
        return false;
    }
    if !rll_check(&delta_mod2(x, params.ell), params.rll_limit) {
        return false;
    }
    let r = read_vector(x, params.channel()).expect("delta = 1");
    let il = interleave(&r).expect("delta = 1");
    syndrome(&il.mod2(), &params.layout()).expect("length matches") == 0
}

/// All codewords in lexicographic bit order. Guarded exhaustive scan,
/// partitioned across threads by word prefix.
pub fn enumerate_code(params: &CodeParams) -> Result<Vec<Word>, CodeError> {
    if params.n > MAX_ENUMERATION_N {
        return Err(CodeError::ScaleGuard { n: params.n, max: MAX_ENUMERATION_N });
    }
    Ok((0..1u64 << params.n)
        .into_par_iter()
        .filter_map(|code| {
            let x = Word::from_code(code, params.n);
            is_codeword(&x, params).then_some(x)
        })
        .collect())
}

/// A materialized code: ranking and unranking over the enumerated codewords.
#[derive(Debug, Clone)]
pub struct Code {
    params: CodeParams,
    words: Vec<Word>,
}

impl Code {
    pub fn new(params: CodeParams) -> Result<Self, CodeError> {
        Ok(Code { words: enumerate_code(&params)?, params })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn size(&self) -> u64 {
        self.words.len() as u64
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Message index -> codeword (the index-th smallest codeword).
    pub fn encode(&self, message_index: u64) -> Result<&Word, CodeError> {
        self.words
            .get(message_index as usize)
            .ok_or(CodeError::IndexRange { index: message_index, size: self.size() })
    }

    /// Codeword -> message index; rejects non-codewords.
    pub fn decode_index(&self, x: &Word) -> Result<u64, CodeError> {
        self.words.binary_search(x).map(|i| i as u64).map_err(|_| CodeError::NotInCode)
    }

    /// Measured redundancy n - log2 |C|.
    pub fn redundancy(&self) -> f64 {
        self.params.n as f64 - (self.size() as f64).log2()
    }
}

/// Why decoding gave up; every variant signals input outside the promised
/// single-substitution error model.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecodeFailure {
    #[error("sub-derivative weights {weights:?} are inconsistent with a single substitution")]
    WeightPattern { weights: Vec<i64> },
    #[error("candidate window of size {size} exceeds the decodable window {window}")]
    WindowExceeded { size: usize, window: usize },
    #[error("no candidate read index matches syndrome {syndrome}")]
    NoSyndromeMatch { syndrome: u32 },
    #[error("multiple candidate read indices match syndrome {syndrome}")]
    AmbiguousSyndrome { syndrome: u32 },
    #[error("corrected value at read index {read_index} leaves the output alphabet")]
    CorrectionOutOfRange { read_index: usize },
    #[error("reconstruction failed at read index {read_index} (value {value})")]
    Reconstruction { read_index: usize, value: i64 },
    #[error("nonzero weights but left-to-right reconstruction never halted")]
    MissingHalt,
    #[error("corrected word is not a codeword")]
    NotCodeword,
    #[error("{0}")]
    Parameters(String),
}

impl From<ReconstructError> for DecodeFailure {
    fn from(e: ReconstructError) -> Self {
        match e {
            ReconstructError::Halt { read_index, value } => {
                DecodeFailure::Reconstruction { read_index, value }
            }
            other => DecodeFailure::Parameters(other.to_string()),
        }
    }
}

/// Localization of a single substitution from the sub-derivative weights and
/// the halt indices of the affected residue class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Localization {
    /// The substitution offset, wt of the beta sub-derivative.
    pub error_value: i64,
    /// Residue class whose sub-derivative gained the offset.
    pub beta: usize,
    /// Adjacent residue class that lost it; the error index is congruent to
    /// alpha mod ell.
    pub alpha: usize,
    pub halts: HaltIndices,
    /// Read indices that may carry the substitution, in increasing order.
    pub candidates: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LocateOutcome {
    Clean,
    Single(Localization),
}

/// Finds the unique adjacent residue pair (beta, alpha) with opposite nonzero
/// sub-derivative weights, the error value, and the candidate read indices
/// bracketed by the halt indices. All-zero weights report a clean vector.
pub fn locate_error(r: &ReadVector, params: &CodeParams) -> Result<LocateOutcome, DecodeFailure> {
    params.check_vector(r).map_err(|e| DecodeFailure::Parameters(e.to_string()))?;
    let ell = params.ell;
    let weights: Vec<i64> = (0..ell)
        .map(|a| sub_derivative(r, a).expect("alpha in range").weight())
        .collect();
    let nonzero: Vec<usize> = (0..ell).filter(|&a| weights[a] != 0).collect();
    if nonzero.is_empty() {
        return Ok(LocateOutcome::Clean);
    }
    let mut pair = None;
    if nonzero.len() == 2 {
        for &beta in &nonzero {
            let alpha = (beta + 1) % ell;
            if weights[alpha] == -weights[beta] && nonzero.contains(&alpha) && pair.is_none() {
                pair = Some((beta, alpha));
            }
        }
    }
    let Some((beta, alpha)) = pair else {
        return Err(DecodeFailure::WeightPattern { weights });
    };
    let d = sub_derivative(r, beta).expect("beta in range");
    let hat = subderiv_reconstruct(&d, Direction::LeftToRight);
    let tilde = subderiv_reconstruct(&d, Direction::RightToLeft);
    let halts = halt_indices(&hat, &tilde);
    let candidates = halts
        .candidate_blocks()
        .map(|h| beta + (h as usize) * ell + 1)
        .filter(|&k| k >= 1 && k <= params.read_len())
        .collect();
    Ok(LocateOutcome::Single(Localization {
        error_value: weights[beta],
        beta,
        alpha,
        halts,
        candidates,
    }))
}

/// Result of decoding a (possibly corrupted) read vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DecodeOutcome {
    NoError { word: Word },
    Corrected { word: Word, read_index: usize, error_value: i64 },
    Failure { reason: DecodeFailure },
}

/// Decodes a read vector that differs from some codeword's read vector in at
/// most one position.
///
/// Clean weights reconstruct directly. A substitution of magnitude at least 2
/// is located by the first halt of left-to-right reconstruction. A
/// magnitude-1 substitution flips exactly one bit of the interleaved mod-2
/// image, so inside the candidate window (which the RLL constraint caps at
/// `window` positions, all consecutive in the interleaved order) the Hamming
/// syndrome identifies it uniquely. Either way the offending read is repaired
/// by the known error value and the word re-checked against the code.
pub fn decode(r: &ReadVector, params: &CodeParams) -> DecodeOutcome {
    match locate_error(r, params) {
        Err(reason) => DecodeOutcome::Failure { reason },
        Ok(LocateOutcome::Clean) => match reconstruct(r, Direction::LeftToRight) {
            Err(e) => DecodeOutcome::Failure { reason: e.into() },
            Ok(word) => {
                if is_codeword(&word, params) {
                    DecodeOutcome::NoError { word }
                } else {
                    DecodeOutcome::Failure { reason: DecodeFailure::NotCodeword }
                }
            }
        },
        Ok(LocateOutcome::Single(loc)) => {
            let k = if loc.error_value.abs() >= 2 {
                match reconstruct(r, Direction::LeftToRight) {
                    Err(ReconstructError::Halt { read_index, .. }) => read_index,
                    Err(e) => return DecodeOutcome::Failure { reason: e.into() },
                    Ok(_) => return DecodeOutcome::Failure { reason: DecodeFailure::MissingHalt },
                }
            } else {
                if loc.candidates.len() > params.window {
                    return DecodeOutcome::Failure {
                        reason: DecodeFailure::WindowExceeded {
                            size: loc.candidates.len(),
                            window: params.window,
                        },
                    };
                }
                let il = interleave(r).expect("delta = 1");
                let layout = params.layout();
                let s = syndrome(&il.mod2(), &layout).expect("length matches");
                let matches: Vec<usize> = loc
                    .candidates
                    .iter()
                    .copied()
                    .filter(|&k| layout.column(il.position_of_read_index(k)) == s)
                    .collect();
                match matches.len() {
                    1 => matches[0],
                    0 => {
                        return DecodeOutcome::Failure {
                            reason: DecodeFailure::NoSyndromeMatch { syndrome: s },
                        }
                    }
                    _ => {
                        return DecodeOutcome::Failure {
                            reason: DecodeFailure::AmbiguousSyndrome { syndrome: s },
                        }
                    }
                }
            };
            let repaired = r.get(k as i64) - loc.error_value;
            let fixed = match corrupt(r, k, repaired) {
                Ok(fixed) => fixed,
                Err(_) => {
                    return DecodeOutcome::Failure {
                        reason: DecodeFailure::CorrectionOutOfRange { read_index: k },
                    }
                }
            };
            match reconstruct(&fixed, Direction::LeftToRight) {
                Err(e) => DecodeOutcome::Failure { reason: e.into() },
                Ok(word) => {
                    if is_codeword(&word, params) {
                        DecodeOutcome::Corrected { word, read_index: k, error_value: loc.error_value }
                    } else {
                        DecodeOutcome::Failure { reason: DecodeFailure::NotCodeword }
                    }
                }
            }
        }
    }
}
