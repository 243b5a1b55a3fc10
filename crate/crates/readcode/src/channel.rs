//! The sliding-window weight channel: binary words in, integer read vectors out.
//!
//! A window of length `ell` slides over a word by `delta` positions per step
//! and emits the L1-weight of the enclosed bits, with zero padding outside the
//! word. Everything downstream (reconstruction, the single-substitution code,
//! the confusability bounds) is built on these transforms.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChannelError {
    #[error("word must be a nonempty string over {{0,1}}")]
    InvalidWord,
    #[error("window parameters must satisfy 1 <= delta <= ell (got ell={ell}, delta={delta})")]
    InvalidParams { ell: usize, delta: usize },
    #[error("(n + ell) mod delta must be 0 (n={n}, ell={ell}, delta={delta})")]
    Divisibility { n: usize, ell: usize, delta: usize },
    #[error("residue class {alpha} out of range 0..{bound}")]
    AlphaRange { alpha: usize, bound: usize },
    #[error("substitution index {index} out of range 1..={len}")]
    IndexRange { index: usize, len: usize },
    #[error("substituted value {value} outside the output alphabet 0..={ell}")]
    ValueRange { value: i64, ell: usize },
    #[error("substituted value equals the current entry, which is not a substitution")]
    IdentitySubstitution,
    #[error("read vector of length {got} does not match (n + ell)/delta - 1 = {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("operation requires delta = 1 (got delta={delta})")]
    DeltaUnsupported { delta: usize },
}

/// A binary word, indexed 1..=n. Positions outside the word read as 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    bits: Vec<u8>,
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Word {
    pub fn from_bits(bits: Vec<u8>) -> Result<Self, ChannelError> {
        if bits.is_empty() || bits.iter().any(|&b| b > 1) {
            return Err(ChannelError::InvalidWord);
        }
        Ok(Word { bits })
    }

    /// Word of length `n` with bit 1 as the most significant bit of `code`,
    /// so ascending codes enumerate words in lexicographic bit order.
    pub fn from_code(code: u64, n: usize) -> Self {
        assert!((1..=63).contains(&n), "word length out of range");
        let bits = (0..n).map(|i| ((code >> (n - 1 - i)) & 1) as u8).collect();
        Word { bits }
    }

    pub fn to_code(&self) -> u64 {
        self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one bit
    }

    /// 1-indexed access with the padding convention x_i = 0 for i outside [1, n].
    pub fn bit(&self, i: i64) -> i64 {
        if i >= 1 && i <= self.bits.len() as i64 {
            i64::from(self.bits[(i - 1) as usize])
        } else {
            0
        }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn weight(&self) -> i64 {
        self.bits.iter().map(|&b| i64::from(b)).sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ChannelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(ChannelError::InvalidWord),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        Word::from_bits(bits)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Window length and shift of the channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChannelParams {
    ell: usize,
    delta: usize,
}

impl ChannelParams {
    pub fn new(ell: usize, delta: usize) -> Result<Self, ChannelError> {
        if delta < 1 || delta > ell {
            return Err(ChannelError::InvalidParams { ell, delta });
        }
        Ok(ChannelParams { ell, delta })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Number of reads for a word of length `n`, checking the divisibility
    /// requirement (n + ell) mod delta = 0.
    pub fn read_len(&self, n: usize) -> Result<usize, ChannelError> {
        if !(n + self.ell).is_multiple_of(self.delta) {
            return Err(ChannelError::Divisibility { n, ell: self.ell, delta: self.delta });
        }
        Ok((n + self.ell) / self.delta - 1)
    }
}

/// The sequence of window weights produced by the channel, indexed 1..=len.
///
/// A noiseless entry at index i lies in [0, min(ell, i*delta, n+ell-i*delta)];
/// a noisy entry may be anything in [0, ell].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReadVector {
    values: Vec<i64>,
    ell: usize,
    delta: usize,
    n: usize,
    noisy: bool,
}

impl ReadVector {
    /// Wrap externally supplied values (e.g. parsed from the CLI). The result
    /// is tagged noisy since nothing guarantees it came from a clean word.
    pub fn from_values(
        values: Vec<i64>,
        ell: usize,
        delta: usize,
        n: usize,
    ) -> Result<Self, ChannelError> {
        let params = ChannelParams::new(ell, delta)?;
        let expected = params.read_len(n)?;
        if values.len() != expected {
            return Err(ChannelError::LengthMismatch { got: values.len(), expected });
        }
        if let Some(&v) = values.iter().find(|&&v| v < 0 || v > ell as i64) {
            return Err(ChannelError::ValueRange { value: v, ell });
        }
        Ok(ReadVector { values, ell, delta, n, noisy: true })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// 1-indexed access; indices outside [1, len] read as 0.
    pub fn get(&self, p: i64) -> i64 {
        if p >= 1 && p <= self.values.len() as i64 {
            self.values[(p - 1) as usize]
        } else {
            0
        }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Length of the word this vector was read from.
    pub fn word_len(&self) -> usize {
        self.n
    }

    pub fn is_noisy(&self) -> bool {
        self.noisy
    }

    pub fn params(&self) -> ChannelParams {
        ChannelParams { ell: self.ell, delta: self.delta }
    }
}

/// One residue class of consecutive read differences.
///
/// Entries lie in [-ell, ell]; on noiseless delta=1 input they lie in
/// {-1, 0, 1} and sum to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubDerivative {
    alpha: usize,
    entries: Vec<i64>,
    ell: usize,
    delta: usize,
    n: usize,
}

impl SubDerivative {
    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn word_len(&self) -> usize {
        self.n
    }
}

/// The read vector reordered into its residue-class blocks (delta = 1 only).
///
/// Block i-1 holds the reads at indices congruent to i mod ell, in increasing
/// order; total length is n + ell - 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterleavedRead {
    values: Vec<i64>,
    boundaries: Vec<usize>,
    ell: usize,
    n: usize,
}

impl InterleavedRead {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Lengths of the ell blocks, in block order.
    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Maps a read index (1-indexed) to its position in the interleaved
    /// vector (1-indexed).
    pub fn position_of_read_index(&self, k: usize) -> usize {
        assert!(k >= 1 && k <= self.values.len(), "read index out of range");
        let block = (k - 1) % self.ell; // zero-based block number
        let before: usize = self.boundaries[..block].iter().sum();
        before + (k - 1) / self.ell + 1
    }

    /// Inverse of [`position_of_read_index`](Self::position_of_read_index).
    pub fn read_index_at(&self, pos: usize) -> usize {
        assert!(pos >= 1 && pos <= self.values.len(), "position out of range");
        let mut block = 0;
        let mut offset = pos - 1;
        while offset >= self.boundaries[block] {
            offset -= self.boundaries[block];
            block += 1;
        }
        block + 1 + offset * self.ell
    }

    pub fn mod2(&self) -> Vec<u8> {
        self.values.iter().map(|&v| nonneg_mod2(v)).collect()
    }
}

/// Nonnegative residue mod 2, so -1 maps to 1.
pub(crate) fn nonneg_mod2(v: i64) -> u8 {
    v.rem_euclid(2) as u8
}

/// The (ell, delta)-read vector of `x`: entry i is the weight of the window
/// x_{i*delta-ell+1}..x_{i*delta}, out-of-range positions reading as 0.
pub fn read_vector(x: &Word, params: ChannelParams) -> Result<ReadVector, ChannelError> {
    let len = params.read_len(x.len())?;
    let (ell, delta) = (params.ell as i64, params.delta as i64);
    let values = (1..=len as i64)
        .map(|i| (i * delta - ell + 1..=i * delta).map(|j| x.bit(j)).sum())
        .collect();
    Ok(ReadVector { values, ell: params.ell, delta: params.delta, n: x.len(), noisy: false })
}

/// Elementwise residue mod 2 of a read vector.
pub fn read_vector_mod2(r: &ReadVector) -> Vec<u8> {
    r.values.iter().map(|&v| nonneg_mod2(v)).collect()
}

/// The alpha-th read sub-derivative: consecutive differences of the read
/// vector restricted to indices congruent to alpha + 1 modulo floor(ell/delta)
/// steps, with zero padding past both ends. Works on noisy vectors too; the
/// decoder relies on that.
pub fn sub_derivative(r: &ReadVector, alpha: usize) -> Result<SubDerivative, ChannelError> {
    let q = r.ell / r.delta;
    if alpha >= q {
        return Err(ChannelError::AlphaRange { alpha, bound: q });
    }
    let (n, ell, delta) = (r.n as i64, r.ell as i64, r.delta as i64);
    let k = (n + ell - (alpha as i64 + 1) * delta) / (delta * q as i64);
    let entries = (0..=k)
        .map(|m| {
            let hi = alpha as i64 + m * q as i64;
            r.get(hi + 1) - r.get(hi)
        })
        .collect();
    Ok(SubDerivative { alpha, entries, ell: r.ell, delta: r.delta, n: r.n })
}

/// Concatenation of all sub-derivatives in residue order. For delta = 1 this
/// is the sequence whose mod-2 image the code constrains to be run-length
/// limited.
pub fn sub_derivative_concat(r: &ReadVector) -> Vec<i64> {
    let q = r.ell / r.delta;
    let mut out = Vec::new();
    for alpha in 0..q {
        out.extend(sub_derivative(r, alpha).expect("alpha in range").entries);
    }
    out
}

/// Reorders a read vector into its residue blocks (delta = 1 only).
pub fn interleave(r: &ReadVector) -> Result<InterleavedRead, ChannelError> {
    if r.delta != 1 {
        return Err(ChannelError::DeltaUnsupported { delta: r.delta });
    }
    let len = r.values.len(); // n + ell - 1
    let mut values = Vec::with_capacity(len);
    let mut boundaries = Vec::with_capacity(r.ell);
    for i in 1..=r.ell {
        let block_len = if i <= len { (len - i) / r.ell + 1 } else { 0 };
        for h in 0..block_len {
            values.push(r.get((i + h * r.ell) as i64));
        }
        boundaries.push(block_len);
    }
    Ok(InterleavedRead { values, boundaries, ell: r.ell, n: r.n })
}

/// Substitutes position `k` (1-indexed) with `v`, which must differ from the
/// current entry and lie in the output alphabet [0, ell].
pub fn corrupt(r: &ReadVector, k: usize, v: i64) -> Result<ReadVector, ChannelError> {
    if k < 1 || k > r.values.len() {
        return Err(ChannelError::IndexRange { index: k, len: r.values.len() });
    }
    if v < 0 || v > r.ell as i64 {
        return Err(ChannelError::ValueRange { value: v, ell: r.ell });
    }
    if v == r.values[k - 1] {
        return Err(ChannelError::IdentitySubstitution);
    }
    let mut out = r.clone();
    out.values[k - 1] = v;
    out.noisy = true;
    Ok(out)
}

/// Structural property violated by a read vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "property")]
pub enum PropertyViolation {
    /// Adjacent reads may differ by at most delta.
    AdjacentStep { index: usize, step: i64 },
    /// Every sub-derivative of a clean vector sums to zero.
    SubDerivativeWeight { alpha: usize, weight: i64 },
    /// Nonzero sub-derivative entries alternate in sign starting with +1.
    SignAlternation { alpha: usize, entry_index: usize },
}

/// Outcome of [`validate_read_vector`]; violations are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<PropertyViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the structural properties a noiseless read vector must satisfy:
/// the adjacent-step bound for any delta, the weight and alternation rules
/// for delta = 1.
pub fn validate_read_vector(r: &ReadVector) -> ValidationReport {
    let mut violations = Vec::new();
    for i in 1..r.values.len() {
        let step = r.values[i] - r.values[i - 1];
        if step.abs() > r.delta as i64 {
            violations.push(PropertyViolation::AdjacentStep { index: i, step });
        }
    }
    if r.delta == 1 {
        for alpha in 0..r.ell {
            let d = sub_derivative(r, alpha).expect("alpha in range");
            let weight = d.weight();
            if weight != 0 {
                violations.push(PropertyViolation::SubDerivativeWeight { alpha, weight });
            }
            let mut expect = 1i64;
            for (idx, &e) in d.entries().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e != expect {
                    violations.push(PropertyViolation::SignAlternation { alpha, entry_index: idx });
                    break;
                }
                expect = -expect;
            }
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn rv(s: &str, ell: usize, delta: usize) -> ReadVector {
        read_vector(&w(s), ChannelParams::new(ell, delta).unwrap()).unwrap()
    }

    #[test]
    fn read_vector_of_worked_example() {
        let r = rv("101100", 3, 1);
        assert_eq!(r.values(), [1, 1, 2, 2, 2, 1, 0, 0]);
        assert!(!r.is_noisy());
    }

    #[test]
    fn read_vector_of_zero_word() {
        assert_eq!(rv("000000", 3, 1).values(), [0; 8]);
    }

    #[test]
    fn read_vector_with_shift_two() {
        assert_eq!(rv("101100", 2, 2).values(), [1, 2, 0]);
    }

    #[test]
    fn read_vector_rejects_bad_params() {
        // (5 + 4) is odd, so a shift of 2 cannot tile the padded word.
        let x = w("10110");
        assert!(matches!(
            read_vector(&x, ChannelParams::new(4, 2).unwrap()),
            Err(ChannelError::Divisibility { .. })
        ));
        assert!(matches!(ChannelParams::new(2, 3), Err(ChannelError::InvalidParams { .. })));
        assert!(matches!(ChannelParams::new(0, 0), Err(ChannelError::InvalidParams { .. })));
    }

    #[test]
    fn mod2_image() {
        let r = rv("101100", 3, 1);
        assert_eq!(read_vector_mod2(&r), [1, 1, 0, 0, 0, 1, 0, 0]);
        assert_eq!(read_vector_mod2(&rv("000000", 3, 1)), [0; 8]);
        assert_eq!(read_vector_mod2(&rv("101100", 2, 2)), [1, 0, 0]);
    }

    #[test]
    fn sub_derivatives_of_worked_example() {
        let r = rv("101100", 3, 1);
        assert_eq!(sub_derivative(&r, 0).unwrap().entries(), [1, 0, -1]);
        assert_eq!(sub_derivative(&r, 1).unwrap().entries(), [0, 0, 0]);
        assert_eq!(sub_derivative(&r, 2).unwrap().entries(), [1, -1, 0]);
        assert!(matches!(sub_derivative(&r, 3), Err(ChannelError::AlphaRange { .. })));
    }

    #[test]
    fn sub_derivative_of_noisy_vector() {
        let r = ReadVector::from_values(vec![1, 1, 2, 3, 2, 1, 0, 0], 3, 1, 6).unwrap();
        assert_eq!(sub_derivative(&r, 0).unwrap().entries(), [1, 1, -1]);
    }

    #[test]
    fn sub_derivative_concat_uses_padding() {
        let r = rv("101100", 3, 1);
        assert_eq!(sub_derivative_concat(&r), [1, 0, -1, 0, 0, 0, 1, -1, 0]);
        // Both residues of R(11) = (1,2,1) pick up a padded zero on the right.
        let r = rv("11", 2, 1);
        assert_eq!(r.values(), [1, 2, 1]);
        assert_eq!(sub_derivative_concat(&r), [1, -1, 1, -1]);
        let zero = rv("0000", 3, 1);
        assert!(sub_derivative_concat(&zero).iter().all(|&d| d == 0));
    }

    #[test]
    fn interleave_blocks_and_index_maps() {
        let r = rv("101100", 3, 1);
        let il = interleave(&r).unwrap();
        assert_eq!(il.values(), [1, 2, 0, 1, 2, 0, 2, 1]);
        assert_eq!(il.boundaries(), [3, 3, 2]);
        assert_eq!(il.position_of_read_index(4), 2);
        assert_eq!(il.position_of_read_index(8), 6);
        for k in 1..=8 {
            assert_eq!(il.read_index_at(il.position_of_read_index(k)), k);
        }
    }

    #[test]
    fn interleave_with_unit_window_is_identity() {
        let r = rv("1011", 1, 1);
        let il = interleave(&r).unwrap();
        assert_eq!(il.values(), r.values());
        assert_eq!(il.boundaries(), [4]);
    }

    #[test]
    fn interleave_requires_unit_shift() {
        let r = rv("101100", 2, 2);
        assert!(matches!(interleave(&r), Err(ChannelError::DeltaUnsupported { .. })));
    }

    #[test]
    fn corrupt_replaces_one_entry() {
        let r = rv("101100", 3, 1);
        let c = corrupt(&r, 4, 3).unwrap();
        assert_eq!(c.values(), [1, 1, 2, 3, 2, 1, 0, 0]);
        assert!(c.is_noisy());
        let c = corrupt(&r, 1, 0).unwrap();
        assert_eq!(c.values(), [0, 1, 2, 2, 2, 1, 0, 0]);
        assert!(matches!(corrupt(&r, 4, 2), Err(ChannelError::IdentitySubstitution)));
        assert!(matches!(corrupt(&r, 4, 4), Err(ChannelError::ValueRange { .. })));
        assert!(matches!(corrupt(&r, 9, 1), Err(ChannelError::IndexRange { .. })));
    }

    #[test]
    fn validate_flags_the_broken_properties() {
        assert!(validate_read_vector(&rv("101100", 3, 1)).is_valid());

        let noisy = ReadVector::from_values(vec![1, 1, 2, 3, 2, 1, 0, 0], 3, 1, 6).unwrap();
        let report = validate_read_vector(&noisy);
        assert!(report.violations.contains(&PropertyViolation::SubDerivativeWeight {
            alpha: 0,
            weight: 1
        }));
        assert!(report.violations.contains(&PropertyViolation::SubDerivativeWeight {
            alpha: 1,
            weight: -1
        }));

        let jump = ReadVector::from_values(vec![0, 2, 0, 0, 0, 0, 0, 0], 3, 1, 6).unwrap();
        let report = validate_read_vector(&jump);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, PropertyViolation::AdjacentStep { index: 1, step: 2 })));
    }

    #[test]
    fn word_round_trips_through_display_and_code() {
        let x = w("101100");
        assert_eq!(x.to_string(), "101100");
        assert_eq!(Word::from_code(x.to_code(), 6), x);
        assert_eq!(x.bit(0), 0);
        assert_eq!(x.bit(7), 0);
        assert_eq!(x.weight(), 3);
        assert!("10a1".parse::<Word>().is_err());
        assert!("".parse::<Word>().is_err());
    }

    #[test]
    fn from_values_checks_shape_and_range() {
        assert!(ReadVector::from_values(vec![1, 1], 3, 1, 6).is_err());
        assert!(ReadVector::from_values(vec![0, 0, 0, 0, 0, 0, 0, 4], 3, 1, 6).is_err());
        assert!(ReadVector::from_values(vec![1, 1, 2, 3, 2, 1, 0, 0], 3, 1, 6).is_ok());
    }
}
