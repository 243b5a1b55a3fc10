//! Verification suites: exhaustive (or seeded-sample) checks of the channel
//! properties, the confusability characterization, the clique covers, and
//! decoder totality. The CLI `verify` subcommand and the acceptance tests
//! both run these.

use crate::bounds::{
    confusable, max_independent_set, min_pullback_cover, pullback_cover, pullback_cover_size,
    BoundsError, ConfusabilityGraph, MIS_EXACT_MAX_VERTICES,
};
use crate::channel::{
    corrupt, interleave, read_vector, sub_derivative, validate_read_vector, ChannelError,
    ChannelParams, ReadVector, Word,
};
use crate::code::{code_params, decode, enumerate_code, locate_error, CodeError, DecodeOutcome};
use crate::reconstruct::{
    halt_indices, reconstruct, reconstruct_mod2, subderiv_reconstruct, Direction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Seed used by every randomized suite unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 20230131;

/// Word lengths up to this bound are checked exhaustively; larger suites fall
/// back to a seeded sample.
pub const EXHAUSTIVE_MAX_N: usize = 16;

const SAMPLE_WORDS: usize = 4096;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    fn new(suite: &str, params: String) -> Self {
        SuiteReport { suite: suite.to_string(), params, checks: Vec::new() }
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(CheckResult { name: name.to_string(), passed, detail });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("suite {} ({})\n", self.suite, self.params);
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("  [{tag}] {}: {}\n", c.name, c.detail));
        }
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("result: {tag} ({} checks)\n", self.checks.len()));
        out
    }
}

/// The words a suite runs over: every word of length n when exhaustive,
/// otherwise a seeded sample that always includes the two constant words.
fn word_source(n: usize, seed: u64) -> (Vec<Word>, bool) {
    if n <= EXHAUSTIVE_MAX_N {
        ((0..1u64 << n).map(|c| Word::from_code(c, n)).collect(), true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut words = vec![Word::from_code(0, n), Word::from_code((1u64 << n) - 1, n)];
        for _ in 0..SAMPLE_WORDS {
            words.push(Word::from_code(rng.gen_range(0..1u64 << n), n));
        }
        (words, false)
    }
}

/// Failure counter that keeps the first offending input as a witness.
#[derive(Default)]
struct Tally {
    bad: u64,
    witness: Option<String>,
}

impl Tally {
    fn hit(&mut self, witness: impl FnOnce() -> String) {
        self.bad += 1;
        if self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn ok(&self) -> bool {
        self.bad == 0
    }

    fn detail(&self, what: &str) -> String {
        match &self.witness {
            None => format!("0 {what}"),
            Some(w) => format!("{} {what}; first witness: {w}", self.bad),
        }
    }
}

/// Structural read-vector properties for the given shift, plus round trips and the
/// reconstruction bracketing checks when the shift is 1.
pub fn properties_suite(
    n: usize,
    ell: usize,
    delta: usize,
    seed: u64,
) -> Result<SuiteReport, SuiteError> {
    let params = ChannelParams::new(ell, delta)?;
    let expected_len = params.read_len(n)?;
    let (words, exhaustive) = word_source(n, seed);
    let scope = if exhaustive {
        format!("{} words (exhaustive)", words.len())
    } else {
        format!("{} words (sampled, seed={seed})", words.len())
    };
    let mut report = SuiteReport::new(
        "properties",
        format!("n={n}, ell={ell}, delta={delta}, seed={seed}"),
    );

    let reads: Vec<ReadVector> =
        words.iter().map(|x| read_vector(x, params).expect("validated")).collect();

    let mut len_bad = Tally::default();
    for (x, r) in words.iter().zip(&reads) {
        if r.len() != expected_len {
            len_bad.hit(|| x.to_string());
        }
    }
    report.push(
        "read-vector-length",
        len_bad.ok(),
        format!("{scope}, {}", len_bad.detail("length mismatches")),
    );

    let mut p1_bad = Tally::default();
    for (x, r) in words.iter().zip(&reads) {
        for i in 1..r.len() {
            if (r.values()[i] - r.values()[i - 1]).abs() > delta as i64 {
                p1_bad.hit(|| format!("{x} at read {i}"));
            }
        }
    }
    report.push("adjacent-step-bound", p1_bad.ok(), p1_bad.detail("steps exceed delta"));

    if ell.is_multiple_of(delta) {
        let ratio = (ell / delta) as i64;
        let mut p2_bad = Tally::default();
        for (x, r) in words.iter().zip(&reads) {
            for flip in 0..n {
                let mut bits = x.bits().to_vec();
                bits[flip] ^= 1;
                let y = Word::from_bits(bits).expect("binary");
                let ry = read_vector(&y, params).expect("validated");
                let dist = r
                    .values()
                    .iter()
                    .zip(ry.values())
                    .filter(|(a, b)| a != b)
                    .count();
                if dist as i64 != ratio {
                    p2_bad.hit(|| format!("{x} flipped at {}", flip + 1));
                }
            }
        }
        report.push(
            "flip-distance",
            p2_bad.ok(),
            p2_bad.detail(&format!("single-bit flips miss distance {ratio}")),
        );

        let mut p3_bad = Tally::default();
        for (x, r) in words.iter().zip(&reads) {
            if r.values().iter().sum::<i64>() != ratio * x.weight() {
                p3_bad.hit(|| x.to_string());
            }
        }
        report.push("weight-sum", p3_bad.ok(), p3_bad.detail("weight-sum mismatches"));

        let mut p5_bad = Tally::default();
        for (x, r) in words.iter().zip(&reads) {
            for alpha in 0..ell / delta {
                if sub_derivative(r, alpha).expect("alpha in range").weight() != 0 {
                    p5_bad.hit(|| format!("{x} at alpha {alpha}"));
                }
            }
        }
        report.push(
            "subderivative-weight",
            p5_bad.ok(),
            p5_bad.detail("nonzero sub-derivative weights"),
        );
    }

    if delta == 1 {
        let mut validate_bad = Tally::default();
        let mut p6_bad = Tally::default();
        let mut p7_bad = Tally::default();
        let mut p4_bad = Tally::default();
        for (x, r) in words.iter().zip(&reads) {
            if !validate_read_vector(r).is_valid() {
                validate_bad.hit(|| x.to_string());
            }
            for alpha in 0..ell {
                let d = sub_derivative(r, alpha).expect("alpha in range");
                let nonzero: Vec<i64> =
                    d.entries().iter().copied().filter(|&e| e != 0).collect();
                if !nonzero.is_empty()
                    && (nonzero[0] != 1
                        || nonzero.windows(2).any(|w| w[0] == w[1] || w[0].abs() != 1))
                {
                    p6_bad.hit(|| format!("{x} at alpha {alpha}"));
                }
                // Cumulative sums must reproduce the residue-class bits.
                let hat = subderiv_reconstruct(&d, Direction::LeftToRight);
                let tilde = subderiv_reconstruct(&d, Direction::RightToLeft);
                let expect: Vec<i64> =
                    hat.indices.iter().map(|&i| x.bit(i as i64)).collect();
                if hat.values != expect || tilde.values != expect {
                    p7_bad.hit(|| format!("{x} at alpha {alpha}"));
                }
            }
            // The word must be recoverable from the reads or their
            // parities, in both directions.
            let mod2: Vec<u8> = r.values().iter().map(|&v| (v & 1) as u8).collect();
            let recovered = [
                reconstruct(r, Direction::LeftToRight).ok(),
                reconstruct(r, Direction::RightToLeft).ok(),
                reconstruct_mod2(&mod2, ell, Direction::LeftToRight).ok(),
                reconstruct_mod2(&mod2, ell, Direction::RightToLeft).ok(),
            ];
            if recovered.iter().any(|w| w.as_ref() != Some(x)) {
                p4_bad.hit(|| x.to_string());
            }
        }
        report.push("validate-clean", validate_bad.ok(), validate_bad.detail("clean vectors flagged"));
        report.push("sign-alternation", p6_bad.ok(), p6_bad.detail("alternation violations"));
        report.push("cumulative-bits", p7_bad.ok(), p7_bad.detail("cumulative-sum mismatches"));
        report.push("reconstruction-round-trip", p4_bad.ok(), p4_bad.detail("reconstruction mismatches"));

        if ell > 1 {
            // A substituted read vector is never the read vector of another
            // word, i.e. no two words sit at read distance 1.
            let mut dist1_bad = Tally::default();
            let mut substitutions = 0u64;
            for (x, r) in words.iter().zip(&reads) {
                for k in 1..=r.len() {
                    for v in 0..=ell as i64 {
                        if v == r.get(k as i64) {
                            continue;
                        }
                        substitutions += 1;
                        let noisy = corrupt(r, k, v).expect("valid substitution");
                        if reconstruct(&noisy, Direction::LeftToRight).is_ok() {
                            dist1_bad.hit(|| format!("{x} with read {k} set to {v}"));
                        }
                    }
                }
            }
            report.push(
                "no-distance-one-pairs",
                dist1_bad.ok(),
                format!("{substitutions} substitutions, {}", dist1_bad.detail("reconstructed")),
            );
        }

        if ell >= 3 {
            let (l7_checked, l7_bad) = halt_bracketing(&words, &reads, n, ell);
            report.push(
                "halt-bracketing",
                l7_bad.ok(),
                format!("{l7_checked} corruptions, {}", l7_bad.detail("outside bracket")),
            );
            let (l11_checked, l11_bad) = first_divergence(&words, &reads, ell);
            report.push(
                "first-divergence",
                l11_bad.ok(),
                format!("{l11_checked} corruptions, {}", l11_bad.detail("binary pairs")),
            );
        }
    }
    Ok(report)
}

/// For every single substitution: the weight pattern names the right residue
/// pair and error value, the halt indices bracket the true error block, and
/// the strictly interior blocks have equal adjacent reads.
fn halt_bracketing(
    words: &[Word],
    reads: &[ReadVector],
    n: usize,
    ell: usize,
) -> (u64, Tally) {
    let cp = (n >= ell).then(|| code_params(n, ell).expect("ell >= 3, n >= ell"));
    let mut checked = 0u64;
    let mut bad = Tally::default();
    for (x, r) in words.iter().zip(reads) {
        for k in 1..=r.len() {
            for v in 0..=ell as i64 {
                if v == r.get(k as i64) {
                    continue;
                }
                checked += 1;
                let noisy = corrupt(r, k, v).expect("valid substitution");
                let e = v - r.get(k as i64);
                let beta = (k - 1) % ell;
                let ok = (|| {
                    if let Some(cp) = &cp {
                        match locate_error(&noisy, cp) {
                            Ok(crate::code::LocateOutcome::Single(loc)) => {
                                if loc.error_value != e || loc.beta != beta {
                                    return false;
                                }
                                if !loc.candidates.contains(&k) {
                                    return false;
                                }
                            }
                            _ => return false,
                        }
                    }
                    let d = sub_derivative(&noisy, beta).expect("beta in range");
                    let hat = subderiv_reconstruct(&d, Direction::LeftToRight);
                    let tilde = subderiv_reconstruct(&d, Direction::RightToLeft);
                    let halts = halt_indices(&hat, &tilde);
                    if halts.backward >= halts.forward {
                        return false;
                    }
                    let h = ((k - beta - 1) / ell) as i64;
                    if h < halts.backward + 1 || h > halts.forward {
                        return false;
                    }
                    // Strictly interior blocks show equal adjacent reads.
                    for m in halts.backward + 2..halts.forward {
                        let base = (beta + m as usize * ell) as i64;
                        if noisy.get(base + 1) != noisy.get(base) {
                            return false;
                        }
                    }
                    true
                })();
                if !ok {
                    bad.hit(|| format!("{x} with read {k} set to {v}"));
                }
            }
        }
    }
    (checked, bad)
}

/// For every magnitude-1 substitution at read index k: if some block after
/// the error block is the first with unequal adjacent reads, the left-to-right
/// values at the error block and at that block cannot both be binary.
fn first_divergence(words: &[Word], reads: &[ReadVector], ell: usize) -> (u64, Tally) {
    let mut checked = 0u64;
    let mut bad = Tally::default();
    for (x, r) in words.iter().zip(reads) {
        for k in 1..=r.len() {
            for e in [-1i64, 1] {
                let v = r.get(k as i64) + e;
                if v < 0 || v > ell as i64 {
                    continue;
                }
                let noisy = corrupt(r, k, v).expect("valid substitution");
                let beta = (k - 1) % ell;
                let h = (k - beta - 1) / ell;
                let d = sub_derivative(&noisy, beta).expect("beta in range");
                let hat = subderiv_reconstruct(&d, Direction::LeftToRight);
                if h >= hat.values.len() {
                    continue; // the error block lies past the word
                }
                let first_unequal = (h + 1..hat.values.len()).find(|&m| {
                    let base = (beta + m * ell) as i64;
                    noisy.get(base + 1) != noisy.get(base)
                });
                if let Some(m) = first_unequal {
                    checked += 1;
                    let binary = |v: i64| v == 0 || v == 1;
                    if binary(hat.values[h]) && binary(hat.values[m]) {
                        bad.hit(|| format!("{x} with read {k} offset {e:+}"));
                    }
                }
            }
        }
    }
    (checked, bad)
}

/// Exhaustive check that read-distance-2 pairs coincide with the planted
/// block-pattern pairs and carry the predicted witnesses.
pub fn characterization_suite(n: usize, ell: usize) -> Result<SuiteReport, SuiteError> {
    let r = crate::bounds::verify_characterization(n, ell)?;
    let mut report = SuiteReport::new("characterization", format!("n={n}, ell={ell}"));
    let sample = r
        .missing_samples
        .first()
        .or(r.extra_samples.first())
        .map(|(a, b)| format!("; first witness: {a} vs {b}"))
        .unwrap_or_default();
    report.push(
        "pair-scan-match",
        r.missing_count == 0 && r.extra_count == 0,
        format!(
            "{} distance-2 pairs, {} generated, {} missing, {} extra{sample}",
            r.distance_two_pairs, r.generated_pairs, r.missing_count, r.extra_count
        ),
    );
    let sample = r
        .witness_failure_samples
        .first()
        .map(|(a, b)| format!("; first witness: {a} vs {b}"))
        .unwrap_or_default();
    report.push(
        "witness-offsets",
        r.witness_failure_count == 0,
        format!("{} witness violations{sample}", r.witness_failure_count),
    );
    Ok(report)
}

/// Enumerates the code and replays every single substitution through the
/// decoder; also checks that a crafted double corruption is rejected.
pub fn decoder_suite(n: usize, ell: usize) -> Result<SuiteReport, SuiteError> {
    let params = code_params(n, ell)?;
    let code = enumerate_code(&params)?;
    let mut report = SuiteReport::new("decoder", format!("n={n}, ell={ell}"));
    report.push("code-nonempty", !code.is_empty(), format!("{} codewords", code.len()));

    let mut corruptions = 0u64;
    let mut failures = Tally::default();
    let mut window_bad = Tally::default();
    let mut parity_bad = Tally::default();
    for c in &code {
        let r = read_vector(c, params.channel()).expect("delta = 1");
        if decode(&r, &params) != (DecodeOutcome::NoError { word: c.clone() }) {
            failures.hit(|| format!("{c} clean"));
        }
        let clean_parity = interleave(&r).expect("delta = 1").mod2();
        for k in 1..=r.len() {
            for v in 0..=ell as i64 {
                if v == r.get(k as i64) {
                    continue;
                }
                corruptions += 1;
                let noisy = corrupt(&r, k, v).expect("valid substitution");
                let want = DecodeOutcome::Corrected {
                    word: c.clone(),
                    read_index: k,
                    error_value: v - r.get(k as i64),
                };
                if decode(&noisy, &params) != want {
                    failures.hit(|| format!("{c} with read {k} set to {v}"));
                }
                // The candidate window stays within the decodable bound and
                // holds the true position; a magnitude-1 hit flips exactly
                // one interleaved parity bit, at the image of k.
                match locate_error(&noisy, &params) {
                    Ok(crate::code::LocateOutcome::Single(loc)) => {
                        if loc.candidates.len() > params.window || !loc.candidates.contains(&k) {
                            window_bad.hit(|| format!("{c} with read {k} set to {v}"));
                        }
                    }
                    _ => window_bad.hit(|| format!("{c} with read {k} set to {v}")),
                }
                if (v - r.get(k as i64)).abs() == 1 {
                    let il = interleave(&noisy).expect("delta = 1");
                    let flips: Vec<usize> = il
                        .mod2()
                        .iter()
                        .zip(&clean_parity)
                        .enumerate()
                        .filter(|(_, (a, b))| a != b)
                        .map(|(pos, _)| pos + 1)
                        .collect();
                    if flips != [il.position_of_read_index(k)] {
                        parity_bad.hit(|| format!("{c} with read {k} set to {v}"));
                    }
                }
            }
        }
    }
    report.push(
        "single-substitution-totality",
        failures.ok(),
        format!(
            "{} codewords x {corruptions} corruptions, {}",
            code.len(),
            failures.detail("failures")
        ),
    );
    report.push(
        "window-soundness",
        window_bad.ok(),
        window_bad.detail(&format!("candidate windows broken (bound {})", params.window)),
    );
    report.push(
        "parity-flip-position",
        parity_bad.ok(),
        parity_bad.detail("interleaved parity flips misplaced"),
    );

    if let Some(c) = code.first() {
        // Two substitutions at read indices 1 and 3 spread the offsets over
        // three or four residues, which the weight pattern rejects.
        let r = read_vector(c, params.channel()).expect("delta = 1");
        let once = corrupt(&r, 1, r.get(1) + 1).expect("r1 is a bit");
        let e2 = if r.get(3) >= 1 { -1 } else { 2 };
        let twice = corrupt(&once, 3, r.get(3) + e2).expect("in range");
        let rejected = matches!(
            decode(&twice, &params),
            DecodeOutcome::Failure {
                reason: crate::code::DecodeFailure::WeightPattern { .. }
            }
        );
        report.push("double-substitution-rejected", rejected, "weight pattern flagged".into());
    }
    Ok(report)
}

/// Builds the pulled-back cover and checks it covers everything, that every
/// non-singleton clique is pairwise confusable, and that the cardinality
/// matches the closed-form size; sandwiches the exact optimum when feasible.
pub fn cover_suite(n: usize, ell: usize, p: usize) -> Result<SuiteReport, SuiteError> {
    let cover = pullback_cover(n, ell, p)?;
    let mut report =
        SuiteReport::new("cover", format!("n={n}, ell={ell}, p={p}, m={}", cover.m));

    let covered = cover.covered();
    report.push(
        "covers-all-words",
        covered == 1 << n,
        format!("{} cliques cover {covered}/{} words", cover.len(), 1u64 << n),
    );

    let mut bad_pairs = Tally::default();
    for clique in &cover.cliques {
        for (i, x) in clique.iter().enumerate() {
            for y in &clique[i + 1..] {
                if confusable(x, y, ell)?.is_none() {
                    bad_pairs.hit(|| format!("{x} vs {y}"));
                }
            }
        }
    }
    report.push("cliques-confusable", bad_pairs.ok(), bad_pairs.detail("non-adjacent pairs"));

    let formula = pullback_cover_size(n, ell, p);
    report.push(
        "cardinality-formula",
        num_bigint::BigUint::from(cover.len()) == formula,
        format!("built {} vs formula {formula}", cover.len()),
    );

    if (1usize << n) <= MIS_EXACT_MAX_VERTICES && ell >= 3 && n >= ell {
        let graph = ConfusabilityGraph::build(n, ell)?;
        let mis = max_independent_set(&graph);
        let (best_p, min_cover) = min_pullback_cover(n, ell);
        let code_size = enumerate_code(&code_params(n, ell)?)?.len();
        let ok = mis.exact
            && num_bigint::BigUint::from(mis.size) <= min_cover
            && mis.size >= code_size
            && graph.is_independent(&mis.words);
        report.push(
            "mis-sandwich",
            ok,
            format!("|C|={code_size} <= MIS={} <= min_p |Q_p|={min_cover} (p={best_p})", mis.size),
        );
    }
    Ok(report)
}
