//! Property-based invariants over randomized parameters and words.

use proptest::prelude::*;
use readcode::channel::{interleave, read_vector, ChannelParams, Word};
use readcode::code::{rll_check, syndrome, ParityCheckLayout};
use readcode::reconstruct::{reconstruct, reconstruct_mod2, Direction};

fn word_and_window() -> impl Strategy<Value = (Word, usize)> {
    (1usize..=14, 1usize..=6).prop_flat_map(|(n, ell)| {
        (proptest::collection::vec(0u8..=1, n), Just(ell))
            .prop_map(|(bits, ell)| (Word::from_bits(bits).unwrap(), ell))
    })
}

proptest! {
    /// A read vector determines its word, in both directions, from the full
    /// values or the mod-2 image alone.
    #[test]
    fn reconstruction_round_trips((x, ell) in word_and_window()) {
        let r = read_vector(&x, ChannelParams::new(ell, 1).unwrap()).unwrap();
        prop_assert_eq!(r.len(), x.len() + ell - 1);
        prop_assert_eq!(&reconstruct(&r, Direction::LeftToRight).unwrap(), &x);
        prop_assert_eq!(&reconstruct(&r, Direction::RightToLeft).unwrap(), &x);
        let mod2: Vec<u8> = r.values().iter().map(|&v| (v & 1) as u8).collect();
        prop_assert_eq!(&reconstruct_mod2(&mod2, ell, Direction::LeftToRight).unwrap(), &x);
        prop_assert_eq!(&reconstruct_mod2(&mod2, ell, Direction::RightToLeft).unwrap(), &x);
    }

    /// Interleaving permutes the reads; its two index maps invert each other.
    #[test]
    fn interleave_maps_invert((x, ell) in word_and_window()) {
        let r = read_vector(&x, ChannelParams::new(ell, 1).unwrap()).unwrap();
        let il = interleave(&r).unwrap();
        let mut sorted_il = il.values().to_vec();
        sorted_il.sort_unstable();
        let mut sorted_r = r.values().to_vec();
        sorted_r.sort_unstable();
        prop_assert_eq!(sorted_il, sorted_r);
        for k in 1..=r.len() {
            let pos = il.position_of_read_index(k);
            prop_assert_eq!(il.read_index_at(pos), k);
            prop_assert_eq!(il.values()[pos - 1], r.get(k as i64));
        }
    }

    /// The block permutation is a bijection for every (n, p, ell).
    #[test]
    fn pi_p_is_a_bijection(
        bits in proptest::collection::vec(0u8..=1, 1..=16),
        p in 1usize..=3,
        ell in 2usize..=6,
    ) {
        let x = Word::from_bits(bits).unwrap();
        let y = readcode::bounds::pi_p(&x, p, ell).unwrap();
        prop_assert_eq!(readcode::bounds::pi_p_inverse(&y, p, ell).unwrap(), x);
    }

    /// Weight sum and adjacent-step bounds for any valid shift.
    #[test]
    fn weight_sum_and_steps(
        bits in proptest::collection::vec(0u8..=1, 1..=14),
        ell in 1usize..=6,
        delta in 1usize..=6,
    ) {
        prop_assume!(delta <= ell && ell % delta == 0);
        let x = Word::from_bits(bits).unwrap();
        prop_assume!((x.len() + ell).is_multiple_of(delta));
        let r = read_vector(&x, ChannelParams::new(ell, delta).unwrap()).unwrap();
        let total: i64 = r.values().iter().sum();
        prop_assert_eq!(total, (ell / delta) as i64 * x.weight());
        for pair in r.values().windows(2) {
            prop_assert!((pair[1] - pair[0]).abs() <= delta as i64);
        }
        // Noiseless reads never exceed the part of the window inside the word.
        let n = x.len() as i64;
        for (i, &v) in (1..).zip(r.values()) {
            let cap = (ell as i64).min(i * delta as i64).min(n + ell as i64 - i * delta as i64);
            prop_assert!(v >= 0 && v <= cap);
        }
    }

    /// rll_check agrees with a direct longest-zero-run computation.
    #[test]
    fn rll_check_matches_longest_run(
        bits in proptest::collection::vec(0u8..=1, 0..=40),
        limit in 0usize..=8,
    ) {
        let longest = bits
            .split(|&b| b == 1)
            .map(|run| run.len())
            .max()
            .unwrap_or(0);
        prop_assert_eq!(rll_check(&bits, limit), longest <= limit);
    }

    /// The syndrome is linear: flipping one bit XORs in exactly its column.
    #[test]
    fn syndrome_is_linear(
        bits in proptest::collection::vec(0u8..=1, 1..=40),
        flip in 0usize..40,
        order in 2u32..=5,
    ) {
        prop_assume!(flip < bits.len());
        let layout = ParityCheckLayout { order, length: bits.len() };
        let s0 = syndrome(&bits, &layout).unwrap();
        let mut flipped = bits.clone();
        flipped[flip] ^= 1;
        let s1 = syndrome(&flipped, &layout).unwrap();
        prop_assert_eq!(s0 ^ s1, layout.column(flip + 1));
        prop_assert_ne!(layout.column(flip + 1), 0);
    }
}
