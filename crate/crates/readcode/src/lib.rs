//! A sliding-window weight channel, the single-substitution read code built
//! on it, and the clique-cover machinery that lower-bounds the redundancy any
//! such code needs.
//!
//! The channel passes a window of length `ell` over a binary word, shifting
//! by `delta` per step, and emits the weight of the enclosed bits (the *read
//! vector*). For unit shift a read vector determines its word, one
//! substitution in it can be corrected with roughly log log n redundant bits,
//! and no code can do better by more than a constant. This crate implements
//! all three layers at desk scale, exhaustively verifiable:
//!
//! - [`channel`]: words, read vectors, sub-derivatives, interleaving,
//!   corruption, and structural validation.
//! - [`reconstruct`]: full and partial word recovery, including the halt
//!   indices that bracket a substitution.
//! - [`code`]: membership, enumeration, ranking, and the complete decoder of
//!   the run-length-limited + tiled-Hamming construction.
//! - [`bounds`]: confusable-pair characterization, the block permutation and
//!   pulled-back clique covers, exact cover sizes, the asymptotic lower
//!   bound, and an exact maximum-independent-set solver.
//! - [`suites`]: the exhaustive verification suites behind `readcode verify`.
//!
//! Start with the examples: `cargo run --example channel_walkthrough`.

pub mod bounds;
pub mod channel;
pub mod cli;
pub mod code;
pub mod reconstruct;
pub mod suites;

pub use bounds::{
    build_clique_cover, clique_cover_size, confusable, max_independent_set, pi_p, pi_p_inverse,
    pullback_cover, redundancy_lower_bound, verify_characterization, ConfusabilityGraph,
};
pub use channel::{
    corrupt, interleave, read_vector, read_vector_mod2, sub_derivative, sub_derivative_concat,
    validate_read_vector, ChannelParams, ReadVector, SubDerivative, Word,
};
pub use code::{code_params, decode, enumerate_code, is_codeword, locate_error, Code, CodeParams,
    DecodeOutcome};
pub use reconstruct::{
    halt_indices, reconstruct, reconstruct_mod2, reconstruct_substring, subderiv_reconstruct,
    Direction, HaltIndices, Side,
};
