//! Build the clique covers that upper-bound any single-substitution read
//! code, pull them back onto the confusability graph, and sandwich the true
//! optimum with an exact independent-set search.
//!
//! ```bash
//! cargo run --example clique_covers
//! ```

use num_bigint::BigUint;
use readcode::bounds::{
    build_clique_cover, clique_cover_size, lambda_p, max_independent_set, min_pullback_cover,
    pullback_cover, ConfusabilityGraph,
};
use readcode::code::{code_params, enumerate_code};

fn main() {
    println!("Lambda_2 = {:?}", lambda_p(2).iter().map(|b| fmt_bits(b)).collect::<Vec<_>>());

    for (m, p) in [(1, 1), (1, 2), (2, 2)] {
        let cover = build_clique_cover(m, p).unwrap();
        println!(
            "Q(m={m}, p={p}): {} cliques (formula {}), covering {} words",
            cover.len(),
            clique_cover_size(m, p),
            cover.covered()
        );
        if cover.len() <= 14 {
            for clique in &cover.cliques {
                let members: Vec<String> = clique.iter().map(|w| w.to_string()).collect();
                println!("  {{{}}}", members.join(", "));
            }
        }
    }

    // Pull Q(2,2) back through the block permutation onto 8-bit words.
    let cover = pullback_cover(8, 4, 2).unwrap();
    println!(
        "\npullback at (n=8, ell=4, p=2): {} cliques cover {} words",
        cover.len(),
        cover.covered()
    );

    // Exact optimum vs cover bound vs achieved code size.
    for ell in [3, 4] {
        let graph = ConfusabilityGraph::build(8, ell).unwrap();
        let mis = max_independent_set(&graph);
        let (p, cover) = min_pullback_cover(8, ell);
        let code = enumerate_code(&code_params(8, ell).unwrap()).unwrap();
        println!(
            "n=8 ell={ell}: |C| = {} <= optimal = {} <= min_p |Q_p| = {cover} (at p={p}), exact = {}",
            code.len(),
            mis.size,
            mis.exact
        );
        assert!(BigUint::from(mis.size) <= cover);
    }
}

fn fmt_bits(bits: &[u8]) -> String {
    bits.iter().map(|b| b.to_string()).collect()
}
