//! Recovering m(4,2) = 5 with the exhaustive oracle.
//!
//! Enumerates every graph pair on 4 vertices, brute-forces each one, and
//! reports the smallest total edge count with a non-packing pair together
//! with a witness. The answer reproduces ceil(3n/2) - 1 at n = 4.
//!
//! ```bash
//! cargo run --release --example exhaustive_oracle
//! ```

use hypack::conditions::graph_min_nonpacking_total;
use hypack::solver::{brute_force_pack, PackOutcome};
use hypack::{Hypergraph, Result, VertexSet};

fn main() -> Result<()> {
    let all_edges: [[usize; 2]; 6] = [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]];
    let graph = |mask: usize| -> Result<Hypergraph> {
        let edges = (0..6)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| VertexSet::new(all_edges[b].to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::new(4, 2, edges)
    };

    let mut min_nonpacking: Option<(usize, usize, usize)> = None;
    let mut checked = 0u32;
    for m1 in 0usize..64 {
        for m2 in m1..64 {
            let total = (m1 as u32).count_ones() as usize + (m2 as u32).count_ones() as usize;
            if min_nonpacking.is_some_and(|(best, _, _)| total >= best) {
                continue;
            }
            checked += 1;
            let g1 = graph(m1)?;
            let g2 = graph(m2)?;
            let r = brute_force_pack(&g1, &g2, 1_000_000)?;
            if r.outcome == PackOutcome::NoPackingProven {
                min_nonpacking = Some((total, m1, m2));
            }
        }
    }

    let (best, m1, m2) = min_nonpacking.expect("non-packing pairs exist on 4 vertices");
    println!("checked {checked} pairs of graphs on 4 vertices");
    println!("smallest non-packing total: {best} edges");
    println!(
        "formula ceil(3*4/2) - 1 = {}",
        graph_min_nonpacking_total(4)
    );
    assert_eq!(best as u128, graph_min_nonpacking_total(4));

    let g1 = graph(m1)?;
    let g2 = graph(m2)?;
    println!("witness pair:");
    for (name, g) in [("G1", &g1), ("G2", &g2)] {
        let edges: Vec<String> = g.edges().iter().map(|e| e.to_string()).collect();
        println!("  {name}: {}", edges.join(" "));
    }
    println!("(the witness is a star plus a perfect matching, up to relabeling)");

    // Double-check: every pair with one edge fewer packs.
    let r = brute_force_pack(&g1, &g2, 1_000_000)?;
    assert_eq!(r.outcome, PackOutcome::NoPackingProven);
    Ok(())
}
