//! Tour of the sufficient packing conditions.
//!
//! Builds a few instructive pairs and prints every applicable condition
//! report in the same line format the CLI uses. Run with:
//!
//! ```bash
//! cargo run --example conditions_tour
//! ```

use hypack::conditions::{
    check_beta, check_beta_any, check_naroski, check_rrt, check_ss_degree, check_ss_product,
    check_ss_size, packing_threshold, size_lower_bound,
};
use hypack::{Hypergraph, Result, VertexSet};

fn graph(n: usize, edges: &[[usize; 2]]) -> Hypergraph {
    Hypergraph::new(
        n,
        2,
        edges
            .iter()
            .map(|e| VertexSet::new(e.to_vec()).unwrap())
            .collect(),
    )
    .unwrap()
}

fn main() -> Result<()> {
    println!("== two perfect matchings on 6 vertices (k = 2) ==");
    let m1 = graph(6, &[[1, 2], [3, 4], [5, 6]]);
    let m2 = graph(6, &[[1, 4], [2, 5], [3, 6]]);
    for report in [
        check_ss_product(&m1, &m2)?,
        check_ss_degree(&m1, &m2)?,
        check_ss_size(&m1, &m2)?,
        check_naroski(&m1, &m2)?,
        check_rrt(&m1, &m2)?,
        check_beta_any(&m1, &m2)?,
    ] {
        println!("  {report}");
    }

    println!("\n== the minimum non-packing pair on 4 vertices ==");
    let star = graph(4, &[[1, 2], [1, 3], [1, 4]]);
    let matching = graph(4, &[[1, 2], [3, 4]]);
    println!("  K_1,3 against a perfect matching, total 5 edges:");
    for report in [
        check_ss_product(&star, &matching)?,
        check_ss_degree(&star, &matching)?,
        check_ss_size(&star, &matching)?,
    ] {
        println!("  {report}");
    }
    println!("  (total 5 is exactly the minimum non-packing total for n=4)");

    println!("\n== single 3-edges on 4 vertices (k = 3) ==");
    let e = Hypergraph::new(4, 3, vec![VertexSet::new(vec![1, 2, 3]).unwrap()]).unwrap();
    for report in [
        check_naroski(&e, &e)?,
        check_rrt(&e, &e)?,
        check_beta(&e, &e, 1)?,
        check_beta(&e, &e, 2)?,
    ] {
        println!("  {report}");
    }

    println!("\n== degree-pair condition scan on a denser 3-uniform pair ==");
    let h1 = Hypergraph::new(
        9,
        3,
        vec![
            VertexSet::new(vec![1, 2, 3]).unwrap(),
            VertexSet::new(vec![1, 4, 5]).unwrap(),
            VertexSet::new(vec![2, 6, 7]).unwrap(),
            VertexSet::new(vec![3, 8, 9]).unwrap(),
        ],
    )
    .unwrap();
    let h2 = Hypergraph::new(
        9,
        3,
        vec![
            VertexSet::new(vec![1, 5, 9]).unwrap(),
            VertexSet::new(vec![2, 4, 8]).unwrap(),
            VertexSet::new(vec![3, 6, 8]).unwrap(),
        ],
    )
    .unwrap();
    for beta in 1..3 {
        println!("  {}", check_beta(&h1, &h2, beta)?);
    }
    println!("  smallest witness: {}", check_beta_any(&h1, &h2)?);

    println!("\n== edge-total thresholds from the square-root corollary ==");
    for (n, k) in [(4, 2), (9, 3), (13, 4), (27, 3)] {
        println!(
            "  n={n:<2} k={k}: totals <= {:<4} always pack; hence m({n},{k}) >= {}",
            packing_threshold(n, k)?,
            size_lower_bound(n, k)?
        );
    }
    Ok(())
}
