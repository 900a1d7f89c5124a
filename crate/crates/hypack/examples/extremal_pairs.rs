//! The extremal non-packing constructions and their certificates.
//!
//! Builds the even pair at (n,k) = (13,4) and the odd pair at (27,3),
//! replays the structural non-packing arguments, and shows that the
//! seeded solver cannot pack either — while the thresholds from the
//! square-root corollary stay consistently below both totals.
//!
//! ```bash
//! cargo run --release --example extremal_pairs
//! ```

use hypack::conditions::packing_threshold;
use hypack::extremal::{
    build_even_pair, build_odd_pair, verify_nonpacking_even, verify_nonpacking_odd, CertOutcome,
};
use hypack::solver::{switching_pack_auto, PackOutcome};
use hypack::Result;

fn main() -> Result<()> {
    println!("== even construction: kernel-join against a design ==");
    let even = build_even_pair(13, 4, 10_000_000)?;
    println!(
        "  n={} k={}: |E(H1)| = {} (kernel {{1,2}} joined to every pair of the rest)",
        even.n,
        even.k,
        even.h1.edge_count()
    );
    println!(
        "  |E(H2)| = {} (a 2-(13,4,1) design), total {}",
        even.h2.edge_count(),
        even.claimed_total
    );
    match verify_nonpacking_even(&even)? {
        CertOutcome::Certified(cert) => {
            for c in &cert.checks {
                println!("  certified: {} over {} instances", c.name, c.instances);
            }
        }
        CertOutcome::Refuted { check, witness, .. } => {
            println!("  REFUTED at {check} by {witness}")
        }
    }

    println!("\n== odd construction: clique-star against disjoint design copies ==");
    let odd = build_odd_pair(27, 3, None, 10_000_000)?;
    println!(
        "  n={} k={}: t={} copies, clique on {} vertices",
        odd.n,
        odd.k,
        odd.alpha,
        odd.clique_size.unwrap()
    );
    println!(
        "  |E(H1)| = {}, |E(H2)| = {}, total {}",
        odd.h1.edge_count(),
        odd.h2.edge_count(),
        odd.claimed_total
    );
    match verify_nonpacking_odd(&odd)? {
        CertOutcome::Certified(cert) => {
            for c in &cert.checks {
                println!("  certified: {} over {} instances", c.name, c.instances);
            }
        }
        CertOutcome::Refuted { check, witness, .. } => {
            println!("  REFUTED at {check} by {witness}")
        }
    }
    println!(
        "  total {} <= 27^(5/3) = 243 (exponent (k^2-k-1)/(2k-3) at k=3)",
        odd.claimed_total
    );

    println!("\n== the solver cannot beat a certificate ==");
    for (name, pair) in [("even(13,4)", &even), ("odd(27,3)", &odd)] {
        let mut packed = 0;
        for seed in 0..25 {
            if matches!(
                switching_pack_auto(&pair.h1, &pair.h2, seed)?.outcome,
                PackOutcome::Packed(_)
            ) {
                packed += 1;
            }
        }
        println!("  {name}: packed {packed}/25 seeded attempts (expected 0)");
    }

    println!("\n== corollary thresholds stay below both totals ==");
    for pair in [&even, &odd] {
        println!(
            "  ({},{}): threshold {} < total {}",
            pair.n,
            pair.k,
            packing_threshold(pair.n, pair.k)?,
            pair.claimed_total
        );
    }
    Ok(())
}
