//! Bound table for the minimum non-packing total m(n,k).
//!
//! For a grid of (n,k) prints the square-root lower bound, the
//! construction upper bound where its divisibility hypotheses hold, and
//! the exact value for graphs. All arithmetic is exact.
//!
//! ```bash
//! cargo run --example bounds_table
//! ```

use hypack::extremal::bound_report;
use hypack::Result;

fn main() -> Result<()> {
    println!(
        "{:>4} {:>2} {:>10} {:>12} {:>10}",
        "n", "k", "lower", "upper", "exact"
    );
    for k in 2..=4usize {
        for n in [6, 8, 9, 12, 13, 16, 21, 25, 27, 40, 64] {
            if n < k {
                continue;
            }
            let b = bound_report(n, k)?;
            let upper = match &b.upper {
                Some(u) => format!("{} ({})", u.value, u.kind),
                None => "-".to_string(),
            };
            let exact = match b.exact_graph {
                Some(e) => e.to_string(),
                None => "-".to_string(),
            };
            println!(
                "{:>4} {:>2} {:>10} {:>12} {:>10}",
                b.n, b.k, b.lower, upper, exact
            );
        }
        println!();
    }
    println!("lower: no pair below this total can fail to pack (square-root corollary)");
    println!("upper: total of the certified non-packing construction, when divisibility holds");
    println!("exact: ceil(3n/2) - 1, graphs only");
    Ok(())
}
