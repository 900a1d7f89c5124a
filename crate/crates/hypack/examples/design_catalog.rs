//! Small-design catalog: divisibility, search and direct constructions.
//!
//! Constructs the reference designs the extremal pairs rely on, verifies
//! each by the exhaustive coverage scan, and shows an arithmetic rejection
//! plus the direct triple-system constructions.
//!
//! ```bash
//! cargo run --release --example design_catalog
//! ```

use hypack::designs::{
    construct_design, construct_sts, divisibility_check, verify_design, ConstructOutcome,
    DesignCheck, DesignSpec,
};
use hypack::format::write_design;
use hypack::Result;

fn main() -> Result<()> {
    println!("== searched designs ==");
    for (t, n, k) in [(2, 7, 3), (2, 9, 3), (3, 8, 4), (2, 13, 4)] {
        let spec = DesignSpec::new(t, n, k, 1)?;
        match construct_design(&spec, 10_000_000)? {
            ConstructOutcome::Found { design, nodes } => {
                let check = verify_design(&design)?;
                println!(
                    "  {spec}: {} blocks in {nodes} nodes, scan {}",
                    design.block_count(),
                    if check == DesignCheck::Valid {
                        "ok"
                    } else {
                        "FAILED"
                    }
                );
            }
            other => println!("  {spec}: {other:?}"),
        }
    }

    println!("\n== an arithmetic rejection ==");
    let bad = DesignSpec::new(2, 8, 3, 1)?;
    let report = divisibility_check(&bad)?;
    println!("  {bad}:");
    for line in report.to_string().lines() {
        println!("    {line}");
    }

    println!("\n== direct Steiner triple systems (no search) ==");
    for n in [7, 9, 13, 15, 19, 21, 25, 27, 31] {
        let d = construct_sts(n)?;
        println!(
            "  STS({n}): {} blocks ({})",
            d.block_count(),
            if n % 6 == 3 { "Bose" } else { "Skolem" }
        );
    }

    println!("\n== the Fano plane in the shared file format ==");
    let fano = construct_sts(7)?;
    print!("{}", write_design(&fano));
    Ok(())
}
