//! Sufficient packing conditions and edge-count bound reporting.
//!
//! Each checker compares one exact integer expression against another and
//! reports whether the comparison guarantees that the two hypergraphs pack.
//! The graph-only checkers (product, degree and size of 2-uniform graphs)
//! refuse k != 2; their hypergraph generalizations are separate checkers.

use std::fmt;

use serde::Serialize;

use crate::arith::{self, binom, isqrt};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConditionId {
    SsProduct,
    SsDegree,
    SsSize,
    Naroski,
    Rrt,
    Beta,
}

impl ConditionId {
    pub fn as_str(self) -> &'static str {
        match self {
            ConditionId::SsProduct => "SS_PRODUCT",
            ConditionId::SsDegree => "SS_DEGREE",
            ConditionId::SsSize => "SS_SIZE",
            ConditionId::Naroski => "NAROSKI",
            ConditionId::Rrt => "RRT",
            ConditionId::Beta => "BETA",
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of evaluating one sufficient condition on a pair.
///
/// `guarantees_packing` is `lhs < rhs` for every condition except the size
/// condition on graphs, whose comparison is `lhs <= rhs`. `witness_beta` is
/// set only on satisfied BETA reports.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ConditionReport {
    pub condition: ConditionId,
    pub lhs: u128,
    pub rhs: u128,
    pub guarantees_packing: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_beta: Option<usize>,
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "condition={} lhs={} rhs={} packs={}",
            self.condition, self.lhs, self.rhs, self.guarantees_packing
        )?;
        if let Some(b) = self.witness_beta {
            write!(f, " beta={b}")?;
        }
        Ok(())
    }
}

fn require_same_params(h1: &Hypergraph, h2: &Hypergraph) -> Result<()> {
    if h1.n() != h2.n() || h1.k() != h2.k() {
        return Err(Error::ParamMismatch {
            n1: h1.n(),
            k1: h1.k(),
            n2: h2.n(),
            k2: h2.k(),
        });
    }
    Ok(())
}

fn require_graphs(g1: &Hypergraph, g2: &Hypergraph) -> Result<()> {
    require_same_params(g1, g2)?;
    if g1.k() != 2 {
        return Err(Error::GraphsOnly { k: g1.k() });
    }
    Ok(())
}

/// |E(G1)|·|E(G2)| < C(n,2) guarantees two graphs pack.
pub fn check_ss_product(g1: &Hypergraph, g2: &Hypergraph) -> Result<ConditionReport> {
    require_graphs(g1, g2)?;
    let lhs = arith::mul(
        g1.edge_count() as u128,
        g2.edge_count() as u128,
        "size product",
    )?;
    let rhs = binom(g1.n(), 2)?;
    Ok(ConditionReport {
        condition: ConditionId::SsProduct,
        lhs,
        rhs,
        guarantees_packing: lhs < rhs,
        witness_beta: None,
    })
}

/// 2·Δ(G1)·Δ(G2) < n guarantees two graphs pack.
pub fn check_ss_degree(g1: &Hypergraph, g2: &Hypergraph) -> Result<ConditionReport> {
    require_graphs(g1, g2)?;
    let d1 = if g1.edge_count() == 0 {
        0
    } else {
        g1.max_degree(1)?
    };
    let d2 = if g2.edge_count() == 0 {
        0
    } else {
        g2.max_degree(1)?
    };
    let lhs = arith::mul(
        2,
        arith::mul(d1 as u128, d2 as u128, "degree product")?,
        "degree product",
    )?;
    Ok(ConditionReport {
        condition: ConditionId::SsDegree,
        lhs,
        rhs: g1.n() as u128,
        guarantees_packing: lhs < g1.n() as u128,
        witness_beta: None,
    })
}

/// |E(G1)|+|E(G2)| <= ceil(3n/2) - 2 guarantees two graphs pack. Note the
/// non-strict comparison; this is the only checker using one.
pub fn check_ss_size(g1: &Hypergraph, g2: &Hypergraph) -> Result<ConditionReport> {
    require_graphs(g1, g2)?;
    let lhs = g1.edge_count() as u128 + g2.edge_count() as u128;
    let n = g1.n() as u128;
    let rhs = n.div_ceil(2) + n - 2; // ceil(3n/2) - 2
    Ok(ConditionReport {
        condition: ConditionId::SsSize,
        lhs,
        rhs,
        guarantees_packing: lhs <= rhs,
        witness_beta: None,
    })
}

/// |E(H1)|·|E(H2)| < C(n,k) guarantees two k-uniform hypergraphs pack.
pub fn check_naroski(h1: &Hypergraph, h2: &Hypergraph) -> Result<ConditionReport> {
    require_same_params(h1, h2)?;
    let lhs = arith::mul(
        h1.edge_count() as u128,
        h2.edge_count() as u128,
        "size product",
    )?;
    let rhs = binom(h1.n(), h1.k())?;
    Ok(ConditionReport {
        condition: ConditionId::Naroski,
        lhs,
        rhs,
        guarantees_packing: lhs < rhs,
        witness_beta: None,
    })
}

fn degree_pair_sum(h1: &Hypergraph, h2: &Hypergraph, a: usize, b: usize) -> Result<u128> {
    let d = |h: &Hypergraph, l: usize| -> Result<u128> {
        if h.edge_count() == 0 {
            Ok(0)
        } else {
            Ok(h.max_degree(l)? as u128)
        }
    };
    let left = arith::mul(d(h1, a)?, d(h2, b)?, "degree product")?;
    let right = arith::mul(d(h1, b)?, d(h2, a)?, "degree product")?;
    arith::add(left, right, "degree product sum")
}

/// Δ(H1)·Δ_{k-1}(H2) + Δ(H2)·Δ_{k-1}(H1) < n-k+2 guarantees packing.
pub fn check_rrt(h1: &Hypergraph, h2: &Hypergraph) -> Result<ConditionReport> {
    require_same_params(h1, h2)?;
    let k = h1.k();
    let lhs = degree_pair_sum(h1, h2, 1, k - 1)?;
    let rhs = (h1.n() + 2).saturating_sub(k) as u128;
    Ok(ConditionReport {
        condition: ConditionId::Rrt,
        lhs,
        rhs,
        guarantees_packing: lhs < rhs,
        witness_beta: None,
    })
}

/// Δ_β(H1)·Δ_{k-β}(H2) + Δ_{k-β}(H1)·Δ_β(H2) < C(n,β) - C(k,β) + 2
/// guarantees packing for any single β with 0 < β < k.
pub fn check_beta(h1: &Hypergraph, h2: &Hypergraph, beta: usize) -> Result<ConditionReport> {
    require_same_params(h1, h2)?;
    let k = h1.k();
    if beta == 0 || beta >= k {
        return Err(Error::InvalidBeta { beta, k });
    }
    let lhs = degree_pair_sum(h1, h2, beta, k - beta)?;
    // C(n,β) >= C(k,β) whenever an edge exists (k <= n); the saturation only
    // matters for degenerate edgeless pairs with k > n, where lhs is 0.
    let rhs = binom(h1.n(), beta)?.saturating_sub(binom(k, beta)?) + 2;
    let holds = lhs < rhs;
    Ok(ConditionReport {
        condition: ConditionId::Beta,
        lhs,
        rhs,
        guarantees_packing: holds,
        witness_beta: holds.then_some(beta),
    })
}

/// Scans β = 1..k-1 ascending and returns the first satisfied report
/// (smallest witness β). When every β fails, returns the failing report
/// with the smallest lhs-rhs gap, ties broken by smallest β.
pub fn check_beta_any(h1: &Hypergraph, h2: &Hypergraph) -> Result<ConditionReport> {
    require_same_params(h1, h2)?;
    let k = h1.k();
    if k < 2 {
        return Err(Error::InvalidBeta { beta: 1, k });
    }
    let mut best: Option<(u128, ConditionReport)> = None;
    for beta in 1..k {
        let report = check_beta(h1, h2, beta)?;
        if report.guarantees_packing {
            return Ok(report);
        }
        let gap = report.lhs - report.rhs; // failing => lhs >= rhs
        if best.as_ref().is_none_or(|(g, _)| gap < *g) {
            best = Some((gap, report));
        }
    }
    Ok(best.expect("k >= 2 gives at least one beta").1)
}

/// Largest total edge count |E(H1)|+|E(H2)| for which the square-root
/// corollary still guarantees packing: the largest integer strictly below
/// 2·sqrt(C(n,k)). Computed exactly as max { m : m^2 < 4·C(n,k) }.
pub fn packing_threshold(n: usize, k: usize) -> Result<u128> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if k > n {
        return Err(Error::KExceedsN { k, n });
    }
    let four_c = arith::mul(4, binom(n, k)?, "threshold")?;
    let s = isqrt(four_c);
    Ok(if s * s == four_c { s - 1 } else { s })
}

/// Lower bound on m(n,k) implied by the corollary: every non-packing pair
/// has total size at least ceil(2·sqrt(C(n,k))), i.e. threshold + 1.
pub fn size_lower_bound(n: usize, k: usize) -> Result<u128> {
    Ok(packing_threshold(n, k)? + 1)
}

/// Exact minimum non-packing total for graphs: m(n,2) = ceil(3n/2) - 1.
pub fn graph_min_nonpacking_total(n: usize) -> u128 {
    let n = n as u128;
    n.div_ceil(2) + n - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::VertexSet;

    fn hg(n: usize, k: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(
            n,
            k,
            edges
                .iter()
                .map(|e| VertexSet::new(e.to_vec()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn ss_product_examples() {
        let m1 = hg(4, 2, &[&[1, 2], &[3, 4]]);
        let m2 = hg(4, 2, &[&[1, 3], &[2, 4]]);
        let r = check_ss_product(&m1, &m2).unwrap();
        assert_eq!((r.lhs, r.rhs), (4, 6));
        assert!(r.guarantees_packing);

        let k4 = Hypergraph::complete(4, 2).unwrap();
        let r = check_ss_product(&k4, &k4).unwrap();
        assert_eq!((r.lhs, r.rhs), (36, 6));
        assert!(!r.guarantees_packing);

        let empty = Hypergraph::edgeless(4, 2).unwrap();
        let r = check_ss_product(&k4, &empty).unwrap();
        assert_eq!(r.lhs, 0);
        assert!(r.guarantees_packing);

        let h3 = hg(4, 3, &[&[1, 2, 3]]);
        assert!(matches!(
            check_ss_product(&h3, &h3),
            Err(Error::GraphsOnly { k: 3 })
        ));
    }

    #[test]
    fn ss_degree_examples() {
        let m1 = hg(6, 2, &[&[1, 2], &[3, 4], &[5, 6]]);
        let m2 = hg(6, 2, &[&[1, 4], &[2, 5], &[3, 6]]);
        let r = check_ss_degree(&m1, &m2).unwrap();
        assert_eq!((r.lhs, r.rhs), (2, 6));
        assert!(r.guarantees_packing);

        let star = hg(4, 2, &[&[1, 2], &[1, 3], &[1, 4]]);
        let one = hg(4, 2, &[&[2, 3]]);
        let r = check_ss_degree(&star, &one).unwrap();
        assert!(r.lhs >= 6 && !r.guarantees_packing);

        let empty = Hypergraph::edgeless(4, 2).unwrap();
        let r = check_ss_degree(&star, &empty).unwrap();
        assert_eq!(r.lhs, 0);
        assert!(r.guarantees_packing);
    }

    #[test]
    fn ss_size_examples() {
        // K_{1,3} plus a perfect matching: total 5 = m(4,2), just over the bound.
        let star = hg(4, 2, &[&[1, 2], &[1, 3], &[1, 4]]);
        let matching = hg(4, 2, &[&[1, 2], &[3, 4]]);
        let r = check_ss_size(&star, &matching).unwrap();
        assert_eq!((r.lhs, r.rhs), (5, 4));
        assert!(!r.guarantees_packing);

        let two = hg(4, 2, &[&[1, 2], &[3, 4]]);
        let r = check_ss_size(&two, &two).unwrap();
        assert_eq!(r.lhs, 4);
        assert!(r.guarantees_packing, "boundary total 4 still guarantees");

        let empty = Hypergraph::edgeless(4, 2).unwrap();
        assert!(check_ss_size(&empty, &empty).unwrap().guarantees_packing);
    }

    #[test]
    fn naroski_examples() {
        let e1 = hg(4, 3, &[&[1, 2, 3]]);
        let r = check_naroski(&e1, &e1).unwrap();
        assert_eq!((r.lhs, r.rhs), (1, 4));
        assert!(r.guarantees_packing);

        let k43 = Hypergraph::complete(4, 3).unwrap();
        let r = check_naroski(&k43, &k43).unwrap();
        assert_eq!((r.lhs, r.rhs), (16, 4));
        assert!(!r.guarantees_packing);

        let empty = Hypergraph::edgeless(4, 3).unwrap();
        assert!(check_naroski(&empty, &k43).unwrap().guarantees_packing);
    }

    #[test]
    fn rrt_examples() {
        let e6 = hg(6, 3, &[&[1, 2, 3]]);
        let r = check_rrt(&e6, &e6).unwrap();
        assert_eq!((r.lhs, r.rhs), (2, 5));
        assert!(r.guarantees_packing);

        let e3 = hg(3, 3, &[&[1, 2, 3]]);
        let r = check_rrt(&e3, &e3).unwrap();
        assert_eq!((r.lhs, r.rhs), (2, 2));
        assert!(!r.guarantees_packing);

        let empty = Hypergraph::edgeless(6, 3).unwrap();
        let r = check_rrt(&e6, &empty).unwrap();
        assert_eq!(r.lhs, 0);
        assert!(r.guarantees_packing);
    }

    #[test]
    fn beta_examples() {
        let e4 = hg(4, 3, &[&[1, 2, 3]]);
        let r = check_beta(&e4, &e4, 1).unwrap();
        assert_eq!((r.lhs, r.rhs), (2, 3));
        assert!(r.guarantees_packing);
        assert_eq!(r.witness_beta, Some(1));

        let e3 = hg(3, 3, &[&[1, 2, 3]]);
        let r = check_beta(&e3, &e3, 1).unwrap();
        assert_eq!((r.lhs, r.rhs), (2, 2));
        assert!(!r.guarantees_packing);
        assert_eq!(r.witness_beta, None);

        assert!(matches!(
            check_beta(&e4, &e4, 3),
            Err(Error::InvalidBeta { .. })
        ));
        assert!(matches!(
            check_beta(&e4, &e4, 0),
            Err(Error::InvalidBeta { .. })
        ));
    }

    #[test]
    fn beta_symmetric_when_beta_is_half_k() {
        // k=4, beta=2: lhs = 2·Δ2(H1)·Δ2(H2), symmetric in the pair.
        let a = hg(8, 4, &[&[1, 2, 3, 4], &[1, 2, 5, 6]]);
        let b = hg(8, 4, &[&[3, 4, 5, 6], &[2, 3, 4, 5], &[1, 3, 5, 7]]);
        let r_ab = check_beta(&a, &b, 2).unwrap();
        let r_ba = check_beta(&b, &a, 2).unwrap();
        assert_eq!(r_ab.lhs, r_ba.lhs);
        let expected = 2 * (a.max_degree(2).unwrap() as u128) * (b.max_degree(2).unwrap() as u128);
        assert_eq!(r_ab.lhs, expected);
    }

    #[test]
    fn beta_any_picks_smallest_witness() {
        let e4 = hg(4, 3, &[&[1, 2, 3]]);
        let r = check_beta_any(&e4, &e4).unwrap();
        assert_eq!(r.witness_beta, Some(1));

        let e3 = hg(3, 3, &[&[1, 2, 3]]);
        let r = check_beta_any(&e3, &e3).unwrap();
        assert!(!r.guarantees_packing);
        assert_eq!((r.lhs, r.rhs), (2, 2));
    }

    #[test]
    fn beta_at_one_matches_rrt_exactly() {
        let a = hg(7, 3, &[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6]]);
        let b = hg(7, 3, &[&[3, 5, 7], &[1, 2, 7]]);
        let rrt = check_rrt(&a, &b).unwrap();
        let beta = check_beta(&a, &b, 1).unwrap();
        assert_eq!(rrt.lhs, beta.lhs);
        assert_eq!(rrt.rhs, beta.rhs);
        assert_eq!(rrt.guarantees_packing, beta.guarantees_packing);
    }

    #[test]
    fn beta_on_graphs_matches_ss_degree_comparison() {
        let g1 = hg(6, 2, &[&[1, 2], &[3, 4], &[1, 5]]);
        let g2 = hg(6, 2, &[&[2, 3], &[4, 5]]);
        let sd = check_ss_degree(&g1, &g2).unwrap();
        let b1 = check_beta(&g1, &g2, 1).unwrap();
        // rhs: C(n,1) - C(2,1) + 2 = n, identical comparison.
        assert_eq!(sd.lhs, b1.lhs);
        assert_eq!(sd.rhs, b1.rhs);
        assert_eq!(sd.guarantees_packing, b1.guarantees_packing);
    }

    #[test]
    fn threshold_examples() {
        // n=4, k=2: 2*sqrt(6) ~ 4.898 -> largest guaranteed total is 4.
        assert_eq!(packing_threshold(4, 2).unwrap(), 4);
        assert_eq!(size_lower_bound(4, 2).unwrap(), 5);
        assert_eq!(graph_min_nonpacking_total(4), 5);
        // n=k: 2*sqrt(1) = 2 exactly -> threshold 1.
        assert_eq!(packing_threshold(5, 5).unwrap(), 1);
        assert!(matches!(
            packing_threshold(3, 4),
            Err(Error::KExceedsN { .. })
        ));
    }

    #[test]
    fn threshold_monotone_in_n() {
        for k in 1..=6usize {
            let mut prev = 0u128;
            for n in k..=64 {
                let t = packing_threshold(n, k).unwrap();
                assert!(t >= prev, "threshold dipped at n={n} k={k}");
                prev = t;
            }
        }
    }

    #[test]
    fn graph_bound_formula() {
        assert_eq!(graph_min_nonpacking_total(4), 5);
        assert_eq!(graph_min_nonpacking_total(5), 7);
        assert_eq!(graph_min_nonpacking_total(6), 8);
    }

    #[test]
    fn reports_render_in_line_format() {
        let e4 = hg(4, 3, &[&[1, 2, 3]]);
        let r = check_beta(&e4, &e4, 1).unwrap();
        assert_eq!(
            r.to_string(),
            "condition=BETA lhs=2 rhs=3 packs=true beta=1"
        );
        let n = check_naroski(&e4, &e4).unwrap();
        assert_eq!(n.to_string(), "condition=NAROSKI lhs=1 rhs=4 packs=true");
    }
}
