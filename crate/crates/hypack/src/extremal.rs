//! Extremal non-packing pairs witnessing the upper bounds on the minimum
//! non-packing total m(n,k), and structural certificates replaying the
//! arguments that make them non-packable.
//!
//! Even k: H1 is a kernel of α = k/2 vertices joined to every α-subset of
//! the rest; H2 is an α-(n,k,1) design. Odd k: H1 is a complete clique on
//! (k-2)t+1 vertices star-joined to everything else; H2 is t vertex-disjoint
//! copies of a (k-1)-(n/t,k,1) design.

use std::fmt;

use crate::arith::{self, binom, floor_root};
use crate::combi::each_combination;
use crate::conditions::{packing_threshold, size_lower_bound};
use crate::designs::{
    construct_design, construct_sts, design_to_hypergraph, divisibility_check, ConstructOutcome,
    Design, DesignSpec,
};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex, VertexSet};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairKind {
    EvenK,
    OddK,
    EvenKPadded,
}

impl PairKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PairKind::EvenK => "even",
            PairKind::OddK => "odd",
            PairKind::EvenKPadded => "even-padded",
        }
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A constructed candidate non-packing pair together with the parameters
/// that produced it. `claimed_total` is recomputed from the pair at build
/// time.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtremalPair {
    pub kind: PairKind,
    pub h1: Hypergraph,
    pub h2: Hypergraph,
    pub n: usize,
    pub k: usize,
    /// Kernel size k/2 for the even kinds; copy count t for the odd kind.
    pub alpha: usize,
    /// Clique size (k-2)t+1; odd kind only.
    pub clique_size: Option<usize>,
    /// Number of disjoint kernels (1 unless padded).
    pub kernels: usize,
    /// Isolated vertices added to H2 (0 unless padded).
    pub pad: usize,
    pub claimed_total: u128,
}

impl ExtremalPair {
    pub fn total_edges(&self) -> u128 {
        self.h1.edge_count() as u128 + self.h2.edge_count() as u128
    }
}

fn build_design(spec: &DesignSpec, budget: u64) -> Result<Design> {
    let report = divisibility_check(spec)?;
    if !report.ok {
        let bad = report.details.iter().find(|d| !d.divides).expect("!ok");
        return Err(Error::DivisibilityFailed {
            t: spec.t,
            n: spec.n,
            k: spec.k,
            lambda: spec.lambda,
            i: bad.i,
        });
    }
    // Steiner triple systems have a direct construction; everything else
    // goes through the exact-cover search.
    if spec.t == 2 && spec.k == 3 && spec.lambda == 1 {
        return construct_sts(spec.n);
    }
    match construct_design(spec, budget)? {
        ConstructOutcome::Found { design, .. } => Ok(design),
        ConstructOutcome::NotFound(reason) => Err(Error::DesignSearch(format!(
            "no {spec} design found: {reason:?}"
        ))),
        ConstructOutcome::BudgetExceeded { nodes } => Err(Error::DesignSearch(format!(
            "budget exhausted after {nodes} nodes searching for a {spec} design"
        ))),
    }
}

/// Kernel-join hypergraph: each of `kernels` disjoint α-kernels (occupying
/// the lowest labels) forms an edge with every α-subset of the shared
/// complement.
fn kernel_join(n: usize, alpha: usize, kernels: usize) -> Result<Hypergraph> {
    let span = kernels * alpha;
    let complement: Vec<Vertex> = (span + 1..=n).collect();
    let mut edges = Vec::new();
    for i in 0..kernels {
        let kernel: Vec<Vertex> = (i * alpha + 1..=(i + 1) * alpha).collect();
        each_combination(complement.len(), alpha, |idx| {
            let mut e = kernel.clone();
            e.extend(idx.iter().map(|&j| complement[j]));
            edges.push(VertexSet::from_unsorted(e).expect("disjoint parts"));
            true
        });
    }
    Hypergraph::new(n, 2 * alpha, edges)
}

/// Even-k pair: kernel-join H1 against an α-(n,k,1) design H2.
///
/// Requires the design's divisibility conditions at (α, n, k, 1); the
/// design itself is found by search within `budget`.
pub fn build_even_pair(n: usize, k: usize, budget: u64) -> Result<ExtremalPair> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(Error::EvenKRequired(k));
    }
    if k > n {
        return Err(Error::KExceedsN { k, n });
    }
    let alpha = k / 2;
    let design = build_design(&DesignSpec::new(alpha, n, k, 1)?, budget)?;
    let h2 = design_to_hypergraph(&design);
    let h1 = kernel_join(n, alpha, 1)?;

    let e1 = binom(n - alpha, alpha)?;
    let e2 = binom(n, alpha)? / binom(2 * alpha, alpha)?;
    if h1.edge_count() as u128 != e1 || h2.edge_count() as u128 != e2 {
        return Err(Error::Internal(format!(
            "even pair sizes drifted from C({},{}) + C({},{})/C({},{})",
            n - alpha,
            alpha,
            n,
            alpha,
            2 * alpha,
            alpha
        )));
    }
    Ok(ExtremalPair {
        kind: PairKind::EvenK,
        n,
        k,
        alpha,
        clique_size: None,
        kernels: 1,
        pad: 0,
        claimed_total: arith::add(e1, e2, "pair total")?,
        h1,
        h2,
    })
}

/// The copy count the odd construction uses by default:
/// t = floor(n^((k-2)/(2k-3))), computed exactly as the largest t with
/// t^(2k-3) <= n^(k-2).
pub fn default_odd_t(n: usize, k: usize) -> Result<usize> {
    let power = arith::pow(n as u128, (k - 2) as u32, "odd t")?;
    Ok(floor_root(power, (2 * k - 3) as u32) as usize)
}

/// Odd-k pair: clique-plus-star H1 against t disjoint design copies H2.
///
/// `t_override` replaces the paper's default copy count (which rarely
/// divides n); t must divide n either way.
pub fn build_odd_pair(
    n: usize,
    k: usize,
    t_override: Option<usize>,
    budget: u64,
) -> Result<ExtremalPair> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::OddKRequired(k));
    }
    if k > n {
        return Err(Error::KExceedsN { k, n });
    }
    let t = match t_override {
        Some(t) => t,
        None => default_odd_t(n, k)?,
    };
    if t == 0 || !n.is_multiple_of(t) {
        return Err(Error::TMustDivideN { t, n });
    }
    let class_size = n / t;
    if class_size < k {
        return Err(Error::KExceedsN { k, n: class_size });
    }
    let design = build_design(&DesignSpec::new(k - 1, class_size, k, 1)?, budget)?;

    // H2: t vertex-disjoint relabeled copies on consecutive label blocks.
    let mut h2_edges = Vec::new();
    for copy in 0..t {
        let offset = copy * class_size;
        for b in design.blocks() {
            h2_edges.push(
                VertexSet::from_unsorted(b.iter().map(|v| v + offset).collect())
                    .expect("relabeled block"),
            );
        }
    }
    let h2 = Hypergraph::new(n, k, h2_edges)?;

    // H1: complete k-graph on the clique, plus every (k-1)-subset of the
    // clique joined with every outside vertex.
    let clique = (k - 2) * t + 1;
    let mut h1_edges = Vec::new();
    each_combination(clique, k, |idx| {
        h1_edges.push(VertexSet::new(idx.iter().map(|&i| i + 1).collect()).expect("ascending"));
        true
    });
    each_combination(clique, k - 1, |idx| {
        let base: Vec<Vertex> = idx.iter().map(|&i| i + 1).collect();
        for v in clique + 1..=n {
            let mut e = base.clone();
            e.push(v);
            h1_edges.push(VertexSet::from_unsorted(e).expect("v outside clique"));
        }
        true
    });
    let h1 = Hypergraph::new(n, k, h1_edges)?;

    let e1 = arith::add(
        binom(clique, k)?,
        arith::mul(
            binom(clique, k - 1)?,
            (n - clique) as u128,
            "star edge count",
        )?,
        "clique-star size",
    )?;
    let e2 = t as u128 * (binom(class_size, k - 1)? / k as u128);
    if h1.edge_count() as u128 != e1 || h2.edge_count() as u128 != e2 {
        return Err(Error::Internal("odd pair sizes drifted".into()));
    }
    Ok(ExtremalPair {
        kind: PairKind::OddK,
        n,
        k,
        alpha: t,
        clique_size: Some(clique),
        kernels: 0,
        pad: 0,
        claimed_total: arith::add(e1, e2, "pair total")?,
        h1,
        h2,
    })
}

/// Padded even-k pair for vertex counts where the divisibility conditions
/// fail: H2 is a design on n' = n-r points plus r isolated vertices, H1
/// carries s = ceil(r/α)+1 disjoint kernels, each joined to every α-subset
/// of the shared complement. With r = 0 this is exactly [`build_even_pair`].
pub fn build_even_pair_padded(n: usize, k: usize, r: usize, budget: u64) -> Result<ExtremalPair> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(Error::EvenKRequired(k));
    }
    if r == 0 {
        return build_even_pair(n, k, budget);
    }
    let alpha = k / 2;
    let kernels = r.div_ceil(alpha) + 1;
    if n < r + k {
        return Err(Error::PaddingTooLarge {
            r,
            kernels,
            alpha,
            n,
        });
    }
    let n_prime = n - r;
    let design = build_design(&DesignSpec::new(alpha, n_prime, k, 1)?, budget)?;
    // design points stay 1..=n'; vertices n'+1..=n are isolated in H2
    let h2 = Hypergraph::new(n, k, design.blocks().to_vec())?;

    if n < (kernels + 1) * alpha {
        return Err(Error::PaddingTooLarge {
            r,
            kernels,
            alpha,
            n,
        });
    }
    let h1 = kernel_join(n, alpha, kernels)?;
    let e1 = arith::mul(
        kernels as u128,
        binom(n - kernels * alpha, alpha)?,
        "kernel join size",
    )?;
    let e2 = h2.edge_count() as u128;
    if h1.edge_count() as u128 != e1 {
        return Err(Error::Internal("padded pair sizes drifted".into()));
    }
    Ok(ExtremalPair {
        kind: PairKind::EvenKPadded,
        n,
        k,
        alpha,
        clique_size: None,
        kernels,
        pad: r,
        claimed_total: arith::add(e1, e2, "pair total")?,
        h1,
        h2,
    })
}

/// One verified structural fact inside a certificate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertCheck {
    pub name: &'static str,
    pub detail: String,
    pub instances: u64,
}

/// A passing structural replay of the non-packing argument.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub kind: PairKind,
    pub n: usize,
    pub k: usize,
    pub total: u128,
    pub checks: Vec<CertCheck>,
    pub caveats: Vec<String>,
}

impl Certificate {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("certificate non-packing\n");
        out.push_str(&format!("kind {}\n", self.kind));
        out.push_str(&format!(
            "pair n={} k={} total={}\n",
            self.n, self.k, self.total
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "check {} {} instances={} ok\n",
                c.name, c.detail, c.instances
            ));
        }
        for c in &self.caveats {
            out.push_str(&format!("caveat {c}\n"));
        }
        out
    }
}

/// Verification outcome: either a certificate or the first witness subset
/// violating one of the structural facts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CertOutcome {
    Certified(Certificate),
    Refuted {
        check: &'static str,
        witness: VertexSet,
        detail: String,
    },
}

impl CertOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CertOutcome::Certified(c) => Some(c),
            CertOutcome::Refuted { .. } => None,
        }
    }
}

/// Replays the even-k argument on the pair:
/// (a) every α-subset of H2's non-isolated part lies in at least one edge,
/// so wherever a kernel lands it can be completed to an H2 edge;
/// (b) every kernel forms an H1 edge with every α-subset of its designated
/// complement, so the completion's preimage closes a conflict.
///
/// For the unpadded kind, (a) runs over all of V(H2) and the two facts make
/// the argument airtight for every bijection. The padded kind checks (a)
/// on the design part only and carries explicit caveats.
pub fn verify_nonpacking_even(pair: &ExtremalPair) -> Result<CertOutcome> {
    if pair.kind == PairKind::OddK {
        return Err(Error::WrongPairKind {
            expected: "even or even-padded",
            got: pair.kind.as_str(),
        });
    }
    let alpha = pair.alpha;
    let n = pair.n;

    // (a) α-subset coverage on the non-isolated part of H2
    let covered: Vec<Vertex> = match pair.kind {
        PairKind::EvenK => (1..=n).collect(),
        _ => (1..=n).filter(|&v| !pair.h2.is_isolated(v)).collect(),
    };
    let mut witness: Option<VertexSet> = None;
    let mut coverage_checked = 0u64;
    each_combination(covered.len(), alpha, |idx| {
        let sub = VertexSet::from_unsorted(idx.iter().map(|&i| covered[i]).collect())
            .expect("labels ascend");
        coverage_checked += 1;
        match pair.h2.degree(&sub) {
            Ok(d) if d >= 1 => true,
            _ => {
                witness = Some(sub);
                false
            }
        }
    });
    if let Some(w) = witness {
        return Ok(CertOutcome::Refuted {
            check: "alpha-subset-coverage",
            detail: format!("{w} lies in no H2 edge"),
            witness: w,
        });
    }

    // (b) kernel-join completeness in H1
    let span = pair.kernels * alpha;
    let complement: Vec<Vertex> = (span + 1..=n).collect();
    let mut join_checked = 0u64;
    let mut join_witness: Option<(VertexSet, VertexSet)> = None;
    for i in 0..pair.kernels {
        let kernel =
            VertexSet::new(((i * alpha + 1)..=(i + 1) * alpha).collect()).expect("ascending");
        each_combination(complement.len(), alpha, |idx| {
            let sub = VertexSet::from_unsorted(idx.iter().map(|&j| complement[j]).collect())
                .expect("ascending");
            join_checked += 1;
            let edge = kernel.union(&sub);
            if pair.h1.contains_edge(&edge) {
                true
            } else {
                join_witness = Some((kernel.clone(), sub));
                false
            }
        });
        if join_witness.is_some() {
            break;
        }
    }
    if let Some((kernel, sub)) = join_witness {
        return Ok(CertOutcome::Refuted {
            check: "kernel-join",
            detail: format!("kernel {kernel} with {sub} is not an H1 edge"),
            witness: sub,
        });
    }

    let mut caveats = Vec::new();
    if pair.kind == PairKind::EvenKPadded {
        caveats.push(format!(
            "padded construction read as s = ceil(r/alpha)+1 = {} kernels on the shared complement",
            pair.kernels
        ));
        caveats.push(
            "padded argument additionally needs every kernel image to avoid the isolated part \
             and its forced completion to avoid the other kernels; the checks above do not \
             imply that for every bijection"
                .to_string(),
        );
    }
    Ok(CertOutcome::Certified(Certificate {
        kind: pair.kind,
        n,
        k: pair.k,
        total: pair.claimed_total,
        checks: vec![
            CertCheck {
                name: "alpha-subset-coverage",
                detail: format!("every {alpha}-subset of the covered part in >=1 H2 edge"),
                instances: coverage_checked,
            },
            CertCheck {
                name: "kernel-join",
                detail: format!(
                    "each of {} kernels joined to every {alpha}-subset of the complement",
                    pair.kernels
                ),
                instances: join_checked,
            },
        ],
        caveats,
    }))
}

/// Replays the odd-k argument:
/// (a) pigeonhole: some design copy receives at least k-1 clique vertices;
/// (b) every (k-1)-subset of each copy's vertex class extends to an edge of
/// that copy;
/// (c) every (k-1)-subset of the clique forms an H1 edge with every other
/// vertex, so the extension's preimage closes a conflict.
pub fn verify_nonpacking_odd(pair: &ExtremalPair) -> Result<CertOutcome> {
    if pair.kind != PairKind::OddK {
        return Err(Error::WrongPairKind {
            expected: "odd",
            got: pair.kind.as_str(),
        });
    }
    let (n, k, t) = (pair.n, pair.k, pair.alpha);
    let clique = pair.clique_size.expect("odd pairs carry a clique");

    // (a) ceil(clique / t) >= k-1
    if clique.div_ceil(t) < k - 1 {
        return Ok(CertOutcome::Refuted {
            check: "pigeonhole",
            witness: VertexSet::empty(),
            detail: format!("ceil({clique}/{t}) < {}", k - 1),
        });
    }

    // (b) per-copy (k-1)-subset coverage
    let class_size = n / t;
    let mut class_checked = 0u64;
    for copy in 0..t {
        let base = copy * class_size;
        let mut witness = None;
        each_combination(class_size, k - 1, |idx| {
            let sub = VertexSet::from_unsorted(idx.iter().map(|&i| base + i + 1).collect())
                .expect("ascending");
            class_checked += 1;
            match pair.h2.degree(&sub) {
                Ok(d) if d >= 1 => true,
                _ => {
                    witness = Some(sub);
                    false
                }
            }
        });
        if let Some(w) = witness {
            return Ok(CertOutcome::Refuted {
                check: "copy-coverage",
                detail: format!("{w} extends to no edge of copy {copy}"),
                witness: w,
            });
        }
    }

    // (c) clique-star completeness in H1
    let mut star_checked = 0u64;
    let mut star_witness: Option<(VertexSet, Vertex)> = None;
    each_combination(clique, k - 1, |idx| {
        let sub = VertexSet::new(idx.iter().map(|&i| i + 1).collect()).expect("ascending");
        for v in 1..=n {
            if sub.contains(v) {
                continue;
            }
            star_checked += 1;
            let edge = sub.union(&VertexSet::new(vec![v]).expect("single"));
            if !pair.h1.contains_edge(&edge) {
                star_witness = Some((sub.clone(), v));
                return false;
            }
        }
        true
    });
    if let Some((sub, v)) = star_witness {
        return Ok(CertOutcome::Refuted {
            check: "clique-star",
            detail: format!("clique subset {sub} with vertex {v} is not an H1 edge"),
            witness: sub,
        });
    }

    Ok(CertOutcome::Certified(Certificate {
        kind: pair.kind,
        n,
        k,
        total: pair.claimed_total,
        checks: vec![
            CertCheck {
                name: "pigeonhole",
                detail: format!("ceil({clique}/{t}) = {} >= {}", clique.div_ceil(t), k - 1),
                instances: 1,
            },
            CertCheck {
                name: "copy-coverage",
                detail: format!("every ({}-1)-subset inside each of {t} copies extends", k),
                instances: class_checked,
            },
            CertCheck {
                name: "clique-star",
                detail: "every (k-1)-subset of the clique joined to every other vertex".into(),
                instances: star_checked,
            },
        ],
        caveats: Vec::new(),
    }))
}

/// Bound summary printed by the `bounds` CLI subcommand.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    /// ceil(2*sqrt(C(n,k))): no smaller total can fail to pack.
    pub lower: u128,
    /// Largest total the square-root corollary still guarantees to pack.
    pub threshold: u128,
    /// Constructed upper bound on m(n,k) when the hypotheses hold.
    pub upper: Option<UpperBound>,
    /// Exact value ceil(3n/2)-1, graphs only.
    pub exact_graph: Option<u128>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UpperBound {
    pub kind: PairKind,
    pub value: u128,
    /// Exponent (k^2-k-1)/(2k-3) of the asymptotic odd-k bound, as a
    /// (numerator, denominator) pair; the constant in front is not pinned.
    pub odd_exponent: Option<(u32, u32)>,
}

/// Computes the bound summary for (n,k) without running any design search:
/// the upper bound is reported when the relevant divisibility conditions
/// hold (and, for odd k, the default t divides n).
pub fn bound_report(n: usize, k: usize) -> Result<BoundReport> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if k > n {
        return Err(Error::KExceedsN { k, n });
    }
    let lower = size_lower_bound(n, k)?;
    let threshold = packing_threshold(n, k)?;
    let exact_graph = (k == 2).then(|| crate::conditions::graph_min_nonpacking_total(n));

    let upper = if k.is_multiple_of(2) {
        let alpha = k / 2;
        let spec = DesignSpec::new(alpha, n, k, 1)?;
        divisibility_check(&spec)?.ok.then(|| {
            let value = binom(n - alpha, alpha).unwrap()
                + binom(n, alpha).unwrap() / binom(k, alpha).unwrap();
            UpperBound {
                kind: PairKind::EvenK,
                value,
                odd_exponent: None,
            }
        })
    } else if k >= 3 {
        let t = default_odd_t(n, k)?;
        if t >= 1 && n.is_multiple_of(t) && n / t >= k {
            let m = n / t;
            let spec = DesignSpec::new(k - 1, m, k, 1)?;
            divisibility_check(&spec)?.ok.then(|| {
                let clique = (k - 2) * t + 1;
                let value = binom(clique, k).unwrap()
                    + binom(clique, k - 1).unwrap() * (n - clique) as u128
                    + t as u128 * (binom(m, k - 1).unwrap() / k as u128);
                UpperBound {
                    kind: PairKind::OddK,
                    value,
                    odd_exponent: Some(((k * k - k - 1) as u32, (2 * k - 3) as u32)),
                }
            })
        } else {
            None
        }
    } else {
        None
    };

    Ok(BoundReport {
        n,
        k,
        lower,
        threshold,
        upper,
        exact_graph,
    })
}
