//! t-(n,k,λ) designs: divisibility testing, explicit search at small
//! parameters, direct Steiner triple system constructions and verification.
//!
//! The λ=1 search is an exact cover over (rows = k-subsets, columns =
//! t-subsets); general λ runs the same backtracking with column counters.
//! Search order is fully deterministic: most-constrained column first,
//! lexicographic row tie-breaking, and an ascending-row floor per column so
//! no block multiset is explored twice.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::arith::binom;
use crate::combi::each_combination;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex, VertexSet};

/// Parameters of a t-(n,k,λ) design.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DesignSpec {
    pub t: usize,
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
}

impl DesignSpec {
    pub fn new(t: usize, n: usize, k: usize, lambda: usize) -> Result<Self> {
        let spec = DesignSpec { t, n, k, lambda };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |reason| Error::InvalidDesignSpec {
            t: self.t,
            n: self.n,
            k: self.k,
            lambda: self.lambda,
            reason,
        };
        if self.t == 0 {
            return Err(fail("t must be at least 1"));
        }
        if self.t > self.k {
            return Err(fail("t must not exceed k"));
        }
        if self.k > self.n {
            return Err(fail("k must not exceed n"));
        }
        if self.lambda == 0 {
            return Err(fail("lambda must be at least 1"));
        }
        Ok(())
    }

    /// Block count forced by double counting: λ·C(n,t)/C(k,t).
    pub fn block_count(&self) -> Result<Option<u128>> {
        let numer = self.lambda as u128 * binom(self.n, self.t)?;
        let denom = binom(self.k, self.t)?;
        Ok(numer.is_multiple_of(denom).then_some(numer / denom))
    }
}

impl fmt::Display for DesignSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-({},{},{})", self.t, self.n, self.k, self.lambda)
    }
}

/// A block collection claiming to be a t-(n,k,λ) design. Construction
/// validates shapes (block size, label range, duplicates); the defining
/// coverage property is checked by [`verify_design`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Design {
    pub spec: DesignSpec,
    blocks: Vec<VertexSet>,
}

impl Design {
    pub fn new(spec: DesignSpec, blocks: Vec<VertexSet>) -> Result<Self> {
        spec.validate()?;
        let mut blocks = blocks;
        for b in &blocks {
            if b.len() != spec.k {
                return Err(Error::EdgeWrongSize {
                    expected: spec.k,
                    got: b.len(),
                });
            }
            if let Some(max) = b.max() {
                if max > spec.n {
                    return Err(Error::VertexOutOfRange {
                        vertex: max,
                        n: spec.n,
                    });
                }
            }
        }
        blocks.sort();
        if let Some(w) = blocks.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].to_string()));
        }
        Ok(Design { spec, blocks })
    }

    /// Blocks in canonical lexicographic order.
    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

/// One line of divisibility detail: C(k-i,t-i) vs λ·C(n-i,t-i).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DivisibilityDetail {
    pub i: usize,
    pub divisor: u128,
    pub dividend: u128,
    pub divides: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DivisibilityReport {
    pub spec: DesignSpec,
    pub ok: bool,
    pub details: Vec<DivisibilityDetail>,
}

impl fmt::Display for DivisibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.details {
            writeln!(
                f,
                "i={} divisor={} dividend={} divides={}",
                d.i, d.divisor, d.dividend, d.divides
            )?;
        }
        write!(
            f,
            "divisibility {}",
            if self.ok { "holds" } else { "fails" }
        )
    }
}

/// Checks, for every 0 <= i <= t-1, that C(k-i,t-i) divides λ·C(n-i,t-i).
/// These are the necessary conditions that are also sufficient for all but
/// finitely many n.
pub fn divisibility_check(spec: &DesignSpec) -> Result<DivisibilityReport> {
    spec.validate()?;
    let mut details = Vec::with_capacity(spec.t);
    let mut ok = true;
    for i in 0..spec.t {
        let divisor = binom(spec.k - i, spec.t - i)?;
        let dividend = spec.lambda as u128 * binom(spec.n - i, spec.t - i)?;
        let divides = dividend.is_multiple_of(divisor);
        ok &= divides;
        details.push(DivisibilityDetail {
            i,
            divisor,
            dividend,
            divides,
        });
    }
    Ok(DivisibilityReport {
        spec: *spec,
        ok,
        details,
    })
}

/// Why a search returned no design.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NotFoundReason {
    /// Rejected up front; no search was run.
    Divisibility(DivisibilityReport),
    /// The (symmetry-reduced) search space was exhausted.
    Exhausted { nodes: u64 },
}

/// Result of [`construct_design`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConstructOutcome {
    Found { design: Design, nodes: u64 },
    NotFound(NotFoundReason),
    BudgetExceeded { nodes: u64 },
}

/// Deterministic backtracking search for a t-(n,k,λ) design.
///
/// `budget` is a search-node limit (a node is one block choice explored);
/// it must be positive. When λ=1 the lexicographically first block is fixed
/// to {1..k}, which preserves completeness up to relabeling. A
/// `BudgetExceeded { nodes: 0 }` means the instance was too large to even
/// materialize the candidate block list within the budget.
pub fn construct_design(spec: &DesignSpec, budget: u64) -> Result<ConstructOutcome> {
    spec.validate()?;
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let report = divisibility_check(spec)?;
    if !report.ok {
        return Ok(ConstructOutcome::NotFound(NotFoundReason::Divisibility(
            report,
        )));
    }
    let rows_hint = binom(spec.n, spec.k)?;
    let cols_hint = binom(spec.n, spec.t)?;
    if rows_hint > budget as u128 || cols_hint > budget as u128 {
        return Ok(ConstructOutcome::BudgetExceeded { nodes: 0 });
    }

    let mut matrix = CoverMatrix::build(spec);
    if spec.lambda == 1 {
        // Symmetry breaking: block {1..k} is row 0 in lexicographic order.
        matrix.choose(0);
        matrix.chosen.push(0);
    }
    match matrix.search(budget) {
        SearchOutcome::Found => {
            let blocks: Vec<VertexSet> = matrix
                .chosen
                .iter()
                .map(|&r| VertexSet::new(matrix.row_vertices(r)).expect("rows are sorted"))
                .collect();
            let design = Design::new(*spec, blocks)?;
            match verify_design(&design)? {
                DesignCheck::Valid => Ok(ConstructOutcome::Found {
                    design,
                    nodes: matrix.nodes,
                }),
                DesignCheck::Violation { subset, coverage } => Err(Error::Internal(format!(
                    "search produced an invalid design: {subset} covered {coverage} times"
                ))),
            }
        }
        SearchOutcome::Exhausted => Ok(ConstructOutcome::NotFound(NotFoundReason::Exhausted {
            nodes: matrix.nodes,
        })),
        SearchOutcome::Budget => Ok(ConstructOutcome::BudgetExceeded {
            nodes: matrix.nodes,
        }),
    }
}

enum SearchOutcome {
    Found,
    Exhausted,
    Budget,
}

/// Counter-based exact multi-cover state. Rows are candidate blocks
/// (k-subsets in lexicographic order), columns are t-subsets; every column
/// must be covered exactly λ times.
struct CoverMatrix {
    row_cols: Vec<Vec<u32>>,
    col_rows: Vec<Vec<u32>>,
    row_sets: Vec<Vec<Vertex>>,
    need: Vec<u32>,
    active: Vec<u32>, // admissible rows covering each column
    row_dead: Vec<u32>,
    row_chosen: Vec<bool>,
    floor: Vec<u32>, // ascending-row floor per column
    chosen: Vec<u32>,
    nodes: u64,
}

impl CoverMatrix {
    fn build(spec: &DesignSpec) -> CoverMatrix {
        let n = spec.n;
        let mut col_ids: HashMap<Vec<Vertex>, u32> = HashMap::new();
        let mut num_cols = 0u32;
        each_combination(n, spec.t, |idx| {
            let sub: Vec<Vertex> = idx.iter().map(|&i| i + 1).collect();
            col_ids.insert(sub, num_cols);
            num_cols += 1;
            true
        });

        let mut row_sets: Vec<Vec<Vertex>> = Vec::new();
        let mut row_cols: Vec<Vec<u32>> = Vec::new();
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); num_cols as usize];
        each_combination(n, spec.k, |idx| {
            let block: Vec<Vertex> = idx.iter().map(|&i| i + 1).collect();
            let row_id = row_sets.len() as u32;
            let mut cols = Vec::new();
            each_combination(spec.k, spec.t, |sub| {
                let key: Vec<Vertex> = sub.iter().map(|&i| block[i]).collect();
                let c = col_ids[&key];
                cols.push(c);
                col_rows[c as usize].push(row_id);
                true
            });
            row_cols.push(cols);
            row_sets.push(block);
            true
        });

        let num_rows = row_sets.len();
        let active: Vec<u32> = col_rows.iter().map(|rs| rs.len() as u32).collect();
        CoverMatrix {
            row_cols,
            col_rows,
            row_sets,
            need: vec![spec.lambda as u32; num_cols as usize],
            active,
            row_dead: vec![0; num_rows],
            row_chosen: vec![false; num_rows],
            floor: vec![0; num_cols as usize],
            chosen: Vec::new(),
            nodes: 0,
        }
    }

    fn row_vertices(&self, r: u32) -> Vec<Vertex> {
        self.row_sets[r as usize].clone()
    }

    fn admissible(&self, r: u32) -> bool {
        !self.row_chosen[r as usize] && self.row_dead[r as usize] == 0
    }

    fn kill_row(&mut self, r: u32) {
        let r = r as usize;
        self.row_dead[r] += 1;
        if self.row_dead[r] == 1 && !self.row_chosen[r] {
            for ci in 0..self.row_cols[r].len() {
                let c = self.row_cols[r][ci] as usize;
                self.active[c] -= 1;
            }
        }
    }

    fn revive_row(&mut self, r: u32) {
        let r = r as usize;
        if self.row_dead[r] == 1 && !self.row_chosen[r] {
            for ci in 0..self.row_cols[r].len() {
                let c = self.row_cols[r][ci] as usize;
                self.active[c] += 1;
            }
        }
        self.row_dead[r] -= 1;
    }

    fn choose(&mut self, r: u32) {
        self.row_chosen[r as usize] = true;
        for ci in 0..self.row_cols[r as usize].len() {
            let c = self.row_cols[r as usize][ci] as usize;
            self.active[c] -= 1;
        }
        for ci in 0..self.row_cols[r as usize].len() {
            let c = self.row_cols[r as usize][ci] as usize;
            self.need[c] -= 1;
            if self.need[c] == 0 {
                for ri in 0..self.col_rows[c].len() {
                    let r2 = self.col_rows[c][ri];
                    self.kill_row(r2);
                }
            }
        }
    }

    fn unchoose(&mut self, r: u32) {
        for ci in (0..self.row_cols[r as usize].len()).rev() {
            let c = self.row_cols[r as usize][ci] as usize;
            if self.need[c] == 0 {
                for ri in (0..self.col_rows[c].len()).rev() {
                    let r2 = self.col_rows[c][ri];
                    self.revive_row(r2);
                }
            }
            self.need[c] += 1;
        }
        for ci in 0..self.row_cols[r as usize].len() {
            let c = self.row_cols[r as usize][ci] as usize;
            self.active[c] += 1;
        }
        self.row_chosen[r as usize] = false;
    }

    /// Most-constrained open column; `None` when every column is satisfied.
    fn pick_column(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for c in 0..self.need.len() {
            if self.need[c] > 0 {
                let a = self.active[c];
                if best.is_none_or(|(ba, _)| a < ba) {
                    best = Some((a, c));
                }
            }
        }
        best.map(|(_, c)| c)
    }

    fn search(&mut self, budget: u64) -> SearchOutcome {
        let c = match self.pick_column() {
            None => return SearchOutcome::Found,
            Some(c) => c,
        };
        if self.active[c] < self.need[c] {
            return SearchOutcome::Exhausted;
        }
        for ri in 0..self.col_rows[c].len() {
            let r = self.col_rows[c][ri];
            if r < self.floor[c] || !self.admissible(r) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > budget {
                return SearchOutcome::Budget;
            }
            self.choose(r);
            self.chosen.push(r);
            let saved_floor = self.floor[c];
            self.floor[c] = r + 1;
            match self.search(budget) {
                SearchOutcome::Found => return SearchOutcome::Found,
                SearchOutcome::Budget => return SearchOutcome::Budget,
                SearchOutcome::Exhausted => {}
            }
            self.floor[c] = saved_floor;
            self.chosen.pop();
            self.unchoose(r);
        }
        SearchOutcome::Exhausted
    }
}

/// Outcome of the coverage scan.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DesignCheck {
    Valid,
    /// First lexicographic t-subset whose coverage differs from λ.
    Violation {
        subset: VertexSet,
        coverage: usize,
    },
}

/// Exhaustive scan: every t-subset of 1..=n must lie in exactly λ blocks.
/// Returns the first (lexicographic) violating t-subset on failure.
pub fn verify_design(design: &Design) -> Result<DesignCheck> {
    let spec = &design.spec;
    spec.validate()?;
    // One pass over the blocks, then a lexicographic sweep of all t-subsets.
    let mut counts: HashMap<Vec<Vertex>, usize> = HashMap::new();
    for b in design.blocks() {
        each_combination(spec.k, spec.t, |idx| {
            let key: Vec<Vertex> = idx.iter().map(|&i| b.as_slice()[i]).collect();
            *counts.entry(key).or_insert(0) += 1;
            true
        });
    }
    let mut violation = None;
    each_combination(spec.n, spec.t, |idx| {
        let key: Vec<Vertex> = idx.iter().map(|&i| i + 1).collect();
        let cov = counts.get(&key).copied().unwrap_or(0);
        if cov != spec.lambda {
            violation = Some((key, cov));
            return false;
        }
        true
    });
    match violation {
        Some((key, coverage)) => Ok(DesignCheck::Violation {
            subset: VertexSet::new(key)?,
            coverage,
        }),
        None => Ok(DesignCheck::Valid),
    }
}

/// Reinterprets a design as a k-uniform hypergraph on the same point set.
pub fn design_to_hypergraph(design: &Design) -> Hypergraph {
    Hypergraph::new(design.spec.n, design.spec.k, design.blocks.clone())
        .expect("a valid design is a valid hypergraph")
}

/// Direct deterministic Steiner triple system: Bose for n ≡ 3 (mod 6),
/// Skolem for n ≡ 1 (mod 6). The result is verified before it is returned.
pub fn construct_sts(n: usize) -> Result<Design> {
    if n < 3 || (n % 6 != 1 && n % 6 != 3) {
        return Err(Error::NotSteinerAdmissible(n));
    }
    let blocks = if n % 6 == 3 {
        bose_triples(n)
    } else {
        skolem_triples(n)
    };
    let spec = DesignSpec::new(2, n, 3, 1)?;
    let design = Design::new(spec, blocks)?;
    match verify_design(&design)? {
        DesignCheck::Valid => Ok(design),
        DesignCheck::Violation { subset, coverage } => Err(Error::Internal(format!(
            "triple system construction failed verification at {subset} (coverage {coverage})"
        ))),
    }
}

/// Bose construction, n = 6t+3. Points are Z_q x {0,1,2} with q = 2t+1,
/// using the idempotent commutative quasigroup i∘j = (i+j)(t+1) mod q.
fn bose_triples(n: usize) -> Vec<VertexSet> {
    let t = (n - 3) / 6;
    let q = 2 * t + 1;
    let label = |i: usize, r: usize| r * q + i + 1;
    let op = |i: usize, j: usize| ((i + j) * (t + 1)) % q;

    let mut blocks = Vec::new();
    for i in 0..q {
        blocks.push(VertexSet::from_unsorted(vec![label(i, 0), label(i, 1), label(i, 2)]).unwrap());
    }
    for i in 0..q {
        for j in i + 1..q {
            for r in 0..3 {
                blocks.push(
                    VertexSet::from_unsorted(vec![
                        label(i, r),
                        label(j, r),
                        label(op(i, j), (r + 1) % 3),
                    ])
                    .unwrap(),
                );
            }
        }
    }
    blocks
}

/// Skolem construction, n = 6t+1. Points are Z_q x {0,1,2} plus one extra
/// point, q = 2t, with the half-idempotent commutative quasigroup obtained
/// by relabeling addition mod q (evens first, then odds).
fn skolem_triples(n: usize) -> Vec<VertexSet> {
    let t = (n - 1) / 6;
    let q = 2 * t;
    let label = |i: usize, r: usize| r * q + i + 1;
    let infinity = n; // = 3q + 1
                      // f(2m) = m, f(2m+1) = t+m: a bijection Z_q -> Z_q making
                      // i∘j = f((i+j) mod q) commutative, half-idempotent and cancellative.
    let f = |x: usize| {
        if x.is_multiple_of(2) {
            x / 2
        } else {
            t + (x - 1) / 2
        }
    };
    let op = |i: usize, j: usize| f((i + j) % q);

    let mut blocks = Vec::new();
    for i in 0..t {
        blocks.push(VertexSet::from_unsorted(vec![label(i, 0), label(i, 1), label(i, 2)]).unwrap());
    }
    for i in 0..t {
        for r in 0..3 {
            blocks.push(
                VertexSet::from_unsorted(vec![infinity, label(t + i, r), label(i, (r + 1) % 3)])
                    .unwrap(),
            );
        }
    }
    for i in 0..q {
        for j in i + 1..q {
            for r in 0..3 {
                blocks.push(
                    VertexSet::from_unsorted(vec![
                        label(i, r),
                        label(j, r),
                        label(op(i, j), (r + 1) % 3),
                    ])
                    .unwrap(),
                );
            }
        }
    }
    blocks
}
