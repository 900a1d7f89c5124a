//! Core representation: k-uniform hypergraphs on labeled vertices 1..n,
//! vertex subsets, bijections, generalized degrees and conflicts.
//!
//! Values are immutable after construction (the solver clones bijections it
//! wants to mutate), so everything here is safe to share across threads.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::combi::each_combination;
use crate::error::{Error, Result};

/// 1-based vertex label.
pub type Vertex = usize;

/// A sorted, duplicate-free set of vertex labels. The unit of edges,
/// kernels and the β-subsets the switching solver exchanges.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    /// Builds from an already strictly increasing sequence of labels >= 1.
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.first().is_some_and(|&v| v == 0) {
            return Err(Error::VertexOutOfRange { vertex: 0, n: 0 });
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotStrictlyIncreasing(format!("{vertices:?}")));
        }
        Ok(VertexSet(vertices))
    }

    /// Sorts the input; rejects duplicates and the label 0.
    pub fn from_unsorted(mut vertices: Vec<Vertex>) -> Result<Self> {
        vertices.sort_unstable();
        Self::new(vertices)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn iter(&self) -> std::iter::Copied<std::slice::Iter<'_, Vertex>> {
        self.0.iter().copied()
    }

    pub fn max(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Subset test by merge walk; both sides are sorted.
    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        let mut it = other.0.iter();
        'outer: for &v in &self.0 {
            for &w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint_from(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// Merged union of two disjoint or overlapping sets.
    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut v: Vec<Vertex> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    /// Fixed-width bitmask (bit v-1 set for vertex v) when every label fits
    /// in 64 bits; `None` otherwise. Semantically identical to the general
    /// sorted-vector path.
    pub fn mask(&self) -> Option<u64> {
        if self.max().unwrap_or(0) > 64 {
            return None;
        }
        Some(self.0.iter().fold(0u64, |m, &v| m | 1 << (v - 1)))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A k-uniform hypergraph on vertices 1..=n. Isolated vertices exist
/// implicitly through `n`. Edges are kept canonically sorted; membership
/// tests go through a hash set, with a bitmask fast path when n <= 64.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<VertexSet>,
    edge_set: HashSet<VertexSet>,
    masks: Vec<u64>,
    mask_set: HashSet<u64>,
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.edges == other.edges
    }
}
impl Eq for Hypergraph {}

impl Hypergraph {
    /// Builds a hypergraph, rejecting wrong-arity edges, labels outside
    /// 1..=n and duplicate edges. `k <= n` is only required once there is
    /// at least one edge.
    pub fn new(n: usize, k: usize, edges: Vec<VertexSet>) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        if !edges.is_empty() && k > n {
            return Err(Error::KExceedsN { k, n });
        }
        let mut sorted = edges;
        for e in &sorted {
            if e.len() != k {
                return Err(Error::EdgeWrongSize {
                    expected: k,
                    got: e.len(),
                });
            }
            if let Some(max) = e.max() {
                if max > n {
                    return Err(Error::VertexOutOfRange { vertex: max, n });
                }
            }
        }
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].to_string()));
        }

        let edge_set: HashSet<VertexSet> = sorted.iter().cloned().collect();
        let (masks, mask_set) = if n <= 64 {
            let m: Vec<u64> = sorted.iter().map(|e| e.mask().unwrap()).collect();
            let s = m.iter().copied().collect();
            (m, s)
        } else {
            (Vec::new(), HashSet::new())
        };
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in sorted.iter().enumerate() {
            for v in e.iter() {
                incidence[v - 1].push(i);
            }
        }
        Ok(Hypergraph {
            n,
            k,
            edges: sorted,
            edge_set,
            masks,
            mask_set,
            incidence,
        })
    }

    pub fn edgeless(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, Vec::new())
    }

    /// Complete k-uniform hypergraph K_n^(k).
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        let mut edges = Vec::new();
        each_combination(n, k, |idx| {
            let set: Vec<Vertex> = idx.iter().map(|&i| i + 1).collect();
            edges.push(VertexSet(set));
            true
        });
        Self::new(n, k, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical lexicographic order.
    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    /// Indices (into `edges()`) of edges containing `v`.
    pub fn incident_edges(&self, v: Vertex) -> &[usize] {
        &self.incidence[v - 1]
    }

    pub fn is_isolated(&self, v: Vertex) -> bool {
        self.incidence[v - 1].is_empty()
    }

    /// Bitmask per edge, parallel to `edges()`, when n <= 64.
    pub fn edge_masks(&self) -> Option<&[u64]> {
        if self.n <= 64 {
            Some(&self.masks)
        } else {
            None
        }
    }

    /// Edge-set membership via the bitmask path when available.
    pub fn contains_edge(&self, e: &VertexSet) -> bool {
        if self.n <= 64 {
            match e.mask() {
                Some(m) => self.mask_set.contains(&m),
                None => false,
            }
        } else {
            self.contains_edge_general(e)
        }
    }

    /// Edge-set membership through the general hash path, regardless of n.
    pub fn contains_edge_general(&self, e: &VertexSet) -> bool {
        self.edge_set.contains(e)
    }

    pub fn contains_edge_mask(&self, m: u64) -> bool {
        self.mask_set.contains(&m)
    }

    /// Generalized degree d_|U|(U): the number of edges containing U.
    ///
    /// Rejects labels outside 1..=n and subsets larger than k.
    pub fn degree(&self, u: &VertexSet) -> Result<usize> {
        if let Some(max) = u.max() {
            if max > self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: max,
                    n: self.n,
                });
            }
        }
        if u.len() > self.k {
            return Err(Error::SubsetTooLarge {
                got: u.len(),
                k: self.k,
            });
        }
        if self.n <= 64 {
            let um = u.mask().unwrap();
            return Ok(self.masks.iter().filter(|&&em| um & em == um).count());
        }
        Ok(self.edges.iter().filter(|e| u.is_subset_of(e)).count())
    }

    /// Δ_l: the maximum degree over all l-subsets of 1..=n. Zero for an
    /// edgeless hypergraph. Only subsets of existing edges can have positive
    /// degree, so the maximum is found by counting each edge's l-subsets.
    pub fn max_degree(&self, l: usize) -> Result<usize> {
        if l == 0 || l > self.k {
            return Err(Error::InvalidSubsetSize { l, k: self.k });
        }
        if self.edges.is_empty() {
            return Ok(0);
        }
        if self.n <= 64 {
            let mut counts: HashMap<u64, usize> = HashMap::new();
            for em in &self.masks {
                let bits: Vec<u32> = (0..64).filter(|&b| em & (1 << b) != 0).collect();
                each_combination(bits.len(), l, |idx| {
                    let m = idx.iter().fold(0u64, |acc, &i| acc | 1 << bits[i]);
                    *counts.entry(m).or_insert(0) += 1;
                    true
                });
            }
            return Ok(counts.values().copied().max().unwrap_or(0));
        }
        let mut counts: HashMap<VertexSet, usize> = HashMap::new();
        for e in &self.edges {
            each_combination(e.len(), l, |idx| {
                let sub = VertexSet(idx.iter().map(|&i| e.as_slice()[i]).collect());
                *counts.entry(sub).or_insert(0) += 1;
                true
            });
        }
        Ok(counts.values().copied().max().unwrap_or(0))
    }
}

/// A permutation of 1..=n used as a candidate packing of two hypergraphs
/// on the same vertex count. The inverse is kept alongside the forward map
/// so conflict counting can walk preimages cheaply.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bijection {
    map: Vec<Vertex>, // map[i-1] = f(i)
    inv: Vec<Vertex>, // inv[j-1] = f^{-1}(j)
}

impl Bijection {
    pub fn identity(n: usize) -> Self {
        let map: Vec<Vertex> = (1..=n).collect();
        Bijection {
            inv: map.clone(),
            map,
        }
    }

    /// Validates that `map` is a permutation of 1..=len.
    pub fn from_map(map: Vec<Vertex>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &img in &map {
            if img == 0 || img > n {
                return Err(Error::NotAPermutation {
                    n,
                    reason: format!("image {img} out of range"),
                });
            }
            if seen[img - 1] {
                return Err(Error::NotAPermutation {
                    n,
                    reason: format!("image {img} repeated"),
                });
            }
            seen[img - 1] = true;
        }
        let mut inv = vec![0; n];
        for (i, &img) in map.iter().enumerate() {
            inv[img - 1] = i + 1;
        }
        Ok(Bijection { map, inv })
    }

    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        use rand::seq::SliceRandom;
        let mut map: Vec<Vertex> = (1..=n).collect();
        map.shuffle(rng);
        Bijection::from_map(map).expect("shuffled identity is a permutation")
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn image(&self, v: Vertex) -> Vertex {
        self.map[v - 1]
    }

    pub fn preimage(&self, v: Vertex) -> Vertex {
        self.inv[v - 1]
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.map
    }

    /// Image set f(U), re-sorted.
    pub fn apply(&self, u: &VertexSet) -> Result<VertexSet> {
        self.apply_with(u, &self.map)
    }

    /// Preimage set f^{-1}(U), re-sorted.
    pub fn apply_inverse(&self, u: &VertexSet) -> Result<VertexSet> {
        self.apply_with(u, &self.inv)
    }

    fn apply_with(&self, u: &VertexSet, table: &[Vertex]) -> Result<VertexSet> {
        if let Some(max) = u.max() {
            if max > self.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: max,
                    n: self.n(),
                });
            }
        }
        VertexSet::from_unsorted(u.iter().map(|v| table[v - 1]).collect())
    }

    pub fn inverse(&self) -> Bijection {
        Bijection {
            map: self.inv.clone(),
            inv: self.map.clone(),
        }
    }

    /// Exchanges the images of vertices `a` and `b`.
    pub fn swap_images(&mut self, a: Vertex, b: Vertex) {
        self.map.swap(a - 1, b - 1);
        let (ia, ib) = (self.map[a - 1], self.map[b - 1]);
        self.inv[ia - 1] = a;
        self.inv[ib - 1] = b;
    }
}

impl fmt::Display for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, img) in self.map.iter().enumerate() {
            writeln!(f, "{} -> {}", i + 1, img)?;
        }
        Ok(())
    }
}

fn check_pair(h1: &Hypergraph, h2: &Hypergraph) -> Result<()> {
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

/// All conflicts of `f`: edges C of H2 whose preimage f^{-1}(C) is an edge
/// of H1. Returned in H2's canonical edge order. Empty iff `f` is a packing.
pub fn conflicts(h1: &Hypergraph, h2: &Hypergraph, f: &Bijection) -> Result<Vec<VertexSet>> {
    check_pair(h1, h2)?;
    let mut out = Vec::new();
    if h1.n() <= 64 {
        for (i, e) in h2.edges().iter().enumerate() {
            let mask = h2.masks[i];
            let mut pre = 0u64;
            let mut bits = mask;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                pre |= 1 << (f.preimage(b + 1) - 1);
                bits &= bits - 1;
            }
            if h1.contains_edge_mask(pre) {
                out.push(e.clone());
            }
        }
    } else {
        for e in h2.edges() {
            if h1.contains_edge_general(&f.apply_inverse(e)?) {
                out.push(e.clone());
            }
        }
    }
    Ok(out)
}

/// Conflict count without materializing the conflict list.
pub fn count_conflicts(h1: &Hypergraph, h2: &Hypergraph, f: &Bijection) -> Result<usize> {
    Ok(conflicts(h1, h2, f)?.len())
}
