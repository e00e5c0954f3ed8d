//! Immutable graphs in adjacency-array form.
//!
//! The only access the algorithms get to their input is through
//! [`AdjacencyArray`]: the degree of a vertex and its `i`-th neighbor, each
//! answered in constant time. Every such access is a *probe* and is tallied
//! by the [`ProbeCounter`] the caller hands in.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Per-run tally of adjacency-array accesses.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProbeCounter {
    degree_probes: u64,
    neighbor_probes: u64,
    enabled: bool,
}

impl ProbeCounter {
    pub fn new() -> Self {
        ProbeCounter {
            degree_probes: 0,
            neighbor_probes: 0,
            enabled: true,
        }
    }

    /// A counter that ignores every probe. Lets callers run the algorithms
    /// without accounting.
    pub fn uncounted() -> Self {
        ProbeCounter {
            enabled: false,
            ..Default::default()
        }
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    pub fn degree_probes(&self) -> u64 {
        self.degree_probes
    }

    pub fn neighbor_probes(&self) -> u64 {
        self.neighbor_probes
    }

    pub fn total(&self) -> u64 {
        self.degree_probes + self.neighbor_probes
    }

    pub fn reset(&mut self) {
        self.degree_probes = 0;
        self.neighbor_probes = 0;
    }

    #[inline]
    fn record_degree(&mut self) {
        if self.enabled {
            self.degree_probes += 1;
        }
    }

    #[inline]
    fn record_neighbor(&mut self) {
        if self.enabled {
            self.neighbor_probes += 1;
        }
    }
}

/// Constant-time degree and `i`-th neighbor access.
///
/// Implementors supply the raw accessors, which may panic on out-of-range
/// arguments. The provided [`degree`](AdjacencyArray::degree) and
/// [`neighbor`](AdjacencyArray::neighbor) methods validate their arguments and
/// record a probe; algorithms go through those.
pub trait AdjacencyArray {
    fn vertex_count(&self) -> usize;

    fn raw_degree(&self, v: usize) -> usize;

    fn raw_neighbor(&self, v: usize, i: usize) -> usize;

    fn degree(&self, v: usize, pc: &mut ProbeCounter) -> Result<usize> {
        let n = self.vertex_count();
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        pc.record_degree();
        Ok(self.raw_degree(v))
    }

    fn neighbor(&self, v: usize, i: usize, pc: &mut ProbeCounter) -> Result<usize> {
        let n = self.vertex_count();
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        let degree = self.raw_degree(v);
        if i >= degree {
            return Err(Error::NeighborIndexOutOfRange {
                vertex: v,
                index: i,
                degree,
            });
        }
        pc.record_neighbor();
        Ok(self.raw_neighbor(v, i))
    }
}

/// Simple undirected graph stored as offsets into a flat neighbor array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    // every slice ascending; enables binary-search edge lookup
    sorted: bool,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
            sorted: true,
        }
    }

    /// Builds the canonical graph on `n` vertices from an edge list.
    ///
    /// Duplicate and reversed pairs are merged. Every neighbor slice comes out
    /// in ascending vertex-id order.
    pub fn from_edge_list<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_id_width(n)?;
        let mut pairs = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            pairs.push(if u < v { (u, v) } else { (v, u) });
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in &pairs {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut neighbors = vec![0u32; 2 * pairs.len()];
        // pairs are sorted by (min, max), so every slice fills in ascending order
        for &(u, v) in &pairs {
            neighbors[cursor[u]] = v as u32;
            cursor[u] += 1;
            neighbors[cursor[v]] = u as u32;
            cursor[v] += 1;
        }
        Ok(Graph {
            offsets,
            neighbors,
            sorted: true,
        })
    }

    /// Builds a graph whose adjacency arrays are exactly `lists`, in the given
    /// order. Fails unless the lists describe a simple undirected graph.
    pub fn from_adjacency_lists(lists: &[Vec<usize>]) -> Result<Self> {
        let n = lists.len();
        check_id_width(n)?;
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut neighbors = Vec::new();
        let mut sorted = true;
        for (v, list) in lists.iter().enumerate() {
            for &u in list {
                if u >= n {
                    return Err(Error::VertexOutOfRange { vertex: u, n });
                }
                if u == v {
                    return Err(Error::SelfLoop(v));
                }
                neighbors.push(u as u32);
            }
            sorted &= list.windows(2).all(|w| w[0] < w[1]);
            offsets.push(neighbors.len());
        }
        let g = Graph {
            offsets,
            neighbors,
            sorted,
        };
        g.validate()?;
        Ok(g)
    }

    /// Checks the structural invariants: offsets well formed, slices free of
    /// self-loops and duplicates, adjacency symmetric.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.offsets.first() != Some(&0) {
            return Err(Error::Malformed("offsets[0] must be 0".into()));
        }
        if self.offsets.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Malformed("offsets must be nondecreasing".into()));
        }
        if self.offsets[n] != self.neighbors.len() || !self.neighbors.len().is_multiple_of(2) {
            return Err(Error::Malformed(
                "offsets[n] must equal the (even) neighbor array length".into(),
            ));
        }
        let mut sorted_slices: Vec<Vec<u32>> = Vec::with_capacity(n);
        for v in 0..n {
            let mut slice = self.neighbor_slice(v).to_vec();
            if slice.iter().any(|&u| u as usize == v || u as usize >= n) {
                return Err(Error::Malformed(format!(
                    "vertex {v} lists itself or an out-of-range neighbor"
                )));
            }
            slice.sort_unstable();
            if slice.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Malformed(format!(
                    "vertex {v} lists a neighbor twice"
                )));
            }
            sorted_slices.push(slice);
        }
        for v in 0..n {
            for &u in &sorted_slices[v] {
                if sorted_slices[u as usize]
                    .binary_search(&(v as u32))
                    .is_err()
                {
                    return Err(Error::Malformed(format!(
                        "asymmetric adjacency: {u} in N({v}) but {v} not in N({u})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Unprobed view of `N(v)` in stored order. For oracles and checkers,
    /// not for the algorithms under measurement.
    pub fn neighbor_slice(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn neighbors_of(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.neighbor_slice(v).iter().map(|&u| u as usize)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.raw_degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        let (a, b) = if self.raw_degree(u) <= self.raw_degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        let slice = self.neighbor_slice(a);
        if self.sorted {
            slice.binary_search(&(b as u32)).is_ok()
        } else {
            slice.contains(&(b as u32))
        }
    }

    /// Edges as `(u, v)` with `u < v`, in ascending lexicographic order when
    /// the graph is canonical.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors_of(u)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn is_canonical(&self) -> bool {
        self.sorted
    }

    /// Same edge set with every slice sorted.
    pub fn canonicalize(&self) -> Graph {
        if self.sorted {
            return self.clone();
        }
        let mut neighbors = self.neighbors.clone();
        for v in 0..self.n() {
            neighbors[self.offsets[v]..self.offsets[v + 1]].sort_unstable();
        }
        Graph {
            offsets: self.offsets.clone(),
            neighbors,
            sorted: true,
        }
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.neighbors_of(v).filter_map(move |u| {
                let j = index[u];
                (j != usize::MAX && i < j).then_some((i, j))
            })
        });
        Graph::from_edge_list(vertices.len(), edges.collect::<Vec<_>>())
            .expect("induced subgraph of a valid graph is valid")
    }

    /// Disjoint union, vertices of `other` shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let edges: Vec<_> = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)))
            .collect();
        Graph::from_edge_list(self.n() + other.n(), edges).expect("union of valid graphs")
    }
}

impl AdjacencyArray for Graph {
    #[inline]
    fn vertex_count(&self) -> usize {
        self.n()
    }

    #[inline]
    fn raw_degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    fn raw_neighbor(&self, v: usize, i: usize) -> usize {
        self.neighbors[self.offsets[v] + i] as usize
    }
}

fn check_id_width(n: usize) -> Result<()> {
    if n > u32::MAX as usize {
        return Err(Error::Capacity(format!(
            "{n} vertices exceeds the 32-bit vertex id range"
        )));
    }
    Ok(())
}

/// Checks that `order` is a permutation of `0..n`.
pub fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::invalid(format!(
            "order has {} entries, graph has {n} vertices",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::invalid(format!(
                "order is not a permutation (bad or repeated entry {v})"
            )));
        }
    }
    Ok(())
}

/// Edge set as a hash set of `(min, max)` pairs; handy for test oracles.
pub fn edge_set(g: &Graph) -> HashSet<(usize, usize)> {
    g.edges().collect()
}
