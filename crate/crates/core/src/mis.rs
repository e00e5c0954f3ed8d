//! Deterministic greedy maximal independent set with marking.
//!
//! Scan the vertices in a fixed order; an unmarked vertex joins the set and
//! marks its whole neighborhood. Marked vertices are skipped without touching
//! their adjacency, so the work is `n + Σ_{v ∈ MIS} deg(v)`, which is at most
//! `n + n·β` because the degrees of any independent set sum to at most `n·β`.

use crate::error::Result;
use crate::graph::{check_permutation, AdjacencyArray, ProbeCounter};

/// Vertex subset with an O(1) membership index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    members: Vec<usize>,
    indicator: Vec<bool>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            members: Vec::new(),
            indicator: vec![false; n],
        }
    }

    /// Builds a set from members, ignoring repeats. Panics on ids `>= n`.
    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = VertexSet::new(n);
        for v in members {
            s.insert(v);
        }
        s
    }

    /// Returns false if `v` was already present.
    pub fn insert(&mut self, v: usize) -> bool {
        if self.indicator[v] {
            return false;
        }
        self.indicator[v] = true;
        self.members.push(v);
        true
    }

    pub fn contains(&self, v: usize) -> bool {
        self.indicator.get(v).copied().unwrap_or(false)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Size of the vertex universe.
    pub fn universe(&self) -> usize {
        self.indicator.len()
    }

    pub fn sorted_members(&self) -> Vec<usize> {
        let mut m = self.members.clone();
        m.sort_unstable();
        m
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MisStats {
    /// Mark operations, one per neighbor of each member (`Σ_{v ∈ MIS} deg v`).
    pub marks_set: u64,
    pub vertices_scanned: u64,
    /// `vertices_scanned + marks_set`.
    pub work: u64,
}

pub fn identity_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Greedy MIS over `order`, which must be a permutation of the vertices.
pub fn greedy_mis<G>(g: &G, order: &[usize], pc: &mut ProbeCounter) -> Result<(VertexSet, MisStats)>
where
    G: AdjacencyArray + ?Sized,
{
    let n = g.vertex_count();
    check_permutation(order, n)?;

    let mut marked = vec![false; n];
    let mut set = VertexSet::new(n);
    let mut stats = MisStats::default();
    for &v in order {
        stats.vertices_scanned += 1;
        if marked[v] {
            continue;
        }
        set.insert(v);
        let deg = g.degree(v, pc)?;
        for i in 0..deg {
            let u = g.neighbor(v, i, pc)?;
            marked[u] = true;
            stats.marks_set += 1;
        }
    }
    stats.work = stats.vertices_scanned + stats.marks_set;
    Ok((set, stats))
}

/// Vertices by nondecreasing degree, ties by id, via counting sort.
pub fn degree_order<G>(g: &G, pc: &mut ProbeCounter) -> Result<Vec<usize>>
where
    G: AdjacencyArray + ?Sized,
{
    let n = g.vertex_count();
    let degrees = (0..n)
        .map(|v| g.degree(v, pc))
        .collect::<Result<Vec<_>>>()?;
    // degrees are < n, so n buckets suffice
    let mut start = vec![0usize; n.max(1) + 1];
    for &d in &degrees {
        start[d + 1] += 1;
    }
    for d in 0..n.max(1) {
        start[d + 1] += start[d];
    }
    let mut order = vec![0usize; n];
    for (v, &d) in degrees.iter().enumerate() {
        order[start[d]] = v;
        start[d] += 1;
    }
    Ok(order)
}

/// Greedy MIS in nondecreasing-degree order. The output meets the Caro-Wei
/// bound `Σ_v 1/(deg v + 1)`.
pub fn caro_wei_mis<G>(g: &G, pc: &mut ProbeCounter) -> Result<(VertexSet, MisStats)>
where
    G: AdjacencyArray + ?Sized,
{
    let order = degree_order(g, pc)?;
    greedy_mis(g, &order, pc)
}

/// Guaranteed ceiling on [`MisStats::work`] for any `beta ≥ β(g)`.
pub fn mis_work_bound<G>(g: &G, beta: usize) -> u64
where
    G: AdjacencyArray + ?Sized,
{
    let n = g.vertex_count() as u64;
    n + n * beta as u64
}
