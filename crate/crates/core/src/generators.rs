//! Graph families with known or bounded neighborhood independence.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{AdjacencyArray, Graph};

/// `K_n` minus a perfect matching, answered without materializing the
/// `n(n-2)` adjacency entries. `N(v)` is `0..n` without `v` and its partner,
/// ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueMinusMatching {
    partner: Vec<usize>,
}

impl CliqueMinusMatching {
    /// Removed matching `(2i, 2i+1)`.
    pub fn standard(n: usize) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "clique minus perfect matching needs even n, got {n}"
            )));
        }
        Ok(CliqueMinusMatching {
            partner: (0..n).map(|v| v ^ 1).collect(),
        })
    }

    /// Removed matching given as a fixed-point-free involution.
    pub fn with_partners(partner: Vec<usize>) -> Result<Self> {
        let n = partner.len();
        for (v, &p) in partner.iter().enumerate() {
            if p >= n || p == v || partner[p] != v {
                return Err(Error::invalid(format!(
                    "partner array is not a perfect matching at vertex {v}"
                )));
            }
        }
        Ok(CliqueMinusMatching { partner })
    }

    pub fn random(n: usize, rng: &mut impl Rng) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "clique minus perfect matching needs even n, got {n}"
            )));
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let mut partner = vec![0; n];
        for pair in perm.chunks(2) {
            partner[pair[0]] = pair[1];
            partner[pair[1]] = pair[0];
        }
        Ok(CliqueMinusMatching { partner })
    }

    pub fn partner(&self, v: usize) -> usize {
        self.partner[v]
    }

    pub fn to_graph(&self) -> Graph {
        let n = self.partner.len();
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.partner[u] != v)
            .collect();
        Graph::from_edge_list(n, edges).expect("valid by construction")
    }
}

impl AdjacencyArray for CliqueMinusMatching {
    fn vertex_count(&self) -> usize {
        self.partner.len()
    }

    fn raw_degree(&self, v: usize) -> usize {
        assert!(v < self.partner.len());
        self.partner.len() - 2
    }

    fn raw_neighbor(&self, v: usize, i: usize) -> usize {
        assert!(i < self.raw_degree(v));
        let p = self.partner[v];
        let (lo, hi) = (v.min(p), v.max(p));
        let mut j = i;
        if j >= lo {
            j += 1;
        }
        if j >= hi {
            j += 1;
        }
        j
    }
}

/// Either a materialized graph or an implicit one.
#[derive(Debug, Clone)]
pub enum Instance {
    Graph(Graph),
    CliqueMinusMatching(CliqueMinusMatching),
}

impl Instance {
    /// Materializes implicit instances.
    pub fn into_graph(self) -> Graph {
        match self {
            Instance::Graph(g) => g,
            Instance::CliqueMinusMatching(c) => c.to_graph(),
        }
    }

    pub fn as_graph(&self) -> Option<&Graph> {
        match self {
            Instance::Graph(g) => Some(g),
            Instance::CliqueMinusMatching(_) => None,
        }
    }
}

impl AdjacencyArray for Instance {
    fn vertex_count(&self) -> usize {
        match self {
            Instance::Graph(g) => g.vertex_count(),
            Instance::CliqueMinusMatching(c) => c.vertex_count(),
        }
    }

    #[inline]
    fn raw_degree(&self, v: usize) -> usize {
        match self {
            Instance::Graph(g) => g.raw_degree(v),
            Instance::CliqueMinusMatching(c) => c.raw_degree(v),
        }
    }

    #[inline]
    fn raw_neighbor(&self, v: usize, i: usize) -> usize {
        match self {
            Instance::Graph(g) => g.raw_neighbor(v, i),
            Instance::CliqueMinusMatching(c) => c.raw_neighbor(v, i),
        }
    }
}

/// Line graph: one vertex per edge of `g` (in [`Graph::edges`] order),
/// adjacent iff the edges share an endpoint.
pub fn line_graph(g: &Graph) -> Result<Graph> {
    let edges: Vec<_> = g.edges().collect();
    if edges.is_empty() {
        return Err(Error::invalid("line graph of an edgeless graph"));
    }
    let mut incident = vec![Vec::new(); g.n()];
    for (id, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(id);
        incident[v].push(id);
    }
    let mut line_edges = Vec::new();
    for ids in &incident {
        for (a, &x) in ids.iter().enumerate() {
            for &y in &ids[a + 1..] {
                line_edges.push((x, y));
            }
        }
    }
    Graph::from_edge_list(edges.len(), line_edges)
}

/// Intersection graph of hyperedges of size at most `r`.
pub fn hyper_line_graph(hyperedges: &[Vec<usize>], r: usize) -> Result<Graph> {
    let mut by_element: std::collections::HashMap<usize, Vec<usize>> = Default::default();
    for (id, h) in hyperedges.iter().enumerate() {
        let distinct: HashSet<_> = h.iter().copied().collect();
        if distinct.len() > r {
            return Err(Error::invalid(format!(
                "hyperedge {id} has {} elements, rank bound is {r}",
                distinct.len()
            )));
        }
        for x in distinct {
            by_element.entry(x).or_default().push(id);
        }
    }
    let mut edges = Vec::new();
    for ids in by_element.values() {
        for (a, &x) in ids.iter().enumerate() {
            for &y in &ids[a + 1..] {
                edges.push((x, y));
            }
        }
    }
    Graph::from_edge_list(hyperedges.len(), edges)
}

pub fn clique(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edge_list(n, edges).expect("valid by construction")
}

/// `K_n` minus the matching `(2i, 2i+1)`.
pub fn clique_minus_pm(n: usize) -> Result<Graph> {
    Ok(CliqueMinusMatching::standard(n)?.to_graph())
}

/// Random unit-interval graph: `n` points uniform on `[0, length]`, adjacent
/// iff at distance at most `window`.
pub fn unit_interval(n: usize, length: f64, window: f64, seed: u64) -> Result<Graph> {
    if window <= 0.0 || length < 0.0 {
        return Err(Error::invalid(
            "unit interval needs window > 0 and length >= 0",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * length).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut edges = Vec::new();
    for (i, &a) in order.iter().enumerate() {
        for &b in &order[i + 1..] {
            if xs[b] - xs[a] > window {
                break;
            }
            edges.push((a, b));
        }
    }
    Graph::from_edge_list(n, edges)
}

/// Random unit-disk graph: `n` points uniform in `[0, side]²`, adjacent iff
/// at Euclidean distance at most `radius`.
pub fn unit_disk(n: usize, side: f64, radius: f64, seed: u64) -> Result<Graph> {
    if radius <= 0.0 || side < 0.0 {
        return Err(Error::invalid("unit disk needs radius > 0 and side >= 0"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.random::<f64>() * side, rng.random::<f64>() * side))
        .collect();
    // bucket grid with cell size ≥ radius; only adjacent cells can hold neighbors
    let cells = ((side / radius).floor() as usize).clamp(1, 1 << 12);
    let cell =
        |x: f64| (((x / side.max(f64::MIN_POSITIVE)) * cells as f64) as usize).min(cells - 1);
    let mut grid = vec![Vec::new(); cells * cells];
    for (i, &(x, y)) in pts.iter().enumerate() {
        grid[cell(x) * cells + cell(y)].push(i);
    }
    let r2 = radius * radius;
    let mut edges = Vec::new();
    for (i, &(x, y)) in pts.iter().enumerate() {
        let (cx, cy) = (cell(x), cell(y));
        for gx in cx.saturating_sub(1)..=(cx + 1).min(cells - 1) {
            for gy in cy.saturating_sub(1)..=(cy + 1).min(cells - 1) {
                for &j in &grid[gx * cells + gy] {
                    if j > i {
                        let (dx, dy) = (pts[j].0 - x, pts[j].1 - y);
                        if dx * dx + dy * dy <= r2 {
                            edges.push((i, j));
                        }
                    }
                }
            }
        }
    }
    Graph::from_edge_list(n, edges)
}

/// Erdős-Rényi `G(n, p)`.
pub fn er_random(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, edges)
}

/// Uniform simple graph on `n` vertices with exactly `m` edges.
pub fn random_graph_with_edges(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(Error::invalid(format!(
            "{m} edges do not fit on {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = if 2 * m > max {
        let mut all: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        all.shuffle(&mut rng);
        all.truncate(m);
        all
    } else {
        let mut chosen = HashSet::with_capacity(m);
        let mut list = Vec::with_capacity(m);
        while list.len() < m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v && chosen.insert((u.min(v), u.max(v))) {
                list.push((u.min(v), u.max(v)));
            }
        }
        list
    };
    Graph::from_edge_list(n, edges)
}

/// Line graph with `n` vertices: `L(H)` for a uniform random `H` with `n`
/// edges on `base_vertices` vertices.
pub fn random_line_graph(n: usize, base_vertices: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("line graph needs at least one edge"));
    }
    line_graph(&random_graph_with_edges(base_vertices, n, seed)?)
}

/// Default base size for [`random_line_graph`]: mean base degree about 4,
/// enough room for `n` edges.
pub fn default_line_base(n: usize) -> usize {
    let mut base = (n / 2).max(2);
    while base * (base - 1) / 2 < n {
        base += 1;
    }
    base
}

/// Intersection graph of `n` uniform `rank`-subsets of `0..universe`.
pub fn random_hyper_line_graph(n: usize, rank: usize, universe: usize, seed: u64) -> Result<Graph> {
    if rank == 0 || rank > universe {
        return Err(Error::invalid(format!(
            "rank {rank} invalid for universe {universe}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<usize> = (0..universe).collect();
    let hyperedges: Vec<Vec<usize>> = (0..n)
        .map(|_| pool.choose_multiple(&mut rng, rank).copied().collect())
        .collect();
    hyper_line_graph(&hyperedges, rank)
}

/// `d`-regular bipartite graph on `2·n_side` vertices (left side first) as a
/// union of `d` random perfect matchings.
pub fn regular_bipartite(n_side: usize, d: usize, seed: u64) -> Result<Graph> {
    if d > n_side {
        return Err(Error::invalid(format!(
            "degree {d} exceeds side size {n_side}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(edges) = matchings_by_resampling(n_side, d, &mut rng) {
        return Graph::from_edge_list(2 * n_side, edges);
    }
    // dense case: left i joins right π(σ(i) + j) for j < d
    let mut left: Vec<usize> = (0..n_side).collect();
    let mut right: Vec<usize> = (0..n_side).collect();
    left.shuffle(&mut rng);
    right.shuffle(&mut rng);
    let edges: Vec<_> = (0..n_side)
        .flat_map(|i| (0..d).map(move |j| (i, (i + j) % n_side)))
        .map(|(i, k)| (left[i], n_side + right[k]))
        .collect();
    Graph::from_edge_list(2 * n_side, edges)
}

fn matchings_by_resampling(
    n_side: usize,
    d: usize,
    rng: &mut impl Rng,
) -> Option<Vec<(usize, usize)>> {
    const ATTEMPTS: usize = 200;
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    let mut perm: Vec<usize> = (0..n_side).collect();
    for _ in 0..d {
        let fresh = (0..ATTEMPTS).any(|_| {
            perm.shuffle(rng);
            perm.iter()
                .enumerate()
                .all(|(i, &j)| !used.contains(&(i, j)))
        });
        if !fresh {
            return None;
        }
        used.extend(perm.iter().enumerate().map(|(i, &j)| (i, j)));
    }
    Some(used.into_iter().map(|(i, j)| (i, n_side + j)).collect())
}

/// Disjoint union of `t` parts, each `K_{part_size}` minus an independently
/// random perfect matching.
pub fn hard_union(t: usize, part_size: usize, seed: u64) -> Result<Graph> {
    if !part_size.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "part size must be even, got {part_size}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for part in 0..t {
        let base = part * part_size;
        let c = CliqueMinusMatching::random(part_size, &mut rng)?;
        for u in 0..part_size {
            for v in u + 1..part_size {
                if c.partner(u) != v {
                    edges.push((base + u, base + v));
                }
            }
        }
    }
    Graph::from_edge_list(t * part_size, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    LineGraph,
    HyperLineGraph,
    Clique,
    CliqueMinusPm,
    UnitInterval,
    UnitDisk,
    ErRandom,
    RegularBipartite,
    HardUnion,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::LineGraph,
        Family::HyperLineGraph,
        Family::Clique,
        Family::CliqueMinusPm,
        Family::UnitInterval,
        Family::UnitDisk,
        Family::ErRandom,
        Family::RegularBipartite,
        Family::HardUnion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::LineGraph => "line_graph",
            Family::HyperLineGraph => "hyper_line_graph",
            Family::Clique => "clique",
            Family::CliqueMinusPm => "clique_minus_pm",
            Family::UnitInterval => "unit_interval",
            Family::UnitDisk => "unit_disk",
            Family::ErRandom => "er_random",
            Family::RegularBipartite => "regular_bipartite",
            Family::HardUnion => "hard_union",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == norm)
            .ok_or_else(|| Error::invalid(format!("unknown family {s:?}")))
    }
}

/// Family-specific knobs. Unused fields are ignored by other families.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyParams {
    /// Base graph size for line graphs; `None` picks [`default_line_base`].
    pub base_vertices: Option<usize>,
    pub rank: usize,
    /// Ground set for hyper line graphs; `None` means `n`.
    pub universe: Option<usize>,
    /// Interval length; `None` means `n / 8` (mean degree about 16·window).
    pub length: Option<f64>,
    pub window: f64,
    /// Square side; `None` means `sqrt(n / 4)`.
    pub side: Option<f64>,
    pub radius: f64,
    pub p: f64,
    pub d: usize,
    pub part_size: usize,
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams {
            base_vertices: None,
            rank: 3,
            universe: None,
            length: None,
            window: 1.0,
            side: None,
            radius: 1.0,
            p: 0.1,
            d: 8,
            part_size: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub family: Family,
    /// Target vertex count. Families with structural constraints round it:
    /// regular bipartite uses `n/2` per side, hard union `n / part_size` parts.
    pub n: usize,
    pub params: FamilyParams,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GenSpec {
            family,
            n,
            params: FamilyParams::default(),
            seed,
        }
    }

    pub fn with_params(mut self, params: FamilyParams) -> Self {
        self.params = params;
        self
    }

    /// Proven upper bound on β for this family, where one exists.
    pub fn beta_bound(&self) -> Option<usize> {
        match self.family {
            Family::LineGraph => Some(2),
            Family::HyperLineGraph => Some(self.params.rank),
            Family::Clique => Some(1),
            Family::CliqueMinusPm => Some(2),
            Family::UnitInterval => Some(2),
            Family::UnitDisk => Some(5),
            Family::ErRandom => None,
            Family::RegularBipartite => Some(self.params.d),
            Family::HardUnion => Some(2),
        }
    }

    /// Builds the instance. `clique_minus_pm` stays implicit.
    pub fn instance(&self) -> Result<Instance> {
        match self.family {
            Family::CliqueMinusPm => Ok(Instance::CliqueMinusMatching(
                CliqueMinusMatching::standard(self.n)?,
            )),
            _ => self.generate().map(Instance::Graph),
        }
    }

    /// Builds a materialized graph.
    pub fn generate(&self) -> Result<Graph> {
        let n = self.n;
        let p = &self.params;
        let seed = self.seed;
        match self.family {
            Family::LineGraph => random_line_graph(
                n,
                p.base_vertices.unwrap_or_else(|| default_line_base(n)),
                seed,
            ),
            Family::HyperLineGraph => {
                random_hyper_line_graph(n, p.rank, p.universe.unwrap_or(n.max(p.rank)), seed)
            }
            Family::Clique => Ok(clique(n)),
            Family::CliqueMinusPm => clique_minus_pm(n),
            Family::UnitInterval => {
                unit_interval(n, p.length.unwrap_or(n as f64 / 8.0), p.window, seed)
            }
            Family::UnitDisk => {
                unit_disk(n, p.side.unwrap_or((n as f64 / 4.0).sqrt()), p.radius, seed)
            }
            Family::ErRandom => er_random(n, p.p, seed),
            Family::RegularBipartite => regular_bipartite(n / 2, p.d, seed),
            Family::HardUnion => {
                if p.part_size == 0 {
                    return Err(Error::invalid("part size must be positive"));
                }
                hard_union(n / p.part_size, p.part_size, seed)
            }
        }
    }
}
