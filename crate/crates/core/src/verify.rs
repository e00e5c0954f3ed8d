//! Brute-force oracles and structural checkers.
//!
//! Everything here is exact and exponential in something small (the
//! neighborhood size or `n`); these are the ground truth the tests and the
//! acceptance suite measure the algorithms against.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{AdjacencyArray, Graph};
use crate::mis::VertexSet;
use crate::mm::Matching;

/// Largest neighborhood the exact β search accepts by default.
pub const EXACT_BETA_MAX_DEGREE: usize = 25;

/// Largest `n` for the exhaustive subset oracles.
pub const EXHAUSTIVE_MAX_N: usize = 20;

pub fn is_independent_set(g: &Graph, s: &VertexSet) -> bool {
    s.members()
        .iter()
        .all(|&v| g.neighbors_of(v).all(|u| !s.contains(u)))
}

pub fn is_maximal_independent_set(g: &Graph, s: &VertexSet) -> bool {
    s.universe() == g.n()
        && is_independent_set(g, s)
        && (0..g.n()).all(|v| s.contains(v) || g.neighbors_of(v).any(|u| s.contains(u)))
}

/// Full scan: matching edges disjoint and present in `g`, and no edge of `g`
/// has both endpoints unmatched.
pub fn is_maximal_matching<G>(g: &G, m: &Matching) -> bool
where
    G: AdjacencyArray + ?Sized,
{
    let n = g.vertex_count();
    if m.vertex_count() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &(u, v) in m.edges() {
        if u >= n || v >= n || u == v || seen[u] || seen[v] {
            return false;
        }
        seen[u] = true;
        seen[v] = true;
        if m.mate(u) != Some(v) || m.mate(v) != Some(u) {
            return false;
        }
        if !(0..g.raw_degree(u)).any(|i| g.raw_neighbor(u, i) == v) {
            return false;
        }
    }
    (0..n).all(|u| {
        m.is_matched(u) || (0..g.raw_degree(u)).all(|i| m.is_matched(g.raw_neighbor(u, i)))
    })
}

/// Adjacency as bitmasks over `vertices` (at most 64), indexed by position.
fn local_masks(g: &Graph, vertices: &[usize]) -> Vec<u64> {
    debug_assert!(vertices.len() <= 64);
    vertices
        .iter()
        .map(|&a| {
            vertices
                .iter()
                .enumerate()
                .filter(|&(_, &b)| g.has_edge(a, b))
                .fold(0u64, |acc, (j, _)| acc | (1 << j))
        })
        .collect()
}

/// Upper bound on the independence number of `cand`: the size of a greedy
/// clique cover.
fn clique_cover_bound(adj: &[u64], mut cand: u64) -> u32 {
    let mut cliques = 0;
    while cand != 0 {
        let u = cand.trailing_zeros() as usize;
        let mut clique = 1u64 << u;
        let mut ext = cand & adj[u];
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            clique |= 1 << w;
            ext &= adj[w];
        }
        cand &= !clique;
        cliques += 1;
    }
    cliques
}

fn mis_branch(adj: &[u64], mut cand: u64, mut size: u32, best: &mut u32) {
    // vertices isolated within cand join unconditionally
    loop {
        let isolated = bits(cand).find(|&v| adj[v] & cand == 0);
        match isolated {
            Some(v) => {
                cand &= !(1 << v);
                size += 1;
            }
            None => break,
        }
    }
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + clique_cover_bound(adj, cand) <= *best {
        return;
    }
    let v = bits(cand)
        .max_by_key(|&v| (adj[v] & cand).count_ones())
        .expect("cand nonempty");
    mis_branch(adj, cand & !adj[v] & !(1 << v), size + 1, best);
    mis_branch(adj, cand & !(1 << v), size, best);
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            b
        })
    })
}

/// Exact independence number of the subgraph induced on `vertices` (≤ 64),
/// by branch and bound.
pub fn induced_independence_number(g: &Graph, vertices: &[usize]) -> usize {
    if vertices.is_empty() {
        return 0;
    }
    let adj = local_masks(g, vertices);
    let all = if vertices.len() == 64 {
        u64::MAX
    } else {
        (1u64 << vertices.len()) - 1
    };
    let mut best = 0;
    mis_branch(&adj, all, 0, &mut best);
    best as usize
}

/// Exact neighborhood independence number β(g): the largest independent set
/// inside a single neighborhood. Zero for edgeless graphs.
pub fn neighborhood_independence(g: &Graph) -> Result<usize> {
    neighborhood_independence_with_limit(g, EXACT_BETA_MAX_DEGREE)
}

pub fn neighborhood_independence_with_limit(g: &Graph, max_degree: usize) -> Result<usize> {
    let limit = max_degree.min(64);
    let delta = g.max_degree();
    if delta > limit {
        return Err(Error::Capacity(format!(
            "exact neighborhood independence needs max degree <= {limit}, graph has {delta}; \
             use greedy_beta_lower_bound for a scalable lower estimate"
        )));
    }
    let mut beta = 0;
    for v in 0..g.n() {
        let nbrs: Vec<usize> = g.neighbors_of(v).collect();
        // an upper bound of the current best cannot improve it
        if nbrs.len() <= beta {
            continue;
        }
        beta = beta.max(induced_independence_number(g, &nbrs));
    }
    Ok(beta)
}

/// Max over vertices of a greedy MIS inside the neighborhood. Never exceeds β.
pub fn greedy_beta_lower_bound(g: &Graph) -> usize {
    (0..g.n())
        .map(|v| {
            let mut chosen: Vec<usize> = Vec::new();
            for u in g.neighbors_of(v) {
                if chosen.iter().all(|&w| !g.has_edge(u, w)) {
                    chosen.push(u);
                }
            }
            chosen.len()
        })
        .max()
        .unwrap_or(0)
}

fn adjacency_masks(g: &Graph) -> Result<Vec<u64>> {
    if g.n() > EXHAUSTIVE_MAX_N {
        return Err(Error::Capacity(format!(
            "exhaustive search limited to n <= {EXHAUSTIVE_MAX_N}, graph has {}",
            g.n()
        )));
    }
    Ok((0..g.n())
        .map(|v| g.neighbors_of(v).fold(0u64, |acc, u| acc | (1 << u)))
        .collect())
}

/// All independent sets of `g` (including the empty set) as bitmasks.
pub fn independent_sets(g: &Graph) -> Result<Vec<u64>> {
    let adj = adjacency_masks(g)?;
    Ok((0u64..1 << g.n())
        .filter(|&s| bits(s).all(|v| adj[v] & s == 0))
        .collect())
}

/// α(g) by exhaustive enumeration of vertex subsets.
pub fn max_independent_set_size(g: &Graph) -> Result<usize> {
    Ok(independent_sets(g)?
        .into_iter()
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// Minimum vertex cover size by exhaustive enumeration.
pub fn min_vertex_cover_size(g: &Graph) -> Result<usize> {
    let adj = adjacency_masks(g)?;
    Ok((0u64..1 << g.n())
        .filter(|&c| (0..g.n()).all(|v| c & (1 << v) != 0 || adj[v] & !c == 0))
        .map(|c| c.count_ones() as usize)
        .min()
        .unwrap_or(0))
}

/// Neighbors of `v` inside and outside `u`.
fn split_degree(g: &Graph, u: &VertexSet, v: usize) -> (u64, u64) {
    let inside = g.neighbors_of(v).filter(|&w| u.contains(w)).count() as u64;
    (inside, g.neighbor_slice(v).len() as u64 - inside)
}

/// `v ∈ U` is δ-good iff `deg_U(v) ≥ δ·deg_{V∖U}(v)` or `deg(v) < 1/δ`.
pub fn is_delta_good(g: &Graph, u: &VertexSet, v: usize, delta: Ratio<u64>) -> bool {
    let (inside, outside) = split_degree(g, u, v);
    let (p, q) = (*delta.numer() as u128, *delta.denom() as u128);
    let deg = (inside + outside) as u128;
    inside as u128 * q >= p * outside as u128 || deg * p < q
}

/// Fraction of members of `u` that are δ-good.
pub fn delta_good_fraction(g: &Graph, u: &VertexSet, delta: Ratio<u64>) -> Result<Ratio<u64>> {
    if u.is_empty() {
        return Err(Error::invalid("delta_good_fraction needs a nonempty U"));
    }
    let good = u
        .members()
        .iter()
        .filter(|&&v| is_delta_good(g, u, v, delta))
        .count();
    Ok(Ratio::new(good as u64, u.len() as u64))
}

/// Members of `U` that are not δ-good.
pub fn bad_vertices(g: &Graph, u: &VertexSet, delta: Ratio<u64>) -> VertexSet {
    VertexSet::from_members(
        g.n(),
        u.members()
            .iter()
            .copied()
            .filter(|&v| !is_delta_good(g, u, v, delta)),
    )
}

/// Members of `b` ranked ahead of all their `b`-neighbors by a uniformly
/// random permutation. Always independent.
pub fn random_permutation_independent_set<R>(g: &Graph, b: &VertexSet, rng: &mut R) -> VertexSet
where
    R: Rng + ?Sized,
{
    let mut order = b.members().to_vec();
    order.shuffle(rng);
    let mut rank = vec![usize::MAX; g.n()];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    VertexSet::from_members(
        g.n(),
        order.iter().copied().filter(|&v| {
            g.neighbors_of(v)
                .all(|w| rank[w] > rank[v] || rank[w] == usize::MAX)
        }),
    )
}

/// Number of edges from `i` to vertices outside `u`.
pub fn external_edges(g: &Graph, i: &VertexSet, u: &VertexSet) -> u64 {
    i.members()
        .iter()
        .map(|&v| g.neighbors_of(v).filter(|&w| !u.contains(w)).count() as u64)
        .sum()
}

pub fn vertex_cover_from_mm(m: &Matching) -> VertexSet {
    VertexSet::from_members(
        m.vertex_count(),
        m.edges().iter().flat_map(|&(u, v)| [u, v]),
    )
}

pub fn is_vertex_cover(g: &Graph, c: &VertexSet) -> bool {
    g.edges().all(|(u, v)| c.contains(u) || c.contains(v))
}

/// Exact `Σ_v 1/(deg v + 1)`.
pub fn caro_wei_sum(g: &Graph) -> BigRational {
    let mut by_degree = vec![0u64; g.n() + 1];
    for v in 0..g.n() {
        by_degree[g.raw_degree(v)] += 1;
    }
    by_degree
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(d, &c)| BigRational::new(BigInt::from(c), BigInt::from(d + 1)))
        .fold(BigRational::from_integer(BigInt::from(0)), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, edges.iter().copied()).unwrap()
    }

    fn clique(n: usize) -> Graph {
        let e: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        g(n, &e)
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        g(n, &e)
    }

    fn star(leaves: usize) -> Graph {
        let e: Vec<_> = (1..=leaves).map(|l| (0, l)).collect();
        g(leaves + 1, &e)
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        g(10, &e)
    }

    // β by enumerating every subset of every neighborhood
    fn brute_beta(gr: &Graph) -> usize {
        (0..gr.n())
            .map(|v| {
                let nb: Vec<usize> = gr.neighbors_of(v).collect();
                (0u32..1 << nb.len())
                    .filter(|&s| {
                        (0..nb.len()).all(|i| {
                            s & (1 << i) == 0
                                || (i + 1..nb.len())
                                    .all(|j| s & (1 << j) == 0 || !gr.has_edge(nb[i], nb[j]))
                        })
                    })
                    .map(|s| s.count_ones() as usize)
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn mis_checker_examples() {
        let p3 = g(3, &[(0, 1), (1, 2)]);
        assert!(is_maximal_independent_set(
            &p3,
            &VertexSet::from_members(3, [0, 2])
        ));
        assert!(!is_maximal_independent_set(
            &p3,
            &VertexSet::from_members(3, [0])
        ));
        let edge = g(2, &[(0, 1)]);
        assert!(!is_maximal_independent_set(
            &edge,
            &VertexSet::from_members(2, [0, 1])
        ));
    }

    #[test]
    fn matching_checker_examples() {
        assert!(is_maximal_matching(&Graph::empty(3), &Matching::new(3)));
        let k2 = g(2, &[(0, 1)]);
        assert!(!is_maximal_matching(&k2, &Matching::new(2)));
        let p3 = g(3, &[(0, 1), (1, 2)]);
        assert!(is_maximal_matching(
            &p3,
            &Matching::from_edges(3, [(0, 1)]).unwrap()
        ));
        // non-edge
        assert!(!is_maximal_matching(
            &p3,
            &Matching::from_edges(3, [(0, 2)]).unwrap()
        ));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(neighborhood_independence(&clique(6)).unwrap(), 1);
        assert_eq!(neighborhood_independence(&star(5)).unwrap(), 5);
        assert_eq!(neighborhood_independence(&cycle(4)).unwrap(), 2);
        assert_eq!(neighborhood_independence(&Graph::empty(4)).unwrap(), 0);
        assert_eq!(neighborhood_independence(&petersen()).unwrap(), 3);
    }

    #[test]
    fn beta_capacity_error() {
        let e = neighborhood_independence(&star(30)).unwrap_err();
        assert!(matches!(e, Error::Capacity(ref m) if m.contains("greedy_beta_lower_bound")));
        assert_eq!(
            neighborhood_independence_with_limit(&star(30), 40).unwrap(),
            30
        );
    }

    #[test]
    fn branch_and_bound_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.random_range(1..=12);
            let p: f64 = rng.random_range(0.1..0.9);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.random_bool(p))
                .collect();
            let gr = g(n, &edges);
            let exact = neighborhood_independence(&gr).unwrap();
            assert_eq!(exact, brute_beta(&gr));
            assert!(greedy_beta_lower_bound(&gr) <= exact);
            let all: Vec<usize> = (0..n).collect();
            assert_eq!(
                induced_independence_number(&gr, &all),
                max_independent_set_size(&gr).unwrap()
            );
        }
    }

    #[test]
    fn greedy_lower_bound_examples() {
        assert_eq!(greedy_beta_lower_bound(&clique(5)), 1);
        assert_eq!(greedy_beta_lower_bound(&star(7)), 7);
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(max_independent_set_size(&cycle(5)).unwrap(), 2);
        assert_eq!(max_independent_set_size(&Graph::empty(6)).unwrap(), 6);
        assert_eq!(max_independent_set_size(&petersen()).unwrap(), 4);
        assert!(max_independent_set_size(&Graph::empty(21)).is_err());
    }

    #[test]
    fn min_cover_is_complement_of_alpha() {
        for gr in [cycle(5), petersen(), star(4), clique(5), Graph::empty(3)] {
            assert_eq!(
                min_vertex_cover_size(&gr).unwrap(),
                gr.n() - max_independent_set_size(&gr).unwrap()
            );
        }
    }

    #[test]
    fn delta_good_examples() {
        let gr = cycle(6);
        let all = VertexSet::from_members(6, 0..6);
        assert_eq!(
            delta_good_fraction(&gr, &all, Ratio::new(1, 2)).unwrap(),
            Ratio::from_integer(1)
        );
        // lone vertex with degree 2 < 1/δ = 3
        let lone = VertexSet::from_members(6, [0]);
        assert_eq!(
            delta_good_fraction(&gr, &lone, Ratio::new(1, 3)).unwrap(),
            Ratio::from_integer(1)
        );
        // same vertex, δ = 1/2: deg 2 ≥ 2, no internal neighbors
        assert_eq!(
            delta_good_fraction(&gr, &lone, Ratio::new(1, 2)).unwrap(),
            Ratio::from_integer(0)
        );
        assert!(delta_good_fraction(&gr, &VertexSet::new(6), Ratio::new(1, 2)).is_err());
    }

    #[test]
    fn permutation_independent_set_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let gr = cycle(6);
        let indep = VertexSet::from_members(6, [0, 2, 4]);
        let out = random_permutation_independent_set(&gr, &indep, &mut rng);
        assert_eq!(out.sorted_members(), vec![0, 2, 4]);

        let k = clique(5);
        let all = VertexSet::from_members(5, 0..5);
        assert_eq!(
            random_permutation_independent_set(&k, &all, &mut rng).len(),
            1
        );
    }

    #[test]
    fn permutation_independent_set_mean_on_c4() {
        // each C4 vertex survives with probability 1/(2+1)
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let c4 = cycle(4);
        let b = VertexSet::from_members(4, 0..4);
        let trials = 100_000;
        let total: usize = (0..trials)
            .map(|_| {
                let s = random_permutation_independent_set(&c4, &b, &mut rng);
                assert!(is_independent_set(&c4, &s));
                s.len()
            })
            .sum();
        let mean = total as f64 / trials as f64;
        assert!((mean - 4.0 / 3.0).abs() <= 0.02, "mean {mean}");
    }

    #[test]
    fn cover_from_matching() {
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let m = Matching::from_edges(3, [(0, 1)]).unwrap();
        let c = vertex_cover_from_mm(&m);
        assert_eq!(c.sorted_members(), vec![0, 1]);
        assert!(is_vertex_cover(&p3, &c));
        assert!(vertex_cover_from_mm(&Matching::new(0)).is_empty());
    }

    #[test]
    fn caro_wei_sum_examples() {
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        assert_eq!(caro_wei_sum(&Graph::empty(7)), r(7, 1));
        assert_eq!(caro_wei_sum(&clique(6)), r(1, 1));
        assert_eq!(caro_wei_sum(&cycle(5)), r(5, 3));
    }
}
