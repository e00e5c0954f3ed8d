//! Modified randomized greedy maximal matching.
//!
//! `U` starts as all vertices. Each iteration samples `u` uniformly from `U`
//! and compares `deg(u)` against the threshold `τ(U) = 4nβ/|U|`:
//!
//! * below it, scan `N(u)`, match `u` to a uniform neighbor still in `U`, or
//!   drop `u` when there is none;
//! * otherwise probe one uniform neighbor `v` and match iff `v ∈ U`.
//!
//! The loop ends when `U` is empty, at which point the matching is maximal.
//! With `β ≥ β(G)` the expected number of iterations is at most
//! `16·β·n·ln n`.

use num_rational::Ratio;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{AdjacencyArray, ProbeCounter};
use crate::sample_set::SampleSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn new(n: usize) -> Self {
        Matching {
            edges: Vec::new(),
            mate: vec![None; n],
        }
    }

    /// Builds a matching from edges. Fails on out-of-range ids, loops, or
    /// edges sharing an endpoint. Edge membership in a graph is not checked.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut m = Matching::new(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if m.mate[u].is_some() || m.mate[v].is_some() {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) reuses a matched vertex"
                )));
            }
            m.push(u, v);
        }
        Ok(m)
    }

    fn push(&mut self, u: usize, v: usize) {
        debug_assert!(self.mate[u].is_none() && self.mate[v].is_none());
        self.mate[u] = Some(v);
        self.mate[v] = Some(u);
        self.edges.push((u, v));
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate.get(v).copied().flatten()
    }

    pub fn is_matched(&self, v: usize) -> bool {
        self.mate(v).is_some()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.mate.len()
    }

    pub fn unmatched_count(&self) -> usize {
        self.mate.iter().filter(|m| m.is_none()).count()
    }

    /// Edges normalized to `(min, max)` and sorted.
    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        e.sort_unstable();
        e
    }
}

/// One capped run of the doubling wrapper.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GuessRound {
    pub beta: usize,
    pub iterations: u64,
    /// `None` for the final, uncapped round.
    pub cap: Option<u64>,
    pub completed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MmStats {
    /// While-loop passes. Summed over rounds for the doubling wrapper.
    pub iterations: u64,
    /// Neighbors scanned in the low-degree branch.
    pub low_degree_scans: u64,
    /// Iterations that removed at least one vertex from `U` (last round only
    /// for the doubling wrapper).
    pub successes: u64,
    pub guess_rounds: Vec<GuessRound>,
}

#[derive(Debug, Clone)]
pub struct MmOutcome {
    pub matching: Matching,
    pub stats: MmStats,
    /// True iff `U` emptied, i.e. the matching is maximal.
    pub completed: bool,
}

/// The threshold `4·n·β/|U|` as an exact rational.
pub fn tau(n: usize, beta: usize, u_size: usize) -> Result<Ratio<u128>> {
    if u_size == 0 {
        return Err(Error::invalid("threshold undefined for empty U"));
    }
    Ok(Ratio::new(4 * n as u128 * beta as u128, u_size as u128))
}

/// `deg < 4nβ/|U|`, decided by cross-multiplication.
#[inline]
pub fn below_threshold(degree: usize, n: usize, beta: usize, u_size: usize) -> bool {
    (degree as u128) * (u_size as u128) < 4 * (n as u128) * (beta as u128)
}

/// Runs the algorithm with the given neighborhood-independence bound.
///
/// `iteration_cap` stops the loop after that many iterations; the outcome is
/// then marked incomplete if `U` is still nonempty.
pub fn randomized_greedy_mm<G, R>(
    g: &G,
    beta: usize,
    rng: &mut R,
    pc: &mut ProbeCounter,
    iteration_cap: Option<u64>,
) -> Result<MmOutcome>
where
    G: AdjacencyArray + ?Sized,
    R: Rng + ?Sized,
{
    if beta == 0 {
        return Err(Error::invalid("beta must be at least 1"));
    }
    let n = g.vertex_count();
    let mut unmatched = SampleSet::new_full(n);
    let mut matching = Matching::new(n);
    let mut stats = MmStats::default();
    let mut candidates = Vec::new();

    while !unmatched.is_empty() {
        if iteration_cap.is_some_and(|cap| stats.iterations >= cap) {
            break;
        }
        stats.iterations += 1;
        let u = unmatched.sample(rng)?;
        let deg = g.degree(u, pc)?;

        if below_threshold(deg, n, beta, unmatched.len()) {
            candidates.clear();
            for i in 0..deg {
                let w = g.neighbor(u, i, pc)?;
                if unmatched.contains(w)? {
                    candidates.push(w);
                }
            }
            stats.low_degree_scans += deg as u64;
            unmatched.remove(u)?;
            if !candidates.is_empty() {
                let v = candidates[rng.random_range(0..candidates.len())];
                unmatched.remove(v)?;
                matching.push(u, v);
            }
            stats.successes += 1;
        } else {
            let v = g.neighbor(u, rng.random_range(0..deg), pc)?;
            if unmatched.contains(v)? {
                unmatched.remove(u)?;
                unmatched.remove(v)?;
                matching.push(u, v);
                stats.successes += 1;
            }
        }
    }

    Ok(MmOutcome {
        completed: unmatched.is_empty(),
        matching,
        stats,
    })
}

/// Iteration budget for one guess: `⌈c·n·ln(n)·β⌉`, at least 1.
pub fn round_cap(n: usize, beta: usize, cap_constant: u64) -> u64 {
    let n_f = n as f64;
    let raw = cap_constant as f64 * n_f * n_f.max(1.0).ln() * beta as f64;
    (raw.ceil() as u64).max(1)
}

pub const DEFAULT_CAP_CONSTANT: u64 = 64;

/// Runs without knowing `β(G)`: guesses `β = 2, 4, 8, …`, restarting from
/// scratch whenever a round exhausts its [`round_cap`]. The first guess
/// `≥ n` runs uncapped, so the result is always a maximal matching.
pub fn mm_unknown_beta<G, R>(
    g: &G,
    rng: &mut R,
    pc: &mut ProbeCounter,
    cap_constant: u64,
) -> Result<MmOutcome>
where
    G: AdjacencyArray + ?Sized,
    R: Rng + ?Sized,
{
    let n = g.vertex_count();
    let mut total = MmStats::default();
    let mut beta = 2usize;
    loop {
        let cap = (beta < n).then(|| round_cap(n, beta, cap_constant));
        let run = randomized_greedy_mm(g, beta, rng, pc, cap)?;
        total.iterations += run.stats.iterations;
        total.low_degree_scans += run.stats.low_degree_scans;
        total.successes = run.stats.successes;
        total.guess_rounds.push(GuessRound {
            beta,
            iterations: run.stats.iterations,
            cap,
            completed: run.completed,
        });
        if run.completed {
            return Ok(MmOutcome {
                matching: run.matching,
                stats: total,
                completed: true,
            });
        }
        if cap.is_none() {
            return Err(Error::Invariant(
                "uncapped round ended with U nonempty".into(),
            ));
        }
        beta *= 2;
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::graph::Graph;

    fn clique(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edge_list(n, edges).unwrap()
    }

    fn is_maximal(g: &Graph, m: &Matching) -> bool {
        m.edges().iter().all(|&(u, v)| g.has_edge(u, v))
            && g.edges().all(|(u, v)| m.is_matched(u) || m.is_matched(v))
    }

    fn run(g: &Graph, beta: usize, seed: u64) -> MmOutcome {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pc = ProbeCounter::new();
        randomized_greedy_mm(g, beta, &mut rng, &mut pc, None).unwrap()
    }

    #[test]
    fn edgeless_drops_every_vertex() {
        let out = run(&Graph::empty(7), 1, 3);
        assert!(out.completed && out.matching.is_empty());
        assert_eq!(out.stats.iterations, 7);
        assert_eq!(out.stats.successes, 7);
        assert_eq!(out.stats.low_degree_scans, 0);
    }

    #[test]
    fn single_edge_one_iteration() {
        let g = Graph::from_edge_list(2, [(0, 1)]).unwrap();
        for seed in 0..20 {
            let out = run(&g, 1, seed);
            assert_eq!(out.matching.sorted_edges(), vec![(0, 1)]);
            assert_eq!(out.stats.iterations, 1);
        }
    }

    #[test]
    fn k4_is_always_perfect() {
        let g = clique(4);
        for seed in 0..500 {
            let out = run(&g, 1, seed);
            assert_eq!(out.matching.len(), 2, "seed {seed}");
            assert_eq!(out.matching.unmatched_count(), 0);
        }
    }

    #[test]
    fn zero_beta_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut pc = ProbeCounter::new();
        assert!(randomized_greedy_mm(&clique(3), 0, &mut rng, &mut pc, None).is_err());
    }

    #[test]
    fn cap_stops_early() {
        let g = clique(50);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut pc = ProbeCounter::new();
        let out = randomized_greedy_mm(&g, 1, &mut rng, &mut pc, Some(3)).unwrap();
        assert!(!out.completed);
        assert_eq!(out.stats.iterations, 3);
    }

    #[test]
    fn threshold_values() {
        assert_eq!(tau(100, 2, 100).unwrap(), Ratio::from_integer(8));
        assert_eq!(tau(100, 2, 1).unwrap(), Ratio::from_integer(800));
        assert_eq!(tau(10, 3, 4).unwrap(), Ratio::new(30, 1));
        assert!(tau(10, 1, 0).is_err());
        // τ = n when |U| = n and β = n/4: every degree is below it
        let n = 40;
        assert!((0..n).all(|d| below_threshold(d, n, n / 4, n)));
        assert!(!below_threshold(8, 100, 2, 100));
        assert!(below_threshold(7, 100, 2, 100));
    }

    #[test]
    fn reproducible_under_seed() {
        let g = clique(8);
        let a = run(&g, 1, 42);
        let b = run(&g, 1, 42);
        assert_eq!(a.matching, b.matching);
        assert_eq!(a.stats, b.stats);
    }

    #[test]
    fn unknown_beta_small_cases() {
        let g = Graph::from_edge_list(2, [(0, 1)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut pc = ProbeCounter::new();
        let out = mm_unknown_beta(&g, &mut rng, &mut pc, DEFAULT_CAP_CONSTANT).unwrap();
        assert_eq!(out.stats.guess_rounds.len(), 1);
        assert_eq!(out.stats.guess_rounds[0].beta, 2);
        assert!(out.completed);

        let g = Graph::empty(0);
        let out = mm_unknown_beta(&g, &mut rng, &mut pc, DEFAULT_CAP_CONSTANT).unwrap();
        assert!(out.completed && out.matching.is_empty());
    }

    #[test]
    fn unknown_beta_doubles_until_done() {
        // with cap constant 0 every capped round stops after one iteration,
        // forcing the wrapper up to the uncapped guess ≥ n
        let g = clique(20);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut pc = ProbeCounter::new();
        let out = mm_unknown_beta(&g, &mut rng, &mut pc, 0).unwrap();
        let betas: Vec<_> = out.stats.guess_rounds.iter().map(|r| r.beta).collect();
        assert_eq!(betas, vec![2, 4, 8, 16, 32]);
        assert!(out.stats.guess_rounds.last().unwrap().cap.is_none());
        assert!(is_maximal(&g, &out.matching));
        let summed: u64 = out.stats.guess_rounds.iter().map(|r| r.iterations).sum();
        assert_eq!(summed, out.stats.iterations);
    }

    #[test]
    fn matching_from_edges_validation() {
        assert!(Matching::from_edges(4, [(0, 1), (2, 3)]).is_ok());
        assert!(Matching::from_edges(4, [(0, 1), (1, 2)]).is_err());
        assert!(Matching::from_edges(4, [(0, 4)]).is_err());
        assert!(Matching::from_edges(4, [(2, 2)]).is_err());
    }
}
