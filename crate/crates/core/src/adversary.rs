//! Adaptive adversary against deterministic maximal-matching algorithms.
//!
//! The hidden input is `K_n` minus a perfect matching, `n = 10k`. Vertices
//! `0..2k` are *dummies*, paired by the fixed non-edges `(2i, 2i+1)`; the other
//! `8k` are *core* vertices whose non-edge matching is decided lazily. An
//! algorithm learns the graph one adjacency-array entry at a time. A core
//! vertex still in `C_free` is answered with dummies for its first `2k`
//! queries; its `(2k+1)`-th query commits it and another free core vertex as a
//! non-edge pair (`C_used`), after which it is answered with core vertices.
//!
//! An algorithm using at most `2k²` queries leaves at least `6k` vertices in
//! `C_free`, and no edge inside `C_free` has been revealed, so any matching
//! edge it outputs there can be turned into a non-edge. The [`referee`] runs a
//! strategy against the adversary and searches for exactly that refutation.

use std::fmt;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::write_graph_to;

/// How the adversary resolves its arbitrary choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChoiceMode {
    /// Lowest available id.
    Deterministic,
    /// Uniform among the available ids, seeded.
    Random(u64),
}

/// Query access to an unknown member of the hard family.
///
/// Degrees are common knowledge (`n - 2`), as are the dummy set and its
/// non-edge matching; only neighbor probes cost queries.
pub trait QueryOracle {
    fn n(&self) -> usize;

    fn degree(&self, _v: usize) -> usize {
        self.n() - 2
    }

    fn dummy_count(&self) -> usize;

    /// Fixed non-edge partner of a dummy vertex.
    fn dummy_partner(&self, d: usize) -> Option<usize> {
        (d < self.dummy_count()).then_some(d ^ 1)
    }

    /// Entry `i` of `v`'s adjacency array. Entries already revealed are free;
    /// each new entry is one query.
    fn neighbor(&mut self, v: usize, i: usize) -> Result<usize>;

    fn queries(&self) -> u64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Dummy,
    Free,
    Used,
}

#[derive(Debug, Clone)]
pub struct Adversary {
    k: usize,
    n: usize,
    side: Vec<Side>,
    partner: Vec<Option<usize>>,
    mc_committed: Vec<(usize, usize)>,
    free_count: usize,
    revealed: Vec<Vec<usize>>,
    // revealed[v] as a membership table
    seen: Vec<Vec<bool>>,
    transcript: Vec<(usize, usize)>,
    rng: Option<ChaCha8Rng>,
}

impl Adversary {
    pub fn new(k: usize, mode: ChoiceMode) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("adversary needs k >= 1"));
        }
        let n = 10 * k;
        let dummies = 2 * k;
        let side = (0..n)
            .map(|v| if v < dummies { Side::Dummy } else { Side::Free })
            .collect();
        let partner = (0..n).map(|v| (v < dummies).then_some(v ^ 1)).collect();
        Ok(Adversary {
            k,
            n,
            side,
            partner,
            mc_committed: Vec::new(),
            free_count: n - dummies,
            revealed: vec![Vec::new(); n],
            seen: vec![vec![false; n]; n],
            transcript: Vec::new(),
            rng: match mode {
                ChoiceMode::Deterministic => None,
                ChoiceMode::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            },
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `2k²`, the query budget under which refutation is guaranteed.
    pub fn budget(&self) -> u64 {
        2 * (self.k as u64).pow(2)
    }

    pub fn dummies(&self) -> std::ops::Range<usize> {
        0..2 * self.k
    }

    /// Fixed dummy non-edges `(2i, 2i+1)`.
    pub fn md(&self) -> Vec<(usize, usize)> {
        (0..self.k).map(|i| (2 * i, 2 * i + 1)).collect()
    }

    pub fn mc_committed(&self) -> &[(usize, usize)] {
        &self.mc_committed
    }

    pub fn is_free(&self, v: usize) -> bool {
        self.side.get(v) == Some(&Side::Free)
    }

    pub fn is_used(&self, v: usize) -> bool {
        self.side.get(v) == Some(&Side::Used)
    }

    pub fn c_free(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.is_free(v)).collect()
    }

    pub fn c_used(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.is_used(v)).collect()
    }

    /// Committed non-edge partner, if any (always for dummies).
    pub fn committed_partner(&self, v: usize) -> Option<usize> {
        self.partner.get(v).copied().flatten()
    }

    pub fn query_count(&self, v: usize) -> usize {
        self.revealed[v].len()
    }

    pub fn revealed(&self, v: usize) -> &[usize] {
        &self.revealed[v]
    }

    pub fn transcript(&self) -> &[(usize, usize)] {
        &self.transcript
    }

    pub fn total_queries(&self) -> u64 {
        self.transcript.len() as u64
    }

    fn choose(&mut self, candidates: &[usize]) -> Option<usize> {
        match self.rng.as_mut() {
            None => candidates.first().copied(),
            Some(rng) => candidates.choose(rng).copied(),
        }
    }

    /// Answers one new query `Q(u)`: the next entry of `u`'s adjacency array.
    pub fn answer_query(&mut self, u: usize) -> Result<usize> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: u,
                n: self.n,
            });
        }
        if self.revealed[u].len() >= self.n - 2 {
            return Err(Error::invalid(format!(
                "vertex {u} already queried n-2 = {} times",
                self.n - 2
            )));
        }
        let two_k = 2 * self.k;
        if self.side[u] == Side::Free && self.revealed[u].len() == two_k {
            self.commit_pair(u)?;
        }
        let unseen = |x: &usize| *x != u && !self.seen[u][*x];
        let candidates: Vec<usize> = match self.side[u] {
            Side::Dummy => (0..self.n)
                .filter(unseen)
                .filter(|&x| Some(x) != self.partner[u])
                .collect(),
            Side::Free => self.dummies().filter(unseen).collect(),
            Side::Used => {
                let core: Vec<usize> = (two_k..self.n)
                    .filter(unseen)
                    .filter(|&x| Some(x) != self.partner[u])
                    .collect();
                if core.is_empty() {
                    // partners chosen as w' may still hold unrevealed dummies
                    self.dummies().filter(unseen).collect()
                } else {
                    core
                }
            }
        };
        let answer = self
            .choose(&candidates)
            .ok_or_else(|| Error::Invariant(format!("no admissible answer for Q({u})")))?;
        self.seen[u][answer] = true;
        self.revealed[u].push(answer);
        self.transcript.push((u, answer));
        Ok(answer)
    }

    fn commit_pair(&mut self, w: usize) -> Result<()> {
        let pool: Vec<usize> = (2 * self.k..self.n)
            .filter(|&x| x != w && self.side[x] == Side::Free)
            .collect();
        let w2 = self.choose(&pool).ok_or_else(|| {
            Error::Invariant(format!(
                "C_free exhausted when committing a partner for {w}"
            ))
        })?;
        self.side[w] = Side::Used;
        self.side[w2] = Side::Used;
        self.partner[w] = Some(w2);
        self.partner[w2] = Some(w);
        self.free_count -= 2;
        self.mc_committed.push((w, w2));
        Ok(())
    }

    /// Non-edge partner of every vertex after pairing the remaining free core
    /// vertices. `forced` pairs (both ends free, disjoint) are used first, the
    /// rest are paired by ascending id.
    pub fn completion(&self, forced: &[(usize, usize)]) -> Result<Vec<usize>> {
        let mut partner = self.partner.clone();
        for &(a, b) in forced {
            if a == b || !self.is_free(a) || !self.is_free(b) {
                return Err(Error::invalid(format!(
                    "forced pair ({a}, {b}) must join two distinct free core vertices"
                )));
            }
            if partner[a].is_some() || partner[b].is_some() {
                return Err(Error::invalid(format!(
                    "forced pairs overlap at ({a}, {b})"
                )));
            }
            partner[a] = Some(b);
            partner[b] = Some(a);
        }
        let rest: Vec<usize> = (0..self.n).filter(|&v| partner[v].is_none()).collect();
        for pair in rest.chunks(2) {
            let [a, b] = pair else {
                return Err(Error::Invariant("odd number of unpaired vertices".into()));
            };
            partner[*a] = Some(*b);
            partner[*b] = Some(*a);
        }
        Ok(partner
            .into_iter()
            .map(|p| p.expect("all paired"))
            .collect())
    }

    /// The graph in the family whose adjacency arrays begin with every answer
    /// given so far, in order, followed by the unrevealed neighbors ascending.
    pub fn finalize_with(&self, forced: &[(usize, usize)]) -> Result<Graph> {
        let partner = self.completion(forced)?;
        let lists: Vec<Vec<usize>> = (0..self.n)
            .map(|v| {
                let mut list = self.revealed[v].clone();
                list.extend((0..self.n).filter(|&x| x != v && x != partner[v] && !self.seen[v][x]));
                list
            })
            .collect();
        Graph::from_adjacency_lists(&lists)
    }

    pub fn finalize_consistent_graph(&self) -> Result<Graph> {
        self.finalize_with(&[])
    }

    /// Searches for a completion on which `claimed` is not a maximal matching.
    pub fn refute(&self, claimed: &[(usize, usize)]) -> Result<Option<Refutation>> {
        let n = self.n;
        let mut matched = vec![false; n];
        for &(u, v) in claimed {
            if u >= n || v >= n || u == v || matched[u] || matched[v] {
                return self.refutation(RefutationKind::NotAMatching((u, v)), &[]);
            }
            matched[u] = true;
            matched[v] = true;
        }
        for &(u, v) in claimed {
            if self.partner[u] == Some(v) {
                return self.refutation(RefutationKind::CommittedNonEdge((u, v)), &[]);
            }
        }
        if let Some(&(u, v)) = claimed
            .iter()
            .find(|&&(u, v)| self.is_free(u) && self.is_free(v))
        {
            return self.refutation(RefutationKind::FreeEdgeMadeNonEdge((u, v)), &[(u, v)]);
        }
        // every claimed edge is now an edge of every completion
        let unmatched: Vec<usize> = (0..n).filter(|&v| !matched[v]).collect();
        match unmatched.as_slice() {
            [] | [_] => Ok(None),
            [a, b] => {
                let (a, b) = (*a, *b);
                if self.partner[a] == Some(b) {
                    return Ok(None);
                }
                if self.is_free(a) && self.is_free(b) {
                    let other = self.c_free().into_iter().find(|&c| c != a && c != b);
                    return match other {
                        Some(c) => {
                            self.refutation(RefutationKind::UncoveredEdge((a, b)), &[(a, c)])
                        }
                        None => Ok(None),
                    };
                }
                self.refutation(RefutationKind::UncoveredEdge((a, b)), &[])
            }
            [a, b, c, ..] => {
                // at most one of the three pairs is a non-edge
                let (a, b, c) = (*a, *b, *c);
                let witness = self.finalize_consistent_graph()?;
                let pair = if witness.has_edge(a, b) {
                    (a, b)
                } else if witness.has_edge(a, c) {
                    (a, c)
                } else {
                    (b, c)
                };
                Ok(Some(Refutation {
                    kind: RefutationKind::UncoveredEdge(pair),
                    witness,
                }))
            }
        }
    }

    fn refutation(
        &self,
        kind: RefutationKind,
        forced: &[(usize, usize)],
    ) -> Result<Option<Refutation>> {
        let witness = self.finalize_with(forced)?;
        Ok(Some(Refutation { kind, witness }))
    }
}

impl QueryOracle for Adversary {
    fn n(&self) -> usize {
        self.n
    }

    fn dummy_count(&self) -> usize {
        2 * self.k
    }

    fn neighbor(&mut self, v: usize, i: usize) -> Result<usize> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        if i >= self.n - 2 {
            return Err(Error::NeighborIndexOutOfRange {
                vertex: v,
                index: i,
                degree: self.n - 2,
            });
        }
        while self.revealed[v].len() <= i {
            self.answer_query(v)?;
        }
        Ok(self.revealed[v][i])
    }

    fn queries(&self) -> u64 {
        self.total_queries()
    }
}

/// True iff probing `g` in transcript order yields the same answers.
pub fn replay_matches(g: &Graph, transcript: &[(usize, usize)]) -> bool {
    let mut next = vec![0usize; g.n()];
    transcript.iter().all(|&(u, a)| {
        let slice = g.neighbor_slice(u);
        let i = next[u];
        next[u] += 1;
        slice.get(i).map(|&x| x as usize) == Some(a)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefutationKind {
    /// Output reuses a vertex or names an invalid pair.
    NotAMatching((usize, usize)),
    /// Output contains a pair already fixed as a non-edge.
    CommittedNonEdge((usize, usize)),
    /// Output edge inside `C_free`; the witness makes it a non-edge.
    FreeEdgeMadeNonEdge((usize, usize)),
    /// Two unmatched vertices adjacent in the witness.
    UncoveredEdge((usize, usize)),
}

impl fmt::Display for RefutationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RefutationKind::NotAMatching((u, v)) => write!(f, "({u}, {v}) breaks the matching"),
            RefutationKind::CommittedNonEdge((u, v)) => {
                write!(f, "({u}, {v}) is a committed non-edge")
            }
            RefutationKind::FreeEdgeMadeNonEdge((u, v)) => {
                write!(f, "({u}, {v}) lies inside C_free and is made a non-edge")
            }
            RefutationKind::UncoveredEdge((u, v)) => {
                write!(f, "edge ({u}, {v}) has both endpoints unmatched")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Refutation {
    pub kind: RefutationKind,
    /// Family member consistent with the transcript on which the output fails.
    pub witness: Graph,
}

/// A deterministic maximal-matching algorithm that sees the input only
/// through a [`QueryOracle`].
pub trait MatchingStrategy {
    fn name(&self) -> &str;

    fn run(&mut self, oracle: &mut dyn QueryOracle) -> Result<Vec<(usize, usize)>>;
}

/// Textbook greedy: scan vertices in id order; an unmatched vertex probes its
/// adjacency array until it finds an unmatched neighbor.
#[derive(Debug, Default, Clone)]
pub struct GreedyStrategy;

impl MatchingStrategy for GreedyStrategy {
    fn name(&self) -> &str {
        "greedy"
    }

    fn run(&mut self, oracle: &mut dyn QueryOracle) -> Result<Vec<(usize, usize)>> {
        let n = oracle.n();
        let mut matched = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n {
            if matched[v] {
                continue;
            }
            for i in 0..oracle.degree(v) {
                let u = oracle.neighbor(v, i)?;
                if !matched[u] {
                    matched[u] = true;
                    matched[v] = true;
                    out.push((v, u));
                    break;
                }
            }
        }
        Ok(out)
    }
}

/// Reads every adjacency array in full, then matches greedily on the known
/// graph. Correct, with `n(n-2)` queries.
#[derive(Debug, Default, Clone)]
pub struct ExhaustiveStrategy;

impl MatchingStrategy for ExhaustiveStrategy {
    fn name(&self) -> &str {
        "exhaustive"
    }

    fn run(&mut self, oracle: &mut dyn QueryOracle) -> Result<Vec<(usize, usize)>> {
        let n = oracle.n();
        let mut lists = Vec::with_capacity(n);
        for v in 0..n {
            lists.push(
                (0..oracle.degree(v))
                    .map(|i| oracle.neighbor(v, i))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let mut matched = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n {
            if matched[v] {
                continue;
            }
            if let Some(&u) = lists[v].iter().find(|&&u| !matched[u]) {
                matched[u] = true;
                matched[v] = true;
                out.push((v, u));
            }
        }
        Ok(out)
    }
}

/// Outputs nothing and asks nothing.
#[derive(Debug, Default, Clone)]
pub struct EmptyStrategy;

impl MatchingStrategy for EmptyStrategy {
    fn name(&self) -> &str {
        "empty"
    }

    fn run(&mut self, _oracle: &mut dyn QueryOracle) -> Result<Vec<(usize, usize)>> {
        Ok(Vec::new())
    }
}

/// Greedy that stops probing at the `2k²` budget and pairs whatever is left
/// blindly, by id.
#[derive(Debug, Default, Clone)]
pub struct BudgetedGreedyStrategy;

impl MatchingStrategy for BudgetedGreedyStrategy {
    fn name(&self) -> &str {
        "budgeted-greedy"
    }

    fn run(&mut self, oracle: &mut dyn QueryOracle) -> Result<Vec<(usize, usize)>> {
        let n = oracle.n();
        let k = (n / 10) as u64;
        let budget = 2 * k * k;
        let mut matched = vec![false; n];
        let mut out = Vec::new();
        'scan: for v in 0..n {
            if matched[v] {
                continue;
            }
            for i in 0..oracle.degree(v) {
                if oracle.queries() >= budget {
                    break 'scan;
                }
                let u = oracle.neighbor(v, i)?;
                if !matched[u] {
                    matched[u] = true;
                    matched[v] = true;
                    out.push((v, u));
                    break;
                }
            }
        }
        let left: Vec<usize> = (0..n).filter(|&v| !matched[v]).collect();
        out.extend(left.chunks_exact(2).map(|p| (p[0], p[1])));
        Ok(out)
    }
}

/// Issues `queries` probes to uniformly random vertices with spare degree,
/// then outputs the revealed edges greedily. Drives the consistency fuzzing.
#[derive(Debug, Clone)]
pub struct RandomProbeStrategy {
    pub seed: u64,
    pub queries: usize,
}

impl MatchingStrategy for RandomProbeStrategy {
    fn name(&self) -> &str {
        "random-probe"
    }

    fn run(&mut self, oracle: &mut dyn QueryOracle) -> Result<Vec<(usize, usize)>> {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let n = oracle.n();
        let mut asked = vec![0usize; n];
        let mut revealed = Vec::new();
        for _ in 0..self.queries {
            let open: Vec<usize> = (0..n).filter(|&v| asked[v] < oracle.degree(v)).collect();
            let Some(&v) = open.choose(&mut rng) else {
                break;
            };
            // occasionally re-read an old entry, which must cost nothing
            if asked[v] > 0 && rng.random_bool(0.1) {
                oracle.neighbor(v, rng.random_range(0..asked[v]))?;
                continue;
            }
            let u = oracle.neighbor(v, asked[v])?;
            asked[v] += 1;
            revealed.push((v, u));
        }
        let mut matched = vec![false; n];
        Ok(revealed
            .into_iter()
            .filter(|&(u, v)| {
                let free = !matched[u] && !matched[v];
                if free {
                    matched[u] = true;
                    matched[v] = true;
                }
                free
            })
            .collect())
    }
}

/// Looks up a strategy by CLI name: `greedy`, `exhaustive`, `empty`,
/// `budgeted-greedy`, `random-probe[:queries]`.
pub fn strategy_by_name(name: &str, seed: u64) -> Result<Box<dyn MatchingStrategy>> {
    let (base, arg) = name.split_once(':').unwrap_or((name, ""));
    Ok(match base {
        "greedy" => Box::new(GreedyStrategy),
        "exhaustive" => Box::new(ExhaustiveStrategy),
        "empty" => Box::new(EmptyStrategy),
        "budgeted-greedy" => Box::new(BudgetedGreedyStrategy),
        "random-probe" => Box::new(RandomProbeStrategy {
            seed,
            queries: if arg.is_empty() {
                100
            } else {
                arg.parse()
                    .map_err(|_| Error::invalid(format!("bad query count in {name:?}")))?
            },
        }),
        _ => return Err(Error::invalid(format!("unknown strategy {name:?}"))),
    })
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub k: usize,
    pub strategy: String,
    pub queries: u64,
    pub budget: u64,
    pub refuted: bool,
    pub reason: Option<String>,
    pub witness: Option<Graph>,
    /// `|C_used|` when the strategy stopped.
    pub used_core: usize,
}

impl Verdict {
    /// The strategy either paid more than `2k²` queries or was caught.
    pub fn lower_bound_respected(&self) -> bool {
        self.queries > self.budget || self.refuted
    }

    pub fn witness_hash(&self) -> Option<String> {
        self.witness.as_ref().map(graph_hash)
    }
}

/// First 16 hex digits of the SHA-256 of the canonical graph file.
pub fn graph_hash(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_graph_to(&g.canonicalize(), &mut buf).expect("in-memory write");
    let digest = Sha256::digest(&buf);
    hex::encode(&digest[..8])
}

/// Runs `strategy` against a fresh adversary and tries to refute its output.
///
/// Refutation is attempted whatever the query count; it is sound, so a
/// correct strategy is never refuted, and guaranteed to succeed within the
/// `2k²` budget.
pub fn referee(strategy: &mut dyn MatchingStrategy, k: usize, mode: ChoiceMode) -> Result<Verdict> {
    let mut adversary = Adversary::new(k, mode)?;
    let claimed = strategy.run(&mut adversary)?;
    let refutation = adversary.refute(&claimed)?;
    Ok(Verdict {
        k,
        strategy: strategy.name().to_string(),
        queries: adversary.total_queries(),
        budget: adversary.budget(),
        refuted: refutation.is_some(),
        reason: refutation.as_ref().map(|r| r.kind.to_string()),
        witness: refutation.map(|r| r.witness),
        used_core: adversary.c_used().len(),
    })
}
