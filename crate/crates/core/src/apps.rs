//! One-call derived algorithms: vertex cover, Caro-Wei independent set, and
//! maximal matching through the line graph.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::generators::line_graph;
use crate::graph::{AdjacencyArray, Graph, ProbeCounter};
use crate::mis::{caro_wei_mis, greedy_mis, VertexSet};
use crate::mm::{mm_unknown_beta, Matching, DEFAULT_CAP_CONSTANT};
use crate::verify::vertex_cover_from_mm;

/// Endpoints of a maximal matching: a vertex cover at most twice the minimum.
pub fn approx_vertex_cover<G, R>(g: &G, rng: &mut R, pc: &mut ProbeCounter) -> Result<VertexSet>
where
    G: AdjacencyArray + ?Sized,
    R: Rng + ?Sized,
{
    let out = mm_unknown_beta(g, rng, pc, DEFAULT_CAP_CONSTANT)?;
    Ok(vertex_cover_from_mm(&out.matching))
}

pub fn caro_wei_independent_set<G>(g: &G, pc: &mut ProbeCounter) -> Result<VertexSet>
where
    G: AdjacencyArray + ?Sized,
{
    caro_wei_mis(g, pc).map(|(set, _)| set)
}

/// Maximal matching of `g` as a maximal independent set of `L(g)`, scanned in
/// a random order. Builds `L(g)` explicitly, so it costs `Σ deg²`; probes are
/// counted on the line graph.
pub fn mm_via_line_graph<R>(g: &Graph, rng: &mut R, pc: &mut ProbeCounter) -> Result<Matching>
where
    R: Rng + ?Sized,
{
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.is_empty() {
        return Ok(Matching::new(g.n()));
    }
    let lg = line_graph(g)?;
    let mut order: Vec<usize> = (0..lg.n()).collect();
    order.shuffle(rng);
    let (chosen, _) = greedy_mis(&lg, &order, pc)?;
    Matching::from_edges(g.n(), chosen.members().iter().map(|&e| edges[e]))
}
