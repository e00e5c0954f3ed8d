//! C ABI for `betagraph`.
//!
//! Graphs are opaque `BgGraph` handles created by one of the `bg_graph_*`
//! constructors and released with `bg_graph_free`. Every fallible call returns
//! a `BgStatus`; on failure a message is kept per thread and can be copied out
//! with `bg_last_error`. Output arrays are caller-allocated and sized by the
//! vertex count. Panics never cross the boundary.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use betagraph::adversary::{referee, strategy_by_name, ChoiceMode};
use betagraph::generators::{GenSpec, Instance};
use betagraph::io::{read_graph, write_graph};
use betagraph::mm::{mm_unknown_beta, randomized_greedy_mm, DEFAULT_CAP_CONSTANT};
use betagraph::verify::neighborhood_independence;
use betagraph::{greedy_mis, AdjacencyArray, Error, Graph, ProbeCounter};

/// Written into a mate array for an unmatched vertex.
pub const BG_UNMATCHED: i64 = -1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    OutOfRange = 3,
    Parse = 4,
    Io = 5,
    /// Instance too large for an exact oracle.
    Capacity = 6,
    BufferTooSmall = 7,
    Internal = 8,
    Panic = 9,
}

/// Opaque graph handle.
pub struct BgGraph {
    inner: Instance,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BgMisStats {
    pub size: usize,
    pub marks_set: u64,
    pub vertices_scanned: u64,
    pub work: u64,
    pub neighbor_probes: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BgMmStats {
    pub matching_size: usize,
    pub iterations: u64,
    pub low_degree_scans: u64,
    pub successes: u64,
    /// Guess rounds used; 1 when β was supplied.
    pub rounds: u32,
    pub probes: u64,
    pub completed: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BgDuel {
    pub queries: u64,
    pub budget: u64,
    pub refuted: bool,
    /// Paid more than the budget, or was refuted.
    pub lower_bound_respected: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(BgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::VertexOutOfRange { .. } | Error::NeighborIndexOutOfRange { .. } => {
                BgStatus::OutOfRange
            }
            Error::SelfLoop(_) | Error::Malformed(_) | Error::InvalidInput(_) => {
                BgStatus::InvalidInput
            }
            Error::Parse { .. } => BgStatus::Parse,
            Error::Io(_) | Error::Csv(_) => BgStatus::Io,
            Error::Capacity(_) => BgStatus::Capacity,
            Error::EmptySet | Error::Invariant(_) => BgStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn fail<T>(status: BgStatus, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, msg.into()))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BgStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside betagraph".into());
            BgStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const BgGraph) -> Result<&'a Instance, Failure> {
    match g.as_ref() {
        Some(g) => Ok(&g.inner),
        None => fail(BgStatus::NullPointer, "graph handle is null"),
    }
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return fail(BgStatus::NullPointer, format!("{what} is null"));
    }
    CStr::from_ptr(s)
        .to_str()
        .or_else(|_| fail(BgStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn out_slice<'a, T>(
    p: *mut T,
    len: usize,
    need: usize,
    what: &str,
) -> Result<&'a mut [T], Failure> {
    if p.is_null() {
        return fail(BgStatus::NullPointer, format!("{what} is null"));
    }
    if len < need {
        return fail(
            BgStatus::BufferTooSmall,
            format!("{what} holds {len}, needs {need}"),
        );
    }
    Ok(std::slice::from_raw_parts_mut(p, need))
}

unsafe fn put_handle(out: *mut *mut BgGraph, inner: Instance) -> Result<(), Failure> {
    *out = Box::into_raw(Box::new(BgGraph { inner }));
    Ok(())
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return fail(BgStatus::NullPointer, "output pointer is null");
    }
    Ok(())
}

/// Static, NUL-terminated name of a status code.
#[no_mangle]
pub extern "C" fn bg_status_name(status: BgStatus) -> *const c_char {
    let s: &'static CStr = match status {
        BgStatus::Ok => c"ok",
        BgStatus::NullPointer => c"null pointer",
        BgStatus::InvalidInput => c"invalid input",
        BgStatus::OutOfRange => c"out of range",
        BgStatus::Parse => c"parse error",
        BgStatus::Io => c"i/o error",
        BgStatus::Capacity => c"instance too large",
        BgStatus::BufferTooSmall => c"buffer too small",
        BgStatus::Internal => c"internal error",
        BgStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// Copies the calling thread's last error message into `buf` (truncated,
/// always NUL-terminated when `len > 0`). Returns the full message length
/// plus one, or 0 if no error has been recorded.
#[no_mangle]
pub unsafe extern "C" fn bg_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

/// Builds a graph on `n` vertices from `m` edges given as `2·m` endpoint ids.
/// Duplicate edges are merged; self-loops are rejected.
#[no_mangle]
pub unsafe extern "C" fn bg_graph_from_edges(
    n: usize,
    endpoints: *const u32,
    m: usize,
    out: *mut *mut BgGraph,
) -> BgStatus {
    guard(|| {
        check_out(out)?;
        if endpoints.is_null() && m > 0 {
            return fail(BgStatus::NullPointer, "endpoints is null");
        }
        let ends: &[u32] = if m == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(endpoints, 2 * m)
        };
        let edges = ends.chunks_exact(2).map(|e| (e[0] as usize, e[1] as usize));
        put_handle(out, Instance::Graph(Graph::from_edge_list(n, edges)?))
    })
}

/// Reads a graph file (`n m` header, then one `u v` line per edge).
#[no_mangle]
pub unsafe extern "C" fn bg_graph_read(path: *const c_char, out: *mut *mut BgGraph) -> BgStatus {
    guard(|| {
        check_out(out)?;
        let path = str_arg(path, "path")?;
        put_handle(out, Instance::Graph(read_graph(Path::new(path))?))
    })
}

/// Writes the graph in the text format read by `bg_graph_read`.
#[no_mangle]
pub unsafe extern "C" fn bg_graph_write(g: *const BgGraph, path: *const c_char) -> BgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let path = str_arg(path, "path")?;
        match g {
            Instance::Graph(graph) => write_graph(graph, Path::new(path))?,
            Instance::CliqueMinusMatching(c) => write_graph(&c.to_graph(), Path::new(path))?,
        }
        Ok(())
    })
}

/// Generates a member of a named family (`line_graph`, `clique_minus_pm`,
/// `unit_disk`, ...) with default parameters. `clique_minus_pm` is kept
/// implicit, so large instances are cheap.
#[no_mangle]
pub unsafe extern "C" fn bg_graph_generate(
    family: *const c_char,
    n: usize,
    seed: u64,
    out: *mut *mut BgGraph,
) -> BgStatus {
    guard(|| {
        check_out(out)?;
        let family = str_arg(family, "family")?.parse()?;
        put_handle(out, GenSpec::new(family, n, seed).instance()?)
    })
}

/// Releases a handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bg_graph_free(g: *mut BgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn bg_graph_vertex_count(g: *const BgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.vertex_count())
}

/// Edge count, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn bg_graph_edge_count(g: *const BgGraph) -> u64 {
    g.as_ref().map_or(0, |g| {
        let i = &g.inner;
        (0..i.vertex_count())
            .map(|v| i.raw_degree(v) as u64)
            .sum::<u64>()
            / 2
    })
}

#[no_mangle]
pub unsafe extern "C" fn bg_graph_degree(g: *const BgGraph, v: usize, out: *mut usize) -> BgStatus {
    guard(|| {
        check_out(out)?;
        *out = graph_ref(g)?.degree(v, &mut ProbeCounter::uncounted())?;
        Ok(())
    })
}

/// Entry `i` of `v`'s adjacency array.
#[no_mangle]
pub unsafe extern "C" fn bg_graph_neighbor(
    g: *const BgGraph,
    v: usize,
    i: usize,
    out: *mut usize,
) -> BgStatus {
    guard(|| {
        check_out(out)?;
        *out = graph_ref(g)?.neighbor(v, i, &mut ProbeCounter::uncounted())?;
        Ok(())
    })
}

/// Exact neighborhood independence number. Fails with `Capacity` on graphs
/// with a vertex of degree above 25.
#[no_mangle]
pub unsafe extern "C" fn bg_beta_exact(g: *const BgGraph, out: *mut usize) -> BgStatus {
    guard(|| {
        check_out(out)?;
        *out = match graph_ref(g)? {
            Instance::Graph(graph) => neighborhood_independence(graph)?,
            Instance::CliqueMinusMatching(c) => neighborhood_independence(&c.to_graph())?,
        };
        Ok(())
    })
}

/// Greedy maximal independent set. `order` may be null (identity order);
/// otherwise it must be a permutation of `0..n` of length `order_len`.
/// `in_set[v]` is set to 1 for members and 0 otherwise. `stats` may be null.
#[no_mangle]
pub unsafe extern "C" fn bg_mis_greedy(
    g: *const BgGraph,
    order: *const usize,
    order_len: usize,
    in_set: *mut u8,
    in_set_len: usize,
    stats: *mut BgMisStats,
) -> BgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let n = g.vertex_count();
        let out = out_slice(in_set, in_set_len, n, "in_set")?;
        let order: Vec<usize> = if order.is_null() {
            (0..n).collect()
        } else {
            std::slice::from_raw_parts(order, order_len).to_vec()
        };
        let mut pc = ProbeCounter::new();
        let (set, st) = greedy_mis(g, &order, &mut pc)?;
        out.fill(0);
        for &v in set.members() {
            out[v] = 1;
        }
        if let Some(s) = stats.as_mut() {
            *s = BgMisStats {
                size: set.len(),
                marks_set: st.marks_set,
                vertices_scanned: st.vertices_scanned,
                work: st.work,
                neighbor_probes: pc.neighbor_probes(),
            };
        }
        Ok(())
    })
}

/// Randomized greedy maximal matching. `beta = 0` runs the doubling wrapper
/// that needs no knowledge of β. `mate[v]` receives `v`'s partner or
/// `BG_UNMATCHED`. `stats` may be null.
#[no_mangle]
pub unsafe extern "C" fn bg_mm_randomized(
    g: *const BgGraph,
    beta: usize,
    seed: u64,
    mate: *mut i64,
    mate_len: usize,
    stats: *mut BgMmStats,
) -> BgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let n = g.vertex_count();
        let out = out_slice(mate, mate_len, n, "mate")?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pc = ProbeCounter::new();
        let result = if beta == 0 {
            mm_unknown_beta(g, &mut rng, &mut pc, DEFAULT_CAP_CONSTANT)?
        } else {
            randomized_greedy_mm(g, beta, &mut rng, &mut pc, None)?
        };
        for (v, slot) in out.iter_mut().enumerate() {
            *slot = result.matching.mate(v).map_or(BG_UNMATCHED, |u| u as i64);
        }
        if let Some(s) = stats.as_mut() {
            *s = BgMmStats {
                matching_size: result.matching.len(),
                iterations: result.stats.iterations,
                low_degree_scans: result.stats.low_degree_scans,
                successes: result.stats.successes,
                rounds: result.stats.guess_rounds.len().max(1) as u32,
                probes: pc.total(),
                completed: result.completed,
            };
        }
        Ok(())
    })
}

/// Runs a named matching strategy (`greedy`, `exhaustive`, `empty`,
/// `budgeted-greedy`, `random-probe[:q]`) against the adaptive adversary on
/// `n = 10k` vertices. `random_choices` makes the adversary's arbitrary
/// choices seeded-random instead of lowest-id.
#[no_mangle]
pub unsafe extern "C" fn bg_adversary_duel(
    k: usize,
    strategy: *const c_char,
    seed: u64,
    random_choices: bool,
    out: *mut BgDuel,
) -> BgStatus {
    guard(|| {
        check_out(out)?;
        let name = str_arg(strategy, "strategy")?;
        let mut s = strategy_by_name(name, seed)?;
        let mode = if random_choices {
            ChoiceMode::Random(seed)
        } else {
            ChoiceMode::Deterministic
        };
        let v = referee(s.as_mut(), k, mode)?;
        *out = BgDuel {
            queries: v.queries,
            budget: v.budget,
            refuted: v.refuted,
            lower_bound_respected: v.lower_bound_respected(),
        };
        Ok(())
    })
}
