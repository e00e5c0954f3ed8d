//! Acceptance checks. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any fails. Counts are the contract, never wall time.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use betagraph::adversary::{referee, replay_matches, Adversary, ChoiceMode, GreedyStrategy};
use betagraph::apps::{approx_vertex_cover, caro_wei_independent_set};
use betagraph::bench::loglog_slope;
use betagraph::generators::{
    line_graph, random_graph_with_edges, CliqueMinusMatching, Family, FamilyParams, GenSpec,
    Instance,
};
use betagraph::mm::round_cap;
use betagraph::verify::{
    caro_wei_sum, delta_good_fraction, independent_sets, is_maximal_matching, is_vertex_cover,
    max_independent_set_size, min_vertex_cover_size, neighborhood_independence_with_limit,
};
use betagraph::{
    greedy_mis, mm_unknown_beta, randomized_greedy_mm, AdjacencyArray, Graph, ProbeCounter,
    VertexSet,
};

const CAP: u64 = betagraph::mm::DEFAULT_CAP_CONSTANT;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Check = fn() -> Outcome;

fn main() -> ExitCode {
    let checks: [(&str, Check); 11] = [
        ("1 mis marks <= n*beta", c1_mis_marks),
        ("2 independent-set degree sums", c2_degree_sums),
        ("3 mm mean iterations <= 16 beta n ln n", c3_mm_expected),
        ("4 mm 99% runs <= 64 beta n ln n", c4_mm_whp),
        ("5 mm maximal, clique minus pm leaves <= 2", c5_mm_correct),
        ("6 unknown-beta within 3x cap", c6_unknown_beta),
        ("7 half of U is delta-good", c7_delta_good),
        ("8 greedy vs adversary", c8_lower_bound),
        ("9 adversary transcripts replay", c9_replay),
        ("10 scaling slopes", c10_scaling),
        ("11 applications", c11_applications),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, check) in checks {
        if !filter.is_empty() && !filter.iter().any(|f| name.starts_with(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let r = check();
        let secs = start.elapsed().as_secs_f64();
        let tag = if r.pass { "PASS" } else { "FAIL" };
        println!("criterion {name}: {tag} ({}; {secs:.1}s)", r.detail);
        failed += usize::from(!r.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}

fn random_graph(n: usize, rng: &mut impl Rng) -> Graph {
    let p: f64 = rng.random();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.random_bool(p))
        .collect();
    Graph::from_edge_list(n, edges).unwrap()
}

/// β from the oracle, or `None` if the graph is too dense for it.
fn exact_beta(g: &Graph) -> Option<usize> {
    neighborhood_independence_with_limit(g, 64).ok()
}

fn shuffled(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}

/// Small instance of each family with n ≤ 14, sized so every family can build it.
fn small_family_graph(family: Family, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = match family {
        Family::CliqueMinusPm | Family::RegularBipartite => 2 * rng.random_range(1..=7),
        Family::HardUnion => 4 * rng.random_range(1..=3),
        _ => rng.random_range(1..=14),
    };
    let params = FamilyParams {
        d: if family == Family::RegularBipartite {
            rng.random_range(1..=n / 2)
        } else {
            8
        },
        part_size: 4,
        p: rng.random(),
        length: Some(rng.random_range(1.0..4.0)),
        ..FamilyParams::default()
    };
    GenSpec::new(family, n, seed)
        .with_params(params)
        .generate()
        .unwrap()
}

fn c1_mis_marks() -> Outcome {
    let runs: u64 = 10_000;
    let violations: Vec<String> = (0..runs)
        .into_par_iter()
        .filter_map(|run| {
            let mut rng = ChaCha8Rng::seed_from_u64(run);
            let mut pc = ProbeCounter::uncounted();
            // one in ten runs on larger instances with a proven bound
            let (instance, beta) = match run % 10 {
                0 => {
                    let n = rng.random_range(50..600);
                    let g = GenSpec::new(Family::LineGraph, n, run).generate().unwrap();
                    (Instance::Graph(g), 2)
                }
                1 => {
                    let n = 2 * rng.random_range(10..300);
                    (
                        Instance::CliqueMinusMatching(
                            CliqueMinusMatching::random(n, &mut rng).unwrap(),
                        ),
                        2,
                    )
                }
                r => {
                    let g = if r == 2 {
                        random_graph(rng.random_range(1..=14), &mut rng)
                    } else {
                        small_family_graph(Family::ALL[run as usize % Family::ALL.len()], run)
                    };
                    let beta = exact_beta(&g).unwrap();
                    (Instance::Graph(g), beta)
                }
            };
            let n = instance.vertex_count();
            let order = shuffled(n, &mut rng);
            let (_, st) = greedy_mis(&instance, &order, &mut pc).unwrap();
            (st.marks_set > (n * beta) as u64)
                .then(|| format!("run {run}: marks {} > {n}*{beta}", st.marks_set))
        })
        .collect();
    outcome(
        violations.is_empty(),
        format!(
            "{runs} runs, {} violations{}",
            violations.len(),
            violations
                .first()
                .map(|v| format!(", first: {v}"))
                .unwrap_or_default()
        ),
    )
}

fn c2_degree_sums() -> Outcome {
    let graphs = 500;
    let (checked, bad): (usize, Vec<u64>) = (0..graphs as u64)
        .into_par_iter()
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(1_000 + seed);
            let g = random_graph(rng.random_range(1..=8), &mut rng);
            let n = g.n();
            let beta = exact_beta(&g).unwrap();
            let sets = independent_sets(&g).unwrap();
            let bad = sets.iter().any(|&mask| {
                let sum: usize = (0..n)
                    .filter(|&v| mask >> v & 1 == 1)
                    .map(|v| g.neighbor_slice(v).len())
                    .sum();
                sum > n * beta
            });
            (sets.len(), if bad { vec![seed] } else { vec![] })
        })
        .reduce(|| (0, vec![]), |a, b| (a.0 + b.0, [a.1, b.1].concat()));
    outcome(
        bad.is_empty(),
        format!("{graphs} graphs, {checked} independent sets, violating seeds {bad:?}"),
    )
}

const MM_SIZES: [usize; 3] = [1 << 10, 1 << 12, 1 << 14];
const MM_SEEDS: u64 = 200;

/// Iteration counts for every (family, n), computed once for criteria 3 and 4.
fn mm_sweep() -> &'static Vec<(Family, usize, Vec<u64>)> {
    static SWEEP: std::sync::OnceLock<Vec<(Family, usize, Vec<u64>)>> = std::sync::OnceLock::new();
    SWEEP.get_or_init(|| {
        let mut out = Vec::new();
        for family in [Family::LineGraph, Family::CliqueMinusPm] {
            for n in MM_SIZES {
                let iterations: Vec<u64> = (0..MM_SEEDS)
                    .into_par_iter()
                    .map(|seed| {
                        let instance = GenSpec::new(family, n, seed).instance().unwrap();
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        let mut pc = ProbeCounter::uncounted();
                        let out =
                            randomized_greedy_mm(&instance, 2, &mut rng, &mut pc, None).unwrap();
                        assert!(out.completed);
                        out.stats.iterations
                    })
                    .collect();
                out.push((family, n, iterations));
            }
        }
        out
    })
}

fn c3_mm_expected() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (family, n, its) in mm_sweep() {
        let bound = 16.0 * 2.0 * *n as f64 * (*n as f64).ln();
        let mean = its.iter().sum::<u64>() as f64 / its.len() as f64;
        pass &= mean <= bound;
        parts.push(format!("{family} n={n}: mean/bound {:.3}", mean / bound));
    }
    outcome(pass, parts.join(", "))
}

fn c4_mm_whp() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (family, n, its) in mm_sweep() {
        let bound = 64.0 * 2.0 * *n as f64 * (*n as f64).ln();
        let within = its.iter().filter(|&&t| t as f64 <= bound).count();
        pass &= within * 100 >= its.len() * 99;
        parts.push(format!("{family} n={n}: {within}/{}", its.len()));
    }
    outcome(pass, parts.join(", "))
}

fn c5_mm_correct() -> Outcome {
    let runs: u64 = 10_000;
    let results: Vec<(bool, Option<usize>)> = (0..runs)
        .into_par_iter()
        .map(|run| {
            let mut rng = ChaCha8Rng::seed_from_u64(50_000 + run);
            let family = Family::ALL[run as usize % Family::ALL.len()];
            let mut pc = ProbeCounter::uncounted();
            if family == Family::CliqueMinusPm {
                let n = 2 * rng.random_range(1..=200);
                let g = CliqueMinusMatching::random(n, &mut rng).unwrap();
                let out = randomized_greedy_mm(&g, 2, &mut rng, &mut pc, None).unwrap();
                return (
                    is_maximal_matching(&g, &out.matching),
                    Some(out.matching.unmatched_count()),
                );
            }
            let n = rng.random_range(16..=160) & !7;
            let spec = GenSpec::new(family, n, run);
            let g = spec.generate().unwrap();
            let out = if run % 2 == 0 {
                let beta = exact_beta(&g).or(spec.beta_bound()).unwrap().max(1);
                randomized_greedy_mm(&g, beta, &mut rng, &mut pc, None).unwrap()
            } else {
                mm_unknown_beta(&g, &mut rng, &mut pc, CAP).unwrap()
            };
            (
                out.completed && is_maximal_matching(&g, &out.matching),
                None,
            )
        })
        .collect();
    let not_maximal = results.iter().filter(|r| !r.0).count();
    let gn: Vec<usize> = results.iter().filter_map(|r| r.1).collect();
    let worst = gn.iter().copied().max().unwrap_or(0);
    outcome(
        not_maximal == 0 && worst <= 2,
        format!(
            "{runs} runs, {not_maximal} not maximal; {} clique-minus-pm runs, max unmatched {worst}",
            gn.len()
        ),
    )
}

fn c6_unknown_beta() -> Outcome {
    let n = 256;
    let seeds = 200u64;
    let mut pass = true;
    let mut parts = Vec::new();
    for family in Family::ALL {
        let ok = (0..seeds)
            .into_par_iter()
            .filter(|&seed| {
                let spec = GenSpec::new(family, n, seed);
                let instance = spec.instance().unwrap();
                let beta = instance
                    .as_graph()
                    .and_then(exact_beta)
                    .or(spec.beta_bound())
                    .unwrap();
                let guess = beta.max(2).next_power_of_two();
                let cap = round_cap(n, guess, CAP);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut pc = ProbeCounter::uncounted();
                let out = mm_unknown_beta(&instance, &mut rng, &mut pc, CAP).unwrap();
                out.completed && out.stats.iterations <= 3 * cap
            })
            .count() as u64;
        pass &= ok * 100 >= seeds * 95;
        parts.push(format!("{family} {ok}/{seeds}"));
    }
    outcome(pass, parts.join(", "))
}

/// Every perfect matching of `0..n`, as partner arrays.
fn perfect_matchings(n: usize) -> Vec<Vec<usize>> {
    fn rec(partner: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(a) = partner.iter().position(|&p| p == usize::MAX) else {
            out.push(partner.clone());
            return;
        };
        for b in a + 1..partner.len() {
            if partner[b] == usize::MAX {
                partner[a] = b;
                partner[b] = a;
                rec(partner, out);
                partner[a] = usize::MAX;
                partner[b] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; n], &mut out);
    out
}

/// A graph on at most 10 vertices with β ≤ 2.
fn small_claw_free(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.random_range(1..=10);
        let g = match rng.random_range(0..3) {
            0 => {
                let base = rng.random_range(2..=7usize);
                let edges = rng.random_range(1..=n.min(base * (base - 1) / 2));
                line_graph(&random_graph_with_edges(base, edges, rng.random()).unwrap()).unwrap()
            }
            1 => GenSpec::new(Family::UnitInterval, n, rng.random())
                .with_params(FamilyParams {
                    length: Some(rng.random_range(0.5..4.0)),
                    ..FamilyParams::default()
                })
                .generate()
                .unwrap(),
            _ => random_graph(n, &mut rng),
        };
        if exact_beta(&g).unwrap() <= 2 {
            return g;
        }
    }
}

fn delta_good_violations(g: &Graph) -> usize {
    let n = g.n();
    let beta = exact_beta(g).unwrap().max(1) as u64;
    (1u64..1 << n)
        .filter(|&mask| {
            let u = VertexSet::from_members(n, (0..n).filter(|&v| mask >> v & 1 == 1));
            let delta = Ratio::new(u.len() as u64, 4 * n as u64 * beta);
            delta_good_fraction(g, &u, delta).unwrap() < Ratio::new(1, 2)
        })
        .count()
}

fn c7_delta_good() -> Outcome {
    let sampled: Vec<Graph> = (0..500u64).map(|s| small_claw_free(7_000 + s)).collect();
    let mut pm_graphs = Vec::new();
    for n in (2..=10).step_by(2) {
        for partner in perfect_matchings(n) {
            pm_graphs.push(
                CliqueMinusMatching::with_partners(partner)
                    .unwrap()
                    .to_graph(),
            );
        }
    }
    let total = sampled.len() + pm_graphs.len();
    let violations: usize = sampled
        .par_iter()
        .chain(pm_graphs.par_iter())
        .map(delta_good_violations)
        .sum();
    outcome(
        violations == 0,
        format!(
            "{} sampled + {} clique-minus-pm graphs, {violations} violating subsets",
            sampled.len(),
            total - sampled.len()
        ),
    )
}

fn c8_lower_bound() -> Outcome {
    let ks = [5usize, 10, 20, 40];
    let verdicts: Vec<_> = ks
        .iter()
        .map(|&k| referee(&mut GreedyStrategy, k, ChoiceMode::Deterministic).unwrap())
        .collect();
    let all_respected = verdicts.iter().all(|v| v.lower_bound_respected());
    let points: Vec<(f64, f64)> = verdicts
        .iter()
        .map(|v| (v.k as f64, v.queries as f64))
        .collect();
    let slope = loglog_slope(&points).unwrap();
    let c = points.iter().map(|(k, q)| q * k * k).sum::<f64>()
        / points.iter().map(|(k, _)| k.powi(4)).sum::<f64>();
    let queries: Vec<u64> = verdicts.iter().map(|v| v.queries).collect();
    outcome(
        all_respected && c > 0.0 && (slope - 2.0).abs() <= 0.2,
        format!("queries {queries:?}, fitted c {c:.3}, slope {slope:.3}"),
    )
}

fn c9_replay() -> Outcome {
    let trials = 1_000u64;
    let mismatches: Vec<u64> = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = ChaCha8Rng::seed_from_u64(90_000 + t);
            let k = rng.random_range(1..=6);
            let mode = if t % 2 == 0 {
                ChoiceMode::Deterministic
            } else {
                ChoiceMode::Random(t)
            };
            let mut adv = Adversary::new(k, mode).unwrap();
            let n = 10 * k;
            let queries = rng.random_range(0..=n * (n - 2));
            for _ in 0..queries {
                let open: Vec<usize> = (0..n).filter(|&v| adv.query_count(v) < n - 2).collect();
                let Some(&v) = open.choose(&mut rng) else {
                    break;
                };
                adv.answer_query(v).unwrap();
            }
            let g = adv.finalize_consistent_graph().unwrap();
            let in_family = (0..n).all(|v| {
                let missing: Vec<usize> = (0..n).filter(|&x| x != v && !g.has_edge(v, x)).collect();
                missing.len() == 1
                    && !g.has_edge(missing[0], v)
                    && g.neighbor_slice(v).len() == n - 2
            }) && (0..k).all(|i| !g.has_edge(2 * i, 2 * i + 1));
            !(in_family && replay_matches(&g, adv.transcript()))
        })
        .collect();
    outcome(
        mismatches.is_empty(),
        format!("{trials} transcripts, mismatching trials {mismatches:?}"),
    )
}

fn c10_scaling() -> Outcome {
    let sizes: Vec<usize> = (10..=14).map(|e| 1 << e).collect();
    let trials = 10u64;
    let mis_points: Vec<(f64, f64)> = sizes
        .iter()
        .map(|&n| {
            let total: u64 = (0..trials)
                .into_par_iter()
                .map(|seed| {
                    let g = GenSpec::new(Family::LineGraph, n, seed).generate().unwrap();
                    let order = shuffled(g.n(), &mut ChaCha8Rng::seed_from_u64(seed));
                    greedy_mis(&g, &order, &mut ProbeCounter::uncounted())
                        .unwrap()
                        .1
                        .work
                })
                .sum();
            (n as f64, total as f64 / trials as f64)
        })
        .collect();
    let mm_points: Vec<(f64, f64)> = sizes
        .iter()
        .map(|&n| {
            let g = CliqueMinusMatching::standard(n).unwrap();
            let total: u64 = (0..trials)
                .into_par_iter()
                .map(|seed| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    randomized_greedy_mm(&g, 2, &mut rng, &mut ProbeCounter::uncounted(), None)
                        .unwrap()
                        .stats
                        .iterations
                })
                .sum();
            (n as f64, total as f64 / trials as f64 / (n as f64).ln())
        })
        .collect();
    let mis_slope = loglog_slope(&mis_points).unwrap();
    let mm_slope = loglog_slope(&mm_points).unwrap();
    outcome(
        (mis_slope - 1.0).abs() <= 0.1 && (mm_slope - 1.0).abs() <= 0.15,
        format!("mis work slope {mis_slope:.3} (line graphs), mm iterations/ln n slope {mm_slope:.3} (clique minus pm)"),
    )
}

/// Every graph on `n` vertices, by edge mask.
fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edge_list(n, edges).unwrap()
    })
}

fn c11_applications() -> Outcome {
    // vertex cover: every graph on up to 6 vertices, then random ones up to 12
    let mut vc_graphs: Vec<Graph> = (1..=6).flat_map(all_graphs).collect();
    let exhaustive = vc_graphs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    vc_graphs.extend((0..2_000).map(|_| {
        let n = rng.random_range(7..=12);
        random_graph(n, &mut rng)
    }));
    let vc_bad = vc_graphs
        .par_iter()
        .enumerate()
        .filter(|(i, g)| {
            let mut rng = ChaCha8Rng::seed_from_u64(*i as u64);
            let c = approx_vertex_cover(*g, &mut rng, &mut ProbeCounter::uncounted()).unwrap();
            !is_vertex_cover(g, &c) || c.len() > 2 * min_vertex_cover_size(g).unwrap()
        })
        .count();

    let cw_bad = (0..1_000u64)
        .into_par_iter()
        .filter(|&seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(20_000 + seed);
            let g = random_graph(rng.random_range(1..=80), &mut rng);
            let s = caro_wei_independent_set(&g, &mut ProbeCounter::uncounted()).unwrap();
            BigRational::from_integer(BigInt::from(s.len())) < caro_wei_sum(&g)
        })
        .count();

    let mis_bad = (0..3_000u64)
        .into_par_iter()
        .filter(|&seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(30_000 + seed);
            let g = if seed % 3 == 0 {
                random_graph(rng.random_range(1..=14), &mut rng)
            } else {
                small_family_graph(Family::ALL[seed as usize % Family::ALL.len()], seed)
            };
            let alpha = max_independent_set_size(&g).unwrap();
            let beta = exact_beta(&g).unwrap();
            let order = shuffled(g.n(), &mut rng);
            let size = greedy_mis(&g, &order, &mut ProbeCounter::uncounted())
                .unwrap()
                .0
                .len();
            if beta == 0 {
                size != alpha
            } else {
                size * beta < alpha
            }
        })
        .count();
    outcome(
        vc_bad + cw_bad + mis_bad == 0,
        format!(
            "vertex cover: {} graphs ({exhaustive} exhaustive), {vc_bad} over 2*opt; caro-wei: 1000 graphs, {cw_bad} below bound; mis vs alpha/beta: 3000 graphs, {mis_bad} below",
            vc_graphs.len()
        ),
    )
}
