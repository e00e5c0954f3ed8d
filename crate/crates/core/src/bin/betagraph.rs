use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use betagraph::adversary::{referee, strategy_by_name, ChoiceMode};
use betagraph::apps::{approx_vertex_cover, caro_wei_independent_set, mm_via_line_graph};
use betagraph::bench::{fit, sweep, write_csv, write_fit_csv, Algorithm, Model, SweepConfig};
use betagraph::generators::{Family, FamilyParams, GenSpec};
use betagraph::io::{read_graph, write_graph};
use betagraph::mis::{caro_wei_mis, greedy_mis, identity_order};
use betagraph::mm::{mm_unknown_beta, randomized_greedy_mm, MmOutcome};
use betagraph::verify::{greedy_beta_lower_bound, is_maximal_matching, neighborhood_independence};
use betagraph::{Error, Graph, ProbeCounter, Result};

#[derive(Parser)]
#[command(
    name = "betagraph",
    version,
    about = "MIS and maximal matching on graphs of bounded neighborhood independence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph file from a family.
    Generate(GenerateArgs),
    /// Greedy maximal independent set.
    Mis(MisArgs),
    /// Randomized greedy maximal matching.
    Mm(MmArgs),
    /// Duel a deterministic matching strategy against the adaptive adversary.
    Adversary(AdversaryArgs),
    /// Neighborhood independence number of a graph.
    Beta(BetaArgs),
    /// Scaling sweep with CSV output and a complexity fit.
    Bench(BenchArgs),
    /// Derived algorithms: vertex cover, Caro-Wei set, matching via line graph.
    Apps(AppsArgs),
}

#[derive(Args)]
struct FamilyArgs {
    /// line_graph, hyper_line_graph, clique, clique_minus_pm, unit_interval,
    /// unit_disk, er_random, regular_bipartite, hard_union
    #[arg(long)]
    family: String,
    #[arg(long)]
    base_vertices: Option<usize>,
    #[arg(long, default_value_t = 3)]
    rank: usize,
    #[arg(long)]
    universe: Option<usize>,
    #[arg(long)]
    length: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    window: f64,
    #[arg(long)]
    side: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    #[arg(long, default_value_t = 8)]
    d: usize,
    #[arg(long, default_value_t = 16)]
    part_size: usize,
}

impl FamilyArgs {
    fn spec(&self, n: usize, seed: u64) -> Result<GenSpec> {
        let family: Family = self.family.parse()?;
        Ok(GenSpec::new(family, n, seed).with_params(FamilyParams {
            base_vertices: self.base_vertices,
            rank: self.rank,
            universe: self.universe,
            length: self.length,
            window: self.window,
            side: self.side,
            radius: self.radius,
            p: self.p,
            d: self.d,
            part_size: self.part_size,
        }))
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct MisArgs {
    #[arg(long)]
    input: PathBuf,
    /// identity, caro-wei, or file:<path> holding a whitespace-separated permutation
    #[arg(long, default_value = "identity")]
    order: String,
    #[arg(long)]
    stats_out: Option<PathBuf>,
}

#[derive(Args)]
struct MmArgs {
    #[arg(long)]
    input: PathBuf,
    /// An integer, `auto` (doubling guesses), or `exact` (oracle value, at least 1)
    #[arg(long, default_value = "auto")]
    beta: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = betagraph::mm::DEFAULT_CAP_CONSTANT)]
    cap_constant: u64,
    #[arg(long)]
    stats_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Deterministic,
    Random,
}

#[derive(Args)]
struct AdversaryArgs {
    /// One or more k values (n = 10k), comma separated.
    #[arg(long, value_delimiter = ',')]
    k: Vec<usize>,
    /// greedy, exhaustive, or plugin:<name> (empty, budgeted-greedy, random-probe[:q])
    #[arg(long, default_value = "greedy")]
    strategy: String,
    #[arg(long, value_enum, default_value_t = Mode::Deterministic)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BetaMode {
    Exact,
    Greedy,
}

#[derive(Args)]
struct BetaArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = BetaMode::Exact)]
    mode: BetaMode,
}

#[derive(Clone, Copy, ValueEnum)]
enum FitModel {
    Nb,
    Nblogn,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// mis, mm, or mm-auto
    #[arg(long)]
    algo: String,
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    fit: Option<FitModel>,
    #[arg(long, default_value_t = betagraph::mm::DEFAULT_CAP_CONSTANT)]
    cap_constant: u64,
    /// Record wall-clock time (makes the CSV nondeterministic).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Task {
    Vc,
    CaroWei,
    MmLine,
}

#[derive(Args)]
struct AppsArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    task: Task,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Mis(a) => mis(a),
        Command::Mm(a) => mm(a),
        Command::Adversary(a) => adversary(a),
        Command::Beta(a) => beta(a),
        Command::Bench(a) => bench(a),
        Command::Apps(a) => apps(a),
    };
    match result {
        Ok(code) => code,
        // output piped into something like `head`
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn generate(a: GenerateArgs) -> Result<ExitCode> {
    let g = a.family.spec(a.n, a.seed)?.generate()?;
    write_graph(&g, &a.out)?;
    println!("wrote {} (n={}, m={})", a.out.display(), g.n(), g.m());
    Ok(ExitCode::SUCCESS)
}

fn read_order(arg: &str, g: &Graph, pc: &mut ProbeCounter) -> Result<Vec<usize>> {
    match arg {
        "identity" => Ok(identity_order(g.n())),
        "caro-wei" => betagraph::mis::degree_order(g, pc),
        _ => {
            let path = arg
                .strip_prefix("file:")
                .ok_or_else(|| Error::InvalidInput(format!("unknown order {arg:?}")))?;
            let text = std::fs::read_to_string(path)?;
            text.split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::InvalidInput(format!("bad vertex id {t:?} in {path}")))
                })
                .collect()
        }
    }
}

fn mis(a: MisArgs) -> Result<ExitCode> {
    let g = read_graph(&a.input)?;
    let mut pc = ProbeCounter::new();
    let (set, stats) = if a.order == "caro-wei" {
        caro_wei_mis(&g, &mut pc)?
    } else {
        let order = read_order(&a.order, &g, &mut pc)?;
        greedy_mis(&g, &order, &mut pc)?
    };
    println!(
        "mis size {} | marks {} | scanned {} | work {} | probes {}",
        set.len(),
        stats.marks_set,
        stats.vertices_scanned,
        stats.work,
        pc.total()
    );
    if let Some(path) = a.stats_out {
        let mut w = csv::Writer::from_writer(create(&path)?);
        w.write_record([
            "n",
            "m",
            "order",
            "mis_size",
            "marks_set",
            "vertices_scanned",
            "work",
            "degree_probes",
            "neighbor_probes",
        ])?;
        w.write_record([
            g.n().to_string(),
            g.m().to_string(),
            a.order.clone(),
            set.len().to_string(),
            stats.marks_set.to_string(),
            stats.vertices_scanned.to_string(),
            stats.work.to_string(),
            pc.degree_probes().to_string(),
            pc.neighbor_probes().to_string(),
        ])?;
        w.flush()?;
    }
    Ok(ExitCode::SUCCESS)
}

enum BetaChoice {
    Auto,
    Fixed(usize),
}

fn mm(a: MmArgs) -> Result<ExitCode> {
    let g = read_graph(&a.input)?;
    let choice = match a.beta.as_str() {
        "auto" => BetaChoice::Auto,
        "exact" => BetaChoice::Fixed(neighborhood_independence(&g)?.max(1)),
        s => BetaChoice::Fixed(s.parse().map_err(|_| {
            Error::InvalidInput(format!(
                "--beta expects an integer, auto or exact, got {s:?}"
            ))
        })?),
    };
    let mut writer = match &a.stats_out {
        Some(p) => {
            let mut w = csv::Writer::from_writer(create(p)?);
            w.write_record([
                "trial",
                "seed",
                "beta",
                "matching_size",
                "unmatched",
                "iterations",
                "low_degree_scans",
                "successes",
                "rounds",
                "probes",
                "maximal",
            ])?;
            Some(w)
        }
        None => None,
    };
    let mut all_maximal = true;
    for trial in 0..a.trials {
        let seed = a.seed.wrapping_add(trial as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pc = ProbeCounter::new();
        let (beta_label, out): (String, MmOutcome) = match choice {
            BetaChoice::Auto => (
                "auto".into(),
                mm_unknown_beta(&g, &mut rng, &mut pc, a.cap_constant)?,
            ),
            BetaChoice::Fixed(b) => (
                b.to_string(),
                randomized_greedy_mm(&g, b, &mut rng, &mut pc, None)?,
            ),
        };
        let maximal = is_maximal_matching(&g, &out.matching);
        all_maximal &= maximal;
        println!(
            "trial {trial} seed {seed}: |M|={} unmatched={} iterations={} rounds={} probes={} maximal={maximal}",
            out.matching.len(),
            out.matching.unmatched_count(),
            out.stats.iterations,
            out.stats.guess_rounds.len().max(1),
            pc.total()
        );
        if let Some(w) = writer.as_mut() {
            w.write_record([
                trial.to_string(),
                seed.to_string(),
                beta_label,
                out.matching.len().to_string(),
                out.matching.unmatched_count().to_string(),
                out.stats.iterations.to_string(),
                out.stats.low_degree_scans.to_string(),
                out.stats.successes.to_string(),
                out.stats.guess_rounds.len().max(1).to_string(),
                pc.total().to_string(),
                maximal.to_string(),
            ])?;
        }
    }
    if let Some(mut w) = writer {
        w.flush()?;
    }
    Ok(if all_maximal {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn adversary(a: AdversaryArgs) -> Result<ExitCode> {
    if a.k.is_empty() {
        return Err(Error::InvalidInput("--k needs at least one value".into()));
    }
    let name = a.strategy.strip_prefix("plugin:").unwrap_or(&a.strategy);
    let mode = match a.mode {
        Mode::Deterministic => ChoiceMode::Deterministic,
        Mode::Random => ChoiceMode::Random(a.seed),
    };
    let mut report = match &a.report {
        Some(p) => {
            let mut w = csv::Writer::from_writer(create(p)?);
            w.write_record(["k", "queries", "refuted", "witness-hash"])?;
            Some(w)
        }
        None => None,
    };
    let mut all_respected = true;
    for &k in &a.k {
        let mut strategy = strategy_by_name(name, a.seed)?;
        let v = referee(strategy.as_mut(), k, mode)?;
        all_respected &= v.lower_bound_respected();
        println!(
            "k={k} n={} strategy={} queries={} budget(2k^2)={} refuted={}{}",
            10 * k,
            v.strategy,
            v.queries,
            v.budget,
            v.refuted,
            v.reason
                .as_deref()
                .map(|r| format!(": {r}"))
                .unwrap_or_default()
        );
        if let Some(w) = report.as_mut() {
            w.write_record([
                k.to_string(),
                v.queries.to_string(),
                v.refuted.to_string(),
                v.witness_hash().unwrap_or_default(),
            ])?;
        }
    }
    if let Some(mut w) = report {
        w.flush()?;
    }
    Ok(if all_respected {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn beta(a: BetaArgs) -> Result<ExitCode> {
    let g = read_graph(&a.input)?;
    let value = match a.mode {
        BetaMode::Exact => neighborhood_independence(&g)?,
        BetaMode::Greedy => greedy_beta_lower_bound(&g),
    };
    println!("{value}");
    Ok(ExitCode::SUCCESS)
}

fn bench(a: BenchArgs) -> Result<ExitCode> {
    let template = a.family.spec(0, 0)?;
    let algorithm: Algorithm = a.algo.parse()?;
    let mut cfg = SweepConfig::new(template, a.n.clone(), a.trials, algorithm, a.seed);
    cfg.cap_constant = a.cap_constant;
    cfg.timing = a.timing;
    let rows = sweep(&cfg)?;
    match &a.out {
        Some(p) => write_csv(&rows, create(p)?)?,
        None => write_csv(&rows, io::stdout().lock())?,
    }
    if let Some(model) = a.fit {
        let model = match model {
            FitModel::Nb => Model::NBeta,
            FitModel::Nblogn => Model::NBetaLogN,
        };
        let report = fit(&rows, model)?;
        eprint!("{report}");
        if let Some(p) = &a.out {
            let fit_path = p.with_extension("fit.csv");
            write_fit_csv(&report, create(&fit_path)?)?;
        }
    }
    let violations = rows.iter().filter(|r| !r.within_hard_bound()).count();
    if violations > 0 {
        eprintln!("{violations} run(s) exceeded the MIS work bound n + n*beta");
        return Ok(ExitCode::FAILURE);
    }
    io::stdout().flush()?;
    Ok(ExitCode::SUCCESS)
}

fn apps(a: AppsArgs) -> Result<ExitCode> {
    let g = read_graph(&a.input)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut pc = ProbeCounter::new();
    let mut out = io::stdout().lock();
    match a.task {
        Task::Vc => {
            let c = approx_vertex_cover(&g, &mut rng, &mut pc)?;
            writeln!(out, "vertex cover size {} (probes {})", c.len(), pc.total())?;
            writeln!(out, "{}", join(&c.sorted_members()))?;
        }
        Task::CaroWei => {
            let s = caro_wei_independent_set(&g, &mut pc)?;
            writeln!(
                out,
                "independent set size {} (probes {})",
                s.len(),
                pc.total()
            )?;
            writeln!(out, "{}", join(&s.sorted_members()))?;
        }
        Task::MmLine => {
            let m = mm_via_line_graph(&g, &mut rng, &mut pc)?;
            writeln!(out, "matching size {}", m.len())?;
            for (u, v) in m.sorted_edges() {
                writeln!(out, "{u} {v}")?;
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn join(ids: &[usize]) -> String {
    ids.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
