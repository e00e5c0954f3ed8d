//! Scaling sweeps over generated families, CSV output, and least-squares fits
//! of measured counts against `c·n·β` and `c·n·β·ln n`.
//!
//! Acceptance is count based; `wall_nanos` is recorded only on request and is
//! otherwise written as 0 so reruns stay byte-identical.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::{Family, GenSpec, Instance};
use crate::graph::{AdjacencyArray, ProbeCounter};
use crate::mis::{greedy_mis, identity_order};
use crate::mm::{mm_unknown_beta, randomized_greedy_mm, DEFAULT_CAP_CONSTANT};
use crate::verify::neighborhood_independence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Mis,
    Mm,
    MmAuto,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Mis => "mis",
            Algorithm::Mm => "mm",
            Algorithm::MmAuto => "mm-auto",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mis" => Ok(Algorithm::Mis),
            "mm" => Ok(Algorithm::Mm),
            "mm-auto" => Ok(Algorithm::MmAuto),
            _ => Err(Error::invalid(format!("unknown algorithm {s:?}"))),
        }
    }
}

/// One benchmark row. Column order of the CSV follows field order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunStats {
    pub family: Family,
    pub n: usize,
    /// Upper bound on β used for the run (family bound or exact value); 0 if
    /// none is known.
    pub beta: usize,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub probes: u64,
    /// MIS: vertices scanned. MM: while-loop iterations (all rounds).
    pub iterations: u64,
    /// MIS: `n + Σ_{v ∈ MIS} deg v`. MM: iterations plus low-branch scans.
    pub work: u64,
    pub wall_nanos: u64,
    pub completed: bool,
}

pub const CSV_HEADER: [&str; 10] = [
    "family",
    "n",
    "beta",
    "seed",
    "algorithm",
    "probes",
    "iterations",
    "work",
    "wall_nanos",
    "completed",
];

impl RunStats {
    /// The count that the complexity bounds speak about: MIS work, MM
    /// iterations.
    pub fn primary_count(&self) -> u64 {
        match self.algorithm {
            Algorithm::Mis => self.work,
            Algorithm::Mm | Algorithm::MmAuto => self.iterations,
        }
    }

    /// MIS work `≤ n + n·β`. Vacuous for MM rows and unknown β.
    pub fn within_hard_bound(&self) -> bool {
        match self.algorithm {
            Algorithm::Mis if self.beta > 0 => self.work <= (self.n + self.n * self.beta) as u64,
            _ => true,
        }
    }

    fn record(&self) -> [String; 10] {
        [
            self.family.to_string(),
            self.n.to_string(),
            self.beta.to_string(),
            self.seed.to_string(),
            self.algorithm.to_string(),
            self.probes.to_string(),
            self.iterations.to_string(),
            self.work.to_string(),
            self.wall_nanos.to_string(),
            self.completed.to_string(),
        ]
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub template: GenSpec,
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub algorithm: Algorithm,
    pub seed0: u64,
    pub cap_constant: u64,
    pub timing: bool,
}

impl SweepConfig {
    pub fn new(
        template: GenSpec,
        n_values: Vec<usize>,
        trials: usize,
        algorithm: Algorithm,
        seed0: u64,
    ) -> Self {
        SweepConfig {
            template,
            n_values,
            trials,
            algorithm,
            seed0,
            cap_constant: DEFAULT_CAP_CONSTANT,
            timing: false,
        }
    }
}

/// Seed for trial `trial` at size index `n_index`, derived from `seed0`.
pub fn trial_seed(seed0: u64, n_index: usize, trial: usize) -> u64 {
    // SplitMix64 finalizer over the packed coordinates
    let mut z = seed0
        .wrapping_add((n_index as u64) << 32)
        .wrapping_add(trial as u64)
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// β to report and to feed known-β MM: the family bound, else the exact
/// value when it is computable, else 0.
pub fn beta_for(spec: &GenSpec, instance: &Instance) -> usize {
    if let Some(b) = spec.beta_bound() {
        return b;
    }
    instance
        .as_graph()
        .and_then(|g| neighborhood_independence(g).ok())
        .unwrap_or(0)
}

/// Runs one algorithm on one instance.
pub fn run_once(
    spec: &GenSpec,
    instance: &Instance,
    algorithm: Algorithm,
    cap_constant: u64,
    timing: bool,
) -> Result<RunStats> {
    let beta = beta_for(spec, instance);
    let mut pc = ProbeCounter::new();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let start = Instant::now();
    let (iterations, work, completed) = match algorithm {
        Algorithm::Mis => {
            let order = identity_order(instance.vertex_count());
            let (_, st) = greedy_mis(instance, &order, &mut pc)?;
            (st.vertices_scanned, st.work, true)
        }
        Algorithm::Mm => {
            if beta == 0 && spec.beta_bound().is_none() {
                return Err(Error::invalid(format!(
                    "no β bound known for {}; use mm-auto",
                    spec.family
                )));
            }
            let out = randomized_greedy_mm(instance, beta.max(1), &mut rng, &mut pc, None)?;
            let st = out.stats;
            (
                st.iterations,
                st.iterations + st.low_degree_scans,
                out.completed,
            )
        }
        Algorithm::MmAuto => {
            let out = mm_unknown_beta(instance, &mut rng, &mut pc, cap_constant)?;
            let st = out.stats;
            (
                st.iterations,
                st.iterations + st.low_degree_scans,
                out.completed,
            )
        }
    };
    let wall_nanos = if timing {
        start.elapsed().as_nanos() as u64
    } else {
        0
    };
    Ok(RunStats {
        family: spec.family,
        n: instance.vertex_count(),
        beta,
        seed: spec.seed,
        algorithm,
        probes: pc.total(),
        iterations,
        work,
        wall_nanos,
        completed,
    })
}

/// One row per `(n, trial)`, in that order, whatever the execution order.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<RunStats>> {
    if cfg.n_values.is_empty() {
        return Err(Error::invalid("sweep needs at least one n"));
    }
    if cfg.n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("n values must be strictly ascending"));
    }
    let jobs: Vec<(usize, usize, usize)> = cfg
        .n_values
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| (0..cfg.trials).map(move |t| (i, n, t)))
        .collect();
    jobs.par_iter()
        .map(|&(i, n, t)| {
            let spec = GenSpec {
                n,
                seed: trial_seed(cfg.seed0, i, t),
                ..cfg.template.clone()
            };
            let instance = spec.instance().map_err(|e| {
                Error::invalid(format!(
                    "generating {} with n={n}, trial {t}: {e}",
                    spec.family
                ))
            })?;
            run_once(
                &spec,
                &instance,
                cfg.algorithm,
                cfg.cap_constant,
                cfg.timing,
            )
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[RunStats], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// `c·n·β`
    NBeta,
    /// `c·n·β·ln n`
    NBetaLogN,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::NBeta => "nb",
            Model::NBetaLogN => "nblogn",
        }
    }

    pub fn regressor(self, n: usize, beta: usize) -> f64 {
        let base = n as f64 * beta as f64;
        match self {
            Model::NBeta => base,
            Model::NBetaLogN => base * (n as f64).max(1.0).ln(),
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nb" => Ok(Model::NBeta),
            "nblogn" => Ok(Model::NBetaLogN),
            _ => Err(Error::invalid(format!(
                "unknown model {s:?} (nb or nblogn)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub n: usize,
    pub mean_count: f64,
    pub predicted: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub model: Model,
    pub fitted_c: f64,
    pub r_squared: f64,
    pub residuals: Vec<Residual>,
}

/// Least squares through the origin of [`RunStats::primary_count`] against
/// the model regressor.
pub fn fit(rows: &[RunStats], model: Model) -> Result<FitReport> {
    if rows.is_empty() {
        return Err(Error::invalid("nothing to fit"));
    }
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (model.regressor(r.n, r.beta), r.primary_count() as f64))
        .collect();
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("model regressor is zero on every row"));
    }
    let c = points.iter().map(|(x, y)| x * y).sum::<f64>() / sxx;
    let mean_y = points.iter().map(|(_, y)| y).sum::<f64>() / points.len() as f64;
    let ss_res: f64 = points.iter().map(|(x, y)| (y - c * x).powi(2)).sum();
    let ss_tot: f64 = points.iter().map(|(_, y)| (y - mean_y).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 {
        if ss_res == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };

    let mut ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    let residuals = ns
        .into_iter()
        .map(|n| {
            let at: Vec<&RunStats> = rows.iter().filter(|r| r.n == n).collect();
            let mean_count =
                at.iter().map(|r| r.primary_count() as f64).sum::<f64>() / at.len() as f64;
            let mean_x =
                at.iter().map(|r| model.regressor(r.n, r.beta)).sum::<f64>() / at.len() as f64;
            Residual {
                n,
                mean_count,
                predicted: c * mean_x,
            }
        })
        .collect();
    Ok(FitReport {
        model,
        fitted_c: c,
        r_squared,
        residuals,
    })
}

/// Ordinary least-squares slope of `ln y` on `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 || points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(Error::invalid(
            "log-log slope needs two or more positive points",
        ));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("log-log slope needs distinct x values"));
    }
    Ok(sxy / sxx)
}

impl fmt::Display for FitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "model {}: c = {:.4}, r^2 = {:.4}",
            self.model.name(),
            self.fitted_c,
            self.r_squared
        )?;
        for r in &self.residuals {
            writeln!(
                f,
                "  n={:<8} mean={:<14.2} predicted={:<14.2} residual={:.2}",
                r.n,
                r.mean_count,
                r.predicted,
                r.mean_count - r.predicted
            )?;
        }
        Ok(())
    }
}

/// `model,fitted_c,r_squared` followed by per-n residual rows.
pub fn write_fit_csv<W: Write>(report: &FitReport, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
    w.write_record(["model", "fitted_c", "r_squared"])?;
    w.write_record([
        report.model.name().to_string(),
        report.fitted_c.to_string(),
        report.r_squared.to_string(),
    ])?;
    w.write_record(["n", "mean_count", "predicted"])?;
    for r in &report.residuals {
        w.write_record([
            r.n.to_string(),
            r.mean_count.to_string(),
            r.predicted.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
