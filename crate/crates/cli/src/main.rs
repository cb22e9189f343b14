use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use kslab::experiment::{
    analyze, degree_law_check, read_samples, run_monte_carlo, sample_graph, samples_csv, sweep_core,
    AnalysisReport, ExperimentConfig, SampleRecord,
};
use kslab::fluid::trajectory_csv;
use kslab::gaussian::{limiting_sigma44, prediction_csv, CovarianceModel};
use kslab::graph::io::{read_graph, write_graph};
use kslab::ks::{trace_csv, KsRun, StopReason, StopRule};
use kslab::oracles::{core_observables, RankMode};
use kslab::RngStream;

/// Karp-Sipser leaf removal on sparse random graphs.
#[derive(Parser)]
#[command(name = "kslab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one graph and write it in the text graph format.
    Generate {
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Run leaf removal on one graph, read from a file or sampled.
    KsRun {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Input graph; sampled from the configured model when absent.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Write the per-step statistics here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the leafless core here, with vertices relabelled 0..k.
        #[arg(long = "core-out")]
        core_out: Option<PathBuf>,
    },
    /// Monte Carlo samples of the matching number, rank and stopping times.
    Mc {
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Fluid-limit trajectory table.
    Fluid {
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Predicted covariance at the edge threshold on the default ladder.
    Variance {
        /// Average degrees, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        c: Vec<f64>,
        /// `fixed`, `binomial`, or `both`.
        #[arg(long, default_value = "both")]
        model: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summarise a samples file.
    Analyze {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Samples CSV written by `mc`.
        #[arg(long)]
        input: PathBuf,
    },
    /// Mean core fraction across a grid of average degrees.
    Sweep {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Average degrees, comma separated.
        #[arg(long = "c-grid", value_delimiter = ',', required = true)]
        c_grid: Vec<f64>,
    },
}

/// Experiment keys. Each flag overrides the same key from `--config`.
#[derive(Args)]
struct ConfigArgs {
    /// File of `key = value` lines using the flag names below as keys.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    samples: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    matching: Option<String>,
    #[arg(long)]
    rank: Option<String>,
    #[arg(long)]
    core: Option<String>,
    #[arg(long = "degree-law")]
    degree_law: Option<String>,
    #[arg(long)]
    kcap: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    report: Option<String>,
    #[arg(long)]
    workers: Option<String>,
}

impl ConfigArgs {
    fn resolve(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::from_file(p)?,
            None => ExperimentConfig::default(),
        };
        let flags = [
            ("model", &self.model),
            ("n", &self.n),
            ("c", &self.c),
            ("delta", &self.delta),
            ("samples", &self.samples),
            ("seed", &self.seed),
            ("matching", &self.matching),
            ("rank", &self.rank),
            ("core", &self.core),
            ("degree-law", &self.degree_law),
            ("kcap", &self.kcap),
            ("out", &self.out),
            ("report", &self.report),
            ("workers", &self.workers),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn predicted_sigma44(cfg: &ExperimentConfig) -> Option<f64> {
    if cfg.c > std::f64::consts::E {
        return None;
    }
    let rep = limiting_sigma44(cfg.c, cfg.model.covariance_model()).ok()?;
    if let Some(w) = &rep.warning {
        eprintln!("warning: {w}");
    }
    Some(rep.limit)
}

/// Writes the text report to `path` and the CSV report next to it.
fn write_report(path: &Path, text: &str, rep: &AnalysisReport) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    let mut csv_path = path.as_os_str().to_owned();
    csv_path.push(".csv");
    let csv_path = PathBuf::from(csv_path);
    fs::write(&csv_path, rep.to_csv()).with_context(|| format!("writing {}", csv_path.display()))
}

fn report(cfg: &ExperimentConfig, rows: &[SampleRecord]) -> Result<()> {
    let rep = analyze(rows, cfg.n, cfg.c, predicted_sigma44(cfg))?;
    let mut text = rep.to_text();
    if cfg.degree_law {
        let d = degree_law_check(cfg)?;
        let _ = writeln!(text, "[degree law at delta = {}]", cfg.delta.unwrap_or_default());
        let _ = writeln!(text, "  mean TV          {:.6}", d.mean_tv);
        let _ = writeln!(text, "  D/sqrt(n) p90    {:.4}", d.d_scaled_p90);
        let _ = writeln!(text, "  skipped          {}", d.skipped);
    }
    match &cfg.report {
        Some(p) => write_report(p, &text, &rep),
        None => emit(None, &text),
    }
}

fn ks_run(cfg: &ExperimentConfig, graph: Option<&Path>, trace: Option<&Path>, core_out: Option<&Path>) -> Result<()> {
    let mut rng = RngStream::new(cfg.seed, 0);
    let g = match graph {
        Some(p) => read_graph(p)?,
        None => sample_graph(cfg.model, cfg.n, cfg.c, &mut rng)?,
    };
    let mut run = KsRun::new(&g);
    let mut out = String::new();
    let _ = writeln!(out, "n = {}, m = {}", g.n(), g.edge_count());
    if let Some(d) = cfg.delta {
        let reason = run.advance(StopRule::EdgesAtMost(d), &mut rng)?;
        let st = run.stats();
        match reason {
            StopReason::EdgeThreshold => {
                let _ = writeln!(out, "I_delta = {} (X1 {}, X2 {}, X3 {})", st.steps, st.leaves, st.heavy, st.edges);
            }
            _ => {
                let _ = writeln!(out, "I_delta undefined: leaves ran out at step {}", st.steps);
            }
        }
    }
    run.advance(StopRule::NoLeaves, &mut rng)?;
    let t = run.finish(StopReason::NoLeaves);
    let _ = writeln!(out, "I = {}", t.steps());
    let _ = writeln!(out, "core: {} vertices, {} edges", t.core.n(), t.core.edge_count());
    if cfg.matching && g.is_simple() {
        let (nu, rk) = core_observables(&t.core, RankMode::Modular { verify: true }, &mut rng)?;
        let _ = writeln!(out, "nu = {}", t.steps() + nu);
        if cfg.rank {
            let _ = writeln!(out, "rk = {}", 2 * t.steps() + rk);
        }
    }
    if let Some(p) = trace {
        fs::write(p, trace_csv(&t)).with_context(|| format!("writing {}", p.display()))?;
    }
    if let Some(p) = core_out {
        fs::write(p, write_graph(&t.core)).with_context(|| format!("writing {}", p.display()))?;
    }
    emit(None, &out)
}

fn variance(cs: &[f64], model: &str, out: Option<&Path>) -> Result<()> {
    let models: Vec<CovarianceModel> = match model {
        "both" => vec![CovarianceModel::FixedEdges, CovarianceModel::BinomialEdges],
        m => vec![m.parse()?],
    };
    let mut reports = Vec::new();
    for &c in cs {
        for &m in &models {
            let r = limiting_sigma44(c, m)?;
            if let Some(w) = &r.warning {
                eprintln!("warning: c = {c}, {m}: {w}");
            }
            eprintln!("c = {c}, {m}: sigma44 limit {:.6}", r.limit);
            reports.push(r);
        }
    }
    emit(out, &prediction_csv(&reports))
}

fn sweep(cfg: &ExperimentConfig, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        bail!("empty c grid");
    }
    let rows = sweep_core(cfg.model, cfg.n, grid, cfg.samples as usize, cfg.seed, cfg.workers)?;
    let mut out = String::from("c,mean,stderr\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.c, r.mean, r.stderr);
    }
    emit(cfg.out.as_deref(), &out)
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Generate { cfg } => {
            let cfg = cfg.resolve()?;
            let g = sample_graph(cfg.model, cfg.n, cfg.c, &mut RngStream::new(cfg.seed, 0))?;
            emit(cfg.out.as_deref(), &write_graph(&g))
        }
        Command::KsRun { cfg, graph, trace, core_out } => {
            ks_run(&cfg.resolve()?, graph.as_deref(), trace.as_deref(), core_out.as_deref())
        }
        Command::Mc { cfg } => {
            let cfg = cfg.resolve()?;
            let rows = run_monte_carlo(&cfg)?;
            match &cfg.out {
                Some(p) => kslab::experiment::write_samples(p, &rows)?,
                None => emit(None, &samples_csv(&rows))?,
            }
            if cfg.report.is_some() {
                report(&cfg, &rows)?;
            }
            Ok(())
        }
        Command::Fluid { c, points, out } => emit(out.as_deref(), &trajectory_csv(c, points)?),
        Command::Variance { c, model, out } => variance(&c, &model, out.as_deref()),
        Command::Analyze { cfg, input } => {
            let cfg = cfg.resolve()?;
            let rows = read_samples(&input)?;
            report(&cfg, &rows)
        }
        Command::Sweep { cfg, c_grid } => sweep(&cfg.resolve()?, &c_grid),
    }
}
