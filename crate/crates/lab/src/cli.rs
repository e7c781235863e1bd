//! `rgspectra` command-line interface.
//!
//! Exit codes: 0 when every verdict holds, 1 when any verdict fails, 2 on
//! usage, configuration or IO errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rgspectra_core::eigenvalues;
use rgspectra_core::energy::{graph_energy, laplacian_energy, EnergyReport};
use rgspectra_core::freeconv::{abs_moment_bounds, psi_moments, DEFAULT_DEGREE};
use rgspectra_core::rgraph::{self, sigma, GraphSample};
use rgspectra_core::specdist::esd;
use serde_json::json;

use crate::config::{
    parse_list, ConfigFile, ExperimentConfig, ExperimentKind, DEFAULT_SEED, DEFAULT_TRIALS,
};
use crate::error::{LabError, Result};
use crate::{experiment, formats, output};

#[derive(Debug, Parser)]
#[command(
    name = "rgspectra",
    version,
    about = "Spectra and energies of Erdős–Rényi random graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample G(n, p) and write it as JSON.
    Sample(GraphArgs),
    /// Adjacency energy of one sample.
    Energy(GraphArgs),
    /// Laplacian energy of one sample.
    Lenergy(GraphArgs),
    /// Eigenvalues of a matrix built from one sample, one per line.
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = MatrixKind::Adjacency)]
        matrix: MatrixKind,
    },
    /// Empirical spectral distribution of a matrix scaled by 1/(σ√n).
    Esd {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = MatrixKind::Centered)]
        matrix: MatrixKind,
    },
    /// Exact moments of semicircle ⊞ standard normal.
    Freeconv {
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded Monte Carlo campaign.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Read the graph from a JSON file written by `sample` instead.
    #[arg(long, conflicts_with_all = ["n", "p"])]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Experiment kind; may instead come from the config file.
    pub kind: Option<ExperimentKind>,
    /// Comma-separated graph orders.
    #[arg(long)]
    pub n: Option<String>,
    /// Comma-separated edge probabilities.
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub margin: Option<f64>,
    /// Trial CSV path; the summary goes next to it as `.summary.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Format printed to stdout when `--out` is absent.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
    Gutman,
    Centered,
    L1,
    L2,
}

impl clap::ValueEnum for ExperimentKind {
    fn value_variants<'a>() -> &'a [Self] {
        &ExperimentKind::ALL
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.name()))
    }
}

/// Result of a successful command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    Failed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Passed => 0,
            Outcome::Failed => 1,
        }
    }
}

fn io_err(e: std::io::Error) -> LabError {
    LabError::io("<stdout>", e)
}

fn emit(out: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| LabError::io(path, e)),
        None => stdout.write_all(bytes).map_err(io_err),
    }
}

fn load_graph(args: &GraphArgs) -> Result<GraphSample> {
    if let Some(path) = &args.graph {
        let file = fs::File::open(path).map_err(|e| LabError::io(path, e))?;
        return formats::read_graph(file);
    }
    let n = args
        .n
        .ok_or_else(|| LabError::Config("--n is required".into()))?;
    let p = args
        .p
        .ok_or_else(|| LabError::Config("--p is required".into()))?;
    Ok(GraphSample::sample(n, p, args.seed)?)
}

fn build_matrix(g: &GraphSample, kind: MatrixKind) -> rgraph::SymMatrix {
    match kind {
        MatrixKind::Adjacency => rgraph::adjacency(g),
        MatrixKind::Laplacian => rgraph::laplacian(g),
        MatrixKind::Gutman => rgraph::gutman_matrix(g),
        MatrixKind::Centered => rgraph::centered_adjacency(g, g.p()),
        MatrixKind::L1 => rgraph::l1_matrix(g, g.p()),
        MatrixKind::L2 => rgraph::l2_matrix(g, g.p()),
    }
}

fn energy_json(g: &GraphSample, r: &EnergyReport) -> serde_json::Value {
    json!({
        "n": g.n(),
        "p": g.p(),
        "seed": g.seed(),
        "edge_count": g.edge_count(),
        "energy": r.raw,
        "normalized": r.normalized,
        "sigma_normalized": r.sigma_normalized(),
    })
}

fn print_json(value: &serde_json::Value, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(out, text.as_bytes(), stdout)
}

/// Resolves experiment flags over an optional config file.
pub fn experiment_config(args: &ExperimentArgs) -> Result<(ExperimentConfig, Format)> {
    let file = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let kind = args
        .kind
        .or(file.kind)
        .ok_or_else(|| LabError::Config("no experiment kind given".into()))?;
    let n_list = match &args.n {
        Some(s) => parse_list(s, "n")?,
        None => file
            .n_list
            .ok_or_else(|| LabError::Config("--n is required".into()))?,
    };
    let p_list = match &args.p {
        Some(s) => parse_list(s, "p")?,
        None => file
            .p_list
            .ok_or_else(|| LabError::Config("--p is required".into()))?,
    };
    let trials = args.trials.or(file.trials).unwrap_or(DEFAULT_TRIALS);
    let seed = args.seed.or(file.seed).unwrap_or(DEFAULT_SEED);
    let mut cfg = ExperimentConfig::new(kind, n_list, p_list, trials, seed);
    if let Some(m) = args.margin.or(file.margin) {
        cfg.margin = m;
    }
    cfg.out = args.out.clone().or(file.out);
    let format = match (args.format, file.format.as_deref()) {
        (Some(f), _) => f,
        (None, None) => Format::Csv,
        (None, Some(s)) => Format::from_str(s, true)
            .map_err(|_| LabError::Config(format!("unknown format `{s}`")))?,
    };
    cfg.validate()?;
    Ok((cfg, format))
}

/// Runs one command, writing its primary output to `stdout`.
pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<Outcome> {
    match cli.command {
        Command::Sample(args) => {
            let g = load_graph(&args)?;
            let mut buf = Vec::new();
            formats::write_graph(&g, &mut buf)?;
            emit(args.out.as_deref(), &buf, stdout)?;
        }
        Command::Energy(args) => {
            let g = load_graph(&args)?;
            print_json(
                &energy_json(&g, &graph_energy(&g)?),
                args.out.as_deref(),
                stdout,
            )?;
        }
        Command::Lenergy(args) => {
            let g = load_graph(&args)?;
            print_json(
                &energy_json(&g, &laplacian_energy(&g)?),
                args.out.as_deref(),
                stdout,
            )?;
        }
        Command::Spectrum { graph, matrix } => {
            let g = load_graph(&graph)?;
            let s = eigenvalues(&build_matrix(&g, matrix))?;
            let mut buf = Vec::new();
            for v in s.values() {
                writeln!(buf, "{v:.16e}").map_err(io_err)?;
            }
            emit(graph.out.as_deref(), &buf, stdout)?;
        }
        Command::Esd { graph, matrix } => {
            let g = load_graph(&graph)?;
            let s = sigma(g.p());
            if s == 0.0 {
                return Err(LabError::Config("esd needs 0 < p < 1".into()));
            }
            let spectrum = eigenvalues(&build_matrix(&g, matrix))?;
            let e = esd(&spectrum, 1.0 / (s * (g.n() as f64).sqrt()))?;
            let mut buf = Vec::new();
            formats::write_esd(&e, &mut buf)?;
            emit(graph.out.as_deref(), &buf, stdout)?;
        }
        Command::Freeconv { degree, out } => {
            let m = psi_moments(degree)?;
            let mut moments = Vec::new();
            formats::write_moments(&m, &mut moments)?;
            let moments: serde_json::Value = serde_json::from_slice(&moments)?;
            let mut value = json!({ "degree": degree, "moments": moments });
            if degree >= 4 {
                let b = abs_moment_bounds(&m.moment(2), &m.moment(4))?;
                value["abs_moment_bracket"] = json!([b.lower, b.upper]);
            }
            print_json(&value, out.as_deref(), stdout)?;
        }
        Command::Experiment(args) => {
            let (cfg, format) = experiment_config(&args)?;
            let records = experiment::run(&cfg)?;
            let summary = output::summarize(&records, &cfg)?;
            if cfg.out.is_some() {
                let written = output::write_results(&records, &cfg)?;
                eprintln!(
                    "wrote {} and {}",
                    written.csv.display(),
                    written.summary.display()
                );
            } else {
                match format {
                    Format::Csv => output::write_csv(cfg.kind, &records, &mut *stdout)?,
                    Format::Json => print_json(&serde_json::to_value(&summary)?, None, stdout)?,
                }
            }
            if !summary.all_passed {
                return Ok(Outcome::Failed);
            }
        }
    }
    Ok(Outcome::Passed)
}
