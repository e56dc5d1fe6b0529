//! `dss-distill`: decide finite-copy distillability of bipartite states,
//! synthesize the projective protocol, and classify two-qubit states.
//!
//! Exit statuses are a stable contract: 0 success, 2 parse/validation,
//! 3 resource caps, 4 domain errors (wrong dimensions for the command).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use dss_core::dss::{find_dss_with, maximal_dss_partition, zero_pattern, SearchConfig};
use dss_core::io::{
    ClassifyResults, DssRecordJson, DssResults, EigenResults, InputStamp, NptResults,
    OutcomeJson, ProtocolResults, Report, ReportResults, StateFile,
};
use dss_core::protocol::finite_copy_yield_capped;
use dss_core::state::BipartiteDensity;
use dss_core::two_qubit::classify_finite_distillable;
use dss_core::{Error, MAX_DIM, SEARCH_BUDGET, TOL};

/// Environment variable overriding the tensor-power dimension cap.
const MAX_DIM_ENV: &str = "DSS_DISTILL_MAX_DIM";

#[derive(Parser)]
#[command(
    name = "dss-distill",
    about = "Distillable-subspace analysis of bipartite density matrices",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON state file ({"dim_a", "dim_b", "matrix": [[[re,im],...],...]}).
    statefile: PathBuf,
    /// Absolute tolerance for validation and rank decisions.
    #[arg(long, default_value_t = TOL)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues, eigenvectors and rank of the state.
    Eigen(CommonArgs),
    /// Find distillable subspaces of the n-copy tensor power.
    Dss {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of copies to analyze.
        #[arg(long, default_value_t = 1)]
        copies: usize,
        /// Smallest subspace size to search.
        #[arg(long, default_value_t = 2)]
        m_min: usize,
        /// Largest subspace size to search (default: min local dimension).
        #[arg(long)]
        m_max: Option<usize>,
        /// Report the maximal disjoint partition instead of all records.
        #[arg(long)]
        partition: bool,
        /// Worker threads for the subset scan (results are identical for
        /// any worker count).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Cap on enumerated subset pairs.
        #[arg(long, default_value_t = SEARCH_BUDGET)]
        budget: u128,
    },
    /// Synthesize and apply the one-way projective protocol for n copies.
    Protocol {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 1)]
        copies: usize,
    },
    /// Classify a two-qubit state for finite-copy distillability.
    Classify(ClassifyArgs),
    /// Partial-transpose (NPT) test.
    Npt(CommonArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// JSON state file ({"dim_a", "dim_b", "matrix": [[[re,im],...],...]}).
    statefile: PathBuf,
    /// Absolute amplitude tolerance for the form matcher (also used for
    /// validation).
    #[arg(long, default_value_t = dss_core::two_qubit::MATCH_TOL)]
    tol: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{}", report.to_canonical_json());
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_class(&err))
        }
    }
}

/// Stable mapping from error kinds to exit statuses.
fn exit_class(err: &Error) -> u8 {
    match err {
        Error::DimensionCapExceeded { .. } | Error::EnumerationBudgetExceeded { .. } => 3,
        Error::NotTwoQubit { .. } => 4,
        _ => 2,
    }
}

fn dimension_cap() -> usize {
    std::env::var(MAX_DIM_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(MAX_DIM)
}

fn load_state(path: &PathBuf, tol: f64) -> Result<(BipartiteDensity, InputStamp), Error> {
    let bytes = std::fs::read(path).map_err(|e| Error::StateFile {
        reason: format!("cannot read {}: {e}", path.display()),
    })?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| Error::StateFile {
        reason: format!("{} is not UTF-8: {e}", path.display()),
    })?;
    let file = StateFile::from_json(&text)?;
    let rho = file.to_density(tol)?;
    let stamp = InputStamp {
        path: path.display().to_string(),
        sha256: hex_digest(&bytes),
    };
    Ok((rho, stamp))
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn command_echo() -> Vec<String> {
    std::env::args().skip(1).collect()
}

fn run(cli: Cli) -> Result<Report, Error> {
    match cli.command {
        Command::Eigen(common) => {
            let (rho, stamp) = load_state(&common.statefile, common.tol)?;
            let eig = rho.eigensystem();
            let eigenvectors = (0..rho.dim())
                .map(|k| dss_core::io::vector_pairs(&eig.eigenvector(k)))
                .collect();
            let results = ReportResults::Eigen(EigenResults {
                dim_a: rho.dim_a(),
                dim_b: rho.dim_b(),
                eigenvalues: eig.eigenvalues.clone(),
                rank: rho.rank(),
                eigenvectors,
            });
            Ok(Report::new(command_echo(), stamp, common.tol, results))
        }
        Command::Dss {
            common,
            copies,
            m_min,
            m_max,
            partition,
            jobs,
            budget,
        } => {
            let (rho, stamp) = load_state(&common.statefile, common.tol)?;
            let power = rho.tensor_power_capped(copies.max(1), dimension_cap())?;
            let m_max = m_max.unwrap_or_else(|| power.dim_a().min(power.dim_b()));
            let records = if partition {
                maximal_dss_partition(&power, common.tol)?
            } else {
                let config = SearchConfig::new(m_min, m_max, common.tol)
                    .with_budget(budget)
                    .with_jobs(jobs);
                find_dss_with(&power, &config)?
            };
            let mut records_json = Vec::with_capacity(records.len());
            for rec in &records {
                let pattern = zero_pattern(&power, rec)?;
                records_json.push(DssRecordJson::from_record(rec, &pattern));
            }
            let results = ReportResults::Dss(DssResults {
                copies: copies.max(1),
                m_min,
                m_max,
                partition,
                records: records_json,
            });
            Ok(Report::new(command_echo(), stamp, common.tol, results))
        }
        Command::Protocol { common, copies } => {
            let (rho, stamp) = load_state(&common.statefile, common.tol)?;
            let yield_report = finite_copy_yield_capped(&rho, copies.max(1), dimension_cap())?;
            let results = ReportResults::Protocol(ProtocolResults {
                copies: copies.max(1),
                projectors: yield_report.description.clone(),
                outcomes: yield_report
                    .outcomes
                    .iter()
                    .map(OutcomeJson::from_outcome)
                    .collect(),
                total_ebits: yield_report.total_ebits,
                total_filtered_ebits: yield_report.total_filtered_ebits,
                cross_probability: yield_report.cross_probability,
            });
            Ok(Report::new(command_echo(), stamp, common.tol, results))
        }
        Command::Classify(common) => {
            let (rho, stamp) = load_state(&common.statefile, common.tol)?;
            let classification = classify_finite_distillable(&rho, common.tol.max(1e-12))?;
            let npt = rho.is_npt(TOL)?;
            let results = ReportResults::Classify(ClassifyResults::from_classification(
                &classification,
                npt,
            ));
            Ok(Report::new(command_echo(), stamp, common.tol, results))
        }
        Command::Npt(common) => {
            let (rho, stamp) = load_state(&common.statefile, common.tol)?;
            let results = ReportResults::Npt(NptResults {
                min_pt_eigenvalue: rho.min_pt_eigenvalue()?,
                npt: rho.is_npt(common.tol)?,
            });
            Ok(Report::new(command_echo(), stamp, common.tol, results))
        }
    }
}
