//! The JSON state-file format and the deterministic analysis reports the
//! `dss-distill` command-line tool emits.
//!
//! Complex numbers travel as `[re, im]` pairs, matrices as row-major
//! nested arrays. Floats serialize in shortest round-trip form, struct
//! fields in declaration order, so identical inputs and settings produce
//! byte-identical reports.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dss::{DssRecord, ZeroPattern};
use crate::linalg::ComplexMatrix;
use crate::protocol::{ProtocolDescription, ProtocolOutcome};
use crate::state::BipartiteDensity;
use crate::two_qubit::{Classification, WoottersSpectrum};
use crate::{Error, Result};

/// A complex entry on the wire.
pub type CxPair = [f64; 2];

/// On-disk density matrix: local dimensions plus the row-major matrix of
/// `[re, im]` pairs, index convention row = a·dim_b + b.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub dim_a: usize,
    pub dim_b: usize,
    pub matrix: Vec<Vec<CxPair>>,
}

impl StateFile {
    /// Parse a JSON document. Malformed JSON reports line, column and
    /// byte offset.
    pub fn from_json(text: &str) -> Result<StateFile> {
        serde_json::from_str(text).map_err(|e| {
            let offset = byte_offset(text, e.line(), e.column());
            Error::StateFile {
                reason: format!(
                    "malformed JSON at line {}, column {} (byte offset {offset}): {e}",
                    e.line(),
                    e.column()
                ),
            }
        })
    }

    /// Validate into a density matrix; shape problems name the offending
    /// row/column.
    pub fn to_density(&self, tol: f64) -> Result<BipartiteDensity> {
        let d = self.dim_a * self.dim_b;
        if self.matrix.len() != d {
            return Err(Error::StateFile {
                reason: format!(
                    "matrix has {} rows, expected dim_a*dim_b = {d}",
                    self.matrix.len()
                ),
            });
        }
        let mut m = ComplexMatrix::zeros(d, d);
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != d {
                return Err(Error::StateFile {
                    reason: format!("row {i} has {} entries, expected {d}", row.len()),
                });
            }
            for (j, &[re, im]) in row.iter().enumerate() {
                if !re.is_finite() || !im.is_finite() {
                    return Err(Error::StateFile {
                        reason: format!("entry ({i},{j}) is not finite"),
                    });
                }
                m[(i, j)] = Complex64::new(re, im);
            }
        }
        BipartiteDensity::new(m, self.dim_a, self.dim_b, tol)
    }

    pub fn from_density(rho: &BipartiteDensity) -> StateFile {
        StateFile {
            dim_a: rho.dim_a(),
            dim_b: rho.dim_b(),
            matrix: matrix_pairs(rho.matrix()),
        }
    }
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let mut offset = 0;
    for (n, l) in text.split_inclusive('\n').enumerate() {
        if n + 1 == line {
            return offset + column.saturating_sub(1);
        }
        offset += l.len();
    }
    offset
}

pub fn matrix_pairs(m: &ComplexMatrix) -> Vec<Vec<CxPair>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn vector_pairs(v: &[Complex64]) -> Vec<CxPair> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

/// Schema tag stamped on every report.
pub const REPORT_SCHEMA: &str = "dss-distill-report/v1";

/// The top-level report: command echo, input stamp, tolerance, results.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: Vec<String>,
    pub input: InputStamp,
    pub tolerance: f64,
    pub results: ReportResults,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InputStamp {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportResults {
    Eigen(EigenResults),
    Dss(DssResults),
    Protocol(ProtocolResults),
    Classify(ClassifyResults),
    Npt(NptResults),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenResults {
    pub dim_a: usize,
    pub dim_b: usize,
    pub eigenvalues: Vec<f64>,
    pub rank: usize,
    /// One eigenvector per row, matching `eigenvalues`.
    pub eigenvectors: Vec<Vec<CxPair>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DssResults {
    pub copies: usize,
    pub m_min: usize,
    pub m_max: usize,
    pub partition: bool,
    pub records: Vec<DssRecordJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DssRecordJson {
    pub subset_a: Vec<usize>,
    pub subset_b: Vec<usize>,
    pub schmidt_number: usize,
    pub probability: f64,
    pub entropy_ebits: f64,
    pub pure_state: Vec<CxPair>,
    pub zero_pattern: ZeroPatternJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZeroPatternJson {
    pub zero_rows: Vec<usize>,
    pub zero_cols: Vec<usize>,
    pub rank: usize,
    pub rank_bound: usize,
}

impl ZeroPatternJson {
    pub fn from_pattern(p: &ZeroPattern) -> Self {
        Self {
            zero_rows: p.zero_rows.clone(),
            zero_cols: p.zero_cols.clone(),
            rank: p.rank,
            rank_bound: p.rank_bound,
        }
    }
}

impl DssRecordJson {
    pub fn from_record(rec: &DssRecord, pattern: &ZeroPattern) -> Self {
        Self {
            subset_a: rec.subspace.subset_a().to_vec(),
            subset_b: rec.subspace.subset_b().to_vec(),
            schmidt_number: rec.schmidt_number,
            probability: rec.probability,
            entropy_ebits: rec.entropy(),
            pure_state: vector_pairs(&rec.pure_state),
            zero_pattern: ZeroPatternJson::from_pattern(pattern),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProtocolResults {
    pub copies: usize,
    pub projectors: ProtocolDescription,
    pub outcomes: Vec<OutcomeJson>,
    pub total_ebits: f64,
    pub total_filtered_ebits: f64,
    /// Probability of mismatched A/B labels, folded into the rest
    /// outcome but reported so numerical leakage stays visible.
    pub cross_probability: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutcomeJson {
    pub label: String,
    pub probability: f64,
    pub purity: f64,
    pub schmidt_number: usize,
    pub entropy_ebits: f64,
    pub filter_success_probability: f64,
    pub filtered_ebits: f64,
    pub fidelity_to_target: f64,
    pub distillable: bool,
}

impl OutcomeJson {
    pub fn from_outcome(o: &ProtocolOutcome) -> Self {
        Self {
            label: o.label.clone(),
            probability: o.probability,
            purity: o.purity,
            schmidt_number: o.schmidt_number,
            entropy_ebits: o.distilled_entropy,
            filter_success_probability: o.filter_success_probability,
            filtered_ebits: o.filtered_ebits,
            fidelity_to_target: o.fidelity_to_target,
            distillable: o.is_distillable,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassifyResults {
    pub verdict: String,
    pub lambda_prime: [f64; 4],
    pub npt: bool,
    pub parameters: Option<FormParamsJson>,
    pub proximity: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormParamsJson {
    pub theta: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub form: String,
    pub frame_a: Vec<Vec<CxPair>>,
    pub frame_b: Vec<Vec<CxPair>>,
}

impl ClassifyResults {
    pub fn from_classification(c: &Classification, npt: bool) -> Self {
        Self {
            verdict: c.verdict.as_str().to_string(),
            lambda_prime: c.spectrum.lambda_prime,
            npt,
            parameters: c.parameters.as_ref().map(|p| FormParamsJson {
                theta: p.theta,
                lambda1: p.lambda1,
                lambda2: p.lambda2,
                form: p.form.as_str().to_string(),
                frame_a: matrix_pairs(&p.frame_a),
                frame_b: matrix_pairs(&p.frame_b),
            }),
            proximity: c.proximity,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NptResults {
    pub min_pt_eigenvalue: f64,
    pub npt: bool,
}

impl Report {
    pub fn new(command: Vec<String>, input: InputStamp, tolerance: f64, results: ReportResults) -> Self {
        Self {
            schema: REPORT_SCHEMA.to_string(),
            command,
            input,
            tolerance,
            results,
        }
    }

    /// Canonical byte representation: pretty JSON plus a trailing
    /// newline. Identical invocations produce identical bytes.
    pub fn to_canonical_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// Spectrum helper for classify results.
pub fn spectrum_array(s: &WoottersSpectrum) -> [f64; 4] {
    s.lambda_prime
}
