//! On-disk schemas: system files, result files and auxiliary polytope
//! files. Everything is line-oriented JSON with a schema_version field;
//! exponents are exact integers, coefficients decimal floats.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use coxroots::cox::LaurentSystem;
use coxroots::polytope::{LatticePolytope, Support};
use coxroots::solver::{SolveOptions, SolveReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    SchemaVersion(u32),
    #[error("system validation: {0}")]
    Validation(String),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TermSpec {
    pub exponent: Vec<i64>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EquationSpec {
    pub terms: Vec<TermSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct OptionsSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub newton_max_iter: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub newton_tol: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SystemFile {
    pub schema_version: u32,
    pub dimension: usize,
    pub equations: Vec<EquationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<OptionsSpec>,
}

impl SystemFile {
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let file: SystemFile = serde_json::from_str(text)?;
        file.validate()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("system file serializes")
    }

    pub fn validate(&self) -> Result<(), FormatError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(FormatError::SchemaVersion(self.schema_version));
        }
        if self.equations.is_empty() {
            return Err(FormatError::Validation("no equations".into()));
        }
        if self.equations.len() != self.dimension {
            return Err(FormatError::Validation(format!(
                "{} equations for dimension {}; the system must be square",
                self.equations.len(),
                self.dimension
            )));
        }
        for (j, eq) in self.equations.iter().enumerate() {
            if eq.terms.is_empty() {
                return Err(FormatError::Validation(format!(
                    "equation {j} has no terms"
                )));
            }
            for t in &eq.terms {
                if t.exponent.len() != self.dimension {
                    return Err(FormatError::Validation(format!(
                        "equation {j}: exponent {:?} has length {}, expected {}",
                        t.exponent,
                        t.exponent.len(),
                        self.dimension
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_system(&self) -> Result<LaurentSystem, FormatError> {
        let mut supports = Vec::with_capacity(self.equations.len());
        for eq in &self.equations {
            let terms: Vec<(Vec<i64>, Complex64)> = eq
                .terms
                .iter()
                .map(|t| (t.exponent.clone(), Complex64::new(t.re, t.im)))
                .collect();
            let support = Support::new(self.dimension, terms)
                .map_err(|e| FormatError::Validation(e.to_string()))?;
            supports.push(support);
        }
        LaurentSystem::new(self.dimension, supports)
            .map_err(|e| FormatError::Validation(e.to_string()))
    }

    /// Solver options from the file's options block, with CLI overrides
    /// applied on top by the caller.
    pub fn solve_options(&self) -> SolveOptions {
        let mut opts = SolveOptions::default();
        if let Some(o) = &self.options {
            if let Some(v) = o.tol {
                opts.tol = v;
            }
            if let Some(v) = o.rank_tol {
                opts.rank_tol = v;
            }
            if let Some(v) = o.seed {
                opts.seed = v;
            }
            if let Some(v) = o.newton_max_iter {
                opts.newton_max_iter = v;
            }
            if let Some(v) = o.newton_tol {
                opts.newton_tol = v;
            }
        }
        opts
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub vertices: Vec<Vec<i64>>,
}

impl PolytopeFile {
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_polytope(&self, dim: usize) -> Result<LatticePolytope, FormatError> {
        LatticePolytope::from_points(dim, self.vertices.clone())
            .map_err(|e| FormatError::Validation(e.to_string()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexSpec {
    fn from(z: Complex64) -> Self {
        ComplexSpec { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub cox: Vec<ComplexSpec>,
    /// Torus coordinates; absent when the solution sits on boundary divisors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torus: Option<Vec<ComplexSpec>>,
    pub residual: f64,
    /// 0-based ray indices of the divisors this solution lies on.
    pub boundary: Vec<usize>,
    pub recovered: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TimingsRecord {
    pub polytopes_ms: f64,
    pub ring_ms: f64,
    pub resultant_ms: f64,
    pub cokernel_ms: f64,
    pub basis_ms: f64,
    pub multiplication_ms: f64,
    pub eigenvalues_ms: f64,
    pub recovery_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub condition_number: f64,
    pub gap_ratio: f64,
    pub clustered_eigenvalues: bool,
    pub alpha_enlarged: bool,
    pub mean_digits: f64,
    pub max_residual: f64,
    pub timings: TimingsRecord,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultsFile {
    pub schema_version: u32,
    pub delta: usize,
    pub k: usize,
    pub n_alpha0: usize,
    pub solutions: Vec<SolutionRecord>,
    pub diagnostics: DiagnosticsRecord,
}

impl ResultsFile {
    pub fn from_report(report: &SolveReport) -> Self {
        let solutions: Vec<SolutionRecord> = report
            .solutions
            .iter()
            .map(|s| SolutionRecord {
                cox: s.cox.iter().map(|&z| z.into()).collect(),
                torus: s
                    .torus
                    .as_ref()
                    .map(|t| t.iter().map(|&z| z.into()).collect()),
                residual: s.residual,
                boundary: s.boundary_incidence.clone(),
                recovered: s.recovered,
            })
            .collect();
        let mean_digits = {
            let rs: Vec<f64> = report.solutions.iter().map(|s| s.residual).collect();
            if rs.is_empty() {
                0.0
            } else {
                -(rs.iter().map(|r| r.max(1e-300).log10()).sum::<f64>() / rs.len() as f64)
            }
        };
        let max_residual = report
            .solutions
            .iter()
            .map(|s| s.residual)
            .fold(0.0f64, f64::max);
        ResultsFile {
            schema_version: SCHEMA_VERSION,
            delta: report.delta,
            k: report.ray_count,
            n_alpha0: report.n_alpha0,
            solutions,
            diagnostics: DiagnosticsRecord {
                condition_number: report.condition_number,
                gap_ratio: report.gap_ratio,
                clustered_eigenvalues: report.clustered_eigenvalues,
                alpha_enlarged: report.alpha_enlarged,
                mean_digits,
                max_residual,
                timings: TimingsRecord {
                    polytopes_ms: report.timings.polytopes_ms,
                    ring_ms: report.timings.ring_ms,
                    resultant_ms: report.timings.resultant_ms,
                    cokernel_ms: report.timings.cokernel_ms,
                    basis_ms: report.timings.basis_ms,
                    multiplication_ms: report.timings.multiplication_ms,
                    eigenvalues_ms: report.timings.eigenvalues_ms,
                    recovery_ms: report.timings.recovery_ms,
                    total_ms: report.timings.total_ms,
                },
            },
        }
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("results serialize")
    }

    /// Flat CSV rendering with one row per solution.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,recovered,residual,boundary,cox,torus\n");
        for (i, s) in self.solutions.iter().enumerate() {
            let cox = s
                .cox
                .iter()
                .map(|z| format!("{}{}{}i", z.re, if z.im < 0.0 { "" } else { "+" }, z.im))
                .collect::<Vec<_>>()
                .join(";");
            let torus = s
                .torus
                .as_ref()
                .map(|t| {
                    t.iter()
                        .map(|z| format!("{}{}{}i", z.re, if z.im < 0.0 { "" } else { "+" }, z.im))
                        .collect::<Vec<_>>()
                        .join(";")
                })
                .unwrap_or_default();
            let boundary = s
                .boundary
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(";");
            out.push_str(&format!(
                "{},{},{:e},{},{},{}\n",
                i, s.recovered, s.residual, boundary, cox, torus
            ));
        }
        out
    }
}
