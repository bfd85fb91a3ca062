//! Command drivers shared by the binary and the test suites.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use coxroots::error::Error as SolverError;
use coxroots::polytope::{mixed_volume, newton_polytope, LatticePolytope};
use coxroots::solver::{solve, SolveOptions, SolveReport};
use coxroots::verify;

use crate::formats::{ResultsFile, SystemFile};

/// Residual threshold under which a recovered solution counts as correct for
/// exit code purposes.
pub const CORRECT_RESIDUAL: f64 = 1e-9;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARTIAL: i32 = 2;
pub const EXIT_REGULARITY: i32 = 3;
pub const EXIT_PARSE: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("{0}")]
    Format(#[from] crate::formats::FormatError),
    #[error("{0}")]
    Solver(#[from] SolverError),
    #[error("{0}")]
    Invalid(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Format(_) => EXIT_PARSE,
            CommandError::Solver(SolverError::RegularityFailure { .. }) => EXIT_REGULARITY,
            CommandError::Solver(_) => 1,
            CommandError::Invalid(_) => EXIT_PARSE,
        }
    }
}

/// Solves the system in a file; returns the report, the serializable results
/// and the exit code implied by recovery status.
pub fn run_solve(
    file: &SystemFile,
    opts: &SolveOptions,
) -> Result<(SolveReport, ResultsFile, i32), CommandError> {
    let system = file.to_system()?;
    let report = solve(&system, opts)?;
    let results = ResultsFile::from_report(&report);
    let ok = report
        .solutions
        .iter()
        .all(|s| s.recovered && s.residual <= CORRECT_RESIDUAL);
    let code = if ok { EXIT_OK } else { EXIT_PARTIAL };
    Ok((report, results, code))
}

pub fn run_mixed_volume(file: &SystemFile) -> Result<usize, CommandError> {
    let system = file.to_system()?;
    let polys: Vec<LatticePolytope> = system
        .polynomials()
        .iter()
        .map(newton_polytope)
        .collect::<Result<_, _>>()?;
    let mut ambient = polys[0].clone();
    for p in &polys[1..] {
        ambient = ambient.minkowski_sum(p)?;
    }
    Ok(mixed_volume(&polys, &ambient)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyPoint {
    pub e: f64,
    pub r_min: f64,
    pub r_max: f64,
    /// Solutions with a Cox coordinate within 1e-8 of zero relative to the
    /// largest one.
    pub near_boundary: usize,
    pub unrecovered: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyResults {
    pub facet: usize,
    pub facet_normal: Vec<i64>,
    pub points: Vec<FamilyPoint>,
}

/// Blended-facet family: equation 1 is pulled towards equation 0 on the
/// lattice points of the designated facet of the first Newton polytope,
/// with mixing weight 10^-e. As e grows, solutions approach the divisor of
/// that facet.
pub fn run_degenerate_family(
    file: &SystemFile,
    facet: usize,
    e_values: &[f64],
    opts: &SolveOptions,
) -> Result<FamilyResults, CommandError> {
    let system = file.to_system()?;
    if system.polynomials().len() < 2 {
        return Err(CommandError::Invalid(
            "the blended family needs at least two equations".into(),
        ));
    }
    let polys: Vec<LatticePolytope> = system
        .polynomials()
        .iter()
        .map(newton_polytope)
        .collect::<Result<_, _>>()?;
    let mut ambient = polys[0].clone();
    for p in &polys[1..] {
        ambient = ambient.minkowski_sum(p)?;
    }
    let rays = ambient.normals();
    if facet >= rays.len() {
        return Err(CommandError::Solver(SolverError::FacetIndexOutOfRange {
            index: facet,
            count: rays.len(),
        }));
    }
    let u = rays[facet].clone();
    let a1 = polys[0].divisor_offsets(rays);

    // Lattice points of P1 on the designated facet.
    let facet_points: Vec<Vec<i64>> = polys[0]
        .lattice_points()
        .into_iter()
        .filter(|m| u.iter().zip(m).map(|(&ui, &mi)| ui * mi).sum::<i64>() + a1[facet] == 0)
        .collect();
    if facet_points.is_empty() {
        return Err(CommandError::Invalid(format!(
            "facet {facet} of the first Newton polytope carries no lattice points"
        )));
    }

    // Both equations must carry every facet point.
    let coeff_of = |eq: usize, m: &[i64]| -> Option<Complex64> {
        file.equations[eq]
            .terms
            .iter()
            .find(|t| t.exponent == m)
            .map(|t| Complex64::new(t.re, t.im))
    };
    for m in &facet_points {
        for eq in 0..2 {
            if coeff_of(eq, m).is_none() {
                return Err(CommandError::Invalid(format!(
                    "equation {eq} does not carry the facet point {m:?}; the blended family needs both equations supported there"
                )));
            }
        }
    }

    let points: Vec<FamilyPoint> = e_values
        .par_iter()
        .map(|&e| -> Result<FamilyPoint, CommandError> {
            let w = 10f64.powf(-e);
            let mut blended = file.clone();
            for t in blended.equations[1].terms.iter_mut() {
                if facet_points.contains(&t.exponent) {
                    let c1 = coeff_of(0, &t.exponent).unwrap();
                    let c2 = Complex64::new(t.re, t.im);
                    let mixed = c2 * w + c1 * (1.0 - w);
                    t.re = mixed.re;
                    t.im = mixed.im;
                }
            }
            let system = blended.to_system()?;
            let report = solve(&system, opts)?;
            let r_min = report
                .solutions
                .iter()
                .map(|s| s.residual)
                .fold(f64::INFINITY, f64::min);
            let r_max = report
                .solutions
                .iter()
                .map(|s| s.residual)
                .fold(0.0f64, f64::max);
            let near_boundary = report
                .solutions
                .iter()
                .filter(|s| {
                    let scale = s.cox.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
                    s.cox.iter().any(|z| z.norm() <= 1e-8 * scale)
                })
                .count();
            let unrecovered = report.solutions.iter().filter(|s| !s.recovered).count();
            Ok(FamilyPoint {
                e,
                r_min,
                r_max,
                near_boundary,
                unrecovered,
            })
        })
        .collect::<Result<_, _>>()?;

    Ok(FamilyResults {
        facet,
        facet_normal: u,
        points,
    })
}

/// Moment-map plot data: CSV with the ambient polytope's vertices, lattice
/// points and the moment image of every solution.
pub fn run_plot_data(results: &ResultsFile, file: &SystemFile) -> Result<String, CommandError> {
    let system = file.to_system()?;
    let polys: Vec<LatticePolytope> = system
        .polynomials()
        .iter()
        .map(newton_polytope)
        .collect::<Result<_, _>>()?;
    let mut ambient = polys[0].clone();
    for p in &polys[1..] {
        ambient = ambient.minkowski_sum(p)?;
    }
    let ring = coxroots::cox::build_cox_ring(&ambient)?;

    let n = system.dim();
    let mut out = String::from("kind,index,");
    out.push_str(
        &(0..n)
            .map(|i| format!("x{i}"))
            .collect::<Vec<_>>()
            .join(","),
    );
    out.push('\n');
    let write_row = |out: &mut String, kind: &str, index: usize, coords: &[f64]| {
        out.push_str(&format!(
            "{kind},{index},{}\n",
            coords
                .iter()
                .map(|c| format!("{c}"))
                .collect::<Vec<_>>()
                .join(",")
        ));
    };
    for (i, v) in ambient.vertices().iter().enumerate() {
        let coords: Vec<f64> = v.iter().map(|&x| x as f64).collect();
        write_row(&mut out, "vertex", i, &coords);
    }
    for (i, m) in ambient.lattice_points().iter().enumerate() {
        let coords: Vec<f64> = m.iter().map(|&x| x as f64).collect();
        write_row(&mut out, "lattice_point", i, &coords);
    }
    for (j, s) in results.solutions.iter().enumerate() {
        let z: Vec<Complex64> = s.cox.iter().map(|c| Complex64::new(c.re, c.im)).collect();
        let mu = verify::moment_map(&ring, &ambient, &z)?;
        write_row(&mut out, "solution", j, &mu);
    }
    Ok(out)
}
