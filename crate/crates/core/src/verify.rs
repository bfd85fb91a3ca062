//! Quality metrics: term-normalized residuals, numerical Hilbert function
//! probes, the evaluation-matrix rank witness and the moment map projection
//! into the ambient polytope.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::cox::{monomial_value, CoxPolynomial, CoxRing};
use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;
use crate::solver::{corank_and_gap, padded_left_svd, resultant_map};

/// Per-equation residuals of a candidate solution.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub per_equation: Vec<f64>,
    pub max: f64,
    /// -log10 of the geometric mean of the per-equation residuals.
    pub mean_digits: f64,
}

/// Relative backward error of z against each equation: |f_j(z)| divided by
/// the sum of term magnitudes at z. A vanishing denominator gives 0 when the
/// numerator vanishes too, infinity otherwise. The metric is invariant under
/// rescaling an equation and under the reductive group action.
pub fn residual(polys: &[CoxPolynomial], z: &[Complex64]) -> ResidualReport {
    let per_equation: Vec<f64> = polys
        .iter()
        .map(|p| {
            let mut num = Complex64::ZERO;
            let mut den = 0.0f64;
            for (e, c) in p.terms() {
                let t = c * monomial_value(e, z);
                num += t;
                den += t.norm();
            }
            if den == 0.0 {
                if num.norm() == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                num.norm() / den
            }
        })
        .collect();
    let max = per_equation.iter().copied().fold(0.0f64, f64::max);
    let mean_log = per_equation
        .iter()
        .map(|&r| r.max(1e-300).log10())
        .sum::<f64>()
        / per_equation.len().max(1) as f64;
    ResidualReport {
        per_equation,
        max,
        mean_digits: -mean_log,
    }
}

/// Observed corank of the resultant map at the target degree together with
/// the singular value gap ratio at the cut. Under exactness this equals the
/// Hilbert function of the ideal at that degree.
pub fn hilbert_corank(
    ring: &CoxRing,
    polys: &[CoxPolynomial],
    a_target: &[i64],
    rank_tol: f64,
) -> Result<(usize, f64)> {
    let res = resultant_map(ring, polys, a_target)?;
    let rows = res.nrows();
    let (_, sv) = padded_left_svd(&res.matrix);
    Ok(corank_and_gap(&sv, rows, rank_tol))
}

/// Numerical rank of the evaluation matrix of the graded basis at the given
/// solutions, with the gap ratio. Rank delta witnesses that evaluation at
/// the solutions spans the dual of the graded quotient.
pub fn lagrange_rank(
    ring: &CoxRing,
    solutions: &[Vec<Complex64>],
    a: &[i64],
    rank_tol: f64,
) -> Result<(usize, f64)> {
    let basis = ring.graded_basis(a)?;
    let mat = DMatrix::<Complex64>::from_fn(basis.len(), solutions.len(), |i, j| {
        monomial_value(&basis[i], &solutions[j])
    });
    let svd = mat.svd(false, false);
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return Ok((0, f64::INFINITY));
    }
    let rank = sv.iter().filter(|&&s| s > rank_tol * smax).count();
    let gap = if rank < sv.len() && sv[rank] > 0.0 {
        sv[rank - 1] / sv[rank]
    } else {
        f64::INFINITY
    };
    Ok((rank, gap))
}

/// Moment map: the convex combination of the lattice points of P weighted by
/// the monomial magnitudes |x^(F^T m + a)|. Torus points land in the
/// interior; points on a divisor land on the corresponding facet.
pub fn moment_map(ring: &CoxRing, p: &LatticePolytope, z: &[Complex64]) -> Result<Vec<f64>> {
    let points = p.lattice_points();
    // Offsets taken against the ring's ray order, so any facet ordering of
    // the polytope works.
    let a = p.divisor_offsets(ring.rays());
    let mut total = 0.0f64;
    let mut acc = vec![0.0f64; p.dim()];
    for m in &points {
        let e = ring.homogenize_exponent(m, &a);
        let w = monomial_value(&e, z).norm();
        total += w;
        for (slot, &mi) in acc.iter_mut().zip(m) {
            *slot += w * mi as f64;
        }
    }
    if total == 0.0 {
        return Err(Error::AllMonomialsVanish);
    }
    Ok(acc.into_iter().map(|x| x / total).collect())
}
