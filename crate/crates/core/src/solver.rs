//! The numerical pipeline: resultant map between graded pieces, its SVD
//! cokernel, basis selection, multiplication matrices, simultaneous
//! eigenvalues and recovery of Cox coordinates for every solution.

use std::collections::HashMap;
use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::cox::{build_cox_ring, CoxPolynomial, CoxRing, LaurentSystem, PiImage};
use crate::error::{Error, Result};
use crate::lattice::{smith_normal_form, IntMatrix, SnfDecomposition};
use crate::polytope::{
    alpha0_generates, generate_alpha0, mixed_volume, newton_polytope, LatticePolytope, Support,
};
use crate::verify;

/// Options steering the solve pipeline. `tol` is the switch between the
/// Smith-normal-form recovery and the Newton fallback; `rank_tol` is the
/// relative singular value threshold for numerical rank decisions.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub tol: f64,
    pub rank_tol: f64,
    pub seed: u64,
    pub newton_max_iter: usize,
    pub newton_tol: f64,
    pub alpha0_override: Option<LatticePolytope>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-6,
            rank_tol: 1e-8,
            seed: 0,
            newton_max_iter: 50,
            newton_tol: 1e-14,
            alpha0_override: None,
        }
    }
}

impl SolveOptions {
    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Internal(format!(
                "tol must lie in (0,1), got {}",
                self.tol
            )));
        }
        if self.rank_tol <= 0.0 || self.newton_tol <= 0.0 {
            return Err(Error::Internal("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Matrix of the map (q_1, ..., q_n) -> q_1 f_1 + ... + q_n f_n between
/// graded pieces, rows indexed by the lattice points of the target degree,
/// columns by pairs (equation, shift monomial).
pub struct ResultantMatrix {
    pub matrix: DMatrix<Complex64>,
    /// Lattice points indexing the rows, lex ordered.
    pub row_points: Vec<Vec<i64>>,
    pub row_index: HashMap<Vec<i64>, usize>,
    /// Per equation: the lattice points of the shift degree.
    pub col_blocks: Vec<Vec<Vec<i64>>>,
    pub target_offsets: Vec<i64>,
}

impl ResultantMatrix {
    pub fn nrows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.matrix.ncols()
    }
}

/// Assembles the resultant map at the target degree. Column (i, x^c) holds
/// the coefficients of x^c * f_i expanded in the row basis.
pub fn resultant_map(
    ring: &CoxRing,
    polys: &[CoxPolynomial],
    a_target: &[i64],
) -> Result<ResultantMatrix> {
    let row_points = ring.graded_points(a_target)?;
    let row_index: HashMap<Vec<i64>, usize> = row_points
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();

    let mut col_blocks = Vec::with_capacity(polys.len());
    let mut total_cols = 0;
    let mut lattice_terms: Vec<Vec<(Vec<i64>, Complex64)>> = Vec::with_capacity(polys.len());
    for poly in polys {
        let a_i = poly.degree().representative();
        let shift_offsets: Vec<i64> = a_target.iter().zip(a_i).map(|(&t, &ai)| t - ai).collect();
        let shifts = ring.graded_points(&shift_offsets)?;
        total_cols += shifts.len();
        col_blocks.push(shifts);

        let mut terms = Vec::with_capacity(poly.terms().len());
        for (e, c) in poly.terms() {
            let m = ring.recover_lattice_point(e, a_i).ok_or_else(|| {
                Error::Internal("cox term exponent not of the declared degree".into())
            })?;
            terms.push((m, *c));
        }
        lattice_terms.push(terms);
    }

    let mut matrix = DMatrix::<Complex64>::zeros(row_points.len(), total_cols);
    let mut col = 0;
    for (terms, shifts) in lattice_terms.iter().zip(&col_blocks) {
        for shift in shifts {
            for (m, c) in terms {
                let target: Vec<i64> = shift.iter().zip(m).map(|(&s, &t)| s + t).collect();
                let row = *row_index.get(&target).ok_or_else(|| {
                    Error::Internal(format!(
                        "product point {target:?} missing from the row basis"
                    ))
                })?;
                matrix[(row, col)] += c;
            }
            col += 1;
        }
    }

    Ok(ResultantMatrix {
        matrix,
        row_points,
        row_index,
        col_blocks,
        target_offsets: a_target.to_vec(),
    })
}

/// Cokernel of the resultant map at the expected corank.
pub struct Cokernel {
    /// delta x rows; its rows span the orthogonal complement of the column
    /// space.
    pub matrix: DMatrix<Complex64>,
    /// Ratio between the last kept and the first dropped singular value.
    pub gap_ratio: f64,
    pub singular_values: Vec<f64>,
}

/// Numerical corank under a relative threshold, with the gap ratio at the
/// cut.
pub(crate) fn corank_and_gap(sv: &[f64], rows: usize, rank_tol: f64) -> (usize, f64) {
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return (rows, f64::INFINITY);
    }
    let numerical_rank = sv.iter().filter(|&&s| s > rank_tol * smax).count();
    let corank = rows - numerical_rank;
    let gap = if numerical_rank == 0 {
        f64::INFINITY
    } else if numerical_rank < sv.len() && sv[numerical_rank] > 0.0 {
        sv[numerical_rank - 1] / sv[numerical_rank]
    } else {
        f64::INFINITY
    };
    (corank, gap)
}

/// SVD with the matrix padded by zero columns up to square, so the left
/// factor spans the full row space including all cokernel directions.
pub(crate) fn padded_left_svd(m: &DMatrix<Complex64>) -> (DMatrix<Complex64>, Vec<f64>) {
    let rows = m.nrows();
    let work = if m.ncols() < rows {
        let mut padded = DMatrix::<Complex64>::zeros(rows, rows);
        padded.view_mut((0, 0), (rows, m.ncols())).copy_from(m);
        padded
    } else {
        m.clone()
    };
    let svd = work.svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.truncate(rows);
    (u, sv)
}

/// Extracts the cokernel map N with expected corank `delta`. A spectrum that
/// does not show exactly `delta` negligible singular values is a regularity
/// failure and aborts with the observed corank.
pub fn cokernel(res: &ResultantMatrix, delta: usize, rank_tol: f64) -> Result<Cokernel> {
    assert!(delta >= 1, "expected corank must be positive");
    let rows = res.nrows();
    if delta > rows {
        return Err(Error::RegularityFailure {
            expected: delta,
            observed: rows,
            gap: 0.0,
        });
    }
    let (u, sv) = padded_left_svd(&res.matrix);
    let (observed, gap) = corank_and_gap(&sv, rows, rank_tol);
    if observed != delta {
        return Err(Error::RegularityFailure {
            expected: delta,
            observed,
            gap,
        });
    }
    let n = u.columns(rows - delta, delta).adjoint();
    Ok(Cokernel {
        matrix: n,
        gap_ratio: gap,
        singular_values: sv,
    })
}

/// Basis selection: `w` embeds the chosen delta-dimensional subspace B of the
/// alpha graded piece (orthogonal complement of the numerical null space of
/// N_h0) and `n_star` is the invertible restriction.
pub struct BasisSelection {
    pub w: DMatrix<Complex64>,
    pub n_star: DMatrix<Complex64>,
    pub condition_number: f64,
}

/// Matrix of f -> N(g * f) on the alpha graded piece, where g is given by
/// lattice terms relative to its own degree.
pub fn shifted_map(
    n_mat: &DMatrix<Complex64>,
    row_index: &HashMap<Vec<i64>, usize>,
    alpha_points: &[Vec<i64>],
    g_terms: &[(Vec<i64>, Complex64)],
) -> Result<DMatrix<Complex64>> {
    let delta = n_mat.nrows();
    let mut out = DMatrix::<Complex64>::zeros(delta, alpha_points.len());
    for (j, m) in alpha_points.iter().enumerate() {
        for (shift, c) in g_terms {
            let target: Vec<i64> = m.iter().zip(shift).map(|(&a, &b)| a + b).collect();
            let row = *row_index.get(&target).ok_or_else(|| {
                Error::Internal(format!("shifted point {target:?} outside the row basis"))
            })?;
            for i in 0..delta {
                out[(i, j)] += n_mat[(i, row)] * c;
            }
        }
    }
    Ok(out)
}

/// Restricts N_h0 to an invertible delta x delta map via the SVD: B is the
/// span of the top-delta right singular vectors, i.e. the orthogonal
/// complement of the numerical null space. (QR with column pivoting would
/// instead pick an explicit monomial basis; the SVD subspace is what we use.)
pub fn select_basis(
    n_h0: &DMatrix<Complex64>,
    delta: usize,
    rank_tol: f64,
) -> Result<BasisSelection> {
    let svd = n_h0.clone().svd(false, true);
    let sv = &svd.singular_values;
    let smax = sv[0];
    let rank = if smax == 0.0 {
        0
    } else {
        sv.iter().filter(|&&s| s > rank_tol * smax).count()
    };
    if rank < delta {
        return Err(Error::RankDeficientBasis {
            rank,
            needed: delta,
        });
    }
    let v_t = svd.v_t.expect("right singular vectors requested");
    let w = v_t.rows(0, delta).adjoint();
    let n_star = n_h0 * &w;
    let condition_number = sv[0] / sv[delta - 1];
    Ok(BasisSelection {
        w,
        n_star,
        condition_number,
    })
}

/// Multiplication matrices and their joint eigenvalues.
pub struct EigenData {
    /// One delta x delta matrix per monomial of the alpha0 graded piece.
    pub mult_matrices: Vec<DMatrix<Complex64>>,
    /// lambda[(i, j)] approximates z_j^{b_i} / h0(z_j).
    pub lambda: DMatrix<Complex64>,
    /// Set when the random combination kept clustered eigenvalues after the
    /// allowed redraws.
    pub clustered: bool,
}

/// Matrices of multiplication by x^{b_i}/h0 on the quotient piece:
/// M_i = (N*)^{-1} (N_i W).
pub fn multiplication_matrices(
    n_mat: &DMatrix<Complex64>,
    row_index: &HashMap<Vec<i64>, usize>,
    alpha_points: &[Vec<i64>],
    alpha0_points: &[Vec<i64>],
    selection: &BasisSelection,
) -> Result<Vec<DMatrix<Complex64>>> {
    let lu = selection.n_star.clone().lu();
    let mut out = Vec::with_capacity(alpha0_points.len());
    for b in alpha0_points {
        let terms = vec![(b.clone(), Complex64::ONE)];
        let n_i = shifted_map(n_mat, row_index, alpha_points, &terms)?;
        let rhs = &n_i * &selection.w;
        let m = lu
            .solve(&rhs)
            .ok_or_else(|| Error::Internal("singular N* during multiplication".into()))?;
        out.push(m);
    }
    Ok(out)
}

/// Joint eigenvalues by one random real combination, a Schur decomposition
/// and diagonal extraction of every rotated matrix. Clustered eigenvalues of
/// the combination trigger a redraw.
pub fn simultaneous_eigenvalues(
    mats: &[DMatrix<Complex64>],
    rng: &mut ChaCha8Rng,
) -> (DMatrix<Complex64>, bool) {
    let delta = mats[0].nrows();
    let n0 = mats.len();
    let mut clustered = true;
    let mut q_final: Option<DMatrix<Complex64>> = None;
    for _attempt in 0..3 {
        let coeffs: Vec<f64> = (0..n0).map(|_| rng.sample(StandardNormal)).collect();
        let mut combo = DMatrix::<Complex64>::zeros(delta, delta);
        for (c, m) in coeffs.iter().zip(mats) {
            combo += m * Complex64::new(*c, 0.0);
        }
        let Some(schur) = combo.try_schur(f64::EPSILON, 100_000) else {
            continue;
        };
        let (q, t) = schur.unpack();
        let eigs: Vec<Complex64> = (0..delta).map(|i| t[(i, i)]).collect();
        let scale = eigs
            .iter()
            .map(|e| e.norm())
            .fold(0.0f64, f64::max)
            .max(1e-300);
        let mut min_gap = f64::INFINITY;
        for i in 0..delta {
            for j in i + 1..delta {
                min_gap = min_gap.min((eigs[i] - eigs[j]).norm());
            }
        }
        q_final = Some(q);
        if delta < 2 || min_gap >= 1e-12 * scale {
            clustered = false;
            break;
        }
    }
    let q = q_final.expect("Schur decomposition failed on every redraw");
    let mut lambda = DMatrix::<Complex64>::zeros(n0, delta);
    for (i, m) in mats.iter().enumerate() {
        let rotated = q.adjoint() * m * &q;
        for j in 0..delta {
            lambda[(i, j)] = rotated[(j, j)];
        }
    }
    (lambda, clustered)
}

/// Outcome of recovering one column of joint eigenvalues.
pub struct Recovery {
    pub cox: Vec<Complex64>,
    pub recovered: bool,
    pub newton_used: bool,
}

/// Gate shared by both recovery paths: the point must reproduce the
/// eigenvalue data.
fn recovery_gate(z: &[Complex64], b_exponents: &[Vec<i64>], lambda: &[Complex64]) -> bool {
    b_exponents
        .iter()
        .zip(lambda)
        .all(|(b, l)| (crate::cox::monomial_value(b, z) - l).norm() <= 1e-10 * (1.0 + l.norm()))
}

/// Recovers Cox coordinates from one eigenvalue column. When the eigenvalues
/// stay well away from zero, the monomial system x^{b_i} = lambda_i is solved
/// on the exponent lattice through the Smith normal form and complex
/// logarithms; otherwise (solutions on or near boundary divisors) a damped
/// Gauss-Newton iteration takes over.
pub fn recover_coordinates(
    lambda_col: &[Complex64],
    snf_exponents: &SnfDecomposition,
    b_exponents: &[Vec<i64>],
    opts: &SolveOptions,
    rng: &mut ChaCha8Rng,
) -> Recovery {
    let k = snf_exponents.u.nrows();
    let norm = lambda_col.iter().map(|l| l.norm_sqr()).sum::<f64>().sqrt();
    let min = lambda_col
        .iter()
        .map(|l| l.norm())
        .fold(f64::INFINITY, f64::min);

    if norm > 0.0 && min / norm > opts.tol {
        let z = snf_log_solve(lambda_col, snf_exponents, k);
        if recovery_gate(&z, b_exponents, lambda_col) {
            return Recovery {
                cox: z,
                recovered: true,
                newton_used: false,
            };
        }
    }

    let mut best: Option<(f64, Vec<Complex64>)> = None;
    for _restart in 0..5 {
        let start: Vec<Complex64> = (0..k)
            .map(|_| {
                let theta = rng.random::<f64>() * std::f64::consts::TAU;
                Complex64::new(theta.cos(), theta.sin())
            })
            .collect();
        let (z, err) = newton_binomial(&start, b_exponents, lambda_col, opts);
        let better = best.as_ref().is_none_or(|(e, _)| err < *e);
        if better {
            best = Some((err, z));
        }
        if let Some((_, z)) = &best {
            if recovery_gate(z, b_exponents, lambda_col) {
                return Recovery {
                    cox: z.clone(),
                    recovered: true,
                    newton_used: true,
                };
            }
        }
    }
    let (_, z) = best.expect("at least one Newton restart ran");
    Recovery {
        cox: z,
        recovered: false,
        newton_used: true,
    }
}

/// Exact solve of x^{b_i} = lambda_i on the exponent lattice: substitute
/// x = y^U, diagonalize the exponents with U A V = S, take principal-branch
/// logarithms, divide by the invariant factors and push back through U.
fn snf_log_solve(lambda_col: &[Complex64], snf: &SnfDecomposition, k: usize) -> Vec<Complex64> {
    let r = snf.rank;
    let logs: Vec<Complex64> = lambda_col.iter().map(|l| l.ln()).collect();
    let mut log_y = vec![Complex64::ZERO; k];
    for (l, slot) in log_y.iter_mut().enumerate().take(r) {
        let mut acc = Complex64::ZERO;
        for (i, lg) in logs.iter().enumerate() {
            let vi = big_to_f64(&snf.v[(i, l)]);
            if vi != 0.0 {
                acc += lg * vi;
            }
        }
        *slot = acc / big_to_f64(&snf.invariant_factors[l]);
    }
    (0..k)
        .map(|j| {
            let mut acc = Complex64::ZERO;
            for (l, ly) in log_y.iter().enumerate().take(r) {
                let u = big_to_f64(&snf.u[(l, j)]);
                if u != 0.0 {
                    acc += ly * u;
                }
            }
            acc.exp()
        })
        .collect()
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().expect("integer out of f64 range")
}

/// Damped Gauss-Newton on F_i(x) = x^{b_i} - lambda_i with pseudo-inverse
/// steps; the solution set is a positive-dimensional group orbit, so the
/// Jacobian is rank deficient along it.
fn newton_binomial(
    start: &[Complex64],
    b_exponents: &[Vec<i64>],
    lambda: &[Complex64],
    opts: &SolveOptions,
) -> (Vec<Complex64>, f64) {
    let k = start.len();
    let n0 = b_exponents.len();
    let tol_i: Vec<f64> = lambda
        .iter()
        .map(|l| opts.newton_tol * (1.0 + l.norm()))
        .collect();

    let residual = |x: &[Complex64]| -> Vec<Complex64> {
        b_exponents
            .iter()
            .zip(lambda)
            .map(|(b, l)| crate::cox::monomial_value(b, x) - l)
            .collect()
    };
    let norm2 = |f: &[Complex64]| f.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();

    let mut x = start.to_vec();
    let mut f = residual(&x);
    let mut fnorm = norm2(&f);
    for _iter in 0..opts.newton_max_iter {
        if f.iter().zip(&tol_i).all(|(v, &t)| v.norm() <= t) {
            break;
        }
        let mut jac = DMatrix::<Complex64>::zeros(n0, k);
        for (i, b) in b_exponents.iter().enumerate() {
            for j in 0..k {
                if b[j] == 0 {
                    continue;
                }
                let mut d = Complex64::new(b[j] as f64, 0.0);
                for (l, &e) in b.iter().enumerate() {
                    let exp = if l == j { e - 1 } else { e };
                    if exp != 0 {
                        d *= x[l].powi(exp as i32);
                    }
                }
                jac[(i, j)] = d;
            }
        }
        let rhs = DVector::from_iterator(n0, f.iter().map(|v| -v));
        let svd = jac.svd(true, true);
        let smax = svd.singular_values[0];
        if smax == 0.0 {
            break;
        }
        let Ok(dx) = svd.solve(&rhs, 1e-13 * smax) else {
            break;
        };
        let mut step = 1.0f64;
        let mut improved = false;
        for _ in 0..25 {
            let trial: Vec<Complex64> = x
                .iter()
                .enumerate()
                .map(|(j, &xj)| xj + dx[j] * step)
                .collect();
            let ft = residual(&trial);
            let ftn = norm2(&ft);
            if ftn < fnorm {
                x = trial;
                f = ft;
                fnorm = ftn;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    let err = f
        .iter()
        .zip(lambda)
        .map(|(v, l)| v.norm() / (1.0 + l.norm()))
        .fold(0.0f64, f64::max);
    (x, err)
}

/// Rescales a point along the group's scaling directions so the coordinate
/// magnitudes balance out. Cox coordinates are only defined up to this
/// action; an unbalanced representative (coming out of the logarithmic
/// recovery) would defeat the relative zero threshold used for boundary
/// detection. The second pass refits without coordinates that are still
/// negligible, so genuine near-zero coordinates do not drag the fit.
pub fn balance_orbit(ring: &CoxRing, z: &mut [Complex64]) {
    let basis = ring.scaling_lattice_basis();
    if basis.is_empty() {
        return;
    }
    let k = z.len();
    let dof = basis.len();
    for pass in 0..2 {
        let scale = z.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
        if scale == 0.0 {
            return;
        }
        let active: Vec<usize> = (0..k)
            .filter(|&i| {
                let m = z[i].norm();
                m > 0.0 && (pass == 0 || m > 1e-8 * scale)
            })
            .collect();
        if active.len() < dof {
            return;
        }
        let design =
            nalgebra::DMatrix::<f64>::from_fn(active.len(), dof, |r, j| basis[j][active[r]] as f64);
        let rhs = nalgebra::DVector::<f64>::from_iterator(
            active.len(),
            active.iter().map(|&i| -z[i].norm().ln()),
        );
        let svd = design.svd(true, true);
        let Ok(coeffs) = svd.solve(&rhs, 1e-12) else {
            return;
        };
        for i in 0..k {
            let w: f64 = (0..dof).map(|j| basis[j][i] as f64 * coeffs[j]).sum();
            z[i] *= Complex64::new(w.exp(), 0.0);
        }
    }
}

/// One computed solution: Cox coordinates, the torus point when the solution
/// stays off the boundary divisors, the residual and the incidence set.
#[derive(Debug, Clone)]
pub struct Solution {
    pub cox: Vec<Complex64>,
    pub torus: Option<Vec<Complex64>>,
    pub residual: f64,
    /// Ray indices (0-based) whose Cox coordinate vanishes numerically.
    pub boundary_incidence: Vec<usize>,
    pub recovered: bool,
    pub newton_used: bool,
}

/// Wall-clock milliseconds per pipeline stage.
#[derive(Debug, Clone, Default)]
pub struct StageTimings {
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

/// Everything the pipeline produced, kept for diagnostics and verification.
pub struct SolveReport {
    pub solutions: Vec<Solution>,
    pub delta: usize,
    pub ray_count: usize,
    pub n_alpha0: usize,
    pub condition_number: f64,
    pub gap_ratio: f64,
    pub clustered_eigenvalues: bool,
    pub alpha_enlarged: bool,
    pub timings: StageTimings,
    pub ring: CoxRing,
    pub ambient: LatticePolytope,
    pub alpha_offsets: Vec<i64>,
    pub alpha0_offsets: Vec<i64>,
    pub homogenized: Vec<CoxPolynomial>,
    pub h0: CoxPolynomial,
    pub eigen: EigenData,
    pub exponent_matrix: IntMatrix,
    pub alpha0_points: Vec<Vec<i64>>,
}

fn ms(from: Instant) -> f64 {
    from.elapsed().as_secs_f64() * 1e3
}

/// Runs the whole pipeline on a square Laurent system.
pub fn solve(system: &LaurentSystem, opts: &SolveOptions) -> Result<SolveReport> {
    opts.validate()?;
    let total_start = Instant::now();
    let n = system.dim();
    let mut timings = StageTimings::default();

    // Newton polytopes and their Minkowski sum.
    let stage = Instant::now();
    let mut newton_polys = Vec::with_capacity(n);
    for s in system.polynomials() {
        newton_polys.push(newton_polytope(s)?);
    }
    let mut ambient = newton_polys[0].clone();
    for p in &newton_polys[1..] {
        ambient = ambient.minkowski_sum(p)?;
    }
    if ambient.affine_dim() < n {
        return Err(Error::LowerDimensional {
            dim: ambient.affine_dim(),
            needed: n,
        });
    }
    timings.polytopes_ms = ms(stage);

    let stage = Instant::now();
    let ring = build_cox_ring(&ambient)?;
    let rays = ring.rays().to_vec();
    let offsets_per_poly: Vec<Vec<i64>> = newton_polys
        .iter()
        .map(|p| p.divisor_offsets(&rays))
        .collect();
    let mut alpha_offsets = vec![0i64; ring.ray_count()];
    for a in &offsets_per_poly {
        for (t, &x) in alpha_offsets.iter_mut().zip(a) {
            *t += x;
        }
    }
    let p0 = match &opts.alpha0_override {
        Some(p) => {
            if p.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: p.dim(),
                });
            }
            if !alpha0_generates(p) {
                return Err(Error::Internal(
                    "alpha0 override rejected: its lattice point differences do not generate the character lattice".into(),
                ));
            }
            p.clone()
        }
        None => generate_alpha0(&ambient),
    };
    let alpha0_offsets = p0.divisor_offsets(&rays);
    let delta = mixed_volume(&newton_polys, &ambient)?;
    timings.ring_ms = ms(stage);

    if delta == 0 {
        return Err(Error::RegularityFailure {
            expected: 0,
            observed: 0,
            gap: 0.0,
        });
    }

    let homogenized: Vec<CoxPolynomial> = system
        .polynomials()
        .iter()
        .zip(&offsets_per_poly)
        .map(|(s, a)| ring.homogenize(s, a))
        .collect::<Result<_>>()?;

    // Resultant and cokernel, with one alpha enlargement retry on a
    // regularity failure.
    let mut alpha_enlarged = false;
    let mut alpha_current = alpha_offsets;
    let (res, cok) = loop {
        let stage = Instant::now();
        let target: Vec<i64> = alpha_current
            .iter()
            .zip(&alpha0_offsets)
            .map(|(&a, &b)| a + b)
            .collect();
        let res = resultant_map(&ring, &homogenized, &target)?;
        timings.resultant_ms += ms(stage);
        let stage = Instant::now();
        match cokernel(&res, delta, opts.rank_tol) {
            Ok(c) => {
                timings.cokernel_ms += ms(stage);
                break (res, c);
            }
            Err(err) => {
                timings.cokernel_ms += ms(stage);
                if alpha_enlarged {
                    return Err(err);
                }
                alpha_enlarged = true;
                for (t, &b) in alpha_current.iter_mut().zip(&alpha0_offsets) {
                    *t += b;
                }
            }
        }
    };
    let alpha_offsets = alpha_current;

    let alpha_points = ring.graded_points(&alpha_offsets)?;
    let alpha0_points = ring.graded_points(&alpha0_offsets)?;
    let n_alpha0 = alpha0_points.len();

    // Generic h0 with seeded standard normal coefficients; rank-deficient
    // draws (h0 vanishing at a solution) are retried.
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let stage = Instant::now();
    let mut attempt = 0;
    let (h0, selection) = loop {
        let coeffs: Vec<(Vec<i64>, Complex64)> = alpha0_points
            .iter()
            .map(|m| {
                let c: f64 = rng.sample(StandardNormal);
                (m.clone(), Complex64::new(c, 0.0))
            })
            .collect();
        let support = Support::new(n, coeffs)?;
        let h0 = ring.homogenize(&support, &alpha0_offsets)?;
        let h0_terms: Vec<(Vec<i64>, Complex64)> = h0
            .terms()
            .iter()
            .map(|(e, c)| {
                let m = ring
                    .recover_lattice_point(e, &alpha0_offsets)
                    .expect("h0 exponent of the declared degree");
                (m, *c)
            })
            .collect();
        let n_h0 = shifted_map(&cok.matrix, &res.row_index, &alpha_points, &h0_terms)?;
        match select_basis(&n_h0, delta, opts.rank_tol) {
            Ok(sel) => break (h0, sel),
            Err(err) => {
                attempt += 1;
                if attempt >= 3 {
                    return Err(err);
                }
            }
        }
    };
    timings.basis_ms = ms(stage);

    let stage = Instant::now();
    let mult = multiplication_matrices(
        &cok.matrix,
        &res.row_index,
        &alpha_points,
        &alpha0_points,
        &selection,
    )?;
    timings.multiplication_ms = ms(stage);

    let stage = Instant::now();
    let (lambda, clustered) = simultaneous_eigenvalues(&mult, &mut rng);
    timings.eigenvalues_ms = ms(stage);

    // Exponent matrix A = [b_1 ... b_{n_alpha0}] and its Smith normal form,
    // shared by every column recovery.
    let b_exponents: Vec<Vec<i64>> = alpha0_points
        .iter()
        .map(|m| ring.homogenize_exponent(m, &alpha0_offsets))
        .collect();
    let exponent_matrix = IntMatrix::from_columns(ring.ray_count(), &b_exponents);
    let snf_exponents = smith_normal_form(&exponent_matrix);

    let stage = Instant::now();
    let column_seeds: Vec<u64> = (0..delta).map(|_| rng.random()).collect();
    let recoveries: Vec<Recovery> = column_seeds
        .par_iter()
        .enumerate()
        .map(|(j, &seed)| {
            let col: Vec<Complex64> = (0..n_alpha0).map(|i| lambda[(i, j)]).collect();
            let mut col_rng = ChaCha8Rng::seed_from_u64(seed);
            recover_coordinates(&col, &snf_exponents, &b_exponents, opts, &mut col_rng)
        })
        .collect();

    let solutions: Vec<Solution> = recoveries
        .into_iter()
        .map(|mut rec| {
            balance_orbit(&ring, &mut rec.cox);
            let scale = rec.cox.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
            let incidence: Vec<usize> = rec
                .cox
                .iter()
                .enumerate()
                .filter(|(_, z)| z.norm() <= 1e-8 * scale)
                .map(|(i, _)| i)
                .collect();
            let report = verify::residual(&homogenized, &rec.cox);
            let torus = if incidence.is_empty() {
                match ring.pi_map(&rec.cox) {
                    PiImage::Torus(t) => Some(t),
                    PiImage::Boundary(_) => None,
                }
            } else {
                None
            };
            Solution {
                cox: rec.cox,
                torus,
                residual: report.max,
                boundary_incidence: incidence,
                recovered: rec.recovered,
                newton_used: rec.newton_used,
            }
        })
        .collect();
    timings.recovery_ms = ms(stage);
    timings.total_ms = ms(total_start);

    Ok(SolveReport {
        solutions,
        delta,
        ray_count: ring.ray_count(),
        n_alpha0,
        condition_number: selection.condition_number,
        gap_ratio: cok.gap_ratio,
        clustered_eigenvalues: clustered,
        alpha_enlarged,
        timings,
        ring,
        ambient,
        alpha_offsets,
        alpha0_offsets,
        homogenized,
        h0,
        eigen: EigenData {
            mult_matrices: mult,
            lambda,
            clustered,
        },
        exponent_matrix,
        alpha0_points,
    })
}
