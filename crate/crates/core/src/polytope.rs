//! Lattice polytopes in facet representation: Newton polytopes, Minkowski
//! sums, lattice point enumeration, mixed volumes and the auxiliary degree
//! generator.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hull::{dot, incremental_hull, rank_i64};
use crate::lattice::{primitive_vector, smith_normal_form, IntMatrix};

/// A lattice polytope with facet representation: primitive inward normals
/// `u_i` (the columns of F) and offsets `a_i`, so that membership reads
/// `<u_i, m> + a_i >= 0` for every facet i. Vertices are kept alongside.
///
/// Polytopes of lower affine dimension are represented exactly with pairs of
/// opposite normals; a single point carries an empty facet list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
    normals: Vec<Vec<i64>>,
    offsets: Vec<i64>,
}

/// Sparse Laurent support: exponents paired with complex coefficients.
#[derive(Debug, Clone)]
pub struct Support {
    terms: Vec<(Vec<i64>, Complex64)>,
    dim: usize,
}

impl Support {
    /// Builds a support, merging duplicate exponents by summing coefficients
    /// and dropping exact zeros.
    pub fn new(dim: usize, terms: impl IntoIterator<Item = (Vec<i64>, Complex64)>) -> Result<Self> {
        let mut merged: BTreeMap<Vec<i64>, Complex64> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: e.len(),
                });
            }
            *merged.entry(e).or_insert(Complex64::ZERO) += c;
        }
        let terms: Vec<(Vec<i64>, Complex64)> = merged
            .into_iter()
            .filter(|(_, c)| *c != Complex64::ZERO)
            .collect();
        if terms.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(Support { terms, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(Vec<i64>, Complex64)] {
        &self.terms
    }

    /// Evaluates the Laurent polynomial at a torus point (all coordinates
    /// nonzero).
    pub fn evaluate(&self, t: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono: Complex64 = e
                    .iter()
                    .zip(t)
                    .map(|(&exp, &ti)| ti.powi(exp as i32))
                    .product();
                c * mono
            })
            .sum()
    }
}

/// Newton polytope: convex hull of the exponents with nonzero coefficient.
pub fn newton_polytope(support: &Support) -> Result<LatticePolytope> {
    let points: Vec<Vec<i64>> = support.terms.iter().map(|(e, _)| e.clone()).collect();
    LatticePolytope::from_points(support.dim, points)
}

/// Exact convex hull in facet form. Requires the points to affinely span.
pub fn facet_representation(dim: usize, points: &[Vec<i64>]) -> Result<LatticePolytope> {
    let p = LatticePolytope::from_points(dim, points.to_vec())?;
    if p.affine_dim() != dim {
        return Err(Error::LowerDimensional {
            dim: p.affine_dim(),
            needed: dim,
        });
    }
    Ok(p)
}

impl LatticePolytope {
    /// Convex hull of an arbitrary nonempty set of lattice points. Lower
    /// dimensional hulls get exact facet representations with opposite
    /// normal pairs; a single point gets an empty facet list.
    pub fn from_points(dim: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySupport);
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
        }
        let mut points = points;
        points.sort();
        points.dedup();

        if points.len() == 1 {
            return Ok(LatticePolytope {
                dim,
                vertices: points,
                normals: Vec::new(),
                offsets: Vec::new(),
            });
        }

        let base = points[0].clone();
        let diffs: Vec<Vec<i64>> = points[1..].iter().map(|p| sub(p, &base)).collect();
        let rank = rank_i64(&diffs);
        if rank == dim {
            return Self::full_dimensional(dim, points);
        }

        // Lower dimensional: map onto the saturated difference lattice via
        // Smith normal form, hull there, and lift facets back.
        let d_mat = IntMatrix::from_columns(dim, &diffs);
        let snf = smith_normal_form(&d_mat);
        debug_assert_eq!(snf.rank, rank);
        let u = &snf.u; // dim x dim unimodular; U * diff lands in Z^rank x 0
        let reduce = |p: &[i64]| -> Vec<i64> {
            let q = sub(p, &base);
            (0..rank)
                .map(|row| {
                    let mut acc = BigInt::zero();
                    for (j, &qj) in q.iter().enumerate() {
                        acc += &u[(row, j)] * BigInt::from(qj);
                    }
                    acc.to_i64().expect("reduced coordinate exceeds i64")
                })
                .collect()
        };
        let reduced: Vec<Vec<i64>> = points.iter().map(|p| reduce(p)).collect();
        let inner = Self::full_dimensional(rank, {
            let mut r = reduced.clone();
            r.sort();
            r.dedup();
            r
        })?;

        // Lift: u_ambient = U^T [u_inner; 0], offset adjusted by the base point.
        let mut normals = Vec::new();
        let mut offsets = Vec::new();
        for (nu, &na) in inner.normals.iter().zip(&inner.offsets) {
            let lifted: Vec<i64> = (0..dim)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for (row, &c) in nu.iter().enumerate() {
                        acc += &u[(row, j)] * BigInt::from(c);
                    }
                    acc.to_i64().expect("lifted normal exceeds i64")
                })
                .collect();
            let shift = dot(&lifted, &base);
            let off = na as i128 - shift;
            normals.push(lifted);
            offsets.push(i64::try_from(off).expect("offset exceeds i64"));
        }
        // Equality constraints from the rows of U beyond the rank.
        for row in rank..dim {
            let w: Vec<i64> = (0..dim)
                .map(|j| u[(row, j)].to_i64().expect("row of U exceeds i64"))
                .collect();
            let c = dot(&w, &base);
            let c64 = i64::try_from(c).expect("offset exceeds i64");
            normals.push(w.clone());
            offsets.push(-c64);
            normals.push(w.iter().map(|&x| -x).collect());
            offsets.push(c64);
        }

        // Vertices of the inner hull correspond to original points.
        let mut vertex_set: Vec<Vec<i64>> = Vec::new();
        for v in &inner.vertices {
            let idx = reduced
                .iter()
                .position(|r| r == v)
                .expect("inner vertex must come from an input point");
            vertex_set.push(points[idx].clone());
        }
        vertex_set.sort();

        let mut poly = LatticePolytope {
            dim,
            vertices: vertex_set,
            normals,
            offsets,
        };
        poly.sort_facets();
        Ok(poly)
    }

    fn full_dimensional(dim: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        let simplicial = incremental_hull(&points, dim)?;
        // Collapse the triangulated boundary to the true facet set: dedupe by
        // primitive normal, recompute each offset as -min over the points.
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut normals = Vec::new();
        let mut offsets = Vec::new();
        for f in &simplicial {
            let prim = primitive_vector(&f.normal)?;
            if seen.insert(prim.clone()) {
                let min = points
                    .iter()
                    .map(|p| dot(&prim, p))
                    .min()
                    .expect("nonempty point set");
                normals.push(prim);
                offsets.push(i64::try_from(-min).expect("offset exceeds i64"));
            }
        }

        // A point is a vertex exactly when its active facet normals span.
        let mut vertices = Vec::new();
        for p in &points {
            let active: Vec<Vec<i64>> = normals
                .iter()
                .zip(&offsets)
                .filter(|(u, &a)| dot(u, p) + a as i128 == 0)
                .map(|(u, _)| u.clone())
                .collect();
            if active.len() >= dim && rank_i64(&active) == dim {
                vertices.push(p.clone());
            }
        }
        vertices.sort();

        let mut poly = LatticePolytope {
            dim,
            vertices,
            normals,
            offsets,
        };
        poly.sort_facets();
        Ok(poly)
    }

    fn sort_facets(&mut self) {
        let mut pairs: Vec<(Vec<i64>, i64)> =
            self.normals.drain(..).zip(self.offsets.drain(..)).collect();
        pairs.sort();
        for (u, a) in pairs {
            self.normals.push(u);
            self.offsets.push(a);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Affine dimension of the polytope itself (rank of its difference set).
    pub fn affine_dim(&self) -> usize {
        if self.vertices.len() <= 1 {
            return 0;
        }
        let base = &self.vertices[0];
        let diffs: Vec<Vec<i64>> = self.vertices[1..].iter().map(|p| sub(p, base)).collect();
        rank_i64(&diffs)
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Primitive inward facet normals, the columns of F.
    pub fn normals(&self) -> &[Vec<i64>] {
        &self.normals
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    pub fn facet_count(&self) -> usize {
        self.normals.len()
    }

    /// The facet normal matrix F as an exact n x k integer matrix.
    pub fn normal_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.normals)
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        if self.normals.is_empty() {
            return self.vertices.iter().any(|v| v == m);
        }
        self.normals
            .iter()
            .zip(&self.offsets)
            .all(|(u, &a)| dot(u, m) + a as i128 >= 0)
    }

    /// All lattice points of the polytope, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        if self.vertices.len() == 1 && self.normals.is_empty() {
            return self.vertices.clone();
        }
        let lo: Vec<i64> = (0..self.dim)
            .map(|j| self.vertices.iter().map(|v| v[j]).min().unwrap())
            .collect();
        let hi: Vec<i64> = (0..self.dim)
            .map(|j| self.vertices.iter().map(|v| v[j]).max().unwrap())
            .collect();
        enumerate_box_filtered(&lo, &hi, &self.normals, &self.offsets)
    }

    /// Minkowski sum. The vertex set of P+Q is a subset of pairwise vertex
    /// sums, so hulling those is exact.
    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<LatticePolytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut candidates = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                candidates.push(a.iter().zip(b).map(|(&x, &y)| x + y).collect());
            }
        }
        LatticePolytope::from_points(self.dim, candidates)
    }

    /// The dilate d*P.
    pub fn dilate(&self, d: i64) -> LatticePolytope {
        assert!(d >= 1);
        LatticePolytope {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|&x| x * d).collect())
                .collect(),
            normals: self.normals.clone(),
            offsets: self.offsets.iter().map(|&a| a * d).collect(),
        }
    }

    /// Offset vector of this polytope against an ambient set of rays:
    /// a_i = -min over the polytope of <u_i, m>. Together with the ambient F
    /// this pins the degree class of the associated divisor.
    pub fn divisor_offsets(&self, ambient_normals: &[Vec<i64>]) -> Vec<i64> {
        ambient_normals
            .iter()
            .map(|u| {
                let min = self
                    .vertices
                    .iter()
                    .map(|v| dot(u, v))
                    .min()
                    .expect("polytope has vertices");
                i64::try_from(-min).expect("offset exceeds i64")
            })
            .collect()
    }
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

/// Integer points of a box intersected with facet inequalities, lex order.
fn enumerate_box_filtered(
    lo: &[i64],
    hi: &[i64],
    normals: &[Vec<i64>],
    offsets: &[i64],
) -> Vec<Vec<i64>> {
    let dim = lo.len();
    let mut out = Vec::new();
    let mut current = lo.to_vec();
    'outer: loop {
        let inside = normals
            .iter()
            .zip(offsets)
            .all(|(u, &a)| dot(u, &current) + a as i128 >= 0);
        if inside {
            out.push(current.clone());
        }
        // lexicographic increment with the last axis fastest
        for j in (0..dim).rev() {
            if current[j] < hi[j] {
                current[j] += 1;
                continue 'outer;
            }
            current[j] = lo[j];
            if j == 0 {
                break 'outer;
            }
        }
        if dim == 0 {
            break;
        }
    }
    out
}

/// Lattice points of the rational polytope `{m : F^T m + a >= 0}` given only
/// inequalities. The bounding box comes from exact vertex enumeration over
/// the rationals (Cramer solves of all invertible n-subsets).
pub fn lattice_points_of_inequalities(
    dim: usize,
    normals: &[Vec<i64>],
    offsets: &[i64],
) -> Vec<Vec<i64>> {
    let k = normals.len();
    if k == 0 || dim == 0 {
        return vec![vec![0; dim]];
    }
    if k < dim {
        // Fewer halfspaces than dimensions cannot bound a polytope.
        return Vec::new();
    }
    let mut verts: Vec<(Vec<BigInt>, BigInt)> = Vec::new(); // (numerators, positive denominator)
    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        let mat = IntMatrix::from_fn(dim, dim, |i, j| normals[subset[i]][j]);
        let det = mat.determinant();
        if !det.is_zero() {
            // Solve <u_i, m> = -a_i for i in the subset by Cramer's rule.
            let mut nums = Vec::with_capacity(dim);
            for col in 0..dim {
                let m = IntMatrix::from_fn(dim, dim, |i, j| {
                    if j == col {
                        -offsets[subset[i]]
                    } else {
                        normals[subset[i]][j]
                    }
                });
                nums.push(m.determinant());
            }
            let (nums, den) = if det.is_negative() {
                (nums.into_iter().map(|x| -x).collect::<Vec<_>>(), -det)
            } else {
                (nums, det)
            };
            let feasible = normals.iter().zip(offsets).all(|(u, &a)| {
                let mut acc = BigInt::zero();
                for (j, n) in nums.iter().enumerate() {
                    acc += BigInt::from(u[j]) * n;
                }
                acc += BigInt::from(a) * &den;
                !acc.is_negative()
            });
            if feasible {
                verts.push((nums, den));
            }
        }
        // next k-subset of size dim
        let mut i = dim;
        loop {
            if i == 0 {
                return finish_inequality_enum(dim, normals, offsets, verts);
            }
            i -= 1;
            if subset[i] != i + k - dim {
                subset[i] += 1;
                for j in i + 1..dim {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn finish_inequality_enum(
    dim: usize,
    normals: &[Vec<i64>],
    offsets: &[i64],
    verts: Vec<(Vec<BigInt>, BigInt)>,
) -> Vec<Vec<i64>> {
    if verts.is_empty() {
        return Vec::new();
    }
    let mut lo = vec![i64::MAX; dim];
    let mut hi = vec![i64::MIN; dim];
    for (nums, den) in &verts {
        for j in 0..dim {
            let floor = nums[j].div_floor(den).to_i64().expect("vertex exceeds i64");
            let ceil = -((-&nums[j]).div_floor(den))
                .to_i64()
                .expect("vertex exceeds i64");
            lo[j] = lo[j].min(ceil.min(floor));
            hi[j] = hi[j].max(floor.max(ceil));
        }
    }
    enumerate_box_filtered(&lo, &hi, normals, offsets)
}

/// The standard simplex conv(0, e_1, ..., e_n).
pub fn standard_simplex(n: usize) -> LatticePolytope {
    let mut pts = vec![vec![0; n]];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        pts.push(e);
    }
    LatticePolytope::from_points(n, pts).expect("simplex is full dimensional")
}

/// True when some lattice point m of P0 has differences P0 cap M - m that
/// generate the full lattice; this is what coordinate recovery needs for
/// torus solutions.
pub fn alpha0_generates(p0: &LatticePolytope) -> bool {
    let pts = p0.lattice_points();
    pts.iter().any(|m| {
        let diffs: Vec<Vec<i64>> = pts.iter().map(|p| sub(p, m)).collect();
        crate::lattice::lattice_generates(&diffs, p0.dim())
    })
}

/// Smallest dilate of the standard simplex whose lattice point differences
/// generate the lattice. The unit simplex already qualifies, so this returns
/// it; the loop form keeps the generation check honest.
pub fn generate_alpha0(p: &LatticePolytope) -> LatticePolytope {
    let n = p.dim();
    let simplex = standard_simplex(n);
    for d in 1.. {
        let candidate = simplex.dilate(d);
        if alpha0_generates(&candidate) {
            return candidate;
        }
    }
    unreachable!("the unit simplex generates")
}

/// Mixed volume by inclusion-exclusion over lattice point counts:
/// sum over subsets J of (-1)^(n-|J|) |(P0 + P_J) cap M|.
pub fn mixed_volume(polytopes: &[LatticePolytope], p0: &LatticePolytope) -> Result<usize> {
    let n = polytopes.len();
    for p in polytopes.iter().chain(std::iter::once(p0)) {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.dim(),
            });
        }
    }
    let mut total: i128 = 0;
    for mask in 0u32..(1 << n) {
        let mut sum = p0.clone();
        for (j, poly) in polytopes.iter().enumerate() {
            if mask & (1 << j) != 0 {
                sum = sum.minkowski_sum(poly)?;
            }
        }
        let count = sum.lattice_points().len() as i128;
        let ell = mask.count_ones() as usize;
        if (n - ell).is_multiple_of(2) {
            total += count;
        } else {
            total -= count;
        }
    }
    if total < 0 {
        return Err(Error::Internal(format!(
            "mixed volume came out negative ({total})"
        )));
    }
    Ok(total as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn hirzebruch_p1() -> LatticePolytope {
        LatticePolytope::from_points(
            2,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![1, 1],
                vec![2, 1],
                vec![3, 1],
            ],
        )
        .unwrap()
    }

    fn hirzebruch_p2() -> LatticePolytope {
        LatticePolytope::from_points(2, vec![vec![0, 0], vec![0, 1], vec![1, 1], vec![2, 1]])
            .unwrap()
    }

    #[test]
    fn newton_polytope_triangle() {
        // 1 + t2 + t1 t2 + t1^2 t2
        let s = Support::new(
            2,
            vec![
                (vec![0, 0], c(1.0)),
                (vec![0, 1], c(1.0)),
                (vec![1, 1], c(1.0)),
                (vec![2, 1], c(1.0)),
            ],
        )
        .unwrap();
        let p = newton_polytope(&s).unwrap();
        assert_eq!(p.vertices(), &[vec![0i64, 0], vec![0, 1], vec![2, 1]][..]);
    }

    #[test]
    fn newton_polytope_single_monomial() {
        let s = Support::new(1, vec![(vec![3], c(2.0))]).unwrap();
        let p = newton_polytope(&s).unwrap();
        assert_eq!(p.vertices(), &[vec![3i64]][..]);
        assert!(p.normals().is_empty());
    }

    #[test]
    fn newton_polytope_unit_square() {
        let s = Support::new(
            2,
            vec![
                (vec![0, 0], c(1.0)),
                (vec![1, 0], c(1.0)),
                (vec![0, 1], c(1.0)),
                (vec![1, 1], c(1.0)),
            ],
        )
        .unwrap();
        let p = newton_polytope(&s).unwrap();
        let facets: BTreeSet<(Vec<i64>, i64)> = p
            .normals()
            .iter()
            .cloned()
            .zip(p.offsets().iter().cloned())
            .collect();
        let expected: BTreeSet<(Vec<i64>, i64)> = vec![
            (vec![1, 0], 0),
            (vec![0, 1], 0),
            (vec![-1, 0], 1),
            (vec![0, -1], 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(facets, expected);
    }

    #[test]
    fn all_zero_support_rejected() {
        assert!(matches!(
            Support::new(2, vec![(vec![0, 0], Complex64::ZERO)]),
            Err(Error::EmptySupport)
        ));
    }

    #[test]
    fn hirzebruch_normal_fan() {
        let p = hirzebruch_p1().minkowski_sum(&hirzebruch_p2()).unwrap();
        let normals: BTreeSet<Vec<i64>> = p.normals().iter().cloned().collect();
        let expected: BTreeSet<Vec<i64>> = vec![vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]]
            .into_iter()
            .collect();
        assert_eq!(normals, expected);
        assert_eq!(p.lattice_points().len(), 12);
    }

    #[test]
    fn simplex_facets() {
        let p = standard_simplex(2);
        let facets: BTreeSet<(Vec<i64>, i64)> = p
            .normals()
            .iter()
            .cloned()
            .zip(p.offsets().iter().cloned())
            .collect();
        let expected: BTreeSet<(Vec<i64>, i64)> =
            vec![(vec![1, 0], 0), (vec![0, 1], 0), (vec![-1, -1], 1)]
                .into_iter()
                .collect();
        assert_eq!(facets, expected);
    }

    #[test]
    fn lower_dimensional_rejected_by_facet_representation() {
        let err = facet_representation(2, &[vec![0, 0], vec![2, 2], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::LowerDimensional { dim: 1, needed: 2 }));
    }

    #[test]
    fn segment_in_plane_has_exact_facets() {
        let p = LatticePolytope::from_points(2, vec![vec![0, 0], vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(p.affine_dim(), 1);
        assert_eq!(p.vertices(), &[vec![0i64, 0], vec![2, 2]][..]);
        let pts = p.lattice_points();
        assert_eq!(pts, vec![vec![0, 0], vec![1, 1], vec![2, 2]]);
        assert!(!p.contains(&[1, 0]));
        assert!(!p.contains(&[3, 3]));
    }

    #[test]
    fn minkowski_point_identity() {
        let p = hirzebruch_p1();
        let point = LatticePolytope::from_points(2, vec![vec![0, 0]]).unwrap();
        let sum = p.minkowski_sum(&point).unwrap();
        assert_eq!(sum.vertices(), p.vertices());
        let f1: BTreeSet<(Vec<i64>, i64)> = sum
            .normals()
            .iter()
            .cloned()
            .zip(sum.offsets().iter().cloned())
            .collect();
        let f2: BTreeSet<(Vec<i64>, i64)> = p
            .normals()
            .iter()
            .cloned()
            .zip(p.offsets().iter().cloned())
            .collect();
        assert_eq!(f1, f2);
    }

    #[test]
    fn minkowski_dimension_mismatch() {
        let p = standard_simplex(2);
        let q = standard_simplex(3);
        assert!(matches!(
            p.minkowski_sum(&q),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn minkowski_square_doubles() {
        let sq =
            LatticePolytope::from_points(2, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])
                .unwrap();
        let sum = sq.minkowski_sum(&sq).unwrap();
        assert_eq!(sum.vertices(), sq.dilate(2).vertices());
    }

    #[test]
    fn lattice_point_counts() {
        assert_eq!(standard_simplex(2).lattice_points().len(), 3);
        // (d+1)(d+2)/2 for dilated 2-simplices
        assert_eq!(standard_simplex(2).dilate(5).lattice_points().len(), 21);
    }

    #[test]
    fn divisor_offsets_hirzebruch() {
        let p = hirzebruch_p1().minkowski_sum(&hirzebruch_p2()).unwrap();
        // Fix the ray order of the running example.
        let rays = vec![vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]];
        assert!(rays.iter().all(|r| p.normals().contains(r)));
        assert_eq!(hirzebruch_p1().divisor_offsets(&rays), vec![0, 0, 1, 1]);
        assert_eq!(hirzebruch_p2().divisor_offsets(&rays), vec![0, 0, 0, 1]);
        let point = LatticePolytope::from_points(2, vec![vec![0, 0]]).unwrap();
        assert_eq!(point.divisor_offsets(&rays), vec![0, 0, 0, 0]);
    }

    #[test]
    fn offsets_additive_under_minkowski() {
        let p1 = hirzebruch_p1();
        let p2 = hirzebruch_p2();
        let p = p1.minkowski_sum(&p2).unwrap();
        let rays: Vec<Vec<i64>> = p.normals().to_vec();
        let a1 = p1.divisor_offsets(&rays);
        let a2 = p2.divisor_offsets(&rays);
        let a: Vec<i64> = a1.iter().zip(&a2).map(|(x, y)| x + y).collect();
        assert_eq!(p.divisor_offsets(&rays), a);
        assert_eq!(p.offsets(), &a[..]);
    }

    #[test]
    fn mixed_volume_hirzebruch() {
        let p1 = hirzebruch_p1();
        let p2 = hirzebruch_p2();
        let p = p1.minkowski_sum(&p2).unwrap();
        assert_eq!(mixed_volume(&[p1.clone(), p2.clone()], &p).unwrap(), 3);
        // symmetric and independent of the auxiliary polytope
        assert_eq!(mixed_volume(&[p2.clone(), p1.clone()], &p).unwrap(), 3);
        assert_eq!(
            mixed_volume(&[p1.clone(), p2.clone()], &p.dilate(2)).unwrap(),
            3
        );
        assert_eq!(mixed_volume(&[p1, p2], &standard_simplex(2)).unwrap(), 3);
    }

    #[test]
    fn mixed_volume_square_simplex() {
        let square =
            LatticePolytope::from_points(2, vec![vec![0, 0], vec![4, 0], vec![0, 4], vec![4, 4]])
                .unwrap();
        let tri = standard_simplex(2).dilate(5);
        let p0 = square.minkowski_sum(&tri).unwrap();
        assert_eq!(mixed_volume(&[square, tri], &p0).unwrap(), 40);
    }

    #[test]
    fn mixed_volume_bezout() {
        for (d1, d2) in [(1i64, 1i64), (2, 3), (4, 4)] {
            let p1 = standard_simplex(2).dilate(d1);
            let p2 = standard_simplex(2).dilate(d2);
            let p0 = p1.minkowski_sum(&p2).unwrap();
            assert_eq!(
                mixed_volume(&[p1, p2], &p0).unwrap() as i64,
                d1 * d2,
                "MV(d1*S, d2*S) with d1={d1} d2={d2}"
            );
        }
        let p1 = standard_simplex(3).dilate(2);
        let p2 = standard_simplex(3).dilate(3);
        let p3 = standard_simplex(3);
        let p0 = standard_simplex(3);
        assert_eq!(mixed_volume(&[p1, p2, p3], &p0).unwrap(), 6);
    }

    #[test]
    fn alpha0_default_is_simplex() {
        let p = hirzebruch_p1().minkowski_sum(&hirzebruch_p2()).unwrap();
        let p0 = generate_alpha0(&p);
        assert_eq!(p0.vertices(), standard_simplex(2).vertices());

        let p3 = standard_simplex(3).dilate(2);
        assert_eq!(
            generate_alpha0(&p3).vertices(),
            standard_simplex(3).vertices()
        );
    }

    #[test]
    fn alpha0_override_accepted() {
        let p0 = LatticePolytope::from_points(
            3,
            vec![
                vec![0, 0, 0],
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![0, 0, 2],
            ],
        )
        .unwrap();
        assert!(alpha0_generates(&p0));
    }

    #[test]
    fn hull_idempotence() {
        let p = hirzebruch_p1().minkowski_sum(&hirzebruch_p2()).unwrap();
        let again = facet_representation(2, &p.lattice_points()).unwrap();
        assert_eq!(again.normals(), p.normals());
        assert_eq!(again.offsets(), p.offsets());
        assert_eq!(again.vertices(), p.vertices());
    }

    #[test]
    fn inequality_enumeration_matches_vertex_form() {
        let p = hirzebruch_p1().minkowski_sum(&hirzebruch_p2()).unwrap();
        let via_ineq = lattice_points_of_inequalities(2, p.normals(), p.offsets());
        assert_eq!(via_ineq, p.lattice_points());
    }
}
