//! The ring of homogeneous coordinates of the toric compactification: one
//! variable per ray, graded by the divisor class group Z^k / im F^T. Degrees
//! are carried as concrete offset vectors a in Z^k; class equality is decided
//! through a Smith-normal-form canonical form, which handles torsion (e.g.
//! weighted projective spaces) uniformly.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{smith_normal_form, IntMatrix};
use crate::polytope::{lattice_points_of_inequalities, LatticePolytope, Support};

/// Canonical form of a divisor class: a free part in Z^(k-n) plus residues
/// modulo the nontrivial invariant factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeClass {
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
}

/// A degree of the graded ring: a representative offset vector together with
/// its canonical class. Two degrees are equal exactly when the canonical
/// forms agree, i.e. when the representatives differ by an element of im F^T.
#[derive(Debug, Clone)]
pub struct GradedDegree {
    representative: Vec<i64>,
    class: DegreeClass,
}

impl GradedDegree {
    pub fn representative(&self) -> &[i64] {
        &self.representative
    }

    pub fn class(&self) -> &DegreeClass {
        &self.class
    }
}

impl PartialEq for GradedDegree {
    fn eq(&self, other: &Self) -> bool {
        self.class == other.class
    }
}
impl Eq for GradedDegree {}

/// Homogeneous element of the Cox ring: terms with exponents in N^k, all of
/// one degree class.
#[derive(Debug, Clone)]
pub struct CoxPolynomial {
    terms: Vec<(Vec<i64>, Complex64)>,
    degree: GradedDegree,
}

impl CoxPolynomial {
    pub fn terms(&self) -> &[(Vec<i64>, Complex64)] {
        &self.terms
    }

    pub fn degree(&self) -> &GradedDegree {
        &self.degree
    }

    /// Evaluates at a point of C^k; the empty product convention 0^0 = 1
    /// applies so that constants survive at the origin.
    pub fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| c * monomial_value(e, z))
            .sum()
    }
}

pub fn monomial_value(exponent: &[i64], z: &[Complex64]) -> Complex64 {
    exponent
        .iter()
        .zip(z)
        .map(|(&e, &zi)| {
            if e == 0 {
                Complex64::ONE
            } else {
                zi.powi(e as i32)
            }
        })
        .product()
}

/// A square system of Laurent polynomials over the n-torus.
#[derive(Debug, Clone)]
pub struct LaurentSystem {
    dim: usize,
    polynomials: Vec<Support>,
}

impl LaurentSystem {
    pub fn new(dim: usize, polynomials: Vec<Support>) -> Result<Self> {
        if polynomials.len() != dim {
            return Err(Error::NotSquare {
                equations: polynomials.len(),
                variables: dim,
            });
        }
        for p in &polynomials {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
        }
        Ok(LaurentSystem { dim, polynomials })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn polynomials(&self) -> &[Support] {
        &self.polynomials
    }
}

/// Image of a point of C^k under the torus quotient map.
#[derive(Debug, Clone, PartialEq)]
pub enum PiImage {
    /// All Cox coordinates nonzero: an honest torus point.
    Torus(Vec<Complex64>),
    /// Some coordinates vanish: the point sits on the named divisors.
    Boundary(Vec<usize>),
}

/// Cox ring data of the toric variety with ray matrix F.
#[derive(Debug, Clone)]
pub struct CoxRing {
    n: usize,
    k: usize,
    rays: Vec<Vec<i64>>,
    /// Unimodular U from U * F^T * V = S; maps Z^k onto SNF coordinates.
    u_cl: IntMatrix,
    /// Unimodular V (n x n) from the same decomposition.
    v_cl: IntMatrix,
    /// All n invariant factors of F^T (trivial ones included).
    factors: Vec<BigInt>,
    complete: bool,
}

/// Builds the ring of the normal fan of a full-dimensional polytope.
pub fn build_cox_ring(p: &LatticePolytope) -> Result<CoxRing> {
    CoxRing::from_rays(p.dim(), p.normals().to_vec())
}

impl CoxRing {
    /// Builds the ring directly from ray generators (columns of F).
    pub fn from_rays(n: usize, rays: Vec<Vec<i64>>) -> Result<Self> {
        let k = rays.len();
        let f = IntMatrix::from_columns(n, &rays);
        let snf = smith_normal_form(&f.transpose());
        if snf.rank < n {
            return Err(Error::RankDeficientRays {
                rank: snf.rank,
                needed: n,
            });
        }
        // The graded pieces are bounded exactly when the rays positively
        // span, i.e. the origin is strictly inside the convex hull of the
        // ray generators.
        let complete = match LatticePolytope::from_points(n, rays.clone()) {
            Ok(hull) => {
                hull.affine_dim() == n && {
                    let origin = vec![0i64; n];
                    hull.normals().iter().zip(hull.offsets()).all(|(u, &a)| {
                        let h: i64 = u.iter().zip(&origin).map(|(x, y)| x * y).sum::<i64>() + a;
                        h > 0
                    })
                }
            }
            Err(_) => false,
        };
        Ok(CoxRing {
            n,
            k,
            rays,
            u_cl: snf.u,
            v_cl: snf.v,
            factors: snf.invariant_factors,
            complete,
        })
    }

    pub fn torus_dim(&self) -> usize {
        self.n
    }

    pub fn ray_count(&self) -> usize {
        self.k
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn normal_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.n, &self.rays)
    }

    /// Rank of the free part of the class group.
    pub fn class_rank(&self) -> usize {
        self.k - self.n
    }

    /// F^T m + a, the exponent of the homogenization of the character m.
    pub fn homogenize_exponent(&self, m: &[i64], a: &[i64]) -> Vec<i64> {
        self.rays
            .iter()
            .zip(a)
            .map(|(u, &ai)| u.iter().zip(m).map(|(&x, &y)| x * y).sum::<i64>() + ai)
            .collect()
    }

    /// Canonical class of an offset vector under the quotient by im F^T.
    pub fn degree_class(&self, a: &[i64]) -> DegreeClass {
        assert_eq!(a.len(), self.k);
        let ua: Vec<BigInt> = (0..self.k)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, &aj) in a.iter().enumerate() {
                    acc += &self.u_cl[(i, j)] * BigInt::from(aj);
                }
                acc
            })
            .collect();
        let free = ua[self.n..].to_vec();
        let torsion = (0..self.n)
            .filter(|&i| !self.factors[i].is_one())
            .map(|i| ua[i].mod_floor(&self.factors[i]))
            .collect();
        DegreeClass { free, torsion }
    }

    pub fn degree(&self, a: &[i64]) -> GradedDegree {
        GradedDegree {
            representative: a.to_vec(),
            class: self.degree_class(a),
        }
    }

    /// Recovers the lattice point m with F^T m = e - a, when one exists.
    pub fn recover_lattice_point(&self, e: &[i64], a: &[i64]) -> Option<Vec<i64>> {
        let diff: Vec<BigInt> = e
            .iter()
            .zip(a)
            .map(|(&x, &y)| BigInt::from(x - y))
            .collect();
        let c: Vec<BigInt> = (0..self.k)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, d) in diff.iter().enumerate() {
                    acc += &self.u_cl[(i, j)] * d;
                }
                acc
            })
            .collect();
        if c[self.n..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut w = Vec::with_capacity(self.n);
        for (ci, factor) in c.iter().zip(&self.factors) {
            let (q, r) = ci.div_rem(factor);
            if !r.is_zero() {
                return None;
            }
            w.push(q);
        }
        let m: Vec<i64> = (0..self.n)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, wj) in w.iter().enumerate() {
                    acc += &self.v_cl[(i, j)] * wj;
                }
                acc.to_i64().expect("lattice point exceeds i64")
            })
            .collect();
        Some(m)
    }

    /// Integer basis of the kernel of F, i.e. the lattice of one-parameter
    /// scalings of the reductive group acting on Cox coordinates. These are
    /// the rows of the class-group transform beyond the torus rank.
    pub fn scaling_lattice_basis(&self) -> Vec<Vec<i64>> {
        (self.n..self.k)
            .map(|row| {
                (0..self.k)
                    .map(|j| {
                        self.u_cl[(row, j)]
                            .to_i64()
                            .expect("kernel entry exceeds i64")
                    })
                    .collect()
            })
            .collect()
    }

    /// Lattice points of the polytope {m : F^T m + a >= 0}, lex ordered.
    pub fn graded_points(&self, a: &[i64]) -> Result<Vec<Vec<i64>>> {
        if !self.complete {
            return Err(Error::UnboundedDegree);
        }
        assert_eq!(a.len(), self.k);
        let offsets: Vec<i64> = a.to_vec();
        Ok(lattice_points_of_inequalities(self.n, &self.rays, &offsets))
    }

    /// Monomial exponents x^(F^T m + a) spanning the graded piece of a.
    pub fn graded_basis(&self, a: &[i64]) -> Result<Vec<Vec<i64>>> {
        Ok(self
            .graded_points(a)?
            .iter()
            .map(|m| self.homogenize_exponent(m, a))
            .collect())
    }

    /// Homogenizes a Laurent support with respect to the offset vector a:
    /// the term c * t^m becomes c * x^(F^T m + a).
    pub fn homogenize(&self, support: &Support, a: &[i64]) -> Result<CoxPolynomial> {
        let mut terms = Vec::with_capacity(support.terms().len());
        for (m, c) in support.terms() {
            let e = self.homogenize_exponent(m, a);
            if let Some(facet) = e.iter().position(|&x| x < 0) {
                return Err(Error::HomogenizationOutside {
                    exponent: m.clone(),
                    facet,
                });
            }
            terms.push((e, *c));
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(CoxPolynomial {
            terms,
            degree: self.degree(a),
        })
    }

    /// The quotient map to the torus: t_i is the product of z_j to the
    /// F_(i,j). Points with vanishing coordinates map to the boundary and
    /// come back tagged with the incident divisor indices.
    pub fn pi_map(&self, z: &[Complex64]) -> PiImage {
        assert_eq!(z.len(), self.k);
        let zero: Vec<usize> = z
            .iter()
            .enumerate()
            .filter(|(_, v)| **v == Complex64::ZERO)
            .map(|(i, _)| i)
            .collect();
        if !zero.is_empty() {
            return PiImage::Boundary(zero);
        }
        let t = (0..self.n)
            .map(|i| {
                self.rays
                    .iter()
                    .zip(z)
                    .map(|(u, &zj)| zj.powi(u[i] as i32))
                    .product()
            })
            .collect();
        PiImage::Torus(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{newton_polytope, standard_simplex};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// The running surface: rays in the order of the reference fan picture.
    pub(crate) fn hirzebruch_ring() -> CoxRing {
        CoxRing::from_rays(2, vec![vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]]).unwrap()
    }

    fn f1_support() -> Support {
        Support::new(
            2,
            vec![
                (vec![0, 0], c(1.0)),
                (vec![1, 0], c(1.0)),
                (vec![0, 1], c(1.0)),
                (vec![1, 1], c(1.0)),
                (vec![2, 1], c(1.0)),
                (vec![3, 1], c(1.0)),
            ],
        )
        .unwrap()
    }

    fn f2_support() -> Support {
        Support::new(
            2,
            vec![
                (vec![0, 0], c(1.0)),
                (vec![0, 1], c(1.0)),
                (vec![1, 1], c(1.0)),
                (vec![2, 1], c(1.0)),
            ],
        )
        .unwrap()
    }

    /// Reference grading of the running example: deg(x^b) = (b1-2b2+b3, b2+b4).
    fn reference_degree(b: &[i64]) -> (i64, i64) {
        (b[0] - 2 * b[1] + b[2], b[1] + b[3])
    }

    #[test]
    fn grading_matches_reference_up_to_isomorphism() {
        let ring = hirzebruch_ring();
        assert_eq!(ring.ray_count(), 4);
        assert_eq!(ring.class_rank(), 2);
        // Classes must separate exactly as the reference grading does.
        let samples: Vec<Vec<i64>> = vec![
            vec![0, 0, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![1, 0, 1, 0],
            vec![0, 0, 1, 1],
            vec![2, 1, 0, 0],
            vec![0, 1, 2, 0],
            vec![3, 1, 0, 1],
            vec![1, 1, 1, 0],
            vec![5, 2, 0, 0],
        ];
        for a in &samples {
            for b in &samples {
                let same_ref = reference_degree(a) == reference_degree(b);
                let same_class = ring.degree_class(a) == ring.degree_class(b);
                assert_eq!(same_ref, same_class, "a={a:?} b={b:?}");
            }
        }
    }

    #[test]
    fn grading_kills_the_character_lattice() {
        let ring = hirzebruch_ring();
        let zero = ring.degree_class(&[0, 0, 0, 0]);
        for m in [vec![1i64, 0], vec![0, 1], vec![-3, 7]] {
            let e = ring.homogenize_exponent(&m, &[0, 0, 0, 0]);
            assert_eq!(ring.degree_class(&e), zero);
        }
    }

    #[test]
    fn projective_space_grading_is_total_degree() {
        let ring = build_cox_ring(&standard_simplex(3)).unwrap();
        assert_eq!(ring.ray_count(), 4);
        assert_eq!(ring.class_rank(), 1);
        let total = |b: &[i64]| b.iter().sum::<i64>();
        let samples = vec![
            vec![1i64, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![2, 1, 0, 0],
            vec![0, 3, 0, 0],
            vec![1, 1, 1, 0],
        ];
        for a in &samples {
            for b in &samples {
                assert_eq!(
                    total(a) == total(b),
                    ring.degree_class(a) == ring.degree_class(b)
                );
            }
        }
    }

    #[test]
    fn vision_rays_build() {
        let ring = CoxRing::from_rays(
            3,
            vec![
                vec![0, 1, 0],
                vec![-1, -1, 0],
                vec![-1, -1, -1],
                vec![0, 0, 1],
                vec![1, 0, 0],
                vec![0, 0, -1],
            ],
        )
        .unwrap();
        assert_eq!(ring.ray_count(), 6);
        assert_eq!(ring.class_rank(), 3);
    }

    #[test]
    fn homogenize_running_example() {
        let ring = hirzebruch_ring();
        let f2 = ring.homogenize(&f2_support(), &[0, 0, 0, 1]).unwrap();
        let exps: Vec<Vec<i64>> = f2.terms().iter().map(|(e, _)| e.clone()).collect();
        // x4 + x2 x3^2 + x1 x2 x3 + x1^2 x2
        let mut expected = vec![
            vec![0i64, 0, 0, 1],
            vec![0, 1, 2, 0],
            vec![1, 1, 1, 0],
            vec![2, 1, 0, 0],
        ];
        expected.sort();
        assert_eq!(exps, expected);

        let f1 = ring.homogenize(&f1_support(), &[0, 0, 1, 1]).unwrap();
        let exps: Vec<Vec<i64>> = f1.terms().iter().map(|(e, _)| e.clone()).collect();
        // x3 x4 + x1 x4 + x2 x3^3 + x1 x2 x3^2 + x1^2 x2 x3 + x1^3 x2
        let mut expected = vec![
            vec![0i64, 0, 1, 1],
            vec![1, 0, 0, 1],
            vec![0, 1, 3, 0],
            vec![1, 1, 2, 0],
            vec![2, 1, 1, 0],
            vec![3, 1, 0, 0],
        ];
        expected.sort();
        assert_eq!(exps, expected);

        // Degree classes match the offset vectors that induced them.
        assert_eq!(*f1.degree(), ring.degree(&[0, 0, 1, 1]));
        assert_eq!(*f2.degree(), ring.degree(&[0, 0, 0, 1]));
    }

    #[test]
    fn homogenize_constant() {
        let ring = hirzebruch_ring();
        let one = Support::new(2, vec![(vec![0, 0], c(1.0))]).unwrap();
        let p = ring.homogenize(&one, &[0, 0, 0, 0]).unwrap();
        assert_eq!(p.terms(), &[(vec![0, 0, 0, 0], c(1.0))]);
        assert_eq!(p.degree().class(), &ring.degree_class(&[0, 0, 0, 0]));
    }

    #[test]
    fn homogenize_outside_polytope_fails() {
        let ring = hirzebruch_ring();
        let s = Support::new(2, vec![(vec![5, 0], c(1.0))]).unwrap();
        let err = ring.homogenize(&s, &[0, 0, 1, 1]).unwrap_err();
        assert!(matches!(err, Error::HomogenizationOutside { .. }));
    }

    #[test]
    fn graded_basis_sizes() {
        let ring = hirzebruch_ring();
        // alpha = alpha1 + alpha2 has the 12 monomials of the reference table.
        let basis = ring.graded_basis(&[0, 0, 1, 2]).unwrap();
        assert_eq!(basis.len(), 12);
        assert!(basis.contains(&vec![0, 0, 1, 2])); // x3 x4^2
        assert!(basis.contains(&vec![5, 2, 0, 0])); // x1^5 x2^2
        assert!(basis.contains(&vec![0, 2, 5, 0])); // x2^2 x3^5

        // a = 0 spans only the constants.
        assert_eq!(
            ring.graded_basis(&[0, 0, 0, 0]).unwrap(),
            vec![vec![0, 0, 0, 0]]
        );

        // The simplex offsets (0,0,1,1) induce the class (1,1), whose degree
        // polytope is strictly larger than the simplex itself: the graded
        // piece is spanned by x3 x4, x1 x4, x2 x3^3, x1 x2 x3^2, x1^2 x2 x3
        // and x1^3 x2.
        let simplex = standard_simplex(2);
        let a0 = simplex.divisor_offsets(ring.rays());
        assert_eq!(a0, vec![0, 0, 1, 1]);
        let basis = ring.graded_basis(&a0).unwrap();
        assert_eq!(basis.len(), 6);
        assert!(basis.contains(&vec![0, 0, 1, 1]));
        assert!(basis.contains(&vec![3, 1, 0, 0]));
    }

    #[test]
    fn evaluation_at_orbit_representatives() {
        let ring = hirzebruch_ring();
        let f1 = ring.homogenize(&f1_support(), &[0, 0, 1, 1]).unwrap();
        let f2 = ring.homogenize(&f2_support(), &[0, 0, 0, 1]).unwrap();
        let z1 = [c(-1.0), c(-1.0), c(1.0), c(1.0)];
        let z3 = [c(1.0), c(-1.0), c(0.0), c(1.0)];
        assert!(f2.evaluate(&z1).norm() < 1e-15);
        assert!(f1.evaluate(&z1).norm() < 1e-15);
        assert!(f1.evaluate(&z3).norm() < 1e-15);
        assert!(f2.evaluate(&z3).norm() < 1e-15);

        let mono = CoxPolynomial {
            terms: vec![(vec![1, 0, 1, 0], c(1.0))],
            degree: ring.degree(&[1, 0, 1, 0]),
        };
        assert_eq!(mono.evaluate(&[c(2.0), c(9.0), c(5.0), c(7.0)]), c(10.0));
    }

    #[test]
    fn pi_map_examples() {
        let ring = hirzebruch_ring();
        match ring.pi_map(&[c(-1.0), c(-1.0), c(1.0), c(1.0)]) {
            PiImage::Torus(t) => {
                assert!((t[0] - c(-1.0)).norm() < 1e-15);
                assert!((t[1] - c(-1.0)).norm() < 1e-15);
            }
            other => panic!("expected torus point, got {other:?}"),
        }
        match ring.pi_map(&[c(0.0), c(-1.0), c(1.0), c(1.0)]) {
            PiImage::Boundary(set) => assert_eq!(set, vec![0]),
            other => panic!("expected boundary, got {other:?}"),
        }
        match ring.pi_map(&[c(1.0), c(1.0), c(1.0), c(1.0)]) {
            PiImage::Torus(t) => assert!(t.iter().all(|x| (x - c(1.0)).norm() < 1e-15)),
            other => panic!("expected torus point, got {other:?}"),
        }
    }

    #[test]
    fn torus_evaluation_consistent_with_homogenization() {
        // f(x) = x^a * fhat(pi(x)) for points with nonzero coordinates.
        let ring = hirzebruch_ring();
        let s = f1_support();
        let a = [0, 0, 1, 1];
        let f = ring.homogenize(&s, &a).unwrap();
        let z = [
            Complex64::new(0.7, -0.2),
            Complex64::new(-1.1, 0.4),
            Complex64::new(0.3, 0.9),
            Complex64::new(-0.5, -0.6),
        ];
        let PiImage::Torus(t) = ring.pi_map(&z) else {
            panic!("expected torus point");
        };
        let lhs = f.evaluate(&z);
        let za = monomial_value(&[0, 0, 1, 1], &z);
        let rhs = za * s.evaluate(&t);
        assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
    }

    #[test]
    fn group_action_fixes_degree_ratios() {
        // G = {(l, m, l, l^2 m)} acts on C^4; ratios of equal-degree elements
        // are invariant.
        let ring = hirzebruch_ring();
        let f1 = ring.homogenize(&f1_support(), &[0, 0, 1, 1]).unwrap();
        let basis = ring.graded_basis(&[0, 0, 1, 1]).unwrap();
        let q = CoxPolynomial {
            terms: vec![(basis[0].clone(), c(1.0)), (basis[1].clone(), c(0.5))],
            degree: ring.degree(&[0, 0, 1, 1]),
        };
        let z = [
            Complex64::new(0.9, 0.1),
            Complex64::new(-0.3, 0.8),
            Complex64::new(0.4, -0.7),
            Complex64::new(1.2, 0.5),
        ];
        let (l, m) = (Complex64::new(0.6, 1.1), Complex64::new(-0.8, 0.3));
        let gz = [z[0] * l, z[1] * m, z[2] * l, z[3] * l * l * m];
        let r1 = f1.evaluate(&z) / q.evaluate(&z);
        let r2 = f1.evaluate(&gz) / q.evaluate(&gz);
        assert!((r1 - r2).norm() < 1e-10 * (1.0 + r1.norm()));
    }

    #[test]
    fn torsion_classes_are_canonical() {
        // Rays (1,1), (1,-1), (-1,1), (-1,-1): the class group is Z^2 + Z/2.
        let ring = CoxRing::from_rays(2, vec![vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]])
            .unwrap();
        assert_eq!(ring.class_rank(), 2);
        let zero = ring.degree_class(&[0, 0, 0, 0]);
        for m in [vec![1i64, 0], vec![0, 1], vec![2, -3]] {
            let e = ring.homogenize_exponent(&m, &[0, 0, 0, 0]);
            assert_eq!(ring.degree_class(&e), zero);
        }
        // There is a 2-torsion class: nonzero, but twice it is zero.
        let mut found = None;
        'outer: for a1 in -1i64..=1 {
            for a2 in -1i64..=1 {
                for a3 in -1i64..=1 {
                    for a4 in -1i64..=1 {
                        let a = [a1, a2, a3, a4];
                        let double = [2 * a1, 2 * a2, 2 * a3, 2 * a4];
                        if ring.degree_class(&a) != zero && ring.degree_class(&double) == zero {
                            found = Some(a);
                            break 'outer;
                        }
                    }
                }
            }
        }
        assert!(found.is_some(), "expected a 2-torsion divisor class");
    }

    #[test]
    fn rank_deficient_rays_rejected() {
        let err = CoxRing::from_rays(2, vec![vec![1, 0], vec![-1, 0], vec![2, 0]]).unwrap_err();
        assert!(matches!(
            err,
            Error::RankDeficientRays { rank: 1, needed: 2 }
        ));
    }

    #[test]
    fn incomplete_fan_has_unbounded_pieces() {
        let ring = CoxRing::from_rays(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(matches!(
            ring.graded_basis(&[0, 0]),
            Err(Error::UnboundedDegree)
        ));
    }

    #[test]
    fn lattice_point_recovery() {
        let ring = hirzebruch_ring();
        let a = [0, 0, 1, 2];
        for m in ring.graded_points(&a).unwrap() {
            let e = ring.homogenize_exponent(&m, &a);
            assert_eq!(ring.recover_lattice_point(&e, &a), Some(m));
        }
        assert_eq!(
            ring.recover_lattice_point(&[1, 0, 0, 0], &[0, 0, 0, 0]),
            None
        );
    }

    #[test]
    fn newton_polytope_ring_roundtrip() {
        let p1 = newton_polytope(&f1_support()).unwrap();
        let p2 = newton_polytope(&f2_support()).unwrap();
        let p = p1.minkowski_sum(&p2).unwrap();
        let ring = build_cox_ring(&p).unwrap();
        assert_eq!(ring.ray_count(), 4);
        // grading annihilates F^T regardless of ray order
        let zero = ring.degree_class(&[0; 4]);
        for m in [vec![1i64, 0], vec![0, 1]] {
            let e = ring.homogenize_exponent(&m, &[0; 4]);
            assert_eq!(ring.degree_class(&e), zero);
        }
    }
}
