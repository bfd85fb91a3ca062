//! Exact integer linear algebra: matrices over arbitrary-precision integers,
//! Smith normal form, primitive vectors and lattice generation tests.
//!
//! Everything here is exact. Smith normal form intermediates overflow fixed
//! width integers even on small inputs, so entries are `BigInt` throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense matrix with arbitrary-precision integer entries, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = BigInt::from(f(i, j));
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, columns: &[Vec<i64>]) -> Self {
        IntMatrix::from_fn(dim, columns.len(), |i, j| columns[j][i])
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        IntMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j])
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(l, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant requires a square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self[(i, j)].clone()).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    pub fn to_i64(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| i64::try_from(&self[(i, j)]).expect("entry exceeds i64"))
                    .collect()
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// Smith normal form `U * A * V = S` with unimodular `U`, `V` and a diagonal
/// divisibility chain `m_1 | m_2 | ... | m_r` of positive invariant factors.
#[derive(Debug, Clone)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub s: IntMatrix,
    pub rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

/// Computes the Smith normal form of `a`.
///
/// Pivots are chosen with minimal absolute value to slow entry growth. The
/// output is deterministic for a fixed input.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let rows = a.nrows();
    let cols = a.ncols();
    assert!(rows > 0 && cols > 0, "smith_normal_form of empty matrix");
    let mut b = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        'pivot: loop {
            // Locate the minimal-absolute-value nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if b[(i, j)].is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some(p) => {
                            if b[(i, j)].abs() < b[p].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot; // trailing block is zero; done
            };
            swap_rows(&mut b, &mut u, t, pi);
            swap_cols(&mut b, &mut v, t, pj);

            // Reduce the pivot column and row by the pivot.
            let mut dirty = false;
            for i in t + 1..rows {
                if !b[(i, t)].is_zero() {
                    let q = div_round(&b[(i, t)], &b[(t, t)]);
                    if !q.is_zero() {
                        row_axpy(&mut b, &mut u, i, t, &q);
                    }
                    if !b[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !b[(t, j)].is_zero() {
                    let q = div_round(&b[(t, j)], &b[(t, t)]);
                    if !q.is_zero() {
                        col_axpy(&mut b, &mut v, j, t, &q);
                    }
                    if !b[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'pivot; // remainders left; pick a smaller pivot
            }

            // Divisibility sweep: fold in any entry the pivot does not divide.
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&b[(i, j)] % &b[(t, t)]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut b, &mut u, t, i, &minus_one); // row_t += row_i
                    continue 'pivot;
                }
                None => break 'pivot,
            }
        }
    }

    // Fix signs so invariant factors come out positive.
    for t in 0..steps {
        if b[(t, t)].is_negative() {
            for i in 0..rows {
                let neg = -&b[(i, t)];
                b[(i, t)] = neg;
            }
            // b column negation must be mirrored by V column negation.
            for i in 0..cols {
                let neg = -&v[(i, t)];
                v[(i, t)] = neg;
            }
        }
    }

    let mut factors = Vec::new();
    for t in 0..steps {
        if b[(t, t)].is_zero() {
            break;
        }
        factors.push(b[(t, t)].clone());
    }
    let rank = factors.len();
    SnfDecomposition {
        u,
        v,
        s: b,
        rank,
        invariant_factors: factors,
    }
}

fn swap_rows(b: &mut IntMatrix, u: &mut IntMatrix, r0: usize, r1: usize) {
    if r0 == r1 {
        return;
    }
    for j in 0..b.ncols() {
        let tmp = b[(r0, j)].clone();
        b[(r0, j)] = b[(r1, j)].clone();
        b[(r1, j)] = tmp;
    }
    for j in 0..u.ncols() {
        let tmp = u[(r0, j)].clone();
        u[(r0, j)] = u[(r1, j)].clone();
        u[(r1, j)] = tmp;
    }
}

fn swap_cols(b: &mut IntMatrix, v: &mut IntMatrix, c0: usize, c1: usize) {
    if c0 == c1 {
        return;
    }
    for i in 0..b.nrows() {
        let tmp = b[(i, c0)].clone();
        b[(i, c0)] = b[(i, c1)].clone();
        b[(i, c1)] = tmp;
    }
    for i in 0..v.nrows() {
        let tmp = v[(i, c0)].clone();
        v[(i, c0)] = v[(i, c1)].clone();
        v[(i, c1)] = tmp;
    }
}

/// row_i -= q * row_t, mirrored on U. With q = -1 this adds row_t += row_i.
fn row_axpy(b: &mut IntMatrix, u: &mut IntMatrix, i: usize, t: usize, q: &BigInt) {
    for j in 0..b.ncols() {
        let delta = q * &b[(t, j)];
        b[(i, j)] -= delta;
    }
    for j in 0..u.ncols() {
        let delta = q * &u[(t, j)];
        u[(i, j)] -= delta;
    }
}

/// col_j -= q * col_t, mirrored on V.
fn col_axpy(b: &mut IntMatrix, v: &mut IntMatrix, j: usize, t: usize, q: &BigInt) {
    for i in 0..b.nrows() {
        let delta = q * &b[(i, t)];
        b[(i, j)] -= delta;
    }
    for i in 0..v.nrows() {
        let delta = q * &v[(i, t)];
        v[(i, j)] -= delta;
    }
}

/// Rounded division keeps remainders at most half the divisor, which speeds
/// up the Euclidean descent on the pivot.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if (&r * 2i32).abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Divides a nonzero integer vector by the gcd of its entries.
pub fn primitive_vector(v: &[i64]) -> Result<Vec<i64>> {
    let mut g: i64 = 0;
    for &x in v {
        g = gcd_i64(g, x);
    }
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|&x| x / g).collect())
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// True iff the integer span of `vectors` is all of Z^n: the Smith normal
/// form of the matrix of vectors has rank n with every invariant factor 1.
pub fn lattice_generates(vectors: &[Vec<i64>], n: usize) -> bool {
    if vectors.is_empty() {
        return n == 0;
    }
    debug_assert!(vectors.iter().all(|v| v.len() == n));
    let m = IntMatrix::from_columns(n, vectors);
    let snf = smith_normal_form(&m);
    snf.rank == n && snf.invariant_factors.iter().all(|f| f.is_one())
}

/// Rank of an integer matrix, via its Smith normal form.
pub fn integer_rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank
}
