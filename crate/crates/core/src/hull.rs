//! Exact incremental convex hull over the integers for small dimensions.
//!
//! The hull drives facet normals for the grading, so everything is computed
//! with integer arithmetic; a single wrong normal would corrupt the normal
//! fan. Intermediates use i128 accumulators.

use crate::error::{Error, Result};

/// One simplicial facet of the triangulated boundary.
#[derive(Debug, Clone)]
pub(crate) struct SimplicialFacet {
    /// Indices into the point list, `dim` of them.
    pub vertices: Vec<usize>,
    /// Inward normal, not necessarily primitive.
    pub normal: Vec<i64>,
    /// `<normal, x> + offset >= 0` holds inside the hull.
    pub offset: i128,
}

impl SimplicialFacet {
    fn height(&self, p: &[i64]) -> i128 {
        dot(&self.normal, p) + self.offset
    }
}

pub(crate) fn dot(u: &[i64], p: &[i64]) -> i128 {
    u.iter().zip(p).map(|(&a, &b)| a as i128 * b as i128).sum()
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => {
            let mut acc = 0i128;
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let sub: Vec<Vec<i128>> = (1..n)
                    .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c]).collect())
                    .collect();
                let term = m[0][j].checked_mul(det_i128(&sub)).expect("det overflow");
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// Rank of a set of integer vectors, by fraction-free elimination.
pub(crate) fn rank_i64(vectors: &[Vec<i64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].len();
    let mut m: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        for i in 0..m.len() {
            if i == rank || m[i][col] == 0 {
                continue;
            }
            let (a, b) = (m[rank][col], m[i][col]);
            let pivot_row = m[rank].clone();
            for (x, &p) in m[i].iter_mut().zip(&pivot_row) {
                let scaled = p.checked_mul(b).expect("rank overflow");
                *x = x
                    .checked_mul(a)
                    .and_then(|v| v.checked_sub(scaled))
                    .expect("rank overflow");
            }
            let g = row_gcd(&m[i]);
            if g > 1 {
                for x in m[i].iter_mut() {
                    *x /= g;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn row_gcd(row: &[i128]) -> i128 {
    let mut g: i128 = 0;
    for &x in row {
        let mut a = g.abs();
        let mut b = x.abs();
        while b != 0 {
            let r = a % b;
            a = b;
            b = r;
        }
        g = a;
    }
    g
}

/// Normal of the hyperplane through `pts` (dim points spanning it), via
/// cofactors of the difference matrix.
fn hyperplane_normal(points: &[Vec<i64>], simplex: &[usize], dim: usize) -> Vec<i64> {
    let base = &points[simplex[0]];
    let diffs: Vec<Vec<i128>> = simplex[1..]
        .iter()
        .map(|&i| {
            points[i]
                .iter()
                .zip(base)
                .map(|(&a, &b)| (a - b) as i128)
                .collect()
        })
        .collect();
    (0..dim)
        .map(|j| {
            let sub: Vec<Vec<i128>> = diffs
                .iter()
                .map(|row| (0..dim).filter(|&c| c != j).map(|c| row[c]).collect())
                .collect();
            let d = det_i128(&sub);
            let signed = if j % 2 == 0 { d } else { -d };
            i64::try_from(signed).expect("facet normal exceeds i64")
        })
        .collect()
}

/// Triangulated boundary of the convex hull of full-dimensional `points`.
///
/// Returns `Error::LowerDimensional` if the points do not affinely span.
pub(crate) fn incremental_hull(points: &[Vec<i64>], dim: usize) -> Result<Vec<SimplicialFacet>> {
    assert!(dim >= 1);
    if dim == 1 {
        let (mut lo, mut hi) = (0usize, 0usize);
        for (i, p) in points.iter().enumerate() {
            if p[0] < points[lo][0] {
                lo = i;
            }
            if p[0] > points[hi][0] {
                hi = i;
            }
        }
        if points[lo][0] == points[hi][0] {
            return Err(Error::LowerDimensional { dim: 0, needed: 1 });
        }
        return Ok(vec![
            SimplicialFacet {
                vertices: vec![lo],
                normal: vec![1],
                offset: -(points[lo][0] as i128),
            },
            SimplicialFacet {
                vertices: vec![hi],
                normal: vec![-1],
                offset: points[hi][0] as i128,
            },
        ]);
    }

    // Seed with an affinely independent simplex.
    let mut simplex = vec![0usize];
    for (i, _) in points.iter().enumerate().skip(1) {
        let mut diffs: Vec<Vec<i64>> = simplex[1..]
            .iter()
            .map(|&s| sub(&points[s], &points[simplex[0]]))
            .collect();
        diffs.push(sub(&points[i], &points[simplex[0]]));
        if rank_i64(&diffs) == diffs.len() {
            simplex.push(i);
            if simplex.len() == dim + 1 {
                break;
            }
        }
    }
    if simplex.len() < dim + 1 {
        return Err(Error::LowerDimensional {
            dim: simplex.len() - 1,
            needed: dim,
        });
    }

    // Reference point: dim * centroid of the simplex (kept integer by scaling).
    let interior_ref: Vec<i64> = (0..dim)
        .map(|j| {
            let s: i64 = simplex.iter().map(|&i| points[i][j]).sum();
            // scaled by (dim+1); heights below account for the scale factor
            s
        })
        .collect();

    let mut facets: Vec<SimplicialFacet> = Vec::new();
    for drop in 0..=dim {
        let verts: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|&(idx, _)| idx != drop)
            .map(|(_, &v)| v)
            .collect();
        facets.push(facet_through_scaled(points, verts, &interior_ref, dim));
    }

    for (i, p) in points.iter().enumerate() {
        if simplex.contains(&i) {
            continue;
        }
        let visible: Vec<usize> = (0..facets.len())
            .filter(|&f| facets[f].height(p) < 0)
            .collect();
        if visible.is_empty() {
            continue; // inside or on the boundary
        }
        // Horizon: ridges of visible facets not shared by two visible facets.
        use std::collections::HashMap;
        let mut ridge_count: HashMap<Vec<usize>, usize> = HashMap::new();
        for &f in &visible {
            for skip in 0..dim {
                let mut r: Vec<usize> = facets[f]
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|&(idx, _)| idx != skip)
                    .map(|(_, &v)| v)
                    .collect();
                r.sort_unstable();
                *ridge_count.entry(r).or_insert(0) += 1;
            }
        }
        let mut horizon: Vec<Vec<usize>> = ridge_count
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort();

        let visible_set: std::collections::HashSet<usize> = visible.iter().copied().collect();
        let mut kept: Vec<SimplicialFacet> = facets
            .drain(..)
            .enumerate()
            .filter(|(idx, _)| !visible_set.contains(idx))
            .map(|(_, f)| f)
            .collect();
        for ridge in horizon {
            let mut verts = ridge;
            verts.push(i);
            kept.push(facet_through_scaled(points, verts, &interior_ref, dim));
        }
        facets = kept;
    }
    Ok(facets)
}

/// Like `facet_through` but the reference point carries a scale factor of
/// (dim+1), so heights are compared as `<u, ref> + (dim+1) * offset`.
fn facet_through_scaled(
    points: &[Vec<i64>],
    verts: Vec<usize>,
    interior_ref: &[i64],
    dim: usize,
) -> SimplicialFacet {
    let mut normal = hyperplane_normal(points, &verts, dim);
    let mut offset = -dot(&normal, &points[verts[0]]);
    let h = dot(&normal, interior_ref) + offset * (dim as i128 + 1);
    debug_assert!(h != 0, "interior reference lies on a facet hyperplane");
    if h < 0 {
        normal.iter_mut().for_each(|x| *x = -*x);
        offset = -offset;
    }
    SimplicialFacet {
        vertices: verts,
        normal,
        offset,
    }
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_hull() {
        let pts: Vec<Vec<i64>> = vec![
            vec![0, 0],
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            // interior-ish duplicates on edges are skipped
            vec![2, 2],
        ];
        let facets = incremental_hull(&pts, 2).unwrap();
        // Triangulated boundary of the quadrilateral (0,0),(1,0),(2,2),(0,1).
        assert!(facets.len() >= 4);
        for f in &facets {
            for p in &pts {
                assert!(f.height(p) >= 0);
            }
        }
    }

    #[test]
    fn lower_dimensional_detected() {
        let pts: Vec<Vec<i64>> = vec![vec![0, 0], vec![1, 1], vec![2, 2]];
        match incremental_hull(&pts, 2) {
            Err(Error::LowerDimensional { dim, needed }) => {
                assert_eq!((dim, needed), (1, 2));
            }
            other => panic!("expected LowerDimensional, got {other:?}"),
        }
    }

    #[test]
    fn simplex_3d() {
        let pts: Vec<Vec<i64>> = vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let facets = incremental_hull(&pts, 3).unwrap();
        assert_eq!(facets.len(), 4);
        for f in &facets {
            for p in &pts {
                assert!(f.height(p) >= 0);
            }
        }
    }
}
