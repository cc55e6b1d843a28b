//! Exact convex hulls of small lattice point sets.
//!
//! Beneath-beyond insertion that maintains a triangulated boundary: every
//! boundary facet is an oriented `(r-1)`-simplex with an integer outward
//! normal. Adding a point cones it over the strictly visible facets, so the
//! volume falls out of the construction as a sum of simplex volumes.
//! Arithmetic is `i128` with overflow checks.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational, RationalMatrix};

#[derive(Clone, Debug)]
struct Facet {
    vertices: Vec<usize>,
    normal: Vec<i128>,
    offset: i128,
}

/// Triangulated boundary of a full-dimensional hull.
#[derive(Clone, Debug)]
pub(crate) struct Hull {
    dim: usize,
    points: Vec<Vec<i128>>,
    facets: Vec<Facet>,
    /// `r!` times the Euclidean volume.
    scaled_volume: i128,
}

fn overflow() -> Error {
    Error::Overflow
}

fn checked_dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| {
        x.checked_mul(*y)
            .and_then(|p| acc.checked_add(p))
            .ok_or_else(overflow)
    })
}

/// Fraction-free determinant of a square `i128` matrix given row-major.
pub(crate) fn det_i128(n: usize, mut a: Vec<i128>) -> Result<i128> {
    if n == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i * n + k] != 0) else {
                return Ok(0);
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[i * n + j].checked_mul(a[k * n + k]).ok_or_else(overflow)?;
                let rhs = a[i * n + k].checked_mul(a[k * n + j]).ok_or_else(overflow)?;
                a[i * n + j] = lhs.checked_sub(rhs).ok_or_else(overflow)? / prev;
            }
        }
        prev = a[k * n + k];
    }
    Ok(sign * a[n * n - 1])
}

/// Normal to the hyperplane through `vertices` (r points in R^r), via the
/// generalized cross product of the edge vectors.
fn hyperplane(points: &[Vec<i128>], vertices: &[usize], dim: usize) -> Result<(Vec<i128>, i128)> {
    let base = &points[vertices[0]];
    let edges: Vec<Vec<i128>> = vertices[1..]
        .iter()
        .map(|&v| points[v].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let mut normal = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut minor = Vec::with_capacity((dim - 1) * (dim - 1));
        for e in &edges {
            for (j, x) in e.iter().enumerate() {
                if j != k {
                    minor.push(*x);
                }
            }
        }
        let d = det_i128(dim - 1, minor)?;
        normal.push(if k % 2 == 0 { d } else { -d });
    }
    let offset = checked_dot(&normal, base)?;
    Ok((normal, offset))
}

/// Indices of an affinely independent subset of maximal size, greedily in input order.
pub(crate) fn affine_basis(points: &[Vec<i64>]) -> Vec<usize> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let dim = first.len();
    let mut chosen = vec![0];
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if rows.len() == dim {
            break;
        }
        let diff: Vec<Rational> = p.iter().zip(first).map(|(a, b)| rat(a - b, 1)).collect();
        rows.push(diff);
        let rank = RationalMatrix::from_rows(dim, rows.clone())
            .expect("equal lengths")
            .rank();
        if rank == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}

impl Hull {
    /// Builds the hull of a full-dimensional point set; `None` when the
    /// points span a proper affine subspace.
    pub(crate) fn build(points: &[Vec<i64>]) -> Result<Option<Hull>> {
        let Some(first) = points.first() else {
            return Ok(None);
        };
        let dim = first.len();
        let basis = affine_basis(points);
        if basis.len() != dim + 1 {
            return Ok(None);
        }
        let pts: Vec<Vec<i128>> = points
            .iter()
            .map(|p| p.iter().map(|&x| x as i128).collect())
            .collect();
        // (dim + 1) * centroid of the initial simplex; strictly interior forever
        let mut interior = vec![0i128; dim];
        for &v in &basis {
            for (acc, x) in interior.iter_mut().zip(&pts[v]) {
                *acc = acc.checked_add(*x).ok_or_else(overflow)?;
            }
        }
        let mut hull = Hull {
            dim,
            points: pts,
            facets: Vec::new(),
            scaled_volume: 0,
        };
        let scale = (dim + 1) as i128;
        let make_facet = |hull: &Hull, vertices: Vec<usize>| -> Result<Facet> {
            let (mut normal, mut offset) = hyperplane(&hull.points, &vertices, dim)?;
            let side = checked_dot(&normal, &interior)?
                .checked_sub(offset.checked_mul(scale).ok_or_else(overflow)?)
                .ok_or_else(overflow)?;
            debug_assert_ne!(side, 0, "interior point on a facet hyperplane");
            if side > 0 {
                normal.iter_mut().for_each(|x| *x = -*x);
                offset = -offset;
            }
            Ok(Facet {
                vertices,
                normal,
                offset,
            })
        };

        for skip in 0..=dim {
            let vertices: Vec<usize> = basis
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, &v)| v)
                .collect();
            let f = make_facet(&hull, vertices)?;
            hull.facets.push(f);
        }
        let f0 = &hull.facets[0];
        let apex = &hull.points[basis[0]];
        hull.scaled_volume = (checked_dot(&f0.normal, apex)? - f0.offset).abs();

        let in_basis = {
            let mut v = vec![false; points.len()];
            basis.iter().for_each(|&i| v[i] = true);
            v
        };
        for p in 0..points.len() {
            if in_basis[p] {
                continue;
            }
            let mut visible = Vec::new();
            let mut added: i128 = 0;
            for (fi, f) in hull.facets.iter().enumerate() {
                let h = checked_dot(&f.normal, &hull.points[p])? - f.offset;
                if h > 0 {
                    visible.push(fi);
                    added = added.checked_add(h).ok_or_else(overflow)?;
                }
            }
            if visible.is_empty() {
                continue;
            }
            hull.scaled_volume = hull.scaled_volume.checked_add(added).ok_or_else(overflow)?;

            let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
            for &fi in &visible {
                let vs = &hull.facets[fi].vertices;
                for skip in 0..vs.len() {
                    let mut ridge: Vec<usize> = vs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    ridge.sort_unstable();
                    *ridges.entry(ridge).or_default() += 1;
                }
            }
            let mut horizon: Vec<Vec<usize>> = ridges
                .into_iter()
                .filter(|(_, count)| *count == 1)
                .map(|(r, _)| r)
                .collect();
            horizon.sort();

            let mut is_visible = vec![false; hull.facets.len()];
            visible.iter().for_each(|&i| is_visible[i] = true);
            let mut kept: Vec<Facet> = hull
                .facets
                .drain(..)
                .enumerate()
                .filter(|(i, _)| !is_visible[*i])
                .map(|(_, f)| f)
                .collect();
            for mut ridge in horizon {
                ridge.push(p);
                let f = make_facet(&hull, ridge)?;
                kept.push(f);
            }
            hull.facets = kept;
        }
        Ok(Some(hull))
    }

    pub(crate) fn volume(&self) -> Rational {
        let fact: i64 = (1..=self.dim as i64).product();
        Rational::new(self.scaled_volume.into(), fact.into())
    }

    /// Distinct facet hyperplanes as primitive `(normal, offset)` with
    /// `normal · x <= offset` on the hull.
    pub(crate) fn facet_inequalities(&self) -> Vec<(Vec<i64>, i64)> {
        let mut out: Vec<(Vec<i64>, i64)> = Vec::new();
        for f in &self.facets {
            let g = f
                .normal
                .iter()
                .fold(f.offset.unsigned_abs(), |acc, x| gcd(acc, x.unsigned_abs()))
                .max(1) as i128;
            let normal: Vec<i64> = f.normal.iter().map(|x| (x / g) as i64).collect();
            let offset = (f.offset / g) as i64;
            if !out.iter().any(|(n, o)| *n == normal && *o == offset) {
                out.push((normal, offset));
            }
        }
        out.sort();
        out
    }

    /// Input indices that are vertices: the facet normals active there span R^r.
    pub(crate) fn vertex_indices(&self) -> Vec<usize> {
        let ineqs = self.facet_inequalities();
        (0..self.points.len())
            .filter(|&p| {
                let active: Vec<Vec<Rational>> = ineqs
                    .iter()
                    .filter(|(n, o)| {
                        let v: i128 = n
                            .iter()
                            .zip(&self.points[p])
                            .map(|(a, b)| *a as i128 * b)
                            .sum();
                        v == *o as i128
                    })
                    .map(|(n, _)| n.iter().map(|&x| rat(x, 1)).collect())
                    .collect();
                !active.is_empty()
                    && RationalMatrix::from_rows(self.dim, active)
                        .expect("normals have length dim")
                        .rank()
                        == self.dim
            })
            .collect()
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
