//! Newton polytopes, exact volumes and mixed volumes.
//!
//! Mixed volume is normalized so that `MV(P, ..., P) = r! Vol(P)`: the
//! standard simplices have mixed volume 1 and `r` segments have mixed volume
//! `|det|` of their edge vectors.
//!
//! Two independent engines are provided: inclusion–exclusion over Minkowski
//! sums ([`mixed_volume_ie`]) and mixed cells of a random lifting
//! ([`enumerate_mixed_cells`]).

mod cells;
mod hull;
pub mod lp;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational, RationalMatrix};
use crate::polynomial::Polynomial;

pub use cells::{enumerate_mixed_cells, mixed_volume_cells, MixedCell, CELLS_MAX_DIM};

/// Largest ambient dimension for which hulls are computed.
pub const HULL_MAX_DIM: usize = 7;
/// Largest number of polytopes for inclusion–exclusion.
pub const IE_MAX_DIM: usize = 6;

/// A nonempty finite set of distinct lattice points in `Z^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointConfiguration {
    dim: usize,
    points: Vec<Vec<i64>>,
}

impl PointConfiguration {
    /// Keeps the first occurrence of repeated points.
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::Contract("empty point configuration".into()));
        };
        let dim = first.len();
        let mut distinct: Vec<Vec<i64>> = Vec::with_capacity(points.len());
        for p in points {
            if p.len() != dim {
                return Err(Error::Dimension(format!(
                    "point of length {} in a configuration of dimension {dim}",
                    p.len()
                )));
            }
            if !distinct.contains(&p) {
                distinct.push(p);
            }
        }
        Ok(Self {
            dim,
            points: distinct,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn translate(&self, shift: &[i64]) -> Result<Self> {
        if shift.len() != self.dim {
            return Err(Error::Dimension("translation of the wrong length".into()));
        }
        Ok(Self {
            dim: self.dim,
            points: self
                .points
                .iter()
                .map(|p| p.iter().zip(shift).map(|(a, b)| a + b).collect())
                .collect(),
        })
    }
}

/// The support of `p`, whose convex hull is the Newton polytope.
pub fn newton_polytope(p: &Polynomial) -> Result<PointConfiguration> {
    if p.is_zero() {
        return Err(Error::Contract("the zero polynomial has no Newton polytope".into()));
    }
    PointConfiguration::new(p.support())
}

/// Vertex and facet description of `conv(P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    pub dim: usize,
    pub affine_dim: usize,
    /// Vertices in the order they appear in the input.
    pub vertices: Vec<Vec<i64>>,
    /// Primitive `(normal, offset)` with `normal · x <= offset`, sorted;
    /// empty unless the polytope is full-dimensional.
    pub facets: Vec<(Vec<i64>, i64)>,
    pub volume: Rational,
}

impl Polytope {
    pub fn hull(config: &PointConfiguration) -> Result<Self> {
        if config.dim > HULL_MAX_DIM {
            return Err(Error::Capability(format!(
                "hulls are limited to dimension {HULL_MAX_DIM}, got {}",
                config.dim
            )));
        }
        analyze(config.points())
    }
}

fn analyze(points: &[Vec<i64>]) -> Result<Polytope> {
    let dim = points[0].len();
    let basis = hull::affine_basis(points);
    let affine_dim = basis.len() - 1;
    if affine_dim == dim {
        let h = hull::Hull::build(points)?.expect("full-dimensional");
        let vertices = h.vertex_indices().into_iter().map(|i| points[i].clone()).collect();
        return Ok(Polytope {
            dim,
            affine_dim,
            vertices,
            facets: h.facet_inequalities(),
            volume: h.volume(),
        });
    }
    let vertices = if affine_dim == 0 {
        vec![points[0].clone()]
    } else {
        // coordinates on which the affine hull projects injectively
        let rows: Vec<Vec<Rational>> = basis[1..]
            .iter()
            .map(|&i| {
                points[i]
                    .iter()
                    .zip(&points[basis[0]])
                    .map(|(a, b)| rat(a - b, 1))
                    .collect()
            })
            .collect();
        let coords = RationalMatrix::from_rows(dim, rows)?.rref().pivot_columns;
        let projected: Vec<Vec<i64>> = points
            .iter()
            .map(|p| coords.iter().map(|&j| p[j]).collect())
            .collect();
        let h = hull::Hull::build(&projected)?.expect("full-dimensional after projection");
        h.vertex_indices().into_iter().map(|i| points[i].clone()).collect()
    };
    Ok(Polytope {
        dim,
        affine_dim,
        vertices,
        facets: Vec::new(),
        volume: Rational::zero(),
    })
}

/// Euclidean volume of `conv(P)`; zero for lower-dimensional sets.
pub fn convex_hull_volume(config: &PointConfiguration) -> Result<Rational> {
    Ok(Polytope::hull(config)?.volume)
}

fn pointwise_sum(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            let s: Vec<i64> = p.iter().zip(q).map(|(x, y)| x + y).collect();
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// Vertices of `conv(P) + conv(Q)`.
pub fn minkowski_sum(p: &PointConfiguration, q: &PointConfiguration) -> Result<PointConfiguration> {
    if p.dim != q.dim {
        return Err(Error::Dimension(format!(
            "Minkowski sum of dimensions {} and {}",
            p.dim, q.dim
        )));
    }
    let vp = Polytope::hull(p)?.vertices;
    let vq = Polytope::hull(q)?.vertices;
    PointConfiguration::new(analyze(&pointwise_sum(&vp, &vq))?.vertices)
}

fn check_system(configs: &[PointConfiguration], cap: usize) -> Result<usize> {
    let r = configs.len();
    if r == 0 {
        return Err(Error::Contract("mixed volume of no polytopes".into()));
    }
    if let Some(c) = configs.iter().find(|c| c.dim != r) {
        return Err(Error::Dimension(format!(
            "{r} polytopes need dimension {r}, got {}",
            c.dim
        )));
    }
    if r > cap {
        return Err(Error::Capability(format!(
            "mixed volume is limited to dimension {cap}, got {r}"
        )));
    }
    Ok(r)
}

/// Mixed volume by inclusion–exclusion over all partial Minkowski sums.
pub fn mixed_volume_ie(configs: &[PointConfiguration]) -> Result<Rational> {
    let r = check_system(configs, IE_MAX_DIM)?;
    let mut vertices: Vec<Vec<Vec<i64>>> = Vec::with_capacity(r);
    for c in configs {
        vertices.push(analyze(c.points())?.vertices);
    }
    // sums[mask] holds the vertices of the partial sum indexed by `mask`
    let mut sums: Vec<Vec<Vec<i64>>> = vec![Vec::new(); 1 << r];
    let mut total = Rational::zero();
    for mask in 1usize..(1 << r) {
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << top);
        let points = if rest == 0 {
            vertices[top].clone()
        } else {
            pointwise_sum(&sums[rest], &vertices[top])
        };
        let poly = analyze(&points)?;
        if (r - mask.count_ones() as usize).is_multiple_of(2) {
            total += &poly.volume;
        } else {
            total -= &poly.volume;
        }
        sums[mask] = poly.vertices;
    }
    Ok(total)
}
