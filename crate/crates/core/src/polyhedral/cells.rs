//! Fine mixed cells of a random integer lifting.
//!
//! A tuple of edges `{a_i, b_i}`, one per configuration, is a mixed cell
//! when some `γ` makes every `(a_i, ω(a_i))`, `(b_i, ω(b_i))` a lowest
//! point of its lifted configuration in direction `(γ, 1)` and every other
//! lifted point strictly higher. The cell contributes `|det(a_i - b_i)|`.
//! A tie (feasible only with `>=`) means the lifting is not generic; it is
//! redrawn.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::generic::MAX_RESAMPLE_ROUNDS;
use crate::linalg::{int, integer_determinant, Rational};

use super::lp::{feasible, Constraint, Relation};
use super::{check_system, PointConfiguration};

/// Largest number of configurations accepted by cell enumeration.
pub const CELLS_MAX_DIM: usize = 8;
const LIFT_MAX: i64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedCell {
    /// Indices into each configuration's points.
    pub edge_indices: Vec<(usize, usize)>,
    pub edges: Vec<(Vec<i64>, Vec<i64>)>,
    pub volume: Rational,
}

impl MixedCell {
    /// Edge directions `b_i - a_i`.
    pub fn directions(&self) -> Vec<Vec<i64>> {
        self.edges
            .iter()
            .map(|(a, b)| b.iter().zip(a).map(|(x, y)| x - y).collect())
            .collect()
    }
}

/// Equalities and strict inequalities on `γ` for edge `(a, b)` of one configuration.
fn edge_constraints(
    config: &PointConfiguration,
    lift: &[i64],
    a: usize,
    b: usize,
    out: &mut Vec<Constraint>,
) {
    let pts = config.points();
    let diff = |p: usize, q: usize| -> Vec<Rational> {
        pts[p].iter().zip(&pts[q]).map(|(x, y)| int(x - y)).collect()
    };
    out.push(Constraint::new(diff(a, b), Relation::Eq, int(lift[b] - lift[a])));
    for c in (0..pts.len()).filter(|&c| c != a && c != b) {
        out.push(Constraint::new(diff(c, a), Relation::Gt, int(lift[a] - lift[c])));
    }
}

enum Verdict {
    Strict,
    Tight,
    Empty,
}

fn classify(dim: usize, system: &[Constraint]) -> Verdict {
    if feasible(dim, system) {
        return Verdict::Strict;
    }
    let relaxed: Vec<Constraint> = system.iter().map(Constraint::relaxed).collect();
    if feasible(dim, &relaxed) {
        Verdict::Tight
    } else {
        Verdict::Empty
    }
}

/// Mixed cells for a fixed lifting, or `None` if the lifting is not generic.
pub fn mixed_cells_for_lifting(
    configs: &[PointConfiguration],
    lifting: &[Vec<i64>],
) -> Result<Option<Vec<MixedCell>>> {
    let r = check_system(configs, CELLS_MAX_DIM)?;
    if lifting.len() != r || lifting.iter().zip(configs).any(|(l, c)| l.len() != c.len()) {
        return Err(Error::Dimension("lifting does not match the configurations".into()));
    }

    // edges that are lower edges of their own lifted configuration
    let mut candidates: Vec<Vec<(usize, usize)>> = Vec::with_capacity(r);
    for (config, lift) in configs.iter().zip(lifting) {
        let mut edges = Vec::new();
        for a in 0..config.len() {
            for b in a + 1..config.len() {
                let mut system = Vec::new();
                edge_constraints(config, lift, a, b, &mut system);
                match classify(r, &system) {
                    Verdict::Strict => edges.push((a, b)),
                    Verdict::Tight => return Ok(None),
                    Verdict::Empty => {}
                }
            }
        }
        if edges.is_empty() {
            return Ok(Some(Vec::new()));
        }
        candidates.push(edges);
    }

    let mut cells = Vec::new();
    let mut choice = vec![0usize; r];
    loop {
        let tuple: Vec<(usize, usize)> = (0..r).map(|i| candidates[i][choice[i]]).collect();
        let columns: Vec<Vec<i64>> = tuple
            .iter()
            .zip(configs)
            .map(|(&(a, b), c)| {
                c.points()[b].iter().zip(&c.points()[a]).map(|(x, y)| x - y).collect()
            })
            .collect();
        let det: BigInt = integer_determinant(&columns)?;
        let mut system = Vec::new();
        for ((&(a, b), c), lift) in tuple.iter().zip(configs).zip(lifting) {
            edge_constraints(c, lift, a, b, &mut system);
        }
        match classify(r, &system) {
            Verdict::Strict if det.is_positive() || det.is_negative() => {
                cells.push(MixedCell {
                    edges: tuple
                        .iter()
                        .zip(configs)
                        .map(|(&(a, b), c)| (c.points()[a].clone(), c.points()[b].clone()))
                        .collect(),
                    edge_indices: tuple,
                    volume: Rational::from_integer(det.abs()),
                });
            }
            Verdict::Strict | Verdict::Tight => return Ok(None),
            Verdict::Empty => {}
        }

        let mut i = r;
        loop {
            if i == 0 {
                return Ok(Some(cells));
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

fn draw_lifting(configs: &[PointConfiguration], rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    configs
        .iter()
        .map(|c| (0..c.len()).map(|_| rng.random_range(0..=LIFT_MAX)).collect())
        .collect()
}

/// Fine mixed cells of a seeded random lifting, redrawn on ties.
pub fn enumerate_mixed_cells(configs: &[PointConfiguration], seed: u64) -> Result<Vec<MixedCell>> {
    check_system(configs, CELLS_MAX_DIM)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RESAMPLE_ROUNDS {
        let lifting = draw_lifting(configs, &mut rng);
        if let Some(cells) = mixed_cells_for_lifting(configs, &lifting)? {
            return Ok(cells);
        }
    }
    Err(Error::RetryBudgetExhausted(MAX_RESAMPLE_ROUNDS))
}

/// Sum of the cell volumes.
pub fn mixed_volume_cells(configs: &[PointConfiguration], seed: u64) -> Result<Rational> {
    Ok(enumerate_mixed_cells(configs, seed)?
        .iter()
        .map(|c| c.volume.clone())
        .sum())
}
