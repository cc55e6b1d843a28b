//! Partitionable conservation laws and the determinant formula for the mixed
//! volume of a square binomial system.
//!
//! A network is partitionable when its conservation space has a basis of 0/1
//! vectors with disjoint supports and every generator is homogeneous for
//! each of them. For `s - k` binomial generators the mixed volume of the
//! generators together with the `k` conservation laws is then either 0 or
//! `|det M_α|`, where `M_α` has the binomial edges and `e_{α_j}` as columns
//! for any choice `α_j ∈ supp(w_j)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::binomiality::support_partition;
use crate::error::{Error, Result};
use crate::linalg::{integer_determinant, Rational};
use crate::network::Network;
use crate::polyhedral::{enumerate_mixed_cells, PointConfiguration, CELLS_MAX_DIM};
use crate::polynomial::{Binomial, Polynomial};

/// Disjoint 0/1 grading vectors with a homogeneity flag per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCertificate {
    pub species: usize,
    /// `w_1, ..., w_k`, ordered by smallest support index.
    pub w_list: Vec<Vec<i64>>,
    pub multihomogeneous: Vec<bool>,
    /// Set when homogeneity followed from connectivity instead of a term check.
    pub connectivity_shortcut: bool,
}

impl PartitionCertificate {
    /// Certificate for an abstract system; fails unless the vectors are 0/1
    /// with disjoint nonempty supports and every generator is homogeneous.
    pub fn new(species: usize, w_list: Vec<Vec<i64>>, generators: &[Polynomial]) -> Result<Self> {
        let mut used = vec![false; species];
        for w in &w_list {
            if w.len() != species {
                return Err(Error::Dimension(format!(
                    "grading vector of length {} for {species} species",
                    w.len()
                )));
            }
            if w.iter().any(|&x| x != 0 && x != 1) || w.iter().all(|&x| x == 0) {
                return Err(Error::Contract("grading vectors must be nonzero 0/1 vectors".into()));
            }
            for (i, _) in w.iter().enumerate().filter(|(_, &x)| x == 1) {
                if std::mem::replace(&mut used[i], true) {
                    return Err(Error::Contract("grading vectors must have disjoint supports".into()));
                }
            }
        }
        if let Some(bad) = generators.iter().position(|g| g.nvars() != species) {
            return Err(Error::Dimension(format!("generator {bad} has the wrong number of variables")));
        }
        if let Some((g, w, a, b)) = first_inhomogeneous(generators, &w_list) {
            return Err(Error::Contract(format!(
                "generator {g} is not homogeneous for w = {w:?}: w·{a:?} ≠ w·{b:?}"
            )));
        }
        Ok(Self {
            species,
            w_list,
            multihomogeneous: vec![true; generators.len()],
            connectivity_shortcut: false,
        })
    }

    pub fn k(&self) -> usize {
        self.w_list.len()
    }

    /// `supp(w_j)`, ascending.
    pub fn support(&self, j: usize) -> Vec<usize> {
        self.w_list[j]
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionRefusal {
    /// A block of the conservation space is not spanned by one 0/1 vector.
    NoZeroOneBasis {
        block: Vec<usize>,
        dimension: usize,
        reason: String,
    },
    /// `w · a ≠ w · b` for two terms of one generator.
    NotHomogeneous {
        generator: usize,
        w: Vec<i64>,
        a: Vec<i64>,
        b: Vec<i64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionOutcome {
    Partitionable(PartitionCertificate),
    Refused(PartitionRefusal),
}

impl PartitionOutcome {
    pub fn certificate(&self) -> Option<&PartitionCertificate> {
        match self {
            PartitionOutcome::Partitionable(c) => Some(c),
            PartitionOutcome::Refused(_) => None,
        }
    }
}

fn degree(w: &[i64], e: &[i64]) -> i64 {
    w.iter().zip(e).map(|(a, b)| a * b).sum()
}

/// `(generator, w, a, b)`.
type Witness = (usize, Vec<i64>, Vec<i64>, Vec<i64>);

/// First `(generator, w, a, b)` with `w·a ≠ w·b`, scanning generators, then
/// grading vectors, then term pairs in term order.
fn first_inhomogeneous(
    generators: &[Polynomial],
    w_list: &[Vec<i64>],
) -> Option<Witness> {
    for (g, poly) in generators.iter().enumerate() {
        let support = poly.support();
        for w in w_list {
            for (i, a) in support.iter().enumerate() {
                if let Some(b) = support[i + 1..].iter().find(|b| degree(w, a) != degree(w, b)) {
                    return Some((g, w.clone(), a.clone(), b.clone()));
                }
            }
        }
    }
    None
}

/// True when the reaction graph has a single linkage class.
///
/// Every polynomial supported on the complexes of such a network is then
/// homogeneous for every conservation law, since `w·y` is constant along
/// reactions.
pub fn weakly_connected_multihomogeneity(network: &Network) -> bool {
    network.linkage_structure().classes.len() == 1
}

/// Decides partitionability of the conservation laws with respect to `generators`.
pub fn partitionable_check(network: &Network, generators: &[Polynomial]) -> Result<PartitionOutcome> {
    if generators.is_empty() {
        return Err(Error::Contract("partitionability needs at least one generator".into()));
    }
    let s = network.num_species();
    if let Some(bad) = generators.iter().position(|g| g.nvars() != s) {
        return Err(Error::Dimension(format!("generator {bad} has the wrong number of variables")));
    }
    let laws: Vec<Vec<Rational>> = network.conservation_space().into_iter().map(|l| l.w).collect();
    let mut w_list = Vec::new();
    for block in support_partition(s, &laws).into_iter().filter(|b| b.supported) {
        if block.dimension() != 1 {
            return Ok(PartitionOutcome::Refused(PartitionRefusal::NoZeroOneBasis {
                dimension: block.dimension(),
                reason: format!(
                    "{} species carry a {}-dimensional block of conservation laws",
                    block.indices.len(),
                    block.dimension()
                ),
                block: block.indices,
            }));
        }
        // RREF rows lead with 1, so the block is 0/1 iff every entry is 0 or 1
        let v = &block.basis[0];
        if v.iter().any(|x| !x.is_zero() && !x.is_one()) {
            return Ok(PartitionOutcome::Refused(PartitionRefusal::NoZeroOneBasis {
                dimension: 1,
                reason: "the conservation law on this block is not a 0/1 vector".into(),
                block: block.indices,
            }));
        }
        w_list.push(v.iter().map(|x| if x.is_zero() { 0 } else { 1 }).collect::<Vec<i64>>());
    }

    let complexes = network.complexes();
    let on_complexes = generators
        .iter()
        .all(|g| g.support().iter().all(|e| complexes.contains(e)));
    if weakly_connected_multihomogeneity(network) && on_complexes {
        return Ok(PartitionOutcome::Partitionable(PartitionCertificate {
            species: s,
            w_list,
            multihomogeneous: vec![true; generators.len()],
            connectivity_shortcut: true,
        }));
    }
    if let Some((generator, w, a, b)) = first_inhomogeneous(generators, &w_list) {
        return Ok(PartitionOutcome::Refused(PartitionRefusal::NotHomogeneous { generator, w, a, b }));
    }
    Ok(PartitionOutcome::Partitionable(PartitionCertificate {
        species: s,
        w_list,
        multihomogeneous: vec![true; generators.len()],
        connectivity_shortcut: false,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MvMethod {
    Determinant,
    InclusionExclusion,
    MixedCells,
    ClosedForm,
}

impl MvMethod {
    pub fn name(self) -> &'static str {
        match self {
            MvMethod::Determinant => "determinant",
            MvMethod::InclusionExclusion => "inclusion-exclusion",
            MvMethod::MixedCells => "mixed-cells",
            MvMethod::ClosedForm => "closed-form",
        }
    }
}

/// The parallelotope `Σ conv(y_1^{(i)}, y_2^{(i)}) + Σ conv(0, e_{α_j})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedCell {
    pub edges: Vec<(Vec<i64>, Vec<i64>)>,
    pub volume: BigInt,
}

impl PredictedCell {
    pub fn directions(&self) -> Vec<Vec<i64>> {
        self.edges
            .iter()
            .map(|(a, b)| b.iter().zip(a).map(|(x, y)| x - y).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvReport {
    pub value: BigInt,
    pub method: MvMethod,
    /// 0-based `α_j`, present for the determinant method.
    pub alpha_choices: Option<Vec<usize>>,
    pub cell: Option<PredictedCell>,
    /// `det ≠ 0` but no mixed cell has been found yet.
    pub conditional: bool,
}

impl MvReport {
    /// Report for an oracle value, which must be a nonnegative integer.
    pub fn from_value(value: Rational, method: MvMethod) -> Result<Self> {
        if !value.is_integer() || value.is_negative() {
            return Err(Error::Contract(format!("mixed volume {value} is not a nonnegative integer")));
        }
        Ok(Self {
            value: value.to_integer(),
            method,
            alpha_choices: None,
            cell: None,
            conditional: false,
        })
    }
}

fn check_square(cert: &PartitionCertificate, generators: &[Binomial]) -> Result<()> {
    let expected = cert.species - cert.k();
    if generators.len() != expected {
        return Err(Error::Contract(format!(
            "a square system needs s - k = {expected} binomials, got {}",
            generators.len()
        )));
    }
    if generators.iter().any(|g| g.nvars() != cert.species) {
        return Err(Error::Dimension("binomial in the wrong number of variables".into()));
    }
    Ok(())
}

fn resolve_alpha(cert: &PartitionCertificate, alpha: Option<&[usize]>) -> Result<Vec<usize>> {
    match alpha {
        None => Ok((0..cert.k()).map(|j| cert.support(j)[0]).collect()),
        Some(a) => {
            if a.len() != cert.k() {
                return Err(Error::Contract(format!(
                    "{} α choices for {} conservation laws",
                    a.len(),
                    cert.k()
                )));
            }
            for (j, &aj) in a.iter().enumerate() {
                if !cert.support(j).contains(&aj) {
                    return Err(Error::Contract(format!("α_{} = {aj} is not in supp(w_{})", j + 1, j + 1)));
                }
            }
            Ok(a.to_vec())
        }
    }
}

fn unit(s: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; s];
    e[i] = 1;
    e
}

fn determinant_for(cert: &PartitionCertificate, generators: &[Binomial], alpha: &[usize]) -> Result<BigInt> {
    let mut columns: Vec<Vec<i64>> = generators.iter().map(Binomial::edge).collect();
    columns.extend(alpha.iter().map(|&a| unit(cert.species, a)));
    integer_determinant(&columns)
}

/// `|det M_α|`, conditional until a mixed cell confirms it.
pub fn fast_mixed_volume(
    cert: &PartitionCertificate,
    generators: &[Binomial],
    alpha: Option<&[usize]>,
) -> Result<MvReport> {
    check_square(cert, generators)?;
    let alpha = resolve_alpha(cert, alpha)?;
    let det = determinant_for(cert, generators, &alpha)?;
    let cell = predicted_mixed_cell(cert, generators, Some(&alpha))?;
    Ok(MvReport {
        value: det.abs(),
        method: MvMethod::Determinant,
        alpha_choices: Some(alpha),
        conditional: !det.is_zero(),
        cell,
    })
}

/// Whether `|det M_α|` is the same for every `α ∈ supp(w_1) × ... × supp(w_k)`.
pub fn alpha_invariance(cert: &PartitionCertificate, generators: &[Binomial]) -> Result<bool> {
    check_square(cert, generators)?;
    let supports: Vec<Vec<usize>> = (0..cert.k()).map(|j| cert.support(j)).collect();
    let mut choice = vec![0usize; supports.len()];
    let mut reference: Option<BigInt> = None;
    loop {
        let alpha: Vec<usize> = choice.iter().zip(&supports).map(|(&c, s)| s[c]).collect();
        let value = determinant_for(cert, generators, &alpha)?.abs();
        match &reference {
            None => reference = Some(value),
            Some(r) if *r != value => return Ok(false),
            Some(_) => {}
        }
        let mut j = supports.len();
        loop {
            if j == 0 {
                return Ok(true);
            }
            j -= 1;
            choice[j] += 1;
            if choice[j] < supports[j].len() {
                break;
            }
            choice[j] = 0;
        }
    }
}

/// The only possible mixed cell of the system, or `None` when `det M_α = 0`.
pub fn predicted_mixed_cell(
    cert: &PartitionCertificate,
    generators: &[Binomial],
    alpha: Option<&[usize]>,
) -> Result<Option<PredictedCell>> {
    check_square(cert, generators)?;
    let alpha = resolve_alpha(cert, alpha)?;
    let det = determinant_for(cert, generators, &alpha)?;
    if det.is_zero() {
        return Ok(None);
    }
    let s = cert.species;
    let mut edges: Vec<(Vec<i64>, Vec<i64>)> = generators
        .iter()
        .map(|g| (g.expo2.clone(), g.expo1.clone()))
        .collect();
    edges.extend(alpha.iter().map(|&a| (vec![0; s], unit(s, a))));
    Ok(Some(PredictedCell { edges, volume: det.abs() }))
}

/// Supports of the square system: each binomial, then `{0} ∪ {e_i : i ∈ supp(w_j)}`.
pub fn system_configurations(
    cert: &PartitionCertificate,
    generators: &[Binomial],
) -> Result<Vec<PointConfiguration>> {
    let s = cert.species;
    let mut configs = Vec::with_capacity(generators.len() + cert.k());
    for g in generators {
        configs.push(PointConfiguration::new(vec![g.expo1.clone(), g.expo2.clone()])?);
    }
    for j in 0..cert.k() {
        let mut pts = vec![vec![0; s]];
        pts.extend(cert.support(j).into_iter().map(|i| unit(s, i)));
        configs.push(PointConfiguration::new(pts)?);
    }
    Ok(configs)
}

/// Resolves a conditional determinant report by enumerating mixed cells.
///
/// Leaves the report untouched beyond the cell-enumeration dimension cap.
/// If enumeration disagrees with the determinant, the enumerated value wins
/// and the method becomes mixed cells.
pub fn confirm_with_cells(
    report: MvReport,
    cert: &PartitionCertificate,
    generators: &[Binomial],
    seed: u64,
) -> Result<MvReport> {
    if !report.conditional || cert.species > CELLS_MAX_DIM {
        return Ok(report);
    }
    let cells = enumerate_mixed_cells(&system_configurations(cert, generators)?, seed)?;
    let total: Rational = cells.iter().map(|c| c.volume.clone()).sum();
    if cells.len() == 1 && total == Rational::from_integer(report.value.clone()) {
        return Ok(MvReport {
            conditional: false,
            ..report
        });
    }
    Ok(MvReport {
        value: total.to_integer(),
        method: MvMethod::MixedCells,
        alpha_choices: None,
        cell: None,
        conditional: false,
    })
}
