//! Disjoint-support kernel bases of `Σ` and the binomial generators they give.
//!
//! A network is certified when, for generic rates, `ker Σ` has a basis whose
//! supports partition the complexes. Each block then contributes `|I_j| - 1`
//! binomials `b_{j'} x^{y_{j2}} - b_{j2} x^{y_{j'}}` with `j' = min I_j`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use petgraph::unionfind::UnionFind;

use crate::error::Result;
use crate::generic::{agree_across_trials, GenericSettings};
use crate::linalg::{Rational, RationalMatrix};
use crate::network::{Network, RateAssignment};
use crate::polynomial::Binomial;

/// One block of the finest coordinate decomposition of a subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportBlock {
    /// Sorted coordinate indices.
    pub indices: Vec<usize>,
    /// False for a coordinate on which every vector of the subspace vanishes.
    pub supported: bool,
    /// RREF basis vectors of the subspace that live on this block.
    pub basis: Vec<Vec<Rational>>,
}

impl SupportBlock {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Finest partition of `0..dim` such that `span(vectors)` is the direct sum of
/// its restrictions to the blocks.
///
/// The RREF basis of a subspace is unique, and the RREF basis of a direct sum
/// is the union of the RREF bases of the summands, so connected components of
/// the co-occurrence graph of RREF supports give the finest decomposition.
/// Blocks are ordered by smallest index.
pub fn support_partition(dim: usize, vectors: &[Vec<Rational>]) -> Vec<SupportBlock> {
    let reduced: Vec<Vec<Rational>> = if vectors.is_empty() {
        Vec::new()
    } else {
        let r = RationalMatrix::from_rows(dim, vectors.to_vec())
            .expect("vectors must have length dim")
            .rref();
        (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect()
    };

    let mut uf = UnionFind::<usize>::new(dim);
    let mut touched = vec![false; dim];
    for row in &reduced {
        let support: Vec<usize> = (0..dim).filter(|&j| !row[j].is_zero()).collect();
        for &j in &support {
            touched[j] = true;
            uf.union(support[0], j);
        }
    }

    let mut blocks: Vec<SupportBlock> = Vec::new();
    let mut block_of_root: Vec<Option<usize>> = vec![None; dim];
    for j in 0..dim {
        if !touched[j] {
            blocks.push(SupportBlock {
                indices: vec![j],
                supported: false,
                basis: Vec::new(),
            });
            continue;
        }
        let root = uf.find(j);
        match block_of_root[root] {
            Some(b) => blocks[b].indices.push(j),
            None => {
                block_of_root[root] = Some(blocks.len());
                blocks.push(SupportBlock {
                    indices: vec![j],
                    supported: true,
                    basis: Vec::new(),
                });
            }
        }
    }
    for row in reduced {
        let first = (0..dim).find(|&j| !row[j].is_zero()).expect("RREF rows are nonzero");
        let b = block_of_root[uf.find(first)].expect("supported coordinate has a block");
        blocks[b].basis.push(row);
    }
    blocks
}

/// Witness that `ker Σ` has a disjoint-support basis covering all complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdscCertificate {
    pub d: usize,
    /// `I_1, ..., I_d`, sorted, ordered by smallest complex.
    pub partition: Vec<Vec<usize>>,
    /// `b^1, ..., b^d` of length `m`; `supp(b^i) = I_i`, first nonzero entry positive.
    pub basis: Vec<Vec<Rational>>,
    /// Rate sample at which `basis` was computed.
    pub rates: RateAssignment,
    pub settings: GenericSettings,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PdscOutcome {
    Certified(PdscCertificate),
    Refused(PdscRefusal),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdscRefusal {
    pub d: usize,
    pub reason: String,
    /// Finest support partition of `ker Σ` at the sampled rates.
    pub blocks: Vec<Vec<usize>>,
}

impl PdscOutcome {
    pub fn certificate(&self) -> Option<&PdscCertificate> {
        match self {
            PdscOutcome::Certified(c) => Some(c),
            PdscOutcome::Refused(_) => None,
        }
    }
}

/// Rate-independent summary of `ker Σ` used to compare trials.
#[derive(Clone, Debug, PartialEq, Eq)]
struct KernelShape {
    d: usize,
    blocks: Vec<(Vec<usize>, bool, usize)>,
}

fn kernel_blocks(network: &Network, rates: &RateAssignment) -> Result<Vec<SupportBlock>> {
    let sigma = network.sigma_matrix(rates)?;
    Ok(support_partition(network.num_complexes(), &sigma.kernel_basis()))
}

/// Decides the disjoint-support kernel condition for generic rate constants.
pub fn pdsc_check(network: &Network, settings: &GenericSettings) -> Result<PdscOutcome> {
    let (shape, rates) = agree_across_trials(network, settings, |k| {
        let blocks = kernel_blocks(network, k)?;
        Ok(KernelShape {
            d: blocks.iter().map(SupportBlock::dimension).sum(),
            blocks: blocks
                .iter()
                .map(|b| (b.indices.clone(), b.supported, b.dimension()))
                .collect(),
        })
    })?;
    let partition: Vec<Vec<usize>> = shape.blocks.iter().map(|(i, _, _)| i.clone()).collect();
    let refuse = |reason: String| {
        Ok(PdscOutcome::Refused(PdscRefusal {
            d: shape.d,
            reason,
            blocks: partition.clone(),
        }))
    };

    if shape.d == 0 {
        return refuse("d = 0: ker Σ is trivial".into());
    }
    let unsupported: Vec<usize> = shape
        .blocks
        .iter()
        .filter(|(_, supported, _)| !supported)
        .map(|(i, _, _)| i[0])
        .collect();
    if !unsupported.is_empty() {
        return refuse(format!(
            "{} complex(es) lie outside the support of ker Σ",
            unsupported.len()
        ));
    }
    if let Some((indices, _, dim)) = shape.blocks.iter().find(|(_, _, dim)| *dim > 1) {
        return refuse(format!(
            "a block of {} complexes carries a {dim}-dimensional part of ker Σ; no disjoint-support basis with {} vectors exists",
            indices.len(),
            shape.d
        ));
    }

    let blocks = kernel_blocks(network, &rates)?;
    let m = network.num_complexes();
    let basis = blocks
        .iter()
        .map(|b| {
            let v = b.basis[0].clone();
            debug_assert_eq!(v.len(), m);
            v
        })
        .collect();
    Ok(PdscOutcome::Certified(PdscCertificate {
        d: shape.d,
        partition,
        basis,
        rates,
        settings: settings.clone(),
    }))
}

impl PdscCertificate {
    /// Rechecks every certificate invariant against the network.
    pub fn verify(&self, network: &Network) -> bool {
        let m = network.num_complexes();
        if self.partition.len() != self.d || self.basis.len() != self.d {
            return false;
        }
        let mut seen = vec![false; m];
        for block in &self.partition {
            for &i in block {
                if i >= m || seen[i] {
                    return false;
                }
                seen[i] = true;
            }
        }
        if !seen.iter().all(|&x| x) {
            return false;
        }
        let Ok(sigma) = network.sigma_matrix(&self.rates) else {
            return false;
        };
        self.basis.iter().zip(&self.partition).all(|(b, block)| {
            b.len() == m
                && (0..m).all(|i| b[i].is_zero() != block.contains(&i))
                && sigma
                    .mul_vec(b)
                    .map(|v| v.iter().all(Zero::is_zero))
                    .unwrap_or(false)
        })
    }
}

/// `m - d` binomials generating the steady-state ideal, cleared of denominators.
///
/// Order: blocks by smallest complex, then `j2` ascending.
pub fn binomial_generators(cert: &PdscCertificate, network: &Network) -> Vec<Binomial> {
    let y = network.complexes();
    let mut out = Vec::new();
    for (block, b) in cert.partition.iter().zip(&cert.basis) {
        let anchor = block[0];
        for &j2 in &block[1..] {
            let c1 = b[anchor].clone();
            let c2 = -b[j2].clone();
            let l: BigInt = c1.denom().lcm(c2.denom());
            let scale = Rational::from_integer(l);
            out.push(
                Binomial::new(c1 * &scale, y[j2].clone(), c2 * &scale, y[anchor].clone())
                    .expect("kernel entries on a block are nonzero and complexes are distinct"),
            );
        }
    }
    out
}

/// True when every basis vector has all nonzero entries of one sign.
pub fn sign_condition(cert: &PdscCertificate) -> bool {
    cert.basis.iter().all(|b| {
        let nonzero: Vec<&Rational> = b.iter().filter(|x| !x.is_zero()).collect();
        nonzero.iter().all(|x| x.is_positive()) || nonzero.iter().all(|x| x.is_negative())
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Squareness {
    pub square: bool,
    pub binomials: usize,
    pub conservation_laws: usize,
    pub species: usize,
    /// Whether each linkage class has exactly one terminal strong linkage class.
    pub one_terminal_per_class: bool,
}

pub fn squareness_check(network: &Network, cert: &PdscCertificate) -> Squareness {
    let binomials = network.num_complexes() - cert.d;
    let conservation_laws = network.conservation_space().len();
    let species = network.num_species();
    Squareness {
        square: binomials + conservation_laws == species,
        binomials,
        conservation_laws,
        species,
        one_terminal_per_class: network.linkage_structure().one_terminal_per_class(),
    }
}
