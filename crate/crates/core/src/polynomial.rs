//! Sparse polynomials with rational coefficients, as needed for supports and
//! Newton polytopes. No arithmetic beyond construction.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{format_pq, int, Rational};
use crate::network::{ConservationLaw, Network, RateAssignment};

/// A polynomial `Σ c_a x^a`. Terms are kept with nonzero coefficients,
/// distinct exponents, sorted lexicographically descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Rational, Vec<i64>)>,
}

impl Polynomial {
    pub fn new(nvars: usize, terms: Vec<(Rational, Vec<i64>)>) -> Result<Self> {
        let mut merged: Vec<(Rational, Vec<i64>)> = Vec::with_capacity(terms.len());
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::Dimension(format!(
                    "exponent of length {} in {nvars} variables",
                    e.len()
                )));
            }
            match merged.iter_mut().find(|(_, x)| *x == e) {
                Some((acc, _)) => *acc += c,
                None => merged.push((c, e)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        merged.sort_by(|a, b| b.1.cmp(&a.1));
        Ok(Self {
            nvars,
            terms: merged,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Rational, Vec<i64>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exponent vectors with nonzero coefficient, in term order.
    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.iter().map(|(_, e)| e.clone()).collect()
    }

    /// Reads the polynomial as a binomial if it has exactly two terms.
    pub fn as_binomial(&self) -> Option<Binomial> {
        match self.terms.as_slice() {
            [(c1, e1), (c2, e2)] => Binomial::new(c1.clone(), e1.clone(), c2.clone(), e2.clone()).ok(),
            _ => None,
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, e)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", v + 1)?,
                    _ => write!(f, "*x{}^{k}", v + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// `coeff1 · x^expo1 + coeff2 · x^expo2` with both coefficients nonzero and
/// distinct exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Binomial {
    pub coeff1: Rational,
    pub expo1: Vec<i64>,
    pub coeff2: Rational,
    pub expo2: Vec<i64>,
}

impl Binomial {
    pub fn new(coeff1: Rational, expo1: Vec<i64>, coeff2: Rational, expo2: Vec<i64>) -> Result<Self> {
        if coeff1.is_zero() || coeff2.is_zero() {
            return Err(Error::Contract("binomial with a zero coefficient".into()));
        }
        if expo1.len() != expo2.len() {
            return Err(Error::Dimension("binomial exponents differ in length".into()));
        }
        if expo1 == expo2 {
            return Err(Error::Contract("binomial with equal exponents".into()));
        }
        Ok(Self {
            coeff1,
            expo1,
            coeff2,
            expo2,
        })
    }

    /// `x^expo1 - x^expo2`; used when only the support matters.
    pub fn unit(expo1: Vec<i64>, expo2: Vec<i64>) -> Result<Self> {
        Self::new(Rational::one(), expo1, -Rational::one(), expo2)
    }

    pub fn nvars(&self) -> usize {
        self.expo1.len()
    }

    /// `expo1 - expo2`, the edge direction of the Newton segment.
    pub fn edge(&self) -> Vec<i64> {
        self.expo1.iter().zip(&self.expo2).map(|(a, b)| a - b).collect()
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::new(
            self.nvars(),
            vec![
                (self.coeff1.clone(), self.expo1.clone()),
                (self.coeff2.clone(), self.expo2.clone()),
            ],
        )
        .expect("binomial exponents have equal length")
    }
}

/// The mass-action right-hand sides `f = Σ x^{Y^t}`, one per species.
pub fn ode_polynomials(network: &Network, rates: &RateAssignment) -> Result<Vec<Polynomial>> {
    let sigma = network.sigma_matrix(rates)?;
    let s = network.num_species();
    (0..s)
        .map(|i| {
            let terms = network
                .complexes()
                .iter()
                .enumerate()
                .map(|(j, y)| (sigma.get(i, j).clone(), y.clone()))
                .collect();
            Polynomial::new(s, terms)
        })
        .collect()
}

/// `w · x - c` with the generic constant `c` represented by coefficient 1.
/// Only the support is meaningful downstream.
pub fn conservation_polynomial(law: &ConservationLaw) -> Polynomial {
    let s = law.w.len();
    let mut terms: Vec<(Rational, Vec<i64>)> = law
        .w
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut e = vec![0; s];
            e[i] = 1;
            (c.clone(), e)
        })
        .collect();
    terms.push((-int(1), vec![0; s]));
    Polynomial::new(s, terms).expect("exponents have length s")
}

/// Serializable view of a polynomial: coefficients as `p/q` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialView {
    pub terms: Vec<TermView>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermView {
    pub coeff: String,
    pub exponent: Vec<i64>,
}

impl From<&Polynomial> for PolynomialView {
    fn from(p: &Polynomial) -> Self {
        Self {
            terms: p
                .terms()
                .iter()
                .map(|(c, e)| TermView {
                    coeff: format_pq(c),
                    exponent: e.clone(),
                })
                .collect(),
        }
    }
}
