//! Exact feasibility of small linear systems by Fourier–Motzkin elimination.
//!
//! Equalities are substituted away first; what remains is projected one
//! variable at a time. Strictness is tracked so that `>` constraints are
//! decided exactly, which is what the mixed-cell test needs.

use num_traits::{Signed, Zero};

use crate::linalg::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
    Gt,
}

/// `coeffs · x (rel) rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, rel: Relation, rhs: Rational) -> Self {
        Self { coeffs, rel, rhs }
    }

    /// The same constraint with `>` weakened to `>=`.
    pub fn relaxed(&self) -> Self {
        let rel = if self.rel == Relation::Gt { Relation::Ge } else { self.rel };
        Self::new(self.coeffs.clone(), rel, self.rhs.clone())
    }

    fn constant_holds(&self) -> bool {
        // all coefficients zero: 0 (rel) rhs
        match self.rel {
            Relation::Eq => self.rhs.is_zero(),
            Relation::Ge => !self.rhs.is_positive(),
            Relation::Gt => self.rhs.is_negative(),
        }
    }
}

/// Whether some rational `x` satisfies every constraint.
pub fn feasible(nvars: usize, constraints: &[Constraint]) -> bool {
    let mut system: Vec<Constraint> = constraints.to_vec();
    debug_assert!(system.iter().all(|c| c.coeffs.len() == nvars));

    // substitute equalities away
    while let Some(pos) = system.iter().position(|c| c.rel == Relation::Eq) {
        let eq = system.swap_remove(pos);
        let Some(j) = eq.coeffs.iter().position(|a| !a.is_zero()) else {
            if !eq.constant_holds() {
                return false;
            }
            continue;
        };
        let pivot = eq.coeffs[j].clone();
        for c in system.iter_mut() {
            if c.coeffs[j].is_zero() {
                continue;
            }
            let factor = &c.coeffs[j] / &pivot;
            for (a, b) in c.coeffs.iter_mut().zip(&eq.coeffs) {
                *a -= &factor * b;
            }
            c.rhs -= &factor * &eq.rhs;
        }
    }

    for j in 0..nvars {
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in system.drain(..) {
            if c.coeffs[j].is_positive() {
                lower.push(c);
            } else if c.coeffs[j].is_negative() {
                upper.push(c);
            } else {
                rest.push(c);
            }
        }
        // lower: a x_j >= rhs - ...,  upper: -|b| x_j >= ...
        for lo in &lower {
            for up in &upper {
                let p = lo.coeffs[j].clone();
                let q = -up.coeffs[j].clone();
                let coeffs: Vec<Rational> = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(a, b)| a * &q + b * &p)
                    .collect();
                let rel = if lo.rel == Relation::Gt || up.rel == Relation::Gt {
                    Relation::Gt
                } else {
                    Relation::Ge
                };
                let combined = Constraint::new(coeffs, rel, &lo.rhs * &q + &up.rhs * &p);
                if !rest.contains(&combined) {
                    rest.push(combined);
                }
            }
        }
        system = rest;
        if system.iter().any(|c| c.coeffs.iter().all(Zero::is_zero) && !c.constant_holds()) {
            return false;
        }
    }
    system.iter().all(Constraint::constant_holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn c(coeffs: &[i64], rel: Relation, rhs: i64) -> Constraint {
        Constraint::new(coeffs.iter().map(|&x| int(x)).collect(), rel, int(rhs))
    }

    #[test]
    fn interval() {
        // 1 <= x <= 2
        let sys = [c(&[1], Relation::Ge, 1), c(&[-1], Relation::Ge, -2)];
        assert!(feasible(1, &sys));
        // x > 2 and x <= 2
        let sys = [c(&[1], Relation::Gt, 2), c(&[-1], Relation::Ge, -2)];
        assert!(!feasible(1, &sys));
        assert!(feasible(1, &[sys[0].relaxed(), sys[1].clone()]));
    }

    #[test]
    fn equalities_are_substituted() {
        // x + y = 1, x > 0, y > 0
        let sys = [
            c(&[1, 1], Relation::Eq, 1),
            c(&[1, 0], Relation::Gt, 0),
            c(&[0, 1], Relation::Gt, 0),
        ];
        assert!(feasible(2, &sys));
        // x + y = 1, x = 2, y = 0
        let sys = [
            c(&[1, 1], Relation::Eq, 1),
            c(&[1, 0], Relation::Eq, 2),
            c(&[0, 1], Relation::Eq, 0),
        ];
        assert!(!feasible(2, &sys));
    }

    #[test]
    fn triangle_interior() {
        // x > 0, y > 0, x + y < 1 is open but nonempty; x + y <= 0 kills it
        let mut sys = vec![
            c(&[1, 0], Relation::Gt, 0),
            c(&[0, 1], Relation::Gt, 0),
            c(&[-1, -1], Relation::Gt, -1),
        ];
        assert!(feasible(2, &sys));
        sys.push(c(&[-1, -1], Relation::Ge, 0));
        assert!(!feasible(2, &sys));
    }
}
