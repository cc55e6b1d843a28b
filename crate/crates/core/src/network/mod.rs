//! Reaction networks and the matrices attached to them.
//!
//! Conventions: species order is declaration order, complexes are numbered in
//! order of first appearance, and `Y^t` is stored `s x m` with complex `i` as
//! column `i`.

mod parse;

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::generic::{agree_across_trials, GenericSettings};
use crate::linalg::{dot, leading_sign, IntegerMatrix, Rational, RationalMatrix};

pub use parse::{parse_network, write_network};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reaction {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    species: Vec<String>,
    complexes: Vec<Vec<i64>>,
    reactions: Vec<Reaction>,
}

impl Network {
    pub fn new(
        species: Vec<String>,
        complexes: Vec<Vec<i64>>,
        reactions: Vec<Reaction>,
    ) -> Result<Self> {
        let s = species.len();
        for (i, c) in complexes.iter().enumerate() {
            if c.len() != s {
                return Err(Error::Dimension(format!(
                    "complex {i} has length {}, expected {s}",
                    c.len()
                )));
            }
            if c.iter().any(|&x| x < 0) {
                return Err(Error::Contract(format!("complex {i} has a negative entry")));
            }
            if complexes[..i].contains(c) {
                return Err(Error::Contract(format!("complex {i} is a duplicate")));
            }
        }
        let m = complexes.len();
        for (k, r) in reactions.iter().enumerate() {
            if r.source >= m || r.target >= m {
                return Err(Error::Contract(format!(
                    "reaction {k} references a missing complex"
                )));
            }
            if r.source == r.target {
                return Err(Error::Contract(format!("reaction {k} is a loop")));
            }
            if reactions[..k]
                .iter()
                .any(|o| o.source == r.source && o.target == r.target)
            {
                return Err(Error::Contract(format!("reaction {k} is a multi-edge")));
            }
        }
        Ok(Self {
            species,
            complexes,
            reactions,
        })
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn complexes(&self) -> &[Vec<i64>] {
        &self.complexes
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn num_species(&self) -> usize {
        self.species.len()
    }

    pub fn num_complexes(&self) -> usize {
        self.complexes.len()
    }

    /// Distinct rate labels in order of first use.
    pub fn rate_labels(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for r in &self.reactions {
            if !out.contains(&r.label) {
                out.push(r.label.clone());
            }
        }
        out
    }

    /// `Y^t`, the `s x m` matrix whose column `i` is complex `i`.
    pub fn complex_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_columns(self.num_species(), &self.complexes)
            .expect("complex lengths checked at construction")
    }

    /// `N`, whose column `k` is `target - source` of reaction `k`.
    pub fn stoichiometric_matrix(&self) -> IntegerMatrix {
        let columns: Vec<Vec<i64>> = self
            .reactions
            .iter()
            .map(|r| self.reaction_vector(r))
            .collect();
        IntegerMatrix::from_columns(self.num_species(), &columns)
            .expect("complex lengths checked at construction")
    }

    pub fn reaction_vector(&self, r: &Reaction) -> Vec<i64> {
        self.complexes[r.target]
            .iter()
            .zip(&self.complexes[r.source])
            .map(|(t, s)| t - s)
            .collect()
    }

    /// `A_κ^t`, the transposed negative Laplacian: column `i` loses `κ_ij`
    /// on the diagonal and gains it in row `j`, so columns sum to zero.
    pub fn laplacian_transpose(&self, rates: &RateAssignment) -> Result<RationalMatrix> {
        let m = self.num_complexes();
        let mut a = RationalMatrix::zeros(m, m);
        for r in &self.reactions {
            let k = rates.get(&r.label)?;
            let d = a.get(r.source, r.source) - k;
            a.set(r.source, r.source, d);
            let o = a.get(r.target, r.source) + k;
            a.set(r.target, r.source, o);
        }
        Ok(a)
    }

    /// `Σ = Y^t · A_κ^t`, the complex-to-species rate matrix.
    pub fn sigma_matrix(&self, rates: &RateAssignment) -> Result<RationalMatrix> {
        self.complex_matrix()
            .to_rational()
            .mul(&self.laplacian_transpose(rates)?)
    }

    /// Basis of the left kernel of `N`, in RREF and scaled to primitive
    /// integer vectors with a positive leading entry.
    pub fn conservation_space(&self) -> Vec<ConservationLaw> {
        let s = self.num_species();
        let basis = self.stoichiometric_matrix().to_rational().left_kernel_basis();
        if basis.is_empty() {
            return Vec::new();
        }
        let reduced = RationalMatrix::from_rows(s, basis)
            .expect("kernel vectors have length s")
            .rref();
        (0..reduced.rank)
            .map(|i| {
                let w: Vec<Rational> = crate::linalg::primitive_integer_vector(reduced.reduced.row(i))
                    .into_iter()
                    .map(Rational::from_integer)
                    .collect();
                let w = if leading_sign(&w) < 0 {
                    w.into_iter().map(|x| -x).collect()
                } else {
                    w
                };
                ConservationLaw {
                    w,
                    constant: format!("c{}", i + 1),
                }
            })
            .collect()
    }

    /// Weakly connected components (linkage classes) and terminal strongly
    /// connected components of the reaction graph.
    pub fn linkage_structure(&self) -> LinkageStructure {
        let m = self.num_complexes();
        let mut uf = UnionFind::<usize>::new(m);
        let mut graph = DiGraph::<usize, ()>::with_capacity(m, self.reactions.len());
        let nodes: Vec<_> = (0..m).map(|i| graph.add_node(i)).collect();
        for r in &self.reactions {
            uf.union(r.source, r.target);
            graph.add_edge(nodes[r.source], nodes[r.target], ());
        }

        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..m {
            by_root.entry(uf.find(i)).or_default().push(i);
        }
        let mut classes: Vec<Vec<usize>> = by_root.into_values().collect();
        classes.sort_by_key(|c| c[0]);

        let sccs = petgraph::algo::tarjan_scc(&graph);
        let mut component = vec![0usize; m];
        for (ci, scc) in sccs.iter().enumerate() {
            for n in scc {
                component[graph[*n]] = ci;
            }
        }
        let mut has_exit = vec![false; sccs.len()];
        for r in &self.reactions {
            if component[r.source] != component[r.target] {
                has_exit[component[r.source]] = true;
            }
        }
        let mut terminal: Vec<Vec<usize>> = sccs
            .iter()
            .enumerate()
            .filter(|(ci, _)| !has_exit[*ci])
            .map(|(_, scc)| {
                let mut v: Vec<usize> = scc.iter().map(|n| graph[*n]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        terminal.sort_by_key(|c| c[0]);

        let terminal_per_class = classes
            .iter()
            .map(|class| {
                terminal
                    .iter()
                    .filter(|t| class.contains(&t[0]))
                    .count()
            })
            .collect();
        LinkageStructure {
            classes,
            terminal,
            terminal_per_class,
        }
    }

    /// Both deficiency notions at a fixed rate assignment.
    pub fn deficiency(&self, rates: &RateAssignment) -> Result<Deficiency> {
        let m = self.num_complexes();
        let sigma_nullity = m - self.sigma_matrix(rates)?.rank();
        let laplacian_nullity = m - self.laplacian_transpose(rates)?.rank();
        let linkage = self.linkage_structure().classes.len();
        let rank_n = self.stoichiometric_matrix().to_rational().rank();
        // ker A^t ⊂ ker Σ, so the subtraction cannot underflow
        let kernel = sigma_nullity - laplacian_nullity;
        let combinatorial = m as i64 - linkage as i64 - rank_n as i64;
        Ok(Deficiency {
            kernel,
            combinatorial,
            agree: kernel as i64 == combinatorial,
        })
    }

    /// Deficiency at generic rates (agreement across random samples).
    pub fn generic_deficiency(&self, settings: &GenericSettings) -> Result<Deficiency> {
        agree_across_trials(self, settings, |k| self.deficiency(k)).map(|(d, _)| d)
    }

    /// True when every complex has exactly one incoming and one outgoing
    /// reaction and there is a single linkage class.
    pub fn is_directed_cycle(&self) -> bool {
        let m = self.num_complexes();
        if m < 2 || self.reactions.len() != m {
            return false;
        }
        let mut indeg = vec![0usize; m];
        let mut outdeg = vec![0usize; m];
        for r in &self.reactions {
            outdeg[r.source] += 1;
            indeg[r.target] += 1;
        }
        indeg.iter().chain(&outdeg).all(|&d| d == 1)
            && self.linkage_structure().classes.len() == 1
    }
}

/// Positive rate constant per label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateAssignment {
    values: BTreeMap<String, Rational>,
}

impl RateAssignment {
    pub fn new(values: BTreeMap<String, Rational>) -> Result<Self> {
        if let Some((label, _)) = values.iter().find(|(_, v)| !v.is_positive()) {
            return Err(Error::Contract(format!(
                "rate constant `{label}` must be positive"
            )));
        }
        Ok(Self { values })
    }

    /// Assigns `values[i]` to the `i`-th label of `network.rate_labels()`.
    pub fn for_network(network: &Network, values: &[Rational]) -> Result<Self> {
        let labels = network.rate_labels();
        if labels.len() != values.len() {
            return Err(Error::Dimension(format!(
                "{} rate values for {} labels",
                values.len(),
                labels.len()
            )));
        }
        Self::new(labels.into_iter().zip(values.iter().cloned()).collect())
    }

    pub fn get(&self, label: &str) -> Result<&Rational> {
        self.values
            .get(label)
            .ok_or_else(|| Error::Contract(format!("no rate constant for label `{label}`")))
    }

    pub fn values(&self) -> &BTreeMap<String, Rational> {
        &self.values
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConservationLaw {
    pub w: Vec<Rational>,
    /// Name of the symbolic total, `c1`, `c2`, ...
    pub constant: String,
}

impl ConservationLaw {
    /// `w · N = 0` holds exactly.
    pub fn is_conserved_by(&self, network: &Network) -> bool {
        network.reactions().iter().all(|r| {
            let v: Vec<Rational> = network
                .reaction_vector(r)
                .into_iter()
                .map(|x| Rational::from_integer(x.into()))
                .collect();
            dot(&self.w, &v).is_zero()
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkageStructure {
    /// Linkage classes, each sorted, ordered by smallest complex.
    pub classes: Vec<Vec<usize>>,
    /// Terminal strong linkage classes, ordered by smallest complex.
    pub terminal: Vec<Vec<usize>>,
    /// Number of terminal strong linkage classes inside each linkage class.
    pub terminal_per_class: Vec<usize>,
}

impl LinkageStructure {
    pub fn one_terminal_per_class(&self) -> bool {
        self.terminal_per_class.iter().all(|&t| t == 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Deficiency {
    /// `dim ker Σ - dim ker A_κ^t`.
    pub kernel: usize,
    /// `m - ℓ - rank N`; may be negative only for malformed input.
    pub combinatorial: i64,
    pub agree: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat, same_span};

    fn intro() -> Network {
        parse_network("species: A B C\nA + B -> 2 C ; k1\n2 C -> A + B ; k2\n").unwrap()
    }

    #[test]
    fn intro_matrices() {
        let n = intro();
        assert_eq!(
            n.complex_matrix(),
            IntegerMatrix::from_i64(&[&[1, 0], &[1, 0], &[0, 2]])
        );
        assert_eq!(
            n.stoichiometric_matrix(),
            IntegerMatrix::from_i64(&[&[-1, 1], &[-1, 1], &[2, -2]])
        );
        let k = RateAssignment::for_network(&n, &[int(3), int(5)]).unwrap();
        assert_eq!(
            n.laplacian_transpose(&k).unwrap(),
            RationalMatrix::from_i64(&[&[-3, 5], &[3, -5]])
        );
        assert_eq!(
            n.sigma_matrix(&k).unwrap(),
            RationalMatrix::from_i64(&[&[-3, 5], &[-3, 5], &[6, -10]])
        );
    }

    #[test]
    fn intro_conservation_space() {
        let n = intro();
        let laws = n.conservation_space();
        assert_eq!(laws.len(), 2);
        let w: Vec<_> = laws.iter().map(|l| l.w.clone()).collect();
        let expected = vec![
            vec![int(1), int(-1), int(0)],
            vec![int(0), int(2), int(1)],
        ];
        assert!(same_span(3, &w, &expected));
        assert!(laws.iter().all(|l| l.is_conserved_by(&n)));
    }

    #[test]
    fn single_complex_column() {
        let n = parse_network("species: A\nA -> 0 ; k\n").unwrap();
        assert_eq!(n.complex_matrix(), IntegerMatrix::from_i64(&[&[1, 0]]));
    }

    #[test]
    fn one_reaction_stoichiometry() {
        let n = parse_network("species: A B\nA -> 2 B ; k\n").unwrap();
        assert_eq!(
            n.stoichiometric_matrix(),
            IntegerMatrix::from_i64(&[&[-1], &[2]])
        );
    }

    #[test]
    fn missing_rate_label() {
        let n = intro();
        let mut v = BTreeMap::new();
        v.insert("k1".to_string(), int(1));
        let k = RateAssignment::new(v).unwrap();
        assert!(matches!(n.sigma_matrix(&k), Err(Error::Contract(_))));
    }

    #[test]
    fn rates_must_be_positive() {
        let n = intro();
        assert!(RateAssignment::for_network(&n, &[int(1), int(0)]).is_err());
        assert!(RateAssignment::for_network(&n, &[int(1), rat(-1, 2)]).is_err());
    }

    #[test]
    fn linkage_of_intro_and_disjoint_pairs() {
        let l = intro().linkage_structure();
        assert_eq!(l.classes, vec![vec![0, 1]]);
        assert_eq!(l.terminal, vec![vec![0, 1]]);
        let pairs =
            parse_network("species: A B C D\nA -> B ; k1\nB -> A ; k2\nC -> D ; k3\nD -> C ; k4\n")
                .unwrap();
        let l = pairs.linkage_structure();
        assert_eq!(l.classes.len(), 2);
        assert!(l.one_terminal_per_class());
    }

    #[test]
    fn linkage_with_two_terminal_classes() {
        let n = parse_network("species: A B C\nA -> B ; k1\nA -> C ; k2\n").unwrap();
        let l = n.linkage_structure();
        assert_eq!(l.classes, vec![vec![0, 1, 2]]);
        assert_eq!(l.terminal, vec![vec![1], vec![2]]);
        assert_eq!(l.terminal_per_class, vec![2]);
        assert!(!l.one_terminal_per_class());
    }

    #[test]
    fn intro_deficiency() {
        let d = intro().generic_deficiency(&GenericSettings::default()).unwrap();
        assert_eq!(d, Deficiency { kernel: 0, combinatorial: 0, agree: true });
    }

    #[test]
    fn directed_cycle_detection() {
        // a reversible pair is a directed 2-cycle
        assert!(intro().is_directed_cycle());
        let tri = parse_network("species: A B C\nA -> B ; k1\nB -> C ; k2\nC -> A ; k3\n").unwrap();
        assert!(tri.is_directed_cycle());
        let path = parse_network("species: A B C\nA -> B ; k1\nB -> C ; k2\n").unwrap();
        assert!(!path.is_directed_cycle());
    }
}
