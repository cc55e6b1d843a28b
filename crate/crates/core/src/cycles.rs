//! Directed cycles: species-overlapping cycles and the edge-coloring test.
//!
//! For a directed cycle `y_1 → y_2 → ... → y_m → y_1`, a disjoint-support
//! basis of `ker Σ` exists exactly when the edges can be colored with
//! `d = dim ker Σ` colors so that, for every color, the sources and sinks of
//! the monochromatic paths have equal sums. The coloring is read off the
//! kernel basis: edge `y_i → y_{i+1}` gets the color of the block holding
//! complex `i`.

use num_traits::Zero;

use crate::binomiality::{pdsc_check, PdscOutcome};
use crate::error::{Error, Result};
use crate::generic::GenericSettings;
use crate::linalg::Rational;
use crate::network::{Network, Reaction};

/// `SOC_m`: species `X1..Xm`, complexes `X_i + X_{i+1}`, reactions
/// `X_i + X_{i+1} → X_{i+1} + X_{i+2}` with label `k_i`, indices mod `m`.
pub fn soc_network(m: usize) -> Result<Network> {
    if m < 3 {
        return Err(Error::Contract(format!("SOC_m needs m ≥ 3, got {m}")));
    }
    let species = (1..=m).map(|i| format!("X{i}")).collect();
    let complexes = (0..m)
        .map(|i| {
            let mut y = vec![0; m];
            y[i] = 1;
            y[(i + 1) % m] = 1;
            y
        })
        .collect();
    let reactions = (0..m)
        .map(|i| Reaction {
            source: i,
            target: (i + 1) % m,
            label: format!("k{}", i + 1),
        })
        .collect();
    Network::new(species, complexes, reactions)
}

/// Mixed volume of the `SOC_m` steady-state system: 1 for odd `m`, `m/2` for even.
pub fn soc_closed_form_mv(m: usize) -> Result<u64> {
    if m < 3 {
        return Err(Error::Contract(format!("SOC_m needs m ≥ 3, got {m}")));
    }
    Ok(if m % 2 == 1 { 1 } else { m as u64 / 2 })
}

/// Complexes in cycle order starting at complex 0, with the reaction leaving each.
pub fn cycle_order(network: &Network) -> Result<(Vec<usize>, Vec<usize>)> {
    if !network.is_directed_cycle() {
        return Err(Error::Contract("the network is not a single directed cycle".into()));
    }
    let m = network.num_complexes();
    let mut out_reaction = vec![0; m];
    for (k, r) in network.reactions().iter().enumerate() {
        out_reaction[r.source] = k;
    }
    let mut order = Vec::with_capacity(m);
    let mut leaving = Vec::with_capacity(m);
    let mut current = 0;
    for _ in 0..m {
        order.push(current);
        leaving.push(out_reaction[current]);
        current = network.reactions()[out_reaction[current]].target;
    }
    Ok((order, leaving))
}

/// Edge colors in cycle order: `colors[p]` is the color (from 1) of the
/// edge leaving `cycle[p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub cycle: Vec<usize>,
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn num_colors(&self) -> usize {
        self.colors.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorClass {
    pub color: usize,
    /// Source complexes of the paths of this color.
    pub heads: Vec<usize>,
    /// Sink complexes of the paths of this color.
    pub tails: Vec<usize>,
    pub head_sum: Vec<i64>,
    pub tail_sum: Vec<i64>,
}

impl ColorClass {
    pub fn balanced(&self) -> bool {
        self.head_sum == self.tail_sum
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringCheck {
    pub valid: bool,
    pub classes: Vec<ColorClass>,
}

/// Computes heads and tails of every color class and checks their sums.
pub fn verify_coloring(network: &Network, coloring: &Coloring) -> Result<ColoringCheck> {
    let (cycle, _) = cycle_order(network)?;
    let m = cycle.len();
    if coloring.cycle != cycle || coloring.colors.len() != m {
        return Err(Error::Contract("coloring does not match the cycle".into()));
    }
    let d = coloring.num_colors();
    if (1..=d).any(|c| !coloring.colors.contains(&c)) || coloring.colors.contains(&0) {
        return Err(Error::Contract(format!("coloring is not onto 1..={d}")));
    }
    let s = network.num_species();
    let y = network.complexes();
    let sum = |set: &[usize]| -> Vec<i64> {
        let mut out = vec![0; s];
        for &c in set {
            out.iter_mut().zip(&y[c]).for_each(|(a, b)| *a += b);
        }
        out
    };

    let mut classes = Vec::with_capacity(d);
    for color in 1..=d {
        let (mut heads, mut tails) = (Vec::new(), Vec::new());
        if d > 1 {
            for p in 0..m {
                let incoming = coloring.colors[(p + m - 1) % m] == color;
                let outgoing = coloring.colors[p] == color;
                if outgoing && !incoming {
                    heads.push(cycle[p]);
                }
                if incoming && !outgoing {
                    tails.push(cycle[p]);
                }
            }
        }
        classes.push(ColorClass {
            color,
            head_sum: sum(&heads),
            tail_sum: sum(&tails),
            heads,
            tails,
        });
    }
    Ok(ColoringCheck {
        valid: classes.iter().all(ColorClass::balanced),
        classes,
    })
}

/// The coloring induced by a disjoint-support kernel basis, or `None` when
/// no such basis exists.
pub fn cycle_coloring(network: &Network, settings: &GenericSettings) -> Result<Option<Coloring>> {
    let (cycle, leaving) = cycle_order(network)?;
    let cert = match pdsc_check(network, settings)? {
        PdscOutcome::Certified(c) => c,
        PdscOutcome::Refused(_) => return Ok(None),
    };
    let m = cycle.len();
    let mut block_of = vec![0; m];
    for (b, block) in cert.partition.iter().enumerate() {
        for &j in block {
            block_of[j] = b;
        }
    }
    // each basis vector is a multiple of (κ_i^{-1}) on its block
    let mut colors = Vec::with_capacity(m);
    let mut scale: Vec<Option<Rational>> = vec![None; cert.d];
    for (p, &j) in cycle.iter().enumerate() {
        let b = block_of[j];
        let kappa = cert.rates.get(&network.reactions()[leaving[p]].label)?;
        let v = &cert.basis[b][j] * kappa;
        debug_assert!(!v.is_zero());
        match &scale[b] {
            None => scale[b] = Some(v),
            Some(x) if *x != v => {
                return Err(Error::Contract(format!(
                    "kernel vector {} is not proportional to the inverse rates",
                    b + 1
                )))
            }
            Some(_) => {}
        }
        colors.push(b + 1);
    }
    let coloring = Coloring { cycle, colors };
    if !verify_coloring(network, &coloring)?.valid {
        return Err(Error::Contract("induced coloring fails the head/tail balance".into()));
    }
    Ok(Some(coloring))
}
