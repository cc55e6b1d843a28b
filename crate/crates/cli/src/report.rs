//! Report documents. Every rational is carried as a `p/q` string.

use std::collections::BTreeMap;

use clap::ValueEnum;
use crn_toric::binomiality::{binomial_generators, pdsc_check, sign_condition, squareness_check, PdscOutcome};
use crn_toric::cycles::{cycle_coloring as induced_coloring, cycle_order, soc_closed_form_mv, soc_network, verify_coloring};
use crn_toric::generic::{agree_across_trials, GenericSettings};
use crn_toric::linalg::{format_pq, rank_of};
use crn_toric::network::{write_network, ConservationLaw};
use crn_toric::partition::{
    confirm_with_cells, fast_mixed_volume, partitionable_check, system_configurations, MvMethod,
    MvReport, PartitionCertificate, PartitionOutcome, PartitionRefusal,
};
use crn_toric::polyhedral::{enumerate_mixed_cells, mixed_volume_ie, newton_polytope, PointConfiguration};
use crn_toric::polynomial::{conservation_polynomial, ode_polynomials, Binomial, Polynomial, PolynomialView};
use crn_toric::{Error, Network, RateAssignment, Rational, Result};
use serde::Serialize;

/// Largest number of variables handed to inclusion–exclusion or cell enumeration.
pub const ORACLE_MAX_DIM: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Det,
    Ie,
    Cells,
    All,
}

#[derive(Clone, Debug)]
pub enum GeneratorChoice {
    /// ODE right-hand sides: all species greedily, or the named ones.
    Odes(Option<Vec<String>>),
    /// Binomials from a disjoint-support kernel basis.
    Pdsc,
}

pub fn complex_name(species: &[String], y: &[i64]) -> String {
    let terms: Vec<String> = y
        .iter()
        .zip(species)
        .filter(|(c, _)| **c != 0)
        .map(|(c, s)| if *c == 1 { s.clone() } else { format!("{c} {s}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn monomial(species: &[String], e: &[i64]) -> String {
    let factors: Vec<String> = e
        .iter()
        .zip(species)
        .filter(|(p, _)| **p != 0)
        .map(|(p, s)| if *p == 1 { s.clone() } else { format!("{s}^{p}") })
        .collect();
    factors.join("*")
}

pub fn polynomial_text(species: &[String], p: &Polynomial) -> String {
    let mut out = String::new();
    for (i, (c, e)) in p.terms().iter().enumerate() {
        let negative = c < &Rational::from_integer(0.into());
        let magnitude = if negative { -c.clone() } else { c.clone() };
        let sign = match (i, negative) {
            (0, true) => "-".to_string(),
            (0, false) => String::new(),
            (_, true) => " - ".to_string(),
            (_, false) => " + ".to_string(),
        };
        let mono = monomial(species, e);
        let one = Rational::from_integer(1.into());
        let body = match (mono.is_empty(), magnitude == one) {
            (true, _) => magnitude.to_string(),
            (false, true) => mono,
            (false, false) => format!("{magnitude}*{mono}"),
        };
        out.push_str(&sign);
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn pq_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_pq).collect()
}

fn rates_view(rates: &RateAssignment) -> BTreeMap<String, String> {
    rates.values().iter().map(|(k, v)| (k.clone(), format_pq(v))).collect()
}

#[derive(Serialize)]
pub struct DeficiencyView {
    pub kernel: usize,
    pub combinatorial: i64,
    pub agree: bool,
}

#[derive(Serialize)]
pub struct Summary {
    pub species: Vec<String>,
    pub complexes: Vec<String>,
    pub s: usize,
    pub m: usize,
    pub linkage_classes: usize,
    pub terminal_classes: usize,
    pub one_terminal_per_class: bool,
    pub deficiency: DeficiencyView,
}

#[derive(Serialize)]
pub struct LawView {
    pub constant: String,
    pub w: Vec<String>,
}

#[derive(Serialize)]
pub struct PdscView {
    pub certified: bool,
    /// `dim ker Σ` at generic rates.
    pub d: usize,
    /// Support blocks of the kernel, as complexes.
    pub blocks: Vec<Vec<String>>,
    pub reason: Option<String>,
    pub sign_condition: Option<bool>,
    pub rates: BTreeMap<String, String>,
}

#[derive(Serialize)]
pub struct SquarenessView {
    pub square: bool,
    pub binomials: usize,
    pub conservation_laws: usize,
    pub species: usize,
}

#[derive(Serialize)]
pub struct GeneratorsView {
    /// `pdsc`, `odes` or `odes:A,B,...`.
    pub source: String,
    pub text: Vec<String>,
    pub polynomials: Vec<PolynomialView>,
    pub rates: BTreeMap<String, String>,
}

#[derive(Serialize)]
pub struct RefusalView {
    pub kind: String,
    pub message: String,
    pub generator: Option<usize>,
    pub w: Option<Vec<i64>>,
    pub a: Option<Vec<i64>>,
    pub b: Option<Vec<i64>>,
}

#[derive(Serialize)]
pub struct PartitionView {
    pub partitionable: bool,
    pub w_list: Option<Vec<Vec<i64>>>,
    pub connectivity_shortcut: Option<bool>,
    pub refusal: Option<RefusalView>,
}

#[derive(Serialize)]
pub struct MvEntry {
    pub generators: String,
    pub method: String,
    pub value: String,
    /// Determinant only: nonzero but not yet matched by a mixed cell.
    pub conditional: bool,
    /// Determinant only: 1-based `α_j`.
    pub alpha: Option<Vec<usize>>,
    /// Cell enumeration only.
    pub cells: Option<usize>,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub file: String,
    pub seed: u64,
    pub trials: usize,
    pub summary: Summary,
    pub conservation: Vec<LawView>,
    pub pdsc: PdscView,
    pub squareness: Option<SquarenessView>,
    pub generators: Option<GeneratorsView>,
    pub partition: Option<PartitionView>,
    pub mixed_volume: Vec<MvEntry>,
    pub agreement: Option<bool>,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
pub struct MixedVolReport {
    pub file: String,
    pub seed: u64,
    pub trials: usize,
    pub generators: GeneratorsView,
    pub partition: PartitionView,
    pub results: Vec<MvEntry>,
    pub agreement: Option<bool>,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
pub struct SocReport {
    pub m: usize,
    pub network: String,
    pub closed_form: u64,
    pub check: Vec<MvEntry>,
    pub agreement: Option<bool>,
}

#[derive(Serialize)]
pub struct ClassView {
    pub color: usize,
    pub heads: Vec<String>,
    pub tails: Vec<String>,
    pub head_sum: Vec<i64>,
    pub tail_sum: Vec<i64>,
    pub balanced: bool,
}

#[derive(Serialize)]
pub struct ColoringReport {
    pub file: String,
    pub seed: u64,
    pub cycle: Vec<String>,
    pub d: usize,
    pub colors: Option<Vec<usize>>,
    pub classes: Vec<ClassView>,
    pub reason: Option<String>,
}

/// Generators, grading outcome and the configurations of the square system.
struct System {
    source: String,
    polys: Vec<Polynomial>,
    rates: RateAssignment,
    binomials: Option<Vec<Binomial>>,
    outcome: PartitionOutcome,
    configs: Vec<PointConfiguration>,
}

impl System {
    fn certificate(&self) -> Option<(&PartitionCertificate, &[Binomial])> {
        Some((self.outcome.certificate()?, self.binomials.as_deref()?))
    }

    fn view(&self, species: &[String]) -> GeneratorsView {
        GeneratorsView {
            source: self.source.clone(),
            text: self.polys.iter().map(|p| polynomial_text(species, p)).collect(),
            polynomials: self.polys.iter().map(PolynomialView::from).collect(),
            rates: rates_view(&self.rates),
        }
    }
}

fn first_sample(network: &Network, settings: &GenericSettings) -> Result<RateAssignment> {
    Ok(agree_across_trials(network, settings, |_| Ok(()))?.1)
}

/// ODE rows that are linearly independent, in species order.
fn independent_odes(f: &[Polynomial], wanted: usize) -> Vec<usize> {
    let mut monomials: Vec<Vec<i64>> = f.iter().flat_map(|p| p.support()).collect();
    monomials.sort();
    monomials.dedup();
    let coeffs = |p: &Polynomial| -> Vec<Rational> {
        monomials
            .iter()
            .map(|y| {
                p.terms()
                    .iter()
                    .find(|(_, e)| e == y)
                    .map(|(c, _)| c.clone())
                    .unwrap_or_else(|| Rational::from_integer(0.into()))
            })
            .collect()
    };
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (i, p) in f.iter().enumerate() {
        if chosen.len() == wanted {
            break;
        }
        rows.push(coeffs(p));
        if rank_of(monomials.len(), &rows) == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}

fn build_system(network: &Network, choice: &GeneratorChoice, settings: &GenericSettings) -> Result<System> {
    let laws = network.conservation_space();
    let s = network.num_species();
    let wanted = s - laws.len();
    let (source, polys, rates, binomials) = match choice {
        GeneratorChoice::Pdsc => {
            let cert = match pdsc_check(network, settings)? {
                PdscOutcome::Certified(c) => c,
                PdscOutcome::Refused(r) => {
                    return Err(Error::Contract(format!(
                        "no binomial generators from a disjoint-support kernel basis: {}",
                        r.reason
                    )))
                }
            };
            let b = binomial_generators(&cert, network);
            let polys = b.iter().map(Binomial::to_polynomial).collect();
            ("pdsc".to_string(), polys, cert.rates.clone(), Some(b))
        }
        GeneratorChoice::Odes(names) => {
            let rates = first_sample(network, settings)?;
            let f = ode_polynomials(network, &rates)?;
            let (source, picked) = match names {
                None => ("odes".to_string(), independent_odes(&f, wanted)),
                Some(names) => {
                    let picked = names
                        .iter()
                        .map(|n| {
                            network
                                .species()
                                .iter()
                                .position(|x| x == n)
                                .ok_or_else(|| Error::Contract(format!("unknown species `{n}` in --generators")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    (format!("odes:{}", names.join(",")), picked)
                }
            };
            let polys: Vec<Polynomial> = picked.iter().map(|&i| f[i].clone()).collect();
            let binomials: Option<Vec<Binomial>> = polys.iter().map(Polynomial::as_binomial).collect();
            (source, polys, rates, binomials)
        }
    };
    if polys.len() != wanted {
        return Err(Error::Contract(format!(
            "{} generators with {} conservation laws in {s} species is not a square system",
            polys.len(),
            laws.len()
        )));
    }
    if polys.is_empty() {
        return Err(Error::Contract("the system has no generators".into()));
    }
    if let Some(i) = polys.iter().position(Polynomial::is_zero) {
        return Err(Error::Contract(format!("generator {} is the zero polynomial", i + 1)));
    }
    let outcome = partitionable_check(network, &polys)?;
    let configs = match (outcome.certificate(), &binomials) {
        (Some(cert), Some(b)) => system_configurations(cert, b)?,
        _ => polys
            .iter()
            .cloned()
            .chain(laws.iter().map(conservation_polynomial))
            .map(|p| newton_polytope(&p))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(System { source, polys, rates, binomials, outcome, configs })
}

fn partition_view(species: &[String], outcome: &PartitionOutcome) -> PartitionView {
    match outcome {
        PartitionOutcome::Partitionable(c) => PartitionView {
            partitionable: true,
            w_list: Some(c.w_list.clone()),
            connectivity_shortcut: Some(c.connectivity_shortcut),
            refusal: None,
        },
        PartitionOutcome::Refused(r) => PartitionView {
            partitionable: false,
            w_list: None,
            connectivity_shortcut: None,
            refusal: Some(match r {
                PartitionRefusal::NoZeroOneBasis { block, dimension, reason } => RefusalView {
                    kind: "no-zero-one-basis".into(),
                    message: format!(
                        "conservation block on {} (dimension {dimension}): {reason}",
                        block.iter().map(|&i| species[i].as_str()).collect::<Vec<_>>().join(", ")
                    ),
                    generator: None,
                    w: None,
                    a: None,
                    b: None,
                },
                PartitionRefusal::NotHomogeneous { generator, w, a, b } => {
                    let dot = |x: &[i64]| -> i64 { x.iter().zip(w).map(|(p, q)| p * q).sum() };
                    RefusalView {
                        kind: "not-homogeneous".into(),
                        message: format!(
                            "generator {} is not homogeneous for w = {w:?}: a·w = {} while b·w = {}",
                            generator + 1,
                            dot(a),
                            dot(b)
                        ),
                        generator: Some(generator + 1),
                        w: Some(w.clone()),
                        a: Some(a.clone()),
                        b: Some(b.clone()),
                    }
                }
            }),
        },
    }
}

fn entry(source: &str, r: &MvReport, cells: Option<usize>) -> MvEntry {
    MvEntry {
        generators: source.to_string(),
        method: r.method.name().to_string(),
        value: r.value.to_string(),
        conditional: r.conditional,
        alpha: r.alpha_choices.as_ref().map(|a| a.iter().map(|i| i + 1).collect()),
        cells,
    }
}

fn cap(configs: &[PointConfiguration], what: &str) -> Result<()> {
    if configs.len() > ORACLE_MAX_DIM {
        return Err(Error::Capability(format!(
            "{what} is limited to {ORACLE_MAX_DIM} variables, the system has {}",
            configs.len()
        )));
    }
    Ok(())
}

fn run_determinant(sys: &System, settings: &GenericSettings) -> Result<MvEntry> {
    let (cert, b) = sys.certificate().ok_or_else(|| {
        Error::Contract("the determinant method needs a partitionable binomial system; try --method ie".into())
    })?;
    let report = fast_mixed_volume(cert, b, None)?;
    let report = confirm_with_cells(report, cert, b, settings.seed)?;
    Ok(entry(&sys.source, &report, None))
}

fn run_ie(sys: &System) -> Result<MvEntry> {
    cap(&sys.configs, "inclusion-exclusion")?;
    let value = mixed_volume_ie(&sys.configs)?;
    Ok(entry(&sys.source, &MvReport::from_value(value, MvMethod::InclusionExclusion)?, None))
}

fn run_cells(sys: &System, settings: &GenericSettings) -> Result<MvEntry> {
    cap(&sys.configs, "mixed-cell enumeration")?;
    let cells = enumerate_mixed_cells(&sys.configs, settings.seed)?;
    let value: Rational = cells.iter().map(|c| c.volume.clone()).sum();
    Ok(entry(
        &sys.source,
        &MvReport::from_value(value, MvMethod::MixedCells)?,
        Some(cells.len()),
    ))
}

fn agreement(results: &[MvEntry]) -> Option<bool> {
    (results.len() > 1).then(|| results.iter().all(|r| r.value == results[0].value))
}

pub fn mixedvol(
    file: &str,
    network: &Network,
    method: Method,
    choice: &GeneratorChoice,
    settings: &GenericSettings,
) -> Result<MixedVolReport> {
    let sys = build_system(network, choice, settings)?;
    let mut results = Vec::new();
    let mut notes = Vec::new();
    match method {
        Method::Det => results.push(run_determinant(&sys, settings)?),
        Method::Ie => results.push(run_ie(&sys)?),
        Method::Cells => results.push(run_cells(&sys, settings)?),
        Method::All => {
            cap(&sys.configs, "--method all")?;
            match run_determinant(&sys, settings) {
                Ok(e) => results.push(e),
                Err(Error::Contract(m)) => notes.push(format!("determinant skipped: {m}")),
                Err(e) => return Err(e),
            }
            results.push(run_ie(&sys)?);
            results.push(run_cells(&sys, settings)?);
        }
    }
    Ok(MixedVolReport {
        file: file.to_string(),
        seed: settings.seed,
        trials: settings.trials,
        generators: sys.view(network.species()),
        partition: partition_view(network.species(), &sys.outcome),
        agreement: agreement(&results),
        results,
        notes,
    })
}

fn law_view(law: &ConservationLaw) -> LawView {
    LawView { constant: law.constant.clone(), w: pq_vec(&law.w) }
}

pub fn analyze(file: &str, network: &Network, settings: &GenericSettings) -> Result<AnalysisReport> {
    let species = network.species();
    let names = |idx: &[usize]| -> Vec<String> {
        idx.iter().map(|&j| complex_name(species, &network.complexes()[j])).collect()
    };
    let linkage = network.linkage_structure();
    let deficiency = network.generic_deficiency(settings)?;
    let laws = network.conservation_space();
    let summary = Summary {
        species: species.to_vec(),
        complexes: network.complexes().iter().map(|y| complex_name(species, y)).collect(),
        s: network.num_species(),
        m: network.num_complexes(),
        linkage_classes: linkage.classes.len(),
        terminal_classes: linkage.terminal.len(),
        one_terminal_per_class: linkage.one_terminal_per_class(),
        deficiency: DeficiencyView {
            kernel: deficiency.kernel,
            combinatorial: deficiency.combinatorial,
            agree: deficiency.agree,
        },
    };

    let outcome = pdsc_check(network, settings)?;
    let (pdsc, squareness, choice) = match &outcome {
        PdscOutcome::Certified(c) => {
            let sq = squareness_check(network, c);
            (
                PdscView {
                    certified: true,
                    d: c.d,
                    blocks: c.partition.iter().map(|b| names(b)).collect(),
                    reason: None,
                    sign_condition: Some(sign_condition(c)),
                    rates: rates_view(&c.rates),
                },
                Some(SquarenessView {
                    square: sq.square,
                    binomials: sq.binomials,
                    conservation_laws: sq.conservation_laws,
                    species: sq.species,
                }),
                GeneratorChoice::Pdsc,
            )
        }
        PdscOutcome::Refused(r) => (
            PdscView {
                certified: false,
                d: r.d,
                blocks: r.blocks.iter().map(|b| names(b)).collect(),
                reason: Some(r.reason.clone()),
                sign_condition: None,
                rates: BTreeMap::new(),
            },
            None,
            GeneratorChoice::Odes(None),
        ),
    };

    let mut notes = Vec::new();
    let mut mixed_volume = Vec::new();
    let (generators, partition) = match build_system(network, &choice, settings) {
        Ok(sys) => {
            if sys.certificate().is_some() {
                mixed_volume.push(run_determinant(&sys, settings)?);
            }
            if sys.configs.len() <= ORACLE_MAX_DIM {
                mixed_volume.push(run_ie(&sys)?);
                mixed_volume.push(run_cells(&sys, settings)?);
            } else {
                notes.push(format!("oracle cross-check skipped: more than {ORACLE_MAX_DIM} variables"));
            }
            (Some(sys.view(species)), Some(partition_view(species, &sys.outcome)))
        }
        Err(Error::Contract(m)) => {
            notes.push(format!("mixed volume skipped: {m}"));
            (None, None)
        }
        Err(e) => return Err(e),
    };

    Ok(AnalysisReport {
        file: file.to_string(),
        seed: settings.seed,
        trials: settings.trials,
        summary,
        conservation: laws.iter().map(law_view).collect(),
        pdsc,
        squareness,
        generators,
        partition,
        agreement: agreement(&mixed_volume),
        mixed_volume,
        notes,
    })
}

pub fn soc(m: usize, check: bool, settings: &GenericSettings) -> Result<SocReport> {
    let network = soc_network(m)?;
    let closed_form = soc_closed_form_mv(m)?;
    let mut results = Vec::new();
    if check {
        let sys = build_system(&network, &GeneratorChoice::Pdsc, settings)?;
        results.push(run_determinant(&sys, settings)?);
        if m <= ORACLE_MAX_DIM {
            results.push(run_ie(&sys)?);
            results.push(run_cells(&sys, settings)?);
        }
    }
    let agreement = check.then(|| results.iter().all(|r| r.value == closed_form.to_string()));
    Ok(SocReport {
        m,
        network: write_network(&network),
        closed_form,
        check: results,
        agreement,
    })
}

pub fn cycle_coloring(file: &str, network: &Network, settings: &GenericSettings) -> Result<ColoringReport> {
    let (cycle, _) = cycle_order(network)?;
    let species = network.species();
    let name = |j: &usize| complex_name(species, &network.complexes()[*j]);
    let (d, reason) = match pdsc_check(network, settings)? {
        PdscOutcome::Certified(c) => (c.d, None),
        PdscOutcome::Refused(r) => (r.d, Some(r.reason)),
    };
    let coloring = induced_coloring(network, settings)?;
    let classes = match &coloring {
        Some(c) => verify_coloring(network, c)?
            .classes
            .into_iter()
            .map(|k| ClassView {
                color: k.color,
                balanced: k.balanced(),
                heads: k.heads.iter().map(name).collect(),
                tails: k.tails.iter().map(name).collect(),
                head_sum: k.head_sum,
                tail_sum: k.tail_sum,
            })
            .collect(),
        None => Vec::new(),
    };
    Ok(ColoringReport {
        file: file.to_string(),
        seed: settings.seed,
        cycle: cycle.iter().map(name).collect(),
        d,
        colors: coloring.map(|c| c.colors),
        classes,
        reason,
    })
}
