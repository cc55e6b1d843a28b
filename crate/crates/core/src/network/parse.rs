//! Text format for reaction networks.
//!
//! ```text
//! # comment
//! species: A B C
//! A + B -> 2 C ; k1
//! 2 C -> A + B ; k2
//! ```
//!
//! The zero complex is written `0`. Reversible arrows are not accepted.

use std::collections::HashMap;

use crate::error::{Error, ParseErrorKind, Result};

use super::{Network, Reaction};

fn err(line: usize, kind: ParseErrorKind) -> Error {
    Error::Parse { line, kind }
}

pub fn parse_network(text: &str) -> Result<Network> {
    let mut species: Option<Vec<String>> = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut complexes: Vec<Vec<i64>> = Vec::new();
    let mut reactions: Vec<Reaction> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(names) = &species else {
            let Some(rest) = line.strip_prefix("species:") else {
                return Err(err(lineno, ParseErrorKind::MissingHeader));
            };
            let mut names = Vec::new();
            for name in rest.split_whitespace() {
                if !is_identifier(name) {
                    return Err(err(
                        lineno,
                        ParseErrorKind::Syntax(format!("invalid species name `{name}`")),
                    ));
                }
                if index.insert(name.to_string(), names.len()).is_some() {
                    return Err(err(lineno, ParseErrorKind::DuplicateSpecies(name.into())));
                }
                names.push(name.to_string());
            }
            if names.is_empty() {
                return Err(err(
                    lineno,
                    ParseErrorKind::Syntax("species list is empty".into()),
                ));
            }
            species = Some(names);
            continue;
        };
        let s = names.len();

        let (body, label) = line.split_once(';').ok_or_else(|| {
            err(
                lineno,
                ParseErrorKind::Syntax("expected `; <rate-label>` after the reaction".into()),
            )
        })?;
        let label = label.trim();
        if !is_identifier(label) {
            return Err(err(
                lineno,
                ParseErrorKind::Syntax(format!("invalid rate label `{label}`")),
            ));
        }
        if body.contains("<->") || body.contains("<-") {
            return Err(err(
                lineno,
                ParseErrorKind::Syntax("reversible arrows are not supported".into()),
            ));
        }
        let (lhs, rhs) = body.split_once("->").ok_or_else(|| {
            err(lineno, ParseErrorKind::Syntax("expected `->`".into()))
        })?;
        if rhs.contains("->") {
            return Err(err(
                lineno,
                ParseErrorKind::Syntax("more than one `->`".into()),
            ));
        }
        let source = parse_complex(lhs, s, &index, lineno)?;
        let target = parse_complex(rhs, s, &index, lineno)?;
        if source == target {
            return Err(err(lineno, ParseErrorKind::Loop));
        }
        let source = intern(&mut complexes, source);
        let target = intern(&mut complexes, target);
        if reactions
            .iter()
            .any(|r| r.source == source && r.target == target)
        {
            return Err(err(lineno, ParseErrorKind::DuplicateReaction));
        }
        reactions.push(Reaction {
            source,
            target,
            label: label.to_string(),
        });
    }

    let species = species.ok_or_else(|| err(1, ParseErrorKind::MissingHeader))?;
    Network::new(species, complexes, reactions)
}

fn intern(complexes: &mut Vec<Vec<i64>>, c: Vec<i64>) -> usize {
    if let Some(i) = complexes.iter().position(|x| *x == c) {
        i
    } else {
        complexes.push(c);
        complexes.len() - 1
    }
}

fn parse_complex(
    text: &str,
    s: usize,
    index: &HashMap<String, usize>,
    line: usize,
) -> Result<Vec<i64>> {
    let text = text.trim();
    let mut v = vec![0i64; s];
    if text == "0" {
        return Ok(v);
    }
    if text.is_empty() {
        return Err(err(line, ParseErrorKind::Syntax("empty complex".into())));
    }
    for term in text.split('+') {
        let tokens: Vec<&str> = term.split_whitespace().collect();
        let (coeff, name) = match tokens.as_slice() {
            [name] => (1, *name),
            [c, name] => {
                let coeff = c.parse::<i64>().map_err(|_| {
                    err(
                        line,
                        ParseErrorKind::Syntax(format!("malformed term `{}`", term.trim())),
                    )
                })?;
                if coeff <= 0 {
                    return Err(err(line, ParseErrorKind::NonPositiveCoefficient((*c).into())));
                }
                (coeff, *name)
            }
            [] => return Err(err(line, ParseErrorKind::Syntax("empty term".into()))),
            _ => {
                return Err(err(
                    line,
                    ParseErrorKind::Syntax(format!("malformed term `{}`", term.trim())),
                ))
            }
        };
        if name.parse::<i64>().is_ok() {
            return Err(err(
                line,
                ParseErrorKind::Syntax(format!("term `{}` names no species", term.trim())),
            ));
        }
        let &i = index
            .get(name)
            .ok_or_else(|| err(line, ParseErrorKind::UnknownSpecies(name.into())))?;
        if v[i] != 0 {
            return Err(err(
                line,
                ParseErrorKind::RepeatedSpeciesInComplex(name.into()),
            ));
        }
        v[i] = coeff;
    }
    Ok(v)
}

fn is_identifier(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '.')
}

/// Serializes a network back into the text format.
pub fn write_network(network: &Network) -> String {
    let mut out = format!("species: {}\n", network.species().join(" "));
    for r in network.reactions() {
        out.push_str(&format!(
            "{} -> {} ; {}\n",
            format_complex(network, r.source),
            format_complex(network, r.target),
            r.label
        ));
    }
    out
}

fn format_complex(network: &Network, idx: usize) -> String {
    let terms: Vec<String> = network.complexes()[idx]
        .iter()
        .zip(network.species())
        .filter(|(c, _)| **c != 0)
        .map(|(&c, name)| {
            if c == 1 {
                name.clone()
            } else {
                format!("{c} {name}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
