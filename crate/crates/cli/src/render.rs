//! Plain-text rendering: `key  value` lines with aligned values.

use std::fmt::Write;

use crate::report::{AnalysisReport, ColoringReport, MixedVolReport, MvEntry, PartitionView, SocReport};

const KEY_WIDTH: usize = 24;

struct Lines(String);

impl Lines {
    fn new() -> Self {
        Lines(String::new())
    }

    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        writeln!(self.0, "{key:<KEY_WIDTH$}{value}").unwrap();
    }

    fn item(&mut self, value: impl std::fmt::Display) {
        writeln!(self.0, "{:<KEY_WIDTH$}{value}", "").unwrap();
    }

    fn blank(&mut self) {
        self.0.push('\n');
    }
}

/// `p/1` shown as `p` in text output.
fn short(q: &str) -> &str {
    q.strip_suffix("/1").unwrap_or(q)
}

fn vector(v: &[String]) -> String {
    let parts: Vec<&str> = v.iter().map(|x| short(x)).collect();
    format!("({})", parts.join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn mv_lines(out: &mut Lines, entries: &[MvEntry], agreement: Option<bool>) {
    for e in entries {
        let mut value = e.value.clone();
        if let Some(a) = &e.alpha {
            let a: Vec<String> = a.iter().map(|i| i.to_string()).collect();
            write!(value, "  (alpha = {})", a.join(",")).unwrap();
        }
        if let Some(n) = e.cells {
            write!(value, "  ({n} cell{})", if n == 1 { "" } else { "s" }).unwrap();
        }
        if e.conditional {
            value.push_str("  (conditional)");
        }
        out.kv(&format!("  {}", e.method), value);
    }
    if let Some(a) = agreement {
        out.kv("  agreement", if a { "all methods agree" } else { "METHODS DISAGREE" });
    }
}

fn partition_lines(out: &mut Lines, p: &PartitionView) {
    out.kv("partitionable", yes(p.partitionable));
    if let Some(w) = &p.w_list {
        for (j, w) in w.iter().enumerate() {
            let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            out.kv(&format!("  w{}", j + 1), format!("({})", w.join(", ")));
        }
    }
    if let Some(r) = &p.refusal {
        out.kv("  reason", &r.message);
        if let (Some(a), Some(b)) = (&r.a, &r.b) {
            out.kv("  terms", format!("a = {a:?}, b = {b:?}"));
        }
    }
}

pub fn analysis(r: &AnalysisReport) -> String {
    let mut out = Lines::new();
    let s = &r.summary;
    out.kv("file", &r.file);
    out.kv("seed", format!("{} ({} trials)", r.seed, r.trials));
    out.kv("species", format!("{} ({})", s.s, s.species.join(", ")));
    out.kv("complexes", format!("{} ({})", s.m, s.complexes.join(", ")));
    out.kv("linkage classes", s.linkage_classes);
    out.kv("terminal classes", s.terminal_classes);
    out.kv(
        "deficiency",
        format!(
            "kernel {}, combinatorial {}{}",
            s.deficiency.kernel,
            s.deficiency.combinatorial,
            if s.deficiency.agree { "" } else { " (differ)" }
        ),
    );
    out.kv("conservation laws", r.conservation.len());
    for law in &r.conservation {
        out.item(format!("{} = {}", law.constant, vector(&law.w)));
    }
    out.blank();

    let p = &r.pdsc;
    out.kv("binomial kernel", if p.certified { "yes" } else { "no" });
    out.kv("  dim ker Sigma", p.d);
    for (i, b) in p.blocks.iter().enumerate() {
        out.kv(&format!("  block {}", i + 1), b.join(", "));
    }
    if let Some(reason) = &p.reason {
        out.kv("  reason", reason);
    }
    if let Some(sign) = p.sign_condition {
        out.kv("  sign condition", yes(sign));
    }
    if let Some(sq) = &r.squareness {
        out.kv(
            "square system",
            format!(
                "{} ({} binomials + {} laws, {} species)",
                yes(sq.square),
                sq.binomials,
                sq.conservation_laws,
                sq.species
            ),
        );
    }
    if let Some(g) = &r.generators {
        out.blank();
        out.kv("generators", &g.source);
        for t in &g.text {
            out.item(t);
        }
        let rates: Vec<String> = g.rates.iter().map(|(k, v)| format!("{k}={}", short(v))).collect();
        out.kv("  rates", rates.join(" "));
    }
    if let Some(part) = &r.partition {
        partition_lines(&mut out, part);
    }
    if !r.mixed_volume.is_empty() {
        out.blank();
        out.kv("mixed volume", "");
        mv_lines(&mut out, &r.mixed_volume, r.agreement);
    }
    for n in &r.notes {
        out.kv("note", n);
    }
    out.0
}

pub fn mixedvol(r: &MixedVolReport) -> String {
    let mut out = Lines::new();
    out.kv("file", &r.file);
    out.kv("seed", format!("{} ({} trials)", r.seed, r.trials));
    out.kv("generators", &r.generators.source);
    for t in &r.generators.text {
        out.item(t);
    }
    partition_lines(&mut out, &r.partition);
    out.kv("mixed volume", "");
    mv_lines(&mut out, &r.results, r.agreement);
    for n in &r.notes {
        out.kv("note", n);
    }
    out.0
}

pub fn soc(r: &SocReport) -> String {
    // a valid network file: the summary lines are comments
    let mut out = String::new();
    writeln!(out, "# SOC_{}: closed-form mixed volume {}", r.m, r.closed_form).unwrap();
    for e in &r.check {
        writeln!(out, "# {}: {}", e.method, e.value).unwrap();
    }
    if let Some(a) = r.agreement {
        writeln!(out, "# check: {}", if a { "agrees with the closed form" } else { "DISAGREES" }).unwrap();
    }
    out.push_str(&r.network);
    out
}

pub fn coloring(r: &ColoringReport) -> String {
    let mut out = Lines::new();
    out.kv("file", &r.file);
    let mut cycle = r.cycle.clone();
    cycle.push(r.cycle[0].clone());
    out.kv("cycle", cycle.join(" -> "));
    out.kv("dim ker Sigma", r.d);
    match &r.colors {
        Some(colors) => {
            let c: Vec<String> = colors.iter().map(|x| x.to_string()).collect();
            out.kv("coloring", format!("({})", c.join(",")));
            for k in &r.classes {
                let status = if k.balanced { "balanced" } else { "UNBALANCED" };
                let heads = if k.heads.is_empty() { "-".to_string() } else { k.heads.join(", ") };
                let tails = if k.tails.is_empty() { "-".to_string() } else { k.tails.join(", ") };
                out.kv(&format!("  color {}", k.color), status);
                out.kv("    heads", format!("{heads}  sum {:?}", k.head_sum));
                out.kv("    tails", format!("{tails}  sum {:?}", k.tail_sum));
            }
        }
        None => {
            out.kv("coloring", "no valid coloring");
            if let Some(reason) = &r.reason {
                out.kv("  reason", reason);
            }
        }
    }
    out.0
}
