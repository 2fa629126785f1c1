//! Byte-stable renderings of a bundle.

use std::fmt::Write as _;

use orbimirror::rational::{factorial, format as fmt_rat, parse};
use orbimirror::Rational;
use serde_json::Value;

use crate::config::{Format, OutputKind};
use crate::pipeline::{InvariantsRecord, ResultBundle, SeriesRecord, TermRecord};

pub fn render(bundle: &ResultBundle, format: Format) -> Vec<u8> {
    match format {
        Format::Json => render_json(bundle).into_bytes(),
        Format::Text => render_text(bundle).into_bytes(),
        Format::Csv => render_csv(bundle),
    }
}

// ---- json ----

pub fn render_json(bundle: &ResultBundle) -> String {
    let v = serde_json::to_value(bundle).expect("serializable");
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    out
}

fn is_flat(v: &Value) -> bool {
    let scalar = |x: &Value| !x.is_object() && !x.is_array();
    match v {
        Value::Array(a) => a.iter().all(scalar),
        Value::Object(o) => o.values().all(|x| scalar(x) || (x.is_array() && is_flat(x))),
        _ => true,
    }
}

/// Pretty printing, except that records of scalars stay on one line.
fn write_value(out: &mut String, v: &Value, indent: usize) {
    if is_flat(v) {
        out.push_str(&serde_json::to_string(v).expect("serializable"));
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(o) => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).expect("serializable"));
                out.push_str(": ");
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < o.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        _ => unreachable!(),
    }
}

// ---- text ----

fn table(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..ncols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let mut line = String::from("  ");
        for (c, cell) in r.iter().enumerate() {
            line.push_str(cell);
            if c + 1 < r.len() {
                line.push_str(&" ".repeat(widths[c] - cell.chars().count() + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn list(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn monomial(vars: &[&str], d: &[u32]) -> String {
    let parts: Vec<String> = d
        .iter()
        .zip(vars)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    parts.join(" ")
}

fn polynomial(vars: &[&str], terms: &[TermRecord], truncation: u32) -> String {
    let mut out = String::new();
    for t in terms {
        let m = monomial(vars, &t.d);
        let (sign, mag) = match t.value.strip_prefix('-') {
            Some(rest) => ("-", rest),
            None => ("+", t.value.as_str()),
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        match (m.is_empty(), mag) {
            (true, _) => out.push_str(mag),
            (false, "1") => out.push_str(&m),
            (false, _) => {
                let _ = write!(out, "{mag} {m}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    let _ = write!(out, " + O({})", truncation + 1);
    out
}

fn series_block(out: &mut String, vars: &[&str], records: &[SeriesRecord], truncation: u32) {
    for r in records {
        let _ = writeln!(out, "  {} = {}", r.name, polynomial(vars, &r.terms, truncation));
    }
}

pub fn render_text(bundle: &ResultBundle) -> String {
    let c = &bundle.config;
    let o = &bundle.outputs;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "orbimirror {}: degrees {:?} in P{:?}, truncation {}",
        bundle.engine_version, c.degrees, c.weights, c.truncation_total_degree
    );
    let _ = writeln!(out, "content hash {}", bundle.content_hash);
    let d = c.truncation_total_degree;
    for kind in &c.outputs {
        out.push('\n');
        let _ = writeln!(out, "[{}]", kind.name());
        match kind {
            OutputKind::Sectors => {
                let mut rows = vec![vec!["alpha", "order", "age", "dim", "degree", "coords", "equations", "strata"]
                    .into_iter()
                    .map(String::from)
                    .collect::<Vec<_>>()];
                for s in o.sectors.iter().flatten() {
                    let strata: Vec<String> = s
                        .strata
                        .iter()
                        .map(|t| format!("{{{}}}:{}", list(&t.lambda), t.open_mass))
                        .collect();
                    rows.push(vec![
                        s.alpha.clone(),
                        s.order.to_string(),
                        s.age.to_string(),
                        s.dimension.to_string(),
                        s.degree.clone(),
                        list(&s.fixed_coordinates),
                        list(&s.fixed_equations),
                        strata.join(" "),
                    ]);
                }
                out.push_str(&table(&rows));
            }
            OutputKind::Basis => {
                let b = o.basis.as_ref().expect("basis computed");
                let mut rows = vec![vec!["index", "class", "alpha", "degree", "kind"].into_iter().map(String::from).collect()];
                for k in &b.classes {
                    rows.push(vec![k.index.to_string(), k.label.clone(), k.alpha.clone(), k.cr_degree.to_string(), k.kind.clone()]);
                }
                out.push_str(&table(&rows));
                out.push_str("  pairing\n");
                let rows: Vec<Vec<String>> = b
                    .pairing
                    .iter()
                    .map(|p| vec![format!("({}, {})", b.classes[p.i].label, b.classes[p.j].label), p.value.clone()])
                    .collect();
                out.push_str(&table(&rows));
            }
            OutputKind::Git => {
                let g = o.git.as_ref().expect("git computed");
                let _ = writeln!(out, "  extension: {}", if g.extension.is_empty() { "none".into() } else { g.extension.join(", ") });
                let _ = writeln!(out, "  lcm of weights: {}", g.lcm);
                out.push_str("  weight matrix\n");
                let rows: Vec<Vec<String>> =
                    g.weight_matrix.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
                out.push_str(&table(&rows).lines().map(|l| format!("  {l}\n")).collect::<String>());
                for (j, x) in g.multidegrees.iter().enumerate() {
                    let _ = writeln!(out, "  equation {j} multidegree {x:?}");
                }
            }
            OutputKind::IFunction => {
                let mut rows = vec![vec!["d", "class", "z", "coefficient"].into_iter().map(String::from).collect()];
                for t in o.i_function.iter().flatten() {
                    rows.push(vec![
                        format!("{:?}", t.d),
                        t.class.clone(),
                        format!("z^{}", t.z_exponent),
                        t.coefficient.clone(),
                    ]);
                }
                out.push_str(&table(&rows));
            }
            OutputKind::MirrorMap => {
                let m = o.mirror_map.as_ref().expect("mirror map computed");
                let qn: Vec<&str> = m.inverse.iter().map(|r| r.name.as_str()).collect();
                let flat: Vec<&str> = m.map.iter().map(|r| r.name.as_str()).collect();
                series_block(&mut out, &qn, &m.map, d);
                out.push_str("  inverse\n");
                series_block(&mut out, &flat, &m.inverse, d);
            }
            OutputKind::Invariants => {
                out.push_str(&invariants_text(o.invariants.as_ref().expect("invariants computed")));
            }
            OutputKind::CrossChecks => {
                for ch in o.cross_checks.iter().flatten() {
                    let _ = writeln!(out, "  {} {}: {}", if ch.passed { "PASS" } else { "FAIL" }, ch.name, ch.detail);
                }
            }
        }
    }
    out
}

/// `prod k_i!` times the coefficient: the correlator with repeated insertions.
fn correlator(t_value: &str, k: &[u32]) -> String {
    let mut v: Rational = parse(t_value).expect("rational record");
    for &ki in k {
        v *= Rational::from_integer(factorial(ki as u64));
    }
    fmt_rat(&v)
}

fn invariants_text(inv: &InvariantsRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "  Q^d has degree d/{} against H", inv.lcm);
    if !inv.classes.is_empty() {
        let names: Vec<String> = inv.classes.iter().enumerate().map(|(i, c)| format!("t{} <-> {c}", i + 1)).collect();
        let _ = writeln!(out, "  {}", names.join(", "));
    }
    let d = inv.truncation;
    if inv.classes.len() == 1 {
        let _ = writeln!(out, "  <phi^k>_(0,k,d/{}) with rows d and columns k; '.' is beyond the truncation", inv.lcm);
        let mut rows = vec![std::iter::once("d\\k".to_string()).chain((0..=d).map(|k| k.to_string())).collect::<Vec<_>>()];
        for d0 in 0..=d {
            let mut row = vec![d0.to_string()];
            for d1 in 0..=d {
                let cell = if d0 + d1 > d {
                    ".".to_string()
                } else {
                    inv.terms
                        .iter()
                        .find(|t| t.d == d0 && t.k[0] == d1)
                        .map(|t| correlator(&t.value, &t.k))
                        .unwrap_or_default()
                };
                row.push(cell);
            }
            rows.push(row);
        }
        out.push_str(&table(&rows));
        return out;
    }
    let vars: Vec<String> = std::iter::once("Q".to_string()).chain((1..=inv.classes.len()).map(|i| format!("t{i}"))).collect();
    let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
    let mut rows = vec![vec!["monomial", "coefficient", "correlator"].into_iter().map(String::from).collect::<Vec<_>>()];
    for t in &inv.terms {
        let mut e = vec![t.d];
        e.extend(&t.k);
        rows.push(vec![monomial(&vars, &e), t.value.clone(), correlator(&t.value, &t.k)]);
    }
    out.push_str(&table(&rows));
    out
}

// ---- csv ----

fn csv_section(records: Vec<Vec<String>>) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for r in records {
        w.write_record(&r).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn joined(xs: &[u32]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn render_csv(bundle: &ResultBundle) -> Vec<u8> {
    let o = &bundle.outputs;
    let kinds = &bundle.config.outputs;
    let mut out = Vec::new();
    for (n, kind) in kinds.iter().enumerate() {
        if kinds.len() > 1 {
            if n > 0 {
                out.push(b'\n');
            }
            out.extend_from_slice(format!("# {}\n", kind.name()).as_bytes());
        }
        let s = |x: &str| x.to_string();
        let rows: Vec<Vec<String>> = match kind {
            OutputKind::Sectors => std::iter::once(vec![s("alpha"), s("order"), s("age"), s("dimension"), s("degree")])
                .chain(o.sectors.iter().flatten().map(|x| {
                    vec![x.alpha.clone(), x.order.to_string(), x.age.to_string(), x.dimension.to_string(), x.degree.clone()]
                }))
                .collect(),
            OutputKind::Basis => std::iter::once(vec![s("index"), s("class"), s("alpha"), s("degree"), s("kind")])
                .chain(o.basis.iter().flat_map(|b| &b.classes).map(|k| {
                    vec![k.index.to_string(), k.label.clone(), k.alpha.clone(), k.cr_degree.to_string(), k.kind.clone()]
                }))
                .collect(),
            OutputKind::Git => {
                let g = o.git.as_ref().expect("git computed");
                let mut rows = vec![vec![s("row"), s("entries")]];
                for (i, r) in g.weight_matrix.iter().enumerate() {
                    rows.push(vec![i.to_string(), r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")]);
                }
                rows
            }
            OutputKind::IFunction => std::iter::once(vec![s("d"), s("alpha"), s("class"), s("hPower"), s("zExponent"), s("coefficient")])
                .chain(o.i_function.iter().flatten().map(|t| {
                    vec![joined(&t.d), t.alpha.clone(), t.class.clone(), t.h_power.to_string(), t.z_exponent.to_string(), t.coefficient.clone()]
                }))
                .collect(),
            OutputKind::MirrorMap => {
                let m = o.mirror_map.as_ref().expect("mirror map computed");
                let mut rows = vec![vec![s("direction"), s("name"), s("d"), s("value")]];
                for (dir, recs) in [("map", &m.map), ("inverse", &m.inverse)] {
                    for r in recs {
                        for t in &r.terms {
                            rows.push(vec![s(dir), r.name.clone(), joined(&t.d), t.value.clone()]);
                        }
                    }
                }
                rows
            }
            OutputKind::Invariants => {
                let inv = o.invariants.as_ref().expect("invariants computed");
                let m = inv.classes.len();
                let header = std::iter::once(s("d")).chain((1..=m).map(|i| format!("k{i}"))).chain(std::iter::once(s("value")));
                std::iter::once(header.collect())
                    .chain(inv.terms.iter().map(|t| {
                        std::iter::once(t.d.to_string())
                            .chain(t.k.iter().map(|x| x.to_string()))
                            .chain(std::iter::once(t.value.clone()))
                            .collect()
                    }))
                    .collect()
            }
            OutputKind::CrossChecks => std::iter::once(vec![s("name"), s("passed"), s("detail")])
                .chain(o.cross_checks.iter().flatten().map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()]))
                .collect(),
        };
        out.extend(csv_section(rows));
    }
    out
}
