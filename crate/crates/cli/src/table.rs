use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context as _, Result};
use serde_json::{json, Value};

use taustrat::serial::TableRowJson;
use taustrat::strat::count_induced_systems;

use crate::commands::{Context, Output};
use crate::Format;

/// One line of an expected-values file: `label<TAB>systems<TAB>tfepss`.
#[derive(Debug, Clone)]
pub struct Expected {
    pub label: String,
    pub summands: BTreeSet<String>,
    pub systems: usize,
    pub tfepss: usize,
}

pub fn default_expected(algebra_file: &Path) -> Option<PathBuf> {
    let p = algebra_file.with_extension("table1.tsv");
    p.exists().then_some(p)
}

pub fn parse_expected(text: &str) -> Result<Vec<Expected>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 3 {
            anyhow::bail!("expected values line {}: need 3 tab-separated columns", n + 1);
        }
        out.push(Expected {
            label: cols[0].to_string(),
            summands: cols[0].split('⊕').map(|s| s.trim().to_string()).collect(),
            systems: cols[1].trim().parse().context("systems count")?,
            tfepss: cols[2].trim().parse().context("tfepss count")?,
        });
    }
    Ok(out)
}

fn convention_match(row: &TableRowJson, expected: usize) -> &'static str {
    match (row.count_ordered == expected, row.count_unordered == expected) {
        (true, true) => "both",
        (true, false) => "ordered",
        (false, true) => "unordered",
        (false, false) => "none",
    }
}

pub fn run(ctx: &mut Context, audit: bool, expected_path: Option<&Path>) -> Result<Output> {
    let caps = ctx.caps();
    let format = ctx.cli.format;
    let u = ctx.universe()?;
    let rows: Vec<TableRowJson> = count_induced_systems(u, caps)?
        .iter()
        .map(|r| TableRowJson::from_row(r, u))
        .collect();
    let expected = match expected_path {
        Some(p) => parse_expected(&std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?)?,
        None => Vec::new(),
    };

    // Rows follow the expected file when it lists exactly these modules.
    let mut ordered: Vec<(TableRowJson, Option<Expected>)> = Vec::new();
    let mut remaining = rows;
    for e in &expected {
        if let Some(pos) = remaining
            .iter()
            .position(|r| r.module.iter().cloned().collect::<BTreeSet<_>>() == e.summands)
        {
            ordered.push((remaining.remove(pos), Some(e.clone())));
        }
    }
    ordered.extend(remaining.into_iter().map(|r| (r, None)));

    let mut all_match = true;
    let mut text = String::new();
    let mut tsv = String::from(
        "module\tcount_orders\tcount_ordered\tcount_unordered\tcount_tfepss\texpected_systems\texpected_tfepss\tsystems_match\ttfepss_match\n",
    );
    let mut json_rows = Vec::new();
    writeln!(
        text,
        "{:<14} {:>6} {:>7} {:>9} {:>7}   {:>8}{}match",
        "module", "orders", "ordered", "unordered", "tfepss", "expected", " ".repeat(11)
    )?;
    for (row, exp) in &ordered {
        let label = exp.as_ref().map(|e| e.label.clone()).unwrap_or_else(|| row.module.join("⊕"));
        let (sys_match, tf_match) = match exp {
            Some(e) => (convention_match(row, e.systems), if row.count_tfepss == e.tfepss { "yes" } else { "no" }),
            None => ("-", "-"),
        };
        if exp.is_some() && (sys_match == "none" || tf_match == "no") {
            all_match = false;
        }
        let (es, et) = exp
            .as_ref()
            .map(|e| (e.systems.to_string(), e.tfepss.to_string()))
            .unwrap_or(("-".into(), "-".into()));
        let flag = if row.count_ordered != row.count_unordered && (sys_match == "ordered" || sys_match == "unordered") {
            format!("  (ordered {} / unordered {}: {} count matches)", row.count_ordered, row.count_unordered, sys_match)
        } else {
            String::new()
        };
        writeln!(
            text,
            "{:<14} {:>6} {:>7} {:>9} {:>7}   {:>8} {:>7}   systems {} tfepss {}{}",
            label, row.count_orders, row.count_ordered, row.count_unordered, row.count_tfepss, es, et, sys_match, tf_match, flag
        )?;
        writeln!(
            tsv,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            label, row.count_orders, row.count_ordered, row.count_unordered, row.count_tfepss, es, et, sys_match, tf_match
        )?;
        let mut v = serde_json::to_value(row)?;
        if let (Some(e), Value::Object(map)) = (exp, &mut v) {
            map.insert("label".into(), json!(e.label));
            map.insert("expected_systems".into(), json!(e.systems));
            map.insert("expected_tfepss".into(), json!(e.tfepss));
            map.insert("systems_match".into(), json!(sys_match));
            map.insert("tfepss_match".into(), json!(tf_match == "yes"));
        }
        json_rows.push(v);
    }
    if !expected.is_empty() {
        let verdict = if all_match && ordered.iter().all(|(_, e)| e.is_some()) && ordered.len() == expected.len() {
            "every row matches the expected values"
        } else {
            "MISMATCH against the expected values"
        };
        writeln!(text, "{verdict}")?;
        writeln!(tsv, "# {verdict}")?;
    }
    if audit {
        let mut listing = String::new();
        for (row, exp) in &ordered {
            let label = exp.as_ref().map(|e| e.label.clone()).unwrap_or_else(|| row.module.join("⊕"));
            writeln!(listing, "{label}:")?;
            for ((o, d), p) in row.orders.iter().zip(&row.delta_systems).zip(&row.tf_proper) {
                writeln!(
                    listing,
                    "  order ({}) -> Δ ({}){}",
                    o.join(", "),
                    d.join(", "),
                    if *p { "  filtered" } else { "" }
                )?;
            }
        }
        text.push_str("\naudit\n");
        text.push_str(&listing);
        for line in listing.lines() {
            writeln!(tsv, "# {line}")?;
        }
    }
    let body = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&Value::Array(json_rows))?),
        Format::Tsv => tsv,
        Format::Text => text,
    };
    Ok(Output { text: body, ok: true })
}
