//! TSV and JSON renderings. Both are byte-deterministic: every collection
//! is ordered before it reaches here.

use std::fmt::Write;

use serde::Serialize;

use rootstack_core::cechtoric::CohomologyTable;
use rootstack_core::stackcheck::{PushforwardCheck, VanishingReport, Verdict};

#[derive(Debug, Clone, Serialize)]
pub struct LocalEntry {
    pub component: String,
    pub root_order: u64,
    pub coefficient: i64,
    pub coarse_coefficient: u64,
    /// Coarse coefficient from the brute-force scan, with `--oracle`.
    pub oracle: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PushforwardReport {
    pub dimension: usize,
    pub root_orders: Vec<u64>,
    pub coefficients: Vec<i64>,
    pub local: Vec<LocalEntry>,
    pub global: Option<PushforwardCheck>,
    pub note: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorRow {
    pub generator: usize,
    pub target: usize,
    pub multiplier: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonoidReport {
    pub source_rank: usize,
    pub target_rank: usize,
    pub injective: bool,
    pub simple: bool,
    pub reason: Option<String>,
    pub bijection: Vec<GeneratorRow>,
    pub field: Option<String>,
    pub lifted_units: Option<Vec<String>>,
    pub pass: bool,
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn table_block(out: &mut String, name: &str, table: &CohomologyTable, mut judge: impl FnMut(usize, usize, usize) -> String) {
    writeln!(out, "# table\t{name}").unwrap();
    out.push_str("i\tj\ttwist\tdimension\tverdict\n");
    for e in table.entries() {
        writeln!(out, "{}\t{}\t{}\t{}\t{}", e.i, e.j, e.twist, e.dimension, judge(e.i, e.j, e.dimension)).unwrap();
    }
}

fn dimension_at(table: &CohomologyTable, i: usize, j: usize) -> Option<usize> {
    table.entries().find(|e| e.i == i && e.j == j).map(|e| e.dimension)
}

pub fn vanishing_tsv(r: &VanishingReport) -> String {
    let mut out = String::new();
    out.push_str("# mode\tvanishing\n");
    let terms: Vec<String> = r.divisor.iter().map(|(k, v)| format!("{k}={v}")).collect();
    writeln!(out, "# divisor\t{}", terms.join("\t")).unwrap();
    let up: Vec<String> = r.round_up.iter().map(|(k, v)| format!("{k}={v}")).collect();
    writeln!(out, "# round_up\t{}", up.join("\t")).unwrap();
    table_block(&mut out, "coarse", &r.coarse, |i, j, _| {
        r.verdicts
            .iter()
            .find(|v| v.i == i && v.j == j)
            .map_or("-".into(), |v| verdict(v.verdict == Verdict::Pass).into())
    });
    if let Some(stack) = &r.stack {
        writeln!(out, "# stack_root_order\t{}", stack.root_order).unwrap();
        table_block(&mut out, "stack", &stack.table, |i, j, d| verdict(dimension_at(&r.coarse, i, j) == Some(d)).into());
    }
    writeln!(out, "# nontrivial\t{}", r.nontrivial).unwrap();
    writeln!(out, "# result\t{}", verdict(r.pass)).unwrap();
    out
}

pub fn pushforward_tsv(r: &PushforwardReport) -> String {
    let mut out = String::new();
    out.push_str("# mode\tpushforward\n");
    out.push_str("# local\tcomponent\troot_order\tcoefficient\tcoarse_coefficient\toracle\n");
    for e in &r.local {
        let oracle = e.oracle.map_or("-".into(), |x| x.to_string());
        writeln!(out, "# local\t{}\t{}\t{}\t{}\t{oracle}", e.component, e.root_order, e.coefficient, e.coarse_coefficient)
            .unwrap();
    }
    if let Some(note) = &r.note {
        writeln!(out, "# note\t{note}").unwrap();
    }
    if let Some(g) = &r.global {
        table_block(&mut out, "coarse", &g.coarse, |i, j, d| verdict(dimension_at(&g.stack, i, j) == Some(d)).into());
        table_block(&mut out, "stack", &g.stack, |i, j, d| verdict(dimension_at(&g.coarse, i, j) == Some(d)).into());
    }
    writeln!(out, "# result\t{}", verdict(r.pass)).unwrap();
    out
}

pub fn monoid_tsv(r: &MonoidReport) -> String {
    let mut out = String::new();
    out.push_str("# mode\tmonoid-check\n");
    writeln!(out, "# ranks\t{}\t{}", r.source_rank, r.target_rank).unwrap();
    writeln!(out, "# injective\t{}", r.injective).unwrap();
    writeln!(out, "# simple\t{}", r.simple).unwrap();
    if let Some(why) = &r.reason {
        writeln!(out, "# reason\t{why}").unwrap();
    }
    if !r.bijection.is_empty() {
        out.push_str("generator\ttarget\tmultiplier\n");
        for g in &r.bijection {
            writeln!(out, "{}\t{}\t{}", g.generator, g.target, g.multiplier).unwrap();
        }
    }
    if let (Some(field), Some(units)) = (&r.field, &r.lifted_units) {
        writeln!(out, "# lift\t{field}\t{}", units.join("\t")).unwrap();
    }
    writeln!(out, "# result\t{}", verdict(r.pass)).unwrap();
    out
}

pub fn structured<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
