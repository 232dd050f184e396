//! Text renderings of census rows, the classification table, identity checks
//! and the epimorphism graph.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serializer;

use crate::census::{CensusRow, IdentityReport};
use crate::classify::Table1;
use crate::epim::{EpiGraph, EpiWitness};
use crate::rational::Rational;

/// Serializes as a JSON number when it fits in 64 bits, otherwise as a
/// decimal string.
pub fn ser_bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    if let Some(v) = n.to_i64() {
        s.serialize_i64(v)
    } else if let Some(v) = n.to_u64() {
        s.serialize_u64(v)
    } else {
        s.serialize_str(&n.to_string())
    }
}

/// How rational cells are printed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Number {
    /// `p/q`, or `p` for integers.
    #[default]
    Exact,
    /// Rounded to this many significant digits.
    Decimal(usize),
}

impl Number {
    pub fn fmt(self, r: &Rational) -> String {
        match self {
            Number::Exact => r.to_compact_string(),
            Number::Decimal(d) => r.to_decimal_string(d),
        }
    }
}

const CENSUS_HEADER: [&str; 7] = ["c", "TK", "TS", "avg braid", "TK*", "TS*", "avg braid*"];
const MIRROR_COLUMNS: [usize; 4] = [0, 4, 5, 6];

fn census_cells(row: &CensusRow, num: Number) -> [String; 7] {
    [
        row.c.to_string(),
        row.tk.to_string(),
        row.ts.to_string(),
        num.fmt(&row.avg_braid),
        row.tk_star.to_string(),
        row.ts_star.to_string(),
        num.fmt(&row.avg_braid_star),
    ]
}

/// Header and cells in the layout of the reference census table, or only the
/// mirror-identified columns.
fn census_grid(
    rows: &[CensusRow],
    num: Number,
    up_to_mirror: bool,
) -> (Vec<&'static str>, Vec<Vec<String>>) {
    let columns: Vec<usize> = if up_to_mirror {
        MIRROR_COLUMNS.to_vec()
    } else {
        (0..CENSUS_HEADER.len()).collect()
    };
    let header = columns.iter().map(|&i| CENSUS_HEADER[i]).collect();
    let cells = rows
        .iter()
        .map(|r| {
            let all = census_cells(r, num);
            columns.iter().map(|&i| all[i].clone()).collect()
        })
        .collect();
    (header, cells)
}

fn markdown_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(
        out,
        "|{}|",
        header.iter().map(|_| "---").collect::<Vec<_>>().join("|")
    );
    for row in rows {
        let _ = writeln!(out, "| {} |", row.join(" | "));
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", header.join(","));
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| csv_field(c)).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

pub fn census_markdown(rows: &[CensusRow], num: Number, up_to_mirror: bool) -> String {
    let (header, cells) = census_grid(rows, num, up_to_mirror);
    markdown_table(&header, cells)
}

pub fn census_csv(rows: &[CensusRow], num: Number, up_to_mirror: bool) -> String {
    let (header, cells) = census_grid(rows, num, up_to_mirror);
    csv_table(&header, cells)
}

pub fn census_json(rows: &[CensusRow]) -> String {
    serde_json::to_string_pretty(rows).expect("census rows serialize")
}

const TABLE1_HEADER: [&str; 5] = [
    "braid index",
    "type",
    "c",
    "even continued fraction",
    "onto",
];

fn table1_cells(t: &Table1) -> Vec<Vec<String>> {
    t.rows
        .iter()
        .map(|r| {
            let word = r
                .word
                .entries()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            vec![
                r.braid.to_string(),
                r.type_label().to_string(),
                r.crossing.to_string(),
                format!("[{word}]"),
                r.onto(),
            ]
        })
        .collect()
}

pub fn table1_markdown(t: &Table1) -> String {
    markdown_table(&TABLE1_HEADER, table1_cells(t))
}

pub fn table1_csv(t: &Table1) -> String {
    csv_table(&TABLE1_HEADER, table1_cells(t))
}

pub fn table1_json(t: &Table1) -> String {
    serde_json::to_string_pretty(t).expect("table serializes")
}

pub fn identities_markdown(r: &IdentityReport) -> String {
    markdown_table(
        &["identity", "cases", "result"],
        r.checks.iter().map(|c| {
            vec![
                c.name.to_string(),
                c.cases.to_string(),
                c.counterexample
                    .clone()
                    .map_or_else(|| "ok".to_string(), |e| format!("FAILED at {e}")),
            ]
        }),
    )
}

pub fn identities_csv(r: &IdentityReport) -> String {
    csv_table(
        &["identity", "statement", "cases", "counterexample"],
        r.checks.iter().map(|c| {
            vec![
                c.name.to_string(),
                c.statement.to_string(),
                c.cases.to_string(),
                c.counterexample.clone().unwrap_or_default(),
            ]
        }),
    )
}

pub fn identities_json(r: &IdentityReport) -> String {
    serde_json::to_string_pretty(r).expect("report serializes")
}

/// Graphviz digraph with an edge `K -> K'` for every epimorphism found.
pub fn epi_graph_dot(g: &EpiGraph) -> String {
    let mut out = String::from("digraph epi {\n");
    for n in &g.nodes {
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"{}\\nc={}\"];",
            n.canon(),
            n.name(),
            n.crossing()
        );
    }
    for e in &g.edges {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"r={}\"];",
            e.witness.big.canon(),
            e.witness.small.canon(),
            e.witness.params.r
        );
    }
    out.push_str("}\n");
    out
}

pub fn epi_graph_json(g: &EpiGraph) -> String {
    serde_json::to_string_pretty(g).expect("graph serializes")
}

pub fn epi_graph_csv(g: &EpiGraph) -> String {
    csv_table(
        &["source", "target", "r", "eps", "c", "witnesses"],
        g.edges.iter().map(|e| {
            let p = &e.witness.params;
            vec![
                e.witness.big.canon().to_string(),
                e.witness.small.canon().to_string(),
                p.r.to_string(),
                join_spaced(&p.eps),
                join_spaced(&p.cvec),
                e.witness_count.to_string(),
            ]
        }),
    )
}

const WITNESS_HEADER: [&str; 10] = [
    "target",
    "onto",
    "r",
    "eps",
    "c",
    "copies",
    "c budget",
    "zero gaps",
    "signs",
    "slack",
];

fn join_spaced<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn witness_cells(w: &EpiWitness) -> Vec<String> {
    let a = &w.audit;
    vec![
        w.params.target.to_string(),
        w.small.mirror_class().name(),
        w.params.r.to_string(),
        join_spaced(&w.params.eps),
        join_spaced(&w.params.cvec),
        a.term_copies.to_string(),
        a.term_cbudget.to_string(),
        a.term_zero.to_string(),
        a.term_signs.to_string(),
        a.slack.to_string(),
    ]
}

pub fn witnesses_markdown(ws: &[EpiWitness]) -> String {
    markdown_table(&WITNESS_HEADER, ws.iter().map(witness_cells))
}

pub fn witnesses_csv(ws: &[EpiWitness]) -> String {
    csv_table(&WITNESS_HEADER, ws.iter().map(witness_cells))
}

pub fn witnesses_json(ws: &[EpiWitness]) -> String {
    serde_json::to_string_pretty(ws).expect("witnesses serialize")
}

pub fn epi_graph_markdown(g: &EpiGraph) -> String {
    markdown_table(
        &["source", "c", "target", "c'", "r", "witnesses"],
        g.edges.iter().map(|e| {
            vec![
                e.witness.big.canon().to_string(),
                e.witness.big.crossing().to_string(),
                e.witness.small.canon().to_string(),
                e.witness.small.crossing().to_string(),
                e.witness.params.r.to_string(),
                e.witness_count.to_string(),
            ]
        }),
    )
}
