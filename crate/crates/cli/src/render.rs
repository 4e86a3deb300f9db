use std::collections::BTreeMap;
use std::fmt::Write;

use treecoeff::coeff::TableDocument;
use treecoeff::{Partition, Rational};

pub fn rational_latex(r: &Rational) -> String {
    if r.is_integer() {
        return r.to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}\\frac{{{}}}{{{}}}", r.numer().magnitude(), r.denom())
}

fn partition_subscript(p: &Partition) -> String {
    if p.is_empty() {
        "\\emptyset".to_string()
    } else {
        p.key()
    }
}

/// `ν: value` lines, in partition order.
pub fn map_text(map: &BTreeMap<Partition, Rational>) -> String {
    let mut out = String::new();
    for (p, v) in map {
        writeln!(out, "{p}: {v}").unwrap();
    }
    out
}

/// `c_1 S_{ν_1} + c_2 S_{ν_2} + ...`, where `#` in `symbol` marks the subscript.
pub fn map_latex(map: &BTreeMap<Partition, Rational>, symbol: &str) -> String {
    if map.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (p, v)) in map.iter().enumerate() {
        let coeff = rational_latex(&v.abs());
        if i == 0 {
            if v.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if v.is_negative() { " - " } else { " + " });
        }
        if !v.abs().is_one() {
            out.push_str(&coeff);
            out.push(' ');
        }
        out.push_str(&symbol.replace('#', &partition_subscript(p)));
    }
    out
}

pub fn table_text(doc: &TableDocument) -> String {
    let mut out = String::new();
    let order: Vec<String> = doc.order.iter().map(Partition::to_string).collect();
    writeln!(out, "weight {}", doc.weight).unwrap();
    writeln!(out, "order {}", order.join(" ")).unwrap();
    for (name, rows) in [("b", &doc.b), ("a", &doc.a)] {
        writeln!(out, "{name}:").unwrap();
        for (p, row) in order.iter().zip(rows) {
            let cells: Vec<String> = row.iter().map(Rational::to_string).collect();
            writeln!(out, "  {p}: {}", cells.join(" ")).unwrap();
        }
    }
    out
}

pub fn table_latex(doc: &TableDocument) -> String {
    let mut out = String::new();
    for (name, rows) in [("B", &doc.b), ("A", &doc.a)] {
        writeln!(out, "{name}_{{{}}} = \\begin{{pmatrix}}", doc.weight).unwrap();
        let lines: Vec<String> = rows
            .iter()
            .map(|row| row.iter().map(rational_latex).collect::<Vec<_>>().join(" & "))
            .collect();
        writeln!(out, "{}", lines.join(" \\\\\n")).unwrap();
        writeln!(out, "\\end{{pmatrix}}").unwrap();
    }
    out
}
