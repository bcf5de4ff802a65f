use std::io::Write;

use serde_json::Value;

use carlitz_core::local::{LaurentElem, PadicElem};
use carlitz_core::stickelberger::{GroupRing, GroupRingElem};

use crate::config::Format;

/// One command result: a JSON document plus a tabular view of the same data.
pub struct Report {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Extra lines printed after the table.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(json: Value, header: &[&str]) -> Self {
        Report { json, header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new(), notes: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values always serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
            }
            Format::Table => {
                let mut out = table(&self.header, &self.rows);
                for n in &self.notes {
                    out.push_str(n);
                    out.push('\n');
                }
                out
            }
        }
    }

    pub fn emit(&self, format: Format) {
        let mut stdout = std::io::stdout().lock();
        // a closed pipe is not an error worth reporting
        let _ = stdout.write_all(self.render(format).as_bytes());
    }
}

fn table(header: &[String], rows: &[Vec<String>]) -> String {
    if header.is_empty() {
        return String::new();
    }
    let width = |i: usize| {
        rows.iter()
            .filter_map(|r| r.get(i))
            .chain(std::iter::once(&header[i]))
            .map(|c| c.chars().count())
            .max()
            .unwrap_or(0)
    };
    let widths: Vec<usize> = (0..header.len()).map(width).collect();
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        let mut s = parts.join("  ").trim_end().to_string();
        s.push('\n');
        s
    };
    let mut out = line(header);
    out.push_str(&line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>()));
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

pub fn padic(e: &PadicElem) -> String {
    if e.is_zero() {
        format!("O(π^{})", e.prec())
    } else {
        format!("{} + O(π^{})", e.rep(), e.prec())
    }
}

/// `Σ c t^k` in `t = 1/θ`, with the error term when the value is truncated.
pub fn laurent(x: &LaurentElem) -> String {
    let mut terms = Vec::new();
    for (k, c) in x.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = x.val() + k as i64;
        let mono = match e {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{e}"),
        };
        terms.push(match (e, c.0) {
            (0, v) => v.to_string(),
            (_, 1) => mono,
            (_, v) => format!("{v}{mono}"),
        });
    }
    let body = if terms.is_empty() { None } else { Some(terms.join(" + ")) };
    match (body, x.abs_prec()) {
        (None, None) => "0".into(),
        (None, Some(p)) => format!("O(t^{p})"),
        (Some(b), None) => b,
        (Some(b), Some(p)) => format!("{b} + O(t^{p})"),
    }
}

/// `c` for a scalar `c·[1]`, otherwise `c₁[γ₁] + …` by representative.
pub fn group_ring(ring: &GroupRing, a: &GroupRingElem) -> String {
    if a.is_zero() {
        return "0".into();
    }
    if let Some(c) = a.as_scalar(ring.group()) {
        return c.to_string();
    }
    ring.terms_with_reps(a)
        .iter()
        .map(|(g, c)| if c.0 == 1 { format!("[{}]", g.rep) } else { format!("{c}[{}]", g.rep) })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `[{gamma, coeff}]`, sorted by representative.
pub fn group_ring_json(ring: &GroupRing, a: &GroupRingElem) -> Value {
    Value::Array(
        ring.terms_with_reps(a)
            .into_iter()
            .map(|(g, c)| serde_json::json!({ "gamma": g.rep, "coeff": c }))
            .collect(),
    )
}
