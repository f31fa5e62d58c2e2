//! DIMACS CNF and the `p hyg` hypergraph format.
//!
//! Both formats are 1-indexed on disk. A hypergraph file is a header
//! `p hyg <n> <m>` followed by one line of vertex ids per edge. Lines
//! starting with `c` are comments in either format.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{Clause, CnfFormula, Hypergraph, Lit};

fn header(line: usize, text: &str, kind: &str) -> Result<(usize, usize)> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "p" || toks[1] != kind {
        return Err(Error::parse(
            line,
            format!("expected `p {kind} <n> <m>`, got `{text}`"),
        ));
    }
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::parse(line, format!("bad header count `{s}`")))
    };
    Ok((num(toks[2])?, num(toks[3])?))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'))
}

pub fn read_dimacs(text: &str) -> Result<CnfFormula> {
    let mut lines = content_lines(text);
    let (hline, htext) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `p cnf` header"))?;
    let (n, m) = header(hline, htext, "cnf")?;

    let mut clauses = Vec::with_capacity(m);
    let mut pending: Vec<Lit> = Vec::new();
    let mut last_line = hline;
    for (line, body) in lines {
        if body.starts_with('%') {
            break;
        }
        last_line = line;
        for tok in body.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("bad literal `{tok}`")))?;
            if lit == 0 {
                let clause = Clause::new(std::mem::take(&mut pending))
                    .map_err(|e| Error::parse(line, e.to_string()))?;
                clauses.push(clause);
                continue;
            }
            let var = lit.unsigned_abs();
            if var as usize > n {
                return Err(Error::parse(
                    line,
                    format!("literal {lit} out of range for {n} variables"),
                ));
            }
            let var = (var - 1) as u32;
            pending.push(if lit > 0 {
                Lit::pos(var)
            } else {
                Lit::neg(var)
            });
        }
    }
    if !pending.is_empty() {
        return Err(Error::parse(last_line, "missing terminating 0"));
    }
    if clauses.len() != m {
        return Err(Error::parse(
            last_line,
            format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(n, clauses)
}

pub fn write_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.n(), f.m());
    for c in f.clauses() {
        for l in c.lits() {
            let v = l.var as i64 + 1;
            let _ = write!(out, "{} ", if l.negated { -v } else { v });
        }
        out.push_str("0\n");
    }
    out
}

pub fn read_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    let (hline, htext) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `p hyg` header"))?;
    let (n, m) = header(hline, htext, "hyg")?;

    let mut edges = Vec::with_capacity(m);
    let mut last_line = hline;
    for (line, body) in lines {
        last_line = line;
        let mut edge = Vec::new();
        for tok in body.split_whitespace() {
            let v: u64 = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("bad vertex `{tok}`")))?;
            if v == 0 || v as usize > n {
                return Err(Error::parse(
                    line,
                    format!("vertex {v} out of range for {n} vertices"),
                ));
            }
            edge.push((v - 1) as u32);
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::parse(line, format!("duplicate vertex {}", w[0] + 1)));
        }
        edges.push(sorted);
    }
    if edges.len() != m {
        return Err(Error::parse(
            last_line,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Hypergraph::new(n, edges)
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("p hyg {} {}\n", h.n(), h.m());
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
