//! Text formats: `.tg` temporal graphs, tree decompositions and vertex orderings.
//!
//! `.tg` layout: a header `tg <n> <tau>` followed by one `<u> <v> <t>` line per
//! time-edge. Blank lines and lines starting with `#` are skipped everywhere.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{GraphError, Label, TemporalGraph, Vertex};
use crate::solvers::tree_decomposition::TreeDecomposition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("missing header")]
    MissingHeader,
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T, FormatError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_tg(text: &str) -> Result<TemporalGraph, FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "tg" {
        return Err(syntax(hline, "expected `tg <n> <tau>`"));
    }
    let n: usize = parse_num(toks[1], hline, "vertex count")?;
    let tau: Label = parse_num(toks[2], hline, "maximum label")?;
    if tau == 0 {
        return Err(FormatError::Graph {
            line: hline,
            source: GraphError::EmptyHorizon,
        });
    }
    let mut raw = Vec::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(syntax(line, "expected `<u> <v> <t>`"));
        }
        let u: Vertex = parse_num(toks[0], line, "vertex")?;
        let v: Vertex = parse_num(toks[1], line, "vertex")?;
        let t: Label = parse_num(toks[2], line, "label")?;
        // validate per line so the error carries the line number
        TemporalGraph::build(n, tau, [(u, v, t)]).map_err(|source| FormatError::Graph { line, source })?;
        raw.push((u, v, t));
    }
    TemporalGraph::build(n, tau, raw).map_err(|source| FormatError::Graph { line: hline, source })
}

pub fn write_tg(g: &TemporalGraph) -> String {
    let mut out = String::new();
    writeln!(out, "tg {} {}", g.n(), g.tau()).unwrap();
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.t).unwrap();
    }
    out
}

/// Tree decomposition text: header `td <num_bags> <max_bag_size> <n>`, bag lines
/// `b <id> <v...>` and tree edges `<id> <id>`. Bag ids are arbitrary distinct
/// integers; vertices are 0-based.
pub fn parse_td(text: &str) -> Result<TreeDecomposition, FormatError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "td" {
        return Err(syntax(hline, "expected `td <num_bags> <max_bag_size> <n>`"));
    }
    let num_bags: usize = parse_num(toks[1], hline, "bag count")?;
    let max_bag: usize = parse_num(toks[2], hline, "bag size")?;
    let n: usize = parse_num(toks[3], hline, "vertex count")?;

    let mut ids: Vec<u64> = Vec::new();
    let mut bags: Vec<Vec<Vertex>> = Vec::new();
    let mut raw_edges: Vec<(usize, u64, u64)> = Vec::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.first() == Some(&"b") {
            if toks.len() < 2 {
                return Err(syntax(line, "bag line needs an id"));
            }
            let id: u64 = parse_num(toks[1], line, "bag id")?;
            if ids.contains(&id) {
                return Err(syntax(line, format!("duplicate bag id {id}")));
            }
            let mut bag = Vec::with_capacity(toks.len() - 2);
            for tok in &toks[2..] {
                let v: Vertex = parse_num(tok, line, "vertex")?;
                if v >= n {
                    return Err(syntax(line, format!("vertex {v} out of range for n={n}")));
                }
                bag.push(v);
            }
            bag.sort_unstable();
            bag.dedup();
            if bag.len() > max_bag {
                return Err(syntax(line, format!("bag {id} exceeds declared size {max_bag}")));
            }
            ids.push(id);
            bags.push(bag);
        } else if toks.len() == 2 {
            let a: u64 = parse_num(toks[0], line, "bag id")?;
            let b: u64 = parse_num(toks[1], line, "bag id")?;
            raw_edges.push((line, a, b));
        } else {
            return Err(syntax(line, "expected `b <id> <v...>` or `<id> <id>`"));
        }
    }
    if bags.len() != num_bags {
        return Err(syntax(
            hline,
            format!("header declares {num_bags} bags, found {}", bags.len()),
        ));
    }
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (line, a, b) in raw_edges {
        let find = |id: u64| {
            ids.iter()
                .position(|&x| x == id)
                .ok_or_else(|| syntax(line, format!("unknown bag id {id}")))
        };
        edges.push((find(a)?, find(b)?));
    }
    Ok(TreeDecomposition::new(n, bags, edges))
}

pub fn write_td(td: &TreeDecomposition) -> String {
    let mut out = String::new();
    let max_bag = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    writeln!(out, "td {} {} {}", td.bags().len(), max_bag, td.n()).unwrap();
    for (i, bag) in td.bags().iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in td.edges() {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// One line of `n` whitespace-separated distinct vertex indices.
pub fn parse_ordering(text: &str, n: usize) -> Result<Vec<Vertex>, FormatError> {
    let mut lines = content_lines(text);
    let (line, l) = lines.next().ok_or(FormatError::MissingHeader)?;
    if let Some((extra, _)) = lines.next() {
        return Err(syntax(extra, "ordering must be a single line"));
    }
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for tok in l.split_whitespace() {
        let v: Vertex = parse_num(tok, line, "vertex")?;
        if v >= n {
            return Err(syntax(line, format!("vertex {v} out of range for n={n}")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(syntax(line, format!("vertex {v} repeated")));
        }
        order.push(v);
    }
    if order.len() != n {
        return Err(syntax(line, format!("expected {n} vertices, found {}", order.len())));
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_skips_comments_and_blanks() {
        let g = parse_tg("# demo\ntg 4 2\n\n0 1 1\n# mid\n1 3 2\n0 2 2\n2 3 1\n").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.num_edges(), 4);
        assert_eq!(write_tg(&g), "tg 4 2\n0 1 1\n2 3 1\n0 2 2\n1 3 2\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_tg("tg 3 2\n0 1 1\n0 x 2\n").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 3, .. }), "{err:?}");
        let err = parse_tg("tg 3 2\n0 1 1\n\n1 1 2\n").unwrap_err();
        assert!(matches!(err, FormatError::Graph { line: 4, source: GraphError::SelfLoop { .. } }));
        let err = parse_tg("tg 3 2\n0 1 3\n").unwrap_err();
        assert!(matches!(err, FormatError::Graph { line: 2, .. }));
        assert!(matches!(parse_tg("# only\n"), Err(FormatError::MissingHeader)));
        assert!(matches!(parse_tg("tg 3\n"), Err(FormatError::Syntax { line: 1, .. })));
    }

    #[test]
    fn td_round_trip() {
        let text = "td 2 3 4\nb 1 0 1 2\nb 7 1 2 3\n1 7\n";
        let td = parse_td(text).unwrap();
        assert_eq!(td.bags(), &[vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(td.edges(), &[(0, 1)]);
        assert_eq!(parse_td(&write_td(&td)).unwrap(), td);
        assert!(parse_td("td 1 1 4\nb 1 0 1\n").is_err());
        assert!(parse_td("td 1 2 4\nb 1 0 1\n1 2\n").is_err());
    }

    #[test]
    fn ordering_validation() {
        assert_eq!(parse_ordering("2 0 1\n", 3).unwrap(), vec![2, 0, 1]);
        assert!(parse_ordering("0 0 1\n", 3).is_err());
        assert!(parse_ordering("0 1\n", 3).is_err());
        assert!(parse_ordering("0 1 3\n", 3).is_err());
    }

    proptest! {
        #[test]
        fn writer_output_reparses_identically(
            n in 2usize..7,
            tau in 1u32..5,
            raw in proptest::collection::vec((0usize..7, 0usize..7, 1u32..5), 0..20),
        ) {
            let raw: Vec<_> = raw
                .into_iter()
                .filter(|&(a, b, t)| a < n && b < n && a != b && t <= tau)
                .collect();
            let g = TemporalGraph::build(n, tau, raw).unwrap();
            let text = write_tg(&g);
            let back = parse_tg(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(write_tg(&back), text);
            // rebuilding from the canonical edge list is a fixed point
            let again = TemporalGraph::build(n, tau, g.edges().iter().map(|e| (e.u, e.v, e.t))).unwrap();
            prop_assert_eq!(again, g);
        }
    }
}
