//! Line-oriented text format for graphs, digraphs and uniform hypergraphs.
//!
//! ```text
//! # comments and blank lines are ignored
//! graph 3
//! e 0 1
//! e 1 2
//! ```
//!
//! Headers are `graph N`, `digraph N` or `hypergraph N R`; relation lines are
//! `e u v`, `a u v` (arc `u -> v`) and `h v1 .. vR`. Vertices are 0-based.

use eppa_core::{Digraph, Graph, Hypergraph, Structure};
use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

/// A structure of any supported kind, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyStructure {
    Graph(Graph),
    Digraph(Digraph),
    Hypergraph(Hypergraph),
}

impl AnyStructure {
    pub fn kind_name(&self) -> &'static str {
        match self {
            AnyStructure::Graph(_) => "graph",
            AnyStructure::Digraph(_) => "digraph",
            AnyStructure::Hypergraph(_) => "hypergraph",
        }
    }

    pub fn order(&self) -> usize {
        match self {
            AnyStructure::Graph(g) => g.order(),
            AnyStructure::Digraph(g) => g.order(),
            AnyStructure::Hypergraph(g) => g.order(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based; 0 when the error is not tied to a line.
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn numbers(line: usize, fields: &[&str]) -> Result<Vec<usize>, ParseError> {
    fields.iter().map(|f| f.parse().map_err(|_| err(line, format!("{f:?} is not a vertex index")))).collect()
}

enum Header {
    Graph(usize),
    Digraph(usize),
    Hypergraph(usize, usize),
}

pub fn parse_structure(text: &str) -> Result<AnyStructure, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| err(0, "empty input, expected a header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let header = match fields.as_slice() {
        ["graph", n] => Header::Graph(numbers(hline, &[n])?[0]),
        ["digraph", n] => Header::Digraph(numbers(hline, &[n])?[0]),
        ["hypergraph", n, r] => {
            let v = numbers(hline, &[n, r])?;
            if v[1] < 2 {
                return Err(err(hline, "uniformity must be at least 2"));
            }
            Header::Hypergraph(v[0], v[1])
        }
        _ => return Err(err(hline, format!("expected `graph N`, `digraph N` or `hypergraph N R`, got {header:?}"))),
    };
    let (n, tag, arity) = match header {
        Header::Graph(n) => (n, "e", 2),
        Header::Digraph(n) => (n, "a", 2),
        Header::Hypergraph(n, r) => (n, "h", r),
    };

    let mut seen = HashSet::new();
    let mut tuples = Vec::new();
    for (ln, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] != tag {
            return Err(err(ln, format!("expected a `{tag}` line, got {line:?}")));
        }
        if fields.len() != arity + 1 {
            return Err(err(ln, format!("`{tag}` takes {arity} vertices, got {}", fields.len() - 1)));
        }
        let vs = numbers(ln, &fields[1..])?;
        if let Some(&v) = vs.iter().find(|&&v| v >= n) {
            return Err(err(ln, format!("vertex {v} out of range for {n} vertices")));
        }
        let mut key = vs.clone();
        if tag != "a" {
            key.sort_unstable();
        }
        if key.windows(2).any(|w| w[0] == w[1]) || (tag == "a" && vs[0] == vs[1]) {
            return Err(err(ln, format!("repeated vertex in {line:?}")));
        }
        if !seen.insert(key) {
            return Err(err(ln, format!("duplicate relation {line:?}")));
        }
        tuples.push(vs);
    }

    let build = |e: eppa_core::EppaError| err(0, e.to_string());
    Ok(match header {
        Header::Graph(n) => {
            let edges: Vec<_> = tuples.iter().map(|t| (t[0], t[1])).collect();
            AnyStructure::Graph(Graph::from_edges(n, &edges).map_err(build)?)
        }
        Header::Digraph(n) => {
            let arcs: Vec<_> = tuples.iter().map(|t| (t[0], t[1])).collect();
            AnyStructure::Digraph(Digraph::from_arcs(n, &arcs).map_err(build)?)
        }
        Header::Hypergraph(n, r) => AnyStructure::Hypergraph(Hypergraph::from_edges(n, r, &tuples).map_err(build)?),
    })
}

fn write_tuples<S: Structure>(header: String, tag: &str, s: &S) -> String {
    let mut out = header;
    out.push('\n');
    for t in s.tuples() {
        out.push_str(tag);
        for v in t {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

pub fn write_graph(g: &Graph) -> String {
    write_tuples(format!("graph {}", g.order()), "e", g)
}

pub fn write_digraph(g: &Digraph) -> String {
    write_tuples(format!("digraph {}", g.order()), "a", g)
}

pub fn write_hypergraph(g: &Hypergraph) -> String {
    write_tuples(format!("hypergraph {} {}", g.order(), g.uniformity()), "h", g)
}

pub fn write_structure(s: &AnyStructure) -> String {
    match s {
        AnyStructure::Graph(g) => write_graph(g),
        AnyStructure::Digraph(g) => write_digraph(g),
        AnyStructure::Hypergraph(g) => write_hypergraph(g),
    }
}

/// `index<TAB>label`, one vertex per line.
pub fn write_labels(labels: &[String]) -> String {
    labels.iter().enumerate().map(|(i, l)| format!("{i}\t{l}\n")).collect()
}

pub fn parse_labels(text: &str) -> Result<Vec<String>, ParseError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .enumerate()
        .map(|(want, (i, l))| {
            let (idx, label) = l.split_once('\t').ok_or_else(|| err(i + 1, "expected `index<TAB>label`"))?;
            if idx.parse::<usize>() != Ok(want) {
                return Err(err(i + 1, format!("expected index {want}, got {idx:?}")));
            }
            Ok(label.to_string())
        })
        .collect()
}

/// Sidecar path for `path`: `host.graph` gets `host.graph.labels`.
pub fn labels_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".labels");
    s.into()
}
