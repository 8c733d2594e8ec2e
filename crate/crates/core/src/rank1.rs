//! Rank-1 systems from finite graphs: the directed-edge alphabet, the
//! no-backtracking transition matrix, and the Cuntz-Krieger simplicity
//! criterion.

use thiserror::Error;

use crate::mat01::{adjacency_union, Mat01};
use crate::scc::tarjan_scc;
use crate::system::{DecorationMap, TransitionSystem};
use crate::textio::{parse_usize, significant_lines, ParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedEdge {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite undirected multigraph given by directed representatives; each
/// edge implicitly carries a reverse with tail and head swapped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    pub vertex_count: usize,
    pub edges: Vec<NamedEdge>,
}

impl FiniteGraph {
    /// Degree counting both directions of incident edges; a loop adds 2.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.tail == v) + usize::from(e.head == v))
            .sum()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph is not connected: vertex {0} unreachable from vertex 0")]
    Disconnected(usize),
    #[error("graph has no vertices")]
    Empty,
}

#[derive(Clone, Debug)]
pub struct GraphReport {
    pub error: Option<GraphError>,
    /// Vertices of degree below 3; the covering tree is not thick there.
    pub thinness_warnings: Vec<usize>,
}

impl GraphReport {
    pub fn pass(&self) -> bool {
        self.error.is_none()
    }
}

pub fn validate_graph(g: &FiniteGraph) -> GraphReport {
    if g.vertex_count == 0 {
        return GraphReport {
            error: Some(GraphError::Empty),
            thinness_warnings: Vec::new(),
        };
    }
    let mut adj = vec![Vec::new(); g.vertex_count];
    for e in &g.edges {
        adj[e.tail].push(e.head);
        adj[e.head].push(e.tail);
    }
    let mut seen = vec![false; g.vertex_count];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    let error = seen.iter().position(|&s| !s).map(GraphError::Disconnected);
    let thinness_warnings = (0..g.vertex_count).filter(|&v| g.degree(v) < 3).collect();
    GraphReport {
        error,
        thinness_warnings,
    }
}

/// One directed edge of the doubled graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLetter {
    pub label: String,
    pub tail: usize,
    pub head: usize,
    pub reverse: usize,
}

/// Directed edges interleaved with their reverses in declaration order:
/// e0, e0^-1, e1, e1^-1, ...
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeAlphabet {
    pub letters: Vec<EdgeLetter>,
}

pub fn edge_alphabet(g: &FiniteGraph) -> EdgeAlphabet {
    let mut letters = Vec::with_capacity(2 * g.edges.len());
    for (i, e) in g.edges.iter().enumerate() {
        letters.push(EdgeLetter {
            label: e.name.clone(),
            tail: e.tail,
            head: e.head,
            reverse: 2 * i + 1,
        });
        letters.push(EdgeLetter {
            label: format!("{}^-1", e.name),
            tail: e.head,
            head: e.tail,
            reverse: 2 * i,
        });
    }
    EdgeAlphabet { letters }
}

/// The rank-1 system of a graph: M(y, x) = 1 iff the edge pair xy is a
/// non-backtracking path of length 2 (head(x) = tail(y), y != reverse(x)).
/// The decoration marks the directed edges leaving the base vertex 0.
pub fn graph_to_matrix(g: &FiniteGraph) -> TransitionSystem {
    let alphabet = edge_alphabet(g);
    let n = alphabet.letters.len();
    let mut m = Mat01::zeros(n);
    for (x, ex) in alphabet.letters.iter().enumerate() {
        for (y, ey) in alphabet.letters.iter().enumerate() {
            if ex.head == ey.tail && ex.reverse != y {
                m.set(y, x, true);
            }
        }
    }
    let labels: Vec<String> = alphabet.letters.iter().map(|e| e.label.clone()).collect();
    let (names, targets): (Vec<String>, Vec<usize>) = alphabet
        .letters
        .iter()
        .enumerate()
        .filter(|(_, e)| e.tail == 0)
        .map(|(i, e)| (e.label.clone(), i))
        .unzip();
    TransitionSystem::new(labels, vec![m])
        .expect("square by construction")
        .with_decoration(DecorationMap { names, targets })
        .expect("decoration targets are alphabet indices")
}

/// Simplicity of the Cuntz-Krieger algebra of a {0,1}-matrix: irreducible
/// and not a permutation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub irreducible: bool,
    pub permutation: bool,
}

impl SimplicityReport {
    pub fn simple(&self) -> bool {
        self.irreducible && !self.permutation
    }

    pub fn describe(&self) -> String {
        if self.simple() {
            "simple (irreducible, not a permutation matrix)".to_string()
        } else {
            let mut reasons = Vec::new();
            if !self.irreducible {
                reasons.push("reducible");
            }
            if self.permutation {
                reasons.push("permutation matrix");
            }
            format!("not simple ({})", reasons.join(", "))
        }
    }
}

pub fn ck_simplicity_check(m: &Mat01) -> SimplicityReport {
    let adj = adjacency_union(&[m]);
    SimplicityReport {
        irreducible: m.n() > 0 && tarjan_scc(&adj).len() == 1,
        permutation: m.is_permutation(),
    }
}

/// Graph file: `vertices <n>` then `edge <name> <tail> <head>` lines.
pub fn parse_graph(text: &str) -> Result<FiniteGraph, ParseError> {
    let lines = significant_lines(text)?;
    let mut it = lines.iter();
    let header = it
        .next()
        .ok_or_else(|| ParseError::new(0, "empty graph file"))?;
    if header.fields.len() != 2 || header.fields[0] != "vertices" {
        return Err(ParseError::new(header.number, "expected `vertices <n>`"));
    }
    let vertex_count = parse_usize(header, header.fields[1])?;
    let mut edges = Vec::new();
    for line in it {
        if line.fields.len() != 4 || line.fields[0] != "edge" {
            return Err(ParseError::new(
                line.number,
                "expected `edge <name> <tail> <head>`",
            ));
        }
        let name = line.fields[1].to_string();
        if edges.iter().any(|e: &NamedEdge| e.name == name) {
            return Err(ParseError::new(
                line.number,
                format!("duplicate edge name `{name}`"),
            ));
        }
        let tail = parse_usize(line, line.fields[2])?;
        let head = parse_usize(line, line.fields[3])?;
        for v in [tail, head] {
            if v >= vertex_count {
                return Err(ParseError::new(
                    line.number,
                    format!("vertex {v} out of range (graph has {vertex_count})"),
                ));
            }
        }
        edges.push(NamedEdge { name, tail, head });
    }
    Ok(FiniteGraph {
        vertex_count,
        edges,
    })
}

pub fn serialize_graph(g: &FiniteGraph) -> String {
    let mut out = String::new();
    out.push_str("format 1\n");
    out.push_str(&format!("vertices {}\n", g.vertex_count));
    for e in &g.edges {
        out.push_str(&format!("edge {} {} {}\n", e.name, e.tail, e.head));
    }
    out
}
