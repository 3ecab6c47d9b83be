//! Simple labeled graphs, symbolic pattern families and the edge-list text format.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
}

/// A simple graph on vertices `0..n`, edges stored as normalized `(u, v)` with `u < v`
/// in lexicographic order. Isolated vertices are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new() }
    }

    /// Builds a graph, normalizing each edge to `u < v`. Rejects loops,
    /// out-of-range endpoints and duplicates.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::Loop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if !set.insert((u, v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).is_ok()
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Disjoint union: `other` is laid out on the block of vertices after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        edges.sort_unstable();
        Graph {
            n: self.n + other.n,
            edges,
        }
    }

    /// Relabels vertices by `perm` (vertex `i` becomes `perm[i]`).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabeling by a permutation keeps the graph simple")
    }

    /// Subgraph on the same vertex set keeping the edges flagged in `keep`.
    pub fn edge_subgraph(&self, keep: impl Fn(usize) -> bool) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .map(|(_, &e)| e)
            .collect();
        Graph { n: self.n, edges }
    }
}

/// Vertex degrees of `g`, indexed by vertex.
pub fn degree_profile(g: &Graph) -> Vec<usize> {
    let mut deg = vec![0; g.n];
    for &(u, v) in &g.edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg
}

/// Symbolic pattern families. `Path(k)` has `k` edges (the path on `k + 1`
/// vertices), `Matching(t)` is `t` disjoint edges, `TriplePath(k)` is `k`
/// disjoint two-edge paths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternSpec {
    Path(usize),
    Cycle(usize),
    Matching(usize),
    TriplePath(usize),
    Union(Vec<PatternSpec>),
    Custom(Graph),
}

impl PatternSpec {
    pub fn validate(&self) -> Result<(), GraphError> {
        match self {
            PatternSpec::Path(k) if *k < 1 => Err(GraphError::InvalidPattern("path needs at least one edge".into())),
            PatternSpec::Cycle(k) if *k < 3 => Err(GraphError::InvalidPattern(format!("cycle length {k} < 3"))),
            PatternSpec::Matching(t) if *t < 1 => {
                Err(GraphError::InvalidPattern("matching needs at least one edge".into()))
            }
            PatternSpec::TriplePath(k) if *k < 1 => {
                Err(GraphError::InvalidPattern("need at least one two-edge path".into()))
            }
            PatternSpec::Union(parts) if parts.is_empty() => Err(GraphError::InvalidPattern("empty union".into())),
            PatternSpec::Union(parts) => parts.iter().try_for_each(PatternSpec::validate),
            _ => Ok(()),
        }
    }

    /// Number of vertices of the realization, computed without building it.
    pub fn vertex_count(&self) -> usize {
        match self {
            PatternSpec::Path(k) => k + 1,
            PatternSpec::Cycle(k) => *k,
            PatternSpec::Matching(t) => 2 * t,
            PatternSpec::TriplePath(k) => 3 * k,
            PatternSpec::Union(parts) => parts.iter().map(PatternSpec::vertex_count).sum(),
            PatternSpec::Custom(g) => g.vertex_count(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            PatternSpec::Path(k) | PatternSpec::Cycle(k) | PatternSpec::Matching(k) => *k,
            PatternSpec::TriplePath(k) => 2 * k,
            PatternSpec::Union(parts) => parts.iter().map(PatternSpec::edge_count).sum(),
            PatternSpec::Custom(g) => g.edge_count(),
        }
    }
}

/// Realizes a pattern family as a labeled graph. Union parts occupy
/// consecutive vertex blocks in listed order.
pub fn build_pattern(spec: &PatternSpec) -> Result<Graph, GraphError> {
    spec.validate()?;
    Ok(realize(spec))
}

fn realize(spec: &PatternSpec) -> Graph {
    match spec {
        PatternSpec::Path(k) => Graph {
            n: k + 1,
            edges: (0..*k).map(|i| (i, i + 1)).collect(),
        },
        PatternSpec::Cycle(k) => {
            let mut edges: Vec<_> = (0..k - 1).map(|i| (i, i + 1)).collect();
            edges.push((0, k - 1));
            edges.sort_unstable();
            Graph { n: *k, edges }
        }
        PatternSpec::Matching(t) => Graph {
            n: 2 * t,
            edges: (0..*t).map(|i| (2 * i, 2 * i + 1)).collect(),
        },
        PatternSpec::TriplePath(k) => Graph {
            n: 3 * k,
            edges: (0..*k)
                .flat_map(|i| [(3 * i, 3 * i + 1), (3 * i + 1, 3 * i + 2)])
                .collect(),
        },
        PatternSpec::Union(parts) => parts
            .iter()
            .fold(Graph::empty(0), |acc, p| acc.disjoint_union(&realize(p))),
        PatternSpec::Custom(g) => g.clone(),
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternSpec::Path(k) => write!(f, "P{}", k + 1),
            PatternSpec::Cycle(k) => write!(f, "C{k}"),
            PatternSpec::Matching(t) => write!(f, "{t}P2"),
            PatternSpec::TriplePath(k) => write!(f, "{k}P3"),
            PatternSpec::Union(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            PatternSpec::Custom(g) => write!(f, "custom(n={},m={})", g.vertex_count(), g.edge_count()),
        }
    }
}

/// Parses the family mini-grammar: terms `[count]P<vertices>` or
/// `[count]C<length>` joined by `+`, e.g. `P5`, `C4`, `3P2`, `C3+2P2`.
impl FromStr for PatternSpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: String| GraphError::InvalidPattern(msg);
        let mut parts = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let pos = term
                .find(['P', 'C', 'p', 'c'])
                .ok_or_else(|| bad(format!("term {term:?} has no P or C")))?;
            let (count_str, rest) = term.split_at(pos);
            let count: usize = if count_str.is_empty() {
                1
            } else {
                count_str
                    .parse()
                    .map_err(|_| bad(format!("bad multiplicity in {term:?}")))?
            };
            let size: usize = rest[1..].parse().map_err(|_| bad(format!("bad size in {term:?}")))?;
            if count == 0 {
                return Err(bad(format!("zero multiplicity in {term:?}")));
            }
            let cycle = rest.starts_with(['C', 'c']);
            let explicit = !count_str.is_empty();
            let spec = match (cycle, size) {
                (true, k) if k < 3 => return Err(bad(format!("cycle length {k} < 3"))),
                (true, k) => PatternSpec::Cycle(k),
                (false, v) if v < 2 => return Err(bad(format!("path needs at least two vertices in {term:?}"))),
                (false, 2) if explicit => PatternSpec::Matching(count),
                (false, 3) if explicit => PatternSpec::TriplePath(count),
                (false, v) => PatternSpec::Path(v - 1),
            };
            let repeated = matches!(spec, PatternSpec::Matching(_) | PatternSpec::TriplePath(_));
            if repeated || count == 1 {
                parts.push(spec);
            } else {
                parts.extend(std::iter::repeat_n(spec, count));
            }
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            PatternSpec::Union(parts)
        })
    }
}

/// Injective map from pattern vertices to host vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.map.iter().all(|v| seen.insert(*v))
    }
}

/// Parses the edge-list format: a header `n m`, then `m` lines `u v`.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines.next().ok_or(GraphError::Malformed {
        line: 1,
        msg: "missing header".into(),
    })?;
    let [n, m] = parse_fields::<2>(header, hl + 1)?;
    let mut edges = Vec::with_capacity(m);
    for (idx, line) in lines {
        let [u, v] = parse_fields::<2>(line, idx + 1)?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(GraphError::Malformed {
            line: hl + 1,
            msg: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, edges)
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n, g.edges.len());
    for &(u, v) in &g.edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub(crate) fn parse_fields<const K: usize>(line: &str, lineno: usize) -> Result<[usize; K], GraphError> {
    let mut out = [0usize; K];
    let mut it = line.split_whitespace();
    for slot in out.iter_mut() {
        let tok = it.next().ok_or_else(|| GraphError::Malformed {
            line: lineno,
            msg: format!("expected {K} integers, got {line:?}"),
        })?;
        *slot = tok.parse().map_err(|_| GraphError::Malformed {
            line: lineno,
            msg: format!("not a nonnegative integer: {tok:?}"),
        })?;
    }
    if it.next().is_some() {
        return Err(GraphError::Malformed {
            line: lineno,
            msg: format!("trailing fields in {line:?}"),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_basic_patterns() {
        let p3 = build_pattern(&PatternSpec::Path(2)).unwrap();
        assert_eq!(p3.vertex_count(), 3);
        assert_eq!(p3.edges(), &[(0, 1), (1, 2)]);

        let m3 = build_pattern(&PatternSpec::Matching(3)).unwrap();
        assert_eq!(m3.vertex_count(), 6);
        assert_eq!(m3.edges(), &[(0, 1), (2, 3), (4, 5)]);

        let u = build_pattern(&PatternSpec::Union(vec![
            PatternSpec::Cycle(3),
            PatternSpec::Matching(2),
        ]))
        .unwrap();
        assert_eq!(u.vertex_count(), 7);
        assert_eq!(u.edge_count(), 5);
        assert!(u.has_edge(0, 1) && u.has_edge(1, 2) && u.has_edge(0, 2));
        assert_eq!(&u.edges()[3..], &[(3, 4), (5, 6)]);
    }

    #[test]
    fn pattern_parameter_errors() {
        assert!(build_pattern(&PatternSpec::Cycle(2)).is_err());
        assert!(build_pattern(&PatternSpec::Path(0)).is_err());
        assert!(build_pattern(&PatternSpec::Matching(0)).is_err());
        assert!(build_pattern(&PatternSpec::TriplePath(0)).is_err());
        assert!(build_pattern(&PatternSpec::Union(vec![PatternSpec::Path(1), PatternSpec::Cycle(1)])).is_err());
    }

    #[test]
    fn degrees() {
        let p3 = build_pattern(&PatternSpec::Path(2)).unwrap();
        assert_eq!(degree_profile(&p3), vec![1, 2, 1]);
        let c4 = build_pattern(&PatternSpec::Cycle(4)).unwrap();
        assert_eq!(degree_profile(&c4), vec![2, 2, 2, 2]);
        assert_eq!(degree_profile(&Graph::empty(3)), vec![0, 0, 0]);
    }

    #[test]
    fn edge_list_text() {
        let g = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g, build_pattern(&PatternSpec::Path(2)).unwrap());
        assert_eq!(serialize_graph(&g), "3 2\n0 1\n1 2\n");
        assert_eq!(parse_graph("2 1\n0 0\n"), Err(GraphError::Loop(0)));
        assert!(matches!(
            parse_graph("2 1\n0 2\n"),
            Err(GraphError::EndpointOutOfRange { .. })
        ));
        assert_eq!(parse_graph("3 2\n0 1\n1 0\n"), Err(GraphError::DuplicateEdge(0, 1)));
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(GraphError::Malformed { .. })));
        assert!(matches!(
            parse_graph("3 1\n0 x\n"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(parse_graph(""), Err(GraphError::Malformed { .. })));
    }

    #[test]
    fn family_grammar() {
        assert_eq!("P5".parse::<PatternSpec>().unwrap(), PatternSpec::Path(4));
        assert_eq!("C4".parse::<PatternSpec>().unwrap(), PatternSpec::Cycle(4));
        assert_eq!("3P2".parse::<PatternSpec>().unwrap(), PatternSpec::Matching(3));
        assert_eq!("2P3".parse::<PatternSpec>().unwrap(), PatternSpec::TriplePath(2));
        assert_eq!(
            "C3+2P2".parse::<PatternSpec>().unwrap(),
            PatternSpec::Union(vec![PatternSpec::Cycle(3), PatternSpec::Matching(2)])
        );
        assert_eq!(
            "2C3".parse::<PatternSpec>().unwrap(),
            PatternSpec::Union(vec![PatternSpec::Cycle(3), PatternSpec::Cycle(3)])
        );
        for bad in ["", "X3", "C2", "P1", "0P2", "P", "3P2+"] {
            assert!(bad.parse::<PatternSpec>().is_err(), "{bad:?} should not parse");
        }
        for s in ["P5", "C4", "3P2", "2P3", "C3+2P2", "P4+1P2+2P3"] {
            assert_eq!(s.parse::<PatternSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn spec_counts_match_realization() {
        let spec: PatternSpec = "P4+2P2+C5+3P3".parse().unwrap();
        let g = build_pattern(&spec).unwrap();
        assert_eq!(spec.vertex_count(), g.vertex_count());
        assert_eq!(spec.edge_count(), g.edge_count());
    }
}
