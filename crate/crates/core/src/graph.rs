//! Simple undirected graphs on vertices `1..=n`, their degree data and
//! Laplacian, plus the edge-list / DOT / JSON serializers.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{GraphError, ParseError};

/// A simple undirected graph with vertices labeled `1..=n`.
///
/// Edges are kept as sorted pairs `(u, v)` with `u < v`, and every vertex
/// carries a sorted neighbor list. Values are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range
    /// endpoints. Pairs may be given in either orientation.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut list = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x == 0 || x > n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unchecked(n, list))
    }

    /// `edges` must already be sorted, deduplicated and normalized.
    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &edges {
            neighbors[u - 1].push(v);
            neighbors[v - 1].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Graph { n, edges, neighbors }
    }

    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::new(n, [])
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        Self::new(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))))
    }

    /// Path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        Self::new(n, (1..n).map(|u| (u, u + 1)))
    }

    /// Cycle `1 - 2 - ... - n - 1`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::TooFewVertices { n, min: 3 });
        }
        Self::new(n, (1..=n).map(|u| (u, u % n + 1)))
    }

    /// Star with center 1 and leaves `2..=n`.
    pub fn star(n: usize) -> Result<Self, GraphError> {
        Self::new(n, (2..=n).map(|v| (1, v)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbors of vertex `v` (1-based).
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v - 1].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == 0 || u > self.n {
            return false;
        }
        self.neighbors[u - 1].binary_search(&v).is_ok()
    }

    /// Degrees indexed by vertex (position 0 is vertex 1).
    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::from_unsorted(self.degrees())
    }

    pub fn min_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * (self.n - 1) / 2
    }

    pub fn laplacian(&self) -> LaplacianMatrix {
        LaplacianMatrix::of(self)
    }

    /// Breadth-first traversal from vertex 1. A single vertex is connected.
    pub fn is_connected(&self) -> bool {
        self.reachable_from(1).iter().all(|&r| r)
    }

    pub(crate) fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([start]);
        seen[start - 1] = true;
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Deletes the given vertices and relabels survivors `1..` in ascending
    /// order of their original labels.
    pub fn remove_vertices(&self, drop: &[usize]) -> Result<Graph, GraphError> {
        let mut dropped = vec![false; self.n];
        for &v in drop {
            if v == 0 || v > self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
            dropped[v - 1] = true;
        }
        let mut relabel = vec![0; self.n];
        let mut next = 0;
        for (i, &d) in dropped.iter().enumerate() {
            if !d {
                next += 1;
                relabel[i] = next;
            }
        }
        if next == 0 {
            return Err(GraphError::RemovesAllVertices);
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| !dropped[u - 1] && !dropped[v - 1])
            .map(|&(u, v)| (relabel[u - 1], relabel[v - 1]))
            .collect();
        Ok(Graph::from_sorted_unchecked(next, edges))
    }

    /// Deletes the given edges; vertex labels are unchanged.
    pub fn remove_edges(&self, drop: &[(usize, usize)]) -> Graph {
        let mut gone: Vec<(usize, usize)> = drop.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        gone.sort_unstable();
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| gone.binary_search(e).is_err())
            .collect();
        Graph::from_sorted_unchecked(self.n, edges)
    }

    /// Parses the edge-list text format.
    pub fn read_edge_list(text: &str) -> Result<Graph, ParseError> {
        let mut lines = text.lines().enumerate();
        let header = loop {
            match lines.next() {
                Some((_, l)) if l.trim().is_empty() => continue,
                Some((_, l)) => break l,
                None => return Err(ParseError::MalformedHeader),
            }
        };
        let (n, m) = parse_pair(header).ok_or(ParseError::MalformedHeader)?;
        if n == 0 {
            return Err(ParseError::MalformedHeader);
        }
        let mut edges = Vec::with_capacity(m);
        let mut seen = std::collections::HashSet::with_capacity(m);
        for (idx, raw) in lines {
            let line = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let (a, b) = parse_pair(raw).ok_or(ParseError::MalformedEdge { line })?;
            for vertex in [a, b] {
                if vertex == 0 || vertex > n {
                    return Err(ParseError::VertexOutOfRange { line, vertex, n });
                }
            }
            if a == b {
                return Err(ParseError::SelfLoop { line, vertex: a });
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(ParseError::DuplicateEdge { line, u: e.0, v: e.1 });
            }
            edges.push(e);
        }
        if edges.len() != m {
            return Err(ParseError::EdgeCountMismatch { expected: m, found: edges.len() });
        }
        edges.sort_unstable();
        Ok(Graph::from_sorted_unchecked(n, edges))
    }

    /// `n m` header followed by one sorted `u v` line per edge, LF-terminated.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(8 * (self.m() + 1));
        writeln!(out, "{} {}", self.n, self.m()).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for v in 1..=self.n {
            writeln!(out, "  {v};").unwrap();
        }
        for &(u, v) in &self.edges {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let doc = GraphJson { n: self.n, m: self.m(), edges: self.edges.iter().map(|&(u, v)| [u, v]).collect() };
        serde_json::to_string(&doc).expect("graph json")
    }

    pub fn write(&self, format: Format) -> String {
        match format {
            Format::Edges => self.to_edge_list(),
            Format::Dot => self.to_dot(),
            Format::Json => {
                let mut s = self.to_json();
                s.push('\n');
                s
            }
        }
    }
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    m: usize,
    edges: Vec<[usize; 2]>,
}

/// Output formats understood by [`Graph::write`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Edges,
    Dot,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edges" => Ok(Format::Edges),
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected edges, dot or json)")),
        }
    }
}

/// Nonincreasing list of vertex degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    /// Returns `None` unless `degrees` is already nonincreasing.
    pub fn new(degrees: Vec<usize>) -> Option<Self> {
        degrees.windows(2).all(|w| w[0] >= w[1]).then_some(DegreeSequence(degrees))
    }

    pub fn from_unsorted(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence(degrees)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Integer Laplacian `L = D - A`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaplacianMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl LaplacianMatrix {
    fn of(g: &Graph) -> Self {
        let n = g.n();
        let mut entries = vec![0i64; n * n];
        for &(u, v) in g.edges() {
            let (i, j) = (u - 1, v - 1);
            entries[i * n + j] = -1;
            entries[j * n + i] = -1;
            entries[i * n + i] += 1;
            entries[j * n + j] += 1;
        }
        LaplacianMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|&x| x as f64).collect()
    }
}
