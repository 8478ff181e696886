//! Weighted digraphs, edge-list parsing and the undirected Laplacian.
//!
//! The adjacency convention follows the usual GSP one: `A[(j, i)]` holds the
//! weight of the edge from node `i` to node `j`.

use std::collections::{HashMap, VecDeque};
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, GraphError, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub weight: f64,
}

impl Edge {
    pub fn new(src: usize, dst: usize, weight: f64) -> Self {
        Self { src, dst, weight }
    }
}

/// A validated weighted digraph: no self loops, nonnegative weights, no
/// repeated ordered pairs and a connected undirected version.
#[derive(Debug, Clone, PartialEq)]
pub struct Digraph {
    n: usize,
    edges: Vec<Edge>,
}

impl Digraph {
    /// Validates and builds a digraph. Errors report the 1-based position of
    /// the offending edge in `edges` as the line.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let lines: Vec<usize> = (1..=edges.len()).collect();
        Self::validated(n, edges, &lines)
    }

    fn validated(n: usize, edges: Vec<Edge>, lines: &[usize]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut seen: HashMap<(usize, usize), usize> = HashMap::with_capacity(edges.len());
        for (e, &line) in edges.iter().zip(lines) {
            if e.src >= n || e.dst >= n {
                return Err(GraphError::MalformedLine {
                    line,
                    reason: format!("node id {} out of range for n = {n}", e.src.max(e.dst)),
                });
            }
            if e.src == e.dst {
                return Err(GraphError::SelfLoop { line, node: e.src });
            }
            if !(e.weight.is_finite() && e.weight >= 0.0) {
                return Err(GraphError::NegativeWeight {
                    line,
                    weight: e.weight,
                });
            }
            if let Some(&first) = seen.get(&(e.src, e.dst)) {
                return Err(GraphError::DuplicateEdge {
                    line,
                    first,
                    src: e.src,
                    dst: e.dst,
                });
            }
            seen.insert((e.src, e.dst), line);
        }
        let g = Self { n, edges };
        if let Some(node) = g.first_unreachable() {
            return Err(GraphError::Disconnected { node });
        }
        Ok(g)
    }

    /// Breadth-first search from node 0 over positive-weight edges, ignoring
    /// direction.
    fn first_unreachable(&self) -> Option<usize> {
        let mut nbrs = vec![Vec::new(); self.n];
        for e in self.edges.iter().filter(|e| e.weight > 0.0) {
            nbrs[e.src].push(e.dst);
            nbrs[e.dst].push(e.src);
        }
        let mut visited = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        visited[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &nbrs[u] {
                if !visited[v] {
                    visited[v] = true;
                    queue.push_back(v);
                }
            }
        }
        visited.iter().position(|&v| !v)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Dense adjacency with `A[(dst, src)] = weight`.
    pub fn adjacency(&self) -> Matrix {
        let mut a = Matrix::zeros(self.n, self.n);
        for e in &self.edges {
            a[(e.dst, e.src)] = e.weight;
        }
        a
    }

    /// True iff `A[(i, j)] == A[(j, i)]` for every pair.
    pub fn is_symmetric(&self) -> bool {
        self.adjacency().is_symmetric(0.0)
    }

    /// Same graph with every edge direction flipped.
    pub fn reversed(&self) -> Self {
        Self {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| Edge::new(e.dst, e.src, e.weight))
                .collect(),
        }
    }

    /// Serializes to the edge-list format accepted by [`parse_digraph`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e.src, e.dst, e.weight));
        }
        out
    }

    pub fn undirected_view(&self) -> UndirectedView {
        UndirectedView::new(self)
    }
}

impl FromStr for Digraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        parse_digraph(s)
    }
}

/// Parses the edge-list text format.
///
/// ```text
/// # comment
/// n 3          optional node count, first non-comment line only
/// 0 1 0.5      src dst [weight], weight defaults to 1.0
/// 1 2
/// ```
pub fn parse_digraph(text: &str) -> Result<Digraph, GraphError> {
    let mut declared_n = None;
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    let mut first = true;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let malformed = |reason: &str| GraphError::MalformedLine {
            line,
            reason: reason.to_string(),
        };
        if fields[0] == "n" {
            if !first {
                return Err(malformed("node count header must be the first entry"));
            }
            first = false;
            if fields.len() != 2 {
                return Err(malformed("expected `n <count>`"));
            }
            let n = fields[1]
                .parse::<usize>()
                .map_err(|_| malformed("node count is not a nonnegative integer"))?;
            declared_n = Some(n);
            continue;
        }
        first = false;
        if !(2..=3).contains(&fields.len()) {
            return Err(malformed("expected `<src> <dst> [weight]`"));
        }
        let node = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| malformed(&format!("`{s}` is not a node id")))
        };
        let src = node(fields[0])?;
        let dst = node(fields[1])?;
        let weight = match fields.get(2) {
            Some(w) => w
                .parse::<f64>()
                .map_err(|_| malformed(&format!("`{w}` is not a number")))?,
            None => 1.0,
        };
        edges.push(Edge::new(src, dst, weight));
        lines.push(line);
    }

    let n = match declared_n {
        Some(n) => n,
        None => edges
            .iter()
            .map(|e| e.src.max(e.dst) + 1)
            .max()
            .ok_or(GraphError::Empty)?,
    };
    Digraph::validated(n, edges, &lines)
}

/// Undirected version of a digraph: `A^u[(i, j)] = max(A[(i, j)], A[(j, i)])`,
/// its degree vector and Laplacian `L = D − A^u`.
#[derive(Debug, Clone, PartialEq)]
pub struct UndirectedView {
    pub adjacency: Matrix,
    pub degree: Vec<f64>,
    pub laplacian: Matrix,
}

impl UndirectedView {
    pub fn new(g: &Digraph) -> Self {
        let n = g.node_count();
        let mut a_u = Matrix::zeros(n, n);
        for e in g.edges() {
            let w = a_u[(e.src, e.dst)].max(e.weight);
            a_u[(e.src, e.dst)] = w;
            a_u[(e.dst, e.src)] = w;
        }
        let degree: Vec<f64> = (0..n).map(|i| a_u.row(i).iter().sum()).collect();
        let mut laplacian = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                laplacian[(i, j)] = if i == j { degree[i] } else { -a_u[(i, j)] };
            }
        }
        Self {
            adjacency: a_u,
            degree,
            laplacian,
        }
    }

    pub fn node_count(&self) -> usize {
        self.degree.len()
    }
}

/// A real value per node.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphSignal(pub Vec<f64>);

impl GraphSignal {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn constant(n: usize, value: f64) -> Self {
        Self(vec![value; n])
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        check_len(expected, self.0.len())
    }
}

impl Deref for GraphSignal {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for GraphSignal {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
