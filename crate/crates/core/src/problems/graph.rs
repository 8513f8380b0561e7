//! Finite simple undirected graphs with edge ids.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::DrawRng;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: expected two vertex indices, got {text:?}")]
    Parse { line: usize, text: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0}-{1} appears twice")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("cannot build {0}")]
    Unrealizable(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Edges keep the order they were given in; edge `i` joins
/// `edges()[i].0 < edges()[i].1`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `(neighbour, edge id)` sorted by neighbour.
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges).finish()
    }
}

impl TryFrom<RawGraph> for Graph {
    type Error = GraphError;
    fn try_from(raw: RawGraph) -> Result<Self, Self::Error> {
        Graph::new(raw.n, raw.edges)
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph { n: g.n, edges: g.edges }
    }
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        let mut list = Vec::new();
        let mut adjacency = vec![Vec::new(); n];
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            let id = list.len();
            adjacency[e.0].push((e.1, id));
            adjacency[e.1].push((e.0, id));
            list.push(e);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Graph { n, edges: list, adjacency })
    }

    /// Whitespace-separated `u v` pairs, one per line, 0-indexed. Blank lines
    /// and lines starting with `#` are skipped. The vertex count is one more
    /// than the largest index.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let parse_err = || GraphError::Parse { line: i + 1, text: line.to_owned() };
            let mut parts = trimmed.split_whitespace();
            let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(parse_err());
            };
            let a: usize = a.parse().map_err(|_| parse_err())?;
            let b: usize = b.parse().map_err(|_| parse_err())?;
            edges.push((a, b));
        }
        let n = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        Graph::new(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        self.edges.iter().map(|(a, b)| format!("{a} {b}\n")).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    /// `(neighbour, edge id)` pairs in neighbour order.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let nbrs = &self.adjacency[a];
        nbrs.binary_search_by_key(&b, |&(w, _)| w).ok().map(|i| nbrs[i].1)
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::Unrealizable(format!("a cycle on {n} vertices")));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Edges in lexicographic order.
    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).expect("complete graph is simple")
    }

    /// Centre 0 joined to `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star is simple")
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).expect("Petersen graph is simple")
    }

    /// Uniform-ish `d`-regular graph by the pairing model with restarts.
    pub fn random_regular(n: usize, d: usize, rng: &mut DrawRng) -> Result<Self, GraphError> {
        if d >= n.max(1) || (n * d) % 2 == 1 {
            return Err(GraphError::Unrealizable(format!("a {d}-regular graph on {n} vertices")));
        }
        'attempt: for _ in 0..1000 {
            let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
            let mut seen = BTreeSet::new();
            let mut edges = Vec::with_capacity(n * d / 2);
            while !points.is_empty() {
                let i = rng.below(points.len() as u64) as usize;
                let a = points.swap_remove(i);
                let j = rng.below(points.len() as u64) as usize;
                let b = points.swap_remove(j);
                if a == b || !seen.insert((a.min(b), a.max(b))) {
                    continue 'attempt;
                }
                edges.push((a, b));
            }
            return Graph::new(n, edges);
        }
        Err(GraphError::Unrealizable(format!("a {d}-regular graph on {n} vertices after 1000 attempts")))
    }

    /// Random graph with maximum degree at most `max_degree` and at most
    /// `target_edges` edges, grown by rejecting edges that would exceed the
    /// degree cap.
    pub fn random_bounded_degree(n: usize, max_degree: usize, target_edges: usize, rng: &mut DrawRng) -> Self {
        let mut degree = vec![0usize; n];
        let mut seen = BTreeSet::new();
        let mut edges = Vec::new();
        let attempts = 20 * target_edges + 100;
        for _ in 0..attempts {
            if edges.len() >= target_edges || n < 2 {
                break;
            }
            let a = rng.below(n as u64) as usize;
            let b = rng.below(n as u64) as usize;
            if a == b || degree[a] >= max_degree || degree[b] >= max_degree {
                continue;
            }
            if seen.insert((a.min(b), a.max(b))) {
                degree[a] += 1;
                degree[b] += 1;
                edges.push((a, b));
            }
        }
        Graph::new(n, edges).expect("edges are distinct and loop-free")
    }

    /// Random tree on `n` vertices with maximum degree at most `max_degree`
    /// (at least 2): each new vertex attaches to a random vertex with spare
    /// degree.
    pub fn random_tree(n: usize, max_degree: usize, rng: &mut DrawRng) -> Self {
        let cap = max_degree.max(2);
        let mut degree = vec![0usize; n];
        let mut open: Vec<usize> = Vec::new();
        let mut edges = Vec::new();
        for v in 0..n {
            if v > 0 {
                let i = rng.below(open.len() as u64) as usize;
                let parent = open[i];
                edges.push((parent, v));
                degree[parent] += 1;
                degree[v] += 1;
                if degree[parent] == cap {
                    open.swap_remove(i);
                }
            }
            open.push(v);
        }
        Graph::new(n, edges).expect("tree is simple")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let g = Graph::parse_edge_list("# k3\n0 1\n1 2\n\n2 0\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Graph::parse_edge_list("0 1\n1 x\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse_edge_list("0 1 2\n"), Err(GraphError::Parse { .. })));
        assert_eq!(Graph::parse_edge_list("1 1\n"), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::parse_edge_list("0 1\n1 0\n"), Err(GraphError::DuplicateEdge(0, 1)));
    }

    #[test]
    fn json_rejects_bad_graphs() {
        let g: Graph = serde_json::from_str(r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(g.max_degree(), 2);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,5]]}"#).is_err());
    }

    #[test]
    fn families() {
        assert_eq!(Graph::complete(4).num_edges(), 6);
        assert_eq!(Graph::petersen().max_degree(), 3);
        assert!((0..10).all(|v| Graph::petersen().degree(v) == 3));
        assert_eq!(Graph::star(3).max_degree(), 3);
        assert_eq!(Graph::cycle(5).unwrap().num_edges(), 5);
        assert_eq!(Graph::complete(5).edge_between(3, 1), Some(5));
    }

    #[test]
    fn random_families_respect_bounds() {
        let mut rng = DrawRng::seed_from_u64(5);
        let g = Graph::random_regular(20, 3, &mut rng).unwrap();
        assert!((0..20).all(|v| g.degree(v) == 3));
        let h = Graph::random_bounded_degree(200, 5, 400, &mut rng);
        assert!(h.max_degree() <= 5);
        let t = Graph::random_tree(30, 3, &mut rng);
        assert_eq!(t.num_edges(), 29);
        assert!(t.max_degree() <= 3);
        assert!(Graph::random_regular(5, 3, &mut rng).is_err());
    }
}
