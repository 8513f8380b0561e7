//! Checkers written from the definitions alone, plus brute-force oracles.
//!
//! Nothing here calls into the solvers' detectors. Every checker accepts
//! partial assignments and inspects only the filled slots.

mod enumerate;
mod feasibility;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monoid::PartialAssignment;
use crate::problems::{ChoiceSystem, Graph, ProblemError, ProblemSpec, BLUE, RED};

pub use enumerate::{exact_event_enumeration, MAX_OUTCOMES};
pub use feasibility::{exhaustive_feasibility, DEFAULT_FEASIBILITY_GUARD};

/// Default vertex limit for exhaustive path enumeration.
pub const MAX_PATH_SEARCH_VERTICES: usize = 30;
/// Node budget for the clique search.
pub const CLIQUE_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ValidationError {
    #[error("{what} of size {size} exceeds the limit {limit}")]
    TooLarge { what: &'static str, size: u128, limit: u128 },
    #[error("coloring leaves slot {0} uncolored")]
    IncompleteColoring(usize),
    #[error("probabilities sum to {0}, not 1")]
    InvalidDistribution(f64),
    #[error("expected {expected} slots, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

/// A violated constraint, in the problem's own terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    OutOfDomain { slot: usize, value: u32 },
    /// Positions `start .. start + half` repeat at `start + half`.
    Repetition { start: usize, half: usize },
    MonochromaticEdge { u: usize, v: usize },
    RepetitivePath { path: Vec<usize> },
    AdjacentSameColor { edges: [usize; 2] },
    /// Edges colored `colors[0]` or `colors[1]` contain a cycle through
    /// `closing_edge`.
    BichromaticCycle { colors: [u32; 2], closing_edge: usize },
    BlueTriangle { vertices: [usize; 3] },
    RedClique { vertices: Vec<usize> },
    ForbiddenChoice { index: usize },
}

/// First `(start, half)` with `s[start + i] == s[start + half + i]` for all
/// `i < half`, scanning `start` then `half` upward. Positions count from 0.
pub fn check_nonrepetitive_sequence(s: &[u32]) -> Option<(usize, usize)> {
    let n = s.len();
    (0..n).find_map(|start| {
        (1..=(n - start) / 2)
            .find(|&half| (0..half).all(|i| s[start + i] == s[start + half + i]))
            .map(|half| (start, half))
    })
}

/// An edge whose endpoints are both colored the same.
pub fn check_proper_coloring(g: &Graph, coloring: &[Option<u32>]) -> Option<(usize, usize)> {
    g.edges()
        .iter()
        .copied()
        .find(|&(a, b)| coloring[a].is_some() && coloring[a] == coloring[b])
}

/// First repetitively colored path found by exhaustive search over simple
/// paths of colored vertices, for graphs with at most `max_vertices`
/// vertices.
pub fn check_nonrepetitive_coloring_with_guard(
    g: &Graph,
    coloring: &[Option<u32>],
    max_vertices: usize,
) -> Result<Option<Vec<usize>>, ValidationError> {
    if g.n() > max_vertices {
        return Err(ValidationError::TooLarge { what: "graph", size: g.n() as u128, limit: max_vertices as u128 });
    }
    fn extend(g: &Graph, coloring: &[Option<u32>], path: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let len = path.len();
        if len % 2 == 0 {
            let t = len / 2;
            if (0..t).all(|i| coloring[path[i]] == coloring[path[t + i]]) {
                return true;
            }
        }
        let tip = path[len - 1];
        for w in g.neighbors(tip) {
            if !used[w] && coloring[w].is_some() {
                used[w] = true;
                path.push(w);
                if extend(g, coloring, path, used) {
                    return true;
                }
                path.pop();
                used[w] = false;
            }
        }
        false
    }
    let mut used = vec![false; g.n()];
    for start in 0..g.n() {
        if coloring[start].is_none() {
            continue;
        }
        let mut path = vec![start];
        used[start] = true;
        if extend(g, coloring, &mut path, &mut used) {
            return Ok(Some(path));
        }
        used[start] = false;
    }
    Ok(None)
}

pub fn check_nonrepetitive_coloring(
    g: &Graph,
    coloring: &[Option<u32>],
) -> Result<Option<Vec<usize>>, ValidationError> {
    check_nonrepetitive_coloring_with_guard(g, coloring, MAX_PATH_SEARCH_VERTICES)
}

/// Proper-conflict or two-colored cycle among the colored edges: adjacent
/// equal colors first, then a union-find forest test per color pair.
pub fn check_acyclic_partial(g: &Graph, coloring: &[Option<u32>]) -> Option<Violation> {
    for v in 0..g.n() {
        let mut seen: Vec<(u32, usize)> = g
            .incident(v)
            .iter()
            .filter_map(|&(_, id)| coloring[id].map(|c| (c, id)))
            .collect();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0].0 == w[1].0) {
            return Some(Violation::AdjacentSameColor { edges: [w[0].1.min(w[1].1), w[0].1.max(w[1].1)] });
        }
    }
    let top = coloring.iter().flatten().copied().max()?;
    let mut by_color = vec![Vec::new(); top as usize + 1];
    for (id, c) in coloring.iter().enumerate() {
        if let Some(c) = c {
            by_color[*c as usize].push(id);
        }
    }
    for a in 0..=top {
        for b in a + 1..=top {
            let mut uf = UnionFind::<usize>::new(g.n());
            let mut edges: Vec<usize> = by_color[a as usize].iter().chain(&by_color[b as usize]).copied().collect();
            edges.sort_unstable();
            for id in edges {
                let (x, y) = g.edge(id);
                if !uf.union(x, y) {
                    return Some(Violation::BichromaticCycle { colors: [a, b], closing_edge: id });
                }
            }
        }
    }
    None
}

/// [`check_acyclic_partial`] for a total coloring.
pub fn check_acyclic_edge_coloring(g: &Graph, coloring: &[Option<u32>]) -> Result<Option<Violation>, ValidationError> {
    if coloring.len() != g.num_edges() {
        return Err(ValidationError::LengthMismatch { expected: g.num_edges(), got: coloring.len() });
    }
    if let Some(e) = coloring.iter().position(Option::is_none) {
        return Err(ValidationError::IncompleteColoring(e));
    }
    Ok(check_acyclic_partial(g, coloring))
}

/// A blue triangle or a red `K_k` in a coloring of the edges of `K_n`
/// listed lexicographically. Uncolored edges belong to neither color.
pub fn check_ramsey_witness(n: usize, k: usize, coloring: &[Option<u32>]) -> Result<Option<Violation>, ValidationError> {
    let expected = n * n.saturating_sub(1) / 2;
    if coloring.len() != expected {
        return Err(ValidationError::LengthMismatch { expected, got: coloring.len() });
    }
    let mut color = vec![vec![None; n]; n];
    let mut id = 0;
    for a in 0..n {
        for b in a + 1..n {
            color[a][b] = coloring[id];
            color[b][a] = coloring[id];
            id += 1;
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if color[a][b] != Some(BLUE) {
                continue;
            }
            for c in b + 1..n {
                if color[a][c] == Some(BLUE) && color[b][c] == Some(BLUE) {
                    return Ok(Some(Violation::BlueTriangle { vertices: [a, b, c] }));
                }
            }
        }
    }
    let red: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| color[a][b] == Some(RED)).collect()).collect();
    Ok(find_clique(&red, k, CLIQUE_NODE_BUDGET)?.map(|vertices| Violation::RedClique { vertices }))
}

/// A clique of size `k` in the graph given by `adj`, by Bron–Kerbosch with
/// pivoting; returns its `k` smallest vertices.
fn find_clique(adj: &[Vec<bool>], k: usize, budget: u64) -> Result<Option<Vec<usize>>, ValidationError> {
    struct Bk<'a> {
        adj: &'a [Vec<bool>],
        k: usize,
        nodes: u64,
        budget: u64,
    }
    impl Bk<'_> {
        fn expand(&mut self, r: &mut Vec<usize>, p: Vec<usize>, mut x: Vec<usize>) -> Result<Option<Vec<usize>>, ValidationError> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(ValidationError::TooLarge { what: "clique search", size: self.nodes as u128, limit: self.budget as u128 });
            }
            if r.len() >= self.k {
                let mut found = r.clone();
                found.sort_unstable();
                found.truncate(self.k);
                return Ok(Some(found));
            }
            if r.len() + p.len() < self.k {
                return Ok(None);
            }
            let pivot = p
                .iter()
                .chain(&x)
                .copied()
                .max_by_key(|&u| p.iter().filter(|&&v| self.adj[u][v]).count())
                .expect("p is non-empty here");
            let mut p = p;
            let branch: Vec<usize> = p.iter().copied().filter(|&v| !self.adj[pivot][v]).collect();
            for v in branch {
                let np = p.iter().copied().filter(|&w| self.adj[v][w]).collect();
                let nx = x.iter().copied().filter(|&w| self.adj[v][w]).collect();
                r.push(v);
                if let Some(found) = self.expand(r, np, nx)? {
                    return Ok(Some(found));
                }
                r.pop();
                p.retain(|&w| w != v);
                x.push(v);
            }
            Ok(None)
        }
    }
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut bk = Bk { adj, k, nodes: 0, budget };
    bk.expand(&mut Vec::new(), (0..adj.len()).collect(), Vec::new())
}

/// Index of a forbidden choice all of whose blocks picked the listed
/// element.
pub fn check_choice_function(system: &ChoiceSystem, choice: &[Option<u32>]) -> Option<usize> {
    system
        .forbidden
        .iter()
        .position(|pj| pj.iter().all(|&(k, i)| choice[k] == Some(i)))
}

fn domain_violation(spec: &ProblemSpec, values: &[Option<u32>]) -> Option<Violation> {
    let ok = |slot: usize, v: u32| match spec {
        ProblemSpec::Proper { colors, .. }
        | ProblemSpec::NonrepColor { colors, .. }
        | ProblemSpec::Acyclic { colors, .. } => v < *colors,
        ProblemSpec::NonrepSeq { lists } => lists.lists[slot].contains(&v),
        ProblemSpec::Ramsey { .. } => v == RED || v == BLUE,
        ProblemSpec::Choice { system } => (v as usize) < system.marginals[slot].len(),
    };
    values
        .iter()
        .enumerate()
        .find_map(|(slot, v)| v.filter(|&v| !ok(slot, v)).map(|value| Violation::OutOfDomain { slot, value }))
}

/// Number of slots an assignment for `spec` has.
pub fn slot_count(spec: &ProblemSpec) -> usize {
    match spec {
        ProblemSpec::Proper { graph, .. } | ProblemSpec::NonrepColor { graph, .. } => graph.n(),
        ProblemSpec::Acyclic { graph, .. } => graph.num_edges(),
        ProblemSpec::NonrepSeq { lists } => lists.lists.len(),
        ProblemSpec::Ramsey { n, .. } => n * n.saturating_sub(1) / 2,
        ProblemSpec::Choice { system } => system.marginals.len(),
    }
}

/// First violation among the filled slots of `state`.
///
/// For sequences every maximal run of filled positions is checked on its
/// own.
pub fn validate_assignment(spec: &ProblemSpec, state: &PartialAssignment) -> Result<Option<Violation>, ValidationError> {
    let values = state.values();
    let expected = slot_count(spec);
    if values.len() != expected {
        return Err(ValidationError::LengthMismatch { expected, got: values.len() });
    }
    if let Some(v) = domain_violation(spec, values) {
        return Ok(Some(v));
    }
    Ok(match spec {
        ProblemSpec::Proper { graph, .. } => {
            check_proper_coloring(graph, values).map(|(u, v)| Violation::MonochromaticEdge { u, v })
        }
        ProblemSpec::NonrepSeq { .. } => {
            let mut start = 0;
            let mut found = None;
            for run in values.split(Option::is_none) {
                let seq: Vec<u32> = run.iter().flatten().copied().collect();
                if let Some((s, half)) = check_nonrepetitive_sequence(&seq) {
                    found = Some(Violation::Repetition { start: start + s, half });
                    break;
                }
                start += run.len() + 1;
            }
            found
        }
        ProblemSpec::NonrepColor { graph, .. } => {
            check_nonrepetitive_coloring(graph, values)?.map(|path| Violation::RepetitivePath { path })
        }
        ProblemSpec::Acyclic { graph, .. } => check_acyclic_partial(graph, values),
        ProblemSpec::Ramsey { n, k, .. } => check_ramsey_witness(*n, *k, values)?,
        ProblemSpec::Choice { system } => {
            check_choice_function(system, values).map(|index| Violation::ForbiddenChoice { index })
        }
    })
}

/// [`validate_assignment`] for a finished solution, which must be total.
pub fn validate_solution(spec: &ProblemSpec, state: &PartialAssignment) -> Result<Option<Violation>, ValidationError> {
    if let Some(slot) = state.first_unfilled() {
        return Err(ValidationError::IncompleteColoring(slot));
    }
    validate_assignment(spec, state)
}
