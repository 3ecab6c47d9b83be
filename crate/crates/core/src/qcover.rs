//! `q_j(G)`: the fewest vertices incident with all but at most `j` edges.

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{build_pattern, Graph, PatternSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QError {
    #[error("q-cover search supports at most 64 vertices, got {0}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QResult {
    pub j: usize,
    pub value: usize,
    /// Lexicographically smallest optimal vertex set, ascending.
    pub witness: Vec<usize>,
}

/// Above this many candidate sets of one size, switch from plain
/// combination enumeration to the pruned search.
const ENUMERATION_LIMIT: u64 = 2_000_000;

fn mask(vs: &[usize]) -> u64 {
    vs.iter().fold(0, |m, &v| m | 1u64 << v)
}

/// Edges of `g` with neither endpoint in `chosen`.
fn uncovered(g: &Graph, chosen: u64) -> usize {
    g.edges()
        .iter()
        .filter(|&&(u, v)| chosen & (1u64 << u | 1u64 << v) == 0)
        .count()
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

/// Exact `q_j(g)` by ascending-size search; the witness is the
/// lexicographically smallest optimal set.
pub fn q_cover(g: &Graph, j: usize) -> Result<QResult, QError> {
    if g.vertex_count() > 64 {
        return Err(QError::TooLarge(g.vertex_count()));
    }
    let m = g.edge_count();
    if j >= m {
        return Ok(QResult {
            j,
            value: 0,
            witness: Vec::new(),
        });
    }
    let deg = crate::graph::degree_profile(g);
    // isolated vertices cover nothing
    let candidates: Vec<usize> = (0..g.vertex_count()).filter(|&v| deg[v] > 0).collect();
    let need = m - j;
    let mut sorted_deg: Vec<usize> = candidates.iter().map(|&v| deg[v]).collect();
    sorted_deg.sort_unstable_by(|a, b| b.cmp(a));
    // size k can only work if the k largest degrees reach `need`
    let mut start = 0;
    let mut acc = 0;
    while acc < need {
        acc += sorted_deg[start];
        start += 1;
    }
    for size in start..=candidates.len() {
        let found = if binomial(candidates.len(), size) <= ENUMERATION_LIMIT {
            candidates
                .iter()
                .copied()
                .combinations(size)
                .find(|set| uncovered(g, mask(set)) <= j)
        } else {
            PrunedSearch::new(g, &candidates, j).first_of_size(size)
        };
        if let Some(witness) = found {
            return Ok(QResult {
                j,
                value: size,
                witness,
            });
        }
    }
    unreachable!("all non-isolated vertices cover every edge")
}

/// Include-first depth-first search over candidates in ascending order, which
/// visits sets of a fixed size in lexicographic order. Prunes with the
/// degree-sum bound on the residual graph.
struct PrunedSearch<'a> {
    g: &'a Graph,
    candidates: &'a [usize],
    j: usize,
    adj: Vec<u64>,
}

impl<'a> PrunedSearch<'a> {
    fn new(g: &'a Graph, candidates: &'a [usize], j: usize) -> Self {
        let mut adj = vec![0u64; g.vertex_count()];
        for &(u, v) in g.edges() {
            adj[u] |= 1u64 << v;
            adj[v] |= 1u64 << u;
        }
        PrunedSearch { g, candidates, j, adj }
    }

    fn first_of_size(&self, size: usize) -> Option<Vec<usize>> {
        let mut chosen = Vec::with_capacity(size);
        self.dfs(0, 0, 0, size, &mut chosen).then_some(chosen)
    }

    /// `excluded` holds decided-out vertices; `in_mask` the chosen ones.
    fn dfs(&self, idx: usize, in_mask: u64, excluded: u64, size: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == size {
            return uncovered(self.g, in_mask) <= self.j;
        }
        // edges between excluded vertices stay uncovered for good
        let dead = self
            .g
            .edges()
            .iter()
            .filter(|&&(u, v)| excluded & (1u64 << u) != 0 && excluded & (1u64 << v) != 0)
            .count();
        if dead > self.j || idx == self.candidates.len() {
            return false;
        }
        let slots = size - chosen.len();
        if self.candidates.len() - idx < slots {
            return false;
        }
        let open = uncovered(self.g, in_mask);
        if open > self.j {
            let mut residual: Vec<u32> = self.candidates[idx..]
                .iter()
                .map(|&v| (self.adj[v] & !in_mask).count_ones())
                .collect();
            residual.sort_unstable_by(|a, b| b.cmp(a));
            let reach: usize = residual.iter().take(slots).map(|&d| d as usize).sum();
            if reach < open - self.j {
                return false;
            }
        }
        let v = self.candidates[idx];
        chosen.push(v);
        if self.dfs(idx + 1, in_mask | 1u64 << v, excluded, size, chosen) {
            return true;
        }
        chosen.pop();
        self.dfs(idx + 1, in_mask, excluded | 1u64 << v, size, chosen)
    }
}

/// Whether `C(|V| - r, 2) <= s`, in which case `q_s(g) <= r` for free.
pub fn obs_q_bound(g: &Graph, r: usize, s: usize) -> bool {
    let rest = g.vertex_count().saturating_sub(r);
    rest * rest.saturating_sub(1) / 2 <= s
}

/// Evaluates `min_{0 <= i <= min(s, t - t2)} (t - t2) - i + q_{s-i}(L + t2 P2)`,
/// which equals `q_s(L + t P2)`.
pub fn q_union_reduction(l: &Graph, t: usize, t2: usize, s: usize) -> Result<usize, QError> {
    assert!(t2 <= t, "t2 = {t2} exceeds t = {t}");
    let base = with_matching(l, t2);
    let extra = t - t2;
    (0..=s.min(extra))
        .map(|i| q_cover(&base, s - i).map(|q| extra - i + q.value))
        .try_fold(usize::MAX, |best, q| q.map(|q| best.min(q)))
}

/// `l` followed by `t` disjoint edges on fresh vertices.
pub fn with_matching(l: &Graph, t: usize) -> Graph {
    if t == 0 {
        l.clone()
    } else {
        l.disjoint_union(&build_pattern(&PatternSpec::Matching(t)).expect("t >= 1"))
    }
}
