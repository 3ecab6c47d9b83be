//! Complete search for rainbow (multicoloured) copies of a pattern in an
//! edge-colored complete graph.
//!
//! Pattern vertices are placed one at a time in a connected order, largest
//! component first. Each placement checks that the new edges carry colors not
//! yet used. Automorphisms that the search can recognize structurally (edge
//! and path reversal, cycle rotation and reflection, swapping identical
//! components) are quotiented out with ordering constraints on the images,
//! which keeps failed searches, the expensive case, from revisiting the same
//! copy many times.

use std::collections::VecDeque;

use thiserror::Error;

use crate::coloring::{EdgeColoring, UNCOLORED};
use crate::graph::{Embedding, Graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RainbowError {
    #[error("pattern has {pattern} vertices but the host only {host}")]
    PatternTooLarge { pattern: usize, host: usize },
    #[error("rainbow search supports hosts with at most 64 vertices, got {0}")]
    HostTooLarge(usize),
}

/// Borrowed view of a (possibly partial) coloring as a dense matrix.
pub(crate) struct Host<'a> {
    pub n: usize,
    pub color: &'a [u32],
    pub num_colors: usize,
    /// Color degree of each vertex, when the coloring is complete.
    pub color_degree: Option<&'a [usize]>,
}

impl Host<'_> {
    #[inline]
    fn color(&self, u: usize, v: usize) -> u32 {
        self.color[u * self.n + v]
    }
}

#[derive(Debug, Clone)]
struct Component {
    /// vertices in placement order
    order: Vec<usize>,
    /// `(a, b)`: image of `a` must be below image of `b`
    internal: Vec<(usize, usize)>,
    /// edge list relabeled by placement position; equal keys mean the
    /// position correspondence is an isomorphism
    key: Vec<(usize, usize)>,
    edge_count: usize,
}

fn components(g: &Graph, adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] || adj[s].is_empty() {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            for &w in &adj[comp[i]] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Breadth-first order from `seeds`, neighbors in ascending id.
fn bfs_order(adj: &[Vec<usize>], seeds: &[usize], members: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = seeds.to_vec();
    let mut queue: VecDeque<usize> = seeds.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !order.contains(&w) && members.contains(&w) {
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    order
}

fn walk(adj: &[Vec<usize>], start: usize, next: usize, len: usize) -> Vec<usize> {
    let mut order = vec![start, next];
    while order.len() < len {
        let (prev, cur) = (order[order.len() - 2], order[order.len() - 1]);
        let step = adj[cur].iter().copied().find(|&w| w != prev && !order.contains(&w));
        match step {
            Some(w) => order.push(w),
            None => break,
        }
    }
    order
}

fn analyze(members: &[usize], adj: &[Vec<usize>]) -> Component {
    let edge_count = members.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    let max_deg = members.iter().map(|&v| adj[v].len()).max().unwrap_or(0);
    let size = members.len();
    let (order, internal) = if max_deg <= 2 && edge_count + 1 == size {
        let start = *members
            .iter()
            .find(|&&v| adj[v].len() == 1)
            .expect("paths have endpoints");
        let order = if size == 2 {
            vec![start, adj[start][0]]
        } else {
            walk(adj, start, adj[start][0], size)
        };
        let internal = vec![(order[0], order[size - 1])];
        (order, internal)
    } else if max_deg == 2 && edge_count == size {
        let start = members[0];
        let order = walk(adj, start, adj[start][0], size);
        let mut internal: Vec<(usize, usize)> = order[1..].iter().map(|&v| (start, v)).collect();
        internal.push((order[1], order[size - 1]));
        (order, internal)
    } else {
        let hub = *members
            .iter()
            .max_by_key(|&&v| (adj[v].len(), std::cmp::Reverse(v)))
            .unwrap();
        (bfs_order(adj, &[hub], members), Vec::new())
    };
    let pos = |v: usize| order.iter().position(|&x| x == v).unwrap();
    let mut key: Vec<(usize, usize)> = members
        .iter()
        .flat_map(|&v| adj[v].iter().filter(move |&&w| v < w).map(move |&w| (v, w)))
        .map(|(v, w)| (pos(v).min(pos(w)), pos(v).max(pos(w))))
        .collect();
    key.sort_unstable();
    Component {
        order,
        internal,
        key,
        edge_count,
    }
}

/// Precomputed placement order and per-position checks.
#[derive(Debug, Clone)]
struct Plan {
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
    below: Vec<Vec<usize>>,
    degree: Vec<usize>,
    boundary: Vec<bool>,
    /// pattern edges not yet placed when entering each position
    pending: Vec<usize>,
    isolated: Vec<usize>,
}

impl Plan {
    /// `comps` in placement order; `pairs` are ordering constraints on
    /// pattern vertices.
    fn assemble(g: &Graph, adj: &[Vec<usize>], comps: &[Vec<usize>], pairs: &[(usize, usize)]) -> Plan {
        let order: Vec<usize> = comps.iter().flatten().copied().collect();
        let mut position = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let len = order.len();
        let mut plan = Plan {
            order: order.clone(),
            back: vec![Vec::new(); len],
            above: vec![Vec::new(); len],
            below: vec![Vec::new(); len],
            degree: order.iter().map(|&v| adj[v].len()).collect(),
            boundary: vec![false; len],
            pending: vec![0; len],
            isolated: (0..g.vertex_count()).filter(|&v| adj[v].is_empty()).collect(),
        };
        let mut start = 0;
        for c in comps {
            plan.boundary[start] = true;
            start += c.len();
        }
        for (i, &v) in order.iter().enumerate() {
            plan.back[i] = adj[v].iter().map(|&w| position[w]).filter(|&p| p < i).collect();
        }
        let mut placed = 0;
        for i in 0..len {
            plan.pending[i] = g.edge_count() - placed;
            placed += plan.back[i].len();
        }
        for &(a, b) in pairs {
            let (pa, pb) = (position[a], position[b]);
            if pa < pb {
                plan.above[pb].push(pa);
            } else {
                plan.below[pa].push(pb);
            }
        }
        plan
    }
}

/// Reusable rainbow searcher for one pattern.
#[derive(Debug, Clone)]
pub struct RainbowSearcher {
    pattern: Graph,
    plan: Plan,
    /// Plans whose first two positions are a pattern edge, used to find
    /// copies through a given host edge.
    anchored: Vec<Plan>,
}

impl RainbowSearcher {
    pub fn new(pattern: &Graph) -> Self {
        let adj = pattern.neighbors();
        let mut comps: Vec<Component> = components(pattern, &adj).iter().map(|m| analyze(m, &adj)).collect();
        comps.sort_by(|a, b| {
            b.order
                .len()
                .cmp(&a.order.len())
                .then(b.edge_count.cmp(&a.edge_count))
                .then_with(|| a.key.cmp(&b.key))
        });
        let same = |a: &Component, b: &Component| a.key == b.key && a.order.len() == b.order.len();

        let mut pairs: Vec<(usize, usize)> = comps.iter().flat_map(|c| c.internal.iter().copied()).collect();
        for w in comps.windows(2) {
            if same(&w[0], &w[1]) {
                pairs.push((w[0].order[0], w[1].order[0]));
            }
        }
        let orders: Vec<Vec<usize>> = comps.iter().map(|c| c.order.clone()).collect();
        let plan = Plan::assemble(pattern, &adj, &orders, &pairs);

        let mut anchored = Vec::new();
        for (ci, comp) in comps.iter().enumerate() {
            if ci > 0 && same(&comps[ci - 1], comp) {
                continue;
            }
            let rest: Vec<usize> = (0..comps.len()).filter(|&x| x != ci).collect();
            let mut rest_pairs: Vec<(usize, usize)> =
                rest.iter().flat_map(|&x| comps[x].internal.iter().copied()).collect();
            for w in rest.windows(2) {
                if same(&comps[w[0]], &comps[w[1]]) {
                    rest_pairs.push((comps[w[0]].order[0], comps[w[1]].order[0]));
                }
            }
            for &a in &comp.order {
                for &b in &adj[a] {
                    let first = bfs_order(&adj, &[a, b], &comp.order);
                    let mut orders = vec![first];
                    orders.extend(rest.iter().map(|&x| comps[x].order.clone()));
                    anchored.push(Plan::assemble(pattern, &adj, &orders, &rest_pairs));
                }
            }
        }
        RainbowSearcher {
            pattern: pattern.clone(),
            plan,
            anchored,
        }
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    fn check_sizes(&self, n: usize) -> Result<(), RainbowError> {
        if n > 64 {
            return Err(RainbowError::HostTooLarge(n));
        }
        if self.pattern.vertex_count() > n {
            return Err(RainbowError::PatternTooLarge {
                pattern: self.pattern.vertex_count(),
                host: n,
            });
        }
        Ok(())
    }

    /// Some rainbow embedding of the pattern, or `None` when there is none.
    pub fn find(&self, coloring: &EdgeColoring) -> Result<Option<Embedding>, RainbowError> {
        self.check_sizes(coloring.n())?;
        let matrix = coloring.matrix();
        let degrees: Vec<usize> = (0..coloring.n()).map(|v| coloring.color_degree(v)).collect();
        let host = Host {
            n: coloring.n(),
            color: &matrix,
            num_colors: coloring.num_colors(),
            color_degree: Some(&degrees),
        };
        Ok(self.find_in_host(&host).map(|map| Embedding { map }))
    }

    pub(crate) fn find_in_host(&self, host: &Host) -> Option<Vec<usize>> {
        let mut state = State::new(host, self.plan.order.len());
        if state.dfs(&self.plan, host, 0) {
            Some(self.embedding(&self.plan, &state.img, host.n))
        } else {
            None
        }
    }

    /// Whether some rainbow copy uses host edge `(u, v)`; all other edges of
    /// the copy must be colored in `host`.
    pub(crate) fn exists_through(&self, host: &Host, u: usize, v: usize) -> bool {
        let c = host.color(u, v);
        debug_assert_ne!(c, UNCOLORED);
        let mut state = State::new(host, self.plan.order.len());
        for plan in &self.anchored {
            state.img[0] = u;
            state.img[1] = v;
            state.used_vertices = 1u64 << u | 1u64 << v;
            state.used_color[c as usize] = true;
            let found = state.dfs(plan, host, 2);
            state.used_color[c as usize] = false;
            if found {
                return true;
            }
        }
        false
    }

    fn embedding(&self, plan: &Plan, img: &[usize], n: usize) -> Vec<usize> {
        let mut map = vec![usize::MAX; self.pattern.vertex_count()];
        let mut used = 0u64;
        for (pos, &v) in plan.order.iter().enumerate() {
            map[v] = img[pos];
            used |= 1u64 << img[pos];
        }
        let mut free = (0..n).filter(|h| used & (1u64 << h) == 0);
        for &v in &plan.isolated {
            map[v] = free.next().expect("host has room for isolated vertices");
        }
        map
    }
}

struct State {
    img: Vec<usize>,
    used_vertices: u64,
    used_color: Vec<bool>,
    stamp: Vec<u32>,
    generation: u32,
}

impl State {
    fn new(host: &Host, len: usize) -> Self {
        State {
            img: vec![0; len.max(2)],
            used_vertices: 0,
            used_color: vec![false; host.num_colors],
            stamp: vec![0; host.num_colors],
            generation: 0,
        }
    }

    /// Distinct unused colors on edges between free host vertices, stopping
    /// once `need` is reached.
    fn free_colors_reach(&mut self, host: &Host, need: usize) -> bool {
        self.generation += 1;
        let g = self.generation;
        let mut count = 0;
        for a in 0..host.n {
            if self.used_vertices & (1u64 << a) != 0 {
                continue;
            }
            for b in a + 1..host.n {
                if self.used_vertices & (1u64 << b) != 0 {
                    continue;
                }
                let c = host.color(a, b);
                if c == UNCOLORED || self.used_color[c as usize] || self.stamp[c as usize] == g {
                    continue;
                }
                self.stamp[c as usize] = g;
                count += 1;
                if count >= need {
                    return true;
                }
            }
        }
        false
    }

    fn dfs(&mut self, plan: &Plan, host: &Host, pos: usize) -> bool {
        if pos == plan.order.len() {
            return true;
        }
        let pending = plan.pending[pos];
        if plan.boundary[pos] && pending > 0 && !self.free_colors_reach(host, pending) {
            return false;
        }
        let lo = plan.above[pos].iter().map(|&j| self.img[j] + 1).max().unwrap_or(0);
        let hi = plan.below[pos].iter().map(|&j| self.img[j]).min().unwrap_or(host.n);
        let need_degree = plan.degree[pos];
        let back = &plan.back[pos];
        let mut fresh: [u32; 64] = [0; 64];
        for h in lo..hi {
            if self.used_vertices & (1u64 << h) != 0 {
                continue;
            }
            if let Some(deg) = host.color_degree {
                if deg[h] < need_degree {
                    continue;
                }
            }
            let mut ok = true;
            let mut marked = 0;
            for &j in back {
                let c = host.color(h, self.img[j]);
                if c == UNCOLORED || self.used_color[c as usize] {
                    ok = false;
                    break;
                }
                self.used_color[c as usize] = true;
                fresh[marked] = c;
                marked += 1;
            }
            if ok {
                self.img[pos] = h;
                self.used_vertices |= 1u64 << h;
                let found = self.dfs(plan, host, pos + 1);
                self.used_vertices &= !(1u64 << h);
                if found {
                    return true;
                }
            }
            for &c in &fresh[..marked] {
                self.used_color[c as usize] = false;
            }
        }
        false
    }
}

/// Some rainbow embedding of `pattern` into `coloring`, or `None` when no
/// rainbow copy exists.
pub fn find_rainbow(coloring: &EdgeColoring, pattern: &Graph) -> Result<Option<Embedding>, RainbowError> {
    RainbowSearcher::new(pattern).find(coloring)
}

pub fn is_rainbow_free(coloring: &EdgeColoring, pattern: &Graph) -> Result<bool, RainbowError> {
    Ok(find_rainbow(coloring, pattern)?.is_none())
}

/// Whether `emb` is injective into the host and its image edges carry
/// pairwise distinct colors.
pub fn check_embedding(coloring: &EdgeColoring, pattern: &Graph, emb: &Embedding) -> bool {
    if emb.map.len() != pattern.vertex_count() || emb.map.iter().any(|&h| h >= coloring.n()) || !emb.is_injective() {
        return false;
    }
    let mut colors: Vec<u32> = pattern
        .edges()
        .iter()
        .map(|&(a, b)| coloring.color(emb.map[a], emb.map[b]))
        .collect();
    colors.sort_unstable();
    colors.windows(2).all(|w| w[0] != w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_pattern, PatternSpec};

    fn pat(s: &str) -> Graph {
        build_pattern(&s.parse::<PatternSpec>().unwrap()).unwrap()
    }

    #[test]
    fn trivial_hosts() {
        let all = EdgeColoring::all_distinct(5);
        let mono = EdgeColoring::monochromatic(5);
        let emb = find_rainbow(&all, &pat("2P2")).unwrap().expect("every copy is rainbow");
        assert!(check_embedding(&all, &pat("2P2"), &emb));
        assert!(find_rainbow(&mono, &pat("2P2")).unwrap().is_none());
        assert!(is_rainbow_free(&EdgeColoring::monochromatic(6), &pat("P3")).unwrap());
        assert!(!is_rainbow_free(&EdgeColoring::all_distinct(6), &pat("C3")).unwrap());
        // a single edge is always rainbow
        assert!(!is_rainbow_free(&mono, &pat("P2")).unwrap());
    }

    #[test]
    fn embedding_checks() {
        let k3 = EdgeColoring::all_distinct(3);
        let p3 = pat("P3");
        assert!(check_embedding(&k3, &p3, &Embedding { map: vec![0, 1, 2] }));
        assert!(!check_embedding(
            &EdgeColoring::monochromatic(4),
            &p3,
            &Embedding { map: vec![0, 1, 2] }
        ));
        assert!(!check_embedding(&k3, &p3, &Embedding { map: vec![0, 1, 0] }));
        assert!(!check_embedding(&k3, &p3, &Embedding { map: vec![0, 1, 3] }));
        assert!(!check_embedding(&k3, &p3, &Embedding { map: vec![0, 1] }));
    }

    #[test]
    fn pattern_larger_than_host() {
        assert_eq!(
            find_rainbow(&EdgeColoring::all_distinct(4), &pat("C5")),
            Err(RainbowError::PatternTooLarge { pattern: 5, host: 4 })
        );
    }

    #[test]
    fn isolated_pattern_vertices_are_placed() {
        let g = Graph::new(4, [(0, 1)]).unwrap();
        let c = EdgeColoring::monochromatic(4);
        let emb = find_rainbow(&c, &g).unwrap().unwrap();
        assert!(check_embedding(&c, &g, &emb));
        let empty = Graph::empty(3);
        assert_eq!(find_rainbow(&c, &empty).unwrap().unwrap().map.len(), 3);
    }

    #[test]
    fn symmetry_constraints_per_shape() {
        let s = RainbowSearcher::new(&pat("C5+2P2+P3"));
        // cycle first, then the two-edge path, then the identical edges
        assert_eq!(s.plan.order.len(), 5 + 3 + 4);
        assert!(s.plan.boundary[0] && s.plan.boundary[5] && s.plan.boundary[8] && s.plan.boundary[10]);
        // identical edges are ordered by their first vertex
        assert!(s.plan.above[10].contains(&8));
        assert_eq!(s.plan.pending[0], 5 + 2 + 2);
    }

    #[test]
    fn through_edge_detection() {
        let c = EdgeColoring::all_distinct(5);
        let m = c.matrix();
        let host = Host {
            n: 5,
            color: &m,
            num_colors: c.num_colors(),
            color_degree: None,
        };
        let s = RainbowSearcher::new(&pat("P3+P2"));
        assert!(s.exists_through(&host, 3, 4));
        let mono = EdgeColoring::monochromatic(5);
        let m = mono.matrix();
        let host = Host {
            n: 5,
            color: &m,
            num_colors: 1,
            color_degree: None,
        };
        assert!(!s.exists_through(&host, 0, 1));
    }
}
