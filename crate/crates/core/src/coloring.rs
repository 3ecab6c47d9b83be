//! Surjective edge colorings of complete graphs and the coloring text format.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{parse_fields, GraphError};

/// Marks an edge without a color in partial host matrices.
pub(crate) const UNCOLORED: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("expected {expected} edge colors, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("colors are not surjective onto 0..{count}: id {missing} unused")]
    NotSurjective { count: usize, missing: u32 },
    #[error("header announces {announced} colors but {used} are used")]
    ColorCountMismatch { announced: usize, used: usize },
    #[error("edge ({0}, {1}) colored twice")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) has no color")]
    MissingEdge(usize, usize),
    #[error(transparent)]
    Format(#[from] GraphError),
}

/// Index of edge `(u, v)`, `u < v`, in the lexicographic order of the edges of `K_n`.
pub fn edge_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// Edges of `K_n` in lexicographic order.
pub fn complete_edges(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

pub fn binom2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// A total, surjective map from the edges of `K_n` (lexicographic order) onto
/// color ids `0..c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeColoring {
    n: usize,
    colors: Vec<u32>,
    count: usize,
}

impl EdgeColoring {
    pub fn new(n: usize, colors: Vec<u32>) -> Result<Self, ColoringError> {
        let expected = binom2(n);
        if colors.len() != expected {
            return Err(ColoringError::WrongLength {
                expected,
                got: colors.len(),
            });
        }
        let count = colors.iter().max().map_or(0, |&m| m as usize + 1);
        let mut used = vec![false; count];
        for &c in &colors {
            used[c as usize] = true;
        }
        if let Some(missing) = used.iter().position(|u| !u) {
            return Err(ColoringError::NotSurjective {
                count,
                missing: missing as u32,
            });
        }
        Ok(EdgeColoring { n, colors, count })
    }

    /// Renumbers arbitrary color labels by first appearance in edge order.
    pub fn from_labels(n: usize, labels: &[u32]) -> Result<Self, ColoringError> {
        let mut map = std::collections::HashMap::new();
        let colors = labels
            .iter()
            .map(|l| {
                let next = map.len() as u32;
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Self::new(n, colors)
    }

    pub fn monochromatic(n: usize) -> Self {
        Self::new(n, vec![0; binom2(n)]).expect("constant coloring is surjective")
    }

    pub fn all_distinct(n: usize) -> Self {
        Self::new(n, (0..binom2(n) as u32).collect()).expect("identity coloring is surjective")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_colors(&self) -> usize {
        self.count
    }

    /// Colors in lexicographic edge order.
    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, u: usize, v: usize) -> u32 {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.colors[edge_index(self.n, a, b)]
    }

    /// Dense `n * n` symmetric color matrix; the diagonal is `UNCOLORED`.
    pub(crate) fn matrix(&self) -> Vec<u32> {
        let n = self.n;
        let mut m = vec![UNCOLORED; n * n];
        for ((u, v), &c) in complete_edges(n).zip(&self.colors) {
            m[u * n + v] = c;
            m[v * n + u] = c;
        }
        m
    }

    /// Coloring obtained by relabeling host vertices: vertex `i` becomes `perm[i]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> EdgeColoring {
        assert_eq!(perm.len(), self.n);
        let mut colors = vec![0; self.colors.len()];
        for ((u, v), &c) in complete_edges(self.n).zip(&self.colors) {
            let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
            colors[edge_index(self.n, a, b)] = c;
        }
        EdgeColoring {
            n: self.n,
            colors,
            count: self.count,
        }
    }

    /// Number of distinct colors incident with `v` (its color degree).
    pub fn color_degree(&self, v: usize) -> usize {
        (0..self.n)
            .filter(|&w| w != v)
            .map(|w| self.color(v, w))
            .collect::<BTreeSet<_>>()
            .len()
    }
}

/// Number of distinct color ids used.
pub fn color_count(coloring: &EdgeColoring) -> usize {
    coloring.colors.iter().collect::<BTreeSet<_>>().len()
}

/// Parses the coloring format: header `n c`, then one line `u v color` per
/// edge of `K_n`, each edge exactly once, in any order.
pub fn parse_coloring(text: &str) -> Result<EdgeColoring, ColoringError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines.next().ok_or(GraphError::Malformed {
        line: 1,
        msg: "missing header".into(),
    })?;
    let [n, announced] = parse_fields::<2>(header, hl + 1)?;
    let mut colors = vec![UNCOLORED; binom2(n)];
    let mut seen = 0usize;
    for (idx, line) in lines {
        let [a, b, c] = parse_fields::<3>(line, idx + 1)?;
        if a == b {
            return Err(GraphError::Loop(a).into());
        }
        let (u, v) = (a.min(b), a.max(b));
        if v >= n {
            return Err(GraphError::EndpointOutOfRange { u, v, n }.into());
        }
        if c >= announced {
            return Err(GraphError::Malformed {
                line: idx + 1,
                msg: format!("color {c} outside 0..{announced}"),
            }
            .into());
        }
        let slot = &mut colors[edge_index(n, u, v)];
        if *slot != UNCOLORED {
            return Err(ColoringError::DuplicateEdge(u, v));
        }
        *slot = c as u32;
        seen += 1;
    }
    if seen != colors.len() {
        let (u, v) = complete_edges(n).zip(&colors).find(|(_, &c)| c == UNCOLORED).unwrap().0;
        return Err(ColoringError::MissingEdge(u, v));
    }
    let coloring = EdgeColoring::new(n, colors)?;
    if coloring.num_colors() != announced {
        return Err(ColoringError::ColorCountMismatch {
            announced,
            used: coloring.num_colors(),
        });
    }
    Ok(coloring)
}

pub fn serialize_coloring(coloring: &EdgeColoring) -> String {
    let mut out = format!("{} {}\n", coloring.n, coloring.count);
    for ((u, v), c) in complete_edges(coloring.n).zip(&coloring.colors) {
        out.push_str(&format!("{u} {v} {c}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_index_is_lexicographic_position() {
        for n in 0..9 {
            for (i, (u, v)) in complete_edges(n).enumerate() {
                assert_eq!(edge_index(n, u, v), i);
            }
        }
    }

    #[test]
    fn surjectivity_enforced() {
        assert!(matches!(
            EdgeColoring::new(3, vec![0, 2, 2]),
            Err(ColoringError::NotSurjective { missing: 1, .. })
        ));
        assert!(EdgeColoring::new(3, vec![0, 0]).is_err());
        let c = EdgeColoring::from_labels(3, &[7, 3, 7]).unwrap();
        assert_eq!(c.colors(), &[0, 1, 0]);
    }

    #[test]
    fn counts() {
        assert_eq!(color_count(&EdgeColoring::monochromatic(4)), 1);
        assert_eq!(color_count(&EdgeColoring::all_distinct(4)), 6);
        assert_eq!(EdgeColoring::all_distinct(4).color_degree(0), 3);
        assert_eq!(EdgeColoring::monochromatic(4).color_degree(2), 1);
    }

    #[test]
    fn text_format() {
        let c = EdgeColoring::new(3, vec![0, 1, 0]).unwrap();
        let text = serialize_coloring(&c);
        assert_eq!(text, "3 2\n0 1 0\n0 2 1\n1 2 0\n");
        assert_eq!(parse_coloring(&text).unwrap(), c);
        // order of lines is free
        assert_eq!(parse_coloring("3 2\n1 2 0\n0 2 1\n0 1 0\n").unwrap(), c);
        assert!(matches!(
            parse_coloring("3 2\n0 1 0\n0 2 1\n"),
            Err(ColoringError::MissingEdge(1, 2))
        ));
        assert!(matches!(
            parse_coloring("3 2\n0 1 0\n0 1 1\n1 2 0\n"),
            Err(ColoringError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            parse_coloring("3 3\n0 1 0\n0 2 1\n1 2 0\n"),
            Err(ColoringError::ColorCountMismatch { announced: 3, used: 2 })
        ));
        assert!(matches!(
            parse_coloring("3 2\n0 1 0\n0 2 5\n1 2 0\n"),
            Err(ColoringError::Format(_))
        ));
        assert!(matches!(
            parse_coloring("3 2\n0 1 1\n0 2 1\n1 2 1\n"),
            Err(ColoringError::NotSurjective { .. })
        ));
    }

    #[test]
    fn permutation_preserves_color_multiset() {
        let c = EdgeColoring::new(4, vec![0, 1, 2, 0, 1, 2]).unwrap();
        let p = c.permute_vertices(&[2, 0, 3, 1]);
        let mut a = c.colors().to_vec();
        let mut b = p.colors().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(p.color(2, 0), c.color(0, 1));
    }
}
