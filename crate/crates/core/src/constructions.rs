//! Extremal colorings that certify lower bounds.

use thiserror::Error;

pub use crate::coloring::color_count;
use crate::coloring::{binom2, complete_edges, EdgeColoring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("need s >= 1 and at least s edges outside the cover set, got n={n}, r1={r1}, s={s}")]
    CoverParameters { n: usize, r1: usize, s: usize },
    #[error("clique size {m} must lie in 2..={n}")]
    CliqueSize { n: usize, m: usize },
}

/// Cover construction: every edge meeting `R = {0, .., r1-1}` gets its own
/// color, and the edges inside `V - R` share `s` colors round-robin in
/// lexicographic order. Shared colors take ids `0..s`.
///
/// Any rainbow copy of `G` uses at most `s` edges avoiding `R`, so it has
/// all but `s` edges covered by at most `r1` vertices. When `q_s(G) > r1`
/// the coloring is rainbow-`G`-free.
pub fn lemma_coloring(n: usize, r1: usize, s: usize) -> Result<EdgeColoring, ConstructionError> {
    if s == 0 || r1 > n || binom2(n - r1) < s {
        return Err(ConstructionError::CoverParameters { n, r1, s });
    }
    let mut shared = 0u32;
    let mut fresh = s as u32;
    let colors = complete_edges(n)
        .map(|(u, _)| {
            if u < r1 {
                fresh += 1;
                fresh - 1
            } else {
                shared += 1;
                (shared - 1) % s as u32
            }
        })
        .collect();
    Ok(EdgeColoring::new(n, colors).expect("every id is used"))
}

/// A rainbow `K_m` on `{0, .., m-1}` with one further color on all other
/// edges (none when `m = n`). Ids follow first appearance in edge order.
pub fn clique_coloring(n: usize, m: usize) -> Result<EdgeColoring, ConstructionError> {
    if m < 2 || m > n {
        return Err(ConstructionError::CliqueSize { n, m });
    }
    let outside = binom2(m) as u32;
    let labels: Vec<u32> = complete_edges(n)
        .map(|(u, v)| {
            if v < m {
                crate::coloring::edge_index(m, u, v) as u32
            } else {
                outside
            }
        })
        .collect();
    Ok(EdgeColoring::from_labels(n, &labels).expect("labels cover a contiguous range"))
}
