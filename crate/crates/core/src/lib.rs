//! Anti-Ramsey numbers of small graph families: closed-form bounds, exact
//! search oracles, rainbow detection and extremal colorings.

pub mod cli;
pub mod coloring;
pub mod constructions;
pub mod formulas;
pub mod graph;
pub mod oracle;
pub mod qcover;
pub mod rainbow;

pub use coloring::{color_count, parse_coloring, serialize_coloring, EdgeColoring};
pub use constructions::{clique_coloring, lemma_coloring};
pub use formulas::{ar_cycle, ar_family, ar_matching, ar_path, gamma2, gamma3, BoundReport, Rational};
pub use graph::{build_pattern, parse_graph, serialize_graph, Embedding, Graph, PatternSpec};
pub use oracle::{exact_ar, max_rainbow_free, verify_range, OracleOutcome, OracleResult};
pub use qcover::{q_cover, QResult};
pub use rainbow::{check_embedding, find_rainbow, is_rainbow_free, RainbowSearcher};
