//! Reachability toolkit for directed acyclic graphs built around chain
//! decompositions.
//!
//! * [`graph`]: edge lists, SCC condensation, topological order, adjacency
//!   sorting and the DFS closure baseline.
//! * [`decomposition`]: path decomposition, chain concatenation and the
//!   `nh_conc` chain heuristic.
//! * [`reduction`]: linear-time removal of chain-detectable transitive edges.
//! * [`index`]: per-vertex chain arrays answering reachability in `O(1)`.
//! * [`width`]: width and minimum chain cover via bipartite matching.
//! * [`generators`]: seeded ER / BA / WS / path-based random DAGs.
//! * [`bench`], [`io`], [`cli`]: experiment harness, file formats and the
//!   command-line front end.
//!
//! ```
//! use chainreach::{nh_conc, Dag, ReachIndex};
//!
//! let dag = Dag::from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])?.sort_adjacency_lists();
//! let (chains, _) = nh_conc(&dag);
//! let ix = ReachIndex::build(&dag, &chains)?;
//! assert!(ix.reaches(0, 3));
//! assert!(!ix.reaches(1, 2));
//! # Ok::<(), chainreach::Error>(())
//! ```

pub mod bench;
pub mod cli;
pub mod decomposition;
mod error;
pub mod generators;
pub mod graph;
pub mod index;
pub mod io;
pub mod reduction;
pub mod width;

pub use decomposition::{
    concatenate, nh_conc, node_order_paths, reversed_dfs_lookup, ChainDecomposition, ConcatStats,
    LookupResult,
};
pub use error::{Error, Result};
pub use generators::{gen_ba, gen_er, gen_pb, gen_ws, GeneratorConfig, Model, ModelKind};
pub use graph::{ClosureMatrix, CondensationResult, Dag, Digraph};
pub use index::{ReachIndex, UNREACHABLE};
pub use reduction::{reduce, reduce_incoming, reduce_outgoing, ReductionStats};
pub use width::{fulkerson_width, hopcroft_karp, BipartiteGraph, Matching, WidthResult};
