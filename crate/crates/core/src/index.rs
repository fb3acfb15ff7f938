//! Chain-based reachability index with constant-time queries.
//!
//! Every vertex stores, for each chain, the lowest position in that chain it
//! can reach. `s` reaches `t` iff that entry for `t`'s chain is at most `t`'s
//! position.

use fixedbitset::FixedBitSet;

use crate::decomposition::ChainDecomposition;
use crate::error::{Error, Result};
use crate::graph::{ClosureMatrix, Dag};

/// In-memory marker for "no vertex of this chain is reachable". It is the
/// largest `u32`, so taking minima and comparing against positions needs no
/// special case. Index files write it as `0`.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachIndex {
    k_c: usize,
    chain_of: Vec<u32>,
    pos_of: Vec<u32>,
    /// Row-major `n x k_c`.
    idx: Vec<u32>,
    e_tr: usize,
    e_red: usize,
}

impl ReachIndex {
    /// Builds the index in `O(|E_tr| + k_c * |E_red|)` time.
    ///
    /// Vertices are processed in reverse topological order and successors in
    /// ascending topological order. An edge `(v, t)` whose target is already
    /// covered by `v`'s row is transitive and skipped; any other edge merges
    /// `t`'s row into `v`'s. Once all successors are done, `v`'s own chain
    /// cell is set to its position. Successor lists must be sorted
    /// ([`Dag::sort_adjacency_lists`]); a descending pair is reported as
    /// [`Error::UnsortedAdjacency`].
    pub fn build(dag: &Dag, dec: &ChainDecomposition) -> Result<Self> {
        let n = dag.vertex_count();
        if dec.vertex_count() != n {
            return Err(Error::InvalidDecomposition(format!(
                "decomposition covers {} vertices, graph has {n}",
                dec.vertex_count()
            )));
        }
        let k_c = dec.chain_count();
        let chain_of: Vec<u32> = (0..n).map(|v| dec.chain_of(v) as u32).collect();
        let pos_of: Vec<u32> = (0..n).map(|v| dec.pos_of(v)).collect();

        // A vertex's own cell is written only after its successors are
        // merged. Seeding it up front would make every out-edge into the
        // vertex's own chain look covered, so that edge would be skipped and
        // the target's row never merged.
        let mut idx = vec![UNREACHABLE; n * k_c];
        let (mut e_tr, mut e_red) = (0, 0);
        for &v in dag.topo_order().iter().rev() {
            let mut prev_rank = None;
            for &t in dag.successors(v) {
                let rank = dag.rank(t);
                if prev_rank.is_some_and(|p| p > rank) {
                    return Err(Error::UnsortedAdjacency { vertex: v });
                }
                prev_rank = Some(rank);

                let t_chain = chain_of[t] as usize;
                if pos_of[t] < idx[v * k_c + t_chain] {
                    merge_rows(&mut idx, k_c, v, t);
                    e_red += 1;
                } else {
                    e_tr += 1;
                }
            }
            let own = &mut idx[v * k_c + chain_of[v] as usize];
            debug_assert!(*own > pos_of[v]);
            *own = pos_of[v];
        }

        Ok(ReachIndex {
            k_c,
            chain_of,
            pos_of,
            idx,
            e_tr,
            e_red,
        })
    }

    pub(crate) fn from_parts(
        k_c: usize,
        chain_of: Vec<u32>,
        pos_of: Vec<u32>,
        idx: Vec<u32>,
    ) -> Self {
        ReachIndex {
            k_c,
            chain_of,
            pos_of,
            idx,
            e_tr: 0,
            e_red: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.chain_of.len()
    }

    pub fn chain_count(&self) -> usize {
        self.k_c
    }

    pub fn chain_of(&self, v: usize) -> usize {
        self.chain_of[v] as usize
    }

    pub fn pos_of(&self, v: usize) -> u32 {
        self.pos_of[v]
    }

    /// Index row of `v`: per chain, the lowest reachable 1-based position or
    /// [`UNREACHABLE`].
    pub fn row(&self, v: usize) -> &[u32] {
        &self.idx[v * self.k_c..(v + 1) * self.k_c]
    }

    /// Constant-time reachability test. Panics if a vertex is out of range.
    #[inline]
    pub fn reaches(&self, s: usize, t: usize) -> bool {
        self.idx[s * self.k_c + self.chain_of[t] as usize] <= self.pos_of[t]
    }

    /// Checked variant of [`ReachIndex::reaches`].
    pub fn query(&self, s: usize, t: usize) -> Result<bool> {
        let n = self.vertex_count();
        for v in [s, t] {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        Ok(self.reaches(s, t))
    }

    /// `(e_tr, e_red)`: edges found transitive and non-transitive while
    /// building. Both are zero for an index loaded from a file.
    pub fn edge_classification(&self) -> (usize, usize) {
        (self.e_tr, self.e_red)
    }

    /// Full reachability matrix in `O(n^2)`; the diagonal is set.
    pub fn to_closure_matrix(&self) -> ClosureMatrix {
        let n = self.vertex_count();
        let rows = (0..n)
            .map(|s| {
                let mut row = FixedBitSet::with_capacity(n);
                for t in 0..n {
                    if self.reaches(s, t) {
                        row.insert(t);
                    }
                }
                row
            })
            .collect();
        ClosureMatrix::from_rows(rows)
    }
}

/// `row[v] = min(row[v], row[t])` entrywise.
fn merge_rows(idx: &mut [u32], k_c: usize, v: usize, t: usize) {
    debug_assert_ne!(v, t);
    let (dst, src) = if v < t {
        let (lo, hi) = idx.split_at_mut(t * k_c);
        (&mut lo[v * k_c..(v + 1) * k_c], &hi[..k_c])
    } else {
        let (lo, hi) = idx.split_at_mut(v * k_c);
        (&mut hi[..k_c], &lo[t * k_c..(t + 1) * k_c])
    };
    for (a, &b) in dst.iter_mut().zip(src) {
        *a = (*a).min(b);
    }
}
