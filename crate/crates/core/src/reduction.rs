//! Linear-time removal of chain-detectable transitive edges.
//!
//! If a vertex has two out-edges into the same chain, the one aimed higher up
//! the chain is transitive: the lower target already reaches it along the
//! chain. Symmetrically for two in-edges leaving the same chain. Keeping only
//! the lowest target (resp. highest source) per chain leaves at most `k_c`
//! out-edges and `k_c` in-edges per vertex.

use crate::decomposition::ChainDecomposition;
use crate::graph::Dag;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReductionStats {
    pub removed_out: usize,
    pub removed_in: usize,
    pub remaining: usize,
    /// Adjacency entries inspected, at most three per edge and pass.
    pub edge_visits: usize,
}

impl ReductionStats {
    pub fn removed(&self) -> usize {
        self.removed_out + self.removed_in
    }
}

/// Per-chain "best endpoint" scratch array, reset lazily by stamping each
/// slot with the vertex that last wrote it.
struct ChainScratch {
    best: Vec<usize>,
    stamp: Vec<usize>,
}

impl ChainScratch {
    fn new(k_c: usize) -> Self {
        ChainScratch {
            best: vec![0; k_c],
            stamp: vec![usize::MAX; k_c],
        }
    }

    /// Keeps, for every chain met in `ends`, the endpoint preferred by
    /// `better`, then returns the endpoints that survived, in input order.
    fn filter<F>(
        &mut self,
        owner: usize,
        ends: &[usize],
        dec: &ChainDecomposition,
        visits: &mut usize,
        better: F,
    ) -> Vec<usize>
    where
        F: Fn(u32, u32) -> bool,
    {
        for &t in ends {
            let c = dec.chain_of(t);
            if self.stamp[c] != owner {
                self.stamp[c] = owner;
                self.best[c] = t;
            } else {
                let (cur, new) = (dec.pos_of(self.best[c]), dec.pos_of(t));
                assert_ne!(cur, new, "two endpoints share a chain position");
                if better(new, cur) {
                    self.best[c] = t;
                }
            }
        }
        *visits += 2 * ends.len();
        ends.iter()
            .copied()
            .filter(|&t| self.best[dec.chain_of(t)] == t)
            .collect()
    }
}

/// Keeps, for each vertex and each chain, only the out-edge to the lowest
/// position in that chain.
pub fn reduce_outgoing(dag: &Dag, dec: &ChainDecomposition) -> (Dag, ReductionStats) {
    let n = dag.vertex_count();
    let mut scratch = ChainScratch::new(dec.chain_count());
    let mut stats = ReductionStats::default();
    let out_adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let succ = dag.successors(v);
            let kept = scratch.filter(v, succ, dec, &mut stats.edge_visits, |new, cur| new < cur);
            stats.edge_visits += succ.len();
            stats.removed_out += succ.len() - kept.len();
            kept
        })
        .collect();
    let reduced = Dag::from_out_adj(out_adj, dag.topo_order().to_vec());
    stats.remaining = reduced.edge_count();
    (reduced, stats)
}

/// Keeps, for each vertex and each chain, only the in-edge from the highest
/// position in that chain.
pub fn reduce_incoming(dag: &Dag, dec: &ChainDecomposition) -> (Dag, ReductionStats) {
    let n = dag.vertex_count();
    let mut scratch = ChainScratch::new(dec.chain_count());
    let mut stats = ReductionStats::default();
    let in_adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let pred = dag.predecessors(v);
            let kept = scratch.filter(v, pred, dec, &mut stats.edge_visits, |new, cur| new > cur);
            stats.edge_visits += pred.len();
            stats.removed_in += pred.len() - kept.len();
            kept
        })
        .collect();
    let reduced = Dag::from_in_adj(in_adj, dag.topo_order().to_vec());
    stats.remaining = reduced.edge_count();
    (reduced, stats)
}

/// Outgoing pass followed by the incoming pass. The result has the same
/// transitive closure as `dag`.
pub fn reduce(dag: &Dag, dec: &ChainDecomposition) -> (Dag, ReductionStats) {
    let (out_reduced, out_stats) = reduce_outgoing(dag, dec);
    let (reduced, in_stats) = reduce_incoming(&out_reduced, dec);
    let stats = ReductionStats {
        removed_out: out_stats.removed_out,
        removed_in: in_stats.removed_in,
        remaining: in_stats.remaining,
        edge_visits: out_stats.edge_visits + in_stats.edge_visits,
    };
    (reduced, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::nh_conc;

    fn dec(d: &Dag, chains: Vec<Vec<usize>>) -> ChainDecomposition {
        ChainDecomposition::from_chains(d, chains).unwrap()
    }

    #[test]
    fn outgoing_drops_higher_target() {
        // chain [1, 2]; 0 -> 1 and 0 -> 2
        let d = Dag::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let (r, stats) = reduce_outgoing(&d, &dec(&d, vec![vec![0], vec![1, 2]]));
        assert_eq!(r.successors(0), &[1]);
        assert_eq!(stats.removed_out, 1);
        assert_eq!(stats.remaining, 2);
    }

    #[test]
    fn outgoing_identity_when_targets_in_distinct_chains() {
        let d = Dag::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let (r, stats) = reduce_outgoing(&d, &dec(&d, vec![vec![0, 1], vec![2], vec![3]]));
        assert_eq!(r, d);
        assert_eq!(stats.removed_out, 0);
    }

    #[test]
    fn outgoing_removes_diamond_shortcut() {
        let d = Dag::from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)])
            .unwrap()
            .sort_adjacency_lists();
        let (r, stats) = reduce_outgoing(&d, &dec(&d, vec![vec![0, 1, 3], vec![2]]));
        assert_eq!(stats.remaining, 4);
        assert!(!r.successors(0).contains(&3));
        assert_eq!(
            r.transitive_closure_baseline(),
            d.transitive_closure_baseline()
        );
    }

    #[test]
    fn incoming_drops_lower_source() {
        // chain [0, 1]; 0 -> 2 and 1 -> 2
        let d = Dag::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let (r, stats) = reduce_incoming(&d, &dec(&d, vec![vec![0, 1], vec![2]]));
        assert_eq!(r.predecessors(2), &[1]);
        assert_eq!(stats.removed_in, 1);
        assert_eq!(
            r.transitive_closure_baseline(),
            d.transitive_closure_baseline()
        );
    }

    #[test]
    fn incoming_identity_when_sources_in_distinct_chains() {
        let d = Dag::from_edges(3, [(0, 2), (1, 2)]).unwrap();
        let (r, stats) = reduce_incoming(&d, &dec(&d, vec![vec![0], vec![1, 2]]));
        assert_eq!(r.edge_count(), 2);
        assert_eq!(stats.removed_in, 0);
    }

    #[test]
    fn incoming_star_keeps_one_edge() {
        // sources 0..4 on one chain, all pointing at 4
        let mut edges: Vec<_> = (0..4).map(|s| (s, 4)).collect();
        edges.extend((0..3).map(|s| (s, s + 1)));
        let d = Dag::from_edges(5, edges).unwrap();
        let (r, _) = reduce_incoming(&d, &dec(&d, vec![vec![0, 1, 2, 3], vec![4]]));
        assert_eq!(r.predecessors(4), &[3]);
    }

    #[test]
    fn reduce_path_unchanged() {
        let d = Dag::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let (r, stats) = reduce(&d, &dec(&d, vec![vec![0, 1, 2, 3]]));
        assert_eq!(r, d);
        assert_eq!(stats.removed(), 0);
    }

    #[test]
    fn reduce_complete_dag_single_chain() {
        let edges = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v)));
        let d = Dag::from_edges(4, edges).unwrap();
        let (r, stats) = reduce(&d, &dec(&d, vec![vec![0, 1, 2, 3]]));
        let mut kept: Vec<_> = r.edges().collect();
        kept.sort_unstable();
        assert_eq!(kept, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(stats.removed() + stats.remaining, 6);
    }

    #[test]
    fn reduce_keeps_sorted_adjacency_and_degree_bound() {
        let edges = (0..12).flat_map(|u| {
            (u + 1..12)
                .filter(move |v| (u * 7 + v) % 3 != 0)
                .map(move |v| (u, v))
        });
        let d = Dag::from_edges(12, edges).unwrap().sort_adjacency_lists();
        let (chains, _) = nh_conc(&d);
        let (r, stats) = reduce(&d, &chains);
        assert!(r.has_sorted_adjacency());
        assert!(stats.edge_visits <= 6 * d.edge_count());
        for v in 0..12 {
            assert!(r.out_degree(v) <= chains.chain_count());
            assert!(r.in_degree(v) <= chains.chain_count());
        }
        assert_eq!(
            r.transitive_closure_baseline(),
            d.transitive_closure_baseline()
        );
    }
}
