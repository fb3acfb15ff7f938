//! Path and chain decompositions of a DAG.
//!
//! [`node_order_paths`] builds a plain path decomposition, [`concatenate`]
//! merges paths into chains with reversed depth-first lookups that share a
//! global blocked set, and [`nh_conc`] interleaves both steps in a single
//! topological sweep.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::Dag;

const NONE: usize = usize::MAX;

/// Vertex-disjoint chains covering every vertex. Chain ids are 0-based,
/// positions inside a chain are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDecomposition {
    chains: Vec<Vec<usize>>,
    chain_of: Vec<usize>,
    pos_of: Vec<u32>,
}

impl ChainDecomposition {
    /// Validates that `chains` partition the vertices of `dag` and that each
    /// chain is strictly ascending in topological rank. Reachability between
    /// consecutive vertices is not checked.
    pub fn from_chains(dag: &Dag, chains: Vec<Vec<usize>>) -> Result<Self> {
        let n = dag.vertex_count();
        let mut covered = vec![false; n];
        for (c, chain) in chains.iter().enumerate() {
            if chain.is_empty() {
                return Err(Error::InvalidDecomposition(format!("chain {c} is empty")));
            }
            for &v in chain {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if std::mem::replace(&mut covered[v], true) {
                    return Err(Error::InvalidDecomposition(format!(
                        "vertex {v} appears more than once"
                    )));
                }
            }
            if let Some(w) = chain.windows(2).find(|w| dag.rank(w[0]) >= dag.rank(w[1])) {
                return Err(Error::InvalidDecomposition(format!(
                    "chain {c}: {} does not precede {} topologically",
                    w[0], w[1]
                )));
            }
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return Err(Error::InvalidDecomposition(format!(
                "vertex {v} is not covered"
            )));
        }
        Ok(Self::from_chains_unchecked(n, chains))
    }

    pub(crate) fn from_chains_unchecked(n: usize, chains: Vec<Vec<usize>>) -> Self {
        let mut chain_of = vec![NONE; n];
        let mut pos_of = vec![0; n];
        for (c, chain) in chains.iter().enumerate() {
            for (i, &v) in chain.iter().enumerate() {
                chain_of[v] = c;
                pos_of[v] = (i + 1) as u32;
            }
        }
        ChainDecomposition {
            chains,
            chain_of,
            pos_of,
        }
    }

    /// Number of chains, `k_c`.
    pub fn chain_count(&self) -> usize {
        self.chains.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.chain_of.len()
    }

    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    pub fn chain_of(&self, v: usize) -> usize {
        self.chain_of[v]
    }

    /// 1-based position of `v` within its chain.
    pub fn pos_of(&self, v: usize) -> u32 {
        self.pos_of[v]
    }

    pub fn into_chains(self) -> Vec<Vec<usize>> {
        self.chains
    }
}

/// Outcome of one reversed depth-first lookup.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LookupResult {
    /// Vertices exhausted without meeting a chain tail; added to the global
    /// blocked set.
    pub blocked: Vec<usize>,
    /// Path from the discovered chain tail to the start vertex, or empty.
    pub path: Vec<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConcatStats {
    /// Paths the chains were assembled from.
    pub k_p: usize,
    /// Chains after concatenation.
    pub k_c: usize,
    /// Successful concatenations, always `k_p - k_c`.
    pub c: usize,
    /// Total number of vertices on the connecting paths.
    pub total_path_len: usize,
}

/// Depth-first search over predecessor edges from `start`, looking for a
/// vertex (other than `start`) for which `is_chain_tail` holds.
///
/// Vertices already in `blocked` are never expanded, though they may still
/// be accepted as the tail. Every vertex whose ancestry is exhausted without
/// success is added to `blocked`; the vertices still on the search stack
/// when a tail turns up form the returned path.
pub fn reversed_dfs_lookup<F>(
    dag: &Dag,
    start: usize,
    is_chain_tail: F,
    blocked: &mut FixedBitSet,
) -> LookupResult
where
    F: Fn(usize) -> bool,
{
    debug_assert!(!blocked.contains(start));
    let mut result = LookupResult::default();
    // (vertex, next predecessor offset); no per-search visited set is needed
    // since in a DAG a vertex on the stack cannot be rediscovered and
    // finished vertices are blocked.
    let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        let preds = dag.predecessors(v);
        let mut descend = None;
        while *next < preds.len() {
            let p = preds[*next];
            *next += 1;
            // Tested before the blocked check: a failed lookup blocks its
            // own start, which may be (or later become) a chain tail.
            if is_chain_tail(p) {
                result.path.push(p);
                result.path.extend(stack.iter().rev().map(|&(u, _)| u));
                return result;
            }
            if blocked.contains(p) {
                continue;
            }
            descend = Some(p);
            break;
        }
        match descend {
            Some(p) => stack.push((p, 0)),
            None => {
                stack.pop();
                blocked.insert(v);
                result.blocked.push(v);
            }
        }
    }
    result
}

/// Node-order path decomposition: scanning vertices in topological order,
/// each vertex extends a path whose last vertex is one of its immediate
/// predecessors (the first such in predecessor order), or starts a new path.
pub fn node_order_paths(dag: &Dag) -> ChainDecomposition {
    let n = dag.vertex_count();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut tail_of = vec![NONE; n];
    for &v in dag.topo_order() {
        let c = match dag.predecessors(v).iter().find(|&&p| tail_of[p] != NONE) {
            Some(&p) => std::mem::replace(&mut tail_of[p], NONE),
            None => {
                chains.push(Vec::new());
                chains.len() - 1
            }
        };
        chains[c].push(v);
        tail_of[v] = c;
    }
    ChainDecomposition::from_chains_unchecked(n, chains)
}

/// Merges the chains of `paths` wherever one chain's last vertex reaches
/// another chain's first vertex.
///
/// Chains are visited in ascending topological rank of their first vertex.
/// Merges only link the tail of one chain to the head of another; the
/// final chain lists are materialized in one pass at the end, ordered by the
/// rank of their first vertex.
pub fn concatenate(dag: &Dag, paths: &ChainDecomposition) -> (ChainDecomposition, ConcatStats) {
    let n = dag.vertex_count();
    let mut next = vec![NONE; n];
    let mut is_tail = FixedBitSet::with_capacity(n);
    let mut is_head = FixedBitSet::with_capacity(n);
    for chain in paths.chains() {
        for w in chain.windows(2) {
            next[w[0]] = w[1];
        }
        is_head.insert(chain[0]);
        is_tail.insert(*chain.last().expect("chains are non-empty"));
    }

    let mut heads: Vec<usize> = paths.chains().iter().map(|c| c[0]).collect();
    heads.sort_unstable_by_key(|&h| dag.rank(h));

    let mut stats = ConcatStats {
        k_p: paths.chain_count(),
        ..ConcatStats::default()
    };
    let mut blocked = FixedBitSet::with_capacity(n);
    for &f in &heads {
        if blocked.contains(f) {
            // an exhausted vertex has no tail among its ancestors
            continue;
        }
        let found = reversed_dfs_lookup(dag, f, |v| is_tail.contains(v), &mut blocked);
        if let Some(&l) = found.path.first() {
            next[l] = f;
            is_tail.set(l, false);
            is_head.set(f, false);
            stats.c += 1;
            stats.total_path_len += found.path.len();
        }
    }

    let chains: Vec<Vec<usize>> = heads
        .iter()
        .filter(|&&h| is_head.contains(h))
        .map(|&h| {
            let mut chain = vec![h];
            let mut v = h;
            while next[v] != NONE {
                v = next[v];
                chain.push(v);
            }
            chain
        })
        .collect();
    stats.k_c = chains.len();
    debug_assert_eq!(stats.c, stats.k_p - stats.k_c);
    (ChainDecomposition::from_chains_unchecked(n, chains), stats)
}

/// Chain decomposition heuristic with online concatenation.
///
/// Vertices are scanned in ascending topological order; successor lists are
/// expected to be sorted (see [`Dag::sort_adjacency_lists`]). An unassigned
/// vertex joins the chain of its lowest out-degree immediate predecessor that
/// is a chain tail, failing that the chain whose tail a reversed lookup
/// finds, failing that a new chain. A successor of in-degree one is then
/// appended greedily.
pub fn nh_conc(dag: &Dag) -> (ChainDecomposition, ConcatStats) {
    let n = dag.vertex_count();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut chain_of = vec![NONE; n];
    let mut blocked = FixedBitSet::with_capacity(n);
    let mut stats = ConcatStats::default();

    let is_tail = |chain_of: &[usize], chains: &[Vec<usize>], x: usize| {
        let c = chain_of[x];
        c != NONE && chains[c].last() == Some(&x)
    };

    for &v in dag.topo_order() {
        let c = if chain_of[v] != NONE {
            chain_of[v]
        } else {
            let mut tail = dag
                .predecessors(v)
                .iter()
                .copied()
                .filter(|&p| is_tail(&chain_of, &chains, p))
                .min_by_key(|&p| (dag.out_degree(p), p));
            if tail.is_none() {
                let found =
                    reversed_dfs_lookup(dag, v, |x| is_tail(&chain_of, &chains, x), &mut blocked);
                if let Some(&l) = found.path.first() {
                    tail = Some(l);
                    stats.c += 1;
                    stats.total_path_len += found.path.len();
                }
            }
            let c = match tail {
                Some(l) => chain_of[l],
                None => {
                    chains.push(Vec::new());
                    chains.len() - 1
                }
            };
            chains[c].push(v);
            chain_of[v] = c;
            c
        };

        if chains[c].last() == Some(&v) {
            let greedy = dag
                .successors(v)
                .iter()
                .copied()
                .find(|&s| dag.in_degree(s) == 1 && chain_of[s] == NONE);
            if let Some(s) = greedy {
                chains[c].push(s);
                chain_of[s] = c;
            }
        }
    }

    stats.k_c = chains.len();
    stats.k_p = stats.k_c + stats.c;
    (ChainDecomposition::from_chains_unchecked(n, chains), stats)
}
