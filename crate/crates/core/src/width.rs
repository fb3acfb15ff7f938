//! DAG width and a minimum chain decomposition by Fulkerson's method: a
//! maximum matching in the bipartite graph of the reachability relation,
//! with the relation read from a [`ReachIndex`] instead of a closure matrix.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use crate::decomposition::{nh_conc, ChainDecomposition};
use crate::graph::Dag;
use crate::index::ReachIndex;

const NONE: u32 = u32::MAX;

/// Bipartite graph with `n` vertices on each side, stored as x-side
/// adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    adj: Vec<Vec<u32>>,
}

impl BipartiteGraph {
    pub fn from_adjacency(adj: Vec<Vec<u32>>) -> Self {
        let n = adj.len();
        assert!(
            adj.iter().flatten().all(|&y| (y as usize) < n),
            "y-vertex out of range"
        );
        BipartiteGraph { adj }
    }

    /// Edge `(x_i, y_j)` for every `i != j` with `j` reachable from `i`,
    /// found by `n^2` index queries.
    pub fn from_index(ix: &ReachIndex) -> Self {
        let n = ix.vertex_count();
        let adj = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && ix.reaches(i, j))
                    .map(|j| j as u32)
                    .collect()
            })
            .collect();
        BipartiteGraph { adj }
    }

    pub fn side_len(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, x: usize) -> &[u32] {
        &self.adj[x]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    match_x: Vec<u32>,
    match_y: Vec<u32>,
    size: usize,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn partner_of_x(&self, x: usize) -> Option<usize> {
        (self.match_x[x] != NONE).then(|| self.match_x[x] as usize)
    }

    pub fn partner_of_y(&self, y: usize) -> Option<usize> {
        (self.match_y[y] != NONE).then(|| self.match_y[y] as usize)
    }

    /// Whether an alternating path joins a free x-vertex to a free y-vertex
    /// in `b`, i.e. whether the matching could be enlarged.
    pub fn has_augmenting_path(&self, b: &BipartiteGraph) -> bool {
        let n = b.side_len();
        let mut seen_x = vec![false; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&x| self.match_x[x] == NONE).collect();
        for &x in &queue {
            seen_x[x] = true;
        }
        while let Some(x) = queue.pop_front() {
            for &y in b.neighbors(x) {
                if self.match_x[x] == y {
                    continue;
                }
                match self.match_y[y as usize] {
                    NONE => return true,
                    x2 if !seen_x[x2 as usize] => {
                        seen_x[x2 as usize] = true;
                        queue.push_back(x2 as usize);
                    }
                    _ => {}
                }
            }
        }
        false
    }
}

/// Maximum-cardinality matching by Hopcroft–Karp: alternate a layered BFS
/// from all free x-vertices with vertex-disjoint shortest augmenting paths
/// found by DFS, `O(|E| sqrt(n))`.
pub fn hopcroft_karp(b: &BipartiteGraph) -> Matching {
    const INF: u32 = u32::MAX;
    let n = b.side_len();
    let mut match_x = vec![NONE; n];
    let mut match_y = vec![NONE; n];
    let mut dist = vec![INF; n];
    let mut cursor = vec![0usize; n];
    let mut queue = VecDeque::new();
    let mut size = 0;
    // (x, y used to leave x) along the current DFS branch
    let mut stack: Vec<(u32, u32)> = Vec::new();

    loop {
        queue.clear();
        for x in 0..n {
            if match_x[x] == NONE {
                dist[x] = 0;
                queue.push_back(x);
            } else {
                dist[x] = INF;
            }
        }
        let mut found = false;
        while let Some(x) = queue.pop_front() {
            for &y in &b.adj[x] {
                let x2 = match_y[y as usize];
                if x2 == NONE {
                    found = true;
                } else if dist[x2 as usize] == INF {
                    dist[x2 as usize] = dist[x] + 1;
                    queue.push_back(x2 as usize);
                }
            }
        }
        if !found {
            break;
        }

        cursor.fill(0);
        for root in 0..n {
            if match_x[root] != NONE {
                continue;
            }
            stack.clear();
            stack.push((root as u32, NONE));
            while let Some(&(x, _)) = stack.last() {
                let x = x as usize;
                let adj = &b.adj[x];
                let mut step = None;
                while cursor[x] < adj.len() {
                    let y = adj[cursor[x]];
                    cursor[x] += 1;
                    let x2 = match_y[y as usize];
                    if x2 == NONE || dist[x2 as usize] == dist[x] + 1 {
                        step = Some((y, x2));
                        break;
                    }
                }
                match step {
                    Some((y, NONE)) => {
                        // augment along the branch
                        stack.last_mut().expect("non-empty").1 = y;
                        for &(ax, ay) in &stack {
                            match_x[ax as usize] = ay;
                            match_y[ay as usize] = ax;
                        }
                        size += 1;
                        break;
                    }
                    Some((y, x2)) => {
                        stack.last_mut().expect("non-empty").1 = y;
                        stack.push((x2, NONE));
                    }
                    None => {
                        dist[x] = INF;
                        stack.pop();
                    }
                }
            }
        }
    }

    Matching {
        match_x,
        match_y,
        size,
    }
}

/// Wall-clock time of each phase of [`fulkerson_width`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WidthTimings {
    /// Adjacency sort, heuristic decomposition and index build.
    pub index: Duration,
    pub bipartite: Duration,
    pub matching: Duration,
}

impl WidthTimings {
    pub fn total(&self) -> Duration {
        self.index + self.bipartite + self.matching
    }
}

#[derive(Debug, Clone)]
pub struct WidthResult {
    pub width: usize,
    /// A decomposition into exactly `width` chains.
    pub chains: ChainDecomposition,
    /// Chain count of the heuristic decomposition used for the index.
    pub heuristic_chains: usize,
    pub matching_size: usize,
    pub timings: WidthTimings,
}

/// Width of `dag` as `n - |M|` for a maximum matching `M` of the
/// reachability bipartite graph, together with a minimum chain cover.
pub fn fulkerson_width(dag: &Dag) -> WidthResult {
    let n = dag.vertex_count();

    let t0 = Instant::now();
    let sorted = dag.sort_adjacency_lists();
    let (heuristic, _) = nh_conc(&sorted);
    let ix = ReachIndex::build(&sorted, &heuristic).expect("adjacency lists were just sorted");
    let t1 = Instant::now();
    let b = BipartiteGraph::from_index(&ix);
    let t2 = Instant::now();
    let m = hopcroft_karp(&b);
    let t3 = Instant::now();

    let chains = chains_from_matching(dag, &m);
    debug_assert_eq!(chains.chain_count(), n - m.size());
    WidthResult {
        width: n - m.size(),
        chains,
        heuristic_chains: heuristic.chain_count(),
        matching_size: m.size(),
        timings: WidthTimings {
            index: t1 - t0,
            bipartite: t2 - t1,
            matching: t3 - t2,
        },
    }
}

/// A matched pair `(x_i, y_j)` makes `j` the chain successor of `i`. Chains
/// start at vertices unmatched on the y-side and are listed by the
/// topological rank of their first vertex.
fn chains_from_matching(dag: &Dag, m: &Matching) -> ChainDecomposition {
    let n = dag.vertex_count();
    let chains = dag
        .topo_order()
        .iter()
        .filter(|&&v| m.partner_of_y(v).is_none())
        .map(|&head| {
            let mut chain = vec![head];
            let mut v = head;
            while let Some(next) = m.partner_of_x(v) {
                chain.push(next);
                v = next;
            }
            chain
        })
        .collect();
    ChainDecomposition::from_chains_unchecked(n, chains)
}
