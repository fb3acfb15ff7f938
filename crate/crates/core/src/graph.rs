//! Directed graphs, SCC condensation and the immutable [`Dag`] type shared by
//! every other module.
//!
//! Vertex ids are dense `usize` values in `[0, n)`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A loaded directed graph, possibly cyclic. Self-loops and duplicate edges
/// are dropped on construction and the counts kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    dropped_self_loops: usize,
    dropped_duplicates: usize,
}

impl Digraph {
    /// Builds a digraph from an edge list. The first occurrence of each edge
    /// is kept, in input order.
    pub fn from_edge_list<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        let mut dropped_self_loops = 0;
        let mut dropped_duplicates = 0;
        for (i, (u, v)) in edges.into_iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::EdgeOutOfRange {
                        edge: i + 1,
                        vertex: x,
                        n,
                    });
                }
            }
            if u == v {
                dropped_self_loops += 1;
            } else if !seen.insert((u, v)) {
                dropped_duplicates += 1;
            } else {
                kept.push((u, v));
            }
        }
        Ok(Digraph {
            n,
            edges: kept,
            dropped_self_loops,
            dropped_duplicates,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn dropped_self_loops(&self) -> usize {
        self.dropped_self_loops
    }

    pub fn dropped_duplicates(&self) -> usize {
        self.dropped_duplicates
    }

    fn out_lists(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            out[u].push(v);
        }
        out
    }

    /// Collapses every strongly connected component into a supernode
    /// (iterative Tarjan, linear time).
    pub fn condense_sccs(&self) -> CondensationResult {
        const UNVISITED: usize = usize::MAX;
        let n = self.n;
        let out = self.out_lists();
        let mut index = vec![UNVISITED; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut component_of = vec![UNVISITED; n];
        let mut component_count = 0;
        let mut next_index = 0;
        // (vertex, next edge offset)
        let mut calls: Vec<(usize, usize)> = Vec::new();

        for root in 0..n {
            if index[root] != UNVISITED {
                continue;
            }
            calls.push((root, 0));
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut pos)) = calls.last_mut() {
                if let Some(&w) = out[v].get(*pos) {
                    *pos += 1;
                    if index[w] == UNVISITED {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        calls.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                calls.pop();
                if let Some(&(parent, _)) = calls.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        component_of[w] = component_count;
                        if w == v {
                            break;
                        }
                    }
                    component_count += 1;
                }
            }
        }

        let cross = self.edges.iter().filter_map(|&(u, v)| {
            let (a, b) = (component_of[u], component_of[v]);
            (a != b).then_some((a, b))
        });
        let condensed =
            Digraph::from_edge_list(component_count, cross).expect("component ids are in range");
        let dag = condensed
            .to_dag()
            .expect("condensation of a digraph is acyclic");
        CondensationResult {
            dag,
            component_of,
            component_count,
        }
    }

    /// Topologically sorts the graph. Among simultaneously available
    /// vertices the lowest id goes first.
    pub fn to_dag(&self) -> Result<Dag> {
        let n = self.n;
        let out = self.out_lists();
        let mut indeg = vec![0usize; n];
        for &(_, v) in &self.edges {
            indeg[v] += 1;
        }
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(Reverse(w));
                }
            }
        }
        if order.len() < n {
            return Err(Error::Cycle {
                witness: self.cycle_witness(&indeg),
            });
        }
        Ok(Dag::from_out_adj(out, order))
    }

    /// Every vertex left with positive residual in-degree after Kahn's sweep
    /// has a predecessor that is also left over, so walking predecessors must
    /// revisit a vertex, and that vertex is on a cycle.
    fn cycle_witness(&self, residual_indeg: &[usize]) -> usize {
        let mut pred = vec![usize::MAX; self.n];
        for &(u, v) in &self.edges {
            if residual_indeg[u] > 0 && residual_indeg[v] > 0 {
                pred[v] = u;
            }
        }
        let mut v = (0..self.n)
            .find(|&v| residual_indeg[v] > 0)
            .expect("an unsorted vertex exists");
        let mut seen = vec![false; self.n];
        while !seen[v] {
            seen[v] = true;
            v = pred[v];
        }
        v
    }
}

/// Supernode DAG produced by [`Digraph::condense_sccs`].
#[derive(Debug, Clone)]
pub struct CondensationResult {
    pub dag: Dag,
    pub component_of: Vec<usize>,
    pub component_count: usize,
}

/// Immutable directed acyclic graph with forward and reverse adjacency and a
/// topological rank per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    topo_order: Vec<usize>,
    topo_rank: Vec<usize>,
    edge_count: usize,
}

impl Dag {
    /// Assembles a DAG from successor lists and a topological order of the
    /// vertices. Predecessor lists come out ascending in topological rank.
    pub(crate) fn from_out_adj(out_adj: Vec<Vec<usize>>, topo_order: Vec<usize>) -> Self {
        let n = out_adj.len();
        debug_assert_eq!(topo_order.len(), n);
        let mut topo_rank = vec![0; n];
        for (r, &v) in topo_order.iter().enumerate() {
            topo_rank[v] = r;
        }
        let mut in_adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for &u in &topo_order {
            for &v in &out_adj[u] {
                debug_assert!(topo_rank[u] < topo_rank[v]);
                in_adj[v].push(u);
                edge_count += 1;
            }
        }
        Dag {
            out_adj,
            in_adj,
            topo_order,
            topo_rank,
            edge_count,
        }
    }

    /// Inverse of [`Dag::from_out_adj`]: successor lists are rebuilt
    /// ascending in topological rank.
    pub(crate) fn from_in_adj(in_adj: Vec<Vec<usize>>, topo_order: Vec<usize>) -> Self {
        let n = in_adj.len();
        let mut out_adj = vec![Vec::new(); n];
        for &v in &topo_order {
            for &u in &in_adj[v] {
                out_adj[u].push(v);
            }
        }
        let mut dag = Dag::from_out_adj(out_adj, topo_order);
        dag.in_adj = in_adj;
        dag
    }

    /// Builds a DAG directly from an edge list, rejecting cycles.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Digraph::from_edge_list(n, edges)?.to_dag()
    }

    pub fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn rank(&self, v: usize) -> usize {
        self.topo_rank[v]
    }

    pub fn topo_rank(&self) -> &[usize] {
        &self.topo_rank
    }

    pub fn topo_order(&self) -> &[usize] {
        &self.topo_order
    }

    /// All edges, grouped by source in vertex-id order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, succ)| succ.iter().map(move |&v| (u, v)))
    }

    /// Whether every successor list is strictly ascending in topological rank.
    pub fn has_sorted_adjacency(&self) -> bool {
        self.out_adj.iter().all(|succ| {
            succ.windows(2)
                .all(|w| self.topo_rank[w[0]] < self.topo_rank[w[1]])
        })
    }

    /// Returns a copy whose successor lists are ascending in topological
    /// rank, in linear time: sweeping vertices in reverse topological order
    /// and pushing each onto its predecessors' stacks leaves every stack
    /// with the lowest rank on top.
    pub fn sort_adjacency_lists(&self) -> Dag {
        let n = self.vertex_count();
        let mut stacks: Vec<Vec<usize>> = (0..n)
            .map(|v| Vec::with_capacity(self.out_adj[v].len()))
            .collect();
        for &v in self.topo_order.iter().rev() {
            for &s in &self.in_adj[v] {
                stacks[s].push(v);
            }
        }
        for stack in &mut stacks {
            // pop order == ascending rank
            stack.reverse();
        }
        Dag::from_out_adj(stacks, self.topo_order.clone())
    }

    /// Relabels vertex `v` as `perm[v]`. Handy for producing DAGs whose
    /// topological order differs from id order.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Dag> {
        let n = self.vertex_count();
        if perm.len() != n {
            return Err(Error::VertexOutOfRange {
                vertex: perm.len(),
                n,
            });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::VertexOutOfRange { vertex: p, n });
            }
        }
        Dag::from_edges(n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Vertices reachable from `s`, including `s`.
    pub fn dfs_reachable(&self, s: usize) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.vertex_count());
        self.dfs_into(s, &mut seen, &mut Vec::new());
        seen
    }

    fn dfs_into(&self, s: usize, seen: &mut FixedBitSet, stack: &mut Vec<usize>) {
        seen.insert(s);
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &w in &self.out_adj[v] {
                if !seen.put(w) {
                    stack.push(w);
                }
            }
        }
    }

    /// Transitive closure by one DFS per source vertex, `O(n * |E|)`.
    /// Rows are reflexive.
    pub fn transitive_closure_baseline(&self) -> ClosureMatrix {
        let n = self.vertex_count();
        let mut stack = Vec::new();
        let rows = (0..n)
            .map(|s| {
                let mut row = FixedBitSet::with_capacity(n);
                self.dfs_into(s, &mut row, &mut stack);
                row
            })
            .collect();
        ClosureMatrix { rows }
    }
}

/// Dense reachability relation stored as one bit-set row per source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureMatrix {
    rows: Vec<FixedBitSet>,
}

impl ClosureMatrix {
    pub(crate) fn from_rows(rows: Vec<FixedBitSet>) -> Self {
        ClosureMatrix { rows }
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn reaches(&self, s: usize, t: usize) -> bool {
        self.rows[s].contains(t)
    }

    pub fn row(&self, s: usize) -> &FixedBitSet {
        &self.rows[s]
    }

    /// Number of reachable pairs `(s, t)` with `s != t`.
    pub fn proper_pair_count(&self) -> usize {
        self.rows
            .iter()
            .enumerate()
            .map(|(s, row)| row.count_ones(..) - usize::from(row.contains(s)))
            .sum()
    }
}
