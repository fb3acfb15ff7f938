//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the index, the reduction or the matching code.

#![allow(dead_code)]

use chainreach::{ChainDecomposition, Dag, GeneratorConfig, ModelKind};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random DAG from one of the four models, with vertex ids shuffled so that
/// topological order and id order differ.
pub fn random_dag(model: ModelKind, n: usize, degree: f64, seed: u64) -> Dag {
    let model = if model == ModelKind::Ba && n < 2 {
        ModelKind::Er
    } else {
        model
    };
    let paths = (n / 4).max(1);
    let dag = GeneratorConfig::for_degree(model, n, degree, seed, 0.3, paths)
        .generate()
        .expect("valid generator config");
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9));
    dag.relabeled(&perm).expect("permutation")
}

/// All-pairs reachability by one DFS per source over the raw edge list.
pub fn reach_matrix(dag: &Dag) -> Vec<Vec<bool>> {
    let n = dag.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for (u, v) in dag.edges() {
        adj[u].push(v);
    }
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen
        })
        .collect()
}

/// Size of a maximum antichain by exhaustive search over vertex subsets.
pub fn max_antichain(dag: &Dag) -> usize {
    let n = dag.vertex_count();
    assert!(n <= 20, "exhaustive antichain search is exponential");
    let r = reach_matrix(dag);
    let comparable: Vec<u32> = (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| v != u && (r[u][v] || r[v][u]))
                .fold(0u32, |m, v| m | (1 << v))
        })
        .collect();
    fn grow(v: usize, chosen: u32, size: usize, n: usize, comparable: &[u32], best: &mut usize) {
        if size + (n - v) <= *best {
            return;
        }
        if v == n {
            *best = size;
            return;
        }
        if comparable[v] & chosen == 0 {
            grow(v + 1, chosen | (1 << v), size + 1, n, comparable, best);
        }
        grow(v + 1, chosen, size, n, comparable, best);
    }
    let mut best = 0;
    grow(0, 0, 0, n, &comparable, &mut best);
    best
}

/// Checks that `dec` partitions the vertices and that consecutive chain
/// members are connected by a path (by an edge when `paths_only`).
pub fn check_chains(dag: &Dag, dec: &ChainDecomposition, paths_only: bool) -> Result<(), String> {
    let n = dag.vertex_count();
    let r = reach_matrix(dag);
    let mut covered = vec![0u32; n];
    for (c, chain) in dec.chains().iter().enumerate() {
        if chain.is_empty() {
            return Err(format!("chain {c} empty"));
        }
        for (i, &v) in chain.iter().enumerate() {
            covered[v] += 1;
            if dec.chain_of(v) != c || dec.pos_of(v) as usize != i + 1 {
                return Err(format!("labels of {v} disagree with chain list"));
            }
        }
        for w in chain.windows(2) {
            let ok = if paths_only {
                dag.successors(w[0]).contains(&w[1])
            } else {
                r[w[0]][w[1]] && w[0] != w[1]
            };
            if !ok {
                return Err(format!("chain {c}: {} does not lead to {}", w[0], w[1]));
            }
        }
    }
    match covered.iter().position(|&k| k != 1) {
        Some(v) => Err(format!("vertex {v} covered {} times", covered[v])),
        None => Ok(()),
    }
}

/// Pairs `(tail of chain a, head of chain b)`, `a != b`, where the tail
/// reaches the head.
pub fn remaining_concatenations(dag: &Dag, dec: &ChainDecomposition) -> Vec<(usize, usize)> {
    let r = reach_matrix(dag);
    let mut found = Vec::new();
    for (a, ca) in dec.chains().iter().enumerate() {
        for (b, cb) in dec.chains().iter().enumerate() {
            let (tail, head) = (*ca.last().unwrap(), cb[0]);
            if a != b && r[tail][head] {
                found.push((tail, head));
            }
        }
    }
    found
}

/// Whether `(u, v)` is transitive: some other out-neighbour of `u` reaches
/// `v`.
pub fn is_transitive(dag: &Dag, r: &[Vec<bool>], u: usize, v: usize) -> bool {
    dag.successors(u).iter().any(|&w| w != v && r[w][v])
}
