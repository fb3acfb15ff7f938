//! Seeded random DAG generators: Erdős–Rényi, Barabási–Albert,
//! Watts–Strogatz and a path-based model.
//!
//! Each generator draws an undirected graph (or, for the path-based model,
//! forward pairs) and orients every edge from the lower to the higher id, so
//! outputs are acyclic and their topological rank equals the vertex id.
//!
//! All randomness comes from one `ChaCha8Rng` seeded with
//! `seed_from_u64(seed)`; identical configurations give identical edge lists.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Dag;

/// Name of the random stream, recorded in generated file headers.
pub const RNG_STREAM: &str = "chacha8";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    Er,
    Ba,
    Ws,
    Pb,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::Er, ModelKind::Ba, ModelKind::Ws, ModelKind::Pb];
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Er => "ER",
            ModelKind::Ba => "BA",
            ModelKind::Ws => "WS",
            ModelKind::Pb => "PB",
        })
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "er" => Ok(ModelKind::Er),
            "ba" => Ok(ModelKind::Ba),
            "ws" => Ok(ModelKind::Ws),
            "pb" => Ok(ModelKind::Pb),
            other => Err(Error::InvalidConfig(format!("unknown model `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// Every pair independently with probability `p`.
    Er { p: f64 },
    /// Each new vertex attaches to `m` distinct earlier vertices, chosen
    /// proportionally to degree.
    Ba { m: usize },
    /// Ring lattice with `k` nearest neighbours, each edge rewired with
    /// probability `b`.
    Ws { k: usize, b: f64 },
    /// `paths` random vertex-disjoint paths plus uniform forward edges up to
    /// `avg_degree * n` edges in total.
    Pb { paths: usize, avg_degree: f64 },
}

impl Model {
    pub fn kind(&self) -> ModelKind {
        match self {
            Model::Er { .. } => ModelKind::Er,
            Model::Ba { .. } => ModelKind::Ba,
            Model::Ws { .. } => ModelKind::Ws,
            Model::Pb { .. } => ModelKind::Pb,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    pub model: Model,
    pub n: usize,
    pub seed: u64,
}

impl GeneratorConfig {
    /// Parameters that yield about `degree * n` edges (average degree is
    /// edges per vertex): ER `p = 2d/(n-1)`, BA `m = d`, WS `k = 2d`.
    /// Values are clamped into their valid ranges for small `n`. `ws_b` and
    /// `pb_paths` are only used by their models.
    pub fn for_degree(
        kind: ModelKind,
        n: usize,
        degree: f64,
        seed: u64,
        ws_b: f64,
        pb_paths: usize,
    ) -> Self {
        let model = match kind {
            ModelKind::Er => {
                let p = if n < 2 {
                    0.0
                } else {
                    (2.0 * degree / (n - 1) as f64).min(1.0)
                };
                Model::Er { p }
            }
            ModelKind::Ba => Model::Ba {
                m: (degree.round() as usize).clamp(1, n.saturating_sub(1).max(1)),
            },
            ModelKind::Ws => {
                let max_k = if n == 0 { 0 } else { (n - 1) & !1 };
                Model::Ws {
                    k: (2 * degree.round() as usize).min(max_k),
                    b: ws_b,
                }
            }
            ModelKind::Pb => Model::Pb {
                paths: pb_paths.clamp(n.min(1), n),
                avg_degree: degree,
            },
        };
        GeneratorConfig { model, n, seed }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        match self.model {
            Model::Er { p } if !(0.0..=1.0).contains(&p) => bad(format!("p={p} not in [0,1]")),
            Model::Ba { m: 0 } => bad("m must be at least 1".into()),
            Model::Ba { m } if self.n <= m => bad(format!("n={} must exceed m={m}", self.n)),
            Model::Ws { k, .. } if k % 2 == 1 => bad(format!("k={k} must be even")),
            Model::Ws { k, .. } if k >= self.n && self.n > 0 => {
                bad(format!("k={k} must be below n={}", self.n))
            }
            Model::Ws { b, .. } if !(0.0..=1.0).contains(&b) => bad(format!("b={b} not in [0,1]")),
            Model::Pb { paths, .. } if paths > self.n => {
                bad(format!("paths={paths} exceeds n={}", self.n))
            }
            Model::Pb { paths, .. } if paths == 0 && self.n > 0 => {
                bad("paths must be at least 1".into())
            }
            Model::Pb { avg_degree, .. } if avg_degree.is_nan() || avg_degree < 0.0 => {
                bad(format!("avg_degree={avg_degree} must be non-negative"))
            }
            _ => Ok(()),
        }
    }

    pub fn generate(&self) -> Result<Dag> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let n = self.n;
        let edges = match self.model {
            Model::Er { p } => er_edges(n, p, &mut rng),
            Model::Ba { m } => ba_edges(n, m, &mut rng),
            Model::Ws { k, b } => ws_edges(n, k, b, &mut rng),
            Model::Pb { paths, avg_degree } => pb_edges(n, paths, avg_degree, &mut rng),
        };
        Dag::from_edges(n, edges)
    }

    /// One-line description for file headers.
    pub fn describe(&self) -> String {
        let params = match self.model {
            Model::Er { p } => format!("p={p}"),
            Model::Ba { m } => format!("m={m}"),
            Model::Ws { k, b } => format!("k={k} b={b}"),
            Model::Pb { paths, avg_degree } => format!("paths={paths} degree={avg_degree}"),
        };
        format!(
            "model={} n={} {params} seed={} rng={RNG_STREAM}",
            self.model.kind(),
            self.n,
            self.seed
        )
    }
}

pub fn gen_er(n: usize, p: f64, seed: u64) -> Result<Dag> {
    GeneratorConfig {
        model: Model::Er { p },
        n,
        seed,
    }
    .generate()
}

pub fn gen_ba(n: usize, m: usize, seed: u64) -> Result<Dag> {
    GeneratorConfig {
        model: Model::Ba { m },
        n,
        seed,
    }
    .generate()
}

pub fn gen_ws(n: usize, k: usize, b: f64, seed: u64) -> Result<Dag> {
    GeneratorConfig {
        model: Model::Ws { k, b },
        n,
        seed,
    }
    .generate()
}

pub fn gen_pb(n: usize, paths: usize, avg_degree: f64, seed: u64) -> Result<Dag> {
    GeneratorConfig {
        model: Model::Pb { paths, avg_degree },
        n,
        seed,
    }
    .generate()
}

/// Geometric skipping over the pairs `(w, v)`, `w < v`, in `O(n + |E|)`.
fn er_edges(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    if p <= 0.0 || n < 2 {
        return Vec::new();
    }
    if p >= 1.0 {
        return (0..n).flat_map(|v| (0..v).map(move |w| (w, v))).collect();
    }
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::new();
    let (mut v, mut w): (usize, i64) = (1, -1);
    while v < n {
        let r: f64 = rng.gen();
        w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    edges
}

/// Seeded with a clique on `m + 1` vertices; degree-proportional sampling
/// draws from a list holding every edge endpoint once per incidence.
fn ba_edges(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let seed_size = (m + 1).min(n);
    let mut edges: Vec<(usize, usize)> = (0..seed_size)
        .flat_map(|v| (0..v).map(move |w| (w, v)))
        .collect();
    let mut endpoints: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut picked = Vec::with_capacity(m);
    for u in seed_size..n {
        picked.clear();
        while picked.len() < m {
            let w = endpoints[rng.gen_range(0..endpoints.len())];
            if !picked.contains(&w) {
                picked.push(w);
            }
        }
        for &w in &picked {
            edges.push((w, u));
            endpoints.push(w);
            endpoints.push(u);
        }
    }
    edges
}

/// Ring lattice plus rewiring: each lattice edge `(u, v)` is replaced with
/// probability `b` by `(u, w)`, `w` uniform among vertices that are neither
/// `u` nor already adjacent to it.
fn ws_edges(n: usize, k: usize, b: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let key = |a: usize, c: usize| (a.min(c), a.max(c));
    let mut edges = BTreeSet::new();
    let mut degree = vec![0usize; n];
    for j in 1..=k / 2 {
        for u in 0..n {
            edges.insert(key(u, (u + j) % n));
            degree[u] += 1;
            degree[(u + j) % n] += 1;
        }
    }
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if rng.gen::<f64>() >= b || !edges.contains(&key(u, v)) {
                continue;
            }
            if degree[u] >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != u && !edges.contains(&key(u, w)) {
                    break w;
                }
            };
            edges.remove(&key(u, v));
            degree[v] -= 1;
            edges.insert(key(u, w));
            degree[w] += 1;
        }
    }
    edges.into_iter().collect()
}

/// Random permutation cut into `paths` segments at uniformly chosen
/// positions; each segment is chained in ascending id order. Extra uniform
/// forward pairs are then added until there are `avg_degree * n` edges.
fn pb_edges(n: usize, paths: usize, avg_degree: f64, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    if n == 0 {
        return Vec::new();
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut cuts: Vec<usize> = sample(rng, n - 1, paths - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(n);

    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut start = 0;
    for end in cuts {
        let segment = &mut perm[start..end];
        segment.sort_unstable();
        for w in segment.windows(2) {
            edges.push((w[0], w[1]));
            seen.insert((w[0], w[1]));
        }
        start = end;
    }

    let max_edges = n * (n - 1) / 2;
    let target = ((avg_degree * n as f64).round() as usize).min(max_edges);
    while edges.len() < target {
        let a = rng.gen_range(0..n);
        let c = rng.gen_range(0..n);
        if a == c {
            continue;
        }
        let e = (a.min(c), a.max(c));
        if seen.insert(e) {
            edges.push(e);
        }
    }
    edges
}
