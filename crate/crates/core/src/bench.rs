//! Experiment harness: generate a grid of random DAGs, decompose, index,
//! time the DFS closure baseline and optionally the width computation, one
//! [`BenchRecord`] per grid cell.

use std::collections::BTreeMap;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use crate::decomposition::nh_conc;
use crate::error::Result;
use crate::generators::{GeneratorConfig, ModelKind};
use crate::index::ReachIndex;
use crate::reduction::{reduce, reduce_outgoing};
use crate::width::fulkerson_width;

pub const BENCH_HEADER: [&str; 21] = [
    "model",
    "n",
    "avg_degree",
    "seed",
    "edges",
    "k_c",
    "width",
    "e_tr",
    "e_red",
    "tr_ratio",
    "red_out_remaining",
    "red_remaining",
    "decomp_ms",
    "index_ms",
    "total_ms",
    "tc_baseline_ms",
    "index_phase_ms",
    "bipartite_ms",
    "matching_ms",
    "reduce_first",
    "error",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchCell {
    pub model: ModelKind,
    pub n: usize,
    pub avg_degree: f64,
    pub seed: u64,
    pub ws_b: f64,
    pub pb_paths: usize,
    pub with_width: bool,
    pub reduce_first: bool,
}

impl BenchCell {
    pub fn config(&self) -> GeneratorConfig {
        GeneratorConfig::for_degree(
            self.model,
            self.n,
            self.avg_degree,
            self.seed,
            self.ws_b,
            self.pb_paths,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchGrid {
    pub models: Vec<ModelKind>,
    pub sizes: Vec<usize>,
    pub degrees: Vec<f64>,
    pub seeds: Vec<u64>,
    pub ws_b: f64,
    pub pb_paths: usize,
    pub with_width: bool,
    pub reduce_first: bool,
}

impl Default for BenchGrid {
    /// Desk-scale grid: all models, `n = 2000`, degrees 5 to 40, two seeds.
    fn default() -> Self {
        BenchGrid {
            models: ModelKind::ALL.to_vec(),
            sizes: vec![2000],
            degrees: vec![5.0, 10.0, 20.0, 40.0],
            seeds: vec![1, 2],
            ws_b: 0.3,
            pb_paths: 100,
            with_width: false,
            reduce_first: false,
        }
    }
}

impl BenchGrid {
    pub fn cells(&self) -> Vec<BenchCell> {
        let mut cells = Vec::new();
        for &model in &self.models {
            for &n in &self.sizes {
                for &avg_degree in &self.degrees {
                    for &seed in &self.seeds {
                        cells.push(BenchCell {
                            model,
                            n,
                            avg_degree,
                            seed,
                            ws_b: self.ws_b,
                            pb_paths: self.pb_paths,
                            with_width: self.with_width,
                            reduce_first: self.reduce_first,
                        });
                    }
                }
            }
        }
        cells
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WidthPhases {
    pub width: usize,
    pub index: Duration,
    pub bipartite: Duration,
    pub matching: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub cell: BenchCell,
    pub edges: usize,
    pub k_c: usize,
    pub e_tr: usize,
    pub e_red: usize,
    /// Edges left by the outgoing-only reduction.
    pub red_out_remaining: usize,
    /// Edges left by the outgoing + incoming reduction.
    pub red_remaining: usize,
    /// Adjacency sort plus chain decomposition.
    pub decomp: Duration,
    pub index: Duration,
    /// Decomposition, optional reduction and index build.
    pub total: Duration,
    pub tc_baseline: Duration,
    pub width: Option<WidthPhases>,
    pub error: Option<String>,
}

impl BenchRecord {
    fn failed(cell: BenchCell, error: String) -> Self {
        BenchRecord {
            cell,
            edges: 0,
            k_c: 0,
            e_tr: 0,
            e_red: 0,
            red_out_remaining: 0,
            red_remaining: 0,
            decomp: Duration::ZERO,
            index: Duration::ZERO,
            total: Duration::ZERO,
            tc_baseline: Duration::ZERO,
            width: None,
            error: Some(error),
        }
    }

    /// `e_tr / (e_tr + e_red)`, zero for an edgeless graph.
    pub fn tr_ratio(&self) -> f64 {
        let total = self.e_tr + self.e_red;
        if total == 0 {
            0.0
        } else {
            self.e_tr as f64 / total as f64
        }
    }

    pub fn csv_row(&self) -> Vec<String> {
        let ms = |d: Duration| d.as_millis().to_string();
        let opt_ms = |f: fn(&WidthPhases) -> Duration| {
            self.width.as_ref().map(|w| ms(f(w))).unwrap_or_default()
        };
        vec![
            self.cell.model.to_string(),
            self.cell.n.to_string(),
            self.cell.avg_degree.to_string(),
            self.cell.seed.to_string(),
            self.edges.to_string(),
            self.k_c.to_string(),
            self.width.map(|w| w.width.to_string()).unwrap_or_default(),
            self.e_tr.to_string(),
            self.e_red.to_string(),
            format!("{:.4}", self.tr_ratio()),
            self.red_out_remaining.to_string(),
            self.red_remaining.to_string(),
            ms(self.decomp),
            ms(self.index),
            ms(self.total),
            ms(self.tc_baseline),
            opt_ms(|w| w.index),
            opt_ms(|w| w.bipartite),
            opt_ms(|w| w.matching),
            self.cell.reduce_first.to_string(),
            self.error.clone().unwrap_or_default(),
        ]
    }
}

/// Runs one grid cell. Failures, panics included, are captured in the
/// record's `error` field.
pub fn run_cell(cell: BenchCell) -> BenchRecord {
    match panic::catch_unwind(AssertUnwindSafe(|| try_run_cell(cell))) {
        Ok(Ok(record)) => record,
        Ok(Err(e)) => BenchRecord::failed(cell, e.to_string()),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            BenchRecord::failed(cell, format!("panic: {msg}"))
        }
    }
}

fn try_run_cell(cell: BenchCell) -> Result<BenchRecord> {
    let dag = cell.config().generate()?;
    let edges = dag.edge_count();

    let t0 = Instant::now();
    let sorted = dag.sort_adjacency_lists();
    let (dec, _) = nh_conc(&sorted);
    let decomp = t0.elapsed();

    let (_, out_stats) = reduce_outgoing(&sorted, &dec);
    let t1 = Instant::now();
    let (reduced, red_stats) = reduce(&sorted, &dec);
    let reduce_time = t1.elapsed();

    let t2 = Instant::now();
    let ix = ReachIndex::build(if cell.reduce_first { &reduced } else { &sorted }, &dec)?;
    let index = t2.elapsed();
    let (mut e_tr, e_red) = ix.edge_classification();
    if cell.reduce_first {
        // removed edges are transitive and the reduction keeps every
        // non-transitive edge
        e_tr += red_stats.removed();
    }
    let total = decomp
        + index
        + if cell.reduce_first {
            reduce_time
        } else {
            Duration::ZERO
        };

    let t3 = Instant::now();
    let tc = dag.transitive_closure_baseline();
    let tc_baseline = t3.elapsed();
    drop(tc);

    let width = cell.with_width.then(|| {
        let w = fulkerson_width(&dag);
        WidthPhases {
            width: w.width,
            index: w.timings.index,
            bipartite: w.timings.bipartite,
            matching: w.timings.matching,
        }
    });

    Ok(BenchRecord {
        cell,
        edges,
        k_c: dec.chain_count(),
        e_tr,
        e_red,
        red_out_remaining: out_stats.remaining,
        red_remaining: red_stats.remaining,
        decomp,
        index,
        total,
        tc_baseline,
        width,
        error: None,
    })
}

/// Runs every cell of `grid` in order. `progress` is called after each cell.
pub fn run_bench<F>(grid: &BenchGrid, mut progress: F) -> Vec<BenchRecord>
where
    F: FnMut(&BenchRecord),
{
    grid.cells()
        .into_iter()
        .map(|cell| {
            let record = run_cell(cell);
            progress(&record);
            record
        })
        .collect()
}

pub fn write_bench_csv<W: Write>(w: W, records: &[BenchRecord]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(BENCH_HEADER)?;
    for r in records {
        out.write_record(r.csv_row())?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Index build time and DFS-closure time per average degree (mean over
/// seeds, fractional milliseconds), as CSV `avg_degree,index_ms,tc_baseline_ms`.
/// Failed records are skipped; an empty input yields an empty string.
pub fn emit_plot_data(records: &[BenchRecord]) -> String {
    let mut series: BTreeMap<u64, (f64, Duration, Duration, u32)> = BTreeMap::new();
    for r in records.iter().filter(|r| r.error.is_none()) {
        let entry = series.entry(r.cell.avg_degree.to_bits()).or_insert((
            r.cell.avg_degree,
            Duration::ZERO,
            Duration::ZERO,
            0,
        ));
        entry.1 += r.index;
        entry.2 += r.tc_baseline;
        entry.3 += 1;
    }
    if series.is_empty() {
        return String::new();
    }
    let mut rows: Vec<_> = series.into_values().collect();
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    let ms = |d: Duration, k: u32| d.as_secs_f64() * 1e3 / f64::from(k);
    let mut out = String::from("avg_degree,index_ms,tc_baseline_ms\n");
    for (degree, index, tc, k) in rows {
        out.push_str(&format!("{degree},{:.3},{:.3}\n", ms(index, k), ms(tc, k)));
    }
    out
}
