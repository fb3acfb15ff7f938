//! Acceptance suite. Runs each criterion in turn, prints one PASS/FAIL line
//! per criterion and exits non-zero if any failed. Criteria run
//! sequentially so that timing comparisons are not disturbed by each other.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use chainreach::bench::{run_bench, BenchGrid};
use chainreach::{fulkerson_width, nh_conc, reduce, Dag, GeneratorConfig, ModelKind, ReachIndex};
use common::{is_transitive, max_antichain, random_dag, reach_matrix, remaining_concatenations};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn er(n: usize, degree: f64, seed: u64) -> Dag {
    GeneratorConfig::for_degree(ModelKind::Er, n, degree, seed, 0.3, 1)
        .generate()
        .expect("valid ER config")
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

fn time<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Random (model, n, degree, seed) cases, cycling through the models.
fn cases(count: usize, max_n: usize, seed: u64) -> impl Iterator<Item = Dag> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(move |i| {
        let model = ModelKind::ALL[i % 4];
        let n = rng.gen_range(1..=max_n);
        let degree = rng.gen_range(0.25..8.0);
        random_dag(model, n, degree, rng.gen())
    })
}

fn oracle_equivalence() -> Outcome {
    let mut pairs = 0usize;
    for (i, d) in cases(600, 60, 1).enumerate() {
        let d = d.sort_adjacency_lists();
        let (dec, _) = nh_conc(&d);
        let ix = ReachIndex::build(&d, &dec).map_err(|e| e.to_string())?;
        for s in 0..d.vertex_count() {
            let reach = d.dfs_reachable(s);
            for t in 0..d.vertex_count() {
                if ix.reaches(s, t) != reach.contains(t) {
                    return Err(format!("case {i}: query({s},{t}) disagrees with DFS"));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("600 DAGs, {pairs} pairs agree"))
}

fn width_exactness() -> Outcome {
    for (i, d) in cases(250, 12, 2).enumerate() {
        let (w, brute) = (fulkerson_width(&d).width, max_antichain(&d));
        if w != brute {
            return Err(format!("case {i}: width {w}, max antichain {brute}"));
        }
    }
    Ok("250 DAGs match exhaustive antichain search".into())
}

fn reduction_soundness() -> Outcome {
    let mut removed = 0;
    for (i, d) in cases(250, 40, 3).enumerate() {
        let d = d.sort_adjacency_lists();
        let (dec, _) = nh_conc(&d);
        let (red, stats) = reduce(&d, &dec);
        let original = reach_matrix(&d);
        if reach_matrix(&red) != original {
            return Err(format!("case {i}: closure changed"));
        }
        for (u, v) in d.edges() {
            if !red.successors(u).contains(&v) && !is_transitive(&d, &original, u, v) {
                return Err(format!("case {i}: removed non-transitive edge ({u},{v})"));
            }
        }
        let k = dec.chain_count();
        if (0..d.vertex_count()).any(|v| red.out_degree(v) > k || red.in_degree(v) > k) {
            return Err(format!("case {i}: degree above k_c={k} after reduction"));
        }
        removed += stats.removed();
    }
    Ok(format!("250 DAGs, {removed} edges removed, all transitive"))
}

fn reduced_edge_bound() -> Outcome {
    let grid = BenchGrid {
        seeds: vec![1, 2, 3],
        ..BenchGrid::default()
    };
    let records = run_bench(&grid, |_| {});
    let mut worst: f64 = 0.0;
    for r in &records {
        if let Some(e) = &r.error {
            return Err(format!(
                "{} n={} d={}: {e}",
                r.cell.model, r.cell.n, r.cell.avg_degree
            ));
        }
        let bound = r.k_c * r.cell.n;
        if r.e_red > bound {
            return Err(format!(
                "{} d={} seed={}: e_red {} > k_c*n {bound}",
                r.cell.model, r.cell.avg_degree, r.cell.seed, r.e_red
            ));
        }
        worst = worst.max(r.e_red as f64 / bound as f64);
    }
    Ok(format!(
        "{} graphs, max e_red/(k_c*n) = {worst:.3}",
        records.len()
    ))
}

fn heuristic_quality() -> Outcome {
    let mut ratios = Vec::new();
    for seed in 1..=5 {
        let w = fulkerson_width(&er(2000, 10.0, seed));
        let ratio = w.heuristic_chains as f64 / w.width as f64;
        ratios.push(format!("{}/{}", w.heuristic_chains, w.width));
        if ratio > 1.35 {
            return Err(format!("seed {seed}: k_c/width = {ratio:.3}"));
        }
    }
    Ok(format!("k_c/width per seed: {}", ratios.join(" ")))
}

fn transitive_fraction() -> Outcome {
    let mut report = Vec::new();
    let mut ok = true;
    for (degree, accept) in [
        (20.0, (|r: f64| (r - 0.75).abs() <= 0.05) as fn(f64) -> bool),
        (80.0, |r: f64| r >= 0.93),
    ] {
        let ratios: Vec<f64> = (1..=3)
            .map(|seed| {
                let d = er(5000, degree, seed).sort_adjacency_lists();
                let (dec, _) = nh_conc(&d);
                let ix = ReachIndex::build(&d, &dec).expect("sorted");
                ix.edge_classification().0 as f64 / d.edge_count() as f64
            })
            .collect();
        let passing = ratios.iter().filter(|&&r| accept(r)).count();
        ok &= passing >= 2;
        let shown: Vec<_> = ratios.iter().map(|r| format!("{r:.3}")).collect();
        report.push(format!("d={degree}: {}", shown.join(" ")));
    }
    let report = report.join("; ");
    if ok {
        Ok(report)
    } else {
        Err(report)
    }
}

fn index_vs_closure() -> Outcome {
    let d = er(5000, 80.0, 1);
    let mut index = Vec::new();
    let mut tc = Vec::new();
    for _ in 0..3 {
        let (_, t) = time(|| {
            let s = d.sort_adjacency_lists();
            let (dec, _) = nh_conc(&s);
            ReachIndex::build(&s, &dec).expect("sorted")
        });
        index.push(t);
        tc.push(time(|| d.transitive_closure_baseline()).1);
    }
    let (index, tc) = (median(index), median(tc));
    let msg = format!("index {:.1} ms, DFS closure {:.1} ms", ms(index), ms(tc));
    if index.as_secs_f64() <= 0.5 * tc.as_secs_f64() {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn decomposition_scaling() -> Outcome {
    let mut times = Vec::new();
    for n in [10_000, 20_000, 40_000] {
        let d = er(n, 10.0, 1);
        let runs = (0..5)
            .map(|_| {
                time(|| {
                    let s = d.sort_adjacency_lists();
                    nh_conc(&s)
                })
                .1
            })
            .collect();
        times.push(median(runs));
    }
    let growth: Vec<f64> = times
        .windows(2)
        .map(|w| w[1].as_secs_f64() / w[0].as_secs_f64())
        .collect();
    let msg = format!(
        "times {:.1}/{:.1}/{:.1} ms, growth {:.2}x {:.2}x",
        ms(times[0]),
        ms(times[1]),
        ms(times[2]),
        growth[0],
        growth[1]
    );
    if growth.iter().all(|&g| g <= 4.0) {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn width_law() -> Outcome {
    let n = 2000;
    let mut shown = Vec::new();
    let mut ok = true;
    for degree in [5.0, 10.0, 20.0, 40.0] {
        let w = fulkerson_width(&er(n, degree, 1)).width;
        let x = w as f64 * degree / n as f64;
        ok &= (0.6..=1.1).contains(&x);
        shown.push(format!("d={degree}: {x:.3}"));
    }
    let msg = format!("width*d/n {}", shown.join(", "));
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn phase_ordering() -> Outcome {
    let d = er(5000, 10.0, 1);
    let mut phases = [Vec::new(), Vec::new(), Vec::new()];
    for _ in 0..3 {
        let t = fulkerson_width(&d).timings;
        phases[0].push(t.index);
        phases[1].push(t.bipartite);
        phases[2].push(t.matching);
    }
    let [index, bipartite, matching] = phases.map(median);
    let msg = format!(
        "index {:.1} ms, bipartite {:.1} ms, matching {:.1} ms",
        ms(index),
        ms(bipartite),
        ms(matching)
    );
    if index < bipartite && bipartite < matching {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn concatenation_freeness() -> Outcome {
    for (i, d) in cases(400, 15, 11).enumerate() {
        let d = d.sort_adjacency_lists();
        let (dec, _) = nh_conc(&d);
        if let Some((tail, head)) = remaining_concatenations(&d, &dec).first() {
            return Err(format!("case {i}: tail {tail} reaches head {head}"));
        }
    }
    Ok("400 DAGs, no tail reaches another chain's head".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 11] = [
        ("oracle equivalence", oracle_equivalence),
        ("width exactness", width_exactness),
        ("reduction soundness", reduction_soundness),
        ("reduced edge bound", reduced_edge_bound),
        ("heuristic quality", heuristic_quality),
        ("transitive edge fraction", transitive_fraction),
        ("index vs DFS closure", index_vs_closure),
        ("decomposition scaling", decomposition_scaling),
        ("ER width law", width_law),
        ("width phase ordering", phase_ordering),
        ("concatenation freeness", concatenation_freeness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (outcome, elapsed) = time(check);
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} {:>2} {name}: {detail} [{:.1}s]",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
