use std::fs::File;
use std::io;

use anyhow::{Context, Result};
use log::warn;

use crate::args::{BenchArgs, Suite};
use crate::{load_instance, EXIT_OK};
use obnox_core::dispatch::{solve, Algorithm, SolveOptions};
use obnox_core::generators::{gen_hitting_set, gen_random_euclidean, gen_random_graph, random_set_system, Lcg};
use obnox_core::oracle::oracle_optimize;
use obnox_core::Instance;

const COLUMNS: [&str; 11] = [
    "instance",
    "algorithm",
    "n_voters",
    "n_candidates",
    "k",
    "lambda",
    "epsilon",
    "value",
    "oracle_value",
    "ratio",
    "ms",
];

/// One instance of a seeded suite; sizes stay small enough for the oracle.
fn suite_instance(suite: Suite, seed: u64) -> Result<Instance> {
    let mut rng = Lcg::new(seed);
    let inst_seed = rng.next_u64();
    let inst = match suite {
        Suite::Planar => {
            let (nv, nc) = (rng.range(1, 12), rng.range(1, 8));
            let k = rng.range(1, nc.min(4));
            gen_random_euclidean(nv, nc, 2, k, 1, inst_seed)?
        }
        Suite::Quarter => {
            let (nv, nc) = (rng.range(1, 10), rng.range(1, 10));
            let k = rng.range(1, nc.min(4));
            gen_random_graph(nv, nc, k, 1, 0.3, inst_seed)?
        }
        Suite::Fptas => {
            let (nv, nc) = (rng.range(1, 10), rng.range(1, 12));
            let k = rng.range(1, nc.min(5));
            let lambda = rng.range(1, k.min(3));
            gen_random_euclidean(nv, nc, 2, k, lambda, inst_seed)?
        }
        Suite::LambdaK => {
            let (nv, nc) = (rng.range(1, 10), rng.range(1, 12));
            let k = rng.range(1, nc.min(5));
            gen_random_euclidean(nv, nc, 2, k, k, inst_seed)?
        }
        Suite::Hitting => {
            let universe = rng.range(1, 5);
            let sets = rng.range(1, 5);
            let k = rng.range(1, universe.min(3));
            let multiplicity = rng.range(1, k.min(2));
            let sys = random_set_system(&mut rng, universe, sets, k, multiplicity);
            gen_hitting_set(&sys)?.0
        }
    };
    Ok(inst)
}

/// Every solver that applies to the instance, with its epsilon if any.
fn runs_for(inst: &Instance, epsilons: &[f64]) -> Vec<(Algorithm, Option<f64>)> {
    let mut runs = Vec::new();
    if inst.lambda() == 1 {
        if inst.is_planar() {
            runs.push((Algorithm::Planar, None));
        }
        runs.push((Algorithm::Quarter, None));
    }
    if inst.lambda() == inst.k() {
        runs.push((Algorithm::LambdaK, None));
    }
    runs.extend(epsilons.iter().map(|&e| (Algorithm::Fptas, Some(e))));
    runs
}

fn cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn bench_one<W: io::Write>(out: &mut csv::Writer<W>, name: &str, inst: &Instance, a: &BenchArgs) -> Result<()> {
    let oracle_value = match oracle_optimize(inst, a.oracle_cap) {
        Ok(r) => Some(r.optimal_value),
        Err(e) if e.is_cap_exceeded() => None,
        Err(e) => return Err(e.into()),
    };
    for (algo, epsilon) in runs_for(inst, &a.epsilon) {
        let opts = SolveOptions {
            t: None,
            epsilon,
            oracle_cap: a.oracle_cap,
            enum_cap: a.enum_cap,
        };
        let (value, ms) = match solve(inst, algo, &opts) {
            Ok(r) => (r.value, if a.deterministic { 0 } else { r.wall_time_ms }),
            Err(e) if e.is_cap_exceeded() => {
                warn!("bench: {name} {algo}: {e}");
                (None, 0)
            }
            Err(e) => return Err(anyhow::Error::new(e).context(format!("{name}: {algo}"))),
        };
        let ratio = match (value, oracle_value) {
            (Some(v), Some(o)) if o > 0.0 => Some(v / o),
            (Some(v), Some(_)) => Some(if v == 0.0 { 1.0 } else { f64::INFINITY }),
            _ => None,
        };
        out.write_record([
            name.to_string(),
            algo.to_string(),
            inst.num_voters().to_string(),
            inst.num_candidates().to_string(),
            inst.k().to_string(),
            inst.lambda().to_string(),
            cell(epsilon),
            cell(value),
            cell(oracle_value),
            cell(ratio),
            ms.to_string(),
        ])?;
    }
    Ok(())
}

fn bench_all<W: io::Write>(w: W, a: &BenchArgs) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(COLUMNS)?;
    if a.inputs.is_empty() {
        for i in 0..a.count {
            let seed = a.seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
            let inst = suite_instance(a.suite, seed)?;
            bench_one(&mut out, &format!("{:?}-{seed}", a.suite).to_lowercase(), &inst, a)?;
        }
    } else {
        for path in &a.inputs {
            let inst = load_instance(path, false)?;
            bench_one(&mut out, &path.display().to_string(), &inst, a)?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn run(a: &BenchArgs) -> Result<u8> {
    match &a.output {
        Some(p) => bench_all(File::create(p).with_context(|| format!("creating {}", p.display()))?, a)?,
        None => bench_all(io::stdout().lock(), a)?,
    }
    Ok(EXIT_OK)
}
