//! `obnox`: command-line front end for the committee-selection solvers.
//!
//! Exit codes: 0 solved, 2 certified infeasible at the given t, 3 an
//! enumeration cap was hit, 1 anything else (usage, input, mismatch).

mod args;
mod bench;
mod gen;

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use log::info;

use args::{Cli, Command, SolveArgs, VerifyArgs};
use obnox_core::dispatch::{solve, Algorithm, SolveOptions};
use obnox_core::io::{emit_result, parse_ground_truth, parse_instance};
use obnox_core::metric::{approx_ge, objective};
use obnox_core::{Instance, Status};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_CAP: u8 = 3;

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn load_instance(path: &Path, validate_triangle: bool) -> Result<Instance> {
    let text = read_input(path)?;
    parse_instance(&text, validate_triangle).with_context(|| format!("parsing {}", path.display()))
}

fn run_solver(algo: Algorithm, a: &SolveArgs) -> Result<u8> {
    match (algo, a.epsilon) {
        (Algorithm::Fptas, None) => bail!("fpt_as: --epsilon is required"),
        (Algorithm::Fptas, Some(_)) => {}
        (_, Some(_)) => bail!("--epsilon is only accepted by the fptas command"),
        _ => {}
    }
    let inst = load_instance(&a.input, a.validate_triangle)?;
    let opts = SolveOptions {
        t: a.t.or(inst.threshold()),
        epsilon: a.epsilon,
        oracle_cap: a.oracle_cap,
        enum_cap: a.enum_cap,
    };
    let mut res = solve(&inst, algo, &opts)?;
    if a.deterministic {
        res.wall_time_ms = 0;
    }
    info!("{}: status {}, value {:?}", res.algorithm, res.status, res.value);
    write_output(a.output.as_deref(), &emit_result(&inst, &res)?)?;
    Ok(if res.status == Status::Infeasible {
        EXIT_INFEASIBLE
    } else {
        EXIT_OK
    })
}

fn run_verify(a: &VerifyArgs) -> Result<u8> {
    let algo: Algorithm = a.algorithm.parse().map_err(anyhow::Error::msg)?;
    let inst = load_instance(&a.input, false)?;
    let truth = parse_ground_truth(&read_input(&a.truth)?).with_context(|| format!("parsing {}", a.truth.display()))?;
    let t = truth.threshold_t;
    if let Some(w) = &truth.witness {
        let value = objective(&inst, w).context("evaluating the sidecar witness")?;
        if !approx_ge(value, t) {
            bail!("sidecar witness {w:?} reaches only {value} < t = {t}");
        }
    }
    let opts = SolveOptions {
        t: Some(t),
        epsilon: a.epsilon,
        oracle_cap: a.oracle_cap,
        enum_cap: a.enum_cap,
    };
    let res = solve(&inst, algo, &opts)?;
    // an approximate committee is consistent with either answer
    let agree = match res.status {
        Status::Feasible => truth.answer,
        Status::Infeasible => !truth.answer,
        Status::Approx => true,
    };
    println!(
        "verify: {} says {} at t = {t}, ground truth {}: {}",
        res.algorithm,
        res.status,
        if truth.answer { "feasible" } else { "infeasible" },
        if agree { "agree" } else { "MISMATCH" }
    );
    Ok(if agree { EXIT_OK } else { EXIT_ERROR })
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(n) = cli.threads {
        if n == 0 {
            bail!("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("building the worker pool")?;
    }
    match &cli.command {
        Command::Solve(a) => run_solver(Algorithm::Auto, a),
        Command::Oracle(a) => run_solver(Algorithm::Oracle, a),
        Command::Planar(a) => run_solver(Algorithm::Planar, a),
        Command::Quarter(a) => run_solver(Algorithm::Quarter, a),
        Command::Fptas(a) => run_solver(Algorithm::Fptas, a),
        Command::LambdaK(a) => run_solver(Algorithm::LambdaK, a),
        Command::Gen(a) => gen::run(a),
        Command::Bench(a) => bench::run(a),
        Command::Verify(a) => run_verify(a),
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    let capped = err
        .chain()
        .filter_map(|e| e.downcast_ref::<obnox_core::Error>())
        .any(|e| e.is_cap_exceeded());
    if capped {
        EXIT_CAP
    } else {
        EXIT_ERROR
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
