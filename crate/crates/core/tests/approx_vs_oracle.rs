//! Approximation guarantees against exhaustive search on larger random
//! suites than the acceptance run uses.

use obnox_core::approx::quarter_approx;
use obnox_core::fptas::{fptas_decide, fptas_decide_detailed, fptas_optimize, Branch, FptasOptions};
use obnox_core::generators::{gen_random_euclidean, gen_random_graph, Lcg};
use obnox_core::metric::{approx_ge, critical_values, objective};
use obnox_core::oracle::{oracle_decide, oracle_optimize};
use obnox_core::Status;

const CAP: u128 = 10_000_000;

#[test]
fn fptas_is_sound_and_complete() {
    let mut rng = Lcg::new(77);
    let mut bad = Vec::new();
    for i in 0..200 {
        let nc = rng.range(2, 12);
        let k = rng.range(1, nc.min(5));
        let lambda = rng.range(1, k.min(3));
        let nv = rng.range(1, 12);
        let inst = gen_random_euclidean(nv, nc, 2, k, lambda, 1000 + i).unwrap();
        let opt = oracle_optimize(&inst, CAP).unwrap().optimal_value;
        for eps in [0.5, 0.25, 0.1] {
            let opts = FptasOptions::with_epsilon(eps);
            for &t in &critical_values(&inst) {
                let truth = oracle_decide(&inst, t, CAP).unwrap().is_some();
                match fptas_decide(&inst, t, &opts).unwrap() {
                    Some(c) if !approx_ge(objective(&inst, c.members()).unwrap(), (1.0 - eps) * t) => {
                        bad.push(format!("instance {i} eps {eps} t {t}: unsound"))
                    }
                    None if truth => bad.push(format!("instance {i} eps {eps} t {t}: incomplete")),
                    _ => {}
                }
            }
            let r = fptas_optimize(&inst, &opts).unwrap();
            let v = r.value.unwrap();
            if !approx_ge(v, (1.0 - eps) * opt) || v > opt {
                bad.push(format!("instance {i} eps {eps}: optimize {v} vs {opt}"));
            }
        }
    }
    assert!(bad.is_empty(), "{} failures, first: {}", bad.len(), bad[0]);
}

#[test]
fn fptas_on_graph_metrics_stays_sound() {
    let mut rng = Lcg::new(5);
    for i in 0..100 {
        let nc = rng.range(2, 10);
        let k = rng.range(2, nc.min(4));
        let lambda = rng.range(1, k - 1);
        let inst = gen_random_graph(rng.range(1, 8), nc, k, lambda, 0.3, i).unwrap();
        let opts = FptasOptions::with_epsilon(0.25);
        for &t in &critical_values(&inst) {
            let out = fptas_decide_detailed(&inst, t, &opts).unwrap();
            assert!(out.best_effort);
            if let Some(c) = out.committee {
                assert!(approx_ge(objective(&inst, c.members()).unwrap(), 0.75 * t));
            }
        }
    }
}

#[test]
fn separated_branch_is_exact() {
    let mut rng = Lcg::new(8);
    let mut hits = 0;
    for i in 0..300 {
        let nc = rng.range(3, 12);
        let k = rng.range(2, nc.min(5));
        let lambda = rng.range(1, k - 1);
        let inst = gen_random_euclidean(rng.range(1, 6), nc, 2, k, lambda, 50 + i).unwrap();
        for &t in &critical_values(&inst) {
            let out = fptas_decide_detailed(&inst, t, &FptasOptions::with_epsilon(0.5)).unwrap();
            if out.branch == Branch::Separated {
                hits += 1;
                assert!(approx_ge(
                    objective(&inst, out.committee.unwrap().members()).unwrap(),
                    t
                ));
            }
        }
    }
    assert!(hits > 0);
}

#[test]
fn quarter_stays_within_guarantee() {
    let mut bad = Vec::new();
    for i in 0..400u64 {
        let mut rng = Lcg::new(i);
        let nc = rng.range(1, 10);
        let k = rng.range(1, nc.min(4));
        let nv = rng.range(1, 10);
        let inst = if i % 2 == 0 {
            gen_random_graph(nv, nc, k, 1, 0.3, i).unwrap()
        } else {
            gen_random_euclidean(nv, nc, 3, k, 1, i).unwrap()
        };
        let opt = oracle_optimize(&inst, CAP).unwrap().optimal_value;
        let r = quarter_approx(&inst).unwrap();
        assert_eq!(r.status, Status::Approx);
        let v = r.value.unwrap();
        if !approx_ge(v, 0.25 * opt) || v > opt {
            bad.push(format!("instance {i}: {v} vs {opt}"));
        }
    }
    assert!(bad.is_empty(), "{bad:?}");
}
