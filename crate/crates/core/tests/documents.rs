//! Instance and result documents survive a round trip bit for bit.

use obnox_core::dispatch::{solve, Algorithm, SolveOptions};
use obnox_core::generators::{gen_hitting_set, gen_random_euclidean, gen_random_graph, random_set_system, Lcg};
use obnox_core::io::{emit_instance, emit_result, parse_instance, ResultDoc};
use obnox_core::metric::critical_values;
use obnox_core::{Instance, MetricSpace, Status};

fn corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    for seed in 0..20 {
        out.push(gen_random_euclidean(5, 6, 2, 3, 1, seed).unwrap());
        out.push(gen_random_euclidean(4, 5, 3, 2, 2, seed).unwrap());
        out.push(gen_random_graph(4, 6, 3, 2, 0.4, seed).unwrap());
        let mut rng = Lcg::new(seed);
        let sys = random_set_system(&mut rng, 4, 3, 2, 1);
        out.push(gen_hitting_set(&sys).unwrap().0);
    }
    let table = vec![0.0, 1.5, 2.0, 1.5, 0.0, 1.0, 2.0, 1.0, 0.0];
    out.push(
        Instance::new(
            MetricSpace::matrix(3, table, true).unwrap(),
            vec![0],
            vec![1, 2],
            1,
            1,
            Some(1.0),
        )
        .unwrap(),
    );
    out
}

#[test]
fn instances_round_trip() {
    for inst in corpus() {
        let text = emit_instance(&inst).unwrap();
        let back = parse_instance(&text, false).unwrap();
        assert_eq!(emit_instance(&back).unwrap(), text);
        assert_eq!(critical_values(&back), critical_values(&inst));
    }
}

#[test]
fn results_parse_back() {
    for inst in corpus() {
        let mut r = solve(&inst, Algorithm::Auto, &SolveOptions::default()).unwrap();
        r.wall_time_ms = 0;
        let text = emit_result(&inst, &r).unwrap();
        let doc = ResultDoc::parse(&text).unwrap();
        assert_eq!(doc.value, r.value);
        assert_eq!(doc.algorithm, r.algorithm);
        assert_eq!(doc.status, r.status);
        assert_eq!(doc.committee.as_deref(), r.committee.as_ref().map(|c| c.members()));
    }
}

#[test]
fn infeasible_results_have_no_value() {
    let inst = gen_random_euclidean(3, 4, 2, 2, 1, 1).unwrap();
    let opts = SolveOptions {
        t: Some(100.0),
        ..Default::default()
    };
    let r = solve(&inst, Algorithm::Planar, &opts).unwrap();
    assert_eq!(r.status, Status::Infeasible);
    let doc = ResultDoc::parse(&emit_result(&inst, &r).unwrap()).unwrap();
    assert_eq!((doc.committee, doc.value), (None, None));
}

#[test]
fn malformed_documents_name_the_field() {
    let bad = r#"{"format_version": 1, "space": {"kind": "euclidean", "dim": 2,
                 "voters": [[0, 0]], "candidates": [[1, "x"]]}, "k": 1, "lambda": 1}"#;
    let err = parse_instance(bad, false).unwrap_err().to_string();
    assert!(err.contains("space.candidates"), "{err}");
}
