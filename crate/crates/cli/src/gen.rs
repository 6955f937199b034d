use std::path::PathBuf;

use anyhow::{bail, Result};

use crate::args::{GenArgs, GenKind};
use crate::{write_output, EXIT_OK};
use obnox_core::generators::{
    gen_hitting_set, gen_random_euclidean, gen_random_graph, gen_udg, random_points, random_set_system,
    with_dummy_elements, GroundTruth, Lcg,
};
use obnox_core::io::{emit_ground_truth, emit_instance};
use obnox_core::Instance;

fn sidecar_path(a: &GenArgs) -> Option<PathBuf> {
    a.truth.clone().or_else(|| {
        a.output.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".truth.json");
            PathBuf::from(s)
        })
    })
}

pub fn run(a: &GenArgs) -> Result<u8> {
    let (inst, truth): (Instance, Option<GroundTruth>) = match a.kind {
        GenKind::Euclidean => (
            gen_random_euclidean(a.voters, a.candidates, a.dim, a.k, a.lambda, a.seed)?,
            None,
        ),
        GenKind::Graph => (
            gen_random_graph(a.voters, a.candidates, a.k, a.lambda, a.density, a.seed)?,
            None,
        ),
        GenKind::Hitting => {
            let mut rng = Lcg::new(a.seed);
            let base_multiplicity = if a.dummy { 1 } else { a.lambda };
            let mut sys = random_set_system(&mut rng, a.universe, a.sets, a.k, base_multiplicity);
            if a.dummy {
                sys = with_dummy_elements(&sys, a.lambda)?;
            }
            let (inst, gt) = gen_hitting_set(&sys)?;
            (inst, Some(gt))
        }
        GenKind::Udg => {
            let mut rng = Lcg::new(a.seed);
            let points = random_points(&mut rng, a.points, a.side);
            let (inst, gt) = gen_udg(&points, a.k)?;
            (inst, Some(gt))
        }
    };
    write_output(a.output.as_deref(), &emit_instance(&inst)?)?;
    if let Some(gt) = truth {
        match sidecar_path(a) {
            Some(p) => write_output(Some(&p), &emit_ground_truth(&gt)?)?,
            None => bail!("--truth is required when the instance goes to stdout"),
        }
    }
    Ok(EXIT_OK)
}
