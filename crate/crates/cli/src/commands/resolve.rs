use std::path::PathBuf;

use anyhow::{bail, Context};
use serde::Serialize;
use serde_json::json;

use newtonlog_core::fan::{RegularizeConfig, RegularizeStats};
use newtonlog_core::{
    cones_contained, dual_fan, newton_polyhedron, refines, regularize, regularize_with, Fan,
};

use crate::input::{nonzero, read_poly};
use crate::report::{emit, vec_str, Output};
use crate::{OutArgs, PolyArgs};

#[derive(clap::Args, Debug, Clone, Serialize)]
pub struct Args {
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Fan JSON ({"dim", "rays", "cones"}) to refine instead of a dual fan.
    #[arg(long, conflicts_with_all = ["poly", "input"])]
    pub fan: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000)]
    pub max_steps: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Serialize)]
struct Certificate {
    simplicial: bool,
    max_multiplicity: Option<u64>,
    regular: bool,
    /// Support is the whole orthant; `None` when the input fan does not
    /// cover it.
    support: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    support_error: Option<String>,
    refines_input: bool,
    rays_preserved: bool,
    idempotent: bool,
}

impl Certificate {
    fn ok(&self) -> bool {
        self.simplicial
            && self.regular
            && self.support != Some(false)
            && self.refines_input
            && self.rays_preserved
            && self.idempotent
    }
}

fn certify(sigma0: &Fan, sigma: &Fan) -> anyhow::Result<Certificate> {
    let full = sigma0.check_support().is_ok();
    let (support, support_error, refines_input) = if full {
        let s = sigma.check_support();
        let r = s.is_ok() && refines(sigma, sigma0)?;
        (Some(s.is_ok()), s.err(), r)
    } else {
        (None, None, cones_contained(sigma, sigma0)?)
    };
    Ok(Certificate {
        simplicial: sigma.is_simplicial(),
        max_multiplicity: sigma.max_multiplicity(),
        regular: sigma.is_regular(),
        support,
        support_error,
        refines_input,
        rays_preserved: sigma0.rays().iter().all(|r| sigma.rays().contains(r)),
        idempotent: regularize(sigma)? == *sigma,
    })
}

pub fn run(args: &Args) -> anyhow::Result<Output> {
    let (source, sigma0) = match &args.fan {
        Some(path) => {
            let body =
                std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            let fan: Fan = serde_json::from_str(&body)
                .with_context(|| format!("malformed fan in {}", path.display()))?;
            (json!({ "fan": path.display().to_string() }), fan)
        }
        None => {
            let f = nonzero(read_poly(&args.poly)?)?;
            let np = newton_polyhedron(&f)?;
            (json!({ "polynomial": f.to_string() }), dual_fan(&np)?)
        }
    };
    if args.max_steps == 0 {
        bail!("--max-steps must be positive");
    }
    let cfg = RegularizeConfig { max_steps: args.max_steps };
    let (sigma, stats): (Fan, RegularizeStats) = regularize_with(&sigma0, &cfg)?;
    let cert = certify(&sigma0, &sigma)?;
    let failed = !cert.ok();
    let mut text = format!(
        "input fan: {} rays, {} cones\nregular fan: {} rays, {} cones\n",
        sigma0.rays().len(),
        sigma0.cones().len(),
        sigma.rays().len(),
        sigma.cones().len()
    );
    for r in &stats.added_rays {
        text += &format!("added ray {}\n", vec_str(r));
    }
    text += &format!(
        "max multiplicity: {}\nsimplicial: {}\nrefines input: {}\nidempotent: {}\n",
        cert.max_multiplicity.map_or("-".into(), |m| m.to_string()),
        cert.simplicial,
        cert.refines_input,
        cert.idempotent
    );
    let result = json!({
        "source": source,
        "sigma0": sigma0,
        "sigma": sigma,
        "stats": stats,
        "certificate": cert,
    });
    emit("resolve", args, args.out.format, result, text, failed)
}
