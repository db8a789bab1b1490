use anyhow::bail;
use serde::Serialize;
use serde_json::json;

use newtonlog_core::{build_delta1, newton_polyhedron};

use crate::input::{nonzero, read_poly};
use crate::report::{emit, vec_str, Output};
use crate::{OutArgs, PolyArgs};

#[derive(clap::Args, Debug, Clone, Serialize)]
pub struct Args {
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Also build Delta_1 for this coordinate hyperplane (1-based).
    #[arg(long)]
    pub delta1_axis: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

pub fn run(args: &Args) -> anyhow::Result<Output> {
    let f = nonzero(read_poly(&args.poly)?)?;
    let np = newton_polyhedron(&f)?;
    let faces = np.compact_face_lattice();
    let mut text = format!("polynomial: {f}\nnvars: {}\n", f.nvars());
    for v in np.vertices() {
        text += &format!("vertex {}\n", vec_str(v));
    }
    for h in np.facets() {
        let kind = if h.is_compact() { "compact" } else { "noncompact" };
        text += &format!("facet {} >= {} {kind}\n", vec_str(&h.normal), h.height);
    }
    text += &format!("compact faces: {}\n", faces.len());
    let delta1 = match args.delta1_axis {
        None => None,
        Some(i) if i == 0 || i > f.nvars() => bail!("--delta1-axis must be in 1..={}", f.nvars()),
        Some(i) => {
            let d = build_delta1(&np, i - 1)?;
            for h in d.halfspaces() {
                text += &format!("delta1 axis {i}: {} >= {}\n", vec_str(&h.normal), h.height);
            }
            Some(d.to_json())
        }
    };
    let result = json!({
        "polynomial": f.to_string(),
        "nvars": f.nvars(),
        "axis_condition": f.axis_condition(),
        "polyhedron": np,
        "compact_faces": faces,
        "delta1": delta1,
    });
    emit("newton", args, args.out.format, result, text, false)
}
