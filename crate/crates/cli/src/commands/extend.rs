use anyhow::bail;
use serde::Serialize;
use serde_json::json;

use newtonlog_core::{deformation_extension_check, DeformationInstance, LogFormRep};

use crate::input::{nonzero, parse_text};
use crate::report::{emit, vec_str, Output};
use crate::OutArgs;

#[derive(clap::Args, Debug, Clone, Serialize)]
pub struct Args {
    /// The family F(x, t); t is the last variable.
    #[arg(long)]
    pub family: String,
    /// The fibre f(x); must equal F(x, 0) when given.
    #[arg(long)]
    pub base: Option<String>,
    /// Form numerator h(x) on the fibre; extended constantly in t.
    #[arg(long, conflicts_with = "extension")]
    pub h: Option<String>,
    /// Candidate extension H(x, t).
    #[arg(long)]
    pub extension: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Variables of F, including t.
    #[arg(long)]
    pub nvars: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

pub fn run(args: &Args) -> anyhow::Result<Output> {
    if args.m == 0 {
        bail!("--m must be positive");
    }
    let family = nonzero(parse_text(&args.family, args.nvars)?)?;
    let n1 = family.nvars();
    if n1 < 2 {
        bail!("the family needs x variables and a final t variable");
    }
    let base = args.base.as_deref().map(|b| parse_text(b, Some(n1 - 1))).transpose()?;
    let inst = match (&args.h, &args.extension) {
        (Some(h), None) => {
            let rep = LogFormRep::new(parse_text(h, Some(n1 - 1))?, args.m)?;
            DeformationInstance::constant_extension(family, base, &rep)?
        }
        (None, Some(e)) => DeformationInstance::new(family, base, args.m, parse_text(e, Some(n1))?)?,
        _ => bail!("exactly one of --h or --extension is required"),
    };
    let rep = deformation_extension_check(&inst)?;
    let mut text =
        format!("family: {}\nfibre: {}\nH: {}\nm: {}\n", inst.family, inst.base, inst.extension, inst.m);
    for r in &rep.rays {
        text += &format!(
            "ray {} {}: nu_H {} nu_F {} b {} value {} >= {}{} {}\n",
            vec_str(&r.ray),
            r.kind,
            r.nu_h.map_or("inf".into(), |x| x.to_string()),
            r.nu_f,
            r.b,
            r.value.map_or("inf".into(), |x| x.to_string()),
            r.threshold,
            match r.strict_transform {
                Some(s) => format!(", nu_H >= m: {s}"),
                None => String::new(),
            },
            if r.pass { "ok" } else { "FAIL" }
        );
    }
    text += &format!("verdict: {}\n", rep.verdict);
    let failed = !rep.pass;
    let result = json!({
        "family": inst.family.to_string(),
        "fibre": inst.base.to_string(),
        "extension": inst.extension.to_string(),
        "report": rep,
    });
    emit("extend", args, args.out.format, result, text, failed)
}
