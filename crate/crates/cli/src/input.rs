use std::path::Path;

use anyhow::{bail, Context};
use newtonlog_core::{parse_poly, Poly};

use crate::PolyArgs;

/// Largest `k` among the variables `xk` in `text`, at least 1.
pub fn infer_nvars(text: &str) -> usize {
    let b = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(k) = text[start..j].parse::<usize>() {
                best = best.max(k);
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best.max(1)
}

pub fn parse_text(text: &str, nvars: Option<usize>) -> anyhow::Result<Poly> {
    let text = text.trim();
    let n = nvars.unwrap_or_else(|| infer_nvars(text));
    parse_poly(text, n).with_context(|| format!("cannot parse polynomial {text:?}"))
}

fn read_poly_file(path: &Path, nvars: Option<usize>) -> anyhow::Result<Poly> {
    let body = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    if body.trim_start().starts_with('{') {
        let p: Poly = serde_json::from_str(&body)
            .with_context(|| format!("bad polynomial JSON in {}", path.display()))?;
        if let Some(n) = nvars {
            if n != p.nvars() {
                bail!("--nvars {n} does not match the {} variables in {}", p.nvars(), path.display());
            }
        }
        return Ok(p);
    }
    parse_text(&body, nvars)
}

pub fn read_poly(args: &PolyArgs) -> anyhow::Result<Poly> {
    match (&args.poly, &args.input) {
        (Some(t), None) => parse_text(t, args.nvars),
        (None, Some(p)) => read_poly_file(p, args.nvars),
        _ => bail!("exactly one of --poly or --input is required"),
    }
}

pub fn nonzero(p: Poly) -> anyhow::Result<Poly> {
    if p.is_zero() {
        bail!("the zero polynomial is not a valid input");
    }
    Ok(p)
}

/// One polynomial per line; blank lines and lines starting with `#` are
/// skipped.
pub fn read_corpus(path: &Path, nvars: Option<usize>) -> anyhow::Result<Vec<(String, Poly)>> {
    let body = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut out = Vec::new();
    for (ln, line) in body.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let p = parse_text(t, nvars).with_context(|| format!("{}:{}", path.display(), ln + 1))?;
        out.push((t.to_string(), p));
    }
    if out.is_empty() {
        bail!("corpus {} is empty", path.display());
    }
    Ok(out)
}
