use serde::Serialize;
use serde_json::{json, Value};

use crate::Format;

pub struct Output {
    pub rendered: String,
    pub failed: bool,
}

/// Wraps a result with the tool version and the full config. No clocks or
/// paths beyond what the config holds, so reruns are byte-identical.
pub fn emit<C: Serialize>(
    command: &str,
    config: &C,
    format: Format,
    result: Value,
    text: String,
    failed: bool,
) -> anyhow::Result<Output> {
    let rendered = match format {
        Format::Json => {
            let doc = json!({
                "tool": "newtonlog",
                "version": env!("CARGO_PKG_VERSION"),
                "command": command,
                "config": config,
                "pass": !failed,
                "result": result,
            });
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = format!("newtonlog {} {command}\n", env!("CARGO_PKG_VERSION"));
            s.push_str(&text);
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s.push_str(if failed { "result: FAIL\n" } else { "result: PASS\n" });
            s
        }
    };
    Ok(Output { rendered, failed })
}

pub fn vec_str(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}
