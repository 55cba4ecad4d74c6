use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Format;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Validated global options echoed into every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub p: u64,
    pub precision: u32,
    pub seed: u64,
    pub format: Format,
    pub params: Value,
}

/// Outcome of a subcommand before rendering.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub ok: bool,
    pub result: Value,
    pub text: String,
}

impl Outcome {
    pub fn new(ok: bool, result: impl Serialize, text: String) -> Self {
        Outcome { ok, result: serde_json::to_value(result).expect("report serializes"), text }
    }
}

pub fn render(cfg: &RunConfig, out: &Outcome) -> String {
    match cfg.format {
        Format::Json => {
            let doc = json!({
                "tool": "ramcoh",
                "version": VERSION,
                "command": cfg.command,
                "config": cfg,
                "ok": out.ok,
                "result": out.result,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let params = serde_json::to_string(&cfg.params).unwrap_or_default();
            let mut s = format!(
                "# ramcoh {VERSION} {} p={} precision={} seed={} params={params}\n",
                cfg.command, cfg.p, cfg.precision, cfg.seed
            );
            s.push_str(&out.text);
            if !out.text.ends_with('\n') {
                s.push('\n');
            }
            s.push_str(if out.ok { "status: ok\n" } else { "status: FAILED\n" });
            s
        }
    }
}
