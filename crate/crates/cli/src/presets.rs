//! Figure presets. Each preset is a JSON document listing runs; the files
//! live in `presets/` and are embedded at build time.

use serde::Deserialize;

use crate::config::ExperimentConfig;
use crate::error::{config_err, CliError};

const PRESETS: [&str; 5] = [
    include_str!("../presets/fig1.json"),
    include_str!("../presets/fig2.json"),
    include_str!("../presets/fig3.json"),
    include_str!("../presets/fig4.json"),
    include_str!("../presets/fig5.json"),
];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Preset {
    pub description: String,
    pub runs: Vec<Run>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunKind {
    Exact,
    Solve,
    Compare,
    /// Caputo and history-aware solvers side by side.
    Pair,
    /// Classical delay equation reference.
    Euler,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Run {
    /// Output file stem.
    pub name: String,
    pub command: RunKind,
    pub config: ExperimentConfig,
}

pub fn preset(figure: u8) -> Result<Preset, CliError> {
    let Some(text) = (figure as usize).checked_sub(1).and_then(|i| PRESETS.get(i)) else {
        return config_err(format!("no preset for figure {figure} (1..5)"));
    };
    serde_json::from_str(text).map_err(|e| CliError::Config(format!("preset {figure}: {e}")))
}
