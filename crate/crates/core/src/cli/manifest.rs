use crate::scalar::{Precision, PrecisionMode};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    /// "double", "extended" or "auto"
    pub precision_mode: String,
    pub versions: BTreeMap<String, String>,
    /// wall-clock seconds per stage, in execution order
    pub timings: Vec<(String, f64)>,
}

pub fn mode_name(mode: PrecisionMode) -> &'static str {
    match mode {
        PrecisionMode::Auto => "auto",
        PrecisionMode::Fixed(Precision::Double) => "double",
        PrecisionMode::Fixed(Precision::Extended) => "extended",
    }
}

impl RunManifest {
    pub fn new(command: &str, precision: PrecisionMode) -> RunManifest {
        let mut versions = BTreeMap::new();
        versions.insert("whitehead".to_string(), env!("CARGO_PKG_VERSION").to_string());
        versions.insert("schema".to_string(), super::output::SCHEMA_VERSION.to_string());
        RunManifest {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            precision_mode: mode_name(precision).to_string(),
            versions,
            timings: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    /// Run `f`, recording its wall time under `stage`.
    pub fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let t0 = Instant::now();
        let out = f();
        self.timings.push((stage.to_string(), t0.elapsed().as_secs_f64()));
        log::debug!("{stage}: {:.3}s", t0.elapsed().as_secs_f64());
        out
    }
}
