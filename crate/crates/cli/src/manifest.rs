use chrono::{DateTime, SecondsFormat, Utc};
use serde::Serialize;

/// Provenance attached to every machine-readable output.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command_line: Vec<String>,
    pub rng: Option<&'static str>,
    pub seed: Option<u64>,
    pub started_at: String,
    pub finished_at: String,
    pub wall_seconds: f64,
}

pub struct ManifestClock {
    command_line: Vec<String>,
    started: DateTime<Utc>,
}

impl ManifestClock {
    pub fn start(command_line: Vec<String>) -> Self {
        Self { command_line, started: Utc::now() }
    }

    pub fn finish(&self, rng: Option<&'static str>, seed: Option<u64>) -> RunManifest {
        let now = Utc::now();
        RunManifest {
            tool: env!("CARGO_BIN_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command_line: self.command_line.clone(),
            rng,
            seed,
            started_at: self.started.to_rfc3339_opts(SecondsFormat::Millis, true),
            finished_at: now.to_rfc3339_opts(SecondsFormat::Millis, true),
            wall_seconds: (now - self.started).num_microseconds().unwrap_or(0) as f64 / 1e6,
        }
    }
}
