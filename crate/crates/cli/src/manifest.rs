use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::args::Cli;
use crate::error::{CliError, CliResult};

/// Everything needed to re-run a command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Arguments as given, without the program name.
    pub args: Vec<String>,
    /// Parsed parameter record, defaults filled in.
    pub params: Cli,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub duration_secs: f64,
    pub output: Option<PathBuf>,
}

impl RunManifest {
    pub fn new(cli: &Cli, args: Vec<String>, duration_secs: f64) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: cli.command.name().to_string(),
            args,
            params: cli.clone(),
            seed: cli.command.stochastic().then_some(cli.seed),
            threads: cli.threads,
            duration_secs,
            output: cli.out.clone(),
        }
    }

    /// `<out>.manifest.json`, or `None` when output went to stdout.
    pub fn path_for(out: Option<&Path>) -> Option<PathBuf> {
        out.map(|p| {
            let mut s = p.as_os_str().to_owned();
            s.push(".manifest.json");
            PathBuf::from(s)
        })
    }

    /// Next to the output file, or as one line on stderr.
    pub fn write(&self) -> CliResult<()> {
        match Self::path_for(self.output.as_deref()) {
            Some(path) => {
                let json = serde_json::to_string_pretty(self)? + "\n";
                std::fs::write(&path, json).map_err(|e| CliError::io(path, e))
            }
            None => {
                eprintln!("manifest: {}", serde_json::to_string(self)?);
                Ok(())
            }
        }
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: not a run manifest: {e}", path.display())))
    }
}
