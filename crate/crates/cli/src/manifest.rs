use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const MANIFEST_SCHEMA_VERSION: &str = "1";

/// Everything needed to rerun a subcommand: its parsed arguments, the seed
/// (for randomized commands) and the files it wrote.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: String,
    pub tool_version: String,
    pub subcommand: String,
    pub parameters: serde_json::Value,
    pub seed: Option<u64>,
    pub output_paths: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new<P: Serialize>(
        subcommand: &str,
        parameters: &P,
        seed: Option<u64>,
        output_paths: Vec<PathBuf>,
    ) -> Result<Self> {
        Ok(Self {
            schema_version: MANIFEST_SCHEMA_VERSION.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            subcommand: subcommand.into(),
            parameters: serde_json::to_value(parameters)?,
            seed,
            output_paths,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let manifest: Self = serde_json::from_str(&text)?;
        if manifest.schema_version != MANIFEST_SCHEMA_VERSION {
            return Err(CliError::Usage(format!(
                "manifest schema {} is not supported (expected {MANIFEST_SCHEMA_VERSION})",
                manifest.schema_version
            )));
        }
        Ok(manifest)
    }

    /// `<first output>.manifest.json`, or `zetacond-<subcommand>.manifest.json`
    /// in the working directory when nothing was written.
    pub fn default_path(&self) -> PathBuf {
        match self.output_paths.first() {
            Some(out) => {
                let mut name = out.as_os_str().to_owned();
                name.push(".manifest.json");
                PathBuf::from(name)
            }
            None => PathBuf::from(format!("zetacond-{}.manifest.json", self.subcommand)),
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))
    }
}
