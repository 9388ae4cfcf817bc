//! Run configuration, the header stamped on every output file, and the
//! writer that emits JSON and TSV side by side.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;

/// Bounds and caps of one run. Fields a command does not use stay `None`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub characteristic: Option<u32>,
    pub s_max: Option<usize>,
    pub t_max: Option<usize>,
    pub n_max: Option<usize>,
    pub r_max: Option<usize>,
    pub degree: Option<usize>,
    pub bound_stages: Option<usize>,
    pub bound_dim: Option<usize>,
    pub cap: Option<usize>,
    pub out: PathBuf,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(command: &str, out: &Path, seed: u64) -> RunConfig {
        RunConfig { command: command.into(), out: out.to_path_buf(), seed, ..RunConfig::default() }
    }

    /// Every bound that is set must be positive.
    pub fn validate(&self) -> Result<()> {
        let bounds = [
            ("s_max", self.s_max),
            ("t_max", self.t_max),
            ("n_max", self.n_max),
            ("r_max", self.r_max),
            ("degree", self.degree),
            ("bound_stages", self.bound_stages),
            ("bound_dim", self.bound_dim),
            ("cap", self.cap),
        ];
        for (name, value) in bounds {
            if value == Some(0) {
                bail!(crate::Usage(format!("{name} must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub tool: String,
    pub config: RunConfig,
    /// Where the reported numbers are trustworthy.
    pub windows: Vec<String>,
}

#[derive(Serialize)]
struct Stamped<'a, T: Serialize> {
    header: &'a Header,
    result: &'a T,
}

/// Writes files under the output directory, each carrying the header.
pub struct Output {
    pub header: Header,
    written: Vec<PathBuf>,
}

impl Output {
    pub fn new(config: &RunConfig, windows: Vec<String>) -> Result<Output> {
        fs::create_dir_all(&config.out).with_context(|| format!("creating {}", config.out.display()))?;
        let header = Header { tool: format!("bkcomp {}", env!("CARGO_PKG_VERSION")), config: config.clone(), windows };
        Ok(Output { header, written: Vec::new() })
    }

    fn path(&self, name: &str) -> PathBuf {
        self.header.config.out.join(name)
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let body = serde_json::to_string_pretty(&Stamped { header: &self.header, result: value })?;
        self.write(name, body + "\n")
    }

    /// `#` comment lines with the header, then `body`.
    pub fn text(&mut self, name: &str, body: &str) -> Result<()> {
        let mut out = self.header_lines().into_iter().map(|l| format!("# {l}\n")).collect::<String>();
        out.push_str(body);
        self.write(name, out)
    }

    /// The header as bare lines, for writers that add their own prefix.
    pub fn header_lines(&self) -> Vec<String> {
        let mut lines = vec![self.header.tool.clone(), format!("config {}", serde_json::to_string(&self.header.config).expect("config serializes"))];
        lines.extend(self.header.windows.iter().map(|w| format!("window {w}")));
        lines
    }

    pub fn raw(&mut self, name: &str, body: String) -> Result<()> {
        self.write(name, body)
    }

    fn write(&mut self, name: &str, body: String) -> Result<()> {
        let path = self.path(name);
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        self.written.push(path);
        Ok(())
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}

/// Reads a JSON fixture; parse errors carry the line and column.
pub fn read_fixture<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim().is_empty() {
        bail!(crate::Usage(format!("fixture {} is empty", path.display())));
    }
    serde_json::from_str(&text).map_err(|e| anyhow::Error::new(crate::Usage(format!("{}: {e}", path.display()))))
}
