//! Resolved run configuration.
//!
//! A config file holds `key = value` lines using the long flag names
//! (`parity`, `s-min`, `s-max`, `window`, `core`, `mode`, `q`, `seed`,
//! `samples`, `format`, `out`, `timing`, `threads`, `strict`,
//! `alpha-compatible`). Blank lines and `#` comments are ignored.
//! Command-line flags override the file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Serialize;

use qwitt_core::cochains::Window;
use qwitt_core::qfield::{Mode, QSample};
use qwitt_core::qwitt::Parity;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityFilter {
    Even,
    Odd,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Symbolic,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every command.
#[derive(Args, Clone, Debug, Default)]
pub struct CommonArgs {
    /// Key-value config file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub parity: Option<ParityFilter>,
    #[arg(long, allow_hyphen_values = true)]
    pub s_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub s_max: Option<i64>,
    /// Window bound N.
    #[arg(long)]
    pub window: Option<i64>,
    /// Core bound N_core; defaults to max(N - 6, 0).
    #[arg(long)]
    pub core: Option<i64>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeName>,
    /// Sample value of q as p/r (sampled mode).
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random cochains per sector (verify-complex).
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Record wall-clock times in reports.
    #[arg(long)]
    pub timing: bool,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Fail instead of falling back when a printed recursion leaves a residual.
    #[arg(long)]
    pub strict: bool,
    /// Draw 1-cochains commuting with the twist (verify-complex). These are
    /// nonzero only in even s = 0 and odd s = ±1.
    #[arg(long)]
    pub alpha_compatible: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub parity: ParityFilter,
    pub s_min: i64,
    pub s_max: i64,
    pub window: i64,
    pub core: i64,
    pub mode: Mode,
    pub seed: u64,
    pub samples: usize,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    pub timing: bool,
    #[serde(skip)]
    pub threads: Option<usize>,
    pub strict: bool,
    pub alpha_compatible: bool,
}

fn cfg_err(m: impl Into<String>) -> CliError {
    CliError::Config(m.into())
}

fn read_file(path: &Path) -> CliResult<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| CliError::Io(format!("{}:{}: expected key = value", path.display(), i + 1)))?;
        map.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(map)
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> CliResult<T> {
    v.parse().map_err(|_| cfg_err(format!("config key {key}: cannot parse {v:?}")))
}

fn parse_enum<T: ValueEnum>(key: &str, v: &str) -> CliResult<T> {
    T::from_str(v, true).map_err(|_| cfg_err(format!("config key {key}: unknown value {v:?}")))
}

const KEYS: [&str; 15] =
    ["parity", "s-min", "s-max", "window", "core", "mode", "q", "seed", "samples", "format", "out", "timing", "threads", "strict", "alpha-compatible"];

/// Per-command defaults that differ.
pub struct Defaults {
    pub window: i64,
    /// Core to use when neither flag nor file sets one; `None` means `max(N - 6, 0)`.
    pub core: Option<i64>,
}

impl RunConfig {
    /// Merge flags over the optional config file, apply defaults and validate.
    pub fn resolve(command: &str, a: &CommonArgs, d: Defaults, input: Option<PathBuf>) -> CliResult<RunConfig> {
        let file = match &a.config {
            Some(p) => read_file(p)?,
            None => BTreeMap::new(),
        };
        if let Some(k) = file.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(cfg_err(format!("unknown config key {k:?}")));
        }
        let get = |k: &str| file.get(k).map(String::as_str);
        let flag = |k: &str, set: bool| -> CliResult<bool> {
            Ok(set || get(k).map(|v| parse_value::<bool>(k, v)).transpose()?.unwrap_or(false))
        };

        let parity = match a.parity {
            Some(p) => p,
            None => get("parity").map(|v| parse_enum("parity", v)).transpose()?.unwrap_or(ParityFilter::Both),
        };
        let s_min = a.s_min.map(Ok).or_else(|| get("s-min").map(|v| parse_value("s-min", v))).transpose()?.unwrap_or(-4);
        let s_max = a.s_max.map(Ok).or_else(|| get("s-max").map(|v| parse_value("s-max", v))).transpose()?.unwrap_or(4);
        if s_min > s_max {
            return Err(cfg_err(format!("s-min {s_min} exceeds s-max {s_max}")));
        }
        let window = a.window.map(Ok).or_else(|| get("window").map(|v| parse_value("window", v))).transpose()?.unwrap_or(d.window);
        if window < 1 {
            return Err(cfg_err(format!("window {window} must be positive")));
        }
        let max_core = (window - Window::MARGIN).max(0);
        let core = a.core.map(Ok).or_else(|| get("core").map(|v| parse_value("core", v))).transpose()?.unwrap_or(d.core.unwrap_or(max_core));
        if core < 0 || core > max_core {
            return Err(cfg_err(format!("core {core} must lie in [0, {max_core}] so that N >= N_core + {}", Window::MARGIN)));
        }
        let mode_name = match a.mode {
            Some(m) => m,
            None => get("mode").map(|v| parse_enum("mode", v)).transpose()?.unwrap_or(if window > 6 { ModeName::Sampled } else { ModeName::Symbolic }),
        };
        let q = a.q.clone().or_else(|| get("q").map(str::to_string));
        let mode = match mode_name {
            ModeName::Symbolic => {
                if q.is_some() {
                    return Err(cfg_err("q is only meaningful in sampled mode"));
                }
                Mode::Symbolic
            }
            ModeName::Sampled => {
                let s: QSample = q.as_deref().unwrap_or("2").parse().map_err(|e| match e {
                    qwitt_core::Error::Parse { message, .. } => cfg_err(format!("q: {message}")),
                    e => CliError::Core(e),
                })?;
                Mode::Sampled(s)
            }
        };
        let seed = a.seed.map(Ok).or_else(|| get("seed").map(|v| parse_value("seed", v))).transpose()?.unwrap_or(0);
        let samples = a.samples.map(Ok).or_else(|| get("samples").map(|v| parse_value("samples", v))).transpose()?.unwrap_or(5);
        let format = match a.format {
            Some(f) => f,
            None => get("format").map(|v| parse_enum("format", v)).transpose()?.unwrap_or(Format::Json),
        };
        let out = a.out.clone().or_else(|| get("out").map(PathBuf::from));
        let threads = a.threads.map(Ok).or_else(|| get("threads").map(|v| parse_value("threads", v))).transpose()?;
        if threads == Some(0) {
            return Err(cfg_err("threads must be positive"));
        }
        Ok(RunConfig {
            command: command.to_string(),
            parity,
            s_min,
            s_max,
            window,
            core,
            mode,
            seed,
            samples,
            format,
            out,
            input,
            timing: flag("timing", a.timing)?,
            threads,
            strict: flag("strict", a.strict)?,
            alpha_compatible: flag("alpha-compatible", a.alpha_compatible)?,
        })
    }

    pub fn window(&self) -> CliResult<Window> {
        Ok(Window::new(self.window, self.core)?)
    }

    /// Sectors in canonical order: even before odd, then by `s`.
    pub fn sectors(&self) -> Vec<(Parity, i64)> {
        let mut v = Vec::new();
        for p in [Parity::Even, Parity::Odd] {
            let keep = match self.parity {
                ParityFilter::Both => true,
                ParityFilter::Even => p == Parity::Even,
                ParityFilter::Odd => p == Parity::Odd,
            };
            if keep {
                v.extend((self.s_min..=self.s_max).map(|s| (p, s)));
            }
        }
        v
    }
}
