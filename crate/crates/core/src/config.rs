//! Run configuration: a plain `key=value` file format with flag overrides,
//! and the seed-stream derivation all randomness flows through.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::Mode;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown config key {0:?}")]
    UnknownKey(String),
    #[error("bad value for {key}: {value:?}")]
    BadValue { key: String, value: String },
    #[error("config line {0} is not key=value")]
    BadLine(usize),
    #[error("{0} must be positive")]
    NonPositive(&'static str),
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Derives an independent RNG stream seed from the base seed, a purpose
/// label, and an index: FNV-1a over the label, mixed with the base and index
/// through splitmix64. Documented so runs reproduce across platforms.
pub fn derive_stream_seed(base: u64, label: &str, index: u64) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    splitmix64(splitmix64(base ^ h).wrapping_add(index))
}

/// Parameters shared by the CLI subcommands. Serializes to and parses from a
/// plain `key=value` file; command-line flags override file values.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub target: u64,
    pub seed: u64,
    /// Plancherel samples per restart batch in the improvement search.
    pub seed_count: usize,
    /// Restart level factor of the improvement search.
    pub restart_factor: f64,
    /// Random remove/add pairs applied to each restart sample.
    pub perturb_depth: u32,
    /// Restart sweeps of the improvement search.
    pub sweeps: u32,
    /// Fit window `[lo, hi]`; `None` means `[target/5, target]`.
    pub fit_window: Option<(u64, u64)>,
    pub out_dir: PathBuf,
    /// Exhaustive DP level cap; `None` means the per-mode default.
    pub max_dp_level: Option<u64>,
    /// Wall-clock cap for long-running commands, in minutes.
    pub max_minutes: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: Mode::Strict,
            target: 1000,
            seed: 1,
            seed_count: 8,
            restart_factor: 0.9,
            perturb_depth: 4,
            sweeps: 2,
            fit_window: None,
            out_dir: PathBuf::from("."),
            max_dp_level: None,
            max_minutes: 24 * 60,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.target < 1 {
            return Err(ConfigError::NonPositive("target"));
        }
        if self.max_minutes < 1 {
            return Err(ConfigError::NonPositive("max_minutes"));
        }
        if let Some(cap) = self.max_dp_level {
            if cap < 1 {
                return Err(ConfigError::NonPositive("max_dp"));
            }
        }
        if !(self.restart_factor > 0.0 && self.restart_factor < 1.0) {
            return Err(ConfigError::NonPositive("restart (must be in (0,1))"));
        }
        Ok(())
    }

    /// Applies one `key=value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
            value.parse().map_err(|_| ConfigError::BadValue {
                key: key.to_string(),
                value: value.to_string(),
            })
        }
        match key {
            "mode" => self.mode = parse(key, value)?,
            "target" => self.target = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "seeds" => self.seed_count = parse(key, value)?,
            "restart" => self.restart_factor = parse(key, value)?,
            "perturb" => self.perturb_depth = parse(key, value)?,
            "sweeps" => self.sweeps = parse(key, value)?,
            "window" => {
                let (lo, hi) = value.split_once(':').ok_or_else(|| ConfigError::BadValue {
                    key: key.to_string(),
                    value: value.to_string(),
                })?;
                self.fit_window = Some((parse(key, lo)?, parse(key, hi)?));
            }
            "out" => self.out_dir = PathBuf::from(value),
            "max_dp" => self.max_dp_level = Some(parse(key, value)?),
            "max_minutes" => self.max_minutes = parse(key, value)?,
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    /// Parses a config file body: `key=value` lines, `#` comments allowed.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        cfg.apply(text)?;
        Ok(cfg)
    }

    pub fn apply(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(ConfigError::BadLine(i + 1))?;
            self.set(key.trim(), value.trim())?;
        }
        self.validate()
    }

    /// Serializes to the same `key=value` format `parse` accepts.
    pub fn to_file_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "mode={}", self.mode);
        let _ = writeln!(s, "target={}", self.target);
        let _ = writeln!(s, "seed={}", self.seed);
        let _ = writeln!(s, "seeds={}", self.seed_count);
        let _ = writeln!(s, "restart={}", self.restart_factor);
        let _ = writeln!(s, "perturb={}", self.perturb_depth);
        let _ = writeln!(s, "sweeps={}", self.sweeps);
        if let Some((lo, hi)) = self.fit_window {
            let _ = writeln!(s, "window={lo}:{hi}");
        }
        let _ = writeln!(s, "out={}", self.out_dir.display());
        if let Some(cap) = self.max_dp_level {
            let _ = writeln!(s, "max_dp={cap}");
        }
        let _ = writeln!(s, "max_minutes={}", self.max_minutes);
        s
    }

    /// The fit window to use for a run to `target`.
    pub fn effective_fit_window(&self) -> (u64, u64) {
        self.fit_window.unwrap_or(((self.target / 5).max(2), self.target))
    }

    pub fn search_config(&self) -> crate::search::SearchConfig {
        crate::search::SearchConfig {
            seed_count: self.seed_count,
            rng_seed: derive_stream_seed(self.seed, "search", 0),
            restart_factor: self.restart_factor,
            perturb_depth: self.perturb_depth,
            sweeps: self.sweeps,
            ..crate::search::SearchConfig::default()
        }
    }
}
