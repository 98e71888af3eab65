//! Numerical settings from a `key = value` file named by `CHOFISHER_CONFIG`.
//!
//! Precedence is command-line flags, then the file, then built-in defaults.

use std::path::Path;

use crate::error::{Error, Result};
use crate::pipeline::ComputeSettings;

pub const CONFIG_ENV: &str = "CHOFISHER_CONFIG";

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ConfigFile {
    pub quad_order: Option<usize>,
    pub panels: Option<usize>,
    pub p_order: Option<usize>,
    pub p_max: Option<f64>,
    pub tail_tolerance: Option<f64>,
    pub max_doublings: Option<u32>,
}

fn value<T: std::str::FromStr>(key: &str, raw: &str, line: usize) -> Result<T> {
    raw.parse()
        .map_err(|_| Error::Parse(format!("config line {line}: bad value `{raw}` for `{key}`")))
}

impl ConfigFile {
    /// Blank lines and `#` comments are skipped; unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ConfigFile::default();
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, val) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {n}: expected key = value")))?;
            let (key, val) = (key.trim(), val.trim());
            match key {
                "quad_order" => cfg.quad_order = Some(value(key, val, n)?),
                "panels" => cfg.panels = Some(value(key, val, n)?),
                "p_order" => cfg.p_order = Some(value(key, val, n)?),
                "p_max" => cfg.p_max = Some(value(key, val, n)?),
                "tail_tolerance" => cfg.tail_tolerance = Some(value(key, val, n)?),
                "max_doublings" => cfg.max_doublings = Some(value(key, val, n)?),
                other => return Err(Error::Parse(format!("config line {n}: unknown key `{other}`"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// The file named by the environment variable, if set.
    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn apply(&self, s: &mut ComputeSettings) {
        if let Some(v) = self.quad_order {
            s.order = v;
        }
        if let Some(v) = self.panels {
            s.panels = v;
        }
        if let Some(v) = self.p_order {
            s.transform.p_order = v;
        }
        if let Some(v) = self.p_max {
            s.transform.p_max = Some(v);
        }
        if let Some(v) = self.tail_tolerance {
            s.transform.tail_tolerance = v;
        }
        if let Some(v) = self.max_doublings {
            s.transform.max_doublings = v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_applies() {
        let cfg = ConfigFile::parse("# numerics\nquad_order = 96\n\np_max=500 # wide\n").unwrap();
        assert_eq!(cfg.quad_order, Some(96));
        assert_eq!(cfg.p_max, Some(500.0));
        let mut s = ComputeSettings::default();
        cfg.apply(&mut s);
        assert_eq!(s.order, 96);
        assert_eq!(s.transform.p_max, Some(500.0));
        assert_eq!(s.panels, ComputeSettings::default().panels);
    }

    #[test]
    fn rejects_garbage() {
        assert!(ConfigFile::parse("colour = blue").is_err());
        assert!(ConfigFile::parse("quad_order").is_err());
        assert!(ConfigFile::parse("quad_order = many").is_err());
    }
}
