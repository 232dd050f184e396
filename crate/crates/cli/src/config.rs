//! Runtime settings: defaults, then a `key = value` file, then the
//! environment, then command-line flags.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use bridgekit_core::census::DEFAULT_ENUMERATION_CEILING;
use bridgekit_core::epim::DEFAULT_SEARCH_BUDGET;

pub const CEILING_ENV: &str = "BRIDGEKIT_CEILING";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Md,
    Dot,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" => Ok(Format::Md),
            "dot" => Ok(Format::Dot),
            _ => Err(format!(
                "unknown format `{s}` (expected json, csv, md or dot)"
            )),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Md => "md",
            Format::Dot => "dot",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub ceiling: u32,
    pub search_budget: u64,
    pub format: Format,
    /// Worker threads; 0 lets rayon decide, 1 runs sequentially.
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            ceiling: DEFAULT_ENUMERATION_CEILING,
            search_budget: DEFAULT_SEARCH_BUDGET,
            format: Format::default(),
            jobs: 0,
        }
    }
}

fn positive<T: FromStr + PartialEq + Default>(key: &str, v: &str) -> Result<T, String> {
    let n: T = v
        .parse()
        .map_err(|_| format!("{key}: `{v}` is not a number"))?;
    if n == T::default() {
        return Err(format!("{key} must be positive"));
    }
    Ok(n)
}

impl Config {
    /// Applies `key = value` lines. Blank lines and `#` comments are skipped;
    /// values may be quoted.
    pub fn apply_file_contents(&mut self, text: &str) -> Result<(), String> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", n + 1))?;
            let value = value.trim().trim_matches('"');
            self.set(key.trim(), value)
                .map_err(|e| format!("line {}: {e}", n + 1))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        self.apply_file_contents(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "enumeration_ceiling" | "ceiling" => self.ceiling = positive(key, value)?,
            "search_budget" => self.search_budget = positive(key, value)?,
            "output_format" | "format" => self.format = value.parse()?,
            "parallelism" | "jobs" => {
                self.jobs = value
                    .parse()
                    .map_err(|_| format!("{key}: `{value}` is not a number"))?
            }
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    pub fn apply_env(&mut self, ceiling: Option<&str>) -> Result<(), String> {
        if let Some(v) = ceiling {
            self.ceiling = positive(CEILING_ENV, v)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_overrides_defaults() {
        let mut c = Config::default();
        c.apply_file_contents(
            "# settings\nceiling = 18\nformat = \"json\"\n\njobs=1 # sequential\n",
        )
        .unwrap();
        assert_eq!(c.ceiling, 18);
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.jobs, 1);
        assert_eq!(c.search_budget, DEFAULT_SEARCH_BUDGET);
    }

    #[test]
    fn bad_lines_are_reported() {
        let mut c = Config::default();
        assert!(c
            .apply_file_contents("ceiling 18")
            .unwrap_err()
            .contains("line 1"));
        assert!(c.apply_file_contents("ceiling = 0").is_err());
        assert!(c.apply_file_contents("format = xml").is_err());
        assert!(c.apply_file_contents("colour = red").is_err());
    }

    #[test]
    fn env_overrides_file() {
        let mut c = Config::default();
        c.apply_file_contents("ceiling = 18").unwrap();
        c.apply_env(Some("12")).unwrap();
        assert_eq!(c.ceiling, 12);
        assert!(c.apply_env(Some("x")).is_err());
    }
}
