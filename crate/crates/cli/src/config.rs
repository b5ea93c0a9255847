//! Run configuration: flags layered over an optional `key = value` file.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use serde::Serialize;

use ladder_core::{TruncationSpec, WeylDecomposition};

pub const DEFAULT_OMEGA: &str = "(s2 s3 s4)(s3)(s2)(s1)";

#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub omega: Option<String>,
    pub ell: Option<usize>,
    pub q: Option<f64>,
    pub n_max: Option<i64>,
    pub z_max: Option<i64>,
    pub margin: Option<i64>,
    pub count: Option<usize>,
    pub k: Option<i64>,
    pub c: Option<f64>,
    pub json: Option<bool>,
}

impl Overrides {
    /// `self` wins over `other`.
    fn or(self, other: Overrides) -> Overrides {
        Overrides {
            omega: self.omega.or(other.omega),
            ell: self.ell.or(other.ell),
            q: self.q.or(other.q),
            n_max: self.n_max.or(other.n_max),
            z_max: self.z_max.or(other.z_max),
            margin: self.margin.or(other.margin),
            count: self.count.or(other.count),
            k: self.k.or(other.k),
            c: self.c.or(other.c),
            json: self.json.or(other.json),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub omega: String,
    pub ell: usize,
    pub q: f64,
    pub n_max: i64,
    pub z_max: i64,
    pub margin: i64,
    pub count: usize,
    #[serde(rename = "K")]
    pub k: i64,
    pub c: Option<f64>,
    pub output: &'static str,
}

impl RunConfig {
    pub fn resolve(flags: Overrides, file: Option<&Path>) -> anyhow::Result<(Self, WeylDecomposition)> {
        let merged = match file {
            Some(path) => flags.or(read_file(path)?),
            None => flags,
        };
        let omega = merged.omega.unwrap_or_else(|| DEFAULT_OMEGA.to_string());
        let d = WeylDecomposition::parse(&omega, merged.ell).with_context(|| format!("invalid omega {omega:?}"))?;
        let cfg = RunConfig {
            omega: d.to_word_text(),
            ell: d.ell(),
            q: merged.q.unwrap_or(0.5),
            n_max: merged.n_max.unwrap_or(4),
            z_max: merged.z_max.unwrap_or(4),
            margin: merged.margin.unwrap_or(1),
            count: merged.count.unwrap_or(10),
            k: merged.k.unwrap_or(1),
            c: merged.c,
            output: if merged.json.unwrap_or(false) { "json" } else { "text" },
        };
        cfg.window().context("invalid window")?;
        if cfg.k < 0 {
            bail!("K must be non-negative");
        }
        Ok((cfg, d))
    }

    pub fn window(&self) -> ladder_core::Result<TruncationSpec> {
        TruncationSpec::new(self.n_max, self.z_max, self.margin, self.q)
    }

    pub fn json(&self) -> bool {
        self.output == "json"
    }
}

fn read_file(path: &Path) -> anyhow::Result<Overrides> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_file(&text).with_context(|| format!("in {}", path.display()))
}

pub fn parse_file(text: &str) -> anyhow::Result<Overrides> {
    let mut o = Overrides::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("line {}: expected key = value", lineno + 1);
        };
        let value = value.trim().trim_matches('"');
        let bad = || format!("line {}: bad value {value:?} for {}", lineno + 1, key.trim());
        match key.trim().replace('-', "_").as_str() {
            "omega" => o.omega = Some(value.to_string()),
            "ell" => o.ell = Some(value.parse().with_context(bad)?),
            "q" => o.q = Some(value.parse().with_context(bad)?),
            "n_max" => o.n_max = Some(value.parse().with_context(bad)?),
            "z_max" => o.z_max = Some(value.parse().with_context(bad)?),
            "margin" => o.margin = Some(value.parse().with_context(bad)?),
            "count" => o.count = Some(value.parse().with_context(bad)?),
            "K" | "k" => o.k = Some(value.parse().with_context(bad)?),
            "c" => o.c = Some(value.parse().with_context(bad)?),
            "output" => match value {
                "json" => o.json = Some(true),
                "text" => o.json = Some(false),
                _ => bail!(bad()),
            },
            other => bail!("line {}: unknown key {other:?}", lineno + 1),
        }
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_values_are_defaults_for_flags() {
        let file = parse_file("omega = (s1 s2)(s1)\nq = 0.3 # comment\nn-max=3\noutput = json\n").unwrap();
        let flags = Overrides { q: Some(0.7), ..Overrides::default() };
        let merged = flags.or(file);
        assert_eq!(merged.omega.as_deref(), Some("(s1 s2)(s1)"));
        assert_eq!(merged.q, Some(0.7));
        assert_eq!(merged.n_max, Some(3));
        assert_eq!(merged.json, Some(true));
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(parse_file("colour = red").is_err());
        assert!(parse_file("q").is_err());
        assert!(parse_file("count = many").is_err());
    }
}
