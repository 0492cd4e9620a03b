//! Run configuration: command-line values layered over an optional `key = value` file.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use hyperbilliard::billiard::Caustic;
use hyperbilliard::geodesic::Domain;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

impl Format {
    pub fn as_str(&self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Svg => "svg",
        }
    }
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            _ => bail!("unknown format {s:?} (expected json, csv or svg)"),
        }
    }
}

/// Every option a command may read. Unset fields fall back to command defaults.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub table: Option<[f64; 3]>,
    pub point: Option<[f64; 3]>,
    /// Boundary start given by its `x1` coordinate.
    pub at: Option<f64>,
    /// Signs of `x0` and `x2` for `at`.
    pub signs: Option<[f64; 2]>,
    pub dir: Option<[f64; 3]>,
    pub toward: Option<[f64; 3]>,
    pub caustic: Option<Caustic>,
    /// Which of the directions tangent to `caustic` to take.
    pub branch: Option<usize>,
    pub bounces: Option<usize>,
    pub domain: Option<Domain>,
    pub period: Option<usize>,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    /// Closure tolerance.
    pub tol: Option<f64>,
}

const KEYS: [&str; 15] = [
    "table", "point", "at", "signs", "dir", "toward", "caustic", "branch", "bounces", "domain",
    "period", "input", "out", "format", "tol",
];

pub fn parse_floats<const N: usize>(s: &str) -> Result<[f64; N]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        bail!("expected {N} comma-separated numbers, got {s:?}");
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().with_context(|| format!("bad number {p:?}"))?;
    }
    Ok(out)
}

pub fn parse_signs(s: &str) -> Result<[f64; 2]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let sign = |p: &str| match p {
        "+" | "+1" | "1" => Ok(1.0),
        "-" | "-1" => Ok(-1.0),
        _ => Err(anyhow!("bad sign {p:?} (use + or -)")),
    };
    match parts.as_slice() {
        [a, b] => Ok([sign(a)?, sign(b)?]),
        _ => bail!("expected two signs like \"+,-\", got {s:?}"),
    }
}

pub fn parse_caustic(s: &str) -> Result<Caustic> {
    match s.trim() {
        "inf" | "infinity" | "light" => Ok(Caustic::Infinite),
        v => Ok(Caustic::Finite(
            v.parse().with_context(|| format!("bad caustic {v:?}"))?,
        )),
    }
}

pub fn parse_domain(s: &str) -> Result<Domain> {
    match s.trim() {
        "interior" => Ok(Domain::Interior),
        "exterior" => Ok(Domain::Exterior),
        v => bail!("unknown domain {v:?} (expected interior or exterior)"),
    }
}

fn join(v: &[f64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn sign_str(v: f64) -> &'static str {
    if v < 0.0 {
        "-"
    } else {
        "+"
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = RunConfig::default();
        let mut seen = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key = value", n + 1))?;
            let (k, v) = (k.trim(), v.trim());
            if seen.contains(&k.to_string()) {
                bail!("line {}: duplicate key {k:?}", n + 1);
            }
            seen.push(k.to_string());
            c.set(k, v).with_context(|| format!("line {}", n + 1))?;
        }
        Ok(c)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    fn set(&mut self, key: &str, v: &str) -> Result<()> {
        match key {
            "table" => self.table = Some(parse_floats(v)?),
            "point" => self.point = Some(parse_floats(v)?),
            "at" => self.at = Some(v.parse()?),
            "signs" => self.signs = Some(parse_signs(v)?),
            "dir" => self.dir = Some(parse_floats(v)?),
            "toward" => self.toward = Some(parse_floats(v)?),
            "caustic" => self.caustic = Some(parse_caustic(v)?),
            "branch" => self.branch = Some(v.parse()?),
            "bounces" => self.bounces = Some(v.parse()?),
            "domain" => self.domain = Some(parse_domain(v)?),
            "period" => self.period = Some(v.parse()?),
            "input" => self.input = Some(PathBuf::from(v)),
            "out" => self.out = Some(PathBuf::from(v)),
            "format" => self.format = Some(v.parse()?),
            "tol" => self.tol = Some(v.parse()?),
            _ => bail!("unknown key {key:?} (known: {})", KEYS.join(", ")),
        }
        Ok(())
    }

    /// Text form accepted by [`RunConfig::parse`]; floats use the shortest
    /// representation that reads back to the same value.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                let _ = writeln!(s, "{k} = {v}");
            }
        };
        put("table", self.table.map(|a| join(&a)));
        put("point", self.point.map(|a| join(&a)));
        put("at", self.at.map(|v| v.to_string()));
        put(
            "signs",
            self.signs
                .map(|[a, b]| format!("{},{}", sign_str(a), sign_str(b))),
        );
        put("dir", self.dir.map(|a| join(&a)));
        put("toward", self.toward.map(|a| join(&a)));
        put("caustic", self.caustic.map(|c| c.to_string()));
        put("branch", self.branch.map(|v| v.to_string()));
        put("bounces", self.bounces.map(|v| v.to_string()));
        put("domain", self.domain.map(|d| d.as_str().to_string()));
        put("period", self.period.map(|v| v.to_string()));
        put(
            "input",
            self.input.as_ref().map(|p| p.display().to_string()),
        );
        put("out", self.out.as_ref().map(|p| p.display().to_string()));
        put("format", self.format.map(|f| f.as_str().to_string()));
        put("tol", self.tol.map(|v| v.to_string()));
        s
    }

    /// Values set in `over` replace those in `self`.
    pub fn overlay(self, over: RunConfig) -> RunConfig {
        RunConfig {
            table: over.table.or(self.table),
            point: over.point.or(self.point),
            at: over.at.or(self.at),
            signs: over.signs.or(self.signs),
            dir: over.dir.or(self.dir),
            toward: over.toward.or(self.toward),
            caustic: over.caustic.or(self.caustic),
            branch: over.branch.or(self.branch),
            bounces: over.bounces.or(self.bounces),
            domain: over.domain.or(self.domain),
            period: over.period.or(self.period),
            input: over.input.or(self.input),
            out: over.out.or(self.out),
            format: over.format.or(self.format),
            tol: over.tol.or(self.tol),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let c = RunConfig::parse(
            "# orbit\ntable = 3,-3,6\n\ncaustic = inf  # light-like\nsigns = -,+\n",
        )
        .unwrap();
        assert_eq!(c.table, Some([3.0, -3.0, 6.0]));
        assert_eq!(c.caustic, Some(Caustic::Infinite));
        assert_eq!(c.signs, Some([-1.0, 1.0]));
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        assert!(RunConfig::parse("colour = red").is_err());
        assert!(RunConfig::parse("at = 1\nat = 2").is_err());
        assert!(RunConfig::parse("table = 1,2").is_err());
    }

    #[test]
    fn overlay_prefers_later_values() {
        let base = RunConfig {
            at: Some(0.5),
            bounces: Some(3),
            ..Default::default()
        };
        let over = RunConfig {
            bounces: Some(9),
            ..Default::default()
        };
        let c = base.overlay(over);
        assert_eq!((c.at, c.bounces), (Some(0.5), Some(9)));
    }
}
