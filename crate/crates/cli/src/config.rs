//! `key = value` configuration files and `λ,μ` grid files.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use howe_core::Scalar;

use crate::jobs::Settings;

/// Parses one `λ,μ` pair (also accepts whitespace or `:` as separator).
pub fn parse_point(s: &str) -> Result<(Scalar, Scalar)> {
    let parts: Vec<&str> = s.split(|c: char| c == ',' || c == ':' || c.is_whitespace()).filter(|p| !p.is_empty()).collect();
    let [l, m] = parts.as_slice() else { bail!("expected `λ,μ`, got `{s}`") };
    Ok((parse_scalar(l)?, parse_scalar(m)?))
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    s.trim().parse::<Scalar>().map_err(|e| anyhow!("bad scalar `{s}`: {e}"))
}

/// One grid point per non-empty line; `#` starts a comment.
pub fn parse_grid(text: &str) -> Result<Vec<(Scalar, Scalar)>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_point)
        .collect()
}

pub fn read_grid(path: &Path) -> Result<Vec<(Scalar, Scalar)>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading grid {}", path.display()))?;
    parse_grid(&text)
}

/// Applies `window`, `seed`, `instances`, `grid` (`λ,μ; λ,μ; …`) and returns `jobs` if set.
pub fn apply_config(text: &str, settings: &mut Settings) -> Result<Option<usize>> {
    let mut jobs = None;
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| anyhow!("line {}: expected `key = value`", k + 1))?;
        let value = value.trim();
        match key.trim() {
            "window" => settings.window = value.parse()?,
            "seed" => settings.seed = value.parse()?,
            "instances" => settings.instances = value.parse()?,
            "jobs" => jobs = Some(value.parse()?),
            "grid" => settings.grid = value.split(';').filter(|p| !p.trim().is_empty()).map(parse_point).collect::<Result<_>>()?,
            other => bail!("line {}: unknown key `{other}`", k + 1),
        }
    }
    Ok(jobs)
}
