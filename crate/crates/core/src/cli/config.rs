//! `key = value` configuration files.
//!
//! Keys are the long flag names without the leading dashes (`-` and `_`
//! are interchangeable). Blank lines and lines starting with `#` are
//! ignored. A flag given on the command line always wins over the file.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use clap::ValueEnum;

use super::args::Options;
use super::CliError;

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::usage(format!("config line {}: expected key = value", i + 1))
        })?;
        let key = key.trim().replace('_', "-");
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(CliError::usage(format!("config line {}: duplicate key '{key}'", i + 1)));
        }
    }
    Ok(map)
}

pub fn load_config(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

fn fill<T>(slot: &mut Option<T>, key: &str, value: &str) -> Result<(), CliError>
where
    T: FromStr,
    T::Err: Display,
{
    if slot.is_none() {
        let parsed = value
            .parse()
            .map_err(|e| CliError::usage(format!("config key '{key}': {e}")))?;
        *slot = Some(parsed);
    }
    Ok(())
}

fn fill_enum<T: ValueEnum>(slot: &mut Option<T>, key: &str, value: &str) -> Result<(), CliError> {
    if slot.is_none() {
        let parsed = T::from_str(value, true)
            .map_err(|e| CliError::usage(format!("config key '{key}': {e}")))?;
        *slot = Some(parsed);
    }
    Ok(())
}

impl Options {
    /// Fills every unset option from `config`.
    pub fn merge_config(&mut self, config: &BTreeMap<String, String>) -> Result<(), CliError> {
        for (key, value) in config {
            let v = value.as_str();
            match key.as_str() {
                "method" => fill(&mut self.method, key, v)?,
                "alpha" => fill(&mut self.alpha, key, v)?,
                "alphas" => fill(&mut self.alphas, key, v)?,
                "n" => fill(&mut self.n, key, v)?,
                "nmin" => fill(&mut self.nmin, key, v)?,
                "nmax" => fill(&mut self.nmax, key, v)?,
                "points-per-decade" => fill(&mut self.points_per_decade, key, v)?,
                "omega" => fill(&mut self.omega, key, v)?,
                "c" => fill(&mut self.c, key, v)?,
                "barrier" => fill(&mut self.barrier, key, v)?,
                "height-coeff" => fill(&mut self.height_coeff, key, v)?,
                "width-coeff" => fill(&mut self.width_coeff, key, v)?,
                "digits" => fill(&mut self.digits, key, v)?,
                "output" => fill_enum(&mut self.output, key, v)?,
                "out" => fill(&mut self.out, key, v)?,
                "target" => {
                    let on: bool = v
                        .parse()
                        .map_err(|e| CliError::usage(format!("config key 'target': {e}")))?;
                    self.target |= on;
                }
                "v" => fill(&mut self.v, key, v)?,
                "figure" => fill_enum(&mut self.figure, key, v)?,
                "n-policy" => fill_enum(&mut self.n_policy, key, v)?,
                "discrete-cap" => fill(&mut self.discrete_cap, key, v)?,
                "input" => fill(&mut self.input, key, v)?,
                "bins" => fill(&mut self.bins, key, v)?,
                "model" => fill_enum(&mut self.model, key, v)?,
                other => return Err(CliError::usage(format!("unknown config key '{other}'"))),
            }
        }
        Ok(())
    }

    /// Every set option as `flag name -> value`, in the spelling accepted on
    /// the command line. `out`, `config` and `figure` are left out.
    pub fn to_flag_map(&self) -> BTreeMap<String, String> {
        fn enum_name<T: ValueEnum>(v: &T) -> String {
            v.to_possible_value()
                .map(|p| p.get_name().to_string())
                .unwrap_or_default()
        }
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                m.insert(k.to_string(), v);
            }
        };
        put("method", self.method.map(|x| x.to_string()));
        put("alpha", self.alpha.map(|x| x.to_string()));
        put("alphas", self.alphas.clone());
        put("n", self.n.map(|x| x.to_string()));
        put("nmin", self.nmin.map(|x| x.to_string()));
        put("nmax", self.nmax.map(|x| x.to_string()));
        put("points-per-decade", self.points_per_decade.map(|x| x.to_string()));
        put("omega", self.omega.map(|x| x.to_string()));
        put("c", self.c.map(|x| x.to_string()));
        put("barrier", self.barrier.map(|x| x.to_string()));
        put("height-coeff", self.height_coeff.map(|x| x.to_string()));
        put("width-coeff", self.width_coeff.map(|x| x.to_string()));
        put("digits", self.digits.map(|x| x.to_string()));
        put("output", self.output.as_ref().map(enum_name));
        put("target", self.target.then(|| "true".to_string()));
        put("v", self.v.clone());
        put("n-policy", self.n_policy.as_ref().map(enum_name));
        put("discrete-cap", self.discrete_cap.map(|x| x.to_string()));
        put("input", self.input.as_ref().map(|p| p.display().to_string()));
        put("bins", self.bins.clone());
        put("model", self.model.as_ref().map(enum_name));
        m
    }
}
