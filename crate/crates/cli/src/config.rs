//! `key = value` experiment configs.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use mtg::attack::InstanceConfig;
use mtg::gf::{towers, FieldSpec};

use crate::CliError;

#[derive(Debug, Default)]
pub struct KvConfig {
    values: BTreeMap<String, String>,
}

impl KvConfig {
    pub fn parse(text: &str) -> Result<KvConfig, CliError> {
        let mut values = BTreeMap::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| CliError::input(format!("expected key = value: {line}")))?;
            if values.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(CliError::input(format!("duplicate key {}", k.trim())));
            }
        }
        Ok(KvConfig { values })
    }

    pub fn raw(&self, key: &str) -> Result<&str, CliError> {
        self.values.get(key).map(String::as_str).ok_or_else(|| CliError::input(format!("config is missing {key}")))
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<T, CliError> {
        let v = self.raw(key)?;
        v.parse().map_err(|_| CliError::input(format!("bad value for {key}: {v}")))
    }

    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        if self.values.contains_key(key) {
            self.get(key)
        } else {
            Ok(default)
        }
    }

    /// Comma- or space-separated list.
    pub fn list<T: FromStr>(&self, key: &str) -> Result<Vec<T>, CliError> {
        self.raw(key)?
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| CliError::input(format!("bad entry in {key}: {s}"))))
            .collect()
    }

    /// A built-in tower name or a field description.
    pub fn field(&self) -> Result<Arc<FieldSpec>, CliError> {
        let v = self.raw("field")?;
        let spec = match towers::by_name(v) {
            Some(spec) => spec,
            None => FieldSpec::from_text(v).map_err(|e| CliError::input(format!("field: {e}")))?,
        };
        Ok(Arc::new(spec))
    }

    /// `twist = degree hook`, or `none` for a classical code.
    pub fn twist(&self) -> Result<Option<(usize, usize)>, CliError> {
        let v = self.raw("twist")?;
        if v == "none" {
            return Ok(None);
        }
        let parts: Vec<usize> = v.split_whitespace().map(|s| s.parse()).collect::<Result<_, _>>().map_err(|_| CliError::input(format!("bad twist {v}")))?;
        match parts[..] {
            [d, h] => Ok(Some((d, h))),
            _ => Err(CliError::input(format!("twist must be `degree hook` or `none`: {v}"))),
        }
    }

    /// `field`, `base`, `s0`, `n`, `t`, `twist`.
    pub fn instance(&self) -> Result<InstanceConfig, CliError> {
        self.instance_sized(self.get("n")?, self.get("t")?)
    }

    /// As [`KvConfig::instance`] with `n` and `t` given.
    pub fn instance_sized(&self, n: usize, t: usize) -> Result<InstanceConfig, CliError> {
        let field = self.field()?;
        let top = field.top();
        let base = self.get("base")?;
        let s0 = self.get_or("s0", top)?;
        if base > top || s0 > top || base > s0 {
            return Err(CliError::input(format!("need base <= s0 <= {top}")));
        }
        Ok(InstanceConfig { field, base, s0, n, t, twist: self.twist()? })
    }
}
