//! Flat `key = value` instance files, one assignment per line, `#` comments.
//!
//! ```text
//! field = "Fp(17)"
//! group = 16          # invariant factors, comma separated
//! chi = [2]           # image of each generator
//! a = [1]             # exponent vector of a
//! alpha = [0]
//! ideal = "x^n - beta*(1-a^n)"
//! n = 8
//! beta = "1"
//! ```

use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use hopfore::exactnum::{Field, FieldDescriptor};
use hopfore::grouprep::{AbelianGroup, Character, Cocycle};
use hopfore::hopfcore::{HopfPresentation, QuotientSpec};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealKind {
    None,
    /// `⟨xⁿ⟩`
    Power,
    /// `⟨xⁿ − β(1 − aⁿ)⟩`
    Central,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceConfig {
    pub field: String,
    pub group: Vec<u64>,
    pub chi: Vec<String>,
    pub a: Vec<i64>,
    pub alpha: Option<Vec<String>>,
    pub ideal: IdealKind,
    pub n: Option<u32>,
    pub beta: Option<String>,
    pub degree: Option<u32>,
    pub budget: Option<u128>,
}

fn unquote(v: &str) -> &str {
    let v = v.trim();
    v.strip_prefix('"').and_then(|s| s.strip_suffix('"')).unwrap_or(v)
}

/// `[2, 3]`, `2, 3` or `2`, split at commas.
pub fn parse_list(v: &str) -> Vec<String> {
    let v = unquote(v);
    let v = v.strip_prefix('[').and_then(|s| s.strip_suffix(']')).unwrap_or(v);
    v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn parse_num<T: FromStr>(line: usize, key: &str, v: &str) -> CliResult<T> {
    unquote(v).trim().parse().map_err(|_| CliError::Config {
        line,
        msg: format!("{key} must be a non-negative integer, got {v:?}"),
    })
}

impl InstanceConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut field = None;
        let mut group = None;
        let mut chi = None;
        let mut a = None;
        let mut cfg = InstanceConfig {
            field: String::new(),
            group: Vec::new(),
            chi: Vec::new(),
            a: Vec::new(),
            alpha: None,
            ideal: IdealKind::None,
            n: None,
            beta: None,
            degree: None,
            budget: None,
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body.split_once('=').ok_or_else(|| CliError::Config {
                line,
                msg: format!("expected key = value, got {body:?}"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "field" => field = Some(unquote(value).to_string()),
                "group" => {
                    let v: CliResult<Vec<u64>> = parse_list(value).iter().map(|s| parse_num(line, key, s)).collect();
                    group = Some(v?);
                }
                "chi" => chi = Some(parse_list(value)),
                "a" => {
                    let v: CliResult<Vec<i64>> = parse_list(value)
                        .iter()
                        .map(|s| {
                            s.parse().map_err(|_| CliError::Config {
                                line,
                                msg: format!("a must list integer exponents, got {s:?}"),
                            })
                        })
                        .collect();
                    a = Some(v?);
                }
                "alpha" => cfg.alpha = Some(parse_list(value)),
                "ideal" => {
                    let v: String = unquote(value).chars().filter(|c| !c.is_whitespace()).collect();
                    cfg.ideal = match v.as_str() {
                        "none" => IdealKind::None,
                        "x^n" => IdealKind::Power,
                        "x^n-beta*(1-a^n)" => IdealKind::Central,
                        _ => {
                            return Err(CliError::Config {
                                line,
                                msg: format!("ideal must be \"none\", \"x^n\" or \"x^n - beta*(1-a^n)\", got {value:?}"),
                            })
                        }
                    }
                }
                "n" => cfg.n = Some(parse_num(line, key, value)?),
                "beta" => cfg.beta = Some(unquote(value).to_string()),
                "degree" => cfg.degree = Some(parse_num(line, key, value)?),
                "budget" => cfg.budget = Some(parse_num(line, key, value)?),
                _ => {
                    return Err(CliError::Config {
                        line,
                        msg: format!("unknown key {key:?}"),
                    })
                }
            }
        }
        cfg.field = field.ok_or_else(|| CliError::Missing("field is required".into()))?;
        cfg.group = group.ok_or_else(|| CliError::Missing("group is required".into()))?;
        cfg.chi = chi.ok_or_else(|| CliError::Missing("chi is required".into()))?;
        cfg.a = a.unwrap_or_else(|| {
            let mut v = vec![0; cfg.group.len()];
            if let Some(first) = v.first_mut() {
                *first = 1;
            }
            v
        });
        if cfg.ideal != IdealKind::None && cfg.n.is_none() {
            return Err(CliError::Missing("n is required with a nonzero ideal".into()));
        }
        Ok(cfg)
    }

    pub fn descriptor(&self) -> CliResult<FieldDescriptor> {
        Ok(FieldDescriptor::from_str(&self.field)?)
    }

    /// The presentation over an already constructed field.
    pub fn build<F: Field>(&self, field: F) -> CliResult<HopfPresentation<F>> {
        let group = AbelianGroup::new(self.group.clone())?;
        let elems = |v: &[String]| -> CliResult<Vec<F::Elem>> {
            v.iter().map(|s| Ok(field.parse_elem(s)?)).collect()
        };
        let chi = Character::new(elems(&self.chi)?);
        let a = group.element(&self.a)?;
        let alpha = match &self.alpha {
            Some(v) => Cocycle::new(elems(v)?),
            None => Cocycle::zero(&field, &group),
        };
        let quotient = match self.ideal {
            IdealKind::None => QuotientSpec::None,
            IdealKind::Power => QuotientSpec::PowerZero(self.n.expect("checked on parse")),
            IdealKind::Central => {
                let beta = field.parse_elem(self.beta.as_deref().unwrap_or("1"))?;
                QuotientSpec::PowerCentral(self.n.expect("checked on parse"), beta)
            }
        };
        Ok(HopfPresentation::new(field, group, chi, a, alpha, quotient)?)
    }
}
