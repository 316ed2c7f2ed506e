//! Experiment configuration: a flat `key = value` file.
//!
//! ```text
//! # canonical code, k = 2
//! q = 13
//! gamma = 2
//! m = 3
//! n = 12
//! msg_len = 2
//! k = 2
//! trials = 1000
//! seed = 7
//! channel = random
//! errors = 2
//! ```
//!
//! Required keys: `q m n msg_len k`. `gamma` defaults to the smallest
//! primitive element. `channel` is `random` (a codeword plus `errors`
//! symbol errors) or `adversarial` (a near-equal mix of `targets` codewords
//! on a random subspace, plus `errors` symbol errors). `radius` is `a/b`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::decoder::DEFAULT_PRUNE_LIMIT;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::frs::FrsParams;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    Random,
    Adversarial,
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Channel::Random => "random",
            Channel::Adversarial => "adversarial",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub params: FrsParams,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub radius: Option<Rational>,
    pub channel: Channel,
    pub errors: usize,
    /// Codewords mixed by the adversarial channel; defaults to `k`.
    pub targets: usize,
    /// Enumeration cap shared by pruning and the brute-force oracle.
    pub limit: u64,
    pub out: Option<PathBuf>,
}

const KEYS: [&str; 13] = [
    "q", "gamma", "m", "n", "msg_len", "k", "trials", "seed", "radius", "channel", "errors",
    "targets", "limit",
];

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidParams(format!("bad rational {s:?}, expected a/b"));
    let r = Rational::from_str(s.trim()).map_err(|_| bad())?;
    if r < Rational::from_integer(0) {
        return Err(bad());
    }
    Ok(r)
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        text.parse()
    }

    /// Re-checks everything that depends on more than one key. Call after
    /// overriding fields.
    pub fn validate(&self) -> Result<()> {
        let m = self.params.m();
        let big_n = self.params.big_n();
        if self.k == 0 || self.k > m {
            return Err(Error::InvalidParams(format!("k = {} must lie in [1, m = {m}]", self.k)));
        }
        if self.errors > big_n {
            return Err(Error::InvalidParams(format!(
                "errors = {} exceeds N = {big_n}",
                self.errors
            )));
        }
        if self.targets == 0 || self.targets > big_n {
            return Err(Error::InvalidParams(format!(
                "targets = {} must lie in [1, N = {big_n}]",
                self.targets
            )));
        }
        Ok(())
    }
}

impl FromStr for ExperimentConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut values: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(Error::Parse {
                line: line_no,
                msg: format!("expected key = value, got {line:?}"),
            })?;
            let key = key.trim();
            let Some(&known) = KEYS.iter().find(|&&k| k == key) else {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("unknown key {key:?}"),
                });
            };
            if values.insert(known, (line_no, value.trim())).is_some() {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("duplicate key {key:?}"),
                });
            }
        }

        let int = |key: &str| -> Result<Option<u64>> {
            values
                .get(key)
                .map(|&(line, v)| {
                    v.parse::<u64>().map_err(|_| Error::Parse {
                        line,
                        msg: format!("{key}: bad integer {v:?}"),
                    })
                })
                .transpose()
        };
        let required = |key: &str| -> Result<u64> {
            int(key)?.ok_or(Error::Parse {
                line: 0,
                msg: format!("missing required key {key:?}"),
            })
        };

        let q = required("q")?;
        let field = match int("gamma")? {
            Some(g) => PrimeField::with_gamma(q, g)?,
            None => PrimeField::new(q, q.saturating_sub(1).max(1))?,
        };
        let params = FrsParams::new(
            field,
            required("m")? as usize,
            required("n")? as usize,
            required("msg_len")? as usize,
        )?;
        let k = required("k")? as usize;
        let radius = values
            .get("radius")
            .map(|&(line, v)| {
                parse_rational(v).map_err(|e| Error::Parse {
                    line,
                    msg: e.to_string(),
                })
            })
            .transpose()?;
        let channel = match values.get("channel") {
            None | Some((_, "random")) => Channel::Random,
            Some((_, "adversarial")) => Channel::Adversarial,
            Some(&(line, other)) => {
                return Err(Error::Parse {
                    line,
                    msg: format!("channel must be random or adversarial, got {other:?}"),
                })
            }
        };
        let cfg = ExperimentConfig {
            params,
            k,
            trials: int("trials")?.unwrap_or(100) as usize,
            seed: int("seed")?.unwrap_or(0),
            radius,
            channel,
            errors: int("errors")?.unwrap_or(0) as usize,
            targets: int("targets")?.map_or(k, |t| t as usize),
            limit: int("limit")?.unwrap_or(DEFAULT_PRUNE_LIMIT),
            out: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
