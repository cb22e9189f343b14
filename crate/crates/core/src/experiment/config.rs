use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fluid::DEFAULT_KCAP;
use crate::gaussian::CovarianceModel;

/// Random graph family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    /// Simple graph, each pair independently with probability `c/n`.
    Gnp,
    /// Uniform simple graph with `floor(cn/2)` edges.
    Gnm,
    /// `floor(cn/2)` uniform vertex pairs sampled with replacement.
    MultigraphFixed,
    /// Binomially many uniform vertex pairs, mean about `cn/2`.
    MultigraphBinomial,
}

impl Model {
    pub const ALL: [Model; 4] = [Model::Gnp, Model::Gnm, Model::MultigraphFixed, Model::MultigraphBinomial];

    pub fn is_simple(&self) -> bool {
        matches!(self, Model::Gnp | Model::Gnm)
    }

    /// Initial covariance family matching this model's edge-count law.
    pub fn covariance_model(&self) -> CovarianceModel {
        match self {
            Model::Gnm | Model::MultigraphFixed => CovarianceModel::FixedEdges,
            Model::Gnp | Model::MultigraphBinomial => CovarianceModel::BinomialEdges,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Gnp => "gnp",
            Model::Gnm => "gnm",
            Model::MultigraphFixed => "multigraph-fixed",
            Model::MultigraphBinomial => "multigraph-binomial",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.to_string() == s)
            .ok_or_else(|| Error::param(format!("unknown model '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub model: Model,
    pub n: usize,
    pub c: f64,
    /// Edge-threshold fraction for the stopped run; `None` skips it.
    pub delta: Option<f64>,
    pub samples: u64,
    pub seed: u64,
    pub matching: bool,
    /// Ignored for multigraph models, whose rank is not defined here.
    pub rank: bool,
    pub core: bool,
    pub degree_law: bool,
    pub kcap: u32,
    pub out: Option<PathBuf>,
    pub report: Option<PathBuf>,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            model: Model::Gnm,
            n: 10_000,
            c: 2.0,
            delta: None,
            samples: 100,
            seed: 0,
            matching: true,
            rank: true,
            core: true,
            degree_law: false,
            kcap: DEFAULT_KCAP,
            out: None,
            report: None,
            workers: None,
        }
    }
}

fn parse_bool(v: &str) -> Option<bool> {
    match v {
        "true" | "yes" | "1" | "on" => Some(true),
        "false" | "no" | "0" | "off" => Some(false),
        _ => None,
    }
}

impl ExperimentConfig {
    /// Sets one field from its textual key and value. Keys match the CLI
    /// flag names.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| Error::param(format!("bad value '{v}' for '{key}'")))
        }
        fn flag(key: &str, v: &str) -> Result<bool> {
            parse_bool(v).ok_or_else(|| Error::param(format!("bad boolean '{v}' for '{key}'")))
        }
        match key {
            "model" => self.model = value.parse()?,
            "n" => self.n = num(key, value)?,
            "c" => self.c = num(key, value)?,
            "delta" => {
                self.delta = match value {
                    "" | "none" => None,
                    v => Some(num(key, v)?),
                }
            }
            "samples" => self.samples = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "matching" => self.matching = flag(key, value)?,
            "rank" => self.rank = flag(key, value)?,
            "core" => self.core = flag(key, value)?,
            "degree-law" => self.degree_law = flag(key, value)?,
            "kcap" => self.kcap = num(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "report" => self.report = Some(PathBuf::from(value)),
            "workers" => self.workers = Some(num(key, value)?),
            _ => return Err(Error::param(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let mut cfg = Self::default();
        for (k, v) in pairs {
            cfg.set(k, v)?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let pairs = parse_config(&text)?;
        Self::from_pairs(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str())))
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < 1 {
            return Err(Error::param("samples must be at least 1"));
        }
        if self.n < 1 {
            return Err(Error::param("n must be at least 1"));
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::param(format!("c = {} must be positive", self.c)));
        }
        if let Some(d) = self.delta {
            if !(d > 0.0 && d < self.c / 2.0 && d <= 1.0) {
                return Err(Error::param(format!("delta = {d} must lie in (0, min(c/2, 1])")));
            }
        }
        if self.degree_law && self.delta.is_none() {
            return Err(Error::param("degree-law needs delta"));
        }
        if self.kcap < 2 {
            return Err(Error::param("kcap must be at least 2"));
        }
        if self.workers == Some(0) {
            return Err(Error::param("workers must be at least 1"));
        }
        Ok(())
    }
}

/// Parses `key = value` lines. Blank lines and lines starting with `#`
/// are skipped; keys may not repeat.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::parse(i + 1, "expected 'key = value'"));
        };
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(Error::parse(i + 1, "empty key"));
        }
        if out.iter().any(|(seen, _)| seen == k) {
            return Err(Error::parse(i + 1, format!("duplicate key '{k}'")));
        }
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_apply() {
        let text = "# run\nmodel = gnp\nn=500\n\nc = 1.5\ndelta = 0.05\nrank = no\n";
        let pairs = parse_config(text).unwrap();
        let cfg = ExperimentConfig::from_pairs(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str()))).unwrap();
        assert_eq!(cfg.model, Model::Gnp);
        assert_eq!(cfg.n, 500);
        assert_eq!(cfg.delta, Some(0.05));
        assert!(!cfg.rank);
        cfg.validate().unwrap();
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_config("a = 1\nnonsense"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_config("a = 1\na = 2").is_err());
        assert!(parse_config(" = 2").is_err());
        assert!(ExperimentConfig::from_pairs([("colour", "red")]).is_err());
        assert!(ExperimentConfig::from_pairs([("n", "-3")]).is_err());
    }

    #[test]
    fn validation() {
        let mut cfg = ExperimentConfig::default();
        cfg.delta = Some(1.5);
        assert!(cfg.validate().is_err());
        cfg.delta = None;
        cfg.degree_law = true;
        assert!(cfg.validate().is_err());
        cfg.degree_law = false;
        cfg.samples = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn model_names() {
        for m in Model::ALL {
            assert_eq!(m.to_string().parse::<Model>().unwrap(), m);
        }
    }
}
