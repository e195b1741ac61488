//! One job per TOML file.
//!
//! ```toml
//! mode = "vanishing"
//! format = "tsv"
//!
//! [pair]
//! n = 2
//! boundary = [0, 1, 2]
//! root_orders = [2, 2, 2]
//!
//! [divisor]
//! D0 = "1/2"
//! D1 = "1/2"
//! D2 = "1/2"
//! ```
//!
//! Pushforward jobs put the stack coefficients under `[pushforward]`
//! (`a = [3, 4]`, optional `integral_part` and `forms = "plain" | "log"`);
//! monoid jobs put the matrix under `[morphism]` (`rows`, optional `field`
//! and `units` for chart lifting).

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use rootstack_core::qdivisor::{parse_rational, QDivisor, SncPair};
use rootstack_core::stackcheck::StackForms;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Pushforward,
    Vanishing,
    MonoidCheck,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Pushforward => "pushforward",
            Mode::Vanishing => "vanishing",
            Mode::MonoidCheck => "monoid-check",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Tsv,
    Structured,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub mode: Option<Mode>,
    pub format: Option<Format>,
    pub pair: Option<PairConfig>,
    #[serde(default)]
    pub divisor: BTreeMap<String, String>,
    pub pushforward: Option<PushforwardConfig>,
    pub morphism: Option<MorphismConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairConfig {
    pub n: usize,
    pub boundary: Vec<usize>,
    /// One per boundary hyperplane; all 1 when omitted.
    pub root_orders: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PushforwardConfig {
    pub a: Vec<i64>,
    pub integral_part: Option<Vec<i64>>,
    pub forms: Option<StackForms>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismConfig {
    pub rows: Vec<Vec<u64>>,
    /// `"Q"` or `"F_p"`.
    pub field: Option<String>,
    pub units: Option<Vec<String>>,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Input(format!("config: {}", e.message())))
    }

    /// The mode in the file, if any, must agree with the subcommand.
    pub fn check_mode(&self, mode: Mode) -> Result<(), CliError> {
        match self.mode {
            Some(m) if m != mode => Err(CliError::Input(format!("config is a {} job, not {}", m.name(), mode.name()))),
            _ => Ok(()),
        }
    }

    pub fn pair(&self) -> Result<SncPair, CliError> {
        let p = self.pair.as_ref().ok_or_else(|| CliError::Input("missing [pair]".into()))?;
        let orders = p.root_orders.clone().unwrap_or_else(|| vec![1; p.boundary.len()]);
        Ok(SncPair::toric(p.n, &p.boundary, &orders)?)
    }

    pub fn divisor(&self) -> Result<QDivisor, CliError> {
        let terms = self
            .divisor
            .iter()
            .map(|(k, v)| Ok((k.clone(), parse_rational(v)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(QDivisor::new(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_vanishing_job() {
        let cfg = JobConfig::parse(
            "mode = \"vanishing\"\n[pair]\nn = 2\nboundary = [0, 1]\n[divisor]\nD0 = \"1/2\"\nD1 = \"3/2\"\n",
        )
        .unwrap();
        assert_eq!(cfg.mode, Some(Mode::Vanishing));
        assert_eq!(cfg.pair().unwrap().boundary_hyperplanes(), vec![0, 1]);
        assert_eq!(cfg.divisor().unwrap().to_string(), "(1/2)D0 + (3/2)D1");
        assert!(cfg.check_mode(Mode::Pushforward).is_err());
    }

    #[test]
    fn rejects_unknown_keys_and_bad_rationals() {
        assert!(matches!(JobConfig::parse("colour = 3"), Err(CliError::Input(_))));
        let cfg = JobConfig::parse("[divisor]\nD0 = \"1/0\"\n").unwrap();
        assert!(matches!(cfg.divisor(), Err(CliError::Core(_))));
        assert!(JobConfig::parse("mode = \"sideways\"").is_err());
    }
}
