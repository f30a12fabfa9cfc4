//! Random formula generation and the named suite of checks.

mod checks;
mod gen;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use gen::{gen_formula, ConnectiveWeights, GenConfig, Generator};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckName {
    UsualEquivIl,
    GIntoNf,
    GIdentityNf,
    SoundnessGMl,
    CharacterisationUsual,
    Thm1SoundnessN1N2,
    Thm1CharacterisationIff,
    Thm1EquivalenceIff,
    PaperCertificates,
    Prop3Instances,
    Factorisation1,
    Factorisation2,
    Thm2Instances,
    Idempotence,
    NonStrengtheningWitnesses,
}

impl CheckName {
    pub const ALL: [CheckName; 15] = [
        CheckName::UsualEquivIl,
        CheckName::GIntoNf,
        CheckName::GIdentityNf,
        CheckName::SoundnessGMl,
        CheckName::CharacterisationUsual,
        CheckName::Thm1SoundnessN1N2,
        CheckName::Thm1CharacterisationIff,
        CheckName::Thm1EquivalenceIff,
        CheckName::PaperCertificates,
        CheckName::Prop3Instances,
        CheckName::Factorisation1,
        CheckName::Factorisation2,
        CheckName::Thm2Instances,
        CheckName::Idempotence,
        CheckName::NonStrengtheningWitnesses,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::UsualEquivIl => "usual-equiv-IL",
            CheckName::GIntoNf => "g-into-nf",
            CheckName::GIdentityNf => "g-identity-nf",
            CheckName::SoundnessGMl => "soundness-g-ml",
            CheckName::CharacterisationUsual => "characterisation-usual",
            CheckName::Thm1SoundnessN1N2 => "thm1-soundness-n1-n2",
            CheckName::Thm1CharacterisationIff => "thm1-characterisation-iff",
            CheckName::Thm1EquivalenceIff => "thm1-equivalence-iff",
            CheckName::PaperCertificates => "paper-certificates",
            CheckName::Prop3Instances => "prop3-instances",
            CheckName::Factorisation1 => "factorisation-1",
            CheckName::Factorisation2 => "factorisation-2",
            CheckName::Thm2Instances => "thm2-instances",
            CheckName::Idempotence => "idempotence",
            CheckName::NonStrengtheningWitnesses => "non-strengthening-witnesses",
        }
    }

    fn stream(self) -> u64 {
        CheckName::ALL.iter().position(|&c| c == self).unwrap() as u64
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| HarnessError::UnknownCheck(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub status: CheckStatus,
    pub samples: usize,
    pub counterexample: Option<String>,
    pub ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckReport>,
    pub seed: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Runs one check with its own generator stream derived from `cfg.seed`.
pub fn run_check(name: CheckName, cfg: &GenConfig) -> Result<CheckReport, HarnessError> {
    cfg.validate()?;
    let start = Instant::now();
    let outcome = if cfg.samples == 0 && checks::is_randomized(name) {
        checks::Outcome {
            samples: 0,
            failure: None,
            skipped: true,
        }
    } else {
        checks::run(name, cfg, name.stream())?
    };
    let status = match (&outcome.failure, outcome.skipped) {
        (Some(_), _) => CheckStatus::Fail,
        (None, true) => CheckStatus::Skipped,
        (None, false) => CheckStatus::Pass,
    };
    Ok(CheckReport {
        name: name.as_str().to_string(),
        status,
        samples: outcome.samples,
        counterexample: outcome.failure.map(|f| format!("{f} (seed {})", cfg.seed)),
        ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs `names` concurrently and reports them in the given order.
pub fn run_checks(names: &[CheckName], cfg: &GenConfig) -> Result<SuiteReport, HarnessError> {
    cfg.validate()?;
    let results: Vec<Result<CheckReport, HarnessError>> = std::thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .map(|&name| s.spawn(move || run_check(name, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    });
    Ok(SuiteReport {
        checks: results.into_iter().collect::<Result<_, _>>()?,
        seed: cfg.seed,
    })
}

/// Every registered check with default generator settings.
pub fn run_paper_suite(seed: u64, samples: usize) -> SuiteReport {
    let cfg = GenConfig {
        seed,
        samples,
        ..GenConfig::default()
    };
    run_checks(&CheckName::ALL, &cfg).expect("default config is valid")
}

/// Parses check names, failing on the first unknown one.
pub fn parse_checks<'a>(
    names: impl IntoIterator<Item = &'a str>,
) -> Result<Vec<CheckName>, HarnessError> {
    names.into_iter().map(str::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in CheckName::ALL {
            assert_eq!(c.as_str().parse::<CheckName>().unwrap(), c);
        }
        assert_eq!(
            "no-such-check".parse::<CheckName>(),
            Err(HarnessError::UnknownCheck("no-such-check".into()))
        );
        assert!(parse_checks(["idempotence", "bogus"]).is_err());
    }

    #[test]
    fn report_json_shape() {
        let cfg = GenConfig {
            samples: 3,
            ..GenConfig::default()
        };
        let report = run_checks(&[CheckName::PaperCertificates, CheckName::GIntoNf], &cfg).unwrap();
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["seed"], 0);
        let checks = v["checks"].as_array().unwrap();
        assert_eq!(checks.len(), 2);
        assert_eq!(checks[0]["name"], "paper-certificates");
        assert_eq!(checks[0]["status"], "pass");
        assert!(checks[0]["counterexample"].is_null());
        assert!(checks[1]["ms"].is_u64());
        assert_eq!(checks[1]["samples"], 3);
    }

    #[test]
    fn zero_samples_skip_randomized_checks() {
        let cfg = GenConfig {
            samples: 0,
            ..GenConfig::default()
        };
        let r = run_check(CheckName::UsualEquivIl, &cfg).unwrap();
        assert_eq!(r.status, CheckStatus::Skipped);
        let r = run_check(CheckName::PaperCertificates, &cfg).unwrap();
        assert_eq!(r.status, CheckStatus::Pass);
    }

    #[test]
    fn invalid_config_is_rejected() {
        let cfg = GenConfig {
            atom_count: 0,
            ..GenConfig::default()
        };
        assert!(run_check(CheckName::Idempotence, &cfg).is_err());
    }
}
