//! Model specification: which chain to build, which checks to run, seeds
//! and tolerance overrides. Readable from a flat key = value file, with
//! environment variables supplying default tolerances.

use cpspin::numeric::ToleranceConfig;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("missing required key '{0}'")]
    MissingKey(&'static str),
    #[error("invalid value for '{key}': {msg}")]
    InvalidValue { key: String, msg: String },
    #[error("unknown key '{0}'")]
    UnknownKey(String),
    #[error("malformed line {line}: expected 'key = value'")]
    MalformedLine { line: usize },
}

/// The verification stages a run may request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Constraints,
    El,
    Immersion,
    Spin,
    Decomposition,
    Ladder,
    AlgebraicRecurrence,
    Heisenberg,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Constraints,
        Check::El,
        Check::Immersion,
        Check::Spin,
        Check::Decomposition,
        Check::Ladder,
        Check::AlgebraicRecurrence,
        Check::Heisenberg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Constraints => "constraints",
            Check::El => "el",
            Check::Immersion => "immersion",
            Check::Spin => "spin",
            Check::Decomposition => "decomposition",
            Check::Ladder => "ladder",
            Check::AlgebraicRecurrence => "algebraic-recurrence",
            Check::Heisenberg => "heisenberg",
        }
    }

    /// Checks whose failure makes this one meaningless; the runner skips
    /// dependents of failed (or absent-data) dependencies.
    pub fn dependencies(self) -> &'static [Check] {
        match self {
            Check::Constraints => &[],
            Check::El => &[Check::Constraints],
            Check::Immersion => &[Check::Constraints],
            Check::Spin => &[Check::Constraints],
            Check::Decomposition => &[Check::Spin],
            Check::Ladder => &[Check::Constraints],
            Check::AlgebraicRecurrence => &[Check::Spin],
            Check::Heisenberg => &[Check::Decomposition],
        }
    }
}

impl FromStr for Check {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "constraints" => Ok(Check::Constraints),
            "el" => Ok(Check::El),
            "immersion" => Ok(Check::Immersion),
            "spin" => Ok(Check::Spin),
            "decomposition" => Ok(Check::Decomposition),
            "ladder" => Ok(Check::Ladder),
            "algebraic-recurrence" => Ok(Check::AlgebraicRecurrence),
            "heisenberg" => Ok(Check::Heisenberg),
            "all" => Err("'all' expands elsewhere".into()),
            other => Err(format!("unknown check '{other}'")),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeedSpec {
    Veronese,
    Explicit(Vec<String>),
}

impl SeedSpec {
    pub fn parse(text: &str) -> SeedSpec {
        let trimmed = text.trim();
        if trimmed.eq_ignore_ascii_case("veronese") {
            SeedSpec::Veronese
        } else {
            SeedSpec::Explicit(
                trimmed
                    .split(',')
                    .map(|c| c.trim().to_string())
                    .collect(),
            )
        }
    }

    pub fn is_veronese(&self) -> bool {
        matches!(self, SeedSpec::Veronese)
    }

    pub fn describe(&self) -> String {
        match self {
            SeedSpec::Veronese => "veronese".into(),
            SeedSpec::Explicit(parts) => parts.join(", "),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub two_s: u32,
    pub seed: SeedSpec,
    pub checks: Vec<Check>,
    pub seed_rng: u64,
    pub tolerances: ToleranceConfig,
}

impl ModelSpec {
    pub fn new(two_s: u32, seed: SeedSpec) -> Self {
        Self {
            two_s,
            seed,
            checks: Check::ALL.to_vec(),
            seed_rng: 0,
            tolerances: tolerances_from_env(),
        }
    }

    /// Validates invariants that do not need the symbolic layer.
    pub fn validate(&self) -> Result<(), SpecError> {
        if self.two_s == 0 || self.two_s > 20 {
            return Err(SpecError::InvalidValue {
                key: "two_s".into(),
                msg: "must be between 1 and 20".into(),
            });
        }
        if let SeedSpec::Explicit(parts) = &self.seed {
            let expected = self.two_s as usize + 1;
            if parts.len() != expected {
                return Err(SpecError::InvalidValue {
                    key: "seed".into(),
                    msg: format!("expected {expected} components, found {}", parts.len()),
                });
            }
        }
        Ok(())
    }

    /// Flat key = value format: two_s, seed, checks, seed_rng and the four
    /// tolerance keys. '#' starts a comment.
    pub fn from_spec_text(text: &str) -> Result<Self, SpecError> {
        let mut two_s: Option<u32> = None;
        let mut seed: Option<SeedSpec> = None;
        let mut checks: Option<Vec<Check>> = None;
        let mut seed_rng: u64 = 0;
        let mut tol = tolerances_from_env();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(SpecError::MalformedLine { line: idx + 1 });
            };
            let key = key.trim();
            let value = value.trim();
            let bad = |msg: String| SpecError::InvalidValue {
                key: key.to_string(),
                msg,
            };
            match key {
                "two_s" => {
                    two_s = Some(value.parse().map_err(|e| bad(format!("{e}")))?);
                }
                "seed" => seed = Some(SeedSpec::parse(value)),
                "checks" => checks = Some(parse_checks(value).map_err(bad)?),
                "seed_rng" => {
                    seed_rng = value.parse().map_err(|e| bad(format!("{e}")))?;
                }
                "identity_rtol" => {
                    tol.identity_rtol = value.parse().map_err(|e| bad(format!("{e}")))?;
                }
                "residual_atol" => {
                    tol.residual_atol = value.parse().map_err(|e| bad(format!("{e}")))?;
                }
                "rank_svd_threshold" => {
                    tol.rank_svd_threshold = value.parse().map_err(|e| bad(format!("{e}")))?;
                }
                "fd_step" => {
                    tol.fd_step = value.parse().map_err(|e| bad(format!("{e}")))?;
                }
                other => return Err(SpecError::UnknownKey(other.to_string())),
            }
        }
        let spec = ModelSpec {
            two_s: two_s.ok_or(SpecError::MissingKey("two_s"))?,
            seed: seed.unwrap_or(SeedSpec::Veronese),
            checks: checks.unwrap_or_else(|| Check::ALL.to_vec()),
            seed_rng,
            tolerances: tol,
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn parse_checks(value: &str) -> Result<Vec<Check>, String> {
    if value.trim() == "all" {
        return Ok(Check::ALL.to_vec());
    }
    let mut out = Vec::new();
    for part in value.split(',') {
        let check: Check = part.parse()?;
        if !out.contains(&check) {
            out.push(check);
        }
    }
    if out.is_empty() {
        return Err("empty check list".into());
    }
    Ok(out)
}

/// Tolerance defaults, overridable through CPSPIN_* environment variables.
pub fn tolerances_from_env() -> ToleranceConfig {
    let mut tol = ToleranceConfig::default();
    let read = |name: &str| std::env::var(name).ok().and_then(|v| v.parse::<f64>().ok());
    if let Some(v) = read("CPSPIN_IDENTITY_RTOL") {
        tol.identity_rtol = v;
    }
    if let Some(v) = read("CPSPIN_RESIDUAL_ATOL") {
        tol.residual_atol = v;
    }
    if let Some(v) = read("CPSPIN_RANK_SVD_THRESHOLD") {
        tol.rank_svd_threshold = v;
    }
    if let Some(v) = read("CPSPIN_FD_STEP") {
        tol.fd_step = v;
    }
    tol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_file_round_trip() {
        let text = "
            # the central worked case
            two_s = 2
            seed = veronese
            checks = constraints, el, spin
            seed_rng = 7
            residual_atol = 1e-9
        ";
        let spec = ModelSpec::from_spec_text(text).unwrap();
        assert_eq!(spec.two_s, 2);
        assert!(spec.seed.is_veronese());
        assert_eq!(
            spec.checks,
            vec![Check::Constraints, Check::El, Check::Spin]
        );
        assert_eq!(spec.seed_rng, 7);
        assert_eq!(spec.tolerances.residual_atol, 1e-9);
    }

    #[test]
    fn explicit_seed_counts_components() {
        let spec = ModelSpec::from_spec_text("two_s = 2\nseed = 1, xi, xi^2").unwrap();
        assert_eq!(spec.seed, SeedSpec::Explicit(vec!["1".into(), "xi".into(), "xi^2".into()]));
        assert!(ModelSpec::from_spec_text("two_s = 2\nseed = 1, xi").is_err());
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(matches!(
            ModelSpec::from_spec_text("seed = veronese"),
            Err(SpecError::MissingKey("two_s"))
        ));
        assert!(matches!(
            ModelSpec::from_spec_text("two_s = 2\nwat = 1"),
            Err(SpecError::UnknownKey(_))
        ));
        assert!(matches!(
            ModelSpec::from_spec_text("two_s"),
            Err(SpecError::MalformedLine { line: 1 })
        ));
        assert!(ModelSpec::from_spec_text("two_s = 0").is_err());
        assert!(ModelSpec::from_spec_text("two_s = 21").is_err());
    }

    #[test]
    fn env_vars_override_tolerance_defaults() {
        std::env::set_var("CPSPIN_RESIDUAL_ATOL", "1e-6");
        let tol = tolerances_from_env();
        std::env::remove_var("CPSPIN_RESIDUAL_ATOL");
        assert_eq!(tol.residual_atol, 1e-6);
        // explicit spec values still win over the environment default
        std::env::set_var("CPSPIN_FD_STEP", "1e-3");
        let spec = ModelSpec::from_spec_text("two_s = 1\nfd_step = 1e-5").unwrap();
        std::env::remove_var("CPSPIN_FD_STEP");
        assert_eq!(spec.tolerances.fd_step, 1e-5);
    }

    #[test]
    fn check_dependencies_are_acyclic_and_ordered() {
        // every dependency precedes its dependent in ALL
        for (i, c) in Check::ALL.iter().enumerate() {
            for dep in c.dependencies() {
                let j = Check::ALL.iter().position(|x| x == dep).unwrap();
                assert!(j < i, "{dep} must precede {c}");
            }
        }
    }
}
