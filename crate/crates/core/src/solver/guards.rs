use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Which runtime guards are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GuardLevel {
    /// No guards. Final verification still runs.
    Off,
    /// Guards run only on instances small enough for enumeration.
    OracleScale,
    /// Flow-based guards on every instance, enumeration guards where the
    /// instance is small enough.
    #[default]
    Always,
}

impl fmt::Display for GuardLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GuardLevel::Off => "off",
            GuardLevel::OracleScale => "oracle-scale",
            GuardLevel::Always => "always",
        })
    }
}

impl FromStr for GuardLevel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "off" => Ok(GuardLevel::Off),
            "oracle-scale" => Ok(GuardLevel::OracleScale),
            "always" => Ok(GuardLevel::Always),
            _ => Err(Error::InvalidInput(format!(
                "unknown assertion level {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuardStat {
    pub checks: u64,
    pub violations: u64,
    pub first_violation: Option<String>,
}

/// Counts of guard evaluations and violations, keyed by guard name.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuardLog {
    pub stats: BTreeMap<String, GuardStat>,
}

impl GuardLog {
    pub fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let stat = self.stats.entry(name.to_string()).or_default();
        stat.checks += 1;
        if !ok {
            stat.violations += 1;
            if stat.first_violation.is_none() {
                stat.first_violation = Some(detail());
            }
        }
    }

    pub fn all_pass(&self) -> bool {
        self.stats.values().all(|s| s.violations == 0)
    }

    pub fn violations(&self) -> impl Iterator<Item = (&str, &GuardStat)> {
        self.stats
            .iter()
            .filter(|(_, s)| s.violations > 0)
            .map(|(n, s)| (n.as_str(), s))
    }

    pub fn get(&self, name: &str) -> Option<&GuardStat> {
        self.stats.get(name)
    }

    pub fn merge(&mut self, other: &GuardLog) {
        for (name, s) in &other.stats {
            let mine = self.stats.entry(name.clone()).or_default();
            mine.checks += s.checks;
            mine.violations += s.violations;
            if mine.first_violation.is_none() {
                mine.first_violation.clone_from(&s.first_violation);
            }
        }
    }
}

/// Guard names as they appear in reports.
pub mod names {
    pub const HALO_MEMBERSHIP: &str = "halo-membership-bound";
    pub const PAD_MEETS_R: &str = "padding-meets-root-set";
    pub const CORE_COUNT: &str = "core-count-bound";
    pub const HALO_NEIGHBORS: &str = "halo-neighbor-bound";
    pub const MIN_THICKNESS: &str = "min-thickness-bound";
    pub const THICKNESS_STEP: &str = "uncovered-thickness-step";
    pub const HALVING: &str = "uncovered-halving";
    pub const MICRO_COUNT: &str = "micro-iteration-count";
    pub const MICRO_CHOICES: &str = "micro-choice-bound";
    pub const SINGLE_ROUND: &str = "large-single-round";
    pub const TWO_OLD_CORES: &str = "new-core-two-old-cores";
    pub const TWO_CORE_EXCLUSION: &str = "two-core-exclusion";
    pub const PHI_GROWTH: &str = "smallest-deficient-growth";
    pub const INNER_COUNT: &str = "inner-iteration-count";
    pub const ORACLE_RECORDS: &str = "oracle-core-halo-agreement";
    pub const LEVEL_MONOTONE: &str = "level-monotone";
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_counts_and_keeps_first_detail() {
        let mut log = GuardLog::default();
        log.check("a", true, || unreachable!());
        log.check("a", false, || "first".into());
        log.check("a", false, || "second".into());
        let s = log.get("a").unwrap();
        assert_eq!((s.checks, s.violations), (3, 2));
        assert_eq!(s.first_violation.as_deref(), Some("first"));
        assert!(!log.all_pass());
        assert_eq!(
            "oracle-scale".parse::<GuardLevel>().unwrap(),
            GuardLevel::OracleScale
        );
    }
}
