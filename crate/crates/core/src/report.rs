//! Verdicts for universally quantified checks.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Outcome of a quantified check. A sampled pass is never reported as a
/// plain pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    SampledPass,
    Fail,
    /// Some instances ran out of fuel and none failed.
    Inconclusive,
    /// A precondition did not hold, so there was nothing to check.
    Vacuous,
}

impl Verdict {
    /// Pass, sampled pass, or vacuous.
    pub fn is_success(self) -> bool {
        matches!(
            self,
            Verdict::Pass | Verdict::SampledPass | Verdict::Vacuous
        )
    }

    /// Pass or sampled pass.
    pub fn is_pass(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::SampledPass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

/// How a universal quantifier is discharged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamplingPolicy {
    pub mode: Mode,
    pub samples: u64,
    pub seed: u64,
    /// Length of the random words used for quantified subgroup elements.
    pub max_word_length: usize,
    /// Largest domain that exhaustive mode will enumerate.
    pub exhaustive_cap: u64,
}

pub const DEFAULT_SEED: u64 = 0xE9E1;
pub const DEFAULT_SAMPLES: u64 = 1000;
pub const DEFAULT_WORD_LENGTH: usize = 12;

impl Default for SamplingPolicy {
    fn default() -> Self {
        Self {
            mode: Mode::Sampled,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            max_word_length: DEFAULT_WORD_LENGTH,
            exhaustive_cap: crate::subgroup::ENUMERATION_CAP,
        }
    }
}

impl SamplingPolicy {
    pub fn sampled(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            ..Self::default()
        }
    }

    pub fn exhaustive() -> Self {
        Self {
            mode: Mode::Exhaustive,
            ..Self::default()
        }
    }

    pub fn with_word_length(mut self, len: usize) -> Self {
        self.max_word_length = len;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.mode == Mode::Sampled && self.samples == 0 {
            return Err(Error::Precondition(
                "sampled mode needs at least one sample".into(),
            ));
        }
        Ok(())
    }
}

/// Result of a quantified check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub check: String,
    pub verdict: Verdict,
    pub mode: Mode,
    /// Instances evaluated.
    pub samples: u64,
    pub seed: u64,
    /// Instances abandoned because collection ran out of budget.
    pub inconclusive: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerdictReport {
    pub fn vacuous(
        check: impl Into<String>,
        pol: &SamplingPolicy,
        note: impl Into<String>,
    ) -> Self {
        Self {
            check: check.into(),
            verdict: Verdict::Vacuous,
            mode: pol.mode,
            samples: 0,
            seed: pol.seed,
            inconclusive: 0,
            counterexample: None,
            notes: vec![note.into()],
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// Per-instance result: `Ok(None)` holds, `Ok(Some(witness))` fails.
pub(crate) type Instance = Result<Option<BTreeMap<String, String>>>;

const CHUNK: usize = 64;

/// Evaluates instances in parallel, in chunks, stopping after the first chunk
/// that contains a failure. The reported counterexample is the first failing
/// instance in instance order, so the report does not depend on scheduling.
pub(crate) fn run_instances<T, F>(
    check: &str,
    pol: &SamplingPolicy,
    instances: &[T],
    eval: F,
) -> Result<VerdictReport>
where
    T: Sync,
    F: Fn(&T) -> Instance + Sync,
{
    let mut evaluated = 0u64;
    let mut inconclusive = 0u64;
    let mut counterexample = None;
    let mut notes = Vec::new();
    for chunk in instances.chunks(CHUNK) {
        let results: Vec<Instance> = chunk.par_iter().map(&eval).collect();
        for r in results {
            evaluated += 1;
            match r {
                Ok(None) => {}
                Ok(Some(w)) => {
                    counterexample = Some(w);
                    break;
                }
                Err(e) if e.is_exhaustion() => {
                    if inconclusive == 0 {
                        notes.push(e.to_string());
                    }
                    inconclusive += 1;
                }
                Err(e) => return Err(e),
            }
        }
        if counterexample.is_some() {
            break;
        }
    }
    let verdict = match (&counterexample, inconclusive, pol.mode) {
        (Some(_), _, _) => Verdict::Fail,
        (None, 0, Mode::Exhaustive) => Verdict::Pass,
        (None, 0, Mode::Sampled) => Verdict::SampledPass,
        (None, _, _) => Verdict::Inconclusive,
    };
    Ok(VerdictReport {
        check: check.to_string(),
        verdict,
        mode: pol.mode,
        samples: evaluated,
        seed: pol.seed,
        inconclusive,
        counterexample,
        notes,
    })
}

/// Builds a witness map from `(name, value)` pairs.
pub(crate) fn witness<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
