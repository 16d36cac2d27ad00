//! Verdicts shared by every check that can pass, fail with a witness, or be
//! skipped because a budget was exceeded.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail { witness: String },
    Unchecked { reason: String },
}

impl Verdict {
    /// `Pass` when there is no witness.
    pub fn from_witness<W: fmt::Display>(w: Option<W>) -> Self {
        match w {
            None => Verdict::Pass,
            Some(w) => Verdict::Fail { witness: w.to_string() },
        }
    }

    pub fn from_bool(ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail { witness: witness() }
        }
    }

    pub fn unchecked(reason: impl Into<String>) -> Self {
        Verdict::Unchecked { reason: reason.into() }
    }

    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn failed(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    pub fn is_unchecked(&self) -> bool {
        matches!(self, Verdict::Unchecked { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail { witness } => write!(f, "fail ({witness})"),
            Verdict::Unchecked { reason } => write!(f, "unchecked ({reason})"),
        }
    }
}

/// How a quantified statement was covered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
    Skipped,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => write!(f, "exhaustive"),
            Mode::Sampled { samples, seed } => write!(f, "sampled {samples} (seed {seed})"),
            Mode::Skipped => write!(f, "skipped"),
        }
    }
}

/// One named verdict with its coverage mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    #[serde(flatten)]
    pub mode: Mode,
}

impl Check {
    pub fn new(name: &str, verdict: Verdict, mode: Mode) -> Self {
        Check {
            name: name.to_string(),
            verdict,
            mode,
        }
    }

    pub fn exhaustive(name: &str, verdict: Verdict) -> Self {
        Self::new(name, verdict, Mode::Exhaustive)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} [{}]", self.name, self.verdict, self.mode)
    }
}

/// Combines verdicts: any failure wins, then any unchecked, else pass.
pub fn combine<'a>(vs: impl IntoIterator<Item = &'a Verdict>) -> Verdict {
    let mut unchecked = None;
    for v in vs {
        match v {
            Verdict::Fail { .. } => return v.clone(),
            Verdict::Unchecked { .. } if unchecked.is_none() => unchecked = Some(v.clone()),
            _ => {}
        }
    }
    unchecked.unwrap_or(Verdict::Pass)
}
