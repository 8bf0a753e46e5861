//! Resolution of "take any" choice points.
//!
//! Every nondeterministic step in the procedures asks the [`Chooser`] for an
//! index into an ordered list of options. Points with a single option are
//! resolved silently; every other point is logged as a [`Decision`] so a run
//! can be frozen into a [`ChoiceScript`] and replayed exactly.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Choice-point labels.
pub mod labels {
    pub const COMPUTE_POP: &str = "compute.pop";
    pub const D_CONCEPT: &str = "D.concept";
    pub const D_LITERAL: &str = "D.literal";
    pub const G_PAIR: &str = "G.pair";
    pub const U_CLAUSE: &str = "U.clause";
    pub const U_LITERAL: &str = "U.literal";

    pub const ALL: [&str; 6] = [COMPUTE_POP, D_CONCEPT, D_LITERAL, G_PAIR, U_CLAUSE, U_LITERAL];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChoicePolicy {
    /// Always the first option.
    Fifo,
    /// Uniform choice from a ChaCha8 stream seeded with the given value.
    SeededRandom(u64),
    Scripted(ChoiceScript),
}

impl ChoicePolicy {
    pub fn kind(&self) -> &'static str {
        match self {
            ChoicePolicy::Fifo => "fifo",
            ChoicePolicy::SeededRandom(_) => "random",
            ChoicePolicy::Scripted(_) => "script",
        }
    }
}

/// What a scripted run does once its entries are used up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OnExhausted {
    /// Abort with [`ScriptError::Exhausted`].
    #[default]
    Strict,
    /// Resolve the remaining points like [`ChoicePolicy::Fifo`].
    Fifo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceEntry {
    pub label: String,
    pub index: usize,
}

/// An ordered list of `(label, index)` decisions.
///
/// Entries are consumed per label: the k-th multi-option choice point with
/// label `L` takes the k-th entry labelled `L`. Interleaving between labels
/// therefore does not matter, and scripts for independent parts of a run can
/// be concatenated.
///
/// Text form, one entry per line, `#` starts a comment:
///
/// ```text
/// on-exhausted strict
/// U.clause 0
/// U.literal 2
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChoiceScript {
    pub entries: Vec<ChoiceEntry>,
    pub on_exhausted: OnExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("script exhausted at decision {position} ({label})")]
    Exhausted { label: String, position: usize },
    #[error("script index {index} out of range for {label} with {arity} options at decision {position}")]
    IndexOutOfRange { label: String, index: usize, arity: usize, position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ScriptParseError {
    pub line: usize,
    pub message: String,
}

impl ChoiceScript {
    pub fn new(entries: Vec<ChoiceEntry>, on_exhausted: OnExhausted) -> Self {
        ChoiceScript { entries, on_exhausted }
    }

    /// Freezes a decision log.
    pub fn from_decisions(decisions: &[Decision], on_exhausted: OnExhausted) -> Self {
        let entries = decisions
            .iter()
            .map(|d| ChoiceEntry { label: d.label.to_string(), index: d.index })
            .collect();
        ChoiceScript { entries, on_exhausted }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(match self.on_exhausted {
            OnExhausted::Strict => "on-exhausted strict\n",
            OnExhausted::Fifo => "on-exhausted fifo\n",
        });
        for e in &self.entries {
            out.push_str(&format!("{} {}\n", e.label, e.index));
        }
        out
    }
}

impl FromStr for ChoiceScript {
    type Err = ScriptParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut script = ChoiceScript::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| ScriptParseError { line: i + 1, message };
            let mut parts = line.split_whitespace();
            let head = parts.next().unwrap();
            let value = parts.next().ok_or_else(|| err(format!("missing value after {head}")))?;
            if let Some(extra) = parts.next() {
                return Err(err(format!("unexpected token {extra}")));
            }
            if head == "on-exhausted" {
                script.on_exhausted = match value {
                    "strict" => OnExhausted::Strict,
                    "fifo" => OnExhausted::Fifo,
                    other => return Err(err(format!("unknown exhaustion mode {other}"))),
                };
                continue;
            }
            if !labels::ALL.contains(&head) {
                return Err(err(format!("unknown choice label {head}")));
            }
            let index = value.parse().map_err(|_| err(format!("bad index {value}")))?;
            script.entries.push(ChoiceEntry { label: head.to_string(), index });
        }
        Ok(script)
    }
}

/// One resolved multi-option choice point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decision {
    pub label: &'static str,
    pub index: usize,
    pub arity: usize,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}/{}", self.label, self.index, self.arity)
    }
}

/// Runtime state of a policy for a single run.
#[derive(Debug, Clone)]
pub struct Chooser {
    policy: ChoicePolicy,
    rng: Option<ChaCha8Rng>,
    /// Unconsumed script indices, per label.
    queues: HashMap<&'static str, VecDeque<usize>>,
    log: Vec<Decision>,
}

impl Chooser {
    pub fn new(policy: ChoicePolicy) -> Self {
        let rng = match policy {
            ChoicePolicy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut queues: HashMap<&'static str, VecDeque<usize>> = HashMap::new();
        if let ChoicePolicy::Scripted(script) = &policy {
            for e in &script.entries {
                // Labels are validated on parse; unknown ones can never be asked for.
                if let Some(&label) = labels::ALL.iter().find(|&&l| l == e.label) {
                    queues.entry(label).or_default().push_back(e.index);
                }
            }
        }
        Chooser { policy, rng, queues, log: Vec::new() }
    }

    /// Picks an option in `0..arity`. `arity` must be positive.
    pub fn choose(&mut self, label: &'static str, arity: usize) -> Result<usize, ScriptError> {
        assert!(arity > 0, "choice point {label} with no options");
        if arity == 1 {
            return Ok(0);
        }
        let position = self.log.len();
        let index = match &self.policy {
            ChoicePolicy::Fifo => 0,
            ChoicePolicy::SeededRandom(_) => {
                self.rng.as_mut().expect("seeded").random_range(0..arity)
            }
            ChoicePolicy::Scripted(script) => {
                match self.queues.get_mut(label).and_then(VecDeque::pop_front) {
                    Some(index) if index >= arity => {
                        return Err(ScriptError::IndexOutOfRange {
                            label: label.to_string(),
                            index,
                            arity,
                            position,
                        })
                    }
                    Some(index) => index,
                    None => match script.on_exhausted {
                        OnExhausted::Fifo => 0,
                        OnExhausted::Strict => {
                            return Err(ScriptError::Exhausted {
                                label: label.to_string(),
                                position,
                            })
                        }
                    },
                }
            }
        };
        self.log.push(Decision { label, index, arity });
        Ok(index)
    }

    pub fn decisions(&self) -> &[Decision] {
        &self.log
    }

    pub fn into_decisions(self) -> Vec<Decision> {
        self.log
    }
}
