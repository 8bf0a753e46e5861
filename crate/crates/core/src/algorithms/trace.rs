//! Replayable event log of a run, serialized as JSON lines:
//! `{"step":N,"kind":"...","payload":{...}}`.

use std::io::{self, Write};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::model::{ClauseId, ConceptKey, Literal, Mark, SetType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Procedure {
    #[serde(rename = "D")]
    AlgorithmD,
    #[serde(rename = "G")]
    AlgorithmG,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum TraceEvent {
    Recalculate {
        literal: Literal,
        /// `None` stands for the undefined case.
        result: Option<Mark>,
    },
    MarkSet {
        literal: Literal,
        from: Mark,
        to: Mark,
    },
    TypeChanged {
        literal: Literal,
        from: SetType,
        to: SetType,
    },
    ConceptAdded {
        clause: ClauseId,
        focus: Literal,
    },
    ConceptConsidered {
        target: Literal,
        clause: ClauseId,
        focus: Literal,
        /// All of C̃[target]⁻ at the moment of the choice.
        negative: Vec<ConceptKey>,
    },
    Choice {
        label: &'static str,
        index: usize,
        arity: usize,
    },
    RecurseEnter {
        procedure: Procedure,
        literal: Literal,
        depth: u32,
    },
    RecurseExit {
        procedure: Procedure,
        literal: Literal,
        depth: u32,
        result: &'static str,
    },
    FixpointReached,
    UndefinedHit {
        literal: Literal,
    },
    StateRevisit {
        target: Literal,
        digest: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub step: u64,
    #[serde(flatten)]
    pub event: TraceEvent,
}

/// Event sink for one run. When recording is off only the step counter
/// advances.
#[derive(Debug, Clone, Default)]
pub struct Trace {
    records: Option<Vec<TraceRecord>>,
    steps: u64,
}

impl Trace {
    pub fn recording() -> Self {
        Trace { records: Some(Vec::new()), steps: 0 }
    }

    pub fn counting() -> Self {
        Trace::default()
    }

    pub fn push(&mut self, event: TraceEvent) {
        self.steps += 1;
        if let Some(records) = &mut self.records {
            records.push(TraceRecord { step: self.steps, event });
        }
    }

    /// Number of events emitted so far, recorded or not.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn records(&self) -> &[TraceRecord] {
        self.records.as_deref().unwrap_or(&[])
    }

    pub fn is_recording(&self) -> bool {
        self.records.is_some()
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        for r in self.records() {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("serde_json emits UTF-8")
    }

    /// SHA-256 of the JSON-lines form, hex encoded.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_jsonl().as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_shape() {
        let mut t = Trace::recording();
        t.push(TraceEvent::MarkSet {
            literal: Literal::from_dimacs(-3).unwrap(),
            from: Mark::Free,
            to: Mark::True,
        });
        t.push(TraceEvent::FixpointReached);
        let text = t.to_jsonl();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            r#"{"step":1,"kind":"mark_set","payload":{"literal":-3,"from":"e","to":"t"}}"#
        );
        assert_eq!(lines[1], r#"{"step":2,"kind":"fixpoint_reached"}"#);
    }

    #[test]
    fn counting_trace_keeps_steps_only() {
        let mut t = Trace::counting();
        t.push(TraceEvent::FixpointReached);
        assert_eq!(t.steps(), 1);
        assert!(t.records().is_empty());
    }
}
