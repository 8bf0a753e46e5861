//! Text form of an understanding: one `<literal> <mark>` line per literal,
//! marks written `t`, `f` or `e`. Lines starting with `#` are comments.
//!
//! ```text
//! 1 t
//! -1 f
//! 2 e
//! -2 e
//! ```

use thiserror::Error;

use crate::model::{all_literals, Literal, Mark, Understanding};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct UnderstandingDocError {
    pub line: usize,
    pub message: String,
}

pub fn emit_understanding(u: &Understanding) -> String {
    all_literals(u.num_vars())
        .map(|l| format!("{} {}\n", l.to_dimacs(), u.get(l).token()))
        .collect()
}

/// Parses a document that must mark every literal over `num_vars`
/// variables exactly once.
pub fn parse_understanding(text: &str, num_vars: u32) -> Result<Understanding, UnderstandingDocError> {
    let mut seen: Vec<Option<Mark>> = vec![None; 2 * num_vars as usize];
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let err = |message: String| Err(UnderstandingDocError { line, message });
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let parts: Vec<&str> = content.split_whitespace().collect();
        let [lit, mark] = parts[..] else {
            return err(format!("expected `<literal> <mark>`, found `{content}`"));
        };
        let Some(l) = lit.parse::<i64>().ok().and_then(Literal::from_dimacs) else {
            return err(format!("bad literal `{lit}`"));
        };
        if l.var().index() > num_vars {
            return err(format!("literal {lit} outside {num_vars} variables"));
        }
        let Some(m) = Mark::from_token(mark) else {
            return err(format!("bad mark `{mark}`, expected t, f or e"));
        };
        if seen[l.index()].replace(m).is_some() {
            return err(format!("literal {lit} marked twice"));
        }
    }
    let mut marks = Vec::with_capacity(seen.len());
    for (i, m) in seen.into_iter().enumerate() {
        match m {
            Some(m) => marks.push(m),
            None => {
                return Err(UnderstandingDocError {
                    line: last,
                    message: format!("literal {} has no mark", Literal::from_index(i)),
                })
            }
        }
    }
    Ok(Understanding::from_marks(marks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let u = Understanding::from_pairs(
            2,
            [(Literal::from_dimacs(1).unwrap(), Mark::True), (Literal::from_dimacs(-1).unwrap(), Mark::False)],
        );
        let text = emit_understanding(&u);
        assert_eq!(text, "1 t\n-1 f\n2 e\n-2 e\n");
        assert_eq!(parse_understanding(&text, 2).unwrap(), u);
    }

    #[test]
    fn rejects_partial_and_repeated() {
        assert!(parse_understanding("1 t\n-1 f\n", 2).unwrap_err().message.contains("no mark"));
        assert_eq!(parse_understanding("1 t\n1 f\n", 1).unwrap_err().line, 2);
        assert!(parse_understanding("3 t\n", 2).is_err());
        assert!(parse_understanding("1 x\n", 1).is_err());
        assert!(parse_understanding("# ok\n1 ε\n-1 e # free\n", 1).is_ok());
    }
}
