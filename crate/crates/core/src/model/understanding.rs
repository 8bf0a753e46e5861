use std::fmt;

use serde::{Deserialize, Serialize};

use super::literal::{all_literals, Literal};

/// The three marks an understanding assigns to a literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Mark {
    #[serde(rename = "t")]
    True,
    #[serde(rename = "f")]
    False,
    /// ε: the literal is free.
    #[serde(rename = "e")]
    Free,
}

impl Mark {
    /// Printable token: `t`, `f` or `e` (for ε).
    pub fn token(self) -> char {
        match self {
            Mark::True => 't',
            Mark::False => 'f',
            Mark::Free => 'e',
        }
    }

    pub fn from_token(token: &str) -> Option<Mark> {
        match token {
            "t" => Some(Mark::True),
            "f" => Some(Mark::False),
            "e" | "ε" => Some(Mark::Free),
            _ => None,
        }
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mark::True => f.write_str("t"),
            Mark::False => f.write_str("f"),
            Mark::Free => f.write_str("ε"),
        }
    }
}

/// A total map from literals to marks.
///
/// Both polarities of every variable have their own slot and nothing ties
/// them together: `x` and `¬x` may both be `t`. Consistency is a property
/// of defined understandings only.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Understanding {
    marks: Vec<Mark>,
}

impl Understanding {
    pub fn all_free(num_vars: u32) -> Self {
        Understanding { marks: vec![Mark::Free; 2 * num_vars as usize] }
    }

    /// Builds from marks listed in canonical literal order.
    pub fn from_marks(marks: Vec<Mark>) -> Self {
        assert!(marks.len().is_multiple_of(2), "marks come in literal pairs");
        Understanding { marks }
    }

    /// Starts all-free and applies the given assignments.
    pub fn from_pairs(num_vars: u32, pairs: impl IntoIterator<Item = (Literal, Mark)>) -> Self {
        let mut u = Understanding::all_free(num_vars);
        for (l, m) in pairs {
            u.set(l, m);
        }
        u
    }

    pub fn num_vars(&self) -> u32 {
        (self.marks.len() / 2) as u32
    }

    pub fn get(&self, lit: Literal) -> Mark {
        self.marks[lit.index()]
    }

    /// Sets a mark and returns the previous one.
    pub fn set(&mut self, lit: Literal, mark: Mark) -> Mark {
        std::mem::replace(&mut self.marks[lit.index()], mark)
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn iter(&self) -> impl Iterator<Item = (Literal, Mark)> + '_ {
        all_literals(self.num_vars()).map(move |l| (l, self.get(l)))
    }

    /// Literals on which the two understandings differ.
    pub fn diff(&self, other: &Understanding) -> Vec<Literal> {
        self.iter()
            .filter(|&(l, m)| other.get(l) != m)
            .map(|(l, _)| l)
            .collect()
    }

    /// Compact `tfe` string in canonical literal order.
    pub fn tokens(&self) -> String {
        self.marks.iter().map(|m| m.token()).collect()
    }
}

impl fmt::Debug for Understanding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (l, m)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}:{m}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_polarities_are_independent() {
        let x = Literal::from_dimacs(1).unwrap();
        let mut u = Understanding::all_free(1);
        u.set(x, Mark::True);
        u.set(!x, Mark::True);
        assert_eq!(u.get(x), Mark::True);
        assert_eq!(u.get(!x), Mark::True);
        assert_eq!(u.tokens(), "tt");
    }

    #[test]
    fn tokens_round_trip() {
        for m in [Mark::True, Mark::False, Mark::Free] {
            assert_eq!(Mark::from_token(&m.token().to_string()), Some(m));
        }
        assert_eq!(Mark::from_token("x"), None);
    }
}
