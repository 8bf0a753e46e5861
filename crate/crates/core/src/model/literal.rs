use std::fmt;
use std::ops::Not;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A propositional variable, numbered from 1 as in DIMACS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Panics on 0, which DIMACS reserves as the clause terminator.
    pub fn new(index: u32) -> Self {
        assert!(index > 0, "variables are numbered from 1");
        Var(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn positive(self) -> Literal {
        Literal::new(self, Polarity::Positive)
    }

    pub fn negative(self) -> Literal {
        Literal::new(self, Polarity::Negative)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A variable or its negation.
///
/// Packed as `2 * (var - 1) + negated`, so the derived ordering sorts by
/// variable index with the positive literal first. Every deterministic
/// iteration over literals in this crate uses that order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(u32);

impl Literal {
    pub fn new(var: Var, polarity: Polarity) -> Self {
        let neg = matches!(polarity, Polarity::Negative) as u32;
        Literal(2 * (var.0 - 1) + neg)
    }

    /// Parses a signed DIMACS literal. Returns `None` for 0 and for values
    /// that do not fit a `u32` variable index.
    pub fn from_dimacs(value: i64) -> Option<Self> {
        if value == 0 {
            return None;
        }
        let var = u32::try_from(value.unsigned_abs()).ok()?;
        let polarity = if value > 0 { Polarity::Positive } else { Polarity::Negative };
        Some(Literal::new(Var(var), polarity))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = i64::from(self.var().0);
        match self.polarity() {
            Polarity::Positive => v,
            Polarity::Negative => -v,
        }
    }

    /// Reconstructs a literal from its dense slot index.
    pub fn from_index(index: usize) -> Self {
        Literal(index as u32)
    }

    /// Dense slot index, `0..2 * num_vars`.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn var(self) -> Var {
        Var(self.0 / 2 + 1)
    }

    pub fn polarity(self) -> Polarity {
        if self.0 & 1 == 0 {
            Polarity::Positive
        } else {
            Polarity::Negative
        }
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn negate(self) -> Self {
        Literal(self.0 ^ 1)
    }
}

impl Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        self.negate()
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl Serialize for Literal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_i64(self.to_dimacs())
    }
}

impl<'de> Deserialize<'de> for Literal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(deserializer)?;
        Literal::from_dimacs(v).ok_or_else(|| serde::de::Error::custom("literal must be nonzero"))
    }
}

/// Iterates every literal over `num_vars` variables in canonical order.
pub fn all_literals(num_vars: u32) -> impl Iterator<Item = Literal> {
    (0..2 * num_vars as usize).map(Literal::from_index)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negation_flips_polarity_only() {
        let x = Var::new(1).positive();
        assert_eq!(x.negate(), Var::new(1).negative());
        assert_eq!(Var::new(1).negative().negate(), x);
        let y = Var::new(7).positive();
        assert_eq!(y.negate().negate(), y);
        assert_eq!(y.negate().var(), y.var());
    }

    #[test]
    fn ordering_is_variable_then_positive_first() {
        let lits: Vec<i64> = all_literals(3).map(Literal::to_dimacs).collect();
        assert_eq!(lits, vec![1, -1, 2, -2, 3, -3]);
    }

    #[test]
    fn dimacs_conversion() {
        assert_eq!(Literal::from_dimacs(0), None);
        assert_eq!(Literal::from_dimacs(-4).unwrap().to_dimacs(), -4);
        assert_eq!(Literal::from_dimacs(-4).unwrap().var(), Var::new(4));
        assert!(!Literal::from_dimacs(-4).unwrap().is_positive());
    }
}
