use std::fmt;

use crate::f2::BitVector;

use super::ReductionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Self {
            var,
            negated: false,
        }
    }

    pub fn neg(var: usize) -> Self {
        Self { var, negated: true }
    }

    pub fn eval(&self, assignment: &BitVector) -> bool {
        assignment.get(self.var - 1) ^ self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬x{}", self.var)
        } else {
            write!(f, "x{}", self.var)
        }
    }
}

/// A 3-CNF formula: at least one clause, each with one to three literals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, ReductionError> {
        if clauses.is_empty() {
            return Err(ReductionError::InvalidCnf("no clauses".into()));
        }
        for (i, clause) in clauses.iter().enumerate() {
            if clause.is_empty() || clause.len() > 3 {
                return Err(ReductionError::InvalidCnf(format!(
                    "clause {} has {} literals, expected 1 to 3",
                    i + 1,
                    clause.len()
                )));
            }
            if let Some(l) = clause.iter().find(|l| l.var == 0 || l.var > num_vars) {
                return Err(ReductionError::InvalidCnf(format!(
                    "clause {} uses variable {} outside 1..={num_vars}",
                    i + 1,
                    l.var
                )));
            }
        }
        Ok(Self { num_vars, clauses })
    }

    /// Builds a formula from DIMACS-style signed integers per clause.
    pub fn from_ints(num_vars: usize, clauses: &[&[i64]]) -> Result<Self, ReductionError> {
        let clauses = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&l| Literal {
                        var: l.unsigned_abs() as usize,
                        negated: l < 0,
                    })
                    .collect()
            })
            .collect();
        Self::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn is_satisfied_by(&self, assignment: &BitVector) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.eval(assignment)))
    }

    /// First satisfying assignment in increasing integer order, by truth
    /// table.
    pub fn brute_force_solve(&self) -> Option<BitVector> {
        assert!(self.num_vars <= 24, "truth table too large");
        (0..1u64 << self.num_vars)
            .map(|a| BitVector::from_u64(self.num_vars, a))
            .find(|a| self.is_satisfied_by(a))
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, clause) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∧ ")?;
            }
            f.write_str("(")?;
            for (j, l) in clause.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ∨ ")?;
                }
                write!(f, "{l}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
