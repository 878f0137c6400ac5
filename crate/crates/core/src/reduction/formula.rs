use std::fmt;
use std::str::FromStr;

use crate::f2::BitVector;

use super::cnf::{CnfFormula, Literal};
use super::ReductionError;

/// Arithmetic formula over GF(2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ArithFormula {
    Const(bool),
    /// 1-based variable index.
    Var(usize),
    Sum(Box<ArithFormula>, Box<ArithFormula>),
    Product(Box<ArithFormula>, Box<ArithFormula>),
}

use ArithFormula::{Const, Product, Sum, Var};

impl ArithFormula {
    pub fn sum(a: Self, b: Self) -> Self {
        Sum(Box::new(a), Box::new(b))
    }

    pub fn product(a: Self, b: Self) -> Self {
        Product(Box::new(a), Box::new(b))
    }

    /// `a + b` with the rewrites `0 + y = y`, `c + c' = c ⊕ c'` and
    /// `1 + (1 + y) = y`.
    pub fn simplified_sum(a: Self, b: Self) -> Self {
        match (a, b) {
            (Const(false), y) | (y, Const(false)) => y,
            (Const(x), Const(y)) => Const(x ^ y),
            (Const(true), Sum(l, r)) | (Sum(l, r), Const(true)) if *l == Const(true) => *r,
            (a, b) => Self::sum(a, b),
        }
    }

    /// `a · b` with the rewrites `1 · y = y`, `0 · y = 0`, `y · y = y` and
    /// `y · (1 + y) = 0`.
    pub fn simplified_product(a: Self, b: Self) -> Self {
        let complement = |p: &Self, q: &Self| matches!(q, Sum(l, r) if **l == Const(true) && **r == *p);
        match (a, b) {
            (Const(true), y) | (y, Const(true)) => y,
            (Const(false), _) | (_, Const(false)) => Const(false),
            (a, b) if a == b => a,
            (a, b) if complement(&a, &b) || complement(&b, &a) => Const(false),
            (a, b) => Self::product(a, b),
        }
    }

    /// Largest variable index mentioned, 0 for a constant formula.
    pub fn num_vars(&self) -> usize {
        match self {
            Const(_) => 0,
            Var(i) => *i,
            Sum(a, b) | Product(a, b) => a.num_vars().max(b.num_vars()),
        }
    }

    /// Number of atomic leaves.
    pub fn leaves(&self) -> usize {
        match self {
            Const(_) | Var(_) => 1,
            Sum(a, b) | Product(a, b) => a.leaves() + b.leaves(),
        }
    }

    pub fn eval(&self, assignment: &BitVector) -> Result<bool, ReductionError> {
        Ok(match self {
            Const(c) => *c,
            Var(i) => {
                if *i == 0 || *i > assignment.len() {
                    return Err(ReductionError::MissingVariable(*i));
                }
                assignment.get(*i - 1)
            }
            Sum(a, b) => a.eval(assignment)? ^ b.eval(assignment)?,
            Product(a, b) => a.eval(assignment)? & b.eval(assignment)?,
        })
    }
}

pub fn eval_formula(f: &ArithFormula, assignment: &BitVector) -> Result<bool, ReductionError> {
    f.eval(assignment)
}

/// GF(2) encoding of satisfiability: a clause becomes `1 + ∏(1 + ℓ)` with
/// `¬x ↦ 1 + x`, and the clauses are multiplied together. Trivial
/// subterms are folded by the simplifying constructors.
pub fn arithmetize_cnf(f: &CnfFormula) -> ArithFormula {
    let literal = |l: &Literal| {
        if l.negated {
            ArithFormula::simplified_sum(Const(true), Var(l.var))
        } else {
            Var(l.var)
        }
    };
    f.clauses()
        .iter()
        .map(|clause| {
            let falsified = clause
                .iter()
                .map(|l| ArithFormula::simplified_sum(Const(true), literal(l)))
                .reduce(ArithFormula::simplified_product)
                .expect("clauses are nonempty");
            ArithFormula::simplified_sum(Const(true), falsified)
        })
        .reduce(ArithFormula::simplified_product)
        .expect("formulas have at least one clause")
}

impl fmt::Display for ArithFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Const(c) => write!(f, "{}", u8::from(*c)),
            Var(i) => write!(f, "x{i}"),
            Sum(a, b) if matches!(**b, Sum(..)) => write!(f, "{a}+({b})"),
            Sum(a, b) => write!(f, "{a}+{b}"),
            Product(a, b) => {
                let wrap = |g: &ArithFormula| matches!(g, Sum(..));
                if wrap(a) {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                f.write_str("*")?;
                if wrap(b) || matches!(**b, Product(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

impl FromStr for ArithFormula {
    type Err = ReductionError;

    /// Parses `+`, `*` (or juxtaposition), parentheses, `0`, `1` and
    /// `x<i>`; both operators are left-associative and `*` binds tighter.
    /// No simplification is applied, so the tree mirrors the text.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = Parser { tokens, pos: 0 };
        let f = parser.sum()?;
        if parser.pos != parser.tokens.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(f)
    }
}

struct Parser {
    tokens: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> ReductionError {
        ReductionError::FormulaSyntax {
            position: self.pos,
            message: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<ArithFormula, ReductionError> {
        let mut acc = self.product()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            acc = ArithFormula::sum(acc, self.product()?);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<ArithFormula, ReductionError> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = ArithFormula::product(acc, self.atom()?);
                }
                Some('(') | Some('x') | Some('0') | Some('1') => {
                    acc = ArithFormula::product(acc, self.atom()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn atom(&mut self) -> Result<ArithFormula, ReductionError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('0') => {
                self.pos += 1;
                Ok(Const(false))
            }
            Some('1') => {
                self.pos += 1;
                Ok(Const(true))
            }
            Some('x') => {
                self.pos += 1;
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.tokens[start..self.pos].iter().collect();
                match digits.parse::<usize>() {
                    Ok(i) if i > 0 => Ok(Var(i)),
                    _ => Err(self.error("expected a positive variable index after 'x'")),
                }
            }
            _ => Err(self.error("expected '(', '0', '1' or a variable")),
        }
    }
}
