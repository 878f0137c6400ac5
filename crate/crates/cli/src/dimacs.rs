//! DIMACS CNF input restricted to clauses of at most three literals.

use cnotpac::reduction::{CnfFormula, Literal};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct DimacsError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> DimacsError {
    DimacsError {
        line,
        message: message.into(),
    }
}

/// Parses `c` comments, a `p cnf V C` header, and `0`-terminated clauses
/// that may span lines. A `%` line ends the input.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut current_line = 0;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(err(line, "duplicate header"));
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["p", "cnf", v, c] => v.parse::<usize>().ok().zip(c.parse::<usize>().ok()),
                _ => None,
            };
            let (vars, count) = parsed.ok_or_else(|| err(line, "malformed header, expected `p cnf <vars> <clauses>`"))?;
            header = Some((vars, count, line));
            continue;
        }
        let Some((vars, _, _)) = header else {
            return Err(err(line, "clause before the `p cnf` header"));
        };
        for token in trimmed.split_whitespace() {
            let lit: i64 = token
                .parse()
                .map_err(|_| err(line, format!("invalid literal {token:?}")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(err(line, "empty clause"));
                }
                if current.len() > 3 {
                    return Err(err(current_line, format!("clause has {} literals; at most 3 are allowed", current.len())));
                }
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let var = lit.unsigned_abs() as usize;
            if var > vars {
                return Err(err(line, format!("variable {var} exceeds the declared {vars}")));
            }
            if current.is_empty() {
                current_line = line;
            }
            current.push(if lit < 0 { Literal::neg(var) } else { Literal::pos(var) });
        }
    }
    let (vars, count, header_line) = header.ok_or_else(|| err(last_line.max(1), "missing `p cnf` header"))?;
    if !current.is_empty() {
        return Err(err(current_line, "clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(err(
            header_line,
            format!("header declares {count} clauses but {} were found", clauses.len()),
        ));
    }
    CnfFormula::new(vars, clauses).map_err(|e| err(header_line, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_multiline_clauses() {
        let f = parse_dimacs("c example\np cnf 3 2\n1 -2\n 3 0\n-1 0\n").unwrap();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(f.clauses().len(), 2);
        assert_eq!(f.clauses()[0].len(), 3);
    }

    #[test]
    fn errors_name_the_line() {
        assert_eq!(parse_dimacs("p cnf x 1\n1 0\n").unwrap_err().line, 1);
        assert_eq!(parse_dimacs("p cnf 1 1\n2 0\n").unwrap_err().line, 2);
        assert_eq!(parse_dimacs("p cnf 4 1\n1 2\n3 4 0\n").unwrap_err().line, 2);
        assert_eq!(parse_dimacs("p cnf 1 2\n1 0\n").unwrap_err().line, 1);
        assert_eq!(parse_dimacs("1 0\n").unwrap_err().line, 1);
    }

    #[test]
    fn percent_ends_input() {
        let f = parse_dimacs("p cnf 1 1\n1 0\n%\n0\n").unwrap();
        assert_eq!(f.clauses().len(), 1);
    }
}
