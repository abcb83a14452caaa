//! Monotone 1-in-3SAT formulas and a brute-force oracle.

use std::collections::HashMap;
use std::fmt::Write;
use thiserror::Error;

pub const MAX_BRUTE_VARIABLES: usize = 24;
const HEADER: &str = "gourds-1in3 v1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("clause {0} repeats a variable")]
    RepeatedVariable(usize),
    #[error("variable `{0}` occurs {1} times instead of 3")]
    Occurrences(String, usize),
    #[error("{0} variables exceed the brute-force limit of {MAX_BRUTE_VARIABLES}")]
    TooLarge(usize),
}

/// Clauses of three variables; a clause is satisfied by exactly one true variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula1in3 {
    pub variables: Vec<String>,
    pub clauses: Vec<[usize; 3]>,
}

impl Formula1in3 {
    /// Build from clauses over variables `0..n`, named `v0`, `v1`, ...
    pub fn from_indices(n: usize, clauses: Vec<[usize; 3]>) -> Formula1in3 {
        Formula1in3 { variables: (0..n).map(|i| format!("v{i}")).collect(), clauses }
    }

    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0; self.variables.len()];
        for c in &self.clauses {
            for &v in c {
                occ[v] += 1;
            }
        }
        occ
    }

    /// Three distinct variables per clause and three occurrences per variable.
    pub fn validate(&self) -> Result<(), FormulaError> {
        for (i, c) in self.clauses.iter().enumerate() {
            if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
                return Err(FormulaError::RepeatedVariable(i));
            }
        }
        for (v, k) in self.occurrences().into_iter().enumerate() {
            if k != 3 {
                return Err(FormulaError::Occurrences(self.variables[v].clone(), k));
            }
        }
        Ok(())
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().filter(|&&v| assignment[v]).count() == 1)
    }
}

pub fn parse_formula(text: &str) -> Result<Formula1in3, FormulaError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim().starts_with('#'));
    match lines.next() {
        Some((_, l)) if l.trim() == HEADER => {}
        Some((i, _)) => return Err(FormulaError::Syntax { line: i + 1, msg: format!("expected `{HEADER}`") }),
        None => return Err(FormulaError::Syntax { line: 0, msg: "empty formula".into() }),
    }
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut clauses = Vec::new();
    for (i, l) in lines {
        let p: Vec<&str> = l.split_whitespace().collect();
        let [c, a, b, d] = p.as_slice() else {
            return Err(FormulaError::Syntax { line: i + 1, msg: "expected `c <var> <var> <var>`".into() });
        };
        if *c != "c" {
            return Err(FormulaError::Syntax { line: i + 1, msg: "expected `c <var> <var> <var>`".into() });
        }
        let mut clause = [0; 3];
        for (k, v) in [a, b, d].into_iter().enumerate() {
            let id = *index.entry(v.to_string()).or_insert_with(|| {
                names.push(v.to_string());
                names.len() - 1
            });
            clause[k] = id;
        }
        clauses.push(clause);
    }
    Ok(Formula1in3 { variables: names, clauses })
}

pub fn serialize_formula(f: &Formula1in3) -> String {
    let mut s = format!("{HEADER}\n");
    for c in &f.clauses {
        let _ = writeln!(s, "c {} {} {}", f.variables[c[0]], f.variables[c[1]], f.variables[c[2]]);
    }
    s
}

/// Every satisfying assignment, indexed like `f.variables`. Occurrence
/// counts are not checked here.
pub fn brute_1in3sat(f: &Formula1in3) -> Result<Vec<Vec<bool>>, FormulaError> {
    let n = f.variables.len();
    if n > MAX_BRUTE_VARIABLES {
        return Err(FormulaError::TooLarge(n));
    }
    let masks: Vec<u32> = f.clauses.iter().map(|c| c.iter().fold(0, |m, &v| m | 1 << v)).collect();
    Ok((0u32..1 << n)
        .filter(|&a| masks.iter().all(|&m| (a & m).count_ones() == 1))
        .map(|a| (0..n).map(|v| a >> v & 1 == 1).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_clause_has_three_solutions() {
        let f = Formula1in3::from_indices(3, vec![[0, 1, 2]]);
        assert_eq!(brute_1in3sat(&f).unwrap().len(), 3);
        assert!(f.validate().is_err());
    }

    #[test]
    fn no_clauses_allows_everything() {
        let f = Formula1in3::from_indices(4, vec![]);
        assert_eq!(brute_1in3sat(&f).unwrap().len(), 16);
    }

    #[test]
    fn repeated_clause_matches_single() {
        let a = Formula1in3::from_indices(4, vec![[0, 1, 2]]);
        let b = Formula1in3::from_indices(4, vec![[0, 1, 2], [0, 1, 2]]);
        assert_eq!(brute_1in3sat(&a).unwrap(), brute_1in3sat(&b).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let f = parse_formula("gourds-1in3 v1\n# demo\nc a b c\nc a b c\nc a b c\n").unwrap();
        assert_eq!(f.variables, ["a", "b", "c"]);
        f.validate().unwrap();
        assert_eq!(parse_formula(&serialize_formula(&f)).unwrap(), f);
        assert!(parse_formula("c a b c\n").is_err());
    }

    #[test]
    fn size_guard() {
        let f = Formula1in3::from_indices(25, vec![]);
        assert!(matches!(brute_1in3sat(&f), Err(FormulaError::TooLarge(25))));
    }
}
