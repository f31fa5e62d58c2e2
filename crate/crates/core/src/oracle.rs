//! Exhaustive ground truth for small formulas.

use crate::config::CoverageCap;
use crate::error::{Error, Result};
use crate::model::{Assignment, CnfFormula};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    /// The lowest-index satisfying assignment.
    Sat(Assignment),
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }
}

pub fn verify_assignment(f: &CnfFormula, a: &Assignment) -> Result<bool> {
    f.verify(a)
}

/// Clause `c` is falsified by assignment `x` iff `x & mask == neg`.
fn clause_masks(f: &CnfFormula) -> Vec<(u64, u64)> {
    f.clauses()
        .iter()
        .map(|c| {
            c.lits().iter().fold((0u64, 0u64), |(mask, neg), l| {
                (mask | 1 << l.var, neg | (u64::from(l.negated) << l.var))
            })
        })
        .collect()
}

fn scan(f: &CnfFormula, cap: CoverageCap) -> Result<(Vec<(u64, u64)>, u64)> {
    cap.check(f.n())?;
    if f.n() >= 64 {
        return Err(Error::OverCap {
            n: f.n(),
            cap: cap.get(),
        });
    }
    Ok((clause_masks(f), 1u64 << f.n()))
}

fn satisfies(masks: &[(u64, u64)], x: u64) -> bool {
    masks.iter().all(|&(mask, neg)| x & mask != neg)
}

/// Scans assignments in index order and returns the first model.
pub fn brute_force_sat(f: &CnfFormula, cap: CoverageCap) -> Result<SatResult> {
    let (masks, total) = scan(f, cap)?;
    Ok((0..total)
        .find(|&x| satisfies(&masks, x))
        .map_or(SatResult::Unsat, |x| {
            SatResult::Sat(Assignment::from_index(f.n(), x))
        }))
}

pub fn count_models(f: &CnfFormula, cap: CoverageCap) -> Result<u64> {
    let (masks, total) = scan(f, cap)?;
    Ok((0..total).filter(|&x| satisfies(&masks, x)).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{complete_formula, Clause, Lit};

    fn cap() -> CoverageCap {
        CoverageCap::default()
    }

    #[test]
    fn complete_formulas_are_unsat() {
        for k in 1..=4 {
            let f = complete_formula(k).unwrap();
            assert_eq!(brute_force_sat(&f, cap()).unwrap(), SatResult::Unsat);
            assert_eq!(count_models(&f, cap()).unwrap(), 0);
        }
        let f = complete_formula(2).unwrap();
        let last = f.without_clause(3);
        // dropping (-x0 v -x1) frees x0 = x1 = 1, index 3
        assert_eq!(
            brute_force_sat(&last, cap()).unwrap(),
            SatResult::Sat(Assignment::new(vec![true, true]))
        );
    }

    #[test]
    fn model_counts() {
        assert_eq!(count_models(&CnfFormula::empty(3), cap()).unwrap(), 8);
        let one = CnfFormula::new(
            3,
            vec![Clause::new(vec![Lit::pos(0), Lit::neg(2)]).unwrap()],
        )
        .unwrap();
        assert_eq!(count_models(&one, cap()).unwrap(), 6);
    }

    #[test]
    fn witness_is_lowest_and_valid() {
        let f = CnfFormula::new(
            3,
            vec![
                Clause::new(vec![Lit::pos(0), Lit::pos(1)]).unwrap(),
                Clause::new(vec![Lit::pos(2)]).unwrap(),
            ],
        )
        .unwrap();
        match brute_force_sat(&f, cap()).unwrap() {
            SatResult::Sat(a) => {
                assert_eq!(a.bits(), &[true, false, true]);
                assert!(verify_assignment(&f, &a).unwrap());
            }
            SatResult::Unsat => panic!("satisfiable"),
        }
    }

    #[test]
    fn cap_enforced() {
        let f = CnfFormula::empty(5);
        let cap = CoverageCap::new(4).unwrap();
        assert!(matches!(
            brute_force_sat(&f, cap),
            Err(Error::OverCap { .. })
        ));
        assert!(count_models(&f, cap).is_err());
    }
}
