//! Check results. A check evaluates one named axiom on one subject and keeps
//! every residual it computed, labelled by the basis tuple it came from, so a
//! failure points at the exact identity that broke.

use crate::poly::Poly;

/// One residual polynomial: the difference of the two sides of an identity,
/// evaluated on a labelled tuple of basis elements. Zero means the identity
/// holds there.
#[derive(Clone, Debug)]
pub struct Residual {
    pub tuple: Vec<String>,
    pub value: Poly,
}

impl Residual {
    pub fn passes(&self) -> bool {
        self.value.is_zero()
    }
}

/// Outcome of one axiom check on one subject.
#[derive(Clone, Debug)]
pub struct Check {
    pub subject: String,
    pub axiom: String,
    pub residuals: Vec<Residual>,
}

impl Check {
    pub fn new(subject: impl Into<String>, axiom: impl Into<String>) -> Self {
        Check {
            subject: subject.into(),
            axiom: axiom.into(),
            residuals: Vec::new(),
        }
    }

    pub fn push(&mut self, tuple: Vec<String>, value: Poly) {
        self.residuals.push(Residual { tuple, value });
    }

    pub fn passes(&self) -> bool {
        self.residuals.iter().all(Residual::passes)
    }

    /// First failing residual, if any.
    pub fn first_failure(&self) -> Option<&Residual> {
        self.residuals.iter().find(|r| !r.passes())
    }
}

/// A batch of checks, in the order they were run. Order is deterministic
/// because every checker enumerates basis tuples in lexicographic order.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passes(&self) -> bool {
        self.checks.iter().all(Check::passes)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Poly, LAM};

    #[test]
    fn report_aggregates_pass_fail() {
        let mut ok = Check::new("a", "skew");
        ok.push(vec!["e".into(), "e".into()], Poly::zero());
        let mut bad = Check::new("a", "jacobi");
        bad.push(vec!["e".into()], Poly::var(LAM));
        let mut rep = Report::new();
        rep.push(ok);
        assert!(rep.passes());
        rep.push(bad);
        assert!(!rep.passes());
        let fail = rep.failing().next().unwrap();
        assert_eq!(fail.axiom, "jacobi");
        assert_eq!(fail.first_failure().unwrap().value.to_string(), "L");
    }
}
