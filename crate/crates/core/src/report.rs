//! Machine-readable verification reports.
//!
//! Every `verify_*` entry point returns a [`VerificationReport`]: a flat
//! list of relation checks, each identified by a relation name and an index
//! pair, with the measured deviation and a verdict.  The JSON shape of one
//! check is `{relation, i, j, max_abs_deviation, pass}`.

use serde::Serialize;

/// One checked relation instance.
#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub i: usize,
    pub j: usize,
    pub max_abs_deviation: f64,
    pub pass: bool,
}

/// A batch of relation checks with the tolerance they were judged against
/// and the conjunction of all verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<RelationCheck>,
    pub pass: bool,
    pub tol: f64,
}

impl VerificationReport {
    pub fn new(tol: f64) -> Self {
        VerificationReport {
            checks: Vec::new(),
            pass: true,
            tol,
        }
    }

    /// Records a check judged against the report's default tolerance.
    pub fn push(&mut self, relation: impl Into<String>, i: usize, j: usize, deviation: f64) {
        let tol = self.tol;
        self.push_with_tol(relation, i, j, deviation, tol);
    }

    /// Records a check with its own tolerance (e.g. construction-exact
    /// assertions judged tighter than derived-algebra checks).
    ///
    /// A non-finite deviation never passes.
    pub fn push_with_tol(
        &mut self,
        relation: impl Into<String>,
        i: usize,
        j: usize,
        deviation: f64,
        tol: f64,
    ) {
        let pass = deviation.is_finite() && deviation <= tol;
        self.pass &= pass;
        self.checks.push(RelationCheck {
            relation: relation.into(),
            i,
            j,
            max_abs_deviation: deviation,
            pass,
        });
    }

    /// Folds another report's checks into this one; the verdict stays the
    /// conjunction of everything recorded.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.pass &= other.pass;
        self.checks.extend(other.checks);
    }

    /// Largest recorded deviation (zero for an empty report).
    pub fn worst(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.max_abs_deviation)
            .fold(0.0, f64::max)
    }
}
