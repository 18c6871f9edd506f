//! Outcome and error types shared by every solver.

use thiserror::Error;

use crate::assignment::Assignment;

pub const DEFAULT_BRANCH_CAP: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Maximum number of search branches before giving up.
    pub branch_cap: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            branch_cap: DEFAULT_BRANCH_CAP,
        }
    }
}

impl SolveOptions {
    pub fn with_cap(branch_cap: u64) -> Self {
        SolveOptions { branch_cap }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Sat(Assignment),
    Unsat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: Status,
    pub branches_explored: u64,
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self.status, Status::Sat(_))
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match &self.status {
            Status::Sat(a) => Some(a),
            Status::Unsat => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("branch cap of {cap} exceeded")]
    BudgetExceeded { cap: u64 },
    #[error("system has a repeated block in a non-border position")]
    NotBorderOnly,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// Branch counter that fails once the cap is passed.
#[derive(Debug)]
pub(crate) struct BranchCounter {
    pub count: u64,
    cap: u64,
}

impl BranchCounter {
    pub fn new(cap: u64) -> Self {
        BranchCounter { count: 0, cap }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), SolveError> {
        self.count += 1;
        if self.count > self.cap {
            Err(SolveError::BudgetExceeded { cap: self.cap })
        } else {
            Ok(())
        }
    }
}
