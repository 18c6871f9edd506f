//! Structural classification and assignment verification.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::assignment::Assignment;
use crate::symbol::{Symbol, SymbolString};
use crate::system::{BlockRef, Semantics, System};

/// The structural parameters of a system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemStats {
    /// Number of blocks, jokers included.
    pub k: usize,
    /// Number of equations.
    pub r: usize,
    /// Longest pattern.
    pub c: usize,
    /// Longest target.
    pub t: usize,
    pub duplicate_free: bool,
    pub only_border_blocks: bool,
    pub unique_target: bool,
}

impl fmt::Display for SystemStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} r={} c={} t={} duplicate_free={} only_border_blocks={} unique_target={}",
            self.k,
            self.r,
            self.c,
            self.t,
            self.duplicate_free,
            self.only_border_blocks,
            self.unique_target
        )
    }
}

/// True for jokers and for named blocks that occur once in the whole system,
/// which behave exactly like jokers.
pub fn is_joker_like(system: &System, block: BlockRef) -> bool {
    match block {
        BlockRef::Joker(_) => true,
        BlockRef::Named(_) => system.occurrence_counts().get(&block).copied() == Some(1),
    }
}

pub fn classify(system: &System) -> SystemStats {
    let eqs = system.equations();
    let counts = system.occurrence_counts();
    let duplicate_free = eqs.iter().all(|eq| {
        let mut seen = HashSet::new();
        eq.pattern
            .iter()
            .all(|b| matches!(b, BlockRef::Joker(_)) || seen.insert(*b))
    });
    let only_border_blocks = eqs.iter().all(|eq| {
        let c = eq.pattern.len();
        eq.pattern
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != 0 && i + 1 != c)
            .all(|(_, b)| matches!(b, BlockRef::Joker(_)) || counts.get(b) == Some(&1))
    });
    let unique_target = eqs.windows(2).all(|w| w[0].target == w[1].target);
    SystemStats {
        k: counts.len(),
        r: eqs.len(),
        c: eqs.iter().map(|e| e.pattern.len()).max().unwrap_or(0),
        t: system.max_target_len(),
        duplicate_free,
        only_border_blocks,
        unique_target,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("no value for block {0:?}")]
pub struct MissingBlock(pub BlockRef);

/// Concatenation of the values of `pattern`, in order.
pub fn expand(assignment: &Assignment, pattern: &[BlockRef]) -> Result<SymbolString, MissingBlock> {
    let mut out = SymbolString::new();
    for &b in pattern {
        let v = assignment.get(b).ok_or(MissingBlock(b))?;
        out.extend_from_slice(v);
    }
    Ok(out)
}

/// Why a verification failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    MissingBlock(BlockRef),
    /// Empty value under non-erasing semantics.
    EmptyBlock(BlockRef),
    /// First position where the expansion differs from the target (or the
    /// shorter length, when one is a prefix of the other).
    Mismatch {
        equation: usize,
        position: usize,
    },
    NotSubsequence {
        equation: usize,
    },
    /// A deleted-down target would become empty.
    EmptyExpansion {
        equation: usize,
    },
    TooManyDeletions {
        used: usize,
        budget: usize,
    },
}

impl Failure {
    pub fn describe(&self, system: &System) -> String {
        match *self {
            Failure::MissingBlock(b) => format!("no value for block {}", system.block_label(b)),
            Failure::EmptyBlock(b) => {
                format!(
                    "block {} is empty under non-erasing semantics",
                    system.block_label(b)
                )
            }
            Failure::Mismatch { equation, position } => {
                format!(
                    "equation {} differs from its target at position {}",
                    equation + 1,
                    position + 1
                )
            }
            Failure::NotSubsequence { equation } => {
                format!(
                    "expansion of equation {} is not a subsequence of its target",
                    equation + 1
                )
            }
            Failure::EmptyExpansion { equation } => {
                format!(
                    "equation {} would need its whole target deleted",
                    equation + 1
                )
            }
            Failure::TooManyDeletions { used, budget } => {
                format!("{used} deletions needed, budget is {budget}")
            }
        }
    }
}

/// Outcome of a verification, with the first failure when it does not hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    failure: Option<Failure>,
}

impl Verdict {
    fn ok() -> Self {
        Verdict { failure: None }
    }

    fn fail(f: Failure) -> Self {
        Verdict { failure: Some(f) }
    }

    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    pub fn failure(&self) -> Option<&Failure> {
        self.failure.as_ref()
    }
}

fn check_values(system: &System, assignment: &Assignment) -> Option<Failure> {
    for b in system.blocks_in_order() {
        match assignment.get(b) {
            None => return Some(Failure::MissingBlock(b)),
            Some(v) if v.is_empty() && system.semantics() == Semantics::NonErasing => {
                return Some(Failure::EmptyBlock(b))
            }
            _ => {}
        }
    }
    None
}

/// Exact satisfaction of every equation.
pub fn verify(system: &System, assignment: &Assignment) -> Verdict {
    if let Some(f) = check_values(system, assignment) {
        return Verdict::fail(f);
    }
    for (i, eq) in system.equations().iter().enumerate() {
        let got = match expand(assignment, &eq.pattern) {
            Ok(s) => s,
            Err(MissingBlock(b)) => return Verdict::fail(Failure::MissingBlock(b)),
        };
        if got != eq.target {
            let position = got
                .iter()
                .zip(eq.target.iter())
                .position(|(a, b)| a != b)
                .unwrap_or_else(|| got.len().min(eq.target.len()));
            return Verdict::fail(Failure::Mismatch {
                equation: i,
                position,
            });
        }
    }
    Verdict::ok()
}

/// Satisfaction after deleting at most `d` target symbols in total: every
/// expansion must be a non-empty subsequence of its target.
pub fn verify_deletions(system: &System, assignment: &Assignment, d: usize) -> Verdict {
    if let Some(f) = check_values(system, assignment) {
        return Verdict::fail(f);
    }
    let mut used = 0usize;
    for (i, eq) in system.equations().iter().enumerate() {
        let got = match expand(assignment, &eq.pattern) {
            Ok(s) => s,
            Err(MissingBlock(b)) => return Verdict::fail(Failure::MissingBlock(b)),
        };
        if got.is_empty() {
            return Verdict::fail(Failure::EmptyExpansion { equation: i });
        }
        if !is_subsequence(&got, &eq.target) {
            return Verdict::fail(Failure::NotSubsequence { equation: i });
        }
        used += eq.target.len() - got.len();
    }
    if used > d {
        return Verdict::fail(Failure::TooManyDeletions { used, budget: d });
    }
    Verdict::ok()
}

/// Greedy left-to-right embedding test.
pub fn is_subsequence(s: &[Symbol], t: &[Symbol]) -> bool {
    let mut it = t.iter();
    s.iter().all(|c| it.any(|x| x == c))
}
