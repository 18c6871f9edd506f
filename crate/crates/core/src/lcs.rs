//! Deletion-tolerant solving by starting-point enumeration.
//!
//! Fix, for every pattern position, the target index where its value starts.
//! Each occurrence of a block then owns a region of its target, and the
//! block's value can be taken as a longest common subsequence of all its
//! regions: that never needs more deletions than any other common
//! subsequence. A branch is accepted when the resulting assignment passes
//! [`verify_deletions`].

use std::collections::BTreeMap;

use crate::assignment::Assignment;
use crate::check::verify_deletions;
use crate::solve::{BranchCounter, SolveError, SolveOptions, SolveOutcome, Status};
use crate::symbol::{Symbol, SymbolString};
use crate::system::{BlockRef, Semantics, System};

/// A longest common subsequence of all `strings`.
///
/// Among all longest ones, returns the one whose leftmost embedding into the
/// first string is lexicographically smallest by position. Uses a full
/// dynamic-programming table over all suffix tuples, so memory is the product
/// of `len + 1` over the inputs. An empty input list yields the empty string.
pub fn multi_lcs<S: AsRef<[Symbol]>>(strings: &[S]) -> SymbolString {
    let strs: Vec<&[Symbol]> = strings.iter().map(AsRef::as_ref).collect();
    match strs.len() {
        0 => return SymbolString::new(),
        1 => return SymbolString::from(strs[0]),
        _ => {}
    }
    if strs.iter().any(|s| s.is_empty()) {
        return SymbolString::new();
    }
    let h = strs.len();
    let dims: Vec<usize> = strs.iter().map(|s| s.len() + 1).collect();
    let mut strides = vec![1usize; h];
    for k in (0..h - 1).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let size = strides[0] * dims[0];
    let mut table = vec![0u32; size];
    let mut pos = vec![0usize; h];
    for idx in (0..size).rev() {
        let mut rem = idx;
        for k in 0..h {
            pos[k] = rem / strides[k];
            rem %= strides[k];
        }
        if (0..h).any(|k| pos[k] == strs[k].len()) {
            continue;
        }
        let c = strs[0][pos[0]];
        table[idx] = if (1..h).all(|k| strs[k][pos[k]] == c) {
            1 + table[idx + strides.iter().sum::<usize>()]
        } else {
            (0..h).map(|k| table[idx + strides[k]]).max().unwrap_or(0)
        };
    }

    let mut out = SymbolString::new();
    let mut at = vec![0usize; h];
    let mut remaining = table[0];
    while remaining > 0 {
        let flat = |p: &[usize]| p.iter().zip(&strides).map(|(a, b)| a * b).sum::<usize>();
        let mut advanced = false;
        'scan: for q in at[0]..strs[0].len() {
            let c = strs[0][q];
            let mut next = vec![q + 1; h];
            for k in 1..h {
                match strs[k][at[k]..].iter().position(|&x| x == c) {
                    Some(off) => next[k] = at[k] + off + 1,
                    None => continue 'scan,
                }
            }
            if 1 + table[flat(&next)] == remaining {
                out.push(c);
                at = next;
                remaining -= 1;
                advanced = true;
                break;
            }
        }
        debug_assert!(advanced, "lcs reconstruction stalled");
        if !advanced {
            break;
        }
    }
    out
}

/// For every equation, the 1-based start index of each pattern position.
/// Starts are non-decreasing within an equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StartingPointChoice {
    pub starts: Vec<Vec<usize>>,
}

/// The target regions owned by each block's occurrences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorBundle {
    pub regions: BTreeMap<BlockRef, Vec<SymbolString>>,
}

/// Position `i` of an equation owns `target[start(i) .. start(i+1) - 1]`,
/// the last position running to the end of the target.
pub fn factor_bundle(system: &System, choice: &StartingPointChoice) -> FactorBundle {
    let mut regions: BTreeMap<BlockRef, Vec<SymbolString>> = BTreeMap::new();
    for (eq, starts) in system.equations().iter().zip(&choice.starts) {
        let n = eq.target.len();
        for (i, &b) in eq.pattern.iter().enumerate() {
            let from = starts[i] - 1;
            let to = starts.get(i + 1).map_or(n, |&s| s - 1);
            regions
                .entry(b)
                .or_default()
                .push(SymbolString::from(&eq.target[from..to]));
        }
    }
    FactorBundle { regions }
}

struct Enumerator<'a> {
    system: &'a System,
    d: usize,
    allow_empty: bool,
    starts: Vec<Vec<usize>>,
}

impl Enumerator<'_> {
    fn evaluate(&self) -> Option<Assignment> {
        let choice = StartingPointChoice {
            starts: self.starts.clone(),
        };
        let bundle = factor_bundle(self.system, &choice);
        let mut a = Assignment::new();
        for (block, regions) in bundle.regions {
            let v = multi_lcs(&regions);
            if v.is_empty() && !self.allow_empty {
                return None;
            }
            a.insert(block, v);
        }
        verify_deletions(self.system, &a, self.d)
            .holds()
            .then_some(a)
    }

    fn walk(
        &mut self,
        eq: usize,
        pos: usize,
        counter: &mut BranchCounter,
    ) -> Result<Option<Assignment>, SolveError> {
        let eqs = self.system.equations();
        if eq == eqs.len() {
            counter.tick()?;
            return Ok(self.evaluate());
        }
        let c = eqs[eq].pattern.len();
        if pos == c {
            return self.walk(eq + 1, 0, counter);
        }
        let n = eqs[eq].target.len();
        let last = if self.allow_empty { n + 1 } else { n };
        let first = match pos {
            0 => 1,
            _ if self.allow_empty => self.starts[eq][pos - 1],
            _ => self.starts[eq][pos - 1] + 1,
        };
        // Non-erasing: each later position needs at least one more index.
        let last = if self.allow_empty {
            last
        } else {
            last.saturating_sub(c - 1 - pos)
        };
        for s in first..=last {
            self.starts[eq][pos] = s;
            if let Some(a) = self.walk(eq, pos + 1, counter)? {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }
}

/// Satisfiability with at most `d` deletions, branching over starting points.
pub fn solve_deletions_lcs(
    system: &System,
    d: usize,
    opts: &SolveOptions,
) -> Result<SolveOutcome, SolveError> {
    let mut en = Enumerator {
        system,
        d,
        allow_empty: system.semantics() == Semantics::AllowEmpty,
        starts: system
            .equations()
            .iter()
            .map(|e| vec![0; e.pattern.len()])
            .collect(),
    };
    let mut counter = BranchCounter::new(opts.branch_cap);
    let found = en.walk(0, 0, &mut counter)?;
    Ok(SolveOutcome {
        status: found.map_or(Status::Unsat, Status::Sat),
        branches_explored: counter.count,
    })
}
