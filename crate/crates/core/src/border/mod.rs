//! Polynomial solver for systems whose repeated blocks all sit at pattern borders.
//!
//! Every border block `X` gets boolean variables `X⪯ℓ` meaning "`|σ(X)| ≤ ℓ`".
//! Length relations between the first and last block of each equation and the
//! set of lengths at which a block's prefixes and suffixes agree become 1- and
//! 2-clauses; a satisfying valuation fixes every border length, and the middle
//! of each equation is then covered by its jokers.

mod two_sat;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use two_sat::{Lit, TwoSat};

use crate::assignment::Assignment;
use crate::check::{classify, verify};
use crate::solve::{SolveError, SolveOutcome, Status};
use crate::symbol::SymbolString;
use crate::system::{BlockRef, Semantics, System};

/// The proposition `|σ(block)| ≤ bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LengthVar {
    pub block: BlockRef,
    pub bound: usize,
}

/// `block⪯bound` when `at_most`, otherwise its negation `block≻bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: LengthVar,
    pub at_most: bool,
}

impl Literal {
    pub fn negate(self) -> Literal {
        Literal {
            var: self.var,
            at_most: !self.at_most,
        }
    }
}

/// Which of the six clause families produced a clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClauseFamily {
    /// Every border block is non-empty.
    NonEmpty,
    /// `X⪯ℓ → X⪯ℓ'` for `ℓ < ℓ'`.
    Monotone,
    /// `X⪯ℓ → X⪯ℓ-1` for an invalid length `ℓ`.
    InvalidLength,
    /// The only block of a one-block equation covers the target.
    WholeTarget,
    /// The two blocks of a two-block equation cover the target.
    Cover,
    /// First and last block leave room for the middle positions.
    Room,
}

impl ClauseFamily {
    pub fn number(self) -> u8 {
        match self {
            ClauseFamily::NonEmpty => 1,
            ClauseFamily::Monotone => 2,
            ClauseFamily::InvalidLength => 3,
            ClauseFamily::WholeTarget => 4,
            ClauseFamily::Cover => 5,
            ClauseFamily::Room => 6,
        }
    }
}

/// Where a clause came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Block(BlockRef),
    Equation(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    /// One or two literals.
    pub literals: Vec<Literal>,
    pub family: ClauseFamily,
    pub origin: Origin,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Formula2Sat {
    pub variables: Vec<LengthVar>,
    pub clauses: Vec<Clause>,
    /// Set when clamping reduced some clause to the empty disjunction.
    pub contradiction: bool,
}

impl Formula2Sat {
    pub fn var_index(&self, var: LengthVar) -> Option<usize> {
        self.variables.binary_search(&var).ok()
    }

    /// Whether `valuation` (indexed like `variables`) satisfies every clause.
    pub fn satisfied_by(&self, valuation: &[bool]) -> bool {
        !self.contradiction
            && self.clauses.iter().all(|c| {
                c.literals.iter().any(|l| {
                    let i = self
                        .var_index(l.var)
                        .expect("literal over unknown variable");
                    valuation[i] == l.at_most
                })
            })
    }

    /// One clause per line, literals written `A<=2` or `-A<=2`, each line
    /// terminated by `0`.
    pub fn render(&self, system: &System) -> String {
        let mut out = format!("p 2sat {} {}\n", self.variables.len(), self.clauses.len());
        if self.contradiction {
            out.push_str("0\n");
        }
        for c in &self.clauses {
            for l in &c.literals {
                if !l.at_most {
                    out.push('-');
                }
                out.push_str(&format!(
                    "{}<={} ",
                    system.block_label(l.var.block),
                    l.var.bound
                ));
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Valid lengths of each border block with the string each one forces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidLengthTable {
    pub blocks: BTreeMap<BlockRef, BTreeMap<usize, SymbolString>>,
}

impl ValidLengthTable {
    pub fn valid_lengths(&self, block: BlockRef) -> BTreeSet<usize> {
        self.blocks
            .get(&block)
            .map(|m| m.keys().copied().collect())
            .unwrap_or_default()
    }

    pub fn is_valid(&self, block: BlockRef, len: usize) -> bool {
        self.blocks
            .get(&block)
            .is_some_and(|m| m.contains_key(&len))
    }

    pub fn canonical(&self, block: BlockRef, len: usize) -> Option<&SymbolString> {
        self.blocks.get(&block)?.get(&len)
    }
}

fn border_blocks(system: &System) -> BTreeSet<BlockRef> {
    let mut out = BTreeSet::new();
    for eq in system.equations() {
        if let (Some(&first), Some(&last)) = (eq.pattern.first(), eq.pattern.last()) {
            out.insert(first);
            out.insert(last);
        }
    }
    out
}

pub fn compute_valid_lengths(system: &System) -> Result<ValidLengthTable, SolveError> {
    if !classify(system).only_border_blocks {
        return Err(SolveError::NotBorderOnly);
    }
    let t = system.max_target_len();
    let mut blocks = BTreeMap::new();
    for block in border_blocks(system) {
        let mut prefixes = Vec::new();
        let mut suffixes = Vec::new();
        for eq in system.equations() {
            if eq.pattern.first() == Some(&block) {
                prefixes.push(&eq.target);
            }
            if eq.pattern.last() == Some(&block) {
                suffixes.push(&eq.target);
            }
        }
        let mut valid = BTreeMap::new();
        for len in 1..=t {
            if prefixes.iter().chain(&suffixes).any(|s| s.len() < len) {
                continue;
            }
            let mut forced = prefixes
                .iter()
                .map(|s| &s[..len])
                .chain(suffixes.iter().map(|s| &s[s.len() - len..]));
            let first = forced.next().expect("border block occurs somewhere");
            if forced.all(|s| s == first) {
                valid.insert(len, SymbolString::from(first));
            }
        }
        blocks.insert(block, valid);
    }
    Ok(ValidLengthTable { blocks })
}

enum Term {
    Const(bool),
    Lit(Literal),
}

struct FormulaBuilder {
    t: usize,
    formula: Formula2Sat,
}

impl FormulaBuilder {
    /// `block⪯bound` (or `block≻bound`), clamped to a constant outside `[0, t)`.
    fn term(&self, block: BlockRef, bound: i64, at_most: bool) -> Term {
        if bound < 0 {
            Term::Const(!at_most)
        } else if bound >= self.t as i64 {
            Term::Const(at_most)
        } else {
            Term::Lit(Literal {
                var: LengthVar {
                    block,
                    bound: bound as usize,
                },
                at_most,
            })
        }
    }

    fn clause(&mut self, terms: [Term; 2], family: ClauseFamily, origin: Origin) {
        let mut literals = Vec::with_capacity(2);
        for term in terms {
            match term {
                Term::Const(true) => return,
                Term::Const(false) => {}
                Term::Lit(l) => {
                    if !literals.contains(&l) {
                        literals.push(l);
                    }
                }
            }
        }
        if literals.is_empty() {
            self.formula.contradiction = true;
            return;
        }
        self.formula.clauses.push(Clause {
            literals,
            family,
            origin,
        });
    }

    fn implies(&mut self, premise: Term, conclusion: Term, family: ClauseFamily, origin: Origin) {
        let premise = match premise {
            Term::Const(b) => Term::Const(!b),
            Term::Lit(l) => Term::Lit(l.negate()),
        };
        self.clause([premise, conclusion], family, origin);
    }
}

pub fn build_formula(system: &System, table: &ValidLengthTable) -> Result<Formula2Sat, SolveError> {
    if !classify(system).only_border_blocks {
        return Err(SolveError::NotBorderOnly);
    }
    let t = system.max_target_len();
    let mut fb = FormulaBuilder {
        t,
        formula: Formula2Sat::default(),
    };
    let borders = border_blocks(system);
    for &p in &borders {
        for bound in 0..t {
            fb.formula.variables.push(LengthVar { block: p, bound });
        }
    }
    fb.formula.variables.sort();

    for &p in &borders {
        let origin = Origin::Block(p);
        fb.clause(
            [fb.term(p, 0, false), Term::Const(false)],
            ClauseFamily::NonEmpty,
            origin,
        );
        for lo in 0..=t as i64 {
            for hi in lo + 1..=t as i64 {
                fb.implies(
                    fb.term(p, lo, true),
                    fb.term(p, hi, true),
                    ClauseFamily::Monotone,
                    origin,
                );
            }
        }
        for len in 1..=t {
            if !table.is_valid(p, len) {
                let len = len as i64;
                fb.implies(
                    fb.term(p, len, true),
                    fb.term(p, len - 1, true),
                    ClauseFamily::InvalidLength,
                    origin,
                );
            }
        }
    }

    for (i, eq) in system.equations().iter().enumerate() {
        let origin = Origin::Equation(i);
        let n = eq.target.len() as i64;
        let c = eq.pattern.len() as i64;
        let (p, q) = (eq.pattern[0], eq.pattern[eq.pattern.len() - 1]);
        if c == 1 {
            fb.clause(
                [fb.term(p, n - 1, false), Term::Const(false)],
                ClauseFamily::WholeTarget,
                origin,
            );
            continue;
        }
        if c == 2 {
            for len in 0..=n {
                fb.implies(
                    fb.term(p, len, true),
                    fb.term(q, n - 1 - len, false),
                    ClauseFamily::Cover,
                    origin,
                );
            }
        }
        for len in 0..=n {
            fb.implies(
                fb.term(p, len, false),
                fb.term(q, n - c - len + 1, true),
                ClauseFamily::Room,
                origin,
            );
        }
    }
    Ok(fb.formula)
}

/// A satisfying valuation indexed like `formula.variables`, or `None`.
pub fn two_sat(formula: &Formula2Sat) -> Option<Vec<bool>> {
    if formula.contradiction {
        return None;
    }
    let mut engine = TwoSat::new(formula.variables.len());
    let lit = |l: &Literal| Lit {
        var: formula
            .var_index(l.var)
            .expect("literal over unknown variable"),
        positive: l.at_most,
    };
    for c in &formula.clauses {
        let a = lit(&c.literals[0]);
        let b = c.literals.get(1).map_or(a, lit);
        engine.add_clause(a, b);
    }
    engine.solve()
}

/// Smallest `ℓ` with `block⪯ℓ` true; `t` when no variable is true.
fn extracted_length(formula: &Formula2Sat, valuation: &[bool], block: BlockRef, t: usize) -> usize {
    (0..t)
        .find(|&bound| {
            formula
                .var_index(LengthVar { block, bound })
                .is_some_and(|i| valuation[i])
        })
        .unwrap_or(t)
}

/// Solves a non-erasing, deletion-free system whose repeated blocks are all
/// at pattern borders.
pub fn solve_border(system: &System) -> Result<SolveOutcome, SolveError> {
    if system.semantics() != Semantics::NonErasing {
        return Err(SolveError::Unsupported(
            "border solver requires non-erasing semantics",
        ));
    }
    if system.deletion_budget().unwrap_or(0) > 0 {
        return Err(SolveError::Unsupported(
            "border solver does not handle deletions",
        ));
    }
    let table = compute_valid_lengths(system)?;
    let formula = build_formula(system, &table)?;
    let Some(valuation) = two_sat(&formula) else {
        return Ok(SolveOutcome {
            status: Status::Unsat,
            branches_explored: 1,
        });
    };
    let t = system.max_target_len();
    let mut a = Assignment::new();
    for &block in table.blocks.keys() {
        let len = extracted_length(&formula, &valuation, block, t);
        let value = table.canonical(block, len).ok_or_else(|| {
            SolveError::InternalInconsistency(format!(
                "length {len} of {} is not valid",
                system.block_label(block)
            ))
        })?;
        a.insert(block, value.clone());
    }
    for (i, eq) in system.equations().iter().enumerate() {
        let c = eq.pattern.len();
        if c < 3 {
            continue;
        }
        let first = a.get(eq.pattern[0]).map_or(0, |v| v.len());
        let last = a.get(eq.pattern[c - 1]).map_or(0, |v| v.len());
        let middle = c - 2;
        let gap = eq
            .target
            .len()
            .checked_sub(first + last)
            .filter(|&g| g >= middle);
        let Some(gap) = gap else {
            return Err(SolveError::InternalInconsistency(format!(
                "equation {} leaves no room for its middle blocks",
                i + 1
            )));
        };
        let mut at = first;
        for (j, &block) in eq.pattern[1..c - 1].iter().enumerate() {
            let len = if j + 1 == middle { gap - middle + 1 } else { 1 };
            a.insert(block, &eq.target[at..at + len]);
            at += len;
        }
    }
    let verdict = verify(system, &a);
    if let Some(f) = verdict.failure() {
        return Err(SolveError::InternalInconsistency(f.describe(system)));
    }
    Ok(SolveOutcome {
        status: Status::Sat(a),
        branches_explored: 1,
    })
}

impl fmt::Display for ClauseFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}
