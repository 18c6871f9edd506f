//! Brute-force decision procedures.
//!
//! [`solve_xp`] picks, block by block in first-occurrence order, a substring
//! of the first target containing the block (start ascending, then end
//! ascending; the empty string first under [`AllowEmpty`](crate::system::Semantics::AllowEmpty)). The
//! first complete assignment in that order is the returned witness.
//!
//! Pruning never changes that witness, only skips dead branches:
//! - candidate values are deduplicated and must be substrings of every target
//!   that contains the block, with a length that fits each such equation;
//! - after each choice every affected equation is matched against its target
//!   with the still-unassigned blocks treated as free wildcards.
//!
//! [`solve_deletions_xp`] enumerates deletion position sets by size, in
//! lexicographic order, and runs the same search on each reduced system.

use std::collections::HashSet;

use crate::assignment::Assignment;
use crate::check::verify_deletions;
use crate::solve::{BranchCounter, SolveError, SolveOptions, SolveOutcome, Status};
use crate::symbol::{Symbol, SymbolString};
use crate::system::{BlockRef, System};

/// Block structure of a system with blocks renumbered densely in
/// first-occurrence order.
pub(crate) struct Shape {
    pub blocks: Vec<BlockRef>,
    pub patterns: Vec<Vec<usize>>,
    /// Equations containing each block, ascending.
    pub occurs_in: Vec<Vec<usize>>,
    /// Per equation: `(block, occurrences)` pairs.
    pub multiplicity: Vec<Vec<(usize, usize)>>,
    /// Blocks occurring more than once in the whole system.
    pub repeated: Vec<bool>,
    pub min_len: usize,
}

impl Shape {
    pub fn new(system: &System) -> Shape {
        let blocks = system.blocks_in_order();
        let dense: std::collections::HashMap<BlockRef, usize> =
            blocks.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let patterns: Vec<Vec<usize>> = system
            .equations()
            .iter()
            .map(|eq| eq.pattern.iter().map(|b| dense[b]).collect())
            .collect();
        let mut occurs_in = vec![Vec::new(); blocks.len()];
        let mut multiplicity = Vec::with_capacity(patterns.len());
        for (e, pat) in patterns.iter().enumerate() {
            let mut mult: Vec<(usize, usize)> = Vec::new();
            for &b in pat {
                match mult.iter_mut().find(|(x, _)| *x == b) {
                    Some(entry) => entry.1 += 1,
                    None => {
                        mult.push((b, 1));
                        occurs_in[b].push(e);
                    }
                }
            }
            multiplicity.push(mult);
        }
        let mut total = vec![0usize; blocks.len()];
        for &(b, m) in multiplicity.iter().flatten() {
            total[b] += m;
        }
        Shape {
            blocks,
            patterns,
            occurs_in,
            multiplicity,
            repeated: total.iter().map(|&n| n > 1).collect(),
            min_len: system.semantics().min_len(),
        }
    }

    fn home(&self, b: usize) -> usize {
        self.occurs_in[b][0]
    }
}

/// Depth-first search over block values for one set of targets.
struct Search<'a> {
    shape: &'a Shape,
    targets: &'a [Vec<Symbol>],
    /// `(start, len)` inside the block's home target.
    values: Vec<Option<(usize, usize)>>,
    candidates: Vec<Option<Vec<(usize, usize)>>>,
    reach: Vec<bool>,
    next: Vec<bool>,
    /// Work left in the current slice of a witness search, counted in
    /// branches and feasibility checks.
    slice: u64,
    stalled: bool,
}

impl<'a> Search<'a> {
    fn new(shape: &'a Shape, targets: &'a [Vec<Symbol>]) -> Self {
        let k = shape.blocks.len();
        let t = targets.iter().map(Vec::len).max().unwrap_or(0);
        Search {
            shape,
            targets,
            values: vec![None; k],
            candidates: vec![None; k],
            reach: vec![false; t + 1],
            next: vec![false; t + 1],
            slice: u64::MAX,
            stalled: false,
        }
    }

    /// Counts one branch; false once the current slice is used up.
    fn step(&mut self, counter: &mut BranchCounter) -> Result<bool, SolveError> {
        counter.tick()?;
        if self.slice == 0 {
            self.stalled = true;
            return Ok(false);
        }
        self.slice -= 1;
        Ok(true)
    }

    fn value(&self, b: usize) -> Option<&'a [Symbol]> {
        self.values[b].map(|(s, l)| &self.targets[self.shape.home(b)][s..s + l])
    }

    fn compute_candidates(&self, b: usize) -> Vec<(usize, usize)> {
        let shape = self.shape;
        let home = shape.home(b);
        let t = &self.targets[home];
        let n = t.len();

        let mut len_ok = vec![true; n + 1];
        for ok in len_ok.iter_mut().take(shape.min_len) {
            *ok = false;
        }
        for &e in &shape.occurs_in[b] {
            let tl = self.targets[e].len();
            let mut own = 0;
            let mut rest = 0;
            for &(x, m) in &shape.multiplicity[e] {
                if x == b {
                    own = m;
                } else {
                    rest += m * shape.min_len;
                }
            }
            let alone = shape.multiplicity[e].len() == 1;
            for (len, ok) in len_ok.iter_mut().enumerate() {
                if own * len + rest > tl || (alone && own * len != tl) {
                    *ok = false;
                }
            }
        }

        let mut out = Vec::new();
        if len_ok[0] {
            out.push((0, 0));
        }
        let mut seen: HashSet<&[Symbol]> = HashSet::new();
        for i in 0..n {
            for j in i..n {
                let len = j - i + 1;
                if !len_ok[len] {
                    continue;
                }
                let v = &t[i..=j];
                if !seen.insert(v) {
                    continue;
                }
                let everywhere = shape.occurs_in[b]
                    .iter()
                    .filter(|&&e| e != home)
                    .all(|&e| self.targets[e].windows(len).any(|w| w == v));
                if everywhere {
                    out.push((i, len));
                }
            }
        }
        out
    }

    /// Can equation `e` still match, reading unassigned blocks as wildcards?
    fn feasible(&mut self, e: usize) -> bool {
        let t = &self.targets[e];
        let n = t.len();
        let reach = &mut self.reach;
        let next = &mut self.next;
        reach[..=n].fill(false);
        reach[0] = true;
        let mut wild_min = 0usize;
        let mut wild = false;
        for &b in &self.shape.patterns[e] {
            let Some((s, l)) = self.values[b] else {
                wild = true;
                wild_min += self.shape.min_len;
                continue;
            };
            if wild {
                let Some(first) = reach[..=n].iter().position(|&x| x) else {
                    return false;
                };
                for (q, r) in reach[..=n].iter_mut().enumerate() {
                    *r = q >= first + wild_min;
                }
                wild = false;
                wild_min = 0;
            }
            if l > n {
                return false;
            }
            let v = &self.targets[self.shape.occurs_in[b][0]][s..s + l];
            next[..=n].fill(false);
            let mut any = false;
            for p in 0..=n - l {
                if reach[p] && &t[p..p + l] == v {
                    next[p + l] = true;
                    any = true;
                }
            }
            if !any {
                return false;
            }
            std::mem::swap(reach, next);
        }
        if wild {
            match reach[..=n].iter().position(|&x| x) {
                Some(first) => first + wild_min <= n,
                None => false,
            }
        } else {
            reach[n]
        }
    }

    /// Can the current partial assignment be completed? Branches only on
    /// unassigned repeated blocks, most constrained first; blocks occurring
    /// once stay wildcards, which `feasible` decides exactly. Leaves `values`
    /// unchanged.
    fn completable(&mut self, counter: &mut BranchCounter) -> Result<bool, SolveError> {
        let mut best: Option<(usize, Vec<(usize, usize)>)> = None;
        for b in 0..self.shape.blocks.len() {
            if !self.shape.repeated[b] || self.values[b].is_some() {
                continue;
            }
            let bound = best.as_ref().map_or(usize::MAX, |(_, l)| l.len());
            let cands = self.candidates_of(b);
            let mut live = Vec::new();
            for &c in &cands {
                self.values[b] = Some(c);
                if self.feasible_around(b) {
                    live.push(c);
                    if live.len() >= bound {
                        break;
                    }
                }
            }
            self.values[b] = None;
            self.candidates[b] = Some(cands);
            if self.stalled {
                return Ok(false);
            }
            if live.len() < bound {
                let forced = live.len() <= 1;
                best = Some((b, live));
                if forced {
                    break;
                }
            }
        }
        let Some((b, live)) = best else {
            return Ok(true);
        };
        let mut found = false;
        for c in live {
            if !self.step(counter)? {
                break;
            }
            self.values[b] = Some(c);
            if self.completable(counter)? {
                found = true;
                break;
            }
        }
        self.values[b] = None;
        Ok(found)
    }

    fn candidates_of(&mut self, b: usize) -> Vec<(usize, usize)> {
        if self.candidates[b].is_none() {
            self.candidates[b] = Some(self.compute_candidates(b));
        }
        self.candidates[b].take().unwrap_or_default()
    }

    fn feasible_around(&mut self, b: usize) -> bool {
        if self.slice == 0 {
            self.stalled = true;
            return false;
        }
        self.slice -= 1;
        (0..self.shape.occurs_in[b].len()).all(|i| {
            let e = self.shape.occurs_in[b][i];
            self.feasible(e)
        })
    }

    /// Plain depth-first enumeration in first-occurrence order.
    fn enumerate(&mut self, b: usize, counter: &mut BranchCounter) -> Result<bool, SolveError> {
        if b == self.shape.blocks.len() {
            return Ok(true);
        }
        let cands = self.candidates_of(b);
        let mut found = false;
        for &c in &cands {
            if !self.step(counter)? {
                break;
            }
            self.values[b] = Some(c);
            if self.feasible_around(b) && self.enumerate(b + 1, counter)? {
                found = true;
                break;
            }
        }
        if !found {
            self.values[b] = None;
        }
        self.candidates[b] = Some(cands);
        Ok(found)
    }

    /// Fixes blocks in first-occurrence order, each to its first candidate
    /// that still admits a completion.
    fn greedy(&mut self, counter: &mut BranchCounter) -> Result<bool, SolveError> {
        for b in 0..self.shape.blocks.len() {
            let cands = self.candidates_of(b);
            let mut placed = false;
            for &c in &cands {
                if !self.step(counter)? {
                    break;
                }
                self.values[b] = Some(c);
                if self.feasible_around(b) && self.completable(counter)? {
                    placed = true;
                    break;
                }
                if self.stalled {
                    break;
                }
            }
            self.candidates[b] = Some(cands);
            if !placed {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Decides satisfiability by branching on repeated blocks only. A
    /// witness is then the first satisfying assignment of the plain
    /// enumeration. Plain enumeration and greedy completion both compute it
    /// and each is fast where the other is slow, so they take turns with a
    /// growing branch allowance.
    fn run(&mut self, counter: &mut BranchCounter) -> Result<bool, SolveError> {
        for e in 0..self.targets.len() {
            if !self.feasible(e) {
                return Ok(false);
            }
        }
        if !self.completable(counter)? {
            return Ok(false);
        }
        let mut allowance = 1u64 << 14;
        loop {
            for greedy in [false, true] {
                self.values.fill(None);
                self.slice = allowance;
                self.stalled = false;
                let found = if greedy {
                    self.greedy(counter)?
                } else {
                    self.enumerate(0, counter)?
                };
                if found {
                    self.slice = u64::MAX;
                    return Ok(true);
                }
                if !self.stalled {
                    return Err(SolveError::InternalInconsistency(
                        "completion check admitted an unsatisfiable system".into(),
                    ));
                }
            }
            allowance = allowance.saturating_mul(4);
        }
    }

    fn assignment(&self) -> Assignment {
        (0..self.shape.blocks.len())
            .map(|b| {
                let v = self.value(b).unwrap_or(&[]);
                (self.shape.blocks[b], SymbolString::from(v))
            })
            .collect()
    }
}

/// Runs the block-value search on `targets` (one per equation of `shape`).
pub(crate) fn search_targets(
    shape: &Shape,
    targets: &[Vec<Symbol>],
    counter: &mut BranchCounter,
) -> Result<Option<Assignment>, SolveError> {
    if targets.iter().any(|t| t.is_empty()) {
        return Ok(None);
    }
    let mut search = Search::new(shape, targets);
    if search.run(counter)? {
        Ok(Some(search.assignment()))
    } else {
        Ok(None)
    }
}

fn targets_of(system: &System) -> Vec<Vec<Symbol>> {
    system
        .equations()
        .iter()
        .map(|e| e.target.as_slice().to_vec())
        .collect()
}

/// Exact satisfiability by enumerating block values.
pub fn solve_xp(system: &System, opts: &SolveOptions) -> Result<SolveOutcome, SolveError> {
    if system.deletion_budget().unwrap_or(0) > 0 {
        return Err(SolveError::Unsupported(
            "system carries a deletion budget; use the deletion solvers",
        ));
    }
    let shape = Shape::new(system);
    let targets = targets_of(system);
    let mut counter = BranchCounter::new(opts.branch_cap);
    let found = search_targets(&shape, &targets, &mut counter)?;
    Ok(SolveOutcome {
        status: found.map_or(Status::Unsat, Status::Sat),
        branches_explored: counter.count,
    })
}

/// Enumerates deletion sets in lexicographic order, skipping every set that
/// is not the lexicographically first one producing its reduced targets.
///
/// The first set for a given reduced tuple keeps, inside each target, the
/// rightmost embedding of the kept string. That holds exactly when no run of
/// deleted positions directly following a kept position contains that
/// position's symbol.
struct DeletionSets<'a> {
    flat: Vec<Symbol>,
    /// `(equation, offset within target)` per flat position.
    origin: Vec<(usize, usize)>,
    lengths: Vec<usize>,
    shape: &'a Shape,
}

impl<'a> DeletionSets<'a> {
    fn new(shape: &'a Shape, targets: &'a [Vec<Symbol>]) -> Self {
        let mut flat = Vec::new();
        let mut origin = Vec::new();
        for (e, t) in targets.iter().enumerate() {
            for (i, &s) in t.iter().enumerate() {
                flat.push(s);
                origin.push((e, i));
            }
        }
        DeletionSets {
            flat,
            origin,
            lengths: targets.iter().map(Vec::len).collect(),
            shape,
        }
    }

    fn reduced(&self, deleted: &[usize]) -> Vec<Vec<Symbol>> {
        let mut out: Vec<Vec<Symbol>> = self
            .lengths
            .iter()
            .map(|&l| Vec::with_capacity(l))
            .collect();
        let mut d = deleted.iter().peekable();
        for (p, &s) in self.flat.iter().enumerate() {
            if d.peek() == Some(&&p) {
                d.next();
                continue;
            }
            out[self.origin[p].0].push(s);
        }
        out
    }

    /// Depth-first over the next deleted position. `anchor` is the kept
    /// position that the current run of deletions follows, if any.
    fn walk(
        &self,
        size: usize,
        chosen: &mut Vec<usize>,
        per_target: &mut [usize],
        anchor: Option<usize>,
        counter: &mut BranchCounter,
    ) -> Result<Option<Assignment>, SolveError> {
        if chosen.len() == size {
            counter.tick()?;
            let reduced = self.reduced(chosen);
            return search_targets(self.shape, &reduced, counter);
        }
        let remaining = size - chosen.len();
        let start = chosen.last().map_or(0, |&p| p + 1);
        if start + remaining > self.flat.len() {
            return Ok(None);
        }
        for q in start..=self.flat.len() - remaining {
            let (e, off) = self.origin[q];
            if per_target[e] + 1 >= self.lengths[e] {
                continue;
            }
            let run_anchor = if off == 0 {
                None
            } else if chosen.last() == Some(&(q - 1)) {
                anchor
            } else {
                Some(q - 1)
            };
            if let Some(a) = run_anchor {
                if self.flat[a] == self.flat[q] {
                    continue;
                }
            }
            chosen.push(q);
            per_target[e] += 1;
            let res = self.walk(size, chosen, per_target, run_anchor, counter);
            per_target[e] -= 1;
            chosen.pop();
            if let Some(a) = res? {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }
}

/// Satisfiability after deleting at most `d` target symbols in total.
///
/// Deletion sets that would empty a target are skipped. Only the first set
/// producing each distinct tuple of reduced targets is searched.
pub fn solve_deletions_xp(
    system: &System,
    d: usize,
    opts: &SolveOptions,
) -> Result<SolveOutcome, SolveError> {
    let shape = Shape::new(system);
    let targets = targets_of(system);
    let sets = DeletionSets::new(&shape, &targets);
    let mut counter = BranchCounter::new(opts.branch_cap);
    let max = d.min(sets.flat.len());
    for size in 0..=max {
        let mut per_target = vec![0; targets.len()];
        let found = sets.walk(size, &mut Vec::new(), &mut per_target, None, &mut counter)?;
        if let Some(a) = found {
            if !verify_deletions(system, &a, d).holds() {
                return Err(SolveError::InternalInconsistency(
                    "deletion witness failed verification".into(),
                ));
            }
            return Ok(SolveOutcome {
                status: Status::Sat(a),
                branches_explored: counter.count,
            });
        }
    }
    Ok(SolveOutcome {
        status: Status::Unsat,
        branches_explored: counter.count,
    })
}
