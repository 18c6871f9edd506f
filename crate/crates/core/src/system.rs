//! Equation systems: targets, block patterns and semantics flags.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::symbol::{Symbol, SymbolString, SymbolTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("equation {0} has an empty target")]
    EmptyTarget(usize),
    #[error("equation {0} has an empty pattern")]
    EmptyPattern(usize),
    #[error("invalid block name {0:?}")]
    BadBlockName(String),
}

/// Index of a named block variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockId(pub u32);

/// Index of a joker. Every joker occurs exactly once in its system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JokerId(pub u32);

/// One position of a pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockRef {
    Named(BlockId),
    Joker(JokerId),
}

/// A pattern slot as handed to the builder; jokers get their ids on insertion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Named(BlockId),
    Joker,
}

impl From<BlockId> for Slot {
    fn from(id: BlockId) -> Self {
        Slot::Named(id)
    }
}

/// Whether blocks may be assigned the empty string.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Semantics {
    #[default]
    NonErasing,
    AllowEmpty,
}

impl Semantics {
    /// Smallest admissible length of a block value.
    pub fn min_len(self) -> usize {
        match self {
            Semantics::NonErasing => 1,
            Semantics::AllowEmpty => 0,
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::NonErasing => "nonerasing",
            Semantics::AllowEmpty => "allowempty",
        })
    }
}

/// `target ≡ pattern`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub target: SymbolString,
    pub pattern: Vec<BlockRef>,
}

/// A system of string equations over a shared symbol table.
#[derive(Clone, Debug)]
pub struct System {
    symbols: SymbolTable,
    block_names: Vec<String>,
    joker_count: u32,
    equations: Vec<Equation>,
    semantics: Semantics,
    deletion_budget: Option<usize>,
}

impl System {
    pub fn builder() -> SystemBuilder {
        SystemBuilder::new()
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn deletion_budget(&self) -> Option<usize> {
        self.deletion_budget
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn named_block_count(&self) -> usize {
        self.block_names.len()
    }

    pub fn joker_count(&self) -> usize {
        self.joker_count as usize
    }

    pub fn block_name(&self, id: BlockId) -> &str {
        &self.block_names[id.0 as usize]
    }

    pub fn block_id(&self, name: &str) -> Option<BlockId> {
        self.block_names
            .iter()
            .position(|n| n == name)
            .map(|i| BlockId(i as u32))
    }

    /// `A` for named blocks, `*3` for the joker with id 3 (ids are 1-based in labels).
    pub fn block_label(&self, block: BlockRef) -> String {
        match block {
            BlockRef::Named(id) => self.block_name(id).to_string(),
            BlockRef::Joker(j) => format!("*{}", j.0 + 1),
        }
    }

    /// Resolves a label produced by [`System::block_label`].
    pub fn resolve_label(&self, label: &str) -> Option<BlockRef> {
        if let Some(num) = label.strip_prefix('*') {
            let n: u32 = num.parse().ok()?;
            if n >= 1 && n <= self.joker_count {
                return Some(BlockRef::Joker(JokerId(n - 1)));
            }
            return None;
        }
        self.block_id(label).map(BlockRef::Named)
    }

    /// Every block occurring in the system, in order of first occurrence
    /// (equations in order, patterns left to right).
    pub fn blocks_in_order(&self) -> Vec<BlockRef> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for eq in &self.equations {
            for &b in &eq.pattern {
                if seen.insert(b) {
                    out.push(b);
                }
            }
        }
        out
    }

    /// Number of occurrences of each block over the whole system.
    pub fn occurrence_counts(&self) -> HashMap<BlockRef, usize> {
        let mut counts = HashMap::new();
        for eq in &self.equations {
            for &b in &eq.pattern {
                *counts.entry(b).or_insert(0) += 1;
            }
        }
        counts
    }

    pub fn render_string(&self, s: &[Symbol]) -> String {
        self.symbols.render(s)
    }

    pub fn render_pattern(&self, pattern: &[BlockRef]) -> String {
        pattern
            .iter()
            .map(|&b| match b {
                BlockRef::Named(id) => self.block_name(id).to_string(),
                BlockRef::Joker(_) => "*".to_string(),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn with_semantics(&self, semantics: Semantics) -> System {
        System {
            semantics,
            ..self.clone()
        }
    }

    pub fn with_deletion_budget(&self, budget: Option<usize>) -> System {
        System {
            deletion_budget: budget,
            ..self.clone()
        }
    }

    pub fn max_target_len(&self) -> usize {
        self.equations
            .iter()
            .map(|e| e.target.len())
            .max()
            .unwrap_or(0)
    }
}

/// Structural equality: symbols and blocks are compared by label, so two
/// systems built with different interning orders compare equal.
impl PartialEq for System {
    fn eq(&self, other: &Self) -> bool {
        if self.semantics != other.semantics
            || self.deletion_budget != other.deletion_budget
            || self.equations.len() != other.equations.len()
        {
            return false;
        }
        self.equations.iter().zip(&other.equations).all(|(a, b)| {
            a.target.len() == b.target.len()
                && a.pattern.len() == b.pattern.len()
                && a.target
                    .iter()
                    .zip(b.target.iter())
                    .all(|(&x, &y)| self.symbols.label(x) == other.symbols.label(y))
                && a.pattern
                    .iter()
                    .zip(&b.pattern)
                    .all(|(&x, &y)| self.block_label(x) == other.block_label(y))
        })
    }
}

impl Eq for System {}

/// Incremental constructor for [`System`].
#[derive(Clone, Debug, Default)]
pub struct SystemBuilder {
    symbols: SymbolTable,
    block_names: Vec<String>,
    block_index: HashMap<String, BlockId>,
    joker_count: u32,
    equations: Vec<Equation>,
    semantics: Semantics,
    deletion_budget: Option<usize>,
}

impl SystemBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_semantics(&mut self, semantics: Semantics) -> &mut Self {
        self.semantics = semantics;
        self
    }

    pub fn set_deletion_budget(&mut self, budget: Option<usize>) -> &mut Self {
        self.deletion_budget = budget;
        self
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn symbol(&mut self, label: &str) -> Symbol {
        self.symbols.intern(label)
    }

    /// Interns a fresh separator derived from `base`, never reusing an existing label.
    pub fn fresh_symbol(&mut self, base: &str) -> Symbol {
        let label = self.symbols.fresh_label(base);
        self.symbols.intern(&label)
    }

    /// Interns each whitespace-separated token of `text`.
    pub fn symbols_of(&mut self, text: &str) -> Vec<Symbol> {
        text.split_whitespace().map(|t| self.symbol(t)).collect()
    }

    pub fn block(&mut self, name: &str) -> BlockId {
        if let Some(&id) = self.block_index.get(name) {
            return id;
        }
        let id = BlockId(self.block_names.len() as u32);
        self.block_names.push(name.to_string());
        self.block_index.insert(name.to_string(), id);
        id
    }

    /// Adds `target ≡ pattern`; each [`Slot::Joker`] becomes a fresh joker,
    /// numbered in insertion order.
    pub fn equation(
        &mut self,
        target: impl Into<SymbolString>,
        pattern: impl IntoIterator<Item = Slot>,
    ) -> Result<&mut Self, ModelError> {
        let index = self.equations.len();
        let target = target.into();
        let slots: Vec<Slot> = pattern.into_iter().collect();
        if target.is_empty() {
            return Err(ModelError::EmptyTarget(index));
        }
        if slots.is_empty() {
            return Err(ModelError::EmptyPattern(index));
        }
        let pattern = slots
            .into_iter()
            .map(|s| match s {
                Slot::Named(id) => BlockRef::Named(id),
                Slot::Joker => {
                    let j = JokerId(self.joker_count);
                    self.joker_count += 1;
                    BlockRef::Joker(j)
                }
            })
            .collect();
        self.equations.push(Equation { target, pattern });
        Ok(self)
    }

    /// Whitespace-tokenized convenience form: `equation_str("a b c", "A * B")`.
    pub fn equation_str(&mut self, target: &str, pattern: &str) -> Result<&mut Self, ModelError> {
        let target = self.symbols_of(target);
        let mut slots = Vec::new();
        for tok in pattern.split_whitespace() {
            if tok == "*" {
                slots.push(Slot::Joker);
            } else if is_block_name(tok) {
                slots.push(Slot::Named(self.block(tok)));
            } else {
                return Err(ModelError::BadBlockName(tok.to_string()));
            }
        }
        self.equation(target, slots)
    }

    pub fn build(self) -> System {
        System {
            symbols: self.symbols,
            block_names: self.block_names,
            joker_count: self.joker_count,
            equations: self.equations,
            semantics: self.semantics,
            deletion_budget: self.deletion_budget,
        }
    }
}

/// Block names are non-empty runs of alphanumerics, `_` and `'`.
pub fn is_block_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}
