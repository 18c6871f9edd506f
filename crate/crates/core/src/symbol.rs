//! Interned alphabet tokens.
//!
//! Symbols are multi-character tokens rather than `char`s: the instance
//! generators need an unbounded supply of fresh separators (`y_0`, `y_1`, ...),
//! and instance files tokenize on whitespace.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

/// An interned alphabet token. Equality is equality of ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u32);

impl Symbol {
    pub fn id(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Bidirectional map between symbols and their display labels.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    labels: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the symbol for `label`, interning it on first use.
    pub fn intern(&mut self, label: &str) -> Symbol {
        if let Some(&sym) = self.index.get(label) {
            return sym;
        }
        let sym = Symbol(self.labels.len() as u32);
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), sym);
        sym
    }

    pub fn lookup(&self, label: &str) -> Option<Symbol> {
        self.index.get(label).copied()
    }

    pub fn label(&self, sym: Symbol) -> &str {
        &self.labels[sym.index()]
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, &str)> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (Symbol(i as u32), l.as_str()))
    }

    /// Space-separated labels of `s`.
    pub fn render(&self, s: &[Symbol]) -> String {
        let mut out = String::new();
        for (i, &sym) in s.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(self.label(sym));
        }
        out
    }

    /// Returns `base` if it is not yet a label, otherwise `base` with enough
    /// trailing `'` to make it fresh. Does not intern the result.
    pub fn fresh_label(&self, base: &str) -> String {
        let mut label = base.to_string();
        while self.contains(&label) {
            label.push('\'');
        }
        label
    }
}

/// A finite sequence of symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolString(Vec<Symbol>);

impl SymbolString {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Symbol> {
        self.0
    }

    pub fn push(&mut self, sym: Symbol) {
        self.0.push(sym);
    }

    pub fn extend_from_slice(&mut self, s: &[Symbol]) {
        self.0.extend_from_slice(s);
    }

    pub fn concat(&self, other: &[Symbol]) -> SymbolString {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        SymbolString(v)
    }
}

impl Deref for SymbolString {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl AsRef<[Symbol]> for SymbolString {
    fn as_ref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for SymbolString {
    fn from(v: Vec<Symbol>) -> Self {
        SymbolString(v)
    }
}

impl From<&[Symbol]> for SymbolString {
    fn from(v: &[Symbol]) -> Self {
        SymbolString(v.to_vec())
    }
}

impl FromIterator<Symbol> for SymbolString {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        SymbolString(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a SymbolString {
    type Item = &'a Symbol;
    type IntoIter = std::slice::Iter<'a, Symbol>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
