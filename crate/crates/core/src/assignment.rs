use std::collections::BTreeMap;

use crate::symbol::SymbolString;
use crate::system::{BlockRef, System};

/// Values for named blocks and jokers alike.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    values: BTreeMap<BlockRef, SymbolString>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(
        &mut self,
        block: BlockRef,
        value: impl Into<SymbolString>,
    ) -> Option<SymbolString> {
        self.values.insert(block, value.into())
    }

    pub fn get(&self, block: BlockRef) -> Option<&SymbolString> {
        self.values.get(&block)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (BlockRef, &SymbolString)> {
        self.values.iter().map(|(&b, v)| (b, v))
    }

    /// Entries for the blocks of `system`, in first-occurrence order.
    /// Blocks without a value are skipped.
    pub fn ordered<'a>(&'a self, system: &System) -> Vec<(BlockRef, &'a SymbolString)> {
        system
            .blocks_in_order()
            .into_iter()
            .filter_map(|b| self.values.get(&b).map(|v| (b, v)))
            .collect()
    }
}

impl FromIterator<(BlockRef, SymbolString)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (BlockRef, SymbolString)>>(iter: I) -> Self {
        Assignment {
            values: iter.into_iter().collect(),
        }
    }
}
