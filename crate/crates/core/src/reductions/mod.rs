//! Instance generators that encode Clique, Multicolored Clique and longest
//! common subsequence questions as equation systems, with brute-force
//! oracles and decoders for round-trip checks.

mod clique;
mod graph;
mod lcs;

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use thiserror::Error;

pub use clique::{
    gen_clique_mixed, gen_clique_single_eq, gen_clique_two_eq, gen_clique_two_eq_empty,
    gen_mcc_size3, pre, suf,
};
pub use graph::{Graph, GraphError};
pub use lcs::{gen_from_lcs_multi, gen_from_lcs_single, LcsEmbedding};

use crate::assignment::Assignment;
use crate::symbol::Symbol;
use crate::system::{BlockId, BlockRef, System};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("clique size must be at least 2, got {0}")]
    BadKappa(usize),
    #[error("graph has no vertex coloring")]
    NotColored,
    #[error("vertex {vertex} has color {color}, outside 1..={kappa}")]
    ColorOutOfRange {
        vertex: usize,
        color: usize,
        kappa: usize,
    },
    #[error("input strings must be present and non-empty")]
    EmptyInput,
    #[error("a non-erasing block needs a common subsequence of length at least 1")]
    MinLcsOne,
    #[error("no budget keeps {lambda} symbols of every string")]
    NegativeBudget { lambda: usize },
}

/// What a named block encodes. Indices are 1-based, as in `X1`, `E1_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    VertexSelector(usize),
    EdgeSelector(usize, usize),
    Gap,
    Gadget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    SingleEquation,
    TwoEquations,
    TwoEquationsEmpty,
    MulticoloredSize3,
    Mixed,
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub system: System,
    /// Covers every named block of `system`.
    pub decode_map: BTreeMap<BlockId, Role>,
    pub construction: Construction,
    /// The symbol of each graph vertex, by vertex index.
    pub vertices: Vec<Symbol>,
    pub kappa: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("decode failed: {0}")]
pub struct DecodeFailure(pub String);

/// Does `g` have a clique on `kappa` vertices?
pub fn clique_oracle(g: &Graph, kappa: usize) -> bool {
    (0..g.n()).combinations(kappa).any(|c| g.is_clique(&c))
}

/// Does `g` have a clique with one vertex of each color `1..=kappa`?
pub fn mcc_oracle(g: &Graph, kappa: usize) -> Result<bool, ReductionError> {
    let colors = g.coloring().ok_or(ReductionError::NotColored)?;
    let classes: Vec<Vec<usize>> = (1..=kappa)
        .map(|c| (0..g.n()).filter(|&v| colors[v] == c).collect())
        .collect();
    if kappa == 0 {
        return Ok(true);
    }
    Ok(classes
        .into_iter()
        .multi_cartesian_product()
        .any(|pick| g.is_clique(&pick)))
}

impl ReductionOutput {
    fn vertex_of(&self, s: Symbol) -> Option<usize> {
        self.vertices.iter().position(|&v| v == s)
    }

    fn render(&self, value: &[Symbol]) -> String {
        self.system.render_string(value)
    }

    /// The vertex encoded by a selector value.
    fn selected_vertex(&self, value: &[Symbol]) -> Result<usize, DecodeFailure> {
        let fail = || DecodeFailure(format!("value {:?} encodes no vertex", self.render(value)));
        if self.construction != Construction::Mixed {
            return match value {
                [s] => self.vertex_of(*s).ok_or_else(fail),
                _ => Err(fail()),
            };
        }
        let n = self.vertices.len();
        let len = value.len();
        if len == 0 || len > n {
            return Err(fail());
        }
        if self.vertex_of(value[0]).is_none() {
            // A `pre` value: marker, then the vertices before the selected one.
            (value[1..] == self.vertices[..len - 1])
                .then_some(len - 1)
                .ok_or_else(fail)
        } else {
            (value[..] == self.vertices[n - len..])
                .then_some(n - len)
                .ok_or_else(fail)
        }
    }
}

/// The vertex set picked by a satisfying assignment of a clique construction.
///
/// Every selector for index `i` must name the same vertex, the `kappa` picks
/// must be distinct, and edge selectors must spell the edge between their
/// two picks.
pub fn decode(
    output: &ReductionOutput,
    assignment: &Assignment,
) -> Result<BTreeSet<usize>, DecodeFailure> {
    let value = |id: BlockId| {
        assignment
            .get(BlockRef::Named(id))
            .ok_or_else(|| DecodeFailure(format!("no value for {}", output.system.block_name(id))))
    };
    let mut picks: BTreeMap<usize, usize> = BTreeMap::new();
    for (&id, &role) in &output.decode_map {
        if let Role::VertexSelector(i) = role {
            let w = output.selected_vertex(value(id)?)?;
            if let Some(&prev) = picks.get(&i) {
                if prev != w {
                    return Err(DecodeFailure(format!(
                        "selectors for index {i} disagree ({} vs {})",
                        output.render(&[output.vertices[prev]]),
                        output.render(&[output.vertices[w]])
                    )));
                }
            }
            picks.insert(i, w);
        }
    }
    for i in 1..=output.kappa {
        if !picks.contains_key(&i) {
            return Err(DecodeFailure(format!("no selector for index {i}")));
        }
    }
    for (&id, &role) in &output.decode_map {
        if let Role::EdgeSelector(i, j) = role {
            let v = value(id)?;
            let want = [output.vertices[picks[&i]], output.vertices[picks[&j]]];
            if v.as_slice() != want {
                return Err(DecodeFailure(format!(
                    "edge selector {} is {:?}, expected {:?}",
                    output.system.block_name(id),
                    output.render(v),
                    output.render(&want)
                )));
            }
        }
    }
    let set: BTreeSet<usize> = picks.values().copied().collect();
    if set.len() != output.kappa {
        return Err(DecodeFailure("selected vertices are not distinct".into()));
    }
    Ok(set)
}
