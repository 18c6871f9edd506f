//! Solvers for systems of string equations.
//!
//! A string equation `T ≡ X₁X₂…X_c` asks for strings `σ(X_i)` whose
//! concatenation is the target `T`. This crate provides:
//!
//! - the domain model and verifiers ([`system`], [`check`]);
//! - a brute-force search and its deletion-tolerant variant ([`exact`]);
//! - a starting-point enumeration with multi-string LCS for deletions ([`lcs`]);
//! - a polynomial 2SAT-based solver for systems whose repeated blocks all sit
//!   at pattern borders ([`border`]);
//! - generators turning Clique, Multicolored Clique and LCS instances into
//!   equation systems ([`reductions`]);
//! - the text formats and command-line front end ([`format`], [`cli`]).

pub mod assignment;
pub mod border;
pub mod check;
pub mod cli;
pub mod exact;
pub mod format;
pub mod lcs;
pub mod reductions;
pub mod solve;
pub mod symbol;
pub mod system;

pub use assignment::Assignment;
pub use check::{classify, expand, is_subsequence, verify, verify_deletions, SystemStats, Verdict};
pub use exact::{solve_deletions_xp, solve_xp};
pub use solve::{SolveError, SolveOptions, SolveOutcome, Status};
pub use symbol::{Symbol, SymbolString, SymbolTable};
pub use system::{BlockId, BlockRef, Equation, JokerId, Semantics, Slot, System, SystemBuilder};
