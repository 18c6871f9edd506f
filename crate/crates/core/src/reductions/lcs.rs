//! Longest common subsequence as a deletion problem.

use crate::symbol::Symbol;
use crate::system::{Slot, System, SystemBuilder};

use super::ReductionError;

/// `T_i ≡ X` for every input string, sharing one block `X`.
#[derive(Clone, Debug)]
pub struct LcsEmbedding {
    pub system: System,
    /// Sum of the input lengths.
    pub total_len: usize,
    /// Number of input strings.
    pub count: usize,
}

impl LcsEmbedding {
    /// The deletion budget that is enough exactly when a common subsequence of
    /// length `lambda` exists: every target keeps `lambda` symbols.
    pub fn budget(&self, lambda: usize) -> Result<usize, ReductionError> {
        if lambda == 0 {
            return Err(ReductionError::MinLcsOne);
        }
        self.total_len
            .checked_sub(self.count * lambda)
            .ok_or(ReductionError::NegativeBudget { lambda })
    }
}

fn check_input<S: AsRef<str>>(strings: &[Vec<S>]) -> Result<(), ReductionError> {
    if strings.is_empty() || strings.iter().any(|s| s.is_empty()) {
        return Err(ReductionError::EmptyInput);
    }
    Ok(())
}

fn intern<S: AsRef<str>>(b: &mut SystemBuilder, s: &[S]) -> Vec<Symbol> {
    s.iter().map(|tok| b.symbol(tok.as_ref())).collect()
}

/// One equation per input string, all with the single pattern `X`.
pub fn gen_from_lcs_multi<S: AsRef<str>>(
    strings: &[Vec<S>],
) -> Result<LcsEmbedding, ReductionError> {
    check_input(strings)?;
    let mut b = SystemBuilder::new();
    let x = b.block("X");
    for s in strings {
        let target = intern(&mut b, s);
        b.equation(target, [Slot::Named(x)])
            .expect("non-empty equation");
    }
    Ok(LcsEmbedding {
        system: b.build(),
        total_len: strings.iter().map(Vec::len).sum(),
        count: strings.len(),
    })
}

/// A single equation `P T_1 P T_2 … P T_r ≡ X X … X` with budget `d`, where
/// `P` is `d + 1` copies of a fresh symbol `$`.
///
/// With `d` deletions at least one `$` survives in front of every copy of
/// `X`, so each copy is aligned with its own input string.
pub fn gen_from_lcs_single<S: AsRef<str>>(
    strings: &[Vec<S>],
    d: usize,
) -> Result<System, ReductionError> {
    check_input(strings)?;
    let mut b = SystemBuilder::new();
    let interned: Vec<Vec<Symbol>> = strings.iter().map(|s| intern(&mut b, s)).collect();
    let dollar = b.fresh_symbol("$");
    let x = b.block("X");
    let mut target = Vec::new();
    for s in &interned {
        target.extend(std::iter::repeat_n(dollar, d + 1));
        target.extend_from_slice(s);
    }
    b.equation(target, vec![Slot::Named(x); strings.len()])
        .expect("non-empty equation");
    b.set_deletion_budget(Some(d));
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.chars().map(String::from).collect()
    }

    #[test]
    fn multi_budget() {
        let e = gen_from_lcs_multi(&[toks("abcd"), toks("acbd")]).unwrap();
        assert_eq!(e.system.equations().len(), 2);
        assert_eq!(e.system.named_block_count(), 1);
        assert_eq!(e.budget(3), Ok(2));
        assert_eq!(e.budget(0), Err(ReductionError::MinLcsOne));
        assert_eq!(
            e.budget(5),
            Err(ReductionError::NegativeBudget { lambda: 5 })
        );

        let e = gen_from_lcs_multi(&[toks("ab")]).unwrap();
        assert_eq!(e.budget(2), Ok(0));
    }

    #[test]
    fn single_target_layout() {
        let s = gen_from_lcs_single(&[toks("abcd"), toks("acbd")], 2).unwrap();
        let eq = &s.equations()[0];
        assert_eq!(s.render_string(&eq.target), "$ $ $ a b c d $ $ $ a c b d");
        assert_eq!(s.render_pattern(&eq.pattern), "X X");
        assert_eq!(s.deletion_budget(), Some(2));

        let s = gen_from_lcs_single(&[toks("a")], 1).unwrap();
        assert_eq!(s.render_string(&s.equations()[0].target), "$ $ a");
    }

    #[test]
    fn separator_stays_fresh() {
        let s = gen_from_lcs_single(&[vec!["$"]], 0).unwrap();
        assert_eq!(s.render_string(&s.equations()[0].target), "$' $");
    }

    #[test]
    fn rejects_empty_input() {
        let none: Vec<Vec<String>> = Vec::new();
        assert!(gen_from_lcs_multi(&none).is_err());
        assert!(gen_from_lcs_single(&[toks("ab"), Vec::new()], 0).is_err());
    }
}
