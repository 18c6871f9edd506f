//! 2SAT via the implication graph and Tarjan's strongly connected components.

/// A literal over variable `var`; `positive` selects `var` rather than `¬var`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Lit {
        Lit {
            var,
            positive: false,
        }
    }

    pub fn negate(self) -> Lit {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }

    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }

    pub fn eval(self, valuation: &[bool]) -> bool {
        valuation[self.var] == self.positive
    }
}

#[derive(Clone, Debug, Default)]
pub struct TwoSat {
    vars: usize,
    adj: Vec<Vec<usize>>,
}

impl TwoSat {
    pub fn new(vars: usize) -> Self {
        TwoSat {
            vars,
            adj: vec![Vec::new(); 2 * vars],
        }
    }

    /// Adds `a ∨ b`.
    pub fn add_clause(&mut self, a: Lit, b: Lit) {
        self.adj[a.negate().node()].push(b.node());
        self.adj[b.negate().node()].push(a.node());
    }

    pub fn add_unit(&mut self, a: Lit) {
        self.add_clause(a, a);
    }

    /// A satisfying valuation, or `None`. Deterministic for a fixed clause order.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let comp = self.components();
        let mut val = vec![false; self.vars];
        for (v, slot) in val.iter_mut().enumerate() {
            let (t, f) = (comp[2 * v], comp[2 * v + 1]);
            if t == f {
                return None;
            }
            // Tarjan numbers components in reverse topological order.
            *slot = t < f;
        }
        Some(val)
    }

    fn components(&self) -> Vec<usize> {
        const UNSET: usize = usize::MAX;
        let n = self.adj.len();
        let mut index = vec![UNSET; n];
        let mut low = vec![0; n];
        let mut comp = vec![UNSET; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut call: Vec<(usize, usize)> = Vec::new();
        let mut next_index = 0;
        let mut next_comp = 0;

        for root in 0..n {
            if index[root] != UNSET {
                continue;
            }
            call.push((root, 0));
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (u, ref mut edge)) = call.last_mut() {
                if let Some(&w) = self.adj[u].get(*edge) {
                    *edge += 1;
                    if index[w] == UNSET {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[u] = low[u].min(index[w]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[u]);
                }
                if low[u] == index[u] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == u {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
        comp
    }
}
