//! Clique and Multicolored Clique encodings.

use std::collections::BTreeMap;

use crate::symbol::Symbol;
use crate::system::{BlockId, Semantics, Slot, SystemBuilder};

use super::{Construction, Graph, ReductionError, ReductionOutput, Role};

/// `marker v_1 … v_{i-1}` for the vertex at 0-based index `i`.
pub fn pre<T: Clone>(marker: &T, vertices: &[T], i: usize) -> Vec<T> {
    let mut out = vec![marker.clone()];
    out.extend_from_slice(&vertices[..i]);
    out
}

/// `v_i … v_n` for the vertex at 0-based index `i`.
pub fn suf<T: Clone>(vertices: &[T], i: usize) -> Vec<T> {
    vertices[i..].to_vec()
}

struct Gen {
    b: SystemBuilder,
    roles: BTreeMap<BlockId, Role>,
    vertices: Vec<Symbol>,
}

impl Gen {
    fn new(g: &Graph) -> Gen {
        let mut b = SystemBuilder::new();
        let vertices = g.labels().iter().map(|l| b.symbol(l)).collect();
        Gen {
            b,
            roles: BTreeMap::new(),
            vertices,
        }
    }

    fn block(&mut self, name: &str, role: Role) -> Slot {
        let id = self.b.block(name);
        self.roles.insert(id, role);
        Slot::Named(id)
    }

    fn separators(&mut self, base: &str, count: usize) -> Vec<Symbol> {
        (0..count)
            .map(|i| self.b.fresh_symbol(&format!("{base}_{i}")))
            .collect()
    }

    fn edge(&self, (u, v): (usize, usize)) -> [Symbol; 2] {
        [self.vertices[u], self.vertices[v]]
    }

    /// `first e_1 seps[1] e_2 … e_m seps[m]` where `seps[0] = first`.
    fn edge_section(&self, g: &Graph, seps: &[Symbol]) -> Vec<Symbol> {
        let mut t = vec![seps[0]];
        for (j, &e) in g.edges().iter().enumerate() {
            t.extend(self.edge(e));
            t.push(seps[j + 1]);
        }
        t
    }

    fn equation(&mut self, target: Vec<Symbol>, pattern: Vec<Slot>) {
        self.b
            .equation(target, pattern)
            .expect("generated equations are non-empty");
    }

    fn finish(self, construction: Construction, kappa: usize) -> ReductionOutput {
        ReductionOutput {
            system: self.b.build(),
            decode_map: self.roles,
            construction,
            vertices: self.vertices,
            kappa,
        }
    }
}

fn check_kappa(kappa: usize) -> Result<(), ReductionError> {
    if kappa < 2 {
        Err(ReductionError::BadKappa(kappa))
    } else {
        Ok(())
    }
}

fn pairs(kappa: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=kappa).flat_map(move |i| (i + 1..=kappa).map(move |j| (i, j)))
}

/// One equation: `y_0 e_1 y_1 … e_m y_m ≡ * X1 X2 * X1 X3 * … * X(κ-1) Xκ *`.
pub fn gen_clique_single_eq(g: &Graph, kappa: usize) -> Result<ReductionOutput, ReductionError> {
    check_kappa(kappa)?;
    let mut gen = Gen::new(g);
    let ys = gen.separators("y", g.m() + 1);
    let target = gen.edge_section(g, &ys);
    let xs: Vec<Slot> = (1..=kappa)
        .map(|i| gen.block(&format!("X{i}"), Role::VertexSelector(i)))
        .collect();
    let mut pattern = vec![Slot::Joker];
    for (i, j) in pairs(kappa) {
        pattern.extend([xs[i - 1], xs[j - 1], Slot::Joker]);
    }
    gen.equation(target, pattern);
    Ok(gen.finish(Construction::SingleEquation, kappa))
}

/// Blocks shared by both two-equation constructions.
struct Coding {
    /// `x[i][j]` is `X{i}_{j}` (1-based, `i != j`).
    x: BTreeMap<(usize, usize), Slot>,
    x_prime: BTreeMap<(usize, usize), Slot>,
    z: Slot,
    z_prime: Slot,
    a: Vec<Slot>,
    b0: Slot,
    b: BTreeMap<(usize, usize), Slot>,
}

impl Coding {
    fn new(gen: &mut Gen, kappa: usize) -> Coding {
        let mut x = BTreeMap::new();
        let mut x_prime = BTreeMap::new();
        for i in 1..=kappa {
            for j in (1..=kappa).filter(|&j| j != i) {
                x.insert(
                    (i, j),
                    gen.block(&format!("X{i}_{j}"), Role::VertexSelector(i)),
                );
                x_prime.insert(
                    (i, j),
                    gen.block(&format!("X'{i}_{j}"), Role::VertexSelector(i)),
                );
            }
        }
        let z = gen.block("Z", Role::Gadget);
        let z_prime = gen.block("Z'", Role::Gadget);
        let a = (0..=kappa)
            .map(|i| gen.block(&format!("A{i}"), Role::Gap))
            .collect();
        let b0 = gen.block("B0", Role::Gap);
        let b = pairs(kappa)
            .map(|(i, j)| ((i, j), gen.block(&format!("B{i}_{j}"), Role::Gap)))
            .collect();
        Coding {
            x,
            x_prime,
            z,
            z_prime,
            a,
            b0,
            b,
        }
    }

    /// `start B0 ∏_{i<j} (C_{i,j} C_{j,i} B_{i,j})` with `C` the given coding blocks.
    fn edge_pattern(
        &self,
        start: Slot,
        coding: &BTreeMap<(usize, usize), Slot>,
        kappa: usize,
    ) -> Vec<Slot> {
        let mut p = vec![start, self.b0];
        for (i, j) in pairs(kappa) {
            p.extend([coding[&(i, j)], coding[&(j, i)], self.b[&(i, j)]]);
        }
        p
    }
}

/// The vertex and edge sections `z x_0 ∏ (v_i^{κ-1} x_i) z y_0 ∏ (e_j y_j)`,
/// with `guard` (if any) around each vertex run and after the first `z`.
fn two_eq_sections(gen: &mut Gen, g: &Graph, kappa: usize, guard: Option<Symbol>) -> Vec<Symbol> {
    let z = gen.b.fresh_symbol("z");
    let xs = gen.separators("x", g.n() + 1);
    let ys = gen.separators("y", g.m() + 1);
    let mut t = vec![z];
    t.extend(guard);
    t.push(xs[0]);
    for v in 0..g.n() {
        t.extend(guard);
        t.extend(std::iter::repeat_n(gen.vertices[v], kappa - 1));
        t.extend(guard);
        t.push(xs[v + 1]);
    }
    t.push(z);
    t.extend(gen.edge_section(g, &ys));
    t
}

/// Two duplicate-free equations over one target, split into a vertex section
/// (each vertex repeated `κ-1` times) and an edge section.
pub fn gen_clique_two_eq(g: &Graph, kappa: usize) -> Result<ReductionOutput, ReductionError> {
    check_kappa(kappa)?;
    let mut gen = Gen::new(g);
    let target = two_eq_sections(&mut gen, g, kappa, None);
    let c = Coding::new(&mut gen, kappa);

    let vertex_pattern = |start: Slot, coding: &BTreeMap<(usize, usize), Slot>| {
        let mut p = vec![start, c.a[0]];
        for i in 1..=kappa {
            p.extend((1..=kappa).filter(|&j| j != i).map(|j| coding[&(i, j)]));
            p.push(c.a[i]);
        }
        p
    };
    let mut first = vertex_pattern(c.z, &c.x);
    first.extend(c.edge_pattern(c.z_prime, &c.x_prime, kappa));
    let mut second = vertex_pattern(c.z_prime, &c.x_prime);
    second.extend(c.edge_pattern(c.z, &c.x, kappa));

    gen.equation(target.clone(), first);
    gen.equation(target, second);
    Ok(gen.finish(Construction::TwoEquations, kappa))
}

/// The two-equation construction made robust to empty blocks: a `γ` prefix
/// with a swapped `φ` pair distinguishes the two targets, and `γ` guards
/// pin the coding blocks to single vertices.
pub fn gen_clique_two_eq_empty(g: &Graph, kappa: usize) -> Result<ReductionOutput, ReductionError> {
    check_kappa(kappa)?;
    let mut gen = Gen::new(g);
    let gamma = gen.b.fresh_symbol("γ");
    let phi1 = gen.b.fresh_symbol("φ_1");
    let phi2 = gen.b.fresh_symbol("φ_2");
    let sections = two_eq_sections(&mut gen, g, kappa, Some(gamma));
    let c = Coding::new(&mut gen, kappa);

    let mut gammas = |prime: &str| {
        let g0 = gen.block(&format!("Γ{prime}0"), Role::Gadget);
        let per: Vec<(Slot, Slot)> = (1..=kappa)
            .map(|i| {
                (
                    gen.block(&format!("Γ{prime}0_{i}"), Role::Gadget),
                    gen.block(&format!("Γ{prime}1_{i}"), Role::Gadget),
                )
            })
            .collect();
        (g0, per)
    };
    let plain = gammas("");
    let primed = gammas("'");
    let big_phi1 = gen.block("Φ1", Role::Gadget);
    let big_phi2 = gen.block("Φ2", Role::Gadget);

    // Prefix section from one Γ family, vertex section guarded by the other.
    let build = |prefix: &(Slot, Vec<(Slot, Slot)>),
                 guard: &(Slot, Vec<(Slot, Slot)>),
                 phis: [Slot; 2],
                 start: Slot,
                 coding: &BTreeMap<(usize, usize), Slot>,
                 edge_start: Slot,
                 edge_coding: &BTreeMap<(usize, usize), Slot>| {
        let mut p = vec![prefix.0];
        for &(h0, h1) in &prefix.1 {
            p.extend([h0, h1]);
        }
        p.extend(phis);
        p.extend([start, guard.0, c.a[0]]);
        for i in 1..=kappa {
            let (h0, h1) = guard.1[i - 1];
            p.push(h0);
            p.extend((1..=kappa).filter(|&j| j != i).map(|j| coding[&(i, j)]));
            p.extend([h1, c.a[i]]);
        }
        p.extend(c.edge_pattern(edge_start, edge_coding, kappa));
        p
    };
    let first = build(
        &plain,
        &primed,
        [big_phi1, big_phi2],
        c.z,
        &c.x,
        c.z_prime,
        &c.x_prime,
    );
    let second = build(
        &primed,
        &plain,
        [big_phi2, big_phi1],
        c.z_prime,
        &c.x_prime,
        c.z,
        &c.x,
    );

    let head = |a: Symbol, b: Symbol| {
        let mut t = vec![gamma; 2 * kappa + 1];
        t.extend([a, b]);
        t.extend_from_slice(&sections);
        t
    };
    gen.equation(head(phi1, phi2), first);
    gen.equation(head(phi2, phi1), second);
    gen.b.set_semantics(Semantics::AllowEmpty);
    Ok(gen.finish(Construction::TwoEquationsEmpty, kappa))
}

/// Multicolored Clique with equations of at most three blocks.
///
/// Edges are written with the endpoint of lower color first.
pub fn gen_mcc_size3(g: &Graph, kappa: usize) -> Result<ReductionOutput, ReductionError> {
    check_kappa(kappa)?;
    let colors = g.coloring().ok_or(ReductionError::NotColored)?;
    if let Some((vertex, &color)) = colors.iter().enumerate().find(|&(_, &c)| c > kappa) {
        return Err(ReductionError::ColorOutOfRange {
            vertex,
            color,
            kappa,
        });
    }
    let mut gen = Gen::new(g);
    let x = gen.b.fresh_symbol("x");
    let y = gen.b.fresh_symbol("y");
    let z = gen.b.fresh_symbol("z");
    let oriented: Vec<[Symbol; 2]> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            if colors[u] <= colors[v] {
                gen.edge((u, v))
            } else {
                gen.edge((v, u))
            }
        })
        .collect();
    let separated = |sep: Symbol| {
        let mut t = vec![sep];
        for e in &oriented {
            t.extend(e);
            t.push(sep);
        }
        t
    };
    let t2 = separated(y);
    let t3 = separated(z);

    let xs: Vec<Slot> = (1..=kappa)
        .map(|i| gen.block(&format!("X{i}"), Role::VertexSelector(i)))
        .collect();
    for i in 1..=kappa {
        let mut t1 = vec![x];
        t1.extend(
            (0..g.n())
                .filter(|&v| colors[v] == i)
                .map(|v| gen.vertices[v]),
        );
        t1.push(x);
        gen.equation(t1, vec![Slot::Joker, xs[i - 1], Slot::Joker]);
    }
    let mut triples = Vec::new();
    for (i, j) in pairs(kappa) {
        let e = gen.block(&format!("E{i}_{j}"), Role::EdgeSelector(i, j));
        let a = gen.block(&format!("A{i}_{j}"), Role::Gap);
        let b = gen.block(&format!("B{i}_{j}"), Role::Gap);
        gen.equation(t2.clone(), vec![Slot::Joker, e, Slot::Joker]);
        triples.push((i, j, e, a, b));
    }
    for (i, j, e, a, b) in triples {
        gen.equation(t3.clone(), vec![a, e, b]);
        gen.equation(t3.clone(), vec![a, xs[i - 1], Slot::Joker]);
        gen.equation(t3.clone(), vec![Slot::Joker, xs[j - 1], b]);
    }
    Ok(gen.finish(Construction::MulticoloredSize3, kappa))
}

/// Size-2 equations over `x v_1 … v_n` select vertices as `pre`/`suf`
/// splits; one long duplicate-free equation checks adjacency.
pub fn gen_clique_mixed(g: &Graph, kappa: usize) -> Result<ReductionOutput, ReductionError> {
    check_kappa(kappa)?;
    let mut gen = Gen::new(g);
    let x = gen.b.fresh_symbol("x");
    let y = gen.b.fresh_symbol("y");
    let mut tv = vec![x];
    tv.extend_from_slice(&gen.vertices);
    let mut te = vec![y];
    for &(u, v) in g.edges() {
        te.extend(pre(&x, &gen.vertices, u));
        te.extend(suf(&gen.vertices, v));
        te.push(y);
    }

    let xs: Vec<(Slot, Slot)> = (1..=kappa)
        .map(|i| {
            (
                gen.block(&format!("X{i}"), Role::VertexSelector(i)),
                gen.block(&format!("X'{i}"), Role::VertexSelector(i)),
            )
        })
        .collect();
    for &(left, right) in &xs {
        gen.equation(tv.clone(), vec![left, right]);
    }
    let mut long = vec![Slot::Joker];
    for (i, j) in pairs(kappa) {
        let left = gen.block(&format!("X{i}_{j}"), Role::VertexSelector(i));
        let right = gen.block(&format!("X'{j}_{i}"), Role::VertexSelector(j));
        gen.equation(tv.clone(), vec![left, xs[i - 1].1]);
        gen.equation(tv.clone(), vec![xs[j - 1].0, right]);
        long.extend([left, right, Slot::Joker]);
    }
    gen.equation(te, long);
    Ok(gen.finish(Construction::Mixed, kappa))
}
