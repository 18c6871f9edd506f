//! Instance generators and independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use streq::reductions::Graph;
use streq::{Assignment, BlockRef, Semantics, Slot, System, SystemBuilder};

/// Builds a system from `(target, pattern)` strings, one character per symbol
/// in targets and whitespace-separated block names in patterns.
pub fn system(eqs: &[(&str, &str)], semantics: Semantics) -> System {
    let mut b = SystemBuilder::new();
    b.set_semantics(semantics);
    for (t, p) in eqs {
        let target: Vec<_> = t.chars().map(|c| b.symbol(&c.to_string())).collect();
        let slots: Vec<Slot> = p
            .split_whitespace()
            .map(|tok| {
                if tok == "*" {
                    Slot::Joker
                } else {
                    Slot::Named(b.block(tok))
                }
            })
            .collect();
        b.equation(target, slots).unwrap();
    }
    b.build()
}

pub fn chars(s: &str) -> Vec<String> {
    s.chars().map(String::from).collect()
}

/// All strings over `alphabet` of length exactly `len`.
pub fn words(alphabet: &[char], len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| alphabet.iter().map(move |&c| format!("{w}{c}")))
            .collect();
    }
    out
}

/// Set partitions of `0..n` as restricted growth strings.
pub fn rgs(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let limit = if cur.is_empty() { 0 } else { max + 1 };
        for v in 0..=limit {
            cur.push(v);
            go(n, cur, max.max(v), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), 0, &mut out);
    out
}

/// A system skeleton: per equation, a list of block indices where `None`
/// stands for a joker.
pub type Shape = Vec<Vec<Option<usize>>>;

/// Splits a partition of all pattern positions into equations of the given
/// sizes; blocks used once become jokers.
pub fn shape_from_rgs(sizes: &[usize], labels: &[usize]) -> Shape {
    let mut counts = vec![0; labels.len() + 1];
    for &l in labels {
        counts[l] += 1;
    }
    let mut at = 0;
    sizes
        .iter()
        .map(|&c| {
            let p = labels[at..at + c]
                .iter()
                .map(|&l| (counts[l] > 1).then_some(l))
                .collect();
            at += c;
            p
        })
        .collect()
}

/// Every repeated block sits at the first or last position of its equations.
pub fn shape_is_border_only(shape: &Shape) -> bool {
    shape.iter().all(|p| {
        p.iter()
            .enumerate()
            .all(|(i, b)| b.is_none() || i == 0 || i + 1 == p.len())
    })
}

pub fn build(
    shape: &Shape,
    targets: &[&str],
    semantics: Semantics,
    deletions: Option<usize>,
) -> System {
    let mut b = SystemBuilder::new();
    b.set_semantics(semantics);
    b.set_deletion_budget(deletions);
    for (p, t) in shape.iter().zip(targets) {
        let target: Vec<_> = t.chars().map(|c| b.symbol(&c.to_string())).collect();
        let slots: Vec<Slot> = p
            .iter()
            .map(|x| match x {
                Some(i) => Slot::Named(b.block(["A", "B", "C", "D", "E", "F"][*i])),
                None => Slot::Joker,
            })
            .collect();
        b.equation(target, slots).unwrap();
    }
    b.build()
}

#[derive(Clone, Copy, Debug)]
pub struct RandomParams {
    pub max_r: usize,
    pub max_c: usize,
    pub max_t: usize,
    /// Named blocks drawn from `A..` up to this many.
    pub pool: usize,
    pub border_only: bool,
    /// Probability of planting a solution instead of drawing targets at random.
    pub planted: f64,
    pub alphabet: &'static [char],
}

/// A random system as `(shape, targets)`.
pub fn random_instance<R: Rng>(rng: &mut R, p: &RandomParams) -> (Shape, Vec<String>) {
    loop {
        let r = rng.gen_range(1..=p.max_r);
        let shape: Shape = (0..r)
            .map(|_| {
                let c = rng.gen_range(1..=p.max_c);
                (0..c)
                    .map(|i| {
                        let border = i == 0 || i + 1 == c;
                        if (p.border_only && !border) || rng.gen_bool(0.15) {
                            None
                        } else {
                            Some(rng.gen_range(0..p.pool))
                        }
                    })
                    .collect()
            })
            .collect();
        let targets: Vec<String> = if rng.gen_bool(p.planted) {
            let values: Vec<String> = (0..p.pool)
                .map(|_| {
                    let len = rng.gen_range(1..=3);
                    (0..len).map(|_| *p.alphabet.choose(rng).unwrap()).collect()
                })
                .collect();
            shape
                .iter()
                .map(|pat| {
                    pat.iter()
                        .map(|b| match b {
                            Some(i) => values[*i].clone(),
                            None => {
                                let len = rng.gen_range(1..=2);
                                (0..len).map(|_| *p.alphabet.choose(rng).unwrap()).collect()
                            }
                        })
                        .collect()
                })
                .collect()
        } else {
            shape
                .iter()
                .map(|_| {
                    let len = rng.gen_range(1..=p.max_t);
                    (0..len).map(|_| *p.alphabet.choose(rng).unwrap()).collect()
                })
                .collect()
        };
        if targets
            .iter()
            .all(|t| !t.is_empty() && t.chars().count() <= p.max_t)
        {
            return (shape, targets);
        }
    }
}

pub fn refs(targets: &[String]) -> Vec<&str> {
    targets.iter().map(String::as_str).collect()
}

fn subsequence_of(s: &[char], t: &[char]) -> bool {
    let mut it = t.iter();
    s.iter().all(|c| it.any(|x| x == c))
}

/// Longest common subsequence length by enumerating every subsequence of the
/// shortest input.
pub fn exhaustive_lcs_len(strings: &[Vec<char>]) -> usize {
    let shortest = strings.iter().min_by_key(|s| s.len()).unwrap();
    let n = shortest.len();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let len = mask.count_ones() as usize;
        if len <= best {
            continue;
        }
        let sub: Vec<char> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| shortest[i])
            .collect();
        if strings.iter().all(|s| subsequence_of(&sub, s)) {
            best = len;
        }
    }
    best
}

/// Longest common subsequence length of two or three strings by the textbook
/// table recurrence.
pub fn dp_lcs_len(strings: &[Vec<char>]) -> usize {
    match strings {
        [a] => a.len(),
        [a, b] => {
            let mut t = vec![vec![0usize; b.len() + 1]; a.len() + 1];
            for i in 1..=a.len() {
                for j in 1..=b.len() {
                    t[i][j] = if a[i - 1] == b[j - 1] {
                        t[i - 1][j - 1] + 1
                    } else {
                        t[i - 1][j].max(t[i][j - 1])
                    };
                }
            }
            t[a.len()][b.len()]
        }
        [a, b, c] => {
            let mut t = vec![vec![vec![0usize; c.len() + 1]; b.len() + 1]; a.len() + 1];
            for i in 1..=a.len() {
                for j in 1..=b.len() {
                    for k in 1..=c.len() {
                        t[i][j][k] = if a[i - 1] == b[j - 1] && b[j - 1] == c[k - 1] {
                            t[i - 1][j - 1][k - 1] + 1
                        } else {
                            t[i - 1][j][k].max(t[i][j - 1][k]).max(t[i][j][k - 1])
                        };
                    }
                }
            }
            t[a.len()][b.len()][c.len()]
        }
        _ => panic!("two or three strings expected"),
    }
}

/// Satisfiability by trying every assignment of target substrings (and the
/// empty string when allowed) to every block, jokers included.
pub fn exhaustive_sat(system: &System) -> bool {
    let mut pool: BTreeSet<Vec<streq::Symbol>> = BTreeSet::new();
    for eq in system.equations() {
        let t = &eq.target;
        for i in 0..t.len() {
            for j in i + 1..=t.len() {
                pool.insert(t[i..j].to_vec());
            }
        }
    }
    if system.semantics() == Semantics::AllowEmpty {
        pool.insert(Vec::new());
    }
    let pool: Vec<_> = pool.into_iter().collect();
    let blocks = system.blocks_in_order();
    let mut idx = vec![0usize; blocks.len()];
    loop {
        let a: Assignment = blocks
            .iter()
            .zip(&idx)
            .map(|(&b, &i)| (b, pool[i].clone().into()))
            .collect();
        let ok = system.equations().iter().all(|eq| {
            let mut s = Vec::new();
            for b in &eq.pattern {
                s.extend_from_slice(a.get(*b).unwrap());
            }
            s == eq.target.as_slice()
        });
        if ok {
            return true;
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return false;
            }
            idx[k] += 1;
            if idx[k] < pool.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub fn is_joker(b: &BlockRef) -> bool {
    matches!(b, BlockRef::Joker(_))
}

/// All graphs on `n` vertices, one per edge subset.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u32..(1 << pairs.len()))
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .map(|i| (i.min((i + 1) % n), i.max((i + 1) % n)))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// The 4-vertex example graph with edges ab, ac, bc, bd, cd.
pub fn example_graph() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
        .unwrap()
        .with_labels(&["a", "b", "c", "d"])
        .unwrap()
}

/// At least 50 graphs on at most six vertices: the example graph, complete
/// graphs, cycles, edgeless graphs, and a seeded random sample.
pub fn curated_graphs<R: Rng>(rng: &mut R) -> Vec<(String, Graph)> {
    let mut out = vec![("example".to_string(), example_graph())];
    for n in 2..=6 {
        out.push((format!("K{n}"), complete(n)));
        out.push((format!("edgeless{n}"), Graph::new(n)));
    }
    for n in 3..=6 {
        out.push((format!("C{n}"), cycle(n)));
    }
    let k4_minus = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
    out.push(("K4-e".into(), k4_minus));
    let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
    out.push(("star5".into(), star));
    let bip = Graph::from_edges(
        6,
        &[
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 4),
            (2, 5),
        ],
    )
    .unwrap();
    out.push(("K3,3".into(), bip));
    while out.len() < 56 {
        let n = rng.gen_range(4..=6);
        let density = rng.gen_range(0.2..0.8);
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(density) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        out.push((format!("random{}", out.len()), g));
    }
    out
}

/// Every proper coloring of `g` with colors `1..=k`.
pub fn proper_colorings(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    fn go(g: &Graph, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = cur.len();
        if v == g.n() {
            out.push(cur.clone());
            return;
        }
        for c in 1..=k {
            if (0..v).all(|u| !g.has_edge(u, v) || cur[u] != c) {
                cur.push(c);
                go(g, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, k, &mut Vec::new(), &mut out);
    out
}
