//! Helpers shared by the integration tests: seeded random schemes and
//! points, brute-force enumerators, and a naive word-rewriting reducer used
//! as an independent oracle.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;

use koszul_core::coefficients::{int, Poly, Var};
use koszul_core::order::{AdmissibleOrder, Direction, LengthLex};
use koszul_core::quiver::{ArrowId, Path, Quiver, VertexId};
use koszul_core::variety::{Point, QuadraticScheme};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Every length-2 path of the quiver.
pub fn length_two_paths(quiver: &Quiver) -> Vec<Path> {
    let mut out = Vec::new();
    for a in quiver.arrow_ids() {
        for b in quiver.arrow_ids() {
            if let Ok(p) = quiver.path(&[a, b]) {
                out.push(p);
            }
        }
    }
    out
}

/// Largest ambient dimension accepted by [`random_scheme`]. Symbolic
/// coefficients grow combinatorially with the number of coordinates, so
/// larger draws are redrawn to keep the suites fast; so are draws with no
/// coordinates at all.
pub const MAX_RANDOM_DIMENSION: usize = 16;

/// At most 4 vertices and 6 arrows, random precedence, each length-2 path a
/// tip with probability 1/2, ambient dimension between 1 and
/// [`MAX_RANDOM_DIMENSION`].
pub fn random_scheme(rng: &mut ChaCha8Rng) -> QuadraticScheme {
    loop {
        let s = draw_scheme(rng);
        if (1..=MAX_RANDOM_DIMENSION).contains(&s.dimension()) {
            return s;
        }
    }
}

fn draw_scheme(rng: &mut ChaCha8Rng) -> QuadraticScheme {
    let nv = rng.gen_range(1..=4);
    let na = rng.gen_range(1..=6);
    let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let arrows: Vec<(String, String, String)> = (0..na)
        .map(|i| {
            let s = rng.gen_range(0..nv);
            let t = rng.gen_range(0..nv);
            (format!("a{i}"), vertices[s].clone(), vertices[t].clone())
        })
        .collect();
    let quiver = Quiver::new(vertices.iter().map(String::as_str), arrows).unwrap();
    let mut precedence: Vec<ArrowId> = quiver.arrow_ids().collect();
    precedence.shuffle(rng);
    let order = LengthLex::with_arrow_precedence(&quiver, &precedence).unwrap();
    let tips = length_two_paths(&quiver).into_iter().filter(|_| rng.gen_bool(0.5)).collect();
    QuadraticScheme::new(quiver, order, tips).unwrap()
}

/// Coordinates in `{-2, ..., 2}`, zero with probability `zero_bias`.
pub fn random_point(scheme: &QuadraticScheme, rng: &mut ChaCha8Rng, zero_bias: f64) -> Point {
    let values = (0..scheme.dimension())
        .map(|_| if rng.gen_bool(zero_bias) { int(0) } else { int(rng.gen_range(-2..=2)) })
        .collect();
    scheme.point_from_values(values).unwrap()
}

/// A random path: a trivial path or a random walk of up to `max_len` arrows.
pub fn random_path(quiver: &Quiver, rng: &mut ChaCha8Rng, max_len: usize) -> Path {
    let v = VertexId(rng.gen_range(0..quiver.vertex_count()));
    let len = rng.gen_range(0..=max_len);
    let mut arrows = Vec::new();
    let mut here = v;
    for _ in 0..len {
        let out: Vec<ArrowId> = quiver.arrow_ids().filter(|a| quiver.arrow(*a).source == here).collect();
        let Some(a) = out.choose(rng) else { break };
        arrows.push(*a);
        here = quiver.arrow(*a).target;
    }
    if arrows.is_empty() {
        quiver.trivial(v)
    } else {
        quiver.path(&arrows).unwrap()
    }
}

/// Every composable arrow word of exactly `n >= 1` arrows.
pub fn all_words(quiver: &Quiver, n: usize) -> Vec<Vec<ArrowId>> {
    let mut words: Vec<Vec<ArrowId>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &words {
            for a in quiver.arrow_ids() {
                if w.last().is_none_or(|l| quiver.arrow(*l).target == quiver.arrow(a).source) {
                    let mut w2 = w.clone();
                    w2.push(a);
                    next.push(w2);
                }
            }
        }
        words = next;
    }
    words
}

pub fn contains_tip(scheme: &QuadraticScheme, w: &[ArrowId]) -> bool {
    let q = scheme.quiver();
    w.windows(2).any(|p| scheme.is_tip(&q.path(p).unwrap()))
}

pub fn is_tip_chain(scheme: &QuadraticScheme, w: &[ArrowId]) -> bool {
    let q = scheme.quiver();
    w.windows(2).all(|p| scheme.is_tip(&q.path(p).unwrap()))
}

/// Nontip counts by length `0..=max_len`, by exhaustive enumeration. Every
/// prefix of a nontip is a nontip, so only nontip words are extended.
pub fn brute_nontip_counts(scheme: &QuadraticScheme, max_len: usize) -> Vec<usize> {
    let q = scheme.quiver();
    let mut out = vec![q.vertex_count()];
    let mut words: Vec<Vec<ArrowId>> = q.arrow_ids().map(|a| vec![a]).collect();
    for _ in 1..=max_len {
        out.push(words.len());
        let mut next = Vec::new();
        for w in &words {
            for a in q.arrow_ids() {
                let mut w2 = w.clone();
                w2.push(a);
                if q.path(&w2).is_ok() && !contains_tip(scheme, &w2) {
                    next.push(w2);
                }
            }
        }
        words = next;
    }
    out
}

/// `|T^n|` for `n = 0..=max_n`, by exhaustive enumeration.
pub fn brute_chain_counts(scheme: &QuadraticScheme, max_n: usize) -> Vec<usize> {
    let q = scheme.quiver();
    let mut out = vec![q.vertex_count()];
    for n in 1..=max_n {
        out.push(all_words(q, n).iter().filter(|w| is_tip_chain(scheme, w)).count());
    }
    out
}

/// The four axioms of a length-admissible order on a triple, checked wherever
/// the relevant products exist. Returns a description of the first failure.
pub fn check_order_axioms<O: AdmissibleOrder>(order: &O, p: &Path, q: &Path, r: &Path) -> Result<(), String> {
    let c = |x: &Path, y: &Path| order.compare(x, y);
    // total and antisymmetric
    if c(p, q) != c(q, p).reverse() || (c(p, q) == Ordering::Equal) != (p == q) {
        return Err(format!("not a total order on {p:?}, {q:?}"));
    }
    // transitive
    if c(p, q) == Ordering::Greater && c(q, r) == Ordering::Greater && c(p, r) != Ordering::Greater {
        return Err("not transitive".into());
    }
    // longer is greater
    if p.len() > q.len() && c(p, q) != Ordering::Greater {
        return Err("not length-graded".into());
    }
    // compatible with multiplication on both sides
    if c(p, q) == Ordering::Greater {
        if let (Some(pr), Some(qr)) = (p.compose(r), q.compose(r)) {
            if c(&pr, &qr) != Ordering::Greater {
                return Err("right multiplication".into());
            }
        }
        if let (Some(rp), Some(rq)) = (r.compose(p), r.compose(q)) {
            if c(&rp, &rq) != Ordering::Greater {
                return Err("left multiplication".into());
            }
        }
    }
    // a path dominates its subpaths
    for x in [p.compose(q), q.compose(p)].into_iter().flatten() {
        if (x != *p && c(&x, p) != Ordering::Greater) || (x != *q && c(&x, q) != Ordering::Greater) {
            return Err("subpath dominance".into());
        }
    }
    Ok(())
}

/// Symbolic rules as word rewrites: tip word -> [(nontip word, coefficient)].
pub type WordRules = BTreeMap<Vec<usize>, Vec<(Vec<usize>, Poly)>>;

pub fn word(p: &Path) -> Vec<usize> {
    p.arrows().iter().map(|a| a.0).collect()
}

pub fn word_rules(scheme: &QuadraticScheme) -> WordRules {
    let mut rules = WordRules::new();
    for t in scheme.tips() {
        let rhs = scheme.n2(t).iter().map(|n| (word(n), Poly::var(scheme.var(t, n).unwrap()))).collect();
        rules.insert(word(t), rhs);
    }
    rules
}

/// Sort key of a word under the scheme's order, recomputed from the arrow
/// ranks alone.
pub fn word_key(order: &LengthLex, w: &[usize]) -> (usize, Vec<u32>) {
    let mut ranks: Vec<u32> = w.iter().map(|a| order.arrow_rank(ArrowId(*a))).collect();
    if order.direction() == Direction::Reversed {
        ranks.reverse();
    }
    (w.len(), ranks)
}

/// Completely reduces a word combination by repeatedly rewriting the greatest
/// reducible word at its leftmost tip occurrence.
pub fn naive_reduce(
    order: &LengthLex,
    rules: &WordRules,
    mut f: BTreeMap<Vec<usize>, Poly>,
) -> BTreeMap<Vec<usize>, Poly> {
    loop {
        let target = f
            .keys()
            .filter(|w| w.windows(2).any(|p| rules.contains_key(p)))
            .max_by(|a, b| word_key(order, a).cmp(&word_key(order, b)))
            .cloned();
        let Some(w) = target else { return f };
        let coeff = f.remove(&w).unwrap();
        let i = (0..w.len() - 1).find(|i| rules.contains_key(&w[*i..*i + 2])).unwrap();
        for (n, c) in &rules[&w[i..i + 2]] {
            let mut w2 = w[..i].to_vec();
            w2.extend(n);
            w2.extend(&w[i + 2..]);
            let sum = &f.get(&w2).cloned().unwrap_or_else(Poly::zero) + &(&coeff * c);
            if sum.is_zero() {
                f.remove(&w2);
            } else {
                f.insert(w2, sum);
            }
        }
    }
}

/// `(t, t', residual)` for every overlap `t = ab`, `t' = bc`, computed on
/// words: `a * rhs(t') - rhs(t) * c`, then reduced.
/// An overlap `(t, t')` and its reduced residual, on words.
pub type WordResidual = (Vec<usize>, Vec<usize>, BTreeMap<Vec<usize>, Poly>);

pub fn naive_residuals(scheme: &QuadraticScheme) -> Vec<WordResidual> {
    let rules = word_rules(scheme);
    let mut out = Vec::new();
    for (t, rhs_t) in &rules {
        for (t2, rhs_t2) in &rules {
            if t[1] != t2[0] {
                continue;
            }
            let mut f: BTreeMap<Vec<usize>, Poly> = BTreeMap::new();
            let mut add = |w: Vec<usize>, c: Poly| {
                let sum = &f.get(&w).cloned().unwrap_or_else(Poly::zero) + &c;
                if sum.is_zero() {
                    f.remove(&w);
                } else {
                    f.insert(w, sum);
                }
            };
            for (n, c) in rhs_t2 {
                add([vec![t[0]], n.clone()].concat(), c.clone());
            }
            for (n, c) in rhs_t {
                add([n.clone(), vec![t2[1]]].concat(), -c);
            }
            out.push((t.clone(), t2.clone(), naive_reduce(scheme.order(), &rules, f)));
        }
    }
    out
}

pub fn var_names(scheme: &QuadraticScheme) -> impl Fn(Var) -> String + '_ {
    move |v| scheme.var_name(v)
}
