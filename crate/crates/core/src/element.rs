//! Elements of the path algebra over a coefficient ring, quadratic rewrite
//! systems, and the reduction machine.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::coefficients::{Coefficient, Rational};
use crate::error::{Error, Result};
use crate::order::AdmissibleOrder;
use crate::quiver::{ArrowId, Path, Quiver};

/// A finite linear combination of paths. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Element<R> {
    terms: BTreeMap<Path, R>,
}

impl<R: Coefficient> Default for Element<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Coefficient> Element<R> {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn term(c: R, p: Path) -> Self {
        let mut e = Self::zero();
        e.add_term(p, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (R, Path)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (c, p) in terms {
            e.add_term(p, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Path) -> Option<&R> {
        self.terms.get(p)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &R)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Path> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, p: Path, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_in_place(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Element { terms: self.terms.iter().map(|(p, c)| (p.clone(), c.negated())).collect() }
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero();
        for (p, a) in &self.terms {
            out.add_term(p.clone(), c.times(a));
        }
        out
    }

    /// `q · self · r`; terms whose paths do not compose vanish.
    pub fn sandwich(&self, left: &Path, right: &Path) -> Self {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            if let Some(lp) = left.compose(p).and_then(|lp| lp.compose(right)) {
                out.add_term(lp, c.clone());
            }
        }
        out
    }

    pub fn tip<O: AdmissibleOrder>(&self, order: &O) -> Result<&Path> {
        self.terms.keys().max_by(|a, b| order.compare(a, b)).ok_or(Error::ZeroElement)
    }

    pub fn is_uniform(&self) -> Result<bool> {
        let mut paths = self.terms.keys();
        let first = paths.next().ok_or(Error::ZeroElement)?;
        Ok(paths.all(|p| p.is_parallel(first)))
    }

    /// `Some(d)` when every support path has length `d`.
    pub fn homogeneous_length(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Path::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    pub fn map_coefficients<S: Coefficient, F: FnMut(&R) -> S>(&self, mut f: F) -> Element<S> {
        let mut out = Element::zero();
        for (p, c) in &self.terms {
            out.add_term(p.clone(), f(c));
        }
        out
    }

    pub fn try_map_coefficients<S: Coefficient, F: FnMut(&R) -> Result<S>>(&self, mut f: F) -> Result<Element<S>> {
        let mut out = Element::zero();
        for (p, c) in &self.terms {
            out.add_term(p.clone(), f(c)?);
        }
        Ok(out)
    }
}

impl Element<Rational> {
    pub fn path(p: Path) -> Self {
        Self::term(crate::coefficients::int(1), p)
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> ElementDisplay<'a> {
        ElementDisplay { element: self, quiver }
    }
}

/// Renders a rational element as `c1*p1 + c2*p2` with dot-joined paths.
pub struct ElementDisplay<'a> {
    element: &'a Element<Rational>,
    quiver: &'a Quiver,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::{One, Signed};
        if self.element.is_zero() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.element.terms().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match i {
                0 if c.is_negative() => f.write_str("-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let m = c.abs();
            if !m.is_one() {
                write!(f, "{m}*")?;
            }
            f.write_str(&self.quiver.path_name(p))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rule<R> {
    pub tip: Path,
    pub rhs: Element<R>,
}

/// Rules `t -> rhs_t` for length-2 tips `t`, keyed by the arrow pair of the
/// tip. Every support path of `rhs_t` is parallel to and smaller than `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct RewriteSystem<R> {
    rules: Vec<Rule<R>>,
    by_arrows: HashMap<(ArrowId, ArrowId), usize>,
}

impl<R: Coefficient> RewriteSystem<R> {
    /// Validates and indexes the rules. Rules keep the order given.
    pub fn new<O: AdmissibleOrder>(order: &O, rules: Vec<Rule<R>>) -> Result<Self> {
        let mut by_arrows = HashMap::with_capacity(rules.len());
        for (i, rule) in rules.iter().enumerate() {
            let describe = || format!("{:?}", rule.tip.arrows());
            if rule.tip.len() != 2 {
                return Err(Error::TipLength(describe()));
            }
            let key = (rule.tip.arrows()[0], rule.tip.arrows()[1]);
            if by_arrows.insert(key, i).is_some() {
                return Err(Error::DuplicateTip(describe()));
            }
            for n in rule.rhs.support() {
                if !n.is_parallel(&rule.tip) {
                    return Err(Error::InvalidRule { tip: describe(), reason: "support not parallel to tip".into() });
                }
                if order.compare(&rule.tip, n) != std::cmp::Ordering::Greater {
                    return Err(Error::InvalidRule { tip: describe(), reason: "support not below tip".into() });
                }
            }
        }
        Ok(RewriteSystem { rules, by_arrows })
    }

    pub fn rules(&self) -> &[Rule<R>] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rule_for(&self, a: ArrowId, b: ArrowId) -> Option<&Rule<R>> {
        self.by_arrows.get(&(a, b)).map(|&i| &self.rules[i])
    }

    pub fn rule(&self, tip: &Path) -> Option<&Rule<R>> {
        match tip.arrows() {
            [a, b] => self.rule_for(*a, *b),
            _ => None,
        }
    }

    /// Index of the leftmost tip occurrence in `p`.
    pub fn leftmost_occurrence(&self, p: &Path) -> Option<usize> {
        p.arrows().windows(2).position(|w| self.by_arrows.contains_key(&(w[0], w[1])))
    }

    pub fn is_reducible(&self, p: &Path) -> bool {
        self.leftmost_occurrence(p).is_some()
    }

    /// Tip of the element `t - rhs_t` for each rule, i.e. `t` itself.
    pub fn tips(&self) -> impl Iterator<Item = &Path> {
        self.rules.iter().map(|r| &r.tip)
    }

    /// Overlap relations `g_t · c - a · g_t'` for `t = ab`, `t' = bc`, which
    /// simplify to `a · rhs_t' - rhs_t · c`. Pairs are listed in rule order.
    pub fn overlaps(&self, quiver: &Quiver) -> Vec<Overlap<R>> {
        let mut out = Vec::new();
        for left in &self.rules {
            for right in &self.rules {
                let (la, lb) = (left.tip.arrows()[0], left.tip.arrows()[1]);
                let (rb, rc) = (right.tip.arrows()[0], right.tip.arrows()[1]);
                if lb != rb {
                    continue;
                }
                let a = quiver.arrow_path(la);
                let c = quiver.arrow_path(rc);
                let trivial_a = quiver.trivial(a.source());
                let trivial_c = quiver.trivial(c.target());
                let element = right.rhs.sandwich(&a, &trivial_c).sub(&left.rhs.sandwich(&trivial_a, &c));
                out.push(Overlap { left: left.tip.clone(), right: right.tip.clone(), element });
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Overlap<R> {
    pub left: Path,
    pub right: Path,
    pub element: Element<R>,
}

/// One simple reduction: the term `coefficient · path` was rewritten using the
/// rule for `tip` found at arrow index `position`.
#[derive(Debug, Clone, PartialEq)]
pub struct Step<R> {
    pub path: Path,
    pub position: usize,
    pub tip: Path,
    pub coefficient: R,
}

fn apply_rule<R: Coefficient>(
    out: &mut Element<R>,
    p: &Path,
    position: usize,
    coefficient: &R,
    rule: &Rule<R>,
) -> Vec<Path> {
    let arrows = p.arrows();
    let prefix = &arrows[..position];
    let suffix = &arrows[position + 2..];
    let mut touched = Vec::with_capacity(rule.rhs.len());
    for (n, c) in rule.rhs.terms() {
        let q = Path::splice(prefix, n, suffix, p.source(), p.target());
        out.add_term(q.clone(), coefficient.times(c));
        touched.push(q);
    }
    touched
}

/// Performs one simple reduction on the greatest reducible support path, at
/// its leftmost tip occurrence. `None` when no support path contains a tip.
pub fn simple_reduce<R: Coefficient, O: AdmissibleOrder>(
    f: &Element<R>,
    rules: &RewriteSystem<R>,
    order: &O,
) -> Option<(Element<R>, Step<R>)> {
    let (p, position) = f
        .support()
        .filter_map(|p| rules.leftmost_occurrence(p).map(|i| (p, i)))
        .max_by(|a, b| order.compare(a.0, b.0))?;
    let p = p.clone();
    let rule = rules.rule_for(p.arrows()[position], p.arrows()[position + 1])?;
    let coefficient = f.coefficient(&p)?.clone();
    let mut out = f.clone();
    out.terms.remove(&p);
    apply_rule(&mut out, &p, position, &coefficient, rule);
    let step = Step { tip: rule.tip.clone(), path: p, position, coefficient };
    Some((out, step))
}

/// Iterates [`simple_reduce`] until no support path contains a tip.
pub fn complete_reduce<R: Coefficient, O: AdmissibleOrder>(
    f: &Element<R>,
    rules: &RewriteSystem<R>,
    order: &O,
) -> Element<R> {
    reduce_impl(f, rules, order, None)
}

/// [`complete_reduce`] that also records every simple reduction.
pub fn complete_reduce_traced<R: Coefficient, O: AdmissibleOrder>(
    f: &Element<R>,
    rules: &RewriteSystem<R>,
    order: &O,
) -> (Element<R>, Vec<Step<R>>) {
    let mut trace = Vec::new();
    let out = reduce_impl(f, rules, order, Some(&mut trace));
    (out, trace)
}

// Each rewrite only creates strictly smaller paths, so popping the greatest
// pending reducible path gives exactly the sequence of `simple_reduce` steps.
fn reduce_impl<R: Coefficient, O: AdmissibleOrder>(
    f: &Element<R>,
    rules: &RewriteSystem<R>,
    order: &O,
    mut trace: Option<&mut Vec<Step<R>>>,
) -> Element<R> {
    let mut out = f.clone();
    let mut pending: BTreeMap<O::Key, (Path, usize)> = BTreeMap::new();
    for p in out.support() {
        if let Some(i) = rules.leftmost_occurrence(p) {
            pending.insert(order.key(p), (p.clone(), i));
        }
    }
    while let Some((_, (p, position))) = pending.pop_last() {
        let Some(coefficient) = out.terms.remove(&p) else {
            continue;
        };
        let rule =
            rules.rule_for(p.arrows()[position], p.arrows()[position + 1]).expect("indexed occurrence has a rule");
        for q in apply_rule(&mut out, &p, position, &coefficient, rule) {
            if let Some(i) = rules.leftmost_occurrence(&q) {
                pending.entry(order.key(&q)).or_insert((q, i));
            }
        }
        if let Some(t) = trace.as_deref_mut() {
            t.push(Step { tip: rule.tip.clone(), path: p, position, coefficient });
        }
    }
    out
}

/// The nontip component of `x` modulo the ideal generated by the rules. Unique
/// when the rules form a Gröbner basis.
pub fn normal_form<O: AdmissibleOrder>(
    x: &Element<Rational>,
    rules: &RewriteSystem<Rational>,
    order: &O,
) -> Element<Rational> {
    complete_reduce(x, rules, order)
}
