//! Schemes derived from others: the opposite algebra, tensor products over
//! the product quiver, and the enveloping algebra.

use crate::coefficients::{int, Coefficient, Rational};
use crate::element::{Element, RewriteSystem, Rule};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::order::{AdmissibleOrder, Direction, LengthLex};
use crate::quiver::{ArrowId, Path, Quiver, VertexId};
use crate::variety::{buchberger_check_with, Point, QuadraticScheme};

const OP_SUFFIX: &str = "^op";

fn toggle_op(name: &str) -> String {
    match name.strip_suffix(OP_SUFFIX) {
        Some(base) => base.to_string(),
        None => format!("{name}{OP_SUFFIX}"),
    }
}

/// The opposite quiver. Arrow `a: u -> v` becomes `a^op: v -> u` with the
/// same index; taking the opposite twice restores the original names.
pub fn opposite_quiver(quiver: &Quiver) -> Quiver {
    let mut op = Quiver::empty();
    for v in quiver.vertex_ids() {
        op.add_vertex(quiver.vertex_name(v).to_string()).expect("distinct vertices");
    }
    for a in quiver.arrows() {
        op.add_arrow(toggle_op(&a.name), a.target, a.source).expect("distinct arrows");
    }
    op
}

/// `p^op`, as a path of the opposite quiver.
pub fn reverse_path(p: &Path) -> Path {
    let arrows: Vec<ArrowId> = p.arrows().iter().rev().copied().collect();
    Path::from_parts(p.target(), p.source(), arrows)
}

pub fn opposite_scheme(scheme: &QuadraticScheme) -> QuadraticScheme {
    let quiver = opposite_quiver(scheme.quiver());
    let order = scheme.order().reversed();
    let tips = scheme.tips().iter().map(reverse_path).collect();
    QuadraticScheme::new(quiver, order, tips).expect("opposite of a valid scheme is valid")
}

/// Transports a point along `(t, n) -> (t^op, n^op)`.
pub fn opposite_point(scheme: &QuadraticScheme, op: &QuadraticScheme, point: &Point) -> Result<Point> {
    let entries = scheme
        .vars()
        .iter()
        .enumerate()
        .map(|(i, cv)| ((reverse_path(&cv.tip), reverse_path(&cv.nontip)), point.values()[i].clone()));
    op.point(entries)
}

/// Makes a rule out of a nonzero element by solving for its tip.
pub fn rule_from_element<O: AdmissibleOrder>(e: &Element<Rational>, order: &O) -> Result<Rule<Rational>> {
    let tip = e.tip(order)?.clone();
    let lead = e.coefficient(&tip).expect("tip has a coefficient").clone();
    let factor = -(int(1) / lead);
    let mut rhs = Element::zero();
    for (p, c) in e.terms() {
        if *p != tip {
            rhs.add_term(p.clone(), c.times(&factor));
        }
    }
    Ok(Rule { tip, rhs })
}

/// Names of the two kinds of arrow in the product quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorArrow {
    /// `(a, w')` for an arrow `a` of the left quiver.
    Left(ArrowId, VertexId),
    /// `(v, b')` for an arrow `b'` of the right quiver.
    Right(VertexId, ArrowId),
}

/// The product quiver with vertex set `Q0 x Q0'`.
#[derive(Debug, Clone)]
pub struct TensorQuiver {
    pub quiver: Quiver,
    pub kinds: Vec<TensorArrow>,
    left_vertices: usize,
    right_vertices: usize,
    left_arrows: usize,
    right_arrows: usize,
}

impl TensorQuiver {
    pub fn new(left: &Quiver, right: &Quiver) -> Result<Self> {
        let mut quiver = Quiver::empty();
        let (nv, nv2) = (left.vertex_count(), right.vertex_count());
        for w in right.vertex_ids() {
            for u in left.vertex_ids() {
                quiver.add_vertex(format!("({}|{})", left.vertex_name(u), right.vertex_name(w)))?;
            }
        }
        let vid = |u: VertexId, w: VertexId| VertexId(w.0 * nv + u.0);
        let mut kinds = Vec::new();
        for a in left.arrow_ids() {
            let arrow = left.arrow(a);
            for w in right.vertex_ids() {
                quiver.add_arrow(
                    format!("({}|{})", arrow.name, right.vertex_name(w)),
                    vid(arrow.source, w),
                    vid(arrow.target, w),
                )?;
                kinds.push(TensorArrow::Left(a, w));
            }
        }
        for v in left.vertex_ids() {
            for b in right.arrow_ids() {
                let arrow = right.arrow(b);
                quiver.add_arrow(
                    format!("({}|{})", left.vertex_name(v), arrow.name),
                    vid(v, arrow.source),
                    vid(v, arrow.target),
                )?;
                kinds.push(TensorArrow::Right(v, b));
            }
        }
        Ok(TensorQuiver {
            quiver,
            kinds,
            left_vertices: nv,
            right_vertices: nv2,
            left_arrows: left.arrow_count(),
            right_arrows: right.arrow_count(),
        })
    }

    pub fn vertex(&self, u: VertexId, w: VertexId) -> VertexId {
        VertexId(w.0 * self.left_vertices + u.0)
    }

    pub fn left_arrow(&self, a: ArrowId, w: VertexId) -> ArrowId {
        ArrowId(a.0 * self.right_vertices + w.0)
    }

    pub fn right_arrow(&self, v: VertexId, b: ArrowId) -> ArrowId {
        ArrowId(self.left_arrows * self.right_vertices + v.0 * self.right_arrows + b.0)
    }

    /// `(p, w')`.
    pub fn lift_left(&self, p: &Path, w: VertexId) -> Path {
        if p.is_trivial() {
            return self.quiver.trivial(self.vertex(p.source(), w));
        }
        let arrows: Vec<ArrowId> = p.arrows().iter().map(|a| self.left_arrow(*a, w)).collect();
        self.quiver.path(&arrows).expect("lift composes")
    }

    /// `(v, q')`.
    pub fn lift_right(&self, v: VertexId, p: &Path) -> Path {
        if p.is_trivial() {
            return self.quiver.trivial(self.vertex(v, p.source()));
        }
        let arrows: Vec<ArrowId> = p.arrows().iter().map(|b| self.right_arrow(v, *b)).collect();
        self.quiver.path(&arrows).expect("lift composes")
    }

    /// The order on the product quiver.
    ///
    /// When both factors read left to right, words of equal length compare
    /// by their first differing arrow: any `(v, b')` beats any `(a, w')`; two
    /// `(v, b')` compare by `b'` and then by `v`; two `(a, w')` compare by `a`
    /// and then by `w'`. Otherwise (as for an opposite factor) the block
    /// order with families `(a, w')` and `(v, b')` is used, which restricts
    /// to each factor's own order. In both cases vertices compare by `w'`
    /// and then by `u`, and `(u, b')(a, x')` is greater than `(a, w')(v, b')`.
    pub fn order(&self, left: &LengthLex, right: &LengthLex) -> Result<LengthLex> {
        if left.is_block() || right.is_block() {
            return Err(Error::BlockFactor);
        }
        let nv = self.left_vertices as u32;
        let nv2 = self.right_vertices as u32;
        let mut vertex_rank = vec![0u32; self.quiver.vertex_count()];
        for w in 0..self.right_vertices {
            for u in 0..self.left_vertices {
                let id = self.vertex(VertexId(u), VertexId(w));
                vertex_rank[id.0] = right.vertex_rank(VertexId(w)) * (nv + 1) + left.vertex_rank(VertexId(u));
            }
        }
        if left.direction() == Direction::Left && right.direction() == Direction::Left {
            let left_span = (self.left_arrows as u32 + 1) * (nv2 + 1);
            let arrow_rank = self
                .kinds
                .iter()
                .map(|k| match *k {
                    TensorArrow::Left(a, w) => left.arrow_rank(a) * (nv2 + 1) + right.vertex_rank(w),
                    TensorArrow::Right(v, b) => left_span + right.arrow_rank(b) * (nv + 1) + left.vertex_rank(v),
                })
                .collect();
            return Ok(LengthLex::from_ranks(arrow_rank, vertex_rank, Direction::Left));
        }
        let (arrow_rank, second) = self
            .kinds
            .iter()
            .map(|k| match *k {
                TensorArrow::Left(a, _) => (left.arrow_rank(a), false),
                TensorArrow::Right(_, b) => (right.arrow_rank(b), true),
            })
            .unzip();
        Ok(LengthLex::block(arrow_rank, vertex_rank, second, [left.direction(), right.direction()]))
    }
}

/// The tensor product of two presented algebras: product quiver, its order,
/// and the rules `{(g, w')} u {(v, g')} u C`.
#[derive(Debug, Clone)]
pub struct TensorProduct {
    pub quiver: TensorQuiver,
    pub order: LengthLex,
    pub rules: RewriteSystem<Rational>,
    pub lifted_left: usize,
    pub lifted_right: usize,
    pub commutativity: usize,
}

impl TensorProduct {
    /// The scheme whose tip set is the tips of the combined rules.
    pub fn scheme(&self) -> Result<QuadraticScheme> {
        let tips = self.rules.tips().cloned().collect();
        QuadraticScheme::new(self.quiver.quiver.clone(), self.order.clone(), tips)
    }

    /// The combined rules as a point of [`Self::scheme`]; fails unless the
    /// rules are reduced.
    pub fn point(&self, scheme: &QuadraticScheme) -> Result<Point> {
        check_reduced(&self.quiver.quiver, &self.rules)?;
        let mut entries = Vec::new();
        for rule in self.rules.rules() {
            for (n, c) in rule.rhs.terms() {
                entries.push(((rule.tip.clone(), n.clone()), c.clone()));
            }
        }
        scheme.point(entries)
    }
}

/// A rule system is reduced when no tip occurs inside any right-hand side.
pub fn check_reduced(quiver: &Quiver, rules: &RewriteSystem<Rational>) -> Result<()> {
    for rule in rules.rules() {
        for n in rule.rhs.support() {
            if rules.is_reducible(n) {
                return Err(Error::NotReduced(format!(
                    "{} appears in the rule for {}",
                    quiver.path_name(n),
                    quiver.path_name(&rule.tip)
                )));
            }
        }
    }
    Ok(())
}

/// `t - rhs_t` for every rule.
fn rule_elements(rules: &RewriteSystem<Rational>) -> impl Iterator<Item = Element<Rational>> + '_ {
    rules.rules().iter().map(|r| Element::path(r.tip.clone()).sub(&r.rhs))
}

pub fn tensor_scheme(
    left: &QuadraticScheme,
    left_point: &Point,
    right: &QuadraticScheme,
    right_point: &Point,
) -> Result<TensorProduct> {
    let tq = TensorQuiver::new(left.quiver(), right.quiver())?;
    let order = tq.order(left.order(), right.order())?;
    let mut rules = Vec::new();

    let left_rules = left.rules_at(left_point)?;
    for g in rule_elements(&left_rules) {
        for w in right.quiver().vertex_ids() {
            let lifted = lift(&g, |p| Some(tq.lift_left(p, w)));
            rules.push(rule_from_element(&lifted, &order)?);
        }
    }
    let lifted_left = rules.len();

    let right_rules = right.rules_at(right_point)?;
    for g in rule_elements(&right_rules) {
        for v in left.quiver().vertex_ids() {
            let lifted = lift(&g, |p| Some(tq.lift_right(v, p)));
            rules.push(rule_from_element(&lifted, &order)?);
        }
    }
    let lifted_right = rules.len() - lifted_left;

    // (u, b')(a, x') - (a, w')(v, b') for a: u -> v and b': w' -> x'
    for a in left.quiver().arrow_ids() {
        let arrow = left.quiver().arrow(a);
        for b in right.quiver().arrow_ids() {
            let arrow2 = right.quiver().arrow(b);
            let first = tq
                .quiver
                .path(&[tq.right_arrow(arrow.source, b), tq.left_arrow(a, arrow2.target)])
                .expect("commutativity path composes");
            let second = tq
                .quiver
                .path(&[tq.left_arrow(a, arrow2.source), tq.right_arrow(arrow.target, b)])
                .expect("commutativity path composes");
            let e = Element::from_terms([(int(1), first), (int(-1), second)]);
            rules.push(rule_from_element(&e, &order)?);
        }
    }
    let commutativity = rules.len() - lifted_left - lifted_right;
    let rules = RewriteSystem::new(&order, rules)?;
    Ok(TensorProduct { quiver: tq, order, rules, lifted_left, lifted_right, commutativity })
}

fn lift<F: Fn(&Path) -> Option<Path>>(e: &Element<Rational>, f: F) -> Element<Rational> {
    Element::from_terms(e.terms().filter_map(|(p, c)| f(p).map(|q| (c.clone(), q))))
}

/// `Lambda (x) Lambda^op`. The point must pass the Buchberger check.
pub fn enveloping_scheme(scheme: &QuadraticScheme, point: &Point) -> Result<TensorProduct> {
    let outcome = buchberger_check_with(scheme, point, Execution::Sequential)?;
    if let Some(cert) = outcome.certificate {
        return Err(Error::NotGroebner(format!(
            "overlap of {} and {} leaves {}",
            scheme.quiver().path_name(&cert.left),
            scheme.quiver().path_name(&cert.right),
            cert.residual.display(scheme.quiver())
        )));
    }
    let op = opposite_scheme(scheme);
    let op_point = opposite_point(scheme, &op, point)?;
    tensor_scheme(scheme, point, &op, &op_point)
}
