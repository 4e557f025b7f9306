//! The variety of strong Koszul algebras with a fixed quadratic tip set.
//!
//! A [`QuadraticScheme`] fixes a quiver, an order and a set `T` of length-2
//! tips. Its coordinates are the pairs `(t, n)` with `n` a length-2 nontip
//! parallel to and below `t`. A point `X` gives the rules
//! `g_t = t - sum x_{t,n} n`; the point lies in the variety exactly when all
//! overlap relations of these rules reduce to zero. Reducing the overlaps with
//! symbolic coefficients yields polynomials cutting out the variety.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;

use crate::coefficients::{Coefficient, Poly, Rational, Var};
use crate::element::{complete_reduce, Element, Overlap, RewriteSystem, Rule};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::order::{AdmissibleOrder, LengthLex};
use crate::quiver::{Path, Quiver};

/// The indeterminate `y_{t,n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoeffVar {
    pub tip: Path,
    pub nontip: Path,
}

#[derive(Debug, Clone)]
pub struct QuadraticScheme {
    quiver: Quiver,
    order: LengthLex,
    tips: Vec<Path>,
    tip_set: HashSet<Path>,
    nontips2: Vec<Path>,
    n2: Vec<Vec<Path>>,
    vars: Vec<CoeffVar>,
    var_lookup: HashMap<(Path, Path), Var>,
}

impl QuadraticScheme {
    /// Derives `N_2`, every `N_2(t)` and the coordinate list. Tips are kept
    /// greatest first; coordinates are sorted by canonical name.
    pub fn new(quiver: Quiver, order: LengthLex, tips: Vec<Path>) -> Result<Self> {
        let mut tip_set = HashSet::with_capacity(tips.len());
        for t in &tips {
            if t.len() != 2 {
                return Err(Error::TipLength(quiver.path_name(t)));
            }
            if !tip_set.insert(t.clone()) {
                return Err(Error::DuplicateTip(quiver.path_name(t)));
            }
        }
        let mut tips = tips;
        tips.sort_by(|a, b| order.compare(b, a));

        let mut nontips2: Vec<Path> = length_two_paths(&quiver).into_iter().filter(|p| !tip_set.contains(p)).collect();
        nontips2.sort_by(|a, b| order.compare(b, a));

        let n2: Vec<Vec<Path>> = tips
            .iter()
            .map(|t| nontips2.iter().filter(|n| n.is_parallel(t) && order.compare(t, n).is_gt()).cloned().collect())
            .collect();

        let mut named: Vec<(String, CoeffVar)> = tips
            .iter()
            .zip(&n2)
            .flat_map(|(t, ns)| {
                ns.iter().map(|n| {
                    let name = format!("y[{}|{}]", quiver.path_name(t), quiver.path_name(n));
                    (name, CoeffVar { tip: t.clone(), nontip: n.clone() })
                })
            })
            .collect();
        named.sort_by(|a, b| a.0.cmp(&b.0));
        let vars: Vec<CoeffVar> = named.into_iter().map(|(_, v)| v).collect();
        let var_lookup =
            vars.iter().enumerate().map(|(i, v)| ((v.tip.clone(), v.nontip.clone()), Var(i as u32))).collect();

        Ok(QuadraticScheme { quiver, order, tips, tip_set, nontips2, n2, vars, var_lookup })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn order(&self) -> &LengthLex {
        &self.order
    }

    /// Tips, greatest first.
    pub fn tips(&self) -> &[Path] {
        &self.tips
    }

    pub fn is_tip(&self, p: &Path) -> bool {
        self.tip_set.contains(p)
    }

    /// Length-2 nontips, greatest first.
    pub fn nontips2(&self) -> &[Path] {
        &self.nontips2
    }

    /// `N_2(t)`, greatest first. Empty for a path that is not a tip.
    pub fn n2(&self, tip: &Path) -> &[Path] {
        self.tips.iter().position(|t| t == tip).map_or(&[], |i| self.n2[i].as_slice())
    }

    /// The affine dimension `D`.
    pub fn dimension(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[CoeffVar] {
        &self.vars
    }

    pub fn var(&self, tip: &Path, nontip: &Path) -> Option<Var> {
        self.var_lookup.get(&(tip.clone(), nontip.clone())).copied()
    }

    pub fn coeff_var(&self, v: Var) -> &CoeffVar {
        &self.vars[v.0 as usize]
    }

    /// Canonical name `y[t|n]`.
    pub fn var_name(&self, v: Var) -> String {
        let cv = self.coeff_var(v);
        format!("y[{}|{}]", self.quiver.path_name(&cv.tip), self.quiver.path_name(&cv.nontip))
    }

    pub fn is_nontip(&self, p: &Path) -> bool {
        is_nontip(p, self.tips.iter())
    }

    /// The rules `h_t = t - sum y_{t,n} n` over the coordinate ring.
    pub fn symbolic_rules(&self) -> RewriteSystem<Poly> {
        self.rules_with(|v| Some(Poly::var(v)))
    }

    /// The concrete rules `G(X)`.
    pub fn rules_at(&self, point: &Point) -> Result<RewriteSystem<Rational>> {
        self.check_point(point)?;
        Ok(self.rules_with(|v| Some(point.values[v.0 as usize].clone())))
    }

    fn rules_with<R: Coefficient, F: Fn(Var) -> Option<R>>(&self, coefficient: F) -> RewriteSystem<R> {
        let rules = self
            .tips
            .iter()
            .zip(&self.n2)
            .map(|(t, ns)| {
                let rhs = Element::from_terms(ns.iter().filter_map(|n| {
                    let v = self.var(t, n).expect("coordinate exists");
                    coefficient(v).map(|c| (c, n.clone()))
                }));
                Rule { tip: t.clone(), rhs }
            })
            .collect();
        RewriteSystem::new(&self.order, rules).expect("scheme rules are valid by construction")
    }

    pub fn zero_point(&self) -> Point {
        Point { values: vec![<Rational as Zero>::zero(); self.dimension()] }
    }

    /// A point from explicit coordinates; unset coordinates are zero.
    pub fn point<I>(&self, entries: I) -> Result<Point>
    where
        I: IntoIterator<Item = ((Path, Path), Rational)>,
    {
        let mut point = self.zero_point();
        let mut seen = HashSet::new();
        for ((t, n), value) in entries {
            let v = self.lookup(&t, &n)?;
            if !seen.insert(v) {
                return Err(Error::DuplicateAssignment(self.var_name(v)));
            }
            point.values[v.0 as usize] = value;
        }
        Ok(point)
    }

    pub fn point_from_values(&self, values: Vec<Rational>) -> Result<Point> {
        let point = Point { values };
        self.check_point(&point)?;
        Ok(point)
    }

    pub fn specialization<I>(&self, entries: I) -> Result<Specialization>
    where
        I: IntoIterator<Item = ((Path, Path), Rational)>,
    {
        let mut values = BTreeMap::new();
        for ((t, n), value) in entries {
            let v = self.lookup(&t, &n)?;
            if values.insert(v, value).is_some() {
                return Err(Error::DuplicateAssignment(self.var_name(v)));
            }
        }
        Ok(Specialization { values })
    }

    fn lookup(&self, t: &Path, n: &Path) -> Result<Var> {
        self.var(t, n).ok_or_else(|| {
            Error::UnknownCoordinate(format!("{} -> {}", self.quiver.path_name(t), self.quiver.path_name(n)))
        })
    }

    fn check_point(&self, point: &Point) -> Result<()> {
        if point.values.len() != self.dimension() {
            return Err(Error::PointDimension { expected: self.dimension(), got: point.values.len() });
        }
        Ok(())
    }
}

fn length_two_paths(quiver: &Quiver) -> Vec<Path> {
    let mut out = Vec::new();
    for a in quiver.arrow_ids() {
        for b in quiver.arrow_ids() {
            if quiver.arrow(a).target == quiver.arrow(b).source {
                out.push(quiver.path(&[a, b]).expect("composable"));
            }
        }
    }
    out
}

/// True when no tip occurs as a subpath of `p`.
pub fn is_nontip<'a, I: IntoIterator<Item = &'a Path>>(p: &Path, tips: I) -> bool {
    tips.into_iter().all(|t| !p.contains(t))
}

/// A point of the ambient affine space, dense over the scheme's coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    values: Vec<Rational>,
}

impl Point {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, v: Var) -> &Rational {
        &self.values[v.0 as usize]
    }

    pub fn set(&mut self, v: Var, value: Rational) {
        self.values[v.0 as usize] = value;
    }
}

/// Coordinates frozen to constants.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Specialization {
    values: BTreeMap<Var, Rational>,
}

impl Specialization {
    pub fn get(&self, v: Var) -> Option<&Rational> {
        self.values.get(&v)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Var, &Rational)> {
        self.values.iter().map(|(v, c)| (*v, c))
    }
}

/// The nonzero coefficient of `nhat` in the complete reduction of the overlap
/// of `left` and `right`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealEntry {
    pub left: Path,
    pub right: Path,
    pub nhat: Path,
    pub poly: Poly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarietyIdeal {
    dimension: usize,
    overlap_count: usize,
    entries: Vec<IdealEntry>,
    generators: Vec<IdealEntry>,
}

impl VarietyIdeal {
    /// Raw coefficients, in `(t, t', n̂)` order.
    pub fn entries(&self) -> &[IdealEntry] {
        &self.entries
    }

    /// Normalized generators without duplicates, each tagged with the first
    /// entry producing it.
    pub fn generators(&self) -> &[IdealEntry] {
        &self.generators
    }

    pub fn generator_polys(&self) -> impl Iterator<Item = &Poly> {
        self.generators.iter().map(|g| &g.poly)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn overlap_count(&self) -> usize {
        self.overlap_count
    }

    fn from_residuals(order: &LengthLex, dimension: usize, residuals: Vec<(Overlap<Poly>, Element<Poly>)>) -> Self {
        let overlap_count = residuals.len();
        let mut entries = Vec::new();
        for (ov, residual) in residuals {
            let mut terms: Vec<(&Path, &Poly)> = residual.terms().collect();
            terms.sort_by(|a, b| order.compare(b.0, a.0));
            for (nhat, poly) in terms {
                entries.push(IdealEntry {
                    left: ov.left.clone(),
                    right: ov.right.clone(),
                    nhat: nhat.clone(),
                    poly: poly.clone(),
                });
            }
        }
        let mut seen = HashSet::new();
        let generators = entries
            .iter()
            .filter_map(|e| {
                let poly = e.poly.normalize().expect("entries are nonzero");
                seen.insert(poly.clone()).then(|| IdealEntry { poly, ..e.clone() })
            })
            .collect();
        VarietyIdeal { dimension, overlap_count, entries, generators }
    }
}

/// The symbolic overlap relations, in tip order.
pub fn overlaps(scheme: &QuadraticScheme) -> Vec<Overlap<Poly>> {
    scheme.symbolic_rules().overlaps(&scheme.quiver)
}

pub fn variety_ideal(scheme: &QuadraticScheme) -> VarietyIdeal {
    variety_ideal_with(scheme, Execution::default())
}

pub fn variety_ideal_with(scheme: &QuadraticScheme, exec: Execution) -> VarietyIdeal {
    ideal_for_rules(scheme, &scheme.symbolic_rules(), exec)
}

fn ideal_for_rules(scheme: &QuadraticScheme, rules: &RewriteSystem<Poly>, exec: Execution) -> VarietyIdeal {
    let ovs = rules.overlaps(&scheme.quiver);
    let reduced = exec::map(exec, &ovs, |ov| complete_reduce(&ov.element, rules, &scheme.order));
    VarietyIdeal::from_residuals(&scheme.order, scheme.dimension(), ovs.into_iter().zip(reduced).collect())
}

pub fn is_member(ideal: &VarietyIdeal, point: &Point) -> Result<bool> {
    if point.values.len() != ideal.dimension {
        return Err(Error::PointDimension { expected: ideal.dimension, got: point.values.len() });
    }
    for g in &ideal.generators {
        if g.poly.evaluate(&point.values)? != <Rational as Zero>::zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first overlap that does not reduce to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub left: Path,
    pub right: Path,
    pub residual: Element<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub overlaps: usize,
    pub certificate: Option<Certificate>,
}

impl CheckOutcome {
    pub fn is_groebner(&self) -> bool {
        self.certificate.is_none()
    }
}

/// Buchberger's criterion for a quadratic rule system: every overlap must
/// completely reduce to zero.
pub fn check_rules<O: AdmissibleOrder + Sync>(
    quiver: &Quiver,
    order: &O,
    rules: &RewriteSystem<Rational>,
    exec: Execution,
) -> CheckOutcome {
    let ovs = rules.overlaps(quiver);
    let overlaps = ovs.len();
    let residuals = exec::map(exec, &ovs, |ov| complete_reduce(&ov.element, rules, order));
    let certificate = ovs.into_iter().zip(residuals).find(|(_, r)| !r.is_zero()).map(|(ov, residual)| Certificate {
        left: ov.left,
        right: ov.right,
        residual,
    });
    CheckOutcome { overlaps, certificate }
}

pub fn buchberger_check(scheme: &QuadraticScheme, point: &Point) -> Result<CheckOutcome> {
    buchberger_check_with(scheme, point, Execution::default())
}

pub fn buchberger_check_with(scheme: &QuadraticScheme, point: &Point, exec: Execution) -> Result<CheckOutcome> {
    let rules = scheme.rules_at(point)?;
    Ok(check_rules(&scheme.quiver, &scheme.order, &rules, exec))
}

/// Output of [`specialize`]: the ideal in the free coordinates plus the rules
/// of the distinguished algebra `g*_t = t - sum_{psi(t,n) != 0} psi(t,n) n`.
#[derive(Debug, Clone)]
pub struct Specialized {
    pub ideal: VarietyIdeal,
    pub free: Vec<Var>,
    pub distinguished: RewriteSystem<Rational>,
}

pub fn specialize(scheme: &QuadraticScheme, psi: &Specialization) -> Result<Specialized> {
    specialize_with(scheme, psi, Execution::default())
}

pub fn specialize_with(scheme: &QuadraticScheme, psi: &Specialization, exec: Execution) -> Result<Specialized> {
    if let Some((v, _)) = psi.values.iter().find(|(v, _)| v.0 as usize >= scheme.dimension()) {
        return Err(Error::UnknownCoordinate(format!("#{}", v.0)));
    }
    let rules = scheme.rules_with(|v| match psi.get(v) {
        Some(c) => Some(Poly::constant(c.clone())),
        None => Some(Poly::var(v)),
    });
    let ideal = ideal_for_rules(scheme, &rules, exec);
    let free = (0..scheme.dimension() as u32).map(Var).filter(|v| psi.get(*v).is_none()).collect();
    let distinguished = scheme.rules_with(|v| psi.get(v).cloned());
    Ok(Specialized { ideal, free, distinguished })
}

/// A point of the variety's ambient space that lies on the specialization's
/// affine subspace: free coordinates from `free_values`, the rest from `psi`.
pub fn point_on_subspace(scheme: &QuadraticScheme, psi: &Specialization, free_values: &[(Var, Rational)]) -> Point {
    let mut point = scheme.zero_point();
    for (v, c) in psi.entries() {
        point.set(v, c.clone());
    }
    for (v, c) in free_values {
        point.set(*v, c.clone());
    }
    point
}
