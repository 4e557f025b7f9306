//! Command dispatch and rendering.
//!
//! Every command returns a [`Report`]: the rendered text (plain or JSON) and
//! whether the mathematical question it answers came out positive. Errors
//! are split into input errors and mathematical failures so the binary can
//! map them to distinct exit codes.

use std::fmt::Write as _;

use koszul_core::constructions::{
    check_reduced, enveloping_scheme, opposite_point, opposite_scheme, tensor_scheme, TensorProduct,
};
use koszul_core::invariants::{cartan_matrix, determinant, enumerate_nontips, global_dimension, resolution_shape};
use koszul_core::variety::{buchberger_check, check_rules, specialize, variety_ideal, IdealEntry, Point};
use koszul_core::{Dimension, Direction, Element, Error, Execution, Poly, QuadraticScheme, Rational, Var};
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::parse::{coordinates, ParseError, SchemeFile, SetEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Ideal,
    Check,
    Basis,
    Cartan,
    Betti,
    Gldim,
    Specialize,
    Op,
    Tensor,
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub json: bool,
    /// Extra coordinates; they override `set` lines of the file.
    pub sets: Vec<SetEntry>,
    /// Short names for the variables in canonical order.
    pub rename: Option<Vec<String>>,
    /// Longest nontip listed by `basis` when there are infinitely many.
    pub max_length: Option<usize>,
    /// Highest homological degree shown by `betti`.
    pub max_degree: Option<usize>,
}

/// A parsed input file and the name used for it in diagnostics.
#[derive(Debug, Clone)]
pub struct Input {
    pub name: String,
    pub file: SchemeFile,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    /// False when the answer is negative, e.g. a point that fails the check.
    pub success: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Math(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Math(_) => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InfiniteDimensional | Error::NotGroebner(_) | Error::NotReduced(_) => Failure::Math(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

const DEFAULT_MAX_LENGTH: usize = 4;
const DEFAULT_MAX_DEGREE: usize = 4;

pub fn run(command: Command, inputs: &[Input], opts: &Options) -> Result<Report, Failure> {
    let expected = if command == Command::Tensor { 1..=2 } else { 1..=1 };
    if !expected.contains(&inputs.len()) {
        return Err(Failure::Input(format!("expected {} input file(s), got {}", expected.end(), inputs.len())));
    }
    let input = &inputs[0];
    let scheme = located(input, input.file.scheme())?;
    match command {
        Command::Ideal => ideal(&scheme, opts),
        Command::Check => check(input, &scheme, opts),
        Command::Basis => basis(&scheme, opts),
        Command::Cartan => cartan(&scheme, opts),
        Command::Betti => betti(&scheme, opts),
        Command::Gldim => gldim(&scheme, opts),
        Command::Specialize => specialized(input, &scheme, opts),
        Command::Op => op(input, &scheme, opts),
        Command::Tensor => tensor(inputs, &scheme, opts),
    }
}

fn located<T>(input: &Input, r: Result<T, ParseError>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(format!("{}:{e}", input.name)))
}

fn report(text: String, success: bool) -> Result<Report, Failure> {
    Ok(Report { text, success })
}

fn pretty(value: Value) -> String {
    serde_json::to_string_pretty(&value).expect("JSON values serialize")
}

/// Variable names in canonical order, renamed if requested.
fn names(scheme: &QuadraticScheme, opts: &Options) -> Result<Vec<String>, Failure> {
    let d = scheme.dimension();
    match &opts.rename {
        None => Ok((0..d as u32).map(|v| scheme.var_name(Var(v))).collect()),
        Some(r) if r.len() == d => Ok(r.clone()),
        Some(r) => Err(Failure::Input(format!("--rename gives {} names for {d} variables", r.len()))),
    }
}

fn poly_text(poly: &Poly, names: &[String]) -> String {
    poly.display_with(|v| names[v.0 as usize].clone()).to_string()
}

fn element_text(e: &Element<Rational>, scheme: &QuadraticScheme) -> String {
    e.display(scheme.quiver()).to_string()
}

fn dimension_json(d: Dimension) -> Value {
    match d {
        Dimension::Finite(n) => json!(n),
        Dimension::Infinite => json!("infinite"),
    }
}

fn scheme_json(scheme: &QuadraticScheme) -> Value {
    let q = scheme.quiver();
    let arrows: Vec<Value> = q
        .arrows()
        .iter()
        .map(|a| json!({"name": a.name, "source": q.vertex_name(a.source), "target": q.vertex_name(a.target)}))
        .collect();
    let order: Vec<&str> = scheme.order().arrow_precedence().iter().map(|a| q.arrow(*a).name.as_str()).collect();
    let direction = match scheme.order().direction() {
        Direction::Left => "left-to-right",
        Direction::Reversed => "right-to-left",
    };
    let tips: Vec<String> = scheme.tips().iter().map(|t| q.path_name(t)).collect();
    json!({
        "vertices": q.vertex_ids().map(|v| q.vertex_name(v)).collect::<Vec<_>>(),
        "arrows": arrows,
        "order": order,
        "comparison": direction,
        "tips": tips,
        "dimension": scheme.dimension(),
    })
}

fn generators_json(scheme: &QuadraticScheme, generators: &[IdealEntry], names: &[String]) -> Value {
    let q = scheme.quiver();
    generators
        .iter()
        .map(|g| {
            json!({
                "t": q.path_name(&g.left),
                "t2": q.path_name(&g.right),
                "nhat": q.path_name(&g.nhat),
                "poly": poly_text(&g.poly, names),
            })
        })
        .collect()
}

fn ideal(scheme: &QuadraticScheme, opts: &Options) -> Result<Report, Failure> {
    let names = names(scheme, opts)?;
    let ideal = variety_ideal(scheme);
    if opts.json {
        return report(
            pretty(json!({
                "scheme": scheme_json(scheme),
                "variables": names,
                "generators": generators_json(scheme, ideal.generators(), &names),
            })),
            true,
        );
    }
    let mut out = String::new();
    for g in ideal.generator_polys() {
        writeln!(out, "{}", poly_text(g, &names)).unwrap();
    }
    write!(out, "variables: {}", scheme.dimension()).unwrap();
    report(out, true)
}

/// File `set` lines, overridden by command-line ones for the same coordinate.
fn merged_sets(input: &Input, opts: &Options) -> Vec<SetEntry> {
    let mut out: Vec<SetEntry> = input
        .file
        .sets
        .iter()
        .filter(|e| !opts.sets.iter().any(|o| o.tip == e.tip && o.nontip == e.nontip))
        .cloned()
        .collect();
    out.extend(opts.sets.iter().cloned());
    out
}

fn file_point(input: &Input, scheme: &QuadraticScheme, opts: &Options) -> Result<Point, Failure> {
    let entries = coordinates(scheme, &merged_sets(input, opts)).map_err(|e| set_error(input, e))?;
    Ok(scheme.point(entries)?)
}

fn set_error(input: &Input, e: ParseError) -> Failure {
    if e.line == 0 {
        Failure::Input(e.message)
    } else if input.file.sets.iter().any(|s| s.line == e.line && s.column == e.column) {
        Failure::Input(format!("{}:{e}", input.name))
    } else {
        Failure::Input(format!("--set: {}", e.message))
    }
}

fn point_json(scheme: &QuadraticScheme, point: &Point, names: &[String]) -> Value {
    let mut map = Map::new();
    for v in 0..scheme.dimension() as u32 {
        let c = point.get(Var(v));
        if !c.is_zero() {
            map.insert(names[v as usize].clone(), json!(c.to_string()));
        }
    }
    Value::Object(map)
}

fn check(input: &Input, scheme: &QuadraticScheme, opts: &Options) -> Result<Report, Failure> {
    let names = names(scheme, opts)?;
    let point = file_point(input, scheme, opts)?;
    let outcome = buchberger_check(scheme, &point)?;
    let q = scheme.quiver();
    let groebner = outcome.is_groebner();
    if opts.json {
        let obstruction = outcome.certificate.as_ref().map_or(Value::Null, |c| {
            json!({
                "t": q.path_name(&c.left),
                "t2": q.path_name(&c.right),
                "residual": element_text(&c.residual, scheme),
            })
        });
        return report(
            pretty(json!({
                "scheme": scheme_json(scheme),
                "point": point_json(scheme, &point, &names),
                "groebner": groebner,
                "overlaps": outcome.overlaps,
                "obstruction": obstruction,
            })),
            groebner,
        );
    }
    let mut out = format!("GROEBNER: {}\noverlaps: {}", if groebner { "yes" } else { "no" }, outcome.overlaps);
    if let Some(c) = &outcome.certificate {
        write!(
            out,
            "\nobstruction: overlap of {} and {} reduces to {}",
            q.path_name(&c.left),
            q.path_name(&c.right),
            element_text(&c.residual, scheme)
        )
        .unwrap();
    }
    report(out, groebner)
}

fn basis(scheme: &QuadraticScheme, opts: &Options) -> Result<Report, Failure> {
    let limit = opts.max_length.unwrap_or(DEFAULT_MAX_LENGTH);
    let basis = enumerate_nontips(scheme, limit);
    let q = scheme.quiver();
    let levels: Vec<Vec<String>> =
        basis.by_length.iter().map(|level| level.iter().map(|p| q.path_name(p)).collect()).collect();
    if opts.json {
        return report(
            pretty(json!({
                "scheme": scheme_json(scheme),
                "invariants": {
                    "finite": basis.finite,
                    "total": basis.total(),
                    "basis": levels,
                },
            })),
            true,
        );
    }
    let mut out = String::new();
    for (k, level) in levels.iter().enumerate() {
        writeln!(out, "{k}: {}", level.join(" ")).unwrap();
    }
    match basis.total() {
        Some(n) => write!(out, "total: {n}").unwrap(),
        None => write!(out, "total: infinite (listed up to length {limit})").unwrap(),
    }
    report(out, true)
}

fn cartan(scheme: &QuadraticScheme, opts: &Options) -> Result<Report, Failure> {
    let c = cartan_matrix(scheme)?;
    let det = determinant(&c);
    let total: u64 = c.iter().flatten().sum();
    let q = scheme.quiver();
    if opts.json {
        return report(
            pretty(json!({
                "scheme": scheme_json(scheme),
                "invariants": {"cartan": c, "determinant": det.to_string(), "dimension": total},
            })),
            true,
        );
    }
    let width = q.vertex_ids().map(|v| q.vertex_name(v).chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (v, row) in q.vertex_ids().zip(&c) {
        let entries: Vec<String> = row.iter().map(u64::to_string).collect();
        writeln!(out, "{:<width$}  {}", q.vertex_name(v), entries.join(" ")).unwrap();
    }
    write!(out, "determinant: {det}\ndimension: {total}").unwrap();
    report(out, true)
}

fn betti(scheme: &QuadraticScheme, opts: &Options) -> Result<Report, Failure> {
    let max = opts.max_degree.unwrap_or(DEFAULT_MAX_DEGREE);
    let shape = resolution_shape(scheme, max);
    let q = scheme.quiver();
    // Betti numbers of the simple at v: ranks of the projectives in each degree
    let simple = |v: usize| -> Vec<u64> { shape.betti.iter().map(|table| table[v].iter().sum()).collect() };
    if opts.json {
        let vertices: Vec<Value> = q
            .vertex_ids()
            .map(|v| {
                json!({
                    "vertex": q.vertex_name(v),
                    "betti": simple(v.0),
                    "projective_dimension": dimension_json(shape.projective[v.0]),
                    "injective_dimension": dimension_json(shape.injective[v.0]),
                })
            })
            .collect();
        return report(
            pretty(json!({
                "scheme": scheme_json(scheme),
                "invariants": {"simples": vertices, "table": shape.betti},
            })),
            true,
        );
    }
    let width = q.vertex_ids().map(|v| q.vertex_name(v).chars().count()).max().unwrap_or(0);
    let mut lines = Vec::new();
    for v in q.vertex_ids() {
        let numbers: Vec<String> = simple(v.0).iter().map(u64::to_string).collect();
        lines.push(format!(
            "{:<width$}  {}  pd {}  id {}",
            q.vertex_name(v),
            numbers.join(" "),
            shape.projective[v.0],
            shape.injective[v.0]
        ));
    }
    report(lines.join("\n"), true)
}

fn gldim(scheme: &QuadraticScheme, opts: &Options) -> Result<Report, Failure> {
    let d = global_dimension(scheme)?;
    if opts.json {
        return report(
            pretty(json!({"scheme": scheme_json(scheme), "invariants": {"gldim": dimension_json(d)}})),
            true,
        );
    }
    report(d.to_string(), true)
}

fn specialized(input: &Input, scheme: &QuadraticScheme, opts: &Options) -> Result<Report, Failure> {
    let entries = coordinates(scheme, &merged_sets(input, opts)).map_err(|e| set_error(input, e))?;
    let psi = scheme.specialization(entries)?;
    let spec = specialize(scheme, &psi)?;
    // a rename may cover every variable or just the free ones
    let names = match &opts.rename {
        Some(r) if r.len() == spec.free.len() && r.len() != scheme.dimension() => {
            let mut all = names(scheme, &Options::default())?;
            for (v, name) in spec.free.iter().zip(r) {
                all[v.0 as usize] = name.clone();
            }
            all
        }
        _ => names(scheme, opts)?,
    };
    let free: Vec<&str> = spec.free.iter().map(|v| names[v.0 as usize].as_str()).collect();
    let q = scheme.quiver();
    let rules: Vec<(String, String)> =
        spec.distinguished.rules().iter().map(|r| (q.path_name(&r.tip), element_text(&r.rhs, scheme))).collect();
    if opts.json {
        let rules: Vec<Value> = rules.iter().map(|(t, rhs)| json!({"tip": t, "rhs": rhs})).collect();
        return report(
            pretty(json!({
                "scheme": scheme_json(scheme),
                "variables": free,
                "generators": generators_json(scheme, spec.ideal.generators(), &names),
                "distinguished": rules,
            })),
            true,
        );
    }
    let mut out = String::new();
    for g in spec.ideal.generator_polys() {
        writeln!(out, "{}", poly_text(g, &names)).unwrap();
    }
    for (t, rhs) in &rules {
        writeln!(out, "distinguished: {t} -> {rhs}").unwrap();
    }
    writeln!(out, "free: {}", free.join(" ")).unwrap();
    write!(out, "variables: {}", free.len()).unwrap();
    report(out, true)
}

fn op(input: &Input, scheme: &QuadraticScheme, opts: &Options) -> Result<Report, Failure> {
    let op = opposite_scheme(scheme);
    let point = file_point(input, scheme, opts)?;
    let op_point = opposite_point(scheme, &op, &point)?;
    let names = names(&op, &Options { rename: opts.rename.clone(), ..Options::default() })?;
    let q = op.quiver();
    if opts.json {
        return report(
            pretty(json!({
                "scheme": scheme_json(&op),
                "variables": names,
                "point": point_json(&op, &op_point, &names),
            })),
            true,
        );
    }
    // the comparison line keeps this from being read back as a left-to-right scheme
    let mut out = String::new();
    writeln!(out, "vertices: {}", q.vertex_ids().map(|v| q.vertex_name(v)).collect::<Vec<_>>().join(" ")).unwrap();
    for a in q.arrows() {
        writeln!(out, "arrow {}: {} -> {}", a.name, q.vertex_name(a.source), q.vertex_name(a.target)).unwrap();
    }
    let order: Vec<&str> = op.order().arrow_precedence().iter().map(|a| q.arrow(*a).name.as_str()).collect();
    writeln!(out, "order: {}", order.join(" ")).unwrap();
    writeln!(out, "comparison: right-to-left").unwrap();
    let tips: Vec<String> = op.tips().iter().map(|t| q.path_name(t)).collect();
    write!(out, "tips: {}", tips.join(", ")).unwrap();
    for v in (0..op.dimension() as u32).map(Var).filter(|v| !op_point.get(*v).is_zero()) {
        write!(out, "\npoint: {} = {}", names[v.0 as usize], op_point.get(v)).unwrap();
    }
    report(out, true)
}

fn tensor(inputs: &[Input], scheme: &QuadraticScheme, opts: &Options) -> Result<Report, Failure> {
    if !opts.sets.is_empty() {
        return Err(Failure::Input(
            "tensor takes its points from the files' `set` lines; --set is not accepted".into(),
        ));
    }
    let no_overrides = Options::default();
    let point = file_point(&inputs[0], scheme, &no_overrides)?;
    let tp = match inputs.get(1) {
        None => enveloping_scheme(scheme, &point)?,
        Some(right) => {
            let right_scheme = located(right, right.file.scheme())?;
            let right_point = file_point(right, &right_scheme, &no_overrides)?;
            tensor_scheme(scheme, &point, &right_scheme, &right_point)?
        }
    };
    tensor_report(&tp, opts)
}

fn tensor_report(tp: &TensorProduct, opts: &Options) -> Result<Report, Failure> {
    let q = &tp.quiver.quiver;
    let reduced = check_reduced(q, &tp.rules).is_ok();
    let groebner = check_rules(q, &tp.order, &tp.rules, Execution::default()).is_groebner();
    let scheme = tp.scheme()?;
    let dimension = enumerate_nontips(&scheme, 0).total();
    let rules: Vec<(String, String)> =
        tp.rules.rules().iter().map(|r| (q.path_name(&r.tip), r.rhs.display(q).to_string())).collect();
    let success = reduced && groebner;
    if opts.json {
        let rules: Vec<Value> = rules.iter().map(|(t, rhs)| json!({"tip": t, "rhs": rhs})).collect();
        return report(
            pretty(json!({
                "scheme": scheme_json(&scheme),
                "rules": rules,
                "lifted_left": tp.lifted_left,
                "lifted_right": tp.lifted_right,
                "commutativity": tp.commutativity,
                "reduced": reduced,
                "groebner": groebner,
                "invariants": {"dimension": dimension},
            })),
            success,
        );
    }
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut out = format!(
        "vertices: {}\narrows: {}\nrules: {} ({} + {} lifted, {} commutativity)\n",
        q.vertex_count(),
        q.arrow_count(),
        tp.rules.len(),
        tp.lifted_left,
        tp.lifted_right,
        tp.commutativity
    );
    for (t, rhs) in &rules {
        writeln!(out, "  {t} -> {rhs}").unwrap();
    }
    writeln!(out, "reduced: {}", yes(reduced)).unwrap();
    writeln!(out, "GROEBNER: {}", yes(groebner)).unwrap();
    match dimension {
        Some(n) => write!(out, "dimension: {n}").unwrap(),
        None => write!(out, "dimension: infinite").unwrap(),
    }
    report(out, success)
}
