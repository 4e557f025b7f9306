//! Worked schemes used by tests, benches and the CLI's regression files.
//! Arrow precedence is declaration order, first declared greatest.

use crate::coefficients::{int, Rational};
use crate::order::LengthLex;
use crate::quiver::{Path, Quiver};
use crate::variety::{Point, QuadraticScheme, Specialization};

pub fn build(vertices: &[&str], arrows: &[(&str, &str, &str)], tips: &[&str]) -> QuadraticScheme {
    let quiver = Quiver::new(
        vertices.iter().copied(),
        arrows.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())),
    )
    .expect("fixture quiver");
    let order = LengthLex::declaration_order(&quiver);
    let tips = tips.iter().map(|t| quiver.parse_path(t).expect("fixture tip")).collect();
    QuadraticScheme::new(quiver, order, tips).expect("fixture scheme")
}

fn one_vertex(loops: &[&str], tips: &[&str]) -> QuadraticScheme {
    let arrows: Vec<(&str, &str, &str)> = loops.iter().map(|a| (*a, "o", "o")).collect();
    build(&["o"], &arrows, tips)
}

/// Seven vertices, eleven arrows `a > b > ... > l` (there is no `d`), and
/// `T = {af, ae, bg, bh, ek, gk, ik}`.
pub fn example_5_1() -> QuadraticScheme {
    build(
        &["v1", "v2", "v3", "v4", "v5", "v6", "v7"],
        &[
            ("a", "v1", "v2"),
            ("b", "v1", "v3"),
            ("c", "v1", "v4"),
            ("e", "v2", "v5"),
            ("f", "v2", "v6"),
            ("g", "v3", "v5"),
            ("h", "v3", "v6"),
            ("i", "v4", "v5"),
            ("j", "v4", "v6"),
            ("k", "v5", "v7"),
            ("l", "v6", "v7"),
        ],
        &["a.f", "a.e", "b.g", "b.h", "e.k", "g.k", "i.k"],
    )
}

/// Two loops `y > x`, `T = {yx}`: the quantum planes.
pub fn quantum_plane() -> QuadraticScheme {
    one_vertex(&["y", "x"], &["y.x"])
}

/// Two loops `y > x`, `T = {x^2, y^2, yx}`.
pub fn example_5_3() -> QuadraticScheme {
    one_vertex(&["y", "x"], &["x.x", "y.y", "y.x"])
}

/// Three loops `z > y > x`, `T = {zy, zx, yx}`.
pub fn example_5_4() -> QuadraticScheme {
    one_vertex(&["z", "y", "x"], &["z.y", "z.x", "y.x"])
}

pub fn all() -> Vec<QuadraticScheme> {
    vec![example_5_1(), quantum_plane(), example_5_3(), example_5_4()]
}

fn pair(s: &QuadraticScheme, t: &str, n: &str) -> (Path, Path) {
    let q = s.quiver();
    (q.parse_path(t).expect("tip"), q.parse_path(n).expect("nontip"))
}

/// `yx - lambda xy - gamma x^2` on [`quantum_plane`].
pub fn quantum_plane_point(s: &QuadraticScheme, lambda: Rational, gamma: Rational) -> Point {
    s.point([(pair(s, "y.x", "x.y"), lambda), (pair(s, "y.x", "x.x"), gamma)]).expect("quantum plane coordinates")
}

/// The commutative polynomial ring on [`example_5_4`].
pub fn commutative_point(s: &QuadraticScheme) -> Point {
    s.point([(pair(s, "z.y", "y.z"), int(1)), (pair(s, "z.x", "x.z"), int(1)), (pair(s, "y.x", "x.y"), int(1))])
        .expect("commutative coordinates")
}

/// Freezes ten of the thirteen coordinates of [`example_5_4`] so that the
/// distinguished algebra is the commutative polynomial ring. The free
/// coordinates are `(zy, xy)`, `(zx, xy)` and `(yx, x^2)`.
pub fn example_6_1_specialization(s: &QuadraticScheme) -> Specialization {
    let fixed = [
        ("z.y", "y.z", 1),
        ("z.y", "y.y", 0),
        ("z.y", "x.z", 0),
        ("z.y", "x.x", 0),
        ("z.x", "y.z", 0),
        ("z.x", "y.y", 0),
        ("z.x", "x.z", 1),
        ("z.x", "x.x", 0),
        ("y.x", "x.z", 0),
        ("y.x", "x.y", 1),
    ];
    s.specialization(fixed.iter().map(|(t, n, c)| (pair(s, t, n), int(*c)))).expect("specialization coordinates")
}
