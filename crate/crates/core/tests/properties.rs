//! Structural properties: order axioms, combinatorial invariants against
//! brute force, normal forms, and the opposite construction.

mod common;

use common::{
    brute_chain_counts, brute_nontip_counts, check_order_axioms, random_path, random_point, random_scheme, rng,
};
use koszul_core::coefficients::int;
use koszul_core::constructions::{opposite_point, opposite_scheme, tensor_scheme};
use koszul_core::element::{complete_reduce, normal_form};
use koszul_core::fixtures;
use koszul_core::invariants::{betti, cartan_matrix, enumerate_nontips, is_finite_dimensional, resolution_tips};
use koszul_core::order::AdmissibleOrder;
use koszul_core::variety::{buchberger_check, is_member, variety_ideal, Point};
use koszul_core::{Element, Path, QuadraticScheme, Quiver, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const TRIPLES: usize = 10_000;

fn axioms_hold<O: AdmissibleOrder>(quiver: &Quiver, order: &O, r: &mut ChaCha8Rng) {
    for _ in 0..TRIPLES {
        let p = random_path(quiver, r, 5);
        let q = random_path(quiver, r, 5);
        let s = random_path(quiver, r, 3);
        if let Err(e) = check_order_axioms(order, &p, &q, &s) {
            panic!("{e}: {} {} {}", quiver.path_name(&p), quiver.path_name(&q), quiver.path_name(&s));
        }
    }
}

fn schemes(seed: u64, random: usize) -> Vec<QuadraticScheme> {
    let mut r = rng(seed);
    let mut out = fixtures::all();
    out.extend((0..random).map(|_| random_scheme(&mut r)));
    out
}

#[test]
fn length_lex_orders_are_admissible() {
    let mut r = rng(21);
    for s in schemes(22, 10) {
        axioms_hold(s.quiver(), s.order(), &mut r);
        let op = opposite_scheme(&s);
        axioms_hold(op.quiver(), op.order(), &mut r);
    }
}

#[test]
fn tensor_orders_are_admissible() {
    let mut r = rng(23);
    let mut pairs = vec![
        (fixtures::example_5_3(), fixtures::example_5_3()),
        (fixtures::quantum_plane(), fixtures::example_5_1()),
        (fixtures::example_5_1(), fixtures::quantum_plane()),
    ];
    let mut sr = rng(24);
    for _ in 0..4 {
        pairs.push((random_scheme(&mut sr), random_scheme(&mut sr)));
    }
    // an opposite factor reads right to left, which calls for a block order
    for s in [fixtures::quantum_plane(), random_scheme(&mut sr), random_scheme(&mut sr)] {
        let op = opposite_scheme(&s);
        pairs.push((s.clone(), op.clone()));
        pairs.push((op, s));
    }
    for (a, b) in pairs {
        let tp = tensor_scheme(&a, &a.zero_point(), &b, &b.zero_point()).unwrap();
        axioms_hold(&tp.quiver.quiver, &tp.order, &mut r);
        // and the opposite of a tensor order
        let op = opposite_scheme(&tp.scheme().unwrap());
        axioms_hold(op.quiver(), op.order(), &mut r);
    }
}

#[test]
fn tip_chains_match_brute_force() {
    for s in schemes(25, 50) {
        let expected = brute_chain_counts(&s, 6);
        for (n, count) in expected.iter().enumerate() {
            let chains: usize = resolution_tips(&s, n).values().map(Vec::len).sum();
            assert_eq!(chains, *count, "n={n}");
            let total: u64 = s
                .quiver()
                .vertex_ids()
                .flat_map(|v| s.quiver().vertex_ids().map(move |w| (v, w)))
                .map(|(v, w)| betti(&s, v, w, n))
                .sum();
            assert_eq!(total as usize, *count);
        }
    }
}

#[test]
fn low_betti_numbers() {
    for s in schemes(26, 30) {
        let q = s.quiver();
        for v in q.vertex_ids() {
            for w in q.vertex_ids() {
                let arrows = q.arrows().iter().filter(|a| a.source == v && a.target == w).count();
                assert_eq!(betti(&s, v, w, 1), arrows as u64);
                let tips = s.tips().iter().filter(|t| t.source() == v && t.target() == w).count();
                assert_eq!(betti(&s, v, w, 2), tips as u64);
            }
        }
    }
}

#[test]
fn finiteness_matches_brute_force() {
    let (mut finite, mut infinite) = (0, 0);
    for s in schemes(27, 60) {
        let q = s.quiver();
        // without a cycle of nontip transitions no arrow repeats in a
        // nontip, so some nontip of length |Q1| + 1 exists iff N is infinite
        let horizon = q.arrow_count() + 1;
        let counts = brute_nontip_counts(&s, horizon);
        let brute_finite = counts[horizon] == 0;
        assert_eq!(is_finite_dimensional(&s), brute_finite);
        let basis = enumerate_nontips(&s, horizon);
        let by_len: Vec<usize> = basis.by_length.iter().map(Vec::len).collect();
        assert_eq!(by_len[..], counts[..by_len.len()]);
        if brute_finite {
            finite += 1;
            let total: usize = counts.iter().sum();
            assert_eq!(basis.total(), Some(total));
            let c = cartan_matrix(&s).unwrap();
            assert_eq!(c.iter().flatten().sum::<u64>() as usize, total);
        } else {
            infinite += 1;
            assert!(cartan_matrix(&s).is_err());
        }
    }
    assert!(finite > 5 && infinite > 5, "finite={finite} infinite={infinite}");
}

fn random_element(quiver: &Quiver, r: &mut ChaCha8Rng, terms: usize, len: usize) -> Element<Rational> {
    Element::from_terms((0..terms).map(|_| (int(r.gen_range(-3..=3)), random_path(quiver, r, len))))
}

fn groebner_points() -> Vec<(QuadraticScheme, Point)> {
    let mut out = Vec::new();
    let qp = fixtures::quantum_plane();
    for (l, g) in [(1, 0), (-1, 0), (2, 3), (0, 1)] {
        let p = fixtures::quantum_plane_point(&qp, int(l), int(g));
        out.push((qp.clone(), p));
    }
    let e54 = fixtures::example_5_4();
    let p = fixtures::commutative_point(&e54);
    out.push((e54, p));
    for s in [fixtures::example_5_1(), fixtures::example_5_3()] {
        let p = s.zero_point();
        out.push((s, p));
    }
    let mut r = rng(28);
    while out.len() < 20 {
        let s = random_scheme(&mut r);
        let p = random_point(&s, &mut r, 0.7);
        if buchberger_check(&s, &p).unwrap().is_groebner() {
            out.push((s, p));
        }
    }
    out
}

#[test]
fn normal_forms_are_linear_modulo_groebner_bases() {
    let mut r = rng(29);
    for (s, p) in groebner_points() {
        let rules = s.rules_at(&p).unwrap();
        let nf = |x: &Element<Rational>| normal_form(x, &rules, s.order());
        for _ in 0..50 {
            let x = random_element(s.quiver(), &mut r, 4, 5);
            let y = random_element(s.quiver(), &mut r, 4, 5);
            assert_eq!(nf(&x.add(&y)), nf(&x).add(&nf(&y)));
            let c = int(r.gen_range(-3..=3));
            assert_eq!(nf(&x.scale(&c)), nf(&x).scale(&c));
            // the normal form is supported on nontips
            assert!(nf(&x).support().all(|q| s.is_nontip(q)));
        }
    }
}

#[test]
fn reduction_preserves_length() {
    let mut r = rng(30);
    for s in schemes(31, 20) {
        for _ in 0..10 {
            let p = random_point(&s, &mut r, 0.3);
            let rules = s.rules_at(&p).unwrap();
            for len in 0..5 {
                let paths: Vec<Path> =
                    (0..4).map(|_| random_path(s.quiver(), &mut r, len)).filter(|q| q.len() == len).collect();
                let x = Element::from_terms(paths.into_iter().map(|q| (int(1), q)));
                let reduced = complete_reduce(&x, &rules, s.order());
                assert!(reduced.support().all(|q| q.len() == len));
            }
        }
    }
}

#[test]
fn opposite_preserves_the_variety() {
    let mut r = rng(32);
    for s in schemes(33, 30) {
        let op = opposite_scheme(&s);
        assert_eq!(op.dimension(), s.dimension());
        let ideal = variety_ideal(&s);
        let op_ideal = variety_ideal(&op);
        for _ in 0..20 {
            let p = random_point(&s, &mut r, 0.5);
            let p_op = opposite_point(&s, &op, &p).unwrap();
            assert_eq!(is_member(&ideal, &p).unwrap(), is_member(&op_ideal, &p_op).unwrap());
        }
    }
}

#[test]
fn opposite_ideal_agrees_on_small_examples() {
    for s in [fixtures::quantum_plane(), fixtures::example_5_3()] {
        let op = opposite_scheme(&s);
        let a: Vec<_> = variety_ideal(&s).generator_polys().cloned().collect();
        let b: Vec<_> = variety_ideal(&op).generator_polys().cloned().collect();
        assert_eq!(a, b);
        assert!(a.is_empty());
    }
}
