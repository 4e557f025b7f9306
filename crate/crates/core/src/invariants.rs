//! Invariants shared by every algebra of a variety: they depend only on the
//! tip set, so they are computed on the monomial algebra.
//!
//! Two automata on the arrow set drive everything here. The nontip automaton
//! has an edge `a -> b` when `ab` is a length-2 nontip; its walks are the
//! nontip paths of length at least one. The tip-chain automaton has an edge
//! `a -> b` when `ab` is a tip; its walks are the chains `T^n` whose counts
//! give the Betti numbers of the simple modules.
//!
//! Injective dimensions are read off the opposite scheme, where they become
//! projective dimensions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::order::AdmissibleOrder;
use crate::quiver::{ArrowId, Path, Quiver, VertexId};
use crate::variety::QuadraticScheme;

/// Either a finite number or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => f.write_str("infinite"),
        }
    }
}

/// Successor lists over arrows.
struct Automaton {
    next: Vec<Vec<ArrowId>>,
}

impl Automaton {
    fn nontips(scheme: &QuadraticScheme) -> Self {
        Self::build(scheme.quiver(), |p| !scheme.is_tip(p))
    }

    fn tip_chains(scheme: &QuadraticScheme) -> Self {
        Self::build(scheme.quiver(), |p| scheme.is_tip(p))
    }

    fn build<F: Fn(&Path) -> bool>(quiver: &Quiver, keep: F) -> Self {
        let next = quiver
            .arrow_ids()
            .map(|a| {
                quiver
                    .arrow_ids()
                    .filter(|b| quiver.arrow(a).target == quiver.arrow(*b).source)
                    .filter(|b| keep(&quiver.path(&[a, *b]).expect("composable")))
                    .collect()
            })
            .collect();
        Automaton { next }
    }

    fn len(&self) -> usize {
        self.next.len()
    }

    /// Arrows lying on or leading into a cycle, by iterative colouring.
    fn reaches_cycle(&self) -> Vec<bool> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.len();
        let mut mark = vec![Mark::New; n];
        let mut cyclic = vec![false; n];
        for root in 0..n {
            if mark[root] != Mark::New {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            mark[root] = Mark::Active;
            while let Some(&mut (a, ref mut i)) = stack.last_mut() {
                if let Some(b) = self.next[a].get(*i).map(|b| b.0) {
                    *i += 1;
                    match mark[b] {
                        Mark::New => {
                            mark[b] = Mark::Active;
                            stack.push((b, 0));
                        }
                        Mark::Active => cyclic[a] = true,
                        Mark::Done => cyclic[a] |= cyclic[b],
                    }
                } else {
                    stack.pop();
                    mark[a] = Mark::Done;
                    if let Some(&(parent, _)) = stack.last() {
                        cyclic[parent] |= cyclic[a];
                    }
                }
            }
        }
        // a back edge only marks its source; propagate to every predecessor
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..n {
                if !cyclic[a] && self.next[a].iter().any(|b| cyclic[b.0]) {
                    cyclic[a] = true;
                    changed = true;
                }
            }
        }
        cyclic
    }

    fn is_acyclic(&self) -> bool {
        !self.reaches_cycle().iter().any(|c| *c)
    }

    /// Number of arrows on the longest walk starting at each arrow; `None`
    /// for arrows that reach a cycle.
    fn longest_walks(&self) -> Vec<Option<usize>> {
        let cyclic = self.reaches_cycle();
        let mut memo: Vec<Option<usize>> = vec![None; self.len()];
        // walks from an arrow that reaches no cycle never meet one
        fn visit(a: usize, auto: &Automaton, memo: &mut Vec<Option<usize>>) -> usize {
            if let Some(v) = memo[a] {
                return v;
            }
            let best = auto.next[a].iter().map(|b| visit(b.0, auto, memo)).max().unwrap_or(0);
            memo[a] = Some(best + 1);
            best + 1
        }
        (0..self.len()).map(|a| (!cyclic[a]).then(|| visit(a, self, &mut memo))).collect()
    }

    /// Walks of exactly `k >= 1` arrows.
    fn walks(&self, quiver: &Quiver, k: usize) -> Vec<Path> {
        let mut frontier: Vec<Vec<ArrowId>> = quiver.arrow_ids().map(|a| vec![a]).collect();
        for _ in 1..k {
            frontier = frontier
                .into_iter()
                .flat_map(|w| {
                    let last = *w.last().expect("nonempty");
                    self.next[last.0].iter().map(move |b| {
                        let mut w2 = w.clone();
                        w2.push(*b);
                        w2
                    })
                })
                .collect();
        }
        frontier.into_iter().map(|w| quiver.path(&w).expect("walks compose")).collect()
    }

    /// `counts[v][w]`: walks of exactly `k` arrows from vertex `v` to `w`.
    fn walk_counts(&self, quiver: &Quiver, k: usize) -> Vec<Vec<u64>> {
        let nv = quiver.vertex_count();
        let mut out = vec![vec![0u64; nv]; nv];
        if k == 0 {
            for (v, row) in out.iter_mut().enumerate() {
                row[v] = 1;
            }
            return out;
        }
        // ending[a][v]: walks of the current length ending in arrow a, from v
        let mut ending: Vec<Vec<u64>> = quiver
            .arrow_ids()
            .map(|a| {
                let mut row = vec![0u64; nv];
                row[quiver.arrow(a).source.0] = 1;
                row
            })
            .collect();
        for _ in 1..k {
            let mut next = vec![vec![0u64; nv]; self.len()];
            for (a, succ) in self.next.iter().enumerate() {
                for b in succ {
                    for v in 0..nv {
                        next[b.0][v] = next[b.0][v].checked_add(ending[a][v]).expect("walk count overflow");
                    }
                }
            }
            ending = next;
        }
        for (a, row) in ending.iter().enumerate() {
            let w = quiver.arrow(ArrowId(a)).target.0;
            for v in 0..nv {
                out[v][w] = out[v][w].checked_add(row[v]).expect("walk count overflow");
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NontipBasis {
    /// `by_length[k]` lists the nontip paths of length `k`, greatest first.
    pub by_length: Vec<Vec<Path>>,
    pub finite: bool,
}

impl NontipBasis {
    /// `|N|` when finite.
    pub fn total(&self) -> Option<usize> {
        self.finite.then(|| self.by_length.iter().map(Vec::len).sum())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Path> {
        self.by_length.iter().flatten()
    }
}

/// Nontip paths up to `max_length`, or all of them when there are finitely
/// many.
pub fn enumerate_nontips(scheme: &QuadraticScheme, max_length: usize) -> NontipBasis {
    let quiver = scheme.quiver();
    let auto = Automaton::nontips(scheme);
    let finite = auto.is_acyclic();
    let mut trivial: Vec<Path> = quiver.vertex_ids().map(|v| quiver.trivial(v)).collect();
    trivial.sort_by(|a, b| scheme.order().compare(b, a));
    let mut by_length = vec![trivial];
    let mut k = 1;
    while quiver.arrow_count() > 0 && (finite || k <= max_length) {
        let mut level = auto.walks(quiver, k);
        if level.is_empty() {
            break;
        }
        level.sort_by(|a, b| scheme.order().compare(b, a));
        by_length.push(level);
        k += 1;
    }
    NontipBasis { by_length, finite }
}

pub fn is_finite_dimensional(scheme: &QuadraticScheme) -> bool {
    Automaton::nontips(scheme).is_acyclic()
}

/// `C[i][j] = |v_i N v_j|`, vertices in declaration order.
pub fn cartan_matrix(scheme: &QuadraticScheme) -> Result<Vec<Vec<u64>>> {
    let quiver = scheme.quiver();
    let auto = Automaton::nontips(scheme);
    if !auto.is_acyclic() {
        return Err(Error::InfiniteDimensional);
    }
    let nv = quiver.vertex_count();
    let mut c = vec![vec![0u64; nv]; nv];
    for k in 0..=quiver.arrow_count() {
        let counts = auto.walk_counts(quiver, k);
        let mut any = false;
        for v in 0..nv {
            for w in 0..nv {
                c[v][w] += counts[v][w];
                any |= counts[v][w] > 0;
            }
        }
        if !any {
            break;
        }
    }
    Ok(c)
}

/// Exact determinant by fraction-free elimination.
pub fn determinant(matrix: &[Vec<u64>]) -> BigInt {
    let n = matrix.len();
    let mut m: Vec<Vec<BigInt>> = matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if pivot != k {
            m.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}

/// The chains `T^n`: trivial paths for `n = 0`, arrows for `n = 1`, and arrow
/// words whose consecutive pairs are all tips beyond that. Grouped by
/// endpoints, each group greatest first.
pub fn resolution_tips(scheme: &QuadraticScheme, n: usize) -> BTreeMap<(VertexId, VertexId), Vec<Path>> {
    let quiver = scheme.quiver();
    let paths: Vec<Path> = if n == 0 {
        quiver.vertex_ids().map(|v| quiver.trivial(v)).collect()
    } else {
        Automaton::tip_chains(scheme).walks(quiver, n)
    };
    let mut grouped: BTreeMap<(VertexId, VertexId), Vec<Path>> = BTreeMap::new();
    for p in paths {
        grouped.entry((p.source(), p.target())).or_default().push(p);
    }
    for group in grouped.values_mut() {
        group.sort_by(|a, b| scheme.order().compare(b, a));
    }
    grouped
}

/// `dim Ext^n(S_v, S_w) = |v T^n w|`.
pub fn betti(scheme: &QuadraticScheme, v: VertexId, w: VertexId, n: usize) -> u64 {
    Automaton::tip_chains(scheme).walk_counts(scheme.quiver(), n)[v.0][w.0]
}

/// The full table `betti_table(s, n)[v][w]`.
pub fn betti_table(scheme: &QuadraticScheme, n: usize) -> Vec<Vec<u64>> {
    Automaton::tip_chains(scheme).walk_counts(scheme.quiver(), n)
}

/// Largest `n` with `v T^n` nonempty.
pub fn projective_dimension(scheme: &QuadraticScheme, v: VertexId) -> Dimension {
    let quiver = scheme.quiver();
    let longest = Automaton::tip_chains(scheme).longest_walks();
    let mut best = Dimension::Finite(0);
    for a in quiver.arrow_ids().filter(|a| quiver.arrow(*a).source == v) {
        let d = longest[a.0].map_or(Dimension::Infinite, Dimension::Finite);
        best = best.max(d);
    }
    best
}

/// Injective dimension of the simple at `v`, computed as the projective
/// dimension over the opposite scheme.
pub fn injective_dimension(scheme: &QuadraticScheme, v: VertexId) -> Dimension {
    let op = crate::constructions::opposite_scheme(scheme);
    projective_dimension(&op, v)
}

/// Requires finitely many nontips.
pub fn global_dimension(scheme: &QuadraticScheme) -> Result<Dimension> {
    if !is_finite_dimensional(scheme) {
        return Err(Error::InfiniteDimensional);
    }
    let quiver = scheme.quiver();
    Ok(quiver.vertex_ids().map(|v| projective_dimension(scheme, v)).max().unwrap_or(Dimension::Finite(0)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionShape {
    /// `betti[n][v][w]` for `n = 0..=max_degree`.
    pub betti: Vec<Vec<Vec<u64>>>,
    pub projective: Vec<Dimension>,
    pub injective: Vec<Dimension>,
    /// `None` when the algebra is infinite dimensional.
    pub global: Option<Dimension>,
}

pub fn resolution_shape(scheme: &QuadraticScheme, max_degree: usize) -> ResolutionShape {
    let quiver = scheme.quiver();
    let auto = Automaton::tip_chains(scheme);
    let betti = (0..=max_degree).map(|n| auto.walk_counts(quiver, n)).collect();
    let op = crate::constructions::opposite_scheme(scheme);
    ResolutionShape {
        betti,
        projective: quiver.vertex_ids().map(|v| projective_dimension(scheme, v)).collect(),
        injective: quiver.vertex_ids().map(|v| projective_dimension(&op, v)).collect(),
        global: global_dimension(scheme).ok(),
    }
}

/// Sum of the Cartan matrix entries; `None` if infinite.
pub fn dimension(scheme: &QuadraticScheme) -> Option<u64> {
    cartan_matrix(scheme).ok().map(|c| c.iter().flatten().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_traits::Signed;

    fn names(s: &QuadraticScheme, ps: &[Path]) -> Vec<String> {
        ps.iter().map(|p| s.quiver().path_name(p)).collect()
    }

    #[test]
    fn example_5_3_basis() {
        let s = fixtures::example_5_3();
        let n = enumerate_nontips(&s, 0);
        assert!(n.finite);
        assert_eq!(n.total(), Some(4));
        let all: Vec<Path> = n.iter().cloned().collect();
        assert_eq!(names(&s, &all), ["o", "y", "x", "x.y"]);
        assert_eq!(cartan_matrix(&s).unwrap(), vec![vec![4]]);
    }

    #[test]
    fn quantum_plane_is_infinite() {
        let s = fixtures::quantum_plane();
        let n = enumerate_nontips(&s, 3);
        assert!(!n.finite);
        assert_eq!(n.total(), None);
        assert_eq!(n.by_length.iter().map(Vec::len).collect::<Vec<_>>(), [1, 2, 3, 4]);
        assert_eq!(cartan_matrix(&s), Err(Error::InfiniteDimensional));
        assert_eq!(global_dimension(&s), Err(Error::InfiniteDimensional));
    }

    #[test]
    fn quantum_plane_resolution() {
        let s = fixtures::quantum_plane();
        let o = VertexId(0);
        let bettis: Vec<u64> = (0..5).map(|n| betti(&s, o, o, n)).collect();
        assert_eq!(bettis, [1, 2, 1, 0, 0]);
        assert_eq!(names(&s, &resolution_tips(&s, 2)[&(o, o)]), ["y.x"]);
        assert!(resolution_tips(&s, 3).is_empty());
        assert_eq!(projective_dimension(&s, o), Dimension::Finite(2));
    }

    #[test]
    fn single_loop_truncated() {
        let s = fixtures::build(&["o"], &[("a", "o", "o")], &["a.a"]);
        assert_eq!(cartan_matrix(&s).unwrap(), vec![vec![2]]);
        assert_eq!(global_dimension(&s).unwrap(), Dimension::Infinite);
    }

    #[test]
    fn example_5_3_global_dimension_is_infinite() {
        let s = fixtures::example_5_3();
        assert_eq!(global_dimension(&s).unwrap(), Dimension::Infinite);
    }

    #[test]
    fn hereditary_cases() {
        let s = fixtures::build(&["u", "v"], &[("a", "u", "v")], &[]);
        assert_eq!(global_dimension(&s).unwrap(), Dimension::Finite(1));
        let s = fixtures::build(&["u"], &[], &[]);
        assert_eq!(global_dimension(&s).unwrap(), Dimension::Finite(0));
        assert_eq!(cartan_matrix(&s).unwrap(), vec![vec![1]]);
    }

    #[test]
    fn example_5_4_chains() {
        let s = fixtures::example_5_4();
        let o = VertexId(0);
        let bettis: Vec<u64> = (0..5).map(|n| betti(&s, o, o, n)).collect();
        assert_eq!(bettis, [1, 3, 3, 1, 0]);
        assert_eq!(names(&s, &resolution_tips(&s, 3)[&(o, o)]), ["z.y.x"]);
    }

    #[test]
    fn example_5_1_invariants() {
        let s = fixtures::example_5_1();
        assert_eq!(global_dimension(&s).unwrap(), Dimension::Finite(3));
        assert!(!resolution_tips(&s, 3).is_empty());
        assert!(resolution_tips(&s, 4).is_empty());
        let c = cartan_matrix(&s).unwrap();
        assert_eq!(c.len(), 7);
        assert!(determinant(&c).abs().is_one());
        let n = enumerate_nontips(&s, 0);
        assert_eq!(n.total(), Some(c.iter().flatten().sum::<u64>() as usize));
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(determinant(&[vec![2, 1], vec![1, 1]]), BigInt::from(1));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(determinant(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]), BigInt::from(0));
        assert_eq!(determinant(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]), BigInt::from(6));
    }

    #[test]
    fn low_degree_betti_numbers() {
        for s in fixtures::all() {
            let q = s.quiver();
            for v in q.vertex_ids() {
                for w in q.vertex_ids() {
                    assert_eq!(betti(&s, v, w, 0), u64::from(v == w));
                    let arrows = q.arrows().iter().filter(|a| a.source == v && a.target == w).count() as u64;
                    assert_eq!(betti(&s, v, w, 1), arrows);
                    let tips = s.tips().iter().filter(|t| t.source() == v && t.target() == w).count() as u64;
                    assert_eq!(betti(&s, v, w, 2), tips);
                }
            }
        }
    }
}
