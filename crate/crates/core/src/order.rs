//! Length-admissible well-orders on paths.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Path, Quiver, VertexId};

/// A length-admissible order on the paths of one quiver.
///
/// Implementations expose a sort key so that ordered collections can be
/// keyed directly by it.
pub trait AdmissibleOrder {
    type Key: Ord + Clone + Send + Sync;

    fn key(&self, p: &Path) -> Self::Key;

    fn compare(&self, p: &Path, q: &Path) -> Ordering {
        self.key(p).cmp(&self.key(q))
    }
}

/// Which end of an arrow word is most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Length-left-lexicographic: first differing arrow from the left decides.
    Left,
    /// The reversed comparison `p^op > q^op iff p > q`, used on opposite
    /// quivers. Words are compared from the right.
    Reversed,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LexKey {
    len: usize,
    ranks: Vec<u32>,
}

/// Length-lexicographic order determined by arrow and vertex precedences.
/// A larger rank means a greater element; every vertex is below every arrow.
///
/// A block order splits the arrows into two families. Words of equal length
/// compare by the number of second-family letters, then by the word of
/// second-family letters, then by the word of first-family letters (each in
/// its own direction), then by the pattern of families, and finally by the
/// end vertex the reading starts from. Restricted to words in one family it
/// is that family's length-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LengthLex {
    arrow_rank: Vec<u32>,
    vertex_rank: Vec<u32>,
    direction: Direction,
    blocks: Option<Blocks>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Blocks {
    second: Vec<bool>,
    directions: [Direction; 2],
}

impl Direction {
    fn flipped(self) -> Self {
        match self {
            Direction::Left => Direction::Reversed,
            Direction::Reversed => Direction::Left,
        }
    }
}

impl LengthLex {
    /// Declaration order on both vertices and arrows, first declared greatest.
    pub fn declaration_order(quiver: &Quiver) -> Self {
        let na = quiver.arrow_count() as u32;
        let nv = quiver.vertex_count() as u32;
        LengthLex {
            arrow_rank: (0..na).map(|i| na - i).collect(),
            vertex_rank: (0..nv).map(|i| nv - i).collect(),
            direction: Direction::Left,
            blocks: None,
        }
    }

    /// Arrows listed greatest first; must be a permutation of all arrows.
    pub fn with_arrow_precedence(quiver: &Quiver, greatest_first: &[ArrowId]) -> Result<Self> {
        let na = quiver.arrow_count();
        if greatest_first.len() != na {
            return Err(Error::BadPrecedence);
        }
        let mut arrow_rank = vec![0u32; na];
        for (i, a) in greatest_first.iter().enumerate() {
            if a.0 >= na || arrow_rank[a.0] != 0 {
                return Err(Error::BadPrecedence);
            }
            arrow_rank[a.0] = (na - i) as u32;
        }
        let mut order = Self::declaration_order(quiver);
        order.arrow_rank = arrow_rank;
        Ok(order)
    }

    /// Raw ranks (larger is greater). Ranks must be pairwise distinct.
    pub fn from_ranks(arrow_rank: Vec<u32>, vertex_rank: Vec<u32>, direction: Direction) -> Self {
        LengthLex { arrow_rank, vertex_rank, direction, blocks: None }
    }

    /// A block order. `second[a]` puts arrow `a` in the second family; ranks
    /// need only be distinct within a family. `directions` gives the reading
    /// direction of the first and second family.
    pub fn block(arrow_rank: Vec<u32>, vertex_rank: Vec<u32>, second: Vec<bool>, directions: [Direction; 2]) -> Self {
        LengthLex { arrow_rank, vertex_rank, direction: Direction::Left, blocks: Some(Blocks { second, directions }) }
    }

    /// Reading direction; for a block order, the direction of the family
    /// pattern.
    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn is_block(&self) -> bool {
        self.blocks.is_some()
    }

    pub fn arrow_rank(&self, a: ArrowId) -> u32 {
        self.arrow_rank[a.0]
    }

    pub fn vertex_rank(&self, v: VertexId) -> u32 {
        self.vertex_rank[v.0]
    }

    /// Arrows sorted greatest first.
    pub fn arrow_precedence(&self) -> Vec<ArrowId> {
        let mut ids: Vec<ArrowId> = (0..self.arrow_rank.len()).map(ArrowId).collect();
        ids.sort_by(|a, b| self.arrow_rank[b.0].cmp(&self.arrow_rank[a.0]));
        ids
    }

    pub fn vertex_precedence(&self) -> Vec<VertexId> {
        let mut ids: Vec<VertexId> = (0..self.vertex_rank.len()).map(VertexId).collect();
        ids.sort_by(|a, b| self.vertex_rank[b.0].cmp(&self.vertex_rank[a.0]));
        ids
    }

    /// The order with the opposite direction and the same precedences, so
    /// that `p^op > q^op` exactly when `p > q`.
    pub fn reversed(&self) -> Self {
        LengthLex {
            arrow_rank: self.arrow_rank.clone(),
            vertex_rank: self.vertex_rank.clone(),
            direction: self.direction.flipped(),
            blocks: self.blocks.as_ref().map(|b| Blocks {
                second: b.second.clone(),
                directions: [b.directions[0].flipped(), b.directions[1].flipped()],
            }),
        }
    }

    fn block_key(&self, blocks: &Blocks, p: &Path) -> LexKey {
        let read = |d: Direction| -> Vec<ArrowId> {
            match d {
                Direction::Left => p.arrows().to_vec(),
                Direction::Reversed => p.arrows().iter().rev().copied().collect(),
            }
        };
        let family = |d: Direction, second: bool| {
            read(d).into_iter().filter(move |a| blocks.second[a.0] == second).map(|a| self.arrow_rank[a.0])
        };
        let count = p.arrows().iter().filter(|a| blocks.second[a.0]).count() as u32;
        let mut ranks = vec![count];
        ranks.extend(family(blocks.directions[1], true));
        ranks.extend(family(blocks.directions[0], false));
        ranks.extend(read(self.direction).iter().map(|a| u32::from(blocks.second[a.0])));
        let anchor = match self.direction {
            Direction::Left => p.source(),
            Direction::Reversed => p.target(),
        };
        ranks.push(self.vertex_rank[anchor.0]);
        LexKey { len: p.len(), ranks }
    }
}

impl AdmissibleOrder for LengthLex {
    type Key = LexKey;

    fn key(&self, p: &Path) -> LexKey {
        if p.is_trivial() {
            return LexKey { len: 0, ranks: vec![self.vertex_rank[p.source().0]] };
        }
        if let Some(blocks) = &self.blocks {
            return self.block_key(blocks, p);
        }
        let ranks = match self.direction {
            Direction::Left => p.arrows().iter().map(|a| self.arrow_rank[a.0]).collect(),
            Direction::Reversed => p.arrows().iter().rev().map(|a| self.arrow_rank[a.0]).collect(),
        };
        LexKey { len: p.len(), ranks }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loops(names: &[&str]) -> Quiver {
        Quiver::new(["o"], names.iter().map(|n| (n.to_string(), "o".to_string(), "o".to_string()))).unwrap()
    }

    #[test]
    fn quantum_plane_length_two_chain() {
        let q = loops(&["y", "x"]);
        let o = LengthLex::declaration_order(&q);
        let p = |s: &str| q.parse_path(s).unwrap();
        assert_eq!(o.compare(&p("y.x"), &p("x.y")), Ordering::Greater);
        assert_eq!(o.compare(&p("y.y"), &p("y.x")), Ordering::Greater);
        assert_eq!(o.compare(&p("x.y"), &p("x.x")), Ordering::Greater);
        assert_eq!(o.compare(&p("x.x.x"), &p("y.y")), Ordering::Greater);
        assert_eq!(o.compare(&p("y.x"), &p("y.x")), Ordering::Equal);
    }

    #[test]
    fn vertices_below_arrows() {
        let q = loops(&["x"]);
        let o = LengthLex::declaration_order(&q);
        let e = q.trivial(VertexId(0));
        assert_eq!(o.compare(&q.parse_path("x").unwrap(), &e), Ordering::Greater);
    }

    #[test]
    fn precedence_override_and_reversal() {
        let q = loops(&["x", "y"]);
        let y = q.arrow_id("y").unwrap();
        let x = q.arrow_id("x").unwrap();
        let o = LengthLex::with_arrow_precedence(&q, &[y, x]).unwrap();
        let p = |s: &str| q.parse_path(s).unwrap();
        assert_eq!(o.compare(&p("y.x"), &p("x.y")), Ordering::Greater);
        let r = o.reversed();
        assert_eq!(r.compare(&p("x.y"), &p("y.x")), Ordering::Greater);
        assert_eq!(r.reversed(), o);
        assert!(LengthLex::with_arrow_precedence(&q, &[y, y]).is_err());
        assert!(LengthLex::with_arrow_precedence(&q, &[y]).is_err());
    }

    #[test]
    fn block_order_restricts_to_each_family() {
        // loops y > x in the first family, b > a in the second, the second
        // read right to left
        let q = loops(&["y", "x", "b", "a"]);
        let o = LengthLex::block(
            vec![2, 1, 2, 1],
            vec![1],
            vec![false, false, true, true],
            [Direction::Left, Direction::Reversed],
        );
        let p = |s: &str| q.parse_path(s).unwrap();
        assert_eq!(o.compare(&p("y.x"), &p("x.y")), Ordering::Greater);
        assert_eq!(o.compare(&p("a.b"), &p("b.a")), Ordering::Greater);
        // more second-family letters win
        assert_eq!(o.compare(&p("a.x"), &p("y.y")), Ordering::Greater);
        // same letters: the second family first wins
        assert_eq!(o.compare(&p("b.y"), &p("y.b")), Ordering::Greater);
        let r = o.reversed();
        assert_eq!(r.compare(&p("b.y"), &p("y.b")), Ordering::Less);
        assert_eq!(r.reversed(), o);
    }
}
