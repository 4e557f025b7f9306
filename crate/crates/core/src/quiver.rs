//! Finite quivers and their paths: the monomial layer of the path algebra.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite directed multigraph. Vertices and arrows keep declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(name, source, target)` triples.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let mut quiver = Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
            vertex_index: HashMap::new(),
            arrow_index: HashMap::new(),
        };
        for v in vertices {
            quiver.add_vertex(v.into())?;
        }
        for (name, s, t) in arrows {
            let s = quiver.vertex(&s)?;
            let t = quiver.vertex(&t)?;
            quiver.add_arrow(name, s, t)?;
        }
        Ok(quiver)
    }

    pub fn empty() -> Self {
        Quiver { vertices: Vec::new(), arrows: Vec::new(), vertex_index: HashMap::new(), arrow_index: HashMap::new() }
    }

    pub fn add_vertex(&mut self, name: String) -> Result<VertexId> {
        if self.vertex_index.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        let id = VertexId(self.vertices.len());
        self.vertex_index.insert(name.clone(), id);
        self.vertices.push(name);
        Ok(id)
    }

    pub fn add_arrow(&mut self, name: String, source: VertexId, target: VertexId) -> Result<ArrowId> {
        if self.arrow_index.contains_key(&name) {
            return Err(Error::DuplicateArrow(name));
        }
        for v in [source, target] {
            if v.0 >= self.vertices.len() {
                return Err(Error::UnknownVertex(format!("#{}", v.0)));
            }
        }
        let id = ArrowId(self.arrows.len());
        self.arrow_index.insert(name.clone(), id);
        self.arrows.push(Arrow { name, source, target });
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrowId> {
        self.arrow_index.get(name).copied().ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn trivial(&self, v: VertexId) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn arrow_path(&self, a: ArrowId) -> Path {
        let arrow = self.arrow(a);
        Path { source: arrow.source, target: arrow.target, arrows: vec![a] }
    }

    /// Builds the path `a1 a2 ... an`, checking that consecutive arrows compose.
    pub fn path(&self, arrows: &[ArrowId]) -> Result<Path> {
        let (first, rest) = arrows.split_first().ok_or_else(|| Error::NonComposable("empty arrow sequence".into()))?;
        let mut target = self.arrow(*first).target;
        for a in rest {
            let arrow = self.arrow(*a);
            if arrow.source != target {
                let names: Vec<_> = arrows.iter().map(|a| self.arrow(*a).name.as_str()).collect();
                return Err(Error::NonComposable(names.join(".")));
            }
            target = arrow.target;
        }
        Ok(Path { source: self.arrow(*first).source, target, arrows: arrows.to_vec() })
    }

    /// Parses a dot-joined arrow word such as `a.b.c`, or a vertex name for a
    /// trivial path.
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        if !text.contains('.') {
            if let Ok(v) = self.vertex(text) {
                if self.arrow_id(text).is_err() {
                    return Ok(self.trivial(v));
                }
            }
        }
        let ids = text.split('.').map(|name| self.arrow_id(name)).collect::<Result<Vec<_>>>()?;
        self.path(&ids)
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return self.vertices[p.source.0].clone();
        }
        let names: Vec<&str> = p.arrows.iter().map(|a| self.arrows[a.0].name.as_str()).collect();
        names.join(".")
    }

    pub fn display<'a>(&'a self, p: &'a Path) -> PathDisplay<'a> {
        PathDisplay { quiver: self, path: p }
    }
}

pub struct PathDisplay<'a> {
    quiver: &'a Quiver,
    path: &'a Path,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.quiver.path_name(self.path))
    }
}

/// A path in a quiver: a trivial path at a vertex or a composable arrow word.
///
/// The derived `Ord` is structural and only used for map keys; admissible
/// comparisons live in [`crate::order`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    /// Same as [`Path::is_trivial`]: no arrows.
    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `pq` when `target(p) = source(q)`, `None` otherwise.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.arrows.len() + other.arrows.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, target: other.target, arrows })
    }

    pub fn is_parallel(&self, other: &Path) -> bool {
        self.source == other.source && self.target == other.target
    }

    /// The subpath covering arrows `start..end`. A trivial result sits at the
    /// vertex between the two halves.
    pub fn subpath(&self, quiver: &Quiver, start: usize, end: usize) -> Path {
        debug_assert!(start <= end && end <= self.arrows.len());
        if start == end {
            let v = if start == 0 { self.source } else { quiver.arrow(self.arrows[start - 1]).target };
            return quiver.trivial(v);
        }
        Path {
            source: quiver.arrow(self.arrows[start]).source,
            target: quiver.arrow(self.arrows[end - 1]).target,
            arrows: self.arrows[start..end].to_vec(),
        }
    }

    /// Every factorization `self = q · t · r`, ordered by start index.
    pub fn find_subpath_occurrences(&self, quiver: &Quiver, t: &Path) -> Vec<(Path, Path)> {
        let k = t.arrows.len();
        if k == 0 || k > self.arrows.len() {
            return Vec::new();
        }
        self.arrows
            .windows(k)
            .enumerate()
            .filter(|(_, w)| *w == t.arrows.as_slice())
            .map(|(i, _)| (self.subpath(quiver, 0, i), self.subpath(quiver, i + k, self.arrows.len())))
            .collect()
    }

    pub fn contains(&self, t: &Path) -> bool {
        let k = t.arrows.len();
        k > 0 && self.arrows.windows(k).any(|w| w == t.arrows.as_slice())
    }

    /// Builds `q · middle · r` from raw parts; callers guarantee composability.
    pub(crate) fn splice(
        prefix: &[ArrowId],
        middle: &Path,
        suffix: &[ArrowId],
        source: VertexId,
        target: VertexId,
    ) -> Path {
        let mut arrows = Vec::with_capacity(prefix.len() + middle.arrows.len() + suffix.len());
        arrows.extend_from_slice(prefix);
        arrows.extend_from_slice(&middle.arrows);
        arrows.extend_from_slice(suffix);
        Path { source, target, arrows }
    }

    pub(crate) fn from_parts(source: VertexId, target: VertexId, arrows: Vec<ArrowId>) -> Path {
        Path { source, target, arrows }
    }
}
