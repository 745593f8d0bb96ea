use std::fmt;

use crate::linalg::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// Finite quiver. Loops and multiple arrows are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Labels must be unique and arrow endpoints must be vertex indices.
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, String> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(format!("duplicate vertex `{v}`"));
            }
        }
        for (i, a) in arrows.iter().enumerate() {
            if arrows[..i].iter().any(|b| b.label == a.label) {
                return Err(format!("duplicate arrow `{}`", a.label));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(format!("arrow `{}` has an undeclared endpoint", a.label));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].target == v)
    }

    pub fn opposite(&self) -> Quiver {
        let arrows =
            self.arrows.iter().map(|a| Arrow { label: a.label.clone(), source: a.target, target: a.source }).collect();
        Quiver { vertices: self.vertices.clone(), arrows }
    }

    /// Every vertex has at most one incoming and one outgoing arrow.
    pub fn is_nakayama_shaped(&self) -> bool {
        (0..self.vertex_count()).all(|v| self.arrows_from(v).count() <= 1 && self.arrows_into(v).count() <= 1)
    }
}

/// A path, stored in traversal order: `arrows[0]` is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn arrow(quiver: &Quiver, a: usize) -> Self {
        let arr = quiver.arrow(a);
        Path { source: arr.source, target: arr.target, arrows: vec![a] }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &Path) -> Path {
        assert_eq!(self.target, then.source, "paths do not compose");
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&then.arrows);
        Path { source: self.source, target: then.target, arrows }
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { source: self.target, target: self.source, arrows }
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    /// Composition order: `b*a` is `a` then `b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_trivial() {
            return write!(f, "e_{}", self.quiver.vertices()[self.path.source]);
        }
        let labels: Vec<&str> = self.path.arrows.iter().rev().map(|&a| self.quiver.arrow(a).label.as_str()).collect();
        write!(f, "{}", labels.join("*"))
    }
}

/// Linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn reversed(&self) -> Relation {
        Relation { terms: self.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect() }
    }
}
