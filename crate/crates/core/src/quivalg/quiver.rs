use std::cmp::Ordering;

use crate::error::{structure, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub deg: i32,
}

/// Graded quiver. Vertices and arrows are addressed by index; labels and
/// names are unique.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut q = Quiver::default();
        for v in vertices {
            q.add_vertex(v)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize> {
        let label = label.into();
        if self.vertices.contains(&label) {
            return Err(structure(format!("duplicate vertex `{label}`")));
        }
        self.vertices.push(label);
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: impl Into<String>, src: &str, tgt: &str, deg: i32) -> Result<usize> {
        let name = name.into();
        if self.arrow_index(&name).is_some() {
            return Err(structure(format!("duplicate arrow `{name}`")));
        }
        if self.vertex_index(&name).is_some() || name.starts_with('e') && self.vertex_index(&name[1..]).is_some() {
            return Err(structure(format!("arrow name `{name}` clashes with a vertex or idempotent")));
        }
        let src = self.require_vertex(src)?;
        let tgt = self.require_vertex(tgt)?;
        self.arrows.push(Arrow { name, src, tgt, deg });
        Ok(self.arrows.len() - 1)
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

    pub fn require_vertex(&self, label: &str) -> Result<usize> {
        self.vertex_index(label)
            .ok_or_else(|| structure(format!("unknown vertex `{label}`")))
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn require_arrow(&self, name: &str) -> Result<usize> {
        self.arrow_index(name)
            .ok_or_else(|| structure(format!("unknown arrow `{name}`")))
    }

    /// Word from arrow names in written order (leftmost is traversed last).
    pub fn word(&self, names: &[&str]) -> Result<PathWord> {
        let arrows = names.iter().map(|n| self.require_arrow(n)).collect::<Result<Vec<_>>>()?;
        PathWord::from_arrows(self, arrows)
    }

    pub fn lazy(&self, label: &str) -> Result<PathWord> {
        Ok(PathWord::lazy(self.require_vertex(label)?))
    }

    pub fn word_degree(&self, w: &PathWord) -> i32 {
        w.arrows.iter().map(|&a| self.arrows[a].deg).sum()
    }

    pub fn fmt_word(&self, w: &PathWord) -> String {
        if w.arrows.is_empty() {
            format!("e{}", self.vertices[w.src])
        } else {
            w.arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A path, arrows listed in written order and composed right to left: for
/// `[x, y]` the path runs through `y` first, so `src(x) == tgt(y)`. The
/// empty arrow list is the lazy path at `src == tgt`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWord {
    arrows: Vec<usize>,
    src: usize,
    tgt: usize,
}

impl PathWord {
    pub fn lazy(v: usize) -> Self {
        PathWord { arrows: Vec::new(), src: v, tgt: v }
    }

    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let Some(&first) = arrows.first() else {
            return Err(structure("empty arrow list; use a lazy path"));
        };
        for pair in arrows.windows(2) {
            let (x, y) = (q.arrow(pair[0]), q.arrow(pair[1]));
            if x.src != y.tgt {
                return Err(structure(format!("`{}` cannot follow `{}`", x.name, y.name)));
            }
        }
        let last = *arrows.last().unwrap();
        Ok(PathWord { src: q.arrow(last).src, tgt: q.arrow(first).tgt, arrows })
    }

    pub(crate) fn from_parts(arrows: Vec<usize>, src: usize, tgt: usize) -> Self {
        PathWord { arrows, src, tgt }
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self * other`, i.e. `other` followed by `self`; `None` if the
    /// endpoints do not meet.
    pub fn compose(&self, other: &PathWord) -> Option<PathWord> {
        if self.src != other.tgt {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(PathWord { arrows, src: other.src, tgt: self.tgt })
    }
}

impl Ord for PathWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.src.cmp(&other.src))
            .then_with(|| self.tgt.cmp(&other.tgt))
    }
}

impl PartialOrd for PathWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
