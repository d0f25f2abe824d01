//! Quivers, potentials, Jacobian relations and the Euler forms.

mod gentle;
mod parse;
mod path;

use thiserror::Error;

use crate::qtorus::{DimVec, SkewForm};

pub use gentle::{is_locally_gentle, GentleReport};
pub use parse::parse_quiver;
pub use path::{cyclic_derivative, jacobian_relations, reduce_path, Path, PathExpr, Potential, RelationSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate arrow name `{0}`")]
    DuplicateArrow(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("path {0} is not composable")]
    NotComposable(String),
    #[error("`{0}` is not a cycle of length at least two")]
    NotACycle(String),
    #[error("relations are not monomial of length two: {0}")]
    NonMonomial(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver; loops and parallel arrows are allowed. Vertices are
/// 0-based internally and 1-based in text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            arrows: Vec::new(),
        }
    }

    /// Builds a quiver from `(name, source, target)` with 0-based vertices.
    pub fn from_arrows(vertex_count: usize, arrows: &[(&str, usize, usize)]) -> Result<Self, QuiverError> {
        let mut q = Self::new(vertex_count);
        for (name, s, t) in arrows {
            q.add_arrow(name, *s, *t)?;
        }
        Ok(q)
    }

    pub fn add_arrow(&mut self, name: &str, source: usize, target: usize) -> Result<usize, QuiverError> {
        if self.arrow_index(name).is_some() {
            return Err(QuiverError::DuplicateArrow(name.to_string()));
        }
        for v in [source, target] {
            if v >= self.vertex_count {
                return Err(QuiverError::VertexOutOfRange(v + 1));
            }
        }
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].target == v)
    }

    /// `χ(d,d') = Σ dᵢd'ᵢ − Σ_{a:i→j} dᵢd'ⱼ`.
    pub fn euler_chi(&self, d: &DimVec, e: &DimVec) -> i64 {
        let diag: i64 = d.0.iter().zip(&e.0).map(|(x, y)| *x as i64 * *y as i64).sum();
        let arrows: i64 = self
            .arrows
            .iter()
            .map(|a| d.0[a.source] as i64 * e.0[a.target] as i64)
            .sum();
        diag - arrows
    }

    /// `⟨d,d'⟩ = χ(d,d') − χ(d',d)`.
    pub fn skew(&self, d: &DimVec, e: &DimVec) -> i64 {
        self.euler_chi(d, e) - self.euler_chi(e, d)
    }

    pub fn skew_form(&self) -> SkewForm {
        let n = self.vertex_count;
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.skew(&DimVec::unit(n, i), &DimVec::unit(n, j)))
                    .collect()
            })
            .collect();
        SkewForm::new(matrix).expect("χ antisymmetrizes to an antisymmetric form")
    }

    /// Same quiver with vertices relabeled by `perm[i]` and arrows renamed.
    pub fn relabeled(&self, perm: &[usize], rename: impl Fn(&str) -> String) -> Quiver {
        Quiver {
            vertex_count: self.vertex_count,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: rename(&a.name),
                    source: perm[a.source],
                    target: perm[a.target],
                })
                .collect(),
        }
    }
}
