use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

use super::{Quiver, QuiverError};

/// A composable path, read left to right: `a₁a₂⋯` with `t(aᵢ) = s(aᵢ₊₁)`.
/// The empty path at `start` is the idempotent `e_start`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn vertex(v: usize) -> Self {
        Path {
            start: v,
            arrows: Vec::new(),
        }
    }

    pub fn new(q: &Quiver, arrows: Vec<usize>) -> Result<Self, QuiverError> {
        let start = match arrows.first() {
            Some(&a) => q.arrow(a).source,
            None => return Err(QuiverError::NotComposable("empty path without vertex".into())),
        };
        let p = Path { start, arrows };
        if p.arrows.windows(2).any(|w| q.arrow(w[0]).target != q.arrow(w[1]).source) {
            return Err(QuiverError::NotComposable(p.display(q)));
        }
        Ok(p)
    }

    /// Parses `a*b*c` against the arrow names of `q`.
    pub fn parse(q: &Quiver, text: &str) -> Result<Self, QuiverError> {
        let arrows = text
            .split('*')
            .map(|n| {
                let n = n.trim();
                q.arrow_index(n).ok_or_else(|| QuiverError::UnknownArrow(n.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Path::new(q, arrows)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrow(a).target)
    }

    pub fn is_cycle(&self, q: &Quiver) -> bool {
        self.end(q) == self.start
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", self.start + 1);
        }
        self.arrows
            .iter()
            .map(|&a| q.arrow(a).name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// An integer linear combination of paths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathExpr {
    terms: BTreeMap<Path, i64>,
}

impl PathExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(p: Path) -> Self {
        let mut e = Self::zero();
        e.add_term(p, 1);
        e
    }

    pub fn add_term(&mut self, p: Path, c: i64) {
        let entry = self.terms.entry(p.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, i64)> {
        self.terms.iter().map(|(p, c)| (p, *c))
    }

    /// The single path of a monomial `1·p`.
    pub fn as_monomial(&self) -> Option<&Path> {
        match self.terms.iter().next() {
            Some((p, 1)) if self.terms.len() == 1 => Some(p),
            _ => None,
        }
    }

    /// Divides out the content and fixes the sign of the first term.
    /// Returns the normalized expression and the scalar removed.
    pub fn normalized(&self) -> (PathExpr, i64) {
        let g = self.terms.values().fold(0i64, |g, c| g.gcd(c));
        if g == 0 {
            return (self.clone(), 1);
        }
        let first = *self.terms.values().next().unwrap();
        let g = if first < 0 { -g } else { g };
        let terms = self.terms.iter().map(|(p, c)| (p.clone(), c / g)).collect();
        (PathExpr { terms }, g)
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                out.push(' ');
            }
            out.push_str(sign);
            if i > 0 {
                out.push(' ');
            }
            if c.abs() != 1 {
                out.push_str(&format!("{}", c.abs()));
            }
            out.push_str(&p.display(q));
        }
        out
    }
}

/// A potential: a linear combination of cycles of length ≥ 2 stored up to
/// rotation, so no two stored cycles are cyclically equivalent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Potential {
    cycles: BTreeMap<Vec<usize>, i64>,
}

fn canonical_rotation(cycle: &[usize]) -> Vec<usize> {
    (0..cycle.len())
        .map(|r| {
            let mut v = cycle[r..].to_vec();
            v.extend_from_slice(&cycle[..r]);
            v
        })
        .min()
        .unwrap_or_default()
}

impl Potential {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_cycle(&mut self, q: &Quiver, p: &Path, c: i64) -> Result<(), QuiverError> {
        if p.len() < 2 || !p.is_cycle(q) {
            return Err(QuiverError::NotACycle(p.display(q)));
        }
        let key = canonical_rotation(&p.arrows);
        let entry = self.cycles.entry(key.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.cycles.remove(&key);
        }
        Ok(())
    }

    /// Builds a potential from `(coefficient, "a*b*c")` pairs.
    pub fn from_cycles(q: &Quiver, cycles: &[(i64, &str)]) -> Result<Self, QuiverError> {
        let mut w = Self::zero();
        for (c, text) in cycles {
            w.add_cycle(q, &Path::parse(q, text)?, *c)?;
        }
        Ok(w)
    }

    pub fn is_zero(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn cycles(&self) -> impl Iterator<Item = (&[usize], i64)> {
        self.cycles.iter().map(|(p, c)| (p.as_slice(), *c))
    }
}

/// `∂ₐ` sends a cycle `c = u a v` to `v u`, summed over occurrences of `a`.
pub fn cyclic_derivative(q: &Quiver, w: &Potential, a: usize) -> PathExpr {
    let mut out = PathExpr::zero();
    for (cycle, c) in w.cycles() {
        for (i, &x) in cycle.iter().enumerate() {
            if x != a {
                continue;
            }
            let mut arrows = cycle[i + 1..].to_vec();
            arrows.extend_from_slice(&cycle[..i]);
            let p = Path {
                start: q.arrow(a).target,
                arrows,
            };
            out.add_term(p, c);
        }
    }
    out
}

/// Generators of a two-sided ideal of the path algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationSet {
    pub generators: Vec<PathExpr>,
    /// Scalars divided out of each generator; a field whose characteristic
    /// divides one of them does not see the stated relation.
    pub scalars: Vec<i64>,
}

impl RelationSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Monomial relations from `"a*b"` strings.
    pub fn monomial(q: &Quiver, paths: &[&str]) -> Result<Self, QuiverError> {
        let mut r = Self::empty();
        for p in paths {
            r.generators.push(PathExpr::single(Path::parse(q, p)?));
            r.scalars.push(1);
        }
        Ok(r)
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// The forbidden pairs `(a, b)` when every generator is a single path of
    /// length two.
    pub fn forbidden_pairs(&self, q: &Quiver) -> Result<BTreeSet<(usize, usize)>, QuiverError> {
        self.generators
            .iter()
            .map(|g| match g.as_monomial() {
                Some(p) if p.len() == 2 => Ok((p.arrows[0], p.arrows[1])),
                _ => Err(QuiverError::NonMonomial(g.display(q))),
            })
            .collect()
    }

    /// Primes dividing some normalization scalar.
    pub fn bad_characteristics(&self) -> Vec<u64> {
        let mut out = BTreeSet::new();
        for &s in &self.scalars {
            let mut n = s.unsigned_abs();
            let mut p = 2;
            while n > 1 {
                if n % p == 0 {
                    out.insert(p);
                    n /= p;
                } else {
                    p += 1;
                }
            }
        }
        out.into_iter().collect()
    }
}

/// `{∂ₐW}` over arrows with nonzero derivative, with scalars normalized away.
pub fn jacobian_relations(q: &Quiver, w: &Potential) -> RelationSet {
    let mut out = RelationSet::empty();
    for a in 0..q.arrows().len() {
        let d = cyclic_derivative(q, w, a);
        if d.is_zero() {
            continue;
        }
        let (g, s) = d.normalized();
        out.generators.push(g);
        out.scalars.push(s);
    }
    out
}

/// Drops every path containing a forbidden length-two subword.
pub fn reduce_path(q: &Quiver, p: &PathExpr, rel: &RelationSet) -> Result<PathExpr, QuiverError> {
    let forbidden = rel.forbidden_pairs(q)?;
    let mut out = PathExpr::zero();
    for (path, c) in p.terms() {
        if !path.arrows.windows(2).any(|w| forbidden.contains(&(w[0], w[1]))) {
            out.add_term(path.clone(), c);
        }
    }
    Ok(out)
}
