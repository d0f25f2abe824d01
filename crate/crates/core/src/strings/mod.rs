//! Strings and bands for quivers with monomial quadratic relations.
//!
//! Words are walks in arrows and formal inverses. A direct letter `a` goes
//! from `s(a)` to `t(a)`, an inverse letter `a-` from `t(a)` to `s(a)`.
//! The extension combinatorics follow Çanakçı–Pauksztello–Schroll; those
//! results are stated for finite-dimensional gentle algebras and are applied
//! here to completed locally gentle algebras as well.

mod enumerate;
mod ext;
mod module;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::qtorus::DimVec;
use crate::quiver::{Quiver, QuiverError, RelationSet};

pub use enumerate::{enumerate_bands, enumerate_strings};
pub use ext::{
    arrow_extensions, ext1_dim, ext_string_band_vanishes, factor_substrings, overlap_extensions,
    submodule_substrings, Overlap, Substring,
};
pub use module::{band_module, string_module, Field, Layout, MatrixRep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StringError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("invalid word `{word}`: {reason}")]
    Invalid { word: String, reason: String },
    #[error("cannot parse word `{0}`")]
    Parse(String),
    #[error("band parameter must be nonzero in the chosen field")]
    ZeroEigenvalue,
    #[error("band multiplicity must be positive")]
    ZeroMultiplicity,
}

/// A quiver together with quadratic monomial relations.
#[derive(Clone, Debug)]
pub struct StringAlgebra {
    quiver: Quiver,
    forbidden: BTreeSet<(usize, usize)>,
}

impl StringAlgebra {
    pub fn new(quiver: Quiver, relations: &RelationSet) -> Result<Self, StringError> {
        let forbidden = relations.forbidden_pairs(&quiver)?;
        Ok(Self { quiver, forbidden })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn is_forbidden(&self, a: usize, b: usize) -> bool {
        self.forbidden.contains(&(a, b))
    }

    pub fn forbidden(&self) -> &BTreeSet<(usize, usize)> {
        &self.forbidden
    }

    /// Whether `y` may follow `x` in a string.
    pub fn can_follow(&self, x: Letter, y: Letter) -> bool {
        if x.target(&self.quiver) != y.source(&self.quiver) || y == x.inv() {
            return false;
        }
        match (x.inverse, y.inverse) {
            (false, false) => !self.is_forbidden(x.arrow, y.arrow),
            (true, true) => !self.is_forbidden(y.arrow, x.arrow),
            _ => true,
        }
    }

    pub fn letters_from(&self, v: usize) -> Vec<Letter> {
        let mut out = Vec::new();
        for (i, a) in self.quiver.arrows().iter().enumerate() {
            if a.source == v {
                out.push(Letter::direct(i));
            }
            if a.target == v {
                out.push(Letter::inverse(i));
            }
        }
        out
    }

    pub fn validate_string(&self, w: &StringWord) -> Result<(), StringError> {
        let bad = |reason: &str| StringError::Invalid {
            word: w.display(&self.quiver),
            reason: reason.into(),
        };
        if w.start >= self.quiver.vertex_count() {
            return Err(bad("start vertex out of range"));
        }
        if let Some(first) = w.letters.first() {
            if first.source(&self.quiver) != w.start {
                return Err(bad("first letter does not start at the anchor"));
            }
        }
        for pair in w.letters.windows(2) {
            if !self.can_follow(pair[0], pair[1]) {
                return Err(bad("consecutive letters are not allowed"));
            }
        }
        Ok(())
    }

    /// A band: a nonempty cyclic string whose square is a string and which
    /// is not a proper power.
    pub fn validate_band(&self, v: &BandWord) -> Result<(), StringError> {
        let w = &v.0;
        let bad = |reason: &str| StringError::Invalid {
            word: format!("band:{}", w.display(&self.quiver)),
            reason: reason.into(),
        };
        if w.letters.is_empty() {
            return Err(bad("bands are nonempty"));
        }
        self.validate_string(w)?;
        if w.end(&self.quiver) != w.start {
            return Err(bad("not cyclic"));
        }
        if !self.can_follow(*w.letters.last().unwrap(), w.letters[0]) {
            return Err(bad("its powers are not strings"));
        }
        if is_proper_power(&w.letters) {
            return Err(bad("proper power"));
        }
        Ok(())
    }

    pub fn parse_string(&self, text: &str) -> Result<StringWord, StringError> {
        let w = parse_word(&self.quiver, text)?;
        self.validate_string(&w)?;
        Ok(w)
    }

    pub fn parse_band(&self, text: &str) -> Result<BandWord, StringError> {
        let body = text
            .trim()
            .strip_prefix("band:")
            .ok_or_else(|| StringError::Parse(text.to_string()))?;
        let v = BandWord(parse_word(&self.quiver, body)?);
        self.validate_band(&v)?;
        Ok(v)
    }
}

fn is_proper_power(letters: &[Letter]) -> bool {
    let r = letters.len();
    (1..r).any(|p| r % p == 0 && (p..r).all(|i| letters[i] == letters[i - p]))
}

/// An arrow or its formal inverse. Ordered by arrow index, direct first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: usize) -> Self {
        Letter { arrow, inverse: false }
    }

    pub fn inverse(arrow: usize) -> Self {
        Letter { arrow, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter {
            arrow: self.arrow,
            inverse: !self.inverse,
        }
    }

    pub fn source(self, q: &Quiver) -> usize {
        let a = q.arrow(self.arrow);
        if self.inverse {
            a.target
        } else {
            a.source
        }
    }

    pub fn target(self, q: &Quiver) -> usize {
        let a = q.arrow(self.arrow);
        if self.inverse {
            a.source
        } else {
            a.target
        }
    }

    pub fn display(self, q: &Quiver) -> String {
        let name = &q.arrow(self.arrow).name;
        if self.inverse {
            format!("{name}-")
        } else {
            name.clone()
        }
    }
}

/// A walk anchored at `start`; empty words are the simple modules.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StringWord {
    pub start: usize,
    pub letters: Vec<Letter>,
}

impl StringWord {
    pub fn empty(v: usize) -> Self {
        StringWord {
            start: v,
            letters: Vec::new(),
        }
    }

    pub fn from_letters(q: &Quiver, letters: Vec<Letter>) -> Option<Self> {
        let start = letters.first()?.source(q);
        Some(StringWord { start, letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.letters.last().map_or(self.start, |l| l.target(q))
    }

    /// Vertex at each of the `len + 1` positions of the walk.
    pub fn vertices(&self, q: &Quiver) -> Vec<usize> {
        let mut out = vec![self.start];
        out.extend(self.letters.iter().map(|l| l.target(q)));
        out
    }

    pub fn inverse(&self, q: &Quiver) -> StringWord {
        StringWord {
            start: self.end(q),
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// The smaller of `w` and `w⁻¹` in letter order.
    pub fn canonical(&self, q: &Quiver) -> StringWord {
        let inv = self.inverse(q);
        if inv.letters < self.letters {
            inv
        } else {
            self.clone()
        }
    }

    pub fn concat(&self, other: &StringWord) -> StringWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        StringWord {
            start: self.start,
            letters,
        }
    }

    /// Subword of letters `i..j`, anchored at position `i`.
    pub fn slice(&self, q: &Quiver, i: usize, j: usize) -> StringWord {
        StringWord {
            start: self.vertices(q)[i],
            letters: self.letters[i..j].to_vec(),
        }
    }

    pub fn dim_vector(&self, q: &Quiver) -> DimVec {
        let mut d = vec![0; q.vertex_count()];
        for v in self.vertices(q) {
            d[v] += 1;
        }
        DimVec(d)
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.letters.is_empty() {
            return format!("@{}", self.start + 1);
        }
        self.letters
            .iter()
            .map(|l| l.display(q))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Ord for StringWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.start.cmp(&other.start))
    }
}

impl PartialOrd for StringWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A band, stored as one of its rotations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BandWord(pub StringWord);

impl BandWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0.letters
    }

    pub fn rotate(&self, q: &Quiver, k: usize) -> BandWord {
        let r = self.len();
        let letters: Vec<Letter> = (0..r).map(|i| self.0.letters[(i + k) % r]).collect();
        BandWord(StringWord::from_letters(q, letters).expect("bands are nonempty"))
    }

    /// Minimum over all rotations of both orientations.
    pub fn canonical(&self, q: &Quiver) -> BandWord {
        let inv = BandWord(self.0.inverse(q));
        (0..self.len())
            .flat_map(|k| [self.rotate(q, k), inv.rotate(q, k)])
            .min()
            .expect("bands are nonempty")
    }

    pub fn dim_vector(&self, q: &Quiver, m: u32) -> DimVec {
        let mut d = vec![0; q.vertex_count()];
        for l in self.letters() {
            d[l.target(q)] += m;
        }
        DimVec(d)
    }

    /// All letters direct, or all inverse: the band is an oriented cycle and
    /// its modules are not nilpotent.
    pub fn is_oriented_cycle(&self) -> bool {
        let first = self.letters()[0].inverse;
        self.letters().iter().all(|l| l.inverse == first)
    }

    pub fn display(&self, q: &Quiver) -> String {
        format!("band:{}", self.0.display(q))
    }
}

/// Tokenizes a word: arrow names, longest match first, each optionally
/// followed by `-`; whitespace is ignored. `@k` is the empty word at vertex
/// `k` (1-based).
fn parse_word(q: &Quiver, text: &str) -> Result<StringWord, StringError> {
    let text = text.trim();
    if let Some(v) = text.strip_prefix('@') {
        let v: usize = v
            .parse()
            .ok()
            .filter(|&v| v >= 1 && v <= q.vertex_count())
            .ok_or_else(|| StringError::Parse(text.to_string()))?;
        return Ok(StringWord::empty(v - 1));
    }
    let mut names: Vec<(usize, &str)> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| (i, a.name.as_str()))
        .collect();
    names.sort_by_key(|(_, n)| std::cmp::Reverse(n.len()));
    let mut letters = Vec::new();
    let mut rest = text;
    loop {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        let (i, name) = names
            .iter()
            .find(|(_, n)| rest.starts_with(n))
            .ok_or_else(|| StringError::Parse(text.to_string()))?;
        rest = &rest[name.len()..];
        let inverse = rest.starts_with('-');
        if inverse {
            rest = &rest[1..];
        }
        letters.push(Letter { arrow: *i, inverse });
    }
    StringWord::from_letters(q, letters).ok_or_else(|| StringError::Parse(text.to_string()))
}
