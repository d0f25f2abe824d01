use std::collections::BTreeSet;

use super::{BandWord, Letter, StringAlgebra, StringWord};

/// A substring `letters[i..j]` of a word; `i == j` is the trivial substring
/// at position `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substring {
    pub i: usize,
    pub j: usize,
    pub word: StringWord,
}

fn flanks(letters: &[Letter], i: usize, j: usize) -> (Option<Letter>, Option<Letter>) {
    let left = i.checked_sub(1).map(|k| letters[k]);
    (left, letters.get(j).copied())
}

/// Left flank direct or absent, right flank inverse or absent.
fn is_submodule(left: Option<Letter>, right: Option<Letter>) -> bool {
    left.is_none_or(|l| !l.inverse) && right.is_none_or(|r| r.inverse)
}

/// Left flank inverse or absent, right flank direct or absent.
fn is_factor(left: Option<Letter>, right: Option<Letter>) -> bool {
    left.is_none_or(|l| l.inverse) && right.is_none_or(|r| !r.inverse)
}

fn substrings_where(
    alg: &StringAlgebra,
    w: &StringWord,
    keep: fn(Option<Letter>, Option<Letter>) -> bool,
) -> Vec<Substring> {
    let q = alg.quiver();
    let r = w.len();
    let mut out = Vec::new();
    for i in 0..=r {
        for j in i..=r {
            let (l, rt) = flanks(&w.letters, i, j);
            if keep(l, rt) {
                out.push(Substring {
                    i,
                    j,
                    word: w.slice(q, i, j),
                });
            }
        }
    }
    out
}

/// Substrings `u` with `M(u)` a submodule of `M(w)`, including trivial ones.
pub fn submodule_substrings(alg: &StringAlgebra, w: &StringWord) -> Vec<Substring> {
    substrings_where(alg, w, is_submodule)
}

/// Substrings `u` with `M(u)` a factor module of `M(w)`, including trivial ones.
pub fn factor_substrings(alg: &StringAlgebra, w: &StringWord) -> Vec<Substring> {
    substrings_where(alg, w, is_factor)
}

fn orientations(alg: &StringAlgebra, w: &StringWord) -> Vec<StringWord> {
    if w.is_empty() {
        vec![w.clone()]
    } else {
        vec![w.clone(), w.inverse(alg.quiver())]
    }
}

/// Middle terms `w₁ x⁻¹ w₂` of arrow extensions in `Ext¹(M(w₂), M(w₁))`,
/// over both readings of each word, as canonical strings.
pub fn arrow_extensions(alg: &StringAlgebra, w1: &StringWord, w2: &StringWord) -> Vec<StringWord> {
    let q = alg.quiver();
    let mut out = BTreeSet::new();
    for a in orientations(alg, w1) {
        for b in orientations(alg, w2) {
            for x in 0..q.arrows().len() {
                let link = Letter::inverse(x);
                if link.source(q) != a.end(q) || link.target(q) != b.start {
                    continue;
                }
                let mut letters = a.letters.clone();
                letters.push(link);
                letters.extend_from_slice(&b.letters);
                let mid = StringWord::from_letters(q, letters).expect("nonempty");
                if alg.validate_string(&mid).is_ok() {
                    out.insert(mid.canonical(q));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// One overlap extension `0 → M(w₁) → M(w₁ᴸ u w₂ᴿ) ⊕ M(w₂ᴸ u w₁ᴿ) → M(w₂) → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub overlap: StringWord,
    pub middle: (StringWord, StringWord),
}

fn join(q: &crate::quiver::Quiver, anchor: usize, parts: &[&[Letter]]) -> StringWord {
    let letters: Vec<Letter> = parts.concat();
    StringWord::from_letters(q, letters).unwrap_or_else(|| StringWord::empty(anchor))
}

/// Overlap extensions in `Ext¹(M(w₂), M(w₁))`: `u` a factor substring of
/// `w₁` and a submodule substring of `w₂` (either reading). Overlaps where
/// both left parts or both right parts are empty give split sequences and
/// are skipped.
pub fn overlap_extensions(alg: &StringAlgebra, w1: &StringWord, w2: &StringWord) -> Vec<Overlap> {
    let q = alg.quiver();
    let r2 = w2.len();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let factors = factor_substrings(alg, w1);
    for (flip, b) in orientations(alg, w2).into_iter().enumerate() {
        for sub in submodule_substrings(alg, &b) {
            for fac in &factors {
                if fac.word != sub.word {
                    continue;
                }
                let (l1, r1) = (&w1.letters[..fac.i], &w1.letters[fac.j..]);
                let (l2, rr2) = (&b.letters[..sub.i], &b.letters[sub.j..]);
                if (l1.is_empty() && l2.is_empty()) || (r1.is_empty() && rr2.is_empty()) {
                    continue;
                }
                let span = if flip == 1 { (r2 - sub.j, r2 - sub.i) } else { (sub.i, sub.j) };
                if !seen.insert((fac.i, fac.j, span)) {
                    continue;
                }
                let u = &fac.word.letters[..];
                let anchor = fac.word.start;
                let m1 = join(q, anchor, &[l1, u, rr2]);
                let m2 = join(q, anchor, &[l2, u, r1]);
                debug_assert!(alg.validate_string(&m1).is_ok() && alg.validate_string(&m2).is_ok());
                out.push(Overlap {
                    overlap: fac.word.clone(),
                    middle: (m1.canonical(q), m2.canonical(q)),
                });
            }
        }
    }
    out
}

/// `dim Ext¹(M(w₂), M(w₁))` as the number of arrow and overlap extensions.
pub fn ext1_dim(alg: &StringAlgebra, w2: &StringWord, w1: &StringWord) -> usize {
    arrow_extensions(alg, w1, w2).len() + overlap_extensions(alg, w1, w2).len()
}

/// Substrings of the bi-infinite word `∞v` of length at most `max_len`,
/// starting in one period, with their flanks.
fn periodic_substrings(
    alg: &StringAlgebra,
    v: &BandWord,
    max_len: usize,
) -> Vec<(StringWord, Letter, Letter)> {
    let q = alg.quiver();
    let r = v.len();
    let at = |k: usize| v.letters()[k % r];
    let mut out = Vec::new();
    for s in 0..r {
        for len in 0..=max_len {
            let letters: Vec<Letter> = (0..len).map(|t| at(s + t)).collect();
            let word = StringWord::from_letters(q, letters)
                .unwrap_or_else(|| StringWord::empty(at(s).source(q)));
            out.push((word, at(s + r - 1), at(s + len)));
        }
    }
    out
}

/// Sufficient conditions for vanishing between a string and a band module:
/// the first flag certifies `Ext¹(M(w), M(v,λ,m)) = 0` (no factor substring
/// of `∞v` is a submodule substring of `w`), the second certifies
/// `Ext¹(M(v,λ,m), M(w)) = 0` (no submodule substring of `∞v` is a factor
/// substring of `w`).
pub fn ext_string_band_vanishes(alg: &StringAlgebra, w: &StringWord, v: &BandWord) -> (bool, bool) {
    let periodic = periodic_substrings(alg, v, w.len());
    let mut into = true;
    let mut from = true;
    for b in orientations(alg, w) {
        let subs = submodule_substrings(alg, &b);
        let facs = factor_substrings(alg, &b);
        for (u, l, r) in &periodic {
            if into && is_factor(Some(*l), Some(*r)) && subs.iter().any(|s| s.word == *u) {
                into = false;
            }
            if from && is_submodule(Some(*l), Some(*r)) && facs.iter().any(|s| s.word == *u) {
                from = false;
            }
        }
    }
    (into, from)
}
