use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{BandWord, Letter, StringAlgebra, StringWord};

/// All directed strings of length `1..=max_len` starting with `first`.
fn walks_from(alg: &StringAlgebra, first: Letter, max_len: usize, out: &mut Vec<Vec<Letter>>) {
    let q = alg.quiver();
    let mut stack = vec![vec![first]];
    while let Some(w) = stack.pop() {
        if w.len() < max_len {
            let last = *w.last().unwrap();
            for next in alg.letters_from(last.target(q)) {
                if alg.can_follow(last, next) {
                    let mut longer = w.clone();
                    longer.push(next);
                    stack.push(longer);
                }
            }
        }
        out.push(w);
    }
}

fn all_letters(alg: &StringAlgebra) -> Vec<Letter> {
    (0..alg.quiver().arrows().len())
        .flat_map(|a| [Letter::direct(a), Letter::inverse(a)])
        .collect()
}

/// Strings of length at most `max_len`, one per inversion class, sorted.
pub fn enumerate_strings(alg: &StringAlgebra, max_len: usize) -> Vec<StringWord> {
    let q = alg.quiver();
    let mut out: BTreeSet<StringWord> = (0..q.vertex_count()).map(StringWord::empty).collect();
    if max_len > 0 {
        let found: Vec<StringWord> = all_letters(alg)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut walks = Vec::new();
                walks_from(alg, first, max_len, &mut walks);
                walks
                    .into_iter()
                    .filter_map(|w| StringWord::from_letters(q, w))
                    .filter(|w| w.canonical(q) == *w)
                    .collect::<Vec<_>>()
            })
            .collect();
        out.extend(found);
    }
    out.into_iter().collect()
}

/// Bands of length at most `max_len`, one per rotation and inversion class,
/// sorted.
pub fn enumerate_bands(alg: &StringAlgebra, max_len: usize) -> Vec<BandWord> {
    let q = alg.quiver();
    if max_len == 0 {
        return Vec::new();
    }
    let found: BTreeSet<BandWord> = all_letters(alg)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut walks = Vec::new();
            walks_from(alg, first, max_len, &mut walks);
            walks
                .into_iter()
                .filter_map(|w| StringWord::from_letters(q, w).map(BandWord))
                .filter(|v| alg.validate_band(v).is_ok() && v.canonical(q) == *v)
                .collect::<Vec<_>>()
        })
        .collect();
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{jacobian_relations, Potential, Quiver, RelationSet};
    use crate::strings::tests::barbell;

    /// Brute force over all letter sequences, independent of the DFS.
    fn brute_strings(alg: &StringAlgebra, max_len: usize) -> BTreeSet<StringWord> {
        let q = alg.quiver();
        let letters = all_letters(alg);
        let mut out: BTreeSet<StringWord> = (0..q.vertex_count()).map(StringWord::empty).collect();
        let mut layer: Vec<Vec<Letter>> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for &l in &letters {
                    let mut x = w.clone();
                    x.push(l);
                    next.push(x);
                }
            }
            for w in &next {
                let s = StringWord::from_letters(q, w.clone()).unwrap();
                if alg.validate_string(&s).is_ok() {
                    out.insert(s.canonical(q));
                }
            }
            layer = next;
        }
        out
    }

    #[test]
    fn barbell_strings() {
        let alg = barbell();
        let q = alg.quiver();
        let strings = enumerate_strings(&alg, 3);
        let shown: Vec<String> = strings.iter().map(|w| w.display(q)).collect();
        assert!(shown.contains(&"a c b".to_string()));
        assert!(shown.iter().all(|s| !s.contains("a a") && !s.contains("b b")));
        assert_eq!(strings.iter().cloned().collect::<BTreeSet<_>>(), brute_strings(&alg, 3));
        assert_eq!(enumerate_strings(&alg, 0).len(), 2);
        for w in enumerate_strings(&alg, 6) {
            assert_eq!(w.canonical(q), w.inverse(q).canonical(q));
        }
    }

    #[test]
    fn toral_strings() {
        let q = Quiver::from_arrows(
            3,
            &[("a1", 0, 1), ("a2", 0, 1), ("b1", 1, 2), ("b2", 1, 2), ("c1", 2, 0), ("c2", 2, 0)],
        )
        .unwrap();
        let w = Potential::from_cycles(&q, &[(1, "a1*b1*c1"), (1, "a2*b2*c2")]).unwrap();
        let rel = jacobian_relations(&q, &w);
        let alg = StringAlgebra::new(q, &rel).unwrap();
        let shown: Vec<String> = enumerate_strings(&alg, 2)
            .iter()
            .map(|w| w.display(alg.quiver()))
            .collect();
        assert!(shown.contains(&"a1 b2".to_string()));
        assert!(shown.contains(&"a2 b1".to_string()));
        assert!(!shown.contains(&"a1 b1".to_string()));
        assert_eq!(
            enumerate_strings(&alg, 4).into_iter().collect::<BTreeSet<_>>(),
            brute_strings(&alg, 4)
        );
    }

    #[test]
    fn kronecker_bands() {
        let q = Quiver::from_arrows(2, &[("a", 0, 1), ("b", 0, 1)]).unwrap();
        let alg = StringAlgebra::new(q, &RelationSet::empty()).unwrap();
        let bands = enumerate_bands(&alg, 4);
        let shown: Vec<String> = bands.iter().map(|v| v.display(alg.quiver())).collect();
        assert_eq!(shown, vec!["band:a b-"]);
    }
}
