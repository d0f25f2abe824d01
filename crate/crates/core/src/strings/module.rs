use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::qtorus::DimVec;
use crate::quiver::{Quiver, RelationSet};

use super::{BandWord, StringAlgebra, StringError, StringWord};

/// Coefficient field for explicit matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    fn reduce(self, x: i128) -> i128 {
        match self {
            Field::Rational => x,
            Field::Prime(p) => x.rem_euclid(p as i128),
        }
    }
}

/// How the distinguished basis is laid out along the word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    /// Basis element `k` is position `k` of a string; arrows only join
    /// neighbours.
    Path,
    /// As `Path`, with the last position also joined to the first.
    Cycle,
    General,
}

/// A representation with a distinguished basis. `maps[a]` is the matrix of
/// `f_a`, with rows indexed by the target and columns by the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    pub field: Field,
    pub dims: Vec<usize>,
    pub maps: Vec<Vec<Vec<i128>>>,
    /// `(vertex, local index)` of each global basis element.
    pub basis: Vec<(usize, usize)>,
    pub layout: Layout,
}

impl MatrixRep {
    fn zero(q: &Quiver, field: Field, basis: Vec<(usize, usize)>, layout: Layout) -> Self {
        let mut dims = vec![0; q.vertex_count()];
        for &(v, _) in &basis {
            dims[v] += 1;
        }
        let maps = q
            .arrows()
            .iter()
            .map(|a| vec![vec![0; dims[a.source]]; dims[a.target]])
            .collect();
        Self {
            field,
            dims,
            maps,
            basis,
            layout,
        }
    }

    pub fn dim_vector(&self) -> DimVec {
        DimVec(self.dims.iter().map(|&d| d as u32).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.basis.len()
    }

    fn global_index(&self) -> Vec<Vec<usize>> {
        let mut idx: Vec<Vec<usize>> = self.dims.iter().map(|&d| vec![0; d]).collect();
        for (g, &(v, l)) in self.basis.iter().enumerate() {
            idx[v][l] = g;
        }
        idx
    }

    /// Pairs `(b, b')` of global basis elements with `b'` in the support of
    /// some `f_a(b)`.
    pub fn successor_edges(&self, q: &Quiver) -> Vec<(usize, usize)> {
        let idx = self.global_index();
        let mut out = Vec::new();
        for (a, m) in self.maps.iter().enumerate() {
            let arrow = q.arrow(a);
            for (row, entries) in m.iter().enumerate() {
                for (col, &x) in entries.iter().enumerate() {
                    if x != 0 {
                        out.push((idx[arrow.source][col], idx[arrow.target][row]));
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Matrix of a path `a₁⋯aₙ`, i.e. `f_{aₙ} ∘ ⋯ ∘ f_{a₁}`.
    pub fn path_matrix(&self, start: usize, arrows: &[usize]) -> Vec<Vec<i128>> {
        let n = self.dims[start];
        let mut acc: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
            .collect();
        for &a in arrows {
            let f = &self.maps[a];
            let cols = acc.first().map_or(0, Vec::len);
            acc = f
                .iter()
                .map(|row| {
                    (0..cols)
                        .map(|j| {
                            let s: i128 = row.iter().zip(&acc).map(|(x, r)| x * r[j]).sum();
                            self.field.reduce(s)
                        })
                        .collect()
                })
                .collect();
        }
        acc
    }

    /// Rank of `f_a` over the coefficient field.
    pub fn rank(&self, a: usize) -> usize {
        let m = &self.maps[a];
        match self.field {
            Field::Rational => {
                let rows: Vec<Vec<BigRational>> = m
                    .iter()
                    .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
                    .collect();
                rank_rational(rows)
            }
            Field::Prime(p) => crate::fqoracle::FpMatrix::from_entries(p, m).rank(),
        }
    }

    /// `self ⊕ other`, with the basis of `self` first.
    pub fn direct_sum(&self, q: &Quiver, other: &MatrixRep) -> MatrixRep {
        assert_eq!(self.field, other.field, "direct sum over different fields");
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(x, y)| x + y).collect();
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().map(|&(v, l)| (v, l + self.dims[v])));
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .zip(q.arrows())
            .map(|((f, g), a)| {
                let (fr, fc) = (self.dims[a.target], self.dims[a.source]);
                let (gr, gc) = (other.dims[a.target], other.dims[a.source]);
                let mut m = vec![vec![0; fc + gc]; fr + gr];
                for (i, row) in f.iter().enumerate() {
                    m[i][..fc].copy_from_slice(row);
                }
                for (i, row) in g.iter().enumerate() {
                    m[fr + i][fc..].copy_from_slice(row);
                }
                m
            })
            .collect();
        MatrixRep {
            field: self.field,
            dims,
            maps,
            basis,
            layout: Layout::General,
        }
    }

    /// Whether every generator of `rel` acts as zero.
    pub fn satisfies(&self, rel: &RelationSet) -> bool {
        rel.generators.iter().all(|g| {
            let mut total: Option<Vec<Vec<i128>>> = None;
            for (p, c) in g.terms() {
                let m = self.path_matrix(p.start, &p.arrows);
                total = Some(match total {
                    None => m
                        .iter()
                        .map(|r| r.iter().map(|x| self.field.reduce(x * c as i128)).collect())
                        .collect(),
                    Some(t) => t
                        .iter()
                        .zip(&m)
                        .map(|(tr, mr)| {
                            tr.iter()
                                .zip(mr)
                                .map(|(x, y)| self.field.reduce(x + y * c as i128))
                                .collect()
                        })
                        .collect(),
                });
            }
            total.is_none_or(|t| t.iter().flatten().all(|&x| x == 0))
        })
    }
}

fn rank_rational(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for k in c..cols {
                    let delta = &f * &rows[rank][k];
                    rows[r][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `M(w)`: one basis vector per position of the walk; a direct letter maps
/// position `k` to `k + 1`, an inverse letter maps `k + 1` to `k`.
pub fn string_module(alg: &StringAlgebra, w: &StringWord, field: Field) -> Result<MatrixRep, StringError> {
    alg.validate_string(w)?;
    let q = alg.quiver();
    let basis = local_labels(q, &w.vertices(q), 1);
    let mut rep = MatrixRep::zero(q, field, basis, Layout::Path);
    for (k, l) in w.letters.iter().enumerate() {
        let (from, to) = if l.inverse { (k + 1, k) } else { (k, k + 1) };
        let (_, col) = rep.basis[from];
        let (_, row) = rep.basis[to];
        rep.maps[l.arrow][row][col] = 1;
    }
    Ok(rep)
}

/// `M(v, λ, m)`: blocks of size `m` at each position of the band, identity
/// blocks on every letter but the last, which carries the Jordan block
/// `J e_j = λ e_j + e_{j−1}`.
pub fn band_module(
    alg: &StringAlgebra,
    v: &BandWord,
    lambda: i128,
    m: usize,
    field: Field,
) -> Result<MatrixRep, StringError> {
    alg.validate_band(v)?;
    if m == 0 {
        return Err(StringError::ZeroMultiplicity);
    }
    let lambda = field.reduce(lambda);
    if lambda == 0 {
        return Err(StringError::ZeroEigenvalue);
    }
    let q = alg.quiver();
    let r = v.len();
    // position k is the source of letter k; the last letter closes the cycle
    let verts: Vec<usize> = (0..r).map(|k| v.letters()[(k + r - 1) % r].target(q)).collect();
    let layout = if m == 1 { Layout::Cycle } else { Layout::General };
    let basis = local_labels(q, &verts, m);
    let mut rep = MatrixRep::zero(q, field, basis, layout);
    for (k, l) in v.letters().iter().enumerate() {
        let (a, b) = (k, (k + 1) % r);
        let (from, to) = if l.inverse { (b, a) } else { (a, b) };
        let wrap = k + 1 == r;
        for j in 0..m {
            let (_, col) = rep.basis[from * m + j];
            if wrap {
                let (_, row) = rep.basis[to * m + j];
                rep.maps[l.arrow][row][col] = lambda;
                if j > 0 {
                    let (_, row) = rep.basis[to * m + j - 1];
                    rep.maps[l.arrow][row][col] = 1;
                }
            } else {
                let (_, row) = rep.basis[to * m + j];
                rep.maps[l.arrow][row][col] = 1;
            }
        }
    }
    Ok(rep)
}

/// `(vertex, local index)` for `m` copies of each listed position.
fn local_labels(q: &Quiver, verts: &[usize], m: usize) -> Vec<(usize, usize)> {
    let mut seen = vec![0; q.vertex_count()];
    let mut out = Vec::with_capacity(verts.len() * m);
    for &v in verts {
        for _ in 0..m {
            out.push((v, seen[v]));
            seen[v] += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{jacobian_relations, Potential};
    use crate::strings::tests::barbell;
    use crate::strings::{enumerate_bands, enumerate_strings};

    #[test]
    fn barbell_modules_satisfy_relations() {
        let alg = barbell();
        let q = alg.quiver().clone();
        let w = Potential::from_cycles(&q, &[(1, "a*a*a"), (1, "b*b*b")]).unwrap();
        let rel = jacobian_relations(&q, &w);
        for s in enumerate_strings(&alg, 7) {
            let m = string_module(&alg, &s, Field::Rational).unwrap();
            assert!(m.satisfies(&rel), "{}", s.display(&q));
            assert_eq!(m.dim_vector(), s.dim_vector(&q));
        }
        for v in enumerate_bands(&alg, 8) {
            for k in 0..v.len() {
                let rv = v.rotate(&q, k);
                for mult in 1..=2 {
                    let m = band_module(&alg, &rv, 3, mult, Field::Rational).unwrap();
                    assert!(m.satisfies(&rel));
                    assert_eq!(m.dim_vector(), v.dim_vector(&q, mult as u32));
                }
            }
        }
        let acb = alg.parse_string("a c b").unwrap();
        assert_eq!(string_module(&alg, &acb, Field::Rational).unwrap().dim_vector(), DimVec(vec![2, 2]));
    }

    #[test]
    fn inverse_word_gives_permuted_matrices() {
        let alg = barbell();
        let q = alg.quiver();
        for w in enumerate_strings(&alg, 6) {
            let m1 = string_module(&alg, &w, Field::Rational).unwrap();
            let m2 = string_module(&alg, &w.inverse(q), Field::Rational).unwrap();
            let r = w.len();
            // position k of w is position r − k of w⁻¹
            let perm: Vec<usize> = (0..=r).map(|k| r - k).collect();
            for (a, arrow) in q.arrows().iter().enumerate() {
                for k in 0..=r {
                    for l in 0..=r {
                        if m1.basis[k].0 != arrow.source || m1.basis[l].0 != arrow.target {
                            continue;
                        }
                        let x = m1.maps[a][m1.basis[l].1][m1.basis[k].1];
                        let (pk, pl) = (perm[k], perm[l]);
                        let y = m2.maps[a][m2.basis[pl].1][m2.basis[pk].1];
                        assert_eq!(x, y);
                    }
                }
            }
        }
    }

    #[test]
    fn kronecker_band_entries() {
        let q = Quiver::from_arrows(2, &[("a", 0, 1), ("b", 0, 1)]).unwrap();
        let alg = StringAlgebra::new(q, &RelationSet::empty()).unwrap();
        let v = alg.parse_band("band:a b-").unwrap();
        let m = band_module(&alg, &v, 5, 1, Field::Rational).unwrap();
        assert_eq!(m.maps[0], vec![vec![1]]);
        assert_eq!(m.maps[1], vec![vec![5]]);
        let m2 = band_module(&alg, &v, 5, 2, Field::Rational).unwrap();
        assert_eq!(m2.maps[1], vec![vec![5, 1], vec![0, 5]]);
        assert_eq!(m2.rank(1), 2);
        assert!(band_module(&alg, &v, 7, 1, Field::Prime(7)).is_err());
        assert!(band_module(&alg, &v, 1, 0, Field::Rational).is_err());
    }

    #[test]
    fn simple_module() {
        let alg = barbell();
        let m = string_module(&alg, &StringWord::empty(1), Field::Rational).unwrap();
        assert_eq!(m.dim_vector(), DimVec(vec![0, 1]));
        assert_eq!(m.rank(1), 0);
        assert!(m.maps.iter().all(|x| x.iter().flatten().all(|&e| e == 0)));
    }
}
