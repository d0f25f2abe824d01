//! Brute-force point counts of quiver representations over prime fields.
//!
//! Representations are enumerated as tuples of matrices over `F_p` and
//! filtered by relations, nilpotency and (semi)stability. The stacky count
//! `raw / |GL_d(F_p)|` is compared against series coefficients under the
//! normalization `coefficient(t^d) = s^{χ(d,d)} · raw / |GL_d(F_p)|`, which
//! is calibrated on the point quiver against `E(t)`.
//!
//! Subrepresentations are enumerated over `F_p` only. Harder–Narasimhan
//! filtrations are unique, hence Galois-stable and defined over the ground
//! field, so `F_p`-semistability agrees with geometric semistability.

mod count;
mod linalg;
mod predict;
mod subreps;

use std::fmt;

use thiserror::Error;

use crate::qtorus::{DimVec, QTorusError};
use crate::quiver::{Quiver, RelationSet};
use crate::stability::{CentralCharge, StabilityError};
use crate::strings::MatrixRep;

pub use count::{count_reps, Strategy, ENUMERATION_GUARD};
pub use linalg::{gaussian_binomial, gl_order, inv_mod, subspaces, FpMatrix};
pub use predict::{
    count_polystable_isoclasses, count_stable_isoclasses, oracle_match, predicted_coefficient, OracleMatch, PrimeMatch,
};
pub use subreps::{exhaustive_verdict, SubspaceTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("enumeration of {size} tuples exceeds the guard of {ENUMERATION_GUARD}")]
    Guard { size: u128 },
    #[error("relations were normalized by a scalar divisible by {0}; characteristic {0} is excluded")]
    BadCharacteristic(u64),
    #[error("dimension vector has rank {got}, quiver has {expected} vertices")]
    RankMismatch { expected: usize, got: usize },
    #[error("orbit count {raw}·(p−1)/{gl} is not an integer; stabilizers are not scalars")]
    NonIntegerOrbitCount { raw: u128, gl: u128 },
    #[error("coefficient at {0} times s^-χ(d,d) is not a function of q alone")]
    NotQFunction(DimVec),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error(transparent)]
    Series(#[from] QTorusError),
}

/// Which stability condition, if any, a counted representation must meet.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum StabilityFilter {
    #[default]
    None,
    Semistable(CentralCharge),
    Stable(CentralCharge),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Flags {
    pub nilpotent: bool,
    pub relations: bool,
    pub stability: StabilityFilter,
}

impl Flags {
    pub fn nilpotent() -> Self {
        Self {
            nilpotent: true,
            ..Self::default()
        }
    }

    pub fn semistable(z: CentralCharge) -> Self {
        Self {
            stability: StabilityFilter::Semistable(z),
            ..Self::default()
        }
    }
}

impl fmt::Display for Flags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.nilpotent {
            parts.push("nilpotent");
        }
        if self.relations {
            parts.push("relations");
        }
        match self.stability {
            StabilityFilter::None => {}
            StabilityFilter::Semistable(_) => parts.push("semistable"),
            StabilityFilter::Stable(_) => parts.push("stable"),
        }
        if parts.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

/// A representation over `F_p`; `maps[a]` has rows indexed by the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqRep {
    pub p: u64,
    pub dims: Vec<usize>,
    pub maps: Vec<FpMatrix>,
}

impl FqRep {
    /// Reduces an integer matrix representation mod `p`.
    pub fn from_matrix_rep(q: &Quiver, rep: &MatrixRep, p: u64) -> Self {
        let maps = q
            .arrows()
            .iter()
            .zip(&rep.maps)
            .map(|(a, m)| {
                let mut f = FpMatrix::zeros(p, rep.dims[a.target], rep.dims[a.source]);
                for (r, row) in m.iter().enumerate() {
                    for (c, &x) in row.iter().enumerate() {
                        f.set(r, c, x.rem_euclid(p as i128) as u64);
                    }
                }
                f
            })
            .collect();
        Self {
            p,
            dims: rep.dims.clone(),
            maps,
        }
    }

    pub fn dim_vector(&self) -> DimVec {
        DimVec(self.dims.iter().map(|&d| d as u32).collect())
    }

    /// `f_{aₙ} ∘ ⋯ ∘ f_{a₁}`.
    pub fn path_matrix(&self, start: usize, arrows: &[usize]) -> FpMatrix {
        let mut acc = FpMatrix::identity(self.p, self.dims[start]);
        for &a in arrows {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    /// Every relation generator acts as zero. Scalars are taken mod `p`.
    pub fn satisfies(&self, rel: &RelationSet) -> bool {
        rel.generators.iter().all(|g| self.satisfies_one(g))
    }

    pub(crate) fn satisfies_one(&self, g: &crate::quiver::PathExpr) -> bool {
        let mut total: Option<FpMatrix> = None;
        for (path, c) in g.terms() {
            let m = self.path_matrix(path.start, &path.arrows).scale(c.rem_euclid(self.p as i64) as u64);
            total = Some(match total {
                None => m,
                Some(t) => t.add(&m),
            });
        }
        total.is_none_or(|t| t.is_zero())
    }

    /// Nilpotency of the path-ideal action: the chain `V ⊇ JV ⊇ J²V ⊇ ⋯`
    /// reaches zero. The chain is non-increasing, so it stalls at a nonzero
    /// space exactly when some cycle acts non-nilpotently.
    pub fn is_nilpotent(&self, q: &Quiver) -> bool {
        let n = self.dims.len();
        let mut span: Vec<FpMatrix> = self.dims.iter().map(|&d| FpMatrix::identity(self.p, d)).collect();
        let mut total: usize = self.dims.iter().sum();
        while total > 0 {
            let mut next: Vec<FpMatrix> = self.dims.iter().map(|&d| FpMatrix::zeros(self.p, 0, d)).collect();
            for (a, arrow) in q.arrows().iter().enumerate() {
                let src = &span[arrow.source];
                if src.rows == 0 {
                    continue;
                }
                // rows of (f_a · srcᵀ)ᵀ are the images of the spanning vectors
                let img = self.maps[a].mul(&src.transpose()).transpose();
                let t = &mut next[arrow.target];
                t.data.extend_from_slice(&img.data);
                t.rows += img.rows;
            }
            let mut new_total = 0;
            for v in 0..n {
                let (r, piv) = next[v].rref();
                let k = piv.len();
                next[v] = FpMatrix {
                    p: self.p,
                    rows: k,
                    cols: self.dims[v],
                    data: r.data[..k * self.dims[v]].to_vec(),
                };
                new_total += k;
            }
            if new_total == total {
                return false;
            }
            total = new_total;
            span = next;
        }
        true
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|i| i * i <= p).all(|i| p % i != 0)
}

/// One counting result, printed as
/// `count p=<p> d=<d> raw=<n> gl=<n> stacky=<a>/<b> flags=<...>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub p: u64,
    pub d: DimVec,
    pub raw: u128,
    pub gl_order: u128,
    pub flags: Flags,
}

impl CountReport {
    pub fn stacky(&self) -> num_rational::BigRational {
        num_rational::BigRational::new(self.raw.into(), self.gl_order.into())
    }
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.stacky();
        write!(
            f,
            "count p={} d={} raw={} gl={} stacky={}/{} flags={}",
            self.p,
            self.d,
            self.raw,
            self.gl_order,
            s.numer(),
            s.denom(),
            self.flags
        )
    }
}
