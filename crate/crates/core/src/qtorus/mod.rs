//! Coefficient ring, truncated quantum torus and quantum dilogarithms.

mod dilog;
mod dump;
mod factorize;
mod laurent;
mod ring;
mod series;

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

pub use dilog::qdilog;
pub use dump::{dump, parse_dump};
pub use factorize::{factorize_ray, recompose, DTSpectrum};
pub use laurent::HalfLaurent;
pub use ring::{RingElem, SplitValue};
pub use series::QTorusSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QTorusError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structural mismatch: {0}")]
    Structural(String),
    #[error("constant term {0} is not a unit")]
    NonUnit(String),
    #[error("zero class is not allowed here")]
    ZeroClass,
    #[error("denominator factor 1 - q^0 vanishes identically")]
    ZeroDenominatorFactor,
    #[error("not a DT series on this ray: {0}")]
    NotDtSeries(String),
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("skew form does not pull back: {0}")]
    SkewPullback(String),
}

/// A dimension vector `d ∈ N^{Q0}`.
///
/// Ordered by total degree first, then lexicographically descending, which
/// is the order used in series dumps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DimVec(pub Vec<u32>);

impl DimVec {
    pub fn zero(rank: usize) -> Self {
        DimVec(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        DimVec(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &DimVec) -> DimVec {
        DimVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other` if it stays non-negative.
    pub fn checked_sub(&self, other: &DimVec) -> Option<DimVec> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVec)
    }

    pub fn scale(&self, n: u32) -> DimVec {
        DimVec(self.0.iter().map(|x| x * n).collect())
    }

    pub fn gcd(&self) -> u32 {
        self.0.iter().fold(0, |g, &x| num_integer::gcd(g, x))
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd() == 1
    }

    /// `Some(n)` when `self = n · ray`.
    pub fn multiple_of(&self, ray: &DimVec) -> Option<u32> {
        let i = ray.0.iter().position(|&x| x != 0)?;
        if self.0[i] % ray.0[i] != 0 {
            return None;
        }
        let n = self.0[i] / ray.0[i];
        (ray.scale(n) == *self).then_some(n)
    }

    /// All `e` with `0 ≤ e ≤ self` componentwise.
    pub fn sub_vectors(&self) -> Vec<DimVec> {
        let mut out = vec![Vec::with_capacity(self.rank())];
        for &x in &self.0 {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=x).map(move |v| {
                        let mut p = p.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(DimVec).collect()
    }

    /// All dimension vectors of the given rank and total degree at most `n`.
    pub fn all_up_to(rank: usize, n: u32) -> Vec<DimVec> {
        let mut out: Vec<DimVec> = DimVec(vec![n; rank])
            .sub_vectors()
            .into_iter()
            .filter(|d| d.total() <= n)
            .collect();
        out.sort();
        out
    }

    pub fn parse(text: &str) -> Result<Self, QTorusError> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        inner
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| QTorusError::Parse(format!("bad dimension vector `{text}`")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(DimVec)
    }
}

impl Ord for DimVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for DimVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<&[u32]> for DimVec {
    fn from(v: &[u32]) -> Self {
        DimVec(v.to_vec())
    }
}

/// An antisymmetric integer bilinear form `⟨d, d'⟩ = dᵀ M d'`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewForm {
    matrix: Vec<Vec<i64>>,
}

impl SkewForm {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self, QTorusError> {
        let k = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != k {
                return Err(QTorusError::Structural("skew matrix is not square".into()));
            }
            for j in 0..k {
                if row[j] != -matrix[j][i] {
                    return Err(QTorusError::Structural(format!(
                        "skew matrix not antisymmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { matrix })
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            matrix: vec![vec![0; rank]; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn eval(&self, d: &DimVec, e: &DimVec) -> i64 {
        let mut acc = 0i64;
        for (i, row) in self.matrix.iter().enumerate() {
            if d.0[i] == 0 {
                continue;
            }
            let r: i64 = row.iter().zip(&e.0).map(|(m, x)| m * *x as i64).sum();
            acc += d.0[i] as i64 * r;
        }
        acc
    }
}
