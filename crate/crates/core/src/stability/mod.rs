//! Central charges, exact phases, and semistability of string and band
//! modules.
//!
//! Phases are never computed as angles. Every charge lies in the half-open
//! upper half plane `{im > 0} ∪ {im = 0, re < 0}`, where `arg` is strictly
//! monotone in the sign of the cross product, so comparisons reduce to one
//! integer determinant.
//!
//! Semistability is tested over *coordinate* submodules: subsets of the
//! distinguished string/band basis closed under every arrow. These are
//! genuine submodules, so an unstable verdict is always sound. Completeness
//! (that no non-coordinate submodule destabilizes when every coordinate one
//! fails to) is not proved here; it is certified against exhaustive
//! subspace enumeration over small finite fields in the acceptance suite.

mod classify;
mod coords;
mod product;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::qtorus::{DimVec, QTorusError};
use crate::quiver::Quiver;
use crate::strings::{MatrixRep, StringError};

pub use classify::{classify_stables, ClassifyMode, ClassifyOptions, Classified};
pub use coords::coordinate_submodule_dimvecs;
pub use product::ordered_phase_product;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilityError {
    #[error("phase of the zero class is undefined")]
    ZeroClass,
    #[error("charge of vertex {vertex} is {value}, outside the upper half plane and negative real axis")]
    OutsideHalfPlane { vertex: usize, value: String },
    #[error("charge has {got} vertices, expected {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("charge entries too large after clearing denominators")]
    Overflow,
    #[error("rays {0} and {1} have equal phase; merge them into one block")]
    PhaseTie(DimVec, DimVec),
    #[error(transparent)]
    Series(#[from] QTorusError),
    #[error(transparent)]
    Strings(#[from] StringError),
}

/// Per-vertex charges with denominators cleared. Multiplying every `Z_i` by
/// one positive rational changes no phase comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharge {
    re: Vec<i128>,
    im: Vec<i128>,
}

impl CentralCharge {
    /// Integer charges `(re_i, im_i)`.
    pub fn new(values: &[(i128, i128)]) -> Result<Self, StabilityError> {
        for (i, &(re, im)) in values.iter().enumerate() {
            if im < 0 || (im == 0 && re >= 0) {
                return Err(StabilityError::OutsideHalfPlane {
                    vertex: i + 1,
                    value: format!("{re}{im:+}i"),
                });
            }
        }
        Ok(Self {
            re: values.iter().map(|v| v.0).collect(),
            im: values.iter().map(|v| v.1).collect(),
        })
    }

    /// Rational charges, scaled by the lcm of all denominators.
    pub fn from_rationals(values: &[(BigRational, BigRational)]) -> Result<Self, StabilityError> {
        let lcm = values
            .iter()
            .flat_map(|(r, i)| [r.denom().clone(), i.denom().clone()])
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        let scale = |x: &BigRational| -> Result<i128, StabilityError> {
            (x * BigRational::from_integer(lcm.clone()))
                .to_integer()
                .to_i128()
                .ok_or(StabilityError::Overflow)
        };
        let ints = values
            .iter()
            .map(|(r, i)| Ok((scale(r)?, scale(i)?)))
            .collect::<Result<Vec<_>, StabilityError>>()?;
        Self::new(&ints)
    }

    /// Reads `Z <vertex> <re_num>/<re_den> <im_num>/<im_den>` lines, vertices
    /// 1-based; `#` starts a comment. Every vertex must appear exactly once.
    pub fn parse(text: &str, vertex_count: usize) -> Result<Self, StabilityError> {
        let mut slots: Vec<Option<(BigRational, BigRational)>> = vec![None; vertex_count];
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |msg: String| StabilityError::Parse { line, msg };
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "Z" {
                return Err(err(format!("expected `Z <vertex> <re> <im>`, found `{body}`")));
            }
            let v: usize = fields[1]
                .parse()
                .map_err(|_| err(format!("bad vertex `{}`", fields[1])))?;
            if v == 0 || v > vertex_count {
                return Err(err(format!("vertex {v} out of range 1..={vertex_count}")));
            }
            let rat = |t: &str| -> Result<BigRational, StabilityError> {
                let r: BigRational = t.parse().map_err(|_| err(format!("bad rational `{t}`")))?;
                Ok(r)
            };
            if slots[v - 1].is_some() {
                return Err(err(format!("vertex {v} given twice")));
            }
            slots[v - 1] = Some((rat(fields[2])?, rat(fields[3])?));
        }
        let values = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or(StabilityError::Parse {
                    line: 0,
                    msg: format!("no charge for vertex {}", i + 1),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rationals(&values)
    }

    pub fn rank(&self) -> usize {
        self.re.len()
    }

    /// `Z(d) = Σ dᵢZᵢ`.
    pub fn eval(&self, d: &DimVec) -> (i128, i128) {
        let mut re = 0i128;
        let mut im = 0i128;
        for (i, &x) in d.0.iter().enumerate() {
            re += self.re[i] * x as i128;
            im += self.im[i] * x as i128;
        }
        (re, im)
    }

    pub fn phase(&self, d: &DimVec) -> Result<Phase, StabilityError> {
        if d.rank() != self.rank() {
            return Err(StabilityError::RankMismatch {
                expected: self.rank(),
                got: d.rank(),
            });
        }
        if d.is_zero() {
            return Err(StabilityError::ZeroClass);
        }
        let (re, im) = self.eval(d);
        Ok(Phase { re, im })
    }
}

impl fmt::Display for CentralCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .re
            .iter()
            .zip(&self.im)
            .map(|(r, i)| format!("{r}{i:+}i"))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `(1/π)·arg Z` as an ordered handle; two phases are equal iff the
/// underlying charges are positively proportional.
#[derive(Clone, Copy, Debug)]
pub struct Phase {
    re: i128,
    im: i128,
}

impl Phase {
    pub fn charge(&self) -> (i128, i128) {
        (self.re, self.im)
    }

    /// Whether the phase is exactly 1.
    pub fn is_one(&self) -> bool {
        self.im == 0
    }
}

/// `φ(u) < φ(v)` iff `u × v > 0`.
pub fn phase_cmp(u: &Phase, v: &Phase) -> Ordering {
    let cross = u.re * v.im - u.im * v.re;
    0.cmp(&cross)
}

impl PartialEq for Phase {
    fn eq(&self, other: &Self) -> bool {
        phase_cmp(self, other) == Ordering::Equal
    }
}

impl Eq for Phase {}

impl PartialOrd for Phase {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Phase {
    fn cmp(&self, other: &Self) -> Ordering {
        phase_cmp(self, other)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl Status {
    pub fn is_semistable(self) -> bool {
        self != Status::Unstable
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Stable => "stable",
            Status::StrictlySemistable => "strictly-semistable",
            Status::Unstable => "unstable",
        })
    }
}

/// The witness is a proper nonzero submodule of maximal phase; present iff
/// the module is not stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub status: Status,
    pub witness: Option<DimVec>,
}

/// Verdict from the maximal phase among the given proper nonzero
/// submodule classes.
pub fn verdict_from_subs<'a, I>(z: &CentralCharge, total: &DimVec, subs: I) -> Result<StabilityVerdict, StabilityError>
where
    I: IntoIterator<Item = &'a DimVec>,
{
    let phi = z.phase(total)?;
    let mut best: Option<(Phase, &DimVec)> = None;
    for d in subs {
        let p = z.phase(d)?;
        if best.as_ref().is_none_or(|(bp, _)| p > *bp) {
            best = Some((p, d));
        }
    }
    Ok(match best {
        Some((p, d)) if p >= phi => StabilityVerdict {
            status: if p > phi {
                Status::Unstable
            } else {
                Status::StrictlySemistable
            },
            witness: Some(d.clone()),
        },
        _ => StabilityVerdict {
            status: Status::Stable,
            witness: None,
        },
    })
}

/// Stability of a string or band module by the coordinate-submodule test.
pub fn verdict(rep: &MatrixRep, q: &Quiver, z: &CentralCharge) -> Result<StabilityVerdict, StabilityError> {
    let subs = coordinate_submodule_dimvecs(rep, q);
    verdict_from_subs(z, &rep.dim_vector(), &subs)
}
