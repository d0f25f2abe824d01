//! Trajectory presets, the invariant formula and the barbell identities.
//!
//! Each preset pairs a quiver with potential and a stability witness with
//! the generating series of its semistable category, written as a list of
//! dilogarithm factors. The refined invariants follow by collapsing the
//! preset's phase block onto one ray and factorizing.

mod identities;
mod presets;

use std::fmt;

use thiserror::Error;

use crate::qtorus::{qdilog, DimVec, HalfLaurent, QTorusError, QTorusSeries, SkewForm};
use crate::quiver::QuiverError;
use crate::stability::StabilityError;

pub use identities::{
    barbell_assemble, barbell_assemble_with, wallcross_check, wallcross_factors, wallcross_with, Assembly, Side,
    WallcrossFactor, WallcrossReport,
};
pub use presets::{
    full_quivers, preset, preset_dt, preset_series, presets, verify_preset, FullQuiver, PhaseConstraint, PhaseRel,
    TrajectoryConfig, DT_DEPTH,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DtError {
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("preset {preset}: charge violates {constraint}")]
    Constraint { preset: String, constraint: String },
    #[error("preset {preset}: Ω({multiple}γ) is {got}, trajectory counts give {expected}")]
    Spectrum {
        preset: String,
        multiple: u32,
        expected: String,
        got: String,
    },
    #[error(transparent)]
    Series(#[from] QTorusError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Numbers of finite-length trajectories of each type in a class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TrajectoryCounts {
    pub n_i: u32,
    pub n_ii: u32,
    pub n_iii: u32,
    pub n_drd: u32,
    pub n_nrd: u32,
}

/// `Ω = N_I + 2N_II + 4N_III + q^{−1/2}N_DRD + (q^{1/2} + q^{−1/2})N_NRD`
/// together with its value at `q^{1/2} = −1`.
pub fn invariant(c: &TrajectoryCounts) -> (HalfLaurent, i128) {
    let constant = c.n_i as i128 + 2 * c.n_ii as i128 + 4 * c.n_iii as i128;
    let refined = HalfLaurent::from_terms([
        (0, constant),
        (-1, c.n_drd as i128 + c.n_nrd as i128),
        (1, c.n_nrd as i128),
    ]);
    let numerical = refined.eval_at_minus_one();
    (refined, numerical)
}

/// One dilogarithm factor `E((−s)^k t^class)^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub class: DimVec,
    pub twist: i32,
    pub exponent: i64,
}

impl Factor {
    pub fn new(class: &[u32], twist: i32, exponent: i64) -> Self {
        Self {
            class: DimVec(class.to_vec()),
            twist,
            exponent,
        }
    }

    pub fn series(&self, skew: &SkewForm, n: u32) -> Result<QTorusSeries, QTorusError> {
        qdilog(skew, &self.class, self.twist, n)?.pow(self.exponent)
    }

    /// Same factor with its class pushed through `block`.
    pub fn mapped(&self, block: &[DimVec]) -> Factor {
        let rank = block.first().map_or(0, DimVec::rank);
        let class = self
            .class
            .0
            .iter()
            .zip(block)
            .fold(DimVec::zero(rank), |acc, (&x, b)| acc.add(&b.scale(x)));
        Factor { class, ..self.clone() }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeff = match self.twist {
            0 => String::new(),
            k if k % 2 == 0 => format!("q^{} ", k / 2),
            k => format!("-q^{k}/2 "),
        };
        write!(f, "E({coeff}t^{})", self.class)?;
        if self.exponent != 1 {
            write!(f, "^{}", self.exponent)?;
        }
        Ok(())
    }
}

/// Ordered product of factors in one torus.
pub fn factor_product(factors: &[Factor], skew: &SkewForm, n: u32) -> Result<QTorusSeries, QTorusError> {
    let mut acc = QTorusSeries::one(skew.clone(), n);
    for f in factors {
        acc = acc.mul(&f.series(skew, n)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(n: [u32; 5]) -> TrajectoryCounts {
        TrajectoryCounts {
            n_i: n[0],
            n_ii: n[1],
            n_iii: n[2],
            n_drd: n[3],
            n_nrd: n[4],
        }
    }

    #[test]
    fn invariant_formula() {
        let (r, n) = invariant(&counts([1, 0, 0, 0, 0]));
        assert_eq!((r.to_q_string(), n), ("1".to_string(), 1));
        let (r, n) = invariant(&counts([0, 0, 0, 1, 0]));
        assert_eq!((r.to_q_string(), n), ("q^-1/2".to_string(), -1));
        let (r, n) = invariant(&counts([0, 0, 1, 0, 1]));
        assert_eq!((r.to_q_string(), n), ("q^1/2 + 4 + q^-1/2".to_string(), 2));
        assert!(invariant(&TrajectoryCounts::default()).0.is_zero());
    }

    #[test]
    fn invariant_is_linear() {
        let a = counts([1, 2, 0, 3, 1]);
        let b = counts([0, 1, 4, 0, 2]);
        let sum = counts([1, 3, 4, 3, 3]);
        let (ra, na) = invariant(&a);
        let (rb, nb) = invariant(&b);
        let (rs, ns) = invariant(&sum);
        assert_eq!(rs, &ra + &rb);
        assert_eq!(ns, na + nb);
    }

    #[test]
    fn factor_display() {
        assert_eq!(Factor::new(&[1, 1], 0, 4).to_string(), "E(t^(1,1))^4");
        assert_eq!(Factor::new(&[2, 2], 1, -1).to_string(), "E(-q^1/2 t^(2,2))^-1");
        assert_eq!(Factor::new(&[1], -1, -1).to_string(), "E(-q^-1/2 t^(1))^-1");
    }
}
