use crate::qtorus::{qdilog, DimVec, QTorusSeries, SkewForm};
use crate::stability::{ordered_phase_product, CentralCharge};

use super::{factor_product, DtError, Factor};

fn barbell_skew() -> SkewForm {
    SkewForm::new(vec![vec![0, -1], vec![1, 0]]).expect("antisymmetric")
}

fn dv(x: u32, y: u32) -> DimVec {
    DimVec(vec![x, y])
}

/// The semistable series of the barbell at the `(1,1)` ray.
fn barbell_block() -> Vec<Factor> {
    vec![
        Factor::new(&[1, 1], 0, 4),
        Factor::new(&[2, 2], 1, -1),
        Factor::new(&[2, 2], -1, -1),
    ]
}

/// Both sides of the barbell assembly and their first disagreement.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub assembled: QTorusSeries,
    pub expected: QTorusSeries,
    pub mismatch: Option<DimVec>,
}

impl Assembly {
    pub fn equal(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// `series(C₁) · series(C₂)` against the product of the three block
/// factors, with `C₂` placed on the ray `(2,2)`.
pub fn barbell_assemble(n: u32) -> Result<Assembly, DtError> {
    barbell_assemble_with(n, &dv(2, 2))
}

/// Barbell assembly with `C₂` placed at `c2_class` instead.
///
/// `C₁` is the two-loop series `E(t)⁴E(−s t²)⁻¹` sent to `t^{(1,1)}`;
/// `C₂` is the nilpotent one-loop series `E(−s⁻¹t)⁻¹` sent to `t^{c2_class}`.
pub fn barbell_assemble_with(n: u32, c2_class: &DimVec) -> Result<Assembly, DtError> {
    let line = SkewForm::zero(1);
    let skew = barbell_skew();
    let two_loop = factor_product(&[Factor::new(&[1], 0, 4), Factor::new(&[2], 1, -1)], &line, n)?;
    let c1 = two_loop.rescale_classes(&[dv(1, 1)], skew.clone(), n)?;
    let one_loop = factor_product(&[Factor::new(&[1], -1, -1)], &line, n)?;
    let c2 = one_loop.rescale_classes(std::slice::from_ref(c2_class), skew.clone(), n)?;
    let assembled = c1.mul(&c2)?;
    let expected = factor_product(&barbell_block(), &skew, n)?;
    let mismatch = assembled.first_mismatch(&expected, n);
    Ok(Assembly {
        assembled,
        expected,
        mismatch,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One factor of the wall-crossing identity and the ray it sits on.
#[derive(Clone, Debug)]
pub struct WallcrossFactor {
    pub side: Side,
    pub ray: DimVec,
    pub factor: Factor,
}

#[derive(Clone, Debug)]
pub struct WallcrossReport {
    pub left: QTorusSeries,
    pub right: QTorusSeries,
    pub mismatch: Option<DimVec>,
}

impl WallcrossReport {
    pub fn equal(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Factors of both sides with classes of total degree at most `n`.
///
/// The left side is the two simples with exponent 2. The right side has
/// the rays `(d+1,d)` and `(d,d+1)` with exponent 2 and the barbell block
/// on `(1,1)`.
pub fn wallcross_factors(n: u32) -> Vec<WallcrossFactor> {
    let mut out = Vec::new();
    let mut push = |side, ray: DimVec, factor: Factor| {
        if factor.class.total() <= n {
            out.push(WallcrossFactor { side, ray, factor });
        }
    };
    for d in [dv(0, 1), dv(1, 0)] {
        push(Side::Left, d.clone(), Factor::new(&d.0, 0, 2));
    }
    for d in 0..n {
        for r in [dv(d + 1, d), dv(d, d + 1)] {
            push(Side::Right, r.clone(), Factor::new(&r.0, 0, 2));
        }
    }
    for f in barbell_block() {
        push(Side::Right, dv(1, 1), f);
    }
    out
}

/// Checks the identity to total degree `n`.
pub fn wallcross_check(n: u32) -> Result<WallcrossReport, DtError> {
    wallcross_with(n, None)
}

/// Checks the identity with the `drop`-th factor of [`wallcross_factors`]
/// removed, which must break it.
///
/// The left side is ordered by a charge with `φ(S₁) < φ(S₂)`, the right
/// side by one with `φ(S₂) < φ(S₁)`; each product runs in decreasing phase.
pub fn wallcross_with(n: u32, drop: Option<usize>) -> Result<WallcrossReport, DtError> {
    let skew = barbell_skew();
    let left_z = CentralCharge::new(&[(1, 1), (-1, 1)])?;
    let right_z = CentralCharge::new(&[(-1, 1), (1, 1)])?;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (i, f) in wallcross_factors(n).into_iter().enumerate() {
        if Some(i) == drop {
            continue;
        }
        let s = qdilog(&skew, &f.factor.class, f.factor.twist, n)?.pow(f.factor.exponent)?;
        match f.side {
            Side::Left => left.push((f.ray, s)),
            Side::Right => right.push((f.ray, s)),
        }
    }
    let product = |factors: &[(DimVec, QTorusSeries)], z: &CentralCharge| -> Result<QTorusSeries, DtError> {
        if factors.is_empty() {
            return Ok(QTorusSeries::one(skew.clone(), n));
        }
        Ok(ordered_phase_product(factors, z)?)
    };
    let left = product(&left, &left_z)?;
    let right = product(&right, &right_z)?;
    let mismatch = left.first_mismatch(&right, n);
    Ok(WallcrossReport { left, right, mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barbell_assembly_holds() {
        for n in [2, 4, 8] {
            assert!(barbell_assemble(n).unwrap().equal(), "n = {n}");
        }
    }

    #[test]
    fn misplaced_c2_is_detected() {
        let a = barbell_assemble_with(8, &dv(1, 1)).unwrap();
        assert_eq!(a.mismatch, Some(dv(1, 1)));
    }

    #[test]
    fn wallcross_identity_holds() {
        for n in [3, 5, 7] {
            let r = wallcross_check(n).unwrap();
            assert!(r.equal(), "n = {n}: first mismatch {:?}", r.mismatch);
        }
    }

    #[test]
    fn dropping_any_factor_breaks_the_identity() {
        let n = 5;
        let factors = wallcross_factors(n);
        for (i, f) in factors.iter().enumerate() {
            let r = wallcross_with(n, Some(i)).unwrap();
            assert!(!r.equal(), "dropping {} kept the identity", f.factor);
        }
        let i = factors
            .iter()
            .position(|f| f.factor == Factor::new(&[2, 2], 1, -1))
            .unwrap();
        assert_eq!(wallcross_with(n, Some(i)).unwrap().mismatch, Some(dv(2, 2)));
    }
}
