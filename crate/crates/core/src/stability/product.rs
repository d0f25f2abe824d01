use crate::qtorus::{DimVec, QTorusSeries};

use super::{CentralCharge, StabilityError};

/// Product of per-ray series in strictly decreasing phase order. Factors on
/// the same ray keep their input order; a tie between different rays is an
/// error, and the caller must merge such rays into one factor.
pub fn ordered_phase_product(
    factors: &[(DimVec, QTorusSeries)],
    z: &CentralCharge,
) -> Result<QTorusSeries, StabilityError> {
    let Some((_, first)) = factors.first() else {
        return Err(StabilityError::ZeroClass);
    };
    let mut keyed = Vec::with_capacity(factors.len());
    for (i, (ray, s)) in factors.iter().enumerate() {
        keyed.push((z.phase(ray)?, i, ray, s));
    }
    // stable sort keeps input order within a ray
    keyed.sort_by(|a, b| b.0.cmp(&a.0));
    for w in keyed.windows(2) {
        if w[0].0 == w[1].0 && w[0].2 != w[1].2 {
            return Err(StabilityError::PhaseTie(w[0].2.clone(), w[1].2.clone()));
        }
    }
    let mut acc = QTorusSeries::one(first.skew().clone(), first.truncation());
    for (_, _, _, s) in keyed {
        acc = acc.mul(s)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtorus::{qdilog, SkewForm};

    fn kron_skew() -> SkewForm {
        SkewForm::new(vec![vec![0, -2], vec![2, 0]]).unwrap()
    }

    #[test]
    fn single_factor_is_itself() {
        let sk = kron_skew();
        let e = qdilog(&sk, &DimVec(vec![1, 0]), 0, 5).unwrap();
        let z = CentralCharge::new(&[(-1, 1), (1, 1)]).unwrap();
        assert_eq!(ordered_phase_product(&[(DimVec(vec![1, 0]), e.clone())], &z).unwrap(), e);
    }

    #[test]
    fn orders_by_decreasing_phase_and_rejects_ties() {
        let sk = kron_skew();
        let e10 = qdilog(&sk, &DimVec(vec![1, 0]), 0, 4).unwrap();
        let e01 = qdilog(&sk, &DimVec(vec![0, 1]), 0, 4).unwrap();
        let z = CentralCharge::new(&[(-1, 1), (1, 1)]).unwrap();
        let got = ordered_phase_product(&[(DimVec(vec![0, 1]), e01.clone()), (DimVec(vec![1, 0]), e10.clone())], &z).unwrap();
        assert_eq!(got, e10.mul(&e01).unwrap());
        assert_ne!(got, e01.mul(&e10).unwrap());
        let flat = CentralCharge::new(&[(0, 1), (0, 1)]).unwrap();
        assert!(matches!(
            ordered_phase_product(&[(DimVec(vec![0, 1]), e01), (DimVec(vec![1, 0]), e10)], &flat),
            Err(StabilityError::PhaseTie(..))
        ));
    }
}
