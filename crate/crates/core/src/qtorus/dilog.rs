use super::{DimVec, HalfLaurent, QTorusError, QTorusSeries, RingElem, SkewForm};

/// The quantum dilogarithm `E((−s)^k t^d)` truncated at total degree `n`.
///
/// `E(x) = Σ_m (−1)^m s^m x^m / ((1−q)⋯(1−q^m))`, and powers of `t^d`
/// commute since `⟨d,d⟩ = 0`.
pub fn qdilog(skew: &SkewForm, d: &DimVec, k: i32, n: u32) -> Result<QTorusSeries, QTorusError> {
    if d.is_zero() {
        return Err(QTorusError::ZeroClass);
    }
    let mut terms = Vec::new();
    let mut m = 1u32;
    while d.total() * m <= n {
        let mi = m as i32;
        let sign = if (mi + k * mi).rem_euclid(2) == 0 { 1 } else { -1 };
        let num = HalfLaurent::monomial(sign, mi + k * mi);
        terms.push((d.scale(m), RingElem::new(num, 1..=m)?));
        m += 1;
    }
    let mut out = QTorusSeries::from_terms(skew.clone(), n, terms)?;
    out = out.add(&QTorusSeries::one(skew.clone(), n))?;
    Ok(out)
}
