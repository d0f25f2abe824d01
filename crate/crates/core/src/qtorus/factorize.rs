use std::collections::BTreeMap;

use super::{qdilog, DimVec, HalfLaurent, QTorusError, QTorusSeries, RingElem, SkewForm};

/// Refined DT invariants along one ray: `Ω(n d₀) = omegas[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DTSpectrum {
    pub ray: DimVec,
    pub omegas: BTreeMap<u32, HalfLaurent>,
}

impl DTSpectrum {
    pub fn omega(&self, n: u32) -> HalfLaurent {
        self.omegas.get(&n).cloned().unwrap_or_else(HalfLaurent::zero)
    }
}

/// `∏_k E((−s)^k t^d)^{(−1)^k Ω_k}` for `Ω = Σ Ω_k s^k`.
fn ray_factor(
    skew: &SkewForm,
    d: &DimVec,
    omega: &HalfLaurent,
    n: u32,
) -> Result<QTorusSeries, QTorusError> {
    let mut out = QTorusSeries::one(skew.clone(), n);
    for (k, c) in omega.terms() {
        let e = if k.rem_euclid(2) == 0 { c } else { -c };
        let f = qdilog(skew, d, k, n)?.pow(e as i64)?;
        out = out.mul(&f)?;
    }
    Ok(out)
}

/// Rebuilds the series `∏_n ∏_k E((−s)^k t^{n d₀})^{(−1)^k Ω_k(n d₀)}`.
pub fn recompose(
    spectrum: &DTSpectrum,
    skew: &SkewForm,
    n: u32,
) -> Result<QTorusSeries, QTorusError> {
    let mut out = QTorusSeries::one(skew.clone(), n);
    for (m, omega) in &spectrum.omegas {
        let d = spectrum.ray.scale(*m);
        if d.total() <= n {
            out = out.mul(&ray_factor(skew, &d, omega, n)?)?;
        }
    }
    Ok(out)
}

/// Extracts the refined DT invariants of a series supported on one ray.
///
/// The `t^{n d₀}` coefficient of the factor for `Ω(n d₀)` is
/// `−s Ω(s) / (1 − q)`, so each step reads `Ω = −(1 − q) c / s` off the
/// residual and divides that factor out. Factors on one ray commute.
pub fn factorize_ray(series: &QTorusSeries, ray: &DimVec) -> Result<DTSpectrum, QTorusError> {
    if ray.rank() != series.rank() {
        return Err(QTorusError::Structural(format!("ray {ray} has the wrong rank")));
    }
    if ray.is_zero() {
        return Err(QTorusError::ZeroClass);
    }
    if !ray.is_primitive() {
        return Err(QTorusError::Structural(format!("ray {ray} is not primitive")));
    }
    if !series.constant().is_one() {
        return Err(QTorusError::NotDtSeries(format!(
            "constant term {} is not 1",
            series.constant()
        )));
    }
    if let Some(d) = series.support().into_iter().find(|d| d.multiple_of(ray).is_none()) {
        return Err(QTorusError::NotDtSeries(format!("class {d} is off the ray {ray}")));
    }
    let n = series.truncation();
    let skew = series.skew();
    let one_minus_q = RingElem::from_laurent(HalfLaurent::one_minus_s_pow(2));
    let mut residual = series.clone();
    let mut omegas = BTreeMap::new();
    let mut m = 1;
    while ray.total() * m <= n {
        let d = ray.scale(m);
        let c = residual.coefficient(&d);
        if !c.is_zero() {
            let omega = (&(&c * &one_minus_q).shift(-1)).scale(-1);
            let omega = omega.to_laurent().ok_or_else(|| {
                QTorusError::NotDtSeries(format!("coefficient {c} at {d} is not of DT form"))
            })?;
            let factor = ray_factor(skew, &d, &omega, n)?;
            residual = factor.inv()?.mul(&residual)?;
            omegas.insert(m, omega);
        }
        m += 1;
    }
    debug_assert_eq!(residual.support().len(), 1);
    Ok(DTSpectrum {
        ray: ray.clone(),
        omegas,
    })
}
