use std::collections::BTreeMap;

use super::{DimVec, HalfLaurent, QTorusError, RingElem, SkewForm};

/// A truncated series `Σ_d c_d t^d` with `t^d t^{d'} = s^{⟨d,d'⟩} t^{d+d'}`.
///
/// Classes of total degree above the truncation are dropped. The constant
/// term is always stored; every other stored coefficient is nonzero.
#[derive(Clone, Debug)]
pub struct QTorusSeries {
    truncation: u32,
    skew: SkewForm,
    terms: BTreeMap<DimVec, RingElem>,
}

impl QTorusSeries {
    pub fn zero(skew: SkewForm, truncation: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(DimVec::zero(skew.rank()), RingElem::zero());
        Self {
            truncation,
            skew,
            terms,
        }
    }

    pub fn one(skew: SkewForm, truncation: u32) -> Self {
        let d = DimVec::zero(skew.rank());
        Self::monomial(skew, truncation, d, RingElem::one())
            .expect("the unit is always representable")
    }

    /// `c · t^d`.
    pub fn monomial(
        skew: SkewForm,
        truncation: u32,
        d: DimVec,
        c: RingElem,
    ) -> Result<Self, QTorusError> {
        Self::from_terms(skew, truncation, [(d, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (DimVec, RingElem)>>(
        skew: SkewForm,
        truncation: u32,
        terms: I,
    ) -> Result<Self, QTorusError> {
        let mut out = Self::zero(skew, truncation);
        for (d, c) in terms {
            if d.rank() != out.skew.rank() {
                return Err(QTorusError::Structural(format!(
                    "class {d} has rank {} but the torus has rank {}",
                    d.rank(),
                    out.skew.rank()
                )));
            }
            if d.total() > truncation {
                continue;
            }
            let prev = out.coefficient(&d);
            out.set(d, &prev + &c);
        }
        Ok(out)
    }

    fn set(&mut self, d: DimVec, c: RingElem) {
        if c.is_zero() && !d.is_zero() {
            self.terms.remove(&d);
        } else {
            self.terms.insert(d, c);
        }
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn skew(&self) -> &SkewForm {
        &self.skew
    }

    pub fn rank(&self) -> usize {
        self.skew.rank()
    }

    pub fn coefficient(&self, d: &DimVec) -> RingElem {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub fn constant(&self) -> &RingElem {
        &self.terms[&DimVec::zero(self.rank())]
    }

    /// Stored classes and coefficients in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (&DimVec, &RingElem)> {
        self.terms.iter()
    }

    /// Classes with nonzero coefficient.
    pub fn support(&self) -> Vec<DimVec> {
        self.terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, _)| d.clone())
            .collect()
    }

    /// Same series with a lower truncation.
    pub fn truncate(&self, n: u32) -> Self {
        let n = n.min(self.truncation);
        Self {
            truncation: n,
            skew: self.skew.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(d, _)| d.total() <= n)
                .map(|(d, c)| (d.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), QTorusError> {
        if self.skew != other.skew {
            return Err(QTorusError::Structural("series live in different tori".into()));
        }
        if self.truncation != other.truncation {
            return Err(QTorusError::Structural(format!(
                "truncations differ: {} vs {}",
                self.truncation, other.truncation
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, QTorusError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            let prev = out.coefficient(d);
            out.set(d.clone(), &prev + c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, QTorusError> {
        self.check_compatible(other)?;
        let mut buckets: BTreeMap<DimVec, Vec<RingElem>> = BTreeMap::new();
        for (d, a) in &self.terms {
            if a.is_zero() {
                continue;
            }
            for (e, b) in &other.terms {
                if b.is_zero() || d.total() + e.total() > self.truncation {
                    continue;
                }
                let twist = self.skew.eval(d, e) as i32;
                buckets
                    .entry(d.add(e))
                    .or_default()
                    .push((a * b).shift(twist));
            }
        }
        let mut out = Self::zero(self.skew.clone(), self.truncation);
        for (d, parts) in buckets {
            out.set(d, RingElem::sum(parts.iter()));
        }
        Ok(out)
    }

    /// Multiplicative inverse, by solving degree by degree.
    pub fn inv(&self) -> Result<Self, QTorusError> {
        let c0_inv = self.constant().inverse()?;
        let mut out = Self::zero(self.skew.clone(), self.truncation);
        out.set(DimVec::zero(self.rank()), c0_inv.clone());
        let support: Vec<(&DimVec, &RingElem)> = self
            .terms
            .iter()
            .filter(|(d, c)| !d.is_zero() && !c.is_zero())
            .collect();
        if support.is_empty() {
            return Ok(out);
        }
        for e in self.reachable_classes(support.iter().map(|(d, _)| *d)) {
            let mut parts = Vec::new();
            for (d, a) in &support {
                if let Some(rest) = e.checked_sub(d) {
                    if let Some(b) = out.terms.get(&rest) {
                        let twist = self.skew.eval(d, &rest) as i32;
                        parts.push((*a * b).shift(twist));
                    }
                }
            }
            let sum = RingElem::sum(parts.iter());
            out.set(e, -&(&c0_inv * &sum));
        }
        Ok(out)
    }

    /// Nonzero classes within the truncation that are sums of `gens`, in
    /// graded order.
    fn reachable_classes<'a, I: Iterator<Item = &'a DimVec>>(&self, gens: I) -> Vec<DimVec> {
        let gens: Vec<&DimVec> = gens.collect();
        let mut seen: std::collections::BTreeSet<DimVec> = std::collections::BTreeSet::new();
        let mut frontier = vec![DimVec::zero(self.rank())];
        while let Some(d) = frontier.pop() {
            for g in &gens {
                let next = d.add(g);
                if next.total() <= self.truncation && seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn pow(&self, e: i64) -> Result<Self, QTorusError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(self.skew.clone(), self.truncation);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Relabels `t^d ↦ t^{m(d)}` for the linear map sending the `i`-th unit
    /// vector to `images[i]`; coefficients of colliding classes are summed.
    ///
    /// The skew form must pull back on every pair of stored classes, and the
    /// source truncation must be deep enough to determine the target up to
    /// `truncation`.
    pub fn rescale_classes(
        &self,
        images: &[DimVec],
        target: SkewForm,
        truncation: u32,
    ) -> Result<Self, QTorusError> {
        if images.len() != self.rank() {
            return Err(QTorusError::Structural(format!(
                "{} images given for a rank {} torus",
                images.len(),
                self.rank()
            )));
        }
        if let Some(bad) = images.iter().find(|m| m.rank() != target.rank()) {
            return Err(QTorusError::Structural(format!(
                "image {bad} does not live in the rank {} torus",
                target.rank()
            )));
        }
        let min_total = images.iter().map(DimVec::total).min().unwrap_or(1);
        if min_total == 0 {
            return Err(QTorusError::ZeroClass);
        }
        if truncation >= min_total * (self.truncation + 1) {
            return Err(QTorusError::Structural(format!(
                "source truncation {} too shallow for target truncation {truncation}",
                self.truncation
            )));
        }
        let map = |d: &DimVec| {
            let mut out = DimVec::zero(target.rank());
            for (i, &x) in d.0.iter().enumerate() {
                out = out.add(&images[i].scale(x));
            }
            out
        };
        let support = self.support();
        for (i, d) in support.iter().enumerate() {
            for e in &support[i + 1..] {
                if self.skew.eval(d, e) != target.eval(&map(d), &map(e)) {
                    return Err(QTorusError::SkewPullback(format!(
                        "⟨{d},{e}⟩ changes under the relabeling"
                    )));
                }
            }
        }
        let mapped: Vec<(DimVec, RingElem)> =
            self.terms.iter().map(|(d, c)| (map(d), c.clone())).collect();
        Self::from_terms(target, truncation, mapped)
    }

    /// First class up to `n` where the two series differ, if any.
    pub fn first_mismatch(&self, other: &Self, n: u32) -> Option<DimVec> {
        let classes: std::collections::BTreeSet<&DimVec> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .filter(|d| d.total() <= n)
            .collect();
        classes
            .into_iter()
            .find(|d| self.coefficient(d) != other.coefficient(d))
            .cloned()
    }

    /// Coefficient of `t^{md}` read as a Laurent polynomial, for tests.
    pub fn laurent_coefficient(&self, d: &DimVec) -> Option<HalfLaurent> {
        self.coefficient(d).to_laurent()
    }
}

impl PartialEq for QTorusSeries {
    fn eq(&self, other: &Self) -> bool {
        self.skew == other.skew
            && self.truncation == other.truncation
            && self.first_mismatch(other, self.truncation).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn barbell() -> SkewForm {
        SkewForm::new(vec![vec![0, -1], vec![1, 0]]).unwrap()
    }

    fn t(d: &[u32]) -> QTorusSeries {
        QTorusSeries::monomial(barbell(), 4, DimVec(d.to_vec()), RingElem::one()).unwrap()
    }

    #[test]
    fn twisted_generators() {
        let ab = t(&[1, 0]).mul(&t(&[0, 1])).unwrap();
        assert_eq!(ab.coefficient(&DimVec(vec![1, 1])), RingElem::monomial(1, -1));
        let ba = t(&[0, 1]).mul(&t(&[1, 0])).unwrap();
        assert_eq!(ba.coefficient(&DimVec(vec![1, 1])), RingElem::monomial(1, 1));
    }

    #[test]
    fn unit_law_and_inverse() {
        let x = t(&[1, 0]).add(&t(&[0, 1])).unwrap();
        let x = QTorusSeries::one(barbell(), 4).add(&x).unwrap();
        let one = QTorusSeries::one(barbell(), 4);
        assert_eq!(x.mul(&one).unwrap(), x);
        assert_eq!(x.mul(&x.inv().unwrap()).unwrap(), one);
        assert_eq!(x.inv().unwrap().mul(&x).unwrap(), one);
        assert_eq!(x.pow(3).unwrap().mul(&x.pow(-3).unwrap()).unwrap(), one);
    }

    #[test]
    fn truncation_drops_overflow() {
        let x = t(&[2, 2]);
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq.support(), vec![]);
    }

    #[test]
    fn rescale_checks_skew() {
        let line = SkewForm::zero(1);
        let s = QTorusSeries::from_terms(
            line,
            3,
            [(DimVec(vec![1]), RingElem::one()), (DimVec(vec![2]), RingElem::monomial(2, 1))],
        )
        .unwrap();
        let r = s.rescale_classes(&[DimVec(vec![1, 1])], barbell(), 6).unwrap();
        assert_eq!(r.coefficient(&DimVec(vec![2, 2])), RingElem::monomial(2, 1));
        assert!(s.rescale_classes(&[DimVec(vec![1, 1])], barbell(), 8).is_err());

        let two = QTorusSeries::from_terms(
            SkewForm::zero(2),
            2,
            [(DimVec(vec![1, 0]), RingElem::one()), (DimVec(vec![0, 1]), RingElem::one())],
        )
        .unwrap();
        let err = two.rescale_classes(&[DimVec(vec![1, 0]), DimVec(vec![0, 1])], barbell(), 2);
        assert!(matches!(err, Err(QTorusError::SkewPullback(_))));
    }
}
