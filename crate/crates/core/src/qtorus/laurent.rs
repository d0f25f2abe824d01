//! Laurent polynomials in `s = q^{1/2}` with integer coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use super::QTorusError;

/// A Laurent polynomial `Σ c_k s^k`, where `s` stands for `q^{1/2}`.
///
/// Stored densely from the lowest nonzero exponent; there are never leading
/// or trailing zero coefficients, and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HalfLaurent {
    low: i32,
    coeffs: Vec<i128>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c · s^k`.
    pub fn monomial(c: i128, k: i32) -> Self {
        Self::from_dense(k, vec![c])
    }

    /// `1 − s^m`, i.e. `1 − q^{m/2}`.
    pub fn one_minus_s_pow(m: u32) -> Self {
        Self::from_terms([(0, 1), (m as i32, -1)])
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i128)>>(terms: I) -> Self {
        let terms: Vec<(i32, i128)> = terms.into_iter().collect();
        let (Some(lo), Some(hi)) = (
            terms.iter().map(|t| t.0).min(),
            terms.iter().map(|t| t.0).max(),
        ) else {
            return Self::zero();
        };
        let mut coeffs = vec![0i128; (hi - lo + 1) as usize];
        for (k, c) in terms {
            coeffs[(k - lo) as usize] += c;
        }
        Self::from_dense(lo, coeffs)
    }

    fn from_dense(low: i32, mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| **c == 0).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        Self {
            low: low + lead as i32,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs == [1]
    }

    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, k: i32) -> i128 {
        let idx = k - self.low;
        if idx < 0 {
            return 0;
        }
        self.coeffs.get(idx as usize).copied().unwrap_or(0)
    }

    /// Nonzero terms `(k, c_k)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i128)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(move |(i, c)| (self.low + i as i32, *c))
    }

    /// `Some((c, k))` when the polynomial is the single term `c s^k`.
    pub fn as_monomial(&self) -> Option<(i128, i32)> {
        let mut it = self.terms();
        let first = it.next()?;
        it.next().is_none().then_some((first.1, first.0))
    }

    /// Multiplies by `s^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: i128) -> Self {
        Self::from_dense(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// True if every exponent is even, so the polynomial lies in `Z[q^{±1}]`.
    pub fn is_even(&self) -> bool {
        self.terms().all(|(k, _)| k % 2 == 0)
    }

    /// Value at `s = −1`, the numerical specialisation.
    pub fn eval_at_minus_one(&self) -> i128 {
        self.terms()
            .map(|(k, c)| if k.rem_euclid(2) == 0 { c } else { -c })
            .sum()
    }

    /// Exact quotient by `1 − s^m`, or `None` if the division leaves a remainder.
    pub fn div_one_minus_s_pow(&self, m: u32) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let m = m as usize;
        let n = self.coeffs.len();
        if m == 0 || n <= m {
            return None;
        }
        // p = g − s^m g  ⇒  g_i = p_i + g_{i−m}
        let glen = n - m;
        let mut g = vec![0i128; glen];
        for i in 0..glen {
            g[i] = self.coeffs[i] + if i >= m { g[i - m] } else { 0 };
        }
        for i in glen..n {
            let lhs = if i >= m { -g[i - m] } else { 0 };
            if self.coeffs[i] != lhs {
                return None;
            }
        }
        Some(Self::from_dense(self.low, g))
    }

    /// Exact quotient by a divisor whose lowest coefficient is `±1`, or
    /// `None` if the division leaves a remainder.
    pub fn div_exact(&self, d: &HalfLaurent) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let d0 = *d.coeffs.first()?;
        if d0.abs() != 1 {
            return None;
        }
        let (n, m) = (self.coeffs.len(), d.coeffs.len());
        if n < m {
            return None;
        }
        let glen = n - m + 1;
        let mut g = vec![0i128; glen];
        for i in 0..glen {
            let mut acc = self.coeffs[i];
            for j in 1..m.min(i + 1) {
                acc -= d.coeffs[j] * g[i - j];
            }
            g[i] = acc * d0;
        }
        for i in glen..n {
            let mut acc = 0;
            for j in (i + 1 - glen)..m.min(i + 1) {
                acc += d.coeffs[j] * g[i - j];
            }
            if acc != self.coeffs[i] {
                return None;
            }
        }
        Some(Self::from_dense(self.low - d.low, g))
    }

    /// Renders in `q` notation, e.g. `q^1/2 + 4 + q^-1/2`, highest power first.
    pub fn to_q_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let terms: Vec<(i32, i128)> = self.terms().collect();
        for (idx, (k, c)) in terms.iter().rev().enumerate() {
            let (k, c) = (*k, *c);
            let mag = c.unsigned_abs();
            if idx == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let power = match k {
                0 => String::new(),
                2 => "q".to_string(),
                k if k % 2 == 0 => format!("q^{}", k / 2),
                k => format!("q^{}/2", k),
            };
            if power.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag == 1 {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{mag}{power}"));
            }
        }
        out
    }

    /// Parses the canonical `s` notation written by [`fmt::Display`].
    pub fn parse_s(text: &str) -> Result<Self, QTorusError> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero());
        }
        let bad = || QTorusError::Parse(format!("malformed polynomial `{text}`"));
        let mut terms = Vec::new();
        let bytes = text.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let sign = match bytes[pos] {
                b'+' => 1,
                b'-' => -1,
                _ => return Err(bad()),
            };
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let c: i128 = text[start..pos].parse().map_err(|_| bad())?;
            if !text[pos..].starts_with("s^") {
                return Err(bad());
            }
            pos += 2;
            let start = pos;
            if pos < bytes.len() && bytes[pos] == b'-' {
                pos += 1;
            }
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let k: i32 = text[start..pos].parse().map_err(|_| bad())?;
            if c == 0 {
                return Err(bad());
            }
            terms.push((k, sign * c));
        }
        let poly = Self::from_terms(terms.iter().copied());
        // canonical text has strictly increasing exponents
        if terms.windows(2).any(|w| w[0].0 >= w[1].0) || poly.is_zero() {
            return Err(bad());
        }
        Ok(poly)
    }
}

impl fmt::Display for HalfLaurent {
    /// Canonical `s` notation: `-1s^1+2s^3`, exponents increasing, `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, c) in self.terms() {
            let sign = if c < 0 { '-' } else { '+' };
            write!(f, "{sign}{}s^{k}", c.unsigned_abs())?;
        }
        Ok(())
    }
}

impl fmt::Debug for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HalfLaurent({self})")
    }
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.low.min(rhs.low);
        let hi = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let mut coeffs = vec![0i128; (hi - lo + 1) as usize];
        for (k, c) in self.terms().chain(rhs.terms()) {
            coeffs[(k - lo) as usize] += c;
        }
        HalfLaurent::from_dense(lo, coeffs)
    }
}

impl AddAssign<&HalfLaurent> for HalfLaurent {
    fn add_assign(&mut self, rhs: &HalfLaurent) {
        *self = &*self + rhs;
    }
}

impl Sub for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        self + &(-rhs)
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        self.scale(-1)
    }
}

impl Mul for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        if self.is_zero() || rhs.is_zero() {
            return HalfLaurent::zero();
        }
        let mut coeffs = vec![0i128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        HalfLaurent::from_dense(self.low + rhs.low, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i32, i128)]) -> HalfLaurent {
        HalfLaurent::from_terms(terms.iter().copied())
    }

    #[test]
    fn exact_division() {
        let a = p(&[(0, 1), (2, 1)]);
        let b = p(&[(1, 1), (3, -1)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b.scale(-1)), Some(a.scale(-1)));
        assert_eq!(p(&[(0, 1), (2, 2)]).div_exact(&a), None);
        assert_eq!(a.div_exact(&p(&[(0, 2)])), None);
    }

    #[test]
    fn trims_zero_coefficients() {
        let x = p(&[(-2, 0), (0, 3), (4, 0)]);
        assert_eq!(x.min_exp(), Some(0));
        assert_eq!(x.max_exp(), Some(0));
        assert!(p(&[(3, 1), (3, -1)]).is_zero());
    }

    #[test]
    fn multiplication_and_cancellation() {
        let one_minus_q = HalfLaurent::one_minus_s_pow(2);
        let one_plus_q = p(&[(0, 1), (2, 1)]);
        assert_eq!(&one_minus_q * &one_plus_q, HalfLaurent::one_minus_s_pow(4));
        assert_eq!(
            HalfLaurent::one_minus_s_pow(4).div_one_minus_s_pow(2),
            Some(one_plus_q)
        );
        assert_eq!(one_minus_q.div_one_minus_s_pow(4), None);
        assert_eq!(p(&[(0, 1), (1, 1)]).div_one_minus_s_pow(2), None);
    }

    #[test]
    fn q_notation() {
        assert_eq!(HalfLaurent::monomial(1, -1).to_q_string(), "q^-1/2");
        assert_eq!(
            p(&[(0, 4), (1, 1), (-1, 1)]).to_q_string(),
            "q^1/2 + 4 + q^-1/2"
        );
        assert_eq!(p(&[(2, -2), (0, 1)]).to_q_string(), "-2q + 1");
    }

    #[test]
    fn s_notation_round_trip() {
        let x = p(&[(-3, -2), (0, 1), (5, 7)]);
        let text = x.to_string();
        assert_eq!(text, "-2s^-3+1s^0+7s^5");
        assert_eq!(HalfLaurent::parse_s(&text).unwrap(), x);
        assert!(HalfLaurent::parse_s("+1s^2+1s^1").is_err());
        assert!(HalfLaurent::parse_s("1s^2").is_err());
    }

    #[test]
    fn numerical_specialisation() {
        assert_eq!(p(&[(1, 1), (-1, 1)]).eval_at_minus_one(), -2);
        assert_eq!(p(&[(-1, 1)]).eval_at_minus_one(), -1);
    }
}
