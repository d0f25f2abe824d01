use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::qtorus::{DimVec, QTorusSeries, RingElem};
use crate::quiver::{Quiver, RelationSet};
use crate::stability::CentralCharge;

use super::{count_reps, Flags, OracleError, StabilityFilter, Strategy};

pub fn predicted_coefficient(series: &QTorusSeries, d: &DimVec) -> RingElem {
    series.coefficient(d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeMatch {
    pub p: u64,
    pub predicted: BigRational,
    pub stacky: BigRational,
}

impl PrimeMatch {
    pub fn ok(&self) -> bool {
        self.predicted == self.stacky
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleMatch {
    pub d: DimVec,
    pub rows: Vec<PrimeMatch>,
}

impl OracleMatch {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(PrimeMatch::ok)
    }
}

/// Compares `s^{−χ(d,d)} · coefficient(t^d)` at `q = p` with the stacky
/// count for each prime.
pub fn oracle_match(
    series: &QTorusSeries,
    q: &Quiver,
    rel: &RelationSet,
    d: &DimVec,
    primes: &[u64],
    flags: &Flags,
) -> Result<OracleMatch, OracleError> {
    let chi = q.euler_chi(d, d);
    let normalized = predicted_coefficient(series, d).shift(-(chi as i32));
    if !normalized.numerator().is_even() {
        return Err(OracleError::NotQFunction(d.clone()));
    }
    let mut rows = Vec::with_capacity(primes.len());
    for &p in primes {
        let value = normalized.eval_at_q(&BigRational::from_integer(BigInt::from(p)))?;
        let report = count_reps(q, rel, d, p, flags, Strategy::Pruned)?;
        rows.push(PrimeMatch {
            p,
            predicted: value.even,
            stacky: report.stacky(),
        });
    }
    Ok(OracleMatch { d: d.clone(), rows })
}

/// Stable isomorphism classes of nilpotent, relation-satisfying
/// representations: `raw · (p − 1) / |GL_d|`, which is exact when every
/// stable has scalar endomorphisms.
pub fn count_stable_isoclasses(
    q: &Quiver,
    rel: &RelationSet,
    d: &DimVec,
    p: u64,
    z: &CentralCharge,
) -> Result<u128, OracleError> {
    let flags = Flags {
        nilpotent: true,
        relations: true,
        stability: StabilityFilter::Stable(z.clone()),
    };
    let r = count_reps(q, rel, d, p, &flags, Strategy::Pruned)?;
    let scaled = r.raw * (p as u128 - 1);
    if scaled % r.gl_order != 0 {
        return Err(OracleError::NonIntegerOrbitCount {
            raw: r.raw,
            gl: r.gl_order,
        });
    }
    Ok(scaled / r.gl_order)
}

/// Polystable isomorphism classes of class `d`: multisets of stables of
/// phase `φ(d)` whose classes sum to `d`. These are the points of the
/// moduli space of S-equivalence classes.
pub fn count_polystable_isoclasses(
    q: &Quiver,
    rel: &RelationSet,
    d: &DimVec,
    p: u64,
    z: &CentralCharge,
) -> Result<u128, OracleError> {
    let phi = z.phase(d)?;
    let mut ways: BTreeMap<DimVec, u128> = BTreeMap::from([(DimVec::zero(d.rank()), 1)]);
    for e in d.sub_vectors() {
        if e.is_zero() || z.phase(&e)? != phi {
            continue;
        }
        let s = count_stable_isoclasses(q, rel, &e, p, z)?;
        if s == 0 {
            continue;
        }
        let mut next = BTreeMap::new();
        for (f, w) in &ways {
            let mut g = f.clone();
            let mut k = 0u128;
            let mut choose = 1u128; // C(s + k − 1, k)
            loop {
                *next.entry(g.clone()).or_insert(0) += w * choose;
                g = g.add(&e);
                if !fits(&g, d) {
                    break;
                }
                choose = choose * (s + k) / (k + 1);
                k += 1;
            }
        }
        ways = next;
    }
    Ok(ways.get(d).copied().unwrap_or(0))
}

fn fits(e: &DimVec, d: &DimVec) -> bool {
    e.0.iter().zip(&d.0).all(|(x, y)| x <= y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqoracle::{gl_order, FpMatrix, FqRep};
    use crate::qtorus::{qdilog, SkewForm};
    use std::collections::HashSet;

    fn one(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn calibration_on_point_quiver() {
        let q = Quiver::new(1);
        let e = qdilog(&SkewForm::zero(1), &DimVec(vec![1]), 0, 4).unwrap();
        for n in 1..=4 {
            let m = oracle_match(&e, &q, &RelationSet::empty(), &DimVec(vec![n]), &[2, 3, 5], &Flags::default()).unwrap();
            assert!(m.ok(), "{m:?}");
            assert_eq!(m.rows[0].stacky, BigRational::new(1.into(), gl_order(2, n).into()));
        }
    }

    #[test]
    fn one_loop_series() {
        let q = Quiver::from_arrows(1, &[("x", 0, 0)]).unwrap();
        let sk = SkewForm::zero(1);
        let nil = qdilog(&sk, &DimVec(vec![1]), -1, 3).unwrap().inv().unwrap();
        let all = qdilog(&sk, &DimVec(vec![1]), 1, 3).unwrap().inv().unwrap();
        for n in 1..=3 {
            let d = DimVec(vec![n]);
            let m = oracle_match(&nil, &q, &RelationSet::empty(), &d, &[2, 3], &Flags::nilpotent()).unwrap();
            assert!(m.ok(), "{m:?}");
            let m = oracle_match(&all, &q, &RelationSet::empty(), &d, &[2, 3], &Flags::default()).unwrap();
            assert!(m.ok(), "{m:?}");
        }
        // swapping the two series is detected
        let m = oracle_match(&all, &q, &RelationSet::empty(), &DimVec(vec![1]), &[2], &Flags::nilpotent()).unwrap();
        assert!(!m.ok());
    }

    #[test]
    fn kronecker_value() {
        let q = Quiver::from_arrows(2, &[("a", 0, 1), ("b", 0, 1)]).unwrap();
        let sk = q.skew_form();
        let r = DimVec(vec![1, 1]);
        let s = qdilog(&sk, &r, 1, 2)
            .unwrap()
            .inv()
            .unwrap()
            .mul(&qdilog(&sk, &r, -1, 2).unwrap().inv().unwrap())
            .unwrap();
        let z = CentralCharge::new(&[(-1, 1), (1, 1)]).unwrap();
        let m = oracle_match(&s, &q, &RelationSet::empty(), &r, &[2, 3, 5], &Flags::semistable(z)).unwrap();
        assert!(m.ok(), "{m:?}");
        for row in &m.rows {
            let p = one(row.p as i64);
            assert_eq!(row.stacky, (&p + one(1)) / (&p - one(1)));
        }
    }

    fn triangle() -> (Quiver, CentralCharge) {
        let q = Quiver::from_arrows(3, &[("x", 0, 1), ("y", 0, 2), ("z", 2, 1)]).unwrap();
        (q, CentralCharge::new(&[(-1, 1), (1, 1), (0, 2)]).unwrap())
    }

    #[test]
    fn triangle_stables() {
        let (q, z) = triangle();
        let rel = RelationSet::empty();
        for p in [2, 3, 5] {
            // stables of class (1,1,1) are y ≠ 0, z ≠ 0 with x free: an affine line
            assert_eq!(count_stable_isoclasses(&q, &rel, &DimVec(vec![1, 1, 1]), p, &z).unwrap(), p as u128);
            assert_eq!(count_polystable_isoclasses(&q, &rel, &DimVec(vec![1, 1, 1]), p, &z).unwrap(), p as u128 + 1);
            assert_eq!(count_stable_isoclasses(&q, &rel, &DimVec(vec![1, 1, 0]), p, &z).unwrap(), 1);
            for i in 0..3 {
                assert_eq!(count_stable_isoclasses(&q, &rel, &DimVec::unit(3, i), p, &z).unwrap(), 1);
            }
        }
    }

    fn act(g: &FpMatrix, gi: &FpMatrix, x: &FpMatrix) -> FpMatrix {
        g.mul(x).mul(gi)
    }

    #[test]
    fn orbit_sum_identity() {
        // one loop, d = 2, p = 2: Σ over orbits of |GL|/|Stab| recovers the raw count
        let p = 2;
        let gl: Vec<FpMatrix> = (0..16).map(|i| FpMatrix::from_index(p, 2, 2, i)).filter(|m| m.rank() == 2).collect();
        assert_eq!(gl.len() as u128, gl_order(p, 2));
        let inv = |g: &FpMatrix| gl.iter().find(|h| g.mul(h) == FpMatrix::identity(p, 2)).unwrap().clone();
        let q = Quiver::from_arrows(1, &[("x", 0, 0)]).unwrap();
        for flags in [Flags::default(), Flags::nilpotent()] {
            let mut seen: HashSet<FpMatrix> = HashSet::new();
            let mut total = 0u128;
            for i in 0..16 {
                let x = FpMatrix::from_index(p, 2, 2, i);
                let rep = FqRep {
                    p,
                    dims: vec![2],
                    maps: vec![x.clone()],
                };
                if seen.contains(&x) || (flags.nilpotent && !rep.is_nilpotent(&q)) {
                    continue;
                }
                let orbit: HashSet<FpMatrix> = gl.iter().map(|g| act(g, &inv(g), &x)).collect();
                let stab = gl.iter().filter(|g| act(g, &inv(g), &x) == x).count();
                assert_eq!(orbit.len() * stab, gl.len());
                total += orbit.len() as u128;
                seen.extend(orbit);
            }
            let r = count_reps(&q, &RelationSet::empty(), &DimVec(vec![2]), p, &flags, Strategy::Plain).unwrap();
            assert_eq!(total, r.raw);
        }
    }
}
