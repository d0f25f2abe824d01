use std::collections::BTreeMap;
use std::fmt;

use crate::qtorus::{factorize_ray, DTSpectrum, DimVec, QTorusSeries, SkewForm};
use crate::quiver::{Potential, Quiver};
use crate::stability::CentralCharge;

use super::{factor_product, invariant, DtError, Factor, TrajectoryCounts};

/// Depth, in multiples of the collapsed ray, used by [`preset_dt`].
pub const DT_DEPTH: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseRel {
    Less,
    Equal,
}

/// `φ(lhs) < φ(rhs)` or `φ(lhs) = φ(rhs)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseConstraint {
    pub lhs: DimVec,
    pub rel: PhaseRel,
    pub rhs: DimVec,
}

impl PhaseConstraint {
    fn new(lhs: &[u32], rel: PhaseRel, rhs: &[u32]) -> Self {
        Self {
            lhs: DimVec(lhs.to_vec()),
            rel,
            rhs: DimVec(rhs.to_vec()),
        }
    }

    pub fn holds(&self, z: &CentralCharge) -> Result<bool, DtError> {
        let (a, b) = (z.phase(&self.lhs)?, z.phase(&self.rhs)?);
        Ok(match self.rel {
            PhaseRel::Less => a < b,
            PhaseRel::Equal => a == b,
        })
    }
}

/// `S1⊕S2` style name of a class.
fn simple_sum(d: &DimVec) -> String {
    let mut parts = Vec::new();
    for (i, &m) in d.0.iter().enumerate() {
        for _ in 0..m {
            parts.push(format!("S{}", i + 1));
        }
    }
    parts.join("⊕")
}

impl fmt::Display for PhaseConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.rel {
            PhaseRel::Less => "<",
            PhaseRel::Equal => "=",
        };
        write!(f, "φ({}) {rel} φ({})", simple_sum(&self.lhs), simple_sum(&self.rhs))
    }
}

/// A row of the trajectory table.
///
/// The series lives on the sublattice spanned by `block`; its factors are
/// written in block coordinates. Collapsing sends `block[i]` to
/// `collapse[i]·γ`, which puts the whole series on the single ray `γ`.
#[derive(Clone, Debug)]
pub struct TrajectoryConfig {
    pub name: &'static str,
    pub quiver: Quiver,
    pub potential: Potential,
    pub potential_text: &'static str,
    pub constraints: Vec<PhaseConstraint>,
    pub charge: CentralCharge,
    pub block: Vec<DimVec>,
    pub collapse: Vec<u32>,
    pub factors: Vec<Factor>,
    pub counts: BTreeMap<u32, TrajectoryCounts>,
}

impl TrajectoryConfig {
    /// The skew form restricted to the block.
    pub fn block_skew(&self) -> SkewForm {
        let m = self
            .block
            .iter()
            .map(|d| self.block.iter().map(|e| self.quiver.skew(d, e)).collect())
            .collect();
        SkewForm::new(m).expect("restriction of an antisymmetric form")
    }

    /// Factors with classes in the quiver lattice.
    pub fn quiver_factors(&self) -> Vec<Factor> {
        self.factors.iter().map(|f| f.mapped(&self.block)).collect()
    }

    pub fn series_text(&self) -> String {
        let parts: Vec<String> = self.quiver_factors().iter().map(Factor::to_string).collect();
        parts.join(" ")
    }

    pub fn stability_text(&self) -> String {
        if self.constraints.is_empty() {
            return "any".to_string();
        }
        let parts: Vec<String> = self.constraints.iter().map(PhaseConstraint::to_string).collect();
        parts.join(", ")
    }

    pub fn quiver_text(&self) -> String {
        let arrows: Vec<String> = self
            .quiver
            .arrows()
            .iter()
            .map(|a| format!("{}:{}->{}", a.name, a.source + 1, a.target + 1))
            .collect();
        format!("{} vertices [{}]", self.quiver.vertex_count(), arrows.join(" "))
    }

    /// `Ω(γ)` or `(Ω(γ), Ω(2γ), …)` from the trajectory counts.
    pub fn omega_text(&self) -> String {
        let parts: Vec<String> = self.counts.values().map(|c| invariant(c).0.to_q_string()).collect();
        if parts.len() == 1 {
            parts[0].clone()
        } else {
            format!("({})", parts.join(", "))
        }
    }
}

fn quiver(n: usize, arrows: &[(&str, usize, usize)]) -> Quiver {
    Quiver::from_arrows(n, arrows).expect("preset quiver")
}

fn potential(q: &Quiver, cycles: &[(i64, &str)]) -> Potential {
    Potential::from_cycles(q, cycles).expect("preset potential")
}

fn charge(values: &[(i128, i128)]) -> CentralCharge {
    CentralCharge::new(values).expect("preset charge")
}

fn counts(entries: &[(u32, [u32; 5])]) -> BTreeMap<u32, TrajectoryCounts> {
    entries
        .iter()
        .map(|&(m, n)| {
            let c = TrajectoryCounts {
                n_i: n[0],
                n_ii: n[1],
                n_iii: n[2],
                n_drd: n[3],
                n_nrd: n[4],
            };
            (m, c)
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn config(
    name: &'static str,
    q: Quiver,
    cycles: &[(i64, &str)],
    potential_text: &'static str,
    constraints: Vec<PhaseConstraint>,
    z: &[(i128, i128)],
    block: &[&[u32]],
    factors: Vec<Factor>,
    c: &[(u32, [u32; 5])],
) -> TrajectoryConfig {
    let potential = potential(&q, cycles);
    TrajectoryConfig {
        name,
        quiver: q,
        potential,
        potential_text,
        constraints,
        charge: charge(z),
        block: block.iter().map(|d| DimVec(d.to_vec())).collect(),
        collapse: vec![1; block.len()],
        factors,
        counts: counts(c),
    }
}

/// The eight rows of the trajectory table, in table order.
pub fn presets() -> Vec<TrajectoryConfig> {
    use PhaseRel::*;
    let f = Factor::new;
    let one_loop = || quiver(1, &[("a", 0, 0)]);
    vec![
        config(
            "type-I",
            Quiver::new(1),
            &[],
            "0",
            vec![],
            &[(0, 1)],
            &[&[1]],
            vec![f(&[1], 0, 1)],
            &[(1, [1, 0, 0, 0, 0])],
        ),
        config(
            "type-II",
            one_loop(),
            &[(1, "a*a*a")],
            "a^3",
            vec![],
            &[(0, 1)],
            &[&[1]],
            vec![f(&[1], 0, 2)],
            &[(1, [0, 1, 0, 0, 0])],
        ),
        config(
            "drd-standard",
            one_loop(),
            &[],
            "0",
            vec![],
            &[(0, 1)],
            &[&[1]],
            vec![f(&[1], -1, -1)],
            &[(1, [0, 0, 0, 1, 0])],
        ),
        config(
            "drd-toral",
            quiver(2, &[("a", 0, 1), ("b", 1, 0)]),
            &[],
            "0",
            vec![PhaseConstraint::new(&[1, 0], Equal, &[0, 1])],
            &[(0, 1), (0, 1)],
            &[&[1, 0], &[0, 1]],
            vec![f(&[1, 0], 0, 1), f(&[0, 1], 0, 1), f(&[1, 1], -1, -1)],
            &[(1, [2, 0, 0, 0, 0]), (2, [0, 0, 0, 1, 0])],
        ),
        config(
            "drd-III",
            quiver(1, &[("a", 0, 0), ("b", 0, 0)]),
            &[(1, "a*a*a"), (1, "b*b*b")],
            "a^3 + b^3",
            vec![],
            &[(0, 1)],
            &[&[1]],
            vec![f(&[1], 0, 4), f(&[2], -1, -1)],
            &[(1, [0, 0, 1, 0, 0]), (2, [0, 0, 0, 1, 0])],
        ),
        config(
            "nrd-standard",
            quiver(2, &[("a", 0, 1), ("b", 0, 1)]),
            &[],
            "0",
            vec![PhaseConstraint::new(&[0, 1], Less, &[1, 0])],
            &[(-1, 1), (1, 1)],
            &[&[1, 1]],
            vec![f(&[1], 1, -1), f(&[1], -1, -1)],
            &[(1, [0, 0, 0, 0, 1])],
        ),
        config(
            "nrd-toral",
            quiver(3, &[("x", 0, 1), ("y", 0, 2), ("z", 2, 1)]),
            &[],
            "0",
            vec![
                PhaseConstraint::new(&[1, 1, 0], Equal, &[0, 0, 1]),
                PhaseConstraint::new(&[0, 1, 0], Less, &[1, 0, 0]),
            ],
            &[(-1, 1), (1, 1), (0, 2)],
            &[&[1, 1, 0], &[0, 0, 1]],
            vec![f(&[1, 0], 0, 1), f(&[0, 1], 0, 1), f(&[1, 1], 1, -1), f(&[1, 1], -1, -1)],
            &[(1, [2, 0, 0, 0, 0]), (2, [0, 0, 0, 0, 1])],
        ),
        config(
            "nrd-III",
            quiver(2, &[("a", 0, 0), ("c", 0, 1), ("b", 1, 1)]),
            &[(1, "a*a*a"), (1, "b*b*b")],
            "a^3 + b^3",
            vec![PhaseConstraint::new(&[0, 1], Less, &[1, 0])],
            &[(-1, 1), (1, 1)],
            &[&[1, 1]],
            vec![f(&[1], 0, 4), f(&[2], 1, -1), f(&[2], -1, -1)],
            &[(1, [0, 0, 1, 0, 0]), (2, [0, 0, 0, 0, 1])],
        ),
    ]
}

pub fn preset(name: &str) -> Result<TrajectoryConfig, DtError> {
    presets()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| DtError::UnknownPreset(name.to_string()))
}

/// The expected series in the quiver torus, truncated at total degree `n`.
pub fn preset_series(cfg: &TrajectoryConfig, n: u32) -> Result<QTorusSeries, DtError> {
    let block = factor_product(&cfg.factors, &cfg.block_skew(), n)?;
    Ok(block.rescale_classes(&cfg.block, cfg.quiver.skew_form(), n)?)
}

/// Refined invariants on the collapsed ray, up to `DT_DEPTH` multiples.
pub fn preset_dt(cfg: &TrajectoryConfig) -> Result<DTSpectrum, DtError> {
    let block = factor_product(&cfg.factors, &cfg.block_skew(), DT_DEPTH)?;
    let images: Vec<DimVec> = cfg.collapse.iter().map(|&l| DimVec(vec![l])).collect();
    let line = block.rescale_classes(&images, SkewForm::zero(1), DT_DEPTH)?;
    Ok(factorize_ray(&line, &DimVec(vec![1]))?)
}

/// Checks the stored charge against the constraints and the extracted
/// invariants against the trajectory counts.
pub fn verify_preset(cfg: &TrajectoryConfig) -> Result<DTSpectrum, DtError> {
    for c in &cfg.constraints {
        if !c.holds(&cfg.charge)? {
            return Err(DtError::Constraint {
                preset: cfg.name.to_string(),
                constraint: c.to_string(),
            });
        }
    }
    let spectrum = preset_dt(cfg)?;
    for m in 1..=DT_DEPTH {
        let expected = cfg.counts.get(&m).map(|c| invariant(c).0).unwrap_or_default();
        let got = spectrum.omega(m);
        if got != expected {
            return Err(DtError::Spectrum {
                preset: cfg.name.to_string(),
                multiple: m,
                expected: expected.to_q_string(),
                got: got.to_q_string(),
            });
        }
    }
    Ok(spectrum)
}

/// A full quiver with potential from the classification lemmas, with the
/// charge under which its stables are classified.
#[derive(Clone, Debug)]
pub struct FullQuiver {
    pub name: &'static str,
    pub quiver: Quiver,
    pub potential: Potential,
    pub charge: CentralCharge,
    /// Class whose phase is classified.
    pub class: DimVec,
}

pub fn full_quivers() -> Vec<FullQuiver> {
    let q3 = quiver(
        3,
        &[("a1", 0, 1), ("a2", 0, 1), ("b1", 1, 2), ("b2", 1, 2), ("c1", 2, 0), ("c2", 2, 0)],
    );
    let q4 = quiver(
        4,
        &[
            ("b1", 0, 1),
            ("b2", 0, 2),
            ("c1", 1, 3),
            ("c2", 2, 3),
            ("a1", 3, 0),
            ("a2", 3, 0),
            ("a3", 2, 1),
        ],
    );
    vec![
        FullQuiver {
            name: "toral-degenerate",
            potential: potential(&q3, &[(1, "a1*b1*c1"), (1, "a2*b2*c2")]),
            quiver: q3,
            charge: charge(&[(-101, 1), (1, 1), (100, 1)]),
            class: DimVec(vec![1, 1, 1]),
        },
        FullQuiver {
            name: "toral-nondegenerate",
            potential: potential(&q4, &[(1, "b1*c1*a1"), (1, "b2*c2*a2")]),
            quiver: q4,
            charge: charge(&[(-1, 1), (1, 1), (-100, 1), (100, 1)]),
            class: DimVec(vec![1, 1, 0, 0]),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtorus::HalfLaurent;

    fn omegas(name: &str) -> Vec<String> {
        let s = preset_dt(&preset(name).unwrap()).unwrap();
        s.omegas.values().filter(|o| !o.is_zero()).map(HalfLaurent::to_q_string).collect()
    }

    #[test]
    fn table_invariants() {
        assert_eq!(omegas("type-I"), ["1"]);
        assert_eq!(omegas("type-II"), ["2"]);
        assert_eq!(omegas("drd-standard"), ["q^-1/2"]);
        assert_eq!(omegas("drd-toral"), ["2", "q^-1/2"]);
        assert_eq!(omegas("drd-III"), ["4", "q^-1/2"]);
        assert_eq!(omegas("nrd-standard"), ["q^1/2 + q^-1/2"]);
        assert_eq!(omegas("nrd-toral"), ["2", "q^1/2 + q^-1/2"]);
        assert_eq!(omegas("nrd-III"), ["4", "q^1/2 + q^-1/2"]);
    }

    #[test]
    fn every_preset_verifies() {
        let all = presets();
        assert_eq!(all.len(), 8);
        for p in &all {
            verify_preset(p).unwrap();
            // factors on the block commute, so the series sits in the quiver torus
            preset_series(p, 4).unwrap();
        }
    }

    #[test]
    fn broken_charge_is_reported() {
        let mut p = preset("nrd-standard").unwrap();
        p.charge = CentralCharge::new(&[(1, 1), (-1, 1)]).unwrap();
        assert!(matches!(verify_preset(&p), Err(DtError::Constraint { .. })));
    }

    #[test]
    fn transcription_error_is_reported() {
        let mut p = preset("drd-toral").unwrap();
        p.factors[2].twist = 1;
        assert!(matches!(verify_preset(&p), Err(DtError::Spectrum { multiple: 2, .. })));
    }

    #[test]
    fn nrd_toral_series_in_quiver_torus() {
        let p = preset("nrd-toral").unwrap();
        let s = preset_series(&p, 3).unwrap();
        let e1 = s.coefficient(&DimVec(vec![1, 1, 0]));
        assert!(!e1.is_zero());
        assert_eq!(e1, s.coefficient(&DimVec(vec![0, 0, 1])));
        assert!(s.coefficient(&DimVec(vec![1, 0, 0])).is_zero());
        assert_eq!(p.series_text(), "E(t^(1,1,0)) E(t^(0,0,1)) E(-q^1/2 t^(1,1,1))^-1 E(-q^-1/2 t^(1,1,1))^-1");
        assert_eq!(p.stability_text(), "φ(S1⊕S2) = φ(S3), φ(S2) < φ(S1)");
        assert_eq!(p.omega_text(), "(2, q^1/2 + q^-1/2)");
    }

    #[test]
    fn full_quiver_charges_are_in_the_half_plane() {
        for f in full_quivers() {
            assert_eq!(f.charge.rank(), f.quiver.vertex_count());
            f.charge.phase(&f.class).unwrap();
        }
    }
}
