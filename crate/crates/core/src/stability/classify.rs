use rayon::prelude::*;

use crate::strings::{band_module, enumerate_bands, enumerate_strings, string_module, BandWord, Field, MatrixRep, StringAlgebra, StringWord};

use super::{verdict, CentralCharge, Phase, StabilityError, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassifyMode {
    /// Stable modules only.
    Stable,
    /// Every semistable string or band module (these are indecomposable).
    SemistableIndecomposable,
}

/// A classified module. Bands stand for their whole `λ`-family; the
/// verdict is computed at `λ = 1`, `m = 1`, and does not depend on `λ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Classified {
    String(StringWord),
    Band(BandWord),
}

impl Classified {
    pub fn display(&self, alg: &StringAlgebra) -> String {
        match self {
            Classified::String(w) => w.display(alg.quiver()),
            Classified::Band(v) => v.display(alg.quiver()),
        }
    }
}

pub type ModuleFilter = dyn Fn(&MatrixRep) -> bool + Sync;

pub struct ClassifyOptions<'a> {
    pub max_len: usize,
    pub mode: ClassifyMode,
    /// Skip bands that are oriented cycles; their band modules are not
    /// nilpotent.
    pub nilpotent_only: bool,
    /// Extra condition on the module, e.g. a non-invertible arrow.
    pub filter: Option<&'a ModuleFilter>,
}

impl ClassifyOptions<'_> {
    pub fn new(max_len: usize) -> Self {
        Self {
            max_len,
            mode: ClassifyMode::Stable,
            nilpotent_only: true,
            filter: None,
        }
    }
}

/// All strings and bands of length at most `max_len` whose modules have
/// phase `phase0` and pass the requested test, sorted.
pub fn classify_stables(
    alg: &StringAlgebra,
    z: &CentralCharge,
    phase0: &Phase,
    opts: &ClassifyOptions<'_>,
) -> Result<Vec<Classified>, StabilityError> {
    let q = alg.quiver();
    let candidates: Vec<Classified> = enumerate_strings(alg, opts.max_len)
        .into_iter()
        .map(Classified::String)
        .chain(
            enumerate_bands(alg, opts.max_len)
                .into_iter()
                .filter(|v| !(opts.nilpotent_only && v.is_oriented_cycle()))
                .map(Classified::Band),
        )
        .collect();
    let kept: Vec<Option<Classified>> = candidates
        .into_par_iter()
        .map(|c| {
            let rep = match &c {
                Classified::String(w) => string_module(alg, w, Field::Rational)?,
                Classified::Band(v) => band_module(alg, v, 1, 1, Field::Rational)?,
            };
            if z.phase(&rep.dim_vector())? != *phase0 {
                return Ok(None);
            }
            if opts.filter.is_some_and(|f| !f(&rep)) {
                return Ok(None);
            }
            let status = verdict(&rep, q, z)?.status;
            let keep = match opts.mode {
                ClassifyMode::Stable => status == Status::Stable,
                ClassifyMode::SemistableIndecomposable => status.is_semistable(),
            };
            Ok(keep.then_some(c))
        })
        .collect::<Result<_, StabilityError>>()?;
    let mut out: Vec<Classified> = kept.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtorus::DimVec;
    use crate::quiver::{jacobian_relations, Potential, Quiver};

    #[test]
    fn toral_degenerate_has_two_stables() {
        let q = Quiver::from_arrows(
            3,
            &[("a1", 0, 1), ("a2", 0, 1), ("b1", 1, 2), ("b2", 1, 2), ("c1", 2, 0), ("c2", 2, 0)],
        )
        .unwrap();
        let w = Potential::from_cycles(&q, &[(1, "a1*b1*c1"), (1, "a2*b2*c2")]).unwrap();
        let alg = StringAlgebra::new(q.clone(), &jacobian_relations(&q, &w)).unwrap();
        let z = CentralCharge::new(&[(-101, 1), (1, 1), (100, 1)]).unwrap();
        let phi = z.phase(&DimVec(vec![1, 1, 1])).unwrap();
        let found = classify_stables(&alg, &z, &phi, &ClassifyOptions::new(8)).unwrap();
        let shown: Vec<String> = found.iter().map(|c| c.display(&alg)).collect();
        assert_eq!(shown, vec!["a1 b2", "a2 b1"]);
    }

    #[test]
    fn barbell_noninvertible_family() {
        let alg = crate::strings::tests::barbell();
        let c = alg.quiver().arrow_index("c").unwrap();
        let z = CentralCharge::new(&[(-1, 1), (1, 1)]).unwrap();
        let phi = z.phase(&DimVec(vec![1, 1])).unwrap();
        let not_iso = move |m: &MatrixRep| m.dims[0] != m.dims[1] || m.rank(c) < m.dims[0];
        let opts = ClassifyOptions {
            max_len: 11,
            mode: ClassifyMode::SemistableIndecomposable,
            nilpotent_only: true,
            filter: Some(&not_iso),
        };
        let found = classify_stables(&alg, &z, &phi, &opts).unwrap();
        let shown: Vec<String> = found.iter().map(|c| c.display(&alg)).collect();
        assert_eq!(shown, vec!["a c b", "a c b c- a c b", "a c b c- a c b c- a c b"]);
    }
}
