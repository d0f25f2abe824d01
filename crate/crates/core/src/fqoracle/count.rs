use rayon::prelude::*;

use crate::qtorus::DimVec;
use crate::quiver::{Quiver, RelationSet};
use crate::stability::Status;

use super::subreps::exhaustive_verdict;
use super::{gl_order, is_prime, CountReport, Flags, FpMatrix, FqRep, OracleError, StabilityFilter, SubspaceTable};

/// Largest number of matrix tuples either strategy will visit.
pub const ENUMERATION_GUARD: u128 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Every tuple, every test at the end.
    Plain,
    /// Arrow by arrow, discarding a partial tuple as soon as a relation
    /// among assigned arrows fails or the assigned arrows act
    /// non-nilpotently.
    Pruned,
}

/// Exact number of representations of dimension `d` over `F_p` that pass
/// the selected tests. Work is split over the matrices of the first
/// non-empty arrow; the sum does not depend on the split.
pub fn count_reps(
    q: &Quiver,
    rel: &RelationSet,
    d: &DimVec,
    p: u64,
    flags: &Flags,
    strategy: Strategy,
) -> Result<CountReport, OracleError> {
    if !is_prime(p) {
        return Err(OracleError::NotPrime(p));
    }
    if d.rank() != q.vertex_count() {
        return Err(OracleError::RankMismatch {
            expected: q.vertex_count(),
            got: d.rank(),
        });
    }
    if flags.relations && rel.bad_characteristics().contains(&p) {
        return Err(OracleError::BadCharacteristic(p));
    }
    let dims: Vec<usize> = d.0.iter().map(|&x| x as usize).collect();
    let shapes: Vec<(usize, usize)> = q.arrows().iter().map(|a| (dims[a.target], dims[a.source])).collect();
    let entries: u32 = shapes.iter().map(|(r, c)| (r * c) as u32).sum();
    let size = (p as u128).checked_pow(entries).unwrap_or(u128::MAX);
    if size > ENUMERATION_GUARD {
        return Err(OracleError::Guard { size });
    }
    let ctx = Ctx {
        q,
        rel,
        p,
        dims: &dims,
        shapes: &shapes,
        flags,
        table: SubspaceTable::new(p),
    };
    let rep = FqRep {
        p,
        dims: dims.clone(),
        maps: shapes.iter().map(|&(r, c)| FpMatrix::zeros(p, r, c)).collect(),
    };
    let raw = match shapes.iter().position(|&(r, c)| r * c > 0) {
        None => ctx.accept_full(&rep) as u128,
        Some(first) => {
            let (r, c) = shapes[first];
            let n = (p as u128).pow((r * c) as u32);
            (0..n as u64)
                .into_par_iter()
                .map(|i| {
                    let mut rep = rep.clone();
                    rep.maps[first] = FpMatrix::from_index(p, r, c, i);
                    match strategy {
                        Strategy::Plain => ctx.plain(&mut rep, first),
                        Strategy::Pruned => ctx.pruned(&mut rep, first),
                    }
                })
                .sum()
        }
    };
    Ok(CountReport {
        p,
        d: d.clone(),
        raw,
        gl_order: dims.iter().map(|&n| gl_order(p, n as u32)).product(),
        flags: flags.clone(),
    })
}

struct Ctx<'a> {
    q: &'a Quiver,
    rel: &'a RelationSet,
    p: u64,
    dims: &'a [usize],
    shapes: &'a [(usize, usize)],
    flags: &'a Flags,
    table: SubspaceTable,
}

impl Ctx<'_> {
    /// Counts completions of `rep` where arrows `..=fixed` are already set.
    fn plain(&self, rep: &mut FqRep, fixed: usize) -> u128 {
        let rest: Vec<usize> = (fixed + 1..self.shapes.len()).collect();
        let sizes: Vec<u128> = rest
            .iter()
            .map(|&a| (self.p as u128).pow((self.shapes[a].0 * self.shapes[a].1) as u32))
            .collect();
        let total: u128 = sizes.iter().product();
        let mut count = 0;
        for mut idx in 0..total {
            for (k, &a) in rest.iter().enumerate() {
                let (r, c) = self.shapes[a];
                rep.maps[a] = FpMatrix::from_index(self.p, r, c, (idx % sizes[k]) as u64);
                idx /= sizes[k];
            }
            count += self.accept_full(rep) as u128;
        }
        count
    }

    fn pruned(&self, rep: &mut FqRep, assigned: usize) -> u128 {
        if !self.partial_ok(rep, assigned) {
            return 0;
        }
        let next = assigned + 1;
        if next == self.shapes.len() {
            return self.accept_stability(rep) as u128;
        }
        let (r, c) = self.shapes[next];
        let n = (self.p as u128).pow((r * c) as u32);
        let mut count = 0;
        for i in 0..n as u64 {
            rep.maps[next] = FpMatrix::from_index(self.p, r, c, i);
            count += self.pruned(rep, next);
        }
        rep.maps[next] = FpMatrix::zeros(self.p, r, c);
        count
    }

    /// Tests that only involve arrows `..=assigned`; unassigned arrows are
    /// zero in `rep`.
    fn partial_ok(&self, rep: &FqRep, assigned: usize) -> bool {
        if self.flags.relations {
            let done = self.rel.generators.iter().filter(|g| {
                g.terms().all(|(path, _)| path.arrows.iter().all(|&a| a <= assigned))
            });
            if !done.into_iter().all(|g| rep.satisfies_one(g)) {
                return false;
            }
        }
        !self.flags.nilpotent || rep.is_nilpotent(self.q)
    }

    fn accept_full(&self, rep: &FqRep) -> bool {
        if self.flags.relations && !rep.satisfies(self.rel) {
            return false;
        }
        if self.flags.nilpotent && !rep.is_nilpotent(self.q) {
            return false;
        }
        self.accept_stability(rep)
    }

    fn accept_stability(&self, rep: &FqRep) -> bool {
        let (z, need) = match &self.flags.stability {
            StabilityFilter::None => return true,
            StabilityFilter::Semistable(z) => (z, false),
            StabilityFilter::Stable(z) => (z, true),
        };
        debug_assert_eq!(rep.dims, self.dims);
        let status = exhaustive_verdict(self.q, rep, z, &self.table)
            .expect("dimension vector is nonzero and matches the charge")
            .status;
        if need {
            status == Status::Stable
        } else {
            status.is_semistable()
        }
    }
}
