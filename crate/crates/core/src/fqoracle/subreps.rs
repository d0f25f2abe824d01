use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::qtorus::DimVec;
use crate::quiver::Quiver;
use crate::stability::{CentralCharge, Phase, StabilityError, StabilityVerdict, Status};

use super::{subspaces, FpMatrix, FqRep};

/// Memoized lists of all `k`-dimensional subspaces of `F_p^n`.
#[derive(Debug, Default)]
pub struct SubspaceTable {
    p: u64,
    cache: RwLock<HashMap<(usize, usize), Arc<Vec<FpMatrix>>>>,
}

impl SubspaceTable {
    pub fn new(p: u64) -> Self {
        Self {
            p,
            cache: RwLock::default(),
        }
    }

    pub fn get(&self, n: usize, k: usize) -> Arc<Vec<FpMatrix>> {
        if let Some(v) = self.cache.read().expect("poisoned").get(&(n, k)) {
            return v.clone();
        }
        let v = Arc::new(subspaces(self.p, n, k));
        self.cache.write().expect("poisoned").insert((n, k), v.clone());
        v
    }
}

/// Whether `rep` has a subrepresentation of dimension vector `e`.
pub(crate) fn has_subrep(q: &Quiver, rep: &FqRep, e: &DimVec, table: &SubspaceTable) -> bool {
    let choices: Vec<Arc<Vec<FpMatrix>>> = (0..rep.dims.len())
        .map(|v| table.get(rep.dims[v], e.0[v] as usize))
        .collect();
    let mut chosen: Vec<&FpMatrix> = Vec::with_capacity(choices.len());
    search(q, rep, &choices, &mut chosen)
}

fn search<'a>(q: &Quiver, rep: &FqRep, choices: &'a [Arc<Vec<FpMatrix>>], chosen: &mut Vec<&'a FpMatrix>) -> bool {
    let v = chosen.len();
    if v == choices.len() {
        return true;
    }
    for u in choices[v].iter() {
        chosen.push(u);
        let closed = q.arrows().iter().enumerate().all(|(a, arr)| {
            if arr.source.max(arr.target) != v {
                return true;
            }
            let src = chosen[arr.source];
            if src.rows == 0 {
                return true;
            }
            rep.maps[a].mul(&src.transpose()).columns_in_span(chosen[arr.target])
        });
        if closed && search(q, rep, choices, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Stability verdict over all `F_p`-subrepresentations. The witness is the
/// smallest class of maximal phase, matching the coordinate verdict.
pub fn exhaustive_verdict(
    q: &Quiver,
    rep: &FqRep,
    z: &CentralCharge,
    table: &SubspaceTable,
) -> Result<StabilityVerdict, StabilityError> {
    let d = rep.dim_vector();
    let phi = z.phase(&d)?;
    let mut candidates: Vec<(Phase, DimVec)> = Vec::new();
    for e in d.sub_vectors() {
        if e.is_zero() || e == d {
            continue;
        }
        let pe = z.phase(&e)?;
        if pe >= phi {
            candidates.push((pe, e));
        }
    }
    candidates.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    for (pe, e) in candidates {
        if has_subrep(q, rep, &e, table) {
            let status = if pe > phi {
                Status::Unstable
            } else {
                Status::StrictlySemistable
            };
            return Ok(StabilityVerdict {
                status,
                witness: Some(e),
            });
        }
    }
    Ok(StabilityVerdict {
        status: Status::Stable,
        witness: None,
    })
}
