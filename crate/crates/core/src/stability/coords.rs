use std::collections::{BTreeSet, HashSet};

use crate::qtorus::DimVec;
use crate::quiver::Quiver;
use crate::strings::MatrixRep;

/// Dimension vectors of the proper nonzero coordinate submodules: subsets
/// of the distinguished basis closed under every arrow.
pub fn coordinate_submodule_dimvecs(rep: &MatrixRep, q: &Quiver) -> BTreeSet<DimVec> {
    let n = rep.total_dim();
    let edges: Vec<(usize, usize)> = rep.successor_edges(q).into_iter().filter(|(u, v)| u != v).collect();
    let verts: Vec<usize> = rep.basis.iter().map(|b| b.0).collect();
    let chain_like = edges
        .iter()
        .all(|&(u, v)| u.abs_diff(v) == 1 || (u.min(v) == 0 && u.max(v) + 1 == n));
    let mut out = if chain_like {
        chain_scan(n, &edges, &verts, q.vertex_count())
    } else {
        closure_scan(n, &edges, &verts, q.vertex_count())
    };
    out.remove(&DimVec::zero(q.vertex_count()));
    out.remove(&rep.dim_vector());
    out
}

/// Left-to-right scan for bases whose edges join neighbours, plus
/// possibly the wrap edge between the last and first element.
fn chain_scan(n: usize, edges: &[(usize, usize)], verts: &[usize], rank: usize) -> BTreeSet<DimVec> {
    // an edge (u, v) means: u in the subset forces v in the subset
    let ok = |inc: &dyn Fn(usize) -> bool, k: usize| {
        edges
            .iter()
            .filter(|&&(u, v)| u.max(v) == k && (u.abs_diff(v) == 1 || k + 1 == n))
            .all(|&(u, v)| !inc(u) || inc(v))
    };
    // state: (first included, previous included, class so far)
    let mut states: HashSet<(bool, bool, Vec<u32>)> = HashSet::new();
    states.insert((false, false, vec![0; rank]));
    for k in 0..n {
        let mut next = HashSet::with_capacity(states.len() * 2);
        for (first, prev, d) in &states {
            for here in [false, true] {
                let first = if k == 0 { here } else { *first };
                let inc = |i: usize| {
                    if i == k {
                        here
                    } else if i + 1 == k {
                        *prev
                    } else {
                        debug_assert_eq!(i, 0);
                        first
                    }
                };
                if !ok(&inc, k) {
                    continue;
                }
                let mut d = d.clone();
                if here {
                    d[verts[k]] += 1;
                }
                next.insert((first, here, d));
            }
        }
        states = next;
    }
    states.into_iter().map(|(_, _, d)| DimVec(d)).collect()
}

/// Backtracking over all closed subsets with forward propagation.
fn closure_scan(n: usize, edges: &[(usize, usize)], verts: &[usize], rank: usize) -> BTreeSet<DimVec> {
    let mut succ = vec![Vec::new(); n];
    let mut pred = vec![Vec::new(); n];
    for &(u, v) in edges {
        succ[u].push(v);
        pred[v].push(u);
    }
    let mut out = BTreeSet::new();
    let mut state = vec![None; n];
    closure_rec(0, &mut state, &succ, &pred, verts, rank, &mut out);
    out
}

fn closure_rec(
    k: usize,
    state: &mut Vec<Option<bool>>,
    succ: &[Vec<usize>],
    pred: &[Vec<usize>],
    verts: &[usize],
    rank: usize,
    out: &mut BTreeSet<DimVec>,
) {
    let Some(k) = (k..state.len()).find(|&i| state[i].is_none()) else {
        let mut d = vec![0u32; rank];
        for (i, s) in state.iter().enumerate() {
            if *s == Some(true) {
                d[verts[i]] += 1;
            }
        }
        out.insert(DimVec(d));
        return;
    };
    for choice in [false, true] {
        let mut s = state.clone();
        if propagate(&mut s, k, choice, succ, pred) {
            closure_rec(k + 1, &mut s, succ, pred, verts, rank, out);
        }
    }
}

/// Sets `k` and everything it forces; false on contradiction.
fn propagate(state: &mut [Option<bool>], k: usize, value: bool, succ: &[Vec<usize>], pred: &[Vec<usize>]) -> bool {
    let mut stack = vec![(k, value)];
    while let Some((i, v)) = stack.pop() {
        match state[i] {
            Some(x) if x == v => continue,
            Some(_) => return false,
            None => state[i] = Some(v),
        }
        let forced = if v { &succ[i] } else { &pred[i] };
        stack.extend(forced.iter().map(|&j| (j, v)));
    }
    true
}
