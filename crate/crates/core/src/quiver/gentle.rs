use super::{Quiver, RelationSet};

/// Outcome of the locally-gentle test: the first violated condition (1–4)
/// and a witness, or none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GentleReport {
    pub violation: Option<(u8, String)>,
}

impl GentleReport {
    pub fn is_gentle(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the four locally-gentle conditions in order:
/// 1. at most two arrows start and at most two end at each vertex;
/// 2. `I` is generated by paths of length two;
/// 3. each arrow has at most one allowed predecessor and successor;
/// 4. each arrow has at most one forbidden predecessor and successor.
pub fn is_locally_gentle(q: &Quiver, rel: &RelationSet) -> GentleReport {
    let fail = |n: u8, msg: String| GentleReport {
        violation: Some((n, msg)),
    };
    for v in 0..q.vertex_count() {
        let out = q.arrows_from(v).count();
        let inc = q.arrows_into(v).count();
        if out > 2 || inc > 2 {
            return fail(1, format!("vertex {} has {out} outgoing and {inc} incoming arrows", v + 1));
        }
    }
    let forbidden = match rel.forbidden_pairs(q) {
        Ok(f) => f,
        Err(e) => return fail(2, e.to_string()),
    };
    let name = |a: usize| q.arrow(a).name.clone();
    for (cond, want_forbidden) in [(3u8, false), (4u8, true)] {
        for b in 0..q.arrows().len() {
            let preds: Vec<usize> = q
                .arrows_into(q.arrow(b).source)
                .filter(|&a| forbidden.contains(&(a, b)) == want_forbidden)
                .collect();
            if preds.len() > 1 {
                return fail(
                    cond,
                    format!("arrow {} has predecessors {} and {}", name(b), name(preds[0]), name(preds[1])),
                );
            }
            let succs: Vec<usize> = q
                .arrows_from(q.arrow(b).target)
                .filter(|&c| forbidden.contains(&(b, c)) == want_forbidden)
                .collect();
            if succs.len() > 1 {
                return fail(
                    cond,
                    format!("arrow {} has successors {} and {}", name(b), name(succs[0]), name(succs[1])),
                );
            }
        }
    }
    GentleReport { violation: None }
}
