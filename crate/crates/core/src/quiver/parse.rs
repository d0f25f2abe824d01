use super::{Path, Potential, Quiver, QuiverError};

/// Parses the line format
///
/// ```text
/// # barbell
/// vertices 2
/// arrow a 1 1
/// arrow c 1 2
/// arrow b 2 2
/// potential + a*a*a
/// potential + b*b*b
/// ```
///
/// The sign token may carry a multiplicity, as in `-2`.
pub fn parse_quiver(text: &str) -> Result<(Quiver, Potential), QuiverError> {
    let mut quiver: Option<Quiver> = None;
    let mut potential = Potential::zero();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| QuiverError::Parse { line, msg };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields[0] {
            "vertices" => {
                if quiver.is_some() {
                    return Err(err("repeated `vertices` line".into()));
                }
                let k = match fields[..] {
                    [_, k] => k.parse::<usize>().ok().filter(|&k| k > 0),
                    _ => None,
                };
                let k = k.ok_or_else(|| err("expected `vertices <positive integer>`".into()))?;
                quiver = Some(Quiver::new(k));
            }
            "arrow" => {
                let q = quiver
                    .as_mut()
                    .ok_or_else(|| err("`arrow` before `vertices`".into()))?;
                let [_, name, s, t] = fields[..] else {
                    return Err(err("expected `arrow <name> <src> <tgt>`".into()));
                };
                let vertex = |v: &str| {
                    v.parse::<usize>()
                        .ok()
                        .filter(|&v| v >= 1)
                        .ok_or_else(|| err(format!("bad vertex `{v}`")))
                };
                let (s, t) = (vertex(s)?, vertex(t)?);
                q.add_arrow(name, s - 1, t - 1).map_err(|e| err(e.to_string()))?;
            }
            "potential" => {
                let q = quiver
                    .as_ref()
                    .ok_or_else(|| err("`potential` before `vertices`".into()))?;
                let [_, sign, cycle] = fields[..] else {
                    return Err(err("expected `potential <+|-> <a*b*...>`".into()));
                };
                let c = parse_sign(sign).ok_or_else(|| err(format!("bad sign `{sign}`")))?;
                let path = Path::parse(q, cycle).map_err(|e| err(e.to_string()))?;
                potential.add_cycle(q, &path, c).map_err(|e| err(e.to_string()))?;
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    let q = quiver.ok_or(QuiverError::Parse {
        line: text.lines().count().max(1),
        msg: "missing `vertices` line".into(),
    })?;
    Ok((q, potential))
}

fn parse_sign(s: &str) -> Option<i64> {
    let (neg, rest) = match s.as_bytes().first()? {
        b'+' => (false, &s[1..]),
        b'-' => (true, &s[1..]),
        _ => return None,
    };
    let m: i64 = if rest.is_empty() { 1 } else { rest.parse().ok().filter(|&m| m > 0)? };
    Some(if neg { -m } else { m })
}
