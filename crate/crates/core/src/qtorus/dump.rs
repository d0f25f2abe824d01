use super::{DimVec, QTorusError, QTorusSeries, RingElem, SkewForm};

/// Canonical text form of a series.
///
/// ```text
/// series rank=2 truncation=2 skew=0,-1;1,0
/// t^(0,0): +1s^0
/// t^(1,0): -1s^1 / (1-q^1)
/// ```
pub fn dump(series: &QTorusSeries) -> String {
    let skew = series
        .skew()
        .matrix()
        .iter()
        .map(|row| row.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";");
    let mut out = format!(
        "series rank={} truncation={} skew={}\n",
        series.rank(),
        series.truncation(),
        skew
    );
    for (d, c) in series.terms() {
        out.push_str(&format!("t^{d}: {c}\n"));
    }
    out
}

fn header_field<'a>(field: Option<&'a str>, key: &str) -> Result<&'a str, QTorusError> {
    field
        .and_then(|f| f.strip_prefix(key))
        .and_then(|f| f.strip_prefix('='))
        .ok_or_else(|| QTorusError::Parse(format!("line 1: expected `{key}=`")))
}

/// Parses the output of [`dump`]; only canonical text is accepted.
pub fn parse_dump(text: &str) -> Result<QTorusSeries, QTorusError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| QTorusError::Parse("empty series dump".into()))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("series") {
        return Err(QTorusError::Parse("line 1: expected `series` header".into()));
    }
    let bad = |what: &str| QTorusError::Parse(format!("line 1: bad {what}"));
    let rank: usize = header_field(fields.next(), "rank")?
        .parse()
        .map_err(|_| bad("rank"))?;
    let truncation: u32 = header_field(fields.next(), "truncation")?
        .parse()
        .map_err(|_| bad("truncation"))?;
    let matrix = header_field(fields.next(), "skew")?
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.parse::<i64>().map_err(|_| bad("skew entry")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if matrix.len() != rank {
        return Err(bad("skew size"));
    }
    let skew = SkewForm::new(matrix)?;
    let mut terms = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        let with_line = |e: QTorusError| QTorusError::Parse(format!("line {lineno}: {e}"));
        let (class, coeff) = line
            .strip_prefix("t^")
            .and_then(|l| l.split_once(": "))
            .ok_or_else(|| QTorusError::Parse(format!("line {lineno}: expected `t^(..): ..`")))?;
        let d = DimVec::parse(class).map_err(with_line)?;
        if d.rank() != rank {
            return Err(QTorusError::Parse(format!("line {lineno}: class {d} has wrong rank")));
        }
        let c = RingElem::parse(coeff).map_err(with_line)?;
        terms.push((d, c));
    }
    let mut sorted = terms.clone();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    sorted.dedup_by(|a, b| a.0 == b.0);
    if sorted.len() != terms.len() || sorted.iter().zip(&terms).any(|(a, b)| a.0 != b.0) {
        return Err(QTorusError::Parse("classes not in canonical order".into()));
    }
    let series = QTorusSeries::from_terms(skew, truncation, terms)?;
    if dump(&series) != text {
        return Err(QTorusError::Parse("series text is not canonical".into()));
    }
    Ok(series)
}
