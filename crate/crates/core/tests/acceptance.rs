//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test
//! fails unless exactly the criteria in `KNOWN_UNATTAINABLE` fail.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use quiverdt::dt::{self, full_quivers, preset, preset_dt, presets, verify_preset};
use quiverdt::fqoracle::{
    count_polystable_isoclasses, count_stable_isoclasses, exhaustive_verdict, oracle_match, Flags, FqRep,
    SubspaceTable,
};
use quiverdt::qtorus::{qdilog, DimVec, HalfLaurent, RingElem, SkewForm};
use quiverdt::quiver::{jacobian_relations, Potential, Quiver, RelationSet};
use quiverdt::stability::{classify_stables, verdict, CentralCharge, Classified, ClassifyMode, ClassifyOptions};
use quiverdt::strings::{
    band_module, enumerate_bands, enumerate_strings, ext1_dim, ext_string_band_vanishes, string_module, Field,
    MatrixRep, StringAlgebra,
};

/// Criteria whose statement cannot hold as written. Criterion 9 asks for
/// `p + 1` stable classes on the triangle quiver at `(1,1,1)`; there are
/// `p` stables, and `p + 1` is the number of polystable classes.
const KNOWN_UNATTAINABLE: &[u32] = &[9];

/// Wall-clock budgets per criterion.
const BUDGETS: [(u32, u64); 10] = [
    (1, 1),
    (2, 5),
    (3, 120),
    (4, 180),
    (5, 30),
    (6, 30),
    (7, 10),
    (8, 30),
    (9, 30),
    (10, 180),
];

/// Length bound for classification and Ext checks.
const LENGTH_BOUND: usize = 12;
/// The barbell family `acb(c⁻acb)ⁿ` reaches `n = 3` at length 15.
const BARBELL_LENGTH_BOUND: usize = 15;
/// Total dimension bound for the coordinate-test comparison.
const SOUNDNESS_DIM: usize = 5;
const PRIMES: [u64; 3] = [2, 3, 5];

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn algebra(q: &Quiver, w: &Potential) -> StringAlgebra {
    StringAlgebra::new(q.clone(), &jacobian_relations(q, w)).expect("locally gentle")
}

fn show(found: &[Classified], alg: &StringAlgebra) -> BTreeSet<String> {
    found.iter().map(|c| c.display(alg)).collect()
}

fn set(words: &[&str]) -> BTreeSet<String> {
    words.iter().map(|w| w.to_string()).collect()
}

fn criterion_1() -> Outcome {
    let e = qdilog(&SkewForm::zero(1), &DimVec(vec![1]), 0, 8).map_err(|e| e.to_string())?;
    let q = rat(4);
    for d in 1..=8u32 {
        let sign = if d % 2 == 0 { 1 } else { -1 };
        let expected = RingElem::new(HalfLaurent::monomial(sign, d as i32), 1..=d).unwrap();
        let got = e.coefficient(&DimVec(vec![d]));
        check(got == expected, || format!("coefficient {d}: {got} vs {expected}"))?;
        // independent value at q = 4, s = 2: (−2)^d / ∏(1 − 4^i)
        let mut value = BigRational::from_integer(BigInt::from(-2).pow(d));
        for i in 1..=d {
            value /= BigRational::one() - num_traits::pow(q.clone(), i as usize);
        }
        let split = got.eval_at_q(&q).map_err(|e| e.to_string())?;
        let at = split.even + split.odd * rat(2);
        check(at == value, || format!("value at q=4, d={d}: {at} vs {value}"))?;
    }
    Ok("8 coefficients exact".into())
}

fn criterion_2() -> Outcome {
    let expected: [(&str, &[&str]); 8] = [
        ("type-I", &["1"]),
        ("type-II", &["2"]),
        ("drd-standard", &["q^-1/2"]),
        ("drd-toral", &["2", "q^-1/2"]),
        ("drd-III", &["4", "q^-1/2"]),
        ("nrd-standard", &["q^1/2 + q^-1/2"]),
        ("nrd-toral", &["2", "q^1/2 + q^-1/2"]),
        ("nrd-III", &["4", "q^1/2 + q^-1/2"]),
    ];
    for (name, omegas) in expected {
        let p = preset(name).map_err(|e| e.to_string())?;
        let spectrum = preset_dt(&p).map_err(|e| e.to_string())?;
        for m in 1..=dt::DT_DEPTH {
            let want = omegas.get(m as usize - 1).copied().unwrap_or("0");
            let got = spectrum.omega(m).to_q_string();
            check(got == want, || format!("{name}: Ω({m}γ) = {got}, expected {want}"))?;
        }
        verify_preset(&p).map_err(|e| e.to_string())?;
    }
    Ok("8 presets".into())
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    let mut run = |series: &quiverdt::qtorus::QTorusSeries, q: &Quiver, d: DimVec, flags: &Flags| {
        let m = oracle_match(series, q, &RelationSet::empty(), &d, &PRIMES, flags).map_err(|e| e.to_string())?;
        checked += 1;
        check(m.ok(), || format!("{d}: {:?}", m.rows))
    };
    let line = SkewForm::zero(1);
    let point = Quiver::new(1);
    let e = qdilog(&line, &DimVec(vec![1]), 0, 4).unwrap();
    for d in 1..=4 {
        run(&e, &point, DimVec(vec![d]), &Flags::default())?;
    }
    let one_loop = Quiver::from_arrows(1, &[("x", 0, 0)]).unwrap();
    let nil = qdilog(&line, &DimVec(vec![1]), -1, 3).unwrap().inv().unwrap();
    let all = qdilog(&line, &DimVec(vec![1]), 1, 3).unwrap().inv().unwrap();
    for d in 1..=3 {
        run(&nil, &one_loop, DimVec(vec![d]), &Flags::nilpotent())?;
        run(&all, &one_loop, DimVec(vec![d]), &Flags::default())?;
    }
    let cyclic = preset("drd-toral").unwrap();
    let series = dt::preset_series(&cyclic, 4).map_err(|e| e.to_string())?;
    for d in DimVec::all_up_to(2, 4) {
        if !d.is_zero() {
            run(&series, &cyclic.quiver, d, &Flags::nilpotent())?;
        }
    }
    Ok(format!("{checked} classes at p = 2, 3, 5"))
}

fn criterion_4() -> Outcome {
    let p = preset("nrd-standard").unwrap();
    let series = dt::preset_series(&p, 4).map_err(|e| e.to_string())?;
    let flags = Flags::semistable(p.charge.clone());
    let d = DimVec(vec![1, 1]);
    let m = oracle_match(&series, &p.quiver, &RelationSet::empty(), &d, &PRIMES, &flags).map_err(|e| e.to_string())?;
    check(m.ok(), || format!("(1,1): {:?}", m.rows))?;
    for row in &m.rows {
        let q = rat(row.p as i64);
        let want = (&q + rat(1)) / (&q - rat(1));
        check(row.stacky == want, || format!("p={}: {} vs {want}", row.p, row.stacky))?;
    }
    let d = DimVec(vec![2, 2]);
    let m = oracle_match(&series, &p.quiver, &RelationSet::empty(), &d, &[2], &flags).map_err(|e| e.to_string())?;
    check(m.ok(), || format!("(2,2): {:?}", m.rows))?;
    Ok(format!("(2,2) over F2: stacky {}", m.rows[0].stacky))
}

fn criterion_5() -> Outcome {
    let fulls = full_quivers();
    for (f, want) in fulls.iter().zip([set(&["a1 b2", "a2 b1"]), set(&["b1", "c2", "b2 a3 c1"])]) {
        let alg = algebra(&f.quiver, &f.potential);
        let phi = f.charge.phase(&f.class).unwrap();
        let found = classify_stables(&alg, &f.charge, &phi, &ClassifyOptions::new(LENGTH_BOUND)).map_err(|e| e.to_string())?;
        let got = show(&found, &alg);
        check(got == want, || format!("{}: {got:?}", f.name))?;
    }
    let barbell = preset("nrd-III").unwrap();
    let alg = algebra(&barbell.quiver, &barbell.potential);
    let c = barbell.quiver.arrow_index("c").unwrap();
    let not_iso = move |m: &MatrixRep| m.dims[0] != m.dims[1] || m.rank(c) < m.dims[0];
    let opts = ClassifyOptions {
        max_len: BARBELL_LENGTH_BOUND,
        mode: ClassifyMode::SemistableIndecomposable,
        nilpotent_only: true,
        filter: Some(&not_iso),
    };
    let phi = barbell.charge.phase(&DimVec(vec![1, 1])).unwrap();
    let found = classify_stables(&alg, &barbell.charge, &phi, &opts).map_err(|e| e.to_string())?;
    let got = show(&found, &alg);
    let want = set(&[
        "a c b",
        "a c b c- a c b",
        "a c b c- a c b c- a c b",
        "a c b c- a c b c- a c b c- a c b",
    ]);
    check(got == want, || format!("barbell: {got:?}"))?;
    Ok("2 + 3 stables, barbell family n ≤ 3".into())
}

fn criterion_6() -> Outcome {
    let fulls = full_quivers();
    // ordered pairs (i, j) with dim Ext¹(M_i, M_j) = 1; all others vanish
    let cases: [(&[&str], &[(usize, usize)]); 2] = [
        (&["a1 b2", "a2 b1"], &[(0, 1), (1, 0)]),
        (&["c2", "b1", "b2 a3 c1"], &[(0, 1), (0, 2), (2, 1)]),
    ];
    for (f, (names, nonzero)) in fulls.iter().zip(cases) {
        let alg = algebra(&f.quiver, &f.potential);
        let words: Vec<_> = names.iter().map(|n| alg.parse_string(n).unwrap()).collect();
        for (i, a) in words.iter().enumerate() {
            for (j, b) in words.iter().enumerate() {
                let want = usize::from(nonzero.contains(&(i, j)));
                let got = ext1_dim(&alg, a, b);
                check(got == want, || format!("{}: Ext¹(M({}), M({})) = {got}", f.name, names[i], names[j]))?;
            }
        }
    }
    let barbell = preset("nrd-III").unwrap();
    let alg = algebra(&barbell.quiver, &barbell.potential);
    let c = barbell.quiver.arrow_index("c").unwrap();
    let phi = barbell.charge.phase(&DimVec(vec![1, 1])).unwrap();
    let mut opts = ClassifyOptions::new(LENGTH_BOUND);
    opts.mode = ClassifyMode::SemistableIndecomposable;
    let found = classify_stables(&alg, &barbell.charge, &phi, &opts).map_err(|e| e.to_string())?;
    let mut c1_bands = Vec::new();
    let mut c2_strings = Vec::new();
    for m in &found {
        match m {
            Classified::Band(v) => c1_bands.push(v.clone()),
            Classified::String(w) => {
                let rep = string_module(&alg, w, Field::Rational).unwrap();
                if rep.rank(c) < rep.dims[0] || rep.dims[0] != rep.dims[1] {
                    c2_strings.push(w.clone());
                }
            }
        }
    }
    check(!c1_bands.is_empty() && c2_strings.len() >= 3, || "empty barbell categories".into())?;
    for w in &c2_strings {
        for v in &c1_bands {
            let (into, from) = ext_string_band_vanishes(&alg, w, v);
            check(into && from, || {
                format!("Ext between {} and {}", w.display(alg.quiver()), v.display(alg.quiver()))
            })?;
        }
    }
    Ok(format!("{} C₁ bands × {} C₂ strings", c1_bands.len(), c2_strings.len()))
}

fn criterion_7() -> Outcome {
    let a = dt::barbell_assemble(8).map_err(|e| e.to_string())?;
    check(a.equal(), || format!("mismatch at {:?}", a.mismatch))?;
    let neg = dt::barbell_assemble_with(8, &DimVec(vec![1, 1])).map_err(|e| e.to_string())?;
    check(!neg.equal(), || "C₂ on (1,1) was not detected".into())?;
    Ok("N = 8 equal".into())
}

fn criterion_8() -> Outcome {
    let n = 7;
    let r = dt::wallcross_check(n).map_err(|e| e.to_string())?;
    check(r.equal(), || format!("mismatch at {:?}", r.mismatch))?;
    let factors = dt::wallcross_factors(n);
    for (i, f) in factors.iter().enumerate() {
        let r = dt::wallcross_with(n, Some(i)).map_err(|e| e.to_string())?;
        check(!r.equal(), || format!("dropping {} kept equality", f.factor))?;
    }
    Ok(format!("N = 7 equal; {} negative controls fail", factors.len()))
}

fn criterion_9() -> Outcome {
    let p = preset("nrd-toral").unwrap();
    let d = DimVec(vec![1, 1, 1]);
    let mut detail = Vec::new();
    let mut ok = true;
    for prime in PRIMES {
        let stable = count_stable_isoclasses(&p.quiver, &RelationSet::empty(), &d, prime, &p.charge).map_err(|e| e.to_string())?;
        let poly = count_polystable_isoclasses(&p.quiver, &RelationSet::empty(), &d, prime, &p.charge).map_err(|e| e.to_string())?;
        ok &= stable == prime as u128 + 1;
        detail.push(format!("p={prime}: stable {stable}, polystable {poly}"));
    }
    let text = detail.join("; ");
    if ok {
        Ok(text)
    } else {
        Err(format!("expected p+1 stables; {text}"))
    }
}

fn modules_up_to(alg: &StringAlgebra, dim: usize) -> Vec<(String, MatrixRep)> {
    let q = alg.quiver();
    let mut out = Vec::new();
    for w in enumerate_strings(alg, dim.saturating_sub(1)) {
        let m = string_module(alg, &w, Field::Prime(2)).unwrap();
        out.push((w.display(q), m));
    }
    for v in enumerate_bands(alg, dim) {
        for mult in 1.. {
            if v.len() * mult as usize > dim {
                break;
            }
            let m = band_module(alg, &v, 1, mult, Field::Prime(2)).unwrap();
            out.push((format!("{} m={mult}", v.display(q)), m));
        }
    }
    out
}

fn criterion_10() -> Outcome {
    let mut cases: Vec<(String, Quiver, Potential, CentralCharge)> = presets()
        .into_iter()
        .map(|p| (p.name.to_string(), p.quiver, p.potential, p.charge))
        .collect();
    cases.extend(full_quivers().into_iter().map(|f| (f.name.to_string(), f.quiver, f.potential, f.charge)));
    let table = SubspaceTable::new(2);
    let mut compared = 0;
    for (name, q, w, z) in &cases {
        let alg = algebra(q, w);
        for (label, m) in modules_up_to(&alg, SOUNDNESS_DIM) {
            let coord = verdict(&m, q, z).map_err(|e| e.to_string())?;
            let rep = FqRep::from_matrix_rep(q, &m, 2);
            let full = exhaustive_verdict(q, &rep, z, &table).map_err(|e| e.to_string())?;
            check(coord.status == full.status, || {
                format!("{name} {label}: coordinate {} vs exhaustive {}", coord.status, full.status)
            })?;
            compared += 1;
        }
    }
    Ok(format!("{compared} modules over {} quivers", cases.len()))
}

#[test]
fn acceptance() {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "quantum dilogarithm coefficients", criterion_1),
        (2, "refined invariants of the eight presets", criterion_2),
        (3, "point counts against closed forms", criterion_3),
        (4, "Kronecker semistable counts", criterion_4),
        (5, "stable classification", criterion_5),
        (6, "extension groups", criterion_6),
        (7, "barbell assembly", criterion_7),
        (8, "wall-crossing identity", criterion_8),
        (9, "triangle stable count p + 1", criterion_9),
        (10, "coordinate test against subspace enumeration", criterion_10),
    ];
    let mut failed = Vec::new();
    for (id, title, run) in criteria {
        let budget = Duration::from_secs(BUDGETS.iter().find(|b| b.0 == id).unwrap().1);
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => Err(format!("{msg}; over budget {budget:?}")),
            other => other,
        };
        let known = if KNOWN_UNATTAINABLE.contains(&id) { " (known unattainable)" } else { "" };
        match outcome {
            Ok(msg) => println!("criterion {id:>2} PASS {title}: {msg} [{:.2}s]", elapsed.as_secs_f64()),
            Err(msg) => {
                println!("criterion {id:>2} FAIL{known} {title}: {msg} [{:.2}s]", elapsed.as_secs_f64());
                failed.push(id);
            }
        }
    }
    assert_eq!(failed, KNOWN_UNATTAINABLE, "unexpected set of failing criteria");
}
