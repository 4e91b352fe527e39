//! Randomized property suite over the weighted-shift family.
//!
//! The closed-form criteria are injected through [`Criteria`] so that a
//! deliberately broken implementation can be run through the same suite;
//! a suite that cannot tell the difference is not testing anything.

use std::fmt::Write;

use cslab_core::sampling::SeededRng;
use cslab_core::{
    aluthge_cs_criterion, aluthge_t, both_cs_criterion, certify_cs, cs_criterion, duggal,
    duggal_cs_criterion, mean_cs_criterion, mean_t, CertifyConfig, ComplexMatrix, CsStatus,
    LabError, WeightedShift,
};
use serde::Serialize;

use crate::format::ShiftFile;
use crate::text::fmt_list;

/// Tolerance for matrix identities checked by the suite.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Moduli drawn for random weights.
pub const MODULI: [f64; 3] = [1.0, 2.0, 3.0];

#[derive(Clone, Copy)]
pub struct Criteria {
    pub cs: fn(&WeightedShift) -> bool,
    pub duggal_cs: fn(&WeightedShift) -> bool,
    pub aluthge_cs: fn(&WeightedShift, f64) -> Result<bool, LabError>,
    pub mean_cs: fn(&WeightedShift, f64) -> Result<bool, LabError>,
    pub both_cs: fn(&WeightedShift) -> bool,
}

impl Criteria {
    pub fn reference() -> Self {
        Self {
            cs: cs_criterion,
            duggal_cs: duggal_cs_criterion,
            aluthge_cs: aluthge_cs_criterion,
            mean_cs: mean_cs_criterion,
            both_cs: both_cs_criterion,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub case: usize,
    pub shift: ShiftFile,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub n_cases: usize,
    pub passed: bool,
    pub properties: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "property suite: seed {}, {} cases per property",
            self.seed, self.n_cases
        );
        for p in &self.properties {
            let _ = writeln!(
                out,
                "{} {} ({} cases)",
                if p.passed { "[PASS]" } else { "[FAIL]" },
                p.name,
                p.cases
            );
            if let Some(c) = &p.counterexample {
                let weights: Vec<_> = c
                    .shift
                    .weights
                    .iter()
                    .map(|&[re, im]| cslab_core::C64::new(re, im))
                    .collect();
                let _ = writeln!(
                    out,
                    "    counterexample #{}: n = {}, weights {}",
                    c.case,
                    c.shift.n,
                    fmt_list(&weights)
                );
                let _ = writeln!(out, "    {}", c.detail);
            }
        }
        let _ = writeln!(
            out,
            "{}",
            if self.passed {
                "all properties PASS"
            } else {
                "suite FAILED"
            }
        );
        out
    }
}

type Check = fn(&Criteria, &mut SeededRng) -> Result<(), (WeightedShift, String)>;

pub struct Property {
    pub name: &'static str,
    pub check: Check,
}

/// Random shift, half of the time with palindromic moduli so both verdicts occur.
pub fn sample_shift(rng: &mut SeededRng, n_lo: usize, n_hi: usize) -> WeightedShift {
    let n = rng.int_range(n_lo, n_hi);
    if rng.uniform() < 0.5 {
        rng.symmetric_shift(n, &MODULI)
    } else {
        rng.shift_with_moduli(n, &MODULI)
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= cslab_core::EPS_CRIT * a.abs().max(b.abs())
}

fn fail<T>(s: &WeightedShift, detail: String) -> Result<T, (WeightedShift, String)> {
    Err((s.clone(), detail))
}

fn crit(s: &WeightedShift, r: Result<bool, LabError>) -> Result<bool, (WeightedShift, String)> {
    r.map_err(|e| (s.clone(), format!("criterion error: {e}")))
}

fn mat(
    s: &WeightedShift,
    r: Result<ComplexMatrix, LabError>,
) -> Result<ComplexMatrix, (WeightedShift, String)> {
    r.map_err(|e| (s.clone(), format!("transform error: {e}")))
}

fn agree(
    s: &WeightedShift,
    what: &str,
    m: &ComplexMatrix,
    expected: bool,
) -> Result<(), (WeightedShift, String)> {
    let cfg = CertifyConfig::default();
    let v = certify_cs(m, &cfg).map_err(|e| (s.clone(), format!("certifier error: {e}")))?;
    let ok = match v.status {
        CsStatus::Cs => expected,
        CsStatus::NotCs => !expected,
        CsStatus::Inconclusive => false,
    };
    if ok {
        Ok(())
    } else {
        fail(
            s,
            format!(
                "{what}: criterion says {expected}, certifier says {} (residual {:e})",
                v.status, v.residual
            ),
        )
    }
}

fn oracle_coherence(c: &Criteria, rng: &mut SeededRng) -> Result<(), (WeightedShift, String)> {
    let s = sample_shift(rng, 3, 6);
    let t = s.to_matrix();
    agree(&s, "T", &t, (c.cs)(&s))?;
    agree(&s, "T^D", &mat(&s, duggal(&t))?, (c.duggal_cs)(&s))
}

fn cs_implies_aluthge_half(
    c: &Criteria,
    rng: &mut SeededRng,
) -> Result<(), (WeightedShift, String)> {
    let s = sample_shift(rng, 3, 8);
    if (c.cs)(&s) && !crit(&s, (c.aluthge_cs)(&s, 0.5))? {
        return fail(
            &s,
            "T is CS but the Aluthge criterion at t = 1/2 fails".into(),
        );
    }
    Ok(())
}

fn aluthge_one_is_duggal(c: &Criteria, rng: &mut SeededRng) -> Result<(), (WeightedShift, String)> {
    let s = sample_shift(rng, 3, 8);
    let a = crit(&s, (c.aluthge_cs)(&s, 1.0))?;
    let d = (c.duggal_cs)(&s);
    if a != d {
        return fail(
            &s,
            format!("aluthge criterion at t = 1 is {a}, duggal criterion is {d}"),
        );
    }
    Ok(())
}

fn both_cs_equivalences(c: &Criteria, rng: &mut SeededRng) -> Result<(), (WeightedShift, String)> {
    let s = sample_shift(rng, 3, 8);
    let both = (c.both_cs)(&s);
    let conj = (c.cs)(&s) && (c.duggal_cs)(&s);
    let m = s.moduli();
    let equal = m.iter().all(|&x| close(x, m[0]));
    if both != conj || both != equal {
        return fail(
            &s,
            format!("both_cs = {both}, cs ∧ duggal_cs = {conj}, all moduli equal = {equal}"),
        );
    }
    Ok(())
}

fn duggal_n3_always_cs(c: &Criteria, rng: &mut SeededRng) -> Result<(), (WeightedShift, String)> {
    let s = rng.shift_with_moduli(3, &MODULI);
    if !(c.duggal_cs)(&s) {
        return fail(&s, "duggal criterion fails for n = 3".into());
    }
    Ok(())
}

fn cs_implies_mean(c: &Criteria, rng: &mut SeededRng) -> Result<(), (WeightedShift, String)> {
    let s = sample_shift(rng, 3, 8);
    if !(c.cs)(&s) {
        return Ok(());
    }
    for t in [0.1, 0.25, 0.5] {
        if !crit(&s, (c.mean_cs)(&s, t))? {
            return fail(
                &s,
                format!("T is CS but the mean criterion at t = {t} fails"),
            );
        }
    }
    Ok(())
}

/// Rephases the weights by a random diagonal unitary `D`: `D* T D` is again a
/// weighted shift with the same moduli.
fn rephase(rng: &mut SeededRng, s: &WeightedShift) -> (ComplexMatrix, WeightedShift) {
    let d = rng.diagonal_unitary(s.dim());
    let t = &(&d.adjoint() * &s.to_matrix()) * &d;
    let w = t.superdiagonal();
    (
        d,
        WeightedShift::new(w).expect("rephasing preserves moduli"),
    )
}

fn gauge_invariance(c: &Criteria, rng: &mut SeededRng) -> Result<(), (WeightedShift, String)> {
    let s = sample_shift(rng, 3, 8);
    let (_, r) = rephase(rng, &s);
    let (_, g) = s.unimodular_gauge();
    for other in [&r, &g] {
        let mut pairs = vec![
            ("cs", (c.cs)(&s), (c.cs)(other)),
            ("duggal_cs", (c.duggal_cs)(&s), (c.duggal_cs)(other)),
            ("both_cs", (c.both_cs)(&s), (c.both_cs)(other)),
        ];
        for t in [0.25, 0.5, 1.0] {
            pairs.push((
                "aluthge_cs",
                crit(&s, (c.aluthge_cs)(&s, t))?,
                crit(&s, (c.aluthge_cs)(other, t))?,
            ));
        }
        for t in [0.0, 0.25, 0.5] {
            pairs.push((
                "mean_cs",
                crit(&s, (c.mean_cs)(&s, t))?,
                crit(&s, (c.mean_cs)(other, t))?,
            ));
        }
        if let Some((name, a, b)) = pairs.into_iter().find(|(_, a, b)| a != b) {
            return fail(
                &s,
                format!("{name} changes under a diagonal unitary gauge: {a} vs {b}"),
            );
        }
    }
    Ok(())
}

fn transform_equivariance(
    _: &Criteria,
    rng: &mut SeededRng,
) -> Result<(), (WeightedShift, String)> {
    let s = sample_shift(rng, 3, 8);
    let t = s.to_matrix();
    let (d, _) = rephase(rng, &s);
    let conj = |m: &ComplexMatrix| &(&d.adjoint() * m) * &d;
    let rotated = conj(&t);
    let mut checks: Vec<(String, ComplexMatrix, ComplexMatrix)> = vec![(
        "duggal".into(),
        mat(&s, duggal(&rotated))?,
        conj(&mat(&s, duggal(&t))?),
    )];
    for x in [0.25, 0.5, 0.75] {
        checks.push((
            format!("aluthge_t({x})"),
            mat(&s, aluthge_t(&rotated, x))?,
            conj(&mat(&s, aluthge_t(&t, x))?),
        ));
    }
    for x in [0.0, 0.25, 0.5] {
        checks.push((
            format!("mean_t({x})"),
            mat(&s, mean_t(&rotated, x))?,
            conj(&mat(&s, mean_t(&t, x))?),
        ));
    }
    for (name, a, b) in checks {
        let err = a.distance(&b).unwrap_or(f64::INFINITY);
        if err > IDENTITY_TOL * (1.0 + t.frobenius_norm()) {
            return fail(
                &s,
                format!("{name}(D*TD) differs from D*{name}(T)D by {err:e}"),
            );
        }
    }
    Ok(())
}

fn transform_endpoints(_: &Criteria, rng: &mut SeededRng) -> Result<(), (WeightedShift, String)> {
    let s = sample_shift(rng, 3, 8);
    let t = s.to_matrix();
    let d = mat(&s, duggal(&t))?;
    let half = |a: &ComplexMatrix, b: &ComplexMatrix| (a + b).scale_real(0.5);
    let checks = [
        (
            "aluthge_t(T, 0) = T",
            mat(&s, aluthge_t(&t, 0.0))?,
            t.clone(),
        ),
        (
            "aluthge_t(T, 1) = T^D",
            mat(&s, aluthge_t(&t, 1.0))?,
            d.clone(),
        ),
        (
            "mean_t(T, 0) = (T + T^D)/2",
            mat(&s, mean_t(&t, 0.0))?,
            half(&t, &d),
        ),
    ];
    for (name, a, b) in checks {
        let err = a.distance(&b).unwrap_or(f64::INFINITY);
        if err > IDENTITY_TOL * (1.0 + t.frobenius_norm()) {
            return fail(&s, format!("{name} violated by {err:e}"));
        }
    }
    Ok(())
}

pub const PROPERTIES: &[Property] = &[
    Property {
        name: "certifier agrees with cs and duggal_cs criteria",
        check: oracle_coherence,
    },
    Property {
        name: "cs implies aluthge criterion at t = 1/2",
        check: cs_implies_aluthge_half,
    },
    Property {
        name: "aluthge criterion at t = 1 equals duggal criterion",
        check: aluthge_one_is_duggal,
    },
    Property {
        name: "both_cs iff cs and duggal_cs iff all moduli equal",
        check: both_cs_equivalences,
    },
    Property {
        name: "duggal transform of a 3x3 shift is cs",
        check: duggal_n3_always_cs,
    },
    Property {
        name: "cs implies mean criterion at t in {0.1, 0.25, 0.5}",
        check: cs_implies_mean,
    },
    Property {
        name: "criteria are gauge invariant",
        check: gauge_invariance,
    },
    Property {
        name: "transforms are gauge equivariant",
        check: transform_equivariance,
    },
    Property {
        name: "transform endpoints",
        check: transform_endpoints,
    },
];

/// Runs one property on `n_cases` draws; stops at the first counterexample.
/// Each property gets its own stream, derived from `seed` and its index.
pub fn run_property(
    index: usize,
    criteria: &Criteria,
    seed: u64,
    n_cases: usize,
) -> PropertyOutcome {
    let prop = &PROPERTIES[index];
    let mut rng = SeededRng::new(seed ^ ((index as u64 + 1) << 32));
    for case in 0..n_cases {
        if let Err((s, detail)) = (prop.check)(criteria, &mut rng) {
            return PropertyOutcome {
                name: prop.name.to_string(),
                cases: case + 1,
                passed: false,
                counterexample: Some(Counterexample {
                    case,
                    shift: ShiftFile::from_shift(&s),
                    detail,
                }),
            };
        }
    }
    PropertyOutcome {
        name: prop.name.to_string(),
        cases: n_cases,
        passed: true,
        counterexample: None,
    }
}

pub fn run_suite(criteria: &Criteria, seed: u64, n_cases: usize) -> SuiteReport {
    let properties: Vec<_> = (0..PROPERTIES.len())
        .map(|i| run_property(i, criteria, seed, n_cases))
        .collect();
    SuiteReport {
        seed,
        n_cases,
        passed: properties.iter().all(|p| p.passed),
        properties,
    }
}
