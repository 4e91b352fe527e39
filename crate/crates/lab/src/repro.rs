//! Catalog of worked examples and counterexamples, each a bundle of
//! expectations checked against the library.

use std::fmt::Write;

use cslab_core::sampling::SeededRng;
use cslab_core::symmetry::DEFAULT_PREDICATE_TOL;
use cslab_core::{
    aluthge, aluthge_cs_criterion, binormal_residuals, certify_cs, check_cs_with, cs_criterion,
    duggal, duggal_cs_criterion, flip_conjugation, is_centered, is_partial_isometry,
    is_quasinormal, is_unitary, mean_cs_criterion, mean_t, polar_decompose, AntilinearMap,
    CertifyConfig, ComplexMatrix, CsStatus, SymmetryVerdict, WeightedShift, DEFAULT_RANK_TOL,
};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::format::MatrixFile;
use crate::text::{fmt_matrix, fmt_real};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// A worked example or counterexample stated in the source material.
    Example,
    /// Obtained here by an independent hand computation.
    Derived,
    /// Holds by definition.
    Trivial,
}

#[derive(Clone, Debug, Serialize)]
pub struct Expectation {
    pub quantity: String,
    pub expected: String,
    pub observed: String,
    pub tolerance: Option<f64>,
    pub provenance: Provenance,
    pub source: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Display {
    pub label: String,
    pub matrix: MatrixFile,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub description: String,
    pub expectations: Vec<Expectation>,
    pub displays: Vec<Display>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.expectations.iter().all(|e| e.passed)
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} {} — {}",
            if self.passed() { "[PASS]" } else { "[FAIL]" },
            self.id,
            self.description
        );
        for d in &self.displays {
            let _ = writeln!(out, "  {} =", d.label);
            if let Ok(m) = d.matrix.to_matrix() {
                for line in fmt_matrix(&m).lines() {
                    let _ = writeln!(out, "  {line}");
                }
            }
        }
        for e in &self.expectations {
            let tol = e
                .tolerance
                .map(|t| format!(" (tol {})", fmt_real(t)))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "  {} {}: expected {}, observed {}{}  [{:?}: {}]",
                if e.passed { "ok  " } else { "FAIL" },
                e.quantity,
                e.expected,
                e.observed,
                tol,
                e.provenance,
                e.source
            );
        }
        out
    }
}

/// A catalog entry: `run` builds the inputs and evaluates the expectations.
pub struct ReproCase {
    pub id: &'static str,
    pub description: &'static str,
    pub run: fn(&mut Builder) -> CliResult<()>,
}

/// Collects expectations and displayed matrices while a case runs.
pub struct Builder {
    cfg: CertifyConfig,
    expectations: Vec<Expectation>,
    displays: Vec<Display>,
}

impl Builder {
    fn new(cfg: CertifyConfig) -> Self {
        Self {
            cfg,
            expectations: Vec::new(),
            displays: Vec::new(),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        quantity: &str,
        expected: String,
        observed: String,
        tolerance: Option<f64>,
        passed: bool,
        prov: Provenance,
        source: &str,
    ) {
        self.expectations.push(Expectation {
            quantity: quantity.to_string(),
            expected,
            observed,
            tolerance,
            provenance: prov,
            source: source.to_string(),
            passed,
        });
    }

    fn bool(
        &mut self,
        quantity: &str,
        expected: bool,
        observed: bool,
        prov: Provenance,
        source: &str,
    ) {
        self.push(
            quantity,
            expected.to_string(),
            observed.to_string(),
            None,
            expected == observed,
            prov,
            source,
        );
    }

    fn close(
        &mut self,
        quantity: &str,
        expected: f64,
        observed: f64,
        tol: f64,
        prov: Provenance,
        source: &str,
    ) {
        let passed = (expected - observed).abs() <= tol;
        self.push(
            quantity,
            fmt_real(expected),
            fmt_real(observed),
            Some(tol),
            passed,
            prov,
            source,
        );
    }

    fn at_most(
        &mut self,
        quantity: &str,
        bound: f64,
        observed: f64,
        prov: Provenance,
        source: &str,
    ) {
        self.push(
            quantity,
            format!("<= {}", fmt_real(bound)),
            fmt_real(observed),
            None,
            observed <= bound,
            prov,
            source,
        );
    }

    fn at_least(
        &mut self,
        quantity: &str,
        bound: f64,
        observed: f64,
        prov: Provenance,
        source: &str,
    ) {
        self.push(
            quantity,
            format!(">= {}", fmt_real(bound)),
            fmt_real(observed),
            None,
            observed >= bound,
            prov,
            source,
        );
    }

    fn matrix(
        &mut self,
        quantity: &str,
        expected: &ComplexMatrix,
        observed: &ComplexMatrix,
        tol: f64,
        prov: Provenance,
        source: &str,
    ) {
        let diff = expected.distance(observed).unwrap_or(f64::INFINITY);
        self.push(
            quantity,
            "matrix shown".to_string(),
            format!("distance {}", fmt_real(diff)),
            Some(tol),
            diff <= tol,
            prov,
            source,
        );
    }

    fn certify(
        &mut self,
        quantity: &str,
        t: &ComplexMatrix,
        expected: CsStatus,
        prov: Provenance,
        source: &str,
    ) -> CliResult<SymmetryVerdict> {
        let v = certify_cs(t, &self.cfg)?;
        let observed = format!("{} (residual {})", v.status, fmt_real(v.residual));
        let mut passed = v.status == expected;
        if v.status == CsStatus::Cs {
            // A CS verdict is only as good as its certificate.
            passed &= match &v.certificate {
                Some(j) => {
                    let map = AntilinearMap::new(j.clone())?;
                    map.is_conjugation(1e-9)
                        && check_cs_with(t, &map)? <= self.cfg.tau_yes * (1.0 + t.frobenius_norm())
                }
                None => false,
            };
        }
        self.push(
            quantity,
            expected.to_string(),
            observed,
            None,
            passed,
            prov,
            source,
        );
        Ok(v)
    }

    fn show(&mut self, label: &str, m: &ComplexMatrix) {
        self.displays.push(Display {
            label: label.to_string(),
            matrix: MatrixFile::from_matrix(m),
        });
    }
}

fn shift(w: &[f64]) -> WeightedShift {
    WeightedShift::from_real(w).expect("catalog weights are nonzero")
}

use Provenance::{Derived, Example, Trivial};

fn r1_duggal(b: &mut Builder) -> CliResult<()> {
    let s = shift(&[1., 2., 1.]);
    let t = s.to_matrix();
    let d = duggal(&t)?;
    b.show("T", &t);
    b.show("T^D", &d);
    let src = "counterexample: weights (1,2,1), n = 4";
    b.bool("cs_criterion(T)", true, cs_criterion(&s), Example, src);
    b.bool(
        "duggal_cs_criterion(T)",
        false,
        duggal_cs_criterion(&s),
        Example,
        src,
    );
    b.certify("certify(T)", &t, CsStatus::Cs, Example, src)?;
    b.certify("certify(T^D)", &d, CsStatus::NotCs, Example, src)?;
    let (direct, via) = binormal_residuals(&t);
    b.at_most(
        "||[T*T, TT*]||",
        DEFAULT_PREDICATE_TOL,
        direct,
        Example,
        src,
    );
    b.at_most("||[|T|, |T*|]||", DEFAULT_PREDICATE_TOL, via, Example, src);
    Ok(())
}

fn r1_nonunitary_u(b: &mut Builder) -> CliResult<()> {
    let t = shift(&[1., 2., 1.]).to_matrix();
    let parts = polar_decompose(&t, DEFAULT_RANK_TOL)?;
    b.show("U", &parts.u);
    b.show("|T|", &parts.p);
    let src = "polar factor of the (1,2,1) shift";
    b.bool(
        "U partial isometry",
        true,
        is_partial_isometry(&parts.u, 1e-9),
        Example,
        src,
    );
    b.bool("U unitary", false, is_unitary(&parts.u, 1e-9), Example, src);
    let projection = &parts.u.adjoint() * &parts.u;
    b.matrix(
        "U*U",
        &ComplexMatrix::diag_real(&[0., 1., 1., 1.]),
        &projection,
        1e-12,
        Derived,
        "kernel of T is span(e1)",
    );
    b.matrix(
        "U|T|",
        &t,
        &parts.reconstruct(),
        1e-12,
        Trivial,
        "polar reconstruction",
    );
    Ok(())
}

fn r2_polar_extension(b: &mut Builder) -> CliResult<()> {
    let t = shift(&[1., 2., 1.]).to_matrix();
    let parts = polar_decompose(&t, DEFAULT_RANK_TOL)?;
    let c = flip_conjugation(4);
    let j = AntilinearMap::from_basis_images(&[None, Some(3), Some(2), Some(1)])?;
    let jj = AntilinearMap::from_basis_images(&[Some(0), Some(3), Some(2), Some(1)])?;
    let cj = c.compose(&j)?;
    let cjj = c.compose(&jj)?;
    let candidate = &parts.p * &cjj;
    let d = duggal(&t)?;
    b.show("CJ", &cj);
    b.show("C∘𝒥", &cjj);
    b.show("|T|·(C∘𝒥)", &candidate);
    b.show("T^D", &d);

    let src = "extending the partial conjugation J to a conjugation";
    let u = ComplexMatrix::from_real_rows(&[
        &[0., 1., 0., 0.],
        &[0., 0., 1., 0.],
        &[0., 0., 0., 1.],
        &[0., 0., 0., 0.],
    ]);
    let cyclic = ComplexMatrix::from_real_rows(&[
        &[0., 1., 0., 0.],
        &[0., 0., 1., 0.],
        &[0., 0., 0., 1.],
        &[1., 0., 0., 0.],
    ]);
    let shown = ComplexMatrix::from_real_rows(&[
        &[0., 0., 0., 0.],
        &[0., 0., 1., 0.],
        &[0., 0., 0., 2.],
        &[1., 0., 0., 0.],
    ]);
    let td = ComplexMatrix::from_real_rows(&[
        &[0., 0., 0., 0.],
        &[0., 0., 1., 0.],
        &[0., 0., 0., 2.],
        &[0., 0., 0., 0.],
    ]);
    b.matrix("CJ = U", &u, &cj, 0.0, Example, src);
    b.matrix("CJ = polar factor of T", &parts.u, &cj, 1e-12, Example, src);
    b.matrix("C∘𝒥", &cyclic, &cjj, 0.0, Example, src);
    b.matrix("|T|·(C∘𝒥)", &shown, &candidate, 1e-12, Example, src);
    b.matrix("T^D", &td, &d, 1e-12, Example, src);
    b.bool(
        "J partial conjugation",
        true,
        j.is_partial_conjugation(1e-12),
        Example,
        src,
    );
    b.bool(
        "J conjugation",
        false,
        j.is_conjugation(1e-12),
        Example,
        "J e1 = 0",
    );
    b.bool(
        "𝒥 conjugation",
        true,
        jj.is_conjugation(1e-12),
        Example,
        src,
    );
    b.matrix("C𝒥|T| = T", &t, &(&cjj * &parts.p), 1e-12, Example, src);
    b.at_least(
        "||(|T|·C∘𝒥) − T^D||",
        0.5,
        candidate.distance(&d)?,
        Example,
        "the extension does not give the Duggal transform",
    );
    b.close(
        "||(|T|·C∘𝒥) − T^D||",
        1.0,
        candidate.distance(&d)?,
        1e-12,
        Derived,
        "only entry (4,1) differs, by 1",
    );
    Ok(())
}

fn quasinormal_equal_weights(b: &mut Builder) -> CliResult<()> {
    let t = shift(&[1., 1., 1.]).to_matrix();
    let parts = polar_decompose(&t, DEFAULT_RANK_TOL)?;
    let left = &t * &parts.p;
    let right = &parts.p * &t;
    b.show("|T|", &parts.p);
    b.show("|T|T", &right);
    let src = "equal-weight shift (1,1,1)";
    b.matrix("T|T| = T", &t, &left, 0.0, Example, src);
    b.close(
        "||(|T|T) − T||",
        1.0,
        right.distance(&t)?,
        1e-12,
        Derived,
        "|T|T loses the first row of T",
    );
    b.bool(
        "quasinormal",
        false,
        is_quasinormal(&t, DEFAULT_PREDICATE_TOL),
        Example,
        src,
    );
    let comm = t.commutator(&(&t.adjoint() * &t))?.frobenius_norm();
    b.close(
        "||[T, T*T]||",
        1.0,
        comm,
        1e-12,
        Derived,
        "[T, T*T] = e1⊗e2",
    );
    Ok(())
}

fn aluthge_n5(b: &mut Builder) -> CliResult<()> {
    let s = shift(&[1., 2., 1., 2.]);
    let t = s.to_matrix();
    let a = aluthge(&t)?;
    b.show("T", &t);
    b.show("Aluthge(T)", &a);
    let src = "n = 5 with weight moduli (1,2,1,2)";
    b.bool("cs_criterion(T)", false, cs_criterion(&s), Example, src);
    b.bool(
        "aluthge_cs_criterion(T, 1/2)",
        true,
        aluthge_cs_criterion(&s, 0.5)?,
        Example,
        src,
    );
    b.certify("certify(T)", &t, CsStatus::NotCs, Example, src)?;
    b.certify("certify(Aluthge(T))", &a, CsStatus::Cs, Example, src)?;
    Ok(())
}

fn duggal_n3(b: &mut Builder) -> CliResult<()> {
    let mut rng = SeededRng::new(b.cfg.seed);
    let s = rng.shift_with_moduli(3, &[0.5, 1.0, 2.0, 3.0]);
    let t = s.to_matrix();
    let d = duggal(&t)?;
    b.show("T", &t);
    b.show("T^D", &d);
    let src = "n = 3: the Duggal transform is nilpotent of order 2";
    b.bool(
        "duggal_cs_criterion(T)",
        true,
        duggal_cs_criterion(&s),
        Example,
        src,
    );
    b.certify("certify(T^D)", &d, CsStatus::Cs, Example, src)?;
    let square = &d * &d;
    b.at_most(
        "||(T^D)^2||",
        1e-12,
        square.frobenius_norm(),
        Derived,
        "T^D = 0 ⊕ shift of size 2",
    );
    Ok(())
}

fn mean_n4(b: &mut Builder) -> CliResult<()> {
    let s = shift(&[1., 1., 1.]);
    let t = s.to_matrix();
    let d = duggal(&t)?;
    let m = mean_t(&t, 0.0)?;
    b.show("T̂", &m);
    let src = "mean transform of the equal-weight shift, n = 4";
    b.certify("certify(T)", &t, CsStatus::Cs, Example, src)?;
    b.certify("certify(T^D)", &d, CsStatus::Cs, Example, src)?;
    b.certify("certify(T̂)", &m, CsStatus::NotCs, Example, src)?;
    b.bool(
        "mean_cs_criterion(T, 0)",
        false,
        mean_cs_criterion(&s, 0.0)?,
        Example,
        src,
    );
    let expected = [0.5, 1.0, 1.0];
    let observed: Vec<f64> = m.superdiagonal().iter().map(|z| z.re).collect();
    let dist = expected
        .iter()
        .zip(&observed)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    b.push(
        "superdiagonal(T̂)",
        "(0.5, 1, 1)".into(),
        format!("{observed:?}"),
        Some(1e-12),
        dist <= 1e-12,
        Example,
        src,
    );

    // Beyond n = 4: mean weights (α/2, α, …, α) are never palindromic.
    for n in 5..=7 {
        let s = WeightedShift::from_real(&vec![1.0; n - 1])?;
        let t = s.to_matrix();
        let m = mean_t(&t, 0.0)?;
        let src = "equal weights: first mean weight α/2 differs from the last, α";
        b.bool(
            &format!("mean_cs_criterion(T, 0), n = {n}"),
            false,
            mean_cs_criterion(&s, 0.0)?,
            Derived,
            src,
        );
        b.certify(
            &format!("certify(T̂), n = {n}"),
            &m,
            CsStatus::NotCs,
            Derived,
            src,
        )?;
    }
    Ok(())
}

fn mean_n4_criterion(b: &mut Builder) -> CliResult<()> {
    // Grid of binary-exact moduli so the surface |λ1| = |λ2| + |λ3| is hit exactly.
    let grid: Vec<f64> = (1..=8).map(|k| 0.5 * k as f64).collect();
    let (mut on, mut off, mut wrong) = (0, 0, Vec::new());
    for &a in &grid {
        for &c in &grid {
            for &e in &grid {
                let s = WeightedShift::from_real(&[a, c, e])?;
                let surface = a == c + e;
                if surface {
                    on += 1
                } else {
                    off += 1
                }
                if mean_cs_criterion(&s, 0.0)? != surface {
                    wrong.push((a, c, e));
                }
            }
        }
    }
    b.push(
        "criterion vs surface |λ1| = |λ2| + |λ3|",
        format!("agree on {} grid points ({on} on the surface)", on + off),
        format!("{} disagreements", wrong.len()),
        None,
        wrong.is_empty(),
        Example,
        "mean transform criterion, n = 4",
    );
    let src = "certifier on points of the surface and off it";
    for w in [
        [2.0, 1.0, 1.0],
        [3.0, 1.0, 2.0],
        [1.0, 1.0, 1.0],
        [2.0, 1.0, 2.0],
    ] {
        let s = WeightedShift::from_real(&w)?;
        let m = mean_t(&s.to_matrix(), 0.0)?;
        let expected = if w[0] == w[1] + w[2] {
            CsStatus::Cs
        } else {
            CsStatus::NotCs
        };
        b.certify(
            &format!("certify(T̂), weights {w:?}"),
            &m,
            expected,
            Derived,
            src,
        )?;
    }
    Ok(())
}

fn centered(b: &mut Builder) -> CliResult<()> {
    let src = "finite weighted shifts are centered";
    for w in [&[1., 2., 1.][..], &[1., 1., 1., 1.][..]] {
        let t = shift(w).to_matrix();
        b.bool(
            &format!("centered, weights {w:?}"),
            true,
            is_centered(&t, DEFAULT_PREDICATE_TOL),
            Example,
            src,
        );
    }
    Ok(())
}

pub const CATALOG: &[ReproCase] = &[
    ReproCase {
        id: "r1-duggal",
        description: "shift(1,2,1) is CS and binormal but its Duggal transform is not CS",
        run: r1_duggal,
    },
    ReproCase {
        id: "r1-nonunitary-u",
        description: "the polar factor of shift(1,2,1) is a partial isometry, not a unitary",
        run: r1_nonunitary_u,
    },
    ReproCase {
        id: "r2-polar-extension",
        description: "extending J to a conjugation 𝒥 does not turn |T|·C𝒥 into T^D",
        run: r2_polar_extension,
    },
    ReproCase {
        id: "quasinormal-equal-weights",
        description: "shift(1,1,1): T|T| = T but |T|T ≠ T, so T is not quasinormal",
        run: quasinormal_equal_weights,
    },
    ReproCase {
        id: "aluthge-n5",
        description: "n = 5, moduli (1,2,1,2): Aluthge transform CS while T is not",
        run: aluthge_n5,
    },
    ReproCase {
        id: "duggal-n3",
        description: "every Duggal transform of a 3×3 shift is CS",
        run: duggal_n3,
    },
    ReproCase {
        id: "mean-n4",
        description:
            "mean transform of shift(1,1,1) is not CS although T and T^D are (plus n = 5..7)",
        run: mean_n4,
    },
    ReproCase {
        id: "mean-n4-criterion",
        description: "n = 4 mean transform is CS exactly when |λ1| = |λ2| + |λ3|",
        run: mean_n4_criterion,
    },
    ReproCase {
        id: "centered",
        description: "shift(1,2,1) and shift(1,1,1,1) are centered",
        run: centered,
    },
];

pub fn case_ids() -> Vec<&'static str> {
    CATALOG.iter().map(|c| c.id).collect()
}

pub fn run_case(id: &str, cfg: &CertifyConfig) -> CliResult<CaseReport> {
    let case = CATALOG
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| CliError::UnknownCase(id.to_string()))?;
    let mut b = Builder::new(*cfg);
    (case.run)(&mut b)?;
    Ok(CaseReport {
        id: case.id.to_string(),
        description: case.description.to_string(),
        expectations: b.expectations,
        displays: b.displays,
    })
}

pub fn run_all(cfg: &CertifyConfig) -> CliResult<Vec<CaseReport>> {
    CATALOG.iter().map(|c| run_case(c.id, cfg)).collect()
}
