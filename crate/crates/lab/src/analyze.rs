//! The `analyze` report: polar parts, transforms, criteria, certifier verdicts
//! and structural predicates for one operator.

use std::fmt::Write;

use cslab_core::symmetry::DEFAULT_PREDICATE_TOL;
use cslab_core::{
    aluthge_cs_criterion, aluthge_t, both_cs_criterion, certify_cs, cs_criterion, duggal,
    duggal_cs_criterion, is_binormal, is_centered, is_normal, is_partial_isometry, is_quasinormal,
    is_unitary, mean_cs_criterion, mean_t, polar_decompose, CertifyConfig, ComplexMatrix,
    WeightedShift, DEFAULT_RANK_TOL,
};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::format::{MatrixFile, ShiftFile, VerdictReport};
use crate::text::{fmt_matrix, fmt_real};

#[derive(Clone, Debug)]
pub enum Operator {
    Shift(WeightedShift),
    Matrix(ComplexMatrix),
}

impl Operator {
    pub fn matrix(&self) -> ComplexMatrix {
        match self {
            Operator::Shift(s) => s.to_matrix(),
            Operator::Matrix(m) => m.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PolarSection {
    pub u: MatrixFile,
    pub p: MatrixFile,
    pub u_partial_isometry: bool,
    pub u_unitary: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransformEntry {
    pub kind: String,
    pub t: Option<f64>,
    pub matrix: MatrixFile,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriteriaSection {
    pub cs: bool,
    pub duggal_cs: bool,
    pub both_cs: bool,
    pub aluthge_cs: Vec<(f64, bool)>,
    pub mean_cs: Vec<(f64, bool)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedVerdict {
    pub target: String,
    pub verdict: VerdictReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureSection {
    pub normal: bool,
    pub quasinormal: bool,
    pub binormal: bool,
    pub centered: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub input: MatrixFile,
    pub shift: Option<ShiftFile>,
    pub polar: PolarSection,
    pub transforms: Vec<TransformEntry>,
    pub criteria: Option<CriteriaSection>,
    pub verdicts: Vec<NamedVerdict>,
    pub structure: StructureSection,
}

fn label(kind: &str, t: Option<f64>) -> String {
    match t {
        Some(t) => format!("{kind}(t={})", fmt_real(t)),
        None => kind.to_string(),
    }
}

pub fn analyze(op: &Operator, ts: &[f64], cfg: &CertifyConfig) -> CliResult<AnalyzeReport> {
    for &t in ts {
        if !(0.0..=1.0).contains(&t) {
            return Err(CliError::Usage(format!("--t {t} is outside [0, 1]")));
        }
    }
    let m = op.matrix();
    let parts = polar_decompose(&m, DEFAULT_RANK_TOL)?;

    let mut transforms = vec![TransformEntry {
        kind: "duggal".into(),
        t: None,
        matrix: MatrixFile::from_matrix(&duggal(&m)?),
    }];
    for &t in ts {
        transforms.push(TransformEntry {
            kind: "aluthge".into(),
            t: Some(t),
            matrix: MatrixFile::from_matrix(&aluthge_t(&m, t)?),
        });
    }
    for &t in ts.iter().filter(|&&t| t <= 0.5) {
        transforms.push(TransformEntry {
            kind: "mean".into(),
            t: Some(t),
            matrix: MatrixFile::from_matrix(&mean_t(&m, t)?),
        });
    }

    let criteria = match op {
        Operator::Shift(s) => Some(CriteriaSection {
            cs: cs_criterion(s),
            duggal_cs: duggal_cs_criterion(s),
            both_cs: both_cs_criterion(s),
            aluthge_cs: ts
                .iter()
                .filter(|&&t| t > 0.0)
                .map(|&t| Ok((t, aluthge_cs_criterion(s, t)?)))
                .collect::<CliResult<_>>()?,
            mean_cs: ts
                .iter()
                .filter(|&&t| t <= 0.5)
                .map(|&t| Ok((t, mean_cs_criterion(s, t)?)))
                .collect::<CliResult<_>>()?,
        }),
        Operator::Matrix(_) => None,
    };

    let mut verdicts = Vec::new();
    let mut targets = vec![("T".to_string(), m.clone())];
    for tr in &transforms {
        targets.push((label(&tr.kind, tr.t), tr.matrix.to_matrix()?));
    }
    for (name, target) in targets {
        let v = certify_cs(&target, cfg)?;
        verdicts.push(NamedVerdict {
            target: name,
            verdict: VerdictReport::new(&v, cfg.tau_yes, cfg.tau_no),
        });
    }

    Ok(AnalyzeReport {
        input: MatrixFile::from_matrix(&m),
        shift: match op {
            Operator::Shift(s) => Some(ShiftFile::from_shift(s)),
            Operator::Matrix(_) => None,
        },
        polar: PolarSection {
            u: MatrixFile::from_matrix(&parts.u),
            p: MatrixFile::from_matrix(&parts.p),
            u_partial_isometry: is_partial_isometry(&parts.u, 1e-9),
            u_unitary: is_unitary(&parts.u, 1e-9),
        },
        transforms,
        criteria,
        verdicts,
        structure: StructureSection {
            normal: is_normal(&m, DEFAULT_PREDICATE_TOL),
            quasinormal: is_quasinormal(&m, DEFAULT_PREDICATE_TOL),
            binormal: is_binormal(&m, DEFAULT_PREDICATE_TOL),
            centered: is_centered(&m, DEFAULT_PREDICATE_TOL),
        },
    })
}

impl AnalyzeReport {
    pub fn render_table(&self) -> CliResult<String> {
        let mut out = String::new();
        let _ = writeln!(out, "T =");
        out.push_str(&fmt_matrix(&self.input.to_matrix()?));
        let _ = writeln!(out, "\npolar decomposition T = U|T|");
        let _ = writeln!(out, "U =");
        out.push_str(&fmt_matrix(&self.polar.u.to_matrix()?));
        let _ = writeln!(out, "|T| =");
        out.push_str(&fmt_matrix(&self.polar.p.to_matrix()?));
        let _ = writeln!(
            out,
            "U partial isometry: {}   U unitary: {}",
            self.polar.u_partial_isometry, self.polar.u_unitary
        );
        for tr in &self.transforms {
            let _ = writeln!(out, "\n{} =", label(&tr.kind, tr.t));
            out.push_str(&fmt_matrix(&tr.matrix.to_matrix()?));
        }
        if let Some(c) = &self.criteria {
            let _ = writeln!(out, "\nclosed-form criteria");
            let _ = writeln!(out, "  {:<24} {}", "cs", c.cs);
            let _ = writeln!(out, "  {:<24} {}", "duggal_cs", c.duggal_cs);
            let _ = writeln!(out, "  {:<24} {}", "both_cs", c.both_cs);
            for (t, b) in &c.aluthge_cs {
                let _ = writeln!(
                    out,
                    "  {:<24} {}",
                    format!("aluthge_cs(t={})", fmt_real(*t)),
                    b
                );
            }
            for (t, b) in &c.mean_cs {
                let _ = writeln!(
                    out,
                    "  {:<24} {}",
                    format!("mean_cs(t={})", fmt_real(*t)),
                    b
                );
            }
        }
        let _ = writeln!(out, "\ncertifier");
        let _ = writeln!(
            out,
            "  {:<24} {:<13} {:>12} {:>9}",
            "target", "status", "residual", "restarts"
        );
        for v in &self.verdicts {
            let _ = writeln!(
                out,
                "  {:<24} {:<13} {:>12} {:>9}",
                v.target,
                v.verdict.status,
                fmt_real(v.verdict.residual),
                v.verdict.restarts_used
            );
        }
        let s = &self.structure;
        let _ = writeln!(out, "\nstructure");
        let _ = writeln!(out, "  {:<24} {}", "normal", s.normal);
        let _ = writeln!(out, "  {:<24} {}", "quasinormal", s.quasinormal);
        let _ = writeln!(out, "  {:<24} {}", "binormal", s.binormal);
        let _ = writeln!(out, "  {:<24} {}", "centered", s.centered);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cslab_core::C64;

    #[test]
    fn shift_121_report() {
        let s = WeightedShift::from_real(&[1., 2., 1.]).unwrap();
        let r = analyze(&Operator::Shift(s), &[0.5], &CertifyConfig::default()).unwrap();
        let c = r.criteria.as_ref().unwrap();
        assert!(c.cs);
        assert!(!c.duggal_cs);
        assert!(r.structure.binormal);
        assert!(r.polar.u_partial_isometry && !r.polar.u_unitary);
        assert_eq!(r.verdicts[0].verdict.status, "CS");
        assert_eq!(r.verdicts[1].target, "duggal");
        assert_eq!(r.verdicts[1].verdict.status, "NotCS");
        assert!(r.render_table().unwrap().contains("duggal_cs"));
    }

    #[test]
    fn mean_at_zero_for_equal_weights() {
        let s = WeightedShift::from_real(&[1., 1., 1.]).unwrap();
        let r = analyze(&Operator::Shift(s), &[0.0], &CertifyConfig::default()).unwrap();
        let mean = r.transforms.iter().find(|t| t.kind == "mean").unwrap();
        let sd = mean.matrix.to_matrix().unwrap().superdiagonal();
        assert_eq!(
            sd,
            vec![C64::new(0.5, 0.), C64::new(1., 0.), C64::new(1., 0.)]
        );
    }

    #[test]
    fn zero_matrix_report() {
        let r = analyze(
            &Operator::Matrix(ComplexMatrix::zeros(4, 4)),
            &[0.5],
            &CertifyConfig::default(),
        )
        .unwrap();
        assert!(r.criteria.is_none());
        assert!(r.structure.normal);
        assert!(r.verdicts.iter().all(|v| v.verdict.status == "CS"));
    }

    #[test]
    fn rejects_out_of_range_t() {
        let s = WeightedShift::from_real(&[1., 1.]).unwrap();
        assert!(matches!(
            analyze(&Operator::Shift(s), &[1.5], &CertifyConfig::default()),
            Err(CliError::Usage(_))
        ));
    }
}
