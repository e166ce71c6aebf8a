//! Batch law runner shared by the command line front end: parses structure
//! documents, dispatches on the structure kind and a suite selector, and
//! returns ordered per-law reports.

use serde_json::Value;

use crate::algebra::GradedAlgebra;
use crate::coherence;
use crate::error::{Error, Result};
use crate::factor::{self, FactorMap};
use crate::nary::NaryOp;
use crate::report::{ReportSet, RunConfig, VerificationReport};
use crate::tree::reversal;
use crate::{docs, toyoda};

/// A parsed input document.
pub enum Structure {
    Op(NaryOp),
    Factor(FactorMap),
    Algebra(GradedAlgebra),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Op(_) => "operation",
            Structure::Factor(_) => "factor",
            Structure::Algebra(_) => "algebra",
        }
    }
}

pub fn parse_structure(doc: &Value) -> Result<Structure> {
    if doc.get("structure").is_some() {
        return Ok(Structure::Algebra(docs::algebra_from_doc(doc)?));
    }
    if doc.get("backend").is_some() {
        return Ok(Structure::Factor(docs::factor_from_doc(doc)?));
    }
    if doc.get("table").is_some() {
        return Ok(Structure::Op(docs::op_from_doc(doc)?));
    }
    Err(Error::Parse(
        "document is not an operation table, factor or algebra".into(),
    ))
}

/// Runs the named law suite over a structure. `aux` carries the factor some
/// algebra laws are stated against.
pub fn run_suite(
    structure: &Structure,
    suite: &str,
    aux: Option<&FactorMap>,
    cfg: &RunConfig,
) -> Result<Vec<VerificationReport>> {
    let mut out: Vec<VerificationReport> = Vec::new();
    match structure {
        Structure::Op(op) => match suite {
            "mediality" => out.push(op.check_mediality(&cfg.budget, cfg.jobs)),
            "associativity" => out.push(op.check_total_associativity()),
            "quasigroup" => out.push(op.check_quasigroup()),
            "cancellative" => out.push(op.check_cancellative()),
            "full" => {
                out.push(op.check_total_associativity());
                out.push(op.check_mediality(&cfg.budget, cfg.jobs));
                out.push(op.check_cancellative());
                out.push(op.check_quasigroup());
            }
            other => return Err(Error::Parse(format!("unknown operation suite {other}"))),
        },
        Structure::Factor(f) => match (suite, f.arity()) {
            ("commutation", 2) => out.extend(factor::check_commutation_factor(f)?.reports),
            ("cocycle", 2) => out.push(factor::check_cocycle(f)?),
            ("mediality-factor", 4) => {
                out.extend(factor::check_mediality_factor4(f, cfg)?.reports)
            }
            ("full", 2) => {
                out.extend(factor::check_commutation_factor(f)?.reports);
                out.push(factor::check_cocycle(f)?);
            }
            ("full", 4) => out.extend(factor::check_mediality_factor4(f, cfg)?.reports),
            (other, arity) => {
                return Err(Error::Parse(format!(
                    "suite {other} does not apply to an arity-{arity} factor"
                )))
            }
        },
        Structure::Algebra(alg) => match suite {
            "graded" => out.push(alg.check_graded(&cfg.budget)),
            "associativity" => out.push(alg.check_associativity(&cfg.budget)),
            "almost-commutative" => {
                let eps = aux.ok_or_else(|| {
                    Error::Parse("almost-commutative needs --factor".into())
                })?;
                out.push(alg.check_almost_commutative(eps)?);
            }
            "almost-medial" => {
                let rho = aux.ok_or_else(|| Error::Parse("almost-medial needs --factor".into()))?;
                out.push(alg.check_almost_medial(rho, &cfg.budget)?);
            }
            "jacobi" => {
                let eps = aux.ok_or_else(|| Error::Parse("jacobi needs --factor".into()))?;
                out.extend(crate::bracket::check_eps_jacobi(alg, eps)?.reports);
            }
            "full" => {
                out.push(alg.check_graded(&cfg.budget));
                out.push(alg.check_associativity(&cfg.budget));
                if let Some(f) = aux {
                    match f.arity() {
                        2 => {
                            out.push(alg.check_almost_commutative(f)?);
                            out.extend(crate::bracket::check_eps_jacobi(alg, f)?.reports);
                        }
                        a if a == alg.arity() * alg.arity() => {
                            out.push(alg.check_almost_medial(f, &cfg.budget)?)
                        }
                        a => {
                            return Err(Error::Parse(format!(
                                "factor arity {a} fits neither commutativity nor mediality"
                            )))
                        }
                    }
                }
            }
            other => return Err(Error::Parse(format!("unknown algebra suite {other}"))),
        },
    }
    Ok(out)
}

/// Runs the named coherence suites for arity n. `sigma` overrides the braid
/// permutation (default: order reversal); `model` overrides the built-in
/// skeletal group models for the groupal diagrams.
pub fn run_coherence(
    n: usize,
    suite: &str,
    sigma: Option<&[usize]>,
    model: Option<&NaryOp>,
    _cfg: &RunConfig,
) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let braid_sigma: Vec<usize> = match sigma {
        Some(s) => s.to_vec(),
        None => reversal(n),
    };
    let polygon = |out: &mut Vec<VerificationReport>| -> Result<()> {
        out.push(coherence::check_polygon(n)?);
        Ok(())
    };
    let triangle = |out: &mut Vec<VerificationReport>| -> Result<()> {
        out.extend(coherence::check_triangle_units(n)?.reports);
        Ok(())
    };
    let braiding = |out: &mut Vec<VerificationReport>| -> Result<()> {
        match n {
            2 => out.push(coherence::check_hexagon()?),
            3 => out.push(coherence::check_braiding_decagon()?),
            _ => out.push(VerificationReport::skipped(
                "diag9",
                "braiding coherence is diagrammed for n in {2, 3}",
            )),
        }
        Ok(())
    };
    let braid = |out: &mut Vec<VerificationReport>| -> Result<()> {
        out.push(coherence::check_braid_relation(n, &braid_sigma)?);
        Ok(())
    };
    let medial = |out: &mut Vec<VerificationReport>| -> Result<()> {
        if n == 2 {
            out.extend(
                coherence::check_medial_coherence(coherence::MedialingChoice::Transpose)?.reports,
            );
        } else {
            out.push(VerificationReport::skipped(
                "diag16",
                "medial coherence is diagrammed for n = 2",
            ));
        }
        Ok(())
    };
    let groupal = |out: &mut Vec<VerificationReport>| -> Result<()> {
        let default_op = match n {
            2 => NaryOp::linear_mod(2, &[1, 1], 0)?,
            3 => NaryOp::linear_mod(4, &[1, 1, 1], 0)?,
            _ => {
                out.push(VerificationReport::skipped(
                    "diag6",
                    "no built-in groupal model for this arity",
                ));
                return Ok(());
            }
        };
        let op = model.cloned().unwrap_or(default_op);
        let skeletal = coherence::SkeletalGroupModel::new(op)?;
        out.extend(coherence::check_groupal_model(&skeletal)?.reports);
        Ok(())
    };
    match suite {
        "polygon" => polygon(&mut out)?,
        "triangle" => triangle(&mut out)?,
        "braiding" => braiding(&mut out)?,
        "braid" => braid(&mut out)?,
        "medial" => medial(&mut out)?,
        "groupal" => groupal(&mut out)?,
        "full" => {
            polygon(&mut out)?;
            if n <= 3 {
                triangle(&mut out)?;
            }
            braiding(&mut out)?;
            braid(&mut out)?;
            medial(&mut out)?;
            groupal(&mut out)?;
        }
        other => return Err(Error::Parse(format!("unknown coherence suite {other}"))),
    }
    Ok(out)
}

/// Counts (and optionally streams) quasigroup tables with a predicate.
pub fn run_enumerate(
    order: usize,
    arity: usize,
    predicate: &str,
    cfg: &RunConfig,
    emit_limit: usize,
    mut emit: impl FnMut(&NaryOp),
) -> Result<u64> {
    let budget = cfg.budget.max_probes;
    let mut emitted = 0usize;
    let mut matched = 0u64;
    crate::latin::for_each_quasigroup(order, arity, budget, &mut |table| {
        let op = NaryOp::new(arity, order, table.to_vec()).expect("enumerated table is closed");
        let keep = match predicate {
            "any" => true,
            "medial" => op.check_mediality(&cfg.budget, 1).passed(),
            "associative" => op.check_total_associativity().passed(),
            _ => false,
        };
        if keep {
            matched += 1;
            if emitted < emit_limit {
                emitted += 1;
                emit(&op);
            }
        }
        true
    })?;
    if !matches!(predicate, "any" | "medial" | "associative") {
        return Err(Error::Parse(format!("unknown predicate {predicate}")));
    }
    Ok(matched)
}

/// Decomposes a binary quasigroup table, returning the presentation document
/// with its certificate, or `None` when the table is not medial.
pub fn run_decompose(op: &NaryOp, cfg: &RunConfig) -> Result<Option<Value>> {
    let pres = toyoda::toyoda_decompose(op, 6, &cfg.budget)?;
    match pres {
        None => Ok(None),
        Some(p) => {
            let rebuilt = toyoda::build_linear_quasigroup(&p)?;
            if &rebuilt != op {
                return Err(Error::CrossCheck(
                    "certificate does not reproduce the input table".into(),
                ));
            }
            Ok(Some(docs::presentation_to_doc(&p, &rebuilt)))
        }
    }
}

/// Convenience wrapper collecting a report set into the suite output.
pub fn reports_of(set: ReportSet) -> Vec<VerificationReport> {
    set.reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::report::LawStatus;

    #[test]
    fn op_suites() {
        let cfg = RunConfig::default();
        let s3 = Structure::Op(models::s3_op());
        let reports = run_suite(&s3, "mediality", None, &cfg).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].status, LawStatus::Fail);
        assert_eq!(
            reports[0].witness.as_ref().unwrap().input,
            vec!["0", "1", "2", "0"]
        );

        let add5 = Structure::Op(NaryOp::linear_mod(5, &[1, 1], 0).unwrap());
        let reports = run_suite(&add5, "full", None, &cfg).unwrap();
        assert!(reports.iter().all(|r| r.passed()));
    }

    #[test]
    fn factor_suites() {
        let cfg = RunConfig::default();
        let eps = Structure::Factor(crate::factor::super_sign(3).unwrap());
        let reports = run_suite(&eps, "full", None, &cfg).unwrap();
        assert!(reports.iter().all(|r| r.passed()));
    }

    #[test]
    fn algebra_suite_with_factor() {
        let cfg = RunConfig::default();
        let alg = Structure::Algebra(models::grassmann_f3());
        let eps = crate::factor::super_sign(3).unwrap();
        let reports = run_suite(&alg, "almost-commutative", Some(&eps), &cfg).unwrap();
        assert!(reports[0].passed());
        assert!(run_suite(&alg, "almost-commutative", None, &cfg).is_err());
    }

    #[test]
    fn coherence_suites() {
        let cfg = RunConfig::default();
        let polygon = run_coherence(2, "polygon", None, None, &cfg).unwrap();
        assert!(polygon[0].passed());
        let braid = run_coherence(3, "braid", None, None, &cfg).unwrap();
        assert!(braid[0].passed());
        let full = run_coherence(3, "full", None, None, &cfg).unwrap();
        assert!(full.iter().all(|r| r.status != LawStatus::Fail));
    }

    #[test]
    fn enumerate_medial_q3() {
        let cfg = RunConfig::default();
        let count = run_enumerate(3, 2, "medial", &cfg, 0, |_| {}).unwrap();
        assert_eq!(count, 12);
        let any = run_enumerate(3, 2, "any", &cfg, 0, |_| {}).unwrap();
        assert_eq!(any, 12);
    }

    #[test]
    fn decompose_round_trip() {
        let cfg = RunConfig::default();
        let op = NaryOp::linear_mod(5, &[2, 3], 1).unwrap();
        let doc = run_decompose(&op, &cfg).unwrap().unwrap();
        let cert = docs::op_from_doc(&doc["certificate"]).unwrap();
        assert_eq!(cert, op);
        assert_eq!(run_decompose(&models::s3_op(), &cfg).unwrap(), None);
    }
}
