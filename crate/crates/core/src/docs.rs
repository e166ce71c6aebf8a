//! Structured text documents for operation tables, factor maps, algebras,
//! decomposition results and law reports. All labels are integers; nothing
//! here involves floating point.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{GradedAlgebra, GradingKind};
use crate::error::{Error, Result};
use crate::factor::FactorMap;
use crate::group::AbelianGroup;
use crate::nary::NaryOp;
use crate::report::VerificationReport;
use crate::scalar::{ScalarBackend, UnitScalar};
use crate::toyoda::LinearPresentation;

fn parse_err(msg: impl ToString) -> Error {
    Error::Parse(msg.to_string())
}

/// Operation table document: nested arrays, innermost index = last argument.
pub fn op_to_doc(op: &NaryOp) -> Value {
    fn nest(table: &[usize], order: usize, depth: usize) -> Value {
        if depth == 0 {
            return json!(table[0]);
        }
        let chunk = table.len() / order;
        let parts: Vec<Value> = (0..order)
            .map(|i| nest(&table[i * chunk..(i + 1) * chunk], order, depth - 1))
            .collect();
        Value::Array(parts)
    }
    json!({
        "arity": op.arity(),
        "order": op.order(),
        "table": nest(op.table(), op.order(), op.arity()),
    })
}

pub fn op_from_doc(doc: &Value) -> Result<NaryOp> {
    let arity = doc
        .get("arity")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("missing arity"))? as usize;
    let order = doc
        .get("order")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("missing order"))? as usize;
    let table_val = doc.get("table").ok_or_else(|| parse_err("missing table"))?;
    let mut table = Vec::new();
    fn flatten(v: &Value, order: usize, depth: usize, out: &mut Vec<usize>) -> Result<()> {
        if depth == 0 {
            let x = v
                .as_u64()
                .ok_or_else(|| parse_err("table entry is not an integer"))?;
            out.push(x as usize);
            return Ok(());
        }
        let arr = v
            .as_array()
            .ok_or_else(|| parse_err("table nesting does not match arity"))?;
        if arr.len() != order {
            return Err(parse_err(format!(
                "table axis has {} entries, expected {order}",
                arr.len()
            )));
        }
        for item in arr {
            flatten(item, order, depth - 1, out)?;
        }
        Ok(())
    }
    flatten(table_val, order, arity, &mut table)?;
    NaryOp::new(arity, order, table)
}

/// Factor document: group, backend, kind (bicharacter | table | constant)
/// and the kind-specific data. Tables list values in lexicographic domain
/// order.
pub fn factor_to_doc(f: &FactorMap) -> Result<Value> {
    let backend = match f.backend() {
        ScalarBackend::PrimeField(p) => json!({"kind": "prime-field", "modulus": p}),
        ScalarBackend::RootOfUnity(m) => json!({"kind": "root-of-unity", "modulus": m}),
    };
    let tab = f.tabulate()?;
    let q = f.group().order() as usize;
    let size = q.pow(f.arity() as u32);
    let mut values = Vec::with_capacity(size);
    let mut args = vec![0usize; f.arity()];
    for rank in 0..size {
        let mut r = rank;
        for slot in args.iter_mut().rev() {
            *slot = r % q;
            r /= q;
        }
        values.push(tab.eval(&args)?.value);
    }
    Ok(json!({
        "group": f.group().orders(),
        "backend": backend,
        "kind": "table",
        "arity": f.arity(),
        "data": values,
    }))
}

pub fn factor_from_doc(doc: &Value) -> Result<FactorMap> {
    let orders: Vec<u32> = doc
        .get("group")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing group"))?
        .iter()
        .map(|v| v.as_u64().map(|x| x as u32))
        .collect::<Option<_>>()
        .ok_or_else(|| parse_err("bad group orders"))?;
    let group = AbelianGroup::new(orders)?;
    let backend_doc = doc.get("backend").ok_or_else(|| parse_err("missing backend"))?;
    let modulus = backend_doc
        .get("modulus")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("missing backend modulus"))?;
    let backend = match backend_doc.get("kind").and_then(Value::as_str) {
        Some("prime-field") => ScalarBackend::prime_field(modulus)?,
        Some("root-of-unity") => ScalarBackend::root_of_unity(modulus)?,
        _ => return Err(parse_err("backend kind must be prime-field or root-of-unity")),
    };
    let kind = doc
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("missing factor kind"))?;
    match kind {
        "bicharacter" => {
            let data = doc.get("data").ok_or_else(|| parse_err("missing data"))?;
            let exps: Vec<Vec<i64>> = data
                .get("exponents")
                .and_then(Value::as_array)
                .ok_or_else(|| parse_err("missing exponents"))?
                .iter()
                .map(|row| {
                    row.as_array().map(|r| {
                        r.iter()
                            .map(|v| v.as_i64().unwrap_or(0))
                            .collect::<Vec<i64>>()
                    })
                })
                .collect::<Option<_>>()
                .ok_or_else(|| parse_err("bad exponent matrix"))?;
            let omega_raw = data.get("omega").and_then(Value::as_u64).unwrap_or(1);
            let omega = UnitScalar::new(backend, omega_raw)?;
            FactorMap::bicharacter(group, exps, omega)
        }
        "table" => {
            let arity = doc
                .get("arity")
                .and_then(Value::as_u64)
                .ok_or_else(|| parse_err("table factors need an arity"))?
                as usize;
            let values: Vec<u64> = doc
                .get("data")
                .and_then(Value::as_array)
                .ok_or_else(|| parse_err("missing data"))?
                .iter()
                .map(Value::as_u64)
                .collect::<Option<_>>()
                .ok_or_else(|| parse_err("bad table values"))?;
            FactorMap::from_table(group, backend, arity, values)
        }
        "constant" => {
            let arity = doc
                .get("arity")
                .and_then(Value::as_u64)
                .ok_or_else(|| parse_err("constant factors need an arity"))?
                as usize;
            let value = doc
                .get("data")
                .and_then(Value::as_u64)
                .ok_or_else(|| parse_err("missing data"))?;
            Ok(FactorMap::constant(
                group,
                arity,
                UnitScalar::new(backend, value)?,
            ))
        }
        other => Err(parse_err(format!("unknown factor kind {other}"))),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct StructureEntry {
    args: Vec<usize>,
    out: Vec<(usize, u64)>,
}

/// Algebra document: arity, dim, prime, grading group, per-basis grades as
/// component vectors, and the nonzero structure entries.
pub fn algebra_to_doc(alg: &GradedAlgebra) -> Value {
    let group = alg.group();
    let grades: Vec<Vec<u32>> = alg.grades().iter().map(|&g| group.decompose(g)).collect();
    let structure: Vec<Value> = alg
        .structure()
        .filter(|(_, out)| !out.is_empty())
        .map(|(args, out)| json!({"args": args, "out": out}))
        .collect();
    json!({
        "arity": alg.arity(),
        "dim": alg.dim(),
        "p": alg.prime(),
        "group": group.orders(),
        "grades": grades,
        "structure": structure,
        "unit": alg.unit(),
        "grading": match alg.grading() { GradingKind::Standard => "standard", GradingKind::Higher => "higher" },
    })
}

pub fn algebra_from_doc(doc: &Value) -> Result<GradedAlgebra> {
    let arity = doc
        .get("arity")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("missing arity"))? as usize;
    let dim = doc
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("missing dim"))? as usize;
    let p = doc
        .get("p")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("missing prime p"))?;
    let orders: Vec<u32> = doc
        .get("group")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing group"))?
        .iter()
        .map(|v| v.as_u64().map(|x| x as u32))
        .collect::<Option<_>>()
        .ok_or_else(|| parse_err("bad group orders"))?;
    let group = AbelianGroup::new(orders)?;
    let grades_doc = doc
        .get("grades")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing grades"))?;
    let mut grades = Vec::with_capacity(grades_doc.len());
    for g in grades_doc {
        let comps: Vec<u32> = g
            .as_array()
            .ok_or_else(|| parse_err("grades must be component vectors"))?
            .iter()
            .map(|v| v.as_u64().map(|x| x as u32))
            .collect::<Option<_>>()
            .ok_or_else(|| parse_err("bad grade component"))?;
        if comps.len() != group.rank() {
            return Err(parse_err("grade vector has the wrong rank"));
        }
        grades.push(group.compose(&comps));
    }
    let entries_doc: Vec<StructureEntry> =
        serde_json::from_value(doc.get("structure").cloned().unwrap_or(json!([])))
            .map_err(parse_err)?;
    let entries: Vec<(Vec<usize>, Vec<(usize, u64)>)> = entries_doc
        .into_iter()
        .map(|e| (e.args, e.out))
        .collect();
    let unit = doc.get("unit").and_then(Value::as_u64).map(|x| x as usize);
    let alg = GradedAlgebra::new(arity, dim, p, group, grades, entries, unit)?;
    Ok(match doc.get("grading").and_then(Value::as_str) {
        Some("higher") => alg.with_grading(GradingKind::Higher),
        _ => alg,
    })
}

/// Decomposition result: the presentation plus a machine-checkable
/// certificate (the rebuilt table).
pub fn presentation_to_doc(pres: &LinearPresentation, certificate: &NaryOp) -> Value {
    json!({
        "group": pres.group_table,
        "phi": pres.phi,
        "psi": pres.psi,
        "phi3": pres.phi3,
        "c": pres.c,
        "certificate": op_to_doc(certificate),
    })
}

/// Top-level report document with a stable field order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteDocument {
    pub input: String,
    pub suite: String,
    pub seed: u64,
    pub budget: u64,
    pub jobs: usize,
    pub reports: Vec<VerificationReport>,
}

impl SuiteDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("input: {}\nsuite: {}\n", self.input, self.suite));
        for r in &self.reports {
            let status = match r.status {
                crate::report::LawStatus::Pass => "pass",
                crate::report::LawStatus::Fail => "FAIL",
                crate::report::LawStatus::Skipped => "skipped",
                crate::report::LawStatus::BudgetExceeded => "budget-exceeded",
            };
            out.push_str(&format!("{:<12} {} (probes {})", r.law, status, r.probes));
            if let Some(w) = &r.witness {
                out.push_str(&format!(
                    " witness ({}) lhs={} rhs={}",
                    w.input.join(","),
                    w.lhs,
                    w.rhs
                ));
            }
            if let Some(d) = &r.detail {
                out.push_str(&format!(" [{d}]"));
            }
            out.push('\n');
        }
        out
    }
}
