//! Python bindings: the main types (operation tables, factor maps, graded
//! algebras) and the law checks, with reports returned as JSON strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use polymedial_core::coherence::{self, MedialingChoice, SkeletalGroupModel};
use polymedial_core::docs;
use polymedial_core::report::{ReportSet, RunConfig, VerificationReport};
use polymedial_core::suite;
use polymedial_core::toyoda;
use polymedial_core::{factor, models, AbelianGroup, FactorMap, GradedAlgebra, NaryOp};
use polymedial_core::{ScalarBackend, UnitScalar};

fn pyerr(e: polymedial_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn report_json(r: &VerificationReport) -> String {
    serde_json::to_string_pretty(r).expect("report serializes")
}

fn reports_json(rs: &[VerificationReport]) -> String {
    serde_json::to_string_pretty(rs).expect("reports serialize")
}

fn set_json(set: ReportSet) -> String {
    reports_json(&set.reports)
}

fn backend_of(kind: &str, modulus: u64) -> PyResult<ScalarBackend> {
    match kind {
        "prime-field" => ScalarBackend::prime_field(modulus).map_err(pyerr),
        "root-of-unity" => ScalarBackend::root_of_unity(modulus).map_err(pyerr),
        other => Err(PyValueError::new_err(format!("unknown backend {other}"))),
    }
}

/// A finite n-ary operation table.
#[pyclass(name = "NaryOp", skip_from_py_object)]
#[derive(Clone)]
struct PyNaryOp {
    inner: NaryOp,
}

#[pymethods]
impl PyNaryOp {
    /// Parses an operation table document (JSON).
    #[staticmethod]
    fn from_json(doc: &str) -> PyResult<Self> {
        let value: serde_json::Value =
            serde_json::from_str(doc).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyNaryOp {
            inner: docs::op_from_doc(&value).map_err(pyerr)?,
        })
    }

    /// mu[a_1..a_n] = sum coeff_i a_i + c (mod order).
    #[staticmethod]
    fn linear_mod(order: usize, coeffs: Vec<u64>, c: u64) -> PyResult<Self> {
        Ok(PyNaryOp {
            inner: NaryOp::linear_mod(order, &coeffs, c).map_err(pyerr)?,
        })
    }

    /// The symmetric group S3 with labels e,(12),(13),(23),(123),(132).
    #[staticmethod]
    fn s3() -> Self {
        PyNaryOp {
            inner: models::s3_op(),
        }
    }

    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn eval(&self, args: Vec<usize>) -> PyResult<usize> {
        if args.len() != self.inner.arity() || args.iter().any(|&a| a >= self.inner.order()) {
            return Err(PyValueError::new_err("bad argument tuple"));
        }
        Ok(self.inner.eval(&args))
    }

    /// Row-major matrix polyad product of n^2 labels.
    fn eval_matrix(&self, entries: Vec<usize>) -> PyResult<usize> {
        let n = self.inner.arity();
        let m = polymedial_core::MatrixPolyad::new(n, entries).map_err(pyerr)?;
        self.inner.eval_matrix_polyad(&m).map_err(pyerr)
    }

    fn check_mediality(&self) -> String {
        let cfg = RunConfig::default();
        report_json(&self.inner.check_mediality(&cfg.budget, 1))
    }

    fn check_total_associativity(&self) -> String {
        report_json(&self.inner.check_total_associativity())
    }

    fn check_quasigroup(&self) -> String {
        report_json(&self.inner.check_quasigroup())
    }

    fn check_cancellative(&self) -> String {
        report_json(&self.inner.check_cancellative())
    }

    fn querelement(&self, g: usize) -> PyResult<usize> {
        self.inner.querelement(g).map_err(pyerr)
    }

    fn idempotents(&self) -> Vec<usize> {
        self.inner.find_idempotents()
    }

    fn units(&self) -> Vec<usize> {
        self.inner.find_units()
    }

    /// Toyoda decomposition: the presentation document with certificate, or
    /// None when the table is not medial.
    fn decompose(&self) -> PyResult<Option<String>> {
        let cfg = RunConfig::default();
        Ok(suite::run_decompose(&self.inner, &cfg)
            .map_err(pyerr)?
            .map(|doc| serde_json::to_string_pretty(&doc).expect("serializes")))
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&docs::op_to_doc(&self.inner)).expect("serializes")
    }
}

/// A unit-valued factor map on tuples of grading-group elements.
#[pyclass(name = "FactorMap", skip_from_py_object)]
#[derive(Clone)]
struct PyFactorMap {
    inner: FactorMap,
}

#[pymethods]
impl PyFactorMap {
    #[staticmethod]
    fn from_json(doc: &str) -> PyResult<Self> {
        let value: serde_json::Value =
            serde_json::from_str(doc).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyFactorMap {
            inner: docs::factor_from_doc(&value).map_err(pyerr)?,
        })
    }

    /// The grading sign (-1)^(a'b') on Z2 over F_p.
    #[staticmethod]
    fn super_sign(p: u64) -> PyResult<Self> {
        Ok(PyFactorMap {
            inner: factor::super_sign(p).map_err(pyerr)?,
        })
    }

    #[staticmethod]
    fn bicharacter(
        orders: Vec<u32>,
        exponents: Vec<Vec<i64>>,
        backend: &str,
        modulus: u64,
        omega: u64,
    ) -> PyResult<Self> {
        let group = AbelianGroup::new(orders).map_err(pyerr)?;
        let b = backend_of(backend, modulus)?;
        let w = UnitScalar::new(b, omega).map_err(pyerr)?;
        Ok(PyFactorMap {
            inner: FactorMap::bicharacter(group, exponents, w).map_err(pyerr)?,
        })
    }

    /// The 4-ary factor rho(a,b,c,d) = eps(b,c).
    #[staticmethod]
    fn bridge(eps: &PyFactorMap) -> PyResult<Self> {
        Ok(PyFactorMap {
            inner: FactorMap::bridge(eps.inner.clone()).map_err(pyerr)?,
        })
    }

    /// The n^2-ary mediality factor of an eps-commutative algebra: eps over
    /// every index pair whose order flips under transposition.
    #[staticmethod]
    fn transpose_inversions(eps: &PyFactorMap, n: usize) -> PyResult<Self> {
        Ok(PyFactorMap {
            inner: FactorMap::transpose_inversions(eps.inner.clone(), n).map_err(pyerr)?,
        })
    }

    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn eval(&self, args: Vec<usize>) -> PyResult<String> {
        Ok(self.inner.eval(&args).map_err(pyerr)?.to_string())
    }

    /// Laws e01-e03 plus e00 and the derived consequences.
    fn check_commutation(&self) -> PyResult<String> {
        Ok(set_json(
            factor::check_commutation_factor(&self.inner).map_err(pyerr)?,
        ))
    }

    fn check_cocycle(&self) -> PyResult<String> {
        Ok(report_json(
            &factor::check_cocycle(&self.inner).map_err(pyerr)?,
        ))
    }

    /// Laws r01, raa, r02, r03 for arity-4 factors.
    fn check_mediality4(&self) -> PyResult<String> {
        let cfg = RunConfig::default();
        Ok(set_json(
            factor::check_mediality_factor4(&self.inner, &cfg).map_err(pyerr)?,
        ))
    }

    /// Laws rr and raa for n^2-ary factors.
    fn check_nary_mediality(&self, n: usize) -> PyResult<String> {
        let cfg = RunConfig::default();
        Ok(set_json(
            factor::check_nary_mediality_factor(&self.inner, n, &cfg).map_err(pyerr)?,
        ))
    }
}

/// A graded n-ary algebra over F_p given by structure constants.
#[pyclass(name = "GradedAlgebra", skip_from_py_object)]
#[derive(Clone)]
struct PyGradedAlgebra {
    inner: GradedAlgebra,
}

#[pymethods]
impl PyGradedAlgebra {
    #[staticmethod]
    fn from_json(doc: &str) -> PyResult<Self> {
        let value: serde_json::Value =
            serde_json::from_str(doc).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyGradedAlgebra {
            inner: docs::algebra_from_doc(&value).map_err(pyerr)?,
        })
    }

    /// The Grassmann-type algebra on two generators over F_3.
    #[staticmethod]
    fn grassmann_f3() -> Self {
        PyGradedAlgebra {
            inner: models::grassmann_f3(),
        }
    }

    #[staticmethod]
    fn group_algebra_cyclic(m: u32, p: u64) -> Self {
        PyGradedAlgebra {
            inner: models::group_algebra_cyclic(m, p),
        }
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn check_graded(&self) -> String {
        let cfg = RunConfig::default();
        report_json(&self.inner.check_graded(&cfg.budget))
    }

    fn check_associativity(&self) -> String {
        let cfg = RunConfig::default();
        report_json(&self.inner.check_associativity(&cfg.budget))
    }

    fn check_almost_commutative(&self, eps: &PyFactorMap) -> PyResult<String> {
        Ok(report_json(
            &self
                .inner
                .check_almost_commutative(&eps.inner)
                .map_err(pyerr)?,
        ))
    }

    fn check_almost_medial(&self, rho: &PyFactorMap) -> PyResult<String> {
        let cfg = RunConfig::default();
        Ok(report_json(
            &self
                .inner
                .check_almost_medial(&rho.inner, &cfg.budget)
                .map_err(pyerr)?,
        ))
    }

    fn check_eps_jacobi(&self, eps: &PyFactorMap) -> PyResult<String> {
        Ok(set_json(
            polymedial_core::bracket::check_eps_jacobi(&self.inner, &eps.inner).map_err(pyerr)?,
        ))
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&docs::algebra_to_doc(&self.inner)).expect("serializes")
    }
}

/// Rewrite-graph coherence for the (n^2+1)-gon; n in 2..=4.
#[pyfunction]
fn check_polygon(n: usize) -> PyResult<String> {
    Ok(report_json(&coherence::check_polygon(n).map_err(pyerr)?))
}

#[pyfunction]
fn check_triangle_units(n: usize) -> PyResult<String> {
    Ok(set_json(coherence::check_triangle_units(n).map_err(pyerr)?))
}

#[pyfunction]
fn check_hexagon() -> PyResult<String> {
    Ok(report_json(&coherence::check_hexagon().map_err(pyerr)?))
}

#[pyfunction]
fn check_braiding_decagon() -> PyResult<String> {
    Ok(report_json(
        &coherence::check_braiding_decagon().map_err(pyerr)?,
    ))
}

/// The n-ary braid relation for a permutation sigma on 2n-1 strands.
#[pyfunction]
fn check_braid_relation(n: usize, sigma: Vec<usize>) -> PyResult<String> {
    Ok(report_json(
        &coherence::check_braid_relation(n, &sigma).map_err(pyerr)?,
    ))
}

/// Medial coherence (diag16/diag18); pass mutated=True to run the wrong
/// block permutation instead of the transpose.
#[pyfunction]
#[pyo3(signature = (mutated = false))]
fn check_medial_coherence(mutated: bool) -> PyResult<String> {
    let choice = if mutated {
        MedialingChoice::RowSwap
    } else {
        MedialingChoice::Transpose
    };
    Ok(set_json(
        coherence::check_medial_coherence(choice).map_err(pyerr)?,
    ))
}

/// Groupal diagrams in the skeletal model of an n-ary group.
#[pyfunction]
fn check_groupal_model(op: &PyNaryOp) -> PyResult<String> {
    let model = SkeletalGroupModel::new(op.inner.clone()).map_err(pyerr)?;
    Ok(set_json(coherence::check_groupal_model(&model).map_err(pyerr)?))
}

/// Counts quasigroup tables of the given order and arity matching the
/// predicate (any | medial | associative).
#[pyfunction]
fn count_quasigroups(order: usize, arity: usize, predicate: &str) -> PyResult<u64> {
    let cfg = RunConfig::default();
    suite::run_enumerate(order, arity, predicate, &cfg, 0, |_| {}).map_err(pyerr)
}

/// Builds a linear quasigroup from a presentation document (JSON).
#[pyfunction]
fn build_linear_quasigroup(doc: &str) -> PyResult<PyNaryOp> {
    let value: serde_json::Value =
        serde_json::from_str(doc).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let pres = toyoda::LinearPresentation {
        group_table: serde_json::from_value(value["group"].clone())
            .map_err(|e| PyValueError::new_err(e.to_string()))?,
        phi: serde_json::from_value(value["phi"].clone())
            .map_err(|e| PyValueError::new_err(e.to_string()))?,
        psi: serde_json::from_value(value["psi"].clone())
            .map_err(|e| PyValueError::new_err(e.to_string()))?,
        phi3: serde_json::from_value(value.get("phi3").cloned().unwrap_or(serde_json::Value::Null))
            .map_err(|e| PyValueError::new_err(e.to_string()))?,
        c: serde_json::from_value(value["c"].clone())
            .map_err(|e| PyValueError::new_err(e.to_string()))?,
    };
    Ok(PyNaryOp {
        inner: toyoda::build_linear_quasigroup(&pres).map_err(pyerr)?,
    })
}

#[pymodule]
fn polymedial(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNaryOp>()?;
    m.add_class::<PyFactorMap>()?;
    m.add_class::<PyGradedAlgebra>()?;
    m.add_function(wrap_pyfunction!(check_polygon, m)?)?;
    m.add_function(wrap_pyfunction!(check_triangle_units, m)?)?;
    m.add_function(wrap_pyfunction!(check_hexagon, m)?)?;
    m.add_function(wrap_pyfunction!(check_braiding_decagon, m)?)?;
    m.add_function(wrap_pyfunction!(check_braid_relation, m)?)?;
    m.add_function(wrap_pyfunction!(check_medial_coherence, m)?)?;
    m.add_function(wrap_pyfunction!(check_groupal_model, m)?)?;
    m.add_function(wrap_pyfunction!(count_quasigroups, m)?)?;
    m.add_function(wrap_pyfunction!(build_linear_quasigroup, m)?)?;
    Ok(())
}
