//! Python bindings: a `Code` class bundling a stabilizer code with its
//! equivalent-graph extraction, plus module-level helpers for the registry
//! and the data-collapse fit.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use qgdec::analysis::{self, CollapseConfig, CollapsePoint};
use qgdec::codes::{self, DistanceBound, StabilizerCode};
use qgdec::decoder::{self, DecodeConfig, OracleResult};
use qgdec::extraction::{extract, GraphExtraction};
use qgdec::pauli::{pauli_parse_n, PauliOperator};
use qgdec::sim::{self, NoiseModel, RunConfig};
use qgdec::syndrome;

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn noise_model(noise: &str, p: f64) -> PyResult<NoiseModel> {
    let model = match noise {
        "depolarizing" => NoiseModel::depolarizing(p),
        "bitflip" => NoiseModel::bitflip(p),
        other => {
            return Err(PyValueError::new_err(format!(
                "noise must be 'depolarizing' or 'bitflip', got '{other}'"
            )))
        }
    };
    model.validate().map_err(value_err)?;
    Ok(model)
}

/// A stabilizer code together with its equivalent-graph extraction.
#[pyclass(frozen)]
struct Code {
    code: StabilizerCode,
    ext: GraphExtraction,
}

impl Code {
    fn wrap(code: StabilizerCode) -> PyResult<Self> {
        let ext = extract(&code).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        Ok(Self { code, ext })
    }

    fn parse_error(&self, text: &str) -> PyResult<PauliOperator> {
        pauli_parse_n(text, self.code.n()).map_err(value_err)
    }

    fn decode_config(&self, t: Option<usize>, prune: bool, structured: bool, mld: bool) -> DecodeConfig {
        let mut cfg = DecodeConfig::bdd(t.unwrap_or_else(|| self.code.t()));
        cfg.prune = prune;
        cfg.structured = structured;
        cfg.exhaustive_mld = mld;
        cfg
    }
}

#[pymethods]
impl Code {
    /// Load a registry code: five_qubit, steane, noncss11/17/25/29,
    /// color:<d>, surface:<d>.
    #[staticmethod]
    fn registry(name: &str) -> PyResult<Self> {
        Self::wrap(codes::builtin(name).map_err(value_err)?)
    }

    /// Parse the code file format (header "N k d", then S/LZ/LX lines).
    #[staticmethod]
    #[pyo3(signature = (text, name = "file"))]
    fn from_text(text: &str, name: &str) -> PyResult<Self> {
        Self::wrap(codes::load_code(text, name).map_err(value_err)?)
    }

    #[getter]
    fn name(&self) -> &str {
        self.code.name()
    }

    #[getter]
    fn n(&self) -> usize {
        self.code.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.code.k()
    }

    #[getter]
    fn d(&self) -> usize {
        self.code.d()
    }

    #[getter]
    fn t(&self) -> usize {
        self.code.t()
    }

    #[getter]
    fn css(&self) -> bool {
        self.code.is_css()
    }

    #[getter]
    fn stabilizers(&self) -> Vec<String> {
        self.code.stabilizers().iter().map(|s| s.to_string()).collect()
    }

    #[getter]
    fn logical_z(&self) -> Vec<String> {
        self.code.logical_z().iter().map(|s| s.to_string()).collect()
    }

    #[getter]
    fn logical_x(&self) -> Vec<String> {
        self.code.logical_x().iter().map(|s| s.to_string()).collect()
    }

    fn to_text(&self) -> String {
        self.code.to_file_string()
    }

    /// Graph export: {"nodes": [{id, side, phase}], "edges": [[i, j]],
    /// "J": [[bits]]}, ids 1-based.
    fn graph<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        let nodes = PyList::empty(py);
        for q in 0..self.ext.n() {
            let node = PyDict::new(py);
            node.set_item("id", q + 1)?;
            node.set_item("side", if self.ext.is_right(q) { "right" } else { "left" })?;
            node.set_item("phase", self.ext.phase_nodes().contains(&q))?;
            nodes.append(node)?;
        }
        let edges: Vec<(usize, usize)> = self
            .ext
            .edges()
            .iter()
            .map(|&(a, b)| (a + 1, b + 1))
            .collect();
        let j: Vec<Vec<u8>> = (0..self.ext.n())
            .map(|r| {
                (0..self.ext.n())
                    .map(|c| self.ext.j_matrix().get(r, c) as u8)
                    .collect()
            })
            .collect();
        out.set_item("nodes", nodes)?;
        out.set_item("edges", edges)?;
        out.set_item("J", j)?;
        Ok(out)
    }

    #[getter]
    fn left_nodes(&self) -> Vec<usize> {
        self.ext.left_nodes().iter().map(|&q| q + 1).collect()
    }

    #[getter]
    fn right_nodes(&self) -> Vec<usize> {
        self.ext.right_nodes().iter().map(|&q| q + 1).collect()
    }

    #[getter]
    fn bipartite(&self) -> bool {
        self.ext.is_bipartite()
    }

    /// All syndromes of a Pauli error string: beta, beta_tilde, gamma and
    /// the graph syndrome alpha (cross-checked internally).
    fn syndromes<'py>(&self, py: Python<'py>, error: &str) -> PyResult<Bound<'py, PyDict>> {
        let e = self.parse_error(error)?;
        let s = syndrome::measure_all(&self.code, &self.ext, &e);
        debug_assert_eq!(syndrome::alpha_direct(&self.ext, &e), s.alpha);
        let out = PyDict::new(py);
        out.set_item("beta", s.beta.to_bit_string())?;
        out.set_item("beta_tilde", s.beta_tilde.to_bit_string())?;
        out.set_item("gamma", s.gamma.to_bit_string())?;
        out.set_item("alpha", s.alpha.to_bit_string())?;
        Ok(out)
    }

    fn measure_beta(&self, error: &str) -> PyResult<String> {
        Ok(syndrome::measure_beta(&self.code, &self.parse_error(error)?).to_bit_string())
    }

    /// Bounded-distance decode of a stabilizer syndrome bit string.
    #[pyo3(signature = (syndrome, t = None, prune = true, structured = true, mld = false))]
    fn decode<'py>(
        &self,
        py: Python<'py>,
        syndrome: &str,
        t: Option<usize>,
        prune: bool,
        structured: bool,
        mld: bool,
    ) -> PyResult<Bound<'py, PyDict>> {
        let beta = syndrome::parse_syndrome(syndrome, self.code.n() - self.code.k())
            .map_err(PyValueError::new_err)?;
        let cfg = self.decode_config(t, prune, structured, mld);
        let r = decoder::decode(&self.code, &self.ext, &beta, &cfg);
        let out = PyDict::new(py);
        out.set_item("correction", r.correction.to_string())?;
        out.set_item("weight", r.weight)?;
        out.set_item("branch", r.branch)?;
        out.set_item("branch_weights", r.branch_weights)?;
        out.set_item("explored", r.explored)?;
        out.set_item("bounded", r.bounded)?;
        Ok(out)
    }

    /// Brute-force MLD reference; returns the first minimum-weight Pauli
    /// matching the syndrome, or None if nothing within w_max.
    fn oracle_decode(&self, syndrome: &str, w_max: usize) -> PyResult<Option<String>> {
        let beta = syndrome::parse_syndrome(syndrome, self.code.n() - self.code.k())
            .map_err(PyValueError::new_err)?;
        Ok(match decoder::oracle_decode(&self.code, &beta, w_max) {
            OracleResult::Found(op) => Some(op.to_string()),
            OracleResult::AtLeast(_) => None,
        })
    }

    fn is_logical_error(&self, error: &str, correction: &str) -> PyResult<bool> {
        decoder::is_logical_error(
            &self.code,
            &self.parse_error(error)?,
            &self.parse_error(correction)?,
        )
        .map_err(value_err)
    }

    /// Brute-force distance oracle; returns ("exact", w) or
    /// ("at_least", w_max + 1).
    #[pyo3(signature = (w_max, cap = codes::DISTANCE_BUDGET_DEFAULT))]
    fn verify_distance(&self, w_max: usize, cap: u128) -> PyResult<(String, usize)> {
        match codes::verify_distance(&self.code, w_max, cap).map_err(value_err)? {
            DistanceBound::Exact(w) => Ok(("exact".into(), w)),
            DistanceBound::AtLeast(w) => Ok(("at_least".into(), w)),
        }
    }

    /// Monte Carlo run until `failures` logical errors (or `max_shots`).
    #[pyo3(signature = (noise, p, failures = 100, seed = 0, workers = 1,
                        max_shots = 10_000_000, t = None))]
    #[allow(clippy::too_many_arguments)]
    fn simulate<'py>(
        &self,
        py: Python<'py>,
        noise: &str,
        p: f64,
        failures: u64,
        seed: u64,
        workers: usize,
        max_shots: u64,
        t: Option<usize>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let model = noise_model(noise, p)?;
        let mut cfg = RunConfig::new(seed, failures, self.decode_config(t, true, true, false));
        cfg.workers = workers;
        cfg.max_shots = max_shots;
        let r = sim::run_until_failures(&self.code, &self.ext, &model, &cfg);
        let out = PyDict::new(py);
        out.set_item("shots", r.shots)?;
        out.set_item("failures", r.failures)?;
        out.set_item("p_l", r.p_l)?;
        out.set_item("stderr", r.stderr)?;
        out.set_item("wall_seconds", r.wall_seconds)?;
        out.set_item("capped", r.capped)?;
        Ok(out)
    }

    /// Exact logical error rate by full enumeration (small codes only).
    #[pyo3(signature = (noise, p, t = None))]
    fn exact_p_l(&self, noise: &str, p: f64, t: Option<usize>) -> PyResult<f64> {
        let model = noise_model(noise, p)?;
        sim::exact_p_l(
            &self.code,
            &self.ext,
            &model,
            &self.decode_config(t, true, true, false),
        )
        .map_err(value_err)
    }

    /// (numerator, denominator, value) of the certified-syndrome fraction.
    fn correctable_fraction(&self) -> PyResult<(u128, u128, f64)> {
        analysis::correctable_fraction(&self.code).map_err(value_err)
    }

    #[pyo3(signature = (t, css = None))]
    fn search_space(&self, t: usize, css: Option<bool>) -> u128 {
        analysis::search_space(&self.code, &self.ext, t, css.unwrap_or(self.code.is_css()))
    }

    fn singleton_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = analysis::singleton_report(&self.code).map_err(value_err)?;
        let out = PyDict::new(py);
        out.set_item("t_over_n", r.t_over_n)?;
        out.set_item("bound", r.bound)?;
        out.set_item("violated", r.violated)?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!(
            "Code([[{},{},{}]] {}, css={})",
            self.code.n(),
            self.code.k(),
            self.code.d(),
            self.code.name(),
            self.code.is_css()
        )
    }
}

/// Registry names accepted by Code.registry.
#[pyfunction]
fn registry_names() -> Vec<String> {
    codes::registry_names().iter().map(|s| s.to_string()).collect()
}

/// Finite-size-scaling fit. `points` is a list of (p, d, p_l, stderr)
/// tuples (stderr may be None); returns the fit report dict.
#[pyfunction]
#[pyo3(signature = (points, window, degree = 3))]
fn collapse_fit<'py>(
    py: Python<'py>,
    points: Vec<(f64, usize, f64, Option<f64>)>,
    window: (f64, f64),
    degree: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let pts: Vec<CollapsePoint> = points
        .into_iter()
        .map(|(p, d, p_l, stderr)| CollapsePoint { p, d, p_l, stderr })
        .collect();
    let mut cfg = CollapseConfig::with_window(window);
    cfg.poly_degree = degree;
    let fit = analysis::collapse_fit(&pts, &cfg).map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("p_c", fit.p_c)?;
    out.set_item("nu", fit.nu)?;
    out.set_item("residual", fit.residual)?;
    out.set_item("degree", fit.poly_degree)?;
    out.set_item("window", (fit.window.0, fit.window.1))?;
    out.set_item("points_used", fit.points_used)?;
    out.set_item("converged", fit.converged)?;
    Ok(out)
}

#[pymodule]
fn qgdec_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Code>()?;
    m.add_function(wrap_pyfunction!(registry_names, m)?)?;
    m.add_function(wrap_pyfunction!(collapse_fit, m)?)?;
    m.add("P_C_OPT_COLOR", analysis::P_C_OPT_COLOR)?;
    m.add("P_C_OPT_SURFACE", analysis::P_C_OPT_SURFACE)?;
    Ok(())
}
