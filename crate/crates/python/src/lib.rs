//! Python bindings: codes, derivative operations, decoders and simulation.
//!
//! Words cross the boundary as lists of 0/1 ints, LLRs as lists of floats
//! and decoder/simulation settings as the same JSON used by the CLI.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cyclic_dd::bits::{BinaryMatrix, BitVec};
use cyclic_dd::codealg::{bch_bound, rm_exponent_set, CodeSpec, ExponentSet};
use cyclic_dd::derivative::{cyclic_da, cyclic_dd, minimal_dd_basis};
use cyclic_dd::gf2m::Field;
use cyclic_dd::poly::Gf2Poly;
use cyclic_dd::sim::{run_monte_carlo, CodeRef, DecoderConfig, FrameDecoder, SimConfig};
use cyclic_dd::{ddcodec, derivative, llr};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(m: u32) -> PyResult<Arc<Field>> {
    Field::with_default_poly(m).map(Arc::new).map_err(err)
}

fn to_bits(word: &[u8]) -> PyResult<BitVec> {
    if let Some(b) = word.iter().find(|&&b| b > 1) {
        return Err(PyValueError::new_err(format!("bit value {b} is not 0 or 1")));
    }
    Ok(BitVec::from_bits(word))
}

fn from_bits(v: &BitVec) -> Vec<u32> {
    v.to_bits().into_iter().map(u32::from).collect()
}

fn rows(m: &BinaryMatrix) -> Vec<Vec<u32>> {
    m.rows().iter().map(from_bits).collect()
}

fn check_len(code: &CodeSpec, len: usize) -> PyResult<()> {
    if len != code.length() {
        return Err(PyValueError::new_err(format!(
            "expected {} values, found {len}",
            code.length()
        )));
    }
    Ok(())
}

/// Extended binary cyclic code of length 2^m.
#[pyclass(name = "Code", frozen)]
struct PyCode {
    inner: CodeSpec,
}

#[pymethods]
impl PyCode {
    /// Code generated by `gen_hex` (bit i is the coefficient of x^i).
    #[staticmethod]
    fn from_generator(m: u32, gen_hex: &str) -> PyResult<Self> {
        let g = Gf2Poly::from_hex(gen_hex).map_err(err)?;
        let inner = CodeSpec::from_generator(field(m)?, g).map_err(err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_exponents(m: u32, exponents: Vec<usize>) -> PyResult<Self> {
        let f = field(m)?;
        let set = ExponentSet::new(f.n(), exponents).map_err(err)?;
        Ok(Self {
            inner: CodeSpec::from_exponents(f, set),
        })
    }

    #[staticmethod]
    fn bch(m: u32, designed_distance: usize) -> PyResult<Self> {
        Ok(Self {
            inner: CodeSpec::bch(field(m)?, designed_distance),
        })
    }

    #[staticmethod]
    fn reed_muller(m: u32, r: u32) -> PyResult<Self> {
        if r > m {
            return Err(PyValueError::new_err("order exceeds m"));
        }
        Ok(Self {
            inner: CodeSpec::reed_muller(field(m)?, r),
        })
    }

    #[getter]
    fn length(&self) -> usize {
        self.inner.length()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn exponents(&self) -> Vec<usize> {
        self.inner.exponents().iter().collect()
    }

    #[getter]
    fn representatives(&self) -> Vec<usize> {
        self.inner.exponents().representatives().into_iter().collect()
    }

    #[getter]
    fn generator_hex(&self) -> String {
        self.inner.gen_poly().to_hex()
    }

    /// BCH lower bound on the minimum distance.
    #[getter]
    fn bch_bound(&self) -> usize {
        bch_bound(self.inner.exponents())
    }

    fn generator_matrix(&self) -> Vec<Vec<u32>> {
        rows(self.inner.generator_matrix())
    }

    fn encode(&self, message: Vec<u8>) -> PyResult<Vec<u32>> {
        if message.len() != self.inner.dimension() {
            return Err(PyValueError::new_err(format!(
                "expected {} message bits, found {}",
                self.inner.dimension(),
                message.len()
            )));
        }
        Ok(from_bits(&self.inner.encode(&to_bits(&message)?)))
    }

    fn is_member(&self, word: Vec<u8>) -> PyResult<bool> {
        check_len(&self.inner, word.len())?;
        Ok(self.inner.is_member(&to_bits(&word)?))
    }

    /// Cyclic derivative descendant.
    fn descendant(&self) -> Self {
        let set = cyclic_dd(self.inner.exponents());
        Self {
            inner: CodeSpec::from_exponents(self.inner.field().clone(), set),
        }
    }

    /// Cyclic derivative ascendant.
    fn ascendant(&self) -> Self {
        let set = cyclic_da(self.inner.exponents());
        Self {
            inner: CodeSpec::from_exponents(self.inner.field().clone(), set),
        }
    }

    /// Row-reduced basis of the minimal descendant in direction `beta`
    /// (a nonzero field element as an integer).
    fn minimal_descendant_basis(&self, beta: u32) -> PyResult<Vec<Vec<u32>>> {
        Ok(rows(&minimal_dd_basis(&self.inner, beta).map_err(err)?.basis))
    }

    /// Derivative of a word in direction `beta`.
    fn derivative(&self, word: Vec<u8>, beta: u32) -> PyResult<Vec<u32>> {
        check_len(&self.inner, word.len())?;
        let d = derivative::derivative_codeword(self.inner.field(), &to_bits(&word)?, beta).map_err(err)?;
        Ok(from_bits(&d))
    }

    /// Derivative LLRs in direction `beta`.
    fn derivative_llr(&self, llr: Vec<f64>, beta: u32) -> PyResult<Vec<f64>> {
        ddcodec::derivative_llr(self.inner.field(), &llr, beta).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Code(n={}, k={})", self.inner.length(), self.inner.dimension())
    }
}

/// Frame decoder configured from decoder JSON, e.g.
/// `{"type": "dd-osd", "directions": "k:32:1", "order": 1}`.
#[pyclass(name = "Decoder", frozen)]
struct PyDecoder {
    code: CodeSpec,
    inner: FrameDecoder,
}

#[pymethods]
impl PyDecoder {
    #[new]
    fn new(code: &PyCode, config_json: &str) -> PyResult<Self> {
        let cfg: DecoderConfig = serde_json::from_str(config_json).map_err(err)?;
        let inner = FrameDecoder::from_config(&code.inner, &cfg).map_err(err)?;
        Ok(Self {
            code: code.inner.clone(),
            inner,
        })
    }

    /// Returns `(codeword, iterations, converged)`.
    fn decode(&self, py: Python<'_>, llr: Vec<f64>) -> PyResult<(Vec<u32>, usize, bool)> {
        check_len(&self.code, llr.len())?;
        let rep = py.detach(|| self.inner.decode(&llr));
        Ok((from_bits(&rep.codeword), rep.iterations, rep.converged))
    }
}

/// Runs a simulation from a JSON configuration and returns one dict per
/// Eb/N0 point.
#[pyfunction]
fn simulate<'py>(py: Python<'py>, config_json: &str) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let cfg = SimConfig::from_json(config_json).map_err(err)?;
    let res = py.detach(|| run_monte_carlo(&cfg)).map_err(err)?;
    res.points
        .iter()
        .map(|p| {
            let d = PyDict::new(py);
            d.set_item("ebn0_db", p.ebn0_db)?;
            d.set_item("frames", p.frames)?;
            d.set_item("frame_errors", p.frame_errors)?;
            d.set_item("bit_errors", p.bit_errors)?;
            d.set_item("bler", p.bler)?;
            d.set_item("avg_dd_iters", p.avg_dd_iters)?;
            d.set_item("avg_inner_iters", p.avg_inner_iters)?;
            d.set_item("flops_est", p.flops_est)?;
            d.set_item("converged_frames", p.converged_frames)?;
            Ok(d)
        })
        .collect()
}

/// Parses a code reference such as `gen:4:0x1D1`, `bch:7:31` or `rm:5:2`.
#[pyfunction]
fn code_from_ref(spec: &str) -> PyResult<PyCode> {
    let inner = CodeRef::parse(spec).and_then(|c| c.build()).map_err(err)?;
    Ok(PyCode { inner })
}

#[pyfunction]
fn rm_exponents(r: u32, m: u32) -> Vec<usize> {
    rm_exponent_set(r, m).iter().collect()
}

#[pyfunction]
fn boxplus(a: f64, b: f64) -> f64 {
    llr::boxplus(a, b)
}

#[pyfunction]
fn flop_account(iterations: f64, n: usize, num_directions: usize, omega: f64) -> u64 {
    ddcodec::flop_account(iterations, n, num_directions, omega)
}

#[pymodule]
fn cyclicdd(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCode>()?;
    m.add_class::<PyDecoder>()?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(code_from_ref, m)?)?;
    m.add_function(wrap_pyfunction!(rm_exponents, m)?)?;
    m.add_function(wrap_pyfunction!(boxplus, m)?)?;
    m.add_function(wrap_pyfunction!(flop_account, m)?)?;
    Ok(())
}
