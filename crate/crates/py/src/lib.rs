//! Python bindings. Rationals are accepted as `int`, `fractions.Fraction`
//! or `"N/D"` strings and returned as `Fraction`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use lnscert::expr::{parse_rational, taylor_exp_exact, taylor_exp_tree};
use lnscert::level2::{add_level_2, div_level_2, eval_level2, mult_level_2};
use lnscert::lnscore::{add_level_1, compute_table_unchecked, div_level_1, mult_level_1, s_quantized, sez_pq};
use lnscert::tablefile::{parse_table, write_table};
use lnscert::tolerance::{tol_add_loose, tol_add_tight, tol_div, tol_holds, tol_mult, tol_recip};
use lnscert::{AddMode, Level2Value, LnsError, PosRational, Rep, SumOrder, TolRep};

create_exception!(lnscert, LnsCertError, PyValueError);

fn err(e: LnsError) -> PyErr {
    LnsCertError::new_err(e.to_string())
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<PosRational> {
    if let Ok(s) = obj.extract::<String>() {
        return parse_rational(&s).map_err(err);
    }
    let num: BigInt = obj.getattr("numerator")?.extract()?;
    let den: BigInt = obj.getattr("denominator")?.extract()?;
    PosRational::from_signed(num, den).map_err(err)
}

fn fraction<'py>(py: Python<'py>, v: &PosRational) -> PyResult<Bound<'py, PyAny>> {
    let v = v.reduced();
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((v.num().clone(), v.den().clone()))
}

#[pyclass(name = "Base", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Base(lnscert::Base);

#[pymethods]
impl Base {
    /// A base satisfying `1 < Q < P < 2Q`.
    #[new]
    fn new(p: BigUint, q: BigUint) -> PyResult<Self> {
        lnscert::Base::new(p, q).map(Base).map_err(err)
    }

    /// Any base above one, for conversions.
    #[staticmethod]
    fn above_one(p: BigUint, q: BigUint) -> PyResult<Self> {
        lnscert::Base::above_one(p, q).map(Base).map_err(err)
    }

    #[getter]
    fn p(&self) -> BigUint {
        self.0.p().clone()
    }

    #[getter]
    fn q(&self) -> BigUint {
        self.0.q().clone()
    }

    fn precision(&self) -> PyResult<u32> {
        lnscert::precision_of_base(&self.0).map_err(err)
    }

    fn sez(&self) -> PyResult<u64> {
        sez_pq(&self.0).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Base({}, {})", self.0.p(), self.0.q())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "Tolerance", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Tolerance(lnscert::Tolerance);

#[pymethods]
impl Tolerance {
    #[new]
    fn new(lo: i64, hi: i64) -> PyResult<Self> {
        lnscert::Tolerance::new(lo, hi).map(Tolerance).map_err(err)
    }

    #[getter]
    fn lo(&self) -> i64 {
        self.0.lo()
    }

    #[getter]
    fn hi(&self) -> i64 {
        self.0.hi()
    }

    fn width(&self) -> i64 {
        self.0.width()
    }

    /// Whether `other` lies inside this tolerance.
    fn contains(&self, other: &Tolerance) -> bool {
        self.0.contains(&other.0)
    }

    fn __repr__(&self) -> String {
        format!("Tolerance({}, {})", self.0.lo(), self.0.hi())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "SumTable", frozen)]
struct SumTable(lnscert::SumTable);

#[pymethods]
impl SumTable {
    #[getter]
    fn base(&self) -> Base {
        Base(self.0.base().clone())
    }

    #[getter]
    fn sez(&self) -> u64 {
        self.0.sez()
    }

    #[getter]
    fn entries(&self) -> Vec<u64> {
        self.0.entries().to_vec()
    }

    /// Quantized addition logarithm `S(z)`.
    fn s(&self, z: BigInt) -> BigInt {
        s_quantized(&self.0, &z)
    }

    fn add(&self, x: BigInt, y: BigInt) -> BigInt {
        add_level_1(&self.0, &Rep(x), &Rep(y)).0
    }

    /// `(axiom, holds, witness)` for axioms 1 through 5.
    fn verify(&self) -> Vec<(u8, bool, Option<u64>)> {
        lnscert::verify_axioms(&self.0)
            .checks
            .iter()
            .map(|c| (c.axiom, c.holds, c.witness))
            .collect()
    }

    fn to_text(&self) -> String {
        write_table(&self.0)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        parse_table(text).map(SumTable).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.entries().len()
    }

    fn __repr__(&self) -> String {
        format!("SumTable(base={}, sez={})", self.0.base(), self.0.sez())
    }
}

#[pyclass(name = "RangeConfig", frozen)]
struct RangeConfig(lnscert::RangeConfig);

#[pymethods]
impl RangeConfig {
    #[new]
    fn new(min: BigInt, max: BigInt) -> PyResult<Self> {
        lnscert::RangeConfig::new(min, max).map(RangeConfig).map_err(err)
    }

    #[getter]
    fn min(&self) -> BigInt {
        self.0.min().clone()
    }

    #[getter]
    fn max(&self) -> BigInt {
        self.0.max().clone()
    }

    #[getter]
    fn sentinel(&self) -> BigInt {
        self.0.sentinel()
    }

    fn __repr__(&self) -> String {
        format!("RangeConfig({}, {})", self.0.min(), self.0.max())
    }
}

fn level2(v: Level2Value) -> Option<BigInt> {
    match v {
        Level2Value::InRange(r) => Some(r.0),
        Level2Value::OutOfRange => None,
    }
}

/// Sign of `value - base**e`.
#[pyfunction]
fn cmp_pow(value: &Bound<'_, PyAny>, base: &Base, e: BigInt) -> PyResult<i8> {
    Ok(match lnscert::cmp_pow(&rational(value)?, &base.0, &e) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    })
}

/// `base**e` as a Fraction.
#[pyfunction]
fn pow_rational<'py>(py: Python<'py>, base: &Base, e: BigInt) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &lnscert::pow_rational(&base.0, &e))
}

/// Reference linear search.
#[pyfunction]
fn floor_log(value: &Bound<'_, PyAny>, base: &Base) -> PyResult<BigInt> {
    lnscert::floor_log(&rational(value)?, &base.0).map_err(err)
}

#[pyfunction]
fn floor_log_fast(value: &Bound<'_, PyAny>, base: &Base) -> PyResult<BigInt> {
    Ok(lnscert::floor_log_fast(&rational(value)?, &base.0))
}

#[pyfunction]
fn precision_of_base(base: &Base) -> PyResult<u32> {
    base.precision()
}

/// Builds the addition table, failing if any axiom is violated.
#[pyfunction]
fn build_table(base: &Base) -> PyResult<SumTable> {
    lnscert::build_table(&base.0).map(SumTable).map_err(err)
}

/// Builds the addition table without checking the axioms.
#[pyfunction]
fn build_table_unchecked(base: &Base) -> PyResult<SumTable> {
    compute_table_unchecked(&base.0).map(SumTable).map_err(err)
}

#[pyfunction]
fn mult(x: BigInt, y: BigInt) -> BigInt {
    mult_level_1(&Rep(x), &Rep(y)).0
}

#[pyfunction]
fn div(x: BigInt, y: BigInt) -> BigInt {
    div_level_1(&Rep(x), &Rep(y)).0
}

#[pyfunction(name = "tol_mult")]
fn py_tol_mult(x: &Tolerance, y: &Tolerance) -> Tolerance {
    Tolerance(tol_mult(x.0, y.0))
}

#[pyfunction(name = "tol_recip")]
fn py_tol_recip(x: &Tolerance) -> Tolerance {
    Tolerance(tol_recip(x.0))
}

#[pyfunction(name = "tol_div")]
fn py_tol_div(x: &Tolerance, y: &Tolerance) -> Tolerance {
    Tolerance(tol_div(x.0, y.0))
}

#[pyfunction(name = "tol_add_loose")]
fn py_tol_add_loose(x: &Tolerance, y: &Tolerance) -> Tolerance {
    Tolerance(tol_add_loose(x.0, y.0))
}

/// Returns `(z, tolerance)` for the sum of two toleranced representations.
#[pyfunction(name = "tol_add_tight")]
fn py_tol_add_tight(table: &SumTable, x: BigInt, x_tol: &Tolerance, y: BigInt, y_tol: &Tolerance) -> (BigInt, Tolerance) {
    let r = tol_add_tight(&table.0, &TolRep::new(Rep(x), x_tol.0), &TolRep::new(Rep(y), y_tol.0));
    (r.rep.0, Tolerance(r.tol))
}

/// Whether `base**(z+tol.lo) <= value <= base**(z+tol.hi)`.
#[pyfunction(name = "tol_holds")]
fn py_tol_holds(base: &Base, z: BigInt, tol: &Tolerance, value: &Bound<'_, PyAny>) -> PyResult<bool> {
    Ok(tol_holds(&base.0, &TolRep::new(Rep(z), tol.0), &rational(value)?))
}

fn add_mode(mode: &str) -> PyResult<AddMode> {
    mode.parse().map_err(PyValueError::new_err)
}

/// Certifies an expression; returns `(z, tolerance, exact value)`.
#[pyfunction]
#[pyo3(signature = (table, expr, mode = "loose"))]
fn certify<'py>(
    py: Python<'py>,
    table: &SumTable,
    expr: &str,
    mode: &str,
) -> PyResult<(BigInt, Tolerance, Bound<'py, PyAny>)> {
    let e = lnscert::parse_expr(expr).map_err(err)?;
    let c = lnscert::certify_expression(&table.0, &e, add_mode(mode)?).map_err(err)?;
    Ok((c.tol_rep.rep.0, Tolerance(c.tol_rep.tol), fraction(py, &c.value)?))
}

/// Certifies `1 + x + x^2/2 + x^3/6` with `x` entered at tolerance (0,1), in
/// `"forward"` or `"reversed"` order, loose addition.
#[pyfunction]
#[pyo3(signature = (table, x, order = "forward"))]
fn taylor_exp<'py>(
    py: Python<'py>,
    table: &SumTable,
    x: &Bound<'py, PyAny>,
    order: &str,
) -> PyResult<(BigInt, Tolerance, Bound<'py, PyAny>)> {
    let order = match order {
        "forward" => SumOrder::Forward,
        "reversed" => SumOrder::Reversed,
        _ => return Err(PyValueError::new_err(format!("unknown order {order:?}"))),
    };
    let x = rational(x)?;
    let tree = taylor_exp_tree(&x, lnscert::Tolerance::FLOOR, order);
    let c = lnscert::certify_expression(&table.0, &tree, AddMode::Loose).map_err(err)?;
    Ok((c.tol_rep.rep.0, Tolerance(c.tol_rep.tol), fraction(py, &taylor_exp_exact(&x))?))
}

/// Level-2 operations return `None` when out of range.
#[pyfunction]
fn mult2(cfg: &RangeConfig, x: BigInt, y: BigInt) -> Option<BigInt> {
    level2(mult_level_2(&cfg.0, &x, &y))
}

#[pyfunction]
fn div2(cfg: &RangeConfig, x: BigInt, y: BigInt) -> Option<BigInt> {
    level2(div_level_2(&cfg.0, &x, &y))
}

#[pyfunction]
fn add2(cfg: &RangeConfig, table: &SumTable, x: BigInt, y: BigInt) -> Option<BigInt> {
    level2(add_level_2(&cfg.0, &table.0, &x, &y))
}

#[pyfunction]
fn eval2(cfg: &RangeConfig, table: &SumTable, expr: &str) -> PyResult<Option<BigInt>> {
    let e = lnscert::parse_expr(expr).map_err(err)?;
    eval_level2(&cfg.0, &table.0, &e).map(level2).map_err(err)
}

#[pymodule]
#[pyo3(name = "lnscert")]
fn lnscert_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("LnsCertError", m.py().get_type::<LnsCertError>())?;
    m.add_class::<Base>()?;
    m.add_class::<Tolerance>()?;
    m.add_class::<SumTable>()?;
    m.add_class::<RangeConfig>()?;
    m.add_function(wrap_pyfunction!(cmp_pow, m)?)?;
    m.add_function(wrap_pyfunction!(pow_rational, m)?)?;
    m.add_function(wrap_pyfunction!(floor_log, m)?)?;
    m.add_function(wrap_pyfunction!(floor_log_fast, m)?)?;
    m.add_function(wrap_pyfunction!(precision_of_base, m)?)?;
    m.add_function(wrap_pyfunction!(build_table, m)?)?;
    m.add_function(wrap_pyfunction!(build_table_unchecked, m)?)?;
    m.add_function(wrap_pyfunction!(mult, m)?)?;
    m.add_function(wrap_pyfunction!(div, m)?)?;
    m.add_function(wrap_pyfunction!(py_tol_mult, m)?)?;
    m.add_function(wrap_pyfunction!(py_tol_recip, m)?)?;
    m.add_function(wrap_pyfunction!(py_tol_div, m)?)?;
    m.add_function(wrap_pyfunction!(py_tol_add_loose, m)?)?;
    m.add_function(wrap_pyfunction!(py_tol_add_tight, m)?)?;
    m.add_function(wrap_pyfunction!(py_tol_holds, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(taylor_exp, m)?)?;
    m.add_function(wrap_pyfunction!(mult2, m)?)?;
    m.add_function(wrap_pyfunction!(div2, m)?)?;
    m.add_function(wrap_pyfunction!(add2, m)?)?;
    m.add_function(wrap_pyfunction!(eval2, m)?)?;
    Ok(())
}
