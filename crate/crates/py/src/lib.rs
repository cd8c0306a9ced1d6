//! Python bindings. Rationals cross the boundary as `"p/q"` strings and
//! suite reports as JSON text.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use trigauge::algebra::AlgebraElement;
use trigauge::config::InstanceConfig;
use trigauge::forms::{Form as CoreForm, Space};
use trigauge::identities::{check_identities, Outcome};
use trigauge::invariant::EtaConvention;
use trigauge::random::FormSampler;
use trigauge::scalar::{format_rational, parse_rational};
use trigauge::suites::{self, Options};
use trigauge::{instances, Rational, Slot, Status, TwoCrossedModule};

fn err(e: trigauge::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn slot(s: &str) -> PyResult<Slot> {
    Slot::from_label(s).ok_or_else(|| PyValueError::new_err(format!("unknown slot `{s}`, expected g, h or l")))
}

fn rationals(v: &[String]) -> PyResult<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s).map_err(err)).collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn element(m: &TwoCrossedModule, s: Slot, coords: &[String]) -> PyResult<AlgebraElement> {
    m.algebra(s).element(rationals(coords)?).map_err(err)
}

/// A loaded instance: a built-in by name, a config file, or config text.
#[pyclass(module = "pytrigauge")]
struct Instance {
    cfg: InstanceConfig,
}

impl Instance {
    fn module(&self) -> PyResult<&TwoCrossedModule> {
        self.cfg.module().map_err(err)
    }

    fn options(&self, seeds: Option<u64>, degree_cap: Option<u32>, dim: Option<usize>) -> Options {
        let mut o = Options::from_run(&self.cfg.run);
        if let Some(n) = seeds {
            o.seeds = n;
        }
        if let Some(k) = degree_cap {
            o.degree_cap = k;
        }
        if let Some(d) = dim {
            o.dim = d;
        }
        o
    }
}

#[pymethods]
impl Instance {
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        let m = instances::by_name(name).ok_or_else(|| PyValueError::new_err(format!("no built-in instance `{name}`")))?;
        Ok(Instance { cfg: InstanceConfig::from_module(m) })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Instance { cfg: InstanceConfig::load(path).map_err(err)? })
    }

    #[staticmethod]
    fn from_toml(text: &str) -> PyResult<Self> {
        Ok(Instance { cfg: InstanceConfig::from_toml(text).map_err(err)? })
    }

    fn to_toml(&self) -> String {
        self.cfg.to_toml()
    }

    #[getter]
    fn name(&self) -> String {
        self.cfg.name.clone()
    }

    /// `(dim g, dim h, dim l)`.
    #[getter]
    fn dims(&self) -> PyResult<(usize, usize, usize)> {
        let m = self.module()?;
        Ok((m.dim(Slot::G), m.dim(Slot::H), m.dim(Slot::L)))
    }

    /// `(name, status, residual, note)` for every axiom.
    fn axiom_report(&self) -> PyResult<Vec<(String, String, String, Option<String>)>> {
        let rep = self.module()?.axiom_report();
        Ok(rep
            .entries
            .into_iter()
            .map(|(name, e)| {
                let status = match e.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::Skipped => "skipped",
                };
                (name, status.to_string(), format_rational(&e.residual), e.note)
            })
            .collect())
    }

    fn bracket(&self, slot_label: &str, a: Vec<String>, b: Vec<String>) -> PyResult<Vec<String>> {
        let m = self.module()?;
        let s = slot(slot_label)?;
        let (a, b) = (element(m, s, &a)?, element(m, s, &b)?);
        Ok(strings(&m.algebra(s).bracket(&a, &b).map_err(err)?.coords))
    }

    fn alpha(&self, y: Vec<String>) -> PyResult<Vec<String>> {
        let m = self.module()?;
        Ok(strings(&m.alpha_apply(&element(m, Slot::H, &y)?).map_err(err)?.coords))
    }

    fn beta(&self, z: Vec<String>) -> PyResult<Vec<String>> {
        let m = self.module()?;
        Ok(strings(&m.beta_apply(&element(m, Slot::L, &z)?).map_err(err)?.coords))
    }

    /// `x ▷ v` for `x` in g and `v` in the named slot.
    fn act(&self, x: Vec<String>, slot_label: &str, v: Vec<String>) -> PyResult<Vec<String>> {
        let m = self.module()?;
        let x = element(m, Slot::G, &x)?;
        let v = element(m, slot(slot_label)?, &v)?;
        Ok(strings(&m.act(&x, &v).map_err(err)?.coords))
    }

    fn peiffer(&self, y1: Vec<String>, y2: Vec<String>) -> PyResult<Vec<String>> {
        let m = self.module()?;
        let (a, b) = (element(m, Slot::H, &y1)?, element(m, Slot::H, &y2)?);
        Ok(strings(&m.peiffer(&a, &b).map_err(err)?.coords))
    }

    /// Gram matrix of the invariant form on one slot.
    fn gram(&self, slot_label: &str) -> PyResult<Vec<Vec<String>>> {
        let t = self.cfg.invariant_forms().map_err(err)?;
        Ok(t.gram(slot(slot_label)?).to_rows().iter().map(|r| strings(r)).collect())
    }

    /// One seed of the identity battery: `(name, degrees, residual)` for
    /// checked identities and `(name, None, reason)` for skipped ones.
    #[pyo3(signature = (seed, ambient = 4, degree_cap = 2))]
    fn check_identities(
        &self,
        seed: u64,
        ambient: usize,
        degree_cap: u32,
    ) -> PyResult<Vec<(String, Option<Vec<usize>>, String)>> {
        let m = self.module()?;
        let t = self.cfg.invariant_forms().map_err(err)?;
        let adj = t.adjoints(m, EtaConvention::AsPrinted).map_err(err)?;
        let out = check_identities(m, &t, &adj, seed, ambient, degree_cap, None).map_err(err)?;
        Ok(out
            .into_iter()
            .map(|o| match o {
                Outcome::Checked { name, degrees, residual } => (name.to_string(), Some(degrees), format_rational(&residual)),
                Outcome::Skipped { name, reason } => (name.to_string(), None, reason),
            })
            .collect())
    }

    #[pyo3(signature = (seeds = None, degree_cap = None, dim = None))]
    fn verify(&self, seeds: Option<u64>, degree_cap: Option<u32>, dim: Option<usize>) -> PyResult<String> {
        Ok(suites::verify(&self.cfg, &self.options(seeds, degree_cap, dim)).map_err(err)?.to_json())
    }

    #[pyo3(signature = (seeds = None, degree_cap = None, dim = None))]
    fn bianchi(&self, seeds: Option<u64>, degree_cap: Option<u32>, dim: Option<usize>) -> PyResult<String> {
        Ok(suites::bianchi(&self.cfg, &self.options(seeds, degree_cap, dim)).map_err(err)?.to_json())
    }

    /// Report JSON and, when the float sweep ran, its CSV.
    #[pyo3(signature = (seeds = None, degree_cap = None, dim = None, float_sweep = false))]
    fn gradcheck(
        &self,
        seeds: Option<u64>,
        degree_cap: Option<u32>,
        dim: Option<usize>,
        float_sweep: bool,
    ) -> PyResult<(String, Option<String>)> {
        let mut o = self.options(seeds, degree_cap, dim);
        o.float_sweep = float_sweep;
        let (rep, csv) = suites::gradcheck(&self.cfg, &o).map_err(err)?;
        Ok((rep.to_json(), csv))
    }

    #[pyo3(signature = (seeds = None, degree_cap = None, dim = None))]
    fn action(&self, seeds: Option<u64>, degree_cap: Option<u32>, dim: Option<usize>) -> PyResult<String> {
        Ok(suites::action(&self.cfg, &self.options(seeds, degree_cap, dim)).map_err(err)?.to_json())
    }

    #[pyo3(signature = (seeds = None, degree_cap = None, dim = None))]
    fn reduce(&self, seeds: Option<u64>, degree_cap: Option<u32>, dim: Option<usize>) -> PyResult<String> {
        Ok(suites::reduce(&self.cfg, &self.options(seeds, degree_cap, dim)).map_err(err)?.to_json())
    }

    fn __repr__(&self) -> String {
        format!("Instance({:?})", self.cfg.name)
    }
}

/// A polynomial-coefficient differential form valued in a scalar, Lie
/// algebra or matrix space.
#[pyclass(module = "pytrigauge", skip_from_py_object)]
#[derive(Clone)]
struct Form {
    inner: CoreForm,
}

fn space(label: &str) -> PyResult<Space> {
    Space::parse(label).ok_or_else(|| PyValueError::new_err(format!("unknown space `{label}`")))
}

#[pymethods]
impl Form {
    /// Random form from the seeded sampler.
    #[staticmethod]
    #[pyo3(signature = (seed, degree, space_label = "scalar", width = 1, ambient = 4, degree_cap = 2))]
    fn random(seed: u64, degree: usize, space_label: &str, width: usize, ambient: usize, degree_cap: u32) -> PyResult<Self> {
        let sp = space(space_label)?;
        Ok(Form { inner: FormSampler::new(seed, ambient, degree_cap).form(degree, sp, width) })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Form { inner: CoreForm::from_text(text).map_err(err)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn ambient(&self) -> usize {
        self.inner.ambient()
    }

    #[getter]
    fn space(&self) -> String {
        self.inner.space().label()
    }

    #[getter]
    fn width(&self) -> usize {
        self.inner.width()
    }

    fn d(&self) -> Self {
        Form { inner: self.inner.d() }
    }

    fn hodge(&self) -> PyResult<Self> {
        Ok(Form { inner: self.inner.hodge().map_err(err)? })
    }

    /// Wedge of two scalar forms.
    fn wedge(&self, other: &Form) -> PyResult<Self> {
        Ok(Form { inner: self.inner.wedge_scalar(&other.inner).map_err(err)? })
    }

    fn scale(&self, s: &str) -> PyResult<Self> {
        Ok(Form { inner: self.inner.scale(&parse_rational(s).map_err(err)?) })
    }

    fn __add__(&self, other: &Form) -> PyResult<Self> {
        Ok(Form { inner: self.inner.add(&other.inner).map_err(err)? })
    }

    fn __sub__(&self, other: &Form) -> PyResult<Self> {
        Ok(Form { inner: self.inner.sub(&other.inner).map_err(err)? })
    }

    fn __neg__(&self) -> Self {
        Form { inner: self.inner.neg() }
    }

    fn __eq__(&self, other: &Form) -> bool {
        self.inner == other.inner
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Integral over the unit box of a scalar top form.
    fn integrate(&self) -> PyResult<String> {
        Ok(format_rational(&self.inner.integrate_scalar().map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("Form(degree={}, space={}, ambient={})", self.inner.degree(), self.inner.space().label(), self.inner.ambient())
    }
}

/// Names accepted by `Instance.builtin`.
#[pyfunction]
fn builtin_instances() -> Vec<&'static str> {
    vec![
        "abelian_chain",
        "su2_crossed",
        "u2_crossed",
        "su2_l_u1",
        "su2_peiffer",
        "aff1_peiffer",
        "su2_ym",
        "u1_elec1",
        "u1_elec2",
        "u1_elec3",
    ]
}

#[pymodule]
fn pytrigauge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_class::<Form>()?;
    m.add_function(wrap_pyfunction!(builtin_instances, m)?)?;
    Ok(())
}
