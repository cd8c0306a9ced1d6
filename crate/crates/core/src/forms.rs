//! Vector-valued differential forms on ℝ^d with polynomial coefficients.
//!
//! A form of degree `k` stores, for each increasing index tuple `I` (encoded
//! as a bitmask over `dx_1..dx_d`), a vector of `width` polynomial
//! coefficients. The coefficient ring may carry extra variables beyond the
//! `d` coordinates; they are untouched by `d` and by box integration, which
//! is how a symbolic perturbation parameter rides along.

use std::collections::BTreeMap;
use std::fmt;

use crate::crossed::{Slot, TwoCrossedModule};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Tensor3};
use crate::poly::{Monomial, Polynomial, MAX_VARS};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// Where the vector coefficients of a form live.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    Scalar,
    Alg(Slot),
    /// `n × n` matrices, row-major.
    Matrix(usize),
}

impl Space {
    pub const G: Space = Space::Alg(Slot::G);
    pub const H: Space = Space::Alg(Slot::H);
    pub const L: Space = Space::Alg(Slot::L);

    pub fn label(&self) -> String {
        match self {
            Space::Scalar => "scalar".into(),
            Space::Alg(s) => s.label().into(),
            Space::Matrix(n) => format!("matrix:{n}"),
        }
    }

    pub fn parse(s: &str) -> Option<Space> {
        match s {
            "scalar" => Some(Space::Scalar),
            _ => {
                if let Some(n) = s.strip_prefix("matrix:") {
                    return n.parse().ok().map(Space::Matrix);
                }
                Slot::from_label(s).map(Space::Alg)
            }
        }
    }
}

/// Sparse tensor entries `(a, b, k, c)`: `e_a ⊗ e_b ↦ c e_k`.
pub type Entries<F> = Vec<(usize, usize, usize, F)>;

/// Sign of the shuffle that sorts the concatenation of two disjoint tuples.
pub fn shuffle_sign(i: u32, j: u32) -> i64 {
    let mut inversions = 0u32;
    let mut rest = j;
    while rest != 0 {
        let b = rest.trailing_zeros();
        inversions += (i >> (b + 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Converts a 1-based increasing index tuple to a mask.
pub fn mask_of(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &i| m | (1 << (i - 1)))
}

/// 1-based indices of a mask, increasing.
pub fn indices_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b as usize + 1).collect()
}

/// All masks of `k`-element subsets of `{1..d}`, in increasing order.
pub fn masks(d: usize, k: usize) -> Vec<u32> {
    (0u32..(1 << d)).filter(|m| m.count_ones() as usize == k).collect()
}

#[derive(Clone, PartialEq)]
pub struct Form<F = Rational> {
    ambient: usize,
    nvars: usize,
    degree: usize,
    space: Space,
    width: usize,
    comps: BTreeMap<u32, Vec<Polynomial<F>>>,
}

impl<F: Scalar> Form<F> {
    pub fn zero(ambient: usize, nvars: usize, degree: usize, space: Space, width: usize) -> Self {
        assert!(ambient >= 1 && ambient <= nvars && nvars <= MAX_VARS);
        Form { ambient, nvars, degree, space, width, comps: BTreeMap::new() }
    }

    /// A form with one component, `coeffs · dx^I`.
    pub fn monomial(
        ambient: usize,
        nvars: usize,
        indices: &[usize],
        space: Space,
        coeffs: Vec<Polynomial<F>>,
    ) -> Result<Self> {
        let mut f = Self::zero(ambient, nvars, indices.len(), space, coeffs.len());
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i == 0 || i > ambient) {
            return Err(Error::Dimension(format!("index tuple {indices:?} is not increasing in 1..={ambient}")));
        }
        f.set_component(mask_of(indices), coeffs)?;
        Ok(f)
    }

    /// The scalar 0-form given by a polynomial.
    pub fn function(ambient: usize, p: Polynomial<F>) -> Self {
        let nvars = p.nvars();
        let mut f = Self::zero(ambient, nvars, 0, Space::Scalar, 1);
        if !p.is_zero() {
            f.comps.insert(0, vec![p]);
        }
        f
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn space(&self) -> Space {
        self.space
    }
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn components(&self) -> impl Iterator<Item = (u32, &Vec<Polynomial<F>>)> {
        self.comps.iter().map(|(m, v)| (*m, v))
    }

    pub fn component(&self, mask: u32) -> Vec<Polynomial<F>> {
        self.comps
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| vec![Polynomial::zero(self.nvars); self.width])
    }

    pub fn set_component(&mut self, mask: u32, coeffs: Vec<Polynomial<F>>) -> Result<()> {
        if mask.count_ones() as usize != self.degree || mask >> self.ambient != 0 {
            return Err(Error::Dimension("component index does not match the form degree".into()));
        }
        if coeffs.len() != self.width || coeffs.iter().any(|p| p.nvars() != self.nvars) {
            return Err(Error::Dimension("component vector has the wrong shape".into()));
        }
        if coeffs.iter().all(Polynomial::is_zero) {
            self.comps.remove(&mask);
        } else {
            self.comps.insert(mask, coeffs);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Largest absolute value of any coefficient.
    pub fn max_coefficient(&self) -> F {
        let mut worst = F::zero();
        for p in self.comps.values().flatten() {
            for (_, c) in p.terms() {
                let c = c.magnitude();
                if c > worst {
                    worst = c;
                }
            }
        }
        worst
    }

    /// Same shape, no components.
    pub fn zero_like(&self) -> Self {
        Self::zero(self.ambient, self.nvars, self.degree, self.space, self.width)
    }

    fn accumulate(&mut self, mask: u32, k: usize, p: &Polynomial<F>, scale: &F) {
        let (nvars, width) = (self.nvars, self.width);
        let entry = self.comps.entry(mask).or_insert_with(|| vec![Polynomial::zero(nvars); width]);
        entry[k].add_scaled(p, scale);
    }

    fn prune(&mut self) {
        self.comps.retain(|_, v| v.iter().any(|p| !p.is_zero()));
    }

    fn same_shape(&self, rhs: &Self) -> Result<()> {
        if self.ambient != rhs.ambient || self.nvars != rhs.nvars {
            return Err(Error::Dimension("forms live on different coordinate rings".into()));
        }
        if self.space != rhs.space || self.width != rhs.width {
            return Err(Error::AlgebraMismatch { expected: self.space.label(), found: rhs.space.label() });
        }
        if self.degree != rhs.degree {
            return Err(Error::Dimension(format!("degree {} vs {}", self.degree, rhs.degree)));
        }
        Ok(())
    }

    /// `self + s * rhs`.
    pub fn add_scaled(&self, rhs: &Self, s: &F) -> Result<Self> {
        self.same_shape(rhs)?;
        let mut out = self.clone();
        for (m, v) in &rhs.comps {
            for (k, p) in v.iter().enumerate() {
                out.accumulate(*m, k, p, s);
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.add_scaled(rhs, &F::one())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add_scaled(rhs, &-F::one())
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = self.zero_like();
        if s.is_zero() {
            return out;
        }
        for (m, v) in &self.comps {
            out.comps.insert(*m, v.iter().map(|p| p.scale(s)).collect());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    /// Multiplies every coefficient by a polynomial.
    pub fn mul_poly(&self, p: &Polynomial<F>) -> Self {
        let mut out = self.zero_like();
        for (m, v) in &self.comps {
            out.comps.insert(*m, v.iter().map(|q| q.mul(p)).collect());
        }
        out.prune();
        out
    }

    /// Applies a map to every coefficient polynomial.
    pub fn map_polys(&self, f: impl Fn(&Polynomial<F>) -> Polynomial<F>) -> Self {
        let mut out = self.zero_like();
        for (m, v) in &self.comps {
            out.comps.insert(*m, v.iter().map(&f).collect());
        }
        out.prune();
        out
    }

    /// Embeds the coefficients into a ring with more variables.
    pub fn with_nvars(&self, nvars: usize) -> Self {
        let mut out = Self::zero(self.ambient, nvars, self.degree, self.space, self.width);
        for (m, v) in &self.comps {
            out.comps.insert(*m, v.iter().map(|p| p.with_nvars(nvars)).collect());
        }
        out
    }

    /// Relabels the coefficient space without touching coordinates.
    pub fn relabel(&self, space: Space) -> Self {
        let mut out = self.clone();
        out.space = space;
        out
    }

    /// Largest total polynomial degree among the coefficients.
    pub fn poly_degree(&self) -> u32 {
        self.comps.values().flatten().map(|p| p.total_degree()).max().unwrap_or(0)
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(self.ambient, self.nvars, self.degree + 1, self.space, self.width);
        for (&mask, v) in &self.comps {
            for i in 0..self.ambient {
                if mask & (1 << i) != 0 {
                    continue;
                }
                let below = (mask & ((1u32 << i) - 1)).count_ones();
                let sign = if below % 2 == 0 { F::one() } else { -F::one() };
                for (k, p) in v.iter().enumerate() {
                    let dp = p.derivative(i);
                    if !dp.is_zero() {
                        out.accumulate(mask | (1 << i), k, &dp, &sign);
                    }
                }
            }
        }
        out.prune();
        out
    }

    /// Bilinear wedge through a coefficient tensor:
    /// `Σ u^a ∧ v^b c_{ab}^k e_k`.
    pub fn wedge_entries(&self, rhs: &Self, entries: &[(usize, usize, usize, F)], space: Space, width: usize) -> Result<Self> {
        if self.ambient != rhs.ambient || self.nvars != rhs.nvars {
            return Err(Error::Dimension("forms live on different coordinate rings".into()));
        }
        let mut out = Self::zero(self.ambient, self.nvars, self.degree + rhs.degree, space, width);
        if self.degree + rhs.degree > self.ambient {
            return Ok(out);
        }
        let mut prod = Polynomial::zero(self.nvars);
        for (&m1, v1) in &self.comps {
            for (&m2, v2) in &rhs.comps {
                if m1 & m2 != 0 {
                    continue;
                }
                let sign = F::from_i64(shuffle_sign(m1, m2));
                for (a, b, k, c) in entries {
                    let (p, q) = (&v1[*a], &v2[*b]);
                    if p.is_zero() || q.is_zero() {
                        continue;
                    }
                    prod.add_product(p, q, &c.mul_ref(&sign));
                    if !prod.is_zero() {
                        out.accumulate(m1 | m2, *k, &prod, &F::one());
                        prod = Polynomial::zero(self.nvars);
                    }
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// Wedge through a [`Tensor3`] whose shape matches the two widths.
    pub fn wedge_tensor(&self, rhs: &Self, t: &Tensor3<F>, space: Space) -> Result<Self> {
        let (l, r, o) = t.shape();
        if l != self.width || r != rhs.width {
            return Err(Error::Dimension(format!(
                "tensor of shape {l}x{r}x{o} cannot combine widths {} and {}",
                self.width, rhs.width
            )));
        }
        self.wedge_entries(rhs, &t.entries(), space, o)
    }

    /// Wedge of two scalar forms.
    pub fn wedge_scalar(&self, rhs: &Self) -> Result<Self> {
        let entries: Entries<F> = (0..self.width).map(|a| (a, 0, a, F::one())).collect();
        if rhs.width != 1 {
            return Err(Error::AlgebraMismatch { expected: "scalar".into(), found: rhs.space.label() });
        }
        self.wedge_entries(rhs, &entries, self.space, self.width)
    }

    /// Applies the constant matrix `m` to every coefficient vector.
    pub fn apply_matrix(&self, m: &Matrix<F>, space: Space) -> Result<Self> {
        if m.cols() != self.width {
            return Err(Error::Dimension(format!("matrix with {} columns on width {}", m.cols(), self.width)));
        }
        let mut out = Self::zero(self.ambient, self.nvars, self.degree, space, m.rows());
        for (&mask, v) in &self.comps {
            for i in 0..m.rows() {
                for (j, p) in v.iter().enumerate() {
                    let c = m.get(i, j);
                    if !c.is_zero() {
                        out.accumulate(mask, i, p, c);
                    }
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// Euclidean Hodge star with orientation `dx_1 ∧ … ∧ dx_d`.
    pub fn hodge(&self) -> Result<Self> {
        if self.degree > self.ambient {
            return Err(Error::Dimension("Hodge star of a form above top degree".into()));
        }
        let full = (1u32 << self.ambient) - 1;
        let mut out = Self::zero(self.ambient, self.nvars, self.ambient - self.degree, self.space, self.width);
        for (&mask, v) in &self.comps {
            let comp = full & !mask;
            let sign = F::from_i64(shuffle_sign(mask, comp));
            out.comps.insert(comp, v.iter().map(|p| p.scale(&sign)).collect());
        }
        Ok(out)
    }

    /// Integral over `[0,1]^d` of a top-degree form, as a polynomial in the
    /// extra variables.
    pub fn integrate(&self) -> Result<Vec<Polynomial<F>>> {
        if self.degree != self.ambient {
            return Err(Error::Dimension(format!(
                "only {}-forms can be integrated over the box, got degree {}",
                self.ambient, self.degree
            )));
        }
        let full = (1u32 << self.ambient) - 1;
        Ok(self.component(full).iter().map(|p| p.integrate_unit_box(self.ambient)).collect())
    }

    /// Integral of a scalar top-degree form with no extra variables.
    pub fn integrate_scalar(&self) -> Result<F> {
        if self.width != 1 {
            return Err(Error::AlgebraMismatch { expected: "scalar".into(), found: self.space.label() });
        }
        let v = self.integrate()?;
        let p = &v[0];
        if p.total_degree() > 0 {
            return Err(Error::Precondition("integral still depends on extra variables".into()));
        }
        Ok(p.constant_term())
    }

    /// Substitutes a constant for one of the coefficient-ring variables.
    pub fn substitute(&self, var: usize, value: &F) -> Self {
        self.map_polys(|p| p.substitute(var, value))
    }

    /// Whether every coefficient vanishes on all faces of `[0,1]^d`.
    pub fn vanishes_on_boundary(&self) -> bool {
        self.comps.values().flatten().all(|p| {
            (0..self.ambient).all(|i| p.substitute(i, &F::zero()).is_zero() && p.substitute(i, &F::one()).is_zero())
        })
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G + Copy) -> Form<G> {
        Form {
            ambient: self.ambient,
            nvars: self.nvars,
            degree: self.degree,
            space: self.space,
            width: self.width,
            comps: self
                .comps
                .iter()
                .map(|(m, v)| (*m, v.iter().map(|p| p.map_coeffs(f)).collect::<Vec<_>>()))
                .filter(|(_, v)| v.iter().any(|p| !p.is_zero()))
                .collect(),
        }
    }
}

impl Form<Rational> {
    pub fn to_scalar<G: Scalar>(&self) -> Form<G> {
        self.map(G::from_rational)
    }

    /// Text serialization: a header line followed by one record per nonzero
    /// coefficient, `i1,i2 b e1,...,en p/q` with 1-based indices and `-` for
    /// the empty tuple.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "form d={} nvars={} degree={} space={} width={}\n",
            self.ambient,
            self.nvars,
            self.degree,
            self.space.label(),
            self.width
        );
        for (&mask, v) in &self.comps {
            let idx = indices_of(mask);
            let idx = if idx.is_empty() {
                "-".to_string()
            } else {
                idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
            };
            for (b, p) in v.iter().enumerate() {
                for (m, c) in p.terms() {
                    let exps = m.exponents(self.nvars).iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",");
                    out.push_str(&format!("{idx} {} {exps} {}\n", b + 1, format_rational(c)));
                }
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
        let (_, header) = lines.next().ok_or_else(|| Error::Parse {
            location: "line 1".into(),
            message: "missing form header".into(),
        })?;
        let mut fields = BTreeMap::new();
        let mut words = header.split_whitespace();
        if words.next() != Some("form") {
            return Err(Error::Parse { location: "line 1".into(), message: "header must start with `form`".into() });
        }
        for w in words {
            let (k, v) = w.split_once('=').ok_or_else(|| Error::Parse {
                location: "line 1".into(),
                message: format!("expected key=value, got `{w}`"),
            })?;
            fields.insert(k.to_string(), v.to_string());
        }
        let get = |k: &str| {
            fields.get(k).cloned().ok_or_else(|| Error::Parse {
                location: "line 1".into(),
                message: format!("header is missing `{k}`"),
            })
        };
        let num = |k: &str| -> Result<usize> {
            get(k)?.parse().map_err(|_| Error::Parse { location: "line 1".into(), message: format!("`{k}` must be an integer") })
        };
        let (d, nvars, degree, width) = (num("d")?, num("nvars")?, num("degree")?, num("width")?);
        let space = Space::parse(&get("space")?)
            .ok_or_else(|| Error::Parse { location: "line 1".into(), message: "unknown space".into() })?;
        if d == 0 || nvars < d || nvars > MAX_VARS {
            return Err(Error::Parse { location: "line 1".into(), message: "invalid d/nvars".into() });
        }
        let mut f = Self::zero(d, nvars, degree, space, width);
        for (n, line) in lines {
            let loc = format!("line {}", n + 1);
            let bad = |msg: &str| Error::Parse { location: loc.clone(), message: msg.to_string() };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(bad("expected `indices basis exponents coefficient`"));
            }
            let idx: Vec<usize> = if parts[0] == "-" {
                Vec::new()
            } else {
                parts[0].split(',').map(|s| s.parse().map_err(|_| bad("bad index"))).collect::<Result<_>>()?
            };
            if idx.len() != degree || idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|&i| i == 0 || i > d) {
                return Err(bad("index tuple must be increasing, 1-based and of length degree"));
            }
            let b: usize = parts[1].parse().map_err(|_| bad("bad basis index"))?;
            if b == 0 || b > width {
                return Err(bad("basis index out of range"));
            }
            let exps: Vec<u32> =
                parts[2].split(',').map(|s| s.parse().map_err(|_| bad("bad exponent"))).collect::<Result<_>>()?;
            if exps.len() != nvars {
                return Err(bad("exponent vector length must equal nvars"));
            }
            let c = parse_rational(parts[3]).map_err(|_| bad("bad coefficient"))?;
            let p = Polynomial::term(nvars, Monomial::from_exponents(&exps), Rational::from_i64(1));
            f.accumulate(mask_of(&idx), b - 1, &p, &c);
        }
        f.prune();
        Ok(f)
    }
}

impl<F: Scalar> fmt::Debug for Form<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}-form on R^{} in {} (width {})", self.degree, self.ambient, self.space.label(), self.width)?;
        for (m, v) in &self.comps {
            writeln!(f, "  dx{:?}: {:?}", indices_of(*m), v)?;
        }
        Ok(())
    }
}

fn expect_space<F: Scalar>(w: &Form<F>, space: Space) -> Result<()> {
    if w.space != space {
        return Err(Error::AlgebraMismatch { expected: space.label(), found: w.space.label() });
    }
    Ok(())
}

/// Wedge combinators for forms valued in a 2-crossed module.
impl<F: Scalar> TwoCrossedModule<F> {
    fn check_form(&self, w: &Form<F>) -> Result<()> {
        if let Space::Alg(s) = w.space {
            if w.width != self.dim(s) {
                return Err(Error::Dimension(format!("{}-valued form has width {}", s.label(), w.width)));
            }
        }
        Ok(())
    }

    /// `A ∧^[,] A'` in any one of the three algebras.
    pub fn wedge_bracket(&self, a: &Form<F>, b: &Form<F>) -> Result<Form<F>> {
        self.check_form(a)?;
        let Space::Alg(s) = a.space else {
            return Err(Error::AlgebraMismatch { expected: "g, h or l".into(), found: a.space.label() });
        };
        expect_space(b, a.space)?;
        a.wedge_tensor(b, self.algebra(s).structure(), a.space)
    }

    /// `A ∧^▷ W` for `A` in `g` and `W` in any algebra.
    pub fn wedge_action(&self, a: &Form<F>, w: &Form<F>) -> Result<Form<F>> {
        expect_space(a, Space::G)?;
        self.check_form(a)?;
        self.check_form(w)?;
        let Space::Alg(s) = w.space else {
            return Err(Error::AlgebraMismatch { expected: "g, h or l".into(), found: w.space.label() });
        };
        a.wedge_tensor(w, self.action_tensor(s), w.space)
    }

    /// `B ∧^{,} B'`, valued in `l`.
    pub fn wedge_peiffer(&self, b1: &Form<F>, b2: &Form<F>) -> Result<Form<F>> {
        expect_space(b1, Space::H)?;
        expect_space(b2, Space::H)?;
        self.check_form(b1)?;
        self.check_form(b2)?;
        b1.wedge_tensor(b2, &self.peiffer, Space::L)
    }

    /// `B ∧^▷' C`, valued in `l`.
    pub fn wedge_prime(&self, b: &Form<F>, c: &Form<F>) -> Result<Form<F>> {
        expect_space(b, Space::H)?;
        expect_space(c, Space::L)?;
        self.check_form(b)?;
        self.check_form(c)?;
        b.wedge_tensor(c, &self.prime_tensor(), Space::L)
    }

    /// `α̃(B)` or `β̃(C)` applied componentwise.
    pub fn lift_alpha(&self, b: &Form<F>) -> Result<Form<F>> {
        expect_space(b, Space::H)?;
        b.apply_matrix(&self.alpha, Space::G)
    }

    pub fn lift_beta(&self, c: &Form<F>) -> Result<Form<F>> {
        expect_space(c, Space::L)?;
        c.apply_matrix(&self.beta, Space::H)
    }

    /// Moves an algebra-valued form into its matrix representation.
    pub fn embed(&self, w: &Form<F>) -> Result<Form<F>> {
        let Space::Alg(s) = w.space else {
            return Err(Error::AlgebraMismatch { expected: "g, h or l".into(), found: w.space.label() });
        };
        let rep = self.algebra(s).rep().ok_or_else(|| {
            Error::Precondition(format!("algebra {} has no matrix representation", s.label()))
        })?;
        let n = rep.size;
        let mut m = Matrix::zeros(n * n, rep.matrices.len());
        for (a, mat) in rep.matrices.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    m.set(i * n + j, a, mat.get(i, j).clone());
                }
            }
        }
        w.apply_matrix(&m, Space::Matrix(n))
    }

    /// Inverse of [`embed`](Self::embed); fails if a coefficient leaves the image.
    pub fn project(&self, w: &Form<F>, slot: Slot) -> Result<Form<F>> {
        let rep = self.algebra(slot).rep().ok_or_else(|| {
            Error::Precondition(format!("algebra {} has no matrix representation", slot.label()))
        })?;
        let n = rep.size;
        expect_space(w, Space::Matrix(n))?;
        let dim = rep.matrices.len();
        let mut m = Matrix::zeros(n * n, dim);
        for (a, mat) in rep.matrices.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    m.set(i * n + j, a, mat.get(i, j).clone());
                }
            }
        }
        let g = m.generalized_inverse();
        let out = w.apply_matrix(&g, Space::Alg(slot))?;
        if F::EXACT && out.apply_matrix(&m, Space::Matrix(n))? != *w {
            return Err(Error::Precondition("matrix-valued form leaves the represented algebra".into()));
        }
        Ok(out)
    }
}

/// Associative wedge `Σ u^a ∧ v^b M_a M_b` of two matrix-valued forms.
pub fn wedge_matrix<F: Scalar>(a: &Form<F>, b: &Form<F>) -> Result<Form<F>> {
    let Space::Matrix(n) = a.space else {
        return Err(Error::AlgebraMismatch { expected: "matrix".into(), found: a.space.label() });
    };
    expect_space(b, a.space)?;
    let mut entries = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                entries.push((i * n + j, j * n + k, i * n + k, F::one()));
            }
        }
    }
    a.wedge_entries(b, &entries, a.space, n * n)
}

/// Scalar pairing `Σ u^a ∧ v^b G_ab` through a Gram matrix.
pub fn pair_with<F: Scalar>(a: &Form<F>, b: &Form<F>, gram: &Matrix<F>) -> Result<Form<F>> {
    if a.space != b.space {
        return Err(Error::AlgebraMismatch { expected: a.space.label(), found: b.space.label() });
    }
    if gram.rows() != a.width || gram.cols() != b.width {
        return Err(Error::Dimension("Gram matrix does not match the form width".into()));
    }
    let mut entries = Vec::new();
    for i in 0..gram.rows() {
        for j in 0..gram.cols() {
            let c = gram.get(i, j);
            if !c.is_zero() {
                entries.push((i, j, 0, c.clone()));
            }
        }
    }
    a.wedge_entries(b, &entries, Space::Scalar, 1)
}

/// Gauss-Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push(((1.0 - x) / 2.0, w / 2.0));
    }
    out
}

/// Tensor-product Gauss-Legendre integral of a polynomial over `[0,1]^k`
/// (first `k` variables; the rest are set to 0).
pub fn quadrature(p: &Polynomial<f64>, k: usize) -> f64 {
    let max_exp = (0..k).map(|i| p.terms().map(|(m, _)| m.exponent(i)).max().unwrap_or(0)).max().unwrap_or(0);
    let n = (max_exp as usize).div_ceil(2) + 1;
    let rule = gauss_legendre(n);
    let nv = p.nvars();
    let mut point = vec![0.0; nv];
    let mut idx = vec![0usize; k];
    let mut total = 0.0;
    loop {
        let mut w = 1.0;
        for (i, &j) in idx.iter().enumerate() {
            point[i] = rule[j].0;
            w *= rule[j].1;
        }
        total += w * p.eval(&point);
        let mut pos = 0;
        while pos < k {
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == k {
            break;
        }
    }
    total
}
