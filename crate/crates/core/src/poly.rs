//! Sparse multivariate polynomials with exact (or float) coefficients.
//!
//! Monomials pack up to eight exponents of eight bits each into a `u64`,
//! so multiplying monomials is a single integer addition. Coefficients are
//! kept canonical: no stored term has a zero coefficient.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{Rational, Scalar};

pub const MAX_VARS: usize = 8;
const BITS: u32 = 8;
const MASK: u64 = 0xff;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut packed = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MASK as u32, "exponent {e} exceeds the packed range");
            packed |= (e as u64) << (BITS * i as u32);
        }
        Monomial(packed)
    }

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS);
        Monomial(1 << (BITS * i as u32))
    }

    pub fn exponent(self, i: usize) -> u32 {
        ((self.0 >> (BITS * i as u32)) & MASK) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    pub fn degree(self) -> u32 {
        (0..MAX_VARS).map(|i| self.exponent(i)).sum()
    }

    pub fn mul(self, rhs: Self) -> Self {
        debug_assert!((0..MAX_VARS).all(|i| self.exponent(i) + rhs.exponent(i) <= MASK as u32));
        Monomial(self.0 + rhs.0)
    }

    fn with_exponent(self, i: usize, e: u32) -> Self {
        let shift = BITS * i as u32;
        Monomial((self.0 & !(MASK << shift)) | ((e as u64) << shift))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{:?}", self.exponents(MAX_VARS))
    }
}

#[derive(Clone, PartialEq)]
pub struct Polynomial<F = Rational> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Scalar> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::term(nvars, Monomial::ONE, c)
    }

    pub fn term(nvars: usize, m: Monomial, c: F) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The coordinate function `x_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Self::term(nvars, Monomial::var(i), F::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: Monomial) -> F {
        self.terms.get(&m).cloned().unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    fn accumulate(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &Self) {
        debug_assert_eq!(self.nvars, rhs.nvars);
        for (m, c) in &rhs.terms {
            self.accumulate(*m, c.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, rhs: &Self) {
        debug_assert_eq!(self.nvars, rhs.nvars);
        for (m, c) in &rhs.terms {
            self.accumulate(*m, -c.clone());
        }
    }

    /// `self += scale * a * b`.
    pub fn add_product(&mut self, a: &Self, b: &Self, scale: &F) {
        debug_assert_eq!(a.nvars, b.nvars);
        if scale.is_zero() {
            return;
        }
        for (ma, ca) in &a.terms {
            let cs = ca.mul_ref(scale);
            for (mb, cb) in &b.terms {
                self.accumulate(ma.mul(*mb), cs.mul_ref(cb));
            }
        }
    }

    /// `self += scale * a`.
    pub fn add_scaled(&mut self, a: &Self, scale: &F) {
        if scale.is_zero() {
            return;
        }
        for (m, c) in &a.terms {
            self.accumulate(*m, c.mul_ref(scale));
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        out.add_product(self, rhs, &F::one());
        out
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        out.add_scaled(self, s);
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(self.nvars, F::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to `x_{i+1}`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e > 0 {
                out.accumulate(m.with_exponent(i, e - 1), c.mul_ref(&F::from_i64(e as i64)));
            }
        }
        out
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    t *= x;
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes the constant `value` for `x_{i+1}`.
    pub fn substitute(&self, i: usize, value: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..m.exponent(i) {
                t *= value;
            }
            out.accumulate(m.with_exponent(i, 0), t);
        }
        out
    }

    /// Integrates `x_1..x_k` over the unit cube, leaving a polynomial in the
    /// remaining variables.
    pub fn integrate_unit_box(&self, k: usize) -> Self {
        assert!(k <= self.nvars);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut denom = F::one();
            let mut rest = *m;
            for i in 0..k {
                denom *= &F::from_i64(m.exponent(i) as i64 + 1);
                rest = rest.with_exponent(i, 0);
            }
            out.accumulate(rest, c.clone() / denom);
        }
        out
    }

    /// Terms whose `x_{i+1}` exponent equals `power`, with that factor removed.
    pub fn coefficient_of(&self, i: usize, power: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.exponent(i) == power {
                out.accumulate(m.with_exponent(i, 0), c.clone());
            }
        }
        out
    }

    /// Reinterprets the polynomial in a ring with more variables.
    pub fn with_nvars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars && nvars <= MAX_VARS);
        Polynomial { nvars, terms: self.terms.clone() }
    }

    /// Value of a polynomial known to be constant.
    pub fn constant_term(&self) -> F {
        self.coefficient(Monomial::ONE)
    }

    pub fn map_coeffs<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        let mut out = Polynomial::<G>::zero(self.nvars);
        for (m, c) in &self.terms {
            out.accumulate(*m, f(c));
        }
        out
    }
}

impl Polynomial<Rational> {
    pub fn to_scalar<G: Scalar>(&self) -> Polynomial<G> {
        self.map_coeffs(G::from_rational)
    }
}

impl<F: Scalar> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c.render())?;
            for i in 0..self.nvars {
                match m.exponent(i) {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    e => write!(f, "*x{}^{e}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    type P = Polynomial<Rational>;

    fn x(i: usize) -> P {
        P::var(3, i)
    }

    #[test]
    fn ring_operations() {
        let p = x(0).add(&x(1)); // x1 + x2
        let sq = p.mul(&p);
        let expected = x(0).mul(&x(0)).add(&x(0).mul(&x(1)).scale(&int(2))).add(&x(1).mul(&x(1)));
        assert_eq!(sq, expected);
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.pow(3).total_degree(), 3);
    }

    #[test]
    fn derivative_and_eval() {
        // x1^2 x2 + 3 x3
        let p = x(0).pow(2).mul(&x(1)).add(&x(2).scale(&int(3)));
        assert_eq!(p.derivative(0), x(0).mul(&x(1)).scale(&int(2)));
        assert_eq!(p.eval(&[int(2), int(5), int(1)]), int(23));
        assert_eq!(p.substitute(1, &int(0)), x(2).scale(&int(3)));
    }

    #[test]
    fn box_integral() {
        // ∫ x1 x2 over [0,1]^3 = 1/4
        let p = x(0).mul(&x(1));
        assert_eq!(p.integrate_unit_box(3).constant_term(), rat(1, 4));
        // integrating only x1 leaves x2/2
        assert_eq!(p.integrate_unit_box(1), x(1).scale(&rat(1, 2)));
    }

    #[test]
    fn coefficient_extraction() {
        let e = x(2);
        let p = x(0).add(&x(1).mul(&e)).add(&e.pow(2).scale(&int(7)));
        assert_eq!(p.coefficient_of(2, 1), x(1));
        assert_eq!(p.coefficient_of(2, 0), x(0));
        assert_eq!(p.coefficient_of(2, 2), P::constant(3, int(7)));
    }
}
