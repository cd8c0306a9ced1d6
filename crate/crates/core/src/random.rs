//! Seeded random polynomials and forms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::random_rational;
use crate::forms::{masks, Form, Space};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Rational;

/// Draws sparse random polynomial forms in the first `ambient` coordinates.
#[derive(Clone, Debug)]
pub struct FormSampler {
    rng: ChaCha8Rng,
    pub ambient: usize,
    pub nvars: usize,
    /// Maximum total degree of a monomial.
    pub degree_cap: u32,
    /// Maximum number of terms per coefficient polynomial.
    pub terms: usize,
    /// Bound on numerators and denominators.
    pub bound: u32,
}

impl FormSampler {
    pub fn new(seed: u64, ambient: usize, degree_cap: u32) -> Self {
        FormSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            ambient,
            nvars: ambient,
            degree_cap,
            terms: 2,
            bound: 3,
        }
    }

    pub fn with_nvars(mut self, nvars: usize) -> Self {
        self.nvars = nvars;
        self
    }

    pub fn with_terms(mut self, terms: usize) -> Self {
        self.terms = terms;
        self
    }

    pub fn rational(&mut self) -> Rational {
        random_rational(&mut self.rng, self.bound)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn polynomial(&mut self) -> Polynomial {
        let mut p = Polynomial::zero(self.nvars);
        let n = self.rng.gen_range(0..=self.terms);
        for _ in 0..n {
            let total = self.rng.gen_range(0..=self.degree_cap);
            let mut exps = vec![0u32; self.ambient];
            for _ in 0..total {
                exps[self.rng.gen_range(0..self.ambient)] += 1;
            }
            let c = self.rational();
            p.add_assign_ref(&Polynomial::term(self.nvars, Monomial::from_exponents(&exps), c));
        }
        p
    }

    /// A form with every component drawn independently.
    pub fn form(&mut self, degree: usize, space: Space, width: usize) -> Form {
        let mut f = Form::zero(self.ambient, self.nvars, degree, space, width);
        if degree > self.ambient {
            return f;
        }
        for mask in masks(self.ambient, degree) {
            let coeffs = (0..width).map(|_| self.polynomial()).collect();
            f.set_component(mask, coeffs).expect("shape");
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = FormSampler::new(11, 4, 3).form(2, Space::H, 3);
        let b = FormSampler::new(11, 4, 3).form(2, Space::H, 3);
        let c = FormSampler::new(12, 4, 3).form(2, Space::H, 3);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.poly_degree() <= 3);
    }
}
