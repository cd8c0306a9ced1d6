//! Finite-dimensional Lie algebras given by structure constants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Tensor3};
use crate::scalar::{int, rat, Rational, Scalar};

/// Associative matrix representation of a Lie algebra basis; required for
/// the plain wedge product `A ∧ A'`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep<F = Rational> {
    pub size: usize,
    pub matrices: Vec<Matrix<F>>,
}

impl<F: Scalar> MatrixRep<F> {
    pub fn new(size: usize, matrices: Vec<Matrix<F>>) -> Result<Self> {
        if matrices.iter().any(|m| m.rows() != size || m.cols() != size) {
            return Err(Error::Dimension(format!("representation matrices must be {size}x{size}")));
        }
        Ok(MatrixRep { size, matrices })
    }

    /// Image of the coordinate vector `v`.
    pub fn embed(&self, v: &[F]) -> Matrix<F> {
        let mut out = Matrix::zeros(self.size, self.size);
        for (x, m) in v.iter().zip(&self.matrices) {
            if !x.is_zero() {
                out = out.add(&m.scale(x));
            }
        }
        out
    }

    /// Coordinates of a matrix lying in the span of the representation, if any.
    pub fn project(&self, m: &Matrix<F>) -> Option<Vec<F>> {
        let n2 = self.size * self.size;
        let dim = self.matrices.len();
        let mut sys = Matrix::zeros(n2, dim + 1);
        for (j, b) in self.matrices.iter().enumerate() {
            for r in 0..self.size {
                for c in 0..self.size {
                    sys.set(r * self.size + c, j, b.get(r, c).clone());
                }
            }
        }
        for r in 0..self.size {
            for c in 0..self.size {
                sys.set(r * self.size + c, dim, m.get(r, c).clone());
            }
        }
        let (red, pivots) = sys.rref();
        if pivots.contains(&dim) || pivots.len() < dim {
            return None;
        }
        Some((0..dim).map(|i| red.get(i, dim).clone()).collect())
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G + Copy) -> MatrixRep<G> {
        MatrixRep { size: self.size, matrices: self.matrices.iter().map(|m| m.map(f)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<F = Rational> {
    name: String,
    dim: usize,
    structure: Tensor3<F>,
    rep: Option<MatrixRep<F>>,
}

/// Coordinates of an element together with the name of its algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<F = Rational> {
    pub algebra: String,
    pub coords: Vec<F>,
}

impl<F: Scalar> AlgebraElement<F> {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, s: &F) -> Self {
        AlgebraElement {
            algebra: self.algebra.clone(),
            coords: self.coords.iter().map(|x| x.mul_ref(s)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        AlgebraElement {
            algebra: self.algebra.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        AlgebraElement {
            algebra: self.algebra.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    /// Largest coordinate magnitude.
    pub fn max_abs(&self) -> F {
        max_abs(&self.coords)
    }
}

pub(crate) fn max_abs<F: Scalar>(v: &[F]) -> F {
    v.iter().map(Scalar::magnitude).fold(F::zero(), |m, x| if x > m { x } else { m })
}

impl<F: Scalar> LieAlgebra<F> {
    /// Builds an algebra from a dense structure tensor `c[a][b][k]`.
    pub fn new(name: impl Into<String>, structure: Tensor3<F>) -> Result<Self> {
        let (a, b, k) = structure.shape();
        if a != b || b != k {
            return Err(Error::Dimension(format!("structure tensor of shape {a}x{b}x{k}")));
        }
        Ok(LieAlgebra { name: name.into(), dim: a, structure, rep: None })
    }

    pub fn with_rep(mut self, rep: MatrixRep<F>) -> Result<Self> {
        if rep.matrices.len() != self.dim {
            return Err(Error::Dimension(format!(
                "{} representation matrices for an algebra of dimension {}",
                rep.matrices.len(),
                self.dim
            )));
        }
        self.rep = Some(rep);
        Ok(self)
    }

    pub fn abelian(name: impl Into<String>, dim: usize) -> Self {
        LieAlgebra { name: name.into(), dim, structure: Tensor3::zeros(dim, dim, dim), rep: None }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure(&self) -> &Tensor3<F> {
        &self.structure
    }

    pub fn structure_mut(&mut self) -> &mut Tensor3<F> {
        &mut self.structure
    }

    pub fn rep(&self) -> Option<&MatrixRep<F>> {
        self.rep.as_ref()
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.is_zero()
    }

    pub fn element(&self, coords: Vec<F>) -> Result<AlgebraElement<F>> {
        if coords.len() != self.dim {
            return Err(Error::Dimension(format!(
                "{} coordinates for {} of dimension {}",
                coords.len(),
                self.name,
                self.dim
            )));
        }
        Ok(AlgebraElement { algebra: self.name.clone(), coords })
    }

    pub fn zero_element(&self) -> AlgebraElement<F> {
        AlgebraElement { algebra: self.name.clone(), coords: vec![F::zero(); self.dim] }
    }

    pub fn basis(&self, i: usize) -> AlgebraElement<F> {
        let mut e = self.zero_element();
        e.coords[i] = F::one();
        e
    }

    pub fn check_member(&self, x: &AlgebraElement<F>) -> Result<()> {
        if x.algebra != self.name || x.coords.len() != self.dim {
            return Err(Error::AlgebraMismatch {
                expected: self.name.clone(),
                found: x.algebra.clone(),
            });
        }
        Ok(())
    }

    pub fn bracket_coords(&self, a: &[F], b: &[F]) -> Vec<F> {
        self.structure.apply(a, b)
    }

    pub fn bracket(&self, a: &AlgebraElement<F>, b: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(AlgebraElement { algebra: self.name.clone(), coords: self.bracket_coords(&a.coords, &b.coords) })
    }

    /// Largest component of `[c_a, c_b] + [c_b, c_a]` over basis pairs.
    pub fn antisymmetry_residual(&self) -> F {
        let mut worst = F::zero();
        for a in 0..self.dim {
            for b in 0..self.dim {
                for k in 0..self.dim {
                    let r = (self.structure.get(a, b, k).clone() + self.structure.get(b, a, k).clone())
                        .magnitude();
                    if r > worst {
                        worst = r;
                    }
                }
            }
        }
        worst
    }

    /// Largest component of the cyclic Jacobi sum over basis triples.
    pub fn jacobi_residual(&self) -> F {
        let n = self.dim;
        let e = |i: usize| {
            let mut v = vec![F::zero(); n];
            v[i] = F::one();
            v
        };
        let mut worst = F::zero();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab = self.bracket_coords(&e(a), &e(b));
                    let bc = self.bracket_coords(&e(b), &e(c));
                    let ca = self.bracket_coords(&e(c), &e(a));
                    let t1 = self.bracket_coords(&ab, &e(c));
                    let t2 = self.bracket_coords(&bc, &e(a));
                    let t3 = self.bracket_coords(&ca, &e(b));
                    for k in 0..n {
                        let r = (t1[k].clone() + t2[k].clone() + t3[k].clone()).magnitude();
                        if r > worst {
                            worst = r;
                        }
                    }
                }
            }
        }
        worst
    }

    /// Largest entry of `ρ[e_a]ρ[e_b] - ρ[e_b]ρ[e_a] - Σ c_ab^k ρ[e_k]`.
    pub fn rep_residual(&self) -> Option<F> {
        let rep = self.rep.as_ref()?;
        let mut worst = F::zero();
        for a in 0..self.dim {
            for b in 0..self.dim {
                let ma = &rep.matrices[a];
                let mb = &rep.matrices[b];
                let comm = ma.mul(mb).ok()?.sub(&mb.mul(ma).ok()?);
                let img = rep.embed(self.structure.fiber(a, b));
                let r = comm.sub(&img).max_abs();
                if r > worst {
                    worst = r;
                }
            }
        }
        Some(worst)
    }

    /// Matrix of `ad(e_a)`.
    pub fn ad(&self, a: usize) -> Matrix<F> {
        self.structure.left_slice(a)
    }

    /// Killing form `tr(ad x ad y)` in the basis.
    pub fn killing_form(&self) -> Matrix<F> {
        let ads: Vec<Matrix<F>> = (0..self.dim).map(|a| self.ad(a)).collect();
        let mut k = Matrix::zeros(self.dim, self.dim);
        for a in 0..self.dim {
            for b in 0..self.dim {
                let p = ads[a].mul(&ads[b]).expect("square");
                let mut tr = F::zero();
                for i in 0..self.dim {
                    tr += p.get(i, i);
                }
                k.set(a, b, tr);
            }
        }
        k
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G + Copy) -> LieAlgebra<G> {
        LieAlgebra {
            name: self.name.clone(),
            dim: self.dim,
            structure: self.structure.map(f),
            rep: self.rep.as_ref().map(|r| r.map(f)),
        }
    }
}

impl LieAlgebra<Rational> {
    /// su(2) ≅ so(3) with `[e_1, e_2] = e_3` cyclically, carrying the real
    /// 3x3 representation `(L_i)_{jk} = -ε_{ijk}`.
    pub fn su2(name: impl Into<String>) -> Self {
        let mut t = Tensor3::zeros(3, 3, 3);
        for (a, b, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            t.set(a, b, k, int(1));
            t.set(b, a, k, int(-1));
        }
        let mats = (0..3)
            .map(|i| {
                let mut m = Matrix::zeros(3, 3);
                for j in 0..3 {
                    for k in 0..3 {
                        m.set(j, k, int(-levi_civita(i, j, k)));
                    }
                }
                m
            })
            .collect();
        let rep = MatrixRep::new(3, mats).expect("3x3");
        LieAlgebra::new(name, t).expect("cubic").with_rep(rep).expect("dim 3")
    }

    /// u(2) ≅ su(2) ⊕ u(1), represented block-diagonally on R^4.
    pub fn u2(name: impl Into<String>) -> Self {
        let su = Self::su2("su2");
        let mut t = Tensor3::zeros(4, 4, 4);
        for (a, b, k, v) in su.structure.entries() {
            t.set(a, b, k, v);
        }
        let su_rep = su.rep.as_ref().expect("su2 carries a representation");
        let mut mats = Vec::new();
        for m in &su_rep.matrices {
            let mut big = Matrix::zeros(4, 4);
            for i in 0..3 {
                for j in 0..3 {
                    big.set(i, j, m.get(i, j).clone());
                }
            }
            mats.push(big);
        }
        let mut center = Matrix::zeros(4, 4);
        center.set(3, 3, int(1));
        mats.push(center);
        LieAlgebra::new(name, t)
            .expect("cubic")
            .with_rep(MatrixRep::new(4, mats).expect("4x4"))
            .expect("dim 4")
    }

    /// The two-dimensional non-abelian algebra `[x, y] = y`.
    pub fn aff1(name: impl Into<String>) -> Self {
        let mut t = Tensor3::zeros(2, 2, 2);
        t.set(0, 1, 1, int(1));
        t.set(1, 0, 1, int(-1));
        let mut mx = Matrix::zeros(2, 2);
        mx.set(0, 0, int(1));
        let mut my = Matrix::zeros(2, 2);
        my.set(0, 1, int(1));
        LieAlgebra::new(name, t)
            .expect("cubic")
            .with_rep(MatrixRep::new(2, vec![mx, my]).expect("2x2"))
            .expect("dim 2")
    }

    /// Deterministic pseudo-random element with numerator and denominator
    /// magnitudes bounded by `bound`.
    pub fn random_element(&self, seed: u64, bound: u32) -> AlgebraElement<Rational> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords = (0..self.dim).map(|_| random_rational(&mut rng, bound)).collect();
        AlgebraElement { algebra: self.name.clone(), coords }
    }

    pub fn to_scalar<G: Scalar>(&self) -> LieAlgebra<G> {
        self.map(G::from_rational)
    }
}

fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

pub(crate) fn random_rational(rng: &mut impl Rng, bound: u32) -> Rational {
    let b = bound.max(1) as i64;
    let p = rng.gen_range(-b..=b);
    let q = rng.gen_range(1..=b);
    rat(p, q)
}
