//! Invariant symmetric bilinear forms on `g`, `h`, `l` and the maps they
//! induce: `σ`, `κ`, `η₁`, `η₂`, `α*`, `β*`.

use num_traits::Zero;

use crate::algebra::AlgebraElement;
use crate::crossed::{AxiomReport, Slot, TwoCrossedModule};
use crate::error::{Error, Result};
use crate::linalg::{bilinear, Matrix, Tensor3};
use crate::scalar::{Rational, Scalar};

/// Which of the two circulating conventions names which `η`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EtaConvention {
    /// `⟨{Y,Y'},Z⟩ = -⟨Y', η₁(Z,Y)⟩ = -⟨Y, η₂(Z,Y')⟩`.
    #[default]
    AsPrinted,
    /// The same maps with the labels exchanged.
    Swapped,
}

/// Gram matrices of `⟨,⟩_g`, `⟨,⟩_h`, `⟨,⟩_l` with their inverses.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantForms<F = Rational> {
    grams: [Matrix<F>; 3],
    inverses: [Matrix<F>; 3],
}

fn idx(slot: Slot) -> usize {
    match slot {
        Slot::G => 0,
        Slot::H => 1,
        Slot::L => 2,
    }
}

fn unit<F: Scalar>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

impl<F: Scalar> InvariantForms<F> {
    /// Validates symmetry and non-degeneracy; invariance is checked separately.
    pub fn new(gram_g: Matrix<F>, gram_h: Matrix<F>, gram_l: Matrix<F>) -> Result<Self> {
        let grams = [gram_g, gram_h, gram_l];
        let mut inverses = Vec::with_capacity(3);
        for (g, name) in grams.iter().zip(["g", "h", "l"]) {
            if !g.is_symmetric() {
                return Err(Error::Construction(format!("Gram matrix on {name} is not symmetric")));
            }
            inverses.push(
                g.inverse().map_err(|_| Error::Construction(format!("Gram matrix on {name} is degenerate")))?,
            );
        }
        let inverses: [Matrix<F>; 3] = inverses.try_into().expect("three inverses");
        Ok(InvariantForms { grams, inverses })
    }

    /// Identity Grams sized to the module.
    pub fn identity(m: &TwoCrossedModule<F>) -> Self {
        let grams = [Slot::G, Slot::H, Slot::L].map(|s| Matrix::identity(m.dim(s)));
        InvariantForms { inverses: grams.clone(), grams }
    }

    pub fn gram(&self, slot: Slot) -> &Matrix<F> {
        &self.grams[idx(slot)]
    }

    pub fn inverse(&self, slot: Slot) -> &Matrix<F> {
        &self.inverses[idx(slot)]
    }

    pub fn is_positive_definite(&self) -> bool {
        self.grams.iter().all(Matrix::is_positive_definite)
    }

    fn check_dims(&self, m: &TwoCrossedModule<F>) -> Result<()> {
        for s in [Slot::G, Slot::H, Slot::L] {
            if self.gram(s).rows() != m.dim(s) {
                return Err(Error::Dimension(format!(
                    "Gram matrix on {} is {}x{}, algebra has dimension {}",
                    s.label(),
                    self.gram(s).rows(),
                    self.gram(s).cols(),
                    m.dim(s)
                )));
            }
        }
        Ok(())
    }

    /// Residuals of the infinitesimal invariance conditions over basis tuples.
    ///
    /// `*_action` entries are invariance under `g`; `h_bracket`, `l_bracket`
    /// are invariance under the algebra's own adjoint action; `l_prime` is
    /// invariance of `⟨,⟩_l` under `▷'`, evaluated only when the Peiffer
    /// lifting or `β̃` is trivial.
    pub fn invariance_residual(&self, m: &TwoCrossedModule<F>) -> Result<AxiomReport<F>> {
        self.check_dims(m)?;
        let mut rep = AxiomReport::default();
        for (name, slot) in [("g_action", Slot::G), ("h_action", Slot::H), ("l_action", Slot::L)] {
            let t = m.action_tensor(slot);
            rep.record(name, form_residual(self.gram(slot), m.dim(Slot::G), |a, v| t.apply(&unit(m.dim(Slot::G), a), v)));
        }
        for (name, slot) in [("h_bracket", Slot::H), ("l_bracket", Slot::L)] {
            let alg = m.algebra(slot);
            let n = alg.dim();
            rep.record(name, form_residual(self.gram(slot), n, |a, v| alg.bracket_coords(&unit(n, a), v)));
        }
        if m.peiffer.is_zero() || m.beta.is_zero() {
            let nh = m.dim(Slot::H);
            rep.record("l_prime", form_residual(self.gram(Slot::L), nh, |a, v| m.prime_coords(&unit(nh, a), v)));
        } else {
            rep.skip("l_prime", "asserted only for trivial Peiffer lifting or trivial β̃");
        }
        Ok(rep)
    }

    /// The induced maps as tensors and matrices.
    pub fn adjoints(&self, m: &TwoCrossedModule<F>, convention: EtaConvention) -> Result<Adjoints<F>> {
        self.check_dims(m)?;
        let (ng, nh, nl) = (m.dim(Slot::G), m.dim(Slot::H), m.dim(Slot::L));
        let (gg, gh, gl) = (self.gram(Slot::G), self.gram(Slot::H), self.gram(Slot::L));
        let (ig, ih) = (self.inverse(Slot::G), self.inverse(Slot::H));

        let solve_into = |t: &mut Tensor3<F>, a: usize, b: usize, inv: &Matrix<F>, rhs: Vec<F>| {
            let v = inv.mul_vec(&rhs).expect("dims");
            for (k, c) in v.into_iter().enumerate() {
                t.set(a, b, k, -c);
            }
        };

        // ⟨σ(Y_a,Y_b), X_c⟩ = -⟨Y_a, X_c ▷ Y_b⟩
        let mut sigma = Tensor3::zeros(nh, nh, ng);
        for a in 0..nh {
            for b in 0..nh {
                let rhs = (0..ng)
                    .map(|c| bilinear(gh, &unit(nh, a), &m.act_coords(Slot::H, &unit(ng, c), &unit(nh, b))))
                    .collect();
                solve_into(&mut sigma, a, b, ig, rhs);
            }
        }
        let mut kappa = Tensor3::zeros(nl, nl, ng);
        for a in 0..nl {
            for b in 0..nl {
                let rhs = (0..ng)
                    .map(|c| bilinear(gl, &unit(nl, a), &m.act_coords(Slot::L, &unit(ng, c), &unit(nl, b))))
                    .collect();
                solve_into(&mut kappa, a, b, ig, rhs);
            }
        }
        // ⟨Y_b, η₁(Z,Y)⟩ = -⟨{Y, Y_b}, Z⟩ and ⟨Y_a, η₂(Z,Y')⟩ = -⟨{Y_a, Y'}, Z⟩
        let mut eta1 = Tensor3::zeros(nl, nh, nh);
        let mut eta2 = Tensor3::zeros(nl, nh, nh);
        for z in 0..nl {
            let zv = unit(nl, z);
            for y in 0..nh {
                let yv = unit(nh, y);
                let r1 = (0..nh).map(|b| bilinear(gl, &m.peiffer_coords(&yv, &unit(nh, b)), &zv)).collect();
                let r2 = (0..nh).map(|a| bilinear(gl, &m.peiffer_coords(&unit(nh, a), &yv), &zv)).collect();
                solve_into(&mut eta1, z, y, ih, r1);
                solve_into(&mut eta2, z, y, ih, r2);
            }
        }
        if convention == EtaConvention::Swapped {
            std::mem::swap(&mut eta1, &mut eta2);
        }
        let alpha_star = ih.mul(&m.alpha.transpose())?.mul(gg)?;
        let beta_star = self.inverse(Slot::L).mul(&m.beta.transpose())?.mul(gh)?;
        Ok(Adjoints { sigma, kappa, eta1, eta2, alpha_star, beta_star, convention })
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G + Copy) -> InvariantForms<G> {
        InvariantForms { grams: self.grams.clone().map(|g| g.map(f)), inverses: self.inverses.clone().map(|g| g.map(f)) }
    }
}

impl InvariantForms<Rational> {
    pub fn to_scalar<G: Scalar>(&self) -> InvariantForms<G> {
        self.map(G::from_rational)
    }

    /// Orthogonal projection of each seed onto the invariant symmetric forms.
    ///
    /// Orthogonality is with respect to the Frobenius inner product. The
    /// constraints are invariance under the `g`-action and, on `h` and `l`,
    /// under the algebra's own brackets. Fails if a projection is not
    /// positive definite.
    pub fn project_invariant(m: &TwoCrossedModule<Rational>, seeds: [&Matrix<Rational>; 3]) -> Result<Self> {
        let mut grams = Vec::with_capacity(3);
        for (slot, seed) in [Slot::G, Slot::H, Slot::L].into_iter().zip(seeds) {
            let n = m.dim(slot);
            if seed.rows() != n || seed.cols() != n {
                return Err(Error::Dimension(format!("seed Gram on {} must be {n}x{n}", slot.label())));
            }
            if !seed.is_positive_definite() {
                return Err(Error::Precondition(format!("seed Gram on {} is not positive definite", slot.label())));
            }
            let mut generators = action_matrices(m.action_tensor(slot));
            if slot != Slot::G {
                generators.extend(action_matrices(m.algebra(slot).structure()));
            }
            let p = project_symmetric(seed, &generators);
            if !p.is_positive_definite() {
                return Err(Error::Construction(format!(
                    "no positive-definite invariant form on {} is reachable from the seed",
                    slot.label()
                )));
            }
            grams.push(p);
        }
        let [gg, gh, gl]: [Matrix<Rational>; 3] = grams.try_into().expect("three grams");
        Self::new(gg, gh, gl)
    }

    /// Dimension of the invariant symmetric forms on one algebra.
    pub fn invariant_dimension(m: &TwoCrossedModule<Rational>, slot: Slot) -> usize {
        let mut generators = action_matrices(m.action_tensor(slot));
        if slot != Slot::G {
            generators.extend(action_matrices(m.algebra(slot).structure()));
        }
        constraint_matrix(m.dim(slot), &generators).nullspace().len()
    }
}

/// `ρ_a` with `(ρ_a)_{kb} = t[a][b][k]`.
fn action_matrices<F: Scalar>(t: &Tensor3<F>) -> Vec<Matrix<F>> {
    (0..t.shape().0).map(|a| t.left_slice(a)).collect()
}

/// Largest `|⟨ρ_a u, v⟩ + ⟨u, ρ_a v⟩|` over basis vectors.
fn form_residual<F: Scalar>(gram: &Matrix<F>, generators: usize, act: impl Fn(usize, &[F]) -> Vec<F>) -> F {
    let n = gram.rows();
    let mut worst = F::zero();
    for a in 0..generators {
        for i in 0..n {
            let ei = unit(n, i);
            let ai = act(a, &ei);
            for j in 0..n {
                let ej = unit(n, j);
                let r = (bilinear(gram, &ai, &ej) + bilinear(gram, &ei, &act(a, &ej))).magnitude();
                if r > worst {
                    worst = r;
                }
            }
        }
    }
    worst
}

fn sym_params(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            out.push((i, j));
        }
    }
    out
}

/// Linear constraints `ρᵀG + Gρ = 0` on the symmetric parameters of `G`.
fn constraint_matrix(n: usize, generators: &[Matrix<Rational>]) -> Matrix<Rational> {
    let params = sym_params(n);
    let mut rows = Vec::new();
    for rho in generators {
        for i in 0..n {
            for j in i..n {
                // (ρᵀG + Gρ)_{ij} = Σ_k ρ_{ki} G_{kj} + G_{ik} ρ_{kj}
                let mut row = vec![Rational::from_i64(0); params.len()];
                for k in 0..n {
                    for (p, &(r, c)) in params.iter().enumerate() {
                        let hits = |x: usize, y: usize| (r == x && c == y) || (r == y && c == x);
                        if hits(k, j) {
                            row[p] += rho.get(k, i);
                        }
                        if hits(i, k) {
                            row[p] += rho.get(k, j);
                        }
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(0, params.len());
    }
    Matrix::from_rows(rows).expect("rectangular")
}

fn project_symmetric(seed: &Matrix<Rational>, generators: &[Matrix<Rational>]) -> Matrix<Rational> {
    let n = seed.rows();
    if n == 0 {
        return Matrix::zeros(0, 0);
    }
    let params = sym_params(n);
    let null = constraint_matrix(n, generators).nullspace();
    let np = params.len();
    let mut out = Matrix::zeros(n, n);
    if null.is_empty() {
        return out;
    }
    // Frobenius weights: off-diagonal parameters appear twice in the matrix.
    let w: Vec<Rational> =
        params.iter().map(|&(i, j)| Rational::from_i64(if i == j { 1 } else { 2 })).collect();
    let s: Vec<Rational> = params.iter().map(|&(i, j)| seed.get(i, j).clone()).collect();
    let k = null.len();
    let nmat = Matrix::from_shape(np, k, (0..np).flat_map(|p| null.iter().map(move |v| v[p].clone())).collect::<Vec<_>>())
        .expect("shape");
    let mut gram = Matrix::zeros(k, k);
    let mut rhs = vec![Rational::from_i64(0); k];
    for a in 0..k {
        for b in 0..k {
            let mut acc = Rational::from_i64(0);
            for p in 0..np {
                acc += &(w[p].clone() * null[a][p].clone() * null[b][p].clone());
            }
            gram.set(a, b, acc);
        }
        for p in 0..np {
            rhs[a] += &(w[p].clone() * null[a][p].clone() * s[p].clone());
        }
    }
    let coeffs = gram.solve(&rhs).expect("nullspace basis is independent");
    let params_out = nmat.mul_vec(&coeffs).expect("shape");
    for (p, &(i, j)) in params.iter().enumerate() {
        out.set(i, j, params_out[p].clone());
        out.set(j, i, params_out[p].clone());
    }
    out
}

/// `σ`, `κ`, `η₁`, `η₂` as tensors and `α*`, `β*` as matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct Adjoints<F = Rational> {
    /// `h × h -> g`.
    pub sigma: Tensor3<F>,
    /// `l × l -> g`.
    pub kappa: Tensor3<F>,
    /// `l × h -> h`.
    pub eta1: Tensor3<F>,
    pub eta2: Tensor3<F>,
    /// `dim h × dim g`.
    pub alpha_star: Matrix<F>,
    /// `dim l × dim h`.
    pub beta_star: Matrix<F>,
    pub convention: EtaConvention,
}

impl<F: Scalar> Adjoints<F> {
    fn wrap(slot: Slot, coords: Vec<F>) -> AlgebraElement<F> {
        AlgebraElement { algebra: slot.label().into(), coords }
    }

    fn expect(x: &AlgebraElement<F>, slot: Slot, dim: usize) -> Result<()> {
        if x.algebra != slot.label() {
            return Err(Error::AlgebraMismatch { expected: slot.label().into(), found: x.algebra.clone() });
        }
        if x.coords.len() != dim {
            return Err(Error::Dimension(format!("element of {} has {} coordinates", slot.label(), x.coords.len())));
        }
        Ok(())
    }

    pub fn sigma(&self, y1: &AlgebraElement<F>, y2: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        let nh = self.sigma.shape().0;
        Self::expect(y1, Slot::H, nh)?;
        Self::expect(y2, Slot::H, nh)?;
        Ok(Self::wrap(Slot::G, self.sigma.apply(&y1.coords, &y2.coords)))
    }

    pub fn kappa(&self, z1: &AlgebraElement<F>, z2: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        let nl = self.kappa.shape().0;
        Self::expect(z1, Slot::L, nl)?;
        Self::expect(z2, Slot::L, nl)?;
        Ok(Self::wrap(Slot::G, self.kappa.apply(&z1.coords, &z2.coords)))
    }

    /// `η_i(z, y)` for `i ∈ {1, 2}`.
    pub fn eta(&self, i: u8, z: &AlgebraElement<F>, y: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        let t = match i {
            1 => &self.eta1,
            2 => &self.eta2,
            _ => return Err(Error::Precondition("η index must be 1 or 2".into())),
        };
        let (nl, nh, _) = t.shape();
        Self::expect(z, Slot::L, nl)?;
        Self::expect(y, Slot::H, nh)?;
        Ok(Self::wrap(Slot::H, t.apply(&z.coords, &y.coords)))
    }

    pub fn alpha_star(&self, x: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        Self::expect(x, Slot::G, self.alpha_star.cols())?;
        Ok(Self::wrap(Slot::H, self.alpha_star.mul_vec(&x.coords)?))
    }

    pub fn beta_star(&self, y: &AlgebraElement<F>) -> Result<AlgebraElement<F>> {
        Self::expect(y, Slot::H, self.beta_star.cols())?;
        Ok(Self::wrap(Slot::L, self.beta_star.mul_vec(&y.coords)?))
    }

    /// Residuals of every defining relation over basis tuples.
    pub fn defining_report(&self, m: &TwoCrossedModule<F>, t: &InvariantForms<F>) -> AxiomReport<F> {
        let (ng, nh, nl) = (m.dim(Slot::G), m.dim(Slot::H), m.dim(Slot::L));
        let (gg, gh, gl) = (t.gram(Slot::G), t.gram(Slot::H), t.gram(Slot::L));
        let mut rep = AxiomReport::default();
        let raise = |w: &mut F, r: F| {
            let r = r.magnitude();
            if r > *w {
                *w = r;
            }
        };
        let (mut sd, mut sa) = (F::zero(), F::zero());
        for a in 0..nh {
            for b in 0..nh {
                let (ya, yb) = (unit(nh, a), unit(nh, b));
                let s = self.sigma.apply(&ya, &yb);
                let s2 = self.sigma.apply(&yb, &ya);
                for (p, q) in s.iter().zip(&s2) {
                    raise(&mut sa, p.clone() + q.clone());
                }
                for c in 0..ng {
                    let xc = unit(ng, c);
                    let lhs = bilinear(gg, &s, &xc);
                    let rhs = -bilinear(gh, &ya, &m.act_coords(Slot::H, &xc, &yb));
                    raise(&mut sd, lhs - rhs);
                }
            }
        }
        rep.record("sigma_defining", sd);
        rep.record("sigma_antisymmetry", sa);

        let (mut kd, mut ka) = (F::zero(), F::zero());
        for a in 0..nl {
            for b in 0..nl {
                let (za, zb) = (unit(nl, a), unit(nl, b));
                let k1 = self.kappa.apply(&za, &zb);
                let k2 = self.kappa.apply(&zb, &za);
                for (p, q) in k1.iter().zip(&k2) {
                    raise(&mut ka, p.clone() + q.clone());
                }
                for c in 0..ng {
                    let xc = unit(ng, c);
                    let lhs = bilinear(gg, &k1, &xc);
                    let rhs = -bilinear(gl, &za, &m.act_coords(Slot::L, &xc, &zb));
                    raise(&mut kd, lhs - rhs);
                }
            }
        }
        rep.record("kappa_defining", kd);
        rep.record("kappa_antisymmetry", ka);

        // With the printed labels: ⟨{Y,Y'},Z⟩ = -⟨Y', η₁(Z,Y)⟩ = -⟨Y, η₂(Z,Y')⟩.
        let (e1, e2) = match self.convention {
            EtaConvention::AsPrinted => (&self.eta1, &self.eta2),
            EtaConvention::Swapped => (&self.eta2, &self.eta1),
        };
        let (mut w1, mut w2) = (F::zero(), F::zero());
        for z in 0..nl {
            let zv = unit(nl, z);
            for a in 0..nh {
                for b in 0..nh {
                    let (y, y2) = (unit(nh, a), unit(nh, b));
                    let lhs = bilinear(gl, &m.peiffer_coords(&y, &y2), &zv);
                    raise(&mut w1, lhs.clone() + bilinear(gh, &y2, &e1.apply(&zv, &y)));
                    raise(&mut w2, lhs + bilinear(gh, &y, &e2.apply(&zv, &y2)));
                }
            }
        }
        rep.record("eta1_defining", w1);
        rep.record("eta2_defining", w2);

        let mut wa = F::zero();
        for a in 0..nh {
            for c in 0..ng {
                let (y, x) = (unit(nh, a), unit(ng, c));
                let lhs = bilinear(gh, &y, &self.alpha_star.mul_vec(&x).expect("dims"));
                let rhs = bilinear(gg, &m.alpha_coords(&y), &x);
                raise(&mut wa, lhs - rhs);
            }
        }
        rep.record("alpha_star_adjoint", wa);
        let mut wb = F::zero();
        for a in 0..nl {
            for c in 0..nh {
                let (z, y) = (unit(nl, a), unit(nh, c));
                let lhs = bilinear(gl, &z, &self.beta_star.mul_vec(&y).expect("dims"));
                let rhs = bilinear(gh, &m.beta_coords(&z), &y);
                raise(&mut wb, lhs - rhs);
            }
        }
        rep.record("beta_star_adjoint", wb);
        rep
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G + Copy) -> Adjoints<G> {
        Adjoints {
            sigma: self.sigma.map(f),
            kappa: self.kappa.map(f),
            eta1: self.eta1.map(f),
            eta2: self.eta2.map(f),
            alpha_star: self.alpha_star.map(f),
            beta_star: self.beta_star.map(f),
            convention: self.convention,
        }
    }
}

impl Adjoints<Rational> {
    pub fn to_scalar<G: Scalar>(&self) -> Adjoints<G> {
        self.map(G::from_rational)
    }
}
