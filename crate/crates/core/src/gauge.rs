//! 3-connections, their curvatures, the 3-Bianchi residuals and the field
//! equations.

use crate::crossed::{Slot, TwoCrossedModule};
use crate::error::{Error, Result};
use crate::forms::{wedge_matrix, Form, Space};
use crate::invariant::Adjoints;
use crate::linalg::Matrix;
use crate::random::FormSampler;
use crate::scalar::{Rational, Scalar};

/// Smallest ambient dimension accepted by the gauge layer.
pub const MIN_DIM: usize = 4;

/// `(A, B, C)`: a `g`-valued 1-form, `h`-valued 2-form and `l`-valued 3-form.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection<F: Scalar = Rational> {
    pub a: Form<F>,
    pub b: Form<F>,
    pub c: Form<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Curvatures<F: Scalar = Rational> {
    pub omega1: Form<F>,
    pub omega2: Form<F>,
    pub omega3: Form<F>,
    pub f1: Form<F>,
    pub f2: Form<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Residuals<F: Scalar = Rational> {
    pub r1: Form<F>,
    pub r2: Form<F>,
    pub r3: Form<F>,
}

impl<F: Scalar> Residuals<F> {
    pub fn is_zero(&self) -> bool {
        self.r1.is_zero() && self.r2.is_zero() && self.r3.is_zero()
    }

    pub fn as_array(&self) -> [&Form<F>; 3] {
        [&self.r1, &self.r2, &self.r3]
    }
}

/// `(EA, EB, EC)`: the left-hand sides of the field equations minus their
/// right-hand sides.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldEquations<F: Scalar = Rational> {
    pub ea: Form<F>,
    pub eb: Form<F>,
    pub ec: Form<F>,
}

fn check_ambient(d: usize) -> Result<()> {
    if d < MIN_DIM {
        return Err(Error::Precondition(format!("gauge computations need d >= {MIN_DIM}, got {d}")));
    }
    Ok(())
}

impl<F: Scalar> Connection<F> {
    pub fn new(m: &TwoCrossedModule<F>, a: Form<F>, b: Form<F>, c: Form<F>) -> Result<Self> {
        check_ambient(a.ambient())?;
        for (w, deg, slot) in [(&a, 1, Slot::G), (&b, 2, Slot::H), (&c, 3, Slot::L)] {
            if w.degree() != deg || w.space() != Space::Alg(slot) || w.width() != m.dim(slot) {
                return Err(Error::Dimension(format!(
                    "{} must be a {deg}-form valued in {} of width {}",
                    ["A", "B", "C"][deg - 1],
                    slot.label(),
                    m.dim(slot)
                )));
            }
            if w.ambient() != a.ambient() || w.nvars() != a.nvars() {
                return Err(Error::Dimension("connection components live on different rings".into()));
            }
        }
        Ok(Connection { a, b, c })
    }

    pub fn zero(m: &TwoCrossedModule<F>, ambient: usize, nvars: usize) -> Result<Self> {
        check_ambient(ambient)?;
        Ok(Connection {
            a: Form::zero(ambient, nvars, 1, Space::G, m.dim(Slot::G)),
            b: Form::zero(ambient, nvars, 2, Space::H, m.dim(Slot::H)),
            c: Form::zero(ambient, nvars, 3, Space::L, m.dim(Slot::L)),
        })
    }

    pub fn ambient(&self) -> usize {
        self.a.ambient()
    }

    pub fn nvars(&self) -> usize {
        self.a.nvars()
    }

    /// `self + s * v`, componentwise.
    pub fn add_scaled(&self, v: &Connection<F>, s: &F) -> Result<Self> {
        Ok(Connection { a: self.a.add_scaled(&v.a, s)?, b: self.b.add_scaled(&v.b, s)?, c: self.c.add_scaled(&v.c, s)? })
    }

    pub fn with_nvars(&self, nvars: usize) -> Self {
        Connection { a: self.a.with_nvars(nvars), b: self.b.with_nvars(nvars), c: self.c.with_nvars(nvars) }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G + Copy) -> Connection<G> {
        Connection { a: self.a.map(f), b: self.b.map(f), c: self.c.map(f) }
    }
}

impl Connection<Rational> {
    /// Random polynomial connection with coefficients of total degree at most `degree_cap`.
    pub fn random(m: &TwoCrossedModule, seed: u64, ambient: usize, degree_cap: u32) -> Result<Self> {
        check_ambient(ambient)?;
        let mut s = FormSampler::new(seed, ambient, degree_cap);
        Ok(Connection {
            a: s.form(1, Space::G, m.dim(Slot::G)),
            b: s.form(2, Space::H, m.dim(Slot::H)),
            c: s.form(3, Space::L, m.dim(Slot::L)),
        })
    }

    pub fn to_scalar<G: Scalar>(&self) -> Connection<G> {
        self.map(G::from_rational)
    }
}

impl<F: Scalar> TwoCrossedModule<F> {
    /// `A ∧ A` for a `g`-valued form: through the matrix representation when
    /// there is one, else `½ A ∧^[,] A` if the substitution is allowed.
    pub fn wedge_self(&self, a: &Form<F>) -> Result<Form<F>> {
        if a.space() != Space::G {
            return Err(Error::AlgebraMismatch { expected: "g".into(), found: a.space().label() });
        }
        if self.g.rep().is_some() {
            let e = self.embed(a)?;
            return self.project(&wedge_matrix(&e, &e)?, Slot::G);
        }
        if self.wedge_substitution {
            let half = F::one() / F::from_i64(2);
            return Ok(self.wedge_bracket(a, a)?.scale(&half));
        }
        Err(Error::Precondition(
            "A ∧ A needs a matrix representation of g or the wedge_substitution flag".into(),
        ))
    }

    pub fn curvatures(&self, conn: &Connection<F>) -> Result<Curvatures<F>> {
        let Connection { a, b, c } = conn;
        let omega1 = a.d().add(&self.wedge_self(a)?)?;
        let omega2 = b.d().add(&self.wedge_action(a, b)?)?;
        let omega3 = c.d().add(&self.wedge_action(a, c)?)?.add(&self.wedge_peiffer(b, b)?)?;
        let f1 = omega1.sub(&self.lift_alpha(b)?)?;
        let f2 = omega2.sub(&self.lift_beta(c)?)?;
        Ok(Curvatures { omega1, omega2, omega3, f1, f2 })
    }

    /// `(F₁ = 0, F₂ = 0)`.
    pub fn is_fake_flat(&self, conn: &Connection<F>) -> Result<(bool, bool)> {
        let k = self.curvatures(conn)?;
        Ok((k.f1.is_zero(), k.f2.is_zero()))
    }

    /// Differences between the two sides of each 3-Bianchi identity.
    pub fn bianchi_residuals(&self, conn: &Connection<F>) -> Result<Residuals<F>> {
        let Connection { a, b, c } = conn;
        let k = self.curvatures(conn)?;
        let r1 = k.f1.d().add(&self.wedge_bracket(a, &k.f1)?)?.add(&self.lift_alpha(&k.f2)?)?;

        let f1a = k.f1.add(&self.lift_alpha(b)?)?;
        let bb = self.wedge_peiffer(b, b)?;
        let r2 = k
            .f2
            .d()
            .add(&self.wedge_action(a, &k.f2)?)?
            .sub(&self.wedge_action(&f1a, b)?)?
            .add(&self.lift_beta(&k.omega3.sub(&bb)?)?)?;

        let f2b = k.f2.add(&self.lift_beta(c)?)?;
        let r3 = k
            .omega3
            .d()
            .add(&self.wedge_action(a, &k.omega3)?)?
            .sub(&self.wedge_action(&f1a, c)?)?
            .sub(&self.wedge_peiffer(&f2b, b)?)?
            .sub(&self.wedge_peiffer(b, &f2b)?)?;
        Ok(Residuals { r1, r2, r3 })
    }

    /// The Bianchi identities of `(Ω₁, Ω₂, Ω₃)` when `α̃` and `β̃` vanish.
    pub fn flat_bianchi_residuals(&self, conn: &Connection<F>) -> Result<Residuals<F>> {
        if !self.alpha.is_zero() || !self.beta.is_zero() {
            return Err(Error::Precondition("flat Bianchi identities need α̃ = 0 and β̃ = 0".into()));
        }
        let Connection { a, b, c } = conn;
        let k = self.curvatures(conn)?;
        let r1 = k.omega1.d().add(&self.wedge_bracket(a, &k.omega1)?)?;
        let r2 = k.omega2.d().add(&self.wedge_action(a, &k.omega2)?)?.sub(&self.wedge_action(&k.omega1, b)?)?;
        let r3 = k
            .omega3
            .d()
            .add(&self.wedge_action(a, &k.omega3)?)?
            .sub(&self.wedge_action(&k.omega1, c)?)?
            .sub(&self.wedge_peiffer(&k.omega2, b)?)?
            .sub(&self.wedge_peiffer(b, &k.omega2)?)?;
        Ok(Residuals { r1, r2, r3 })
    }

    fn field_equations_from(
        &self,
        adj: &Adjoints<F>,
        conn: &Connection<F>,
        f1: &Form<F>,
        f2: &Form<F>,
        omega3: &Form<F>,
        with_maps: bool,
    ) -> Result<FieldEquations<F>> {
        let d = conn.ambient();
        check_ambient(d)?;
        let Connection { a, b, c } = conn;
        let (sf1, sf2, so3) = (f1.hodge()?, f2.hodge()?, omega3.hodge()?);
        let sign_d = if d % 2 == 0 { F::one() } else { -F::one() };

        let sigma_bar = sf2.wedge_tensor(b, &adj.sigma, Space::G)?;
        let kappa_bar = so3.wedge_tensor(c, &adj.kappa, Space::G)?;
        let ea = sf1
            .d()
            .add(&self.wedge_bracket(a, &sf1)?)?
            .sub(&sigma_bar)?
            .add_scaled(&kappa_bar, &-sign_d)?;

        let eta1 = so3.wedge_tensor(b, &adj.eta1, Space::H)?;
        let eta2 = so3.wedge_tensor(b, &adj.eta2, Space::H)?;
        let mut eb = sf2.d().add(&self.wedge_action(a, &sf2)?)?.add(&eta1)?.add(&eta2)?;
        let mut ec = so3.d().add(&self.wedge_action(a, &so3)?)?;
        if with_maps {
            eb = eb.add(&sf1.apply_matrix(&adj.alpha_star, Space::H)?)?;
            ec = ec.sub(&sf2.apply_matrix(&adj.beta_star, Space::L)?)?;
        }
        Ok(FieldEquations { ea, eb, ec })
    }

    /// `EA`, `EB`, `EC`; all three vanish exactly on solutions.
    pub fn field_eq_residuals(&self, adj: &Adjoints<F>, conn: &Connection<F>) -> Result<FieldEquations<F>> {
        let k = self.curvatures(conn)?;
        self.field_equations_from(adj, conn, &k.f1, &k.f2, &k.omega3, true)
    }

    /// The field equations rewritten in `Ω₁`, `Ω₂` for a fake-flat connection.
    pub fn fake_flat_field_eq_residuals(&self, adj: &Adjoints<F>, conn: &Connection<F>) -> Result<FieldEquations<F>> {
        let k = self.curvatures(conn)?;
        if !k.f1.is_zero() || !k.f2.is_zero() {
            return Err(Error::Precondition("connection is not fake-flat".into()));
        }
        self.field_equations_from(adj, conn, &k.omega1, &k.omega2, &k.omega3, false)
    }
}

/// Solves `M X = W` componentwise for a form `W` in the image of `M`,
/// choosing `X = R W + (1 - R M) X₀`.
fn solve_lift<F: Scalar>(
    mat: &Matrix<F>,
    right_inverse: Option<&Matrix<F>>,
    target: &Form<F>,
    free: &Form<F>,
    space: Space,
) -> Result<Form<F>> {
    let r = right_inverse.cloned().unwrap_or_else(|| mat.generalized_inverse());
    let n = mat.cols();
    let proj = Matrix::identity(n).sub(&r.mul(mat)?);
    let x = target.apply_matrix(&r, space)?.add(&free.apply_matrix(&proj, space)?)?;
    if x.apply_matrix(mat, target.space())? != *target {
        return Err(Error::Precondition(format!(
            "curvature is not in the image of the map into {}",
            target.space().label()
        )));
    }
    Ok(x)
}

impl TwoCrossedModule<Rational> {
    /// A fake-flat connection: `A` is drawn first, then `B` and `C` solve
    /// `α̃(B) = Ω₁` and `β̃(C) = Ω₂`. When `Ω₁` of a random `A` is not in the
    /// image of `α̃`, `A = X dφ` is used instead, which has `Ω₁ = 0`.
    pub fn fake_flat_witness(&self, seed: u64, ambient: usize, degree_cap: u32) -> Result<Connection> {
        check_ambient(ambient)?;
        let mut s = FormSampler::new(seed, ambient, degree_cap);
        let (ng, nh, nl) = (self.dim(Slot::G), self.dim(Slot::H), self.dim(Slot::L));
        let b0 = s.form(2, Space::H, nh);
        let c0 = s.form(3, Space::L, nl);

        let mut a = s.form(1, Space::G, ng);
        let mut omega1 = a.d().add(&self.wedge_self(&a)?)?;
        let mut b = solve_lift(&self.alpha, self.alpha_right_inverse.as_ref(), &omega1, &b0, Space::H);
        if b.is_err() {
            let x: Vec<Rational> = (0..ng).map(|_| s.rational()).collect();
            let phi = crate::forms::Form::function(ambient, s.polynomial()).d();
            a = Form::zero(ambient, ambient, 1, Space::G, ng);
            for (mask, v) in phi.components() {
                a.set_component(mask, x.iter().map(|c| v[0].scale(c)).collect())?;
            }
            omega1 = a.d().add(&self.wedge_self(&a)?)?;
            b = solve_lift(&self.alpha, self.alpha_right_inverse.as_ref(), &omega1, &b0, Space::H);
        }
        let b = b?;
        let omega2 = b.d().add(&self.wedge_action(&a, &b)?)?;
        let c = solve_lift(&self.beta, self.beta_right_inverse.as_ref(), &omega2, &c0, Space::L)?;
        Connection::new(self, a, b, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn zero_connection_has_zero_curvature() {
        for m in instances::shipped() {
            let z = Connection::zero(&m, 4, 4).unwrap();
            let k = m.curvatures(&z).unwrap();
            assert!(k.omega1.is_zero() && k.omega2.is_zero() && k.omega3.is_zero());
            assert!(m.bianchi_residuals(&z).unwrap().is_zero());
        }
    }

    #[test]
    fn bianchi_on_random_connections() {
        for m in instances::shipped() {
            for seed in 0..3 {
                let conn = Connection::random(&m, seed, 4, 3).unwrap();
                let r = m.bianchi_residuals(&conn).unwrap();
                assert!(r.is_zero(), "{} seed {seed}: {r:?}", m.name);
            }
        }
    }

    #[test]
    fn missing_rep_without_substitution_is_rejected() {
        let mut m = instances::abelian_chain();
        m.wedge_substitution = false;
        let conn = Connection::random(&m, 1, 4, 2).unwrap();
        assert!(matches!(m.curvatures(&conn), Err(Error::Precondition(_))));
    }

    #[test]
    fn low_dimension_is_rejected() {
        let m = instances::abelian_chain();
        assert!(Connection::random(&m, 1, 3, 2).is_err());
    }

    #[test]
    fn witnesses_are_fake_flat() {
        for m in instances::shipped() {
            let conn = m.fake_flat_witness(5, 4, 2).unwrap();
            assert_eq!(m.is_fake_flat(&conn).unwrap(), (true, true), "{}", m.name);
        }
    }
}
