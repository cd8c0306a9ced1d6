//! The 3-form Yang-Mills action, its exact first variation and the bulk
//! pairing against the field equations.

use crate::crossed::{Slot, TwoCrossedModule};
use crate::error::{Error, Result};
use crate::forms::{pair_with, Form};
use crate::gauge::{Connection, FieldEquations, MIN_DIM};
use crate::invariant::{Adjoints, InvariantForms};
use crate::poly::Polynomial;
use crate::scalar::{Rational, Scalar};

/// Perturbation directions `(δA, δB, δC)`, stored like a connection.
pub type VariationTriple<F = Rational> = Connection<F>;

/// `∏ xᵢ(1 − xᵢ)` over the ambient coordinates.
pub fn bump_polynomial<F: Scalar>(ambient: usize, nvars: usize) -> Polynomial<F> {
    let mut p = Polynomial::constant(nvars, F::one());
    for i in 0..ambient {
        let x = Polynomial::var(nvars, i);
        let one_minus = Polynomial::constant(nvars, F::one()).sub(&x);
        p = p.mul(&x.mul(&one_minus));
    }
    p
}

/// Multiplies every coefficient by [`bump_polynomial`].
pub fn bump<F: Scalar>(v: &VariationTriple<F>) -> VariationTriple<F> {
    let b = bump_polynomial(v.ambient(), v.nvars());
    Connection { a: v.a.mul_poly(&b), b: v.b.mul_poly(&b), c: v.c.mul_poly(&b) }
}

pub fn vanishes_on_boundary<F: Scalar>(v: &VariationTriple<F>) -> bool {
    v.a.vanishes_on_boundary() && v.b.vanishes_on_boundary() && v.c.vanishes_on_boundary()
}

/// A bumped random variation.
pub fn random_variation(m: &TwoCrossedModule, seed: u64, ambient: usize, degree_cap: u32) -> Result<VariationTriple> {
    Ok(bump(&Connection::random(m, seed, ambient, degree_cap)?))
}

fn only_channel<F: Scalar>(v: &VariationTriple<F>, channel: usize) -> VariationTriple<F> {
    Connection {
        a: if channel == 0 { v.a.clone() } else { v.a.zero_like() },
        b: if channel == 1 { v.b.clone() } else { v.b.zero_like() },
        c: if channel == 2 { v.c.clone() } else { v.c.zero_like() },
    }
}

pub const CHANNELS: [&str; 3] = ["A", "B", "C"];

#[derive(Clone, Debug, PartialEq)]
pub struct ChannelBreakdown<F: Scalar = Rational> {
    pub channel: &'static str,
    pub exact: F,
    pub bulk: F,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub step: f64,
    pub central_difference: f64,
    pub discrepancy: f64,
}

/// Central differences of the floating-point action against the bulk pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    /// Factor applied to the variation before differencing.
    pub direction_scale: f64,
    /// Least-squares slope of `log discrepancy` against `log step`.
    pub order: Option<f64>,
    pub skipped: Option<String>,
}

impl Sweep {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,discrepancy\n");
        for r in &self.rows {
            out.push_str(&format!("{:e},{:e}\n", r.step, r.discrepancy));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradCheckReport<F: Scalar = Rational> {
    pub exact_linear_coefficient: F,
    pub bulk_pairing_value: F,
    pub discrepancy: F,
    pub channels: Vec<ChannelBreakdown<F>>,
    pub sweep: Option<Sweep>,
}

/// Slope of the least-squares line through `(ln x, ln y)`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

impl<F: Scalar> TwoCrossedModule<F> {
    /// `⟨F₁,∗F₁⟩ + ⟨F₂,∗F₂⟩ + ⟨Ω₃,∗Ω₃⟩` as a scalar top form.
    pub fn action_density(&self, t: &InvariantForms<F>, conn: &Connection<F>) -> Result<Form<F>> {
        let k = self.curvatures(conn)?;
        let s1 = pair_with(&k.f1, &k.f1.hodge()?, t.gram(Slot::G))?;
        let s2 = pair_with(&k.f2, &k.f2.hodge()?, t.gram(Slot::H))?;
        let s3 = pair_with(&k.omega3, &k.omega3.hodge()?, t.gram(Slot::L))?;
        s1.add(&s2)?.add(&s3)
    }

    /// Exact action over the unit box.
    pub fn action(&self, t: &InvariantForms<F>, conn: &Connection<F>) -> Result<F> {
        if conn.ambient() < MIN_DIM {
            return Err(Error::Precondition(format!("the action needs d >= {MIN_DIM}")));
        }
        if !t.is_positive_definite() {
            return Err(Error::Precondition("the action needs a positive definite invariant triple".into()));
        }
        self.action_density(t, conn)?.integrate_scalar()
    }

    /// Coefficients `c_0..=c_4` of the polynomial `ε ↦ S(conn + ε v)`, keeping
    /// only orders up to `max_order`.
    pub fn action_expansion(
        &self,
        t: &InvariantForms<F>,
        conn: &Connection<F>,
        v: &VariationTriple<F>,
        max_order: usize,
    ) -> Result<Vec<F>> {
        let d = conn.ambient();
        if conn.nvars() != d || v.nvars() != d || v.ambient() != d {
            return Err(Error::Dimension("connection and variation must live on the same plain box".into()));
        }
        let eps = Polynomial::var(d + 1, d);
        let vv = v.with_nvars(d + 1);
        let shifted = Connection {
            a: conn.a.with_nvars(d + 1).add(&vv.a.mul_poly(&eps))?,
            b: conn.b.with_nvars(d + 1).add(&vv.b.mul_poly(&eps))?,
            c: conn.c.with_nvars(d + 1).add(&vv.c.mul_poly(&eps))?,
        };
        let k = self.curvatures(&shifted)?;
        // every curvature is at most quadratic in ε
        let split = |w: &Form<F>| -> Vec<Form<F>> {
            (0..3u32).map(|i| w.map_polys(|p| p.coefficient_of(d, i)).with_nvars(d + 1)).collect()
        };
        let parts = [(split(&k.f1), Slot::G), (split(&k.f2), Slot::H), (split(&k.omega3), Slot::L)];
        let mut out = vec![F::zero(); max_order + 1];
        for (n, c) in out.iter_mut().enumerate() {
            for (ks, slot) in &parts {
                for i in 0..3 {
                    let Some(j) = n.checked_sub(i).filter(|j| *j < 3) else { continue };
                    if ks[i].is_zero() || ks[j].is_zero() {
                        continue;
                    }
                    let density = pair_with(&ks[i], &ks[j].hodge()?, t.gram(*slot))?;
                    *c += &density.integrate()?[0].constant_term();
                }
            }
        }
        Ok(out)
    }

    /// Coefficient of `ε` in `S(conn + ε v)`.
    pub fn first_variation_exact(
        &self,
        t: &InvariantForms<F>,
        conn: &Connection<F>,
        v: &VariationTriple<F>,
    ) -> Result<F> {
        Ok(self.action_expansion(t, conn, v, 1)?.pop().expect("order 1"))
    }

    fn bulk_terms(
        &self,
        t: &InvariantForms<F>,
        e: &FieldEquations<F>,
        v: &VariationTriple<F>,
    ) -> Result<[F; 3]> {
        let two = F::from_i64(2);
        let ta = pair_with(&v.a, &e.ea, t.gram(Slot::G))?.integrate_scalar()?;
        let tb = pair_with(&v.b, &e.eb, t.gram(Slot::H))?.integrate_scalar()?;
        let tc = pair_with(&v.c, &e.ec, t.gram(Slot::L))?.integrate_scalar()?;
        Ok([two.clone() * ta, -(two.clone() * tb), two * tc])
    }

    /// Per-channel terms of `2∫[⟨δA,EA⟩ − ⟨δB,EB⟩ + ⟨δC,EC⟩]`.
    pub fn bulk_pairing_channels(
        &self,
        adj: &Adjoints<F>,
        t: &InvariantForms<F>,
        conn: &Connection<F>,
        v: &VariationTriple<F>,
    ) -> Result<[F; 3]> {
        if !vanishes_on_boundary(v) {
            return Err(Error::Precondition("variation does not vanish on the boundary of the box".into()));
        }
        let e = self.field_eq_residuals(adj, conn)?;
        self.bulk_terms(t, &e, v)
    }

    pub fn bulk_pairing(
        &self,
        adj: &Adjoints<F>,
        t: &InvariantForms<F>,
        conn: &Connection<F>,
        v: &VariationTriple<F>,
    ) -> Result<F> {
        let [a, b, c] = self.bulk_pairing_channels(adj, t, conn, v)?;
        Ok(a + b + c)
    }

    /// First variation minus the bulk pairing for an arbitrary variation; the
    /// difference is the boundary term dropped by integration by parts.
    pub fn boundary_discrepancy(
        &self,
        adj: &Adjoints<F>,
        t: &InvariantForms<F>,
        conn: &Connection<F>,
        v: &VariationTriple<F>,
    ) -> Result<F> {
        let e = self.field_eq_residuals(adj, conn)?;
        let [a, b, c] = self.bulk_terms(t, &e, v)?;
        Ok(self.first_variation_exact(t, conn, v)? - (a + b + c))
    }
}

impl TwoCrossedModule<Rational> {
    /// Exact comparison per channel, plus an optional floating-point central
    /// difference sweep over `steps`.
    pub fn gradcheck_report(
        &self,
        adj: &Adjoints,
        t: &InvariantForms,
        conn: &Connection,
        v: &VariationTriple,
        steps: Option<&[f64]>,
    ) -> Result<GradCheckReport> {
        let bulk = self.bulk_pairing_channels(adj, t, conn, v)?;
        let exact = self.first_variation_exact(t, conn, v)?;
        let mut channels = Vec::with_capacity(3);
        for (i, name) in CHANNELS.iter().enumerate() {
            let vc = only_channel(v, i);
            let e = if vc.is_zero() { Rational::from_i64(0) } else { self.first_variation_exact(t, conn, &vc)? };
            channels.push(ChannelBreakdown { channel: name, exact: e, bulk: bulk[i].clone() });
        }
        let bulk_value: Rational = bulk.iter().cloned().sum();
        let discrepancy = (exact.clone() - bulk_value.clone()).magnitude();

        let sweep = match steps {
            None => None,
            Some(steps) => {
                let mf = self.to_scalar::<f64>();
                let tf = t.to_scalar::<f64>();
                let cf = conn.to_scalar::<f64>();
                // Rescale the direction so the cubic term is as large as the
                // action itself; otherwise rounding swamps the O(h²) error.
                let expansion = mf.action_expansion(&tf, &cf, &v.to_scalar::<f64>(), 3)?;
                let (c0, c3) = (expansion[0].abs(), expansion[3].abs());
                let scale = if c3 > 0.0 && c0 > 0.0 { (c0 / c3).cbrt() } else { 1.0 };
                let vf = v.to_scalar::<f64>().map(|x| x * scale);
                let target = bulk_value.to_f64() * scale;
                let mut rows = Vec::new();
                for &h in steps {
                    let plus = mf.action(&tf, &cf.add_scaled(&vf, &h)?)?;
                    let minus = mf.action(&tf, &cf.add_scaled(&vf, &-h)?)?;
                    let cd = (plus - minus) / (2.0 * h);
                    rows.push(SweepRow { step: h, central_difference: cd, discrepancy: (cd - target).abs() });
                }
                let (order, skipped) = if c3 == 0.0 {
                    (None, Some("cubic term of the action vanishes along the variation, so central differences are exact".into()))
                } else {
                    (log_log_slope(&rows.iter().map(|r| (r.step, r.discrepancy)).collect::<Vec<_>>()), None)
                };
                Some(Sweep { rows, direction_scale: scale, order, skipped })
            }
        };
        Ok(GradCheckReport { exact_linear_coefficient: exact, bulk_pairing_value: bulk_value, discrepancy, channels, sweep })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Space;
    use crate::instances;
    use crate::invariant::EtaConvention;
    use num_traits::Zero;

    #[test]
    fn bump_of_constant() {
        let mut v = Connection::zero(&instances::abelian_chain(), 4, 4).unwrap();
        v.a = Form::monomial(4, 4, &[1], Space::G, vec![Polynomial::constant(4, Rational::from_i64(1))]).unwrap();
        let b = bump(&v);
        assert_eq!(b.a.component(1)[0], bump_polynomial(4, 4));
        assert!(vanishes_on_boundary(&b));
        assert!(!vanishes_on_boundary(&v));
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [1e-2, 1e-3, 1e-4].iter().map(|&h| (h, 3.0 * h * h)).collect();
        assert!((log_log_slope(&pts).unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn first_variation_matches_bulk_pairing() {
        let m = instances::su2_crossed();
        let t = InvariantForms::identity(&m);
        let adj = t.adjoints(&m, EtaConvention::AsPrinted).unwrap();
        let conn = Connection::random(&m, 3, 4, 2).unwrap();
        let v = random_variation(&m, 4, 4, 1).unwrap();
        let fv = m.first_variation_exact(&t, &conn, &v).unwrap();
        let bp = m.bulk_pairing(&adj, &t, &conn, &v).unwrap();
        assert!(!fv.is_zero());
        assert_eq!(fv, bp);
    }
}
