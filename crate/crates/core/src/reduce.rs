//! Reductions of the 3-form theory to 2-form and ordinary Yang-Mills and to
//! the abelian electrodynamics of each degree.
//!
//! Each reduced theory is coded here from its own definitions (structure
//! constants only, no matrix representation, no precomputed adjoints) and compared
//! with the general field equations.

use std::fmt;
use std::str::FromStr;

use crate::crossed::{Slot, TwoCrossedModule};
use crate::error::{Error, Result};
use crate::forms::{pair_with, Form, Space};
use crate::gauge::Connection;
use crate::instances;
use crate::invariant::{EtaConvention, InvariantForms};
use crate::linalg::{Matrix, Tensor3};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reduction {
    /// `l` trivial: 2-form Yang-Mills in `(A, B)`.
    TwoYangMills,
    /// `h` and `l` trivial: ordinary Yang-Mills.
    OneYangMills,
    /// `g` and `h` trivial, `l = u(1)`: `d∗dC = 0`.
    ThreeElectro,
    /// `g` and `l` trivial, `h = u(1)`: `d∗dB = 0`.
    TwoElectro,
    /// 2-form Yang-Mills with `g = u(1)` and `h` trivial: `d∗dA = 0`.
    OneElectro,
}

pub const ALL: [Reduction; 5] = [
    Reduction::TwoYangMills,
    Reduction::OneYangMills,
    Reduction::ThreeElectro,
    Reduction::TwoElectro,
    Reduction::OneElectro,
];

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reduction::TwoYangMills => "2-ym",
            Reduction::OneYangMills => "1-ym",
            Reduction::ThreeElectro => "3-elec",
            Reduction::TwoElectro => "2-elec",
            Reduction::OneElectro => "1-elec",
        })
    }
}

impl FromStr for Reduction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ALL.into_iter()
            .find(|r| r.to_string() == s)
            .ok_or_else(|| Error::Parse { location: "reduction".into(), message: format!("unknown reduction `{s}`") })
    }
}

/// Result of one seeded comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionCheck {
    pub reduction: Reduction,
    pub seed: u64,
    /// Residual forms from the general field equations, restricted to the
    /// surviving fields.
    pub general: Vec<Form>,
    /// The same residuals from the reduced theory.
    pub direct: Vec<Form>,
}

impl ReductionCheck {
    pub fn matches(&self) -> bool {
        self.general == self.direct
    }

    /// Largest coefficient of `general - direct`.
    pub fn max_difference(&self) -> Rational {
        self.general
            .iter()
            .zip(&self.direct)
            .map(|(g, d)| g.sub(d).expect("same shape").max_coefficient())
            .fold(Rational::from_i64(0), |a, b| if b > a { b } else { a })
    }
}

impl Reduction {
    /// Instance on which the reduction is exercised by default.
    pub fn default_instance(self) -> TwoCrossedModule {
        let name = match self {
            Reduction::TwoYangMills => "su2_crossed",
            Reduction::OneYangMills => "su2_ym",
            Reduction::ThreeElectro => "u1_elec3",
            Reduction::TwoElectro => "u1_elec2",
            Reduction::OneElectro => "u1_elec1",
        };
        instances::by_name(name).expect("shipped reduction instance")
    }

    /// Checks the dimensional pattern the reduction needs.
    pub fn applicable(self, m: &TwoCrossedModule) -> Result<()> {
        let (g, h, l) = (m.dim(Slot::G), m.dim(Slot::H), m.dim(Slot::L));
        let ok = match self {
            Reduction::TwoYangMills => l == 0,
            Reduction::OneYangMills => h == 0 && l == 0,
            Reduction::ThreeElectro => g == 0 && h == 0 && l == 1,
            Reduction::TwoElectro => g == 0 && l == 0 && h == 1,
            Reduction::OneElectro => h == 0 && l == 0 && g == 1 && m.g.is_abelian(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "reduction {self} does not apply to dimensions (g, h, l) = ({g}, {h}, {l})"
            )))
        }
    }

    /// Compares general and reduced residuals on a random connection.
    pub fn check(
        self,
        m: &TwoCrossedModule,
        t: &InvariantForms,
        seed: u64,
        ambient: usize,
        degree_cap: u32,
    ) -> Result<ReductionCheck> {
        self.applicable(m)?;
        let conn = Connection::random(m, seed, ambient, degree_cap)?;
        let adj = t.adjoints(m, EtaConvention::AsPrinted)?;
        let e = m.field_eq_residuals(&adj, &conn)?;
        let (general, direct) = match self {
            Reduction::TwoYangMills => {
                if !e.ec.is_zero() {
                    return Err(Error::Precondition("EC must be empty when l is trivial".into()));
                }
                (vec![e.ea, e.eb], two_ym(m, t, &conn)?)
            }
            Reduction::OneYangMills => (vec![e.ea], vec![one_ym(m, &conn.a)?]),
            Reduction::ThreeElectro => (vec![e.ec], vec![maxwell(&conn.c)?]),
            Reduction::TwoElectro => (vec![e.eb], vec![maxwell(&conn.b)?]),
            Reduction::OneElectro => (vec![e.ea], vec![maxwell(&conn.a)?]),
        };
        Ok(ReductionCheck { reduction: self, seed, general, direct })
    }
}

/// `½ A ∧^[,] A` from the structure constants of `g`.
fn half_bracket(g: &Tensor3, a: &Form) -> Result<Form> {
    Ok(a.wedge_tensor(a, g, Space::G)?.scale(&(Rational::from_i64(1) / Rational::from_i64(2))))
}

/// `d∗dW`: abelian electrodynamics of any degree.
pub fn maxwell(w: &Form) -> Result<Form> {
    Ok(w.d().hodge()?.d())
}

/// `d∗F + A∧^[,]∗F` with `F = dA + ½[A ∧ A]`.
pub fn one_ym(m: &TwoCrossedModule, a: &Form) -> Result<Form> {
    let c = m.g.structure();
    let f = a.d().add(&half_bracket(c, a)?)?;
    let sf = f.hodge()?;
    sf.d().add(&a.wedge_tensor(&sf, c, Space::G)?)
}

/// The ordinary Yang-Mills action `∫⟨F, ∗F⟩`.
pub fn one_ym_action(m: &TwoCrossedModule, t: &InvariantForms, a: &Form) -> Result<Rational> {
    let f = a.d().add(&half_bracket(m.g.structure(), a)?)?;
    pair_with(&f, &f.hodge()?, t.gram(Slot::G))?.integrate_scalar()
}

/// `σ` solved from `G_g σ(Y_a, Y_b) = -(⟨Y_a, X_c ▷ Y_b⟩)_c`.
fn sigma_tensor(m: &TwoCrossedModule, t: &InvariantForms) -> Result<Tensor3> {
    let (ng, nh) = (m.dim(Slot::G), m.dim(Slot::H));
    let act = m.action_tensor(Slot::H);
    let gh = t.gram(Slot::H);
    let mut out = Tensor3::zeros(nh, nh, ng);
    for a in 0..nh {
        for b in 0..nh {
            // ⟨Y_a, X_c ▷ Y_b⟩ = Σ_k act[c][b][k] G_h[a][k]
            let rhs: Vec<Rational> = (0..ng)
                .map(|c| {
                    (0..nh).fold(Rational::from_i64(0), |s, k| s + act.get(c, b, k).clone() * gh.get(a, k).clone())
                })
                .map(|x| -x)
                .collect();
            let sol = t.gram(Slot::G).solve(&rhs)?;
            for (c, v) in sol.into_iter().enumerate() {
                out.set(a, b, c, v);
            }
        }
    }
    Ok(out)
}

/// 2-form Yang-Mills residuals with `F = dA + ½[A ∧ A] − α̃(B)`,
/// `G = dB + A ∧^▷ B`: `d∗F + A∧^[,]∗F − σ̄(∗G, B)` and
/// `d∗G + A∧^▷∗G + α*(∗F)`.
pub fn two_ym(m: &TwoCrossedModule, t: &InvariantForms, conn: &Connection) -> Result<Vec<Form>> {
    let (a, b) = (&conn.a, &conn.b);
    let c = m.g.structure();
    let act = m.action_tensor(Slot::H);
    let f = a.d().add(&half_bracket(c, a)?)?.sub(&b.apply_matrix(&m.alpha, Space::G)?)?;
    let g = b.d().add(&a.wedge_tensor(b, act, Space::H)?)?;
    let (sf, sg) = (f.hodge()?, g.hodge()?);
    let ea = sf.d().add(&a.wedge_tensor(&sf, c, Space::G)?)?.sub(&sg.wedge_tensor(b, &sigma_tensor(m, t)?, Space::G)?)?;
    // α* = G_h⁻¹ α̃ᵀ G_g, applied as a solve
    let rhs = m.alpha.transpose().mul(t.gram(Slot::G))?;
    let alpha_star = solve_columns(t.gram(Slot::H), &rhs)?;
    let eb = sg.d().add(&a.wedge_tensor(&sg, act, Space::H)?)?.add(&sf.apply_matrix(&alpha_star, Space::H)?)?;
    Ok(vec![ea, eb])
}

fn solve_columns(lhs: &Matrix, rhs: &Matrix) -> Result<Matrix> {
    let mut out = Matrix::zeros(lhs.cols(), rhs.cols());
    for j in 0..rhs.cols() {
        let col: Vec<Rational> = (0..rhs.rows()).map(|i| rhs.get(i, j).clone()).collect();
        for (i, v) in lhs.solve(&col)?.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_reduction_matches_on_a_seed() {
        for r in ALL {
            let m = r.default_instance();
            let t = InvariantForms::identity(&m);
            let mut nontrivial = false;
            for seed in 0..4 {
                let check = r.check(&m, &t, seed, 4, 2).unwrap();
                assert!(check.matches(), "{r}: {}", check.max_difference());
                nontrivial |= check.general.iter().any(|f| !f.is_zero());
            }
            assert!(nontrivial, "{r} is vacuous");
        }
    }

    #[test]
    fn wrong_instance_is_rejected() {
        let m = instances::su2_peiffer();
        assert!(Reduction::TwoYangMills.applicable(&m).is_err());
    }

    #[test]
    fn names_round_trip() {
        for r in ALL {
            assert_eq!(r.to_string().parse::<Reduction>().unwrap(), r);
        }
    }
}
