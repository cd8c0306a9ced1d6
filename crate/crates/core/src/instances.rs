//! Shipped differential 2-crossed modules and the searches that produced
//! the ones with a nonzero Peiffer lifting.

use num_traits::Zero;

use crate::algebra::LieAlgebra;
use crate::crossed::{Slot, TwoCrossedModule};
use crate::linalg::{Matrix, Tensor3};
use crate::scalar::{int, rat, Rational};

fn col(v: &[i64]) -> Matrix {
    Matrix::from_rows(v.iter().map(|&x| vec![int(x)]).collect()).expect("column")
}

fn row(v: &[i64]) -> Matrix {
    Matrix::from_rows(vec![v.iter().map(|&x| int(x)).collect()]).expect("row")
}

fn trivial_action(g: usize, n: usize) -> Tensor3 {
    Tensor3::zeros(g, n, n)
}

/// `R <- R² <- R` with `α̃ = (1, -1)`, `β̃ = (1, 1)ᵀ`, trivial actions and
/// Peiffer lifting. Every entry of `α̃` and `β̃` feeds `α̃β̃`, so no single
/// entry can move without breaking the chain condition.
pub fn abelian_chain() -> TwoCrossedModule {
    let mut m = TwoCrossedModule::new(
        "abelian_chain",
        LieAlgebra::abelian("g", 1),
        LieAlgebra::abelian("h", 2),
        LieAlgebra::abelian("l", 1),
        row(&[1, -1]),
        col(&[1, 1]),
        trivial_action(1, 2),
        trivial_action(1, 1),
        Tensor3::zeros(2, 2, 1),
    )
    .expect("shapes");
    m.wedge_substitution = true;
    m.alpha_right_inverse = Some(col(&[1, 0]));
    m
}

fn crossed_identity(name: &str, g: LieAlgebra) -> TwoCrossedModule {
    let n = g.dim();
    let act = g.structure().clone();
    let mut m = TwoCrossedModule::new(
        name,
        g.clone(),
        g,
        LieAlgebra::abelian("l", 0),
        Matrix::identity(n),
        Matrix::zeros(n, 0),
        act,
        Tensor3::zeros(n, 0, 0),
        Tensor3::zeros(n, n, 0),
    )
    .expect("shapes");
    m.alpha_right_inverse = Some(Matrix::identity(n));
    m
}

/// `(su(2), su(2); id, ad)` extended by `l = 0`.
pub fn su2_crossed() -> TwoCrossedModule {
    crossed_identity("su2_crossed", LieAlgebra::su2("g"))
}

/// `(u(2), u(2); id, ad)` extended by `l = 0`.
pub fn u2_crossed() -> TwoCrossedModule {
    crossed_identity("u2_crossed", LieAlgebra::u2("g"))
}

/// `g = su(2)`, `h = 0`, `l = u(1)` with trivial action.
pub fn su2_l_u1() -> TwoCrossedModule {
    TwoCrossedModule::new(
        "su2_l_u1",
        LieAlgebra::su2("g"),
        LieAlgebra::abelian("h", 0),
        LieAlgebra::abelian("l", 1),
        Matrix::zeros(3, 0),
        Matrix::zeros(0, 1),
        trivial_action(3, 0),
        trivial_action(3, 1),
        Tensor3::zeros(0, 0, 1),
    )
    .expect("shapes")
}

/// `l = h = g` with `α̃ = ν·1`, `β̃ = μ·1`, adjoint actions and Peiffer
/// lifting `λ·[,]`.
pub fn scaled_identity_family(g: &LieAlgebra, lambda: &Rational, mu: &Rational, nu: &Rational) -> TwoCrossedModule {
    let n = g.dim();
    let c = g.structure().clone();
    let mut m = TwoCrossedModule::new(
        format!("{}_peiffer", g.name()),
        g.clone(),
        g.clone(),
        g.clone(),
        Matrix::identity(n).scale(nu),
        Matrix::identity(n).scale(mu),
        c.clone(),
        c.clone(),
        c.map(|x| x * lambda),
    )
    .expect("shapes");
    if !mu.is_zero() {
        m.beta_right_inverse = Some(Matrix::identity(n).scale(&(int(1) / mu.clone())));
    }
    m
}

/// Grid of small rationals used by the searches.
pub fn search_grid() -> Vec<Rational> {
    vec![int(-2), int(-1), rat(-1, 2), int(0), rat(1, 2), int(1), int(2)]
}

/// All `(λ, μ, ν)` on `grid³` for which [`scaled_identity_family`] passes
/// every axiom.
pub fn search_scaled_family(g: &LieAlgebra, grid: &[Rational]) -> Vec<(Rational, Rational, Rational)> {
    let mut out = Vec::new();
    for l in grid {
        for mu in grid {
            for nu in grid {
                if scaled_identity_family(g, l, mu, nu).axiom_report().passed() {
                    out.push((l.clone(), mu.clone(), nu.clone()));
                }
            }
        }
    }
    out
}

/// `su(2)` at every level, `α̃ = 0`, `β̃ = 1`, Peiffer lifting `[,]`: the
/// only solution of [`search_scaled_family`] on the default grid.
pub fn su2_peiffer() -> TwoCrossedModule {
    let mut m = scaled_identity_family(&LieAlgebra::su2("g"), &int(1), &int(1), &int(0));
    m.name = "su2_peiffer".into();
    m
}

/// Every Peiffer tensor with entries in `values` that makes `template`
/// (whose own lifting is ignored) pass the full axiom report.
pub fn search_peiffer(template: &TwoCrossedModule, values: &[Rational]) -> Vec<Tensor3> {
    let (a, b, c) = template.peiffer.shape();
    let slots = a * b * c;
    let mut out = Vec::new();
    let mut digits = vec![0usize; slots];
    let mut candidate = template.clone();
    loop {
        let mut t = Tensor3::zeros(a, b, c);
        for (i, &d) in digits.iter().enumerate() {
            t.set(i / (b * c), (i / c) % b, i % c, values[d].clone());
        }
        candidate.peiffer = t;
        if candidate.axiom_report().passed() {
            out.push(candidate.peiffer.clone());
        }
        let mut pos = 0;
        while pos < slots {
            digits[pos] += 1;
            if digits[pos] < values.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if pos == slots {
            break;
        }
    }
    out
}

/// `aff(1)` at every level with `α̃ = 0`, `β̃ = 1` and adjoint actions; the
/// unique Peiffer lifting in `{-1,0,1}^8` found by [`search_peiffer`].
pub fn aff1_peiffer() -> TwoCrossedModule {
    let mut m = aff1_template();
    let mut p = Tensor3::zeros(2, 2, 2);
    // {x, y} = y, {y, x} = -y
    p.set(0, 1, 1, int(1));
    p.set(1, 0, 1, int(-1));
    m.peiffer = p;
    m
}

/// [`aff1_peiffer`] with the lifting set to zero.
pub fn aff1_template() -> TwoCrossedModule {
    let g = LieAlgebra::aff1("g");
    let c = g.structure().clone();
    let mut m = TwoCrossedModule::new(
        "aff1_peiffer",
        g.clone(),
        g.clone(),
        g,
        Matrix::zeros(2, 2),
        Matrix::identity(2),
        c.clone(),
        c,
        Tensor3::zeros(2, 2, 2),
    )
    .expect("shapes");
    m.beta_right_inverse = Some(Matrix::identity(2));
    m
}

/// Only `g`, with `h = l = 0`: ordinary Yang-Mills.
pub fn pure_g(name: &str, g: LieAlgebra) -> TwoCrossedModule {
    let n = g.dim();
    let abelian = g.is_abelian();
    let mut m = TwoCrossedModule::new(
        name,
        g,
        LieAlgebra::abelian("h", 0),
        LieAlgebra::abelian("l", 0),
        Matrix::zeros(n, 0),
        Matrix::zeros(0, 0),
        trivial_action(n, 0),
        trivial_action(n, 0),
        Tensor3::zeros(0, 0, 0),
    )
    .expect("shapes");
    m.wedge_substitution = abelian;
    m
}

/// A single abelian algebra of dimension `n` in `slot`, the others zero.
pub fn single_abelian(name: &str, slot: Slot, n: usize) -> TwoCrossedModule {
    let dims = match slot {
        Slot::G => (n, 0, 0),
        Slot::H => (0, n, 0),
        Slot::L => (0, 0, n),
    };
    let (ng, nh, nl) = dims;
    let mut m = TwoCrossedModule::new(
        name,
        LieAlgebra::abelian("g", ng),
        LieAlgebra::abelian("h", nh),
        LieAlgebra::abelian("l", nl),
        Matrix::zeros(ng, nh),
        Matrix::zeros(nh, nl),
        trivial_action(ng, nh),
        trivial_action(ng, nl),
        Tensor3::zeros(nh, nh, nl),
    )
    .expect("shapes");
    m.wedge_substitution = true;
    m
}

/// Instances every suite runs against.
pub fn shipped() -> Vec<TwoCrossedModule> {
    vec![abelian_chain(), su2_crossed(), su2_l_u1(), su2_peiffer(), aff1_peiffer()]
}

/// Looks up a shipped or reduction instance by name.
pub fn by_name(name: &str) -> Option<TwoCrossedModule> {
    Some(match name {
        "abelian_chain" => abelian_chain(),
        "su2_crossed" => su2_crossed(),
        "u2_crossed" => u2_crossed(),
        "su2_l_u1" => su2_l_u1(),
        "su2_peiffer" => su2_peiffer(),
        "aff1_peiffer" => aff1_peiffer(),
        "su2_ym" => pure_g("su2_ym", LieAlgebra::su2("g")),
        "u1_elec1" => single_abelian("u1_elec1", Slot::G, 1),
        "u1_elec2" => single_abelian("u1_elec2", Slot::H, 1),
        "u1_elec3" => single_abelian("u1_elec3", Slot::L, 1),
        _ => return None,
    })
}

/// Copies of `m` with one entry of the Peiffer tensor, `α̃` or `β̃` raised by 1.
pub fn single_entry_perturbations(m: &TwoCrossedModule) -> Vec<(String, TwoCrossedModule)> {
    let mut out = Vec::new();
    let (a, b, c) = m.peiffer.shape();
    for i in 0..a {
        for j in 0..b {
            for k in 0..c {
                let mut p = m.clone();
                p.peiffer.add_to(i, j, k, &int(1));
                out.push((format!("peiffer[{}][{}][{}]", i + 1, j + 1, k + 1), p));
            }
        }
    }
    for (label, mat) in [("alpha", &m.alpha), ("beta", &m.beta)] {
        for i in 0..mat.rows() {
            for j in 0..mat.cols() {
                let mut p = m.clone();
                let target = if label == "alpha" { &mut p.alpha } else { &mut p.beta };
                let v = target.get(i, j).clone() + int(1);
                target.set(i, j, v);
                out.push((format!("{label}[{}][{}]", i + 1, j + 1), p));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_instances_pass() {
        for m in shipped() {
            let rep = m.axiom_report();
            assert!(rep.passed(), "{}: {:?}", m.name, rep.failures());
        }
        for name in ["u2_crossed", "su2_ym", "u1_elec1", "u1_elec2", "u1_elec3"] {
            assert!(by_name(name).unwrap().axiom_report().passed(), "{name}");
        }
    }

    #[test]
    fn scaled_family_has_a_unique_solution() {
        // β̃ must be a homomorphism (μ = 1), then λμ = 1 and α̃β̃ = 0 force the rest
        let found = search_scaled_family(&LieAlgebra::su2("g"), &search_grid());
        assert_eq!(found, vec![(int(1), int(1), int(0))]);
    }

    #[test]
    fn aff1_search_finds_shipped_lifting() {
        let found = search_peiffer(&aff1_template(), &[int(-1), int(0), int(1)]);
        assert_eq!(found, vec![aff1_peiffer().peiffer]);
    }

    #[test]
    fn u2_alpha_is_identity() {
        let m = u2_crossed();
        let y = m.h.random_element(3, 4);
        let y = crate::algebra::AlgebraElement { algebra: "h".into(), coords: y.coords };
        assert_eq!(m.alpha_apply(&y).unwrap().coords, y.coords);
    }
}
