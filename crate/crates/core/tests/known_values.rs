//! Closed-form values and special cases with a known answer.

use trigauge::algebra::{AlgebraElement, LieAlgebra};
use trigauge::config::InstanceConfig;
use trigauge::crossed::{Slot, TwoCrossedModule};
use trigauge::forms::{pair_with, wedge_matrix, Form, Space};
use trigauge::gauge::Connection;
use trigauge::group;
use trigauge::instances;
use trigauge::invariant::{EtaConvention, InvariantForms};
use trigauge::random::FormSampler;
use trigauge::reduce::{one_ym_action, Reduction};
use trigauge::scalar::{int, Rational};

fn sign(n: usize) -> Rational {
    if n % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn coords(slot: Slot, v: &[i64]) -> AlgebraElement {
    AlgebraElement { algebra: slot.label().into(), coords: v.iter().map(|&x| int(x)).collect() }
}

fn forms(m: &TwoCrossedModule) -> InvariantForms {
    InstanceConfig::from_module(m.clone()).invariant_forms().unwrap()
}

#[test]
fn un_style_crossed_module_is_the_identity_map() {
    for m in [instances::su2_crossed(), instances::u2_crossed()] {
        assert!(m.axiom_report().passed(), "{}", m.name);
        let n = m.dim(Slot::H);
        for i in 0..n {
            let y = m.h.basis(i);
            assert_eq!(m.alpha_apply(&y).unwrap().coords, y.coords);
        }
        let t = forms(&m);
        let adj = t.adjoints(&m, EtaConvention::AsPrinted).unwrap();
        // identity Grams on u(N)-style data give α* = id
        if t.gram(Slot::G) == &trigauge::Matrix::identity(n) && t.gram(Slot::H) == &trigauge::Matrix::identity(n) {
            assert_eq!(adj.alpha_star, trigauge::Matrix::identity(n));
        }
    }
    let y = coords(Slot::H, &[2, -1, 5]);
    assert_eq!(instances::su2_crossed().alpha_apply(&y).unwrap().coords, y.coords);
}

#[test]
fn su2_structure_constants() {
    let g = LieAlgebra::su2("g");
    assert_eq!(g.bracket(&g.basis(0), &g.basis(1)).unwrap().coords, vec![int(0), int(0), int(1)]);
    assert_eq!(g.jacobi_residual(), int(0));
}

#[test]
fn square_inverses_give_identities() {
    for f in group::shipped() {
        let g = &f.g;
        for s in f.squares() {
            let ih = f.square_inverse_h(&s);
            assert_eq!(f.alpha[ih.h], g.mul(s.g1, g.inv(s.g2)));
            assert_eq!(f.square_compose_h(&s, &ih).unwrap(), f.identity_square(s.g1));
            assert_eq!(f.square_compose_h(&ih, &s).unwrap(), f.identity_square(s.g2));
            let iv = f.square_inverse_v(&s);
            assert_eq!(f.alpha[iv.h], g.mul(g.inv(s.g2), s.g1));
            assert_eq!(f.square_compose_v(&s, &iv), f.identity_square(g.identity()));
            assert_eq!(f.square_compose_v(&iv, &s), f.identity_square(g.identity()));
        }
    }
}

#[test]
fn cube_inverses_give_identities() {
    for f in group::shipped() {
        let h = &f.h;
        for c in f.cubes() {
            let ih = f.cube_inverse_h(&c);
            assert_eq!(f.beta[ih.l], h.mul(c.h1(), h.inv(c.h2())));
            assert_eq!(f.cube_compose_h(&c, &ih).unwrap(), f.identity_cube(c.left));
            let iv = f.cube_inverse_v(&c);
            assert!(f.is_cube(&iv));
            assert_eq!(f.beta[iv.l], h.mul(h.inv(c.h2()), c.h1()));
            let id = f.cube_compose_v(&c, &iv).unwrap();
            assert_eq!(id.l, f.l.identity(), "{}", f.name);
            assert_eq!(id.left.h, h.identity());
            assert_eq!(id.right.h, h.identity());
        }
    }
}

#[test]
fn killing_form_is_invariant_and_gives_brackets() {
    let m = instances::su2_peiffer();
    let k = m.g.killing_form();
    assert_eq!(k, trigauge::Matrix::identity(3).scale(&int(-2)));
    let t = InvariantForms::new(k.clone(), k.clone(), k).unwrap();
    let inv = t.invariance_residual(&m).unwrap();
    for name in ["g_action", "h_action", "l_action", "h_bracket", "l_bracket"] {
        assert_eq!(inv.residual(name), Some(&int(0)), "{name}");
    }
    let adj = t.adjoints(&m, EtaConvention::AsPrinted).unwrap();
    for a in 0..3 {
        for b in 0..3 {
            let (y, yp) = (m.h.basis(a), m.h.basis(b));
            assert_eq!(adj.sigma(&y, &yp).unwrap().coords, m.h.bracket(&y, &yp).unwrap().coords);
            let (z, zp) = (m.l.basis(a), m.l.basis(b));
            assert_eq!(adj.kappa(&z, &zp).unwrap().coords, m.l.bracket(&z, &zp).unwrap().coords);
        }
    }
}

#[test]
fn projected_su2_form_is_a_positive_multiple_of_minus_killing() {
    let m = instances::su2_crossed();
    let t = forms(&m);
    let minus_k = m.g.killing_form().scale(&int(-1));
    let c = t.gram(Slot::G).get(0, 0).clone() / minus_k.get(0, 0).clone();
    assert!(c > int(0));
    assert_eq!(t.gram(Slot::G), &minus_k.scale(&c));
}

#[test]
fn bracket_and_action_wedges_expand_in_a_matrix_algebra() {
    let m = instances::su2_crossed();
    let mut s = FormSampler::new(4, 4, 2);
    for (k1, k2) in [(1, 1), (1, 2), (2, 2), (1, 3)] {
        let a = s.form(k1, Space::G, 3);
        let a2 = s.form(k2, Space::G, 3);
        let (ea, ea2) = (m.embed(&a).unwrap(), m.embed(&a2).unwrap());
        let plain = wedge_matrix(&ea, &ea2).unwrap();
        let swapped = wedge_matrix(&ea2, &ea).unwrap();
        let want = plain.sub(&swapped.scale(&sign(k1 * k2))).unwrap();
        assert_eq!(m.embed(&m.wedge_bracket(&a, &a2).unwrap()).unwrap(), want);

        // g acting on h = g by the adjoint action
        let w = s.form(k2, Space::H, 3);
        let ew = m.embed(&w).unwrap().relabel(Space::Matrix(3));
        let want = wedge_matrix(&ea, &ew).unwrap().add(&wedge_matrix(&ew, &ea).unwrap().scale(&sign(k1 * k2 + 1))).unwrap();
        assert_eq!(m.embed(&m.wedge_action(&a, &w).unwrap()).unwrap(), want);
    }
}

#[test]
fn beta_commutes_with_the_action_wedge() {
    let m = instances::su2_peiffer();
    let mut s = FormSampler::new(8, 4, 2);
    for (k, t) in [(1, 1), (1, 3), (2, 2)] {
        let a = s.form(k, Space::G, 3);
        let c = s.form(t, Space::L, 3);
        let lhs = m.lift_beta(&m.wedge_action(&a, &c).unwrap()).unwrap();
        let rhs = m.wedge_action(&a, &m.lift_beta(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn pairing_of_odd_forms_is_antisymmetric() {
    let gram = trigauge::Matrix::identity(3);
    let mut s = FormSampler::new(2, 4, 2);
    for (k1, k2) in [(1, 1), (1, 3), (3, 1)] {
        let a = s.form(k1, Space::G, 3);
        let b = s.form(k2, Space::G, 3);
        let ab = pair_with(&a, &b, &gram).unwrap();
        assert_eq!(ab, pair_with(&b, &a, &gram).unwrap().neg());
        assert!(!ab.is_zero());
    }
}

#[test]
fn sigma_bar_symmetry_and_pairing() {
    let m = instances::su2_peiffer();
    let t = forms(&m);
    let adj = t.adjoints(&m, EtaConvention::AsPrinted).unwrap();
    let mut s = FormSampler::new(6, 4, 2);
    let sigma_bar = |b1: &Form, b2: &Form| b1.wedge_tensor(b2, &adj.sigma, Space::G).unwrap();
    for (t1, t2, k) in [(1, 1, 1), (1, 2, 1), (2, 1, 1), (1, 1, 2), (2, 1, 1)] {
        let b1 = s.form(t1, Space::H, 3);
        let b2 = s.form(t2, Space::H, 3);
        let a = s.form(k, Space::G, 3);
        assert_eq!(sigma_bar(&b1, &b2), sigma_bar(&b2, &b1).scale(&sign(t1 * t2 + 1)));
        let lhs = pair_with(&sigma_bar(&b1, &b2), &a, t.gram(Slot::G)).unwrap();
        let rhs = pair_with(&b1, &m.wedge_action(&a, &b2).unwrap(), t.gram(Slot::H)).unwrap();
        assert_eq!(lhs, rhs.scale(&sign(k * t2 + 1)));
    }
}

#[test]
fn bianchi_vanishes_including_the_flat_variant() {
    for m in [instances::su2_peiffer(), instances::su2_l_u1()] {
        for seed in 0..3 {
            let conn = Connection::random(&m, seed, 5, 2).unwrap();
            assert!(m.bianchi_residuals(&conn).unwrap().is_zero(), "{}", m.name);
        }
    }
    let m = instances::su2_l_u1();
    let conn = Connection::random(&m, 1, 5, 3).unwrap();
    assert!(m.flat_bianchi_residuals(&conn).unwrap().is_zero());
}

#[test]
fn trivial_l_reduces_to_two_form_yang_mills() {
    let m = instances::su2_crossed();
    let t = forms(&m);
    for seed in 0..3 {
        let check = Reduction::TwoYangMills.check(&m, &t, seed, 4, 2).unwrap();
        assert!(check.matches());
        let adj = t.adjoints(&m, EtaConvention::AsPrinted).unwrap();
        let e = m.field_eq_residuals(&adj, &Connection::random(&m, seed, 4, 2).unwrap()).unwrap();
        assert!(e.ec.is_zero());
        assert_eq!(e.ec.width(), 0);
    }
}

#[test]
fn trivial_g_with_u1_reduces_to_two_form_electromagnetism() {
    let m = instances::by_name("u1_elec2").unwrap();
    let t = forms(&m);
    for seed in 0..3 {
        assert!(Reduction::TwoElectro.check(&m, &t, seed, 4, 3).unwrap().matches());
    }
}

#[test]
fn trivial_h_and_l_give_the_yang_mills_action() {
    let m = instances::by_name("su2_ym").unwrap();
    let t = forms(&m);
    for seed in 0..3 {
        let conn = Connection::random(&m, seed, 4, 2).unwrap();
        assert_eq!(m.action(&t, &conn).unwrap(), one_ym_action(&m, &t, &conn.a).unwrap());
        assert!(Reduction::OneYangMills.check(&m, &t, seed, 4, 2).unwrap().matches());
    }
}
