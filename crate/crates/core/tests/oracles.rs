//! Library results compared against small, independently written
//! reference computations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trigauge::algebra::{AlgebraElement, LieAlgebra};
use trigauge::config::InstanceConfig;
use trigauge::crossed::{Slot, TwoCrossedModule};
use trigauge::forms::{indices_of, pair_with, Form, Space};
use trigauge::gauge::Connection;
use trigauge::group;
use trigauge::instances;
use trigauge::invariant::{EtaConvention, InvariantForms};
use trigauge::linalg::{Matrix, Tensor3};
use trigauge::poly::Polynomial;
use trigauge::random::FormSampler;
use trigauge::scalar::{int, rat, Rational};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(r: &mut ChaCha8Rng) -> Rational {
    rat(r.gen_range(-4..=4), r.gen_range(1..=3))
}

fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_shape(rows, cols, (0..rows * cols).map(|_| small(r)).collect()).unwrap()
}

fn random_tensor(r: &mut ChaCha8Rng, a: usize, b: usize, c: usize) -> Tensor3 {
    let mut t = Tensor3::zeros(a, b, c);
    for i in 0..a {
        for j in 0..b {
            for k in 0..c {
                t.set(i, j, k, small(r));
            }
        }
    }
    t
}

/// `QᵀQ + 1`, symmetric positive definite.
fn random_gram(r: &mut ChaCha8Rng, n: usize) -> Matrix {
    let q = random_matrix(r, n, n);
    q.transpose().mul(&q).unwrap().add(&Matrix::identity(n))
}

/// A module with arbitrary maps and tensors; no axiom is expected to hold.
fn random_module(seed: u64, (ng, nh, nl): (usize, usize, usize)) -> TwoCrossedModule {
    let mut r = rng(seed);
    TwoCrossedModule::new(
        "random",
        LieAlgebra::abelian("g", ng),
        LieAlgebra::abelian("h", nh),
        LieAlgebra::abelian("l", nl),
        random_matrix(&mut r, ng, nh),
        random_matrix(&mut r, nh, nl),
        random_tensor(&mut r, ng, nh, nh),
        random_tensor(&mut r, ng, nl, nl),
        random_tensor(&mut r, nh, nh, nl),
    )
    .unwrap()
}

fn element(slot: Slot, coords: Vec<Rational>) -> AlgebraElement {
    AlgebraElement { algebra: slot.label().into(), coords }
}

fn dot(g: &Matrix, u: &[Rational], v: &[Rational]) -> Rational {
    let mut s = int(0);
    for i in 0..u.len() {
        for j in 0..v.len() {
            s += u[i].clone() * g.get(i, j).clone() * v[j].clone();
        }
    }
    s
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect()
}

#[test]
fn maps_match_naive_matrix_vector_products() {
    for seed in 0..5 {
        let m = random_module(seed, (3, 4, 2));
        let mut r = rng(100 + seed);
        let y: Vec<Rational> = (0..4).map(|_| small(&mut r)).collect();
        let z: Vec<Rational> = (0..2).map(|_| small(&mut r)).collect();
        let rows = m.alpha.to_rows();
        let expect: Vec<Rational> = rows.iter().map(|row| row.iter().zip(&y).map(|(a, b)| a.clone() * b.clone()).sum()).collect();
        assert_eq!(m.alpha_apply(&element(Slot::H, y)).unwrap().coords, expect);
        let rows = m.beta.to_rows();
        let expect: Vec<Rational> = rows.iter().map(|row| row.iter().zip(&z).map(|(a, b)| a.clone() * b.clone()).sum()).collect();
        assert_eq!(m.beta_apply(&element(Slot::L, z)).unwrap().coords, expect);
    }
}

#[test]
fn prime_action_is_minus_peiffer_of_beta() {
    for m in [instances::su2_peiffer(), instances::aff1_peiffer(), random_module(7, (2, 3, 2))] {
        for seed in 0..5 {
            let mut r = rng(seed);
            let y = element(Slot::H, (0..m.dim(Slot::H)).map(|_| small(&mut r)).collect());
            let z = element(Slot::L, (0..m.dim(Slot::L)).map(|_| small(&mut r)).collect());
            let lhs = m.act_h_prime(&y, &z).unwrap();
            let rhs = m.peiffer(&m.beta_apply(&z).unwrap(), &y).unwrap();
            assert_eq!(lhs.add(&rhs).coords, vec![int(0); m.dim(Slot::L)], "{}", m.name);
        }
    }
}

#[test]
fn square_boundaries_brute_forced() {
    for f in group::shipped() {
        let (g, h) = (&f.g, &f.h);
        let squares = f.squares();
        for s1 in &squares {
            for s2 in &squares {
                let v = f.square_compose_v(s1, s2);
                // α(h₁⋆h₂) = g₂ g₄ g₃⁻¹ g₁⁻¹
                let want = g.mul(g.mul(s1.g2, s2.g2), g.inv(g.mul(s1.g1, s2.g1)));
                assert_eq!(f.alpha[v.h], want, "{}", f.name);
                if s1.g2 == s2.g1 {
                    let c = f.square_compose_h(s1, s2).unwrap();
                    assert_eq!(f.alpha[c.h], g.mul(s2.g2, g.inv(s1.g1)));
                    assert_eq!(c.h, h.mul(s2.h, s1.h));
                }
            }
        }
    }
}

#[test]
fn cube_boundaries_brute_forced() {
    let mut r = rng(3);
    for f in group::shipped() {
        let (h, l) = (&f.h, &f.l);
        let cubes = f.cubes();
        for _ in 0..400 {
            let c1 = cubes[r.gen_range(0..cubes.len())];
            let pick = |pred: &dyn Fn(&trigauge::group::Cube) -> bool| cubes.iter().copied().filter(|c| pred(c)).collect::<Vec<_>>();
            let right = pick(&|c| c.left == c1.right);
            let c2 = right[r.gen_range(0..right.len())];
            let hc = f.cube_compose_h(&c1, &c2).unwrap();
            assert!(f.is_cube(&hc));
            // β(l∘l′) = h₃ h₁⁻¹
            assert_eq!(f.beta[hc.l], h.mul(c2.h2(), h.inv(c1.h1())));
            assert_eq!(hc.l, l.mul(c2.l, c1.l));

            let below = pick(&|c| c.left.g2 == c1.left.g1 && c.right.g2 == c1.right.g1);
            if below.is_empty() {
                continue;
            }
            let c3 = below[r.gen_range(0..below.len())];
            let vc = f.cube_compose_v(&c1, &c3).unwrap();
            assert!(f.is_cube(&vc), "{}", f.name);
            // β(l⋆l′) = h₂ h₄ h₃⁻¹ h₁⁻¹ with h₃, h₄ from the second cube
            let want = h.mul(h.mul(c1.h2(), c3.h2()), h.inv(h.mul(c1.h1(), c3.h1())));
            assert_eq!(f.beta[vc.l], want, "{}", f.name);
        }
    }
}

#[test]
fn adjoints_satisfy_their_relations_for_random_grams() {
    for seed in 0..4 {
        let m = random_module(seed, (3, 3, 2));
        let mut r = rng(50 + seed);
        let t = InvariantForms::new(random_gram(&mut r, 3), random_gram(&mut r, 3), random_gram(&mut r, 2)).unwrap();
        let adj = t.adjoints(&m, EtaConvention::AsPrinted).unwrap();
        let (gg, gh, gl) = (t.gram(Slot::G), t.gram(Slot::H), t.gram(Slot::L));
        for a in 0..3 {
            for b in 0..3 {
                let (x, y) = (unit(3, a), unit(3, b));
                // ⟨Y, α*(X)⟩_h = ⟨α̃(Y), X⟩_g
                let lhs = dot(gh, &y, &adj.alpha_star(&element(Slot::G, x.clone())).unwrap().coords);
                let rhs = dot(gg, &m.alpha_apply(&element(Slot::H, y.clone())).unwrap().coords, &x);
                assert_eq!(lhs, rhs);
                for c in 0..3 {
                    // ⟨σ(Y,Y'), X⟩_g = -⟨Y, X ▷ Y'⟩_h
                    let yp = unit(3, c);
                    let s = adj.sigma(&element(Slot::H, y.clone()), &element(Slot::H, yp.clone())).unwrap();
                    let act = m.act(&element(Slot::G, x.clone()), &element(Slot::H, yp)).unwrap();
                    assert_eq!(dot(gg, &s.coords, &x), -dot(gh, &y, &act.coords));
                }
            }
            for z in 0..2 {
                let zv = unit(2, z);
                // ⟨Z, β*(Y)⟩_l = ⟨β̃(Z), Y⟩_h
                let y = unit(3, a);
                let lhs = dot(gl, &zv, &adj.beta_star(&element(Slot::H, y.clone())).unwrap().coords);
                let rhs = dot(gh, &m.beta_apply(&element(Slot::L, zv.clone())).unwrap().coords, &y);
                assert_eq!(lhs, rhs);
                for b in 0..3 {
                    // ⟨{Y,Y'}, Z⟩_l = -⟨Y', η₁(Z,Y)⟩_h = -⟨Y, η₂(Z,Y')⟩_h
                    let yp = unit(3, b);
                    let p = m.peiffer(&element(Slot::H, y.clone()), &element(Slot::H, yp.clone())).unwrap();
                    let lhs = dot(gl, &p.coords, &zv);
                    let e1 = adj.eta(1, &element(Slot::L, zv.clone()), &element(Slot::H, y.clone())).unwrap();
                    let e2 = adj.eta(2, &element(Slot::L, zv.clone()), &element(Slot::H, yp.clone())).unwrap();
                    assert_eq!(lhs, -dot(gh, &yp, &e1.coords));
                    assert_eq!(lhs, -dot(gh, &y, &e2.coords));
                }
            }
        }
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..3 {
                    // ⟨κ(Z,Z'), X⟩_g = -⟨Z, X ▷ Z'⟩_l
                    let (z, zp, x) = (unit(2, a), unit(2, b), unit(3, c));
                    let k = adj.kappa(&element(Slot::L, z.clone()), &element(Slot::L, zp.clone())).unwrap();
                    let act = m.act(&element(Slot::G, x.clone()), &element(Slot::L, zp)).unwrap();
                    assert_eq!(dot(gg, &k.coords, &x), -dot(gl, &z, &act.coords));
                }
            }
        }
    }
}

/// The `i`-th coordinate of an algebra-valued form, as a scalar form.
fn coordinate(w: &Form, i: usize) -> Form {
    let mut out = Form::zero(w.ambient(), w.nvars(), w.degree(), Space::Scalar, 1);
    for (mask, v) in w.components() {
        out.set_component(mask, vec![v[i].clone()]).unwrap();
    }
    out
}

#[test]
fn lifted_maps_act_componentwise() {
    for seed in 0..4 {
        let m = random_module(seed, (3, 4, 2));
        let mut s = FormSampler::new(seed, 4, 2);
        let b = s.form(2, Space::H, 4);
        let lifted = m.lift_alpha(&b).unwrap();
        for (mask, v) in b.components() {
            let got = lifted.component(mask);
            for (i, p) in got.iter().enumerate() {
                let mut want = Polynomial::zero(b.nvars());
                for (j, q) in v.iter().enumerate() {
                    want = want.add(&q.scale(m.alpha.get(i, j)));
                }
                assert_eq!(*p, want);
            }
        }
        let c = s.form(3, Space::L, 2);
        let lifted = m.lift_beta(&c).unwrap();
        for i in 0..4 {
            let mut want = Form::zero(4, c.nvars(), 3, Space::Scalar, 1);
            for j in 0..2 {
                want = want.add(&coordinate(&c, j).scale(m.beta.get(i, j))).unwrap();
            }
            assert_eq!(coordinate(&lifted, i), want);
        }
    }
}

#[test]
fn pairing_is_the_double_sum() {
    let mut r = rng(9);
    for seed in 0..4 {
        let gram = random_gram(&mut r, 3);
        let mut s = FormSampler::new(seed, 4, 2);
        for (k1, k2) in [(1, 1), (1, 2), (2, 2), (1, 3), (0, 4)] {
            let a = s.form(k1, Space::G, 3);
            let b = s.form(k2, Space::G, 3);
            let mut want = Form::zero(4, a.nvars(), k1 + k2, Space::Scalar, 1);
            for i in 0..3 {
                for j in 0..3 {
                    let term = coordinate(&a, i).wedge_scalar(&coordinate(&b, j)).unwrap();
                    want = want.add(&term.scale(gram.get(i, j))).unwrap();
                }
            }
            assert_eq!(pair_with(&a, &b, &gram).unwrap(), want);
        }
    }
}

fn permutation_sign(seq: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[test]
fn hodge_matches_complement_indices() {
    for d in [4, 5, 6] {
        for k in 0..=d {
            let w = FormSampler::new(k as u64, d, 2).form(k, Space::H, 2);
            let star = w.hodge().unwrap();
            let full = (1u32 << d) - 1;
            for (mask, v) in w.components() {
                let comp = full & !mask;
                let seq: Vec<usize> = indices_of(mask).into_iter().chain(indices_of(comp)).collect();
                let sign = int(permutation_sign(&seq));
                let want: Vec<Polynomial> = v.iter().map(|p| p.scale(&sign)).collect();
                assert_eq!(star.component(comp), want, "d={d} k={k}");
            }
            assert_eq!(star.components().count(), w.components().count());
        }
    }
}

#[test]
fn fake_flat_equations_match_the_general_ones_when_maps_vanish() {
    for m in [instances::su2_l_u1(), instances::by_name("su2_ym").unwrap()] {
        let t = InstanceConfig::from_module(m.clone()).invariant_forms().unwrap();
        let adj = t.adjoints(&m, EtaConvention::AsPrinted).unwrap();
        for seed in 0..3 {
            let conn = m.fake_flat_witness(seed, 4, 2).unwrap();
            assert_eq!(m.field_eq_residuals(&adj, &conn).unwrap(), m.fake_flat_field_eq_residuals(&adj, &conn).unwrap());
        }
    }
}

/// With nonzero maps the fake-flat equations differ from the general ones
/// by the Ω₁ = α̃(B), Ω₂ = β̃(C) terms, expanded here by hand.
#[test]
fn fake_flat_equations_expand_as_expected() {
    for m in [instances::abelian_chain(), instances::su2_crossed(), instances::su2_peiffer()] {
        let t = InstanceConfig::from_module(m.clone()).invariant_forms().unwrap();
        let adj = t.adjoints(&m, EtaConvention::AsPrinted).unwrap();
        for seed in 0..3 {
            let conn = m.fake_flat_witness(seed, 4, 2).unwrap();
            assert_eq!(m.is_fake_flat(&conn).unwrap(), (true, true), "{}", m.name);
            let general = m.field_eq_residuals(&adj, &conn).unwrap();
            let ff = m.fake_flat_field_eq_residuals(&adj, &conn).unwrap();
            let so1 = m.lift_alpha(&conn.b).unwrap().hodge().unwrap();
            let so2 = m.lift_beta(&conn.c).unwrap().hodge().unwrap();
            let da = so1
                .d()
                .add(&m.wedge_bracket(&conn.a, &so1).unwrap())
                .unwrap()
                .sub(&so2.wedge_tensor(&conn.b, &adj.sigma, Space::G).unwrap())
                .unwrap();
            let db = so2.d().add(&m.wedge_action(&conn.a, &so2).unwrap()).unwrap();
            assert_eq!(ff.ea.sub(&general.ea).unwrap(), da, "{}", m.name);
            assert_eq!(ff.eb.sub(&general.eb).unwrap(), db, "{}", m.name);
            assert_eq!(ff.ec, general.ec, "{}", m.name);
        }
        let conn = Connection::random(&m, 1, 4, 2).unwrap();
        let k = m.curvatures(&conn).unwrap();
        if !k.f1.is_zero() || !k.f2.is_zero() {
            assert!(m.fake_flat_field_eq_residuals(&adj, &conn).is_err());
        }
    }
}

#[test]
fn curvature_differences_are_the_lifted_fields() {
    for m in instances::shipped() {
        for seed in 0..3 {
            let conn = Connection::random(&m, seed, 4, 2).unwrap();
            let k = m.curvatures(&conn).unwrap();
            assert_eq!(k.omega1.sub(&k.f1).unwrap(), m.lift_alpha(&conn.b).unwrap(), "{}", m.name);
            assert_eq!(k.omega2.sub(&k.f2).unwrap(), m.lift_beta(&conn.c).unwrap(), "{}", m.name);
        }
    }
}
