use proptest::prelude::*;
use trigauge::algebra::{AlgebraElement, LieAlgebra};
use trigauge::config::InstanceConfig;
use trigauge::crossed::Slot;
use trigauge::forms::{pair_with, Form, Space};
use trigauge::gauge::Connection;
use trigauge::group;
use trigauge::instances;
use trigauge::poly::{Monomial, Polynomial};
use trigauge::random::FormSampler;
use trigauge::scalar::{int, Rational};
use trigauge::suites::{self, Options};
use trigauge::Matrix;

fn sign(n: usize) -> Rational {
    if n % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn scalar_form(s: &mut FormSampler, k: usize) -> Form {
    s.form(k, Space::Scalar, 1)
}

fn bilinear(gram: &Matrix<Rational>, a: &AlgebraElement, b: &AlgebraElement) -> Rational {
    let mut acc = int(0);
    for (i, x) in a.coords.iter().enumerate() {
        for (j, y) in b.coords.iter().enumerate() {
            acc += gram.get(i, j).clone() * x * y;
        }
    }
    acc
}

fn poly(terms: &[(u32, u32, i64)]) -> Polynomial<Rational> {
    let mut p = Polynomial::zero(2);
    for &(a, b, c) in terms {
        p.add_assign_ref(&Polynomial::term(2, Monomial::from_exponents(&[a, b]), int(c)));
    }
    p
}

fn terms() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    prop::collection::vec((0u32..3, 0u32..3, -5i64..=5), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), d in 4usize..=5, k in 0usize..=3) {
        let mut s = FormSampler::new(seed, d, 3);
        let w = s.form(k, Space::G, 2);
        prop_assert!(w.d().d().is_zero());
    }

    #[test]
    fn double_hodge_sign(seed in any::<u64>(), d in 4usize..=5, k in 0usize..=5) {
        prop_assume!(k <= d);
        let mut s = FormSampler::new(seed, d, 2);
        let w = s.form(k, Space::H, 2);
        prop_assert_eq!(w.hodge().unwrap().hodge().unwrap(), w.scale(&sign(k * (d - k))));
    }

    #[test]
    fn graded_leibniz_and_commutativity(seed in any::<u64>(), k1 in 0usize..=2, k2 in 0usize..=2) {
        let mut s = FormSampler::new(seed, 4, 2);
        let a = scalar_form(&mut s, k1);
        let b = scalar_form(&mut s, k2);
        let ab = a.wedge_scalar(&b).unwrap();
        let rhs = a.d().wedge_scalar(&b).unwrap().add(&a.wedge_scalar(&b.d()).unwrap().scale(&sign(k1))).unwrap();
        prop_assert_eq!(ab.d(), rhs);
        prop_assert_eq!(ab, b.wedge_scalar(&a).unwrap().scale(&sign(k1 * k2)));
    }

    #[test]
    fn pairing_is_graded_symmetric(seed in any::<u64>(), k1 in 0usize..=3, k2 in 0usize..=3) {
        let mut s = FormSampler::new(seed, 4, 2);
        let m = Matrix::from_rows(vec![
            vec![int(2), int(1), int(0)],
            vec![int(1), int(3), int(-1)],
            vec![int(0), int(-1), int(1)],
        ]).unwrap();
        let a = s.form(k1, Space::G, 3);
        let b = s.form(k2, Space::G, 3);
        prop_assert_eq!(pair_with(&a, &b, &m).unwrap(), pair_with(&b, &a, &m).unwrap().scale(&sign(k1 * k2)));
    }

    #[test]
    fn brackets_are_antisymmetric_and_satisfy_jacobi(seed in any::<u64>(), which in 0usize..3) {
        let g = match which {
            0 => LieAlgebra::su2("g"),
            1 => LieAlgebra::u2("g"),
            _ => LieAlgebra::aff1("g"),
        };
        let x = g.random_element(seed, 6);
        let y = g.random_element(seed.wrapping_add(1), 6);
        let z = g.random_element(seed.wrapping_add(2), 6);
        let b = |p: &AlgebraElement, q: &AlgebraElement| g.bracket(p, q).unwrap().coords;
        let neg: Vec<Rational> = b(&y, &x).into_iter().map(|c| -c).collect();
        prop_assert_eq!(b(&x, &y), neg);
        let el = |c: Vec<Rational>| g.element(c).unwrap();
        let j1 = b(&x, &el(b(&y, &z)));
        let j2 = b(&y, &el(b(&z, &x)));
        let j3 = b(&z, &el(b(&x, &y)));
        for i in 0..g.dim() {
            prop_assert_eq!(j1[i].clone() + &j2[i] + &j3[i], int(0));
        }
    }

    #[test]
    fn bianchi_holds_for_random_connections(seed in 0u64..10_000, which in 0usize..3) {
        let m = [instances::su2_peiffer(), instances::abelian_chain(), instances::su2_l_u1()][which].clone();
        let conn = Connection::random(&m, seed, 4, 1).unwrap();
        prop_assert!(m.bianchi_residuals(&conn).unwrap().is_zero());
    }

    #[test]
    fn alpha_after_beta_is_zero(seed in any::<u64>(), k in 0usize..=3) {
        for m in instances::shipped() {
            let mut s = FormSampler::new(seed, 4, 2);
            let c = s.form(k, Space::L, m.dim(Slot::L));
            prop_assert!(m.lift_alpha(&m.lift_beta(&c).unwrap()).unwrap().is_zero(), "{}", m.name);
        }
    }

    #[test]
    fn projected_forms_are_invariant(seed in any::<u64>()) {
        for m in instances::shipped() {
            let Ok(t) = InstanceConfig::from_module(m.clone()).invariant_forms() else { continue };
            let x = m.g.random_element(seed, 5);
            for slot in [Slot::G, Slot::H, Slot::L] {
                let alg = match slot { Slot::G => &m.g, Slot::H => &m.h, Slot::L => &m.l };
                if alg.dim() == 0 {
                    continue;
                }
                let u = alg.random_element(seed.wrapping_add(1), 5);
                let v = alg.random_element(seed.wrapping_add(2), 5);
                let gram = t.gram(slot);
                let lhs = bilinear(gram, &m.act(&x, &u).unwrap(), &v) + bilinear(gram, &u, &m.act(&x, &v).unwrap());
                prop_assert_eq!(lhs, int(0), "{} {:?}", m.name, slot);
            }
        }
    }

    #[test]
    fn polynomial_ring_axioms(a in terms(), b in terms(), c in terms()) {
        let (p, q, r) = (poly(&a), poly(&b), poly(&c));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert!(p.sub(&p).is_zero());
        let leibniz = p.derivative(0).mul(&q).add(&p.mul(&q.derivative(0)));
        prop_assert_eq!(p.mul(&q).derivative(0), leibniz);
    }

    #[test]
    fn finite_inverses_compose_to_identities(pick in any::<prop::sample::Index>()) {
        for f in group::shipped() {
            let squares = f.squares();
            let s = &squares[pick.index(squares.len())];
            prop_assert_eq!(f.square_compose_h(s, &f.square_inverse_h(s)).unwrap(), f.identity_square(s.g1));
            prop_assert_eq!(f.square_compose_v(s, &f.square_inverse_v(s)), f.identity_square(f.g.identity()));
            let cubes = f.cubes();
            let c = &cubes[pick.index(cubes.len())];
            prop_assert_eq!(f.cube_compose_h(c, &f.cube_inverse_h(c)).unwrap(), f.identity_cube(c.left));
        }
    }

    #[test]
    fn form_text_round_trip(seed in any::<u64>(), k in 0usize..=4) {
        let mut s = FormSampler::new(seed, 4, 2);
        let w = s.form(k, Space::H, 3);
        prop_assert_eq!(Form::from_text(&w.to_text()).unwrap(), w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 4, ..ProptestConfig::default() })]

    #[test]
    fn reports_are_deterministic(seed_base in 0u64..1000) {
        let cfg = InstanceConfig::from_module(instances::su2_l_u1());
        let opts = Options { seeds: 2, degree_cap: 1, dim: 4, seed_base, float_sweep: false, timing: false };
        let a = suites::bianchi(&cfg, &opts).unwrap().to_json();
        let b = suites::bianchi(&cfg, &opts).unwrap().to_json();
        prop_assert_eq!(a, b);
    }
}
