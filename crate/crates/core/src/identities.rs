//! Graded identities of the form-level operations: Leibniz rules, Peiffer
//! equivariance on forms, invariance of the pairings, and the pairing
//! identities of `σ̄`, `κ̄`, `η̄ᵢ`, `α*`, `β*`.
//!
//! Every identity is checked on random forms for each tuple of degrees whose
//! sum does not exceed the ambient dimension.

use num_traits::Zero;

use crate::crossed::{Slot, TwoCrossedModule};
use crate::error::Result;
use crate::forms::{pair_with, wedge_matrix, Form, Space};
use crate::invariant::{Adjoints, InvariantForms};
use crate::random::FormSampler;
use crate::scalar::{Rational, Scalar};

/// Identity names in evaluation order.
pub const IDENTITIES: &[&str] = &[
    "ac",
    "aa_plain",
    "bracket_plain_g",
    "bracket_plain_h",
    "bracket_plain_l",
    "aw_g",
    "aw_h",
    "aw_l",
    "bb",
    "abb",
    "bracket_pairing_g",
    "bracket_pairing_h",
    "bracket_pairing_l",
    "action_pairing_h_swap",
    "action_pairing_h_move",
    "action_pairing_l_swap",
    "action_pairing_l_move",
    "sigma_antisymmetry",
    "sigma_pairing",
    "ab1b2",
    "kappa_antisymmetry",
    "kappa_pairing",
    "ac1c2",
    "b1b2c_eta1",
    "b1b2c_eta2",
    "alpha_star_pairing",
    "beta_star_pairing",
    "pairing_symmetry_g",
    "pairing_symmetry_h",
    "pairing_symmetry_l",
];

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Checked { name: &'static str, degrees: Vec<usize>, residual: Rational },
    Skipped { name: &'static str, reason: String },
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Checked { name, .. } | Outcome::Skipped { name, .. } => name,
        }
    }
}

fn sign(e: usize) -> Rational {
    Rational::from_i64(if e % 2 == 0 { 1 } else { -1 })
}

/// All tuples of `n` degrees in `0..=d` with sum at most `d`.
pub fn degree_tuples(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                let used: usize = t.iter().sum();
                (0..=d - used).map(move |k| {
                    let mut t = t.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    out
}

type Body<'a> = Box<dyn Fn(&[Form], &[usize]) -> Result<Form> + 'a>;

struct Identity<'a> {
    name: &'static str,
    spaces: Vec<Slot>,
    body: Body<'a>,
}

/// Reason an identity cannot hold for this instance, if any.
fn precondition(name: &str, m: &TwoCrossedModule, t: &InvariantForms) -> Option<String> {
    let rep = |s: Slot| m.algebra(s).rep().is_none().then(|| format!("{} has no matrix representation", s.label()));
    match name {
        "aa_plain" | "bracket_plain_g" => rep(Slot::G),
        "bracket_plain_h" => rep(Slot::H),
        "bracket_plain_l" => rep(Slot::L),
        "bracket_pairing_h" | "bracket_pairing_l" => {
            let entry = if name.ends_with('h') { "h_bracket" } else { "l_bracket" };
            let inv = t.invariance_residual(m).ok()?;
            (inv.residual(entry).is_some_and(|r| !r.is_zero()))
                .then(|| format!("the form is not invariant under its own bracket ({entry})"))
        }
        _ => None,
    }
}

fn identities<'a>(m: &'a TwoCrossedModule, t: &'a InvariantForms, adj: &'a Adjoints) -> Vec<Identity<'a>> {
    use Slot::{G, H, L};
    let pair = move |a: &Form, b: &Form| -> Result<Form> {
        let Space::Alg(s) = a.space() else { unreachable!("algebra-valued forms only") };
        pair_with(a, b, t.gram(s))
    };
    let plain = move |a: &Form, b: &Form| -> Result<Form> { wedge_matrix(&m.embed(a)?, &m.embed(b)?) };
    let sigma = move |b1: &Form, b2: &Form| b1.wedge_tensor(b2, &adj.sigma, Space::G);
    let kappa = move |c1: &Form, c2: &Form| c1.wedge_tensor(c2, &adj.kappa, Space::G);
    let eta1 = move |c: &Form, b: &Form| c.wedge_tensor(b, &adj.eta1, Space::H);
    let eta2 = move |c: &Form, b: &Form| c.wedge_tensor(b, &adj.eta2, Space::H);
    let id = |name, spaces: &[Slot], body: Body<'a>| Identity { name, spaces: spaces.to_vec(), body };

    let mut out = vec![
        id("ac", &[G, L], Box::new(move |f, _| {
            m.lift_beta(&m.wedge_action(&f[0], &f[1])?)?.sub(&m.wedge_action(&f[0], &m.lift_beta(&f[1])?)?)
        })),
        id("aa_plain", &[G, G], Box::new(move |f, k| {
            m.embed(&m.wedge_action(&f[0], &f[1])?)?
                .sub(&plain(&f[0], &f[1])?)?
                .sub(&plain(&f[1], &f[0])?.scale(&sign(k[0] * k[1] + 1)))
        })),
    ];
    for (name, s) in [("bracket_plain_g", G), ("bracket_plain_h", H), ("bracket_plain_l", L)] {
        out.push(id(name, &[s, s], Box::new(move |f, k| {
            m.embed(&m.wedge_bracket(&f[0], &f[1])?)?
                .sub(&plain(&f[0], &f[1])?)?
                .add(&plain(&f[1], &f[0])?.scale(&sign(k[0] * k[1])))
        })));
    }
    for (name, s) in [("aw_g", G), ("aw_h", H), ("aw_l", L)] {
        out.push(id(name, &[G, s], Box::new(move |f, k| {
            let (a, w) = (&f[0], &f[1]);
            m.wedge_action(a, w)?
                .d()
                .sub(&m.wedge_action(&a.d(), w)?)?
                .sub(&m.wedge_action(a, &w.d())?.scale(&sign(k[0])))
        })));
    }
    out.push(id("bb", &[H, H], Box::new(move |f, k| {
        let (b1, b2) = (&f[0], &f[1]);
        m.wedge_peiffer(b1, b2)?
            .d()
            .sub(&m.wedge_peiffer(&b1.d(), b2)?)?
            .sub(&m.wedge_peiffer(b1, &b2.d())?.scale(&sign(k[0])))
    })));
    out.push(id("abb", &[G, H, H], Box::new(move |f, k| {
        let (a, b1, b2) = (&f[0], &f[1], &f[2]);
        m.wedge_action(a, &m.wedge_peiffer(b1, b2)?)?
            .sub(&m.wedge_peiffer(&m.wedge_action(a, b1)?, b2)?)?
            .sub(&m.wedge_peiffer(b1, &m.wedge_action(a, b2)?)?.scale(&sign(k[0] * k[1])))
    })));
    for (name, s) in [("bracket_pairing_g", G), ("bracket_pairing_h", H), ("bracket_pairing_l", L)] {
        out.push(id(name, &[s, s, s], Box::new(move |f, k| {
            pair(&m.wedge_bracket(&f[0], &f[1])?, &f[2])?
                .sub(&pair(&f[1], &m.wedge_bracket(&f[0], &f[2])?)?.scale(&sign(k[0] * k[1] + 1)))
        })));
    }
    for (swap, mv, s) in [
        ("action_pairing_h_swap", "action_pairing_h_move", H),
        ("action_pairing_l_swap", "action_pairing_l_move", L),
    ] {
        // ⟨W₁, A ▷ W₂⟩ against its two rearrangements
        out.push(id(swap, &[G, s, s], Box::new(move |f, k| {
            let (a, w1, w2) = (&f[0], &f[1], &f[2]);
            let (k, t1, t2) = (k[0], k[1], k[2]);
            pair(w1, &m.wedge_action(a, w2)?)?
                .sub(&pair(w2, &m.wedge_action(a, w1)?)?.scale(&sign(t2 * (k + t1) + k * t1 + 1)))
        })));
        out.push(id(mv, &[G, s, s], Box::new(move |f, k| {
            let (a, w1, w2) = (&f[0], &f[1], &f[2]);
            pair(w1, &m.wedge_action(a, w2)?)?.sub(&pair(&m.wedge_action(a, w1)?, w2)?.scale(&sign(k[0] * k[1] + 1)))
        })));
    }
    out.push(id("sigma_antisymmetry", &[H, H], Box::new(move |f, k| {
        sigma(&f[0], &f[1])?.sub(&sigma(&f[1], &f[0])?.scale(&sign(k[0] * k[1] + 1)))
    })));
    out.push(id("sigma_pairing", &[G, H, H], Box::new(move |f, k| {
        let (a, b1, b2) = (&f[0], &f[1], &f[2]);
        pair(&sigma(b1, b2)?, a)?.sub(&pair(b1, &m.wedge_action(a, b2)?)?.scale(&sign(k[0] * k[2] + 1)))
    })));
    out.push(id("ab1b2", &[G, H, H], Box::new(move |f, k| {
        let (a, b1, b2) = (&f[0], &f[1], &f[2]);
        pair(a, &sigma(b1, b2)?)?.sub(&pair(&m.wedge_action(a, b2)?, b1)?.scale(&sign(k[1] * k[2] + 1)))
    })));
    out.push(id("kappa_antisymmetry", &[L, L], Box::new(move |f, k| {
        kappa(&f[0], &f[1])?.sub(&kappa(&f[1], &f[0])?.scale(&sign(k[0] * k[1] + 1)))
    })));
    out.push(id("kappa_pairing", &[G, L, L], Box::new(move |f, k| {
        let (a, c1, c2) = (&f[0], &f[1], &f[2]);
        pair(&kappa(c1, c2)?, a)?.sub(&pair(c1, &m.wedge_action(a, c2)?)?.scale(&sign(k[0] * k[2] + 1)))
    })));
    out.push(id("ac1c2", &[G, L, L], Box::new(move |f, k| {
        let (a, c1, c2) = (&f[0], &f[1], &f[2]);
        pair(a, &kappa(c1, c2)?)?.sub(&pair(&m.wedge_action(a, c2)?, c1)?.scale(&sign(k[1] * k[2] + 1)))
    })));
    out.push(id("b1b2c_eta1", &[H, H, L], Box::new(move |f, k| {
        let (b1, b2, c) = (&f[0], &f[1], &f[2]);
        let (t1, t2, q) = (k[0], k[1], k[2]);
        pair(&m.wedge_peiffer(b1, b2)?, c)?.sub(&pair(b2, &eta1(c, b1)?)?.scale(&sign(t1 * (t2 + q) + 1)))
    })));
    out.push(id("b1b2c_eta2", &[H, H, L], Box::new(move |f, k| {
        let (b1, b2, c) = (&f[0], &f[1], &f[2]);
        pair(&m.wedge_peiffer(b1, b2)?, c)?.sub(&pair(b1, &eta2(c, b2)?)?.scale(&sign(k[1] * k[2] + 1)))
    })));
    out.push(id("alpha_star_pairing", &[H, G], Box::new(move |f, _| {
        let (b, a) = (&f[0], &f[1]);
        pair(b, &a.apply_matrix(&adj.alpha_star, Space::H)?)?.sub(&pair(&m.lift_alpha(b)?, a)?)
    })));
    out.push(id("beta_star_pairing", &[L, H], Box::new(move |f, _| {
        let (c, b) = (&f[0], &f[1]);
        pair(c, &b.apply_matrix(&adj.beta_star, Space::L)?)?.sub(&pair(&m.lift_beta(c)?, b)?)
    })));
    for (name, s) in [("pairing_symmetry_g", G), ("pairing_symmetry_h", H), ("pairing_symmetry_l", L)] {
        out.push(id(name, &[s, s], Box::new(move |f, k| {
            pair(&f[0], &f[1])?.sub(&pair(&f[1], &f[0])?.scale(&sign(k[0] * k[1])))
        })));
    }
    debug_assert_eq!(out.iter().map(|i| i.name).collect::<Vec<_>>(), IDENTITIES);
    out
}

/// Runs every identity (or the ones named in `only`) on one seed.
pub fn check_identities(
    m: &TwoCrossedModule,
    t: &InvariantForms,
    adj: &Adjoints,
    seed: u64,
    ambient: usize,
    degree_cap: u32,
    only: Option<&[&str]>,
) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for (n, ident) in identities(m, t, adj).into_iter().enumerate() {
        if only.is_some_and(|o| !o.contains(&ident.name)) {
            continue;
        }
        if let Some(reason) = precondition(ident.name, m, t) {
            out.push(Outcome::Skipped { name: ident.name, reason });
            continue;
        }
        let mut s = FormSampler::new(seed.wrapping_mul(1_000_003).wrapping_add(n as u64), ambient, degree_cap);
        for degrees in degree_tuples(ident.spaces.len(), ambient) {
            let forms: Vec<Form> =
                ident.spaces.iter().zip(&degrees).map(|(&sl, &k)| s.form(k, Space::Alg(sl), m.dim(sl))).collect();
            let residual = (ident.body)(&forms, &degrees)?.max_coefficient();
            out.push(Outcome::Checked { name: ident.name, degrees, residual });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::invariant::EtaConvention;

    #[test]
    fn tuples_are_bounded() {
        let t = degree_tuples(3, 4);
        assert_eq!(t.len(), 35);
        assert!(t.iter().all(|v| v.iter().sum::<usize>() <= 4));
    }

    #[test]
    fn all_hold_on_su2_peiffer() {
        let m = instances::su2_peiffer();
        let t = InvariantForms::identity(&m);
        let adj = t.adjoints(&m, EtaConvention::AsPrinted).unwrap();
        for o in check_identities(&m, &t, &adj, 1, 4, 2, None).unwrap() {
            match o {
                Outcome::Checked { name, degrees, residual } => assert!(residual.is_zero(), "{name} {degrees:?}"),
                Outcome::Skipped { name, reason } => panic!("{name} skipped: {reason}"),
            }
        }
    }

    #[test]
    fn a_wrong_sign_is_caught() {
        // ⟨A, A'⟩ with the symmetric sign dropped fails for odd-odd degrees
        let m = instances::su2_crossed();
        let t = InvariantForms::identity(&m);
        let mut s = FormSampler::new(3, 4, 2);
        let (a, b) = (s.form(1, Space::G, 3), s.form(1, Space::G, 3));
        let lhs = pair_with(&a, &b, t.gram(Slot::G)).unwrap();
        let rhs = pair_with(&b, &a, t.gram(Slot::G)).unwrap();
        assert!(!lhs.sub(&rhs).unwrap().is_zero());
        assert!(lhs.add(&rhs).unwrap().is_zero());
    }
}
