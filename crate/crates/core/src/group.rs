//! Finite 2-crossed modules of groups, their squares and cubes, and
//! exhaustive checks of the composition laws.

use std::collections::VecDeque;

use crate::crossed::AxiomReport;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// A finite group given by its multiplication table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let name = name.into();
        let n = table.len();
        if n == 0 {
            return Err(Error::Construction(format!("group {name} has no elements")));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Construction(format!("group {name}: table must be {n}×{n} with entries below {n}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::Construction(format!("group {name} has no identity")))?;
        let mut inverses = vec![0; n];
        for (x, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::Construction(format!("group {name}: element {} has no inverse", x + 1)))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Construction(format!(
                            "group {name} is not associative at ({}, {}, {})",
                            a + 1,
                            b + 1,
                            c + 1
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { name, table, identity, inverses })
    }

    pub fn trivial() -> Self {
        Self::new("1", vec![vec![0]]).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(format!("Z{n}"), table).expect("cyclic group")
    }

    /// Permutations of three points in lexicographic order, composed as
    /// `(p q)(i) = p(q(i))`.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| index([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect();
        Self::new("S3", table).expect("S3")
    }

    /// Direct product; `(a, b)` has index `a * |rhs| + b`.
    pub fn product(&self, rhs: &FiniteGroup) -> Self {
        let (n, m) = (self.order(), rhs.order());
        let table = (0..n * m)
            .map(|x| (0..n * m).map(|y| self.mul(x / m, y / m) * m + rhs.mul(x % m, y % m)).collect())
            .collect();
        Self::new(format!("{}x{}", self.name, rhs.name), table).expect("product")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for x in 0..self.order() {
            if !span.contains(&x) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        let mut out = vec![self.identity];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out
    }

    /// Every homomorphism into `target`, as image tables.
    pub fn homomorphisms_to(&self, target: &FiniteGroup) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        loop {
            if let Some(map) = self.extend(&gens, &choice, target) {
                out.push(map);
            }
            let mut pos = 0;
            while pos < choice.len() {
                choice[pos] += 1;
                if choice[pos] < target.order() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == choice.len() {
                break;
            }
        }
        out
    }

    fn extend(&self, gens: &[usize], images: &[usize], target: &FiniteGroup) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order()];
        map[self.identity] = target.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let v = target.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = v;
                    queue.push_back(y);
                } else if map[y] != v {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Automorphisms as permutation tables, and the group they form under
    /// composition (`(φ ψ)(x) = φ(ψ(x))`).
    pub fn automorphism_group(&self) -> (FiniteGroup, Vec<Vec<usize>>) {
        let auts: Vec<Vec<usize>> = self
            .homomorphisms_to(self)
            .into_iter()
            .filter(|m| {
                let mut seen = vec![false; m.len()];
                m.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
            })
            .collect();
        let index = |p: &Vec<usize>| auts.iter().position(|q| q == p).expect("closed under composition");
        let table = auts
            .iter()
            .map(|p| auts.iter().map(|q| index(&q.iter().map(|&x| p[x]).collect())).collect())
            .collect();
        (FiniteGroup::new(format!("Aut({})", self.name), table).expect("automorphism group"), auts)
    }
}

/// `L → H → G` with actions of `G` on all three and a Peiffer lifting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTwoCrossedGroupModule {
    pub name: String,
    pub l: FiniteGroup,
    pub h: FiniteGroup,
    pub g: FiniteGroup,
    /// `beta[l]` in `H`.
    pub beta: Vec<usize>,
    /// `alpha[h]` in `G`.
    pub alpha: Vec<usize>,
    /// `act_g[g][x] = g ▷ x`; must be conjugation.
    pub act_g: Vec<Vec<usize>>,
    pub act_h: Vec<Vec<usize>>,
    pub act_l: Vec<Vec<usize>>,
    /// `peiffer[h1][h2] = {h1, h2}` in `L`.
    pub peiffer: Vec<Vec<usize>>,
}

/// `α(h) = g₂ g₁⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Square {
    pub g1: usize,
    pub g2: usize,
    pub h: usize,
}

/// Two squares and `l` with `β(l) = h₂ h₁⁻¹`, where `h₁`, `h₂` are the
/// squares' `H` labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cube {
    pub left: Square,
    pub right: Square,
    pub l: usize,
}

impl Cube {
    pub fn h1(&self) -> usize {
        self.left.h
    }

    pub fn h2(&self) -> usize {
        self.right.h
    }
}

fn count(report: &mut AxiomReport, name: &str, failures: usize) {
    report.record(name, Rational::from_i64(failures as i64));
}

impl FiniteTwoCrossedGroupModule {
    /// Builds a module and rejects it unless every axiom holds.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        l: FiniteGroup,
        h: FiniteGroup,
        g: FiniteGroup,
        beta: Vec<usize>,
        alpha: Vec<usize>,
        act_h: Vec<Vec<usize>>,
        act_l: Vec<Vec<usize>>,
        peiffer: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let act_g = conjugation(&g);
        let m = Self::unchecked(name.into(), l, h, g, beta, alpha, act_g, act_h, act_l, peiffer)?;
        let report = m.check();
        if !report.passed() {
            return Err(Error::Construction(format!("{}: failing axioms {:?}", m.name, report.failures())));
        }
        Ok(m)
    }

    /// Shape-checks the tables only.
    #[allow(clippy::too_many_arguments)]
    pub fn unchecked(
        name: String,
        l: FiniteGroup,
        h: FiniteGroup,
        g: FiniteGroup,
        beta: Vec<usize>,
        alpha: Vec<usize>,
        act_g: Vec<Vec<usize>>,
        act_h: Vec<Vec<usize>>,
        act_l: Vec<Vec<usize>>,
        peiffer: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let (nl, nh, ng) = (l.order(), h.order(), g.order());
        let table_ok = |t: &Vec<Vec<usize>>, rows: usize, cols: usize, bound: usize| {
            t.len() == rows && t.iter().all(|r| r.len() == cols && r.iter().all(|&x| x < bound))
        };
        let checks = [
            ("beta", beta.len() == nl && beta.iter().all(|&x| x < nh)),
            ("alpha", alpha.len() == nh && alpha.iter().all(|&x| x < ng)),
            ("act_g", table_ok(&act_g, ng, ng, ng)),
            ("act_h", table_ok(&act_h, ng, nh, nh)),
            ("act_l", table_ok(&act_l, ng, nl, nl)),
            ("peiffer", table_ok(&peiffer, nh, nh, nl)),
        ];
        if let Some((field, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Err(Error::Schema { field: field.to_string(), message: "table has the wrong shape".into() });
        }
        Ok(FiniteTwoCrossedGroupModule { name, l, h, g, beta, alpha, act_g, act_h, act_l, peiffer })
    }

    /// `h ▷′ l = l {β(l)⁻¹, h}`.
    pub fn prime_act(&self, h: usize, l: usize) -> usize {
        let b = self.h.inv(self.beta[l]);
        self.l.mul(l, self.peiffer[b][h])
    }

    /// Each entry counts the violating tuples.
    pub fn check(&self) -> AxiomReport {
        let (l, h, g) = (&self.l, &self.h, &self.g);
        let mut rep = AxiomReport::default();
        let hs = 0..h.order();
        let pairs = |n: usize| (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));

        count(&mut rep, "beta_hom", pairs(l.order()).filter(|&(a, b)| self.beta[l.mul(a, b)] != h.mul(self.beta[a], self.beta[b])).count());
        count(&mut rep, "alpha_hom", pairs(h.order()).filter(|&(a, b)| self.alpha[h.mul(a, b)] != g.mul(self.alpha[a], self.alpha[b])).count());
        count(&mut rep, "alpha_beta_trivial", (0..l.order()).filter(|&x| self.alpha[self.beta[x]] != g.identity()).count());
        count(&mut rep, "g_conjugation", pairs(g.order()).filter(|&(a, x)| self.act_g[a][x] != g.mul(g.mul(a, x), g.inv(a))).count());

        for (label, grp, act) in [("h", h, &self.act_h), ("l", l, &self.act_l)] {
            let n = grp.order();
            let mut auto = 0;
            let mut action = 0;
            for a in 0..g.order() {
                for x in 0..n {
                    for y in 0..n {
                        auto += usize::from(act[a][grp.mul(x, y)] != grp.mul(act[a][x], act[a][y]));
                    }
                }
                for b in 0..g.order() {
                    for x in 0..n {
                        action += usize::from(act[g.mul(a, b)][x] != act[a][act[b][x]]);
                    }
                }
            }
            action += (0..n).filter(|&x| act[g.identity()][x] != x).count();
            count(&mut rep, &format!("act_{label}_automorphism"), auto);
            count(&mut rep, &format!("act_{label}_action"), action);
        }

        let mut eq = (0, 0, 0);
        for a in 0..g.order() {
            for y in hs.clone() {
                eq.0 += usize::from(self.alpha[self.act_h[a][y]] != self.act_g[a][self.alpha[y]]);
                for y2 in hs.clone() {
                    eq.2 += usize::from(self.act_l[a][self.peiffer[y][y2]] != self.peiffer[self.act_h[a][y]][self.act_h[a][y2]]);
                }
            }
            for z in 0..l.order() {
                eq.1 += usize::from(self.beta[self.act_l[a][z]] != self.act_h[a][self.beta[z]]);
            }
        }
        count(&mut rep, "alpha_equivariant", eq.0);
        count(&mut rep, "beta_equivariant", eq.1);
        count(&mut rep, "peiffer_equivariant", eq.2);

        // (H, G; α, ▷) is itself a crossed module
        count(
            &mut rep,
            "hg_peiffer_identity",
            pairs(h.order()).filter(|&(a, b)| self.act_h[self.alpha[a]][b] != h.mul(h.mul(a, b), h.inv(a))).count(),
        );
        // β{h₁,h₂} = h₁ h₂ h₁⁻¹ (α(h₁) ▷ h₂⁻¹)
        count(
            &mut rep,
            "peiffer_image",
            pairs(h.order())
                .filter(|&(a, b)| {
                    let rhs = h.mul(h.mul(h.mul(a, b), h.inv(a)), self.act_h[self.alpha[a]][h.inv(b)]);
                    self.beta[self.peiffer[a][b]] != rhs
                })
                .count(),
        );
        // {β l₁, β l₂} = l₁ l₂ l₁⁻¹ l₂⁻¹
        count(
            &mut rep,
            "peiffer_commutator",
            pairs(l.order())
                .filter(|&(a, b)| self.peiffer[self.beta[a]][self.beta[b]] != l.mul(l.mul(a, b), l.mul(l.inv(a), l.inv(b))))
                .count(),
        );
        rep
    }

    pub fn is_square(&self, s: &Square) -> bool {
        s.g1 < self.g.order()
            && s.g2 < self.g.order()
            && s.h < self.h.order()
            && self.alpha[s.h] == self.g.mul(s.g2, self.g.inv(s.g1))
    }

    pub fn is_cube(&self, c: &Cube) -> bool {
        self.is_square(&c.left)
            && self.is_square(&c.right)
            && c.l < self.l.order()
            && self.beta[c.l] == self.h.mul(c.h2(), self.h.inv(c.h1()))
    }

    pub fn square(&self, g1: usize, h: usize) -> Square {
        Square { g1, g2: self.g.mul(self.alpha[h], g1), h }
    }

    pub fn identity_square(&self, g: usize) -> Square {
        Square { g1: g, g2: g, h: self.h.identity() }
    }

    pub fn identity_cube(&self, s: Square) -> Cube {
        Cube { left: s, right: s, l: self.l.identity() }
    }

    pub fn squares(&self) -> Vec<Square> {
        (0..self.g.order()).flat_map(|g1| (0..self.h.order()).map(move |h| (g1, h))).map(|(g1, h)| self.square(g1, h)).collect()
    }

    pub fn cubes(&self) -> Vec<Cube> {
        let squares = self.squares();
        let mut out = Vec::new();
        for left in &squares {
            for l in 0..self.l.order() {
                let h2 = self.h.mul(self.beta[l], left.h);
                for g3 in 0..self.g.order() {
                    out.push(Cube { left: *left, right: self.square(g3, h2), l });
                }
            }
        }
        out
    }

    /// `h₁ ∘ h₂ = h₂ h₁`, along the shared edge `s1.g2 = s2.g1`.
    pub fn square_compose_h(&self, s1: &Square, s2: &Square) -> Result<Square> {
        if s1.g2 != s2.g1 {
            return Err(Error::Composition(format!(
                "squares do not share an edge: {} vs {}",
                s1.g2 + 1,
                s2.g1 + 1
            )));
        }
        Ok(Square { g1: s1.g1, g2: s2.g2, h: self.h.mul(s2.h, s1.h) })
    }

    /// `h₁ ⋆ h₂ = h₁ (g₁ ▷ h₂)` with boundaries `g₁g₃`, `g₂g₄`.
    pub fn square_compose_v(&self, s1: &Square, s2: &Square) -> Square {
        Square {
            g1: self.g.mul(s1.g1, s2.g1),
            g2: self.g.mul(s1.g2, s2.g2),
            h: self.h.mul(s1.h, self.act_h[s1.g1][s2.h]),
        }
    }

    pub fn square_inverse_h(&self, s: &Square) -> Square {
        Square { g1: s.g2, g2: s.g1, h: self.h.inv(s.h) }
    }

    /// `h⁻ᵛ = g₁⁻¹ ▷ h⁻¹`.
    pub fn square_inverse_v(&self, s: &Square) -> Square {
        let gi = self.g.inv(s.g1);
        Square { g1: gi, g2: self.g.inv(s.g2), h: self.act_h[gi][self.h.inv(s.h)] }
    }

    /// `l ∘ l′ = l′ l` along the shared square `c1.right = c2.left`.
    pub fn cube_compose_h(&self, c1: &Cube, c2: &Cube) -> Result<Cube> {
        if c1.right != c2.left {
            return Err(Error::Composition("cubes do not share a face".into()));
        }
        Ok(Cube { left: c1.left, right: c2.right, l: self.l.mul(c2.l, c1.l) })
    }

    /// `l ⋆ l′ = l (h₁ ▷′ l′)`; the bounding squares compose as `h₃ ∘ h₁ = h₁ h₃`,
    /// so `c2`'s squares must end where `c1`'s begin.
    pub fn cube_compose_v(&self, c1: &Cube, c2: &Cube) -> Result<Cube> {
        let left = self.square_compose_h(&c2.left, &c1.left)?;
        let right = self.square_compose_h(&c2.right, &c1.right)?;
        Ok(Cube { left, right, l: self.l.mul(c1.l, self.prime_act(c1.h1(), c2.l)) })
    }

    pub fn cube_inverse_h(&self, c: &Cube) -> Cube {
        Cube { left: c.right, right: c.left, l: self.l.inv(c.l) }
    }

    /// `l⁻ᵛ = h₁⁻¹ ▷′ l⁻¹`, bounded by the horizontal inverses of both squares.
    pub fn cube_inverse_v(&self, c: &Cube) -> Cube {
        Cube {
            left: self.square_inverse_h(&c.left),
            right: self.square_inverse_h(&c.right),
            l: self.prime_act(self.h.inv(c.h1()), self.l.inv(c.l)),
        }
    }

    /// Multiplication table of `G ⋉ H` on pairs `(g, h)` indexed `g |H| + h`.
    pub fn semidirect_table(&self) -> Vec<Vec<usize>> {
        let (ng, nh) = (self.g.order(), self.h.order());
        (0..ng * nh)
            .map(|x| {
                let (g1, h1) = (x / nh, x % nh);
                (0..ng * nh)
                    .map(|y| {
                        let (g2, h2) = (y / nh, y % nh);
                        self.g.mul(g1, g2) * nh + self.h.mul(h1, self.act_h[g1][h2])
                    })
                    .collect()
            })
            .collect()
    }

    /// Exhaustive check of every composition and inverse law; each entry
    /// counts the violating cases.
    pub fn surface_report(&self) -> AxiomReport {
        let (g, h, l) = (&self.g, &self.h, &self.l);
        let squares = self.squares();
        let cubes = self.cubes();
        let mut rep = AxiomReport::default();

        let (mut hb, mut hassoc, mut vb, mut semi, mut hinv, mut vinv) = (0, 0, 0, 0, 0, 0);
        let semidirect = self.semidirect_table();
        let key = |s: &Square| s.g1 * h.order() + s.h;
        for s1 in &squares {
            let si = self.square_inverse_h(s1);
            let sv = self.square_inverse_v(s1);
            hinv += usize::from(self.alpha[si.h] != g.mul(s1.g1, g.inv(s1.g2)));
            hinv += usize::from(self.square_compose_h(s1, &si).ok() != Some(self.identity_square(s1.g1)));
            hinv += usize::from(self.square_compose_h(&si, s1).ok() != Some(self.identity_square(s1.g2)));
            vinv += usize::from(self.alpha[sv.h] != g.mul(g.inv(s1.g2), s1.g1));
            let e = self.identity_square(g.identity());
            vinv += usize::from(self.square_compose_v(s1, &sv) != e || self.square_compose_v(&sv, s1) != e);
            for s2 in &squares {
                if let Ok(c) = self.square_compose_h(s1, s2) {
                    // α(h₁∘h₂) = g₃ g₁⁻¹
                    hb += usize::from(!self.is_square(&c) || self.alpha[c.h] != g.mul(s2.g2, g.inv(s1.g1)));
                    for s3 in squares.iter().filter(|s3| s3.g1 == s2.g2) {
                        let left = self.square_compose_h(&c, s3).expect("composable");
                        let right = self.square_compose_h(s1, &self.square_compose_h(s2, s3).expect("composable"));
                        hassoc += usize::from(Ok(left) != right);
                    }
                }
                let v = self.square_compose_v(s1, s2);
                // α(h₁⋆h₂) = g₂ g₄ g₃⁻¹ g₁⁻¹
                let expected = g.mul(g.mul(s1.g2, s2.g2), g.mul(g.inv(s2.g1), g.inv(s1.g1)));
                vb += usize::from(!self.is_square(&v) || self.alpha[v.h] != expected);
                semi += usize::from(key(&v) != semidirect[key(s1)][key(s2)]);
            }
        }
        count(&mut rep, "square_h_boundary", hb);
        count(&mut rep, "square_h_associative", hassoc);
        count(&mut rep, "square_h_inverse", hinv);
        count(&mut rep, "square_v_boundary", vb);
        count(&mut rep, "square_v_semidirect", semi);
        count(&mut rep, "square_v_inverse", vinv);

        let (mut chb, mut cvb, mut chinv, mut cvinv) = (0, 0, 0, 0);
        for c1 in &cubes {
            let ci = self.cube_inverse_h(c1);
            chinv += usize::from(!self.is_cube(&ci) || self.beta[ci.l] != h.mul(c1.h1(), h.inv(c1.h2())));
            chinv += usize::from(self.cube_compose_h(c1, &ci).ok() != Some(self.identity_cube(c1.left)));
            chinv += usize::from(self.cube_compose_h(&ci, c1).ok() != Some(self.identity_cube(c1.right)));
            let cv = self.cube_inverse_v(c1);
            cvinv += usize::from(!self.is_cube(&cv) || self.beta[cv.l] != h.mul(h.inv(c1.h2()), c1.h1()));
            let up = self.cube_compose_v(c1, &cv).ok();
            let down = self.cube_compose_v(&cv, c1).ok();
            cvinv += usize::from(up.map(|c| c.l) != Some(l.identity()) || up.map(|c| c.left.h) != Some(h.identity()));
            cvinv += usize::from(down.map(|c| c.l) != Some(l.identity()) || down.map(|c| c.left.h) != Some(h.identity()));
            for c2 in &cubes {
                if let Ok(c) = self.cube_compose_h(c1, c2) {
                    // β(l∘l′) = h₃ h₁⁻¹
                    chb += usize::from(!self.is_cube(&c) || self.beta[c.l] != h.mul(c2.h2(), h.inv(c1.h1())));
                }
                if let Ok(c) = self.cube_compose_v(c1, c2) {
                    // β(l⋆l′) = h₂ h₄ h₃⁻¹ h₁⁻¹
                    let expected = h.mul(h.mul(c1.h2(), c2.h2()), h.mul(h.inv(c2.h1()), h.inv(c1.h1())));
                    cvb += usize::from(!self.is_cube(&c) || self.beta[c.l] != expected);
                }
            }
        }
        count(&mut rep, "cube_h_boundary", chb);
        count(&mut rep, "cube_h_inverse", chinv);
        count(&mut rep, "cube_v_boundary", cvb);
        count(&mut rep, "cube_v_inverse", cvinv);
        rep
    }
}

/// `act[g][x] = g x g⁻¹`.
pub fn conjugation(g: &FiniteGroup) -> Vec<Vec<usize>> {
    (0..g.order()).map(|a| (0..g.order()).map(|x| g.mul(g.mul(a, x), g.inv(a))).collect()).collect()
}

fn trivial_action(g: &FiniteGroup, n: usize) -> Vec<Vec<usize>> {
    vec![(0..n).collect(); g.order()]
}

fn trivial_lifting(h: &FiniteGroup, l: &FiniteGroup) -> Vec<Vec<usize>> {
    vec![vec![l.identity(); h.order()]; h.order()]
}

/// All groups trivial.
pub fn trivial_instance() -> FiniteTwoCrossedGroupModule {
    let t = FiniteGroup::trivial();
    FiniteTwoCrossedGroupModule::new("trivial", t.clone(), t.clone(), t, vec![0], vec![0], vec![vec![0]], vec![vec![0]], vec![vec![0]])
        .expect("trivial instance")
}

/// `Z2 → Z4 → Z2`, `1 ↦ 2` and reduction mod 2, trivial actions and lifting.
pub fn cyclic_chain() -> FiniteTwoCrossedGroupModule {
    let (l, h, g) = (FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::cyclic(2));
    let act_h = trivial_action(&g, 4);
    let act_l = trivial_action(&g, 2);
    let peiffer = trivial_lifting(&h, &l);
    FiniteTwoCrossedGroupModule::new("cyclic_chain", l, h, g, vec![0, 2], vec![0, 1, 0, 1], act_h, act_l, peiffer)
        .expect("cyclic chain")
}

/// Small groups tried by [`search_nonabelian`], in order.
pub fn search_groups() -> Vec<FiniteGroup> {
    let (z2, z3) = (FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
    vec![
        z2.clone(),
        z3,
        z2.product(&z2),
        FiniteGroup::cyclic(4),
        FiniteGroup::symmetric3(),
        FiniteGroup::cyclic(6),
        FiniteGroup::symmetric3().product(&z2),
    ]
}

fn action_tables(g: &FiniteGroup, target: &FiniteGroup) -> Vec<Vec<Vec<usize>>> {
    let (aut, perms) = target.automorphism_group();
    g.homomorphisms_to(&aut).into_iter().map(|hom| hom.into_iter().map(|a| perms[a].clone()).collect()).collect()
}

/// First module with trivial lifting, non-abelian `G` and nontrivial `α`,
/// `β`, scanning `G`, `H`, `L` over `groups` in order, then homomorphisms
/// and actions in enumeration order.
pub fn search_nonabelian(groups: &[FiniteGroup]) -> Option<FiniteTwoCrossedGroupModule> {
    for g in groups.iter().filter(|g| !g.is_abelian()) {
        for h in groups {
            let alphas: Vec<_> =
                h.homomorphisms_to(g).into_iter().filter(|a| a.iter().any(|&x| x != g.identity())).collect();
            if alphas.is_empty() {
                continue;
            }
            let acts_h = action_tables(g, h);
            for l in groups {
                let betas: Vec<_> =
                    l.homomorphisms_to(h).into_iter().filter(|b| b.iter().any(|&x| x != h.identity())).collect();
                let acts_l = action_tables(g, l);
                for alpha in &alphas {
                    for act_h in &acts_h {
                        for beta in &betas {
                            for act_l in &acts_l {
                                let m = FiniteTwoCrossedGroupModule::unchecked(
                                    format!("{}_{}_{}", g.name(), h.name(), l.name()),
                                    l.clone(),
                                    h.clone(),
                                    g.clone(),
                                    beta.clone(),
                                    alpha.clone(),
                                    conjugation(g),
                                    act_h.clone(),
                                    act_l.clone(),
                                    trivial_lifting(h, l),
                                )
                                .expect("shapes");
                                if m.check().passed() {
                                    return Some(m);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// `Z2 → Z6 → S3`: `β(1) = 3`, `α` onto the rotations `A3`, transpositions
/// acting on `Z6` by inversion, trivial lifting. The first hit of
/// [`search_nonabelian`] on [`search_groups`].
pub fn s3_z6_chain() -> FiniteTwoCrossedGroupModule {
    let (l, h, g) = (FiniteGroup::cyclic(2), FiniteGroup::cyclic(6), FiniteGroup::symmetric3());
    // S3 in lexicographic order: 0 = id, 1 = (12), 2 = (01), 3 = (012), 4 = (021), 5 = (02)
    let rotation = [0, 3, 4];
    let alpha = (0..6).map(|x| rotation[x % 3]).collect();
    let odd = [false, true, true, false, false, true];
    let act_h = odd.iter().map(|&o| (0..6).map(|x| if o { (6 - x) % 6 } else { x }).collect()).collect();
    let act_l = trivial_action(&g, 2);
    let peiffer = trivial_lifting(&h, &l);
    FiniteTwoCrossedGroupModule::new("s3_z6_chain", l, h, g, vec![0, 3], alpha, act_h, act_l, peiffer)
        .expect("S3 chain")
}

pub fn shipped() -> Vec<FiniteTwoCrossedGroupModule> {
    vec![trivial_instance(), cyclic_chain(), s3_z6_chain()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_nonabelian_group() {
        let s3 = FiniteGroup::symmetric3();
        assert!(!s3.is_abelian());
        assert_eq!(s3.generators().len(), 2);
        assert_eq!(s3.automorphism_group().1.len(), 6);
        assert_eq!(FiniteGroup::cyclic(6).automorphism_group().1.len(), 2);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::new("bad", vec![vec![0, 1], vec![0, 1]]).is_err());
    }

    #[test]
    fn shipped_pass_everything() {
        for m in shipped() {
            assert!(m.check().passed(), "{}", m.name);
            let rep = m.surface_report();
            assert!(rep.passed(), "{}: {:?}", m.name, rep.failures());
        }
    }

    #[test]
    fn composition_needs_shared_edge() {
        let m = s3_z6_chain();
        let s1 = m.square(0, 1);
        let s2 = m.square(1, 0);
        assert!(matches!(m.square_compose_h(&s1, &s2), Err(Error::Composition(_))));
    }

    #[test]
    fn search_finds_shipped_instance() {
        let found = search_nonabelian(&search_groups()).expect("an instance");
        let shipped = s3_z6_chain();
        assert_eq!((found.g.name(), found.h.name(), found.l.name()), ("S3", "Z6", "Z2"));
        assert_eq!(found.alpha, shipped.alpha);
        assert_eq!(found.act_h, shipped.act_h);
        assert_eq!(found.beta, shipped.beta);
    }

    #[test]
    fn broken_equivariance_is_detected() {
        let mut m = s3_z6_chain();
        m.act_h = trivial_action(&m.g, 6);
        assert!(!m.check().passed());
    }
}
