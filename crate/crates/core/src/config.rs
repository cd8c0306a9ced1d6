//! TOML instance files.
//!
//! Indices are 1-based and every rational is a string `"p"` or `"p/q"`.
//! Sparse tensors are lists of `[i, j, k, "c"]` records; structure constants
//! are given for `i < j` only and antisymmetrized on load.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{LieAlgebra, MatrixRep};
use crate::crossed::{Slot, TwoCrossedModule};
use crate::error::{Error, Result};
use crate::group::{conjugation, FiniteGroup, FiniteTwoCrossedGroupModule};
use crate::invariant::InvariantForms;
use crate::linalg::{Matrix, Tensor3};
use crate::reduce::Reduction;
use crate::scalar::{format_rational, parse_rational, Rational};

pub const DEFAULT_DIM: usize = 4;
pub const DEFAULT_SEEDS: u64 = 50;
pub const DEFAULT_DEGREE_CAP: u32 = 3;

type Entry = (usize, usize, usize, String);

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    name: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    wedge_substitution: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    disabled_axioms: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    algebras: Option<RawAlgebras>,
    #[serde(skip_serializing_if = "Option::is_none")]
    maps: Option<RawMaps>,
    #[serde(skip_serializing_if = "Option::is_none")]
    actions: Option<RawActions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariant: Option<RawInvariant>,
    #[serde(default, skip_serializing_if = "RawRun::is_empty")]
    run: RawRun,
    #[serde(skip_serializing_if = "Option::is_none")]
    finite: Option<RawFinite>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebras {
    g: RawAlgebra,
    h: RawAlgebra,
    l: RawAlgebra,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    structure: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rep: Option<RawRep>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawRep {
    size: usize,
    matrices: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawMaps {
    alpha: Vec<Vec<String>>,
    beta: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    peiffer: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha_right_inverse: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta_right_inverse: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawActions {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    h: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    l: Vec<Entry>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawInvariant {
    #[serde(default)]
    mode: InvariantMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    l: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InvariantMode {
    /// The Gram matrices are used as given.
    #[default]
    Explicit,
    /// The Gram matrices are seeds projected onto the invariant subspace.
    Project,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawRun {
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seeds: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree_cap: Option<u32>,
    #[serde(default, skip_serializing_if = "is_zero")]
    seed_base: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    reduction: Option<String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawFinite {
    l: Vec<Vec<usize>>,
    h: Vec<Vec<usize>>,
    g: Vec<Vec<usize>>,
    beta: Vec<usize>,
    alpha: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    act_g: Option<Vec<Vec<usize>>>,
    act_h: Vec<Vec<usize>>,
    act_l: Vec<Vec<usize>>,
    peiffer: Vec<Vec<usize>>,
}

/// Run parameters; command-line flags take precedence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub dim: usize,
    pub seeds: u64,
    pub degree_cap: u32,
    pub seed_base: u64,
    pub reduction: Option<Reduction>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { dim: DEFAULT_DIM, seeds: DEFAULT_SEEDS, degree_cap: DEFAULT_DEGREE_CAP, seed_base: 0, reduction: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum InvariantSpec {
    /// No table: identity seeds, projected.
    Default,
    Explicit([Matrix; 3]),
    Project([Matrix; 3]),
}

/// A validated instance file.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceConfig {
    pub name: String,
    pub module: Option<TwoCrossedModule>,
    pub invariant: InvariantSpec,
    pub finite: Option<FiniteTwoCrossedGroupModule>,
    pub run: RunConfig,
}

fn schema(field: &str, message: impl Into<String>) -> Error {
    Error::Schema { field: field.into(), message: message.into() }
}

fn rational(field: &str, s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|_| schema(field, format!("`{s}` is not a rational of the form p or p/q")))
}

fn matrix(field: &str, rows: &[Vec<String>], shape: (usize, usize)) -> Result<Matrix> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(schema(field, format!("expected a {}×{} matrix", shape.0, shape.1)));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| rational(field, s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if shape.0 == 0 {
        return Ok(Matrix::zeros(0, shape.1));
    }
    Matrix::from_rows(parsed)
}

fn sparse(field: &str, entries: &[Entry], shape: (usize, usize, usize), antisymmetric: bool) -> Result<Tensor3> {
    let mut t = Tensor3::zeros(shape.0, shape.1, shape.2);
    for (n, (i, j, k, c)) in entries.iter().enumerate() {
        let loc = format!("{field}[{}]", n + 1);
        if *i == 0 || *j == 0 || *k == 0 || *i > shape.0 || *j > shape.1 || *k > shape.2 {
            return Err(schema(&loc, format!("indices must lie in 1..={} × 1..={} × 1..={}", shape.0, shape.1, shape.2)));
        }
        let c = rational(&loc, c)?;
        if antisymmetric {
            if i >= j {
                return Err(schema(&loc, "structure constants are listed with i < j"));
            }
            t.add_to(j - 1, i - 1, k - 1, &-c.clone());
        }
        t.add_to(i - 1, j - 1, k - 1, &c);
    }
    Ok(t)
}

fn algebra(slot: &str, raw: &RawAlgebra) -> Result<LieAlgebra> {
    let n = raw.dim;
    let c = sparse(&format!("algebras.{slot}.structure"), &raw.structure, (n, n, n), true)?;
    let alg = LieAlgebra::new(slot, c)?;
    match &raw.rep {
        None => Ok(alg),
        Some(rep) => {
            let field = format!("algebras.{slot}.rep");
            if rep.matrices.len() != n {
                return Err(schema(&field, format!("expected {n} matrices")));
            }
            let ms = rep
                .matrices
                .iter()
                .map(|m| matrix(&field, m, (rep.size, rep.size)))
                .collect::<Result<Vec<_>>>()?;
            alg.with_rep(MatrixRep::new(rep.size, ms)?).map_err(|e| schema(&field, e.to_string()))
        }
    }
}

fn to_zero_based(field: &str, v: &[usize], bound: usize) -> Result<Vec<usize>> {
    v.iter()
        .map(|&x| {
            if x == 0 || x > bound {
                Err(schema(field, format!("entries must lie in 1..={bound}")))
            } else {
                Ok(x - 1)
            }
        })
        .collect()
}

fn table(field: &str, t: &[Vec<usize>], bound: usize) -> Result<Vec<Vec<usize>>> {
    t.iter().map(|r| to_zero_based(field, r, bound)).collect()
}

fn finite(name: &str, raw: &RawFinite) -> Result<FiniteTwoCrossedGroupModule> {
    let group = |field: &str, t: &[Vec<usize>]| -> Result<FiniteGroup> {
        let n = t.len();
        FiniteGroup::new(field, table(&format!("finite.{field}"), t, n)?).map_err(|e| schema(&format!("finite.{field}"), e.to_string()))
    };
    let (l, h, g) = (group("l", &raw.l)?, group("h", &raw.h)?, group("g", &raw.g)?);
    let act_g = match &raw.act_g {
        Some(t) => table("finite.act_g", t, g.order())?,
        None => conjugation(&g),
    };
    FiniteTwoCrossedGroupModule::unchecked(
        name.into(),
        l.clone(),
        h.clone(),
        g.clone(),
        to_zero_based("finite.beta", &raw.beta, h.order())?,
        to_zero_based("finite.alpha", &raw.alpha, g.order())?,
        act_g,
        table("finite.act_h", &raw.act_h, h.order())?,
        table("finite.act_l", &raw.act_l, l.order())?,
        table("finite.peiffer", &raw.peiffer, l.order())?,
    )
    .map_err(|e| match e {
        Error::Schema { field, message } => schema(&format!("finite.{field}"), message),
        other => other,
    })
}

fn toml_error(e: toml::de::Error, text: &str) -> Error {
    let msg = e.message().to_string();
    if let Some(rest) = msg.strip_prefix("missing field `") {
        let field = rest.split('`').next().unwrap_or(rest);
        return schema(field, "required field is missing");
    }
    if let Some(rest) = msg.strip_prefix("unknown field `") {
        let field = rest.split('`').next().unwrap_or(rest);
        return schema(field, "unknown field");
    }
    let location = match e.span() {
        Some(span) => format!("line {}", text[..span.start.min(text.len())].matches('\n').count() + 1),
        None => "document".into(),
    };
    Error::Parse { location, message: msg }
}

fn is_zero(v: &u64) -> bool {
    *v == 0
}

impl RawRun {
    fn is_empty(&self) -> bool {
        self.dim.is_none() && self.seeds.is_none() && self.degree_cap.is_none() && self.seed_base == 0 && self.reduction.is_none()
    }
}

fn raw_matrix(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect()
}

fn raw_sparse(t: &Tensor3, antisymmetric: bool) -> Vec<Entry> {
    t.entries()
        .into_iter()
        .filter(|(i, j, _, _)| !antisymmetric || i < j)
        .map(|(i, j, k, c)| (i + 1, j + 1, k + 1, format_rational(&c)))
        .collect()
}

fn raw_algebra(a: &LieAlgebra) -> RawAlgebra {
    RawAlgebra {
        dim: a.dim(),
        structure: raw_sparse(a.structure(), true),
        rep: a.rep().map(|r| RawRep { size: r.size, matrices: r.matrices.iter().map(raw_matrix).collect() }),
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn one_based_table(t: &[Vec<usize>]) -> Vec<Vec<usize>> {
    t.iter().map(|r| one_based(r)).collect()
}

fn raw_finite(f: &FiniteTwoCrossedGroupModule) -> RawFinite {
    RawFinite {
        l: one_based_table(f.l.table()),
        h: one_based_table(f.h.table()),
        g: one_based_table(f.g.table()),
        beta: one_based(&f.beta),
        alpha: one_based(&f.alpha),
        act_g: (f.act_g != conjugation(&f.g)).then(|| one_based_table(&f.act_g)),
        act_h: one_based_table(&f.act_h),
        act_l: one_based_table(&f.act_l),
        peiffer: one_based_table(&f.peiffer),
    }
}

impl InstanceConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| toml_error(e, text))?;
        let module = match (&raw.algebras, &raw.maps) {
            (None, None) => None,
            (Some(_), None) => return Err(schema("maps", "required when algebras are given")),
            (None, Some(_)) => return Err(schema("algebras", "required when maps are given")),
            (Some(a), Some(m)) => {
                let (g, h, l) = (algebra("g", &a.g)?, algebra("h", &a.h)?, algebra("l", &a.l)?);
                let (ng, nh, nl) = (g.dim(), h.dim(), l.dim());
                let empty = RawActions::default();
                let acts = raw.actions.as_ref().unwrap_or(&empty);
                let mut module = TwoCrossedModule::new(
                    raw.name.clone(),
                    g,
                    h,
                    l,
                    matrix("maps.alpha", &m.alpha, (ng, nh))?,
                    matrix("maps.beta", &m.beta, (nh, nl))?,
                    sparse("actions.h", &acts.h, (ng, nh, nh), false)?,
                    sparse("actions.l", &acts.l, (ng, nl, nl), false)?,
                    sparse("maps.peiffer", &m.peiffer, (nh, nh, nl), false)?,
                )?;
                module.wedge_substitution = raw.wedge_substitution;
                if let Some(r) = &m.alpha_right_inverse {
                    module.alpha_right_inverse = Some(matrix("maps.alpha_right_inverse", r, (nh, ng))?);
                }
                if let Some(r) = &m.beta_right_inverse {
                    module.beta_right_inverse = Some(matrix("maps.beta_right_inverse", r, (nl, nh))?);
                }
                let known: BTreeSet<&str> = crate::crossed::AXIOMS.iter().copied().collect();
                for a in &raw.disabled_axioms {
                    if !known.contains(a.as_str()) {
                        return Err(schema("disabled_axioms", format!("unknown axiom `{a}`")));
                    }
                }
                module.disabled_axioms = raw.disabled_axioms.iter().cloned().collect();
                Some(module)
            }
        };
        let invariant = match (&raw.invariant, &module) {
            (None, _) => InvariantSpec::Default,
            (Some(_), None) => return Err(schema("invariant", "needs algebras and maps")),
            (Some(inv), Some(m)) => {
                let get = |slot: Slot, v: &Option<Vec<Vec<String>>>| -> Result<Matrix> {
                    let field = format!("invariant.{}", slot.label());
                    let n = m.dim(slot);
                    let rows = v.as_ref().ok_or_else(|| schema(&field, "required field is missing"))?;
                    matrix(&field, rows, (n, n))
                };
                let grams = [get(Slot::G, &inv.g)?, get(Slot::H, &inv.h)?, get(Slot::L, &inv.l)?];
                match inv.mode {
                    InvariantMode::Explicit => InvariantSpec::Explicit(grams),
                    InvariantMode::Project => InvariantSpec::Project(grams),
                }
            }
        };
        let finite = raw.finite.as_ref().map(|f| finite(&raw.name, f)).transpose()?;
        if module.is_none() && finite.is_none() {
            return Err(schema("algebras", "a config needs algebras and maps, a finite table, or both"));
        }
        let reduction = raw
            .run
            .reduction
            .as_deref()
            .map(|s| s.parse::<Reduction>().map_err(|_| schema("run.reduction", format!("unknown reduction `{s}`"))))
            .transpose()?;
        let run = RunConfig {
            dim: raw.run.dim.unwrap_or(DEFAULT_DIM),
            seeds: raw.run.seeds.unwrap_or(DEFAULT_SEEDS),
            degree_cap: raw.run.degree_cap.unwrap_or(DEFAULT_DEGREE_CAP),
            seed_base: raw.run.seed_base,
            reduction,
        };
        Ok(InstanceConfig { name: raw.name, module, invariant, finite, run })
    }

    /// Renders the instance back into the file format; `from_toml` of the
    /// result gives an equal value.
    pub fn to_toml(&self) -> String {
        let module = self.module.as_ref();
        let grams = |mode, g: &[Matrix; 3]| RawInvariant {
            mode,
            g: Some(raw_matrix(&g[0])),
            h: Some(raw_matrix(&g[1])),
            l: Some(raw_matrix(&g[2])),
        };
        let raw = RawConfig {
            name: self.name.clone(),
            wedge_substitution: module.is_some_and(|m| m.wedge_substitution),
            disabled_axioms: module.map(|m| m.disabled_axioms.iter().cloned().collect()).unwrap_or_default(),
            algebras: module.map(|m| RawAlgebras { g: raw_algebra(&m.g), h: raw_algebra(&m.h), l: raw_algebra(&m.l) }),
            maps: module.map(|m| RawMaps {
                alpha: raw_matrix(&m.alpha),
                beta: raw_matrix(&m.beta),
                peiffer: raw_sparse(&m.peiffer, false),
                alpha_right_inverse: m.alpha_right_inverse.as_ref().map(raw_matrix),
                beta_right_inverse: m.beta_right_inverse.as_ref().map(raw_matrix),
            }),
            actions: module
                .map(|m| RawActions { h: raw_sparse(&m.act_h, false), l: raw_sparse(&m.act_l, false) })
                .filter(|a| !a.h.is_empty() || !a.l.is_empty()),
            invariant: match &self.invariant {
                InvariantSpec::Default => None,
                InvariantSpec::Explicit(g) => Some(grams(InvariantMode::Explicit, g)),
                InvariantSpec::Project(g) => Some(grams(InvariantMode::Project, g)),
            },
            run: RawRun {
                dim: (self.run.dim != DEFAULT_DIM).then_some(self.run.dim),
                seeds: (self.run.seeds != DEFAULT_SEEDS).then_some(self.run.seeds),
                degree_cap: (self.run.degree_cap != DEFAULT_DEGREE_CAP).then_some(self.run.degree_cap),
                seed_base: self.run.seed_base,
                reduction: self.run.reduction.map(|r| r.to_string()),
            },
            finite: self.finite.as_ref().map(raw_finite),
        };
        toml::to_string(&raw).expect("config serializes")
    }

    /// Wraps a module with default run settings.
    pub fn from_module(m: TwoCrossedModule) -> Self {
        InstanceConfig {
            name: m.name.clone(),
            module: Some(m),
            invariant: InvariantSpec::Default,
            finite: None,
            run: RunConfig::default(),
        }
    }

    /// Wraps a finite module with default run settings.
    pub fn from_finite(f: FiniteTwoCrossedGroupModule) -> Self {
        InstanceConfig { name: f.name.clone(), module: None, invariant: InvariantSpec::Default, finite: Some(f), run: RunConfig::default() }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_toml(&text)
    }

    pub fn module(&self) -> Result<&TwoCrossedModule> {
        self.module.as_ref().ok_or_else(|| Error::Precondition(format!("{} declares no Lie algebra data", self.name)))
    }

    /// Resolves the invariant triple, projecting seeds when asked.
    pub fn invariant_forms(&self) -> Result<InvariantForms> {
        let m = self.module()?;
        match &self.invariant {
            InvariantSpec::Explicit([g, h, l]) => InvariantForms::new(g.clone(), h.clone(), l.clone()),
            InvariantSpec::Project([g, h, l]) => InvariantForms::project_invariant(m, [g, h, l]),
            InvariantSpec::Default => {
                let ids = [Slot::G, Slot::H, Slot::L].map(|s| Matrix::identity(m.dim(s)));
                InvariantForms::project_invariant(m, [&ids[0], &ids[1], &ids[2]])
            }
        }
    }
}
