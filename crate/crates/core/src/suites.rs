//! The batch commands behind the CLI: each one turns an instance file into a
//! [`Report`].

use std::time::Instant;

use rayon::prelude::*;

use crate::config::{InstanceConfig, InvariantSpec, RunConfig};
use crate::crossed::{Slot, TwoCrossedModule};
use crate::error::{Error, Result};
use crate::forms::quadrature;
use crate::gauge::{Connection, Residuals, MIN_DIM};
use crate::invariant::{Adjoints, EtaConvention, InvariantForms};
use crate::reduce::{one_ym_action, Reduction};
use crate::report::Report;
use crate::scalar::{format_rational, Rational, Scalar};
use crate::variational::random_variation;

/// Step sizes of the central-difference sweep.
pub const SWEEP_STEPS: [f64; 3] = [1e-2, 1e-3, 1e-4];
/// Accepted distance of the fitted sweep order from 2.
pub const ORDER_TOLERANCE: f64 = 0.2;
/// Relative agreement required between exact and quadrature integrals.
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;
/// Offset separating variation seeds from connection seeds.
pub const VARIATION_SEED_OFFSET: u64 = 1 << 32;

#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub seeds: u64,
    pub degree_cap: u32,
    pub dim: usize,
    pub seed_base: u64,
    pub float_sweep: bool,
    /// Record wall-clock time per seed; off by default so reports stay
    /// byte-identical.
    pub timing: bool,
}

impl Options {
    pub fn from_run(run: &RunConfig) -> Self {
        Options {
            seeds: run.seeds,
            degree_cap: run.degree_cap,
            dim: run.dim,
            seed_base: run.seed_base,
            float_sweep: false,
            timing: false,
        }
    }

    fn seed_list(&self) -> Vec<u64> {
        (0..self.seeds).map(|i| self.seed_base + i).collect()
    }

    fn check_dim(&self) -> Result<()> {
        if self.dim < MIN_DIM {
            return Err(Error::Precondition(format!("gauge commands need --dim >= {MIN_DIM}, got {}", self.dim)));
        }
        Ok(())
    }
}

/// Runs `body` for every seed in parallel and merges the per-seed reports in
/// seed order.
fn per_seed<T: Send>(
    report: &mut Report,
    opts: &Options,
    body: impl Fn(u64, &mut Report) -> Result<T> + Sync,
) -> Vec<(u64, Option<T>)> {
    let parts: Vec<(u64, Report, Option<T>, f64)> = opts
        .seed_list()
        .into_par_iter()
        .map(|seed| {
            let mut part = Report::new("", "");
            let start = Instant::now();
            let out = match body(seed, &mut part) {
                Ok(v) => Some(v),
                Err(e) => {
                    part.fail("error", Some(seed), &e.to_string());
                    None
                }
            };
            (seed, part, out, start.elapsed().as_secs_f64() * 1e3)
        })
        .collect();
    let mut outs = Vec::with_capacity(parts.len());
    for (seed, part, out, ms) in parts {
        for mut c in part.checks {
            if opts.timing {
                c.timing_ms = Some(ms);
            }
            report.checks.push(c);
        }
        outs.push((seed, out));
    }
    outs
}

/// Axioms, invariance of the bilinear forms, adjoint relations, the η
/// convention swap and, for finite data, the group-surface laws.
pub fn verify(cfg: &InstanceConfig, opts: &Options) -> Result<Report> {
    let mut rep = Report::new("verify", &cfg.name);
    if cfg.module.is_none() && cfg.finite.is_none() {
        return Err(Error::Schema { field: "algebras".into(), message: "neither algebras nor finite data given".into() });
    }
    if let Some(m) = &cfg.module {
        rep.axioms("axiom", &m.axiom_report());
        match cfg.invariant_forms() {
            Ok(t) => invariant_checks(&mut rep, m, &t, opts)?,
            Err(Error::Construction(msg)) if cfg.invariant == InvariantSpec::Default => {
                rep.skip("invariant", None, &format!("no invariant triple declared and none found: {msg}"));
            }
            Err(e) => {
                rep.fail("invariant", None, &e.to_string());
            }
        }
    }
    if let Some(f) = &cfg.finite {
        rep.axioms("finite", &f.check());
        rep.axioms("surface", &f.surface_report());
    }
    Ok(rep.finish())
}

fn invariant_checks(rep: &mut Report, m: &TwoCrossedModule, t: &InvariantForms, opts: &Options) -> Result<()> {
    rep.axioms("invariant", &t.invariance_residual(m)?);
    rep.condition("invariant.positive_definite", None, t.is_positive_definite(), t.is_positive_definite().to_string());
    let adj = match t.adjoints(m, EtaConvention::AsPrinted) {
        Ok(a) => a,
        Err(e) => {
            rep.fail("adjoint", None, &e.to_string());
            return Ok(());
        }
    };
    rep.axioms("adjoint", &adj.defining_report(m, t));
    let swapped = t.adjoints(m, EtaConvention::Swapped)?;
    let dim = opts.dim.max(MIN_DIM);
    let conn = Connection::random(m, opts.seed_base, dim, opts.degree_cap.min(2))?;
    let (e1, e2) = (m.field_eq_residuals(&adj, &conn), m.field_eq_residuals(&swapped, &conn));
    match (e1, e2) {
        (Ok(e1), Ok(e2)) => {
            rep.residual("adjoint.eb_eta_swap", Some(opts.seed_base), &e1.eb.sub(&e2.eb)?.max_coefficient());
        }
        (Err(e), _) | (_, Err(e)) => {
            rep.fail("adjoint.eb_eta_swap", Some(opts.seed_base), &e.to_string());
        }
    }
    Ok(())
}

fn record(part: &mut Report, prefix: &str, seed: u64, dim: usize, r: &Residuals) {
    for (i, f) in r.as_array().into_iter().enumerate() {
        let c = part.residual(&format!("{prefix}.r{}", i + 1), Some(seed), &f.max_coefficient());
        if i == 2 && dim < 5 {
            c.reason = Some(format!("5-form identity, vacuous at d = {dim}"));
        }
    }
}

/// Three Bianchi residuals per seed, plus the flat variant when `α̃ = β̃ = 0`.
pub fn bianchi(cfg: &InstanceConfig, opts: &Options) -> Result<Report> {
    opts.check_dim()?;
    let m = cfg.module()?;
    let mut rep = Report::new("bianchi", &cfg.name);
    let flat = m.alpha.is_zero() && m.beta.is_zero();
    per_seed(&mut rep, opts, |seed, part| {
        let conn = Connection::random(m, seed, opts.dim, opts.degree_cap)?;
        let r = m.bianchi_residuals(&conn)?;
        record(part, "bianchi", seed, opts.dim, &r);
        if flat {
            record(part, "flat_bianchi", seed, opts.dim, &m.flat_bianchi_residuals(&conn)?);
        }
        Ok(())
    });
    if !flat {
        rep.skip("flat_bianchi", None, "α̃ or β̃ is nonzero");
    }
    Ok(rep.finish())
}

fn gauge_setup(cfg: &InstanceConfig) -> Result<(&TwoCrossedModule, InvariantForms, Adjoints)> {
    let m = cfg.module()?;
    let t = cfg.invariant_forms()?;
    if !t.is_positive_definite() {
        return Err(Error::Precondition("the invariant triple is not positive definite".into()));
    }
    let adj = t.adjoints(m, EtaConvention::AsPrinted)?;
    Ok((m, t, adj))
}

/// Exact first variation against the bulk pairing per seed, and optionally a
/// float sweep on the first seed. Returns the sweep as CSV when it ran.
pub fn gradcheck(cfg: &InstanceConfig, opts: &Options) -> Result<(Report, Option<String>)> {
    opts.check_dim()?;
    let (m, t, adj) = gauge_setup(cfg)?;
    let mut rep = Report::new("gradcheck", &cfg.name);
    let first = opts.seed_base;
    let outs = per_seed(&mut rep, opts, |seed, part| {
        let conn = Connection::random(m, seed, opts.dim, opts.degree_cap)?;
        let v = random_variation(m, seed + VARIATION_SEED_OFFSET, opts.dim, opts.degree_cap)?;
        let steps = (opts.float_sweep && seed == first).then_some(&SWEEP_STEPS[..]);
        let g = m.gradcheck_report(&adj, &t, &conn, &v, steps)?;
        part.residual("gradcheck.discrepancy", Some(seed), &g.discrepancy).value =
            Some(format_rational(&g.exact_linear_coefficient));
        for ch in &g.channels {
            part.residual(&format!("gradcheck.channel.{}", ch.channel), Some(seed), &(ch.exact.clone() - ch.bulk.clone()).magnitude())
                .value = Some(format_rational(&ch.bulk));
        }
        Ok(g.sweep)
    });
    let mut csv = None;
    if opts.float_sweep {
        match outs.into_iter().find(|(s, _)| *s == first).and_then(|(_, o)| o).flatten() {
            Some(sweep) => {
                match (&sweep.skipped, sweep.order) {
                    (Some(reason), _) => {
                        rep.skip("sweep.order", Some(first), reason);
                    }
                    (None, Some(order)) => {
                        rep.tolerance("sweep.order", Some(first), (order - 2.0).abs(), ORDER_TOLERANCE).value =
                            Some(format!("{order:.6}"));
                    }
                    (None, None) => {
                        rep.fail("sweep.order", Some(first), "could not fit a slope");
                    }
                }
                csv = Some(sweep.to_csv());
            }
            None => {
                rep.fail("sweep.order", Some(first), "sweep did not run");
            }
        }
    } else {
        rep.skip("sweep.order", None, "float sweep not requested");
    }
    Ok((rep.finish(), csv))
}

/// Exact action per seed, cross-checked by quadrature and for sign.
pub fn action(cfg: &InstanceConfig, opts: &Options) -> Result<Report> {
    opts.check_dim()?;
    let (m, t, _) = gauge_setup(cfg)?;
    let mut rep = Report::new("action", &cfg.name);
    let (mf, tf) = (m.to_scalar::<f64>(), t.to_scalar::<f64>());
    per_seed(&mut rep, opts, |seed, part| {
        let conn = Connection::random(m, seed, opts.dim, opts.degree_cap)?;
        let exact = m.action(&t, &conn)?;
        let density = mf.action_density(&tf, &conn.to_scalar::<f64>())?;
        let full = (1u32 << opts.dim) - 1;
        let quad = quadrature(&density.component(full)[0], opts.dim);
        let e = exact.to_f64();
        let rel = if e == 0.0 { quad.abs() } else { ((quad - e) / e).abs() };
        part.tolerance("action.quadrature", Some(seed), rel, QUADRATURE_TOLERANCE).value = Some(format_rational(&exact));
        part.condition("action.nonnegative", Some(seed), exact >= Rational::from_i64(0), format_rational(&exact));
        Ok(())
    });
    Ok(rep.finish())
}

/// Most specific reduction that applies to `m`.
pub fn infer_reduction(m: &TwoCrossedModule) -> Option<Reduction> {
    [
        Reduction::OneElectro,
        Reduction::ThreeElectro,
        Reduction::TwoElectro,
        Reduction::OneYangMills,
        Reduction::TwoYangMills,
    ]
    .into_iter()
    .find(|r| r.applicable(m).is_ok())
}

/// The declared (or inferred) reduction, compared per seed.
pub fn reduce(cfg: &InstanceConfig, opts: &Options) -> Result<Report> {
    opts.check_dim()?;
    let m = cfg.module()?;
    let r = match cfg.run.reduction {
        Some(r) => r,
        None => infer_reduction(m).ok_or_else(|| {
            Error::Precondition(format!(
                "no reduction applies to dimensions (g, h, l) = ({}, {}, {})",
                m.dim(Slot::G),
                m.dim(Slot::H),
                m.dim(Slot::L)
            ))
        })?,
    };
    r.applicable(m)?;
    let t = cfg.invariant_forms()?;
    let mut rep = Report::new("reduce", &cfg.name);
    per_seed(&mut rep, opts, |seed, part| {
        let check = r.check(m, &t, seed, opts.dim, opts.degree_cap)?;
        part.residual(&format!("reduce.{r}"), Some(seed), &check.max_difference());
        if r == Reduction::OneYangMills {
            let conn = Connection::random(m, seed, opts.dim, opts.degree_cap)?;
            let diff = m.action(&t, &conn)? - one_ym_action(m, &t, &conn.a)?;
            part.residual("reduce.1-ym.action", Some(seed), &diff.magnitude());
        }
        Ok(())
    });
    Ok(rep.finish())
}
