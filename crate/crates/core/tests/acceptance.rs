//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use trigauge::config::InstanceConfig;
use trigauge::crossed::{AxiomReport, Status, TwoCrossedModule};
use trigauge::forms::{pair_with, quadrature, Form, Space};
use trigauge::gauge::Connection;
use trigauge::group;
use trigauge::identities::{check_identities, Outcome};
use trigauge::instances;
use trigauge::invariant::{EtaConvention, InvariantForms};
use trigauge::linalg::Matrix;
use trigauge::random::FormSampler;
use trigauge::reduce::{Reduction, ALL};
use trigauge::report::Report;
use trigauge::scalar::{int, Scalar};
use trigauge::suites::{self, Options, SWEEP_STEPS};

const AXIOM_BUDGET: Duration = Duration::from_secs(5);
const BIANCHI_BUDGET: Duration = Duration::from_secs(60);
const BIANCHI_SEEDS: u64 = 50;
const IDENTITY_SEEDS: u64 = 20;
const GRADCHECK_SEEDS: u64 = 20;
const REDUCTION_SEEDS: u64 = 10;
const KERNEL_SEEDS: u64 = 8;
const DEGREE_CAP: u32 = 3;
const DIM: usize = 4;
/// Extra run at d = 5, where the third Bianchi identity is not vacuous.
const DIM_STRONG: usize = 5;
const ORDER_TARGET: f64 = 2.0;
const ORDER_TOLERANCE: f64 = 0.2;
const QUADRATURE_REL: f64 = 1e-10;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn options(seeds: u64, dim: usize) -> Options {
    Options { seeds, degree_cap: DEGREE_CAP, dim, seed_base: 0, float_sweep: false, timing: false }
}

/// Shipped instances that carry a positive-definite invariant triple.
fn with_forms() -> Vec<(TwoCrossedModule, InvariantForms)> {
    instances::shipped()
        .into_iter()
        .filter_map(|m| {
            let t = InstanceConfig::from_module(m.clone()).invariant_forms().ok()?;
            t.is_positive_definite().then_some((m, t))
        })
        .collect()
}

fn report_failures(r: &Report) -> Vec<String> {
    r.failures().iter().map(|c| format!("{}:{} seed {:?}", r.instance, c.name, c.seed)).collect()
}

fn nonzero(r: &AxiomReport) -> bool {
    r.entries.iter().any(|(_, e)| e.status == Status::Fail)
}

fn axioms() -> Verdict {
    let mut bad = Vec::new();
    let (mut perturbed, mut slowest) = (0, Duration::ZERO);
    let reduction_instances = ALL.map(Reduction::default_instance);
    for m in instances::shipped().into_iter().chain(reduction_instances) {
        let start = Instant::now();
        if !m.axiom_report().passed() {
            bad.push(format!("{}: {:?}", m.name, m.axiom_report().failures()));
        }
        for (label, p) in instances::single_entry_perturbations(&m) {
            perturbed += 1;
            if !nonzero(&p.axiom_report()) {
                bad.push(format!("{} {label} undetected", m.name));
            }
        }
        let t = start.elapsed();
        slowest = slowest.max(t);
        if t >= AXIOM_BUDGET {
            bad.push(format!("{} took {t:?}", m.name));
        }
    }
    for f in group::shipped() {
        if !f.check().passed() {
            bad.push(format!("{}: {:?}", f.name, f.check().failures()));
        }
    }
    verdict(
        bad.is_empty(),
        format!("{perturbed} perturbations checked, slowest instance {slowest:.2?}; failures {bad:?}"),
    )
}

fn bianchi() -> Verdict {
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    for m in instances::shipped() {
        let cfg = InstanceConfig::from_module(m);
        for dim in [DIM, DIM_STRONG] {
            let start = Instant::now();
            match suites::bianchi(&cfg, &options(BIANCHI_SEEDS, dim)) {
                Ok(r) => bad.extend(report_failures(&r)),
                Err(e) => bad.push(format!("{}: {e}", cfg.name)),
            }
            let t = start.elapsed();
            slowest = slowest.max(t);
            if t >= BIANCHI_BUDGET {
                bad.push(format!("{} d={dim} took {t:?}", cfg.name));
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!("{BIANCHI_SEEDS} seeds at d={DIM} and d={DIM_STRONG}, slowest run {slowest:.2?}; failures {bad:?}"),
    )
}

fn identities() -> Verdict {
    let mut bad = Vec::new();
    let (mut checked, mut skipped) = (0usize, std::collections::BTreeSet::new());
    for (m, t) in with_forms() {
        let adj = match t.adjoints(&m, EtaConvention::AsPrinted) {
            Ok(a) => a,
            Err(e) => {
                bad.push(format!("{}: {e}", m.name));
                continue;
            }
        };
        for seed in 0..IDENTITY_SEEDS {
            match check_identities(&m, &t, &adj, seed, DIM, DEGREE_CAP, None) {
                Ok(outs) => {
                    for o in outs {
                        match o {
                            Outcome::Checked { name, degrees, residual } => {
                                checked += 1;
                                if residual != int(0) {
                                    bad.push(format!("{} {name} {degrees:?} seed {seed}", m.name));
                                }
                            }
                            Outcome::Skipped { name, .. } => {
                                skipped.insert(format!("{}:{name}", m.name));
                            }
                        }
                    }
                }
                Err(e) => bad.push(format!("{} seed {seed}: {e}", m.name)),
            }
        }
    }
    verdict(bad.is_empty() && checked > 0, format!("{checked} exact checks, skipped {skipped:?}; failures {bad:?}"))
}

fn variational() -> Verdict {
    let mut bad = Vec::new();
    let mut orders = Vec::new();
    for (m, _) in with_forms() {
        let cfg = InstanceConfig::from_module(m);
        let mut opts = options(GRADCHECK_SEEDS, DIM);
        opts.float_sweep = true;
        match suites::gradcheck(&cfg, &opts) {
            Ok((r, _)) => {
                bad.extend(report_failures(&r));
                if let Some(c) = r.checks.iter().find(|c| c.name == "sweep.order" && c.status == Status::Pass) {
                    let order: f64 = c.value.as_deref().unwrap_or("nan").parse().unwrap_or(f64::NAN);
                    if (order - ORDER_TARGET).abs() > ORDER_TOLERANCE {
                        bad.push(format!("{} order {order}", cfg.name));
                    }
                    orders.push(format!("{} {order:.3}", cfg.name));
                }
            }
            Err(e) => bad.push(format!("{}: {e}", cfg.name)),
        }
    }
    verdict(
        bad.is_empty() && !orders.is_empty(),
        format!("{GRADCHECK_SEEDS} seeds per instance, sweep steps {SWEEP_STEPS:?}, orders {orders:?}; failures {bad:?}"),
    )
}

fn reductions() -> Verdict {
    let mut bad = Vec::new();
    for r in ALL {
        let m = r.default_instance();
        let mut cfg = InstanceConfig::from_module(m);
        cfg.run.reduction = Some(r);
        match suites::reduce(&cfg, &options(REDUCTION_SEEDS, DIM)) {
            Ok(rep) => {
                bad.extend(report_failures(&rep));
                if rep.checks.iter().filter(|c| c.name == format!("reduce.{r}")).count() != REDUCTION_SEEDS as usize {
                    bad.push(format!("{r}: wrong number of seeds"));
                }
            }
            Err(e) => bad.push(format!("{r}: {e}")),
        }
    }
    verdict(bad.is_empty(), format!("{} reductions x {REDUCTION_SEEDS} seeds; failures {bad:?}", ALL.len()))
}

fn group_surface() -> Verdict {
    let mut bad = Vec::new();
    let mut sizes = Vec::new();
    for f in group::shipped() {
        let r = f.surface_report();
        if !r.passed() {
            bad.push(format!("{}: {:?}", f.name, r.failures()));
        }
        sizes.push(format!("{} {} squares {} cubes", f.name, f.squares().len(), f.cubes().len()));
    }
    verdict(bad.is_empty(), format!("{sizes:?}; failures {bad:?}"))
}

fn adjoint_checks(m: &TwoCrossedModule, t: &InvariantForms, bad: &mut Vec<String>) -> trigauge::error::Result<()> {
    let adj = t.adjoints(m, EtaConvention::AsPrinted)?;
    let rep = adj.defining_report(m, t);
    if !rep.passed() {
        bad.push(format!("{}: {:?}", m.name, rep.failures()));
    }
    let swapped = t.adjoints(m, EtaConvention::Swapped)?;
    for seed in 0..3 {
        let conn = Connection::random(m, seed, DIM, 2)?;
        if m.field_eq_residuals(&adj, &conn)?.eb != m.field_eq_residuals(&swapped, &conn)?.eb {
            bad.push(format!("{}: EB differs under the swap, seed {seed}", m.name));
        }
    }
    Ok(())
}

fn adjoints() -> Verdict {
    let mut bad = Vec::new();
    let mut count = 0;
    let reduction_instances = ALL.map(Reduction::default_instance);
    for m in instances::shipped().into_iter().chain(reduction_instances) {
        let Ok(t) = InstanceConfig::from_module(m.clone()).invariant_forms() else { continue };
        count += 1;
        if let Err(e) = adjoint_checks(&m, &t, &mut bad) {
            bad.push(format!("{}: {e}", m.name));
        }
    }
    verdict(bad.is_empty() && count > 0, format!("{count} invariant triples; failures {bad:?}"))
}

fn kernel() -> Verdict {
    let mut bad = Vec::new();
    let mut worst_rel = 0.0f64;
    let mut cases = 0;
    for dim in [DIM, DIM_STRONG] {
        for seed in 0..KERNEL_SEEDS {
            let mut s = FormSampler::new(seed, dim, DEGREE_CAP).with_terms(3);
            let gram = Matrix::identity(2);
            let forms: Vec<Form> = (0..=dim).map(|k| s.form(k, Space::G, 2)).collect();
            for (k, w) in forms.iter().enumerate() {
                cases += 1;
                if !w.d().d().is_zero() {
                    bad.push(format!("d² d={dim} k={k} seed {seed}"));
                }
                let sign = if (k * (dim - k)) % 2 == 0 { 1 } else { -1 };
                let twice = w.hodge().and_then(|h| h.hodge()).expect("degree in range");
                if twice != w.scale(&int(sign)) {
                    bad.push(format!("** d={dim} k={k} seed {seed}"));
                }
                for (j, v) in forms.iter().enumerate().take(dim - k + 1) {
                    let ab = pair_with(w, v, &gram).expect("same space");
                    let ba = pair_with(v, w, &gram).expect("same space");
                    let graded = if (k * j) % 2 == 0 { 1 } else { -1 };
                    if ab != ba.scale(&int(graded)) {
                        bad.push(format!("pairing d={dim} ({k},{j}) seed {seed}"));
                    }
                }
            }
            let top = s.form(dim, Space::Scalar, 1);
            let exact = top.integrate_scalar().expect("top form").to_f64();
            let full = (1u32 << dim) - 1;
            let quad = quadrature(&top.to_scalar::<f64>().component(full)[0], dim);
            let rel = if exact == 0.0 { quad.abs() } else { ((quad - exact) / exact).abs() };
            worst_rel = worst_rel.max(rel);
            if rel > QUADRATURE_REL {
                bad.push(format!("quadrature d={dim} seed {seed}: {rel:e}"));
            }
        }
    }
    verdict(bad.is_empty(), format!("{cases} forms, worst quadrature relative error {worst_rel:e}; failures {bad:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("axiom suite", axioms),
        ("Bianchi identities", bianchi),
        ("form identity suites", identities),
        ("variational field equations", variational),
        ("reductions", reductions),
        ("group surfaces", group_surface),
        ("adjoint maps", adjoints),
        ("calculus kernel", kernel),
    ];
    let mut all = true;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        all &= v.ok;
        let tag = if v.ok { "PASS" } else { "FAIL" };
        println!("{tag} criterion {}: {title} [{:.2?}] {}", i + 1, start.elapsed(), v.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
