//! Structured run reports, serialized as JSON.

use serde::Serialize;

use crate::crossed::{AxiomReport, Status};
use crate::scalar::{format_rational, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Exact residual as `p/q`, or a decimal for floating-point checks.
    pub residual_exact: String,
    pub residual_float: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub instance: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, instance: &str) -> Self {
        Report { command: command.into(), instance: instance.into(), passed: true, checks: Vec::new() }
    }

    fn push(&mut self, check: Check) -> &mut Check {
        self.checks.push(check);
        self.checks.last_mut().expect("just pushed")
    }

    /// Passes iff `residual` is exactly zero.
    pub fn residual(&mut self, name: &str, seed: Option<u64>, residual: &Rational) -> &mut Check {
        let status = if residual == &Rational::from_i64(0) { Status::Pass } else { Status::Fail };
        self.push(Check {
            name: name.into(),
            seed,
            residual_exact: format_rational(residual),
            residual_float: Some(residual.to_f64()),
            value: None,
            status,
            reason: None,
            timing_ms: None,
        })
    }

    /// A floating-point measurement checked against a tolerance.
    pub fn tolerance(&mut self, name: &str, seed: Option<u64>, residual: f64, tol: f64) -> &mut Check {
        let status = if residual.is_finite() && residual <= tol { Status::Pass } else { Status::Fail };
        self.push(Check {
            name: name.into(),
            seed,
            residual_exact: format!("{residual:e}"),
            residual_float: Some(residual),
            value: None,
            status,
            reason: Some(format!("tolerance {tol:e}")),
            timing_ms: None,
        })
    }

    /// A yes/no property; `value` is recorded alongside.
    pub fn condition(&mut self, name: &str, seed: Option<u64>, ok: bool, value: String) -> &mut Check {
        self.push(Check {
            name: name.into(),
            seed,
            residual_exact: if ok { "0" } else { "1" }.into(),
            residual_float: Some(if ok { 0.0 } else { 1.0 }),
            value: Some(value),
            status: if ok { Status::Pass } else { Status::Fail },
            reason: None,
            timing_ms: None,
        })
    }

    pub fn skip(&mut self, name: &str, seed: Option<u64>, reason: &str) -> &mut Check {
        self.push(Check {
            name: name.into(),
            seed,
            residual_exact: "0".into(),
            residual_float: None,
            value: None,
            status: Status::Skipped,
            reason: Some(reason.into()),
            timing_ms: None,
        })
    }

    pub fn fail(&mut self, name: &str, seed: Option<u64>, reason: &str) -> &mut Check {
        self.push(Check {
            name: name.into(),
            seed,
            residual_exact: "-".into(),
            residual_float: None,
            value: None,
            status: Status::Fail,
            reason: Some(reason.into()),
            timing_ms: None,
        })
    }

    /// Copies every entry of an axiom report under `prefix.`.
    pub fn axioms(&mut self, prefix: &str, rep: &AxiomReport) {
        for (name, e) in &rep.entries {
            let full = format!("{prefix}.{name}");
            if e.status == Status::Skipped {
                self.skip(&full, None, e.note.as_deref().unwrap_or("skipped"));
            } else {
                self.residual(&full, None, &e.residual);
            }
        }
    }

    /// Orders checks by seed, then name, and settles the verdict.
    pub fn finish(mut self) -> Self {
        self.checks.sort_by(|a, b| (a.seed, &a.name).cmp(&(b.seed, &b.name)));
        self.passed = self.checks.iter().all(|c| c.status != Status::Fail);
        self
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn verdict_and_ordering() {
        let mut r = Report::new("bianchi", "x");
        r.residual("b", Some(2), &rat(0, 1));
        r.residual("a", Some(2), &rat(1, 3));
        r.skip("c", Some(1), "why");
        let r = r.finish();
        assert!(!r.passed);
        assert_eq!(r.checks.iter().map(|c| c.name.as_str()).collect::<Vec<_>>(), ["c", "a", "b"]);
        assert_eq!(r.checks[1].residual_exact, "1/3");
        let json = r.to_json();
        assert!(json.contains("\"status\": \"skipped\""));
        assert!(!json.contains("timing_ms"));
    }
}
