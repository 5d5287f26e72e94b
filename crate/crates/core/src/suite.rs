//! Full verification runs over a model: the exact algebraic layer, the float
//! analytic layer, or both.

use std::str::FromStr;

use crate::analytic::{analytic_suite, refusal};
use crate::duality::{
    build_alg_mult_unitary, build_dual, check_biduality, check_convolution_compat, check_dual, check_dual_modular,
    check_pentagon_and_lemmas, check_radford, Dual, SampleConfig,
};
use crate::error::Error;
use crate::hopf::{build_galois, check_cancellation, check_counit_antipode, check_structure, QGModel};
use crate::integrals::{check_haar, check_modular, check_sigma_identities, QuantumGroup};
use crate::report::{Outcome, Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteKind {
    Algebraic,
    Analytic,
    All,
}

impl FromStr for SuiteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "algebraic" => Ok(SuiteKind::Algebraic),
            "analytic" => Ok(SuiteKind::Analytic),
            "all" => Ok(SuiteKind::All),
            _ => Err(Error::Argument(format!("unknown suite '{s}' (expected algebraic, analytic or all)"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub kind: SuiteKind,
    /// Replaces the tolerance of every float check. Exact checks keep tolerance 0.
    pub tol: Option<f64>,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { kind: SuiteKind::All, tol: None, seed: SampleConfig::default().seed }
    }
}

/// What a run produced: the report, plus whether the analytic layer refused the model.
#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub report: Report,
    pub refused: Option<String>,
}

/// Structure, cancellation, counit/antipode, Haar and modular data, the dual
/// and its modular formulas, Radford, the pentagon and biduality.
pub fn algebraic_suite(model: &QGModel, seed: u64) -> (Report, Option<(QuantumGroup, Dual)>) {
    let mut r = Report::new(model.name());
    let structure = check_structure(model);
    let ok = structure.passed();
    r.extend(structure);
    if !ok {
        return (r, None);
    }
    let galois = build_galois(model);
    let cancel = check_cancellation(model, &galois);
    let ok = cancel.passed();
    r.extend(cancel);
    if !ok {
        return (r, None);
    }
    let qg = match QuantumGroup::build_with(model.clone(), &galois) {
        Ok(qg) => qg,
        Err(e) => {
            r.run("quantum_group.build", "counit, antipode and integral", 0.0, || Outcome::fail(e.to_string()));
            return (r, None);
        }
    };
    r.extend(check_counit_antipode(model, &galois, &qg.hopf));
    r.extend(check_haar(&qg));
    r.extend(check_modular(&qg));
    r.extend(check_sigma_identities(&qg));
    let dual = match build_dual(&qg) {
        Ok(d) => d,
        Err(e) => {
            r.run("dual.build", "Pontryagin dual", 0.0, || Outcome::fail(e.to_string()));
            return (r, None);
        }
    };
    r.extend(check_dual(&qg, &dual));
    r.extend(check_dual_modular(&qg, &dual));
    r.extend(check_radford(&qg, &dual));
    r.extend(check_convolution_compat(&qg, &dual));
    let cfg = SampleConfig { seed, ..SampleConfig::default() };
    let w = build_alg_mult_unitary(&qg);
    r.extend(check_pentagon_and_lemmas(&qg, &dual, &galois, &w, &cfg));
    match build_dual(&dual.qg) {
        Ok(bidual) => r.extend(check_biduality(&qg, &bidual)),
        Err(e) => {
            r.run("biduality.build", "biduality", 0.0, || Outcome::fail(e.to_string()));
        }
    }
    (r, Some((qg, dual)))
}

fn override_tolerance(r: &mut Report, tol: f64) {
    for c in &mut r.checks {
        if c.tolerance > 0.0 && c.status != Status::Skipped {
            c.tolerance = tol;
            c.status = if c.max_residual <= tol { Status::Pass } else { Status::Fail };
        }
    }
}

pub fn run_suite(model: &QGModel, opts: &SuiteOptions) -> SuiteOutcome {
    let (mut report, built) = algebraic_suite(model, opts.seed);
    let mut refused = None;
    if opts.kind != SuiteKind::Algebraic {
        let algebraic = std::mem::replace(&mut report, Report::new(model.name()));
        if opts.kind == SuiteKind::All {
            report = algebraic;
        } else if !algebraic.passed() {
            // the analytic layer sits on top of the algebraic one
            let checks = algebraic.failures().cloned().collect();
            report.extend(Report { model: algebraic.model, checks });
        }
        if let Some((qg, dual)) = &built {
            let analytic = analytic_suite(qg, dual);
            if let Some(reason) = refusal(qg) {
                refused = Some(reason);
            }
            report.extend(analytic);
        }
    }
    if let Some(tol) = opts.tol {
        override_tolerance(&mut report, tol);
    }
    SuiteOutcome { report, refused }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::by_name;

    #[test]
    fn reports_are_deterministic() {
        let m = by_name("taft_t3").unwrap();
        let opts = SuiteOptions { seed: 7, ..SuiteOptions::default() };
        let a = run_suite(&m, &opts).report.without_timings();
        let b = run_suite(&m, &opts).report.without_timings();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.passed(), "{}", a.render_text());
    }

    #[test]
    fn analytic_on_sweedler_is_refused() {
        let m = by_name("sweedler_h4").unwrap();
        let out = run_suite(&m, &SuiteOptions { kind: SuiteKind::Analytic, ..SuiteOptions::default() });
        assert!(out.refused.is_some());
    }

    #[test]
    fn tolerance_override_only_touches_float_checks() {
        let m = by_name("c_z2").unwrap();
        let out = run_suite(&m, &SuiteOptions { tol: Some(1e-30), ..SuiteOptions::default() });
        assert!(out.report.checks.iter().any(|c| c.tolerance == 1e-30));
        assert!(out.report.checks.iter().any(|c| c.tolerance == 0.0 && c.status == Status::Pass));
    }
}
