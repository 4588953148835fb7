use serde::Serialize;

use super::checks::CheckResult;
use crate::boundary::BoundaryMetric;
use crate::paramgen::ParamSet;

/// Version tag of the JSON layout.
pub const SCHEMA: &str = "ricci-forge/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Overall {
    Pass,
    Fail,
}

/// The boundary quantities the gluing step consumes. `lambda` and `nu`
/// belong to the gluing construction itself and are left unset here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundarySummary {
    pub omega: f64,
    pub tau: f64,
    pub exponent: f64,
    pub rho_lo: f64,
    pub rho_hi: f64,
    pub rho: Option<f64>,
    pub lambda: Option<f64>,
    pub nu: Option<f64>,
}

impl BoundarySummary {
    pub fn from_metric(bm: &BoundaryMetric) -> Self {
        let rho = (bm.rho_lo < bm.rho_hi).then_some(0.5 * (bm.rho_lo + bm.rho_hi));
        BoundarySummary {
            omega: bm.omega,
            tau: bm.tau,
            exponent: bm.exponent,
            rho_lo: bm.rho_lo,
            rho_hi: bm.rho_hi,
            rho,
            lambda: None,
            nu: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub n: u32,
    pub p: u32,
    pub grid_points: usize,
    pub params: Option<ParamSet>,
    pub boundary: Option<BoundarySummary>,
    pub checks: Vec<CheckResult>,
    pub overall: Overall,
}

impl VerificationReport {
    pub fn new(
        n: u32,
        p: u32,
        grid_points: usize,
        params: Option<ParamSet>,
        boundary: Option<BoundarySummary>,
        checks: Vec<CheckResult>,
    ) -> Self {
        let overall = if checks.iter().all(|c| c.passed) {
            Overall::Pass
        } else {
            Overall::Fail
        };
        VerificationReport {
            schema: SCHEMA,
            n,
            p,
            grid_points,
            params,
            boundary,
            checks,
            overall,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == Overall::Pass
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }
}
