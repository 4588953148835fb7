use serde::Serialize;

use crate::error::Clause;
use crate::numeric::golden_min;

/// A strict inequality passes only with at least this much room.
pub const STRICT_FLOOR: f64 = 1e-12;
const REFINE_ITERATIONS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    Strict,
    NonStrict,
}

impl Strictness {
    pub fn passes(self, margin: f64) -> bool {
        match self {
            Strictness::Strict => margin > STRICT_FLOOR,
            Strictness::NonStrict => margin >= 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckSpec {
    pub name: &'static str,
    pub anchor: &'static str,
    pub strictness: Strictness,
}

const fn strict(name: &'static str, anchor: &'static str) -> CheckSpec {
    CheckSpec {
        name,
        anchor,
        strictness: Strictness::Strict,
    }
}

const fn weak(name: &'static str, anchor: &'static str) -> CheckSpec {
    CheckSpec {
        name,
        anchor,
        strictness: Strictness::NonStrict,
    }
}

/// Every check a report carries, in report order.
pub const CHECKS: &[CheckSpec] = &[
    weak("def_2_1a", "Definition 2.1(a)"),
    strict("def_2_1b", "Definition 2.1(b)"),
    strict("def_2_1c", "Definition 2.1(c)"),
    strict("def_2_7_lambda", "Definition 2.7 (Lambda > 1/R0)"),
    strict(
        "gamma_derivative_bounds",
        "Definition 2.7 (sup|gamma'|, sup|gamma''| < R0)",
    ),
    strict("def_2_8_r0", "Definition 2.8"),
    strict(
        "disc_disjointness",
        "Proposition 2.19 (disjoint discs, r0 < pi/p)",
    ),
    strict("lemma_2_2", "Lemma 2.2"),
    strict("lemma_2_3", "Lemma 2.3"),
    strict("lemma_2_4", "Lemma 2.4"),
    strict("lemma_2_5", "Lemma 2.5"),
    strict("lemma_2_6i", "Lemma 2.6(i)"),
    strict("lemma_2_6ii", "Lemma 2.6(ii)"),
    strict("lemma_2_6iii", "Lemma 2.6(iii)"),
    strict("inequality_star", "Lemma 2.9 (*)"),
    strict("lemma_2_11_iota", "Lemma 2.11"),
    strict("lemma_2_12_mu0", "Lemma 2.12"),
    strict("lemma_2_13_mu_range", "Lemma 2.13 (mu in (0, mu0))"),
    strict("c1_join_psi", "Lemma 2.9 (C1 join at psi)"),
    strict("c1_join_b", "Lemma 2.9 (C1 join at b)"),
    weak("bridge_concavity", "Lemma 2.9 (theta <= 0, theta'' <= 0)"),
    weak("lemma_2_9iii", "Lemma 2.9(iii)"),
    strict("lemma_2_10", "Lemma 2.10"),
    strict("profile_positive", "Lemma 2.9 / Lemma 2.10 (R > 0)"),
    strict("lemma_2_13a", "Lemma 2.13(a)"),
    strict("lemma_2_13b", "Lemma 2.13(b)"),
    strict("lemma_2_13c", "Lemma 2.13(c)"),
    strict("corollary_2_14_concavity", "Corollary 2.14 (R'' < 0)"),
    strict(
        "corollary_2_14_ratio",
        "Corollary 2.14 (-R''/R > 1 - mu on [b, r0])",
    ),
    weak("lemma_2_15", "Lemma 2.15"),
    weak(
        "profile_below_sine",
        "Proposition 2.19 (R <= sin t, R <= R0)",
    ),
    weak("profile_slope_range", "Lemma 2.15 (0 <= R' <= 1)"),
    strict("ricci_tt", "Proposition 2.19 (Ric(T,T) > 0)"),
    strict("ricci_xx", "Proposition 2.19 (Ric(X,X) > 0)"),
    strict("ricci_ss", "Proposition 2.19 (Ric(S,S) > 0)"),
    weak("corollary_2_16", "Corollary 2.16"),
    strict("corollary_2_16_strict", "Lemma 2.15 (strict on [r0/2, r0])"),
    strict("lemma_2_17", "Lemma 2.17"),
    strict("lemma_2_18", "Lemma 2.18"),
    weak("lemma_2_18_round_bound", "Lemma 2.18 (K >= 1 + cot^2 r0)"),
    weak(
        "rescaled_principal_bound",
        "Proposition 2.19 (rescaled principal curvatures >= -1)",
    ),
    strict(
        "gauss_crosscheck",
        "Lemma 2.17 / Lemma 2.18 (Gauss formula)",
    ),
    strict("angle_identity", "Lemma 2.17 (dt/ds identity)"),
    strict(
        "smooth_closure",
        "Proposition 2.19 (smooth closure at the poles)",
    ),
    strict(
        "pole_distance",
        "Proposition 2.19 (pole distance pi cos r0)",
    ),
    strict("waist_tau", "Proposition 2.19 (waist tau)"),
    strict("tau_below_r0", "Proposition 2.19 (tau < R0)"),
    strict(
        "omega_above_waist_power",
        "Proposition 2.20 (omega > tau^((n-2)/(n-1)))",
    ),
    weak(
        "prop_1_12_chain",
        "Proposition 1.12 (tau^((n-2)/(n-1)) <= sqrt(tau) < sqrt(R0) <= 1/sqrt(10) < 1/2)",
    ),
    strict("rho_interval", "Corollary 2.22 / Proposition 1.12"),
    strict(
        "boundary_sectional_rescaled",
        "Proposition 2.19 (rescaled boundary sectional curvature > 1)",
    ),
    strict(
        "derivative_consistency_profile_c1",
        "Lemma 2.9 / Lemma 2.10 (closed-form derivatives)",
    ),
    strict(
        "derivative_consistency_smooth",
        "Lemma 2.13 (closed-form derivatives)",
    ),
];

pub fn spec(name: &str) -> &'static CheckSpec {
    CHECKS
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("unknown check '{name}'"))
}

/// The check that reports a failed construction step.
pub fn check_for_clause(clause: Clause) -> &'static str {
    match clause {
        Clause::SquashBound => "def_2_1a",
        Clause::KappaBound => "def_2_1b",
        Clause::ZetaInterval => "def_2_1c",
        Clause::BumpLength => "def_2_7_lambda",
        Clause::BumpDerivatives => "gamma_derivative_bounds",
        Clause::DiscRadius => "def_2_8_r0",
        Clause::DiscDisjointness => "disc_disjointness",
        Clause::Lemma2_2 => "lemma_2_2",
        Clause::Lemma2_3 => "lemma_2_3",
        Clause::Lemma2_4 => "lemma_2_4",
        Clause::Lemma2_5 => "lemma_2_5",
        Clause::Lemma2_6 => "lemma_2_6iii",
        Clause::BridgeInequality => "inequality_star",
        Clause::Iota => "lemma_2_11_iota",
        Clause::SmoothingBudget => "lemma_2_12_mu0",
        Clause::SmoothingParameter => "lemma_2_13_mu_range",
        Clause::C1Join => "c1_join_b",
        Clause::BridgeConcavity => "bridge_concavity",
        Clause::InnerConcavity => "lemma_2_9iii",
        Clause::OuterConcavity => "lemma_2_10",
        Clause::Smoothing => "lemma_2_13b",
        Clause::RhoInterval => "rho_interval",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub anchor: String,
    pub passed: bool,
    /// Worst margin found; `None` when the check could not be evaluated.
    pub margin: Option<f64>,
    /// Where the worst margin occurs, if the check is sampled.
    pub at: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cause: Option<String>,
}

impl CheckResult {
    pub fn measured(spec: &CheckSpec, margin: f64, at: Option<f64>) -> Self {
        if margin.is_nan() {
            return CheckResult::failed(spec, format!("margin is not a number (at {at:?})"));
        }
        CheckResult {
            name: spec.name.into(),
            anchor: spec.anchor.into(),
            passed: spec.strictness.passes(margin),
            margin: Some(margin),
            at,
            cause: None,
        }
    }

    pub fn failed(spec: &CheckSpec, cause: impl Into<String>) -> Self {
        CheckResult {
            name: spec.name.into(),
            anchor: spec.anchor.into(),
            passed: false,
            margin: None,
            at: None,
            cause: Some(cause.into()),
        }
    }

    pub fn skipped(spec: &CheckSpec, upstream: &str) -> Self {
        CheckResult::failed(spec, format!("skipped: {upstream}"))
    }

    pub fn is_skipped(&self) -> bool {
        self.cause
            .as_deref()
            .is_some_and(|c| c.starts_with("skipped:"))
    }
}

/// Smallest value of a margin function over a sample set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Worst {
    pub margin: f64,
    pub at: f64,
}

/// Grid minimum of `f` over `ts`, then a golden-section search between the
/// neighbours of the grid argmin; the smaller of the two wins. A NaN
/// anywhere is reported as the worst value.
pub fn worst_on<F: Fn(f64) -> f64>(ts: &[f64], f: F) -> Worst {
    let mut worst = Worst {
        margin: f64::INFINITY,
        at: f64::NAN,
    };
    let mut idx = 0;
    for (i, &t) in ts.iter().enumerate() {
        let m = f(t);
        if m.is_nan() {
            return Worst { margin: m, at: t };
        }
        if m < worst.margin {
            worst = Worst { margin: m, at: t };
            idx = i;
        }
    }
    if ts.len() >= 2 {
        let lo = ts[idx.saturating_sub(1)];
        let hi = ts[(idx + 1).min(ts.len() - 1)];
        let (x, v) = golden_min(&f, lo, hi, REFINE_ITERATIONS);
        if v < worst.margin {
            worst = Worst { margin: v, at: x };
        }
    }
    worst
}
