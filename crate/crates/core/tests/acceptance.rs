//! Acceptance suite: ten criteria over the (n, p) matrix, one line each.
//!
//! Runs without the libtest harness so the per-criterion lines always show
//! up in `cargo test` output; exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use ricci_forge::boundary::embedded_arc_length;
use ricci_forge::curvature::{
    curvature_samples, intrinsic_sectional, principal_curvatures, ricci_components,
};
use ricci_forge::grid::uniform;
use ricci_forge::paramgen::{kappa_floor, zeta_ceiling};
use ricci_forge::verify::{
    default_grid, gauss_crosscheck, run_pipeline, Pipeline, Strictness, CHECKS, GAUSS_TOL,
};
use ricci_forge::{select_params, Overrides, RoundSphere};

const DIMS: [u32; 6] = [3, 5, 7, 9, 11, 13];
const PUNCTURES: [u32; 4] = [1, 2, 5, 10];
const GRID_POINTS: usize = 10_000;
const TIME_LIMIT: Duration = Duration::from_secs(60);

struct Case {
    n: u32,
    p: u32,
    elapsed: Duration,
    pipeline: Pipeline,
}

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(problems: Vec<String>, ok_detail: String) -> Self {
        if problems.is_empty() {
            Outcome {
                passed: true,
                detail: ok_detail,
            }
        } else {
            let shown: Vec<_> = problems.iter().take(5).cloned().collect();
            Outcome {
                passed: false,
                detail: format!("{} problem(s): {}", problems.len(), shown.join("; ")),
            }
        }
    }
}

fn check_passed(case: &Case, name: &str, problems: &mut Vec<String>) -> f64 {
    match case.pipeline.report.check(name) {
        Some(c) if c.passed => c.margin.unwrap_or(f64::NAN),
        Some(c) => {
            problems.push(format!(
                "({}, {}) {name}: margin {:?}, cause {:?}",
                case.n, case.p, c.margin, c.cause
            ));
            f64::NAN
        }
        None => {
            problems.push(format!("({}, {}) {name}: missing", case.n, case.p));
            f64::NAN
        }
    }
}

fn criterion_1(cases: &[Case]) -> Outcome {
    let mut problems = Vec::new();
    let mut slowest = Duration::ZERO;
    for case in cases {
        let report = &case.pipeline.report;
        if !report.passed() {
            let failed: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
            problems.push(format!("({}, {}) failed {failed:?}", case.n, case.p));
        }
        for spec in CHECKS.iter().filter(|s| s.strictness == Strictness::Strict) {
            let margin = report.check(spec.name).and_then(|c| c.margin);
            if !matches!(margin, Some(m) if m > 1e-12) {
                problems.push(format!(
                    "({}, {}) strict {} margin {margin:?}",
                    case.n, case.p, spec.name
                ));
            }
        }
        if case.elapsed >= TIME_LIMIT {
            problems.push(format!("({}, {}) took {:?}", case.n, case.p, case.elapsed));
        }
        slowest = slowest.max(case.elapsed);
    }
    Outcome::new(
        problems,
        format!(
            "{} cases pass, slowest {:.2} s",
            cases.len(),
            slowest.as_secs_f64()
        ),
    )
}

fn criterion_2(cases: &[Case]) -> Outcome {
    let mut problems = Vec::new();
    let mut worst = f64::INFINITY;
    for case in cases {
        let (Some(sp), Some(ps)) = (&case.pipeline.profile, &case.pipeline.params) else {
            problems.push(format!("({}, {}) no profile", case.n, case.p));
            continue;
        };
        let samples = curvature_samples(sp, case.n, ps.r0, &case.pipeline.t_grid)
            .expect("grid inside [0, pi/2]");
        let min = samples
            .iter()
            .map(|s| s.min_ricci())
            .fold(f64::INFINITY, f64::min);
        if !(min > 0.0) {
            problems.push(format!("({}, {}) min Ricci {min:e}", case.n, case.p));
        }
        for name in ["ricci_tt", "ricci_xx", "ricci_ss"] {
            check_passed(case, name, &mut problems);
        }
        worst = worst.min(min);
    }
    Outcome::new(problems, format!("min Ricci over all grids {worst:.6e}"))
}

fn criterion_3(cases: &[Case]) -> Outcome {
    let mut problems = Vec::new();
    let (mut weak, mut strict) = (f64::INFINITY, f64::INFINITY);
    for case in cases {
        weak = weak.min(check_passed(case, "corollary_2_16", &mut problems));
        strict = strict.min(check_passed(case, "corollary_2_16_strict", &mut problems));
    }
    Outcome::new(
        problems,
        format!("min (pc_sphere + cot r0) on [0, r0] = {weak:.3e}, on [r0/2, r0] = {strict:.3e}"),
    )
}

fn criterion_4(cases: &[Case]) -> Outcome {
    let mut problems = Vec::new();
    let mut worst = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    for case in cases {
        let (Some(sp), Some(ps)) = (&case.pipeline.profile, &case.pipeline.params) else {
            problems.push(format!("({}, {}) no profile", case.n, case.p));
            continue;
        };
        let c2 = ps.cot_r0().powi(2);
        for &t in case.pipeline.t_grid.iter().filter(|&&t| t <= ps.r0) {
            let (ys, ss) = intrinsic_sectional(sp, ps.r0, t).unwrap();
            worst.0 = worst.0.min(ys - c2);
            worst.1 = worst.1.min(ss - c2);
            worst.2 = worst.2.min(ss - (1.0 + c2));
        }
        for name in ["lemma_2_17", "lemma_2_18", "lemma_2_18_round_bound"] {
            check_passed(case, name, &mut problems);
        }
    }
    if !(worst.0 > 0.0 && worst.1 > 0.0 && worst.2 >= -1e-9) {
        problems.push(format!("direct grid minima {worst:?}"));
    }
    Outcome::new(
        problems,
        format!(
            "min ki_YS - cot^2 = {:.3e}, ki_SS - cot^2 = {:.3e}, ki_SS - (1 + cot^2) = {:.3e}",
            worst.0, worst.1, worst.2
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut problems = Vec::new();
    let ts = uniform(0.0, PI / 2.0, 2001);
    let mut err = 0.0f64;
    for n in 3..=13 {
        for &t in &ts {
            let (a, b, c) = ricci_components(&RoundSphere, n, t).unwrap();
            let e = (n - 1) as f64;
            err = err.max((a - e).abs()).max((b - e).abs()).max((c - e).abs());
        }
    }
    for r0 in [0.01f64, 0.0614659, 0.3, 1.0] {
        let c = 1.0 / r0.tan();
        for t in uniform(0.0, r0, 1001) {
            let (pc, ps) = principal_curvatures(&RoundSphere, r0, t).unwrap();
            let (_, ss) = intrinsic_sectional(&RoundSphere, r0, t).unwrap();
            err = err
                .max((pc + c).abs())
                .max((ps + c).abs())
                .max((ss - (1.0 + c * c)).abs());
        }
    }
    if !(err < 1e-10) {
        problems.push(format!("max deviation {err:e}"));
    }
    Outcome::new(
        problems,
        format!("max deviation from round values {err:.2e}"),
    )
}

fn criterion_6(cases: &[Case]) -> Outcome {
    let mut problems = Vec::new();
    let mut worst = 0.0f64;
    for case in cases {
        let m = check_passed(case, "gauss_crosscheck", &mut problems);
        worst = worst.max(GAUSS_TOL - m);
    }
    let ps = select_params(3, 1, &Overrides::default()).unwrap();
    let round = gauss_crosscheck(&RoundSphere, &ps, 2000);
    let round_err = GAUSS_TOL - round.margin.unwrap_or(f64::NAN);
    if !(round_err < 1e-6) {
        problems.push(format!("round sphere discrepancy {round_err:e}"));
    }
    Outcome::new(
        problems,
        format!("max relative discrepancy {worst:.2e} (round sphere {round_err:.2e})"),
    )
}

fn criterion_7(cases: &[Case]) -> Outcome {
    let mut problems = Vec::new();
    let mut worst = (0.0f64, 0.0f64);
    for case in cases {
        check_passed(case, "pole_distance", &mut problems);
        check_passed(case, "waist_tau", &mut problems);
        let (Some(bm), Some(ps)) = (&case.pipeline.boundary, &case.pipeline.params) else {
            problems.push(format!("({}, {}) no boundary", case.n, case.p));
            continue;
        };
        let length_err = (embedded_arc_length(ps.r0, 4096) - PI * ps.r0.sin()).abs();
        if !(length_err < 1e-8) {
            problems.push(format!(
                "({}, {}) pole distance off by {length_err:e}",
                case.n, case.p
            ));
        }
        if bm.omega != ps.r0.cos() || !(bm.omega < 1.0) {
            problems.push(format!("({}, {}) omega = {}", case.n, case.p, bm.omega));
        }
        let tau = ps.squash * ps.cot_r0() * (ps.r0 + ps.r0.powi(4) / ps.zeta).sin();
        let peak = bm
            .samples
            .iter()
            .map(|s| s.b)
            .fold(f64::NEG_INFINITY, f64::max);
        let tau_err = (tau - peak).abs().max((tau - bm.tau).abs());
        if !(tau_err < 1e-6) {
            problems.push(format!("({}, {}) tau off by {tau_err:e}", case.n, case.p));
        }
        worst = (worst.0.max(length_err), worst.1.max(tau_err));
    }
    Outcome::new(
        problems,
        format!(
            "max pole-distance error {:.2e}, max waist error {:.2e}",
            worst.0, worst.1
        ),
    )
}

fn criterion_8(cases: &[Case]) -> Outcome {
    let mut problems = Vec::new();
    let mut narrowest = f64::INFINITY;
    for case in cases {
        check_passed(case, "prop_1_12_chain", &mut problems);
        check_passed(case, "rho_interval", &mut problems);
        check_passed(case, "omega_above_waist_power", &mut problems);
        let (Some(b), Some(ps)) = (&case.pipeline.report.boundary, &case.pipeline.params) else {
            problems.push(format!("({}, {}) no boundary summary", case.n, case.p));
            continue;
        };
        let e = (case.n - 2) as f64 / (case.n - 1) as f64;
        let links = [
            b.tau.powf(e) <= b.tau.sqrt() * (1.0 + 1e-15),
            b.tau.sqrt() < ps.squash.sqrt(),
            ps.squash.sqrt() <= 0.1f64.sqrt(),
            0.1f64.sqrt() < 0.5,
        ];
        if links.iter().any(|ok| !ok) {
            problems.push(format!("({}, {}) chain links {links:?}", case.n, case.p));
        }
        if !(b.rho_lo < b.rho_hi && b.rho_hi <= 0.5) {
            problems.push(format!(
                "({}, {}) rho interval ({}, {})",
                case.n, case.p, b.rho_lo, b.rho_hi
            ));
        }
        narrowest = narrowest.min(b.rho_hi - b.rho_lo);
    }
    Outcome::new(
        problems,
        format!("chain holds everywhere; narrowest rho interval {narrowest:.4}"),
    )
}

fn criterion_9(cases: &[Case]) -> Outcome {
    let mut problems = Vec::new();
    for case in cases {
        for name in [
            "c1_join_psi",
            "c1_join_b",
            "lemma_2_13a",
            "lemma_2_13b",
            "lemma_2_13c",
            "corollary_2_14_concavity",
            "derivative_consistency_profile_c1",
            "derivative_consistency_smooth",
        ] {
            check_passed(case, name, &mut problems);
        }
        if let Some(c1) = &case.pipeline.profile_c1 {
            let jumps = c1.junction_jumps();
            if !jumps.iter().all(|&(v, d)| v < 1e-9 && d < 1e-9) {
                problems.push(format!("({}, {}) junction jumps {jumps:?}", case.n, case.p));
            }
        }
    }
    Outcome::new(
        problems,
        "C1 joins, smoothing windows, concavity and FD consistency hold".into(),
    )
}

fn criterion_10() -> Outcome {
    let mut problems = Vec::new();
    let defaults = select_params(3, 1, &Overrides::default()).unwrap();
    let kappa = 1.1 * kappa_floor(defaults.squash);
    assert_eq!(kappa, defaults.kappa);
    let controls = [
        (
            "zeta <= kappa",
            Overrides {
                zeta: Some(kappa),
                ..Default::default()
            },
            "def_2_1c",
            "Definition 2.1(c)",
        ),
        (
            "zeta >= 3 R0 kappa^3 / 4",
            Overrides {
                zeta: Some(zeta_ceiling(defaults.squash, kappa)),
                ..Default::default()
            },
            "def_2_1c",
            "Definition 2.1(c)",
        ),
        (
            "r0 >= threshold",
            Overrides {
                r0: Some(defaults.radius_bound()),
                ..Default::default()
            },
            "def_2_8_r0",
            "Definition 2.8",
        ),
        (
            "mu >= mu0",
            Overrides {
                mu: Some(defaults.mu0),
                ..Default::default()
            },
            "lemma_2_13_mu_range",
            "Lemma 2.13",
        ),
    ];
    let grid = default_grid(1000).unwrap();
    for (label, ov, check, anchor) in controls {
        let report = run_pipeline(3, 1, &ov, &grid).unwrap().report;
        let c = report.check(check).unwrap();
        let names_clause =
            c.cause.as_deref().is_some_and(|s| s.contains(anchor)) && c.anchor.contains(anchor);
        if report.passed() || c.passed || !names_clause {
            problems.push(format!(
                "{label}: overall {:?}, {check} = {c:?}",
                report.overall
            ));
        }
    }
    Outcome::new(
        problems,
        "all four invalid cascades rejected with the right clause".into(),
    )
}

fn main() {
    let grid = default_grid(GRID_POINTS).expect("static grid");
    let mut cases = Vec::new();
    for &n in &DIMS {
        for &p in &PUNCTURES {
            let start = Instant::now();
            let pipeline = run_pipeline(n, p, &Overrides::default(), &grid).expect("valid inputs");
            cases.push(Case {
                n,
                p,
                elapsed: start.elapsed(),
                pipeline,
            });
        }
    }

    let results = [
        ("full certification", criterion_1(&cases)),
        ("Ricci positivity", criterion_2(&cases)),
        ("boundary principal curvature bound", criterion_3(&cases)),
        ("intrinsic sectional bounds", criterion_4(&cases)),
        ("round-sphere oracle", criterion_5()),
        ("Gauss cross-check", criterion_6(&cases)),
        ("pole distance and waist", criterion_7(&cases)),
        ("rho-interval arithmetic", criterion_8(&cases)),
        ("profile regularity", criterion_9(&cases)),
        ("negative controls", criterion_10()),
    ];

    println!(
        "\nacceptance suite: {} (n, p) cases at grid {GRID_POINTS}",
        cases.len()
    );
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{tag}] {name}: {}", i + 1, outcome.detail);
        failed += usize::from(!outcome.passed);
    }
    println!(
        "acceptance: {} passed, {failed} failed\n",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
