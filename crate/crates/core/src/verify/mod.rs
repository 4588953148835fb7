//! End-to-end verification: build the construction for `(n, p)`, then
//! re-check every inequality it relies on and collect the margins in a
//! [`VerificationReport`].
//!
//! A failing construction step does not abort the run: the check naming the
//! failed clause is marked failed with the error as its cause, and every
//! check that needed the missing artefact is reported as skipped.

pub mod checks;
pub mod report;

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use checks::{
    check_for_clause, spec, worst_on, CheckResult, CheckSpec, Strictness, Worst, CHECKS,
    STRICT_FLOOR,
};
pub use report::{BoundarySummary, Overall, VerificationReport, SCHEMA};

use crate::boundary::{
    arc_length, boundary_metric, embedded_arc_length, rescaled_sample, rho_interval, t_of_s,
    BoundaryMetric,
};
use crate::curvature::{intrinsic_sectional, rescale_principal, ricci_components};
use crate::error::{Error, Result};
use crate::grid::{merge, refined, uniform, GridSpec};
use crate::paramgen::{
    kappa_floor, lemma_margin, select_params, zeta_ceiling, LemmaId, Overrides, ParamSet,
};
use crate::profile::assembled::JUNCTION_TOL;
use crate::profile::{
    assemble_profile, build_bridge_theta, smooth_profile, ProfileC1, SmoothProfile, Warping,
};

/// Random points per finite-difference consistency check.
pub const FD_SAMPLES: usize = 1000;
pub const FD_SEED: u64 = 0x5eed_2024;
/// Points closer than this to a junction are not differenced.
pub const FD_MIN_DISTANCE: f64 = 1e-6;
pub const FD_TOL: f64 = 1e-5;
pub const GAUSS_TOL: f64 = 1e-4;
pub const ANGLE_TOL: f64 = 1e-8;
pub const CLOSURE_TOL: f64 = 1e-4;
pub const POLE_TOL: f64 = 1e-8;
pub const WAIST_TOL: f64 = 1e-6;
/// Slack allowed below `1 + cot^2 r0` for the round comparison bound.
pub const ROUND_BOUND_SLACK: f64 = 1e-9;
const GAMMA_SCAN_POINTS: usize = 100_001;
const LENGTH_SEGMENTS: usize = 4096;
const LEMMA_LOG_POINTS: usize = 60;

/// The default sampling grid: `points` nodes on `[1e-6, pi/2]`.
pub fn default_grid(points: usize) -> Result<GridSpec> {
    GridSpec::new(points, 1e-6, FRAC_PI_2)
}

/// Everything a run produced; later stages are `None` when an earlier one
/// failed.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub params: Option<ParamSet>,
    pub profile_c1: Option<ProfileC1>,
    pub profile: Option<SmoothProfile>,
    pub boundary: Option<BoundaryMetric>,
    /// The `t` nodes the profile checks were sampled on.
    pub t_grid: Vec<f64>,
    pub report: VerificationReport,
}

pub fn run_verification(
    n: u32,
    p: u32,
    overrides: &Overrides,
    grid: &GridSpec,
) -> Result<VerificationReport> {
    run_pipeline(n, p, overrides, grid).map(|pl| pl.report)
}

/// Builds and verifies the construction. Only invalid inputs (dimension,
/// puncture count, grid) are errors; everything else ends up in the report.
pub fn run_pipeline(n: u32, p: u32, overrides: &Overrides, grid: &GridSpec) -> Result<Pipeline> {
    validate_inputs(n, p, grid)?;
    let mut rec = Recorder::default();
    let mut art = Artifacts::default();
    if let Err(e) = build_and_check(n, p, overrides, grid, &mut rec, &mut art) {
        rec.abort(&e);
    }
    let boundary = art.boundary.as_ref().map(BoundarySummary::from_metric);
    let report = VerificationReport::new(n, p, grid.points, art.params, boundary, rec.finish());
    Ok(Pipeline {
        params: art.params,
        profile_c1: art.profile_c1,
        profile: art.profile,
        boundary: art.boundary,
        t_grid: art.t_grid,
        report,
    })
}

fn validate_inputs(n: u32, p: u32, grid: &GridSpec) -> Result<()> {
    if n < 3 {
        return Err(Error::config(format!(
            "dimension n must be at least 3, got {n}"
        )));
    }
    if p < 1 {
        return Err(Error::config("at least one puncture is required"));
    }
    grid.validate()?;
    if grid.lo < 0.0 || grid.hi > FRAC_PI_2 {
        return Err(Error::config(format!(
            "grid [{}, {}] must lie inside [0, pi/2]",
            grid.lo, grid.hi
        )));
    }
    Ok(())
}

#[derive(Default)]
struct Artifacts {
    params: Option<ParamSet>,
    profile_c1: Option<ProfileC1>,
    profile: Option<SmoothProfile>,
    boundary: Option<BoundaryMetric>,
    t_grid: Vec<f64>,
}

#[derive(Default)]
struct Recorder {
    results: Vec<CheckResult>,
    upstream: Option<String>,
}

impl Recorder {
    fn measure(&mut self, name: &str, margin: f64, at: Option<f64>) {
        self.results
            .push(CheckResult::measured(spec(name), margin, at));
    }

    fn worst(&mut self, name: &str, w: Worst) {
        self.measure(name, w.margin, Some(w.at));
    }

    fn push(&mut self, result: CheckResult) {
        self.results.push(result);
    }

    fn fail(&mut self, name: &str, cause: String) {
        self.results.push(CheckResult::failed(spec(name), cause));
    }

    fn abort(&mut self, err: &Error) {
        if let Some(clause) = err.clause() {
            self.fail(check_for_clause(clause), err.to_string());
        }
        self.upstream = Some(err.to_string());
    }

    fn finish(self) -> Vec<CheckResult> {
        let upstream = self.upstream.as_deref().unwrap_or("not evaluated");
        CHECKS
            .iter()
            .map(|s| {
                self.results
                    .iter()
                    .rev()
                    .find(|r| r.name == s.name)
                    .cloned()
                    .unwrap_or_else(|| CheckResult::skipped(s, upstream))
            })
            .collect()
    }
}

fn build_and_check(
    n: u32,
    p: u32,
    overrides: &Overrides,
    grid: &GridSpec,
    rec: &mut Recorder,
    art: &mut Artifacts,
) -> Result<()> {
    let points = grid.points;
    let ps = select_params(n, p, overrides)?;
    art.params = Some(ps);
    cascade_checks(&ps, points, rec)?;

    let bump = ps.bump()?;
    let bridge = build_bridge_theta(&ps)?;
    let c1 = assemble_profile(&ps, &bump, &bridge)?;
    art.profile_c1 = Some(c1);
    c1_checks(&c1, points, rec);
    rec.worst(
        "derivative_consistency_profile_c1",
        derivative_consistency(&c1, &c1.features(), FD_SEED),
    );

    let sp = smooth_profile(&c1, ps.mu)?;
    art.profile = Some(sp);
    let tg = merge(vec![
        refined(0.0, FRAC_PI_2, points, &sp.features()),
        grid.nodes(),
    ]);
    smooth_checks(&sp, &tg, points, rec);
    rec.worst(
        "derivative_consistency_smooth",
        derivative_consistency(&sp, &sp.features(), FD_SEED),
    );
    curvature_checks(&sp, n, &tg, rec);
    rec.push(gauss_crosscheck(&sp, &ps, points));
    rec.push(angle_identity(ps.r0, points));
    art.t_grid = tg;

    let bm = boundary_metric(&sp, &ps, grid)?;
    boundary_checks(&sp, &ps, &bm, rec)?;
    art.boundary = Some(bm);
    Ok(())
}

fn within(ts: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    ts.iter().copied().filter(|&t| t >= lo && t <= hi).collect()
}

fn min_worst(ws: &[Worst]) -> Worst {
    ws.iter()
        .copied()
        .min_by(|a, b| a.margin.total_cmp(&b.margin))
        .expect("non-empty")
}

/// `(0, r0]` sampled uniformly plus a geometric tail towards 0.
fn lemma_grid(r0: f64, points: usize) -> Vec<f64> {
    let tail =
        (0..LEMMA_LOG_POINTS).map(|k| r0 * 10f64.powf(-6.0 * k as f64 / LEMMA_LOG_POINTS as f64));
    let mut xs = merge(vec![uniform(0.0, r0, points), tail.collect()]);
    xs.retain(|&x| x > 0.0);
    xs
}

fn cascade_checks(ps: &ParamSet, points: usize, rec: &mut Recorder) -> Result<()> {
    rec.measure("def_2_1a", 0.1 - ps.squash, None);
    rec.measure("def_2_1b", ps.kappa - kappa_floor(ps.squash), None);
    rec.measure(
        "def_2_1c",
        (ps.zeta - ps.kappa).min(zeta_ceiling(ps.squash, ps.kappa) - ps.zeta),
        None,
    );
    rec.measure("def_2_7_lambda", ps.bump_length - 1.0 / ps.squash, None);

    // Re-sampled here rather than trusting the stored suprema.
    let bump = ps.bump()?;
    let xs = uniform(-0.5, bump.length + 0.5, GAMMA_SCAN_POINTS);
    let d1 = worst_on(&xs, |x| ps.squash - bump.eval(x).d1.abs());
    let d2 = worst_on(&xs, |x| ps.squash - bump.eval(x).d2.abs());
    rec.worst("gamma_derivative_bounds", min_worst(&[d1, d2]));

    rec.measure("def_2_8_r0", ps.radius_bound() - ps.r0, None);
    rec.measure("disc_disjointness", PI / ps.p as f64 - ps.r0, None);

    let consts = ps.lemma_consts();
    let xs = lemma_grid(ps.r0, points);
    for id in LemmaId::ALL {
        let w = worst_on(&xs, |x| lemma_margin(id, x, &consts).unwrap_or(f64::NAN));
        rec.worst(id.check_name(), w);
    }

    let core = ps.core();
    rec.measure("inequality_star", core.star_slack(ps.psi), Some(ps.psi));

    let b = ps.outer_junction();
    let shift = ps.shift();
    let budget = uniform(b, ps.r0, points);
    let iota = worst_on(&budget, |t| 1.0 - t.tan() / (t + shift).tan() - ps.iota);
    rec.worst("lemma_2_11_iota", iota);

    let tan_r0 = ps.r0.tan();
    let cot2 = ps.cot_r0().powi(2);
    let third = worst_on(&budget, |t| {
        let (ct, cs) = (1.0 / t.tan(), 1.0 / (t + shift).tan());
        (ct - cs) / (1.0 + ct)
    });
    let fourth = worst_on(&budget, |t| {
        ((1.0 + cot2) * t.tan() / (t + shift).tan() - cot2) / (tan_r0 * (1.0 + cot2))
    });
    let parts = [
        (ps.psi, None),
        (ps.iota / tan_r0, None),
        (third.margin, Some(third.at)),
        (fourth.margin, Some(fourth.at)),
    ];
    let (margin, at) = parts
        .into_iter()
        .map(|(bound, at)| (bound - ps.mu0, at))
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .expect("four bounds");
    rec.measure("lemma_2_12_mu0", margin, at);
    rec.measure("lemma_2_13_mu_range", ps.mu.min(ps.mu0 - ps.mu), None);
    Ok(())
}

fn c1_checks(c1: &ProfileC1, points: usize, rec: &mut Recorder) {
    let (psi, b) = (c1.bridge.psi, c1.bridge.b);
    let [(v0, s0), (v1, s1)] = c1.junction_jumps();
    rec.measure("c1_join_psi", JUNCTION_TOL - v0.max(s0), Some(psi));
    rec.measure("c1_join_b", JUNCTION_TOL - v1.max(s1), Some(b));

    let mut bridge_grid = refined(psi, b, points, &[c1.bridge.ramp_end()]);
    bridge_grid.retain(|&t| t > psi && t < b);
    let w = worst_on(&bridge_grid, |t| {
        let th = c1.bridge.eval(t);
        (-th.v).min(-th.d2)
    });
    rec.worst("bridge_concavity", w);
    rec.worst(
        "lemma_2_9iii",
        worst_on(&bridge_grid, |t| c1.inner_concavity_margin(t)),
    );

    let r0 = c1.params.r0;
    let mut outer = refined(b, FRAC_PI_2, points, &[r0, r0 * (1.0 + c1.bump.length)]);
    outer.retain(|&t| t > b);
    // -R''/R > 0 is R'' < 0 with the scale of R divided out.
    rec.worst("lemma_2_10", worst_on(&outer, |t| c1.neg_curv_ratio(t)));

    let mut all = refined(0.0, FRAC_PI_2, points, &c1.features());
    all.retain(|&t| t > 0.0);
    rec.worst(
        "profile_positive",
        worst_on(&all, |t| c1.jet(t).v / t.sin()),
    );
}

fn window_grid(sp: &SmoothProfile, points: usize) -> Vec<f64> {
    let [_, (b, end)] = sp.windows();
    let near = (0..64)
        .map(|k| b + sp.width * 2f64.powf(k as f64 / 4.0 - 2.0))
        .filter(|&t| t < end);
    merge(vec![
        uniform(b, end, (points / 10).max(101)),
        near.collect(),
    ])
}

fn smooth_checks(sp: &SmoothProfile, tg: &[f64], points: usize, rec: &mut Recorder) {
    let ps = &sp.base.params;
    let (b, r0, mu) = (sp.base.bridge.b, ps.r0, sp.mu);

    rec.worst(
        "lemma_2_13a",
        worst_on(&within(tg, 0.0, b), |t| {
            sp.neg_curv_ratio(t) - 2.0 / (r0 * r0)
        }),
    );
    let wg = window_grid(sp, points);
    rec.worst(
        "lemma_2_13b",
        worst_on(&wg, |t| sp.neg_curv_ratio(t) - (1.0 - mu)),
    );
    let [(l0, l1), _] = sp.windows();
    let both = merge(vec![uniform(l0.max(0.0), l1, 101), wg.clone()]);
    rec.worst(
        "lemma_2_13c",
        worst_on(&both, |t| mu - sp.log_slope_gap(t).abs()),
    );

    rec.worst(
        "corollary_2_14_concavity",
        worst_on(tg, |t| sp.neg_curv_ratio(t)),
    );
    let tail = merge(vec![within(tg, b, r0), wg]);
    rec.worst(
        "corollary_2_14_ratio",
        worst_on(&tail, |t| sp.neg_curv_ratio(t) - (1.0 - mu)),
    );

    let inner = within(tg, 0.0, r0);
    rec.worst("lemma_2_15", worst_on(&inner, |t| sp.slope_tan_gap(t)));

    let eps = ps.shift();
    let below_sine = worst_on(&inner, |t| sp.sine_gap(t));
    let below_squash = worst_on(&within(tg, b, FRAC_PI_2), |t| ps.squash - sp.jet(t).v);
    // On [b, r0] the outer formula is R0 sin(t + eps) exactly, so only the
    // smoothing correction can push R above it.
    let below_shifted = worst_on(&tail, |t| {
        ps.squash * (t + eps).sin() - sp.base.outer_jet(t).v - sp.outer_excess(t)
    });
    rec.worst(
        "profile_below_sine",
        min_worst(&[below_sine, below_squash, below_shifted]),
    );

    rec.worst(
        "profile_slope_range",
        worst_on(&inner, |t| {
            let d1 = sp.jet(t).d1;
            d1.min(1.0 - d1)
        }),
    );
}

fn curvature_checks(sp: &SmoothProfile, n: u32, tg: &[f64], rec: &mut Recorder) {
    let ric = |t: f64| ricci_components(sp, n, t).unwrap_or((f64::NAN, f64::NAN, f64::NAN));
    rec.worst("ricci_tt", worst_on(tg, |t| ric(t).0));
    rec.worst("ricci_xx", worst_on(tg, |t| ric(t).1));
    rec.worst("ricci_ss", worst_on(tg, |t| ric(t).2));

    let r0 = sp.base.params.r0;
    let cot = 1.0 / r0.tan();
    let c2 = cot * cot;
    let bg = within(tg, 0.0, r0);
    // The circle family sits at -cot r0 identically; only the sphere family
    // -(R'/R) tan t cot r0 carries information.
    let sphere_gap = |t: f64| cot * sp.slope_tan_gap(t);
    rec.worst("corollary_2_16", worst_on(&bg, sphere_gap));
    rec.worst(
        "corollary_2_16_strict",
        worst_on(&within(tg, 0.5 * r0, r0), sphere_gap),
    );

    let ki = |t: f64| intrinsic_sectional(sp, r0, t).unwrap_or((f64::NAN, f64::NAN));
    rec.worst("lemma_2_17", worst_on(&bg, |t| ki(t).0 - c2));
    rec.worst("lemma_2_18", worst_on(&bg, |t| ki(t).1 - c2));
    rec.worst(
        "lemma_2_18_round_bound",
        worst_on(&bg, |t| ki(t).1 - (1.0 + c2) + ROUND_BOUND_SLACK),
    );
    rec.worst(
        "rescaled_principal_bound",
        worst_on(&bg, |t| rescale_principal(sphere_gap(t), r0)),
    );
}

fn boundary_checks(
    sp: &SmoothProfile,
    ps: &ParamSet,
    bm: &BoundaryMetric,
    rec: &mut Recorder,
) -> Result<()> {
    let r0 = ps.r0;
    let cot = ps.cot_r0();
    let len = bm.pole_distance();

    // One-sided second-order slopes at both poles, with a step inside the
    // inner piece.
    let h = 1e-3 * ps.psi * cot;
    let b = |s: f64| rescaled_sample(sp, r0, s).map(|x| x.b);
    let start = (-3.0 * b(0.0)? + 4.0 * b(h)? - b(2.0 * h)?) / (2.0 * h);
    let end = (3.0 * b(len)? - 4.0 * b(len - h)? + b(len - 2.0 * h)?) / (2.0 * h);
    let (e0, e1) = ((start - 1.0).abs(), (end + 1.0).abs());
    rec.measure(
        "smooth_closure",
        CLOSURE_TOL - e0.max(e1),
        Some(if e0 >= e1 { 0.0 } else { len }),
    );

    let embedded = embedded_arc_length(r0, LENGTH_SEGMENTS) * cot;
    rec.measure("pole_distance", POLE_TOL - (embedded - len).abs(), None);

    let tau_formula = ps.squash * cot * (r0 + ps.shift()).sin();
    let peak = bm
        .samples
        .iter()
        .max_by(|x, y| x.b.total_cmp(&y.b))
        .ok_or_else(|| Error::domain("boundary metric has no samples"))?;
    let err = (bm.tau - tau_formula).abs().max((peak.b - bm.tau).abs());
    rec.measure("waist_tau", WAIST_TOL - err, Some(peak.s));
    rec.measure("tau_below_r0", ps.squash - bm.tau, None);
    rec.measure(
        "omega_above_waist_power",
        bm.omega - bm.tau.powf(bm.exponent),
        None,
    );

    // tau^e <= sqrt(tau) < sqrt(R0) <= 1/sqrt(10) < 1/2. The first link is
    // written as sqrt(tau) (1 - tau^(e - 1/2)) so it is exactly 0 at n = 3.
    let st = bm.tau.sqrt();
    let sr = ps.squash.sqrt();
    let tenth = 0.1f64.sqrt();
    let weak = [
        -st * ((bm.exponent - 0.5) * bm.tau.ln()).exp_m1(),
        tenth - sr,
    ];
    let strict = [sr - st, 0.5 - tenth];
    let margin = weak
        .iter()
        .copied()
        .chain(strict.iter().map(|m| m - STRICT_FLOOR))
        .fold(f64::INFINITY, f64::min);
    rec.measure("prop_1_12_chain", margin, None);

    match rho_interval(bm, bm.n) {
        Ok((lo, hi)) => rec.measure("rho_interval", hi - lo, None),
        Err(e) => rec.fail("rho_interval", e.to_string()),
    }

    let sectional = bm
        .samples
        .iter()
        .filter(|s| s.s > 0.0 && s.s < len)
        .map(|s| Worst {
            margin: s.k_rad.min(s.k_tan) - 1.0,
            at: s.s,
        })
        .collect::<Vec<_>>();
    if sectional.is_empty() {
        rec.fail(
            "boundary_sectional_rescaled",
            "no interior boundary samples".into(),
        );
    } else {
        rec.worst("boundary_sectional_rescaled", min_worst(&sectional));
    }
    Ok(())
}

/// Compares the closed-form `R'` and `R''` with central differences at
/// [`FD_SAMPLES`] seeded random points, skipping points within
/// [`FD_MIN_DISTANCE`] of a junction. Errors are relative to
/// `max(|exact|, |R|)`; the margin is `FD_TOL - worst error`.
pub fn derivative_consistency<W: Warping + ?Sized>(r: &W, junctions: &[f64], seed: u64) -> Worst {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = Worst {
        margin: f64::INFINITY,
        at: f64::NAN,
    };
    for _ in 0..FD_SAMPLES {
        let t: f64 = rng.gen_range(0.0..FRAC_PI_2);
        let dist = junctions
            .iter()
            .chain(&[0.0, FRAC_PI_2])
            .map(|j| (t - j).abs())
            .fold(f64::INFINITY, f64::min);
        if dist < FD_MIN_DISTANCE {
            continue;
        }
        let h = 1e-4f64.min(dist / 20.0);
        let (lo, mid, hi) = (r.jet(t - h), r.jet(t), r.jet(t + h));
        let e1 = ((hi.v - lo.v) / (2.0 * h) - mid.d1).abs() / mid.d1.abs().max(mid.v.abs());
        let e2 = ((hi.d1 - lo.d1) / (2.0 * h) - mid.d2).abs() / mid.d2.abs().max(mid.v.abs());
        let m = FD_TOL - e1.max(e2);
        if m < worst.margin || m.is_nan() {
            worst = Worst { margin: m, at: t };
            if m.is_nan() {
                break;
            }
        }
    }
    worst
}

/// Compares the closed-form intrinsic curvatures of the boundary with the
/// warped-product formulas `-B''/B` and `(1 - B'^2)/B^2` applied to
/// central differences of `B(s) = R(t(s))`, on the interior of the arc away
/// from the smoothing windows.
pub fn gauss_crosscheck<W: Warping + ?Sized>(
    r: &W,
    params: &ParamSet,
    points: usize,
) -> CheckResult {
    let spec = spec("gauss_crosscheck");
    let r0 = params.r0;
    let len = arc_length(r0);
    let edge = 0.01f64
        .max(10.0 * (params.outer_junction() + params.mu))
        .min(0.25 * len);
    let h = 1e-4 * r0.sin();
    let bval = |s: f64| t_of_s(r0, s).map(|t| r.jet(t).v);
    let discrepancy = |s: f64| -> Result<f64> {
        let (bm, b0, bp) = (bval(s - h)?, bval(s)?, bval(s + h)?);
        let d1 = (bp - bm) / (2.0 * h);
        let d2 = (bp - 2.0 * b0 + bm) / (h * h);
        let (ys, ss) = intrinsic_sectional(r, r0, t_of_s(r0, s)?)?;
        let fd_ys = -d2 / b0;
        let fd_ss = (1.0 - d1 * d1) / (b0 * b0);
        Ok(((fd_ys - ys) / ys).abs().max(((fd_ss - ss) / ss).abs()))
    };
    let mut worst = (0.0f64, f64::NAN);
    for s in uniform(edge, len - edge, points) {
        match discrepancy(s) {
            Ok(e) if e.is_nan() => {
                return CheckResult::failed(spec, format!("non-finite discrepancy at s = {s}"))
            }
            Ok(e) if e > worst.0 || worst.1.is_nan() => worst = (e, s),
            Ok(_) => {}
            Err(e) => return CheckResult::failed(spec, e.to_string()),
        }
    }
    CheckResult::measured(spec, GAUSS_TOL - worst.0, Some(worst.1))
}

/// Checks `(dt/ds)^2 + cot^2 r0 tan^2 t = 1` along the boundary arc, with
/// `dt/ds` from fourth-order central differences of `t(s)`.
pub fn angle_identity(r0: f64, points: usize) -> CheckResult {
    let spec = spec("angle_identity");
    let len = arc_length(r0);
    let h = 1e-3 * r0.sin();
    let c2 = (1.0 / r0.tan()).powi(2);
    let err = |s: f64| -> Result<f64> {
        let t = |x: f64| t_of_s(r0, x);
        let d =
            (-t(s + 2.0 * h)? + 8.0 * t(s + h)? - 8.0 * t(s - h)? + t(s - 2.0 * h)?) / (12.0 * h);
        let ts = t(s)?;
        Ok((d * d + c2 * ts.tan().powi(2) - 1.0).abs())
    };
    let mut worst = (0.0f64, f64::NAN);
    for s in uniform(2.0 * h, len - 2.0 * h, points) {
        match err(s) {
            Ok(e) if !(e <= worst.0) => worst = (e, s),
            Ok(_) => {}
            Err(e) => return CheckResult::failed(spec, e.to_string()),
        }
    }
    CheckResult::measured(spec, ANGLE_TOL - worst.0, Some(worst.1))
}
