//! The constant cascade: squash factor, kappa, zeta, cutoff length, disc
//! radius, junction point, smoothing budget.
//!
//! The five small-`x` inequalities that bound the disc radius only come with
//! existence proofs, so their validity thresholds are located numerically: a
//! dense scan finds the first violation, bisection refines it, and a 0.9
//! safety factor keeps the downstream strict inequalities clear of
//! round-off.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Clause, Error, Result};
use crate::grid::{uniform, GridSpec};
use crate::profile::bump::{build_gamma, BumpFunction};

/// Default squash factor.
pub const DEFAULT_SQUASH: f64 = 0.1;
/// Factor applied to every located threshold and to the disc radius.
pub const SAFETY: f64 = 0.9;
/// Minimum resolution for threshold scans.
pub const MIN_SCAN_POINTS: usize = 10_000;
/// Relative accuracy of threshold bisection.
pub const BISECTION_REL_TOL: f64 = 1e-8;
/// Points used when minimising the iota / mu0 integrands over `[b, r0]`.
pub const BUDGET_GRID_POINTS: usize = 100_000;
/// Fraction of the `psi -> 0` slack of (*) that the chosen `psi` must keep.
pub const STAR_SLACK_FRACTION: f64 = 1e-3;
const MAX_DYADIC_DEPTH: u32 = 60;

/// The seven small-`x` inequalities behind the disc radius bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LemmaId {
    L2_2,
    L2_3,
    L2_4,
    L2_5,
    L2_6i,
    L2_6ii,
    L2_6iii,
}

impl LemmaId {
    pub const ALL: [LemmaId; 7] = [
        LemmaId::L2_2,
        LemmaId::L2_3,
        LemmaId::L2_4,
        LemmaId::L2_5,
        LemmaId::L2_6i,
        LemmaId::L2_6ii,
        LemmaId::L2_6iii,
    ];

    pub fn clause(self) -> Clause {
        match self {
            LemmaId::L2_2 => Clause::Lemma2_2,
            LemmaId::L2_3 => Clause::Lemma2_3,
            LemmaId::L2_4 => Clause::Lemma2_4,
            LemmaId::L2_5 => Clause::Lemma2_5,
            LemmaId::L2_6i | LemmaId::L2_6ii | LemmaId::L2_6iii => Clause::Lemma2_6,
        }
    }

    pub fn anchor(self) -> &'static str {
        match self {
            LemmaId::L2_2 => "Lemma 2.2",
            LemmaId::L2_3 => "Lemma 2.3",
            LemmaId::L2_4 => "Lemma 2.4",
            LemmaId::L2_5 => "Lemma 2.5",
            LemmaId::L2_6i => "Lemma 2.6(i)",
            LemmaId::L2_6ii => "Lemma 2.6(ii)",
            LemmaId::L2_6iii => "Lemma 2.6(iii)",
        }
    }

    pub fn check_name(self) -> &'static str {
        match self {
            LemmaId::L2_2 => "lemma_2_2",
            LemmaId::L2_3 => "lemma_2_3",
            LemmaId::L2_4 => "lemma_2_4",
            LemmaId::L2_5 => "lemma_2_5",
            LemmaId::L2_6i => "lemma_2_6i",
            LemmaId::L2_6ii => "lemma_2_6ii",
            LemmaId::L2_6iii => "lemma_2_6iii",
        }
    }

    /// Order at which `rhs - lhs` vanishes as `x -> 0`.
    pub fn vanishing_order(self) -> i32 {
        match self {
            LemmaId::L2_5 | LemmaId::L2_6ii => 0,
            _ => 2,
        }
    }

    fn finite_at_zero(self) -> bool {
        matches!(self, LemmaId::L2_4 | LemmaId::L2_6i | LemmaId::L2_6ii)
    }
}

/// Whatever subset of `(R0, kappa, zeta)` is known so far.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LemmaConsts {
    pub squash: Option<f64>,
    pub kappa: Option<f64>,
    pub zeta: Option<f64>,
}

impl LemmaConsts {
    pub fn new(squash: f64, kappa: f64, zeta: f64) -> Self {
        LemmaConsts {
            squash: Some(squash),
            kappa: Some(kappa),
            zeta: Some(zeta),
        }
    }

    fn get(v: Option<f64>, name: &str, id: LemmaId) -> Result<f64> {
        v.ok_or_else(|| Error::config(format!("{} needs {name}", id.anchor())))
    }
}

/// Both sides of the named inequality at `x`, oriented so the lemma
/// asserts `lhs < rhs`.
pub fn lemma_bound_eval(id: LemmaId, x: f64, consts: &LemmaConsts) -> Result<(f64, f64)> {
    if !(x.is_finite() && (0.0..=FRAC_PI_4).contains(&x)) || (x == 0.0 && !id.finite_at_zero()) {
        return Err(Error::domain(format!(
            "{} evaluated at x = {x}, outside its domain",
            id.anchor()
        )));
    }
    let kappa = || LemmaConsts::get(consts.kappa, "kappa", id);
    let zeta = || LemmaConsts::get(consts.zeta, "zeta", id);
    let squash = || LemmaConsts::get(consts.squash, "R0", id);
    let x2 = x * x;
    let x4 = x2 * x2;
    let sides = match id {
        LemmaId::L2_2 => {
            let (k, z) = (kappa()?, zeta()?);
            let base = x2 / k;
            ((base + x4 / z).tan() / base.tan(), 1.0 + x.tan().powi(2))
        }
        LemmaId::L2_3 => {
            let z = zeta()?;
            ((x + x4 / z).sin() / x.tan(), 1.0)
        }
        LemmaId::L2_4 => {
            let k = kappa()?;
            (0.5 * x2 + (x2 / k).tan().powi(2), x.tan().powi(2))
        }
        LemmaId::L2_5 => {
            let (r, k, z) = (squash()?, kappa()?, zeta()?);
            let lhs = r / z * (1.0 - x * x2 * r / z).powi(-2);
            (lhs, (x2 / k + x4 / z).tan() / x2)
        }
        LemmaId::L2_6i => {
            let (r, k, z) = (squash()?, kappa()?, zeta()?);
            (r * (x2 / k + x4 / z).sin(), 0.5 * x * (2.0 * x / k).sin())
        }
        LemmaId::L2_6ii => {
            let (r, k, z) = (squash()?, kappa()?, zeta()?);
            (r * (x2 / k + x4 / z).cos(), (2.0 * x / k).cos())
        }
        LemmaId::L2_6iii => {
            let (r, k, z) = (squash()?, kappa()?, zeta()?);
            let arg = x2 / k + x4 / z;
            let lhs = (0.5 * x * (2.0 * x / k).sin() - r * arg.sin()) / (x2 / k);
            (lhs, (2.0 * x / k).cos() - r * arg.cos())
        }
    };
    Ok(sides)
}

/// `(rhs - lhs) / x^order`: the lemma's slack normalised by its leading
/// order, so margins near `x = 0` are comparable across lemmas.
pub fn lemma_margin(id: LemmaId, x: f64, consts: &LemmaConsts) -> Result<f64> {
    let (lhs, rhs) = lemma_bound_eval(id, x, consts)?;
    if id == LemmaId::L2_6iii {
        // Both sides tend to 1 - R0; the slack is O(x^2). With
        // sinc y = sin y / y and g(y) = cos y - sinc y it reads
        // g(a) - R0 g(arg) + R0 (kappa x^2 / zeta) sinc(arg).
        let (r, k, z) = (
            consts.squash.unwrap_or(0.0),
            consts.kappa.unwrap_or(1.0),
            consts.zeta.unwrap_or(1.0),
        );
        let x2 = x * x;
        let a = 2.0 * x / k;
        let arg = x2 / k + x2 * x2 / z;
        let slack = cos_minus_sinc(a) - r * cos_minus_sinc(arg) + r * (k * x2 / z) * sinc(arg);
        return Ok(slack / x2);
    }
    Ok((rhs - lhs) / x.powi(id.vanishing_order()))
}

fn sinc(y: f64) -> f64 {
    if y == 0.0 {
        1.0
    } else {
        y.sin() / y
    }
}

/// `cos y - sin y / y`, by series near 0.
fn cos_minus_sinc(y: f64) -> f64 {
    if y.abs() < 1e-2 {
        let y2 = y * y;
        -y2 / 3.0 + y2 * y2 / 30.0 - y2 * y2 * y2 / 840.0
    } else {
        y.cos() - y.sin() / y
    }
}

fn lemma_holds(id: LemmaId, x: f64, consts: &LemmaConsts) -> bool {
    matches!(lemma_margin(id, x, consts), Ok(m) if m.is_finite() && m > 0.0)
}

/// The proofs rely on these orderings; without them the inequality fails
/// arbitrarily close to zero.
fn lemma_precondition(id: LemmaId, consts: &LemmaConsts) -> Result<()> {
    let fail = |why: String| {
        Err(Error::certification(
            id.clause(),
            format!("{}: {why}", id.anchor()),
        ))
    };
    match id {
        LemmaId::L2_2 => {
            let (k, z) = (
                LemmaConsts::get(consts.kappa, "kappa", id)?,
                LemmaConsts::get(consts.zeta, "zeta", id)?,
            );
            if !(z > k) {
                return fail(format!(
                    "requires zeta > kappa, got zeta = {z}, kappa = {k}"
                ));
            }
        }
        LemmaId::L2_5 => {
            let r = LemmaConsts::get(consts.squash, "R0", id)?;
            let (k, z) = (
                LemmaConsts::get(consts.kappa, "kappa", id)?,
                LemmaConsts::get(consts.zeta, "zeta", id)?,
            );
            if !(k < z / r) {
                return fail(format!(
                    "requires kappa < zeta/R0, got kappa = {k}, zeta/R0 = {}",
                    z / r
                ));
            }
        }
        LemmaId::L2_6iii => {
            let r = LemmaConsts::get(consts.squash, "R0", id)?;
            let (k, z) = (
                LemmaConsts::get(consts.kappa, "kappa", id)?,
                LemmaConsts::get(consts.zeta, "zeta", id)?,
            );
            if !(z < 0.75 * r * k.powi(3)) {
                return fail(format!(
                    "requires zeta < 3 R0 kappa^3 / 4 = {}, got {z}",
                    0.75 * r * k.powi(3)
                ));
            }
        }
        _ => {}
    }
    Ok(())
}

/// Locates a usable validity threshold for the named inequality.
///
/// Scans the grid nodes in `(0, x_max]`; at the first violation the bracket
/// is bisected to relative accuracy `1e-8` and the last good point, scaled by
/// 0.9, is returned. With no violation the result is `0.9 * x_max`.
pub fn threshold_scan(id: LemmaId, consts: &LemmaConsts, scan: &GridSpec) -> Result<f64> {
    scan.validate()?;
    if scan.hi > FRAC_PI_4 || scan.lo < 0.0 {
        return Err(Error::config(format!(
            "threshold scan must stay inside [0, pi/4], got [{}, {}]",
            scan.lo, scan.hi
        )));
    }
    if scan.points < MIN_SCAN_POINTS {
        return Err(Error::config(format!(
            "threshold scan needs at least {MIN_SCAN_POINTS} points, got {}",
            scan.points
        )));
    }
    lemma_precondition(id, consts)?;
    let mut last_good: Option<f64> = None;
    for x in scan.nodes().into_iter().filter(|&x| x > 0.0) {
        if lemma_holds(id, x, consts) {
            last_good = Some(x);
            continue;
        }
        let Some(good) = last_good else {
            return Err(Error::certification(
                id.clause(),
                format!("{} fails at the first scanned point x = {x}", id.anchor()),
            ));
        };
        let edge = crate::numeric::bisect_boundary(
            |y| lemma_holds(id, y, consts),
            good,
            x,
            BISECTION_REL_TOL,
        );
        return Ok(SAFETY * edge);
    }
    Ok(SAFETY * scan.hi)
}
/// The five radius thresholds `c1..c5`; `c5` is the tightest of the three
/// related inequalities that feed it.
/// small-`x` inequalities behind `c5`.
pub fn lemma_thresholds(consts: &LemmaConsts, scan: &GridSpec) -> Result<[f64; 5]> {
    let c1 = threshold_scan(LemmaId::L2_2, consts, scan)?;
    let c2 = threshold_scan(LemmaId::L2_3, consts, scan)?;
    let c3 = threshold_scan(LemmaId::L2_4, consts, scan)?;
    let c4 = threshold_scan(LemmaId::L2_5, consts, scan)?;
    let c5 = threshold_scan(LemmaId::L2_6i, consts, scan)?
        .min(threshold_scan(LemmaId::L2_6ii, consts, scan)?)
        .min(threshold_scan(LemmaId::L2_6iii, consts, scan)?);
    Ok([c1, c2, c3, c4, c5])
}

pub fn default_scan() -> GridSpec {
    GridSpec::new(MIN_SCAN_POINTS, 0.0, FRAC_PI_4).expect("static grid")
}

/// The constants every later step depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoreConstants {
    pub squash: f64,
    pub kappa: f64,
    pub zeta: f64,
    pub r0: f64,
}

impl CoreConstants {
    /// `b = r0^2 / kappa`, where the bridge meets the outer profile.
    pub fn outer_junction(&self) -> f64 {
        self.r0 * self.r0 / self.kappa
    }

    /// Phase shift `r0^4 / zeta` of the outer profile.
    pub fn shift(&self) -> f64 {
        self.r0.powi(4) / self.zeta
    }

    /// `(L, N)` with (*) reading `L > N / (b - psi)`.
    pub fn star_sides(&self) -> (f64, f64) {
        let b = self.outer_junction();
        let arg = b + self.shift();
        let slope_gap = (2.0 * self.r0 / self.kappa).cos() - self.squash * arg.cos();
        let value_gap =
            0.5 * self.r0 * (2.0 * self.r0 / self.kappa).sin() - self.squash * arg.sin();
        (slope_gap, value_gap)
    }

    /// Slack `L - N / (b - psi)` of inequality (*).
    pub fn star_slack(&self, psi: f64) -> f64 {
        let (l, n) = self.star_sides();
        l - n / (self.outer_junction() - psi)
    }

    fn budget_grid(&self) -> Vec<f64> {
        uniform(self.outer_junction(), self.r0, BUDGET_GRID_POINTS)
    }
}

/// Largest `psi = b 2^-k` (k >= 1) keeping at least a `1e-3` fraction of
/// the slack (*) has in the limit `psi -> 0`.
pub fn select_inner_junction(core: &CoreConstants) -> Result<f64> {
    let limit = core.star_slack(0.0);
    if !(limit > 0.0) {
        return Err(Error::certification(
            Clause::BridgeInequality,
            format!(
                "(*) fails even as psi -> 0 (slack {limit:e}); Lemma 2.6(iii) does not hold at r0"
            ),
        ));
    }
    let b = core.outer_junction();
    for k in 1..=MAX_DYADIC_DEPTH {
        let psi = b * 0.5f64.powi(k as i32);
        if core.star_slack(psi) >= STAR_SLACK_FRACTION * limit {
            return Ok(psi);
        }
    }
    Err(Error::certification(
        Clause::BridgeInequality,
        format!("no dyadic psi = b 2^-k with k <= {MAX_DYADIC_DEPTH} satisfies (*)"),
    ))
}

/// `0.9 * min (1 - cot(t + r0^4/zeta) tan t)` over `[b, r0]`.
pub fn compute_iota(core: &CoreConstants) -> Result<f64> {
    let shift = core.shift();
    let min = core
        .budget_grid()
        .into_iter()
        .map(|t| 1.0 - t.tan() / (t + shift).tan())
        .fold(f64::INFINITY, f64::min);
    if !(min > 0.0) {
        return Err(Error::certification(
            Clause::Iota,
            format!("min of 1 - (R'/R) tan t over [b, r0] is {min:e}"),
        ));
    }
    Ok(SAFETY * min)
}

/// The four upper bounds on the smoothing budget, at their worst grid
/// points: `[psi, iota / tan r0, min (iii), min (iv)]`.
pub fn mu0_bounds(core: &CoreConstants, psi: f64, iota: f64) -> [f64; 4] {
    let shift = core.shift();
    let cot_r0_sq = (1.0 / core.r0.tan()).powi(2);
    let tan_r0 = core.r0.tan();
    let (mut third, mut fourth) = (f64::INFINITY, f64::INFINITY);
    for t in core.budget_grid() {
        let cot_t = 1.0 / t.tan();
        let cot_shifted = 1.0 / (t + shift).tan();
        third = third.min((cot_t - cot_shifted) / (1.0 + cot_t));
        let num = cot_shifted * (1.0 + cot_r0_sq) * t.tan() - cot_r0_sq;
        fourth = fourth.min(num / (tan_r0 * (1.0 + cot_r0_sq)));
    }
    [psi, iota / tan_r0, third, fourth]
}

/// `0.9 *` the smallest of the four smoothing-budget bounds.
pub fn compute_mu0(core: &CoreConstants, psi: f64, iota: f64) -> Result<f64> {
    let bounds = mu0_bounds(core, psi, iota);
    if let Some((i, v)) = bounds.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
        let part = ["(i)", "(ii)", "(iii)", "(iv)"][i];
        return Err(Error::certification(
            Clause::SmoothingBudget,
            format!("bound {part} on mu0 is not positive ({v:e})"),
        ));
    }
    Ok(SAFETY * bounds.iter().copied().fold(f64::INFINITY, f64::min))
}

/// Values pinned by the caller instead of the defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    #[serde(rename = "R0", default, skip_serializing_if = "Option::is_none")]
    pub squash: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<f64>,
    #[serde(rename = "Lambda", default, skip_serializing_if = "Option::is_none")]
    pub bump_length: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
}

impl Overrides {
    pub const NAMES: [&'static str; 6] = ["R0", "kappa", "zeta", "Lambda", "r0", "mu"];

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::config(format!(
                "override {name} must be finite, got {value}"
            )));
        }
        let slot = match name {
            "R0" => &mut self.squash,
            "kappa" => &mut self.kappa,
            "zeta" => &mut self.zeta,
            "Lambda" => &mut self.bump_length,
            "r0" => &mut self.r0,
            "mu" => &mut self.mu,
            other => {
                return Err(Error::config(format!(
                    "unknown parameter '{other}'; valid names are {}",
                    Self::NAMES.join(", ")
                )))
            }
        };
        *slot = Some(value);
        Ok(())
    }
}

/// The full constant cascade for an `n`-sphere with `p` punctures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamSet {
    pub n: u32,
    pub p: u32,
    #[serde(rename = "R0")]
    pub squash: f64,
    pub kappa: f64,
    pub zeta: f64,
    #[serde(rename = "Lambda")]
    pub bump_length: f64,
    pub r0: f64,
    #[serde(rename = "c")]
    pub thresholds: [f64; 5],
    pub psi: f64,
    pub iota: f64,
    pub mu0: f64,
    pub mu: f64,
}

impl ParamSet {
    pub fn core(&self) -> CoreConstants {
        CoreConstants {
            squash: self.squash,
            kappa: self.kappa,
            zeta: self.zeta,
            r0: self.r0,
        }
    }

    pub fn lemma_consts(&self) -> LemmaConsts {
        LemmaConsts::new(self.squash, self.kappa, self.zeta)
    }

    pub fn outer_junction(&self) -> f64 {
        self.core().outer_junction()
    }

    pub fn shift(&self) -> f64 {
        self.core().shift()
    }

    pub fn cot_r0(&self) -> f64 {
        1.0 / self.r0.tan()
    }

    pub fn bump(&self) -> Result<BumpFunction> {
        BumpFunction::with_length(self.squash, self.bump_length)
    }

    /// The upper bound on `r0` before the puncture count is taken into account.
    pub fn radius_bound(&self) -> f64 {
        radius_bound(self.squash, self.bump_length, &self.thresholds)
    }

    /// Re-checks every definitional invariant; the first violation wins.
    pub fn check_invariants(&self) -> Result<()> {
        check_squash(self.squash)?;
        check_kappa(self.squash, self.kappa)?;
        check_zeta(self.squash, self.kappa, self.zeta)?;
        self.bump()?;
        check_radius(self.r0, self.radius_bound(), self.p)?;
        let core = self.core();
        if !(self.psi > 0.0 && self.psi < core.outer_junction() && core.star_slack(self.psi) > 0.0)
        {
            return Err(Error::certification(
                Clause::BridgeInequality,
                format!("(*) fails at psi = {}", self.psi),
            ));
        }
        let bounds = mu0_bounds(&core, self.psi, self.iota);
        if !(self.iota > 0.0 && bounds.iter().all(|&b| self.mu0 < b)) {
            return Err(Error::certification(
                Clause::SmoothingBudget,
                format!("mu0 = {:e} violates one of its bounds {bounds:?}", self.mu0),
            ));
        }
        check_mu(self.mu, self.mu0)
    }
}

fn radius_bound(squash: f64, bump_length: f64, c: &[f64; 5]) -> f64 {
    c.iter()
        .copied()
        .fold(squash.min(FRAC_PI_2 / (1.0 + bump_length)), f64::min)
}

fn check_squash(squash: f64) -> Result<()> {
    if squash > 0.0 && squash <= 0.1 {
        Ok(())
    } else {
        Err(Error::certification(
            Clause::SquashBound,
            format!("R0 = {squash} must lie in (0, 1/10]"),
        ))
    }
}

pub fn kappa_floor(squash: f64) -> f64 {
    2.0 / (3.0 * squash).sqrt()
}

fn check_kappa(squash: f64, kappa: f64) -> Result<()> {
    let floor = kappa_floor(squash);
    if kappa > floor {
        Ok(())
    } else {
        Err(Error::certification(
            Clause::KappaBound,
            format!("kappa = {kappa} must exceed 2/sqrt(3 R0) = {floor}"),
        ))
    }
}

pub fn zeta_ceiling(squash: f64, kappa: f64) -> f64 {
    0.75 * squash * kappa.powi(3)
}

fn check_zeta(squash: f64, kappa: f64, zeta: f64) -> Result<()> {
    let hi = zeta_ceiling(squash, kappa);
    if zeta > kappa && zeta < hi {
        Ok(())
    } else {
        Err(Error::certification(
            Clause::ZetaInterval,
            format!("zeta = {zeta} must lie in (kappa, 3 R0 kappa^3 / 4) = ({kappa}, {hi})"),
        ))
    }
}

fn check_radius(r0: f64, bound: f64, p: u32) -> Result<()> {
    if !(r0 > 0.0 && r0 < bound) {
        return Err(Error::certification(
            Clause::DiscRadius,
            format!(
                "r0 = {r0} must lie in (0, {bound}) = (0, min{{R0, pi/(2(1+Lambda)), c1..c5}})"
            ),
        ));
    }
    let gap = PI / p as f64;
    if !(r0 < gap) {
        return Err(Error::certification(
            Clause::DiscDisjointness,
            format!("r0 = {r0} must be below pi/p = {gap} for {p} disjoint discs"),
        ));
    }
    Ok(())
}

fn check_mu(mu: f64, mu0: f64) -> Result<()> {
    if mu > 0.0 && mu < mu0 {
        Ok(())
    } else {
        Err(Error::certification(
            Clause::SmoothingParameter,
            format!("mu = {mu:e} must lie in (0, mu0) = (0, {mu0:e})"),
        ))
    }
}

/// Chooses the whole cascade for `(n, p)`, honouring `overrides`.
///
/// Defaults: `R0 = 1/10`, `kappa` 10% above its floor, `zeta` at the
/// midpoint of its interval, the shortest admissible cutoff, `r0 = 0.9` of
/// its bound, dyadic `psi`, and `mu = mu0 / 2`.
pub fn select_params(n: u32, p: u32, overrides: &Overrides) -> Result<ParamSet> {
    if n < 3 {
        return Err(Error::config(format!(
            "dimension n must be at least 3, got {n}"
        )));
    }
    if p < 1 {
        return Err(Error::config("at least one puncture is required"));
    }

    let squash = overrides.squash.unwrap_or(DEFAULT_SQUASH);
    check_squash(squash)?;
    let kappa = overrides.kappa.unwrap_or(1.1 * kappa_floor(squash));
    check_kappa(squash, kappa)?;
    let zeta = overrides
        .zeta
        .unwrap_or(0.5 * (kappa + zeta_ceiling(squash, kappa)));
    check_zeta(squash, kappa, zeta)?;

    let bump = match overrides.bump_length {
        Some(length) => BumpFunction::with_length(squash, length)?,
        None => build_gamma(squash)?,
    };

    let thresholds = lemma_thresholds(&LemmaConsts::new(squash, kappa, zeta), &default_scan())?;
    let bound = radius_bound(squash, bump.length, &thresholds);
    let r0 = overrides.r0.unwrap_or(SAFETY * bound.min(PI / p as f64));
    check_radius(r0, bound, p)?;

    let core = CoreConstants {
        squash,
        kappa,
        zeta,
        r0,
    };
    let psi = select_inner_junction(&core)?;
    let iota = compute_iota(&core)?;
    let mu0 = compute_mu0(&core, psi, iota)?;
    let mu = overrides.mu.unwrap_or(0.5 * mu0);
    check_mu(mu, mu0)?;

    Ok(ParamSet {
        n,
        p,
        squash,
        kappa,
        zeta,
        bump_length: bump.length,
        r0,
        thresholds,
        psi,
        iota,
        mu0,
        mu,
    })
}
