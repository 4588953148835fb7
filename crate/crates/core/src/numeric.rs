//! Small numerical kernels shared by the construction: a C-infinity unit
//! step, adaptive quadrature, bracketing refinement.

/// Value and first two derivatives of a scalar function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub const fn new(v: f64, d1: f64, d2: f64) -> Self {
        Jet { v, d1, d2 }
    }
}

/// The C-infinity step `h(u)` rising from 0 (for `u <= 0`) to 1 (for
/// `u >= 1`), with every derivative vanishing at both ends.
///
/// Written as a logistic of `z(u) = 1/(1-u) - 1/u`, which is the ratio
/// `e^{-1/u} / (e^{-1/u} + e^{-1/(1-u)})` rearranged so that the derivatives
/// stay finite near the endpoints. Symmetric: `h(1-u) = 1 - h(u)`.
pub fn smooth_step(u: f64) -> Jet {
    if u <= 0.0 {
        return Jet::new(0.0, 0.0, 0.0);
    }
    if u >= 1.0 {
        return Jet::new(1.0, 0.0, 0.0);
    }
    let w = 1.0 - u;
    let z = 1.0 / w - 1.0 / u;
    let sigma = logistic(z);
    let spread = sigma * (1.0 - sigma);
    if spread == 0.0 {
        return Jet::new(sigma, 0.0, 0.0);
    }
    let dz = 1.0 / (w * w) + 1.0 / (u * u);
    let ddz = 2.0 / (w * w * w) - 2.0 / (u * u * u);
    let d1 = spread * dz;
    let d2 = spread * (1.0 - 2.0 * sigma) * dz * dz + spread * ddz;
    Jet::new(sigma, d1, d2)
}

fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `1 - h(u)` without the cancellation of forming `h` first.
pub fn smooth_step_complement(u: f64) -> f64 {
    if u <= 0.0 {
        return 1.0;
    }
    if u >= 1.0 {
        return 0.0;
    }
    logistic(1.0 / u - 1.0 / (1.0 - u))
}

/// Function evaluations an adaptive integration may spend before it
/// accepts its current estimate.
const QUADRATURE_BUDGET: usize = 200_000;

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
///
/// Refinement also stops once a panel's correction is at round-off level
/// relative to the panel or to the whole integral, and after a fixed
/// evaluation budget, so noisy integrands cannot trigger runaway recursion.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut ctx = Simpson {
        f: &f,
        budget: QUADRATURE_BUDGET,
        noise: 16.0 * f64::EPSILON * fa.abs().max(fm.abs()).max(fb.abs()),
    };
    ctx.step(a, b, fa, fm, fb, whole, abs_tol, 48)
}

struct Simpson<'a, F> {
    f: &'a F,
    budget: usize,
    /// Round-off allowance per unit length.
    noise: f64,
}

impl<F: Fn(f64) -> f64> Simpson<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn step(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        self.budget = self.budget.saturating_sub(2);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        let floor = (8.0 * f64::EPSILON * (left + right).abs()).max(self.noise * (b - a).abs());
        if depth == 0
            || self.budget == 0
            || delta.abs() <= (15.0 * tol).max(floor)
            || m <= a
            || m >= b
        {
            return left + right + delta / 15.0;
        }
        self.step(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + self.step(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

const GL8_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL8_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Eight-point Gauss-Legendre rule on `[a, b]`.
pub fn gauss_legendre8<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let sum: f64 = GL8_NODES
        .iter()
        .zip(GL8_WEIGHTS)
        .map(|(&x, w)| w * (f(mid - half * x) + f(mid + half * x)))
        .sum();
    half * sum
}

/// Shrinks `[good, bad]` (predicate true at `good`, false at `bad`) until
/// the bracket is narrower than `rel_tol * |good|`; returns the last point
/// known to satisfy the predicate.
pub fn bisect_boundary<P: Fn(f64) -> bool>(
    pred: P,
    mut good: f64,
    mut bad: f64,
    rel_tol: f64,
) -> f64 {
    for _ in 0..200 {
        if (bad - good).abs() <= rel_tol * good.abs().max(f64::MIN_POSITIVE) {
            break;
        }
        let mid = 0.5 * (good + bad);
        if mid == good || mid == bad {
            break;
        }
        if pred(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

/// Golden-section search for the minimum of `f` on `[a, b]`. Returns
/// `(argmin, min)`.
pub fn golden_min<F: Fn(f64) -> f64>(
    f: F,
    mut a: f64,
    mut b: f64,
    iterations: usize,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iterations {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
