//! Adaptive complex-valued quadrature on finite intervals.
//!
//! Fixed-order Gauss-Legendre panels with recursive bisection: a panel is
//! accepted when `|refined - whole|` fits its share of the error budget,
//! otherwise it splits and the budget halves with it. The budget is relative
//! to the integrand's L1 magnitude `∫|f|` estimated on the initial panels,
//! which keeps the criterion meaningful for oscillatory integrands whose net
//! value is much smaller than their variation.
//!
//! Everything is deterministic: identical inputs produce bitwise-identical
//! results. Integrands return `Result`, so domain failures deep inside an
//! integral propagate instead of panicking.

use std::cell::Cell;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance and refinement limits for one integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    /// Error budget relative to the integrand's L1 magnitude `∫|f|`.
    pub rel_tol: f64,
    /// Gauss-Legendre nodes per panel.
    pub panel_order: usize,
    /// Bisection levels below the initial panels before giving up.
    pub max_depth: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-6,
            panel_order: 32,
            max_depth: 24,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol.is_finite() && self.rel_tol > 0.0 && self.rel_tol < 0.5) {
            return Err(Error::InvalidInput(format!(
                "rel_tol must lie in (0, 0.5), got {}",
                self.rel_tol
            )));
        }
        if !(2..=128).contains(&self.panel_order) {
            return Err(Error::InvalidInput(format!(
                "panel_order must lie in [2, 128], got {}",
                self.panel_order
            )));
        }
        if !(1..=48).contains(&self.max_depth) {
            return Err(Error::InvalidInput(format!(
                "max_depth must lie in [1, 48], got {}",
                self.max_depth
            )));
        }
        Ok(())
    }
}

/// An integral estimate with its accounting.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: Complex64,
    /// Sum of accepted panel discrepancies; conservative error indicator.
    pub error_estimate: f64,
    /// Integrand evaluations performed.
    pub evaluations: u64,
    /// Gauss-Legendre panels evaluated (including rejected parents).
    pub panels: u64,
}

type NodeCache = Mutex<HashMap<usize, &'static [(f64, f64)]>>;

/// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
fn gauss_legendre(order: usize) -> &'static [(f64, f64)] {
    static TABLES: OnceLock<NodeCache> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = tables.lock().expect("node cache lock");
    guard
        .entry(order)
        .or_insert_with(|| Box::leak(compute_gauss_legendre(order).into_boxed_slice()))
}

/// Legendre P_n and its derivative by the three-term recurrence.
fn legendre_p_dp(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

fn compute_gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    let n = order;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi's root estimate, then Newton to machine precision.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..64 {
            let (p, dp) = legendre_p_dp(n, x);
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_p_dp(n, x);
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

struct Stats {
    evaluations: Cell<u64>,
    panels: Cell<u64>,
}

/// Returns the panel's integral estimate and its L1 counterpart `∫|f|`.
fn panel_estimate<F>(
    f: &F,
    a: f64,
    b: f64,
    nodes: &[(f64, f64)],
    stats: &Stats,
) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for &(x, w) in nodes {
        let t = mid + half * x;
        let v = f(t)?;
        if !v.is_finite() {
            return Err(Error::Domain(format!(
                "integrand returned a non-finite value at t = {t:.6e}"
            )));
        }
        acc += w * v;
        magnitude += w * v.norm();
    }
    stats.evaluations.set(stats.evaluations.get() + nodes.len() as u64);
    stats.panels.set(stats.panels.get() + 1);
    Ok((half * acc, half * magnitude))
}

struct Refiner<'a, F> {
    f: &'a F,
    nodes: &'static [(f64, f64)],
    stats: &'a Stats,
}

impl<F> Refiner<'_, F>
where
    F: Fn(f64) -> Result<Complex64>,
{
    /// Returns (value, accumulated discrepancy, met-budget flag).
    fn refine(
        &self,
        a: f64,
        b: f64,
        whole: Complex64,
        budget: f64,
        depth_left: u32,
    ) -> Result<(Complex64, f64, bool)> {
        let mid = 0.5 * (a + b);
        let (left, _) = panel_estimate(self.f, a, mid, self.nodes, self.stats)?;
        let (right, _) = panel_estimate(self.f, mid, b, self.nodes, self.stats)?;
        let refined = left + right;
        let disc = (refined - whole).norm();
        if disc <= budget {
            return Ok((refined, disc, true));
        }
        if depth_left == 0 {
            return Ok((refined, disc, false));
        }
        let (lv, le, lok) = self.refine(a, mid, left, 0.5 * budget, depth_left - 1)?;
        let (rv, re, rok) = self.refine(mid, b, right, 0.5 * budget, depth_left - 1)?;
        Ok((lv + rv, le + re, lok && rok))
    }
}

/// Integrates `f` over `[a, b]` starting from 8 equal panels.
pub fn integrate_1d<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Quadrature>
where
    F: Fn(f64) -> Result<Complex64>,
{
    integrate_1d_split(f, a, b, 8, spec)
}

/// Integrates `f` over `[a, b]` starting from `initial_panels` equal panels.
///
/// Oscillatory integrands converge much faster when the initial grid already
/// resolves a few cycles per panel; callers that know their cycle count pass
/// it here instead of leaning on bisection to discover it.
pub fn integrate_1d_split<F>(
    f: F,
    a: f64,
    b: f64,
    initial_panels: usize,
    spec: &QuadratureSpec,
) -> Result<Quadrature>
where
    F: Fn(f64) -> Result<Complex64>,
{
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "integration interval must be finite, got [{a}, {b}]"
        )));
    }
    if !(1..=100_000).contains(&initial_panels) {
        return Err(Error::InvalidInput(format!(
            "initial_panels must lie in [1, 100000], got {initial_panels}"
        )));
    }
    if a == b {
        return Ok(Quadrature {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            evaluations: 0,
            panels: 0,
        });
    }
    if a > b {
        let mut q = integrate_1d_split(f, b, a, initial_panels, spec)?;
        q.value = -q.value;
        return Ok(q);
    }

    let nodes = gauss_legendre(spec.panel_order);
    let stats = Stats {
        evaluations: Cell::new(0),
        panels: Cell::new(0),
    };

    let h = (b - a) / initial_panels as f64;
    let mut coarse = Vec::with_capacity(initial_panels);
    // The budget scale is the L1 magnitude ∫|f|, not |∫f|: oscillatory
    // integrands cancel almost completely, and a scale that cancels with
    // them would demand absolute accuracy no refinement can reach.
    let mut scale = 0.0;
    for k in 0..initial_panels {
        let pa = a + h * k as f64;
        let pb = if k + 1 == initial_panels { b } else { a + h * (k + 1) as f64 };
        let (whole, magnitude) = panel_estimate(&f, pa, pb, nodes, &stats)?;
        scale += magnitude;
        coarse.push((pa, pb, whole));
    }

    if scale == 0.0 {
        // Integrand vanished at every node; accept zero.
        return Ok(Quadrature {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            evaluations: stats.evaluations.get(),
            panels: stats.panels.get(),
        });
    }

    let budget_total = spec.rel_tol * scale;
    let budget_each = budget_total / initial_panels as f64;
    let refiner = Refiner {
        f: &f,
        nodes,
        stats: &stats,
    };

    let mut value = Complex64::new(0.0, 0.0);
    let mut residual = 0.0;
    let mut converged = true;
    for &(pa, pb, whole) in &coarse {
        let (v, e, ok) = refiner.refine(pa, pb, whole, budget_each, spec.max_depth)?;
        value += v;
        residual += e;
        converged &= ok;
    }

    if !converged {
        return Err(Error::NonConvergence {
            best: value,
            residual,
            budget: budget_total,
            evaluations: stats.evaluations.get(),
        });
    }
    Ok(Quadrature {
        value,
        error_estimate: residual,
        evaluations: stats.evaluations.get(),
        panels: stats.panels.get(),
    })
}

/// Integrates `f` over the rectangle `x_interval` x `y_interval`.
pub fn integrate_2d<F>(
    f: F,
    x_interval: (f64, f64),
    y_interval: (f64, f64),
    spec: &QuadratureSpec,
) -> Result<Quadrature>
where
    F: Fn(f64, f64) -> Result<Complex64>,
{
    integrate_2d_split(f, x_interval, y_interval, (8, 8), spec)
}

/// Rectangle integration as adaptive-in-x of adaptive-in-y, with initial
/// panel counts per axis.
///
/// The inner integral runs at a quarter of the outer tolerance so its noise
/// stays below the outer refinement decisions. The reported evaluation count
/// is of `f` itself; the error estimate is the outer one, which dominates.
pub fn integrate_2d_split<F>(
    f: F,
    x_interval: (f64, f64),
    y_interval: (f64, f64),
    initial_panels: (usize, usize),
    spec: &QuadratureSpec,
) -> Result<Quadrature>
where
    F: Fn(f64, f64) -> Result<Complex64>,
{
    spec.validate()?;
    let inner_spec = QuadratureSpec {
        rel_tol: spec.rel_tol * 0.25,
        ..*spec
    };
    let inner_evals = Cell::new(0u64);
    let inner_panels = Cell::new(0u64);
    let outer = integrate_1d_split(
        |x| {
            let q = integrate_1d_split(
                |y| f(x, y),
                y_interval.0,
                y_interval.1,
                initial_panels.1,
                &inner_spec,
            )?;
            inner_evals.set(inner_evals.get() + q.evaluations);
            inner_panels.set(inner_panels.get() + q.panels);
            Ok(q.value)
        },
        x_interval.0,
        x_interval.1,
        initial_panels.0,
        spec,
    )?;
    Ok(Quadrature {
        value: outer.value,
        error_estimate: outer.error_estimate,
        evaluations: inner_evals.get(),
        panels: inner_panels.get() + outer.panels,
    })
}

/// Fresnel integrals `C(x) = ∫₀ˣ cos(πt²/2) dt` and `S(x) = ∫₀ˣ sin(πt²/2) dt`.
///
/// Power series below `x = 3.2`, the `∫ₓ^∞ e^{jπt²/2} dt` asymptotic series
/// above. The crossover balances series cancellation against asymptotic
/// truncation; the absolute error stays below `1e-8` everywhere, dominated
/// by the crossover neighborhood.
pub fn fresnel(x: f64) -> (f64, f64) {
    let ax = x.abs();
    if ax == 0.0 {
        return (0.0, 0.0);
    }
    let (c, s) = if ax <= 3.2 {
        // C = x Σ (-1)^k z^(2k) / ((2k)! (4k+1)), S likewise with odd powers,
        // where z = πx²/2.
        let z = 0.5 * PI * ax * ax;
        let mut c = 0.0;
        let mut s = 0.0;
        let mut term = 1.0; // z^(2k) / (2k)!
        let mut sign = 1.0;
        for k in 0..200u32 {
            let kf = f64::from(k);
            c += sign * term / (4.0 * kf + 1.0);
            s += sign * term * z / ((2.0 * kf + 1.0) * (4.0 * kf + 3.0));
            if term < 1e-18 && k > 2 {
                break;
            }
            term *= z * z / ((2.0 * kf + 1.0) * (2.0 * kf + 2.0));
            sign = -sign;
        }
        (ax * c, ax * s)
    } else {
        // ∫ₓ^∞ e^{jπt²/2} dt = (j e^{jπx²/2} / (πx)) Σ (2k-1)!! wᵏ with
        // w = 1/(jπx²), truncated at its smallest term.
        let w = Complex64::new(0.0, 1.0 / (PI * ax * ax)).inv();
        let mut term = Complex64::new(1.0, 0.0);
        let mut total = Complex64::new(0.0, 0.0);
        for k in 1..=60u32 {
            total += term;
            let next = term * w * f64::from(2 * k - 1);
            if next.norm_sqr() >= term.norm_sqr() || next.norm_sqr() < 1e-36 {
                break;
            }
            term = next;
        }
        let phase = Complex64::from_polar(1.0, 0.5 * PI * ax * ax);
        let tail = Complex64::new(0.0, 1.0) * phase / (PI * ax) * total;
        (0.5 - tail.re, 0.5 - tail.im)
    };
    if x < 0.0 {
        (-c, -s)
    } else {
        (c, s)
    }
}

/// Closed form of `∫ e^{j(chirp·t² + linear·t)} dt` over `[lo, hi]`.
///
/// Completing the square maps the integral onto [`fresnel`], so the cost is
/// independent of how many phase cycles the interval spans. When the total
/// phase range is below a couple of radians the integrand is smooth and a
/// single fixed Gauss-Legendre panel is exact instead; a zero chirp with a
/// fast linear phase falls back to the plain oscillator antiderivative.
/// Absolute accuracy is about `1e-8·√(π/|chirp|)`, inherited from `fresnel`.
pub fn chirp_phase_integral(chirp: f64, linear: f64, lo: f64, hi: f64) -> Complex64 {
    if lo > hi {
        return -chirp_phase_integral(chirp, linear, hi, lo);
    }
    let reach = lo.abs().max(hi.abs());
    if chirp.abs() * reach * reach + linear.abs() * reach <= 2.0 {
        let nodes = gauss_legendre(24);
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        return nodes
            .iter()
            .map(|&(u, w)| {
                let t = mid + half * u;
                w * Complex64::from_polar(1.0, (chirp * t + linear) * t)
            })
            .sum::<Complex64>()
            * half;
    }
    if chirp == 0.0 {
        let j = Complex64::new(0.0, 1.0);
        return ((j * linear * hi).exp() - (j * linear * lo).exp()) / (j * linear);
    }
    // chirp·t² + linear·t = chirp·(t + s₀)² − linear²/(4·chirp)
    let s0 = 0.5 * linear / chirp;
    let scale = (2.0 * chirp.abs() / PI).sqrt();
    let (c1, s1) = fresnel((lo + s0) * scale);
    let (c2, s2) = fresnel((hi + s0) * scale);
    let span = Complex64::new(c2 - c1, (s2 - s1) * chirp.signum());
    Complex64::from_polar(1.0, -0.25 * linear * linear / chirp) * span / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ok(v: Complex64) -> Result<Complex64> {
        Ok(v)
    }

    /// Closed form of the unit-amplitude oscillator integral.
    fn oscillator_exact(omega: f64, a: f64, b: f64) -> Complex64 {
        let j = Complex64::new(0.0, 1.0);
        ((j * omega * b).exp() - (j * omega * a).exp()) / (j * omega)
    }

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        let nodes = gauss_legendre(32);
        let total: f64 = nodes.iter().map(|&(_, w)| w).sum();
        assert_relative_eq!(total, 2.0, max_relative = 1e-14);
        // Order 32 is exact through degree 63.
        let i10: f64 = nodes.iter().map(|&(x, w)| w * x.powi(10)).sum();
        assert_relative_eq!(i10, 2.0 / 11.0, max_relative = 1e-13);
        let i63: f64 = nodes.iter().map(|&(x, w)| w * x.powi(63)).sum();
        assert!(i63.abs() < 1e-13);
    }

    #[test]
    fn oscillator_matches_closed_form_across_frequencies() {
        // Sweep of 100 deterministic (omega, interval) cases.
        let spec = QuadratureSpec::with_rel_tol(1e-9);
        for k in 0..100 {
            let kf = k as f64;
            let omega = 5.0 + 295.0 * kf / 99.0;
            let a = 0.3 * (1.7 * kf).sin();
            let b = a + 0.6 + 0.5 * (2.3 * kf).cos();
            let exact = oscillator_exact(omega, a, b);
            let got = integrate_1d(
                |t| ok(Complex64::new(0.0, omega * t).exp()),
                a,
                b,
                &spec,
            )
            .unwrap();
            let rel = (got.value - exact).norm() / exact.norm();
            assert!(
                rel < 1e-6,
                "omega={omega} [{a},{b}]: rel error {rel:.2e}"
            );
        }
    }

    #[test]
    fn gaussian_integral_matches_sqrt_pi() {
        let got = integrate_1d(
            |t| ok(Complex64::new((-t * t).exp(), 0.0)),
            -6.0,
            6.0,
            &QuadratureSpec::with_rel_tol(1e-12),
        )
        .unwrap();
        // erf(6) = 1 to below f64 resolution.
        assert_relative_eq!(got.value.re, PI.sqrt(), max_relative = 1e-12);
        assert!(got.value.im.abs() < 1e-15);
    }

    #[test]
    fn interval_conventions() {
        let spec = QuadratureSpec::default();
        let f = |t: f64| ok(Complex64::new(0.0, 3.0 * t).exp());
        let fwd = integrate_1d(f, 0.0, 1.0, &spec).unwrap().value;
        let rev = integrate_1d(f, 1.0, 0.0, &spec).unwrap().value;
        assert_eq!(fwd, -rev);
        let empty = integrate_1d(f, 0.7, 0.7, &spec).unwrap();
        assert_eq!(empty.value, Complex64::new(0.0, 0.0));
        assert_eq!(empty.evaluations, 0);
    }

    #[test]
    fn zero_integrand_short_circuits() {
        let got = integrate_1d(|_| ok(Complex64::new(0.0, 0.0)), 0.0, 1.0, &QuadratureSpec::default())
            .unwrap();
        assert_eq!(got.value, Complex64::new(0.0, 0.0));
        assert_eq!(got.error_estimate, 0.0);
    }

    #[test]
    fn depth_exhaustion_reports_best_estimate() {
        // A chirp far too fast for 4 levels below 8 panels.
        let spec = QuadratureSpec {
            rel_tol: 1e-9,
            panel_order: 8,
            max_depth: 4,
        };
        let err = integrate_1d(
            |t| ok(Complex64::new(0.0, 4.0e4 * t * t).exp()),
            0.0,
            1.0,
            &spec,
        )
        .unwrap_err();
        match err {
            Error::NonConvergence {
                best,
                residual,
                budget,
                evaluations,
            } => {
                assert!(best.norm() > 0.0);
                assert!(residual > budget);
                assert!(evaluations > 0);
            }
            other => panic!("expected non-convergence, got {other}"),
        }
    }

    #[test]
    fn residual_shrinks_with_extra_depth() {
        // A near-unreachable tolerance keeps refinement running to the depth
        // limit (or the f64 floor), exposing pure refinement behaviour.
        let residual_at = |depth: u32| {
            let spec = QuadratureSpec {
                rel_tol: 1e-15,
                panel_order: 4,
                max_depth: depth,
            };
            match integrate_1d(
                |t| ok(Complex64::new(0.0, 40.0 * t).exp()),
                0.0,
                1.0,
                &spec,
            ) {
                Err(Error::NonConvergence { residual, .. }) => residual,
                Ok(q) => q.error_estimate,
                Err(other) => panic!("unexpected failure: {other}"),
            }
        };
        assert!(residual_at(6) < residual_at(3));
        assert!(residual_at(3) < residual_at(1));
    }

    #[test]
    fn integrand_errors_propagate() {
        let err = integrate_1d(
            |t| {
                if t > 0.9 {
                    Err(Error::Domain("test failure".into()))
                } else {
                    ok(Complex64::new(1.0, 0.0))
                }
            },
            0.0,
            1.0,
            &QuadratureSpec::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn results_are_deterministic() {
        let run = || {
            integrate_1d(
                |t| ok(Complex64::new(0.0, 137.0 * t).exp() * t.cos()),
                -1.0,
                2.0,
                &QuadratureSpec::default(),
            )
            .unwrap()
        };
        let (p, q) = (run(), run());
        assert_eq!(p.value, q.value);
        assert_eq!(p.evaluations, q.evaluations);
        assert_eq!(p.panels, q.panels);
    }

    #[test]
    fn separable_rectangle_matches_product_of_lines() {
        let spec = QuadratureSpec::with_rel_tol(1e-9);
        let got = integrate_2d(
            |x, y| ok(Complex64::new(0.0, 3.0 * x + 5.0 * y).exp()),
            (0.0, 1.0),
            (0.0, 2.0),
            &spec,
        )
        .unwrap();
        let exact = oscillator_exact(3.0, 0.0, 1.0) * oscillator_exact(5.0, 0.0, 2.0);
        assert!((got.value - exact).norm() / exact.norm() < 1e-7);
        assert!(got.evaluations > 0);
    }

    #[test]
    fn gaussian_rectangle_matches_pi() {
        let got = integrate_2d(
            |x, y| ok(Complex64::new((-x * x - y * y).exp(), 0.0)),
            (-5.0, 5.0),
            (-5.0, 5.0),
            &QuadratureSpec::with_rel_tol(1e-10),
        )
        .unwrap();
        assert_relative_eq!(got.value.re, PI, max_relative = 1e-9);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let f = |_: f64| ok(Complex64::new(1.0, 0.0));
        let bad_tol = QuadratureSpec {
            rel_tol: -1.0,
            ..Default::default()
        };
        assert!(integrate_1d(f, 0.0, 1.0, &bad_tol).is_err());
        let bad_order = QuadratureSpec {
            panel_order: 1,
            ..Default::default()
        };
        assert!(integrate_1d(f, 0.0, 1.0, &bad_order).is_err());
        assert!(integrate_1d(f, 0.0, f64::INFINITY, &QuadratureSpec::default()).is_err());
        assert!(integrate_1d_split(f, 0.0, 1.0, 0, &QuadratureSpec::default()).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            /// Splitting the interval anywhere must not change the value.
            #[test]
            fn additive_over_subintervals(
                omega in 1.0f64..60.0,
                split in 0.05f64..0.95,
            ) {
                let spec = QuadratureSpec::with_rel_tol(1e-10);
                let f = |t: f64| Ok(Complex64::new(0.0, omega * t).exp());
                let whole = integrate_1d(f, 0.0, 1.0, &spec).unwrap().value;
                let left = integrate_1d(f, 0.0, split, &spec).unwrap().value;
                let right = integrate_1d(f, split, 1.0, &spec).unwrap().value;
                prop_assert!((whole - (left + right)).norm() < 1e-9);
            }

            /// Frequency negation conjugates the oscillator integral.
            #[test]
            fn conjugate_symmetry(omega in 1.0f64..80.0) {
                let spec = QuadratureSpec::with_rel_tol(1e-10);
                let plus = integrate_1d(
                    |t| Ok(Complex64::new(0.0, omega * t).exp()),
                    0.0, 1.0, &spec,
                ).unwrap().value;
                let minus = integrate_1d(
                    |t| Ok(Complex64::new(0.0, -omega * t).exp()),
                    0.0, 1.0, &spec,
                ).unwrap().value;
                prop_assert!((plus.conj() - minus).norm() < 1e-9);
            }
        }
    }
}
