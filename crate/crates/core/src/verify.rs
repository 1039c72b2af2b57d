//! The invariant suite behind `scalefree verify`.
//!
//! Every check is deterministic and finishes in well under a second on
//! an optimized build.

use serde::Serialize;

use crate::goldmean::{convergent, fixed_points, golden_map_error, golden_mean, GOLDEN_MEAN};
use crate::params::Params;
use crate::scalefun::{eval_ln_t, eval_phi, local_derivative_report};
use crate::spectra::{default_band, fit_exponent, periodogram, Taper};
use crate::stochproc::{cascade_path, expected_tf, spectral_path};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

const ULP: f64 = f64::EPSILON;
const COUPLINGS: [f64; 6] = [-0.2, -0.1, -0.05, 0.05, 0.1, 0.2];

/// 100 log-spaced points on `[1.1, 10^6]`.
pub fn check_grid() -> Vec<f64> {
    let (lo, hi) = (1.1f64.ln(), 1e6f64.ln());
    (0..100)
        .map(|i| (lo + (hi - lo) * i as f64 / 99.0).exp())
        .collect()
}

pub fn run_all() -> Vec<Check> {
    vec![
        golden_identities(),
        convergent_bounds(),
        golden_map_order(),
        truncation_bound(),
        inversion_identity(),
        local_antisymmetry(),
        positivity(),
        zero_coupling(),
        symmetric_expectation(),
        determinism(),
        estimator_calibration(),
    ]
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

fn golden_identities() -> Check {
    let nu = golden_mean();
    let partition = (nu * nu + nu - 1.0).abs();
    let (a, b) = fixed_points();
    let product = (a * b - 1.0).abs();
    let ok = nu == GOLDEN_MEAN && partition <= 2.0 * ULP && product <= 2.0 * ULP;
    Check::new(
        "golden identities",
        ok,
        format!("|ν²+ν−1| = {partition:.1e}, |fixed product − 1| = {product:.1e}"),
    )
}

fn convergent_bounds() -> Check {
    let mut prev_sign = 0;
    for n in 1..=88 {
        let c = convergent(n).expect("n in range");
        let next = convergent(n + 1).expect("n + 1 in range");
        let limit = 1.0 / (c.q as f64 * next.q as f64);
        let sign = c.gap_sign();
        if c.gap.abs() >= limit || sign == prev_sign || sign == 0 {
            return Check::new("convergent bounds", false, format!("fails at n = {n}"));
        }
        prev_sign = sign;
    }
    let gap20 = convergent(20).expect("n in range").gap.abs();
    Check::new(
        "convergent bounds",
        gap20 < 5.2e-9,
        format!("n ≤ 88 alternate inside 1/(q·q'); |gap(20)| = {gap20:.3e}"),
    )
}

fn golden_map_order() -> Check {
    let mut worst = 0.0f64;
    for eta in [1e-2, 1e-3, 1e-4] {
        let ratio = golden_map_error(eta).expect("inside the pole") / (eta * eta);
        worst = worst.max((ratio / GOLDEN_MEAN - 1.0).abs());
    }
    Check::new(
        "golden map order",
        worst <= 0.05,
        format!("error/η² within {:.2}% of ν", 100.0 * worst),
    )
}

/// The tracked bound against a deep reference evaluation.
fn truncation_bound() -> Check {
    let mut worst = 0.0f64;
    for &k in &COUPLINGS {
        for &t in &check_grid() {
            let reference = eval_phi(t, &Params::new(k, 60).unwrap()).unwrap().value;
            for d in 1..=9 {
                let v = eval_phi(t, &Params::new(k, d).unwrap()).unwrap();
                let err = (v.value - reference).abs();
                if err > v.bound {
                    return Check::new(
                        "truncation bound",
                        false,
                        format!("k = {k}, t = {t}, D = {d}: {err:.3e} > {:.3e}", v.bound),
                    );
                }
                if v.bound > 0.0 {
                    worst = worst.max(err / v.bound);
                }
            }
        }
    }
    Check::new(
        "truncation bound",
        true,
        format!("|φ_D − φ_60| ≤ tracked bound; max ratio {worst:.3}"),
    )
}

fn inversion_identity() -> Check {
    let mut worst = 0.0f64;
    for &k in &COUPLINGS {
        let p = Params::new(k, 8).unwrap();
        for &t in &check_grid() {
            let prod = eval_phi(t, &p).unwrap().value * eval_phi(1.0 / t, &p).unwrap().value;
            worst = worst.max((prod - 1.0).abs());
        }
    }
    Check::new(
        "inversion identity",
        worst <= 4.0 * ULP,
        format!("max |φ(t)·φ(1/t) − 1| = {:.1} ulp", worst / ULP),
    )
}

fn local_antisymmetry() -> Check {
    let p = Params::new(0.1, 6).unwrap();
    let r = local_derivative_report(1e-3, &p).unwrap();
    let ok = r.first_derivatives_match()
        && r.second_derivative_sign_flip() == Some(true)
        && r.antisymmetry_residual.abs() <= 4.0 * ULP;
    Check::new(
        "local antisymmetry",
        ok,
        format!(
            "d1 {:.6} / {:.6}, d2 {:.3e} / {:.3e}, residual {:.1e}",
            r.d1_left, r.d1_right, r.d2_left, r.d2_right, r.antisymmetry_residual
        ),
    )
}

fn positivity() -> Check {
    let mut least = f64::INFINITY;
    for &k in &COUPLINGS {
        let p = Params::new(k, 8).unwrap();
        for &t in &check_grid() {
            least = least
                .min(eval_phi(t, &p).unwrap().value)
                .min(eval_phi(1.0 / t, &p).unwrap().value);
        }
    }
    Check::new("positivity", least > 0.0, format!("min φ = {least:.6}"))
}

fn zero_coupling() -> Check {
    let p = Params::new(0.0, 8).unwrap();
    let ok = check_grid().iter().all(|&t| {
        eval_phi(t, &p).unwrap().value == 1.0
            && eval_phi(1.0 / t, &p).unwrap().value == 1.0
            && eval_ln_t(t, &p).unwrap() == t
    }) && cascade_path(&p, 1024, 10.0)
        .unwrap()
        .values
        .iter()
        .all(|&v| v == 0.0);
    Check::new("zero coupling", ok, "φ = 1, ln T = t, silent cascade")
}

fn symmetric_expectation() -> Check {
    let ok = COUPLINGS.iter().all(|&k| {
        let p = Params::new(k, 6).unwrap();
        [1.5, 5.0, 1e3]
            .iter()
            .all(|&t| expected_tf(t, &p, 0.5).unwrap() == t)
    });
    Check::new("symmetric expectation", ok, "<t_f> = t at p_plus = 1/2")
}

fn determinism() -> Check {
    let p = Params::new(0.1, 6).unwrap().with_seed(42);
    let same_bits = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits());
    let c1 = cascade_path(&p, 4096, 10.0).unwrap();
    let c2 = cascade_path(&p, 4096, 10.0).unwrap();
    let s1 = spectral_path(1.0, 4096, 42).unwrap();
    let s2 = spectral_path(1.0, 4096, 42).unwrap();
    let ok = same_bits(&c1.values, &c2.values) && same_bits(&s1.values, &s2.values);
    Check::new("determinism", ok, "repeat runs are bit-identical")
}

fn fitted(values: &[f64], segments: usize) -> f64 {
    let est = periodogram(values, segments, Taper::Hann).unwrap();
    let (lo, hi) = default_band(est.segment_len);
    fit_exponent(&est, lo, hi).unwrap().exponent.unwrap()
}

fn estimator_calibration() -> Check {
    let n = 1 << 16;
    let white = fitted(&spectral_path(0.0, n, 7).unwrap().values, 16);
    let walk: Vec<f64> = spectral_path(0.0, n, 8)
        .unwrap()
        .values
        .iter()
        .scan(0.0, |acc, v| {
            *acc += v;
            Some(*acc)
        })
        .collect();
    let walk = fitted(&walk, 1);
    let pink = fitted(&spectral_path(1.0, n, 9).unwrap().values, 16);
    let ok = white.abs() <= 0.1 && (walk - 2.0).abs() <= 0.15 && (pink - 1.0).abs() <= 0.1;
    Check::new(
        "estimator calibration",
        ok,
        format!("white {white:.3}, walk {walk:.3}, α=1 → {pink:.3}"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let checks = run_all();
        for c in &checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn grid_spans_range() {
        let g = check_grid();
        assert_eq!(g.len(), 100);
        assert!((g[0] - 1.1).abs() < 1e-12 && (g[99] - 1e6).abs() < 1e-6);
    }
}
