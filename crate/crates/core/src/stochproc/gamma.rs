//! Gamma function and regularized incomplete gamma, plus the
//! method-of-moments gamma fit with its Kolmogorov–Smirnov distance.

use serde::{Deserialize, Serialize};

use crate::error::{domain, range, Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

const MAX_ITER: usize = 500;
const REL_EPS: f64 = 1e-15;

/// Regularized lower incomplete gamma `P(a, x)`.
pub fn regularized_lower_gamma(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return 1.0;
    }
    let log_prefix = a * x.ln() - x - ln_gamma(a);
    if x < a + 1.0 {
        // Σ x^n / (a (a+1) … (a+n))
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut ap = a;
        for _ in 0..MAX_ITER {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * REL_EPS {
                break;
            }
        }
        (sum.ln() + log_prefix).exp().min(1.0)
    } else {
        // Modified Lentz evaluation of the continued fraction for Q(a, x).
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..=MAX_ITER {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < REL_EPS {
                break;
            }
        }
        (1.0 - (h.ln() + log_prefix).exp()).max(0.0)
    }
}

pub fn gamma_cdf(shape: f64, scale: f64, x: f64) -> f64 {
    regularized_lower_gamma(shape, x / scale)
}

/// Method-of-moments gamma fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaFit {
    pub shape: f64,
    pub scale: f64,
    /// Sup-distance between the empirical CDF and the fitted gamma CDF.
    pub ks_stat: f64,
}

pub const MIN_GAMMA_SAMPLES: usize = 100;

pub fn fit_gamma(samples: &[f64]) -> Result<GammaFit> {
    if samples.len() < MIN_GAMMA_SAMPLES {
        return range(format!(
            "gamma fit needs at least {MIN_GAMMA_SAMPLES} samples, got {}",
            samples.len()
        ));
    }
    if let Some(bad) = samples.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return domain(format!(
            "gamma samples must be positive and finite, got {bad}"
        ));
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    if var <= 0.0 {
        return Err(Error::Degenerate("samples have zero variance".into()));
    }
    let scale = var / mean;
    let shape = mean / scale;

    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let ks_stat = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = gamma_cdf(shape, scale, x);
            let above = (i + 1) as f64 / n - f;
            let below = f - i as f64 / n;
            above.max(below)
        })
        .fold(0.0f64, f64::max);

    Ok(GammaFit {
        shape,
        scale,
        ks_stat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Gamma};
    use statrs::distribution::{ContinuousCDF, Gamma as RefGamma};
    use statrs::function::gamma::ln_gamma as ref_ln_gamma;

    #[test]
    fn ln_gamma_matches_reference() {
        for x in [0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 55.5, 170.0] {
            let got = ln_gamma(x);
            let want = ref_ln_gamma(x);
            assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "x={x}");
        }
        assert!(ln_gamma(1.0).abs() < 1e-14);
        assert!((ln_gamma(5.0) - 24f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn cdf_matches_reference() {
        for shape in [0.3, 1.0, 2.0, 7.5, 40.0] {
            let reference = RefGamma::new(shape, 1.0).unwrap();
            for x in [1e-4, 0.05, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 80.0] {
                let got = gamma_cdf(shape, 1.0, x);
                let want = reference.cdf(x);
                assert!(
                    (got - want).abs() < 1e-12,
                    "shape={shape} x={x}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn exponential_cdf_closed_form() {
        for x in [0.1, 1.0, 3.0] {
            assert!((gamma_cdf(1.0, 2.0, x) - (1.0 - (-x / 2.0f64).exp())).abs() < 1e-14);
        }
    }

    fn gamma_samples(shape: f64, n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dist = Gamma::new(shape, 1.0).unwrap();
        (0..n).map(|_| dist.sample(&mut rng)).collect()
    }

    #[test]
    fn recovers_seeded_gamma() {
        let fit = fit_gamma(&gamma_samples(2.0, 100_000, 7)).unwrap();
        assert!((fit.shape - 2.0).abs() < 0.1, "{fit:?}");
        assert!(fit.ks_stat < 0.01, "{fit:?}");
    }

    #[test]
    fn recovers_exponential() {
        let fit = fit_gamma(&gamma_samples(1.0, 100_000, 11)).unwrap();
        assert!((fit.shape - 1.0).abs() < 0.1, "{fit:?}");
    }

    #[test]
    fn moment_identity() {
        let s = gamma_samples(3.0, 1000, 3);
        let mean = s.iter().sum::<f64>() / s.len() as f64;
        let fit = fit_gamma(&s).unwrap();
        assert!((fit.shape * fit.scale - mean).abs() <= 4.0 * f64::EPSILON * mean);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(fit_gamma(&[2.0; 200]), Err(Error::Degenerate(_))));
        let mut s = vec![1.0; 150];
        s[3] = 0.0;
        assert!(matches!(fit_gamma(&s), Err(Error::Domain(_))));
        assert!(matches!(fit_gamma(&[1.0, 2.0]), Err(Error::Range(_))));
    }
}
