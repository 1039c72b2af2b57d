//! Stochastic fractal-time sample paths.
//!
//! [`cascade_path`] injects a random-sign scaling constant at geometric
//! epochs `t_j = t_0·λ^j` and lets the fluctuation factor of the current
//! epoch shape the signal. [`spectral_path`] is a reference generator with a
//! prescribed `f^(−α)` spectrum, used to calibrate the spectral estimator.

mod gamma;

pub use gamma::{
    fit_gamma, gamma_cdf, ln_gamma, regularized_lower_gamma, GammaFit, MIN_GAMMA_SAMPLES,
};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, range, Result};
use crate::fft::{fft_in_place, is_power_of_two};
use crate::params::Params;
use crate::rng::{epoch_sign, stream_rng, STREAM_SPECTRAL_PHASES, STREAM_TF_SIGNS};
use crate::scalefun::phi_unchecked;

/// Start of the cascade time grid.
pub const CASCADE_T0: f64 = 1.0;
/// Grid step of the cascade time grid.
pub const CASCADE_DT: f64 = 1.0;
pub const MIN_CASCADE_LEN: usize = 256;
pub const MIN_SPECTRAL_LEN: usize = 1 << 10;
pub const MAX_SPECTRAL_LEN: usize = 1 << 20;

/// A simulated signal on a uniform time grid `t_i = t0 + i·dt`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePath {
    pub n: usize,
    pub t0: f64,
    pub dt: f64,
    pub values: Vec<f64>,
    /// Index of the first sample of each epoch; starts at 0, strictly increasing.
    pub epochs: Vec<usize>,
    /// Sign drawn for each epoch.
    pub signs: Vec<i8>,
    pub seed: u64,
}

impl SamplePath {
    /// Wraps externally produced values as a single-epoch path.
    pub fn from_values(values: Vec<f64>, t0: f64, dt: f64) -> Result<Self> {
        if values.is_empty() {
            return range("sample path needs at least one value");
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return domain(format!("sample values must be finite, got {bad}"));
        }
        if !(dt > 0.0) || !dt.is_finite() || !t0.is_finite() {
            return domain(format!(
                "grid must have finite t0 and positive dt, got {t0}, {dt}"
            ));
        }
        Ok(SamplePath {
            n: values.len(),
            t0,
            dt,
            values,
            epochs: vec![0],
            signs: vec![1],
            seed: 0,
        })
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.time(i))
    }
}

/// Index `j` of the epoch `[t0·λ^j, t0·λ^(j+1))` containing `t ≥ t0`.
fn epoch_of(t: f64, lambda: f64) -> u64 {
    let ratio = t / CASCADE_T0;
    let mut j = (ratio.ln() / lambda.ln()).floor().max(0.0) as u64;
    while lambda.powf((j + 1) as f64) <= ratio {
        j += 1;
    }
    while j > 0 && lambda.powf(j as f64) > ratio {
        j -= 1;
    }
    j
}

/// Random-sign cascade on the grid `t_i = 1 + i`.
///
/// Epoch `j` starts at `t_j = λ^j` and carries a sign `s_j = ±1` from
/// [`epoch_sign`]. Inside it the signal is
/// `x(t) = exp(μ_j(t)·ln t) − 1` with
/// `μ_j(t) = s_j·k·φ(t/t_j)/max(ln t, 1)`.
pub fn cascade_path(p: &Params, n: usize, lambda: f64) -> Result<SamplePath> {
    p.validate()?;
    if n < MIN_CASCADE_LEN {
        return range(format!(
            "cascade path needs at least {MIN_CASCADE_LEN} samples, got {n}"
        ));
    }
    if !lambda.is_finite() || lambda <= 1.0 {
        return domain(format!("epoch growth factor must exceed 1, got {lambda}"));
    }

    let mut values = Vec::with_capacity(n);
    let mut epochs = Vec::new();
    let mut signs = Vec::new();
    let mut current: Option<(u64, f64, f64)> = None;

    for i in 0..n {
        let t = CASCADE_T0 + i as f64 * CASCADE_DT;
        let j = epoch_of(t, lambda);
        let (_, start, sign) = match current {
            Some(c) if c.0 == j => c,
            _ => {
                let sign = epoch_sign(p.seed, j);
                let c = (j, CASCADE_T0 * lambda.powf(j as f64), f64::from(sign));
                epochs.push(i);
                signs.push(sign);
                current = Some(c);
                c
            }
        };
        let ln_t = t.ln();
        let phi = phi_unchecked(t / start, p).value;
        let mu = sign * p.k * phi / ln_t.max(1.0);
        values.push((mu * ln_t).exp_m1());
    }

    Ok(SamplePath {
        n,
        t0: CASCADE_T0,
        dt: CASCADE_DT,
        values,
        epochs,
        signs,
        seed: p.seed,
    })
}

/// Conjugate-symmetric spectrum with amplitudes `f^(−α/2)` and uniform
/// random phases, transformed back to the time domain (complex, unnormalized).
pub(crate) fn spectral_synthesis(alpha: f64, n: usize, seed: u64) -> Result<Vec<Complex64>> {
    if !(0.0..=3.0).contains(&alpha) {
        return domain(format!("spectral exponent must lie in [0, 3], got {alpha}"));
    }
    if !is_power_of_two(n) || !(MIN_SPECTRAL_LEN..=MAX_SPECTRAL_LEN).contains(&n) {
        return range(format!(
            "spectral path length must be a power of two in [2^10, 2^20], got {n}"
        ));
    }
    let mut rng = stream_rng(seed, STREAM_SPECTRAL_PHASES);
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut spec = vec![Complex64::new(0.0, 0.0); n];
    let half = n / 2;
    for m in 1..=half {
        let amp = (m as f64 / n as f64).powf(-alpha / 2.0);
        let theta: f64 = two_pi * rng.random::<f64>();
        if m == half {
            // Nyquist must be real
            spec[m] = Complex64::new(
                if theta < std::f64::consts::PI {
                    amp
                } else {
                    -amp
                },
                0.0,
            );
        } else {
            let z = Complex64::from_polar(amp, theta);
            spec[m] = z;
            spec[n - m] = z.conj();
        }
    }
    fft_in_place(&mut spec, true)?;
    Ok(spec)
}

/// Zero-mean, unit-RMS signal whose expected periodogram follows `f^(−α)`.
pub fn spectral_path(alpha: f64, n: usize, seed: u64) -> Result<SamplePath> {
    let signal = spectral_synthesis(alpha, n, seed)?;
    let mut values: Vec<f64> = signal.iter().map(|z| z.re).collect();
    let rms = (values.iter().map(|v| v * v).sum::<f64>() / n as f64).sqrt();
    for v in values.iter_mut() {
        *v /= rms;
    }
    Ok(SamplePath {
        n,
        t0: 0.0,
        dt: 1.0,
        values,
        epochs: vec![0],
        signs: vec![1],
        seed,
    })
}

fn check_tf_args(t: f64, p_plus: f64) -> Result<()> {
    if !t.is_finite() || t <= 1.0 {
        return domain(format!("expected scale-free time needs t > 1, got {t}"));
    }
    if !(0.0..=1.0).contains(&p_plus) {
        return domain(format!("sign probability must lie in [0, 1], got {p_plus}"));
    }
    Ok(())
}

/// `<t_f> = t·(1 + k̃·φ(t₁))` with `t₁ = φ(t)` and the sign-averaged coupling
/// `k̃ = (2·p_plus − 1)·k`.
pub fn expected_tf(t: f64, p: &Params, p_plus: f64) -> Result<f64> {
    p.validate()?;
    check_tf_args(t, p_plus)?;
    let t1 = phi_unchecked(t, p).value;
    let k_eff = (2.0 * p_plus - 1.0) * p.k;
    Ok(t * (1.0 + k_eff * phi_unchecked(t1, p).value))
}

/// Independent draws of `t_f = t·(1 + s·k·φ(t₁))` with `P(s = +1) = p_plus`,
/// from the seed stream of `p.seed`.
pub fn sample_tf(t: f64, p: &Params, p_plus: f64, draws: usize) -> Result<Vec<f64>> {
    p.validate()?;
    check_tf_args(t, p_plus)?;
    let t1 = phi_unchecked(t, p).value;
    let swing = p.k * phi_unchecked(t1, p).value;
    let mut rng = stream_rng(p.seed, STREAM_TF_SIGNS);
    Ok((0..draws)
        .map(|_| {
            let s = if rng.random_bool(p_plus) { 1.0 } else { -1.0 };
            t * (1.0 + s * swing)
        })
        .collect())
}
