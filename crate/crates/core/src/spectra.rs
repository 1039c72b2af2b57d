//! Autocorrelation, segment-averaged periodograms and log-log power-law fits.
//!
//! Periodogram normalization: for a segment `y` of length `L` (mean removed,
//! then tapered), bin `m` carries `|Y_m|²/L²` where `Y` is the unscaled DFT.
//! A unit impulse therefore has flat power `1/L²`, and
//! `P_0 + 2·Σ_{0<m<L/2} P_m + P_{L/2} = Σ y²/L` (Parseval). The zero bin is
//! dropped from the estimate; frequencies are in cycles per grid step.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, range, Error, Result};
use crate::fft::{fft_in_place, is_power_of_two};

pub const MIN_SEGMENT_LEN: usize = 256;
pub const MIN_FIT_BINS: usize = 10;
pub const MIN_FIT_LAGS: usize = 8;

/// Window applied to each segment before transforming.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Taper {
    #[default]
    Hann,
    Rectangular,
}

impl Taper {
    /// Periodic window of length `len`.
    pub fn weights(self, len: usize) -> Vec<f64> {
        match self {
            Taper::Rectangular => vec![1.0; len],
            Taper::Hann => (0..len)
                .map(|i| {
                    let x = std::f64::consts::PI * i as f64 / len as f64;
                    let s = x.sin();
                    s * s
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEstimate {
    pub freqs: Vec<f64>,
    pub powers: Vec<f64>,
    pub segments: usize,
    pub segment_len: usize,
    pub taper: Taper,
    /// Fitted `α` in `S(f) ∝ f^(−α)`; `None` until [`fit_exponent`] runs.
    pub exponent: Option<f64>,
    pub stderr: Option<f64>,
    pub fit_lo: Option<f64>,
    pub fit_hi: Option<f64>,
    pub fitted_bins: usize,
    /// Zero-power bins inside the band that were left out of the fit.
    pub excluded_bins: usize,
}

/// Default fit band `[8/L, 1/16]` cycles per step for segment length `L`.
pub fn default_band(segment_len: usize) -> (f64, f64) {
    (8.0 / segment_len as f64, 1.0 / 16.0)
}

/// Sum by recursive halving.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

fn mean(xs: &[f64]) -> f64 {
    pairwise_sum(xs) / xs.len() as f64
}

/// Biased, mean-removed sample autocorrelation normalized so that lag 0 is 1.
///
/// Computed through a zero-padded FFT; `max_lag` must be below `n/4`.
pub fn autocorrelation(values: &[f64], max_lag: usize) -> Result<Vec<f64>> {
    let n = values.len();
    if max_lag >= n / 4 {
        return range(format!(
            "max_lag must be below n/4 = {}, got {max_lag}",
            n / 4
        ));
    }
    let m = mean(values);
    let padded = (2 * n).next_power_of_two();
    let mut buf = vec![Complex64::new(0.0, 0.0); padded];
    for (slot, &v) in buf.iter_mut().zip(values) {
        slot.re = v - m;
    }
    fft_in_place(&mut buf, false)?;
    for z in buf.iter_mut() {
        *z = Complex64::new(z.norm_sqr(), 0.0);
    }
    fft_in_place(&mut buf, true)?;
    let c0 = buf[0].re;
    if !(c0 > 0.0) {
        return Err(Error::Degenerate("path has zero variance".into()));
    }
    Ok(buf[..=max_lag].iter().map(|z| z.re / c0).collect())
}

/// Normalized structure function `1 − ρ(τ)` of an autocorrelation sequence;
/// grows like `τ^(α−1)` for a `f^(−α)` signal with `1 < α < 3`.
pub fn structure_function(acf: &[f64]) -> Vec<f64> {
    acf.iter().map(|r| 1.0 - r).collect()
}

/// Tapered periodogram averaged over `segments` equal, non-overlapping segments.
pub fn periodogram(values: &[f64], segments: usize, taper: Taper) -> Result<SpectrumEstimate> {
    if segments == 0 || values.len() % segments != 0 {
        return range(format!(
            "{segments} segments do not divide a path of length {}",
            values.len()
        ));
    }
    let len = values.len() / segments;
    if !is_power_of_two(len) || len < MIN_SEGMENT_LEN {
        return range(format!(
            "segment length must be a power of two >= {MIN_SEGMENT_LEN}, got {len}"
        ));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return domain(format!("path values must be finite, got {bad}"));
    }

    let window = taper.weights(len);
    let half = len / 2;
    let norm = (len as f64) * (len as f64);
    let per_segment: Vec<Vec<f64>> = values
        .chunks_exact(len)
        .map(|seg| {
            let m = mean(seg);
            let mut buf: Vec<Complex64> = seg
                .iter()
                .zip(&window)
                .map(|(&v, &w)| Complex64::new((v - m) * w, 0.0))
                .collect();
            fft_in_place(&mut buf, false)?;
            Ok(buf[1..=half].iter().map(|z| z.norm_sqr() / norm).collect())
        })
        .collect::<Result<_>>()?;

    let mut column = vec![0.0; segments];
    let powers = (0..half)
        .map(|b| {
            for (c, seg) in column.iter_mut().zip(&per_segment) {
                *c = seg[b];
            }
            pairwise_sum(&column) / segments as f64
        })
        .collect();
    let freqs = (1..=half).map(|m| m as f64 / len as f64).collect();

    Ok(SpectrumEstimate {
        freqs,
        powers,
        segments,
        segment_len: len,
        taper,
        exponent: None,
        stderr: None,
        fit_lo: None,
        fit_hi: None,
        fitted_bins: 0,
        excluded_bins: 0,
    })
}

/// Ordinary least-squares slope, intercept and slope standard error.
fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = mean(xs);
    let my = mean(ys);
    let sxx = pairwise_sum(&xs.iter().map(|x| (x - mx) * (x - mx)).collect::<Vec<_>>());
    let sxy = pairwise_sum(
        &xs.iter()
            .zip(ys)
            .map(|(x, y)| (x - mx) * (y - my))
            .collect::<Vec<_>>(),
    );
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr = pairwise_sum(
        &xs.iter()
            .zip(ys)
            .map(|(x, y)| (y - intercept - slope * x).powi(2))
            .collect::<Vec<_>>(),
    );
    let stderr = if n > 2.0 {
        (ssr / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    (slope, intercept, stderr)
}

/// Fits `log P = c − α·log f` over `f_lo ≤ f ≤ f_hi`.
pub fn fit_exponent(est: &SpectrumEstimate, f_lo: f64, f_hi: f64) -> Result<SpectrumEstimate> {
    if !(f_lo < f_hi) || !f_lo.is_finite() || !f_hi.is_finite() {
        return range(format!("fit band [{f_lo}, {f_hi}] is empty"));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut excluded = 0;
    for (&f, &pw) in est.freqs.iter().zip(&est.powers) {
        if f < f_lo || f > f_hi {
            continue;
        }
        if pw > 0.0 {
            xs.push(f.ln());
            ys.push(pw.ln());
        } else {
            excluded += 1;
        }
    }
    if xs.len() < MIN_FIT_BINS {
        return range(format!(
            "fit band [{f_lo}, {f_hi}] holds {} usable bins, need {MIN_FIT_BINS}",
            xs.len()
        ));
    }
    let (slope, _, stderr) = ols(&xs, &ys);
    let mut out = est.clone();
    out.exponent = Some(-slope);
    out.stderr = Some(stderr);
    out.fit_lo = Some(f_lo);
    out.fit_hi = Some(f_hi);
    out.fitted_bins = xs.len();
    out.excluded_bins = excluded;
    Ok(out)
}

/// Log-log slope of a correlation sequence over lags `lag_lo..=lag_hi`.
pub fn fit_correlation_exponent(acf: &[f64], lag_lo: usize, lag_hi: usize) -> Result<f64> {
    if lag_lo == 0 {
        return domain("lag 0 has no logarithm; start the band at lag 1 or later");
    }
    if lag_hi >= acf.len() || lag_hi < lag_lo || lag_hi - lag_lo + 1 < MIN_FIT_LAGS {
        return range(format!(
            "lag band {lag_lo}..={lag_hi} must hold at least {MIN_FIT_LAGS} lags within {} values",
            acf.len()
        ));
    }
    let band = &acf[lag_lo..=lag_hi];
    if let Some(bad) = band.iter().find(|c| !(**c > 0.0)) {
        return domain(format!(
            "power-law fit needs positive correlations, found {bad}"
        ));
    }
    let xs: Vec<f64> = (lag_lo..=lag_hi).map(|l| (l as f64).ln()).collect();
    let ys: Vec<f64> = band.iter().map(|c| c.ln()).collect();
    Ok(ols(&xs, &ys).0)
}
