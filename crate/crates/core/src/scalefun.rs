//! The scale-free solution family `ln T(t) = t + k·φ(t)` and its fluctuation
//! factor `φ`.
//!
//! `φ` is defined by the recursion `φ(t) = 1 + k·φ(ln t)` for `t > 1`, the
//! inversion `φ(1/t) = 1/φ(t)` for `t < 1`, and the golden fixed value `1 + ν`
//! in a narrow band around `t = 1`. The recursion is truncated after
//! `Params::depth` logarithmic steps by grounding at the constant solution
//! `φ = 1`. Inversions are exact and consume no depth, so evaluation always
//! terminates.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::goldmean::GOLDEN_MEAN;
use crate::params::Params;

/// Fluctuation factor evaluated at a finite depth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiValue {
    pub value: f64,
    /// Logarithmic steps actually taken (at most `Params::depth`).
    pub depth_used: usize,
    /// Upper bound on `|φ_∞(t) − value|`, tracked along the evaluation path.
    ///
    /// Each logarithmic step contracts the truncation error by `|k|`; each
    /// inversion can amplify it by at most `1/(1 − |k|·M)²` for `k < 0`
    /// (never for `k ≥ 0`), with `M` the largest value `φ` can take. When the
    /// chain reaches the band at `t = 1` before the budget runs out the
    /// value is exact and the bound is zero. Infinite when `k` is too
    /// negative for `φ` to stay bounded.
    pub bound: f64,
}

/// The a-priori geometric tail `|k|^(depth+1)·(1 + ν)/(1 − |k|)`.
///
/// This estimate holds for `k > 0` whenever the truncated chain ends away
/// from the band at `t = 1`, but it is not an upper bound for negative `k`
/// (where inversions amplify differences) or for chains that land in the band
/// exactly at the last level. [`PhiValue::bound`] is the rigorous counterpart.
pub fn nominal_bound(k: f64, depth: usize) -> f64 {
    let k = k.abs();
    k.powi(depth as i32 + 1) * (1.0 + GOLDEN_MEAN) / (1.0 - k)
}

/// Supremum of `φ` over all arguments and the worst-case inversion gain, or
/// `None` when `φ` is not bounded away from zero.
fn envelope(k: f64) -> Option<(f64, f64)> {
    let golden = 1.0 + GOLDEN_MEAN;
    if k >= 0.0 {
        let sup = golden.max(1.0 / (1.0 - k));
        return Some((sup, 1.0));
    }
    let a = -k;
    // M = max(1 + ν, 1/(1 − aM)); the second branch solves aM² − M + 1 = 0.
    let sup = if a <= GOLDEN_MEAN.powi(3) {
        golden
    } else if a <= 0.25 {
        (1.0 - (1.0 - 4.0 * a).sqrt()) / (2.0 * a)
    } else {
        return None;
    };
    let floor = 1.0 - a * sup;
    if floor <= 0.0 {
        return None;
    }
    Some((sup, 1.0 / (floor * floor)))
}

struct Chain {
    base: f64,
    /// One entry per level, innermost last: whether that level's argument
    /// was inverted before use.
    inverted: Vec<bool>,
    depth_used: usize,
    tail: f64,
}

fn walk(mut t: f64, p: &Params) -> Chain {
    let mut inverted = Vec::with_capacity(p.depth + 1);
    let mut remaining = p.depth;
    let mut depth_used = 0;
    loop {
        let inv = t < 1.0 - p.eps_one;
        if inv {
            t = 1.0 / t;
        }
        inverted.push(inv);
        if (t - 1.0).abs() <= p.eps_one {
            let (base, tail) = if remaining == 0 {
                (1.0, GOLDEN_MEAN)
            } else {
                (1.0 + GOLDEN_MEAN, 0.0)
            };
            return Chain {
                base,
                inverted,
                depth_used,
                tail,
            };
        }
        if remaining == 0 {
            // φ_∞(t) − 1 = k·φ_∞(ln t)
            let sup = envelope(p.k).map_or(f64::INFINITY, |(m, _)| m);
            return Chain {
                base: 1.0,
                inverted,
                depth_used,
                tail: p.k.abs() * sup,
            };
        }
        t = t.ln();
        remaining -= 1;
        depth_used += 1;
    }
}

/// Evaluation without argument checks, for callers that validated already.
pub(crate) fn phi_unchecked(t: f64, p: &Params) -> PhiValue {
    if p.k == 0.0 {
        // zero coupling is the standard solution everywhere, band included
        return PhiValue {
            value: 1.0,
            depth_used: 0,
            bound: 0.0,
        };
    }
    let chain = walk(t, p);
    let gain = envelope(p.k).map_or(f64::INFINITY, |(_, g)| g);

    let mut levels = chain.inverted.iter().rev();
    let mut value = chain.base;
    let mut bound = chain.tail;
    if *levels.next().expect("chain has at least one level") {
        value = 1.0 / value;
        bound *= gain;
    }
    for &inv in levels {
        value = 1.0 + p.k * value;
        bound *= p.k.abs();
        if inv {
            value = 1.0 / value;
            bound *= gain;
        }
    }
    if bound.is_nan() {
        // 0 · ∞ when the band is reached exactly
        bound = 0.0;
    }
    PhiValue {
        value,
        depth_used: chain.depth_used,
        bound,
    }
}

fn check_positive(t: f64) -> Result<()> {
    if !t.is_finite() {
        return domain(format!("argument must be finite, got {t}"));
    }
    if t <= 0.0 {
        return domain(format!("argument must be positive, got {t}"));
    }
    Ok(())
}

/// Fluctuation factor `φ(t)` truncated at `p.depth` logarithmic levels.
pub fn eval_phi(t: f64, p: &Params) -> Result<PhiValue> {
    p.validate()?;
    check_positive(t)?;
    Ok(phi_unchecked(t, p))
}

/// `ln T(t) = t + k·φ(|t|)`; with `k = 0` this is the standard solution `t`.
///
/// Negative arguments reuse `φ(|t|)` and keep the additive term unchanged.
pub fn eval_ln_t(t: f64, p: &Params) -> Result<f64> {
    p.validate()?;
    if !t.is_finite() {
        return domain(format!("argument must be finite, got {t}"));
    }
    if t == 0.0 {
        return domain("ln T is undefined at t = 0");
    }
    Ok(t + p.k * phi_unchecked(t.abs(), p).value)
}

/// `τ(t) = t·φ(t)`, which inherits `τ(1/t) = 1/τ(t)` from the inversion rule.
pub fn eval_tau(t: f64, p: &Params) -> Result<f64> {
    Ok(t * eval_phi(t, p)?.value)
}

/// One-sided finite-difference derivatives of the local map `g` at `t = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalDerivatives {
    pub eta: f64,
    pub d1_left: f64,
    pub d1_right: f64,
    pub d2_left: f64,
    pub d2_right: f64,
    /// `g(1 + η) + g(1 − η) − 2`.
    pub antisymmetry_residual: f64,
    /// Rounding floor below which a first derivative is indistinguishable from zero.
    pub d1_noise_floor: f64,
    /// Rounding floor below which a second derivative is indistinguishable from zero.
    pub d2_noise_floor: f64,
    /// Allowed `|d1_left − d1_right|` for a second-order one-sided stencil.
    pub d1_tolerance: f64,
}

impl LocalDerivatives {
    pub fn first_derivatives_match(&self) -> bool {
        (self.d1_left - self.d1_right).abs() <= self.d1_tolerance
    }

    /// `Some(true)` when both second derivatives clear the noise floor with
    /// opposite signs, `Some(false)` when they clear it with equal signs,
    /// `None` when either is lost in rounding.
    pub fn second_derivative_sign_flip(&self) -> Option<bool> {
        if self.d2_left.abs() <= self.d2_noise_floor || self.d2_right.abs() <= self.d2_noise_floor {
            return None;
        }
        Some(self.d2_left.signum() == -self.d2_right.signum())
    }
}

/// Derivatives at `t = 1` of the local map `g(1 ± η) = 1 ± k·φ(η)`.
///
/// Uses the one-sided three-point stencils on `{1, 1 ± η, 1 ± 2η}` with
/// `g(1) = 1`.
pub fn local_derivative_report(eta: f64, p: &Params) -> Result<LocalDerivatives> {
    p.validate()?;
    if !eta.is_finite() || eta < 1e3 * f64::EPSILON {
        return Err(Error::Precision(format!(
            "stencil step {eta} is below 1e3 machine epsilon"
        )));
    }
    if eta <= p.eps_one {
        return domain(format!(
            "stencil step {eta} must exceed the band half-width {}",
            p.eps_one
        ));
    }
    if eta >= 0.5 {
        return domain(format!("stencil step {eta} must be below 0.5"));
    }
    let lift = |x: f64| p.k * phi_unchecked(x, p).value;
    let (f1, f2) = (lift(eta), lift(2.0 * eta));
    let (g1p, g2p) = (1.0 + f1, 1.0 + f2);
    let (g1m, g2m) = (1.0 - f1, 1.0 - f2);
    let g0 = 1.0;

    let d1_right = (-3.0 * g0 + 4.0 * g1p - g2p) / (2.0 * eta);
    let d1_left = (3.0 * g0 - 4.0 * g1m + g2m) / (2.0 * eta);
    let d2_right = (g0 - 2.0 * g1p + g2p) / (eta * eta);
    let d2_left = (g0 - 2.0 * g1m + g2m) / (eta * eta);

    let scale = [g1p, g2p, g1m, g2m]
        .iter()
        .fold(1.0f64, |m, g| m.max(g.abs()));
    let d1_noise_floor = 8.0 * f64::EPSILON * scale / eta;
    let d2_noise_floor = 16.0 * f64::EPSILON * scale / (eta * eta);
    let d1_tolerance = eta * (d2_left.abs() + d2_right.abs()) + d1_noise_floor;

    Ok(LocalDerivatives {
        eta,
        d1_left,
        d1_right,
        d2_left,
        d2_right,
        antisymmetry_residual: (g1p + g1m) - 2.0,
        d1_noise_floor,
        d2_noise_floor,
        d1_tolerance,
    })
}

/// `|φ(1/t) − (1 + (k/t)·φ(t))|`: how far the inversion-defined `φ` is from
/// the reciprocal-coupling relation `φ(1/t) = 1 + (k/t)·φ(t)`.
pub fn reciprocal_coupling_residual(t: f64, p: &Params) -> Result<f64> {
    p.validate()?;
    check_positive(t)?;
    if t <= 1.0 {
        return domain(format!("residual is defined for t > 1, got {t}"));
    }
    let inner = phi_unchecked(1.0 / t, p).value;
    let outer = phi_unchecked(t, p).value;
    Ok((inner - (1.0 + (p.k / t) * outer)).abs())
}

/// Smallest argument accepted by [`fluctuation_exponent`].
pub const MIN_EXPONENT_ARG: f64 = 1.1;

/// Late-time exponent `μ = k·φ(t)/ln t + μ_d`.
pub fn fluctuation_exponent(t: f64, p: &Params, mu_d: f64) -> Result<f64> {
    p.validate()?;
    check_positive(t)?;
    if t < MIN_EXPONENT_ARG {
        return domain(format!(
            "exponent needs t >= {MIN_EXPONENT_ARG} to keep ln t away from 0, got {t}"
        ));
    }
    if !mu_d.is_finite() {
        return domain("model-dependent offset must be finite");
    }
    Ok(p.k * phi_unchecked(t, p).value / t.ln() + mu_d)
}

/// Which power of the local parameter `t₁` scales the evaluated number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

/// Degree in `(0, 1]` to which `r` belongs to the fuzzy unit.
///
/// With `t₁ = φ(1)` and `m = φ(r·t₁^(±1))`, the membership is `m` when
/// `m ≤ 1` and `1/m` otherwise. Crisp (equal to 1) when `k = 0`.
pub fn membership(r: f64, p: &Params, side: Side) -> Result<f64> {
    p.validate()?;
    check_positive(r)?;
    let t1 = phi_unchecked(1.0, p).value;
    let arg = match side {
        Side::Plus => r * t1,
        Side::Minus => r / t1,
    };
    check_positive(arg)?;
    let m = phi_unchecked(arg, p).value;
    Ok(m.min(1.0 / m))
}
