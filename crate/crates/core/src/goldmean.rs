//! Golden-mean arithmetic.
//!
//! The golden mean `ν = (√5 − 1)/2` is the positive root of `ν² + ν = 1` and
//! the fixed point of `x ↦ 1/(1 + x)`. Its continued fraction `[0; 1, 1, 1, …]`
//! has the ratios of consecutive Fibonacci numbers as convergents.

use serde::{Deserialize, Serialize};

use crate::error::{domain, range, Result};
use crate::params::Params;

/// `(√5 − 1)/2` rounded to the nearest double.
pub const GOLDEN_MEAN: f64 = 0.618_033_988_749_894_9;

/// Largest convergent index whose numerator and denominator fit in `u64`
/// alongside the following Fibonacci number.
pub const MAX_CONVERGENT: u32 = 90;

/// Largest number of steps accepted by [`convergent_evolution`].
pub const MAX_EVOLUTION_STEPS: usize = 50;

pub fn golden_mean() -> f64 {
    (5f64.sqrt() - 1.0) / 2.0
}

/// Fibonacci number `F_n` with `F_1 = F_2 = 1`; `None` on overflow.
pub fn fibonacci(n: u32) -> Option<u64> {
    if n == 0 {
        return Some(0);
    }
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 1..n {
        let next = a.checked_add(b)?;
        a = b;
        b = next;
    }
    Some(b)
}

/// A Fibonacci-ratio approximant `p/q = F_n/F_{n+1}` of the golden mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Convergent {
    pub n: u32,
    pub p: u64,
    pub q: u64,
    pub value: f64,
    /// Signed distance `p/q − ν`.
    pub gap: f64,
}

impl Convergent {
    /// Sign of the gap, computed exactly from `p² + pq − q²`.
    pub fn gap_sign(&self) -> i32 {
        let (p, q) = (self.p as i128, self.q as i128);
        // p/q > ν  <=>  p² + pq − q² > 0, since x² + x − 1 is increasing for x > 0.
        (p * p + p * q - q * q).signum() as i32
    }
}

pub fn convergent(n: u32) -> Result<Convergent> {
    if n == 0 || n > MAX_CONVERGENT {
        return range(format!(
            "convergent index must lie in 1..={MAX_CONVERGENT}, got {n}"
        ));
    }
    let p = fibonacci(n).expect("F_n fits for n <= 90");
    let q = fibonacci(n + 1).expect("F_{n+1} fits for n <= 90");

    // p − qν = (p² + pq − q²)/(p + q(1 + ν)); the numerator is ±1 by
    // Cassini's identity, so the gap keeps full relative precision.
    let (pi, qi) = (p as i128, q as i128);
    let cassini = (pi * pi + pi * qi - qi * qi) as f64;
    let (pf, qf) = (p as f64, q as f64);
    let gap = cassini / (qf * (pf + qf * (1.0 + GOLDEN_MEAN)));

    Ok(Convergent {
        n,
        p,
        q,
        value: pf / qf,
        gap,
    })
}

/// Fixed points of `x = 1 + 1/x` paired with their inverses: `(1 + ν, ν)`.
///
/// These are the limit values of the fluctuation factor at `t → 0` and
/// `t → ∞`; their product is one and their difference is one.
pub fn fixed_points() -> (f64, f64) {
    let nu = golden_mean();
    (1.0 + nu, nu)
}

/// Linear-fractional map `t ↦ (a + b·t)/(c + d·t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobiusMap {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl MobiusMap {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let m = MobiusMap { a, b, c, d };
        if m.determinant() == 0.0 || !m.determinant().is_finite() {
            return domain("Möbius map must have a nonzero finite determinant");
        }
        Ok(m)
    }

    /// The near-identity map `η ↦ (1 + ν²η)/(1 − νη)`, which agrees with
    /// `1 + η` up to `ν·η²`.
    pub fn golden() -> Self {
        let nu = golden_mean();
        MobiusMap {
            a: 1.0,
            b: nu * nu,
            c: 1.0,
            d: -nu,
        }
    }

    pub fn determinant(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn pole(&self) -> Option<f64> {
        (self.d != 0.0).then(|| -self.c / self.d)
    }

    pub fn apply(&self, t: f64) -> Result<f64> {
        let denom = self.c + self.d * t;
        if denom == 0.0 {
            return domain(format!("argument {t} sits on the pole of the map"));
        }
        Ok((self.a + self.b * t) / denom)
    }
}

pub fn golden_map(eta: f64) -> Result<f64> {
    if !eta.is_finite() || eta.abs() >= 1.0 / golden_mean() {
        return domain(format!("golden map needs |eta| < 1/ν ≈ 1.618, got {eta}"));
    }
    MobiusMap::golden().apply(eta)
}

/// `|golden_map(η) − (1 + η)|`.
pub fn golden_map_error(eta: f64) -> Result<f64> {
    Ok((golden_map(eta)? - (1.0 + eta)).abs())
}

/// Iterates the scale-free evaluation of the golden mean along a descending
/// scale schedule.
///
/// Step `n` divides the seed `ν_f = 1` by `Φ_n = 1 + κ_n·ν_{n−1}`, where
/// `κ_n = k/t_n` is the coupling seen at scale `t_n = k^(1 − 2^(−n))`. As the
/// scale approaches `k` the coupling tends to one and the step becomes the
/// continued-fraction step `ν_n = 1/(1 + ν_{n−1})`, whose fixed point is `ν`.
/// Returns `[ν_0, …, ν_{n_max}]` with `ν_0 = 1`.
pub fn convergent_evolution(p: &Params, n_max: usize) -> Result<Vec<f64>> {
    p.validate()?;
    if !(0.0..=0.2).contains(&p.k) {
        return domain(format!(
            "convergent evolution needs 0 <= k <= 0.2, got {}",
            p.k
        ));
    }
    if n_max > MAX_EVOLUTION_STEPS {
        return range(format!(
            "n_max must not exceed {MAX_EVOLUTION_STEPS}, got {n_max}"
        ));
    }
    let mut seq = Vec::with_capacity(n_max + 1);
    let mut nu = 1.0;
    seq.push(nu);
    for n in 1..=n_max {
        let coupling = evolution_coupling(p.k, n);
        nu = 1.0 / (1.0 + coupling * nu);
        seq.push(nu);
    }
    Ok(seq)
}

/// `k/t_n` for the schedule `t_n = k^(1 − 2^(−n))`, i.e. `k^(2^(−n))`.
pub fn evolution_coupling(k: f64, n: usize) -> f64 {
    if k == 0.0 {
        return 0.0;
    }
    k.powf(0.5f64.powi(n as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    const ULP1: f64 = f64::EPSILON;

    #[test]
    fn golden_mean_matches_constant() {
        assert_eq!(golden_mean(), GOLDEN_MEAN);
        assert_eq!(golden_mean(), 0.6180339887498949);
    }

    #[test]
    fn partition_of_unity() {
        let nu = golden_mean();
        assert!((nu * nu + nu - 1.0).abs() <= 2.0 * ULP1);
        assert!((1.0 / (1.0 + nu) - nu).abs() <= 2.0 * ULP1);
    }

    #[test]
    fn first_convergents() {
        // F_n by the recurrence: 1, 1, 2, 3, 5, 8
        let c1 = convergent(1).unwrap();
        assert_eq!((c1.p, c1.q, c1.value), (1, 1, 1.0));
        let c2 = convergent(2).unwrap();
        assert_eq!((c2.p, c2.q, c2.value), (1, 2, 0.5));
        let c5 = convergent(5).unwrap();
        assert_eq!((c5.p, c5.q, c5.value), (5, 8, 0.625));
        assert!(c1.gap > 0.0 && c2.gap < 0.0);
    }

    #[test]
    fn convergent_index_bounds() {
        assert!(convergent(0).is_err());
        assert!(convergent(91).is_err());
        let last = convergent(90).unwrap();
        assert_eq!(last.q, 4_660_046_610_375_530_309);
    }

    #[test]
    fn gap_matches_float_for_small_n() {
        for n in 1..20 {
            let c = convergent(n).unwrap();
            let direct = c.p as f64 / c.q as f64 - GOLDEN_MEAN;
            assert!((c.gap - direct).abs() < 1e-15, "n={n}");
            assert_eq!(c.gap.signum() as i32, c.gap_sign());
        }
    }

    #[test]
    fn fixed_point_pair() {
        let (a, b) = fixed_points();
        assert!((a * b - 1.0).abs() <= 2.0 * ULP1);
        assert!((a - b - 1.0).abs() <= 2.0 * ULP1);
        assert!((a - (1.0 + 1.0 / a)).abs() <= 2.0 * ULP1);
    }

    #[test]
    fn golden_map_near_identity() {
        assert_eq!(golden_map(0.0).unwrap(), 1.0);
        assert_eq!(golden_map_error(0.0).unwrap(), 0.0);
        // series oracle: error = νη²/(1 − νη)
        for eta in [1e-2, 1e-3] {
            let series = GOLDEN_MEAN * eta * eta / (1.0 - GOLDEN_MEAN * eta);
            let err = golden_map_error(eta).unwrap();
            assert!((err - series).abs() / series < 1e-6, "eta={eta}");
        }
        // 1 + η + νη²/(1 − νη)
        assert!((golden_map(0.01).unwrap() - 1.010_062_187_7).abs() < 1e-10);
    }

    #[test]
    fn golden_map_rejects_pole() {
        assert!(golden_map(1.0 / GOLDEN_MEAN).is_err());
        assert!(golden_map(2.0).is_err());
        assert!(golden_map(f64::NAN).is_err());
        let m = MobiusMap::golden();
        assert!((m.determinant() + 1.0).abs() < 1e-15);
        assert!(m.apply(m.pole().unwrap()).is_err());
    }

    #[test]
    fn mobius_rejects_singular() {
        assert!(MobiusMap::new(1.0, 2.0, 2.0, 4.0).is_err());
    }

    #[test]
    fn evolution_zero_coupling_is_constant() {
        let p = Params::new(0.0, 6).unwrap();
        let seq = convergent_evolution(&p, 10).unwrap();
        assert!(seq.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn evolution_single_step() {
        let p = Params::new(0.1, 6).unwrap();
        let seq = convergent_evolution(&p, 1).unwrap();
        assert_eq!(seq.len(), 2);
        // κ_1 = √k
        let expected = 1.0 / (1.0 + 0.1f64.sqrt());
        assert!((seq[1] - expected).abs() < 1e-15);
    }

    #[test]
    fn evolution_approaches_golden_mean() {
        let p = Params::new(0.1, 6).unwrap();
        let seq = convergent_evolution(&p, 30).unwrap();
        let gaps: Vec<f64> = seq.iter().map(|v| (v - GOLDEN_MEAN).abs()).collect();
        assert!(gaps[30] < gaps[0]);
        for w in gaps[15..].windows(2) {
            assert!(w[1] <= w[0], "gap grew in second half: {w:?}");
        }
    }

    #[test]
    fn evolution_rejects_bad_inputs() {
        let p = Params::new(0.1, 6).unwrap();
        assert!(convergent_evolution(&p, 51).is_err());
        let neg = Params::new(-0.1, 6).unwrap();
        assert!(convergent_evolution(&neg, 5).is_err());
        let big = Params::new(0.3, 6).unwrap();
        assert!(convergent_evolution(&big, 5).is_err());
    }
}
