//! Scale-free solutions of `d ln T/dt = 1` and the 1/f spectra they imply.
//!
//! The crate evaluates the fluctuation factor `φ(t) = 1 + k·φ(ln t)` with its
//! inversion rule `φ(1/t) = 1/φ(t)`, works out the golden-mean arithmetic
//! behind its fixed points, simulates random-sign fractal-time signals, and
//! measures their power-law correlations and spectra.
//!
//! | module | contents |
//! |---|---|
//! | [`scalefun`] | `φ`, `ln T`, `τ`, local derivatives at `t = 1`, exponent `μ`, fuzzy membership |
//! | [`goldmean`] | `ν`, Fibonacci convergents, fixed points, the golden Möbius map, convergent evolution |
//! | [`stochproc`] | cascade and spectral sample paths, `<t_f>`, gamma fitting |
//! | [`spectra`] | autocorrelation, periodogram, exponent fits |
//! | [`cli`] | the `scalefree` command line |
//!
//! See the `examples/` directory of the crate for one runnable program per
//! capability.

pub mod cli;
pub mod error;
pub mod fft;
pub mod goldmean;
pub mod params;
pub mod rng;
pub mod scalefun;
pub mod spectra;
pub mod stochproc;
pub mod verify;

pub use error::{Error, Result};
pub use goldmean::{
    convergent, convergent_evolution, fixed_points, golden_map, golden_map_error, golden_mean,
    Convergent, MobiusMap, GOLDEN_MEAN,
};
pub use params::Params;
pub use scalefun::{
    eval_ln_t, eval_phi, eval_tau, fluctuation_exponent, local_derivative_report, membership,
    nominal_bound, reciprocal_coupling_residual, LocalDerivatives, PhiValue, Side,
};
pub use spectra::{
    autocorrelation, default_band, fit_correlation_exponent, fit_exponent, periodogram,
    structure_function, SpectrumEstimate, Taper,
};
pub use stochproc::{
    cascade_path, expected_tf, fit_gamma, sample_tf, spectral_path, GammaFit, SamplePath,
};
