//! Method-of-moments gamma fits: an exponential sample drawn from the crate's
//! seeded streams, then the magnitudes of a cascade signal.

use rand::Rng;
use scalefree::rng::stream_rng;
use scalefree::{cascade_path, fit_gamma, Params};

fn main() -> scalefree::Result<()> {
    let mut rng = stream_rng(7, 99);
    let expo: Vec<f64> = (0..100_000)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let fit = fit_gamma(&expo)?;
    println!(
        "exponential(1): shape {:.4}, scale {:.4}, ks {:.5}",
        fit.shape, fit.scale, fit.ks_stat
    );

    let p = Params::new(0.1, 6)?.with_seed(42);
    let path = cascade_path(&p, 1 << 18, 10.0)?;
    let mags: Vec<f64> = path
        .values
        .iter()
        .map(|v| v.abs())
        .filter(|&v| v > 0.0)
        .collect();
    let fit = fit_gamma(&mags)?;
    println!(
        "cascade |x|:    shape {:.4}, scale {:.4e}, ks {:.5} ({} samples)",
        fit.shape,
        fit.scale,
        fit.ks_stat,
        mags.len()
    );
    Ok(())
}
