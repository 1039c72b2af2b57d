//! Synthesizes power-law signals with a known exponent and recovers it from
//! the periodogram and from the autocorrelation.

use scalefree::{
    autocorrelation, default_band, fit_correlation_exponent, fit_exponent, periodogram,
    spectral_path, structure_function, Taper,
};

fn main() -> scalefree::Result<()> {
    let n = 1 << 18;
    println!("alpha  fitted   stderr   1-acf slope");
    for alpha in [0.0, 0.8, 1.0, 1.2, 1.4, 2.0] {
        let path = spectral_path(alpha, n, 42)?;
        let est = periodogram(&path.values, 16, Taper::Hann)?;
        let (lo, hi) = default_band(est.segment_len);
        let fit = fit_exponent(&est, lo, hi)?;
        let acf = autocorrelation(&path.values, 2048)?;
        let slope = if (1.0..2.0).contains(&alpha) {
            format!(
                "{:.4}",
                fit_correlation_exponent(&structure_function(&acf), 16, 1024)?
            )
        } else {
            "-".to_string()
        };
        println!(
            "{alpha:>5}  {:>7.4}  {:>7.4}  {slope}",
            fit.exponent.unwrap(),
            fit.stderr.unwrap()
        );
    }
    Ok(())
}
