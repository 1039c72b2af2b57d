//! Random-sign cascades: epoch layout, signs and the fitted spectral
//! exponent across seeds.

use scalefree::{cascade_path, default_band, fit_exponent, periodogram, Params, Taper};

fn main() -> scalefree::Result<()> {
    let n = 1 << 18;
    let lambda = 10.0;
    let p = Params::new(0.1, 6)?;
    let path = cascade_path(&p.with_seed(42), n, lambda)?;
    println!("epochs start at indices {:?}", path.epochs);
    println!("signs {:?}", path.signs);
    for &i in &[0, 1, 8, 9, 98, 99, 1000, 100_000, n - 1] {
        println!("  t = {:>8}: x = {:+.6e}", path.time(i), path.values[i]);
    }

    println!("\nseed  exponent  stderr  signs");
    for seed in 40..50 {
        let path = cascade_path(&p.with_seed(seed), n, lambda)?;
        let est = periodogram(&path.values, 16, Taper::Hann)?;
        let (lo, hi) = default_band(est.segment_len);
        let fit = fit_exponent(&est, lo, hi)?;
        let signs: String = path
            .signs
            .iter()
            .map(|&s| if s > 0 { '+' } else { '-' })
            .collect();
        println!(
            "{seed:>4}  {:>8.4}  {:>6.4}  {signs}",
            fit.exponent.unwrap(),
            fit.stderr.unwrap()
        );
    }
    Ok(())
}
