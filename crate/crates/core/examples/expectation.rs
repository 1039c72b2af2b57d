//! Mean of the sign-randomized scale-free time against its closed form.

use scalefree::stochproc::sample_tf;
use scalefree::{expected_tf, Params};

fn main() -> scalefree::Result<()> {
    let t = 5.0;
    let draws = 100_000;
    let p = Params::new(0.1, 6)?.with_seed(2024);
    println!("p_plus   formula      monte carlo  stderr");
    for p_plus in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let xs = sample_tf(t, &p, p_plus, draws)?;
        let mean = xs.iter().sum::<f64>() / draws as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (draws - 1) as f64;
        println!(
            "{p_plus:>6}  {:>11.8}  {mean:>11.8}  {:.2e}",
            expected_tf(t, &p, p_plus)?,
            (var / draws as f64).sqrt()
        );
    }
    Ok(())
}
