//! Fibonacci convergents of the golden mean and the convergent evolution.

use scalefree::goldmean::evolution_coupling;
use scalefree::{convergent, convergent_evolution, fixed_points, Params, GOLDEN_MEAN};

fn main() -> scalefree::Result<()> {
    println!("nu = {GOLDEN_MEAN}");
    let (hi, lo) = fixed_points();
    println!("fixed points: {hi} and {lo}, product {}", hi * lo);

    println!("\n  n            p/q                 gap");
    for n in [1, 2, 3, 5, 10, 20, 40, 90] {
        let c = convergent(n)?;
        println!("{n:>3} {:>10}/{:<20} {:+.3e}", c.p, c.q, c.gap);
    }

    let p = Params::new(0.1, 6)?;
    let seq = convergent_evolution(&p, 30)?;
    println!("\nevolution at k = {}:", p.k);
    for (n, v) in seq.iter().enumerate().step_by(5) {
        println!(
            "  n = {n:>2}  coupling {:.6}  nu_n = {v:.16}  gap {:+.3e}",
            evolution_coupling(p.k, n),
            v - GOLDEN_MEAN
        );
    }
    Ok(())
}
