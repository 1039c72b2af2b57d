//! Evaluates the fluctuation factor, its truncation bound, and the derived
//! `ln T` and `τ` at a few arguments.

use scalefree::{eval_ln_t, eval_phi, eval_tau, nominal_bound, Params};

fn main() -> scalefree::Result<()> {
    let p = Params::new(0.1, 6)?;
    println!("k = {}, depth = {}", p.k, p.depth);
    println!(
        "{:>12} {:>20} {:>12} {:>6} {:>20}",
        "t", "phi", "bound", "steps", "ln T"
    );
    for t in [0.01, 0.5, 1.0, std::f64::consts::E, 10.0, 1e3, 1e6] {
        let v = eval_phi(t, &p)?;
        println!(
            "{t:>12} {:>20.16} {:>12.3e} {:>6} {:>20.16}",
            v.value,
            v.bound,
            v.depth_used,
            eval_ln_t(t, &p)?
        );
    }
    println!("tau(e) = {}", eval_tau(std::f64::consts::E, &p)?);

    // Depth sweep: each extra level shrinks the tail by |k| for positive k.
    let t = 1e6;
    for d in 1..=6 {
        let v = eval_phi(t, &p.with_depth(d))?;
        println!(
            "depth {d}: phi = {:.16}, tracked bound {:.3e}, nominal {:.3e}",
            v.value,
            v.bound,
            nominal_bound(p.k, d)
        );
    }
    Ok(())
}
