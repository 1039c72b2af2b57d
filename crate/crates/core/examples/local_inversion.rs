//! Behaviour near `t = 1`: the golden near-identity map and the one-sided
//! derivatives of the local inversion `g(1 ± η) = 1 ± k·φ(η)`.

use scalefree::{golden_map, golden_map_error, local_derivative_report, Params, GOLDEN_MEAN};

fn main() -> scalefree::Result<()> {
    println!("golden map (1 + nu^2 eta)/(1 - nu eta) against 1 + eta:");
    for eta in [1e-1, 1e-2, 1e-3, 1e-4] {
        let err = golden_map_error(eta)?;
        println!(
            "  eta = {eta:e}: map = {:.12}, error/eta^2 = {:.6} (nu = {GOLDEN_MEAN:.6})",
            golden_map(eta)?,
            err / (eta * eta)
        );
    }

    let p = Params::new(0.1, 6)?;
    println!("\nderivatives at t = 1, k = {}:", p.k);
    for eta in [1e-2, 1e-3, 1e-4] {
        let r = local_derivative_report(eta, &p)?;
        println!(
            "  eta = {eta:e}: d1 {:.6} | {:.6} (match {}), d2 {:+.3e} | {:+.3e} (flip {:?}), residual {:e}",
            r.d1_left,
            r.d1_right,
            r.first_derivatives_match(),
            r.d2_left,
            r.d2_right,
            r.second_derivative_sign_flip(),
            r.antisymmetry_residual
        );
    }
    Ok(())
}
