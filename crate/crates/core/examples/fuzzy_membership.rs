//! Membership of a number in the fuzzy unit at a few couplings.

use scalefree::{membership, Params, Side};

fn main() -> scalefree::Result<()> {
    println!("    r    k     plus      minus");
    for k in [0.0, 0.05, 0.1, 0.2] {
        let p = Params::new(k, 3)?;
        for r in [0.5, 1.0, 2.0, 10.0] {
            println!(
                "{r:>5} {k:>4}  {:.6}  {:.6}",
                membership(r, &p, Side::Plus)?,
                membership(r, &p, Side::Minus)?
            );
        }
    }
    Ok(())
}
