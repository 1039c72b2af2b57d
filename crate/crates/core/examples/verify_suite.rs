//! Runs the invariant suite from library code and prints each check.

fn main() {
    let checks = scalefree::verify::run_all();
    for c in &checks {
        println!(
            "{} {:<22} {}",
            if c.passed { "ok  " } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    if !scalefree::verify::all_passed(&checks) {
        std::process::exit(1);
    }
}
