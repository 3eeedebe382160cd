//! Closed-form cat-state errors: at fixed photon number the coherent x-cat
//! error grows as N^2, while optimal squeezing turns this into N^(3/2).
//!
//! Run with `cargo run --example cat_scaling`.

use std::f64::consts::PI;

use fieldrot::formulas::{cat_error, cat_error_opt, cat_r_opt, CatErrorParams};
use fieldrot::quantum::CatKind;

fn main() -> fieldrot::Result<()> {
    let alpha = 10.0;
    let x = cat_error(&CatErrorParams::new(CatKind::X, 4, alpha, PI, 0.0))?;
    let r = cat_r_opt(CatKind::X, 4, PI)?;
    let xs = cat_error(&CatErrorParams::new(CatKind::X, 4, alpha, PI, r))?;
    println!("x-cat N = 4, alpha = 10, theta = pi: coherent {x:.4}, r_opt = {r:.4}, squeezed {xs:.4}");

    println!("\nfixed alpha = 10, theta = pi/2");
    println!("{:>3} {:>12} {:>12} {:>12} {:>12}", "N", "x coherent", "x squeezed", "z coherent", "z squeezed");
    for n in [3, 4, 6, 8, 12, 16] {
        let coh = |kind| cat_error(&CatErrorParams::new(kind, n, alpha, PI / 2.0, 0.0));
        println!(
            "{n:>3} {:>12.5e} {:>12.5e} {:>12.5e} {:>12.5e}",
            coh(CatKind::X)?,
            cat_error_opt(CatKind::X, n, alpha, PI / 2.0)?,
            coh(CatKind::Z)?,
            cat_error_opt(CatKind::Z, n, alpha, PI / 2.0)?
        );
    }

    // Doubling N at fixed alpha.
    let theta = PI / 2.0;
    let coherent = |n| cat_error(&CatErrorParams::new(CatKind::X, n, 1000.0, theta, 0.0));
    let squeezed = |n| cat_error_opt(CatKind::X, n, 1000.0, theta);
    println!(
        "\nx-cat error ratio N = 200 vs 100: coherent {:.4} (-> 4), squeezed {:.10} (2 sqrt 2 = {:.10})",
        coherent(200)? / coherent(100)?,
        squeezed(200)? / squeezed(100)?,
        2.0 * 2f64.sqrt()
    );
    Ok(())
}
