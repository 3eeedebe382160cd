//! Stretching the interaction time: the optimal angle offset, its
//! numerical check, and how it combines with squeezing for two atoms.
//!
//! Run with `cargo run --example interaction_time`.

use std::f64::consts::PI;

use fieldrot::cli::figures::{figure8, joint_minimum};
use fieldrot::ensemble::uniform_theta_grid;
use fieldrot::formulas::{cat_error, delta_opt, minimize_scalar, two_atom_error_rd, CatErrorParams, DeltaKind};
use fieldrot::quantum::CatKind;

fn main() -> fieldrot::Result<()> {
    let (n, nbar) = (4, 400.0);
    let alpha = f64::sqrt(nbar);
    println!("z-cat N = {n}, nbar = {nbar}: closed-form vs numerical optimal offset");
    for theta in [PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI] {
        let closed = delta_opt(DeltaKind::ZCat, n, theta, nbar)?;
        let numeric = minimize_scalar(
            |d| cat_error(&CatErrorParams::new(CatKind::Z, n, alpha, theta, 0.0).with_delta(d)).unwrap(),
            (-0.5, 0.5),
            1e-12,
        )?;
        println!("  theta = {theta:.3}: delta_opt = {closed:+.6e}, numeric {:+.6e}", numeric.argmin);
    }

    let alpha = 20f64.sqrt();
    let theta = PI / 2.0;
    let base = two_atom_error_rd(alpha, theta, 0.0, 0.0)?;
    let (d, r, e) = joint_minimum(alpha, theta)?;
    println!(
        "\ntwo atoms, alpha^2 = 20, theta = pi/2: eps(0,0) = {base:.5e}; joint optimum delta = {d:+.4e}, r = {r:.4}, eps = {e:.5e}"
    );

    let grid = uniform_theta_grid(9);
    let table = &figure8(alpha, &grid)?.tables[0].1;
    println!("\nerror reduction eps(0,0) - eps(r, delta):");
    println!("{:>6} {:>11} {:>11} {:>11}", "theta", "delta only", "r only", "combined");
    let col = |name| table.column(name).unwrap();
    let (t, dd, rr, cc) = (col("theta"), col("delta_only"), col("r_only"), col("combined"));
    for i in 0..t.len() {
        println!("{:>6.3} {:>11.4e} {:>11.4e} {:>11.4e}", t[i], dd[i], rr[i], cc[i]);
    }
    Ok(())
}
