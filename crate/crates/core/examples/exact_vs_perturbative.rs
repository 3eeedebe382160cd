//! Exact joint evolution against the second-order prediction for cat
//! states, with and without optimal squeezing.
//!
//! Run with `cargo run --release --example exact_vs_perturbative`.

use std::f64::consts::PI;

use fieldrot::dynamics::{gate_error_exact_sectors, RotationSpec, SectorPropagator};
use fieldrot::formulas::{cat_r_opt, single_atom_r_opt, two_atom_r_opt};
use fieldrot::perturbation::perturbative_error;
use fieldrot::quantum::{cat_state, field_with_default_truncation, CatKind};

fn optimal_r(kind: CatKind, n: usize, theta: f64) -> fieldrot::Result<f64> {
    match n {
        1 if theta < PI => single_atom_r_opt(theta),
        1 => Ok(0.0),
        2 => two_atom_r_opt(theta),
        _ => cat_r_opt(kind, n, theta),
    }
}

fn main() -> fieldrot::Result<()> {
    let alpha = 20.0;
    println!("alpha = {alpha}; tolerance 0.15 * perturbative + 2 / alpha^3");
    println!("{:>2} {:>6} {:>4} {:>8} {:>12} {:>12} {:>9}", "N", "theta", "cat", "r", "exact", "perturb.", "|diff|");
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        for theta in [PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI] {
            for kind in [CatKind::X, CatKind::Z] {
                for r in [0.0, optimal_r(kind, n, theta)?] {
                    let psi = cat_state(kind, n)?;
                    let field = field_with_default_truncation(alpha, r)?;
                    let spec = RotationSpec::new(n, alpha, r, theta);
                    let prop = SectorPropagator::new(n, field.n_max(), spec.duration())?;
                    let exact = gate_error_exact_sectors(&psi, &field, &spec, &prop)?.total;
                    let pert = perturbative_error(&psi, &field, &spec)?.total;
                    let diff = (exact - pert).abs();
                    worst = worst.max(diff / (0.15 * pert + 2.0 / alpha.powi(3)));
                    println!("{n:>2} {theta:>6.3} {kind:>4} {r:>8.4} {exact:>12.5e} {pert:>12.5e} {diff:>9.2e}");
                }
            }
        }
    }
    println!("largest |diff| / tolerance = {worst:.3}");
    Ok(())
}
