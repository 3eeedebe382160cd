//! Closed-form optimal squeezing against a numerical golden-section
//! minimization of the same error expressions.
//!
//! Run with `cargo run --example squeezing_optimizer`.

use std::f64::consts::PI;

use fieldrot::formulas::{
    avg_error, avg_r_opt, cat_error, cat_r_opt, minimize_scalar, single_atom_error, single_atom_error_opt,
    single_atom_r_opt, CatErrorParams, SingleAtomInitial,
};
use fieldrot::quantum::CatKind;

const BRACKET: (f64, f64) = (-4.0, 4.0);

fn main() -> fieldrot::Result<()> {
    let alpha = 10.0;
    println!("{:>6} {:>5} {:>11} {:>11} {:>9}", "theta", "case", "closed", "numeric", "|diff|");
    for theta in [PI / 6.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, 5.0 * PI / 6.0] {
        let row = |label: &str, closed: f64, f: &dyn Fn(f64) -> f64| -> fieldrot::Result<()> {
            let m = minimize_scalar(f, BRACKET, 1e-10)?;
            println!("{theta:>6.3} {label:>5} {closed:>11.7} {:>11.7} {:>9.1e}", m.argmin, (m.argmin - closed).abs());
            Ok(())
        };
        for (label, kind) in [("x N=5", CatKind::X), ("z N=5", CatKind::Z)] {
            row(label, cat_r_opt(kind, 5, theta)?, &|r| {
                cat_error(&CatErrorParams::new(kind, 5, alpha, theta, r)).unwrap()
            })?;
        }
        row("avg", avg_r_opt(theta)?, &|r| avg_error(3, alpha, theta, r).unwrap())?;
        row("N=1", single_atom_r_opt(theta)?, &|r| {
            single_atom_error(alpha, theta, r, SingleAtomInitial::Excited).unwrap()
        })?;
    }
    let theta = PI / 2.0;
    let r = single_atom_r_opt(theta)?;
    println!(
        "\nsingle atom at the optimum: {:.6e} = theta sin(theta) / (4 alpha^2) = {:.6e}",
        single_atom_error(alpha, theta, r, SingleAtomInitial::Excited)?,
        single_atom_error_opt(alpha, theta)?
    );
    Ok(())
}
