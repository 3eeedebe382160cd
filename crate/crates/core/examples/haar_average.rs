//! Haar-averaged error: multiplet counting, the closed form, and a Monte
//! Carlo check through the perturbative engine.
//!
//! Run with `cargo run --release --example haar_average`.

use std::f64::consts::PI;

use fieldrot::formulas::{
    avg_error, haar_jz_mean_sq, kmax, m_squared_binomial_sum_x4, DegeneracySpec,
};
use fieldrot::perturbation::{perturbative_error_with, perturbative_error_haar_average, FieldMoments};
use fieldrot::quantum::{build_collective_ops, haar_random_state};
use fieldrot::dynamics::RotationSpec;

fn main() -> fieldrot::Result<()> {
    println!("multiplet multiplicities k_max(N, j) and the sum over m^2 binom(N, m):");
    for n in 1..=6 {
        let mults: Vec<String> = DegeneracySpec::all(n)?
            .iter()
            .map(|d| Ok(format!("j={}:{}", d.j(), kmax(d)?)))
            .collect::<fieldrot::Result<_>>()?;
        let dim: u128 = DegeneracySpec::all(n)?
            .iter()
            .map(|d| Ok(kmax(d)? * (d.twice_j as u128 + 1)))
            .sum::<fieldrot::Result<u128>>()?;
        println!(
            "  N = {n}: {}  (sum (2j+1) k = {dim} = 2^{n}); 4 sum m^2 C(N,m) = {}; Haar mean of <Jz>^2 = {:.4}",
            mults.join(" "),
            m_squared_binomial_sum_x4(n)?,
            haar_jz_mean_sq(n)?
        );
    }

    let (alpha, theta) = (20f64.sqrt(), PI / 2.0);
    println!("\nHaar average at alpha^2 = 20, theta = pi/2:");
    for n in 1..=4 {
        let ops = build_collective_ops(n)?;
        let moments = FieldMoments::ideal(0.0);
        let spec = RotationSpec::new(n, alpha, 0.0, theta);
        let samples = 20_000;
        let mut sum = 0.0;
        for i in 0..samples {
            let psi = haar_random_state(n, i as u64)?;
            sum += perturbative_error_with(&psi, &ops, &moments, &spec)?.total;
        }
        println!(
            "  N = {n}: closed form {:.6e}, engine average {:.6e}, Monte Carlo ({samples} states) {:.6e}",
            avg_error(n, alpha, theta, 0.0)?,
            perturbative_error_haar_average(n, alpha, 0.0, theta)?,
            sum / samples as f64
        );
    }
    Ok(())
}
