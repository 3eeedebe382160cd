//! Haar ensembles: exact errors of random states compared with the
//! closed-form average and the cat states, plus the worst sampled state.
//!
//! Run with `cargo run --release --example ensemble_statistics`.

use fieldrot::ensemble::{
    run_on_states, uniform_theta_grid, within_three_sigma, worst_case_scan_on_states, EnsembleMethod,
    EnsembleRun, Squeezing,
};

fn main() -> fieldrot::Result<()> {
    let cfg = EnsembleRun {
        n_atoms: 3,
        alpha: 60f64.sqrt(),
        squeezing: Squeezing::Fixed(0.0),
        theta_grid: uniform_theta_grid(7),
        n_samples: 400,
        seed: 2024,
        method: EnsembleMethod::Both,
        n_max: None,
    };
    let states = cfg.draw_states()?;
    let res = run_on_states(&cfg, &states)?;
    println!("N = 3, alpha^2 = 60, {} Haar states (ChaCha8, seed {})", cfg.n_samples, cfg.seed);
    println!("{:>6} {:>11} {:>10} {:>11} {:>11} {:>11}", "theta", "mean", "std err", "closed", "x-cat", "z-cat");
    for k in 0..res.n_theta() {
        println!(
            "{:>6.3} {:>11.4e} {:>10.2e} {:>11.4e} {:>11.4e} {:>11.4e}",
            cfg.theta_grid[k], res.mean[k], res.std_error[k], res.analytic_mean[k], res.cat_x_error[k], res.cat_z_error[k]
        );
    }
    let pert = res.per_sample_perturbative.as_ref().expect("method both");
    let n = pert.len() as f64;
    let pmean: Vec<f64> = (0..res.n_theta()).map(|k| pert.iter().map(|row| row[k]).sum::<f64>() / n).collect();
    println!(
        "perturbative sample means within 3 standard errors of the closed form: {}",
        within_three_sigma(&pmean, &res.std_error, &res.analytic_mean)
    );

    let worst = worst_case_scan_on_states(&cfg, &states)?;
    for w in worst.iter().filter(|w| w.theta > 0.0) {
        println!(
            "theta = {:.3}: worst sample #{} error {:.4e}, x-cat fidelity {:.3}, {:.1}% of samples above the x-cat",
            w.theta,
            w.sample_index,
            w.error,
            w.x_cat_fidelity,
            100.0 * w.fraction_above_x_cat
        );
    }
    Ok(())
}
