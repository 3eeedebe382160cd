//! Data behind each figure: one row per angle on the grid.


use super::output::{Outputs, Table, Value};
use crate::ensemble::{run_ensemble, EnsembleMethod, EnsembleResult, EnsembleRun, Squeezing};
use crate::formulas::{
    avg_error, avg_error_opt, avg_r_opt, cat_error, cat_error_opt, cat_r_opt, delta_opt,
    minimize_scalar, single_atom_error, two_atom_error_rd, two_atom_r_opt, CatErrorParams, DeltaKind,
    SingleAtomInitial,
};
use crate::quantum::CatKind;
use crate::Result;

/// Optimal cat squeezing with its continuous limit at `theta = 0`
/// (`ln(N)/4` for x, `0` for z, divergent for two atoms).
pub fn cat_r_opt_or_limit(kind: CatKind, n_atoms: usize, theta: f64) -> Result<f64> {
    if theta != 0.0 {
        return cat_r_opt(kind, n_atoms, theta);
    }
    Ok(match (n_atoms, kind) {
        (2, _) => f64::INFINITY,
        (_, CatKind::X) => 0.25 * (n_atoms as f64).ln(),
        (_, CatKind::Z) => 0.0,
    })
}

fn avg_r_opt_or_limit(theta: f64) -> Result<f64> {
    if theta == 0.0 {
        Ok(crate::formulas::avg_r_opt_limit_at_zero())
    } else {
        avg_r_opt(theta)
    }
}

fn f(x: f64) -> Value {
    Value::Float(x)
}

/// x- and z-cat errors, coherent and optimally squeezed, with the optimal
/// squeezing parameters.
pub fn figure1(n_atoms: usize, alpha: f64, grid: &[f64]) -> Result<Outputs> {
    let mut t = Table::new([
        "theta",
        "x_cat_coherent",
        "x_cat_squeezed",
        "z_cat_coherent",
        "z_cat_squeezed",
        "r_opt_x",
        "r_opt_z",
    ]);
    for &theta in grid {
        let err = |kind| cat_error(&CatErrorParams::new(kind, n_atoms, alpha, theta, 0.0));
        t.push(vec![
            f(theta),
            f(err(CatKind::X)?),
            f(cat_error_opt(CatKind::X, n_atoms, alpha, theta)?),
            f(err(CatKind::Z)?),
            f(cat_error_opt(CatKind::Z, n_atoms, alpha, theta)?),
            f(cat_r_opt_or_limit(CatKind::X, n_atoms, theta)?),
            f(cat_r_opt_or_limit(CatKind::Z, n_atoms, theta)?),
        ]);
    }
    let mut out = Outputs::default();
    out.add("", t);
    Ok(out)
}

pub const FIGURE2_ATOMS: [usize; 3] = [5, 10, 20];

/// Photons `sinh^2 r` added by the optimal x-cat squeezing.
pub fn figure2(grid: &[f64]) -> Result<Outputs> {
    let mut t = Table::new(
        std::iter::once("theta".to_string()).chain(FIGURE2_ATOMS.iter().map(|n| format!("added_photons_n{n}"))),
    );
    for &theta in grid {
        let mut row = vec![f(theta)];
        for n in FIGURE2_ATOMS {
            row.push(f(cat_r_opt_or_limit(CatKind::X, n, theta)?.sinh().powi(2)));
        }
        t.push(row);
    }
    let mut out = Outputs::default();
    out.add("", t);
    Ok(out)
}

pub const FIGURE35_ATOMS: [usize; 4] = [2, 3, 4, 5];
/// Photons per atom in the scaled figures.
pub const PHOTONS_PER_ATOM: f64 = 20.0;

fn scaled_headers() -> Vec<String> {
    let mut h = vec!["theta".to_string()];
    h.extend(FIGURE35_ATOMS.iter().map(|n| format!("coherent_n{n}")));
    h.extend(FIGURE35_ATOMS.iter().map(|n| format!("squeezed_n{n}")));
    h.push("single_atom_n1".into());
    h
}

/// x-cat errors with `alpha^2 = 20 N`, coherent and optimally squeezed,
/// plus the single-atom excited-state error at 20 photons.
pub fn figure3(grid: &[f64]) -> Result<Outputs> {
    let mut t = Table::new(scaled_headers());
    for &theta in grid {
        let mut row = vec![f(theta)];
        for n in FIGURE35_ATOMS {
            let alpha = (PHOTONS_PER_ATOM * n as f64).sqrt();
            row.push(f(cat_error(&CatErrorParams::new(CatKind::X, n, alpha, theta, 0.0))?));
        }
        for n in FIGURE35_ATOMS {
            let alpha = (PHOTONS_PER_ATOM * n as f64).sqrt();
            row.push(f(cat_error_opt(CatKind::X, n, alpha, theta)?));
        }
        row.push(f(single_atom_error(PHOTONS_PER_ATOM.sqrt(), theta, 0.0, SingleAtomInitial::Excited)?));
        t.push(row);
    }
    let mut out = Outputs::default();
    out.add("", t);
    Ok(out)
}

/// Average-optimal squeezing and the photons it adds.
pub fn figure4(grid: &[f64]) -> Result<Outputs> {
    let mut t = Table::new(["theta", "r_opt", "added_photons"]);
    for &theta in grid {
        let r = avg_r_opt_or_limit(theta)?;
        t.push(vec![f(theta), f(r), f(r.sinh().powi(2))]);
    }
    let mut out = Outputs::default();
    out.add("", t);
    Ok(out)
}

/// Haar-averaged errors with `alpha^2 = 20 N`, coherent and optimally
/// squeezed, plus the single-atom excited-state error at 20 photons.
pub fn figure5(grid: &[f64]) -> Result<Outputs> {
    let mut t = Table::new(scaled_headers());
    for &theta in grid {
        let mut row = vec![f(theta)];
        for n in FIGURE35_ATOMS {
            let alpha = (PHOTONS_PER_ATOM * n as f64).sqrt();
            row.push(f(avg_error(n, alpha, theta, 0.0)?));
        }
        for n in FIGURE35_ATOMS {
            let alpha = (PHOTONS_PER_ATOM * n as f64).sqrt();
            row.push(f(avg_error_opt(n, alpha, theta)?));
        }
        row.push(f(single_atom_error(PHOTONS_PER_ATOM.sqrt(), theta, 0.0, SingleAtomInitial::Excited)?));
        t.push(row);
    }
    let mut out = Outputs::default();
    out.add("", t);
    Ok(out)
}

/// Per-angle statistics and overlays of an ensemble run.
pub fn ensemble_summary(res: &EnsembleResult) -> Table {
    let mut t = Table::new([
        "theta",
        "r",
        "mean",
        "std_error",
        "analytic_mean",
        "cat_x_error",
        "cat_z_error",
        "cat_x_theory",
        "cat_z_theory",
    ]);
    for k in 0..res.n_theta() {
        t.push(vec![
            f(res.config.theta_grid[k]),
            f(res.provenance.r_grid[k]),
            f(res.mean[k]),
            f(res.std_error[k]),
            f(res.analytic_mean[k]),
            f(res.cat_x_error[k]),
            f(res.cat_z_error[k]),
            f(res.cat_x_theory[k]),
            f(res.cat_z_theory[k]),
        ]);
    }
    t
}

/// One row per (sample, angle).
pub fn ensemble_samples(res: &EnsembleResult) -> Table {
    let both = res.per_sample_perturbative.as_ref();
    let mut headers = vec!["sample", "theta", "error"];
    if both.is_some() {
        headers.push("error_perturbative");
    }
    let mut t = Table::new(headers);
    for (i, row) in res.per_sample_errors.iter().enumerate() {
        for (k, &e) in row.iter().enumerate() {
            let mut cells = vec![Value::from(i), f(res.config.theta_grid[k]), f(e)];
            if let Some(p) = both {
                cells.push(f(p[i][k]));
            }
            t.push(cells);
        }
    }
    t
}

/// Coherent and average-optimal squeezed ensembles (Haar samples shared
/// between the two panels).
pub fn ensemble_figure(base: &EnsembleRun) -> Result<(Outputs, Vec<EnsembleResult>)> {
    let mut out = Outputs::default();
    let mut results = Vec::new();
    for (name, squeezing) in [("coherent", Squeezing::Fixed(0.0)), ("squeezed", Squeezing::AverageOptimal)] {
        let cfg = EnsembleRun {
            squeezing,
            ..base.clone()
        };
        let res = run_ensemble(&cfg)?;
        out.add(format!("{name}_summary"), ensemble_summary(&res));
        out.add(format!("{name}_samples"), ensemble_samples(&res));
        results.push(res);
    }
    Ok((out, results))
}

pub fn ensemble_defaults(figure: u8) -> (usize, f64) {
    match figure {
        7 => (4, 80.0),
        _ => (3, 60.0),
    }
}

pub fn ensemble_base(
    n_atoms: usize,
    alpha: f64,
    grid: Vec<f64>,
    samples: usize,
    seed: u64,
    method: EnsembleMethod,
    n_max: Option<usize>,
) -> EnsembleRun {
    EnsembleRun {
        n_atoms,
        alpha,
        squeezing: Squeezing::Fixed(0.0),
        theta_grid: grid,
        n_samples: samples,
        seed,
        method,
        n_max,
    }
}

/// Error reduction `eps(0,0) - eps(r, delta)` for the two-atom cat under
/// three strategies: the closed-form offset alone, the closed-form
/// squeezing alone, and a numerical joint minimization over both.
pub fn figure8(alpha: f64, grid: &[f64]) -> Result<Outputs> {
    let nbar = alpha * alpha;
    let mut t = Table::new([
        "theta",
        "delta_opt",
        "r_opt",
        "joint_delta",
        "joint_r",
        "delta_only",
        "r_only",
        "combined",
    ]);
    for &theta in grid {
        let base = two_atom_error_rd(alpha, theta, 0.0, 0.0)?;
        let delta = delta_opt(DeltaKind::TwoAtom, 2, theta, nbar)?;
        let (r, r_only, joint) = if theta > 0.0 {
            let r = two_atom_r_opt(theta)?;
            (r, base - two_atom_error_rd(alpha, theta, r, 0.0)?, joint_minimum(alpha, theta)?)
        } else {
            (f64::INFINITY, 0.0, (0.0, 0.0, base))
        };
        t.push(vec![
            f(theta),
            f(delta),
            f(r),
            f(joint.0),
            f(joint.1),
            f(base - two_atom_error_rd(alpha, theta, 0.0, delta)?),
            f(r_only),
            f(base - joint.2),
        ]);
    }
    let mut out = Outputs::default();
    out.add("", t);
    Ok(out)
}

/// Minimizer brackets for the squeezing parameter and the angle offset.
pub const R_BRACKET: (f64, f64) = (-4.0, 4.0);
pub const DELTA_BRACKET: (f64, f64) = (-0.5, 0.5);
const JOINT_TOL: f64 = 1e-9;

/// `(delta, r, error)` minimizing the two-atom error over both knobs.
pub fn joint_minimum(alpha: f64, theta: f64) -> Result<(f64, f64, f64)> {
    joint_minimum_of(|r, d| two_atom_error_rd(alpha, theta, r, d).unwrap_or(f64::NAN))
}

/// Nested golden-section minimization of `err(r, delta)`.
pub fn joint_minimum_of(err: impl Fn(f64, f64) -> f64) -> Result<(f64, f64, f64)> {
    let inner = |d: f64| minimize_scalar(|r| err(r, d), R_BRACKET, JOINT_TOL);
    let outer = minimize_scalar(|d| inner(d).map_or(f64::NAN, |m| m.value), DELTA_BRACKET, JOINT_TOL)?;
    let best = inner(outer.argmin)?;
    Ok((outer.argmin, best.argmin, best.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::uniform_theta_grid;
    use std::f64::consts::PI;

    #[test]
    fn figure_shapes() {
        let grid = uniform_theta_grid(13);
        let t = &figure2(&grid).unwrap().tables[0].1;
        assert_eq!(t.headers, ["theta", "added_photons_n5", "added_photons_n10", "added_photons_n20"]);
        // more atoms need more added photons at every angle
        for row in &t.rows {
            assert!(row[1].as_f64() < row[2].as_f64() && row[2].as_f64() < row[3].as_f64());
        }
        let t3 = &figure3(&grid).unwrap().tables[0].1;
        assert_eq!(t3.headers.len(), 10);
        let t1 = &figure1(4, 10.0, &grid).unwrap().tables[0].1;
        let last = t1.rows.last().unwrap();
        assert!((last[1].as_f64() - 0.1087).abs() < 1e-4);
        assert!((last[5].as_f64() - 0.5724).abs() < 1e-4);
    }

    #[test]
    fn figure8_strategies() {
        let grid = uniform_theta_grid(25);
        let t = &figure8(20f64.sqrt(), &grid).unwrap().tables[0].1;
        for row in &t.rows[1..] {
            let (d, r, c) = (row[5].as_f64(), row[6].as_f64(), row[7].as_f64());
            assert!(d >= 0.0 && r >= 0.0);
            assert!(c >= r.max(d) - 1e-12, "combined below squeezing only at {}", row[0].as_f64());
        }
        let at_pi = t.rows.last().unwrap();
        assert!((at_pi[1].as_f64() + PI / 79.0).abs() < 1e-12);
        assert!(t.rows[0].iter().skip(5).all(|v| v.as_f64() == 0.0));
    }
}
