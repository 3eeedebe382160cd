//! Haar-random ensembles of initial atomic states: per-sample exact and
//! perturbative gate errors across an angle grid, ensemble statistics, cat
//! state overlays and worst-case scans.
//!
//! Sample `i` is drawn from its own ChaCha8 stream `(seed, i)`, so results do
//! not depend on how rayon schedules the work. The same samples are reused
//! for every angle of the grid.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::dynamics::{gate_error_exact_sectors, Method, RotationSpec, SectorPropagator};
use crate::error::{check_finite, Error, Result};
use crate::formulas::{avg_error, avg_r_opt, avg_r_opt_limit_at_zero};
use crate::perturbation::{assemble, atomic_moments, field_quadrature_moments, AtomicInputs, FieldMoments};
use crate::quantum::{
    build_collective_ops, cat_state, check_atom_count, default_n_max, haar_random_state_with,
    squeezed_coherent_state, AtomState, CatKind, CollectiveOps, FieldState,
};
use crate::rng::state_rng;

/// Largest atom number accepted for exact ensemble evolution.
pub const MAX_EXACT_ENSEMBLE_ATOMS: usize = 6;
/// Minimum sample count for the ensemble-mean self-check.
pub const SELF_CHECK_MIN_SAMPLES: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleMethod {
    Exact,
    Perturbative,
    /// Exact errors as the primary result plus perturbative errors for the
    /// same samples.
    Both,
}

impl EnsembleMethod {
    fn primary(self) -> Method {
        match self {
            EnsembleMethod::Perturbative => Method::Perturbative,
            _ => Method::Exact,
        }
    }
}

/// Field squeezing used at each angle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Squeezing {
    /// The same squeezing parameter at every angle.
    Fixed(f64),
    /// The angle-dependent optimum of the Haar-averaged error.
    AverageOptimal,
}

impl Squeezing {
    pub fn at(&self, theta: f64) -> Result<f64> {
        match *self {
            Squeezing::Fixed(r) => Ok(r),
            Squeezing::AverageOptimal if theta == 0.0 => Ok(avg_r_opt_limit_at_zero()),
            Squeezing::AverageOptimal => avg_r_opt(theta),
        }
    }
}

/// Configuration of an ensemble experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleRun {
    pub n_atoms: usize,
    pub alpha: f64,
    pub squeezing: Squeezing,
    pub theta_grid: Vec<f64>,
    pub n_samples: usize,
    pub seed: u64,
    pub method: EnsembleMethod,
    /// Fock truncation; the default rule is used when absent.
    pub n_max: Option<usize>,
}

/// `points` uniform angles on `[0, pi]`.
pub fn uniform_theta_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![PI],
        _ => (0..points)
            .map(|i| if i + 1 == points { PI } else { PI * i as f64 / (points - 1) as f64 })
            .collect(),
    }
}

impl EnsembleRun {
    pub fn validate(&self) -> Result<()> {
        check_atom_count(self.n_atoms)?;
        check_finite("alpha", self.alpha)?;
        if let Squeezing::Fixed(r) = self.squeezing {
            check_finite("r", r)?;
        }
        if self.alpha <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: self.alpha,
                reason: "must be positive",
            });
        }
        if self.n_samples == 0 {
            return Err(Error::InvalidParameter {
                name: "samples",
                value: 0.0,
                reason: "at least one sample is required",
            });
        }
        if self.theta_grid.is_empty() {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: f64::NAN,
                reason: "angle grid is empty",
            });
        }
        for &t in &self.theta_grid {
            check_finite("theta", t)?;
            if !(0.0..=PI).contains(&t) {
                return Err(Error::InvalidParameter {
                    name: "theta",
                    value: t,
                    reason: "ensemble angles must lie in [0, pi]",
                });
            }
        }
        if self.method != EnsembleMethod::Perturbative && self.n_atoms > MAX_EXACT_ENSEMBLE_ATOMS {
            return Err(Error::ResourceGuard(format!(
                "exact ensembles support at most {MAX_EXACT_ENSEMBLE_ATOMS} atoms, got {}",
                self.n_atoms
            )));
        }
        Ok(())
    }

    /// Squeezing parameter at each grid angle.
    pub fn r_grid(&self) -> Result<Vec<f64>> {
        self.theta_grid.iter().map(|&t| self.squeezing.at(t)).collect()
    }

    /// Fock truncation shared by all angles.
    pub fn n_max(&self) -> Result<usize> {
        if let Some(n) = self.n_max {
            return Ok(n);
        }
        let r = self.r_grid()?.into_iter().fold(0.0f64, |m, r| m.max(r.abs()));
        Ok(default_n_max(self.alpha, r))
    }

    /// The Haar samples of this run, in sample order.
    pub fn draw_states(&self) -> Result<Vec<AtomState>> {
        (0..self.n_samples)
            .into_par_iter()
            .map(|i| haar_random_state_with(self.n_atoms, &mut state_rng(self.seed, i as u64)))
            .collect()
    }
}

/// How the run can be reproduced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub rng: String,
    pub stream_rule: String,
    pub samples_shared_across_theta: bool,
    pub n_max: usize,
    /// Squeezing parameter used at each angle.
    pub r_grid: Vec<f64>,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleResult {
    pub config: EnsembleRun,
    pub method: Method,
    /// `[sample][theta]` errors from the primary method.
    pub per_sample_errors: Vec<Vec<f64>>,
    /// Perturbative errors for the same samples when the method is `both`.
    pub per_sample_perturbative: Option<Vec<Vec<f64>>>,
    pub mean: Vec<f64>,
    /// `std / sqrt(n_samples)` per angle (sample standard deviation).
    pub std_error: Vec<f64>,
    /// Primary-method errors of the x- and z-cat states.
    pub cat_x_error: Vec<f64>,
    pub cat_z_error: Vec<f64>,
    /// Perturbative predictions for the cat states.
    pub cat_x_theory: Vec<f64>,
    pub cat_z_theory: Vec<f64>,
    /// Closed-form Haar average.
    pub analytic_mean: Vec<f64>,
    /// For perturbative samples with at least [`SELF_CHECK_MIN_SAMPLES`]:
    /// whether every angle's mean lies within 3 standard errors of the
    /// closed-form average.
    pub self_check: Option<bool>,
    pub provenance: Provenance,
}

impl EnsembleResult {
    pub fn n_theta(&self) -> usize {
        self.config.theta_grid.len()
    }
}

fn column_stats(rows: &[Vec<f64>], n_theta: usize) -> (Vec<f64>, Vec<f64>) {
    let n = rows.len() as f64;
    let mut mean = vec![0.0; n_theta];
    let mut se = vec![0.0; n_theta];
    for k in 0..n_theta {
        let m = rows.iter().map(|r| r[k]).sum::<f64>() / n;
        mean[k] = m;
        if rows.len() > 1 {
            let var = rows.iter().map(|r| (r[k] - m).powi(2)).sum::<f64>() / (n - 1.0);
            se[k] = (var / n).sqrt();
        }
    }
    (mean, se)
}

/// Field, moments and (for exact runs) propagator at one angle.
struct AngleContext {
    theta: f64,
    r: f64,
    field: FieldState,
    moments: FieldMoments,
    propagator: Option<SectorPropagator>,
}

/// Shared per-run resources.
struct Context {
    ops: CollectiveOps,
    angles: Vec<AngleContext>,
    n_max: usize,
}

impl Context {
    fn new(cfg: &EnsembleRun) -> Result<Self> {
        let n_max = cfg.n_max()?;
        let ops = build_collective_ops(cfg.n_atoms)?;
        let exact = cfg.method != EnsembleMethod::Perturbative;
        let r_grid = cfg.r_grid()?;
        let fixed = match cfg.squeezing {
            Squeezing::Fixed(r) => Some(squeezed_coherent_state(cfg.alpha, r, n_max)?),
            Squeezing::AverageOptimal => None,
        };
        let angles = cfg
            .theta_grid
            .par_iter()
            .zip(r_grid.par_iter())
            .map(|(&theta, &r)| {
                let field = match &fixed {
                    Some(f) => f.clone(),
                    None => squeezed_coherent_state(cfg.alpha, r, n_max)?,
                };
                let moments = field_quadrature_moments(&field)?;
                let propagator = if exact {
                    let spec = RotationSpec::new(cfg.n_atoms, cfg.alpha, r, theta);
                    Some(SectorPropagator::new(cfg.n_atoms, n_max, spec.duration())?)
                } else {
                    None
                };
                Ok(AngleContext {
                    theta,
                    r,
                    field,
                    moments,
                    propagator,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { ops, angles, n_max })
    }

    fn perturbative_row(&self, cfg: &EnsembleRun, psi: &AtomState) -> Result<Vec<f64>> {
        let inputs = AtomicInputs::from(&atomic_moments(psi, &self.ops)?);
        Ok(self
            .angles
            .iter()
            .map(|a| assemble(&inputs, &a.moments, cfg.alpha, a.theta, 0.0).total)
            .collect())
    }

    fn exact_row(&self, cfg: &EnsembleRun, psi: &AtomState) -> Result<Vec<f64>> {
        self.angles
            .iter()
            .map(|a| {
                let spec = RotationSpec::new(cfg.n_atoms, cfg.alpha, a.r, a.theta);
                let p = a.propagator.as_ref().expect("exact propagators were built");
                Ok(gate_error_exact_sectors(psi, &a.field, &spec, p)?.total)
            })
            .collect()
    }

    fn primary_row(&self, cfg: &EnsembleRun, psi: &AtomState) -> Result<Vec<f64>> {
        match cfg.method {
            EnsembleMethod::Perturbative => self.perturbative_row(cfg, psi),
            _ => self.exact_row(cfg, psi),
        }
    }
}

/// Runs the ensemble on Haar samples drawn from `cfg.seed`.
pub fn run_ensemble(cfg: &EnsembleRun) -> Result<EnsembleResult> {
    cfg.validate()?;
    let states = cfg.draw_states()?;
    run_on_states(cfg, &states)
}

/// Runs the ensemble machinery on explicitly given states (one per sample).
pub fn run_on_states(cfg: &EnsembleRun, states: &[AtomState]) -> Result<EnsembleResult> {
    cfg.validate()?;
    if states.len() != cfg.n_samples {
        return Err(Error::DimensionMismatch {
            expected: cfg.n_samples,
            got: states.len(),
        });
    }
    if let Some(s) = states.iter().find(|s| s.n_atoms() != cfg.n_atoms) {
        return Err(Error::DimensionMismatch {
            expected: cfg.n_atoms,
            got: s.n_atoms(),
        });
    }
    let ctx = Context::new(cfg)?;
    let n_theta = cfg.theta_grid.len();

    let per_sample: Vec<Vec<f64>> = states
        .par_iter()
        .map(|psi| ctx.primary_row(cfg, psi))
        .collect::<Result<_>>()?;
    let perturbative = if cfg.method == EnsembleMethod::Both {
        Some(
            states
                .par_iter()
                .map(|psi| ctx.perturbative_row(cfg, psi))
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    let (mean, std_error) = column_stats(&per_sample, n_theta);

    let cat_x = cat_state(CatKind::X, cfg.n_atoms)?;
    let cat_z = cat_state(CatKind::Z, cfg.n_atoms)?;
    let analytic_mean = ctx
        .angles
        .iter()
        .map(|a| avg_error(cfg.n_atoms, cfg.alpha, a.theta, a.r))
        .collect::<Result<Vec<_>>>()?;

    let checked = match cfg.method {
        EnsembleMethod::Perturbative => Some(&per_sample),
        EnsembleMethod::Both => perturbative.as_ref(),
        EnsembleMethod::Exact => None,
    };
    let self_check = checked
        .filter(|_| cfg.n_samples >= SELF_CHECK_MIN_SAMPLES)
        .map(|rows| {
            let (m, se) = column_stats(rows, n_theta);
            within_three_sigma(&m, &se, &analytic_mean)
        });

    Ok(EnsembleResult {
        method: cfg.method.primary(),
        per_sample_errors: per_sample,
        per_sample_perturbative: perturbative,
        mean,
        std_error,
        cat_x_error: ctx.primary_row(cfg, &cat_x)?,
        cat_z_error: ctx.primary_row(cfg, &cat_z)?,
        cat_x_theory: ctx.perturbative_row(cfg, &cat_x)?,
        cat_z_theory: ctx.perturbative_row(cfg, &cat_z)?,
        analytic_mean,
        self_check,
        provenance: Provenance {
            seed: cfg.seed,
            rng: "ChaCha8".into(),
            stream_rule: "sample i uses stream i of the run seed".into(),
            samples_shared_across_theta: true,
            n_max: ctx.n_max,
            r_grid: ctx.angles.iter().map(|a| a.r).collect(),
            version: env!("CARGO_PKG_VERSION").into(),
        },
        config: cfg.clone(),
    })
}

/// `|mean - reference| <= 3 se` at every point (exact equality accepted
/// where the spread vanishes, as at `theta = 0`).
pub fn within_three_sigma(mean: &[f64], std_error: &[f64], reference: &[f64]) -> bool {
    mean.iter()
        .zip(std_error)
        .zip(reference)
        .all(|((m, s), r)| (m - r).abs() <= 3.0 * s + 1e-12 * r.abs().max(1e-300))
}

/// Worst sample at one angle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorstCase {
    pub theta: f64,
    pub sample_index: usize,
    pub error: f64,
    pub state: AtomState,
    /// `|<x-cat|state>|^2`.
    pub x_cat_fidelity: f64,
    pub x_cat_error: f64,
    /// Fraction of samples whose error exceeds the x-cat error.
    pub fraction_above_x_cat: f64,
}

/// Per-angle maximum-error sample of a Haar ensemble.
pub fn worst_case_scan(cfg: &EnsembleRun) -> Result<Vec<WorstCase>> {
    cfg.validate()?;
    let states = cfg.draw_states()?;
    worst_case_scan_on_states(cfg, &states)
}

pub fn worst_case_scan_on_states(cfg: &EnsembleRun, states: &[AtomState]) -> Result<Vec<WorstCase>> {
    let result = run_on_states(cfg, states)?;
    let cat_x = cat_state(CatKind::X, cfg.n_atoms)?;
    Ok(cfg
        .theta_grid
        .iter()
        .enumerate()
        .map(|(k, &theta)| {
            let (index, error) = result
                .per_sample_errors
                .iter()
                .enumerate()
                .map(|(i, row)| (i, row[k]))
                .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
            let x_err = result.cat_x_error[k];
            let above = result.per_sample_errors.iter().filter(|row| row[k] > x_err).count();
            WorstCase {
                theta,
                sample_index: index,
                error,
                state: states[index].clone(),
                x_cat_fidelity: cat_x.fidelity(&states[index]).clamp(0.0, 1.0),
                x_cat_error: x_err,
                fraction_above_x_cat: above as f64 / states.len() as f64,
            }
        })
        .collect())
}
