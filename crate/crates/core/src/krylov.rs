//! Lanczos (Krylov-subspace) propagation `exp(-i H t) v` for Hermitian `H`
//! given only as a matrix-vector product.
//!
//! Each step builds an orthonormal Krylov basis of dimension at most
//! `max_dim` (full reorthogonalization), diagonalizes the real tridiagonal
//! projection, and picks the largest sub-step whose a-posteriori error
//! estimate `beta * h_{m+1,m} * |e_m^T exp(-i T tau) e_1|` stays within the
//! time-proportional share of `tol`. The same basis is reused while the step
//! is shrunk, so rejected steps only cost a small dense exponential.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// A Hermitian linear operator on `C^dim`.
pub trait HermitianOperator {
    fn dim(&self) -> usize;
    /// `out = H * input`; `out` is fully overwritten.
    fn apply(&self, input: &[C64], out: &mut [C64]);
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KrylovOptions {
    /// Maximum Krylov subspace dimension per step.
    pub max_dim: usize,
    /// Target accuracy of the propagated vector in 2-norm (relative to its norm).
    pub tol: f64,
    /// Budget on accepted plus rejected steps.
    pub max_steps: usize,
}

impl Default for KrylovOptions {
    fn default() -> Self {
        Self {
            max_dim: 30,
            tol: 1e-10,
            max_steps: 100_000,
        }
    }
}

impl KrylovOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct KrylovStats {
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub matvecs: usize,
    /// Sum of the accepted local error estimates.
    pub error_estimate: f64,
}

pub(crate) fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

struct Lanczos {
    basis: Vec<Vec<C64>>,
    eigen: SymmetricEigen<f64, nalgebra::Dyn>,
    /// Residual coupling `h_{m+1,m}`; zero on happy breakdown.
    residual: f64,
}

fn lanczos<H: HermitianOperator + ?Sized>(
    op: &H,
    start: &[C64],
    start_norm: f64,
    max_dim: usize,
    matvecs: &mut usize,
) -> Lanczos {
    let dim = op.dim();
    let max_dim = max_dim.min(dim).max(1);
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(max_dim);
    basis.push(start.iter().map(|x| x / start_norm).collect());
    let mut diag = Vec::with_capacity(max_dim);
    let mut off = Vec::with_capacity(max_dim);
    let mut w = vec![C64::new(0.0, 0.0); dim];
    let mut scale = 0.0_f64;
    let mut residual = 0.0;

    for j in 0..max_dim {
        op.apply(&basis[j], &mut w);
        *matvecs += 1;
        let a = dot(&basis[j], &w).re;
        diag.push(a);
        for (wi, vi) in w.iter_mut().zip(&basis[j]) {
            *wi -= vi * a;
        }
        if j > 0 {
            let b_prev: f64 = off[j - 1];
            for (wi, vi) in w.iter_mut().zip(&basis[j - 1]) {
                *wi -= vi * b_prev;
            }
        }
        // full reorthogonalization
        for v in &basis {
            let c = dot(v, &w);
            for (wi, vi) in w.iter_mut().zip(v) {
                *wi -= vi * c;
            }
        }
        let b = norm(&w);
        scale = scale.max(a.abs() + b + off.last().copied().unwrap_or(0.0));
        if b <= 1e-13 * scale.max(f64::MIN_POSITIVE) {
            residual = 0.0;
            break;
        }
        residual = b;
        if j + 1 == max_dim {
            break;
        }
        off.push(b);
        basis.push(w.iter().map(|x| x / b).collect());
    }

    let m = diag.len();
    basis.truncate(m);
    let mut t = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = diag[i];
        if i + 1 < m {
            t[(i, i + 1)] = off[i];
            t[(i + 1, i)] = off[i];
        }
    }
    Lanczos {
        basis,
        eigen: SymmetricEigen::new(t),
        residual,
    }
}

/// Coefficients `exp(-i T tau) e_1` in the Lanczos basis.
fn small_exp(eigen: &SymmetricEigen<f64, nalgebra::Dyn>, tau: f64) -> Vec<C64> {
    let q = &eigen.eigenvectors;
    let m = q.nrows();
    let weights: Vec<C64> = (0..m)
        .map(|k| q[(0, k)] * C64::from_polar(1.0, -eigen.eigenvalues[k] * tau))
        .collect();
    (0..m)
        .map(|i| (0..m).map(|k| weights[k] * q[(i, k)]).sum())
        .collect()
}

/// Computes `exp(-i H time) v`.
pub fn expm_hermitian<H: HermitianOperator + ?Sized>(
    op: &H,
    v: &[C64],
    time: f64,
    opts: &KrylovOptions,
) -> Result<(Vec<C64>, KrylovStats)> {
    if v.len() != op.dim() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            got: v.len(),
        });
    }
    if !time.is_finite() {
        return Err(Error::InvalidParameter {
            name: "time",
            value: time,
            reason: "must be finite",
        });
    }
    if !(opts.tol > 0.0) || opts.max_dim == 0 {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: opts.tol,
            reason: "tolerance must be positive and max_dim nonzero",
        });
    }

    let mut stats = KrylovStats::default();
    let mut w = v.to_vec();
    let mut beta = norm(&w);
    if beta == 0.0 || time == 0.0 {
        return Ok((w, stats));
    }

    let total = time.abs();
    let sign = time.signum();
    let mut done = 0.0;
    let mut tau = total;

    while done < total {
        let kr = lanczos(op, &w, beta, opts.max_dim, &mut stats.matvecs);
        let m = kr.basis.len();
        let (coeffs, step, err) = loop {
            if stats.accepted_steps + stats.rejected_steps >= opts.max_steps {
                return Err(Error::NonConvergence(format!(
                    "step budget {} exhausted at t = {done:.6e} of {total:.6e}",
                    opts.max_steps
                )));
            }
            let step = tau.min(total - done);
            let coeffs = small_exp(&kr.eigen, sign * step);
            let err = beta * kr.residual * coeffs[m - 1].norm();
            // the estimate cannot resolve below the rounding level of the
            // small exponential, so never demand more than that
            let floor = 8.0 * f64::EPSILON * beta * kr.residual * m as f64;
            let allowed = (opts.tol * beta * step / total).max(floor);
            if err <= allowed || kr.residual == 0.0 {
                break (coeffs, step, err);
            }
            stats.rejected_steps += 1;
            let shrink = 0.9 * (allowed / err).powf(1.0 / m as f64);
            tau = step * shrink.clamp(0.1, 0.9);
            if tau <= total * 1e-15 {
                return Err(Error::NonConvergence(format!(
                    "step size underflow at t = {done:.6e}"
                )));
            }
        };

        let mut next = vec![C64::new(0.0, 0.0); w.len()];
        for (c, b) in coeffs.iter().zip(&kr.basis) {
            let c = c * beta;
            for (n, bi) in next.iter_mut().zip(b) {
                *n += bi * c;
            }
        }
        w = next;
        beta = norm(&w);
        done += step;
        stats.accepted_steps += 1;
        stats.error_estimate += err;

        let allowed = opts.tol * step / total;
        tau = if err > 0.0 {
            step * (0.9 * (allowed * beta / err).powf(1.0 / m as f64)).clamp(1.0, 5.0)
        } else {
            step * 5.0
        };
    }
    Ok((w, stats))
}

/// Dense Hermitian operator, mainly for tests and small problems.
impl HermitianOperator for DMatrix<C64> {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply(&self, input: &[C64], out: &mut [C64]) {
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..self.ncols()).map(|c| self[(r, c)] * input[c]).sum();
        }
    }
}
