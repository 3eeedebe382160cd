//! Closed-form error expressions, optimal squeezing and interaction-time
//! offsets, Haar-ensemble averages and multiplet degeneracies, plus a
//! golden-section minimizer used to verify every optimum numerically.
//!
//! All errors are the second-order (`1/alpha^2`) predictions; `alpha` is the
//! coherent amplitude and `r` the squeezing parameter (positive = amplitude
//! squeezing).

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{check_finite, Error, Result};
use crate::quantum::CatKind;

fn check_alpha(alpha: f64) -> Result<f64> {
    check_finite("alpha", alpha)?;
    if alpha <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "must be positive",
        });
    }
    Ok(alpha)
}

fn check_nbar(nbar: f64) -> Result<f64> {
    check_finite("nbar", nbar)?;
    if nbar <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "nbar",
            value: nbar,
            reason: "must be positive",
        });
    }
    Ok(nbar)
}

/// Optima are certified on `(0, pi]`.
fn check_optimum_angle(theta: f64) -> Result<f64> {
    check_finite("theta", theta)?;
    if !(theta > 0.0 && theta <= PI) {
        return Err(Error::InvalidParameter {
            name: "theta",
            value: theta,
            reason: "optima are defined for 0 < theta <= pi",
        });
    }
    Ok(theta)
}

fn check_min_atoms(n_atoms: usize, min: usize) -> Result<()> {
    if n_atoms < min {
        return Err(Error::AtomCount {
            got: n_atoms,
            min,
            max: usize::MAX,
        });
    }
    Ok(())
}

fn sin_half_sq(theta: f64) -> f64 {
    (0.5 * theta).sin().powi(2)
}

/// Parameters of a cat-state error evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatErrorParams {
    pub kind: CatKind,
    pub n_atoms: usize,
    pub alpha: f64,
    pub theta: f64,
    pub r: f64,
    /// Angle offset from a stretched interaction time.
    pub delta: f64,
}

impl CatErrorParams {
    pub fn new(kind: CatKind, n_atoms: usize, alpha: f64, theta: f64, r: f64) -> Self {
        Self {
            kind,
            n_atoms,
            alpha,
            theta,
            r,
            delta: 0.0,
        }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }
}

/// Amplitude and phase weights `(A, B)` of a cat error `pre (A e^{-2r} + B e^{2r})`.
fn cat_weights(kind: CatKind, n: f64, theta: f64) -> (f64, f64) {
    match kind {
        CatKind::Z => (
            theta * theta,
            theta.sin().powi(2) + 4.0 * n * sin_half_sq(theta).powi(2),
        ),
        CatKind::X => (n * theta * theta, 4.0 * sin_half_sq(theta)),
    }
}

/// Error of a z- or x-cat state of `N >= 2` atoms. For `N >= 3` the offset
/// `delta` enters as `theta -> theta + delta` plus the penalty
/// `delta^2 Var(Jx)` (`N/4` for z, `N^2/4` for x); `N = 2` uses the two-atom
/// expression, where both cats coincide.
pub fn cat_error(p: &CatErrorParams) -> Result<f64> {
    check_min_atoms(p.n_atoms, 2)?;
    check_alpha(p.alpha)?;
    check_finite("theta", p.theta)?;
    check_finite("r", p.r)?;
    check_finite("delta", p.delta)?;
    if p.n_atoms == 2 {
        return two_atom_error_rd(p.alpha, p.theta, p.r, p.delta);
    }
    let n = p.n_atoms as f64;
    let angle = p.theta + p.delta;
    let (a, b) = cat_weights(p.kind, n, angle);
    let var_jx = match p.kind {
        CatKind::Z => n / 4.0,
        CatKind::X => n * n / 4.0,
    };
    Ok(var_jx * p.delta * p.delta
        + n / (16.0 * p.alpha * p.alpha) * (a * (-2.0 * p.r).exp() + b * (2.0 * p.r).exp()))
}

/// Squeezing that minimizes [`cat_error`] at `delta = 0`.
pub fn cat_r_opt(kind: CatKind, n_atoms: usize, theta: f64) -> Result<f64> {
    check_min_atoms(n_atoms, 2)?;
    check_optimum_angle(theta)?;
    if n_atoms == 2 {
        return two_atom_r_opt(theta);
    }
    let (a, b) = cat_weights(kind, n_atoms as f64, theta);
    Ok(0.25 * (a / b).ln())
}

/// [`cat_error`] at [`cat_r_opt`]; zero at `theta = 0`.
pub fn cat_error_opt(kind: CatKind, n_atoms: usize, alpha: f64, theta: f64) -> Result<f64> {
    check_min_atoms(n_atoms, 2)?;
    check_alpha(alpha)?;
    if theta == 0.0 {
        return Ok(0.0);
    }
    check_optimum_angle(theta)?;
    let n = n_atoms as f64;
    let a2 = alpha * alpha;
    Ok(match (n_atoms, kind) {
        (2, _) => theta * sin_half_sq(theta) / a2,
        (_, CatKind::Z) => {
            n / (8.0 * a2) * theta * (theta.sin().powi(2) + 4.0 * n * sin_half_sq(theta).powi(2)).sqrt()
        }
        (_, CatKind::X) => n * n.sqrt() / (4.0 * a2) * theta * (0.5 * theta).sin(),
    })
}

/// Optimal squeezing for the two-atom cat; tends to `+inf` as `theta -> 0`.
pub fn two_atom_r_opt(theta: f64) -> Result<f64> {
    check_optimum_angle(theta)?;
    Ok(0.25 * (theta * theta / (4.0 * sin_half_sq(theta).powi(2))).ln())
}

/// Two-atom cat error with squeezing `r` and angle offset `delta`:
/// `delta^2 + (1/4 alpha^2)[(theta+delta)^2 e^{-2r} + 4 sin^4((theta+delta)/2) e^{2r}]`.
pub fn two_atom_error_rd(alpha: f64, theta: f64, r: f64, delta: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_finite("theta", theta)?;
    check_finite("r", r)?;
    check_finite("delta", delta)?;
    let angle = theta + delta;
    Ok(delta * delta
        + (angle * angle * (-2.0 * r).exp() + 4.0 * sin_half_sq(angle).powi(2) * (2.0 * r).exp())
            / (4.0 * alpha * alpha))
}

/// Initial state of a single atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SingleAtomInitial {
    Excited,
    Ground,
}

/// `(1/16 alpha^2)(theta e^{-r} +- sin theta e^{r})^2`, `+` for the excited
/// and `-` for the ground state.
pub fn single_atom_error(alpha: f64, theta: f64, r: f64, initial: SingleAtomInitial) -> Result<f64> {
    check_alpha(alpha)?;
    check_finite("theta", theta)?;
    check_finite("r", r)?;
    let sign = match initial {
        SingleAtomInitial::Excited => 1.0,
        SingleAtomInitial::Ground => -1.0,
    };
    Ok((theta * (-r).exp() + sign * theta.sin() * r.exp()).powi(2) / (16.0 * alpha * alpha))
}

/// `r = (1/2) ln(theta / sin theta)`, defined for `0 < theta < pi`
/// (diverges at `pi`). Minimizes the excited-state error and zeroes the
/// ground-state one.
pub fn single_atom_r_opt(theta: f64) -> Result<f64> {
    check_finite("theta", theta)?;
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::InvalidParameter {
            name: "theta",
            value: theta,
            reason: "single-atom optimum needs 0 < theta < pi",
        });
    }
    Ok(0.5 * (theta / theta.sin()).ln())
}

/// Minimum over `r` of the excited-state error, `theta sin theta / (4 alpha^2)`,
/// for `0 <= theta <= pi`; vanishes at `pi`, reached only as `r -> inf`.
pub fn single_atom_error_opt(alpha: f64, theta: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_finite("theta", theta)?;
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::InvalidParameter {
            name: "theta",
            value: theta,
            reason: "must lie in [0, pi]",
        });
    }
    Ok(theta * theta.sin() / (4.0 * alpha * alpha))
}

/// `1 / (1 + 2^{-N})`.
fn haar_prefactor(n_atoms: usize) -> f64 {
    1.0 / (1.0 + 0.5f64.powi(n_atoms as i32))
}

/// Haar-averaged error
/// `[1/(1+2^{-N})] (N/16 alpha^2)(theta^2 e^{-2r} + 4 sin^2(theta/2) e^{2r})`.
pub fn avg_error(n_atoms: usize, alpha: f64, theta: f64, r: f64) -> Result<f64> {
    check_min_atoms(n_atoms, 1)?;
    check_alpha(alpha)?;
    check_finite("theta", theta)?;
    check_finite("r", r)?;
    let n = n_atoms as f64;
    Ok(haar_prefactor(n_atoms) * n / (16.0 * alpha * alpha)
        * (theta * theta * (-2.0 * r).exp() + 4.0 * sin_half_sq(theta) * (2.0 * r).exp()))
}

/// `(1/4) ln(theta^2 / (4 sin^2(theta/2)))`, independent of `N`.
pub fn avg_r_opt(theta: f64) -> Result<f64> {
    check_optimum_angle(theta)?;
    Ok(0.25 * (theta * theta / (4.0 * sin_half_sq(theta))).ln())
}

/// Continuous limit of [`avg_r_opt`] at `theta = 0`, where the formula
/// itself is `0/0`. The cat-state optima diverge there instead.
pub fn avg_r_opt_limit_at_zero() -> f64 {
    0.0
}

/// `[1/(1+2^{-N})] (N / 4 alpha^2) theta sin(theta/2)`.
pub fn avg_error_opt(n_atoms: usize, alpha: f64, theta: f64) -> Result<f64> {
    check_min_atoms(n_atoms, 1)?;
    check_alpha(alpha)?;
    check_finite("theta", theta)?;
    Ok(haar_prefactor(n_atoms) * n_atoms as f64 / (4.0 * alpha * alpha) * theta * (0.5 * theta).sin())
}

/// Bound `[1/(1+2^{-N})] pi N / (4 nbar)` on the optimized average error,
/// attained at `theta = pi` for a coherent amplitude `alpha^2 = nbar`.
pub fn avg_error_opt_bound(n_atoms: usize, nbar: f64) -> Result<f64> {
    check_min_atoms(n_atoms, 1)?;
    check_nbar(nbar)?;
    Ok(haar_prefactor(n_atoms) * PI * n_atoms as f64 / (4.0 * nbar))
}

/// Largest `N` for which multiplet degeneracies are evaluated exactly.
pub const MAX_EXACT_ATOMS: usize = 30;

/// An angular-momentum multiplet `j` of `N` spin-1/2 systems, `j` stored as `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracySpec {
    pub n_atoms: usize,
    pub twice_j: u32,
}

impl DegeneracySpec {
    pub fn new(n_atoms: usize, twice_j: u32) -> Result<Self> {
        let spec = Self { n_atoms, twice_j };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = (self.twice_j as usize) <= self.n_atoms
            && (self.n_atoms - self.twice_j as usize) % 2 == 0
            && (1..=MAX_EXACT_ATOMS).contains(&self.n_atoms);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidMultiplet {
                n_atoms: self.n_atoms,
                twice_j: self.twice_j,
            })
        }
    }

    pub fn j(&self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    /// All multiplets of `N` atoms, from `j_min` to `N/2`.
    pub fn all(n_atoms: usize) -> Result<Vec<Self>> {
        (n_atoms % 2..=n_atoms)
            .step_by(2)
            .map(|tj| Self::new(n_atoms, tj as u32))
            .collect()
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Number of multiplets with total spin `j`:
/// `N! (2j+1) / ((N/2 + j + 1)! (N/2 - j)!)`, in exact integer arithmetic.
pub fn kmax(spec: &DegeneracySpec) -> Result<u128> {
    spec.validate()?;
    let n = spec.n_atoms;
    let tj = spec.twice_j as usize;
    let upper = (n + tj) / 2 + 1;
    let lower = (n - tj) / 2;
    let num = factorial(n) * (tj as u128 + 1);
    let den = factorial(upper) * factorial(lower);
    if num % den != 0 {
        return Err(Error::NonConvergence(format!(
            "degeneracy for N = {n}, 2j = {tj} is not an integer"
        )));
    }
    Ok(num / den)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// `4 sum_{m >= 0} m^2 C(N, N/2 + m)` over `m = 0 or 1/2, ..., N/2`, as an
/// exact integer (the factor 4 clears the half-integer `m`).
pub fn m_squared_binomial_sum_x4(n_atoms: usize) -> Result<u128> {
    check_min_atoms(n_atoms, 1)?;
    if n_atoms > 120 {
        return Err(Error::ResourceGuard(format!(
            "exact binomial sum supports N <= 120, got {n_atoms}"
        )));
    }
    Ok((n_atoms.div_ceil(2)..=n_atoms)
        .map(|k| {
            let twice_m = (2 * k - n_atoms) as u128;
            twice_m * twice_m * binomial(n_atoms, k)
        })
        .sum())
}

/// `sum_{m >= 0} m^2 C(N, N/2 + m)`; equals `2^{N-3} N` for `N >= 2`.
pub fn m_squared_binomial_sum(n_atoms: usize) -> Result<f64> {
    Ok(m_squared_binomial_sum_x4(n_atoms)? as f64 / 4.0)
}

/// Haar average of `<Jz>^2`, `N / (4 (2^N + 1))`.
pub fn haar_jz_mean_sq(n_atoms: usize) -> Result<f64> {
    check_min_atoms(n_atoms, 1)?;
    let d = 2f64.powi(n_atoms as i32);
    let closed = n_atoms as f64 / (4.0 * (d + 1.0));
    if n_atoms <= 60 {
        let from_sum = 2.0 / (d * (d + 1.0)) * m_squared_binomial_sum(n_atoms)?;
        debug_assert!((from_sum - closed).abs() <= 1e-12 * closed);
    }
    Ok(closed)
}

/// Haar average of `<J^2>`, `3N/4`.
pub fn haar_jsq_mean(n_atoms: usize) -> Result<f64> {
    check_min_atoms(n_atoms, 1)?;
    let closed = 0.75 * n_atoms as f64;
    if n_atoms <= MAX_EXACT_ATOMS {
        debug_assert!((jsq_multiplet_sum(n_atoms)? - closed).abs() <= 1e-12 * closed);
    }
    Ok(closed)
}

/// `2^{-N} sum_j j(j+1)(2j+1) kmax(j)`: the Haar average of `<J^2>` from the
/// multiplet decomposition.
pub fn jsq_multiplet_sum(n_atoms: usize) -> Result<f64> {
    let mut total = 0.0;
    for spec in DegeneracySpec::all(n_atoms)? {
        let j = spec.j();
        total += j * (j + 1.0) * (2.0 * j + 1.0) * kmax(&spec)? as f64;
    }
    Ok(total / 2f64.powi(n_atoms as i32))
}

/// Which offset formula to use in [`delta_opt`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaKind {
    /// z-cat with `N > 2`.
    ZCat,
    /// Two-atom cat.
    TwoAtom,
}

/// Angle offset minimizing the `delta`-dependent error at zero squeezing,
/// to first order in `delta`:
///
/// * z-cat: `-[(N-1) sin 2 theta / 2 - N sin theta - theta] /
///   [(N-1) cos 2 theta - N cos theta - 1 - 4 nbar]`
/// * two atoms: `-[theta + sin theta (1 - cos theta)] /
///   [1 + 4 nbar + cos theta - cos 2 theta]`
pub fn delta_opt(kind: DeltaKind, n_atoms: usize, theta: f64, nbar: f64) -> Result<f64> {
    check_finite("theta", theta)?;
    check_nbar(nbar)?;
    match kind {
        DeltaKind::TwoAtom => {
            if n_atoms != 2 {
                return Err(Error::AtomCount {
                    got: n_atoms,
                    min: 2,
                    max: 2,
                });
            }
            Ok(-(theta + theta.sin() * (1.0 - theta.cos()))
                / (1.0 + 4.0 * nbar + theta.cos() - (2.0 * theta).cos()))
        }
        DeltaKind::ZCat => {
            check_min_atoms(n_atoms, 3)?;
            let n = n_atoms as f64;
            let num = 0.5 * (n - 1.0) * (2.0 * theta).sin() - n * theta.sin() - theta;
            let den = (n - 1.0) * (2.0 * theta).cos() - n * theta.cos() - 1.0 - 4.0 * nbar;
            Ok(-num / den)
        }
    }
}

/// Result of [`minimize_scalar`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Minimum {
    pub argmin: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section search for the minimum of a unimodal `f` on
/// `[lo, hi]`, to an argmin accuracy of `tol`. A minimum that ends up on
/// the bracket boundary (no interior decrease) is reported as
/// [`Error::BadBracket`].
pub fn minimize_scalar<F: FnMut(f64) -> f64>(mut f: F, bracket: (f64, f64), tol: f64) -> Result<Minimum> {
    let (mut a, mut b) = bracket;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::BadBracket { lo: a, hi: b });
    }
    check_finite("tol", tol)?;
    if tol <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "must be positive",
        });
    }
    let (lo, hi) = (a, b);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut evaluations = 2;
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        evaluations += 1;
        if evaluations > 10_000 {
            return Err(Error::NonConvergence("golden-section search did not converge".into()));
        }
    }
    let argmin = 0.5 * (a + b);
    let value = f(argmin);
    evaluations += 1;
    let near_edge = (argmin - lo).abs() <= 2.0 * tol || (hi - argmin).abs() <= 2.0 * tol;
    if near_edge || !value.is_finite() {
        return Err(Error::BadBracket { lo, hi });
    }
    Ok(Minimum {
        argmin,
        value,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn two_atom_reference_values() {
        let alpha = 20f64.sqrt();
        let half = two_atom_error_rd(alpha, PI / 2.0, 0.0, 0.0).unwrap();
        let full = two_atom_error_rd(alpha, PI, 0.0, 0.0).unwrap();
        assert!(close(half, 0.043, 5e-4), "{half}");
        assert!(close(full, 0.173, 5e-4), "{full}");
        let p = CatErrorParams::new(CatKind::X, 2, alpha, PI, 0.0);
        assert_eq!(cat_error(&p).unwrap(), full);
    }

    #[test]
    fn cat_error_values() {
        let z = cat_error(&CatErrorParams::new(CatKind::Z, 4, 10.0, PI, 0.0)).unwrap();
        assert!(close(z, 4.0 / 1600.0 * (PI * PI + 16.0), 1e-14));
        assert!(close(z, 0.0647, 1e-4));
        let x = cat_error(&CatErrorParams::new(CatKind::X, 4, 10.0, PI, 0.0)).unwrap();
        assert!(close(x, 0.1087, 1e-4));
        assert!(cat_error(&CatErrorParams::new(CatKind::X, 1, 10.0, PI, 0.0)).is_err());
        assert!(cat_error(&CatErrorParams::new(CatKind::X, 3, 0.0, PI, 0.0)).is_err());
    }

    #[test]
    fn cat_delta_penalty() {
        for kind in [CatKind::Z, CatKind::X] {
            let base = CatErrorParams::new(kind, 5, 8.0, 1.0, 0.1);
            let shifted = cat_error(&base.with_delta(0.02)).unwrap();
            let rotated = cat_error(&CatErrorParams { theta: 1.02, ..base }).unwrap();
            let var = if kind == CatKind::Z { 5.0 / 4.0 } else { 25.0 / 4.0 };
            assert!(close(shifted - rotated, var * 0.02 * 0.02, 1e-14));
        }
    }

    #[test]
    fn optimal_squeezing_values() {
        let r = cat_r_opt(CatKind::X, 4, PI).unwrap();
        assert!(close(r, 0.5 * PI.ln(), 1e-14));
        assert!(close(r, 0.5724, 1e-4));
        let r2 = cat_r_opt(CatKind::X, 2, 0.01).unwrap();
        assert!(close(r2, 2.649, 1e-3), "{r2}");
        assert_eq!(r2, cat_r_opt(CatKind::Z, 2, 0.01).unwrap());
        // z optimum turns negative and follows ln(N^{-1/4})
        let rz = |n: usize| cat_r_opt(CatKind::Z, n, PI / 2.0).unwrap();
        assert!(rz(50) < 0.0);
        assert!(close(rz(4000) - rz(1000), -0.25 * 4f64.ln(), 1e-3));
        assert!(cat_r_opt(CatKind::X, 4, 0.0).is_err());
        assert!(cat_r_opt(CatKind::X, 4, 3.5).is_err());
    }

    #[test]
    fn optimized_cat_errors() {
        let x = cat_error_opt(CatKind::X, 4, 10.0, PI).unwrap();
        assert!(close(x, 8.0 * PI / 400.0, 1e-14));
        assert!(close(x, 0.06283, 1e-5));
        let two = cat_error_opt(CatKind::X, 2, 20f64.sqrt(), PI).unwrap();
        assert!(close(two, PI / 20.0, 1e-14));
        assert_eq!(cat_error_opt(CatKind::Z, 5, 3.0, 0.0).unwrap(), 0.0);
        for kind in [CatKind::Z, CatKind::X] {
            for n in 2..=9 {
                for theta in [0.2, 1.0, 2.0, PI] {
                    let r = cat_r_opt(kind, n, theta).unwrap();
                    let direct = cat_error(&CatErrorParams::new(kind, n, 7.0, theta, r)).unwrap();
                    let opt = cat_error_opt(kind, n, 7.0, theta).unwrap();
                    assert!(close(direct, opt, 1e-12 * opt.max(1e-3)), "{kind} {n} {theta}");
                }
            }
        }
        // both cats share the maximum N sqrt N pi / 4 alpha^2 at pi
        let n = 6.0f64;
        let z = cat_error_opt(CatKind::Z, 6, 10.0, PI).unwrap();
        assert!(close(z, n * n.sqrt() * PI / 400.0, 1e-14));
    }

    #[test]
    fn n_three_halves_scaling() {
        for n in 2..=20usize {
            for theta in [0.7, PI] {
                let a = cat_error_opt(CatKind::X, n.max(3), 5.0, theta).unwrap();
                let b = cat_error_opt(CatKind::X, 2 * n.max(3), 5.0, theta).unwrap();
                assert!(close(b / a, 2.0 * 2f64.sqrt(), 1e-12));
            }
        }
    }

    #[test]
    fn x_cat_error_increases_with_n() {
        for theta in [0.1, 1.0, 2.0, PI] {
            let mut prev = 0.0;
            for n in 2..=12 {
                let e = cat_error(&CatErrorParams::new(CatKind::X, n, 10.0, theta, 0.0)).unwrap();
                assert!(e > prev);
                prev = e;
            }
        }
    }

    #[test]
    fn single_atom() {
        let e = single_atom_error(10.0, PI, 0.0, SingleAtomInitial::Excited).unwrap();
        assert!(close(e, PI * PI / 1600.0, 1e-15));
        assert!(close(e, 0.006169, 1e-6));
        let r = single_atom_r_opt(PI / 2.0).unwrap();
        assert!(close(r, 0.5 * (PI / 2.0).ln(), 1e-15));
        assert!(close(r, 0.2258, 1e-4));
        for theta in [0.3, PI / 2.0, 2.5] {
            let r = single_atom_r_opt(theta).unwrap();
            let at = single_atom_error(6.0, theta, r, SingleAtomInitial::Excited).unwrap();
            assert!(close(at, single_atom_error_opt(6.0, theta).unwrap(), 1e-15));
            let g = single_atom_error(6.0, theta, r, SingleAtomInitial::Ground).unwrap();
            assert!(g < 1e-15);
        }
        assert!(single_atom_error_opt(3.0, PI).unwrap().abs() < 1e-15);
        assert!(single_atom_r_opt(PI).is_err());
        // growing squeezing drives the error at pi to zero
        let big = single_atom_error(10.0, PI - 1e-6, single_atom_r_opt(PI - 1e-6).unwrap(), SingleAtomInitial::Excited).unwrap();
        assert!(big < 1e-6);
    }

    #[test]
    fn haar_average_values() {
        let alpha = 60f64.sqrt();
        let e = avg_error(3, alpha, PI, 0.0).unwrap();
        assert!(close(e, (8.0 / 9.0) * (3.0 / 960.0) * (PI * PI + 4.0), 1e-15));
        assert!(close(e, 0.03853, 1e-5));
        assert_eq!(avg_error(3, alpha, 0.0, 0.4).unwrap(), 0.0);
        let opt = avg_error_opt(3, alpha, PI).unwrap();
        assert!(close(opt, (8.0 / 9.0) * (3.0 / 240.0) * PI, 1e-15));
        assert!(close(opt, 0.03491, 1e-5));
        assert!(close(avg_error_opt_bound(3, 60.0).unwrap(), opt, 1e-15));
        for theta in [0.1, 1.0, PI] {
            let r = avg_r_opt(theta).unwrap();
            let direct = avg_error(5, 3.0, theta, r).unwrap();
            assert!(close(direct, avg_error_opt(5, 3.0, theta).unwrap(), 1e-14));
            assert!(avg_error_opt(5, 3.0, theta).unwrap() <= avg_error_opt_bound(5, 9.0).unwrap() + 1e-15);
        }
        let r = avg_r_opt(PI).unwrap();
        assert!(close(r, 0.5 * (PI / 2.0).ln(), 1e-15));
        assert!(close(r.sinh().powi(2), 0.0519, 1e-4));
        assert!(avg_r_opt(1e-6).unwrap().abs() < 1e-10);
        assert_eq!(avg_r_opt_limit_at_zero(), 0.0);
        // ratio at 2N vs N approaches 2 as 2^{-N} fades
        let ratio = |n: usize| avg_error(2 * n, 1.0, 1.0, 0.0).unwrap() / avg_error(n, 1.0, 1.0, 0.0).unwrap();
        assert!((ratio(20) - 2.0).abs() < 1e-5);
        assert!((ratio(20) - 2.0).abs() < (ratio(2) - 2.0).abs());
        for n in 1..=12 {
            let scaled = avg_error(n, 2.0, 1.3, 0.1).unwrap() * (1.0 + 0.5f64.powi(n as i32));
            assert!(close(scaled, n as f64 * avg_error(1, 2.0, 1.3, 0.1).unwrap() * 1.5, 1e-14));
        }
    }

    #[test]
    fn cross_squeezing_worsens_average() {
        for n in 4..=12 {
            let wrong = avg_error(n, 5.0, PI, cat_r_opt(CatKind::X, n, PI).unwrap()).unwrap();
            let right = avg_error(n, 5.0, PI, avg_r_opt(PI).unwrap()).unwrap();
            assert!(wrong > right);
        }
    }

    #[test]
    fn degeneracies() {
        let k = |n, tj| kmax(&DegeneracySpec::new(n, tj).unwrap()).unwrap();
        assert_eq!(k(4, 4), 1);
        assert_eq!(k(4, 2), 3);
        assert_eq!(k(4, 0), 2);
        for n in 1..=MAX_EXACT_ATOMS {
            let total: u128 = DegeneracySpec::all(n)
                .unwrap()
                .iter()
                .map(|s| kmax(s).unwrap() * (s.twice_j as u128 + 1))
                .sum();
            assert_eq!(total, 1u128 << n);
        }
        assert!(DegeneracySpec::new(4, 1).is_err());
        assert!(DegeneracySpec::new(4, 6).is_err());
        assert!(DegeneracySpec::new(31, 1).is_err());
    }

    #[test]
    fn binomial_m_squared_sequence() {
        let seq: Vec<u128> = (3..=7).map(|n| m_squared_binomial_sum_x4(n).unwrap() / 4).collect();
        assert_eq!(seq, vec![3, 8, 20, 48, 112]);
        for n in 3..=12usize {
            assert_eq!(m_squared_binomial_sum_x4(n).unwrap(), 4 * (n as u128) << (n - 3));
        }
        assert!(close(haar_jz_mean_sq(3).unwrap(), 1.0 / 12.0, 1e-15));
        for n in 1..=20 {
            let d = 2f64.powi(n as i32);
            let from_sum = 2.0 / (d * (d + 1.0)) * m_squared_binomial_sum(n).unwrap();
            assert!(close(from_sum, haar_jz_mean_sq(n).unwrap(), 1e-15));
        }
    }

    #[test]
    fn jsq_sum() {
        assert_eq!(haar_jsq_mean(1).unwrap(), 0.75);
        assert_eq!(haar_jsq_mean(4).unwrap(), 3.0);
        for n in 1..=MAX_EXACT_ATOMS {
            assert!(close(jsq_multiplet_sum(n).unwrap(), 0.75 * n as f64, 1e-12 * n as f64));
        }
    }

    #[test]
    fn delta_optima_values() {
        let d = delta_opt(DeltaKind::TwoAtom, 2, PI, 20.0).unwrap();
        assert!(close(d, -PI / 79.0, 1e-15));
        let d2 = delta_opt(DeltaKind::TwoAtom, 2, PI / 2.0, 20.0).unwrap();
        assert!(close(d2, -(PI / 2.0 + 1.0) / 82.0, 1e-15));
        assert!(close(d2, -0.03136, 1e-5));
        let alpha = 20f64.sqrt();
        assert!(two_atom_error_rd(alpha, PI, 0.0, d).unwrap() < 0.173);
        assert!(delta_opt(DeltaKind::TwoAtom, 3, PI, 20.0).is_err());
        assert!(delta_opt(DeltaKind::ZCat, 2, PI, 20.0).is_err());
        let mut prev = f64::INFINITY;
        for nbar in [10.0, 100.0, 1e3, 1e4, 1e5] {
            let v = delta_opt(DeltaKind::ZCat, 5, 1.0, nbar).unwrap().abs();
            assert!(v < prev);
            prev = v;
        }
        assert!(prev < 1e-4);
    }

    #[test]
    fn eq35_reduces_to_two_atom_cat() {
        for theta in [0.3, 1.0, PI] {
            for r in [-0.2, 0.0, 0.4] {
                let eq35 = two_atom_error_rd(3.0, theta, r, 0.0).unwrap();
                let eq14 = (theta * theta * (-2.0 * r).exp() + 4.0 * (theta / 2.0).sin().powi(4) * (2.0 * r).exp()) / 36.0;
                assert_eq!(eq35, eq14);
            }
        }
    }

    #[test]
    fn golden_section() {
        let m = minimize_scalar(|x| (x - 1.0).powi(2), (0.0, 3.0), 1e-10).unwrap();
        assert!(close(m.argmin, 1.0, 1e-9));
        assert!(matches!(minimize_scalar(|x| x, (0.0, 1.0), 1e-8), Err(Error::BadBracket { .. })));
        assert!(matches!(minimize_scalar(|x| x * x, (1.0, 0.0), 1e-8), Err(Error::BadBracket { .. })));
        let x = minimize_scalar(
            |r| cat_error(&CatErrorParams::new(CatKind::X, 4, 10.0, PI, r)).unwrap(),
            (-2.0, 2.0),
            1e-10,
        )
        .unwrap();
        assert!(close(x.argmin, cat_r_opt(CatKind::X, 4, PI).unwrap(), 1e-6));
        let alpha = 20f64.sqrt();
        let d = minimize_scalar(|d| two_atom_error_rd(alpha, PI, 0.0, d).unwrap(), (-0.3, 0.3), 1e-10).unwrap();
        assert!(close(d.argmin, delta_opt(DeltaKind::TwoAtom, 2, PI, 20.0).unwrap(), 1e-5));
    }

    #[test]
    fn optimizers_agree_on_random_tuples() {
        let mut rng = crate::rng::state_rng(2024, 0);
        for _ in 0..20 {
            let kind = if rng.random::<bool>() { CatKind::X } else { CatKind::Z };
            let n = rng.random_range(2..=8usize);
            let theta = rng.random_range(0.1..=PI);
            let alpha = rng.random_range(3.0..20.0);
            let f = |r: f64| cat_error(&CatErrorParams::new(kind, n, alpha, theta, r)).unwrap();
            let m = minimize_scalar(f, (-4.0, 4.0), 1e-10).unwrap();
            assert!(close(m.argmin, cat_r_opt(kind, n, theta).unwrap(), 1e-5));
            let m = minimize_scalar(|r| avg_error(n, alpha, theta, r).unwrap(), (-4.0, 4.0), 1e-10).unwrap();
            assert!(close(m.argmin, avg_r_opt(theta).unwrap(), 1e-5));

            let nbar = rng.random_range(50.0..400.0);
            let a = f64::sqrt(nbar);
            let m = minimize_scalar(|d| two_atom_error_rd(a, theta, 0.0, d).unwrap(), (-0.3, 0.3), 1e-10).unwrap();
            assert!(close(m.argmin, delta_opt(DeltaKind::TwoAtom, 2, theta, nbar).unwrap(), 1e-5));
            let nz = n.max(3);
            let nbar = rng.random_range(100.0..400.0) * nz as f64;
            let a = f64::sqrt(nbar);
            let m = minimize_scalar(
                |d| cat_error(&CatErrorParams::new(CatKind::Z, nz, a, theta, 0.0).with_delta(d)).unwrap(),
                (-0.3, 0.3),
                1e-10,
            )
            .unwrap();
            assert!(close(m.argmin, delta_opt(DeltaKind::ZCat, nz, theta, nbar).unwrap(), 1e-5));
        }
    }
}
