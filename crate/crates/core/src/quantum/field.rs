//! Single-mode driving field in a truncated Fock basis.
//!
//! Squeezed coherent states are built as `D(alpha) S(r) |0>` with
//! `S(r) = exp[(r/2)(a^2 - a^dag^2)]`, so `r > 0` squeezes the amplitude
//! quadrature `a' + a'^dag` (variance `e^{-2r}`). Both factors are applied by
//! Krylov exponentiation of their (anti-Hermitian) generators in a padded
//! working space, then cut back to `n_max`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{check_finite, Error, Result};
use crate::krylov::{expm_hermitian, HermitianOperator, KrylovOptions};

/// Tail levels checked by the truncation invariant.
pub const TAIL_LEVELS: usize = 10;
/// Maximum allowed probability in the top [`TAIL_LEVELS`] levels plus any
/// probability lost above `n_max`.
pub const TAIL_TOLERANCE: f64 = 1e-10;
/// Guard on the squeezing parameter.
pub const MAX_SQUEEZING: f64 = 3.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldState {
    amplitudes: Vec<C64>,
    alpha: f64,
    r: f64,
}

/// Default truncation `ceil(alpha^2 + 12 alpha e^{|r|} + 30)`.
pub fn default_n_max(alpha: f64, r: f64) -> usize {
    (alpha * alpha + 12.0 * alpha * r.abs().exp() + 30.0).ceil() as usize
}

impl FieldState {
    /// Wraps externally supplied amplitudes. `alpha` and `r` are recorded as
    /// metadata; `alpha` is the displacement used for `a' = a - alpha`.
    pub fn from_amplitudes(amplitudes: Vec<C64>, alpha: f64, r: f64) -> Result<Self> {
        check_finite("alpha", alpha)?;
        check_finite("r", r)?;
        if amplitudes.len() <= TAIL_LEVELS {
            return Err(Error::InvalidParameter {
                name: "n_max",
                value: amplitudes.len() as f64 - 1.0,
                reason: "truncation must exceed the tail window",
            });
        }
        let state = Self {
            amplitudes,
            alpha,
            r,
        };
        let n = state.norm();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter {
                name: "norm",
                value: n,
                reason: "field amplitudes must be normalized",
            });
        }
        state.check_tail(0.0)?;
        Ok(state)
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn n_max(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        crate::krylov::norm(&self.amplitudes)
    }

    /// Probability in the levels `n > n_max - 10`.
    pub fn tail_mass(&self) -> f64 {
        tail_mass(&self.amplitudes)
    }

    /// Nominal mean photon number `alpha^2 + sinh^2 r`.
    pub fn nbar(&self) -> f64 {
        self.alpha * self.alpha + self.r.sinh().powi(2)
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(n, c)| n as f64 * c.norm_sqr())
            .sum()
    }

    pub fn photon_number_variance(&self) -> f64 {
        let mean = self.mean_photon_number();
        let second: f64 = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(n, c)| (n * n) as f64 * c.norm_sqr())
            .sum();
        second - mean * mean
    }

    /// `<a>`.
    pub fn mean_amplitude(&self) -> C64 {
        let lowered = annihilate(&self.amplitudes);
        crate::krylov::dot(&self.amplitudes, &lowered[..self.dim()])
    }

    fn check_tail(&self, lost: f64) -> Result<()> {
        let tail = (self.tail_mass() + lost).min(1.0);
        if tail < TAIL_TOLERANCE {
            Ok(())
        } else {
            Err(Error::Truncation {
                n_max: self.n_max(),
                tail_mass: tail,
                required: required_n_max(&self.amplitudes).unwrap_or(2 * self.dim()),
            })
        }
    }
}

pub(crate) fn tail_mass(amps: &[C64]) -> f64 {
    let start = amps.len().saturating_sub(TAIL_LEVELS);
    amps[start..].iter().map(|c| c.norm_sqr()).sum()
}

/// Smallest `n_max` whose tail window holds less than [`TAIL_TOLERANCE`],
/// judged from amplitudes known up to `amps.len() - 1`.
fn required_n_max(amps: &[C64]) -> Option<usize> {
    let mut beyond = 0.0;
    // beyond = mass strictly above candidate n_max
    for n_max in (TAIL_LEVELS..amps.len()).rev() {
        let window: f64 = amps[n_max + 1 - TAIL_LEVELS..=n_max]
            .iter()
            .map(|c| c.norm_sqr())
            .sum();
        if window + beyond >= TAIL_TOLERANCE {
            return if n_max + 1 < amps.len() {
                Some(n_max + 1)
            } else {
                None
            };
        }
        beyond += amps[n_max].norm_sqr();
    }
    Some(TAIL_LEVELS)
}

/// `a |psi>` on a vector of length `d`, returned with length `d + 1` so that
/// it can be combined with [`create`] without truncation loss.
pub(crate) fn annihilate(amps: &[C64]) -> Vec<C64> {
    let d = amps.len();
    let mut out = vec![C64::new(0.0, 0.0); d + 1];
    for n in 0..d.saturating_sub(1) {
        out[n] = amps[n + 1] * ((n + 1) as f64).sqrt();
    }
    out
}

/// `a^dag |psi>`, length `d + 1`.
pub(crate) fn create(amps: &[C64]) -> Vec<C64> {
    let d = amps.len();
    let mut out = vec![C64::new(0.0, 0.0); d + 1];
    for n in 0..d {
        out[n + 1] = amps[n] * ((n + 1) as f64).sqrt();
    }
    out
}

/// Coherent state with real amplitude `alpha >= 0`, amplitudes
/// `e^{-alpha^2/2} alpha^n / sqrt(n!)`.
pub fn coherent_state(alpha: f64, n_max: usize) -> Result<FieldState> {
    check_finite("alpha", alpha)?;
    if alpha < 0.0 {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "coherent amplitude must be non-negative",
        });
    }
    if n_max < TAIL_LEVELS {
        return Err(Error::InvalidParameter {
            name: "n_max",
            value: n_max as f64,
            reason: "truncation must exceed the tail window",
        });
    }
    let mut amps = vec![C64::new(0.0, 0.0); n_max + 1];
    if alpha == 0.0 {
        amps[0] = C64::new(1.0, 0.0);
    } else {
        let ln_alpha = alpha.ln();
        let mut ln_sqrt_fact = 0.0;
        for (n, a) in amps.iter_mut().enumerate() {
            if n > 0 {
                ln_sqrt_fact += 0.5 * (n as f64).ln();
            }
            *a = C64::new((-0.5 * alpha * alpha + n as f64 * ln_alpha - ln_sqrt_fact).exp(), 0.0);
        }
    }
    let kept: f64 = amps.iter().map(|c| c.norm_sqr()).sum();
    let lost = (1.0 - kept).max(0.0);
    let scale = kept.sqrt();
    amps.iter_mut().for_each(|a| *a /= scale);
    let state = FieldState {
        amplitudes: amps,
        alpha,
        r: 0.0,
    };
    match state.check_tail(lost) {
        Ok(()) => Ok(state),
        Err(Error::Truncation { tail_mass, .. }) => Err(Error::Truncation {
            n_max,
            tail_mass,
            required: coherent_required_n_max(alpha),
        }),
        Err(e) => Err(e),
    }
}

fn coherent_required_n_max(alpha: f64) -> usize {
    let mut n_max = default_n_max(alpha, 0.0);
    while coherent_state(alpha, n_max).is_err() {
        n_max = n_max * 3 / 2 + 1;
    }
    n_max
}

/// Generator `i * coeff * (L - L^dag)` for a lowering-type ladder `L` that
/// lowers by `step` photons with matrix elements `ladder(n)` from `n + step`
/// to `n`. The operator is Hermitian, so `exp(-i H)` = `exp(coeff (L - L^dag))`.
struct LadderGenerator {
    dim: usize,
    step: usize,
    coeff: f64,
    ladder: fn(usize) -> f64,
}

impl HermitianOperator for LadderGenerator {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, input: &[C64], out: &mut [C64]) {
        let i = C64::new(0.0, self.coeff);
        for (n, o) in out.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            if n + self.step < self.dim {
                acc += input[n + self.step] * (self.ladder)(n);
            }
            if n >= self.step {
                acc -= input[n - self.step] * (self.ladder)(n - self.step);
            }
            *o = i * acc;
        }
    }
}

fn sqrt_a(n: usize) -> f64 {
    ((n + 1) as f64).sqrt()
}

fn sqrt_a2(n: usize) -> f64 {
    (((n + 1) * (n + 2)) as f64).sqrt()
}

/// Applies `exp(alpha (a^dag - a))` numerically.
pub(crate) fn displace(amps: &[C64], alpha: f64, tol: f64) -> Result<Vec<C64>> {
    // exp(alpha(a^dag - a)) = exp(-i H) with H = i (-alpha)(a - a^dag)
    let generator = LadderGenerator {
        dim: amps.len(),
        step: 1,
        coeff: -alpha,
        ladder: sqrt_a,
    };
    Ok(expm_hermitian(&generator, amps, 1.0, &krylov_opts(tol))?.0)
}

/// Applies `S(r) = exp[(r/2)(a^2 - a^dag^2)]` numerically.
pub(crate) fn squeeze(amps: &[C64], r: f64, tol: f64) -> Result<Vec<C64>> {
    let generator = LadderGenerator {
        dim: amps.len(),
        step: 2,
        coeff: 0.5 * r,
        ladder: sqrt_a2,
    };
    Ok(expm_hermitian(&generator, amps, 1.0, &krylov_opts(tol))?.0)
}

fn krylov_opts(tol: f64) -> KrylovOptions {
    KrylovOptions {
        max_dim: 40,
        tol,
        max_steps: 1_000_000,
    }
}

/// Displaced squeezed vacuum `D(alpha) S(r) |0>` truncated at `n_max`.
/// `r = 0` returns the analytic [`coherent_state`].
pub fn squeezed_coherent_state(alpha: f64, r: f64, n_max: usize) -> Result<FieldState> {
    check_finite("alpha", alpha)?;
    check_finite("r", r)?;
    if r.abs() > MAX_SQUEEZING {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r,
            reason: "|r| must not exceed 3",
        });
    }
    if r == 0.0 {
        return coherent_state(alpha, n_max);
    }
    if alpha < 0.0 {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "coherent amplitude must be non-negative",
        });
    }
    if n_max < TAIL_LEVELS {
        return Err(Error::InvalidParameter {
            name: "n_max",
            value: n_max as f64,
            reason: "truncation must exceed the tail window",
        });
    }
    let work = 2 * n_max + 60;
    let mut amps = vec![C64::new(0.0, 0.0); work + 1];
    amps[0] = C64::new(1.0, 0.0);
    amps = squeeze(&amps, r, 1e-13)?;
    if alpha > 0.0 {
        amps = displace(&amps, alpha, 1e-13)?;
    }
    if tail_mass(&amps) > 1e-14 {
        return Err(Error::Truncation {
            n_max,
            tail_mass: tail_mass(&amps),
            required: 2 * work,
        });
    }
    let lost: f64 = amps[n_max + 1..].iter().map(|c| c.norm_sqr()).sum();
    let required = required_n_max(&amps).unwrap_or(2 * work);
    let mut kept = amps[..=n_max].to_vec();
    let scale = crate::krylov::norm(&kept);
    kept.iter_mut().for_each(|a| *a /= scale);
    let state = FieldState {
        amplitudes: kept,
        alpha,
        r,
    };
    match state.check_tail(lost) {
        Ok(()) => Ok(state),
        Err(Error::Truncation { tail_mass, .. }) => Err(Error::Truncation {
            n_max,
            tail_mass,
            required,
        }),
        Err(e) => Err(e),
    }
}

/// Squeezed coherent state at the default truncation.
pub fn field_with_default_truncation(alpha: f64, r: f64) -> Result<FieldState> {
    squeezed_coherent_state(alpha, r, default_n_max(alpha, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `<psi| X |psi>` with X built from annihilate/create on the
    /// fluctuation operator a' = a - alpha, computed independently of the
    /// perturbation module.
    fn quadrature_variance(f: &FieldState, sign: f64) -> f64 {
        let amps = f.amplitudes();
        let a = annihilate(amps);
        let ad = create(amps);
        // v = (a' + sign a'^dag) psi
        let v: Vec<C64> = (0..=amps.len())
            .map(|n| {
                let base = if n < amps.len() { amps[n] } else { C64::default() };
                a[n] + ad[n] * sign - base * f.alpha() * (1.0 + sign)
            })
            .collect();
        let nsq: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        nsq
    }

    #[test]
    fn vacuum() {
        let f = coherent_state(0.0, 20).unwrap();
        assert_eq!(f.amplitudes()[0], C64::new(1.0, 0.0));
        assert!(f.amplitudes()[1..].iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn coherent_moments() {
        let f = coherent_state(10.0, 300).unwrap();
        assert!((f.mean_photon_number() - 100.0).abs() < 1e-6);
        assert!((f.mean_amplitude() - C64::new(10.0, 0.0)).norm() < 1e-8);
        let g = coherent_state(20f64.sqrt(), 120).unwrap();
        assert!((g.photon_number_variance() - 20.0).abs() < 1e-6);
        assert!((g.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coherent_truncation_error_names_required_cutoff() {
        match coherent_state(10.0, 100) {
            Err(Error::Truncation { n_max, required, .. }) => {
                assert_eq!(n_max, 100);
                assert!(required > 100);
                assert!(coherent_state(10.0, required).is_ok());
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn squeezed_vacuum_mean() {
        let f = squeezed_coherent_state(0.0, 0.5, 80).unwrap();
        assert!((f.mean_photon_number() - 0.5f64.sinh().powi(2)).abs() < 1e-6);
        assert!((f.mean_photon_number() - 0.271540).abs() < 1e-6);
    }

    #[test]
    fn squeezed_quadratures() {
        let r = 0.5724;
        let f = squeezed_coherent_state(10.0, r, default_n_max(10.0, r)).unwrap();
        let amp = quadrature_variance(&f, 1.0);
        let phase = quadrature_variance(&f, -1.0);
        assert!((amp - (-2.0 * r).exp()).abs() < 1e-6, "amp {amp}");
        assert!((amp - 0.3183).abs() < 1e-4);
        assert!((phase - (2.0 * r).exp()).abs() < 1e-6, "phase {phase}");
        assert!((amp * phase - 1.0).abs() < 1e-6);
        assert!((f.mean_amplitude() - C64::new(10.0, 0.0)).norm() < 1e-8);
        assert!((f.mean_photon_number() - f.nbar()).abs() < 1e-6);
    }

    #[test]
    fn negative_squeezing_is_phase_squeezing() {
        let f = squeezed_coherent_state(3.0, -0.4, 150).unwrap();
        assert!((quadrature_variance(&f, 1.0) - 0.8f64.exp()).abs() < 1e-6);
        assert!((quadrature_variance(&f, -1.0) - (-0.8f64).exp()).abs() < 1e-6);
    }

    #[test]
    fn numeric_displacement_matches_analytic_coherent_state() {
        let alpha = 4.0;
        let work = 200;
        let mut vac = vec![C64::new(0.0, 0.0); work + 1];
        vac[0] = C64::new(1.0, 0.0);
        let displaced = displace(&vac, alpha, 1e-13).unwrap();
        let analytic = coherent_state(alpha, work).unwrap();
        let diff: f64 = displaced
            .iter()
            .zip(analytic.amplitudes())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(diff < 1e-10, "diff {diff}");
    }

    #[test]
    fn squeezing_guards() {
        assert!(squeezed_coherent_state(1.0, 3.5, 100).is_err());
        assert!(squeezed_coherent_state(f64::NAN, 0.1, 100).is_err());
        assert!(matches!(
            squeezed_coherent_state(0.0, 2.0, 30),
            Err(Error::Truncation { .. })
        ));
    }

    #[test]
    fn r_zero_delegates_to_coherent() {
        let a = squeezed_coherent_state(3.0, 0.0, 60).unwrap();
        let b = coherent_state(3.0, 60).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn default_truncation_formula() {
        assert_eq!(default_n_max(20.0, 0.0), 670);
        assert_eq!(default_n_max(0.0, 0.0), 30);
    }
}
