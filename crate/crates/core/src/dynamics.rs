//! Exact joint atom-field evolution under `H = J+ a + J- a^dag` (g = hbar = 1)
//! and the gate-error functional it defines.
//!
//! Two independent propagators are provided: an adaptive Lanczos propagator
//! (the default, accuracy set by `tol`) and an exact block diagonalization
//! over the sectors of constant excitation number (excited atoms plus
//! photons), which `H` conserves.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_finite, Error, Result};
use crate::krylov::{expm_hermitian, HermitianOperator, KrylovOptions};
use crate::quantum::{check_atom_count, tensor, AtomState, FieldState, JointState};

/// Norm may not drift by more than this over one evolution.
pub const NORM_DRIFT_LIMIT: f64 = 1e-9;
/// Probability allowed in the top Fock levels after evolution.
pub const EVOLVED_TAIL_LIMIT: f64 = 1e-8;

/// Target rotation and pulse parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationSpec {
    /// Target rotation angle about x.
    pub theta: f64,
    /// Angle offset `2 g alpha dt` from stretching the interaction time.
    pub delta: f64,
    pub alpha: f64,
    pub r: f64,
    pub n_atoms: usize,
}

impl RotationSpec {
    pub fn new(n_atoms: usize, alpha: f64, r: f64, theta: f64) -> Self {
        Self {
            theta,
            delta: 0.0,
            alpha,
            r,
            n_atoms,
        }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    /// Interaction time `(theta + delta) / (2 alpha)` in units of 1/g.
    pub fn duration(&self) -> f64 {
        (self.theta + self.delta) / (2.0 * self.alpha)
    }

    pub fn validate(&self) -> Result<()> {
        check_atom_count(self.n_atoms)?;
        check_finite("theta", self.theta)?;
        check_finite("delta", self.delta)?;
        check_finite("r", self.r)?;
        check_finite("alpha", self.alpha)?;
        if !(0.0..=std::f64::consts::TAU).contains(&self.theta) {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: self.theta,
                reason: "must lie in [0, 2 pi]",
            });
        }
        if self.alpha <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: self.alpha,
                reason: "must be positive",
            });
        }
        if self.theta + self.delta < 0.0 {
            return Err(Error::InvalidParameter {
                name: "delta",
                value: self.delta,
                reason: "theta + delta must be non-negative",
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Perturbative,
}

/// Split of the second-moment contributions by field quadrature.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSplit {
    /// Terms weighted by `<(a' + a'^dag)^2>`.
    pub amplitude: f64,
    /// Terms weighted by `<(a' - a'^dag)^2>`.
    pub phase: f64,
    /// Terms weighted by the mixed moments.
    pub cross: f64,
}

/// Conservation diagnostics recorded by an exact evolution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvolutionDiagnostics {
    pub norm_drift: f64,
    pub excitation_drift: f64,
    pub tail_mass: f64,
    pub matvecs: usize,
}

/// Gate error and, for the perturbative method, its term breakdown. Terms
/// that do not apply are `None` (serialized as `null`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub total: f64,
    /// `-2 Re<Psi0|Psi1> - ||<psi0|Psi1>||^2`.
    pub first_order_term: Option<f64>,
    /// `-2 Re<Psi0|Psi2>`.
    pub second_order_term: Option<f64>,
    /// `delta^2 Var(Jx)`.
    pub time_offset_term: Option<f64>,
    /// The `-2 Re<Psi0|Psi1>` part alone; vanishes for centered fields.
    pub linear_term: Option<f64>,
    pub quadratures: Option<QuadratureSplit>,
    pub diagnostics: Option<EvolutionDiagnostics>,
    pub method: Method,
    /// Set when a perturbative total leaves the range where second order
    /// is trustworthy (above 0.2, or negative).
    pub out_of_validity: bool,
}

/// `H = J+ a + J- a^dag` on the joint space, applied matrix-free.
pub struct TavisCummings {
    n_atoms: usize,
    field_dim: usize,
    /// For each atomic state, the states reached by lowering one excited atom.
    lowered: Vec<Vec<usize>>,
    /// For each atomic state, the states reached by raising one ground atom.
    raised: Vec<Vec<usize>>,
    sqrt_n: Vec<f64>,
}

impl TavisCummings {
    pub fn new(n_atoms: usize, n_max: usize) -> Result<Self> {
        check_atom_count(n_atoms)?;
        let dim = 1usize << n_atoms;
        let flips = |s: usize, set: bool| -> Vec<usize> {
            (0..n_atoms)
                .filter(|&b| (s >> b) & 1 == usize::from(set))
                .map(|b| s ^ (1 << b))
                .collect()
        };
        Ok(Self {
            n_atoms,
            field_dim: n_max + 1,
            lowered: (0..dim).map(|s| flips(s, true)).collect(),
            raised: (0..dim).map(|s| flips(s, false)).collect(),
            sqrt_n: (0..=n_max + 1).map(|n| (n as f64).sqrt()).collect(),
        })
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }
}

impl HermitianOperator for TavisCummings {
    fn dim(&self) -> usize {
        (1 << self.n_atoms) * self.field_dim
    }

    fn apply(&self, input: &[C64], out: &mut [C64]) {
        let d = self.field_dim;
        let kernel = |(s, block): (usize, &mut [C64])| {
            block.iter_mut().for_each(|c| *c = C64::new(0.0, 0.0));
            // (J+ a): |s'> gets from |s> = s' with one excited atom lowered, photon n+1
            for &src in &self.lowered[s] {
                let from = &input[src * d..(src + 1) * d];
                for n in 0..d - 1 {
                    block[n] += from[n + 1] * self.sqrt_n[n + 1];
                }
            }
            // (J- a^dag): from s' with one ground atom raised, photon n-1
            for &src in &self.raised[s] {
                let from = &input[src * d..(src + 1) * d];
                for n in 1..d {
                    block[n] += from[n - 1] * self.sqrt_n[n];
                }
            }
        };
        if out.len() >= 1 << 14 {
            out.par_chunks_mut(d).enumerate().for_each(kernel);
        } else {
            out.chunks_mut(d).enumerate().for_each(kernel);
        }
    }
}

/// `exp(-i H t)` restricted to each excitation sector, precomputed for a
/// fixed duration and reusable across initial states.
pub struct SectorPropagator {
    n_atoms: usize,
    n_max: usize,
    duration: f64,
    sectors: Vec<(Vec<usize>, DMatrix<C64>)>,
}

impl SectorPropagator {
    pub fn new(n_atoms: usize, n_max: usize, duration: f64) -> Result<Self> {
        check_atom_count(n_atoms)?;
        check_finite("duration", duration)?;
        let d = n_max + 1;
        let dim_atoms = 1usize << n_atoms;
        let sectors = (0..=n_atoms + n_max)
            .into_par_iter()
            .map(|e| {
                let members: Vec<(usize, usize)> = (0..dim_atoms)
                    .filter_map(|s| {
                        let k = s.count_ones() as usize;
                        (k <= e && e - k <= n_max).then(|| (s, e - k))
                    })
                    .collect();
                let m = members.len();
                let pos = |s: usize| members.iter().position(|&(t, _)| t == s);
                let mut h = DMatrix::<f64>::zeros(m, m);
                for (i, &(s, n)) in members.iter().enumerate() {
                    // J+ a: raise a ground atom, remove a photon
                    if n == 0 {
                        continue;
                    }
                    for b in 0..n_atoms {
                        if (s >> b) & 1 == 0 {
                            if let Some(j) = pos(s | (1 << b)) {
                                let v = (n as f64).sqrt();
                                h[(j, i)] += v;
                                h[(i, j)] += v;
                            }
                        }
                    }
                }
                let eig = SymmetricEigen::new(h);
                let q = eig.eigenvectors.map(|x| C64::new(x, 0.0));
                let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| C64::from_polar(1.0, -l * duration)));
                let u = &q * phases * q.transpose();
                let flat = members.iter().map(|&(s, n)| s * d + n).collect();
                (flat, u)
            })
            .collect();
        Ok(Self {
            n_atoms,
            n_max,
            duration,
            sectors,
        })
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn apply(&self, state: &JointState) -> Result<JointState> {
        if state.n_atoms() != self.n_atoms || state.n_max() != self.n_max {
            return Err(Error::DimensionMismatch {
                expected: (1 << self.n_atoms) * (self.n_max + 1),
                got: state.dim(),
            });
        }
        let input = state.amplitudes();
        let mut out = vec![C64::new(0.0, 0.0); input.len()];
        for (idx, u) in &self.sectors {
            let v: Vec<C64> = idx.iter().map(|&i| input[i]).collect();
            for (row, &i) in idx.iter().enumerate() {
                out[i] = (0..v.len()).map(|c| u[(row, c)] * v[c]).sum();
            }
        }
        JointState::from_amplitudes(out, self.n_atoms, self.n_max)
    }
}

/// Choice of exact propagator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Propagator {
    Krylov(KrylovOptions),
    Sectors,
}

impl Propagator {
    pub fn krylov(tol: f64) -> Self {
        Propagator::Krylov(KrylovOptions::with_tol(tol))
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if (1e-12..=1e-6).contains(&tol) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "must lie in [1e-12, 1e-6]",
        })
    }
}

/// `exp(-i H duration) |state>` with the Lanczos propagator.
pub fn evolve(state: &JointState, duration: f64, tol: f64) -> Result<JointState> {
    check_tol(tol)?;
    Ok(evolve_with(state, duration, &Propagator::krylov(tol))?.0)
}

/// Evolves with the chosen propagator and returns conservation diagnostics.
pub fn evolve_with(
    state: &JointState,
    duration: f64,
    propagator: &Propagator,
) -> Result<(JointState, EvolutionDiagnostics)> {
    check_finite("duration", duration)?;
    if duration < 0.0 {
        return Err(Error::InvalidParameter {
            name: "duration",
            value: duration,
            reason: "must be non-negative",
        });
    }
    let mut matvecs = 0;
    let evolved = match propagator {
        Propagator::Krylov(opts) => {
            let h = TavisCummings::new(state.n_atoms(), state.n_max())?;
            let (amps, stats) = expm_hermitian(&h, state.amplitudes(), duration, opts)?;
            matvecs = stats.matvecs;
            JointState::from_amplitudes(amps, state.n_atoms(), state.n_max())?
        }
        Propagator::Sectors => {
            SectorPropagator::new(state.n_atoms(), state.n_max(), duration)?.apply(state)?
        }
    };
    finish(state, evolved, matvecs)
}

fn finish(
    before: &JointState,
    after: JointState,
    matvecs: usize,
) -> Result<(JointState, EvolutionDiagnostics)> {
    let diag = EvolutionDiagnostics {
        norm_drift: (after.norm() - before.norm()).abs(),
        excitation_drift: (after.mean_excitation() - before.mean_excitation()).abs(),
        tail_mass: after.tail_mass(),
        matvecs,
    };
    if diag.norm_drift > NORM_DRIFT_LIMIT {
        return Err(Error::NonConvergence(format!(
            "norm drifted by {:.3e}",
            diag.norm_drift
        )));
    }
    if diag.tail_mass > EVOLVED_TAIL_LIMIT {
        let n_max = after.n_max();
        return Err(Error::Truncation {
            n_max,
            tail_mass: diag.tail_mass,
            required: n_max + n_max / 2 + 20,
        });
    }
    Ok((after, diag))
}

/// Applies a precomputed sector propagator with the same diagnostics as
/// [`evolve_with`].
pub fn evolve_sectors(
    state: &JointState,
    propagator: &SectorPropagator,
) -> Result<(JointState, EvolutionDiagnostics)> {
    let after = propagator.apply(state)?;
    finish(state, after, 0)
}

/// `exp(-i Jx theta) |psi0>`, applied as the product of single-atom
/// rotations `cos(theta/2) - i sin(theta/2) sigma_x`.
pub fn classical_rotation(psi0: &AtomState, theta: f64) -> AtomState {
    let (s, c) = (0.5 * theta).sin_cos();
    let mis = C64::new(0.0, -s);
    let mut amps = psi0.amplitudes().to_vec();
    for b in 0..psi0.n_atoms() {
        let mask = 1usize << b;
        for i in 0..amps.len() {
            if i & mask == 0 {
                let (x0, x1) = (amps[i], amps[i | mask]);
                amps[i] = x0 * c + x1 * mis;
                amps[i | mask] = x0 * mis + x1 * c;
            }
        }
    }
    AtomState::from_raw(amps, psi0.n_atoms())
}

fn check_consistency(psi0: &AtomState, field: &FieldState, spec: &RotationSpec) -> Result<()> {
    spec.validate()?;
    if psi0.n_atoms() != spec.n_atoms {
        return Err(Error::DimensionMismatch {
            expected: spec.n_atoms,
            got: psi0.n_atoms(),
        });
    }
    if (spec.alpha - field.alpha()).abs() > 1e-12 * spec.alpha.max(1.0) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: spec.alpha,
            reason: "rotation alpha differs from the field's coherent amplitude",
        });
    }
    Ok(())
}

/// Exact gate error with the Lanczos propagator at accuracy `tol`.
pub fn gate_error_exact(
    psi0: &AtomState,
    field: &FieldState,
    spec: &RotationSpec,
    tol: f64,
) -> Result<ErrorReport> {
    check_tol(tol)?;
    gate_error_exact_with(psi0, field, spec, &Propagator::krylov(tol))
}

/// `1 - ||(<psi_T| x 1) exp(-iHt)|psi0>|Phi0>||^2` with `psi_T` the
/// classically rotated state.
pub fn gate_error_exact_with(
    psi0: &AtomState,
    field: &FieldState,
    spec: &RotationSpec,
    propagator: &Propagator,
) -> Result<ErrorReport> {
    check_consistency(psi0, field, spec)?;
    let initial = tensor(psi0, field);
    let (evolved, diag) = evolve_with(&initial, spec.duration(), propagator)?;
    Ok(exact_report(psi0, &evolved, spec.theta, diag))
}

/// Same as [`gate_error_exact_with`] but with a prebuilt sector propagator,
/// which must have been built for `spec.duration()`.
pub fn gate_error_exact_sectors(
    psi0: &AtomState,
    field: &FieldState,
    spec: &RotationSpec,
    propagator: &SectorPropagator,
) -> Result<ErrorReport> {
    check_consistency(psi0, field, spec)?;
    if (propagator.duration() - spec.duration()).abs() > 1e-15 * spec.duration().max(1.0) {
        return Err(Error::InvalidParameter {
            name: "duration",
            value: propagator.duration(),
            reason: "sector propagator built for a different duration",
        });
    }
    let (evolved, diag) = evolve_sectors(&tensor(psi0, field), propagator)?;
    Ok(exact_report(psi0, &evolved, spec.theta, diag))
}

fn exact_report(
    psi0: &AtomState,
    evolved: &JointState,
    theta: f64,
    diag: EvolutionDiagnostics,
) -> ErrorReport {
    let target = classical_rotation(psi0, theta);
    let projected = evolved
        .project_atoms(&target)
        .expect("target built from psi0 has matching dimension");
    let p: f64 = projected.iter().map(|c| c.norm_sqr()).sum();
    ErrorReport {
        total: 1.0 - p,
        first_order_term: None,
        second_order_term: None,
        time_offset_term: None,
        linear_term: None,
        quadratures: None,
        diagnostics: Some(diag),
        method: Method::Exact,
        out_of_validity: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{
        build_collective_ops, cat_state, coherent_state, haar_random_state, squeezed_coherent_state,
        CatKind,
    };
    use std::f64::consts::PI;

    #[test]
    fn zero_duration_is_identity() {
        let j = tensor(&haar_random_state(2, 3).unwrap(), &coherent_state(2.0, 40).unwrap());
        let out = evolve(&j, 0.0, 1e-10).unwrap();
        assert_eq!(out, j);
    }

    #[test]
    fn single_excitation_rabi_cycle() {
        // |e,0> <-> |g,1> with coupling 1: full transfer at t = pi/2
        let j = tensor(&AtomState::excited(1).unwrap(), &coherent_state(0.0, 15).unwrap());
        let out = evolve(&j, PI / 2.0, 1e-12).unwrap();
        let g1 = out.amplitudes()[out.index(0, 1)];
        assert!((g1.norm() - 1.0).abs() < 1e-10);
        assert!((out.mean_photon_number() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn near_classical_rabi_inversion() {
        let alpha = 10.0;
        let field = coherent_state(alpha, default_n()).unwrap();
        for theta in [PI / 3.0, PI / 2.0, PI] {
            let j = tensor(&AtomState::ground(1).unwrap(), &field);
            let out = evolve(&j, theta / (2.0 * alpha), 1e-11).unwrap();
            let pe: f64 = out.block(1).iter().map(|c| c.norm_sqr()).sum();
            let inversion = pe - (1.0 - pe);
            // classical: <sigma_z> = -cos(theta); deviations are O(1/alpha^2)
            assert!((inversion + theta.cos()).abs() < 2.0 / (alpha * alpha), "theta {theta}");
        }
    }

    fn default_n() -> usize {
        crate::quantum::default_n_max(10.0, 0.0)
    }

    #[test]
    fn propagators_agree_and_conserve() {
        let field = squeezed_coherent_state(3.0, 0.3, 80).unwrap();
        let psi = haar_random_state(3, 99).unwrap();
        let j = tensor(&psi, &field);
        let t = 0.37;
        let (a, da) = evolve_with(&j, t, &Propagator::krylov(1e-12)).unwrap();
        let (b, db) = evolve_with(&j, t, &Propagator::Sectors).unwrap();
        let diff: f64 = a
            .amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(diff < 1e-10, "diff {diff}");
        for d in [da, db] {
            assert!(d.norm_drift < 1e-9);
            assert!(d.excitation_drift < 1e-8);
        }
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        let h = TavisCummings::new(2, 6).unwrap();
        let dim = h.dim();
        let mut dense = DMatrix::<C64>::zeros(dim, dim);
        let mut e = vec![C64::new(0.0, 0.0); dim];
        let mut col = vec![C64::new(0.0, 0.0); dim];
        for c in 0..dim {
            e.iter_mut().for_each(|x| *x = C64::new(0.0, 0.0));
            e[c] = C64::new(1.0, 0.0);
            h.apply(&e, &mut col);
            for r in 0..dim {
                dense[(r, c)] = col[r];
            }
        }
        assert!((&dense - dense.adjoint()).norm() < 1e-14);
        assert!(dense.norm() > 0.0);
    }

    #[test]
    fn rotation_identities() {
        let psi = haar_random_state(1, 4).unwrap();
        assert_eq!(classical_rotation(&psi, 0.0), psi);
        let full = classical_rotation(&psi, 2.0 * PI);
        for (a, b) in full.amplitudes().iter().zip(psi.amplitudes()) {
            assert!((a + b).norm() < 1e-12);
        }
        for n in 2..=5 {
            let x = cat_state(CatKind::X, n).unwrap();
            for theta in [0.3, 1.2, PI] {
                // the two branches are Jx eigenstates with eigenvalues +-N/2
                let want = (n as f64 * theta / 2.0).cos().powi(2);
                assert!((classical_rotation(&x, theta).fidelity(&x) - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rotation_matches_dense_exponential() {
        for n in 1..=5 {
            let ops = build_collective_ops(n).unwrap();
            let jx = ops.jx.to_dense().map(|c| c.re);
            let eig = SymmetricEigen::new(jx);
            let q = eig.eigenvectors.map(|x| C64::new(x, 0.0));
            let theta = 1.234;
            let u = &q
                * DMatrix::from_diagonal(&eig.eigenvalues.map(|l| C64::from_polar(1.0, -l * theta)))
                * q.transpose();
            let psi = haar_random_state(n, 17 + n as u64).unwrap();
            let want = &u * nalgebra::DVector::from_column_slice(psi.amplitudes());
            let got = classical_rotation(&psi, theta);
            for (a, b) in got.amplitudes().iter().zip(want.iter()) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn exact_error_zero_angle() {
        let psi = cat_state(CatKind::X, 3).unwrap();
        let field = coherent_state(4.0, 80).unwrap();
        let spec = RotationSpec::new(3, 4.0, 0.0, 0.0);
        let rep = gate_error_exact(&psi, &field, &spec, 1e-10).unwrap();
        assert!(rep.total.abs() < 1e-9);
        assert_eq!(rep.method, Method::Exact);
        assert!(rep.first_order_term.is_none());
    }

    #[test]
    fn exact_error_single_excited_atom() {
        let alpha = 10.0;
        let field = coherent_state(alpha, default_n()).unwrap();
        let spec = RotationSpec::new(1, alpha, 0.0, PI);
        let rep = gate_error_exact(&AtomState::excited(1).unwrap(), &field, &spec, 1e-10).unwrap();
        let want = PI * PI / 1600.0;
        assert!((rep.total - want).abs() < 0.1 * want, "{}", rep.total);
    }

    #[test]
    fn exact_error_x_cat_is_positive() {
        let field = coherent_state(5.0, 120).unwrap();
        let x = cat_state(CatKind::X, 3).unwrap();
        for theta in [0.5, PI / 2.0, PI] {
            let spec = RotationSpec::new(3, 5.0, 0.0, theta);
            let rep = gate_error_exact(&x, &field, &spec, 1e-10).unwrap();
            assert!(rep.total > 1e-4);
        }
    }

    #[test]
    fn krylov_dimension_convergence() {
        let field = coherent_state(6.0, crate::quantum::default_n_max(6.0, 0.0)).unwrap();
        let psi = cat_state(CatKind::Z, 3).unwrap();
        let spec = RotationSpec::new(3, 6.0, 0.0, 2.0);
        let tol = 1e-10;
        let small = Propagator::Krylov(KrylovOptions {
            max_dim: 15,
            ..KrylovOptions::with_tol(tol)
        });
        let large = Propagator::Krylov(KrylovOptions {
            max_dim: 30,
            ..KrylovOptions::with_tol(tol)
        });
        let a = gate_error_exact_with(&psi, &field, &spec, &small).unwrap().total;
        let b = gate_error_exact_with(&psi, &field, &spec, &large).unwrap().total;
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn truncation_growth_is_reported() {
        // too small a cutoff for the photons emitted by 4 excited atoms
        let field = coherent_state(0.0, 12).unwrap();
        let j = tensor(&AtomState::excited(4).unwrap(), &field);
        let err = evolve(&j, 1.0, 1e-10).unwrap_err();
        assert!(matches!(err, Error::Truncation { .. }), "{err:?}");
    }

    #[test]
    fn rejects_bad_arguments() {
        let j = tensor(&AtomState::ground(1).unwrap(), &coherent_state(1.0, 30).unwrap());
        assert!(evolve(&j, -1.0, 1e-10).is_err());
        assert!(evolve(&j, 1.0, 1e-3).is_err());
        let field = coherent_state(2.0, 40).unwrap();
        let spec = RotationSpec::new(1, 3.0, 0.0, 1.0);
        assert!(gate_error_exact(&AtomState::ground(1).unwrap(), &field, &spec, 1e-10).is_err());
    }
}
