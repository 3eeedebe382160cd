//! Second-order perturbative gate error for arbitrary atomic states and
//! displaced (squeezed) fields.
//!
//! With `a = alpha + a'` and the classical part `2 alpha Jx` moved into the
//! interaction picture, the fluctuation Hamiltonian is
//! `Jx X+ + i (cos phi Jy - sin phi Jz) X-`, `phi = 2 alpha t`, with
//! `X+ = a' + a'^dag` and `X- = a' - a'^dag`. Integrating it once and twice
//! up to `phi = theta` gives the coefficient tables below; the error is then
//! assembled from atomic moments `<Ja>`, `<Ja Jb>` and field moments of
//! `X+-`, all evaluated exactly. Every fluctuation operator is primed.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{ErrorReport, Method, QuadratureSplit, RotationSpec};
use crate::error::{Error, Result};
use crate::krylov::dot;
use crate::quantum::{
    annihilate, build_collective_ops, create, AtomState, CollectiveOps, FieldState, TAIL_TOLERANCE,
};

/// Perturbative totals above this are flagged as outside the validity range.
pub const VALIDITY_THRESHOLD: f64 = 0.2;

/// Field quadrature moments over `|Phi0>`; index 0 is `X+`, index 1 is `X-`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldMoments {
    /// `<X+>`, `<X->`.
    pub first: [C64; 2],
    /// `second[i][j] = <X_i X_j>`.
    pub second: [[C64; 2]; 2],
}

impl FieldMoments {
    /// Moments of an ideal displaced squeezed vacuum with real `r`.
    pub fn ideal(r: f64) -> Self {
        let c = |x: f64| C64::new(x, 0.0);
        Self {
            first: [c(0.0), c(0.0)],
            second: [[c((-2.0 * r).exp()), c(-1.0)], [c(1.0), c(-(2.0 * r).exp())]],
        }
    }
}

/// Exact first and second moments of `X+-` on the truncated Fock vector.
pub fn field_quadrature_moments(field: &FieldState) -> Result<FieldMoments> {
    let tail = field.tail_mass();
    if tail >= TAIL_TOLERANCE {
        return Err(Error::Truncation {
            n_max: field.n_max(),
            tail_mass: tail,
            required: field.n_max() + field.n_max() / 2 + 20,
        });
    }
    let amps = field.amplitudes();
    let alpha = field.alpha();
    let a = annihilate(amps);
    let ad = create(amps);
    let mut psi = amps.to_vec();
    psi.push(C64::new(0.0, 0.0));
    // X+ psi and X- psi on the one-level-extended space
    let xp: Vec<C64> = (0..psi.len())
        .map(|n| a[n] + ad[n] - psi[n] * (2.0 * alpha))
        .collect();
    let xm: Vec<C64> = (0..psi.len()).map(|n| a[n] - ad[n]).collect();
    // X+ is Hermitian, X- anti-Hermitian: <X_i X_j> = s_i <X_i psi | X_j psi>
    let pp = dot(&xp, &xp);
    let pm = dot(&xp, &xm);
    let mp = -dot(&xm, &xp);
    let mm = -dot(&xm, &xm);
    Ok(FieldMoments {
        first: [dot(&psi, &xp), dot(&psi, &xm)],
        second: [[pp, pm], [mp, mm]],
    })
}

/// Atomic moments `<Ja>` and `<Ja Jb>`, axis order x, y, z.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AtomicMoments {
    pub first: [C64; 3],
    pub second: [[C64; 3]; 3],
}

pub fn atomic_moments(psi0: &AtomState, ops: &CollectiveOps) -> Result<AtomicMoments> {
    if ops.n_atoms != psi0.n_atoms() {
        return Err(Error::DimensionMismatch {
            expected: ops.n_atoms,
            got: psi0.n_atoms(),
        });
    }
    let applied: Vec<Vec<C64>> = (0..3)
        .map(|k| ops.component(k).mul_vec(psi0.amplitudes()))
        .collect::<Result<_>>()?;
    let mut first = [C64::default(); 3];
    let mut second = [[C64::default(); 3]; 3];
    for a in 0..3 {
        first[a] = dot(psi0.amplitudes(), &applied[a]);
        for b in 0..3 {
            // Ja Hermitian: <Ja Jb> = <Ja psi | Jb psi>
            second[a][b] = dot(&applied[a], &applied[b]);
        }
    }
    Ok(AtomicMoments { first, second })
}

/// Field quadrature coupled to each spin component: x -> X+, y and z -> X-.
const QUADRATURE: [usize; 3] = [0, 1, 1];
/// Sign relating `F_a^dag` to `F_a`.
const ADJOINT_SIGN: [f64; 3] = [1.0, -1.0, -1.0];

/// Coefficients `K_a` in `|Psi1> = (-i / 2 alpha) sum_a K_a J_a F_a |Psi0>`:
/// `(theta, i sin theta, i (cos theta - 1))`.
pub fn first_order_coefficients(theta: f64) -> [C64; 3] {
    [
        C64::new(theta, 0.0),
        C64::new(0.0, theta.sin()),
        C64::new(0.0, theta.cos() - 1.0),
    ]
}

/// Coefficients `I_ab` in
/// `|Psi2> = (-1 / 4 alpha^2) sum_ab I_ab J_a J_b F_a F_b |Psi0>`.
pub fn second_order_coefficients(theta: f64) -> [[C64; 3]; 3] {
    let (s, c) = theta.sin_cos();
    let s2 = (2.0 * theta).sin();
    let re = |x: f64| C64::new(x, 0.0);
    let im = |x: f64| C64::new(0.0, x);
    [
        [
            re(theta * theta / 2.0),
            im(1.0 - c),
            im(s - theta),
        ],
        [
            im(theta * s + c - 1.0),
            re(-s * s / 2.0),
            re(s - theta / 2.0 - s2 / 4.0),
        ],
        [
            im(-(s - theta * c)),
            re(theta / 2.0 - s2 / 4.0),
            re(s * s / 2.0 + c - 1.0),
        ],
    ]
}

/// Time-integrated coefficient tables with the field moments they multiply.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbationTerms {
    /// `(theta <Jx>, sin theta <Jy>, (cos theta - 1) <Jz>)`.
    pub first_order_atomic: [f64; 3],
    /// `I_ab` multiplying `<Ja Jb>`.
    pub second_order_atomic: [[C64; 3]; 3],
    pub field_moments: FieldMoments,
}

pub fn perturbation_terms(
    psi0: &AtomState,
    field: &FieldState,
    theta: f64,
) -> Result<PerturbationTerms> {
    let ops = build_collective_ops(psi0.n_atoms())?;
    let m = atomic_moments(psi0, &ops)?;
    let k = first_order_coefficients(theta);
    Ok(PerturbationTerms {
        first_order_atomic: [
            k[0].re * m.first[0].re,
            k[1].im * m.first[1].re,
            k[2].im * m.first[2].re,
        ],
        second_order_atomic: second_order_coefficients(theta),
        field_moments: field_quadrature_moments(field)?,
    })
}

/// Atomic inputs of the error assembly. For a single state
/// `first_products[a][b] = conj(<Ja>) <Jb>`; for ensemble averages it holds
/// the averaged products.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct AtomicInputs {
    pub first: [C64; 3],
    pub first_products: [[C64; 3]; 3],
    pub second: [[C64; 3]; 3],
    pub jx_variance: f64,
}

impl From<&AtomicMoments> for AtomicInputs {
    fn from(m: &AtomicMoments) -> Self {
        let mut products = [[C64::default(); 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                products[a][b] = m.first[a].conj() * m.first[b];
            }
        }
        Self {
            first: m.first,
            first_products: products,
            second: m.second,
            jx_variance: m.second[0][0].re - m.first[0].re.powi(2),
        }
    }
}

#[derive(Default)]
struct Split {
    amplitude: f64,
    phase: f64,
    cross: f64,
}

impl Split {
    fn add(&mut self, a: usize, b: usize, value: f64) {
        match (a, b) {
            (0, 0) => self.amplitude += value,
            (1 | 2, 1 | 2) => self.phase += value,
            _ => self.cross += value,
        }
    }
}

pub(crate) fn assemble(
    atoms: &AtomicInputs,
    field: &FieldMoments,
    alpha: f64,
    theta: f64,
    delta: f64,
) -> ErrorReport {
    let angle = theta + delta;
    let k = first_order_coefficients(angle);
    let coeff = second_order_coefficients(angle);
    let mut split = Split::default();

    // <Psi0|Psi1>
    let psi1: C64 = (0..3)
        .map(|a| k[a] * atoms.first[a] * field.first[QUADRATURE[a]])
        .sum::<C64>()
        * C64::new(0.0, -0.5 / alpha);
    let linear = -2.0 * psi1.re;

    // ||<psi0|Psi1>||^2
    let mut norm1 = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            let f = field.second[QUADRATURE[a]][QUADRATURE[b]] * ADJOINT_SIGN[a];
            let v = (k[a].conj() * k[b] * atoms.first_products[a][b] * f).re / (4.0 * alpha * alpha);
            norm1 += v;
            split.add(a, b, -v);
        }
    }

    // -2 Re <Psi0|Psi2>
    let mut second = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            let f = field.second[QUADRATURE[a]][QUADRATURE[b]];
            let v = (coeff[a][b] * atoms.second[a][b] * f).re / (2.0 * alpha * alpha);
            second += v;
            split.add(a, b, v);
        }
    }

    let first_order = linear - norm1;
    let time_offset = delta * delta * atoms.jx_variance;
    let total = first_order + second + time_offset;
    ErrorReport {
        total,
        first_order_term: Some(first_order),
        second_order_term: Some(second),
        time_offset_term: Some(time_offset),
        linear_term: Some(linear),
        quadratures: Some(QuadratureSplit {
            amplitude: split.amplitude,
            phase: split.phase,
            cross: split.cross,
        }),
        diagnostics: None,
        method: Method::Perturbative,
        out_of_validity: !(0.0..=VALIDITY_THRESHOLD).contains(&total),
    }
}

/// Second-order error prediction for `psi0` driven by `field`.
pub fn perturbative_error(
    psi0: &AtomState,
    field: &FieldState,
    spec: &RotationSpec,
) -> Result<ErrorReport> {
    spec.validate()?;
    if psi0.n_atoms() != spec.n_atoms {
        return Err(Error::DimensionMismatch {
            expected: spec.n_atoms,
            got: psi0.n_atoms(),
        });
    }
    let ops = build_collective_ops(spec.n_atoms)?;
    perturbative_error_with(psi0, &ops, &field_quadrature_moments(field)?, spec)
}

/// As [`perturbative_error`] with precomputed operators and field moments
/// (used by ensemble sweeps).
pub fn perturbative_error_with(
    psi0: &AtomState,
    ops: &CollectiveOps,
    field: &FieldMoments,
    spec: &RotationSpec,
) -> Result<ErrorReport> {
    let m = atomic_moments(psi0, ops)?;
    Ok(assemble(
        &AtomicInputs::from(&m),
        field,
        spec.alpha,
        spec.theta,
        spec.delta,
    ))
}

/// Haar average of the perturbative error, assembled from the ensemble
/// averages `<Ja Jb> -> delta_ab N/4` and
/// `<Ja><Jb> -> delta_ab N / (4 (2^N + 1))` with ideal field moments.
pub fn perturbative_error_haar_average(n_atoms: usize, alpha: f64, r: f64, theta: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "must be positive",
        });
    }
    crate::quantum::check_atom_count(n_atoms)?;
    let n = n_atoms as f64;
    let mean_sq = n / (4.0 * (2f64.powi(n_atoms as i32) + 1.0));
    let mut products = [[C64::default(); 3]; 3];
    let mut second = [[C64::default(); 3]; 3];
    for a in 0..3 {
        products[a][a] = C64::new(mean_sq, 0.0);
        second[a][a] = C64::new(n / 4.0, 0.0);
    }
    let inputs = AtomicInputs {
        first: [C64::default(); 3],
        first_products: products,
        second,
        jx_variance: n / 4.0 - mean_sq,
    };
    Ok(assemble(&inputs, &FieldMoments::ideal(r), alpha, theta, 0.0).total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{
        cat_state, coherent_state, default_n_max, haar_random_state, squeezed_coherent_state,
        CatKind,
    };
    use std::f64::consts::PI;

    /// Second-order coefficients written out term by term.
    fn reference_table(t: f64) -> [[C64; 3]; 3] {
        let i = C64::i();
        let one = C64::new(1.0, 0.0);
        [
            [
                one * (t * t / 2.0),
                -i * (t.cos() - 1.0),
                i * (t.sin() - t),
            ],
            [
                i * (t * t.sin() + t.cos() - 1.0),
                -one * (t.sin().powi(2) / 2.0),
                -one * (t / 2.0 + (2.0 * t).sin() / 4.0 - t.sin()),
            ],
            [
                -i * (t.sin() - t * t.cos()),
                one * (t / 2.0 - (2.0 * t).sin() / 4.0),
                one * (t.sin().powi(2) / 2.0 + t.cos() - 1.0),
            ],
        ]
    }

    /// Numerical double integral of the ordered product of the interaction
    /// picture coefficient functions.
    fn quadrature_table(theta: f64) -> [[C64; 3]; 3] {
        let c = |axis: usize, p: f64| -> C64 {
            match axis {
                0 => C64::new(1.0, 0.0),
                1 => C64::new(0.0, p.cos()),
                _ => C64::new(0.0, -p.sin()),
            }
        };
        let steps = 4000;
        let h = theta / steps as f64;
        let mut out = [[C64::default(); 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                // inner integral accumulated with the trapezoid rule
                let mut inner = C64::default();
                let mut total = C64::default();
                let mut prev_outer = C64::default();
                for k in 1..=steps {
                    let p0 = (k - 1) as f64 * h;
                    let p1 = k as f64 * h;
                    inner += (c(b, p0) + c(b, p1)) * (h / 2.0);
                    let outer = c(a, p1) * inner;
                    total += (prev_outer + outer) * (h / 2.0);
                    prev_outer = outer;
                }
                out[a][b] = total;
            }
        }
        out
    }

    #[test]
    fn coefficients_match_table_and_quadrature() {
        for theta in [0.3, 1.0, PI / 2.0, 2.5, PI] {
            let got = second_order_coefficients(theta);
            let table = reference_table(theta);
            let numeric = quadrature_table(theta);
            for a in 0..3 {
                for b in 0..3 {
                    assert!((got[a][b] - table[a][b]).norm() < 1e-14);
                    assert!((got[a][b] - numeric[a][b]).norm() < 1e-6, "{a}{b} at {theta}");
                }
            }
        }
        let zero = second_order_coefficients(0.0);
        assert!(zero.iter().flatten().all(|c| c.norm() == 0.0));
        assert!(first_order_coefficients(0.0).iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn coherent_field_moments() {
        let f = coherent_state(10.0, 300).unwrap();
        let m = field_quadrature_moments(&f).unwrap();
        assert!(m.first[0].norm() < 1e-8 && m.first[1].norm() < 1e-8);
        assert!((m.second[0][0] - 1.0).norm() < 1e-8);
        assert!((m.second[1][1] + 1.0).norm() < 1e-8);
        assert!((m.second[0][1] - m.second[1][0] + 2.0).norm() < 1e-12);
    }

    #[test]
    fn squeezed_field_moments() {
        let f = squeezed_coherent_state(5.0, 0.5, default_n_max(5.0, 0.5)).unwrap();
        let m = field_quadrature_moments(&f).unwrap();
        assert!((m.second[0][0].re - (-1.0f64).exp()).abs() < 1e-6);
        assert!((m.second[1][1].re + 1.0f64.exp()).abs() < 1e-6);
        assert!((m.second[0][1] - m.second[1][0] + 2.0).norm() < 1e-12);
        let ideal = FieldMoments::ideal(0.5);
        for i in 0..2 {
            for j in 0..2 {
                assert!((m.second[i][j] - ideal.second[i][j]).norm() < 1e-6);
            }
        }
    }

    fn eq10(kind: CatKind, n: f64, alpha: f64, theta: f64, r: f64) -> f64 {
        let pre = n / (16.0 * alpha * alpha);
        let (a, p) = ((-2.0 * r).exp(), (2.0 * r).exp());
        match kind {
            CatKind::Z => pre * (theta * theta * a + (theta.sin().powi(2) + 4.0 * n * (theta / 2.0).sin().powi(4)) * p),
            CatKind::X => pre * (n * theta * theta * a + 4.0 * (theta / 2.0).sin().powi(2) * p),
        }
    }

    #[test]
    fn reduces_to_cat_closed_forms() {
        let alpha = 10.0;
        for n in 3..=6 {
            for kind in [CatKind::Z, CatKind::X] {
                let psi = cat_state(kind, n).unwrap();
                for r in [0.0, 0.3, -0.2] {
                    let moments = FieldMoments::ideal(r);
                    let ops = build_collective_ops(n).unwrap();
                    for theta in [0.4, PI / 2.0, PI] {
                        let spec = RotationSpec::new(n, alpha, r, theta);
                        let rep = perturbative_error_with(&psi, &ops, &moments, &spec).unwrap();
                        let want = eq10(kind, n as f64, alpha, theta, r);
                        assert!((rep.total - want).abs() < 1e-10, "{kind} N={n} r={r}");
                        assert!(rep.first_order_term.unwrap().abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn cat_examples_at_pi() {
        let field = coherent_state(10.0, 300).unwrap();
        let z = cat_state(CatKind::Z, 4).unwrap();
        let x = cat_state(CatKind::X, 4).unwrap();
        let spec = RotationSpec::new(4, 10.0, 0.0, PI);
        let rz = perturbative_error(&z, &field, &spec).unwrap();
        let rx = perturbative_error(&x, &field, &spec).unwrap();
        assert!((rz.total - 4.0 / 1600.0 * (PI * PI + 16.0)).abs() < 1e-10);
        assert!((rx.total - 4.0 / 1600.0 * (4.0 * PI * PI + 4.0)).abs() < 1e-10);
        assert!(rz.linear_term.unwrap().abs() < 1e-10);
        let sum = rz.first_order_term.unwrap() + rz.second_order_term.unwrap() + rz.time_offset_term.unwrap();
        assert!((sum - rz.total).abs() < 1e-12);
    }

    #[test]
    fn two_atom_and_single_atom_closed_forms() {
        let alpha = 7.0;
        for r in [0.0, 0.25] {
            let moments = FieldMoments::ideal(r);
            for theta in [0.5, 1.7, PI] {
                let (a, p) = ((-2.0 * r).exp(), (2.0 * r).exp());
                let ops2 = build_collective_ops(2).unwrap();
                let spec2 = RotationSpec::new(2, alpha, r, theta);
                let two = perturbative_error_with(&cat_state(CatKind::Z, 2).unwrap(), &ops2, &moments, &spec2).unwrap();
                let eq14 = (theta * theta * a + 4.0 * (theta / 2.0).sin().powi(4) * p) / (4.0 * alpha * alpha);
                assert!((two.total - eq14).abs() < 1e-12);

                let ops1 = build_collective_ops(1).unwrap();
                let spec1 = RotationSpec::new(1, alpha, r, theta);
                let e = perturbative_error_with(&AtomState::excited(1).unwrap(), &ops1, &moments, &spec1).unwrap();
                let g = perturbative_error_with(&AtomState::ground(1).unwrap(), &ops1, &moments, &spec1).unwrap();
                let plus = (theta * (-r).exp() + theta.sin() * r.exp()).powi(2) / (16.0 * alpha * alpha);
                let minus = (theta * (-r).exp() - theta.sin() * r.exp()).powi(2) / (16.0 * alpha * alpha);
                assert!((e.total - plus).abs() < 1e-12);
                assert!((g.total - minus).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_angle_gives_zero() {
        let field = coherent_state(5.0, 120).unwrap();
        for seed in 0..5 {
            let psi = haar_random_state(3, seed).unwrap();
            let rep = perturbative_error(&psi, &field, &RotationSpec::new(3, 5.0, 0.0, 0.0)).unwrap();
            assert!(rep.total.abs() < 1e-12);
        }
    }

    #[test]
    fn time_offset_term_is_jx_variance() {
        let field = coherent_state(6.0, 150).unwrap();
        let ops = build_collective_ops(3).unwrap();
        let psi = haar_random_state(3, 8).unwrap();
        let m = atomic_moments(&psi, &ops).unwrap();
        let var = m.second[0][0].re - m.first[0].re.powi(2);
        let delta = -0.03;
        let rep = perturbative_error(&psi, &field, &RotationSpec::new(3, 6.0, 0.0, 1.0).with_delta(delta)).unwrap();
        assert!((rep.time_offset_term.unwrap() - delta * delta * var).abs() < 1e-12);
    }

    #[test]
    fn haar_average_closed_form() {
        let v = perturbative_error_haar_average(3, 60f64.sqrt(), 0.0, PI).unwrap();
        let want = (8.0 / 9.0) * (3.0 / 960.0) * (PI * PI + 4.0);
        assert!((v - want).abs() < 1e-12);
        assert!((v - 0.03853).abs() < 1e-5);
        assert_eq!(perturbative_error_haar_average(3, 5.0, 0.2, 0.0).unwrap(), 0.0);
        for n in 1..=8 {
            for (r, theta) in [(0.0, 0.5), (0.3, 2.0), (-0.2, PI)] {
                let moments = perturbative_error_haar_average(n, 4.0, r, theta).unwrap();
                let closed = crate::formulas::avg_error(n, 4.0, theta, r).unwrap();
                assert!((moments - closed).abs() < 1e-14, "N={n}");
            }
        }
        for n in 1..=10 {
            let scaled = perturbative_error_haar_average(n, 5.0, 0.1, 2.0).unwrap() * (1.0 + 2f64.powi(-(n as i32)));
            let unit = perturbative_error_haar_average(1, 5.0, 0.1, 2.0).unwrap() * 1.5;
            assert!((scaled - n as f64 * unit).abs() < 1e-12);
        }
    }

    #[test]
    fn validity_flag() {
        let field = coherent_state(2.0, 60).unwrap();
        let x = cat_state(CatKind::X, 4).unwrap();
        let rep = perturbative_error(&x, &field, &RotationSpec::new(4, 2.0, 0.0, PI)).unwrap();
        assert!(rep.total > 0.2 && rep.out_of_validity);
    }
}
