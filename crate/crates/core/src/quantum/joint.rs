use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::atoms::AtomState;
use super::collective::excitations;
use super::field::{FieldState, TAIL_LEVELS};
use crate::error::{Error, Result};
use crate::krylov::norm;

/// Atom-field state. Amplitude of `|s>|n>` sits at `s * (n_max + 1) + n`,
/// i.e. each atomic basis state owns a contiguous Fock block.
#[derive(Clone, Debug, PartialEq)]
pub struct JointState {
    amplitudes: Vec<C64>,
    n_atoms: usize,
    n_max: usize,
}

impl JointState {
    pub fn from_amplitudes(amplitudes: Vec<C64>, n_atoms: usize, n_max: usize) -> Result<Self> {
        let expected = (1usize << n_atoms) * (n_max + 1);
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: amplitudes.len(),
            });
        }
        Ok(Self {
            amplitudes,
            n_atoms,
            n_max,
        })
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn field_dim(&self) -> usize {
        self.n_max + 1
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    #[inline]
    pub fn index(&self, atom: usize, photons: usize) -> usize {
        atom * (self.n_max + 1) + photons
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    /// Fock block of atomic basis state `s`.
    pub fn block(&self, atom: usize) -> &[C64] {
        let d = self.field_dim();
        &self.amplitudes[atom * d..(atom + 1) * d]
    }

    /// Expectation of the conserved excitation number `Jz + N/2 + a^dag a`,
    /// i.e. excited atoms plus photons.
    pub fn mean_excitation(&self) -> f64 {
        let d = self.field_dim();
        self.amplitudes
            .chunks(d)
            .enumerate()
            .map(|(s, block)| {
                let k = excitations(s) as f64;
                block
                    .iter()
                    .enumerate()
                    .map(|(n, c)| (k + n as f64) * c.norm_sqr())
                    .sum::<f64>()
            })
            .sum()
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.amplitudes
            .chunks(self.field_dim())
            .flat_map(|b| b.iter().enumerate())
            .map(|(n, c)| n as f64 * c.norm_sqr())
            .sum()
    }

    /// Probability in the top Fock levels `n > n_max - 10`.
    pub fn tail_mass(&self) -> f64 {
        let d = self.field_dim();
        let start = d.saturating_sub(TAIL_LEVELS);
        self.amplitudes
            .chunks(d)
            .map(|b| b[start..].iter().map(|c| c.norm_sqr()).sum::<f64>())
            .sum()
    }

    /// Unnormalized field state `(<target| x 1) |self>`.
    pub fn project_atoms(&self, target: &AtomState) -> Result<Vec<C64>> {
        if target.dim() != 1 << self.n_atoms {
            return Err(Error::DimensionMismatch {
                expected: 1 << self.n_atoms,
                got: target.dim(),
            });
        }
        let d = self.field_dim();
        let mut out = vec![C64::new(0.0, 0.0); d];
        for (c, block) in target.amplitudes().iter().zip(self.amplitudes.chunks(d)) {
            let cc = c.conj();
            if cc == C64::new(0.0, 0.0) {
                continue;
            }
            for (o, b) in out.iter_mut().zip(block) {
                *o += cc * b;
            }
        }
        Ok(out)
    }

    /// Reduced atomic density matrix.
    pub fn partial_trace_field(&self) -> DMatrix<C64> {
        let dim = 1usize << self.n_atoms;
        DMatrix::from_fn(dim, dim, |i, j| {
            self.block(i)
                .iter()
                .zip(self.block(j))
                .map(|(a, b)| a * b.conj())
                .sum()
        })
    }
}

/// `|atoms> (x) |field>` in the atom-major layout.
pub fn tensor(atoms: &AtomState, field: &FieldState) -> JointState {
    let d = field.dim();
    let mut amps = Vec::with_capacity(atoms.dim() * d);
    for a in atoms.amplitudes() {
        amps.extend(field.amplitudes().iter().map(|f| a * f));
    }
    JointState {
        amplitudes: amps,
        n_atoms: atoms.n_atoms(),
        n_max: field.n_max(),
    }
}
