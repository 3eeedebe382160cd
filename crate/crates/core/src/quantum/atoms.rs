use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::collective::check_atom_count;
use crate::error::{Error, Result};
use crate::krylov::{dot, norm};
use crate::rng::state_rng;

/// Pure state of N two-level atoms on the 2^N computational basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomState {
    amplitudes: Vec<C64>,
    n_atoms: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CatKind {
    /// `(|gg..g> + |ee..e>)/sqrt 2`
    Z,
    /// `(|++..+> + |--..->)/sqrt 2` with `|+-> = (|e> +- |g>)/sqrt 2`
    X,
}

impl std::fmt::Display for CatKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CatKind::Z => "z",
            CatKind::X => "x",
        })
    }
}

impl AtomState {
    /// Checks unit norm within 1e-12.
    pub fn new(amplitudes: Vec<C64>, n_atoms: usize) -> Result<Self> {
        check_atom_count(n_atoms)?;
        if amplitudes.len() != 1 << n_atoms {
            return Err(Error::DimensionMismatch {
                expected: 1 << n_atoms,
                got: amplitudes.len(),
            });
        }
        let n = norm(&amplitudes);
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter {
                name: "norm",
                value: n,
                reason: "atomic state must be normalized",
            });
        }
        Ok(Self {
            amplitudes,
            n_atoms,
        })
    }

    /// Rescales to unit norm; rejects the zero vector.
    pub fn normalized(mut amplitudes: Vec<C64>, n_atoms: usize) -> Result<Self> {
        let n = norm(&amplitudes);
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidParameter {
                name: "norm",
                value: n,
                reason: "cannot normalize",
            });
        }
        amplitudes.iter_mut().for_each(|a| *a /= n);
        Self::new(amplitudes, n_atoms)
    }

    pub fn basis(n_atoms: usize, index: usize) -> Result<Self> {
        check_atom_count(n_atoms)?;
        let dim = 1usize << n_atoms;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: index,
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self {
            amplitudes: amps,
            n_atoms,
        })
    }

    /// All atoms excited.
    pub fn excited(n_atoms: usize) -> Result<Self> {
        check_atom_count(n_atoms)?;
        Self::basis(n_atoms, (1 << n_atoms) - 1)
    }

    /// All atoms in the ground state.
    pub fn ground(n_atoms: usize) -> Result<Self> {
        Self::basis(n_atoms, 0)
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn overlap(&self, other: &Self) -> C64 {
        dot(&self.amplitudes, &other.amplitudes)
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.overlap(other).norm_sqr()
    }

    pub(crate) fn from_raw(amplitudes: Vec<C64>, n_atoms: usize) -> Self {
        Self {
            amplitudes,
            n_atoms,
        }
    }
}

pub fn cat_state(kind: CatKind, n_atoms: usize) -> Result<AtomState> {
    check_atom_count(n_atoms)?;
    let dim = 1usize << n_atoms;
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    match kind {
        CatKind::Z => {
            let c = std::f64::consts::FRAC_1_SQRT_2;
            amps[0] += c;
            amps[dim - 1] += c;
        }
        CatKind::X => {
            // <s|+..+> = 2^{-N/2}, <s|-..-> = (-1)^{#g} 2^{-N/2}
            let base = 0.5f64.powf(n_atoms as f64 / 2.0) * std::f64::consts::SQRT_2;
            for (s, a) in amps.iter_mut().enumerate() {
                let ground = n_atoms as u32 - s.count_ones();
                if ground % 2 == 0 {
                    *a = C64::new(base, 0.0);
                }
            }
        }
    }
    AtomState::normalized(amps, n_atoms)
}

/// Haar-random state from an explicit generator: normalized vector of i.i.d.
/// standard complex Gaussians.
pub fn haar_random_state_with<R: Rng + ?Sized>(n_atoms: usize, rng: &mut R) -> Result<AtomState> {
    check_atom_count(n_atoms)?;
    let amps: Vec<C64> = (0..1usize << n_atoms)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(re, im)
        })
        .collect();
    AtomState::normalized(amps, n_atoms)
}

/// Haar-random state, deterministic in `seed`.
pub fn haar_random_state(n_atoms: usize, seed: u64) -> Result<AtomState> {
    haar_random_state_with(n_atoms, &mut state_rng(seed, 0))
}
