//! Collective pseudo-spin operators on N two-level atoms.
//!
//! Basis convention: computational basis index `s` in `0..2^N`, atom 1 is the
//! most significant bit and an excited atom `|e>` is a set bit. Atom `i`
//! (1-based) therefore lives at bit `N - i`. With hbar = 1 the operators obey
//! `[Jx, Jy] = i Jz` and cyclic.

use num_complex::Complex64 as C64;

use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

/// Largest supported atom count (2^12 = 4096 basis states).
pub const MAX_ATOMS: usize = 12;

#[derive(Clone, Debug)]
pub struct CollectiveOps {
    pub n_atoms: usize,
    pub jplus: SparseMatrix,
    pub jminus: SparseMatrix,
    pub jx: SparseMatrix,
    pub jy: SparseMatrix,
    pub jz: SparseMatrix,
}

/// Bit position of atom `i` (1-based) in an `n_atoms` register.
#[inline]
pub fn atom_bit(n_atoms: usize, atom: usize) -> usize {
    n_atoms - atom
}

/// Number of excited atoms in basis state `s`.
#[inline]
pub fn excitations(s: usize) -> u32 {
    s.count_ones()
}

/// Eigenvalue of `Jz` on basis state `s`.
#[inline]
pub fn jz_eigenvalue(n_atoms: usize, s: usize) -> f64 {
    excitations(s) as f64 - n_atoms as f64 / 2.0
}

pub fn check_atom_count(n_atoms: usize) -> Result<()> {
    if (1..=MAX_ATOMS).contains(&n_atoms) {
        Ok(())
    } else {
        Err(Error::AtomCount {
            got: n_atoms,
            min: 1,
            max: MAX_ATOMS,
        })
    }
}

/// Builds `J+`, `J-`, `Jx`, `Jy`, `Jz` for `n_atoms` atoms.
pub fn build_collective_ops(n_atoms: usize) -> Result<CollectiveOps> {
    check_atom_count(n_atoms)?;
    let dim = 1usize << n_atoms;
    let one = C64::new(1.0, 0.0);

    let jplus = SparseMatrix::from_triplets(
        dim,
        (0..dim).flat_map(|s| {
            (0..n_atoms)
                .filter(move |&b| s & (1 << b) == 0)
                .map(move |b| (s | (1 << b), s, one))
        }),
    );
    let jminus = jplus.adjoint();
    let jx = (&jplus + &jminus).scale(C64::new(0.5, 0.0));
    // (J+ - J-) / 2i
    let jy = (&jplus - &jminus).scale(C64::new(0.0, -0.5));
    let jz = SparseMatrix::from_triplets(
        dim,
        (0..dim).map(|s| (s, s, C64::new(jz_eigenvalue(n_atoms, s), 0.0))),
    );

    Ok(CollectiveOps {
        n_atoms,
        jplus,
        jminus,
        jx,
        jy,
        jz,
    })
}

impl CollectiveOps {
    pub fn dim(&self) -> usize {
        1 << self.n_atoms
    }

    /// Component by axis index 0, 1, 2 = x, y, z.
    pub fn component(&self, axis: usize) -> &SparseMatrix {
        match axis {
            0 => &self.jx,
            1 => &self.jy,
            2 => &self.jz,
            _ => panic!("axis index {axis} out of range"),
        }
    }

    /// Casimir `J^2 = Jx^2 + Jy^2 + Jz^2`.
    pub fn j_squared(&self) -> SparseMatrix {
        let xx = self.jx.matmul(&self.jx);
        let yy = self.jy.matmul(&self.jy);
        let zz = self.jz.matmul(&self.jz);
        &(&xx + &yy) + &zz
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn single_atom_spectrum() {
        let ops = build_collective_ops(1).unwrap();
        let d = ops.jz.diagonal();
        assert_eq!(d, vec![C64::new(-0.5, 0.0), C64::new(0.5, 0.0)]);
    }

    #[test]
    fn jz_multiplicities_are_binomial() {
        for n in 1..=8 {
            let ops = build_collective_ops(n).unwrap();
            let diag = ops.jz.diagonal();
            for k in 0..=n {
                let m = k as f64 - n as f64 / 2.0;
                let count = diag.iter().filter(|v| (v.re - m).abs() < 1e-12).count();
                assert_eq!(count, binom(n, k), "N={n} m={m}");
            }
        }
        let ops = build_collective_ops(4).unwrap();
        let zero = ops.jz.diagonal().iter().filter(|v| v.re.abs() < 1e-12).count();
        assert_eq!(zero, 6);
    }

    #[test]
    fn trace_jz_squared_n3() {
        let ops = build_collective_ops(3).unwrap();
        let t = ops.jz.matmul(&ops.jz).trace();
        assert!((t.re - 6.0).abs() < 1e-12 && t.im.abs() < 1e-12);
    }

    #[test]
    fn operator_identities() {
        for n in 1..=6 {
            let ops = build_collective_ops(n).unwrap();
            let i = C64::i();
            assert!(ops.jplus.max_abs_diff(&ops.jminus.adjoint()) < 1e-15);
            assert!(ops.jx.is_hermitian(1e-12));
            assert!(ops.jy.is_hermitian(1e-12));
            assert!(ops.jz.is_hermitian(1e-12));
            let (x, y, z) = (&ops.jx, &ops.jy, &ops.jz);
            assert!(x.commutator(y).max_abs_diff(&z.scale(i)) < 1e-10);
            assert!(y.commutator(z).max_abs_diff(&x.scale(i)) < 1e-10);
            assert!(z.commutator(x).max_abs_diff(&y.scale(i)) < 1e-10);
            let j2 = ops.j_squared();
            for a in [x, y, z] {
                assert!(j2.commutator(a).max_abs() < 1e-10);
            }
        }
    }

    #[test]
    fn raising_annihilates_fully_excited() {
        for n in 1..=5 {
            let ops = build_collective_ops(n).unwrap();
            let mut v = vec![C64::new(0.0, 0.0); ops.dim()];
            v[ops.dim() - 1] = C64::new(1.0, 0.0);
            let out = ops.jplus.mul_vec(&v).unwrap();
            assert!(out.iter().all(|c| c.norm() == 0.0));
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(build_collective_ops(0).is_err());
        assert!(build_collective_ops(13).is_err());
    }

    #[test]
    fn atom_one_is_most_significant() {
        // |e g g> for N = 3 is index 0b100.
        assert_eq!(atom_bit(3, 1), 2);
        assert_eq!(jz_eigenvalue(3, 0b100), -0.5);
    }
}
