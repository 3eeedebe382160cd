//! Hilbert-space bookkeeping: atoms, field, collective operators and the
//! joint atom-field state.

mod atoms;
mod collective;
mod field;
mod joint;
mod sparse;

pub use atoms::{cat_state, haar_random_state, haar_random_state_with, AtomState, CatKind};
pub use collective::{
    atom_bit, build_collective_ops, check_atom_count, excitations, jz_eigenvalue, CollectiveOps, MAX_ATOMS,
};
pub use field::{
    coherent_state, default_n_max, field_with_default_truncation, squeezed_coherent_state,
    FieldState, MAX_SQUEEZING, TAIL_LEVELS, TAIL_TOLERANCE,
};
pub(crate) use field::{annihilate, create};
pub use joint::{tensor, JointState};
pub use sparse::SparseMatrix;

use num_complex::Complex64 as C64;

use crate::error::Result;

/// `<state| op |state>`.
pub fn expectation(op: &SparseMatrix, state: &[C64]) -> Result<C64> {
    let applied = op.mul_vec(state)?;
    Ok(crate::krylov::dot(state, &applied))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn expectation_examples() {
        let id = SparseMatrix::identity(4);
        let s = haar_random_state(2, 5).unwrap();
        assert!((expectation(&id, s.amplitudes()).unwrap() - C64::new(1.0, 0.0)).norm() < 1e-12);

        let ops = build_collective_ops(1).unwrap();
        let e = AtomState::excited(1).unwrap();
        assert!((expectation(&ops.jz, e.amplitudes()).unwrap().re - 0.5).abs() < 1e-15);

        let ops = build_collective_ops(4).unwrap();
        let cat = cat_state(CatKind::Z, 4).unwrap();
        let jx2 = ops.jx.matmul(&ops.jx);
        assert!((expectation(&jx2, cat.amplitudes()).unwrap().re - 1.0).abs() < 1e-12);
        assert!(matches!(
            expectation(&jx2, e.amplitudes()),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
