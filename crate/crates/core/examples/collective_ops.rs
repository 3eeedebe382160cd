//! Collective spin operators, cat states and the classical rotation.
//!
//! Run with `cargo run --example collective_ops`.

use fieldrot::dynamics::classical_rotation;
use fieldrot::quantum::{build_collective_ops, cat_state, expectation, CatKind};

fn main() -> fieldrot::Result<()> {
    for n in 1..=4 {
        let ops = build_collective_ops(n)?;
        let comm = ops.jx.commutator(&ops.jy);
        let residual = comm.max_abs_diff(&ops.jz.scale(num_complex::Complex64::new(0.0, 1.0)));
        let casimir = ops.j_squared().trace().re / ops.dim() as f64;
        println!(
            "N = {n}: dim {:>2}, |[Jx,Jy] - iJz| = {residual:.1e}, Tr(J^2)/2^N = {casimir:.4} (3N/4 = {:.4})",
            ops.dim(),
            0.75 * n as f64
        );
    }

    let n = 4;
    let ops = build_collective_ops(n)?;
    for kind in [CatKind::X, CatKind::Z] {
        let cat = cat_state(kind, n)?;
        let a = cat.amplitudes();
        let jx2 = expectation(&ops.jx.matmul(&ops.jx), a)?.re;
        let jz2 = expectation(&ops.jz.matmul(&ops.jz), a)?.re;
        println!("{kind}-cat N = {n}: <Jx^2> = {jx2:.3}, <Jz^2> = {jz2:.3}");
    }

    // The x-cat branches are Jx eigenstates with eigenvalues +-N/2, so a
    // rotation about x only changes their relative phase.
    let cat = cat_state(CatKind::X, n)?;
    for theta in [0.5, 1.0, std::f64::consts::PI] {
        let rotated = classical_rotation(&cat, theta);
        println!(
            "theta = {theta:.3}: |<x-cat|R x-cat>|^2 = {:.6}, cos^2(N theta/2) = {:.6}",
            cat.fidelity(&rotated),
            (n as f64 * theta / 2.0).cos().powi(2)
        );
    }
    Ok(())
}
