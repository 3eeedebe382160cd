//! Coherent and squeezed coherent field states in a truncated Fock space.
//!
//! Run with `cargo run --example field_states`.

use fieldrot::perturbation::{field_quadrature_moments, FieldMoments};
use fieldrot::quantum::{coherent_state, default_n_max, squeezed_coherent_state};
use fieldrot::Error;

fn main() -> fieldrot::Result<()> {
    let alpha = 20f64.sqrt();
    let coherent = coherent_state(alpha, default_n_max(alpha, 0.0))?;
    println!(
        "coherent alpha^2 = 20: <n> = {:.6}, Var n = {:.6}, n_max = {}",
        coherent.mean_photon_number(),
        coherent.photon_number_variance(),
        coherent.n_max()
    );

    let vacuum = squeezed_coherent_state(0.0, 0.5, 80)?;
    println!(
        "squeezed vacuum r = 0.5: <n> = {:.6} (sinh^2 0.5 = {:.6})",
        vacuum.mean_photon_number(),
        0.5f64.sinh().powi(2)
    );

    for r in [0.0, 0.5, 1.0] {
        let field = squeezed_coherent_state(alpha, r, default_n_max(alpha, r))?;
        let m = field_quadrature_moments(&field)?;
        let ideal = FieldMoments::ideal(r);
        println!(
            "alpha^2 = 20, r = {r}: <n> = {:.4} (alpha^2 + sinh^2 r = {:.4}); <(a'-a'^dag)^2> = {:.5} (ideal {:.5})",
            field.mean_photon_number(),
            alpha * alpha + r.sinh().powi(2),
            m.second[1][1].re,
            ideal.second[1][1].re
        );
    }

    // Too small a truncation is reported together with a safe cutoff.
    match coherent_state(10.0, 100) {
        Err(Error::Truncation { n_max, required, .. }) => {
            println!("alpha = 10 with n_max = {n_max}: truncation error, use n_max >= {required}")
        }
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
