//! Writes the CSV data of the analytic figures into a directory
//! (default `figure_data/`), the same tables `fieldrot figure <id>` writes.
//!
//! Run with `cargo run --example figure_data -- [DIR]`.

use std::path::PathBuf;

use fieldrot::cli::figures;
use fieldrot::ensemble::uniform_theta_grid;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figure_data".into()));
    let grid = uniform_theta_grid(121);
    let all = [
        ("figure1", figures::figure1(4, 10.0, &grid)?),
        ("figure2", figures::figure2(&grid)?),
        ("figure3", figures::figure3(&grid)?),
        ("figure4", figures::figure4(&grid)?),
        ("figure5", figures::figure5(&grid)?),
        ("figure8", figures::figure8(20f64.sqrt(), &grid)?),
    ];
    for (stem, outputs) in &all {
        for path in outputs.write(&dir, stem)? {
            println!("{}", path.display());
        }
    }
    Ok(())
}
