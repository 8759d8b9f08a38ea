//! Map the symmetry-breaking region in the (a, b) strip and write it as CSV
//! and SVG under `target/`.

use std::fs;

use cknmt::region_mapper::{boundary_gap, boundary_slope, sweep, to_csv, to_svg, ClassifyMode, GridSpec, RegionOptions};

fn main() -> cknmt::Result<()> {
    let grid = GridSpec { a_min: 0.05, a_max: 8.0, n_a: 60, n_b: 60, mirror: true };
    let s = sweep(&grid, ClassifyMode::FormulaOnly, &RegionOptions::default())?;
    println!("{:?}", s.summary);
    for a in [1e-3, 0.1, 1.0, 10.0] {
        println!("a={a:<6} slope {:.6}, gap {:.6}", boundary_slope(a)?, boundary_gap(a)?);
    }
    fs::create_dir_all("target")?;
    fs::write("target/phase_diagram.csv", to_csv(&s.points))?;
    fs::write("target/phase_diagram.svg", to_svg(&s.points))?;
    println!("wrote target/phase_diagram.csv and target/phase_diagram.svg");
    Ok(())
}
