//! Three barriers: resonant transmission from the Chebyshev composition,
//! checked against the explicit matrix power.

use polymer_tunneling::multi::{cell_matrix, transfer_matrix_n, transmission_n};
use polymer_tunneling::{BarrierSystem, DispersionPair, EnergyGrid};

fn main() -> polymer_tunneling::Result<()> {
    let sys = BarrierSystem::new(1.063, 2, 2, 3)?;
    let grid = EnergyGrid::fractions(25).scaled(sys.ceiling());
    println!("{:>8} {:>10} {:>12} {:>10}", "epsilon", "g", "T_N", "det defect");
    for eps in grid.iter() {
        let d = DispersionPair::new(eps, sys.upsilon0)?;
        let (g, _) = cell_matrix(&d, &sys)?;
        let t = transfer_matrix_n(&d, &sys)?;
        println!(
            "{eps:>8.4} {:>10.4} {:>12.6e} {:>10.1e}",
            g.t11.re,
            transmission_n(&d, &sys)?,
            (t.determinant() - 1.0).norm() / t.t11.norm_sqr().max(1.0)
        );
    }
    Ok(())
}
