//! Transmission, phase and tunneling time of one barrier across its
//! tunneling range.

use polymer_tunneling::single::sweep_single;
use polymer_tunneling::{BarrierSystem, EnergyGrid};

fn main() -> polymer_tunneling::Result<()> {
    let sys = BarrierSystem::single(1.0, 5)?;
    let grid = EnergyGrid::fractions(10).scaled(sys.ceiling());
    println!("{:>8} {:>14} {:>12} {:>12}", "epsilon", "T", "delta", "tau");
    for r in sweep_single(&sys, &grid) {
        let r = r?;
        println!("{:>8.4} {:>14.6e} {:>12.6} {:>12.6}", r.epsilon, r.coefficient_t, r.delta, r.tau);
    }
    Ok(())
}
