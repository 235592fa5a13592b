//! Tunneling time of one barrier: closed form against the numerical phase
//! derivative, and the three-barrier time from the unwrapped phase.

use polymer_tunneling::derivative::phase_time_in;
use polymer_tunneling::multi::tunneling_time_n;
use polymer_tunneling::single::{phase_delta, tunneling_time_closed};
use polymer_tunneling::{BarrierSystem, DispersionPair, EnergyGrid};

fn main() -> polymer_tunneling::Result<()> {
    let sys = BarrierSystem::single(1.0, 4)?;
    for eps in [0.1, 0.5, 0.9] {
        let d = DispersionPair::new(eps, sys.upsilon0)?;
        let closed = tunneling_time_closed(&d, sys.width)?;
        let phase = |e: f64| DispersionPair::new(e, 1.0).and_then(|d| phase_delta(&d, 4)).unwrap_or(f64::NAN);
        let numeric = phase_time_in(phase, eps, 0.0, sys.ceiling());
        println!("epsilon {eps}: closed {closed:.12}, numeric {:.12} (+/- {:.1e})", numeric.tau, numeric.error);
    }

    let stack = BarrierSystem::new(1.063, 2, 2, 3)?;
    let grid = EnergyGrid::fractions(12).scaled(stack.ceiling());
    for (eps, t) in grid.iter().zip(tunneling_time_n(&stack, &grid)) {
        println!("three barriers, epsilon {eps:.4}: tau = {:.6}", t?.tau);
    }
    Ok(())
}
