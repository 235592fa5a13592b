//! Direct lattice solution for an arbitrary profile, compared with the
//! closed form for a rectangular barrier.

use polymer_tunneling::single::transmission_coefficient;
use polymer_tunneling::{build_profile, solve_scattering, BarrierSystem, DispersionPair, PotentialProfile};

fn main() -> polymer_tunneling::Result<()> {
    let sys = BarrierSystem::single(2.0, 1)?;
    let sol = solve_scattering(&build_profile(&sys), 1.0)?;
    println!("hand value: T = {:.15}, R = {:.15}, residual {:.1e}", sol.transmission(), sol.reflection(), sol.residual);

    let sys = BarrierSystem::single(0.8, 12)?;
    let profile = build_profile(&sys);
    for eps in [0.1, 0.4, 0.7] {
        let sol = solve_scattering(&profile, eps)?;
        let closed = transmission_coefficient(&DispersionPair::new(eps, sys.upsilon0)?, sys.width)?;
        println!("epsilon {eps}: solver {:.12e}, closed form {closed:.12e}", sol.transmission());
    }

    // a ramp the closed forms do not cover
    let ramp = PotentialProfile::new((0..30).map(|i| 0.02 * f64::from(i)).collect())?;
    for eps in [0.2, 1.0, 1.8] {
        let sol = solve_scattering(&ramp, eps)?;
        println!("ramp, epsilon {eps}: T = {:.6}, |R|^2 + |T|^2 - 1 = {:.1e}", sol.transmission(), sol.unitarity_defect());
    }
    Ok(())
}
