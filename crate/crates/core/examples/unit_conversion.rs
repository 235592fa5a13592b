//! SI inputs to lattice variables for an electron on a 10 eV, 1.8 Å barrier.

use polymer_tunneling::PhysicalScenario;

fn main() -> polymer_tunneling::Result<()> {
    for n in [2, 100] {
        let s = PhysicalScenario::reference_electron(n)?;
        let (eps, u0) = s.to_dimensionless(3.0)?;
        println!(
            "n = {n:>3}: alpha = {:.6}, upsilon0 = {u0:.6e}, epsilon(3 eV) = {:.6e}, E/U0 max = {:.4}, lambda = {:.3e} m, time unit = {:.4e} s",
            s.alpha(),
            eps.value(),
            s.epsilon_max_ratio(),
            s.lattice_spacing_m(),
            s.time_unit_s()
        );
    }
    Ok(())
}
