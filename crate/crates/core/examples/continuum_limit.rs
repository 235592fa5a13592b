//! Lattice transmission approaching the continuum result as the lattice is
//! refined (`|difference| ∝ n⁻²`).

use polymer_tunneling::baseline::qm_transmission;
use polymer_tunneling::single::transmission_coefficient;
use polymer_tunneling::{DispersionPair, PhysicalScenario};

fn main() -> polymer_tunneling::Result<()> {
    let ratio = 0.3;
    let mut previous: Option<f64> = None;
    for n in [25, 50, 100, 200, 400] {
        let s = PhysicalScenario::reference_electron(n)?;
        let d = DispersionPair::new(s.epsilon_of_ratio(ratio), s.upsilon0())?;
        let gap = transmission_coefficient(&d, n)? - qm_transmission(&s, ratio)?;
        let order = previous.map_or(String::new(), |p| format!("  local order {:.3}", (p / gap).abs().log2()));
        println!("n = {n:>3}: T_poly - T_qm = {gap:+.6e}{order}");
        previous = Some(gap);
    }
    Ok(())
}
