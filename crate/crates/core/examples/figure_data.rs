//! Lattice and continuum curves for three barriers spaced by their width,
//! written as CSV to standard output.

use polymer_tunneling::output::{Format, Table};
use polymer_tunneling::sweep::{curves, CurveSpec};
use polymer_tunneling::PhysicalScenario;

fn main() -> polymer_tunneling::Result<()> {
    let s = PhysicalScenario::reference_electron(100)?;
    let spec = CurveSpec::new(s, 100, 3)?;
    let ratios: Vec<f64> = (1..=50).map(|i| f64::from(i) / 51.0).collect();
    let mut table = Table::new(&["epsilon_hat", "T_poly", "T_qm", "tau_poly", "tau_qm"]);
    table.meta("alpha", s.alpha()).meta("barriers", 3u32);
    for r in curves(&spec, &ratios) {
        table.push(vec![r.epsilon_hat.into(), r.t_poly.into(), r.t_qm.into(), r.tau_poly.into(), r.tau_qm.into()]);
    }
    table.write(Format::Csv, &mut std::io::stdout().lock())
}
