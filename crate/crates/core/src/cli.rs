//! Command-line front end: unit conversion, energy sweeps, figure data and
//! the verification suite.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constants::Constants;
use crate::dispersion::BAND_EDGE;
use crate::error::{Error, Result};
use crate::grid::EnergyGrid;
use crate::multi::SiteCounting;
use crate::oracle::EndpointConvention;
use crate::output::{Cell, Format, Table};
use crate::scenario::PhysicalScenario;
use crate::sweep::{curves, CurveRow, CurveSpec};
use crate::verify::{run_suite, VerificationReport, VerifyOptions};

const TOOL: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Parser)]
#[command(name = "polytun", version, about = "Tunneling through rectangular barriers on a fundamental lattice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transmission, phase and time of lattice and continuum theories over E/U0.
    Sweep(SweepArgs),
    /// Data behind one of the four reference figures.
    Figure(FigureArgs),
    /// Cross-check every closed form against the direct lattice solver.
    Verify(VerifyArgs),
    /// Convert an energy in eV to the dimensionless lattice variables.
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    /// Barrier height in eV.
    #[arg(long, default_value_t = 10.0)]
    pub u0_ev: f64,
    /// Barrier width L in meters.
    #[arg(long, default_value_t = 1.8e-10)]
    pub width_m: f64,
    /// Particle mass in kg; the electron mass when omitted.
    #[arg(long)]
    pub mass_kg: Option<f64>,
    /// Lattice sites across the barrier width (L = n·λ).
    #[arg(long, default_value_t = 100)]
    pub n: u32,
    /// Constants file (TOML or JSON) with any of hbar_js, electron_mass_kg, ev_joule.
    #[arg(long, value_name = "PATH")]
    pub constants: Option<PathBuf>,
}

impl ScenarioArgs {
    pub fn scenario(&self) -> Result<PhysicalScenario> {
        let constants = match &self.constants {
            Some(p) => Constants::from_path(p)?,
            None => Constants::default(),
        };
        let mass = self.mass_kg.unwrap_or(constants.electron_mass_kg);
        PhysicalScenario::new(mass, self.u0_ev, self.width_m, self.n, constants)
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Report times in seconds (units of mλ²/ħ otherwise).
    #[arg(long)]
    pub seconds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Transmission,
    Phase,
    Time,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Gap between barriers in lattice sites; the barrier width n when omitted.
    #[arg(long)]
    pub gap_sites: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub barriers: u32,
    /// Lowest E/U0.
    #[arg(long, default_value_t = 0.01)]
    pub emin: f64,
    /// Highest E/U0; lattice curves are clipped below the band edge.
    #[arg(long, default_value_t = 0.99)]
    pub emax: f64,
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
    /// Quantities to report.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Quantity::Transmission, Quantity::Phase, Quantity::Time])]
    pub outputs: Vec<Quantity>,
    /// Omit the continuum columns.
    #[arg(long)]
    pub no_baseline: bool,
    /// Add the dimensionless lattice energy as a column.
    #[arg(long)]
    pub epsilon: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigurePreset {
    /// Transmission through one barrier.
    Fig1,
    /// Tunneling time of one barrier.
    Fig2,
    /// Transmission through three barriers spaced by the barrier width.
    Fig3,
    /// Tunneling time of three barriers spaced by the barrier width.
    Fig4,
}

impl FigurePreset {
    pub const WIDTHS: [u32; 2] = [100, 2];

    pub fn barriers(self) -> u32 {
        match self {
            FigurePreset::Fig1 | FigurePreset::Fig2 => 1,
            FigurePreset::Fig3 | FigurePreset::Fig4 => 3,
        }
    }

    pub fn quantity(self) -> Quantity {
        match self {
            FigurePreset::Fig1 | FigurePreset::Fig3 => Quantity::Transmission,
            FigurePreset::Fig2 | FigurePreset::Fig4 => Quantity::Time,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub preset: FigurePreset,
    #[arg(long, default_value_t = 0.01)]
    pub emin: f64,
    #[arg(long, default_value_t = 0.999)]
    pub emax: f64,
    #[arg(long, default_value_t = 500)]
    pub steps: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Reduced energy grids.
    #[arg(long)]
    pub quick: bool,
    /// Put the full barrier height on barrier edge sites (negative control).
    #[arg(long, hide = true)]
    pub corrupt_endpoints: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ConvertArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Particle energy in eV.
    #[arg(long)]
    pub energy_ev: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

fn scenario_meta(table: &mut Table, s: &PhysicalScenario) {
    table
        .meta("tool", TOOL)
        .meta("mass_kg", s.mass_kg)
        .meta("u0_ev", s.u0_ev)
        .meta("width_m", s.width_m)
        .meta("n", s.n)
        .meta("alpha", s.alpha())
        .meta("upsilon0", s.upsilon0())
        .meta("epsilon_hat_max", s.epsilon_max_ratio())
        .meta("lattice_spacing_m", s.lattice_spacing_m())
        .meta("time_unit_s", s.time_unit_s())
        .meta("hbar_js", s.constants.hbar_js)
        .meta("electron_mass_kg", s.constants.electron_mass_kg)
        .meta("ev_joule", s.constants.ev_joule);
}

/// Energy grid from `emin` to `emax`, with `emax` lowered to the lattice
/// ceiling when it lies above. Returns the grid and the clip point if one
/// was applied.
fn ratio_grid(spec: &CurveSpec, emin: f64, emax: f64, steps: usize) -> Result<(Vec<f64>, Option<f64>)> {
    let limit = spec.polymer_limit();
    let usage = |why: &str| {
        Error::InvalidParameter(format!(
            "{why}; valid E/U0 range for this scenario is (0, {limit}) (lattice ceiling min(upsilon0, 2)/upsilon0 with relative margin 1e-6)"
        ))
    };
    if steps == 0 {
        return Err(usage("--steps must be at least 1"));
    }
    if !(emin > 0.0 && emin < emax) {
        return Err(usage(&format!("need 0 < emin < emax, got emin = {emin}, emax = {emax}")));
    }
    let (hi, clipped) = if emax > limit {
        log::warn!("emax = {emax} lies above the lattice ceiling; lattice curves clipped at E/U0 = {limit}");
        (limit, Some(limit))
    } else {
        (emax, None)
    };
    if emin >= hi {
        return Err(usage(&format!("emin = {emin} is not below the clipped maximum {hi}")));
    }
    let grid = EnergyGrid::linspace(emin, hi, steps, f64::INFINITY)?;
    Ok((grid.points().to_vec(), clipped))
}

fn band_edge_marker(spec: &CurveSpec, at: f64) -> String {
    format!(
        "band_edge: n={} lattice curve clipped at epsilon_hat={at:.16e} (ceiling min(upsilon0,{BAND_EDGE})/upsilon0)",
        spec.scenario.n
    )
}

type Column = fn(&CurveRow) -> f64;

pub fn cmd_sweep(args: &SweepArgs) -> Result<Table> {
    let s = args.scenario.scenario()?;
    let gap = args.gap_sites.unwrap_or(s.n);
    let spec = CurveSpec::new(s, gap, args.barriers)?;
    let (ratios, clipped) = ratio_grid(&spec, args.emin, args.emax, args.steps)?;
    let rows = curves(&spec, &ratios);
    let time_scale = if args.output.seconds { s.time_unit_s() } else { 1.0 };

    let mut columns = vec!["epsilon_hat"];
    if args.epsilon {
        columns.push("epsilon");
    }
    let pick: Vec<(&str, Column, bool)> = [
        (Quantity::Transmission, "T_poly", (|r: &CurveRow| r.t_poly) as Column, false, false),
        (Quantity::Transmission, "T_qm", |r| r.t_qm, true, false),
        (Quantity::Phase, "delta_poly", |r| r.delta_poly, false, false),
        (Quantity::Phase, "delta_qm", |r| r.delta_qm, true, false),
        (Quantity::Time, "tau_poly", |r| r.tau_poly, false, true),
        (Quantity::Time, "tau_qm", |r| r.tau_qm, true, true),
    ]
    .into_iter()
    .filter(|(q, _, _, is_qm, _)| args.outputs.contains(q) && !(*is_qm && args.no_baseline))
    .map(|(_, name, f, _, is_time)| (name, f, is_time))
    .collect();
    columns.extend(pick.iter().map(|(n, _, _)| *n));

    let mut table = Table::new(&columns);
    table.meta("command", "sweep");
    scenario_meta(&mut table, &s);
    table
        .meta("gap_sites", gap)
        .meta("barriers", args.barriers)
        .meta("site_counting", SiteCounting::default().label())
        .meta("time_units", if args.output.seconds { "s" } else { "m*lambda^2/hbar" });
    for r in &rows {
        let mut cells: Vec<Cell> = vec![r.epsilon_hat.into()];
        if args.epsilon {
            cells.push(r.epsilon.into());
        }
        cells.extend(pick.iter().map(|(_, f, is_time)| Cell::Num(f(r) * if *is_time { time_scale } else { 1.0 })));
        table.push(cells);
    }
    if let Some(at) = clipped {
        table.marker(band_edge_marker(&spec, at));
    }
    Ok(table)
}

pub fn cmd_figure(args: &FigureArgs) -> Result<Table> {
    let preset = args.preset;
    let quantity = preset.quantity();
    let mut table = Table::new(&["curve", "n", "epsilon_hat", if quantity == Quantity::Time { "tau" } else { "T" }]);
    let reference = PhysicalScenario::reference_electron(FigurePreset::WIDTHS[0])?;
    table
        .meta("command", "figure")
        .meta("preset", format!("{preset:?}").to_lowercase().as_str())
        .meta("tool", TOOL)
        .meta("mass_kg", reference.mass_kg)
        .meta("u0_ev", reference.u0_ev)
        .meta("width_m", reference.width_m)
        .meta("alpha", reference.alpha())
        .meta("barriers", preset.barriers())
        .meta("gap", "equal to the barrier width (l = L)")
        .meta("hbar_js", reference.constants.hbar_js)
        .meta("electron_mass_kg", reference.constants.electron_mass_kg)
        .meta("ev_joule", reference.constants.ev_joule)
        .meta("site_counting", SiteCounting::default().label())
        .meta(
            "time_units",
            if args.output.seconds { "s" } else { "m*lambda^2/hbar of the lattice in column n" },
        );

    let mut emitted_qm_transmission = false;
    for n in FigurePreset::WIDTHS {
        let s = reference.with_n(n)?;
        let spec = CurveSpec::new(s, n, preset.barriers())?;
        // the continuum curves extend past the lattice ceiling
        let qm_hi = args.emax.min(1.0 - 1e-9);
        let qm_ratios = EnergyGrid::linspace(args.emin, qm_hi, args.steps, f64::INFINITY)?;
        let (ratios, clipped) = ratio_grid(&spec, args.emin, args.emax, args.steps)?;
        let scale = if args.output.seconds { s.time_unit_s() } else { 1.0 };
        for r in curves(&spec, &ratios) {
            let v = if quantity == Quantity::Time { r.tau_poly * scale } else { r.t_poly };
            table.push(vec!["polymer".into(), n.into(), r.epsilon_hat.into(), v.into()]);
        }
        if let Some(at) = clipped {
            table.marker(band_edge_marker(&spec, at));
        }
        if quantity == Quantity::Time || !emitted_qm_transmission {
            for r in curves(&spec, qm_ratios.points()) {
                let v = if quantity == Quantity::Time { r.tau_qm * scale } else { r.t_qm };
                let tag = if quantity == Quantity::Time { n } else { 0 };
                table.push(vec!["qm".into(), tag.into(), r.epsilon_hat.into(), v.into()]);
            }
            emitted_qm_transmission = true;
        }
    }
    Ok(table)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(VerificationReport, f64)> {
    let options = VerifyOptions {
        endpoint: if args.corrupt_endpoints { EndpointConvention::FullHeight } else { EndpointConvention::HalfHeight },
        ..Default::default()
    };
    let start = Instant::now();
    let report = run_suite(args.quick, options);
    Ok((report, start.elapsed().as_secs_f64()))
}

fn report_table(report: &VerificationReport) -> Table {
    let mut t = Table::new(&["check", "scenario", "worst_epsilon", "deviation", "tolerance", "pass"]);
    t.meta("tool", TOOL).meta("command", "verify");
    for r in &report.records {
        t.push(vec![
            r.check.as_str().into(),
            r.scenario.as_str().into(),
            r.worst_epsilon.unwrap_or(f64::NAN).into(),
            r.deviation.into(),
            r.tolerance.into(),
            if r.pass { "true" } else { "false" }.into(),
        ]);
        if let Some(note) = &r.note {
            t.marker(format!("{}: {note}", r.check));
        }
    }
    t
}

pub fn cmd_convert(args: &ConvertArgs) -> Result<Table> {
    let s = args.scenario.scenario()?;
    if !(args.energy_ev > 0.0 && args.energy_ev.is_finite()) {
        return Err(Error::InvalidParameter(format!("energy must be positive, got {} eV", args.energy_ev)));
    }
    let epsilon = s.epsilon_of_energy(args.energy_ev);
    if epsilon >= BAND_EDGE {
        log::warn!("epsilon = {epsilon} lies at or above the lattice band edge {BAND_EDGE}; no propagating state exists");
    }
    let mut t = Table::new(&["quantity", "value"]);
    t.meta("command", "convert");
    scenario_meta(&mut t, &s);
    t.meta("energy_ev", args.energy_ev);
    for (name, v) in [
        ("epsilon", epsilon),
        ("epsilon_hat", args.energy_ev / s.u0_ev),
        ("upsilon0", s.upsilon0()),
        ("alpha", s.alpha()),
        ("epsilon_hat_max", s.epsilon_max_ratio()),
        ("lattice_spacing_m", s.lattice_spacing_m()),
        ("time_unit_s", s.time_unit_s()),
    ] {
        t.push(vec![name.into(), v.into()]);
    }
    if epsilon >= BAND_EDGE {
        t.marker(format!("band_edge: epsilon={epsilon:.16e} is not below {BAND_EDGE}"));
    }
    Ok(t)
}

/// Runs one command. Returns the process exit status: 0 on success, 1
/// when verification fails.
pub fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Sweep(a) => {
            let t = cmd_sweep(a)?;
            t.write(a.output.format, &mut *open_output(&a.output.out)?)?;
            Ok(0)
        }
        Command::Figure(a) => {
            let t = cmd_figure(a)?;
            t.write(a.output.format, &mut *open_output(&a.output.out)?)?;
            Ok(0)
        }
        Command::Verify(a) => {
            let (report, elapsed) = cmd_verify(a)?;
            let mut out = open_output(&a.out)?;
            match a.format {
                Format::Json => writeln!(out, "{}", report.to_json())?,
                Format::Csv => report_table(&report).write_csv(&mut *out)?,
            }
            out.flush()?;
            let failed = report.failures().count();
            eprintln!("verify: {} checks, {failed} failed, {elapsed:.3} s", report.records.len());
            for f in report.failures() {
                eprintln!(
                    "FAIL {} [{}] deviation {:.3e} > {:.1e} at epsilon {:?}",
                    f.check, f.scenario, f.deviation, f.tolerance, f.worst_epsilon
                );
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Convert(a) => {
            let t = cmd_convert(a)?;
            t.write(a.format, &mut *open_output(&a.out)?)?;
            Ok(0)
        }
    }
}
