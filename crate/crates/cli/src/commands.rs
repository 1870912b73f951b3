use serde::Serialize;
use serde_json::json;

use shannon_core::discrete::axioms::{run_axiom_suite, AxiomConfig};
use shannon_core::discrete::{shannon_entropy, total_entropy};
use shannon_core::distributions::{BinnedJson, DensityJson, DistributionJson};
use shannon_core::functional_eq::{fit_log_affine, PhiPrimeSamples};
use shannon_core::quantize::{
    convergence_sweep, differential_entropy, halving_widths, quantize_density,
};
use shannon_core::statmech::{
    boltzmann_entropy, classical_entropy_comparison, compare_from_log_omega,
    log_phase_shell_volume, maxent_shell_check, modified_differential_entropy, sackur_tetrode,
    DiscretizedShellDensity, ShellSpec,
};
use shannon_core::{BinnedVariable, DensitySpec, DiscreteDistribution, EntropyUnit};

use crate::args::{
    AxiomArgs, Cli, Command, CompareArgs, MaxentArgs, ShellArgs, StatmechCommand, UnitArg,
};
use crate::error::CliError;
use crate::input;
use crate::output::{Output, Table};

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let unit = match (cli.k, cli.unit) {
        (Some(k), _) => EntropyUnit::scaled(k)?,
        (None, UnitArg::Nats) => EntropyUnit::Nats,
        (None, UnitArg::Bits) => EntropyUnit::Bits,
    };
    match &cli.command {
        Command::Discrete {
            probs,
            renormalize,
            tolerance,
        } => {
            let raw = input::json::<DistributionJson>(probs, "probs")?.into_probs();
            let p = if *renormalize {
                DiscreteDistribution::renormalized(raw, *tolerance)?
            } else {
                DiscreteDistribution::with_tolerance(raw, *tolerance)?
            };
            Output::json(shannon_entropy(&p, unit)?)
        }
        Command::Total { binned, tolerance } => {
            let v = binned_variable(binned, *tolerance)?;
            Output::json(total_entropy(&v, unit)?)
        }
        Command::Differential { density } => {
            Output::json(differential_entropy(&density_spec(density)?, unit)?)
        }
        Command::Modified { density, h } => Output::json(modified_differential_entropy(
            &density_spec(density)?,
            *h,
            unit,
        )?),
        Command::Quantize { density, h } => quantize(&density_spec(density)?, *h),
        Command::Converge {
            density,
            h_start,
            halvings,
        } => {
            let rows = convergence_sweep(
                &density_spec(density)?,
                &halving_widths(*h_start, *halvings),
                unit,
            )?;
            let table = Table {
                header: vec!["h", "total_entropy", "differential_entropy", "abs_error"],
                rows: rows
                    .iter()
                    .map(|r| vec![r.h, r.total_entropy, r.differential_entropy, r.abs_error])
                    .collect(),
            };
            Ok(Output::json(json!({ "unit": unit.name(), "rows": rows }))?.with_table(table))
        }
        Command::Axioms(args) => Output::json(run_axiom_suite(axiom_config(args, cli.seed), unit)?),
        Command::FitPhi { input } => {
            let fit = fit_log_affine(&PhiPrimeSamples::new(input::samples(input)?)?)?;
            Output::json(json!({
                "A": fit.a,
                "B": fit.b,
                "residual": fit.residual,
                "admissible": fit.admissible(),
            }))
        }
        Command::Statmech(StatmechCommand::IdealGas(args)) => ideal_gas(args, unit),
        Command::Statmech(StatmechCommand::Compare(args)) => compare(args, unit),
        Command::Statmech(StatmechCommand::Maxent(args)) => maxent(args, unit, cli.seed),
    }
}

fn density_spec(arg: &str) -> Result<DensitySpec, CliError> {
    Ok(DensitySpec::try_from(input::json::<DensityJson>(
        arg, "density",
    )?)?)
}

fn binned_variable(arg: &str, tolerance: f64) -> Result<BinnedVariable, CliError> {
    let j: BinnedJson = input::json(arg, "binned")?;
    let dist = DiscreteDistribution::with_tolerance(j.probs, tolerance)?;
    Ok(BinnedVariable::new(j.values, dist, j.widths)?)
}

#[derive(Serialize)]
struct QuantizeJson<'a> {
    values: &'a [f64],
    probs: &'a [f64],
    widths: &'a [f64],
    h: f64,
    captured_mass: f64,
    mass_deficit: f64,
}

fn quantize(f: &DensitySpec, h: f64) -> Result<Output, CliError> {
    let q = quantize_density(f, h)?;
    let b = &q.binned;
    let table = Table {
        header: vec!["x", "p", "width"],
        rows: (0..b.len())
            .map(|i| vec![b.values()[i], b.probs()[i], b.widths()[i]])
            .collect(),
    };
    let out = Output::json(QuantizeJson {
        values: b.values(),
        probs: b.probs(),
        widths: b.widths(),
        h: q.h,
        captured_mass: q.captured_mass,
        mass_deficit: q.mass_deficit,
    })?;
    Ok(out.with_table(table))
}

fn axiom_config(args: &AxiomArgs, seed: u64) -> AxiomConfig {
    let d = AxiomConfig::default();
    AxiomConfig {
        seed,
        distributions: args.distributions.unwrap_or(d.distributions),
        max_n: args.max_n.unwrap_or(d.max_n),
        product_pairs: args.product_pairs.unwrap_or(d.product_pairs),
        concavity_trials: args.concavity_trials.unwrap_or(d.concavity_trials),
        schur_pairs: args.schur_pairs.unwrap_or(d.schur_pairs),
        schur_transfers: args.schur_transfers.unwrap_or(d.schur_transfers),
    }
}

fn warn_if_thick(spec: &ShellSpec) {
    if spec.is_thick() {
        eprintln!(
            "warning: shell is thick (dE/E = {}); the microcanonical shell assumes dE << E",
            spec.shell_width / spec.energy
        );
    }
}

fn ideal_gas(args: &ShellArgs, unit: EntropyUnit) -> Result<Output, CliError> {
    let spec = ShellSpec {
        energy: args.energy,
        shell_width: args.shell_width,
        volume: args.volume,
        particles: args.particles,
        mass: args.mass,
        planck_h: args.planck_h,
        indistinguishable: args.indistinguishable,
    };
    spec.validate()?;
    warn_if_thick(&spec);
    let ln_omega = log_phase_shell_volume(&spec)?;
    let s = boltzmann_entropy(&spec, unit)?.value;
    let st = sackur_tetrode(&spec, unit)?.value;
    Output::json(json!({
        "lnOmega": ln_omega,
        "S": s,
        "S_sackur_tetrode": st,
        "rel_diff": (s - st) / st,
        "unit": unit.name(),
    }))
}

fn compare(args: &CompareArgs, unit: EntropyUnit) -> Result<Output, CliError> {
    let report = match (args.ln_omega, args.energy, args.shell_width, args.volume) {
        (Some(ln_omega), None, None, None) => {
            compare_from_log_omega(ln_omega, args.particles, args.planck_h, unit)?
        }
        (None, Some(energy), Some(shell_width), Some(volume)) => {
            let spec = ShellSpec {
                energy,
                shell_width,
                volume,
                particles: args.particles,
                mass: args.mass,
                planck_h: args.planck_h,
                indistinguishable: false,
            };
            spec.validate()?;
            warn_if_thick(&spec);
            classical_entropy_comparison(&spec, unit)?
        }
        _ => {
            return Err(CliError::Usage(
                "statmech compare needs either --ln-omega or all of --E, --dE and --V".into(),
            ))
        }
    };
    Output::json(report)
}

fn maxent(args: &MaxentArgs, unit: EntropyUnit, seed: u64) -> Result<Output, CliError> {
    let volumes: Vec<f64> = match (&args.cells, &args.cell_volumes) {
        (Some(m), None) => vec![1.0 / *m as f64; *m],
        (None, Some(arg)) => input::json(arg, "cell volumes")?,
        _ => {
            return Err(CliError::Usage(
                "statmech maxent needs --cells or --cell-volumes".into(),
            ))
        }
    };
    let d = match &args.densities {
        Some(arg) => DiscretizedShellDensity::new(volumes, input::json(arg, "densities")?)?,
        None => DiscretizedShellDensity::uniform(volumes)?,
    };
    Output::json(maxent_shell_check(
        &d,
        args.cell_constant,
        unit,
        args.trials,
        seed,
    )?)
}
