use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use graystate::angles::AmplitudeList;
use graystate::circuit::{AssembleOptions, Circuit};
use graystate::compositions::{dimension, verify_gray_property, CompositionSpec, Ditstring, Generator, GrayCode};
use graystate::limits::{Limits, MAX_DIM_ENV};
use graystate::operators::{aklt_hamiltonian, eigenstate_residual, total_s2, total_sz, xxx_hamiltonian, Operator};
use graystate::pipeline::{gray_code, prepare, PrepareOptions};
use graystate::simulator::{fidelity, run_with, StateVector};
use graystate::states::{aklt_amplitudes, bethe_amplitudes_with, dicke_amplitudes, BetheRoots, GenericAmplitudes};
use serde::Serialize;

mod report;

use report::{Check, PrepareReport, VerifyReport};

#[derive(Parser)]
#[command(name = "graystate", version, about = "Gray-code state preparation for qudit registers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the sector dimension.
    Dim(SpecArgs),
    /// Write a Gray code for a sector.
    Graycode(GraycodeArgs),
    /// Build and simulate a preparation circuit.
    Prepare(PrepareArgs),
    /// Check a prepared state against its reference Hamiltonian.
    Verify(VerifyArgs),
}

#[derive(Args, Clone, Debug)]
struct SpecArgs {
    /// Number of qudits.
    #[arg(short = 'n', long)]
    n: Option<usize>,
    /// Digit sum.
    #[arg(short = 'k', long)]
    k: Option<usize>,
    /// Twice the spin, so each qudit has `two_s + 1` levels.
    #[arg(long = "two-s", alias = "s-times-2")]
    two_s: Option<usize>,
}

impl SpecArgs {
    fn require(&self) -> anyhow::Result<CompositionSpec> {
        match (self.n, self.k, self.two_s) {
            (Some(n), Some(k), Some(two_s)) => Ok(CompositionSpec::new(n, k, two_s)?),
            _ => Err(graystate::Error::InvalidSpec("-n, -k and --two-s are all required".into()).into()),
        }
    }
}

#[derive(Args, Clone, Debug)]
struct CodeArgs {
    #[arg(long = "gen", value_enum, default_value_t = GenArg::Walsh)]
    generator: GenArg,
    /// First ditstring for the Warnsdorff search, written `m_n … m_1`.
    #[arg(long)]
    start: Option<String>,
    /// Cap on the sector dimension.
    #[arg(long, env = MAX_DIM_ENV)]
    max_dim: Option<u128>,
}

impl CodeArgs {
    fn limits(&self) -> Limits {
        let mut limits = Limits::default();
        if let Some(cap) = self.max_dim {
            limits.max_dim = cap;
        }
        limits
    }

    fn code(&self, spec: &CompositionSpec, limits: &Limits) -> anyhow::Result<GrayCode> {
        let start = self.start.as_deref().map(Ditstring::parse_display).transpose()?;
        Ok(gray_code(spec, self.generator.into(), start.as_ref(), limits)?)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenArg {
    Walsh,
    Warnsdorff,
}

impl From<GenArg> for Generator {
    fn from(g: GenArg) -> Self {
        match g {
            GenArg::Walsh => Generator::Walsh,
            GenArg::Warnsdorff => Generator::Warnsdorff,
        }
    }
}

#[derive(Args)]
struct GraycodeArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[command(flatten)]
    code: CodeArgs,
    /// Re-check the Gray property before writing.
    #[arg(long)]
    verify: bool,
    /// Write the JSON form instead of text.
    #[arg(long)]
    json: bool,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Provider {
    Generic,
    Aklt,
    Dicke,
    Bethe,
}

#[derive(Args, Clone, Debug)]
struct TargetArgs {
    #[arg(long, value_enum)]
    provider: Provider,
    #[command(flatten)]
    spec: SpecArgs,
    #[command(flatten)]
    code: CodeArgs,
    /// Amplitude file for the generic provider.
    #[arg(long)]
    amps: Option<PathBuf>,
    /// Bethe roots file.
    #[arg(long)]
    roots: Option<PathBuf>,
    /// Normalize generic amplitudes instead of rejecting unnormalized input.
    #[arg(long)]
    auto_normalize: bool,
    /// Drop Gray gates with zero angles.
    #[arg(long)]
    elide_identity: bool,
}

#[derive(Args)]
struct PrepareArgs {
    #[command(flatten)]
    target: TargetArgs,
    /// Circuit JSON output.
    #[arg(long)]
    circuit: Option<PathBuf>,
    /// State dump output.
    #[arg(long)]
    state: Option<PathBuf>,
    /// Report output.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Smallest amplitude modulus kept in the state dump.
    #[arg(long, default_value_t = 1e-12)]
    amp_threshold: f64,
    /// Write the state dump and report as CSV.
    #[arg(long)]
    csv: bool,
    /// Largest accepted `1 - fidelity`.
    #[arg(long, default_value_t = 1e-10)]
    fidelity_tol: f64,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    target: TargetArgs,
    /// Simulate this circuit instead of building one.
    #[arg(long)]
    circuit: Option<PathBuf>,
    /// Report output.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print the checks as CSV.
    #[arg(long)]
    csv: bool,
    #[arg(long, default_value_t = 1e-10)]
    fidelity_tol: f64,
    /// Eigenstate residual tolerance; 1e-6 for Bethe states, 1e-9 otherwise.
    #[arg(long)]
    residual_tol: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    sz_tol: f64,
    /// Tolerance on the Bethe equations.
    #[arg(long, default_value_t = 1e-9)]
    bethe_tol: f64,
}

/// A failed self-check, as opposed to bad input.
#[derive(Debug)]
struct VerificationFailed(String);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<VerificationFailed>().is_some() {
        return 4;
    }
    match err.downcast_ref::<graystate::Error>() {
        Some(graystate::Error::SearchFailure(_)) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Dim(args) => cmd_dim(&args),
        Command::Graycode(args) => cmd_graycode(&args),
        Command::Prepare(args) => cmd_prepare(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn cmd_dim(args: &SpecArgs) -> anyhow::Result<()> {
    println!("{}", dimension(&args.require()?));
    Ok(())
}

fn cmd_graycode(args: &GraycodeArgs) -> anyhow::Result<()> {
    let spec = args.spec.require()?;
    let code = args.code.code(&spec, &args.code.limits())?;
    if args.verify {
        verify_gray_property(&code).map_err(|v| VerificationFailed(v.to_string()))?;
        if code.len() as u128 != dimension(&spec) {
            return Err(VerificationFailed(format!("{} entries, sector has {}", code.len(), dimension(&spec))).into());
        }
    }
    let text = if args.json { code.to_json() + "\n" } else { code.to_text() };
    write_or_print(args.output.as_deref(), &text)
}

/// The requested target state, resolved and checked against the flags.
enum Target {
    Generic(GenericAmplitudes),
    Aklt,
    Dicke,
    Bethe(BetheRoots),
}

struct Resolved {
    spec: CompositionSpec,
    target: Target,
}

fn mismatch(flag: &str, given: usize, want: usize, why: &str) -> anyhow::Error {
    graystate::Error::InvalidSpec(format!("{flag} {given} contradicts {why} ({want})")).into()
}

fn resolve(args: &TargetArgs) -> anyhow::Result<Resolved> {
    let invalid = |msg: &str| -> anyhow::Error { graystate::Error::InvalidSpec(msg.into()).into() };
    if args.amps.is_some() && args.provider != Provider::Generic {
        return Err(invalid("--amps only applies to the generic provider"));
    }
    if args.roots.is_some() && args.provider != Provider::Bethe {
        return Err(invalid("--roots only applies to the bethe provider"));
    }
    if args.auto_normalize && args.provider != Provider::Generic {
        return Err(invalid("--auto-normalize only applies to the generic provider"));
    }
    let spec_args = &args.spec;
    match args.provider {
        Provider::Generic => {
            let path = args.amps.as_deref().ok_or_else(|| invalid("the generic provider needs --amps"))?;
            let amps = GenericAmplitudes::from_json(&read(path)?)?;
            Ok(Resolved { spec: spec_args.require()?, target: Target::Generic(amps) })
        }
        Provider::Aklt => {
            let n = spec_args.n.ok_or_else(|| invalid("the aklt provider needs -n"))?;
            if let Some(two_s) = spec_args.two_s.filter(|&t| t != 2) {
                return Err(mismatch("--two-s", two_s, 2, "the spin-1 AKLT chain"));
            }
            if let Some(k) = spec_args.k.filter(|&k| k != n) {
                return Err(mismatch("-k", k, n, "the zero-magnetization sector"));
            }
            Ok(Resolved { spec: CompositionSpec::new(n, n, 2)?, target: Target::Aklt })
        }
        Provider::Dicke => Ok(Resolved { spec: spec_args.require()?, target: Target::Dicke }),
        Provider::Bethe => {
            let path = args.roots.as_deref().ok_or_else(|| invalid("the bethe provider needs --roots"))?;
            let roots = BetheRoots::from_json(&read(path)?)?;
            let from_file = [
                ("-n", spec_args.n, roots.n),
                ("-k", spec_args.k, roots.k()),
                ("--two-s", spec_args.two_s, roots.two_s),
            ];
            for (flag, given, want) in from_file {
                if let Some(given) = given.filter(|&g| g != want) {
                    return Err(mismatch(flag, given, want, "the roots file"));
                }
            }
            Ok(Resolved { spec: CompositionSpec::new(roots.n, roots.k(), roots.two_s)?, target: Target::Bethe(roots) })
        }
    }
}

impl Resolved {
    fn amplitudes(&self, code: &GrayCode, auto_normalize: bool, limits: &Limits) -> anyhow::Result<AmplitudeList> {
        let list = match &self.target {
            Target::Generic(g) => {
                let raw = g.along(code)?;
                if auto_normalize {
                    raw.normalized()?
                } else {
                    raw
                }
            }
            Target::Aklt => aklt_amplitudes(code)?,
            Target::Dicke => dicke_amplitudes(code)?,
            Target::Bethe(roots) => bethe_amplitudes_with(code, roots, limits)?,
        };
        Ok(list)
    }

    /// Reference Hamiltonian and eigenvalue, when the target has one.
    fn reference(&self) -> anyhow::Result<Option<(Operator, f64)>> {
        let (n, two_s) = (self.spec.n(), self.spec.two_s());
        Ok(match &self.target {
            Target::Generic(_) => None,
            Target::Aklt => Some((aklt_hamiltonian(n)?, 0.0)),
            Target::Dicke => {
                // -S² with E = -sn(sn+1) has the same residual as S² with +sn(sn+1)
                let sn = two_s as f64 * n as f64 / 2.0;
                Some((total_s2(n, two_s)?, sn * (sn + 1.0)))
            }
            Target::Bethe(roots) => Some((xxx_hamiltonian(n, two_s)?, roots.energy()?)),
        })
    }
}

fn cmd_prepare(args: &PrepareArgs) -> anyhow::Result<()> {
    let clock = Instant::now();
    let t = &args.target;
    let resolved = resolve(t)?;
    let limits = t.code.limits();
    let code = t.code.code(&resolved.spec, &limits)?;
    let amps = resolved.amplitudes(&code, t.auto_normalize, &limits)?;
    let options =
        PrepareOptions { assemble: AssembleOptions { elide_identity: t.elide_identity, ..Default::default() }, limits };
    let prepared = prepare(&code, &amps, &options)?;
    let residual =
        resolved.reference()?.map(|(h, energy)| eigenstate_residual(&h, &prepared.state, energy)).transpose()?;
    let report = PrepareReport {
        dimension: code.len(),
        gate_count: prepared.circuit.gates.len(),
        fidelity_to_target: prepared.fidelity,
        norm_drift: prepared.norm_drift,
        residual,
    };
    if let Some(path) = &args.circuit {
        fs::write(path, prepared.circuit.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.state {
        let dump = if args.csv {
            prepared.state.dump_csv(args.amp_threshold)
        } else {
            prepared.state.dump_json(args.amp_threshold) + "\n"
        };
        fs::write(path, dump).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.report {
        let text = if args.csv { report.to_csv() } else { report.to_json() };
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    // wall time goes to stdout only so the files stay reproducible
    println!("{}", report.to_json_with_time(clock.elapsed().as_secs_f64()));
    if prepared.fidelity < 1.0 - args.fidelity_tol {
        return Err(
            VerificationFailed(format!("fidelity {} below 1 - {}", prepared.fidelity, args.fidelity_tol)).into()
        );
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<()> {
    let t = &args.target;
    if t.provider == Provider::Generic {
        bail!(graystate::Error::InvalidSpec(
            "the generic provider has no reference Hamiltonian to verify against".into()
        ));
    }
    let resolved = resolve(t)?;
    let (n, k, two_s) = (resolved.spec.n(), resolved.spec.k(), resolved.spec.two_s());
    let limits = t.code.limits();
    let code = t.code.code(&resolved.spec, &limits)?;
    let amps = resolved.amplitudes(&code, false, &limits)?;
    let state = match &args.circuit {
        Some(path) => {
            let circuit = Circuit::from_json(&read(path)?)?;
            if circuit.n != n || circuit.d != two_s + 1 {
                bail!(graystate::Error::ShapeMismatch(format!(
                    "circuit acts on ({}, {}), target needs ({n}, {})",
                    circuit.n,
                    circuit.d,
                    two_s + 1
                )));
            }
            run_with(&circuit, &limits)?
        }
        None => {
            let options = PrepareOptions {
                assemble: AssembleOptions { elide_identity: t.elide_identity, ..Default::default() },
                limits,
            };
            prepare(&code, &amps, &options)?.state
        }
    };
    let target = StateVector::from_sector(&code, &amps, &limits)?;
    let (h, energy) = resolved.reference()?.expect("non-generic providers have a reference");

    let residual_tol = args.residual_tol.unwrap_or(if t.provider == Provider::Bethe { 1e-6 } else { 1e-9 });
    let sz = total_sz(n, two_s)?.expectation(&state)?.re / state.norm().powi(2);
    let expected_sz = two_s as f64 * n as f64 / 2.0 - k as f64;
    let fid = fidelity(&target, &state)?;
    let residual = eigenstate_residual(&h, &state, energy)?;
    let mut checks = vec![
        Check::at_most("fidelity_gap", 1.0 - fid, args.fidelity_tol),
        Check::at_most("eigenstate_residual", residual, residual_tol),
        Check::at_most("sz_deviation", (sz - expected_sz).abs(), args.sz_tol),
    ];
    let mut bethe_residuals = None;
    if let Target::Bethe(roots) = &resolved.target {
        let r = roots.residual()?;
        checks.push(Check::at_most("bethe_equations", r.iter().copied().fold(0.0, f64::max), args.bethe_tol));
        bethe_residuals = Some(r);
    }
    let report = VerifyReport {
        provider: t.provider,
        n,
        k,
        two_s,
        sz,
        expected_sz,
        energy,
        fidelity: fid,
        residual,
        bethe_residuals,
        passed: checks.iter().all(|c| c.passed),
        checks,
    };
    let text = if args.csv { report.to_csv() } else { report.to_json() };
    print!("{text}");
    if let Some(path) = &args.report {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    if !report.passed {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        return Err(VerificationFailed(failed.join(", ")).into());
    }
    Ok(())
}
