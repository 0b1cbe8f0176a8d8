//! Command-line surface of the verification engine.
//!
//! Every check command reads a dataset JSON document, prints a
//! deterministic report to standard output and exits with
//! 0 = pass/consistent, 1 = fail/contradiction, 2 = not-covered or usage
//! error. `gen` and `mutate` print dataset documents instead, so commands
//! chain through files or pipes.

mod dataset;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dataset::{parse_dataset, Dataset};
use hamfix::{
    check_inequality, check_unimodality, gen_cpn, gen_product, mutate, replay_proof, residue_check,
    CanonicalBasis, ClassRestrictions, CpnSpec, FixedPointSet, LocalizationSum, Mutation,
    ReplayVerdict, VerifyOptions,
};
use report::{DatasetMeta, Report};
use serde_json::{json, Value};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hamfix",
    version,
    about = "Exact verification of fixed-point data for Hamiltonian circle manifolds"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Require integer canonical-class coefficients.
    #[arg(long, global = true)]
    strict_integral: bool,
    /// Reject datasets whose maximum moment value is not 0 instead of
    /// shifting them.
    #[arg(long, global = true)]
    no_normalize: bool,
    /// Reserved for test-corpus tooling; engine results never depend on it.
    #[arg(long, global = true, value_name = "INT")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct DatasetArg {
    /// Dataset JSON file, or `-` for standard input.
    dataset: String,
}

#[derive(Subcommand)]
enum Command {
    /// Structural, Morse/duality, moment-order and localization-residue
    /// checks.
    Validate(DatasetArg),
    /// Even Betti numbers by Morse counting.
    Betti(DatasetArg),
    /// Localization pushforward of a named class or a power of the
    /// equivariant symplectic class.
    Integrate {
        #[command(flatten)]
        dataset: DatasetArg,
        /// Integrate the class with this name (full mode).
        #[arg(long)]
        class: Option<String>,
        /// Integrate this power of the equivariant symplectic class.
        #[arg(long)]
        omega_power: Option<usize>,
    },
    /// Localization residue identities `Σ H(p)^k / Λ_p = 0`, k < N.
    Residues(DatasetArg),
    /// Canonical-class axioms plus basis nonsingularity.
    VerifyCanonical(DatasetArg),
    /// The restriction-evaluation map: matrix and exact kernel.
    Phi(DatasetArg),
    /// Full replay of the kernel argument: inequality, Phi kernel, sign
    /// certificates.
    CheckTheorem(DatasetArg),
    /// Unimodality of the even Betti numbers up to the middle degree.
    CheckUnimodality(DatasetArg),
    /// Dataset generators.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Apply one controlled edit and print the resulting dataset.
    Mutate {
        #[command(flatten)]
        dataset: DatasetArg,
        /// `LABEL:SLOT` — negate one weight.
        #[arg(long, value_name = "LABEL:SLOT")]
        negate_weight: Option<String>,
        /// `LABEL:DELTA` — shift one moment value by an exact rational.
        #[arg(long, value_name = "LABEL:DELTA", allow_hyphen_values = true)]
        shift_moment: Option<String>,
        /// Remove one fixed point.
        #[arg(long, value_name = "LABEL")]
        drop_point: Option<String>,
        /// Write the dataset here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Complex projective space with a linear circle action.
    Cpn {
        /// Complex dimension n (half-dimension of the manifold).
        #[arg(long)]
        n: usize,
        /// Strictly increasing action weights a_0,...,a_n.
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
        weights: Vec<i64>,
        /// Write the dataset here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Product of two full-mode datasets under the diagonal action.
    Product {
        left: String,
        right: String,
        /// Write the dataset here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Outcome {
    Report(Report),
    Dataset { text: String, output: Option<PathBuf> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Outcome::Report(report) => {
            match format {
                Format::Json => print!("{}", report.render_json()),
                Format::Text => print!("{}", report.render_text()),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Outcome::Dataset { text, output } => match output {
            None => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Some(path) => match std::fs::write(&path, text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("cannot write {}: {e}", path.display());
                    ExitCode::from(2)
                }
            },
        },
    }
}

fn run(cli: Cli) -> Outcome {
    let opts = VerifyOptions {
        strict_integral: cli.strict_integral,
    };
    match cli.command {
        Command::Validate(arg) => cmd_validate(&arg),
        Command::Betti(arg) => cmd_betti(&arg),
        Command::Integrate {
            dataset,
            class,
            omega_power,
        } => cmd_integrate(&dataset, class, omega_power, cli.no_normalize),
        Command::Residues(arg) => cmd_residues(&arg),
        Command::VerifyCanonical(arg) => cmd_verify_canonical(&arg, opts, cli.no_normalize),
        Command::Phi(arg) => cmd_phi(&arg, opts),
        Command::CheckTheorem(arg) => cmd_check_theorem(&arg, opts, cli.no_normalize),
        Command::CheckUnimodality(arg) => cmd_check_unimodality(&arg),
        Command::Gen { what } => cmd_gen(what),
        Command::Mutate {
            dataset,
            negate_weight,
            shift_moment,
            drop_point,
            output,
        } => cmd_mutate(&dataset, negate_weight, shift_moment, drop_point, output),
    }
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("cannot read standard input: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
    }
}

fn load(command: &str, arg: &DatasetArg) -> Result<(Dataset, Report), Report> {
    let text = read_input(&arg.dataset).map_err(|e| Report::error(command, e))?;
    let ds = parse_dataset(&text).map_err(|e| Report::error(command, e))?;
    let report = Report::new(command).with_dataset(DatasetMeta::of(&ds));
    Ok((ds, report))
}

/// Runs the structural gate; on failure the failing certificate is already
/// in the report.
fn gate_valid(ds: &Dataset, report: &mut Report) -> bool {
    let cert = ds.fps.validate();
    let ok = cert.passed();
    report.push_check(&cert);
    ok
}

fn betti_json(fps: &FixedPointSet) -> Value {
    Value::Array(
        fps.betti()
            .values()
            .iter()
            .map(|&b| Value::from(b))
            .collect(),
    )
}

fn laurent_json(p: &hamfix::LaurentPoly) -> Value {
    let map: serde_json::Map<String, Value> = p
        .terms()
        .map(|(e, c)| (e.to_string(), Value::from(hamfix::format_rat(c))))
        .collect();
    Value::Object(map)
}

fn cmd_validate(arg: &DatasetArg) -> Outcome {
    let (ds, mut report) = match load("validate", arg) {
        Ok(x) => x,
        Err(r) => return Outcome::Report(r),
    };
    // short-circuit only on structural failure; analytic checks all run
    if gate_valid(&ds, &mut report) {
        report.push_check(&residue_check(&ds.fps));
        report = report.with_data(json!({ "betti": betti_json(&ds.fps) }));
    }
    Outcome::Report(report)
}

fn cmd_betti(arg: &DatasetArg) -> Outcome {
    let (ds, mut report) = match load("betti", arg) {
        Ok(x) => x,
        Err(r) => return Outcome::Report(r),
    };
    if gate_valid(&ds, &mut report) {
        report = report.with_data(json!({ "betti": betti_json(&ds.fps) }));
    }
    Outcome::Report(report)
}

fn cmd_residues(arg: &DatasetArg) -> Outcome {
    let (ds, mut report) = match load("residues", arg) {
        Ok(x) => x,
        Err(r) => return Outcome::Report(r),
    };
    if gate_valid(&ds, &mut report) {
        report.push_check(&residue_check(&ds.fps));
    }
    Outcome::Report(report)
}

fn cmd_check_unimodality(arg: &DatasetArg) -> Outcome {
    let (ds, mut report) = match load("check-unimodality", arg) {
        Ok(x) => x,
        Err(r) => return Outcome::Report(r),
    };
    if gate_valid(&ds, &mut report) {
        report.push_check(&check_unimodality(&ds.fps.betti()));
        report = report.with_data(json!({ "betti": betti_json(&ds.fps) }));
    }
    Outcome::Report(report)
}

fn cmd_integrate(
    arg: &DatasetArg,
    class: Option<String>,
    omega_power: Option<usize>,
    no_normalize: bool,
) -> Outcome {
    const CMD: &str = "integrate";
    let (ds, mut report) = match load(CMD, arg) {
        Ok(x) => x,
        Err(r) => return Outcome::Report(r),
    };
    if !gate_valid(&ds, &mut report) {
        return Outcome::Report(report);
    }
    let (fps, cls, description) = match (&class, omega_power) {
        (Some(name), None) => {
            let Some(c) = ds.named_class(name) else {
                return Outcome::Report(Report::error(
                    CMD,
                    format!("no class named `{name}` in the dataset"),
                ));
            };
            (ds.fps.clone(), c.clone(), format!("class {name}"))
        }
        (None, Some(k)) => {
            if no_normalize && !ds.fps.is_normalized() {
                return Outcome::Report(Report::error(
                    CMD,
                    "moment map not normalized and --no-normalize is set",
                ));
            }
            let fps = ds.fps.normalize_moment();
            let omega = match ClassRestrictions::omega(&fps) {
                Ok(w) => w,
                Err(e) => return Outcome::Report(Report::error(CMD, e.to_string())),
            };
            (fps, omega.pow(k), format!("omega^{k}"))
        }
        _ => {
            return Outcome::Report(Report::error(
                CMD,
                "exactly one of --class or --omega-power is required",
            ))
        }
    };
    let sum = match LocalizationSum::compute(&fps, &cls) {
        Ok(s) => s,
        Err(e) => return Outcome::Report(Report::error(CMD, e.to_string())),
    };
    let per_point: serde_json::Map<String, Value> = sum
        .per_point()
        .iter()
        .map(|(l, p)| (l.clone(), laurent_json(p)))
        .collect();
    report = report.with_data(json!({
        "integrand": description,
        "degree": cls.degree(),
        "total": laurent_json(sum.total()),
        "per_point": Value::Object(per_point),
        "value": hamfix::format_rat(&sum.value()),
        "pure": sum.is_pure(),
    }));
    Outcome::Report(report)
}

fn load_basis(command: &str, ds: &Dataset) -> Result<CanonicalBasis, Report> {
    ds.basis().map_err(|e| Report::error(command, e))
}

fn cmd_verify_canonical(arg: &DatasetArg, opts: VerifyOptions, no_normalize: bool) -> Outcome {
    const CMD: &str = "verify-canonical";
    let (ds, mut report) = match load(CMD, arg) {
        Ok(x) => x,
        Err(r) => return Outcome::Report(r),
    };
    if !gate_valid(&ds, &mut report) {
        return Outcome::Report(report);
    }
    if no_normalize && !ds.fps.is_normalized() {
        return Outcome::Report(Report::error(
            CMD,
            "moment map not normalized and --no-normalize is set",
        ));
    }
    let basis = match load_basis(CMD, &ds) {
        Ok(b) => b,
        Err(r) => return Outcome::Report(r),
    };
    match basis.verify(&ds.fps, opts) {
        Ok(cert) => {
            report.push_check(&cert);
            Outcome::Report(report)
        }
        Err(e) => Outcome::Report(Report::error(CMD, e.to_string())),
    }
}

fn phi_data(phi: &hamfix::PhiMap, kernel: &[ClassRestrictions]) -> Value {
    let domain: Vec<Value> = phi
        .domain_descriptors()
        .iter()
        .map(|(label, u)| json!({ "class": label, "u_power": u }))
        .collect();
    let matrix: Vec<Value> = (0..phi.matrix().rows())
        .map(|r| {
            Value::Array(
                (0..phi.matrix().cols())
                    .map(|c| Value::from(hamfix::format_rat(phi.matrix().at(r, c))))
                    .collect(),
            )
        })
        .collect();
    let kernel_json: Vec<Value> = kernel
        .iter()
        .map(|cls| {
            let coeffs: serde_json::Map<String, Value> = cls
                .coefficients()
                .iter()
                .map(|(l, c)| (l.clone(), Value::from(hamfix::format_rat(c))))
                .collect();
            Value::Object(coeffs)
        })
        .collect();
    json!({
        "domain": domain,
        "targets": phi.targets(),
        "matrix": matrix,
        "kernel_dim": kernel.len(),
        "kernel": kernel_json,
    })
}

fn cmd_phi(arg: &DatasetArg, opts: VerifyOptions) -> Outcome {
    const CMD: &str = "phi";
    let (ds, mut report) = match load(CMD, arg) {
        Ok(x) => x,
        Err(r) => return Outcome::Report(r),
    };
    if !gate_valid(&ds, &mut report) {
        return Outcome::Report(report);
    }
    if ds.fps.half_dim() % 2 != 0 {
        report.push_check(
            &hamfix::Certificate::not_covered("phi")
                .with("dim", 2 * ds.fps.half_dim())
                .with("reason", "dimension not divisible by 4"),
        );
        return Outcome::Report(report);
    }
    let basis = match load_basis(CMD, &ds) {
        Ok(b) => b,
        Err(r) => return Outcome::Report(r),
    };
    match basis.verify(&ds.fps, opts) {
        Ok(cert) => {
            let ok = cert.passed();
            report.push_check(&cert);
            if !ok {
                return Outcome::Report(report);
            }
        }
        Err(e) => return Outcome::Report(Report::error(CMD, e.to_string())),
    }
    match hamfix::build_phi(&ds.fps, &basis) {
        Ok(phi) => {
            let kernel = hamfix::phi_kernel(&phi);
            report = report.with_data(phi_data(&phi, &kernel));
            Outcome::Report(report)
        }
        Err(e) => Outcome::Report(Report::error(CMD, e.to_string())),
    }
}

fn cmd_check_theorem(arg: &DatasetArg, opts: VerifyOptions, no_normalize: bool) -> Outcome {
    const CMD: &str = "check-theorem";
    let (ds, mut report) = match load(CMD, arg) {
        Ok(x) => x,
        Err(r) => return Outcome::Report(r),
    };
    if !gate_valid(&ds, &mut report) {
        return Outcome::Report(report);
    }
    if no_normalize && !ds.fps.is_normalized() {
        return Outcome::Report(Report::error(
            CMD,
            "moment map not normalized and --no-normalize is set",
        ));
    }
    if ds.fps.half_dim() % 2 != 0 {
        // dimension not divisible by 4: the inequality is not claimed
        report.push_check(&check_inequality(&ds.fps.betti()));
        return Outcome::Report(report);
    }
    let basis = match load_basis(CMD, &ds) {
        Ok(b) => b,
        Err(r) => return Outcome::Report(r),
    };
    match basis.verify(&ds.fps, opts) {
        Ok(cert) => {
            let ok = cert.passed();
            report.push_check(&cert);
            if !ok {
                return Outcome::Report(report);
            }
        }
        Err(e) => return Outcome::Report(Report::error(CMD, e.to_string())),
    }
    match replay_proof(&ds.fps, &basis) {
        Ok(replay) => {
            report.push_check(&replay.inequality);
            report.push_check(&replay.certificate());
            let certs: Vec<Value> = replay
                .kernel_certificates
                .iter()
                .map(|c| {
                    let per: serde_json::Map<String, Value> = c
                        .per_point()
                        .iter()
                        .map(|(l, v)| (l.clone(), Value::from(hamfix::format_rat(v))))
                        .collect();
                    json!({
                        "per_point": Value::Object(per),
                        "total": hamfix::format_rat(c.total()),
                        "uniform_sign": c.uniform_sign(),
                    })
                })
                .collect();
            let contradictions: Vec<Value> = replay
                .contradictions
                .iter()
                .map(|c| Value::from(c.to_string()))
                .collect();
            let verdict = match replay.verdict {
                ReplayVerdict::Consistent => "consistent",
                ReplayVerdict::Contradiction => "contradiction",
            };
            report = report
                .with_data(json!({
                    "result": replay.verdict.to_string(),
                    "betti": betti_json(&ds.fps),
                    "domain_dim": replay.domain_dim,
                    "range_bound": replay.range_bound,
                    "forces_kernel": replay.forces_kernel,
                    "kernel_dim": replay.kernel_dim(),
                    "kernel_certificates": certs,
                    "contradictions": contradictions,
                }))
                .with_verdict(verdict);
            Outcome::Report(report)
        }
        Err(e) => Outcome::Report(Report::error(CMD, e.to_string())),
    }
}

fn cmd_gen(what: GenCommand) -> Outcome {
    match what {
        GenCommand::Cpn { n, weights, output } => {
            let spec = match CpnSpec::new(n, weights) {
                Ok(s) => s,
                Err(e) => return Outcome::Report(Report::error("gen cpn", e.to_string())),
            };
            let (fps, basis) = gen_cpn(&spec);
            let ds = Dataset::full(fps, &basis);
            Outcome::Dataset {
                text: ds.to_json(),
                output,
            }
        }
        GenCommand::Product { left, right, output } => {
            const CMD: &str = "gen product";
            let load_side = |path: &str| -> Result<(Dataset, CanonicalBasis), Report> {
                let text = read_input(path).map_err(|e| Report::error(CMD, e))?;
                let ds = parse_dataset(&text).map_err(|e| Report::error(CMD, e))?;
                let basis = ds.basis().map_err(|e| Report::error(CMD, e))?;
                // inputs must be verified canonical data
                let cert = ds.fps.validate();
                if !cert.passed() {
                    let mut r = Report::new(CMD).with_dataset(DatasetMeta::of(&ds));
                    r.push_check(&cert);
                    return Err(r);
                }
                let cert = basis
                    .verify(&ds.fps, VerifyOptions::default())
                    .map_err(|e| Report::error(CMD, e.to_string()))?;
                if !cert.passed() {
                    let mut r = Report::new(CMD).with_dataset(DatasetMeta::of(&ds));
                    r.push_check(&cert);
                    return Err(r);
                }
                Ok((ds, basis))
            };
            let (lds, lbasis) = match load_side(&left) {
                Ok(x) => x,
                Err(r) => return Outcome::Report(r),
            };
            let (rds, rbasis) = match load_side(&right) {
                Ok(x) => x,
                Err(r) => return Outcome::Report(r),
            };
            match gen_product(&lds.fps, &lbasis, &rds.fps, &rbasis) {
                Ok((fps, basis)) => Outcome::Dataset {
                    text: Dataset::full(fps, &basis).to_json(),
                    output,
                },
                Err(e) => {
                    let mut r = Report::new(CMD);
                    r.verdict = "fail".to_owned();
                    r.error = Some(e.to_string());
                    Outcome::Report(r)
                }
            }
        }
    }
}

fn parse_edit(
    negate_weight: Option<String>,
    shift_moment: Option<String>,
    drop_point: Option<String>,
) -> Result<Mutation, String> {
    match (negate_weight, shift_moment, drop_point) {
        (Some(spec), None, None) => {
            let (label, slot) = spec
                .rsplit_once(':')
                .ok_or_else(|| format!("--negate-weight expects LABEL:SLOT, got `{spec}`"))?;
            let slot: usize = slot
                .parse()
                .map_err(|_| format!("--negate-weight slot must be an integer, got `{slot}`"))?;
            Ok(Mutation::NegateWeight {
                label: label.to_owned(),
                slot,
            })
        }
        (None, Some(spec), None) => {
            let (label, delta) = spec
                .rsplit_once(':')
                .ok_or_else(|| format!("--shift-moment expects LABEL:DELTA, got `{spec}`"))?;
            let delta = hamfix::parse_rat(delta).map_err(|e| e.to_string())?;
            Ok(Mutation::ShiftMoment {
                label: label.to_owned(),
                delta,
            })
        }
        (None, None, Some(label)) => Ok(Mutation::DropPoint { label }),
        _ => Err(
            "exactly one of --negate-weight, --shift-moment, --drop-point is required".to_owned(),
        ),
    }
}

fn cmd_mutate(
    arg: &DatasetArg,
    negate_weight: Option<String>,
    shift_moment: Option<String>,
    drop_point: Option<String>,
    output: Option<PathBuf>,
) -> Outcome {
    const CMD: &str = "mutate";
    let text = match read_input(&arg.dataset) {
        Ok(t) => t,
        Err(e) => return Outcome::Report(Report::error(CMD, e)),
    };
    let ds = match parse_dataset(&text) {
        Ok(d) => d,
        Err(e) => return Outcome::Report(Report::error(CMD, e)),
    };
    let edit = match parse_edit(negate_weight, shift_moment, drop_point) {
        Ok(e) => e,
        Err(e) => return Outcome::Report(Report::error(CMD, e)),
    };
    match mutate(&ds.fps, &edit) {
        Ok(fps) => {
            // classes are dropped: they described the unedited data
            let out = Dataset::minimal(fps);
            Outcome::Dataset {
                text: out.to_json(),
                output,
            }
        }
        Err(e) => Outcome::Report(Report::error(CMD, e.to_string())),
    }
}
