//! `luinv` — exact local-unitary equivalence checks for bipartite states.
//!
//! Exit codes: 0 = consistent/equivalent (or plain success), 1 = a check
//! refuted equivalence, 2 = usage or input errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};

use luinv::adjoint::{adjoint_matrix, apply_local_unitary};
use luinv::basis::HermitianBasis;
use luinv::bloch::{decompose, BlochTriple};
use luinv::check::{run_check, CheckOptions, CriterionKind};
use luinv::harness::{generate_pair, GeneratorSpec, PairMode};
use luinv::invariants::albert_polynomial;
use luinv::json::{
    DensityDto, OrthogonalDto, ReportDto, SmithDto, StateInputDto, TripleDto, UnitaryDto,
};
use luinv::pencil::{kronecker_pencil, smith_normal_form};
use luinv::scalar::{Backend, Tolerance};

#[derive(Parser)]
#[command(
    name = "luinv",
    version,
    about = "Exact quasi-local-unitary equivalence checks on Bloch triples",
    after_help = "The LUINV_BACKEND environment variable (exact|float) sets the default \
                  backend; --backend overrides it."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Bloch triple of a density-matrix JSON file.
    Decompose {
        /// Density matrix JSON file
        state_file: PathBuf,
    },
    /// Run equivalence criteria on two states (or triples).
    Check {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Comma-separated subset of: norm,trace,albert,ghs,snf
        #[arg(long, default_value = "norm,snf,albert,trace,ghs")]
        criteria: String,
        /// Word bound in pairs (trace words: this many pairs; GHS words:
        /// twice as many letters). Defaults to m = d1²−1.
        #[arg(long)]
        max_word_len: Option<usize>,
        /// exact | float
        #[arg(long)]
        backend: Option<String>,
        /// Tolerance for the float backend (sets both relative and absolute)
        #[arg(long)]
        tol: Option<f64>,
        /// Emit the report as JSON (stable, timing-free)
        #[arg(long)]
        json: bool,
    },
    /// Smith normal form of the Kronecker pencil λW + uvᵗ.
    Snf {
        /// State or triple JSON file
        file: PathBuf,
    },
    /// The Albert invariant polynomial det(xI − x₁WWᵗ − x₂uuᵗ − x₃Wvuᵗ).
    Albert {
        /// State or triple JSON file
        file: PathBuf,
    },
    /// Conjugate a state by U₁⊗U₂ and report the induced orthogonal pair.
    Apply {
        state_file: PathBuf,
        u1_file: PathBuf,
        u2_file: PathBuf,
    },
    /// Generate a reproducible state pair (and witnesses when applicable).
    Generate {
        #[arg(long)]
        d1: usize,
        #[arg(long)]
        d2: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// equivalent | perturbed | independent
        #[arg(long, default_value = "equivalent")]
        mode: String,
        /// exact | float
        #[arg(long)]
        backend: Option<String>,
        #[arg(long, default_value = "pair_a.json")]
        out_a: PathBuf,
        #[arg(long, default_value = "pair_b.json")]
        out_b: PathBuf,
        /// Where to write the witness unitaries (equivalent mode only)
        #[arg(long)]
        out_witness: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn resolve_backend(flag: Option<&str>, tol: Option<f64>) -> anyhow::Result<Backend> {
    let choice = match flag {
        Some(s) => s.to_string(),
        None => std::env::var("LUINV_BACKEND").unwrap_or_else(|_| "exact".to_string()),
    };
    match choice.as_str() {
        "exact" => Ok(Backend::Exact),
        "float" => {
            let t = tol
                .map(|t| Tolerance {
                    relative: t,
                    absolute: t,
                })
                .unwrap_or_default();
            Ok(Backend::Float(t))
        }
        other => Err(anyhow!("unknown backend '{other}' (expected exact or float)")),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> anyhow::Result<T> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Loads either input form and produces a triple (states are decomposed in
/// the standard Gell-Mann bases of their declared dimensions).
fn load_triple(path: &PathBuf) -> anyhow::Result<BlochTriple> {
    let input: StateInputDto = read_json(path)?;
    match input {
        StateInputDto::Density(dto) => {
            let rho = dto.into_state()?;
            let b1 = HermitianBasis::gellmann(rho.d1())?.into_shared();
            let b2 = HermitianBasis::gellmann(rho.d2())?.into_shared();
            Ok(decompose(&rho, &b1, &b2)?)
        }
        StateInputDto::Triple(dto) => Ok(dto.into_triple()?),
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Decompose { state_file } => {
            let dto: DensityDto = read_json(&state_file)?;
            let rho = dto.into_state()?;
            let b1 = HermitianBasis::gellmann(rho.d1())?.into_shared();
            let b2 = HermitianBasis::gellmann(rho.d2())?.into_shared();
            let triple = decompose(&rho, &b1, &b2)?;
            print_json(&TripleDto::from_triple(&triple))?;
            Ok(0)
        }
        Command::Check {
            file_a,
            file_b,
            criteria,
            max_word_len,
            backend,
            tol,
            json,
        } => {
            let backend = resolve_backend(backend.as_deref(), tol)?;
            let t1 = load_triple(&file_a)?;
            let t2 = load_triple(&file_b)?;
            let opts = CheckOptions {
                criteria: CriterionKind::parse_csv(&criteria)?,
                max_word_len,
                backend,
            };
            let report = run_check(&t1, &t2, &opts)?;
            if json {
                print_json(&ReportDto::from_report(&report))?;
            } else {
                println!("{report}");
            }
            Ok(u8::try_from(report.exit_code()).unwrap_or(2))
        }
        Command::Snf { file } => {
            let triple = load_triple(&file)?;
            let snf = smith_normal_form(&kronecker_pencil(&triple), false);
            print_json(&SmithDto::from_smith(&snf))?;
            Ok(0)
        }
        Command::Albert { file } => {
            let triple = load_triple(&file)?;
            println!("{}", albert_polynomial(&triple));
            Ok(0)
        }
        Command::Apply {
            state_file,
            u1_file,
            u2_file,
        } => {
            let rho = read_json::<DensityDto>(&state_file)?.into_state()?;
            let u1 = read_json::<UnitaryDto>(&u1_file)?.into_unitary(&Backend::Exact)?;
            let u2 = read_json::<UnitaryDto>(&u2_file)?.into_unitary(&Backend::Exact)?;
            let moved = apply_local_unitary(&rho, &u1, &u2)?;
            let b1 = HermitianBasis::gellmann(rho.d1())?.into_shared();
            let b2 = HermitianBasis::gellmann(rho.d2())?.into_shared();
            let a = adjoint_matrix(&u1, &b1)?;
            let b = adjoint_matrix(&u2, &b2)?;
            let out = serde_json::json!({
                "state": DensityDto::from_state(&moved),
                "A": OrthogonalDto::from_witness(&a),
                "B": OrthogonalDto::from_witness(&b),
            });
            print_json(&out)?;
            Ok(0)
        }
        Command::Generate {
            d1,
            d2,
            seed,
            mode,
            backend,
            out_a,
            out_b,
            out_witness,
        } => {
            let spec = GeneratorSpec {
                d1,
                d2,
                seed,
                mode: PairMode::parse(&mode)?,
                backend: resolve_backend(backend.as_deref(), None)?,
            };
            let pair = generate_pair(&spec)?;
            fs::write(
                &out_a,
                serde_json::to_string_pretty(&DensityDto::from_state(&pair.rho_a))?,
            )
            .with_context(|| format!("writing {}", out_a.display()))?;
            fs::write(
                &out_b,
                serde_json::to_string_pretty(&DensityDto::from_state(&pair.rho_b))?,
            )
            .with_context(|| format!("writing {}", out_b.display()))?;
            eprintln!("wrote {} and {}", out_a.display(), out_b.display());
            if let Some(path) = out_witness {
                match &pair.witnesses {
                    Some((u1, u2)) => {
                        let w = serde_json::json!({
                            "u1": UnitaryDto::from_unitary(u1),
                            "u2": UnitaryDto::from_unitary(u2),
                        });
                        fs::write(&path, serde_json::to_string_pretty(&w)?)
                            .with_context(|| format!("writing {}", path.display()))?;
                        eprintln!("wrote witness unitaries to {}", path.display());
                    }
                    None => {
                        eprintln!(
                            "note: mode '{}' produces no witness unitaries; {} not written",
                            spec.mode.name(),
                            path.display()
                        );
                    }
                }
            }
            Ok(0)
        }
    }
}
