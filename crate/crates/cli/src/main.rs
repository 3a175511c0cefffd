//! `qit`: command-line front end for the quantum information toolkit.
//!
//! Subcommands mirror the library modules: classical coding numbers, erasure
//! ledgers, the channel bound, block compression, distillation, rotated-basis
//! correlations and the reference report. All randomized runs take a 64-bit
//! seed (flag, then QIT_SEED, then config file) and are reproducible from it.

use clap::{Args, Parser, Subcommand};
use qit_core::classical::{
    bsc_residual_error, bsc_simulate, build_codebook, channel_capacity, compression_bits,
    BscParams,
};
use qit_core::cmatrix::CVector;
use qit_core::entangle::{
    anticorrelation_probs, entanglement_entropy, procrustean_distill, procrustean_sample,
    PolarizationBasis,
};
use qit_core::erasure::{lubkin_ledger, matched_spec, optimal_erasure_entropy, ThermalSpec};
use qit_core::holevo::{holevo_bound, measurement_mutual_info, SignalEnsemble};
use qit_core::io::{parse_ensemble, parse_matrix, resolve_config, Config};
use qit_core::qcompress::{
    asymptotic_rate, block_success_prob, empirical_success_rate, landauer_rate_bound, SourceSpec,
};
use qit_core::qstate::{DensityOperator, Observable, PureState};
use qit_core::report::run_report;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qit", version, about = "quantum information toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Config file (JSON: k_boltzmann, hbar, default_tolerance, seed).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seed for randomized runs; overrides QIT_SEED and the config file.
    #[arg(long)]
    seed: Option<u64>,
    /// Boltzmann constant for thermodynamic outputs (default 1; SI 1.380649e-23).
    #[arg(long)]
    k_boltzmann: Option<f64>,
    /// Reduced Planck constant for time evolution (default 1).
    #[arg(long)]
    hbar: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Typical-set compression, channel capacity and repetition coding.
    Classical {
        #[command(flatten)]
        common: Common,
        /// Message length N (also the coded length for the capacity bound).
        #[arg(long, default_value_t = 8)]
        n: u64,
        /// Source probability of the letter 1.
        #[arg(long, default_value_t = 0.125)]
        p1: f64,
        /// Channel flip probability.
        #[arg(long, default_value_t = 0.01)]
        q: f64,
        /// Repetition-code length (odd).
        #[arg(long, default_value_t = 3)]
        copies: usize,
        /// Monte Carlo trials for the empirical residual error.
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Build a codebook with this coverage and report its size.
        #[arg(long)]
        coverage: Option<f64>,
    },
    /// Thermal-erasure ledger of a density operator.
    Erase {
        #[command(flatten)]
        common: Common,
        /// Density operator in matrix text format.
        #[arg(long)]
        state: PathBuf,
        /// Bath temperature (k = 1 units).
        #[arg(long, default_value_t = 1.0)]
        temperature: f64,
        /// Match the bath to the state (optimal erasure). This is the
        /// default; the flag exists to make command lines explicit.
        #[arg(long = "match", conflicts_with = "hamiltonian")]
        match_bath: bool,
        /// Bath Hamiltonian in matrix text format (defaults to matched).
        #[arg(long)]
        hamiltonian: Option<PathBuf>,
    },
    /// Holevo quantity and fixed-basis mutual information of an ensemble.
    Holevo {
        #[command(flatten)]
        common: Common,
        /// Ensemble JSON file.
        ensemble: PathBuf,
    },
    /// Typical-subspace block compression of a qubit source.
    Qcompress {
        #[command(flatten)]
        common: Common,
        /// Ground-state probability of the source.
        #[arg(long, default_value_t = 0.95)]
        p0: f64,
        /// Block length in qubits.
        #[arg(long, default_value_t = 7)]
        n: usize,
        /// Compressed length in qubits.
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Monte Carlo trials for the empirical success rate.
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Single-pair filtering distillation.
    Distill {
        #[command(flatten)]
        common: Common,
        /// Squared larger amplitude of the input pair (0.5 <= alpha2 < 1).
        #[arg(long, default_value_t = 0.8)]
        alpha2: f64,
        /// Monte Carlo trials for the sampled success rate.
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Anticorrelation probabilities in a rotated polarization basis.
    Correlations {
        #[command(flatten)]
        common: Common,
        /// Polarizer angle in degrees.
        #[arg(long, default_value_t = 45.0)]
        angle: f64,
    },
    /// Recompute every reference value and report pass/fail.
    Report {
        #[command(flatten)]
        common: Common,
        /// Keep only entries whose id contains this string.
        #[arg(long)]
        filter: Option<String>,
        /// Output format.
        #[arg(long, default_value = "text", value_parser = ["text", "json"])]
        format: String,
    },
}

fn load_config(common: &Common) -> Result<Config, String> {
    let file_body = match &common.config {
        Some(path) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {}: {e}", path.display()))?,
        ),
        None => None,
    };
    let env_seed = std::env::var("QIT_SEED").ok();
    let mut config = resolve_config(file_body.as_deref(), env_seed.as_deref(), common.seed)
        .map_err(|e| e.to_string())?;
    if let Some(k) = common.k_boltzmann {
        config.k_boltzmann = k;
    }
    if let Some(hbar) = common.hbar {
        config.hbar = hbar;
    }
    config.validate().map_err(|e| e.to_string())?;
    Ok(config)
}

fn read_density(path: &PathBuf) -> Result<DensityOperator, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let matrix = parse_matrix(&text).map_err(|e| e.to_string())?;
    let dim = matrix.rows();
    DensityOperator::new(matrix, &[dim]).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Classical {
            common,
            n,
            p1,
            q,
            copies,
            trials,
            coverage,
        } => {
            let config = load_config(&common)?;
            let bits = compression_bits(n, p1).map_err(|e| e.to_string())?;
            let channel = BscParams::new(q).map_err(|e| e.to_string())?;
            let residual_exact = bsc_residual_error(copies, channel).map_err(|e| e.to_string())?;
            let residual_empirical =
                bsc_simulate(copies, channel, trials, config.seed).map_err(|e| e.to_string())?;
            let mut out = json!({
                "exact_bits": bits.exact,
                "stirling_bits": bits.stirling,
                "capacity": channel_capacity(n, q).map_err(|e| e.to_string())?,
                "residual_exact": residual_exact,
                "residual_empirical": residual_empirical,
            });
            if let Some(cov) = coverage {
                let book = build_codebook(n as usize, p1, cov).map_err(|e| e.to_string())?;
                out["codebook_size"] = json!(book.typical().len());
                out["achieved_coverage"] = json!(book.achieved_coverage());
            }
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Erase {
            common,
            state,
            temperature,
            match_bath: _,
            hamiltonian,
        } => {
            let config = load_config(&common)?;
            let rho = read_density(&state)?;
            let spec = match &hamiltonian {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                    let h = parse_matrix(&text).map_err(|e| e.to_string())?;
                    let dim = h.rows();
                    let observable = Observable::new(h, &[dim]).map_err(|e| e.to_string())?;
                    ThermalSpec::new(observable, temperature).map_err(|e| e.to_string())?
                }
                None => matched_spec(&rho, temperature).map_err(|e| e.to_string())?,
            };
            let ledger = lubkin_ledger(&rho, &spec).map_err(|e| e.to_string())?;
            let k = config.k_boltzmann;
            let out = json!({
                "temperature": temperature,
                "matched": hamiltonian.is_none(),
                "w_extracted": ledger.w_extracted,
                "w_erasure": ledger.w_erasure,
                "q_total": ledger.q_total,
                "delta_s_system": k * ledger.delta_s_system,
                "delta_s_bath": k * ledger.delta_s_bath,
                "delta_s_total": k * ledger.delta_s_total,
                "info_bits": ledger.info_bits,
                "generalized_entropy_bits": ledger.generalized_entropy,
                "landauer_floor": k * optimal_erasure_entropy(&rho).map_err(|e| e.to_string())?,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Holevo { common, ensemble } => {
            let _config = load_config(&common)?;
            let text = std::fs::read_to_string(&ensemble)
                .map_err(|e| format!("cannot read {}: {e}", ensemble.display()))?;
            let parsed = parse_ensemble(&text).map_err(|e| e.to_string())?;
            let items = parsed
                .items()
                .iter()
                .map(|(p, member)| Ok((*p, member.to_density().map_err(|e| e.to_string())?)))
                .collect::<Result<Vec<_>, String>>()?;
            let signals = SignalEnsemble::new(items).map_err(|e| e.to_string())?;
            let dim = signals.dim();
            let mut ds1 = 0.0;
            for (p, rho) in signals.items() {
                ds1 += p * qit_core::entropy::von_neumann(rho).map_err(|e| e.to_string())?;
            }
            let ds2 = qit_core::entropy::von_neumann(
                &signals.average_state().map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            let z_basis: Vec<_> = (0..dim)
                .map(|i| {
                    CVector::basis(dim, i)
                        .and_then(|v| v.projector())
                        .map_err(|e| e.to_string())
                })
                .collect::<Result<_, _>>()?;
            let out = json!({
                "holevo_bits": holevo_bound(&signals).map_err(|e| e.to_string())?,
                "ds1": ds1,
                "ds2": ds2,
                "fixed_basis_mi": measurement_mutual_info(&signals, &z_basis)
                    .map_err(|e| e.to_string())?,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Qcompress {
            common,
            p0,
            n,
            m,
            trials,
        } => {
            let config = load_config(&common)?;
            let spec = SourceSpec::from_p0(p0).map_err(|e| e.to_string())?;
            let out = json!({
                "success_prob_exact": block_success_prob(&spec, n, m).map_err(|e| e.to_string())?,
                "success_prob_empirical":
                    empirical_success_rate(&spec, n, m, trials, config.seed)
                        .map_err(|e| e.to_string())?,
                "rate": asymptotic_rate(&spec).map_err(|e| e.to_string())?,
                "bound": landauer_rate_bound(&spec).map_err(|e| e.to_string())?,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Distill {
            common,
            alpha2,
            trials,
        } => {
            let config = load_config(&common)?;
            if !(0.5..1.0).contains(&alpha2) {
                return Err(format!("alpha2 must lie in [0.5, 1), got {alpha2}"));
            }
            let alpha = alpha2.sqrt();
            let beta = (1.0 - alpha2).sqrt();
            let (success, failure) =
                procrustean_distill(alpha, beta).map_err(|e| e.to_string())?;
            let input = PureState::new(
                CVector::from_real(&[alpha, 0.0, 0.0, beta]).map_err(|e| e.to_string())?,
                &[2, 2],
            )
            .map_err(|e| e.to_string())?;
            let out = json!({
                "alpha2": alpha2,
                "success_probability": success.probability,
                "failure_probability": failure.probability,
                "sampled_success": procrustean_sample(alpha, beta, trials, config.seed)
                    .map_err(|e| e.to_string())?,
                "input_entanglement": entanglement_entropy(&input).map_err(|e| e.to_string())?,
                "post_state_entanglement": entanglement_entropy(&success.post_state)
                    .map_err(|e| e.to_string())?,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Correlations { common, angle } => {
            let _config = load_config(&common)?;
            let basis = PolarizationBasis::new(angle.to_radians()).map_err(|e| e.to_string())?;
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let entangled = PureState::new(
                CVector::from_real(&[s, 0.0, 0.0, s]).map_err(|e| e.to_string())?,
                &[2, 2],
            )
            .map_err(|e| e.to_string())?
            .to_density()
            .map_err(|e| e.to_string())?;
            let classical = DensityOperator::new(
                qit_core::cmatrix::CMatrix::from_real_rows(&[
                    vec![0.5, 0.0, 0.0, 0.0],
                    vec![0.0, 0.0, 0.0, 0.0],
                    vec![0.0, 0.0, 0.0, 0.0],
                    vec![0.0, 0.0, 0.0, 0.5],
                ])
                .map_err(|e| e.to_string())?,
                &[2, 2],
            )
            .map_err(|e| e.to_string())?;
            let (c_xy, c_yx) =
                anticorrelation_probs(&classical, &basis).map_err(|e| e.to_string())?;
            let (q_xy, q_yx) =
                anticorrelation_probs(&entangled, &basis).map_err(|e| e.to_string())?;
            let out = json!({
                "angle_degrees": angle,
                "classical_xy": c_xy,
                "classical_yx": c_yx,
                "entangled_xy": q_xy,
                "entangled_yx": q_yx,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Report {
            common,
            filter,
            format,
        } => {
            let config = load_config(&common)?;
            let report = run_report(filter.as_deref(), config.seed).map_err(|e| e.to_string())?;
            match format.as_str() {
                "json" => println!("{}", report.to_json()),
                _ => print!("{}", report.to_text()),
            }
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
