//! Command-line front end: list the identity catalog, evaluate the special
//! functions, run numeric residual sweeps, and run the formal prover.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 numeric
//! non-convergence, 4 inconclusive formal order.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use qtrig::catalog::{self, SweepReport};
use qtrig::formal::{self, ProofOutcome, ProofReport};
use qtrig::report::{fmt_complex, parse_complex};
use qtrig::theta::{theta1_series, ModularPoint};
use qtrig::{Error, GridSpec, QParameter, TruncationPolicy};

const EXIT_PASS: u8 = 0;
const EXIT_VERIFICATION_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NON_CONVERGED: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "qtrig",
    about = "Gosper q-trigonometric functions, Jacobi theta_1, and identity verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the identity catalog with supported modes.
    List {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate sinq | cosq | piq | theta1 at a point.
    Eval {
        /// Function name: sinq, cosq, piq, or theta1.
        function: String,
        /// Argument z as a complex literal "a+bi" (defaults to 0).
        #[arg(long)]
        z: Option<String>,
        /// Nome q as a complex literal, |q| in (0, 1).
        #[arg(long)]
        q: Option<String>,
        /// Modular parameter tau (theta1 only), e.g. "i" or "0.3+0.7i".
        #[arg(long)]
        tau: Option<String>,
        /// Truncation tolerance override.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep identities over a seeded grid and report residuals.
    Check {
        /// Identity ids, or "all".
        #[arg(required = true)]
        ids: Vec<String>,
        /// Real nomes to sweep (defaults to 0.1 0.2 0.3 0.5 0.7).
        #[arg(long = "q")]
        q_values: Vec<f64>,
        /// Number of z samples per nome.
        #[arg(long = "grid-n")]
        grid_n: Option<usize>,
        /// Grid seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Truncation tolerance override.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify formal-capable identities by exact truncated series.
    Prove {
        /// Identity ids, or "all" (all formal-capable ones).
        #[arg(required = true)]
        ids: Vec<String>,
        /// Truncation exponent override (default: per-identity order).
        #[arg(long)]
        order: Option<i64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NonConverged { .. } => EXIT_NON_CONVERGED,
        Error::UnknownIdentity { .. }
        | Error::NotFormalCapable { .. }
        | Error::InvalidPolicy { .. }
        | Error::StepOutOfRange { .. }
        | Error::Usage { .. } => EXIT_USAGE,
        Error::AtPoint { source, .. } => exit_code_for(source),
        _ => EXIT_VERIFICATION_FAILURE,
    }
}

/// Argument-shape problems detected after clap parsing (bad complex literal,
/// missing --q, unknown function name).
fn usage_error(message: String) -> Error {
    Error::Usage { message }
}

fn emit(output: &OutputArgs, body: String) -> Result<(), Error> {
    match &output.out {
        Some(path) => std::fs::File::create(path)
            .and_then(|mut f| f.write_all(body.as_bytes()))
            .map_err(|e| usage_error(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn policy_from(tol: Option<f64>) -> Result<TruncationPolicy, Error> {
    match tol {
        Some(t) => TruncationPolicy::new(t, TruncationPolicy::DEFAULT_MAX_TERMS),
        None => Ok(TruncationPolicy::default()),
    }
}

fn parse_complex_arg(name: &str, value: &str) -> Result<Complex64, Error> {
    parse_complex(value).ok_or_else(|| {
        usage_error(format!(
            "cannot parse --{name} value `{value}` as a complex number"
        ))
    })
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::List { output } => cmd_list(&output),
        Command::Eval {
            function,
            z,
            q,
            tau,
            tol,
            output,
        } => cmd_eval(&function, z, q, tau, tol, &output),
        Command::Check {
            ids,
            q_values,
            grid_n,
            seed,
            tol,
            output,
        } => cmd_check(&ids, q_values, grid_n, seed, tol, &output),
        Command::Prove { ids, order, output } => cmd_prove(&ids, order, &output),
    }
}

fn cmd_list(output: &OutputArgs) -> Result<u8, Error> {
    let cat = catalog::catalog();
    let body = match output.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&cat).expect("serialize")),
        Format::Csv | Format::Text => {
            let mut s = String::new();
            for d in &cat {
                let modes = if d.modes.formal {
                    "numeric+formal"
                } else {
                    "numeric"
                };
                let vars = match d.variables {
                    catalog::Variables::WithZ => "z,nome",
                    catalog::Variables::NomeOnly => "nome",
                };
                let formal = d
                    .formal
                    .map(|f| format!(" root_m={} default_order={}", f.root_m, f.default_order))
                    .unwrap_or_default();
                s.push_str(&format!(
                    "{:10} [{modes}] vars={vars}{formal}  {}\n",
                    d.id, d.statement_ref
                ));
            }
            s
        }
    };
    emit(output, body)?;
    Ok(EXIT_PASS)
}

fn cmd_eval(
    function: &str,
    z: Option<String>,
    q: Option<String>,
    tau: Option<String>,
    tol: Option<f64>,
    output: &OutputArgs,
) -> Result<u8, Error> {
    let policy = policy_from(tol)?;
    let z = match z {
        Some(s) => parse_complex_arg("z", &s)?,
        None => Complex64::new(0.0, 0.0),
    };
    let need_q = || -> Result<QParameter, Error> {
        let qs = q
            .as_deref()
            .ok_or_else(|| usage_error(format!("`eval {function}` requires --q")))?;
        QParameter::new(parse_complex_arg("q", qs)?)
    };
    let (value, param_desc) = match function {
        "sinq" => {
            let qp = need_q()?;
            (
                qtrig::sin_q(z, &qp, &policy)?,
                format!("q = {}", fmt_complex(qp.nome())),
            )
        }
        "cosq" => {
            let qp = need_q()?;
            (
                qtrig::cos_q(z, &qp, &policy)?,
                format!("q = {}", fmt_complex(qp.nome())),
            )
        }
        "piq" => {
            let qp = need_q()?;
            (
                qtrig::pi_q(&qp, &policy)?,
                format!("q = {}", fmt_complex(qp.nome())),
            )
        }
        "theta1" => {
            let ts = tau
                .as_deref()
                .ok_or_else(|| usage_error("`eval theta1` requires --tau".to_owned()))?;
            let m = ModularPoint::new(parse_complex_arg("tau", ts)?)?;
            (
                theta1_series(z, &m, &policy)?,
                format!("tau = {}", fmt_complex(m.tau())),
            )
        }
        other => {
            return Err(usage_error(format!(
                "unknown function `{other}` (expected sinq|cosq|piq|theta1)"
            )))
        }
    };
    let body = match output.format {
        Format::Json => format!(
            "{}\n",
            serde_json::json!({
                "function": function,
                "z": fmt_complex(z),
                "parameter": param_desc,
                "value": fmt_complex(value),
                "tol": policy.tol,
                "max_terms": policy.max_terms,
            })
        ),
        _ if function == "piq" => format!(
            "{function}({param_desc}) = {}  [tol = {:e}]\n",
            fmt_complex(value),
            policy.tol
        ),
        _ => format!(
            "{function}({}; {param_desc}) = {}  [tol = {:e}]\n",
            fmt_complex(z),
            fmt_complex(value),
            policy.tol
        ),
    };
    emit(output, body)?;
    Ok(EXIT_PASS)
}

fn resolve_ids(ids: &[String], formal_only: bool) -> Result<Vec<&'static str>, Error> {
    let cat = catalog::catalog();
    if ids.len() == 1 && ids[0] == "all" {
        return Ok(cat
            .iter()
            .filter(|d| !formal_only || d.modes.formal)
            .map(|d| d.id)
            .collect());
    }
    // unknown ids are rejected before any computation
    let mut out = Vec::with_capacity(ids.len());
    for id in ids {
        let d = catalog::find(id)?;
        if formal_only && !d.modes.formal {
            return Err(Error::NotFormalCapable { id: id.clone() });
        }
        out.push(d.id);
    }
    Ok(out)
}

fn cmd_check(
    ids: &[String],
    q_values: Vec<f64>,
    grid_n: Option<usize>,
    seed: Option<u64>,
    tol: Option<f64>,
    output: &OutputArgs,
) -> Result<u8, Error> {
    let ids = resolve_ids(ids, false)?;
    let policy = policy_from(tol)?;
    let mut grid = GridSpec::default_identity_grid();
    if !q_values.is_empty() {
        grid.q_values = q_values;
    }
    if let Some(n) = grid_n {
        grid.n_z = n;
    }
    if let Some(s) = seed {
        grid.seed = s;
    }

    // per-identity failures are collected, not fail-fast
    let mut reports: Vec<SweepReport> = Vec::new();
    let mut details: Vec<(&str, Vec<catalog::ResidualRecord>)> = Vec::new();
    for id in &ids {
        let (report, records) = catalog::sweep_detailed(id, &grid, &policy)?;
        details.push((id, records));
        reports.push(report);
    }
    let all_pass = reports.iter().all(|r| r.pass);

    let body = match output.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&reports).expect("serialize")
        ),
        Format::Csv => {
            let mut s = String::from("id,z,nome,lhs,rhs,abs_err,rel_err\n");
            for (id, records) in &details {
                for r in records {
                    s.push_str(&format!(
                        "{id},{},{},{},{},{:e},{:e}\n",
                        fmt_complex(r.z.0),
                        fmt_complex(r.nome.0),
                        fmt_complex(r.lhs.0),
                        fmt_complex(r.rhs.0),
                        r.abs_err,
                        r.rel_err
                    ));
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let status = if r.pass { "PASS" } else { "FAIL" };
                s.push_str(&format!(
                    "{status} {:10} max_rel_err = {:.3e}",
                    r.id, r.max_rel_err
                ));
                if let Some(w) = &r.worst {
                    s.push_str(&format!(
                        "  (worst at z = {}, q = {})",
                        fmt_complex(w.z.0),
                        fmt_complex(w.nome.0)
                    ));
                }
                if let Some(e) = &r.error {
                    s.push_str(&format!("  error: {e}"));
                }
                s.push('\n');
            }
            s
        }
    };
    emit(output, body)?;
    Ok(if all_pass {
        EXIT_PASS
    } else {
        EXIT_VERIFICATION_FAILURE
    })
}

fn cmd_prove(ids: &[String], order: Option<i64>, output: &OutputArgs) -> Result<u8, Error> {
    let ids = resolve_ids(ids, true)?;
    let mut reports: Vec<(ProofReport, std::time::Duration)> = Vec::new();
    for id in &ids {
        let t = std::time::Instant::now();
        let report = formal::prove(id, order)?;
        reports.push((report, t.elapsed()));
    }

    let any_refuted = reports
        .iter()
        .any(|(r, _)| r.outcome == ProofOutcome::Refuted);
    let any_inconclusive = reports
        .iter()
        .any(|(r, _)| r.outcome == ProofOutcome::Inconclusive);

    let body = match output.format {
        // elapsed is intentionally absent from JSON: identical runs must be
        // byte-identical
        Format::Json => {
            let plain: Vec<&ProofReport> = reports.iter().map(|(r, _)| r).collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&plain).expect("serialize")
            )
        }
        _ => {
            let mut s = String::new();
            for (r, elapsed) in &reports {
                let status = match r.outcome {
                    ProofOutcome::Verified => "VERIFIED",
                    ProofOutcome::Refuted => "REFUTED",
                    ProofOutcome::Inconclusive => "INCONCLUSIVE",
                };
                s.push_str(&format!(
                    "{status} {:10} through t^{} (root m = {}) in {:.1?}",
                    r.id, r.order, r.root_m, elapsed
                ));
                if let Some(mm) = &r.first_mismatch {
                    s.push_str(&format!(
                        "  first mismatch at t^{} u^{}: {} vs {}",
                        mm.t_exp, mm.u_exp, mm.lhs_coeff, mm.rhs_coeff
                    ));
                }
                s.push('\n');
            }
            s
        }
    };
    emit(output, body)?;
    Ok(if any_refuted {
        EXIT_VERIFICATION_FAILURE
    } else if any_inconclusive {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_PASS
    })
}
