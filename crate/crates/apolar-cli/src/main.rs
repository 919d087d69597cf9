//! Command-line front end for the apolar library.
//!
//! Exit codes: 0 on success, 2 on a mathematical negative (no dual exists,
//! tuple fails conjugacy, system inconsistent, numeric search below
//! tolerance), 1 on usage errors.

mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use apolar::apolarity::{catalecticant, polarize, ApolarityError};
use apolar::decompose::{numeric_waring, sylvester_binary, SylvesterOutcome};
use apolar::duality::{
    conjugate_tuple_check, dual_form, power_sum_synthesize, verify_dual_pair, vsp_certify,
    DualityError,
};
use apolar::forms::format_form;
use apolar::lattice::surface_invariants;
use apolar::scalar::format_scalar;
use apolar::secants::{cell_seed, rank_report, terracini_dim, RankReport, DEFAULT_COLUMN_BUDGET};

use input::{common_nvars, parse_degree_list, parse_form_arg, parse_form_in, parse_points, parse_scalars};
use output::{
    checks_value, form_value, matrix_lines, matrix_value, points_line, points_value,
    scalar_value, scalars_value, store_record,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
}

#[derive(Parser)]
#[command(
    name = "apolar",
    version,
    about = "Exact apolarity calculus: pairings, catalecticants, dual quartics, power-sum certificates, secant dimensions, and blown-up-plane numerology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the result as one line of JSON (stable key order)
    #[arg(long, global = true)]
    json: bool,
    /// Append a job record (one JSON object per line) to this file
    #[arg(long, global = true, value_name = "PATH")]
    store: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Full-degree apolarity pairing of two forms of opposite variance
    Pair {
        #[arg(long)]
        form: String,
        #[arg(long)]
        dual_form: String,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Polar derivative: the lower-degree form acts on the other
    Polar {
        #[arg(long)]
        form: String,
        #[arg(long)]
        dual_form: String,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Catalecticant matrix of a form in a given operator degree
    Cat {
        #[arg(long)]
        form: String,
        /// source degree k of the operator Ψ ↦ Ψ(∂)F
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Dual form of a non-degenerate even-degree form, with κ
    Dual {
        #[arg(long)]
        form: String,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Conjugacy matrix and polar-n-hedron verdict for a point tuple
    Conjugate {
        #[arg(long)]
        form: String,
        /// semicolon-separated tuples of comma-separated rationals
        #[arg(long)]
        points: String,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Exact power-sum certificate Σ αᵢHᵢ^m = F for the given points
    Certify {
        #[arg(long)]
        form: String,
        #[arg(long)]
        points: String,
        /// companion quartic of the opposite variance; attaches conjugacy
        #[arg(long)]
        dual_form: Option<String>,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Synthesize Σ αᵢHᵢ^m on the dual side
    Synth {
        #[arg(long)]
        points: String,
        /// semicolon-separated rationals, one per point
        #[arg(long)]
        alphas: String,
        #[arg(long)]
        degree: u32,
    },
    /// Exact Sylvester decomposition of a binary form
    Sylvester {
        #[arg(long)]
        form: String,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Seeded floating-point Waring search with Jacobian diagnostics
    DecomposeNumeric {
        #[arg(long)]
        form: String,
        /// number of summands
        #[arg(long)]
        n: usize,
        /// required: there is no wall-clock default
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Exact Terracini rank of the n-secant tangent span
    Terracini {
        /// form degree m
        #[arg(long)]
        degree: u32,
        /// number of variables v+1
        #[arg(long)]
        nvars: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Expected vs computed Waring ranks over a (m, v) range
    RankTable {
        #[arg(long)]
        max_m: u32,
        #[arg(long)]
        max_v: u32,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// skip cells whose monomial space exceeds this many columns
        #[arg(long, default_value_t = DEFAULT_COLUMN_BUDGET)]
        max_cols: usize,
    },
    /// Surface numerology for degree-d curves (accepts lists and ranges)
    Surface {
        #[arg(long)]
        d: String,
    },
}

struct Outcome {
    payload: Value,
    human: String,
    code: u8,
}

fn ok(payload: Value, human: String) -> Result<Outcome, CliError> {
    Ok(Outcome {
        payload,
        human,
        code: 0,
    })
}

fn negative(payload: Value, human: String) -> Result<Outcome, CliError> {
    Ok(Outcome {
        payload,
        human,
        code: 2,
    })
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    let (name, params) = describe(&cli.command);
    match run(&cli.command) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", outcome.payload);
            } else {
                println!("{}", outcome.human);
            }
            if let Some(path) = &cli.store {
                if let Err(CliError::Usage(msg)) =
                    store_record(path, name, &params, &outcome.payload)
                {
                    eprintln!("error: {msg}");
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(outcome.code)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Command name and raw parameters, for the job record digest.
fn describe(command: &Command) -> (&'static str, Value) {
    match command {
        Command::Pair { form, dual_form, nvars } => (
            "pair",
            json!({"form": form, "dual_form": dual_form, "nvars": nvars}),
        ),
        Command::Polar { form, dual_form, nvars } => (
            "polar",
            json!({"form": form, "dual_form": dual_form, "nvars": nvars}),
        ),
        Command::Cat { form, degree, nvars } => {
            ("cat", json!({"form": form, "degree": degree, "nvars": nvars}))
        }
        Command::Dual { form, nvars } => ("dual", json!({"form": form, "nvars": nvars})),
        Command::Conjugate { form, points, nvars } => (
            "conjugate",
            json!({"form": form, "points": points, "nvars": nvars}),
        ),
        Command::Certify {
            form,
            points,
            dual_form,
            nvars,
        } => (
            "certify",
            json!({"form": form, "points": points, "dual_form": dual_form, "nvars": nvars}),
        ),
        Command::Synth { points, alphas, degree } => (
            "synth",
            json!({"points": points, "alphas": alphas, "degree": degree}),
        ),
        Command::Sylvester { form, nvars } => {
            ("sylvester", json!({"form": form, "nvars": nvars}))
        }
        Command::DecomposeNumeric {
            form,
            n,
            seed,
            tol,
            nvars,
        } => (
            "decompose-numeric",
            json!({"form": form, "n": n, "seed": seed, "tol": tol, "nvars": nvars}),
        ),
        Command::Terracini {
            degree,
            nvars,
            n,
            seed,
        } => (
            "terracini",
            json!({"degree": degree, "nvars": nvars, "n": n, "seed": seed}),
        ),
        Command::RankTable {
            max_m,
            max_v,
            seed,
            max_cols,
        } => (
            "rank-table",
            json!({"max_m": max_m, "max_v": max_v, "seed": seed, "max_cols": max_cols}),
        ),
        Command::Surface { d } => ("surface", json!({"d": d})),
    }
}

fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Pair { form, dual_form, nvars } => {
            let n = common_nvars(&[form, dual_form], None, *nvars)?;
            let f = parse_form_in(form, n)?;
            let g = parse_form_in(dual_form, n)?;
            let value = apolar::apolarity::apolar_pair(&g, &f)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            ok(
                json!({"pairing": scalar_value(&value)}),
                format!("pairing = {}", format_scalar(&value)),
            )
        }
        Command::Polar { form, dual_form, nvars } => {
            let n = common_nvars(&[form, dual_form], None, *nvars)?;
            let f = parse_form_in(form, n)?;
            let g = parse_form_in(dual_form, n)?;
            let (operator, target) = if g.degree() <= f.degree() {
                (&g, &f)
            } else {
                (&f, &g)
            };
            let polar = polarize(operator, target).map_err(|e| CliError::Usage(e.to_string()))?;
            ok(
                json!({"polar": form_value(&polar)}),
                format!("polar = {}", format_form(&polar)),
            )
        }
        Command::Cat { form, degree, nvars } => {
            let f = parse_form_arg(form, *nvars)?;
            let cat = catalecticant(&f, *degree).map_err(|e| CliError::Usage(e.to_string()))?;
            let rank = cat.rank();
            let square_middle = cat.is_square() && !f.is_zero() && f.degree() == 2 * degree;
            let mut payload = json!({
                "source_degree": cat.source_degree,
                "target_degree": cat.target_degree,
                "rows": cat.matrix.rows(),
                "cols": cat.matrix.cols(),
                "matrix": matrix_value(&cat.matrix),
                "rank": rank,
            });
            let mut human = format!(
                "catalecticant S^{} -> S^{} ({}x{}), rank {}\n{}",
                cat.source_degree,
                cat.target_degree,
                cat.matrix.rows(),
                cat.matrix.cols(),
                rank,
                matrix_lines(&cat.matrix)
            );
            if square_middle {
                let nondeg = rank == cat.matrix.cols();
                payload["nondegenerate"] = Value::Bool(nondeg);
                human.push_str(&format!("\nnondegenerate: {nondeg}"));
            }
            ok(payload, human)
        }
        Command::Dual { form, nvars } => {
            let f = parse_form_arg(form, *nvars)?;
            match dual_form(&f) {
                Ok(Some(omega)) => {
                    let kappa = if f.degree() == 4 {
                        let (check, d) = if f.variance() == apolar::Variance::Primal {
                            (f.clone(), omega.clone())
                        } else {
                            (omega.clone(), f.clone())
                        };
                        verify_dual_pair(&check, &d).map(|p| p.kappa).map_err(|e| {
                            CliError::Usage(format!("internal verification failed: {e}"))
                        })?
                    } else {
                        apolar::scalar::scalar(1)
                    };
                    ok(
                        json!({"dual": form_value(&omega), "kappa": scalar_value(&kappa)}),
                        format!(
                            "dual = {}\nkappa = {}",
                            format_form(&omega),
                            format_scalar(&kappa)
                        ),
                    )
                }
                Ok(None) => negative(
                    json!({"dual": null, "reason": "inverse operator is not a catalecticant"}),
                    "no dual form exists: the inverse operator matches no form".to_string(),
                ),
                Err(DualityError::Degenerate { rank }) => negative(
                    json!({"dual": null, "reason": "degenerate", "rank": rank}),
                    format!("no dual form: middle catalecticant is singular (rank {rank})"),
                ),
                Err(e) => usage(e.to_string()),
            }
        }
        Command::Conjugate { form, points, nvars } => {
            let pts = parse_points(points)?;
            let n = common_nvars(&[form], Some(pts[0].len()), *nvars)?;
            if pts[0].len() != n {
                return usage(format!(
                    "--points tuples have {} coordinates but the form has {n} variables",
                    pts[0].len()
                ));
            }
            let f = parse_form_in(form, n)?;
            let report = conjugate_tuple_check(&f, &pts).map_err(|e| match e {
                DualityError::Apolarity(ApolarityError::NotPrimal) => CliError::Usage(
                    "conjugate needs the primal quartic (x variables)".to_string(),
                ),
                other => CliError::Usage(other.to_string()),
            })?;
            let payload = json!({
                "matrix": matrix_value(&report.matrix),
                "pass": report.pass,
                "off_diagonal_failures": report.offdiag_failures,
                "zero_diagonal": report.zero_diagonal,
                "squares_independent": report.squares_independent,
            });
            let human = format!(
                "conjugacy matrix:\n{}\nverdict: {}\nsquares independent: {}",
                matrix_lines(&report.matrix),
                if report.pass { "PASS" } else { "FAIL" },
                report.squares_independent
            );
            if report.pass {
                ok(payload, human)
            } else {
                negative(payload, human)
            }
        }
        Command::Certify {
            form,
            points,
            dual_form: companion,
            nvars,
        } => {
            let pts = parse_points(points)?;
            let mut texts: Vec<&str> = vec![form];
            if let Some(c) = companion {
                texts.push(c);
            }
            let n = common_nvars(&texts, Some(pts[0].len()), *nvars)?;
            if pts[0].len() != n {
                return usage(format!(
                    "--points tuples have {} coordinates but the forms have {n} variables",
                    pts[0].len()
                ));
            }
            let f = parse_form_in(form, n)?;
            let companion_form = companion
                .as_ref()
                .map(|c| parse_form_in(c, n))
                .transpose()?;
            match vsp_certify(&f, &pts, companion_form.as_ref()) {
                Ok(cert) => {
                    let mut payload = json!({
                        "form": form_value(&cert.form),
                        "points": points_value(&cert.points),
                        "alphas": scalars_value(&cert.alphas),
                        "checks": checks_value(&cert.checks),
                    });
                    if let Some(kappa) = &cert.kappa {
                        payload["kappa"] = scalar_value(kappa);
                    }
                    if let Some(matrix) = &cert.conjugacy_matrix {
                        payload["conjugacy_matrix"] = matrix_value(matrix);
                    }
                    let alphas: Vec<String> = cert.alphas.iter().map(format_scalar).collect();
                    let mut human = format!("alphas = {}", alphas.join("; "));
                    for (name, value) in &cert.checks {
                        human.push_str(&format!("\n{name}: {value}"));
                    }
                    if let Some(kappa) = &cert.kappa {
                        human.push_str(&format!("\nkappa: {}", format_scalar(kappa)));
                    }
                    ok(payload, human)
                }
                Err(DualityError::Inconsistent) => negative(
                    json!({"error": "inconsistent"}),
                    "not representable: the linear system has no solution".to_string(),
                ),
                Err(DualityError::ZeroAlpha { index }) => negative(
                    json!({"error": "zero_alpha", "index": index}),
                    format!(
                        "representable only with alpha = 0 at point {index}: fewer points suffice"
                    ),
                ),
                Err(e) => usage(e.to_string()),
            }
        }
        Command::Synth { points, alphas, degree } => {
            let pts = parse_points(points)?;
            let al = parse_scalars(alphas, "--alphas")?;
            let report = power_sum_synthesize(&pts, &al, *degree)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let mut payload = json!({"form": form_value(&report.form)});
            let mut human = format!("form = {}", format_form(&report.form));
            if let Some(ind) = report.half_powers_independent {
                payload["half_powers_independent"] = Value::Bool(ind);
                human.push_str(&format!("\nhalf powers independent: {ind}"));
            }
            if let Some(nd) = report.nondegenerate {
                payload["nondegenerate"] = Value::Bool(nd);
                human.push_str(&format!("\nnondegenerate: {nd}"));
            }
            ok(payload, human)
        }
        Command::Sylvester { form, nvars } => {
            // a lone x0-power is still a binary form here
            let n = common_nvars(&[form], None, *nvars)?;
            let n = if nvars.is_none() { n.max(2) } else { n };
            let f = parse_form_in(form, n)?;
            match sylvester_binary(&f).map_err(|e| CliError::Usage(e.to_string()))? {
                SylvesterOutcome::Decomposition(d) => {
                    let payload = json!({
                        "rank": d.rank,
                        "points": points_value(&d.points()),
                        "alphas": scalars_value(&d.alphas),
                        "exact": d.exact,
                        "unique": d.unique,
                        "apolar_degree": d.apolar_degree,
                    });
                    let alphas: Vec<String> = d.alphas.iter().map(format_scalar).collect();
                    let human = format!(
                        "rank {} decomposition\npoints: {}\nalphas: {}\nunique: {}\napolar degree: {}",
                        d.rank,
                        points_line(&d.points()),
                        alphas.join("; "),
                        d.unique,
                        d.apolar_degree
                    );
                    ok(payload, human)
                }
                SylvesterOutcome::Obstruction(o) => {
                    let payload = json!({
                        "obstruction": {
                            "min_apolar_degree": o.min_apolar_degree,
                            "witness": form_value(&o.witness),
                            "squarefree": o.squarefree,
                            "fully_rational": o.fully_rational,
                            "enumeration_complete": o.enumeration_complete,
                        }
                    });
                    let human = format!(
                        "no exact rational decomposition\nminimal apolar degree: {}\nwitness: {}\nsquarefree: {}\nall roots rational: {}\nenumeration complete: {}",
                        o.min_apolar_degree,
                        format_form(&o.witness),
                        o.squarefree,
                        o.fully_rational,
                        o.enumeration_complete
                    );
                    negative(payload, human)
                }
            }
        }
        Command::DecomposeNumeric {
            form,
            n,
            seed,
            tol,
            nvars,
        } => {
            if *n == 0 {
                return usage("--n must be at least 1");
            }
            let f = parse_form_arg(form, *nvars)?;
            if f.is_zero() || f.degree() == 0 {
                return usage("--form must be a nonzero form of positive degree");
            }
            let result = numeric_waring(&f, *n, *seed, *tol);
            let payload = json!({
                "converged": result.converged,
                "residual": result.residual,
                "points": result.points,
                "alphas": result.alphas,
                "jacobian_rank": result.jacobian_rank,
                "jacobian_nullity": result.jacobian_nullity,
                "iterations": result.iterations,
                "restarts": result.restarts,
                "seed": seed,
                "tol": tol,
            });
            let points: Vec<String> = result
                .points
                .iter()
                .map(|p| {
                    let coords: Vec<String> = p.iter().map(|c| format!("{c:.6}")).collect();
                    format!("({})", coords.join(","))
                })
                .collect();
            let alphas: Vec<String> = result.alphas.iter().map(|a| format!("{a:.6}")).collect();
            let human = format!(
                "converged: {} (residual {:.3e}, tol {:.1e})\npoints: {}\nalphas: {}\njacobian rank {} nullity {}\niterations {} restarts {}",
                result.converged,
                result.residual,
                tol,
                points.join(" "),
                alphas.join("; "),
                result.jacobian_rank,
                result.jacobian_nullity,
                result.iterations,
                result.restarts
            );
            if result.converged {
                ok(payload, human)
            } else {
                negative(payload, human)
            }
        }
        Command::Terracini {
            degree,
            nvars,
            n,
            seed,
        } => {
            if *nvars < 2 {
                return usage("--nvars must be at least 2");
            }
            if *degree < 1 || *n < 1 {
                return usage("--degree and --n must be at least 1");
            }
            let v = (*nvars - 1) as u32;
            let out = terracini_dim(*degree, v, *n, *seed);
            let payload = json!({
                "m": degree,
                "v": v,
                "n": n,
                "rank": out.rank,
                "expected": out.expected,
                "defect": out.defect,
                "seeds": out.seeds,
                "seed_ranks": out.seed_ranks,
                "redraws": out.redraws,
            });
            let human = format!(
                "terracini dimension {} (expected {}, defect {})\nseeds {:?} ranks {:?} redraws {}",
                out.rank, out.expected, out.defect, out.seeds, out.seed_ranks, out.redraws
            );
            ok(payload, human)
        }
        Command::RankTable {
            max_m,
            max_v,
            seed,
            max_cols,
        } => {
            if *max_m < 2 || *max_v < 1 {
                return usage("--max-m must be at least 2 and --max-v at least 1");
            }
            let cells: Vec<(u32, u32)> = (2..=*max_m)
                .flat_map(|m| (1..=*max_v).map(move |v| (m, v)))
                .collect();
            // rows are independent; fan out and emit in input order
            let reports: Vec<RankReport> = std::thread::scope(|scope| {
                let handles: Vec<_> = cells
                    .iter()
                    .map(|&(m, v)| {
                        scope.spawn(move || rank_report(m, v, cell_seed(*seed, m, v), *max_cols))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            });
            let rows: Vec<Value> = reports.iter().map(rank_row_value).collect();
            let human = rank_table_text(&reports);
            ok(json!({"rows": rows}), human)
        }
        Command::Surface { d } => {
            let degrees = parse_degree_list(d)?;
            if let Some(bad) = degrees.iter().find(|&&deg| deg < 5) {
                return usage(format!("--d: degree {bad} is below the supported minimum 5"));
            }
            let reports: Vec<_> = std::thread::scope(|scope| {
                let handles: Vec<_> = degrees
                    .iter()
                    .map(|&deg| scope.spawn(move || surface_invariants(deg)))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().unwrap())
                    .collect::<Result<Vec<_>, _>>()
            })
            .map_err(|e| CliError::Usage(e.to_string()))?;
            let rows: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "d": r.d,
                        "s": r.s,
                        "n": r.n,
                        "g": r.g,
                        "class_dl": r.class_dl.to_string(),
                        "class_dq": r.class_dq.to_string(),
                        "class_gamma": r.class_gamma.to_string(),
                        "class_k": r.class_k.to_string(),
                        "dl_squared": r.dl_squared,
                        "deg_gamma": r.deg_gamma,
                        "pa_gamma": r.pa_gamma,
                        "chi_dl": r.chi_dl,
                        "h0_dl": r.h0_dl,
                        "deg_theta": r.deg_theta,
                        "n_equals_dim_s2": r.n_equals_dim_s2,
                        "vanishing_assumed": r.vanishing_assumed,
                        "embeds": r.embeds,
                    })
                })
                .collect();
            let mut human = format!(
                "{:>3} {:>4} {:>4} {:>3} {:>12} {:>12} {:>5} {:>5} {:>5} {:>6} {:>4} {:>5} {:>6}\n",
                "d", "s", "n", "g", "D_l", "Gamma", "Dl^2", "degG", "paG", "chiDl", "h0", "degT",
                "embeds"
            );
            for r in &reports {
                human.push_str(&format!(
                    "{:>3} {:>4} {:>4} {:>3} {:>12} {:>12} {:>5} {:>5} {:>5} {:>6} {:>4} {:>5} {:>6}\n",
                    r.d,
                    r.s,
                    r.n,
                    r.g,
                    r.class_dl.to_string(),
                    r.class_gamma.to_string(),
                    r.dl_squared,
                    r.deg_gamma,
                    r.pa_gamma,
                    r.chi_dl,
                    r.h0_dl,
                    r.deg_theta,
                    r.embeds
                ));
            }
            human.pop();
            ok(json!({"rows": rows}), human)
        }
    }
}

fn rank_row_value(r: &RankReport) -> Value {
    let probes: Vec<Value> = r
        .terracini_results
        .iter()
        .map(|row| {
            json!({
                "n": row.n,
                "expected_dim": row.expected_dim,
                "computed_dim": row.computed_dim,
                "defect": row.defect,
                "seeds": row.outcome.seeds,
            })
        })
        .collect();
    json!({
        "m": r.m,
        "v": r.v,
        "N": r.big_n,
        "expected_rank": r.expected_rank,
        "true_rank": r.true_rank,
        "exceptional": r.exceptional,
        "skipped": r.skipped,
        "probes": probes,
    })
}

fn rank_table_text(reports: &[RankReport]) -> String {
    let mut out = format!(
        "{:>3} {:>3} {:>4} {:>9} {:>9} {:>12} {:>8}\n",
        "m", "v", "N", "expected", "true", "exceptional", "skipped"
    );
    for r in reports {
        let true_rank = r
            .true_rank
            .map(|n| n.to_string())
            .unwrap_or_else(|| "-".to_string());
        out.push_str(&format!(
            "{:>3} {:>3} {:>4} {:>9} {:>9} {:>12} {:>8}\n",
            r.m,
            r.v,
            r.big_n,
            r.expected_rank,
            true_rank,
            if r.exceptional { "yes" } else { "no" },
            if r.skipped { "yes" } else { "no" }
        ));
    }
    out.pop();
    out
}
