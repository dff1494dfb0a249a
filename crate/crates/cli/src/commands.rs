use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use insdel_core::bounds::{
    bound_curve, comparison_report, hy_list_size, hy_phi1, hy_phi2, rho, rho_piecewise, unique_decoding_limit,
};
use insdel_core::codes::{helberg, rs_search_eval_points, vt_binary, vt_qary, PrimeField, ReedSolomon, DEFAULT_CODE_CAP};
use insdel_core::combinatorics::{
    claim8_sum, coefficient_a, coefficient_a_from_covers, count_v_covers, enumerate_v_covers, phi_closed_form,
    phi_coefficients, DEFAULT_FAMILY_CAP,
};
use insdel_core::figures::{emit_figure, FigureSpec};
use insdel_core::rational::to_f64;
use insdel_core::regression::{run_check, Fault, RegressionConfig};
use insdel_core::verify::{check_main_theorem, list_decodable_capped, min_levenshtein_distance};
use insdel_core::{Code, Error, Rational};
use num_traits::One;
use serde_json::{json, Value};

use crate::{BoundArgs, BoundCmd, Cli, CodeCmd, Command, FigureArgs, FigureId, IdentityCmd, RegressArgs, VerifyCmd};

const RHO_NAME: &str = "piecewise-linear list-decoding bound rho(delta, L)";
const RHO_CONDITION: &str = "list-decodable when tau_D < delta and tau_I < rho(1 - tau_D)";
const HY_NAME: &str = "quadratic list-decoding bound min(phi1, phi2)";
const UNIQUE_NAME: &str = "unique decoding bound tau_I + tau_D < delta";

/// Bad arguments that clap cannot catch on its own.
#[derive(Debug)]
struct InputError(String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn bad_input(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

pub fn exit_code_for(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<InputError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. }) => 1,
        Some(_) => 2,
        None => 1,
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn print_json(value: &Value) -> Result<()> {
    write_output(None, &format!("{}\n", serde_json::to_string_pretty(value)?))
}

pub fn run(cli: &Cli) -> Result<ExitCode> {
    if let Some(workers) = cli.workers {
        if workers == 0 {
            return Err(bad_input("--workers must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .context("configuring the worker pool")?;
    }
    match &cli.command {
        Command::Bound(cmd) => bound(cmd),
        Command::Identity(cmd) => identity(cmd),
        Command::Code(cmd) => code(cmd, cli.seed.unwrap_or(1)),
        Command::Verify(cmd) => verify(cmd, cli.cap),
        Command::Figure(args) => figure(args),
        Command::Regress(args) => regress(args, cli),
    }
}

fn curve_csv(args: &BoundArgs) -> Result<()> {
    let mut csv = String::from("tau_d,rho,phi1,phi2,unique\n");
    for p in bound_curve(&args.delta, args.list_size, args.points, args.alphabet)? {
        csv.push_str(&format!("{},{},{},{},{}\n", p.tau_d, p.rho, p.phi1, p.phi2, p.unique));
    }
    write_output(args.csv.as_deref(), &csv)
}

fn rational_json(value: &Rational) -> Value {
    json!({ "exact": value.to_string(), "approx": to_f64(value) })
}

fn bound(cmd: &BoundCmd) -> Result<ExitCode> {
    match cmd {
        BoundCmd::Rho(args) => {
            let Some(tau_d) = &args.tau_d else {
                curve_csv(args)?;
                return Ok(ExitCode::SUCCESS);
            };
            let x = Rational::one() - tau_d;
            let value = rho(&args.delta, args.list_size, &x)?;
            let active = rho_piecewise(&args.delta, args.list_size)?.piece_at(&x)?.r;
            let unique = if *tau_d < args.delta {
                Some(rational_json(&unique_decoding_limit(&args.delta, tau_d)?))
            } else {
                None
            };
            print_json(&json!({
                "bound": RHO_NAME,
                "condition": RHO_CONDITION,
                "inputs": { "delta": args.delta.to_string(), "list_size": args.list_size, "tau_d": tau_d.to_string() },
                "x": x.to_string(),
                "rho": rational_json(&value),
                "active_piece_r": active,
                "unique_limit": unique,
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        BoundCmd::Hy { common, tau_i } => {
            let Some(tau_d) = &common.tau_d else {
                if tau_i.is_some() {
                    return Err(bad_input("--tau-i needs --tau-d"));
                }
                curve_csv(common)?;
                return Ok(ExitCode::SUCCESS);
            };
            let x = Rational::one() - tau_d;
            let phi1 = hy_phi1(&common.delta, &x)?;
            let phi2 = hy_phi2(&common.delta, common.list_size, &x)?;
            let guaranteed = match tau_i {
                Some(t) => hy_list_size(&common.delta, t, tau_d)?.map(|l| l.to_string()),
                None => None,
            };
            print_json(&json!({
                "bound": HY_NAME,
                "inputs": {
                    "delta": common.delta.to_string(),
                    "list_size": common.list_size,
                    "tau_d": tau_d.to_string(),
                    "tau_i": tau_i.as_ref().map(ToString::to_string),
                },
                "phi1": rational_json(&phi1),
                "phi2": rational_json(&phi2),
                "min": rational_json(if phi1 < phi2 { &phi1 } else { &phi2 }),
                "guaranteed_list_size": guaranteed,
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        BoundCmd::Compare { delta, list_size } => {
            let report = comparison_report(delta, *list_size)?;
            print_json(&json!({
                "bounds": [RHO_NAME, HY_NAME, UNIQUE_NAME],
                "report": report,
            }))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn identity_json(name: &str, inputs: Value, value: Value, oracle: Value) -> Result<ExitCode> {
    let agree = value == oracle;
    print_json(&json!({
        "identity": name,
        "inputs": inputs,
        "value": value,
        "oracle_value": oracle,
        "agree": agree,
    }))?;
    Ok(status(agree))
}

fn identity(cmd: &IdentityCmd) -> Result<ExitCode> {
    match *cmd {
        IdentityCmd::Covers { j, ell, v } => {
            if j == 0 || ell == 0 || v == 0 {
                return Err(bad_input("j, ell and v must be positive"));
            }
            let value = count_v_covers(j, ell, v);
            let oracle = enumerate_v_covers(j, ell, v, DEFAULT_FAMILY_CAP)?;
            identity_json(
                "cover count: recursion vs enumeration",
                json!({ "j": j, "ell": ell, "v": v }),
                json!(value.to_string()),
                json!(oracle.to_string()),
            )
        }
        IdentityCmd::Ajv { j, v } => {
            if j == 0 || v == 0 {
                return Err(bad_input("j and v must be positive"));
            }
            identity_json(
                "inclusion-exclusion coefficient: closed form vs signed cover-count sum",
                json!({ "j": j, "v": v }),
                json!(coefficient_a(j, v).to_string()),
                json!(coefficient_a_from_covers(j, v).to_string()),
            )
        }
        IdentityCmd::Claim8 { j, v } => {
            let value = claim8_sum(j, v)?;
            identity_json(
                "alternating binomial sum equals one",
                json!({ "j": j, "v": v }),
                json!(value.to_string()),
                json!("1"),
            )
        }
        IdentityCmd::Phi { list_size, r } => {
            let row = phi_coefficients(list_size, r)?;
            let closed: Vec<Option<String>> = (1..=list_size + 1)
                .map(|j| phi_closed_form(r, j).map(|c| c.to_string()))
                .collect();
            let invariants = row.check_invariants();
            print_json(&json!({
                "identity": "combination coefficient row",
                "inputs": { "list_size": list_size, "r": r },
                "value": row,
                "oracle_value": closed,
                "invariants": match &invariants { Ok(()) => "ok".to_string(), Err(e) => e.clone() },
            }))?;
            Ok(status(invariants.is_ok()))
        }
    }
}

fn emit_code(code: &Code, out: Option<&Path>) -> Result<ExitCode> {
    write_output(out, &code.to_file_string())?;
    Ok(ExitCode::SUCCESS)
}

fn code(cmd: &CodeCmd, seed: u64) -> Result<ExitCode> {
    match cmd {
        CodeCmd::Vt { n, a, out } => emit_code(&vt_binary(*n, *a)?, out.out.as_deref()),
        CodeCmd::Vtq { n, q, a, b, out } => emit_code(&vt_qary(*n, *q, *a, *b)?, out.out.as_deref()),
        CodeCmd::Helberg { q, n, s, a, modulus, out } => {
            emit_code(&helberg(*q, *n, *s, *a, *modulus)?, out.out.as_deref())
        }
        CodeCmd::Rs {
            p,
            n,
            k,
            alpha,
            search,
            budget,
            report,
            out,
        } => {
            let field = PrimeField::new(*p)?;
            let alpha = if *search {
                let found = rs_search_eval_points(field, *n, *k, *budget, seed)?;
                let text = format!("{}\n", serde_json::to_string_pretty(&found)?);
                match report {
                    Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
                    None => eprint!("{text}"),
                }
                found.best_alpha
            } else {
                alpha.clone().unwrap_or_else(|| (0..*n as u32).collect())
            };
            if alpha.len() != *n {
                return Err(bad_input(format!("expected {n} evaluation points, got {}", alpha.len())));
            }
            let code = ReedSolomon::new(field, *k, alpha)?.to_code(DEFAULT_CODE_CAP)?;
            emit_code(&code, out.out.as_deref())
        }
    }
}

fn load_code(path: &Path) -> Result<Code> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Code::parse_file(&text)?)
}

fn verify(cmd: &VerifyCmd, cap: u128) -> Result<ExitCode> {
    match cmd {
        VerifyCmd::Mindist { code } => {
            let code = load_code(&code.code)?;
            let d = min_levenshtein_distance(&code)?;
            let delta = insdel_core::rational::rat(d as i64, 2 * code.length() as i64);
            print_json(&json!({
                "q": code.q(),
                "n": code.length(),
                "size": code.size(),
                "min_distance": d,
                "relative_distance": rational_json(&delta),
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        VerifyCmd::ListDecodable {
            code,
            ti,
            td,
            list_size,
            witness,
        } => {
            let code = load_code(&code.code)?;
            let mut verdict = list_decodable_capped(&code, *ti, *td, *list_size, cap)?;
            if !witness {
                verdict.witness = None;
            }
            print_json(&serde_json::to_value(&verdict)?)?;
            Ok(ExitCode::SUCCESS)
        }
        VerifyCmd::Theorem { code, list_size } => {
            let code = load_code(&code.code)?;
            let report = check_main_theorem(&code, *list_size, cap)?;
            print_json(&json!({
                "bound": RHO_NAME,
                "condition": RHO_CONDITION,
                "holds": report.holds(),
                "report": report,
            }))?;
            Ok(status(report.holds()))
        }
    }
}

fn figure(args: &FigureArgs) -> Result<ExitCode> {
    let spec = match args.id {
        FigureId::Fig1 => match FigureSpec::fig1_default() {
            FigureSpec::Comparison { delta, list_size } => FigureSpec::Comparison {
                delta: args.delta.clone().unwrap_or(delta),
                list_size: args.list_size.unwrap_or(list_size),
            },
            _ => unreachable!(),
        },
        FigureId::Fig2 => match FigureSpec::fig2_default() {
            FigureSpec::Curves { delta, list_sizes } => FigureSpec::Curves {
                delta: args.delta.clone().unwrap_or(delta),
                list_sizes: args.list_sizes.clone().unwrap_or(list_sizes),
            },
            _ => unreachable!(),
        },
        FigureId::Fig3 => match FigureSpec::fig3_default() {
            FigureSpec::RsRegion { list_size, rates } => FigureSpec::RsRegion {
                list_size: args.list_size.unwrap_or(list_size),
                rates: args.rates.clone().unwrap_or(rates),
            },
            _ => unreachable!(),
        },
    };
    write_output(args.out.out.as_deref(), &emit_figure(&spec, args.points)?)?;
    Ok(ExitCode::SUCCESS)
}

fn regress(args: &RegressArgs, cli: &Cli) -> Result<ExitCode> {
    let mut config = RegressionConfig {
        cap: cli.cap,
        ..RegressionConfig::default()
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(w) = cli.workers {
        config.workers = w.max(2);
    }
    if let Some(fault) = &args.inject_phi_fault {
        let [list_size, r, j] = fault[..] else {
            return Err(bad_input("--inject-phi-fault takes L,r,j"));
        };
        if list_size < 2 || r == 0 || r > list_size || j == 0 || j > list_size + 1 {
            return Err(bad_input("--inject-phi-fault needs 2 <= L, 1 <= r <= L, 1 <= j <= L+1"));
        }
        config.fault = Some(Fault::PhiCoefficient { list_size, r, j });
    }
    let ids: Vec<u8> = match &args.only {
        Some(ids) => {
            if let Some(bad) = ids.iter().find(|&&i| !(1..=11).contains(&i)) {
                return Err(bad_input(format!("no check {bad}; ids run from 1 to 11")));
            }
            ids.iter().map(|&i| i as u8).collect()
        }
        None => (1..=11).collect(),
    };
    let mut all_ok = true;
    for id in ids {
        let outcome = run_check(id, &config);
        all_ok &= outcome.ok();
        if args.json {
            println!("{}", serde_json::to_string(&outcome)?);
        } else {
            println!("{outcome}");
        }
    }
    eprintln!("regress: {}", if all_ok { "ok" } else { "FAILED" });
    Ok(status(all_ok))
}
