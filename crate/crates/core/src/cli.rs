//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 domain error.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;

use crate::elliptic::{multiple_of_generator, point_to_deg5, point_to_deg7};
use crate::error::Error;
use crate::families::{generate_named, FamilyId};
use crate::fermat::{fermat_steps, QuarticForm};
use crate::format::{parse_solution, to_json};
use crate::poly::verify_identity_family;
use crate::rational::{parse_q, Q};
use crate::search::{brute_force, SearchOptions, DEFAULT_SAFETY_LIMIT};
use crate::shift::shift_chain;
use crate::solution::{classify_symmetry, reduce, verify_degree, MultigradeSolution};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Environment variable overriding the search safety limit.
pub const SAFETY_ENV: &str = "PTE_SAFETY_BOUND";

#[derive(Debug, Parser)]
#[command(
    name = "pte",
    version,
    about = "Exact tools for the Tarry-Escott problem",
    allow_negative_numbers = true
)]
struct Cli {
    /// Emit JSON instead of the text format.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Read the solution from a file instead of stdin.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check power sums for exponents 1..=cap.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Highest exponent to check; defaults to the claimed degree.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Print the reduced canonical form.
    Reduce {
        #[command(flatten)]
        input: Input,
    },
    /// Print the symmetry class of the reduced form.
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Apply Tarry shifts by each --h in turn.
    Shift {
        #[command(flatten)]
        input: Input,
        #[arg(long = "h", required = true, allow_hyphen_values = true)]
        h: Vec<BigInt>,
    },
    /// Evaluate a parametric family.
    Family {
        id: String,
        /// Comma-separated `name=value` pairs; may be repeated.
        #[arg(long, allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Check a family's identities symbolically.
    Prove { id: String },
    /// Solutions from multiples of the generator of the progression curve.
    Ec {
        #[arg(long, allow_hyphen_values = true)]
        multiple: i64,
        #[arg(long, conflicts_with = "deg7")]
        deg5: bool,
        #[arg(long)]
        deg7: bool,
    },
    /// Fermat ascent on y^2 = c0 + c1 t + c2 t^2 + c3 t^3 + c4 t^4.
    Fermat {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Brute-force search; prints one JSON solution per line.
    Search {
        #[arg(long)]
        k: u32,
        /// Side size; defaults to k + 1.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

/// Maps a library error to an exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::UnknownFamily(_)
        | Error::MissingParameter(_)
        | Error::BoundTooLarge { .. }
        | Error::SideCardinalityMismatch { .. } => EXIT_USAGE,
        Error::NotASolution { .. } | Error::IdentityFails { .. } => EXIT_FAILED,
        _ => EXIT_DOMAIN,
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    json: bool,
    safety: Option<String>,
}

/// Runs the CLI with the process environment.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_safety(args, std::env::var(SAFETY_ENV).ok(), stdin, stdout, stderr)
}

/// Runs the CLI with an explicit value for the safety-limit variable.
pub fn run_with_safety<I, T>(
    args: I,
    safety: Option<String>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let mut io = Io {
        stdin,
        out: stdout,
        json: cli.json,
        safety,
    };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}: {e}", e.kind());
            exit_code(&e)
        }
    }
}

type CmdResult = Result<i32, Error>;

fn dispatch(cmd: Command, io: &mut Io) -> CmdResult {
    match cmd {
        Command::Verify { input, cap } => cmd_verify(io, &input, cap),
        Command::Reduce { input } => {
            let sol = read_solution(io, &input)?;
            emit(io, &reduce(&sol)?)?;
            Ok(EXIT_OK)
        }
        Command::Classify { input } => {
            let sol = read_solution(io, &input)?;
            let class = classify_symmetry(&sol);
            if io.json {
                line(io, &json!({ "class": class.to_string() }).to_string())?;
            } else {
                line(io, &class.to_string())?;
            }
            Ok(EXIT_OK)
        }
        Command::Shift { input, h } => {
            let sol = read_solution(io, &input)?;
            emit(io, &shift_chain(&sol, &h)?)?;
            Ok(EXIT_OK)
        }
        Command::Family { id, params } => {
            let id: FamilyId = id.parse()?;
            let params = parse_params(&params)?;
            emit(io, &generate_named(id, &params)?)?;
            Ok(EXIT_OK)
        }
        Command::Prove { id } => {
            let id: FamilyId = id.parse()?;
            verify_identity_family(id)?;
            let msg = format!("{id}: identity holds for r = 1..={}", id.degree());
            if id.equal_products() {
                line(io, &format!("{msg}, products agree"))?;
            } else {
                line(io, &msg)?;
            }
            Ok(EXIT_OK)
        }
        Command::Ec { multiple, deg7, .. } => {
            let p = multiple_of_generator(multiple)?;
            let sol = if deg7 {
                point_to_deg7(&p)?
            } else {
                point_to_deg5(&p)?
            };
            emit(io, &sol)?;
            Ok(EXIT_OK)
        }
        Command::Fermat {
            coeffs,
            start,
            steps,
        } => cmd_fermat(io, &coeffs, &start, steps),
        Command::Search { k, s, bound, jobs } => {
            let safety_limit = match &io.safety {
                Some(v) => v.trim().parse().map_err(|_| {
                    Error::Parse(format!(
                        "{SAFETY_ENV} must be a nonnegative integer, got {v:?}"
                    ))
                })?,
                None => DEFAULT_SAFETY_LIMIT,
            };
            let opts = SearchOptions { jobs, safety_limit };
            for sol in brute_force(k, s.unwrap_or(k as usize + 1), bound, &opts)? {
                line(io, &to_json(&sol))?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn cmd_verify(io: &mut Io, input: &Input, cap: Option<u32>) -> CmdResult {
    let sol = read_solution(io, input)?;
    let cap = cap.unwrap_or(sol.degree);
    let report = verify_degree(&sol, cap)?;
    let ok = report.max_degree >= sol.degree.min(cap);
    if io.json {
        let table: Vec<_> = report
            .per_exponent
            .iter()
            .map(|(r, holds)| json!({ "r": r, "holds": holds }))
            .collect();
        let doc = json!({
            "per_exponent": table,
            "max_degree": report.max_degree,
            "claimed": sol.degree,
            "verified": ok,
        });
        line(io, &doc.to_string())?;
    } else {
        for (r, holds) in &report.per_exponent {
            line(
                io,
                &format!("r={r} {}", if *holds { "holds" } else { "fails" }),
            )?;
        }
        line(io, &format!("max_degree={}", report.max_degree))?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_fermat(io: &mut Io, coeffs: &str, start: &str, steps: usize) -> CmdResult {
    let c: Vec<Q> = coeffs.split(',').map(parse_q).collect::<Result<_, _>>()?;
    let c: [Q; 5] = c
        .try_into()
        .map_err(|v: Vec<Q>| Error::Parse(format!("expected 5 coefficients, got {}", v.len())))?;
    let f = QuarticForm::new(c)?;
    let t0 = parse_q(start)?;
    for t in fermat_steps(&f, &t0, steps)? {
        let w = f
            .eval_square(&t)
            .ok_or_else(|| Error::NotASquare(format!("f({t})")))?;
        if io.json {
            line(
                io,
                &json!({ "t": t.to_string(), "sqrt": w.to_string() }).to_string(),
            )?;
        } else {
            line(io, &format!("t={t} sqrt={w}"))?;
        }
    }
    Ok(EXIT_OK)
}

fn parse_params(raw: &[String]) -> Result<Vec<(String, String)>, Error> {
    raw.iter()
        .flat_map(|chunk| chunk.split(','))
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Parse(format!("expected name=value, got {p:?}")))
        })
        .collect()
}

fn read_solution(io: &mut Io, input: &Input) -> Result<MultigradeSolution, Error> {
    let text = match &input.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            io.stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    parse_solution(&text)
}

fn emit(io: &mut Io, sol: &MultigradeSolution) -> Result<(), Error> {
    let text = if io.json {
        to_json(sol)
    } else {
        sol.to_string()
    };
    line(io, &text)
}

fn line(io: &mut Io, text: &str) -> Result<(), Error> {
    writeln!(io.out, "{text}").map_err(|e| Error::Parse(format!("write failed: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        call_env(args, stdin, None)
    }

    fn call_env(args: &[&str], stdin: &str, safety: Option<&str>) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("pte").chain(args.iter().copied());
        let code = run_with_safety(
            argv,
            safety.map(String::from),
            &mut input,
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    const EXAMPLE: &str = "57 -22 40 -61 -14 | 19 16 -42 62 -55 @ 4";

    #[test]
    fn verify_table() {
        let (code, out, _) = call(&["verify", "--cap", "6"], EXAMPLE);
        assert_eq!(code, 0);
        assert!(out.contains("r=5 fails"));
        assert!(out.contains("r=6 holds"));
        assert!(out.ends_with("max_degree=4\n"));
    }

    #[test]
    fn verify_failure_and_malformed() {
        assert_eq!(call(&["verify"], "1 2 | 3 4 @ 1").0, 1);
        let (code, _, err) = call(&["verify"], "1 2 | 3 @@");
        assert_eq!(code, 2);
        assert!(err.starts_with("error: Parse:"));
        assert_eq!(call(&["verify"], "1 2 | 3 @ 1").0, 2);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["frobnicate"], "").0, 2);
        assert_eq!(call(&["family", "Deg9"], "").0, 2);
        assert_eq!(call(&["family", "Deg7"], "").0, 2);
        assert_eq!(call(&["family", "Deg7", "--params", "n"], "").0, 2);
        assert_eq!(call(&["--help"], "").0, 0);
    }

    #[test]
    fn domain_errors() {
        let (code, _, err) = call(&["family", "Deg4A", "--params", "m1=1,m2=-1"], "");
        assert_eq!(code, 3, "{err}");
        assert_eq!(call(&["ec", "--multiple", "1", "--deg5"], "").0, 3);
        assert_eq!(call(&["reduce"], "1 2 | 3 5 @ 1").0, 3);
    }

    #[test]
    fn negative_arguments() {
        let (code, out, _) = call(&["shift", "--h", "-3"], "1 5 6 | 2 3 7 @ 2");
        assert_eq!(code, 0);
        assert!(parse_solution(&out).unwrap().is_valid());
        let (code, out, err) = call(&["family", "Deg5Nonsym", "--params", "f=2,g=-1"], "");
        assert_eq!(code, 0, "{err}");
        assert_eq!(parse_solution(&out).unwrap().degree, 5);
    }

    #[test]
    fn json_switch() {
        let (code, out, _) = call(&["--json", "reduce"], "1 5 6 | 2 3 7 @ 2");
        assert_eq!(code, 0);
        assert!(out.starts_with('{'));
        assert!(parse_solution(&out).unwrap().is_valid());
    }

    #[test]
    fn search_respects_safety_variable() {
        let args = ["search", "--k", "2", "--bound", "8"];
        let (code, out, _) = call_env(&args, "", None);
        assert_eq!(code, 0);
        assert!(out.lines().all(|l| parse_solution(l).unwrap().is_valid()));
        assert_eq!(call_env(&args, "", Some("5")).0, 2);
        assert_eq!(call_env(&args, "", Some("x")).0, 2);
    }
}
