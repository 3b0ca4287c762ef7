//! Command-line front end.
//!
//! Results go to `out`, diagnostics to `err`. Exit codes: 0 on success, 2 for
//! usage or input errors, 1 when a computed cycle fails verification.

use std::io::{self, Write};

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::cycle::{act, iterate, solve, solve_with, CycleResult, SolveOptions};
use crate::error::Error;
use crate::form::is_square;
use crate::stern_brocot::convergents;
use crate::verify::verify_cycle;
use crate::word::Mat2;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pellwalk", version, about = "Solve x² − Dy² = 1 with L/R steps on quadratic forms")]
pub struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fundamental solution, cycle word and automorphism matrix for D.
    #[command(allow_negative_numbers = true)]
    Solve {
        d: BigInt,
        /// Number of solutions N¹e, …, Nᵏe to list.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Report the x² − Dy² = −1 certificate, or that there is none.
        #[arg(long)]
        negative: bool,
        /// Print the forms visited at run boundaries.
        #[arg(long)]
        trace: bool,
    },
    /// The cycle word for D.
    #[command(allow_negative_numbers = true)]
    Word { d: BigInt },
    /// Stern–Brocot convergents to √D.
    #[command(allow_negative_numbers = true)]
    Approx {
        d: BigInt,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// One row per nonsquare D in a range.
    Table { d_min: u64, d_max: u64 },
    /// Evaluate x² − Dy² and map (x, y) to the next solution of the same value.
    #[command(allow_negative_numbers = true)]
    Verify { d: BigInt, x: BigInt, y: BigInt },
}

#[derive(Serialize)]
struct SolveDoc {
    d: String,
    word: String,
    n: [String; 4],
    x: String,
    y: String,
    solutions: Vec<[String; 2]>,
    negative: Option<NegativeDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<String>>,
}

#[derive(Serialize)]
struct NegativeDoc {
    u1: String,
    v1: String,
    m: [String; 4],
}

#[derive(Serialize)]
struct WordDoc {
    d: String,
    word: String,
}

#[derive(Serialize)]
struct TableRow {
    d: String,
    x: String,
    y: String,
    letters: String,
    negative: bool,
}

#[derive(Serialize)]
struct VerifyDoc {
    d: String,
    x: String,
    y: String,
    n: String,
    next: [String; 2],
}

fn entries(m: &Mat2) -> [String; 4] {
    m.entries().map(ToString::to_string)
}

fn write_json<T: Serialize>(out: &mut dyn Write, doc: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, doc).map_err(io::Error::other)?;
    writeln!(out)
}

fn fail(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    match e {
        Error::InternalState(_) => EXIT_VERIFY,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            code
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Solve {
            d,
            count,
            negative,
            trace,
        } => {
            let opts = SolveOptions {
                trace: *trace,
                max_steps: None,
            };
            match solve_with(d.clone(), opts) {
                Ok(res) => return render_solve(&res, *count, *negative, cli.json, out, err),
                Err(e) => Err(e),
            }
        }
        Command::Word { d } => solve(d.clone()).map(|res| {
            if cli.json {
                write_json(out, &WordDoc { d: d.to_string(), word: res.word.to_string() })
            } else {
                writeln!(out, "{}", res.word)
            }
        }),
        Command::Approx { d, count } => {
            if *count < 1 {
                let _ = writeln!(err, "error: --count must be at least 1");
                return EXIT_USAGE;
            }
            convergents(d.clone(), *count).map(|fracs| {
                let strs: Vec<String> = fracs.iter().map(ToString::to_string).collect();
                if cli.json {
                    write_json(out, &strs)
                } else {
                    strs.iter().try_for_each(|s| writeln!(out, "{s}"))
                }
            })
        }
        Command::Table { d_min, d_max } => {
            if *d_min < 2 || d_min > d_max {
                let _ = writeln!(err, "error: table needs 2 <= D_min <= D_max, got {d_min}..{d_max}");
                return EXIT_USAGE;
            }
            table(*d_min, *d_max).map(|rows| render_table(&rows, cli.json, out))
        }
        Command::Verify { d, x, y } => solve(d.clone()).map(|res| {
            let n = x * x - d * y * y;
            let (nx, ny) = act(&res.n, (x, y));
            if cli.json {
                write_json(
                    out,
                    &VerifyDoc {
                        d: d.to_string(),
                        x: x.to_string(),
                        y: y.to_string(),
                        n: n.to_string(),
                        next: [nx.to_string(), ny.to_string()],
                    },
                )
            } else {
                writeln!(out, "n: {n}").and_then(|_| writeln!(out, "next: {nx} {ny}"))
            }
        }),
    };
    match result {
        Ok(Ok(())) => EXIT_OK,
        Ok(Err(io)) => {
            let _ = writeln!(err, "error: {io}");
            EXIT_VERIFY
        }
        Err(e) => fail(err, &e),
    }
}

fn render_solve(
    res: &CycleResult,
    count: usize,
    want_negative: bool,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let report = verify_cycle(res);
    if !report.all_passed() {
        let _ = writeln!(err, "error: verification failed for D = {}", res.d);
        let _ = write!(err, "{report}");
        return EXIT_VERIFY;
    }
    let sols = iterate(res, count);
    let trace: Option<Vec<String>> = res.trace.as_ref().map(|t| {
        let mut items: Vec<String> = t.iter().flat_map(|(f, r)| [f.to_string(), r.to_string()]).collect();
        items.push(crate::Form::pell(&res.d).to_string());
        items
    });
    let written = if json {
        let doc = SolveDoc {
            d: res.d.to_string(),
            word: res.word.to_string(),
            n: entries(&res.n),
            x: res.fundamental.x.to_string(),
            y: res.fundamental.y.to_string(),
            solutions: sols.iter().map(|s| [s.x.to_string(), s.y.to_string()]).collect(),
            negative: res.negative.as_ref().map(|c| NegativeDoc {
                u1: c.u1.to_string(),
                v1: c.v1.to_string(),
                m: entries(&c.m),
            }),
            trace,
        };
        write_json(out, &doc)
    } else {
        (|| {
            writeln!(out, "D: {}", res.d)?;
            writeln!(out, "word: {}", res.word)?;
            let [a, b, c, d] = entries(&res.n);
            writeln!(out, "N: {a} {b} {c} {d}")?;
            writeln!(out, "fundamental: {} {}", res.fundamental.x, res.fundamental.y)?;
            writeln!(out, "solutions:")?;
            for s in &sols {
                writeln!(out, "  {} {}", s.x, s.y)?;
            }
            if want_negative {
                match &res.negative {
                    Some(c) => {
                        let [a, b, cc, d] = entries(&c.m);
                        writeln!(out, "negative: u1={} v1={} M: {a} {b} {cc} {d}", c.u1, c.v1)?;
                    }
                    None => writeln!(out, "negative: none")?,
                }
            }
            if let Some(t) = &trace {
                writeln!(out, "trace: {}", t.join(" "))?;
            }
            Ok(())
        })()
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_VERIFY
        }
    }
}

fn table(d_min: u64, d_max: u64) -> Result<Vec<TableRow>, Error> {
    let ds: Vec<u64> = (d_min..=d_max).filter(|&d| !is_square(&BigInt::from(d))).collect();
    ds.par_iter()
        .map(|&d| {
            let res = solve(d)?;
            Ok(TableRow {
                d: d.to_string(),
                x: res.fundamental.x.to_string(),
                y: res.fundamental.y.to_string(),
                letters: res.word.letter_count().to_string(),
                negative: res.negative.is_some(),
            })
        })
        .collect()
}

fn render_table(rows: &[TableRow], json: bool, out: &mut dyn Write) -> io::Result<()> {
    if json {
        return write_json(out, &rows);
    }
    writeln!(out, "D x y letters negative")?;
    for r in rows {
        let neg = if r.negative { "yes" } else { "no" };
        writeln!(out, "{} {} {} {} {neg}", r.d, r.x, r.y, r.letters)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["pellwalk"];
        argv.extend_from_slice(args);
        let code = run_from(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn solve_text() {
        let (code, out, _) = run_args(&["solve", "2", "--count", "2", "--negative"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "D: 2\nword: R L^2 R\nN: 3 4 2 3\nfundamental: 3 2\nsolutions:\n  3 2\n  17 12\nnegative: u1=1 v1=1 M: 2 1 1 1\n"
        );
    }

    #[test]
    fn solve_negative_none_and_trace() {
        let (code, out, _) = run_args(&["solve", "7", "--negative", "--trace"]);
        assert_eq!(code, 0);
        assert!(out.contains("negative: none\n"));
        assert!(out.contains(
            "trace: (1,0,-7) R^2 (1,2,-3) L (2,-1,-3) R (2,1,-3) L (1,-2,-3) R^2 (1,0,-7)\n"
        ));
    }

    #[test]
    fn invalid_d_exits_two() {
        let (code, out, err) = run_args(&["solve", "9"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("DIsSquare") && err.contains("square"));
        let (code, _, err) = run_args(&["word", "-3"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("DNotPositive"));
        let (code, _, _) = run_args(&["solve", "abc"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn tampered_result_exits_one() {
        let mut res = solve(2).unwrap();
        res.n.e21 += 1;
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = render_solve(&res, 1, false, false, &mut out, &mut err);
        assert_eq!(code, EXIT_VERIFY);
        assert!(out.is_empty());
        assert!(String::from_utf8(err).unwrap().contains("FAIL"));
    }

    #[test]
    fn word_and_approx() {
        assert_eq!(run_args(&["word", "7"]).1, "R^2 L R L R^2\n");
        assert_eq!(run_args(&["approx", "2", "--count", "4"]).1, "2/1\n3/2\n4/3\n7/5\n");
        assert_eq!(run_args(&["approx", "2", "--count", "1"]).1, "2/1\n");
        assert_eq!(run_args(&["approx", "12", "--count", "0"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--json", "approx", "2", "--count", "2"]).1, "[\"2/1\",\"3/2\"]\n");
    }

    #[test]
    fn table_rows() {
        let (code, out, _) = run_args(&["table", "2", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "D x y letters negative\n2 3 2 4 yes\n3 2 1 3 no\n");
        let (code, out, _) = run_args(&["table", "4", "4"]);
        assert_eq!((code, out.as_str()), (0, "D x y letters negative\n"));
        assert_eq!(run_args(&["table", "5", "3"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["table", "1", "3"]).0, EXIT_USAGE);
        let (_, out, _) = run_args(&["table", "61", "61", "--json"]);
        assert_eq!(
            out,
            "[{\"d\":\"61\",\"x\":\"1766319049\",\"y\":\"226153980\",\"letters\":\"72\",\"negative\":true}]\n"
        );
    }

    #[test]
    fn verify_cmd() {
        assert_eq!(run_args(&["verify", "2", "1", "1"]).1, "n: -1\nnext: 7 5\n");
        assert_eq!(run_args(&["verify", "2", "3", "2"]).1, "n: 1\nnext: 17 12\n");
        assert_eq!(run_args(&["verify", "7", "1", "0"]).1, "n: 1\nnext: 8 3\n");
        assert_eq!(run_args(&["verify", "16", "1", "0"]).0, EXIT_USAGE);
    }
}
