//! The `signrank` command line. [`run`] is the whole program minus process
//! plumbing, so tests drive it directly.
//!
//! Exit codes: 0 success, 1 negative or inconclusive result, 2 input error,
//! 3 resource exhausted. Indices in output are 1-based.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fixtures::{fixture, self_checks, Payload, FIXTURE_NAMES};
use crate::geometry::{dualize, encode_configuration, stack, Configuration};
use crate::pattern::{condense, is_equivalent, mr2_verdict, mr_bounds, MrOptions, SignPattern, DEFAULT_MR2_MAX_COLS};
use crate::realize::{rationalize, search_realization, Realization, SearchParams};
use crate::svg::{render, BoundingBox};

pub const THREADS_ENV: &str = "SIGNRANK_THREADS";

#[derive(Debug, Parser)]
#[command(name = "signrank", version, about = "Minimum rank of sign patterns via point-hyperplane configurations")]
pub struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (default: SIGNRANK_THREADS, else all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Condense a pattern.
    Condense { input: PathBuf },
    /// Lower and upper bounds on the minimum rank.
    Mr {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        sns_cap: usize,
        #[arg(long)]
        try_rank: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact minimum-rank-2 test with witness.
    Mr2 { input: PathBuf },
    /// Sign pattern of a configuration.
    Encode {
        config: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for a rank-R realization.
    Realize {
        input: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact rational certificate from a realization.
    Rationalize {
        input: PathBuf,
        #[arg(long = "from")]
        from: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Stack two configurations (first above second).
    Compose {
        upper: PathBuf,
        lower: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Polar dual of a configuration.
    Dual {
        config: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Permutation/signature equivalence of two patterns.
    Equiv { a: PathBuf, b: PathBuf },
    /// SVG drawing of a planar configuration.
    Render {
        config: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// x0,y0,x1,y1
        #[arg(long, allow_hyphen_values = true)]
        bbox: Option<String>,
    },
    /// Write the stored fixtures to a directory.
    Fixtures {
        #[arg(long)]
        export: PathBuf,
    },
    /// Re-verify the stored fixtures.
    Selfcheck,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult {
            exit_code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Io(_) | Error::Domain(_) | Error::VerticalHyperplane { .. } => 2,
        Error::ResourceExhausted(_) => 3,
        _ => 1,
    }
}

pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandResult::ok(text)
            } else {
                CommandResult {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let threads = cli
        .threads
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            return CommandResult {
                exit_code: 3,
                stdout: String::new(),
                stderr: format!("error: thread pool: {e}\n"),
            }
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(res) => res,
        Err(e) => {
            let message = e.to_string();
            let stdout = if cli.json {
                format!("{}\n", json!({ "error": message, "exit_code": exit_code(&e) }))
            } else {
                String::new()
            };
            CommandResult {
                exit_code: exit_code(&e),
                stdout,
                stderr: format!("error: {message}\n"),
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Domain(format!("{}: {e}", path.display())))
}

fn read_pattern(path: &Path) -> Result<SignPattern> {
    SignPattern::parse(&read(path)?).map_err(|e| with_path(e, path))
}

fn read_config(path: &Path) -> Result<Configuration> {
    Configuration::from_json(&read(path)?).map_err(|e| with_path(e, path))
}

fn with_path(e: Error, path: &Path) -> Error {
    match e {
        Error::Parse { line, column, message } => Error::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        Error::Domain(m) => Error::Domain(format!("{}: {m}", path.display())),
        other => other,
    }
}

/// Writes to `output` or, without one, returns the payload for stdout.
fn emit(output: &Option<PathBuf>, payload: &str) -> Result<Option<String>> {
    match output {
        Some(path) => {
            fs::write(path, payload)?;
            Ok(None)
        }
        None => Ok(Some(payload.to_string())),
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn joined(v: &[usize]) -> String {
    one_based(v).iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn finish(json_mode: bool, value: Value, text: String, code: i32) -> CommandResult {
    let stdout = if json_mode {
        format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable"))
    } else {
        text
    };
    CommandResult {
        exit_code: code,
        stdout,
        stderr: String::new(),
    }
}

fn written(json_mode: bool, what: &str, output: &Option<PathBuf>, payload: Option<String>, extra: Value) -> CommandResult {
    match payload {
        Some(p) if !json_mode => CommandResult::ok(p),
        _ => {
            let path = output.as_ref().map(|p| p.display().to_string());
            let mut value = json!({ "written": path, "kind": what });
            if let (Value::Object(m), Value::Object(e)) = (&mut value, extra) {
                m.extend(e);
            }
            let text = match &path {
                Some(p) => format!("wrote {what} to {p}\n"),
                None => String::new(),
            };
            finish(json_mode, value, text, 0)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<CommandResult> {
    let js = cli.json;
    match &cli.command {
        Command::Condense { input } => {
            let a = read_pattern(input)?;
            let report = condense(&a);
            let c = &report.condensed;
            let text = format!(
                "{}x{} -> {}x{} (rows {}; cols {})\n{}",
                a.rows(),
                a.cols(),
                c.rows(),
                c.cols(),
                joined(&report.kept_rows),
                joined(&report.kept_cols),
                c.to_text()
            );
            let value = json!({
                "rows": c.rows(),
                "cols": c.cols(),
                "pattern": c.row_strings(),
                "kept_rows": one_based(&report.kept_rows),
                "kept_cols": one_based(&report.kept_cols),
            });
            Ok(finish(js, value, text, 0))
        }
        Command::Mr { input, sns_cap, try_rank, seed } => {
            let a = read_pattern(input)?;
            let options = MrOptions {
                sns_cap: *sns_cap,
                try_rank: *try_rank,
                search: SearchParams {
                    seed: *seed,
                    ..SearchParams::default()
                },
                mr2_max_cols: DEFAULT_MR2_MAX_COLS,
            };
            let b = mr_bounds(&a, &options)?;
            let src = |s: Option<&crate::pattern::BoundSource>| s.map(ToString::to_string).unwrap_or_default();
            let lower = src(b.lower_source());
            let upper = src(b.upper_source());
            let exact = b.lower == b.upper;
            let text = if exact {
                format!("mr = {} (lower: {lower}; upper: {upper})\n", b.lower)
            } else {
                format!("{} \u{2264} mr \u{2264} {} (lower: {lower}; upper: {upper})\n", b.lower, b.upper)
            };
            let mut value = serde_json::to_value(&b).expect("serializable");
            value["exact"] = json!(exact);
            value["lower_text"] = json!(lower);
            value["upper_text"] = json!(upper);
            Ok(finish(js, value, text, if exact { 0 } else { 1 }))
        }
        Command::Mr2 { input } => {
            let a = read_pattern(input)?;
            let v = mr2_verdict(&a, DEFAULT_MR2_MAX_COLS)?;
            let mut text = if v.is_mr2 {
                "mr = 2\n".to_string()
            } else {
                match v.failed_condition {
                    Some(1) => "mr != 2: condensed pattern has fewer than 2 rows or columns\n".to_string(),
                    Some(2) => "mr != 2: a row or column of the condensed pattern has two zeros\n".to_string(),
                    _ => "mr != 2: no signing and ordering makes all lines nondecreasing\n".to_string(),
                }
            };
            if let Some(w) = &v.witness {
                let ac = condense(&a).condensed;
                let rows: Vec<usize> = w.row_order.iter().map(|&i| w.kept_rows[i]).collect();
                let cols: Vec<usize> = w.col_order.iter().map(|&j| w.kept_cols[j]).collect();
                text.push_str(&format!("row order {}\ncol order {}\n", joined(&rows), joined(&cols)));
                let signs = |s: &[crate::sign::Sign]| s.iter().map(ToString::to_string).collect::<String>();
                text.push_str(&format!("row signs {}\ncol signs {}\n", signs(&w.row_signs), signs(&w.col_signs)));
                text.push_str(&w.arrange(&ac).to_text());
            }
            let value = serde_json::to_value(&v).expect("serializable");
            Ok(finish(js, value, text, if v.is_mr2 { 0 } else { 1 }))
        }
        Command::Encode { config, output } => {
            let c = read_config(config)?;
            let p = encode_configuration(&c)?;
            let payload = emit(output, &p.to_text())?;
            Ok(written(js, "pattern", output, payload, json!({ "pattern": p.row_strings() })))
        }
        Command::Realize { input, rank, seed, restarts, output } => {
            let a = read_pattern(input)?;
            let params = SearchParams {
                seed: *seed,
                restarts: *restarts,
                ..SearchParams::default()
            };
            match search_realization(&a, *rank, &params) {
                Ok(real) => {
                    let text = format!("{}\n", real.to_json());
                    let payload = emit(output, &text)?;
                    Ok(written(
                        js,
                        "realization",
                        output,
                        payload,
                        json!({ "rank": real.r, "restart": real.restart, "margin": real.margin }),
                    ))
                }
                Err(Error::NotFound(msg)) => {
                    let value = json!({ "found": false, "message": msg });
                    Ok(finish(js, value, format!("no realization: {msg}\n"), 1))
                }
                Err(e) => Err(e),
            }
        }
        Command::Rationalize { input, from, output } => {
            let a = read_pattern(input)?;
            let real = Realization::from_json(&read(from)?, &a).map_err(|e| with_path(e, from))?;
            let cert = rationalize(&a, &real)?;
            cert.verify()?;
            let text = format!("{}\n", cert.to_json());
            let payload = emit(output, &text)?;
            Ok(written(js, "certificate", output, payload, json!({ "rank": cert.rank, "verified": true })))
        }
        Command::Compose { upper, lower, output } => {
            let c = stack(&read_config(upper)?, &read_config(lower)?)?;
            let payload = emit(output, &format!("{}\n", c.to_json()))?;
            Ok(written(js, "configuration", output, payload, json!({})))
        }
        Command::Dual { config, output } => {
            let d = dualize(&read_config(config)?)?;
            let payload = emit(output, &format!("{}\n", d.config.to_json()))?;
            Ok(written(js, "configuration", output, payload, json!({})))
        }
        Command::Equiv { a, b } => {
            let (pa, pb) = (read_pattern(a)?, read_pattern(b)?);
            match is_equivalent(&pa, &pb)? {
                Some(w) => {
                    let signs = |s: &[crate::sign::Sign]| s.iter().map(ToString::to_string).collect::<String>();
                    let text = format!(
                        "equivalent\nrow map {}\ncol map {}\nrow signs {}\ncol signs {}\n",
                        joined(&w.row_perm),
                        joined(&w.col_perm),
                        signs(&w.row_signs),
                        signs(&w.col_signs)
                    );
                    let value = json!({
                        "equivalent": true,
                        "row_perm": one_based(&w.row_perm),
                        "col_perm": one_based(&w.col_perm),
                        "row_signs": signs(&w.row_signs),
                        "col_signs": signs(&w.col_signs),
                    });
                    Ok(finish(js, value, text, 0))
                }
                None => Ok(finish(js, json!({ "equivalent": false }), "not equivalent\n".into(), 1)),
            }
        }
        Command::Render { config, output, bbox } => {
            let c = read_config(config)?;
            let bbox = bbox.as_deref().map(BoundingBox::parse).transpose()?;
            let svg = render(&c, bbox)?;
            let payload = emit(output, &svg)?;
            Ok(written(js, "svg", output, payload, json!({})))
        }
        Command::Fixtures { export } => {
            fs::create_dir_all(export)?;
            let mut files = Vec::new();
            for name in FIXTURE_NAMES {
                let f = fixture(name)?;
                let (file, body) = match &f.payload {
                    Payload::Pattern(p) => (format!("{name}.pat"), p.to_text()),
                    Payload::Configuration(c) => (format!("{name}.json"), format!("{}\n", c.to_json())),
                };
                fs::write(export.join(&file), body)?;
                files.push(file);
            }
            let text = files.iter().map(|f| format!("wrote {}\n", export.join(f).display())).collect();
            Ok(finish(js, json!({ "files": files }), text, 0))
        }
        Command::Selfcheck => {
            let checks = self_checks();
            let mut text = String::new();
            let mut all = true;
            let mut entries = Vec::new();
            for (label, outcome) in &checks {
                let ok = outcome.is_ok();
                all &= ok;
                match outcome {
                    Ok(()) => text.push_str(&format!("ok    {label}\n")),
                    Err(e) => text.push_str(&format!("FAIL  {label}: {e}\n")),
                }
                entries.push(json!({ "check": label, "ok": ok, "error": outcome.as_ref().err().map(ToString::to_string) }));
            }
            Ok(finish(js, json!({ "ok": all, "checks": entries }), text, if all { 0 } else { 1 }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::parse(1, 1, "x")), 2);
        assert_eq!(exit_code(&Error::NotFound("x".into())), 1);
        assert_eq!(exit_code(&Error::ResourceExhausted("x".into())), 3);
        assert_eq!(exit_code(&Error::Overdetermined { column: 1, zeros: 4, limit: 2 }), 1);
    }

    #[test]
    fn bad_arguments() {
        let res = run(["signrank", "frobnicate"]);
        assert_eq!(res.exit_code, 2);
        let res = run(["signrank", "condense", "/nonexistent/file.pat"]);
        assert_eq!(res.exit_code, 2);
    }
}
