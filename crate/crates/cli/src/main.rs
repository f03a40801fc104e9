use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use systole_core::lefschetz::DEFAULT_HORIZON;
use systole_core::rauzy::{
    build_rauzy_class, search_loops, veech_certificate, FieldSpec, RauzyLoop,
};
use systole_core::search::RootBound;
use systole_core::twist::{
    casson_bleiler, homology_spectral_radius, search_words, word_action, word_charpoly, Verdict,
};

use systole::certificate::{certificate_record, parse_pieces};
use systole::parse::{
    parse_path, parse_permutation, parse_polynomial, parse_reciprocal, parse_stratum, parse_word,
};
use systole::pipeline::{
    default_bound, enumeration_report, filter_report, run_enumeration, run_pipeline, RunOptions,
};
use systole::report::{align, poly_text, to_json, AnyReport, Format, Timing, SCHEMA};
use systole::{CliError, EXIT_EMPTY, EXIT_ERROR, EXIT_OK};

#[derive(Parser)]
#[command(
    name = "systole",
    version,
    about = "Search for small pseudo-Anosov dilatations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reciprocal polynomials with Perron root below a bound.
    Enumerate(RunArgs),
    /// Lefschetz verdicts of one polynomial and its sign flip.
    Filter(FilterArgs),
    /// Enumeration followed by the Lefschetz filter on every stratum.
    Pipeline {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: usize,
    },
    /// Rauzy loop certificates and loop search.
    #[command(subcommand)]
    Rauzy(RauzyCommand),
    /// Homology action of Dehn twist words.
    #[command(subcommand)]
    Twist(TwistCommand),
    /// Re-render a saved JSON report.
    Report {
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct OutputArgs {
    /// Write to this file; a table still goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Defaults to json with --out, table otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    genus: usize,
    /// Polynomial whose dominant root is the bound.
    #[arg(long, conflicts_with = "bound_value")]
    bound: Option<String>,
    #[arg(long)]
    bound_value: Option<f64>,
    /// Newton iteration cap in root analysis.
    #[arg(long)]
    max_iter: Option<usize>,
    /// Number of work units.
    #[arg(long)]
    shards: Option<usize>,
    /// Directory for enumeration checkpoints.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Allow genus 6 to 8.
    #[arg(long)]
    extended: bool,
    /// Omit wall-clock figures so reruns are byte-identical.
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct FilterArgs {
    #[arg(long)]
    poly: String,
    /// Repeatable; all strata of the genus when absent.
    #[arg(long)]
    stratum: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_HORIZON)]
    horizon: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand)]
enum RauzyCommand {
    /// Exact certificate for a closed Rauzy loop.
    Verify {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        path: String,
        /// Minimal polynomial of the field generator.
        #[arg(long, requires = "approx")]
        minpoly: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        approx: Option<f64>,
        /// The loop eigenvalue is the generator to this power.
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// JSON table of translation pieces to check.
        #[arg(long)]
        pieces: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed loops whose matrix matches a target polynomial.
    Search {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        max_len: usize,
        /// Start loops anywhere in the class instead of at the given permutation.
        #[arg(long)]
        all_bases: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum TwistCommand {
    /// Homology action of a twist word.
    Act {
        #[arg(long)]
        word: String,
        #[arg(long)]
        genus: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Words whose action has the target (or target(-X)) as charpoly.
    Search {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        target: String,
        #[arg(long)]
        max_len: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Serialize)]
struct TwistActRecord {
    schema: &'static str,
    word: String,
    genus: usize,
    matrix: Vec<Vec<i64>>,
    charpoly: Vec<i64>,
    spectral_radius: f64,
    verdict: String,
}

#[derive(Serialize)]
struct WordListRecord {
    schema: &'static str,
    genus: usize,
    target: Vec<i64>,
    words: Vec<String>,
}

#[derive(Serialize)]
struct LoopRecord {
    permutation: Vec<usize>,
    path: String,
}

#[derive(Serialize)]
struct LoopListRecord {
    schema: &'static str,
    target: Vec<i64>,
    loops: Vec<LoopRecord>,
}

/// Writes the chosen format to `--out` (echoing a table) or prints it.
fn emit(output: &OutputArgs, render: impl Fn(Format) -> String) -> Result<(), CliError> {
    match &output.out {
        Some(path) => {
            let body = render(output.format.unwrap_or(Format::Json));
            write_file(path, &body)?;
            print!("{}", render(Format::Table));
        }
        None => print!("{}", render(output.format.unwrap_or(Format::Table))),
    }
    Ok(())
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, body).map_err(|e| CliError::io(path, e))
}

fn json_only<'a, T: Serialize>(
    value: &'a T,
    table: impl Fn() -> String + 'a,
) -> impl Fn(Format) -> String + 'a {
    move |f| match f {
        Format::Json | Format::Csv => to_json(value),
        Format::Table => table(),
    }
}

fn resolve_bound(run: &RunArgs) -> Result<RootBound, CliError> {
    match (&run.bound, run.bound_value) {
        (Some(p), _) => Ok(RootBound::from_poly(parse_polynomial(p)?)?),
        (None, Some(v)) => Ok(RootBound::from_value(v)?),
        (None, None) => Ok(default_bound(run.genus)),
    }
}

fn run_options(run: &RunArgs) -> RunOptions {
    let mut opts = RunOptions {
        shards: run.shards,
        checkpoint: run.checkpoint.clone(),
        extended: run.extended,
        timing: !run.no_timing,
        ..RunOptions::default()
    };
    if let Some(m) = run.max_iter {
        opts.max_iter = m;
    }
    opts
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Enumerate(run) => {
            let bound = resolve_bound(&run)?;
            let opts = run_options(&run);
            systole::pipeline::check_genus(run.genus, &opts)?;
            let start = Instant::now();
            let set = run_enumeration(run.genus, &bound, &opts)?;
            let ms = start.elapsed().as_millis() as u64;
            let timing = opts.timing.then_some(Timing {
                enumeration_ms: ms,
                filter_ms: 0,
                total_ms: ms,
                threads: opts.threads,
            });
            let report = enumeration_report(&set, timing);
            emit(&run.output, |f| report.render(f))?;
            Ok(if report.candidates.is_empty() {
                EXIT_EMPTY
            } else {
                EXIT_OK
            })
        }
        Command::Filter(args) => {
            let poly = parse_reciprocal(&args.poly)?;
            let strata = if args.stratum.is_empty() {
                None
            } else {
                Some(
                    args.stratum
                        .iter()
                        .map(|s| parse_stratum(s))
                        .collect::<Result<Vec<_>, _>>()?,
                )
            };
            let report = filter_report(&poly, strata, args.horizon)?;
            emit(&args.output, |f| report.render(f))?;
            let any = report
                .variants
                .iter()
                .any(|v| v.strata.iter().any(|s| s.feasible));
            Ok(if any { EXIT_OK } else { EXIT_EMPTY })
        }
        Command::Pipeline { run, horizon } => {
            let bound = resolve_bound(&run)?;
            let report = run_pipeline(run.genus, &bound, horizon, &run_options(&run))?;
            emit(&run.output, |f| report.render(f))?;
            Ok(if report.minimum.is_some() {
                EXIT_OK
            } else {
                EXIT_EMPTY
            })
        }
        Command::Rauzy(RauzyCommand::Verify {
            perm,
            path,
            minpoly,
            approx,
            power,
            pieces,
            output,
        }) => {
            let lp = RauzyLoop {
                base: parse_permutation(&perm)?,
                path: parse_path(&path)?,
            };
            let spec = match (minpoly, approx) {
                (Some(m), Some(a)) => Some(FieldSpec {
                    minpoly: parse_polynomial(&m)?,
                    approx: a,
                    power,
                }),
                _ => None,
            };
            let table = match pieces {
                Some(p) => {
                    let text = fs::read_to_string(&p).map_err(|e| CliError::io(&p, e))?;
                    Some(parse_pieces(&text).map_err(|e| CliError::Json {
                        path: p.clone(),
                        source: e,
                    })?)
                }
                None => None,
            };
            let cert = veech_certificate(&lp, spec.as_ref())?;
            let record = certificate_record(&cert, table.as_deref())?;
            emit(&output, json_only(&record, || record.table()))?;
            Ok(if record.pieces_verified == Some(false) {
                EXIT_EMPTY
            } else {
                EXIT_OK
            })
        }
        Command::Rauzy(RauzyCommand::Search {
            perm,
            target,
            max_len,
            all_bases,
            output,
        }) => {
            let base = parse_permutation(&perm)?;
            let target = parse_polynomial(&target)?;
            let class = build_rauzy_class(&base);
            let start = if all_bases {
                None
            } else {
                class.index_of(&base)
            };
            let loops = search_loops(&class, &target, max_len, start);
            let record = LoopListRecord {
                schema: SCHEMA,
                target: target.descending(),
                loops: loops
                    .iter()
                    .map(|l| LoopRecord {
                        permutation: l.base.bottom().to_vec(),
                        path: l.path_string(),
                    })
                    .collect(),
            };
            emit(
                &output,
                json_only(&record, || {
                    let mut rows = vec![vec!["permutation".to_string(), "path".into()]];
                    rows.extend(
                        record
                            .loops
                            .iter()
                            .map(|l| vec![format!("{:?}", l.permutation), l.path.clone()]),
                    );
                    format!(
                        "{} loops in a class of {}\n{}",
                        record.loops.len(),
                        class.len(),
                        align(&rows)
                    )
                }),
            )?;
            Ok(if loops.is_empty() {
                EXIT_EMPTY
            } else {
                EXIT_OK
            })
        }
        Command::Twist(TwistCommand::Act {
            word,
            genus,
            output,
        }) => {
            let w = parse_word(&word, genus)?;
            let chi = word_charpoly(&w);
            let verdict = match casson_bleiler(&chi) {
                Verdict::PaCandidate => "PA-CANDIDATE".to_string(),
                Verdict::Inconclusive(failed) => format!("INCONCLUSIVE {failed:?}"),
            };
            let record = TwistActRecord {
                schema: SCHEMA,
                word: w.to_string(),
                genus: w.genus,
                matrix: word_action(&w).to_rows(),
                charpoly: chi.descending(),
                spectral_radius: homology_spectral_radius(&w),
                verdict,
            };
            emit(
                &output,
                json_only(&record, || {
                    let mut out = format!("word {} in genus {}\n", record.word, record.genus);
                    for row in &record.matrix {
                        let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
                        out.push_str(&cells.join(" "));
                        out.push('\n');
                    }
                    out.push_str(&format!(
                        "charpoly {}\nspectral radius {:.6}\n{}\n",
                        poly_text(&record.charpoly),
                        record.spectral_radius,
                        record.verdict
                    ));
                    out
                }),
            )?;
            Ok(EXIT_OK)
        }
        Command::Twist(TwistCommand::Search {
            genus,
            target,
            max_len,
            output,
        }) => {
            let target = parse_polynomial(&target)?;
            if target.degree() != 2 * genus {
                return Err(CliError::Usage(format!(
                    "target has degree {}, expected {}",
                    target.degree(),
                    2 * genus
                )));
            }
            let words = search_words(genus, &target, max_len);
            let record = WordListRecord {
                schema: SCHEMA,
                genus,
                target: target.descending(),
                words: words.iter().map(|w| w.to_string()).collect(),
            };
            emit(
                &output,
                json_only(&record, || {
                    let mut out = format!("{} words\n", record.words.len());
                    for w in &record.words {
                        out.push_str(w);
                        out.push('\n');
                    }
                    out
                }),
            )?;
            Ok(if words.is_empty() {
                EXIT_EMPTY
            } else {
                EXIT_OK
            })
        }
        Command::Report { input, output } => {
            let text = fs::read_to_string(&input).map_err(|e| CliError::io(&input, e))?;
            let report: AnyReport = serde_json::from_str(&text).map_err(|e| CliError::Json {
                path: input.clone(),
                source: e,
            })?;
            emit(&output, |f| report.render(f))?;
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
