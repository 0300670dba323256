//! Command-line front end. [`run`] is the whole program; `main` only wires
//! it to the process streams.

use std::ffi::OsString;
use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use maxcycle_core::cases::{default_max_blocks, RouteTrace};
use maxcycle_core::explorer::{golomb_survey, PeriodSummary, DEFAULT_SEED};
use maxcycle_core::perset::{self, decompositions, table_rows, Witness};
use maxcycle_core::{
    classify, detect_period, gap_scan, run_survey, synthesize, trace_cycle, verify_certificate,
    DetectionOutcome, PeriodCertificate, StateK, SurveyConfig, DEFAULT_CAP,
};

#[derive(Debug, Parser)]
#[command(
    name = "maxcycle",
    version,
    about = "Exact periodic orbits of x[n+k] = max(x[n+k-1], ..., x[n+1], 0) - x[n]"
)]
pub struct Cli {
    #[command(flatten)]
    format: FormatFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FormatFlags {
    /// Emit JSON
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply the map N times (backwards with --back)
    Iterate {
        #[arg(allow_hyphen_values = true)]
        state: StateK,
        #[arg(long, default_value_t = 1)]
        n: u64,
        #[arg(long)]
        back: bool,
    },
    /// Detect the exact period and print its certificate
    Period {
        #[arg(allow_hyphen_values = true)]
        state: StateK,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Re-check a certificate in JSON form (a path, or - for stdin)
    Verify { path: String },
    /// Case labels of a nonnegative order-4 window led by its maximum
    Classify {
        #[arg(allow_hyphen_values = true)]
        state: StateK,
    },
    /// Follow an order-4 window block by block
    Trace {
        #[arg(allow_hyphen_values = true)]
        state: StateK,
        #[arg(long)]
        max_blocks: Option<u64>,
    },
    /// Queries on the order-4 period set
    Perset {
        #[command(subcommand)]
        query: PersetQuery,
    },
    /// Build an order-4 initial state with period N
    Synth { n: u64 },
    /// Seeded survey of random states of order K
    Survey {
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        numerators: u64,
        #[arg(long, default_value_t = 12)]
        denominator: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Periods of random monotone windows of order K
    Golomb {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum PersetQuery {
    /// Whether N is a period
    Contains { n: u64 },
    /// All periods in [LO, HI]
    Range { lo: u64, hi: u64 },
    /// Non-periods up to the limit and their class maxima
    Gaps {
        #[arg(long, default_value_t = 4000)]
        limit: u64,
    },
    /// Every N = 10a + 11b with its admissibility
    Decomp { n: u64 },
}

#[derive(Debug)]
enum Failure {
    /// A well-formed request the mathematics refuses.
    Domain(String),
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn io_err(e: io::Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(domain)?;
    writeln!(out, "{text}").map_err(io_err)
}

fn emit_csv<R: Serialize>(out: &mut dyn Write, rows: impl IntoIterator<Item = R>) -> Outcome {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(domain)?;
    }
    w.flush().map_err(io_err)
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code: 0 on success, 1 on a domain error, 2 on bad input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let format = if cli.format.json {
        Format::Json
    } else if cli.format.csv {
        Format::Csv
    } else {
        Format::Human
    };
    match dispatch(cli.command, format, out) {
        Ok(()) => 0,
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(cmd: Command, format: Format, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Iterate { state, n, back } => {
            let s = if back {
                state.iterate_back(n)
            } else {
                state.iterate(n)
            };
            match format {
                Format::Json => emit_json(out, &s),
                Format::Csv => emit_csv(
                    out,
                    [StateRow {
                        state: s.to_string(),
                    }],
                ),
                Format::Human => writeln!(out, "{s}").map_err(io_err),
            }
        }
        Command::Period { state, cap } => period(&state, cap, format, out),
        Command::Verify { path } => verify(&path, format, out),
        Command::Classify { state } => {
            let c = classify(&state).map_err(domain)?;
            match format {
                Format::Json => emit_json(out, &c),
                _ => {
                    let labels: Vec<String> = c.labels.iter().map(|l| l.to_string()).collect();
                    writeln!(out, "labels={}", labels.join(",")).map_err(io_err)?;
                    writeln!(out, "unambiguous={}", c.unambiguous).map_err(io_err)
                }
            }
        }
        Command::Trace { state, max_blocks } => {
            let t = trace_cycle(
                &state,
                max_blocks.unwrap_or_else(|| default_max_blocks(DEFAULT_CAP)),
            )
            .map_err(domain)?;
            match format {
                Format::Json => emit_json(out, &t),
                _ => print_trace(&t, out),
            }
        }
        Command::Perset { query } => perset_query(query, format, out),
        Command::Synth { n } => {
            let r = synthesize(n).map_err(domain)?;
            match format {
                Format::Json => emit_json(out, &r),
                _ => {
                    writeln!(out, "state={}", r.state).map_err(io_err)?;
                    writeln!(out, "tag={:?}", r.tag).map_err(io_err)?;
                    writeln!(out, "predicted={}", r.predicted).map_err(io_err)?;
                    writeln!(out, "verified={}", r.verified).map_err(io_err)
                }
            }
        }
        Command::Survey {
            k,
            samples,
            seed,
            numerators,
            denominator,
            cap,
        } => {
            if k < 2 {
                return Err(Failure::Usage(format!("order {k} < 2")));
            }
            if denominator == 0 {
                return Err(Failure::Usage("denominator must be positive".into()));
            }
            let cfg = SurveyConfig {
                k,
                samples,
                numerator_bound: numerators,
                denominator,
                seed,
                cap,
            };
            survey(&cfg, format, out)
        }
        Command::Golomb { k, trials, seed } => {
            if k < 2 {
                return Err(Failure::Usage(format!("order {k} < 2")));
            }
            let r = golomb_survey(k, trials, seed);
            match format {
                Format::Json => emit_json(out, &r),
                _ => {
                    writeln!(out, "expected={}", 3 * k - 1).map_err(io_err)?;
                    for (p, c) in &r.periods {
                        writeln!(out, "period={p} count={c}").map_err(io_err)?;
                    }
                    writeln!(out, "ok={}", r.ok).map_err(io_err)
                }
            }
        }
    }
}

#[derive(Serialize)]
struct StateRow {
    state: String,
}

#[derive(Serialize)]
struct PeriodRow {
    state: String,
    period: Option<u64>,
    max: Option<String>,
}

fn period(state: &StateK, cap: u64, format: Format, out: &mut dyn Write) -> Outcome {
    let outcome = detect_period(state, cap);
    match format {
        Format::Json => match &outcome {
            DetectionOutcome::Periodic(c) => emit_json(out, c),
            DetectionOutcome::NotClosed { steps } => {
                emit_json(out, &serde_json::json!({ "not_closed": steps }))
            }
        },
        Format::Csv => {
            let c = outcome.certificate();
            emit_csv(
                out,
                [PeriodRow {
                    state: state.to_string(),
                    period: c.map(|c| c.period),
                    max: c.map(|c| c.max.to_string()),
                }],
            )
        }
        Format::Human => match &outcome {
            DetectionOutcome::Periodic(c) => {
                writeln!(out, "period={}", c.period).map_err(io_err)?;
                writeln!(out, "max={}", c.max).map_err(io_err)
            }
            DetectionOutcome::NotClosed { steps } => {
                writeln!(out, "not_closed steps={steps}").map_err(io_err)
            }
        },
    }
}

fn verify(path: &str, format: Format, out: &mut dyn Write) -> Outcome {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text).map_err(io_err)?;
    } else {
        text = std::fs::read_to_string(path).map_err(io_err)?;
    }
    let cert: PeriodCertificate =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("bad certificate: {e}")))?;
    let result = verify_certificate(&cert);
    match format {
        Format::Json => emit_json(
            out,
            &serde_json::json!({
                "valid": result.is_ok(),
                "violation": result.as_ref().err().map(|v| v.to_string()),
            }),
        )?,
        _ => match &result {
            Ok(()) => writeln!(out, "valid period={}", cert.period).map_err(io_err)?,
            Err(v) => writeln!(out, "invalid: {v}").map_err(io_err)?,
        },
    }
    result.map_err(domain)
}

fn print_trace(t: &RouteTrace, out: &mut dyn Write) -> Outcome {
    let blocks: Vec<String> = t
        .blocks
        .iter()
        .map(|b| format!("{}/{}", b.case, b.len))
        .collect();
    writeln!(out, "blocks={}", blocks.join(" ")).map_err(io_err)?;
    writeln!(out, "status={}", t.status).map_err(io_err)?;
    if let Some(routes) = &t.routes {
        let names: Vec<String> = routes
            .iter()
            .map(|r| format!("{:?}(m={},n={})", r.kind, r.c1_loops, r.c3_loops))
            .collect();
        writeln!(out, "routes={}", names.join(" ")).map_err(io_err)?;
    }
    writeln!(
        out,
        "A1={} A2={} A3={} A4={} H={} A={} B={}",
        t.a1, t.a2, t.a3, t.a4, t.loops, t.ten_blocks, t.eleven_blocks
    )
    .map_err(io_err)?;
    match t.predicted {
        Some(p) => writeln!(out, "predicted={p}").map_err(io_err),
        None => writeln!(out, "predicted=none").map_err(io_err),
    }
}

#[derive(Serialize)]
struct ClassRow {
    class: String,
    max_nonperiod: Option<u64>,
}

fn perset_query(query: PersetQuery, format: Format, out: &mut dyn Write) -> Outcome {
    match query {
        PersetQuery::Contains { n } => {
            let m = perset::contains(n);
            match format {
                Format::Json => emit_json(out, &m),
                Format::Csv => emit_csv(out, table_rows(n, n)),
                Format::Human => {
                    writeln!(out, "{}", m.member).map_err(io_err)?;
                    match m.witness {
                        Some(Witness::Pair { a, b }) => writeln!(out, "witness a={a} b={b}"),
                        Some(Witness::Special { value }) => {
                            writeln!(out, "witness special={value}")
                        }
                        None => Ok(()),
                    }
                    .map_err(io_err)
                }
            }
        }
        PersetQuery::Range { lo, hi } => {
            if lo == 0 || lo > hi {
                return Err(Failure::Usage(format!(
                    "need 1 <= lo <= hi, got [{lo}, {hi}]"
                )));
            }
            match format {
                Format::Json => emit_json(out, &perset::periods_in_range(lo, hi)),
                Format::Csv => emit_csv(out, table_rows(lo, hi)),
                Format::Human => {
                    let list: Vec<String> = perset::periods_in_range(lo, hi)
                        .iter()
                        .map(u64::to_string)
                        .collect();
                    writeln!(out, "{}", list.join(",")).map_err(io_err)
                }
            }
        }
        PersetQuery::Gaps { limit } => {
            let r = gap_scan(limit);
            match format {
                Format::Json => emit_json(out, &r),
                Format::Csv => {
                    let mut rows: Vec<ClassRow> = (1..=10u8)
                        .map(|m| ClassRow {
                            class: format!("N{m}"),
                            max_nonperiod: r.class_maxima.get(&m).copied(),
                        })
                        .collect();
                    rows.push(ClassRow {
                        class: "N11".into(),
                        max_nonperiod: r.eleven_max,
                    });
                    rows.push(ClassRow {
                        class: "overall".into(),
                        max_nonperiod: r.overall_max,
                    });
                    emit_csv(out, rows)
                }
                Format::Human => {
                    let show = |v: Option<u64>| v.map_or("none".to_string(), |v| v.to_string());
                    writeln!(out, "limit={}", r.limit).map_err(io_err)?;
                    writeln!(out, "non_periods={}", r.non_members.len()).map_err(io_err)?;
                    for m in 1..=10u8 {
                        writeln!(out, "N{m}={}", show(r.class_maxima.get(&m).copied()))
                            .map_err(io_err)?;
                    }
                    writeln!(out, "N11={}", show(r.eleven_max)).map_err(io_err)?;
                    writeln!(out, "max_nonperiod={}", show(r.overall_max)).map_err(io_err)
                }
            }
        }
        PersetQuery::Decomp { n } => {
            let ds = decompositions(n);
            match format {
                Format::Json => emit_json(out, &ds),
                Format::Csv => emit_csv(out, ds),
                Format::Human => {
                    for d in &ds {
                        writeln!(out, "a={} b={} admissible={}", d.a, d.b, d.admissible)
                            .map_err(io_err)?;
                    }
                    Ok(())
                }
            }
        }
    }
}

#[derive(Serialize)]
struct SurveySummary<'a> {
    config: &'a SurveyConfig,
    samples: usize,
    not_closed: u64,
    unverified: u64,
    violations: &'a [u64],
    exact_set_violations: &'a [u64],
    histogram: &'a std::collections::BTreeMap<u64, PeriodSummary>,
}

#[derive(Serialize)]
struct SurveyRow {
    k: usize,
    state: String,
    period: Option<u64>,
    conjecture_ok: Option<bool>,
}

fn survey(cfg: &SurveyConfig, format: Format, out: &mut dyn Write) -> Outcome {
    let r = run_survey(cfg);
    match format {
        Format::Json => emit_json(
            out,
            &SurveySummary {
                config: &r.config,
                samples: r.samples.len(),
                not_closed: r.not_closed,
                unverified: r.unverified,
                violations: &r.violations,
                exact_set_violations: &r.exact_set_violations,
                histogram: &r.histogram,
            },
        ),
        Format::Csv => emit_csv(
            out,
            r.samples.iter().map(|s| SurveyRow {
                k: cfg.k,
                state: s.state.to_string(),
                period: s.period,
                conjecture_ok: s.conjecture_ok,
            }),
        ),
        Format::Human => {
            writeln!(
                out,
                "k={} samples={} seed={}",
                cfg.k,
                r.samples.len(),
                cfg.seed
            )
            .map_err(io_err)?;
            for (p, s) in &r.histogram {
                let exact = s
                    .exact_set_ok
                    .map_or(String::new(), |t| format!(" exact_set_ok={t}"));
                writeln!(
                    out,
                    "period={p} count={} conjecture_ok={}{exact} exemplar={}",
                    s.count, s.conjecture_ok, s.exemplar
                )
                .map_err(io_err)?;
            }
            let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            writeln!(out, "not_closed={}", r.not_closed).map_err(io_err)?;
            writeln!(out, "violations={}", list(&r.violations)).map_err(io_err)?;
            if cfg.k == 4 {
                writeln!(
                    out,
                    "exact_set_violations={}",
                    list(&r.exact_set_violations)
                )
                .map_err(io_err)?;
            }
            Ok(())
        }
    }
}
