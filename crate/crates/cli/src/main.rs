//! `multitrial`: encode, corrupt and list-decode GRS words from the command line.
//!
//! Structured output is JSON on stdout; diagnostics go to stderr. Exit codes: 0 on
//! success, 2 on invalid input, 3 when `--verify` finds a disagreement with the
//! brute-force oracle.

use std::fmt::Write as _;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multitrial_core::profile::{run_bench, BenchReport};
use multitrial_core::{
    brute_force_nearest, hamming_distance, inject_errors, make_schedule, multi_trial_decode, CodeSpec, DecodeResult,
    GrsCode, OracleBudget, Poly, Schedule,
};
use serde::Serialize;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "multitrial",
    version,
    about = "Multi-trial Guruswami-Sudan list decoding of GRS codes"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Field size (prime).
    #[arg(long, global = true)]
    q: Option<u64>,
    /// Code length.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Code dimension.
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Evaluation points, comma separated (default 1..=n).
    #[arg(long, global = true)]
    alphas: Option<String>,
    /// Column multipliers, comma separated (default all ones).
    #[arg(long, global = true)]
    ws: Option<String>,
    /// RNG seed; required by `corrupt` and `bench`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cross-check results against brute-force oracles.
    #[arg(long, global = true)]
    verify: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct Target {
    /// Target multiplicity.
    #[arg(long)]
    s: Option<usize>,
    /// Target list size.
    #[arg(long)]
    ell: Option<usize>,
    /// Explicit token list, e.g. `S1,ROOT,S1,S2,ROOT` (overrides --s/--ell).
    #[arg(long)]
    tokens: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Encode an information polynomial given by its coefficients, lowest first.
    Encode {
        #[arg(long)]
        info: Option<String>,
    },
    /// Change exactly `weight` symbols of a word.
    Corrupt {
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        weight: Option<usize>,
    },
    /// Run the multi-trial decoder on a received word.
    Decode {
        #[arg(long)]
        received: Option<String>,
        #[command(flatten)]
        target: Target,
    },
    /// Show the default schedule and the radius at each decoding attempt.
    Schedule {
        #[command(flatten)]
        target: Target,
    },
    /// Compare multi-trial refinement with one-shot reduction on seeded random trials.
    Bench {
        #[command(flatten)]
        target: Target,
        /// Trials per error weight.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Error weights: a list (`0,2,5`) or an inclusive range (`0-8`); default 0 to the target radius.
        #[arg(long)]
        weights: Option<String>,
    },
}

enum Failure {
    Invalid(String),
    Mismatch(String),
}

impl From<multitrial_core::Error> for Failure {
    fn from(e: multitrial_core::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn invalid<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Invalid(msg.into()))
}

/// Reads `-` as a line from stdin; otherwise returns the argument.
fn input(arg: &str) -> CliResult<String> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut buf = String::new();
    io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Failure::Invalid(format!("reading stdin: {e}")))?;
    Ok(buf)
}

fn parse_list<T: std::str::FromStr>(name: &str, text: &str) -> CliResult<Vec<T>> {
    let text = text.trim().trim_start_matches('[').trim_end_matches(']');
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Failure::Invalid(format!("--{name}: cannot parse {t:?}")))
        })
        .collect()
}

fn parse_weights(text: &str) -> CliResult<Vec<usize>> {
    if let Some((a, b)) = text.split_once('-') {
        let (a, b): (usize, usize) = match (a.trim().parse(), b.trim().parse()) {
            (Ok(a), Ok(b)) if a <= b => (a, b),
            _ => return invalid(format!("--weights: bad range {text:?}")),
        };
        return Ok((a..=b).collect());
    }
    parse_list("weights", text)
}

fn build_code(c: &Common) -> CliResult<GrsCode> {
    let (Some(q), Some(n), Some(k)) = (c.q, c.n, c.k) else {
        return invalid("--q, --n and --k are required");
    };
    let spec = CodeSpec {
        q,
        n,
        k,
        alphas: c.alphas.as_deref().map(|a| parse_list("alphas", a)).transpose()?,
        ws: c.ws.as_deref().map(|w| parse_list("ws", w)).transpose()?,
    };
    Ok(spec.build()?)
}

fn build_schedule(code: &GrsCode, t: &Target) -> CliResult<Schedule> {
    match (&t.tokens, t.s, t.ell) {
        (Some(tokens), _, _) => Ok(Schedule::parse(tokens)?),
        (None, Some(s), Some(ell)) => Ok(make_schedule(code.n(), code.k(), s, ell)?),
        _ => invalid("give --s and --ell, or --tokens"),
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// Rendered output for one subcommand.
struct Output {
    json: serde_json::Value,
    text: String,
}

fn cmd_encode(code: &GrsCode, info: Option<&str>) -> CliResult<Output> {
    let Some(info) = info else {
        return invalid("--info is required");
    };
    let coeffs: Vec<i64> = parse_list("info", &input(info)?)?;
    let f = Poly::from_coeffs(code.field(), &coeffs);
    let cw = code.encode(&f)?;
    Ok(Output {
        text: join(&cw),
        json: json!({ "codeword": cw }),
    })
}

fn cmd_corrupt(code: &GrsCode, c: &Common, word: Option<&str>, weight: Option<usize>) -> CliResult<Output> {
    let (Some(word), Some(weight)) = (word, weight) else {
        return invalid("--word and --weight are required");
    };
    let Some(seed) = c.seed else {
        return invalid("--seed is required for corrupt");
    };
    let word: Vec<u32> = parse_list("word", &input(word)?)?;
    code.check_word(&word)?;
    let (received, positions) = inject_errors(code.field(), &word, weight, seed)?;
    if c.verify && hamming_distance(&word, &received)? != weight {
        return Err(Failure::Mismatch("corrupted word has the wrong distance".into()));
    }
    Ok(Output {
        text: format!("received:  {}\npositions: {}", join(&received), join(&positions)),
        json: json!({ "received": received, "positions": positions }),
    })
}

fn decode_text(res: &DecodeResult) -> String {
    let mut out = String::new();
    let stop = res.stopped_at;
    let status = serde_json::to_value(res.status).unwrap();
    let _ = writeln!(
        out,
        "status {}  stopped at s={} ell={} tau={}",
        status.as_str().unwrap_or_default(),
        stop.s,
        stop.ell,
        stop.tau
    );
    let _ = writeln!(out, "candidates:");
    for c in &res.candidates {
        let _ = writeln!(out, "  d={:<3} f={}  c={}", c.distance, c.f, join(&c.codeword));
    }
    let _ = writeln!(out, "trace:");
    let _ = writeln!(
        out,
        "  {:<8} {:>3} {:>4} {:>6} {:>6} {:>5} {:>4} {:>6}",
        "step", "s", "ell", "od", "ops", "wdeg", "tau", "found"
    );
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    for t in &res.trace {
        let _ = writeln!(
            out,
            "  {:<8} {:>3} {:>4} {:>6} {:>6} {:>5} {:>4} {:>6}",
            t.step,
            t.s,
            t.ell,
            opt(t.od_before.map(|v| v.to_string())),
            opt(t.transformations.map(|v| v.to_string())),
            opt(t.wdeg.map(|v| v.to_string())),
            opt(t.tau.map(|v| v.to_string())),
            opt(t.candidates.map(|v| v.to_string())),
        );
    }
    out.trim_end().to_string()
}

/// The candidate list must be exactly the codewords within the stopping radius.
fn verify_decode(code: &GrsCode, word: &[u32], res: &DecodeResult) -> CliResult<()> {
    let oracle = brute_force_nearest(code, word, res.stopped_at.tau, OracleBudget::default())?;
    if oracle != res.candidates {
        return Err(Failure::Mismatch(format!(
            "decoder returned {} candidates, brute force finds {} within tau = {}",
            res.candidates.len(),
            oracle.len(),
            res.stopped_at.tau
        )));
    }
    Ok(())
}

fn cmd_decode(code: &GrsCode, c: &Common, received: Option<&str>, target: &Target) -> CliResult<Output> {
    let Some(received) = received else {
        return invalid("--received is required");
    };
    let word: Vec<u32> = parse_list("received", &input(received)?)?;
    let schedule = build_schedule(code, target)?;
    let res = multi_trial_decode(code, &word, &schedule)?;
    if c.verify {
        verify_decode(code, &word, &res)?;
        eprintln!(
            "verified: candidate list matches brute force at tau = {}",
            res.stopped_at.tau
        );
    }
    Ok(Output {
        text: decode_text(&res),
        json: to_json(&res),
    })
}

fn cmd_schedule(code: &GrsCode, target: &Target) -> CliResult<Output> {
    let schedule = build_schedule(code, target)?;
    let attempts = schedule.attempts(code.n(), code.k());
    let (s, ell) = schedule.target();
    let mut text = format!(
        "target s={s} ell={ell}\ntokens ROOT(implicit) {}\nattempts:",
        schedule
            .tokens()
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    for a in &attempts {
        let tau = a.tau.map_or("-".into(), |t| t.to_string());
        let _ = write!(text, "\n  s={} ell={} tau={tau}", a.s, a.ell);
    }
    Ok(Output {
        text,
        json: json!({
            "target": { "s": s, "ell": ell },
            "tokens": schedule.tokens(),
            "effective_tokens": schedule.effective_tokens(),
            "attempts": attempts,
        }),
    })
}

fn bench_text(r: &BenchReport) -> String {
    let mut out = format!(
        "target s={} ell={}  schedule {}\n{:>6} {:>6} {:>6} {:>12} {:>12} {:>10}\n",
        r.target.0, r.target.1, r.schedule, "weight", "trials", "found", "multi-trial", "one-shot", "max-steps"
    );
    for w in &r.per_weight {
        let _ = writeln!(
            out,
            "{:>6} {:>6} {:>6} {:>12.1} {:>12.1} {:>10}",
            w.weight, w.trials, w.found, w.median_multi_trial, w.median_one_shot, w.max_micro_steps
        );
    }
    let _ = write!(
        out,
        "median transformations overall: multi-trial {:.1}, one-shot {:.1}",
        r.overall.multi_trial, r.overall.one_shot
    );
    out
}

fn cmd_bench(code: &GrsCode, c: &Common, target: &Target, trials: usize, weights: Option<&str>) -> CliResult<Output> {
    let Some(seed) = c.seed else {
        return invalid("--seed is required for bench");
    };
    let schedule = build_schedule(code, target)?;
    let weights = match weights {
        Some(w) => parse_weights(w)?,
        None => {
            let (s, ell) = schedule.target();
            let tau = multitrial_core::decoding_radius(s, ell, code.n(), code.k()).unwrap_or(0);
            (0..=tau).collect()
        }
    };
    let report = run_bench(code, &schedule, &weights, trials, seed)?;
    Ok(Output {
        text: bench_text(&report),
        json: to_json(&report),
    })
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("output types serialize")
}

fn run(cli: &Cli) -> CliResult<Output> {
    let c = &cli.common;
    let code = build_code(c)?;
    match &cli.command {
        Command::Encode { info } => cmd_encode(&code, info.as_deref()),
        Command::Corrupt { word, weight } => cmd_corrupt(&code, c, word.as_deref(), *weight),
        Command::Decode { received, target } => cmd_decode(&code, c, received.as_deref(), target),
        Command::Schedule { target } => cmd_schedule(&code, target),
        Command::Bench {
            target,
            trials,
            weights,
        } => cmd_bench(&code, c, target, *trials, weights.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.common.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("valid JSON")),
                Format::Text => println!("{}", out.text),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
    }
}
