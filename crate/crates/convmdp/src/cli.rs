//! Command-line front end. One subcommand per task, JSON on stdout,
//! human-readable rendering behind --pretty. Exit codes: 0 on success,
//! 2 on validation errors, 1 when --assert is given and a property check
//! comes back false.

use crate::code::ConvCode;
use crate::decoder::{self, CodeRef, DecodeAlgo, SimulationConfig, StreamFile};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::minors;
use crate::pattern::{gen_pattern, PatternSpec};
use crate::search::{self, SearchMode, SearchSpec};
use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "convmdp", version, about = "Complete j-MDP convolutional codes: checks, searches and erasure decoding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a structural property of a code
    Check(CheckArgs),
    /// Exact j-th column distance by exhaustive enumeration
    Distance(DistanceArgs),
    /// Decode a received stream
    Decode(DecodeArgs),
    /// Monte-Carlo encode/erase/decode statistics
    Simulate(SimulateArgs),
    /// Search for complete j-MDP codes
    Search(SearchArgs),
    /// Check a closed-form code family against the exhaustive search
    VerifyFamily(VerifyFamilyArgs),
    /// Generate an erasure pattern
    GenPattern(GenPatternArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Code file path or inline JSON
    #[arg(long)]
    code: String,
    /// complete-j-mdp | mdp | reverse-mdp | column-distance
    #[arg(long)]
    property: String,
    #[arg(long, default_value_t = 0)]
    j: usize,
    /// Exit with status 1 when the property does not hold
    #[arg(long)]
    assert: bool,
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct DistanceArgs {
    #[arg(long)]
    code: String,
    #[arg(long)]
    j: usize,
}

#[derive(Args)]
struct DecodeArgs {
    /// Code file path or inline JSON; defaults to the code inside the stream file
    #[arg(long)]
    code: Option<String>,
    /// Stream file path or inline JSON
    #[arg(long)]
    stream: String,
    /// low-delay | windowed | oracle
    #[arg(long, default_value = "low-delay")]
    algo: String,
    /// Tolerated decoding delay T (low-delay)
    #[arg(long, default_value_t = 0)]
    delay: usize,
    /// Recover individually determined components of a step even when the
    /// step cannot be recovered completely
    #[arg(long)]
    partial: bool,
    /// Window level for the windowed decoder (default: detected)
    #[arg(long)]
    level: Option<usize>,
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    code: String,
    /// Message steps per trial
    #[arg(long)]
    steps: usize,
    /// iid:RATE | burst:START,LEN | explicit pattern text
    #[arg(long)]
    pattern: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "low-delay")]
    algo: String,
    #[arg(long, default_value_t = 0)]
    delay: usize,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long)]
    partial: bool,
    #[arg(long)]
    level: Option<usize>,
}

#[derive(Args)]
struct SearchArgs {
    /// Field spec: p, p^r or p^r/modulus (e.g. 13, 2^4, 2^4/19)
    #[arg(long)]
    field: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long)]
    delta: usize,
    #[arg(long)]
    j: usize,
    /// exhaustive | random
    #[arg(long, default_value = "exhaustive")]
    mode: String,
    #[arg(long, default_value_t = 10000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the report to this file
    #[arg(long)]
    out: Option<String>,
    /// Write solutions as CSV instead of JSON to --out
    #[arg(long)]
    csv: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    pretty: bool,
    /// Render solution entries as polynomials in α
    #[arg(long)]
    alpha: bool,
}

#[derive(Args)]
struct VerifyFamilyArgs {
    /// 13 or 16
    #[arg(long)]
    field: String,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args)]
struct GenPatternArgs {
    /// iid:RATE | burst:START,LEN | explicit pattern text
    #[arg(long)]
    spec: String,
    #[arg(long)]
    length: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Runs the CLI against the given arguments (without the program name),
/// writing reports to `out`. Returns the process exit code.
pub fn run<W: Write>(args: &[String], out: &mut W) -> i32 {
    let mut argv = vec!["convmdp".to_string()];
    argv.extend_from_slice(args);
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with success exit codes
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch<W: Write>(command: Command, out: &mut W) -> Result<i32> {
    match command {
        Command::Check(args) => check(args, out),
        Command::Distance(args) => distance(args, out),
        Command::Decode(args) => decode(args, out),
        Command::Simulate(args) => simulate(args, out),
        Command::Search(args) => search_cmd(args, out),
        Command::VerifyFamily(args) => verify_family(args, out),
        Command::GenPattern(args) => gen_pattern_cmd(args, out),
    }
}

fn load_text(path_or_inline: &str) -> Result<String> {
    if path_or_inline.trim_start().starts_with('{') {
        return Ok(path_or_inline.to_string());
    }
    std::fs::read_to_string(path_or_inline)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {path_or_inline}: {e}")))
}

fn load_code(path_or_inline: &str) -> Result<ConvCode> {
    ConvCode::from_json(&load_text(path_or_inline)?)
}

fn emit<W: Write, T: serde::Serialize>(out: &mut W, value: &T) -> Result<()> {
    let text = serde_json::to_string(value)
        .map_err(|e| Error::InvalidParameter(format!("serialization failed: {e}")))?;
    writeln!(out, "{text}").map_err(|e| Error::InvalidParameter(format!("write failed: {e}")))?;
    Ok(())
}

fn check<W: Write>(args: CheckArgs, out: &mut W) -> Result<i32> {
    let code = load_code(&args.code)?;
    let report = match args.property.as_str() {
        "complete-j-mdp" => minors::is_complete_j_mdp(&code, args.j)?,
        "mdp" => minors::is_mdp(&code),
        "reverse-mdp" => minors::is_reverse_mdp(&code),
        "column-distance" => minors::is_jth_distance_maximal(&code, args.j),
        other => return Err(Error::InvalidParameter(format!("unknown property {other:?}"))),
    };
    if args.pretty {
        let verdict = if report.holds { "holds" } else { "fails" };
        writeln!(
            out,
            "{} (j = {}) {verdict}: {} minors checked{}",
            report.property,
            report.j,
            report.minors_checked,
            report
                .counterexample_columns
                .as_ref()
                .map(|c| format!(", zero minor at columns {c:?}"))
                .unwrap_or_default()
        )
        .ok();
    } else {
        emit(out, &report)?;
    }
    Ok(if args.assert && !report.holds { 1 } else { 0 })
}

fn distance<W: Write>(args: DistanceArgs, out: &mut W) -> Result<i32> {
    let code = load_code(&args.code)?;
    let d = minors::column_distance_oracle(&code, args.j)?;
    emit(out, &serde_json::json!({ "j": args.j, "column_distance": d }))?;
    Ok(0)
}

fn decode<W: Write>(args: DecodeArgs, out: &mut W) -> Result<i32> {
    let file: StreamFile = serde_json::from_str(&load_text(&args.stream)?)
        .map_err(|e| Error::InvalidParameter(format!("bad stream JSON: {e}")))?;
    let code = match (&args.code, &file.code) {
        (Some(c), _) => load_code(c)?,
        (None, CodeRef::Inline(cf)) => {
            let text = serde_json::to_string(cf)
                .map_err(|e| Error::InvalidParameter(format!("bad inline code: {e}")))?;
            ConvCode::from_json(&text)?
        }
        (None, CodeRef::Path(p)) => load_code(p)?,
    };
    let stream = file.into_stream(code)?;
    let algo = DecodeAlgo::from_str(&args.algo)?;
    let report = decoder::decode(&stream, algo, args.delay, args.partial, args.level)?;
    if args.pretty {
        writeln!(
            out,
            "recovered {} symbols (max delay {:?}), lost {:?}",
            report.recovered.len(),
            report.max_delay(),
            report.lost
        )
        .ok();
    } else {
        emit(out, &report)?;
    }
    Ok(0)
}

fn simulate<W: Write>(args: SimulateArgs, out: &mut W) -> Result<i32> {
    let code = load_code(&args.code)?;
    let cfg = SimulationConfig {
        message_steps: args.steps,
        trials: args.trials,
        seed: args.seed,
        pattern: PatternSpec::parse(&args.pattern)?,
        algo: DecodeAlgo::from_str(&args.algo)?,
        delay: args.delay,
        partial: args.partial,
        level: args.level,
    };
    let report = decoder::simulate(&code, &cfg)?;
    emit(out, &report)?;
    Ok(0)
}

fn search_cmd<W: Write>(args: SearchArgs, out: &mut W) -> Result<i32> {
    let field: Arc<Field> = Arc::new(args.field.parse()?);
    let mode = match args.mode.as_str() {
        "exhaustive" => SearchMode::Exhaustive,
        "random" => SearchMode::Randomized { trials: args.trials, seed: args.seed },
        other => return Err(Error::InvalidParameter(format!("unknown mode {other:?}"))),
    };
    let spec = SearchSpec {
        field: field.clone(),
        n: args.n,
        k: args.k,
        delta: args.delta,
        j: args.j,
        normalize: true,
        mode: mode.clone(),
        require_left_prime: None,
    };
    let report = match mode {
        SearchMode::Exhaustive => search::exhaustive_search(&spec, args.threads)?,
        SearchMode::Randomized { .. } => search::randomized_search(&spec)?,
    };
    if let Some(path) = &args.out {
        let contents = if args.csv {
            report.csv()
        } else {
            serde_json::to_string(&report)
                .map_err(|e| Error::InvalidParameter(format!("serialization failed: {e}")))?
        };
        std::fs::write(path, contents)
            .map_err(|e| Error::InvalidParameter(format!("cannot write {path}: {e}")))?;
    }
    if args.pretty {
        writeln!(
            out,
            "{} candidates, {} solutions ({:.3}%)",
            report.candidates, report.count, report.percentage
        )
        .ok();
        for sol in &report.solutions {
            if args.alpha {
                let rendered: Vec<String> = sol
                    .iter()
                    .map(|&v| field.alpha_notation(field.element(v as u64).unwrap()))
                    .collect();
                writeln!(out, "  [{}]", rendered.join(", ")).ok();
            } else {
                writeln!(out, "  {sol:?}").ok();
            }
        }
    } else {
        emit(out, &report)?;
    }
    Ok(0)
}

fn verify_family<W: Write>(args: VerifyFamilyArgs, out: &mut W) -> Result<i32> {
    let field: Arc<Field> = match args.field.as_str() {
        "13" => Field::shared(13, 1, None)?,
        "16" => Field::shared(2, 4, None)?,
        other => {
            return Err(Error::InvalidParameter(format!(
                "families exist for fields 13 and 16, not {other:?}"
            )))
        }
    };
    let report = search::verify_family(&field, args.threads)?;
    emit(out, &report)?;
    Ok(0)
}

fn gen_pattern_cmd<W: Write>(args: GenPatternArgs, out: &mut W) -> Result<i32> {
    let spec = PatternSpec::parse(&args.spec)?;
    let pattern = gen_pattern(&spec, args.length, args.seed)?;
    writeln!(out, "{pattern}").ok();
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let mut buf = Vec::new();
        let code = run(&args, &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    const F7_CODE: &str = r#"{"field":"7","n":2,"k":1,"delta":2,"H":[[1,1],[1,2],[5,5]]}"#;

    #[test]
    fn check_complete_j_mdp_inline() {
        let (code, out) = run_capture(&[
            "check", "--code", F7_CODE, "--property", "complete-j-mdp", "--j", "2", "--assert",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("\"holds\":true"));
    }

    #[test]
    fn assert_flag_sets_exit_code() {
        let (code, out) = run_capture(&[
            "check", "--code", F7_CODE, "--property", "complete-j-mdp", "--j", "3", "--assert",
        ]);
        assert_eq!(code, 1);
        assert!(out.contains("\"holds\":false"));
    }

    #[test]
    fn bad_flags_exit_2() {
        let (code, _) = run_capture(&["check", "--code", F7_CODE, "--property", "nope"]);
        assert_eq!(code, 2);
        let (code, _) = run_capture(&["frobnicate"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn distance_reports_oracle_value() {
        let (code, out) = run_capture(&["distance", "--code", F7_CODE, "--j", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"column_distance\":4"));
    }

    #[test]
    fn search_is_deterministic_modulo_elapsed() {
        let args = ["search", "--field", "5", "--delta", "2", "--j", "1"];
        let (c1, out1) = run_capture(&args);
        let (c2, out2) = run_capture(&args);
        assert_eq!((c1, c2), (0, 0));
        let mut v1: serde_json::Value = serde_json::from_str(&out1).unwrap();
        let mut v2: serde_json::Value = serde_json::from_str(&out2).unwrap();
        v1["elapsed_ms"] = 0.into();
        v2["elapsed_ms"] = 0.into();
        assert_eq!(v1, v2);
        assert_eq!(v1["count"], 24);
    }

    #[test]
    fn gen_pattern_output() {
        let (code, out) = run_capture(&["gen-pattern", "--spec", "burst:4,2", "--length", "10"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "....xx....");
    }

    #[test]
    fn decode_stream_inline() {
        // encode a short message with the F7 code and erase two symbols
        let code = ConvCode::from_json(F7_CODE).unwrap();
        let f = code.field().clone();
        let message: Vec<Vec<crate::gf::Element>> =
            (0..3).map(|v| vec![f.element(v).unwrap()]).collect();
        let steps = crate::decoder::encode_stream(&code, &message).unwrap();
        let pattern = crate::pattern::parse_pattern("x.|.x|..|..|..").unwrap();
        let stream =
            crate::decoder::ReceivedStream::from_codeword(code, &steps, &pattern, true).unwrap();
        let json = stream.to_json();
        let (status, out) =
            run_capture(&["decode", "--stream", &json, "--algo", "windowed"]);
        assert_eq!(status, 0);
        let report: crate::decoder::DecodeReport = serde_json::from_str(&out).unwrap();
        assert!(report.is_fully_recovered());
    }

    #[test]
    fn simulate_aggregates() {
        let (status, out) = run_capture(&[
            "simulate", "--code", F7_CODE, "--steps", "6", "--pattern", "iid:0.2", "--seed", "3",
            "--algo", "windowed", "--trials", "5",
        ]);
        assert_eq!(status, 0);
        let report: crate::decoder::SimReport = serde_json::from_str(&out).unwrap();
        assert_eq!(report.trials, 5);
        assert_eq!(report.value_mismatches, 0);
    }

    #[test]
    fn verify_family_f13() {
        let (status, out) = run_capture(&["verify-family", "--field", "13", "--threads", "2"]);
        assert_eq!(status, 0);
        assert!(out.contains("\"ok\":true"));
    }
}
