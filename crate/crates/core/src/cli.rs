//! The `shiftlab` command line.
//!
//! Every command reads a shift from a JSON file. Usage errors exit with 2,
//! failures of the computation itself with 1.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::boost::{
    auto_plan, build_recoder, certificate, check_no_overlap, gamma, manual_plan, Certificate, GammaFamily,
    OverlapVerdict,
};
use crate::code::higher_block;
use crate::entropy::{entropy_by_counting, topological_entropy};
use crate::error::Error;
use crate::independence::{asymptotic_pair, hat_presentation, ind_entropy_approx_of, ind_entropy_of, LogRatio};
use crate::io::{
    graph_to_json, load_manual_plan, load_spec, plan_to_json, recoder_to_json, round_sig, sft_to_json, PlanJson,
};
use crate::language::enumerate_words;
use crate::spec::{Caps, ShiftSpec};
use crate::verify::{check_spec, random_suite, run_suite};

#[derive(Parser, Debug)]
#[command(
    name = "shiftlab",
    version,
    about = "Entropy and independence entropy of sofic shifts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Input {
    /// Shift specification (SFT or labeled graph JSON).
    pub file: PathBuf,
    /// Print machine-readable JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Topological entropy.
    Entropy {
        #[command(flatten)]
        input: Input,
        /// Also count blocks exactly up to this length.
        #[arg(long, value_name = "N_MAX")]
        counting: Option<usize>,
    },
    /// Independence entropy.
    IndEntropy {
        #[command(flatten)]
        input: Input,
        /// Also evaluate the finite-length quantity at this block length.
        #[arg(long, value_name = "M")]
        approx: Option<usize>,
        /// Print the optimal choice cycle.
        #[arg(long)]
        witness: bool,
    },
    /// Presentation of the multi-choice shift.
    Hat {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Recoding over N-blocks.
    HigherBlock {
        file: PathBuf,
        #[arg(long = "N", value_name = "N")]
        n: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Two points differing in exactly one coordinate.
    AsymptoticPair {
        #[command(flatten)]
        input: Input,
    },
    /// All words of a given length.
    Words {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
    },
    /// Recode towards higher independence entropy and certify the gain.
    Boost {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_epsilon)]
        epsilon: Option<f64>,
        /// Number of inner words per family word.
        #[arg(long = "K", value_name = "K", default_value_t = 1)]
        reps: usize,
        /// Plan file with n, k, f, M, S and C.
        #[arg(long, value_name = "PLAN")]
        manual: Option<PathBuf>,
        /// Write the recoder to this file.
        #[arg(long, value_name = "OUT")]
        emit_recoder: Option<PathBuf>,
    },
    /// Check invariants on one shift or on a seeded random suite.
    Verify {
        file: Option<PathBuf>,
        /// Number of random SFTs.
        #[arg(long, value_name = "TRIALS")]
        fuzz: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_epsilon(s: &str) -> std::result::Result<f64, String> {
    let e: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if e > 0.0 && e < 1.0 {
        Ok(e)
    } else {
        Err(format!("epsilon must lie strictly between 0 and 1, got {e}"))
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.into())
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    0
                }
                _ => {
                    let _ = write!(err, "{shown}");
                    2
                }
            };
        }
    };
    let caps = Caps::from_env();
    let name = command_name(&cli.command);
    match execute(cli.command, &caps, out) {
        Ok(status) => status,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {name}: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {name}: {e}");
            1
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Entropy { .. } => "entropy",
        Command::IndEntropy { .. } => "ind-entropy",
        Command::Hat { .. } => "hat",
        Command::HigherBlock { .. } => "higher-block",
        Command::AsymptoticPair { .. } => "asymptotic-pair",
        Command::Words { .. } => "words",
        Command::Boost { .. } => "boost",
        Command::Verify { .. } => "verify",
    }
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string(value).map_err(Error::from)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn write_json<T: Serialize>(path: Option<&Path>, out: &mut dyn Write, value: &T) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => {
            let text = serde_json::to_string_pretty(value).map_err(Error::from)?;
            std::fs::write(p, text + "\n")?;
            Ok(())
        }
        None => print_json(out, value),
    }
}

fn ratio_text(r: &LogRatio) -> String {
    if r.is_zero() {
        "0".into()
    } else {
        format!("ln({})/{}", r.product, r.length)
    }
}

#[derive(Serialize)]
struct EntropyJson {
    value: f64,
    eigenvalue: f64,
    component: usize,
    residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    counts: Option<Vec<CountJson>>,
}

#[derive(Serialize)]
struct CountJson {
    n: usize,
    count: String,
    rate: f64,
}

#[derive(Serialize)]
struct IndJson {
    value: f64,
    cycle: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    approx: Option<ApproxJson>,
}

#[derive(Serialize)]
struct ApproxJson {
    m: usize,
    value: f64,
    fillings: String,
    witness: Vec<String>,
}

#[derive(Serialize)]
struct PairJson {
    diff_index: isize,
    x: PointJson,
    y: PointJson,
}

#[derive(Serialize)]
struct PointJson {
    left: String,
    middle: String,
    right: String,
}

#[derive(Serialize)]
struct BoostJson {
    plan: PlanJson,
    #[serde(rename = "K")]
    reps: usize,
    eta: usize,
    gamma_size: String,
    enumerated: bool,
    overlap: OverlapJson,
    certificate: CertificateJson,
}

#[derive(Serialize)]
struct OverlapJson {
    structural: Vec<String>,
    inner: Option<[usize; 3]>,
    tail: Option<[usize; 3]>,
    exhaustive: bool,
    passed: bool,
}

#[derive(Serialize)]
struct CertificateJson {
    value: f64,
    limit: f64,
    target: Option<f64>,
    meets_target: Option<bool>,
    witness_length: usize,
    witness_head: String,
}

fn overlap_json(v: &OverlapVerdict) -> OverlapJson {
    let triple = |o: &crate::boost::Overlap| [o.first, o.second, o.shift];
    OverlapJson {
        structural: v.structural.clone(),
        inner: v.inner.as_ref().map(triple),
        tail: v.tail.as_ref().map(triple),
        exhaustive: v.exhaustive,
        passed: v.passed(),
    }
}

fn certificate_json(c: &Certificate) -> CertificateJson {
    CertificateJson {
        value: round_sig(c.value),
        limit: round_sig(c.limit),
        target: c.target.map(round_sig),
        meets_target: c.meets_target(),
        witness_length: c.witness.len(),
        witness_head: c.witness.encode().swap_remove(0),
    }
}

fn execute(command: Command, caps: &Caps, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    match command {
        Command::Entropy { input, counting } => {
            let spec = load_spec(&input.file)?;
            let r = topological_entropy(&spec, caps)?;
            let counts = counting.map(|n| entropy_by_counting(&spec, n, caps)).transpose()?;
            if input.json {
                print_json(
                    out,
                    &EntropyJson {
                        value: round_sig(r.value),
                        eigenvalue: round_sig(r.eigenvalue),
                        component: r.component,
                        residual: round_sig(r.residual),
                        counts: counts.map(|cs| {
                            cs.into_iter()
                                .map(|c| CountJson {
                                    n: c.n,
                                    count: c.count.to_string(),
                                    rate: round_sig(c.rate),
                                })
                                .collect()
                        }),
                    },
                )?;
            } else {
                writeln!(out, "h = {}", round_sig(r.value))?;
                writeln!(out, "eigenvalue = {}", round_sig(r.eigenvalue))?;
                writeln!(out, "component = {}", r.component)?;
                writeln!(out, "residual = {:e}", r.residual)?;
                for c in counts.unwrap_or_default() {
                    writeln!(
                        out,
                        "n = {:3}  |B_n| = {}  ln|B_n|/n = {}",
                        c.n,
                        c.count,
                        round_sig(c.rate)
                    )?;
                }
            }
        }
        Command::IndEntropy { input, approx, witness } => {
            let spec = load_spec(&input.file)?;
            let hat = hat_presentation(&spec, caps)?;
            let exact = ind_entropy_of(&hat)?;
            let approx = approx.map(|m| ind_entropy_approx_of(&hat, m)).transpose()?;
            let base = spec.alphabet();
            if input.json {
                print_json(
                    out,
                    &IndJson {
                        value: round_sig(exact.value),
                        cycle: exact.cycle.encode(base),
                        approx: approx.map(|a| ApproxJson {
                            m: a.m,
                            value: round_sig(a.value),
                            fillings: a.fillings.to_string(),
                            witness: a.witness.encode(base),
                        }),
                    },
                )?;
            } else {
                writeln!(out, "h_ind = {} = {}", round_sig(exact.value), ratio_text(&exact.ratio))?;
                if witness {
                    writeln!(out, "cycle = {}", exact.cycle.encode(base).join(" "))?;
                }
                if let Some(a) = approx {
                    writeln!(
                        out,
                        "approx(m = {}) = {}  fillings = {}",
                        a.m,
                        round_sig(a.value),
                        a.fillings
                    )?;
                    if witness {
                        writeln!(out, "block = {}", a.witness.encode(base).join(" "))?;
                    }
                }
            }
        }
        Command::Hat { file, output } => {
            let hat = hat_presentation(&load_spec(&file)?, caps)?;
            write_json(output.as_deref(), out, &graph_to_json(&hat.graph))?;
        }
        Command::HigherBlock { file, n, output } => {
            if n == 0 {
                return Err(Failure::Usage("--N must be at least 1".into()));
            }
            let hb = higher_block(&load_spec(&file)?, n, caps)?;
            match &hb.shift {
                ShiftSpec::Sft(s) => write_json(output.as_deref(), out, &sft_to_json(s))?,
                ShiftSpec::Sofic(g) => write_json(output.as_deref(), out, &graph_to_json(g))?,
            }
        }
        Command::AsymptoticPair { input } => {
            let spec = load_spec(&input.file)?;
            let p = asymptotic_pair(&spec, caps)?;
            let a = spec.alphabet();
            let point = |x: &crate::independence::EventuallyPeriodic| PointJson {
                left: a.render(&x.left),
                middle: a.render(&x.middle),
                right: a.render(&x.right),
            };
            if input.json {
                print_json(
                    out,
                    &PairJson {
                        diff_index: p.diff_index,
                        x: point(&p.x),
                        y: point(&p.y),
                    },
                )?;
            } else {
                let (from, to) = (p.diff_index - 12, p.diff_index + 13);
                writeln!(out, "x[{from}..{to}) = {}", a.render(&p.x.window(from, to)))?;
                writeln!(out, "y[{from}..{to}) = {}", a.render(&p.y.window(from, to)))?;
                writeln!(out, "differ only at {}", p.diff_index)?;
                for (name, x) in [("x", &p.x), ("y", &p.y)] {
                    let q = point(x);
                    writeln!(out, "{name} = ({})^inf . {} ({})^inf", q.left, q.middle, q.right)?;
                }
            }
        }
        Command::Words { input, n } => {
            let spec = load_spec(&input.file)?;
            let words = enumerate_words(&spec, n, caps)?;
            let a = spec.alphabet();
            let rendered: Vec<String> = words.iter().map(|w| a.render(w)).collect();
            if input.json {
                print_json(out, &rendered)?;
            } else {
                for w in rendered {
                    writeln!(out, "{w}")?;
                }
            }
        }
        Command::Boost {
            input,
            epsilon,
            reps,
            manual,
            emit_recoder,
        } => {
            let spec = load_spec(&input.file)?;
            let mut plan = match (&manual, epsilon) {
                (Some(path), _) => manual_plan(&spec, &load_manual_plan(path)?, caps)?,
                (None, Some(e)) => auto_plan(&spec, e, caps)?,
                (None, None) => return Err(Failure::Usage("--epsilon is required without --manual".into())),
            };
            if manual.is_some() {
                plan.epsilon = epsilon;
            }
            let family = gamma(&plan, reps, caps.words)?;
            let verdict = check_no_overlap(&family);
            let recoder = match &emit_recoder {
                Some(path) => {
                    let rec = build_recoder(&family, &verdict)?;
                    let doc = recoder_to_json(&family, &rec, &spec, caps)?;
                    write_json(Some(path), out, &doc)?;
                    Some(rec)
                }
                None => None,
            };
            let cert = certificate(&family, recoder.as_ref());
            if input.json {
                print_json(
                    out,
                    &BoostJson {
                        plan: plan_to_json(&plan),
                        reps,
                        eta: family.eta,
                        gamma_size: family.size.to_string(),
                        enumerated: family.words.is_some(),
                        overlap: overlap_json(&verdict),
                        certificate: certificate_json(&cert),
                    },
                )?;
            } else {
                print_boost(out, &family, &verdict, &cert)?;
            }
        }
        Command::Verify { file, fuzz, seed } => {
            let mut failed = false;
            match (&file, fuzz) {
                (None, None) => return Err(Failure::Usage("give a spec file or --fuzz TRIALS".into())),
                (Some(path), _) => {
                    for c in check_spec(&load_spec(path)?, caps)? {
                        failed |= !c.passed;
                        let tag = if c.passed { "PASS" } else { "FAIL" };
                        writeln!(out, "{tag}  {:48} {}", c.name, c.detail)?;
                    }
                }
                _ => {}
            }
            if let Some(trials) = fuzz {
                let summary = run_suite(&random_suite(trials, seed, caps), caps)?;
                writeln!(out, "random SFTs: {} (seed {seed})", summary.trials)?;
                for (name, passed, total) in &summary.rows {
                    let tag = if passed == total { "PASS" } else { "FAIL" };
                    writeln!(out, "{tag}  {name:48} {passed}/{total}")?;
                }
                for (name, trial, detail) in &summary.failures {
                    writeln!(out, "first failure of `{name}`: trial {trial}, {detail}")?;
                }
                failed |= !summary.failures.is_empty();
            }
            return Ok(i32::from(failed));
        }
    }
    Ok(0)
}

fn print_boost(
    out: &mut dyn Write,
    family: &GammaFamily,
    verdict: &OverlapVerdict,
    cert: &Certificate,
) -> std::io::Result<()> {
    let p = &family.plan;
    let a = p.core.graph.alphabet();
    writeln!(
        out,
        "core: {} vertices, rho = {}, lambda = {}, alpha = {}",
        p.core.v,
        p.core.rho,
        round_sig(p.core.lambda),
        round_sig(p.core.alpha)
    )?;
    if let Some(l) = &p.lengths {
        writeln!(
            out,
            "k interval: ({}, {}), |B_k| = {}",
            round_sig(l.lower),
            round_sig(l.upper),
            l.block_count
        )?;
    }
    writeln!(out, "n = {}, k = {}, f = {}, l = {}", p.n, p.k, p.f(), p.l())?;
    writeln!(
        out,
        "M = {}, S = {}, C = {}",
        a.render(&p.marker.m),
        a.render(&p.marker.s),
        a.render(&p.marker.c)
    )?;
    writeln!(
        out,
        "|Upsilon| = {} (ell = {}, r = {})",
        p.upsilon.count, p.upsilon.ell, p.upsilon.r
    )?;
    writeln!(
        out,
        "K = {}, eta = {}, |Gamma| = {}",
        family.reps, family.eta, family.size
    )?;
    let overlap = if verdict.verified() {
        "verified exhaustively".to_string()
    } else if verdict.passed() {
        "structural checks pass (family not enumerated)".to_string()
    } else if let Some(o) = &verdict.inner {
        format!("words {} and {} overlap at shift {}", o.first, o.second, o.shift)
    } else {
        verdict.structural.join("; ")
    };
    writeln!(out, "overlap: {overlap}")?;
    if let Some(o) = &verdict.tail {
        writeln!(
            out,
            "tail overlap: words {} and {} at shift {}",
            o.first, o.second, o.shift
        )?;
    }
    writeln!(out, "value = {}", round_sig(cert.value))?;
    writeln!(out, "limit = {}", round_sig(cert.limit))?;
    if let (Some(t), Some(ok)) = (cert.target, cert.meets_target()) {
        writeln!(out, "target = {} ({})", round_sig(t), if ok { "met" } else { "missed" })?;
    }
    let enc = cert.witness.encode();
    writeln!(out, "witness = {} {{*}}^{}", enc[0], cert.witness.stars)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("shiftlab").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn epsilon_range_is_a_usage_error() {
        let (code, _, err) = run_str(&["boost", "x.json", "--epsilon", "1.5"]);
        assert_eq!(code, 2);
        assert!(err.contains("epsilon"));
        assert!(parse_epsilon("0.5").is_ok());
        assert!(parse_epsilon("0").is_err());
    }

    #[test]
    fn missing_file_is_a_domain_error() {
        let (code, _, err) = run_str(&["entropy", "/nonexistent/spec.json"]);
        assert_eq!(code, 1);
        assert!(err.contains("Io"));
    }

    #[test]
    fn unknown_command_is_a_usage_error() {
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["verify"]).0, 2);
    }
}
