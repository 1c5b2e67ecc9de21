//! The command-line front end.

use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::coeff::Laurent;
use crate::diagram::{parse_link, BraidWord, LinkDiagram, SurgeryPresentation};
use crate::error::{Error, Result};
use crate::functor::{check_labeled_relations, check_relations, kauffman_table, tangle_relations, RelationReport};
use crate::qgroup::{ModularData, QGroup, RootSpec};
use crate::rt::{kirby_invariance_suite, rt_invariant_with, tqft_dim, DEFAULT_MAX_COST};
use crate::skein::{bracket, bracket_functor, bracket_statesum, jones_string, jones_with, Normalization};

/// Environment variable holding the default worker thread count.
pub const THREADS_ENV: &str = "QTQFT_THREADS";

/// Exit code for malformed input.
pub const EXIT_PARSE: i32 = 1;
/// Exit code for well-formed input that fails validation.
pub const EXIT_INVALID: i32 = 2;
/// Exit code for computations refused by a cost bound.
pub const EXIT_REFUSED: i32 = 3;
/// Exit code for a `check` suite with failing instances.
pub const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "qtangle", version, about = "Quantum invariants of links and 3-manifolds")]
struct Cli {
    /// Emit JSON instead of canonical text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (defaults to $QTQFT_THREADS, then the core count).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Maximum number of label tuples a coloring sum may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COST)]
    max_cost: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Auto,
    Statesum,
    Functor,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Relations,
    Kirby,
    DualAlg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kauffman bracket of a braid closure or PD diagram.
    Bracket {
        input: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Jones polynomial of an oriented diagram.
    Jones {
        input: String,
        /// Divide by the unknot value.
        #[arg(long)]
        divided: bool,
    },
    /// Colored invariant as a Laurent polynomial in s.
    Colored {
        input: String,
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        framings: Option<Vec<i64>>,
    },
    /// Surgery invariant of a closed 3-manifold.
    Rt {
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        root_exp: i64,
        /// Framings for inline link input.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        framings: Option<Vec<i64>>,
        input: String,
    },
    /// Dimension of the state space of a closed surface.
    TqftDim {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        genus: usize,
    },
    /// Quantum dimensions, fusion rules, Hopf matrix and twists at a root.
    ModularData {
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        root_exp: i64,
    },
    /// Run a property suite.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        /// Truncation order for the Kirby suite.
        #[arg(long, default_value_t = 4)]
        l: usize,
        /// Number of random braids for the dual-algorithm suite.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::Invalid(_) | Error::Arithmetic(_) => EXIT_INVALID,
        Error::Refused(_) => EXIT_REFUSED,
    }
}

fn is_inline(input: &str) -> bool {
    let t = input.trim_start();
    t.starts_with("braid") || t.starts_with("X(")
}

fn load(input: &str) -> Result<String> {
    if is_inline(input) {
        return Ok(input.to_string());
    }
    std::fs::read_to_string(Path::new(input))
        .map_err(|e| Error::invalid(format!("cannot read '{}': {}", input, e)))
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::parse(0, format!("JSON: {}", e)))
}

fn load_link(input: &str) -> Result<LinkDiagram> {
    let text = load(input)?;
    if text.trim_start().starts_with('{') {
        let v = parse_json(&text)?;
        if v.get("crossings").is_some() || v.get("pd").is_some() {
            return LinkDiagram::from_json(&v);
        }
        return Ok(BraidWord::from_json(&v)?.closure());
    }
    parse_link(text.trim())
}

fn load_surgery(input: &str, framings: Option<Vec<i64>>) -> Result<SurgeryPresentation> {
    let text = load(input)?;
    if text.trim_start().starts_with('{') {
        return SurgeryPresentation::from_json(&parse_json(&text)?);
    }
    match framings {
        Some(f) if !text.contains("framings:") => SurgeryPresentation::new(parse_link(text.trim())?, f),
        Some(_) => Err(Error::invalid("framings given both inline and by --framings")),
        None => SurgeryPresentation::parse(&text),
    }
}

fn complex_string(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    format!("{:.12} {:+.12}i", clean(z.re), clean(z.im))
}

fn report_output(suite: &str, report: &RelationReport, as_json: bool) -> (String, bool) {
    let ok = report.all_passed();
    if as_json {
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "instance": c.instance, "passed": c.passed}))
            .collect();
        return (json!({"suite": suite, "passed": ok, "checks": checks}).to_string(), ok);
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    let mut out = format!("{}: {}/{} passed", suite, passed, report.checks.len());
    for c in report.failures() {
        out.push_str(&format!("\nFAIL {}: {}", c.name, c.instance));
    }
    (out, ok)
}

fn laurent_json(p: &Laurent) -> Value {
    json!({"text": p.canonical_string(), "poly": p})
}

fn execute(cli: Cli) -> Result<(String, bool)> {
    let as_json = cli.json;
    let out = match cli.command {
        Command::Bracket { input, method } => {
            let d = load_link(&input)?;
            let v = match method {
                Method::Auto => bracket(&d)?,
                Method::Statesum => bracket_statesum(&d)?,
                Method::Functor => bracket_functor(&d)?,
            };
            if as_json {
                json!({"bracket": laurent_json(&v)}).to_string()
            } else {
                v.canonical_string()
            }
        }
        Command::Jones { input, divided } => {
            let d = load_link(&input)?;
            let norm = if divided {
                Normalization::Divided
            } else {
                Normalization::Unreduced
            };
            let v = jones_with(&d, norm)?;
            if as_json {
                json!({"jones": {"text": jones_string(&v), "poly": v}}).to_string()
            } else {
                jones_string(&v)
            }
        }
        Command::Colored {
            input,
            labels,
            framings,
        } => {
            let d = load_link(&input)?;
            let framings = framings.unwrap_or_else(|| vec![0; d.component_count()]);
            let v = QGroup::generic().colored_invariant(&d, &labels, &framings)?;
            if as_json {
                json!({"colored": laurent_json(&v), "labels": labels, "framings": framings}).to_string()
            } else {
                v.canonical_string()
            }
        }
        Command::Rt {
            l,
            root_exp,
            framings,
            input,
        } => {
            let p = load_surgery(&input, framings)?;
            let md = ModularData::new(l, RootSpec::with_exponent(l, root_exp))?;
            let z = rt_invariant_with(&p, &md, cli.max_cost)?;
            if as_json {
                z.to_json().to_string()
            } else {
                format!(
                    "corrected: {}\nnumeric: {}\nbiframed: {}\nbiframed numeric: {}\nsignature: {}",
                    z.corrected,
                    complex_string(z.numeric()),
                    z.biframed,
                    complex_string(z.biframed.to_complex()),
                    z.signature
                )
            }
        }
        Command::TqftDim { l, genus } => {
            let d = tqft_dim(genus, l)?;
            if as_json {
                json!({"l": l, "genus": genus, "dim": d}).to_string()
            } else {
                d.to_string()
            }
        }
        Command::ModularData { l, root_exp } => {
            let md = ModularData::new(l, RootSpec::with_exponent(l, root_exp))?;
            if as_json {
                md.to_json().to_string()
            } else {
                let row = |v: &[crate::coeff::Cyclotomic]| {
                    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
                };
                let mut s = format!("l: {}\nroot: zeta_{}^{}\n", l, md.root.order, md.root.exponent);
                s.push_str(&format!("qdims: [{}]\n", row(&md.qdims)));
                s.push_str(&format!("twists: [{}]\n", row(&md.twists)));
                s.push_str("hopf:\n");
                for r in &md.hopf {
                    s.push_str(&format!("  [{}]\n", row(r)));
                }
                s.push_str(&format!("K: {}\nC: {}\nK numeric: {}", md.k, md.c, complex_string(md.k.to_complex())));
                s
            }
        }
        Command::Check { suite, l, count, seed } => {
            let (name, report) = match suite {
                Suite::Relations => {
                    let mut report = check_relations(&kauffman_table())?;
                    let labeled = check_labeled_relations(&QGroup::generic(), &tangle_relations(), |_| 3)?;
                    report.checks.extend(labeled.checks);
                    ("relations", report)
                }
                Suite::Kirby => {
                    let md = ModularData::new(l, RootSpec::default_for(l))?;
                    ("kirby", kirby_invariance_suite(&md)?)
                }
                Suite::DualAlg => ("dual-alg", dual_algorithm_report(count, seed)?),
            };
            let (out, ok) = report_output(name, &report, as_json);
            return Ok((out, ok));
        }
    };
    Ok((out, true))
}

/// State sum against functor on `count` random braids with at most 5
/// strands and 10 crossings.
pub fn dual_algorithm_report(count: usize, seed: u64) -> Result<RelationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RelationReport::default();
    for _ in 0..count {
        let b = BraidWord::random(&mut rng, 5, 10);
        let d = b.closure();
        report.checks.push(crate::functor::RelationCheck {
            name: "state sum = functor",
            instance: b.to_string(),
            passed: bracket_statesum(&d)? == bracket_functor(&d).map_err(|e| Error::invalid(format!("{}: {}", b, e)))?,
        });
    }
    Ok(report)
}

fn thread_count(flag: Option<usize>) -> Result<usize> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("{} must be a thread count, got '{}'", THREADS_ENV, v))),
        Err(_) => Ok(0),
    }
}

/// Parse `argv` (including the program name), run the command and collect
/// its output and exit code.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                let first = text.lines().next().unwrap_or("").trim_start_matches("error: ");
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: format!("error: invalid input: {}\n", first),
                }
            };
        }
    };
    let failure = |e: Error| Outcome {
        code: exit_code(&e),
        stdout: String::new(),
        stderr: format!("error: {}\n", e),
    };
    let threads = match thread_count(cli.threads) {
        Ok(n) => n,
        Err(e) => return failure(e),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => return failure(Error::invalid(format!("thread pool: {}", e))),
    };
    match pool.install(|| execute(cli)) {
        Ok((out, ok)) => Outcome {
            code: if ok { 0 } else { EXIT_CHECK_FAILED },
            stdout: format!("{}\n", out),
            stderr: String::new(),
        },
        Err(e) => failure(e),
    }
}
