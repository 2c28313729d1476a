use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mixcay::report::{atoms_json, classification_json, spectrum_json};
use mixcay::{
    build_matrices, classify, enumerate_hs_integral, exact_spectrum, parse_set, to_dot, verify_theorems,
    ConnectionSet, Error, GroupSpec, Rational, SpectrumKind, VerifyOptions, DEFAULT_MAX_ORDER,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "mixcay", version, about = "Spectra and integrality of mixed Cayley graphs over finite abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide HS- and Eisenstein integrality of Cay(G, S) and report both spectra.
    Classify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        set: SetArgs,
        /// Also write the adjacency and Hermitian matrices as JSON to this path.
        #[arg(long)]
        matrices: Option<PathBuf>,
    },
    /// Exact spectrum of one matrix attached to Cay(G, S).
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, value_enum, default_value = "hs")]
        kind: Kind,
        /// Also write the adjacency and Hermitian matrices as JSON to this path.
        #[arg(long)]
        matrices: Option<PathBuf>,
    },
    /// List the atoms of G and their splits into skew classes.
    Atoms {
        #[command(flatten)]
        common: Common,
    },
    /// Stream every HS-integral connection set, one JSON line each.
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// Maximum number of sets emitted.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Cross-check the characterizations against the spectral oracle over all subsets (or a sample).
    Verify {
        #[command(flatten)]
        common: Common,
        /// Maximum number of subsets examined; above it a seeded sample is drawn.
        #[arg(long, default_value_t = 4096)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; defaults to all cores.
        #[arg(long)]
        parallelism: Option<usize>,
    },
}

#[derive(Args)]
struct Common {
    /// Group as cyclic moduli, e.g. "3x3" or "12".
    #[arg(long)]
    group: String,
    /// Largest accepted group order.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: u64,
    /// Write the result here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct SetArgs {
    /// Connection set, e.g. "(0,1),(2,0)" or "1,5" for cyclic groups.
    #[arg(long, default_value = "")]
    set: String,
    /// Reject out-of-range coordinates instead of reducing them.
    #[arg(long)]
    no_reduce: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Hs,
    Adjacency,
    SimplePart,
    SkewPart,
}

impl From<Kind> for SpectrumKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Hs => SpectrumKind::Hs,
            Kind::Adjacency => SpectrumKind::Adjacency,
            Kind::SimplePart => SpectrumKind::SimplePart,
            Kind::SkewPart => SpectrumKind::SkewPart,
        }
    }
}

enum Failure {
    Input(String),
    Inconsistent(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) | Error::Oracle(_) => Failure::Inconsistent(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Sink {
    out: Box<dyn Write>,
}

impl Sink {
    fn open(path: &Option<PathBuf>) -> Result<Self, Failure> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
            None => Box::new(io::BufWriter::new(io::stdout().lock())),
        };
        Ok(Sink { out })
    }

    fn json(&mut self, v: &Value) -> Outcome {
        let text = serde_json::to_string_pretty(v).map_err(|e| Failure::Input(e.to_string()))?;
        writeln!(self.out, "{text}")?;
        Ok(())
    }

    fn line(&mut self, s: &str) -> Outcome {
        writeln!(self.out, "{s}")?;
        Ok(())
    }

    fn finish(mut self) -> Outcome {
        self.out.flush()?;
        Ok(())
    }
}

fn group(common: &Common) -> Result<GroupSpec, Failure> {
    Ok(GroupSpec::parse_with_max_order(&common.group, common.max_order)?)
}

fn connection_set(g: &GroupSpec, set: &SetArgs) -> Result<ConnectionSet, Failure> {
    let members = parse_set(&set.set, g, !set.no_reduce)?;
    Ok(ConnectionSet::new(g, members)?)
}

fn write_matrices(cs: &ConnectionSet, path: &Option<PathBuf>) -> Outcome {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(&build_matrices(cs).to_json()).map_err(|e| Failure::Input(e.to_string()))?;
        fs::write(p, text + "\n")?;
    }
    Ok(())
}

fn unsupported(format: Format, command: &str) -> Failure {
    let name = match format {
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Text => "text",
    };
    Failure::Input(format!("format {name} is not available for {command}"))
}

fn run_classify(common: Common, set: SetArgs, matrices: Option<PathBuf>) -> Outcome {
    let g = group(&common)?;
    let cs = connection_set(&g, &set)?;
    write_matrices(&cs, &matrices)?;
    let mut sink = Sink::open(&common.output)?;
    if common.format == Format::Dot {
        sink.line(to_dot(&cs).trim_end())?;
        return sink.finish();
    }
    let report = classify::<Rational>(&g, cs.members().clone())?;
    match common.format {
        Format::Json => sink.json(&classification_json(&report))?,
        _ => {
            sink.line(&format!("group: {g}"))?;
            sink.line(&format!("set: {{{}}}", report.set.to_spec_string()))?;
            sink.line(&format!("hs_integral: {}", report.hs_verdict_spectral))?;
            sink.line(&format!("eisenstein_integral: {}", report.eisenstein_verdict_spectral))?;
            sink.line(&format!("characterization: {}", report.hs_verdict_characterization))?;
            sink.line(&format!("consistent: {}", report.consistency))?;
            for (alpha, v) in &report.hs_spectrum.entries {
                sink.line(&format!("  hs[{alpha}] = {v}   adjacency[{alpha}] = {}", report.a_spectrum.entries[alpha]))?;
            }
        }
    }
    sink.finish()?;
    report.ensure_consistent()?;
    Ok(())
}

fn run_spectrum(common: Common, set: SetArgs, kind: Kind, matrices: Option<PathBuf>) -> Outcome {
    let g = group(&common)?;
    let cs = connection_set(&g, &set)?;
    write_matrices(&cs, &matrices)?;
    let mut sink = Sink::open(&common.output)?;
    match common.format {
        Format::Dot => sink.line(to_dot(&cs).trim_end())?,
        Format::Json => sink.json(&spectrum_json(&cs, &exact_spectrum::<Rational>(&cs, kind.into())))?,
        Format::Text => {
            let s = exact_spectrum::<Rational>(&cs, kind.into());
            for (alpha, v) in &s.entries {
                let c = v.to_complex();
                sink.line(&format!("{alpha}\t{v}\t{:.12} {:+.12}i", c.re, c.im))?;
            }
        }
    }
    sink.finish()
}

fn run_atoms(common: Common) -> Outcome {
    let g = group(&common)?;
    let v = atoms_json(&g);
    let mut sink = Sink::open(&common.output)?;
    match common.format {
        Format::Json => sink.json(&v)?,
        Format::Text => {
            for atom in v["atoms"].as_array().into_iter().flatten() {
                sink.line(&format!("{} order {} members {}", atom["representative"], atom["order"], atom["members"]))?;
                for class in atom["skew_classes"].as_array().into_iter().flatten() {
                    sink.line(&format!("  <<{}>> = {}", class["representative"], class["members"]))?;
                }
            }
        }
        Format::Dot => return Err(unsupported(common.format, "atoms")),
    }
    sink.finish()
}

fn run_enumerate(common: Common, budget: u64) -> Outcome {
    let g = group(&common)?;
    if common.format == Format::Dot {
        return Err(unsupported(common.format, "enumerate"));
    }
    let mut sink = Sink::open(&common.output)?;
    let sets = enumerate_hs_integral(&g, budget);
    let (total, truncated) = (sets.total(), sets.truncated());
    let mut emitted = 0u64;
    for cs in sets {
        let spec = cs.to_spec_string();
        match common.format {
            Format::Json => sink.line(&json!({ "set": spec, "size": cs.members().len() }).to_string())?,
            _ => sink.line(&spec)?,
        }
        emitted += 1;
    }
    if truncated {
        let total = u64::try_from(total).map(Value::from).unwrap_or_else(|_| Value::from(total.to_string()));
        let note = json!({ "truncated": true, "emitted": emitted, "total": total });
        match common.format {
            Format::Json => sink.line(&note.to_string())?,
            _ => eprintln!("truncated: emitted {emitted} of {total}"),
        }
    }
    sink.finish()
}

fn run_verify(common: Common, budget: u64, seed: u64, parallelism: Option<usize>) -> Outcome {
    let g = group(&common)?;
    if common.format == Format::Dot {
        return Err(unsupported(common.format, "verify"));
    }
    let opts = VerifyOptions {
        budget,
        seed,
        threads: parallelism,
    };
    let report = verify_theorems::<Rational>(&g, &opts)?;
    let v = serde_json::to_value(&report).map_err(|e| Failure::Input(e.to_string()))?;
    let mut sink = Sink::open(&common.output)?;
    match common.format {
        Format::Json => sink.json(&v)?,
        _ => {
            sink.line(&format!("group: {}", report.group))?;
            sink.line(&format!("subsets_tested: {}", report.subsets_tested))?;
            sink.line(&format!("exhaustive: {}", report.exhaustive))?;
            sink.line(&format!("hs_integral_count: {}", report.hs_integral_count))?;
            sink.line(&format!("certificate_pairs_checked: {}", report.certificate_pairs_checked))?;
            sink.line(&format!("counterexamples: {}", report.counterexamples.len()))?;
        }
    }
    sink.finish()?;
    if let Some(first) = report.counterexamples.first() {
        let text = serde_json::to_string(first).map_err(|e| Failure::Input(e.to_string()))?;
        return Err(Failure::Inconsistent(format!("counterexample: {text}")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Classify { common, set, matrices } => run_classify(common, set, matrices),
        Command::Spectrum {
            common,
            set,
            kind,
            matrices,
        } => run_spectrum(common, set, kind, matrices),
        Command::Atoms { common } => run_atoms(common),
        Command::Enumerate { common, budget } => run_enumerate(common, budget),
        Command::Verify {
            common,
            budget,
            seed,
            parallelism,
        } => run_verify(common, budget, seed, parallelism),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Inconsistent(msg)) => {
            eprintln!("inconsistency: {msg}");
            ExitCode::from(2)
        }
    }
}
