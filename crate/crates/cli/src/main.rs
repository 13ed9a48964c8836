//! `metric-lie`: text and JSON reports of the invariant geometry of a metric
//! Lie algebra.
//!
//! Exit status is 0 whenever a report was produced (negative verdicts
//! included), 1 when the input algebra fails to parse or validate, and 2 on
//! usage errors.

mod report;
mod text;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use metric_lie::algebra::validate;
use metric_lie::catalog::{self, CatalogEntry};
use metric_lie::geometry::{EpsBranch, SolitonConvention};
use metric_lie::scalarfield::{parse_ratfunc, Rational};
use metric_lie::Error;

use report::{
    annotations, discrepancies, ConnectionSection, CurvatureSection, EnergySection, Exceptional, GeodesicSection,
    HarmonicSection, InputSection, KillingSection, LedgerSection, NumericSection, Outcome, RicciSection, Section,
    SolitonSection, WalkerSection,
};
use text::Text;

const SCHEMA: &str = "1";

#[derive(Parser)]
#[command(
    name = "metric-lie",
    version,
    about = "Exact invariant geometry of metric Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every analysis, the exceptional-parameter appendix and published-value discrepancies.
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Convention::Paper)]
        soliton_convention: Convention,
        #[arg(long, value_enum, default_value_t = Branch::All)]
        branch: Branch,
        /// Also evaluate numerically at this parameter value.
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        eps: Option<Rational>,
    },
    /// Homogeneous Ricci solitons.
    Soliton {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Convention::Paper)]
        soliton_convention: Convention,
    },
    /// Rough Laplacian, harmonic sections and harmonic maps.
    Harmonic {
        #[command(flatten)]
        common: Common,
    },
    /// Energy density of invariant fields.
    Energy {
        #[command(flatten)]
        common: Common,
    },
    /// Invariant Killing fields.
    Killing {
        #[command(flatten)]
        common: Common,
    },
    /// Invariant geodesic fields.
    Geodesic {
        #[command(flatten)]
        common: Common,
    },
    /// Invariant null parallel line fields.
    Walker {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Branch::All)]
        branch: Branch,
    },
    /// Ledger conditions L3 and L5.
    Ledger {
        #[command(flatten)]
        common: Common,
    },
    /// Structural checks of the input algebra.
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Floating-point evaluation at one parameter value.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        eps: Rational,
    },
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// The Berger metrics diag(eps, 1, 1) on su(2).
    #[arg(long)]
    berger: bool,
    /// The flat abelian control with metric diag(-1, 1, 1).
    #[arg(long)]
    abelian: bool,
    /// An algebra file.
    #[arg(long, value_name = "FILE")]
    algebra: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    /// L_X g = lambda g - rho
    Paper,
    /// L_X g = 2 (lambda g - rho)
    Doubled,
}

impl From<Convention> for SolitonConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Paper => SolitonConvention::Plain,
            Convention::Doubled => SolitonConvention::Doubled,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Branch {
    Negative,
    Positive,
    All,
}

impl From<Branch> for EpsBranch {
    fn from(b: Branch) -> Self {
        match b {
            Branch::Negative => EpsBranch::Negative,
            Branch::Positive => EpsBranch::Positive,
            Branch::All => EpsBranch::All,
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let f = parse_ratfunc(s).map_err(|e| e.to_string())?;
    f.as_constant().ok_or_else(|| format!("`{s}` is not a rational number"))
}

/// Failure to produce any report.
enum Failure {
    Usage(String),
    Invalid(String),
}

fn load(source: &Source) -> Result<(CatalogEntry, String), Failure> {
    if source.berger {
        return Ok((catalog::berger(), "builtin berger".into()));
    }
    if source.abelian {
        return Ok((catalog::abelian_control(), "builtin abelian".into()));
    }
    let path = source.algebra.as_ref().expect("clap enforces one source");
    match catalog::load(path) {
        Ok(entry) => Ok((entry, path.display().to_string())),
        Err(Error::Io(msg)) => Err(Failure::Usage(format!("--algebra: {msg}"))),
        Err(e) => Err(Failure::Invalid(format!("{}: {e}", path.display()))),
    }
}

/// A report under construction: JSON members and text lines side by side.
struct Document {
    json: Map<String, Value>,
    text: Text,
    appendix: Vec<Exceptional>,
}

impl Document {
    fn new(entry: &CatalogEntry, source: String) -> Self {
        let input = InputSection::new(entry, source);
        let mut json = Map::new();
        json.insert("schema".into(), Value::from(SCHEMA));
        json.insert(
            "tool".into(),
            serde_json::json!({ "name": "metric-lie", "version": env!("CARGO_PKG_VERSION") }),
        );
        let mut text = Text::default();
        text.line(format!("metric-lie {}", env!("CARGO_PKG_VERSION")));
        input.render(&mut text);
        json.insert("input".into(), serde_json::to_value(&input).expect("serializable"));
        Document {
            json,
            text,
            appendix: Vec::new(),
        }
    }

    fn add<T: Section>(&mut self, outcome: Outcome<T>) {
        outcome.render(&mut self.text);
        self.appendix.extend(outcome.exceptional());
        self.json
            .insert(T::KEY.into(), serde_json::to_value(&outcome).expect("serializable"));
    }

    fn finish_appendix(&mut self) {
        self.appendix.sort();
        self.text.heading("exceptional parameter values");
        if self.appendix.is_empty() {
            self.text.line("none");
        }
        for e in &self.appendix {
            self.text.line(format!("eps={} [{}]: {}", e.eps, e.analysis, e.note));
        }
        self.json.insert(
            "exceptional_eps".into(),
            serde_json::to_value(&self.appendix).expect("serializable"),
        );
    }

    fn render(self, format: Format) -> String {
        match format {
            Format::Text => self.text.finish(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&Value::Object(self.json)).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

fn run(command: Command) -> Result<(String, bool), Failure> {
    let common = match &command {
        Command::Report { common, .. }
        | Command::Soliton { common, .. }
        | Command::Harmonic { common }
        | Command::Energy { common }
        | Command::Killing { common }
        | Command::Geodesic { common }
        | Command::Walker { common, .. }
        | Command::Ledger { common }
        | Command::Validate { common }
        | Command::Eval { common, .. } => common,
    };
    let format = common.format;
    let (entry, source) = load(&common.source)?;
    let alg = &entry.algebra;
    let mut doc = Document::new(&entry, source);
    match &command {
        Command::Report {
            soliton_convention,
            branch,
            eps,
            ..
        } => {
            let listed = discrepancies(&entry);
            doc.add(ConnectionSection::build(alg, annotations(&listed, "connection")).into());
            doc.add(CurvatureSection::build(alg).into());
            doc.add(RicciSection::build(alg).into());
            doc.add(SolitonSection::build(alg, (*soliton_convention).into()).into());
            doc.add(KillingSection::build(alg).into());
            doc.add(GeodesicSection::build(alg).into());
            doc.add(HarmonicSection::build(alg).into());
            doc.add(EnergySection::build(alg, annotations(&listed, "energy")).into());
            doc.add(LedgerSection::build(alg).into());
            doc.add(WalkerSection::build(alg, (*branch).into()).into());
            if let Some(eps) = eps {
                doc.add(NumericSection::build(alg, eps).into());
            }
            doc.finish_appendix();
            doc.text.heading("discrepancies with published values");
            match &listed {
                Ok(l) if l.is_empty() => doc.text.line("none"),
                Ok(l) => l.iter().for_each(|d| doc.text.line(d.text())),
                Err(e) => doc.text.line(format!("error: {e}")),
            }
            let value = match &listed {
                Ok(l) => serde_json::to_value(l).expect("serializable"),
                Err(e) => serde_json::json!({ "error": e.to_string() }),
            };
            doc.json.insert("discrepancies".into(), value);
        }
        Command::Soliton { soliton_convention, .. } => {
            doc.add(SolitonSection::build(alg, (*soliton_convention).into()).into());
        }
        Command::Harmonic { .. } => doc.add(HarmonicSection::build(alg).into()),
        Command::Energy { .. } => {
            let listed = discrepancies(&entry);
            doc.add(EnergySection::build(alg, annotations(&listed, "energy")).into());
        }
        Command::Killing { .. } => doc.add(KillingSection::build(alg).into()),
        Command::Geodesic { .. } => doc.add(GeodesicSection::build(alg).into()),
        Command::Walker { branch, .. } => doc.add(WalkerSection::build(alg, (*branch).into()).into()),
        Command::Ledger { .. } => doc.add(LedgerSection::build(alg).into()),
        Command::Validate { .. } => {
            let violations: Vec<String> = validate(alg).iter().map(ToString::to_string).collect();
            doc.text.heading("validation");
            doc.text.line(if violations.is_empty() { "valid" } else { "invalid" });
            for v in &violations {
                doc.text.line(format!("violation: {v}"));
            }
            let valid = violations.is_empty();
            doc.json.insert(
                "validation".into(),
                serde_json::json!({ "valid": valid, "violations": violations }),
            );
            return Ok((doc.render(format), valid));
        }
        Command::Eval { eps, .. } => doc.add(NumericSection::build(alg, eps).into()),
    }
    Ok((doc.render(format), true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok((out, valid)) => {
            print!("{out}");
            if valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
