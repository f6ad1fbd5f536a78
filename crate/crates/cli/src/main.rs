//! `linkcensus`: generating functions, oracle tables, constants and
//! cross-checks from the command line.
//!
//! Exit status: 0 on success, 1 on a cross-check mismatch or internal
//! failure, 2 on invalid usage.

use std::fmt;
use std::io::{self, Write};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use linkcensus::census::{self, CountingSequence, Provenance};
use linkcensus::oracle::{self, Mode, Oracle, VertexModel};
use linkcensus::rational::{parse_rational, to_pq};
use linkcensus::{abab, flype, onematrix, Q, Series};

#[derive(Parser, Debug)]
#[command(name = "linkcensus", version, about = "Exact counts of alternating link and tangle diagrams")]
struct Cli {
    /// Worker threads for enumeration (default: LINKCENSUS_THREADS, then all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a generating function as exact rational coefficients
    Series {
        #[arg(long, default_value = "raw")]
        model: Model,
        #[arg(long, default_value = "links")]
        what: What,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Largest oracle vertex count
        #[arg(long, default_value_t = oracle::DEFAULT_CEILING)]
        ceiling: usize,
    },
    /// Dump oracle count tables for V = 1..=vmax as CSV
    Enumerate {
        #[arg(long, default_value_t = 3)]
        vmax: usize,
        #[arg(long, value_enum, default_value_t = EnumMode::All)]
        mode: EnumMode,
        /// Include the tangency (aabb) vertex next to the crossing
        #[arg(long)]
        tangency: bool,
        #[arg(long, default_value_t = oracle::DEFAULT_CEILING)]
        ceiling: usize,
    },
    /// Print the table of growth constants
    Constants {
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// CSV with columns name,value to display beside the computed values
        #[arg(long)]
        compare: Option<std::path::PathBuf>,
    },
    /// Compare closed forms with oracle counts; exit 1 on any mismatch
    Crosscheck {
        #[arg(long, default_value_t = 4)]
        vmax: usize,
        #[arg(long, default_value_t = oracle::DEFAULT_CEILING)]
        ceiling: usize,
    },
    /// Ratio-method estimate of growth and exponent
    Asymptotics {
        #[arg(long, default_value = "reduced")]
        model: Model,
        #[arg(long, default_value = "links")]
        what: What,
        #[arg(long, default_value_t = 12)]
        order: usize,
        /// Degree of the polynomial extrapolation in 1/p
        #[arg(long, default_value_t = census::EXTRAPOLATION_DEGREE)]
        degree: usize,
        /// Hold the exponent at this value instead of fitting it
        #[arg(long, allow_hyphen_values = true)]
        exponent: Option<f64>,
        #[arg(long, default_value_t = oracle::DEFAULT_CEILING)]
        ceiling: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
enum Model {
    Raw,
    Reduced,
    Flype,
    On(Q),
    TwoColor,
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "raw" => Ok(Model::Raw),
            "reduced" => Ok(Model::Reduced),
            "flype" => Ok(Model::Flype),
            "two-color" => Ok(Model::TwoColor),
            _ => {
                let inner = s
                    .strip_prefix("on(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| format!("unknown model {s:?}: expected raw, reduced, flype, on(n) or two-color"))?;
                parse_rational(inner).map(Model::On).map_err(|e| e.to_string())
            }
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Raw => write!(f, "raw"),
            Model::Reduced => write!(f, "reduced"),
            Model::Flype => write!(f, "flype"),
            Model::On(n) => write!(f, "on({})", to_pq(n)),
            Model::TwoColor => write!(f, "two-color"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    /// Link diagrams (free energy)
    #[value(alias = "free-energy")]
    Links,
    /// Connected four-point function
    Tangles,
    TwoPoint,
    FourPoint,
    /// Endpoint parameter a²
    Endpoint,
    /// Normalization t(g)
    T,
    /// 2PI tangles
    TwoPi,
    /// Nontrivial 2PI skeletons ζ
    Skeletons,
    /// Link diagrams without the t(g) normalization (two-color model)
    RawLinks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EnumMode {
    All,
    Planar,
    ConnectedPlanar,
}

enum Failure {
    Usage(String),
    Mismatch(String),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.into())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn make_oracle(threads: Option<usize>, ceiling: usize) -> Result<Oracle, Failure> {
    let mut o = Oracle::new().with_ceiling(ceiling);
    if let Some(t) = threads {
        if t == 0 {
            return Err(usage("--threads must be positive"));
        }
        o = o.with_threads(t);
    }
    o.threads().map_err(|e| usage(e.to_string()))?;
    Ok(o)
}

fn check_oracle_order(order: usize, oracle: &Oracle) -> Result<(), Failure> {
    if order > oracle.ceiling() {
        return Err(usage(format!(
            "order {order} exceeds the enumeration ceiling {} (raise it with --ceiling)",
            oracle.ceiling()
        )));
    }
    Ok(())
}

fn unsupported(model: &Model, what: What) -> Failure {
    usage(format!("--what {what:?} is not available for model {model}"))
}

fn build_series(model: &Model, what: What, order: usize, oracle: &Oracle) -> Result<Series, Failure> {
    let s = match (model, what) {
        (Model::Raw, What::Links) => onematrix::free_energy_raw_series(order),
        (Model::Raw, What::Tangles) => onematrix::gamma_raw_series(order),
        (Model::Raw, What::TwoPoint) => onematrix::g2_raw_series(order),
        (Model::Raw, What::FourPoint) => onematrix::g4_raw_series(order),
        (Model::Raw, What::Endpoint) => onematrix::a2_raw_series(order),
        (Model::Reduced, What::Links) => onematrix::free_energy_reduced_series(order),
        (Model::Reduced, What::Tangles) => onematrix::gamma_reduced_series(order),
        (Model::Reduced, What::Endpoint) => onematrix::a2_reduced_series(order),
        (Model::Reduced, What::T) => onematrix::t_series(order),
        (Model::Reduced, What::TwoPoint) => Ok(Series::one(order)),
        (Model::Flype, What::Tangles) => return flype::gamma_tilde(order).context("flype series").map_err(Failure::from),
        (Model::Flype, What::TwoPi) => {
            let gamma = onematrix::gamma_reduced_series(order).context("reduced tangles")?;
            return flype::d_of_gamma(&gamma).context("2PI tangles").map_err(Failure::from);
        }
        (Model::Flype, What::Skeletons) => {
            let gamma = onematrix::gamma_reduced_series(order).context("reduced tangles")?;
            return flype::zeta_of_gamma(&gamma).context("skeletons").map_err(Failure::from);
        }
        (Model::On(n), What::Links) => {
            check_oracle_order(order, oracle)?;
            return oracle.free_energy_series(order, n).context("oracle").map_err(Failure::from);
        }
        (Model::On(n), What::TwoPoint) => {
            check_oracle_order(order, oracle)?;
            return oracle.g2_series(order, n).context("oracle").map_err(Failure::from);
        }
        (Model::TwoColor, w @ (What::Links | What::RawLinks | What::T | What::TwoPoint)) => {
            check_oracle_order(order, oracle)?;
            let s = abab::two_color_series(order, oracle).context("two-color series")?;
            return Ok(match w {
                What::Links => s.reduced_free_energy,
                What::RawLinks => s.raw_free_energy,
                What::T => s.t,
                _ => s.g2,
            });
        }
        _ => return Err(unsupported(model, what)),
    };
    s.context("series").map_err(Failure::from)
}

fn write_series(out: &mut impl Write, model: &Model, what: What, s: &Series, format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => {
            let v = serde_json::json!({
                "model": model.to_string(),
                "what": format!("{what:?}").to_lowercase(),
                "text": s.to_string(),
                "series": s,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).context("json")?)?;
        }
        Format::Csv => {
            let seq = CountingSequence::new(&format!("{model} {what:?}"), s, Provenance::ClosedForm);
            seq.write_csv(&mut *out).context("csv")?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Series {
            model,
            what,
            order,
            format,
            ceiling,
        } => {
            let oracle = make_oracle(cli.threads, ceiling)?;
            let s = build_series(&model, what, order, &oracle)?;
            write_series(&mut out, &model, what, &s, format)?;
        }
        Command::Enumerate {
            vmax,
            mode,
            tangency,
            ceiling,
        } => {
            let oracle = make_oracle(cli.threads, ceiling)?;
            check_oracle_order(vmax, &oracle)?;
            let model = if tangency {
                VertexModel::two_types()
            } else {
                VertexModel::single_color()
            };
            let mode = match mode {
                EnumMode::All => Mode::All,
                EnumMode::Planar => Mode::Planar,
                EnumMode::ConnectedPlanar => Mode::ConnectedPlanar,
            };
            let mut tables = Vec::new();
            for v in 1..=vmax {
                tables.extend(oracle.enumerate(v, &model, mode).context("enumeration")?);
            }
            oracle::write_csv(&tables, &mut out).context("csv")?;
        }
        Command::Constants { format, compare } => {
            let rows = census::constants_report().context("constants")?;
            if let Some(path) = compare {
                let file = std::fs::File::open(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                let sbs = census::side_by_side(&rows, file).context("comparison")?;
                writeln!(out, "{}", serde_json::to_string_pretty(&sbs).context("json")?)?;
                return Ok(());
            }
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows).context("json")?)?,
                Format::Csv => census::write_constants_csv(&rows, &mut out).context("csv")?,
            }
        }
        Command::Crosscheck { vmax, ceiling } => {
            let oracle = make_oracle(cli.threads, ceiling)?;
            check_oracle_order(vmax, &oracle)?;
            let checks = census::crosscheck(vmax, &oracle).context("crosscheck")?;
            let mut first = None;
            for c in &checks {
                match &c.mismatch {
                    None => writeln!(out, "PASS {} (orders 0..={})", c.name, c.orders)?,
                    Some((k, closed, oracle)) => {
                        writeln!(out, "MISMATCH {} at g^{k}: closed form {closed}, oracle {oracle}", c.name)?;
                        first.get_or_insert_with(|| format!("{} differs at g^{k}: {closed} vs {oracle}", c.name));
                    }
                }
            }
            if let Some(msg) = first {
                return Err(Failure::Mismatch(msg));
            }
        }
        Command::Asymptotics {
            model,
            what,
            order,
            degree,
            exponent,
            ceiling,
        } => {
            let oracle = make_oracle(cli.threads, ceiling)?;
            let s = build_series(&model, what, order, &oracle)?;
            let seq = CountingSequence::new(&format!("{model} {what:?}"), &s, Provenance::ClosedForm);
            let est = match exponent {
                Some(theta) => census::ratio_growth_fixed_exponent(&seq, theta),
                None => census::ratio_asymptotics_with(&seq, degree),
            }
            .map_err(|e| usage(e.to_string()))?;
            writeln!(out, "{}", serde_json::to_string_pretty(&est).context("json")?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
