use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nv_core::format::{parse_cycles, pattern_listing};
use nv_core::growth::DEFAULT_CANDIDATE_CAP;
use nv_core::svg::render_element;
use nv_core::{
    apply, bs_relation_check, closure, order_up_to, parse_element, power_profile, random_element, root_search,
    serialize_element, torsion_certificate, CantorPoint, Element, Error, Order, Perm,
};

/// Exact arithmetic on elements of nV and twisted nV.
#[derive(Parser)]
#[command(name = "nv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an element file.
    Validate { file: PathBuf },
    /// Product of the inputs, applied left to right.
    Mul {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[arg(long)]
        no_reduce: bool,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Inverse.
    Inv {
        file: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// k-th power.
    Pow {
        file: PathBuf,
        k: u64,
        #[arg(long)]
        no_reduce: bool,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Prints `equal` or `not equal`.
    Eq { a: PathBuf, b: PathBuf },
    /// Exact order, searched up to `--max`.
    Order {
        file: PathBuf,
        #[arg(long, default_value_t = 64)]
        max: u64,
    },
    /// Looks for a power whose domain and range patterns coincide.
    CertifyTorsion {
        file: PathBuf,
        #[arg(long, default_value_t = 16)]
        max: u64,
    },
    /// Enumerates the group generated by the inputs.
    Closure {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
    /// Segment statistics of the first `--powers` powers, as CSV.
    Profile {
        file: PathBuf,
        #[arg(long, default_value_t = 12)]
        powers: u64,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Untwisted roots with at most `--blocks` blocks and exponent up to `--max`.
    Roots {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        blocks: usize,
        #[arg(long, default_value_t = 8)]
        max: u64,
    },
    /// Whether a b^m a^-1 = b^n.
    BsCheck { a: PathBuf, b: PathBuf, m: u64, n: u64 },
    /// Image of a point, e.g. `--point 01:1,e:10`.
    Eval {
        file: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// SVG of domain and range (arity 2); block listings otherwise.
    Render {
        file: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Seeded random element.
    Rand {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Twist generator in 1-based cycle notation, e.g. `(1 2)`; repeatable.
        #[arg(long = "gen")]
        generators: Vec<String>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

enum Failure {
    /// Domain error: exit 1.
    Domain(String),
    /// Usage, I/O or parse error: exit 2.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<Element, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_element(&text).map_err(|e| match Failure::from(e) {
        Failure::Domain(m) => Failure::Domain(format!("{}: {m}", path.display())),
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
    })
}

fn emit(text: String, o: Option<PathBuf>) -> Outcome {
    match o {
        Some(path) => {
            std::fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { file } => {
            let e = read(&file)?;
            Ok(format!("valid: arity {}, {} blocks\n", e.arity(), e.len()))
        }
        Command::Mul { files, no_reduce, o } => {
            let mut acc = read(&files[0])?;
            for f in &files[1..] {
                acc = acc.compose(&read(f)?)?;
            }
            if !no_reduce {
                acc = acc.reduce();
            }
            emit(serialize_element(&acc), o)
        }
        Command::Inv { file, o } => emit(serialize_element(&read(&file)?.invert()), o),
        Command::Pow { file, k, no_reduce, o } => {
            emit(serialize_element(&read(&file)?.power(k, !no_reduce)), o)
        }
        Command::Eq { a, b } => {
            let equal = read(&a)?.equals(&read(&b)?)?;
            Ok(if equal { "equal\n" } else { "not equal\n" }.to_string())
        }
        Command::Order { file, max } => Ok(match order_up_to(&read(&file)?, max) {
            Order::Finite(k) => format!("order {k}\n"),
            Order::Unknown(k) => format!("order unknown: no power up to {k} is the identity\n"),
        }),
        Command::CertifyTorsion { file, max } => {
            let f = read(&file)?;
            let Some(cert) = torsion_certificate(&f, max) else {
                return Ok(format!("no certificate up to power {max}\n"));
            };
            let mut out = format!(
                "certified torsion\npower {}\norder divides {}\nblock permutation {}\nsegments equal {}\n",
                cert.power, cert.order_bound, cert.rigid_perm, cert.segments_equal
            );
            out.push_str(&pattern_listing(&cert.pattern));
            Ok(out)
        }
        Command::Closure { files, budget } => {
            let gens = files.iter().map(|f| read(f)).collect::<Result<Vec<_>, _>>()?;
            let g = closure(&gens, budget)?;
            Ok(format!("finite group of order {}\n", g.order()))
        }
        Command::Profile { file, powers, o } => emit(power_profile(&read(&file)?, powers).to_csv(), o),
        Command::Roots { file, blocks, max } => {
            let g = read(&file)?;
            let hits = root_search(&g, blocks, max, DEFAULT_CANDIDATE_CAP)?;
            let mut out = format!("{} roots\n", hits.len());
            for (h, t) in hits {
                let _ = writeln!(out, "# t = {t}");
                out.push_str(&serialize_element(&h));
            }
            Ok(out)
        }
        Command::BsCheck { a, b, m, n } => {
            let holds = bs_relation_check(&read(&a)?, &read(&b)?, m, n)?;
            Ok(if holds { "relation holds\n" } else { "relation fails\n" }.to_string())
        }
        Command::Eval { file, point } => {
            let f = read(&file)?;
            let x: CantorPoint = point
                .parse()
                .map_err(|e| Failure::Usage(format!("point {point:?}: {e}")))?;
            Ok(format!("{}\n", apply(&f, &x)?))
        }
        Command::Render { file, o } => {
            let e = read(&file)?;
            let text = if e.arity() == 2 {
                render_element(&e)?
            } else {
                let mut t = String::from("domain\n");
                t.push_str(&pattern_listing(e.domain()));
                t.push_str("range\n");
                t.push_str(&pattern_listing(e.range()));
                t
            };
            emit(text, o)
        }
        Command::Rand { seed, arity, depth, generators, o } => {
            if arity == 0 {
                return Err(Failure::Usage("arity must be at least 1".into()));
            }
            let gens = generators
                .iter()
                .map(|g| parse_cycles(g, arity).map_err(|e| Failure::Usage(format!("generator {g:?}: {e}"))))
                .collect::<Result<Vec<Perm>, _>>()?;
            let twist = if gens.is_empty() { None } else { Some(gens.as_slice()) };
            emit(serialize_element(&random_element(seed, arity, depth, twist)), o)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
