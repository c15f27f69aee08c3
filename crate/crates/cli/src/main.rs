use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use contlin::chain::{emit_dot, validate_chain};
use contlin::generate::{random_lls_with, random_pad, rng_for, ProfileRules};
use contlin::io::{from_json, subspace_to_json, to_json, Instance, SubspaceTask};
use contlin::oracle::{degree_via_pluecker, limit_via_pluecker, sample_orbit_check};
use contlin::{build_chain, Direction, Error, LevelDeltaLLS, TorusSplit};

/// Largest ambient dimension accepted from files; Plücker enumeration is
/// exhaustive.
const MAX_AMBIENT: usize = 16;

#[derive(Parser)]
#[command(
    name = "contlin",
    version,
    about = "Limit linear series and continuous linear series on a two-component curve"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum End {
    Zero,
    Infty,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Exact,
    NonExact,
}

#[derive(Subcommand)]
enum Command {
    /// Compatibility and exactness of a series, or the structural checks of a chain.
    Check { file: PathBuf },
    /// Print (p, q, m) at every index.
    NumericalData { file: PathBuf },
    /// Drop the constant non-integer slots of an exact series.
    Reduce {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the chain of orbit closures of an exact minimal series.
    BuildChain {
        file: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Limit of the torus orbit of a subspace.
    Limit {
        file: PathBuf,
        #[arg(long, value_enum)]
        at: End,
    },
    /// Degree of the orbit closure of a subspace.
    Degree { file: PathBuf },
    /// Generate a random series.
    Gen {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        /// Comma-separated, d entries.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        delta: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GenKind::Exact)]
        kind: GenKind,
        /// Insert one constant slot after generating.
        #[arg(long)]
        pad: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Validate an instance; with --oracle also cross-check against brute force.
    Verify {
        file: PathBuf,
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Outcome of a command: `Ok(true)` success, `Ok(false)` validation failure.
type Outcome = Result<bool, Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_input_error(&e) { 2 } else { 1 })
        }
    }
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Malformed(_)
            | Error::InvalidDelta(_)
            | Error::DimensionMismatch { .. }
            | Error::AmbientMismatch { .. }
            | Error::IndexOutOfRange { .. }
            | Error::MissingIndex(_)
    )
}

fn load(path: &Path) -> Result<Instance, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    let instance = from_json(&text)?;
    let ambient = match &instance {
        Instance::Lls(g) => g.model().ambient(),
        Instance::Chain(c) => c.model.ambient(),
        Instance::Subspace(t) => t.split.ambient(),
    };
    if ambient > MAX_AMBIENT {
        return Err(Error::Malformed(format!(
            "ambient dimension {ambient} exceeds {MAX_AMBIENT}"
        )));
    }
    Ok(instance)
}

fn load_lls(path: &Path) -> Result<LevelDeltaLLS, Error> {
    match load(path)? {
        Instance::Lls(g) => Ok(g),
        other => Err(Error::Malformed(format!(
            "expected an lls instance, found {}",
            other.kind()
        ))),
    }
}

fn load_task(path: &Path) -> Result<SubspaceTask, Error> {
    match load(path)? {
        Instance::Subspace(t) => Ok(t),
        other => Err(Error::Malformed(format!(
            "expected a subspace instance, found {}",
            other.kind()
        ))),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Error> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Check { file } => match load(&file)? {
            Instance::Lls(g) => Ok(check_lls(&g)),
            Instance::Chain(c) => {
                let report = validate_chain(&c);
                for check in &report.checks {
                    println!(
                        "{}: {}",
                        check.name,
                        if check.passed { "pass" } else { "FAIL" }
                    );
                    if !check.passed {
                        println!("  {}", check.detail);
                    }
                }
                Ok(report.passed())
            }
            Instance::Subspace(_) => Err(Error::Malformed(
                "check expects an lls or chain instance".into(),
            )),
        },
        Command::NumericalData { file } => {
            let g = load_lls(&file)?;
            let data = g.numerical_data();
            println!("{:>8} {:>3} {:>3} {:>3}", "i", "p", "q", "m");
            for e in &data.entries {
                println!(
                    "{:>8} {:>3} {:>3} {:>3}",
                    e.index.to_string(),
                    e.p,
                    e.q,
                    e.m
                );
            }
            println!("sum m: {} (r+1 = {})", data.sum_m(), g.r() + 1);
            println!("exact: {}", data.is_exact());
            println!("minimal: {}", data.is_minimal());
            Ok(true)
        }
        Command::Reduce { file, output } => {
            let g = load_lls(&file)?;
            let reduced = g.reduce_minimal()?;
            emit(&to_json(&Instance::Lls(reduced)), output.as_deref())?;
            Ok(true)
        }
        Command::BuildChain { file, dot, output } => {
            let g = load_lls(&file)?;
            let chain = build_chain(&g)?;
            if let Some(path) = dot {
                fs::write(&path, emit_dot(&chain))
                    .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
            }
            emit(&to_json(&Instance::Chain(chain)), output.as_deref())?;
            Ok(true)
        }
        Command::Limit { file, at } => {
            let t = load_task(&file)?;
            let direction = match at {
                End::Zero => Direction::Zero,
                End::Infty => Direction::Infinity,
            };
            let v = t.split.limit(&t.subspace, direction)?;
            println!("{}", subspace_to_json(&v));
            Ok(true)
        }
        Command::Degree { file } => {
            let t = load_task(&file)?;
            println!("{}", t.split.orbit_degree(&t.subspace)?);
            Ok(true)
        }
        Command::Gen {
            d,
            r,
            delta,
            seed,
            kind,
            pad,
            output,
        } => {
            let rules = match kind {
                GenKind::Exact => ProfileRules {
                    minimal: true,
                    non_exact: false,
                },
                GenKind::NonExact => ProfileRules {
                    minimal: false,
                    non_exact: true,
                },
            };
            let mut rng = rng_for(seed, 0);
            let mut g = random_lls_with(d, r, &delta, rules, &mut rng)?;
            if pad {
                if let Some(padded) = random_pad(&g, &mut rng)? {
                    g = padded;
                }
            }
            emit(&to_json(&Instance::Lls(g)), output.as_deref())?;
            Ok(true)
        }
        Command::Verify {
            file,
            oracle,
            samples,
            seed,
        } => verify(load(&file)?, oracle, samples, seed),
    }
}

fn check_lls(g: &LevelDeltaLLS) -> bool {
    let compatible = g.check_compatible();
    println!("compatible: {}", compatible.passed());
    for f in &compatible.failures {
        println!("  {f}");
    }
    let exact = g.check_exact();
    match exact.first_failing_pair() {
        None => println!("exact: true"),
        Some((i, j)) => println!("exact: false, failing pair ({i},{j})"),
    }
    compatible.passed()
}

fn report(label: &str, ok: bool) -> bool {
    println!("{label}: {}", if ok { "pass" } else { "FAIL" });
    ok
}

/// Structural limits and degrees agree with the brute-force ones.
fn oracle_agrees(split: &TorusSplit, v: &contlin::QSubspace) -> Result<bool, Error> {
    let mut ok = true;
    for dir in [Direction::Zero, Direction::Infinity] {
        ok &= split.limit(v, dir)? == limit_via_pluecker(split, v, dir);
    }
    ok &= split.orbit_degree(v)? == degree_via_pluecker(split, v);
    Ok(ok)
}

fn verify(instance: Instance, oracle: bool, samples: usize, seed: u64) -> Outcome {
    let mut ok = true;
    match instance {
        Instance::Subspace(t) => {
            if oracle {
                ok &= report(
                    "oracle limits and degree",
                    oracle_agrees(&t.split, &t.subspace)?,
                );
            } else {
                println!("degree: {}", t.split.orbit_degree(&t.subspace)?);
            }
        }
        Instance::Lls(g) => {
            ok &= report("compatible", g.check_compatible().passed());
            ok &= report("exact", g.check_exact().passed());
            ok &= report("minimal", g.numerical_data().is_minimal());
            if oracle {
                let mut agree = true;
                for v in g.spaces() {
                    agree &= oracle_agrees(&g.split(), v)?;
                }
                ok &= report("oracle limits and degrees", agree);
            }
            if ok {
                let chain = build_chain(&g)?;
                ok &= report("chain", validate_chain(&chain).passed());
                if oracle {
                    ok &= report(
                        "orbit sampling",
                        sample_orbit_check(&chain, samples, seed).passed(),
                    );
                }
            }
        }
        Instance::Chain(c) => {
            let validation = validate_chain(&c);
            for check in &validation.checks {
                ok &= report(check.name, check.passed);
            }
            if oracle {
                let mut agree = true;
                for comp in &c.components {
                    agree &= oracle_agrees(&c.model.split(), &comp.base_space)?;
                }
                ok &= report("oracle limits and degrees", agree);
                ok &= report(
                    "orbit sampling",
                    sample_orbit_check(&c, samples, seed).passed(),
                );
            }
        }
    }
    Ok(ok)
}
