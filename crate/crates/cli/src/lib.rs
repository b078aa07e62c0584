//! Command-line front end over `grassmann-core`. `run` takes the argument
//! list and returns the exit code and both output streams, so the binary is a
//! thin wrapper and tests can call it directly.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grassmann_core::classify::{
    decide_stable_with, describe_shape, enumerate_stable_subalgebras_with_report,
    enumerate_stable_subspaces_with_report, match_form, stable_hull, Enumeration, StabilityCertificate,
    WitnessBudget,
};
use grassmann_core::expr::{format_multivector, parse_expression, parse_field, SubspaceFile, GRAMMAR};
use grassmann_core::grassmann::{center_of, commutator_subalgebra, CenterMethod, GradedProfile};
use grassmann_core::morphism::{factor_n1_f0, AlgebraMap};
use grassmann_core::oracle::{cross_validate, ValidationMode};
use grassmann_core::{Algebra, Error, Subspace};

/// Exit status plus captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Exit code for a completed check with a negative answer.
pub const EXIT_NEGATIVE: i32 = 1;
/// Exit code for errors, including usage errors.
pub const EXIT_ERROR: i32 = 2;

const AFTER_HELP: &str = "\
Expressions:
  expr    := term (('+' | '-') term)*
  term    := factor (('^' | '*') factor)*
  factor  := literal | e<k> | e{i,j,...} | (expr) | [expr, expr] | -factor
  literal := <int> ('/' <int>)?
  '^' and '*' are both the wedge product and bind tighter than + and -.

Subspace files:
  first line    n=<int> field=Q|GF(<p>)
  then          one expression per line (a spanning vector)
  blank lines and lines starting with '#' are ignored

Environment:
  GRASSMANN_FIELD  default for --field
  GRASSMANN_SEED   default for --seed";

#[derive(Parser, Debug)]
#[command(name = "grassmann", version, about = "Exact Grassmann algebra workbench", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    /// Number of generators.
    #[arg(short = 'n', long = "generators", default_value_t = 3)]
    n: usize,
    /// Q, or GF:p for an odd prime p.
    #[arg(long, env = "GRASSMANN_FIELD", default_value = "Q")]
    field: String,
}

impl AlgebraArgs {
    fn algebra(&self) -> Result<Algebra, Error> {
        Algebra::new(self.n, parse_field(&self.field)?)
    }
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Seed for random automorphisms.
    #[arg(long, env = "GRASSMANN_SEED", default_value_t = 42)]
    seed: u64,
    /// Number of random automorphisms.
    #[arg(long)]
    trials: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Formula,
    Bruteforce,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression and print its canonical form.
    Eval {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print the center as a subspace file.
    Center {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, value_enum, default_value = "bruteforce")]
        method: Method,
    },
    /// Print the subalgebra generated by all commutators.
    Com {
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// List every Aut-stable subspace with its canonical form.
    ListStable {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Omit the basis vectors.
        #[arg(long)]
        brief: bool,
        /// Also print candidates that were set aside.
        #[arg(long)]
        report: bool,
    },
    /// List every Aut-stable subalgebra with its canonical form.
    ListStableSubalgebras {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Require 1 in the subalgebra.
        #[arg(long)]
        unital: bool,
        #[arg(long)]
        brief: bool,
        #[arg(long)]
        report: bool,
    },
    /// Decide whether the subspace in a file is Aut-stable.
    Check {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Print the smallest Aut-stable subspace containing the file's subspace.
    Hull {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Factor the automorphism with the given generator images as (Id + [a,-]) o f.
    Factor {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// One expression per generator, in order.
        #[arg(required = true, allow_hyphen_values = true)]
        images: Vec<String>,
    },
    /// Run the cross-validation report.
    Verify {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Enumerate the whole group and every subspace (tiny n over GF(p)).
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: rendered, stderr: String::new() },
                _ => {
                    use clap::CommandFactory;
                    let head = rendered.split("Usage:").next().unwrap_or("");
                    let first = head.split_whitespace().collect::<Vec<_>>().join(" ");
                    let first = first.trim_start_matches("error: ");
                    let help = Cli::command().render_help();
                    Outcome {
                        code: EXIT_ERROR,
                        stdout: String::new(),
                        stderr: format!("error: usage: {first}\n\n{help}\n"),
                    }
                }
            };
        }
    };
    match execute(cli.command) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {}: {}\n", e.kind(), e),
        },
    }
}

fn read_file(path: &PathBuf) -> Result<SubspaceFile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    SubspaceFile::parse(&text)
}

fn write_subspace(out: &mut String, b: &Subspace) {
    let _ = writeln!(out, "# dim={}", b.dim());
    out.push_str(&SubspaceFile::from_subspace(b).to_string());
}

fn write_enumeration(out: &mut String, e: &Enumeration, brief: bool, report: bool, noun: &str) {
    for (form, b) in &e.entries {
        let p = GradedProfile::of(b);
        let shape = describe_shape(&(p.contains_unit, p.grades));
        let _ = writeln!(out, "{form} dim={} {shape}", b.dim());
        if !brief {
            for v in b.basis() {
                let _ = writeln!(out, "  {}", format_multivector(&v));
            }
        }
    }
    let _ = writeln!(out, "total={} {noun}", e.entries.len());
    if report {
        for d in &e.discrepancies {
            let _ = writeln!(out, "{d}");
        }
    }
}

fn execute(cmd: Command) -> Result<(i32, String), Error> {
    let mut out = String::new();
    let mut code = 0;
    match cmd {
        Command::Eval { alg, expr } => {
            let v = parse_expression(&expr, alg.algebra()?)?;
            let _ = writeln!(out, "{}", format_multivector(&v));
        }
        Command::Center { alg, method } => {
            let m = match method {
                Method::Formula => CenterMethod::Formula,
                Method::Bruteforce => CenterMethod::BruteForce,
            };
            write_subspace(&mut out, &center_of(alg.algebra()?, m));
        }
        Command::Com { alg } => write_subspace(&mut out, &commutator_subalgebra(alg.algebra()?)),
        Command::ListStable { alg, brief, report } => {
            let e = enumerate_stable_subspaces_with_report(alg.algebra()?);
            write_enumeration(&mut out, &e, brief, report, "subspaces");
        }
        Command::ListStableSubalgebras { alg, unital, brief, report } => {
            let e = enumerate_stable_subalgebras_with_report(alg.algebra()?, unital);
            write_enumeration(&mut out, &e, brief, report, "subalgebras");
        }
        Command::Check { file, search } => {
            let b = read_file(&file)?.subspace();
            let mut budget = WitnessBudget { seed: search.seed, ..WitnessBudget::default() };
            if let Some(t) = search.trials {
                budget.random_trials = t;
            }
            match decide_stable_with(&b, &budget)? {
                StabilityCertificate::Stable(form) => {
                    let _ = writeln!(out, "STABLE: form {form}");
                }
                StabilityCertificate::Unstable(w) => {
                    let _ = writeln!(
                        out,
                        "UNSTABLE: witness sigma={}, v={}, sigma(v)={}",
                        w.label,
                        format_multivector(&w.v),
                        format_multivector(&w.image)
                    );
                    let images: Vec<String> = w.sigma.images().iter().map(format_multivector).collect();
                    let _ = writeln!(out, "sigma images: {}", images.join("; "));
                    code = EXIT_NEGATIVE;
                }
            }
        }
        Command::Hull { file } => {
            let h = stable_hull(&read_file(&file)?.subspace());
            let form = match_form(&h).map_or_else(|| "-".to_string(), |f| f.to_string());
            let _ = writeln!(out, "# form {form}");
            write_subspace(&mut out, &h);
        }
        Command::Factor { alg, images } => {
            let a = alg.algebra()?;
            let imgs = images.iter().map(|s| parse_expression(s, a)).collect::<Result<Vec<_>, _>>()?;
            let fac = factor_n1_f0(&AlgebraMap::new(a, imgs)?)?;
            let _ = writeln!(out, "a = {}", format_multivector(&fac.a));
            for (i, g) in fac.f.images().iter().enumerate() {
                let _ = writeln!(out, "f(e{}) = {}", i + 1, format_multivector(g));
            }
        }
        Command::Verify { alg, exhaustive, search } => {
            let a = alg.algebra()?;
            let mode = if exhaustive {
                ValidationMode::Exhaustive
            } else {
                ValidationMode::Randomized { seed: search.seed, trials: search.trials.unwrap_or(100) }
            };
            let report = cross_validate(a, mode)?;
            out.push_str(&report.to_string());
            if !report.all_pass() {
                code = EXIT_NEGATIVE;
            }
        }
    }
    Ok((code, out))
}

/// The expression grammar, as shown in help output.
pub fn grammar() -> &'static str {
    GRAMMAR
}
