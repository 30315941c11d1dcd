//! Front end for `sl2char`: argument parsing, job files, text output and the
//! randomized self-check.

pub mod input;
pub mod selfcheck;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use sl2char::algebra::{Matrix, Modulus, QuadExt, Rat, RatFn};
use sl2char::cohomology::presentation_complex;
use sl2char::saito::{system_at_point, tautological_rep, tautological_system, Rep};
use sl2char::skein::{delta, trace_polynomial};
use sl2char::torsion::{fibered_torsion, torsion_form, FiberedSpec, FiberedTorsion, TorsionInput, TorsionKind};
use sl2char::words::{parse_f2, Presentation};
use sl2char::{Error, ErrorKind, Result};

use input::{boundary_words, parse_point, JobFile};
use selfcheck::{SelfcheckConfig, SelfcheckFailure};

#[derive(Parser, Debug)]
#[command(name = "sl2char", version, about = "SL2 character varieties: traces, reconstruction, cohomology and torsion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trace polynomial of a word in a, b
    Trace {
        #[arg(long)]
        word: String,
    },
    /// tr(α)² + tr(β)² + tr(αβ)² - tr(α)tr(β)tr(αβ) - 4
    Delta {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Matrix of a word rebuilt from the character
    Reconstruct {
        #[arg(long)]
        word: String,
        /// Rational character, e.g. `--char x=1 y=2 z=1/3`
        #[arg(long = "char", num_args = 1..=3, allow_hyphen_values = true)]
        character: Option<Vec<String>>,
    },
    /// Twisted cohomology dimensions of a presented group
    Cohomology {
        #[arg(long)]
        file: PathBuf,
    },
    /// Torsion volume form
    Torsion {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        sign: String,
        #[arg(long)]
        normalized: bool,
    },
    /// Torsion of a mapping torus from the monodromy action
    Fibered {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, num_args = 1..=3, allow_hyphen_values = true)]
        point: Option<Vec<String>>,
    },
    /// Randomized identities of every module
    Selfcheck {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Maximal length of random words
        #[arg(long)]
        words: Option<usize>,
        /// Number of trials for every suite
        #[arg(long)]
        trials: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Handlebody,
    ProductCircle,
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn error(code: i32, stdout: String, msg: &str) -> Outcome {
        let line = msg.lines().next().unwrap_or("").trim();
        Outcome { code, stdout, stderr: format!("error: {line}\n") }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Input => 1,
        ErrorKind::Degenerate => 2,
        ErrorKind::Internal => 3,
    }
}

/// Runs one command line; `args` excludes the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = std::iter::once("sl2char".to_string()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind as K;
            return match e.kind() {
                K::DisplayHelp | K::DisplayVersion | K::DisplayHelpOnMissingArgumentOrSubcommand => {
                    Outcome::ok(e.to_string())
                }
                _ => {
                    let text = e.to_string();
                    let first = text.lines().next().unwrap_or("invalid arguments");
                    Outcome::error(1, String::new(), first.trim_start_matches("error: "))
                }
            };
        }
    };
    match cli.command {
        Command::Selfcheck { seed, words, trials } => {
            let cfg = SelfcheckConfig { seed, max_word_len: words, trials, tamper: None };
            let report = selfcheck::run(&cfg);
            let out = report.render();
            match report.first_failure() {
                None => Outcome::ok(out),
                Some(SelfcheckFailure { suite, detail }) => Outcome::error(3, out, &format!("{suite}: {detail}")),
            }
        }
        other => match dispatch(other) {
            Ok(out) => Outcome::ok(out),
            Err(e) => Outcome::error(exit_code(&e), String::new(), &e.to_string()),
        },
    }
}

fn dispatch(cmd: Command) -> Result<String> {
    match cmd {
        Command::Trace { word } => Ok(format!("{}\n", trace_polynomial(&parse_f2(&word)?)?)),
        Command::Delta { alpha, beta } => Ok(format!("{}\n", delta(&parse_f2(&alpha)?, &parse_f2(&beta)?)?)),
        Command::Reconstruct { word, character } => reconstruct(&word, character.as_deref()),
        Command::Cohomology { file } => cohomology(&JobFile::load(&file)?),
        Command::Torsion { kind, file, sign, normalized } => {
            let job = file.as_deref().map(JobFile::load).transpose()?;
            torsion(kind, job.as_ref(), &sign, normalized)
        }
        Command::Fibered { file, point } => {
            let job = JobFile::load(&file)?;
            let point = match point {
                Some(args) => Some(parse_point(&args)?),
                None => job.point()?,
            };
            fibered(&job, point.as_ref())
        }
        Command::Selfcheck { .. } => unreachable!("handled by run"),
    }
}

fn modulus_line(k: &Modulus) -> String {
    let c = k.c();
    let middle = match c.constant_value() {
        Some(v) if v == Rat::from_integer(0.into()) => String::new(),
        _ => {
            let s = c.to_string();
            match s.strip_prefix('-') {
                Some(rest) if c.is_poly() && c.num().num_terms() == 1 => format!(" - {rest}*u"),
                _ if c.is_poly() && c.num().num_terms() == 1 => format!(" + {s}*u"),
                _ => format!(" + ({s})*u"),
            }
        }
    };
    format!("where u^2{middle} + 1 = 0\n")
}

fn render_matrix(m: &Matrix<QuadExt>) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "[{}]", row.join(", "));
    }
    out
}

fn reconstruct(word: &str, character: Option<&[String]>) -> Result<String> {
    let w = parse_f2(word)?;
    let sys = match character {
        Some(args) => system_at_point(&parse_point(args)?)?,
        None => tautological_system(),
    };
    let m = sys.reconstruct(&w)?;
    let k = m.zero_elem().modulus();
    Ok(format!("{}{}", render_matrix(&m), modulus_line(&k)))
}

/// `a`, `b` go to the tautological matrices (specialized at the file's point
/// if present), every other generator to the identity.
fn presentation_rep(p: &Presentation, point: Option<&[Rat; 3]>) -> Result<Rep<QuadExt>> {
    let base = match point {
        Some(pt) => sl2char::saito::rep_at_point(pt),
        None => tautological_rep(),
    };
    let id = Matrix::identity(2, base.like());
    let images = p
        .generators()
        .iter()
        .map(|&g| Ok((g, if g == 'a' || g == 'b' { base.image(g)?.clone() } else { id.clone() })))
        .collect::<Result<Vec<_>>>()?;
    Rep::new(images)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn cohomology(job: &JobFile) -> Result<String> {
    let p = job.presentation()?;
    let point = job.point()?;
    if let Some(pt) = &point {
        if delta(&parse_f2("a")?, &parse_f2("b")?)?.eval(pt) == Rat::from_integer(0.into()) {
            return Err(Error::DegenerateCharacter("Δ vanishes at the point".into()));
        }
    }
    let rep = presentation_rep(&p, point.as_ref())?;
    let c = presentation_complex(&p, &rep)?;
    let h = c.cohomology_dims()?;
    let mut out = format!("cochains: {}\ncohomology: {}\n", join(c.dims()), join(&h));
    if !p.boundary().is_empty() {
        let d = p.expected_dimension() as usize;
        let regular = if h.get(1) == Some(&d) { "yes" } else { "no" };
        let _ = write!(out, "expected h^1: {d}\nregular: {regular}\n");
    }
    Ok(out)
}

fn torsion(kind: Kind, job: Option<&JobFile>, sign: &str, normalized: bool) -> Result<String> {
    let sign: i8 = match sign {
        "+1" | "1" => 1,
        "-1" => -1,
        s => return Err(Error::Input(format!("sign must be +1 or -1, got '{s}'"))),
    };
    let (p, boundary, point) = match job {
        Some(j) => {
            let p = j.presentation()?;
            let words = boundary_words(p.boundary());
            let free = Presentation::new(p.generators().to_vec(), p.relators().to_vec(), vec![])?;
            (free, words, j.point()?)
        }
        None => (Presentation::free_f2(), vec![parse_f2("a")?, parse_f2("b")?, parse_f2("BA")?], None),
    };
    let input = match &point {
        Some(pt) => TorsionInput::at_point(pt)?,
        None => TorsionInput::generic()?,
    };
    let kind = match kind {
        Kind::Handlebody => TorsionKind::Handlebody,
        Kind::ProductCircle => TorsionKind::ProductCircle,
    };
    let report = torsion_form(&p, kind, sign, &boundary, &input)?;
    let mut out = if normalized {
        format!("{}\n", report.normalized()?)
    } else {
        format!("{}\n", report.form)
    };
    if let Some(g) = &report.g {
        let _ = write!(out, "g = {}\nf = {}\n", g, report.f);
    }
    Ok(out)
}

fn fibered(job: &JobFile, point: Option<&[Rat; 3]>) -> Result<String> {
    let p = job.presentation()?;
    if p.generators() != ['a', 'b'] {
        return Err(Error::Input("fibered job files use the generators a, b".into()));
    }
    let (pa, pb) = job.phi(&p)?;
    let spec = FiberedSpec::new(pa, pb, boundary_words(p.boundary()))?;
    match fibered_torsion(&spec, point)? {
        FiberedTorsion::Value(v) => Ok(format!(
            "{} {} (up to sign)\n",
            sl2char::algebra::rat::fmt_rat(&v),
            spec.wedge_labels().join("^")
        )),
        FiberedTorsion::Symbolic(s) => {
            let mut out = String::new();
            let names = ["x", "y", "z"];
            for (v, m) in names.iter().zip(&spec.induced_map) {
                let _ = writeln!(out, "phi*{v} = {m}");
            }
            let _ = writeln!(out, "jacobian: {}", s.jacobian);
            for (i, label) in s.wedge.iter().enumerate() {
                let row: Vec<String> = s.gradients.row(i).iter().map(RatFn::to_string).collect();
                let _ = writeln!(out, "{label} = [{}]", row.join(", "));
            }
            match &s.form {
                Some(f) => {
                    let _ = writeln!(out, "{f}");
                }
                None => {
                    let _ = writeln!(out, "pass --point on the fixed locus to evaluate");
                }
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_kinds() {
        assert_eq!(exit_code(&Error::UndeclaredGenerator('q')), 1);
        assert_eq!(exit_code(&Error::DegenerateCharacter(String::new())), 2);
        assert_eq!(exit_code(&Error::InvariantViolation(String::new())), 3);
    }

    #[test]
    fn modulus_lines() {
        assert_eq!(modulus_line(&Modulus::tautological()), "where u^2 + z*u + 1 = 0\n");
        let c = |v: i64| Modulus::new(RatFn::constant(&sl2char::algebra::Vars::new(Vec::<String>::new()), sl2char::algebra::rat(v)));
        assert_eq!(modulus_line(&c(3)), "where u^2 + 3*u + 1 = 0\n");
        assert_eq!(modulus_line(&c(-3)), "where u^2 - 3*u + 1 = 0\n");
        assert_eq!(modulus_line(&c(0)), "where u^2 + 1 = 0\n");
    }

    #[test]
    fn usage_errors_are_single_lines() {
        let o = run(["trace"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.starts_with("error: "));
        assert_eq!(o.stderr.lines().count(), 1);
        let o = run(["torsion", "--kind", "solid"]);
        assert_eq!(o.code, 1);
    }

    #[test]
    fn help_goes_to_stdout() {
        let o = run(["--help"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("selfcheck"));
    }
}
