//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::chi_eulerian::{chi_eulerian_table, Variant};
use crate::dirichlet::{conductor, enumerate_characters, DirichletCharacter};
use crate::error::{Error, Result};
use crate::eulerian::eulerian_table;
use crate::exact::rational::{self, Rational};
use crate::lfunction::l_eulerian;
use crate::numeric::ExactComplex;
use crate::padic_verify::{truncated_integral, IntegrandSpec, Measure};
use crate::report;
use crate::suite::{exact_string, exit_code, run_suite, SuiteConfig, SuiteName};
use crate::table::{build_table, parse_range, Format, TableKind, TableSpec};

#[derive(Parser, Debug)]
#[command(
    name = "eulerchi",
    version,
    about = "Dirichlet-type Eulerian polynomials, p-adic checks and the Eulerian L-function"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eulerian polynomials
    #[command(subcommand)]
    Eulerian(EulerianCmd),
    /// Dirichlet characters
    #[command(subcommand)]
    Chars(CharsCmd),
    /// Verification suites
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Eulerian L-function
    #[command(subcommand)]
    Lfunction(LfunctionCmd),
    /// Truncated p-adic integrals
    #[command(subcommand)]
    Padic(PadicCmd),
    /// Value tables
    #[command(subcommand)]
    Emit(EmitCmd),
}

#[derive(Subcommand, Debug)]
enum EulerianCmd {
    /// Coefficients of A_n(t), one line per n
    Classical(Opts),
    /// A_{n,chi}(-q) for each character and q
    Chi(Opts),
}

#[derive(Subcommand, Debug)]
enum CharsCmd {
    /// Characters mod d with their exponent tuples and orders
    List(Opts),
    /// Conductor of one character
    Conductor(Opts),
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Run a named suite
    Suite(Opts),
}

#[derive(Subcommand, Debug)]
enum LfunctionCmd {
    /// Evaluate L_E(s|chi)
    Eval(Opts),
}

#[derive(Subcommand, Debug)]
enum PadicCmd {
    /// Truncated integral of x^n or chi(x) x^n at each level N
    Integral(Opts),
}

#[derive(Subcommand, Debug)]
enum EmitCmd {
    /// Emit a value table
    Table(Opts),
}

/// Flags shared by all subcommands; each uses the ones it needs.
#[derive(Args, Debug, Clone)]
struct Opts {
    /// Single index n
    #[arg(long)]
    n: Option<usize>,
    /// Largest index n (range 0..=max-n)
    #[arg(long = "max-n")]
    max_n: Option<usize>,
    /// Modulus d (comma list for suites and tables)
    #[arg(long, value_delimiter = ',')]
    modulus: Vec<u64>,
    /// Character index k within the enumeration mod d
    #[arg(long = "char")]
    char_index: Option<usize>,
    /// Comma list of rationals a/b
    #[arg(long, value_delimiter = ',')]
    q: Vec<String>,
    /// Comma list of odd primes
    #[arg(long, value_delimiter = ',')]
    p: Vec<u64>,
    /// p-adic precision k
    #[arg(long)]
    precision: Option<u32>,
    /// Working precision in bits
    #[arg(long)]
    bits: Option<u32>,
    /// Truncation levels N
    #[arg(long, value_delimiter = ',')]
    levels: Vec<u32>,
    /// printed or corrected
    #[arg(long)]
    variant: Option<String>,
    /// json or csv
    #[arg(long)]
    format: Option<String>,
    /// Output file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Suite name
    #[arg(long)]
    name: Option<String>,
    /// Table kind
    #[arg(long)]
    kind: Option<String>,
    /// Index range a..b or a..=b
    #[arg(long)]
    range: Option<String>,
    /// Complex argument re or re,im (semicolon-separated list for suites)
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// Term index m of the Mellin check
    #[arg(long = "m-index")]
    m_index: Option<u64>,
    /// Integral measure: q, -q, -q^-1 or -q^-D
    #[arg(long, allow_hyphen_values = true)]
    measure: Option<String>,
    /// Evaluation points x for weight-zero tables
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x: Vec<String>,
}

impl Opts {
    fn qs(&self) -> Result<Option<Vec<Rational>>> {
        if self.q.is_empty() {
            return Ok(None);
        }
        self.q.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>().map(Some)
    }

    fn qs_or(&self, default: i64) -> Result<Vec<Rational>> {
        Ok(self.qs()?.unwrap_or_else(|| vec![rational::int(default)]))
    }

    fn single_modulus(&self) -> Result<u64> {
        match self.modulus.as_slice() {
            [d] => Ok(*d),
            [] => Err(Error::InvalidArgument("--modulus is required".into())),
            _ => Err(Error::InvalidArgument("exactly one --modulus expected".into())),
        }
    }

    fn character(&self) -> Result<DirichletCharacter> {
        let d = self.single_modulus()?;
        let k = self.char_index.unwrap_or(0);
        crate::dirichlet::character(d, k)
    }

    fn ns(&self) -> Vec<usize> {
        match (self.n, self.max_n) {
            (Some(n), _) => vec![n],
            (None, Some(m)) => (0..=m).collect(),
            (None, None) => vec![0],
        }
    }

    fn format(&self) -> Result<Format> {
        self.format.as_deref().unwrap_or("json").parse()
    }

    fn variant(&self) -> Result<Variant> {
        match &self.variant {
            None => Ok(Variant::Corrected),
            Some(v) => v.parse(),
        }
    }
}

/// Runs the command line `argv` (including the program name) and returns
/// the exit status: 0 pass, 1 identity failure, 2 usage or domain error,
/// 3 precision or convergence failure.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_convergence_failure() {
                3
            } else {
                2
            }
        }
    }
}

fn emit(text: &str, path: &Option<PathBuf>, out: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidArgument(e.to_string());
    match path {
        Some(p) => std::fs::write(p, text).map_err(io),
        None => {
            let r = out.write_all(text.as_bytes()).and_then(|_| {
                if text.ends_with('\n') {
                    Ok(())
                } else {
                    out.write_all(b"\n")
                }
            });
            match r {
                // a closed reader (e.g. `| head`) is not an error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r.map_err(io),
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| Error::InvalidArgument(e.to_string());
    match cmd {
        Command::Eulerian(EulerianCmd::Classical(o)) => {
            let ns = o.ns();
            let table = eulerian_table(*ns.iter().max().unwrap_or(&0));
            let mut text = String::new();
            for n in &ns {
                let cs: Vec<String> = table[*n].int_coeffs().iter().map(|c| c.to_string()).collect();
                if ns.len() == 1 {
                    text.push_str(&format!("{}\n", cs.join(",")));
                } else {
                    text.push_str(&format!("{n}: {}\n", cs.join(",")));
                }
            }
            emit(&text, &o.out, out)?;
            Ok(0)
        }
        Command::Eulerian(EulerianCmd::Chi(o)) => {
            let chi = o.character()?;
            let ns = o.ns();
            let max = *ns.iter().max().unwrap_or(&0);
            let mut text = String::new();
            for q in o.qs_or(2)? {
                let t = chi_eulerian_table(max, &chi, &q)?;
                for n in &ns {
                    text.push_str(&format!("n={n} char={chi} q={} {}\n", rational::format(&q), exact_string(&t[*n])));
                }
            }
            emit(&text, &o.out, out)?;
            Ok(0)
        }
        Command::Chars(CharsCmd::List(o)) => {
            let d = o.single_modulus()?;
            let mut text = String::new();
            for chi in enumerate_characters(d)? {
                let exps: Vec<String> = chi.exponents().iter().map(|e| e.to_string()).collect();
                text.push_str(&format!(
                    "{chi} exponents=({}) order={} conductor={}\n",
                    exps.join(","),
                    chi.order(),
                    conductor(&chi)
                ));
            }
            emit(&text, &o.out, out)?;
            Ok(0)
        }
        Command::Chars(CharsCmd::Conductor(o)) => {
            let chi = o.character()?;
            emit(&conductor(&chi).to_string(), &o.out, out)?;
            Ok(0)
        }
        Command::Verify(VerifyCmd::Suite(o)) => {
            let name: SuiteName =
                o.name.as_deref().ok_or_else(|| Error::InvalidArgument("--name is required".into()))?.parse()?;
            let defaults = SuiteConfig::default();
            let s_values = match &o.s {
                None => None,
                Some(s) => Some(s.split(';').map(ExactComplex::parse).collect::<Result<Vec<_>>>()?),
            };
            let cfg = SuiteConfig {
                n: o.n,
                max_n: o.max_n.unwrap_or(defaults.max_n),
                moduli: if o.modulus.is_empty() { defaults.moduli } else { o.modulus.clone() },
                char_index: o.char_index,
                qs: o.qs()?,
                primes: if o.p.is_empty() { defaults.primes } else { o.p.clone() },
                precision: o.precision.unwrap_or(defaults.precision),
                bits: o.bits.unwrap_or(defaults.bits),
                levels: if o.levels.is_empty() { None } else { Some(o.levels.clone()) },
                variant: o.variant()?,
                s_values,
                m_index: o.m_index,
            };
            let format = o.format()?;
            let reports = run_suite(name, &cfg)?;
            let text = match format {
                Format::Json => report::to_json(&reports)?,
                Format::Csv => report::to_csv(&reports)?,
            };
            emit(&text, &o.out, out)?;
            Ok(exit_code(&reports))
        }
        Command::Lfunction(LfunctionCmd::Eval(o)) => {
            let chi = o.character()?;
            let s = ExactComplex::parse(o.s.as_deref().unwrap_or("0"))?;
            let bits = o.bits.unwrap_or(128);
            let digits = (bits as f64 * std::f64::consts::LOG10_2).floor() as usize;
            let mut text = String::new();
            for q in o.qs_or(2)? {
                let v = l_eulerian(&s, &chi, &q, bits)?;
                text.push_str(&format!(
                    "s={s} char={chi} q={} value={} tail={} rounding={} terms={}\n",
                    rational::format(&q),
                    v.value.to_decimal(digits),
                    v.tail_bound,
                    v.rounding,
                    v.terms
                ));
            }
            emit(&text, &o.out, out)?;
            Ok(0)
        }
        Command::Padic(PadicCmd::Integral(o)) => {
            let p = *o.p.first().ok_or_else(|| Error::InvalidArgument("--p is required".into()))?;
            let q = o.qs()?.and_then(|v| v.into_iter().next()).unwrap_or_else(|| rational::int(1 + p as i64));
            let k = o.precision.unwrap_or(3);
            let n = o.n.unwrap_or(0) as u32;
            let f = if o.modulus.is_empty() {
                IntegrandSpec::monomial(n)
            } else {
                IntegrandSpec::chi_monomial(&o.character()?, n)
            };
            let measure = match &o.measure {
                None => Measure::MinusQInv,
                Some(m) => Measure::parse(m)?,
            };
            let levels = if o.levels.is_empty() { vec![k + 3] } else { o.levels.clone() };
            let mut text = String::new();
            for level in levels {
                let v = truncated_integral(&f, p, &q, measure, level, k)?;
                text.push_str(&format!("f={f} measure={measure} q={} N={level} {v}\n", rational::format(&q)));
            }
            emit(&text, &o.out, out)?;
            Ok(0)
        }
        Command::Emit(EmitCmd::Table(o)) => {
            let kind: TableKind =
                o.kind.as_deref().ok_or_else(|| Error::InvalidArgument("--kind is required".into()))?.parse()?;
            let range = match (&o.range, o.max_n, o.n) {
                (Some(r), _, _) => parse_range(r)?,
                (None, Some(m), _) => 0..m + 1,
                (None, None, Some(n)) => n..n + 1,
                (None, None, None) => 0..5,
            };
            let xs = if o.x.is_empty() {
                vec![rational::int(0)]
            } else {
                o.x.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>()?
            };
            let spec = TableSpec {
                kind,
                range,
                moduli: if o.modulus.is_empty() { vec![1, 3, 5] } else { o.modulus.clone() },
                char_index: o.char_index,
                qs: o.qs_or(2)?,
                xs,
                bits: o.bits.unwrap_or(128),
            };
            let text = build_table(&spec)?.render(o.format()?)?;
            emit(&text, &o.out, out)?;
            out.flush().map_err(io)?;
            Ok(0)
        }
    }
}
