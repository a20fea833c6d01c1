use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::Value;

use reciplab::arith::{parse_cyclotomic, parse_rational, rational_to_string, Cyclotomic, Poly, Rational, Scalar};
use reciplab::barnes::barnes_fe;
use reciplab::characters::character;
use reciplab::classical::{bernoulli_function, bernoulli_number, bernoulli_poly, char_fe_number, fe_function, fe_number, fe_poly};
use reciplab::dedekind::{classical_dedekind, fe_dedekind_sum, fe_dedekind_sum_char};
use reciplab::hardy::{apostol_sum, berndt_char_dedekind, hardy_sum, hb_sum, HardyVariant, HbVariant};
use reciplab::hq::{hq_bernoulli_char, hq_bernoulli_poly, HqParams};
use reciplab::lerch::{l_neg, l_numeric, multiple_l_neg};
use reciplab::padic::{
    padic_dedekind, teichmuller, th13_residual, th19_residual, volkenborn, witt_residual, PAdic, PadicResidual,
    VolkenbornIntegrand,
};
use reciplab::verify::{render_value, run_sweep, Grid, TheoremId, VerificationReport};
use reciplab::Error;

#[derive(Parser)]
#[command(name = "reciplab", version, about = "Exact Frobenius-Euler, Bernoulli and Dedekind-type computations")]
struct Cli {
    /// Emit JSON instead of plain strings.
    #[arg(long, global = true)]
    json: bool,
    /// Emit CSV rows for sweeps.
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,
    /// Worker threads for sweeps.
    #[arg(long, global = true, env = "RECIPLAB_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

fn scalar(s: &str) -> Result<Cyclotomic, String> {
    parse_cyclotomic(s).map_err(|e| e.to_string())
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// B_n, B_n(x), or the periodic Bernoulli function.
    Bernoulli {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        x: Option<Rational>,
        #[arg(long, requires = "x")]
        periodic: bool,
    },
    /// Frobenius-Euler number H_n(u).
    FeNumber {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        u: Cyclotomic,
    },
    /// Frobenius-Euler polynomial H_n(x, u).
    FePoly {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        x: Cyclotomic,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        u: Cyclotomic,
    },
    /// Quasi-periodic Frobenius-Euler function.
    FeFunction {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        x: Rational,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        u: Cyclotomic,
    },
    /// Character Frobenius-Euler number H_{n,chi}(u).
    CharFe {
        #[arg(long)]
        n: usize,
        /// Character modulus.
        #[arg(long)]
        f: u64,
        /// Index in the enumeration of characters mod f.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        u: Cyclotomic,
        /// Sum over this multiple of f instead.
        #[arg(long)]
        big_f: Option<u64>,
    },
    /// Barnes-type multiple Frobenius-Euler polynomial.
    BarnesFe {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        u: Cyclotomic,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true, default_value = "0")]
        x: Cyclotomic,
    },
    /// l(-n, x; u).
    LNeg {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "0")]
        x: Rational,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        u: Cyclotomic,
    },
    /// Multiple l-function at -n.
    LMulti {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "0")]
        x: Rational,
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        u: Cyclotomic,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
    },
    /// Numeric l(s, x; u) with a tail bound.
    LNumeric {
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        s_im: f64,
        #[arg(long)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        u: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Dedekind-type sums.
    Dedekind {
        #[arg(value_enum)]
        kind: DedekindKind,
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        #[arg(long)]
        k: i64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Root or base for the Frobenius-Euler sums.
        #[arg(long, value_parser = scalar, allow_hyphen_values = true)]
        u: Option<Cyclotomic>,
        #[arg(long, default_value_t = 1)]
        f: u64,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Hardy sums S, s1..s5, apostol, hb0, hb1 and berndt-char.
    Hardy {
        #[arg(long)]
        variant: String,
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        #[arg(long)]
        k: i64,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Character modulus for berndt-char.
        #[arg(long, default_value_t = 1)]
        f: u64,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// (h,q)-Bernoulli polynomial as a polynomial in L = log q.
    HqBernoulli {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "0")]
        x: Rational,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        h: i64,
        #[arg(long, value_parser = scalar, default_value = "1")]
        zeta: Cyclotomic,
        /// Character modulus; omitted for the character-free numbers.
        #[arg(long)]
        f: Option<u64>,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// p-adic computations.
    Padic {
        #[command(subcommand)]
        command: PadicCommand,
    },
    /// Sweep a theorem over a parameter grid.
    Verify {
        #[arg(value_parser = |s: &str| s.parse::<TheoremId>())]
        theorem: TheoremId,
        /// Flat TOML grid; defaults to the built-in grid.
        #[arg(long)]
        grid: Option<PathBuf>,
        /// Record per-point wall time.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DedekindKind {
    Classical,
    Fe,
    FeChar,
    Berndt,
    Apostol,
}

#[derive(Subcommand)]
enum PadicCommand {
    /// Teichmuller representative of a mod p^N.
    Teichmuller {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        prec: i64,
    },
    /// Level-N Volkenborn sum of q^{hx} poly(x).
    Volkenborn {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        level: u32,
        /// Coefficients, constant term first.
        #[arg(long, value_delimiter = ',', value_parser = rational, allow_hyphen_values = true, required = true)]
        poly: Vec<Rational>,
        #[arg(long, value_parser = rational, default_value = "1")]
        q: Rational,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        h: i64,
        #[arg(long)]
        weighted: bool,
        /// Working precision of q; defaults to 2*level + 8.
        #[arg(long = "N")]
        prec: Option<i64>,
    },
    /// Witt formula residual at level N.
    Witt {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        h: i64,
        #[arg(long, value_parser = rational)]
        q: Rational,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        level: u32,
    },
    /// p-adic (h,q) Dedekind sum.
    Dedekind {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        h: i64,
        #[arg(long, value_parser = rational)]
        q: Rational,
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        prec: i64,
    },
    /// p-adic interpolation residual for the (h,q) Dedekind sum.
    Th13 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        h: i64,
        #[arg(long, value_parser = rational)]
        q: Rational,
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        prec: i64,
        #[arg(long = "K")]
        cutoff: usize,
    },
    /// Character version of th13 with chi = omega^i.
    Th19 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        h: i64,
        #[arg(long, value_parser = rational)]
        q: Rational,
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        prec: i64,
        #[arg(long = "K")]
        cutoff: usize,
        /// Power of the Teichmuller character.
        #[arg(long)]
        i: u64,
    },
}

struct Output {
    json: Value,
    text: String,
}

fn exact<F: Scalar + std::fmt::Display>(v: F) -> Output {
    Output { json: v.to_json(), text: v.to_string() }
}

fn rat_out(v: Rational) -> Output {
    Output { json: v.to_json(), text: rational_to_string(&v) }
}

fn padic_out(v: PAdic) -> Output {
    Output { json: v.to_json(), text: v.to_string() }
}

fn residual_out(r: PadicResidual) -> Output {
    Output { json: r.to_json(), text: format!("residual {} (valuation {})", r.residual, r.valuation()) }
}

fn compute(cmd: Command) -> reciplab::Result<Output> {
    Ok(match cmd {
        Command::Bernoulli { n, x: None, .. } => rat_out(bernoulli_number(n)),
        Command::Bernoulli { n, x: Some(x), periodic: false } => rat_out(bernoulli_poly(n, &x)),
        Command::Bernoulli { n, x: Some(x), periodic: true } => rat_out(bernoulli_function(n, &x)?),
        Command::FeNumber { n, u } => exact(fe_number(n, &u)?),
        Command::FePoly { n, x, u } => exact(fe_poly(n, &x, &u)?),
        Command::FeFunction { n, x, u } => exact(fe_function(n, &x, &u)?),
        Command::CharFe { n, f, index, u, big_f } => exact(char_fe_number(n, &character(f, index)?, &u, big_f)?),
        Command::BarnesFe { n, a, u, x } => exact(barnes_fe(n, &a, &u, &x)?),
        Command::LNeg { n, x, u } => exact(l_neg(n, &x, &u)?),
        Command::LMulti { n, x, u, a } => exact(multiple_l_neg(n, &x, &u, &a)?),
        Command::LNumeric { s, s_im, x, u, tol } => {
            let v = l_numeric(Complex64::new(s, s_im), x, u, tol)?;
            let text = if v.im == 0.0 {
                format!("{} ± {:e}", v.re, v.bound)
            } else {
                format!("{}{:+}i ± {:e}", v.re, v.im, v.bound)
            };
            Output { json: serde_json::to_value(v).expect("plain struct"), text }
        }
        Command::Dedekind { kind, h, k, n, u, f, index } => match kind {
            DedekindKind::Classical => rat_out(classical_dedekind(h, k)?),
            DedekindKind::Apostol => rat_out(apostol_sum(n, h, k)?),
            DedekindKind::Berndt => exact(berndt_char_dedekind(h, k, &character(f, index)?)?),
            DedekindKind::Fe => exact(fe_dedekind_sum(n, h, k, &need_u(u)?)?),
            DedekindKind::FeChar => {
                let (h, k) = (positive(h, "h")?, positive(k, "k")?);
                exact(fe_dedekind_sum_char(n, h, k, &need_u(u)?, &character(f, index)?)?)
            }
        },
        Command::Hardy { variant, h, k, n, f, index } => match variant.as_str() {
            "hb0" | "hb1" => rat_out(hb_sum(variant.parse::<HbVariant>()?, n, h, k)?),
            "apostol" => rat_out(apostol_sum(n, h, k)?),
            "berndt-char" => exact(berndt_char_dedekind(h, k, &character(f, index)?)?),
            v => rat_out(hardy_sum(v.parse::<HardyVariant>()?, h, k)?),
        },
        Command::HqBernoulli { n, x, h, zeta, f, index } => {
            let params = HqParams::new(h, zeta)?;
            let v = match f {
                None => hq_bernoulli_poly(n, &x, &params)?,
                Some(f) => hq_bernoulli_char(n, Some(&x), &params, &character(f, index)?)?,
            };
            Output { json: v.to_json(), text: v.render() }
        }
        Command::Padic { command } => padic(command)?,
        Command::Verify { .. } => unreachable!("handled by sweep"),
    })
}

fn need_u(u: Option<Cyclotomic>) -> reciplab::Result<Cyclotomic> {
    u.ok_or_else(|| Error::InvalidArgument("--u is required for this sum".into()))
}

fn positive(v: i64, name: &str) -> reciplab::Result<u64> {
    u64::try_from(v).ok().filter(|&v| v > 0).ok_or_else(|| Error::InvalidArgument(format!("{name} must be positive")))
}

fn padic(cmd: PadicCommand) -> reciplab::Result<Output> {
    Ok(match cmd {
        PadicCommand::Teichmuller { a, p, prec } => padic_out(teichmuller(a, p, prec)?),
        PadicCommand::Volkenborn { p, level, poly, q, h, weighted, prec } => {
            let prec = prec.unwrap_or(2 * level as i64 + 8);
            let g = VolkenbornIntegrand { poly: Poly::new(poly), q: PAdic::from_rational(&q, p, prec), h };
            padic_out(volkenborn(&g, level, weighted)?)
        }
        PadicCommand::Witt { n, h, q, p, level } => residual_out(witt_residual(n, h, &q, p, level)?),
        PadicCommand::Dedekind { m, a, b, h, q, p, prec } => padic_out(padic_dedekind(m, a, b, h, &q, p, prec)?),
        PadicCommand::Th13 { m, a, b, h, q, p, prec, cutoff } => {
            residual_out(th13_residual(m, a, b, h, &q, p, prec, cutoff)?)
        }
        PadicCommand::Th19 { m, a, b, h, q, p, prec, cutoff, i } => {
            residual_out(th19_residual(m, a, b, h, &q, p, prec, cutoff, i)?)
        }
    })
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

struct Flags {
    json: bool,
    csv: bool,
    jobs: usize,
}

enum Sink<W: Write> {
    Csv(csv::Writer<W>),
    Json(W),
    Text(W),
}

impl<W: Write> Sink<W> {
    fn emit(&mut self, r: &VerificationReport) {
        let _ = match self {
            Sink::Csv(w) => {
                let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={}", render_value(v))).collect();
                let residual = r.residual.as_ref().map(|v| v.to_string()).unwrap_or_default();
                let status = r.status.to_string();
                let row = [&r.theorem, &params.join(";"), &status, &residual, r.detail.as_deref().unwrap_or("")];
                w.write_record(row).map_err(io::Error::other)
            }
            Sink::Json(w) => writeln!(w, "{}", serde_json::to_string(r).expect("serializable")),
            Sink::Text(w) => writeln!(w, "{}", r.summary()),
        };
    }

    fn finish(&mut self) {
        let _ = match self {
            Sink::Csv(w) => w.flush(),
            Sink::Json(w) | Sink::Text(w) => w.flush(),
        };
    }
}

fn sweep(theorem: TheoremId, grid: Option<PathBuf>, timing: bool, flags: &Flags) -> ExitCode {
    let grid = match grid {
        None => Ok(Grid::default_for(theorem)),
        Some(path) => match std::fs::read_to_string(&path) {
            Ok(src) => Grid::parse(&src, Some(theorem)).map_err(|e| format!("{}: {e}", path.display())),
            Err(e) => Err(format!("{}: {e}", path.display())),
        },
    };
    let grid = match grid {
        Ok(g) => g,
        Err(msg) => {
            eprintln!("config error: {msg}");
            return ExitCode::from(2);
        }
    };
    let out = io::BufWriter::new(io::stdout().lock());
    let mut sink = if flags.csv {
        let mut w = csv::Writer::from_writer(out);
        let _ = w.write_record(["theorem", "params", "status", "residual", "detail"]);
        Sink::Csv(w)
    } else if flags.json {
        Sink::Json(out)
    } else {
        Sink::Text(out)
    };
    let result = run_sweep(&grid, flags.jobs, timing, |r| sink.emit(r));
    sink.finish();
    match result {
        Ok(summary) => {
            eprintln!("{theorem}: {summary}");
            if summary.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let Cli { json, csv, jobs, command } = Cli::parse();
    let flags = Flags { json, csv, jobs: jobs.unwrap_or_else(default_jobs) };
    if let Command::Verify { theorem, grid, timing } = command {
        return sweep(theorem, grid, timing, &flags);
    }
    match compute(command) {
        Ok(out) if flags.json => {
            println!("{}", out.json);
            ExitCode::SUCCESS
        }
        Ok(out) => {
            println!("{}", out.text);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
