use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rug::Float;

use polyzeta::bench::{run_bench, to_csv, Algo, BenchConfig, CacheMode, Preset};
use polyzeta::extend::{hurwitz_from_li, li_anywhere, li_inversion, periodic_zeta};
use polyzeta::hurwitz::{hz_direct, hz_euler_maclaurin, hz_hasse, hz_taylor, TaylorCenter};
use polyzeta::monodromy::{eval_sheet, GenWord};
use polyzeta::numctx::format::parse_complex;
use polyzeta::numctx::{digits_to_bits, BigComplex};
use polyzeta::polylog::{li_borwein, li_direct};
use polyzeta::render::{render_plot, PlotFunction, PlotKind, PlotSpec};
use polyzeta::validate::{validate_suite, Suite};
use polyzeta::{Error, Result};

#[derive(Parser)]
#[command(name = "polyzeta", version, about = "Polylogarithm and Hurwitz zeta at arbitrary precision")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyAlgo {
    Auto,
    Borwein,
    Direct,
    Inversion,
}

#[derive(Clone, Copy, ValueEnum)]
enum HurwitzAlgo {
    Em,
    /// Taylor series about the nearest of 0, 1/2, 1
    Taylor,
    Taylor0,
    TaylorHalf,
    TaylorOne,
    Hasse,
    Direct,
    Jonquiere,
}

#[derive(Clone, Copy, ValueEnum)]
enum CacheArg {
    Cold,
    Warm,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Figure {
    Phase,
    Periodic,
    Plane,
}

#[derive(Subcommand)]
enum Command {
    /// Li_s(z)
    Polylog {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long, value_enum, default_value = "auto")]
        algo: PolyAlgo,
        /// Also print the dispatch route.
        #[arg(long)]
        trace: bool,
    },
    /// ζ(s, q)
    Hurwitz {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 30)]
        digits: u32,
        #[arg(long, value_enum, default_value = "em")]
        algo: HurwitzAlgo,
    },
    /// F(q; s) = Li_s(e^{2πiq}) for real 0 < q <= 1
    Periodic {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 30)]
        digits: u32,
    },
    /// Li_s(z) continued along a word in g0, g1 and their inverses
    Sheet {
        #[arg(long)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 30)]
        digits: u32,
    },
    /// Identity checks with residuals
    Validate {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 30)]
        digits: u32,
    },
    /// Cold/warm timing with CSV output
    Bench {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value = "10,50,100")]
        digits_list: String,
        #[arg(long, value_enum, default_value = "both")]
        cache: CacheArg,
        #[arg(long)]
        csv: Option<String>,
        #[arg(long, default_value_t = 5)]
        repetitions: usize,
    },
    /// PPM image of phase or magnitude
    Render {
        #[arg(long, value_enum)]
        figure: Figure,
        #[arg(long, allow_hyphen_values = true, default_value = "0.5+15i")]
        s: String,
        /// x_min,x_max,y_min,y_max
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, default_value = "128x128")]
        size: String,
        #[arg(long)]
        out: String,
        #[arg(long, default_value_t = 8)]
        digits: u32,
        /// Continue along this word first (phase and plane figures).
        #[arg(long)]
        word: Option<String>,
    },
}

fn complex(text: &str, digits: u32) -> Result<BigComplex> {
    parse_complex(text, digits_to_bits(digits) + 64)
}

fn real(text: &str, digits: u32) -> Result<Float> {
    let c = complex(text, digits)?;
    if !c.im().is_zero() {
        return Err(Error::Usage(format!("expected a real number, got `{text}`")));
    }
    Ok(c.re().clone())
}

fn value_line(v: &BigComplex, digits: u32) -> String {
    v.to_decimal_pair(digits as usize)
}

fn check_digits(digits: u32) -> Result<()> {
    if digits == 0 || digits > 100_000 {
        return Err(Error::Usage(format!("digits must be between 1 and 100000, got {digits}")));
    }
    Ok(())
}

fn parse_list<T>(text: &str, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    text.split(',').map(|t| f(t.trim())).collect()
}

fn write_file(path: &str, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::Usage(format!("cannot write {path}: {e}")))
}

fn run(cli: Cli, out: &mut impl Write) -> Result<i32> {
    let mut emit = |line: String| -> Result<()> {
        writeln!(out, "{line}").map_err(|e| Error::Usage(format!("cannot write output: {e}")))
    };
    match cli.command {
        Command::Polylog { s, z, digits, algo, trace } => {
            check_digits(digits)?;
            let s = complex(&s, digits)?;
            let z = complex(&z, digits)?;
            match algo {
                PolyAlgo::Auto => {
                    let (v, t) = li_anywhere(&s, &z, digits)?;
                    emit(value_line(&v, digits))?;
                    if trace {
                        emit(format!("route: {} depth={}", t.describe(), t.depth))?;
                    }
                }
                PolyAlgo::Borwein => emit(value_line(&li_borwein(&s, &z, digits)?, digits))?,
                PolyAlgo::Direct => emit(value_line(&li_direct(&s, &z, digits)?, digits))?,
                PolyAlgo::Inversion => emit(value_line(&li_inversion(&s, &z, digits)?, digits))?,
            }
        }
        Command::Hurwitz { s, q, digits, algo } => {
            check_digits(digits)?;
            let s = complex(&s, digits)?;
            let qc = complex(&q, digits)?;
            let v = match algo {
                HurwitzAlgo::Em => hz_euler_maclaurin(&s, &qc, digits)?,
                HurwitzAlgo::Taylor => hz_taylor(&s, &qc, digits, TaylorCenter::nearest(&qc))?,
                HurwitzAlgo::TaylorOne => hz_taylor(&s, &qc, digits, TaylorCenter::One)?,
                HurwitzAlgo::Taylor0 => hz_taylor(&s, &qc, digits, TaylorCenter::Zero)?,
                HurwitzAlgo::TaylorHalf => hz_taylor(&s, &qc, digits, TaylorCenter::Half)?,
                HurwitzAlgo::Hasse => hz_hasse(&s, &qc, digits)?,
                HurwitzAlgo::Direct => hz_direct(&s, &qc, digits)?,
                HurwitzAlgo::Jonquiere => {
                    // ζ(s, q) = ζ(1 − a, q) with a = 1 − s
                    let a = (-&s).add_i64(1);
                    hurwitz_from_li(&a, &real(&q, digits)?, digits)?
                }
            };
            emit(value_line(&v, digits))?;
        }
        Command::Periodic { q, s, digits } => {
            check_digits(digits)?;
            let v = periodic_zeta(&real(&q, digits)?, &complex(&s, digits)?, digits)?;
            emit(value_line(&v, digits))?;
        }
        Command::Sheet { word, s, z, digits } => {
            check_digits(digits)?;
            let w = GenWord::parse(&word)?;
            let v = eval_sheet(&complex(&s, digits)?, &complex(&z, digits)?, &w, digits)?;
            emit(value_line(&v, digits))?;
        }
        Command::Validate { suite, digits } => {
            check_digits(digits)?;
            let report = validate_suite(Suite::parse(&suite)?, digits);
            for c in &report.checks {
                emit(c.to_string())?;
            }
            let (p, n) = report.counts();
            emit(format!("passed {p} of {n}"))?;
            if !report.all_passed() {
                return Ok(3);
            }
        }
        Command::Bench { preset, digits_list, cache, csv, repetitions } => {
            let preset = Preset::parse(&preset)?;
            let digits = parse_list(&digits_list, |t| {
                let d = t.parse::<u32>().map_err(|_| Error::Usage(format!("bad digit count `{t}`")))?;
                check_digits(d)?;
                Ok(d)
            })?;
            let caches = match cache {
                CacheArg::Cold => vec![CacheMode::Cold],
                CacheArg::Warm => vec![CacheMode::Warm],
                CacheArg::Both => vec![CacheMode::Cold, CacheMode::Warm],
            };
            let config =
                BenchConfig { preset, digits, algos: None::<Vec<Algo>>, caches, repetitions: repetitions.max(1) };
            let text = to_csv(&run_bench(&config));
            match csv {
                Some(path) => {
                    write_file(&path, text.as_bytes())?;
                    emit(format!("wrote {} records to {path}", text.lines().count() - 1))?;
                }
                None => emit(text.trim_end().to_string())?,
            }
        }
        Command::Render { figure, s, window, size, out: path, digits, word } => {
            check_digits(digits)?;
            let sc = complex(&s, digits)?;
            let (w, h) = size
                .split_once('x')
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                .ok_or_else(|| Error::Usage(format!("size must look like 64x64, got `{size}`")))?;
            let (kind, function, default_window) = match figure {
                Figure::Phase => (PlotKind::Phase, PlotFunction::PolylogZPlane, (-2.0, 2.0, -2.0, 2.0)),
                Figure::Plane => (PlotKind::Magnitude, PlotFunction::PolylogZPlane, (-2.0, 2.0, -2.0, 2.0)),
                Figure::Periodic => (PlotKind::Magnitude, PlotFunction::PeriodicQTau, (0.0, 1.0, 0.0, 50.0)),
            };
            let function = match (word, function) {
                (Some(wd), PlotFunction::PolylogZPlane) => PlotFunction::Sheet(GenWord::parse(&wd)?),
                (Some(_), _) => return Err(Error::Usage("--word applies to the phase and plane figures".into())),
                (None, f) => f,
            };
            let window = match window {
                Some(text) => {
                    let v = parse_list(&text, |t| {
                        t.parse::<f64>().map_err(|_| Error::Usage(format!("bad window value `{t}`")))
                    })?;
                    if v.len() != 4 {
                        return Err(Error::Usage("window needs four comma-separated numbers".into()));
                    }
                    (v[0], v[1], v[2], v[3])
                }
                None => default_window,
            };
            let spec = PlotSpec { kind, function, window, width: w, height: h, s: (sc.re_f64(), sc.im_f64()) };
            let img = render_plot(&spec, digits)?;
            write_file(&path, &img.to_ppm())?;
            emit(format!("wrote {w}x{h} image to {path}, {} failed pixels", img.failures))?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error[usage]: {first}");
            return ExitCode::from(4);
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error[{}]: {}", e.tag(), e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
