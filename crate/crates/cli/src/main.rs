//! `toeplitz-pc`: spectra, indices and `H^1` verdicts for Toeplitz operators
//! with piecewise continuous symbols.
//!
//! Exit codes: 0 success, 2 parse error, 3 domain or budget error,
//! 4 lambda in the essential spectrum.

mod render;
mod symbol_file;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use toeplitz_pc::bmo::{self, OscillationReport, Verdict};
use toeplitz_pc::{experiments, spectra, Error, PiecewiseSymbol};

use symbol_file::SymbolFile;

#[derive(Parser)]
#[command(
    name = "toeplitz-pc",
    version,
    about = "Toeplitz operators with piecewise continuous symbols"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectrumFormat {
    Csv,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentKind {
    Growth,
    Probe,
    Indexcheck,
    Lindelof,
}

#[derive(Subcommand)]
enum Command {
    /// Sampled essential spectrum on H^p.
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 256)]
        resolution: usize,
        #[arg(long, value_enum, default_value = "csv")]
        out: SpectrumFormat,
    },
    /// Fredholm index of T_{a - lambda} on H^p.
    Index {
        file: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// `re,im`
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, default_value = "0,0")]
        lambda: Complex64,
    },
    /// H^1 boundedness verdict.
    Verdict { file: PathBuf },
    /// Numerical experiments, written as CSV.
    Experiment {
        file: PathBuf,
        #[arg(value_enum)]
        kind: ExperimentKind,
        /// Comma-separated section sizes or polynomial degrees.
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<usize>>,
        /// `re,im` (probe and indexcheck).
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex, default_value = "0,0")]
        lambda: Complex64,
        /// Boundary angle in radians (lindelof).
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        t: f64,
        /// Adds a wall_time column to growth output; not deterministic.
        #[arg(long)]
        wall_time: bool,
    },
    /// Re-emits a symbol file in normal form.
    Normalize { file: PathBuf },
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected re,im, got {s:?}"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("{re:?}: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("{im:?}: {e}"))?;
    Ok(Complex64::new(re, im))
}

enum Failure {
    Parse(String),
    Domain(String),
    InSpectrum,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InSpectrum => Failure::InSpectrum,
            e => Failure::Domain(e.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<SymbolFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    SymbolFile::parse(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load_symbol(path: &Path) -> Result<PiecewiseSymbol, Failure> {
    load(path)?
        .normalized()
        .to_symbol()
        .map_err(|e| Failure::Parse(e.0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::InSpectrum) => {
            eprintln!("lambda in essential spectrum");
            ExitCode::from(4)
        }
    }
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Spectrum {
            file,
            p,
            resolution,
            out,
        } => {
            let symbol = load_symbol(&file)?;
            let spec = spectra::essential_spectrum(&symbol, p, resolution)?;
            Ok(match out {
                SpectrumFormat::Csv => render::spectrum_csv(
                    &spec,
                    &[
                        format!("file={}", file.display()),
                        format!("p={p}"),
                        format!("resolution={resolution}"),
                    ],
                ),
                SpectrumFormat::Svg => {
                    render::spectrum_svg(&spec, &format!("essential spectrum, p = {p}"))
                }
            })
        }
        Command::Index { file, p, lambda } => {
            let symbol = load_symbol(&file)?;
            if spectra::is_in_essential_spectrum(&symbol, p, lambda, spectra::DISTANCE_TOLERANCE)? {
                return Err(Failure::InSpectrum);
            }
            Ok(format!(
                "{}\n",
                spectra::fredholm_index(&symbol, p, lambda)?
            ))
        }
        Command::Verdict { file } => {
            let symbol = load_symbol(&file)?;
            Ok(verdict_text(
                &symbol,
                &bmo::h1_boundedness_verdict(&symbol)?,
            ))
        }
        Command::Experiment {
            file,
            kind,
            n_list,
            lambda,
            t,
            wall_time,
        } => {
            let symbol = load_symbol(&file)?;
            let mut out = String::new();
            let _ = writeln!(out, "# file={}", file.display());
            match kind {
                ExperimentKind::Growth => {
                    let n_list = n_list.unwrap_or_else(|| vec![64, 256, 1024, 4096]);
                    let table = experiments::h1_growth_experiment(&symbol, &n_list)?;
                    let _ = writeln!(out, "# experiment=growth n_list={}", join(&n_list));
                    let _ = writeln!(out, "# tail_tolerance={}", experiments::TAIL_TOLERANCE);
                    out.push_str(if wall_time {
                        "n,ratio,out_degree,wall_time_s\n"
                    } else {
                        "n,ratio,out_degree\n"
                    });
                    for r in &table.rows {
                        let _ = write!(out, "{},{},{}", r.n, r.ratio, r.out_degree);
                        if wall_time {
                            let _ = write!(out, ",{}", r.wall_time.as_secs_f64());
                        }
                        out.push('\n');
                    }
                }
                ExperimentKind::Probe => {
                    let n_list = n_list.unwrap_or_else(|| vec![32, 64, 128, 256, 512]);
                    let table = experiments::finite_section_probe(&symbol, lambda, &n_list)?;
                    let _ = writeln!(out, "# experiment=probe n_list={}", join(&n_list));
                    let _ = writeln!(out, "# lambda={},{}", lambda.re, lambda.im);
                    out.push_str("n,sigma_min\n");
                    for r in &table.rows {
                        let _ = writeln!(out, "{},{}", r.n, r.sigma_min);
                    }
                }
                ExperimentKind::Indexcheck => {
                    let report = experiments::index_consistency(&symbol, lambda)?;
                    let _ = writeln!(out, "# experiment=indexcheck p=2");
                    out.push_str("lambda_re,lambda_im,geometric,analytic,matches\n");
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        lambda.re,
                        lambda.im,
                        report.geometric,
                        report.analytic,
                        report.matches()
                    );
                }
                ExperimentKind::Lindelof => {
                    if !symbol.is_single_piece() {
                        return Err(Failure::Domain(Error::NotTrigPolynomial.to_string()));
                    }
                    let ladder = experiments::default_lindelof_ladder();
                    let report = experiments::lindelof_demo(&symbol.pieces()[0].value, t, &ladder)?;
                    let _ = writeln!(out, "# experiment=lindelof t={t}");
                    let _ = writeln!(
                        out,
                        "# boundary={},{} left_limit={},{} right_limit={},{} difference={}",
                        report.boundary_value.re,
                        report.boundary_value.im,
                        report.left_limit.re,
                        report.left_limit.im,
                        report.right_limit.re,
                        report.right_limit.im,
                        report.difference
                    );
                    out.push_str("m,left_re,left_im,right_re,right_im\n");
                    for (m, l, r) in &report.ladder {
                        let _ = writeln!(out, "{m},{},{},{},{}", l.re, l.im, r.re, r.im);
                    }
                }
            }
            Ok(out)
        }
        Command::Normalize { file } => Ok(load(&file)?.normalized().to_json()),
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn verdict_text(symbol: &PiecewiseSymbol, verdict: &Verdict) -> String {
    let mut out = String::new();
    match verdict {
        Verdict::Bounded { certificate } => {
            let _ = writeln!(out, "Bounded: {certificate}");
            let _ = writeln!(
                out,
                "certificate: single piece of maximal frequency {}",
                symbol.max_frequency()
            );
        }
        Verdict::Unbounded { jump } => {
            let _ = writeln!(out, "Unbounded: {jump}");
            let _ = writeln!(
                out,
                "certificate: a(t-0) = {},{} differs from a(t+0) = {},{}",
                jump.left_limit.re, jump.left_limit.im, jump.right_limit.re, jump.right_limit.im
            );
        }
        Verdict::Unknown { report } => {
            out.push_str("Unknown\n");
            let _ = writeln!(out, "certificate: none; ladder hint {:?}", report.hint);
            out.push_str(&report_csv(report));
        }
    }
    out
}

fn report_csv(r: &OscillationReport) -> String {
    let mut out = format!(
        "# vmo_delta={}\nn,bmo,bmo_log,vmo_defect,vmo_log_defect\n",
        bmo::VMO_DELTA
    );
    for i in 0..r.resolutions.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.resolutions[i], r.bmo[i], r.bmo_log[i], r.vmo_defect[i], r.vmo_log_defect[i]
        );
    }
    out
}
