//! Command-line driver for the approximation toolkit: projection
//! coefficients, max-error measurement, minimax approximation, bound
//! reports, degree sweeps, figure-data reproduction, and the Peano
//! kernel property report.
//!
//! Exit codes: 0 success, 1 usage error (bad arguments, unknown labels,
//! unparsable expressions), 2 numerical non-convergence, 3 I/O failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use polyapprox::bestapprox::remez_best;
use polyapprox::bounds::{
    cheb_analytic_bound, leg_coeff_bound, leg_projection_bound, max_abs_on_ellipse,
    projection_vs_best_bound, BoundReport,
};
use polyapprox::harness::{
    emit, reproduce_figure, resolve_entry, resolve_function, sweep, EmitFormat,
};
use polyapprox::peano::peano_properties_report;
use polyapprox::projections::{
    assessment_grid, chebyshev_coeffs, eval_series, legendre_coeffs, max_error_on,
    SeriesCoeffs,
};
use polyapprox::specfun::BernsteinEllipse;
use polyapprox::Error;

#[derive(Parser)]
#[command(
    name = "polyapprox",
    version,
    about = "Legendre/Chebyshev projections, minimax approximation, and convergence-rate studies on [-1, 1]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Basis {
    Legendre,
    Chebyshev,
}

#[derive(Subcommand)]
enum Command {
    /// Compute projection coefficients of a function.
    Coeffs {
        /// Catalog label (e.g. "ln(1.2+x)") or expression (e.g. "x^3 - abs(x)").
        #[arg(long)]
        function: String,
        #[arg(long)]
        basis: Basis,
        #[arg(long)]
        degree: usize,
        /// Write CSV here instead of printing to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure the max error of the Legendre projection.
    Project {
        #[arg(long)]
        function: String,
        #[arg(long)]
        degree: usize,
        /// Extra uniform grid points joined with the assessment grid.
        #[arg(long, default_value_t = 0)]
        grid: usize,
    },
    /// Compute the minimax approximation and its certificate data.
    Remez {
        #[arg(long)]
        function: String,
        #[arg(long)]
        degree: usize,
    },
    /// Evaluate error bounds at a given ellipse parameter and report
    /// whether the measured errors satisfy them.
    Bounds {
        /// Function with a known analytic continuation (an analytic
        /// catalog entry or "1/(x-2)").
        #[arg(long)]
        function: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        rho: f64,
    },
    /// Degree sweep comparing projections against the minimax error.
    Sweep {
        #[arg(long)]
        function: String,
        #[arg(long)]
        nmin: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value_t = 1)]
        stride: usize,
        #[arg(long)]
        format: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reproduce the data files behind one comparison figure.
    Figure {
        #[arg(long)]
        id: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Peano kernel property report.
    Peano {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        degree: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Domain(_) => 1,
                Error::Convergence(_) | Error::RemezStalled { .. } | Error::RootIsolation(_) => 2,
                Error::Io { .. } => 3,
            };
            ExitCode::from(code)
        }
    }
}

fn coeffs_csv(series: &SeriesCoeffs) -> String {
    let mut out = String::from("k,coeff\n");
    for (k, c) in series.coeffs.iter().enumerate() {
        out.push_str(&format!("{k},{c:.16e}\n"));
    }
    out
}

fn run(command: Command) -> polyapprox::Result<()> {
    match command {
        Command::Coeffs {
            function,
            basis,
            degree,
            out,
        } => {
            let f = resolve_function(&function)?;
            let series = match basis {
                Basis::Legendre => legendre_coeffs(&f, degree)?,
                Basis::Chebyshev => chebyshev_coeffs(&f, degree)?,
            };
            if !series.stabilized {
                eprintln!(
                    "warning: coefficients did not stabilize to the requested tolerance; \
                     values near the quadrature/aliasing floor are approximate"
                );
            }
            let csv = coeffs_csv(&series);
            match out {
                Some(path) => std::fs::write(&path, csv).map_err(|source| Error::Io {
                    path: path.display().to_string(),
                    source,
                })?,
                None => print!("{csv}"),
            }
            Ok(())
        }
        Command::Project {
            function,
            degree,
            grid,
        } => {
            let f = resolve_function(&function)?;
            let series = legendre_coeffs(&f, degree)?;
            let mut points = assessment_grid(f.breakpoints());
            for i in 0..grid {
                points.push(-1.0 + 2.0 * i as f64 / (grid.max(2) - 1) as f64);
            }
            points.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut max_err = -1.0;
            let mut argmax = points[0];
            for &x in &points {
                let e = (f.eval(x) - eval_series(&series, x)?).abs();
                if e > max_err {
                    max_err = e;
                    argmax = x;
                }
            }
            println!("function = {}", f.label());
            println!("degree = {degree}");
            println!("max_error = {max_err:.16e}");
            println!("argmax = {argmax:.16e}");
            Ok(())
        }
        Command::Remez { function, degree } => {
            let f = resolve_function(&function)?;
            let r = remez_best(&f, degree)?;
            println!("function = {}", f.label());
            println!("degree = {degree}");
            println!("levelled_error = {:.16e}", r.levelled_error);
            println!("iterations = {}", r.iterations);
            println!("residual_flatness = {:.16e}", r.residual_flatness);
            let reference: Vec<String> =
                r.reference.iter().map(|x| format!("{x:.16e}")).collect();
            println!("reference = [{}]", reference.join(", "));
            Ok(())
        }
        Command::Bounds {
            function,
            degree,
            rho,
        } => {
            let f = resolve_function(&function)?;
            if !f.has_complex_evaluator() {
                return Err(Error::Domain(format!(
                    "'{}' has no analytic continuation; bounds need one (try an analytic \
                     catalog entry or \"1/(x-2)\")",
                    f.label()
                )));
            }
            let m = max_abs_on_ellipse(&f, rho)?;
            let ellipse = BernsteinEllipse::new(rho)?;
            let grid = assessment_grid(f.breakpoints());
            let leg = legendre_coeffs(&f, degree + 1)?;
            let err_p = max_error_on(&f, &leg.truncated(degree), &grid)?;
            let cheb = chebyshev_coeffs(&f, degree)?;
            let err_t = max_error_on(&f, &cheb, &grid)?;
            let best = remez_best(&f, degree)?.levelled_error;

            let reports = vec![
                BoundReport::new("chebyshev_analytic", cheb_analytic_bound(m, rho, degree)?)
                    .with_param("rho", rho)
                    .with_param("M", m)
                    .with_param("n", degree as f64)
                    .with_measurement(err_t),
                BoundReport::new(
                    "legendre_projection",
                    leg_projection_bound(&ellipse, m, degree)?,
                )
                .with_param("rho", rho)
                .with_param("M", m)
                .with_param("n", degree as f64)
                .with_measurement(err_p),
                BoundReport::new(
                    "legendre_coefficient",
                    leg_coeff_bound(&ellipse, m, degree + 1)?,
                )
                .with_param("rho", rho)
                .with_param("M", m)
                .with_param("k", (degree + 1) as f64)
                .with_measurement(leg.coeffs[degree + 1].abs()),
                BoundReport::new(
                    "projection_vs_best",
                    projection_vs_best_bound(best, degree)?,
                )
                .with_param("n", degree as f64)
                .with_param("best_err", best)
                .with_measurement(err_p),
            ];
            println!(
                "{}",
                serde_json::to_string_pretty(&reports).expect("reports serialize")
            );
            for report in &reports {
                let verdict = match report.satisfied(1e-10) {
                    Some(true) => "SATISFIED",
                    Some(false) => "VIOLATED",
                    None => "UNMEASURED",
                };
                eprintln!("{}: {verdict}", report.name);
            }
            Ok(())
        }
        Command::Sweep {
            function,
            nmin,
            nmax,
            stride,
            format,
            out,
        } => {
            let entry = resolve_entry(&function)?;
            let format: EmitFormat = format.parse()?;
            let report = sweep(&entry, nmin, nmax, stride)?;
            emit(&report, format, &out)?;
            if let Some(fit) = &report.slope_p {
                println!("slope_P = {:.4} (residual {:.2e})", fit.slope, fit.residual);
            }
            if !report.remez_failed_degrees.is_empty() {
                eprintln!(
                    "warning: remez did not converge at degrees {:?}",
                    report.remez_failed_degrees
                );
            }
            println!("wrote {}", out.display());
            Ok(())
        }
        Command::Figure { id, out } => {
            for path in reproduce_figure(id, &out)? {
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Peano { m, degree } => {
            let report = peano_properties_report(m, degree)?;
            println!("m = {m}");
            println!("degree = {degree}");
            println!("boundary_max = {:.16e}", report.boundary_max);
            println!("annihilation_max = {:.16e}", report.annihilation_max);
            println!(
                "derivative_residual_max = {:.16e}",
                report.derivative_residual_max
            );
            for (d, s) in report.degrees.iter().zip(&report.sup_norms) {
                println!("sup_norm[{d}] = {s:.16e}");
            }
            match report.decay_slope {
                Some(slope) => println!("decay_slope = {slope:.6}"),
                None => println!("decay_slope = n/a (degree ladder too short)"),
            }
            Ok(())
        }
    }
}
