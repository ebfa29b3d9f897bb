use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maclaurin_core::bdp::{solve_bdp, BirthDeathSpec, Boundary};
use maclaurin_core::combinatorics::{
    enumerate_index_set, enumerate_restricted_index_set, multinomial_pi_sum, pi_coefficient, pi_sum,
};
use maclaurin_core::format::{csv_row, fmt_float, fmt_fraction, parse_rational, DEFAULT_DIGITS};
use maclaurin_core::matfile::parse_matrices;
use maclaurin_core::peano_baker::pb_equivalence_report;
use maclaurin_core::scalar::{scalar_closed_form, scalar_coefficients, ScalarPolyCoefficient};
use maclaurin_core::series::{
    compute_coefficients, counterexample_table, solve_stepped, tail_bound, MatrixPolyCoefficients, Orientation,
};
use maclaurin_core::shift_algebra::{binomial_group, power_expand, reduce, ShiftPolynomial, ShiftWord};
use maclaurin_core::Matrix;

#[derive(Parser)]
#[command(name = "maclaurin", version, about = "Maclaurin-series solutions of linear evolution equations")]
#[command(allow_negative_numbers = true)]
struct Cli {
    /// Significant digits for printed floats
    #[arg(long, global = true, default_value_t = DEFAULT_DIGITS)]
    digits: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the multi-indices of S_{n,q} (or S_{n,q,p}) with their weights
    Coeffs {
        n: usize,
        q: usize,
        /// Restrict entries to at most p
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Weight sum by enumeration and by the multinomial formula
    Pisum { n: usize, q: usize, p: usize },
    /// Scalar problem: series value, closed form and tail bound
    Scalar {
        /// Coefficients a_0,a_1,...
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<f64>,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 30)]
        order: usize,
    },
    /// Solve dR/dt = A(t) R (or R A(t)) from a matrix file
    Solve {
        #[command(flatten)]
        input: CoeffInput,
        #[arg(long, default_value_t = 30)]
        order: usize,
        #[arg(long)]
        t: f64,
        /// Compose local expansions on a grid with this spacing
        #[arg(long)]
        step: Option<f64>,
        /// `csv` for CSV on stdout, anything else is a CSV file path
        #[arg(long)]
        out: Option<String>,
    },
    /// Per-degree gaps between the Peano-Baker sum and the series, as CSV
    ComparePb {
        #[command(flatten)]
        input: CoeffInput,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Residuals of the series and of exp(int A) for A(t) = [[0,1],[t,0]]
    Counterexample {
        #[arg(long, default_value_t = 30)]
        order: usize,
        /// Central-difference half-width
        #[arg(long, default_value_t = 1e-5)]
        h: f64,
        #[arg(long, default_value_t = 30)]
        terms: usize,
    },
    /// Normal forms over the shift alphabet {U, S}
    Algebra {
        #[command(subcommand)]
        op: AlgebraOp,
    },
    /// Transient distribution of a birth-death chain with linear rates
    Bdp {
        #[arg(long)]
        lam0: f64,
        #[arg(long)]
        mu0: f64,
        #[arg(long, default_value_t = 0.0)]
        lam1: f64,
        #[arg(long, default_value_t = 0.0)]
        mu1: f64,
        #[arg(long)]
        states: usize,
        #[arg(long = "T")]
        t_end: f64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 30)]
        order: usize,
        #[arg(long, value_enum, default_value_t = BoundaryArg::AbsorbLast)]
        boundary: BoundaryArg,
        /// `csv` (default) for stdout, anything else is a file path
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Args)]
struct CoeffInput {
    /// Matrix file: rows per line, blank line between A_0, A_1, ...
    #[arg(long)]
    coeffs: PathBuf,
    #[arg(long, value_enum, default_value_t = OrientationArg::Left)]
    orientation: OrientationArg,
}

#[derive(Subcommand)]
enum AlgebraOp {
    /// Reduce a word such as USUS
    Reduce { word: String },
    /// Binomial group with m atoms U and j atoms SU
    Group { m: usize, j: usize },
    /// Expand (lam U - mu S U)^k
    Power {
        k: usize,
        #[arg(long, default_value = "1")]
        lam: String,
        #[arg(long, default_value = "1")]
        mu: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundaryArg {
    AbsorbLast,
    ReflectNone,
}

type Res<T> = Result<T, String>;

fn core<T>(r: maclaurin_core::Result<T>) -> Res<T> {
    r.map_err(|e| e.to_string())
}

fn load(input: &CoeffInput) -> Res<MatrixPolyCoefficients> {
    let path = input.coeffs.display();
    let text = fs::read_to_string(&input.coeffs).map_err(|e| format!("{path}: {e}"))?;
    let matrices = parse_matrices(&text).map_err(|e| format!("{path}: {e}"))?;
    let orientation = match input.orientation {
        OrientationArg::Left => Orientation::Left,
        OrientationArg::Right => Orientation::Right,
    };
    core(MatrixPolyCoefficients::new(matrices, orientation))
}

fn matrix_rows(m: &Matrix, digits: usize) -> String {
    (0..m.dim())
        .map(|i| m.row(i).iter().map(|&v| fmt_float(v, digits)).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

fn emit(out: Option<&str>, text: String) -> Res<String> {
    match out {
        None | Some("csv") | Some("-") => Ok(text),
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("{path}: {e}"))?;
            Ok(String::new())
        }
    }
}

fn polynomial_lines(p: &ShiftPolynomial) -> String {
    if p.is_zero() {
        return "0\n".into();
    }
    p.lines().into_iter().map(|l| l + "\n").collect()
}

fn run(cli: Cli) -> Res<String> {
    let digits = cli.digits.max(1);
    let mut out = String::new();
    match cli.command {
        Command::Coeffs { n, q, p, format } => {
            let iter = match p {
                Some(p) => core(enumerate_restricted_index_set(n, q, p))?,
                None => core(enumerate_index_set(n, q))?,
            };
            if let Format::Csv = format {
                let cols: Vec<String> = (1..=n - q).map(|i| format!("m{i}")).collect();
                writeln!(out, "{},pi", cols.join(",")).unwrap();
            }
            for m in iter {
                let pi = fmt_fraction(&core(pi_coefficient(&m))?);
                match format {
                    Format::Table => writeln!(out, "{m}  {pi}").unwrap(),
                    Format::Csv => {
                        let e: Vec<String> = m.entries().iter().map(|x| x.to_string()).collect();
                        writeln!(out, "{},{pi}", e.join(",")).unwrap();
                    }
                }
            }
        }
        Command::Pisum { n, q, p } => {
            let a = core(pi_sum(n, q, p))?;
            let b = core(multinomial_pi_sum(n, q, p))?;
            let verdict = if a == b { "EQUAL" } else { "DIFFER" };
            writeln!(out, "{}  {}  {verdict}", fmt_fraction(&a), fmt_fraction(&b)).unwrap();
        }
        Command::Scalar { a, t, order } => {
            let coeffs = core(ScalarPolyCoefficient::new(a.clone()))?;
            let series = scalar_coefficients(&coeffs, order).evaluate(t);
            let closed = scalar_closed_form(&coeffs, t);
            let matrix_coeffs =
                core(MatrixPolyCoefficients::new(a.iter().map(|&x| Matrix::from_fn(1, |_, _| x)).collect(), Orientation::Left))?;
            let bound = tail_bound(&matrix_coeffs, order, t).bound;
            writeln!(out, "series {}", fmt_float(series, digits)).unwrap();
            writeln!(out, "closed_form {}", fmt_float(closed.value, digits)).unwrap();
            writeln!(out, "difference {}", fmt_float((series - closed.value).abs(), digits)).unwrap();
            writeln!(out, "tail_bound {}", fmt_float(bound, digits)).unwrap();
            if closed.overflow {
                writeln!(out, "closed_form overflowed").unwrap();
            }
        }
        Command::Solve { input, order, t, step, out: target } => {
            let coeffs = load(&input)?;
            let points: Vec<(f64, Matrix, f64)> = match step {
                Some(h) => core(solve_stepped(&coeffs, t, h, order))?
                    .into_iter()
                    .map(|p| (p.t, p.r, p.error_bound))
                    .collect(),
                None => {
                    let series = core(compute_coefficients(&coeffs, order))?;
                    vec![(t, series.evaluate(t), tail_bound(&coeffs, order, t).bound)]
                }
            };
            match target {
                None => out = matrix_rows(&points.last().expect("at least one point").1, digits),
                Some(target) => {
                    let dim = coeffs.dim();
                    let mut csv = String::from("t");
                    for i in 1..=dim {
                        for j in 1..=dim {
                            write!(csv, ",r{i}_{j}").unwrap();
                        }
                    }
                    csv.push_str(",tail_bound\n");
                    for (t, r, bound) in &points {
                        let mut row = vec![*t];
                        row.extend_from_slice(r.as_slice());
                        row.push(*bound);
                        writeln!(csv, "{}", csv_row(&row, digits)).unwrap();
                    }
                    out = emit(Some(&target), csv)?;
                }
            }
        }
        Command::ComparePb { input, order } => {
            let report = core(pb_equivalence_report(&load(&input)?, order))?;
            out.push_str("degree,abs_gap,rel_gap\n");
            for g in &report.gaps {
                writeln!(out, "{},{}", g.degree, csv_row(&[g.abs_gap, g.rel_gap], digits)).unwrap();
            }
        }
        Command::Counterexample { order, h, terms } => {
            let rows = core(counterexample_table(&[0.25, 0.5, 0.75, 1.0], order, h, terms))?;
            out.push_str("t,maclaurin_residual,naive_residual\n");
            for r in rows {
                writeln!(out, "{}", csv_row(&[r.t, r.maclaurin_residual, r.naive_residual], digits)).unwrap();
            }
        }
        Command::Algebra { op } => {
            let poly = match op {
                AlgebraOp::Reduce { word } => reduce(&core(word.parse::<ShiftWord>())?),
                AlgebraOp::Group { m, j } => core(binomial_group(m, j))?.recombine(),
                AlgebraOp::Power { k, lam, mu } => {
                    let lam = parse_rational(&lam).ok_or_else(|| format!("invalid rational for --lam: '{lam}'"))?;
                    let mu = parse_rational(&mu).ok_or_else(|| format!("invalid rational for --mu: '{mu}'"))?;
                    core(power_expand(k, &lam, &mu))?
                }
            };
            out = polynomial_lines(&poly);
        }
        Command::Bdp { lam0, mu0, lam1, mu1, states, t_end, steps, order, boundary, out: target } => {
            let boundary = match boundary {
                BoundaryArg::AbsorbLast => Boundary::AbsorbLast,
                BoundaryArg::ReflectNone => Boundary::ReflectNone,
            };
            let spec = core(BirthDeathSpec::new([lam0, lam1], [mu0, mu1], states, boundary))?;
            let (traj, _) = core(solve_bdp(&spec, t_end, steps, order, None))?;
            let mut csv = String::from("t");
            for i in 1..=states {
                write!(csv, ",p{i}").unwrap();
            }
            csv.push_str(",leakage\n");
            for ((t, row), leak) in traj.times.iter().zip(&traj.rows).zip(&traj.leakage) {
                let mut values = vec![*t];
                values.extend_from_slice(row);
                values.push(*leak);
                writeln!(csv, "{}", csv_row(&values, digits)).unwrap();
            }
            out = emit(target.as_deref(), csv)?;
        }
    }
    Ok(out)
}

/// Write everything, ignoring a reader that went away early.
fn write_stdout(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            write_stdout(&e.to_string());
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // first paragraph of the clap message, folded onto one line
            let text = e.to_string();
            let line: Vec<&str> = text
                .lines()
                .map(str::trim)
                .skip_while(|l| l.is_empty())
                .take_while(|l| !l.is_empty() && !l.starts_with("Usage:"))
                .collect();
            eprintln!("{}", if line.is_empty() { "error: invalid arguments".into() } else { line.join(" ") });
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(text) => {
            write_stdout(&text);
            ExitCode::SUCCESS
        }
        Err(msg) => {
            eprintln!("error: {}", msg.replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
