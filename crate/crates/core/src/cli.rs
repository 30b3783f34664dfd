//! Command-line surface of `trap-audit`. [`run`] parses arguments, performs
//! one subcommand and returns the process exit code: 0 on success, 2 on
//! parse errors, 3 on computation errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::fuchsian::{Exponent, Point};
use crate::numerics::{
    contour_residues, default_radius, integrate_flow, poincare_section, write_section_csv, write_trajectory_csv,
    IntegratorConfig,
};
use crate::report::{audit, json_err, CHECK_NODES, CHECK_TOL};
use crate::ve::{build_nve, roots, tangential_ode, ve2_point, TrapParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

/// Grid rows are audited and written in chunks of this size.
const GRID_CHUNK: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "trap-audit", version, about = "Integrability auditor for the 2D trapped-ion Hamiltonian")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    #[arg(long = "A", allow_hyphen_values = true)]
    a: String,
    #[arg(long = "B", allow_hyphen_values = true)]
    b: String,
    #[arg(long = "C", allow_hyphen_values = true)]
    c: String,
    #[arg(long = "D", allow_hyphen_values = true)]
    d: String,
    #[arg(long = "E", allow_hyphen_values = true)]
    e: String,
    #[arg(long = "F", allow_hyphen_values = true)]
    f: String,
    #[arg(long = "G", allow_hyphen_values = true)]
    g: String,
    /// Energy constant of the particular solution.
    #[arg(long = "h", allow_hyphen_values = true, default_value = "0")]
    h: String,
}

impl ParamArgs {
    fn parse(&self) -> Result<TrapParams> {
        let fields = [&self.a, &self.b, &self.c, &self.d, &self.e, &self.f, &self.g, &self.h];
        TrapParams::parse(&fields.map(String::as_str)).map_err(|e| match e {
            Error::Parse { field, message } => Error::Parse { field: format!("--{field}"), message },
            other => other,
        })
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Equation {
    Nve,
    Tangential,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ResidueMethod {
    Exact,
    Numeric,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FlowMethod {
    Symplectic,
    Adaptive,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify one parameter set and print its report.
    Audit {
        #[command(flatten)]
        params: ParamArgs,
        /// Corroborate VE2 residues by contour integration.
        #[arg(long)]
        numeric_check: bool,
        /// Write the report to this path instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Audit every row of a CSV file with columns A,B,C,D,E,F,G[,h].
    Grid {
        #[arg(long)]
        file: PathBuf,
        /// JSON-lines output; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[arg(long)]
        numeric_check: bool,
    },
    /// Frobenius series of a local solution.
    Series {
        #[command(flatten)]
        params: ParamArgs,
        /// One of 0, z1, z2, inf.
        #[arg(long)]
        point: String,
        /// 0 for the exponent with larger real part, 1 for the other.
        #[arg(long, default_value_t = 0)]
        exponent_index: usize,
        #[arg(long, default_value_t = 12)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Equation::Nve)]
        equation: Equation,
    },
    /// VE2 component residues at a branch point.
    Residue {
        #[command(flatten)]
        params: ParamArgs,
        /// z1 or z2.
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value_t = ResidueMethod::Exact)]
        method: ResidueMethod,
        #[arg(long, default_value_t = CHECK_NODES)]
        nodes: usize,
    },
    /// Monodromy trace data of the normal variational equation.
    Trace {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Integrate the Hamiltonian flow and write the trajectory as CSV.
    Simulate {
        #[command(flatten)]
        params: ParamArgs,
        /// r,p_r,z,p_z
        #[arg(long, allow_hyphen_values = true)]
        init: String,
        #[arg(long)]
        tmax: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FlowMethod::Symplectic)]
        method: FlowMethod,
        /// Step of the symplectic method; maximal step of the adaptive one.
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Poincare section on z = 0, p_z > 0, written as CSV.
    Section {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_hyphen_values = true)]
        energy: f64,
        #[arg(long)]
        n: usize,
        /// Starting r,p_r on the section.
        #[arg(long, allow_hyphen_values = true, default_value = "0.1,0")]
        start: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-2)]
        step: f64,
    },
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Output goes to `stdout`; diagnostics to stderr.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error [{}]: {e}", e.tag());
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        _ => EXIT_COMPUTE,
    }
}

fn io_err(e: io::Error) -> Error {
    Error::PreconditionViolation(format!("i/o failed: {e}"))
}

fn open_out(path: Option<&Path>, stdout: &mut dyn Write, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(io_err)?);
            body(&mut w)?;
            w.flush().map_err(io_err)
        }
        None => body(stdout),
    }
}

fn print_json(v: &Value, stdout: &mut dyn Write) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(json_err)?;
    writeln!(stdout, "{s}").map_err(io_err)
}

fn dispatch(cmd: Command, stdout: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Audit { params, numeric_check, json } => {
            let report = audit(&params.parse()?, numeric_check);
            let text = report.to_json_pretty()?;
            match json {
                Some(path) => {
                    std::fs::write(&path, format!("{text}\n")).map_err(io_err)?;
                    writeln!(stdout, "{}", report.verdict).map_err(io_err)
                }
                None => writeln!(stdout, "{text}").map_err(io_err),
            }
        }
        Command::Grid { file, out, parallel, numeric_check } => grid(&file, out.as_deref(), parallel, numeric_check, stdout),
        Command::Series { params, point, exponent_index, order, equation } => {
            let p = params.parse()?;
            let ode = match equation {
                Equation::Nve => build_nve(&p)?,
                Equation::Tangential => tangential_ode(&p)?,
            };
            let pt = parse_point(&p, &point)?;
            let pair = ode.indicial_exponents(&pt)?;
            let root = pair.roots.get(exponent_index).ok_or_else(|| Error::Parse {
                field: "--exponent-index".into(),
                message: format!("{exponent_index} is not 0 or 1"),
            })?;
            let exponent = match root {
                Exponent::Exact(x) => x.as_rational().cloned(),
                Exponent::Radical { .. } => None,
            }
            .ok_or_else(|| Error::PreconditionViolation(format!("exponent {root} is not rational")))?;
            let series = ode.frobenius_expand(&pt, &exponent, order)?;
            print_json(&serde_json::to_value(&series).map_err(json_err)?, stdout)
        }
        Command::Residue { params, point, method, nodes } => {
            let p = params.parse()?;
            let i = match point.as_str() {
                "z1" => 1,
                "z2" => 2,
                other => return Err(Error::Parse { field: "--point".into(), message: format!("{other} is not z1 or z2") }),
            };
            print_json(&residue_json(&p, i, method, nodes)?, stdout)
        }
        Command::Trace { params } => {
            let p = params.parse()?;
            let ode = build_nve(&p)?;
            let entries = ode.trace_data()?;
            let (z1, z2) = roots(&p)?;
            let mut out = Map::new();
            for e in &entries {
                let key = match &e.point {
                    Point::Infinity => "t_inf",
                    Point::Finite(x) if x.is_zero() => "t0",
                    Point::Finite(x) if *x == z1 => "t1",
                    Point::Finite(x) if *x == z2 => "t2",
                    Point::Finite(_) => continue,
                };
                let t = e.t.as_ref().map(Rational::to_string).unwrap_or_else(|| e.t_symbol.clone());
                out.insert(key.into(), Value::String(t));
            }
            out.insert("entries".into(), serde_json::to_value(&entries).map_err(json_err)?);
            print_json(&Value::Object(out), stdout)
        }
        Command::Simulate { params, init, tmax, out, method, step, tol } => {
            let p = params.parse()?;
            let v = parse_floats::<4>("--init", &init)?;
            let config = match method {
                FlowMethod::Symplectic => IntegratorConfig::symplectic(step),
                FlowMethod::Adaptive => IntegratorConfig { max_step: step, ..IntegratorConfig::adaptive(tol) },
            };
            let traj = integrate_flow(&p, v, tmax, &config)?;
            eprintln!("energy drift: {:e}", traj.energy_drift);
            open_out(out.as_deref(), stdout, |w| write_trajectory_csv(&traj, w))
        }
        Command::Section { params, energy, n, start, out, step } => {
            let p = params.parse()?;
            let [r, pr] = parse_floats::<2>("--start", &start)?;
            let pts = poincare_section(&p, energy, (r, pr), n, &IntegratorConfig::symplectic(step))?;
            open_out(out.as_deref(), stdout, |w| write_section_csv(&pts, w))
        }
    }
}

fn parse_point(p: &TrapParams, s: &str) -> Result<Point> {
    match s {
        "0" => Ok(Point::finite(0)),
        "inf" => Ok(Point::Infinity),
        "z1" => Ok(Point::Finite(roots(p)?.0)),
        "z2" => Ok(Point::Finite(roots(p)?.1)),
        other => Err(Error::Parse { field: "--point".into(), message: format!("{other} is not 0, z1, z2 or inf") }),
    }
}

fn parse_floats<const N: usize>(field: &str, s: &str) -> Result<[f64; N]> {
    let err = |m: String| Error::Parse { field: field.into(), message: m };
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| err(format!("{t:?}: {e}"))))
        .collect::<Result<_>>()?;
    let arr: [f64; N] = v.try_into().map_err(|_| err(format!("expected {N} comma-separated values")))?;
    if arr.iter().all(|x| x.is_finite()) {
        Ok(arr)
    } else {
        Err(err("values must be finite".into()))
    }
}

fn residue_json(p: &TrapParams, i: u8, method: ResidueMethod, nodes: usize) -> Result<Value> {
    let mut out = Map::new();
    out.insert("point".into(), json!(format!("z{i}")));
    let exact = if method != ResidueMethod::Numeric {
        let pt = ve2_point(p, i)?;
        out.insert("exact".into(), serde_json::to_value(&pt.component_residues).map_err(json_err)?);
        out.insert("displayed_product".into(), json!(pt.displayed_product.to_string()));
        out.insert("closed_form".into(), json!(pt.closed_form.to_string()));
        Some(pt.component_residues)
    } else {
        None
    };
    if method != ResidueMethod::Exact {
        let radius = default_radius(p, i)?;
        let num = contour_residues(p, i, radius, nodes)?;
        out.insert("numeric".into(), json!(num.map(|c| [c.re, c.im])));
        out.insert("radius".into(), json!(radius));
        if let Some(exact) = exact {
            let err = num
                .iter()
                .zip(&exact)
                .map(|(n, x)| (n - x.to_complex()).norm() / x.to_complex().norm().max(1.0))
                .fold(0.0, f64::max);
            out.insert("max_error".into(), json!(err));
            out.insert("agree".into(), json!(err < CHECK_TOL));
        }
    }
    Ok(Value::Object(out))
}

/// One JSON line for a grid row: the compact report, or an error object.
pub fn grid_line(row: usize, fields: &[String], numeric_check: bool) -> String {
    let refs: Vec<&str> = fields.iter().map(String::as_str).collect();
    match TrapParams::parse(&refs) {
        Ok(p) => match audit(&p, numeric_check).to_json() {
            Ok(s) => s,
            Err(e) => error_line(row, &e),
        },
        Err(e) => error_line(row, &e),
    }
}

fn error_line(row: usize, e: &Error) -> String {
    json!({"error": e.to_string(), "row": row, "tag": e.tag()}).to_string()
}

fn grid(file: &Path, out: Option<&Path>, parallel: usize, numeric_check: bool, stdout: &mut dyn Write) -> Result<()> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(file)
        .map_err(|e| Error::Parse { field: "--file".into(), message: e.to_string() })?;
    let rows: Vec<Vec<String>> = reader
        .records()
        .map(|r| r.map(|rec| rec.iter().map(str::to_string).collect()).unwrap_or_default())
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallel.max(1))
        .build()
        .map_err(|e| Error::PreconditionViolation(format!("thread pool: {e}")))?;
    open_out(out, stdout, |w| {
        for (c, chunk) in rows.chunks(GRID_CHUNK).enumerate() {
            let base = c * GRID_CHUNK;
            let lines: Vec<String> = pool.install(|| {
                chunk.par_iter().enumerate().map(|(k, f)| grid_line(base + k + 1, f, numeric_check)).collect()
            });
            for l in lines {
                writeln!(w, "{l}").map_err(io_err)?;
            }
            w.flush().map_err(io_err)?;
        }
        Ok(())
    })
}
