mod load;
mod report;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use centerfocus::catalog;
use centerfocus::claims::{self, ClaimOptions, ClaimOutcome, CLAIMS};
use centerfocus::cyclicity::{cyclicity_bound, focus_jets, linear_preset, quadratic_preset, CyclicityConfig};
use centerfocus::field::ParamExpr;
use centerfocus::focus::{normal_form_focus, NORMALIZATION};
use centerfocus::grammar::parse;
use centerfocus::normalform::{numeric_normal_form, to_normal_form, NormalForm3};
use centerfocus::period::isochronicity_constants;
use centerfocus::polysys::{char_cubic, hopf_test, Backend, EquationTerm, HopfReport, HopfVerdict, SystemDef, SystemInstance, VectorField3};
use centerfocus::simulate::{
    cubic_coefficient, displacement, integrate, reversed, write_displacement_csv, write_plot_script,
    write_trajectory_csv, Real, Tolerances,
};
use centerfocus::{Error, Result};

use load::{Point, Precision};
use report::Showable;

#[derive(Parser)]
#[command(name = "centerfocus", version, about = "Center/focus analysis of Hopf points in 3D polynomial systems")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SystemArgs {
    /// Built-in system name (see `catalog`) or path to a JSON definition.
    #[arg(long)]
    system: String,
    /// Parameter values, e.g. `a=1,c=1,b=0,d=1`.
    #[arg(long, default_value = "")]
    params: String,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in systems.
    Catalog,
    /// Hopf test at an equilibrium.
    Hopf {
        #[command(flatten)]
        sys: SystemArgs,
        /// `E1`, `E2+`, ... on the four-wing system, or `u,v,w`.
        #[arg(long, default_value = "0,0,0")]
        point: String,
    },
    /// Bring a Hopf point to normal form; prints a system definition.
    Normalize {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value = "0,0,0")]
        point: String,
        /// JSON file: `{"linear": [[..],[..],[..]], "time_scale": ".."}` or a bare 3x3 matrix.
        #[arg(long)]
        transform: Option<PathBuf>,
    },
    /// Focus quantities of a system in normal form.
    Focus {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        order: usize,
        /// Truncate in the parameters listed by `--small` at this total degree.
        #[arg(long, requires = "small")]
        jet_degree: Option<usize>,
        /// Small parameters, each offset from its `--params` value.
        #[arg(long, requires = "jet_degree")]
        small: Option<String>,
        /// Exit with status 2 unless every quantity vanishes.
        #[arg(long)]
        require_center: bool,
    },
    /// Isochronicity constants of a center in normal form.
    Period {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        order: usize,
    },
    /// Lower bound on the number of limit cycles born at the center.
    Cyclicity {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Base value of d for the trace family.
        #[arg(long, default_value = "1")]
        d0: String,
        /// Focus quantities whose linear parts enter the rank (quadratic mode).
        #[arg(long, default_value_t = 9)]
        linear_quantities: usize,
        /// JSON configuration (custom mode).
        #[arg(long, required_if_eq("mode", "custom"))]
        config: Option<PathBuf>,
        /// Override the system named by the configuration.
        #[arg(long)]
        system: Option<String>,
    },
    /// Integrate a trajectory and write `t,u,v,w` CSV.
    Simulate {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        x0: String,
        #[arg(long)]
        tmax: f64,
        /// Relative tolerance; the absolute tolerance is 1/100 of it.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        backward: bool,
        /// Also write a matplotlib script next to the CSV.
        #[arg(long, requires = "out")]
        plot_script: bool,
        /// CSV destination; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduced first-return displacement on the section {v = 0, u > 0}.
    Displacement {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value = "0.1,0.05,0.025")]
        rho0_grid: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// `rho0,dbar` CSV destination.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an end-to-end check by id, or `all`.
    Verify {
        #[arg(long)]
        claim: String,
        /// Directory for files written by the checks.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Trace-perturbed axis family at k = 1, c = 0, d = d0.
    Teo4,
    /// Quadratic perturbations of the center.
    Teo5,
    Custom,
}

/// Usage errors exit with 1, domain failures with 2.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::SchemaError(_) | Error::Io(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Write to standard output, ignoring a closed pipe.
fn say(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

/// Report printed either as JSON or as indented text.
fn emit(json: bool, v: &Value) {
    if json {
        say(&format!("{}\n", serde_json::to_string_pretty(v).unwrap_or_default()));
    } else {
        say(&report::text(v));
    }
}

fn run(cli: Cli) -> Result<u8> {
    let precision = Precision::from_env()?;
    let json = cli.json;
    match cli.command {
        Command::Catalog => {
            let v: Vec<Value> = catalog::ENTRIES
                .iter()
                .map(|e| json!({"name": e.name, "summary": e.summary, "backend": load::backend_name(e.backend), "symmetry": e.symmetry}))
                .collect();
            if json {
                emit(true, &Value::Array(v));
            } else {
                for e in catalog::ENTRIES {
                    say(&format!("{:<22} {:<6} {}\n", e.name, load::backend_name(e.backend), e.summary));
                }
            }
            Ok(0)
        }
        Command::Hopf { sys, point } => hopf(json, precision, &sys, &point),
        Command::Normalize { sys, point, transform } => normalize(json, &sys, &point, transform),
        Command::Focus { sys, order, jet_degree, small, require_center } => {
            focus(json, precision, &sys, order, jet_degree.zip(small), require_center)
        }
        Command::Period { sys, order } => period(json, precision, &sys, order),
        Command::Cyclicity { mode, d0, linear_quantities, config, system } => {
            let mut cfg = match mode {
                Mode::Teo4 => linear_preset(&d0),
                Mode::Teo5 => quadratic_preset(linear_quantities),
                Mode::Custom => {
                    let path = config.ok_or_else(|| Error::InvalidArgument("custom mode needs --config".into()))?;
                    serde_json::from_str::<CyclicityConfig>(&std::fs::read_to_string(path)?)
                        .map_err(|e| Error::SchemaError(e.to_string()))?
                }
            };
            if let Some(s) = system {
                cfg.system = s;
            }
            let r = cyclicity_bound(&cfg)?;
            emit(json, &serde_json::to_value(&r).map_err(|e| Error::SchemaError(e.to_string()))?);
            Ok(0)
        }
        Command::Simulate { sys, x0, tmax, tol, backward, plot_script, out } => {
            let params = load::parse_assignments(&sys.params)?;
            let x0 = load::parse_floats(&x0)?;
            let x0: [f64; 3] = x0.try_into().map_err(|_| Error::InvalidArgument("--x0 needs three values".into()))?;
            let tol = Tolerances::new(tol, tol * 1e-2);
            match precision {
                Precision::Double => simulate(load::float_field(&sys.system, &params)?, x0, tmax, tol, backward, out.as_ref()),
                Precision::Extended => simulate(load::extended_field(&sys.system, &params)?, x0, tmax, tol, backward, out.as_ref()),
            }?;
            if let (true, Some(out)) = (plot_script, &out) {
                let name = out.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                write_plot_script(&out.with_extension("py"), &name, &sys.system)?;
            }
            Ok(0)
        }
        Command::Displacement { sys, rho0_grid, tol, out } => {
            let params = load::parse_assignments(&sys.params)?;
            let grid = load::parse_floats(&rho0_grid)?;
            let tol = Tolerances::new(tol, tol * 1e-2);
            let v = match precision {
                Precision::Double => displacement_report(load::float_field(&sys.system, &params)?, &grid, tol, out.as_ref()),
                Precision::Extended => displacement_report(load::extended_field(&sys.system, &params)?, &grid, tol, out.as_ref()),
            }?;
            emit(json, &v);
            Ok(0)
        }
        Command::Verify { claim, out_dir } => verify(json, &claim, out_dir),
    }
}

fn hopf_value<T: Showable>(r: &HopfReport<T>, names: &[String]) -> Value {
    let omega = r.omega.as_ref().map(|w| w.show(names)).unwrap_or_else(|| format!("sqrt({})", r.omega_squared.show(names)));
    json!({
        "is_hopf": r.is_hopf,
        "verdict": r.verdict,
        "eigenvalues": [format!("+-{omega} i"), r.lambda3.show(names)],
        "omega_squared": r.omega_squared.show(names),
        "lambda3": r.lambda3.show(names),
        "residual": r.residual.show(names),
    })
}

fn hopf(json: bool, precision: Precision, sys: &SystemArgs, point: &str) -> Result<u8> {
    let params = load::parse_assignments(&sys.params)?;
    let point = load::parse_point(point)?;
    let exact = match (&point, load::instance(&sys.system, &params)?) {
        (Point::Label(l), SystemInstance::Exact(f)) if l == "E1" => Some(f),
        (Point::Coords(_), SystemInstance::Exact(f)) if precision == Precision::Double => Some(f),
        _ => None,
    };
    let (v, verdict) = match exact {
        Some(f) => {
            let names = f.params.names().to_vec();
            let p = load::exact_point(&f, &point, &params)?;
            let r = hopf_test(&char_cubic(&f.jacobian_at(&p)), 0.0);
            (hopf_value(&r, &names), r.verdict)
        }
        None => {
            let f = load::float_field(&sys.system, &params)?;
            let p = load::float_point(&point, &params)?;
            let r = hopf_test(&char_cubic(&f.jacobian_at(&p)), 1e-9);
            let mut v = hopf_value(&r, &[]);
            v["point"] = json!(p);
            (v, r.verdict)
        }
    };
    emit(json, &v);
    Ok(if verdict == HopfVerdict::NotHopf { 2 } else { 0 })
}

fn read_transform(path: &PathBuf) -> Result<([[String; 3]; 3], String)> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path)?).map_err(|e| Error::SchemaError(e.to_string()))?;
    let (m, ts) = match &v {
        Value::Object(o) => (o.get("linear").cloned().unwrap_or(Value::Null), o.get("time_scale").cloned()),
        other => (other.clone(), None),
    };
    let cell = |x: &Value| match x {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(Error::SchemaError("transform entries must be strings or numbers".into())),
    };
    let rows = m.as_array().filter(|r| r.len() == 3).ok_or_else(|| Error::SchemaError("transform must be a 3x3 matrix".into()))?;
    let mut out: [[String; 3]; 3] = Default::default();
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == 3).ok_or_else(|| Error::SchemaError("transform must be a 3x3 matrix".into()))?;
        for (j, x) in row.iter().enumerate() {
            out[i][j] = cell(x)?;
        }
    }
    let ts = ts.as_ref().map(cell).transpose()?.unwrap_or_else(|| "1".into());
    Ok((out, ts))
}

/// A normal form as a loadable system definition.
fn as_definition<T: Showable>(f: &VectorField3<T>, backend: Backend) -> SystemDef {
    let names = f.params.names().to_vec();
    SystemDef {
        backend,
        params: names.iter().map(|n| (n.clone(), None)).collect(),
        state_vars: ["u".into(), "v".into(), "w".into()],
        equations: f
            .comps
            .iter()
            .map(|p| p.terms().map(|(e, c)| EquationTerm { exp: *e, coeff: c.show(&names) }).collect())
            .collect(),
    }
}

fn normal_form_value<T: Showable>(nf: &NormalForm3<T>, backend: Backend) -> Result<Value> {
    let names = nf.field.params.names().to_vec();
    Ok(json!({
        "lambda": nf.lambda.show(&names),
        "orientation": nf.orientation,
        "system": serde_json::to_value(as_definition(&nf.field, backend)).map_err(|e| Error::SchemaError(e.to_string()))?,
    }))
}

fn normalize(json: bool, sys: &SystemArgs, point: &str, transform: Option<PathBuf>) -> Result<u8> {
    let params = load::parse_assignments(&sys.params)?;
    let point = load::parse_point(point)?;
    let v = match (load::instance(&sys.system, &params)?, transform) {
        (SystemInstance::Exact(f), Some(path)) => {
            let (m, ts) = read_transform(&path)?;
            let values = vec![None; f.params.len()];
            let e = |s: &str| parse(s)?.to_exact(&f.params, &values);
            let cells: Vec<ParamExpr> = m.iter().flatten().map(|s| e(s)).collect::<Result<_>>()?;
            let linear: [[ParamExpr; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| cells[3 * i + j].clone()));
            let p = load::exact_point(&f, &point, &params)?;
            normal_form_value(&to_normal_form(&f, &p, &linear, &e(&ts)?)?, Backend::Exact)?
        }
        (_, Some(_)) => return Err(Error::InvalidArgument("--transform needs an exact system".into())),
        (_, None) => {
            let f = load::float_field(&sys.system, &params)?;
            let p = load::float_point(&point, &params)?;
            normal_form_value(&numeric_normal_form(&f, &p)?, Backend::Float)?
        }
    };
    emit(json, &v);
    Ok(0)
}

/// Report and the first nonvanishing quantity as `(order, value)`.
fn focus_value<T: Showable>(nf: &NormalForm3<T>, order: usize) -> Result<(Value, Option<(usize, String)>)> {
    let names = nf.field.params.names().to_vec();
    let r = normal_form_focus(nf, order)?;
    let qs: Vec<String> = r.quantities.iter().map(|q| q.show(&names)).collect();
    let first = r.quantities.iter().position(|q| !q.is_zero()).map(|i| (i + 1, qs[i].clone()));
    Ok((json!({"quantities": qs, "orientation": r.orientation, "normalization": {"convention": NORMALIZATION}}), first))
}

fn focus(
    json: bool,
    precision: Precision,
    sys: &SystemArgs,
    order: usize,
    jet: Option<(usize, String)>,
    require_center: bool,
) -> Result<u8> {
    let params = load::parse_assignments(&sys.params)?;
    let (v, first) = if let Some((degree, small)) = jet {
        let config = CyclicityConfig {
            system: sys.system.clone(),
            base: params,
            small: small.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
            trace: None,
            linear_quantities: order,
            higher: None,
        };
        let (names, qs) = focus_jets(&config, order, degree)?;
        let shown: Vec<String> = qs.iter().map(|q| q.poly.display(&names).to_string()).collect();
        let first = qs.iter().position(|q| !q.poly.is_zero()).map(|i| (i + 1, shown[i].clone()));
        let v = json!({"quantities": shown, "small": names, "jet_degree": degree, "normalization": {"convention": NORMALIZATION}});
        (v, first)
    } else {
        match (load::instance(&sys.system, &params)?, precision) {
            (SystemInstance::Exact(f), _) => focus_value(&NormalForm3::from_field(f)?, order)?,
            (SystemInstance::Float(f), Precision::Double) => focus_value(&NormalForm3::from_field(f)?, order)?,
            (SystemInstance::Float(_), Precision::Extended) => {
                focus_value(&NormalForm3::from_field(load::extended_field(&sys.system, &params)?)?, order)?
            }
        }
    };
    emit(json, &v);
    match first {
        Some((order, value)) if require_center => Err(Error::FocusObstruction { order, value }),
        _ => Ok(0),
    }
}

fn period_value<T: Showable>(nf: &NormalForm3<T>, order: usize) -> Result<Value> {
    let names = nf.field.params.names().to_vec();
    let e = isochronicity_constants(nf, order)?;
    let show = |v: &[T]| v.iter().map(|x| x.show(&names)).collect::<Vec<_>>();
    Ok(json!({"constants": show(&e.constants), "obstructions": show(&e.odd), "isochronous": e.is_isochronous()}))
}

fn period(json: bool, precision: Precision, sys: &SystemArgs, order: usize) -> Result<u8> {
    let params = load::parse_assignments(&sys.params)?;
    let v = match (load::instance(&sys.system, &params)?, precision) {
        (SystemInstance::Exact(f), _) => period_value(&NormalForm3::from_field(f)?, order)?,
        (SystemInstance::Float(f), Precision::Double) => period_value(&NormalForm3::from_field(f)?, order)?,
        (SystemInstance::Float(_), Precision::Extended) => {
            period_value(&NormalForm3::from_field(load::extended_field(&sys.system, &params)?)?, order)?
        }
    };
    emit(json, &v);
    Ok(0)
}

fn simulate<T: Real>(
    f: VectorField3<T>,
    x0: [f64; 3],
    tmax: f64,
    tol: Tolerances,
    backward: bool,
    out: Option<&PathBuf>,
) -> Result<()> {
    let g = if backward { reversed(&f) } else { f };
    let x0 = x0.map(centerfocus::simulate::real::<T>);
    let tr = integrate(&g, x0, (T::zero(), centerfocus::simulate::real(tmax)), tol)?;
    match out {
        Some(path) => write_trajectory_csv(&tr, BufWriter::new(File::create(path)?)),
        None => write_trajectory_csv(&tr, std::io::stdout().lock()),
    }
}

fn displacement_report<T: Real + Showable>(f: VectorField3<T>, grid: &[f64], tol: Tolerances, out: Option<&PathBuf>) -> Result<Value> {
    let nf = NormalForm3::from_field(f)?;
    let l1 = normal_form_focus(&nf, 1)?.quantities[0];
    let mut samples = Vec::new();
    for &rho in grid {
        samples.push(displacement(&nf, centerfocus::simulate::real::<T>(rho), tol)?);
    }
    if let Some(path) = out {
        let mut w = BufWriter::new(File::create(path)?);
        write_displacement_csv(&samples, &mut w)?;
        w.flush()?;
    }
    let rows: Vec<Value> = samples
        .iter()
        .map(|s| {
            let r = s.rho0.to_f64().unwrap_or(f64::NAN);
            let d = s.value.to_f64().unwrap_or(f64::NAN);
            json!({"rho0": r, "dbar": d, "dbar_over_rho0_cubed": d / r.powi(3), "omega": s.omega.to_f64(), "crossings": s.crossings})
        })
        .collect();
    let richardson = samples.windows(2).last().map(|w| cubic_coefficient(&w[0], &w[1]).to_f64());
    let pi_l1 = (l1 * T::PI()).to_f64();
    Ok(json!({"samples": rows, "cubic_estimate": richardson, "pi_l1": pi_l1, "l1": l1.show(&[])}))
}

fn outcome_value(o: &ClaimOutcome) -> Value {
    let mut v = serde_json::to_value(o).unwrap_or(Value::Null);
    v["seconds"] = json!(o.elapsed.as_secs_f64());
    v
}

fn verify(json: bool, claim: &str, out_dir: Option<PathBuf>) -> Result<u8> {
    let mut opts = ClaimOptions::default();
    if let Some(d) = out_dir {
        opts.out_dir = d;
    }
    let ids: Vec<&str> = if claim.eq_ignore_ascii_case("all") {
        CLAIMS.iter().map(|c| c.id).collect()
    } else {
        vec![claims::resolve(claim).ok_or_else(|| Error::InvalidArgument(format!("unknown claim {claim}")))?.id]
    };
    // Claims are independent and deterministic; run them side by side.
    let outcomes: Vec<Result<ClaimOutcome>> = std::thread::scope(|s| {
        let handles: Vec<_> = ids.iter().map(|id| s.spawn(|| claims::run_claim(id, &opts))).collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err(Error::NonConvergence("claim panicked".into())))).collect()
    });
    let mut failed = false;
    let mut values = Vec::new();
    for (id, o) in ids.iter().zip(outcomes) {
        match o {
            Ok(o) => {
                failed |= !o.passed;
                if json {
                    values.push(outcome_value(&o));
                } else {
                    let status = if o.passed { "PASS" } else { "FAIL" };
                    say(&format!("{status} AC{} {} ({:.1} s)\n", o.criterion, o.id, o.elapsed.as_secs_f64()));
                    for c in &o.checks {
                        say(&format!("    [{}] {}: {}\n", if c.passed { "ok" } else { "FAILED" }, c.name, c.detail));
                    }
                }
            }
            Err(e) => {
                failed = true;
                if json {
                    values.push(json!({"id": id, "passed": false, "error": e.to_string()}));
                } else {
                    say(&format!("FAIL {id}: error: {e}\n"));
                }
            }
        }
    }
    if json {
        emit(true, &if values.len() == 1 { values.remove(0) } else { Value::Array(values) });
    }
    Ok(if failed { 2 } else { 0 })
}
