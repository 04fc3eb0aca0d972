mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use orthocover::covering::{
    coverage_check, density, family_member, minimize_noncongruent_with, optimize_family_u37,
    solve_congruent, DensityResult, EdgeId,
};
use orthocover::optimize::{GOLDEN_TOL, GRID_SAMPLES};
use orthocover::orthoscheme::{classify_params, closed_form_distances, embed, EdgeDistances, TruncatedOrthoscheme, Vertex};
use orthocover::planar::{feasible_path, limit_density, limit_scan, stated_path, ScanReport};
use orthocover::tables::{table_with, TableKind};
use orthocover::volume::{volume_report, VolumeReport};
use orthocover::lorentz::Homogeneous;
use orthocover::Error;

use output::{csv_string, emit, json_string, sig};

const DIGITS: usize = 6;

#[derive(Parser)]
#[command(name = "orthocover", version, about = "Hyperball coverings of truncated Coxeter orthoschemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Golden-section tolerance in the edge parameter.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone, Copy)]
struct Params {
    #[arg(long)]
    u: f64,
    #[arg(long)]
    v: f64,
    #[arg(long)]
    w: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathKind {
    /// a = 1 + 10^-k, b = 10^k
    Stated,
    /// a = 1 + 10^-3k, b = 10^k
    Feasible,
}

#[derive(Subcommand)]
enum Command {
    /// Realized vertices, closed-form distances and volumes of {u,v,w}.
    Geometry(Params),
    /// Covering density; minimized over the edge unless --t is given.
    Density {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value = "A1A2")]
        edge: EdgeId,
        /// Contact parameter on the edge, in [0, 1].
        #[arg(long)]
        t: Option<f64>,
    },
    /// One of the minimal-density tables: qa2, a1a2 or congruent.
    Table {
        #[arg(long, default_value = "qa2")]
        which: TableKind,
    },
    /// Equal-height covering.
    Congruent {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value = "A1A2")]
        edge: EdgeId,
    },
    /// Density curve and optimum of the {u,3,7} family.
    Family {
        #[arg(long, default_value_t = 6.05)]
        u_lo: f64,
        #[arg(long, default_value_t = 7.0)]
        u_hi: f64,
        /// Points of the printed curve.
        #[arg(long, default_value_t = 41)]
        samples: usize,
    },
    /// Planar hypercycle densities along a path toward a = 1, b = infinity.
    PlanarScan {
        #[arg(long, value_enum, default_value_t = PathKind::Feasible)]
        path: PathKind,
        #[arg(long, default_value_t = 1)]
        k_min: i32,
        #[arg(long, default_value_t = 4)]
        k_max: i32,
    },
}

enum Failure {
    Lib(Error),
    Infeasible(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Inadmissible(_) | Error::InvalidArgument(_) | Error::NoIntersection { .. }) => 2,
            Failure::Lib(Error::NoFeasiblePoint | Error::NoRoot | Error::NotACovering(_)) | Failure::Infeasible(_) => 3,
            Failure::Lib(_) | Failure::Io(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(Error::NoFeasiblePoint) => {
                "infeasible: no contact parameter on this edge yields a covering of all six edges".into()
            }
            Failure::Lib(Error::NoRoot) => {
                "infeasible: the two heights are never equal along this edge".into()
            }
            Failure::Lib(Error::NoIntersection { a, b }) => {
                format!("inadmissible: line AB misses the disk for a = {a}, b = {b} (needs 1/a^2 + 1/b^2 > 1)")
            }
            Failure::Lib(e) => e.to_string(),
            Failure::Infeasible(s) | Failure::Io(s) => s.clone(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("orthocover: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let tol = match cli.tol {
        Some(t) if !(t > 0.0 && t.is_finite()) => {
            return Err(Error::InvalidArgument(format!("--tol must be a positive real, got {t}")).into())
        }
        Some(t) => t,
        None => GOLDEN_TOL,
    };
    let (text, infeasible) = match &cli.command {
        Command::Geometry(p) => (geometry(cli.format, p)?, None),
        Command::Density { params, edge, t } => {
            let r = run_density(params, *edge, *t, tol)?;
            let bad = (!r.feasible).then(|| infeasible_message(&r));
            (density_output(cli.format, std::slice::from_ref(&r))?, bad)
        }
        Command::Table { which } => {
            let rows = table_with(*which, GRID_SAMPLES, tol).into_iter().collect::<Result<Vec<_>, _>>()?;
            let bad = rows.iter().find(|r| !r.feasible).map(infeasible_message);
            (density_output(cli.format, &rows)?, bad)
        }
        Command::Congruent { params, edge } => {
            let o = orthoscheme(params)?;
            let r = solve_congruent(&o, *edge)?;
            let bad = (!r.feasible).then(|| infeasible_message(&r));
            (density_output(cli.format, std::slice::from_ref(&r))?, bad)
        }
        Command::Family { u_lo, u_hi, samples } => (family(cli.format, *u_lo, *u_hi, *samples)?, None),
        Command::PlanarScan { path, k_min, k_max } => {
            if k_min > k_max {
                return Err(Error::InvalidArgument(format!("empty k range {k_min}..={k_max}")).into());
            }
            let pts = match path {
                PathKind::Stated => stated_path(*k_min..=*k_max),
                PathKind::Feasible => feasible_path(*k_min..=*k_max),
            };
            (planar(cli.format, &limit_scan(&pts)?)?, None)
        }
    };
    emit(&text, cli.out.as_deref()).map_err(|e| Failure::Io(format!("cannot write output: {e}")))?;
    match infeasible {
        Some(msg) => Err(Failure::Infeasible(msg)),
        None => Ok(()),
    }
}

fn infeasible_message(r: &DensityResult) -> String {
    let uncovered: Vec<String> = r
        .per_edge
        .iter()
        .filter_map(|e| e.witness.map(|w| format!("{} on [{}, {}]", e.edge, sig(w.lo, DIGITS), sig(w.hi, DIGITS))))
        .collect();
    format!("infeasible covering at {} t = {}: uncovered {}", r.contact_edge, sig(r.t, DIGITS), uncovered.join(", "))
}

fn orthoscheme(p: &Params) -> Result<TruncatedOrthoscheme, Error> {
    embed(&classify_params(p.u, p.v, p.w)?)
}

fn run_density(p: &Params, edge: EdgeId, t: Option<f64>, tol: f64) -> Result<DensityResult, Error> {
    let o = orthoscheme(p)?;
    match t {
        Some(t) => density(&o, &coverage_check(&o, edge, t)?),
        None => minimize_noncongruent_with(&o, edge, GRID_SAMPLES, tol),
    }
}

fn text_err<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Io(format!("cannot format output: {e}"))
}

#[derive(Serialize)]
struct GeometryReport<'a> {
    orthoscheme: &'a TruncatedOrthoscheme,
    closed_form_distances: EdgeDistances,
    volumes: VolumeReport,
}

fn geometry(format: Format, p: &Params) -> Result<String, Failure> {
    let o = orthoscheme(p)?;
    match format {
        Format::Json => {
            let report = GeometryReport {
                orthoscheme: &o,
                closed_form_distances: closed_form_distances(&o.gram)?,
                volumes: volume_report(&o)?,
            };
            json_string(&report, DIGITS).map_err(text_err)
        }
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = Vertex::ALL
                .iter()
                .map(|&v| point_row(&v.to_string(), &o.vertex(v).coords()))
                .collect();
            rows.push(point_row("A0", &o.a0.coords()));
            rows.push(point_row("A3", &o.a3.coords()));
            csv_string(&["point", "x0", "x1", "x2", "x3"], &rows).map_err(text_err)
        }
    }
}

fn point_row(name: &str, c: &[f64; 4]) -> Vec<String> {
    std::iter::once(name.to_string()).chain(c.iter().map(|&x| sig(x, DIGITS))).collect()
}

fn density_output(format: Format, rows: &[DensityResult]) -> Result<String, Failure> {
    match format {
        Format::Json if rows.len() == 1 => json_string(&rows[0], DIGITS).map_err(text_err),
        Format::Json => json_string(&rows, DIGITS).map_err(text_err),
        Format::Csv => {
            let header = [
                "type", "u", "v", "w", "contact_edge", "t", "delta", "h1", "h2", "vol_H1", "vol_H2", "vol_F",
                "feasible",
            ];
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let p = &r.params;
                    vec![
                        p.label(),
                        sig(p.u, DIGITS),
                        sig(p.v, DIGITS),
                        sig(p.w, DIGITS),
                        r.contact_edge.to_string(),
                        sig(r.t, DIGITS),
                        sig(r.density, DIGITS),
                        sig(r.h1, DIGITS),
                        sig(r.h2, DIGITS),
                        sig(r.volumes.h1, DIGITS),
                        sig(r.volumes.h2, DIGITS),
                        sig(r.volumes.f, DIGITS),
                        r.feasible.to_string(),
                    ]
                })
                .collect();
            csv_string(&header, &body).map_err(text_err)
        }
    }
}

#[derive(Serialize)]
struct CurvePoint {
    u: f64,
    t: f64,
    h1: f64,
    h2: f64,
    density: f64,
    feasible: bool,
}

#[derive(Serialize)]
struct FamilyReport {
    curve: Vec<CurvePoint>,
    u: f64,
    optimum: DensityResult,
    extendable: bool,
}

fn family(format: Format, u_lo: f64, u_hi: f64, samples: usize) -> Result<String, Failure> {
    let best = optimize_family_u37(u_lo, u_hi)?;
    let samples = samples.max(2);
    let us: Vec<f64> =
        (0..samples).map(|i| u_lo + (u_hi - u_lo) * i as f64 / (samples - 1) as f64).collect();
    let curve = std::thread::scope(|s| {
        let handles: Vec<_> = us.iter().map(|&u| s.spawn(move || (u, family_member(u)))).collect();
        handles
            .into_iter()
            .map(|h| {
                let (u, r) = h.join().expect("family worker panicked");
                r.map(|r| CurvePoint { u, t: r.t, h1: r.h1, h2: r.h2, density: r.density, feasible: r.feasible })
            })
            .collect::<Result<Vec<_>, _>>()
    })?;
    let extendable = best.result.params.series.is_extendable();
    match format {
        Format::Json => {
            let report = FamilyReport { curve, u: best.u, optimum: best.result, extendable };
            json_string(&report, DIGITS).map_err(text_err)
        }
        Format::Csv => {
            let body: Vec<Vec<String>> = curve
                .iter()
                .map(|c| {
                    vec![sig(c.u, DIGITS), sig(c.t, DIGITS), sig(c.h1, DIGITS), sig(c.h2, DIGITS), sig(c.density, DIGITS), c.feasible.to_string()]
                })
                .collect();
            let mut text = csv_string(&["u", "t", "h1", "h2", "delta", "feasible"], &body).map_err(text_err)?;
            let r = &best.result;
            text.push_str(&format!(
                "# optimum u={} t={} delta={} h1={} h2={} feasible={}\n# {}\n",
                sig(best.u, DIGITS),
                sig(r.t, DIGITS),
                sig(r.density, DIGITS),
                sig(r.h1, DIGITS),
                sig(r.h2, DIGITS),
                r.feasible,
                if extendable { "extendable to a tiling" } else { "non-extendable tiling: local covering only" },
            ));
            Ok(text)
        }
    }
}

fn planar(format: Format, report: &ScanReport) -> Result<String, Failure> {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                limit: f64,
                #[serde(flatten)]
                report: &'a ScanReport,
            }
            json_string(&Out { limit: limit_density(), report }, DIGITS).map_err(text_err)
        }
        Format::Csv => {
            let body: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    let mut row = vec![r.a.to_string(), r.b.to_string()];
                    row.extend([r.h1, r.h2, r.pentagon_area, r.delta, r.gap_to_limit].iter().map(|&x| sig(x, DIGITS)));
                    row
                })
                .collect();
            csv_string(&["a", "b", "h1", "h2", "pentagon_area", "delta", "gap_to_limit"], &body).map_err(text_err)
        }
    }
}
