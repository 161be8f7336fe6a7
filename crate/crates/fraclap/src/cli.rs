//! Command-line interface.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use fraclap_core::discrete::{
    apply_fraclap_discrete, assemble_1d, assemble_2d, matrix_fractional_power,
    modal_diffusion_solve, sym_eigendecompose, Assembly, EigenDecomposition, Matrix,
};
use fraclap_core::domain::{BoundaryData, Domain, QuadratureParams, TestFunction};
use fraclap_core::fraclap::{Definition, FracLapRequest};
use fraclap_core::riesz::PotentialRequest;
use fraclap_core::special::{ConstantMode, FractionalOrder};
use fraclap_core::Point;

use crate::error::{CliError, CliResult};
use crate::{io, manifest, parallel, parse, validate};

#[derive(Debug, Parser)]
#[command(
    name = "fraclap",
    version,
    about = "Fractional Laplacian evaluation and cross-checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Truncated Riesz potential of a test function.
    Potential(PotentialArgs),
    /// Fractional Laplacian of a test function under one or more definitions.
    Fraclap(FraclapArgs),
    /// Run the invariant suites.
    Validate(ValidateArgs),
    /// Fractional power of a symmetric positive definite matrix.
    Matpow(MatpowArgs),
    /// Modal solution of u' = -K^{s/2} u.
    Diffuse(DiffuseArgs),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Dimension, 1 or 2.
    #[arg(long)]
    pub d: usize,
    /// `a,b` or `a1,b1,a2,b2`.
    #[arg(long, allow_hyphen_values = true)]
    pub domain: String,
    /// Grid nodes per direction.
    #[arg(long, default_value_t = 11)]
    pub nodes: usize,
    /// const:c, affine:g,c, affine:gx,gy,c, quad, gauss:centre,width, sine:k
    #[arg(long, allow_hyphen_values = true)]
    pub func: String,
    /// `x1,x2,…` (1D) or `x1,y1;x2,y2;…` (2D).
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "all_interior",
        conflicts_with = "all_interior"
    )]
    pub points: Option<String>,
    /// Evaluate at every grid node inside the boundary margin.
    #[arg(long)]
    pub all_interior: bool,
    /// half (alias paper) or standard.
    #[arg(long, default_value = "half", value_parser = parse_mode)]
    pub constant: ConstantMode,
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long)]
    pub ratio: Option<f64>,
    #[arg(long)]
    pub gauss: Option<usize>,
    #[arg(long)]
    pub subdivisions: Option<usize>,
    /// CSV output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: f64,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct FraclapArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub s: f64,
    /// restated, hyper, new, augmented or augmented-asprinted; repeatable.
    #[arg(long = "def", value_parser = parse_definition)]
    pub definitions: Vec<Definition>,
    /// Exact Dirichlet and Neumann traces from --func.
    #[arg(long, conflicts_with_all = ["dirichlet", "neumann"])]
    pub bc_from_func: bool,
    /// Per side `;`-separated: a number, func:SPEC, or - for none.
    #[arg(long, allow_hyphen_values = true)]
    pub dirichlet: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub neumann: Option<String>,
    /// Minimum distance of evaluation points from the boundary; two grid spacings by default.
    #[arg(long)]
    pub margin: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// special, riesz, fraclap, greens, discrete or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Refinement steps in the convergence checks.
    #[arg(long, default_value_t = 3)]
    pub refinements: usize,
    /// Also write the JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatrixSource {
    /// Square symmetric matrix as CSV.
    #[arg(
        long,
        conflicts_with = "assemble",
        required_unless_present = "assemble"
    )]
    pub matrix: Option<PathBuf>,
    /// `1d:N,L` or `2d:NX,NY,LX,LY` (interior nodes, Dirichlet).
    #[arg(long)]
    pub assemble: Option<String>,
    /// Lumped linear finite elements instead of finite differences.
    #[arg(long, requires = "assemble")]
    pub fem: bool,
}

#[derive(Debug, Args)]
pub struct MatpowArgs {
    #[command(flatten)]
    pub source: MatrixSource,
    /// Order: the output is K^{s/2}.
    #[arg(long, allow_hyphen_values = true)]
    pub s: f64,
    /// Vector file; output K^{s/2} p instead of the matrix.
    #[arg(long, conflicts_with = "check")]
    pub apply: Option<PathBuf>,
    /// semigroup or spectral; emits a JSON report.
    #[arg(long, value_parser = ["semigroup", "spectral"])]
    pub check: Option<String>,
    /// Eigenvalue report `index,lambda,lambda_pow`.
    #[arg(long)]
    pub eigen: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiffuseArgs {
    #[command(flatten)]
    pub source: MatrixSource,
    #[arg(long, allow_hyphen_values = true)]
    pub s: f64,
    /// sine:k, point:j (0-based node) or file:PATH.
    #[arg(long)]
    pub ic: String,
    #[arg(long, allow_hyphen_values = true)]
    pub times: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_mode(text: &str) -> Result<ConstantMode, String> {
    match text {
        "half" | "paper" => Ok(ConstantMode::HalfOrder),
        "standard" => Ok(ConstantMode::StandardRiesz),
        _ => Err(format!("expected half, paper or standard, got {text:?}")),
    }
}

fn parse_definition(text: &str) -> Result<Definition, String> {
    Definition::from_name(text).ok_or_else(|| {
        let names: Vec<&str> = Definition::ALL.iter().map(|d| d.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

/// Parses `args` and runs; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {}: {e}", e.name());
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Potential(a) => potential(a),
        Command::Fraclap(a) => fraclap(a),
        Command::Validate(a) => validate_cmd(a),
        Command::Matpow(a) => matpow(a),
        Command::Diffuse(a) => diffuse(a),
    }
}

struct Setup {
    domain: Domain,
    phi: TestFunction,
    params: QuadratureParams,
}

impl GridArgs {
    fn setup(&self) -> CliResult<Setup> {
        if !(1..=2).contains(&self.d) {
            return Err(CliError::usage(format!(
                "--d must be 1 or 2, got {}",
                self.d
            )));
        }
        let domain = parse::domain(&self.domain, self.d, self.nodes)?;
        let phi = parse::function(&self.func, self.d)?;
        let mut params = QuadratureParams::default_for(self.d);
        params.levels = self.levels.unwrap_or(params.levels);
        params.ratio = self.ratio.unwrap_or(params.ratio);
        params.gauss_order = self.gauss.unwrap_or(params.gauss_order);
        params.subdivisions = self.subdivisions.unwrap_or(params.subdivisions);
        params.validate()?;
        Ok(Setup {
            domain,
            phi,
            params,
        })
    }

    fn points(&self, domain: &Domain, margin: f64) -> CliResult<Vec<Point>> {
        match &self.points {
            Some(text) => parse::points(text, self.d),
            None => Ok(domain.interior_nodes(margin)),
        }
    }

    fn coordinate_header(&self) -> Vec<String> {
        if self.d == 1 {
            vec!["x".into()]
        } else {
            vec!["x".into(), "y".into()]
        }
    }

    fn coordinates(&self, p: Point) -> Vec<String> {
        if self.d == 1 {
            vec![io::number(p.x)]
        } else {
            vec![io::number(p.x), io::number(p.y)]
        }
    }

    fn manifest(&self, setup: &Setup, points: &[Point]) -> Value {
        json!({
            "d": self.d,
            "domain": self.domain,
            "nodes": self.nodes,
            "func": self.func,
            "points": points.iter().map(|p| if self.d == 1 { json!([p.x]) } else { json!([p.x, p.y]) }).collect::<Vec<_>>(),
            "constant_mode": manifest::constant_mode(self.constant),
            "quadrature": manifest::quadrature(&setup.params),
        })
    }
}

fn potential(a: PotentialArgs) -> CliResult<i32> {
    let grid = &a.grid;
    let setup = grid.setup()?;
    // Surface points are valid for the potential; only the interior is excluded.
    let points = grid.points(&setup.domain, setup.domain.spacing())?;
    let values = parallel::map(&points, |&x| {
        PotentialRequest::new(&setup.domain, &setup.phi, a.sigma)
            .with_mode(grid.constant)
            .with_params(setup.params)
            .point(x)
    })?;
    let mut header = grid.coordinate_header();
    header.push("value".into());
    let mut rows = Vec::with_capacity(points.len());
    for (p, v) in points.iter().zip(values) {
        let mut row = grid.coordinates(*p);
        row.push(io::number(v?));
        rows.push(row);
    }
    let mut params = grid.manifest(&setup, &points);
    params["sigma"] = json!(a.sigma);
    manifest::emit(grid.out.as_deref(), &manifest::build("potential", params))?;
    io::write_table(grid.out.as_deref(), &header, &rows)?;
    Ok(0)
}

/// `|a - b| / max(1, |a|, |b|)`.
pub fn relative_difference(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

fn fraclap(a: FraclapArgs) -> CliResult<i32> {
    let grid = &a.grid;
    let setup = grid.setup()?;
    let s = FractionalOrder::new(a.s)?;
    let definitions = if a.definitions.is_empty() {
        vec![Definition::default()]
    } else {
        a.definitions.clone()
    };
    let boundary = if a.bc_from_func {
        Some(BoundaryData::from_function(&setup.domain, &setup.phi)?)
    } else if a.dirichlet.is_some() || a.neumann.is_some() {
        Some(parse::boundary(
            &setup.domain,
            a.dirichlet.as_deref(),
            a.neumann.as_deref(),
        )?)
    } else {
        None
    };
    if boundary.is_none() && definitions.iter().any(|d| d.needs_boundary()) {
        return Err(fraclap_core::Error::MissingBoundaryData(
            "augmented definitions need --bc-from-func or --dirichlet/--neumann",
        )
        .into());
    }
    let margin = a.margin.unwrap_or_else(|| setup.domain.default_margin());
    let points = grid.points(&setup.domain, margin)?;
    let values = parallel::map(&points, |&x| {
        let mut req = FracLapRequest::new(&setup.domain, &setup.phi, s)
            .with_mode(grid.constant)
            .with_params(setup.params)
            .with_margin(margin);
        if let Some(b) = &boundary {
            req = req.with_boundary(b);
        }
        definitions
            .iter()
            .map(|&d| req.evaluate_as(d, x))
            .collect::<Vec<_>>()
    })?;

    let mut header = grid.coordinate_header();
    let pairs: Vec<(usize, usize)> = (0..definitions.len())
        .flat_map(|i| (i + 1..definitions.len()).map(move |j| (i, j)))
        .collect();
    if definitions.len() == 1 {
        header.extend(["value".to_string(), "definition".to_string()]);
    } else {
        header.extend(definitions.iter().map(|d| d.name().to_string()));
        header.extend(pairs.iter().map(|&(i, j)| {
            format!(
                "reldiff_{}_{}",
                definitions[i].name(),
                definitions[j].name()
            )
        }));
    }
    let mut rows = Vec::with_capacity(points.len());
    for (p, results) in points.iter().zip(values) {
        let results = results.into_iter().collect::<Result<Vec<f64>, _>>()?;
        let mut row = grid.coordinates(*p);
        row.extend(results.iter().map(|&v| io::number(v)));
        if definitions.len() == 1 {
            row.push(definitions[0].name().to_string());
        } else {
            row.extend(
                pairs
                    .iter()
                    .map(|&(i, j)| io::number(relative_difference(results[i], results[j]))),
            );
        }
        rows.push(row);
    }

    let mut params = grid.manifest(&setup, &points);
    params["s"] = json!(a.s);
    params["definitions"] = json!(definitions.iter().map(|d| d.name()).collect::<Vec<_>>());
    params["margin"] = json!(margin);
    params["boundary"] = json!(if a.bc_from_func {
        json!("from-func")
    } else {
        json!({ "dirichlet": a.dirichlet, "neumann": a.neumann })
    });
    manifest::emit(grid.out.as_deref(), &manifest::build("fraclap", params))?;
    io::write_table(grid.out.as_deref(), &header, &rows)?;
    Ok(0)
}

fn validate_cmd(a: ValidateArgs) -> CliResult<i32> {
    let checks = validate::run(&a.suite, a.refinements)?;
    let report = json!({
        "tool": "fraclap",
        "version": env!("CARGO_PKG_VERSION"),
        "suite": a.suite,
        "refinements": a.refinements,
        "notes": manifest::NOTES,
        "checks": checks,
    });
    let mut stdout = std::io::stdout().lock();
    write!(stdout, "{}", validate::table(&checks))?;
    writeln!(stdout, "{}", serde_json::to_string(&report)?)?;
    if let Some(path) = &a.report {
        std::fs::write(path, serde_json::to_string_pretty(&report)? + "\n")?;
    }
    Ok(if checks.iter().all(|c| c.pass) { 0 } else { 1 })
}

/// Assembly spec plus its geometry, kept for closed-form checks.
struct Source {
    matrix: Matrix,
    grid: Option<AssembledGrid>,
    description: Value,
}

#[derive(Clone, Copy)]
enum AssembledGrid {
    Line {
        n: usize,
        length: f64,
    },
    Plane {
        nx: usize,
        ny: usize,
        lx: f64,
        ly: f64,
    },
}

impl AssembledGrid {
    /// Interior node coordinates in matrix order.
    fn nodes(self) -> Vec<Point> {
        match self {
            AssembledGrid::Line { n, length } => {
                let h = length / (n + 1) as f64;
                (1..=n).map(|i| Point::on_line(i as f64 * h)).collect()
            }
            AssembledGrid::Plane { nx, ny, lx, ly } => {
                let (hx, hy) = (lx / (nx + 1) as f64, ly / (ny + 1) as f64);
                (1..=ny)
                    .flat_map(|j| (1..=nx).map(move |i| Point::new(i as f64 * hx, j as f64 * hy)))
                    .collect()
            }
        }
    }

    /// Closed-form Dirichlet eigenvalues of the difference stencil, ascending.
    fn eigenvalues(self) -> Vec<f64> {
        let line = |n: usize, l: f64| -> Vec<f64> {
            let h = l / (n + 1) as f64;
            (1..=n)
                .map(|k| {
                    4.0 / (h * h)
                        * (k as f64 * std::f64::consts::PI * h / (2.0 * l))
                            .sin()
                            .powi(2)
                })
                .collect()
        };
        match self {
            AssembledGrid::Line { n, length } => line(n, length),
            AssembledGrid::Plane { nx, ny, lx, ly } => {
                let (a, b) = (line(nx, lx), line(ny, ly));
                let mut all: Vec<f64> = b
                    .iter()
                    .flat_map(|y| a.iter().map(move |x| x + y))
                    .collect();
                all.sort_by(f64::total_cmp);
                all
            }
        }
    }
}

impl MatrixSource {
    fn load(&self) -> CliResult<Source> {
        if let Some(path) = &self.matrix {
            return Ok(Source {
                matrix: io::read_matrix(path)?,
                grid: None,
                description: json!({ "matrix": path }),
            });
        }
        let spec = self.assemble.as_deref().unwrap_or_default();
        let assembly = if self.fem {
            Assembly::LumpedFem
        } else {
            Assembly::FiniteDifference
        };
        let (kind, args) = spec.split_once(':').ok_or_else(|| {
            CliError::usage(format!(
                "--assemble expects 1d:N,L or 2d:NX,NY,LX,LY, got {spec:?}"
            ))
        })?;
        let v = parse::numbers(args)?;
        let count = |x: f64| -> CliResult<usize> {
            if x >= 1.0 && x.fract() == 0.0 {
                Ok(x as usize)
            } else {
                Err(CliError::usage(format!(
                    "node count must be a positive integer, got {x}"
                )))
            }
        };
        let (matrix, grid) = match (kind, v.as_slice()) {
            ("1d", &[n, l]) => {
                let n = count(n)?;
                (
                    assemble_1d(n, l, assembly)?,
                    AssembledGrid::Line { n, length: l },
                )
            }
            ("2d", &[nx, ny, lx, ly]) => {
                let (nx, ny) = (count(nx)?, count(ny)?);
                (
                    assemble_2d(nx, ny, lx, ly, assembly)?,
                    AssembledGrid::Plane { nx, ny, lx, ly },
                )
            }
            _ => {
                return Err(CliError::usage(format!(
                    "--assemble expects 1d:N,L or 2d:NX,NY,LX,LY, got {spec:?}"
                )))
            }
        };
        let description = json!({
            "assemble": spec,
            "assembly": if self.fem { "lumped-fem" } else { "finite-difference" },
            "boundary_conditions": "homogeneous Dirichlet",
        });
        Ok(Source {
            matrix,
            grid: Some(grid),
            description,
        })
    }
}

fn check_order(s: f64) -> CliResult<()> {
    if s > 0.0 && s <= 2.0 {
        Ok(())
    } else {
        Err(CliError::Core(fraclap_core::Error::InvalidOrder(s)))
    }
}

fn write_eigen_report(path: &Path, eig: &EigenDecomposition, s: f64) -> CliResult<()> {
    let rows: Vec<Vec<String>> = eig
        .eigenvalues()
        .iter()
        .enumerate()
        .map(|(i, &l)| vec![i.to_string(), io::number(l), io::number(l.powf(0.5 * s))])
        .collect();
    io::write_table(Some(path), &["index", "lambda", "lambda_pow"], &rows)
}

fn matpow(a: MatpowArgs) -> CliResult<i32> {
    check_order(a.s)?;
    let source = a.source.load()?;
    let eig = sym_eigendecompose(&source.matrix)?;
    let mut params =
        json!({ "source": source.description, "s": a.s, "order": source.matrix.rows() });
    if let Some(path) = &a.eigen {
        write_eigen_report(path, &eig, a.s)?;
    }
    let alpha = 0.5 * a.s;
    if let Some(kind) = &a.check {
        let checks = matpow_check(kind, &eig, &source, alpha)?;
        params["check"] = json!(kind);
        manifest::emit(a.out.as_deref(), &manifest::build("matpow", params))?;
        let report = json!({ "checks": checks });
        let text = serde_json::to_string_pretty(&report)? + "\n";
        match &a.out {
            Some(path) => std::fs::write(path, text)?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        return Ok(if checks.iter().all(|c| c.pass) { 0 } else { 1 });
    }
    if let Some(path) = &a.apply {
        let p = io::read_vector(path)?;
        let result = apply_fraclap_discrete(&eig, a.s, &p)?;
        params["apply"] = json!(path);
        manifest::emit(a.out.as_deref(), &manifest::build("matpow", params))?;
        let rows: Vec<Vec<String>> = result
            .iter()
            .enumerate()
            .map(|(i, &v)| vec![i.to_string(), io::number(v)])
            .collect();
        return io::write_table(a.out.as_deref(), &["index", "value"], &rows).map(|_| 0);
    }
    manifest::emit(a.out.as_deref(), &manifest::build("matpow", params))?;
    io::write_matrix(a.out.as_deref(), &matrix_fractional_power(&eig, alpha)?)?;
    Ok(0)
}

fn matpow_check(
    kind: &str,
    eig: &EigenDecomposition,
    source: &Source,
    alpha: f64,
) -> CliResult<Vec<validate::Check>> {
    let check = |name: &str, measured: f64, tolerance: f64| validate::Check {
        suite: "matpow",
        check: name.to_string(),
        measured,
        tolerance,
        pass: measured <= tolerance,
    };
    let mut out = Vec::new();
    if kind == "semigroup" {
        let half = matrix_fractional_power(eig, 0.5 * alpha)?;
        let full = matrix_fractional_power(eig, alpha)?;
        let gap = half.matmul(&half)?.sub(&full)?.frobenius_norm() / full.frobenius_norm();
        out.push(check("semigroup_half_half", gap, 1e-8));
        return Ok(out);
    }
    let power = matrix_fractional_power(eig, alpha)?;
    let mut worst: f64 = 0.0;
    for (i, &lambda) in eig.eigenvalues().iter().enumerate() {
        let v = eig.eigenvector(i);
        let scale = lambda.powf(alpha);
        let got = power.matvec(&v)?;
        let err = got
            .iter()
            .zip(&v)
            .map(|(g, v)| (g - scale * v).powi(2))
            .sum::<f64>()
            .sqrt();
        worst = worst.max(err / scale);
    }
    out.push(check("spectral_action", worst, 1e-10));
    if let (Some(grid), false) = (source.grid, source.description["assembly"] == "lumped-fem") {
        let exact = grid.eigenvalues();
        let worst = eig
            .eigenvalues()
            .iter()
            .zip(&exact)
            .map(|(l, e)| (l.powf(alpha) - e.powf(alpha)).abs() / e.powf(alpha))
            .fold(0.0, f64::max);
        out.push(check("closed_form_eigenvalues", worst, 1e-10));
    }
    Ok(out)
}

fn initial_condition(spec: &str, source: &Source) -> CliResult<Vec<f64>> {
    let n = source.matrix.rows();
    let (kind, arg) = spec.split_once(':').ok_or_else(|| {
        CliError::usage(format!(
            "--ic expects sine:k, point:j or file:PATH, got {spec:?}"
        ))
    })?;
    let index = |text: &str| {
        text.trim()
            .parse::<usize>()
            .map_err(|_| CliError::usage(format!("not a non-negative integer: {text:?}")))
    };
    let u0 = match kind {
        "sine" => {
            let k = index(arg)? as f64;
            let grid = source
                .grid
                .ok_or_else(|| CliError::usage("sine initial condition needs --assemble"))?;
            let pi = std::f64::consts::PI;
            match grid {
                AssembledGrid::Line { length, .. } => grid
                    .nodes()
                    .iter()
                    .map(|p| (k * pi * p.x / length).sin())
                    .collect(),
                AssembledGrid::Plane { lx, ly, .. } => grid
                    .nodes()
                    .iter()
                    .map(|p| (k * pi * p.x / lx).sin() * (k * pi * p.y / ly).sin())
                    .collect(),
            }
        }
        "point" => {
            let j = index(arg)?;
            if j >= n {
                return Err(CliError::usage(format!(
                    "point source node {j} out of range 0..{n}"
                )));
            }
            let mut u = vec![0.0; n];
            u[j] = 1.0;
            u
        }
        "file" => io::read_vector(Path::new(arg))?,
        _ => {
            return Err(CliError::usage(format!(
                "unknown initial condition {spec:?}"
            )))
        }
    };
    if u0.len() != n {
        return Err(fraclap_core::Error::DimensionMismatch {
            expected: n,
            found: u0.len(),
        }
        .into());
    }
    Ok(u0)
}

fn diffuse(a: DiffuseArgs) -> CliResult<i32> {
    let source = a.source.load()?;
    let u0 = initial_condition(&a.ic, &source)?;
    let times = parse::numbers(&a.times)?;
    if let Some(&t) = times.iter().find(|t| **t < 0.0) {
        return Err(fraclap_core::Error::NegativeTime(t).into());
    }
    let eig = sym_eigendecompose(&source.matrix)?;
    let solutions = modal_diffusion_solve(&eig, a.s, &u0, &times)?;
    let mut rows = Vec::new();
    for (t, u) in times.iter().zip(&solutions) {
        let norm = u.iter().map(|v| v * v).sum::<f64>().sqrt();
        for (node, v) in u.iter().enumerate() {
            rows.push(vec![
                io::number(*t),
                node.to_string(),
                io::number(*v),
                io::number(norm),
            ]);
        }
    }
    let params = json!({ "source": source.description, "s": a.s, "ic": a.ic, "times": times });
    manifest::emit(a.out.as_deref(), &manifest::build("diffuse", params))?;
    io::write_table(a.out.as_deref(), &["t", "node", "value", "norm"], &rows)?;
    Ok(0)
}
