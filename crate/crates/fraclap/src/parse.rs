//! Mini-grammars for functions, domains, point lists and boundary traces.

use fraclap_core::domain::{BoundaryData, Domain, SideData, TestFunction, Trace};
use fraclap_core::Point;

use crate::error::{CliError, CliResult};

pub fn numbers(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::usage(format!("not a finite number: {t:?}")))
        })
        .collect()
}

/// `const:c`, `affine:g,c` / `affine:gx,gy,c`, `quad`, `gauss:center…,width`,
/// `sine:k`.
pub fn function(spec: &str, dim: usize) -> CliResult<TestFunction> {
    let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
    let values = || numbers(args);
    let want = |n: usize, v: &[f64]| {
        if v.len() == n {
            Ok(())
        } else {
            Err(CliError::usage(format!(
                "{kind} in {dim}D takes {n} numbers, got {}",
                v.len()
            )))
        }
    };
    let f = match kind {
        "const" => {
            let v = values()?;
            want(1, &v)?;
            TestFunction::constant(dim, v[0])
        }
        "affine" => {
            let v = values()?;
            want(dim + 1, &v)?;
            let gradient = if dim == 1 {
                Point::on_line(v[0])
            } else {
                Point::new(v[0], v[1])
            };
            TestFunction::affine(dim, gradient, v[dim])
        }
        "quad" if args.is_empty() => TestFunction::quadratic(dim),
        "gauss" => {
            let v = values()?;
            want(dim + 1, &v)?;
            let center = if dim == 1 {
                Point::on_line(v[0])
            } else {
                Point::new(v[0], v[1])
            };
            TestFunction::gaussian(dim, center, v[dim])?
        }
        "sine" => {
            let k: u32 = args
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("sine needs a positive integer: {args:?}")))?;
            if k == 0 {
                return Err(CliError::usage("sine mode must be at least 1"));
            }
            TestFunction::sine(dim, k)
        }
        _ => return Err(CliError::usage(format!("unknown function spec {spec:?}"))),
    };
    Ok(f)
}

/// `a,b` in 1D, `a1,b1,a2,b2` in 2D, with `nodes` grid nodes per direction.
pub fn domain(text: &str, dim: usize, nodes: usize) -> CliResult<Domain> {
    let v = numbers(text)?;
    match (dim, v.len()) {
        (1, 2) => Ok(Domain::interval(v[0], v[1], nodes)?),
        (2, 4) => Ok(Domain::rectangle((v[0], v[1]), (v[2], v[3]), nodes, nodes)?),
        _ => Err(CliError::usage(format!(
            "--domain needs {} numbers for d={dim}",
            2 * dim
        ))),
    }
}

/// `x1,x2,…` in 1D; `x1,y1;x2,y2;…` in 2D.
pub fn points(text: &str, dim: usize) -> CliResult<Vec<Point>> {
    if dim == 1 {
        return Ok(numbers(text)?.into_iter().map(Point::on_line).collect());
    }
    text.split(';')
        .map(|pair| match numbers(pair)?.as_slice() {
            [x, y] => Ok(Point::new(*x, *y)),
            _ => Err(CliError::usage(format!(
                "2D points are x,y pairs separated by ';': {pair:?}"
            ))),
        })
        .collect()
}

/// One trace per side separated by `;`: a number, `func:SPEC`, or `-` for none.
/// Sides are left, right (1D) or bottom, right, top, left (2D).
pub fn traces(text: &str, dim: usize, sides: usize) -> CliResult<Vec<Option<Trace>>> {
    let items: Vec<&str> = text.split(';').map(str::trim).collect();
    let items = if items.len() == 1 && sides > 1 {
        vec![items[0]; sides]
    } else {
        items
    };
    if items.len() != sides {
        return Err(CliError::usage(format!(
            "expected {sides} boundary entries separated by ';', got {}",
            items.len()
        )));
    }
    items
        .into_iter()
        .map(|item| {
            if item == "-" {
                Ok(None)
            } else if let Some(spec) = item.strip_prefix("func:") {
                Ok(Some(Trace::Function(function(spec, dim)?)))
            } else {
                Ok(Some(Trace::Constant(
                    numbers(item)?.into_iter().next().unwrap_or(0.0),
                )))
            }
        })
        .collect()
}

pub fn boundary(
    domain: &Domain,
    dirichlet: Option<&str>,
    neumann: Option<&str>,
) -> CliResult<BoundaryData> {
    let n = domain.side_count();
    let dim = domain.dim();
    let d = match dirichlet {
        Some(t) => traces(t, dim, n)?,
        None => vec![None; n],
    };
    let q = match neumann {
        Some(t) => traces(t, dim, n)?,
        None => vec![None; n],
    };
    let sides = d
        .into_iter()
        .zip(q)
        .map(|(dirichlet, neumann)| SideData { dirichlet, neumann })
        .collect();
    Ok(BoundaryData::new(domain, sides)?)
}
