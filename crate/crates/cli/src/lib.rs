//! Command-line front end for the `innerdist` library.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical check
//! fails, 2 when the input is invalid.

pub mod document;
pub mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use thiserror::Error;

use innerdist::fractal::{fractal_level, fractal_stats, hull_lower_probe, sibling_gap_check};
use innerdist::painleve::{painleve_cover, ConnectedSet, PainleveError};
use innerdist::samples::{interior_pairs, rng};
use innerdist::verifier::{
    batch_status, sharpness_sweep, verify_main_theorem, BatchStatus, BOUND_TOL,
};
use innerdist::{comb_domain, grid_oracle, inner_distance, GeodesicError, Point, PolygonalDomain};

use document::{path_json, DomainDocument};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Geodesic(#[from] GeodesicError),
    #[error("{0}")]
    Other(String),
}

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "innerdist",
    version,
    about = "Inner distance in polygonal domains and checks of its length bounds",
    after_help = "Set RAYON_NUM_THREADS to limit worker threads (default: all cores)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inner distance between two points, with both bounds.
    Distance {
        /// Domain JSON file.
        domain: PathBuf,
        /// First point as "x,y".
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Second point as "x,y".
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// Also run the grid oracle at this spacing.
        #[arg(long, value_name = "H")]
        oracle: Option<f64>,
        /// Write the shortest path as JSON.
        #[arg(long, value_name = "FILE")]
        emit_path: Option<PathBuf>,
        /// Write an SVG picture of the domain and path.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
    /// Bound report for many pairs, as CSV on standard output.
    #[command(group(ArgGroup::new("source").required(true).args(["pairs", "random"])))]
    Verify {
        domain: PathBuf,
        /// CSV file of pairs "x1,y1,x2,y2".
        #[arg(long, value_name = "FILE")]
        pairs: Option<PathBuf>,
        /// Number of random interior pairs.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Distance to boundary-length ratios on comb domains.
    Comb {
        #[arg(long, default_value = "2,4,6,8,10")]
        n_list: String,
    },
    /// Convex cover certificate for a connected segment set.
    Painleve {
        /// JSON array of segments [[[x, y], [x, y]], ...].
        set: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        clearance: f64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
    },
    /// Nested-disk fractal statistics and inequalities.
    #[command(group(ArgGroup::new("mode").required(true).args(["level", "gap_check", "hull_probe"])))]
    Fractal {
        /// Statistics of level K.
        #[arg(long, value_name = "K")]
        level: Option<u32>,
        /// Sibling gap inequality at level K0.
        #[arg(long, value_name = "K0")]
        gap_check: Option<u32>,
        /// Hull perimeter probe at level K0; needs --indices.
        #[arg(long, value_name = "K0", requires = "indices")]
        hull_probe: Option<u32>,
        /// Sibling indices, e.g. "1,2,3".
        #[arg(long)]
        indices: Option<String>,
        #[arg(long, default_value_t = 256)]
        resolution: usize,
    },
    /// Print the comb domain with n slit pairs as a canonical document.
    ExportComb { n: usize },
    /// Re-emit a domain document in canonical form.
    Canonical { domain: PathBuf },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_domain(path: &Path) -> Result<PolygonalDomain, CliError> {
    DomainDocument::parse(&read(path)?)?.to_domain()
}

fn parse_point(text: &str, name: &str) -> Result<Point, CliError> {
    let bad = || CliError::Input {
        path: name.to_string(),
        message: format!("expected \"x,y\", got \"{text}\""),
    };
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    let x: f64 = a.trim().parse().map_err(|_| bad())?;
    let y: f64 = b.trim().parse().map_err(|_| bad())?;
    if !(x.is_finite() && y.is_finite()) {
        return Err(bad());
    }
    Ok(Point::new(x, y))
}

fn parse_list<T: std::str::FromStr>(text: &str, name: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim().parse().map_err(|_| CliError::Input {
                path: name.to_string(),
                message: format!("\"{}\" is not a valid entry", s.trim()),
            })
        })
        .collect()
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Other(format!("csv output: {e}"))
}

/// Runs one command, writing results to `out` and notes to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Status, CliError> {
    match cli.command {
        Command::Distance {
            domain,
            x,
            y,
            oracle,
            emit_path,
            svg,
        } => cmd_distance(&domain, &x, &y, oracle, emit_path, svg, out, err),
        Command::Verify {
            domain,
            pairs,
            random,
            seed,
        } => cmd_verify(&domain, pairs, random, seed, out, err),
        Command::Comb { n_list } => cmd_comb(&n_list, out),
        Command::Painleve {
            set,
            clearance,
            epsilon,
        } => cmd_painleve(&set, clearance, epsilon, out),
        Command::Fractal {
            level,
            gap_check,
            hull_probe,
            indices,
            resolution,
        } => cmd_fractal(level, gap_check, hull_probe, indices, resolution, out),
        Command::ExportComb { n } => {
            let comb = comb_domain(n).map_err(|e| CliError::Usage(e.to_string()))?;
            out.write_all(DomainDocument::from_domain(&comb.domain).to_canonical().as_bytes())
                .map_err(io_err)?;
            Ok(Status::Pass)
        }
        Command::Canonical { domain } => {
            let doc = DomainDocument::parse(&read(&domain)?)?;
            doc.to_domain()?;
            out.write_all(doc.to_canonical().as_bytes()).map_err(io_err)?;
            Ok(Status::Pass)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_distance(
    domain_file: &Path,
    x: &str,
    y: &str,
    oracle: Option<f64>,
    emit_path: Option<PathBuf>,
    svg_file: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Status, CliError> {
    let domain = load_domain(domain_file)?;
    let (x, y) = (parse_point(x, "x")?, parse_point(y, "y")?);
    if let Some(h) = oracle {
        if !(h > 0.0 && h.is_finite()) {
            return Err(CliError::Usage(format!("--oracle spacing must be positive, got {h}")));
        }
    }
    let report = verify_main_theorem(&domain, &[(x, y)])
        .pop()
        .expect("one pair")?;
    let (_, path) = inner_distance(&domain, x, y)?;
    let mut status = if report.satisfied && report.classic_satisfied {
        Status::Pass
    } else {
        Status::Fail
    };
    let w = |out: &mut dyn Write, k: &str, v: String| writeln!(out, "{k} {v}").map_err(io_err);
    w(out, "distance", report.distance.to_string())?;
    w(out, "euclidean", report.euclidean.to_string())?;
    w(out, "h1_E", report.h1_e.to_string())?;
    w(out, "h1_boundary", report.h1_boundary.to_string())?;
    w(out, "q", report.q.to_string())?;
    w(out, "bound", report.bound_value.to_string())?;
    w(out, "classic_bound", report.classic_bound.to_string())?;
    w(out, "margin", report.margin.to_string())?;
    w(out, "satisfied", (report.satisfied && report.classic_satisfied).to_string())?;
    if let Some(h) = oracle {
        match grid_oracle(&domain, x, y, h) {
            Ok(g) => {
                w(out, "oracle", g.to_string())?;
                w(out, "oracle_gap", (g - report.distance).to_string())?;
                if g < report.distance - BOUND_TOL {
                    writeln!(err, "grid oracle fell below the exact distance").map_err(io_err)?;
                    status = Status::Fail;
                }
            }
            Err(e @ GeodesicError::UnreachableAtResolution { .. }) => {
                writeln!(err, "oracle: {e}").map_err(io_err)?;
            }
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(file) = emit_path {
        write_file(&file, &path_json(&path.vertices, path.length))?;
    }
    if let Some(file) = svg_file {
        write_file(&file, &svg::render(&domain, &path.vertices))?;
    }
    Ok(status)
}

fn read_pairs(file: &Path) -> Result<Vec<(Point, Point)>, CliError> {
    let text = read(file)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut pairs = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let at = format!("{}:{}", file.display(), line + 1);
        let record = record.map_err(|e| CliError::Input {
            path: at.clone(),
            message: e.to_string(),
        })?;
        if line == 0 && record.iter().eq(["x1", "y1", "x2", "y2"]) {
            continue;
        }
        let values: Vec<f64> = record
            .iter()
            .map(|f| f.parse::<f64>())
            .collect::<Result<_, _>>()
            .ok()
            .filter(|v: &Vec<f64>| v.len() == 4 && v.iter().all(|x| x.is_finite()))
            .ok_or_else(|| CliError::Input {
                path: at,
                message: "expected four numbers x1,y1,x2,y2".into(),
            })?;
        pairs.push((Point::new(values[0], values[1]), Point::new(values[2], values[3])));
    }
    Ok(pairs)
}

fn cmd_verify(
    domain_file: &Path,
    pairs_file: Option<PathBuf>,
    random: Option<usize>,
    seed: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Status, CliError> {
    let domain = load_domain(domain_file)?;
    let pairs = match (pairs_file, random) {
        (Some(file), _) => read_pairs(&file)?,
        (None, Some(n)) => interior_pairs(&domain, n, &mut rng(seed)),
        (None, None) => return Err(CliError::Usage("give --pairs or --random".into())),
    };
    let reports = verify_main_theorem(&domain, &pairs);
    let mut csv = csv::WriterBuilder::new().from_writer(Vec::new());
    csv.write_record([
        "x1", "y1", "x2", "y2", "distance", "euclidean", "h1_E", "q", "bound", "classic_bound",
        "margin", "satisfied",
    ])
    .map_err(csv_err)?;
    for (k, rep) in reports.iter().enumerate() {
        match rep {
            Ok(r) => {
                let (a, b) = r.pair;
                csv.write_record(&[
                    a.x.to_string(),
                    a.y.to_string(),
                    b.x.to_string(),
                    b.y.to_string(),
                    r.distance.to_string(),
                    r.euclidean.to_string(),
                    r.h1_e.to_string(),
                    r.q.to_string(),
                    r.bound_value.to_string(),
                    r.classic_bound.to_string(),
                    r.margin.to_string(),
                    (r.satisfied && r.classic_satisfied).to_string(),
                ])
                .map_err(csv_err)?;
            }
            Err(e) => writeln!(err, "pair {}: {e}", k + 1).map_err(io_err)?,
        }
    }
    let bytes = csv.into_inner().map_err(|e| CliError::Other(e.to_string()))?;
    out.write_all(&bytes).map_err(io_err)?;
    match batch_status(&reports) {
        BatchStatus::AllSatisfied => Ok(Status::Pass),
        BatchStatus::Violation => Ok(Status::Fail),
        BatchStatus::Errors => Err(CliError::Usage("some pairs could not be evaluated".into())),
    }
}

fn cmd_comb(n_list: &str, out: &mut dyn Write) -> Result<Status, CliError> {
    let ns: Vec<usize> = parse_list(n_list, "--n-list")?;
    if ns.is_empty() {
        return Err(CliError::Usage("--n-list is empty".into()));
    }
    let rows = sharpness_sweep(&ns).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut csv = csv::WriterBuilder::new().from_writer(Vec::new());
    csv.write_record(["n", "h1_E", "distance", "ratio"]).map_err(csv_err)?;
    for r in &rows {
        csv.write_record(&[
            r.n.to_string(),
            r.h1_e.to_string(),
            r.distance.to_string(),
            r.ratio.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = csv.into_inner().map_err(|e| CliError::Other(e.to_string()))?;
    out.write_all(&bytes).map_err(io_err)?;
    let monotone = rows.windows(2).all(|w| w[1].ratio >= w[0].ratio);
    let bounded = rows.iter().all(|r| r.ratio <= 1.0 + BOUND_TOL);
    Ok(if monotone && bounded {
        Status::Pass
    } else {
        Status::Fail
    })
}

fn cmd_painleve(
    file: &Path,
    clearance: f64,
    epsilon: f64,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let segments = document::parse_segments(&read(file)?)?;
    let set = ConnectedSet::new(segments).map_err(|e| CliError::Input {
        path: file.display().to_string(),
        message: e.to_string(),
    })?;
    let (cert, status) = match painleve_cover(&set, clearance, epsilon) {
        Ok(cert) => (cert, Status::Pass),
        Err(PainleveError::InfeasibleTolerance(cert)) => (*cert, Status::Fail),
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    let lines = [
        ("pieces", cert.pieces.len().to_string()),
        ("h1", cert.h1.to_string()),
        ("sum_boundary", cert.sum_boundary.to_string()),
        ("bound", cert.bound.to_string()),
        ("delta", format!("{:e}", cert.delta)),
        ("contains_K", cert.contains_k.to_string()),
        ("inside_U", cert.inside_u.to_string()),
        ("satisfied", cert.satisfied().to_string()),
    ];
    for (k, v) in lines {
        writeln!(out, "{k} {v}").map_err(io_err)?;
    }
    Ok(status)
}

fn cmd_fractal(
    level: Option<u32>,
    gap_check: Option<u32>,
    hull_probe: Option<u32>,
    indices: Option<String>,
    resolution: usize,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let usage = |e: innerdist::fractal::FractalError| CliError::Usage(e.to_string());
    if let Some(k) = level {
        let stats = fractal_stats(&fractal_level(k).map_err(usage)?);
        writeln!(
            out,
            "{} balls, radius {}, diameter_sum {}, min_gap {}",
            stats.count, stats.radius, stats.diameter_sum, stats.min_gap
        )
        .map_err(io_err)?;
        return Ok(Status::Pass);
    }
    if let Some(k0) = gap_check {
        let g = sibling_gap_check(k0, 1.0).map_err(usage)?;
        let rel = if g.satisfied { "≥" } else { "<" };
        writeln!(out, "actual {:.5} {rel} bound {:.5}", g.actual_gap, g.bound).map_err(io_err)?;
        return Ok(if g.satisfied { Status::Pass } else { Status::Fail });
    }
    let k0 = hull_probe.expect("clap requires one mode");
    let idx: Vec<u64> = parse_list(indices.as_deref().unwrap_or(""), "--indices")?;
    let probe = hull_lower_probe(k0, &idx, resolution).map_err(usage)?;
    writeln!(
        out,
        "hull_perimeter {} measure_weight {} satisfied {}",
        probe.hull_perimeter, probe.measure_weight, probe.satisfied
    )
    .map_err(io_err)?;
    Ok(if probe.satisfied {
        Status::Pass
    } else {
        Status::Fail
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_arguments() {
        assert_eq!(parse_point("-1,0", "x").unwrap(), Point::new(-1.0, 0.0));
        assert_eq!(parse_point(" 0.5 , 2", "x").unwrap(), Point::new(0.5, 2.0));
        assert!(parse_point("1", "x").is_err());
        assert!(parse_point("nan,0", "x").is_err());
    }

    #[test]
    fn comb_rows() {
        let mut out = Vec::new();
        assert_eq!(cmd_comb("2,4", &mut out).unwrap(), Status::Pass);
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("n,h1_E,distance,ratio\n"));
        assert!(cmd_comb("1", &mut Vec::new()).is_err());
    }

    #[test]
    fn fractal_level_line() {
        let mut out = Vec::new();
        cmd_fractal(Some(3), None, None, None, 256, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("32 balls, radius 0.03125, diameter_sum 2,"), "{text}");
    }
}
