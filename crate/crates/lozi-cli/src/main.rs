//! `lozi` — command-line front end over `lozi-core`.
//!
//! Subcommands: manifold, homoclinic, trace, endpoints, scan, verify-tables.
//! Exit codes: 0 ok, 1 usage, 2 computation error, 3 verification failure.
//!
//! Number serialization: CSV uses fixed 17-significant-digit scientific
//! notation (bit-exact round trip); JSON uses serde_json's shortest
//! round-trip decimals.

mod svg;

use clap::{Parser, Subcommand, ValueEnum};
use lozi_core::boundary::{
    self, condition_value, solve_endpoint, table1_residual, CurveId, ScanGrid, TABLE2_REF,
};
use lozi_core::intersect::{
    check_last_tangency, default_tol, homoclinic_on_fundamental, IntersectionKind,
    IntersectionRecord, OrbitTag,
};
use lozi_core::manifold::{stable_arc, unstable_arc, Label, ManifoldArc, DEFAULT_MAX_VERTICES};
use lozi_core::map::fixed_points;
use lozi_core::{Params, Point};
use serde_json::json;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lozi", version, about = "Manifolds, homoclinic points and \
boundary curves of the Lozi family", disable_help_subcommand = true)]
struct Cli {
    /// Intersection tolerance (absolute); default derives from arc diameter
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Truncation depth in map applications
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Output file (or stem for multi-file CSV); stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Flat key=value defaults file (flags take precedence)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the stable and unstable arcs through the saddle X
    Manifold {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
    },
    /// Detect and classify homoclinic points at one parameter pair
    Homoclinic {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
    },
    /// Continue a boundary curve across its parameter sweep
    Trace {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        a_from: Option<f64>,
        #[arg(long)]
        a_to: Option<f64>,
        #[arg(long)]
        b_from: Option<f64>,
        #[arg(long)]
        b_to: Option<f64>,
        /// Step size in the swept coordinate (overrides --steps)
        #[arg(long)]
        step: Option<f64>,
        /// Number of continuation steps
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Solve curve-corner parameter pairs and compare against the bundled table
    Endpoints {
        /// Comma list / ranges, e.g. "C1,C3" or "C1..C6"
        #[arg(long, default_value = "C1..C6")]
        curves: String,
    },
    /// Raster the parameter rectangle for homoclinic presence
    Scan {
        #[arg(long, default_value_t = 0.8)]
        a_from: f64,
        #[arg(long, default_value_t = 2.0)]
        a_to: f64,
        #[arg(long, default_value_t = 0.05)]
        b_from: f64,
        #[arg(long, default_value_t = 0.95)]
        b_to: f64,
        #[arg(long, default_value_t = 24)]
        na: usize,
        #[arg(long, default_value_t = 20)]
        nb: usize,
        /// Overlay the traced boundary curves on SVG output
        #[arg(long)]
        overlay: bool,
    },
    /// Re-derive table values and report maximum deviations
    VerifyTables {
        /// Which table to verify: 1, 2 or all
        #[arg(long, default_value = "all")]
        table: String,
        /// Trace samples per curve for the residual check
        #[arg(long, default_value_t = 51)]
        steps: usize,
    },
}

enum Failure {
    Usage(String),
    Computation(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Computation(e.into())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Computation(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Effective global options after merging flags > config file > defaults.
struct Opts {
    tol: Option<f64>,
    depth: Option<usize>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

fn load_config(path: &Path) -> Result<HashMap<String, String>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {} is not key=value", ln + 1)))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn merge_opts(cli: &Cli) -> Result<Opts, Failure> {
    let cfg = match &cli.config {
        Some(p) => load_config(p)?,
        None => HashMap::new(),
    };
    let parse = |key: &str| -> Result<Option<f64>, Failure> {
        cfg.get(key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| usage(format!("config key {key}: bad number {v:?}")))
            })
            .transpose()
    };
    let tol = match cli.tol {
        Some(t) => Some(t),
        None => parse("tol")?,
    };
    let depth = match cli.depth {
        Some(d) => Some(d),
        None => cfg
            .get("depth")
            .map(|v| {
                v.parse::<usize>()
                    .map_err(|_| usage(format!("config key depth: bad integer {v:?}")))
            })
            .transpose()?,
    };
    let format = match cli.format {
        Some(f) => Some(f),
        None => cfg
            .get("format")
            .map(|v| {
                Format::from_str(v, true).map_err(|_| usage(format!("config key format: {v:?}")))
            })
            .transpose()?,
    };
    let out = cli
        .out
        .clone()
        .or_else(|| cfg.get("out").map(PathBuf::from));
    if let Some(t) = tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(usage("tol must be a positive finite number"));
        }
    }
    Ok(Opts {
        tol,
        depth,
        out,
        format,
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let opts = merge_opts(&cli)?;
    match &cli.cmd {
        Cmd::Manifold { a, b } => cmd_manifold(*a, *b, &opts),
        Cmd::Homoclinic { a, b } => cmd_homoclinic(*a, *b, &opts),
        Cmd::Trace {
            curve,
            a_from,
            a_to,
            b_from,
            b_to,
            step,
            steps,
        } => cmd_trace(
            curve,
            (*a_from, *a_to),
            (*b_from, *b_to),
            *step,
            *steps,
            &opts,
        ),
        Cmd::Endpoints { curves } => cmd_endpoints(curves, &opts),
        Cmd::Scan {
            a_from,
            a_to,
            b_from,
            b_to,
            na,
            nb,
            overlay,
        } => cmd_scan((*a_from, *a_to), (*b_from, *b_to), *na, *nb, *overlay, &opts),
        Cmd::VerifyTables { table, steps } => cmd_verify_tables(table, *steps, &opts),
    }
}

// ---------------------------------------------------------------- output

/// CSV cell: fixed 17 significant digits, round-trips f64 exactly.
fn csv_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_out(out: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Failure::Computation(anyhow::anyhow!("writing {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn want(opts: &Opts, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = opts.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(usage("format not supported by this command"))
    }
}

// ---------------------------------------------------------------- manifold

fn arc_csv(arc: &ManifoldArc, depth_note: &str) -> String {
    let labels: HashMap<usize, String> = arc
        .anchors()
        .iter()
        .map(|(i, l)| (*i, l.to_string()))
        .collect();
    let mut s = String::new();
    let _ = writeln!(s, "# truncation: {depth_note}");
    s.push_str("x,y,label,breakpoint\n");
    for (i, v) in arc.line().vertices().iter().enumerate() {
        let label = labels.get(&i).map(String::as_str).unwrap_or("");
        let bp = arc
            .breakpoint_steps(i)
            .map(|k| k.to_string())
            .unwrap_or_default();
        let _ = writeln!(s, "{},{},{label},{bp}", csv_f(v.x), csv_f(v.y));
    }
    s
}

fn arc_json(arc: &ManifoldArc) -> serde_json::Value {
    let labels: HashMap<usize, String> = arc
        .anchors()
        .iter()
        .map(|(i, l)| (*i, l.to_string()))
        .collect();
    let vertices: Vec<serde_json::Value> = arc
        .line()
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            json!({
                "x": v.x,
                "y": v.y,
                "label": labels.get(&i),
                "breakpoint": arc.breakpoint_steps(i),
            })
        })
        .collect();
    json!({ "depth": arc.depth, "vertices": vertices })
}

fn cmd_manifold(a: f64, b: f64, opts: &Opts) -> Result<u8, Failure> {
    let p = Params::new(a, b)?;
    let depth = opts.depth.unwrap_or(8);
    let pairs = depth.div_ceil(2).max(1);
    let wu = unstable_arc(p, pairs, DEFAULT_MAX_VERTICES)?;
    let ws = stable_arc(p, depth, DEFAULT_MAX_VERTICES)?;
    let note = format!("unstable pairs={pairs}, stable backward steps={depth}");
    match want(opts, Format::Csv, &[Format::Csv, Format::Json, Format::Svg])? {
        Format::Csv => {
            let ucsv = arc_csv(&wu, &note);
            let scsv = arc_csv(&ws, &note);
            match &opts.out {
                Some(stem) => {
                    let stem = stem.to_string_lossy();
                    write_out(&Some(PathBuf::from(format!("{stem}-unstable.csv"))), &ucsv)?;
                    write_out(&Some(PathBuf::from(format!("{stem}-stable.csv"))), &scsv)?;
                }
                None => {
                    print!("# arc: unstable\n{ucsv}# arc: stable\n{scsv}");
                }
            }
            Ok(0)
        }
        Format::Json => {
            let doc = json!({
                "params": { "a": a, "b": b },
                "truncation": note,
                "unstable": arc_json(&wu),
                "stable": arc_json(&ws),
            });
            write_out(&opts.out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
            Ok(0)
        }
        Format::Svg => {
            let mut canvas = svg::Canvas::new(
                svg::DEFAULT_WORLD,
                &format!("lozi manifold a={a} b={b}; {note}"),
            );
            canvas.axes();
            canvas.polyline(ws.line().vertices(), "#cc2222", 1.2); // stable: red
            canvas.polyline(wu.line().vertices(), "#2244cc", 1.2); // unstable: blue
            let (x, _) = fixed_points(p);
            canvas.circle(x, 3.5, "#111111");
            canvas.text(x, "X", "#111111");
            for arc in [&wu, &ws] {
                for (i, l) in arc.anchors() {
                    if matches!(l, Label::X) {
                        continue;
                    }
                    let q = arc.line().vertices()[*i];
                    canvas.circle(q, 2.0, "#333333");
                    canvas.text(q, &l.to_string(), "#333333");
                }
            }
            write_out(&opts.out, &canvas.finish())?;
            Ok(0)
        }
    }
}

// -------------------------------------------------------------- homoclinic

fn kind_str(k: IntersectionKind) -> &'static str {
    match k {
        IntersectionKind::Tangential => "tangential",
        IntersectionKind::Transversal => "transversal",
    }
}

fn orbit_str(tag: OrbitTag) -> String {
    match tag {
        OrbitTag::X => "X".to_string(),
        OrbitTag::Z(k) => format!("Z^{k}"),
        OrbitTag::V(k) => format!("V^{k}"),
        OrbitTag::Other => "other".to_string(),
    }
}

fn rec_json(r: &IntersectionRecord) -> serde_json::Value {
    json!({
        "x": r.point.x,
        "y": r.point.y,
        "kind": kind_str(r.kind),
        "seg_a": r.seg_a,
        "seg_b": r.seg_b,
        "a_vertex": r.a_vertex,
        "b_vertex": r.b_vertex,
        "unstable_classification": r.unstable_classification,
    })
}

fn cmd_homoclinic(a: f64, b: f64, opts: &Opts) -> Result<u8, Failure> {
    let p = Params::new(a, b)?;
    let depth = opts.depth.unwrap_or(8);
    let tol = match opts.tol {
        Some(t) => t,
        None => {
            let pairs = depth.div_ceil(2).max(1);
            default_tol(&unstable_arc(p, pairs, DEFAULT_MAX_VERTICES)?)
        }
    };
    let fundamental = homoclinic_on_fundamental(p, depth, tol)?;
    let report = check_last_tangency(p, depth, tol)?;
    let _ = want(opts, Format::Json, &[Format::Json])?;
    let doc = json!({
        "params": { "a": a, "b": b },
        "depth": depth,
        "tol": tol,
        "fundamental": {
            "count": fundamental.len(),
            "records": fundamental.iter().map(rec_json).collect::<Vec<_>>(),
        },
        "tangency": {
            "all_tangential": report.all_tangential,
            "records": report
                .records
                .iter()
                .map(|o| {
                    let mut v = rec_json(&o.rec);
                    v["orbit"] = json!(orbit_str(o.orbit));
                    v
                })
                .collect::<Vec<_>>(),
        },
    });
    write_out(&opts.out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
    Ok(0)
}

// ------------------------------------------------------------------- trace

#[allow(clippy::too_many_arguments)]
fn cmd_trace(
    curve: &str,
    a_range: (Option<f64>, Option<f64>),
    b_range: (Option<f64>, Option<f64>),
    step: Option<f64>,
    steps: Option<usize>,
    opts: &Opts,
) -> Result<u8, Failure> {
    let curve: CurveId = curve.parse().map_err(usage)?;
    let (swept, dflt_from, dflt_to, _, _) = curve.sweep();
    let (from_flag, to_flag) = match swept {
        boundary::Coord::A => a_range,
        boundary::Coord::B => b_range,
    };
    let other_given = match swept {
        boundary::Coord::A => b_range.0.is_some() || b_range.1.is_some(),
        boundary::Coord::B => a_range.0.is_some() || a_range.1.is_some(),
    };
    if other_given {
        return Err(usage(format!(
            "{curve} sweeps coordinate {}; the range flags for the other coordinate do not apply",
            match swept {
                boundary::Coord::A => "a",
                boundary::Coord::B => "b",
            }
        )));
    }
    let from = from_flag.unwrap_or(dflt_from);
    let to = to_flag.unwrap_or(dflt_to);
    let n = match step {
        Some(h) => {
            if !(h > 0.0 && h.is_finite()) {
                return Err(usage("--step must be positive"));
            }
            ((to - from).abs() / h).ceil().max(1.0) as usize
        }
        None => steps.unwrap_or(50),
    };
    let trace = boundary::trace_curve_range(curve, from, to, n)?;
    let cond = curve.condition();
    match want(opts, Format::Csv, &[Format::Csv, Format::Json])? {
        Format::Csv => {
            let mut s = String::from("a,b,residual,table1_residual\n");
            for pt in &trace.points {
                let cv = Params::new(pt.a, pt.b)
                    .ok()
                    .and_then(|p| condition_value(p, cond).ok())
                    .unwrap_or(f64::NAN);
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    csv_f(pt.a),
                    csv_f(pt.b),
                    csv_f(cv),
                    csv_f(pt.residual)
                );
            }
            if trace.end_of_branch {
                s.push_str("# end_of_branch: continuation lost the root before the sweep end\n");
            }
            write_out(&opts.out, &s)?;
            Ok(0)
        }
        Format::Json => {
            let points: Vec<serde_json::Value> = trace
                .points
                .iter()
                .map(|pt| {
                    let cv = Params::new(pt.a, pt.b)
                        .ok()
                        .and_then(|p| condition_value(p, cond).ok());
                    json!({
                        "a": pt.a, "b": pt.b,
                        "residual": cv,
                        "table1_residual": pt.residual,
                    })
                })
                .collect();
            let doc = json!({
                "curve": curve.to_string(),
                "end_of_branch": trace.end_of_branch,
                "points": points,
            });
            write_out(&opts.out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
            Ok(0)
        }
        Format::Svg => unreachable!(),
    }
}

// --------------------------------------------------------------- endpoints

fn parse_curve_list(s: &str) -> Result<Vec<usize>, Failure> {
    let one = |item: &str| -> Result<usize, Failure> {
        item.trim()
            .strip_prefix('C')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|n| (1..=6).contains(n))
            .ok_or_else(|| usage(format!("bad curve name {item:?} (expected C1..C6)")))
    };
    let mut out = Vec::new();
    for item in s.split(',') {
        if let Some((lo, hi)) = item.split_once("..") {
            let (lo, hi) = (one(lo)?, one(hi)?);
            if lo > hi {
                return Err(usage(format!("empty range {item:?}")));
            }
            out.extend(lo..=hi);
        } else {
            out.push(one(item)?);
        }
    }
    Ok(out)
}

fn cmd_endpoints(curves: &str, opts: &Opts) -> Result<u8, Failure> {
    let list = parse_curve_list(curves)?;
    let mut rows = Vec::new();
    let mut all_ok = true;
    for n in list {
        let (_, ra, rb) = TABLE2_REF[n - 1];
        match solve_endpoint(n) {
            Ok((a, b)) => rows.push((n, a, b, (a - ra).abs(), (b - rb).abs(), "ok")),
            Err(e) => {
                eprintln!("endpoint {n}: {e}");
                rows.push((n, f64::NAN, f64::NAN, f64::NAN, f64::NAN, "failed"));
                all_ok = false;
            }
        }
    }
    match want(opts, Format::Csv, &[Format::Csv, Format::Json])? {
        Format::Csv => {
            let mut s = String::from("curve,a_n,b_n,delta_a,delta_b,status\n");
            for (n, a, b, da, db, st) in &rows {
                let _ = writeln!(
                    s,
                    "{n},{},{},{},{},{st}",
                    csv_f(*a),
                    csv_f(*b),
                    csv_f(*da),
                    csv_f(*db)
                );
            }
            write_out(&opts.out, &s)?;
        }
        Format::Json => {
            let doc: Vec<serde_json::Value> = rows
                .iter()
                .map(|(n, a, b, da, db, st)| {
                    json!({"curve": n, "a": a, "b": b, "delta_a": da, "delta_b": db, "status": st})
                })
                .collect();
            write_out(&opts.out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
        }
        Format::Svg => unreachable!(),
    }
    if all_ok {
        Ok(0)
    } else {
        Err(Failure::Computation(anyhow::anyhow!(
            "one or more endpoints failed to converge"
        )))
    }
}

// -------------------------------------------------------------------- scan

fn cmd_scan(
    a_range: (f64, f64),
    b_range: (f64, f64),
    na: usize,
    nb: usize,
    overlay: bool,
    opts: &Opts,
) -> Result<u8, Failure> {
    if na < 2 || nb < 2 {
        return Err(usage("--na and --nb must be at least 2"));
    }
    let depth = opts.depth.unwrap_or(8);
    let tol = opts.tol.unwrap_or(1e-9);
    let grid = boundary::scan_region(a_range, b_range, na, nb, depth, tol);
    match want(opts, Format::Csv, &[Format::Csv, Format::Json, Format::Svg])? {
        Format::Csv => {
            let mut s = String::from("a,b,homoclinic\n");
            for (k, cell) in grid.cells.iter().enumerate() {
                let val = match cell {
                    Some(true) => "1",
                    Some(false) => "0",
                    None => "error",
                };
                let _ = writeln!(
                    s,
                    "{},{},{val}",
                    csv_f(grid.a[k % na]),
                    csv_f(grid.b[k / na])
                );
            }
            write_out(&opts.out, &s)?;
        }
        Format::Json => {
            let doc = json!({
                "depth": depth, "tol": tol,
                "a": grid.a, "b": grid.b,
                "cells": grid.cells,
            });
            write_out(&opts.out, &format!("{}\n", serde_json::to_string_pretty(&doc)?))?;
        }
        Format::Svg => {
            write_out(&opts.out, &scan_svg(&grid, na, nb, depth, tol, overlay)?)?;
        }
    }
    Ok(0)
}

fn scan_svg(
    grid: &ScanGrid,
    na: usize,
    nb: usize,
    depth: usize,
    tol: f64,
    overlay: bool,
) -> Result<String, Failure> {
    let (a0, a1) = (grid.a[0], grid.a[na - 1]);
    let (b0, b1) = (grid.b[0], grid.b[nb - 1]);
    let ha = (a1 - a0) / (na - 1) as f64 / 2.0;
    let hb = (b1 - b0) / (nb - 1) as f64 / 2.0;
    let mut canvas = svg::Canvas::new(
        (a0 - ha, a1 + ha, b0 - hb, b1 + hb),
        &format!("lozi scan depth={depth} tol={tol}"),
    );
    for (k, cell) in grid.cells.iter().enumerate() {
        let (a, b) = (grid.a[k % na], grid.b[k / na]);
        let color = match cell {
            Some(true) => "#2b6cb0",
            Some(false) => "#f3f3f3",
            None => "#c9c9c9",
        };
        canvas.rect_world(
            Point::new(a - ha, b - hb),
            Point::new(a + ha, b + hb),
            color,
        );
    }
    if overlay {
        for curve in CurveId::all() {
            let trace = boundary::trace_curve(curve, 50)?;
            let pts: Vec<Point> = trace
                .points
                .iter()
                .map(|p| Point::new(p.a, p.b))
                .collect();
            if pts.len() >= 2 {
                canvas.polyline(&pts, "#cc2222", 1.4);
                canvas.text(pts[pts.len() / 2], &curve.to_string(), "#cc2222");
            }
        }
    }
    Ok(canvas.finish())
}

// ----------------------------------------------------------- verify-tables

fn cmd_verify_tables(table: &str, steps: usize, opts: &Opts) -> Result<u8, Failure> {
    let (do1, do2) = match table {
        "1" => (true, false),
        "2" => (false, true),
        "all" => (true, true),
        _ => return Err(usage("--table must be 1, 2 or all")),
    };
    if opts.format.is_some_and(|f| f != Format::Csv) {
        return Err(usage("verify-tables emits a plain-text summary only"));
    }
    let mut s = String::new();
    let mut ok = true;
    if do1 {
        let mut worst: (f64, CurveId, f64, f64) = (0.0, CurveId::C1, 0.0, 0.0);
        for curve in CurveId::all() {
            let trace = boundary::trace_curve(curve, steps)?;
            for pt in &trace.points {
                let r = table1_residual(curve.index(), pt.a, pt.b).abs();
                if r > worst.0 {
                    worst = (r, curve, pt.a, pt.b);
                }
            }
        }
        let pass = worst.0 < 1e-8;
        ok &= pass;
        let _ = writeln!(
            s,
            "table 1: max |residual| = {:.3e} on {} at (a={:.6}, b={:.6}) [{}]",
            worst.0,
            worst.1,
            worst.2,
            worst.3,
            if pass { "ok" } else { "FAIL" }
        );
    }
    if do2 {
        let mut worst = (0.0f64, 0usize);
        for n in 1..=6 {
            let (_, ra, rb) = TABLE2_REF[n - 1];
            let (a, b) = solve_endpoint(n)?;
            let d = (a - ra).abs().max((b - rb).abs());
            if d > worst.0 {
                worst = (d, n);
            }
        }
        let pass = worst.0 < 1e-6;
        ok &= pass;
        let _ = writeln!(
            s,
            "table 2: max endpoint deviation = {:.3e} on corner {} [{}]",
            worst.0,
            worst.1,
            if pass { "ok" } else { "FAIL" }
        );
    }
    write_out(&opts.out, &s)?;
    if ok {
        Ok(0)
    } else {
        Ok(3)
    }
}
