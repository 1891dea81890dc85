//! Command execution and report emission.

use crate::config::{self, FileConfig, Globals, RunError, TableExt};
use crate::{Cli, Command};

use ntmoments::cache::{self, CacheStatus};
use ntmoments::error_terms::{CircleEvaluator, CuspEvaluator, DeltaEvaluator, ErrorTermKind};
use ntmoments::moments::{
    circle_diff_sq_fit, circle_diff_sq_integral, cusp_diff_sq_integral, delta_diff_sq_fit,
    delta_diff_sq_sum, e_diff_sq_integral, fourth_moment_probe, fourth_moment_range_warning,
    jutila_identity_check, MomentReport, ProbeTarget,
};
use ntmoments::numeric::fnv1a64;
use ntmoments::probes::{
    count_close_quadruples, large_value_report, scan_peaks, QuadrupleCountResult,
};
use ntmoments::tables::{fit_summatory, ArithTable, TableKind};
use ntmoments::voronoi::truncation_sweep;
use ntmoments::zeta::QuadratureConfig;

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;

pub fn run(cli: Cli) -> Result<(), RunError> {
    let file = match &cli.config {
        Some(path) => config::load_file(path)?,
        None => FileConfig::default(),
    };
    let globals = config::resolve_globals(cli.seed, cli.cache_dir, cli.output, cli.threads, &file);
    if let Some(n) = globals.threads {
        // ignore failures: the global pool may already exist in tests
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    fs::create_dir_all(&globals.output)
        .map_err(|e| RunError::Config(format!("cannot create output dir: {e}")))?;

    let outcome = dispatch(&cli.command, &file, &globals);
    if let Err(err) = &outcome {
        // machine-readable error record alongside the reports
        let record = serde_json::json!({
            "error": err.message(),
            "kind": err.kind_label(),
        });
        let path = globals.output.join("error.json");
        if let Ok(mut f) = OpenOptions::new().create(true).append(true).open(path) {
            let _ = writeln!(f, "{record}");
        }
    }
    outcome
}

fn dispatch(cmd: &Command, file: &FileConfig, g: &Globals) -> Result<(), RunError> {
    match cmd {
        Command::Sieve(args) => sieve(args, &file.sieve, g),
        Command::Delta(args) => delta(args, &file.delta, g),
        Command::Ecurve(args) => ecurve(args, &file.ecurve, g),
        Command::Moment(args) => moment(args, &file.moment, g),
        Command::Jutila(args) => jutila(args, &file.jutila, g),
        Command::VoronoiCheck(args) => voronoi_check(args, &file.voronoi_check, g),
        Command::Quadruples(args) => quadruples(args, &file.quadruples, g),
        Command::LargeValues(args) => large_values(args, &file.large_values, g),
        Command::FitSummatory(args) => fit_summatory_cmd(args, &file.fit_summatory, g),
    }
}

fn parse_table_kind(s: &str) -> Result<TableKind, RunError> {
    match s {
        "d" | "divisor" => Ok(TableKind::Divisor),
        "r" | "two-squares" => Ok(TableKind::TwoSquares),
        "tau" => Ok(TableKind::RamanujanTau),
        other => Err(RunError::Config(format!(
            "unknown table kind '{other}' (expected d | r | tau)"
        ))),
    }
}

fn parse_term_kind(s: &str) -> Result<ErrorTermKind, RunError> {
    match s {
        "delta" => Ok(ErrorTermKind::DirichletDelta),
        "delta-star" => Ok(ErrorTermKind::AlternatingDeltaStar),
        "circle" => Ok(ErrorTermKind::CircleP),
        "cusp" => Ok(ErrorTermKind::CuspA),
        other => Err(RunError::Config(format!(
            "unknown error-term kind '{other}' (expected delta | delta-star | circle | cusp)"
        ))),
    }
}

fn require<T>(v: Option<T>, what: &str) -> Result<T, RunError> {
    v.ok_or_else(|| RunError::Config(format!("missing required parameter: {what}")))
}

/// Deterministic run id from the resolved parameters and seed.
fn run_id(canonical: &str, seed: u64) -> String {
    format!(
        "{:016x}",
        fnv1a64(format!("{canonical};seed={seed}").as_bytes())
    )
}

fn write_json_lines(path: &Path, lines: &[String]) -> Result<(), RunError> {
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| RunError::Failure(format!("cannot open {}: {e}", path.display())))?;
    for line in lines {
        writeln!(f, "{line}").map_err(|e| RunError::Failure(e.to_string()))?;
    }
    Ok(())
}

fn append_ledger(output: &Path, reports: &[MomentReport]) -> Result<(), RunError> {
    let path = output.join("ledger.csv");
    let fresh = !path.exists();
    let mut f = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&path)
        .map_err(|e| RunError::Failure(format!("cannot open ledger: {e}")))?;
    if fresh {
        writeln!(f, "{}", MomentReport::CSV_HEADER)
            .map_err(|e| RunError::Failure(e.to_string()))?;
    }
    for rep in reports {
        writeln!(f, "{}", rep.csv_row()).map_err(|e| RunError::Failure(e.to_string()))?;
    }
    Ok(())
}

fn load_table(
    g: &Globals,
    kind: TableKind,
    limit: u64,
) -> Result<(ArithTable, CacheStatus), RunError> {
    Ok(cache::load_or_build_table(&g.cache_dir, kind, limit)?)
}

// ---------------------------------------------------------------------------

fn sieve(args: &crate::SieveArgs, tbl: &toml::Table, g: &Globals) -> Result<(), RunError> {
    let kind_s = args.kind.clone().or_else(|| tbl.get_str("kind"));
    let kind = parse_table_kind(&require(kind_s, "--kind")?)?;
    let limit = require(args.limit.or_else(|| tbl.get_u64("limit")), "--limit")?;
    let started = std::time::Instant::now();
    let (table, status) = load_table(g, kind, limit)?;
    let status_s = match status {
        CacheStatus::Hit => "cache hit",
        CacheStatus::Rebuilt => "rebuilt",
    };
    println!(
        "sieve {} limit {}: {} in {:.2}s (value at limit: {})",
        kind.label(),
        limit,
        status_s,
        started.elapsed().as_secs_f64(),
        table.value(limit)
    );
    Ok(())
}

fn delta(args: &crate::DeltaArgs, tbl: &toml::Table, g: &Globals) -> Result<(), RunError> {
    let kind_s = args.kind.clone().or_else(|| tbl.get_str("kind"));
    let kind = parse_term_kind(&require(kind_s, "--kind")?)?;
    let mut points = args.points.clone();
    if let (Some(lo), Some(hi)) = (args.sweep_lo, args.sweep_hi) {
        if hi <= lo {
            return Err(RunError::Config("sweep_hi must exceed sweep_lo".into()));
        }
        points.extend((lo..hi).map(|n| n as f64 + 0.5));
    }
    if points.is_empty() {
        return Err(RunError::Config(
            "no evaluation points (use --x or --sweep-lo/--sweep-hi)".into(),
        ));
    }
    let max_x = points.iter().cloned().fold(0.0f64, f64::max);
    let canonical = format!("delta;kind={};n={};max={max_x}", kind.label(), points.len());
    let id = run_id(&canonical, g.seed);

    let needed = match kind {
        ErrorTermKind::AlternatingDeltaStar => 4.0 * max_x,
        _ => max_x,
    }
    .ceil() as u64
        + 1;
    let values: Vec<(f64, f64)> = match kind {
        ErrorTermKind::DirichletDelta => {
            let (t, _) = load_table(g, TableKind::Divisor, needed)?;
            let e = DeltaEvaluator::new(&t)?;
            points
                .iter()
                .map(|&x| Ok((x, e.delta(x)?)))
                .collect::<Result<_, ntmoments::Error>>()?
        }
        ErrorTermKind::AlternatingDeltaStar => {
            let (t, _) = load_table(g, TableKind::Divisor, needed)?;
            let e = DeltaEvaluator::new(&t)?;
            points
                .iter()
                .map(|&x| Ok((x, e.delta_star(x)?.value())))
                .collect::<Result<_, ntmoments::Error>>()?
        }
        ErrorTermKind::CircleP => {
            let (t, _) = load_table(g, TableKind::TwoSquares, needed)?;
            let e = CircleEvaluator::new(&t)?;
            points
                .iter()
                .map(|&x| Ok((x, e.circle_p(x)?)))
                .collect::<Result<_, ntmoments::Error>>()?
        }
        ErrorTermKind::CuspA => {
            let (t, _) = load_table(g, TableKind::RamanujanTau, needed)?;
            let e = CuspEvaluator::new(&t)?;
            points
                .iter()
                .map(|&x| Ok((x, e.cusp_a(x)?)))
                .collect::<Result<_, ntmoments::Error>>()?
        }
    };

    let csv_path = g.output.join(format!("{id}-delta.csv"));
    let mut out = String::from("x,value\n");
    for (x, v) in &values {
        out.push_str(&format!("{x},{v}\n"));
    }
    fs::write(&csv_path, out).map_err(|e| RunError::Failure(e.to_string()))?;
    println!(
        "delta kind {} at {} points -> {} (last: {}({}) = {:.6})",
        kind.label(),
        values.len(),
        csv_path.display(),
        kind.label(),
        values.last().unwrap().0,
        values.last().unwrap().1
    );
    Ok(())
}

fn quad_config(args: &crate::EcurveArgs, tbl: &toml::Table) -> QuadratureConfig {
    let mut cfg = QuadratureConfig::default();
    if let Some(s) = args.step.or_else(|| tbl.get_f64("step")) {
        cfg.step = s;
    }
    if let Some(t) = args.tolerance.or_else(|| tbl.get_f64("tolerance")) {
        cfg.tolerance = t;
    }
    if let Some(o) = args.order.or_else(|| tbl.get_u64("order").map(|v| v as u8)) {
        cfg.rs_correction_order = o;
    }
    if let Some(c) = args.cutoff.or_else(|| tbl.get_f64("cutoff")) {
        cfg.small_t_cutoff = c;
    }
    cfg
}

fn ecurve(args: &crate::EcurveArgs, tbl: &toml::Table, g: &Globals) -> Result<(), RunError> {
    let t_min = require(args.t_min.or_else(|| tbl.get_f64("t_min")), "--t-min")?;
    let t_max = require(args.t_max.or_else(|| tbl.get_f64("t_max")), "--t-max")?;
    let cfg = quad_config(args, tbl);
    let started = std::time::Instant::now();
    let (curve, status) = cache::load_or_build_curve(&g.cache_dir, t_min, t_max, &cfg)?;
    let path = cache::curve_cache_path(&g.cache_dir, t_min, t_max, &cfg);
    println!(
        "ecurve [{t_min}, {t_max}] step {}: {} in {:.2}s, {} grid points, half-step diff {:.3e} -> {}",
        cfg.step,
        match status {
            CacheStatus::Hit => "cache hit",
            CacheStatus::Rebuilt => "rebuilt",
        },
        started.elapsed().as_secs_f64(),
        curve.grid().len(),
        curve.half_step_discrepancy(),
        path.display()
    );
    Ok(())
}

fn moment(args: &crate::MomentArgs, tbl: &toml::Table, g: &Globals) -> Result<(), RunError> {
    let kind = require(args.kind.clone().or_else(|| tbl.get_str("kind")), "--kind")?;
    let t = require(args.t.or_else(|| tbl.get_u64("T")), "--T")?;
    let mut us = args.u.clone();
    if us.is_empty() {
        us = tbl.get_u64_list("U").unwrap_or_default();
    }
    if us.is_empty() {
        return Err(RunError::Config("missing required parameter: --U".into()));
    }
    let k = args
        .k
        .or_else(|| tbl.get_u64("k").map(|v| v as u32))
        .unwrap_or(2);
    let canonical = format!("moment;kind={kind};T={t};U={us:?};k={k}");
    let id = run_id(&canonical, g.seed);

    let mut reports: Vec<MomentReport> = Vec::new();
    let mut fit_note = String::new();
    match (kind.as_str(), k) {
        ("delta", 2) => {
            for &u in &us {
                if (u as f64) > 0.5 * (t as f64).sqrt() {
                    eprintln!(
                        "warning: U={u} exceeds ½√T; the log³ main-term scale degrades there"
                    );
                }
            }
            let (table, _) =
                load_table(g, TableKind::Divisor, 2 * t + us.iter().max().unwrap() + 1)?;
            let eval = DeltaEvaluator::new(&table)?;
            if us.len() >= 6 {
                let fit = delta_diff_sq_fit(t, &us, &eval)?;
                fit_note = format!(
                    ", c3 = {:.4} (ref {:.4}, rel {:.3})",
                    fit.leading,
                    fit.reference.unwrap(),
                    fit.relative_error.unwrap()
                );
                reports = fit.reports;
                let coeffs = fit.coeffs.clone();
                for r in &mut reports {
                    r.coeffs = Some(coeffs.clone());
                }
            } else {
                for &u in &us {
                    reports.push(delta_diff_sq_sum(t, u, &eval)?);
                }
            }
        }
        ("delta", 4) => {
            let g_max = *us.iter().max().unwrap();
            let (table, _) = load_table(g, TableKind::Divisor, 2 * t + g_max + 1)?;
            let eval = DeltaEvaluator::new(&table)?;
            for &u in &us {
                if let Some(w) = fourth_moment_range_warning(t as f64, u as f64) {
                    eprintln!("warning: {w}");
                }
                reports.push(fourth_moment_probe(
                    ProbeTarget::Delta(&eval),
                    t as f64,
                    u as f64,
                )?);
            }
        }
        ("circle", 2) => {
            let (table, _) = load_table(
                g,
                TableKind::TwoSquares,
                2 * t + us.iter().max().unwrap() + 1,
            )?;
            let eval = CircleEvaluator::new(&table)?;
            if us.len() >= 3 {
                let fit = circle_diff_sq_fit(t, &us, &eval)?;
                fit_note = format!(", A1 = {:.4}, A2 = {:.4}", fit.leading, fit.coeffs[0]);
                reports = fit.reports;
            } else {
                for &u in &us {
                    reports.push(circle_diff_sq_integral(t, u, &eval)?);
                }
            }
        }
        ("cusp", 2) => {
            let (table, _) = load_table(
                g,
                TableKind::RamanujanTau,
                2 * t + us.iter().max().unwrap() + 1,
            )?;
            let eval = CuspEvaluator::new(&table)?;
            for &u in &us {
                reports.push(cusp_diff_sq_integral(t, u, &eval)?);
            }
        }
        ("e", 2) | ("e", 4) => {
            let u_max = *us.iter().max().unwrap() as f64;
            let cfg = QuadratureConfig::default();
            let tf = t as f64;
            let (lo, hi) = if k == 4 {
                (tf - u_max, 2.0 * tf + u_max)
            } else {
                (tf, 2.0 * tf + u_max)
            };
            let (curve, _) =
                cache::load_or_build_curve(&g.cache_dir, (lo - 1.0).max(0.0), hi + 1.0, &cfg)?;
            for &u in &us {
                let rep = if k == 4 {
                    fourth_moment_probe(ProbeTarget::E(&curve), tf, u as f64)?
                } else {
                    e_diff_sq_integral(tf, u as f64, &curve)?
                };
                reports.push(rep);
            }
        }
        (other, k) => {
            return Err(RunError::Config(format!(
                "unsupported moment: kind '{other}' with k = {k}"
            )));
        }
    }
    for rep in &mut reports {
        rep.seed = g.seed;
    }
    let json: Vec<String> = reports.iter().map(|r| r.json_line()).collect();
    write_json_lines(&g.output.join(format!("{id}-moment.json")), &json)?;
    append_ledger(&g.output, &reports)?;
    let last = reports.last().unwrap();
    println!(
        "moment kind {kind} k {k} T {t} over {} shifts: ratio {:.4}{fit_note} ({} rows appended)",
        reports.len(),
        last.ratio,
        reports.len()
    );
    Ok(())
}

fn jutila(args: &crate::JutilaArgs, tbl: &toml::Table, g: &Globals) -> Result<(), RunError> {
    let t = require(args.t.or_else(|| tbl.get_u64("T")), "--T")?;
    let h = args.h.or_else(|| tbl.get_u64("H")).unwrap_or(t);
    let u = require(args.u.or_else(|| tbl.get_u64("U")), "--U")?;
    let (table, _) = load_table(g, TableKind::Divisor, t + h + u + 1)?;
    let eval = DeltaEvaluator::new(&table)?;
    let check = jutila_identity_check(t, h, u, &eval)?;
    let id = run_id(&format!("jutila;T={t};H={h};U={u}"), g.seed);
    let line = serde_json::json!({
        "T": t, "H": h, "U": u,
        "lhs": check.lhs, "rhs": check.rhs, "ratio": check.ratio(),
    })
    .to_string();
    write_json_lines(&g.output.join(format!("{id}-jutila.json")), &[line])?;
    println!(
        "jutila T {t} H {h} U {u}: lhs {:.6e} rhs {:.6e} ratio {:.4}",
        check.lhs,
        check.rhs,
        check.ratio()
    );
    Ok(())
}

fn voronoi_check(
    args: &crate::VoronoiArgs,
    tbl: &toml::Table,
    g: &Globals,
) -> Result<(), RunError> {
    let kind_s = args.kind.clone().or_else(|| tbl.get_str("kind"));
    let kind = parse_term_kind(&require(kind_s, "--kind")?)?;
    let x_lo = require(args.x_lo.or_else(|| tbl.get_f64("x_lo")), "--x-lo")?;
    let x_hi = require(args.x_hi.or_else(|| tbl.get_f64("x_hi")), "--x-hi")?;
    let samples = args
        .samples
        .or_else(|| tbl.get_u64("samples").map(|v| v as usize))
        .unwrap_or(1000);
    let mut terms = args.terms.clone();
    if terms.is_empty() {
        terms = tbl
            .get_u64_list("terms")
            .map(|v| v.into_iter().map(|x| x as usize).collect())
            .unwrap_or_else(|| vec![100, 1000, 10_000]);
    }
    let (tk, needed) = match kind {
        ErrorTermKind::DirichletDelta => (TableKind::Divisor, x_hi),
        ErrorTermKind::AlternatingDeltaStar => (TableKind::Divisor, 4.0 * x_hi),
        ErrorTermKind::CircleP => (TableKind::TwoSquares, x_hi),
        ErrorTermKind::CuspA => (TableKind::RamanujanTau, x_hi),
    };
    let limit = (needed.ceil() as u64 + 8).max(*terms.last().unwrap() as u64);
    let (table, _) = load_table(g, tk, limit)?;
    let sweep = truncation_sweep(kind, &table, x_lo, x_hi, samples, g.seed, &terms)?;
    let id = run_id(
        &format!(
            "voronoi;kind={};lo={x_lo};hi={x_hi};s={samples};terms={terms:?}",
            kind.label()
        ),
        g.seed,
    );
    let csv_path = g.output.join(format!("{id}-voronoi.csv"));
    let mut out = String::from("n_terms,rms\n");
    for (n, r) in sweep.n_values.iter().zip(&sweep.rms) {
        out.push_str(&format!("{n},{r}\n"));
    }
    fs::write(&csv_path, out).map_err(|e| RunError::Failure(e.to_string()))?;
    println!(
        "voronoi-check {} over [{x_lo}, {x_hi}] x {samples}: rms {:?}, mean-square slope {:.3} -> {}",
        kind.label(),
        sweep.rms,
        sweep.slope,
        csv_path.display()
    );
    Ok(())
}

fn quadruples(
    args: &crate::QuadruplesArgs,
    tbl: &toml::Table,
    g: &Globals,
) -> Result<(), RunError> {
    let mut ns = args.n.clone();
    if ns.is_empty() {
        ns = tbl.get_u64_list("N").unwrap_or_default();
    }
    if ns.is_empty() {
        return Err(RunError::Config("missing required parameter: --N".into()));
    }
    let k = args
        .k
        .or_else(|| tbl.get_u64("k").map(|v| v as u32))
        .unwrap_or(2);
    let delta = args.delta.or_else(|| tbl.get_f64("delta")).unwrap_or(0.0);
    let results: Vec<QuadrupleCountResult> = ns
        .iter()
        .map(|&n| count_close_quadruples(n, k, delta))
        .collect::<Result<_, _>>()?;
    let id = run_id(&format!("quadruples;N={ns:?};k={k};delta={delta}"), g.seed);
    let csv_path = g.output.join(format!("{id}-quadruples.csv"));
    let mut out = String::from(QuadrupleCountResult::csv_header());
    out.push('\n');
    for r in &results {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    fs::write(&csv_path, out).map_err(|e| RunError::Failure(e.to_string()))?;
    for r in &results {
        println!(
            "quadruples N {} k {} delta {}: count {} (bound scale {:.4e})",
            r.n, r.k, r.delta, r.count, r.bound_scale
        );
    }
    Ok(())
}

fn large_values(
    args: &crate::LargeValuesArgs,
    tbl: &toml::Table,
    g: &Globals,
) -> Result<(), RunError> {
    let t = require(args.t.or_else(|| tbl.get_f64("T")), "--T")?;
    let v = require(args.v.or_else(|| tbl.get_f64("V")), "--V")?;
    let k = args
        .k
        .or_else(|| tbl.get_u64("k").map(|x| x as u32))
        .unwrap_or(2);
    let a = args.a.or_else(|| tbl.get_f64("A")).unwrap_or(1.0);
    let grid_step = args
        .grid_step
        .or_else(|| tbl.get_f64("grid_step"))
        .unwrap_or(0.05);
    let cfg = QuadratureConfig::default();
    let peaks = scan_peaks(t, v, grid_step, &cfg)?;
    let big_g = a * (v / t.ln()) * (v / t.ln());
    let (curve, _) = cache::load_or_build_curve(
        &g.cache_dir,
        (t / 3.0 - 2.0 * big_g - 1.0).max(0.0),
        3.0 * t + 2.0 * big_g + 1.0,
        &cfg,
    )?;
    let rep = large_value_report(&peaks, k, a, &curve)?;
    let id = run_id(
        &format!("large-values;T={t};V={v};k={k};A={a};step={grid_step}"),
        g.seed,
    );
    let line = serde_json::to_string(&rep).expect("report serialization");
    write_json_lines(&g.output.join(format!("{id}-large-values.json")), &[line])?;
    println!(
        "large-values T {t} V {v} k {k}: R {} G {:.4} rhs {:.4e} implied constant {:.4e}",
        rep.r, rep.g, rep.rhs, rep.implied_constant
    );
    Ok(())
}

fn fit_summatory_cmd(
    args: &crate::FitArgs,
    tbl: &toml::Table,
    g: &Globals,
) -> Result<(), RunError> {
    let kind_s = args.kind.clone().or_else(|| tbl.get_str("kind"));
    let kind = parse_table_kind(&require(kind_s, "--kind")?)?;
    let x_lo = require(args.x_lo.or_else(|| tbl.get_f64("x_lo")), "--x-lo")?;
    let x_hi = require(args.x_hi.or_else(|| tbl.get_f64("x_hi")), "--x-hi")?;
    let points = args
        .points
        .or_else(|| tbl.get_u64("points").map(|v| v as usize))
        .unwrap_or(10);
    if points < 6 || !(x_lo > 1.0 && x_lo < x_hi) {
        return Err(RunError::Config(
            "fit-summatory needs x_hi > x_lo > 1 and at least 6 points".into(),
        ));
    }
    let grid: Vec<f64> = (0..points)
        .map(|i| x_lo * (x_hi / x_lo).powf(i as f64 / (points - 1) as f64))
        .collect();
    let (table, _) = load_table(g, kind, x_hi.ceil() as u64)?;
    let fit = fit_summatory(&table, &grid)?;
    let id = run_id(
        &format!("fit;kind={};lo={x_lo};hi={x_hi};n={points}", kind.label()),
        g.seed,
    );
    let line = serde_json::json!({
        "kind": kind.label(),
        "degree": fit.degree,
        "leading_coeff": fit.leading_coeff,
        "reference_coeff": fit.reference_coeff,
        "relative_error": fit.relative_error,
        "coeffs": fit.coeffs,
        "condition": fit.condition,
    })
    .to_string();
    write_json_lines(&g.output.join(format!("{id}-fit.json")), &[line])?;
    match (fit.reference_coeff, fit.relative_error) {
        (Some(r), Some(rel)) => println!(
            "fit-summatory {}: leading {:.6} vs reference {:.6} (rel {:.4})",
            kind.label(),
            fit.leading_coeff,
            r,
            rel
        ),
        _ => println!(
            "fit-summatory {}: leading {:.6e} (fit-only)",
            kind.label(),
            fit.leading_coeff
        ),
    }
    Ok(())
}
