use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use wallach_core::census::{self, SOTriple, TableRow};
use wallach_core::einstein::{solve, Certificate, EinsteinSolution};
use wallach_core::exactnum::{format_fixed, parse_rational};
use wallach_core::flow::{self, Bounds, EquilibriumReport, StabilityClass};
use wallach_core::omega::{classify_region, eval_q, symfun};
use wallach_core::wallach::{
    catalog_space, expected_region, AParams, Expected, GWSpace, LineParams, Region, CATALOG,
};
use wallach_core::{FlowF64, Number, Rational};

use crate::{Cli, CliError, CliResult, Command, Format, Output, RunConfig, SpaceArgs, Table};

/// Execute a parsed command line and return what it printed.
pub fn run(cli: &Cli) -> CliResult<(RunConfig, Output)> {
    let cfg = RunConfig::from_cli(cli)?;
    let out = match &cli.command {
        Command::Classify { a } => classify(a)?,
        Command::Solve { space, boundary } => solve_cmd(&cfg, space, *boundary)?,
        Command::Flow { space, x0, t_max, step, every, perturb } => {
            flow_cmd(&cfg, space, x0, *t_max, *step, *every, *perturb)?
        }
        Command::Portrait { space, grid, bounds } => portrait(&cfg, space, *grid, bounds.as_deref())?,
        Command::Census { max, solve, table3 } => census_cmd(&cfg, *max, *solve, *table3)?,
        Command::ScanZeros { max } => scan_zeros(&cfg, *max)?,
        Command::Catalog { line, klm, l } => catalog(*line, klm.as_deref(), *l)?,
    };
    Ok((cfg, out))
}

fn rational_arg(s: &str) -> CliResult<Rational> {
    parse_rational(s).ok_or_else(|| CliError::Usage(format!("not an exact rational: {s:?} (use p/q)")))
}

fn params_arg(a: &[String], boundary: bool) -> CliResult<AParams> {
    let [a1, a2, a3] = match a {
        [x, y, z] => [rational_arg(x)?, rational_arg(y)?, rational_arg(z)?],
        _ => return Err(CliError::Usage("expected three parameters".into())),
    };
    Ok(if boundary {
        AParams::with_boundary(a1, a2, a3)?
    } else {
        AParams::new(a1, a2, a3)?
    })
}

fn triple_arg(v: &[u64]) -> CliResult<SOTriple> {
    match v {
        [k, l, m] => Ok(SOTriple::new(*k, *l, *m)?),
        _ => Err(CliError::Usage("expected three integers".into())),
    }
}

fn space_arg(args: &SpaceArgs, allow_boundary: bool) -> CliResult<GWSpace> {
    if let Some(a) = &args.a {
        return Ok(GWSpace::from_params(params_arg(a, allow_boundary)?));
    }
    let t = triple_arg(args.so.as_deref().unwrap_or_default())?;
    Ok(if allow_boundary {
        census::so_space_boundary(&t)?
    } else {
        census::so_space(&t)?
    })
}

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(q.to_string())).collect())
}

fn dec_f64(x: f64, cfg: &RunConfig) -> String {
    match Rational::from_float(x) {
        Some(q) => format_fixed(&q, cfg.digits),
        None => x.to_string(),
    }
}

fn space_json(s: &GWSpace) -> Value {
    json!({ "a": rationals(s.params.as_array()), "d": rationals(&s.d) })
}

fn classify(a: &[String]) -> CliResult<Output> {
    let p = params_arg(a, false)?;
    let label = classify_region(&p)?;
    let s1 = symfun(&p).s1;
    let a_str: Vec<String> = p.as_array().iter().map(|q| q.to_string()).collect();
    let mut t = Table::new(&["a1", "a2", "a3", "s1", "Q_sign", "region", "method"]);
    let mut row = a_str.clone();
    row.extend([s1.to_string(), label.q_sign.to_string(), label.region.to_string(), label.method.name().into()]);
    t.push(row);
    Ok(Output {
        json: json!({
            "a": a_str,
            "s1": s1.to_string(),
            "Q_sign": label.q_sign,
            "region": label.region.name(),
            "method": label.method.name(),
        }),
        tables: vec![t],
        ..Default::default()
    })
}

/// Exact form when one exists, otherwise a decimal.
fn number_str(n: &Number, cfg: &RunConfig) -> String {
    match n {
        Number::Rational(q) => q.to_string(),
        Number::Quad(q) => q.to_string(),
        Number::Enclosure(_) => n.to_fixed(cfg.digits),
    }
}

fn certification_width(cfg: &RunConfig) -> Rational {
    let e = (cfg.digits + 5).max(30) as u32;
    Rational::new(1.into(), BigInt::from(10u32).pow(e))
}

fn solution_row(i: usize, s: &EinsteinSolution, cfg: &RunConfig) -> (Value, Vec<String>) {
    let xs = s.metric.components();
    let exact: Vec<String> = xs.iter().map(|x| number_str(x, cfg)).collect();
    let decimal: Vec<String> = xs.iter().map(|x| x.to_fixed(cfg.digits)).collect();
    let is_exact = xs.iter().all(Number::is_exact);
    let cert = match s.certificate {
        Certificate::ExactZero => "exact",
        Certificate::Enclosure { .. } => "enclosure",
    };
    let iso = s.isometric_to.map_or(String::new(), |j| j.to_string());
    let json = json!({
        "index": i,
        "x1": exact[0], "x2": exact[1], "x3": exact[2],
        "decimal": decimal,
        "exact": is_exact,
        "multiplicity": s.multiplicity,
        "isometric_flag": s.isometric_to.is_some(),
        "isometric_to": s.isometric_to,
        "certificate": cert,
    });
    let mut row = vec![i.to_string()];
    row.extend(exact);
    row.extend(decimal);
    row.extend([
        is_exact.to_string(),
        s.multiplicity.to_string(),
        s.isometric_to.is_some().to_string(),
        iso,
        cert.to_string(),
    ]);
    (json, row)
}

fn solve_cmd(cfg: &RunConfig, args: &SpaceArgs, boundary: bool) -> CliResult<Output> {
    let space = space_arg(args, boundary || args.so.is_some())?;
    let sols = solve(&space.params, &certification_width(cfg))?;
    let mut t = Table::new(&[
        "index", "x1", "x2", "x3", "x1_dec", "x2_dec", "x3_dec", "exact", "multiplicity", "isometric_flag",
        "isometric_to", "certificate",
    ]);
    let mut list = Vec::new();
    for (i, s) in sols.iter().enumerate() {
        let (j, r) = solution_row(i, s, cfg);
        list.push(j);
        t.push(r);
    }
    Ok(Output {
        json: json!({ "space": space_json(&space), "classes": sols.len(), "solutions": list }),
        tables: vec![t],
        ..Default::default()
    })
}

fn parse_floats(s: &str, n: usize, what: &str) -> CliResult<Vec<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("{what}: {e}")))?;
    if v.len() != n {
        return Err(CliError::Usage(format!("{what}: expected {n} comma-separated numbers")));
    }
    Ok(v)
}

/// Multiply each coordinate by `1 + eps u_i`, `u_i` uniform in `[-1, 1]`,
/// then rescale back onto the starting volume.
fn perturb(co: &FlowF64, x: [f64; 3], eps: f64, seed: u64) -> [f64; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let y = x.map(|v| v * (1.0 + eps * rng.gen_range(-1.0..=1.0)));
    let total: f64 = co.d.iter().sum();
    let lambda = ((co.log_volume(&x) - co.log_volume(&y)) / total).exp();
    y.map(|v| v * lambda)
}

fn flow_cmd(
    cfg: &RunConfig,
    args: &SpaceArgs,
    x0: &str,
    t_max: f64,
    step: f64,
    every: usize,
    eps: Option<f64>,
) -> CliResult<Output> {
    if every == 0 {
        return Err(CliError::Usage("--every must be at least 1".into()));
    }
    let space = space_arg(args, false)?;
    let v = parse_floats(x0, 3, "--x0")?;
    let mut x = [v[0], v[1], v[2]];
    if let Some(eps) = eps {
        x = perturb(&FlowF64::new(&space), x, eps, cfg.seed);
    }
    let tr = flow::integrate_f64(&space, x, t_max, step)?;
    let mut t = Table::new(&["t", "x1", "x2", "x3", "v1", "v2", "v3", "volume"]);
    let mut rows = Vec::new();
    let last = tr.samples.len() - 1;
    for (i, s) in tr.samples.iter().enumerate() {
        if i % every != 0 && i != last {
            continue;
        }
        let cells: Vec<String> = [s.t, s.x[0], s.x[1], s.x[2], s.v[0], s.v[1], s.v[2], s.volume]
            .iter()
            .map(|&c| dec_f64(c, cfg))
            .collect();
        rows.push(json!({
            "t": cells[0], "x1": cells[1], "x2": cells[2], "x3": cells[3],
            "v1": cells[4], "v2": cells[5], "v3": cells[6], "volume": cells[7],
            "mean_curvature": dec_f64(s.mean_curvature, cfg),
        }));
        t.push(cells);
    }
    let halted = tr.halted.map(|h| format!("{h:?}"));
    let mut warnings = Vec::new();
    if let Some(h) = &halted {
        warnings.push(format!("integration halted early: {h}"));
    }
    Ok(Output {
        json: json!({
            "space": space_json(&space),
            "x0": x.map(|c| dec_f64(c, cfg)),
            "step": dec_f64(step, cfg),
            "halted": halted,
            "max_volume_drift": format!("{:e}", tr.max_volume_drift),
            "samples": rows,
        }),
        tables: vec![t],
        warnings,
        default_format: Some(Format::Csv),
    })
}

fn class_counts(reports: &[EquilibriumReport]) -> Value {
    let mut m = serde_json::Map::new();
    for c in [
        StabilityClass::StableNode,
        StabilityClass::UnstableNode,
        StabilityClass::Saddle,
        StabilityClass::Focus,
        StabilityClass::Degenerate,
    ] {
        let n = reports.iter().filter(|r| r.class == c).count();
        if n > 0 {
            m.insert(c.name().into(), n.into());
        }
    }
    Value::Object(m)
}

fn equilibria_table(reports: &[EquilibriumReport], cfg: &RunConfig) -> (Table, Vec<Value>) {
    let mut t = Table::new(&["x1", "x2", "x3", "lambda1_re", "lambda1_im", "lambda2_re", "lambda2_im", "class"])
        .named("equilibria");
    let mut js = Vec::new();
    for r in reports {
        let x: Vec<String> = r.metric.components().iter().map(|c| c.to_fixed(cfg.digits)).collect();
        let ev: Vec<String> = match &r.eigenvalues {
            flow::Eigenvalues::Real(p, q) => {
                vec![p.to_fixed(cfg.digits), "0".into(), q.to_fixed(cfg.digits), "0".into()]
            }
            flow::Eigenvalues::Complex { re, im } => vec![
                re.to_fixed(cfg.digits),
                im.to_fixed(cfg.digits),
                re.to_fixed(cfg.digits),
                (-im.clone()).to_fixed(cfg.digits),
            ],
        };
        let jac: Vec<Vec<String>> =
            r.jacobian.iter().map(|row| row.iter().map(|v| v.to_fixed(cfg.digits)).collect()).collect();
        js.push(json!({
            "x": x,
            "jacobian": jac,
            "eigenvalues": [[ev[0], ev[1]], [ev[2], ev[3]]],
            "class": r.class.name(),
        }));
        let mut row = x;
        row.extend(ev);
        row.push(r.class.name().into());
        t.push(row);
    }
    (t, js)
}

fn parse_bounds(s: &str) -> CliResult<Bounds> {
    let v = parse_floats(s, 4, "--bounds")?;
    Ok(Bounds { x1: (v[0], v[1]), x2: (v[2], v[3]) })
}

fn portrait(cfg: &RunConfig, args: &SpaceArgs, grid: usize, bounds: Option<&str>) -> CliResult<Output> {
    let space = space_arg(args, false)?;
    let bounds = match bounds {
        Some(b) => parse_bounds(b)?,
        None => flow::default_bounds(&flow::equilibria(&space)?),
    };
    let p = flow::portrait_grid(&space, grid, bounds)?;
    let mut t = Table::new(&["x1", "x2", "v1", "v2"]).named("samples");
    let mut samples = Vec::new();
    for s in &p.samples {
        let cells: Vec<String> = [s.x1, s.x2, s.v1, s.v2].iter().map(|&c| dec_f64(c, cfg)).collect();
        samples.push(json!({ "x1": cells[0], "x2": cells[1], "v1": cells[2], "v2": cells[3] }));
        t.push(cells);
    }
    let (et, ej) = equilibria_table(&p.equilibria, cfg);
    let mut warnings = Vec::new();
    if p.equilibria.iter().any(|e| e.class == StabilityClass::Focus) {
        if let Ok(label) = classify_region(&space.params) {
            if label.region != Region::Omega {
                warnings.push(format!("anomaly: focus equilibrium in region {}", label.region));
            }
        }
    }
    Ok(Output {
        json: json!({
            "space": space_json(&space),
            "bounds": [dec_f64(bounds.x1.0, cfg), dec_f64(bounds.x1.1, cfg), dec_f64(bounds.x2.0, cfg), dec_f64(bounds.x2.1, cfg)],
            "grid": grid,
            "samples": samples,
            "equilibria": ej,
            "classes": class_counts(&p.equilibria),
        }),
        tables: vec![t, et],
        warnings,
        default_format: Some(Format::Csv),
    })
}

const CENSUS_HEADER: [&str; 8] = ["k", "l", "m", "G_sign", "region", "predicted_count", "solved_count", "flags"];

fn census_cells(r: &census::CensusRecord) -> Vec<String> {
    let [k, l, m] = r.triple.as_array();
    vec![
        k.to_string(),
        l.to_string(),
        m.to_string(),
        r.g_sign().to_string(),
        r.region.to_string(),
        r.predicted.to_string(),
        r.solved.map_or(String::new(), |n| n.to_string()),
        r.flags.label(),
    ]
}

fn census_json(r: &census::CensusRecord) -> serde_json::Map<String, Value> {
    let [k, l, m] = r.triple.as_array();
    let mut o = serde_json::Map::new();
    o.insert("k".into(), k.into());
    o.insert("l".into(), l.into());
    o.insert("m".into(), m.into());
    o.insert("G".into(), r.g.to_string().into());
    o.insert("G_sign".into(), r.g_sign().into());
    o.insert("region".into(), r.region.name().into());
    o.insert("predicted_count".into(), r.predicted.as_number().into());
    o.insert("solved_count".into(), r.solved.into());
    o.insert("flags".into(), r.flags.label().into());
    o
}

fn check_consistent(r: &census::CensusRecord) -> CliResult<()> {
    if r.is_consistent() {
        Ok(())
    } else {
        Err(CliError::Invariant(format!(
            "{}: predicted {} metrics, solver found {:?}",
            r.triple, r.predicted, r.solved
        )))
    }
}

fn census_cmd(cfg: &RunConfig, max: u64, solve: bool, table3: bool) -> CliResult<Output> {
    if table3 {
        return table3_cmd(cfg, solve);
    }
    let recs = census::sweep(max, solve, cfg.workers)?;
    let mut t = Table::new(&CENSUS_HEADER);
    let mut js = Vec::new();
    for r in &recs {
        check_consistent(r)?;
        t.push(census_cells(r));
        js.push(Value::Object(census_json(r)));
    }
    Ok(Output {
        json: Value::Array(js),
        tables: vec![t],
        default_format: Some(Format::Csv),
        ..Default::default()
    })
}

fn table3_cmd(cfg: &RunConfig, solve: bool) -> CliResult<Output> {
    let mut rows: Vec<TableRow> = census::table3(cfg.workers)?;
    if solve {
        for row in &mut rows {
            row.record = census::classify_and_solve(&row.record.triple)?;
            check_consistent(&row.record)?;
        }
    }
    let mut header = CENSUS_HEADER.to_vec();
    header.extend(["expected", "status"]);
    let mut t = Table::new(&header);
    let mut js = Vec::new();
    let mut warnings = Vec::new();
    for row in &rows {
        let status = if row.pass() { "PASS" } else { "FAIL" };
        let mut cells = census_cells(&row.record);
        cells.extend([row.expected.to_string(), status.to_string()]);
        t.push(cells);
        let mut o = census_json(&row.record);
        o.insert("expected".into(), row.expected.name().into());
        o.insert("status".into(), status.into());
        js.push(Value::Object(o));
        if !row.pass() {
            warnings.push(format!(
                "{}: expected {}, exact sign of G gives {}",
                row.record.triple, row.expected, row.record.region
            ));
        }
    }
    Ok(Output {
        json: Value::Array(js),
        tables: vec![t],
        warnings,
        default_format: Some(Format::Csv),
    })
}

fn scan_zeros(cfg: &RunConfig, max: u64) -> CliResult<Output> {
    let hits = census::scan_zeros(max, cfg.workers)?;
    let mut t = Table::new(&["k", "l", "m", "family"]);
    let mut js = Vec::new();
    for (tr, fam) in &hits {
        let space = census::so_space(tr)?;
        if !eval_q(&space.params).is_zero() {
            return Err(CliError::Invariant(format!("{tr}: G = 0 but Q does not vanish")));
        }
        let [k, l, m] = tr.as_array();
        t.push(vec![k.to_string(), l.to_string(), m.to_string(), fam.to_string()]);
        js.push(json!({ "k": k, "l": l, "m": m, "family": fam.to_string() }));
    }
    Ok(Output {
        json: Value::Array(js),
        tables: vec![t],
        default_format: Some(Format::Csv),
        ..Default::default()
    })
}

fn catalog(line: Option<u32>, klm: Option<&[u64]>, l: Option<u64>) -> CliResult<Output> {
    let Some(line) = line else {
        return Ok(catalog_listing());
    };
    let params = match (line, klm, l) {
        (1..=3, Some([k, l, m]), None) => LineParams::Klm(*k, *l, *m),
        (1..=3, _, _) => return Err(CliError::Usage(format!("line {line} needs --klm K L M"))),
        (4 | 5, None, Some(l)) => LineParams::L(l),
        (4 | 5, _, _) => return Err(CliError::Usage(format!("line {line} needs --l L"))),
        (_, None, None) => LineParams::None,
        _ => return Err(CliError::Usage(format!("line {line} takes no family parameters"))),
    };
    let space = catalog_space(line, params)?;
    let (region, method) = if space.params.is_boundary() {
        (Region::BoundaryCube, "boundary")
    } else {
        let label = classify_region(&space.params)?;
        (label.region, label.method.name())
    };
    let expected = match expected_region(line)? {
        Expected::Region(r) => vec![r],
        Expected::Mixed(rs) => rs,
    };
    let status = if expected.contains(&region) { "PASS" } else { "FAIL" };
    let exp_str: Vec<&str> = expected.iter().map(|r| r.name()).collect();
    let row = &CATALOG[line as usize - 1];
    let mut t = Table::new(&["line", "g", "h", "a1", "a2", "a3", "d1", "d2", "d3", "region", "method", "expected", "status"]);
    let mut cells = vec![line.to_string(), row.g.into(), row.h.into()];
    cells.extend(space.params.as_array().iter().map(|q| q.to_string()));
    cells.extend(space.d.iter().map(|q| q.to_string()));
    cells.extend([region.to_string(), method.into(), exp_str.join("|"), status.into()]);
    t.push(cells);
    Ok(Output {
        json: json!({
            "line": line,
            "g": row.g,
            "h": row.h,
            "a": rationals(space.params.as_array()),
            "d": rationals(&space.d),
            "region": region.name(),
            "method": method,
            "expected": exp_str,
            "status": status,
        }),
        tables: vec![t],
        ..Default::default()
    })
}

fn catalog_listing() -> Output {
    let mut t = Table::new(&["line", "g", "h", "constraint", "d1", "d2", "d3", "a1", "a2", "a3", "expected"]);
    let mut js = Vec::new();
    for row in CATALOG.iter() {
        let expected = match expected_region(row.line) {
            Ok(Expected::Region(r)) => r.name().to_string(),
            Ok(Expected::Mixed(rs)) => rs.iter().map(|r| r.name()).collect::<Vec<_>>().join("|"),
            Err(_) => String::new(),
        };
        let mut cells = vec![row.line.to_string(), row.g.into(), row.h.into(), row.constraint.into()];
        cells.extend(row.d.iter().map(|s| s.to_string()));
        cells.extend(row.a.iter().map(|s| s.to_string()));
        cells.push(expected.clone());
        js.push(json!({
            "line": row.line, "g": row.g, "h": row.h, "constraint": row.constraint,
            "d": row.d, "a": row.a, "expected": expected,
        }));
        t.push(cells);
    }
    Output {
        json: Value::Array(js),
        tables: vec![t],
        default_format: Some(Format::Text),
        ..Default::default()
    }
}
