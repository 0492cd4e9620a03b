use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use hyperbilliard::billiard::{
    aa_map, caustic_nu, direction_for_caustic, integrals, simulate, BilliardState, Caustic,
    Trajectory,
};
use hyperbilliard::cayley::{find_periodic_caustics, verify_caustic, Verification};
use hyperbilliard::confocal::{
    boundary_point, classify_table, curve_type, foci, jacobi_coordinates, klein_boundary_coeffs,
    region_classify, CurveType, JacobiRoots,
};
use hyperbilliard::geodesic::{connectivity, departure_direction, Domain};
use hyperbilliard::mink::{causal_class, inner, on_hyperboloid};
use hyperbilliard::{tol, Error, MVec, TableParams};
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::doc::{status_of, NuDoc, TrajectoryDoc};
use crate::{svg, table_csv, Command, EXIT_STOPPED};

const DEFAULT_BOUNCES: usize = 20;

pub fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<(String, i32)> {
    match cmd {
        Command::Classify { .. } => classify(cfg).map(|s| (s, 0)),
        Command::Jacobi { .. } => jacobi(cfg).map(|s| (s, 0)),
        Command::Simulate { .. } => run_simulation(cfg),
        Command::Caustic { .. } => chord_caustic(cfg).map(|s| (s, 0)),
        Command::Cayley { .. } => cayley(cfg).map(|s| (s, 0)),
        Command::Verify { .. } => verify(cfg).map(|s| (s, 0)),
        Command::Aa { .. } => antipodal(cfg).map(|s| (s, 0)),
        Command::Export { .. } => export(cfg).map(|s| (s, 0)),
    }
}

fn table(cfg: &RunConfig) -> Result<TableParams> {
    let [a0, a1, a2] = cfg
        .table
        .ok_or_else(|| anyhow!("table parameters a0 a1 a2 are required"))?;
    Ok(classify_table(a0, a1, a2)?)
}

/// Report verbs print text unless JSON is asked for.
fn wants_json(cfg: &RunConfig) -> Result<bool> {
    match cfg.format {
        None => Ok(false),
        Some(Format::Json) => Ok(true),
        Some(f) => bail!("format {} is only available for trajectories", f.as_str()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn vec_str(v: MVec) -> String {
    format!("({}, {}, {})", v.0[0], v.0[1], v.0[2])
}

fn curve_str(c: CurveType) -> &'static str {
    match c {
        CurveType::EllipticType => "elliptic-type",
        CurveType::HyperbolicType => "hyperbolic-type",
        CurveType::Degenerate => "degenerate",
        CurveType::Empty => "empty",
    }
}

fn classify(cfg: &RunConfig) -> Result<String> {
    let t = table(cfg)?;
    let (b1, b2) = klein_boundary_coeffs(&t);
    let all_foci: Vec<Option<[MVec; 4]>> = (0..3).map(|k| foci(&t, k)).collect();
    if wants_json(cfg)? {
        return Ok(pretty(&json!({
            "a": t.a(),
            "kind": t.kind().as_str(),
            "klein": [b1, b2],
            "foci": all_foci.iter().map(|f| f.map(|p| p.map(|v| v.0))).collect::<Vec<_>>(),
        })));
    }
    let [a0, a1, a2] = t.a();
    let mut s = String::new();
    writeln!(s, "table: {a0} {a1} {a2}")?;
    writeln!(s, "kind: {}", t.kind())?;
    writeln!(s, "klein boundary: xi1^2/{b1} + xi2^2/{b2} = 1")?;
    for (k, f) in all_foci.iter().enumerate() {
        match f {
            Some(p) => writeln!(
                s,
                "foci x{k}=0: {}",
                p.iter().map(|v| vec_str(*v)).collect::<Vec<_>>().join(" ")
            )?,
            None => writeln!(s, "foci x{k}=0: none")?,
        }
    }
    Ok(s)
}

/// Start point from `point`, or the boundary point at `x1 = at`.
fn start_point(t: &TableParams, cfg: &RunConfig) -> Result<MVec> {
    match (cfg.point, cfg.at) {
        (Some(p), None) => Ok(MVec(p)),
        (None, Some(v)) => {
            let signs = cfg.signs.unwrap_or([1.0, 1.0]);
            boundary_point(t, 1, v, signs)
                .ok_or_else(|| anyhow!("no boundary point with x1 = {v} and those signs"))
        }
        (Some(_), Some(_)) => bail!("give either a point or at, not both"),
        (None, None) => bail!("a start point is required (point or at)"),
    }
}

fn jacobi(cfg: &RunConfig) -> Result<String> {
    let t = table(cfg)?;
    let x = start_point(&t, cfg)?;
    if !on_hyperboloid(x, 1e-9) {
        bail!("{} is not on the hyperboloid", vec_str(x));
    }
    let jc = jacobi_coordinates(&t, x);
    let region = if t.is_collared() {
        None
    } else {
        Some(format!("{:?}", region_classify(&t, x)?))
    };
    let roots = jc.as_vec();
    let curves: Vec<&str> = roots
        .iter()
        .map(|l| curve_str(curve_type(&t, *l)))
        .collect();
    let kind = match jc.roots {
        JacobiRoots::TwoRoots(..) => "two",
        JacobiRoots::DoubleRoot(_) => "double",
        JacobiRoots::NoRealRoots => "none",
    };
    if wants_json(cfg)? {
        return Ok(pretty(&json!({
            "point": x.0,
            "roots": roots,
            "root_kind": kind,
            "case": jc.case.label(),
            "curves": curves,
            "region": region,
        })));
    }
    let mut s = String::new();
    writeln!(s, "point: {}", vec_str(x))?;
    match jc.roots {
        JacobiRoots::TwoRoots(l1, l2) => writeln!(s, "roots: {l1} {l2}")?,
        JacobiRoots::DoubleRoot(l) => writeln!(s, "roots: {l} (double)")?,
        JacobiRoots::NoRealRoots => writeln!(s, "roots: none")?,
    }
    writeln!(s, "case: {}", jc.case.label())?;
    if !curves.is_empty() {
        writeln!(s, "curves: {}", curves.join(" "))?;
    }
    if let Some(r) = region {
        writeln!(s, "region: {r}")?;
    }
    Ok(s)
}

fn pick_direction(t: &TableParams, x: MVec, cfg: &RunConfig, domain: Domain) -> Result<MVec> {
    match (cfg.dir, cfg.toward, cfg.caustic) {
        (Some(d), None, None) => Ok(MVec(d)),
        (None, Some(q), None) => Ok(departure_direction(x, MVec(q))),
        (None, None, Some(c)) => {
            let dirs = direction_for_caustic(t, x, c, domain)?;
            if dirs.is_empty() {
                return Err(Error::NoTangentDirection.into());
            }
            let b = cfg.branch.unwrap_or(0);
            dirs.get(b).copied().ok_or_else(|| {
                anyhow!(
                    "branch {b} out of range: {} direction(s) available",
                    dirs.len()
                )
            })
        }
        (None, None, None) => bail!("a direction is required (dir, toward or caustic)"),
        _ => bail!("give exactly one of dir, toward and caustic"),
    }
}

fn emit_trajectory(traj: &Trajectory, cfg: &RunConfig, status: String) -> Result<String> {
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            Ok(TrajectoryDoc::new(traj, cfg.tol.unwrap_or(tol::CLOSURE), status).to_json())
        }
        Format::Csv => table_csv::render(traj),
        Format::Svg => Ok(svg::render(traj)),
    }
}

fn run_simulation(cfg: &RunConfig) -> Result<(String, i32)> {
    let t = table(cfg)?;
    let domain = cfg.domain.unwrap_or_default();
    let x = start_point(&t, cfg)?;
    let dir = pick_direction(&t, x, cfg, domain)?;
    let s0 = BilliardState::new(&t, x, dir).context("initial state")?;
    let traj = simulate(&t, s0, cfg.bounces.unwrap_or(DEFAULT_BOUNCES), domain)?;
    let code = if traj.stop.is_some() { EXIT_STOPPED } else { 0 };
    Ok((emit_trajectory(&traj, cfg, status_of(&traj))?, code))
}

fn chord_caustic(cfg: &RunConfig) -> Result<String> {
    let t = table(cfg)?;
    let x = start_point(&t, cfg)?;
    let (dir, conn) = match (cfg.dir, cfg.toward) {
        (Some(d), None) => (MVec(d), None),
        (None, Some(q)) => (
            departure_direction(x, MVec(q)),
            Some(connectivity(x, MVec(q))),
        ),
        _ => bail!("give exactly one of dir and toward"),
    };
    let xv = inner(x, dir);
    if xv.abs() > tol::TANGENT * x.euclid().max(1.0) * dir.euclid().max(1.0) {
        return Err(Error::NotTangent(xv).into());
    }
    let nu = caustic_nu(&t, x, dir);
    let f = integrals(&t, x, dir);
    let class = causal_class(dir);
    if wants_json(cfg)? {
        return Ok(pretty(&json!({
            "point": x.0,
            "dir": dir.0,
            "class": class.as_str(),
            "connectivity": conn.map(|c| c.as_str()),
            "nu": NuDoc::from(nu),
            "f": f.f,
            "f_ratios": f.ratios(),
        })));
    }
    let mut s = String::new();
    writeln!(s, "class: {class}")?;
    if let Some(c) = conn {
        writeln!(s, "connectivity: {}", c.as_str())?;
    }
    writeln!(s, "nu: {nu}")?;
    writeln!(s, "F: {} {} {}", f.f[0], f.f[1], f.f[2])?;
    let r = f.ratios();
    writeln!(s, "F ratios: {} {} {}", r[0], r[1], r[2])?;
    Ok(s)
}

/// Boundary points tried, in order, when none is given for a simulation check.
fn default_starts(t: &TableParams) -> Vec<MVec> {
    let mut out = Vec::new();
    for v in [0.0, 0.3, 0.7, 1.2, 2.0, 3.5, -0.5] {
        for signs in [[1.0, 1.0], [-1.0, 1.0], [1.0, -1.0]] {
            out.extend(boundary_point(t, 1, v, signs));
        }
    }
    out
}

/// Verifies at the given start, or at the first default start admitting a tangent
/// direction.
fn verify_somewhere(
    t: &TableParams,
    nu: Caustic,
    n: usize,
    start: Option<MVec>,
) -> Result<Verification> {
    if let Some(x) = start {
        return Ok(verify_caustic(t, nu, n, x)?);
    }
    let mut last = Error::NoTangentDirection;
    for x in default_starts(t) {
        match verify_caustic(t, nu, n, x) {
            Ok(v) if v.matches(n) => return Ok(v),
            Ok(v) => {
                if !matches!(last, Error::InvalidArgument(_)) {
                    last = Error::InvalidArgument(format!(
                        "closest return: residual {:e}",
                        v.residual
                    ));
                }
            }
            Err(e @ (Error::NoTangentDirection | Error::NoHit | Error::PoleParameter(_))) => {
                if matches!(last, Error::NoTangentDirection) {
                    last = e;
                }
            }
            Err(e) => return Err(e.into()),
        }
    }
    Err(last.into())
}

fn given_start(t: &TableParams, cfg: &RunConfig) -> Result<Option<MVec>> {
    if cfg.point.is_none() && cfg.at.is_none() {
        return Ok(None);
    }
    start_point(t, cfg).map(Some)
}

fn verification_json(v: &Result<Verification>, n: usize) -> Value {
    match v {
        Ok(v) => json!({
            "closed": v.matches(n),
            "period": v.period,
            "residual": v.residual,
            "domain": v.domain.as_str(),
            "nu_drift": v.nu_drift,
            "start": v.trajectory.states[0].point.0,
        }),
        Err(e) => json!({ "closed": false, "error": format!("{e:#}") }),
    }
}

fn verification_text(v: &Result<Verification>, n: usize) -> String {
    match v {
        Ok(v) => format!(
            "{} (period {}, {}, residual {:e}, nu drift {:e})",
            if v.matches(n) {
                "closes"
            } else {
                "does not close"
            },
            v.period.map_or("-".to_string(), |p| p.to_string()),
            v.domain.as_str(),
            v.residual,
            v.nu_drift
        ),
        Err(e) if e.downcast_ref::<Error>() == Some(&Error::NoTangentDirection) => {
            "no real trajectory: no sampled boundary point has a direction tangent to this caustic"
                .into()
        }
        Err(e) => format!("not checked: {e:#}"),
    }
}

fn cayley(cfg: &RunConfig) -> Result<String> {
    let t = table(cfg)?;
    let n = cfg.period.ok_or_else(|| anyhow!("period is required"))?;
    let sol = find_periodic_caustics(&t, n)?;
    let start = given_start(&t, cfg)?;
    let checks: Vec<Result<Verification>> = sol
        .roots
        .iter()
        .map(|r| verify_somewhere(&t, Caustic::Finite(r.nu), n, start))
        .collect();
    let nearest = |nu: f64| {
        sol.closed_form
            .as_ref()
            .and_then(|cf| cf.iter().map(|c| (c - nu).abs()).min_by(f64::total_cmp))
    };
    if wants_json(cfg)? {
        let roots: Vec<Value> = sol
            .roots
            .iter()
            .zip(&checks)
            .map(|(r, v)| {
                json!({
                    "nu": r.nu,
                    "residual": r.residual,
                    "closed_form_diff": nearest(r.nu),
                    "verify": verification_json(v, n),
                })
            })
            .collect();
        return Ok(pretty(&json!({
            "a": t.a(),
            "period": n,
            "method": sol.method.as_str(),
            "roots": roots,
            "degenerate": sol.degenerate,
            "closed_form": sol.closed_form,
        })));
    }
    let [a0, a1, a2] = t.a();
    let mut s = String::new();
    writeln!(s, "table: {a0} {a1} {a2} ({})", t.kind())?;
    writeln!(s, "period: {n}")?;
    writeln!(s, "method: {}", sol.method.as_str())?;
    if sol.roots.is_empty() {
        writeln!(s, "roots: none")?;
    }
    for (r, v) in sol.roots.iter().zip(&checks) {
        write!(s, "nu = {}  residual {:e}", r.nu, r.residual)?;
        if let Some(d) = nearest(r.nu) {
            write!(s, "  closed form diff {d:e}")?;
        }
        writeln!(s, "  {}", verification_text(v, n))?;
    }
    if !sol.degenerate.is_empty() {
        let d: Vec<String> = sol.degenerate.iter().map(|v| v.to_string()).collect();
        writeln!(s, "degenerate: {}", d.join(" "))?;
    }
    if let Some(cf) = &sol.closed_form {
        let c: Vec<String> = cf.iter().map(|v| v.to_string()).collect();
        writeln!(s, "closed form: {}", c.join(" "))?;
    }
    Ok(s)
}

fn verify(cfg: &RunConfig) -> Result<String> {
    let t = table(cfg)?;
    let n = cfg.period.ok_or_else(|| anyhow!("period is required"))?;
    let nu = cfg
        .caustic
        .ok_or_else(|| anyhow!("caustic parameter nu is required"))?;
    let v = verify_somewhere(&t, nu, n, given_start(&t, cfg)?);
    if wants_json(cfg)? {
        let mut j = verification_json(&v, n);
        j["nu"] = json!(NuDoc::from(nu));
        j["target_period"] = json!(n);
        return Ok(pretty(&j));
    }
    Ok(format!(
        "nu = {nu}, period {n}: {}\n",
        verification_text(&v, n)
    ))
}

fn read_input(cfg: &RunConfig) -> Result<TrajectoryDoc> {
    let path = cfg
        .input
        .as_ref()
        .ok_or_else(|| anyhow!("an input trajectory is required"))?;
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    TrajectoryDoc::from_json(&text)
}

fn antipodal(cfg: &RunConfig) -> Result<String> {
    let doc = read_input(cfg)?;
    let mapped = aa_map(&doc.to_trajectory()?)?;
    emit_trajectory(&mapped, cfg, doc.status)
}

fn export(cfg: &RunConfig) -> Result<String> {
    let doc = read_input(cfg)?;
    emit_trajectory(&doc.to_trajectory()?, cfg, doc.status)
}
