use std::path::Path;

use bicomb::barycenter::{beta, BaryConfig, Strategy};
use bicomb::counterexample::{displacement_decay, verify_counterexample, Displacement, DECAY_HORIZONS};
use bicomb::dynamics::{
    banach_density_from, fixed_point_solve, orbit, orbit_bound_certificate, FixedPointParams,
    OrbitCertificate, ResidualEntry, SolveStatus, TargetDoc, TargetSet,
};
use bicomb::spaces::{IsometryDescriptor, PointRef, Property, SpaceDoc, SpaceHandle};
use bicomb::wasserstein::{transport_plan, AtomDoc, AtomicMeasure};
use bicomb::{with_space, GeodesicSpace, PropertyReport, DEFAULT_TOL};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::io::{numeric, usage, Failure, Inputs, Outcome, Run, Table};
use crate::{BarycenterArgs, DensityArgs, FixpointArgs, SpaceCheckArgs, VerifyArgs, WassersteinArgs};

/// A measure document; `space` may be omitted when `--space` is given.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureFile {
    #[serde(default)]
    space: Option<SpaceDoc>,
    atoms: Vec<AtomDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BarycenterFile {
    measure: MeasureFile,
    #[serde(default)]
    config: Option<BaryConfig>,
}

fn finish(run: &Run, inputs: Inputs, outcome: Outcome) -> Result<bool, Failure> {
    let pass = outcome.pass;
    run.emit(inputs, outcome)?;
    Ok(pass)
}

fn reject_tol(run: &Run) -> Result<(), Failure> {
    match run.tol {
        Some(_) => Err(usage(format!("--tol is not used by `{}`", run.command))),
        None => Ok(()),
    }
}

fn load_space(inputs: &mut Inputs, path: &Path) -> Result<SpaceHandle, Failure> {
    let doc: SpaceDoc = inputs.read_json("space", path)?;
    SpaceHandle::from_doc(doc).map_err(usage)
}

/// The `--space` file if given, else the space embedded in the measures.
/// Embedded spaces must agree with each other and with `--space`.
fn resolve_space(
    inputs: &mut Inputs,
    flag: Option<&Path>,
    embedded: &[Option<&SpaceDoc>],
) -> Result<SpaceHandle, Failure> {
    let mut found = embedded.iter().flatten();
    let doc = match flag {
        Some(path) => inputs.read_json::<SpaceDoc>("space", path)?,
        None => (*found.next().ok_or_else(|| usage("no --space given and the measures name no space"))?).clone(),
    };
    if embedded.iter().flatten().any(|d| d.descriptor != doc.descriptor) {
        return Err(usage("measures live on different spaces"));
    }
    SpaceHandle::from_doc(doc).map_err(usage)
}

fn resolve_iso(inputs: &mut Inputs, handle: &SpaceHandle, arg: &str) -> Result<IsometryDescriptor, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        return inputs.read_json("iso", path);
    }
    inputs.param("iso", arg);
    handle.isometry(arg).cloned().ok_or_else(|| {
        let known: Vec<&str> = handle.isometries().keys().map(String::as_str).collect();
        usage(format!(
            "`{arg}` is neither a file nor a registered isometry (known: {})",
            known.join(", ")
        ))
    })
}

fn report_table(reports: &[PropertyReport]) -> Table {
    let mut t = Table::new(&["property", "samples", "margin", "tolerance", "pass", "seed"]);
    for r in reports {
        t.row(vec![
            r.property.clone(),
            r.samples.to_string(),
            r.margin.to_string(),
            r.tolerance.to_string(),
            r.pass.to_string(),
            r.seed.to_string(),
        ]);
    }
    t
}

pub fn space_check(run: &Run, a: &SpaceCheckArgs) -> Result<bool, Failure> {
    let mut inputs = Inputs::default();
    let handle = load_space(&mut inputs, &a.space)?;
    let props: Vec<Property> = if a.props.is_empty() {
        Property::ALL.to_vec()
    } else {
        a.props.iter().map(|p| p.parse().map_err(usage)).collect::<Result<_, _>>()?
    };
    if a.n == 0 {
        return Err(usage("-n must be at least 1"));
    }
    let tol = run.tol.unwrap_or(DEFAULT_TOL);
    inputs.param("props", format!("{props:?}"));
    inputs.param("n", a.n);
    inputs.param("tol", tol);
    let reports: Vec<PropertyReport> = props
        .iter()
        .flat_map(|&p| handle.check(p, a.n, run.seed, tol))
        .collect();
    let pass = reports.iter().all(|r| r.pass);
    let table = report_table(&reports);
    let result = json!({ "space": handle.doc(), "reports": reports });
    finish(run, inputs, Outcome::new(pass, result, table)?)
}

#[derive(Serialize)]
struct Flow {
    from: PointRef,
    to: PointRef,
    mass: String,
}

fn w1_in<S: GeodesicSpace>(s: &S, mu: &[AtomDoc], nu: &[AtomDoc]) -> Result<(f64, Vec<Flow>), Failure> {
    let mu = AtomicMeasure::from_docs(s, mu).map_err(|e| usage(format!("mu: {e}")))?;
    let nu = AtomicMeasure::from_docs(s, nu).map_err(|e| usage(format!("nu: {e}")))?;
    let plan = transport_plan(s, &mu, &nu);
    let flows = plan
        .flows
        .iter()
        .map(|(i, j, m)| Flow {
            from: s.to_ref(&mu.atoms()[*i].0),
            to: s.to_ref(&nu.atoms()[*j].0),
            mass: m.to_string(),
        })
        .collect();
    Ok((plan.cost, flows))
}

pub fn wasserstein(run: &Run, a: &WassersteinArgs) -> Result<bool, Failure> {
    reject_tol(run)?;
    let mut inputs = Inputs::default();
    let mu: MeasureFile = inputs.read_json("mu", &a.mu)?;
    let nu: MeasureFile = inputs.read_json("nu", &a.nu)?;
    let handle = resolve_space(&mut inputs, a.space.as_deref(), &[mu.space.as_ref(), nu.space.as_ref()])?;
    let (w1, plan) = with_space!(handle, s => w1_in(s, &mu.atoms, &nu.atoms))?;
    let mut table = Table::new(&["w1"]);
    table.row(vec![w1.to_string()]);
    finish(run, inputs, Outcome::new(true, json!({ "w1": w1, "plan": plan }), table)?)
}

#[derive(Serialize)]
struct BarycenterDoc {
    point: PointRef,
    k_used: u64,
    residual: f64,
    config: BaryConfig,
}

fn beta_in<S: GeodesicSpace>(s: &S, atoms: &[AtomDoc], cfg: &BaryConfig) -> Result<BarycenterDoc, Failure> {
    let mu = AtomicMeasure::from_docs(s, atoms).map_err(usage)?;
    let out = beta(s, &mu, cfg).map_err(numeric)?;
    Ok(BarycenterDoc {
        point: s.to_ref(&out.point),
        k_used: out.k_used,
        residual: out.residual,
        config: *cfg,
    })
}

pub fn barycenter(run: &Run, a: &BarycenterArgs) -> Result<bool, Failure> {
    let mut inputs = Inputs::default();
    let raw: Value = inputs.read_json("measure", &a.measure)?;
    let file: BarycenterFile = if raw.get("measure").is_some() {
        serde_json::from_value(raw)
    } else {
        serde_json::from_value(raw).map(|measure| BarycenterFile { measure, config: None })
    }
    .map_err(|e| usage(format!("measure file {}: {e}", a.measure.display())))?;
    let mut cfg = match &a.config {
        Some(path) => inputs.read_json("config", path)?,
        None => file.config.unwrap_or_default(),
    };
    if a.recursive {
        cfg.strategy = Strategy::Recursive;
    }
    if let Some(tol) = run.tol {
        cfg.limit_tol = tol;
    }
    cfg.validate().map_err(usage)?;
    inputs.param("config", serde_json::to_string(&cfg).map_err(numeric)?);
    let handle = resolve_space(&mut inputs, a.space.as_deref(), &[file.measure.space.as_ref()])?;
    let doc = with_space!(handle, s => beta_in(s, &file.measure.atoms, &cfg))?;
    let mut table = Table::new(&["point", "k_used", "residual"]);
    table.row(vec![
        serde_json::to_string(&doc.point).map_err(numeric)?,
        doc.k_used.to_string(),
        doc.residual.to_string(),
    ]);
    finish(run, inputs, Outcome::new(true, doc, table)?)
}

struct OrbitInputs {
    handle: SpaceHandle,
    iso: IsometryDescriptor,
    x0: PointRef,
    target: TargetDoc,
}

fn read_orbit(inputs: &mut Inputs, a: &crate::OrbitArgs) -> Result<OrbitInputs, Failure> {
    let handle = load_space(inputs, &a.space)?;
    let iso = resolve_iso(inputs, &handle, &a.iso)?;
    let x0 = inputs.read_json("x0", &a.x0)?;
    let target = inputs.read_json("target", &a.target)?;
    Ok(OrbitInputs { handle, iso, x0, target })
}

struct Bound<S: GeodesicSpace> {
    iso: S::Iso,
    x0: S::Point,
    target: TargetSet<S::Point>,
}

fn bind<S: GeodesicSpace>(s: &S, o: &OrbitInputs) -> Result<Bound<S>, Failure> {
    Ok(Bound {
        iso: s.bind(&o.iso).map_err(usage)?,
        x0: s.from_ref(&o.x0).map_err(|e| usage(format!("x0: {e}")))?,
        target: TargetSet::from_doc(s, &o.target).map_err(|e| usage(format!("target: {e}")))?,
    })
}

#[derive(Serialize)]
struct FixpointDoc {
    status: SolveStatus,
    point: PointRef,
    residual_series: Vec<ResidualEntry>,
    density: f64,
    density_window: [usize; 2],
}

fn fixpoint_in<S: GeodesicSpace>(s: &S, o: &OrbitInputs, params: &FixedPointParams) -> Result<FixpointDoc, Failure> {
    let b = bind(s, o)?;
    let report = fixed_point_solve(s, &b.iso, &b.x0, &b.target, params).map_err(numeric)?;
    Ok(FixpointDoc {
        status: report.status,
        point: s.to_ref(&report.point),
        residual_series: report.residual_series,
        density: report.density,
        density_window: [report.density_window.0, report.density_window.1],
    })
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Exit status is 0 whatever the solver status; only errors fail the run.
pub fn fixpoint(run: &Run, a: &FixpointArgs) -> Result<bool, Failure> {
    let mut inputs = Inputs::default();
    let o = read_orbit(&mut inputs, &a.orbit)?;
    let bary = match &a.config {
        Some(path) => inputs.read_json("config", path)?,
        None => BaryConfig::default(),
    };
    let params = FixedPointParams {
        schedule: a.schedule.clone(),
        tol: run.tol.unwrap_or(FixedPointParams::default().tol),
        bary,
    };
    inputs.param("params", serde_json::to_string(&params).map_err(numeric)?);
    let doc = with_space!(o.handle, s => fixpoint_in(s, &o, &params))?;
    let mut table = Table::new(&["horizon", "residual", "invariance", "cauchy_gap", "k_used"]);
    for e in &doc.residual_series {
        table.row(vec![
            e.horizon.to_string(),
            e.residual.to_string(),
            e.invariance.to_string(),
            opt_cell(e.cauchy_gap),
            e.k_used.to_string(),
        ]);
    }
    finish(run, inputs, Outcome::new(true, doc, table)?)
}

#[derive(Serialize)]
struct DensityDoc {
    density: f64,
    visits: usize,
    horizon: usize,
    window: usize,
    shifts: usize,
    start: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<OrbitCertificate>,
}

fn density_in<S: GeodesicSpace>(s: &S, o: &OrbitInputs, a: &DensityArgs, horizon: usize) -> Result<DensityDoc, Failure> {
    let b = bind(s, o)?;
    let trace = orbit(s, &b.iso, &b.x0, horizon).map_err(numeric)?;
    let visits = trace.visits(s, &b.target);
    let density = banach_density_from(&visits, a.start, a.window, a.shifts).map_err(numeric)?;
    let certificate = a
        .certify
        .map(|h| orbit_bound_certificate(s, &trace, &b.target, h))
        .transpose()
        .map_err(numeric)?;
    Ok(DensityDoc {
        density,
        visits: visits.count(),
        horizon,
        window: a.window,
        shifts: a.shifts,
        start: a.start,
        certificate,
    })
}

pub fn density(run: &Run, a: &DensityArgs) -> Result<bool, Failure> {
    reject_tol(run)?;
    let mut inputs = Inputs::default();
    let o = read_orbit(&mut inputs, &a.orbit)?;
    let needed = (a.start + a.window + a.shifts).max(a.certify.map_or(0, |h| h + 1));
    let horizon = a.horizon.unwrap_or(needed);
    inputs.param("window", format!("{} {} {} {horizon} {:?}", a.window, a.shifts, a.start, a.certify));
    let doc = with_space!(o.handle, s => density_in(s, &o, a, horizon))?;
    let pass = doc.certificate.as_ref().is_none_or(|c| c.certified);
    let mut table = Table::new(&["density", "visits", "horizon", "window", "shifts", "start", "k0", "certified"]);
    table.row(vec![
        doc.density.to_string(),
        doc.visits.to_string(),
        doc.horizon.to_string(),
        doc.window.to_string(),
        doc.shifts.to_string(),
        doc.start.to_string(),
        doc.certificate.as_ref().map(|c| c.k0.to_string()).unwrap_or_default(),
        doc.certificate.as_ref().map(|c| c.certified.to_string()).unwrap_or_default(),
    ]);
    finish(run, inputs, Outcome::new(pass, doc, table)?)
}

#[derive(Serialize)]
struct VerifyDoc {
    reports: Vec<PropertyReport>,
    decay: Vec<Displacement>,
}

pub fn verify(run: &Run, a: &VerifyArgs) -> Result<bool, Failure> {
    reject_tol(run)?;
    if a.samples == 0 || a.max_support == 0 {
        return Err(usage("--samples and --max-support must be at least 1"));
    }
    let mut inputs = Inputs::default();
    inputs.param("samples", a.samples);
    inputs.param("max_support", a.max_support);
    let reports = verify_counterexample(a.samples, a.max_support, run.seed);
    let decay = DECAY_HORIZONS
        .iter()
        .map(|&n| displacement_decay(n).map_err(numeric))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = reports.iter().all(|r| r.pass);
    let table = report_table(&reports);
    finish(run, inputs, Outcome::new(pass, VerifyDoc { reports, decay }, table)?)
}
