//! The full construction run and its report.

use std::time::Instant;

use serde::Serialize;

use crate::aut_checker::{compute_aut, default_probes, essentially_equal_probe, iso_check, qgc_check, EssentialEquality, IsoReport, QgcVerdict};
use crate::error::{Error, Result};
use crate::field_tower::norm::level_poly;
use crate::field_tower::{quasi_galois_check, tower_build, validate_nice_basis, FieldTower, NiceBasisReport, QuasiGaloisReport};
use crate::galois_engine::{enumerate_gal, fixed_field_certify, FixedFieldVerdict, GaloisGroup};
use crate::scheme_builder::{
    assemble_model, build_model, canonical_json, conjugate_charts, invariant_subring_probe, validate_cover, verify_model, Ambient, CoverComplex, CoverReport,
    InvariantProbe, ModelCheck, ModelSpec, ModelX, RingPresentation, Tristate,
};
use crate::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    VerifyGalois,
    BuildModel,
    CheckQgc,
    AutGroup,
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyGalois => "verify-galois",
            Command::BuildModel => "build-model",
            Command::CheckQgc => "check-qgc",
            Command::AutGroup => "aut-group",
            Command::Report => "report",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatusKind {
    Ok,
    InputError,
    Refuted,
    Inconclusive,
    InternalFailure,
}

impl StatusKind {
    pub fn exit_code(self) -> i32 {
        match self {
            StatusKind::Ok => 0,
            StatusKind::InputError => 2,
            StatusKind::Refuted => 3,
            StatusKind::Inconclusive => 4,
            StatusKind::InternalFailure => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Status {
    pub kind: StatusKind,
    pub exit_code: i32,
    pub message: String,
}

impl Status {
    fn new(kind: StatusKind, message: impl Into<String>) -> Self {
        Status { kind, exit_code: kind.exit_code(), message: message.into() }
    }
}

/// Exit status class of an error.
pub fn classify(e: &Error) -> StatusKind {
    match e {
        Error::Parse { .. }
        | Error::UnknownSymbol(_)
        | Error::Input(_)
        | Error::DivisionByZero
        | Error::ZeroInverse
        | Error::ReducibleMinimalPolynomial { .. }
        | Error::TranscendentalExtension(_) => StatusKind::InputError,
        Error::NotGalois { .. } => StatusKind::Refuted,
        Error::IrreducibilityInconclusive(_) | Error::BudgetExceeded { .. } | Error::DegreeCapExceeded { .. } | Error::Incomplete(_) => StatusKind::Inconclusive,
        Error::Internal(_) => StatusKind::InternalFailure,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorSection {
    pub name: String,
    pub min_poly: String,
    pub degree: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerSection {
    pub transcendentals: Vec<String>,
    pub base: Vec<GeneratorSection>,
    pub extension: Vec<GeneratorSection>,
    pub extension_degree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Image {
    pub generator: String,
    pub image: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaloisSection {
    pub order: usize,
    pub elements: Vec<Vec<Image>>,
    pub table: Vec<Vec<usize>>,
    pub abelian: bool,
    pub cyclic: bool,
    /// `(i, j)` with `σ_i σ_j ≠ σ_j σ_i`.
    pub noncommuting_pair: Option<(usize, usize)>,
    pub fixed_field: FixedFieldVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartSection {
    pub name: String,
    /// Y-chart below this chart (X-charts only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub over: Option<String>,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlapSection {
    pub charts: (String, String),
    pub chart: ChartSection,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverSection {
    pub charts: Vec<ChartSection>,
    pub overlaps: Vec<OverlapSection>,
}

#[derive(Clone, Debug, Serialize)]
pub struct YSection {
    pub cover: CoverSection,
    pub validation: CoverReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelSection {
    pub constructed: bool,
    pub delta: Vec<String>,
    pub delta_prime: Vec<String>,
    pub cover: CoverSection,
    pub chart_map: Vec<(String, String)>,
    pub check: ModelCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct AutSection {
    pub order: usize,
    /// Gal(L/K) indices of the elements of Aut(X/Y).
    pub elements: Vec<usize>,
    pub table: Vec<Vec<usize>>,
    pub iso: IsoReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct EssentialSection {
    pub chart: String,
    pub conjugate_by: usize,
    pub result: EssentialEquality,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeSection {
    pub invariant_subring: Vec<InvariantProbe>,
    pub essential_equality: Vec<EssentialSection>,
}

/// One line per verdict; absent entries were not reached.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Verdicts {
    pub is_galois: Option<bool>,
    pub nice_basis: Option<bool>,
    pub quasi_galois: Option<bool>,
    pub cover_y: Option<Tristate>,
    pub model: Option<Tristate>,
    /// k(X) = L: every X-chart has Fr(A_V) = L.
    pub function_field: Option<Tristate>,
    /// f is affine: one X-chart over each Y-chart.
    pub f_affine: Option<bool>,
    pub aut_iso_gal: Option<bool>,
    pub qgc: Option<Tristate>,
    pub invariant_subring: Option<bool>,
    pub essential_equality: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub stage: &'static str,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub tool: Tool,
    pub command: &'static str,
    pub seed: u64,
    pub config: Config,
    pub input: serde_json::Value,
    pub status: Status,
    pub verdicts: Verdicts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tower: Option<TowerSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub galois: Option<GaloisSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nice_basis: Option<NiceBasisReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasi_galois: Option<QuasiGaloisReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover_y: Option<YSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aut: Option<AutSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qgc: Option<QgcVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probes: Option<ProbeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

impl ConstructionReport {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn ring_section(name: &str, over: Option<String>, ring: &RingPresentation) -> ChartSection {
    ChartSection { name: name.to_string(), over, generators: ring.generator_strings(), relations: ring.relation_strings() }
}

fn cover_section(cover: &CoverComplex, chart_map: Option<&[(String, String)]>) -> CoverSection {
    let over = |n: &str| chart_map.and_then(|m| m.iter().find(|(x, _)| x == n).map(|(_, y)| y.clone()));
    CoverSection {
        charts: cover.charts.iter().map(|c| ring_section(&c.name, over(&c.name), &c.ring)).collect(),
        overlaps: cover.overlaps.iter().map(|o| OverlapSection { charts: o.charts.clone(), chart: ring_section(&o.chart.name, over(&o.chart.name), &o.chart.ring) }).collect(),
    }
}

fn galois_section(g: &GaloisGroup, tower: &FieldTower, fixed: FixedFieldVerdict) -> GaloisSection {
    GaloisSection {
        order: g.order(),
        elements: g.elements().iter().map(|s| s.describe(tower).into_iter().map(|(generator, image)| Image { generator, image }).collect()).collect(),
        table: g.table().to_vec(),
        abelian: g.is_abelian(),
        cyclic: g.is_cyclic(),
        noncommuting_pair: g.noncommuting_pair(),
        fixed_field: fixed,
    }
}

fn tower_section(tower: &FieldTower) -> TowerSection {
    let gen = |i: usize| {
        let (sub, f) = level_poly(tower, i);
        GeneratorSection { name: tower.generator_name(i).to_string(), min_poly: sub.poly_to_string(&f, tower.generator_name(i)), degree: tower.degree_of(i) }
    };
    TowerSection {
        transcendentals: tower.transcendentals().to_vec(),
        base: (0..tower.base_mark()).map(gen).collect(),
        extension: (tower.base_mark()..tower.num_algebraics()).map(gen).collect(),
        extension_degree: tower.extension_degree(),
    }
}

struct Run<'a> {
    cfg: &'a Config,
    report: ConstructionReport,
    clock: Instant,
    timings: Vec<Timing>,
}

impl Run<'_> {
    fn lap(&mut self, stage: &'static str) {
        let now = Instant::now();
        self.timings.push(Timing { stage, millis: (now - self.clock).as_millis() });
        self.clock = now;
    }
}

/// Stops the run with a status.
struct Halt(Status);

impl From<Error> for Halt {
    fn from(e: Error) -> Self {
        Halt(Status::new(classify(&e), e.to_string()))
    }
}

/// Runs the pipeline up to what `command` needs. Failures are recorded in
/// the report's status; the report is always produced.
pub fn run(spec: &ModelSpec, cfg: &Config, command: Command, with_timings: bool) -> ConstructionReport {
    let report = ConstructionReport {
        tool: Tool { name: "galmodel", version: env!("CARGO_PKG_VERSION") },
        command: command.name(),
        seed: cfg.seed,
        config: cfg.clone(),
        input: canonical_json(spec),
        status: Status::new(StatusKind::Ok, "ok"),
        verdicts: Verdicts::default(),
        tower: None,
        galois: None,
        nice_basis: None,
        quasi_galois: None,
        cover_y: None,
        model: None,
        aut: None,
        qgc: None,
        probes: None,
        timings: None,
    };
    let mut run = Run { cfg, report, clock: Instant::now(), timings: Vec::new() };
    if let Err(Halt(status)) = stages(&mut run, spec, command) {
        run.report.status = status;
    }
    if with_timings {
        run.report.timings = Some(std::mem::take(&mut run.timings));
    }
    run.report
}

fn stages(run: &mut Run<'_>, spec: &ModelSpec, command: Command) -> std::result::Result<(), Halt> {
    let cfg = run.cfg;
    let tower = tower_build(&spec.tower, cfg)?;
    run.report.tower = Some(tower_section(&tower));
    run.lap("tower");

    let g = enumerate_gal(&tower, cfg)?;
    if !g.verify_table() {
        return Err(Halt(Status::new(StatusKind::InternalFailure, "Galois group table is not a group table")));
    }
    let fixed = fixed_field_certify(&g, &tower);
    let is_galois = fixed.is_galois;
    let fixed_dimension = fixed.fixed_dimension;
    if is_galois != (g.order() == tower.extension_degree()) {
        return Err(Halt(Status::new(StatusKind::InternalFailure, "group order disagrees with the fixed-field certificate")));
    }
    run.report.galois = Some(galois_section(&g, &tower, fixed));
    run.report.verdicts.is_galois = Some(is_galois);
    run.lap("galois");
    if !is_galois {
        if let Ok(q) = quasi_galois_check(&tower, cfg) {
            run.report.verdicts.quasi_galois = Some(q.verdict);
            run.report.quasi_galois = Some(q);
        }
        return Err(Error::NotGalois { fixed_dimension }.into());
    }
    if command == Command::VerifyGalois {
        return Ok(());
    }

    let nice: Vec<_> = spec.nice_basis.iter().map(|e| tower.nf(e)).collect::<Result<_>>()?;
    let nb = validate_nice_basis(&tower, &nice);
    let nb_pass = nb.pass;
    run.report.verdicts.nice_basis = Some(nb_pass);
    run.report.nice_basis = Some(nb);
    let q = quasi_galois_check(&tower, cfg)?;
    run.report.verdicts.quasi_galois = Some(q.verdict);
    run.report.quasi_galois = Some(q);
    run.lap("field checks");
    if !nb_pass {
        return Err(Halt(Status::new(StatusKind::InputError, "nice basis rejected")));
    }

    let base = tower.base_tower();
    let cover_y = CoverComplex::from_spec(&spec.cover, &base, Ambient::K, cfg)?;
    let validation = validate_cover(&cover_y, &base, cfg)?;
    let cover_verdict = validation.verdict;
    run.report.verdicts.cover_y = Some(cover_verdict);
    run.report.cover_y = Some(YSection { cover: cover_section(&cover_y, None), validation });
    run.lap("cover of Y");
    match cover_verdict {
        Tristate::True => {}
        Tristate::Refuted => return Err(Halt(Status::new(StatusKind::InputError, "cover of Y is not reduced or an overlap misses a chart"))),
        Tristate::Inconclusive => {
            return Err(Halt(Status::new(StatusKind::Inconclusive, "fraction field of a Y-chart not certified within the degree bound")));
        }
    }

    let model: ModelX = match &spec.x_cover {
        None => build_model(&cover_y, &tower, &g, &nice, cfg)?,
        Some(x) => assemble_model(x, &cover_y, &tower, &g, &nice, cfg)?,
    };
    let check = verify_model(&model, &cover_y, &tower, cfg)?;
    let model_verdict = check.verdict;
    let ff = check.fraction_field.iter().fold(Tristate::True, |acc, f| acc.and(f.verdict));
    run.report.verdicts.model = Some(model_verdict);
    run.report.verdicts.function_field = Some(ff);
    run.report.verdicts.f_affine = Some(check.affine);
    run.report.model = Some(ModelSection {
        constructed: model.constructed,
        delta: model.delta.delta.iter().map(|x| tower.to_string_of(x)).collect(),
        delta_prime: model.delta.delta_prime.iter().map(|x| tower.to_string_of(x)).collect(),
        cover: cover_section(&model.cover_x, Some(&model.chart_map)),
        chart_map: model.chart_map.clone(),
        check,
    });
    run.lap("model");
    if model.constructed && model_verdict != Tristate::True {
        let kind = if model_verdict == Tristate::Inconclusive { StatusKind::Inconclusive } else { StatusKind::InternalFailure };
        return Err(Halt(Status::new(kind, "constructed model failed verification")));
    }

    let aut = compute_aut(&model, &tower, cfg)?;
    let iso = iso_check(&aut, &g);
    let iso_pass = iso.pass;
    run.report.verdicts.aut_iso_gal = Some(iso_pass);
    run.report.aut = Some(AutSection { order: aut.order(), elements: aut.elements.clone(), table: aut.table.clone(), iso });
    run.lap("aut");

    let qgc = qgc_check(&model, &g, &tower, cfg)?;
    let qgc_verdict = qgc.verdict;
    run.report.verdicts.qgc = Some(qgc_verdict);
    run.report.qgc = Some(qgc);
    run.lap("qgc");

    if model.constructed && (!iso_pass || qgc_verdict != Tristate::True) {
        return Err(Halt(Status::new(StatusKind::InternalFailure, "constructed model is not a geometric model or not quasi-galois closed")));
    }

    if command == Command::Report {
        let mut invariant = Vec::new();
        for (x, y) in &model.chart_map {
            let b = cover_y.chart(y).expect("Y-chart");
            invariant.push(invariant_subring_probe(x, &g, &b.ring, &model.delta, &tower, cfg.degree_bound)?);
        }
        let mut essential = Vec::new();
        for c in model.cover_x.all_charts() {
            for (sigma, conj) in conjugate_charts(&c.ring, &g, &tower, cfg)?.into_iter().skip(1) {
                let probes = default_probes(&c.ring, &conj, &tower);
                essential.push(EssentialSection { chart: c.name.clone(), conjugate_by: sigma, result: essentially_equal_probe(&c.ring, &conj, &probes, &tower, cfg.degree_bound)? });
            }
        }
        run.report.verdicts.invariant_subring = Some(invariant.iter().all(|p| p.witness.is_none()));
        run.report.verdicts.essential_equality = Some(essential.iter().all(|e| e.result.verdict == "pass-on-probes"));
        run.report.probes = Some(ProbeSection { invariant_subring: invariant, essential_equality: essential });
        run.lap("probes");
    }

    let (kind, message) = match command {
        Command::CheckQgc => match qgc_verdict {
            Tristate::True => (StatusKind::Ok, "quasi-galois closed".to_string()),
            Tristate::Refuted => (StatusKind::Refuted, "a chart has a conjugate other than itself".to_string()),
            Tristate::Inconclusive => (StatusKind::Inconclusive, "conjugate comparison inconclusive".to_string()),
        },
        Command::AutGroup if !iso_pass => (StatusKind::Refuted, format!("Aut(X/Y) has order {} but Gal(L/K) has order {}", aut.order(), g.order())),
        _ if !model.constructed => {
            let iso = if iso_pass { Tristate::True } else { Tristate::Refuted };
            match model_verdict.and(qgc_verdict).and(iso) {
                Tristate::True => (StatusKind::Ok, "ok".to_string()),
                Tristate::Refuted => (StatusKind::Refuted, "assembled model refuted".to_string()),
                Tristate::Inconclusive => (StatusKind::Inconclusive, "assembled model not certified".to_string()),
            }
        }
        _ => (StatusKind::Ok, "ok".to_string()),
    };
    run.report.status = Status::new(kind, message);
    Ok(())
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Human-readable rendering. Verdict lines have the form `verdict.<name>: <value>`.
pub fn render_text(r: &ConstructionReport) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("{} {} ({})", r.tool.name, r.tool.version, r.command));
    line(format!("status: {} (exit {}): {}", serde_json::to_value(r.status.kind).unwrap().as_str().unwrap(), r.status.exit_code, r.status.message));
    if let Some(t) = &r.tower {
        if t.transcendentals.is_empty() {
            line("K = Q".to_string());
        } else {
            line(format!("K = Q({})", t.transcendentals.join(", ")));
        }
        for g in &t.base {
            line(format!("  {} : {} = 0", g.name, g.min_poly));
        }
        line(format!("L = K({}), [L:K] = {}", t.extension.iter().map(|g| g.name.as_str()).collect::<Vec<_>>().join(", "), t.extension_degree));
        for g in &t.extension {
            line(format!("  {} : {} = 0", g.name, g.min_poly));
        }
    }
    if let Some(g) = &r.galois {
        line(format!("Gal(L/K): order {}, fixed subspace dimension {}", g.order, g.fixed_field.fixed_dimension));
        for (i, e) in g.elements.iter().enumerate() {
            let imgs: Vec<String> = e.iter().map(|im| format!("{} -> {}", im.generator, im.image)).collect();
            line(format!("  sigma{i}: {}", imgs.join(", ")));
        }
        line("  table:".to_string());
        for row in &g.table {
            line(format!("    {}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")));
        }
        if let Some((i, j)) = g.noncommuting_pair {
            line(format!("  nonabelian: sigma{i} sigma{j} != sigma{j} sigma{i}"));
        }
    }
    if let Some(m) = &r.model {
        line(format!("Delta = {{{}}}", m.delta.join(", ")));
        line(format!("X-charts ({}):", if m.constructed { "constructed" } else { "assembled" }));
        for c in m.cover.charts.iter().chain(m.cover.overlaps.iter().map(|o| &o.chart)) {
            line(format!("  {} over {}: Z[{}]", c.name, c.over.as_deref().unwrap_or("?"), c.generators.join(", ")));
            for rel in &c.relations {
                line(format!("    {rel} = 0"));
            }
        }
    }
    if let Some(a) = &r.aut {
        line(format!("Aut(X/Y): order {}, elements {:?}", a.order, a.elements));
    }
    if let Some(q) = &r.qgc {
        for c in &q.charts {
            let w = c.witness.as_ref().map(|w| format!(", witness sigma{}: Z[{}]", w.sigma, w.generators.join(", "))).unwrap_or_default();
            line(format!("  chart {}: {} conjugate(s){w}", c.chart, c.conjugate_count));
        }
    }
    if let Some(p) = &r.probes {
        for ip in &p.invariant_subring {
            let vals: Vec<&str> = ip.probes.iter().map(|x| x.value.as_str()).collect();
            line(format!("  invariant probe {}: {} [{}]", ip.chart, ip.verdict, vals.join(", ")));
        }
    }
    let v = &r.verdicts;
    let tri = |t: Tristate| t.as_str();
    let entries: Vec<(&str, Option<String>)> = vec![
        ("is_galois", v.is_galois.map(|b| yes(b).into())),
        ("nice_basis", v.nice_basis.map(|b| yes(b).into())),
        ("quasi_galois", v.quasi_galois.map(|b| yes(b).into())),
        ("cover_y", v.cover_y.map(|t| tri(t).into())),
        ("model", v.model.map(|t| tri(t).into())),
        ("function_field", v.function_field.map(|t| tri(t).into())),
        ("f_affine", v.f_affine.map(|b| yes(b).into())),
        ("aut_iso_gal", v.aut_iso_gal.map(|b| yes(b).into())),
        ("qgc", v.qgc.map(|t| tri(t).into())),
        ("invariant_subring", v.invariant_subring.map(|b| yes(b).into())),
        ("essential_equality", v.essential_equality.map(|b| yes(b).into())),
    ];
    for (k, val) in entries {
        if let Some(val) = val {
            line(format!("verdict.{k}: {val}"));
        }
    }
    if let Some(ts) = &r.timings {
        for t in ts {
            line(format!("time.{}: {} ms", t.stage, t.millis));
        }
    }
    out
}
