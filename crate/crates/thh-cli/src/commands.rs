//! Command implementations. Each returns a [`Rendered`] built from one
//! serializable value so that every output format shows the same numbers.

use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thh_engine::algebra::{Algebra, Presentation, PresentationJson};
use thh_engine::homological::{
    case_four_resolution, dims_to_json, hochschild_complex, minimal_resolution, tor_via_bar, BigradedDims,
    CoefficientMap, DimJson, Exactness, FreeResolution,
};
use thh_engine::ktheory::{presets, run_scenario, suite_jobs, CaseParams, PRESETS, SCENARIOS};
use thh_engine::report::CSV_HEADER;
use thh_engine::specseq::{BigradedPage, Convention, DifferentialSpec, PageRecord};
use thh_engine::steenrod::{homology_of_k_comodule, regular_comodule, v1_thh_comodule, DualSteenrod};
use thh_engine::{classify as classify_pair, Claim, PrimeField, Report};

use crate::output::{join, table, Rendered};
use crate::{Common, ComoduleKind, Source, TorMethod};

fn params(common: &Common) -> Result<CaseParams> {
    let q = common.q.context("--q is required here")?;
    Ok(classify_pair(q, common.p)?)
}

/// The presentation named by --preset or read from --input-file.
fn load(common: &Common, source: &Source) -> Result<(String, Presentation)> {
    match (&source.preset, &source.input_file) {
        (Some(name), None) => Ok((name.clone(), presets::preset(name, common.p, common.q)?)),
        (None, Some(path)) => {
            let json: PresentationJson = read_json(path)?;
            Ok((path.display().to_string(), json.to_presentation()?))
        }
        (Some(_), Some(_)) => bail!("give either --preset or --input-file, not both"),
        (None, None) => bail!("give --preset or --input-file"),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn dim_rows(dims: &[DimJson]) -> Vec<Vec<String>> {
    dims.iter().map(|d| vec![d.s.to_string(), d.t.to_string(), d.dim.to_string()]).collect()
}

fn dim_text(dims: &[DimJson]) -> String {
    dims.iter().map(|d| format!("  (s={}, t={})  {}\n", d.s, d.t, d.dim)).collect()
}

fn positive(dims: BigradedDims) -> BigradedDims {
    dims.into_iter().filter(|&(_, n)| n > 0).collect()
}

#[derive(Serialize)]
struct ClassifyOut {
    r: u32,
    v: u32,
    case: u8,
}

pub fn classify(common: &Common) -> Result<Rendered> {
    let c = params(common)?;
    let out = ClassifyOut { r: c.r, v: c.v, case: c.case };
    let text = format!("r={} v={} case={}", out.r, out.v, out.case);
    let csv = table(&["r", "v", "case"], [vec![out.r.to_string(), out.v.to_string(), out.case.to_string()]]);
    Rendered::new(&out, text, csv, true)
}

#[derive(Serialize)]
struct PresetOut {
    name: &'static str,
    needs_q: bool,
    description: &'static str,
}

pub fn poincare(common: &Common, source: &Source, list: bool) -> Result<Rendered> {
    if list {
        let out: Vec<PresetOut> =
            PRESETS.iter().map(|i| PresetOut { name: i.name, needs_q: i.needs_q, description: i.description }).collect();
        let text = out.iter().map(|i| format!("{:<22} {}{}\n", i.name, i.description, if i.needs_q { " (needs --q)" } else { "" })).collect();
        let csv = table(
            &["name", "needs_q", "description"],
            out.iter().map(|i| vec![i.name.to_string(), i.needs_q.to_string(), i.description.to_string()]),
        );
        return Rendered::new(&out, text, csv, true);
    }
    let (name, pres) = load(common, source)?;
    let json = PresentationJson::from_presentation(&pres, Some(common.max_degree))?;
    let dims = json.dims.clone().unwrap_or_default();
    let mut text = format!("{name} over F_{}\n", json.p);
    for g in &json.generators {
        text.push_str(&format!("  {} {} degree {} filtration {}\n", g.name, g.kind, g.degree, g.filtration));
    }
    for r in &json.relations {
        text.push_str(&format!("  relation {r}\n"));
    }
    text.push_str(&format!("dims 0..{}: {}\n", common.max_degree, join(&dims)));
    let csv = table(&["degree", "dim"], dims.iter().enumerate().map(|(n, d)| vec![n.to_string(), d.to_string()]));
    Rendered::new(&json, text, csv, true)
}

#[derive(Serialize)]
struct BigradedOut {
    algebra: String,
    p: u32,
    max_degree: u32,
    method: &'static str,
    dims: Vec<DimJson>,
    /// Dimension in each total degree s + t ≤ max_degree.
    totals: Vec<usize>,
}

fn bigraded(algebra: String, common: &Common, method: &'static str, dims: &BigradedDims) -> Result<Rendered> {
    let d = common.max_degree;
    let mut totals = vec![0; d as usize + 1];
    for (&(s, t), &n) in dims {
        if s + t <= d {
            totals[(s + t) as usize] += n;
        }
    }
    let out = BigradedOut { algebra, p: common.p, max_degree: d, method, dims: dims_to_json(dims), totals };
    let text = format!(
        "{} of {} by {}, internal degree ≤ {d}\n{}totals by s + t: {}\n",
        if method == "hochschild-complex" { "HH" } else { "Tor" },
        out.algebra,
        method,
        dim_text(&out.dims),
        join(&out.totals)
    );
    let csv = table(&["s", "t", "dim"], dim_rows(&out.dims));
    Rendered::new(&out, text, csv, true)
}

pub fn hh(common: &Common, source: &Source) -> Result<Rendered> {
    let (name, pres) = load(common, source)?;
    let alg = Algebra::new(pres, common.max_degree)?;
    let cx = hochschild_complex(&alg, &CoefficientMap::identity(&alg)?, common.max_degree)?;
    bigraded(name, common, "hochschild-complex", &positive(cx.homology_dims()))
}

pub fn tor(common: &Common, source: &Source, method: TorMethod) -> Result<Rendered> {
    let (name, pres) = load(common, source)?;
    let alg = Algebra::new(pres, common.max_degree)?;
    let (label, dims) = match method {
        TorMethod::Resolution => ("minimal-resolution", minimal_resolution(&alg, common.max_degree)?.generator_dims()),
        TorMethod::Bar => ("bar-complex", tor_via_bar(&alg, common.max_degree)?),
    };
    bigraded(name, common, label, &positive(dims))
}

#[derive(Serialize)]
struct GeneratorOut {
    s: usize,
    name: String,
    degree: u32,
    boundary: String,
}

#[derive(Serialize)]
struct ResolutionOut {
    algebra: String,
    max_degree: u32,
    minimal: bool,
    square_zero: bool,
    exactness: Exactness,
    generators: Vec<GeneratorOut>,
}

fn describe_generators(res: &FreeResolution) -> Vec<GeneratorOut> {
    let pres = res.algebra().presentation();
    let mut out = Vec::new();
    for s in 0..res.len() {
        for g in res.stage(s) {
            let terms: Vec<String> = g
                .boundary
                .iter()
                .map(|(i, c)| format!("({})·{}", pres.format_element(c), res.stage(s - 1)[*i].name))
                .collect();
            let boundary = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            out.push(GeneratorOut { s, name: g.name.clone(), degree: g.degree, boundary });
        }
    }
    out
}

pub fn resolution(common: &Common, source: &Source, explicit: bool) -> Result<Rendered> {
    let d = common.max_degree;
    let (name, res) = if explicit {
        let c = params(common)?;
        if c.case != 4 || c.r < 2 {
            bail!("the explicit resolution needs case 4 with r > 1; (q, p) = ({}, {}) is case {} with r = {}", c.q, c.p, c.case, c.r);
        }
        ("E(x) ⊗ P_k(y)/(xy^{k-1})".to_string(), case_four_resolution(c.field(), c.r, c.k, d)?)
    } else {
        let (name, pres) = load(common, source)?;
        (name, minimal_resolution(&Algebra::new(pres, d)?, d)?)
    };
    let square_zero = res.check_square_zero(d).is_ok();
    let exactness = res.exactness(d);
    let out = ResolutionOut {
        algebra: name,
        max_degree: d,
        minimal: res.is_minimal(),
        square_zero,
        exactness,
        generators: describe_generators(&res),
    };
    let mut text = format!("resolution of F_p over {}, degree ≤ {d}\n", out.algebra);
    for g in &out.generators {
        text.push_str(&format!("  F_{} {} (degree {}) ↦ {}\n", g.s, g.name, g.degree, g.boundary));
    }
    text.push_str(&format!(
        "minimal {}\nd∘d = 0 {}\nexact through total degree {}: {} (failures {:?})\n",
        out.minimal,
        out.square_zero,
        out.exactness.through_total,
        out.exactness.exact(),
        out.exactness.failures
    ));
    let csv = table(
        &["s", "name", "degree", "boundary"],
        out.generators.iter().map(|g| vec![g.s.to_string(), g.name.clone(), g.degree.to_string(), g.boundary.clone()]),
    );
    let pass = out.square_zero && out.exactness.exact();
    Rendered::new(&out, text, csv, pass)
}

#[derive(Serialize)]
struct PrimitiveDegree {
    degree: u32,
    module_dim: usize,
    primitives: Vec<String>,
}

#[derive(Serialize)]
struct PrimitivesOut {
    comodule: &'static str,
    p: u32,
    computed_through: u32,
    /// Number of primitives in each degree 0..=computed_through.
    dims: Vec<usize>,
    /// Degrees with primitives, with a basis for each.
    nonzero: Vec<PrimitiveDegree>,
}

pub fn primitives(common: &Common, kind: ComoduleKind, a: u32) -> Result<Rendered> {
    let d = common.max_degree;
    let field = PrimeField::new(common.p)?;
    // The coaction models mention ξ_2 and τ_2, so A_* must reach 2p^2 − 1
    // even when fewer degrees are asked for.
    let p = common.p;
    let a_star = Arc::new(DualSteenrod::new(field, d.max(2 * p * p - 1))?);
    let (label, m) = match kind {
        ComoduleKind::DualSteenrod => ("dual-steenrod", regular_comodule(a_star)?),
        ComoduleKind::V1Thh => ("v1-thh", v1_thh_comodule(a_star, d)?),
        ComoduleKind::Hk => {
            let c = params(common)?;
            ("hk", homology_of_k_comodule(a_star, c.case, c.r, c.k, field.reduce(a as i64), d)?)
        }
    };
    let top = m.computed_through().min(d);
    let mut dims = Vec::new();
    let mut nonzero = Vec::new();
    for n in 0..=top {
        let prims = m.primitives(n)?;
        dims.push(prims.len());
        if !prims.is_empty() {
            let pres = m.module().presentation();
            nonzero.push(PrimitiveDegree {
                degree: n,
                module_dim: m.module().dim(n),
                primitives: prims.iter().map(|e| pres.format_element(e)).collect(),
            });
        }
    }
    let out = PrimitivesOut { comodule: label, p: common.p, computed_through: top, dims, nonzero };
    let mut text = format!("primitives of {} over F_{}, degrees 0..{top}\n", out.comodule, out.p);
    text.push_str(&format!("dims: {}\n", join(&out.dims)));
    for pd in &out.nonzero {
        text.push_str(&format!("  degree {} ({} of {}): {}\n", pd.degree, pd.primitives.len(), pd.module_dim, pd.primitives.join(", ")));
    }
    let csv = table(
        &["degree", "module_dim", "primitive_dim", "basis"],
        (0..=top).map(|n| {
            let basis = out.nonzero.iter().find(|pd| pd.degree == n).map(|pd| pd.primitives.join("; ")).unwrap_or_default();
            vec![n.to_string(), m.module().dim(n).to_string(), out.dims[n as usize].to_string(), basis]
        }),
    );
    Rendered::new(&out, text, csv, true)
}

fn two() -> u32 {
    2
}

/// The `page` input file.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PageInput {
    #[serde(default)]
    presentation: Option<PresentationJson>,
    #[serde(default)]
    preset: Option<String>,
    #[serde(default = "two")]
    start: u32,
    #[serde(default)]
    convention: Option<Convention>,
    #[serde(default)]
    differentials: Vec<DifferentialSpec>,
    /// Page to stop at; defaults to one past the last differential.
    #[serde(default)]
    last_page: Option<u32>,
}

#[derive(Serialize)]
struct PageOut {
    algebra: String,
    max_degree: u32,
    final_page: u32,
    conjectural: bool,
    euler_consistent: bool,
    pages: Vec<PageRecord>,
    /// Bigraded dimensions on the final page.
    dims: Vec<DimJson>,
    totals: Vec<usize>,
}

pub fn page(common: &Common, path: &Path, preset: Option<&str>) -> Result<Rendered> {
    let input: PageInput = read_json(path)?;
    let d = common.max_degree;
    let (name, pres) = match (preset.or(input.preset.as_deref()), &input.presentation) {
        (Some(name), _) => (name.to_string(), presets::preset(name, common.p, common.q)?),
        (None, Some(json)) => (path.display().to_string(), json.to_presentation()?),
        (None, None) => bail!("the page description needs a presentation or a preset"),
    };
    // One degree of headroom so total degree d sees its incoming differentials.
    let alg = Algebra::new(pres, d + 1)?;
    let mut page = BigradedPage::new(alg, input.start, input.convention.unwrap_or(Convention::Homological));
    let last = input.last_page.unwrap_or_else(|| input.differentials.iter().map(|s| s.page + 1).max().unwrap_or(input.start));
    page.run_sequence(&input.differentials, last)?;
    let dims: BigradedDims = page.dims().into_iter().filter(|&((s, t), n)| s + t <= d && n > 0).collect();
    let mut totals = page.total_dims();
    totals.truncate(d as usize + 1);
    let out = PageOut {
        algebra: name,
        max_degree: d,
        final_page: page.page(),
        conjectural: page.is_conjectural(),
        euler_consistent: page.euler_consistent(),
        pages: page.history().to_vec(),
        dims: dims_to_json(&dims),
        totals,
    };
    let mut text = format!("spectral sequence on {}, total degree ≤ {d}\n", out.algebra);
    for r in &out.pages {
        text.push_str(&format!("  d^{} {:?}: total rank {}\n", r.page, r.status, r.total_rank()));
    }
    text.push_str(&format!(
        "E^{} totals: {}\nEuler characteristic consistent: {}\nconjectural: {}\n{}",
        out.final_page,
        join(&out.totals),
        out.euler_consistent,
        out.conjectural,
        page.chart(d)
    ));
    let csv = table(&["s", "t", "dim"], dim_rows(&out.dims));
    Rendered::new(&out, text, csv, out.euler_consistent)
}

#[derive(Serialize)]
struct ScenarioListing {
    id: &'static str,
    cases: &'static [u8],
    conjectural: bool,
    description: &'static str,
}

pub fn scenario(common: &Common, id: Option<&str>) -> Result<Rendered> {
    let Some(id) = id else {
        let out: Vec<ScenarioListing> = SCENARIOS
            .iter()
            .map(|s| ScenarioListing { id: s.id, cases: s.cases, conjectural: s.conjectural, description: s.description })
            .collect();
        let text = out.iter().map(|s| format!("{:<26} cases {:?}{}  {}\n", s.id, s.cases, if s.conjectural { " conjectural" } else { "" }, s.description)).collect();
        let csv = table(
            &["id", "cases", "conjectural", "description"],
            out.iter().map(|s| vec![s.id.to_string(), join(s.cases), s.conjectural.to_string(), s.description.to_string()]),
        );
        return Rendered::new(&out, text, csv, true);
    };
    let report = run_scenario(id, &params(common)?, common.max_degree)?;
    let mut csv = vec![CSV_HEADER.split(',').map(String::from).collect::<Vec<_>>()];
    csv.extend(report_rows(&report));
    Rendered::new(&report, report.to_text(), csv, report.passed())
}

fn report_rows(report: &Report) -> Vec<Vec<String>> {
    report
        .claims
        .iter()
        .map(|c| {
            vec![
                report.scenario.clone(),
                c.description.clone(),
                c.expected.to_string(),
                c.computed.to_string(),
                c.pass.to_string(),
            ]
        })
        .collect()
}

#[derive(Serialize)]
struct SuiteOut {
    max_degree: u32,
    passed: usize,
    failed: usize,
    reports: Vec<Report>,
}

pub fn suite(common: &Common) -> Result<Rendered> {
    let d = common.max_degree;
    let reports: Vec<Report> = suite_jobs()?
        .into_par_iter()
        .map(|(id, c)| {
            run_scenario(id, &c, d).unwrap_or_else(|e| {
                let mut r = Report::new(id, serde_json::json!({"q": c.q, "p": c.p, "max_degree": d}));
                r.push(Claim::holds("scenario ran", false, e.to_string()));
                r
            })
        })
        .collect();
    let passed = reports.iter().filter(|r| r.passed()).count();
    let out = SuiteOut { max_degree: d, passed, failed: reports.len() - passed, reports };
    let mut text: String = out.reports.iter().map(|r| r.to_text()).collect();
    text.push_str(&format!("suite: {} passed, {} failed\n", out.passed, out.failed));
    let mut csv = vec![CSV_HEADER.split(',').map(String::from).collect::<Vec<_>>()];
    for r in &out.reports {
        csv.extend(report_rows(r));
    }
    Rendered::new(&out, text, csv, out.failed == 0)
}
