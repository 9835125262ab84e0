//! The five subcommands. Each returns the rendered output and a status;
//! writing and exit codes are left to the caller.

use rayon::prelude::*;
use serde::Serialize;

use bohr_core::bohr::{bohr_report, bohr_sum, BohrReport, Growth, Verdict};
use bohr_core::catalog::{extremal_pair, CatalogEntry, EntryId, ExtremalKind};
use bohr_core::corpus::{generate_case, TheoremKind};
use bohr_core::power_series::{Series, C64};
use bohr_core::quasiconformal::HarmonicPair;
use bohr_core::radius::{solve, EquationId, Solution};

use crate::config::{distortion, RunConfig};
use crate::error::CliError;
use crate::format::{self, round, sig, Format};
use crate::grid::KGrid;

/// Tolerance handed to the root finders.
pub const SOLVE_TOL: f64 = 1e-14;
/// Distance below the theorem radius at which `verify` evaluates.
pub const RADIUS_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    Failure,
    InconclusiveOnly,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Failure => 1,
            Status::InconclusiveOnly => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub status: Status,
    /// Human-readable summary for stderr.
    pub note: Option<String>,
    /// Whether `text` already contains the note.
    pub note_in_text: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: Status::Success, note: None, note_in_text: false }
    }
}

fn computation<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Computation(e.to_string())
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn cplx(z: C64) -> String {
    if z.im == 0.0 {
        sig(z.re)
    } else if z.re == 0.0 {
        format!("{}i", sig(z.im))
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{}{}i", sig(z.re), sign, sig(z.im.abs()))
    }
}

fn pair_json(z: C64) -> [Option<f64>; 2] {
    [round(z.re), round(z.im)]
}

// ---------------------------------------------------------------- solve

#[derive(Debug, Serialize)]
struct SolveRow {
    eq_id: &'static str,
    k: Option<f64>,
    #[serde(rename = "K")]
    big_k: Option<f64>,
    radius: Option<f64>,
    residual: Option<f64>,
}

const SOLVE_HEADER: [&str; 5] = ["eq_id", "k", "K", "radius", "residual"];

fn solve_cells(sol: &Solution) -> Vec<String> {
    vec![sol.id.as_str().into(), sig(sol.k), sig(distortion(sol.k)), sig(sol.radius), sig(sol.residual)]
}

fn solve_json(sol: &Solution) -> SolveRow {
    SolveRow {
        eq_id: sol.id.as_str(),
        k: round(sol.k),
        big_k: round(distortion(sol.k)),
        radius: round(sol.radius),
        residual: round(sol.residual),
    }
}

fn render_solutions(sols: &[Solution], fmt: Format) -> String {
    match fmt {
        Format::Csv => format::csv(&SOLVE_HEADER, &sols.iter().map(solve_cells).collect::<Vec<_>>()),
        Format::Table => format::table(&SOLVE_HEADER, &sols.iter().map(solve_cells).collect::<Vec<_>>()),
        Format::Json => format::json(&sols.iter().map(solve_json).collect::<Vec<_>>()),
    }
}

fn equations(eq: Option<&str>) -> Result<Vec<EquationId>, CliError> {
    match eq {
        None => Ok(EquationId::ALL.to_vec()),
        Some(s) if s.eq_ignore_ascii_case("all") => Ok(EquationId::ALL.to_vec()),
        Some(s) => Ok(vec![s.parse::<EquationId>().map_err(usage)?]),
    }
}

pub fn cmd_solve(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let k = cfg.require_dilatation()?;
    let sols = equations(cfg.eq.as_deref())?
        .into_iter()
        .map(|id| solve(id, k, SOLVE_TOL).map_err(computation))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Outcome::ok(render_solutions(&sols, cfg.format_or(Format::Table))))
}

// ---------------------------------------------------------------- sweep

pub fn cmd_sweep(cfg: &RunConfig, grid: &KGrid) -> Result<Outcome, CliError> {
    let ids = equations(cfg.eq.as_deref())?;
    let jobs: Vec<(EquationId, f64)> =
        ids.iter().flat_map(|&id| grid.points().iter().map(move |p| (id, p.k))).collect();
    let sols = jobs
        .par_iter()
        .map(|&(id, k)| solve(id, k, SOLVE_TOL).map_err(computation))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Outcome::ok(render_solutions(&sols, cfg.format_or(Format::Csv))))
}

// ---------------------------------------------------------------- verify

/// One pair to evaluate, with the data needed to report on it.
struct Instance {
    index: u64,
    entry: String,
    k: f64,
    pair: HarmonicPair,
    dist0: f64,
}

/// `g' = k·h'`, or `g' = k·z·h'` when `b₁` must vanish.
fn constant_dilatation(h: &Series, k: f64, b1_zero: bool) -> Series {
    let mut dg = h.derivative().into_coeffs();
    if b1_zero {
        dg.rotate_right(1);
        dg[0] = C64::new(0.0, 0.0);
    }
    for c in dg.iter_mut() {
        *c *= k;
    }
    Series::new(dg).expect("scaled coefficients stay finite").antiderivative_zero()
}

/// A named fixture: an extremal pair (taking `lambda`) or a catalog entry
/// with a constant-dilatation co-analytic part.
fn fixture(name: &str, params: &[(String, C64)], k: f64, b1_zero: bool, zero_h0: bool, order: usize) -> Result<Instance, CliError> {
    if let Ok(kind) = name.parse::<ExtremalKind>() {
        let mut lambda = C64::new(1.0, 0.0);
        for (p, v) in params {
            if p == "lambda" {
                lambda = *v;
            } else {
                return Err(CliError::Usage(format!("{kind} takes only 'lambda', not '{p}'")));
            }
        }
        let pair = extremal_pair(kind, k, lambda, order).map_err(usage)?;
        let dist0 = CatalogEntry::default_for(kind.entry()).dist0();
        return Ok(Instance { index: 0, entry: kind.as_str().into(), k, pair, dist0 });
    }
    let id: EntryId = name.parse().map_err(usage)?;
    let entry = CatalogEntry::new(id, params.iter().map(|(n, v)| (n.as_str(), *v))).map_err(usage)?;
    let mut h = entry.coeffs(order).map_err(computation)?;
    if zero_h0 {
        h = Series::scale_and_add(&h, C64::new(1.0, 0.0), &Series::constant(-h.coeff(0), order), C64::new(1.0, 0.0))
            .map_err(computation)?;
    }
    let g = constant_dilatation(&h, k, b1_zero);
    let pair = HarmonicPair::new(h, g).map_err(computation)?.with_context(entry.context()).with_declared_k_unchecked(k);
    Ok(Instance { index: 0, entry: id.as_str().into(), k, pair, dist0: entry.dist0() })
}

/// Fixture from `--entry`, or `count` generated cases.
fn instances(cfg: &RunConfig, theorem: TheoremKind, k: Option<f64>, order: usize) -> Result<Vec<Instance>, CliError> {
    if let Some(name) = &cfg.entry {
        let k = k.ok_or_else(|| CliError::Usage("a fixture needs --k or --K".into()))?;
        let zero_h0 = theorem == TheoremKind::UnivalentB1Zero;
        return Ok(vec![fixture(name, &cfg.params, k, theorem.b1_zero(), zero_h0, order)?]);
    }
    if !cfg.params.is_empty() {
        return Err(CliError::Usage("--param needs --entry".into()));
    }
    (0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let case = generate_case(theorem, cfg.seed, i, k, order).map_err(computation)?;
            Ok(Instance { index: i, entry: case.entry.id().as_str().into(), k: case.k, pair: case.pair, dist0: case.dist0 })
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct VerifyRow {
    case: u64,
    entry: String,
    k: Option<f64>,
    r: Option<f64>,
    sum: Option<f64>,
    tail: Option<f64>,
    dist: Option<f64>,
    verdict: Verdict,
}

#[derive(Debug, Default, Serialize)]
struct Counts {
    holds: usize,
    fails: usize,
    inconclusive: usize,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    theorem: TheoremKind,
    order: usize,
    seed: Option<u64>,
    cases: Vec<VerifyRow>,
    summary: Counts,
}

const VERIFY_HEADER: [&str; 8] = ["case", "entry", "k", "r", "sum", "tail", "dist", "verdict"];

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let theorem = cfg.theorem.ok_or_else(|| CliError::Usage("verify needs --theorem".into()))?;
    let order = cfg.verify_order()?;
    let k = cfg.dilatation()?;
    let r_fixed = cfg.radius_override()?;
    let cases = instances(cfg, theorem, k, order)?;
    let results: Vec<(Instance, f64, BohrReport)> = cases
        .into_par_iter()
        .map(|inst| {
            let r = match r_fixed {
                Some(r) => r,
                None => solve(theorem.radius_equation(), inst.k, SOLVE_TOL).map_err(computation)?.radius - RADIUS_MARGIN,
            };
            let rep = bohr_report(&inst.pair, r, Growth::for_pair(&inst.pair), inst.dist0).map_err(computation)?;
            Ok((inst, r, rep))
        })
        .collect::<Result<_, CliError>>()?;

    let mut counts = Counts::default();
    for (_, _, rep) in &results {
        match rep.verdict {
            Verdict::Holds => counts.holds += 1,
            Verdict::Fails => counts.fails += 1,
            Verdict::Inconclusive => counts.inconclusive += 1,
        }
    }
    let status = if counts.fails > 0 {
        Status::Failure
    } else if counts.inconclusive > 0 {
        Status::InconclusiveOnly
    } else {
        Status::Success
    };
    let note = format!(
        "{theorem}: {} holds, {} fails, {} inconclusive",
        counts.holds, counts.fails, counts.inconclusive
    );
    let cells: Vec<Vec<String>> = results
        .iter()
        .map(|(inst, r, rep)| {
            vec![
                inst.index.to_string(),
                inst.entry.clone(),
                sig(inst.k),
                sig(*r),
                sig(rep.partial_sum),
                sig(rep.tail_bound),
                sig(rep.dist0),
                rep.verdict.as_str().into(),
            ]
        })
        .collect();
    let fmt = cfg.format_or(Format::Table);
    let text = match fmt {
        Format::Csv => format::csv(&VERIFY_HEADER, &cells),
        Format::Table => format::table(&VERIFY_HEADER, &cells) + &format!("\n{note}\n"),
        Format::Json => format::json(&VerifyReport {
            theorem,
            order,
            seed: cfg.entry.is_none().then_some(cfg.seed),
            cases: results
                .iter()
                .map(|(inst, r, rep)| VerifyRow {
                    case: inst.index,
                    entry: inst.entry.clone(),
                    k: round(inst.k),
                    r: round(*r),
                    sum: round(rep.partial_sum),
                    tail: round(rep.tail_bound),
                    dist: round(rep.dist0),
                    verdict: rep.verdict,
                })
                .collect(),
            summary: counts,
        }),
    };
    Ok(Outcome { text, status, note: Some(note), note_in_text: fmt == Format::Table })
}

// ---------------------------------------------------------------- conjecture

/// Bins in the margin histogram.
pub const HISTOGRAM_BINS: usize = 10;

#[derive(Debug, Clone, Serialize)]
pub struct Bin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct MarginSummary {
    pub count: usize,
    pub min: f64,
    pub mean: f64,
    pub max: f64,
    pub histogram: Vec<Bin>,
}

/// Min, mean, max and an equal-width histogram of `margins`.
pub fn summarize(margins: &[f64]) -> MarginSummary {
    let count = margins.len();
    if count == 0 {
        return MarginSummary { count, min: f64::NAN, mean: f64::NAN, max: f64::NAN, histogram: Vec::new() };
    }
    let min = margins.iter().copied().fold(f64::INFINITY, f64::min);
    let max = margins.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = margins.iter().sum::<f64>() / count as f64;
    let width = (max - min) / HISTOGRAM_BINS as f64;
    let mut histogram: Vec<Bin> = (0..HISTOGRAM_BINS)
        .map(|i| Bin { lo: min + width * i as f64, hi: min + width * (i + 1) as f64, count: 0 })
        .collect();
    histogram.last_mut().expect("nonempty").hi = max;
    for &m in margins {
        let i = if width > 0.0 { (((m - min) / width) as usize).min(HISTOGRAM_BINS - 1) } else { 0 };
        histogram[i].count += 1;
    }
    MarginSummary { count, min, mean, max, histogram }
}

#[derive(Debug, Serialize)]
struct ConjectureRow {
    case: u64,
    entry: String,
    sum: Option<f64>,
    dist: Option<f64>,
    margin: Option<f64>,
}

#[derive(Debug, Serialize)]
struct ConjectureReport {
    exploratory: bool,
    part: String,
    k: Option<f64>,
    r: Option<f64>,
    order: usize,
    cases: Vec<ConjectureRow>,
    summary: MarginSummary,
}

const CONJECTURE_HEADER: [&str; 5] = ["case", "entry", "sum", "dist", "margin"];

pub fn cmd_conjecture(cfg: &RunConfig, part: &str, analytic_only: bool) -> Result<Outcome, CliError> {
    let (theorem, eq) = match part {
        "a" => (TheoremKind::ConvexB1Zero, EquationId::ConvexQcB1ZeroUpper),
        "b" => (TheoremKind::UnivalentB1Zero, EquationId::UnivalentQcB1ZeroUpper),
        other => return Err(CliError::Usage(format!("unknown part '{other}'"))),
    };
    let k = cfg.dilatation()?.unwrap_or(1.0);
    let order = cfg.verify_order()?;
    let r = match cfg.radius_override()? {
        Some(r) => r,
        None => solve(eq, 1.0, SOLVE_TOL).map_err(computation)?.radius,
    };
    let mut cases = instances(cfg, theorem, Some(k), order)?;
    if analytic_only {
        for inst in cases.iter_mut() {
            let ctx = inst.pair.context().copied();
            let mut pair = HarmonicPair::new(inst.pair.h().clone(), Series::zero(order)).map_err(computation)?;
            if let Some(ctx) = ctx {
                pair = pair.with_context(ctx);
            }
            inst.pair = pair;
        }
    }
    // Σ|a_n|rⁿ + Σ_{n≥2}|b_n|rⁿ: the b₁ term is zero by construction.
    let rows: Vec<(Instance, f64, f64)> = cases
        .into_par_iter()
        .map(|inst| {
            let growth = if inst.pair.context().is_some() { Growth::for_pair(&inst.pair) } else { Growth::Geometric };
            let s = bohr_sum(&inst.pair, r, growth).map_err(computation)?;
            let margin = inst.dist0 - s.partial_sum;
            Ok((inst, s.partial_sum, margin))
        })
        .collect::<Result<_, CliError>>()?;
    let margins: Vec<f64> = rows.iter().map(|(_, _, m)| *m).collect();
    let summary = summarize(&margins);
    let note = format!(
        "exploratory, no pass/fail: part ({part}) at r = {}, {} cases, margin min {} mean {} max {}",
        sig(r),
        summary.count,
        sig(summary.min),
        sig(summary.mean),
        sig(summary.max)
    );
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(inst, sum, m)| vec![inst.index.to_string(), inst.entry.clone(), sig(*sum), sig(inst.dist0), sig(*m)])
        .collect();
    let fmt = cfg.format_or(Format::Table);
    let text = match fmt {
        Format::Csv => format::csv(&CONJECTURE_HEADER, &cells),
        Format::Table => {
            let bins: Vec<Vec<String>> = summary
                .histogram
                .iter()
                .map(|b| vec![sig(b.lo), sig(b.hi), b.count.to_string()])
                .collect();
            format!(
                "{}\n{note}\n\n{}",
                format::table(&CONJECTURE_HEADER, &cells),
                format::table(&["margin_lo", "margin_hi", "count"], &bins)
            )
        }
        Format::Json => format::json(&ConjectureReport {
            exploratory: true,
            part: part.into(),
            k: round(k),
            r: round(r),
            order,
            cases: rows
                .iter()
                .map(|(inst, sum, m)| ConjectureRow {
                    case: inst.index,
                    entry: inst.entry.clone(),
                    sum: round(*sum),
                    dist: round(inst.dist0),
                    margin: round(*m),
                })
                .collect(),
            summary: MarginSummary {
                min: round(summary.min).unwrap_or(f64::NAN),
                mean: round(summary.mean).unwrap_or(f64::NAN),
                max: round(summary.max).unwrap_or(f64::NAN),
                histogram: summary
                    .histogram
                    .iter()
                    .map(|b| Bin { lo: round(b.lo).unwrap_or(b.lo), hi: round(b.hi).unwrap_or(b.hi), count: b.count })
                    .collect(),
                count: summary.count,
            },
        }),
    };
    Ok(Outcome { text, status: Status::Success, note: Some(note), note_in_text: fmt == Format::Table })
}

// ---------------------------------------------------------------- catalog

/// Coefficients listed per catalog record.
pub const CATALOG_COEFFS: usize = 8;

#[derive(Debug, Serialize)]
struct ParamRecord {
    name: &'static str,
    default: Option<f64>,
    range: &'static str,
}

#[derive(Debug, Serialize)]
struct CatalogRecord {
    id: &'static str,
    class: &'static str,
    schema: Vec<ParamRecord>,
    params: std::collections::BTreeMap<&'static str, [Option<f64>; 2]>,
    dist0: Option<f64>,
    value0: [Option<f64>; 2],
    deriv0: [Option<f64>; 2],
    coefficients: Vec<[Option<f64>; 2]>,
}

fn catalog_record(e: &CatalogEntry) -> Result<(CatalogRecord, Vec<String>), CliError> {
    let coeffs = e.coeffs(CATALOG_COEFFS - 1).map_err(computation)?;
    let record = CatalogRecord {
        id: e.id().as_str(),
        class: e.geom_class().as_str(),
        schema: e
            .id()
            .schema()
            .iter()
            .map(|s| ParamRecord { name: s.name, default: round(s.default), range: s.range })
            .collect(),
        params: e.params().iter().map(|(k, v)| (*k, pair_json(*v))).collect(),
        dist0: round(e.dist0()),
        value0: pair_json(e.value0()),
        deriv0: pair_json(e.deriv0()),
        coefficients: coeffs.coeffs().iter().map(|c| pair_json(*c)).collect(),
    };
    let params: Vec<String> = e.params().iter().map(|(k, v)| format!("{k}={}", cplx(*v))).collect();
    let mut cells = vec![e.id().as_str().to_string(), e.geom_class().as_str().into(), params.join(";"), sig(e.dist0())];
    cells.extend(coeffs.coeffs().iter().map(|c| cplx(*c)));
    Ok((record, cells))
}

pub fn cmd_catalog(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let entries: Vec<CatalogEntry> = match &cfg.entry {
        Some(name) => {
            let id: EntryId = name.parse().map_err(usage)?;
            vec![CatalogEntry::new(id, cfg.params.iter().map(|(n, v)| (n.as_str(), *v))).map_err(usage)?]
        }
        None if !cfg.params.is_empty() => return Err(CliError::Usage("--param needs --entry".into())),
        None => EntryId::ALL.iter().map(|&id| CatalogEntry::default_for(id)).collect(),
    };
    let (records, cells): (Vec<_>, Vec<_>) =
        entries.iter().map(catalog_record).collect::<Result<Vec<_>, _>>()?.into_iter().unzip();
    let mut header = vec!["id", "class", "params", "dist0"];
    let names: Vec<String> = (0..CATALOG_COEFFS).map(|n| format!("a{n}")).collect();
    header.extend(names.iter().map(String::as_str));
    let text = match cfg.format_or(Format::Json) {
        Format::Json => format::json(&records),
        Format::Csv => format::csv(&header, &cells),
        Format::Table => format::table(&header, &cells),
    };
    Ok(Outcome::ok(text))
}
