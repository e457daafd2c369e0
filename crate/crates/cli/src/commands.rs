//! The five subcommands. Each returns a short human-readable summary; files
//! go to the configured output directory.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use superhom::delta::{is_complete, is_regular, validate_delta, CompletenessCertificate};
use superhom::homology::{
    geometric_gap_betti, mode_pair, sup_betti, ChainComplex, EmbeddedChainData, HomologyMode,
};
use superhom::persistence::{
    build_filtration, Arrow, Death, FiltrationOptions, ModuleKind, PersistenceSuite,
};
use superhom::scoring::{critical_values, is_regular_scheme};
use superhom::Execution;

use crate::build::{self, Built, Inputs};
use crate::config::JobConfig;
use crate::error::{CliError, Result};
use crate::formats::{
    self, BarRecord, BettiRecord, CorrelationRecord, CriticalRecord, Endpoint, IntervalRecord,
    TriangleRecord,
};
use crate::output::{OutputDir, RunReport};
use crate::render;

struct Timer {
    start: Instant,
    laps: BTreeMap<String, f64>,
}

impl Timer {
    fn new() -> Self {
        Timer {
            start: Instant::now(),
            laps: BTreeMap::new(),
        }
    }

    fn lap(&mut self, name: &str) {
        let now = Instant::now();
        self.laps
            .insert(name.to_string(), (now - self.start).as_secs_f64() * 1e3);
        self.start = now;
    }
}

fn exec(cfg: &JobConfig) -> Execution {
    if cfg.parallel {
        Execution::Parallel
    } else {
        Execution::Sequential
    }
}

fn load(cfg: &JobConfig) -> Result<(Inputs, Built)> {
    let inputs = Inputs::load(cfg)?;
    let built = build::build(cfg, &inputs)?;
    let report = validate_delta(&built.sh.x);
    if !report.is_ok() {
        return Err(CliError::Validation(delta_certificate(&built, &report)));
    }
    Ok((inputs, built))
}

fn delta_certificate(built: &Built, report: &superhom::delta::DeltaReport) -> String {
    if let Some(e) = report.structural.first() {
        return e.to_string();
    }
    let (cell, i, j) = report.violations[0];
    format!(
        "face identity d_{i} d_{j} = d_{j} d_{} fails at cell `{}` ({} failing instances)",
        i + 1,
        built.sh.x.label(cell).name,
        report.violations.len()
    )
}

fn certificate_text(built: &Built, c: &CompletenessCertificate) -> String {
    let name = |id| built.sh.x.label(id).name.clone();
    match c {
        CompletenessCertificate::ExtraVertex(v) => format!("unmarked vertex `{}`", name(*v)),
        CompletenessCertificate::VertexCount(n) => format!("no marked vertex but {n} vertices"),
        CompletenessCertificate::MatchingFaces(a, b) => {
            format!("cells `{}` and `{}` share all faces", name(*a), name(*b))
        }
    }
}

/// Structural facts about a super-hypergraph, shared by several commands.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureSummary {
    pub cells: Vec<usize>,
    pub marked: Vec<usize>,
    pub regular: bool,
    /// `None` when the input is not regular.
    pub complete: Option<bool>,
    pub certificate: Option<String>,
}

fn structure(built: &Built) -> Result<StructureSummary> {
    let sh = &built.sh;
    let regular = is_regular(sh);
    let (complete, certificate) = if regular {
        let c = is_complete(sh)?;
        (
            Some(c.complete),
            c.certificate.map(|c| certificate_text(built, &c)),
        )
    } else {
        (None, None)
    };
    Ok(StructureSummary {
        cells: sh.x.counts(),
        marked: (0..sh.x.num_dims()).map(|n| sh.h.count(n)).collect(),
        regular,
        complete,
        certificate,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub field: String,
    pub structure: StructureSummary,
    pub gap_series: Vec<usize>,
    /// Present when a scheme was configured and the construction came from a
    /// subgraph family.
    pub scheme_regular: Option<bool>,
}

pub const BETTI_HEADER: [&str; 3] = ["mode", "degree", "value"];

pub fn homology(cfg: &JobConfig) -> Result<(String, RunReport)> {
    let mut timer = Timer::new();
    let (inputs, built) = load(cfg)?;
    timer.lap("build");
    let sh = &built.sh;
    let c = ChainComplex::from_delta(&sh.x, cfg.field)?;
    let data = EmbeddedChainData::compute(&c, &sh.h)?;
    let len = sh.x.num_dims().max(1);
    let mut rows = Vec::new();
    let mut push = |mode: &str, values: Vec<usize>| {
        rows.extend(
            values
                .into_iter()
                .enumerate()
                .map(|(degree, value)| BettiRecord {
                    mode: mode.to_string(),
                    degree,
                    value,
                }),
        )
    };
    for mode in HomologyMode::ALL {
        push(mode.name(), mode_pair(&c, &data, mode).betti().padded(len));
    }
    push("sup", sup_betti(sh, cfg.field)?.padded(len));
    let mut gap = data.gap_series();
    gap.resize(len, 0);
    push("gap_chains", gap.clone());
    push(
        "geometric_gap",
        geometric_gap_betti(sh, cfg.field)?.padded(len),
    );
    timer.lap("homology");

    let scheme_regular = match (&cfg.scheme, &built.family) {
        (Some(_), Some(fam)) => {
            let s = build::scheme(cfg, &inputs, &built)?;
            Some(is_regular_scheme(s.as_ref(), fam).regular)
        }
        _ => None,
    };
    let summary = HomologySummary {
        field: cfg.field.to_string(),
        structure: structure(&built)?,
        gap_series: gap,
        scheme_regular,
    };
    timer.lap("checks");

    let mut out = OutputDir::create(&cfg.out_dir)?;
    if cfg.format.csv() {
        out.write("betti.csv", &formats::to_csv(&rows, &BETTI_HEADER)?)?;
    }
    if cfg.format.json() {
        out.write("betti.json", &formats::to_json(&rows)?)?;
    }
    out.write("summary.json", &formats::to_json(&summary)?)?;
    out.write(
        "complex.delta",
        &formats::write_delta(&sh.x, &sh.h, |l| l.name.clone()),
    )?;
    timer.lap("write");
    let report = out.finish("homology", sh.x.counts(), None, timer.laps)?;

    let mut text = String::new();
    for mode in ["absolute", "relative", "ambient"] {
        let vals: Vec<String> = rows
            .iter()
            .filter(|r| r.mode == mode)
            .map(|r| r.value.to_string())
            .collect();
        let _ = writeln!(text, "{mode:<9} betti ({})", vals.join(", "));
    }
    let _ = writeln!(text, "regular: {}", summary.structure.regular);
    if let Some(c) = summary.structure.complete {
        let _ = writeln!(text, "complete: {c}");
    }
    Ok((text, report))
}

pub const BAR_HEADER: [&str; 5] = ["module", "degree", "birth", "death", "multiplicity"];
pub const INTERVAL_HEADER: [&str; 5] = ["module", "degree", "id", "birth", "death"];
pub const CORRELATION_HEADER: [&str; 4] = ["degree", "row", "col", "value"];
pub const TRIANGLE_HEADER: [&str; 9] = [
    "degree",
    "index",
    "embedded",
    "ambient",
    "relative",
    "rank_j",
    "rank_p",
    "rank_boundary",
    "exact",
];
pub const CRITICAL_HEADER: [&str; 2] = ["index", "value"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PersistSummary {
    pub field: String,
    pub scheme: String,
    pub structure: StructureSummary,
    pub steps: usize,
    pub non_regular: bool,
    pub triangle_exact: bool,
}

/// Everything `persist` writes, in memory.
#[derive(Clone, Debug, PartialEq)]
pub struct PersistTables {
    pub critical: Vec<CriticalRecord>,
    pub bars: Vec<BarRecord>,
    pub intervals: Vec<IntervalRecord>,
    pub correlations: Vec<(Arrow, Vec<CorrelationRecord>)>,
    pub triangle: Vec<TriangleRecord>,
}

pub fn persistence_tables(values: &[f64], suite: &PersistenceSuite) -> Result<PersistTables> {
    let endpoint = |d: Option<usize>| d.map_or(Endpoint::Infinite, |j| Endpoint::Finite(values[j]));
    let mut bars = Vec::new();
    let mut intervals = Vec::new();
    for kind in ModuleKind::ALL {
        for b in suite.barcode(kind)?.bars {
            bars.push(BarRecord {
                module: kind.name().into(),
                degree: b.degree,
                birth: b.birth,
                death: match b.death {
                    Death::Finite(x) => Endpoint::Finite(x),
                    Death::Infinite => Endpoint::Infinite,
                },
                multiplicity: b.multiplicity,
            });
        }
        for n in 0..suite.num_degrees() {
            let basis = suite.interval_basis(kind, n).expect("degree in range");
            for (id, b) in basis.bars.iter().enumerate() {
                intervals.push(IntervalRecord {
                    module: kind.name().into(),
                    degree: n,
                    id,
                    birth: values[b.birth],
                    death: endpoint(b.death),
                });
            }
        }
    }
    let mut correlations = Vec::new();
    for arrow in Arrow::ALL {
        let mut rows = Vec::new();
        for n in 0..suite.num_degrees() {
            let m = suite.correlation(arrow, n)?;
            rows.extend(m.entries.iter().map(|&(row, col)| CorrelationRecord {
                degree: n,
                row,
                col,
                value: 1,
            }));
        }
        correlations.push((arrow, rows));
    }
    let triangle = suite
        .triangle()
        .rows
        .into_iter()
        .map(|r| TriangleRecord {
            degree: r.degree,
            index: r.index,
            embedded: r.embedded,
            ambient: r.ambient,
            relative: r.relative,
            rank_j: r.rank_j,
            rank_p: r.rank_p,
            rank_boundary: r.rank_boundary,
            exact: r.exact,
        })
        .collect();
    let critical = values
        .iter()
        .enumerate()
        .map(|(index, &value)| CriticalRecord { index, value })
        .collect();
    Ok(PersistTables {
        critical,
        bars,
        intervals,
        correlations,
        triangle,
    })
}

pub fn correlation_file(arrow: Arrow) -> String {
    format!("correlation_{}.csv", arrow.name())
}

pub fn persist(cfg: &JobConfig) -> Result<(String, RunReport)> {
    let mut timer = Timer::new();
    let (inputs, built) = load(cfg)?;
    let scheme = build::scheme(cfg, &inputs, &built)?;
    let structure = structure(&built)?;
    timer.lap("build");
    let opts = FiltrationOptions {
        experimental: cfg.experimental,
        exec: exec(cfg),
    };
    let f = build_filtration(built.sh.clone(), scheme.as_ref(), opts)?;
    timer.lap("filtration");
    let suite = PersistenceSuite::compute(&f, cfg.field, opts.exec)?;
    timer.lap("modules");
    let tables = persistence_tables(&f.values, &suite)?;
    timer.lap("tables");
    let triangle_exact = tables.triangle.iter().all(|r| r.exact);
    let summary = PersistSummary {
        field: cfg.field.to_string(),
        scheme: scheme.name(),
        structure,
        steps: f.len(),
        non_regular: f.non_regular,
        triangle_exact,
    };

    let mut out = OutputDir::create(&cfg.out_dir)?;
    if cfg.format.csv() {
        out.write(
            "critical_values.csv",
            &formats::to_csv(&tables.critical, &CRITICAL_HEADER)?,
        )?;
        out.write("barcodes.csv", &formats::to_csv(&tables.bars, &BAR_HEADER)?)?;
        out.write(
            "intervals.csv",
            &formats::to_csv(&tables.intervals, &INTERVAL_HEADER)?,
        )?;
        for (arrow, rows) in &tables.correlations {
            out.write(
                &correlation_file(*arrow),
                &formats::to_csv(rows, &CORRELATION_HEADER)?,
            )?;
        }
        out.write(
            "triangle.csv",
            &formats::to_csv(&tables.triangle, &TRIANGLE_HEADER)?,
        )?;
    }
    if cfg.format.json() {
        out.write("critical_values.json", &formats::to_json(&tables.critical)?)?;
        out.write("barcodes.json", &formats::to_json(&tables.bars)?)?;
        out.write("intervals.json", &formats::to_json(&tables.intervals)?)?;
        let corr: BTreeMap<&str, &Vec<CorrelationRecord>> = tables
            .correlations
            .iter()
            .map(|(a, r)| (a.name(), r))
            .collect();
        out.write("correlations.json", &formats::to_json(&corr)?)?;
        out.write("triangle.json", &formats::to_json(&tables.triangle)?)?;
    }
    out.write("summary.json", &formats::to_json(&summary)?)?;
    timer.lap("write");
    let report = out.finish("persist", f.sh.x.counts(), Some(f.len()), timer.laps)?;
    if !triangle_exact {
        return Err(CliError::Compute(
            "long exact sequence check failed; see triangle.csv".into(),
        ));
    }
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} critical values, scheme {}",
        f.len(),
        summary.scheme
    );
    for kind in ModuleKind::ALL {
        let count: usize = tables
            .bars
            .iter()
            .filter(|b| b.module == kind.name())
            .map(|b| b.multiplicity)
            .sum();
        let _ = writeln!(text, "{:<9} {count} bars", kind.name());
    }
    let _ = writeln!(text, "triangle exact: {triangle_exact}");
    Ok((text, report))
}

/// Draws the bars of one module family, or of all with `module == "all"`.
pub fn render(input: &Path, output: &Path, module: &str) -> Result<String> {
    if module != "all" && ModuleKind::parse(module).is_none() {
        return Err(CliError::Usage(format!("unknown module `{module}`")));
    }
    let text = std::fs::read_to_string(input).map_err(|e| CliError::io(input, e))?;
    let origin = input.display().to_string();
    let bars: Vec<BarRecord> = if input.extension().is_some_and(|e| e == "json") {
        formats::from_json(&text, &origin)?
    } else {
        formats::from_csv(&text, &origin)?
    };
    let bars: Vec<BarRecord> = bars
        .into_iter()
        .filter(|b| module == "all" || b.module == module)
        .collect();
    let svg = render::render_svg(&bars);
    crate::output::atomic_write(output, svg.as_bytes())?;
    Ok(format!("wrote {}\n", output.display()))
}

/// Exits with a validation failure when the face identities fail; otherwise
/// reports regularity and completeness with certificates.
pub fn validate(cfg: &JobConfig) -> Result<String> {
    let inputs = Inputs::load(cfg)?;
    let built = build::build(cfg, &inputs)?;
    let report = validate_delta(&built.sh.x);
    let mut text = String::new();
    if !report.is_ok() {
        for (cell, i, j) in &report.violations {
            let _ = writeln!(
                text,
                "violation: d_{i} d_{j} at `{}`",
                built.sh.x.label(*cell).name
            );
        }
        return Err(CliError::Validation(format!(
            "{}\n{text}",
            delta_certificate(&built, &report)
        )));
    }
    let s = structure(&built)?;
    let _ = writeln!(text, "delta identities: ok");
    let _ = writeln!(text, "cells: {:?}, marked: {:?}", s.cells, s.marked);
    let _ = writeln!(text, "regular: {}", s.regular);
    match s.complete {
        Some(c) => {
            let _ = writeln!(text, "complete: {c}");
        }
        None => {
            let _ = writeln!(text, "complete: undefined (not regular)");
        }
    }
    if let Some(cert) = &s.certificate {
        let _ = writeln!(text, "certificate: {cert}");
    }
    Ok(text)
}

pub fn score(cfg: &JobConfig) -> Result<String> {
    let (inputs, built) = load(cfg)?;
    let scheme = build::scheme(cfg, &inputs, &built)?;
    let values = critical_values(scheme.as_ref(), &built.sh.x)?;
    let mut text = String::new();
    for v in values {
        let _ = writeln!(text, "{v}");
    }
    Ok(text)
}
