//! Flat `key = value` job configuration. Command-line flags override file
//! values key by key.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use superhom::scoring::WitnessVariant;
use superhom::FieldSpec;

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Clique,
    Neighborhood,
    Path,
    PrimaryVd,
    SecondaryVd,
    EdgeDel,
    Partition,
    LinkBlowup,
    StartingVertex,
    /// Cells read verbatim from a Δ-set file.
    Delta,
    /// Hyperedges read from a file, closed under taking subsets.
    Hypergraph,
}

impl Construction {
    pub const ALL: [Construction; 11] = [
        Construction::Clique,
        Construction::Neighborhood,
        Construction::Path,
        Construction::PrimaryVd,
        Construction::SecondaryVd,
        Construction::EdgeDel,
        Construction::Partition,
        Construction::LinkBlowup,
        Construction::StartingVertex,
        Construction::Delta,
        Construction::Hypergraph,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Construction::Clique => "clique",
            Construction::Neighborhood => "neighborhood",
            Construction::Path => "path",
            Construction::PrimaryVd => "primary_vd",
            Construction::SecondaryVd => "secondary_vd",
            Construction::EdgeDel => "edge_del",
            Construction::Partition => "partition",
            Construction::LinkBlowup => "link_blowup",
            Construction::StartingVertex => "starting_vertex",
            Construction::Delta => "delta",
            Construction::Hypergraph => "hypergraph",
        }
    }
}

impl FromStr for Construction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Construction::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown construction `{s}`"))
    }
}

/// Point-cloud scores usable directly or as the base of a pull-back.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    Vr,
    Cech,
    Witness(WitnessVariant),
}

impl PointKind {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "vr" => Some(PointKind::Vr),
            "cech" => Some(PointKind::Cech),
            _ => s
                .strip_prefix("witness:")
                .and_then(WitnessVariant::parse)
                .map(PointKind::Witness),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeSpec {
    Point(PointKind),
    Pullback(PointKind),
    Constant,
    SeededRandom,
}

impl FromStr for SchemeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parsed = match s {
            "constant" => Some(SchemeSpec::Constant),
            "seeded_random" => Some(SchemeSpec::SeededRandom),
            "pullback" => Some(SchemeSpec::Pullback(PointKind::Vr)),
            _ => match s.strip_prefix("pullback:") {
                Some(base) => PointKind::parse(base).map(SchemeSpec::Pullback),
                None => PointKind::parse(s).map(SchemeSpec::Point),
            },
        };
        parsed.ok_or_else(|| format!("unknown scheme `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
    Both,
}

impl OutputFormat {
    pub fn csv(&self) -> bool {
        matches!(self, OutputFormat::Csv | OutputFormat::Both)
    }

    pub fn json(&self) -> bool {
        matches!(self, OutputFormat::Json | OutputFormat::Both)
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "both" => Ok(OutputFormat::Both),
            _ => Err(format!("unknown output format `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobConfig {
    pub graph: Option<PathBuf>,
    pub points: Option<PathBuf>,
    pub witnesses: Option<PathBuf>,
    pub family: Option<PathBuf>,
    pub clustering: Option<PathBuf>,
    pub marked: Option<PathBuf>,
    pub delta: Option<PathBuf>,
    pub hypergraph: Option<PathBuf>,
    pub construction: Option<Construction>,
    pub scheme: Option<SchemeSpec>,
    pub field: FieldSpec,
    /// Largest cell dimension for clique/path constructions and the default
    /// family.
    pub max_dim: usize,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    pub experimental: bool,
    pub parallel: bool,
    pub seed: u64,
    pub constant: f64,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            graph: None,
            points: None,
            witnesses: None,
            family: None,
            clustering: None,
            marked: None,
            delta: None,
            hypergraph: None,
            construction: None,
            scheme: None,
            field: FieldSpec::Gf2,
            max_dim: 2,
            out_dir: PathBuf::from("out"),
            format: OutputFormat::Csv,
            experimental: false,
            parallel: true,
            seed: 0,
            constant: 0.0,
        }
    }
}

const PATH_KEYS: [&str; 9] = [
    "graph",
    "points",
    "witnesses",
    "family",
    "clustering",
    "marked",
    "delta",
    "hypergraph",
    "out_dir",
];

pub const KEYS: [&str; 18] = [
    "graph",
    "points",
    "witnesses",
    "family",
    "clustering",
    "marked",
    "delta",
    "hypergraph",
    "construction",
    "scheme",
    "field",
    "max_dim",
    "out_dir",
    "format",
    "experimental",
    "parallel",
    "seed",
    "constant",
];

/// Raw settings: key to (value, origin line). Line 0 marks a flag.
#[derive(Clone, Debug, Default)]
pub struct RawConfig {
    entries: BTreeMap<String, (String, usize)>,
    origin: String,
}

impl RawConfig {
    /// Parses config text. Relative paths are resolved against `base`.
    pub fn parse(text: &str, origin: &str, base: Option<&Path>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (no, line) in crate::formats::content_lines(text) {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::parse(origin, no, "expected `key = value`"))?;
            let key = key.trim().to_string();
            let mut value = value.trim().to_string();
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::parse(origin, no, format!("unknown key `{key}`")));
            }
            if let (Some(base), true) = (base, PATH_KEYS.contains(&key.as_str())) {
                let p = Path::new(&value);
                if p.is_relative() {
                    value = base.join(p).display().to_string();
                }
            }
            if entries.insert(key.clone(), (value, no)).is_some() {
                return Err(CliError::parse(
                    origin,
                    no,
                    format!("duplicate key `{key}`"),
                ));
            }
        }
        Ok(RawConfig {
            entries,
            origin: origin.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, &path.display().to_string(), path.parent())
    }

    /// Flag values win over file values.
    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        if !KEYS.contains(&key) {
            return Err(CliError::Usage(format!("unknown key `{key}`")));
        }
        self.entries.insert(key.to_string(), (value.into(), 0));
        Ok(())
    }

    pub fn resolve(&self) -> Result<JobConfig> {
        let mut cfg = JobConfig::default();
        for (key, (value, line)) in &self.entries {
            let bad = |msg: String| {
                if *line == 0 {
                    CliError::Usage(format!("--{}: {msg}", key.replace('_', "-")))
                } else {
                    CliError::Usage(format!("{}:{line}: {msg}", self.origin))
                }
            };
            let path = || Some(PathBuf::from(value));
            match key.as_str() {
                "graph" => cfg.graph = path(),
                "points" => cfg.points = path(),
                "witnesses" => cfg.witnesses = path(),
                "family" => cfg.family = path(),
                "clustering" => cfg.clustering = path(),
                "marked" => cfg.marked = path(),
                "delta" => cfg.delta = path(),
                "hypergraph" => cfg.hypergraph = path(),
                "out_dir" => cfg.out_dir = PathBuf::from(value),
                "construction" => cfg.construction = Some(value.parse().map_err(bad)?),
                "scheme" => cfg.scheme = Some(value.parse().map_err(bad)?),
                "field" => cfg.field = value.parse().map_err(|e| bad(format!("{e}")))?,
                "max_dim" => {
                    cfg.max_dim = value
                        .parse()
                        .map_err(|_| bad(format!("bad integer `{value}`")))?
                }
                "format" => cfg.format = value.parse().map_err(bad)?,
                "experimental" => {
                    cfg.experimental =
                        parse_bool(value).ok_or_else(|| bad(format!("bad boolean `{value}`")))?
                }
                "parallel" => {
                    cfg.parallel =
                        parse_bool(value).ok_or_else(|| bad(format!("bad boolean `{value}`")))?
                }
                "seed" => {
                    cfg.seed = value
                        .parse()
                        .map_err(|_| bad(format!("bad seed `{value}`")))?
                }
                "constant" => {
                    cfg.constant = value
                        .parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| bad(format!("bad number `{value}`")))?
                }
                _ => unreachable!("keys are checked on insertion"),
            }
        }
        Ok(cfg)
    }
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "1" | "true" | "yes" => Some(true),
        "0" | "false" | "no" => Some(false),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let mut raw = RawConfig::parse(
            "construction = clique\nscheme = vr # comment\nmax_dim = 3\n",
            "job.cfg",
            None,
        )
        .unwrap();
        raw.set("scheme", "witness:weak").unwrap();
        let cfg = raw.resolve().unwrap();
        assert_eq!(cfg.construction, Some(Construction::Clique));
        assert_eq!(
            cfg.scheme,
            Some(SchemeSpec::Point(PointKind::Witness(WitnessVariant::Weak)))
        );
        assert_eq!(cfg.max_dim, 3);
    }

    #[test]
    fn relative_paths_follow_config() {
        let raw = RawConfig::parse("graph = g.txt", "a/job.cfg", Some(Path::new("a"))).unwrap();
        assert_eq!(raw.resolve().unwrap().graph, Some(PathBuf::from("a/g.txt")));
    }

    #[test]
    fn errors_carry_lines() {
        let err = RawConfig::parse("\n\nbogus = 1", "job.cfg", None).unwrap_err();
        assert_eq!(err.to_string(), "job.cfg:3: unknown key `bogus`");
        let err = RawConfig::parse("scheme = nope", "job.cfg", None)
            .unwrap()
            .resolve()
            .unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn scheme_names() {
        assert_eq!(
            "pullback:cech".parse::<SchemeSpec>(),
            Ok(SchemeSpec::Pullback(PointKind::Cech))
        );
        assert_eq!(
            "pullback".parse::<SchemeSpec>(),
            Ok(SchemeSpec::Pullback(PointKind::Vr))
        );
        assert!("witness:bogus".parse::<SchemeSpec>().is_err());
    }
}
