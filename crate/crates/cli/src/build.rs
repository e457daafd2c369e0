//! Turns a [`JobConfig`] into a labeled super-hypergraph and a scoring
//! scheme.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use superhom::delta::{from_simplicial, simplicial_closure, GradedSubset};
use superhom::faces::{self, Clustering, MarkedSubgraph, SubgraphFamily};
use superhom::graph::{self, SubgraphLabel};
use superhom::scoring::{
    Constant, PointCloud, PointCloudScheme, PointScore, ScoringScheme, SeededRandom, WitnessConfig,
};
use superhom::{DeltaSet, MultiGraph, Subgraph, SuperHypergraph, VertexOrder};

use crate::config::{Construction, JobConfig, PointKind, SchemeSpec};
use crate::error::{CliError, Result};
use crate::formats;

/// Cell label used by every construction: the subgraph that is scored and a
/// display name. Names keep labels distinct where subgraphs coincide
/// (e.g. two orderings of the same path).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellLabel {
    pub subgraph: Subgraph,
    pub name: String,
}

impl SubgraphLabel for CellLabel {
    fn subgraph(&self) -> &Subgraph {
        &self.subgraph
    }
}

/// Parsed input files.
#[derive(Clone, Debug, Default)]
pub struct Inputs {
    pub graph: Option<MultiGraph>,
    /// Vertex names with coordinates, in file order.
    pub points: Option<Vec<(String, Vec<f64>)>>,
    pub witnesses: Option<Vec<Vec<f64>>>,
    pub delta: Option<formats::DeltaInput>,
    pub hypergraph: Option<Vec<Vec<String>>>,
    family_text: Option<(String, String)>,
    clustering_text: Option<(String, String)>,
    marked_text: Option<(String, String)>,
}

fn read(path: &Path) -> Result<(String, String)> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok((text, path.display().to_string()))
}

impl Inputs {
    pub fn load(cfg: &JobConfig) -> Result<Self> {
        let mut inputs = Inputs::default();
        if let Some(p) = &cfg.graph {
            let (t, o) = read(p)?;
            inputs.graph = Some(formats::parse_graph(&t, &o)?);
        }
        if let Some(p) = &cfg.points {
            let (t, o) = read(p)?;
            inputs.points = Some(formats::parse_points(&t, &o)?);
        }
        if let Some(p) = &cfg.witnesses {
            let (t, o) = read(p)?;
            inputs.witnesses = Some(formats::parse_witnesses(&t, &o)?);
        }
        if let Some(p) = &cfg.delta {
            let (t, o) = read(p)?;
            inputs.delta = Some(formats::parse_delta(&t, &o)?);
        }
        if let Some(p) = &cfg.hypergraph {
            let (t, o) = read(p)?;
            inputs.hypergraph = Some(formats::parse_hypergraph(&t, &o)?);
        }
        // These refer to graph names and are parsed once the graph is known.
        inputs.family_text = cfg.family.as_deref().map(read).transpose()?;
        inputs.clustering_text = cfg.clustering.as_deref().map(read).transpose()?;
        inputs.marked_text = cfg.marked.as_deref().map(read).transpose()?;
        Ok(inputs)
    }

    /// The graph file, or the complete graph on the point cloud's vertices.
    pub fn host(&self) -> Result<MultiGraph> {
        if let Some(g) = &self.graph {
            return Ok(g.clone());
        }
        let Some(points) = &self.points else {
            return Err(CliError::Usage(
                "this construction needs `graph` or `points`".into(),
            ));
        };
        let mut g = MultiGraph::new(false);
        for (name, _) in points {
            g.add_vertex(name)?;
        }
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                g.add_edge(&format!("{}-{}", points[a].0, points[b].0), a, b)?;
            }
        }
        Ok(g)
    }

    /// Points keyed by host vertex index.
    pub fn point_cloud(&self, host: &MultiGraph) -> Result<PointCloud> {
        let Some(points) = &self.points else {
            return Err(CliError::Usage("this scheme needs `points`".into()));
        };
        let mut pc = PointCloud::new(points.first().map_or(0, |p| p.1.len()));
        for (name, coords) in points {
            let v = host.vertex_id(name).ok_or_else(|| {
                CliError::Validation(format!("point `{name}` is not a vertex of the graph"))
            })?;
            pc.insert(v, coords.clone())?;
        }
        Ok(pc)
    }

    fn family(&self, host: &MultiGraph, cfg: &JobConfig) -> Result<Vec<Subgraph>> {
        match &self.family_text {
            Some((t, o)) => formats::parse_family(t, o, host),
            None => Ok(graph::cliques(host, cfg.max_dim + 1)?),
        }
    }
}

/// A construction ready for homology or persistence.
#[derive(Clone, Debug)]
pub struct Built {
    pub sh: SuperHypergraph<CellLabel>,
    /// Graph whose vertex indices the labels refer to.
    pub host: Option<MultiGraph>,
    /// Family the construction started from, for regularity checks.
    pub family: Option<SubgraphFamily>,
}

fn subgraph_name(g: &MultiGraph, s: &Subgraph) -> String {
    let vs: Vec<&str> = s.vertices.iter().map(|&v| g.vertex_name(v)).collect();
    let es: Vec<&str> = s
        .edges
        .iter()
        .filter(|&&e| e < g.num_edges())
        .map(|&e| g.edge(e).name.as_str())
        .collect();
    format!("{{{}|{}}}", vs.join(","), es.join(","))
}

fn label_subgraphs(sh: SuperHypergraph<Subgraph>, g: &MultiGraph) -> SuperHypergraph<CellLabel> {
    let x = sh.x.map_labels(|_, s| CellLabel {
        name: subgraph_name(g, s),
        subgraph: s.clone(),
    });
    SuperHypergraph { x, h: sh.h }
}

fn vertex_set_label(g: &MultiGraph, vs: &[usize]) -> CellLabel {
    let names: Vec<&str> = vs.iter().map(|&v| g.vertex_name(v)).collect();
    CellLabel {
        subgraph: Subgraph::new(vs.iter().copied(), []),
        name: format!("{{{}}}", names.join(",")),
    }
}

pub fn build(cfg: &JobConfig, inputs: &Inputs) -> Result<Built> {
    let construction = cfg
        .construction
        .ok_or_else(|| CliError::Usage("no construction given (`construction = ...`)".into()))?;
    match construction {
        Construction::Delta => {
            let d = inputs
                .delta
                .as_ref()
                .ok_or_else(|| CliError::Usage("construction `delta` needs `delta`".into()))?;
            let x = d.x.map_labels(|_, name| CellLabel {
                subgraph: Subgraph::default(),
                name: name.clone(),
            });
            let sh = SuperHypergraph::new(x, d.h.clone())?;
            Ok(Built {
                sh,
                host: None,
                family: None,
            })
        }
        Construction::Hypergraph => hypergraph(inputs),
        _ => from_graph(cfg, inputs, construction),
    }
}

fn hypergraph(inputs: &Inputs) -> Result<Built> {
    let edges = inputs
        .hypergraph
        .as_ref()
        .ok_or_else(|| CliError::Usage("construction `hypergraph` needs `hypergraph`".into()))?;
    let mut g = match &inputs.graph {
        Some(g) => g.clone(),
        None => MultiGraph::new(false),
    };
    if inputs.graph.is_none() {
        let mut names: Vec<&String> = edges
            .iter()
            .flatten()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        // Numeric names sort numerically.
        names.sort_by_key(|n| (n.parse::<u64>().ok(), (*n).clone()));
        for n in names {
            g.add_vertex(n)?;
        }
    }
    let sets = edges
        .iter()
        .map(|e| {
            e.iter()
                .map(|n| {
                    g.vertex_id(n).ok_or_else(|| {
                        CliError::Validation(format!("hyperedge vertex `{n}` is not in the graph"))
                    })
                })
                .collect::<Result<BTreeSet<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let order = VertexOrder::identity(g.num_vertices());
    let x = from_simplicial(&simplicial_closure(&sets), &order)?;
    let marked: BTreeSet<Vec<usize>> = sets.iter().map(|s| order.sorted(s)).collect();
    let h = GradedSubset::from_cells(x.all_cells().filter(|&c| marked.contains(x.label(c))));
    let x = x.map_labels(|_, vs| vertex_set_label(&g, vs));
    Ok(Built {
        sh: SuperHypergraph::new(x, h)?,
        host: Some(g),
        family: None,
    })
}

fn from_graph(cfg: &JobConfig, inputs: &Inputs, construction: Construction) -> Result<Built> {
    let g = inputs.host()?;
    let order = VertexOrder::identity(g.num_vertices());
    let family = |inputs: &Inputs| -> Result<SubgraphFamily> {
        Ok(SubgraphFamily::new(g.clone(), inputs.family(&g, cfg)?)?)
    };
    let clustering = || -> Result<Clustering> {
        let (t, o) = inputs.clustering_text.as_ref().ok_or_else(|| {
            CliError::Usage(format!(
                "construction `{}` needs `clustering`",
                construction.name()
            ))
        })?;
        Ok(Clustering::new(formats::parse_clustering(t, o, &g)?)?)
    };
    let (sh, fam, host) = match construction {
        Construction::Clique => {
            let sh = graph::clique_complex(&g, &order, cfg.max_dim)?;
            (label_subgraphs(sh, &g), None, g.clone())
        }
        Construction::Neighborhood => {
            let x = from_simplicial(&graph::neighborhood_complex(&g)?, &order)?;
            let x = x.map_labels(|_, vs| vertex_set_label(&g, vs));
            (SuperHypergraph::whole(x), None, g.clone())
        }
        Construction::Path => {
            let sh = graph::path_complex(&g, cfg.max_dim)?;
            let x = sh.x.map_labels(|_, seq| path_label(&g, seq));
            (SuperHypergraph { x, h: sh.h }, None, g.clone())
        }
        Construction::PrimaryVd => {
            let fam = family(inputs)?;
            (
                label_subgraphs(faces::primary_vertex_deletion(&fam, &order)?, &g),
                Some(fam),
                g.clone(),
            )
        }
        Construction::SecondaryVd => {
            let fam = family(inputs)?;
            (
                label_subgraphs(faces::secondary_vertex_deletion(&fam, &order)?, &g),
                Some(fam),
                g.clone(),
            )
        }
        Construction::Partition => {
            let fam = family(inputs)?;
            let sh = faces::partition_faces(&fam, &clustering()?)?;
            (label_subgraphs(sh, &g), Some(fam), g.clone())
        }
        Construction::LinkBlowup => {
            let fam = family(inputs)?;
            let sh = faces::link_blowup_faces(&fam, &clustering()?)?;
            (label_subgraphs(sh, &g), Some(fam), g.clone())
        }
        Construction::EdgeDel => {
            let mut fam = family(inputs)?;
            if inputs.family_text.is_none() {
                fam.members.retain(|m| !m.edges.is_empty());
            }
            (edge_deletion(&fam)?, Some(fam), g.clone())
        }
        Construction::StartingVertex => {
            let fam = family(inputs)?;
            let (t, o) = inputs.marked_text.as_ref().ok_or_else(|| {
                CliError::Usage("construction `starting_vertex` needs `marked`".into())
            })?;
            let sv = formats::parse_marked(t, o, &g, fam.members.len())?;
            let members: Vec<MarkedSubgraph> = fam
                .members
                .iter()
                .zip(sv)
                .map(|(m, sv)| MarkedSubgraph {
                    subgraph: m.clone(),
                    sv,
                })
                .collect();
            let (sh, ext) = faces::starting_vertex_faces(&members, &g)?;
            let x = sh.x.map_labels(|_, m| {
                let sv: Vec<&str> = m.sv.iter().map(|&v| ext.vertex_name(v)).collect();
                CellLabel {
                    name: format!("{}@{}", subgraph_name(&ext, &m.subgraph), sv.join(",")),
                    subgraph: m.subgraph.clone(),
                }
            });
            (SuperHypergraph { x, h: sh.h }, Some(fam), ext)
        }
        Construction::Delta | Construction::Hypergraph => unreachable!("handled by build"),
    };
    Ok(Built {
        sh,
        host: Some(host),
        family: fam,
    })
}

/// A vertex sequence scores as its vertex set plus the arcs it traverses.
fn path_label(g: &MultiGraph, seq: &[usize]) -> CellLabel {
    let arcs: BTreeMap<(usize, usize), usize> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| ((e.source, e.target), i))
        .collect();
    let edges: Vec<usize> = seq
        .windows(2)
        .filter_map(|w| arcs.get(&(w[0], w[1])).copied())
        .collect();
    let names: Vec<&str> = seq.iter().map(|&v| g.vertex_name(v)).collect();
    CellLabel {
        subgraph: Subgraph::new(seq.iter().copied(), edges),
        name: names.join(">"),
    }
}

/// Members as edge sets: `X` is the simplicial closure on edges and `H`
/// the member edge sets.
fn edge_deletion(fam: &SubgraphFamily) -> Result<SuperHypergraph<CellLabel>> {
    let ed = faces::edge_deletion_complex(fam)?;
    let g = &fam.host;
    let order = VertexOrder::identity(g.num_edges());
    let x = from_simplicial(&simplicial_closure(&ed.hyperedges), &order)?;
    let marked: BTreeSet<Vec<usize>> = ed.hyperedges.iter().map(|s| order.sorted(s)).collect();
    let h = GradedSubset::from_cells(x.all_cells().filter(|&c| marked.contains(x.label(c))));
    let x: DeltaSet<CellLabel> = x.map_labels(|_, es| {
        let ends = es
            .iter()
            .flat_map(|&e| [g.edge(e).source, g.edge(e).target]);
        let s = Subgraph::new(ends, es.iter().copied());
        CellLabel {
            name: subgraph_name(g, &s),
            subgraph: s,
        }
    });
    Ok(SuperHypergraph::new(x, h)?)
}

pub fn scheme(cfg: &JobConfig, inputs: &Inputs, built: &Built) -> Result<Box<dyn ScoringScheme>> {
    let spec = cfg
        .scheme
        .ok_or_else(|| CliError::Usage("no scoring scheme given (`scheme = ...`)".into()))?;
    let point_score = |kind: PointKind, pc: &PointCloud| match kind {
        PointKind::Vr => PointScore::Vr,
        PointKind::Cech => PointScore::Cech,
        PointKind::Witness(v) => {
            let mut wc = WitnessConfig::from_cloud(pc);
            if let Some(w) = &inputs.witnesses {
                wc.witnesses = w.clone();
            }
            PointScore::Witness(wc, v)
        }
    };
    Ok(match spec {
        SchemeSpec::Constant => Box::new(Constant(cfg.constant)),
        SchemeSpec::SeededRandom => Box::new(SeededRandom { seed: cfg.seed }),
        SchemeSpec::Point(kind) | SchemeSpec::Pullback(kind) => {
            let host = built.host.as_ref().ok_or_else(|| {
                CliError::Usage("point-cloud schemes need a graph-based construction".into())
            })?;
            let pc = inputs.point_cloud(host)?;
            if matches!(spec, SchemeSpec::Point(_)) {
                let coords: BTreeSet<Vec<u64>> = pc
                    .iter()
                    .map(|(_, c)| c.iter().map(|x| x.to_bits()).collect())
                    .collect();
                if coords.len() != pc.len() {
                    return Err(CliError::Validation(
                        "two vertices share a point; use a `pullback:` scheme for non-injective maps".into(),
                    ));
                }
            }
            let base = point_score(kind, &pc);
            Box::new(PointCloudScheme::new(pc, base))
        }
    })
}
