//! Multigraphs, subgraphs and the classical complexes built from them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::delta::{DeltaSet, GradedSubset, SuperHypergraph};
use crate::faces::{primary_vertex_deletion, SubgraphFamily};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A directed or undirected multigraph. Vertices and edges are addressed by
/// dense indices; names are kept for input/output.
#[derive(Clone, Debug, Default)]
pub struct MultiGraph {
    directed: bool,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

impl PartialEq for MultiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.directed == other.directed
            && self.vertices == other.vertices
            && self.edges == other.edges
    }
}

impl MultiGraph {
    pub fn new(directed: bool) -> Self {
        MultiGraph {
            directed,
            ..Default::default()
        }
    }

    /// Graph on vertices `0..n` named by their index.
    pub fn with_vertices(directed: bool, n: usize) -> Self {
        let mut g = Self::new(directed);
        for v in 0..n {
            g.add_vertex(&v.to_string()).expect("fresh names");
        }
        g
    }

    /// Complete simple graph on `n` vertices, edges `i-j` for `i < j`.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::with_vertices(false, n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(&format!("{i}-{j}"), i, j).expect("fresh names");
            }
        }
        g
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if self.vertex_index.contains_key(name) {
            return Err(Error::Graph(format!("duplicate vertex '{name}'")));
        }
        let id = self.vertices.len();
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        Ok(id)
    }

    /// Adds an edge from `source` to `target` (unordered when undirected).
    pub fn add_edge(&mut self, name: &str, source: usize, target: usize) -> Result<usize> {
        if source >= self.vertices.len() || target >= self.vertices.len() {
            return Err(Error::Graph(format!(
                "edge '{name}' has a missing endpoint"
            )));
        }
        if self.edge_index.contains_key(name) {
            return Err(Error::Graph(format!("duplicate edge '{name}'")));
        }
        let id = self.edges.len();
        self.edges.push(Edge {
            name: name.to_string(),
            source,
            target,
        });
        self.edge_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_id(&self, name: &str) -> Option<usize> {
        self.edge_index.get(name).copied()
    }

    /// No loops, and at most one edge per ordered (directed) or unordered
    /// (undirected) vertex pair.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges
            .iter()
            .all(|e| e.source != e.target && seen.insert(self.pair_key(e.source, e.target)))
    }

    fn pair_key(&self, a: usize, b: usize) -> (usize, usize) {
        if self.directed {
            (a, b)
        } else {
            (a.min(b), a.max(b))
        }
    }

    /// Edges from `a` to `b`; either direction when undirected.
    pub fn edges_between(&self, a: usize, b: usize) -> Vec<usize> {
        let key = self.pair_key(a, b);
        (0..self.edges.len())
            .filter(|&e| self.pair_key(self.edges[e].source, self.edges[e].target) == key)
            .collect()
    }

    /// Neighbors of `v` ignoring direction and loops.
    pub fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for e in &self.edges {
            if e.source == v && e.target != v {
                out.insert(e.target);
            }
            if e.target == v && e.source != v {
                out.insert(e.source);
            }
        }
        out
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b
            && self
                .edges
                .iter()
                .any(|e| (e.source == a && e.target == b) || (e.source == b && e.target == a))
    }
}

/// A subgraph given by vertex and edge index sets of a host graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgraph {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
}

/// Labels that carry a subgraph of some working graph.
pub trait SubgraphLabel {
    fn subgraph(&self) -> &Subgraph;
}

impl SubgraphLabel for Subgraph {
    fn subgraph(&self) -> &Subgraph {
        self
    }
}

impl Subgraph {
    pub fn new(
        vertices: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = usize>,
    ) -> Self {
        Subgraph {
            vertices: vertices.into_iter().collect(),
            edges: edges.into_iter().collect(),
        }
    }

    pub fn full(g: &MultiGraph) -> Self {
        Subgraph::new(0..g.num_vertices(), 0..g.num_edges())
    }

    /// `G[S]`: all host edges with both endpoints in `S`.
    pub fn induced(g: &MultiGraph, s: &BTreeSet<usize>) -> Self {
        Subgraph {
            vertices: s.clone(),
            edges: (0..g.num_edges())
                .filter(|&e| s.contains(&g.edge(e).source) && s.contains(&g.edge(e).target))
                .collect(),
        }
    }

    /// `H[S]` for `S ⊆ V(H)`: the edges of this subgraph with both endpoints in `S`.
    /// `endpoints` resolves edge ids, so extended edge sets work too.
    pub fn restrict(
        &self,
        s: &BTreeSet<usize>,
        endpoints: impl Fn(usize) -> (usize, usize),
    ) -> Self {
        Subgraph {
            vertices: self.vertices.intersection(s).copied().collect(),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|&e| {
                    let (a, b) = endpoints(e);
                    s.contains(&a) && s.contains(&b)
                })
                .collect(),
        }
    }

    pub fn union(&self, other: &Subgraph) -> Subgraph {
        Subgraph {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    pub fn is_contained_in(&self, other: &Subgraph) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }
}

/// Containment in the host plus endpoint closure of the selected edges.
pub fn is_subgraph(h: &Subgraph, g: &MultiGraph) -> bool {
    h.vertices.iter().all(|&v| v < g.num_vertices())
        && h.edges.iter().all(|&e| {
            e < g.num_edges()
                && h.vertices.contains(&g.edge(e).source)
                && h.vertices.contains(&g.edge(e).target)
        })
}

/// A strict total order on vertex indices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder {
    sequence: Vec<usize>,
    rank: Vec<usize>,
}

impl VertexOrder {
    pub fn identity(n: usize) -> Self {
        VertexOrder {
            sequence: (0..n).collect(),
            rank: (0..n).collect(),
        }
    }

    /// The order listing vertices as in `sequence`, which must be a
    /// permutation of `0..sequence.len()`.
    pub fn from_sequence(sequence: Vec<usize>) -> Result<Self> {
        let n = sequence.len();
        let mut rank = vec![usize::MAX; n];
        for (r, &v) in sequence.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(Error::Precondition(
                    "vertex order is not a permutation".into(),
                ));
            }
            rank[v] = r;
        }
        Ok(VertexOrder { sequence, rank })
    }

    pub fn covers(&self, v: usize) -> bool {
        v < self.rank.len()
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn sort(&self, vs: &mut [usize]) {
        vs.sort_by_key(|&v| self.rank[v]);
    }

    pub fn sorted(&self, vs: &BTreeSet<usize>) -> Vec<usize> {
        let mut v: Vec<usize> = vs.iter().copied().collect();
        self.sort(&mut v);
        v
    }
}

/// All cliques with at most `max_size` vertices. In a multigraph every choice
/// of one edge per vertex pair gives a separate clique. Output is sorted by
/// vertex set, then edge choice.
pub fn cliques(g: &MultiGraph, max_size: usize) -> Result<Vec<Subgraph>> {
    if g.is_directed() {
        return Err(Error::Graph("cliques need an undirected graph".into()));
    }
    let n = g.num_vertices();
    let nbrs: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut vertex_sets: Vec<Vec<usize>> = Vec::new();
    fn extend(
        current: &mut Vec<usize>,
        candidates: &BTreeSet<usize>,
        nbrs: &[BTreeSet<usize>],
        max: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(current.clone());
        if current.len() == max {
            return;
        }
        for &w in candidates {
            let next: BTreeSet<usize> = candidates
                .iter()
                .copied()
                .filter(|&u| u > w && nbrs[w].contains(&u))
                .collect();
            current.push(w);
            extend(current, &next, nbrs, max, out);
            current.pop();
        }
    }
    if max_size > 0 {
        for v in 0..n {
            let cands: BTreeSet<usize> = nbrs[v].iter().copied().filter(|&u| u > v).collect();
            extend(&mut vec![v], &cands, &nbrs, max_size, &mut vertex_sets);
        }
    }
    vertex_sets.sort();
    let mut out = Vec::new();
    for vs in vertex_sets {
        let pairs: Vec<Vec<usize>> = (0..vs.len())
            .flat_map(|i| (i + 1..vs.len()).map(move |j| (i, j)))
            .map(|(i, j)| g.edges_between(vs[i], vs[j]))
            .collect();
        // odometer over the edge choices
        let mut choice = vec![0usize; pairs.len()];
        'odometer: loop {
            out.push(Subgraph::new(
                vs.iter().copied(),
                pairs.iter().zip(&choice).map(|(p, &c)| p[c]),
            ));
            for k in (0..pairs.len()).rev() {
                choice[k] += 1;
                if choice[k] < pairs[k].len() {
                    continue 'odometer;
                }
                choice[k] = 0;
            }
            break;
        }
    }
    Ok(out)
}

/// Clique Δ-set: `n`-cells are cliques on `n + 1` vertices (up to
/// `max_dim`), `d_i` deleting the `i`-th vertex in `order`.
pub fn clique_delta(
    g: &MultiGraph,
    order: &VertexOrder,
    max_dim: usize,
) -> Result<DeltaSet<Subgraph>> {
    Ok(clique_complex(g, order, max_dim)?.x)
}

/// [`clique_delta`] as the super-hypergraph `(X, X)`.
pub fn clique_complex(
    g: &MultiGraph,
    order: &VertexOrder,
    max_dim: usize,
) -> Result<SuperHypergraph<Subgraph>> {
    let members = cliques(g, max_dim + 1)?;
    let fam = SubgraphFamily::new(g.clone(), members)?;
    primary_vertex_deletion(&fam, order)
}

/// Neighborhood complex: vertex sets with a common neighbor, as a sorted
/// list of simplices (by size, then lexicographically).
pub fn neighborhood_complex(g: &MultiGraph) -> Result<Vec<BTreeSet<usize>>> {
    let mut out: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for v in 0..g.num_vertices() {
        let nb: Vec<usize> = g.neighbors(v).into_iter().collect();
        if nb.len() > 20 {
            return Err(Error::Graph(format!(
                "vertex {} has too many neighbors to enumerate",
                g.vertex_name(v)
            )));
        }
        for mask in 1u32..(1u32 << nb.len()) {
            let s: Vec<usize> = (0..nb.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| nb[i])
                .collect();
            out.insert((s.len(), s));
        }
    }
    Ok(out
        .into_iter()
        .map(|(_, s)| s.into_iter().collect())
        .collect())
}

/// Path complex of a simple digraph. The parental Δ-set consists of all
/// sequences of distinct vertices with at most `max_len + 1` entries, `d_i`
/// deleting entry `i`; the marked cells are the directed paths of `g`.
pub fn path_complex(g: &MultiGraph, max_len: usize) -> Result<SuperHypergraph<Vec<usize>>> {
    if !g.is_directed() {
        return Err(Error::Graph("path complexes need a directed graph".into()));
    }
    if !g.is_simple() {
        return Err(Error::Graph("path complexes need a simple digraph".into()));
    }
    let n = g.num_vertices();
    let edge_set: BTreeSet<(usize, usize)> =
        g.edges().iter().map(|e| (e.source, e.target)).collect();
    let mut x: DeltaSet<Vec<usize>> = DeltaSet::new();
    let mut h = GradedSubset::empty();
    let mut prev: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut layer: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    for dim in 0..=max_len {
        if layer.is_empty() {
            break;
        }
        let mut index = BTreeMap::new();
        for seq in &layer {
            let faces = if dim == 0 {
                Vec::new()
            } else {
                (0..=dim)
                    .map(|i| {
                        let mut f = seq.clone();
                        f.remove(i);
                        prev[&f]
                    })
                    .collect()
            };
            let id = x.add_cell(dim, faces, seq.clone());
            if seq.windows(2).all(|w| edge_set.contains(&(w[0], w[1]))) {
                h.insert(id);
            }
            index.insert(seq.clone(), id.index);
        }
        let next: Vec<Vec<usize>> = layer
            .iter()
            .flat_map(|seq| {
                (0..n).filter(|v| !seq.contains(v)).map(move |v| {
                    let mut s = seq.clone();
                    s.push(v);
                    s
                })
            })
            .collect();
        prev = index;
        layer = next;
    }
    SuperHypergraph::new(x, h)
}
