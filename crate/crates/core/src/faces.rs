//! Face-operation families turning a family of subgraphs into a
//! super-hypergraph.
//!
//! Each constructor closes the family under its face operations. Cells are
//! canonical encodings (sorted vertex and edge sets), so a subgraph reached
//! by two different deletion sequences is one cell.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::delta::{DeltaSet, GradedSubset, SuperHypergraph};
use crate::graph::{is_subgraph, MultiGraph, Subgraph, SubgraphLabel, VertexOrder};
use crate::{Error, Result};

/// A host graph and a list of its subgraphs.
#[derive(Clone, Debug, PartialEq)]
pub struct SubgraphFamily {
    pub host: MultiGraph,
    pub members: Vec<Subgraph>,
}

impl SubgraphFamily {
    pub fn new(host: MultiGraph, members: Vec<Subgraph>) -> Result<Self> {
        for (k, m) in members.iter().enumerate() {
            if !is_subgraph(m, &host) {
                return Err(Error::Family(format!(
                    "member {k} is not a subgraph of the host"
                )));
            }
        }
        Ok(SubgraphFamily { host, members })
    }

    fn endpoints(&self) -> impl Fn(usize) -> (usize, usize) + '_ {
        |e| {
            let edge = self.host.edge(e);
            (edge.source, edge.target)
        }
    }

    fn require_vertices(&self) -> Result<()> {
        match self.members.iter().position(|m| m.vertices.is_empty()) {
            Some(k) => Err(Error::Family(format!("member {k} has no vertices"))),
            None => Ok(()),
        }
    }
}

/// An ordered partition `V_0, ..., V_m` of the host vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clustering {
    block_of: Vec<usize>,
    num_blocks: usize,
}

impl Clustering {
    /// `block_of[v]` is the block index of vertex `v`; every index in
    /// `0..=max` must be used.
    pub fn new(block_of: Vec<usize>) -> Result<Self> {
        let num_blocks = block_of.iter().max().map_or(0, |m| m + 1);
        let used: BTreeSet<usize> = block_of.iter().copied().collect();
        if used.len() != num_blocks {
            return Err(Error::Precondition("clustering has an empty block".into()));
        }
        Ok(Clustering {
            block_of,
            num_blocks,
        })
    }

    /// Every vertex its own block, blocks ordered by `order`.
    pub fn singletons(order: &VertexOrder) -> Self {
        let n = order.sequence().len();
        Clustering {
            block_of: (0..n).map(|v| order.rank(v)).collect(),
            num_blocks: n,
        }
    }

    pub fn block(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    pub fn num_vertices(&self) -> usize {
        self.block_of.len()
    }

    /// The nonempty pieces `V(H) ∩ V_k`, in block order.
    pub fn pieces(&self, vertices: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut by_block: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for &v in vertices {
            by_block.entry(self.block_of[v]).or_default().insert(v);
        }
        by_block.into_values().collect()
    }

    fn check_host(&self, g: &MultiGraph) -> Result<()> {
        if self.block_of.len() != g.num_vertices() {
            return Err(Error::Precondition(format!(
                "clustering covers {} vertices, host has {}",
                self.block_of.len(),
                g.num_vertices()
            )));
        }
        Ok(())
    }
}

/// Least fixed point of a face operation over a family of keys.
///
/// `expand(k)` returns the dimension `n` of `k` and, for `n > 0`, its `n + 1`
/// faces, which must have dimension `n - 1`. Cells are laid out in key order
/// within each dimension; the marked subset is the member set.
pub(crate) fn close_family<K: Ord + Clone>(
    members: Vec<K>,
    mut expand: impl FnMut(&K) -> Result<(usize, Vec<K>)>,
    always_validate: bool,
) -> Result<SuperHypergraph<K>> {
    let mut known: BTreeMap<K, (usize, Vec<K>)> = BTreeMap::new();
    let mut queue: VecDeque<K> = VecDeque::new();
    let member_set: BTreeSet<K> = members.into_iter().collect();
    queue.extend(member_set.iter().cloned());
    while let Some(k) = queue.pop_front() {
        if known.contains_key(&k) {
            continue;
        }
        let (n, fs) = expand(&k)?;
        let expected = if n == 0 { 0 } else { n + 1 };
        if fs.len() != expected {
            return Err(Error::Family(format!(
                "face operation returned {} faces for a {n}-cell",
                fs.len()
            )));
        }
        queue.extend(fs.iter().filter(|f| !known.contains_key(*f)).cloned());
        known.insert(k, (n, fs));
    }
    let mut layers: Vec<Vec<&K>> = Vec::new();
    for (k, (n, _)) in &known {
        while layers.len() <= *n {
            layers.push(Vec::new());
        }
        layers[*n].push(k);
    }
    let index: BTreeMap<&K, usize> = layers
        .iter()
        .flat_map(|l| l.iter().enumerate().map(|(i, k)| (*k, i)))
        .collect();
    let mut x = DeltaSet::new();
    let mut h = GradedSubset::empty();
    for (n, layer) in layers.iter().enumerate() {
        for k in layer {
            let fs = &known[*k].1;
            if let Some(bad) = fs.iter().find(|f| known[*f].0 + 1 != n) {
                return Err(Error::Family(format!(
                    "face of a {n}-cell has dimension {}",
                    known[bad].0
                )));
            }
            let faces = fs.iter().map(|f| index[f]).collect();
            let id = x.add_cell(n, faces, (*k).clone());
            if member_set.contains(*k) {
                h.insert(id);
            }
        }
    }
    if always_validate || cfg!(debug_assertions) {
        x.validate().into_result()?;
    }
    SuperHypergraph::new(x, h)
}

/// Primary vertex deletion: `n`-cells are subgraphs on `n + 1` vertices and
/// `d_i` deletes the `i`-th vertex (in `order`) with its incident edges.
pub fn primary_vertex_deletion(
    fam: &SubgraphFamily,
    order: &VertexOrder,
) -> Result<SuperHypergraph<Subgraph>> {
    fam.require_vertices()?;
    let ends = fam.endpoints();
    close_family(
        fam.members.clone(),
        |h| {
            let vs = order.sorted(&h.vertices);
            let faces = if vs.len() == 1 {
                Vec::new()
            } else {
                vs.iter()
                    .map(|v| {
                        let mut keep = h.vertices.clone();
                        keep.remove(v);
                        h.restrict(&keep, &ends)
                    })
                    .collect()
            };
            Ok((vs.len() - 1, faces))
        },
        false,
    )
}

/// Secondary vertex deletion on a simple host: `d_i` removes `v_i` and, for
/// interior `i`, adds the host edge from `v_{i-1}` to `v_{i+1}` if there is
/// one. The Δ-identity is checked on every construction.
pub fn secondary_vertex_deletion(
    fam: &SubgraphFamily,
    order: &VertexOrder,
) -> Result<SuperHypergraph<Subgraph>> {
    if !fam.host.is_simple() {
        return Err(Error::Graph(
            "secondary vertex deletion needs a simple host".into(),
        ));
    }
    fam.require_vertices()?;
    let ends = fam.endpoints();
    close_family(
        fam.members.clone(),
        |h| {
            let vs = order.sorted(&h.vertices);
            let n = vs.len() - 1;
            if n == 0 {
                return Ok((0, Vec::new()));
            }
            let faces = (0..=n)
                .map(|i| {
                    let mut keep = h.vertices.clone();
                    keep.remove(&vs[i]);
                    let mut face = h.restrict(&keep, &ends);
                    if i > 0 && i < n {
                        face.edges
                            .extend(fam.host.edges_between(vs[i - 1], vs[i + 1]));
                    }
                    face
                })
                .collect();
            Ok((n, faces))
        },
        true,
    )
}

/// Edge-set view of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDeletionComplex {
    /// Distinct member edge sets, sorted.
    pub hyperedges: Vec<BTreeSet<usize>>,
    /// Whether deleting any single edge of a member stays in the family.
    pub closed: bool,
    /// The family as a simplicial complex on edges, when closed.
    pub complex: Option<Vec<BTreeSet<usize>>>,
}

/// Identifies members with their edge sets (grading `|E(H)| - 1`).
pub fn edge_deletion_complex(fam: &SubgraphFamily) -> Result<EdgeDeletionComplex> {
    if let Some(k) = fam.members.iter().position(|m| m.edges.is_empty()) {
        return Err(Error::Family(format!("member {k} has no edges")));
    }
    let set: BTreeSet<BTreeSet<usize>> = fam.members.iter().map(|m| m.edges.clone()).collect();
    let closed = set.iter().all(|es| {
        es.len() == 1
            || es.iter().all(|e| {
                let mut f = es.clone();
                f.remove(e);
                set.contains(&f)
            })
    });
    let hyperedges: Vec<BTreeSet<usize>> = set.into_iter().collect();
    Ok(EdgeDeletionComplex {
        complex: closed.then(|| hyperedges.clone()),
        hyperedges,
        closed,
    })
}

/// Partition faces: grading is the number of touched blocks minus one and
/// `d_j` removes every vertex of the `j`-th touched block.
pub fn partition_faces(fam: &SubgraphFamily, p: &Clustering) -> Result<SuperHypergraph<Subgraph>> {
    p.check_host(&fam.host)?;
    fam.require_vertices()?;
    let ends = fam.endpoints();
    close_family(
        fam.members.clone(),
        |h| {
            let pieces = p.pieces(&h.vertices);
            if pieces.len() == 1 {
                return Ok((0, Vec::new()));
            }
            let faces = pieces
                .iter()
                .map(|piece| {
                    let keep: BTreeSet<usize> = h.vertices.difference(piece).copied().collect();
                    h.restrict(&keep, &ends)
                })
                .collect();
            Ok((pieces.len() - 1, faces))
        },
        false,
    )
}

/// Link-blowup faces: `d_j(H) = H[V(H) \ V_j] ∪ G[lk(V_j) ∩ V(H)]` where
/// `lk(S)` is the set of host neighbors of `S` outside `S`.
pub fn link_blowup_faces(
    fam: &SubgraphFamily,
    p: &Clustering,
) -> Result<SuperHypergraph<Subgraph>> {
    p.check_host(&fam.host)?;
    fam.require_vertices()?;
    let g = &fam.host;
    let nbrs: Vec<BTreeSet<usize>> = (0..g.num_vertices()).map(|v| g.neighbors(v)).collect();
    let ends = fam.endpoints();
    close_family(
        fam.members.clone(),
        |h| {
            let pieces = p.pieces(&h.vertices);
            if pieces.len() == 1 {
                return Ok((0, Vec::new()));
            }
            let faces = pieces
                .iter()
                .map(|piece| {
                    let keep: BTreeSet<usize> = h.vertices.difference(piece).copied().collect();
                    let link: BTreeSet<usize> = piece
                        .iter()
                        .flat_map(|&v| nbrs[v].iter().copied())
                        .filter(|v| keep.contains(v))
                        .collect();
                    h.restrict(&keep, &ends).union(&Subgraph::induced(g, &link))
                })
                .collect();
            Ok((pieces.len() - 1, faces))
        },
        false,
    )
}

/// A subgraph together with a set of starting vertices from which every
/// vertex is reachable.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkedSubgraph {
    pub subgraph: Subgraph,
    pub sv: BTreeSet<usize>,
}

impl SubgraphLabel for MarkedSubgraph {
    fn subgraph(&self) -> &Subgraph {
        &self.subgraph
    }
}

/// The host graph extended by formal edges `∞_{vw}`, created on demand.
/// Edge ids at or above the host's edge count denote `∞`-edges.
#[derive(Clone, Debug)]
struct Extension<'g> {
    host: &'g MultiGraph,
    extra: Vec<(usize, usize)>,
    lookup: BTreeMap<(usize, usize), usize>,
}

impl<'g> Extension<'g> {
    fn new(host: &'g MultiGraph) -> Self {
        Extension {
            host,
            extra: Vec::new(),
            lookup: BTreeMap::new(),
        }
    }

    fn endpoints(&self, e: usize) -> (usize, usize) {
        let m = self.host.num_edges();
        if e < m {
            let edge = self.host.edge(e);
            (edge.source, edge.target)
        } else {
            self.extra[e - m]
        }
    }

    fn key(&self, v: usize, w: usize) -> (usize, usize) {
        if self.host.is_directed() {
            (v, w)
        } else {
            (v.min(w), v.max(w))
        }
    }

    fn infinity(&mut self, v: usize, w: usize) -> usize {
        let key = self.key(v, w);
        if let Some(&e) = self.lookup.get(&key) {
            return e;
        }
        let e = self.host.num_edges() + self.extra.len();
        self.extra.push(key);
        self.lookup.insert(key, e);
        e
    }

    /// Does `h` contain an edge from `v` to `w` (either way when undirected)?
    fn has_edge(&self, h: &Subgraph, v: usize, w: usize) -> bool {
        let key = self.key(v, w);
        h.edges.iter().any(|&e| {
            let (a, b) = self.endpoints(e);
            self.key(a, b) == key
        })
    }

    /// Neighborhood-extension layers `V_0 = SV`, `V_{j+1}` = unvisited
    /// (out-)neighbors of `V_j` inside `h`. Errors if a vertex is unreachable.
    fn layers(&self, m: &MarkedSubgraph) -> Result<Vec<BTreeSet<usize>>> {
        let h = &m.subgraph;
        if !m.sv.is_subset(&h.vertices) {
            return Err(Error::Family(
                "starting vertices are not vertices of the subgraph".into(),
            ));
        }
        if m.sv.is_empty() && !h.vertices.is_empty() {
            return Err(Error::Family(
                "nonempty subgraph without starting vertices".into(),
            ));
        }
        let directed = self.host.is_directed();
        let mut visited = m.sv.clone();
        let mut layers = vec![m.sv.clone()];
        loop {
            let last = layers.last().expect("at least one layer");
            let mut next = BTreeSet::new();
            for &e in &h.edges {
                let (a, b) = self.endpoints(e);
                if last.contains(&a) && !visited.contains(&b) {
                    next.insert(b);
                }
                if !directed && last.contains(&b) && !visited.contains(&a) {
                    next.insert(a);
                }
            }
            if next.is_empty() {
                break;
            }
            visited.extend(next.iter().copied());
            layers.push(next);
        }
        if visited.len() != h.vertices.len() {
            let v = h
                .vertices
                .difference(&visited)
                .next()
                .copied()
                .unwrap_or_default();
            return Err(Error::Family(format!(
                "vertex {} is not reachable from the starting vertices",
                self.host.vertex_name(v)
            )));
        }
        Ok(layers)
    }

    fn face(&mut self, m: &MarkedSubgraph, layers: &[BTreeSet<usize>], j: usize) -> MarkedSubgraph {
        let keep: BTreeSet<usize> = m
            .subgraph
            .vertices
            .difference(&layers[j])
            .copied()
            .collect();
        let mut sub = m.subgraph.restrict(&keep, |e| self.endpoints(e));
        if j > 0 && j + 1 < layers.len() {
            for &v in &layers[j - 1] {
                for &w in &layers[j + 1] {
                    if !self.has_edge(&m.subgraph, v, w) {
                        let e = self.infinity(v, w);
                        sub.edges.insert(e);
                    }
                }
            }
        }
        let sv = if j == 0 {
            layers[1].clone()
        } else {
            layers[0].clone()
        };
        MarkedSubgraph { subgraph: sub, sv }
    }

    /// `Ĝ` restricted to the `∞`-edges actually used, named `inf:<v>:<w>`.
    fn into_graph(self) -> MultiGraph {
        let mut g = self.host.clone();
        for (v, w) in self.extra {
            let name = format!(
                "inf:{}:{}",
                self.host.vertex_name(v),
                self.host.vertex_name(w)
            );
            g.add_edge(&name, v, w).expect("fresh edge name");
        }
        g
    }
}

/// Starting-vertex faces on subgraphs with marked starting vertices.
///
/// Returns the super-hypergraph over the extended graph `Ĝ` together with
/// `Ĝ` itself. Marked cells are those without `∞`-edges, i.e. the cells
/// that are subgraphs of `g`.
pub fn starting_vertex_faces(
    members: &[MarkedSubgraph],
    g: &MultiGraph,
) -> Result<(SuperHypergraph<MarkedSubgraph>, MultiGraph)> {
    for (k, m) in members.iter().enumerate() {
        if !is_subgraph(&m.subgraph, g) {
            return Err(Error::Family(format!(
                "member {k} is not a subgraph of the host"
            )));
        }
    }
    let mut ext = Extension::new(g);
    for m in members {
        ext.layers(m)?;
    }
    let sh = close_family(
        members.to_vec(),
        |m| {
            let layers = ext.layers(m)?;
            if layers.len() == 1 {
                return Ok((0, Vec::new()));
            }
            let faces = (0..layers.len()).map(|j| ext.face(m, &layers, j)).collect();
            Ok((layers.len() - 1, faces))
        },
        false,
    )?;
    let m = g.num_edges();
    let marked = GradedSubset::from_cells(
        sh.x.all_cells()
            .filter(|&c| sh.x.label(c).subgraph.edges.iter().all(|&e| e < m)),
    );
    let x = sh.x;
    Ok((SuperHypergraph::new(x, marked)?, ext.into_graph()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::CellId;

    fn k4() -> MultiGraph {
        MultiGraph::complete(4)
    }

    fn vertex_labels(sh: &SuperHypergraph<Subgraph>, dim: usize) -> Vec<Vec<usize>> {
        sh.x.labels(dim)
            .iter()
            .map(|s| s.vertices.iter().copied().collect())
            .collect()
    }

    #[test]
    fn primary_on_cliques_is_the_clique_complex() {
        let g = MultiGraph::complete(3);
        let cl = crate::graph::cliques(&g, 3).unwrap();
        let fam = SubgraphFamily::new(g, cl).unwrap();
        let sh = primary_vertex_deletion(&fam, &VertexOrder::identity(3)).unwrap();
        assert_eq!(sh.x.counts(), vec![3, 3, 1]);
        assert_eq!(sh.h, GradedSubset::full(&sh.x));
    }

    #[test]
    fn primary_single_vertex_and_cycle() {
        let g = k4();
        let fam = SubgraphFamily::new(g.clone(), vec![Subgraph::new([2], [])]).unwrap();
        let sh = primary_vertex_deletion(&fam, &VertexOrder::identity(4)).unwrap();
        assert_eq!(sh.x.counts(), vec![1]);

        // 4-cycle 0-1-2-3-0 inside K4
        let cyc: Vec<usize> = [(0, 1), (1, 2), (2, 3), (0, 3)]
            .iter()
            .map(|&(a, b)| g.edges_between(a, b)[0])
            .collect();
        let fam = SubgraphFamily::new(g, vec![Subgraph::new(0..4, cyc)]).unwrap();
        let sh = primary_vertex_deletion(&fam, &VertexOrder::identity(4)).unwrap();
        assert_eq!(sh.x.counts(), vec![4, 6, 4, 1]);
        // deleting a vertex of the cycle leaves a 2-edge path
        assert!(sh.x.labels(2).iter().all(|s| s.edges.len() == 2));
        assert!(sh.x.labels(1).iter().filter(|s| s.edges.len() == 1).count() == 4);
        assert!(sh.x.validate().is_ok());
    }

    #[test]
    fn empty_member_is_rejected() {
        let fam = SubgraphFamily::new(k4(), vec![Subgraph::default()]).unwrap();
        assert!(primary_vertex_deletion(&fam, &VertexOrder::identity(4)).is_err());
        let p = Clustering::new(vec![0, 0, 1, 1]).unwrap();
        assert!(partition_faces(&fam, &p).is_err());
    }

    #[test]
    fn secondary_adds_host_edge() {
        let mut g = MultiGraph::with_vertices(false, 3);
        let ab = g.add_edge("ab", 0, 1).unwrap();
        let bc = g.add_edge("bc", 1, 2).unwrap();
        let ac = g.add_edge("ac", 0, 2).unwrap();
        let fam = SubgraphFamily::new(g, vec![Subgraph::new([0, 1, 2], [ab, bc])]).unwrap();
        let sh = secondary_vertex_deletion(&fam, &VertexOrder::identity(3)).unwrap();
        let top = CellId::new(2, 0);
        let d1 = sh.x.face(top, 1);
        assert_eq!(sh.x.label(d1), &Subgraph::new([0, 2], [ac]));

        let single = SubgraphFamily::new(fam.host.clone(), vec![Subgraph::new([1], [])]).unwrap();
        let sh = secondary_vertex_deletion(&single, &VertexOrder::identity(3)).unwrap();
        assert_eq!(sh.x.counts(), vec![1]);
    }

    #[test]
    fn secondary_matches_path_faces_on_directed_paths() {
        // a -> b -> c -> d with chord a -> c
        let mut g = MultiGraph::with_vertices(true, 4);
        let ab = g.add_edge("ab", 0, 1).unwrap();
        let bc = g.add_edge("bc", 1, 2).unwrap();
        let cd = g.add_edge("cd", 2, 3).unwrap();
        g.add_edge("ac", 0, 2).unwrap();
        let fam = SubgraphFamily::new(g.clone(), vec![Subgraph::new([0, 1, 2, 3], [ab, bc, cd])])
            .unwrap();
        let sh = secondary_vertex_deletion(&fam, &VertexOrder::identity(4)).unwrap();
        let top = CellId::new(3, 0);
        let paths = crate::graph::path_complex(&g, 3).unwrap();
        let seq = paths
            .x
            .cells(3)
            .find(|&c| paths.x.label(c) == &vec![0, 1, 2, 3])
            .unwrap();
        for i in 1..3 {
            let face_vertices: Vec<usize> =
                sh.x.label(sh.x.face(top, i))
                    .vertices
                    .iter()
                    .copied()
                    .collect();
            assert_eq!(&face_vertices, paths.x.label(paths.x.face(seq, i)));
        }
    }

    #[test]
    fn edge_deletion_examples() {
        let g = MultiGraph::complete(3);
        let mut members = Vec::new();
        for mask in 1u32..8 {
            let es: Vec<usize> = (0..3).filter(|i| mask >> i & 1 == 1).collect();
            let vs: BTreeSet<usize> = es
                .iter()
                .flat_map(|&e| [g.edge(e).source, g.edge(e).target])
                .collect();
            members.push(Subgraph::new(vs, es));
        }
        let fam = SubgraphFamily::new(g.clone(), members).unwrap();
        let r = edge_deletion_complex(&fam).unwrap();
        assert!(r.closed);
        assert_eq!(r.complex.unwrap().len(), 7);

        let tri = SubgraphFamily::new(g.clone(), vec![Subgraph::full(&g)]).unwrap();
        assert!(!edge_deletion_complex(&tri).unwrap().closed);

        let one = SubgraphFamily::new(g.clone(), vec![Subgraph::new([0, 1], [0])]).unwrap();
        let r = edge_deletion_complex(&one).unwrap();
        assert!(r.closed);
        assert_eq!(r.complex.unwrap().len(), 1);

        let bare = SubgraphFamily::new(g, vec![Subgraph::new([0], [])]).unwrap();
        assert!(edge_deletion_complex(&bare).is_err());
    }

    #[test]
    fn partition_examples() {
        let g = k4();
        let order = VertexOrder::identity(4);
        let fam = SubgraphFamily::new(g.clone(), vec![Subgraph::full(&g)]).unwrap();
        let a = partition_faces(&fam, &Clustering::singletons(&order)).unwrap();
        let b = primary_vertex_deletion(&fam, &order).unwrap();
        assert_eq!(a, b);

        let one = partition_faces(&fam, &Clustering::new(vec![0; 4]).unwrap()).unwrap();
        assert_eq!(one.x.counts(), vec![1]);

        // clusters {0,1}, {2}, {3}
        let p = Clustering::new(vec![0, 0, 1, 2]).unwrap();
        let sh = partition_faces(&fam, &p).unwrap();
        let top = CellId::new(2, 0);
        let d0 = sh.x.label(sh.x.face(top, 0));
        assert_eq!(d0, &Subgraph::new([2, 3], g.edges_between(2, 3)));
        assert!(sh.x.validate().is_ok());
    }

    #[test]
    fn link_blowup_examples() {
        // star: center 0, leaves 1, 2, 3, plus all leaf-leaf edges in the host
        let mut g = MultiGraph::with_vertices(false, 4);
        let spokes: Vec<usize> = (1..4)
            .map(|l| g.add_edge(&format!("c{l}"), 0, l).unwrap())
            .collect();
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            g.add_edge(&format!("l{a}{b}"), a, b).unwrap();
        }
        let star = Subgraph::new(0..4, spokes);
        let fam = SubgraphFamily::new(g.clone(), vec![star]).unwrap();
        let p = Clustering::new(vec![0, 1, 1, 1]).unwrap();
        let sh = link_blowup_faces(&fam, &p).unwrap();
        let top = CellId::new(1, 0);
        let d0 = sh.x.label(sh.x.face(top, 0));
        assert_eq!(d0, &Subgraph::induced(&g, &[1, 2, 3].into()));
        let part = partition_faces(&fam, &p).unwrap();
        assert_eq!(vertex_labels(&sh, 0), vertex_labels(&part, 0));

        let one = link_blowup_faces(&fam, &Clustering::new(vec![0; 4]).unwrap()).unwrap();
        assert_eq!(one.x.counts(), vec![1]);
    }

    #[test]
    fn link_blowup_without_links_matches_partition() {
        // two disjoint edges 0-1 and 2-3, clusters {0,2} and {1,3}; member = edge 0-1
        let mut g = MultiGraph::with_vertices(false, 4);
        let e01 = g.add_edge("a", 0, 1).unwrap();
        g.add_edge("b", 2, 3).unwrap();
        let fam = SubgraphFamily::new(g, vec![Subgraph::new([0, 1], [e01])]).unwrap();
        let p = Clustering::new(vec![0, 1, 0, 1]).unwrap();
        assert_eq!(
            link_blowup_faces(&fam, &p).unwrap(),
            partition_faces(&fam, &p).unwrap()
        );
    }

    #[test]
    fn starting_vertex_examples() {
        let mut g = MultiGraph::with_vertices(true, 3);
        let ab = g.add_edge("ab", 0, 1).unwrap();
        let bc = g.add_edge("bc", 1, 2).unwrap();
        let single = MarkedSubgraph {
            subgraph: Subgraph::new([1], []),
            sv: [1].into(),
        };
        let (sh, _) = starting_vertex_faces(&[single], &g).unwrap();
        assert_eq!(sh.x.counts(), vec![1]);

        let path = MarkedSubgraph {
            subgraph: Subgraph::new([0, 1, 2], [ab, bc]),
            sv: [0].into(),
        };
        let (sh, ghat) = starting_vertex_faces(&[path], &g).unwrap();
        assert!(sh.x.validate().is_ok());
        let top = CellId::new(2, 0);
        let d1 = sh.x.label(sh.x.face(top, 1));
        assert_eq!(d1.subgraph.vertices, [0, 2].into());
        assert_eq!(d1.subgraph.edges.len(), 1);
        let inf = *d1.subgraph.edges.iter().next().unwrap();
        assert_eq!(ghat.edge(inf).name, "inf:0:2");
        assert_eq!((ghat.edge(inf).source, ghat.edge(inf).target), (0, 2));
        assert!(!sh.h.contains(sh.x.face(top, 1)));

        let d0 = sh.x.label(sh.x.face(top, 0));
        assert_eq!(d0.subgraph, Subgraph::new([1, 2], [bc]));
        assert_eq!(d0.sv, [1].into());
        assert!(sh.h.contains(top));
    }

    #[test]
    fn starting_vertex_reachability_is_enforced() {
        let mut g = MultiGraph::with_vertices(true, 2);
        let ab = g.add_edge("ab", 0, 1).unwrap();
        let bad = MarkedSubgraph {
            subgraph: Subgraph::new([0, 1], [ab]),
            sv: [1].into(),
        };
        assert!(starting_vertex_faces(&[bad], &g).is_err());
    }
}
