//! Δ-sets, graded subsets and super-hypergraphs.
//!
//! A Δ-set stores, for every cell of dimension `n >= 1`, the ordered list of
//! its `n + 1` faces `d_0, ..., d_n` as indices into dimension `n - 1`. Cells
//! may carry an opaque label (a subgraph, a vertex tuple, ...).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::field::{FieldMatrix, FieldSpec};
use crate::graph::VertexOrder;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId {
    pub dim: usize,
    pub index: usize,
}

impl CellId {
    pub fn new(dim: usize, index: usize) -> Self {
        CellId { dim, index }
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.dim, self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSet<L = ()> {
    /// `faces[n][k]` lists the faces of cell `k` in dimension `n`.
    faces: Vec<Vec<Vec<usize>>>,
    labels: Vec<Vec<L>>,
}

impl<L> Default for DeltaSet<L> {
    fn default() -> Self {
        DeltaSet {
            faces: Vec::new(),
            labels: Vec::new(),
        }
    }
}

/// Result of [`DeltaSet::validate`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DeltaReport {
    /// Wrong face counts and out-of-range face references.
    pub structural: Vec<Error>,
    /// Instances `(cell, i, j)` with `d_i d_j x != d_j d_{i+1} x`.
    pub violations: Vec<(CellId, usize, usize)>,
}

impl DeltaReport {
    pub fn is_ok(&self) -> bool {
        self.structural.is_empty() && self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if let Some(e) = self.structural.into_iter().next() {
            return Err(e);
        }
        match self.violations.first() {
            Some(&(cell, i, j)) => Err(Error::DeltaIdentity { cell, i, j }),
            None => Ok(()),
        }
    }
}

impl<L> DeltaSet<L> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a cell without validation and returns its id.
    pub fn add_cell(&mut self, dim: usize, faces: Vec<usize>, label: L) -> CellId {
        while self.faces.len() <= dim {
            self.faces.push(Vec::new());
            self.labels.push(Vec::new());
        }
        self.faces[dim].push(faces);
        self.labels[dim].push(label);
        CellId::new(dim, self.faces[dim].len() - 1)
    }

    /// Overwrites one face pointer. Meant for builders and corruption tests;
    /// call [`DeltaSet::validate`] afterwards.
    pub fn set_face(&mut self, cell: CellId, position: usize, target: usize) {
        self.faces[cell.dim][cell.index][position] = target;
    }

    /// Number of dimension slots, including trailing empty ones.
    pub fn num_dims(&self) -> usize {
        self.faces.len()
    }

    /// Highest dimension holding at least one cell.
    pub fn top_dim(&self) -> Option<usize> {
        (0..self.faces.len())
            .rev()
            .find(|&n| !self.faces[n].is_empty())
    }

    pub fn count(&self, dim: usize) -> usize {
        self.faces.get(dim).map_or(0, Vec::len)
    }

    /// Cell counts per dimension, without trailing zeros.
    pub fn counts(&self) -> Vec<usize> {
        let top = self.top_dim().map_or(0, |t| t + 1);
        (0..top).map(|n| self.count(n)).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_cells() == 0
    }

    pub fn contains(&self, cell: CellId) -> bool {
        cell.index < self.count(cell.dim)
    }

    pub fn faces_of(&self, cell: CellId) -> &[usize] {
        &self.faces[cell.dim][cell.index]
    }

    /// `d_i` of the cell.
    pub fn face(&self, cell: CellId, i: usize) -> CellId {
        CellId::new(cell.dim - 1, self.faces[cell.dim][cell.index][i])
    }

    pub fn label(&self, cell: CellId) -> &L {
        &self.labels[cell.dim][cell.index]
    }

    pub fn labels(&self, dim: usize) -> &[L] {
        self.labels.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn cells(&self, dim: usize) -> impl Iterator<Item = CellId> + '_ {
        (0..self.count(dim)).map(move |k| CellId::new(dim, k))
    }

    pub fn all_cells(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.faces.len()).flat_map(move |n| self.cells(n))
    }

    pub fn map_labels<M>(&self, mut f: impl FnMut(CellId, &L) -> M) -> DeltaSet<M> {
        DeltaSet {
            faces: self.faces.clone(),
            labels: self
                .labels
                .iter()
                .enumerate()
                .map(|(n, ls)| {
                    ls.iter()
                        .enumerate()
                        .map(|(k, l)| f(CellId::new(n, k), l))
                        .collect()
                })
                .collect(),
        }
    }

    /// Drops labels, keeping only the face structure.
    pub fn unlabeled(&self) -> DeltaSet<()> {
        self.map_labels(|_, _| ())
    }

    /// Checks face counts and references, then every instance of the
    /// Δ-identity `d_i d_j = d_j d_{i+1}` for `i >= j`.
    pub fn validate(&self) -> DeltaReport {
        let mut report = DeltaReport::default();
        for (n, cells) in self.faces.iter().enumerate() {
            for (k, faces) in cells.iter().enumerate() {
                let cell = CellId::new(n, k);
                let expected = if n == 0 { 0 } else { n + 1 };
                if faces.len() != expected {
                    report.structural.push(Error::FaceCount {
                        cell,
                        expected,
                        found: faces.len(),
                    });
                    continue;
                }
                for (position, &target) in faces.iter().enumerate() {
                    if target >= self.count(n - 1) {
                        report.structural.push(Error::FaceOutOfRange {
                            cell,
                            position,
                            target,
                        });
                    }
                }
            }
        }
        if !report.structural.is_empty() {
            return report;
        }
        for n in 2..self.faces.len() {
            for k in 0..self.count(n) {
                let cell = CellId::new(n, k);
                for i in 0..n {
                    for j in 0..=i {
                        let lhs = self.face(self.face(cell, j), i);
                        let rhs = self.face(self.face(cell, i + 1), j);
                        if lhs != rhs {
                            report.violations.push((cell, i, j));
                        }
                    }
                }
            }
        }
        report
    }

    /// Boundary matrix `∂_n = Σ (-1)^i d_i` with rows indexed by
    /// `(n-1)`-cells and columns by `n`-cells. `∂_0` is the `0 × |X_0|` map.
    pub fn boundary_matrix(&self, n: usize, field: FieldSpec) -> FieldMatrix {
        if n == 0 {
            return FieldMatrix::zeros(field, 0, self.count(0));
        }
        let rows = self.count(n - 1);
        let mut m = FieldMatrix::zeros(field, rows, self.count(n));
        for (k, faces) in self.faces.get(n).into_iter().flatten().enumerate() {
            for (i, &f) in faces.iter().enumerate() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let v = field.add(m.get(f, k), &field.from_i64(sign));
                m.set(f, k, v);
            }
        }
        m
    }
}

/// Free-function form of [`DeltaSet::validate`].
pub fn validate_delta<L>(x: &DeltaSet<L>) -> DeltaReport {
    x.validate()
}

/// Builds the Δ-set of a simplicial complex: one cell per simplex, `d_i`
/// deleting the `i`-th vertex in `order`. Labels are the ordered vertex tuples.
pub fn from_simplicial(
    complex: &[BTreeSet<usize>],
    order: &VertexOrder,
) -> Result<DeltaSet<Vec<usize>>> {
    let mut by_dim: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for s in complex.iter().filter(|s| !s.is_empty()) {
        let mut v: Vec<usize> = s.iter().copied().collect();
        for &u in &v {
            if !order.covers(u) {
                return Err(Error::Precondition(format!(
                    "vertex {u} missing from the vertex order"
                )));
            }
        }
        order.sort(&mut v);
        by_dim.entry(v.len() - 1).or_default().insert(v);
    }
    // Sort each dimension by rank tuple for a deterministic layout.
    let mut layers: Vec<Vec<Vec<usize>>> = Vec::new();
    let top = by_dim.keys().next_back().copied();
    if let Some(top) = top {
        for n in 0..=top {
            let mut cells: Vec<Vec<usize>> =
                by_dim.remove(&n).unwrap_or_default().into_iter().collect();
            cells.sort_by_key(|c| c.iter().map(|&v| order.rank(v)).collect::<Vec<_>>());
            layers.push(cells);
        }
    }
    let mut x = DeltaSet::new();
    let mut index: Vec<BTreeMap<Vec<usize>, usize>> = Vec::new();
    for (n, cells) in layers.into_iter().enumerate() {
        let mut idx = BTreeMap::new();
        for c in cells {
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let mut f = c.clone();
                        f.remove(i);
                        index[n - 1].get(&f).copied().ok_or_else(|| {
                            Error::NotClosed(format!("face {f:?} of simplex {c:?} is missing"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            let id = x.add_cell(n, faces, c.clone());
            idx.insert(c, id.index);
        }
        index.push(idx);
    }
    Ok(x)
}

/// All nonempty subsets of the given vertex sets.
pub fn simplicial_closure(sets: &[BTreeSet<usize>]) -> Vec<BTreeSet<usize>> {
    let mut out: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for s in sets {
        let v: Vec<usize> = s.iter().copied().collect();
        assert!(v.len() < 32, "simplex too large to enumerate faces");
        for mask in 1u32..(1u32 << v.len()) {
            out.insert(
                (0..v.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| v[i])
                    .collect(),
            );
        }
    }
    out.into_iter().collect()
}

/// A graded set of cells of some host Δ-set.
#[derive(Clone, Debug, Default)]
pub struct GradedSubset {
    cells: Vec<BTreeSet<usize>>,
}

static EMPTY: BTreeSet<usize> = BTreeSet::new();

impl PartialEq for GradedSubset {
    fn eq(&self, other: &Self) -> bool {
        let n = self.cells.len().max(other.cells.len());
        (0..n).all(|d| self.dim_set(d) == other.dim_set(d))
    }
}

impl Eq for GradedSubset {}

impl GradedSubset {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Every cell of `x`.
    pub fn full<L>(x: &DeltaSet<L>) -> Self {
        GradedSubset {
            cells: (0..x.num_dims())
                .map(|n| (0..x.count(n)).collect())
                .collect(),
        }
    }

    pub fn from_cells(cells: impl IntoIterator<Item = CellId>) -> Self {
        let mut s = Self::empty();
        for c in cells {
            s.insert(c);
        }
        s
    }

    pub fn insert(&mut self, cell: CellId) -> bool {
        while self.cells.len() <= cell.dim {
            self.cells.push(BTreeSet::new());
        }
        self.cells[cell.dim].insert(cell.index)
    }

    pub fn remove(&mut self, cell: CellId) -> bool {
        self.cells
            .get_mut(cell.dim)
            .is_some_and(|s| s.remove(&cell.index))
    }

    pub fn contains(&self, cell: CellId) -> bool {
        self.dim_set(cell.dim).contains(&cell.index)
    }

    pub fn dim_set(&self, dim: usize) -> &BTreeSet<usize> {
        self.cells.get(dim).unwrap_or(&EMPTY)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.dim_set(dim).len()
    }

    pub fn total(&self) -> usize {
        self.cells.iter().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }

    /// Number of dimension slots (an upper bound on dimensions present).
    pub fn num_dims(&self) -> usize {
        self.cells.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = CellId> + '_ {
        self.cells
            .iter()
            .enumerate()
            .flat_map(|(n, s)| s.iter().map(move |&k| CellId::new(n, k)))
    }

    pub fn union(&self, other: &GradedSubset) -> GradedSubset {
        GradedSubset::from_cells(self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &GradedSubset) -> GradedSubset {
        GradedSubset::from_cells(self.iter().filter(|c| other.contains(*c)))
    }

    pub fn difference(&self, other: &GradedSubset) -> GradedSubset {
        GradedSubset::from_cells(self.iter().filter(|c| !other.contains(*c)))
    }

    pub fn is_subset(&self, other: &GradedSubset) -> bool {
        self.iter().all(|c| other.contains(c))
    }

    /// Errors if a member is not a cell of `x`.
    pub fn check_in<L>(&self, x: &DeltaSet<L>) -> Result<()> {
        match self.iter().find(|c| !x.contains(*c)) {
            Some(c) => Err(Error::MissingCell(c)),
            None => Ok(()),
        }
    }

    /// True iff every face of every member is a member.
    pub fn is_delta_subset<L>(&self, x: &DeltaSet<L>) -> bool {
        self.iter()
            .all(|c| c.dim == 0 || (0..=c.dim).all(|i| self.contains(x.face(c, i))))
    }
}

/// A Δ-set together with a graded subset of marked cells.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperHypergraph<L = ()> {
    pub x: DeltaSet<L>,
    pub h: GradedSubset,
}

impl<L> SuperHypergraph<L> {
    pub fn new(x: DeltaSet<L>, h: GradedSubset) -> Result<Self> {
        h.check_in(&x)?;
        Ok(SuperHypergraph { x, h })
    }

    /// The pair `(X, X)`.
    pub fn whole(x: DeltaSet<L>) -> Self {
        let h = GradedSubset::full(&x);
        SuperHypergraph { x, h }
    }
}

/// Smallest Δ-subset of `x` containing `h`.
pub fn closure_of<L>(x: &DeltaSet<L>, h: &GradedSubset) -> GradedSubset {
    let mut out = h.clone();
    for n in (1..h.num_dims()).rev() {
        let members: Vec<usize> = out.dim_set(n).iter().copied().collect();
        for k in members {
            for &f in x.faces_of(CellId::new(n, k)) {
                out.insert(CellId::new(n - 1, f));
            }
        }
    }
    out
}

/// Largest Δ-subset of `x` contained in `h`.
pub fn interior_of<L>(x: &DeltaSet<L>, h: &GradedSubset) -> GradedSubset {
    let mut out = GradedSubset::empty();
    for c in h.iter() {
        // iter() is ordered by dimension, so faces are decided first
        if c.dim == 0
            || x.faces_of(c)
                .iter()
                .all(|&f| out.contains(CellId::new(c.dim - 1, f)))
        {
            out.insert(c);
        }
    }
    out
}

/// The Δ-closure `Δ^X(H)`.
pub fn delta_closure<L>(sh: &SuperHypergraph<L>) -> GradedSubset {
    closure_of(&sh.x, &sh.h)
}

/// The maximal Δ-subset `δ^X(H)`.
pub fn max_delta_subset<L>(sh: &SuperHypergraph<L>) -> GradedSubset {
    interior_of(&sh.x, &sh.h)
}

/// `X = Δ^X(H)`.
pub fn is_regular<L>(sh: &SuperHypergraph<L>) -> bool {
    delta_closure(sh) == GradedSubset::full(&sh.x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletenessCertificate {
    /// `H_0` is nonempty but this vertex of `X` is not marked.
    ExtraVertex(CellId),
    /// `H_0` is empty and `X` has this many vertices instead of one.
    VertexCount(usize),
    /// Two distinct cells with identical face lists, not both marked.
    MatchingFaces(CellId, CellId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completeness {
    pub complete: bool,
    pub certificate: Option<CompletenessCertificate>,
}

/// Decides completeness of a regular super-hypergraph via the vertex and
/// matching-face properties. Non-regular input is rejected.
pub fn is_complete<L>(sh: &SuperHypergraph<L>) -> Result<Completeness> {
    if !is_regular(sh) {
        return Err(Error::NotRegular(
            "completeness is only defined for regular input".into(),
        ));
    }
    let fail = |c| {
        Ok(Completeness {
            complete: false,
            certificate: Some(c),
        })
    };
    if sh.h.count(0) > 0 {
        if let Some(v) = sh.x.cells(0).find(|v| !sh.h.contains(*v)) {
            return fail(CompletenessCertificate::ExtraVertex(v));
        }
    } else if sh.x.count(0) != 1 {
        return fail(CompletenessCertificate::VertexCount(sh.x.count(0)));
    }
    for n in 1..sh.x.num_dims() {
        let mut seen: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
        for k in 0..sh.x.count(n) {
            seen.entry(sh.x.faces_of(CellId::new(n, k)))
                .or_default()
                .push(k);
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for group in seen.values() {
            for (a, &p) in group.iter().enumerate() {
                for &q in &group[a + 1..] {
                    let both = sh.h.contains(CellId::new(n, p)) && sh.h.contains(CellId::new(n, q));
                    if !both {
                        pairs.push((p, q));
                    }
                }
            }
        }
        if let Some(&(p, q)) = pairs.iter().min() {
            return fail(CompletenessCertificate::MatchingFaces(
                CellId::new(n, p),
                CellId::new(n, q),
            ));
        }
    }
    Ok(Completeness {
        complete: true,
        certificate: None,
    })
}

/// A dimension-preserving map of cells, `cell_map[n][k]` being the image of
/// cell `k` of dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMorphism {
    pub cell_map: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismViolation {
    /// The map does not cover this many cells of a dimension.
    Shape {
        dim: usize,
        expected: usize,
        found: usize,
    },
    /// Image index outside the target.
    OutOfRange { cell: CellId, image: usize },
    /// `φ(d_i x) != d_i φ(x)`.
    Face {
        cell: CellId,
        i: usize,
        image_of_face: CellId,
        face_of_image: CellId,
    },
    /// A marked cell whose image is not marked.
    Marked { cell: CellId, image: CellId },
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismViolation::Shape {
                dim,
                expected,
                found,
            } => {
                write!(
                    f,
                    "dimension {dim}: map has {found} entries, source has {expected} cells"
                )
            }
            MorphismViolation::OutOfRange { cell, image } => {
                write!(f, "cell {cell} maps to missing cell {image}")
            }
            MorphismViolation::Face {
                cell,
                i,
                image_of_face,
                face_of_image,
            } => write!(
                f,
                "phi(d_{i} {cell}) = {image_of_face} but d_{i} phi({cell}) = {face_of_image}"
            ),
            MorphismViolation::Marked { cell, image } => {
                write!(f, "marked cell {cell} maps to unmarked {image}")
            }
        }
    }
}

impl DeltaMorphism {
    pub fn identity<L>(x: &DeltaSet<L>) -> Self {
        DeltaMorphism {
            cell_map: (0..x.num_dims())
                .map(|n| (0..x.count(n)).collect())
                .collect(),
        }
    }

    pub fn apply(&self, cell: CellId) -> CellId {
        CellId::new(cell.dim, self.cell_map[cell.dim][cell.index])
    }

    /// Checks shape, face commutation and, when marked subsets are given,
    /// `φ(H) ⊆ H'`.
    pub fn validate<A, B>(
        &self,
        source: &DeltaSet<A>,
        target: &DeltaSet<B>,
        marked: Option<(&GradedSubset, &GradedSubset)>,
    ) -> Vec<MorphismViolation> {
        let mut out = Vec::new();
        for n in 0..source.num_dims().max(self.cell_map.len()) {
            let found = self.cell_map.get(n).map_or(0, Vec::len);
            if found != source.count(n) {
                out.push(MorphismViolation::Shape {
                    dim: n,
                    expected: source.count(n),
                    found,
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for cell in source.all_cells() {
            let image = self.cell_map[cell.dim][cell.index];
            if image >= target.count(cell.dim) {
                out.push(MorphismViolation::OutOfRange { cell, image });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for cell in source.all_cells().filter(|c| c.dim > 0) {
            let img = self.apply(cell);
            for i in 0..=cell.dim {
                let image_of_face = self.apply(source.face(cell, i));
                let face_of_image = target.face(img, i);
                if image_of_face != face_of_image {
                    out.push(MorphismViolation::Face {
                        cell,
                        i,
                        image_of_face,
                        face_of_image,
                    });
                }
            }
        }
        if let Some((h, h2)) = marked {
            for cell in h.iter() {
                let image = self.apply(cell);
                if !h2.contains(image) {
                    out.push(MorphismViolation::Marked { cell, image });
                }
            }
        }
        out
    }

    /// Matrix of the induced chain map in degree `n` (rows: target cells).
    pub fn chain_matrix<A, B>(
        &self,
        source: &DeltaSet<A>,
        target: &DeltaSet<B>,
        n: usize,
        field: FieldSpec,
    ) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(field, target.count(n), source.count(n));
        for k in 0..source.count(n) {
            let r = self.cell_map[n][k];
            let v = field.add(m.get(r, k), &field.one());
            m.set(r, k, v);
        }
        m
    }
}

/// Free-function form of [`DeltaMorphism::validate`].
pub fn validate_morphism<A, B>(
    m: &DeltaMorphism,
    source: &DeltaSet<A>,
    target: &DeltaSet<B>,
    marked: Option<(&GradedSubset, &GradedSubset)>,
) -> Vec<MorphismViolation> {
    m.validate(source, target, marked)
}
