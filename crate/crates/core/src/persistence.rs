//! Persistent filtrations, persistence modules, barcodes and the exact
//! triangle of super-persistent homology.
//!
//! A scoring scheme gives every cell a critical index; `X(t_i)` is the set of
//! cells with index `<= i` and `H(t_i) = H ∩ X(t_i)`. At each step the three
//! modules are pair homologies inside `C_*(X)`:
//!
//! * ambient: `(A_i, 0)` with `A_i = inf(X(t_i))`, which is `C_*(X(t_i))`
//!   whenever the scheme is regular,
//! * embedded: `(E_i, 0)` with `E_i = inf(H(t_i))`,
//! * relative: `(A_i, E_i)`.
//!
//! Structure maps are identities on chains, so ranks of composites come
//! straight from subspace sums, and barcodes follow from the rank function
//! by inclusion-exclusion.

use std::collections::BTreeSet;
use std::fmt;

use crate::delta::{CellId, DeltaSet, GradedSubset, SuperHypergraph};
use crate::exec::Execution;
use crate::faces::{partition_faces, Clustering, SubgraphFamily};
use crate::field::{rank, Eliminator, FieldMatrix, FieldSpec, Scalar, Solver, SubspaceBasis};
use crate::graph::{Subgraph, SubgraphLabel};
use crate::homology::{induced_rank, infimum, ChainComplex, Homology, PairComplex};
use crate::scoring::{cell_scores, ScoringScheme};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FiltrationOptions {
    /// Accept non-regular schemes; steps then use infimum chains of `X(t)`.
    pub experimental: bool,
    pub exec: Execution,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Filtration<L> {
    pub sh: SuperHypergraph<L>,
    /// Critical values `t_1 < ... < t_k`.
    pub values: Vec<f64>,
    /// `index[n][k]`: the step at which cell `(n, k)` appears.
    pub index: Vec<Vec<usize>>,
    /// Set when some face appears after one of its cofaces.
    pub non_regular: bool,
}

impl<L> Filtration<L> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `X(t_i)`.
    pub fn cells_at(&self, i: usize) -> GradedSubset {
        GradedSubset::from_cells(self.index.iter().enumerate().flat_map(|(n, v)| {
            v.iter()
                .enumerate()
                .filter(move |(_, &s)| s <= i)
                .map(move |(k, _)| CellId::new(n, k))
        }))
    }

    /// `H(t_i) = H ∩ X(t_i)`.
    pub fn marked_at(&self, i: usize) -> GradedSubset {
        self.sh.h.intersection(&self.cells_at(i))
    }

    /// `X(t_i)` as a Δ-set of its own, cells renumbered in order. Fails when
    /// `X(t_i)` is not closed under faces.
    pub fn step_delta(&self, i: usize) -> Result<DeltaSet> {
        let cells = self.cells_at(i);
        induced_delta(&self.sh.x, &cells)
    }
}

/// The sub-Δ-set on `cells`, renumbered.
pub fn induced_delta<L>(x: &DeltaSet<L>, cells: &GradedSubset) -> Result<DeltaSet> {
    let mut out = DeltaSet::new();
    let mut renumber: Vec<Vec<Option<usize>>> =
        (0..x.num_dims()).map(|n| vec![None; x.count(n)]).collect();
    for c in cells.iter() {
        let faces = if c.dim == 0 {
            Vec::new()
        } else {
            x.faces_of(c)
                .iter()
                .map(|&f| {
                    renumber[c.dim - 1][f]
                        .ok_or_else(|| Error::NotClosed(format!("face of {c} is missing")))
                })
                .collect::<Result<_>>()?
        };
        renumber[c.dim][c.index] = Some(out.add_cell(c.dim, faces, ()).index);
    }
    Ok(out)
}

/// Labels injective and the vertex set of every face contained in that of
/// its coface.
pub fn check_domination<L: SubgraphLabel + Ord>(x: &DeltaSet<L>) -> Result<()> {
    let mut seen = BTreeSet::new();
    for c in x.all_cells() {
        if !seen.insert(x.label(c)) {
            return Err(Error::NotDominated(format!(
                "cell {c} repeats the label of another cell"
            )));
        }
        if c.dim > 0 {
            let own = &x.label(c).subgraph().vertices;
            for i in 0..=c.dim {
                let f = x.face(c, i);
                if !x.label(f).subgraph().vertices.is_subset(own) {
                    return Err(Error::NotDominated(format!(
                        "face {f} of {c} has vertices outside its coface"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Scores every cell and sorts the cells into steps.
pub fn build_filtration<L>(
    sh: SuperHypergraph<L>,
    s: &dyn ScoringScheme,
    opts: FiltrationOptions,
) -> Result<Filtration<L>>
where
    L: SubgraphLabel + Ord + Sync,
{
    check_domination(&sh.x)?;
    let scores = cell_scores(s, &sh.x, opts.exec)?;
    let mut values: Vec<f64> = scores.iter().flatten().copied().collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    let index: Vec<Vec<usize>> = scores
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| {
                    values
                        .binary_search_by(|y| y.total_cmp(x))
                        .expect("score is a critical value")
                })
                .collect()
        })
        .collect();
    let mut non_regular = false;
    for c in sh.x.all_cells().filter(|c| c.dim > 0) {
        for i in 0..=c.dim {
            let f = sh.x.face(c, i);
            if index[f.dim][f.index] > index[c.dim][c.index] {
                if !opts.experimental {
                    return Err(Error::NonRegularScheme(format!(
                        "face {f} (score {}) appears after its coface {c} (score {})",
                        values[index[f.dim][f.index]], values[index[c.dim][c.index]]
                    )));
                }
                non_regular = true;
            }
        }
    }
    Ok(Filtration {
        sh,
        values,
        index,
        non_regular,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuleKind {
    Ambient,
    Embedded,
    Relative,
}

impl ModuleKind {
    pub const ALL: [ModuleKind; 3] = [
        ModuleKind::Ambient,
        ModuleKind::Embedded,
        ModuleKind::Relative,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ModuleKind::Ambient => "ambient",
            ModuleKind::Embedded => "embedded",
            ModuleKind::Relative => "relative",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        ModuleKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// Chains of one filtration step in `C_*(X)` coordinates.
#[derive(Clone, Debug)]
struct StepChains {
    ambient: Vec<SubspaceBasis>,
    embedded: Vec<SubspaceBasis>,
}

impl StepChains {
    fn pair<'c>(&self, c: &'c ChainComplex, kind: ModuleKind) -> PairComplex<'c> {
        match kind {
            ModuleKind::Ambient => PairComplex::absolute(c, self.ambient.clone()),
            ModuleKind::Embedded => PairComplex::absolute(c, self.embedded.clone()),
            ModuleKind::Relative => {
                PairComplex::new(c, self.ambient.clone(), self.embedded.clone())
            }
        }
    }
}

/// One graded piece of a persistence module along a filtration.
#[derive(Clone, Debug)]
pub struct PersistenceModule {
    pub kind: ModuleKind,
    pub degree: usize,
    pub values: Vec<f64>,
    pub homology: Vec<Homology>,
    /// `steps[i]` is the matrix of `v_{t_i}^{t_{i+1}}`.
    pub steps: Vec<FieldMatrix>,
    ranks: Vec<Vec<usize>>,
}

impl PersistenceModule {
    fn build(
        kind: ModuleKind,
        degree: usize,
        values: Vec<f64>,
        homology: Vec<Homology>,
    ) -> Result<Self> {
        let k = homology.len();
        let mut steps = Vec::with_capacity(k.saturating_sub(1));
        let mut ranks = vec![vec![0; k]; k];
        for a in 0..k {
            ranks[a][a] = homology[a].dim();
        }
        for a in 0..k.saturating_sub(1) {
            steps.push(map_matrix(&homology[a], &homology[a + 1], kind, degree)?);
        }
        // Direct maps v_{t_a}^{t_b} checked against composites of steps.
        for a in 0..k {
            let mut composite =
                FieldMatrix::identity(homology[a].cycles.field(), homology[a].dim());
            for b in a + 1..k {
                composite = steps[b - 1].mul(&composite);
                let direct = map_matrix(&homology[a], &homology[b], kind, degree)?;
                if direct != composite {
                    return Err(Error::CompositionLaw(format!(
                        "{} degree {degree}: v({a},{b}) differs from the composite of steps",
                        kind.name()
                    )));
                }
                ranks[a][b] = rank(&direct);
            }
        }
        Ok(PersistenceModule {
            kind,
            degree,
            values,
            homology,
            steps,
            ranks,
        })
    }

    pub fn len(&self) -> usize {
        self.homology.len()
    }

    pub fn is_empty(&self) -> bool {
        self.homology.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.homology.iter().map(Homology::dim).collect()
    }

    /// Rank of `v_{t_a}^{t_b}`, `a <= b`.
    pub fn rank(&self, a: usize, b: usize) -> usize {
        assert!(a <= b, "rank({a},{b}) needs a <= b");
        self.ranks[a][b]
    }
}

fn map_matrix(
    from: &Homology,
    to: &Homology,
    kind: ModuleKind,
    degree: usize,
) -> Result<FieldMatrix> {
    to.classes_matrix(&from.representatives).ok_or_else(|| {
        Error::CompositionLaw(format!(
            "{} degree {degree}: a cycle does not survive a filtration step",
            kind.name()
        ))
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Death {
    Finite(f64),
    Infinite,
}

impl fmt::Display for Death {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Death::Finite(x) => write!(f, "{x}"),
            Death::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Bar {
    pub degree: usize,
    pub birth: f64,
    pub death: Death,
    pub multiplicity: usize,
    pub birth_index: usize,
    /// `None` for bars that never die.
    pub death_index: Option<usize>,
}

impl Bar {
    pub fn alive_at(&self, i: usize) -> bool {
        self.birth_index <= i && self.death_index.is_none_or(|d| i < d)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Barcode {
    pub bars: Vec<Bar>,
}

impl Barcode {
    pub fn degree(&self, n: usize) -> impl Iterator<Item = &Bar> {
        self.bars.iter().filter(move |b| b.degree == n)
    }

    /// Total multiplicity of bars of degree `n` alive at step `i`.
    pub fn dim_at(&self, n: usize, i: usize) -> usize {
        self.degree(n)
            .filter(|b| b.alive_at(i))
            .map(|b| b.multiplicity)
            .sum()
    }

    /// Rank of `v_{t_a}^{t_b}` read off the bars.
    pub fn rank(&self, n: usize, a: usize, b: usize) -> usize {
        self.degree(n)
            .filter(|x| x.alive_at(a) && x.alive_at(b))
            .map(|x| x.multiplicity)
            .sum()
    }

    pub fn extend(&mut self, other: Barcode) {
        self.bars.extend(other.bars);
    }
}

/// Bars by inclusion-exclusion on the rank function:
/// `mult[t_i, t_j) = r(i, j-1) - r(i-1, j-1) - r(i, j) + r(i-1, j)`.
pub fn barcode(m: &PersistenceModule) -> Result<Barcode> {
    let k = m.len();
    let r = |a: isize, b: usize| -> isize {
        if a < 0 || b >= k {
            0
        } else {
            m.rank(a as usize, b) as isize
        }
    };
    let mut bars = Vec::new();
    for i in 0..k {
        let ii = i as isize;
        let mut push = |mult: isize, death_index: Option<usize>| -> Result<()> {
            if mult < 0 {
                return Err(Error::CompositionLaw(format!(
                    "{} degree {}: negative multiplicity at birth {i}",
                    m.kind.name(),
                    m.degree
                )));
            }
            if mult > 0 {
                bars.push(Bar {
                    degree: m.degree,
                    birth: m.values[i],
                    death: death_index.map_or(Death::Infinite, |j| Death::Finite(m.values[j])),
                    multiplicity: mult as usize,
                    birth_index: i,
                    death_index,
                });
            }
            Ok(())
        };
        for j in i + 1..k {
            push(
                r(ii, j - 1) - r(ii - 1, j - 1) - r(ii, j) + r(ii - 1, j),
                Some(j),
            )?;
        }
        push(r(ii, k - 1) - r(ii - 1, k - 1), None)?;
    }
    Ok(Barcode { bars })
}

/// One interval summand with a cycle representing it from its birth on.
#[derive(Clone, Debug, PartialEq)]
pub struct AdaptedBar {
    pub birth: usize,
    pub death: Option<usize>,
    pub rep: Vec<Scalar>,
}

impl AdaptedBar {
    pub fn alive_at(&self, i: usize) -> bool {
        self.birth <= i && self.death.is_none_or(|d| i < d)
    }
}

/// A basis of every space of the module in which each basis vector belongs
/// to one interval summand.
///
/// Steps are processed left to right. At step `i` the surviving bars are
/// inserted in order of death, each followed by the kernel of `H_i -> H_j`
/// for that death `j`; kernel vectors that are new modulo everything
/// inserted so far start bars `[t_i, t_j)`. Ties are broken by the pivot
/// rules of the linear algebra, so the basis is reproducible.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalBasis {
    pub bars: Vec<AdaptedBar>,
}

impl IntervalBasis {
    pub fn compute(m: &PersistenceModule) -> Result<Self> {
        let k = m.len();
        let mut bars: Vec<AdaptedBar> = Vec::new();
        for i in 0..k {
            let h = &m.homology[i];
            let mut e = Eliminator::new(h.cycles.field(), h.cycles.ambient_dim());
            for b in h.boundaries.vectors() {
                e.insert(b);
            }
            let mut born = Vec::new();
            for j in (i + 1..k).map(Some).chain([None]) {
                for old in bars.iter().filter(|b| b.birth < i && b.death == j) {
                    if !e.insert(&old.rep) {
                        return Err(Error::CompositionLaw(format!(
                            "{} degree {}: surviving bar is dependent at step {i}",
                            m.kind.name(),
                            m.degree
                        )));
                    }
                }
                let kernel = match j {
                    Some(j) => h.cycles.intersect(&m.homology[j].boundaries)?,
                    None => h.cycles.clone(),
                };
                for v in kernel.vectors() {
                    if e.insert(v) {
                        born.push(AdaptedBar {
                            birth: i,
                            death: j,
                            rep: v.clone(),
                        });
                    }
                }
            }
            bars.extend(born);
            let alive = bars.iter().filter(|b| b.alive_at(i)).count();
            if alive != h.dim() {
                return Err(Error::CompositionLaw(format!(
                    "{} degree {}: adapted basis has {alive} vectors at step {i}, homology has {}",
                    m.kind.name(),
                    m.degree,
                    h.dim()
                )));
            }
        }
        Ok(IntervalBasis { bars })
    }

    /// The bars grouped into a barcode.
    pub fn barcode(&self, m: &PersistenceModule) -> Barcode {
        let mut bars: Vec<Bar> = Vec::new();
        for b in &self.bars {
            match bars
                .iter_mut()
                .find(|x| x.birth_index == b.birth && x.death_index == b.death)
            {
                Some(x) => x.multiplicity += 1,
                None => bars.push(Bar {
                    degree: m.degree,
                    birth: m.values[b.birth],
                    death: b
                        .death
                        .map_or(Death::Infinite, |j| Death::Finite(m.values[j])),
                    multiplicity: 1,
                    birth_index: b.birth,
                    death_index: b.death,
                }),
            }
        }
        bars.sort_by_key(|b| (b.birth_index, b.death_index.unwrap_or(usize::MAX)));
        Barcode { bars }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arrow {
    /// `H^emb_n(H) -> H_n(X)`.
    J,
    /// `H_n(X) -> H^emb_n(X, H)`.
    P,
    /// `H^emb_n(X, H) -> H^emb_{n-1}(H)`.
    Boundary,
}

impl Arrow {
    pub const ALL: [Arrow; 3] = [Arrow::J, Arrow::P, Arrow::Boundary];

    pub fn name(&self) -> &'static str {
        match self {
            Arrow::J => "J",
            Arrow::P => "P",
            Arrow::Boundary => "boundary",
        }
    }

    fn source(&self) -> ModuleKind {
        match self {
            Arrow::J => ModuleKind::Embedded,
            Arrow::P => ModuleKind::Ambient,
            Arrow::Boundary => ModuleKind::Relative,
        }
    }

    fn target(&self) -> ModuleKind {
        match self {
            Arrow::J => ModuleKind::Ambient,
            Arrow::P => ModuleKind::Relative,
            Arrow::Boundary => ModuleKind::Embedded,
        }
    }
}

/// 0/1 matrix between the interval summands of source and target; rows and
/// columns are indices into the respective [`IntervalBasis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationMatrix {
    pub arrow: Arrow,
    /// Degree of the source module.
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    /// Nonzero entries `(row, col)`, sorted.
    pub entries: Vec<(usize, usize)>,
}

impl CorrelationMatrix {
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.entries.binary_search(&(row, col)).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleRow {
    pub degree: usize,
    pub index: usize,
    pub embedded: usize,
    pub ambient: usize,
    pub relative: usize,
    pub rank_j: usize,
    pub rank_p: usize,
    /// Rank of `∂: H^emb_n(X, H) -> H^emb_{n-1}(H)`.
    pub rank_boundary: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleReport {
    pub rows: Vec<TriangleRow>,
}

impl TriangleReport {
    pub fn is_exact(&self) -> bool {
        self.rows.iter().all(|r| r.exact)
    }
}

/// All three modules of a filtration in every degree, with interval bases.
#[derive(Clone, Debug)]
pub struct PersistenceSuite {
    pub values: Vec<f64>,
    complex: ChainComplex,
    modules: Vec<[PersistenceModule; 3]>,
    bases: Vec<[IntervalBasis; 3]>,
}

fn kind_slot(kind: ModuleKind) -> usize {
    match kind {
        ModuleKind::Ambient => 0,
        ModuleKind::Embedded => 1,
        ModuleKind::Relative => 2,
    }
}

impl PersistenceSuite {
    pub fn compute<L>(f: &Filtration<L>, field: FieldSpec, exec: Execution) -> Result<Self> {
        let complex = ChainComplex::from_delta(&f.sh.x, field)?;
        let subsets: Vec<(GradedSubset, GradedSubset)> = (0..f.len())
            .map(|i| {
                let cells = f.cells_at(i);
                let marked = f.sh.h.intersection(&cells);
                (cells, marked)
            })
            .collect();
        let steps: Vec<StepChains> = exec.map(subsets, |(cells, marked)| StepChains {
            ambient: (0..complex.len())
                .map(|n| infimum(&complex, &cells, n))
                .collect(),
            embedded: (0..complex.len())
                .map(|n| infimum(&complex, &marked, n))
                .collect(),
        });
        let jobs: Vec<(usize, ModuleKind)> = (0..complex.len())
            .flat_map(|n| ModuleKind::ALL.into_iter().map(move |k| (n, k)))
            .collect();
        let values = f.values.clone();
        let built = exec.try_map(jobs, |(n, kind)| {
            let homology: Vec<Homology> = steps
                .iter()
                .map(|s| s.pair(&complex, kind).homology(n))
                .collect();
            let m = PersistenceModule::build(kind, n, values.clone(), homology)?;
            let b = IntervalBasis::compute(&m)?;
            Ok::<_, Error>((m, b))
        })?;
        let mut modules = Vec::new();
        let mut bases = Vec::new();
        let mut it = built.into_iter();
        for _ in 0..complex.len() {
            let (a, ab) = it.next().expect("three modules per degree");
            let (e, eb) = it.next().expect("three modules per degree");
            let (r, rb) = it.next().expect("three modules per degree");
            modules.push([a, e, r]);
            bases.push([ab, eb, rb]);
        }
        Ok(PersistenceSuite {
            values: f.values.clone(),
            complex,
            modules,
            bases,
        })
    }

    /// Number of degrees.
    pub fn num_degrees(&self) -> usize {
        self.modules.len()
    }

    pub fn module(&self, kind: ModuleKind, degree: usize) -> Option<&PersistenceModule> {
        self.modules.get(degree).map(|m| &m[kind_slot(kind)])
    }

    pub fn interval_basis(&self, kind: ModuleKind, degree: usize) -> Option<&IntervalBasis> {
        self.bases.get(degree).map(|m| &m[kind_slot(kind)])
    }

    /// Barcode of one module family over all degrees.
    pub fn barcode(&self, kind: ModuleKind) -> Result<Barcode> {
        let mut out = Barcode::default();
        for m in &self.modules {
            out.extend(barcode(&m[kind_slot(kind)])?);
        }
        Ok(out)
    }

    /// Correlation matrix of `arrow` out of the given source degree.
    pub fn correlation(&self, arrow: Arrow, degree: usize) -> Result<CorrelationMatrix> {
        let source = self
            .interval_basis(arrow.source(), degree)
            .ok_or_else(|| Error::Precondition(format!("no degree {degree} in this filtration")))?;
        let target_degree = match arrow {
            Arrow::Boundary => degree.checked_sub(1),
            _ => Some(degree),
        };
        let target_basis = target_degree.and_then(|n| self.interval_basis(arrow.target(), n));
        let Some(target) = target_basis else {
            return Ok(CorrelationMatrix {
                arrow,
                degree,
                rows: source.bars.len(),
                cols: 0,
                entries: Vec::new(),
            });
        };
        let tmod = self
            .module(arrow.target(), target_degree.expect("checked"))
            .expect("checked");
        let f = self.complex.field();
        let d = self.complex.boundary(degree);
        let mut entries = BTreeSet::new();
        for t in 0..self.values.len() {
            let alive_s: Vec<usize> = (0..source.bars.len())
                .filter(|&a| source.bars[a].alive_at(t))
                .collect();
            if alive_s.is_empty() {
                continue;
            }
            let alive_t: Vec<usize> = (0..target.bars.len())
                .filter(|&b| target.bars[b].alive_at(t))
                .collect();
            let mut basis: Vec<Vec<Scalar>> = alive_t
                .iter()
                .map(|&b| target.bars[b].rep.clone())
                .collect();
            basis.extend(tmod.homology[t].boundaries.vectors().iter().cloned());
            let solver = Solver::new(f, tmod.homology[t].cycles.ambient_dim(), &basis);
            for &a in &alive_s {
                let rep = &source.bars[a].rep;
                let image = match arrow {
                    Arrow::Boundary => d.mul_vec(rep),
                    _ => rep.clone(),
                };
                let coeffs = solver.solve(&image).ok_or_else(|| {
                    Error::CompositionLaw(format!(
                        "{} image of a bar is not a cycle of the target",
                        arrow.name()
                    ))
                })?;
                for (pos, &b) in alive_t.iter().enumerate() {
                    if !f.is_zero(&coeffs[pos]) {
                        entries.insert((a, b));
                    }
                }
            }
        }
        Ok(CorrelationMatrix {
            arrow,
            degree,
            rows: source.bars.len(),
            cols: target.bars.len(),
            entries: entries.into_iter().collect(),
        })
    }

    /// Rank bookkeeping of the long exact sequence at every step:
    /// `im J = ker P`, `im P = ker ∂` and `im ∂ = ker J`, each as a rank
    /// equality plus a check that the composite vanishes.
    pub fn triangle(&self) -> TriangleReport {
        let k = self.values.len();
        let len = self.modules.len();
        let mut rows = Vec::new();
        let hom =
            |kind: ModuleKind, n: usize, t: usize| self.module(kind, n).map(|m| &m.homology[t]);
        for t in 0..k {
            let mut prev_rank_j = 0usize;
            let mut prev_embedded = 0usize;
            for n in 0..=len {
                let (e, a, r) = (
                    hom(ModuleKind::Embedded, n, t),
                    hom(ModuleKind::Ambient, n, t),
                    hom(ModuleKind::Relative, n, t),
                );
                let dim = |h: Option<&Homology>| h.map_or(0, Homology::dim);
                let rank_j = match (e, a) {
                    (Some(e), Some(a)) => induced_rank(None, e, a),
                    _ => 0,
                };
                let rank_p = match (a, r) {
                    (Some(a), Some(r)) => induced_rank(None, a, r),
                    _ => 0,
                };
                let rank_boundary = match (
                    r,
                    n.checked_sub(1)
                        .and_then(|m| hom(ModuleKind::Embedded, m, t)),
                ) {
                    (Some(r), Some(e_prev)) => {
                        induced_rank(Some(&self.complex.boundary(n)), r, e_prev)
                    }
                    _ => 0,
                };
                // composites P∘J, ∂∘P and J∘∂ vanish
                let pj = match (e, r) {
                    (Some(e), Some(r)) => induced_rank(None, e, r),
                    _ => 0,
                };
                let dp = match (
                    a,
                    n.checked_sub(1)
                        .and_then(|m| hom(ModuleKind::Embedded, m, t)),
                ) {
                    (Some(a), Some(e_prev)) => {
                        induced_rank(Some(&self.complex.boundary(n)), a, e_prev)
                    }
                    _ => 0,
                };
                let jd = match (
                    r,
                    n.checked_sub(1)
                        .and_then(|m| hom(ModuleKind::Ambient, m, t)),
                ) {
                    (Some(r), Some(a_prev)) => {
                        induced_rank(Some(&self.complex.boundary(n)), r, a_prev)
                    }
                    _ => 0,
                };
                let (de, da, dr) = (dim(e), dim(a), dim(r));
                let exact = pj == 0
                    && dp == 0
                    && jd == 0
                    && rank_j + rank_p == da
                    && rank_p + rank_boundary == dr
                    && (n == 0 || rank_boundary + prev_rank_j == prev_embedded);
                if n < len {
                    rows.push(TriangleRow {
                        degree: n,
                        index: t,
                        embedded: de,
                        ambient: da,
                        relative: dr,
                        rank_j,
                        rank_p,
                        rank_boundary,
                        exact,
                    });
                } else if !exact {
                    // past the top degree only the closing condition at H^emb_{top} remains
                    if let Some(last) = rows.last_mut() {
                        last.exact = false;
                    }
                }
                prev_rank_j = rank_j;
                prev_embedded = de;
            }
        }
        TriangleReport { rows }
    }
}

pub fn persistence_module<L>(
    f: &Filtration<L>,
    field: FieldSpec,
    kind: ModuleKind,
    degree: usize,
) -> Result<PersistenceModule> {
    let complex = ChainComplex::from_delta(&f.sh.x, field)?;
    let homology = (0..f.len())
        .map(|i| {
            let cells = f.cells_at(i);
            let marked = f.sh.h.intersection(&cells);
            let step = StepChains {
                ambient: (0..complex.len())
                    .map(|n| infimum(&complex, &cells, n))
                    .collect(),
                embedded: (0..complex.len())
                    .map(|n| infimum(&complex, &marked, n))
                    .collect(),
            };
            if degree < complex.len() {
                step.pair(&complex, kind).homology(degree)
            } else {
                empty_homology(field)
            }
        })
        .collect();
    PersistenceModule::build(kind, degree, f.values.clone(), homology)
}

fn empty_homology(field: FieldSpec) -> Homology {
    Homology {
        cycles: SubspaceBasis::zero(field, 0),
        boundaries: SubspaceBasis::zero(field, 0),
        representatives: Vec::new(),
    }
}

pub fn correlation_matrix<L>(
    f: &Filtration<L>,
    field: FieldSpec,
    arrow: Arrow,
    degree: usize,
) -> Result<CorrelationMatrix> {
    PersistenceSuite::compute(f, field, Execution::default())?.correlation(arrow, degree)
}

pub fn triangle_report<L>(f: &Filtration<L>, field: FieldSpec) -> Result<TriangleReport> {
    Ok(PersistenceSuite::compute(f, field, Execution::default())?.triangle())
}

/// Partition faces, filtration by `s` and all three barcode families.
pub fn partition_persistence(
    fam: &SubgraphFamily,
    p: &Clustering,
    s: &dyn ScoringScheme,
    field: FieldSpec,
    opts: FiltrationOptions,
) -> Result<(Filtration<Subgraph>, PersistenceSuite)> {
    let sh = partition_faces(fam, p)?;
    let f = build_filtration(sh, s, opts)?;
    let suite = PersistenceSuite::compute(&f, field, opts.exec)?;
    Ok((f, suite))
}

#[cfg(test)]
// Expected scores are rounded to 12 digits, not the exact constant.
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use crate::graph::{clique_complex, MultiGraph, VertexOrder};
    use crate::scoring::{Constant, PointCloud, PointCloudScheme};

    fn square_filtration() -> Filtration<Subgraph> {
        let g = MultiGraph::complete(4);
        let sh = clique_complex(&g, &VertexOrder::identity(4), 3).unwrap();
        let pc = PointCloud::from_rows(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ])
        .unwrap();
        build_filtration(sh, &PointCloudScheme::vr(pc), FiltrationOptions::default()).unwrap()
    }

    #[test]
    fn square_values_and_degree_one() {
        let f = square_filtration();
        assert_eq!(f.values, vec![0.0, 0.5, 0.707106781187]);
        for i in 0..f.len() {
            assert!(f.step_delta(i).unwrap().validate().is_ok());
        }
        let m = persistence_module(&f, FieldSpec::Gf2, ModuleKind::Ambient, 1).unwrap();
        assert_eq!(m.dims(), vec![0, 1, 0]);
        let b = barcode(&m).unwrap();
        assert_eq!(b.bars.len(), 1);
        assert_eq!(b.bars[0].birth, 0.5);
        assert_eq!(b.bars[0].death, Death::Finite(0.707106781187));
    }

    #[test]
    fn square_degree_zero() {
        let f = square_filtration();
        let m = persistence_module(&f, FieldSpec::Gf2, ModuleKind::Embedded, 0).unwrap();
        let b = barcode(&m).unwrap();
        let finite: usize = b
            .bars
            .iter()
            .filter(|x| x.death == Death::Finite(0.5))
            .map(|x| x.multiplicity)
            .sum();
        let infinite: usize = b
            .bars
            .iter()
            .filter(|x| x.death == Death::Infinite)
            .map(|x| x.multiplicity)
            .sum();
        assert_eq!((finite, infinite), (3, 1));
    }

    #[test]
    fn constant_scheme_single_step() {
        let g = MultiGraph::complete(3);
        let sh = clique_complex(&g, &VertexOrder::identity(3), 2).unwrap();
        let f = build_filtration(sh, &Constant(2.0), FiltrationOptions::default()).unwrap();
        assert_eq!(f.values, vec![2.0]);
        let suite =
            PersistenceSuite::compute(&f, FieldSpec::Rational, Execution::Sequential).unwrap();
        let b = suite.barcode(ModuleKind::Ambient).unwrap();
        assert_eq!(b.bars.len(), 1);
        assert_eq!((b.bars[0].degree, b.bars[0].death), (0, Death::Infinite));
        assert!(suite.triangle().is_exact());
    }

    #[test]
    fn adapted_basis_matches_rank_barcode() {
        let f = square_filtration();
        let suite = PersistenceSuite::compute(&f, FieldSpec::Gf2, Execution::Sequential).unwrap();
        for n in 0..suite.num_degrees() {
            for kind in ModuleKind::ALL {
                let m = suite.module(kind, n).unwrap();
                let from_ranks = barcode(m).unwrap();
                let from_basis = suite.interval_basis(kind, n).unwrap().barcode(m);
                assert_eq!(from_ranks, from_basis, "{kind:?} degree {n}");
            }
        }
    }

    #[test]
    fn whole_marking_makes_j_the_identity() {
        let f = square_filtration();
        let suite = PersistenceSuite::compute(&f, FieldSpec::Gf2, Execution::Parallel).unwrap();
        for n in 0..suite.num_degrees() {
            let c = suite.correlation(Arrow::J, n).unwrap();
            assert_eq!(c.rows, c.cols);
            assert_eq!(c.entries, (0..c.rows).map(|i| (i, i)).collect::<Vec<_>>());
            let p = suite.correlation(Arrow::P, n).unwrap();
            assert_eq!((p.cols, p.entries.len()), (0, 0));
        }
        assert!(suite.triangle().is_exact());
    }

    #[test]
    fn non_regular_scheme_is_rejected() {
        let g = MultiGraph::complete(3);
        let sh = clique_complex(&g, &VertexOrder::identity(3), 2).unwrap();
        let s = crate::scoring::SeededRandom { seed: 3 };
        match build_filtration(sh.clone(), &s, FiltrationOptions::default()) {
            Err(Error::NonRegularScheme(_)) => {}
            other => panic!("expected rejection, got {other:?}"),
        }
        let opts = FiltrationOptions {
            experimental: true,
            ..Default::default()
        };
        let f = build_filtration(sh, &s, opts).unwrap();
        assert!(f.non_regular);
        let suite = PersistenceSuite::compute(&f, FieldSpec::Gf2, Execution::Sequential).unwrap();
        assert!(suite.triangle().is_exact());
    }
}
