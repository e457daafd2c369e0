//! Scoring schemes on subgraphs.
//!
//! A scheme assigns a real number to every finite subgraph of the working
//! graph. Geometric schemes look only at the vertex set, mapped into `R^m`
//! by a [`PointCloud`]; the witness variants restrict the infimum over
//! `x ∈ R^m` to a finite witness set.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::delta::DeltaSet;
use crate::exec::Execution;
use crate::faces::SubgraphFamily;
use crate::graph::{Subgraph, SubgraphLabel};
use crate::{Error, Result};

/// Coordinates for (some of) the vertices of a graph.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointCloud {
    dim: usize,
    points: BTreeMap<usize, Vec<f64>>,
}

impl PointCloud {
    pub fn new(dim: usize) -> Self {
        PointCloud {
            dim,
            points: BTreeMap::new(),
        }
    }

    /// Vertex `i` gets `rows[i]`.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        let mut pc = PointCloud::new(dim);
        for (i, r) in rows.into_iter().enumerate() {
            pc.insert(i, r)?;
        }
        Ok(pc)
    }

    pub fn insert(&mut self, vertex: usize, coords: Vec<f64>) -> Result<()> {
        if coords.len() != self.dim {
            return Err(Error::Scoring(format!(
                "vertex {vertex} has {} coordinates, expected {}",
                coords.len(),
                self.dim
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Scoring(format!(
                "vertex {vertex} has a non-finite coordinate"
            )));
        }
        self.points.insert(vertex, coords);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, vertex: usize) -> Option<&[f64]> {
        self.points.get(&vertex).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[f64])> {
        self.points.iter().map(|(&v, p)| (v, p.as_slice()))
    }

    /// All coordinate vectors in vertex order.
    pub fn coordinates(&self) -> Vec<Vec<f64>> {
        self.points.values().cloned().collect()
    }

    /// Distinct image points of `vertices`, in first-seen order.
    pub fn image(&self, vertices: &BTreeSet<usize>) -> Result<Vec<Vec<f64>>> {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for &v in vertices {
            let p = self
                .get(v)
                .ok_or_else(|| Error::Scoring(format!("vertex {v} has no coordinates")))?;
            if !out.iter().any(|q| q.as_slice() == p) {
                out.push(p.to_vec());
            }
        }
        Ok(out)
    }
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessVariant {
    Strong,
    VrStrong,
    Weak,
    VrWeak,
}

impl WitnessVariant {
    pub fn name(&self) -> &'static str {
        match self {
            WitnessVariant::Strong => "strong",
            WitnessVariant::VrStrong => "vr_strong",
            WitnessVariant::Weak => "weak",
            WitnessVariant::VrWeak => "vr_weak",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "strong" => WitnessVariant::Strong,
            "vr_strong" => WitnessVariant::VrStrong,
            "weak" => WitnessVariant::Weak,
            "vr_weak" => WitnessVariant::VrWeak,
            _ => return None,
        })
    }

    fn is_weak(&self) -> bool {
        matches!(self, WitnessVariant::Weak | WitnessVariant::VrWeak)
    }
}

/// Finite witness set `W` and landmark set `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessConfig {
    pub witnesses: Vec<Vec<f64>>,
    pub landmarks: Vec<Vec<f64>>,
}

impl WitnessConfig {
    /// `W = L = ` the cloud.
    pub fn from_cloud(pc: &PointCloud) -> Self {
        WitnessConfig {
            witnesses: pc.coordinates(),
            landmarks: pc.coordinates(),
        }
    }
}

/// A score on finite point sets in `R^m`.
#[derive(Clone, Debug, PartialEq)]
pub enum PointScore {
    Vr,
    Cech,
    Witness(WitnessConfig, WitnessVariant),
}

impl PointScore {
    pub fn name(&self) -> String {
        match self {
            PointScore::Vr => "vr".into(),
            PointScore::Cech => "cech".into(),
            PointScore::Witness(_, v) => format!("witness:{}", v.name()),
        }
    }

    pub fn score_points(&self, points: &[Vec<f64>]) -> Result<f64> {
        if points.is_empty() {
            return Err(Error::Scoring("cannot score an empty point set".into()));
        }
        match self {
            PointScore::Vr => Ok(half_diameter(points)),
            PointScore::Cech => Ok(min_enclosing_ball(points).1),
            PointScore::Witness(cfg, variant) => witness_points(points, cfg, *variant),
        }
    }

    fn is_monotone(&self) -> bool {
        !matches!(self, PointScore::Witness(_, v) if v.is_weak())
    }
}

/// `½ max d(l_i, l_j)`.
pub fn half_diameter(points: &[Vec<f64>]) -> f64 {
    let mut best = 0.0f64;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.max(distance(p, q));
        }
    }
    best / 2.0
}

#[derive(Clone, Debug)]
struct Ball {
    center: Vec<f64>,
    radius: f64,
}

impl Ball {
    fn contains(&self, p: &[f64]) -> bool {
        distance(&self.center, p) <= self.radius * (1.0 + 1e-9) + 1e-12
    }
}

/// Solves `a x = b` by partial pivoting; `None` when (numerically) singular.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(1e-300);
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        let pivot = a[c].clone();
        for r in c + 1..n {
            let factor = a[r][c] / pivot[c];
            for (x, p) in a[r][c..].iter_mut().zip(&pivot[c..]) {
                *x -= factor * p;
            }
            b[r] -= factor * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Smallest sphere through all `support` points inside their affine hull.
fn circumball(support: &[&[f64]], dim: usize) -> Ball {
    match support.len() {
        0 => Ball {
            center: vec![0.0; dim],
            radius: -1.0,
        },
        1 => Ball {
            center: support[0].to_vec(),
            radius: 0.0,
        },
        _ => {
            let p0 = support[0];
            let diffs: Vec<Vec<f64>> = support[1..]
                .iter()
                .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
                .collect();
            let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
            let gram: Vec<Vec<f64>> = diffs
                .iter()
                .map(|u| diffs.iter().map(|v| dot(u, v)).collect())
                .collect();
            let rhs: Vec<f64> = diffs.iter().map(|u| dot(u, u) / 2.0).collect();
            match solve_dense(gram, rhs) {
                Some(lambda) => {
                    let mut center = p0.to_vec();
                    for (l, u) in lambda.iter().zip(&diffs) {
                        for (c, x) in center.iter_mut().zip(u) {
                            *c += l * x;
                        }
                    }
                    let radius = support
                        .iter()
                        .map(|p| distance(&center, p))
                        .fold(0.0, f64::max);
                    Ball { center, radius }
                }
                None => {
                    // affinely dependent support: the farthest pair decides
                    let mut best = (0, 0, -1.0);
                    for i in 0..support.len() {
                        for j in i + 1..support.len() {
                            let d = distance(support[i], support[j]);
                            if d > best.2 {
                                best = (i, j, d);
                            }
                        }
                    }
                    let center: Vec<f64> = support[best.0]
                        .iter()
                        .zip(support[best.1])
                        .map(|(a, b)| (a + b) / 2.0)
                        .collect();
                    let radius = support
                        .iter()
                        .map(|p| distance(&center, p))
                        .fold(0.0, f64::max);
                    Ball { center, radius }
                }
            }
        }
    }
}

fn welzl<'a>(points: &[&'a [f64]], boundary: &mut Vec<&'a [f64]>, dim: usize) -> Ball {
    if points.is_empty() || boundary.len() == dim + 1 {
        return circumball(boundary, dim);
    }
    let (p, rest) = points.split_last().expect("nonempty");
    let ball = welzl(rest, boundary, dim);
    if ball.radius >= 0.0 && ball.contains(p) {
        return ball;
    }
    boundary.push(p);
    let ball = welzl(rest, boundary, dim);
    boundary.pop();
    ball
}

/// Center and radius of the minimal enclosing ball.
pub fn min_enclosing_ball(points: &[Vec<f64>]) -> (Vec<f64>, f64) {
    let mut distinct: Vec<&[f64]> = Vec::new();
    for p in points {
        if !distinct.contains(&p.as_slice()) {
            distinct.push(p);
        }
    }
    let dim = distinct.first().map_or(0, |p| p.len());
    let mut ball = welzl(&distinct, &mut Vec::new(), dim);
    // Refinement: nudge the center towards the farthest point until every
    // point is inside, then report the true covering radius.
    for _ in 0..1000 {
        let (far, d) = distinct
            .iter()
            .map(|p| (*p, distance(&ball.center, p)))
            .fold(
                (distinct[0], -1.0),
                |acc, x| if x.1 > acc.1 { x } else { acc },
            );
        if d <= ball.radius * (1.0 + 1e-9) + 1e-12 {
            break;
        }
        let step = (d - ball.radius) / (2.0 * d);
        for (c, x) in ball.center.iter_mut().zip(far) {
            *c += step * (x - *c);
        }
        ball.radius = (d + ball.radius) / 2.0;
    }
    let radius = distinct
        .iter()
        .map(|p| distance(&ball.center, p))
        .fold(0.0, f64::max);
    (ball.center, radius)
}

fn witness_points(
    lambda: &[Vec<f64>],
    cfg: &WitnessConfig,
    variant: WitnessVariant,
) -> Result<f64> {
    if cfg.witnesses.is_empty() {
        return Err(Error::Scoring("witness set is empty".into()));
    }
    let others: Vec<&Vec<f64>> = if variant.is_weak() {
        let rest: Vec<&Vec<f64>> = cfg
            .landmarks
            .iter()
            .filter(|l| !lambda.contains(l))
            .collect();
        if rest.is_empty() {
            return Err(Error::Scoring(
                "weak witness scoring needs landmarks outside the scored set".into(),
            ));
        }
        rest
    } else {
        if cfg.landmarks.is_empty() {
            return Err(Error::Scoring("landmark set is empty".into()));
        }
        cfg.landmarks.iter().collect()
    };
    let nearest = |x: &[f64]| {
        others
            .iter()
            .map(|z| distance(x, z))
            .fold(f64::INFINITY, f64::min)
    };
    let inf_over = |group: &[&Vec<f64>]| {
        cfg.witnesses
            .iter()
            .map(|x| group.iter().map(|y| distance(x, y)).fold(0.0, f64::max) - nearest(x))
            .fold(f64::INFINITY, f64::min)
    };
    Ok(match variant {
        WitnessVariant::Strong | WitnessVariant::Weak => {
            inf_over(&lambda.iter().collect::<Vec<_>>())
        }
        WitnessVariant::VrStrong | WitnessVariant::VrWeak => {
            // pairs i <= j: the diagonal never exceeds a pair containing it,
            // and it gives singletons a value
            let mut best = f64::NEG_INFINITY;
            for i in 0..lambda.len() {
                for j in i..lambda.len() {
                    best = best.max(inf_over(&[&lambda[i], &lambda[j]]));
                }
            }
            best
        }
    })
}

/// A real-valued function on finite subgraphs.
pub trait ScoringScheme: Sync {
    fn score(&self, h: &Subgraph) -> Result<f64>;

    /// Whether the scheme is known to be monotone under inclusion.
    fn claims_regular(&self) -> bool;

    fn name(&self) -> String;
}

/// Scores the image of a subgraph's vertex set under a vertex map.
///
/// With an injective map this is ordinary Vietoris-Rips/Čech/witness
/// scoring of an embedded graph; otherwise it is the pull-back of the point
/// score, duplicates in the image collapsing to one point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloudScheme {
    pub map: PointCloud,
    pub base: PointScore,
}

impl PointCloudScheme {
    pub fn new(map: PointCloud, base: PointScore) -> Self {
        PointCloudScheme { map, base }
    }

    pub fn vr(map: PointCloud) -> Self {
        Self::new(map, PointScore::Vr)
    }

    pub fn cech(map: PointCloud) -> Self {
        Self::new(map, PointScore::Cech)
    }

    /// Witness scoring with `W = L = ` the cloud.
    pub fn witness(map: PointCloud, variant: WitnessVariant) -> Self {
        let cfg = WitnessConfig::from_cloud(&map);
        Self::new(map, PointScore::Witness(cfg, variant))
    }
}

impl ScoringScheme for PointCloudScheme {
    fn score(&self, h: &Subgraph) -> Result<f64> {
        self.base.score_points(&self.map.image(&h.vertices)?)
    }

    fn claims_regular(&self) -> bool {
        self.base.is_monotone()
    }

    fn name(&self) -> String {
        self.base.name()
    }
}

fn embedded(vertices: &[usize], pc: &PointCloud) -> Result<Vec<Vec<f64>>> {
    pc.image(&vertices.iter().copied().collect())
}

pub fn vr_score(vertices: &[usize], pc: &PointCloud) -> Result<f64> {
    PointScore::Vr.score_points(&embedded(vertices, pc)?)
}

pub fn cech_score(vertices: &[usize], pc: &PointCloud) -> Result<f64> {
    PointScore::Cech.score_points(&embedded(vertices, pc)?)
}

pub fn witness_score(
    vertices: &[usize],
    pc: &PointCloud,
    cfg: &WitnessConfig,
    variant: WitnessVariant,
) -> Result<f64> {
    witness_points(&embedded(vertices, pc)?, cfg, variant)
}

/// Base score of `f(V(h))`.
pub fn pullback_score(f: &PointCloud, base: &PointScore, h: &Subgraph) -> Result<f64> {
    base.score_points(&f.image(&h.vertices)?)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constant(pub f64);

impl ScoringScheme for Constant {
    fn score(&self, _: &Subgraph) -> Result<f64> {
        Ok(self.0)
    }

    fn claims_regular(&self) -> bool {
        true
    }

    fn name(&self) -> String {
        "constant".into()
    }
}

/// Uniform scores in `[0, 1)` derived from a hash of the subgraph and a
/// seed. Deterministic, and in general not monotone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeededRandom {
    pub seed: u64,
}

impl ScoringScheme for SeededRandom {
    fn score(&self, h: &Subgraph) -> Result<f64> {
        let mut hasher = DefaultHasher::new();
        h.hash(&mut hasher);
        self.seed.hash(&mut hasher);
        Ok(ChaCha8Rng::seed_from_u64(hasher.finish()).gen::<f64>())
    }

    fn claims_regular(&self) -> bool {
        false
    }

    fn name(&self) -> String {
        "seeded_random".into()
    }
}

/// Rounds to 12 significant digits so that equal scores computed along
/// different paths compare equal.
pub fn round_score(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityReport {
    pub regular: bool,
    /// `(P, Q)` with `P ⊆ Q` but `score(P) > score(Q)`.
    pub counterexample: Option<(Subgraph, Subgraph)>,
}

/// Checks monotonicity on all comparable pairs of members and on every
/// single vertex or edge deletion of a member. Pairs where either score is
/// undefined (e.g. a weak witness score on the whole landmark set) are
/// skipped.
pub fn is_regular_scheme(s: &dyn ScoringScheme, fam: &SubgraphFamily) -> RegularityReport {
    let endpoints = |e: usize| {
        let edge = fam.host.edge(e);
        (edge.source, edge.target)
    };
    let mut pairs: Vec<(Subgraph, Subgraph)> = Vec::new();
    for p in &fam.members {
        for q in &fam.members {
            if p != q && p.is_contained_in(q) {
                pairs.push((p.clone(), q.clone()));
            }
        }
    }
    for q in &fam.members {
        for &v in &q.vertices {
            let mut keep = q.vertices.clone();
            keep.remove(&v);
            let p = q.restrict(&keep, endpoints);
            if !p.is_empty() {
                pairs.push((p, q.clone()));
            }
        }
        for &e in &q.edges {
            let mut p = q.clone();
            p.edges.remove(&e);
            pairs.push((p, q.clone()));
        }
    }
    for (p, q) in pairs {
        if let (Ok(a), Ok(b)) = (s.score(&p), s.score(&q)) {
            if round_score(a) > round_score(b) {
                return RegularityReport {
                    regular: false,
                    counterexample: Some((p, q)),
                };
            }
        }
    }
    RegularityReport {
        regular: true,
        counterexample: None,
    }
}

/// Rounded score of every cell, indexed like the cells of `x`.
pub fn cell_scores<L: SubgraphLabel + Sync>(
    s: &dyn ScoringScheme,
    x: &DeltaSet<L>,
    exec: Execution,
) -> Result<Vec<Vec<f64>>> {
    (0..x.num_dims())
        .map(|n| {
            exec.try_map(x.labels(n).iter().collect(), |l: &L| {
                s.score(l.subgraph()).map(round_score)
            })
        })
        .collect()
}

/// Sorted distinct rounded scores of all cells.
pub fn critical_values<L: SubgraphLabel + Sync>(
    s: &dyn ScoringScheme,
    x: &DeltaSet<L>,
) -> Result<Vec<f64>> {
    let mut all: Vec<f64> = cell_scores(s, x, Execution::default())?
        .into_iter()
        .flatten()
        .collect();
    all.sort_by(f64::total_cmp);
    all.dedup();
    Ok(all)
}

#[cfg(test)]
// Expected scores are rounded to 12 digits, not the exact constant.
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use crate::graph::MultiGraph;

    fn line(xs: &[f64]) -> PointCloud {
        PointCloud::from_rows(xs.iter().map(|&x| vec![x]).collect()).unwrap()
    }

    fn square() -> PointCloud {
        PointCloud::from_rows(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ])
        .unwrap()
    }

    #[test]
    fn vr_examples() {
        let pc = square();
        assert_eq!(vr_score(&[2], &pc).unwrap(), 0.0);
        assert!((vr_score(&[0, 1], &pc).unwrap() - 0.5).abs() < 1e-12);
        assert!((vr_score(&[0, 1, 2, 3], &pc).unwrap() - 2f64.sqrt() / 2.0).abs() < 1e-12);
        assert!(vr_score(&[7], &pc).is_err());
    }

    #[test]
    fn cech_examples() {
        let tri = PointCloud::from_rows(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.5, 3f64.sqrt() / 2.0],
        ])
        .unwrap();
        assert_eq!(cech_score(&[0], &tri).unwrap(), 0.0);
        assert!((cech_score(&[0, 1], &tri).unwrap() - 0.5).abs() < 1e-9);
        assert!((cech_score(&[0, 1, 2], &tri).unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-9);
        // obtuse triangle: the ball is spanned by the long side
        let obtuse =
            PointCloud::from_rows(vec![vec![0.0, 0.0], vec![4.0, 0.0], vec![2.0, 0.5]]).unwrap();
        assert!((cech_score(&[0, 1, 2], &obtuse).unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn cech_in_higher_dimension() {
        // unit vectors of R^4: center (1/4, ..., 1/4), radius sqrt(3/4)
        let pts: Vec<Vec<f64>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let (_, r) = min_enclosing_ball(&pts);
        assert!((r - (0.75f64).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn witness_examples() {
        let pc = line(&[0.0, 1.0]);
        let cfg = WitnessConfig::from_cloud(&pc);
        assert_eq!(
            witness_score(&[0], &pc, &cfg, WitnessVariant::Strong).unwrap(),
            0.0
        );
        assert_eq!(
            witness_score(&[0], &pc, &cfg, WitnessVariant::Weak).unwrap(),
            -1.0
        );
        assert!(witness_score(&[0, 1], &pc, &cfg, WitnessVariant::Weak).is_err());

        let pc = line(&[0.0, 1.0, 3.0]);
        let cfg = WitnessConfig::from_cloud(&pc);
        assert_eq!(
            witness_score(&[0, 1], &pc, &cfg, WitnessVariant::Strong).unwrap(),
            1.0
        );

        let empty = WitnessConfig {
            witnesses: vec![],
            landmarks: cfg.landmarks.clone(),
        };
        assert!(witness_score(&[0], &pc, &empty, WitnessVariant::Strong).is_err());
    }

    #[test]
    fn single_witness_is_the_formula_at_that_point() {
        let pc = line(&[0.0, 1.0, 3.0]);
        let cfg = WitnessConfig {
            witnesses: vec![vec![2.0]],
            landmarks: pc.coordinates(),
        };
        // sup_y d(2, {0,1}) - min_z d(2, {0,1,3}) = 2 - 1
        assert_eq!(
            witness_score(&[0, 1], &pc, &cfg, WitnessVariant::Strong).unwrap(),
            1.0
        );
    }

    #[test]
    fn pullback_examples() {
        let constant = line(&[5.0, 5.0, 5.0]);
        let h = Subgraph::new([0, 1, 2], []);
        assert_eq!(pullback_score(&constant, &PointScore::Vr, &h).unwrap(), 0.0);
        let collapse = line(&[0.0, 0.0, 3.0]);
        assert_eq!(pullback_score(&collapse, &PointScore::Vr, &h).unwrap(), 1.5);
        assert!(pullback_score(&collapse, &PointScore::Vr, &Subgraph::new([4], [])).is_err());
    }

    #[test]
    fn rounding_merges_noise() {
        assert_eq!(round_score(0.1 + 0.2), round_score(0.3));
        assert_eq!(round_score(0.0), 0.0);
        assert_eq!(round_score(2f64.sqrt() / 2.0), 0.707106781187);
    }

    #[test]
    fn seeded_random_is_deterministic() {
        let s = SeededRandom { seed: 7 };
        let h = Subgraph::new([0, 1], [0]);
        let a = s.score(&h).unwrap();
        assert_eq!(a, s.score(&h).unwrap());
        assert!((0.0..1.0).contains(&a));
        assert_ne!(a, SeededRandom { seed: 8 }.score(&h).unwrap());
    }

    #[test]
    fn regularity_checks() {
        let g = MultiGraph::complete(3);
        let fam = SubgraphFamily::new(g.clone(), vec![Subgraph::full(&g)]).unwrap();
        let pc = line(&[0.0, 1.0, 3.0]);
        assert!(is_regular_scheme(&PointCloudScheme::vr(pc.clone()), &fam).regular);
        assert!(is_regular_scheme(&Constant(1.0), &fam).regular);

        // weak witness on a line: adding a vertex shrinks the exclusion set
        // weak({0}) = 0 - 1 at x = 0, weak({0,1}) = 1 - 5 at x = 0
        let pc = line(&[0.0, 1.0, 5.0]);
        let g = MultiGraph::complete(3);
        let members = vec![
            Subgraph::new([0], []),
            Subgraph::new([0, 1], [g.edge_id("0-1").unwrap()]),
        ];
        let fam = SubgraphFamily::new(g, members).unwrap();
        let r = is_regular_scheme(&PointCloudScheme::witness(pc, WitnessVariant::Weak), &fam);
        assert!(!r.regular);
        let (p, q) = r.counterexample.unwrap();
        assert!(p.is_contained_in(&q));
    }
}
