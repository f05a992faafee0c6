//! Lattice sampling of the parameter cube and what it certifies.
//!
//! A [`SampleGraph`] holds the lattice points of `(0,1)³` with a given label
//! and connects neighbours. Its component count at a fixed resolution is
//! evidence, not proof; the proof of disconnection comes from
//! [`separation_witness`], which shows that no point of the plane `s = 1/2`
//! can carry a nonzero sign at `(9, 12, 13)` while the two regions have
//! points on both sides of it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::classification::{classify, on_sheet_s, on_sheet_t, ClassifyError, Label};
use crate::configuration::{closed_form_symbolic, ParamPoint};
use crate::exact::{det3, int, rat, Poly3, Rational, Var};

/// Lattice point `(a, b, c)` standing for `(a/N, b/N, c/N)`.
pub type Node = [u32; 3];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopologyError {
    #[error("resolution must be at least 2, got {0}")]
    ResolutionTooSmall(u32),
    #[error("the slice s = 1/2 needs an even resolution, got {0}")]
    OddResolution(u32),
    #[error("target must be minus or plus, got {0}")]
    InvalidTarget(Label),
    #[error("node {0:?} is not in the graph")]
    NodeAbsent(Node),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub resolution: u32,
}

impl GridSpec {
    pub fn new(resolution: u32) -> Result<Self, TopologyError> {
        if resolution < 2 {
            return Err(TopologyError::ResolutionTooSmall(resolution));
        }
        Ok(GridSpec { resolution })
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> {
        let n = self.resolution;
        (1..n).flat_map(move |a| (1..n).flat_map(move |b| (1..n).map(move |c| [a, b, c])))
    }

    pub fn point(&self, node: Node) -> ParamPoint {
        let n = i64::from(self.resolution);
        let [a, b, c] = node.map(i64::from);
        ParamPoint::new(rat(a, n), rat(b, n), rat(c, n))
    }
}

/// Lattice neighbourhood used for graph edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Adjacency {
    /// Offsets in exactly one coordinate (6 neighbours).
    Face,
    /// Offsets in one or two coordinates (18 neighbours).
    #[default]
    FaceEdge,
    /// Any nonzero offset in {-1, 0, 1}³ (26 neighbours).
    Full,
}

impl Adjacency {
    fn offsets(self) -> Vec<[i64; 3]> {
        let max_changed = match self {
            Adjacency::Face => 1,
            Adjacency::FaceEdge => 2,
            Adjacency::Full => 3,
        };
        let mut out = Vec::new();
        for a in -1..=1 {
            for b in -1..=1 {
                for c in -1..=1 {
                    let changed = [a, b, c].iter().filter(|d| **d != 0).count();
                    if (1..=max_changed).contains(&changed) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }
}

/// Every lattice point of a grid with its label.
#[derive(Debug, Clone)]
pub struct LabelledGrid {
    pub spec: GridSpec,
    labels: BTreeMap<Node, Label>,
}

impl LabelledGrid {
    pub fn label(&self, node: Node) -> Option<Label> {
        self.labels.get(&node).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Node, Label)> + '_ {
        self.labels.iter().map(|(n, l)| (*n, *l))
    }

    pub fn count(&self, label: Label) -> usize {
        self.labels.values().filter(|l| **l == label).count()
    }

    pub fn graph(&self, target: Label, adjacency: Adjacency) -> SampleGraph {
        SampleGraph {
            resolution: self.spec.resolution,
            target,
            adjacency,
            nodes: self
                .labels
                .iter()
                .filter(|(_, l)| **l == target)
                .map(|(n, _)| *n)
                .collect(),
        }
    }
}

/// Classifies every lattice point with both routes, in parallel.
pub fn classify_grid(spec: GridSpec) -> Result<LabelledGrid, TopologyError> {
    let nodes: Vec<Node> = spec.nodes().collect();
    let labels = nodes
        .par_iter()
        .map(|n| classify(&spec.point(*n)).map(|l| (*n, l)))
        .collect::<Result<BTreeMap<_, _>, _>>()?;
    Ok(LabelledGrid { spec, labels })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleGraph {
    pub resolution: u32,
    pub target: Label,
    pub adjacency: Adjacency,
    nodes: BTreeSet<Node>,
}

impl SampleGraph {
    pub fn nodes(&self) -> &BTreeSet<Node> {
        &self.nodes
    }

    pub fn contains(&self, n: Node) -> bool {
        self.nodes.contains(&n)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn point(&self, n: Node) -> ParamPoint {
        GridSpec {
            resolution: self.resolution,
        }
        .point(n)
    }

    pub fn neighbours(&self, n: Node) -> impl Iterator<Item = Node> + '_ {
        self.adjacency.offsets().into_iter().filter_map(move |d| {
            let mut m = [0u32; 3];
            for axis in 0..3 {
                let v = i64::from(n[axis]) + d[axis];
                m[axis] = u32::try_from(v).ok()?;
            }
            self.nodes.contains(&m).then_some(m)
        })
    }

    /// Undirected edges, each listed once with the smaller end first.
    pub fn edges(&self) -> Vec<(Node, Node)> {
        let mut out = Vec::new();
        for &n in &self.nodes {
            for m in self.neighbours(n) {
                if n < m {
                    out.push((n, m));
                }
            }
        }
        out
    }

    /// Same graph with a different neighbourhood.
    pub fn with_adjacency(&self, adjacency: Adjacency) -> SampleGraph {
        SampleGraph {
            adjacency,
            ..self.clone()
        }
    }
}

pub fn sample_grid(spec: GridSpec, target: Label) -> Result<SampleGraph, TopologyError> {
    Ok(classify_grid(spec)?.graph(target, Adjacency::default()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Lexicographically smallest node.
    pub representative: Node,
    pub nodes: BTreeSet<Node>,
}

impl Component {
    pub fn size(&self) -> usize {
        self.nodes.len()
    }
}

/// Components in order of their representatives.
pub fn connected_components(g: &SampleGraph) -> Vec<Component> {
    let mut seen: BTreeSet<Node> = BTreeSet::new();
    let mut out = Vec::new();
    for &start in &g.nodes {
        if seen.contains(&start) {
            continue;
        }
        let mut nodes = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(n) = queue.pop_front() {
            nodes.insert(n);
            for m in g.neighbours(n) {
                if seen.insert(m) {
                    queue.push_back(m);
                }
            }
        }
        out.push(Component {
            representative: start,
            nodes,
        });
    }
    out
}

pub fn path_exists(g: &SampleGraph, a: Node, b: Node) -> Result<bool, TopologyError> {
    for n in [a, b] {
        if !g.contains(n) {
            return Err(TopologyError::NodeAbsent(n));
        }
    }
    let mut seen = BTreeSet::from([a]);
    let mut queue = VecDeque::from([a]);
    while let Some(n) = queue.pop_front() {
        if n == b {
            return Ok(true);
        }
        for m in g.neighbours(n) {
            if seen.insert(m) {
                queue.push_back(m);
            }
        }
    }
    Ok(false)
}

pub fn components_json(g: &SampleGraph) -> Value {
    let comps = connected_components(g);
    json!({
        "target": g.target.as_str(),
        "resolution": g.resolution,
        "node_count": g.len(),
        "count": comps.len(),
        "representatives": comps.iter().map(|c| g.point(c.representative).to_json()).collect::<Vec<_>>(),
        "sizes": comps.iter().map(Component::size).collect::<Vec<_>>(),
    })
}

/// Side of the plane `s = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Below,
    On,
    Above,
}

fn side(node: Node, resolution: u32) -> Side {
    match (2 * node[0]).cmp(&resolution) {
        std::cmp::Ordering::Less => Side::Below,
        std::cmp::Ordering::Equal => Side::On,
        std::cmp::Ordering::Greater => Side::Above,
    }
}

/// Evidence that the `target` region is disconnected by the plane `s = 1/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationCertificate {
    pub target: Label,
    /// `det(x9, x12, x13)` as a polynomial in `s, t, u`.
    pub determinant: Poly3,
    /// The same polynomial with `s = 1/2`.
    pub on_plane: Poly3,
    pub resolution: u32,
    pub slice_points: usize,
    /// Slice points labelled `target`, minus or plus (must be empty).
    pub slice_offenders: Vec<ParamPoint>,
    /// One component representative below and one above the plane.
    pub below: Option<ParamPoint>,
    pub above: Option<ParamPoint>,
    /// Every grid component lies strictly on one side.
    pub components_one_sided: bool,
}

impl SeparationCertificate {
    pub fn symbolic_zero(&self) -> bool {
        self.on_plane.is_zero()
    }

    pub fn certified(&self) -> bool {
        self.symbolic_zero()
            && self.slice_offenders.is_empty()
            && self.below.is_some()
            && self.above.is_some()
            && self.components_one_sided
    }

    pub fn to_json(&self) -> Value {
        json!({
            "target": self.target.as_str(),
            "determinant": self.determinant.to_string(),
            "on_plane": self.on_plane.to_string(),
            "symbolic_zero": self.symbolic_zero(),
            "resolution": self.resolution,
            "slice_points": self.slice_points,
            "slice_offenders": self.slice_offenders.iter().map(ParamPoint::to_json).collect::<Vec<_>>(),
            "below": self.below.as_ref().map(ParamPoint::to_json),
            "above": self.above.as_ref().map(ParamPoint::to_json),
            "components_one_sided": self.components_one_sided,
            "certified": self.certified(),
        })
    }
}

/// The determinant whose sign separates the three matroids.
pub fn flip_determinant() -> Poly3 {
    let x = closed_form_symbolic();
    det3(x.column(9), x.column(12), x.column(13))
}

pub fn separation_witness(target: Label, resolution: u32) -> Result<SeparationCertificate, TopologyError> {
    if !matches!(target, Label::Minus | Label::Plus) {
        return Err(TopologyError::InvalidTarget(target));
    }
    let spec = GridSpec::new(resolution)?;
    if !resolution.is_multiple_of(2) {
        return Err(TopologyError::OddResolution(resolution));
    }
    let determinant = flip_determinant();
    let on_plane = determinant.substitute(Var::S, &rat(1, 2));

    let grid = classify_grid(spec)?;
    let slice: Vec<(Node, Label)> = grid
        .iter()
        .filter(|(n, _)| side(*n, resolution) == Side::On)
        .collect();
    let slice_offenders = slice
        .iter()
        .filter(|(_, l)| matches!(l, Label::Minus | Label::Plus))
        .map(|(n, _)| spec.point(*n))
        .collect();

    let g = grid.graph(target, Adjacency::default());
    let comps = connected_components(&g);
    let components_one_sided = comps.iter().all(|c| {
        let s0 = side(c.representative, resolution);
        s0 != Side::On && c.nodes.iter().all(|n| side(*n, resolution) == s0)
    });
    let find = |want: Side| {
        comps
            .iter()
            .find(|c| side(c.representative, resolution) == want)
            .map(|c| spec.point(c.representative))
    };
    Ok(SeparationCertificate {
        target,
        determinant,
        on_plane,
        resolution,
        slice_points: slice.len(),
        slice_offenders,
        below: find(Side::Below),
        above: find(Side::Above),
        components_one_sided,
    })
}

/// Which piece of the `χ⁰` region a path segment runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SheetTag {
    /// `1 - 2s = 0`
    S,
    /// `1 - 2t + tu - su = 0`
    T,
    /// Both, i.e. the segment `s = t = 1/2`.
    Both,
}

impl SheetTag {
    fn as_str(self) -> &'static str {
        match self {
            SheetTag::S => "sheet_s",
            SheetTag::T => "sheet_t",
            SheetTag::Both => "both",
        }
    }

    fn equations(self) -> Vec<Poly3> {
        let s_eq = Poly3::one() - Poly3::from(2) * Poly3::s();
        let t_eq = crate::exact::Poly3::one() - Poly3::from(2) * Poly3::t() + Poly3::t() * Poly3::u()
            - Poly3::s() * Poly3::u();
        match self {
            SheetTag::S => vec![s_eq],
            SheetTag::T => vec![t_eq],
            SheetTag::Both => vec![s_eq, t_eq],
        }
    }

    fn contains(self, p: &ParamPoint) -> bool {
        match self {
            SheetTag::S => on_sheet_s(p),
            SheetTag::T => on_sheet_t(p),
            SheetTag::Both => on_sheet_s(p) && on_sheet_t(p),
        }
    }
}

fn lerp(a: &ParamPoint, b: &ParamPoint, lambda: &Rational) -> ParamPoint {
    let mix = |x: &Rational, y: &Rational| x + (y - x) * lambda;
    ParamPoint::new(mix(&a.s, &b.s), mix(&a.t, &b.t), mix(&a.u, &b.u))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathSegment {
    pub from: ParamPoint,
    pub to: ParamPoint,
    pub sheet: SheetTag,
    /// The sheet equations vanish identically along the segment. Each
    /// equation has degree at most 2, so its restriction to the segment is a
    /// univariate polynomial of degree at most 2; vanishing at three distinct
    /// points proves it is zero.
    pub equation_vanishes: bool,
    /// Subdivision vertices and midpoints, all checked for label and sheet
    /// membership. This part is a sampled witness, not a proof.
    pub samples: Vec<(ParamPoint, Label, bool)>,
}

impl PathSegment {
    fn build(from: ParamPoint, to: ParamPoint, sheet: SheetTag, steps: u32) -> Result<Self, ClassifyError> {
        let equation_vanishes = sheet.equations().iter().all(|eq| {
            [int(0), rat(1, 2), int(1)].iter().all(|l| {
                let p = lerp(&from, &to, l);
                eq.eval(&p.s, &p.t, &p.u).is_zero()
            })
        });
        let steps = i64::from(steps.max(1));
        let mut samples = Vec::new();
        for k in 0..=2 * steps {
            let p = lerp(&from, &to, &rat(k, 2 * steps));
            let label = classify(&p)?;
            let inside = sheet.contains(&p);
            samples.push((p, label, inside));
        }
        Ok(PathSegment {
            from,
            to,
            sheet,
            equation_vanishes,
            samples,
        })
    }

    pub fn passes(&self) -> bool {
        self.equation_vanishes
            && self
                .samples
                .iter()
                .all(|(_, label, inside)| *label == Label::Zero && *inside)
    }

    fn to_json(&self) -> Value {
        json!({
            "from": self.from.to_json(),
            "to": self.to.to_json(),
            "sheet": self.sheet.as_str(),
            "equation_vanishes": self.equation_vanishes,
            "samples": self.samples.len(),
            "passes": self.passes(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SheetSample {
    pub point: ParamPoint,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSheets {
    pub m: u32,
    pub sheet_s: Vec<SheetSample>,
    pub sheet_t: Vec<SheetSample>,
    /// `(1/2, 1/2, c/m)` for `0 < c/m < 1/2`.
    pub intersection: Vec<SheetSample>,
    pub path: Vec<PathSegment>,
}

impl ZeroSheets {
    pub fn all_zero(&self) -> bool {
        self.sheet_s
            .iter()
            .chain(&self.sheet_t)
            .chain(&self.intersection)
            .all(|s| s.label == Label::Zero)
    }

    pub fn intersection_on_both(&self) -> bool {
        self.intersection
            .iter()
            .all(|s| on_sheet_s(&s.point) && on_sheet_t(&s.point))
    }

    pub fn path_vertices(&self) -> Vec<ParamPoint> {
        let mut out: Vec<ParamPoint> = self.path.iter().map(|s| s.from.clone()).collect();
        if let Some(last) = self.path.last() {
            out.push(last.to.clone());
        }
        out
    }

    pub fn path_passes(&self) -> bool {
        !self.path.is_empty()
            && self.path.iter().all(PathSegment::passes)
            && self.path.windows(2).all(|w| w[0].to == w[1].from)
    }

    pub fn passes(&self) -> bool {
        self.all_zero() && self.intersection_on_both() && self.path_passes()
    }

    pub fn to_json(&self) -> Value {
        let pts = |v: &[SheetSample]| v.iter().map(|s| s.point.to_json()).collect::<Vec<_>>();
        json!({
            "m": self.m,
            "sheet_s": pts(&self.sheet_s),
            "sheet_t": pts(&self.sheet_t),
            "intersection": pts(&self.intersection),
            "all_zero": self.all_zero(),
            "intersection_on_both": self.intersection_on_both(),
            "path": {
                "vertices": self.path_vertices().iter().map(ParamPoint::to_json).collect::<Vec<_>>(),
                "segments": self.path.iter().map(PathSegment::to_json).collect::<Vec<_>>(),
                "passes": self.path_passes(),
            },
            "passes": self.passes(),
        })
    }
}

/// Solves the second sheet equation for `t`: `t = (1 - su) / (2 - u)`.
pub fn sheet_t_height(s: &Rational, u: &Rational) -> Rational {
    (int(1) - s * u) / (int(2) - u)
}

/// Parametric samples of both `χ⁰` sheets at step `1/m`, the segment where
/// they meet, and a piecewise linear path from `(1/2, 3/8, 1/4)` on the first
/// sheet to `(3/4, 11/24, 2/7)` on the second through `(1/2, 1/2, 1/4)`.
pub fn zero_sheet_samples(m: u32) -> Result<ZeroSheets, TopologyError> {
    if m < 2 {
        return Err(TopologyError::ResolutionTooSmall(m));
    }
    let mi = i64::from(m);
    let frac = |k: u32| rat(i64::from(k), mi);

    let mut s_pts = Vec::new();
    let mut t_pts = Vec::new();
    let mut both = Vec::new();
    for a in 1..m {
        for c in 1..m {
            let p = ParamPoint::new(rat(1, 2), frac(a), frac(c));
            if on_sheet_s(&p) {
                s_pts.push(p);
            }
            let (s, u) = (frac(a), frac(c));
            let p = ParamPoint::new(s.clone(), sheet_t_height(&s, &u), u);
            if on_sheet_t(&p) {
                t_pts.push(p);
            }
        }
    }
    for c in 1..m {
        if 2 * c < m {
            both.push(ParamPoint::new(rat(1, 2), rat(1, 2), frac(c)));
        }
    }
    let label_all = |pts: Vec<ParamPoint>| -> Result<Vec<SheetSample>, ClassifyError> {
        pts.into_par_iter()
            .map(|point| classify(&point).map(|label| SheetSample { point, label }))
            .collect()
    };

    let start = ParamPoint::from_fracs((1, 2), (3, 8), (1, 4));
    let corner = ParamPoint::from_fracs((1, 2), (1, 2), (1, 4));
    let turn = ParamPoint::from_fracs((1, 2), (1, 2), (2, 7));
    let end = ParamPoint::from_fracs((3, 4), (11, 24), (2, 7));
    let path = vec![
        PathSegment::build(start, corner.clone(), SheetTag::S, m)?,
        PathSegment::build(corner, turn.clone(), SheetTag::Both, m)?,
        PathSegment::build(turn, end, SheetTag::T, m)?,
    ];

    Ok(ZeroSheets {
        m,
        sheet_s: label_all(s_pts)?,
        sheet_t: label_all(t_pts)?,
        intersection: label_all(both)?,
        path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(nodes: &[Node], adjacency: Adjacency) -> SampleGraph {
        SampleGraph {
            resolution: 8,
            target: Label::Minus,
            adjacency,
            nodes: nodes.iter().copied().collect(),
        }
    }

    #[test]
    fn neighbourhood_sizes() {
        assert_eq!(Adjacency::Face.offsets().len(), 6);
        assert_eq!(Adjacency::FaceEdge.offsets().len(), 18);
        assert_eq!(Adjacency::Full.offsets().len(), 26);
    }

    #[test]
    fn components_of_small_graphs() {
        assert!(connected_components(&graph(&[], Adjacency::Face)).is_empty());
        let g = graph(&[[1, 1, 1], [1, 1, 2], [3, 3, 3], [2, 2, 2]], Adjacency::Face);
        let comps = connected_components(&g);
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0].representative, [1, 1, 1]);
        assert_eq!(comps[0].size(), 2);
        // diagonal steps join everything under the full neighbourhood
        assert_eq!(connected_components(&g.with_adjacency(Adjacency::Full)).len(), 1);
        // [1,1,2]-[2,2,2] differs in two coordinates
        assert_eq!(connected_components(&g.with_adjacency(Adjacency::FaceEdge)).len(), 2);
    }

    #[test]
    fn edges_are_listed_once() {
        let g = graph(&[[1, 1, 1], [1, 1, 2], [1, 2, 2]], Adjacency::Face);
        assert_eq!(g.edges(), vec![([1, 1, 1], [1, 1, 2]), ([1, 1, 2], [1, 2, 2])]);
    }

    #[test]
    fn reachability() {
        let g = graph(&[[1, 1, 1], [1, 1, 2], [5, 5, 5]], Adjacency::Face);
        assert_eq!(path_exists(&g, [1, 1, 1], [1, 1, 2]), Ok(true));
        assert_eq!(path_exists(&g, [1, 1, 1], [1, 1, 1]), Ok(true));
        assert_eq!(path_exists(&g, [1, 1, 1], [5, 5, 5]), Ok(false));
        assert_eq!(
            path_exists(&g, [1, 1, 1], [2, 2, 2]),
            Err(TopologyError::NodeAbsent([2, 2, 2]))
        );
    }

    #[test]
    fn coarsest_grid_is_empty() {
        let g = sample_grid(GridSpec::new(2).unwrap(), Label::Minus).unwrap();
        assert!(g.is_empty());
        assert_eq!(GridSpec::new(1), Err(TopologyError::ResolutionTooSmall(1)));
    }

    #[test]
    fn flip_determinant_vanishes_on_plane() {
        assert!(flip_determinant().substitute(Var::S, &rat(1, 2)).is_zero());
        assert!(!flip_determinant().substitute(Var::S, &rat(1, 3)).is_zero());
    }

    #[test]
    fn separation_rejects_bad_input() {
        assert_eq!(
            separation_witness(Label::Zero, 8).unwrap_err(),
            TopologyError::InvalidTarget(Label::Zero)
        );
        assert_eq!(
            separation_witness(Label::Minus, 7).unwrap_err(),
            TopologyError::OddResolution(7)
        );
    }

    #[test]
    fn sheet_height_solves_equation() {
        let (s, u) = (rat(3, 4), rat(2, 7));
        assert_eq!(sheet_t_height(&s, &u), rat(11, 24));
    }

    #[test]
    fn small_zero_sheet_run() {
        let z = zero_sheet_samples(4).unwrap();
        assert!(z.passes());
        assert_eq!(z.intersection.len(), 1);
        assert_eq!(z.path_vertices().len(), 4);
    }
}
