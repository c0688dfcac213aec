//! Translation-invariant adjacency relations on `Z^n` and connectivity.
//!
//! Every relation is given by a symmetric set of nonzero offsets sandwiched
//! between the axis relation `π` (the `2n` unit vectors) and the full relation
//! `ω` (all `3^n - 1` vectors with entries in `{-1, 0, 1}`).

mod paths;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{box_points, LatticePoint};

pub use paths::{elementary_equivalent, is_path, n_simply_connected_bounded, Contractibility};

/// Finite point sets are kept ordered so that every scan is deterministic.
pub type PointSet = BTreeSet<LatticePoint>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdjacencySpec {
    pub n: usize,
    pub offsets: BTreeSet<Vec<i32>>,
}

impl AdjacencySpec {
    /// The proto-adjacency `π`.
    pub fn axis(n: usize) -> Self {
        let offsets = (0..n)
            .flat_map(|a| {
                [1, -1].into_iter().map(move |s| {
                    let mut v = vec![0; n];
                    v[a] = s;
                    v
                })
            })
            .collect();
        AdjacencySpec { n, offsets }
    }

    /// The full adjacency `ω`.
    pub fn full(n: usize) -> Self {
        let offsets =
            box_points(&vec![(-1, 1); n]).into_iter().map(|p| p.0).filter(|v| v.iter().any(|&c| c != 0)).collect();
        AdjacencySpec { n, offsets }
    }

    /// Offsets `v` with `1 <= |v|_1 <= max_l1` and entries in `{-1,0,1}`;
    /// `max_l1 = 2` gives the 18-adjacency of `Z^3`.
    pub fn by_l1(n: usize, max_l1: i32) -> Self {
        let mut spec = Self::full(n);
        spec.offsets.retain(|v| v.iter().map(|c| c.abs()).sum::<i32>() <= max_l1);
        spec
    }

    /// Validates symmetry and `π ⊆ offsets ⊆ ω`. Symmetry is checked, never
    /// completed.
    pub fn custom(n: usize, offsets: impl IntoIterator<Item = Vec<i32>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidAdjacency(format!("dimension {n} < 2")));
        }
        let offsets: BTreeSet<Vec<i32>> = offsets.into_iter().collect();
        for v in &offsets {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
            if v.iter().all(|&c| c == 0) {
                return Err(Error::InvalidAdjacency("zero offset".into()));
            }
            if v.iter().any(|c| c.abs() > 1) {
                return Err(Error::InvalidAdjacency(format!("offset {v:?} is not in ω")));
            }
            let neg: Vec<i32> = v.iter().map(|c| -c).collect();
            if !offsets.contains(&neg) {
                return Err(Error::InvalidAdjacency(format!("offset {v:?} has no inverse {neg:?}")));
            }
        }
        for v in Self::axis(n).offsets {
            if !offsets.contains(&v) {
                return Err(Error::InvalidAdjacency(format!("axis offset {v:?} missing")));
            }
        }
        Ok(AdjacencySpec { n, offsets })
    }

    /// Parses `axis`, `full`, or `custom:` followed by one offset per line.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let trimmed = text.trim();
        match trimmed {
            "axis" => return Ok(Self::axis(n)),
            "full" => return Ok(Self::full(n)),
            _ => {}
        }
        let Some(body) = trimmed.strip_prefix("custom:") else {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected `axis`, `full` or `custom:`, found {:?}", first_line(trimmed)),
            });
        };
        let mut offsets = Vec::new();
        for (i, line) in body.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let v: Vec<i32> = line
                .split_whitespace()
                .map(|t| t.parse::<i32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse { line: i + 1, message: format!("bad integer: {e}") })?;
            if v.len() != n {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("offset has {} entries, expected {n}", v.len()),
                });
            }
            offsets.push(v);
        }
        Self::custom(n, offsets)
    }

    pub fn is_axis(&self) -> bool {
        *self == Self::axis(self.n)
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.n)
    }

    /// `axis`, `full`, or the number of neighbors.
    pub fn name(&self) -> String {
        if self.is_axis() {
            "axis".into()
        } else if self.is_full() {
            "full".into()
        } else {
            format!("custom{}", self.offsets.len())
        }
    }

    /// Serializes back into the text format accepted by [`AdjacencySpec::parse`].
    pub fn to_text(&self) -> String {
        if self.is_axis() {
            return "axis".into();
        }
        if self.is_full() {
            return "full".into();
        }
        let mut s = String::from("custom:\n");
        for v in &self.offsets {
            let line: Vec<String> = v.iter().map(|c| c.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.offsets.len()
    }

    pub fn adjacent(&self, p: &LatticePoint, q: &LatticePoint) -> bool {
        self.offsets.contains(&q.diff(p))
    }

    pub fn neighbors(&self, p: &LatticePoint) -> Vec<LatticePoint> {
        self.offsets.iter().map(|v| p.offset(v)).collect()
    }
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("")
}

impl fmt::Display for AdjacencySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.degree())
    }
}

/// A foreground relation `alpha` for `M` and a background relation `beta`
/// for its complement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdjacencyPair {
    pub alpha: AdjacencySpec,
    pub beta: AdjacencySpec,
}

impl AdjacencyPair {
    pub fn new(alpha: AdjacencySpec, beta: AdjacencySpec) -> Result<Self> {
        if alpha.n != beta.n {
            return Err(Error::DimensionMismatch { expected: alpha.n, found: beta.n });
        }
        Ok(AdjacencyPair { alpha, beta })
    }

    pub fn n(&self) -> usize {
        self.alpha.n
    }

    /// `(|α(p)|, |β(p)|)`, e.g. `(4,8)`.
    pub fn label(&self) -> String {
        format!("({},{})", self.alpha.degree(), self.beta.degree())
    }
}

/// `ω(p)`, which also contains `p` itself.
pub fn omega_closed(p: &LatticePoint) -> Vec<LatticePoint> {
    box_points(&p.0.iter().map(|&c| (c - 1, c + 1)).collect::<Vec<_>>())
}

/// An axis-aligned box of lattice points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub lo: LatticePoint,
    pub hi: LatticePoint,
}

impl Region {
    pub fn new(lo: LatticePoint, hi: LatticePoint) -> Result<Self> {
        if lo.dim() != hi.dim() {
            return Err(Error::DimensionMismatch { expected: lo.dim(), found: hi.dim() });
        }
        if lo.0.iter().zip(&hi.0).any(|(a, b)| a > b) {
            return Err(Error::Precondition(format!("region bounds {lo} > {hi}")));
        }
        Ok(Region { lo, hi })
    }

    /// Bounding box of `points` dilated by `margin`; the box around the
    /// origin when `points` is empty.
    pub fn around(points: &PointSet, n: usize, margin: i32) -> Self {
        let (mut lo, mut hi) = (vec![0; n], vec![0; n]);
        if let Some(first) = points.iter().next() {
            lo = first.0.clone();
            hi = first.0.clone();
            for p in points {
                for i in 0..n {
                    lo[i] = lo[i].min(p.0[i]);
                    hi[i] = hi[i].max(p.0[i]);
                }
            }
        }
        Region {
            lo: LatticePoint(lo.iter().map(|c| c - margin).collect()),
            hi: LatticePoint(hi.iter().map(|c| c + margin).collect()),
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn shrink(&self, by: i32) -> Option<Region> {
        let lo: Vec<i32> = self.lo.0.iter().map(|c| c + by).collect();
        let hi: Vec<i32> = self.hi.0.iter().map(|c| c - by).collect();
        lo.iter().zip(&hi).all(|(a, b)| a <= b).then_some(Region { lo: LatticePoint(lo), hi: LatticePoint(hi) })
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        p.0.iter().enumerate().all(|(i, &c)| self.lo.0[i] <= c && c <= self.hi.0[i])
    }

    pub fn on_boundary(&self, p: &LatticePoint) -> bool {
        self.contains(p) && p.0.iter().enumerate().any(|(i, &c)| c == self.lo.0[i] || c == self.hi.0[i])
    }

    pub fn points(&self) -> Vec<LatticePoint> {
        box_points(&self.ranges())
    }

    pub fn ranges(&self) -> Vec<(i32, i32)> {
        self.lo.0.iter().zip(&self.hi.0).map(|(&a, &b)| (a, b)).collect()
    }

    pub fn point_count(&self) -> usize {
        self.ranges().iter().map(|(a, b)| (b - a + 1) as usize).product()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub id: usize,
    /// Sorted; the first member is the lexicographically smallest.
    pub members: Vec<LatticePoint>,
    /// Touches the boundary of the analysis region, i.e. it is the unbounded
    /// component of the complement.
    pub infinite: bool,
}

/// A partition of a finite point set into connected components.
///
/// Ids follow the order of each component's smallest member.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComponentLabeling {
    labels: BTreeMap<LatticePoint, usize>,
    components: Vec<Component>,
}

impl ComponentLabeling {
    fn from_groups(groups: Vec<(Vec<LatticePoint>, bool)>) -> Self {
        let mut groups: Vec<(Vec<LatticePoint>, bool)> = groups
            .into_iter()
            .map(|(mut m, inf)| {
                m.sort();
                (m, inf)
            })
            .collect();
        groups.sort_by(|a, b| a.0[0].cmp(&b.0[0]));
        let mut labels = BTreeMap::new();
        let components = groups
            .into_iter()
            .enumerate()
            .map(|(id, (members, infinite))| {
                for p in &members {
                    labels.insert(p.clone(), id);
                }
                Component { id, members, infinite }
            })
            .collect();
        ComponentLabeling { labels, components }
    }

    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn label(&self, p: &LatticePoint) -> Option<usize> {
        self.labels.get(p).copied()
    }

    pub fn same(&self, p: &LatticePoint, q: &LatticePoint) -> bool {
        matches!((self.label(p), self.label(q)), (Some(a), Some(b)) if a == b)
    }

    pub fn infinite_id(&self) -> Option<usize> {
        self.components.iter().find(|c| c.infinite).map(|c| c.id)
    }

    pub fn finite_components(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| !c.infinite)
    }

    pub fn labels(&self) -> &BTreeMap<LatticePoint, usize> {
        &self.labels
    }
}

/// Connected components of `s` under `spec`, by breadth-first search.
pub fn components(spec: &AdjacencySpec, s: &PointSet) -> ComponentLabeling {
    components_where(spec, s.iter().cloned(), |p| s.contains(p), |_| false)
}

fn components_where(
    spec: &AdjacencySpec,
    seeds: impl IntoIterator<Item = LatticePoint>,
    member: impl Fn(&LatticePoint) -> bool,
    boundary: impl Fn(&LatticePoint) -> bool,
) -> ComponentLabeling {
    let mut seen: BTreeSet<LatticePoint> = BTreeSet::new();
    let mut groups = Vec::new();
    for seed in seeds {
        if seen.contains(&seed) {
            continue;
        }
        let mut members = Vec::new();
        let mut touches = false;
        let mut queue = VecDeque::from([seed.clone()]);
        seen.insert(seed);
        while let Some(p) = queue.pop_front() {
            touches |= boundary(&p);
            for q in spec.neighbors(&p) {
                if member(&q) && !seen.contains(&q) {
                    seen.insert(q.clone());
                    queue.push_back(q);
                }
            }
            members.push(p);
        }
        groups.push((members, touches));
    }
    ComponentLabeling::from_groups(groups)
}

/// Components of `r \ m` under `spec`. Every component meeting the boundary of
/// `r` belongs to the unbounded component of `Z^n \ m`; those are merged
/// into one flagged component.
pub fn complement_components(spec: &AdjacencySpec, m: &PointSet, r: &Region) -> Result<ComponentLabeling> {
    if r.dim() != spec.n {
        return Err(Error::DimensionMismatch { expected: spec.n, found: r.dim() });
    }
    let inner = r.shrink(1);
    if let Some(p) = m.iter().find(|p| !inner.as_ref().is_some_and(|i| i.contains(p))) {
        return Err(Error::RegionTooSmall(format!("{p} is within one step of the region boundary")));
    }
    let raw = components_where(
        spec,
        r.points().into_iter().filter(|p| !m.contains(p)),
        |q| r.contains(q) && !m.contains(q),
        |q| r.on_boundary(q),
    );
    let mut outer = Vec::new();
    let mut groups = Vec::new();
    for c in raw.components {
        if c.infinite {
            outer.extend(c.members);
        } else {
            groups.push((c.members, false));
        }
    }
    if !outer.is_empty() {
        groups.push((outer, true));
    }
    Ok(ComponentLabeling::from_groups(groups))
}

/// Every point of `s` reachable from `start` within `s`.
pub fn reachable(spec: &AdjacencySpec, s: &PointSet, start: &LatticePoint) -> PointSet {
    let mut seen = PointSet::new();
    if !s.contains(start) {
        return seen;
    }
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(start.clone());
    while let Some(p) = queue.pop_front() {
        for q in spec.neighbors(&p) {
            if s.contains(&q) && seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

pub fn is_connected(spec: &AdjacencySpec, s: &PointSet) -> bool {
    match s.iter().next() {
        None => true,
        Some(first) => reachable(spec, s, first).len() == s.len(),
    }
}
