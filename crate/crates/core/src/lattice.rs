//! Exact combinatorics of `Z^n`: points, generator translations, axis-aligned
//! unit cubes and their barycenters.
//!
//! Barycenters of unit cubes have half-integer coordinates, so they are kept
//! as [`HalfPoint`]s whose coordinates are doubled. Nothing in this crate
//! ever touches floating point.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i32>);

impl LatticePoint {
    pub fn new(coords: Vec<i32>) -> Self {
        LatticePoint(coords)
    }

    pub fn origin(n: usize) -> Self {
        LatticePoint(vec![0; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    /// `self + offset`.
    pub fn offset(&self, offset: &[i32]) -> LatticePoint {
        debug_assert_eq!(self.dim(), offset.len());
        LatticePoint(self.0.iter().zip(offset).map(|(a, b)| a + b).collect())
    }

    /// `self - other` as an offset vector.
    pub fn diff(&self, other: &LatticePoint) -> Vec<i32> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    /// Step of `delta` along one axis.
    pub fn step(&self, axis: usize, delta: i32) -> LatticePoint {
        let mut c = self.0.clone();
        c[axis] += delta;
        LatticePoint(c)
    }

    pub fn to_half(&self) -> HalfPoint {
        HalfPoint(self.0.iter().map(|c| 2 * c).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i32>> for LatticePoint {
    fn from(v: Vec<i32>) -> Self {
        LatticePoint(v)
    }
}

/// A translation of `Z^n` by a fixed offset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Translation {
    pub offset: Vec<i32>,
}

impl Translation {
    pub fn new(offset: Vec<i32>) -> Self {
        Translation { offset }
    }

    /// The generator `±e_axis`.
    pub fn generator(n: usize, axis: usize, positive: bool) -> Self {
        let mut offset = vec![0; n];
        offset[axis] = if positive { 1 } else { -1 };
        Translation { offset }
    }

    /// All `2n` generators, ordered `+e_0, -e_0, +e_1, ...`.
    pub fn generators(n: usize) -> Vec<Translation> {
        (0..n).flat_map(|axis| [Self::generator(n, axis, true), Self::generator(n, axis, false)]).collect()
    }

    /// Exactly one nonzero entry, equal to ±1.
    pub fn is_generator(&self) -> bool {
        let mut nonzero = self.offset.iter().filter(|&&c| c != 0);
        matches!((nonzero.next(), nonzero.next()), (Some(c), None) if c.abs() == 1)
    }

    /// The axis of a generator.
    pub fn axis(&self) -> Option<usize> {
        if self.is_generator() {
            self.offset.iter().position(|&c| c != 0)
        } else {
            None
        }
    }

    pub fn apply(&self, p: &LatticePoint) -> LatticePoint {
        p.offset(&self.offset)
    }

    pub fn inverse(&self) -> Translation {
        Translation { offset: self.offset.iter().map(|c| -c).collect() }
    }

    pub fn then(&self, other: &Translation) -> Translation {
        Translation { offset: self.offset.iter().zip(&other.offset).map(|(a, b)| a + b).collect() }
    }

    pub fn apply_cube(&self, c: &Cube) -> Cube {
        Cube { base: self.apply(&c.base), axes: c.axes.clone() }
    }
}

impl fmt::Display for Translation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(axis) = self.axis() {
            let sign = if self.offset[axis] > 0 { '+' } else { '-' };
            write!(f, "{sign}e{axis}")
        } else {
            write!(f, "{:?}", self.offset)
        }
    }
}

/// A point with half-integer coordinates, stored doubled.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfPoint(pub Vec<i32>);

impl HalfPoint {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords2(&self) -> &[i32] {
        &self.0
    }

    pub fn is_lattice(&self) -> bool {
        self.0.iter().all(|c| c % 2 == 0)
    }

    pub fn to_lattice(&self) -> Option<LatticePoint> {
        self.is_lattice().then(|| LatticePoint(self.0.iter().map(|c| c / 2).collect()))
    }

    pub fn translate(&self, offset: &[i32]) -> HalfPoint {
        HalfPoint(self.0.iter().zip(offset).map(|(a, b)| a + 2 * b).collect())
    }
}

impl fmt::Display for HalfPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if c % 2 == 0 {
                write!(f, "{}", c / 2)?;
            } else {
                write!(f, "{}/2", c)?;
            }
        }
        write!(f, ")")
    }
}

/// A unit `k`-cube: `base + {0,1}^axes`.
///
/// Canonical by construction: `base` is the minimal vertex and `axes` is
/// strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cube {
    pub base: LatticePoint,
    pub axes: Vec<usize>,
}

impl Cube {
    pub fn new(base: LatticePoint, mut axes: Vec<usize>) -> Result<Cube> {
        axes.sort_unstable();
        if axes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCube(format!("repeated axis in {axes:?}")));
        }
        if let Some(&a) = axes.last() {
            if a >= base.dim() {
                return Err(Error::InvalidCube(format!("axis {a} out of range for dimension {}", base.dim())));
            }
        }
        Ok(Cube { base, axes })
    }

    /// The 0-cube `{p}`.
    pub fn point(p: LatticePoint) -> Cube {
        Cube { base: p, axes: Vec::new() }
    }

    /// The `n`-cube with minimal corner `base`.
    pub fn full(base: LatticePoint) -> Cube {
        let n = base.dim();
        Cube { base, axes: (0..n).collect() }
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn has_axis(&self, axis: usize) -> bool {
        self.axes.binary_search(&axis).is_ok()
    }

    /// Maximal vertex.
    pub fn top(&self) -> LatticePoint {
        let mut c = self.base.0.clone();
        for &a in &self.axes {
            c[a] += 1;
        }
        LatticePoint(c)
    }

    /// All `2^k` vertices in lexicographic order.
    pub fn vertices(&self) -> Vec<LatticePoint> {
        let k = self.dim();
        let mut out: Vec<LatticePoint> = (0u32..(1 << k))
            .map(|mask| {
                let mut c = self.base.0.clone();
                for (bit, &a) in self.axes.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        c[a] += 1;
                    }
                }
                LatticePoint(c)
            })
            .collect();
        out.sort();
        out
    }

    pub fn contains_point(&self, p: &LatticePoint) -> bool {
        p.0.iter().enumerate().all(|(i, &c)| {
            let b = self.base.0[i];
            if self.has_axis(i) {
                c == b || c == b + 1
            } else {
                c == b
            }
        })
    }

    /// `other ⊆ self` as vertex sets.
    pub fn contains_cube(&self, other: &Cube) -> bool {
        other.axes.iter().all(|&a| self.has_axis(a) && other.base.0[a] == self.base.0[a])
            && self.contains_point(&other.base)
    }

    /// All `j`-dimensional subcubes, canonical and sorted. There are
    /// `C(k,j) * 2^(k-j)` of them.
    pub fn subcubes(&self, j: usize) -> Vec<Cube> {
        if j > self.dim() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for free in combinations(&self.axes, j) {
            let fixed: Vec<usize> = self.axes.iter().copied().filter(|a| !free.contains(a)).collect();
            for mask in 0u32..(1 << fixed.len()) {
                let mut base = self.base.0.clone();
                for (bit, &a) in fixed.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        base[a] += 1;
                    }
                }
                out.push(Cube { base: LatticePoint(base), axes: free.clone() });
            }
        }
        out.sort();
        out
    }

    /// All subcubes of every dimension, ordered by dimension then lexicographically.
    pub fn all_subcubes(&self) -> Vec<Cube> {
        (0..=self.dim()).flat_map(|j| self.subcubes(j)).collect()
    }

    /// All `(k+1)`-cubes of `Z^n` containing this cube; `2(n-k)` of them.
    pub fn supercubes(&self) -> Vec<Cube> {
        let n = self.ambient_dim();
        let mut out = Vec::new();
        for axis in (0..n).filter(|a| !self.has_axis(*a)) {
            let mut axes = self.axes.clone();
            axes.push(axis);
            axes.sort_unstable();
            for delta in [-1, 0] {
                out.push(Cube { base: self.base.step(axis, delta), axes: axes.clone() });
            }
        }
        out.sort();
        out
    }

    /// Doubled barycenter: `2·base + indicator(axes)`.
    pub fn barycenter(&self) -> HalfPoint {
        let mut c: Vec<i32> = self.base.0.iter().map(|x| 2 * x).collect();
        for &a in &self.axes {
            c[a] += 1;
        }
        HalfPoint(c)
    }

    /// The cube whose barycenter is `h`.
    pub fn from_barycenter(h: &HalfPoint) -> Cube {
        let axes = (0..h.dim()).filter(|&i| h.0[i].rem_euclid(2) == 1).collect();
        let base = h.0.iter().map(|&c| c.div_euclid(2)).collect();
        Cube { base: LatticePoint(base), axes }
    }

    /// `h` lies in the closed convex hull of this cube.
    pub fn hull_contains(&self, h: &HalfPoint) -> bool {
        h.0.iter().enumerate().all(|(i, &c)| {
            let lo = 2 * self.base.0[i];
            let hi = if self.has_axis(i) { lo + 2 } else { lo };
            lo <= c && c <= hi
        })
    }

    /// For a vertex `v` of this cube, the vertex opposite to it.
    pub fn antipode(&self, v: &LatticePoint) -> LatticePoint {
        let mut c = v.0.clone();
        for &a in &self.axes {
            c[a] = if v.0[a] == self.base.0[a] { self.base.0[a] + 1 } else { self.base.0[a] };
        }
        LatticePoint(c)
    }

    /// Unordered antipodal vertex pairs `(p, q)` with `p < q`.
    pub fn antipodal_pairs(&self) -> Vec<(LatticePoint, LatticePoint)> {
        self.vertices()
            .into_iter()
            .filter_map(|v| {
                let w = self.antipode(&v);
                (v < w).then_some((v, w))
            })
            .collect()
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{:?}", self.base, self.axes)
    }
}

/// All ordered pairs `(τ1, τ2)` of generators with
/// `c = C* ∪ τ1(C*) ∪ τ2(C*) ∪ τ1τ2(C*)`.
///
/// The two translations run along the axes of `c` not free in `cstar`, each
/// pointing from `cstar`'s side to the opposite side, so there is exactly one
/// unordered decomposition and it is returned in both orders.
pub fn completing_translations(cstar: &Cube, c: &Cube) -> Result<Vec<(Translation, Translation)>> {
    if c.dim() < 2 || cstar.dim() + 2 != c.dim() {
        return Err(Error::InvalidCube(format!("{cstar} is not of codimension 2 in {c}")));
    }
    if !c.contains_cube(cstar) {
        return Err(Error::InvalidCube(format!("{cstar} is not a subcube of {c}")));
    }
    let n = c.ambient_dim();
    let missing: Vec<usize> = c.axes.iter().copied().filter(|a| !cstar.has_axis(*a)).collect();
    let gens: Vec<Translation> =
        missing.iter().map(|&a| Translation::generator(n, a, cstar.base.0[a] == c.base.0[a])).collect();
    Ok(vec![(gens[0].clone(), gens[1].clone()), (gens[1].clone(), gens[0].clone())])
}

/// All `k`-cubes with at least one vertex in the closed box `[lo, hi]`,
/// sorted.
pub fn cubes_meeting_box(lo: &LatticePoint, hi: &LatticePoint, k: usize) -> Vec<Cube> {
    let n = lo.dim();
    let mut out = Vec::new();
    for axes in combinations(&(0..n).collect::<Vec<_>>(), k) {
        let ranges: Vec<(i32, i32)> =
            (0..n).map(|i| if axes.contains(&i) { (lo.0[i] - 1, hi.0[i]) } else { (lo.0[i], hi.0[i]) }).collect();
        for base in box_points(&ranges) {
            out.push(Cube { base, axes: axes.clone() });
        }
    }
    out.sort();
    out
}

/// All lattice points in a product of closed integer ranges, lexicographic.
pub fn box_points(ranges: &[(i32, i32)]) -> Vec<LatticePoint> {
    if ranges.iter().any(|(a, b)| a > b) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<i32> = ranges.iter().map(|r| r.0).collect();
    loop {
        out.push(LatticePoint(cur.clone()));
        let mut i = ranges.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < ranges[i].1 {
                cur[i] += 1;
                for (j, r) in ranges.iter().enumerate().skip(i + 1) {
                    cur[j] = r.0;
                }
                break;
            }
        }
    }
}

/// `k`-element subsets of `items`, preserving order.
pub(crate) fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i].clone());
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= items.len() {
        go(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}
