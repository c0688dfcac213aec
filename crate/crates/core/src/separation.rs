//! The cube-local separation property and the counting bounds that go with it.
//!
//! A set `M` separates its complement inside a `k`-cube `C` when some
//! `α`-component `M'` of `C ∩ M` cuts across `C` diagonally although the two
//! sides of the cut are joined in the complement outside of `C`. The check is
//! phrased with a `(k-2)`-subcube `C*` and the two generators `τ1, τ2` that
//! complete it to `C`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adjacency::{
    complement_components, components, AdjacencyPair, AdjacencySpec, ComponentLabeling, PointSet, Region,
};
use crate::error::{Error, Result};
use crate::lattice::{completing_translations, cubes_meeting_box, Cube, LatticePoint, Translation};

/// A point `x ∈ C*` with `τ1τ2(x) ∈ M'` but `τ1(x) ∉ M'` or `τ2(x) ∉ M'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationWitness {
    pub cube: Cube,
    pub cstar: Cube,
    pub tau1: Translation,
    pub tau2: Translation,
    pub point: LatticePoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationVerdict {
    pub holds: bool,
    pub witness: Option<SeparationWitness>,
}

impl SeparationVerdict {
    fn from_witness(witness: Option<SeparationWitness>) -> Self {
        SeparationVerdict { holds: witness.is_none(), witness }
    }
}

/// Points of `c` inside (`in_m`) or outside `m`.
pub fn cube_part(c: &Cube, m: &PointSet, in_m: bool) -> PointSet {
    c.vertices().into_iter().filter(|p| m.contains(p) == in_m).collect()
}

/// Components of `C \ M` under `spec`, connectivity taken inside `C`.
pub fn cube_complement_components(spec: &AdjacencySpec, c: &Cube, m: &PointSet) -> ComponentLabeling {
    components(spec, &cube_part(c, m, false))
}

/// Checks one `k`-cube, `2 <= k <= n`. `r` is the window in which the
/// complement components of `m` are computed; `c` must lie inside it away
/// from its boundary.
pub fn not_separated_in_cube(m: &PointSet, c: &Cube, pair: &AdjacencyPair, r: &Region) -> Result<SeparationVerdict> {
    let n = pair.n();
    if c.dim() < 2 || c.dim() > n || c.ambient_dim() != n {
        return Err(Error::Precondition(format!("cube dimension {} outside 2..={n}", c.dim())));
    }
    let inner = r.shrink(1).ok_or_else(|| Error::RegionTooSmall("region has no interior".into()))?;
    if !inner.contains(&c.base) || !inner.contains(&c.top()) {
        return Err(Error::RegionTooSmall(format!("cube {c} reaches the region boundary")));
    }
    let complement = complement_components(&pair.beta, m, r)?;
    Ok(SeparationVerdict::from_witness(check_cube(m, c, pair, &complement)))
}

/// The separation test of a single cube against precomputed complement
/// components; returns the first violation.
pub(crate) fn check_cube(
    m: &PointSet,
    c: &Cube,
    pair: &AdjacencyPair,
    complement: &ComponentLabeling,
) -> Option<SeparationWitness> {
    let inside = cube_part(c, m, true);
    if inside.is_empty() {
        return None;
    }
    let subs = c.subcubes(c.dim() - 2);
    for part in components(&pair.alpha, &inside).components() {
        let part: PointSet = part.members.iter().cloned().collect();
        let counts: Vec<usize> =
            subs.iter().map(|s| s.vertices().iter().filter(|p| part.contains(p)).count()).collect();
        let best = counts.iter().copied().max().unwrap_or(0);
        if best == 0 {
            continue;
        }
        for (cstar, _) in subs.iter().zip(&counts).filter(|(_, &k)| k == best) {
            let pairs = completing_translations(cstar, c).expect("subcube of codimension 2");
            for (t1, t2) in pairs {
                if let Some(point) = violation(m, &part, cstar, &t1, &t2, complement) {
                    return Some(SeparationWitness {
                        cube: c.clone(),
                        cstar: cstar.clone(),
                        tau1: t1,
                        tau2: t2,
                        point,
                    });
                }
            }
        }
    }
    None
}

fn violation(
    m: &PointSet,
    part: &PointSet,
    cstar: &Cube,
    t1: &Translation,
    t2: &Translation,
    complement: &ComponentLabeling,
) -> Option<LatticePoint> {
    let outside = |t: &Translation| -> Vec<LatticePoint> {
        t.apply_cube(cstar).vertices().into_iter().filter(|p| !m.contains(p)).collect()
    };
    let (a, b) = (outside(t1), outside(t2));
    if a.is_empty() || b.is_empty() {
        return None;
    }
    let id = complement.label(&a[0])?;
    if !a.iter().chain(&b).all(|p| complement.label(p) == Some(id)) {
        return None;
    }
    let diag = t1.then(t2);
    cstar
        .vertices()
        .into_iter()
        .find(|x| part.contains(&diag.apply(x)) && !(part.contains(&t1.apply(x)) && part.contains(&t2.apply(x))))
}

/// Every `k`-cube, `2 <= k <= n`, meeting the bounding box of `m` dilated by
/// one, passes [`not_separated_in_cube`]. The first failing cube in
/// (dimension, lexicographic) order is the witness.
pub fn has_separation_property(m: &PointSet, pair: &AdjacencyPair, r: &Region) -> Result<SeparationVerdict> {
    let complement = complement_components(&pair.beta, m, r)?;
    Ok(SeparationVerdict::from_witness(first_violation(m, pair, &complement)))
}

pub(crate) fn first_violation(
    m: &PointSet,
    pair: &AdjacencyPair,
    complement: &ComponentLabeling,
) -> Option<SeparationWitness> {
    let n = pair.n();
    if m.is_empty() {
        return None;
    }
    let bbox = Region::around(m, n, 1);
    let cubes: Vec<Cube> = (2..=n).flat_map(|k| cubes_meeting_box(&bbox.lo, &bbox.hi, k)).collect();
    cubes.par_iter().find_map_first(|c| check_cube(m, c, pair, complement))
}

impl SeparationWitness {
    /// Re-evaluates the recorded configuration from scratch: `C*` is a
    /// maximizer for the component through `τ1τ2(point)`, the premise on
    /// `τ1(C*)` and `τ2(C*)` holds, and `point` breaks the inclusion.
    pub fn replays(&self, m: &PointSet, pair: &AdjacencyPair, r: &Region) -> Result<bool> {
        let complement = complement_components(&pair.beta, m, r)?;
        let inside = cube_part(&self.cube, m, true);
        let alpha = components(&pair.alpha, &inside);
        let diag = self.tau1.then(&self.tau2);
        let Some(id) = alpha.label(&diag.apply(&self.point)) else {
            return Ok(false);
        };
        let part: PointSet = alpha.components()[id].members.iter().cloned().collect();
        let hits = |s: &Cube| s.vertices().iter().filter(|p| part.contains(p)).count();
        let best = self.cube.subcubes(self.cube.dim() - 2).iter().map(hits).max().unwrap_or(0);
        if best == 0 || hits(&self.cstar) != best || !self.cstar.contains_point(&self.point) {
            return Ok(false);
        }
        let found = violation(m, &part, &self.cstar, &self.tau1, &self.tau2, &complement);
        Ok(found.is_some()
            && !(part.contains(&self.tau1.apply(&self.point)) && part.contains(&self.tau2.apply(&self.point))))
    }
}

/// `(k - m)·l + 2^m - l` with `m = ⌈log2 l⌉`: the least number of points of
/// `M` adjacent to an `l`-point background component inside a `k`-cube.
pub fn beta_neighbor_lower_bound(k: u32, l: u64) -> i64 {
    assert!(l >= 1 && l <= 1u64 << k, "component size {l} outside 1..=2^{k}");
    let m = u64::BITS - (l - 1).leading_zeros();
    let m = if l == 1 { 0 } else { m };
    (k as i64 - m as i64) * l as i64 + (1i64 << m) - l as i64
}

/// For a cube whose complement part has exactly two `β`-components:
/// `k <= |C ∩ M| <= 2^k - 2`.
pub fn component_count_bounds_hold(m: &PointSet, c: &Cube, pair: &AdjacencyPair) -> Result<bool> {
    let comps = cube_complement_components(&pair.beta, c, m).count();
    if comps != 2 {
        return Err(Error::Precondition(format!("{c} \\ M has {comps} β-components, expected 2")));
    }
    let inside = cube_part(c, m, true).len();
    let k = c.dim();
    Ok(k <= inside && inside <= (1usize << k) - 2)
}
