//! Digital `(n-1)`-manifolds, simple points, double points and good pairs.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adjacency::{
    complement_components, components, is_connected, n_simply_connected_bounded, omega_closed, AdjacencyPair,
    AdjacencySpec, Contractibility, PointSet, Region,
};
use crate::error::{Error, Result};
use crate::lattice::{cubes_meeting_box, Cube, LatticePoint, Translation};
use crate::separation::{first_violation, SeparationWitness};

/// Margin used for complement computations when the caller does not pick one.
pub const DEFAULT_MARGIN: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ManifoldWitness {
    Empty,
    /// `b` is not reachable from `a` inside `M`.
    Disconnected {
        a: LatticePoint,
        b: LatticePoint,
    },
    /// `C ∩ M` is not `α`-connected.
    CubeDisconnected {
        cube: Cube,
        components: usize,
    },
    /// `ω(p) \ M` does not split into exactly two `β`-components.
    LocalComponents {
        point: LatticePoint,
        components: usize,
    },
    /// `neighbor ∈ α(point) ∩ M` has no `β`-neighbor in one local side of `point`.
    OneSided {
        point: LatticePoint,
        neighbor: LatticePoint,
        side: Side,
    },
    Separation(SeparationWitness),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    C,
    D,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<ManifoldWitness>,
}

impl Verdict {
    fn from_witness(witness: Option<ManifoldWitness>) -> Self {
        Verdict { holds: witness.is_none(), witness }
    }
}

/// Outcome of [`check_manifold`]: `α`-connectivity plus the four defining
/// properties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldReport {
    pub alpha_connected: Verdict,
    pub cube_connected: Verdict,
    pub two_components: Verdict,
    pub component_unity: Verdict,
    pub separation: Verdict,
    /// `p ↦ (C_p, D_p)`, filled for every point with exactly two local sides.
    #[serde(skip)]
    pub local: BTreeMap<LatticePoint, (PointSet, PointSet)>,
}

impl ManifoldReport {
    pub fn certified(&self) -> bool {
        self.verdicts().iter().all(|(_, v)| v.holds)
    }

    pub fn verdicts(&self) -> [(&'static str, &Verdict); 5] {
        [
            ("alpha_connected", &self.alpha_connected),
            ("cube_connected", &self.cube_connected),
            ("two_components", &self.two_components),
            ("component_unity", &self.component_unity),
            ("separation", &self.separation),
        ]
    }

    /// Name and witness of the first failed property.
    pub fn first_failure(&self) -> Option<(&'static str, &Verdict)> {
        self.verdicts().into_iter().find(|(_, v)| !v.holds)
    }
}

/// `β`-components of `ω(p) \ M`, ordered by smallest member.
pub fn local_components(p: &LatticePoint, m: &PointSet, pair: &AdjacencyPair) -> Vec<PointSet> {
    let around: PointSet = omega_closed(p).into_iter().filter(|q| !m.contains(q)).collect();
    components(&pair.beta, &around).components().iter().map(|c| c.members.iter().cloned().collect()).collect()
}

pub fn check_manifold(m: &PointSet, pair: &AdjacencyPair) -> Result<ManifoldReport> {
    check_manifold_with_margin(m, pair, DEFAULT_MARGIN)
}

pub fn check_manifold_with_margin(m: &PointSet, pair: &AdjacencyPair, margin: i32) -> Result<ManifoldReport> {
    let n = pair.n();
    if let Some(p) = m.iter().find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
    }
    if m.is_empty() {
        let empty = Verdict::from_witness(Some(ManifoldWitness::Empty));
        return Ok(ManifoldReport {
            alpha_connected: empty.clone(),
            cube_connected: empty.clone(),
            two_components: empty.clone(),
            component_unity: empty.clone(),
            separation: empty,
            local: BTreeMap::new(),
        });
    }

    let alpha_connected = {
        let lab = components(&pair.alpha, m);
        Verdict::from_witness((lab.count() > 1).then(|| ManifoldWitness::Disconnected {
            a: lab.components()[0].members[0].clone(),
            b: lab.components()[1].members[0].clone(),
        }))
    };

    let bbox = Region::around(m, n, 0);
    let cubes = cubes_meeting_box(&bbox.lo, &bbox.hi, n);
    let cube_connected = Verdict::from_witness(cubes.par_iter().find_map_first(|c| {
        let inside: PointSet = c.vertices().into_iter().filter(|p| m.contains(p)).collect();
        let count = components(&pair.alpha, &inside).count();
        (count > 1).then(|| ManifoldWitness::CubeDisconnected { cube: c.clone(), components: count })
    }));

    let points: Vec<&LatticePoint> = m.iter().collect();
    let locals: Vec<Vec<PointSet>> = points.par_iter().map(|p| local_components(p, m, pair)).collect();
    let two_components = Verdict::from_witness(points.iter().zip(&locals).find_map(|(p, l)| {
        (l.len() != 2).then(|| ManifoldWitness::LocalComponents { point: (*p).clone(), components: l.len() })
    }));
    let local: BTreeMap<LatticePoint, (PointSet, PointSet)> = points
        .iter()
        .zip(locals)
        .filter(|(_, l)| l.len() == 2)
        .map(|(p, mut l)| {
            let d = l.pop().unwrap();
            let c = l.pop().unwrap();
            ((*p).clone(), (c, d))
        })
        .collect();

    let component_unity = Verdict::from_witness(local.par_iter().find_map_first(|(p, (cp, dp))| {
        pair.alpha.neighbors(p).into_iter().filter(|q| m.contains(q)).find_map(|q| {
            let touches = |side: &PointSet| pair.beta.neighbors(&q).iter().any(|x| side.contains(x));
            let missing = if !touches(cp) {
                Some(Side::C)
            } else if !touches(dp) {
                Some(Side::D)
            } else {
                None
            };
            missing.map(|side| ManifoldWitness::OneSided { point: p.clone(), neighbor: q, side })
        })
    }));

    let region = Region::around(m, n, margin.max(2));
    let complement = complement_components(&pair.beta, m, &region)?;
    let separation = Verdict::from_witness(first_violation(m, pair, &complement).map(ManifoldWitness::Separation));

    Ok(ManifoldReport { alpha_connected, cube_connected, two_components, component_unity, separation, local })
}

/// The two `β`-components `C_M`, `D_M` of `ω(M) \ M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalSides {
    pub c_side: PointSet,
    pub d_side: PointSet,
}

/// Splits `ω(M) \ M` for a certified manifold. `C_M` is the side containing
/// `C_p` of the smallest `p ∈ M`; local labels are carried along `α`-edges by
/// shared points and must agree with the global split.
pub fn global_sides(m: &PointSet, pair: &AdjacencyPair, report: &ManifoldReport) -> Result<GlobalSides> {
    if !report.certified() {
        let what = report.first_failure().map(|(name, _)| name).unwrap_or("unknown");
        return Err(Error::NotAManifold(format!("property {what} fails")));
    }
    let shell: PointSet = m.iter().flat_map(omega_closed).filter(|q| !m.contains(q)).collect();
    let lab = components(&pair.beta, &shell);
    if lab.count() != 2 {
        return Err(Error::Inconsistent(format!("ω(M) \\ M has {} β-components", lab.count())));
    }

    // carry the C/D naming along α-paths
    let start = m.iter().next().expect("certified sets are nonempty");
    let mut oriented: BTreeMap<&LatticePoint, (&PointSet, &PointSet)> = BTreeMap::new();
    let (c0, d0) = &report.local[start];
    oriented.insert(start, (c0, d0));
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        let (cp, _) = oriented[p];
        for q in pair.alpha.neighbors(p) {
            let Some((q, (cq, dq))) = report.local.get_key_value(&q) else { continue };
            if oriented.contains_key(q) {
                continue;
            }
            let (shares_c, shares_d) = (!cq.is_disjoint(cp), !dq.is_disjoint(cp));
            let orient = match (shares_c, shares_d) {
                (true, false) => (cq, dq),
                (false, true) => (dq, cq),
                _ => {
                    return Err(Error::Inconsistent(format!("local sides of {q} cannot be matched with those of {p}")))
                }
            };
            oriented.insert(q, orient);
            queue.push_back(q);
        }
    }

    let side_of = |s: &PointSet| -> Option<usize> {
        let first = lab.label(s.iter().next()?)?;
        s.iter().all(|x| lab.label(x) == Some(first)).then_some(first)
    };
    let c_id = side_of(c0).ok_or_else(|| Error::Inconsistent("C_p straddles both sides".into()))?;
    for (p, (cp, dp)) in &oriented {
        match (side_of(cp), side_of(dp)) {
            (Some(a), Some(b)) if a == c_id && b != c_id => {}
            _ => return Err(Error::Inconsistent(format!("local sides of {p} disagree with the global split"))),
        }
    }
    let collect = |id: usize| -> PointSet { lab.components()[id].members.iter().cloned().collect() };
    Ok(GlobalSides { c_side: collect(c_id), d_side: collect(1 - c_id) })
}

/// Removing `p` keeps the number of `α`-components of `M` and of
/// `β`-components of the complement (within `r`, unbounded part merged).
pub fn is_simple_point(p: &LatticePoint, m: &PointSet, pair: &AdjacencyPair, r: &Region) -> Result<bool> {
    if !m.contains(p) {
        return Err(Error::Precondition(format!("{p} is not in M")));
    }
    let mut without = m.clone();
    without.remove(p);
    let fg_same = components(&pair.alpha, m).count() == components(&pair.alpha, &without).count();
    if !fg_same {
        return Ok(false);
    }
    let before = complement_components(&pair.beta, m, r)?.count();
    let after = complement_components(&pair.beta, &without, r)?.count();
    Ok(before == after)
}

/// `p ∈ β(z)` is a double point through `q`, `r` and the generator `tau`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DoublePointWitness {
    pub z: LatticePoint,
    pub p: LatticePoint,
    pub q: LatticePoint,
    pub r: LatticePoint,
    pub tau: Translation,
}

impl DoublePointWitness {
    /// Checks every defining relation again.
    pub fn replays(&self, pair: &AdjacencyPair) -> bool {
        let pi = AdjacencySpec::axis(pair.n());
        let (a, b) = (&pair.alpha, &pair.beta);
        b.adjacent(&self.z, &self.p)
            && pi.adjacent(&self.z, &self.q)
            && a.adjacent(&self.p, &self.q)
            && b.adjacent(&self.z, &self.r)
            && pi.adjacent(&self.p, &self.r)
            && self.tau.is_generator()
            && self.tau.apply(&self.p) == self.q
            && self.tau.apply(&self.r) == self.z
            && a.adjacent(&self.r, &self.q)
    }
}

/// Every double point of `β(z)`, sorted.
pub fn double_points(z: &LatticePoint, pair: &AdjacencyPair) -> Vec<DoublePointWitness> {
    let n = pair.n();
    let mut out = Vec::new();
    for p in pair.beta.neighbors(z) {
        for tau in Translation::generators(n) {
            let w = DoublePointWitness { z: z.clone(), q: tau.apply(&p), r: tau.inverse().apply(z), p: p.clone(), tau };
            if w.replays(pair) {
                out.push(w);
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ternary {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeparatingPairReport {
    pub verdict: Ternary,
    /// `β(0)` checked as a digital `(n-1)`-manifold.
    pub neighborhood: ManifoldReport,
    pub contractibility: Option<Contractibility>,
}

/// `β(0)` is a digital `(n-1)`-sphere: a certified manifold whose cycles
/// contract under `N`-equivalence within `budget`. One point suffices since
/// every relation is translation invariant.
pub fn is_separating_pair(pair: &AdjacencyPair, big_n: usize, budget: usize) -> Result<SeparatingPairReport> {
    let sphere: PointSet = pair.beta.neighbors(&LatticePoint::origin(pair.n())).into_iter().collect();
    let neighborhood = check_manifold(&sphere, pair)?;
    if !neighborhood.certified() {
        return Ok(SeparatingPairReport { verdict: Ternary::No, neighborhood, contractibility: None });
    }
    let contract = n_simply_connected_bounded(&pair.alpha, &sphere, big_n, budget);
    let verdict = match contract {
        Contractibility::Yes => Ternary::Yes,
        Contractibility::Unknown => Ternary::Unknown,
    };
    Ok(SeparatingPairReport { verdict, neighborhood, contractibility: Some(contract) })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoodPairReport {
    pub verdict: Ternary,
    pub separating: SeparatingPairReport,
    pub double_points: Vec<DoublePointWitness>,
}

/// Separating and free of double points at the origin.
pub fn is_good_pair(pair: &AdjacencyPair, big_n: usize, budget: usize) -> Result<GoodPairReport> {
    let separating = is_separating_pair(pair, big_n, budget)?;
    let double_points = double_points(&LatticePoint::origin(pair.n()), pair);
    let verdict =
        if !double_points.is_empty() || separating.verdict == Ternary::No { Ternary::No } else { separating.verdict };
    Ok(GoodPairReport { verdict, separating, double_points })
}

/// Offsets are closed under all signed permutations of the axes.
pub fn is_regular_rotation(spec: &AdjacencySpec) -> bool {
    let n = spec.n;
    let perms = permutations(n);
    spec.offsets.iter().all(|v| {
        perms.iter().all(|perm| {
            (0u32..(1 << n)).all(|signs| {
                let w: Vec<i32> = (0..n)
                    .map(|i| {
                        let c = v[perm[i]];
                        if signs & (1 << i) != 0 {
                            -c
                        } else {
                            c
                        }
                    })
                    .collect();
                spec.offsets.contains(&w)
            })
        })
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Convenience: is `m` certified and does it stay α-connected.
pub fn is_certified(m: &PointSet, pair: &AdjacencyPair) -> Result<bool> {
    Ok(is_connected(&pair.alpha, m) && check_manifold(m, pair)?.certified())
}
