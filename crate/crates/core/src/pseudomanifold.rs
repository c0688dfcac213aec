//! Combinatorial pseudomanifold checks: homogeneity, exactly two cofaces per
//! ridge, strong connectivity.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homogeneity {
    pub holds: bool,
    /// A simplex that is not a face of any `d`-simplex.
    pub witness: Option<Simplex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nondegeneracy {
    pub holds: bool,
    /// A `(d-1)`-simplex and its number of `d`-cofaces.
    pub witness: Option<(Simplex, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongConnectivity {
    pub holds: bool,
    /// Two `d`-simplices not joined by a chain through shared ridges.
    pub witness: Option<(Simplex, Simplex)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudomanifoldReport {
    pub dimension: usize,
    pub homogeneous: Homogeneity,
    pub nondegenerate: Nondegeneracy,
    pub strongly_connected: StrongConnectivity,
}

impl PseudomanifoldReport {
    pub fn holds(&self) -> bool {
        self.homogeneous.holds && self.nondegenerate.holds && self.strongly_connected.holds
    }
}

pub fn is_homogeneous(k: &SimplicialComplex, d: usize) -> Homogeneity {
    let mut covered: BTreeSet<Simplex> = BTreeSet::new();
    for t in k.of_dim(d) {
        let vs = t.vertices();
        for mask in 1u32..(1 << vs.len()) {
            let face = (0..vs.len()).filter(|i| mask & (1 << i) != 0).map(|i| vs[i].clone()).collect();
            covered.insert(Simplex(face));
        }
    }
    let witness = k.simplices.iter().find(|s| !covered.contains(*s)).cloned();
    Homogeneity { holds: witness.is_none(), witness }
}

fn cofaces(k: &SimplicialComplex, d: usize) -> BTreeMap<Simplex, Vec<Simplex>> {
    let mut map: BTreeMap<Simplex, Vec<Simplex>> = BTreeMap::new();
    if d == 0 {
        return map;
    }
    for s in k.of_dim(d - 1) {
        map.insert(s.clone(), Vec::new());
    }
    for t in k.of_dim(d) {
        for f in t.facets() {
            map.entry(f).or_default().push(t.clone());
        }
    }
    map
}

/// Every `(d-1)`-simplex has exactly two `d`-cofaces. At `d = 0` there are
/// no ridges and the condition is vacuous.
pub fn is_nondegenerate(k: &SimplicialComplex, d: usize) -> Nondegeneracy {
    let witness = cofaces(k, d).into_iter().find(|(_, c)| c.len() != 2).map(|(s, c)| (s, c.len()));
    Nondegeneracy { holds: witness.is_none(), witness }
}

/// The dual graph on `d`-simplices, joined across shared `(d-1)`-faces, is
/// connected.
pub fn is_strongly_connected(k: &SimplicialComplex, d: usize) -> StrongConnectivity {
    let tops: Vec<&Simplex> = k.of_dim(d).collect();
    if tops.len() <= 1 {
        return StrongConnectivity { holds: true, witness: None };
    }
    let index: BTreeMap<&Simplex, usize> = tops.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); tops.len()];
    for (_, cs) in cofaces(k, d) {
        for a in &cs {
            for b in &cs {
                if a != b {
                    adj[index[a]].push(index[b]);
                }
            }
        }
    }
    let mut seen = vec![false; tops.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    let witness = seen.iter().position(|s| !s).map(|i| (tops[0].clone(), tops[i].clone()));
    StrongConnectivity { holds: witness.is_none(), witness }
}

pub fn is_pseudomanifold(k: &SimplicialComplex, d: usize) -> PseudomanifoldReport {
    PseudomanifoldReport {
        dimension: d,
        homogeneous: is_homogeneous(k, d),
        nondegenerate: is_nondegenerate(k, d),
        strongly_connected: is_strongly_connected(k, d),
    }
}
