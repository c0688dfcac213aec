//! Jordan-Brouwer checks on certified manifolds, and the example generators.

use serde::{Deserialize, Serialize};

use crate::adjacency::{complement_components, AdjacencyPair, PointSet, Region};
use crate::error::{Error, Result};
use crate::lattice::{box_points, LatticePoint};
use crate::manifold::{check_manifold_with_margin, is_simple_point};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanReport {
    pub two_components: bool,
    /// Number of complement components after merging the unbounded ones.
    pub components: usize,
    pub inside_size: usize,
    pub outside_flagged: bool,
    pub common_boundary: bool,
    /// A point of `M` without a `β`-neighbor in some complement component.
    pub boundary_witness: Option<LatticePoint>,
    pub no_simple_points: bool,
    pub simple_witness: Option<LatticePoint>,
}

impl JordanReport {
    pub fn holds(&self) -> bool {
        self.two_components && self.common_boundary && self.no_simple_points
    }
}

/// Refuses sets that `check_manifold` does not certify.
pub fn jordan_check(m: &PointSet, pair: &AdjacencyPair, margin: i32) -> Result<JordanReport> {
    if margin < 2 {
        return Err(Error::Precondition(format!("margin must be at least 2, got {margin}")));
    }
    let report = check_manifold_with_margin(m, pair, margin)?;
    if let Some((name, _)) = report.first_failure() {
        return Err(Error::NotAManifold(format!("property {name} fails")));
    }
    let region = Region::around(m, pair.n(), margin);
    let lab = complement_components(&pair.beta, m, &region)?;
    let infinite = lab.infinite_id();
    let inside_size = lab.finite_components().map(|c| c.members.len()).sum();

    let boundary_witness = m
        .iter()
        .find(|p| {
            let touched: std::collections::BTreeSet<usize> =
                pair.beta.neighbors(p).iter().filter_map(|q| lab.label(q)).collect();
            touched.len() != lab.count()
        })
        .cloned();
    let mut simple_witness = None;
    for p in m {
        if is_simple_point(p, m, pair, &region)? {
            simple_witness = Some(p.clone());
            break;
        }
    }
    Ok(JordanReport {
        two_components: lab.count() == 2,
        components: lab.count(),
        inside_size,
        outside_flagged: infinite.is_some(),
        common_boundary: boundary_witness.is_none(),
        boundary_witness,
        no_simple_points: simple_witness.is_none(),
        simple_witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    RectBoundary {
        w: i32,
        h: i32,
    },
    BoxSurface {
        w: i32,
        h: i32,
        d: i32,
    },
    /// Lattice points with `r - 1 < |p| <= r + 1/2`.
    SphereShell {
        r: i32,
        n: usize,
    },
}

impl GeneratorSpec {
    pub fn dim(&self) -> usize {
        match self {
            GeneratorSpec::RectBoundary { .. } => 2,
            GeneratorSpec::BoxSurface { .. } => 3,
            GeneratorSpec::SphereShell { n, .. } => *n,
        }
    }

    pub fn generate(&self) -> Result<PointSet> {
        match *self {
            GeneratorSpec::RectBoundary { w, h } => {
                sides(&[w, h])?;
                Ok(box_boundary(&[w, h]))
            }
            GeneratorSpec::BoxSurface { w, h, d } => {
                sides(&[w, h, d])?;
                Ok(box_boundary(&[w, h, d]))
            }
            GeneratorSpec::SphereShell { r, n } => {
                if r < 2 {
                    return Err(Error::Generator(format!("radius must be at least 2, got {r}")));
                }
                if n < 2 {
                    return Err(Error::Generator(format!("dimension must be at least 2, got {n}")));
                }
                let (lo, hi) = (4 * (r - 1) * (r - 1), (2 * r + 1) * (2 * r + 1));
                let ranges = vec![(-r - 1, r + 1); n];
                Ok(box_points(&ranges)
                    .into_iter()
                    .filter(|p| {
                        let q: i32 = p.0.iter().map(|c| 4 * c * c).sum();
                        lo < q && q <= hi
                    })
                    .collect())
            }
        }
    }
}

fn sides(s: &[i32]) -> Result<()> {
    match s.iter().find(|&&v| v < 3) {
        Some(v) => Err(Error::Generator(format!("every side must be at least 3, got {v}"))),
        None => Ok(()),
    }
}

/// Points of the box `[0, s_i - 1]` with at least one extremal coordinate.
fn box_boundary(s: &[i32]) -> PointSet {
    let ranges: Vec<(i32, i32)> = s.iter().map(|&v| (0, v - 1)).collect();
    box_points(&ranges).into_iter().filter(|p| p.0.iter().zip(s).any(|(&c, &v)| c == 0 || c == v - 1)).collect()
}
