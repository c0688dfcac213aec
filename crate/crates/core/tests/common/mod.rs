#![allow(dead_code)]

use digitop::jordan::GeneratorSpec;
use digitop::lattice::box_points;
use digitop::{AdjacencyPair, AdjacencySpec, PointSet};

pub fn pair(alpha: AdjacencySpec, beta: AdjacencySpec) -> AdjacencyPair {
    AdjacencyPair::new(alpha, beta).unwrap()
}

/// (4,8) in the plane.
pub fn p4_8() -> AdjacencyPair {
    pair(AdjacencySpec::axis(2), AdjacencySpec::full(2))
}

/// (8,4) in the plane.
pub fn p8_4() -> AdjacencyPair {
    pair(AdjacencySpec::full(2), AdjacencySpec::axis(2))
}

/// (6,26) in space.
pub fn p6_26() -> AdjacencyPair {
    pair(AdjacencySpec::axis(3), AdjacencySpec::full(3))
}

/// (26,6) in space.
pub fn p26_6() -> AdjacencyPair {
    pair(AdjacencySpec::full(3), AdjacencySpec::axis(3))
}

pub fn rect(w: i32, h: i32) -> PointSet {
    GeneratorSpec::RectBoundary { w, h }.generate().unwrap()
}

pub fn boxs(w: i32, h: i32, d: i32) -> PointSet {
    GeneratorSpec::BoxSurface { w, h, d }.generate().unwrap()
}

pub fn shell(r: i32, n: usize) -> PointSet {
    GeneratorSpec::SphereShell { r, n }.generate().unwrap()
}

/// `{p : |p|_1 = r}`.
pub fn diamond(r: i32, n: usize) -> PointSet {
    box_points(&vec![(-r, r); n]).into_iter().filter(|p| p.0.iter().map(|c| c.abs()).sum::<i32>() == r).collect()
}

pub struct Instance {
    pub name: &'static str,
    pub m: PointSet,
    pub pair: AdjacencyPair,
    /// Number of complement points enclosed, when known in closed form.
    pub inside: Option<usize>,
}

fn inst(name: &'static str, m: PointSet, pair: AdjacencyPair, inside: Option<usize>) -> Instance {
    Instance { name, m, pair, inside }
}

/// Point sets the manifold checker certifies, each with its pair.
pub fn certified_corpus() -> Vec<Instance> {
    vec![
        inst("rect 5x5 (4,8)", rect(5, 5), p4_8(), Some(9)),
        inst("rect 7x3 (4,8)", rect(7, 3), p4_8(), Some(5)),
        inst("rect 6x4 (4,8)", rect(6, 4), p4_8(), Some(8)),
        inst("shell r2 (4,8)", shell(2, 2), p4_8(), None),
        inst("shell r3 (4,8)", shell(3, 2), p4_8(), None),
        inst("diamond r2 (8,4)", diamond(2, 2), p8_4(), None),
        inst("diamond r3 (8,4)", diamond(3, 2), p8_4(), None),
        inst("box 3x3x3 (6,26)", boxs(3, 3, 3), p6_26(), Some(1)),
        inst("box 5x4x3 (6,26)", boxs(5, 4, 3), p6_26(), Some(6)),
        inst("shell r2 (6,26)", shell(2, 3), p6_26(), None),
        inst("octahedron r2 (26,6)", diamond(2, 3), p26_6(), None),
    ]
}

/// Union-find count of components of `pts` under the offset set of `spec`.
pub fn oracle_count(spec: &AdjacencySpec, pts: &[digitop::LatticePoint]) -> usize {
    let mut parent: Vec<usize> = (0..pts.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d: Vec<i32> = pts[i].0.iter().zip(&pts[j].0).map(|(a, b)| b - a).collect();
            if spec.offsets.contains(&d) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..pts.len()).filter(|&i| find(&mut parent, i) == i).count()
}
