//! The simplicial complexes `K(M)` and `K'(M)` spanned by lattice points and
//! cube barycenters, with exact verification of the complex axioms.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adjacency::{AdjacencyPair, PointSet, Region};
use crate::exact::{affinely_independent, in_open_simplex, open_simplices_meet};
use crate::lattice::{box_points, cubes_meeting_box, Cube, HalfPoint, LatticePoint};
use crate::separation::cube_complement_components;

/// Vertices sorted by doubled coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(pub Vec<HalfPoint>);

impl Simplex {
    pub fn new(mut vertices: Vec<HalfPoint>) -> Self {
        vertices.sort();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertex(v: HalfPoint) -> Self {
        Simplex(vec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[HalfPoint] {
        &self.0
    }

    pub fn contains(&self, v: &HalfPoint) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn with(&self, v: HalfPoint) -> Simplex {
        let mut vs = self.0.clone();
        vs.push(v);
        Simplex::new(vs)
    }

    /// Faces of codimension one.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.0.len() < 2 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|i| {
                let mut vs = self.0.clone();
                vs.remove(i);
                Simplex(vs)
            })
            .collect()
    }

    fn coords(&self) -> Vec<Vec<i32>> {
        self.0.iter().map(|v| v.0.clone()).collect()
    }

    fn bbox(&self) -> (Vec<i32>, Vec<i32>) {
        let n = self.0[0].dim();
        let lo = (0..n).map(|d| self.0.iter().map(|v| v.0[d]).min().unwrap()).collect();
        let hi = (0..n).map(|d| self.0.iter().map(|v| v.0[d]).max().unwrap()).collect();
        (lo, hi)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub n: usize,
    pub simplices: BTreeSet<Simplex>,
    /// Every vertex mapped to the cube it is the barycenter of.
    pub provenance: BTreeMap<HalfPoint, Cube>,
}

impl SimplicialComplex {
    pub fn empty(n: usize) -> Self {
        SimplicialComplex { n, ..Default::default() }
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn vertices(&self) -> Vec<HalfPoint> {
        self.simplices.iter().filter(|s| s.0.len() == 1).map(|s| s.0[0].clone()).collect()
    }

    pub fn of_dim(&self, d: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().filter(move |s| s.dim() == d)
    }

    /// Largest simplex dimension, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    /// Counts of simplices per dimension, index = dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            f[s.dim()] += 1;
        }
        f
    }

    /// Adds `s` with all of its faces.
    pub fn insert_closed(&mut self, s: Simplex) {
        if self.simplices.contains(&s) {
            return;
        }
        for f in s.facets() {
            self.insert_closed(f);
        }
        self.simplices.insert(s);
    }

    pub fn translate(&self, t: &[i32]) -> SimplicialComplex {
        SimplicialComplex {
            n: self.n,
            simplices: self
                .simplices
                .iter()
                .map(|s| Simplex::new(s.0.iter().map(|v| v.translate(t)).collect()))
                .collect(),
            provenance: self
                .provenance
                .iter()
                .map(|(h, c)| (h.translate(t), Cube { base: c.base.offset(t), axes: c.axes.clone() }))
                .collect(),
        }
    }
}

/// `C ⊆ M`, or some antipodal pair of `c` is either two `α`-adjacent points
/// of `M` or two points of the complement that are not `β`-adjacent.
pub fn test_t(c: &Cube, m: &PointSet, pair: &AdjacencyPair) -> bool {
    if c.vertices().iter().all(|v| m.contains(v)) {
        return true;
    }
    c.antipodal_pairs().iter().any(|(p, q)| {
        let (pin, qin) = (m.contains(p), m.contains(q));
        (pin && qin && pair.alpha.adjacent(p, q)) || (!pin && !qin && !pair.beta.adjacent(p, q))
    })
}

/// A cube contributes its barycenter when `T(C)` holds and it meets `M`.
fn contributes(c: &Cube, m: &PointSet, pair: &AdjacencyPair) -> bool {
    c.dim() >= 1 && c.vertices().iter().any(|v| m.contains(v)) && test_t(c, m, pair)
}

/// Builds the complex inside one `n`-cube: cubes by increasing dimension,
/// each contributing barycenter coned over everything already built in its
/// hull.
pub fn build_complex_in_cube(cn: &Cube, m: &PointSet, pair: &AdjacencyPair) -> SimplicialComplex {
    let n = cn.ambient_dim();
    let mut out = SimplicialComplex::empty(n);
    let mut built: Vec<Simplex> = Vec::new();
    for v in cn.vertices().into_iter().filter(|v| m.contains(v)) {
        let h = v.to_half();
        out.provenance.insert(h.clone(), Cube::point(v));
        built.push(Simplex::vertex(h));
    }
    for k in 1..=cn.dim() {
        let mut layer = Vec::new();
        for c in cn.subcubes(k) {
            if !contributes(&c, m, pair) {
                continue;
            }
            let b = c.barycenter();
            layer.push(Simplex::vertex(b.clone()));
            for s in &built {
                if s.0.iter().all(|v| c.hull_contains(v)) {
                    layer.push(s.with(b.clone()));
                }
            }
            out.provenance.insert(b, c);
        }
        built.extend(layer);
    }
    out.simplices = built.into_iter().collect();
    out
}

/// `n`-cubes whose complexes make up `K(M)`: those meeting the bounding box
/// of `M` dilated by one.
fn covering_cubes(m: &PointSet, n: usize) -> Vec<Cube> {
    if m.is_empty() {
        return Vec::new();
    }
    let r = Region::around(m, n, 1);
    cubes_meeting_box(&r.lo, &r.hi, n)
}

pub fn build_complex(m: &PointSet, pair: &AdjacencyPair) -> SimplicialComplex {
    let n = pair.n();
    let parts: Vec<SimplicialComplex> =
        covering_cubes(m, n).par_iter().map(|cn| build_complex_in_cube(cn, m, pair)).collect();
    let mut out = SimplicialComplex::empty(n);
    for p in parts {
        out.simplices.extend(p.simplices);
        out.provenance.extend(p.provenance);
    }
    out
}

/// Per-cube record of the construction and the reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeRecord {
    pub cube: Cube,
    pub t: bool,
    /// The barycenter is a vertex of `K(M)`.
    pub vertex: bool,
    /// `β`-components of `C \ M`.
    pub beta_components: usize,
    /// The barycenter is dropped from `K'(M)`.
    pub removed: bool,
}

pub fn build_trace(m: &PointSet, pair: &AdjacencyPair) -> Vec<CubeRecord> {
    let mut cubes: BTreeSet<Cube> = BTreeSet::new();
    for cn in covering_cubes(m, pair.n()) {
        for k in 1..=cn.dim() {
            cubes.extend(cn.subcubes(k));
        }
    }
    cubes
        .into_par_iter()
        .map(|c| {
            let t = test_t(&c, m, pair);
            let vertex = contributes(&c, m, pair);
            let beta_components = cube_complement_components(&pair.beta, &c, m).count();
            CubeRecord { removed: vertex && beta_components == 1, cube: c, t, vertex, beta_components }
        })
        .collect()
}

/// `K'(M)`: drops every barycenter whose cube has exactly one `β`-component
/// in `C \ M`, with all simplices containing it.
pub fn reduce_complex(k: &SimplicialComplex, m: &PointSet, pair: &AdjacencyPair) -> SimplicialComplex {
    let dropped: HashSet<&HalfPoint> = k
        .provenance
        .iter()
        .filter(|(_, c)| c.dim() >= 1 && cube_complement_components(&pair.beta, c, m).count() == 1)
        .map(|(h, _)| h)
        .collect();
    SimplicialComplex {
        n: k.n,
        simplices: k.simplices.iter().filter(|s| !s.0.iter().any(|v| dropped.contains(v))).cloned().collect(),
        provenance: k
            .provenance
            .iter()
            .filter(|(h, _)| !dropped.contains(h))
            .map(|(h, c)| (h.clone(), c.clone()))
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomWitness {
    AffinelyDependent { simplex: Simplex },
    MissingFace { simplex: Simplex, face: Simplex },
    Overlap { a: Simplex, b: Simplex },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub holds: bool,
    pub witness: Option<AxiomWitness>,
}

/// Affine independence, closure under faces, and pairwise disjointness of
/// open simplices, all exact. Pairs are only compared when their closed
/// bounding boxes overlap.
pub fn verify_complex_axioms(k: &SimplicialComplex) -> AxiomReport {
    let simplices: Vec<&Simplex> = k.simplices.iter().collect();
    let witness = simplices
        .par_iter()
        .find_map_first(|s| {
            (!affinely_independent(&s.coords())).then(|| AxiomWitness::AffinelyDependent { simplex: (*s).clone() })
        })
        .or_else(|| {
            simplices.par_iter().find_map_first(|s| {
                s.facets()
                    .into_iter()
                    .find(|f| !k.simplices.contains(f))
                    .map(|face| AxiomWitness::MissingFace { simplex: (*s).clone(), face })
            })
        })
        .or_else(|| first_overlap(&simplices));
    AxiomReport { holds: witness.is_none(), witness }
}

fn first_overlap(simplices: &[&Simplex]) -> Option<AxiomWitness> {
    // bucket by the doubled unit cells each closed bounding box touches
    let boxes: Vec<(Vec<i32>, Vec<i32>)> = simplices.iter().map(|s| s.bbox()).collect();
    let mut cells: HashMap<Vec<i32>, Vec<usize>> = HashMap::new();
    for (i, (lo, hi)) in boxes.iter().enumerate() {
        let ranges: Vec<(i32, i32)> =
            lo.iter().zip(hi).map(|(&l, &h)| ((l - 1).div_euclid(2), h.div_euclid(2))).collect();
        for cell in box_points(&ranges) {
            cells.entry(cell.0).or_default().push(i);
        }
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for members in cells.values() {
        for (x, &i) in members.iter().enumerate() {
            for &j in &members[x + 1..] {
                if boxes_overlap(&boxes[i], &boxes[j]) {
                    pairs.insert((i.min(j), i.max(j)));
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
    pairs.par_iter().find_map_first(|&(i, j)| {
        let (a, b) = (simplices[i], simplices[j]);
        let mut union: Vec<HalfPoint> = a.0.iter().chain(&b.0).cloned().collect();
        union.sort();
        union.dedup();
        let coords: Vec<Vec<i32>> = union.iter().map(|v| v.0.clone()).collect();
        if affinely_independent(&coords) {
            return None;
        }
        open_simplices_meet(&a.coords(), &b.coords()).then(|| AxiomWitness::Overlap { a: a.clone(), b: b.clone() })
    })
}

fn boxes_overlap(a: &(Vec<i32>, Vec<i32>), b: &(Vec<i32>, Vec<i32>)) -> bool {
    (0..a.0.len()).all(|d| a.0[d].max(b.0[d]) <= a.1[d].min(b.1[d]))
}

pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    k.simplices.iter().map(|s| if s.dim() % 2 == 0 { 1 } else { -1 }).sum()
}

/// Connected components of the vertex-edge graph, each sorted, ordered by
/// smallest vertex.
pub fn skeleton_components(k: &SimplicialComplex) -> Vec<Vec<HalfPoint>> {
    let mut adj: BTreeMap<&HalfPoint, Vec<&HalfPoint>> = BTreeMap::new();
    for s in &k.simplices {
        match s.0.as_slice() {
            [v] => {
                adj.entry(v).or_default();
            }
            [a, b] => {
                adj.entry(a).or_default().push(b);
                adj.entry(b).or_default().push(a);
            }
            _ => {}
        }
    }
    let mut seen: HashSet<&HalfPoint> = HashSet::new();
    let mut out = Vec::new();
    for &start in adj.keys() {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if seen.insert(w) {
                    comp.push(w.clone());
                    queue.push_back(w);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LatticeWitness {
    /// A point of `M` that is not a vertex.
    Missing { point: LatticePoint },
    /// A lattice vertex outside `M`.
    Extra { point: LatticePoint },
    /// A lattice point in the relative interior of a simplex.
    Interior { point: LatticePoint, simplex: Simplex },
}

/// The lattice points of `|K|` are exactly `M`: the lattice vertices are `M`
/// and no simplex passes through a lattice point other than its vertices.
pub fn lattice_correspondence(k: &SimplicialComplex, m: &PointSet) -> Option<LatticeWitness> {
    let lattice: PointSet = k.vertices().iter().filter_map(HalfPoint::to_lattice).collect();
    if let Some(p) = m.difference(&lattice).next() {
        return Some(LatticeWitness::Missing { point: p.clone() });
    }
    if let Some(p) = lattice.difference(m).next() {
        return Some(LatticeWitness::Extra { point: p.clone() });
    }
    let simplices: Vec<&Simplex> = k.simplices.iter().filter(|s| s.dim() >= 1).collect();
    simplices.par_iter().find_map_first(|s| {
        let (lo, hi) = s.bbox();
        let ranges: Vec<(i32, i32)> =
            lo.iter().zip(&hi).map(|(&l, &h)| ((l + 1).div_euclid(2), h.div_euclid(2))).collect();
        box_points(&ranges).into_iter().find_map(|p| {
            let h = p.to_half();
            (in_open_simplex(&h.0, &s.coords())).then(|| LatticeWitness::Interior { point: p, simplex: (*s).clone() })
        })
    })
}

/// Components of the half-lattice grid of `region` minus `|K|`, under axis
/// steps.
pub fn chamber_count(k: &SimplicialComplex, region: &Region) -> usize {
    let ranges: Vec<(i32, i32)> = region.ranges().iter().map(|&(l, h)| (2 * l, 2 * h)).collect();
    let mut blocked: HashSet<Vec<i32>> = k.vertices().into_iter().map(|v| v.0).collect();
    let hits: Vec<Vec<Vec<i32>>> = k
        .simplices
        .par_iter()
        .filter(|s| s.dim() >= 1)
        .map(|s| {
            let (lo, hi) = s.bbox();
            let rs: Vec<(i32, i32)> = lo.into_iter().zip(hi).collect();
            box_points(&rs).into_iter().map(|p| p.0).filter(|x| in_open_simplex(x, &s.coords())).collect()
        })
        .collect();
    blocked.extend(hits.into_iter().flatten());
    let free: Vec<Vec<i32>> = box_points(&ranges).into_iter().map(|p| p.0).filter(|x| !blocked.contains(x)).collect();
    let free_set: HashSet<&Vec<i32>> = free.iter().collect();
    let mut seen: HashSet<&Vec<i32>> = HashSet::new();
    let mut count = 0;
    for start in &free {
        if !seen.insert(start) {
            continue;
        }
        count += 1;
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(x) = queue.pop_front() {
            for d in 0..x.len() {
                for delta in [-1, 1] {
                    let mut y = x.clone();
                    y[d] += delta;
                    if let Some(&yy) = free_set.get(&y) {
                        if seen.insert(yy) {
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: usize,
    pub vertices: Vec<Vec<i32>>,
    pub simplices: Vec<Vec<usize>>,
    pub provenance: BTreeMap<usize, Cube>,
}

pub fn to_json(k: &SimplicialComplex) -> ComplexJson {
    let vertices = k.vertices();
    let index: BTreeMap<&HalfPoint, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut simplices: Vec<Vec<usize>> =
        k.simplices.iter().map(|s| s.0.iter().map(|v| index[v]).collect::<Vec<_>>()).collect();
    simplices.iter_mut().for_each(|s| s.sort_unstable());
    simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let provenance =
        vertices.iter().enumerate().filter_map(|(i, v)| k.provenance.get(v).map(|c| (i, c.clone()))).collect();
    ComplexJson { n: k.n, vertices: vertices.into_iter().map(|v| v.0).collect(), simplices, provenance }
}

/// OFF text of the triangles of a complex in `Z^3`, plus the number of
/// maximal simplices left out because they are not triangles.
pub fn to_off(k: &SimplicialComplex) -> (String, usize) {
    let vertices = k.vertices();
    let index: BTreeMap<&HalfPoint, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let triangles: Vec<&Simplex> = k.of_dim(2).collect();
    let omitted = k
        .simplices
        .iter()
        .filter(|s| {
            s.dim() < 2 && !k.simplices.iter().any(|t| t.dim() == s.dim() + 1 && s.0.iter().all(|v| t.contains(v)))
        })
        .count();
    let mut out = String::from("OFF\n");
    let _ = writeln!(out, "{} {} 0", vertices.len(), triangles.len());
    for v in &vertices {
        let coords: Vec<String> = v.0.iter().map(|&c| half(c)).collect();
        let _ = writeln!(out, "{}", coords.join(" "));
    }
    for t in triangles {
        let _ = writeln!(out, "3 {} {} {}", index[&t.0[0]], index[&t.0[1]], index[&t.0[2]]);
    }
    (out, omitted)
}

fn half(c: i32) -> String {
    if c % 2 == 0 {
        (c / 2).to_string()
    } else {
        format!("{}", f64::from(c) / 2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjacency::AdjacencySpec;

    fn p(c: &[i32]) -> LatticePoint {
        LatticePoint(c.to_vec())
    }

    fn h(c: &[i32]) -> HalfPoint {
        HalfPoint(c.to_vec())
    }

    fn set(pts: &[&[i32]]) -> PointSet {
        pts.iter().map(|c| p(c)).collect()
    }

    fn pair(n: usize, alpha_full: bool, beta_full: bool) -> AdjacencyPair {
        let mk = |full| if full { AdjacencySpec::full(n) } else { AdjacencySpec::axis(n) };
        AdjacencyPair::new(mk(alpha_full), mk(beta_full)).unwrap()
    }

    fn square() -> Cube {
        Cube::full(p(&[0, 0]))
    }

    fn rect(w: i32, h: i32) -> PointSet {
        let mut s = PointSet::new();
        for x in 0..w {
            for y in 0..h {
                if x == 0 || y == 0 || x == w - 1 || y == h - 1 {
                    s.insert(p(&[x, y]));
                }
            }
        }
        s
    }

    #[test]
    fn t_examples() {
        let edge = Cube::new(p(&[0, 0]), vec![0]).unwrap();
        assert!(test_t(&edge, &set(&[&[0, 0], &[1, 0]]), &pair(2, false, false)));
        assert!(test_t(&square(), &set(&[&[0, 0], &[1, 1]]), &pair(2, true, false)));
        assert!(!test_t(&square(), &PointSet::new(), &pair(2, true, true)));
        // a face of M counts even when its diagonals are not α-adjacent
        let face = set(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        assert!(test_t(&square(), &face, &pair(2, false, true)));
    }

    #[test]
    fn single_edge_in_square() {
        let k = build_complex_in_cube(&square(), &set(&[&[0, 0], &[1, 0]]), &pair(2, true, false));
        assert_eq!(k.vertices(), vec![h(&[0, 0]), h(&[1, 0]), h(&[2, 0])]);
        assert_eq!(k.f_vector(), vec![3, 2]);
    }

    #[test]
    fn three_corners_give_triangles_then_a_polyline() {
        let m = set(&[&[0, 0], &[1, 0], &[1, 1]]);
        let pr = pair(2, true, false);
        let k = build_complex_in_cube(&square(), &m, &pr);
        assert!(k.vertices().contains(&h(&[1, 1])));
        assert!(k.of_dim(2).count() > 0);
        let reduced = reduce_complex(&k, &m, &pr);
        assert!(!reduced.vertices().contains(&h(&[1, 1])));
        assert_eq!(reduced.f_vector(), vec![5, 4]);
        assert!(verify_complex_axioms(&k).holds);
    }

    #[test]
    fn empty_and_single_point() {
        let pr = pair(2, false, true);
        assert!(build_complex(&PointSet::new(), &pr).is_empty());
        let one = build_complex(&set(&[&[3, 4]]), &pr);
        assert_eq!(one.len(), 1);
        assert_eq!(euler_characteristic(&one), 1);
    }

    #[test]
    fn shared_edges_are_deduplicated() {
        let pr = pair(2, false, true);
        let k = build_complex(&set(&[&[0, 0], &[1, 0]]), &pr);
        assert_eq!(k.of_dim(1).count(), 2);
    }

    #[test]
    fn ring_complex() {
        let pr = pair(2, false, true);
        let m = rect(5, 5);
        let k = build_complex(&m, &pr);
        let kr = reduce_complex(&k, &m, &pr);
        assert!(verify_complex_axioms(&k).holds);
        assert!(verify_complex_axioms(&kr).holds);
        assert_eq!(euler_characteristic(&kr), 0);
        assert_eq!(euler_characteristic(&k), euler_characteristic(&kr));
        assert_eq!(skeleton_components(&kr).len(), 1);
        assert!(lattice_correspondence(&k, &m).is_none());
        assert_eq!(kr.dim(), Some(1));
        let r = Region::around(&m, 2, 2);
        assert_eq!(chamber_count(&kr, &r), 2);
    }

    #[test]
    fn crossing_edges_are_rejected() {
        let mut k = SimplicialComplex::empty(2);
        k.insert_closed(Simplex::new(vec![h(&[0, 0]), h(&[2, 2])]));
        k.insert_closed(Simplex::new(vec![h(&[0, 2]), h(&[2, 0])]));
        let r = verify_complex_axioms(&k);
        assert!(!r.holds);
        assert!(matches!(r.witness, Some(AxiomWitness::Overlap { .. })));
        assert!(verify_complex_axioms(&SimplicialComplex::empty(2)).holds);
    }

    #[test]
    fn missing_face_is_reported() {
        let mut k = SimplicialComplex::empty(2);
        k.simplices.insert(Simplex::new(vec![h(&[0, 0]), h(&[2, 0])]));
        k.simplices.insert(Simplex::vertex(h(&[0, 0])));
        let r = verify_complex_axioms(&k);
        assert!(matches!(r.witness, Some(AxiomWitness::MissingFace { .. })));
    }

    #[test]
    fn two_components() {
        let pr = pair(2, false, true);
        let k = build_complex(&set(&[&[0, 0], &[5, 5]]), &pr);
        assert_eq!(skeleton_components(&k).len(), 2);
        assert!(skeleton_components(&SimplicialComplex::empty(2)).is_empty());
    }

    #[test]
    fn trace_matches_reduction() {
        let pr = pair(2, false, true);
        let m = rect(4, 3);
        let trace = build_trace(&m, &pr);
        let k = build_complex(&m, &pr);
        let kr = reduce_complex(&k, &m, &pr);
        for rec in &trace {
            let b = rec.cube.barycenter();
            assert_eq!(k.provenance.contains_key(&b), rec.vertex);
            assert_eq!(rec.vertex && !kr.provenance.contains_key(&b), rec.removed);
            assert_eq!(rec.removed, rec.vertex && rec.beta_components == 1);
        }
    }

    #[test]
    fn off_export() {
        let mut k = SimplicialComplex::empty(3);
        k.insert_closed(Simplex::new(vec![h(&[0, 0, 0]), h(&[1, 0, 0]), h(&[0, 1, 0])]));
        k.insert_closed(Simplex::new(vec![h(&[4, 4, 4]), h(&[6, 4, 4])]));
        let (text, omitted) = to_off(&k);
        assert!(text.starts_with("OFF\n5 1 0\n"));
        assert!(text.contains("0.5 0 0"));
        assert_eq!(omitted, 1);
    }

    #[test]
    fn json_export_indexes_vertices() {
        let pr = pair(2, false, true);
        let k = build_complex(&set(&[&[0, 0], &[1, 0]]), &pr);
        let j = to_json(&k);
        assert_eq!(j.vertices.len(), 3);
        assert_eq!(j.simplices.len(), 5);
        assert_eq!(j.provenance.len(), 3);
        assert_eq!(j.provenance[&1], Cube::new(p(&[0, 0]), vec![0]).unwrap());
    }
}
