//! End-to-end acceptance suite. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line; exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use common::*;
use digitop::adjacency::{complement_components, components, is_connected};
use digitop::complex::{
    build_complex, euler_characteristic, lattice_correspondence, reduce_complex, skeleton_components,
    verify_complex_axioms,
};
use digitop::jordan::jordan_check;
use digitop::lattice::box_points;
use digitop::manifold::{check_manifold, is_good_pair, ManifoldWitness, Ternary};
use digitop::pseudomanifold::is_pseudomanifold;
use digitop::separation::{beta_neighbor_lower_bound, cube_complement_components};
use digitop::{AdjacencySpec, Cube, LatticePoint, PointSet, Region};

/// Seed for every sampled criterion.
const SEED: u64 = 0x5eed_2026;
const CHAINS: usize = 200;
const BOUND_SAMPLES: usize = 500;
/// Bounded contraction search used for the planar good-pair table.
const TABLE_N: usize = 6;
const TABLE_BUDGET: usize = 200_000;

type Outcome = Result<String, String>;
type Check = Box<dyn FnOnce() -> Outcome>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn linf(d: &[i32]) -> i32 {
    d.iter().map(|c| c.abs()).max().unwrap_or(0)
}

fn l1(d: &[i32]) -> i32 {
    d.iter().map(|c| c.abs()).sum()
}

/// Adjacency from the metric definitions, independent of the offset tables.
fn oracle_adjacent(full: bool, p: &LatticePoint, q: &LatticePoint) -> bool {
    let d = p.diff(q);
    if full {
        linf(&d) == 1
    } else {
        l1(&d) == 1
    }
}

fn c1_cardinalities() -> Outcome {
    for n in 2..=4usize {
        for p in
            [LatticePoint::origin(n), LatticePoint(vec![7; n]), LatticePoint((0..n as i32).map(|i| -3 * i).collect())]
        {
            let pi = AdjacencySpec::axis(n).neighbors(&p);
            let om = AdjacencySpec::full(n).neighbors(&p);
            ensure(pi.len() == 2 * n, || format!("|π({p})| = {} in Z^{n}", pi.len()))?;
            ensure(om.len() == 3usize.pow(n as u32) - 1, || format!("|ω({p})| = {} in Z^{n}", om.len()))?;
            let set: BTreeSet<_> = om.iter().collect();
            ensure(set.len() == om.len() && !set.contains(&p), || format!("ω({p}) has repeats or p itself"))?;
        }
    }
    Ok("n = 2, 3, 4: |π| = 2n, |ω| = 3^n - 1".into())
}

fn c2_connectivity() -> Outcome {
    for n in 2..=4usize {
        let pi = AdjacencySpec::axis(n);
        let ring: Vec<LatticePoint> = AdjacencySpec::full(n).neighbors(&LatticePoint::origin(n));
        let ring_set: PointSet = ring.iter().cloned().collect();
        ensure(is_connected(&pi, &ring_set), || format!("ω(0) not π-connected in Z^{n}"))?;
        ensure(oracle_count(&pi, &ring) == 1, || format!("oracle: ω(0) not π-connected in Z^{n}"))?;
        let cube5 = box_points(&vec![(-2, 2); n]);
        let cube5_set: PointSet = cube5.iter().cloned().collect();
        ensure(is_connected(&pi, &cube5_set), || format!("5^{n} box not π-connected"))?;
        ensure(oracle_count(&pi, &cube5) == 1, || format!("oracle: 5^{n} box not π-connected"))?;
    }
    Ok("ω(0) and 5^n boxes are π-connected for n = 2, 3, 4".into())
}

fn c3_good_pairs() -> Outcome {
    let a = AdjacencySpec::axis(2);
    let f = AdjacencySpec::full(2);
    let run = |alpha: &AdjacencySpec, beta: &AdjacencySpec| {
        is_good_pair(&pair(alpha.clone(), beta.clone()), TABLE_N, TABLE_BUDGET).unwrap()
    };

    let g48 = run(&a, &f);
    ensure(g48.verdict == Ternary::Yes, || format!("(4,8): {:?}", g48.verdict))?;

    let g84 = run(&f, &a);
    let rec84 = match g84.verdict {
        Ternary::Yes => "yes".to_string(),
        Ternary::Unknown if g84.double_points.is_empty() && g84.separating.neighborhood.certified() => {
            "unknown (contractibility only)".to_string()
        }
        v => return Err(format!("(8,4): {v:?}")),
    };

    let p88 = pair(f.clone(), f.clone());
    let g88 = is_good_pair(&p88, TABLE_N, TABLE_BUDGET).unwrap();
    ensure(g88.verdict == Ternary::No && !g88.double_points.is_empty(), || "(8,8) has no double-point witness".into())?;
    for w in &g88.double_points {
        // p ∈ β(z), q = p + τ, r = z - τ, α-edges p–q and r–q, β-edge z–r
        let ok = oracle_adjacent(true, &w.z, &w.p)
            && oracle_adjacent(false, &w.z, &w.q)
            && oracle_adjacent(true, &w.p, &w.q)
            && oracle_adjacent(true, &w.z, &w.r)
            && oracle_adjacent(false, &w.p, &w.r)
            && l1(&w.tau.offset) == 1
            && w.tau.apply(&w.p) == w.q
            && w.tau.apply(&w.r) == w.z
            && oracle_adjacent(true, &w.r, &w.q);
        ensure(ok, || format!("(8,8) witness does not replay: {w:?}"))?;
    }

    let g44 = run(&a, &a);
    ensure(g44.verdict == Ternary::No, || format!("(4,4): {:?}", g44.verdict))?;
    let sphere: Vec<LatticePoint> = a.neighbors(&LatticePoint::origin(2));
    match g44.separating.neighborhood.first_failure() {
        Some((_, v)) => match &v.witness {
            Some(ManifoldWitness::Disconnected { a: x, b: y }) => {
                ensure(oracle_count(&a, &sphere) > 1 && sphere.contains(x) && sphere.contains(y), || {
                    "(4,4) witness does not replay".into()
                })?
            }
            w => return Err(format!("(4,4) unexpected witness {w:?}")),
        },
        None => return Err("(4,4) neighborhood certified".into()),
    }
    Ok(format!(
        "(4,8) yes, (8,4) {rec84}, (8,8) no with {} double points, (4,4) no; N = {TABLE_N}",
        g88.double_points.len()
    ))
}

fn c4_certification() -> Outcome {
    let mut failures = Vec::new();
    let mut deletions = 0usize;
    let cases = [
        ("rect 5x5 (8,4)", rect(5, 5), p8_4()),
        ("rect 7x3 (8,4)", rect(7, 3), p8_4()),
        ("box 3x3x3 (6,26)", boxs(3, 3, 3), p6_26()),
        ("box 5x4x3 (6,26)", boxs(5, 4, 3), p6_26()),
    ];
    for (name, m, pr) in &cases {
        let report = check_manifold(m, pr).unwrap();
        if let Some((prop, v)) = report.first_failure() {
            failures.push(format!("{name}: {prop} fails ({})", serde_json::to_string(&v.witness).unwrap()));
        }
        for p in m {
            let mut smaller = m.clone();
            smaller.remove(p);
            deletions += 1;
            if check_manifold(&smaller, pr).unwrap().certified() {
                failures.push(format!("{name}: still certified without {p}"));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("4 sets certified, {deletions} single-point deletions all rejected"))
    } else {
        Err(failures.join("; "))
    }
}

fn c5_two_components() -> Outcome {
    let corpus = certified_corpus();
    for inst in &corpus {
        let n = inst.pair.n();
        let shell: PointSet =
            inst.m.iter().flat_map(|p| AdjacencySpec::full(n).neighbors(p)).filter(|q| !inst.m.contains(q)).collect();
        let local = components(&inst.pair.beta, &shell).count();
        let shell_vec: Vec<LatticePoint> = shell.iter().cloned().collect();
        ensure(local == 2 && oracle_count(&inst.pair.beta, &shell_vec) == 2, || {
            format!("{}: ω(M)\\M has {local} components", inst.name)
        })?;

        let lab = complement_components(&inst.pair.beta, &inst.m, &Region::around(&inst.m, n, 2)).unwrap();
        ensure(lab.count() == 2, || format!("{}: complement has {} components", inst.name, lab.count()))?;
        if let Some(expected) = inst.inside {
            let inside: usize = lab.finite_components().map(|c| c.members.len()).sum();
            ensure(inside == expected, || format!("{}: inside {inside}, expected {expected}", inst.name))?;
        }
    }
    // closed forms, for every size the generators accept in a small range
    for w in 3..=7 {
        for h in 3..=6 {
            let m = rect(w, h);
            let lab = complement_components(&AdjacencySpec::full(2), &m, &Region::around(&m, 2, 2)).unwrap();
            let inside: usize = lab.finite_components().map(|c| c.members.len()).sum();
            let want = ((w - 2) * (h - 2)) as usize;
            ensure(lab.count() == 2 && inside == want, || format!("rect {w}x{h}: inside {inside}, expected {want}"))?;
        }
    }
    for (w, h, d) in [(3, 3, 3), (4, 3, 3), (4, 4, 4), (5, 4, 3), (5, 5, 4)] {
        let m = boxs(w, h, d);
        let lab = complement_components(&AdjacencySpec::full(3), &m, &Region::around(&m, 3, 2)).unwrap();
        let inside: usize = lab.finite_components().map(|c| c.members.len()).sum();
        let want = ((w - 2) * (h - 2) * (d - 2)) as usize;
        ensure(lab.count() == 2 && inside == want, || format!("box {w}x{h}x{d}: inside {inside}, expected {want}"))?;
    }
    Ok(format!("{} corpus instances; interiors match (w-2)(h-2) and (w-2)(h-2)(d-2)", corpus.len()))
}

fn c6_pseudomanifold() -> Outcome {
    let corpus = certified_corpus();
    for inst in &corpus {
        let n = inst.pair.n();
        let k = reduce_complex(&build_complex(&inst.m, &inst.pair), &inst.m, &inst.pair);
        let r = is_pseudomanifold(&k, n - 1);
        ensure(r.holds(), || format!("{}: {}", inst.name, serde_json::to_string(&r).unwrap()))?;
        ensure(k.of_dim(n - 1).next().is_some(), || format!("{}: no top simplices", inst.name))?;
    }
    Ok(format!("{} instances, K' is an (n-1)-pseudomanifold", corpus.len()))
}

fn c7_euler() -> Outcome {
    let chi =
        |m: &PointSet, pr: &digitop::AdjacencyPair| euler_characteristic(&reduce_complex(&build_complex(m, pr), m, pr));
    let mut seen = Vec::new();
    for (w, h) in [(5, 5), (7, 3), (6, 4), (3, 3), (8, 5)] {
        let c = chi(&rect(w, h), &p4_8());
        ensure(c == 0, || format!("rect {w}x{h}: χ = {c}"))?;
        seen.push(format!("rect {w}x{h}"));
    }
    for (w, h, d) in [(3, 3, 3), (5, 4, 3), (4, 4, 4)] {
        let c = chi(&boxs(w, h, d), &p6_26());
        ensure(c == 2, || format!("box {w}x{h}x{d}: χ = {c}"))?;
        seen.push(format!("box {w}x{h}x{d}"));
    }
    for (n, pr) in [(2, p4_8()), (2, p8_4()), (3, p6_26()), (3, p26_6())] {
        let m: PointSet = [LatticePoint::origin(n)].into_iter().collect();
        let c = chi(&m, &pr);
        ensure(c == 1, || format!("single point in Z^{n} under {}: χ = {c}", pr.label()))?;
    }
    Ok(format!("χ = 0 on rects, 2 on boxes, 1 on a point ({})", seen.join(", ")))
}

fn c8_jordan() -> Outcome {
    let corpus = certified_corpus();
    for inst in &corpus {
        let a = jordan_check(&inst.m, &inst.pair, 2).map_err(|e| format!("{}: {e}", inst.name))?;
        let b = jordan_check(&inst.m, &inst.pair, 4).map_err(|e| format!("{}: {e}", inst.name))?;
        ensure(a.holds() && a.components == 2 && a.common_boundary && a.no_simple_points, || {
            format!("{}: {a:?}", inst.name)
        })?;
        ensure(a == b, || format!("{}: margin 2 and 4 disagree", inst.name))?;
    }
    Ok(format!("{} instances, identical at margins 2 and 4", corpus.len()))
}

fn c9_cube_sequence(rng: &mut StdRng) -> Outcome {
    let instances: Vec<_> = certified_corpus().into_iter().filter(|i| i.pair.n() == 3).collect();
    let mut steps = 0usize;
    for _ in 0..CHAINS {
        let inst = instances.choose(rng).unwrap();
        let pts: Vec<&LatticePoint> = inst.m.iter().collect();
        // start at a point of M or one of its ω-neighbors
        let anchor = pts.choose(rng).unwrap();
        let start = if rng.gen_bool(0.5) {
            (*anchor).clone()
        } else {
            AdjacencySpec::full(3).neighbors(anchor).choose(rng).unwrap().clone()
        };
        let mut cube = Cube::point(start);
        let mut prev = cube_complement_components(&inst.pair.beta, &cube, &inst.m).count();
        let mut chain = vec![cube.to_string()];
        while cube.dim() < 3 {
            cube = cube.supercubes().choose(rng).unwrap().clone();
            chain.push(cube.to_string());
            let next = cube_complement_components(&inst.pair.beta, &cube, &inst.m).count();
            steps += 1;
            ensure(next + 1 >= prev, || format!("{}: {prev} -> {next} along {}", inst.name, chain.join(" ⊂ ")))?;
            prev = next;
        }
    }
    Ok(format!("{CHAINS} chains, {steps} steps, no drop larger than one"))
}

fn c10_neighbor_bound(rng: &mut StdRng) -> Outcome {
    let mut accepted = 0usize;
    let mut excluded = 0usize;
    let mut violations = 0usize;
    let mut first = None;
    while accepted < BOUND_SAMPLES {
        let k = rng.gen_range(1..=4usize);
        let full = rng.gen_bool(0.5);
        let beta = if full { AdjacencySpec::full(k) } else { AdjacencySpec::axis(k) };
        let cube = Cube::full(LatticePoint::origin(k));
        let m: PointSet = cube.vertices().into_iter().filter(|_| rng.gen_bool(0.5)).collect();
        let lab = cube_complement_components(&beta, &cube, &m);
        if lab.count() == 0 {
            excluded += 1;
            continue;
        }
        let comp: Vec<&LatticePoint> = lab.components()[rng.gen_range(0..lab.count())].members.iter().collect();
        let l = comp.len();
        let mdim = (l as f64).log2().ceil() as usize;
        // the component must fit in an m-dimensional face
        let spread = (0..k).filter(|&i| comp.iter().any(|p| p.0[i] != comp[0].0[i])).count();
        if spread > mdim {
            excluded += 1;
            continue;
        }
        accepted += 1;
        let touched = m.iter().filter(|q| comp.iter().any(|z| oracle_adjacent(full, z, q))).count() as i64;
        let bound = beta_neighbor_lower_bound(k as u32, l as u64);
        if touched < bound {
            violations += 1;
            first.get_or_insert_with(|| {
                let pts: Vec<String> = comp.iter().map(|p| p.to_string()).collect();
                format!(
                    "k = {k}, β = {}, component {{{}}} has {touched} β-neighbors, bound {bound}",
                    beta.name(),
                    pts.join(" ")
                )
            });
        }
    }
    match first {
        None => Ok(format!("{accepted} samples within the bound ({excluded} draws excluded by the premises)")),
        Some(w) => Err(format!("{violations} of {accepted} samples below the bound; first: {w}")),
    }
}

fn c11_complex_axioms() -> Outcome {
    let corpus = certified_corpus();
    for inst in &corpus {
        let n = inst.pair.n();
        let k = build_complex(&inst.m, &inst.pair);
        let kr = reduce_complex(&k, &inst.m, &inst.pair);
        for (label, c) in [("K", &k), ("K'", &kr)] {
            let ax = verify_complex_axioms(c);
            ensure(ax.holds, || format!("{} {label}: {:?}", inst.name, ax.witness))?;
            if let Some(w) = lattice_correspondence(c, &inst.m) {
                return Err(format!("{} {label}: {w:?}", inst.name));
            }
        }
        ensure(euler_characteristic(&k) == euler_characteristic(&kr), || format!("{}: χ differs", inst.name))?;
        ensure(skeleton_components(&k).len() == skeleton_components(&kr).len(), || {
            format!("{}: components differ", inst.name)
        })?;
        ensure(kr.dim().is_none_or(|d| d < n), || format!("{}: K' has an {n}-simplex", inst.name))?;
    }
    Ok(format!(
        "{} instances: axioms, χ and components of K and K' agree, no n-simplices, lattice points match",
        corpus.len()
    ))
}

fn c12_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_digitop");
    let run = |args: &[&str]| Command::new(bin).args(args).current_dir(dir.path()).output().unwrap();
    let gen = run(&["generate", "--kind", "box-surface", "--size", "3,3,3", "-o", "box.txt"]);
    ensure(gen.status.success(), || "generate failed".into())?;
    let base = ["--points", "box.txt", "--alpha", "axis", "--beta", "full", "--format", "json"];
    let mut commands: Vec<Vec<&str>> =
        ["verify-manifold", "check-separation", "build", "check-pseudomanifold", "euler", "jordan", "simple-points"]
            .iter()
            .map(|c| std::iter::once(*c).chain(base).collect())
            .collect();
    commands.push(vec!["good-pair", "--n", "2", "--alpha", "full", "--beta", "full", "--format", "json"]);
    commands.push(vec!["generate", "--kind", "sphere-shell", "--radius", "3", "--format", "json"]);
    for args in &commands {
        let a = run(args);
        let b = run(args);
        ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || format!("{} output differs", args[0]))?;
    }
    Ok(format!("{} commands byte-identical across two runs", commands.len()))
}

fn main() {
    let criteria: Vec<(&str, Check)> = vec![
        ("1 neighborhood sizes", Box::new(c1_cardinalities)),
        ("2 π-connectivity", Box::new(c2_connectivity)),
        ("3 good-pair table", Box::new(c3_good_pairs)),
        ("4 manifold certification", Box::new(c4_certification)),
        ("5 two complement components", Box::new(c5_two_components)),
        ("6 pseudomanifold", Box::new(c6_pseudomanifold)),
        ("7 Euler characteristics", Box::new(c7_euler)),
        ("8 Jordan battery", Box::new(c8_jordan)),
        ("9 cube sequences", Box::new(|| c9_cube_sequence(&mut StdRng::seed_from_u64(SEED)))),
        ("10 β-neighbor bound", Box::new(|| c10_neighbor_bound(&mut StdRng::seed_from_u64(SEED)))),
        ("11 complex axioms", Box::new(c11_complex_axioms)),
        ("12 determinism", Box::new(c12_determinism)),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
