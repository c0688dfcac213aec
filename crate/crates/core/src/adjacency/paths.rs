//! Paths, elementary `N`-equivalence and a bounded search for `N`-simple
//! connectivity.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{AdjacencySpec, PointSet};
use crate::lattice::LatticePoint;

/// Consecutive members are adjacent. A single point is a path.
pub fn is_path(spec: &AdjacencySpec, seq: &[LatticePoint]) -> bool {
    !seq.is_empty() && seq.windows(2).all(|w| spec.adjacent(&w[0], &w[1]))
}

/// `w` and `w2` share a nonempty prefix and a nonempty suffix, and the
/// middle runs in between, of lengths `k` and `n`, satisfy
/// `1 <= k + n <= big_n + 2`. Identical paths are always equivalent.
pub fn elementary_equivalent(w: &[LatticePoint], w2: &[LatticePoint], big_n: usize) -> bool {
    if w == w2 {
        return true;
    }
    middle_cost(w, w2).is_some_and(|cost| (1..=big_n + 2).contains(&cost))
}

/// Smallest `k + n` over all prefix/suffix decompositions.
fn middle_cost<T: PartialEq>(w: &[T], w2: &[T]) -> Option<usize> {
    let shortest = w.len().min(w2.len());
    let prefix = w.iter().zip(w2).take_while(|(a, b)| a == b).count();
    let suffix = w.iter().rev().zip(w2.iter().rev()).take_while(|(a, b)| a == b).count();
    if prefix == 0 || suffix == 0 {
        return None;
    }
    let shared = (prefix + suffix).min(shortest);
    if shared < 2 {
        return None;
    }
    Some(w.len() + w2.len() - 2 * shared)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Contractibility {
    Yes,
    Unknown,
}

/// Semi-decides whether every cycle of `s` is `N`-equivalent to a point.
///
/// `π_1` of the adjacency graph is generated by the fundamental loops of a
/// breadth-first spanning tree, so only those loops are contracted. Each
/// loop is rewritten by best-first search over elementary moves that do not
/// lengthen it; `budget` caps the number of expanded states per loop.
/// Consecutive repeated points are collapsed after every move, so a loop
/// is contracted once it is a single point.
///
/// Disconnected inputs report `Unknown`.
pub fn n_simply_connected_bounded(spec: &AdjacencySpec, s: &PointSet, big_n: usize, budget: usize) -> Contractibility {
    let pts: Vec<&LatticePoint> = s.iter().collect();
    if pts.len() <= 1 {
        return Contractibility::Yes;
    }
    let index: BTreeMap<&LatticePoint, usize> = pts.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let adj: Vec<Vec<usize>> = pts
        .iter()
        .map(|p| {
            let mut v: Vec<usize> = spec.neighbors(p).iter().filter_map(|q| index.get(q).copied()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let graph = Graph { adj };

    let mut parent = vec![usize::MAX; pts.len()];
    parent[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &v in &graph.adj[u] {
            if parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    if parent.contains(&usize::MAX) {
        return Contractibility::Unknown;
    }
    let to_root = |mut v: usize| {
        let mut path = vec![v];
        while v != 0 {
            v = parent[v];
            path.push(v);
        }
        path
    };

    for u in 0..pts.len() {
        for &v in &graph.adj[u] {
            if v <= u || parent[v] == u || parent[u] == v {
                continue;
            }
            let mut lp = to_root(u);
            lp.reverse();
            lp.extend(to_root(v));
            if !graph.contract(normalize(lp), big_n, budget) {
                return Contractibility::Unknown;
            }
        }
    }
    Contractibility::Yes
}

struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    fn contract(&self, start: Vec<usize>, big_n: usize, budget: usize) -> bool {
        if start.len() == 1 {
            return true;
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut heap = BinaryHeap::new();
        seen.insert(start.clone());
        heap.push(Reverse((start.len(), start)));
        let mut expanded = 0usize;
        while let Some(Reverse((_, w))) = heap.pop() {
            if expanded >= budget {
                return false;
            }
            expanded += 1;
            for next in self.moves(&w, big_n) {
                if next.len() == 1 {
                    return true;
                }
                if seen.insert(next.clone()) {
                    heap.push(Reverse((next.len(), next)));
                }
            }
        }
        false
    }

    /// All non-lengthening elementary rewrites of the loop `w`.
    fn moves(&self, w: &[usize], big_n: usize) -> Vec<Vec<usize>> {
        let limit = big_n + 2;
        let mut out = Vec::new();
        for i in 0..w.len() - 1 {
            for j in i + 1..w.len() {
                let k = j - i - 1;
                if k > limit {
                    break;
                }
                for n in 0..=k.min(limit - k) {
                    if k + n == 0 {
                        continue;
                    }
                    for mid in self.runs(w[i], w[j], n) {
                        if n == k && mid[..] == w[i + 1..j] {
                            continue;
                        }
                        let mut next = w[..=i].to_vec();
                        next.extend(mid);
                        next.extend_from_slice(&w[j..]);
                        out.push(normalize(next));
                    }
                }
            }
        }
        out
    }

    /// Paths `y_1..y_n` with `from ~ y_1`, `y_i ~ y_{i+1}`, `y_n ~ to`.
    fn runs(&self, from: usize, to: usize, n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return if from == to || self.adjacent(from, to) { vec![Vec::new()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        self.extend_runs(from, to, n, &mut cur, &mut out);
        out
    }

    fn extend_runs(&self, last: usize, to: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            if self.adjacent(last, to) {
                out.push(cur.clone());
            }
            return;
        }
        for &y in &self.adj[last] {
            cur.push(y);
            self.extend_runs(y, to, n, cur, out);
            cur.pop();
        }
    }
}

fn normalize(mut w: Vec<usize>) -> Vec<usize> {
    w.dedup();
    w
}
