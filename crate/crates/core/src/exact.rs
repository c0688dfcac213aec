//! Exact rational geometry on integer coordinates: affine rank and a small
//! simplex-method LP used to decide whether two open simplices meet.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Rank of an integer matrix, by fraction-free elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| i128::from(v)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let prow = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if row[c] != 0 {
                let f = row[c];
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v = *v * prow[c] - f * pv;
                }
                let g = row.iter().fold(0i128, |g, &v| gcd(g, v.abs()));
                if g > 1 {
                    row.iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Points are affinely independent iff the differences to the first one have
/// full rank.
pub fn affinely_independent(points: &[Vec<i32>]) -> bool {
    let Some(first) = points.first() else { return true };
    let diffs: Vec<Vec<i64>> =
        points[1..].iter().map(|p| p.iter().zip(first).map(|(a, b)| i64::from(a - b)).collect()).collect();
    rank(&diffs) == diffs.len()
}

/// Maximum of `c·x` subject to `A x = b`, `x >= 0`; `None` when infeasible.
/// Callers guarantee boundedness. Bland's rule keeps the method finite.
pub fn lp_max(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> Option<Q> {
    let rows = a.len();
    let vars = c.len();
    let width = vars + rows;
    let mut tab: Vec<Vec<Q>> = Vec::with_capacity(rows);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut t: Vec<Q> = row.iter().map(|v| if flip { -v.clone() } else { v.clone() }).collect();
        t.extend((0..rows).map(|j| if i == j { Q::one() } else { Q::zero() }));
        t.push(if flip { -b[i].clone() } else { b[i].clone() });
        tab.push(t);
    }
    let mut basis: Vec<usize> = (vars..width).collect();

    let phase1: Vec<Q> = (0..width).map(|j| if j < vars { Q::zero() } else { -Q::one() }).collect();
    run(&mut tab, &mut basis, &phase1, width);
    if objective(&tab, &basis, &phase1).is_negative() {
        return None;
    }
    // push artificials out of the basis where a real column can replace them
    for i in 0..rows {
        if basis[i] >= vars {
            if let Some(j) = (0..vars).find(|&j| !tab[i][j].is_zero()) {
                pivot(&mut tab, &mut basis, i, j);
            }
        }
    }
    let mut phase2: Vec<Q> = c.to_vec();
    phase2.extend((0..rows).map(|_| Q::zero()));
    run(&mut tab, &mut basis, &phase2, vars);
    Some(objective(&tab, &basis, &phase2))
}

fn objective(tab: &[Vec<Q>], basis: &[usize], cost: &[Q]) -> Q {
    let rhs = tab.first().map_or(0, |r| r.len() - 1);
    basis.iter().zip(tab).map(|(&b, row)| &cost[b] * &row[rhs]).fold(Q::zero(), |acc, v| acc + v)
}

/// Primal simplex; only columns below `allowed` may enter.
fn run(tab: &mut [Vec<Q>], basis: &mut [usize], cost: &[Q], allowed: usize) {
    let Some(rhs) = tab.first().map(|r| r.len() - 1) else { return };
    loop {
        let entering = (0..allowed).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let reduced = basis.iter().zip(tab.iter()).fold(cost[j].clone(), |acc, (&b, row)| acc - &cost[b] * &row[j]);
            reduced.is_positive()
        });
        let Some(j) = entering else { return };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..tab.len() {
            if tab[i][j].is_positive() {
                let ratio = &tab[i][rhs] / &tab[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((i, _)) = leave else { return };
        pivot(tab, basis, i, j);
    }
}

fn pivot(tab: &mut [Vec<Q>], basis: &mut [usize], i: usize, j: usize) {
    let p = tab[i][j].clone();
    for v in tab[i].iter_mut() {
        *v /= &p;
    }
    let prow = tab[i].clone();
    for (r, row) in tab.iter_mut().enumerate() {
        if r != i && !row[j].is_zero() {
            let f = row[j].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v -= &f * pv;
            }
        }
    }
    basis[i] = j;
}

/// Do the relative interiors of the simplices spanned by `a` and `b` meet?
///
/// Maximizes `t` with every barycentric weight `>= t`; the open simplices
/// meet iff the optimum is positive.
pub fn open_simplices_meet(a: &[Vec<i32>], b: &[Vec<i32>]) -> bool {
    let n = a.first().or(b.first()).map_or(0, Vec::len);
    if a.is_empty() || b.is_empty() {
        return false;
    }
    // open boxes must overlap on every axis
    for d in 0..n {
        let (alo, ahi) = span(a, d);
        let (blo, bhi) = span(b, d);
        let touch = if alo == ahi || blo == bhi { alo.max(blo) <= ahi.min(bhi) } else { alo.max(blo) < ahi.min(bhi) };
        if !touch {
            return false;
        }
    }
    // variables: t, s_1..s_|a|, r_1..r_|b|, with lambda_i = t + s_i, mu_j = t + r_j
    let vars = 1 + a.len() + b.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut row = vec![q(a.len() as i64)];
    row.extend((0..a.len()).map(|_| Q::one()));
    row.extend((0..b.len()).map(|_| Q::zero()));
    rows.push(row);
    rhs.push(Q::one());
    let mut row = vec![q(b.len() as i64)];
    row.extend((0..a.len()).map(|_| Q::zero()));
    row.extend((0..b.len()).map(|_| Q::one()));
    rows.push(row);
    rhs.push(Q::one());
    for d in 0..n {
        let sa: i64 = a.iter().map(|p| i64::from(p[d])).sum();
        let sb: i64 = b.iter().map(|p| i64::from(p[d])).sum();
        let mut row = vec![q(sa - sb)];
        row.extend(a.iter().map(|p| q(p[d].into())));
        row.extend(b.iter().map(|p| q(-i64::from(p[d]))));
        rows.push(row);
        rhs.push(Q::zero());
    }
    let mut cost = vec![Q::zero(); vars];
    cost[0] = Q::one();
    lp_max(&rows, &rhs, &cost).is_some_and(|t| t.is_positive())
}

fn span(pts: &[Vec<i32>], d: usize) -> (i32, i32) {
    let lo = pts.iter().map(|p| p[d]).min().unwrap();
    let hi = pts.iter().map(|p| p[d]).max().unwrap();
    (lo, hi)
}

/// Is `x` in the relative interior of the simplex on `vertices`?
pub fn in_open_simplex(x: &[i32], vertices: &[Vec<i32>]) -> bool {
    open_simplices_meet(&[x.to_vec()], vertices)
}
