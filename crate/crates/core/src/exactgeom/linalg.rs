//! Dense exact linear algebra over the rationals.

use super::rational::Rational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub type QMatrix = Vec<Vec<Rational>>;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    if !m[r][j].is_zero() {
                        let v = &f * &m[r][j];
                        m[i][j] -= v;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &QMatrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Rank of a sparse matrix given as (row, col, value) triples; duplicates add up.
pub fn sparse_rank(entries: &[(usize, usize, Rational)], nrows: usize) -> usize {
    let mut rows: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); nrows];
    for (r, c, v) in entries {
        *rows[*r].entry(*c).or_insert_with(Rational::zero) += v;
    }
    for row in rows.iter_mut() {
        row.retain(|_, v| !v.is_zero());
    }
    rows.sort_by_key(|r| r.len());
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    for mut row in rows {
        loop {
            let Some((&lead, _)) = row.iter().next() else { break };
            match pivots.get(&lead) {
                Some(p) => {
                    let f = row[&lead].clone();
                    for (c, v) in p {
                        let e = row.entry(*c).or_insert_with(Rational::zero);
                        *e -= &f * v;
                        if e.is_zero() {
                            row.remove(c);
                        }
                    }
                }
                None => {
                    let inv = row[&lead].recip();
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Basis of the right kernel {x : m·x = 0}; `cols` is needed when m has no rows.
pub fn kernel(m: &QMatrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let piv = rref(&mut a);
    let mut basis = Vec::new();
    for free in 0..cols {
        if piv.contains(&free) {
            continue;
        }
        let mut x = vec![Rational::zero(); cols];
        x[free] = Rational::one();
        for (r, &pc) in piv.iter().enumerate() {
            x[pc] = -a[r][free].clone();
        }
        basis.push(x);
    }
    basis
}

/// Some solution of m·x = b, if one exists.
pub fn solve(m: &QMatrix, b: &[Rational], cols: usize) -> Option<Vec<Rational>> {
    let mut a: QMatrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut a);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &pc) in piv.iter().enumerate() {
        x[pc] = a[r][cols].clone();
    }
    Some(x)
}

pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let mut a: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut a);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(m: &QMatrix, v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| super::rational::dot(row, v)).collect()
}

pub fn transpose(m: &QMatrix, cols: usize) -> QMatrix {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Orthogonal projection of v onto the orthogonal complement of span(basis).
pub fn project_out(v: &[Rational], basis: &[Vec<Rational>]) -> Vec<Rational> {
    if basis.is_empty() {
        return v.to_vec();
    }
    // Solve the normal equations G c = B v, then subtract B^T c.
    let k = basis.len();
    let g: QMatrix = (0..k)
        .map(|i| (0..k).map(|j| super::rational::dot(&basis[i], &basis[j])).collect())
        .collect();
    let rhs: Vec<Rational> = basis.iter().map(|b| super::rational::dot(b, v)).collect();
    let c = solve(&g, &rhs, k).expect("Gram system is consistent");
    let mut out = v.to_vec();
    for (ci, b) in c.iter().zip(basis) {
        if ci.is_zero() {
            continue;
        }
        for (o, bj) in out.iter_mut().zip(b) {
            if !bj.is_zero() {
                *o -= ci * bj;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::{rat, rat_vec};
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn sparse_rank_matches_dense(m in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 6), 1..7)) {
            let q: QMatrix = m.iter().map(|r| rat_vec(r)).collect();
            let entries: Vec<(usize, usize, Rational)> = m
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, v)| **v != 0).map(move |(j, v)| (i, j, rat(*v))))
                .collect();
            prop_assert_eq!(sparse_rank(&entries, m.len()), rank(&q));
        }
    }

    #[test]
    fn kernel_and_solve() {
        let m = vec![rat_vec(&[1, -1, 1, 0, 0]), rat_vec(&[0, 1, -1, 1, 0]), rat_vec(&[0, 0, 1, -1, 1])];
        let k = kernel(&m, 5);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&m, v).iter().all(|x| x.is_zero()));
        }
        let x = solve(&m, &rat_vec(&[1, 2, 3]), 5).unwrap();
        assert_eq!(mat_vec(&m, &x), rat_vec(&[1, 2, 3]));
        assert!(solve(&vec![rat_vec(&[1, 1]), rat_vec(&[2, 2])], &rat_vec(&[1, 3]), 2).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![rat_vec(&[2, 1]), rat_vec(&[1, 1])];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_vec(&inv, &rat_vec(&[3, 2])), rat_vec(&[1, 1]));
        assert!(inverse(&vec![rat_vec(&[1, 2]), rat_vec(&[2, 4])]).is_none());
    }

    #[test]
    fn projection() {
        let p = project_out(&rat_vec(&[1, 1]), &[rat_vec(&[1, 0])]);
        assert_eq!(p, vec![rat(0), rat(1)]);
    }
}
