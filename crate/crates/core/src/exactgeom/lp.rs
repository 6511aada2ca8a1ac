//! Exact two-phase simplex with Bland's rule.

use super::rational::Rational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, point: Vec<Rational> },
}

impl LpResult {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpResult::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize, obj: &mut [Rational]) {
        let inv = self.t[r][c].recip();
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for (x, p) in obj.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes with `obj` holding reduced costs z_j (objective row, rhs last).
    /// Columns >= `allowed` never enter. Returns false when unbounded.
    fn run(&mut self, obj: &mut [Rational], allowed: usize) -> bool {
        let rhs = self.ncols;
        loop {
            let Some(c) = (0..allowed).find(|&j| obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.t.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c, obj);
        }
    }
}

/// Maximizes c·x subject to a·x ≥ b for every row (a, b); x is free.
pub fn maximize(c: &[Rational], rows: &[(Vec<Rational>, Rational)]) -> LpResult {
    let n = c.len();
    let m = rows.len();
    // Columns: x+ (n), x- (n), slack (m), artificial (m), rhs.
    let nstruct = 2 * n + m;
    let ncols = nstruct + m;
    let mut t = Vec::with_capacity(m);
    for (i, (a, b)) in rows.iter().enumerate() {
        assert_eq!(a.len(), n);
        let neg = b.is_negative();
        let mut row = vec![Rational::zero(); ncols + 1];
        for j in 0..n {
            let v = if neg { -a[j].clone() } else { a[j].clone() };
            row[n + j] = -v.clone();
            row[j] = v;
        }
        row[2 * n + i] = if neg { Rational::from_integer(1.into()) } else { Rational::from_integer((-1).into()) };
        row[nstruct + i] = Rational::from_integer(1.into());
        row[ncols] = if neg { -b.clone() } else { b.clone() };
        t.push(row);
    }
    let mut tab = Tableau { t, basis: (nstruct..ncols).collect(), ncols };

    // Phase 1: maximize -sum(artificial); objective row z_j = -sum_i t[i][j] on non-artificial columns.
    let mut obj = vec![Rational::zero(); ncols + 1];
    for row in &tab.t {
        for j in 0..nstruct {
            if !row[j].is_zero() {
                obj[j] -= &row[j];
            }
        }
        obj[ncols] -= &row[ncols];
    }
    tab.run(&mut obj, nstruct);
    if !obj[ncols].is_zero() {
        return LpResult::Infeasible;
    }
    // Drive remaining artificials out of the basis, dropping redundant rows.
    let mut i = 0;
    while i < tab.t.len() {
        if tab.basis[i] >= nstruct {
            match (0..nstruct).find(|&j| !tab.t[i][j].is_zero()) {
                Some(j) => {
                    tab.pivot(i, j, &mut obj);
                    i += 1;
                }
                None => {
                    tab.t.remove(i);
                    tab.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    // Phase 2.
    let mut cost = vec![Rational::zero(); ncols + 1];
    for j in 0..n {
        cost[j] = c[j].clone();
        cost[n + j] = -c[j].clone();
    }
    let mut obj = vec![Rational::zero(); ncols + 1];
    for j in 0..=ncols {
        if j < nstruct {
            obj[j] = -cost[j].clone();
        }
    }
    for (r, &bc) in tab.basis.clone().iter().enumerate() {
        if !cost[bc].is_zero() {
            let f = cost[bc].clone();
            for j in 0..=ncols {
                if !tab.t[r][j].is_zero() {
                    obj[j] += &f * &tab.t[r][j];
                }
            }
        }
    }
    if !tab.run(&mut obj, nstruct) {
        return LpResult::Unbounded;
    }
    let mut y = vec![Rational::zero(); ncols];
    for (r, &bc) in tab.basis.iter().enumerate() {
        y[bc] = tab.t[r][ncols].clone();
    }
    let point: Vec<Rational> = (0..n).map(|j| &y[j] - &y[n + j]).collect();
    LpResult::Optimal { value: obj[ncols].clone(), point }
}

pub fn minimize(c: &[Rational], rows: &[(Vec<Rational>, Rational)]) -> LpResult {
    let neg: Vec<Rational> = c.iter().map(|x| -x.clone()).collect();
    match maximize(&neg, rows) {
        LpResult::Optimal { value, point } => LpResult::Optimal { value: -value, point },
        other => other,
    }
}

pub fn feasible(rows: &[(Vec<Rational>, Rational)], n: usize) -> Option<Vec<Rational>> {
    match maximize(&vec![Rational::zero(); n], rows) {
        LpResult::Optimal { point, .. } => Some(point),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::{rat, rat_vec, ratio};

    fn row(a: &[i64], b: i64) -> (Vec<Rational>, Rational) {
        (rat_vec(a), rat(b))
    }

    #[test]
    fn small_lp() {
        // max x + y s.t. x <= 2, y <= 3, x + 2y <= 7, x,y >= 0
        let rows = vec![row(&[-1, 0], -2), row(&[0, -1], -3), row(&[-1, -2], -7), row(&[1, 0], 0), row(&[0, 1], 0)];
        let r = maximize(&rat_vec(&[1, 1]), &rows);
        assert_eq!(r.value(), Some(&ratio(9, 2)));
    }

    #[test]
    fn infeasible_and_unbounded() {
        assert_eq!(maximize(&rat_vec(&[1]), &[row(&[1], 1), row(&[-1], 0)]), LpResult::Infeasible);
        assert_eq!(maximize(&rat_vec(&[1]), &[row(&[1], 1)]), LpResult::Unbounded);
        assert_eq!(minimize(&rat_vec(&[1]), &[row(&[1], 1)]).value(), Some(&rat(1)));
    }

    #[test]
    fn free_variables_and_degenerate_rows() {
        // min |x - 3| style: min t s.t. t >= x - 3, t >= 3 - x, x = -2 (two rows)
        let rows = vec![row(&[1, -1], -3), row(&[1, 1], 3), row(&[0, 1], -2), row(&[0, -1], 2), row(&[0, 2], -4)];
        let r = minimize(&rat_vec(&[1, 0]), &rows);
        assert_eq!(r.value(), Some(&rat(5)));
    }
}
