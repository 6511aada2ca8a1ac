//! Double description for homogeneous cones {z : h·z >= 0}.
//!
//! Rows are inserted greedily: at each step the unprocessed row violated by
//! the fewest current generators goes next, ties broken lexicographically.

use super::rational::{content, dot_int, primitive};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeGens {
    /// Extreme rays of the pointed part, taken modulo the lineality space.
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

/// Positive combination a·u + b·v reduced to content 1.
fn combine(a: &BigInt, u: &[BigInt], b: &BigInt, v: &[BigInt]) -> Vec<BigInt> {
    let w: Vec<BigInt> = u.iter().zip(v).map(|(x, y)| a * x + b * y).collect();
    primitive(&w)
}

pub fn cone_generators(dim: usize, rows: &[Vec<BigInt>]) -> ConeGens {
    let m = rows.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut rays: Vec<(Vec<BigInt>, Bits)> = Vec::new();
    let mut done = vec![false; m];

    for _ in 0..m {
        let mut pick: Option<(usize, usize)> = None;
        for (i, h) in rows.iter().enumerate() {
            if done[i] {
                continue;
            }
            let viol = rays.iter().filter(|(r, _)| dot_int(h, r).is_negative()).count()
                + lineality.iter().filter(|l| !dot_int(h, l).is_zero()).count();
            let better = match pick {
                None => true,
                Some((bi, bv)) => viol < bv || (viol == bv && rows[i] < rows[bi]),
            };
            if better {
                pick = Some((i, viol));
            }
        }
        let (k, _) = pick.expect("unprocessed row exists");
        done[k] = true;
        let h = &rows[k];
        if content(h).is_zero() {
            for (_, z) in rays.iter_mut() {
                z.set(k);
            }
            continue;
        }

        if let Some(li) = lineality.iter().position(|l| !dot_int(h, l).is_zero()) {
            let mut l = lineality.remove(li);
            let mut hl = dot_int(h, &l);
            if hl.is_negative() {
                l = l.iter().map(|x| -x).collect();
                hl = -hl;
            }
            for other in lineality.iter_mut() {
                let ho = dot_int(h, other);
                if !ho.is_zero() {
                    *other = combine(&hl, other, &(-ho), &l);
                }
            }
            for (r, z) in rays.iter_mut() {
                let hr = dot_int(h, r);
                if !hr.is_zero() {
                    *r = combine(&hl, r, &(-hr), &l);
                }
                z.set(k);
            }
            let mut z = Bits::new(m);
            for (j, d) in done.iter().enumerate() {
                if *d && j != k {
                    z.set(j);
                }
            }
            rays.push((primitive(&l), z));
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|(r, _)| dot_int(h, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, (_, z)) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    z.set(k);
                }
            }
            continue;
        }
        let mut next: Vec<(Vec<BigInt>, Bits)> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].1.and(&rays[q].1);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, (_, z))| i == p || i == q || !common.subset_of(z));
                if adjacent {
                    let v = combine(&vals[p], &rays[q].0, &(-vals[q].clone()), &rays[p].0);
                    let mut z = common;
                    z.set(k);
                    next.push((v, z));
                }
            }
        }
        let mut kept: Vec<(Vec<BigInt>, Bits)> = Vec::new();
        for (i, (r, z)) in rays.into_iter().enumerate() {
            if vals[i].is_positive() {
                kept.push((r, z));
            } else if vals[i].is_zero() {
                let mut z = z;
                z.set(k);
                kept.push((r, z));
            }
        }
        kept.extend(next);
        rays = kept;
    }

    ConeGens {
        rays: rays.into_iter().map(|(r, _)| r).collect(),
        lineality: lineality.into_iter().map(|l| primitive(&l)).collect(),
    }
}
