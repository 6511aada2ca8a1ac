use crate::error::{Error, Result};
use crate::exactgeom::intmatrix::{invariant_factors, IntMatrix};
use crate::exactgeom::linalg::{rank, QMatrix};
use crate::exactgeom::lp::feasible;
use crate::exactgeom::polyhedron::ConeRep;
use crate::exactgeom::rational::{rat, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    /// Sorted ray-index sets.
    pub max_cones: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FanFlags {
    pub smooth: bool,
    pub complete: bool,
    pub simplicial: bool,
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

impl Fan {
    /// Structural checks only; geometric properties come from `validate`.
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::MalformedFan(format!("ray {i} has length {}, expected {dim}", r.len())));
            }
            if gcd_all(r) != 1 {
                return Err(Error::MalformedFan(format!("ray {i} = {r:?} is not primitive")));
            }
        }
        for i in 0..rays.len() {
            for j in 0..i {
                if rays[i] == rays[j] {
                    return Err(Error::MalformedFan(format!("rays {j} and {i} coincide: {:?}", rays[i])));
                }
            }
        }
        if max_cones.is_empty() {
            return Err(Error::MalformedFan("no maximal cones".into()));
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        for (k, c) in max_cones.into_iter().enumerate() {
            let mut c = c;
            c.sort_unstable();
            let len = c.len();
            c.dedup();
            if c.len() != len {
                return Err(Error::MalformedFan(format!("cone {k} repeats a ray")));
            }
            if c.is_empty() {
                return Err(Error::MalformedFan(format!("cone {k} is empty")));
            }
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::MalformedFan(format!("cone {k} refers to missing ray {bad}")));
            }
            cones.push(c);
        }
        let used: BTreeSet<usize> = cones.iter().flatten().copied().collect();
        if used.len() != rays.len() {
            return Err(Error::MalformedFan("some ray lies in no maximal cone".into()));
        }
        Ok(Fan { dim, rays, max_cones: cones })
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn ray_q(&self, i: usize) -> Vec<Rational> {
        self.rays[i].iter().map(|&x| rat(x)).collect()
    }

    /// Whether `set` (sorted) spans a cone of the fan, i.e. lies in a maximal cone
    /// as a face. For simplicial fans every subset of a maximal cone is a face.
    pub fn is_cone(&self, set: &[usize]) -> bool {
        self.max_cones.iter().any(|c| {
            set.iter().all(|i| c.contains(i)) && (set.len() <= 1 || self.is_face_of(set, c))
        })
    }

    fn is_face_of(&self, set: &[usize], cone: &[usize]) -> bool {
        let rows: QMatrix = cone.iter().map(|&i| self.ray_q(i)).collect();
        if rank(&rows) == cone.len() {
            return true;
        }
        // Non-simplicial: the subset must be exactly the rays on some face.
        let rays: Vec<Vec<BigInt>> = cone.iter().map(|&i| self.rays[i].iter().map(|&x| BigInt::from(x)).collect()).collect();
        let c = ConeRep::from_rays(self.dim, &rays);
        let on = |h: &[BigInt], i: usize| {
            h.iter().zip(&self.rays[i]).map(|(a, &b)| a * BigInt::from(b)).sum::<BigInt>().is_zero()
        };
        let facets = c.h_rows();
        let tight: BTreeSet<usize> = cone
            .iter()
            .copied()
            .filter(|&i| facets.iter().all(|h| !set.iter().all(|&s| on(h, s)) || on(h, i)))
            .collect();
        tight == set.iter().copied().collect()
    }

    fn facets_of(&self, cone: &[usize]) -> Vec<Vec<usize>> {
        let rows: QMatrix = cone.iter().map(|&i| self.ray_q(i)).collect();
        if rank(&rows) == cone.len() {
            return (0..cone.len())
                .map(|skip| cone.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &i)| i).collect())
                .collect();
        }
        let rays: Vec<Vec<BigInt>> = cone.iter().map(|&i| self.rays[i].iter().map(|&x| BigInt::from(x)).collect()).collect();
        let c = ConeRep::from_rays(self.dim, &rays);
        c.h_rows()
            .iter()
            .map(|h| {
                cone.iter()
                    .copied()
                    .filter(|&i| h.iter().zip(&self.rays[i]).map(|(a, &b)| a * BigInt::from(b)).sum::<BigInt>().is_zero())
                    .collect()
            })
            .collect()
    }

    /// Separating-hyperplane test: the two cones meet in the face spanned by
    /// their common rays.
    fn meet_properly(&self, a: &[usize], b: &[usize]) -> bool {
        let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
        for &i in a.iter().chain(b) {
            let u = self.ray_q(i);
            let (ina, inb) = (a.contains(&i), b.contains(&i));
            if ina && inb {
                rows.push((u.clone(), Rational::zero()));
                rows.push((u.iter().map(|x| -x.clone()).collect(), Rational::zero()));
            } else if ina {
                rows.push((u, Rational::one()));
            } else {
                rows.push((u.iter().map(|x| -x.clone()).collect(), Rational::one()));
            }
        }
        feasible(&rows, self.dim).is_some()
    }
}

pub fn validate(fan: &Fan) -> Result<FanFlags> {
    let n = fan.dim;
    for i in 0..fan.max_cones.len() {
        for j in 0..i {
            if !fan.meet_properly(&fan.max_cones[i], &fan.max_cones[j]) {
                return Err(Error::MalformedFan(format!("cones {j} and {i} do not meet in a common face")));
            }
        }
    }
    let mut simplicial = true;
    let mut smooth = true;
    for c in &fan.max_cones {
        let rows: QMatrix = c.iter().map(|&i| fan.ray_q(i)).collect();
        if rank(&rows) != c.len() {
            simplicial = false;
            smooth = false;
            continue;
        }
        let m = IntMatrix::from_rows(n, &c.iter().map(|&i| fan.rays[i].clone()).collect::<Vec<_>>());
        if !invariant_factors(&m).iter().all(|d| d.is_one()) {
            smooth = false;
        }
    }
    let full = fan.max_cones.iter().all(|c| {
        let rows: QMatrix = c.iter().map(|&i| fan.ray_q(i)).collect();
        rank(&rows) == n
    });
    let complete = full && walls_closed(fan);
    Ok(FanFlags { smooth, complete, simplicial })
}

/// Every facet of every maximal cone is shared by exactly two maximal cones,
/// and the wall graph is connected.
fn walls_closed(fan: &Fan) -> bool {
    let mut owners: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (k, c) in fan.max_cones.iter().enumerate() {
        for f in fan.facets_of(c) {
            owners.entry(f).or_default().push(k);
        }
    }
    if owners.values().any(|o| o.len() != 2) {
        return false;
    }
    let m = fan.max_cones.len();
    let mut seen = vec![false; m];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(k) = stack.pop() {
        for o in owners.values() {
            if o.contains(&k) {
                for &j in o {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Walls (codimension-one cones) of a complete simplicial fan with the two
/// rays completing them to maximal cones.
pub fn walls(fan: &Fan) -> Vec<(Vec<usize>, usize, usize)> {
    let mut owners: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for c in &fan.max_cones {
        for f in fan.facets_of(c) {
            let extra = c.iter().copied().find(|i| !f.contains(i)).expect("facet is proper");
            owners.entry(f).or_default().push(extra);
        }
    }
    owners
        .into_iter()
        .filter(|(_, o)| o.len() == 2)
        .map(|(f, o)| (f, o[0], o[1]))
        .collect()
}
