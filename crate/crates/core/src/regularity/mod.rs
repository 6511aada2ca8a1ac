use crate::coxalg::{fine_nonvanishing, sheaf_cohomology, FreeComplex};
use crate::error::{Error, Result};
use crate::exactgeom::polyhedron::Polyhedron;
use crate::exactgeom::rational::{ceil, floor, rat, to_i64, Rational};
use crate::exactgeom::region::RegionUnion;
use crate::toric::ToricVariety;
use num_bigint::BigInt;
use std::collections::HashMap;
use std::fmt;

pub const DEFAULT_RADIUS: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ResolutionBound,
    OverApproximationEmpty,
    FiniteExhaustion,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ResolutionBound => "resolution-bound",
            Method::OverApproximationEmpty => "over-approximation-empty",
            Method::FiniteExhaustion => "finite-exhaustion",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    CertifiedIn { method: Method },
    CertifiedOut { witness: Vec<i64>, index: usize, dim: u64 },
    Inconclusive { searched_radius: u32 },
}

impl Verdict {
    pub fn is_in(&self) -> bool {
        matches!(self, Verdict::CertifiedIn { .. })
    }
}

fn class_q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

fn compositions(t: usize, total: usize) -> Vec<Vec<usize>> {
    if t == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(t - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// ∪_{|s|=i} (d − s·C + Nef), with i clamped to dim X.
pub fn test_region(x: &ToricVariety, d: &[Rational], i: usize) -> Result<RegionUnion> {
    let gens = x.nef_generators()?;
    let r = x.picard_rank();
    let i = i.min(x.dim());
    let nef = x.nef_polyhedron();
    let pieces = compositions(gens.len(), i)
        .into_iter()
        .map(|s| {
            let shift: Vec<Rational> = (0..r)
                .map(|c| {
                    let mut v = d[c].clone();
                    for (j, g) in gens.iter().enumerate() {
                        v -= Rational::from_integer(&g[c] * BigInt::from(s[j]));
                    }
                    v
                })
                .collect();
            nef.translate(&shift)
        })
        .collect();
    RegionUnion::new(r, pieces)
}

/// ∪_j [∩_{a ∈ step 0} (deg a + Nef)] ∩ [∩_{b ∈ step 1} (deg b − C_j + Nef)].
pub fn inner_bound_two_term(x: &ToricVariety, c: &FreeComplex) -> Result<RegionUnion> {
    if c.len() > 2 || c.is_empty() {
        return Err(Error::UnsupportedComplex(format!("expected at most two steps, got {}", c.len())));
    }
    let r = x.picard_rank();
    let nef = x.nef_polyhedron();
    let mut base = Polyhedron::universe(r);
    for a in c.twists(0) {
        base = base.intersect(&nef.translate_int(&x.degree_of(a)))?;
    }
    let step1: &[Vec<i64>] = if c.len() == 2 { c.twists(1) } else { &[] };
    if step1.is_empty() {
        return RegionUnion::new(r, vec![base]);
    }
    let gens = x.nef_generators()?;
    let mut pieces = Vec::new();
    for g in gens {
        let mut p = base.clone();
        for b in step1 {
            let shift: Vec<Rational> = x.degree_of(b).iter().zip(g).map(|(v, gc)| rat(*v) - Rational::from_integer(gc.clone())).collect();
            p = p.intersect(&nef.translate(&shift))?;
        }
        pieces.push(p);
    }
    RegionUnion::new(r, pieces)
}

/// ∪_k ∪_{a ∈ step k} (deg a + NV(i + k)); contains every e with h^i(Ĩ(e)) ≠ 0.
pub fn candidate_nonvanishing(x: &ToricVariety, c: &FreeComplex, i: usize) -> Result<RegionUnion> {
    let r = x.picard_rank();
    let mut pieces = Vec::new();
    if i >= 1 && i <= x.dim() {
        for (k, step) in c.steps.iter().enumerate() {
            if i + k > x.dim() {
                break;
            }
            let nv = x.nonvanishing_region(i + k);
            for a in &step.twists {
                pieces.extend(nv.translate(&class_q(&x.degree_of(a))).pieces().iter().cloned());
            }
        }
    }
    RegionUnion::new(r, pieces)
}

fn bounding_box(p: &Polyhedron) -> (Vec<i64>, Vec<i64>) {
    let r = p.dim();
    let mut lo = vec![i64::MAX; r];
    let mut hi = vec![i64::MIN; r];
    for v in p.vertices() {
        for t in 0..r {
            lo[t] = lo[t].min(to_i64(&ceil(&v[t])));
            hi[t] = hi[t].max(to_i64(&floor(&v[t])));
        }
    }
    (lo, hi)
}

/// Tiered certifier for d ∈ reg(Ĩ) with Ĩ resolved by `c`.
pub fn reg_membership(x: &ToricVariety, c: &FreeComplex, d: &[i64], radius: u32) -> Result<Verdict> {
    let r = x.picard_rank();
    if d.len() != r {
        return Err(Error::DimensionMismatch { expected: r, got: d.len() });
    }
    let dq = class_q(d);
    if c.len() <= 2 && inner_bound_two_term(x, c)?.contains(&dq) {
        return Ok(Verdict::CertifiedIn { method: Method::ResolutionBound });
    }
    let mut tests = Vec::new();
    let mut coarse_empty = true;
    for i in 1..=x.dim() {
        let test = test_region(x, &dq, i)?;
        coarse_empty &= test.intersect(&candidate_nonvanishing(x, c, i)?)?.is_empty();
        tests.push((i, test));
    }
    if coarse_empty {
        return Ok(Verdict::CertifiedIn { method: Method::OverApproximationEmpty });
    }
    // The first-page bound ignores cancellation between steps; retry with the
    // cell-wise bound before falling back to evaluation.
    let fine = fine_nonvanishing(x, c)?;
    let mut hits: Vec<(usize, Polyhedron)> = Vec::new();
    for (i, test) in &tests {
        for p in test.intersect(&fine[*i])?.pieces() {
            hits.push((*i, p.clone()));
        }
    }
    if hits.is_empty() {
        return Ok(Verdict::CertifiedIn { method: Method::OverApproximationEmpty });
    }
    let mut cache: HashMap<Vec<i64>, Vec<u64>> = HashMap::new();
    let mut check = |e: &[i64], i: usize| -> Result<Option<Verdict>> {
        if !cache.contains_key(e) {
            cache.insert(e.to_vec(), sheaf_cohomology(x, c, e)?);
        }
        let h = cache[e][i];
        Ok((h != 0).then(|| Verdict::CertifiedOut { witness: e.to_vec(), index: i, dim: h }))
    };
    let all_bounded = hits.iter().all(|(_, p)| p.is_bounded());
    // Bounded pieces are exhausted; unbounded ones are scanned inside the radius box.
    let rad = radius as i64;
    let lo_r: Vec<i64> = d.iter().map(|v| v - rad).collect();
    let hi_r: Vec<i64> = d.iter().map(|v| v + rad).collect();
    let mut points: Vec<(usize, Vec<i64>)> = Vec::new();
    for (i, p) in &hits {
        let (lo, hi) = if p.is_bounded() { bounding_box(p) } else { (lo_r.clone(), hi_r.clone()) };
        for e in p.lattice_points_in(&lo, &hi) {
            points.push((*i, e));
        }
    }
    points.sort_by(|a, b| {
        let da = a.1.iter().zip(d).map(|(u, v)| (u - v).abs()).max();
        let db = b.1.iter().zip(d).map(|(u, v)| (u - v).abs()).max();
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    points.dedup();
    for (i, e) in &points {
        if let Some(v) = check(e, *i)? {
            return Ok(v);
        }
    }
    if all_bounded {
        Ok(Verdict::CertifiedIn { method: Method::FiniteExhaustion })
    } else {
        Ok(Verdict::Inconclusive { searched_radius: radius })
    }
}
