use super::complex::FreeComplex;
use super::ideal::MonomialIdeal;
use crate::error::{Error, Result};
use crate::exactgeom::linalg::sparse_rank;
use crate::exactgeom::polyhedron::Polyhedron;
use crate::exactgeom::region::RegionUnion;
use num_bigint::BigInt;
use crate::exactgeom::rational::{rat, Rational};
use crate::toric::{CohomologyVector, FineDegree, ToricVariety};
use rayon::prelude::*;
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyRow {
    pub i: usize,
    pub e: Vec<i64>,
    pub dim: u64,
}

fn neg_mask(alpha: &[i64], twist: &[i64]) -> u32 {
    alpha.iter().zip(twist).enumerate().filter(|(_, (a, t))| *a - *t < 0).map(|(i, _)| 1u32 << i).sum()
}

/// Fine degrees α with deg α = e at which some column of the complex has
/// nonzero cohomology; the hypercohomology vanishes at every other α.
pub fn contributing_degrees(x: &ToricVariety, c: &FreeComplex, e: &[i64]) -> Result<Vec<FineDegree>> {
    let mut out = BTreeSet::new();
    for step in &c.steps {
        for a in &step.twists {
            let shifted: Vec<i64> = e.iter().zip(x.degree_of(a)).map(|(u, v)| u - v).collect();
            for mask in 0..x.num_patterns() {
                if x.pattern_cohomology(mask).iter().all(|&m| m == 0) {
                    continue;
                }
                for beta in x.pattern_points(&shifted, mask)? {
                    out.insert(beta.iter().zip(a).map(|(b, t)| b + t).collect::<Vec<i64>>());
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Total complex at fine degree α. Basis (step k, twist t, cone T ⊆ Neg(α − a_t))
/// in degree |T| − k; the differential is δ on the cone complex plus the
/// resolution maps, which restrict cochains to the smaller negative set.
fn slice_cohomology(x: &ToricVariety, c: &FreeComplex, alpha: &[i64]) -> Vec<u64> {
    let n = x.dim();
    let cones = x.cones();
    let mut basis: Vec<(usize, usize, u32)> = Vec::new();
    let mut index: HashMap<(usize, usize, u32), usize> = HashMap::new();
    let mut masks: Vec<Vec<u32>> = Vec::new();
    for (k, step) in c.steps.iter().enumerate() {
        masks.push(step.twists.iter().map(|a| neg_mask(alpha, a)).collect());
        for (t, _) in step.twists.iter().enumerate() {
            let nm = masks[k][t];
            for &cone in cones {
                if cone & !nm == 0 {
                    index.insert((k, t, cone), basis.len());
                    basis.push((k, t, cone));
                }
            }
        }
    }
    let degree = |b: &(usize, usize, u32)| b.2.count_ones() as i64 - b.0 as i64;
    let lo = -(c.steps.len() as i64);
    let hi = n as i64 + 1;
    let mut by_deg: HashMap<i64, Vec<usize>> = HashMap::new();
    for (i, b) in basis.iter().enumerate() {
        by_deg.entry(degree(b)).or_default().push(i);
    }
    // (source, target, coefficient)
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (src, &(k, t, cone)) in basis.iter().enumerate() {
        let nm = masks[k][t];
        for b in 0..x.num_rays() as u32 {
            if nm >> b & 1 == 0 || cone >> b & 1 == 1 {
                continue;
            }
            let bigger = cone | 1 << b;
            if let Some(&tgt) = index.get(&(k, t, bigger)) {
                let pos = (bigger & ((1 << b) - 1)).count_ones();
                entries.push((src, tgt, rat(if pos % 2 == 0 { 1 } else { -1 })));
            }
        }
        if k > 0 {
            let sign = if cone.count_ones() % 2 == 0 { 1 } else { -1 };
            for e in c.steps[k].differential.iter().filter(|e| e.col == t) {
                if let Some(&tgt) = index.get(&(k - 1, e.row, cone)) {
                    entries.push((src, tgt, &e.coeff * rat(sign)));
                }
            }
        }
    }
    let empty = Vec::new();
    let rank_from = |d: i64| -> usize {
        let src = by_deg.get(&d).unwrap_or(&empty);
        let tgt = by_deg.get(&(d + 1)).unwrap_or(&empty);
        if src.is_empty() || tgt.is_empty() {
            return 0;
        }
        let spos: HashMap<usize, usize> = src.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let tpos: HashMap<usize, usize> = tgt.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let local: Vec<(usize, usize, Rational)> = entries
            .iter()
            .filter_map(|(s, t, v)| Some((*tpos.get(t)?, *spos.get(s)?, v.clone())))
            .collect();
        sparse_rank(&local, tgt.len())
    };
    let ranks: HashMap<i64, usize> = (lo..=hi).map(|d| (d, rank_from(d))).collect();
    (0..=n)
        .map(|i| {
            let i = i as i64;
            let dim = by_deg.get(&i).map_or(0, |v| v.len());
            (dim - ranks[&i] - ranks[&(i - 1)]) as u64
        })
        .collect()
}

/// dim H^i(X, Ĩ(e)) for the ideal resolved by `c`.
pub fn sheaf_cohomology(x: &ToricVariety, c: &FreeComplex, e: &[i64]) -> Result<CohomologyVector> {
    if e.len() != x.picard_rank() {
        return Err(Error::DimensionMismatch { expected: x.picard_rank(), got: e.len() });
    }
    let alphas = contributing_degrees(x, c, e)?;
    let n = x.dim();
    Ok(alphas
        .par_iter()
        .map(|a| slice_cohomology(x, c, a))
        .reduce(|| vec![0; n + 1], |a, b| a.iter().zip(&b).map(|(u, v)| u + v).collect()))
}

pub fn cohomology_table(x: &ToricVariety, c: &FreeComplex, es: &[Vec<i64>]) -> Result<Vec<CohomologyRow>> {
    let mut rows = Vec::new();
    for e in es {
        for (i, dim) in sheaf_cohomology(x, c, e)?.into_iter().enumerate() {
            rows.push(CohomologyRow { i, e: e.clone(), dim });
        }
    }
    Ok(rows)
}

const MAX_FINITE_COORDS: usize = 14;

/// Over-approximations of {e : h^i(Ĩ(e)) ≠ 0} for i = 0..=n, sharper than the
/// first-page bound. The slice at α depends only on where each α_ρ sits among
/// the thresholds {a_ρ : a a twist}; each cell is an integer box B, and the
/// image deg(B) enters the i-th region when the slice has h^i ≠ 0.
pub fn fine_nonvanishing(x: &ToricVariety, c: &FreeComplex) -> Result<Vec<RegionUnion>> {
    let k = x.num_rays();
    let r = x.picard_rank();
    let n = x.dim();
    let mut thresholds: Vec<Vec<i64>> = vec![Vec::new(); k];
    for step in &c.steps {
        for a in &step.twists {
            for (rho, v) in a.iter().enumerate() {
                thresholds[rho].push(*v);
            }
        }
    }
    // Cells per coordinate as (lo, hi) with None for an infinite end.
    let cells: Vec<Vec<(Option<i64>, Option<i64>)>> = thresholds
        .iter_mut()
        .map(|t| {
            t.sort_unstable();
            t.dedup();
            let mut v = vec![(None, Some(t[0] - 1))];
            for w in t.windows(2) {
                v.push((Some(w[0]), Some(w[1] - 1)));
            }
            v.push((Some(*t.last().unwrap()), None));
            v
        })
        .collect();
    let finite = cells.iter().filter(|c| c.len() > 2).count();
    if finite > MAX_FINITE_COORDS {
        return Err(Error::SizeGuard(format!("{finite} coordinates with several thresholds")));
    }
    let mut choice = vec![0usize; k];
    let mut pieces: Vec<Vec<Polyhedron>> = vec![Vec::new(); n + 1];
    loop {
        let alpha: Vec<i64> = (0..k)
            .map(|rho| {
                let (lo, hi) = cells[rho][choice[rho]];
                lo.unwrap_or_else(|| hi.unwrap())
            })
            .collect();
        let h = slice_cohomology(x, c, &alpha);
        if h.iter().any(|&v| v != 0) {
            let image = cell_image(x, &(0..k).map(|rho| cells[rho][choice[rho]]).collect::<Vec<_>>());
            for i in 0..=n {
                if h[i] != 0 {
                    pieces[i].push(image.clone());
                }
            }
        }
        let mut j = 0;
        while j < k {
            choice[j] += 1;
            if choice[j] < cells[j].len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
        if j == k {
            break;
        }
    }
    pieces.into_iter().map(|p| RegionUnion::new(r, p)).collect()
}

fn cell_image(x: &ToricVariety, cell: &[(Option<i64>, Option<i64>)]) -> Polyhedron {
    let r = x.picard_rank();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut base = vec![0i64; r];
    let mut spans: Vec<Vec<i64>> = Vec::new();
    for (rho, (lo, hi)) in cell.iter().enumerate() {
        let col = x.ray_class(rho);
        let (start, dir) = match (lo, hi) {
            (Some(l), Some(h)) => {
                if h > l {
                    spans.push(col.iter().map(|v| v * (h - l)).collect());
                }
                (*l, 0)
            }
            (Some(l), None) => (*l, 1),
            (None, Some(h)) => (*h, -1),
            (None, None) => (0, 0),
        };
        for t in 0..r {
            base[t] += col[t] * start;
        }
        if dir != 0 {
            rays.push(col.iter().map(|v| BigInt::from(v * dir)).collect());
        }
    }
    let mut verts: Vec<Vec<i64>> = vec![base];
    for s in &spans {
        let more: Vec<Vec<i64>> = verts.iter().map(|v| v.iter().zip(s).map(|(a, b)| a + b).collect()).collect();
        verts.extend(more);
    }
    let verts: Vec<Vec<Rational>> = verts.iter().map(|v| v.iter().map(|&a| rat(a)).collect()).collect();
    Polyhedron::from_v(r, &verts, &rays)
}

/// Monomial basis of H⁰(X, Ĩ(e)) in lex order.
pub fn section_basis(ideal: &MonomialIdeal, e: &[i64]) -> Result<Vec<FineDegree>> {
    let x = ideal.variety();
    Ok(x.pattern_points(e, 0)?
        .into_iter()
        .filter(|a| x.fan().max_cones.iter().all(|s| ideal.contains_on_chart(a, s)))
        .collect())
}

/// Sections generate Ĩ(e) on every chart U_σ.
pub fn globally_generated(ideal: &MonomialIdeal, e: &[i64]) -> Result<bool> {
    let sections = section_basis(ideal, e)?;
    let x = ideal.variety();
    Ok(x.fan().max_cones.iter().all(|s| {
        ideal.generators().iter().all(|m| sections.iter().any(|b| s.iter().all(|&i| b[i] <= m[i])))
    }))
}
