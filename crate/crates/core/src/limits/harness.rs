use super::{assemble, ConvergenceReport, PkRecord};
use crate::coxalg::{en_complex, power, taylor_complex, MonomialIdeal};
use crate::error::{Error, Result};
use crate::exactgeom::hausdorff::{point_distance, windowed_hausdorff, Distance};
use crate::exactgeom::polyhedron::{box_points, Polyhedron, Window};
use crate::exactgeom::rational::{ceil, floor, rat, to_i64, Rational};
use crate::exactgeom::region::RegionUnion;
use crate::regularity::{inner_bound_two_term, reg_membership, Verdict, DEFAULT_RADIUS};
use crate::seshadri::{sesh_bundle, sesh_region, SplitBundle};
use crate::toric::ToricVariety;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

const MAX_MULTISETS: u64 = 200_000;
const MAX_GRID_POINTS: usize = 200_000;

const MAX_FRONTIER: usize = 400;

/// Runs S = sesh(I) against reg_R(I^p)/p, approximated from inside by the
/// two-term inner bound together with d + Nef for every lattice point d of
/// conv(vert p·S) that the tiered certifier places in reg(I^p).
pub fn theorem_a_harness(x: &Arc<ToricVariety>, sigma: &[usize], p_max: u32, w: &Window) -> Result<ConvergenceReport> {
    let s = sesh_region(x, sigma, None)?.region;
    let s_union = RegionUnion::single(s.clone());
    let ideal = MonomialIdeal::of_cone(x.clone(), sigma)?;
    let nef = x.nef_polyhedron();
    let per_p: Vec<Result<PkRecord>> = (1..=p_max)
        .into_par_iter()
        .map(|p| {
            let c = if ideal.generators().len() == 2 {
                en_complex(&ideal, p)?
            } else {
                taylor_complex(&power(&ideal, p)?)?
            };
            let inner = inner_bound_two_term(x, &c)?;
            let pq = rat(p as i64);
            let core = Polyhedron::from_v(s.dim(), &s.vertices().iter().map(|v| v.iter().map(|t| t * &pq).collect()).collect::<Vec<_>>(), &[]);
            let mut pieces = inner.pieces().to_vec();
            let mut certified = None;
            let frontier = core.lattice_points()?;
            if !frontier.is_empty() && frontier.len() <= MAX_FRONTIER {
                let mut hits = 0u32;
                for d in &frontier {
                    if inner.contains_int(d) {
                        hits += 1;
                        continue;
                    }
                    if matches!(reg_membership(x, &c, d, DEFAULT_RADIUS)?, Verdict::CertifiedIn { .. }) {
                        hits += 1;
                        pieces.push(nef.translate_int(d));
                    }
                }
                certified = Some((hits, frontier.len() as u32));
            }
            let b = RegionUnion::new(s.dim(), pieces)?.scale(&Rational::new(1.into(), p.into()));
            let scaled_inner = inner.scale(&Rational::new(1.into(), p.into()));
            let included = s_union.includes(&scaled_inner)?;
            let distance = windowed_hausdorff(b.pieces(), s_union.pieces(), w)?;
            Ok(PkRecord { p, distance, inclusions: vec![("sesh includes scaled inner bound".into(), included)], certified })
        })
        .collect();
    let tag = format!("reg_R(I^p)/p from inside on {}", x.name());
    Ok(assemble(&tag, per_p.into_iter().collect::<Result<_>>()?))
}

/// Distinct classes Σ D over degree-p multisets of the summands.
pub fn sym_power_summands(b: &SplitBundle, p: u32) -> Result<Vec<Vec<i64>>> {
    let k = b.rank() as u64;
    let count = binomial(k + p as u64 - 1, p as u64);
    if count > MAX_MULTISETS {
        return Err(Error::SizeGuard(format!("Sym^{p} of a rank {k} bundle has {count} summands")));
    }
    let r = b.summands[0].len();
    let mut out = BTreeSet::new();
    let mut exps = vec![0u32; b.rank()];
    multisets(&mut exps, 0, p, &mut |e| {
        let mut c = vec![0i64; r];
        for (m, d) in e.iter().zip(&b.summands) {
            for t in 0..r {
                c[t] += *m as i64 * d[t];
            }
        }
        out.insert(c);
    });
    Ok(out.into_iter().collect())
}

fn binomial(n: u64, k: u64) -> u64 {
    let mut acc: u64 = 1;
    for i in 0..k.min(n - k) {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn multisets(exps: &mut Vec<u32>, idx: usize, left: u32, f: &mut dyn FnMut(&[u32])) {
    if idx + 1 == exps.len() {
        exps[idx] = left;
        f(exps);
        return;
    }
    for m in 0..=left {
        exps[idx] = m;
        multisets(exps, idx + 1, left - m, f);
    }
    exps[idx] = 0;
}

/// reg(O(a)) as the lattice complement of ∪_{i, |s| = i} (NV_i − a + s·C − Nef).
#[derive(Clone, Debug)]
pub struct LineBundleReg {
    a: Vec<i64>,
    nef: Polyhedron,
    // (shifted NV piece, the same piece minus Nef as a real prefilter)
    bad: Vec<(Polyhedron, Polyhedron)>,
}

impl LineBundleReg {
    pub fn new(x: &ToricVariety, a: &[i64]) -> Result<Self> {
        let gens = x.nef_generators()?.to_vec();
        let neg: Vec<Vec<BigInt>> = gens.iter().map(|g| g.iter().map(|v| -v).collect()).collect();
        let mut bad = Vec::new();
        for i in 1..=x.dim() {
            let nv = x.nonvanishing_region(i);
            if nv.is_empty() {
                continue;
            }
            let mut s = vec![0u32; gens.len()];
            multisets(&mut s, 0, i as u32, &mut |s| {
                let shift: Vec<Rational> = (0..a.len())
                    .map(|t| {
                        let sc: BigInt = s.iter().zip(&gens).map(|(m, g)| BigInt::from(*m) * &g[t]).sum();
                        Rational::from_integer(sc) - rat(a[t])
                    })
                    .collect();
                for piece in nv.pieces() {
                    let moved = piece.translate(&shift);
                    let closed = moved.add_cone(&neg);
                    bad.push((moved, closed));
                }
            });
        }
        Ok(LineBundleReg { a: a.to_vec(), nef: x.nef_polyhedron().clone(), bad })
    }

    pub fn class(&self) -> &[i64] {
        &self.a
    }

    pub fn contains(&self, d: &[i64]) -> Result<bool> {
        let dq: Vec<Rational> = d.iter().map(|v| rat(*v)).collect();
        let neg: Vec<Rational> = dq.iter().map(|v| -v).collect();
        for (moved, closed) in &self.bad {
            if !closed.contains(&dq) {
                continue;
            }
            if moved.translate(&neg).intersect(&self.nef)?.has_lattice_point() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn line_bundle_regular(x: &ToricVariety, a: &[i64], d: &[i64]) -> Result<bool> {
    LineBundleReg::new(x, a)?.contains(d)
}

/// reg of a direct sum of line bundles with memoized lattice membership.
struct SumReg<'a> {
    parts: Vec<LineBundleReg>,
    nef: &'a Polyhedron,
    gens: Vec<Vec<BigInt>>,
    cache: Mutex<HashMap<Vec<i64>, bool>>,
}

impl<'a> SumReg<'a> {
    fn new(x: &'a ToricVariety, classes: &[Vec<i64>]) -> Result<Self> {
        let parts = classes.iter().map(|a| LineBundleReg::new(x, a)).collect::<Result<_>>()?;
        Ok(SumReg { parts, nef: x.nef_polyhedron(), gens: x.nef_generators()?.to_vec(), cache: Mutex::new(HashMap::new()) })
    }

    fn lattice(&self, d: &[i64]) -> Result<bool> {
        if let Some(v) = self.cache.lock().unwrap().get(d) {
            return Ok(*v);
        }
        let mut ok = true;
        for part in &self.parts {
            if !part.contains(d)? {
                ok = false;
                break;
            }
        }
        self.cache.lock().unwrap().insert(d.to_vec(), ok);
        Ok(ok)
    }

    /// y ∈ reg + Nef_R; a lattice witness can be pushed into y − Σ[0,1]C_j.
    fn real(&self, y: &[Rational]) -> Result<bool> {
        let r = y.len();
        let mut lo = vec![0i64; r];
        let mut hi = vec![0i64; r];
        for t in 0..r {
            let mut a = y[t].clone();
            let b = y[t].clone();
            for g in &self.gens {
                if g[t] > BigInt::zero() {
                    a -= Rational::from_integer(g[t].clone());
                }
            }
            let mut b = b;
            for g in &self.gens {
                if g[t] < BigInt::zero() {
                    b -= Rational::from_integer(g[t].clone());
                }
            }
            lo[t] = to_i64(&ceil(&a));
            hi[t] = to_i64(&floor(&b));
        }
        let mut pts = Vec::new();
        box_points(&lo, &hi, &mut |d| {
            let diff: Vec<Rational> = y.iter().zip(d).map(|(a, b)| a - rat(*b)).collect();
            if self.nef.contains(&diff) {
                pts.push(d.to_vec());
            }
        });
        for d in pts {
            if self.lattice(&d)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// y ∈ reg_R(⊕ O(a)) for the given summand classes.
pub fn reg_r_contains(x: &ToricVariety, classes: &[Vec<i64>], y: &[Rational]) -> Result<bool> {
    SumReg::new(x, classes)?.real(y)
}

/// Rationals with denominator ≤ 4 in [lo, hi].
fn grid_axis(lo: &Rational, hi: &Rational) -> Vec<Rational> {
    let mut set = BTreeSet::new();
    for q in 1..=4i64 {
        let qb = rat(q);
        let a = to_i64(&ceil(&(lo * &qb)));
        let b = to_i64(&floor(&(hi * &qb)));
        for k in a..=b {
            set.insert(Rational::new(k.into(), q.into()));
        }
    }
    set.into_iter().collect()
}

fn grid(w: &Window) -> Result<Vec<Vec<Rational>>> {
    let axes: Vec<Vec<Rational>> = (0..w.dim()).map(|t| grid_axis(&w.lo[t], &w.hi[t])).collect();
    let total = axes.iter().try_fold(1usize, |acc, a| acc.checked_mul(a.len())).unwrap_or(usize::MAX);
    if total > MAX_GRID_POINTS {
        return Err(Error::SizeGuard(format!("sampling grid has {total} points")));
    }
    let mut out = vec![Vec::new()];
    for axis in &axes {
        out = out
            .into_iter()
            .flat_map(|pre| {
                axis.iter().map(move |v| {
                    let mut n = pre.clone();
                    n.push(v.clone());
                    n
                })
            })
            .collect();
    }
    Ok(out)
}

fn linf(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| if x > y { x - y } else { y - x }).max().unwrap_or_else(Rational::zero)
}

/// Samples reg_R(Sym^p E)/p on the window grid against sesh(E).
pub fn theorem_c_harness(x: &ToricVariety, b: &SplitBundle, p_max: u32, w: &Window) -> Result<ConvergenceReport> {
    let r = x.picard_rank();
    if w.dim() != r || b.summands.iter().any(|d| d.len() != r) {
        return Err(Error::DimensionMismatch { expected: r, got: w.dim() });
    }
    let s = sesh_bundle(x, b, None)?.region;
    let s_clip: Vec<Polyhedron> = RegionUnion::single(s.clone()).clip(w)?.pieces().to_vec();
    let pts = grid(w)?;
    let in_s: Vec<bool> = pts.iter().map(|y| s.contains(y)).collect();
    for p in 1..=p_max {
        sym_power_summands(b, p)?;
    }
    let records: Vec<Result<PkRecord>> = (1..=p_max)
        .into_par_iter()
        .map(|p| {
            let reg = SumReg::new(x, &sym_power_summands(b, p)?)?;
            let pq = rat(p as i64);
            let scaled = |y: &[Rational]| -> Vec<Rational> { y.iter().map(|v| v * &pq).collect() };
            let mut in_a = Vec::with_capacity(pts.len());
            for y in &pts {
                in_a.push(reg.real(&scaled(y))?);
            }
            let a_pts: Vec<&Vec<Rational>> = pts.iter().zip(&in_a).filter(|(_, m)| **m).map(|(y, _)| y).collect();
            let s_pts: Vec<&Vec<Rational>> = pts.iter().zip(&in_s).filter(|(_, m)| **m).map(|(y, _)| y).collect();
            let distance = match (a_pts.is_empty(), s_clip.is_empty()) {
                (true, true) => Distance::Finite(Rational::zero()),
                (true, false) | (false, true) => Distance::Infinite,
                (false, false) => {
                    let mut d = Rational::zero();
                    for y in &a_pts {
                        d = d.max(point_distance(y, &s_clip).expect("nonempty target"));
                    }
                    for y in &s_pts {
                        let near = a_pts.iter().map(|z| linf(y, z)).min().expect("nonempty");
                        d = d.max(near);
                    }
                    Distance::Finite(d)
                }
            };
            let grid_in_sesh = in_a.iter().zip(&in_s).all(|(a, s)| !*a || *s);
            let mut verts_in = true;
            for v in s_clip.iter().flat_map(|q| q.vertices()) {
                if !reg.real(&scaled(v))? {
                    verts_in = false;
                    break;
                }
            }
            Ok(PkRecord {
                p,
                distance,
                inclusions: vec![
                    ("sampled scaled reg inside sesh".into(), grid_in_sesh),
                    ("windowed sesh vertices inside scaled reg".into(), verts_in),
                ],
                certified: None,
            })
        })
        .collect();
    Ok(assemble(&format!("reg_R(Sym^p E)/p on {}", x.name()), records.into_iter().collect::<Result<_>>()?))
}
