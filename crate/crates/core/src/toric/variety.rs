use super::fan::{validate, walls, Fan, FanFlags};
use crate::error::{Error, Result};
use crate::exactgeom::intmatrix::{invariant_factors, IntMatrix};
use crate::exactgeom::linalg::{inverse, rank, QMatrix};
use crate::exactgeom::polyhedron::{ConeRep, Polyhedron};
use crate::exactgeom::rational::{rat, to_i64, Rational};
use crate::exactgeom::region::RegionUnion;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Class in Pic(X)_R, in the coordinates fixed by the degree matrix.
pub type DivisorClass = Vec<Rational>;
/// Laurent exponent vector indexed by rays.
pub type FineDegree = Vec<i64>;
/// h^0, ..., h^n.
pub type CohomologyVector = Vec<u64>;

const MAX_RAYS: usize = 16;

#[derive(Clone, Debug)]
struct VertexChart {
    rays: Vec<usize>,
    adj: Vec<Vec<i64>>,
    det: i64,
}

/// Smooth projective toric variety with its Picard presentation.
#[derive(Clone, Debug)]
pub struct ToricVariety {
    name: String,
    fan: Fan,
    flags: FanFlags,
    deg: IntMatrix,
    deg_i: Vec<Vec<i64>>,
    lift: Vec<Vec<i64>>,
    nef: ConeRep,
    nef_generators: Option<Vec<Vec<BigInt>>>,
    var_names: Vec<String>,
    /// Reduced cohomology contributions per sign pattern (bitmask): entry j is
    /// dim H̃^{j-1}(Δ_N), the multiplicity with which a lattice point of the
    /// pattern polytope contributes to h^j.
    pattern_h: Vec<Vec<u64>>,
    bounded: Vec<bool>,
    charts: Vec<VertexChart>,
    curves: Vec<Vec<i64>>,
    cones: Vec<u32>,
}

fn lattice_dim_cols(fan: &Fan) -> IntMatrix {
    IntMatrix::from_rows(fan.dim, &fan.rays)
}

/// Degree matrix whose columns off the first maximal cone are unit vectors.
fn default_degree_matrix(fan: &Fan) -> IntMatrix {
    let n = fan.dim;
    let k = fan.num_rays();
    let sigma = &fan.max_cones[0];
    let others: Vec<usize> = (0..k).filter(|i| !sigma.contains(i)).collect();
    let r = others.len();
    let basis: QMatrix = sigma.iter().map(|&i| fan.ray_q(i)).collect();
    // Dual basis m_i with <m_i, u_{σ_j}> = δ_ij: columns of the inverse of the
    // matrix whose rows are u_{σ_j}.
    let inv = inverse(&basis).expect("smooth cone");
    let mut deg = IntMatrix::zeros(r, k);
    for (row, &o) in others.iter().enumerate() {
        deg.set(row, o, BigInt::one());
    }
    for (i, &s) in sigma.iter().enumerate() {
        // D_s = -Σ_{o} <m_i, u_o> D_o
        for (row, &o) in others.iter().enumerate() {
            let u = fan.ray_q(o);
            let mut v = Rational::zero();
            for t in 0..n {
                v += &inv[t][i] * &u[t];
            }
            deg.set(row, s, -v.to_integer());
        }
    }
    deg
}

fn reduced_pattern_cohomology(fan: &Fan, cones: &[u32], mask: u32) -> Vec<u64> {
    let n = fan.dim;
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n + 2];
    for &c in cones {
        if c & !mask == 0 {
            by_size[c.count_ones() as usize].push(c);
        }
    }
    // δ from size s to size s + 1.
    let delta_rank = |s: usize| -> usize {
        if s + 1 > n || by_size[s].is_empty() || by_size[s + 1].is_empty() {
            return 0;
        }
        let m: QMatrix = by_size[s + 1]
            .iter()
            .map(|&t| {
                let elems: Vec<u32> = (0..32).filter(|b| t >> b & 1 == 1).collect();
                by_size[s]
                    .iter()
                    .map(|&f| match elems.iter().position(|&b| t & !(1 << b) == f) {
                        Some(i) => rat(if i % 2 == 0 { 1 } else { -1 }),
                        None => Rational::zero(),
                    })
                    .collect()
            })
            .collect();
        rank(&m)
    };
    let ranks: Vec<usize> = (0..=n).map(delta_rank).collect();
    (0..=n)
        .map(|i| {
            let lower = if i == 0 { 0 } else { ranks[i - 1] };
            (by_size[i].len() - ranks[i] - lower) as u64
        })
        .collect()
}

fn adjugate(m: &[Vec<i64>]) -> (Vec<Vec<i64>>, i64) {
    let n = m.len();
    let big = IntMatrix::from_rows(n, m);
    let det = to_i64(&big.det());
    let mut adj = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let d = if n == 1 { 1 } else { to_i64(&IntMatrix::from_rows(n - 1, &minor).det()) };
            adj[i][j] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    (adj, det)
}

fn subsets(k: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, k: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, size, cur, out);
            cur.pop();
        }
    }
    rec(0, k, size, &mut cur, &mut out);
    out
}

pub fn make_variety(name: &str, fan: Fan, deg: Option<IntMatrix>) -> Result<ToricVariety> {
    let flags = validate(&fan)?;
    if !flags.smooth {
        return Err(Error::NotSmooth);
    }
    if !flags.complete {
        return Err(Error::NotComplete);
    }
    let n = fan.dim;
    let k = fan.num_rays();
    if k > MAX_RAYS {
        return Err(Error::SizeGuard(format!("{k} rays exceeds the limit of {MAX_RAYS}")));
    }
    let r = k - n;
    let p = lattice_dim_cols(&fan);
    let deg = match deg {
        None => default_degree_matrix(&fan),
        Some(d) => {
            if d.rows() != r || d.cols() != k {
                return Err(Error::BadDegreeMatrix(format!("expected {r}x{k}, got {}x{}", d.rows(), d.cols())));
            }
            if !d.mul(&p).is_zero() {
                return Err(Error::BadDegreeMatrix("kernel does not contain the character lattice".into()));
            }
            if !invariant_factors(&d).iter().all(|x| x.is_one()) {
                return Err(Error::BadDegreeMatrix("not surjective onto Z^r".into()));
            }
            d
        }
    };
    let deg_i: Vec<Vec<i64>> = (0..r).map(|i| deg.row(i).iter().map(to_i64).collect()).collect();

    // Integral right inverse supported on the rays off the first maximal cone.
    let sigma = &fan.max_cones[0];
    let others: Vec<usize> = (0..k).filter(|i| !sigma.contains(i)).collect();
    let block: QMatrix = (0..r).map(|i| others.iter().map(|&o| rat(deg_i[i][o])).collect()).collect();
    let binv = inverse(&block).ok_or_else(|| Error::BadDegreeMatrix("classes off a maximal cone are dependent".into()))?;
    let mut lift = vec![vec![0i64; r]; k];
    for (row, &o) in others.iter().enumerate() {
        for j in 0..r {
            if !binv[row][j].is_integer() {
                return Err(Error::BadDegreeMatrix("classes off a maximal cone are not a lattice basis".into()));
            }
            lift[o][j] = to_i64(&binv[row][j].to_integer());
        }
    }

    let mut cones: Vec<u32> = Vec::new();
    for c in &fan.max_cones {
        let full: u32 = c.iter().map(|&i| 1u32 << i).sum();
        let mut sub = full;
        loop {
            cones.push(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & full;
        }
    }
    cones.sort_unstable();
    cones.dedup();
    let pattern_h: Vec<Vec<u64>> = (0..(1u32 << k)).map(|mask| reduced_pattern_cohomology(&fan, &cones, mask)).collect();
    let bounded: Vec<bool> = (0..(1u32 << k))
        .map(|mask| {
            if pattern_h[mask as usize].iter().all(|&m| m == 0) {
                return true;
            }
            let rows: Vec<Vec<Rational>> = (0..k)
                .map(|i| {
                    let sign = if mask >> i & 1 == 1 { -1 } else { 1 };
                    fan.rays[i].iter().map(|&x| rat(sign * x)).collect()
                })
                .collect();
            let c = ConeRep::from_h_rows(n, &rows);
            c.v_rays().is_empty()
        })
        .collect();
    let charts = subsets(k, n)
        .into_iter()
        .filter_map(|rays| {
            let m: Vec<Vec<i64>> = rays.iter().map(|&i| fan.rays[i].clone()).collect();
            let (adj, det) = adjugate(&m);
            (det != 0).then_some(VertexChart { rays, adj, det })
        })
        .collect();

    let curves: Vec<Vec<i64>> = walls(&fan)
        .into_iter()
        .map(|(tau, a, b)| {
            // u_a + u_b + Σ_{ρ∈τ} b_ρ u_ρ = 0
            let mut v = vec![0i64; k];
            v[a] = 1;
            v[b] = 1;
            if !tau.is_empty() {
                let sys: QMatrix = (0..n).map(|t| tau.iter().map(|&i| rat(fan.rays[i][t])).collect()).collect();
                let rhs: Vec<Rational> = (0..n).map(|t| rat(-(fan.rays[a][t] + fan.rays[b][t]))).collect();
                let sol = crate::exactgeom::linalg::solve(&sys, &rhs, tau.len()).expect("wall relation");
                for (j, &i) in tau.iter().enumerate() {
                    v[i] = to_i64(&sol[j].to_integer());
                }
            }
            v
        })
        .collect();

    let mut x = ToricVariety {
        name: name.to_string(),
        var_names: (0..k).map(|i| format!("x{i}")).collect(),
        fan,
        flags,
        deg,
        deg_i,
        lift,
        nef: ConeRep::from_rays(r, &[]),
        nef_generators: None,
        pattern_h,
        bounded,
        charts,
        curves,
        cones,
    };
    x.nef = x.compute_nef()?;
    if x.nef.is_simplicial() {
        x.nef_generators = Some(x.nef.extremal_rays().to_vec());
    }
    Ok(x)
}

impl ToricVariety {
    fn compute_nef(&self) -> Result<ConeRep> {
        let n = self.fan.dim;
        let k = self.fan.num_rays();
        let r = self.picard_rank();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for sigma in &self.fan.max_cones {
            let u: QMatrix = sigma.iter().map(|&i| self.fan.ray_q(i)).collect();
            let uinv = inverse(&u).expect("smooth cone");
            for rho in 0..k {
                if sigma.contains(&rho) {
                    continue;
                }
                // c_ρ' - u_ρ'ᵀ U_σ^{-1} c_σ as a functional on c, then on D via the lift.
                let mut on_c = vec![Rational::zero(); k];
                on_c[rho] += Rational::one();
                let urho = self.fan.ray_q(rho);
                for (j, &s) in sigma.iter().enumerate() {
                    let mut w = Rational::zero();
                    for t in 0..n {
                        w += &urho[t] * &uinv[t][j];
                    }
                    on_c[s] -= w;
                }
                let on_d: Vec<Rational> = (0..r)
                    .map(|j| {
                        let mut s = Rational::zero();
                        for (i, ci) in on_c.iter().enumerate() {
                            if !ci.is_zero() && self.lift[i][j] != 0 {
                                s += ci * rat(self.lift[i][j]);
                            }
                        }
                        s
                    })
                    .collect();
                rows.push(on_d);
            }
        }
        let cone = ConeRep::from_h_rows(r, &rows);
        if !cone.is_full_dimensional() || !cone.is_pointed() {
            return Err(Error::NotProjective);
        }
        Ok(cone)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn flags(&self) -> FanFlags {
        self.flags
    }

    pub fn dim(&self) -> usize {
        self.fan.dim
    }

    pub fn num_rays(&self) -> usize {
        self.fan.num_rays()
    }

    pub fn picard_rank(&self) -> usize {
        self.fan.num_rays() - self.fan.dim
    }

    pub fn deg(&self) -> &IntMatrix {
        &self.deg
    }

    /// Class of D_ρ.
    pub fn ray_class(&self, rho: usize) -> Vec<i64> {
        self.deg_i.iter().map(|row| row[rho]).collect()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    pub fn nef_cone(&self) -> &ConeRep {
        &self.nef
    }

    pub fn nef_polyhedron(&self) -> &Polyhedron {
        self.nef.as_polyhedron()
    }

    pub fn nef_generators(&self) -> Result<&[Vec<BigInt>]> {
        self.nef_generators.as_deref().ok_or(Error::NefGeneratorsUnavailable)
    }

    /// Supplies generators for a non-simplicial nef cone; they must generate it.
    pub fn with_nef_generators(mut self, gens: Vec<Vec<BigInt>>) -> Result<Self> {
        let c = ConeRep::from_rays(self.picard_rank(), &gens);
        if c != self.nef {
            return Err(Error::Invalid("supplied generators do not span the nef cone".into()));
        }
        self.nef_generators = Some(gens);
        Ok(self)
    }

    pub fn is_nef(&self, d: &[Rational]) -> bool {
        self.nef.contains(d)
    }

    pub fn is_ample(&self, d: &[Rational]) -> bool {
        self.nef.interior_contains(d)
    }

    /// deg·α
    pub fn degree_of(&self, alpha: &[i64]) -> Vec<i64> {
        self.deg_i.iter().map(|row| row.iter().zip(alpha).map(|(a, b)| a * b).sum()).collect()
    }

    /// A fixed integral torus-invariant lift of an integral class.
    pub fn lift(&self, e: &[i64]) -> Vec<i64> {
        self.lift.iter().map(|row| row.iter().zip(e).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn lift_q(&self, e: &[Rational]) -> Vec<Rational> {
        self.lift
            .iter()
            .map(|row| {
                let mut s = Rational::zero();
                for (a, b) in row.iter().zip(e) {
                    if *a != 0 {
                        s += b * rat(*a);
                    }
                }
                s
            })
            .collect()
    }

    /// Intersection vectors (D_ρ · C)_ρ of the torus-invariant curves.
    pub fn invariant_curves(&self) -> &[Vec<i64>] {
        &self.curves
    }

    pub fn curve_degree(&self, curve: &[i64], class: &[Rational]) -> Rational {
        let c = self.lift_q(class);
        let mut s = Rational::zero();
        for (a, b) in curve.iter().zip(&c) {
            if *a != 0 {
                s += b * rat(*a);
            }
        }
        s
    }

    /// Multiplicities dim H̃^{j-1}(Δ_N) for the sign pattern `mask`.
    pub fn pattern_cohomology(&self, mask: u32) -> &[u64] {
        &self.pattern_h[mask as usize]
    }

    /// Every cone of the fan (the empty cone included) as a ray bitmask, sorted.
    pub fn cones(&self) -> &[u32] {
        &self.cones
    }

    pub fn num_patterns(&self) -> u32 {
        1u32 << self.num_rays()
    }

    /// Lattice points α with deg α = e, α_ρ <= -1 on the pattern and α_ρ >= 0
    /// elsewhere, in lexicographic order.
    pub fn pattern_points(&self, e: &[i64], mask: u32) -> Result<Vec<FineDegree>> {
        if !self.bounded[mask as usize] {
            return Err(Error::UnboundedPolytope);
        }
        let n = self.dim();
        let k = self.num_rays();
        let a0 = self.lift(e);
        // Boundary values v_ρ of <m, u_ρ> for the constraints on m ∈ Z^n.
        let neg = |i: usize| mask >> i & 1 == 1;
        let v: Vec<i64> = (0..k).map(|i| if neg(i) { -1 - a0[i] } else { -a0[i] }).collect();
        let ok = |num: &[i128], det: i128| {
            (0..k).all(|i| {
                let s: i128 = (0..n).map(|t| num[t] * self.fan.rays[i][t] as i128).sum();
                let bound = v[i] as i128 * det;
                if neg(i) {
                    s <= bound
                } else {
                    s >= bound
                }
            })
        };
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        let mut any = false;
        for ch in &self.charts {
            let mut num: Vec<i128> = (0..n)
                .map(|t| ch.rays.iter().enumerate().map(|(j, &i)| ch.adj[t][j] as i128 * v[i] as i128).sum())
                .collect();
            let mut det = ch.det as i128;
            if det < 0 {
                det = -det;
                for x in num.iter_mut() {
                    *x = -*x;
                }
            }
            if !ok(&num, det) {
                continue;
            }
            any = true;
            for t in 0..n {
                let f = num[t].div_euclid(det) as i64;
                let c = (-((-num[t]).div_euclid(det))) as i64;
                lo[t] = lo[t].min(c);
                hi[t] = hi[t].max(f);
            }
        }
        let mut out = Vec::new();
        if !any {
            return Ok(out);
        }
        crate::exactgeom::polyhedron::box_points(&lo, &hi, &mut |m| {
            let alpha: Vec<i64> = (0..k).map(|i| a0[i] + (0..n).map(|t| m[t] * self.fan.rays[i][t]).sum::<i64>()).collect();
            if (0..k).all(|i| if neg(i) { alpha[i] <= -1 } else { alpha[i] >= 0 }) {
                out.push(alpha);
            }
        });
        out.sort();
        Ok(out)
    }

    pub fn cohomology_line_bundle(&self, e: &[i64]) -> Result<CohomologyVector> {
        if e.len() != self.picard_rank() {
            return Err(Error::DimensionMismatch { expected: self.picard_rank(), got: e.len() });
        }
        let n = self.dim();
        let mut h = vec![0u64; n + 1];
        for mask in 0..self.num_patterns() {
            let mult = &self.pattern_h[mask as usize];
            if mult.iter().all(|&m| m == 0) {
                continue;
            }
            let count = self.pattern_points(e, mask)?.len() as u64;
            for j in 0..=n {
                h[j] += count * mult[j];
            }
        }
        Ok(h)
    }

    pub fn cohomology_line_bundle_q(&self, e: &[Rational]) -> Result<CohomologyVector> {
        if !e.iter().all(|x| x.is_integer()) {
            return Err(Error::NotIntegral);
        }
        let ei: Vec<i64> = e.iter().map(|x| to_i64(&x.to_integer())).collect();
        self.cohomology_line_bundle(&ei)
    }

    pub fn euler_characteristic(&self, e: &[i64]) -> Result<i64> {
        let h = self.cohomology_line_bundle(e)?;
        Ok(h.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum())
    }

    /// Canonical class -Σ D_ρ.
    pub fn canonical_class(&self) -> Vec<i64> {
        self.deg_i.iter().map(|row| -row.iter().sum::<i64>()).collect()
    }

    /// {e : h^i(O(e)) ≠ 0} as a union of polyhedra in Pic_R.
    pub fn nonvanishing_region(&self, i: usize) -> RegionUnion {
        let r = self.picard_rank();
        if i > self.dim() {
            return RegionUnion::empty(r);
        }
        let k = self.num_rays();
        let mut pieces = Vec::new();
        for mask in 0..self.num_patterns() {
            if self.pattern_h[mask as usize][i] == 0 {
                continue;
            }
            let mut apex = vec![0i64; r];
            let mut rays: Vec<Vec<BigInt>> = Vec::new();
            for rho in 0..k {
                let col = self.ray_class(rho);
                if mask >> rho & 1 == 1 {
                    for t in 0..r {
                        apex[t] -= col[t];
                    }
                    rays.push(col.iter().map(|&x| BigInt::from(-x)).collect());
                } else {
                    rays.push(col.iter().map(|&x| BigInt::from(x)).collect());
                }
            }
            let apex_q: Vec<Rational> = apex.iter().map(|&x| rat(x)).collect();
            pieces.push(Polyhedron::from_v(r, &[apex_q], &rays));
        }
        RegionUnion::new(r, pieces).expect("same dimension")
    }
}

/// Classes as rationals.
pub fn class(v: &[i64]) -> DivisorClass {
    v.iter().map(|&x| rat(x)).collect()
}

/// Integral check for a class.
pub fn to_integral(v: &[Rational]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| if x.is_integer() { Ok(to_i64(&x.to_integer())) } else { Err(Error::NotIntegral) })
        .collect()
}

impl PartialEq for ToricVariety {
    fn eq(&self, other: &Self) -> bool {
        self.fan == other.fan && self.deg == other.deg
    }
}
