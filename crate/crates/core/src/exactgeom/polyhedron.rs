use super::dd::{cone_generators, ConeGens};
use super::linalg::{kernel, project_out, rank, rref, QMatrix};
use super::rational::{ceil, dot_int, dot_ir, floor, primitive_of_rational, to_i64, to_rat_vec, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Inequality a·x >= b with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ineq {
    pub a: Vec<BigInt>,
    pub b: Rational,
}

impl Ineq {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot_ir(&self.a, x) - &self.b
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        !self.eval(x).is_negative()
    }

    pub fn as_rational(&self) -> (Vec<Rational>, Rational) {
        (to_rat_vec(&self.a), self.b.clone())
    }
}

/// Closed convex polyhedron kept in canonical form with both representations.
///
/// Every constructor canonicalizes, so structural equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polyhedron {
    dim: usize,
    empty: bool,
    ineqs: Vec<Ineq>,
    vertices: Vec<Vec<Rational>>,
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
}

/// Axis-aligned box lo <= x <= hi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: Vec<Rational>,
    pub hi: Vec<Rational>,
}

impl Window {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::Invalid("window has lo > hi".into()));
        }
        Ok(Window { lo, hi })
    }

    pub fn cube(dim: usize, lo: i64, hi: i64) -> Self {
        Window { lo: vec![Rational::from_integer(lo.into()); dim], hi: vec![Rational::from_integer(hi.into()); dim] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn to_polyhedron(&self) -> Polyhedron {
        let d = self.dim();
        let mut rows = Vec::with_capacity(2 * d);
        for i in 0..d {
            let mut a = vec![Rational::zero(); d];
            a[i] = Rational::one();
            rows.push((a.clone(), self.lo[i].clone()));
            a[i] = -Rational::one();
            rows.push((a, -self.hi[i].clone()));
        }
        Polyhedron::from_h(d, &rows)
    }
}

fn to_q(v: &[BigInt]) -> Vec<Rational> {
    to_rat_vec(v)
}

/// Scales the homogenized functional (a, -b) so that a is primitive integer.
fn normalize_functional(h: &[Rational]) -> Ineq {
    let d = h.len() - 1;
    let a = primitive_of_rational(&h[..d]);
    // a = λ·h[..d] for a positive λ; recover λ from the first nonzero entry.
    let j = (0..d).find(|&j| !a[j].is_zero()).expect("nonzero normal");
    let lambda = Rational::from_integer(a[j].clone()) / &h[j];
    Ineq { a, b: -(&h[d] * lambda) }
}

impl Polyhedron {
    pub fn empty(dim: usize) -> Self {
        let mut a = vec![BigInt::zero(); dim];
        if dim == 0 {
            a = Vec::new();
        }
        Polyhedron {
            dim,
            empty: true,
            ineqs: vec![Ineq { a, b: Rational::one() }],
            vertices: Vec::new(),
            rays: Vec::new(),
            lineality: Vec::new(),
        }
    }

    pub fn universe(dim: usize) -> Self {
        Polyhedron::from_h(dim, &[])
    }

    pub fn orthant(dim: usize) -> Self {
        let rays: Vec<Vec<BigInt>> = (0..dim)
            .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        Polyhedron::cone(dim, &rays)
    }

    pub fn point(v: &[Rational]) -> Self {
        Polyhedron::from_v(v.len(), &[v.to_vec()], &[])
    }

    /// Cone generated by the given rays, with apex at the origin.
    pub fn cone(dim: usize, rays: &[Vec<BigInt>]) -> Self {
        Polyhedron::from_v(dim, &[vec![Rational::zero(); dim]], rays)
    }

    /// Polyhedron from inequalities a·x >= b.
    pub fn from_h(dim: usize, rows: &[(Vec<Rational>, Rational)]) -> Self {
        let mut hom: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len() + 1);
        for (a, b) in rows {
            assert_eq!(a.len(), dim, "inequality length must equal ambient dimension");
            let mut h: Vec<Rational> = a.clone();
            h.push(-b.clone());
            hom.push(primitive_of_rational(&h));
        }
        let mut t = vec![BigInt::zero(); dim + 1];
        t[dim] = BigInt::one();
        hom.push(t);
        hom.sort();
        hom.dedup();
        let gens = cone_generators(dim + 1, &hom);
        Polyhedron::canonical(dim, &hom, gens)
    }

    /// Polyhedron conv(vertices) + cone(rays). No vertices means empty.
    pub fn from_v(dim: usize, vertices: &[Vec<Rational>], rays: &[Vec<BigInt>]) -> Self {
        if vertices.is_empty() {
            return Polyhedron::empty(dim);
        }
        let gens = homogenize_generators(dim, vertices, rays);
        let facets = facets_of_generators(dim + 1, &gens);
        let rows: Vec<(Vec<Rational>, Rational)> = facets
            .iter()
            .map(|h| (to_q(&h[..dim]), -Rational::from_integer(h[dim].clone())))
            .collect();
        Polyhedron::from_h(dim, &rows)
    }

    fn canonical(dim: usize, hom: &[Vec<BigInt>], gens: ConeGens) -> Self {
        if !gens.rays.iter().any(|r| r[dim].is_positive()) {
            return Polyhedron::empty(dim);
        }
        let lin_q: Vec<Vec<Rational>> = gens.lineality.iter().map(|l| to_q(l)).collect();
        let mut all: QMatrix = gens.rays.iter().map(|r| to_q(r)).collect();
        all.extend(lin_q.iter().cloned());
        let dim_c = rank(&all);
        let eq_basis = kernel(&all, dim + 1);

        let mut ineqs: Vec<Ineq> = Vec::new();
        let mut eqs: QMatrix = eq_basis.clone();
        rref(&mut eqs);
        for e in eqs.iter().filter(|e| e.iter().any(|x| !x.is_zero())) {
            let ineq = normalize_functional(e);
            let neg = Ineq { a: ineq.a.iter().map(|x| -x).collect(), b: -ineq.b.clone() };
            ineqs.push(ineq);
            ineqs.push(neg);
        }
        for h in hom {
            let tight: Vec<&Vec<BigInt>> = gens.rays.iter().filter(|r| dot_int(h, r).is_zero()).collect();
            if tight.len() == gens.rays.len() {
                continue;
            }
            if !tight.iter().any(|r| r[dim].is_positive()) {
                continue;
            }
            let mut sub: QMatrix = tight.iter().map(|r| to_q(r)).collect();
            sub.extend(lin_q.iter().cloned());
            if rank(&sub) + 1 != dim_c {
                continue;
            }
            let hp = project_out(&to_q(h), &eq_basis);
            ineqs.push(normalize_functional(&hp));
        }
        ineqs.sort();
        ineqs.dedup();

        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in &gens.rays {
            let p = project_out(&to_q(r), &lin_q);
            if r[dim].is_positive() {
                let t = p[dim].clone();
                vertices.push(p[..dim].iter().map(|x| x / &t).collect::<Vec<_>>());
            } else {
                rays.push(primitive_of_rational(&p[..dim]));
            }
        }
        vertices.sort();
        vertices.dedup();
        rays.sort();
        rays.dedup();
        let mut lin: QMatrix = lin_q.iter().map(|l| l[..dim].to_vec()).collect();
        rref(&mut lin);
        let mut lineality: Vec<Vec<BigInt>> = lin
            .iter()
            .filter(|l| l.iter().any(|x| !x.is_zero()))
            .map(|l| primitive_of_rational(l))
            .collect();
        lineality.sort();
        Polyhedron { dim, empty: false, ineqs, vertices, rays, lineality }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn inequalities(&self) -> &[Ineq] {
        &self.ineqs
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    /// Rays together with both signs of every lineality generator.
    pub fn all_rays(&self) -> Vec<Vec<BigInt>> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out
    }

    pub fn h_rows(&self) -> Vec<(Vec<Rational>, Rational)> {
        self.ineqs.iter().map(|i| i.as_rational()).collect()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_cone(&self) -> bool {
        !self.empty && self.vertices.len() == 1 && self.vertices[0].iter().all(|x| x.is_zero())
    }

    /// Affine dimension; -1 is reported as None.
    pub fn affine_dim(&self) -> Option<usize> {
        if self.empty {
            return None;
        }
        let base = &self.vertices[0];
        let mut m: QMatrix = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(base).map(|(x, y)| x - y).collect())
            .collect();
        m.extend(self.rays.iter().map(|r| to_q(r)));
        m.extend(self.lineality.iter().map(|r| to_q(r)));
        Some(if m.is_empty() { 0 } else { rank(&m) })
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == Some(self.dim)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.ineqs.iter().all(|i| i.holds(x))
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        let q: Vec<Rational> = x.iter().map(|&v| Rational::from_integer(v.into())).collect();
        self.contains(&q)
    }

    /// Strict interior membership (relative to the ambient space).
    pub fn interior_contains(&self, x: &[Rational]) -> bool {
        self.is_full_dimensional() && self.ineqs.iter().all(|i| i.eval(x).is_positive())
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.dim != other {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other });
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        self.check_dim(other.dim)?;
        if self.empty || other.empty {
            return Ok(Polyhedron::empty(self.dim));
        }
        let mut rows = self.h_rows();
        rows.extend(other.h_rows());
        Ok(Polyhedron::from_h(self.dim, &rows))
    }

    /// {x : A·x + b ∈ self}, where A has self.dim rows and `src_dim` columns.
    pub fn affine_preimage(&self, a: &[Vec<Rational>], b: &[Rational], src_dim: usize) -> Result<Polyhedron> {
        self.check_dim(a.len())?;
        self.check_dim(b.len())?;
        if let Some(row) = a.iter().find(|r| r.len() != src_dim) {
            return Err(Error::DimensionMismatch { expected: src_dim, got: row.len() });
        }
        if self.empty {
            return Ok(Polyhedron::empty(src_dim));
        }
        let rows: Vec<(Vec<Rational>, Rational)> = self
            .ineqs
            .iter()
            .map(|ineq| {
                let coeffs: Vec<Rational> = (0..src_dim)
                    .map(|j| {
                        let mut s = Rational::zero();
                        for (i, ai) in ineq.a.iter().enumerate() {
                            if !ai.is_zero() {
                                s += &a[i][j] * ai;
                            }
                        }
                        s
                    })
                    .collect();
                (coeffs, &ineq.b - dot_ir(&ineq.a, b))
            })
            .collect();
        Ok(Polyhedron::from_h(src_dim, &rows))
    }

    pub fn translate(&self, v: &[Rational]) -> Polyhedron {
        assert_eq!(v.len(), self.dim);
        if self.empty {
            return self.clone();
        }
        let mut ineqs: Vec<Ineq> = self
            .ineqs
            .iter()
            .map(|i| Ineq { a: i.a.clone(), b: &i.b + dot_ir(&i.a, v) })
            .collect();
        ineqs.sort();
        let mut vertices: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .map(|p| p.iter().zip(v).map(|(x, y)| x + y).collect())
            .collect();
        // Vertices were projected off the lineality space; keep that convention.
        if !self.lineality.is_empty() {
            let lin: Vec<Vec<Rational>> = self.lineality.iter().map(|l| to_q(l)).collect();
            vertices = vertices.iter().map(|p| project_out(p, &lin)).collect();
        }
        vertices.sort();
        Polyhedron { dim: self.dim, empty: false, ineqs, vertices, rays: self.rays.clone(), lineality: self.lineality.clone() }
    }

    pub fn translate_int(&self, v: &[i64]) -> Polyhedron {
        let q: Vec<Rational> = v.iter().map(|&x| Rational::from_integer(x.into())).collect();
        self.translate(&q)
    }

    /// Image under x ↦ λ·x for λ > 0.
    pub fn scale(&self, lambda: &Rational) -> Polyhedron {
        assert!(lambda.is_positive());
        if self.empty {
            return self.clone();
        }
        let ineqs = self.ineqs.iter().map(|i| Ineq { a: i.a.clone(), b: &i.b * lambda }).collect();
        let vertices = self.vertices.iter().map(|p| p.iter().map(|x| x * lambda).collect()).collect();
        Polyhedron { dim: self.dim, empty: false, ineqs, vertices, rays: self.rays.clone(), lineality: self.lineality.clone() }
    }

    /// Minkowski sum with the cone generated by `rays`.
    pub fn add_cone(&self, rays: &[Vec<BigInt>]) -> Polyhedron {
        if self.empty {
            return self.clone();
        }
        let mut all = self.all_rays();
        all.extend(rays.iter().cloned());
        Polyhedron::from_v(self.dim, &self.vertices, &all)
    }

    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron> {
        self.check_dim(other.dim)?;
        if self.empty || other.empty {
            return Ok(Polyhedron::empty(self.dim));
        }
        let mut verts = Vec::new();
        for p in &self.vertices {
            for q in &other.vertices {
                verts.push(p.iter().zip(q).map(|(x, y)| x + y).collect());
            }
        }
        let mut rays = self.all_rays();
        rays.extend(other.all_rays());
        Ok(Polyhedron::from_v(self.dim, &verts, &rays))
    }

    /// True iff `other` ⊆ self.
    pub fn includes(&self, other: &Polyhedron) -> Result<bool> {
        self.check_dim(other.dim)?;
        if other.empty {
            return Ok(true);
        }
        if self.empty {
            return Ok(false);
        }
        let rays = other.all_rays();
        Ok(self.ineqs.iter().all(|i| {
            other.vertices.iter().all(|v| i.holds(v)) && rays.iter().all(|r| !dot_int(&i.a, r).is_negative())
        }))
    }

    /// Least t >= 0 with t·v ∈ self, or None if the ray misses.
    pub fn min_scale_on_ray(&self, v: &[Rational]) -> Result<Option<Rational>> {
        self.check_dim(v.len())?;
        if v.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroClass);
        }
        if self.empty {
            return Ok(None);
        }
        // Each row a·(t v) >= b is a one-dimensional constraint on t.
        let mut lo = Rational::zero();
        let mut hi: Option<Rational> = None;
        for i in &self.ineqs {
            let s = dot_ir(&i.a, v);
            if s.is_zero() {
                if i.b.is_positive() {
                    return Ok(None);
                }
            } else if s.is_positive() {
                let t = &i.b / &s;
                if t > lo {
                    lo = t;
                }
            } else {
                let t = &i.b / &s;
                hi = Some(match hi {
                    Some(h) if h < t => h,
                    _ => t,
                });
            }
        }
        match hi {
            Some(h) if h < lo => Ok(None),
            _ => Ok(Some(lo)),
        }
    }

    /// Recession cone {x : a·x >= 0 for every row}.
    pub fn recession_cone(&self) -> ConeRep {
        if self.empty {
            return ConeRep::from_polyhedron(Polyhedron::cone(self.dim, &[]));
        }
        ConeRep::from_polyhedron(Polyhedron::cone(self.dim, &self.all_rays()))
    }

    /// Integer points of a bounded polyhedron, in lexicographic order.
    pub fn lattice_points(&self) -> Result<Vec<Vec<i64>>> {
        if self.empty {
            return Ok(Vec::new());
        }
        if !self.is_bounded() {
            return Err(Error::UnboundedPolytope);
        }
        let mut lo = vec![i64::MAX; self.dim];
        let mut hi = vec![i64::MIN; self.dim];
        for v in &self.vertices {
            for k in 0..self.dim {
                lo[k] = lo[k].min(to_i64(&ceil(&v[k])));
                hi[k] = hi[k].max(to_i64(&floor(&v[k])));
            }
        }
        let mut out = Vec::new();
        box_points(&lo, &hi, &mut |p| {
            if self.contains_int(p) {
                out.push(p.to_vec());
            }
        });
        Ok(out)
    }

    /// Lattice points within an integer box, for possibly unbounded regions.
    pub fn lattice_points_in(&self, lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        if self.empty {
            return out;
        }
        box_points(lo, hi, &mut |p| {
            if self.contains_int(p) {
                out.push(p.to_vec());
            }
        });
        out
    }
}

impl Polyhedron {
    /// A lattice point z = q + Σ μ_k g_k can be moved to q + Σ frac(μ_k) g_k, so
    /// searching the bounded set conv(V) + Σ [0,1] g_k over the integral
    /// recession generators g_k decides existence.
    pub fn has_lattice_point(&self) -> bool {
        if self.empty {
            return false;
        }
        let d = self.dim;
        let gens = self.all_rays();
        let mut lo = vec![i64::MAX; d];
        let mut hi = vec![i64::MIN; d];
        for v in &self.vertices {
            for t in 0..d {
                let mut a = v[t].clone();
                let mut b = v[t].clone();
                for g in &gens {
                    let x = Rational::from_integer(g[t].clone());
                    if x < Rational::zero() {
                        a += x;
                    } else {
                        b += x;
                    }
                }
                lo[t] = lo[t].min(to_i64(&ceil(&a)));
                hi[t] = hi[t].max(to_i64(&floor(&b)));
            }
        }
        let mut found = false;
        box_points(&lo, &hi, &mut |p| {
            if !found && self.contains_int(p) {
                found = true;
            }
        });
        found
    }
}

/// Calls `f` on every integer point of the box, lexicographically.
pub fn box_points(lo: &[i64], hi: &[i64], f: &mut dyn FnMut(&[i64])) {
    let d = lo.len();
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return;
    }
    let mut p = lo.to_vec();
    loop {
        f(&p);
        let mut k = d;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if p[k] < hi[k] {
                p[k] += 1;
                for j in k + 1..d {
                    p[j] = lo[j];
                }
                break;
            }
        }
        if d == 0 {
            return;
        }
    }
}

fn homogenize_generators(dim: usize, vertices: &[Vec<Rational>], rays: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut gens = Vec::new();
    for v in vertices {
        let mut h: Vec<Rational> = v.clone();
        h.push(Rational::one());
        gens.push(primitive_of_rational(&h));
    }
    for r in rays {
        if r.iter().all(|x| x.is_zero()) {
            continue;
        }
        let mut h = r.clone();
        h.push(BigInt::zero());
        gens.push(h);
    }
    let _ = dim;
    gens.sort();
    gens.dedup();
    gens
}

/// Inequality normals h (h·g >= 0) cutting out cone(gens); lineality of the
/// dual becomes a pair of opposite normals.
pub fn facets_of_generators(dim: usize, gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let dual = cone_generators(dim, gens);
    let mut out = dual.rays;
    for l in dual.lineality {
        out.push(l.iter().map(|x| -x).collect());
        out.push(l);
    }
    out
}

/// Polyhedral cone with apex at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeRep {
    poly: Polyhedron,
}

impl ConeRep {
    pub fn from_polyhedron(poly: Polyhedron) -> Self {
        assert!(poly.is_cone(), "not a cone");
        ConeRep { poly }
    }

    pub fn from_rays(dim: usize, rays: &[Vec<BigInt>]) -> Self {
        ConeRep { poly: Polyhedron::cone(dim, rays) }
    }

    /// Cone {x : h·x >= 0 for every row}.
    pub fn from_h_rows(dim: usize, rows: &[Vec<Rational>]) -> Self {
        let rows: Vec<(Vec<Rational>, Rational)> = rows.iter().map(|r| (r.clone(), Rational::zero())).collect();
        ConeRep { poly: Polyhedron::from_h(dim, &rows) }
    }

    pub fn dim(&self) -> usize {
        self.poly.dim
    }

    pub fn h_rows(&self) -> Vec<Vec<BigInt>> {
        self.poly.ineqs.iter().map(|i| i.a.clone()).collect()
    }

    /// Generators including both signs of any lineality direction.
    pub fn v_rays(&self) -> Vec<Vec<BigInt>> {
        self.poly.all_rays()
    }

    pub fn extremal_rays(&self) -> &[Vec<BigInt>] {
        &self.poly.rays
    }

    pub fn is_pointed(&self) -> bool {
        self.poly.lineality.is_empty()
    }

    pub fn as_polyhedron(&self) -> &Polyhedron {
        &self.poly
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.poly.is_full_dimensional()
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.poly.rays.len() == self.poly.affine_dim().unwrap_or(0)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.poly.contains(x)
    }

    pub fn interior_contains(&self, x: &[Rational]) -> bool {
        self.poly.interior_contains(x)
    }

    pub fn includes(&self, other: &ConeRep) -> Result<bool> {
        self.poly.includes(&other.poly)
    }
}

pub fn dual_cone(c: &ConeRep) -> ConeRep {
    let rows: Vec<Vec<Rational>> = c.v_rays().iter().map(|r| to_q(r)).collect();
    ConeRep::from_h_rows(c.dim(), &rows)
}

/// Least common multiple of the vertex denominators.
pub fn vertex_denominator(p: &Polyhedron) -> BigInt {
    let mut l = BigInt::one();
    for v in p.vertices() {
        for x in v {
            l = l.lcm(x.denom());
        }
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::{int, rat, rat_vec, ratio};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn shifted_orthant(v: &[i64]) -> Polyhedron {
        Polyhedron::orthant(v.len()).translate_int(v)
    }

    #[test]
    fn orthant_rays() {
        let p = Polyhedron::from_h(2, &[(rat_vec(&[1, 0]), rat(0)), (rat_vec(&[0, 1]), rat(0))]);
        assert_eq!(p.rays(), &[ints(&[0, 1]), ints(&[1, 0])]);
        assert_eq!(p.vertices(), &[rat_vec(&[0, 0])]);
        assert_eq!(p, Polyhedron::orthant(2));
    }

    #[test]
    fn square_facets() {
        let sq = Polyhedron::from_v(2, &[rat_vec(&[0, 0]), rat_vec(&[1, 0]), rat_vec(&[0, 1]), rat_vec(&[1, 1])], &[]);
        assert_eq!(sq.inequalities().len(), 4);
        assert_eq!(sq, Window::cube(2, 0, 1).to_polyhedron());
    }

    #[test]
    fn redundant_rows_removed() {
        let rows = vec![
            (rat_vec(&[1, 0]), rat(0)),
            (rat_vec(&[0, 1]), rat(0)),
            (rat_vec(&[1, 1]), rat(-1)),
            (rat_vec(&[2, 0]), rat(-4)),
        ];
        assert_eq!(Polyhedron::from_h(2, &rows), Polyhedron::orthant(2));
    }

    #[test]
    fn intersections() {
        let p = shifted_orthant(&[0, 1]);
        assert_eq!(p.intersect(&p).unwrap(), p);
        let q = shifted_orthant(&[1, 0]);
        assert_eq!(p.intersect(&q).unwrap(), shifted_orthant(&[1, 1]));
        let a = Polyhedron::from_h(1, &[(rat_vec(&[1]), rat(1))]);
        let b = Polyhedron::from_h(1, &[(rat_vec(&[-1]), rat(0))]);
        assert!(a.intersect(&b).unwrap().is_empty());
        assert!(p.intersect(&Polyhedron::orthant(3)).is_err());
    }

    #[test]
    fn preimages() {
        let p = shifted_orthant(&[1, 1]);
        let id = vec![rat_vec(&[1, 0]), rat_vec(&[0, 1])];
        assert_eq!(p.affine_preimage(&id, &rat_vec(&[0, 0]), 2).unwrap(), p);
        // (x, y) ↦ x into {x >= 1}.
        let half = Polyhedron::from_h(1, &[(rat_vec(&[1]), rat(1))]);
        let cyl = half.affine_preimage(&[rat_vec(&[1, 0])], &rat_vec(&[0]), 2).unwrap();
        assert_eq!(cyl.lineality(), &[ints(&[0, 1])]);
        assert_eq!(cyl.vertices(), &[rat_vec(&[1, 0])]);
        assert!(cyl.contains(&rat_vec(&[1, -7])));
    }

    #[test]
    fn scale_along_rays() {
        let p = shifted_orthant(&[1, 1]);
        assert_eq!(p.min_scale_on_ray(&rat_vec(&[1, 1])).unwrap(), Some(rat(1)));
        assert_eq!(p.min_scale_on_ray(&rat_vec(&[2, 1])).unwrap(), Some(rat(1)));
        assert_eq!(p.min_scale_on_ray(&rat_vec(&[3, 2])).unwrap(), Some(ratio(1, 2)));
        assert_eq!(p.min_scale_on_ray(&rat_vec(&[1, 0])).unwrap(), None);
        assert_eq!(Polyhedron::orthant(2).min_scale_on_ray(&rat_vec(&[1, 3])).unwrap(), Some(rat(0)));
        assert!(p.min_scale_on_ray(&rat_vec(&[0, 0])).is_err());
    }

    #[test]
    fn inclusion() {
        let o = Polyhedron::orthant(2);
        let p = shifted_orthant(&[1, 1]);
        assert!(o.includes(&o).unwrap());
        assert!(o.includes(&p).unwrap());
        assert!(!p.includes(&o).unwrap());
    }

    #[test]
    fn duals() {
        let o = ConeRep::from_polyhedron(Polyhedron::orthant(2));
        assert_eq!(dual_cone(&o), o);
        let ray = ConeRep::from_rays(2, &[ints(&[1, 0])]);
        let d = dual_cone(&ray);
        assert_eq!(d.h_rows(), vec![ints(&[1, 0])]);
        assert_eq!(dual_cone(&d), ray);
        // Nef cone of H_2 in the basis (E, F).
        let nef = ConeRep::from_rays(2, &[ints(&[0, 1]), ints(&[1, 2])]);
        let d = dual_cone(&nef);
        assert_eq!(d.extremal_rays(), &[ints(&[-2, 1]), ints(&[1, 0])]);
        assert_eq!(dual_cone(&d), nef);
    }

    #[test]
    fn lower_dimensional_canonical_form() {
        // The segment from (0,0) to (1,1), built two ways.
        let a = Polyhedron::from_v(2, &[rat_vec(&[0, 0]), rat_vec(&[1, 1])], &[]);
        let b = Polyhedron::from_h(
            2,
            &[(rat_vec(&[1, -1]), rat(0)), (rat_vec(&[-1, 1]), rat(0)), (rat_vec(&[1, 0]), rat(0)), (rat_vec(&[-1, 0]), rat(-1))],
        );
        assert_eq!(a, b);
        assert_eq!(a.affine_dim(), Some(1));
    }

    #[test]
    fn lattice_enumeration() {
        let sq = Window::cube(2, 0, 2).to_polyhedron();
        assert_eq!(sq.lattice_points().unwrap().len(), 9);
        assert!(Polyhedron::orthant(2).lattice_points().is_err());
    }
}
