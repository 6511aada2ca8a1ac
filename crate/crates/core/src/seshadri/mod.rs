use crate::blowup::{pullback_minus_exceptional, star_subdivision};
use crate::error::{Error, Result};
use crate::exactgeom::intmatrix::IntMatrix;
use crate::exactgeom::polyhedron::{ConeRep, Polyhedron};
use crate::exactgeom::rational::{rat, Rational};
use crate::toric::{make_variety, DivisorClass, Fan, ToricVariety};
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Center(Vec<usize>),
    Bundle(Vec<DivisorClass>),
}

#[derive(Clone, Debug)]
pub struct SeshadriRegion {
    pub region: Polyhedron,
    pub provenance: Provenance,
    pub recession: ConeRep,
}

impl SeshadriRegion {
    fn new(region: Polyhedron, provenance: Provenance) -> Self {
        let recession = region.recession_cone();
        SeshadriRegion { region, provenance, recession }
    }
}

/// Summands D₀, ..., D_k of ⊕ O(D_i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitBundle {
    pub summands: Vec<Vec<i64>>,
}

impl SplitBundle {
    pub fn new(summands: Vec<Vec<i64>>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::Invalid("a bundle needs at least one summand".into()));
        }
        Ok(SplitBundle { summands })
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn twist(&self, t: &[i64]) -> SplitBundle {
        SplitBundle {
            summands: self.summands.iter().map(|d| d.iter().zip(t).map(|(a, b)| a + b).collect()).collect(),
        }
    }
}

/// The linear span of `basis` as a polyhedron.
pub fn subspace(dim: usize, basis: &[Vec<Rational>]) -> Polyhedron {
    let rays: Vec<Vec<BigInt>> = basis
        .iter()
        .flat_map(|v| {
            let p = crate::exactgeom::rational::primitive_of_rational(v);
            let n: Vec<BigInt> = p.iter().map(|x| -x).collect();
            [p, n]
        })
        .collect();
    Polyhedron::from_v(dim, &[vec![Rational::zero(); dim]], &rays)
}

fn restrict(region: Polyhedron, v: Option<&[Vec<Rational>]>) -> Result<Polyhedron> {
    match v {
        None => Ok(region),
        Some(basis) => region.intersect(&subspace(region.dim(), basis)),
    }
}

pub fn sesh_region(x: &ToricVariety, sigma: &[usize], v: Option<&[Vec<Rational>]>) -> Result<SeshadriRegion> {
    let (bl, phi) = star_subdivision(x, sigma)?;
    let region = if phi.new_ray_index.is_none() {
        x.nef_polyhedron().clone()
    } else {
        let (a, b) = pullback_minus_exceptional(&phi);
        bl.nef_polyhedron().affine_preimage(&a, &b, x.picard_rank())?
    };
    Ok(SeshadriRegion::new(restrict(region, v)?, Provenance::Center(phi.center)))
}

/// ε_H = 1 / min{t : tH ∈ region}; zero when the ray misses the region.
pub fn seshadri_constant(s: &SeshadriRegion, h: &[Rational]) -> Result<Rational> {
    match s.region.min_scale_on_ray(h)? {
        None => Ok(Rational::zero()),
        Some(t) if t.is_zero() => Err(Error::Invalid("the region contains the origin, so the constant is unbounded".into())),
        Some(t) => Ok(t.recip()),
    }
}

/// P(O ⊕ O(D₁−D₀) ⊕ ... ⊕ O(D_k−D₀)) with Pic coordinates (Pic X, ξ), where
/// ξ is the class F of O(1). Rays: base lifts, then the fiber ray of summand
/// 0, then those of summands 1..k.
pub fn projectivize_split(x: &ToricVariety, b: &SplitBundle) -> Result<(ToricVariety, DivisorClass)> {
    let k = b.rank() - 1;
    if k == 0 {
        return Err(Error::Invalid("projectivization needs rank at least 2".into()));
    }
    let r = x.picard_rank();
    for d in &b.summands {
        if d.len() != r {
            return Err(Error::DimensionMismatch { expected: r, got: d.len() });
        }
    }
    let d0 = &b.summands[0];
    let rel: Vec<Vec<i64>> = b.summands[1..].iter().map(|d| d.iter().zip(d0).map(|(a, c)| a - c).collect()).collect();
    let lifts: Vec<Vec<i64>> = rel.iter().map(|d| x.lift(d)).collect();
    let fan = x.fan();
    let n = fan.dim;
    let nb = fan.num_rays();
    let mut rays: Vec<Vec<i64>> = (0..nb)
        .map(|rho| {
            let mut v = fan.rays[rho].clone();
            v.extend(lifts.iter().map(|a| a[rho]));
            v
        })
        .collect();
    let mut y0 = vec![0i64; n];
    y0.extend(std::iter::repeat_n(-1, k));
    rays.push(y0);
    for j in 0..k {
        let mut v = vec![0i64; n + k];
        v[n + j] = 1;
        rays.push(v);
    }
    let fiber: Vec<usize> = (nb..nb + k + 1).collect();
    let mut cones = Vec::new();
    for c in &fan.max_cones {
        for &skip in &fiber {
            let mut c2 = c.clone();
            c2.extend(fiber.iter().copied().filter(|&i| i != skip));
            cones.push(c2);
        }
    }
    let total = nb + k + 1;
    let mut deg = IntMatrix::zeros(r + 1, total);
    for rho in 0..nb {
        for (t, v) in x.ray_class(rho).iter().enumerate() {
            deg.set(t, rho, BigInt::from(*v));
        }
    }
    deg.set(r, nb, BigInt::one());
    for (j, d) in rel.iter().enumerate() {
        for (t, v) in d.iter().enumerate() {
            deg.set(t, nb + 1 + j, BigInt::from(-v));
        }
        deg.set(r, nb + 1 + j, BigInt::one());
    }
    let pe = make_variety(&format!("P({})", x.name()), Fan::new(n + k, rays, cones)?, Some(deg))?;
    let mut f = vec![Rational::zero(); r + 1];
    f[r] = Rational::one();
    Ok((pe, f))
}

pub fn sesh_bundle(x: &ToricVariety, b: &SplitBundle, v: Option<&[Vec<Rational>]>) -> Result<SeshadriRegion> {
    let r = x.picard_rank();
    let d0: Vec<Rational> = b.summands[0].iter().map(|&a| rat(a)).collect();
    let normalized = if b.rank() == 1 {
        x.nef_polyhedron().clone()
    } else {
        let (pe, f) = projectivize_split(x, b)?;
        let a: Vec<Vec<Rational>> = (0..=r).map(|i| (0..r).map(|j| rat((i == j) as i64)).collect()).collect();
        pe.nef_polyhedron().affine_preimage(&a, &f, r)?
    };
    let neg: Vec<Rational> = d0.iter().map(|x| -x).collect();
    let region = restrict(normalized.translate(&neg), v)?;
    Ok(SeshadriRegion::new(region, Provenance::Bundle(b.summands.iter().map(|d| d.iter().map(|&a| rat(a)).collect()).collect())))
}

/// {L : L·C ≥ −min_i D_i·C} over the torus-invariant curves C of X.
pub fn sesh_bundle_by_curves(x: &ToricVariety, b: &SplitBundle) -> Polyhedron {
    let r = x.picard_rank();
    let unit = |j: usize| -> Vec<Rational> { (0..r).map(|i| rat((i == j) as i64)).collect() };
    let rows: Vec<(Vec<Rational>, Rational)> = x
        .invariant_curves()
        .iter()
        .map(|c| {
            let a: Vec<Rational> = (0..r).map(|j| x.curve_degree(c, &unit(j))).collect();
            let mu = b
                .summands
                .iter()
                .map(|d| x.curve_degree(c, &d.iter().map(|&v| rat(v)).collect::<Vec<_>>()))
                .min()
                .expect("nonempty bundle");
            (a, -mu)
        })
        .collect();
    Polyhedron::from_h(r, &rows)
}
