use crate::error::{Error, Result};
use crate::exactgeom::intmatrix::IntMatrix;
use crate::exactgeom::rational::{rat, Rational};
use crate::toric::{make_variety, DivisorClass, Fan, ToricVariety};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// π: X̃ → X. Pic(X̃) coordinates are (pullback of the Pic(X) basis, E-coefficient).
#[derive(Clone, Debug)]
pub struct BlowupMorphism {
    pub target: ToricVariety,
    pub source: ToricVariety,
    pub center: Vec<usize>,
    /// None for the empty center, where π is the identity.
    pub new_ray_index: Option<usize>,
    pub pullback: IntMatrix,
    pub exceptional: DivisorClass,
}

pub fn star_subdivision(x: &ToricVariety, sigma: &[usize]) -> Result<(ToricVariety, BlowupMorphism)> {
    let mut sigma = sigma.to_vec();
    sigma.sort_unstable();
    sigma.dedup();
    let r = x.picard_rank();
    if sigma.is_empty() {
        let phi = BlowupMorphism {
            target: x.clone(),
            source: x.clone(),
            center: sigma,
            new_ray_index: None,
            pullback: IntMatrix::identity(r),
            exceptional: vec![Rational::zero(); r],
        };
        return Ok((x.clone(), phi));
    }
    if sigma.iter().any(|&i| i >= x.num_rays()) || !x.fan().is_cone(&sigma) {
        return Err(Error::NotACone(sigma));
    }
    if sigma.len() == 1 {
        return Err(Error::OneDimensionalCenter(sigma));
    }
    // Every cone of a smooth fan is smooth, so the sum of the rays is primitive.
    let fan = x.fan();
    let k = fan.num_rays();
    let new_ray: Vec<i64> = (0..fan.dim).map(|t| sigma.iter().map(|&i| fan.rays[i][t]).sum()).collect();
    let mut rays = fan.rays.clone();
    rays.push(new_ray);
    let mut cones = Vec::new();
    for c in &fan.max_cones {
        if sigma.iter().all(|i| c.contains(i)) {
            for rho in &sigma {
                let mut c2: Vec<usize> = c.iter().copied().filter(|i| i != rho).collect();
                c2.push(k);
                cones.push(c2);
            }
        } else {
            cones.push(c.clone());
        }
    }
    let new_fan = Fan::new(fan.dim, rays, cones)?;

    let mut deg = IntMatrix::zeros(r + 1, k + 1);
    for rho in 0..k {
        let col = x.ray_class(rho);
        for (t, v) in col.iter().enumerate() {
            deg.set(t, rho, BigInt::from(*v));
        }
        if sigma.contains(&rho) {
            deg.set(r, rho, -BigInt::one());
        }
    }
    deg.set(r, k, BigInt::one());
    let name = format!("Bl({})", x.name());
    let source = make_variety(&name, new_fan, Some(deg))?;
    let mut pullback = IntMatrix::zeros(r + 1, r);
    for i in 0..r {
        pullback.set(i, i, BigInt::one());
    }
    let mut exceptional = vec![Rational::zero(); r + 1];
    exceptional[r] = Rational::one();
    let phi = BlowupMorphism {
        target: x.clone(),
        source: source.clone(),
        center: sigma,
        new_ray_index: Some(k),
        pullback,
        exceptional,
    };
    Ok((source, phi))
}

/// π*D via a torus-invariant lift: Σ c_ρ D̃_ρ + (Σ_{ρ∈σ} c_ρ) E.
pub fn pullback_class(phi: &BlowupMorphism, d: &[Rational]) -> DivisorClass {
    pullback_of_lift(phi, &phi.target.lift_q(d))
}

pub fn pullback_of_lift(phi: &BlowupMorphism, c: &[Rational]) -> DivisorClass {
    let src = &phi.source;
    let r = src.picard_rank();
    let mut out = vec![Rational::zero(); r];
    for (rho, coef) in c.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        for (t, v) in src.ray_class(rho).iter().enumerate() {
            out[t] += coef * rat(*v);
        }
        if phi.center.contains(&rho) {
            for (t, e) in phi.exceptional.iter().enumerate() {
                out[t] += coef * e;
            }
        }
    }
    out
}

/// The affine map L ↦ π*L − E as (matrix rows over Pic(X), offset).
pub fn pullback_minus_exceptional(phi: &BlowupMorphism) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let a: Vec<Vec<Rational>> = (0..phi.pullback.rows())
        .map(|i| phi.pullback.row(i).iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let b: Vec<Rational> = phi.exceptional.iter().map(|e| -e).collect();
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::builtins::{f23, f24, hirzebruch, p1xp1, projective_space};
    use crate::toric::class;
    use proptest::prelude::*;

    fn sorted_fan(f: &Fan) -> (Vec<Vec<i64>>, Vec<Vec<Vec<i64>>>) {
        let mut rays = f.rays.clone();
        rays.sort();
        let mut cones: Vec<Vec<Vec<i64>>> = f
            .max_cones
            .iter()
            .map(|c| {
                let mut v: Vec<Vec<i64>> = c.iter().map(|&i| f.rays[i].clone()).collect();
                v.sort();
                v
            })
            .collect();
        cones.sort();
        (rays, cones)
    }

    #[test]
    fn p1xp1_point_gives_f23() {
        let q = p1xp1().unwrap();
        let (bl, _) = star_subdivision(&q, &[1, 2]).unwrap();
        assert_eq!(sorted_fan(bl.fan()), sorted_fan(f23().unwrap().fan()));
        assert!(bl.flags().smooth && bl.flags().complete);
    }

    #[test]
    fn f23_point_gives_f24() {
        let f = f23().unwrap();
        let (bl, phi) = star_subdivision(&f, &[0, 4]).unwrap();
        assert_eq!(bl.fan().rays[5], vec![1, -1]);
        assert_eq!(phi.new_ray_index, Some(5));
        let shipped = f24().unwrap();
        assert_eq!(sorted_fan(bl.fan()), sorted_fan(shipped.fan()));
        assert_eq!(bl.deg(), shipped.deg());
    }

    #[test]
    fn p2_point_gives_h1() {
        let p2 = projective_space(2).unwrap();
        let (bl, _) = star_subdivision(&p2, &[0, 1]).unwrap();
        let h1 = hirzebruch(1).unwrap();
        // Unimodular change of lattice basis sending the new ray (1,1) to (0,1).
        let g = [[1i64, -1], [0, 1]];
        let mapped: Vec<Vec<i64>> = bl.fan().rays.iter().map(|v| (0..2).map(|i| g[i][0] * v[0] + g[i][1] * v[1]).collect()).collect();
        let mapped_fan = Fan::new(2, mapped, bl.fan().max_cones.clone()).unwrap();
        assert_eq!(sorted_fan(&mapped_fan), sorted_fan(h1.fan()));
    }

    #[test]
    fn pullbacks_are_nef() {
        let q = p1xp1().unwrap();
        let (bl, phi) = star_subdivision(&q, &[1, 2]).unwrap();
        for g in q.nef_generators().unwrap() {
            let d: Vec<Rational> = g.iter().map(|x| Rational::from_integer(x.clone())).collect();
            assert!(bl.is_nef(&pullback_class(&phi, &d)));
        }
        assert!(pullback_class(&phi, &class(&[0, 0])).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn pullback_nef_cone_inclusion() {
        for (x, s) in [(p1xp1().unwrap(), vec![0, 1]), (f23().unwrap(), vec![0, 4]), (hirzebruch(2).unwrap(), vec![2, 3]), (projective_space(3).unwrap(), vec![0, 1])] {
            let (bl, phi) = star_subdivision(&x, &s).unwrap();
            let (a, _) = pullback_minus_exceptional(&phi);
            let pre = bl.nef_polyhedron().affine_preimage(&a, &vec![Rational::zero(); a.len()], x.picard_rank()).unwrap();
            assert!(pre.includes(x.nef_polyhedron()).unwrap(), "{}", x.name());
        }
    }

    #[test]
    fn proposition_hyperplane() {
        // π*(Pic) − E is the hyperplane d = Σ_{ρ∈σ} d_ρ − 1 in the coordinates d E + Σ d_i D_i.
        let f = f23().unwrap();
        let (_, phi) = star_subdivision(&f, &[0, 4]).unwrap();
        for e in [[1i64, 0, 1], [0, 1, 0], [2, -1, 3]] {
            let c = f.lift(&e);
            let mut lifted: Vec<Rational> = c.iter().map(|&v| rat(v)).collect();
            let d: Rational = rat(c[0] + c[4]) - rat(1);
            lifted.push(d);
            let img: Vec<Rational> = phi.source.deg().to_rows().iter().map(|row| row.iter().zip(&lifted).map(|(a, b)| Rational::from_integer(a.clone()) * b).sum()).collect();
            let direct: Vec<Rational> = pullback_class(&phi, &class(&e)).iter().zip(&phi.exceptional).map(|(a, b)| a - b).collect();
            assert_eq!(img, direct);
        }
    }

    #[test]
    fn degenerate_centers() {
        let q = p1xp1().unwrap();
        let (same, phi) = star_subdivision(&q, &[]).unwrap();
        assert_eq!(same, q);
        assert!(phi.exceptional.iter().all(|x| x.is_zero()));
        assert!(matches!(star_subdivision(&q, &[0]), Err(Error::OneDimensionalCenter(_))));
        assert!(matches!(star_subdivision(&q, &[0, 2]), Err(Error::NotACone(_))));
    }

    #[test]
    fn every_center_stays_smooth() {
        for x in [p1xp1().unwrap(), f23().unwrap(), f24().unwrap(), hirzebruch(2).unwrap(), projective_space(3).unwrap()] {
            let n = x.num_rays();
            for c in x.fan().max_cones.clone() {
                for mask in 1u32..(1 << c.len()) {
                    if mask.count_ones() < 2 {
                        continue;
                    }
                    let s: Vec<usize> = (0..c.len()).filter(|i| mask >> i & 1 == 1).map(|i| c[i]).collect();
                    let (bl, _) = star_subdivision(&x, &s).unwrap();
                    assert_eq!(bl.num_rays(), n + 1);
                    assert!(bl.flags().smooth && bl.flags().complete);
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn lift_independence(e in proptest::collection::vec(-10i64..10, 3), m in proptest::collection::vec(-5i64..5, 2)) {
            let f = f23().unwrap();
            let (_, phi) = star_subdivision(&f, &[0, 4]).unwrap();
            let c = f.lift(&e);
            let shifted: Vec<Rational> = (0..5).map(|i| rat(c[i] + m[0] * f.fan().rays[i][0] + m[1] * f.fan().rays[i][1])).collect();
            prop_assert_eq!(pullback_of_lift(&phi, &shifted), pullback_class(&phi, &class(&e)));
        }
    }
}
