use super::fan::Fan;
use super::variety::{make_variety, ToricVariety};
use crate::error::{Error, Result};
use crate::exactgeom::intmatrix::IntMatrix;

fn cycle_cones(k: usize) -> Vec<Vec<usize>> {
    (0..k).map(|i| {
        let mut c = vec![i, (i + 1) % k];
        c.sort_unstable();
        c
    }).collect()
}

pub fn projective_space(n: usize) -> Result<ToricVariety> {
    if n == 0 {
        return Err(Error::Invalid("projective space needs n >= 1".into()));
    }
    let mut rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    rays.push(vec![-1; n]);
    let cones = (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).collect()).collect();
    let deg = IntMatrix::from_rows(n + 1, &[vec![1; n + 1]]);
    make_variety(&format!("P{n}"), Fan::new(n, rays, cones)?, Some(deg))
}

/// Rays (1,0),(0,1),(-1,0),(0,-1); x0,x2 span one factor and x1,x3 the other.
pub fn p1xp1() -> Result<ToricVariety> {
    let rays = vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]];
    let deg = IntMatrix::from_rows(4, &[vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
    make_variety("P1xP1", Fan::new(2, rays, cycle_cones(4))?, Some(deg))
}

/// Product of projective spaces, factors in order; Pic basis is one
/// hyperplane class per factor.
pub fn product(dims: &[usize]) -> Result<ToricVariety> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::Invalid("factor dimensions must be positive".into()));
    }
    let n: usize = dims.iter().sum();
    let mut rays = Vec::new();
    let mut factor_rays: Vec<Vec<usize>> = Vec::new();
    let mut offset = 0;
    for &d in dims {
        let mut idx = Vec::new();
        for i in 0..=d {
            let mut v = vec![0i64; n];
            if i < d {
                v[offset + i] = 1;
            } else {
                for j in 0..d {
                    v[offset + j] = -1;
                }
            }
            idx.push(rays.len());
            rays.push(v);
        }
        factor_rays.push(idx);
        offset += d;
    }
    let mut cones: Vec<Vec<usize>> = vec![Vec::new()];
    for idx in &factor_rays {
        let mut next = Vec::new();
        for c in &cones {
            for &skip in idx {
                let mut c2 = c.clone();
                c2.extend(idx.iter().copied().filter(|&i| i != skip));
                next.push(c2);
            }
        }
        cones = next;
    }
    let k = rays.len();
    let deg_rows: Vec<Vec<i64>> = factor_rays
        .iter()
        .map(|idx| (0..k).map(|i| idx.contains(&i) as i64).collect())
        .collect();
    let name = dims.iter().map(|d| format!("P{d}")).collect::<Vec<_>>().join("x");
    make_variety(&name, Fan::new(n, rays, cones)?, Some(IntMatrix::from_rows(k, &deg_rows)))
}

/// H_a with rays (1,0),(0,1),(-1,a),(0,-1); Pic basis (E, F).
pub fn hirzebruch(a: i64) -> Result<ToricVariety> {
    let rays = vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]];
    let deg = IntMatrix::from_rows(4, &[vec![0, 1, 0, 1], vec![1, 0, 1, a]]);
    make_variety(&format!("H{a}"), Fan::new(2, rays, cycle_cones(4))?, Some(deg))
}

pub fn f23() -> Result<ToricVariety> {
    let rays = vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![-1, 0], vec![0, -1]];
    let deg = IntMatrix::from_rows(
        5,
        &[vec![1, -1, 1, 0, 0], vec![0, 1, -1, 1, 0], vec![0, 0, 1, -1, 1]],
    );
    make_variety("F23", Fan::new(2, rays, cycle_cones(5))?, Some(deg))
}

/// Blowup of F23 at the point V(x0, x4); Pic coordinates are those of F23
/// followed by the exceptional class.
pub fn f24() -> Result<ToricVariety> {
    let rays = vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![-1, 0], vec![0, -1], vec![1, -1]];
    let cones = vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 1], vec![4, 5], vec![0, 5]];
    let deg = IntMatrix::from_rows(
        6,
        &[
            vec![1, -1, 1, 0, 0, 0],
            vec![0, 1, -1, 1, 0, 0],
            vec![0, 0, 1, -1, 1, 0],
            vec![-1, 0, 0, 0, -1, 1],
        ],
    );
    let x = make_variety("F24", Fan::new(2, rays, cones)?, Some(deg))?;
    // The nef cone has five extremal rays in rank four; use their primitive generators.
    let gens = x.nef_cone().extremal_rays().to_vec();
    x.with_nef_generators(gens)
}

/// Looks up a built-in by name: `P<n>`, `P1xP1`, `P<a>xP<b>...`, `H<a>`, `F23`, `F24`.
pub fn builtin(name: &str) -> Result<ToricVariety> {
    let bad = || Error::Invalid(format!("unknown built-in variety '{name}'"));
    match name {
        "P1xP1" => return p1xp1(),
        "F23" => return f23(),
        "F24" => return f24(),
        _ => {}
    }
    if let Some(a) = name.strip_prefix('H') {
        return hirzebruch(a.parse().map_err(|_| bad())?);
    }
    let dims: Vec<usize> = name
        .split('x')
        .map(|f| f.strip_prefix('P').and_then(|d| d.parse().ok()).ok_or_else(bad))
        .collect::<Result<_>>()?;
    if dims.len() == 1 {
        projective_space(dims[0])
    } else {
        product(&dims)
    }
}
