//! Hausdorff distance in the L∞ metric between finite unions of polyhedra,
//! clipped to a window.

use super::lp::{maximize, LpResult};
use super::polyhedron::{facets_of_generators, Polyhedron, Window};
use super::rational::{primitive_of_rational, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distance {
    Finite(Rational),
    /// Exactly one of the two clipped regions is empty.
    Infinite,
}

impl Distance {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Distance::Finite(d) if d.is_zero())
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Distance {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => a.cmp(b),
            (Distance::Finite(_), Distance::Infinite) => Ordering::Less,
            (Distance::Infinite, Distance::Finite(_)) => Ordering::Greater,
            (Distance::Infinite, Distance::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{}", super::rational::fmt_rational(d)),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

/// Affine minorants ℓ(x) = c - g·x whose maximum is the L∞ distance to a
/// bounded polyhedron.
#[derive(Clone, Debug)]
struct DistanceFunction {
    pieces: Vec<(Vec<Rational>, Rational)>,
}

impl DistanceFunction {
    fn new(b: &Polyhedron) -> Self {
        let d = b.dim();
        // Generators of {(x, δ) : dist(x, b) <= δ} with homogenizing coordinate last.
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        for v in b.vertices() {
            let mut h: Vec<Rational> = v.clone();
            h.push(Rational::zero());
            h.push(Rational::one());
            gens.push(primitive_of_rational(&h));
        }
        for mask in 0..(1u32 << d) {
            let mut g: Vec<BigInt> = (0..d).map(|i| BigInt::from(if mask >> i & 1 == 1 { -1 } else { 1 })).collect();
            g.push(BigInt::one());
            g.push(BigInt::zero());
            gens.push(g);
        }
        let mut pieces = Vec::new();
        for h in facets_of_generators(d + 2, &gens) {
            let hd = &h[d];
            if !hd.is_positive() {
                continue;
            }
            let hd = Rational::from_integer(hd.clone());
            let g: Vec<Rational> = h[..d].iter().map(|x| Rational::from_integer(x.clone()) / &hd).collect();
            let c = -Rational::from_integer(h[d + 1].clone()) / &hd;
            pieces.push((g, c));
        }
        pieces.sort();
        pieces.dedup();
        DistanceFunction { pieces }
    }

    fn eval_piece(&self, k: usize, x: &[Rational]) -> Rational {
        let (g, c) = &self.pieces[k];
        let mut s = c.clone();
        for (gi, xi) in g.iter().zip(x) {
            if !gi.is_zero() {
                s -= gi * xi;
            }
        }
        s
    }

    fn eval(&self, x: &[Rational]) -> Rational {
        (0..self.pieces.len()).map(|k| self.eval_piece(k, x)).max().unwrap_or_else(Rational::zero)
    }
}

/// sup over x ∈ a of min_j dist(x, b_j), for bounded nonempty a.
fn directed_piece(a: &Polyhedron, targets: &[DistanceFunction]) -> Rational {
    let verts = a.vertices();
    let at_vertices = verts
        .iter()
        .map(|v| targets.iter().map(|t| t.eval(v)).min().expect("nonempty target"))
        .max()
        .expect("bounded nonempty piece has a vertex");
    if targets.len() == 1 {
        return at_vertices;
    }
    // min_j max_k ℓ_jk = max over selections σ of min_j ℓ_jσ(j); each selection
    // is a linear program. Selections whose vertex bound cannot beat the
    // incumbent are skipped.
    let upper: Vec<Vec<Rational>> = targets
        .iter()
        .map(|t| (0..t.pieces.len()).map(|k| verts.iter().map(|v| t.eval_piece(k, v)).max().unwrap()).collect())
        .collect();
    let d = a.dim();
    let mut rows: Vec<(Vec<Rational>, Rational)> = a
        .h_rows()
        .into_iter()
        .map(|(mut g, b)| {
            g.push(Rational::zero());
            (g, b)
        })
        .collect();
    let base = rows.len();
    let mut obj = vec![Rational::zero(); d + 1];
    obj[d] = Rational::one();
    let mut best = at_vertices;
    let mut sel = vec![0usize; targets.len()];
    loop {
        let bound = sel.iter().enumerate().map(|(j, &k)| upper[j][k].clone()).min().unwrap();
        if bound > best {
            rows.truncate(base);
            for (j, &k) in sel.iter().enumerate() {
                // c - g·x - δ >= 0
                let (g, c) = &targets[j].pieces[k];
                let mut coeffs: Vec<Rational> = g.iter().map(|x| -x.clone()).collect();
                coeffs.push(-Rational::one());
                rows.push((coeffs, -c.clone()));
            }
            if let LpResult::Optimal { value, .. } = maximize(&obj, &rows) {
                if value > best {
                    best = value;
                }
            }
        }
        let mut j = 0;
        loop {
            if j == sel.len() {
                return best;
            }
            sel[j] += 1;
            if sel[j] < targets[j].pieces.len() {
                break;
            }
            sel[j] = 0;
            j += 1;
        }
    }
}

fn clip(region: &[Polyhedron], w: &Polyhedron) -> Result<Vec<Polyhedron>> {
    let mut out = Vec::new();
    for p in region {
        let c = p.intersect(w)?;
        if !c.is_empty() {
            out.push(c);
        }
    }
    Ok(out)
}

/// sup over x ∈ ∪a of dist(x, ∪b) for already clipped, nonempty unions.
pub(crate) fn directed(a: &[Polyhedron], b: &[Polyhedron]) -> Rational {
    let targets: Vec<DistanceFunction> = b.iter().map(DistanceFunction::new).collect();
    a.iter().map(|p| directed_piece(p, &targets)).max().unwrap_or_else(Rational::zero)
}

/// L∞ distance from a point to a union of bounded polyhedra.
pub fn point_distance(x: &[Rational], b: &[Polyhedron]) -> Option<Rational> {
    b.iter().filter(|p| !p.is_empty()).map(|p| DistanceFunction::new(p).eval(x)).min()
}

pub fn windowed_hausdorff(p: &[Polyhedron], q: &[Polyhedron], w: &Window) -> Result<Distance> {
    let wp = w.to_polyhedron();
    for r in p.iter().chain(q) {
        if r.dim() != w.dim() {
            return Err(Error::DimensionMismatch { expected: w.dim(), got: r.dim() });
        }
    }
    let pc = clip(p, &wp)?;
    let qc = clip(q, &wp)?;
    match (pc.is_empty(), qc.is_empty()) {
        (true, true) => return Ok(Distance::Finite(Rational::zero())),
        (true, false) | (false, true) => return Ok(Distance::Infinite),
        _ => {}
    }
    let d1 = directed(&pc, &qc);
    let d2 = directed(&qc, &pc);
    Ok(Distance::Finite(d1.max(d2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::{rat, rat_vec, ratio};

    fn orthant_at(v: &[i64]) -> Polyhedron {
        Polyhedron::orthant(v.len()).translate_int(v)
    }

    #[test]
    fn identical_and_shift() {
        let w = Window::cube(2, 0, 10);
        let p = orthant_at(&[1, 0]);
        assert!(windowed_hausdorff(std::slice::from_ref(&p), std::slice::from_ref(&p), &w).unwrap().is_zero());
        let d = windowed_hausdorff(&[p], &[Polyhedron::orthant(2)], &w).unwrap();
        assert_eq!(d, Distance::Finite(rat(1)));
    }

    #[test]
    fn staircase_against_hull() {
        let w = Window::cube(2, 0, 10);
        let stairs = vec![orthant_at(&[7, 0]), orthant_at(&[0, 3])];
        let hull = Polyhedron::from_v(2, &[rat_vec(&[7, 0]), rat_vec(&[0, 3])], Polyhedron::orthant(2).rays());
        let d = windowed_hausdorff(&stairs, std::slice::from_ref(&hull), &w).unwrap();
        assert_eq!(d, Distance::Finite(ratio(21, 10)));
        let d = windowed_hausdorff(&[hull], &stairs, &w).unwrap();
        assert_eq!(d, Distance::Finite(ratio(21, 10)));
    }

    #[test]
    fn empty_cases() {
        let w = Window::cube(2, 0, 1);
        let far = orthant_at(&[5, 5]);
        assert!(windowed_hausdorff(std::slice::from_ref(&far), std::slice::from_ref(&far), &w).unwrap().is_zero());
        assert_eq!(windowed_hausdorff(&[far], &[Polyhedron::orthant(2)], &w).unwrap(), Distance::Infinite);
    }

    #[test]
    fn point_to_box() {
        let b = Window::cube(2, 0, 1).to_polyhedron();
        assert_eq!(point_distance(&rat_vec(&[3, -1]), std::slice::from_ref(&b)), Some(rat(2)));
        assert_eq!(point_distance(&[ratio(1, 2), ratio(1, 3)], &[b]), Some(rat(0)));
    }
}
