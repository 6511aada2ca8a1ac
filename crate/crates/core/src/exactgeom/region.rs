use super::polyhedron::{Ineq, Polyhedron, Window};
use super::rational::{dot_int, dot_ir, Rational};
use crate::error::{Error, Result};
use num_traits::{Signed, Zero};

/// Finite union of polyhedra in a common ambient space. The empty list is the
/// empty region.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegionUnion {
    dim: usize,
    pieces: Vec<Polyhedron>,
}

/// Does `a` reach strictly below the inequality a·x >= b somewhere?
fn dips_below(p: &Polyhedron, ineq: &Ineq) -> bool {
    p.vertices().iter().any(|v| dot_ir(&ineq.a, v) < ineq.b)
        || p.rays().iter().any(|r| dot_int(&ineq.a, r).is_negative())
        || p.lineality().iter().any(|l| !dot_int(&ineq.a, l).is_zero())
}

/// Exact test a ⊆ ∪ bs for closed polyhedra.
fn covered(a: &Polyhedron, bs: &[Polyhedron]) -> bool {
    if a.is_empty() {
        return true;
    }
    let Some((b, rest)) = bs.split_first() else {
        return false;
    };
    if b.includes(a).unwrap_or(false) {
        return true;
    }
    // a \ b is the union of a ∩ {g·x < c} over rows of b; each closes up to
    // a ∩ {g·x <= c} whenever it is nonempty.
    for ineq in b.inequalities() {
        if !dips_below(a, ineq) {
            continue;
        }
        let flipped: Vec<Rational> = ineq.a.iter().map(|x| Rational::from_integer(-x.clone())).collect();
        let part = Polyhedron::from_h(a.dim(), &[(flipped, -ineq.b.clone())]);
        let part = a.intersect(&part).expect("same ambient dimension");
        if !covered(&part, rest) {
            return false;
        }
    }
    true
}

impl RegionUnion {
    pub fn new(dim: usize, pieces: Vec<Polyhedron>) -> Result<Self> {
        if let Some(p) = pieces.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
        }
        let mut ps: Vec<Polyhedron> = pieces.into_iter().filter(|p| !p.is_empty()).collect();
        ps.sort_by(|a, b| a.inequalities().cmp(b.inequalities()));
        ps.dedup();
        // Drop pieces swallowed by another piece.
        let mut keep: Vec<Polyhedron> = Vec::new();
        for (i, p) in ps.iter().enumerate() {
            let swallowed = ps.iter().enumerate().any(|(j, q)| {
                j != i && q.includes(p).unwrap() && (!p.includes(q).unwrap() || j < i)
            });
            if !swallowed {
                keep.push(p.clone());
            }
        }
        Ok(RegionUnion { dim, pieces: keep })
    }

    pub fn empty(dim: usize) -> Self {
        RegionUnion { dim, pieces: Vec::new() }
    }

    pub fn single(p: Polyhedron) -> Self {
        let dim = p.dim();
        RegionUnion::new(dim, vec![p]).expect("matching dimension")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[Polyhedron] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        self.pieces.iter().any(|p| p.contains_int(x))
    }

    /// True iff other ⊆ self.
    pub fn includes(&self, other: &RegionUnion) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        Ok(other.pieces.iter().all(|p| covered(p, &self.pieces)))
    }

    pub fn includes_polyhedron(&self, p: &Polyhedron) -> Result<bool> {
        if self.dim != p.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim, got: p.dim() });
        }
        Ok(covered(p, &self.pieces))
    }

    pub fn set_eq(&self, other: &RegionUnion) -> Result<bool> {
        Ok(self.includes(other)? && other.includes(self)?)
    }

    pub fn union(&self, other: &RegionUnion) -> Result<RegionUnion> {
        let mut ps = self.pieces.clone();
        ps.extend(other.pieces.iter().cloned());
        RegionUnion::new(self.dim, ps)
    }

    pub fn intersect(&self, other: &RegionUnion) -> Result<RegionUnion> {
        let mut ps = Vec::new();
        for a in &self.pieces {
            for b in &other.pieces {
                ps.push(a.intersect(b)?);
            }
        }
        RegionUnion::new(self.dim, ps)
    }

    pub fn intersect_polyhedron(&self, p: &Polyhedron) -> Result<RegionUnion> {
        self.intersect(&RegionUnion::single(p.clone()))
    }

    pub fn translate(&self, v: &[Rational]) -> RegionUnion {
        let ps = self.pieces.iter().map(|p| p.translate(v)).collect();
        RegionUnion::new(self.dim, ps).expect("same dimension")
    }

    pub fn scale(&self, lambda: &Rational) -> RegionUnion {
        let ps = self.pieces.iter().map(|p| p.scale(lambda)).collect();
        RegionUnion::new(self.dim, ps).expect("same dimension")
    }

    pub fn clip(&self, w: &Window) -> Result<RegionUnion> {
        self.intersect_polyhedron(&w.to_polyhedron())
    }

    pub fn is_bounded(&self) -> bool {
        self.pieces.iter().all(|p| p.is_bounded())
    }
}
