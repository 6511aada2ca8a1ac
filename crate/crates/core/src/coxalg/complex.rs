use super::ideal::MonomialIdeal;
use crate::error::{Error, Result};
use crate::exactgeom::rational::{rat, Rational};
use crate::toric::FineDegree;
use num_traits::Zero;
use std::collections::BTreeMap;

const TAYLOR_MAX_GENERATORS: usize = 20;

/// Entry of the differential from step k to step k−1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialEntry {
    pub row: usize,
    pub col: usize,
    pub coeff: Rational,
    pub exponent: FineDegree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStep {
    pub twists: Vec<FineDegree>,
    /// Sparse map into the previous step's free module; empty for step 0.
    pub differential: Vec<MonomialEntry>,
}

/// ⊕ S(−a) modules resolving an ideal; step 0 maps onto the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    pub steps: Vec<ComplexStep>,
}

fn entry(row: usize, col: usize, coeff: Rational, src: &[i64], tgt: &[i64]) -> MonomialEntry {
    MonomialEntry { row, col, coeff, exponent: src.iter().zip(tgt).map(|(a, b)| a - b).collect() }
}

impl FreeComplex {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn twists(&self, k: usize) -> &[FineDegree] {
        &self.steps[k].twists
    }

    /// Exponents match twist differences and consecutive differentials compose to zero.
    pub fn check(&self) -> Result<()> {
        for k in 1..self.steps.len() {
            for e in &self.steps[k].differential {
                let want: Vec<i64> = self.steps[k].twists[e.col].iter().zip(&self.steps[k - 1].twists[e.row]).map(|(a, b)| a - b).collect();
                if want != e.exponent || e.exponent.iter().any(|&v| v < 0) {
                    return Err(Error::Invalid(format!("bad exponent at step {k}")));
                }
            }
        }
        for k in 2..self.steps.len() {
            let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
            for outer in &self.steps[k - 1].differential {
                for inner in &self.steps[k].differential {
                    if inner.row == outer.col {
                        *acc.entry((outer.row, inner.col)).or_insert_with(Rational::zero) += &outer.coeff * &inner.coeff;
                    }
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return Err(Error::Invalid(format!("d∘d ≠ 0 at step {k}")));
            }
        }
        Ok(())
    }
}

pub fn taylor_complex(ideal: &MonomialIdeal) -> Result<FreeComplex> {
    let gens = ideal.generators();
    let t = gens.len();
    if t > TAYLOR_MAX_GENERATORS {
        return Err(Error::SizeGuard(format!("Taylor complex on {t} generators needs 2^{t} faces")));
    }
    let k = gens[0].len();
    let lcm = |mask: u32| -> FineDegree {
        (0..k).map(|c| (0..t).filter(|&j| mask >> j & 1 == 1).map(|j| gens[j][c]).max().unwrap_or(0)).collect()
    };
    let mut faces: Vec<Vec<u32>> = vec![Vec::new(); t];
    for mask in 1u32..(1 << t) {
        faces[mask.count_ones() as usize - 1].push(mask);
    }
    let mut steps = Vec::new();
    for s in 0..t {
        let twists: Vec<FineDegree> = faces[s].iter().map(|&m| lcm(m)).collect();
        let mut differential = Vec::new();
        if s > 0 {
            let index: BTreeMap<u32, usize> = faces[s - 1].iter().enumerate().map(|(i, &m)| (m, i)).collect();
            for (col, &m) in faces[s].iter().enumerate() {
                let bits: Vec<u32> = (0..t as u32).filter(|b| m >> b & 1 == 1).collect();
                for (pos, b) in bits.iter().enumerate() {
                    let sub = m & !(1 << b);
                    let row = index[&sub];
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    differential.push(entry(row, col, rat(sign), &twists[col], &lcm(sub)));
                }
            }
        }
        steps.push(ComplexStep { twists, differential });
    }
    Ok(FreeComplex { steps })
}

/// 0 → ⊕_{a+b=p−1} S(−(a+1)g₁−(b+1)g₂) → ⊕_{a+b=p} S(−a g₁−b g₂) for a
/// complete intersection ⟨g₁, g₂⟩ with disjoint supports.
pub fn en_complex(ideal: &MonomialIdeal, p: u32) -> Result<FreeComplex> {
    let gens = ideal.generators();
    if gens.len() != 2 {
        return Err(Error::NotCompleteIntersection(format!("{} generators", gens.len())));
    }
    let (g1, g2) = (&gens[0], &gens[1]);
    if g1.iter().zip(g2).any(|(a, b)| *a > 0 && *b > 0) {
        return Err(Error::NotCompleteIntersection("generator supports overlap".into()));
    }
    if p == 0 {
        return Err(Error::Invalid("powers start at 1".into()));
    }
    let p = p as i64;
    let comb = |a: i64, b: i64| -> FineDegree { g1.iter().zip(g2).map(|(x, y)| a * x + b * y).collect() };
    let twists0: Vec<FineDegree> = (0..=p).map(|a| comb(a, p - a)).collect();
    let twists1: Vec<FineDegree> = (0..p).map(|a| comb(a + 1, p - a)).collect();
    let mut differential = Vec::new();
    for a in 0..p {
        let col = a as usize;
        // g₂·u_{a+1,b} − g₁·u_{a,b+1}, b = p−1−a
        differential.push(entry(col + 1, col, rat(1), &twists1[col], &twists0[col + 1]));
        differential.push(entry(col, col, rat(-1), &twists1[col], &twists0[col]));
    }
    Ok(FreeComplex {
        steps: vec![
            ComplexStep { twists: twists0, differential: Vec::new() },
            ComplexStep { twists: twists1, differential },
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxalg::power;
    use crate::toric::builtins::{f23, p1xp1};
    use std::sync::Arc;

    #[test]
    fn taylor_shapes() {
        let x = Arc::new(f23().unwrap());
        let one = MonomialIdeal::new(x.clone(), vec![vec![1, 0, 0, 0, 0]]).unwrap();
        let c = taylor_complex(&one).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.steps[0].differential.is_empty());
        let three = MonomialIdeal::new(x.clone(), vec![vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0], vec![0, 0, 1, 1, 0]]).unwrap();
        let c = taylor_complex(&three).unwrap();
        assert_eq!(c.steps.iter().map(|s| s.twists.len()).collect::<Vec<_>>(), vec![3, 3, 1]);
        c.check().unwrap();
        let two = MonomialIdeal::of_cone(x, &[0, 4]).unwrap();
        let t = taylor_complex(&two).unwrap();
        let en = en_complex(&two, 1).unwrap();
        for k in 0..2 {
            let mut a = t.twists(k).to_vec();
            let mut b = en.twists(k).to_vec();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
        assert_eq!(t.steps[1].twists, vec![vec![1, 0, 0, 0, 1]]);
    }

    #[test]
    fn eagon_northcott_twists() {
        let q = Arc::new(p1xp1().unwrap());
        let i = MonomialIdeal::of_cone(q.clone(), &[1, 2]).unwrap();
        for p in 1..5u32 {
            let c = en_complex(&i, p).unwrap();
            c.check().unwrap();
            let pic0: Vec<Vec<i64>> = c.twists(0).iter().map(|a| q.degree_of(a)).collect();
            let pic1: Vec<Vec<i64>> = c.twists(1).iter().map(|a| q.degree_of(a)).collect();
            let p = p as i64;
            let mut want0: Vec<Vec<i64>> = (0..=p).map(|a| vec![a, p - a]).collect();
            let mut want1: Vec<Vec<i64>> = (0..p).map(|a| vec![a + 1, p - a]).collect();
            let (mut g0, mut g1) = (pic0.clone(), pic1.clone());
            for v in [&mut want0, &mut want1, &mut g0, &mut g1] {
                v.sort();
            }
            assert_eq!((g0, g1), (want0, want1));
        }
        let f = Arc::new(f23().unwrap());
        let i = MonomialIdeal::of_cone(f.clone(), &[0, 4]).unwrap();
        let c = en_complex(&i, 3).unwrap();
        let pic1: Vec<Vec<i64>> = c.twists(1).iter().map(|a| f.degree_of(a)).collect();
        assert!(pic1.contains(&vec![1, 0, 3]) && pic1.contains(&vec![3, 0, 1]));
        let gens: Vec<Vec<i64>> = c.twists(0).to_vec();
        let mut pw = power(&i, 3).unwrap().generators().to_vec();
        let mut g = gens.clone();
        pw.sort();
        g.sort();
        assert_eq!(g, pw);
    }

    #[test]
    fn en_refusals() {
        let f = Arc::new(f23().unwrap());
        let overlap = MonomialIdeal::new(f.clone(), vec![vec![1, 1, 0, 0, 0], vec![0, 1, 1, 0, 0]]).unwrap();
        assert!(matches!(en_complex(&overlap, 2), Err(Error::NotCompleteIntersection(_))));
        let three = MonomialIdeal::new(f, vec![vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0], vec![0, 0, 1, 0, 0]]).unwrap();
        assert!(en_complex(&three, 1).is_err());
    }
}
