use crate::error::{Error, Result};
use crate::toric::{FineDegree, ToricVariety};
use std::sync::Arc;

/// Monomial ideal of the Cox ring with minimal generators in lex order.
#[derive(Clone, Debug)]
pub struct MonomialIdeal {
    variety: Arc<ToricVariety>,
    generators: Vec<FineDegree>,
}

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(mut gens: Vec<FineDegree>) -> Vec<FineDegree> {
    gens.sort();
    gens.dedup();
    let keep: Vec<bool> = (0..gens.len())
        .map(|i| !(0..gens.len()).any(|j| j != i && divides(&gens[j], &gens[i])))
        .collect();
    gens.into_iter().zip(keep).filter_map(|(g, k)| k.then_some(g)).collect()
}

impl MonomialIdeal {
    pub fn new(x: Arc<ToricVariety>, generators: Vec<FineDegree>) -> Result<Self> {
        let k = x.num_rays();
        if generators.is_empty() {
            return Err(Error::Invalid("an ideal needs at least one generator".into()));
        }
        for g in &generators {
            if g.len() != k {
                return Err(Error::DimensionMismatch { expected: k, got: g.len() });
            }
            if g.iter().any(|&v| v < 0) {
                return Err(Error::Invalid(format!("exponents must be nonnegative: {g:?}")));
            }
        }
        Ok(MonomialIdeal { variety: x, generators: minimalize(generators) })
    }

    pub fn unit(x: Arc<ToricVariety>) -> Self {
        let k = x.num_rays();
        MonomialIdeal { variety: x, generators: vec![vec![0; k]] }
    }

    /// ⟨x_ρ : ρ ∈ σ⟩, the ideal of the orbit closure of σ; the unit ideal for σ = ∅.
    pub fn of_cone(x: Arc<ToricVariety>, sigma: &[usize]) -> Result<Self> {
        if sigma.is_empty() {
            return Ok(Self::unit(x));
        }
        let k = x.num_rays();
        let gens = sigma
            .iter()
            .map(|&i| {
                if i >= k {
                    return Err(Error::NotACone(sigma.to_vec()));
                }
                let mut g = vec![0; k];
                g[i] = 1;
                Ok(g)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(x, gens)
    }

    pub fn variety(&self) -> &ToricVariety {
        &self.variety
    }

    pub fn variety_arc(&self) -> &Arc<ToricVariety> {
        &self.variety
    }

    pub fn generators(&self) -> &[FineDegree] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].iter().all(|&v| v == 0)
    }

    pub fn contains(&self, alpha: &[i64]) -> bool {
        self.generators.iter().any(|g| divides(g, alpha))
    }

    /// Membership after inverting the variables off σ: some generator divides α on σ(1).
    pub fn contains_on_chart(&self, alpha: &[i64], sigma: &[usize]) -> bool {
        self.generators.iter().any(|g| sigma.iter().all(|&i| g[i] <= alpha[i]))
    }
}

pub fn power(ideal: &MonomialIdeal, p: u32) -> Result<MonomialIdeal> {
    if p == 0 {
        return Err(Error::Invalid("powers start at 1".into()));
    }
    let mut cur = ideal.generators.clone();
    for _ in 1..p {
        let mut next = Vec::with_capacity(cur.len() * ideal.generators.len());
        for a in &cur {
            for g in &ideal.generators {
                next.push(a.iter().zip(g).map(|(x, y)| x + y).collect());
            }
        }
        cur = minimalize(next);
    }
    Ok(MonomialIdeal { variety: ideal.variety.clone(), generators: cur })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::builtins::f23;

    fn ideal(gens: Vec<Vec<i64>>) -> MonomialIdeal {
        MonomialIdeal::new(Arc::new(f23().unwrap()), gens).unwrap()
    }

    #[test]
    fn squares() {
        let i = ideal(vec![vec![1, 0, 0, 0, 0], vec![0, 0, 0, 0, 1]]);
        assert_eq!(power(&i, 1).unwrap().generators(), i.generators());
        assert_eq!(
            power(&i, 2).unwrap().generators(),
            &[vec![0, 0, 0, 0, 2], vec![1, 0, 0, 0, 1], vec![2, 0, 0, 0, 0]]
        );
        let j = ideal(vec![vec![1, 1, 0, 0, 0], vec![0, 0, 1, 0, 0]]);
        assert_eq!(
            power(&j, 2).unwrap().generators(),
            &[vec![0, 0, 2, 0, 0], vec![1, 1, 1, 0, 0], vec![2, 2, 0, 0, 0]]
        );
    }

    #[test]
    fn minimal_generators() {
        let i = ideal(vec![vec![1, 0, 0, 0, 0], vec![2, 1, 0, 0, 0], vec![1, 0, 0, 0, 0]]);
        assert_eq!(i.generators(), &[vec![1, 0, 0, 0, 0]]);
        assert!(i.contains(&[3, 0, 1, 0, 0]) && !i.contains(&[0, 4, 0, 0, 0]));
    }

    #[test]
    fn power_of_power() {
        let i = ideal(vec![vec![1, 1, 0, 0, 0], vec![0, 0, 1, 0, 0], vec![0, 0, 0, 2, 1]]);
        for (a, b) in [(2, 2), (2, 3), (3, 1)] {
            let lhs = power(&power(&i, a).unwrap(), b).unwrap();
            assert_eq!(lhs.generators(), power(&i, a * b).unwrap().generators());
        }
    }
}
