mod harness;

pub use harness::{
    line_bundle_regular, reg_r_contains, sym_power_summands, theorem_a_harness, theorem_c_harness, LineBundleReg,
};

use crate::error::{Error, Result};
use crate::exactgeom::hausdorff::{windowed_hausdorff, Distance};
use crate::exactgeom::polyhedron::{Polyhedron, Window};
use crate::exactgeom::rational::{rat, Rational};
use crate::exactgeom::region::RegionUnion;
use std::collections::BTreeMap;
use std::ops::RangeInclusive;

#[derive(Clone, Debug)]
pub struct RegionSequence {
    pub entries: BTreeMap<u32, RegionUnion>,
    pub tag: String,
}

impl RegionSequence {
    pub fn new(tag: &str) -> Self {
        RegionSequence { entries: BTreeMap::new(), tag: tag.to_string() }
    }

    pub fn from_fn(tag: &str, ps: RangeInclusive<u32>, mut f: impl FnMut(u32) -> RegionUnion) -> Self {
        let mut s = Self::new(tag);
        for p in ps {
            s.insert(p, f(p));
        }
        s
    }

    pub fn insert(&mut self, p: u32, region: RegionUnion) {
        assert!(p >= 1, "sequence indices start at 1");
        self.entries.insert(p, region);
    }

    pub fn get(&self, p: u32) -> Option<&RegionUnion> {
        self.entries.get(&p)
    }
}

/// A_p ↦ A_p / p.
pub fn scale(seq: &RegionSequence) -> RegionSequence {
    let mut out = RegionSequence::new(&format!("{}/p", seq.tag));
    for (&p, r) in &seq.entries {
        out.insert(p, r.scale(&Rational::new(1.into(), p.into())));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Union (increasing) or intersection (decreasing) over the range, which for a
/// verified chain is the last entry; `stabilized` when the last two agree.
pub fn chain_limit(seq: &RegionSequence, dir: Direction, range: RangeInclusive<u32>) -> Result<(RegionUnion, bool)> {
    let items: Vec<(u32, &RegionUnion)> = seq.entries.range(range).map(|(p, r)| (*p, r)).collect();
    let Some(&(_, last)) = items.last() else {
        return Err(Error::Invalid("no entries in the requested range".into()));
    };
    for w in items.windows(2) {
        let (_, a) = w[0];
        let (q, b) = w[1];
        let ok = match dir {
            Direction::Increasing => b.includes(a)?,
            Direction::Decreasing => a.includes(b)?,
        };
        if !ok {
            return Err(Error::NotMonotone(q));
        }
    }
    let stabilized = items.len() >= 2 && items[items.len() - 2].1.set_eq(last)?;
    let stabilized = stabilized || items.len() == 1;
    Ok((last.clone(), stabilized))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PkRecord {
    pub p: u32,
    pub distance: Distance,
    pub inclusions: Vec<(String, bool)>,
    /// (certified, tried) lattice points merged into the entry, if any.
    pub certified: Option<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub tag: String,
    pub records: Vec<PkRecord>,
    /// max p·d_p; None when some distance is infinite.
    pub fitted_constant: Option<Rational>,
    pub nonincreasing: bool,
    pub consistent: bool,
    pub verdict: String,
}

impl ConvergenceReport {
    pub fn all_inclusions(&self) -> bool {
        self.records.iter().all(|r| r.inclusions.iter().all(|(_, b)| *b))
    }

    pub fn all_zero(&self) -> bool {
        self.records.iter().all(|r| r.distance.is_zero())
    }
}

pub(crate) fn assemble(tag: &str, records: Vec<PkRecord>) -> ConvergenceReport {
    let finite: Option<Vec<(u32, Rational)>> =
        records.iter().map(|r| r.distance.finite().map(|d| (r.p, d.clone()))).collect();
    let fitted_constant = finite.as_ref().map(|v| v.iter().map(|(p, d)| rat(*p as i64) * d).max().unwrap_or_else(|| rat(0)));
    let nonincreasing = records.windows(2).all(|w| w[1].distance <= w[0].distance);
    let consistent = match (&finite, &fitted_constant) {
        (Some(v), Some(c)) if !v.is_empty() => {
            let decay = v.iter().all(|(p, d)| d * rat(*p as i64) <= *c);
            decay && v.last().unwrap().1 <= v[0].1
        }
        _ => false,
    };
    let verdict = if consistent {
        "consistent with convergence (1/p decay is a heuristic check)".to_string()
    } else {
        "not consistent with convergence".to_string()
    };
    ConvergenceReport { tag: tag.to_string(), records, fitted_constant, nonincreasing, consistent, verdict }
}

/// Windowed Hausdorff distances d_p from seq(p) to the target for p ≤ p_max.
pub fn pk_report(seq: &RegionSequence, target: &RegionUnion, w: &Window, p_max: u32) -> Result<ConvergenceReport> {
    let mut records = Vec::new();
    for (&p, r) in seq.entries.range(1..=p_max) {
        let distance = windowed_hausdorff(r.pieces(), target.pieces(), w)?;
        records.push(PkRecord { p, distance, inclusions: Vec::new(), certified: None });
    }
    Ok(assemble(&seq.tag, records))
}

/// ∪_{i=0}^{p} (a(p−i), b·i) + R²≥0.
pub fn staircase(a: i64, b: i64, p: u32) -> RegionUnion {
    let p = p as i64;
    let pieces = (0..=p).map(|i| Polyhedron::orthant(2).translate_int(&[a * (p - i), b * i])).collect();
    RegionUnion::new(2, pieces).expect("planar pieces")
}
