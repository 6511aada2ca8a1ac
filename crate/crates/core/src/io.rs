//! JSON forms of regions, fans, ideals, verdicts and reports. Rationals are
//! strings "p/q", with q omitted when it is 1.

use crate::coxalg::CohomologyRow;
use crate::error::{Error, Result};
use crate::exactgeom::intmatrix::IntMatrix;
use crate::exactgeom::polyhedron::Polyhedron;
use crate::exactgeom::rational::{fmt_rational, parse_rational, Rational};
use crate::exactgeom::region::RegionUnion;
use crate::limits::ConvergenceReport;
use crate::regularity::Verdict;
use crate::toric::Fan;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionJson {
    pub ambient_dim: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub empty: bool,
    /// Rows [b, a₁, …, a_r] meaning a·x ≥ b.
    pub inequalities: Vec<Vec<String>>,
    pub vertices: Vec<Vec<String>>,
    pub rays: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionJson {
    pub ambient_dim: usize,
    pub pieces: Vec<RegionJson>,
}

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

fn istrs(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn parse_row(row: &[String]) -> Result<Vec<Rational>> {
    row.iter().map(|s| parse_rational(s).ok_or_else(|| Error::Invalid(format!("bad rational '{s}'")))).collect()
}

pub fn region_json(p: &Polyhedron) -> RegionJson {
    if p.is_empty() {
        return RegionJson { ambient_dim: p.dim(), empty: true, inequalities: Vec::new(), vertices: Vec::new(), rays: Vec::new() };
    }
    let inequalities = p
        .inequalities()
        .iter()
        .map(|h| {
            let mut row = vec![fmt_rational(&h.b)];
            row.extend(istrs(&h.a));
            row
        })
        .collect();
    RegionJson {
        ambient_dim: p.dim(),
        empty: false,
        inequalities,
        vertices: p.vertices().iter().map(|v| strs(v)).collect(),
        rays: p.all_rays().iter().map(|r| istrs(r)).collect(),
    }
}

/// Rebuilds from the inequalities and checks the stored generators against them.
pub fn region_from_json(j: &RegionJson) -> Result<Polyhedron> {
    let d = j.ambient_dim;
    if j.empty {
        return Ok(Polyhedron::empty(d));
    }
    let mut rows = Vec::new();
    for row in &j.inequalities {
        if row.len() != d + 1 {
            return Err(Error::DimensionMismatch { expected: d + 1, got: row.len() });
        }
        let q = parse_row(row)?;
        rows.push((q[1..].to_vec(), q[0].clone()));
    }
    let p = Polyhedron::from_h(d, &rows);
    if !j.vertices.is_empty() || !j.rays.is_empty() {
        let verts = j.vertices.iter().map(|v| parse_row(v)).collect::<Result<Vec<_>>>()?;
        let mut rays = Vec::new();
        for r in &j.rays {
            let q = parse_row(r)?;
            if q.iter().any(|x| !x.is_integer()) {
                return Err(Error::Invalid("rays must be integral".into()));
            }
            rays.push(q.iter().map(|x| x.to_integer()).collect::<Vec<BigInt>>());
        }
        if let Some(v) = verts.iter().find(|v| v.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: v.len() });
        }
        if let Some(r) = rays.iter().find(|r| r.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: r.len() });
        }
        if Polyhedron::from_v(d, &verts, &rays) != p {
            return Err(Error::Invalid("vertices and rays disagree with the inequalities".into()));
        }
    }
    Ok(p)
}

pub fn union_json(u: &RegionUnion) -> UnionJson {
    UnionJson { ambient_dim: u.dim(), pieces: u.pieces().iter().map(region_json).collect() }
}

pub fn union_from_json(j: &UnionJson) -> Result<RegionUnion> {
    RegionUnion::new(j.ambient_dim, j.pieces.iter().map(region_from_json).collect::<Result<_>>()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg: Option<Vec<Vec<i64>>>,
}

/// Parses a fan file; schema errors carry serde's line and column.
pub fn parse_fan(text: &str) -> Result<(Fan, Option<IntMatrix>)> {
    let f: FanFile = serde_json::from_str(text).map_err(|e| Error::MalformedFan(e.to_string()))?;
    let fan = Fan::new(f.dim, f.rays, f.max_cones)?;
    let deg = match f.deg {
        None => None,
        Some(rows) => {
            if rows.iter().any(|r| r.len() != fan.num_rays()) {
                return Err(Error::BadDegreeMatrix(format!("rows must have {} entries", fan.num_rays())));
            }
            Some(IntMatrix::from_rows(fan.num_rays(), &rows))
        }
    };
    Ok((fan, deg))
}

pub fn fan_file(fan: &Fan, deg: Option<&IntMatrix>) -> FanFile {
    FanFile {
        dim: fan.dim,
        rays: fan.rays.clone(),
        max_cones: fan.max_cones.clone(),
        deg: deg.map(|m| {
            m.to_rows().iter().map(|r| r.iter().map(|x| i64::try_from(x).expect("small degree entries")).collect()).collect()
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealFile {
    /// Built-in name or a fan file path.
    pub variety: String,
    pub generators: Vec<Vec<i64>>,
}

pub fn parse_ideal(text: &str) -> Result<IdealFile> {
    serde_json::from_str(text).map_err(|e| Error::Invalid(format!("ideal file: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRowJson {
    pub i: usize,
    pub e: Vec<i64>,
    pub dim: u64,
}

pub fn cohomology_json(rows: &[CohomologyRow]) -> Vec<CohomologyRowJson> {
    rows.iter().map(|r| CohomologyRowJson { i: r.i, e: r.e.clone(), dim: r.dim }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub searched_radius: Option<u32>,
}

pub fn verdict_json(v: &Verdict) -> VerdictJson {
    let mut j = VerdictJson { kind: String::new(), method: None, witness: None, index: None, dim: None, searched_radius: None };
    match v {
        Verdict::CertifiedIn { method } => {
            j.kind = "certified-in".into();
            j.method = Some(method.to_string());
        }
        Verdict::CertifiedOut { witness, index, dim } => {
            j.kind = "certified-out".into();
            j.witness = Some(witness.clone());
            j.index = Some(*index);
            j.dim = Some(*dim);
        }
        Verdict::Inconclusive { searched_radius } => {
            j.kind = "inconclusive".into();
            j.searched_radius = Some(*searched_radius);
        }
    }
    j
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub p: u32,
    /// "p/q" or "inf".
    pub distance: String,
    pub inclusions: Vec<(String, bool)>,
    /// [certified, tried] lattice points merged into the entry.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified: Option<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub tag: String,
    pub records: Vec<RecordJson>,
    pub fitted_constant: Option<String>,
    pub nonincreasing: bool,
    pub consistent: bool,
    pub verdict: String,
}

pub fn report_json(r: &ConvergenceReport) -> ReportJson {
    ReportJson {
        tag: r.tag.clone(),
        records: r
            .records
            .iter()
            .map(|x| RecordJson { p: x.p, distance: x.distance.to_string(), inclusions: x.inclusions.clone(), certified: x.certified })
            .collect(),
        fitted_constant: r.fitted_constant.as_ref().map(fmt_rational),
        nonincreasing: r.nonincreasing,
        consistent: r.consistent,
        verdict: r.verdict.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::ratio;
    use crate::toric::builtin;
    use proptest::prelude::*;

    #[test]
    fn region_round_trip() {
        let p = Polyhedron::orthant(2).translate_int(&[1, 1]);
        let j = region_json(&p);
        assert_eq!(j.vertices, vec![vec!["1".to_string(), "1".to_string()]]);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"ambient_dim\":2"));
        let back = region_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, p);
        let e = region_json(&Polyhedron::empty(3));
        assert!(e.empty && region_from_json(&e).unwrap().is_empty());
    }

    #[test]
    fn region_rejects_inconsistent_generators() {
        let mut j = region_json(&Polyhedron::orthant(2));
        j.vertices = vec![vec!["1".into(), "0".into()]];
        assert!(region_from_json(&j).is_err());
        j.inequalities[0].push("3".into());
        assert!(matches!(region_from_json(&j), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn fan_files() {
        let x = builtin("F23").unwrap();
        let text = serde_json::to_string(&fan_file(x.fan(), Some(x.deg()))).unwrap();
        let (fan, deg) = parse_fan(&text).unwrap();
        assert_eq!(&fan, x.fan());
        assert_eq!(deg.as_ref(), Some(x.deg()));
        let dup = r#"{"dim":1,"rays":[[1],[1]],"max_cones":[[0],[1]]}"#;
        assert!(matches!(parse_fan(dup), Err(Error::MalformedFan(m)) if m.contains("coincide")));
        let missing = "{\n  \"dim\": 1,\n  \"rays\": [[1],[-1]]\n}";
        match parse_fan(missing) {
            Err(Error::MalformedFan(m)) => assert!(m.contains("max_cones") && m.contains("line"), "{m}"),
            other => panic!("{other:?}"),
        }
        assert!(parse_fan(r#"{"dim":1,"rays":[[2],[-1]],"max_cones":[[0],[1]]}"#).is_err());
    }

    #[test]
    fn verdicts() {
        let j = verdict_json(&Verdict::CertifiedOut { witness: vec![-1, 0], index: 1, dim: 1 });
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"kind":"certified-out","witness":[-1,0],"index":1,"dim":1}"#);
        let j = verdict_json(&Verdict::Inconclusive { searched_radius: 4 });
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"kind":"inconclusive","searched_radius":4}"#);
    }

    proptest! {
        #[test]
        fn round_trip_random(pts in prop::collection::vec(prop::collection::vec(-5i64..5, 2), 1..5), den in 1i64..4, ray in 0usize..3) {
            let verts: Vec<Vec<Rational>> = pts.iter().map(|v| v.iter().map(|&a| ratio(a, den)).collect()).collect();
            let rays: Vec<Vec<BigInt>> = [vec![1, 0], vec![1, 1], vec![0, -1]][..ray].iter().map(|r| r.iter().map(|&a| BigInt::from(a)).collect()).collect();
            let p = Polyhedron::from_v(2, &verts, &rays);
            let text = serde_json::to_string(&region_json(&p)).unwrap();
            let back = region_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            prop_assert!(back.includes(&p).unwrap() && p.includes(&back).unwrap());
            prop_assert_eq!(back, p);
        }
    }
}
