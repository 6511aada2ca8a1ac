//! Plot geometry for regions of dimension at most 3: vertices, bounded and
//! unbounded edges, and facet polygons.

use num_bigint::BigInt;
use num_traits::Zero;
use seshadri_core::exactgeom::linalg::rank;
use seshadri_core::exactgeom::polyhedron::Polyhedron;
use seshadri_core::exactgeom::rational::{fmt_rational, to_f64, Rational};
use serde::Serialize;

#[derive(Serialize)]
pub struct Coord {
    pub exact: String,
    pub decimal: String,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Edge {
    Bounded { from: usize, to: usize },
    Unbounded { from: usize, ray: usize },
}

#[derive(Serialize)]
pub struct Facet {
    pub inequality: Vec<String>,
    /// Vertex indices in cyclic order around the facet.
    pub vertices: Vec<usize>,
    pub rays: Vec<usize>,
}

#[derive(Serialize)]
pub struct Geometry {
    pub ambient_dim: usize,
    pub empty: bool,
    pub vertices: Vec<Vec<Coord>>,
    pub rays: Vec<Vec<String>>,
    pub edges: Vec<Edge>,
    pub facets: Vec<Facet>,
}

fn coord(x: &Rational) -> Coord {
    Coord { exact: fmt_rational(x), decimal: format!("{:.6}", to_f64(x)) }
}

pub fn geometry(p: &Polyhedron) -> Result<Geometry, String> {
    let d = p.dim();
    if d > 3 {
        return Err(format!("plot data needs ambient dimension at most 3, got {d}"));
    }
    if p.is_empty() {
        return Ok(Geometry { ambient_dim: d, empty: true, vertices: vec![], rays: vec![], edges: vec![], facets: vec![] });
    }
    if !p.lineality().is_empty() {
        return Err("plot data needs a pointed region".into());
    }
    let ineqs = p.inequalities();
    let verts = p.vertices();
    let rays = p.rays();
    let tight_v: Vec<Vec<usize>> =
        verts.iter().map(|v| (0..ineqs.len()).filter(|&k| ineqs[k].eval(v).is_zero()).collect()).collect();
    let tight_r: Vec<Vec<usize>> = rays
        .iter()
        .map(|r| (0..ineqs.len()).filter(|&k| ineqs[k].a.iter().zip(r).map(|(a, b)| a * b).sum::<BigInt>().is_zero()).collect())
        .collect();
    let equalities: Vec<usize> = (0..ineqs.len()).filter(|k| tight_v.iter().all(|t| t.contains(k)) && tight_r.iter().all(|t| t.contains(k))).collect();
    let face_rank = |common: &[usize]| -> usize {
        let m: Vec<Vec<Rational>> = common.iter().map(|&k| ineqs[k].as_rational().0).collect();
        if m.is_empty() {
            0
        } else {
            rank(&m)
        }
    };
    let meet = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().filter(|k| b.contains(k)).copied().collect() };
    // One-dimensional faces have tight normals of rank d − 1.
    let want = d.saturating_sub(1);
    let mut edges = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let common = meet(&tight_v[i], &tight_v[j]);
            if face_rank(&common) == want && !(0..verts.len()).any(|k| k != i && k != j && common.iter().all(|c| tight_v[k].contains(c))) {
                edges.push(Edge::Bounded { from: i, to: j });
            }
        }
        for (r, tr) in tight_r.iter().enumerate() {
            let common = meet(&tight_v[i], tr);
            if face_rank(&common) == want {
                edges.push(Edge::Unbounded { from: i, ray: r });
            }
        }
    }
    let mut facets = Vec::new();
    for (k, h) in ineqs.iter().enumerate() {
        if equalities.contains(&k) {
            continue;
        }
        let vs: Vec<usize> = (0..verts.len()).filter(|&i| tight_v[i].contains(&k)).collect();
        let rs: Vec<usize> = (0..rays.len()).filter(|&r| tight_r[r].contains(&k)).collect();
        let mut inequality = vec![fmt_rational(&h.b)];
        inequality.extend(h.a.iter().map(|x| x.to_string()));
        facets.push(Facet { inequality, vertices: cyclic(verts, &vs, &h.a), rays: rs });
    }
    Ok(Geometry {
        ambient_dim: d,
        empty: false,
        vertices: verts.iter().map(|v| v.iter().map(coord).collect()).collect(),
        rays: rays.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        edges,
        facets,
    })
}

/// Orders a planar facet's vertices by angle about their centroid; the
/// angles only fix the display order.
fn cyclic(verts: &[Vec<Rational>], idx: &[usize], normal: &[BigInt]) -> Vec<usize> {
    if idx.len() < 3 || normal.len() != 3 {
        return idx.to_vec();
    }
    let pts: Vec<[f64; 3]> = idx.iter().map(|&i| [to_f64(&verts[i][0]), to_f64(&verts[i][1]), to_f64(&verts[i][2])]).collect();
    let n: Vec<f64> = normal.iter().map(|x| x.to_string().parse::<f64>().unwrap_or(0.0)).collect();
    let c: Vec<f64> = (0..3).map(|t| pts.iter().map(|p| p[t]).sum::<f64>() / pts.len() as f64).collect();
    let u: Vec<f64> = (0..3).map(|t| pts[0][t] - c[t]).collect();
    let v = [n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2], n[0] * u[1] - n[1] * u[0]];
    let mut order: Vec<(f64, usize)> = pts
        .iter()
        .zip(idx)
        .map(|(p, &i)| {
            let w: Vec<f64> = (0..3).map(|t| p[t] - c[t]).collect();
            let x: f64 = w.iter().zip(&u).map(|(a, b)| a * b).sum();
            let y: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
            (y.atan2(x), i)
        })
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    order.into_iter().map(|(_, i)| i).collect()
}
