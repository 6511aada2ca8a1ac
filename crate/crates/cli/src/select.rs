use seshadri_core::coxalg::{en_complex, power, taylor_complex, FreeComplex, MonomialIdeal};
use seshadri_core::exactgeom::polyhedron::Window;
use seshadri_core::exactgeom::rational::{parse_rational, Rational};
use seshadri_core::io::{parse_fan, parse_ideal};
use seshadri_core::toric::{builtin, make_variety, ToricVariety};
use std::fs;
use std::path::Path;
use std::sync::Arc;

use crate::Failure;

/// `P1xP1`, `Pn 3`, `hirzebruch 2`, `F23`, `F24`, `file:<path>`, or any
/// built-in name such as `P2`, `H1`, `P1xP2`.
pub fn variety(words: &[String]) -> Result<ToricVariety, Failure> {
    let usage = |m: String| Failure::Usage(m);
    match words {
        [kind, n] if kind == "Pn" => {
            let n: usize = n.parse().map_err(|_| usage(format!("bad dimension '{n}'")))?;
            Ok(builtin(&format!("P{n}"))?)
        }
        [kind, a] if kind == "hirzebruch" => {
            let a: i64 = a.parse().map_err(|_| usage(format!("bad Hirzebruch index '{a}'")))?;
            Ok(builtin(&format!("H{a}"))?)
        }
        [one] => match one.strip_prefix("file:") {
            Some(path) => variety_file(Path::new(path)),
            None => builtin(one).map_err(|e| usage(e.to_string())),
        },
        _ => Err(usage(format!("cannot read variety selector {words:?}"))),
    }
}

pub fn variety_file(path: &Path) -> Result<ToricVariety, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let (fan, deg) = parse_fan(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let name = path.file_stem().map_or("file".into(), |s| s.to_string_lossy().into_owned());
    let x = make_variety(&name, fan, deg)?;
    if x.nef_generators().is_err() {
        let gens = x.nef_cone().extremal_rays().to_vec();
        return Ok(x.with_nef_generators(gens)?);
    }
    Ok(x)
}

/// `rays:0,1` (0-based ray indices) or `vars:x0,x4`; an empty list is the unit ideal.
pub fn center(x: &ToricVariety, spec: &str) -> Result<Vec<usize>, Failure> {
    let bad = |m: String| Failure::Usage(m);
    let (kind, list) = spec.split_once(':').ok_or_else(|| bad(format!("center '{spec}' needs a rays: or vars: prefix")))?;
    let items: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let mut out = Vec::new();
    for it in items {
        let idx = match kind {
            "rays" => it.parse::<usize>().map_err(|_| bad(format!("bad ray index '{it}'")))?,
            "vars" => x.var_index(it).ok_or_else(|| bad(format!("unknown variable '{it}'")))?,
            _ => return Err(bad(format!("unknown center kind '{kind}'"))),
        };
        if idx >= x.num_rays() {
            return Err(bad(format!("ray index {idx} out of range")));
        }
        out.push(idx);
    }
    Ok(out)
}

pub fn int_list(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("bad integer '{t}' in '{s}'"))))
        .collect()
}

pub fn rational_list(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',')
        .map(|t| parse_rational(t).ok_or_else(|| Failure::Usage(format!("bad rational '{t}' in '{s}'"))))
        .collect()
}

/// Summands separated by `;`, e.g. `2,0;0,2`.
pub fn bundle(s: &str) -> Result<Vec<Vec<i64>>, Failure> {
    s.split(';').map(int_list).collect()
}

/// `lo:hi` with comma-separated corners, e.g. `0,0,0:4,4,4`.
pub fn window(s: &str, dim: usize) -> Result<Window, Failure> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| Failure::Usage(format!("window '{s}' must be lo:hi")))?;
    let (lo, hi) = (rational_list(lo)?, rational_list(hi)?);
    if lo.len() != dim || hi.len() != dim {
        return Err(Failure::Usage(format!("window corners must have {dim} coordinates")));
    }
    Window::new(lo, hi).map_err(|e| Failure::Usage(e.to_string()))
}

pub struct IdealArgs<'a> {
    pub variety: &'a [String],
    pub center: Option<&'a str>,
    pub ideal: Option<&'a Path>,
}

/// The ideal either from a file or from a cone, together with its variety.
pub fn ideal(args: &IdealArgs) -> Result<MonomialIdeal, Failure> {
    match (args.ideal, args.center) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let f = parse_ideal(&text).map_err(|e| Failure::Usage(e.to_string()))?;
            let x = match f.variety.strip_prefix("file:") {
                Some(p) => variety_file(Path::new(p))?,
                None if f.variety.ends_with(".fan") => {
                    let base = path.parent().unwrap_or(Path::new("."));
                    variety_file(&base.join(&f.variety))?
                }
                None => variety(std::slice::from_ref(&f.variety))?,
            };
            Ok(MonomialIdeal::new(Arc::new(x), f.generators)?)
        }
        (None, Some(c)) => {
            let x = variety(args.variety)?;
            let sigma = center(&x, c)?;
            Ok(MonomialIdeal::of_cone(Arc::new(x), &sigma)?)
        }
        _ => Err(Failure::Usage("give exactly one of --center or --ideal".into())),
    }
}

/// Eagon–Northcott for two generators with disjoint support, Taylor otherwise.
pub fn resolve(ideal: &MonomialIdeal, p: u32) -> Result<FreeComplex, Failure> {
    if p == 0 {
        return Err(Failure::Usage("--power starts at 1".into()));
    }
    let gens = ideal.generators();
    let disjoint = gens.len() == 2 && gens[0].iter().zip(&gens[1]).all(|(a, b)| *a == 0 || *b == 0);
    if disjoint {
        return Ok(en_complex(ideal, p)?);
    }
    Ok(taylor_complex(&power(ideal, p)?)?)
}
