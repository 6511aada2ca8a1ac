mod plot;
mod select;

use clap::{Args, Parser, Subcommand};
use seshadri_core::coxalg::cohomology_table;
use seshadri_core::exactgeom::hausdorff::windowed_hausdorff;
use seshadri_core::exactgeom::polyhedron::{box_points, Polyhedron};
use seshadri_core::exactgeom::rational::fmt_rational;
use seshadri_core::exactgeom::region::RegionUnion;
use seshadri_core::io::{
    cohomology_json, fan_file, parse_fan, region_from_json, region_json, report_json, union_from_json, union_json,
    verdict_json, CohomologyRowJson, RegionJson, UnionJson,
};
use seshadri_core::limits::{theorem_a_harness, theorem_c_harness};
use seshadri_core::regularity::{inner_bound_two_term, reg_membership, DEFAULT_RADIUS};
use seshadri_core::seshadri::{sesh_bundle, sesh_region, seshadri_constant, SplitBundle};
use seshadri_core::toric::{make_variety, validate, ToricVariety};
use seshadri_core::blowup::star_subdivision;
use serde::Serialize;
use serde_json::json;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

pub enum Failure {
    Usage(String),
    Math(seshadri_core::Error),
}

impl From<seshadri_core::Error> for Failure {
    fn from(e: seshadri_core::Error) -> Self {
        Failure::Math(e)
    }
}

#[derive(Parser)]
#[command(name = "seshadri-lab", version, about = "Seshadri regions, regularity and convergence checks on toric varieties")]
struct Cli {
    /// Map independent p values over a worker pool (size capped by SESHADRI_LAB_THREADS).
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct VarietyArg {
    /// P1xP1 | Pn <n> | hirzebruch <a> | F23 | F24 | file:<path> (or a built-in name such as P2, H1, P1xP2)
    #[arg(long, num_args = 1..=2, value_name = "SELECTOR", required = true)]
    variety: Vec<String>,
}

#[derive(Args)]
struct IdealArg {
    #[arg(long, num_args = 1..=2, value_name = "SELECTOR")]
    variety: Vec<String>,
    /// rays:<i,j,..> or vars:<x0,x4,..>
    #[arg(long)]
    center: Option<String>,
    /// Ideal file with keys variety and generators.
    #[arg(long)]
    ideal: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    power: u32,
}

#[derive(Args)]
struct Output {
    /// Also write the result to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write plot geometry (vertices, edges, facets) to this file.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ToricCmd {
    /// Smoothness, completeness and simpliciality of the fan.
    Validate(VarietyArg),
    /// Nef cone and its generators.
    Nef(VarietyArg),
}

#[derive(Subcommand)]
enum Cmd {
    #[command(subcommand)]
    Toric(ToricCmd),
    /// Star subdivision along a cone.
    Blowup {
        #[command(flatten)]
        v: VarietyArg,
        #[arg(long)]
        center: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seshadri region of the ideal of a torus-invariant center.
    Sesh {
        #[command(flatten)]
        v: VarietyArg,
        #[arg(long)]
        center: String,
        /// Restrict to the span of these vectors (repeatable).
        #[arg(long, allow_hyphen_values = true)]
        subspace: Vec<String>,
        /// Print the Seshadri constant along this class instead.
        #[arg(long, allow_hyphen_values = true)]
        constant: Option<String>,
        #[command(flatten)]
        o: Output,
    },
    /// Seshadri region of a split bundle, summands separated by ';'.
    SeshBundle {
        #[command(flatten)]
        v: VarietyArg,
        #[arg(long, allow_hyphen_values = true)]
        bundle: String,
        #[command(flatten)]
        o: Output,
    },
    /// Cohomology table rows (i, e, dim) of O(e) or of the ideal sheaf twisted by e.
    Cohomology {
        #[command(flatten)]
        a: IdealArg,
        /// Class e (repeatable).
        #[arg(long = "class", allow_hyphen_values = true)]
        classes: Vec<String>,
        /// All integral classes in lo:hi.
        #[arg(long = "box", allow_hyphen_values = true)]
        range: Option<String>,
    },
    /// Inner bound of the regularity region from the resolution.
    RegBound {
        #[command(flatten)]
        a: IdealArg,
        #[command(flatten)]
        o: Output,
    },
    /// Tiered membership test d ∈ reg.
    RegCheck {
        #[command(flatten)]
        a: IdealArg,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        #[arg(long, default_value_t = DEFAULT_RADIUS)]
        radius: u32,
    },
    /// Scaled regularity regions of powers against the Seshadri region.
    ConvergeIdeal {
        #[command(flatten)]
        v: VarietyArg,
        #[arg(long)]
        center: String,
        #[arg(long)]
        pmax: u32,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// Scaled regularity regions of symmetric powers against sesh of the bundle.
    ConvergeBundle {
        #[command(flatten)]
        v: VarietyArg,
        #[arg(long, allow_hyphen_values = true)]
        bundle: String,
        #[arg(long)]
        pmax: u32,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// Windowed Hausdorff distance between two region files.
    PkDistance {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    print!("{text}");
    if let Some(path) = out {
        fs::write(path, &text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn emit_region(p: &Polyhedron, o: &Output) -> Result<(), Failure> {
    if let Some(path) = &o.plot {
        let g = plot::geometry(p).map_err(|m| Failure::Math(seshadri_core::Error::Invalid(m)))?;
        let text = serde_json::to_string_pretty(&g).expect("serializable") + "\n";
        fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    emit(&region_json(p), o.out.as_deref())
}

fn read_region(path: &Path) -> Result<RegionUnion, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if let Ok(u) = serde_json::from_str::<UnionJson>(&text) {
        return Ok(union_from_json(&u)?);
    }
    let r: RegionJson = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(RegionUnion::single(region_from_json(&r)?))
}

fn ideal_args(a: &IdealArg) -> select::IdealArgs<'_> {
    select::IdealArgs { variety: &a.variety, center: a.center.as_deref(), ideal: a.ideal.as_deref() }
}

fn classes_of(x: &ToricVariety, classes: &[String], range: Option<&str>) -> Result<Vec<Vec<i64>>, Failure> {
    let r = x.picard_rank();
    let mut out = Vec::new();
    for c in classes {
        let e = select::int_list(c)?;
        if e.len() != r {
            return Err(Failure::Usage(format!("class '{c}' needs {r} entries")));
        }
        out.push(e);
    }
    if let Some(s) = range {
        let (lo, hi) = s.split_once(':').ok_or_else(|| Failure::Usage("--box must be lo:hi".into()))?;
        let (lo, hi) = (select::int_list(lo)?, select::int_list(hi)?);
        if lo.len() != r || hi.len() != r {
            return Err(Failure::Usage(format!("--box corners need {r} entries")));
        }
        box_points(&lo, &hi, &mut |e| out.push(e.to_vec()));
    }
    if out.is_empty() {
        return Err(Failure::Usage("give --class or --box".into()));
    }
    Ok(out)
}

fn toric(cmd: &ToricCmd) -> Result<(), Failure> {
    match cmd {
        ToricCmd::Validate(v) => {
            if let [one] = v.variety.as_slice() {
                if let Some(path) = one.strip_prefix("file:") {
                    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
                    let (fan, deg) = parse_fan(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
                    let flags = validate(&fan)?;
                    let projective = make_variety("file", fan.clone(), deg).is_ok();
                    return emit(
                        &json!({"dim": fan.dim, "rays": fan.num_rays(), "smooth": flags.smooth, "complete": flags.complete,
                                "simplicial": flags.simplicial, "projective": projective}),
                        None,
                    );
                }
            }
            let x = select::variety(&v.variety)?;
            let f = x.flags();
            emit(
                &json!({"name": x.name(), "dim": x.dim(), "rays": x.num_rays(), "picard_rank": x.picard_rank(),
                        "smooth": f.smooth, "complete": f.complete, "simplicial": f.simplicial, "projective": true}),
                None,
            )
        }
        ToricCmd::Nef(v) => {
            let x = select::variety(&v.variety)?;
            let gens: Vec<Vec<String>> =
                x.nef_generators()?.iter().map(|g| g.iter().map(|c| c.to_string()).collect()).collect();
            emit(&json!({"nef_cone": region_json(x.nef_polyhedron()), "generators": gens}), None)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Toric(t) => toric(&t),
        Cmd::Blowup { v, center, out } => {
            let x = select::variety(&v.variety)?;
            let sigma = select::center(&x, &center)?;
            let (bl, phi) = star_subdivision(&x, &sigma)?;
            let pullback: Vec<Vec<String>> = phi.pullback.to_rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
            emit(
                &json!({"source": fan_file(bl.fan(), Some(bl.deg())), "new_ray": phi.new_ray_index,
                        "exceptional": phi.exceptional.iter().map(fmt_rational).collect::<Vec<_>>(), "pullback": pullback}),
                out.as_deref(),
            )
        }
        Cmd::Sesh { v, center, subspace, constant, o } => {
            let x = select::variety(&v.variety)?;
            let sigma = select::center(&x, &center)?;
            let basis = subspace.iter().map(|s| select::rational_list(s)).collect::<Result<Vec<_>, _>>()?;
            let s = sesh_region(&x, &sigma, if basis.is_empty() { None } else { Some(&basis) })?;
            match constant {
                Some(h) => {
                    let h = select::rational_list(&h)?;
                    emit(&json!({"constant": fmt_rational(&seshadri_constant(&s, &h)?)}), o.out.as_deref())
                }
                None => emit_region(&s.region, &o),
            }
        }
        Cmd::SeshBundle { v, bundle, o } => {
            let x = select::variety(&v.variety)?;
            let b = SplitBundle::new(select::bundle(&bundle)?)?;
            emit_region(&sesh_bundle(&x, &b, None)?.region, &o)
        }
        Cmd::Cohomology { a, classes, range } => {
            let rows: Vec<CohomologyRowJson> = if a.center.is_none() && a.ideal.is_none() {
                let x = select::variety(&a.variety)?;
                let mut rows = Vec::new();
                for e in classes_of(&x, &classes, range.as_deref())? {
                    for (i, dim) in x.cohomology_line_bundle(&e)?.into_iter().enumerate() {
                        rows.push(CohomologyRowJson { i, e: e.clone(), dim });
                    }
                }
                rows
            } else {
                let ideal = select::ideal(&ideal_args(&a))?;
                let c = select::resolve(&ideal, a.power)?;
                let es = classes_of(ideal.variety(), &classes, range.as_deref())?;
                cohomology_json(&cohomology_table(ideal.variety(), &c, &es)?)
            };
            emit(&rows, None)
        }
        Cmd::RegBound { a, o } => {
            let ideal = select::ideal(&ideal_args(&a))?;
            let c = select::resolve(&ideal, a.power)?;
            let b = inner_bound_two_term(ideal.variety(), &c)?;
            if let Some(path) = &o.plot {
                if let [one] = b.pieces() {
                    let g = plot::geometry(one).map_err(|m| Failure::Math(seshadri_core::Error::Invalid(m)))?;
                    fs::write(path, serde_json::to_string_pretty(&g).expect("serializable") + "\n")
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                } else {
                    return Err(Failure::Usage("--plot needs a single-piece region".into()));
                }
            }
            emit(&union_json(&b), o.out.as_deref())
        }
        Cmd::RegCheck { a, degree, radius } => {
            let ideal = select::ideal(&ideal_args(&a))?;
            let c = select::resolve(&ideal, a.power)?;
            let d = select::int_list(&degree)?;
            emit(&verdict_json(&reg_membership(ideal.variety(), &c, &d, radius)?), None)
        }
        Cmd::ConvergeIdeal { v, center, pmax, window } => {
            let x = Arc::new(select::variety(&v.variety)?);
            let sigma = select::center(&x, &center)?;
            let w = select::window(&window, x.picard_rank())?;
            emit(&report_json(&theorem_a_harness(&x, &sigma, pmax, &w)?), None)
        }
        Cmd::ConvergeBundle { v, bundle, pmax, window } => {
            let x = select::variety(&v.variety)?;
            let b = SplitBundle::new(select::bundle(&bundle)?)?;
            let w = select::window(&window, x.picard_rank())?;
            emit(&report_json(&theorem_c_harness(&x, &b, pmax, &w)?), None)
        }
        Cmd::PkDistance { a, b, window } => {
            let (ra, rb) = (read_region(&a)?, read_region(&b)?);
            if ra.dim() != rb.dim() {
                return Err(Failure::Usage(format!("regions live in dimensions {} and {}", ra.dim(), rb.dim())));
            }
            let w = select::window(&window, ra.dim())?;
            emit(&json!({"distance": windowed_hausdorff(ra.pieces(), rb.pieces(), &w)?.to_string()}), None)
        }
    }
}

fn configure_threads(parallel: bool) {
    let cap = std::env::var("SESHADRI_LAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0);
    let n = if parallel {
        let avail = std::thread::available_parallelism().map_or(1, |n| n.get());
        cap.map_or(avail, |c| c.min(avail))
    } else {
        1
    };
    // A second initialization can only fail if a pool already exists.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads(cli.parallel);
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Math(e)) => {
            eprintln!("refused: {e}");
            ExitCode::from(2)
        }
    }
}
