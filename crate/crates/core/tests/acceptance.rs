mod support;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{rngs::StdRng, Rng, SeedableRng};
use seshadri_core::blowup::{pullback_class, star_subdivision};
use seshadri_core::coxalg::{en_complex, MonomialIdeal};
use seshadri_core::exactgeom::hausdorff::Distance;
use seshadri_core::exactgeom::polyhedron::{box_points, ConeRep, Polyhedron, Window};
use seshadri_core::exactgeom::rational::{rat, rat_vec, ratio, to_i64, Rational};
use seshadri_core::exactgeom::region::RegionUnion;
use seshadri_core::limits::{
    chain_limit, pk_report, scale, staircase, theorem_a_harness, theorem_c_harness, Direction, RegionSequence,
};
use seshadri_core::regularity::{inner_bound_two_term, reg_membership, Verdict, DEFAULT_RADIUS};
use seshadri_core::seshadri::{sesh_bundle, sesh_region, seshadri_constant, SplitBundle};
use seshadri_core::toric::{builtin, ToricVariety};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

const BUILTINS: [&str; 9] = ["P2", "P3", "P1xP1", "P1xP2", "H1", "H2", "H3", "F23", "F24"];

fn var(name: &str) -> Arc<ToricVariety> {
    Arc::new(builtin(name).unwrap())
}

fn orthant_at(v: &[i64]) -> Polyhedron {
    Polyhedron::orthant(v.len()).translate_int(v)
}

fn inner_bound(x: &Arc<ToricVariety>, sigma: &[usize], p: u32) -> RegionUnion {
    let ideal = MonomialIdeal::of_cone(x.clone(), sigma).unwrap();
    inner_bound_two_term(x, &en_complex(&ideal, p).unwrap()).unwrap()
}

/// Two-ray faces of the maximal cones.
fn two_cones(x: &ToricVariety) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for c in &x.fan().max_cones {
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                let s = vec![c[i], c[j]];
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn c1() {
    let q = var("P1xP1");
    let s = sesh_region(&q, &[1, 2], None).unwrap();
    assert_eq!(s.region, orthant_at(&[1, 1]));
}

fn c2() {
    let f = var("F23");
    let s = sesh_region(&f, &[0, 4], None).unwrap();
    assert_eq!(s.region.vertices(), &[rat_vec(&[0, 1, 0]), rat_vec(&[1, 0, 1])]);
    assert_eq!(s.recession, ConeRep::from_polyhedron(Polyhedron::orthant(3)));
}

fn c3() {
    let q = var("P1xP1");
    for p in 1..=25u32 {
        let b = inner_bound(&q, &[1, 2], p);
        let want = RegionUnion::single(orthant_at(&[p as i64, p as i64]));
        assert!(b.set_eq(&want).unwrap(), "p={p}");
    }
}

fn c4() {
    let f = var("F23");
    for m in 1..=10u32 {
        let b = inner_bound(&f, &[0, 4], m);
        assert!(b.contains_int(&[m as i64, 0, m as i64]), "m={m}");
    }
}

fn c5() {
    let f = var("F23");
    for m in 1..=3u32 {
        let ideal = MonomialIdeal::of_cone(f.clone(), &[0, 4]).unwrap();
        let c = en_complex(&ideal, m).unwrap();
        let v = reg_membership(&f, &c, &[0, m as i64, 0], DEFAULT_RADIUS).unwrap();
        assert!(matches!(v, Verdict::CertifiedIn { .. }), "m={m}: {v:?}");
    }
}

fn c6() {
    for name in BUILTINS {
        let x = var(name);
        for sigma in two_cones(&x) {
            let s = RegionUnion::single(sesh_region(&x, &sigma, None).unwrap().region);
            for p in 1..=10u32 {
                let b = inner_bound(&x, &sigma, p).scale(&Rational::new(1.into(), p.into()));
                assert!(s.includes(&b).unwrap(), "{name} {sigma:?} p={p}");
            }
        }
    }
}

fn c7() {
    let q = var("P1xP1");
    let rep = theorem_a_harness(&q, &[1, 2], 10, &Window::cube(2, 0, 5)).unwrap();
    assert!(rep.all_zero() && rep.all_inclusions(), "{rep:?}");
    let f = var("F23");
    let rep = theorem_a_harness(&f, &[0, 4], 6, &Window::cube(3, 0, 4)).unwrap();
    assert!(rep.all_inclusions(), "{rep:?}");
    let c = rep.fitted_constant.clone().expect("finite distances");
    for r in &rep.records {
        let d = r.distance.finite().expect("finite").clone();
        assert!(d * rat(r.p as i64) <= c, "p={}", r.p);
    }
    assert!(rep.consistent && rep.nonincreasing, "{rep:?}");
    // The staircase through the certified points (k, p−k, k) sits 1/(2p) off sesh.
    for r in &rep.records {
        assert_eq!(r.distance, Distance::Finite(ratio(1, 2 * r.p as i64)), "p={}", r.p);
    }
}

fn c8() {
    for name in ["P1xP1", "P1xP2", "P1xP1xP1", "P2xP2"] {
        let x = var(name);
        assert_eq!(x.nef_cone().as_polyhedron(), &Polyhedron::orthant(x.picard_rank()), "{name}");
    }
    for a in 0..=4i64 {
        let h = var(&format!("H{a}"));
        let gens: Vec<Vec<i64>> = h.nef_generators().unwrap().iter().map(|g| g.iter().map(to_i64).collect()).collect();
        assert_eq!(gens, vec![vec![0, 1], vec![1, a]], "H{a}");
    }
    assert_eq!(var("F23").nef_cone().as_polyhedron(), &Polyhedron::orthant(3));
}

fn c9() {
    for name in ["P1", "P2", "H2", "P1xP1"] {
        let x = var(name);
        let r = x.picard_rank();
        let mut classes = Vec::new();
        box_points(&vec![-5; r], &vec![5; r], &mut |e| classes.push(e.to_vec()));
        for e in classes {
            assert_eq!(x.cohomology_line_bundle(&e).unwrap(), support::cech(&x, &e, 20), "{name} {e:?}");
        }
    }
}

fn c10() {
    let q = var("P1xP1");
    let tangent = SplitBundle::new(vec![vec![2, 0], vec![0, 2]]).unwrap();
    assert_eq!(sesh_bundle(&q, &tangent, None).unwrap().region, Polyhedron::orthant(2));
    let rep = theorem_c_harness(&q, &tangent, 8, &Window::cube(2, -2, 3)).unwrap();
    assert!(rep.all_zero(), "{rep:?}");

    let p1 = var("P1");
    let w = Window::cube(1, -5, 4);
    for a in [-2i64, 0, 1, 3] {
        let b = SplitBundle::new(vec![vec![a]]).unwrap();
        assert_eq!(sesh_bundle(&p1, &b, None).unwrap().region, orthant_at(&[-a]));
        let rep = theorem_c_harness(&p1, &b, 8, &w).unwrap();
        assert!(rep.all_zero(), "a={a} {rep:?}");
    }

    // O(2) ⊕ O(1): the least regular twist of Sym^p, found from h¹ directly.
    let b = SplitBundle::new(vec![vec![2], vec![1]]).unwrap();
    assert_eq!(sesh_bundle(&p1, &b, None).unwrap().region, orthant_at(&[-1]));
    let rep = theorem_c_harness(&p1, &b, 8, &w).unwrap();
    for r in &rep.records {
        let p = r.p as i64;
        let summands: Vec<i64> = (0..=p).map(|i| 2 * i + (p - i)).collect();
        let regular = |d: i64| summands.iter().all(|a| p1.cohomology_line_bundle(&[a + d - 1]).unwrap()[1] == 0);
        let d_min = (-4 * p..=4 * p).find(|&d| regular(d)).unwrap();
        assert!((d_min..d_min + 10).all(regular));
        let oracle = (ratio(d_min, p) - rat(-1)).abs();
        assert_eq!(r.distance, Distance::Finite(oracle), "p={p}");
    }
    assert!(rep.consistent && rep.all_inclusions());
}

fn c11() {
    let cst = RegionSequence::from_fn("const", 1..=5, |_| RegionUnion::single(orthant_at(&[2, 1])));
    let (lim, stab) = chain_limit(&cst, Direction::Decreasing, 1..=5).unwrap();
    assert!(stab && lim.set_eq(&RegionUnion::single(orthant_at(&[2, 1]))).unwrap());

    let boxes = RegionSequence::from_fn("boxes", 1..=5, |p| {
        let p = p as i64;
        RegionUnion::single(Polyhedron::from_v(2, &[rat_vec(&[0, 0]), rat_vec(&[p, 0]), rat_vec(&[0, p]), rat_vec(&[p, p])], &[]))
    });
    let (lim, stab) = chain_limit(&boxes, Direction::Increasing, 1..=5).unwrap();
    assert!(!stab && lim.set_eq(boxes.get(5).unwrap()).unwrap());

    let shifted = RegionSequence::from_fn("pv+V", 1..=5, |p| RegionUnion::single(orthant_at(&[p as i64, p as i64])));
    let (lim, stab) = chain_limit(&shifted, Direction::Decreasing, 1..=5).unwrap();
    assert!(!stab && lim.set_eq(&RegionUnion::single(orthant_at(&[5, 5]))).unwrap());
    let w = Window::cube(2, 0, 10);
    let rep = pk_report(&scale(&shifted), &RegionUnion::single(orthant_at(&[1, 1])), &w, 5).unwrap();
    assert!(rep.all_zero());

    // f(p) = 2p + 3 along v = (1, 1): scaled entries are (2 + 3/p)v + V.
    let lin = RegionSequence::from_fn("f(p)v+V", 1..=6, |p| {
        let f = 2 * p as i64 + 3;
        RegionUnion::single(orthant_at(&[f, f]))
    });
    let rep = pk_report(&scale(&lin), &RegionUnion::single(orthant_at(&[2, 2])), &Window::cube(2, 0, 12), 6).unwrap();
    for r in &rep.records {
        assert_eq!(r.distance, Distance::Finite(ratio(3, r.p as i64)));
    }

    let rays: Vec<Vec<BigInt>> = vec![vec![BigInt::one(), BigInt::zero()], vec![BigInt::zero(), BigInt::one()]];
    let hull = RegionUnion::single(Polyhedron::from_v(2, &[rat_vec(&[7, 0]), rat_vec(&[0, 3])], &rays));
    let stairs = scale(&RegionSequence::from_fn("stairs", 1..=6, |p| staircase(7, 3, p)));
    let rep = pk_report(&stairs, &hull, &w, 6).unwrap();
    assert_eq!(rep.records[0].distance, Distance::Finite(ratio(21, 10)));
    assert!(rep.records.windows(2).all(|p| p[1].distance < p[0].distance));
    assert!(rep.consistent);
}

fn c12() {
    let mut rng = StdRng::seed_from_u64(0x5e5);
    for name in BUILTINS {
        let x = var(name);
        let sigma = x.fan().max_cones[0][..2].to_vec();
        let region = sesh_region(&x, &sigma, None).unwrap();
        let (bl, phi) = star_subdivision(&x, &sigma).unwrap();
        let gens = x.nef_generators().unwrap().to_vec();
        for _ in 0..20 {
            let mut h = vec![Rational::zero(); x.picard_rank()];
            for g in &gens {
                let c: i64 = rng.gen_range(1..=6);
                for (t, v) in g.iter().enumerate() {
                    h[t] += Rational::from_integer(v * c);
                }
            }
            assert!(x.is_ample(&h));
            // Largest t with π*h − tE nef, read off the invariant curves of the blowup.
            let ph = pullback_class(&phi, &h);
            let mut direct: Option<Rational> = None;
            for curve in bl.invariant_curves() {
                let e_dot = bl.curve_degree(curve, &phi.exceptional);
                if e_dot > Rational::zero() {
                    let t = bl.curve_degree(curve, &ph) / e_dot;
                    direct = Some(direct.map_or(t.clone(), |d: Rational| d.min(t)));
                }
            }
            assert_eq!(seshadri_constant(&region, &h).unwrap(), direct.unwrap(), "{name} h={h:?}");
        }
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(), Duration); 12] = [
        ("1 Seshadri region of a torus point on P1xP1", c1, Duration::from_secs(1)),
        ("2 Seshadri region of F23 at <x0,x4>", c2, Duration::from_secs(1)),
        ("3 inner bound (p,p)+R^2 on P1xP1, p <= 25", c3, Duration::from_secs(10)),
        ("4 inner bound of <x0,x4>^m on F23 contains (m,0,m), m <= 10", c4, Duration::from_secs(30)),
        ("5 (0,m,0) certified regular for <x0,x4>^m on F23, m <= 3", c5, Duration::from_secs(300)),
        ("6 chain inclusion on built-ins, p <= 10", c6, Duration::from_secs(60)),
        ("7 convergence reports on P1xP1 and F23", c7, Duration::from_secs(300)),
        ("8 nef cones", c8, Duration::from_secs(5)),
        ("9 Cech oracle on P1, P2, H2, P1xP1", c9, Duration::from_secs(120)),
        ("10 split bundle suite", c10, Duration::from_secs(120)),
        ("11 Painleve-Kuratowski suite", c11, Duration::from_secs(30)),
        ("12 cross-path Seshadri constants", c12, Duration::from_secs(60)),
    ];
    let mut failed = Vec::new();
    for (label, run, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let took = start.elapsed();
        let status = match (&outcome, took <= limit) {
            (Ok(()), true) => "PASS",
            (Ok(()), false) => "FAIL (time)",
            (Err(_), _) => "FAIL",
        };
        println!("{status} criterion {label} [{:.2}s, limit {}s]", took.as_secs_f64(), limit.as_secs());
        if status != "PASS" {
            failed.push(label);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {failed:?}");
        ExitCode::FAILURE
    }
}
