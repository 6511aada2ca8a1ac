use criterion::{black_box, criterion_group, criterion_main, Criterion};
use seshadri_core::coxalg::{en_complex, sheaf_cohomology, MonomialIdeal};
use seshadri_core::exactgeom::hausdorff::windowed_hausdorff;
use seshadri_core::exactgeom::polyhedron::{Polyhedron, Window};
use seshadri_core::exactgeom::rational::rat_vec;
use seshadri_core::limits::{scale, staircase, RegionSequence};
use seshadri_core::regularity::{inner_bound_two_term, reg_membership, DEFAULT_RADIUS};
use seshadri_core::seshadri::sesh_region;
use seshadri_core::toric::builtin;
use std::sync::Arc;

fn geometry(c: &mut Criterion) {
    let verts: Vec<Vec<_>> = (0..8).map(|i| rat_vec(&[i, (i * i) % 7, (3 * i) % 5])).collect();
    c.bench_function("from_v 8 points in R^3", |b| b.iter(|| Polyhedron::from_v(3, black_box(&verts), &[])));
    let seq = scale(&RegionSequence::from_fn("stairs", 6..=6, |p| staircase(7, 3, p)));
    let target = staircase(7, 3, 1);
    let w = Window::cube(2, 0, 10);
    c.bench_function("windowed hausdorff, staircase p=6", |b| {
        b.iter(|| windowed_hausdorff(seq.get(6).unwrap().pieces(), target.pieces(), &w).unwrap())
    });
}

fn toric(c: &mut Criterion) {
    c.bench_function("build F24", |b| b.iter(|| builtin(black_box("F24")).unwrap()));
    let f = builtin("F23").unwrap();
    c.bench_function("line bundle cohomology on F23", |b| b.iter(|| f.cohomology_line_bundle(black_box(&[2, -3, 1])).unwrap()));
    c.bench_function("sesh region of F23 at <x0,x4>", |b| b.iter(|| sesh_region(&f, black_box(&[0, 4]), None).unwrap()));
}

fn regularity(c: &mut Criterion) {
    let f = Arc::new(builtin("F23").unwrap());
    let ideal = MonomialIdeal::of_cone(f.clone(), &[0, 4]).unwrap();
    let cx = en_complex(&ideal, 3).unwrap();
    c.bench_function("ideal sheaf cohomology, <x0,x4>^3", |b| b.iter(|| sheaf_cohomology(&f, &cx, black_box(&[1, 1, 1])).unwrap()));
    c.bench_function("inner bound, <x0,x4>^3", |b| b.iter(|| inner_bound_two_term(&f, &cx).unwrap()));
    let mut g = c.benchmark_group("certifier");
    g.sample_size(10);
    g.bench_function("certify (0,2,0) for <x0,x4>^2", |b| {
        let c2 = en_complex(&ideal, 2).unwrap();
        b.iter(|| reg_membership(&f, &c2, black_box(&[0, 2, 0]), DEFAULT_RADIUS).unwrap())
    });
    g.finish();
}

criterion_group!(benches, geometry, toric, regularity);
criterion_main!(benches);
