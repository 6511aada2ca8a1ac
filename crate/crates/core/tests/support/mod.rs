use num_traits::Zero;
use seshadri_core::exactgeom::linalg::{rank, QMatrix};
use seshadri_core::exactgeom::polyhedron::box_points;
use seshadri_core::exactgeom::rational::{rat, Rational};
use seshadri_core::toric::ToricVariety;

/// Brute-force Čech cohomology of O(e) over the maximal-cone cover, summed
/// over characters in [−bound, bound]^n.
pub fn cech(x: &ToricVariety, e: &[i64], bound: i64) -> Vec<u64> {
    let n = x.dim();
    let a = x.lift(e);
    let cones = &x.fan().max_cones;
    let rays = &x.fan().rays;
    let s = cones.len();
    let mut by_size: Vec<Vec<(u32, Vec<usize>)>> = vec![Vec::new(); s + 1];
    for mask in 1u32..(1 << s) {
        let mut common: Vec<usize> = cones[mask.trailing_zeros() as usize].clone();
        for (j, c) in cones.iter().enumerate() {
            if mask >> j & 1 == 1 {
                common.retain(|r| c.contains(r));
            }
        }
        by_size[mask.count_ones() as usize].push((mask, common));
    }
    let mut total = vec![0u64; n + 1];
    box_points(&vec![-bound; n], &vec![bound; n], &mut |m| {
        let alive = |rs: &Vec<usize>| rs.iter().all(|&r| (0..n).map(|t| m[t] * rays[r][t]).sum::<i64>() >= -a[r]);
        let live: Vec<Vec<u32>> =
            by_size.iter().map(|v| v.iter().filter(|(_, r)| alive(r)).map(|(mk, _)| *mk).collect()).collect();
        let d_rank = |p: usize| -> usize {
            if p + 1 > s || live[p].is_empty() || live[p + 1].is_empty() {
                return 0;
            }
            let mat: QMatrix = live[p + 1]
                .iter()
                .map(|&t| {
                    let bits: Vec<u32> = (0..32).filter(|b| t >> b & 1 == 1).collect();
                    live[p]
                        .iter()
                        .map(|&f| match bits.iter().position(|&b| t & !(1 << b) == f) {
                            Some(i) => rat(if i % 2 == 0 { 1 } else { -1 }),
                            None => Rational::zero(),
                        })
                        .collect()
                })
                .collect();
            rank(&mat)
        };
        let ranks: Vec<usize> = (0..=s).map(d_rank).collect();
        for (i, slot) in total.iter_mut().enumerate() {
            let size = i + 1;
            if size > s {
                break;
            }
            *slot += (live[size].len() - ranks[size] - ranks[size - 1]) as u64;
        }
    });
    total
}
