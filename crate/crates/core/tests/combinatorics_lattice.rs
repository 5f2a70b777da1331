use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use proptest::prelude::*;

use isocanted::combinatorics::{
    build_face_lattice, casks_and_belt, count_flags, diameter, distance, fatness_f03, fvector_cask, fvector_formula,
    isocanted_count, skeleton, valence, FaceInterval, FaceRegion, VertexLabel,
};
use isocanted::conjectures::short_cubical_h;
use isocanted::rational::{binomial, int, rat};

#[test]
fn lattice_counts_match_formula() {
    for d in 2..=8 {
        let lattice = build_face_lattice(d).unwrap();
        assert_eq!(lattice.counts(), fvector_formula(d).unwrap(), "d={d}");
    }
}

#[test]
fn small_fvectors() {
    let as_u = |d| fvector_formula(d).unwrap().counts().iter().map(|c| c.try_into().unwrap()).collect::<Vec<u64>>();
    assert_eq!(as_u(2), vec![6, 6]);
    assert_eq!(as_u(3), vec![14, 24, 12]);
    assert_eq!(as_u(4), vec![30, 70, 60, 20]);
}

#[test]
fn every_face_is_a_cube() {
    for d in 2..=6 {
        let lattice = build_face_lattice(d).unwrap();
        for f in lattice.iter() {
            let k = f.dim();
            let verts = f.vertices();
            assert_eq!(verts.len(), 1 << k, "{f}");
            // a k-cube: every vertex has exactly k neighbours inside the face
            for w in &verts {
                let inside = verts.iter().filter(|u| distance(w, u).unwrap() == 1).count();
                assert_eq!(inside, k, "{f} at {w}");
            }
        }
    }
}

#[test]
fn valence_census() {
    for d in 2..=10 {
        let g = skeleton(d).unwrap();
        let mut census: BTreeMap<usize, usize> = BTreeMap::new();
        for w in VertexLabel::all(d).unwrap() {
            let deg = g.degree(&w).unwrap();
            assert_eq!(deg, valence(&w));
            *census.entry(deg).or_default() += 1;
        }
        assert_eq!(census.get(&d).copied().unwrap_or(0), 2 * (d + 1), "d={d}");
        assert_eq!(census.values().sum::<usize>(), (1 << (d + 1)) - 2);
        assert!(census.keys().all(|&k| k == d || k == d + 1));
    }
}

#[test]
fn bfs_diameter() {
    for d in 2..=8 {
        assert_eq!(skeleton(d).unwrap().diameter_bfs(), d + 1);
        assert_eq!(diameter(d).unwrap(), d + 1);
    }
}

#[test]
fn distance_is_symmetric_difference() {
    for d in 2..=5 {
        let g = skeleton(d).unwrap();
        let all = VertexLabel::all(d).unwrap();
        for w in &all {
            let dist = g.bfs_distances(w).unwrap();
            for u in &all {
                let sym = (w.bits() ^ u.bits()).count_ones() as usize;
                assert_eq!(dist[g.index_of(u).unwrap()], sym);
                assert_eq!(distance(w, u).unwrap(), sym);
            }
        }
    }
}

#[test]
fn antipode_preserves_faces() {
    for d in 2..=6 {
        let lattice = build_face_lattice(d).unwrap();
        let faces: std::collections::BTreeSet<FaceInterval> = lattice.iter().copied().collect();
        for f in &faces {
            let g = f.antipode();
            assert!(faces.contains(&g), "{f} -> {g}");
            assert_eq!(g.dim(), f.dim());
            assert_eq!(g.antipode(), *f);
        }
    }
}

#[test]
fn belt_facets_contain_a_vertical_edge() {
    for d in 2..=7 {
        let lattice = build_face_lattice(d).unwrap();
        let part = casks_and_belt(d).unwrap();
        let last = 1u64 << d;
        let mut expected: Vec<FaceInterval> = lattice
            .facets()
            .iter()
            .filter(|f| {
                f.vertices().iter().any(|w| {
                    w.bits() & last == 0
                        && VertexLabel::from_bits(d, w.bits() | last).is_ok_and(|up| f.contains_vertex(&up))
                })
            })
            .copied()
            .collect();
        expected.sort();
        let mut belt = part.belt_facets();
        belt.sort();
        assert_eq!(belt, expected, "d={d}");
        // casks are swapped by the antipode
        for f in part.faces(FaceRegion::NorthCask) {
            assert_eq!(FaceRegion::of(&f.antipode()), FaceRegion::SouthCask);
        }
    }
}

#[test]
fn cask_fvectors() {
    let part = casks_and_belt(3).unwrap();
    let north = part.cask_fvector(FaceRegion::NorthCask);
    assert_eq!(north, fvector_cask(3).unwrap());
    assert_eq!(north.counts(), &[BigUint::from(7u32), BigUint::from(9u32)]);
    let part = casks_and_belt(4).unwrap();
    assert_eq!(part.cask_fvector(FaceRegion::SouthCask).counts(), &[15u32, 28, 18].map(BigUint::from));
}

#[test]
fn face_numbers_are_even() {
    for d in 2..=40 {
        for j in 0..d {
            assert!((isocanted_count(d, j as i64) % 2u32).is_zero());
        }
    }
}

fn poly_mul(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

// The short cubical h-polynomial is the sum of the h-polynomials of the
// vertex links; the link of a length-k vertex is the join of two simplex
// boundaries with k and d+1-k vertices.
#[test]
fn short_h_from_vertex_links() {
    let ones = |m: usize| vec![BigInt::from(1); m];
    for d in 2..=20 {
        let mut sum = vec![BigInt::zero(); d];
        for k in 1..=d {
            let link = poly_mul(&ones(k), &ones(d + 1 - k));
            let mult = BigInt::from(binomial(d + 1, k));
            for (i, c) in link.iter().enumerate() {
                sum[i] += c * &mult;
            }
        }
        let f: Vec<BigUint> = (0..d).map(|j| isocanted_count(d, j as i64)).collect();
        assert_eq!(short_cubical_h(d, &f), sum, "d={d}");
    }
}

#[test]
fn fatness_at_four() {
    let (fat, f03) = fatness_f03(4).unwrap();
    assert_eq!(fat, rat(11, 4));
    assert!(fat <= int(5));
    assert_eq!(f03, BigUint::from(160u32));
}

#[test]
fn small_flag_counts() {
    assert_eq!(count_flags(2).unwrap().chains, Some(BigUint::from(12u32)));
    assert_eq!(count_flags(3).unwrap().chains, Some(BigUint::from(96u32)));
    for d in 2..=6 {
        let c = count_flags(d).unwrap();
        assert_eq!(c.chains.as_ref(), Some(&c.from_facets), "d={d}");
    }
}

proptest! {
    #[test]
    fn interval_vertex_membership(d in 2usize..=8, seed in any::<u64>()) {
        let full = (1u64 << (d + 1)) - 1;
        let top = (seed % (full - 1)) + 1;
        let bottom = (seed >> 20) & top;
        prop_assume!(bottom != 0);
        let f = FaceInterval::from_bits(d, bottom, top).unwrap();
        for w in VertexLabel::all(d).unwrap() {
            let inside = w.bits() & bottom == bottom && w.bits() & !top == 0;
            prop_assert_eq!(f.contains_vertex(&w), inside);
        }
    }
}
