use std::collections::BTreeSet;

use isocanted::classes::{isocanted_matrix, isocanted_vni, IsocantedSpec, Placement};
use isocanted::combinatorics::{build_face_lattice, isocanted_count, VertexLabel};
use isocanted::geometry::{
    enumerate_vertices_oracle, hrep_from_matrix, isocanted_poles, isocanted_vertex, isocanted_vertex_placed,
    isocanted_vertices, label_map_check_raw, laplace_offsets, oracle_face_counts, oracle_faces, poles,
    verify_unique_vertex, zonotope_check_raw, RationalPoint,
};
use isocanted::rational::{int, rat, Rational};
use isocanted::tropical::{trop_permanent, TropScalar};

fn params() -> Vec<(Rational, Rational)> {
    vec![(int(2), int(1)), (int(3), int(1)), (rat(5, 2), rat(3, 4))]
}

fn spec(d: usize, ell: &Rational, a: &Rational) -> IsocantedSpec {
    IsocantedSpec::new(d, ell.clone(), a.clone()).unwrap()
}

fn fin(r: Rational) -> TropScalar {
    TropScalar::Finite(r)
}

#[test]
fn oracle_vertices_match_closed_form() {
    for d in 2..=4 {
        for (ell, a) in params() {
            let s = spec(d, &ell, &a);
            let h = hrep_from_matrix(&isocanted_vni(&s)).unwrap();
            let oracle: BTreeSet<RationalPoint> = enumerate_vertices_oracle(&h).unwrap().points().into_iter().collect();
            let closed: BTreeSet<RationalPoint> =
                isocanted_vertices(&s, Placement::Vni).unwrap().points().into_iter().collect();
            assert_eq!(oracle.len(), (1 << (d + 1)) - 2, "d={d}");
            assert_eq!(oracle, closed, "d={d} ell={ell} a={a}");
        }
    }
}

#[test]
fn mixed_lengths_still_match() {
    let lengths = vec![int(2), int(3), rat(7, 2)];
    let s = IsocantedSpec::with_lengths(lengths, int(1)).unwrap();
    assert!(s.is_extended());
    let h = hrep_from_matrix(&isocanted_vni(&s)).unwrap();
    let oracle = enumerate_vertices_oracle(&h).unwrap().with_isocanted_labels(&s, Placement::Vni).unwrap();
    assert!(oracle.unlabeled.is_empty());
    assert_eq!(oracle.labeled.len(), 14);
}

#[test]
fn oracle_faces_are_intervals() {
    for d in 2..=4 {
        let s = spec(d, &int(3), &int(1));
        let set = isocanted_vertices(&s, Placement::Vni).unwrap();
        let points = set.points();
        let labels: Vec<VertexLabel> = points.iter().map(|p| set.label_of(p).unwrap()).collect();
        let h = hrep_from_matrix(&isocanted_vni(&s)).unwrap();

        let from_oracle: BTreeSet<BTreeSet<VertexLabel>> = oracle_faces(&h, &points)
            .into_iter()
            .filter(|f| f.dim < d)
            .map(|f| f.vertices.iter().map(|&i| labels[i]).collect())
            .collect();
        let from_intervals: BTreeSet<BTreeSet<VertexLabel>> =
            build_face_lattice(d).unwrap().iter().map(|f| f.vertices().into_iter().collect()).collect();
        assert_eq!(from_oracle, from_intervals, "d={d}");

        let counts = oracle_face_counts(&h, &points);
        let expected: Vec<usize> = (0..d).map(|j| isocanted_count(d, j as i64).try_into().unwrap()).collect();
        assert_eq!(counts, expected);
    }
}

#[test]
fn sni_vertices_are_antipodal() {
    for d in 2..=5 {
        let s = spec(d, &rat(5, 2), &rat(3, 4));
        for w in VertexLabel::all(d).unwrap() {
            let x = isocanted_vertex_placed(&s, &w, Placement::Sni).unwrap();
            let y = isocanted_vertex_placed(&s, &w.antipode(), Placement::Sni).unwrap();
            assert_eq!(x, y.neg(), "W={w}");
        }
    }
}

#[test]
fn poles_are_the_extreme_labels() {
    for d in 2..=5 {
        let s = spec(d, &int(3), &int(1));
        for placement in [Placement::Vni, Placement::Sni] {
            let (north, south) = poles(&isocanted_matrix(&s, placement)).unwrap();
            assert_eq!((north.clone(), south.clone()), isocanted_poles(&s, placement));
            let n = isocanted_vertex_placed(&s, &VertexLabel::north(d).unwrap(), placement).unwrap();
            let so = isocanted_vertex_placed(&s, &VertexLabel::south(d).unwrap(), placement).unwrap();
            assert_eq!(north, n);
            assert_eq!(south, so);
        }
        assert_eq!(isocanted_vertex(&s, &VertexLabel::north(d).unwrap()).unwrap(), RationalPoint::origin(d));
    }
}

#[test]
fn minor_conditions_hold_for_every_label() {
    for d in 2..=5 {
        for (ell, a) in params() {
            let s = spec(d, &ell, &a);
            for w in VertexLabel::all(d).unwrap() {
                assert!(verify_unique_vertex(&s, &w).unwrap(), "d={d} W={w}");
            }
        }
    }
}

#[test]
fn worked_expansions_at_d5() {
    let (ell, a) = (int(3), int(1));
    let c = isocanted_vni(&spec(5, &ell, &a));
    let al = fin(&a - &ell);

    let w = VertexLabel::new(5, &[1, 2, 3, 4, 5]).unwrap();
    let offsets = laplace_offsets(&c, &w, &[1, 2, 3, 4, 5, 6]).unwrap();
    assert_eq!(offsets, vec![fin(int(0)); 6]);

    let w = VertexLabel::new(5, &[1, 2, 3]).unwrap();
    let offsets = laplace_offsets(&c, &w, &[1, 2, 3, 4]).unwrap();
    assert_eq!(offsets, vec![al.clone(), al.clone(), al.clone(), fin(int(0))]);
    let x = isocanted_vertex(&spec(5, &ell, &a), &w).unwrap();
    assert_eq!(x, RationalPoint::new(vec![int(0), int(0), int(0), &a - &ell, &a - &ell]));

    let w = VertexLabel::new(5, &[1, 2, 6]).unwrap();
    let offsets = laplace_offsets(&c, &w, &[1, 2, 3, 6]).unwrap();
    assert_eq!(offsets, vec![al.clone(), al, fin(int(0)), fin(-ell.clone())]);
    let x = isocanted_vertex(&spec(5, &ell, &a), &w).unwrap();
    assert_eq!(x, RationalPoint::new(vec![-a.clone(), -a, -ell.clone(), -ell.clone(), -ell]));
}

#[test]
fn permanent_is_zero_once() {
    for d in 2..=6 {
        for (ell, a) in params() {
            let p = trop_permanent(&isocanted_vni(&spec(d, &ell, &a))).unwrap();
            assert_eq!(p.value, fin(int(0)));
            assert_eq!(p.multiplicity, 1u32.into());
        }
    }
}

// At a = 0 the polytope is the box and at a = l the generators coincide with
// box corners; the minor conditions alone do not see either collapse.
#[test]
fn boundary_cants_collapse_the_label_map() {
    for d in 2..=4 {
        let lengths = vec![int(2); d];
        assert!(label_map_check_raw(&lengths, &int(1)).unwrap().bijective());

        let at_zero = label_map_check_raw(&lengths, &int(0)).unwrap();
        assert!(!at_zero.bijective());
        assert_eq!(at_zero.oracle_vertices, 1 << d);

        let at_ell = label_map_check_raw(&lengths, &int(2)).unwrap();
        assert!(!at_ell.bijective());
        assert!(at_ell.distinct_points < at_ell.labels);
    }
    let z = zonotope_check_raw(&[int(2), int(2)], &int(0)).unwrap();
    assert!(z.passed());
    assert_eq!(z.vertex_count, 4);
}
