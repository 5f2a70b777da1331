use num_bigint::BigUint;
use proptest::prelude::*;

use isocanted::rational::{rat, Rational};
use isocanted::tropical::{
    conjugate_diag, laplace_terms, mat_mul, trop_add, trop_minor, trop_mul, trop_permanent, TropMatrix, TropScalar,
};

fn scalar() -> impl Strategy<Value = TropScalar> {
    prop_oneof![
        1 => Just(TropScalar::NegInf),
        6 => (-20i64..=20, 1i64..=4).prop_map(|(p, q)| TropScalar::Finite(rat(p, q))),
    ]
}

fn finite() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn matrix(n: usize) -> impl Strategy<Value = TropMatrix> {
    prop::collection::vec(prop::collection::vec(scalar(), n), n).prop_map(|rows| TropMatrix::from_rows(rows).unwrap())
}

fn sized_matrix() -> impl Strategy<Value = TropMatrix> {
    (2usize..=5).prop_flat_map(matrix)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Maximum over all permutations and the number attaining it, by listing
/// them. An all `-inf` permanent counts every permutation, so it reads as
/// singular.
fn brute_permanent(a: &TropMatrix) -> (TropScalar, BigUint) {
    let n = a.n();
    let values: Vec<TropScalar> = permutations(n)
        .iter()
        .map(|p| (0..n).fold(TropScalar::one(), |acc, i| trop_mul(&acc, a.get(i + 1, p[i] + 1))))
        .collect();
    let best = values.iter().max().unwrap().clone();
    let count = values.iter().filter(|v| **v == best).count();
    (best, BigUint::from(count))
}

proptest! {
    #[test]
    fn semiring_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(trop_add(&x, &y), trop_add(&y, &x));
        prop_assert_eq!(trop_mul(&x, &y), trop_mul(&y, &x));
        prop_assert_eq!(trop_add(&trop_add(&x, &y), &z), trop_add(&x, &trop_add(&y, &z)));
        prop_assert_eq!(trop_mul(&trop_mul(&x, &y), &z), trop_mul(&x, &trop_mul(&y, &z)));
        prop_assert_eq!(
            trop_mul(&x, &trop_add(&y, &z)),
            trop_add(&trop_mul(&x, &y), &trop_mul(&x, &z))
        );
        prop_assert_eq!(trop_add(&x, &TropScalar::zero()), x.clone());
        prop_assert_eq!(trop_mul(&x, &TropScalar::one()), x.clone());
        prop_assert_eq!(trop_mul(&x, &TropScalar::zero()), TropScalar::zero());
        prop_assert_eq!(trop_add(&x, &x), x);
    }

    #[test]
    fn matrix_product_is_associative(a in matrix(3), b in matrix(3), c in matrix(3)) {
        let left = mat_mul(&mat_mul(&a, &b).unwrap(), &c).unwrap();
        let right = mat_mul(&a, &mat_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn permanent_matches_brute_force(a in sized_matrix()) {
        let got = trop_permanent(&a).unwrap();
        let (value, count) = brute_permanent(&a);
        prop_assert_eq!(got.value, value);
        prop_assert_eq!(got.multiplicity, count);
    }

    #[test]
    fn laplace_terms_recover_the_minor(a in matrix(4)) {
        let rows = [1, 2, 4];
        let cols = [1, 3, 4];
        let terms = laplace_terms(&a, &rows, &cols, 4).unwrap();
        let max = terms.iter().max().unwrap().clone();
        prop_assert_eq!(max, trop_minor(&a, &rows, &cols).unwrap().value);
    }

    #[test]
    fn conjugation_round_trip(a in matrix(4), d in prop::collection::vec(finite(), 3)) {
        let mut shift = d.clone();
        shift.push(Rational::from_integer(0.into()));
        let back: Vec<Rational> = shift.iter().map(|x| -x).collect();
        let there = conjugate_diag(&a, &shift).unwrap();
        prop_assert_eq!(conjugate_diag(&there, &back).unwrap(), a.clone());
        // the permanent is invariant under diagonal conjugation
        prop_assert_eq!(trop_permanent(&there).unwrap(), trop_permanent(&a).unwrap());
    }
}

#[test]
fn all_infinite_minor_is_singular() {
    let a = TropMatrix::from_rows(vec![vec![TropScalar::NegInf; 2]; 2]).unwrap();
    let p = trop_permanent(&a).unwrap();
    assert_eq!(p.value, TropScalar::NegInf);
    assert_eq!(p.multiplicity, BigUint::from(2u32));
    assert!(p.is_degenerate());
}
