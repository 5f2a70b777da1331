//! Special matrix classes: normal, normal idempotent (NI), visualized (VNI)
//! and symmetric (SNI) matrices, box/cube/isocanted constructors, and the
//! unique splitting of an NI matrix into a box matrix minus a perturbation.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, Rational};
use crate::tropical::{conjugate_diag, mat_mul, TropMatrix, TropScalar};

/// Zero diagonal and every entry `<= 0` (all finite).
pub fn is_normal(a: &TropMatrix) -> bool {
    let n = a.n();
    (1..=n).all(|i| {
        (1..=n).all(|j| match a.get(i, j).as_finite() {
            Some(v) if i == j => v.is_zero(),
            Some(v) => !v.is_positive(),
            None => false,
        })
    })
}

/// Normal and `A ⊙ A = A`.
pub fn is_ni(a: &TropMatrix) -> bool {
    is_normal(a) && mat_mul(a, a).map(|sq| &sq == a).unwrap_or(false)
}

/// NI with a zero last row: the polytope has its maximum at the origin.
pub fn is_vni(a: &TropMatrix) -> bool {
    let n = a.n();
    is_ni(a) && (1..=n).all(|j| a.get(n, j) == &TropScalar::one())
}

/// NI and symmetric: the polytope is symmetric about the origin.
pub fn is_sni(a: &TropMatrix) -> bool {
    is_ni(a) && a.is_symmetric()
}

/// Finite matrix whose difference bounds never collapse: `a_ij + a_ji < 0`
/// for every `i != j`. For an NI matrix this is exactly full dimensionality
/// of `P(A)`.
pub fn is_full_dimensional(a: &TropMatrix) -> bool {
    let n = a.n();
    a.is_finite()
        && (1..=n).all(|i| {
            (i + 1..=n).all(|j| match (a.get(i, j).as_finite(), a.get(j, i).as_finite()) {
                (Some(x), Some(y)) => (x + y).is_negative(),
                _ => false,
            })
        })
}

fn check_lengths(lengths: &[Rational]) -> Result<()> {
    if lengths.len() < 2 {
        return Err(Error::DimensionTooSmall { d: lengths.len(), min: 2 });
    }
    match lengths.iter().find(|l| !l.is_positive()) {
        Some(l) => Err(Error::NonPositiveLength(format_rational(l))),
        None => Ok(()),
    }
}

/// VNI box matrix: `b_ij = -l_i` when `d+1 != i != j`, else 0.
pub fn box_vni(lengths: &[Rational]) -> Result<TropMatrix> {
    check_lengths(lengths)?;
    let n = lengths.len() + 1;
    TropMatrix::from_fn(n, |i, j| {
        if i != n && i != j {
            TropScalar::Finite(-lengths[i - 1].clone())
        } else {
            TropScalar::one()
        }
    })
}

/// SNI box matrix: the VNI box conjugated by `diag(l_1/2, ..., l_d/2, 0)`.
pub fn box_sni(lengths: &[Rational]) -> Result<TropMatrix> {
    check_lengths(lengths)?;
    let n = lengths.len() + 1;
    let half = |k: usize| &lengths[k - 1] / int(2);
    TropMatrix::from_fn(n, |i, j| {
        let v = if i == j {
            Rational::zero()
        } else if j == n {
            -half(i)
        } else if i == n {
            -half(j)
        } else {
            -(half(i) + half(j))
        };
        TropScalar::Finite(v)
    })
}

pub fn cube_vni(d: usize, ell: &Rational) -> Result<TropMatrix> {
    box_vni(&vec![ell.clone(); d])
}

pub fn cube_sni(d: usize, ell: &Rational) -> Result<TropMatrix> {
    box_sni(&vec![ell.clone(); d])
}

/// Translation diagonal taking the VNI placement to the SNI placement.
pub fn sni_shift(lengths: &[Rational]) -> Vec<Rational> {
    lengths.iter().map(|l| l / int(2)).chain(std::iter::once(Rational::zero())).collect()
}

/// Where an isocanted polytope sits relative to the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Placement {
    /// Maximum at the origin (zero last row).
    Vni,
    /// Centre of symmetry at the origin.
    Sni,
}

impl std::str::FromStr for Placement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "vni" => Ok(Placement::Vni),
            "sni" => Ok(Placement::Sni),
            other => Err(Error::Parse(format!("unknown placement {other:?}"))),
        }
    }
}

/// Parameters of an isocanted alcoved polytope: edge lengths of the bounding
/// box and the cant parameter `a`, with `0 < a < min l_j` and `d >= 2`.
///
/// Mixed edge lengths are accepted but marked as extended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsocantedSpec {
    lengths: Vec<Rational>,
    a: Rational,
}

impl IsocantedSpec {
    /// Cubic bounding box of edge length `ell`.
    pub fn new(d: usize, ell: Rational, a: Rational) -> Result<Self> {
        Self::with_lengths(vec![ell; d], a)
    }

    pub fn with_lengths(lengths: Vec<Rational>, a: Rational) -> Result<Self> {
        check_lengths(&lengths)?;
        let min = lengths.iter().min().expect("non-empty").clone();
        if !a.is_positive() || a >= min {
            return Err(Error::InvalidCant { a: format_rational(&a), bound: format_rational(&min) });
        }
        Ok(IsocantedSpec { lengths, a })
    }

    pub fn d(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[Rational] {
        &self.lengths
    }

    /// The common edge length, when the bounding box is a cube.
    pub fn ell(&self) -> Option<&Rational> {
        let first = &self.lengths[0];
        self.lengths.iter().all(|l| l == first).then_some(first)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Mixed edge lengths: constructible, outside the cubic case.
    pub fn is_extended(&self) -> bool {
        self.ell().is_none()
    }
}

/// `I^VNI = B^VNI - E` with constant `E = [-a]`.
pub fn isocanted_vni(spec: &IsocantedSpec) -> TropMatrix {
    isocanted_vni_unchecked(&spec.lengths, &spec.a).expect("d >= 2 is guaranteed by IsocantedSpec")
}

/// The same entry pattern with no restriction on `a`, so the boundary cases
/// `a = 0` (the box) and `a = min l_j` can be studied.
pub fn isocanted_vni_unchecked(lengths: &[Rational], a: &Rational) -> Result<TropMatrix> {
    check_lengths(lengths)?;
    let n = lengths.len() + 1;
    TropMatrix::from_fn(n, |i, j| {
        let v = if i == j || i == n {
            Rational::zero()
        } else if j == n {
            -lengths[i - 1].clone()
        } else {
            a - &lengths[i - 1]
        };
        TropScalar::Finite(v)
    })
}

/// `I^SNI`: the VNI matrix conjugated into symmetric position.
pub fn isocanted_sni(spec: &IsocantedSpec) -> TropMatrix {
    conjugate_diag(&isocanted_vni(spec), &sni_shift(&spec.lengths)).expect("shift has a zero last entry")
}

pub fn isocanted_matrix(spec: &IsocantedSpec, placement: Placement) -> TropMatrix {
    match placement {
        Placement::Vni => isocanted_vni(spec),
        Placement::Sni => isocanted_sni(spec),
    }
}

/// Non-positive matrix with zero diagonal, last row and last column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl PerturbationMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n < 2 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPerturbation("not square".into()));
        }
        let entries: Vec<Rational> = rows.into_iter().flatten().collect();
        for i in 1..=n {
            for j in 1..=n {
                let e = &entries[(i - 1) * n + (j - 1)];
                if e.is_positive() {
                    return Err(Error::InvalidPerturbation(format!("entry ({i}, {j}) is positive")));
                }
                if (i == j || i == n || j == n) && !e.is_zero() {
                    return Err(Error::InvalidPerturbation(format!("entry ({i}, {j}) must be zero")));
                }
            }
        }
        Ok(PerturbationMatrix { n, entries })
    }

    pub fn zero(n: usize) -> Self {
        PerturbationMatrix { n, entries: vec![Rational::zero(); n * n] }
    }

    /// Constant `E = [-a]` of size `n`.
    pub fn constant(n: usize, a: &Rational) -> Result<Self> {
        Self::from_rows(
            (1..=n)
                .map(|i| {
                    (1..=n).map(|j| if i == j || i == n || j == n { Rational::zero() } else { -a.clone() }).collect()
                })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.n)
    }

    /// `Some(a)` with `a > 0` when every free entry equals `-a`.
    pub fn constant_cant(&self) -> Option<Rational> {
        let d = self.n - 1;
        let first = -self.get(1, 2).clone();
        let constant = (1..=d).all(|i| (1..=d).all(|j| i == j || self.get(i, j) == &-first.clone()));
        (constant && first.is_positive()).then_some(first)
    }
}

/// `A = B - E` with `B` an NI box matrix and `E` a perturbation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub box_matrix: TropMatrix,
    pub perturbation: PerturbationMatrix,
    /// Edge lengths `l_1..l_d` of the bounding box.
    pub lengths: Vec<Rational>,
    /// Diagonal `D'` (last entry 0) with `B = D' ⊙ B^VNI(l) ⊙ D'^{-1}`.
    pub shift: Vec<Rational>,
}

impl Decomposition {
    /// Entrywise `B - E`.
    pub fn reconstruct(&self) -> TropMatrix {
        let n = self.box_matrix.n();
        TropMatrix::from_fn(n, |i, j| {
            let b = self.box_matrix.get(i, j).as_finite().expect("box matrices are finite");
            TropScalar::Finite(b - self.perturbation.get(i, j))
        })
        .expect("n >= 2")
    }
}

/// Splits an NI matrix into its bounding box and perturbation.
///
/// The box shares the last row, last column and diagonal with `A`, which
/// pins it down: `b_ij = a_{i,d+1} + a_{d+1,j}` off the diagonal. `E = B - A`
/// is then checked against the perturbation pattern.
pub fn decompose(a: &TropMatrix) -> Result<Decomposition> {
    if !is_ni(a) {
        return Err(Error::NotNormalIdempotent);
    }
    let n = a.n();
    let f = |i, j| a.finite(i, j).expect("NI matrices are finite").clone();

    let shift: Vec<Rational> = (1..n).map(|j| -f(n, j)).chain(std::iter::once(Rational::zero())).collect();
    let lengths: Vec<Rational> = (1..n).map(|i| -f(n, i) - f(i, n)).collect();
    if let Some(l) = lengths.iter().find(|l| !l.is_positive()) {
        return Err(Error::Decomposition(format!("degenerate bounding box edge {}", format_rational(l))));
    }
    let box_matrix = conjugate_diag(&box_vni(&lengths)?, &shift)?;

    let rows = (1..=n).map(|i| (1..=n).map(|j| box_matrix.finite(i, j).expect("finite") - f(i, j)).collect()).collect();
    let perturbation = PerturbationMatrix::from_rows(rows)
        .map_err(|e| Error::Decomposition(format!("perturbation check failed: {e}")))?;

    Ok(Decomposition { box_matrix, perturbation, lengths, shift })
}

/// The cant parameter `a` when `P(A)` is a full-dimensional isocanted
/// polytope, `None` otherwise. Errors when `A` is not NI.
pub fn is_isocanted(a: &TropMatrix) -> Result<Option<Rational>> {
    let dec = decompose(a)?;
    if !is_full_dimensional(a) {
        return Ok(None);
    }
    Ok(dec.perturbation.constant_cant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn spec(d: usize, ell: Rational, a: Rational) -> IsocantedSpec {
        IsocantedSpec::new(d, ell, a).unwrap()
    }

    fn lengths(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn box_predicates() {
        let b = box_vni(&lengths(&[1, 2, 3])).unwrap();
        assert!(is_vni(&b));
        assert!(!is_sni(&b));
        let s = box_sni(&lengths(&[1, 2, 3])).unwrap();
        assert!(is_sni(&s));
        assert!(!is_vni(&s));
        assert_eq!(conjugate_diag(&b, &sni_shift(&lengths(&[1, 2, 3]))).unwrap(), s);
    }

    #[test]
    fn box_sni_table() {
        let ls = lengths(&[2, 4, 6]);
        let s = box_sni(&ls).unwrap();
        let e = |v: Rational| TropScalar::Finite(v);
        assert_eq!(s.get(1, 4), &e(int(-1)));
        assert_eq!(s.get(4, 2), &e(int(-2)));
        assert_eq!(s.get(2, 3), &e(int(-5)));
        assert_eq!(s.get(3, 3), &e(int(0)));
    }

    #[test]
    fn cube_vni_d2() {
        let c = cube_vni(2, &int(1)).unwrap();
        let expect = TropMatrix::from_rationals(vec![
            vec![int(0), int(-1), int(-1)],
            vec![int(-1), int(0), int(-1)],
            vec![int(0), int(0), int(0)],
        ])
        .unwrap();
        assert_eq!(c, expect);
    }

    #[test]
    fn rejects_bad_lengths_and_cants() {
        assert!(matches!(box_vni(&lengths(&[1, 0])), Err(Error::NonPositiveLength(_))));
        assert!(matches!(box_vni(&lengths(&[1])), Err(Error::DimensionTooSmall { .. })));
        assert!(IsocantedSpec::new(3, int(1), int(1)).is_err());
        assert!(IsocantedSpec::new(3, int(1), int(0)).is_err());
        assert!(IsocantedSpec::new(1, int(2), int(1)).is_err());
        assert!(IsocantedSpec::with_lengths(lengths(&[3, 1]), int(1)).is_err());
        let ext = IsocantedSpec::with_lengths(lengths(&[3, 2]), int(1)).unwrap();
        assert!(ext.is_extended());
        assert!(!spec(3, int(2), int(1)).is_extended());
    }

    #[test]
    fn isocanted_vni_entry_table_d5() {
        let (ell, a) = (rat(5, 2), rat(3, 4));
        let m = isocanted_vni(&spec(5, ell.clone(), a.clone()));
        for i in 1..=6 {
            for j in 1..=6 {
                let expect = if i != j && j == 6 {
                    -ell.clone()
                } else if i == j || i == 6 {
                    int(0)
                } else {
                    &a - &ell
                };
                assert_eq!(m.get(i, j), &TropScalar::Finite(expect), "entry ({i},{j})");
            }
        }
        assert!(is_vni(&m));
    }

    #[test]
    fn boundary_cants_are_ni_but_not_isocanted() {
        // a = l: still normal idempotent, but the polytope collapses
        let n = 4;
        let collapsed = TropMatrix::from_fn(n, |i, j| {
            TropScalar::Finite(if i == j || i == n {
                int(0)
            } else if j == n {
                int(-1)
            } else {
                int(0)
            })
        })
        .unwrap();
        assert!(is_ni(&collapsed));
        assert!(!is_full_dimensional(&collapsed));
        assert_eq!(is_isocanted(&collapsed).unwrap(), None);

        // a = 0 is the cube
        let cube = cube_vni(3, &int(1)).unwrap();
        assert!(is_ni(&cube));
        assert_eq!(is_isocanted(&cube).unwrap(), None);
    }

    #[test]
    fn sni_cant_roundtrip() {
        let m = isocanted_sni(&spec(3, int(2), rat(1, 2)));
        assert!(is_sni(&m));
        assert_eq!(is_isocanted(&m).unwrap(), Some(rat(1, 2)));
    }

    #[test]
    fn decomposition_of_isocanted_and_box() {
        let s = spec(4, int(3), int(1));
        let dec = decompose(&isocanted_vni(&s)).unwrap();
        assert_eq!(dec.perturbation, PerturbationMatrix::constant(5, &int(1)).unwrap());
        assert_eq!(dec.lengths, vec![int(3); 4]);
        assert_eq!(dec.reconstruct(), isocanted_vni(&s));

        let b = box_sni(&lengths(&[1, 2, 3])).unwrap();
        let dec = decompose(&b).unwrap();
        assert_eq!(dec.perturbation, PerturbationMatrix::zero(4));
        assert_eq!(dec.box_matrix, b);
    }

    #[test]
    fn two_distinct_cants_are_not_isocanted() {
        let mut rows: Vec<Vec<Rational>> =
            (1..=4).map(|i| (1..=4).map(|j| if i != 4 && i != j { int(-2) } else { int(0) }).collect()).collect();
        rows[1][0] = int(-1);
        rows[2][0] = rat(-3, 2);
        let m = TropMatrix::from_rationals(rows).unwrap();
        assert!(is_ni(&m));
        let dec = decompose(&m).unwrap();
        assert_eq!(dec.perturbation.get(2, 1), &int(-1));
        assert_eq!(dec.perturbation.get(3, 1), &rat(-1, 2));
        assert_eq!(is_isocanted(&m).unwrap(), None);
    }

    #[test]
    fn decompose_rejects_non_ni() {
        let m = TropMatrix::from_rationals(vec![vec![int(0), int(1)], vec![int(-2), int(0)]]).unwrap();
        assert!(matches!(decompose(&m), Err(Error::NotNormalIdempotent)));
        assert!(matches!(is_isocanted(&m), Err(Error::NotNormalIdempotent)));
    }

    #[test]
    fn perturbation_pattern_is_enforced() {
        assert!(PerturbationMatrix::from_rows(vec![vec![int(0), int(0)], vec![int(-1), int(0)]]).is_err());
        assert!(PerturbationMatrix::from_rows(vec![
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(0)],
            vec![int(0), int(0), int(0)]
        ])
        .is_err());
    }

    #[test]
    fn placement_parses() {
        assert_eq!("SNI".parse::<Placement>().unwrap(), Placement::Sni);
        assert!("mid".parse::<Placement>().is_err());
    }
}
