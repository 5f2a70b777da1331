use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{binomial, from_biguint, pow2, rat, Rational};

/// Face counts `f_0, f_1, ...` as arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector {
    counts: Vec<BigUint>,
}

impl FVector {
    pub fn new(counts: Vec<BigUint>) -> Self {
        FVector { counts }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn get(&self, j: usize) -> Option<&BigUint> {
        self.counts.get(j)
    }

    /// Appends `f_d = 1`.
    pub fn with_top(mut self) -> Self {
        self.counts.push(BigUint::one());
        self
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

impl<T: Into<BigUint> + Copy> PartialEq<[T]> for FVector {
    fn eq(&self, other: &[T]) -> bool {
        self.counts.len() == other.len() && self.counts.iter().zip(other).all(|(a, &b)| *a == b.into())
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for FVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.counts.iter().map(ToString::to_string).collect();
        parts.serialize(s)
    }
}

/// `I_{d,j} = (2^{d+1-j} - 2) C(d+1, j)` for `0 <= j <= d-1`, `I_{d,d} = 1`,
/// and 0 outside (including `I_{d,-1} = 0`).
pub fn isocanted_count(d: usize, j: i64) -> BigUint {
    if j < 0 || j as usize > d {
        return BigUint::zero();
    }
    let j = j as usize;
    if j == d {
        return BigUint::one();
    }
    (pow2(d + 1 - j) - 2u32) * binomial(d + 1, j)
}

/// `B_{d,j} = 2^{d-j} C(d, j)`.
pub fn box_count(d: usize, j: usize) -> BigUint {
    if j > d {
        return BigUint::zero();
    }
    pow2(d - j) * binomial(d, j)
}

/// `C_{d,j} = (2^{d-j} - 1) C(d, j)`: faces of a polar cask.
pub fn cask_count(d: usize, j: usize) -> BigUint {
    if j > d {
        return BigUint::zero();
    }
    (pow2(d - j) - 1u32) * binomial(d, j)
}

/// f-vector `(I_{d,0}, ..., I_{d,d-1})` of the isocanted d-polytope.
pub fn fvector_formula(d: usize) -> Result<FVector> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { d, min: 2 });
    }
    Ok(FVector::new((0..d as i64).map(|j| isocanted_count(d, j)).collect()))
}

/// f-vector of the d-box, `j = 0..d-1`.
pub fn fvector_box(d: usize) -> Result<FVector> {
    if d < 1 {
        return Err(Error::DimensionTooSmall { d, min: 1 });
    }
    Ok(FVector::new((0..d).map(|j| box_count(d, j)).collect()))
}

/// f-vector of a polar cask, `j = 0..d-2`.
pub fn fvector_cask(d: usize) -> Result<FVector> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { d, min: 2 });
    }
    Ok(FVector::new((0..=d - 2).map(|j| cask_count(d, j)).collect()))
}

/// `H_{d,k}`: half of `I_{d,k}`, which makes `H_{d,d} = 1/2`.
pub fn h_entry(d: usize, k: usize) -> Rational {
    if k > d {
        Rational::zero()
    } else if k == d {
        rat(1, 2)
    } else {
        from_biguint(&((pow2(d - k) - 1u32) * binomial(d + 1, k)))
    }
}

/// Rows `0..=dmax` of the lower-triangular 2-power matrix `T`, Pascal matrix
/// `P`, box matrix `B = T ∘ P`, and `H`. Row `d` holds entries `k = 0..=d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVectorMatrices {
    pub t: Vec<Vec<BigUint>>,
    pub p: Vec<Vec<BigUint>>,
    pub b: Vec<Vec<BigUint>>,
    pub h: Vec<Vec<Rational>>,
}

pub fn fvector_matrices(dmax: usize) -> FVectorMatrices {
    let rows = |f: &dyn Fn(usize, usize) -> BigUint| -> Vec<Vec<BigUint>> {
        (0..=dmax).map(|d| (0..=d).map(|k| f(d, k)).collect()).collect()
    };
    let t = rows(&|d, k| pow2(d - k));
    let p = rows(&|d, k| binomial(d, k));
    let b = t.iter().zip(&p).map(|(tr, pr)| tr.iter().zip(pr).map(|(x, y)| x * y).collect()).collect();
    let h = (0..=dmax).map(|d| (0..=d).map(|k| h_entry(d, k)).collect()).collect();
    FVectorMatrices { t, p, b, h }
}
