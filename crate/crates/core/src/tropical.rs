//! The max-plus semiring over exact rationals, square tropical matrices and
//! exhaustive permanent/minor evaluation with attainment multiplicities.
//!
//! All public indices are 1-based.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// Orders above this are refused by [`trop_permanent`].
pub const PERMANENT_SIZE_BOUND: usize = 10;

/// A max-plus scalar: an exact rational or the neutral element `-inf`.
///
/// The derived order puts `NegInf` below every finite value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropScalar {
    NegInf,
    Finite(Rational),
}

impl TropScalar {
    /// The tropical zero, `-inf`.
    pub fn zero() -> Self {
        TropScalar::NegInf
    }

    /// The tropical one, `0`.
    pub fn one() -> Self {
        TropScalar::Finite(Rational::zero())
    }

    pub fn finite(value: Rational) -> Self {
        TropScalar::Finite(value)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, TropScalar::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            TropScalar::Finite(v) => Some(v),
            TropScalar::NegInf => None,
        }
    }

    pub fn oplus(&self, other: &TropScalar) -> TropScalar {
        trop_add(self, other)
    }

    pub fn otimes(&self, other: &TropScalar) -> TropScalar {
        trop_mul(self, other)
    }
}

impl From<Rational> for TropScalar {
    fn from(value: Rational) -> Self {
        TropScalar::Finite(value)
    }
}

impl fmt::Display for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropScalar::NegInf => f.write_str("-inf"),
            TropScalar::Finite(v) => f.write_str(&format_rational(v)),
        }
    }
}

/// `x ⊕ y = max(x, y)`.
pub fn trop_add(x: &TropScalar, y: &TropScalar) -> TropScalar {
    if x >= y {
        x.clone()
    } else {
        y.clone()
    }
}

/// `x ⊙ y = x + y`; `-inf` absorbs.
pub fn trop_mul(x: &TropScalar, y: &TropScalar) -> TropScalar {
    match (x, y) {
        (TropScalar::Finite(a), TropScalar::Finite(b)) => TropScalar::Finite(a + b),
        _ => TropScalar::NegInf,
    }
}

/// Read access to a rectangular grid of scalars, 0-based internally.
pub trait TropEntries {
    fn row_count(&self) -> usize;
    fn col_count(&self) -> usize;
    fn entry0(&self, i: usize, j: usize) -> &TropScalar;
}

/// Square max-plus matrix of size `n >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropMatrix {
    n: usize,
    entries: Vec<TropScalar>,
}

impl TropMatrix {
    pub fn from_rows(rows: Vec<Vec<TropScalar>>) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::NotSquare { rows: n, cols: rows.first().map_or(0, Vec::len) });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare { rows: n, cols: bad.len() });
        }
        Ok(TropMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_rationals(rows: Vec<Vec<Rational>>) -> Result<Self> {
        Self::from_rows(rows.into_iter().map(|r| r.into_iter().map(TropScalar::Finite).collect()).collect())
    }

    /// Builds a matrix from a 1-based entry function.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> TropScalar) -> Result<Self> {
        if n < 2 {
            return Err(Error::NotSquare { rows: n, cols: n });
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                entries.push(f(i, j));
            }
        }
        Ok(TropMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Ambient dimension `d = n - 1` of the polytope this matrix describes.
    pub fn dim(&self) -> usize {
        self.n - 1
    }

    /// 1-based entry access. Panics when out of range.
    pub fn get(&self, i: usize, j: usize) -> &TropScalar {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j), "index ({i}, {j}) out of range");
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// 1-based finite entry; errors on `-inf`.
    pub fn finite(&self, i: usize, j: usize) -> Result<&Rational> {
        self.get(i, j).as_finite().ok_or(Error::NonFiniteEntry(i, j))
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(TropScalar::is_finite)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[TropScalar]> {
        self.entries.chunks(self.n)
    }

    pub fn is_symmetric(&self) -> bool {
        (1..=self.n).all(|i| (i + 1..=self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Column `j` (1-based) as a vector.
    pub fn column(&self, j: usize) -> Vec<TropScalar> {
        (1..=self.n).map(|i| self.get(i, j).clone()).collect()
    }

    /// Diagonal as a vector.
    pub fn diagonal(&self) -> Vec<TropScalar> {
        (1..=self.n).map(|i| self.get(i, i).clone()).collect()
    }
}

impl TropEntries for TropMatrix {
    fn row_count(&self) -> usize {
        self.n
    }
    fn col_count(&self) -> usize {
        self.n
    }
    fn entry0(&self, i: usize, j: usize) -> &TropScalar {
        &self.entries[i * self.n + j]
    }
}

impl fmt::Display for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Rectangular grid, e.g. a column selection `C(W)` extended by a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropGrid {
    rows: usize,
    cols: usize,
    entries: Vec<TropScalar>,
}

impl TropGrid {
    pub fn from_rows(rows: Vec<Vec<TropScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::NotSquare { rows: c, cols: bad.len() });
        }
        Ok(TropGrid { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn get(&self, i: usize, j: usize) -> &TropScalar {
        assert!((1..=self.rows).contains(&i) && (1..=self.cols).contains(&j), "index ({i}, {j}) out of range");
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }
}

impl TropEntries for TropGrid {
    fn row_count(&self) -> usize {
        self.rows
    }
    fn col_count(&self) -> usize {
        self.cols
    }
    fn entry0(&self, i: usize, j: usize) -> &TropScalar {
        &self.entries[i * self.cols + j]
    }
}

/// `(A ⊙ B)_{ik} = max_j (A_{ij} + B_{jk})`.
pub fn mat_mul(a: &TropMatrix, b: &TropMatrix) -> Result<TropMatrix> {
    if a.n != b.n {
        return Err(Error::SizeMismatch { left: a.n, right: b.n });
    }
    let n = a.n;
    TropMatrix::from_fn(n, |i, k| {
        (1..=n).map(|j| trop_mul(a.get(i, j), b.get(j, k))).fold(TropScalar::NegInf, |acc, t| trop_add(&acc, &t))
    })
}

/// Value of a tropical permanent together with the number of permutations
/// attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorEvaluation {
    pub value: TropScalar,
    pub multiplicity: BigUint,
}

impl MinorEvaluation {
    /// Whether the maximum is attained at least twice (corner-locus membership).
    pub fn is_degenerate(&self) -> bool {
        self.multiplicity >= BigUint::from(2u32)
    }
}

/// Tropical permanent of a square matrix, exhaustive over all permutations.
pub fn trop_permanent(a: &TropMatrix) -> Result<MinorEvaluation> {
    trop_permanent_bounded(a, PERMANENT_SIZE_BOUND)
}

pub fn trop_permanent_bounded(a: &TropMatrix, bound: usize) -> Result<MinorEvaluation> {
    if a.n > bound {
        return Err(Error::PermanentTooLarge { n: a.n, bound });
    }
    let idx: Vec<usize> = (0..a.n).collect();
    Ok(permanent_of(a, &idx, &idx))
}

/// Tropical minor: permanent of the submatrix on `rows` x `cols` (1-based).
pub fn trop_minor<M: TropEntries>(a: &M, rows: &[usize], cols: &[usize]) -> Result<MinorEvaluation> {
    let (r, c) = selection(a, rows, cols)?;
    if r.len() > PERMANENT_SIZE_BOUND {
        return Err(Error::PermanentTooLarge { n: r.len(), bound: PERMANENT_SIZE_BOUND });
    }
    Ok(permanent_of(a, &r, &c))
}

/// Tropical Laplace expansion of the minor on `rows` x `cols` along
/// `expansion_col`: one term per selected row, in the order given, each the
/// entry plus its complementary minor. Their maximum equals the minor.
pub fn laplace_terms<M: TropEntries>(
    a: &M,
    rows: &[usize],
    cols: &[usize],
    expansion_col: usize,
) -> Result<Vec<TropScalar>> {
    let (r, c) = selection(a, rows, cols)?;
    let Some(pos) = cols.iter().position(|&j| j == expansion_col) else {
        return Err(Error::ExpansionColumnNotSelected(expansion_col));
    };
    let col = c[pos];
    let rest_cols: Vec<usize> = c.iter().copied().filter(|&j| j != col).collect();
    Ok(r.iter()
        .map(|&row| {
            let rest_rows: Vec<usize> = r.iter().copied().filter(|&i| i != row).collect();
            let minor = permanent_of(a, &rest_rows, &rest_cols);
            trop_mul(a.entry0(row, col), &minor.value)
        })
        .collect())
}

/// `D ⊙ A ⊙ D^{-1}`: entries `a_ij + d_i - d_j`. The last entry of `d` must be 0.
pub fn conjugate_diag(a: &TropMatrix, d: &[Rational]) -> Result<TropMatrix> {
    if d.len() != a.n || !d[a.n - 1].is_zero() {
        return Err(Error::BadConjugation { expected: a.n });
    }
    TropMatrix::from_fn(a.n, |i, j| match a.get(i, j) {
        TropScalar::Finite(v) => TropScalar::Finite(v + &d[i - 1] - &d[j - 1]),
        TropScalar::NegInf => TropScalar::NegInf,
    })
}

fn selection<M: TropEntries>(a: &M, rows: &[usize], cols: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    if rows.len() != cols.len() {
        return Err(Error::RaggedSelection { rows: rows.len(), cols: cols.len() });
    }
    let check = |idx: &[usize], n: usize| -> Result<Vec<usize>> {
        let mut seen = vec![false; n];
        idx.iter()
            .map(|&i| {
                if i == 0 || i > n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
                if std::mem::replace(&mut seen[i - 1], true) {
                    return Err(Error::DuplicateIndex(i));
                }
                Ok(i - 1)
            })
            .collect()
    };
    Ok((check(rows, a.row_count())?, check(cols, a.col_count())?))
}

/// Exhaustive permanent over the 0-based selection. The empty permanent is 0.
fn permanent_of<M: TropEntries + ?Sized>(a: &M, rows: &[usize], cols: &[usize]) -> MinorEvaluation {
    struct Search<'a, M: ?Sized> {
        a: &'a M,
        rows: &'a [usize],
        cols: &'a [usize],
        used: Vec<bool>,
        best: Option<TropScalar>,
        count: u64,
    }

    impl<M: TropEntries + ?Sized> Search<'_, M> {
        fn go(&mut self, depth: usize, acc: TropScalar) {
            if depth == self.rows.len() {
                match self.best.as_ref().map(|b| acc.cmp(b)) {
                    None | Some(Ordering::Greater) => {
                        self.best = Some(acc);
                        self.count = 1;
                    }
                    Some(Ordering::Equal) => self.count += 1,
                    Some(Ordering::Less) => {}
                }
                return;
            }
            for k in 0..self.cols.len() {
                if self.used[k] {
                    continue;
                }
                self.used[k] = true;
                let next = trop_mul(&acc, self.a.entry0(self.rows[depth], self.cols[k]));
                self.go(depth + 1, next);
                self.used[k] = false;
            }
        }
    }

    let mut s = Search { a, rows, cols, used: vec![false; cols.len()], best: None, count: 0 };
    s.go(0, TropScalar::one());
    MinorEvaluation { value: s.best.unwrap_or_else(TropScalar::one), multiplicity: BigUint::from(s.count.max(1)) }
}
