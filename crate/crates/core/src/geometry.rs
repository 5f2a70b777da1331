//! Geometric realisation of alcoved polytopes: the H-representation of
//! `P(A)`, exact vertex enumeration, the closed-form isocanted vertex map,
//! poles, and the zonotope and central-symmetry checks.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::classes::{
    decompose, isocanted_matrix, isocanted_vni, isocanted_vni_unchecked, sni_shift, IsocantedSpec, Placement,
};
use crate::combinatorics::VertexLabel;
use crate::error::{Error, Result};
use crate::linalg::{inverse, mat_vec, rank};
use crate::rational::{format_rational, Rational};
use crate::tropical::{laplace_terms, trop_minor, TropGrid, TropMatrix, TropScalar};

/// Default dimension bound for brute-force vertex enumeration.
pub const ORACLE_DIM_BOUND: usize = 6;

/// A point of `R^d`, identified with the slice `x_{d+1} = 0` of `R^{d+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    coords: Vec<Rational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalPoint { coords }
    }

    pub fn origin(d: usize) -> Self {
        RationalPoint { coords: vec![Rational::zero(); d] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// 1-based coordinate.
    pub fn get(&self, k: usize) -> &Rational {
        &self.coords[k - 1]
    }

    pub fn neg(&self) -> Self {
        RationalPoint { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &RationalPoint) -> Self {
        RationalPoint { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &RationalPoint) -> Self {
        RationalPoint { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    /// The point with `x_{d+1} = 0` appended.
    pub fn homogenized(&self) -> Vec<Rational> {
        self.coords.iter().cloned().chain(std::iter::once(Rational::zero())).collect()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        parts.serialize(s)
    }
}

/// Linear form of a constraint, 1-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintKind {
    /// `x_i`
    Single(usize),
    /// `x_i - x_j` with `i < j`
    Difference(usize, usize),
}

/// `lower <= form(x) <= upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub kind: ConstraintKind,
    pub lower: Rational,
    pub upper: Rational,
}

impl Constraint {
    pub fn value(&self, x: &RationalPoint) -> Rational {
        match self.kind {
            ConstraintKind::Single(i) => x.get(i).clone(),
            ConstraintKind::Difference(i, j) => x.get(i) - x.get(j),
        }
    }

    pub fn normal(&self, d: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); d];
        match self.kind {
            ConstraintKind::Single(i) => v[i - 1] = Rational::one(),
            ConstraintKind::Difference(i, j) => {
                v[i - 1] = Rational::one();
                v[j - 1] = -Rational::one();
            }
        }
        v
    }

    pub fn contains(&self, x: &RationalPoint) -> bool {
        let v = self.value(x);
        self.lower <= v && v <= self.upper
    }
}

/// The system `a_ij <= x_i - x_j <= -a_ji`, `a_{i,d+1} <= x_i <= -a_{d+1,i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub d: usize,
    pub constraints: Vec<Constraint>,
}

impl HRep {
    pub fn contains(&self, x: &RationalPoint) -> bool {
        x.dim() == self.d && self.constraints.iter().all(|c| c.contains(x))
    }

    /// Normals of the bounding hyperplanes through `x`.
    pub fn tight_normals(&self, x: &RationalPoint) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for c in &self.constraints {
            let v = c.value(x);
            if v == c.lower || v == c.upper {
                out.push(c.normal(self.d));
            }
        }
        out
    }

    /// Whether `x` is feasible and lies on `d` linearly independent bounding
    /// hyperplanes.
    pub fn is_vertex(&self, x: &RationalPoint) -> bool {
        self.contains(x) && rank(&self.tight_normals(x)) == self.d
    }
}

pub fn hrep_from_matrix(a: &TropMatrix) -> Result<HRep> {
    let n = a.n();
    let d = n - 1;
    for i in 1..=n {
        for j in 1..=n {
            if !a.get(i, j).is_finite() {
                return Err(Error::NonFiniteEntry(i, j));
            }
        }
        if !a.finite(i, i)?.is_zero() {
            return Err(Error::NonZeroDiagonal(i));
        }
    }
    let f = |i, j| a.finite(i, j).expect("checked finite").clone();
    let mut constraints = Vec::with_capacity(d * (d + 1) / 2);
    for i in 1..=d {
        constraints.push(Constraint { kind: ConstraintKind::Single(i), lower: f(i, n), upper: -f(n, i) });
    }
    for i in 1..=d {
        for j in i + 1..=d {
            constraints.push(Constraint { kind: ConstraintKind::Difference(i, j), lower: f(i, j), upper: -f(j, i) });
        }
    }
    if let Some(c) = constraints.iter().find(|c| c.lower > c.upper) {
        return Err(Error::InconsistentBounds(format!(
            "{:?}: {} > {}",
            c.kind,
            format_rational(&c.lower),
            format_rational(&c.upper)
        )));
    }
    Ok(HRep { d, constraints })
}

/// `A_0` with `alpha_ij = a_ij - a_{d+1,j}`; its columns are the generators.
pub fn auxiliary_matrix(a: &TropMatrix) -> Result<TropMatrix> {
    let n = a.n();
    if let Some((i, j)) = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).find(|&(i, j)| !a.get(i, j).is_finite()) {
        return Err(Error::NonFiniteEntry(i, j));
    }
    TropMatrix::from_fn(n, |i, j| TropScalar::Finite(a.finite(i, j).expect("finite") - a.finite(n, j).expect("finite")))
}

/// `(max P(A), min P(A)) = (diag(A_0), col(d+1, A_0))`.
pub fn poles(a: &TropMatrix) -> Result<(RationalPoint, RationalPoint)> {
    let a0 = auxiliary_matrix(a)?;
    let d = a.n() - 1;
    let north = (1..=d).map(|i| a0.finite(i, i).cloned()).collect::<Result<Vec<_>>>()?;
    let south = (1..=d).map(|i| a0.finite(i, d + 1).cloned()).collect::<Result<Vec<_>>>()?;
    Ok((RationalPoint::new(north), RationalPoint::new(south)))
}

pub fn isocanted_poles(spec: &IsocantedSpec, placement: Placement) -> (RationalPoint, RationalPoint) {
    poles(&isocanted_matrix(spec, placement)).expect("isocanted matrices are finite")
}

/// `P(B)` for the bounding box `B` of an NI matrix.
pub fn bounding_box(a: &TropMatrix) -> Result<HRep> {
    hrep_from_matrix(&decompose(a)?.box_matrix)
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > m {
        return out;
    }
    loop {
        out.push(idx.clone());
        let Some(pos) = (0..k).rev().find(|&p| idx[p] != p + m - k) else {
            return out;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

pub fn enumerate_vertices_oracle(h: &HRep) -> Result<VertexSet> {
    enumerate_vertices_oracle_bounded(h, ORACLE_DIM_BOUND)
}

/// Brute force: every choice of `d` constraints (one side of each, so the two
/// parallel hyperplanes of a constraint never pair up), solved exactly, kept
/// when feasible.
pub fn enumerate_vertices_oracle_bounded(h: &HRep, bound: usize) -> Result<VertexSet> {
    let d = h.d;
    if d > bound {
        return Err(Error::DimensionOverBound { d, bound });
    }
    let normals: Vec<Vec<Rational>> = h.constraints.iter().map(|c| c.normal(d)).collect();
    let points: BTreeSet<RationalPoint> = combinations(h.constraints.len(), d)
        .into_par_iter()
        .fold(BTreeSet::new, |mut acc, subset| {
            let m: Vec<Vec<Rational>> = subset.iter().map(|&c| normals[c].clone()).collect();
            let Some(inv) = inverse(&m) else {
                return acc;
            };
            for sides in 0u32..1 << d {
                let b: Vec<Rational> = subset
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| {
                        let con = &h.constraints[c];
                        if sides >> k & 1 == 0 {
                            con.lower.clone()
                        } else {
                            con.upper.clone()
                        }
                    })
                    .collect();
                let x = RationalPoint::new(mat_vec(&inv, &b));
                if h.contains(&x) {
                    acc.insert(x);
                }
            }
            acc
        })
        .reduce(BTreeSet::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });
    if points.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    Ok(VertexSet { d, labeled: BTreeMap::new(), unlabeled: points })
}

/// Vertices, labelled by subsets of `[d+1]` where a label is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexSet {
    pub d: usize,
    pub labeled: BTreeMap<VertexLabel, RationalPoint>,
    pub unlabeled: BTreeSet<RationalPoint>,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.labeled.len() + self.unlabeled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All points, sorted.
    pub fn points(&self) -> Vec<RationalPoint> {
        let all: BTreeSet<RationalPoint> = self.labeled.values().chain(&self.unlabeled).cloned().collect();
        all.into_iter().collect()
    }

    pub fn label_of(&self, p: &RationalPoint) -> Option<VertexLabel> {
        self.labeled.iter().find(|(_, q)| *q == p).map(|(w, _)| *w)
    }

    /// Attaches closed-form isocanted labels to matching points.
    pub fn with_isocanted_labels(mut self, spec: &IsocantedSpec, placement: Placement) -> Result<Self> {
        for (w, p) in isocanted_vertices(spec, placement)?.labeled {
            if self.unlabeled.remove(&p) {
                self.labeled.insert(w, p);
            }
        }
        Ok(self)
    }
}

/// Closed-form vertex for label `W` of the VNI matrix with edge lengths
/// `lengths` and cant `a`. No range check on `a`.
pub fn vertex_formula(lengths: &[Rational], a: &Rational, w: &VertexLabel) -> Result<RationalPoint> {
    let d = lengths.len();
    if w.d() != d {
        return Err(Error::InvalidLabel(format!("label {w} is not a subset of [{}]", d + 1)));
    }
    let coords = (1..=d)
        .map(|k| {
            let ell = &lengths[k - 1];
            match (w.contains(d + 1), w.contains(k)) {
                (false, true) => Rational::zero(),
                (false, false) => a - ell,
                (true, true) => -a.clone(),
                (true, false) => -ell.clone(),
            }
        })
        .collect();
    Ok(RationalPoint::new(coords))
}

/// The unique vertex of `L(W)` for the VNI placement (maximum at the origin).
pub fn isocanted_vertex(spec: &IsocantedSpec, w: &VertexLabel) -> Result<RationalPoint> {
    vertex_formula(spec.lengths(), spec.a(), w)
}

pub fn isocanted_vertex_placed(spec: &IsocantedSpec, w: &VertexLabel, placement: Placement) -> Result<RationalPoint> {
    let x = isocanted_vertex(spec, w)?;
    Ok(match placement {
        Placement::Vni => x,
        Placement::Sni => {
            let shift = sni_shift(spec.lengths());
            x.add(&RationalPoint::new(shift[..spec.d()].to_vec()))
        }
    })
}

/// All `2^{d+1} - 2` closed-form vertices, labelled.
pub fn isocanted_vertices(spec: &IsocantedSpec, placement: Placement) -> Result<VertexSet> {
    let labeled = VertexLabel::all(spec.d())?
        .into_iter()
        .map(|w| Ok((w, isocanted_vertex_placed(spec, &w, placement)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(VertexSet { d: spec.d(), labeled, unlabeled: BTreeSet::new() })
}

/// `C(W)`: the columns of `c` indexed by `W`, in increasing order.
pub fn column_submatrix(c: &TropMatrix, w: &VertexLabel) -> Result<TropGrid> {
    if w.d() + 1 != c.n() {
        return Err(Error::SizeMismatch { left: c.n(), right: w.d() + 1 });
    }
    let cols = w.elements();
    TropGrid::from_rows((1..=c.n()).map(|i| cols.iter().map(|&j| c.get(i, j).clone()).collect()).collect())
}

/// `C(W, x)`: `C(W)` with the column `(x, 0)` appended.
pub fn extended_submatrix(c: &TropMatrix, w: &VertexLabel, x: &RationalPoint) -> Result<TropGrid> {
    if x.dim() + 1 != c.n() {
        return Err(Error::SizeMismatch { left: c.n(), right: x.dim() + 1 });
    }
    let cols = w.elements();
    let xh = x.homogenized();
    TropGrid::from_rows(
        (1..=c.n())
            .map(|i| {
                cols.iter()
                    .map(|&j| c.get(i, j).clone())
                    .chain(std::iter::once(TropScalar::Finite(xh[i - 1].clone())))
                    .collect()
            })
            .collect(),
    )
}

/// The constants `m_{rows \ i_k}` (order-`j` minors of `C(W)`) that the
/// Laplace expansion of `m_rows(x)` along the `x` column adds to each
/// `x_{i_k}`. `rows` has `|W| + 1` entries.
pub fn laplace_offsets(c: &TropMatrix, w: &VertexLabel, rows: &[usize]) -> Result<Vec<TropScalar>> {
    let cw = column_submatrix(c, w)?;
    let cols: Vec<usize> = (1..=w.len()).collect();
    rows.iter()
        .map(|r| {
            let rest: Vec<usize> = rows.iter().copied().filter(|q| q != r).collect();
            trop_minor(&cw, &rest, &cols).map(|m| m.value)
        })
        .collect()
}

/// Outcome of the minor conditions for `x` against `L(W)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniqueVertexCheck {
    /// Every order-`(j+1)` minor of `C(W, x)` attains its maximum at least twice.
    pub membership: bool,
    /// Every such minor has all of its Laplace terms along the `x` column equal.
    pub all_terms_equal: bool,
    pub minors_checked: usize,
}

impl UniqueVertexCheck {
    pub fn passed(&self) -> bool {
        self.membership && self.all_terms_equal
    }
}

pub fn verify_unique_vertex_at(c: &TropMatrix, w: &VertexLabel, x: &RationalPoint) -> Result<UniqueVertexCheck> {
    let grid = extended_submatrix(c, w, x)?;
    let j = w.len();
    let cols: Vec<usize> = (1..=j + 1).collect();
    let mut membership = true;
    let mut all_terms_equal = true;
    let row_sets = combinations(c.n(), j + 1);
    for rows in &row_sets {
        let rows: Vec<usize> = rows.iter().map(|r| r + 1).collect();
        membership &= trop_minor(&grid, &rows, &cols)?.is_degenerate();
        let terms = laplace_terms(&grid, &rows, &cols, j + 1)?;
        all_terms_equal &= terms.windows(2).all(|p| p[0] == p[1]);
    }
    Ok(UniqueVertexCheck { membership, all_terms_equal, minors_checked: row_sets.len() })
}

/// Minor conditions at the closed-form vertex of `W` for the VNI matrix.
pub fn verify_unique_vertex(spec: &IsocantedSpec, w: &VertexLabel) -> Result<bool> {
    let x = isocanted_vertex(spec, w)?;
    Ok(verify_unique_vertex_at(&isocanted_vni(spec), w, &x)?.passed())
}

/// How the closed-form label map behaves for given parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelMapCheck {
    pub labels: usize,
    pub distinct_points: usize,
    pub oracle_vertices: usize,
    /// Every closed-form point is an oracle vertex.
    pub points_are_vertices: bool,
}

impl LabelMapCheck {
    /// Labels, closed-form points and vertices are in bijection.
    pub fn bijective(&self) -> bool {
        self.points_are_vertices && self.labels == self.distinct_points && self.distinct_points == self.oracle_vertices
    }
}

/// Compares the closed-form points of all labels with the oracle vertices of
/// the same entry pattern. At `a = 0` or `a = min l_j` the map collapses.
pub fn label_map_check_raw(lengths: &[Rational], a: &Rational) -> Result<LabelMapCheck> {
    let d = lengths.len();
    let labels = VertexLabel::all(d)?;
    let points: BTreeSet<RationalPoint> =
        labels.iter().map(|w| vertex_formula(lengths, a, w)).collect::<Result<_>>()?;
    let h = hrep_from_matrix(&isocanted_vni_unchecked(lengths, a)?)?;
    let vertices: BTreeSet<RationalPoint> = enumerate_vertices_oracle(&h)?.points().into_iter().collect();
    Ok(LabelMapCheck {
        labels: labels.len(),
        distinct_points: points.len(),
        oracle_vertices: vertices.len(),
        points_are_vertices: points.is_subset(&vertices),
    })
}

/// A face found from facet incidences: indices into the vertex list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OracleFace {
    pub dim: usize,
    pub vertices: Vec<usize>,
}

fn affine_rank(points: &[RationalPoint], idx: &[usize]) -> usize {
    let Some((&first, rest)) = idx.split_first() else {
        return 0;
    };
    let rows: Vec<Vec<Rational>> = rest.iter().map(|&i| points[i].sub(&points[first]).coords).collect();
    rank(&rows)
}

/// Proper faces of the polytope with the given vertices: the facet vertex
/// sets (bounding hyperplanes meeting the vertices in an affine
/// `(d-1)`-dimensional set), closed under intersection.
pub fn oracle_faces(h: &HRep, points: &[RationalPoint]) -> Vec<OracleFace> {
    let d = h.d;
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for c in &h.constraints {
        for bound in [&c.lower, &c.upper] {
            let on: Vec<usize> = (0..points.len()).filter(|&i| c.value(&points[i]) == *bound).collect();
            if on.len() >= d && affine_rank(points, &on) == d - 1 {
                facets.insert(on);
            }
        }
    }
    let facets: Vec<BTreeSet<usize>> = facets.into_iter().map(|f| f.into_iter().collect()).collect();
    let mut seen: HashSet<Vec<usize>> = facets.iter().map(|f| f.iter().copied().collect()).collect();
    let mut queue: Vec<BTreeSet<usize>> = facets.clone();
    while let Some(face) = queue.pop() {
        for g in &facets {
            let meet: BTreeSet<usize> = face.intersection(g).copied().collect();
            if meet.is_empty() {
                continue;
            }
            let key: Vec<usize> = meet.iter().copied().collect();
            if seen.insert(key) {
                queue.push(meet);
            }
        }
    }
    let mut faces: Vec<OracleFace> =
        seen.into_par_iter().map(|vertices| OracleFace { dim: affine_rank(points, &vertices), vertices }).collect();
    faces.sort();
    faces
}

/// Number of oracle faces in each dimension `0..d-1`.
pub fn oracle_face_counts(h: &HRep, points: &[RationalPoint]) -> Vec<usize> {
    let mut counts = vec![0usize; h.d];
    for f in oracle_faces(h, points) {
        if f.dim < h.d {
            counts[f.dim] += 1;
        }
    }
    counts
}

/// The points `b + s` with `b` a vertex of `prod [-l_k, -a]` and
/// `s ∈ {0, a(1,...,1)}`.
pub fn minkowski_box_segment(lengths: &[Rational], a: &Rational) -> BTreeSet<RationalPoint> {
    let d = lengths.len();
    let mut out = BTreeSet::new();
    for corner in 0u64..1 << d {
        let b: Vec<Rational> =
            (0..d).map(|k| if corner >> k & 1 == 1 { -a.clone() } else { -lengths[k].clone() }).collect();
        out.insert(RationalPoint::new(b.clone()));
        out.insert(RationalPoint::new(b.iter().map(|x| x + a).collect()));
    }
    out
}

/// Result of comparing `P(I^VNI)` with box plus segment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZonotopeCheck {
    /// Every Minkowski-sum point satisfies the H-representation.
    pub sum_inside: bool,
    /// Every vertex of `P(I^VNI)` is a Minkowski-sum point.
    pub vertices_covered: bool,
    pub vertex_count: usize,
    pub sum_points: usize,
}

impl ZonotopeCheck {
    /// Both inclusions hold, so the two convex hulls coincide and so do their
    /// vertex sets.
    pub fn passed(&self) -> bool {
        self.sum_inside && self.vertices_covered
    }
}

/// Box-plus-segment comparison for arbitrary `a >= 0`, including the
/// degenerate `a = 0` where the segment is a point.
pub fn zonotope_check_raw(lengths: &[Rational], a: &Rational) -> Result<ZonotopeCheck> {
    let h = hrep_from_matrix(&isocanted_vni_unchecked(lengths, a)?)?;
    let vertices = enumerate_vertices_oracle(&h)?.points();
    let sum = minkowski_box_segment(lengths, a);
    Ok(ZonotopeCheck {
        sum_inside: sum.iter().all(|p| h.contains(p)),
        vertices_covered: vertices.iter().all(|v| sum.contains(v)),
        vertex_count: vertices.len(),
        sum_points: sum.len(),
    })
}

pub fn zonotope_check(spec: &IsocantedSpec) -> Result<bool> {
    Ok(zonotope_check_raw(spec.lengths(), spec.a())?.passed())
}

/// Whether the vertex set of `P(A)` is closed under reflection in its centre
/// `(max + min) / 2`; in SNI placement the centre is the origin.
pub fn central_symmetry_check(a: &TropMatrix) -> Result<bool> {
    let h = hrep_from_matrix(a)?;
    let vertices = enumerate_vertices_oracle(&h)?.points();
    let d = h.d;
    let centre2: Vec<Rational> = (0..d)
        .map(|k| {
            let col = vertices.iter().map(|v| &v.coords[k]);
            col.clone().max().expect("non-empty") + col.min().expect("non-empty")
        })
        .collect();
    let centre2 = RationalPoint::new(centre2);
    let set: BTreeSet<&RationalPoint> = vertices.iter().collect();
    Ok(vertices.iter().all(|v| set.contains(&centre2.sub(v))))
}
