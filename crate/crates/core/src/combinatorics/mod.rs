//! Combinatorial type of the isocanted d-polytope: vertex labels (proper
//! nonempty subsets of `[d+1]`), faces as Boolean intervals `[X, Y]`, and the
//! closed-form face counts.

mod fvector;
mod lattice;
mod skeleton;

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use fvector::{
    box_count, cask_count, fvector_box, fvector_cask, fvector_formula, fvector_matrices, h_entry, isocanted_count,
    FVector, FVectorMatrices,
};
pub use lattice::{
    build_face_lattice, casks_and_belt, count_flags, fatness_f03, flag_formula, flags_from_facets, maximal_chain_count,
    CaskPartition, FaceLattice, FaceRegion, FlagCount, LATTICE_DIM_BOUND,
};
pub use skeleton::{diameter, distance, skeleton, valence, SkeletonGraph, SKELETON_DIM_BOUND};

/// Largest `d` whose labels fit the bitmask representation.
pub const MAX_LABEL_DIM: usize = 62;

fn full_mask(d: usize) -> u64 {
    (1u64 << (d + 1)) - 1
}

fn check_dim(d: usize) -> Result<()> {
    if d < 1 {
        return Err(Error::DimensionTooSmall { d, min: 1 });
    }
    if d > MAX_LABEL_DIM {
        return Err(Error::DimensionOverBound { d, bound: MAX_LABEL_DIM });
    }
    Ok(())
}

fn elements_of(bits: u64) -> Vec<usize> {
    (0..64).filter(|k| bits >> k & 1 == 1).map(|k| k + 1).collect()
}

/// A vertex label `W`: a proper nonempty subset of `[d+1]`. Its size is the
/// label's length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexLabel {
    d: usize,
    bits: u64,
}

impl VertexLabel {
    pub fn new(d: usize, elements: &[usize]) -> Result<Self> {
        check_dim(d)?;
        let mut bits = 0u64;
        for &k in elements {
            if k == 0 || k > d + 1 {
                return Err(Error::InvalidLabel(format!("element {k} outside [1, {}]", d + 1)));
            }
            bits |= 1 << (k - 1);
        }
        Self::from_bits(d, bits)
    }

    /// Bit `k-1` set means `k` is in the label.
    pub fn from_bits(d: usize, bits: u64) -> Result<Self> {
        check_dim(d)?;
        if bits == 0 || bits & !full_mask(d) != 0 || bits == full_mask(d) {
            return Err(Error::InvalidLabel(format!("{bits:#b} is not a proper nonempty subset of [{}]", d + 1)));
        }
        Ok(VertexLabel { d, bits })
    }

    /// The North Pole label `[d]`.
    pub fn north(d: usize) -> Result<Self> {
        check_dim(d)?;
        Self::from_bits(d, full_mask(d - 1))
    }

    /// The South Pole label `{d+1}`.
    pub fn south(d: usize) -> Result<Self> {
        check_dim(d)?;
        Self::from_bits(d, 1 << d)
    }

    /// All proper nonempty subsets of `[d+1]`, in label order.
    pub fn all(d: usize) -> Result<Vec<Self>> {
        check_dim(d)?;
        if d > LATTICE_DIM_BOUND.max(SKELETON_DIM_BOUND) {
            return Err(Error::DimensionOverBound { d, bound: LATTICE_DIM_BOUND.max(SKELETON_DIM_BOUND) });
        }
        let mut all: Vec<Self> = (1..full_mask(d)).map(|bits| VertexLabel { d, bits }).collect();
        all.sort();
        Ok(all)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, k: usize) -> bool {
        (1..=self.d + 1).contains(&k) && self.bits >> (k - 1) & 1 == 1
    }

    pub fn elements(&self) -> Vec<usize> {
        elements_of(self.bits)
    }

    pub fn is_subset_of(&self, other: &VertexLabel) -> bool {
        self.bits & !other.bits == 0
    }

    /// `[d+1] \ W`; an involution reversing the face order.
    pub fn antipode(&self) -> VertexLabel {
        VertexLabel { d: self.d, bits: full_mask(self.d) & !self.bits }
    }
}

impl Ord for VertexLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.d.cmp(&other.d).then(self.len().cmp(&other.len())).then_with(|| self.elements().cmp(&other.elements()))
    }
}

impl PartialOrd for VertexLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(ToString::to_string).collect();
        if self.d < 9 {
            f.write_str(&parts.concat())
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

impl Serialize for VertexLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements().serialize(s)
    }
}

/// A face `[X, Y]` with `∅ ≠ X ⊆ Y ⊊ [d+1]`: the vertices `U` with
/// `X ⊆ U ⊆ Y`. Its dimension is `|Y| - |X|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceInterval {
    d: usize,
    bottom: u64,
    top: u64,
}

impl FaceInterval {
    pub fn new(bottom: VertexLabel, top: VertexLabel) -> Result<Self> {
        if bottom.d != top.d {
            return Err(Error::InvalidFace("labels of different dimension".into()));
        }
        Self::from_bits(bottom.d, bottom.bits, top.bits)
    }

    pub fn from_bits(d: usize, bottom: u64, top: u64) -> Result<Self> {
        VertexLabel::from_bits(d, bottom)?;
        VertexLabel::from_bits(d, top)?;
        if bottom & !top != 0 {
            return Err(Error::InvalidFace(format!("{bottom:#b} is not contained in {top:#b}")));
        }
        Ok(FaceInterval { d, bottom, top })
    }

    /// The vertex `[W, W]`.
    pub fn vertex(w: VertexLabel) -> Self {
        FaceInterval { d: w.d, bottom: w.bits, top: w.bits }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        (self.top.count_ones() - self.bottom.count_ones()) as usize
    }

    pub fn bottom(&self) -> VertexLabel {
        VertexLabel { d: self.d, bits: self.bottom }
    }

    pub fn top(&self) -> VertexLabel {
        VertexLabel { d: self.d, bits: self.top }
    }

    /// Vertices of the face, in label order.
    pub fn vertices(&self) -> Vec<VertexLabel> {
        let free = self.top & !self.bottom;
        let mut out = Vec::with_capacity(1 << self.dim());
        let mut sub = free;
        loop {
            out.push(VertexLabel { d: self.d, bits: self.bottom | sub });
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        out.sort();
        out
    }

    pub fn contains_vertex(&self, w: &VertexLabel) -> bool {
        w.d == self.d && self.bottom & !w.bits == 0 && w.bits & !self.top == 0
    }

    /// Whether `other` is a face of `self`.
    pub fn contains(&self, other: &FaceInterval) -> bool {
        self.d == other.d && self.bottom & !other.bottom == 0 && other.top & !self.top == 0
    }

    /// The antipodal face `[[d+1]\Y, [d+1]\X]`.
    pub fn antipode(&self) -> FaceInterval {
        let full = full_mask(self.d);
        FaceInterval { d: self.d, bottom: full & !self.top, top: full & !self.bottom }
    }
}

impl fmt::Display for FaceInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.bottom(), self.top())
    }
}

/// The antipodal vertex label.
pub fn antipode(w: &VertexLabel) -> VertexLabel {
    w.antipode()
}
