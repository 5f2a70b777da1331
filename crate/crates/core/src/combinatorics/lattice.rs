use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::fvector::{isocanted_count, FVector};
use super::{full_mask, FaceInterval};
use crate::error::{Error, Result};
use crate::rational::{factorial, pow2, Rational};

/// Largest `d` for which the full lattice is materialised.
pub const LATTICE_DIM_BOUND: usize = 8;

/// Proper faces grouped by dimension `0..d-1`, each group sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    d: usize,
    by_dim: Vec<Vec<FaceInterval>>,
}

fn check_lattice_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { d, min: 2 });
    }
    if d > LATTICE_DIM_BOUND {
        return Err(Error::DimensionOverBound { d, bound: LATTICE_DIM_BOUND });
    }
    Ok(())
}

pub fn build_face_lattice(d: usize) -> Result<FaceLattice> {
    check_lattice_dim(d)?;
    let full = full_mask(d);
    let mut by_dim: Vec<Vec<FaceInterval>> = (0..d)
        .into_par_iter()
        .map(|k| {
            let mut faces = Vec::new();
            for top in 1..full {
                let free_size = top.count_ones() as usize;
                if free_size <= k {
                    continue;
                }
                // bottoms: nonempty submasks of top with |top| - |bottom| = k
                let mut sub = top;
                while sub != 0 {
                    if free_size - sub.count_ones() as usize == k {
                        faces.push(FaceInterval { d, bottom: sub, top });
                    }
                    sub = (sub - 1) & top;
                }
            }
            faces.sort();
            faces
        })
        .collect();
    by_dim.shrink_to_fit();
    Ok(FaceLattice { d, by_dim })
}

impl FaceLattice {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn faces(&self, dim: usize) -> &[FaceInterval] {
        self.by_dim.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn facets(&self) -> &[FaceInterval] {
        self.faces(self.d - 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = &FaceInterval> {
        self.by_dim.iter().flatten()
    }

    pub fn counts(&self) -> FVector {
        FVector::new(self.by_dim.iter().map(|g| BigUint::from(g.len())).collect())
    }

    /// Faces of dimension `k - 1` contained in `face`, found by scanning the
    /// lower group with the containment test.
    pub fn covered_by(&self, face: &FaceInterval) -> Vec<FaceInterval> {
        let k = face.dim();
        if k == 0 {
            return Vec::new();
        }
        self.faces(k - 1).iter().filter(|g| face.contains(g)).copied().collect()
    }
}

/// Number of chains `vertex ⊂ edge ⊂ ... ⊂ facet` in the lattice. Each layer
/// is linked to the one below by pairwise containment, without using the
/// interval structure.
pub fn maximal_chain_count(lattice: &FaceLattice) -> BigUint {
    let mut ways: Vec<BigUint> = vec![BigUint::one(); lattice.faces(0).len()];
    for k in 1..lattice.d {
        let lower = lattice.faces(k - 1);
        ways = lattice
            .faces(k)
            .par_iter()
            .map(|f| lower.iter().zip(&ways).filter(|(g, _)| f.contains(g)).map(|(_, w)| w).sum())
            .collect();
    }
    ways.iter().sum()
}

/// `(d+1)(d-1)!(2^{d+1} - 4)`, the closed flag formula under test.
pub fn flag_formula(d: usize) -> Result<BigUint> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { d, min: 2 });
    }
    Ok(BigUint::from(d + 1) * factorial(d - 1) * (pow2(d + 1) - 4u32))
}

/// Flags counted through the facets: every facet is a (d-1)-cube, which has
/// `(d-1)! 2^{d-1}` flags of its own.
pub fn flags_from_facets(d: usize) -> Result<BigUint> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { d, min: 2 });
    }
    Ok(isocanted_count(d, d as i64 - 1) * factorial(d - 1) * pow2(d - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagCount {
    pub d: usize,
    #[serde(serialize_with = "ser_big")]
    pub formula: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub from_facets: BigUint,
    /// `None` above the lattice bound.
    #[serde(serialize_with = "ser_big_opt")]
    pub chains: Option<BigUint>,
}

impl FlagCount {
    pub fn formula_matches_chains(&self) -> Option<bool> {
        self.chains.as_ref().map(|c| *c == self.formula)
    }
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_big_opt<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

pub fn count_flags(d: usize) -> Result<FlagCount> {
    let formula = flag_formula(d)?;
    let chains = if d <= LATTICE_DIM_BOUND { Some(maximal_chain_count(&build_face_lattice(d)?)) } else { None };
    Ok(FlagCount { d, formula, from_facets: flags_from_facets(d)?, chains })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FaceRegion {
    NorthCask,
    SouthCask,
    EquatorialBelt,
}

impl FaceRegion {
    pub fn of(face: &FaceInterval) -> FaceRegion {
        let last = 1u64 << face.d;
        if face.top & last == 0 {
            FaceRegion::NorthCask
        } else if face.bottom & last != 0 {
            FaceRegion::SouthCask
        } else {
            FaceRegion::EquatorialBelt
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaskPartition {
    pub d: usize,
    pub regions: BTreeMap<FaceRegion, Vec<FaceInterval>>,
}

impl CaskPartition {
    pub fn faces(&self, region: FaceRegion) -> &[FaceInterval] {
        self.regions.get(&region).map_or(&[], Vec::as_slice)
    }

    /// Counts of the region's faces by dimension, `0..=max_dim`.
    pub fn counts(&self, region: FaceRegion, max_dim: usize) -> FVector {
        let mut counts = vec![BigUint::zero(); max_dim + 1];
        for f in self.faces(region) {
            if f.dim() <= max_dim {
                counts[f.dim()] += 1u32;
            }
        }
        FVector::new(counts)
    }

    /// Counts of a cask's faces below its top cell: dimensions `0..=d-2`.
    pub fn cask_fvector(&self, region: FaceRegion) -> FVector {
        self.counts(region, self.d - 2)
    }

    pub fn belt_facets(&self) -> Vec<FaceInterval> {
        self.faces(FaceRegion::EquatorialBelt).iter().filter(|f| f.dim() == self.d - 1).copied().collect()
    }
}

pub fn casks_and_belt(d: usize) -> Result<CaskPartition> {
    let lattice = build_face_lattice(d)?;
    let mut regions: BTreeMap<FaceRegion, Vec<FaceInterval>> = BTreeMap::new();
    for f in lattice.iter() {
        regions.entry(FaceRegion::of(f)).or_default().push(*f);
    }
    Ok(CaskPartition { d, regions })
}

/// Fatness `(f1+f2-20)/(f0+f3-10)` and the vertex-facet incidence count of
/// the isocanted 4-polytope, both recomputed from the lattice.
pub fn fatness_f03(d: usize) -> Result<(Rational, BigUint)> {
    if d != 4 {
        return Err(Error::WrongDimension { d, expected: 4 });
    }
    let lattice = build_face_lattice(4)?;
    let f: Vec<i64> = (0..4).map(|k| lattice.faces(k).len() as i64).collect();
    let fatness = Rational::new((f[1] + f[2] - 20).into(), (f[0] + f[3] - 10).into());
    let vertices = lattice.faces(0);
    let f03: usize = lattice.facets().iter().map(|facet| vertices.iter().filter(|v| facet.contains(v)).count()).sum();
    Ok((fatness, BigUint::from(f03)))
}
