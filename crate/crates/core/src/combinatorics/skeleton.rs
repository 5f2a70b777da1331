use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{check_dim, full_mask, VertexLabel};
use crate::error::{Error, Result};

/// Largest `d` for which the skeleton graph is materialised.
pub const SKELETON_DIM_BOUND: usize = 16;

/// Vertices and edges of the isocanted d-polytope: `{W, W'}` is an edge iff
/// `W ⊂ W'` with `|W'| = |W| + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonGraph {
    pub d: usize,
    pub nodes: Vec<VertexLabel>,
    /// Index pairs into `nodes`, parent first.
    pub edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adjacency: Vec<Vec<usize>>,
    #[serde(skip)]
    index: HashMap<u64, usize>,
}

pub fn skeleton(d: usize) -> Result<SkeletonGraph> {
    check_dim(d)?;
    if d > SKELETON_DIM_BOUND {
        return Err(Error::DimensionOverBound { d, bound: SKELETON_DIM_BOUND });
    }
    let nodes = VertexLabel::all(d)?;
    let index: HashMap<u64, usize> = nodes.iter().enumerate().map(|(i, w)| (w.bits(), i)).collect();
    let full = full_mask(d);
    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for (i, w) in nodes.iter().enumerate() {
        for k in 0..=d {
            let child = w.bits() | 1 << k;
            if child != w.bits() && child != full {
                let j = index[&child];
                edges.push((i, j));
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    for adj in &mut adjacency {
        adj.sort_unstable();
    }
    Ok(SkeletonGraph { d, nodes, edges, adjacency, index })
}

impl SkeletonGraph {
    pub fn index_of(&self, w: &VertexLabel) -> Option<usize> {
        if w.d() != self.d {
            return None;
        }
        self.index.get(&w.bits()).copied()
    }

    pub fn degree(&self, w: &VertexLabel) -> Option<usize> {
        self.index_of(w).map(|i| self.adjacency[i].len())
    }

    pub fn neighbours(&self, w: &VertexLabel) -> Vec<VertexLabel> {
        self.index_of(w).map_or_else(Vec::new, |i| self.adjacency[i].iter().map(|&j| self.nodes[j]).collect())
    }

    /// Breadth-first distances from `w` to every node, indexed like `nodes`.
    pub fn bfs_distances(&self, w: &VertexLabel) -> Result<Vec<usize>> {
        let start = self.index_of(w).ok_or_else(|| Error::InvalidLabel(format!("{w} is not a node")))?;
        let mut dist = vec![usize::MAX; self.nodes.len()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &j in &self.adjacency[i] {
                if dist[j] == usize::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        Ok(dist)
    }

    /// Largest BFS eccentricity over all nodes.
    pub fn diameter_bfs(&self) -> usize {
        use rayon::prelude::*;
        self.nodes
            .par_iter()
            .map(|w| self.bfs_distances(w).map_or(0, |d| d.into_iter().max().unwrap_or(0)))
            .max()
            .unwrap_or(0)
    }
}

/// Number of edges at `W`: `d` for lengths 1 and `d`, `d+1` otherwise.
pub fn valence(w: &VertexLabel) -> usize {
    let d = w.d();
    if w.len() == 1 || w.len() == d {
        d
    } else {
        d + 1
    }
}

/// Graph distance `|W \ W'| + |W' \ W|`.
pub fn distance(w: &VertexLabel, w2: &VertexLabel) -> Result<usize> {
    if w.d() != w2.d() {
        return Err(Error::InvalidLabel(format!("labels {w} and {w2} live in different dimensions")));
    }
    Ok((w.bits() ^ w2.bits()).count_ones() as usize)
}

pub fn diameter(d: usize) -> Result<usize> {
    check_dim(d)?;
    Ok(d + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon() {
        let g = skeleton(2).unwrap();
        assert_eq!(g.nodes.len(), 6);
        assert_eq!(g.edges.len(), 6);
        for w in &g.nodes {
            assert_eq!(g.degree(w), Some(2));
            assert_eq!(valence(w), 2);
        }
    }

    #[test]
    fn rhombic_dodecahedron_valences() {
        let g = skeleton(3).unwrap();
        assert_eq!(g.edges.len(), 24);
        let mut census = [0usize; 5];
        for w in &g.nodes {
            assert_eq!(g.degree(w), Some(valence(w)));
            census[valence(w)] += 1;
        }
        assert_eq!(census[3], 8);
        assert_eq!(census[4], 6);
    }

    #[test]
    fn bfs_matches_symmetric_difference() {
        for d in 2..=5 {
            let g = skeleton(d).unwrap();
            for w in &g.nodes {
                let dist = g.bfs_distances(w).unwrap();
                for (i, w2) in g.nodes.iter().enumerate() {
                    assert_eq!(dist[i], distance(w, w2).unwrap());
                }
                assert_eq!(distance(w, &w.antipode()).unwrap(), d + 1);
            }
            assert_eq!(g.diameter_bfs(), diameter(d).unwrap());
        }
    }
}
