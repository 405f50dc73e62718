//! Labeled bicolored combinatorial maps: pairs of permutations on edge labels
//! whose cycles are the white and black vertices, with faces the cycles of
//! their product and genus given by the Euler relation.

mod unfolded;

pub use unfolded::UnfoldedMap;

use serde::{Deserialize, Serialize};

use crate::combinat::{all_permutations, NCPartition, Permutation};
use crate::{Error, Result};

/// Union-find over `0..n`.
#[derive(Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    pub fn component_count(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&x| self.find(x) == x)
            .count()
    }
}

/// A connected labeled bicolored combinatorial map `(σ∘, σ•)` on edges
/// `{0, .., p-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BicoloredMap {
    white: Permutation,
    black: Permutation,
}

impl BicoloredMap {
    /// Builds a map, checking that the generated group acts transitively on
    /// the edges (connectedness).
    pub fn new(white: Permutation, black: Permutation) -> Result<Self> {
        if white.len() != black.len() {
            return Err(Error::InvalidPermutation(
                "white and black permutations act on different edge sets".into(),
            ));
        }
        let map = BicoloredMap { white, black };
        if !map.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(map)
    }

    fn is_connected(&self) -> bool {
        let p = self.edge_count();
        if p == 0 {
            return false;
        }
        let mut uf = UnionFind::new(p);
        for i in 0..p {
            uf.union(i, self.white.image(i));
            uf.union(i, self.black.image(i));
        }
        uf.component_count() == 1
    }

    pub fn edge_count(&self) -> usize {
        self.white.len()
    }

    pub fn white(&self) -> &Permutation {
        &self.white
    }

    pub fn black(&self) -> &Permutation {
        &self.black
    }

    pub fn white_vertex_count(&self) -> usize {
        self.white.cycle_count()
    }

    pub fn black_vertex_count(&self) -> usize {
        self.black.cycle_count()
    }

    pub fn vertex_count(&self) -> usize {
        self.white_vertex_count() + self.black_vertex_count()
    }

    /// Faces are the cycles of `σ• ∘ σ∘`.
    pub fn face_count(&self) -> usize {
        self.black.compose(&self.white).cycle_count()
    }

    /// Independent face counter: wires the `2p` box legs of the trace diagram
    /// (initial wiring by `σ•`, Wick wiring by `σ∘`) and counts loops with
    /// union-find instead of multiplying permutations.
    pub fn face_count_loop_oracle(&self) -> usize {
        let p = self.edge_count();
        let mut uf = UnionFind::new(2 * p);
        for a in 0..p {
            // X-box leg a <-> X̄-box leg σ•(a)
            uf.union(a, p + self.black.image(a));
            // X̄-box leg a <-> X-box leg σ∘(a)
            uf.union(p + a, self.white.image(a));
        }
        uf.component_count()
    }

    /// Genus from `V + F - p = 2 - 2g`.
    pub fn genus(&self) -> usize {
        let euler =
            self.vertex_count() as i64 + self.face_count() as i64 - self.edge_count() as i64;
        let two_g = 2 - euler;
        debug_assert!(two_g >= 0 && two_g % 2 == 0, "Euler relation violated");
        (two_g / 2) as usize
    }
}

/// A map with a single black vertex given by the full cycle `γ`; encodes a
/// trace of `p` matrices. Always connected.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneBlackVertexMap {
    white: Permutation,
}

impl OneBlackVertexMap {
    pub fn new(white: Permutation) -> Self {
        OneBlackVertexMap { white }
    }

    pub fn edge_count(&self) -> usize {
        self.white.len()
    }

    pub fn white(&self) -> &Permutation {
        &self.white
    }

    pub fn black(&self) -> Permutation {
        Permutation::full_cycle(self.edge_count())
    }

    pub fn as_bicolored(&self) -> BicoloredMap {
        BicoloredMap::new(self.white.clone(), self.black())
            .expect("one-black-vertex maps are connected")
    }

    pub fn vertex_count(&self) -> usize {
        self.white.cycle_count() + 1
    }

    pub fn face_count(&self) -> usize {
        self.black().compose(&self.white).cycle_count()
    }

    pub fn genus(&self) -> usize {
        self.as_bicolored().genus()
    }

    pub fn is_planar(&self) -> bool {
        self.genus() == 0
    }

    /// The non-crossing partition encoded by a planar map: white-vertex cycles
    /// as blocks.
    pub fn nc_partition(&self) -> Result<NCPartition> {
        NCPartition::from_geodesic(&self.white)
    }

    pub fn from_nc(nc: &NCPartition) -> Self {
        OneBlackVertexMap {
            white: nc.geodesic_permutation(),
        }
    }

    /// Interleaves two maps around their (merged) black vertex: edge `i` of
    /// `self` lands at `2i`, followed by edge `i` of `other` at `2i + 1`.
    /// White vertices are the disjoint union.
    pub fn gluing_convolution(&self, other: &OneBlackVertexMap) -> Result<OneBlackVertexMap> {
        let p = self.edge_count();
        if other.edge_count() != p {
            return Err(Error::InvalidPermutation(
                "gluing convolution needs equal edge counts".into(),
            ));
        }
        let mut images = vec![0usize; 2 * p];
        for i in 0..p {
            images[2 * i] = 2 * self.white.image(i);
            images[2 * i + 1] = 2 * other.white.image(i) + 1;
        }
        Ok(OneBlackVertexMap {
            white: Permutation::from_images(images).expect("interleaving preserves bijectivity"),
        })
    }

    /// Tutte dual: a white vertex in each face, joined to the black corners of
    /// that face. Genus-preserving; on planar maps it matches Kreweras
    /// complementation of the encoded partition. As a permutation,
    /// `σ∘ -> γ⁻¹ ∘ σ∘⁻¹`.
    pub fn tutte_dual(&self) -> OneBlackVertexMap {
        let gamma_inv = self.black().inverse();
        OneBlackVertexMap {
            white: gamma_inv.compose(&self.white.inverse()),
        }
    }
}

/// JSON-facing record for map dump/load.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapRecord {
    pub p: usize,
    pub sigma_white: Vec<usize>,
    pub sigma_black: Vec<usize>,
}

impl From<&OneBlackVertexMap> for MapRecord {
    fn from(m: &OneBlackVertexMap) -> Self {
        MapRecord {
            p: m.edge_count(),
            sigma_white: m.white().images().to_vec(),
            sigma_black: m.black().images().to_vec(),
        }
    }
}

impl MapRecord {
    pub fn to_bicolored(&self) -> Result<BicoloredMap> {
        if self.sigma_white.len() != self.p || self.sigma_black.len() != self.p {
            return Err(Error::InvalidPermutation(
                "record length disagrees with p".into(),
            ));
        }
        BicoloredMap::new(
            Permutation::from_images(self.sigma_white.clone())?,
            Permutation::from_images(self.sigma_black.clone())?,
        )
    }
}

/// All maps in `M_p` (white permutation ranging over `S_p`), optionally
/// filtered by genus. With `genus_filter == Some(0)` the count is Catalan(p).
pub fn enumerate_maps(p: usize, genus_filter: Option<usize>) -> Result<Vec<OneBlackVertexMap>> {
    let maps = all_permutations(p)?
        .into_iter()
        .map(OneBlackVertexMap::new)
        .filter(|m| genus_filter.is_none_or(|g| m.genus() == g))
        .collect();
    Ok(maps)
}
