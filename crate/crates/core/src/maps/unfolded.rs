use super::UnionFind;
use crate::combinat::Permutation;
use crate::moments::MarginalWord;

/// The unfolded map of a Wick permutation `α` and a marginal word: one edge
/// per pair `(a, i)` with `i ∈ J_a`, black vertices the cycles of
/// `Γ(a, i) = (a+1, σ_a(i))`, white vertices obtained by locally duplicating
/// each white vertex of the base map `(γ, α)` per moving color.
///
/// Possibly disconnected; faces of this map count the moving-color loops of
/// the trace diagram.
#[derive(Clone, Debug)]
pub struct UnfoldedMap {
    edges: Vec<(usize, usize)>,
    gamma_unfolded: Permutation,
    alpha_unfolded: Permutation,
    /// Number of white vertices of the base map `(γ, α)`.
    base_white_count: usize,
    /// Per-edge moving color count `k`.
    k: usize,
    /// Total number of moving colors across the word.
    moving_count: usize,
}

impl UnfoldedMap {
    pub fn build(word: &MarginalWord, alpha: &Permutation) -> Self {
        let p = word.len();
        assert_eq!(
            alpha.len(),
            p,
            "Wick permutation must act on the word positions"
        );

        let mut edges: Vec<(usize, usize)> = Vec::new();
        for a in 0..p {
            for &i in word.jset(a) {
                edges.push((a, i));
            }
        }
        let index_of = |a: usize, i: usize| -> usize {
            edges
                .binary_search(&(a, i))
                .expect("colored edge must exist")
        };

        let mut gamma_images = vec![0usize; edges.len()];
        let mut alpha_images = vec![0usize; edges.len()];
        for (idx, &(a, i)) in edges.iter().enumerate() {
            let twisted = word
                .sigma_color(a, i)
                .expect("moving color belongs to its kept set");
            gamma_images[idx] = index_of((a + 1) % p, twisted);

            // First position after `a` along the cycle of α whose kept set
            // still carries the color `i`.
            let mut b = alpha.image(a);
            while !word.jset(b).contains(&i) {
                b = alpha.image(b);
            }
            alpha_images[idx] = index_of(b, i);
        }

        UnfoldedMap {
            edges,
            gamma_unfolded: Permutation::from_images(gamma_images)
                .expect("Γ permutes the colored edges"),
            alpha_unfolded: Permutation::from_images(alpha_images)
                .expect("unfolding permutes the colored edges"),
            base_white_count: alpha.cycle_count(),
            k: word.k(),
            moving_count: word.moving_colors().len(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn gamma_unfolded(&self) -> &Permutation {
        &self.gamma_unfolded
    }

    pub fn alpha_unfolded(&self) -> &Permutation {
        &self.alpha_unfolded
    }

    /// Black vertex count `V•`, independent of `α`.
    pub fn black_vertex_count(&self) -> usize {
        if self.edges.is_empty() {
            0
        } else {
            self.gamma_unfolded.cycle_count()
        }
    }

    pub fn white_vertex_count(&self) -> usize {
        if self.edges.is_empty() {
            0
        } else {
            self.alpha_unfolded.cycle_count()
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.black_vertex_count() + self.white_vertex_count()
    }

    pub fn face_count(&self) -> usize {
        if self.edges.is_empty() {
            0
        } else {
            self.gamma_unfolded
                .compose(&self.alpha_unfolded)
                .cycle_count()
        }
    }

    /// Number of connected components `K`.
    pub fn component_count(&self) -> usize {
        if self.edges.is_empty() {
            return 0;
        }
        let mut uf = UnionFind::new(self.edges.len());
        for idx in 0..self.edges.len() {
            uf.union(idx, self.gamma_unfolded.image(idx));
            uf.union(idx, self.alpha_unfolded.image(idx));
        }
        uf.component_count()
    }

    /// Total genus over components, from `2K - 2g = F - kp + V`.
    pub fn genus(&self) -> usize {
        if self.edges.is_empty() {
            return 0;
        }
        let euler =
            self.face_count() as i64 - self.edge_count() as i64 + self.vertex_count() as i64;
        let two_g = 2 * self.component_count() as i64 - euler;
        debug_assert!(two_g >= 0 && two_g % 2 == 0, "Euler relation violated");
        (two_g / 2) as usize
    }

    /// White-vertex duplication excess
    /// `Δ = V(unfolded) - V• - k (V(base) - 1)`; zero iff every white vertex
    /// of the base map sees a single kept color set.
    pub fn delta(&self) -> usize {
        self.white_vertex_count() - self.k * self.base_white_count
    }

    /// Black-vertex/component deficit `Σ = V• - K`.
    pub fn sigma_deficit(&self) -> usize {
        self.black_vertex_count() - self.component_count()
    }

    /// `L̃ = 2 (g + Δ + Σ)`.
    pub fn tilde_l(&self) -> usize {
        2 * (self.genus() + self.delta() + self.sigma_deficit())
    }

    /// Moving-color loop exponent
    /// `L = F + (r-l-1)(V(base) - 1) - (V(unfolded) - V•)`.
    pub fn l_exponent(&self) -> usize {
        self.face_count() + self.moving_count * self.base_white_count - self.white_vertex_count()
    }
}
