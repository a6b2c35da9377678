//! Graded slices of the submodule generated by singular vectors.
//!
//! In the vacuum module, vertex-algebra ideals coincide with 𝔤̂-submodules,
//! and for generators that are singular a PBW rearrangement makes every
//! graded slice finitely spanned: positive modes annihilate the generators,
//! zero modes only move them around their own depth slice, and lowering
//! monomials of the complementary depth reach the target slice.  So the slice
//! at (d, μ) is spanned by { z · w } where w runs over the zero-mode closure
//! of the generators and z over the canonical lowering monomials of depth
//! d − depth(w) and weight μ − wt(w).

use crate::lie::BasisElement;
use crate::linalg::SpanBuilder;
use crate::rat::Q;
use crate::vertex::{PBWMonomial, PBWVector, SpaceCache, Straightener};
use std::collections::{HashMap, VecDeque};

/// Interns monomials as column indices and renders a vector as a sparse row.
struct ColumnTable {
    cols: HashMap<PBWMonomial, usize>,
}

impl ColumnTable {
    fn new() -> Self {
        ColumnTable { cols: HashMap::new() }
    }

    fn row_of(&mut self, v: &PBWVector) -> Vec<(usize, Q)> {
        let mut row = Vec::with_capacity(v.num_terms());
        for (m, c) in v.terms() {
            let next = self.cols.len();
            let col = *self.cols.entry(m.clone()).or_insert(next);
            row.push((col, c.clone()));
        }
        row
    }
}

/// Turns a canonical monomial into the mode word it denotes, leftmost factor
/// first; applying the word to a vector computes the product acting on it.
fn monomial_word(z: &PBWMonomial) -> Vec<(BasisElement, i32)> {
    let mut word = Vec::new();
    for (g, depth, pow) in z.factors() {
        for _ in 0..*pow {
            word.push((*g, -(*depth as i32)));
        }
    }
    word
}

/// The submodule of the vacuum module generated by a finite set of singular
/// vectors, materialized one graded slice at a time.
pub struct GeneratedIdeal {
    st: Straightener,
    cache: SpaceCache,
    closure: Vec<PBWVector>,
}

impl GeneratedIdeal {
    /// Builds the zero-mode closure of the generators up front.  Every
    /// generator must be weight-homogeneous; they need not share a depth.
    pub fn new(n: usize, k: Q, gens: &[PBWVector]) -> Self {
        let mut st = Straightener::new(n, k);
        let mut closure: Vec<PBWVector> = Vec::new();
        let mut span = SpanBuilder::new();
        let mut table = ColumnTable::new();
        let mut queue = VecDeque::new();
        for g in gens {
            assert_eq!(g.n, n, "generator rank mismatch");
            g.depth().expect("generators must be depth-homogeneous");
            g.weight().expect("generators must be weight-homogeneous");
            let row = table.row_of(g);
            if span.insert(&row) {
                closure.push(g.clone());
                queue.push_back(closure.len() - 1);
            }
        }
        // e_i(0), f_i(0) for simple i generate the zero-mode copy of 𝔤, so
        // saturating under them saturates under all zero modes.
        let mut movers = Vec::new();
        for i in 1..n as u8 {
            movers.push(BasisElement::E(i, i + 1));
            movers.push(BasisElement::F(i, i + 1));
        }
        while let Some(i) = queue.pop_front() {
            for &x in &movers {
                let v = st.apply(x, 0, &closure[i]);
                if v.is_zero() {
                    continue;
                }
                let row = table.row_of(&v);
                if span.insert(&row) {
                    closure.push(v);
                    queue.push_back(closure.len() - 1);
                }
            }
        }
        GeneratedIdeal { st, cache: SpaceCache::new(n), closure }
    }

    /// The zero-mode closure: a linearly independent list of homogeneous
    /// vectors spanning U(𝔤)·generators.
    pub fn closure(&self) -> &[PBWVector] {
        &self.closure
    }

    /// A linearly independent list spanning the (d, μ) slice of the ideal.
    pub fn slice_basis(&mut self, d: u32, weight: &[i64]) -> Vec<PBWVector> {
        let mut out = Vec::new();
        let mut span = SpanBuilder::new();
        let mut table = ColumnTable::new();
        for idx in 0..self.closure.len() {
            let w = self.closure[idx].clone();
            let d0 = w.depth().expect("closure vectors are homogeneous");
            if d0 > d {
                continue;
            }
            let mu0 = w.weight().expect("closure vectors are homogeneous");
            let nu: Vec<i64> = weight.iter().zip(&mu0).map(|(a, b)| a - b).collect();
            if d0 == d {
                if nu.iter().all(|&x| x == 0) {
                    let row = table.row_of(&w);
                    if span.insert(&row) {
                        out.push(w.clone());
                    }
                }
                continue;
            }
            for z in self.cache.basis(d - d0, &nu).iter() {
                let v = self.st.apply_word(&monomial_word(z), &w);
                if v.is_zero() {
                    continue;
                }
                let row = table.row_of(&v);
                if span.insert(&row) {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Dimension of the (d, μ) slice of the ideal.
    pub fn slice_dim(&mut self, d: u32, weight: &[i64]) -> usize {
        self.slice_basis(d, weight).len()
    }

    /// Dimension of the (d, μ) slice of the full vacuum module.
    pub fn full_dim(&mut self, d: u32, weight: &[i64]) -> usize {
        self.cache.basis(d, weight).len()
    }

    /// Dimension of the (d, μ) slice of the quotient by the ideal.
    pub fn quotient_dim(&mut self, d: u32, weight: &[i64]) -> usize {
        let full = self.full_dim(d, weight);
        let cut = self.slice_dim(d, weight);
        full - cut
    }

    /// All weights with a nonzero full slice at depth d, in canonical order.
    pub fn weights_at(&mut self, d: u32) -> Vec<Vec<i64>> {
        self.cache.weights_at(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::basis;
    use crate::rat::qi;
    use crate::singular::singular_vectors;
    use crate::vertex::from_modes;
    use BasisElement::{E, F, H};

    fn u1() -> PBWVector {
        let k = qi(-1);
        let mut v = from_modes(3, k.clone(), &[(E(1, 2), -1), (E(1, 2), -1), (E(2, 3), -1)])
            .scale(&qi(-1));
        v.add_scaled_assign(
            &from_modes(3, k.clone(), &[(E(1, 2), -1), (E(1, 3), -1), (H(2), -1)]),
            &qi(1),
        );
        v.add_scaled_assign(
            &from_modes(3, k, &[(E(1, 3), -1), (E(1, 3), -1), (F(2, 3), -1)]),
            &qi(1),
        );
        v
    }

    fn u2() -> PBWVector {
        let k = qi(-1);
        let mut v = from_modes(3, k.clone(), &[(E(1, 2), -1), (E(2, 3), -1), (E(2, 3), -1)]);
        v.add_scaled_assign(
            &from_modes(3, k.clone(), &[(E(2, 3), -1), (E(1, 3), -1), (H(1), -1)]),
            &qi(1),
        );
        v.add_scaled_assign(&from_modes(3, k.clone(), &[(E(2, 3), -1), (E(1, 3), -2)]), &qi(-2));
        v.add_scaled_assign(
            &from_modes(3, k, &[(E(1, 3), -1), (E(1, 3), -1), (F(1, 2), -1)]),
            &qi(-1),
        );
        v
    }

    #[test]
    fn ideal_vanishes_below_generator_depth() {
        let mut ideal = GeneratedIdeal::new(3, qi(-1), &[u1(), u2()]);
        for d in 0..3 {
            for w in ideal.weights_at(d) {
                assert_eq!(ideal.slice_dim(d, &w), 0);
            }
        }
    }

    #[test]
    fn generator_slice_is_one_dimensional() {
        let mut ideal = GeneratedIdeal::new(3, qi(-1), &[u1(), u2()]);
        assert_eq!(ideal.slice_dim(3, &[2, 1]), 1);
        assert_eq!(ideal.slice_dim(3, &[1, 2]), 1);
        assert_eq!(ideal.quotient_dim(3, &[2, 1]), ideal.full_dim(3, &[2, 1]) - 1);
    }

    // Zero-mode closure of the two generators: each generates the
    // 10-dimensional irreducible of highest weight 2α₁+α₂ (respectively
    // α₁+2α₂), so the closure is 20-dimensional and its per-weight dimensions
    // match the weight multiplicities of those two modules.
    #[test]
    fn zero_mode_closure_matches_the_two_adjoint_orbits() {
        let ideal = GeneratedIdeal::new(3, qi(-1), &[u1(), u2()]);
        assert_eq!(ideal.closure().len(), 20);
        let mut by_weight: HashMap<Vec<i64>, usize> = HashMap::new();
        for v in ideal.closure() {
            *by_weight.entry(v.weight().unwrap()).or_insert(0) += 1;
        }
        // weights of the highest-weight-(3,0) module in α-coordinates, all
        // multiplicity one, and their mirror images under α₁ ↔ α₂
        let first: Vec<Vec<i64>> = vec![
            vec![2, 1],
            vec![1, 1],
            vec![0, 1],
            vec![-1, 1],
            vec![1, 0],
            vec![0, 0],
            vec![-1, 0],
            vec![0, -1],
            vec![-1, -1],
            vec![-1, -2],
        ];
        let mut expected: HashMap<Vec<i64>, usize> = HashMap::new();
        for w in &first {
            *expected.entry(w.clone()).or_insert(0) += 1;
            *expected.entry(vec![w[1], w[0]]).or_insert(0) += 1;
        }
        assert_eq!(by_weight, expected);
    }

    #[test]
    fn slices_are_stable_under_all_modes() {
        let mut ideal = GeneratedIdeal::new(3, qi(-1), &[u1(), u2()]);
        let base = ideal.slice_basis(4, &[1, 1]);
        assert!(!base.is_empty());
        // reference spans for the slices reachable by one application
        let mut spans: HashMap<(u32, Vec<i64>), (SpanBuilder, ColumnTable)> = HashMap::new();
        let mut st = Straightener::new(3, qi(-1));
        for x in basis(3) {
            for m in [-1i32, 0, 1] {
                for v in &base {
                    let img = st.apply(x, m, v);
                    if img.is_zero() {
                        continue;
                    }
                    let d = img.depth().unwrap();
                    let mu = img.weight().unwrap();
                    let entry = spans.entry((d, mu.clone())).or_insert_with(|| {
                        let mut span = SpanBuilder::new();
                        let mut table = ColumnTable::new();
                        for b in ideal.slice_basis(d, &mu) {
                            let row = table.row_of(&b);
                            span.insert(&row);
                        }
                        (span, table)
                    });
                    let row = entry.1.row_of(&img);
                    assert!(entry.0.contains(&row), "left the ideal at ({d}, {mu:?})");
                }
            }
        }
    }

    #[test]
    fn rank_four_generator_cuts_one_dimension() {
        let k = qi(-1);
        let sols = singular_vectors(4, &k, 2, &[1, 2, 1]);
        assert_eq!(sols.len(), 1);
        let mut ideal = GeneratedIdeal::new(4, k, &sols);
        assert_eq!(ideal.slice_dim(2, &[1, 2, 1]), 1);
        assert_eq!(ideal.quotient_dim(2, &[1, 2, 1]), ideal.full_dim(2, &[1, 2, 1]) - 1);
    }

    // Probe for the deep family: the depth-9 slice of the ideal generated by
    // the two solved singular vectors is supported exactly on the weights of
    // the two 10-dimensional adjoint orbits.  Exercised by the acceptance
    // gate; run directly with --ignored.
    #[test]
    #[ignore]
    fn deep_ideal_slice_probe() {
        let k = crate::rat::level_from_m(1);
        let v1 = singular_vectors(3, &k, 9, &[2, 1]);
        let v2 = singular_vectors(3, &k, 9, &[1, 2]);
        assert_eq!((v1.len(), v2.len()), (1, 1));
        let mut ideal = GeneratedIdeal::new(3, k, &[v1[0].clone(), v2[0].clone()]);
        assert_eq!(ideal.closure().len(), 20);
        assert_eq!(ideal.slice_dim(9, &[2, 1]), 1);
        assert_eq!(ideal.slice_dim(9, &[1, 1]), 2);
        assert_eq!(ideal.slice_dim(9, &[3, 1]), 0);
    }
}
