//! Truncated vacuum characters from the Weyl-translation sum, cross-checked
//! against directly enumerated weight-space dimensions.
//!
//! For the level family k = −n + (n−1)/q the simple vacuum module's character
//! satisfies R̂·ch = Σ_{w,γ} (−1)^{ℓ(w)} e^{w t_{qγ}(kΛ₀+ρ̂) − ρ̂}, where w
//! runs over the finite Weyl group and γ over root-lattice vectors pairing
//! non-negatively with the first and last fundamental weights.  Everything is
//! computed as a formal series graded by conformal depth (the −δ coefficient)
//! with exact integer weight multiplicities: the numerator terms are
//! enumerated completely below a depth cutoff, the affine denominator R̂ is
//! expanded as a truncated product, and the character is recovered slice by
//! slice, dividing each depth slice by the finite denominator R̄.

use crate::ideal::GeneratedIdeal;
use crate::lie::cartan_matrix;
use crate::rat::{qi, Q};
use crate::vertex::{PBWVector, SpaceCache};
use crate::weyl::{apply_perm, finite_weyl_elements, AffineWeight};
use num_traits::Signed;
use std::collections::HashMap;

/// A finite-weight slice: α-lattice coordinates → integer coefficient.
pub type WeightMap = HashMap<Vec<i64>, i64>;

fn add_at(map: &mut WeightMap, w: Vec<i64>, c: i64) {
    use std::collections::hash_map::Entry;
    match map.entry(w) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if *e.get() == 0 {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            if c != 0 {
                e.insert(c);
            }
        }
    }
}

fn height(w: &[i64]) -> i64 {
    w.iter().sum()
}

/// Order used to pick pivot terms during division: height first, then the
/// coordinate vector itself.
fn max_key(map: &WeightMap) -> Option<Vec<i64>> {
    map.keys().max_by(|a, b| height(a).cmp(&height(b)).then(a.cmp(b))).cloned()
}

/// All positive roots of sl_n in α-coordinates: α_i + ⋯ + α_j.
pub fn positive_roots(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..(n - 1) {
        for j in i..(n - 1) {
            let mut r = vec![0i64; n - 1];
            for x in r.iter_mut().take(j + 1).skip(i) {
                *x = 1;
            }
            out.push(r);
        }
    }
    out
}

/// The finite Weyl denominator R̄ = Π_{α>0} (1 − e^{−α}), fully expanded.
pub fn finite_denominator(n: usize) -> WeightMap {
    let mut out: WeightMap = HashMap::new();
    out.insert(vec![0; n - 1], 1);
    for alpha in positive_roots(n) {
        let mut next: WeightMap = HashMap::new();
        for (w, c) in &out {
            add_at(&mut next, w.clone(), *c);
            let shifted: Vec<i64> = w.iter().zip(&alpha).map(|(a, b)| a - b).collect();
            add_at(&mut next, shifted, -c);
        }
        out = next;
    }
    out
}

/// Depth slices of the affine denominator
/// R̂ = Π_{α̂ ∈ Δ̂₊} (1 − e^{−α̂})^{mult α̂} truncated at depth `max_depth`;
/// index d holds the coefficient of depth d.  Real roots α + jδ (α any
/// finite root, j ≥ 1) and the simple-multiplicity-(n−1) imaginary roots jδ
/// enter beyond the depth-0 part, which is exactly R̄.
pub fn rhat_slices(n: usize, max_depth: u32) -> Vec<WeightMap> {
    let d = max_depth as usize;
    let mut slices: Vec<WeightMap> = vec![HashMap::new(); d + 1];
    slices[0] = finite_denominator(n);
    let mut all_roots = positive_roots(n);
    let negatives: Vec<Vec<i64>> = all_roots.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    all_roots.extend(negatives);
    // multiply by (1 − x^j e^{μ}): only two terms per factor, so a single
    // descending sweep per factor keeps the truncation exact
    fn apply_factor(slices: &mut [WeightMap], j: usize, mu: &[i64]) {
        for depth in (j..slices.len()).rev() {
            let lower = slices[depth - j].clone();
            for (w, c) in lower {
                let shifted: Vec<i64> = w.iter().zip(mu).map(|(a, b)| a + b).collect();
                add_at(&mut slices[depth], shifted, -c);
            }
        }
    }
    let zero_mu = vec![0i64; n - 1];
    for j in 1..=d {
        for _ in 0..(n - 1) {
            apply_factor(&mut slices, j, &zero_mu);
        }
        for alpha in &all_roots {
            let mu: Vec<i64> = alpha.iter().map(|x| -x).collect();
            apply_factor(&mut slices, j, &mu);
        }
    }
    slices
}

/// One signed exponential of the closed character sum.
#[derive(Clone, Debug)]
pub struct NumeratorTerm {
    pub sign: i64,
    pub depth: u32,
    /// finite weight in α-coordinates
    pub weight: Vec<i64>,
    /// the lattice vector γ of the translation t_{qγ}
    pub gamma: Vec<i64>,
    /// inversion count of the finite Weyl element
    pub inversions: u32,
}

/// Enumerates every (w, γ) pair whose exponential w t_{qγ}(kΛ₀+ρ̂) − ρ̂ has
/// depth ≤ `max_depth`, where γ ranges over root-lattice vectors with first
/// and last coordinates non-negative.
///
/// Completeness of the finite box: writing ht(γ) = Σcᵢ, the translation
/// formula puts the term at depth d(γ) = q·ht(γ) + ½(n−1)q(γ|γ), independent
/// of w.  The quadratic form telescopes as (γ|γ) = c₁² + Σ(cᵢ−cᵢ₊₁)² +
/// c_{n−1}², the squared increments of a 0 → c₁ → ⋯ → c_{n−1} → 0 walk, so
/// if M = max|cᵢ| is attained at step j then (γ|γ) ≥ M²(1/j + 1/(n−j)) ≥
/// 4M²/n.  With B = max(n, max_depth+1) any γ having M ≥ B satisfies
/// d(γ) ≥ q(n−1)M(2M/n − 1) ≥ q(n−1)M ≥ B > max_depth, so coordinates can
/// be clipped to |cᵢ| ≤ B; both ingredient inequalities are re-checked
/// numerically for every enumerated γ.
pub fn numerator_terms(k: &Q, q: u32, n: usize, max_depth: u32) -> Vec<NumeratorTerm> {
    let expected = qi(-(n as i64)) + qi(n as i64 - 1) / qi(q as i64);
    assert_eq!(*k, expected, "level must be -n + (n-1)/q for this q");
    let rho = AffineWeight::rho_hat(n);
    let base = AffineWeight::k_lambda0(n, k).add(&rho);
    let weyl = finite_weyl_elements(n);
    let b = (n as i64).max(max_depth as i64 + 1);

    let mut coords = vec![0i64; n - 1];
    let mut out = Vec::new();
    enumerate_box(&mut coords, 0, n, b, &mut |c: &[i64]| {
        let gamma = AffineWeight::from_alpha(n, &c.iter().map(|&x| qi(x)).collect::<Vec<_>>());
        let translated = base.translate(&gamma.scale(&qi(q as i64)));
        let depth_q = -translated.c[1].clone();
        // d(γ) = q·ht + ½(n−1)q(γ|γ), and the two box-bound ingredients
        let ht = qi(height(c));
        let gg = gamma.pair(&gamma);
        let d_closed = (ht.clone() + gg.clone() * qi(n as i64 - 1) / qi(2)) * qi(q as i64);
        assert_eq!(depth_q, d_closed, "translation depth disagrees with the closed form");
        assert!(depth_q >= ht * qi(q as i64), "depth must dominate q·height");
        let m = c.iter().map(|x| x.abs()).max().unwrap_or(0);
        assert!(gg * qi(n as i64) >= qi(4 * m * m), "quadratic growth bound violated");
        if depth_q > qi(max_depth as i64) {
            return;
        }
        assert!(m < b, "a boundary lattice vector reached the depth window");
        let d = rat_to_i64(&depth_q) as u32;
        for (perm, inversions) in &weyl {
            let term = apply_perm(perm, &translated).sub(&rho);
            assert_eq!(term.c[0], *k);
            assert_eq!(-term.c[1].clone(), depth_q);
            let weight: Vec<i64> = term.alpha_part().iter().map(rat_to_i64).collect();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            out.push(NumeratorTerm {
                sign,
                depth: d,
                weight,
                gamma: c.to_vec(),
                inversions: *inversions,
            });
        }
    });
    out
}

fn rat_to_i64(x: &Q) -> i64 {
    use num_traits::ToPrimitive;
    assert!(x.is_integer(), "expected an integer lattice coordinate, got {}", x);
    x.numer().to_i64().expect("coordinate out of range")
}

/// Walks c over the box: 0 ≤ c₁, 0 ≤ c_{n−1}, |cᵢ| ≤ b.
fn enumerate_box(coords: &mut Vec<i64>, idx: usize, n: usize, b: i64, f: &mut impl FnMut(&[i64])) {
    if idx == coords.len() {
        f(coords);
        return;
    }
    let lo = if idx == 0 || idx == n - 2 { 0 } else { -b };
    for v in lo..=b {
        coords[idx] = v;
        enumerate_box(coords, idx + 1, n, b, f);
    }
    coords[idx] = 0;
}

/// Exact division of one weight slice by the finite denominator; panics if
/// the division does not terminate exactly.
fn divide_by_denominator(p: &WeightMap, rbar: &WeightMap) -> WeightMap {
    let mut rem = p.clone();
    let mut out: WeightMap = HashMap::new();
    let mut budget = 2_000_000u64;
    while let Some(w) = max_key(&rem) {
        let c = rem[&w];
        add_at(&mut out, w.clone(), c);
        for (nu, r) in rbar {
            let shifted: Vec<i64> = w.iter().zip(nu).map(|(a, b)| a + b).collect();
            add_at(&mut rem, shifted, -c * r);
        }
        budget -= 1;
        assert!(budget > 0, "weight-slice division does not terminate");
    }
    out
}

fn convolve(a: &WeightMap, b: &WeightMap) -> WeightMap {
    let mut out: WeightMap = HashMap::new();
    for (w1, c1) in a {
        for (w2, c2) in b {
            let sum: Vec<i64> = w1.iter().zip(w2).map(|(x, y)| x + y).collect();
            add_at(&mut out, sum, c1 * c2);
        }
    }
    out
}

/// Weight multiplicities of a module graded by conformal depth; index d of
/// `slices` holds the depth-d weight multiplicities.
pub struct CharacterTable {
    pub n: usize,
    pub k: Q,
    pub depth: u32,
    pub slices: Vec<WeightMap>,
}

impl CharacterTable {
    pub fn entry(&self, d: u32, weight: &[i64]) -> i64 {
        self.slices
            .get(d as usize)
            .and_then(|s| s.get(weight).copied())
            .unwrap_or(0)
    }

    /// All rows (depth, weight, multiplicity) in a canonical order.
    pub fn rows(&self) -> Vec<(u32, Vec<i64>, i64)> {
        let mut out = Vec::new();
        for (d, slice) in self.slices.iter().enumerate() {
            let mut keys: Vec<_> = slice.keys().cloned().collect();
            keys.sort();
            for w in keys {
                out.push((d as u32, w.clone(), slice[&w]));
            }
        }
        out
    }
}

/// The simple vacuum character at level k = −n + (n−1)/q, truncated at
/// `max_depth`, via the closed numerator sum divided by R̂.
pub fn character_table(k: &Q, n: usize, max_depth: u32) -> CharacterTable {
    let ell = k.clone() + qi(n as i64);
    let q_rat = qi(n as i64 - 1) / ell;
    assert!(
        q_rat.is_integer() && q_rat.is_positive(),
        "level out of scope: need k = -n + (n-1)/q with integer q ≥ 1"
    );
    let q = rat_to_i64(&q_rat) as u32;

    let d = max_depth as usize;
    let mut numerator: Vec<WeightMap> = vec![HashMap::new(); d + 1];
    for t in numerator_terms(k, q, n, max_depth) {
        add_at(&mut numerator[t.depth as usize], t.weight, t.sign);
    }
    let rhat = rhat_slices(n, max_depth);
    let rbar = &rhat[0];

    let mut slices: Vec<WeightMap> = Vec::with_capacity(d + 1);
    for depth in 0..=d {
        let mut p = numerator[depth].clone();
        for j in 1..=depth {
            for (w, c) in convolve(&rhat[j], &slices[depth - j]) {
                add_at(&mut p, w, -c);
            }
        }
        let slice = divide_by_denominator(&p, rbar);
        assert!(
            slice.values().all(|&c| c >= 0),
            "negative multiplicity at depth {}: the truncated division is inconsistent",
            depth
        );
        slices.push(slice);
    }
    assert_eq!(slices[0].get(vec![0; n - 1].as_slice()), Some(&1), "vacuum entry must be 1");
    assert_eq!(slices[0].len(), 1, "depth 0 carries only the vacuum");
    CharacterTable { n, k: k.clone(), depth: max_depth, slices }
}

/// The character of the unconstrained vacuum module, by direct enumeration
/// of normal-ordered monomials; independent of the closed formula.
pub fn vk_table(k: &Q, n: usize, max_depth: u32) -> CharacterTable {
    let mut cache = SpaceCache::new(n);
    let mut slices = Vec::with_capacity(max_depth as usize + 1);
    for d in 0..=max_depth {
        let mut slice: WeightMap = HashMap::new();
        for w in cache.weights_at(d) {
            let dim = cache.basis(d, &w).len();
            if dim > 0 {
                slice.insert(w, dim as i64);
            }
        }
        slices.push(slice);
    }
    CharacterTable { n, k: k.clone(), depth: max_depth, slices }
}

/// The character of the quotient by the ideal generated from `gens`, by
/// exact quotient dimensions per weight space.
pub fn brute_force_character(k: &Q, n: usize, gens: &[PBWVector], max_depth: u32) -> CharacterTable {
    let mut ideal = GeneratedIdeal::new(n, k.clone(), gens);
    let mut slices = Vec::with_capacity(max_depth as usize + 1);
    for d in 0..=max_depth {
        let mut slice: WeightMap = HashMap::new();
        for w in ideal.weights_at(d) {
            let dim = ideal.quotient_dim(d, &w);
            if dim > 0 {
                slice.insert(w, dim as i64);
            }
        }
        slices.push(slice);
    }
    CharacterTable { n, k: k.clone(), depth: max_depth, slices }
}

/// Dominance in fundamental-weight coordinates: all Cartan pairings ≥ 0.
fn is_dominant(n: usize, w: &[i64]) -> bool {
    let a = cartan_matrix(n);
    (0..n - 1).all(|i| {
        let pairing: Q = (0..n - 1).map(|j| a.rows[i][j].clone() * qi(w[j])).sum();
        !pairing.is_negative()
    })
}

/// Weight multiplicities of the finite irreducible with the given dominant
/// root-lattice highest weight, from the alternating Weyl sum divided by R̄.
pub fn finite_character(n: usize, highest: &[i64]) -> WeightMap {
    assert!(is_dominant(n, highest), "highest weight must be dominant");
    let rho = AffineWeight::rho_hat(n);
    let lam: Vec<Q> = highest.iter().map(|&x| qi(x)).collect();
    let shifted = AffineWeight::from_alpha(n, &lam).add(&rho);
    let mut numerator: WeightMap = HashMap::new();
    for (perm, inversions) in finite_weyl_elements(n) {
        let term = apply_perm(&perm, &shifted).sub(&rho);
        let w: Vec<i64> = term.alpha_part().iter().map(rat_to_i64).collect();
        add_at(&mut numerator, w, if inversions % 2 == 0 { 1 } else { -1 });
    }
    let ch = divide_by_denominator(&numerator, &finite_denominator(n));
    assert!(ch.values().all(|&c| c > 0));
    ch
}

/// One depth's worth of difference between two tables, expressed in the
/// basis of finite irreducible characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffEntry {
    pub depth: u32,
    /// highest weight of the irreducible constituent, α-coordinates
    pub highest_weight: Vec<i64>,
    pub multiplicity: i64,
}

/// Compares two tables over their shared depth window.  The per-depth
/// difference (second minus first) is decomposed against finite irreducible
/// characters by repeatedly stripping the extremal weight; an empty result
/// means the tables agree everywhere they overlap.
pub fn compare(a: &CharacterTable, b: &CharacterTable) -> Vec<DiffEntry> {
    assert_eq!(a.n, b.n, "table rank mismatch");
    let n = a.n;
    let shared = a.depth.min(b.depth);
    let mut out = Vec::new();
    for d in 0..=shared {
        let mut diff: WeightMap = b.slices[d as usize].clone();
        for (w, c) in &a.slices[d as usize] {
            add_at(&mut diff, w.clone(), -c);
        }
        while let Some(w) = max_key(&diff) {
            let c = diff[&w];
            assert!(
                is_dominant(n, &w),
                "difference at depth {} is not a virtual finite character",
                d
            );
            for (nu, m) in finite_character(n, &w) {
                add_at(&mut diff, nu, -c * m);
            }
            out.push(DiffEntry { depth: d, highest_weight: w, multiplicity: c });
        }
    }
    out
}
