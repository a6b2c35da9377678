//! The Sugawara energy operator L₀ and the central charge.
//!
//! On the vacuum module the zero mode of the Sugawara field reduces to the
//! truncated normal-ordered sum
//!
//! ```text
//! L₀ = 1/(2(k+h∨)) · Σ_i [ x_i(0)xⁱ(0) + 2 Σ_{m=1..d} x_i(−m)xⁱ(m) ]
//! ```
//!
//! over dual basis pairs (x_i, xⁱ); modes beyond the depth d of the target
//! vector annihilate it, so the truncation is exact.  On a depth-d
//! homogeneous vector L₀ acts as multiplication by d, which is what the tests
//! pin down.  The construction requires the non-critical condition k ≠ −h∨.

use crate::lie::{dual_basis, LieElement};
use crate::rat::{qi, Q};
use crate::vertex::{PBWVector, Straightener};
use num_traits::Zero;

/// x(m)·v for a general Lie algebra element x (extends the generator action
/// linearly).
pub fn apply_element(st: &mut Straightener, x: &LieElement, m: i32, v: &PBWVector) -> PBWVector {
    let mut out = PBWVector::zero(v.n, v.k.clone());
    for (b, c) in &x.coeffs {
        let img = st.apply(*b, m, v);
        out.add_scaled_assign(&img, c);
    }
    out
}

/// L₀·v via the truncated Sugawara sum.  Panics at the critical level
/// k = −n, where the conformal vector does not exist.
pub fn sugawara_l0(st: &mut Straightener, v: &PBWVector) -> PBWVector {
    let n = v.n;
    let k = v.k.clone();
    assert!(
        k != qi(-(n as i64)),
        "critical level k = -{n}: no Sugawara conformal vector"
    );
    let dmax = v.terms().map(|(m, _)| m.depth()).max().unwrap_or(0);
    let pairs = dual_basis(n);
    let mut sum = PBWVector::zero(n, k.clone());
    for (x, xd) in &pairs {
        let inner = apply_element(st, xd, 0, v);
        let outer = apply_element(st, x, 0, &inner);
        sum.add_scaled_assign(&outer, &qi(1));
        for m in 1..=dmax as i32 {
            let inner = apply_element(st, xd, m, v);
            if inner.is_zero() {
                continue;
            }
            let outer = apply_element(st, x, -m, &inner);
            sum.add_scaled_assign(&outer, &qi(2));
        }
    }
    let denom = (k + qi(n as i64)) * qi(2);
    sum.scale(&(qi(1) / denom))
}

/// c(k) = k·dim(sl_n)/(k+h∨) with h∨ = n.  Panics at the critical level.
pub fn central_charge(k: &Q, n: usize) -> Q {
    let denom = k.clone() + qi(n as i64);
    assert!(!denom.is_zero(), "critical level k = -{n}: central charge undefined");
    k.clone() * qi((n * n - 1) as i64) / denom
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{basis, BasisElement};
    use crate::rat::qr;
    use crate::vertex::from_modes;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn central_charge_values() {
        assert_eq!(central_charge(&qi(-1), 3), qi(-4));
        // k = −7/3: (−7/3)·8 / (2/3) = −28
        assert_eq!(central_charge(&qr(-7, 3), 3), qi(-28));
        // k = 1, n = 2: 3/3 = 1 (free-fermion value)
        assert_eq!(central_charge(&qi(1), 2), qi(1));
    }

    #[test]
    #[should_panic(expected = "critical level")]
    fn critical_level_rejected() {
        central_charge(&qi(-3), 3);
    }

    #[test]
    fn vacuum_has_zero_energy() {
        let k = qi(-1);
        let mut st = Straightener::new(3, k.clone());
        let vac = PBWVector::vacuum(3, k);
        assert!(sugawara_l0(&mut st, &vac).is_zero());
    }

    #[test]
    fn eigenvalue_is_depth_on_small_states() {
        let k = qi(-1);
        let mut st = Straightener::new(3, k.clone());
        let v = from_modes(3, k.clone(), &[(BasisElement::E(1, 3), -2)]);
        assert_eq!(sugawara_l0(&mut st, &v), v.scale(&qi(2)));
        let w = from_modes(
            3,
            k.clone(),
            &[(BasisElement::F(1, 2), -1), (BasisElement::H(2), -3)],
        );
        assert_eq!(sugawara_l0(&mut st, &w), w.scale(&qi(4)));
    }

    #[test]
    fn eigenvalue_is_depth_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in [qi(-1), qr(-7, 3)] {
            let n = 3;
            let gens = basis(n);
            let mut st = Straightener::new(n, k.clone());
            for _ in 0..10 {
                let len = rng.gen_range(1..4);
                let word: Vec<(BasisElement, i32)> = (0..len)
                    .map(|_| {
                        let g = gens[rng.gen_range(0..gens.len())];
                        (g, -(rng.gen_range(1..=2) as i32))
                    })
                    .collect();
                let v = from_modes(n, k.clone(), &word);
                if v.is_zero() {
                    continue;
                }
                let d = v.depth().expect("mode words are homogeneous");
                assert_eq!(sugawara_l0(&mut st, &v), v.scale(&qi(d as i64)));
            }
        }
    }
}
