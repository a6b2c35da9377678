//! Affine weights, the shifted Weyl action, and translations.
//!
//! Weights live in the span of (Λ₀, δ, α₁, …, α_{n−1}) with exact rational
//! coordinates.  The pairing is fixed by (Λ₀|Λ₀) = 0, (Λ₀|δ) = 1, (δ|δ) = 0,
//! (αᵢ|Λ₀) = (αᵢ|δ) = 0 and (αᵢ|αⱼ) = Cartan matrix of A_{n−1}.  The scaling
//! direction d is deliberately omitted: nothing computed here ever pairs two
//! Λ₀-free weights against d, and the span above is closed under every
//! operation we use.
//!
//! All roots of sl_n are long, so coroots equal roots and the reflection in a
//! real root β is s_β(λ) = λ − (λ|β)β.  Group elements are stored as words in
//! reflections and translations; equality is extensional (equal linear
//! actions), because Coxeter words are not canonical.

use crate::lie;
use crate::rat::{qi, Q};
use num_traits::{One, Zero};
use std::fmt;

/// An affine weight in coordinates over (Λ₀, δ, α₁, …, α_{n−1}).
#[derive(Clone, PartialEq, Eq)]
pub struct AffineWeight {
    pub n: usize,
    /// coordinates: c[0] = Λ₀, c[1] = δ, c[2..] = α₁..α_{n−1}
    pub c: Vec<Q>,
}

impl AffineWeight {
    pub fn zero(n: usize) -> Self {
        AffineWeight { n, c: vec![Q::zero(); n + 1] }
    }

    pub fn lambda0(n: usize) -> Self {
        let mut w = Self::zero(n);
        w.c[0] = Q::one();
        w
    }

    pub fn delta(n: usize) -> Self {
        let mut w = Self::zero(n);
        w.c[1] = Q::one();
        w
    }

    /// The simple root α_i (1-based).
    pub fn alpha(n: usize, i: usize) -> Self {
        assert!((1..n).contains(&i));
        let mut w = Self::zero(n);
        w.c[1 + i] = Q::one();
        w
    }

    /// The highest root θ = α₁ + … + α_{n−1}.
    pub fn theta(n: usize) -> Self {
        let mut w = Self::zero(n);
        for i in 2..=n {
            w.c[i] = Q::one();
        }
        w
    }

    /// β₀ = qδ − θ, the distinguished integral simple root of the level
    /// family k = −n + (n−1)/q.
    pub fn beta0(n: usize, q: i64) -> Self {
        Self::delta(n).scale(&qi(q)).sub(&Self::theta(n))
    }

    /// ρ̂ = n·Λ₀ + ρ̄ with δ-coordinate 0, where ρ̄ = Σᵢ i(n−i)/2 · αᵢ is the
    /// finite Weyl vector.
    pub fn rho_hat(n: usize) -> Self {
        let mut w = Self::zero(n);
        w.c[0] = qi(n as i64);
        for i in 1..n {
            w.c[1 + i] = crate::rat::qr((i * (n - i)) as i64, 2);
        }
        w
    }

    /// kΛ₀ for an exact rational level k.
    pub fn k_lambda0(n: usize, k: &Q) -> Self {
        let mut w = Self::zero(n);
        w.c[0] = k.clone();
        w
    }

    /// A finite weight from α-lattice coordinates (Λ₀ = δ = 0).
    pub fn from_alpha(n: usize, coords: &[Q]) -> Self {
        assert_eq!(coords.len(), n - 1);
        let mut w = Self::zero(n);
        w.c[2..(n + 1)].clone_from_slice(coords);
        w
    }

    /// The fundamental weight Λ̄_i of sl_n in α-coordinates (a row of the
    /// inverse Cartan matrix).
    pub fn fundamental(n: usize, i: usize) -> Self {
        assert!((1..n).contains(&i));
        let ainv = lie::cartan_matrix(n).inverse().expect("invertible");
        Self::from_alpha(n, &ainv.rows[i - 1])
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        AffineWeight {
            n: self.n,
            c: self
                .c
                .iter()
                .zip(&other.c)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Self {
        AffineWeight {
            n: self.n,
            c: self.c.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// The symmetric pairing described in the module docs.
    pub fn pair(&self, other: &Self) -> Q {
        assert_eq!(self.n, other.n, "rank mismatch");
        let n = self.n;
        let a = lie::cartan_matrix(n);
        let mut acc = self.c[0].clone() * other.c[1].clone()
            + self.c[1].clone() * other.c[0].clone();
        for i in 0..(n - 1) {
            for j in 0..(n - 1) {
                if a.rows[i][j].is_zero() {
                    continue;
                }
                acc += self.c[2 + i].clone() * a.rows[i][j].clone() * other.c[2 + j].clone();
            }
        }
        acc
    }

    /// Finite part as α-coordinates.
    pub fn alpha_part(&self) -> Vec<Q> {
        self.c[2..].to_vec()
    }

    /// Reflection in a real root β (requires (β|β) = 2, which holds for all
    /// real roots here): λ ↦ λ − (λ|β)β.
    pub fn reflect(&self, beta: &Self) -> Self {
        assert_eq!(beta.pair(beta), qi(2), "reflections need a real root");
        self.sub(&beta.scale(&self.pair(beta)))
    }

    /// Translation t_γ for a finite root-lattice vector γ:
    /// t_γ(λ) = λ + (λ|δ)γ − ((λ|γ) + ½(λ|δ)(γ|γ))δ.
    pub fn translate(&self, gamma: &Self) -> Self {
        assert!(gamma.c[0].is_zero() && gamma.c[1].is_zero(), "γ must be finite");
        let n = self.n;
        let ld = self.pair(&Self::delta(n));
        let lg = self.pair(gamma);
        let gg = gamma.pair(gamma);
        let corr = lg + ld.clone() * gg * crate::rat::qr(1, 2);
        self.add(&gamma.scale(&ld)).sub(&Self::delta(n).scale(&corr))
    }
}

impl fmt::Debug for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let names: Vec<String> = ["L0".into(), "d".into()]
            .into_iter()
            .chain((1..self.n).map(|i| format!("a{i}")))
            .collect();
        for (i, c) in self.c.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{}·{}", crate::rat::format_q(c), names[i]));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// One factor of an affine Weyl word.
#[derive(Clone, Debug)]
pub enum WeylGen {
    /// Reflection in a real root.
    Refl(AffineWeight),
    /// Translation by a finite root-lattice vector.
    Trans(AffineWeight),
}

/// A composition word; factors act right-to-left, like function composition.
#[derive(Clone, Debug, Default)]
pub struct WeylWord(pub Vec<WeylGen>);

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord(Vec::new())
    }

    pub fn refl(beta: AffineWeight) -> Self {
        WeylWord(vec![WeylGen::Refl(beta)])
    }

    pub fn trans(gamma: AffineWeight) -> Self {
        WeylWord(vec![WeylGen::Trans(gamma)])
    }

    /// Concatenation: (self ∘ other)(λ) = self(other(λ)).
    pub fn then_after(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        WeylWord(v)
    }

    /// The plain (untwisted) linear action.
    pub fn apply(&self, lambda: &AffineWeight) -> AffineWeight {
        let mut w = lambda.clone();
        for g in self.0.iter().rev() {
            w = match g {
                WeylGen::Refl(beta) => w.reflect(beta),
                WeylGen::Trans(gamma) => w.translate(gamma),
            };
        }
        w
    }

    /// The shifted action w ∘ λ = w(λ + ρ̂) − ρ̂.
    pub fn twisted_apply(&self, lambda: &AffineWeight) -> AffineWeight {
        let rho = AffineWeight::rho_hat(lambda.n);
        self.apply(&lambda.add(&rho)).sub(&rho)
    }

    /// Extensional equality: the two words agree as linear maps iff they
    /// agree on the n+1 basis weights.
    pub fn equal_as_actions(&self, other: &Self, n: usize) -> bool {
        basis_weights(n)
            .iter()
            .all(|b| self.apply(b) == other.apply(b))
    }

    pub fn is_identity_action(&self, n: usize) -> bool {
        self.equal_as_actions(&WeylWord::identity(), n)
    }
}

/// The n+1 coordinate basis weights Λ₀, δ, α₁, …, α_{n−1}.
pub fn basis_weights(n: usize) -> Vec<AffineWeight> {
    let mut out = vec![AffineWeight::lambda0(n), AffineWeight::delta(n)];
    for i in 1..n {
        out.push(AffineWeight::alpha(n, i));
    }
    out
}

/// All elements of the finite Weyl group S_n as permutations, with lengths
/// (inversion counts).  The permutation p sends position i to letter p[i] in
/// ε-coordinates.
pub fn finite_weyl_elements(n: usize) -> Vec<(Vec<usize>, u32)> {
    let mut perms = vec![(0..n).collect::<Vec<_>>()];
    // lexicographic generation
    loop {
        let last = perms.last().unwrap().clone();
        // next_permutation
        let mut p = last.clone();
        let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
        perms.push(p);
    }
    perms
        .into_iter()
        .map(|p| {
            let mut inv = 0u32;
            for a in 0..p.len() {
                for b in (a + 1)..p.len() {
                    if p[a] > p[b] {
                        inv += 1;
                    }
                }
            }
            (p, inv)
        })
        .collect()
}

/// Applies a finite Weyl permutation to a weight: the α-part converts to
/// ε-coordinates (α_i = ε_i − ε_{i+1}), letters permute, and the result
/// converts back; Λ₀ and δ coordinates are fixed.
pub fn apply_perm(perm: &[usize], lambda: &AffineWeight) -> AffineWeight {
    let n = lambda.n;
    assert_eq!(perm.len(), n);
    let a = lambda.alpha_part();
    // ε-coordinates: x_1 = a_1, x_i = a_i − a_{i−1}, x_n = −a_{n−1}
    let mut x = vec![Q::zero(); n];
    for i in 0..n {
        let hi = if i < n - 1 { a[i].clone() } else { Q::zero() };
        let lo = if i > 0 { a[i - 1].clone() } else { Q::zero() };
        x[i] = hi - lo;
    }
    // w·ε_j = ε_{w(j)}: the new coordinate at position i is x at the letter
    // position mapping there, i.e. y[perm[i]] = x[i].
    let mut y = vec![Q::zero(); n];
    for i in 0..n {
        y[perm[i]] = x[i].clone();
    }
    // back to α-coordinates: a_i = y_1 + … + y_i
    let mut out = lambda.clone();
    let mut acc = Q::zero();
    for i in 0..(n - 1) {
        acc += y[i].clone();
        out.c[2 + i] = acc.clone();
    }
    out
}

/// The set Δ̂(λ), Π̂(λ), Π̂₀(λ) inside a δ-height window.
#[derive(Clone, Debug)]
pub struct IntegralSystem {
    pub lambda: AffineWeight,
    pub window: i64,
    /// positive integral real roots inside the window
    pub positive: Vec<AffineWeight>,
    /// the simple ones among them (not a sum of two positive integral roots)
    pub simple: Vec<AffineWeight>,
    /// simple roots pairing to zero with λ + ρ̂
    pub simple_zero: Vec<AffineWeight>,
}

/// Enumerates the integral root subsystem of λ up to δ-height `window`.
///
/// A positive real root ᾱ + mδ (m ≥ 1, ᾱ any finite root, or m = 0 and
/// ᾱ > 0) is integral when (λ + ρ̂ | α) ∈ ℤ.  Simplicity is decided by
/// non-decomposability inside the window, which is exact there: any
/// decomposition of a window root uses window roots.
///
/// Rejects λ on the critical hyperplane (λ + ρ̂ | δ) = 0.
pub fn integral_simple_roots(lambda: &AffineWeight, window: i64) -> IntegralSystem {
    let n = lambda.n;
    let shifted = lambda.add(&AffineWeight::rho_hat(n));
    assert!(
        !shifted.pair(&AffineWeight::delta(n)).is_zero(),
        "critical weight rejected"
    );
    // finite roots in α-coordinates
    let mut finite: Vec<Vec<i64>> = Vec::new();
    for i in 1..n {
        for j in (i + 1)..=n {
            let mut v = vec![0i64; n - 1];
            for a in i..j {
                v[a - 1] = 1;
            }
            finite.push(v.clone());
            finite.push(v.iter().map(|x| -x).collect());
        }
    }
    let to_weight = |m: i64, albar: &[i64]| {
        let mut w = AffineWeight::delta(n).scale(&qi(m));
        for (i, &x) in albar.iter().enumerate() {
            w.c[2 + i] = qi(x);
        }
        w
    };
    let is_positive_finite = |albar: &[i64]| albar.iter().sum::<i64>() > 0;
    let mut positive = Vec::new();
    for m in 0..=window {
        for albar in &finite {
            if m == 0 && !is_positive_finite(albar) {
                continue;
            }
            let root = to_weight(m, albar);
            if shifted.pair(&root).denom().is_one() {
                positive.push(root);
            }
        }
    }
    // Simplicity: α is simple iff α ≠ β + γ for β, γ in the positive set.
    let coord_set: std::collections::BTreeSet<Vec<Q>> =
        positive.iter().map(|w| w.c.clone()).collect();
    let mut simple = Vec::new();
    for alertpha in &positive {
        let mut decomposable = false;
        'outer: for beta in &positive {
            let rest = alertpha.sub(beta);
            if rest.is_zero() {
                continue;
            }
            if coord_set.contains(&rest.c) {
                decomposable = true;
                break 'outer;
            }
        }
        if !decomposable {
            simple.push(alertpha.clone());
        }
    }
    let simple_zero = simple
        .iter()
        .filter(|a| shifted.pair(a).is_zero())
        .cloned()
        .collect();
    IntegralSystem {
        lambda: lambda.clone(),
        window,
        positive,
        simple,
        simple_zero,
    }
}
