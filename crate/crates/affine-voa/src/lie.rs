//! sl_n in a Chevalley basis, with the normalized invariant bilinear form.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * positive roots of sl_n are intervals `(i, j)` with `1 ≤ i < j ≤ n`,
//!   meaning α_i + α_{i+1} + … + α_{j−1};
//! * `e_(i,j)` is the elementary matrix unit `E_ij`, `f_(i,j)` is `E_ji`, and
//!   `h_i = E_ii − E_{i+1,i+1}`;
//! * the invariant form is the trace form of the defining representation,
//!   which gives (θ|θ) = 2 for the highest root θ = α₁ + … + α_{n−1}.
//!
//! With these choices the structure constants are determined: for example
//! [e_{α₁}, e_{α₂}] = e_{α₁+α₂} and [e_{α₂}, f_{α₁+α₂}] = f_{α₁}.  Brackets
//! are computed as matrix commutators in the defining representation and
//! decomposed back into the basis, so the Jacobi identity and form-invariance
//! hold by construction and are verified exhaustively in tests.

use crate::mat::QMatrix;
use crate::rat::Q;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;

/// A Chevalley basis element of sl_n.
///
/// `E(i,j)`/`F(i,j)` require `1 ≤ i < j ≤ n`; `H(i)` requires `1 ≤ i ≤ n−1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisElement {
    E(u8, u8),
    F(u8, u8),
    H(u8),
}

impl BasisElement {
    /// Sort key: section (E < F < H), then root length, then start index.
    /// For sl₃ this orders the E's as e_{α₁}, e_{α₂}, e_{α₁+α₂}.
    fn key(&self) -> (u8, u8, u8) {
        match *self {
            BasisElement::E(i, j) => (0, j - i, i),
            BasisElement::F(i, j) => (1, j - i, i),
            BasisElement::H(i) => (2, 0, i),
        }
    }

    /// Root-lattice weight under the adjoint h-action, as α-coordinates.
    pub fn weight(&self, n: usize) -> Vec<i64> {
        let mut w = vec![0i64; n - 1];
        match *self {
            BasisElement::E(i, j) => {
                for a in i..j {
                    w[(a - 1) as usize] = 1;
                }
            }
            BasisElement::F(i, j) => {
                for a in i..j {
                    w[(a - 1) as usize] = -1;
                }
            }
            BasisElement::H(_) => {}
        }
        w
    }

    /// The defining-representation matrix.
    pub fn matrix(&self, n: usize) -> QMatrix {
        let mut m = QMatrix::zero(n, n);
        match *self {
            BasisElement::E(i, j) => m.rows[(i - 1) as usize][(j - 1) as usize] = Q::one(),
            BasisElement::F(i, j) => m.rows[(j - 1) as usize][(i - 1) as usize] = Q::one(),
            BasisElement::H(i) => {
                m.rows[(i - 1) as usize][(i - 1) as usize] = Q::one();
                m.rows[i as usize][i as usize] = -Q::one();
            }
        }
        m
    }

    fn validate(&self, n: usize) {
        match *self {
            BasisElement::E(i, j) | BasisElement::F(i, j) => {
                assert!(1 <= i && i < j && (j as usize) <= n, "invalid root interval");
            }
            BasisElement::H(i) => {
                assert!(1 <= i && (i as usize) < n, "invalid Cartan index");
            }
        }
    }
}

impl PartialOrd for BasisElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasisElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Debug for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisElement::E(i, j) => write!(f, "E[{i},{j}]"),
            BasisElement::F(i, j) => write!(f, "F[{i},{j}]"),
            BasisElement::H(i) => write!(f, "H[{i}]"),
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// All basis elements of sl_n in canonical order (E's, then F's, then H's).
pub fn basis(n: usize) -> Vec<BasisElement> {
    let mut out = Vec::new();
    for len in 1..n {
        for i in 1..=(n - len) {
            out.push(BasisElement::E(i as u8, (i + len) as u8));
        }
    }
    for len in 1..n {
        for i in 1..=(n - len) {
            out.push(BasisElement::F(i as u8, (i + len) as u8));
        }
    }
    for i in 1..n {
        out.push(BasisElement::H(i as u8));
    }
    out
}

/// dim sl_n = n² − 1.
pub fn dim(n: usize) -> usize {
    n * n - 1
}

/// Cartan matrix of A_{n−1}: 2 on the diagonal, −1 adjacent.
pub fn cartan_matrix(n: usize) -> QMatrix {
    let r = n - 1;
    let mut a = QMatrix::zero(r, r);
    for i in 0..r {
        a.rows[i][i] = crate::rat::qi(2);
        if i + 1 < r {
            a.rows[i][i + 1] = crate::rat::qi(-1);
            a.rows[i + 1][i] = crate::rat::qi(-1);
        }
    }
    a
}

/// A sparse rational combination of Chevalley basis elements.
#[derive(Clone, PartialEq, Eq)]
pub struct LieElement {
    pub n: usize,
    pub coeffs: BTreeMap<BasisElement, Q>,
}

impl LieElement {
    pub fn zero(n: usize) -> Self {
        LieElement { n, coeffs: BTreeMap::new() }
    }

    pub fn from_basis(n: usize, b: BasisElement) -> Self {
        b.validate(n);
        let mut c = BTreeMap::new();
        c.insert(b, Q::one());
        LieElement { n, coeffs: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, b: BasisElement, c: Q) {
        b.validate(self.n);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(b) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "rank mismatch");
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero(self.n);
        }
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = c.clone() * s.clone();
        }
        out
    }

    /// Matrix of the element in the defining representation.
    pub fn to_matrix(&self) -> QMatrix {
        let mut m = QMatrix::zero(self.n, self.n);
        for (b, c) in &self.coeffs {
            m = m.add(&b.matrix(self.n).scale(c));
        }
        m
    }

    /// Decomposes a traceless n×n matrix back into the Chevalley basis.
    ///
    /// Off-diagonal entries read off E/F coefficients directly; the diagonal
    /// d decomposes as Σ c_i h_i with c_i = d_1 + … + d_i.
    pub fn from_matrix(n: usize, m: &QMatrix) -> Self {
        assert_eq!(m.nrows(), n);
        assert_eq!(m.ncols(), n);
        assert!(m.trace().is_zero(), "not traceless");
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                if i == j || m.rows[i][j].is_zero() {
                    continue;
                }
                let b = if i < j {
                    BasisElement::E((i + 1) as u8, (j + 1) as u8)
                } else {
                    BasisElement::F((j + 1) as u8, (i + 1) as u8)
                };
                out.add_term(b, m.rows[i][j].clone());
            }
        }
        let mut partial = Q::zero();
        for i in 0..(n - 1) {
            partial += m.rows[i][i].clone();
            out.add_term(BasisElement::H((i + 1) as u8), partial.clone());
        }
        out
    }

    /// Lie bracket [x, y], computed as a commutator in the defining
    /// representation and decomposed back into the basis.
    pub fn bracket(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "rank mismatch");
        Self::from_matrix(self.n, &self.to_matrix().commutator(&other.to_matrix()))
    }

    /// The normalized invariant form (x|y) = tr(xy) in the defining
    /// representation; (θ|θ) = 2.
    pub fn form(&self, other: &Self) -> Q {
        assert_eq!(self.n, other.n, "rank mismatch");
        self.to_matrix().mul(&other.to_matrix()).trace()
    }

    /// Root-lattice weight if the element is h-homogeneous, else `None`.
    pub fn weight(&self) -> Option<Vec<i64>> {
        let mut w: Option<Vec<i64>> = None;
        for b in self.coeffs.keys() {
            let bw = b.weight(self.n);
            match &w {
                None => w = Some(bw),
                Some(prev) => {
                    if *prev != bw {
                        return None;
                    }
                }
            }
        }
        Some(w.unwrap_or_else(|| vec![0; self.n - 1]))
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(b, c)| format!("{}·{:?}", crate::rat::format_q(c), b))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Convenience constructors for sl_n elements.
pub fn e(n: usize, i: u8, j: u8) -> LieElement {
    LieElement::from_basis(n, BasisElement::E(i, j))
}
pub fn f(n: usize, i: u8, j: u8) -> LieElement {
    LieElement::from_basis(n, BasisElement::F(i, j))
}
pub fn h(n: usize, i: u8) -> LieElement {
    LieElement::from_basis(n, BasisElement::H(i))
}

/// e_θ for the highest root θ.
pub fn e_theta(n: usize) -> LieElement {
    e(n, 1, n as u8)
}

/// f_θ for the highest root θ.
pub fn f_theta(n: usize) -> LieElement {
    f(n, 1, n as u8)
}

/// Dual basis pairs (x_i, xⁱ) with (x_i | xʲ) = δ_ij: e ↔ f on root vectors,
/// and the inverse Cartan matrix on the Cartan part.
pub fn dual_basis(n: usize) -> Vec<(LieElement, LieElement)> {
    let mut out = Vec::new();
    let ainv = cartan_matrix(n)
        .inverse()
        .expect("Cartan matrix is invertible");
    for b in basis(n) {
        let x = LieElement::from_basis(n, b);
        let dual = match b {
            BasisElement::E(i, j) => LieElement::from_basis(n, BasisElement::F(i, j)),
            BasisElement::F(i, j) => LieElement::from_basis(n, BasisElement::E(i, j)),
            BasisElement::H(i) => {
                let mut d = LieElement::zero(n);
                for l in 1..n {
                    d.add_term(
                        BasisElement::H(l as u8),
                        ainv.rows[(i - 1) as usize][l - 1].clone(),
                    );
                }
                d
            }
        };
        out.push((x, dual));
    }
    out
}

/// Matrix of ad(x) on sl_n in the canonical basis order: column j holds the
/// coordinates of [x, b_j].
pub fn ad_matrix(x: &LieElement) -> QMatrix {
    let n = x.n;
    let bs = basis(n);
    let index: BTreeMap<BasisElement, usize> =
        bs.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    let d = bs.len();
    let mut m = QMatrix::zero(d, d);
    for (j, b) in bs.iter().enumerate() {
        let img = x.bracket(&LieElement::from_basis(n, *b));
        for (bb, c) in &img.coeffs {
            m.rows[index[bb]][j] = c.clone();
        }
    }
    m
}

/// Basis of the centralizer ker(ad x) ⊆ sl_n.
pub fn centralizer(x: &LieElement) -> Vec<LieElement> {
    let n = x.n;
    let bs = basis(n);
    ad_matrix(x)
        .kernel()
        .into_iter()
        .map(|v| {
            let mut el = LieElement::zero(n);
            for (i, c) in v.into_iter().enumerate() {
                el.add_term(bs[i], c);
            }
            el
        })
        .collect()
}

/// Precomputed structure constants of sl_n for hot loops.
///
/// Brackets and form values of basis pairs are computed once (through the
/// defining representation, same as [`LieElement::bracket`]) and then served
/// from a table; `structure_table` caches one instance per rank.
pub struct StructureTable {
    pub n: usize,
    bracket: std::collections::HashMap<(BasisElement, BasisElement), Vec<(BasisElement, Q)>>,
    form: std::collections::HashMap<(BasisElement, BasisElement), Q>,
}

impl StructureTable {
    fn build(n: usize) -> Self {
        let bs = basis(n);
        let mut bracket = std::collections::HashMap::new();
        let mut form = std::collections::HashMap::new();
        for &a in &bs {
            for &b in &bs {
                let xa = LieElement::from_basis(n, a);
                let xb = LieElement::from_basis(n, b);
                let br: Vec<(BasisElement, Q)> =
                    xa.bracket(&xb).coeffs.into_iter().collect();
                bracket.insert((a, b), br);
                form.insert((a, b), xa.form(&xb));
            }
        }
        StructureTable { n, bracket, form }
    }

    /// [a, b] in basis coordinates.
    pub fn bracket(&self, a: BasisElement, b: BasisElement) -> &[(BasisElement, Q)] {
        &self.bracket[&(a, b)]
    }

    /// (a | b).
    pub fn form(&self, a: BasisElement, b: BasisElement) -> &Q {
        &self.form[&(a, b)]
    }
}

/// Shared structure-constant table for sl_n, built on first use.
pub fn structure_table(n: usize) -> std::sync::Arc<StructureTable> {
    use std::sync::{Arc, Mutex, OnceLock};
    static TABLES: OnceLock<Mutex<std::collections::HashMap<usize, Arc<StructureTable>>>> =
        OnceLock::new();
    let m = TABLES.get_or_init(|| Mutex::new(std::collections::HashMap::new()));
    let mut guard = m.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(StructureTable::build(n)))
        .clone()
}

/// A random adjoint-group conjugate of `x`, exact over ℚ.
///
/// The conjugator is a product of exp(t·E_ij) factors with i ≠ j; each factor
/// is unipotent (E_ij² = 0), so exp(t·E_ij) = I + t·E_ij and its inverse is
/// I − t·E_ij.  The characteristic polynomial of the result equals that of
/// `x` by construction.
pub fn adjoint_orbit_sample(x: &QMatrix, n: usize, seed: u64) -> QMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = x.clone();
    for _ in 0..6 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let num: i64 = loop {
            let v = rng.gen_range(-3i64..=3);
            if v != 0 {
                break v;
            }
        };
        let den: i64 = rng.gen_range(1i64..=3);
        let t = crate::rat::qr(num, den);
        let mut g = QMatrix::identity(n);
        g.rows[i][j] = t.clone();
        let mut ginv = QMatrix::identity(n);
        ginv.rows[i][j] = -t;
        m = g.mul(&m).mul(&ginv);
    }
    m
}
