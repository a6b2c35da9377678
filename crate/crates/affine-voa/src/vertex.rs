//! The vacuum module of affine sl_n at level k, in PBW normal form.
//!
//! States are spanned by monomials
//!
//! ```text
//! x_1(-d_1)^{p_1} · x_2(-d_2)^{p_2} · … · 𝟏
//! ```
//!
//! with all mode indices ≤ −1 and factors sorted by the canonical order:
//! section E < F < H, within a section by (root length, start index), and for
//! a fixed generator by depth ascending.  Every product of modes is rewritten
//! into this normal form using
//!
//! ```text
//! x(m) y(l) = y(l) x(m) + [x,y](m+l) + m (x|y) δ_{m+l,0} k
//! ```
//!
//! which is the only relation needed; positive and zero modes annihilate the
//! vacuum.  The rewriting is implemented by [`Straightener`], which memoizes
//! results per (generator, mode, tail-monomial) so that large weight-space
//! computations share work across monomials with common tails.

use crate::lie::{basis, dim, BasisElement, StructureTable};
use crate::rat::{format_q, parse_q, qi, Q};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

/// One factor x(−depth)^power of a normal-form monomial.
pub type ModeFactor = (BasisElement, u32, u32);

/// A PBW monomial: factors strictly increasing by (generator, depth),
/// powers ≥ 1.  The empty monomial is the vacuum.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PBWMonomial(Vec<ModeFactor>);

impl PBWMonomial {
    /// The vacuum 𝟏.
    pub fn one() -> Self {
        PBWMonomial(Vec::new())
    }

    /// A single factor x(−depth)^power.
    pub fn single(x: BasisElement, depth: u32, power: u32) -> Self {
        assert!(depth >= 1 && power >= 1);
        PBWMonomial(vec![(x, depth, power)])
    }

    /// Builds from a factor list, checking the canonical-order invariant.
    pub fn from_factors(factors: Vec<ModeFactor>) -> Self {
        for w in factors.windows(2) {
            let a = (w[0].0, w[0].1);
            let b = (w[1].0, w[1].1);
            assert!(a < b, "factors out of order: {:?} before {:?}", w[0], w[1]);
        }
        for f in &factors {
            assert!(f.1 >= 1 && f.2 >= 1, "bad factor {f:?}");
        }
        PBWMonomial(factors)
    }

    pub fn factors(&self) -> &[ModeFactor] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Total conformal depth Σ depth·power.
    pub fn depth(&self) -> u32 {
        self.0.iter().map(|&(_, d, p)| d * p).sum()
    }

    /// Total number of modes Σ power.
    pub fn num_modes(&self) -> u32 {
        self.0.iter().map(|&(_, _, p)| p).sum()
    }

    /// Root-lattice weight (coordinates in the simple-root basis).
    pub fn weight(&self, n: usize) -> Vec<i64> {
        let mut w = vec![0i64; n - 1];
        for &(g, _, p) in &self.0 {
            for (i, c) in g.weight(n).into_iter().enumerate() {
                w[i] += c * p as i64;
            }
        }
        w
    }

    /// Splits off one mode from the leading factor: returns (generator,
    /// mode index, remaining monomial).  Panics on the vacuum.
    fn split_leading(&self) -> (BasisElement, i32, PBWMonomial) {
        let (g, d, p) = self.0[0];
        let mut rest = self.0.clone();
        if p == 1 {
            rest.remove(0);
        } else {
            rest[0].2 = p - 1;
        }
        (g, -(d as i32), PBWMonomial(rest))
    }
}

impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, d, p)| {
                if p == 1 {
                    format!("{g}(-{d})")
                } else {
                    format!("{g}(-{d})^{p}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses the monomial grammar, e.g. `E[1,2](-1)^2 E[1,3](-1) H[1](-1)^3`
/// or `1` for the vacuum.
pub fn parse_monomial(s: &str) -> Result<PBWMonomial, String> {
    let s = s.trim();
    if s == "1" {
        return Ok(PBWMonomial::one());
    }
    let mut factors = Vec::new();
    for tok in s.split_whitespace() {
        factors.push(parse_factor(tok)?);
    }
    let mono = PBWMonomial(factors);
    for w in mono.0.windows(2) {
        if (w[0].0, w[0].1) >= (w[1].0, w[1].1) {
            return Err(format!("factors out of canonical order in '{s}'"));
        }
    }
    Ok(mono)
}

fn parse_factor(tok: &str) -> Result<ModeFactor, String> {
    let err = || format!("bad factor '{tok}'");
    let open = tok.find('[').ok_or_else(err)?;
    let close = tok.find(']').ok_or_else(err)?;
    let section = &tok[..open];
    let idx: Vec<&str> = tok[open + 1..close].split(',').collect();
    let gen = match (section, idx.as_slice()) {
        ("E", [i, j]) => BasisElement::E(
            i.parse().map_err(|_| err())?,
            j.parse().map_err(|_| err())?,
        ),
        ("F", [i, j]) => BasisElement::F(
            i.parse().map_err(|_| err())?,
            j.parse().map_err(|_| err())?,
        ),
        ("H", [i]) => BasisElement::H(i.parse().map_err(|_| err())?),
        _ => return Err(err()),
    };
    let rest = &tok[close + 1..];
    if !rest.starts_with("(-") {
        return Err(err());
    }
    let close_p = rest.find(')').ok_or_else(err)?;
    let depth: u32 = rest[2..close_p].parse().map_err(|_| err())?;
    let power: u32 = match &rest[close_p + 1..] {
        "" => 1,
        p if p.starts_with('^') => p[1..].parse().map_err(|_| err())?,
        _ => return Err(err()),
    };
    if depth == 0 || power == 0 {
        return Err(err());
    }
    Ok((gen, depth, power))
}

/// A finite linear combination of PBW monomials at a fixed rank and level.
#[derive(Clone, PartialEq, Eq)]
pub struct PBWVector {
    pub n: usize,
    pub k: Q,
    terms: BTreeMap<PBWMonomial, Q>,
}

impl PBWVector {
    pub fn zero(n: usize, k: Q) -> Self {
        PBWVector { n, k, terms: BTreeMap::new() }
    }

    /// The vacuum vector 𝟏.
    pub fn vacuum(n: usize, k: Q) -> Self {
        let mut v = Self::zero(n, k);
        v.add_term(PBWMonomial::one(), qi(1));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PBWMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: PBWMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    /// self += s·other.
    pub fn add_scaled_assign(&mut self, other: &Self, s: &Q) {
        assert_eq!(self.n, other.n);
        assert_eq!(self.k, other.k);
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone() * s.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled_assign(other, &qi(1));
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled_assign(other, &qi(-1));
        out
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut out = Self::zero(self.n, self.k.clone());
        out.add_scaled_assign(self, s);
        out
    }

    /// Common depth of all monomials, if homogeneous.
    pub fn depth(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.depth();
        it.all(|m| m.depth() == d).then_some(d)
    }

    /// Common weight of all monomials, if homogeneous.
    pub fn weight(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let w = it.next()?.weight(self.n);
        for m in it {
            if m.weight(self.n) != w {
                return None;
            }
        }
        Some(w)
    }

    /// Serializes as sorted (monomial, coefficient) string pairs.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.to_string(), format_q(c)))
            .collect()
    }

    /// Inverse of [`PBWVector::to_pairs`].
    pub fn from_pairs(n: usize, k: Q, pairs: &[(String, String)]) -> Result<Self, String> {
        let mut v = Self::zero(n, k);
        for (ms, cs) in pairs {
            let m = parse_monomial(ms)?;
            let c = parse_q(cs).ok_or_else(|| format!("bad rational '{cs}'"))?;
            v.add_term(m, c);
        }
        Ok(v)
    }
}

impl fmt::Debug for PBWVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{}·{}", format_q(c), m))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Rewrites arbitrary mode products into PBW normal form.
///
/// Holds the structure-constant table and a memo table keyed by
/// (generator, mode, monomial); tails of monomials recur constantly during
/// weight-space computations, so the memo gives a large speedup there.
pub struct Straightener {
    pub n: usize,
    pub k: Q,
    tab: Arc<StructureTable>,
    memo: HashMap<(BasisElement, i32, PBWMonomial), Arc<PBWVector>>,
}

impl Straightener {
    pub fn new(n: usize, k: Q) -> Self {
        Straightener {
            n,
            k,
            tab: crate::lie::structure_table(n),
            memo: HashMap::new(),
        }
    }

    /// x(m) · v.
    pub fn apply(&mut self, x: BasisElement, m: i32, v: &PBWVector) -> PBWVector {
        assert_eq!(v.n, self.n);
        assert_eq!(v.k, self.k);
        let mut out = PBWVector::zero(self.n, self.k.clone());
        for (mono, c) in &v.terms {
            let r = self.mode_times(x, m, mono);
            out.add_scaled_assign(&r, c);
        }
        out
    }

    /// Applies a mode word right-to-left: `apply_word(&[(x,a),(y,b)], v)`
    /// computes x(a)·(y(b)·v).
    pub fn apply_word(&mut self, word: &[(BasisElement, i32)], v: &PBWVector) -> PBWVector {
        let mut cur = v.clone();
        for &(x, m) in word.iter().rev() {
            cur = self.apply(x, m, &cur);
        }
        cur
    }

    /// Normal form of x(m)·w for a single monomial w.
    ///
    /// Algorithm: if w is the vacuum the answer is immediate.  Otherwise with
    /// w = y(l)·w′ either x(m) already sits in canonical position (prepend or
    /// merge), or we commute:
    ///
    /// ```text
    /// x(m)·(y(l)·w′) = y(l)·(x(m)·w′) + [x,y](m+l)·w′ + m(x|y)δ_{m+l,0} k·w′
    /// ```
    ///
    /// and recurse on the strictly smaller monomial w′.
    fn mode_times(&mut self, x: BasisElement, m: i32, w: &PBWMonomial) -> Arc<PBWVector> {
        let key = (x, m, w.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let mut out = PBWVector::zero(self.n, self.k.clone());
        if w.is_one() {
            if m <= -1 {
                out.add_term(PBWMonomial::single(x, (-m) as u32, 1), qi(1));
            }
            // zero and positive modes annihilate the vacuum
        } else {
            let (y, l, rest) = w.split_leading();
            let dy = (-l) as u32;
            let mut placed = false;
            if m <= -1 {
                let dx = (-m) as u32;
                if (x, dx) < (y, dy) {
                    let mut facs = w.0.clone();
                    facs.insert(0, (x, dx, 1));
                    out.add_term(PBWMonomial(facs), qi(1));
                    placed = true;
                } else if (x, dx) == (y, dy) {
                    let mut facs = w.0.clone();
                    facs[0].2 += 1;
                    out.add_term(PBWMonomial(facs), qi(1));
                    placed = true;
                }
            }
            if !placed {
                let inner = self.mode_times(x, m, &rest);
                for (mono, c) in inner.terms.clone() {
                    let r = self.mode_times(y, l, &mono);
                    out.add_scaled_assign(&r, &c);
                }
                let brackets: Vec<(BasisElement, Q)> = self.tab.bracket(x, y).to_vec();
                for (z, c) in brackets {
                    let r = self.mode_times(z, m + l, &rest);
                    out.add_scaled_assign(&r, &c);
                }
                if m + l == 0 {
                    let central = qi(m as i64) * self.tab.form(x, y).clone() * self.k.clone();
                    out.add_term(rest, central);
                }
            }
        }
        let arc = Arc::new(out);
        self.memo.insert(key, arc.clone());
        arc
    }
}

/// x(m)·v with a transient rewriter (no memo reuse across calls).
pub fn apply_mode(x: BasisElement, m: i32, v: &PBWVector) -> PBWVector {
    Straightener::new(v.n, v.k.clone()).apply(x, m, v)
}

/// Normal form of a mode word applied to the vacuum.
pub fn from_modes(n: usize, k: Q, word: &[(BasisElement, i32)]) -> PBWVector {
    let vac = PBWVector::vacuum(n, k.clone());
    Straightener::new(n, k).apply_word(word, &vac)
}

/// Enumerates and caches weight-space bases of the vacuum module.
///
/// All monomials of a given total depth are generated once and bucketed by
/// root-lattice weight; individual (depth, weight) spaces are then served as
/// shared slices, sorted in monomial order.
pub struct SpaceCache {
    pub n: usize,
    by_depth: HashMap<u32, HashMap<Vec<i64>, Arc<Vec<PBWMonomial>>>>,
}

impl SpaceCache {
    pub fn new(n: usize) -> Self {
        SpaceCache { n, by_depth: HashMap::new() }
    }

    fn ensure_depth(&mut self, d: u32) {
        if self.by_depth.contains_key(&d) {
            return;
        }
        let mut buckets: HashMap<Vec<i64>, Vec<PBWMonomial>> = HashMap::new();
        for mono in enumerate_depth(self.n, d) {
            buckets.entry(mono.weight(self.n)).or_default().push(mono);
        }
        let mut fixed = HashMap::new();
        for (w, mut v) in buckets {
            v.sort();
            fixed.insert(w, Arc::new(v));
        }
        self.by_depth.insert(d, fixed);
    }

    /// Basis monomials of the (depth, weight) space, in canonical order.
    pub fn basis(&mut self, d: u32, weight: &[i64]) -> Arc<Vec<PBWMonomial>> {
        assert_eq!(weight.len(), self.n - 1);
        self.ensure_depth(d);
        self.by_depth[&d]
            .get(weight)
            .cloned()
            .unwrap_or_else(|| Arc::new(Vec::new()))
    }

    /// All weights with a nonzero space at this depth, sorted.
    pub fn weights_at(&mut self, d: u32) -> Vec<Vec<i64>> {
        self.ensure_depth(d);
        let mut ws: Vec<Vec<i64>> = self.by_depth[&d].keys().cloned().collect();
        ws.sort();
        ws
    }
}

/// Basis of the (depth, weight) space; convenience wrapper without caching.
pub fn weight_space_basis(n: usize, d: u32, weight: &[i64]) -> Vec<PBWMonomial> {
    SpaceCache::new(n).basis(d, weight).as_ref().clone()
}

/// All PBW monomials of total depth exactly `d`, in canonical factor order.
fn enumerate_depth(n: usize, d: u32) -> Vec<PBWMonomial> {
    let gens = basis(n);
    let mut out = Vec::new();
    let mut facs = Vec::new();
    rec_gen(&gens, 0, d, &mut facs, &mut out);
    out
}

fn rec_gen(
    gens: &[BasisElement],
    idx: usize,
    dd: u32,
    facs: &mut Vec<ModeFactor>,
    out: &mut Vec<PBWMonomial>,
) {
    if idx == gens.len() {
        if dd == 0 {
            out.push(PBWMonomial(facs.clone()));
        }
        return;
    }
    rec_depths(gens, idx, 1, dd, facs, out);
}

// Chooses the factors of generator gens[idx]: depths strictly ascending from
// `mind`, any positive powers, total depth spent ≤ dd.
fn rec_depths(
    gens: &[BasisElement],
    idx: usize,
    mind: u32,
    dd: u32,
    facs: &mut Vec<ModeFactor>,
    out: &mut Vec<PBWMonomial>,
) {
    rec_gen(gens, idx + 1, dd, facs, out);
    let g = gens[idx];
    for v in mind..=dd {
        for p in 1..=(dd / v) {
            facs.push((g, v, p));
            rec_depths(gens, idx, v + 1, dd - v * p, facs, out);
            facs.pop();
        }
    }
}

/// Graded dimension of the whole depth-d slice: the coefficient of x^d in
/// Π_{j≥1} (1−x^j)^{−dim sl_n}.
pub fn depth_slice_dimension(n: usize, d: u32) -> u64 {
    let dim = dim(n) as u64;
    let dmax = d as usize;
    let mut series = vec![0u64; dmax + 1];
    series[0] = 1;
    for j in 1..=dmax {
        for _ in 0..dim {
            // multiply by 1/(1−x^j): prefix-sum with stride j
            for t in j..=dmax {
                series[t] += series[t - j];
            }
        }
    }
    series[dmax]
}
