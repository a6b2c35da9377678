//! Sparse exact linear algebra over ℚ.
//!
//! Rows are scaled to integers (clearing denominators) and kept
//! content-normalized — every row is divided by the gcd of its entries with a
//! positive leading coefficient — so intermediate growth stays modest without
//! ever leaving exact arithmetic.  Pivoting is deterministic: rows are
//! processed in caller order and the pivot of a reduced row is its leading
//! column, so repeated runs produce bit-identical results.
//!
//! Three entry points cover all uses in this crate:
//!
//! * [`kernel_basis`] — full nullspace of a sparse constraint matrix by
//!   direct integer elimination; fine up to a few hundred columns;
//! * [`kernel_basis_large`] — the same nullspace for big systems: the
//!   elimination runs over word-sized prime fields, the rational coordinates
//!   are recovered by Chinese remaindering plus rational reconstruction, and
//!   the result is certified by an exact A·v = 0 check (the modular part only
//!   *finds* the answer; it never has to be trusted);
//! * [`SpanBuilder`] — incremental row-span maintenance with a membership
//!   test, used for ideal saturation and adjoint-closure computations.
//!
//! Why the modular path is still exact: each reconstructed vector is verified
//! against the original rational matrix, proving dim ker ≥ #(free columns
//! found mod p); and rank is ≥ the modular rank always, proving
//! dim ker ≤ #(free columns).  Together the two bounds pin the kernel
//! exactly, independent of prime choice.

use crate::rat::Q;
use num::bigint::BigInt;
use num::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// A sparse integer row: sorted by column, nonzero entries only.
type IRow = Vec<(usize, BigInt)>;

/// Clears denominators and normalizes content; returns a sorted sparse row.
fn to_integer_row(row: &[(usize, Q)]) -> IRow {
    let mut lcm = BigInt::one();
    for (_, v) in row {
        if !v.is_zero() {
            lcm = lcm.lcm(v.denom());
        }
    }
    let mut out: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (c, v) in row {
        if v.is_zero() {
            continue;
        }
        let scaled = v.numer() * (&lcm / v.denom());
        let e = out.entry(*c).or_insert_with(BigInt::zero);
        *e += scaled;
    }
    let mut r: IRow = out.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    normalize(&mut r);
    r
}

/// Divides by the gcd of all entries and makes the leading entry positive.
fn normalize(r: &mut IRow) {
    if r.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, v) in r.iter() {
        g = g.gcd(v);
    }
    if r[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in r.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// r := a·r + b·p, sparse merge.
fn combine(r: &IRow, a: &BigInt, p: &IRow, b: &BigInt) -> IRow {
    let mut out = IRow::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let next = match (r.get(i), p.get(j)) {
            (Some(&(ci, _)), Some(&(cj, _))) => {
                if ci < cj {
                    let v = a * &r[i].1;
                    i += 1;
                    (ci, v)
                } else if cj < ci {
                    let v = b * &p[j].1;
                    j += 1;
                    (cj, v)
                } else {
                    let v = a * &r[i].1 + b * &p[j].1;
                    i += 1;
                    j += 1;
                    (ci, v)
                }
            }
            (Some(&(ci, _)), None) => {
                let v = a * &r[i].1;
                i += 1;
                (ci, v)
            }
            (None, Some(&(cj, _))) => {
                let v = b * &p[j].1;
                j += 1;
                (cj, v)
            }
            (None, None) => break,
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

/// Eliminates the leading column of `r` using pivot row `p` (whose leading
/// column equals `r`'s): returns (p_lead/g)·r − (r_lead/g)·p, normalized.
fn eliminate(r: &IRow, p: &IRow) -> IRow {
    debug_assert_eq!(r[0].0, p[0].0);
    let g = r[0].1.gcd(&p[0].1);
    let a = &p[0].1 / &g;
    let b = -(&r[0].1 / &g);
    let mut out = combine(r, &a, p, &b);
    normalize(&mut out);
    out
}

/// Incremental span of sparse ℚ-rows with exact membership testing.
pub struct SpanBuilder {
    pivots: BTreeMap<usize, IRow>,
}

impl Default for SpanBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl SpanBuilder {
    pub fn new() -> Self {
        SpanBuilder { pivots: BTreeMap::new() }
    }

    /// Reduces `row` against the current span; if a nonzero remainder is
    /// left it joins the span and `true` is returned.
    pub fn insert(&mut self, row: &[(usize, Q)]) -> bool {
        let mut r = to_integer_row(row);
        loop {
            if r.is_empty() {
                return false;
            }
            match self.pivots.get(&r[0].0) {
                Some(p) => r = eliminate(&r, p),
                None => {
                    self.pivots.insert(r[0].0, r);
                    return true;
                }
            }
        }
    }

    /// True iff `row` already lies in the span.
    pub fn contains(&self, row: &[(usize, Q)]) -> bool {
        let mut r = to_integer_row(row);
        loop {
            if r.is_empty() {
                return true;
            }
            match self.pivots.get(&r[0].0) {
                Some(p) => r = eliminate(&r, p),
                None => return false,
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Rank of a sparse matrix given as rows.
pub fn rank(rows: &[Vec<(usize, Q)>]) -> usize {
    let mut s = SpanBuilder::new();
    for r in rows {
        s.insert(r);
    }
    s.rank()
}

/// Basis of {x : A x = 0} for a sparse matrix with `ncols` columns.
///
/// Forward elimination to echelon form, then one back-substitution per free
/// column (no full RREF, so fill-in stays bounded by the echelon rows).
/// Kernel vectors are normalized with 1 at their free coordinate.
pub fn kernel_basis(ncols: usize, rows: &[Vec<(usize, Q)>]) -> Vec<Vec<Q>> {
    let mut span = SpanBuilder::new();
    for r in rows {
        span.insert(r);
    }
    let pivots = span.pivots;
    let pivot_cols: Vec<usize> = pivots.keys().copied().collect();
    let pivot_set: std::collections::BTreeSet<usize> = pivot_cols.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut x = vec![Q::zero(); ncols];
        x[free] = Q::one();
        // Solve the echelon system in decreasing pivot-column order; every
        // column to the right of a pivot is either an already-solved pivot or
        // a free column fixed above.
        for (&pc, prow) in pivots.iter().rev() {
            let mut acc = Q::zero();
            for (c, v) in prow.iter().skip(1) {
                if !x[*c].is_zero() {
                    acc += Q::from_integer(v.clone()) * x[*c].clone();
                }
            }
            x[pc] = -acc / Q::from_integer(prow[0].1.clone());
        }
        basis.push(x);
    }
    basis
}

// ---------------------------------------------------------------------------
// Large systems: modular elimination + rational reconstruction + exact check.
// ---------------------------------------------------------------------------

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    // p prime, a ≠ 0 mod p
    powmod(a, p - 2, p)
}

/// Deterministic Miller–Rabin; the fixed base set decides primality for all
/// 64-bit inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The fixed, deterministic prime sequence: descending primes just below 2⁶².
fn nth_prime_below_2_62(idx: usize) -> u64 {
    let mut found = 0usize;
    let mut n = (1u64 << 62) - 1;
    loop {
        if is_prime_u64(n) {
            if found == idx {
                return n;
            }
            found += 1;
        }
        n -= 2;
    }
}

fn reduce_row_mod_p(row: &IRow, p: u64) -> Vec<(u32, u64)> {
    let bp = BigInt::from(p);
    let mut out = Vec::with_capacity(row.len());
    for (c, v) in row {
        let r = v.mod_floor(&bp).to_u64().expect("residue fits in u64");
        if r != 0 {
            out.push((*c as u32, r));
        }
    }
    out
}

struct ModKernel {
    free_cols: Vec<usize>,
    /// kernel vectors mod p, one per free column, dense.
    vectors: Vec<Vec<u64>>,
}

/// Sparse Gaussian elimination over F_p with a fill-reducing pivot rule:
/// always pivot on the active column held by the fewest rows, breaking ties
/// toward the sparsest row.  Deterministic throughout.
fn kernel_mod_p(ncols: usize, int_rows: &[IRow], p: u64) -> ModKernel {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    let mut rows: Vec<Vec<(u32, u64)>> = int_rows.iter().map(|r| reduce_row_mod_p(r, p)).collect();
    let mut col_rows: Vec<std::collections::BTreeSet<u32>> = vec![Default::default(); ncols];
    for (ri, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].insert(ri as u32);
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> = (0..ncols)
        .filter(|&c| !col_rows[c].is_empty())
        .map(|c| Reverse((col_rows[c].len(), c as u32)))
        .collect();
    let mut pivot_done: Vec<bool> = vec![false; ncols];
    // (col, row) in elimination order
    let mut pivots: Vec<(u32, u32)> = Vec::new();

    while let Some(Reverse((cnt, c))) = heap.pop() {
        let cu = c as usize;
        if pivot_done[cu] || col_rows[cu].len() != cnt || cnt == 0 {
            if !pivot_done[cu] && !col_rows[cu].is_empty() {
                heap.push(Reverse((col_rows[cu].len(), c)));
            }
            continue;
        }
        // sparsest row holding column c, ties toward the lowest row index
        let &prow = col_rows[cu]
            .iter()
            .min_by_key(|&&r| (rows[r as usize].len(), r))
            .expect("count was nonzero");
        // scale the pivot row so the pivot entry becomes 1
        let pv = rows[prow as usize]
            .iter()
            .find(|&&(cc, _)| cc == c)
            .expect("pivot entry present")
            .1;
        let inv = invmod(pv, p);
        for e in rows[prow as usize].iter_mut() {
            e.1 = mulmod(e.1, inv, p);
        }
        // eliminate c from every other active row containing it
        let targets: Vec<u32> = col_rows[cu].iter().copied().filter(|&r| r != prow).collect();
        let prow_data = rows[prow as usize].clone();
        for t in targets {
            let f = rows[t as usize]
                .iter()
                .find(|&&(cc, _)| cc == c)
                .expect("target contains pivot column")
                .1;
            let old = std::mem::take(&mut rows[t as usize]);
            let mut merged = Vec::with_capacity(old.len() + prow_data.len());
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < prow_data.len() {
                match (old.get(i), prow_data.get(j)) {
                    (Some(&(ca, va)), Some(&(cb, vb))) if ca == cb => {
                        let v = (va + p - mulmod(f, vb, p)) % p;
                        if v != 0 {
                            merged.push((ca, v));
                        } else {
                            col_rows[ca as usize].remove(&t);
                        }
                        i += 1;
                        j += 1;
                    }
                    (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                        merged.push((ca, va));
                        i += 1;
                    }
                    (Some(_), Some(&(cb, vb))) => {
                        let v = (p - mulmod(f, vb, p)) % p;
                        if v != 0 {
                            merged.push((cb, v));
                            col_rows[cb as usize].insert(t);
                        }
                        j += 1;
                    }
                    (Some(&(ca, va)), None) => {
                        merged.push((ca, va));
                        i += 1;
                    }
                    (None, Some(&(cb, vb))) => {
                        let v = (p - mulmod(f, vb, p)) % p;
                        if v != 0 {
                            merged.push((cb, v));
                            col_rows[cb as usize].insert(t);
                        }
                        j += 1;
                    }
                    (None, None) => break,
                }
            }
            rows[t as usize] = merged;
        }
        // retire the pivot row and column
        for &(cc, _) in &prow_data {
            col_rows[cc as usize].remove(&prow);
            if !pivot_done[cc as usize] && !col_rows[cc as usize].is_empty() {
                heap.push(Reverse((col_rows[cc as usize].len(), cc)));
            }
        }
        pivot_done[cu] = true;
        pivots.push((c, prow));
    }

    let free_cols: Vec<usize> = (0..ncols).filter(|&c| !pivot_done[c]).collect();
    let mut vectors = Vec::with_capacity(free_cols.len());
    for &f in &free_cols {
        let mut x = vec![0u64; ncols];
        x[f] = 1;
        // Earlier pivot columns were eliminated from later pivot rows while
        // those were still active, so solving in reverse pivot order only
        // ever meets already-known coordinates.
        for &(c, r) in pivots.iter().rev() {
            let mut acc = 0u64;
            for &(cc, v) in &rows[r as usize] {
                if cc != c && x[cc as usize] != 0 {
                    acc = (acc + mulmod(v, x[cc as usize], p)) % p;
                }
            }
            x[c as usize] = (p - acc) % p;
        }
        vectors.push(x);
    }
    ModKernel { free_cols, vectors }
}

/// Balanced rational reconstruction: the unique p/q with |p|, q ≤ √(m/2)
/// congruent to r mod m, if one exists.
fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m / BigInt::from(2)).sqrt();
    let mut r0 = m.clone();
    let mut r1 = r.mod_floor(m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 >= bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() {
        return None;
    }
    let (num, den) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    if den > bound || !num.gcd(&den).is_one() {
        return None;
    }
    Some(Q::new(num, den))
}

/// Exact nullspace basis for systems too large for direct elimination.
///
/// Kernel vectors carry 1 at their free column, exactly like
/// [`kernel_basis`]; the two paths agree whenever the pivot structures
/// coincide.  Panics if reconstruction fails to stabilize within the fixed
/// prime budget (which would mean kernel coordinates beyond ~1000 bits).
pub fn kernel_basis_large(ncols: usize, rows: &[Vec<(usize, Q)>]) -> Vec<Vec<Q>> {
    let int_rows: Vec<IRow> = rows.iter().map(|r| to_integer_row(r)).collect();
    let int_rows: Vec<IRow> = int_rows.into_iter().filter(|r| !r.is_empty()).collect();
    if int_rows.is_empty() {
        return (0..ncols)
            .map(|f| {
                let mut x = vec![Q::zero(); ncols];
                x[f] = Q::one();
                x
            })
            .collect();
    }

    const MAX_PRIMES: usize = 32;
    let mut best: Option<ModKernel> = None;
    let mut crt: Vec<Vec<BigInt>> = Vec::new(); // per vector, per coord: residue
    let mut modulus = BigInt::one();
    let mut prime_idx = 0usize;

    while prime_idx < MAX_PRIMES {
        let p = nth_prime_below_2_62(prime_idx);
        prime_idx += 1;
        let kp = kernel_mod_p(ncols, &int_rows, p);
        match &best {
            None => {
                crt = kp.vectors.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
                modulus = BigInt::from(p);
                best = Some(kp);
            }
            Some(b) if kp.free_cols.len() < b.free_cols.len() => {
                // previous primes were unlucky (rank too low); restart
                crt = kp.vectors.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
                modulus = BigInt::from(p);
                best = Some(kp);
            }
            Some(b) if kp.free_cols.len() > b.free_cols.len() || kp.free_cols != b.free_cols => {
                // this prime is unlucky; skip it
                continue;
            }
            Some(_) => {
                // consistent structure: fold into the CRT accumulator
                let bp = BigInt::from(p);
                let minv = {
                    // modulus⁻¹ mod p
                    let mr = modulus.mod_floor(&bp).to_u64().unwrap();
                    invmod(mr, p)
                };
                for (vec_acc, vec_p) in crt.iter_mut().zip(kp.vectors.iter()) {
                    for (acc, &xp) in vec_acc.iter_mut().zip(vec_p.iter()) {
                        // acc' ≡ acc (mod modulus), ≡ xp (mod p)
                        let cur = acc.mod_floor(&bp).to_u64().unwrap();
                        let diff = (xp + p - cur) % p;
                        let t = mulmod(diff, minv, p);
                        *acc += &modulus * BigInt::from(t);
                    }
                }
                modulus *= bp;
            }
        }

        // try to land: reconstruct every coordinate and verify exactly
        let mut candidate: Vec<Vec<Q>> = Vec::with_capacity(crt.len());
        let mut ok = true;
        'outer: for vec_acc in &crt {
            let mut v = Vec::with_capacity(ncols);
            for acc in vec_acc {
                match rational_reconstruct(acc, &modulus) {
                    Some(q) => v.push(q),
                    None => {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            candidate.push(v);
        }
        if ok && candidate.iter().all(|v| verifies_kernel(rows, v)) {
            return candidate;
        }
    }
    panic!("kernel reconstruction did not stabilize within the prime budget");
}

fn verifies_kernel(rows: &[Vec<(usize, Q)>], v: &[Q]) -> bool {
    rows.iter().all(|row| {
        row.iter()
            .map(|(c, a)| a.clone() * v[*c].clone())
            .fold(Q::zero(), |x, y| x + y)
            .is_zero()
    })
}

/// Picks the direct path for small systems and the modular path for large
/// ones; both return exact, verified kernels.
pub fn kernel_basis_auto(ncols: usize, rows: &[Vec<(usize, Q)>]) -> Vec<Vec<Q>> {
    if ncols <= 600 {
        kernel_basis(ncols, rows)
    } else {
        kernel_basis_large(ncols, rows)
    }
}
