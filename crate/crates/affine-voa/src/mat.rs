//! Dense exact matrices over ℚ and over multivariate polynomials.
//!
//! Sizes here are tiny (n ≤ 5 for defining representations, 8×8 for adjoint
//! computations), so plain dense Gaussian elimination over ℚ is used for
//! rank/kernel work.  Characteristic polynomials of parametrized families are
//! expanded by the permutation sum of det(λI − M), which is division-free and
//! therefore valid over any polynomial ring.

use crate::poly::{ParamPoly, VarSet};
use crate::rat::Q;
use num_traits::{One, Zero};

/// A dense matrix over ℚ, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: Vec<Vec<Q>>,
}

impl QMatrix {
    pub fn zero(r: usize, c: usize) -> Self {
        QMatrix { rows: vec![vec![Q::zero(); c]; r] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.rows[i][i] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == c), "ragged rows");
        QMatrix { rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows(), self.ncols()), (other.nrows(), other.ncols()));
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect())
            .collect();
        QMatrix { rows }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.clone() * s.clone()).collect())
            .collect();
        QMatrix { rows }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols(), other.nrows());
        let (r, k, c) = (self.nrows(), self.ncols(), other.ncols());
        let mut out = Self::zero(r, c);
        for i in 0..r {
            for l in 0..k {
                if self.rows[i][l].is_zero() {
                    continue;
                }
                let a = self.rows[i][l].clone();
                for j in 0..c {
                    if other.rows[l][j].is_zero() {
                        continue;
                    }
                    out.rows[i][j] += a.clone() * other.rows[l][j].clone();
                }
            }
        }
        out
    }

    /// Matrix commutator AB − BA.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Q {
        (0..self.nrows().min(self.ncols()))
            .map(|i| self.rows[i][i].clone())
            .fold(Q::zero(), |a, b| a + b)
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = (self.nrows(), self.ncols());
        let mut out = Self::zero(c, r);
        for i in 0..r {
            for j in 0..c {
                out.rows[j][i] = self.rows[i][j].clone();
            }
        }
        out
    }

    /// Row-echelon rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.rows.clone();
        let (m, n) = (a.len(), self.ncols());
        let mut rank = 0;
        for col in 0..n {
            if rank >= m {
                break;
            }
            let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let inv = Q::one() / a[rank][col].clone();
            for j in col..n {
                a[rank][j] = a[rank][j].clone() * inv.clone();
            }
            for r in 0..m {
                if r != rank && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in col..n {
                        let upd = a[rank][j].clone() * f.clone();
                        a[r][j] = a[r][j].clone() - upd;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the right kernel {v : Av = 0}, via RREF back-substitution.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let mut a = self.rows.clone();
        let (m, n) = (a.len(), self.ncols());
        let mut pivot_col_of_row = Vec::new();
        let mut rank = 0;
        for col in 0..n {
            if rank >= m {
                break;
            }
            let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let inv = Q::one() / a[rank][col].clone();
            for j in col..n {
                a[rank][j] = a[rank][j].clone() * inv.clone();
            }
            for r in 0..m {
                if r != rank && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in col..n {
                        let upd = a[rank][j].clone() * f.clone();
                        a[r][j] = a[r][j].clone() - upd;
                    }
                }
            }
            pivot_col_of_row.push(col);
            rank += 1;
        }
        let pivot_set: std::collections::BTreeSet<usize> =
            pivot_col_of_row.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..n {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Q::zero(); n];
            v[free] = Q::one();
            for (r, &pc) in pivot_col_of_row.iter().enumerate() {
                v[pc] = -a[r][free].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Exact inverse by Gauss–Jordan on the augmented matrix; `None` if singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        let n = self.nrows();
        assert_eq!(n, self.ncols());
        let mut a = self.rows.clone();
        let mut inv = QMatrix::identity(n).rows;
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            inv.swap(col, p);
            let s = Q::one() / a[col][col].clone();
            for j in 0..n {
                a[col][j] = a[col][j].clone() * s.clone();
                inv[col][j] = inv[col][j].clone() * s.clone();
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for j in 0..n {
                        let u = a[col][j].clone() * f.clone();
                        a[r][j] = a[r][j].clone() - u;
                        let u = inv[col][j].clone() * f.clone();
                        inv[r][j] = inv[r][j].clone() - u;
                    }
                }
            }
        }
        Some(QMatrix { rows: inv })
    }

    /// Monic characteristic polynomial det(λI − A) by Faddeev–LeVerrier.
    /// Returns coefficients `c[0..=n]` with p(λ) = Σ c[i] λ^i and c[n] = 1.
    pub fn char_poly(&self) -> Vec<Q> {
        let n = self.nrows();
        assert_eq!(n, self.ncols(), "characteristic polynomial of a square matrix");
        // M_1 = A, c_1 = tr M_1; M_k = A(M_{k-1} − c_{k-1} I), c_k = tr(M_k)/k;
        // then det(λI − A) = λ^n − c_1 λ^{n−1} − … − c_n.
        let mut coeffs = vec![Q::zero(); n + 1];
        coeffs[n] = Q::one();
        let mut mk = self.clone();
        let mut ck = mk.trace();
        if n > 0 {
            coeffs[n - 1] = -ck.clone();
        }
        for k in 2..=n {
            let shifted = mk.sub(&QMatrix::identity(n).scale(&ck));
            mk = self.mul(&shifted);
            ck = mk.trace() / Q::from_integer(k.into());
            coeffs[n - k] = -ck.clone();
        }
        coeffs
    }
}

/// A square matrix of polynomials in declared parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMatrix {
    pub vars: VarSet,
    pub rows: Vec<Vec<ParamPoly>>,
}

impl PMatrix {
    pub fn zero(vars: &VarSet, n: usize) -> Self {
        PMatrix {
            vars: vars.clone(),
            rows: vec![vec![ParamPoly::zero(vars); n]; n],
        }
    }

    pub fn from_rows(vars: &VarSet, rows: Vec<Vec<ParamPoly>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "square matrices only");
        PMatrix { vars: vars.clone(), rows }
    }

    /// Lifts a rational matrix to constant polynomials.
    pub fn from_q(vars: &VarSet, m: &QMatrix) -> Self {
        let rows = m
            .rows
            .iter()
            .map(|r| r.iter().map(|x| ParamPoly::constant(vars, x.clone())).collect())
            .collect();
        PMatrix { vars: vars.clone(), rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            .collect();
        PMatrix { vars: self.vars.clone(), rows }
    }

    pub fn scale(&self, s: &ParamPoly) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.mul(s)).collect())
            .collect();
        PMatrix { vars: self.vars.clone(), rows }
    }

    pub fn trace(&self) -> ParamPoly {
        let mut t = ParamPoly::zero(&self.vars);
        for i in 0..self.n() {
            t = t.add(&self.rows[i][i]);
        }
        t
    }

    /// Substitutes rational values for all parameters, yielding a ℚ-matrix.
    pub fn eval(&self, point: &[Q]) -> QMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|p| p.eval(point)).collect())
            .collect();
        QMatrix { rows }
    }

    /// det(λI − M) expanded as a permutation sum (division-free), where λ is
    /// the variable `lambda_idx` of the shared variable set.  Entries of `M`
    /// must not involve λ.
    pub fn char_poly(&self, lambda_idx: usize) -> ParamPoly {
        let n = self.n();
        let lambda = ParamPoly::var(&self.vars, lambda_idx);
        for row in &self.rows {
            for e in row {
                assert_eq!(e.degree_in(lambda_idx), 0, "entries must be λ-free");
            }
        }
        // B = λI − M
        let mut b = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut e = self.rows[i][j].neg();
                if i == j {
                    e = e.add(&lambda);
                }
                row.push(e);
            }
            b.push(row);
        }
        let mut det = ParamPoly::zero(&self.vars);
        for (perm, sign) in permutations_with_sign(n) {
            let mut prod = ParamPoly::one(&self.vars);
            for (i, &j) in perm.iter().enumerate() {
                if b[i][j].is_zero() {
                    prod = ParamPoly::zero(&self.vars);
                    break;
                }
                prod = prod.mul(&b[i][j]);
            }
            det = if sign > 0 { det.add(&prod) } else { det.sub(&prod) };
        }
        det
    }
}

/// All permutations of {0..n} with parity signs, in a deterministic order.
fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, sign: &mut i8, out: &mut Vec<(Vec<usize>, i8)>) {
        if k == 1 {
            out.push((cur.clone(), *sign));
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, sign, out);
            if i < k - 1 {
                if k % 2 == 0 {
                    cur.swap(i, k - 1);
                } else {
                    cur.swap(0, k - 1);
                }
                *sign = -*sign;
            }
        }
    }
    if n == 0 {
        out.push((Vec::new(), 1));
    } else {
        let mut sign = 1i8;
        heap(n, &mut cur, &mut sign, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::varset;
    use crate::rat::{qi, qr};

    fn qm(entries: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            entries
                .iter()
                .map(|r| r.iter().map(|&x| qi(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        // Check A v = 0.
        for row in &m.rows {
            let dot: Q = row
                .iter()
                .zip(&ker[0])
                .map(|(a, b)| a.clone() * b.clone())
                .fold(Q::zero(), |a, b| a + b);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn char_poly_numeric() {
        // diag(1,1) -> (λ−1)^2 = λ^2 − 2λ + 1
        let m = qm(&[&[1, 0], &[0, 1]]);
        assert_eq!(m.char_poly(), vec![qi(1), qi(-2), qi(1)]);
        // companion-style check on a 3×3 with known eigenvalues 0,1,2:
        let m = qm(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        // λ(λ−1)(λ−2) = λ^3 − 3λ^2 + 2λ
        assert_eq!(m.char_poly(), vec![qi(0), qi(2), qi(-3), qi(1)]);
    }

    #[test]
    fn char_poly_fractions() {
        let m = QMatrix::from_rows(vec![
            vec![qr(1, 2), qi(0)],
            vec![qi(0), qr(-1, 2)],
        ]);
        // (λ−1/2)(λ+1/2) = λ^2 − 1/4
        assert_eq!(m.char_poly(), vec![qr(-1, 4), qi(0), qi(1)]);
    }

    #[test]
    fn parametric_char_poly_matches_numeric() {
        let vars = varset(&["t", "l"]);
        let t = ParamPoly::var(&vars, 0);
        // M = [[t, 1], [0, -t]]
        let m = PMatrix::from_rows(
            &vars,
            vec![
                vec![t.clone(), ParamPoly::one(&vars)],
                vec![ParamPoly::zero(&vars), t.neg()],
            ],
        );
        let cp = m.char_poly(1); // λ^2 − t^2
        let l = ParamPoly::var(&vars, 1);
        assert_eq!(cp, l.pow(2).sub(&t.pow(2)));
        // agree with the numeric Faddeev–LeVerrier route at t = 5
        let num = m.eval(&[qi(5), qi(0)]).char_poly();
        let back = cp.substitute(0, &qi(5));
        for (i, c) in num.iter().enumerate() {
            assert_eq!(&back.coeff_of(1, i as u16).eval(&[qi(0), qi(0)]), c);
        }
    }

    #[test]
    fn permutation_signs_sum_to_zero() {
        // Σ sign over S_n = 0 for n ≥ 2 (equal counts of even/odd).
        for n in 2..=4 {
            let s: i32 = permutations_with_sign(n).iter().map(|(_, s)| *s as i32).sum();
            assert_eq!(s, 0);
        }
        assert_eq!(permutations_with_sign(3).len(), 6);
    }
}
