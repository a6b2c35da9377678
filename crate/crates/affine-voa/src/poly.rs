//! Multivariate polynomials over ℚ in a declared, closed parameter set.
//!
//! Every polynomial carries its variable list (e.g. `[a, b, c, d, mu]` for a
//! slice computation, or the Chevalley variable names for symbol
//! polynomials).  The variable set is fixed per computation — no dynamic
//! variable creation — so canonical forms and term orders are stable.
//!
//! Terms are kept in a sorted map from exponent vectors to nonzero rational
//! coefficients; display order is total degree descending, then
//! lexicographic, which makes the `Display` output canonical.

use crate::rat::{format_q, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A shared, ordered variable list.
pub type VarSet = Arc<Vec<String>>;

/// Builds a variable set from string names.
pub fn varset(names: &[&str]) -> VarSet {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

/// A multivariate polynomial over ℚ in the variables of a fixed `VarSet`.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamPoly {
    vars: VarSet,
    /// exponent vector (length = vars.len()) → nonzero coefficient
    terms: BTreeMap<Vec<u16>, Q>,
}

impl ParamPoly {
    pub fn zero(vars: &VarSet) -> Self {
        ParamPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &VarSet, c: Q) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, Q::one())
    }

    /// The polynomial consisting of the single variable `vars[idx]`.
    pub fn var(vars: &VarSet, idx: usize) -> Self {
        assert!(idx < vars.len(), "variable index out of range");
        let mut e = vec![0u16; vars.len()];
        e[idx] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(e, Q::one());
        p
    }

    /// Single term c·x^e.
    pub fn term(vars: &VarSet, exps: Vec<u16>, c: Q) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    /// Index of a variable by name; panics if absent (variable sets are closed).
    pub fn var_index(vars: &VarSet, name: &str) -> usize {
        vars.iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    fn same_vars(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable sets"
        );
    }

    fn insert_add(&mut self, e: Vec<u16>, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
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
        self.same_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.clone() * s;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_vars(other);
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                out.insert_add(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(&self.vars);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Evaluates at a full rational point (one value per variable).
    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    t *= point[i].clone();
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes a rational value for one variable, keeping the variable set.
    pub fn substitute(&self, idx: usize, value: &Q) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..e[idx] {
                t *= value.clone();
            }
            let mut e2 = e.clone();
            e2[idx] = 0;
            out.insert_add(e2, t);
        }
        out
    }

    /// Replaces `vars[idx]` by a polynomial over the same variable set.
    pub fn substitute_poly(&self, idx: usize, value: &Self) -> Self {
        self.same_vars(value);
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let pow = std::mem::replace(&mut e2[idx], 0);
            let t = Self::term(&self.vars, e2, c.clone()).mul(&value.pow(pow as u32));
            out = out.add(&t);
        }
        out
    }

    /// The coefficient of `vars[idx]^power`, as a polynomial with that
    /// variable's exponent zeroed out.
    pub fn coeff_of(&self, idx: usize, power: u16) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[idx] == power {
                let mut e2 = e.clone();
                e2[idx] = 0;
                out.insert_add(e2, c.clone());
            }
        }
        out
    }

    /// Largest exponent of `vars[idx]` appearing in any term.
    pub fn degree_in(&self, idx: usize) -> u16 {
        self.terms.keys().map(|e| e[idx]).max().unwrap_or(0)
    }

    /// Formal partial derivative with respect to `vars[idx]`.
    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[idx] -= 1;
            out.insert_add(e2, c.clone() * Q::from_integer(e[idx].into()));
        }
        out
    }

    /// Display/ordering key: total degree descending, then reverse-lex.
    fn ordered_terms(&self) -> Vec<(&Vec<u16>, &Q)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(ea, _), (eb, _)| {
            let da: u32 = ea.iter().map(|&x| x as u32).sum();
            let db: u32 = eb.iter().map(|&x| x as u32).sum();
            db.cmp(&da).then_with(|| eb.cmp(ea))
        });
        ts
    }

    /// Leading coefficient in the display order.
    pub fn leading_coeff(&self) -> Q {
        self.ordered_terms()
            .first()
            .map(|(_, c)| (*c).clone())
            .unwrap_or_else(Q::zero)
    }

    /// Scales so the leading coefficient is 1 (no-op on the zero polynomial).
    pub fn monic(&self) -> Self {
        let lc = self.leading_coeff();
        if lc.is_zero() {
            self.clone()
        } else {
            self.scale(&(Q::one() / lc))
        }
    }

    /// True when the two polynomials agree up to a nonzero rational factor.
    pub fn proportional(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.monic() == other.monic()
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.ordered_terms() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &exp)| exp > 0)
                .map(|(i, &exp)| {
                    if exp == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], exp)
                    }
                })
                .collect();
            let cs = format_q(&c.clone());
            let (sign, mag) = if cs.starts_with('-') {
                ("-", cs[1..].to_string())
            } else {
                ("+", cs)
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if mono.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qi;

    fn vs() -> VarSet {
        varset(&["x", "y"])
    }

    #[test]
    fn ring_basics() {
        let v = vs();
        let x = ParamPoly::var(&v, 0);
        let y = ParamPoly::var(&v, 1);
        // (x+y)^2 = x^2 + 2xy + y^2
        let sq = x.add(&y).pow(2);
        let expect = x
            .pow(2)
            .add(&x.mul(&y).scale(&qi(2)))
            .add(&y.pow(2));
        assert_eq!(sq, expect);
        assert_eq!(sq.total_degree(), 2);
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn eval_and_substitute() {
        let v = vs();
        let x = ParamPoly::var(&v, 0);
        let y = ParamPoly::var(&v, 1);
        let p = x.pow(3).sub(&y.scale(&qi(4))); // x^3 - 4y
        assert_eq!(p.eval(&[qi(2), qi(1)]), qi(4));
        let q = p.substitute(0, &qi(2)); // 8 - 4y
        assert_eq!(q.eval(&[qi(0), qi(2)]), qi(0));
    }

    #[test]
    fn coeff_extraction_and_derivative() {
        let v = varset(&["a", "l"]);
        let a = ParamPoly::var(&v, 0);
        let l = ParamPoly::var(&v, 1);
        // l^3 - 4*a*l - 4
        let p = l
            .pow(3)
            .sub(&a.mul(&l).scale(&qi(4)))
            .sub(&ParamPoly::constant(&v, qi(4)));
        assert_eq!(p.degree_in(1), 3);
        assert_eq!(p.coeff_of(1, 1), a.scale(&qi(-4)));
        assert_eq!(p.coeff_of(1, 0), ParamPoly::constant(&v, qi(-4)));
        // d/dl = 3l^2 - 4a
        let d = p.derivative(1);
        assert_eq!(d, l.pow(2).scale(&qi(3)).sub(&a.scale(&qi(4))));
    }

    #[test]
    fn display_is_canonical() {
        let v = varset(&["a", "b"]);
        let a = ParamPoly::var(&v, 0);
        let b = ParamPoly::var(&v, 1);
        let p = b.pow(2).sub(&a).add(&ParamPoly::one(&v));
        assert_eq!(p.to_string(), "b^2 - a + 1");
        assert_eq!(ParamPoly::zero(&v).to_string(), "0");
    }

    #[test]
    fn proportionality() {
        let v = vs();
        let x = ParamPoly::var(&v, 0);
        let y = ParamPoly::var(&v, 1);
        let p = x.pow(2).sub(&y);
        assert!(p.proportional(&p.scale(&qi(-3))));
        assert!(!p.proportional(&x.pow(2).add(&y)));
    }
}
