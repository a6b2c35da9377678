//! The symbol algebra of the vacuum module and exact variety certificates.
//!
//! Dropping every mode of index ≤ −2 from a vector and reading the surviving
//! depth-one modes as commuting variables lands in a polynomial ring with one
//! variable per Chevalley basis element — the coordinate ring of 𝔤 once 𝔤*
//! is identified with 𝔤 through the invariant form.  The zero-mode action
//! descends to the Kirillov–Kostant Poisson bracket, so the symbols of an
//! ideal's generators can be saturated into a 𝔤-stable family and evaluated
//! class by class over the Jordan decomposition of sl₃.  A certificate
//! records, per class, either identical vanishing (confirmed on random
//! conjugates) or an explicit nonvanishing witness.

use crate::lie::{adjoint_orbit_sample, basis, structure_table, BasisElement, LieElement};
use crate::linalg::SpanBuilder;
use crate::mat::QMatrix;
use crate::poly::{varset, ParamPoly, VarSet};
use crate::rat::{qi, qr, Q};
use crate::vertex::PBWVector;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// One commuting variable per Chevalley basis element, in canonical basis
/// order; shared per rank so polynomial operations can compare cheaply.
pub fn symbol_vars(n: usize) -> VarSet {
    static SETS: OnceLock<Mutex<HashMap<usize, VarSet>>> = OnceLock::new();
    let m = SETS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = m.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| {
            let names: Vec<String> = basis(n).iter().map(|b| b.to_string()).collect();
            Arc::new(names)
        })
        .clone()
}

fn var_index(n: usize, b: BasisElement) -> usize {
    basis(n).iter().position(|&x| x == b).expect("basis element")
}

/// Rank back from the variable count n² − 1.
fn rank_of(vars: &VarSet) -> usize {
    let mut n = 2usize;
    while n * n - 1 < vars.len() {
        n += 1;
    }
    assert_eq!(n * n - 1, vars.len(), "not a symbol variable set");
    n
}

/// Image of a vector in the symbol algebra: monomials containing a mode of
/// index ≤ −2 vanish, and b(−1) maps to the variable named after b.
pub fn symbol(v: &PBWVector) -> ParamPoly {
    let vars = symbol_vars(v.n);
    let mut out = ParamPoly::zero(&vars);
    'terms: for (m, c) in v.terms() {
        let mut exps = vec![0u16; vars.len()];
        for (g, depth, pow) in m.factors() {
            if *depth >= 2 {
                continue 'terms;
            }
            exps[var_index(v.n, *g)] += *pow as u16;
        }
        out = out.add(&ParamPoly::term(&vars, exps, c.clone()));
    }
    out
}

/// The degree-one symbol of a single basis element.
pub fn linear_symbol(n: usize, b: BasisElement) -> ParamPoly {
    let vars = symbol_vars(n);
    ParamPoly::var(&vars, var_index(n, b))
}

/// Kirillov–Kostant bracket with a degree-one first argument, extended to
/// arbitrary second arguments by the Leibniz rule.  On generators it returns
/// the symbol of the Lie bracket, which matches the zero-mode action on
/// symbols.
pub fn poisson_bracket(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    assert!(
        a.total_degree() == 1 && a.terms().all(|(e, _)| e.iter().sum::<u16>() == 1),
        "first argument must be linear without constant term"
    );
    let vars = a.vars().clone();
    let n = rank_of(&vars);
    let bs = basis(n);
    let tab = structure_table(n);
    let mut out = ParamPoly::zero(&vars);
    for (ea, ca) in a.terms() {
        let gi = ea.iter().position(|&x| x == 1).unwrap();
        for (eb, cb) in b.terms() {
            for i in 0..eb.len() {
                if eb[i] == 0 {
                    continue;
                }
                let mut rest = eb.clone();
                rest[i] -= 1;
                let mult = ca.clone() * cb.clone() * qi(eb[i] as i64);
                for (z, s) in tab.bracket(bs[gi], bs[i]) {
                    let mut e = rest.clone();
                    e[var_index(n, *z)] += 1;
                    out = out.add(&ParamPoly::term(&vars, e, mult.clone() * s.clone()));
                }
            }
        }
    }
    out
}

/// The six Jordan classes of sl₃, each with a parametrized representative.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ClassTag {
    Zero,
    MinNilpotent,
    RegularNilpotent,
    SemisimpleSheet,
    MixedSheet,
    GenericCartan,
}

impl ClassTag {
    pub fn name(self) -> &'static str {
        match self {
            ClassTag::Zero => "zero",
            ClassTag::MinNilpotent => "min_nilpotent",
            ClassTag::RegularNilpotent => "regular_nilpotent",
            ClassTag::SemisimpleSheet => "semisimple_sheet",
            ClassTag::MixedSheet => "mixed_sheet",
            ClassTag::GenericCartan => "generic_cartan",
        }
    }
}

/// A parametrized class representative: a matrix with polynomial entries in
/// the class parameters.
pub struct ClassRep {
    pub tag: ClassTag,
    pub vars: VarSet,
    pub mat: Vec<Vec<ParamPoly>>,
}

impl ClassRep {
    /// The representative at a rational parameter point.
    pub fn at(&self, point: &[Q]) -> QMatrix {
        let rows = self
            .mat
            .iter()
            .map(|row| row.iter().map(|p| p.eval(point)).collect())
            .collect();
        QMatrix::from_rows(rows)
    }

    /// A parameter point at which the representative is as generic as its
    /// class allows: parameters are nonzero, distinct, and Cartan samples are
    /// regular.
    pub fn sample_point(&self, rng: &mut ChaCha8Rng) -> Vec<Q> {
        loop {
            let pt: Vec<Q> = (0..self.vars.len())
                .map(|_| qr(rng.gen_range(1..=9), rng.gen_range(1..=4)))
                .collect();
            match self.tag {
                ClassTag::GenericCartan => {
                    // diag(t₁, t₂−t₁, −t₂) must have distinct eigenvalues
                    let (a, b) = (pt[0].clone(), pt[1].clone());
                    let e1 = a.clone();
                    let e2 = b.clone() - a.clone();
                    let e3 = -b;
                    if e1 != e2 && e2 != e3 && e1 != e3 {
                        return pt;
                    }
                }
                _ => return pt,
            }
        }
    }
}

fn const_entry(vars: &VarSet, v: i64) -> ParamPoly {
    ParamPoly::constant(vars, qi(v))
}

/// Representatives for the Jordan-class decomposition
/// 0, G·f_θ, G·(f₁+f₂), G·ℂ*(h₁−h₂), G·(ℂ*(h₁−h₂)+f_θ), G·𝔥ʳᵉᵍ.
pub fn class_reps(n: usize) -> Vec<ClassRep> {
    assert_eq!(n, 3, "class decomposition is rank-two specific");
    let none = varset(&[]);
    let t = varset(&["t"]);
    let tt = varset(&["t1", "t2"]);
    let zero3 = |vars: &VarSet| vec![vec![ParamPoly::zero(vars); 3]; 3];

    let mut reps = Vec::new();

    reps.push(ClassRep { tag: ClassTag::Zero, vars: none.clone(), mat: zero3(&none) });

    let mut m = zero3(&none);
    m[2][0] = const_entry(&none, 1);
    reps.push(ClassRep { tag: ClassTag::MinNilpotent, vars: none.clone(), mat: m });

    let mut m = zero3(&none);
    m[1][0] = const_entry(&none, 1);
    m[2][1] = const_entry(&none, 1);
    reps.push(ClassRep { tag: ClassTag::RegularNilpotent, vars: none, mat: m });

    // t·(h₁ − h₂) = diag(t, −2t, t)
    let tv = ParamPoly::var(&t, 0);
    let mut m = zero3(&t);
    m[0][0] = tv.clone();
    m[1][1] = tv.scale(&qi(-2));
    m[2][2] = tv.clone();
    reps.push(ClassRep { tag: ClassTag::SemisimpleSheet, vars: t.clone(), mat: m.clone() });

    m[2][0] = ParamPoly::one(&t);
    reps.push(ClassRep { tag: ClassTag::MixedSheet, vars: t, mat: m });

    // t₁h₁ + t₂h₂ = diag(t₁, t₂−t₁, −t₂)
    let (a, b) = (ParamPoly::var(&tt, 0), ParamPoly::var(&tt, 1));
    let mut m = zero3(&tt);
    m[0][0] = a.clone();
    m[1][1] = b.sub(&a);
    m[2][2] = ParamPoly::var(&tt, 1).scale(&qi(-1));
    reps.push(ClassRep { tag: ClassTag::GenericCartan, vars: tt, mat: m });

    reps
}

/// Evaluates a symbol polynomial on a parametrized representative: the
/// variable named after b takes the value (X|b) under the invariant form,
/// which for matrices is the trace pairing.
pub fn evaluate(p: &ParamPoly, rep: &ClassRep) -> ParamPoly {
    let n = rank_of(p.vars());
    assert_eq!(rep.mat.len(), n);
    let vals: Vec<ParamPoly> = basis(n)
        .iter()
        .map(|b| {
            let bm = b.matrix(n);
            let mut acc = ParamPoly::zero(&rep.vars);
            for r in 0..n {
                for c in 0..n {
                    if !bm.rows[c][r].is_zero() {
                        acc = acc.add(&rep.mat[r][c].scale(&bm.rows[c][r]));
                    }
                }
            }
            acc
        })
        .collect();
    let mut out = ParamPoly::zero(&rep.vars);
    for (e, coeff) in p.terms() {
        let mut term = ParamPoly::constant(&rep.vars, coeff.clone());
        for (i, &pow) in e.iter().enumerate() {
            if pow > 0 {
                term = term.mul(&vals[i].pow(pow as u32));
            }
        }
        out = out.add(&term);
    }
    out
}

/// Evaluates a symbol polynomial at an explicit rational matrix.
pub fn evaluate_at(p: &ParamPoly, x: &QMatrix) -> Q {
    let n = rank_of(p.vars());
    assert_eq!(x.nrows(), n);
    let vals: Vec<Q> = basis(n)
        .iter()
        .map(|b| x.mul(&b.matrix(n)).trace())
        .collect();
    let mut out = Q::zero();
    for (e, coeff) in p.terms() {
        let mut term = coeff.clone();
        for (i, &pow) in e.iter().enumerate() {
            for _ in 0..pow {
                term *= vals[i].clone();
            }
        }
        out += term;
    }
    out
}

/// Closed subvarieties of sl₃ with exact membership predicates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarietyTag {
    NilpotentCone,
    MinOrbitClosure,
    SemisimpleSheetClosure,
    MixedSheetClosure,
}

/// Exact membership for 3×3 traceless rational matrices.
///
/// With char(x) = λ³ + pλ + q: the nilpotent cone is p = q = 0; the minimal
/// orbit closure is x² = 0; the closure of G·ℂ*(h₁−h₂) needs char(x) =
/// (λ−t)²(λ+2t) together with rank(x − t) ≤ 1 (the diagonalizable similarity
/// class); the closure of G·(ℂ*(h₁−h₂)+f_θ) is the vanishing of the
/// discriminant 4p³ + 27q².
pub fn membership(x: &QMatrix, target: VarietyTag) -> bool {
    assert_eq!(x.nrows(), 3, "membership predicates are rank-two specific");
    assert!(x.trace().is_zero(), "membership expects a traceless matrix");
    let coeffs = x.char_poly();
    let p = coeffs[1].clone();
    let q = coeffs[0].clone();
    assert!(coeffs[2].is_zero());
    match target {
        VarietyTag::NilpotentCone => p.is_zero() && q.is_zero(),
        VarietyTag::MinOrbitClosure => x.mul(x).is_zero(),
        VarietyTag::SemisimpleSheetClosure => {
            let t = if p.is_zero() && q.is_zero() {
                Q::zero()
            } else if !p.is_zero() {
                -qi(3) * q.clone() / (qi(2) * p.clone())
            } else {
                return false;
            };
            let tt = t.clone() * t.clone();
            if -qi(3) * tt.clone() != p || qi(2) * tt * t.clone() != q {
                return false;
            }
            let shifted = x.sub(&QMatrix::identity(3).scale(&t));
            shifted.rank() <= 1
        }
        VarietyTag::MixedSheetClosure => {
            let disc = qi(4) * p.clone() * p.clone() * p + qi(27) * q.clone() * q;
            disc.is_zero()
        }
    }
}

/// Saturates a symbol family under Poisson brackets with all degree-one
/// generators; returns a linearly independent spanning list.  Terminates
/// because brackets with linear elements preserve total degree, so everything
/// stays inside one finite-dimensional polynomial space.
pub fn adjoint_closure(symbols: &[ParamPoly]) -> Vec<ParamPoly> {
    let Some(first) = symbols.iter().find(|p| !p.is_zero()) else {
        return Vec::new();
    };
    let vars = first.vars().clone();
    let n = rank_of(&vars);
    let linear: Vec<ParamPoly> = basis(n).iter().map(|&b| linear_symbol(n, b)).collect();
    let mut cols: HashMap<Vec<u16>, usize> = HashMap::new();
    let row_of = |p: &ParamPoly, cols: &mut HashMap<Vec<u16>, usize>| {
        let mut row = Vec::with_capacity(p.num_terms());
        for (e, c) in p.terms() {
            let next = cols.len();
            let col = *cols.entry(e.clone()).or_insert(next);
            row.push((col, c.clone()));
        }
        row
    };
    let mut span = SpanBuilder::new();
    let mut keep: Vec<ParamPoly> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for p in symbols {
        if p.is_zero() {
            continue;
        }
        let row = row_of(p, &mut cols);
        if span.insert(&row) {
            keep.push(p.clone());
            queue.push_back(keep.len() - 1);
        }
    }
    while let Some(i) = queue.pop_front() {
        for l in &linear {
            let b = poisson_bracket(l, &keep[i]);
            if b.is_zero() {
                continue;
            }
            let row = row_of(&b, &mut cols);
            if span.insert(&row) {
                keep.push(b);
                queue.push_back(keep.len() - 1);
            }
        }
    }
    keep
}

/// Verdict for one Jordan class inside a variety certificate.
pub struct ClassVerdict {
    pub tag: ClassTag,
    /// every saturated symbol vanishes identically on the class family
    pub vanishes: bool,
    /// canonical form of a nonvanishing evaluation, when one exists
    pub witness: Option<String>,
    /// random conjugates checked for vanishing classes
    pub samples_checked: u32,
}

/// Class-by-class evaluation table for the symbols of an ideal's generators.
pub struct VarietyCertificate {
    pub closure_size: usize,
    pub verdicts: Vec<ClassVerdict>,
}

impl VarietyCertificate {
    pub fn verdict(&self, tag: ClassTag) -> &ClassVerdict {
        self.verdicts.iter().find(|v| v.tag == tag).expect("verdict")
    }
}

/// Saturates the generator symbols and evaluates the whole family on every
/// Jordan class.  Vanishing verdicts are cross-checked on `samples` adjoint
/// conjugates of random class members; nonvanishing verdicts carry a witness.
pub fn variety_certificate(n: usize, gens: &[PBWVector], seed: u64, samples: u32) -> VarietyCertificate {
    let symbols: Vec<ParamPoly> = gens.iter().map(symbol).collect();
    let closure = adjoint_closure(&symbols);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verdicts = Vec::new();
    for rep in class_reps(n) {
        let mut witness = None;
        for p in &closure {
            let val = evaluate(p, &rep);
            if !val.is_zero() {
                witness = Some(val.to_string());
                break;
            }
        }
        let vanishes = witness.is_none();
        let mut samples_checked = 0;
        if vanishes {
            for _ in 0..samples {
                let point = rep.sample_point(&mut rng);
                let member = rep.at(&point);
                let conj = adjoint_orbit_sample(&member, n, rng.gen());
                for p in &closure {
                    assert!(
                        evaluate_at(p, &conj).is_zero(),
                        "saturated symbol fails to vanish on a conjugate of {:?}",
                        rep.tag
                    );
                }
                samples_checked += 1;
            }
        }
        verdicts.push(ClassVerdict { tag: rep.tag, vanishes, witness, samples_checked });
    }
    VarietyCertificate { closure_size: closure.len(), verdicts }
}

/// Dimension of a Jordan class: orbit dimension at a generic parameter point
/// plus the number of free parameters.
pub fn class_dimension(rep: &ClassRep, seed: u64) -> usize {
    let n = rep.mat.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point = rep.sample_point(&mut rng);
    let x = LieElement::from_matrix(n, &rep.at(&point));
    let ad = crate::lie::ad_matrix(&x);
    let dim_g = n * n - 1;
    let centralizer = ad.kernel().len();
    (dim_g - centralizer) + rep.vars.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qr;
    use crate::vertex::{from_modes, Straightener};
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

    fn mono(pairs: &[(BasisElement, u16)], c: i64) -> ParamPoly {
        let vars = symbol_vars(3);
        let mut e = vec![0u16; vars.len()];
        for (b, pow) in pairs {
            e[var_index(3, *b)] += pow;
        }
        ParamPoly::term(&vars, e, qi(c))
    }

    fn p1() -> ParamPoly {
        mono(&[(E(1, 2), 2), (E(2, 3), 1)], -1)
            .add(&mono(&[(E(1, 2), 1), (E(1, 3), 1), (H(2), 1)], 1))
            .add(&mono(&[(E(1, 3), 2), (F(2, 3), 1)], 1))
    }

    fn p2() -> ParamPoly {
        mono(&[(E(1, 2), 1), (E(2, 3), 2)], 1)
            .add(&mono(&[(E(2, 3), 1), (E(1, 3), 1), (H(1), 1)], 1))
            .add(&mono(&[(E(1, 3), 2), (F(1, 2), 1)], -1))
    }

    fn p3() -> ParamPoly {
        mono(&[(E(1, 3), 1), (H(1), 1), (H(2), 1)], -1)
            .add(&mono(&[(E(1, 2), 1), (E(1, 3), 1), (F(1, 2), 1)], -1))
            .add(&mono(&[(E(1, 3), 2), (F(1, 3), 1)], -1))
            .add(&mono(&[(E(1, 2), 1), (E(2, 3), 1), (H(1), 1)], 2))
            .add(&mono(&[(E(1, 2), 1), (E(2, 3), 1), (H(2), 1)], 1))
            .add(&mono(&[(E(2, 3), 1), (E(1, 3), 1), (F(2, 3), 1)], 2))
    }

    fn p4() -> ParamPoly {
        mono(&[(H(1), 2), (H(2), 1)], 1)
            .add(&mono(&[(H(1), 1), (H(2), 2)], 1))
            .add(&mono(&[(E(1, 2), 1), (E(2, 3), 1), (F(1, 3), 1)], 3))
            .add(&mono(&[(E(1, 3), 1), (F(1, 2), 1), (F(2, 3), 1)], -3))
            .add(&mono(&[(E(1, 2), 1), (F(1, 2), 1), (H(1), 1)], -1))
            .add(&mono(&[(E(1, 3), 1), (F(1, 3), 1), (H(1), 1)], 1))
            .add(&mono(&[(E(1, 3), 1), (F(1, 3), 1), (H(2), 1)], 1))
            .add(&mono(&[(E(2, 3), 1), (F(2, 3), 1), (H(2), 1)], -1))
    }

    #[test]
    fn symbols_of_the_generators() {
        assert_eq!(symbol(&u1()), p1());
        // the depth-two term of the second generator is dropped
        assert_eq!(symbol(&u2()), p2());
        let deep = from_modes(3, qi(-1), &[(E(1, 2), -2)]);
        assert!(symbol(&deep).is_zero());
    }

    #[test]
    fn bracket_of_linear_generators_is_the_lie_bracket() {
        let e1 = linear_symbol(3, E(1, 2));
        let f1 = linear_symbol(3, F(1, 2));
        let h1 = linear_symbol(3, H(1));
        assert_eq!(poisson_bracket(&e1, &f1), h1);
        assert_eq!(poisson_bracket(&f1, &e1), h1.scale(&qi(-1)));
    }

    #[test]
    fn bracket_matches_zero_mode_action() {
        // weight of the first generator under h₁ is ⟨2α₁+α₂, h₁⟩ = 3
        let h1 = linear_symbol(3, H(1));
        assert_eq!(poisson_bracket(&h1, &p1()), p1().scale(&qi(3)));
        // lowering by f₁ reproduces the symbol of the zero-mode image
        let mut st = Straightener::new(3, qi(-1));
        let lowered = st.apply(F(1, 2), 0, &u1());
        let f1 = linear_symbol(3, F(1, 2));
        assert_eq!(poisson_bracket(&f1, &p1()), symbol(&lowered));
        assert_eq!(symbol(&lowered), p3());
        // one more lowering reaches the witness with pure-Cartan part
        // h₁h₂(h₁+h₂); the two lowering orders agree because [f₁, f_θ] = 0
        let inner = st.apply(F(1, 3), 0, &u1());
        let lowered2 = st.apply(F(1, 2), 0, &inner);
        assert_eq!(symbol(&lowered2), p4());
        let f_th = linear_symbol(3, F(1, 3));
        assert_eq!(poisson_bracket(&f_th, &p3()), p4());
    }

    #[test]
    fn symbol_is_multiplicative_on_depth_one_vectors() {
        let k = qi(-1);
        let w1 = [(E(1, 2), -1), (F(2, 3), -1)];
        let w2 = [(H(1), -1), (E(1, 3), -1), (E(1, 2), -1)];
        let combined: Vec<(BasisElement, i32)> = w1.iter().chain(w2.iter()).copied().collect();
        let lhs = symbol(&from_modes(3, k.clone(), &combined));
        let rhs = symbol(&from_modes(3, k.clone(), &w1)).mul(&symbol(&from_modes(3, k, &w2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn class_evaluations_pin_the_proof_values() {
        let reps = class_reps(3);
        let regular = reps.iter().find(|r| r.tag == ClassTag::RegularNilpotent).unwrap();
        let val = evaluate(&p1(), regular);
        assert_eq!(val, ParamPoly::constant(&regular.vars, qi(-1)));

        // p₄ on t₁h₁ + t₂h₂ equals (h|h₁)(h|h₂)(h|h₁+h₂) as a two-parameter
        // polynomial identity
        let cartan = reps.iter().find(|r| r.tag == ClassTag::GenericCartan).unwrap();
        let (t1, t2) = (ParamPoly::var(&cartan.vars, 0), ParamPoly::var(&cartan.vars, 1));
        let pair_h1 = t1.scale(&qi(2)).sub(&t2);
        let pair_h2 = t2.scale(&qi(2)).sub(&t1);
        let pair_sum = t1.add(&t2);
        assert_eq!(evaluate(&p4(), cartan), pair_h1.mul(&pair_h2).mul(&pair_sum));

        // p₃ on the mixed family is a nonzero multiple of t²
        let mixed = reps.iter().find(|r| r.tag == ClassTag::MixedSheet).unwrap();
        let t = ParamPoly::var(&mixed.vars, 0);
        assert_eq!(evaluate(&p3(), mixed), t.mul(&t).scale(&qi(9)));

        // all four vanish identically on the semisimple family
        let sheet = reps.iter().find(|r| r.tag == ClassTag::SemisimpleSheet).unwrap();
        for p in [p1(), p2(), p3(), p4()] {
            assert!(evaluate(&p, sheet).is_zero());
        }
    }

    #[test]
    fn evaluation_is_a_ring_map() {
        let reps = class_reps(3);
        let mixed = reps.iter().find(|r| r.tag == ClassTag::MixedSheet).unwrap();
        let prod = evaluate(&p1().mul(&p2()), mixed);
        assert_eq!(prod, evaluate(&p1(), mixed).mul(&evaluate(&p2(), mixed)));
        let x = mixed.at(&[qr(5, 3)]);
        assert_eq!(
            evaluate_at(&p1().mul(&p2()), &x),
            evaluate_at(&p1(), &x) * evaluate_at(&p2(), &x)
        );
    }

    #[test]
    fn membership_predicates_sort_the_representatives() {
        let f_theta = ClassRep::at(
            &class_reps(3).into_iter().find(|r| r.tag == ClassTag::MinNilpotent).unwrap(),
            &[],
        );
        assert!(membership(&f_theta, VarietyTag::NilpotentCone));
        assert!(membership(&f_theta, VarietyTag::MinOrbitClosure));
        assert!(membership(&f_theta, VarietyTag::SemisimpleSheetClosure));
        assert!(membership(&f_theta, VarietyTag::MixedSheetClosure));

        let reg = ClassRep::at(
            &class_reps(3).into_iter().find(|r| r.tag == ClassTag::RegularNilpotent).unwrap(),
            &[],
        );
        assert!(membership(&reg, VarietyTag::NilpotentCone));
        assert!(!membership(&reg, VarietyTag::MinOrbitClosure));
        assert!(!membership(&reg, VarietyTag::SemisimpleSheetClosure));
        assert!(membership(&reg, VarietyTag::MixedSheetClosure));

        let sheet_rep = class_reps(3).into_iter().find(|r| r.tag == ClassTag::SemisimpleSheet).unwrap();
        let semi = sheet_rep.at(&[qi(3)]);
        assert!(membership(&semi, VarietyTag::SemisimpleSheetClosure));
        assert!(membership(&semi, VarietyTag::MixedSheetClosure));
        assert!(!membership(&semi, VarietyTag::NilpotentCone));

        let mixed_rep = class_reps(3).into_iter().find(|r| r.tag == ClassTag::MixedSheet).unwrap();
        let mixed = mixed_rep.at(&[qr(7, 2)]);
        assert!(membership(&mixed, VarietyTag::MixedSheetClosure));
        assert!(!membership(&mixed, VarietyTag::SemisimpleSheetClosure));

        let cartan_rep = class_reps(3).into_iter().find(|r| r.tag == ClassTag::GenericCartan).unwrap();
        let h = cartan_rep.at(&[qi(1), qi(5)]);
        assert!(!membership(&h, VarietyTag::MixedSheetClosure));
    }

    #[test]
    fn membership_is_conjugation_invariant() {
        let mixed_rep = class_reps(3).into_iter().find(|r| r.tag == ClassTag::MixedSheet).unwrap();
        let x = mixed_rep.at(&[qr(4, 5)]);
        for seed in 0..10 {
            let y = adjoint_orbit_sample(&x, 3, seed);
            assert!(membership(&y, VarietyTag::MixedSheetClosure));
            assert!(!membership(&y, VarietyTag::SemisimpleSheetClosure));
        }
    }

    #[test]
    fn certificate_for_level_minus_one() {
        let cert = variety_certificate(3, &[u1(), u2()], 11, 20);
        assert_eq!(cert.closure_size, 20);
        for (tag, vanishes) in [
            (ClassTag::Zero, true),
            (ClassTag::MinNilpotent, true),
            (ClassTag::SemisimpleSheet, true),
            (ClassTag::RegularNilpotent, false),
            (ClassTag::MixedSheet, false),
            (ClassTag::GenericCartan, false),
        ] {
            let v = cert.verdict(tag);
            assert_eq!(v.vanishes, vanishes, "verdict for {}", tag.name());
            assert_eq!(v.witness.is_some(), !vanishes);
            if vanishes {
                assert_eq!(v.samples_checked, 20);
            }
        }
    }

    #[test]
    fn empty_generators_vanish_everywhere() {
        let cert = variety_certificate(3, &[], 5, 3);
        assert_eq!(cert.closure_size, 0);
        assert!(cert.verdicts.iter().all(|v| v.vanishes));
    }

    #[test]
    fn class_dimensions() {
        let dims: HashMap<ClassTag, usize> = class_reps(3)
            .iter()
            .map(|r| (r.tag, class_dimension(r, 23)))
            .collect();
        assert_eq!(dims[&ClassTag::Zero], 0);
        assert_eq!(dims[&ClassTag::MinNilpotent], 4);
        assert_eq!(dims[&ClassTag::SemisimpleSheet], 5);
        assert_eq!(dims[&ClassTag::RegularNilpotent], 6);
        assert_eq!(dims[&ClassTag::MixedSheet], 7);
        assert_eq!(dims[&ClassTag::GenericCartan], 8);
    }
}
