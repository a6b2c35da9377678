//! Slodowy slices and the varieties cut out of them by the sheet closure.
//!
//! For an sl₂-triple (e, h, f) the slice through f is the affine space
//! f + 𝔤ᵉ, transverse to the adjoint orbit of f.  Intersecting the slice with
//! the closure of the mixed sheet G·(ℂ*(h₁−h₂) + f_θ) amounts to deciding
//! which slice members are similar to some Aμ = μ(h₁−h₂) + f_θ, and the
//! similarity test reduces to characteristic-polynomial matching because the
//! slice families below only meet the non-diagonalizable similarity class at
//! generic parameters and the closure adds the degenerations automatically.
//! Equating coefficients and eliminating the linearly-solvable parameters
//! yields the defining constraints; the dimension of the cut-out variety is
//! read off a Jacobian rank at random smooth points.

use crate::lie::{basis, centralizer, e_theta, f_theta, h, BasisElement, LieElement};
use crate::mat::{PMatrix, QMatrix};
use crate::poly::{ParamPoly, VarSet};
use crate::rat::{qi, Q};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// An sl₂-triple; the defining brackets are checked at construction.
pub struct Sl2Triple {
    pub e: LieElement,
    pub h: LieElement,
    pub f: LieElement,
}

impl Sl2Triple {
    pub fn new(e: LieElement, h: LieElement, f: LieElement) -> Self {
        let (em, hm, fm) = (e.to_matrix(), h.to_matrix(), f.to_matrix());
        assert_eq!(hm.commutator(&em), em.scale(&qi(2)), "[h,e] must be 2e");
        assert_eq!(hm.commutator(&fm), fm.scale(&qi(-2)), "[h,f] must be -2f");
        assert_eq!(em.commutator(&fm), hm, "[e,f] must be h");
        Sl2Triple { e, h, f }
    }

    pub fn n(&self) -> usize {
        self.e.n
    }
}

/// The triple through the highest root vector: (e_θ, h₁+⋯+h_{n−1}, f_θ).
pub fn minimal_triple(n: usize) -> Sl2Triple {
    let mut cartan = LieElement::zero(n);
    for i in 1..n {
        cartan = cartan.add(&h(n, i as u8));
    }
    Sl2Triple::new(e_theta(n), cartan, f_theta(n))
}

/// A principal triple for rank two, with f = 2f_{α₁} + 2f_{α₂} so that the
/// slice entries stay integral.
pub fn regular_triple(n: usize) -> Sl2Triple {
    assert_eq!(n, 3, "the displayed principal triple is rank-two specific");
    let e = LieElement::from_basis(3, BasisElement::E(1, 2))
        .add(&LieElement::from_basis(3, BasisElement::E(2, 3)));
    let f = LieElement::from_basis(3, BasisElement::F(1, 2))
        .add(&LieElement::from_basis(3, BasisElement::F(2, 3)))
        .scale(&qi(2));
    let h = e.bracket(&f);
    Sl2Triple::new(e, h, f)
}

/// The affine space f + 𝔤ᵉ as a matrix family with one parameter per
/// centralizer basis vector.
pub struct SliceFamily {
    pub n: usize,
    pub base: QMatrix,
    /// reduced centralizer basis, Cartan-supported vectors first
    pub directions: Vec<LieElement>,
    pub vars: VarSet,
    pub mat: PMatrix,
}

/// Reduced echelon form of the centralizer, reordered so Cartan-supported
/// vectors lead; this reproduces the conventional parameter naming in which
/// the minimal slice reads [[a,b,d],[0,−2a,c],[1,0,a]].
fn canonical_directions(n: usize, cz: &[LieElement]) -> Vec<LieElement> {
    let bs = basis(n);
    let dim = bs.len();
    let mut rows: Vec<Vec<Q>> = cz
        .iter()
        .map(|z| bs.iter().map(|b| z.coeffs.get(b).cloned().unwrap_or_else(Q::zero)).collect())
        .collect();
    // plain Gauss–Jordan to reduced echelon form
    let mut pivot_row = 0;
    for col in 0..dim {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = Q::one() / rows[pivot_row][col].clone();
        for x in rows[pivot_row].iter_mut() {
            *x *= inv.clone();
        }
        for r2 in 0..rows.len() {
            if r2 != pivot_row && !rows[r2][col].is_zero() {
                let factor = rows[r2][col].clone();
                for c2 in 0..dim {
                    let delta = factor.clone() * rows[pivot_row][c2].clone();
                    rows[r2][c2] -= delta;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    let h_start = dim - (n - 1);
    let mut elems: Vec<(bool, usize, LieElement)> = rows
        .iter()
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .map(|row| {
            let mut z = LieElement::zero(n);
            for (i, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    z.add_term(bs[i], c.clone());
                }
            }
            let cartan = (h_start..dim).any(|i| !row[i].is_zero());
            let lead = row.iter().position(|x| !x.is_zero()).unwrap();
            (cartan, lead, z)
        })
        .collect();
    elems.sort_by_key(|(cartan, lead, _)| (!cartan, *lead));
    elems.into_iter().map(|(_, _, z)| z).collect()
}

/// Builds the slice family through the triple's f, with parameters named
/// a, b, c, … in the canonical direction order.
pub fn slice(t: &Sl2Triple) -> SliceFamily {
    let n = t.n();
    let directions = canonical_directions(n, &centralizer(&t.e));
    assert!(directions.len() <= 26, "too many parameters to name");
    let names: Vec<String> = (0..directions.len())
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let vars: VarSet = Arc::new(names);
    let base = t.f.to_matrix();
    assert!(base.trace().is_zero());
    let mut entries = vec![vec![ParamPoly::zero(&vars); n]; n];
    for (r, row) in entries.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            *entry = ParamPoly::constant(&vars, base.rows[r][c].clone());
        }
    }
    for (i, d) in directions.iter().enumerate() {
        let dm = d.to_matrix();
        assert!(dm.trace().is_zero());
        let p = ParamPoly::var(&vars, i);
        for r in 0..n {
            for c in 0..n {
                if !dm.rows[r][c].is_zero() {
                    entries[r][c] = entries[r][c].add(&p.scale(&dm.rows[r][c]));
                }
            }
        }
    }
    let mat = PMatrix::from_rows(&vars, entries);
    SliceFamily { n, base, directions, vars, mat }
}

/// A one-parameter matrix family to intersect a slice with.
pub struct TargetFamily {
    pub param: String,
    pub mat_at: fn(&VarSet, usize) -> Vec<Vec<ParamPoly>>,
}

/// The family Aμ = μ(h₁−h₂) + f_θ sweeping the mixed sheet; its closure is
/// the full discriminant-zero locus.
pub fn mixed_sheet_target() -> TargetFamily {
    fn build(vars: &VarSet, mu_idx: usize) -> Vec<Vec<ParamPoly>> {
        let mu = ParamPoly::var(vars, mu_idx);
        let zero = ParamPoly::zero(vars);
        vec![
            vec![mu.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), mu.scale(&qi(-2)), zero.clone()],
            vec![ParamPoly::one(vars), zero.clone(), mu],
        ]
    }
    TargetFamily { param: "mu".to_string(), mat_at: build }
}

/// A slice–sheet intersection: constraints among the slice parameters and
/// the sheet parameter, in triangular order (solved parameters first).
pub struct Intersection {
    pub vars: VarSet,
    /// index of the sheet parameter within `vars`, when a target was used
    pub mu_index: Option<usize>,
    pub constraints: Vec<ParamPoly>,
}

impl Intersection {
    /// The slice itself, cut by nothing.
    pub fn unconstrained(s: &SliceFamily) -> Self {
        Intersection { vars: s.vars.clone(), mu_index: None, constraints: Vec::new() }
    }
}

fn extend_poly(p: &ParamPoly, vars: &VarSet) -> ParamPoly {
    let mut out = ParamPoly::zero(vars);
    for (e, c) in p.terms() {
        let mut e2 = e.clone();
        e2.resize(vars.len(), 0);
        out = out.add(&ParamPoly::term(vars, e2, c.clone()));
    }
    out
}

fn drop_last_var(p: &ParamPoly, vars: &VarSet) -> ParamPoly {
    let mut out = ParamPoly::zero(vars);
    for (e, c) in p.terms() {
        assert_eq!(*e.last().unwrap(), 0, "polynomial still involves the dropped variable");
        let mut e2 = e.clone();
        e2.pop();
        out = out.add(&ParamPoly::term(vars, e2, c.clone()));
    }
    out
}

/// Clears denominators and content so the coefficients are coprime integers;
/// the sign makes the distinguished coefficient (or the first stored term)
/// positive.
fn primitive(p: &ParamPoly, sign_coeff: Option<&Q>) -> ParamPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut denom_lcm = num::BigInt::one();
    let mut numer_gcd = num::BigInt::zero();
    for (_, c) in p.terms() {
        denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        numer_gcd = num::integer::gcd(numer_gcd, c.numer().clone());
    }
    let scale = Q::new(denom_lcm, numer_gcd);
    let sign = match sign_coeff {
        Some(c) => c.clone() * scale.clone(),
        None => p.terms().next().unwrap().1.clone() * scale.clone(),
    };
    let scale = if sign.is_negative() { -scale } else { scale };
    p.scale(&scale)
}

fn intersect_inner(s: &SliceFamily, target: &TargetFamily, reverse: bool) -> Intersection {
    assert_eq!(s.n, 3, "sheet intersection is rank-two specific");
    // working variables: slice parameters, then the sheet parameter, then λ
    let mut names: Vec<String> = s.vars.as_ref().clone();
    let mu_index = names.len();
    names.push(target.param.clone());
    let lambda_index = names.len();
    names.push("lambda".to_string());
    let work: VarSet = Arc::new(names);

    let slice_mat = PMatrix::from_rows(
        &work,
        s.mat.rows.iter().map(|row| row.iter().map(|p| extend_poly(p, &work)).collect()).collect(),
    );
    let target_mat = PMatrix::from_rows(&work, (target.mat_at)(&work, mu_index));

    let char_s = slice_mat.char_poly(lambda_index);
    let char_t = target_mat.char_poly(lambda_index);

    // the target family must sit inside the discriminant-zero locus, so the
    // membership side condition contributes no further equations
    let p_t = char_t.coeff_of(lambda_index, 1);
    let q_t = char_t.coeff_of(lambda_index, 0);
    let disc = p_t.pow(3).scale(&qi(4)).add(&q_t.pow(2).scale(&qi(27)));
    assert!(disc.is_zero(), "target family must lie in the sheet closure");

    let diff = char_s.sub(&char_t);
    let mut equations: Vec<ParamPoly> = (0..=s.n as u16)
        .rev()
        .map(|d| diff.coeff_of(lambda_index, d))
        .filter(|p| !p.is_zero())
        .collect();
    if reverse {
        equations.reverse();
    }

    // substitute out every slice parameter that appears linearly with a
    // constant coefficient, keeping the solved equations as constraints
    let mut solved: Vec<ParamPoly> = Vec::new();
    loop {
        let mut found = None;
        'search: for (ei, eq) in equations.iter().enumerate() {
            for v in 0..s.vars.len() {
                if eq.degree_in(v) != 1 {
                    continue;
                }
                let coeff = eq.coeff_of(v, 1);
                if coeff.total_degree() == 0 && !coeff.is_zero() {
                    found = Some((ei, v, coeff.leading_coeff()));
                    break 'search;
                }
            }
        }
        let Some((ei, v, lead)) = found else { break };
        let eq = equations.remove(ei);
        // v = v − eq/lead  solves the equation for v
        let replacement =
            ParamPoly::var(&work, v).sub(&eq.scale(&(Q::one() / lead.clone())));
        for other in equations.iter_mut() {
            *other = other.substitute_poly(v, &replacement);
        }
        solved.push(primitive(&eq, Some(&lead)));
    }
    solved.extend(equations.iter().filter(|p| !p.is_zero()).map(|p| primitive(p, None)));

    let final_vars: VarSet = Arc::new(work[..lambda_index].to_vec());
    let constraints = solved.iter().map(|p| drop_last_var(p, &final_vars)).collect();
    Intersection { vars: final_vars, mu_index: Some(mu_index), constraints }
}

/// Equates the characteristic polynomial of the slice family with that of
/// the target family, then eliminates the linearly-solvable slice parameters.
pub fn intersect_with_class(s: &SliceFamily, target: &TargetFamily) -> Intersection {
    intersect_inner(s, target, false)
}

/// Same elimination run with the equations in the opposite order; used to
/// confirm the constraint set is order-independent as an ideal.
pub fn intersect_with_class_reversed(s: &SliceFamily, target: &TargetFamily) -> Intersection {
    intersect_inner(s, target, true)
}

/// A random rational point satisfying all constraints: free variables are
/// sampled, then each constraint in turn is solved for a variable in which
/// it is linear with a nonzero coefficient at the current assignment.
pub fn sample_solution(inter: &Intersection, rng: &mut ChaCha8Rng) -> Vec<Q> {
    'attempt: for _ in 0..100 {
        let mut point: Vec<Q> = (0..inter.vars.len())
            .map(|_| Q::new(rng.gen_range(-12i64..=12).into(), rng.gen_range(1i64..=4).into()))
            .collect();
        for c in &inter.constraints {
            let mut solved = false;
            for v in (0..inter.vars.len()).rev() {
                if c.degree_in(v) != 1 {
                    continue;
                }
                let mut masked = point.clone();
                masked[v] = Q::zero();
                let lin = c.coeff_of(v, 1).eval(&masked);
                if lin.is_zero() {
                    continue;
                }
                let constant = c.substitute(v, &Q::zero()).eval(&masked);
                point[v] = -constant / lin;
                solved = true;
                break;
            }
            if !solved {
                continue 'attempt;
            }
        }
        if inter.constraints.iter().all(|c| c.eval(&point).is_zero()) {
            return point;
        }
    }
    panic!("no rational solution found; constraints may be infeasible");
}

/// Dimension of the constrained variety: variable count minus the Jacobian
/// rank of the constraint map, sampled at random solutions over five seeds
/// with the majority value returned.
pub fn variety_dimension(inter: &Intersection, seed: u64) -> usize {
    if inter.constraints.is_empty() {
        return inter.vars.len();
    }
    let mut counts = std::collections::BTreeMap::new();
    for i in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
        let point = sample_solution(inter, &mut rng);
        let jac: Vec<Vec<Q>> = inter
            .constraints
            .iter()
            .map(|c| (0..inter.vars.len()).map(|v| c.derivative(v).eval(&point)).collect())
            .collect();
        let rank = QMatrix::from_rows(jac).rank();
        *counts.entry(inter.vars.len() - rank).or_insert(0u32) += 1;
    }
    counts.into_iter().max_by_key(|(_, c)| *c).expect("no samples").0
}

/// Evaluates the slice family at the slice-parameter part of an intersection
/// point.
pub fn slice_point(s: &SliceFamily, point: &[Q]) -> QMatrix {
    s.mat.eval(&point[..s.vars.len()])
}
