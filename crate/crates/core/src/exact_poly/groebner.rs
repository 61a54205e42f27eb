//! Buchberger's algorithm with the normal selection strategy.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use super::multipoly::{Exponents, MultiPoly, Vars};
use super::order::{self, MonomialOrder};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Terms in ascending order; the leading term is last.
type Terms = Vec<(Exponents, Rational)>;

fn to_terms(p: &MultiPoly, ord: MonomialOrder) -> Terms {
    let mut t = p.sorted_terms(ord);
    t.reverse();
    t
}

fn from_terms(vars: &Vars, t: &Terms) -> MultiPoly {
    MultiPoly::from_terms(vars, t.iter().cloned())
}

fn make_monic(t: &mut Terms) {
    if let Some((_, lc)) = t.last() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in t.iter_mut() {
                *c *= &inv;
            }
        }
    }
}

/// `p - c * m * g`, all ascending.
fn sub_mul(p: &Terms, g: &Terms, m: &[u32], c: &Rational, ord: MonomialOrder) -> Terms {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let shifted: Vec<(Exponents, Rational)> = g.iter().map(|(e, v)| (order::product(e, m), v * c)).collect();
    while i < p.len() || j < shifted.len() {
        if j == shifted.len() {
            out.push(p[i].clone());
            i += 1;
        } else if i == p.len() {
            out.push((shifted[j].0.clone(), -shifted[j].1.clone()));
            j += 1;
        } else {
            match ord.cmp(&p[i].0, &shifted[j].0) {
                Ordering::Less => {
                    out.push(p[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((shifted[j].0.clone(), -shifted[j].1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &p[i].1 - &shifted[j].1;
                    if !v.is_zero() {
                        out.push((p[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    out
}

/// Full normal form of `f` by `basis` (monic members). When `quotients` is
/// given, records the multipliers so that `f = sum q_i g_i + nf`.
fn normal_form(
    f: Terms,
    basis: &[Terms],
    ord: MonomialOrder,
    mut quotients: Option<&mut Vec<MultiPoly>>,
) -> Terms {
    let mut p = f;
    let mut rem: Terms = Vec::new();
    while let Some((m, c)) = p.last().cloned() {
        let hit = basis.iter().position(|g| g.last().map(|(lm, _)| order::divides(lm, &m)).unwrap_or(false));
        match hit {
            Some(k) => {
                let g = &basis[k];
                let (lm, lc) = g.last().unwrap();
                let q = order::quotient(&m, lm);
                let coef = &c / lc;
                if let Some(qs) = quotients.as_deref_mut() {
                    qs[k].add_term(q.clone(), coef.clone());
                }
                p = sub_mul(&p, g, &q, &coef, ord);
            }
            None => {
                p.pop();
                rem.push((m, c));
            }
        }
    }
    rem.reverse();
    rem
}

fn spoly(f: &Terms, g: &Terms, ord: MonomialOrder) -> Terms {
    let (lf, cf) = f.last().unwrap();
    let (lg, cg) = g.last().unwrap();
    let l = order::lcm(lf, lg);
    let mf = order::quotient(&l, lf);
    let mg = order::quotient(&l, lg);
    let zero: Terms = Vec::new();
    let a = sub_mul(&zero, f, &mf, &(-cf.recip()), ord);
    sub_mul(&a, g, &mg, &cg.recip(), ord)
}

/// A reduced Gröbner basis: autoreduced, monic, sorted by descending leading
/// monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    vars: Vars,
    order: MonomialOrder,
    polys: Vec<MultiPoly>,
    terms: Vec<Terms>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.order == other.order && self.polys == other.polys
    }
}

impl Eq for GroebnerBasis {}

/// Outcome of an ideal membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub normal_form: MultiPoly,
    /// Present on membership: `f = sum cofactors[i] * basis[i]`, re-verified.
    pub cofactors: Option<Vec<MultiPoly>>,
}

pub fn gb_compute(generators: &[MultiPoly], ord: MonomialOrder, budget: usize) -> Result<GroebnerBasis> {
    let vars = match generators.first() {
        Some(g) => g.vars().clone(),
        None => return Err(Error::Input("Gröbner basis of an empty generator list needs a variable list".into())),
    };
    gb_compute_in(&vars, generators, ord, budget)
}

pub fn gb_compute_in(vars: &Vars, generators: &[MultiPoly], ord: MonomialOrder, budget: usize) -> Result<GroebnerBasis> {
    let mut basis: Vec<Terms> = Vec::new();
    for g in generators {
        let g = g.embed(vars).ok_or_else(|| Error::Input(format!("generator {g} uses variables outside {vars:?}")))?;
        if g.is_zero() {
            continue;
        }
        let mut t = to_terms(&g, ord);
        make_monic(&mut t);
        if !basis.contains(&t) {
            basis.push(t);
        }
    }
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.push((i, j));
            pending_set.insert((i, j));
        }
    }
    let mut steps = 0usize;
    let lm = |b: &Vec<Terms>, i: usize| b[i].last().unwrap().0.clone();
    while !pending.is_empty() {
        if basis.iter().any(|g| g.len() == 1 && g[0].0.iter().all(|&e| e == 0)) {
            break;
        }
        // normal strategy: smallest lcm by degree, then by the order, then by index
        let mut best = 0;
        let mut best_lcm = order::lcm(&lm(&basis, pending[0].0), &lm(&basis, pending[0].1));
        for (k, &(i, j)) in pending.iter().enumerate().skip(1) {
            let l = order::lcm(&lm(&basis, i), &lm(&basis, j));
            let c = order::degree(&l)
                .cmp(&order::degree(&best_lcm))
                .then_with(|| ord.cmp(&l, &best_lcm))
                .then_with(|| (i, j).cmp(&pending[best]));
            if c == Ordering::Less {
                best = k;
                best_lcm = l;
            }
        }
        let (i, j) = pending.swap_remove(best);
        pending_set.remove(&(i, j));
        steps += 1;
        if steps > budget {
            return Err(Error::BudgetExceeded { what: "Gröbner pair", limit: budget });
        }
        let (li, lj) = (lm(&basis, i), lm(&basis, j));
        if order::coprime(&li, &lj) {
            continue;
        }
        let l = order::lcm(&li, &lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && order::divides(&lm(&basis, k), &l)
                && !pending_set.contains(&(i.min(k), i.max(k)))
                && !pending_set.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = spoly(&basis[i], &basis[j], ord);
        let mut h = normal_form(s, &basis, ord, None);
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        let n = basis.len();
        basis.push(h);
        for k in 0..n {
            pending.push((k, n));
            pending_set.insert((k, n));
        }
    }
    Ok(GroebnerBasis::finalize(vars, ord, basis))
}

impl GroebnerBasis {
    fn finalize(vars: &Vars, ord: MonomialOrder, basis: Vec<Terms>) -> Self {
        if let Some(unit) = basis.iter().find(|g| g.len() == 1 && g[0].0.iter().all(|&e| e == 0)) {
            let mut u = unit.clone();
            make_monic(&mut u);
            return Self::from_terms_list(vars, ord, vec![u]);
        }
        // minimalize: drop members whose leading monomial is divisible by another's
        let mut keep: Vec<Terms> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let lg = &g.last().unwrap().0;
            let redundant = basis.iter().enumerate().any(|(k, h)| {
                let lh = &h.last().unwrap().0;
                k != i && order::divides(lh, lg) && (lh != lg || k < i)
            });
            if !redundant {
                keep.push(g.clone());
            }
        }
        // autoreduce
        let mut reduced = Vec::with_capacity(keep.len());
        for i in 0..keep.len() {
            let others: Vec<Terms> = keep.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, g)| g.clone()).collect();
            let mut g = keep[i].clone();
            let lead = g.pop().unwrap();
            let mut tail = normal_form(g, &others, ord, None);
            tail.push(lead);
            make_monic(&mut tail);
            reduced.push(tail);
        }
        reduced.sort_by(|a, b| ord.cmp(&b.last().unwrap().0, &a.last().unwrap().0));
        Self::from_terms_list(vars, ord, reduced)
    }

    fn from_terms_list(vars: &Vars, ord: MonomialOrder, terms: Vec<Terms>) -> Self {
        let polys = terms.iter().map(|t| from_terms(vars, t)).collect();
        GroebnerBasis { vars: vars.clone(), order: ord, polys, terms }
    }

    /// Basis of the zero ideal over `vars`.
    pub fn zero_ideal(vars: &Vars, ord: MonomialOrder) -> Self {
        GroebnerBasis { vars: vars.clone(), order: ord, polys: Vec::new(), terms: Vec::new() }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_one()
    }

    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        let f = f.embed(&self.vars).expect("polynomial over the basis variables");
        from_terms(&self.vars, &normal_form(to_terms(&f, self.order), &self.terms, self.order, None))
    }

    /// Normal form together with quotients: `f = sum q_i * basis[i] + r`.
    pub fn reduce_with_cofactors(&self, f: &MultiPoly) -> (Vec<MultiPoly>, MultiPoly) {
        let f = f.embed(&self.vars).expect("polynomial over the basis variables");
        let mut qs = vec![MultiPoly::zero(&self.vars); self.terms.len()];
        let r = normal_form(to_terms(&f, self.order), &self.terms, self.order, Some(&mut qs));
        (qs, from_terms(&self.vars, &r))
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.reduce(f).is_zero()
    }

    /// Members that do not involve the first `k` variables (the elimination ideal
    /// when the order eliminates them).
    pub fn eliminate_first(&self, k: usize) -> Vec<MultiPoly> {
        self.polys.iter().filter(|p| (0..k).all(|i| !p.involves(i))).cloned().collect()
    }

    /// Re-checks Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        for j in 0..self.terms.len() {
            for i in 0..j {
                let s = spoly(&self.terms[i], &self.terms[j], self.order);
                if !normal_form(s, &self.terms, self.order, None).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_autoreduced(&self) -> bool {
        for (i, g) in self.terms.iter().enumerate() {
            let lg = &g.last().unwrap().0;
            if !g.last().unwrap().1.is_one() {
                return false;
            }
            for (k, h) in self.terms.iter().enumerate() {
                if k != i && order::divides(&h.last().unwrap().0, lg) {
                    return false;
                }
            }
        }
        true
    }
}

/// Decides `f ∈ ⟨basis⟩` and, on membership, returns re-verified cofactors.
pub fn ideal_member(f: &MultiPoly, basis: &GroebnerBasis) -> Membership {
    let (qs, r) = basis.reduce_with_cofactors(f);
    if !r.is_zero() {
        return Membership { member: false, normal_form: r, cofactors: None };
    }
    let f = f.embed(basis.vars()).expect("same variables");
    let mut acc = MultiPoly::zero(basis.vars());
    for (q, g) in qs.iter().zip(basis.polys()) {
        acc = &acc + &(q * g);
    }
    assert_eq!(acc, f, "cofactor certificate failed re-expansion");
    Membership { member: true, normal_form: r, cofactors: Some(qs) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::multipoly::vars;
    use crate::exact_poly::rational::q;

    fn xy() -> (Vars, MultiPoly, MultiPoly, MultiPoly) {
        let vs = vars(&["x", "y"]);
        (vs.clone(), MultiPoly::var(&vs, 0), MultiPoly::var(&vs, 1), MultiPoly::one(&vs))
    }

    #[test]
    fn single_generator_is_a_basis() {
        let vs = vars(&["x"]);
        let x = MultiPoly::var(&vs, 0);
        let f = &x.pow(2) - &MultiPoly::constant(&vs, q(2));
        let gb = gb_compute(&[f.clone()], MonomialOrder::Lex, 100).unwrap();
        assert_eq!(gb.polys(), &[f]);
    }

    #[test]
    fn triangular_system() {
        let (_, x, y, one) = xy();
        let gb = gb_compute(&[&x - &y, &y - &one], MonomialOrder::Lex, 100).unwrap();
        assert_eq!(gb.polys(), &[&x - &one, &y - &one]);
    }

    #[test]
    fn unit_ideal() {
        let (_, x, y, one) = xy();
        let gb = gb_compute(&[&(&x * &y) - &one, x.pow(2)], MonomialOrder::Lex, 100).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn membership_by_long_division() {
        let vs = vars(&["x"]);
        let x = MultiPoly::var(&vs, 0);
        let c = |n| MultiPoly::constant(&vs, q(n));
        let gb = gb_compute(&[&x.pow(2) - &c(2)], MonomialOrder::Lex, 100).unwrap();
        let m = ideal_member(&(&x.pow(4) - &c(4)), &gb);
        assert!(m.member);
        assert_eq!(m.cofactors.unwrap()[0], &x.pow(2) + &c(2));
        let m = ideal_member(&x.pow(3), &gb);
        assert!(!m.member);
        assert_eq!(m.normal_form, x.scale(&q(2)));
        assert!(ideal_member(&MultiPoly::zero(&vs), &gb).member);
    }

    #[test]
    fn budget_is_enforced() {
        let vs = vars(&["x", "y", "z"]);
        let x = MultiPoly::var(&vs, 0);
        let y = MultiPoly::var(&vs, 1);
        let z = MultiPoly::var(&vs, 2);
        let gens = [&x.pow(2) + &(&y * &z), &y.pow(2) + &(&x * &z), &z.pow(2) + &(&x * &y)];
        match gb_compute(&gens, MonomialOrder::GrevLex, 1) {
            Err(Error::BudgetExceeded { limit, .. }) => assert_eq!(limit, 1),
            other => panic!("expected budget error, got {other:?}"),
        }
        let gb = gb_compute(&gens, MonomialOrder::GrevLex, 10_000).unwrap();
        assert!(gb.satisfies_buchberger_criterion());
        assert!(gb.is_autoreduced());
    }
}
