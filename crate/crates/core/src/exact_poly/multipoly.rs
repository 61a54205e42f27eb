use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::order::{self, MonomialOrder};
use super::rational::{fmt_rational, q, Rational};

pub type Exponents = Vec<u32>;
pub type Vars = Arc<[String]>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// The term map never stores a zero coefficient, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, q(1))
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, q(1))
    }

    pub fn monomial(vars: &Vars, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn univariate(name: &str, coeffs: &[Rational]) -> Self {
        let vs = vars(&[name]);
        Self::from_terms(&vs, coeffs.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())))
    }

    pub fn add_term(&mut self, e: Exponents, c: Rational) {
        assert_eq!(e.len(), self.vars.len(), "exponent vector length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Exponents, Rational> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars()])
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| order::degree(e)).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    /// Index of the single variable the polynomial depends on, if it is univariate.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.involves(i)).collect()
    }

    pub fn leading_term(&self, ord: MonomialOrder) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0))
    }

    pub fn leading_coeff(&self, ord: MonomialOrder) -> Rational {
        self.leading_term(ord).map(|t| t.1.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &[u32], c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (order::product(e, m), v * c)).collect(),
        }
    }

    pub fn make_monic(&self, ord: MonomialOrder) -> Self {
        match self.leading_term(ord) {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                p.add_term(e2, c * q(e[var] as i64));
            }
        }
        p
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.nvars());
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e.iter()) {
                if k > 0 {
                    t *= num_traits::pow(v.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `value` for variable `var` (the variable list is kept).
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> Self {
        assert_eq!(value.vars, self.vars);
        let mut by_power: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var];
            e2[var] = 0;
            by_power.entry(k).or_insert_with(|| Self::zero(&self.vars)).add_term(e2, c.clone());
        }
        // Horner in the substituted value.
        let mut acc = Self::zero(&self.vars);
        let mut last = match by_power.keys().next_back() {
            Some(&k) => k,
            None => return acc,
        };
        for (&k, coeff) in by_power.iter().rev() {
            if k != last {
                acc = &acc * &value.pow(last - k);
                last = k;
            }
            acc = &acc + coeff;
        }
        &acc * &value.pow(last)
    }

    /// Re-expresses the polynomial over `target`, mapping variable `i` to
    /// position `map[i]`.
    pub fn remap(&self, target: &Vars, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars());
        let mut p = Self::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            p.add_term(e2, c.clone());
        }
        p
    }

    /// Re-expresses the polynomial over `target`, matching variables by name.
    /// Returns `None` if a used variable is missing from `target`.
    pub fn embed(&self, target: &Vars) -> Option<Self> {
        if Arc::ptr_eq(&self.vars, target) || self.vars[..] == target[..] {
            return Some(MultiPoly { vars: target.clone(), terms: self.terms.clone() });
        }
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.iter().enumerate() {
            match target.iter().position(|t| t == name) {
                Some(j) => map.push(j),
                None if !self.involves(i) => map.push(usize::MAX),
                None => return None,
            }
        }
        let mut p = Self::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    e2[map[i]] += k;
                }
            }
            p.add_term(e2, c.clone());
        }
        Some(p)
    }

    /// Coefficients with respect to one variable, as polynomials in the same
    /// variable list that do not involve it. Index is the power.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(&self.vars); if self.is_zero() { 0 } else { d + 1 }];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var] as usize;
            e2[var] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(vars: &Vars, var: usize, coeffs: &[MultiPoly]) -> Self {
        let mut p = Self::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, v) in c.terms() {
                let mut e2 = e.clone();
                e2[var] += k as u32;
                p.add_term(e2, v.clone());
            }
        }
        p
    }

    /// Ascending rational coefficients of a polynomial in (at most) variable `var`.
    pub fn univariate_coeffs(&self, var: usize) -> Vec<Rational> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Rational::zero(); if self.is_zero() { 0 } else { d + 1 }];
        for (e, c) in &self.terms {
            debug_assert!(e.iter().enumerate().all(|(i, &k)| i == var || k == 0));
            out[e[var] as usize] = c.clone();
        }
        out
    }

    /// Terms in descending order under `ord`.
    pub fn sorted_terms(&self, ord: MonomialOrder) -> Vec<(Exponents, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        v.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        v
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.sorted_terms(MonomialOrder::GrevLex).iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| if k == 1 { names[j].clone() } else { format!("{}^{}", names[j], k) })
                .collect();
            if mono.is_empty() {
                out.push_str(&fmt_rational(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&fmt_rational(&abs));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&self.vars))
    }
}

fn check_vars(a: &MultiPoly, b: &MultiPoly) {
    assert!(
        Arc::ptr_eq(&a.vars, &b.vars) || a.vars == b.vars,
        "variable lists differ: {:?} vs {:?}",
        a.vars,
        b.vars
    );
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        check_vars(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        check_vars(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        check_vars(self, rhs);
        let mut out = MultiPoly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(order::product(e1, e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::rational::qf;

    fn xy() -> (Vars, MultiPoly, MultiPoly) {
        let vs = vars(&["x", "y"]);
        let x = MultiPoly::var(&vs, 0);
        let y = MultiPoly::var(&vs, 1);
        (vs, x, y)
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let (_, x, y) = xy();
        let p = &(&x + &y) - &y;
        assert_eq!(p, x);
        assert_eq!(p.num_terms(), 1);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn display_is_readable() {
        let (vs, x, y) = xy();
        let p = &(&x.pow(2) * &y).scale(&q(3)) - &MultiPoly::constant(&vs, qf(1, 2));
        assert_eq!(p.to_string(), "3*x^2*y - 1/2");
        assert_eq!((-&x).to_string(), "-x");
    }

    #[test]
    fn substitute_and_eval_agree() {
        let (vs, x, y) = xy();
        let p = &(&x.pow(3) + &y) - &MultiPoly::constant(&vs, q(2));
        let sub = p.substitute(0, &(&y + &MultiPoly::one(&vs)));
        // (y+1)^3 + y - 2 at y = 2 is 27
        assert_eq!(sub.eval(&[q(0), q(2)]), q(27));
        assert_eq!(p.eval(&[q(3), q(2)]), q(27));
    }

    #[test]
    fn embed_matches_names() {
        let (_, x, _) = xy();
        let target = vars(&["z", "x"]);
        let e = x.embed(&target).unwrap();
        assert_eq!(e, MultiPoly::var(&target, 1));
        let (_, _, y) = xy();
        assert!(y.embed(&vars(&["x"])).is_none());
    }
}
