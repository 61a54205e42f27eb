//! Multivariate gcd over Q by recursive primitive remainder sequences.

use num_traits::Zero;

use super::multipoly::MultiPoly;
use super::rational::{gcd_numers, lcm_denoms, Rational};
use super::order::{self, MonomialOrder};

/// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
pub fn exact_div(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    if b.is_zero() {
        return None;
    }
    if let Some(c) = b.constant_value() {
        return Some(a.scale(&c.recip()));
    }
    let ord = MonomialOrder::Lex;
    let (lb, cb) = b.leading_term(ord).map(|(e, c)| (e.clone(), c.clone()))?;
    let mut rem = a.clone();
    let mut quot = MultiPoly::zero(a.vars());
    while let Some((lr, cr)) = rem.leading_term(ord).map(|(e, c)| (e.clone(), c.clone())) {
        if !order::divides(&lb, &lr) {
            return None;
        }
        let m = order::quotient(&lr, &lb);
        let c = &cr / &cb;
        rem = &rem - &b.mul_monomial(&m, &c);
        quot.add_term(m, c);
    }
    Some(quot)
}

/// Scales `p` so its graded-reverse-lexicographic leading coefficient is one.
pub fn normalize(p: &MultiPoly) -> MultiPoly {
    p.make_monic(MonomialOrder::GrevLex)
}

fn lc_in(p: &MultiPoly, var: usize) -> MultiPoly {
    p.coeffs_in(var).pop().unwrap_or_else(|| MultiPoly::zero(p.vars()))
}

/// Pseudo-remainder of `p` by `q` with respect to `var`.
pub fn prem(p: &MultiPoly, q: &MultiPoly, var: usize) -> MultiPoly {
    let dq = q.degree_in(var);
    let lq = lc_in(q, var);
    let mut r = p.clone();
    while !r.is_zero() && r.degree_in(var) >= dq {
        let dr = r.degree_in(var);
        let lr = lc_in(&r, var);
        let mut shift = vec![0; p.nvars()];
        shift[var] = dr - dq;
        let t = &lr * &q.mul_monomial(&shift, &num_traits::One::one());
        r = &(&lq * &r) - &t;
    }
    r
}

/// Content with respect to `var`: the gcd of the coefficients in that variable.
pub fn content_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let mut g = MultiPoly::zero(p.vars());
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with respect to `var`, also freed of its rational content
/// so that remainder sequences keep small integer coefficients.
pub fn primitive_part_in(p: &MultiPoly, var: usize) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, var);
    let pp = exact_div(p, &c).expect("content divides polynomial");
    let num = lcm_denoms(pp.terms().map(|(_, c)| c));
    let den = gcd_numers(pp.terms().map(|(_, c)| c));
    pp.scale(&Rational::new(num, den))
}

/// Greatest common divisor, normalized to a monic grevlex leading term.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.vars());
    }
    let var = (0..a.nvars()).find(|&i| a.involves(i) || b.involves(i)).expect("nonconstant");
    if !a.involves(var) {
        return gcd(a, &content_in(b, var));
    }
    if !b.involves(var) {
        return gcd(&content_in(a, var), b);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let c = gcd(&ca, &cb);
    let mut p = exact_div(a, &ca).expect("content divides");
    let mut q = exact_div(b, &cb).expect("content divides");
    if p.degree_in(var) < q.degree_in(var) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = prem(&p, &q, var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(var) == 0 {
            return normalize(&c);
        }
        p = q;
        q = primitive_part_in(&r, var);
    }
    normalize(&(&c * &primitive_part_in(&q, var)))
}

pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero(a.vars());
    }
    let g = gcd(a, b);
    normalize(&(&exact_div(a, &g).expect("gcd divides") * b))
}

/// True when every irreducible factor of `p` divides `d` (so `p | d^k` for some k).
pub fn divides_power_of(p: &MultiPoly, d: &MultiPoly) -> bool {
    let mut rest = p.clone();
    loop {
        if rest.is_constant() {
            return !rest.constant_value().map(|c| c.is_zero()).unwrap_or(false);
        }
        let g = gcd(&rest, d);
        if g.is_constant() {
            return false;
        }
        rest = exact_div(&rest, &g).expect("gcd divides");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::multipoly::vars;
    use crate::exact_poly::rational::q;

    #[test]
    fn gcd_of_products() {
        let vs = vars(&["x", "y"]);
        let x = MultiPoly::var(&vs, 0);
        let y = MultiPoly::var(&vs, 1);
        let one = MultiPoly::one(&vs);
        let common = &(&x * &y) + &one;
        let a = &common * &(&x - &y);
        let b = &common * &(&x.pow(2) + &y);
        assert_eq!(gcd(&a, &b), common);
        assert_eq!(gcd(&x, &y), one);
        let two_x = x.scale(&q(2));
        assert_eq!(gcd(&two_x, &(&x * &y)), x);
    }

    #[test]
    fn exact_division_detects_non_divisors() {
        let vs = vars(&["t"]);
        let t = MultiPoly::var(&vs, 0);
        let one = MultiPoly::one(&vs);
        let f = &t.pow(3) - &t;
        assert_eq!(exact_div(&f, &(&t - &one)).unwrap(), &t.pow(2) + &t);
        assert!(exact_div(&f, &(&t + &t.pow(2).scale(&q(3)))).is_none());
        assert!(divides_power_of(&t.pow(2), &f));
        assert!(!divides_power_of(&(&t + &one.scale(&q(2))), &f));
    }

    #[test]
    fn lcm_of_coprime() {
        let vs = vars(&["t"]);
        let t = MultiPoly::var(&vs, 0);
        let one = MultiPoly::one(&vs);
        assert_eq!(lcm(&t, &(&t + &one)), &t.pow(2) + &t);
    }
}
