//! Dense univariate polynomials over any [`Field`].

use super::field::Field;
use super::rational::Rational;

/// Ascending coefficients; the last coefficient is nonzero (empty means zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> UPoly<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().map(|c| field.is_zero(c)).unwrap_or(false) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E) -> Self {
        Self::new(field, vec![c])
    }

    /// `x - c`
    pub fn linear<F: Field<Elem = E>>(field: &F, c: &E) -> Self {
        Self::new(field, vec![field.neg(c), field.one()])
    }

    pub fn from_rationals<F: Field<Elem = E>>(field: &F, coeffs: &[Rational]) -> Self {
        Self::new(field, coeffs.iter().map(|c| field.from_rational(c)).collect())
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, field: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn map_to<G: Field>(&self, target: &G, f: impl Fn(&E) -> G::Elem) -> UPoly<G::Elem> {
        UPoly::new(target, self.coeffs.iter().map(f).collect())
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| field.add(&self.coeff(field, i), &other.coeff(field, i))).collect();
        Self::new(field, v)
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| field.sub(&self.coeff(field, i), &other.coeff(field, i))).collect();
        Self::new(field, v)
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        UPoly { coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect() }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Self::new(field, self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = field.add(&v[i + j], &field.mul(a, b));
            }
        }
        Self::new(field, v)
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, n: u32) -> Self {
        let mut result = Self::constant(field, field.one());
        for _ in 0..n {
            result = result.mul(field, self);
        }
        result
    }

    /// Exact division with remainder; `None` if `divisor` is zero.
    pub fn divmod<F: Field<Elem = E>>(&self, field: &F, divisor: &Self) -> Option<(Self, Self)> {
        let dlc = divisor.lc()?;
        let inv = field.inv(dlc)?;
        let dd = divisor.deg();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = field.mul(&rem[k + dd], &inv);
            if !field.is_zero(&c) {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = field.sub(&rem[k + j], &field.mul(&c, b));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Self::new(field, quot), Self::new(field, rem)))
    }

    pub fn rem<F: Field<Elem = E>>(&self, field: &F, divisor: &Self) -> Option<Self> {
        self.divmod(field, divisor).map(|(_, r)| r)
    }

    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.lc().and_then(|c| field.inv(c)) {
            Some(inv) => self.scale(field, &inv),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(field, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(field)
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> (Self, Self, Self) {
        let one = Self::constant(field, field.one());
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), one);
        while !r1.is_zero() {
            let (qt, r) = r0.divmod(field, &r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(field, &qt.mul(field, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(field, &qt.mul(field, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().and_then(|c| field.inv(c)) {
            Some(inv) => (r0.scale(field, &inv), s0.scale(field, &inv), t0.scale(field, &inv)),
            None => (r0, s0, t0),
        }
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, x: &E) -> E {
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            acc = field.add(&field.mul(&acc, x), c);
        }
        acc
    }

    /// `self(x + c)`
    pub fn shift<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        let lin = Self::new(field, vec![c.clone(), field.one()]);
        let mut acc = Self::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(field, &lin).add(field, &Self::constant(field, a.clone()));
        }
        acc
    }

    pub fn derivative<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| field.mul(c, &field.from_rational(&super::rational::q(i as i64))))
            .collect();
        Self::new(field, v)
    }

    pub fn is_squarefree<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.gcd(field, &self.derivative(field)).deg() == 0
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let g = self.gcd(field, &self.derivative(field));
        self.divmod(field, &g).expect("gcd nonzero").0.monic(field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::field::Rationals;
    use crate::exact_poly::rational::q;

    fn p(c: &[i64]) -> UPoly<Rational> {
        UPoly::from_rationals(&Rationals, &c.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    #[test]
    fn divmod_by_hand() {
        let (qt, r) = p(&[-4, 0, 0, 0, 1]).divmod(&Rationals, &p(&[-2, 0, 1])).unwrap();
        assert_eq!(qt, p(&[2, 0, 1]));
        assert!(r.is_zero());
        assert!(p(&[1]).divmod(&Rationals, &UPoly::zero()).is_none());
    }

    #[test]
    fn ext_gcd_identity() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (g, s, t) = a.ext_gcd(&Rationals, &b);
        assert_eq!(g, p(&[1, 1]));
        assert_eq!(s.mul(&Rationals, &a).add(&Rationals, &t.mul(&Rationals, &b)), g);
    }

    #[test]
    fn shift_matches_substitution() {
        // (x+1)^2 - 2
        let f = p(&[-2, 0, 1]).shift(&Rationals, &q(1));
        assert_eq!(f, p(&[-1, 2, 1]));
    }
}
