use std::fmt;

use num_traits::{One, Zero};

use crate::exact_poly::gcd::{exact_div, gcd, normalize};
use crate::exact_poly::{Field, MultiPoly, Rational, Vars};

/// A rational function `num/den` in lowest terms, with a monic (graded
/// reverse lexicographic) denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero(num.vars()));
        }
        if let Some(c) = den.constant_value() {
            let vs = num.vars().clone();
            return Some(RatFunc { num: num.scale(&c.recip()), den: MultiPoly::one(&vs) });
        }
        let g = gcd(&num, &den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (exact_div(&num, &g).expect("gcd divides"), exact_div(&den, &g).expect("gcd divides"))
        };
        let lc = d.leading_coeff(crate::exact_poly::MonomialOrder::GrevLex);
        if !lc.is_one() {
            let inv = lc.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Some(RatFunc { num: n, den: d })
    }

    pub fn zero(vars: &Vars) -> Self {
        RatFunc { num: MultiPoly::zero(vars), den: MultiPoly::one(vars) }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        RatFunc { num: MultiPoly::constant(vars, c), den: MultiPoly::one(vars) }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let vs = p.vars().clone();
        RatFunc { num: p, den: MultiPoly::one(&vs) }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(&self.num + &other.num, self.den.clone()).unwrap();
        }
        if other.den.is_one() {
            return Self::new(&self.num + &(&other.num * &self.den), self.den.clone()).unwrap();
        }
        if self.den.is_one() {
            return Self::new(&(&self.num * &other.den) + &other.num, other.den.clone()).unwrap();
        }
        Self::new(&(&self.num * &other.den) + &(&other.num * &self.den), &self.den * &other.den).unwrap()
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.vars());
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc { num: &self.num * &other.num, den: self.den.clone() };
        }
        Self::new(&self.num * &other.num, &self.den * &other.den).unwrap()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Self::new(self.den.clone(), self.num.clone())
        }
    }

    /// Value at a rational point; `None` when the denominator vanishes there.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let n = self.num.to_string_with(names);
        if self.den.is_one() {
            n
        } else {
            let d = self.den.to_string_with(names);
            let n = if self.num.num_terms() > 1 { format!("({n})") } else { n };
            let d = if self.den.num_terms() > 1 || d.contains('*') { format!("({d})") } else { d };
            format!("{n}/{d}")
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(self.vars()))
    }
}

/// The field Q(t_1, ..., t_r).
#[derive(Clone, Debug)]
pub struct RatFuncField {
    pub vars: Vars,
}

impl Field for RatFuncField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::zero(&self.vars)
    }
    fn one(&self) -> RatFunc {
        RatFunc::one(&self.vars)
    }
    fn from_rational(&self, c: &Rational) -> RatFunc {
        RatFunc::constant(&self.vars, c.clone())
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.add(b)
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.sub(b)
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.mul(b)
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        a.neg()
    }
    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        a.inv()
    }
}

/// Normalized least common multiple of the denominators.
pub fn common_denominator<'a>(vars: &Vars, it: impl IntoIterator<Item = &'a RatFunc>) -> MultiPoly {
    let mut acc = MultiPoly::one(vars);
    for r in it {
        if !r.den.is_one() {
            acc = crate::exact_poly::gcd::lcm(&acc, &r.den);
        }
    }
    normalize(&acc)
}
