use std::collections::BTreeMap;
use num_traits::Zero;

use super::ratfunc::{common_denominator, RatFunc};
use crate::error::{Error, Result};
use crate::exact_poly::gcd::exact_div;
use crate::exact_poly::{Field, MultiPoly, Rational, UPoly, Vars};
use crate::expr::{Evaluator, Expr};

/// Exponents of the algebraic generators, one entry per generator.
pub type Monomial = Vec<u32>;

/// An element of a [`FieldTower`]: rational-function coordinates on the
/// reduced monomials of the algebraic generators. Zero coordinates are never
/// stored, so equality of elements is equality of coordinate maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coords: BTreeMap<Monomial, RatFunc>,
}

impl FieldElement {
    pub fn coords(&self) -> &BTreeMap<Monomial, RatFunc> {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Index of the highest algebraic generator occurring in the element.
    pub fn top_level(&self) -> Option<usize> {
        self.coords.keys().filter_map(|m| m.iter().rposition(|&e| e > 0)).max()
    }

    fn insert_add(coords: &mut BTreeMap<Monomial, RatFunc>, m: Monomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match coords.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Level {
    name: String,
    degree: u32,
    /// Coefficients below the leading 1 of the monic minimal polynomial.
    tail: Vec<FieldElement>,
}

/// `Q(t_1..t_r)(a_1..a_s)` given by successive monic irreducible minimal
/// polynomials. Generators before `base_mark` define K, the rest define L.
#[derive(Clone, Debug)]
pub struct FieldTower {
    tvars: Vars,
    levels: Vec<Level>,
    base_mark: usize,
}

/// Textual description of one algebraic generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub min_poly: Expr,
}

impl FieldTower {
    /// Q(t_1..t_r) with no algebraic generators.
    pub fn rational_function_field(transcendentals: &[String]) -> Self {
        FieldTower { tvars: transcendentals.to_vec().into(), levels: Vec::new(), base_mark: 0 }
    }

    pub fn transcendentals(&self) -> &Vars {
        &self.tvars
    }

    pub fn num_transcendentals(&self) -> usize {
        self.tvars.len()
    }

    pub fn num_algebraics(&self) -> usize {
        self.levels.len()
    }

    pub fn base_mark(&self) -> usize {
        self.base_mark
    }

    pub fn generator_name(&self, i: usize) -> &str {
        &self.levels[i].name
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.levels.iter().map(|l| l.name.clone()).collect()
    }

    pub fn degree_of(&self, i: usize) -> u32 {
        self.levels[i].degree
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.degree).collect()
    }

    /// [L:K]
    pub fn extension_degree(&self) -> usize {
        self.levels[self.base_mark..].iter().map(|l| l.degree as usize).product()
    }

    /// Degree over Q(t_1..t_r).
    pub fn absolute_degree(&self) -> usize {
        self.levels.iter().map(|l| l.degree as usize).product()
    }

    /// The monic minimal polynomial of generator `i` over the generators below it.
    pub fn min_poly_of(&self, i: usize) -> UPoly<FieldElement> {
        let mut c = self.levels[i].tail.clone();
        c.push(self.one());
        UPoly::new(self, c)
    }

    /// Adjoins a root of the monic `min_poly` (coefficients in this tower).
    /// Irreducibility is the caller's responsibility.
    pub(crate) fn adjoin_unchecked(&self, name: &str, min_poly: &UPoly<FieldElement>, to_base: bool) -> FieldTower {
        let n = self.levels.len() + 1;
        let mut levels: Vec<Level> = self
            .levels
            .iter()
            .map(|l| Level { name: l.name.clone(), degree: l.degree, tail: l.tail.iter().map(|c| pad(c, n)).collect() })
            .collect();
        let d = min_poly.deg();
        levels.push(Level {
            name: name.to_string(),
            degree: d as u32,
            tail: min_poly.coeffs()[..d].iter().map(|c| pad(c, n)).collect(),
        });
        FieldTower { tvars: self.tvars.clone(), levels, base_mark: if to_base { n } else { self.base_mark } }
    }

    /// The tower made of the first `n` algebraic generators.
    pub fn prefix(&self, n: usize) -> FieldTower {
        FieldTower {
            tvars: self.tvars.clone(),
            levels: self.levels[..n]
                .iter()
                .map(|l| Level { name: l.name.clone(), degree: l.degree, tail: l.tail.iter().map(|c| truncate(c, n)).collect() })
                .collect(),
            base_mark: self.base_mark.min(n),
        }
    }

    /// The subfield K as a tower of its own.
    pub fn base_tower(&self) -> FieldTower {
        self.prefix(self.base_mark)
    }

    /// Moves an element of `prefix(n)` into this tower.
    pub fn lift(&self, x: &FieldElement) -> FieldElement {
        pad(x, self.levels.len())
    }

    /// Moves an element involving only the first `n` generators into `prefix(n)`.
    pub fn restrict(&self, x: &FieldElement, n: usize) -> FieldElement {
        truncate(x, n)
    }

    fn zero_monomial(&self) -> Monomial {
        vec![0; self.levels.len()]
    }

    pub fn from_ratfunc(&self, c: RatFunc) -> FieldElement {
        let mut coords = BTreeMap::new();
        if !c.is_zero() {
            coords.insert(self.zero_monomial(), c);
        }
        FieldElement { coords }
    }

    pub fn transcendental(&self, j: usize) -> FieldElement {
        self.from_ratfunc(RatFunc::from_poly(MultiPoly::var(&self.tvars, j)))
    }

    pub fn generator(&self, i: usize) -> FieldElement {
        let mut m = self.zero_monomial();
        m[i] = 1;
        self.monomial(m, RatFunc::one(&self.tvars))
    }

    /// `c * a^m` for a reduced monomial `m`.
    pub fn monomial(&self, m: Monomial, c: RatFunc) -> FieldElement {
        debug_assert!(m.iter().zip(&self.levels).all(|(&e, l)| e < l.degree));
        let mut coords = BTreeMap::new();
        if !c.is_zero() {
            coords.insert(m, c);
        }
        FieldElement { coords }
    }

    /// Rational-function value of an element of Q(t); `None` if it involves algebraics.
    pub fn as_ratfunc(&self, x: &FieldElement) -> Option<RatFunc> {
        match x.coords.len() {
            0 => Some(RatFunc::zero(&self.tvars)),
            1 => x.coords.get(&self.zero_monomial()).cloned(),
            _ => None,
        }
    }

    pub fn as_rational(&self, x: &FieldElement) -> Option<Rational> {
        self.as_ratfunc(x).and_then(|r| r.constant_value())
    }

    pub fn scale(&self, x: &FieldElement, c: &RatFunc) -> FieldElement {
        if c.is_zero() {
            return self.zero();
        }
        FieldElement { coords: x.coords.iter().map(|(m, v)| (m.clone(), v.mul(c))).collect() }
    }

    /// All reduced monomials of the generators in `levels`, others at exponent 0,
    /// in mixed-radix order with the lowest generator varying fastest.
    pub fn monomials_of(&self, levels: std::ops::Range<usize>) -> Vec<Monomial> {
        let mut out = vec![self.zero_monomial()];
        for i in levels {
            let mut next = Vec::with_capacity(out.len() * self.levels[i].degree as usize);
            for e in 0..self.levels[i].degree {
                for m in &out {
                    let mut m = m.clone();
                    m[i] = e;
                    next.push(m);
                }
            }
            out = next;
        }
        out
    }

    /// Basis of L over K.
    pub fn k_basis(&self) -> Vec<Monomial> {
        self.monomials_of(self.base_mark..self.levels.len())
    }

    /// Basis over Q(t_1..t_r).
    pub fn full_basis(&self) -> Vec<Monomial> {
        self.monomials_of(0..self.levels.len())
    }

    /// Coordinates over K on [`Self::k_basis`].
    pub fn coords_over_k(&self, x: &FieldElement) -> Vec<FieldElement> {
        let basis = self.k_basis();
        let index: BTreeMap<&[u32], usize> = basis.iter().enumerate().map(|(i, m)| (&m[self.base_mark..], i)).collect();
        let mut out: Vec<BTreeMap<Monomial, RatFunc>> = vec![BTreeMap::new(); basis.len()];
        for (m, c) in &x.coords {
            let i = index[&m[self.base_mark..]];
            let mut km = m.clone();
            km[self.base_mark..].iter_mut().for_each(|e| *e = 0);
            out[i].insert(km, c.clone());
        }
        out.into_iter().map(|coords| FieldElement { coords }).collect()
    }

    pub fn from_coords_over_k(&self, v: &[FieldElement]) -> FieldElement {
        let mut coords = BTreeMap::new();
        for (b, c) in self.k_basis().iter().zip(v) {
            for (m, r) in &c.coords {
                let mm: Monomial = m.iter().zip(b).map(|(x, y)| x + y).collect();
                coords.insert(mm, r.clone());
            }
        }
        FieldElement { coords }
    }

    /// Coordinates over Q(t_1..t_r) on [`Self::full_basis`].
    pub fn coords_over_q(&self, x: &FieldElement) -> Vec<RatFunc> {
        self.full_basis().iter().map(|m| x.coords.get(m).cloned().unwrap_or_else(|| RatFunc::zero(&self.tvars))).collect()
    }

    pub fn is_in_base(&self, x: &FieldElement) -> bool {
        x.coords.keys().all(|m| m[self.base_mark..].iter().all(|&e| e == 0))
    }

    /// Coefficients of `x` as a polynomial in generator `i` (each coefficient free of it).
    pub fn split_at(&self, x: &FieldElement, i: usize) -> Vec<FieldElement> {
        let mut out = vec![BTreeMap::new(); self.levels[i].degree as usize];
        for (m, c) in &x.coords {
            let mut m2 = m.clone();
            let e = std::mem::replace(&mut m2[i], 0) as usize;
            out[e].insert(m2, c.clone());
        }
        let mut v: Vec<FieldElement> = out.into_iter().map(|coords| FieldElement { coords }).collect();
        while v.last().is_some_and(|e| e.is_zero()) {
            v.pop();
        }
        v
    }

    /// `Σ c_j a_i^j` for coefficients free of generator `i` and `j < deg m_i`.
    fn join_at(&self, cs: &[FieldElement], i: usize) -> FieldElement {
        let mut coords = BTreeMap::new();
        for (j, c) in cs.iter().enumerate() {
            for (m, r) in &c.coords {
                let mut m2 = m.clone();
                m2[i] = j as u32;
                coords.insert(m2, r.clone());
            }
        }
        FieldElement { coords }
    }

    fn reduce(&self, mut coords: BTreeMap<Monomial, RatFunc>) -> FieldElement {
        for (i, level) in self.levels.iter().enumerate().rev() {
            let d = level.degree;
            loop {
                let Some(m) = coords.keys().find(|m| m[i] >= d).cloned() else { break };
                let c = coords.remove(&m).expect("present");
                let mut base = m;
                base[i] -= d;
                for (j, t) in level.tail.iter().enumerate() {
                    for (tm, tc) in &t.coords {
                        let mut mm: Monomial = base.iter().zip(tm).map(|(x, y)| x + y).collect();
                        mm[i] += j as u32;
                        FieldElement::insert_add(&mut coords, mm, c.mul(tc).neg());
                    }
                }
            }
        }
        FieldElement { coords }
    }

    /// Exact inverse by extended Euclid against the minimal polynomial of the
    /// highest generator present, recursing into the coefficient field.
    fn inverse(&self, x: &FieldElement) -> Option<FieldElement> {
        if x.is_zero() {
            return None;
        }
        let Some(i) = x.top_level() else {
            let c = x.coords.values().next().expect("nonzero").inv()?;
            return Some(self.from_ratfunc(c));
        };
        let xp = UPoly::new(self, self.split_at(x, i));
        let mut mc = self.levels[i].tail.clone();
        mc.push(self.one());
        let m = UPoly::new(self, mc);
        let (g, s, _) = xp.ext_gcd(self, &m);
        debug_assert_eq!(g.deg(), 0);
        let scale = self.inverse(g.lc()?)?;
        let s = s.scale(self, &scale);
        Some(self.join_at(s.coeffs(), i))
    }

    pub fn to_string_of(&self, x: &FieldElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let tnames: Vec<String> = self.tvars.to_vec();
        let mut parts: Vec<String> = Vec::new();
        for (m, c) in x.coords.iter().rev() {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.levels[i].name.clone() } else { format!("{}^{e}", self.levels[i].name) })
                .collect();
            let mono = mono.join("*");
            if mono.is_empty() {
                parts.push(c.to_string_with(&tnames));
            } else if c.is_polynomial() {
                for (e, v) in c.num().sorted_terms(crate::exact_poly::MonomialOrder::GrevLex) {
                    let single = MultiPoly::monomial(&self.tvars, e, v.clone());
                    let s = single.to_string_with(&tnames);
                    parts.push(match s.as_str() {
                        "1" => mono.clone(),
                        "-1" => format!("-{mono}"),
                        _ => format!("{s}*{mono}"),
                    });
                }
            } else {
                parts.push(format!("({})*{mono}", c.to_string_with(&tnames)));
            }
        }
        let mut out = String::new();
        for (k, p) in parts.iter().enumerate() {
            if k == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }

    /// Renders a polynomial with tower coefficients in the variable `var`.
    pub fn poly_to_string(&self, f: &UPoly<FieldElement>, var: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (j, c) in f.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let xp = match j {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{j}"),
            };
            let cs = self.to_string_of(c);
            let simple = c.coords.len() == 1 && !cs.contains([' ', '/']);
            parts.push(if xp.is_empty() {
                cs
            } else if cs == "1" {
                xp
            } else if cs == "-1" {
                format!("-{xp}")
            } else if simple {
                format!("{cs}*{xp}")
            } else {
                format!("({cs})*{xp}")
            });
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        out
    }

    /// Normal form of an expression in the tower's symbols.
    pub fn nf(&self, e: &Expr) -> Result<FieldElement> {
        e.eval(&ElementEvaluator(self))
    }

    pub fn parse_element(&self, src: &str) -> Result<FieldElement> {
        self.nf(&Expr::parse(src)?)
    }

    /// Evaluates an expression as a polynomial in the fresh variable `var`
    /// with coefficients in this tower.
    pub fn parse_poly_in(&self, e: &Expr, var: &str) -> Result<UPoly<FieldElement>> {
        e.eval(&PolyEvaluator { tower: self, var })
    }

    /// Polynomial in Q[t, a] equal to `scale * x`, where `scale` clears all
    /// denominators of `x`. Variables: transcendentals then algebraics.
    pub fn to_poly_in(&self, x: &FieldElement, vars: &Vars, scale: &MultiPoly) -> Option<MultiPoly> {
        let r = self.tvars.len();
        let mut out = MultiPoly::zero(vars);
        for (m, c) in &x.coords {
            let num = exact_div(&(c.num() * scale), c.den())?;
            for (e, v) in num.terms() {
                let mut full = vec![0u32; vars.len()];
                full[..r].copy_from_slice(e);
                full[r..r + m.len()].copy_from_slice(m);
                out.add_term(full, v.clone());
            }
        }
        Some(out)
    }

    /// Common denominator (in Q[t]) of a family of elements.
    pub fn common_denominator<'a>(&self, xs: impl IntoIterator<Item = &'a FieldElement>) -> MultiPoly {
        common_denominator(&self.tvars, xs.into_iter().flat_map(|x| x.coords.values()))
    }

    /// Element from a polynomial in Q[t, a] (variables as in [`Self::to_poly_in`]).
    pub fn from_poly_in(&self, p: &MultiPoly) -> FieldElement {
        let r = self.tvars.len();
        let mut grouped: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
        for (e, v) in p.terms() {
            let m: Monomial = e[r..].to_vec();
            grouped.entry(m).or_insert_with(|| MultiPoly::zero(&self.tvars)).add_term(e[..r].to_vec(), v.clone());
        }
        let mut acc = self.zero();
        for (m, c) in grouped {
            let mut term = self.from_ratfunc(RatFunc::from_poly(c));
            for (i, &k) in m.iter().enumerate() {
                if k > 0 {
                    term = self.mul(&term, &self.pow(&self.generator(i), k));
                }
            }
            acc = self.add(&acc, &term);
        }
        acc
    }

    pub fn lookup_symbol(&self, name: &str) -> Option<FieldElement> {
        if let Some(j) = self.tvars.iter().position(|v| v == name) {
            return Some(self.transcendental(j));
        }
        self.levels.iter().position(|l| l.name == name).map(|i| self.generator(i))
    }

    /// Specialization of the transcendentals at a rational point. Returns
    /// `None` when a minimal-polynomial coefficient is undefined there.
    /// Irreducibility of the specialized polynomials is not checked.
    pub fn specialize(&self, point: &[Rational]) -> Option<FieldTower> {
        let empty: Vars = Vec::<String>::new().into();
        let mut levels = Vec::with_capacity(self.levels.len());
        for l in &self.levels {
            let tail = l.tail.iter().map(|c| specialize_in(c, point, &empty)).collect::<Option<Vec<_>>>()?;
            levels.push(Level { name: l.name.clone(), degree: l.degree, tail });
        }
        Some(FieldTower { tvars: empty, levels, base_mark: self.base_mark })
    }

    /// Image of an element under [`Self::specialize`] at the same point.
    pub fn specialize_element(&self, x: &FieldElement, point: &[Rational], target: &FieldTower) -> Option<FieldElement> {
        specialize_in(x, point, &target.tvars)
    }
}

fn specialize_in(x: &FieldElement, point: &[Rational], empty: &Vars) -> Option<FieldElement> {
    let mut coords = BTreeMap::new();
    for (m, c) in &x.coords {
        let v = c.eval(point)?;
        if !v.is_zero() {
            coords.insert(m.clone(), RatFunc::constant(empty, v));
        }
    }
    Some(FieldElement { coords })
}

fn pad(x: &FieldElement, n: usize) -> FieldElement {
    FieldElement {
        coords: x
            .coords
            .iter()
            .map(|(m, c)| {
                let mut m = m.clone();
                m.resize(n, 0);
                (m, c.clone())
            })
            .collect(),
    }
}

fn truncate(x: &FieldElement, n: usize) -> FieldElement {
    FieldElement {
        coords: x
            .coords
            .iter()
            .map(|(m, c)| {
                assert!(m[n..].iter().all(|&e| e == 0), "element involves generators above the prefix");
                (m[..n].to_vec(), c.clone())
            })
            .collect(),
    }
}

impl Field for FieldTower {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement { coords: BTreeMap::new() }
    }

    fn one(&self) -> FieldElement {
        self.from_ratfunc(RatFunc::one(&self.tvars))
    }

    fn from_rational(&self, c: &Rational) -> FieldElement {
        self.from_ratfunc(RatFunc::constant(&self.tvars, c.clone()))
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &FieldElement) -> bool {
        a.coords.len() == 1 && a.coords.iter().next().is_some_and(|(m, c)| c.is_one() && m.iter().all(|&e| e == 0))
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut coords = a.coords.clone();
        for (m, c) in &b.coords {
            FieldElement::insert_add(&mut coords, m.clone(), c.clone());
        }
        FieldElement { coords }
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut coords = BTreeMap::new();
        for (ma, ca) in &a.coords {
            for (mb, cb) in &b.coords {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                FieldElement::insert_add(&mut coords, m, ca.mul(cb));
            }
        }
        self.reduce(coords)
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement { coords: a.coords.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        self.inverse(a)
    }
}

struct ElementEvaluator<'a>(&'a FieldTower);

impl Evaluator for ElementEvaluator<'_> {
    type Value = FieldElement;

    fn number(&self, c: &Rational) -> FieldElement {
        self.0.from_rational(c)
    }
    fn symbol(&self, name: &str) -> Result<FieldElement> {
        self.0.lookup_symbol(name).ok_or_else(|| Error::UnknownSymbol(name.into()))
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.0.add(a, b)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.0.sub(a, b)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.0.mul(a, b)
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.0.neg(a)
    }
    fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.0.div(a, b).ok_or(Error::DivisionByZero)
    }
    fn pow(&self, a: &FieldElement, n: u32) -> FieldElement {
        self.0.pow(a, n)
    }
}

struct PolyEvaluator<'a> {
    tower: &'a FieldTower,
    var: &'a str,
}

impl Evaluator for PolyEvaluator<'_> {
    type Value = UPoly<FieldElement>;

    fn number(&self, c: &Rational) -> Self::Value {
        UPoly::constant(self.tower, self.tower.from_rational(c))
    }
    fn symbol(&self, name: &str) -> Result<Self::Value> {
        if name == self.var {
            Ok(UPoly::new(self.tower, vec![self.tower.zero(), self.tower.one()]))
        } else {
            Ok(UPoly::constant(self.tower, ElementEvaluator(self.tower).symbol(name)?))
        }
    }
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        a.add(self.tower, b)
    }
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        a.sub(self.tower, b)
    }
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        a.mul(self.tower, b)
    }
    fn neg(&self, a: &Self::Value) -> Self::Value {
        a.neg(self.tower)
    }
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value> {
        match b.degree() {
            None => Err(Error::DivisionByZero),
            Some(0) => {
                let inv = self.tower.inv(&b.coeffs()[0]).ok_or(Error::DivisionByZero)?;
                Ok(a.scale(self.tower, &inv))
            }
            Some(_) => Err(Error::Input(format!("division by a polynomial in `{}`", self.var))),
        }
    }
    fn pow(&self, a: &Self::Value, n: u32) -> Self::Value {
        a.pow(self.tower, n)
    }
}
