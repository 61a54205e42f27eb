//! Factorization of univariate polynomials over Q: squarefree decomposition,
//! Berlekamp modulo a small prime, quadratic Hensel lifting and subset
//! recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Rationals;
use super::modp;
use super::multipoly::MultiPoly;
use super::rational::{lcm_denoms, Rational};
use super::upoly::UPoly;
use crate::error::{Error, Result};

type ZPoly = Vec<BigInt>;

const PRIMES_TRIED: usize = 5;

/// `f = content * prod(factor^multiplicity)`, each factor monic and irreducible over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: Rational,
    pub factors: Vec<(UPoly<Rational>, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> UPoly<Rational> {
        let f = &Rationals;
        let mut acc = UPoly::constant(f, self.content.clone());
        for (g, e) in &self.factors {
            acc = acc.mul(f, &g.pow(f, *e));
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factors a univariate [`MultiPoly`] with rational coefficients.
///
/// Returns the content (leading coefficient) and monic irreducible factors with
/// multiplicities, as polynomials in the input's variable list.
pub fn factor_univariate_q(f: &MultiPoly, degree_cap: usize) -> Result<(Rational, Vec<(MultiPoly, u32)>)> {
    let used = f.used_vars();
    if used.len() > 1 {
        return Err(Error::Input(format!("{f} is not univariate")));
    }
    if f.is_zero() {
        return Err(Error::Input("cannot factor the zero polynomial".into()));
    }
    let var = used.first().copied().unwrap_or(0);
    let coeffs = if f.nvars() == 0 { vec![f.constant_term()] } else { f.univariate_coeffs(var) };
    let fac = factor_upoly(&UPoly::from_rationals(&Rationals, &coeffs), degree_cap)?;
    let factors = fac
        .factors
        .into_iter()
        .map(|(g, e)| {
            let p = MultiPoly::from_terms(
                f.vars(),
                g.coeffs().iter().enumerate().map(|(i, c)| {
                    let mut ex = vec![0; f.nvars()];
                    ex[var] = i as u32;
                    (ex, c.clone())
                }),
            );
            (p, e)
        })
        .collect();
    Ok((fac.content, factors))
}

pub fn factor_upoly(f: &UPoly<Rational>, degree_cap: usize) -> Result<Factorization> {
    let field = &Rationals;
    let lc = f.lc().cloned().ok_or_else(|| Error::Input("cannot factor the zero polynomial".into()))?;
    if f.deg() > degree_cap {
        return Err(Error::DegreeCapExceeded { degree: f.deg(), cap: degree_cap });
    }
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&f.monic(field)) {
        for g in factor_squarefree(&part) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
    let out = Factorization { content: lc, factors };
    debug_assert_eq!(&out.expand(), f);
    Ok(out)
}

/// Rational roots with multiplicity ignored, ascending.
pub fn rational_roots(f: &UPoly<Rational>, degree_cap: usize) -> Result<Vec<Rational>> {
    let fac = factor_upoly(f, degree_cap)?;
    let mut roots: Vec<Rational> = fac
        .factors
        .iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, _)| -g.coeffs()[0].clone())
        .collect();
    roots.sort();
    Ok(roots)
}

/// Yun's algorithm on a monic polynomial: `f = prod(part^mult)`.
pub fn squarefree_decomposition(f: &UPoly<Rational>) -> Vec<(UPoly<Rational>, u32)> {
    let field = &Rationals;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let fp = f.derivative(field);
    let a0 = f.gcd(field, &fp);
    let mut b = f.divmod(field, &a0).unwrap().0;
    let mut c = fp.divmod(field, &a0).unwrap().0;
    let mut d = c.sub(field, &b.derivative(field));
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(field, &d);
        if a.deg() > 0 {
            out.push((a.clone(), i));
        }
        b = b.divmod(field, &a).unwrap().0;
        c = d.divmod(field, &a).unwrap().0;
        d = c.sub(field, &b.derivative(field));
        i += 1;
    }
    out
}

fn to_primitive_z(f: &UPoly<Rational>) -> ZPoly {
    let den = lcm_denoms(f.coeffs());
    let scaled: Vec<BigInt> = f.coeffs().iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut v: ZPoly = scaled.into_iter().map(|x| x / &g).collect();
    if v.last().map(|x| x.is_negative()).unwrap_or(false) {
        v = v.into_iter().map(|x| -x).collect();
    }
    v
}

fn z_to_monic_q(f: &ZPoly) -> UPoly<Rational> {
    let lc = Rational::from_integer(f.last().unwrap().clone());
    UPoly::new(&Rationals, f.iter().map(|c| Rational::from_integer(c.clone()) / &lc).collect())
}

/// Monic irreducible factors of a monic squarefree polynomial over Q.
fn factor_squarefree(f: &UPoly<Rational>) -> Vec<UPoly<Rational>> {
    if f.deg() <= 1 {
        return vec![f.clone()];
    }
    let fz = to_primitive_z(f);
    factor_z(&fz).iter().map(z_to_monic_q).collect()
}

fn reduce_mod_p(f: &ZPoly, p: u64) -> modp::Poly {
    let pb = BigInt::from(p);
    modp::trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

/// Factors a primitive squarefree integer polynomial with positive leading coefficient.
fn factor_z(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();
    let mut best: Option<(u64, Vec<modp::Poly>)> = None;
    let mut tried = 0;
    for p in (3u64..2000).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce_mod_p(f, p);
        if fp.len() != f.len() || modp::gcd(&fp, &modp::derivative(&fp, p), p).len() > 1 {
            continue;
        }
        let facs = modp::berlekamp(&modp::monic(&fp, p), p);
        if best.as_ref().map(|(_, b)| facs.len() < b.len()).unwrap_or(true) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == PRIMES_TRIED || best.as_ref().map(|(_, b)| b.len() == 1).unwrap_or(false) {
            break;
        }
    }
    let (p, modular) = best.expect("some small prime is good for a squarefree polynomial");
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    // coefficient bound for factors of lc * f
    let maxc = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = &lc.abs() * (BigInt::one() << n) * BigInt::from(n + 1) * maxc;
    let target = bound * 2;
    let lifted = hensel_lift(f, &modular, p, &target);
    recombine(f, lifted.0, &lifted.1)
}

fn sym_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn zp_trim(mut a: ZPoly) -> ZPoly {
    while a.last().map(|x| x.is_zero()).unwrap_or(false) {
        a.pop();
    }
    a
}

fn zp_mod(a: &ZPoly, m: &BigInt) -> ZPoly {
    zp_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zp_add(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zp_trim((0..n).map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
}

fn zp_sub(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zp_trim((0..n).map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
}

fn zp_mul(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    zp_mod(&v, m)
}

/// Division by a monic polynomial modulo m.
fn zp_divrem_monic(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), zp_mod(&r, m));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[k + j] = (&r[k + j] - &c * y).mod_floor(m);
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (zp_mod(&q, m), zp_mod(&r, m))
}

fn from_modp(a: &modp::Poly) -> ZPoly {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

/// Lifts `f ≡ lc * prod(factors) (mod p)` to a modulus at least `target`.
/// Returns the modulus and the lifted monic factors.
fn hensel_lift(f: &ZPoly, factors: &[modp::Poly], p: u64, target: &BigInt) -> (BigInt, Vec<ZPoly>) {
    let mut m = BigInt::from(p);
    let mut steps = 0u32;
    while &m <= target {
        m = &m * &m;
        steps += 1;
    }
    let mut out = Vec::new();
    lift_tree(f, factors, p, steps, &mut out);
    (m, out)
}

fn lift_tree(f: &ZPoly, factors: &[modp::Poly], p: u64, steps: u32, out: &mut Vec<ZPoly>) {
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    for _ in 0..steps {
        modulus = &modulus * &modulus;
    }
    if factors.len() == 1 {
        // monic representative of f modulo the final modulus
        let lc = f.last().unwrap().mod_floor(&modulus);
        let inv = lc.modinv(&modulus).expect("lc invertible");
        out.push(zp_mod(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), &modulus));
        return;
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let lcp = f.last().unwrap().mod_floor(&pb).to_u64().unwrap();
    let g0 = left.iter().fold(vec![lcp], |acc, u| modp::mul(&acc, u, p));
    let h0 = right.iter().fold(vec![1u64], |acc, u| modp::mul(&acc, u, p));
    let (_, s0, t0) = modp::ext_gcd(&g0, &h0, p);
    let (mut g, mut h, mut s, mut t) = (from_modp(&g0), from_modp(&h0), from_modp(&s0), from_modp(&t0));
    let mut m = pb;
    for _ in 0..steps {
        let m2 = &m * &m;
        let e = zp_sub(&zp_mod(f, &m2), &zp_mul(&g, &h, &m2), &m2);
        let (q, r) = zp_divrem_monic(&zp_mul(&s, &e, &m2), &h, &m2);
        let g_new = zp_add(&zp_add(&g, &zp_mul(&t, &e, &m2), &m2), &zp_mul(&q, &g, &m2), &m2);
        let h_new = zp_add(&h, &r, &m2);
        let b = zp_sub(&zp_add(&zp_mul(&s, &g_new, &m2), &zp_mul(&t, &h_new, &m2), &m2), &vec![BigInt::one()], &m2);
        let (c, d) = zp_divrem_monic(&zp_mul(&s, &b, &m2), &h_new, &m2);
        s = zp_sub(&s, &d, &m2);
        t = zp_sub(&zp_sub(&t, &zp_mul(&t, &b, &m2), &m2), &zp_mul(&c, &g_new, &m2), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    lift_tree(&g, left, p, steps, out);
    lift_tree(&h, right, p, steps, out);
}

fn z_divides(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    // exact division over Z of f by g
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return None;
    }
    let lg = g.last().unwrap();
    let mut r = f.clone();
    let mut q = vec![BigInt::zero(); f.len() - dg];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + dg].div_rem(lg);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, y) in g.iter().enumerate() {
                r[k + j] -= &c * y;
            }
        }
        q[k] = c;
    }
    if r.iter().all(|x| x.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn primitive(v: ZPoly) -> ZPoly {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut v: ZPoly = v.into_iter().map(|x| x / &g).collect();
    if v.last().map(|x| x.is_negative()).unwrap_or(false) {
        v = v.into_iter().map(|x| -x).collect();
    }
    v
}

/// Advances `combo` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in (i + 1)..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn recombine(f: &ZPoly, m: BigInt, lifted: &[ZPoly]) -> Vec<ZPoly> {
    let mut remaining: Vec<ZPoly> = lifted.to_vec();
    let mut f = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    'sizes: while 2 * size <= remaining.len() {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let lc = f.last().unwrap().clone();
            let prod = combo.iter().fold(vec![lc], |acc, &i| zp_mul(&acc, &remaining[i], &m));
            let cand = primitive(zp_trim(prod.iter().map(|c| sym_mod(c, &m)).collect()));
            if cand.len() > 1 {
                if let Some(q) = z_divides(&f, &cand) {
                    found.push(cand);
                    f = primitive(q);
                    remaining = remaining
                        .into_iter()
                        .enumerate()
                        .filter(|(i, _)| !combo.contains(i))
                        .map(|(_, u)| u)
                        .collect();
                    continue 'sizes;
                }
            }
            if !next_combination(&mut combo, remaining.len()) {
                break;
            }
        }
        size += 1;
    }
    if f.len() > 1 {
        found.push(f);
    }
    found
}
