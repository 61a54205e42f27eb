//! Dense polynomials over a small prime field, and Berlekamp splitting.

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
    let n = a.len().max(b.len());
    let v = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(v)
}

pub(crate) fn mul(a: &Poly, b: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(v)
}

pub(crate) fn divrem(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly) {
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().expect("nonzero divisor"), p);
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = mulmod(r[k + db], inv, p);
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mulmod(c, y, p)) % p;
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub(crate) fn monic(a: &Poly, p: u64) -> Poly {
    match a.last() {
        Some(&lc) if lc != 1 => {
            let inv = inv_mod(lc, p);
            a.iter().map(|&x| mulmod(x, inv, p)).collect()
        }
        _ => a.clone(),
    }
}

pub(crate) fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s a + t b = g` monic.
pub(crate) fn ext_gcd(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (trim(a.clone()), trim(b.clone()));
    let (mut s0, mut s1): (Poly, Poly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = inv_mod(*r0.last().expect("nonzero gcd"), p);
    let sc = |v: &Poly| trim(v.iter().map(|&x| mulmod(x, inv, p)).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

pub(crate) fn derivative(a: &Poly, p: u64) -> Poly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

fn powmod_poly(base: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
    let mut result: Poly = vec![1];
    let mut b = divrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            result = divrem(&mul(&result, &b, p), m, p).1;
        }
        b = divrem(&mul(&b, &b, p), m, p).1;
        e >>= 1;
    }
    result
}

/// Left kernel basis of an `n x n` matrix mod p.
fn left_kernel(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    // transpose so the left kernel becomes a right kernel
    let mut a: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..n).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for j in 0..n {
            a[r][j] = mulmod(a[r][j], inv, p);
        }
        for i in 0..n {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..n {
                    a[i][j] = (a[i][j] + p - mulmod(f, a[r][j], p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[row][f]) % p;
            }
            v
        })
        .collect()
}

/// Monic irreducible factors of a monic squarefree `f` over F_p (Berlekamp).
pub(crate) fn berlekamp(f: &Poly, p: u64) -> Vec<Poly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let xp = powmod_poly(&vec![0, 1], p, f, p);
    let mut qm = vec![vec![0u64; n]; n];
    let mut row: Poly = vec![1];
    for (i, qrow) in qm.iter_mut().enumerate() {
        for (j, slot) in qrow.iter_mut().enumerate() {
            *slot = row.get(j).copied().unwrap_or(0);
        }
        qrow[i] = (qrow[i] + p - 1) % p;
        row = divrem(&mul(&row, &xp, p), f, p).1;
    }
    let kernel = left_kernel(&qm, p);
    let k = kernel.len();
    let mut factors = vec![f.clone()];
    for v in kernel.iter() {
        if factors.len() == k {
            break;
        }
        let g = trim(v.clone());
        if g.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for h in factors {
            if h.len() <= 2 {
                next.push(h);
                continue;
            }
            let mut rest = h;
            for s in 0..p {
                if rest.len() <= 2 {
                    break;
                }
                let mut gs = g.clone();
                gs[0] = (gs[0] + p - s % p) % p;
                let d = gcd(&rest, &trim(gs), p);
                if d.len() > 1 && d.len() < rest.len() {
                    rest = monic(&divrem(&rest, &d, p).0, p);
                    next.push(d);
                }
            }
            next.push(rest);
        }
        factors = next;
    }
    factors.sort();
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn berlekamp_splits_x4_minus_1_mod_5() {
        // x^4 - 1 = (x-1)(x-2)(x-3)(x-4) mod 5
        let f = vec![4, 0, 0, 0, 1];
        let fs = berlekamp(&f, 5);
        assert_eq!(fs.len(), 4);
        let prod = fs.iter().fold(vec![1u64], |acc, g| mul(&acc, g, 5));
        assert_eq!(prod, f);
    }

    #[test]
    fn irreducible_stays_whole() {
        // x^2 + 1 mod 3 is irreducible
        let f = vec![1, 0, 1];
        assert_eq!(berlekamp(&f, 3), vec![f]);
    }
}
