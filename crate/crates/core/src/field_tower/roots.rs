//! Roots of univariate polynomials inside a tower.
//!
//! Number-field towers use Trager factorization and read off linear factors.
//! With transcendentals the unknown root is written in the tower basis with
//! polynomial coordinates of bounded degree over a fixed denominator, and
//! f(x) = 0 becomes a zero-dimensional system over Q. The search is complete
//! once it has found as many roots as a good specialization admits: at such a
//! point distinct roots stay distinct, so that count bounds the root count.

use super::norm::{candidate_points, factor_in_tower, specialize_checked, specialize_poly};
use super::ratfunc::RatFunc;
use super::tower::{FieldElement, FieldTower};
use crate::error::{Error, Result};
use crate::exact_poly::gcd::prem;
use crate::exact_poly::solve::rational_solutions;
use crate::exact_poly::{Field, MultiPoly, UPoly, Vars};
use crate::Config;

/// Every root of `f` in the tower, deduplicated and sorted.
pub fn roots_in_tower(tower: &FieldTower, f: &UPoly<FieldElement>, cfg: &Config) -> Result<Vec<FieldElement>> {
    if f.is_zero() {
        return Err(Error::Input("every element is a root of the zero polynomial".into()));
    }
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    let g = f.squarefree_part(tower);
    let mut roots = if g.deg() == 1 {
        vec![tower.neg(&g.coeffs()[0])]
    } else if tower.num_transcendentals() == 0 {
        linear_factor_roots(tower, &g, cfg)?
    } else {
        ansatz_roots(tower, &g, cfg)?
    };
    for r in &roots {
        if !f.eval(tower, r).is_zero() {
            return Err(Error::Internal(format!("claimed root {} does not satisfy the polynomial", tower.to_string_of(r))));
        }
    }
    roots.sort();
    roots.dedup();
    if roots.len() > f.deg() {
        return Err(Error::Internal("more roots than the degree".into()));
    }
    Ok(roots)
}

fn linear_factor_roots(tower: &FieldTower, g: &UPoly<FieldElement>, cfg: &Config) -> Result<Vec<FieldElement>> {
    Ok(factor_in_tower(tower, g, cfg.factor_degree_cap)?
        .iter()
        .filter(|h| h.deg() == 1)
        .map(|h| tower.neg(&h.coeffs()[0]))
        .collect())
}

/// Minimum root count over several good specializations.
pub fn root_count_bound(tower: &FieldTower, g: &UPoly<FieldElement>, cfg: &Config) -> Result<usize> {
    let mut best: Option<usize> = None;
    let mut good = 0;
    for point in candidate_points(tower.num_transcendentals(), 40) {
        let Some(spec) = specialize_checked(tower, &point, cfg.factor_degree_cap)? else { continue };
        let Some(g0) = specialize_poly(tower, g, &point, &spec) else { continue };
        if g0.deg() != g.deg() || !g0.is_squarefree(&spec) {
            continue;
        }
        let n = linear_factor_roots(&spec, &g0, cfg)?.len();
        best = Some(best.map_or(n, |b| b.min(n)));
        good += 1;
        if good == 4 || best == Some(0) {
            break;
        }
    }
    best.ok_or_else(|| Error::Incomplete("no good specialization point for the root count bound".into()))
}

fn ansatz_roots(tower: &FieldTower, g: &UPoly<FieldElement>, cfg: &Config) -> Result<Vec<FieldElement>> {
    let bound = root_count_bound(tower, g, cfg)?;
    if bound == 0 {
        return Ok(Vec::new());
    }
    let tvars = tower.transcendentals();
    let mut all: Vec<&FieldElement> = g.coeffs().iter().collect();
    let tails: Vec<UPoly<FieldElement>> = (0..tower.num_algebraics()).map(|i| tower.min_poly_of(i)).collect();
    for m in &tails {
        all.extend(m.coeffs());
    }
    let e_all = tower.common_denominator(all);
    let mut dens = vec![MultiPoly::one(tvars)];
    if !e_all.is_constant() {
        dens.push(e_all);
    }
    let mut best = 0;
    for b in 0..=cfg.degree_bound {
        for d in &dens {
            let roots = solve_ansatz(tower, g, b, d, cfg)?;
            if roots.len() > bound {
                return Err(Error::Internal("root count exceeds the specialization bound".into()));
            }
            if roots.len() == bound {
                return Ok(roots);
            }
            best = best.max(roots.len());
        }
    }
    Err(Error::Incomplete(format!(
        "found {best} of at most {bound} roots with coordinate degree up to {}",
        cfg.degree_bound
    )))
}

/// Exponent vectors in `r` variables of total degree at most `b`.
fn monomials_up_to(r: usize, b: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; r]];
    for _ in 0..b {
        let mut next = out.clone();
        for m in &out {
            for j in 0..r {
                let mut m2 = m.clone();
                m2[j] += 1;
                if !next.contains(&m2) {
                    next.push(m2);
                }
            }
        }
        out = next;
    }
    out.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum::<u32>()).then_with(|| b.cmp(a)));
    out
}

/// Roots of the form `(1/den) Σ u_k τ_k(t) μ_k(a)` with `deg τ_k <= b`.
fn solve_ansatz(tower: &FieldTower, g: &UPoly<FieldElement>, b: u32, den: &MultiPoly, cfg: &Config) -> Result<Vec<FieldElement>> {
    let r = tower.num_transcendentals();
    let k = tower.num_algebraics();
    let basis = tower.full_basis();
    let tmonos = monomials_up_to(r, b);
    let nu = basis.len() * tmonos.len();
    // leading underscores cannot collide with user symbols
    let mut names: Vec<String> = (0..nu).map(|i| format!("_u{i}")).collect();
    names.extend(tower.transcendentals().iter().cloned());
    names.extend(tower.generator_names());
    let vars: Vars = names.into();
    let uvars: Vars = vars[..nu].to_vec().into();

    let mut y = MultiPoly::zero(&vars);
    let mut labels = Vec::with_capacity(nu);
    for mu in &basis {
        for tau in &tmonos {
            let idx = labels.len();
            let mut e = vec![0u32; vars.len()];
            e[idx] = 1;
            e[nu..nu + r].copy_from_slice(tau);
            e[nu + r..].copy_from_slice(mu);
            y.add_term(e, num_traits::One::one());
            labels.push((mu.clone(), tau.clone()));
        }
    }
    let embed_t = |p: &MultiPoly| -> MultiPoly {
        let map: Vec<usize> = (0..r).map(|j| nu + j).collect();
        p.remap(&vars, &map)
    };
    let den_full = embed_t(den);

    // den^n g(y/den) with denominators of the coefficients cleared
    let n = g.deg();
    let e = tower.common_denominator(g.coeffs());
    let mut acc = MultiPoly::zero(&vars);
    let mut ypow = MultiPoly::one(&vars);
    for j in 0..=n {
        let c = tower
            .to_poly_in(&g.coeffs()[j], &tail_vars(&vars, nu), &e)
            .ok_or_else(|| Error::Internal("denominator does not clear".into()))?;
        let c = c.remap(&vars, &(nu..vars.len()).collect::<Vec<_>>());
        acc = &acc + &(&(&c * &ypow) * &den_full.pow((n - j) as u32));
        if j < n {
            ypow = &ypow * &y;
        }
    }
    // reduce by the denominator-cleared minimal polynomials, top level first
    for i in (0..k).rev() {
        let m = tower.min_poly_of(i);
        let ei = tower.common_denominator(m.coeffs());
        let mut mp = MultiPoly::zero(&vars);
        for (j, c) in m.coeffs().iter().enumerate() {
            let cp = tower
                .to_poly_in(c, &tail_vars(&vars, nu), &ei)
                .ok_or_else(|| Error::Internal("denominator does not clear".into()))?
                .remap(&vars, &(nu..vars.len()).collect::<Vec<_>>());
            let mut shift = vec![0u32; vars.len()];
            shift[nu + r + i] = j as u32;
            mp = &mp + &cp.mul_monomial(&shift, &num_traits::One::one());
        }
        acc = prem(&acc, &mp, nu + r + i);
    }
    // every (t, a)-coefficient must vanish
    let mut eqs: std::collections::BTreeMap<Vec<u32>, MultiPoly> = std::collections::BTreeMap::new();
    for (e, c) in acc.terms() {
        eqs.entry(e[nu..].to_vec()).or_insert_with(|| MultiPoly::zero(&uvars)).add_term(e[..nu].to_vec(), c.clone());
    }
    let system: Vec<MultiPoly> = eqs.into_values().filter(|p| !p.is_zero()).collect();
    let sols = rational_solutions(&system, &uvars, cfg.gb_budget, cfg.factor_degree_cap)?;

    let den_rf = RatFunc::from_poly(den.clone());
    let inv_den = den_rf.inv().expect("nonzero denominator");
    let mut roots = Vec::new();
    for sol in sols {
        let mut x = tower.zero();
        for ((mu, tau), u) in labels.iter().zip(&sol) {
            if num_traits::Zero::is_zero(u) {
                continue;
            }
            let c = RatFunc::from_poly(MultiPoly::monomial(tower.transcendentals(), tau.clone(), u.clone())).mul(&inv_den);
            x = tower.add(&x, &tower.monomial(mu.clone(), c));
        }
        if g.eval(tower, &x).is_zero() {
            roots.push(x);
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// The transcendental-and-algebraic part of the ansatz variables.
fn tail_vars(vars: &Vars, nu: usize) -> Vars {
    vars[nu..].to_vec().into()
}
