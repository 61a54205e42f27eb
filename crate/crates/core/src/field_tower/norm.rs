//! Norms down a tower and polynomial factorization over number-field towers
//! (Trager's algorithm).

use num_traits::Zero;

use super::tower::{FieldElement, FieldTower};
use crate::error::{Error, Result};
use crate::exact_poly::factor::factor_upoly;
use crate::exact_poly::linalg::det;
use crate::exact_poly::{q, Field, Rational, Rationals, UPoly};

/// Norm of `x` (involving generators `<= i` only) to the field below generator `i`.
pub fn norm_element(tower: &FieldTower, x: &FieldElement, i: usize) -> FieldElement {
    let d = tower.degree_of(i) as usize;
    let g = tower.generator(i);
    let mut m = vec![vec![tower.zero(); d]; d];
    let mut col = x.clone();
    for j in 0..d {
        for (r, c) in tower.split_at(&col, i).into_iter().enumerate() {
            m[r][j] = c;
        }
        if j + 1 < d {
            col = tower.mul(&col, &g);
        }
    }
    det(tower, &m)
}

/// Polynomial through `(k, values[k])` for `k = 0, 1, ...`.
fn interpolate(tower: &FieldTower, values: &[FieldElement]) -> UPoly<FieldElement> {
    let n = values.len();
    let f = &Rationals;
    let full = (0..n).fold(UPoly::constant(f, q(1)), |acc, k| acc.mul(f, &UPoly::linear(f, &q(k as i64))));
    let mut out = vec![tower.zero(); n];
    for (j, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let (basis, _) = full.divmod(f, &UPoly::linear(f, &q(j as i64))).expect("nonzero");
        let denom: Rational = (0..n).filter(|&m| m != j).map(|m| q(j as i64 - m as i64)).product();
        for (k, c) in basis.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let s = tower.from_rational(&(c / &denom));
                out[k] = tower.add(&out[k], &tower.mul(v, &s));
            }
        }
    }
    UPoly::new(tower, out)
}

/// Norm of a polynomial (coefficients involving generators `<= i`) to the field below generator `i`.
pub fn norm_poly_down(tower: &FieldTower, g: &UPoly<FieldElement>, i: usize) -> UPoly<FieldElement> {
    let n = g.deg() * tower.degree_of(i) as usize;
    let values: Vec<FieldElement> =
        (0..=n).map(|k| norm_element(tower, &g.eval(tower, &tower.from_rational(&q(k as i64))), i)).collect();
    interpolate(tower, &values)
}

/// Norm to Q(t_1..t_r)[x], through generators `from..num_algebraics`.
pub fn norm_poly_to(tower: &FieldTower, g: &UPoly<FieldElement>, from: usize) -> UPoly<FieldElement> {
    let mut g = g.clone();
    for i in (from..tower.num_algebraics()).rev() {
        g = norm_poly_down(tower, &g, i);
    }
    g
}

fn to_rational_poly(tower: &FieldTower, g: &UPoly<FieldElement>) -> Result<UPoly<Rational>> {
    let coeffs = g
        .coeffs()
        .iter()
        .map(|c| tower.as_rational(c).ok_or_else(|| Error::Internal("norm has non-rational coefficients".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(UPoly::new(&Rationals, coeffs))
}

/// Deterministic shifts `theta = Σ s_i a_i` with `s_i` drawn from 0, 1, -1, 2, -2.
fn shift_element(tower: &FieldTower, k: usize) -> FieldElement {
    const DIGITS: [i64; 5] = [0, 1, -1, 2, -2];
    let mut k = k;
    let mut theta = tower.zero();
    for i in 0..tower.num_algebraics() {
        let s = DIGITS[k % 5];
        k /= 5;
        if s != 0 {
            theta = tower.add(&theta, &tower.mul(&tower.from_rational(&q(s)), &tower.generator(i)));
        }
    }
    theta
}

const MAX_SHIFTS: usize = 250;

/// Monic irreducible factors of a monic squarefree `f` over a tower without
/// transcendentals, sorted by degree then coefficients.
pub fn factor_in_tower(tower: &FieldTower, f: &UPoly<FieldElement>, degree_cap: usize) -> Result<Vec<UPoly<FieldElement>>> {
    assert_eq!(tower.num_transcendentals(), 0, "Trager factorization needs a number-field tower");
    if f.deg() <= 1 {
        return Ok(vec![f.monic(tower)]);
    }
    if tower.num_algebraics() == 0 {
        let fac = factor_upoly(&to_rational_poly(tower, f)?, degree_cap)?;
        return Ok(fac.factors.iter().map(|(g, _)| g.map_to(tower, |c| tower.from_rational(c))).collect());
    }
    let norm_degree = f.deg() * tower.absolute_degree();
    if norm_degree > degree_cap {
        return Err(Error::DegreeCapExceeded { degree: norm_degree, cap: degree_cap });
    }
    for k in 0..MAX_SHIFTS {
        let theta = shift_element(tower, k);
        let g = f.shift(tower, &tower.neg(&theta));
        let n = to_rational_poly(tower, &norm_poly_to(tower, &g, 0))?;
        if !n.is_squarefree(&Rationals) {
            continue;
        }
        let fac = factor_upoly(&n, degree_cap)?;
        let mut out = Vec::new();
        for (h, _) in &fac.factors {
            let hf = h.map_to(tower, |c| tower.from_rational(c));
            let d = g.gcd(tower, &hf);
            if d.deg() >= 1 {
                out.push(d.shift(tower, &theta).monic(tower));
            }
        }
        out.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.cmp(b)));
        let prod = out.iter().fold(UPoly::constant(tower, tower.one()), |acc, h| acc.mul(tower, h));
        if prod != f.monic(tower) {
            return Err(Error::Internal("factors do not reproduce the polynomial".into()));
        }
        return Ok(out);
    }
    Err(Error::BudgetExceeded { what: "norm shift", limit: MAX_SHIFTS })
}

/// The minimal polynomial of generator `i` as a polynomial over `prefix(i)`.
pub fn level_poly(tower: &FieldTower, i: usize) -> (FieldTower, UPoly<FieldElement>) {
    let sub = tower.prefix(i);
    let coeffs = tower.min_poly_of(i).coeffs().iter().map(|c| tower.restrict(c, i)).collect();
    let f = UPoly::new(&sub, coeffs);
    (sub, f)
}

/// Whether a monic `f` over a number-field tower is irreducible.
pub fn is_irreducible_number_field(tower: &FieldTower, f: &UPoly<FieldElement>, degree_cap: usize) -> Result<bool> {
    if f.deg() <= 1 {
        return Ok(f.deg() == 1);
    }
    if !f.is_squarefree(tower) {
        return Ok(false);
    }
    Ok(factor_in_tower(tower, f, degree_cap)?.len() == 1)
}

/// Specializes a tower at a rational point and certifies that every
/// specialized minimal polynomial stays irreducible. `None` for a bad point.
pub fn specialize_checked(tower: &FieldTower, point: &[Rational], degree_cap: usize) -> Result<Option<FieldTower>> {
    let Some(spec) = tower.specialize(point) else { return Ok(None) };
    for i in 0..spec.num_algebraics() {
        let (sub, f) = level_poly(&spec, i);
        if !is_irreducible_number_field(&sub, &f, degree_cap)? {
            return Ok(None);
        }
    }
    Ok(Some(spec))
}

/// Specializes polynomial coefficients; `None` if a coefficient is undefined.
pub fn specialize_poly(
    tower: &FieldTower,
    f: &UPoly<FieldElement>,
    point: &[Rational],
    target: &FieldTower,
) -> Option<UPoly<FieldElement>> {
    let coeffs = f.coeffs().iter().map(|c| tower.specialize_element(c, point, target)).collect::<Option<Vec<_>>>()?;
    Some(UPoly::new(target, coeffs))
}

/// Deterministic integer specialization points in `r` coordinates.
pub fn candidate_points(r: usize, count: usize) -> Vec<Vec<Rational>> {
    const SEQ: [i64; 18] = [2, 3, -2, 5, -3, 7, -5, 4, 11, -7, 13, 6, -11, 17, 9, -13, 19, 10];
    (0..count).map(|k| (0..r).map(|j| q(SEQ[(k * (j + 1) + 3 * j) % SEQ.len()])).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_tower::{tower_build, TowerSpec};
    use crate::Config;

    fn s3() -> FieldTower {
        tower_build(&TowerSpec::number_field(&[("c", "c^3 - 2"), ("w", "w^2 + w + 1")]), &Config::default()).unwrap()
    }

    #[test]
    fn norm_of_generator_is_constant_term_up_to_sign() {
        let t = s3();
        // N_{Q(c,w)/Q(c)}(w) = 1, N_{Q(c)/Q}(c) = 2
        assert!(t.is_one(&norm_element(&t, &t.generator(1), 1)));
        assert_eq!(t.as_rational(&norm_element(&t, &t.generator(0), 0)), Some(q(2)));
    }

    #[test]
    fn x3_minus_2_splits_over_s3_field() {
        let t = s3();
        let f = t.parse_poly_in(&crate::expr::Expr::parse("x^3 - 2").unwrap(), "x").unwrap();
        let fs = factor_in_tower(&t, &f, 24).unwrap();
        assert_eq!(fs.len(), 3);
        assert!(fs.iter().all(|g| g.deg() == 1));
    }

    #[test]
    fn x2_minus_2_stays_irreducible_over_cube_root_field() {
        let t = tower_build(&TowerSpec::number_field(&[("c", "c^3 - 2")]), &Config::default()).unwrap();
        let f = t.parse_poly_in(&crate::expr::Expr::parse("x^2 - 2").unwrap(), "x").unwrap();
        assert_eq!(factor_in_tower(&t, &f, 24).unwrap().len(), 1);
    }
}
