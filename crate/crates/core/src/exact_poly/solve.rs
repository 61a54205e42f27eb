//! Rational points of zero-dimensional polynomial systems by lex elimination.

use super::factor::rational_roots;
use super::field::Rationals;
use super::groebner::gb_compute_in;
use super::multipoly::{MultiPoly, Vars};
use super::order::MonomialOrder;
use super::rational::Rational;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Every rational solution of `system` (over `vars`), in lexicographic order
/// of the value tuples read from the last variable backwards.
pub fn rational_solutions(system: &[MultiPoly], vars: &Vars, gb_budget: usize, degree_cap: usize) -> Result<Vec<Vec<Rational>>> {
    let gb = gb_compute_in(vars, system, MonomialOrder::Lex, gb_budget)?;
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    let n = vars.len();
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let last = n - 1;
    let eliminant = gb
        .polys()
        .iter()
        .find(|p| (0..last).all(|i| !p.involves(i)) && p.involves(last))
        .ok_or_else(|| Error::Incomplete("polynomial system is not zero-dimensional".into()))?;
    let roots = rational_roots(&UPoly::from_rationals(&Rationals, &eliminant.univariate_coeffs(last)), degree_cap)?;
    let rest_vars: Vars = vars[..last].to_vec().into();
    let map: Vec<usize> = (0..last).chain(std::iter::once(0)).collect();
    let mut out = Vec::new();
    for r in roots {
        let value = MultiPoly::constant(vars, r.clone());
        let reduced: Vec<MultiPoly> = gb
            .polys()
            .iter()
            .map(|p| p.substitute(last, &value))
            .filter(|p| !p.is_zero())
            .collect();
        if reduced.iter().any(|p| p.is_constant()) {
            continue;
        }
        let reduced: Vec<MultiPoly> = reduced.iter().map(|p| p.remap(&rest_vars, &map)).collect();
        for mut sol in rational_solutions(&reduced, &rest_vars, gb_budget, degree_cap)? {
            sol.push(r.clone());
            out.push(sol);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::multipoly::vars;
    use crate::exact_poly::rational::q;

    #[test]
    fn sqrt2_ansatz_has_two_rational_points() {
        // (p + q a)^2 = 2 with a^2 = 2: p^2 + 2q^2 = 2, 2pq = 0
        let vs = vars(&["p", "q"]);
        let p = MultiPoly::var(&vs, 0);
        let qv = MultiPoly::var(&vs, 1);
        let two = MultiPoly::constant(&vs, q(2));
        let sys = [&(&p.pow(2) + &qv.pow(2).scale(&q(2))) - &two, (&p * &qv).scale(&q(2))];
        let sols = rational_solutions(&sys, &vs, 1000, 24).unwrap();
        assert_eq!(sols, vec![vec![q(0), q(-1)], vec![q(0), q(1)]]);
    }

    #[test]
    fn sqrt3_in_sqrt2_field_has_none() {
        let vs = vars(&["p", "q"]);
        let p = MultiPoly::var(&vs, 0);
        let qv = MultiPoly::var(&vs, 1);
        let three = MultiPoly::constant(&vs, q(3));
        let sys = [&(&p.pow(2) + &qv.pow(2).scale(&q(2))) - &three, (&p * &qv).scale(&q(2))];
        assert!(rational_solutions(&sys, &vs, 1000, 24).unwrap().is_empty());
    }

    #[test]
    fn positive_dimension_is_reported() {
        let vs = vars(&["p", "q"]);
        let p = MultiPoly::var(&vs, 0);
        assert!(matches!(rational_solutions(&[p], &vs, 1000, 24), Err(Error::Incomplete(_))));
    }
}
