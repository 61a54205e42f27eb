//! Finitely generated subrings of a field tower, presented by generators and
//! the kernel of the evaluation map, with exact subring membership.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_poly::gcd::{divides_power_of, lcm, normalize};
use crate::exact_poly::{gb_compute_in, Field, GroebnerBasis, MonomialOrder, MultiPoly, Vars};
use crate::field_tower::{FieldElement, FieldTower};
use crate::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    K,
    L,
}

/// `Q[g_1..g_n]` inside the tower, with relations in variables `z1..zn`.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    generators: Vec<FieldElement>,
    names: Vars,
    ambient: Ambient,
    relations: GroebnerBasis,
    oracle: MembershipOracle,
}

impl PartialEq for RingPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.ambient == other.ambient
    }
}

/// Witness that `x = p(g_1..g_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberWitness {
    pub expression: MultiPoly,
}

/// Subalgebra membership by an elimination Gröbner basis of
/// `⟨z_i - y·D·g_i, y·D - 1, cleared minimal polynomials⟩` in
/// `Q[y, t, a, z]`: `x` lies in `Q[g]` iff the normal form of `y^k·D^k·x`
/// involves the `z` only.
#[derive(Clone, Debug)]
struct MembershipOracle {
    tower: FieldTower,
    vars: Vars,
    /// Number of leading variables eliminated (`y`, the `t`, the `a`).
    ambient_vars: usize,
    has_y: bool,
    den: MultiPoly,
    gb: GroebnerBasis,
}

fn generator_names(n: usize) -> Vars {
    (1..=n).map(|i| format!("z{i}")).collect::<Vec<_>>().into()
}

impl MembershipOracle {
    fn new(tower: &FieldTower, gens: &[FieldElement], cfg: &Config) -> Result<Self> {
        let tvars = tower.transcendentals();
        let mut den = tower.common_denominator(gens.iter());
        for i in 0..tower.num_algebraics() {
            den = lcm(&den, &tower.common_denominator(tower.min_poly_of(i).coeffs()));
        }
        let den = normalize(&den);
        let has_y = !den.is_constant();
        let mut names: Vec<String> = Vec::new();
        if has_y {
            names.push("_y".into());
        }
        names.extend(tvars.iter().cloned());
        names.extend(tower.generator_names());
        let ambient_vars = names.len();
        names.extend(generator_names(gens.len()).iter().cloned());
        let vars: Vars = names.into();
        let off = usize::from(has_y);
        let r = tvars.len();
        let tail: Vars = vars[off..ambient_vars].to_vec().into();
        let lift = |p: &MultiPoly| p.remap(&vars, &(off..ambient_vars).collect::<Vec<_>>());
        let lift_t = |p: &MultiPoly| p.remap(&vars, &(off..off + r).collect::<Vec<_>>());

        let mut polys = Vec::new();
        let y = if has_y { MultiPoly::var(&vars, 0) } else { MultiPoly::one(&vars) };
        if has_y {
            polys.push(&(&y * &lift_t(&den)) - &MultiPoly::one(&vars));
        }
        for i in 0..tower.num_algebraics() {
            let m = tower.min_poly_of(i);
            let e = tower.common_denominator(m.coeffs());
            let mut mp = MultiPoly::zero(&vars);
            for (j, c) in m.coeffs().iter().enumerate() {
                let cp = lift(&tower.to_poly_in(c, &tail, &e).ok_or_else(|| Error::Internal("denominator".into()))?);
                let mut shift = vec![0u32; vars.len()];
                shift[off + r + i] = j as u32;
                mp = &mp + &cp.mul_monomial(&shift, &num_traits::One::one());
            }
            polys.push(mp);
        }
        for (k, g) in gens.iter().enumerate() {
            let scale = if has_y { den.clone() } else { MultiPoly::one(tvars) };
            let enc = lift(&tower.to_poly_in(g, &tail, &scale).ok_or_else(|| Error::Internal("denominator".into()))?);
            polys.push(&MultiPoly::var(&vars, ambient_vars + k) - &(&y * &enc));
        }
        let gb = gb_compute_in(&vars, &polys, MonomialOrder::Block { split: ambient_vars }, cfg.gb_budget)?;
        Ok(MembershipOracle { tower: tower.clone(), vars, ambient_vars, has_y, den, gb })
    }

    fn relations(&self, cfg: &Config) -> Result<GroebnerBasis> {
        let n = self.vars.len() - self.ambient_vars;
        let zvars = generator_names(n);
        let map: Vec<usize> = (0..self.vars.len()).map(|i| i.saturating_sub(self.ambient_vars)).collect();
        let elim: Vec<MultiPoly> = self.gb.eliminate_first(self.ambient_vars).iter().map(|p| p.remap(&zvars, &map)).collect();
        gb_compute_in(&zvars, &elim, MonomialOrder::GrevLex, cfg.gb_budget)
    }

    fn member(&self, x: &FieldElement) -> Option<MultiPoly> {
        let tower = &self.tower;
        let tvars = tower.transcendentals();
        if !x.coords().values().all(|c| divides_power_of(c.den(), &self.den)) {
            return None;
        }
        let off = usize::from(self.has_y);
        let tail: Vars = self.vars[off..self.ambient_vars].to_vec().into();
        // smallest k with D^k x polynomial
        let mut k = 0u32;
        let mut scale = MultiPoly::one(tvars);
        let enc = loop {
            if let Some(p) = tower.to_poly_in(x, &tail, &scale) {
                break p;
            }
            k += 1;
            scale = &scale * &self.den;
        };
        let mut f = enc.remap(&self.vars, &(off..self.ambient_vars).collect::<Vec<_>>());
        if k > 0 {
            let mut e = vec![0u32; self.vars.len()];
            e[0] = k;
            f = f.mul_monomial(&e, &num_traits::One::one());
        }
        let nf = self.gb.reduce(&f);
        if (0..self.ambient_vars).any(|i| nf.involves(i)) {
            return None;
        }
        let n = self.vars.len() - self.ambient_vars;
        let map: Vec<usize> = (0..self.vars.len()).map(|i| i.saturating_sub(self.ambient_vars)).collect();
        Some(nf.remap(&generator_names(n), &map))
    }
}

/// Value of a polynomial in `z1..zn` at the generators.
pub fn evaluate_at(tower: &FieldTower, p: &MultiPoly, gens: &[FieldElement]) -> FieldElement {
    let mut acc = tower.zero();
    for (e, c) in p.terms() {
        let mut term = tower.from_rational(c);
        for (g, &k) in gens.iter().zip(e) {
            if k > 0 {
                term = tower.mul(&term, &tower.pow(g, k));
            }
        }
        acc = tower.add(&acc, &term);
    }
    acc
}

impl RingPresentation {
    pub fn new(tower: &FieldTower, generators: Vec<FieldElement>, ambient: Ambient, cfg: &Config) -> Result<Self> {
        let oracle = MembershipOracle::new(tower, &generators, cfg)?;
        let relations = oracle.relations(cfg)?;
        let names = generator_names(generators.len());
        let out = RingPresentation { generators, names, ambient, relations, oracle };
        for rel in out.relations.polys() {
            if !evaluate_at(tower, rel, &out.generators).is_zero() {
                return Err(Error::Internal(format!("relation {rel} does not vanish on the generators")));
            }
        }
        Ok(out)
    }

    pub fn generators(&self) -> &[FieldElement] {
        &self.generators
    }

    pub fn names(&self) -> &Vars {
        &self.names
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn relations(&self) -> &GroebnerBasis {
        &self.relations
    }

    pub fn tower(&self) -> &FieldTower {
        &self.oracle.tower
    }

    /// Exact membership in the subring, with an evaluation-verified witness.
    pub fn member(&self, x: &FieldElement) -> Result<Option<MemberWitness>> {
        match self.oracle.member(x) {
            None => Ok(None),
            Some(p) => {
                if evaluate_at(&self.oracle.tower, &p, &self.generators) != *x {
                    return Err(Error::Internal("membership witness does not evaluate to the element".into()));
                }
                Ok(Some(MemberWitness { expression: p }))
            }
        }
    }

    pub fn contains(&self, x: &FieldElement) -> Result<bool> {
        Ok(self.member(x)?.is_some())
    }

    /// Whether every generator of `other` lies in this ring.
    pub fn contains_ring(&self, other: &RingPresentation) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Generators as sorted multiset, used for cheap equality of rings.
    pub fn generator_multiset(&self) -> Vec<FieldElement> {
        let mut v = self.generators.clone();
        v.sort();
        v
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| self.oracle.tower.to_string_of(g)).collect()
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.polys().iter().map(|p| p.to_string()).collect()
    }

    /// Certificates `x = p(g)/q(g)` for each target, searching denominators
    /// among products of generators of total degree at most `degree_bound`.
    /// `None` for a target without a certificate within the bound.
    pub fn fraction_certificates(&self, targets: &[FieldElement], degree_bound: u32) -> Result<Vec<Option<FractionWitness>>> {
        let tower = &self.oracle.tower;
        let n = self.generators.len();
        let mut monos: Vec<Vec<u32>> = vec![vec![0; n]];
        let mut frontier = monos.clone();
        for _ in 0..degree_bound {
            let mut next = Vec::new();
            for m in &frontier {
                for j in 0..n {
                    let mut m2 = m.clone();
                    m2[j] += 1;
                    if !monos.contains(&m2) && !next.contains(&m2) {
                        next.push(m2);
                    }
                }
            }
            monos.extend(next.iter().cloned());
            frontier = next;
        }
        let mut out = Vec::new();
        for x in targets {
            let mut found = None;
            for m in &monos {
                let q = MultiPoly::monomial(&self.names, m.clone(), num_traits::One::one());
                let qv = evaluate_at(tower, &q, &self.generators);
                if qv.is_zero() {
                    continue;
                }
                if let Some(w) = self.member(&tower.mul(x, &qv))? {
                    found = Some(FractionWitness { numerator: w.expression, denominator: q });
                    break;
                }
            }
            out.push(found);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionWitness {
    pub numerator: MultiPoly,
    pub denominator: MultiPoly,
}

impl FractionWitness {
    pub fn render(&self) -> String {
        let n = self.numerator.to_string();
        if self.denominator.is_one() {
            n
        } else {
            format!("({n})/({})", self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_tower::{tower_build, TowerSpec};

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn z_sqrt2_relations_by_hand() {
        let t = tower_build(&TowerSpec::number_field(&[("a", "a^2 - 2")]), &cfg()).unwrap();
        let a = t.generator(0);
        let ring = RingPresentation::new(&t, vec![a.clone(), t.neg(&a)], Ambient::L, &cfg()).unwrap();
        // kernel: z1 + z2, z1^2 - 2 (in some reduced form)
        let rels = ring.relations();
        let v = rels.vars().clone();
        let z1 = MultiPoly::var(&v, 0);
        let z2 = MultiPoly::var(&v, 1);
        assert!(rels.contains(&(&z1 + &z2)));
        assert!(rels.contains(&(&z1.pow(2) - &MultiPoly::constant(&v, crate::exact_poly::q(2)))));
        assert_eq!(rels.len(), 2);
        assert!(ring.contains(&t.parse_element("3 + 5*a").unwrap()).unwrap());
    }

    #[test]
    fn polynomial_ring_membership() {
        let t = tower_build(&TowerSpec::from_strs(&["t"], &[], &[]), &cfg()).unwrap();
        let zt = RingPresentation::new(&t, vec![t.transcendental(0)], Ambient::K, &cfg()).unwrap();
        assert!(zt.contains(&t.parse_element("t^3 - t").unwrap()).unwrap());
        assert!(!zt.contains(&t.parse_element("1/t").unwrap()).unwrap());
        let zinv = RingPresentation::new(&t, vec![t.parse_element("1/t").unwrap()], Ambient::K, &cfg()).unwrap();
        assert!(!zinv.contains(&t.transcendental(0)).unwrap());
        assert!(zinv.contains(&t.parse_element("1/t^2 + 3").unwrap()).unwrap());
        let laurent = RingPresentation::new(&t, vec![t.transcendental(0), t.parse_element("1/t").unwrap()], Ambient::K, &cfg()).unwrap();
        assert!(laurent.contains(&t.parse_element("t^2 + 1/t^3").unwrap()).unwrap());
        assert!(!laurent.contains(&t.parse_element("1/(t + 1)").unwrap()).unwrap());
        // Q[t^2] does not contain t
        let even = RingPresentation::new(&t, vec![t.parse_element("t^2").unwrap()], Ambient::K, &cfg()).unwrap();
        assert!(!even.contains(&t.transcendental(0)).unwrap());
        assert!(even.fraction_certificates(&[t.transcendental(0)], 6).unwrap()[0].is_none());
        let cert = zinv.fraction_certificates(&[t.transcendental(0)], 6).unwrap();
        assert_eq!(cert[0].as_ref().unwrap().render(), "(1)/(z1)");
    }

    #[test]
    fn elliptic_chart_relations() {
        let t = tower_build(&TowerSpec::from_strs(&["t"], &[], &[("s", "s^2 - (t^3 - t)")]), &cfg()).unwrap();
        let s = t.generator(0);
        let ring = RingPresentation::new(&t, vec![t.transcendental(0), s.clone(), t.neg(&s)], Ambient::L, &cfg()).unwrap();
        let v = ring.relations().vars().clone();
        let z = |i| MultiPoly::var(&v, i);
        assert!(ring.relations().contains(&(&z(1) + &z(2))));
        assert!(ring.relations().contains(&(&(&z(1).pow(2) - &z(0).pow(3)) + &z(0))));
        assert!(ring.contains(&t.parse_element("t*s + s^3").unwrap()).unwrap());
        assert!(!ring.contains(&t.parse_element("s/2 + 1/t").unwrap()).unwrap());
    }
}
