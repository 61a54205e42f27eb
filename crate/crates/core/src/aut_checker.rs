//! Aut(X/Y) as the stabilizer of the chart rings inside Gal(L/K), the
//! isomorphism check against Gal(L/K), the quasi-galois-closed verdict via
//! single conjugates, and a probe of essential equality.

use serde::Serialize;

use crate::error::Result;
use crate::exact_poly::Field;
use crate::field_tower::{FieldElement, FieldTower};
use crate::galois_engine::{apply_aut, GaloisGroup};
use crate::scheme_builder::{conjugate_charts, fraction_field_certificates, same_ring, Ambient, Chart, ModelX, RingPresentation, Tristate};
use crate::Config;

/// Subgroup of Gal(L/K) given by indices into the parent group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutGroup {
    /// Parent indices, ascending, starting with the identity 0.
    pub elements: Vec<usize>,
    /// `table[i][j]`: position in `elements` of `elements[i] ∘ elements[j]`.
    pub table: Vec<Vec<usize>>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Whether σ maps the ring onto itself: generator permutation first, then
/// mutual membership.
fn stabilizes(ring: &RingPresentation, g: &GaloisGroup, sigma: usize, tower: &FieldTower, cfg: &Config) -> Result<bool> {
    let s = g.element(sigma);
    let img: Vec<FieldElement> = ring.generators().iter().map(|x| apply_aut(tower, s, x)).collect();
    let mut sorted = img.clone();
    sorted.sort();
    if sorted == ring.generator_multiset() {
        return Ok(true);
    }
    let conj = RingPresentation::new(tower, img, ring.ambient(), cfg)?;
    same_ring(ring, &conj)
}

/// σ ∈ Aut(X/Y) iff σ(A_V) = A_V for every X-chart. σ fixes each B_V ⊂ K
/// pointwise by construction.
pub fn compute_aut(model: &ModelX, tower: &FieldTower, cfg: &Config) -> Result<AutGroup> {
    let g = &model.group;
    let mut elements = Vec::new();
    for i in 0..g.order() {
        let mut ok = true;
        for c in model.cover_x.all_charts() {
            if !stabilizes(&c.ring, g, i, tower, cfg)? {
                ok = false;
                break;
            }
        }
        if ok {
            elements.push(i);
        }
    }
    let pos = |k: usize| elements.iter().position(|&e| e == k);
    let mut table = Vec::with_capacity(elements.len());
    for &a in &elements {
        let mut row = Vec::with_capacity(elements.len());
        for &b in &elements {
            match pos(g.compose(a, b)) {
                Some(p) => row.push(p),
                None => return Err(crate::Error::Internal("stabilizer is not closed under composition".into())),
            }
        }
        table.push(row);
    }
    Ok(AutGroup { elements, table })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub aut_order: usize,
    pub gal_order: usize,
    pub surjective: bool,
    pub homomorphism: bool,
    /// `(Aut index, Gal index)` pairs of the inclusion map.
    pub bijection: Vec<(usize, usize)>,
    pub pass: bool,
}

/// Checks that the inclusion Aut(X/Y) → Gal(L/K) is onto and respects the
/// composition tables.
pub fn iso_check(aut: &AutGroup, gal: &GaloisGroup) -> IsoReport {
    let bijection: Vec<(usize, usize)> = aut.elements.iter().copied().enumerate().collect();
    let surjective = aut.order() == gal.order();
    let homomorphism = (0..aut.order()).all(|i| (0..aut.order()).all(|j| aut.elements[aut.table[i][j]] == gal.compose(aut.elements[i], aut.elements[j])));
    IsoReport { aut_order: aut.order(), gal_order: gal.order(), surjective, homomorphism, bijection, pass: surjective && homomorphism }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugateWitness {
    pub sigma: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartConjugates {
    pub chart: String,
    pub conjugate_count: usize,
    pub witness: Option<ConjugateWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QgcVerdict {
    pub verdict: Tristate,
    pub charts: Vec<ChartConjugates>,
}

/// Quasi-galois closedness via the single-conjugate criterion: every X-chart
/// ring must equal all of its Galois conjugates.
pub fn qgc_check(model: &ModelX, gal: &GaloisGroup, tower: &FieldTower, cfg: &Config) -> Result<QgcVerdict> {
    let mut charts = Vec::new();
    let mut verdict = Tristate::True;
    for c in model.cover_x.all_charts() {
        let conj = conjugate_charts(&c.ring, gal, tower, cfg)?;
        let witness = conj.get(1).map(|(i, r)| ConjugateWitness { sigma: *i, generators: r.generator_strings() });
        if witness.is_some() {
            verdict = Tristate::Refuted;
        }
        charts.push(ChartConjugates { chart: c.name.clone(), conjugate_count: conj.len(), witness });
    }
    Ok(QgcVerdict { verdict, charts })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssentialProbeRow {
    pub x: String,
    pub x_in_d1: bool,
    pub x_in_d2: bool,
    pub inverse_in_d1: bool,
    pub inverse_in_d2: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssentialEquality {
    /// `pass-on-probes`, `refuted` or `inconclusive`.
    pub verdict: String,
    pub rings_equal: bool,
    pub rows: Vec<EssentialProbeRow>,
    pub witness: Option<String>,
}

/// Default probes: generators of both rings, their inverses, and pairwise
/// products of those.
pub fn default_probes(d1: &RingPresentation, d2: &RingPresentation, tower: &FieldTower) -> Vec<FieldElement> {
    let mut base: Vec<FieldElement> = Vec::new();
    let push = |v: &mut Vec<FieldElement>, x: FieldElement| {
        if !x.is_zero() && !v.contains(&x) {
            v.push(x);
        }
    };
    for g in d1.generators().iter().chain(d2.generators()) {
        push(&mut base, g.clone());
        if let Some(inv) = tower.inv(g) {
            push(&mut base, inv);
        }
    }
    let mut out = base.clone();
    for i in 0..base.len() {
        for j in i..base.len() {
            push(&mut out, tower.mul(&base[i], &base[j]));
        }
    }
    out
}

/// Tests, on each probe x, the condition that x lies in both rings or that
/// `x ∈ D1∖D2 ⟺ x⁻¹ ∈ D2∖D1`. A semidecision: passing says nothing about
/// elements outside the probe set.
pub fn essentially_equal_probe(d1: &RingPresentation, d2: &RingPresentation, probes: &[FieldElement], tower: &FieldTower, degree_bound: u32) -> Result<EssentialEquality> {
    let rings_equal = same_ring(d1, d2)?;
    if !rings_equal {
        for d in [d1, d2] {
            let chart = Chart { name: String::new(), ring: d.clone() };
            if fraction_field_certificates(&chart, tower, degree_bound)?.verdict != Tristate::True {
                return Ok(EssentialEquality { verdict: "inconclusive".into(), rings_equal, rows: Vec::new(), witness: None });
            }
        }
    }
    let mut rows = Vec::new();
    let mut witness = None;
    for x in probes {
        let Some(inv) = tower.inv(x) else { continue };
        let (a, b, c, d) = (d1.contains(x)?, d2.contains(x)?, d1.contains(&inv)?, d2.contains(&inv)?);
        let holds = (a && b) || ((a && !b) == (d && !c));
        let text = tower.to_string_of(x);
        if !holds && witness.is_none() {
            witness = Some(text.clone());
        }
        rows.push(EssentialProbeRow { x: text, x_in_d1: a, x_in_d2: b, inverse_in_d1: c, inverse_in_d2: d, holds });
    }
    let verdict = if witness.is_some() { "refuted" } else { "pass-on-probes" };
    Ok(EssentialEquality { verdict: verdict.into(), rings_equal, rows, witness })
}

/// Convenience: a ring from generator strings.
pub fn ring_from_strs(tower: &FieldTower, gens: &[&str], ambient: Ambient, cfg: &Config) -> Result<RingPresentation> {
    let gens = gens.iter().map(|s| tower.parse_element(s)).collect::<Result<Vec<_>>>()?;
    RingPresentation::new(tower, gens, ambient, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_tower::{tower_build, TowerSpec};
    use crate::galois_engine::enumerate_gal;
    use crate::scheme_builder::{build_model, CoverComplex, CoverSpec};

    fn cfg() -> Config {
        Config::default()
    }

    fn spec_z() -> CoverSpec {
        CoverSpec { charts: vec![crate::scheme_builder::ChartSpec { name: "Y".into(), generators: vec![], over: None }], overlaps: vec![] }
    }

    #[test]
    fn sqrt2_model_has_full_aut() {
        let t = tower_build(&TowerSpec::number_field(&[("a", "a^2 - 2")]), &cfg()).unwrap();
        let g = enumerate_gal(&t, &cfg()).unwrap();
        let y = CoverComplex::from_spec(&spec_z(), &t.base_tower(), Ambient::K, &cfg()).unwrap();
        let m = build_model(&y, &t, &g, &[t.generator(0)], &cfg()).unwrap();
        let aut = compute_aut(&m, &t, &cfg()).unwrap();
        assert_eq!(aut.order(), 2);
        let iso = iso_check(&aut, &g);
        assert!(iso.pass);
        assert_eq!(iso.bijection, vec![(0, 0), (1, 1)]);
        assert_eq!(qgc_check(&m, &g, &t, &cfg()).unwrap().verdict, Tristate::True);
    }

    #[test]
    fn cube_root_chart_is_not_qgc() {
        let t = tower_build(&TowerSpec::number_field(&[("c", "c^3 - 2"), ("w", "w^2 + w + 1")]), &cfg()).unwrap();
        let g = enumerate_gal(&t, &cfg()).unwrap();
        let y = CoverComplex::from_spec(&spec_z(), &t.base_tower(), Ambient::K, &cfg()).unwrap();
        let x_spec = CoverSpec {
            charts: vec![crate::scheme_builder::ChartSpec { name: "X".into(), generators: vec![crate::expr::Expr::parse("c").unwrap()], over: Some("Y".into()) }],
            overlaps: vec![],
        };
        let m = crate::scheme_builder::assemble_model(&x_spec, &y, &t, &g, &[], &cfg()).unwrap();
        let v = qgc_check(&m, &g, &t, &cfg()).unwrap();
        assert_eq!(v.verdict, Tristate::Refuted);
        assert_eq!(v.charts[0].conjugate_count, 3);
        let w = &v.charts[0].witness.as_ref().unwrap().generators[0];
        let wx = t.parse_element(w).unwrap();
        let c = t.generator(0);
        assert!(wx == t.mul(&c, &t.generator(1)) || wx == t.mul(&c, &t.pow(&t.generator(1), 2)));
        // only σ fixing c stabilizes Z[c]
        assert_eq!(compute_aut(&m, &t, &cfg()).unwrap().order(), 2);
    }

    #[test]
    fn essential_equality_examples() {
        let t = tower_build(&TowerSpec::number_field(&[("a", "a^2 - 2")]), &cfg()).unwrap();
        let d1 = ring_from_strs(&t, &["a"], Ambient::L, &cfg()).unwrap();
        let probes = default_probes(&d1, &d1, &t);
        assert_eq!(essentially_equal_probe(&d1, &d1, &probes, &t, 6).unwrap().verdict, "pass-on-probes");
        let d2 = ring_from_strs(&t, &["a/2"], Ambient::L, &cfg()).unwrap();
        let r = essentially_equal_probe(&d1, &d2, &default_probes(&d1, &d2, &t), &t, 6).unwrap();
        assert!(r.rings_equal);
        assert_eq!(r.verdict, "pass-on-probes");
        let row = r.rows.iter().find(|row| row.x == "1/2*a").unwrap();
        assert!(row.x_in_d1 && row.x_in_d2 && row.inverse_in_d1 && row.inverse_in_d2);

        let k = tower_build(&TowerSpec::from_strs(&["t"], &[], &[]), &cfg()).unwrap();
        let p1 = ring_from_strs(&k, &["t"], Ambient::K, &cfg()).unwrap();
        let p2 = ring_from_strs(&k, &["1/t"], Ambient::K, &cfg()).unwrap();
        let r = essentially_equal_probe(&p1, &p2, &default_probes(&p1, &p2, &k), &k, 6).unwrap();
        assert_eq!(r.verdict, "pass-on-probes");
        let row = r.rows.iter().find(|row| row.x == "t").unwrap();
        assert!(row.x_in_d1 && !row.x_in_d2 && !row.inverse_in_d1 && row.inverse_in_d2);
        let r = essentially_equal_probe(&p1, &p2, &[k.parse_element("t + 1").unwrap()], &k, 6).unwrap();
        assert_eq!(r.verdict, "refuted");
    }
}
