//! Chart covers and their validation.

use serde::Serialize;

use super::input::CoverSpec;
use super::ring::{Ambient, RingPresentation};
use crate::error::Result;
use crate::field_tower::FieldTower;
use crate::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tristate {
    True,
    Refuted,
    Inconclusive,
}

impl Tristate {
    pub fn and(self, other: Tristate) -> Tristate {
        use Tristate::*;
        match (self, other) {
            (Refuted, _) | (_, Refuted) => Refuted,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => True,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tristate::True => "true",
            Tristate::Refuted => "refuted",
            Tristate::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Chart {
    pub name: String,
    pub ring: RingPresentation,
}

/// An overlap chart whose ring contains the rings of both charts it joins.
#[derive(Clone, Debug)]
pub struct Overlap {
    pub charts: (String, String),
    pub chart: Chart,
}

#[derive(Clone, Debug)]
pub struct CoverComplex {
    pub ambient: Ambient,
    pub charts: Vec<Chart>,
    pub overlaps: Vec<Overlap>,
}

impl CoverComplex {
    /// Builds the chart rings of a parsed cover inside `tower`.
    pub fn from_spec(spec: &CoverSpec, tower: &FieldTower, ambient: Ambient, cfg: &Config) -> Result<Self> {
        let chart = |c: &super::input::ChartSpec| -> Result<Chart> {
            let gens = c.generators.iter().map(|e| tower.nf(e)).collect::<Result<Vec<_>>>()?;
            Ok(Chart { name: c.name.clone(), ring: RingPresentation::new(tower, gens, ambient, cfg)? })
        };
        Ok(CoverComplex {
            ambient,
            charts: spec.charts.iter().map(chart).collect::<Result<_>>()?,
            overlaps: spec.overlaps.iter().map(|o| Ok(Overlap { charts: o.charts.clone(), chart: chart(&o.chart)? })).collect::<Result<_>>()?,
        })
    }

    pub fn all_charts(&self) -> impl Iterator<Item = &Chart> {
        self.charts.iter().chain(self.overlaps.iter().map(|o| &o.chart))
    }

    pub fn chart(&self, name: &str) -> Option<&Chart> {
        self.all_charts().find(|c| c.name == name)
    }

    pub fn len(&self) -> usize {
        self.charts.len() + self.overlaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One generator of the ambient field written as `numerator/denominator`
/// with both sides polynomials in the chart generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FractionCertificate {
    pub generator: String,
    pub certificate: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartFraction {
    pub chart: String,
    pub verdict: Tristate,
    pub certificates: Vec<FractionCertificate>,
}

/// Every generator of one ring written as a polynomial in the other's.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inclusion {
    pub sub: String,
    pub sup: String,
    pub holds: bool,
    pub expressions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub reduced: bool,
    /// Two charts presenting the same ring, when the cover is not reduced.
    pub duplicate: Option<(String, String)>,
    pub fraction_field: Vec<ChartFraction>,
    pub overlaps: Vec<Inclusion>,
    pub verdict: Tristate,
}

/// Whether `sub ⊆ sup`, with the membership expressions when it holds.
pub fn inclusion(sub: &Chart, sup: &Chart) -> Result<Inclusion> {
    let mut expressions = Vec::new();
    let mut holds = true;
    for g in sub.ring.generators() {
        match sup.ring.member(g)? {
            Some(w) => expressions.push(w.expression.to_string()),
            None => {
                holds = false;
                expressions.clear();
                break;
            }
        }
    }
    Ok(Inclusion { sub: sub.name.clone(), sup: sup.name.clone(), holds, expressions })
}

/// Whether two rings coincide, by mutual membership of generators.
pub fn same_ring(a: &RingPresentation, b: &RingPresentation) -> Result<bool> {
    if a.generator_multiset() == b.generator_multiset() {
        return Ok(true);
    }
    Ok(a.contains_ring(b)? && b.contains_ring(a)?)
}

/// First pair of main charts presenting the same ring.
pub fn find_duplicate(cover: &CoverComplex) -> Result<Option<(String, String)>> {
    for (i, a) in cover.charts.iter().enumerate() {
        for b in &cover.charts[i + 1..] {
            if same_ring(&a.ring, &b.ring)? {
                return Ok(Some((a.name.clone(), b.name.clone())));
            }
        }
    }
    Ok(None)
}

/// Certificates that the fraction field of a chart ring is the whole
/// ambient field (`tower`): each tower generator as a quotient of ring
/// elements, denominators searched among generator monomials up to the bound.
pub fn fraction_field_certificates(chart: &Chart, tower: &FieldTower, degree_bound: u32) -> Result<ChartFraction> {
    let mut names: Vec<String> = tower.transcendentals().to_vec();
    names.extend(tower.generator_names());
    let targets: Vec<_> = (0..tower.num_transcendentals()).map(|j| tower.transcendental(j)).chain((0..tower.num_algebraics()).map(|i| tower.generator(i))).collect();
    let found = chart.ring.fraction_certificates(&targets, degree_bound)?;
    let verdict = if found.iter().all(Option::is_some) { Tristate::True } else { Tristate::Inconclusive };
    let certificates = names.into_iter().zip(found).map(|(generator, c)| FractionCertificate { generator, certificate: c.map(|w| w.render()) }).collect();
    Ok(ChartFraction { chart: chart.name.clone(), verdict, certificates })
}

/// Reducedness, Fr(B_V) = K for every chart and overlap containment.
pub fn validate_cover(cover: &CoverComplex, tower: &FieldTower, cfg: &Config) -> Result<CoverReport> {
    let duplicate = find_duplicate(cover)?;
    let fraction_field = cover.all_charts().map(|c| fraction_field_certificates(c, tower, cfg.degree_bound)).collect::<Result<Vec<_>>>()?;
    let mut overlaps = Vec::new();
    for o in &cover.overlaps {
        for n in [&o.charts.0, &o.charts.1] {
            let c = cover.chart(n).expect("overlap names validated at parse time");
            overlaps.push(inclusion(c, &o.chart)?);
        }
    }
    let mut verdict = if duplicate.is_some() || overlaps.iter().any(|i| !i.holds) { Tristate::Refuted } else { Tristate::True };
    for f in &fraction_field {
        verdict = verdict.and(f.verdict);
    }
    Ok(CoverReport { reduced: duplicate.is_none(), duplicate, fraction_field, overlaps, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expr;
    use crate::field_tower::{tower_build, TowerSpec};
    use crate::scheme_builder::input::ChartSpec;

    fn k_t() -> FieldTower {
        tower_build(&TowerSpec::from_strs(&["t"], &[], &[]), &Config::default()).unwrap()
    }

    fn cover(charts: &[(&str, &[&str])]) -> CoverSpec {
        CoverSpec {
            charts: charts
                .iter()
                .map(|(n, g)| ChartSpec { name: n.to_string(), generators: g.iter().map(|e| Expr::parse(e).unwrap()).collect(), over: None })
                .collect(),
            overlaps: Vec::new(),
        }
    }

    #[test]
    fn single_polynomial_chart_passes() {
        let k = k_t();
        let c = CoverComplex::from_spec(&cover(&[("V", &["t"])]), &k, Ambient::K, &Config::default()).unwrap();
        let r = validate_cover(&c, &k, &Config::default()).unwrap();
        assert_eq!(r.verdict, Tristate::True);
        assert_eq!(r.fraction_field[0].certificates[0].certificate.as_deref(), Some("z1"));
    }

    #[test]
    fn duplicate_rings_are_not_reduced() {
        let k = k_t();
        let c = CoverComplex::from_spec(&cover(&[("V1", &["t"]), ("V2", &["t"])]), &k, Ambient::K, &Config::default()).unwrap();
        let r = validate_cover(&c, &k, &Config::default()).unwrap();
        assert!(!r.reduced);
        assert_eq!(r.duplicate, Some(("V1".into(), "V2".into())));
        assert_eq!(r.verdict, Tristate::Refuted);
    }

    #[test]
    fn even_subring_has_small_fraction_field() {
        let k = k_t();
        let c = CoverComplex::from_spec(&cover(&[("V", &["t^2"])]), &k, Ambient::K, &Config::default()).unwrap();
        let r = validate_cover(&c, &k, &Config::default()).unwrap();
        assert_eq!(r.fraction_field[0].verdict, Tristate::Inconclusive);
        assert_eq!(r.fraction_field[0].certificates[0].certificate, None);
        assert_eq!(r.verdict, Tristate::Inconclusive);
    }
}
