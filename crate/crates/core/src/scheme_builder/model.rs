//! The model X over Y: Δ, the chart rings A_V = B_V[Δ], conjugation of
//! chart rings and the invariant-subring probe.

use serde::Serialize;

use super::cover::{fraction_field_certificates, inclusion, same_ring, Chart, ChartFraction, CoverComplex, Inclusion, Overlap, Tristate};
use super::input::CoverSpec;
use super::ring::{Ambient, RingPresentation};
use crate::error::{Error, Result};
use crate::exact_poly::Field;
use crate::field_tower::{FieldElement, FieldTower};
use crate::galois_engine::{apply_aut, orbit, GaloisGroup};
use crate::Config;

/// The orbit Δ of the nice basis and Δ' = Δ minus the transcendental part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Delta {
    pub delta: Vec<FieldElement>,
    pub delta_prime: Vec<FieldElement>,
}

/// Δ = orbit of the nice basis. With every transcendental inside K the
/// transcendental part of the basis is empty and Δ' = Δ.
pub fn build_delta(tower: &FieldTower, nice_basis: &[FieldElement], g: &GaloisGroup) -> Delta {
    let delta = orbit(g, tower, nice_basis);
    Delta { delta_prime: delta.clone(), delta }
}

/// `A_V = B_V[Δ]` inside L: the generators of `B_V` (lifted to L) followed by
/// Δ, duplicates dropped.
pub fn build_chart_ring(tower: &FieldTower, b: &RingPresentation, delta: &Delta, cfg: &Config) -> Result<RingPresentation> {
    let mut gens: Vec<FieldElement> = Vec::new();
    for x in b.generators().iter().map(|g| tower.lift(g)).chain(delta.delta.iter().cloned()) {
        if !gens.contains(&x) {
            gens.push(x);
        }
    }
    RingPresentation::new(tower, gens, Ambient::L, cfg)
}

#[derive(Clone, Debug)]
pub struct ModelX {
    pub cover_x: CoverComplex,
    /// `(X-chart, Y-chart)` pairs: the chart-wise form of f.
    pub chart_map: Vec<(String, String)>,
    pub delta: Delta,
    pub group: GaloisGroup,
    /// Whether the X-cover was built from Y or supplied by the user.
    pub constructed: bool,
}

/// One X-chart per Y-chart and per Y-overlap chart, with the same names.
pub fn build_model(cover_y: &CoverComplex, tower: &FieldTower, g: &GaloisGroup, nice_basis: &[FieldElement], cfg: &Config) -> Result<ModelX> {
    let delta = build_delta(tower, nice_basis, g);
    let lift_chart = |c: &Chart| -> Result<Chart> { Ok(Chart { name: c.name.clone(), ring: build_chart_ring(tower, &c.ring, &delta, cfg)? }) };
    let charts = cover_y.charts.iter().map(lift_chart).collect::<Result<Vec<_>>>()?;
    let overlaps = cover_y.overlaps.iter().map(|o| Ok(Overlap { charts: o.charts.clone(), chart: lift_chart(&o.chart)? })).collect::<Result<Vec<_>>>()?;
    let cover_x = CoverComplex { ambient: Ambient::L, charts, overlaps };
    let chart_map = cover_x.all_charts().map(|c| (c.name.clone(), c.name.clone())).collect();
    Ok(ModelX { cover_x, chart_map, delta, group: g.clone(), constructed: true })
}

/// A user-assembled X-cover. Each chart lies over the Y-chart named by its
/// `over` field, or over the Y-chart of the same name.
pub fn assemble_model(spec: &CoverSpec, cover_y: &CoverComplex, tower: &FieldTower, g: &GaloisGroup, nice_basis: &[FieldElement], cfg: &Config) -> Result<ModelX> {
    let cover_x = CoverComplex::from_spec(spec, tower, Ambient::L, cfg)?;
    let mut chart_map = Vec::new();
    for c in spec.all_charts() {
        let target = c.over.clone().unwrap_or_else(|| c.name.clone());
        if cover_y.chart(&target).is_none() {
            return Err(Error::Input(format!("X-chart `{}` does not lie over any Y-chart", c.name)));
        }
        chart_map.push((c.name.clone(), target));
    }
    Ok(ModelX { cover_x, chart_map, delta: build_delta(tower, nice_basis, g), group: g.clone(), constructed: false })
}

/// Certified properties of a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelCheck {
    /// Each X-chart ring contains the ring of the Y-chart below it.
    pub contains_y: Vec<Inclusion>,
    /// Fr(A_V) = L for each X-chart.
    pub fraction_field: Vec<ChartFraction>,
    pub reduced: bool,
    /// Each Y-chart has exactly one X-chart over it.
    pub affine: bool,
    /// σ(Δ) = Δ for every σ.
    pub delta_stable: bool,
    /// Each σ permutes the generators of every constructed chart ring.
    pub generators_stable: bool,
    pub verdict: Tristate,
}

pub fn verify_model(model: &ModelX, cover_y: &CoverComplex, tower: &FieldTower, cfg: &Config) -> Result<ModelCheck> {
    let mut contains_y = Vec::new();
    for (x, y) in &model.chart_map {
        let xc = model.cover_x.chart(x).expect("chart map names X-charts");
        let yc = cover_y.chart(y).expect("chart map names Y-charts");
        let lifted = Chart {
            name: yc.name.clone(),
            ring: RingPresentation::new(tower, yc.ring.generators().iter().map(|g| tower.lift(g)).collect(), Ambient::L, cfg)?,
        };
        contains_y.push(inclusion(&lifted, xc)?);
    }
    let fraction_field = model.cover_x.all_charts().map(|c| fraction_field_certificates(c, tower, cfg.degree_bound)).collect::<Result<Vec<_>>>()?;
    let reduced = super::cover::find_duplicate(&model.cover_x)?.is_none();
    let affine = cover_y.all_charts().all(|y| model.chart_map.iter().filter(|(_, v)| *v == y.name).count() == 1);
    let mut sorted_delta = model.delta.delta.clone();
    sorted_delta.sort();
    let delta_stable = model.group.elements().iter().all(|s| {
        let mut img: Vec<_> = model.delta.delta.iter().map(|x| apply_aut(tower, s, x)).collect();
        img.sort();
        img == sorted_delta
    });
    let generators_stable = !model.constructed
        || model.cover_x.all_charts().all(|c| {
            let m = c.ring.generator_multiset();
            model.group.elements().iter().all(|s| {
                let mut img: Vec<_> = c.ring.generators().iter().map(|x| apply_aut(tower, s, x)).collect();
                img.sort();
                img == m
            })
        });
    let mut verdict = if contains_y.iter().all(|i| i.holds) && reduced && affine && delta_stable && generators_stable {
        Tristate::True
    } else {
        Tristate::Refuted
    };
    for f in &fraction_field {
        verdict = verdict.and(f.verdict);
    }
    Ok(ModelCheck { contains_y, fraction_field, reduced, affine, delta_stable, generators_stable, verdict })
}

/// The distinct conjugates σ(A) of a chart ring, each with the index of a σ
/// producing it; the first entry is A itself.
pub fn conjugate_charts(a: &RingPresentation, g: &GaloisGroup, tower: &FieldTower, cfg: &Config) -> Result<Vec<(usize, RingPresentation)>> {
    let mut out: Vec<(usize, RingPresentation)> = vec![(0, a.clone())];
    for (i, s) in g.elements().iter().enumerate().skip(1) {
        let gens: Vec<FieldElement> = a.generators().iter().map(|x| apply_aut(tower, s, x)).collect();
        let mut sorted = gens.clone();
        sorted.sort();
        if out.iter().any(|(_, r)| r.generator_multiset() == sorted) {
            continue;
        }
        let ring = RingPresentation::new(tower, gens, a.ambient(), cfg)?;
        let mut seen = false;
        for (_, r) in &out {
            if same_ring(r, &ring)? {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push((i, ring));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Probe {
    pub kind: &'static str,
    pub monomial: String,
    pub value: String,
    pub in_base_ring: bool,
    /// Expression in the generators of `B_V` when a member.
    pub certificate: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantProbe {
    pub chart: String,
    pub degree_bound: u32,
    /// `certified-to-degree-d` or `refuted-or-inconclusive`.
    pub verdict: String,
    pub probes: Vec<Probe>,
    pub witness: Option<String>,
}

fn monomials(n: usize, max_deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; n]];
    let mut frontier = out.clone();
    for _ in 0..max_deg {
        let mut next: Vec<Vec<u32>> = Vec::new();
        for m in &frontier {
            for j in 0..n {
                let mut m2 = m.clone();
                m2[j] += 1;
                if !next.contains(&m2) {
                    next.push(m2);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.remove(0);
    out
}

/// Symmetrizes the monomials in Δ of degree at most `degree_bound` (sums and
/// products over their G-orbits) and checks each result lies in `B_V`.
pub fn invariant_subring_probe(chart: &str, g: &GaloisGroup, b: &RingPresentation, delta: &Delta, tower: &FieldTower, degree_bound: u32) -> Result<InvariantProbe> {
    let mut seen: Vec<FieldElement> = Vec::new();
    let mut values: Vec<FieldElement> = Vec::new();
    let mut probes = Vec::new();
    let mut witness = None;
    for m in monomials(delta.delta.len(), degree_bound) {
        let mut x = tower.one();
        let mut text = Vec::new();
        for (d, &k) in delta.delta.iter().zip(&m) {
            if k > 0 {
                x = tower.mul(&x, &tower.pow(d, k));
                let s = tower.to_string_of(d);
                let s = if s.chars().all(|c| c.is_ascii_alphanumeric()) { s } else { format!("({s})") };
                text.push(if k == 1 { s } else { format!("{s}^{k}") });
            }
        }
        if seen.contains(&x) {
            continue;
        }
        let orb = orbit(g, tower, std::slice::from_ref(&x));
        seen.extend(orb.iter().cloned());
        let sum = orb.iter().fold(tower.zero(), |acc, y| tower.add(&acc, y));
        let prod = orb.iter().fold(tower.one(), |acc, y| tower.mul(&acc, y));
        for (kind, v) in [("orbit-sum", sum), ("orbit-product", prod)] {
            if values.contains(&v) {
                continue;
            }
            values.push(v.clone());
            let fixed = g.elements().iter().all(|s| apply_aut(tower, s, &v) == v);
            if !fixed {
                return Err(Error::Internal(format!("symmetrized value {} is not G-invariant", tower.to_string_of(&v))));
            }
            let member = if tower.is_in_base(&v) { b.member(&tower.restrict(&v, tower.base_mark()))? } else { None };
            let value = tower.to_string_of(&v);
            if member.is_none() && witness.is_none() {
                witness = Some(value.clone());
            }
            probes.push(Probe {
                kind,
                monomial: text.join("*"),
                value,
                in_base_ring: member.is_some(),
                certificate: member.map(|w| w.expression.to_string()),
            });
        }
    }
    let verdict = if witness.is_none() { format!("certified-to-degree-{degree_bound}") } else { "refuted-or-inconclusive".to_string() };
    Ok(InvariantProbe { chart: chart.to_string(), degree_bound, verdict, probes, witness })
}
