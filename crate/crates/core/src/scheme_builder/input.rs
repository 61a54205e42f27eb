//! The JSON input format: tower, nice basis and chart cover of Y.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::field_tower::{valid_symbol, GeneratorSpec, TowerSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartSpec {
    pub name: String,
    pub generators: Vec<Expr>,
    /// For a hand-assembled X-chart: the Y-chart it lies over.
    pub over: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapSpec {
    pub charts: (String, String),
    pub chart: ChartSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CoverSpec {
    pub charts: Vec<ChartSpec>,
    pub overlaps: Vec<OverlapSpec>,
}

impl CoverSpec {
    /// Charts followed by overlap charts.
    pub fn all_charts(&self) -> impl Iterator<Item = &ChartSpec> {
        self.charts.iter().chain(self.overlaps.iter().map(|o| &o.chart))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub tower: TowerSpec,
    pub nice_basis: Vec<Expr>,
    pub cover: CoverSpec,
    /// Optional user-assembled X-cover, checked instead of the constructed one.
    pub x_cover: Option<CoverSpec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    name: String,
    min_poly: String,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawField {
    #[serde(default)]
    transcendentals: Vec<String>,
    #[serde(default)]
    algebraics: Vec<RawGenerator>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChart {
    name: String,
    #[serde(default)]
    generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    over: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOverlap {
    charts: (String, String),
    chart: RawChart,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCover {
    charts: Vec<RawChart>,
    #[serde(default)]
    overlaps: Vec<RawOverlap>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(default)]
    base: RawField,
    extension: RawField,
    #[serde(default)]
    nice_basis: Vec<String>,
    cover: RawCover,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x_cover: Option<RawCover>,
}

fn parse_at(src: &str, path: &str) -> Result<Expr> {
    Expr::parse(src).map_err(|e| match e {
        Error::Parse { line, column, message } => Error::Parse { line, column, message: format!("in {path}: {message}") },
        other => other,
    })
}

fn generators(raw: &RawField, path: &str) -> Result<Vec<GeneratorSpec>> {
    raw.algebraics
        .iter()
        .enumerate()
        .map(|(i, g)| Ok(GeneratorSpec { name: g.name.clone(), min_poly: parse_at(&g.min_poly, &format!("{path}.algebraics[{i}].min_poly"))? }))
        .collect()
}

fn chart(raw: &RawChart, path: &str) -> Result<ChartSpec> {
    if !valid_symbol(&raw.name) {
        return Err(Error::Input(format!("{path}.name: `{}` is not a valid chart name", raw.name)));
    }
    let generators = raw.generators.iter().enumerate().map(|(i, g)| parse_at(g, &format!("{path}.generators[{i}]"))).collect::<Result<_>>()?;
    Ok(ChartSpec { name: raw.name.clone(), generators, over: raw.over.clone() })
}

fn cover(raw: &RawCover, path: &str) -> Result<CoverSpec> {
    let charts = raw.charts.iter().enumerate().map(|(i, c)| chart(c, &format!("{path}.charts[{i}]"))).collect::<Result<Vec<_>>>()?;
    let overlaps = raw
        .overlaps
        .iter()
        .enumerate()
        .map(|(i, o)| Ok(OverlapSpec { charts: o.charts.clone(), chart: chart(&o.chart, &format!("{path}.overlaps[{i}].chart"))? }))
        .collect::<Result<Vec<_>>>()?;
    let out = CoverSpec { charts, overlaps };
    let mut names: Vec<&str> = Vec::new();
    for c in out.all_charts() {
        if names.contains(&c.name.as_str()) {
            return Err(Error::Input(format!("{path}: duplicate chart name `{}`", c.name)));
        }
        names.push(&c.name);
    }
    for o in &out.overlaps {
        for n in [&o.charts.0, &o.charts.1] {
            if !out.charts.iter().any(|c| &c.name == n) {
                return Err(Error::Input(format!("{path}: overlap `{}` refers to unknown chart `{n}`", o.chart.name)));
            }
        }
    }
    Ok(out)
}

/// Parses and validates the JSON input. Syntax errors carry the line and
/// column in the file; expression errors carry the position inside the
/// expression and the field they occur in.
pub fn parse_model_input(text: &str) -> Result<ModelSpec> {
    let raw: RawModel = serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    let tower = TowerSpec {
        transcendentals: raw.base.transcendentals.clone(),
        base: generators(&raw.base, "base")?,
        extension_transcendentals: raw.extension.transcendentals.clone(),
        extension: generators(&raw.extension, "extension")?,
    };
    let nice_basis = raw.nice_basis.iter().enumerate().map(|(i, e)| parse_at(e, &format!("nice_basis[{i}]"))).collect::<Result<_>>()?;
    let spec = ModelSpec {
        tower,
        nice_basis,
        cover: cover(&raw.cover, "cover")?,
        x_cover: raw.x_cover.as_ref().map(|c| cover(c, "x_cover")).transpose()?,
    };
    check_symbols(&spec)?;
    Ok(spec)
}

fn check_symbols(spec: &ModelSpec) -> Result<()> {
    let t = &spec.tower;
    let mut known: Vec<&str> = t.transcendentals.iter().chain(&t.extension_transcendentals).map(String::as_str).collect();
    for g in t.base.iter().chain(&t.extension) {
        for s in g.min_poly.symbols() {
            if s != g.name && !known.contains(&s.as_str()) {
                return Err(Error::UnknownSymbol(s));
            }
        }
        known.push(&g.name);
    }
    let base_known = &known[..t.transcendentals.len() + t.extension_transcendentals.len() + t.base.len()];
    let mut exprs: Vec<(&Expr, bool)> = spec.nice_basis.iter().map(|e| (e, false)).collect();
    exprs.extend(spec.cover.all_charts().flat_map(|c| c.generators.iter().map(|e| (e, true))));
    if let Some(x) = &spec.x_cover {
        exprs.extend(x.all_charts().flat_map(|c| c.generators.iter().map(|e| (e, false))));
    }
    for (e, in_base) in exprs {
        let scope: &[&str] = if in_base { base_known } else { &known };
        if let Some(s) = e.symbols().into_iter().find(|s| !scope.contains(&s.as_str())) {
            if known.contains(&s.as_str()) {
                return Err(Error::Input(format!("Y-chart generator `{e}` uses `{s}`, which is not in K")));
            }
            return Err(Error::UnknownSymbol(s));
        }
    }
    if let Some(x) = &spec.x_cover {
        for c in &x.charts {
            if let Some(v) = &c.over {
                if !spec.cover.all_charts().any(|y| &y.name == v) {
                    return Err(Error::Input(format!("X-chart `{}` lies over unknown Y-chart `{v}`", c.name)));
                }
            }
        }
    }
    Ok(())
}

fn raw_field(trans: &[String], gens: &[GeneratorSpec]) -> RawField {
    RawField {
        transcendentals: trans.to_vec(),
        algebraics: gens.iter().map(|g| RawGenerator { name: g.name.clone(), min_poly: g.min_poly.to_string() }).collect(),
    }
}

fn raw_chart(c: &ChartSpec) -> RawChart {
    RawChart { name: c.name.clone(), generators: c.generators.iter().map(|e| e.to_string()).collect(), over: c.over.clone() }
}

fn raw_cover(c: &CoverSpec) -> RawCover {
    RawCover {
        charts: c.charts.iter().map(raw_chart).collect(),
        overlaps: c.overlaps.iter().map(|o| RawOverlap { charts: o.charts.clone(), chart: raw_chart(&o.chart) }).collect(),
    }
}

/// Canonical JSON form of a specification; parsing it gives back the same
/// specification.
pub fn serialize_model_spec(spec: &ModelSpec) -> String {
    serde_json::to_string_pretty(&canonical_json(spec)).expect("serializable")
}

/// The canonicalized input as a JSON value (used as the report's input echo).
pub fn canonical_json(spec: &ModelSpec) -> serde_json::Value {
    let raw = RawModel {
        base: raw_field(&spec.tower.transcendentals, &spec.tower.base),
        extension: raw_field(&spec.tower.extension_transcendentals, &spec.tower.extension),
        nice_basis: spec.nice_basis.iter().map(|e| e.to_string()).collect(),
        cover: raw_cover(&spec.cover),
        x_cover: spec.x_cover.as_ref().map(raw_cover),
    };
    serde_json::to_value(raw).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    const ELLIPTIC: &str = r#"{
  "base": {"transcendentals": ["t"], "algebraics": []},
  "extension": {"algebraics": [{"name": "s", "min_poly": "s^2 - (t^3 - t)"}]},
  "nice_basis": ["s"],
  "cover": {
    "charts": [{"name": "V1", "generators": ["t"]}, {"name": "V2", "generators": ["t", "1/t"]}],
    "overlaps": [{"charts": ["V1", "V2"], "chart": {"name": "V12", "generators": ["t", "1/t"]}}]
  }
}"#;

    #[test]
    fn elliptic_structure() {
        let spec = parse_model_input(ELLIPTIC).unwrap();
        assert_eq!(spec.cover.charts.len(), 2);
        assert_eq!(spec.cover.overlaps.len(), 1);
        assert_eq!(spec.cover.overlaps[0].charts, ("V1".to_string(), "V2".to_string()));
        assert_eq!(spec.tower.transcendentals, vec!["t"]);
        assert_eq!(spec.nice_basis.len(), 1);
    }

    #[test]
    fn round_trip() {
        let spec = parse_model_input(ELLIPTIC).unwrap();
        let again = parse_model_input(&serialize_model_spec(&spec)).unwrap();
        assert_eq!(spec, again);
    }

    #[test]
    fn unbalanced_parenthesis_is_located() {
        let text = ELLIPTIC.replace("s^2 - (t^3 - t)", "s^2 - (t^3 - t");
        match parse_model_input(&text) {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (1, 15));
                assert!(message.contains("extension.algebraics[0].min_poly"), "{message}");
                assert!(message.contains("column 7"), "{message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn json_syntax_error_is_located() {
        match parse_model_input("{\n  \"extension\": [,\n}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_duplicates_and_unknowns() {
        let dup = ELLIPTIC.replace("\"V2\", \"generators\"", "\"V1\", \"generators\"");
        assert!(matches!(parse_model_input(&dup), Err(Error::Input(m)) if m.contains("duplicate")));
        let unknown = ELLIPTIC.replace("[\"s\"]", "[\"u\"]");
        assert_eq!(parse_model_input(&unknown), Err(Error::UnknownSymbol("u".into())));
        let in_l = ELLIPTIC.replace("[\"t\"]}", "[\"s\"]}");
        assert!(matches!(parse_model_input(&in_l), Err(Error::Input(_))));
    }

    #[test]
    fn minimal_input() {
        let spec = parse_model_input(
            r#"{"extension": {"algebraics": [{"name": "a", "min_poly": "a^2 - 2"}]}, "nice_basis": ["a"],
                "cover": {"charts": [{"name": "Y", "generators": []}]}}"#,
        )
        .unwrap();
        assert_eq!(spec.cover.charts.len(), 1);
        assert!(spec.cover.charts[0].generators.is_empty());
    }
}
