use super::norm::{candidate_points, factor_in_tower, level_poly, specialize_checked, specialize_poly};
use super::roots::roots_in_tower;
use super::tower::{FieldElement, FieldTower, GeneratorSpec};
use crate::error::{Error, Result};
use crate::exact_poly::UPoly;
use crate::expr::Expr;
use crate::Config;

/// Generator descriptions for K = Q(t)(base) and L = K(extension).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TowerSpec {
    pub transcendentals: Vec<String>,
    pub base: Vec<GeneratorSpec>,
    /// Transcendentals declared for L over K; only the empty list is supported.
    pub extension_transcendentals: Vec<String>,
    pub extension: Vec<GeneratorSpec>,
}

impl TowerSpec {
    /// L = Q(a_1..a_s) over K = Q. Panics on malformed expressions.
    pub fn number_field(gens: &[(&str, &str)]) -> Self {
        TowerSpec { extension: parse_gens(gens), ..Default::default() }
    }

    /// Convenience constructor from strings. Panics on malformed expressions.
    pub fn from_strs(transcendentals: &[&str], base: &[(&str, &str)], extension: &[(&str, &str)]) -> Self {
        TowerSpec {
            transcendentals: transcendentals.iter().map(|s| s.to_string()).collect(),
            base: parse_gens(base),
            extension_transcendentals: Vec::new(),
            extension: parse_gens(extension),
        }
    }
}

fn parse_gens(gens: &[(&str, &str)]) -> Vec<GeneratorSpec> {
    gens.iter()
        .map(|(n, p)| GeneratorSpec { name: n.to_string(), min_poly: Expr::parse(p).expect("valid expression") })
        .collect()
}

pub fn valid_symbol(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Builds and validates the tower: every minimal polynomial is made monic and
/// certified irreducible over the generators below it.
pub fn tower_build(spec: &TowerSpec, cfg: &Config) -> Result<FieldTower> {
    if !spec.extension_transcendentals.is_empty() {
        return Err(Error::TranscendentalExtension(format!(
            "{} is transcendental over K, so Gal(L/K) is infinite",
            spec.extension_transcendentals.join(", ")
        )));
    }
    let mut seen: Vec<&str> = Vec::new();
    for name in spec.transcendentals.iter().map(String::as_str).chain(spec.base.iter().chain(&spec.extension).map(|g| g.name.as_str())) {
        if !valid_symbol(name) {
            return Err(Error::Input(format!("`{name}` is not a valid symbol name")));
        }
        if seen.contains(&name) {
            return Err(Error::Input(format!("symbol `{name}` declared twice")));
        }
        seen.push(name);
    }
    let mut tower = FieldTower::rational_function_field(&spec.transcendentals);
    let gens = spec.base.iter().map(|g| (g, true)).chain(spec.extension.iter().map(|g| (g, false)));
    for (g, to_base) in gens {
        let f = tower.parse_poly_in(&g.min_poly, &g.name)?;
        if f.deg() == 0 {
            return Err(Error::Input(format!("minimal polynomial of `{}` has degree 0 in `{}`", g.name, g.name)));
        }
        let f = f.monic(&tower);
        certify_irreducible(&tower, &f, &g.name, cfg)?;
        tower = tower.adjoin_unchecked(&g.name, &f, to_base);
    }
    Ok(tower)
}

fn reducible(tower: &FieldTower, factor: &UPoly<FieldElement>, name: &str) -> Error {
    Error::ReducibleMinimalPolynomial { symbol: name.to_string(), witness: tower.poly_to_string(factor, name) }
}

/// Certifies that the monic `f` is irreducible over `tower`.
///
/// Without transcendentals this is Trager factorization. With them, a
/// specialization of the transcendentals at which the tower stays a field of
/// the same degree and `f` stays irreducible proves irreducibility (a
/// factorization would specialize, since the coefficients of monic factors
/// are integral at such a point). Degree at most 3 falls back to root search.
pub fn certify_irreducible(tower: &FieldTower, f: &UPoly<FieldElement>, name: &str, cfg: &Config) -> Result<()> {
    if f.deg() == 1 {
        return Ok(());
    }
    let g = f.gcd(tower, &f.derivative(tower));
    if g.deg() > 0 {
        return Err(reducible(tower, &g, name));
    }
    if tower.num_transcendentals() == 0 {
        let fs = factor_in_tower(tower, f, cfg.factor_degree_cap)?;
        return match fs.len() {
            1 => Ok(()),
            _ => Err(reducible(tower, &fs[0], name)),
        };
    }
    for point in candidate_points(tower.num_transcendentals(), 24) {
        let Some(spec) = specialize_checked(tower, &point, cfg.factor_degree_cap)? else { continue };
        let Some(f0) = specialize_poly(tower, f, &point, &spec) else { continue };
        if !f0.is_squarefree(&spec) {
            continue;
        }
        if factor_in_tower(&spec, &f0, cfg.factor_degree_cap)?.len() == 1 {
            return Ok(());
        }
    }
    if f.deg() <= 3 {
        let roots = roots_in_tower(tower, f, cfg)?;
        return match roots.first() {
            None => Ok(()),
            Some(r) => Err(reducible(tower, &UPoly::linear(tower, r), name)),
        };
    }
    Err(Error::IrreducibilityInconclusive(name.to_string()))
}

/// Re-certifies every level of an existing tower.
pub fn recertify(tower: &FieldTower, cfg: &Config) -> Result<()> {
    for i in 0..tower.num_algebraics() {
        let (sub, f) = level_poly(tower, i);
        certify_irreducible(&sub, &f, tower.generator_name(i), cfg)?;
    }
    Ok(())
}
