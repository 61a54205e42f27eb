use serde::Serialize;

use super::norm::norm_poly_to;
use super::roots::roots_in_tower;
use super::tower::{FieldElement, FieldTower};
use crate::error::Result;
use crate::exact_poly::linalg::{rank, solve};
use crate::exact_poly::{Field, UPoly};
use crate::Config;

/// Columns are the K-coordinates of `cols`.
fn k_matrix(tower: &FieldTower, cols: &[Vec<FieldElement>]) -> Vec<Vec<FieldElement>> {
    let dim = tower.extension_degree();
    (0..dim).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

/// K-coefficients `λ` with `target = Σ λ_j cols_j`, if any.
fn express(tower: &FieldTower, cols: &[Vec<FieldElement>], target: &[FieldElement]) -> Option<Vec<FieldElement>> {
    if cols.is_empty() {
        return target.iter().all(|c| c.is_zero()).then(Vec::new);
    }
    solve(tower, &k_matrix(tower, cols), target)
}

/// Minimal polynomial of `x` over K: the first K-linear dependence among
/// the powers of `x`.
pub fn min_poly(tower: &FieldTower, x: &FieldElement) -> UPoly<FieldElement> {
    let mut cols = vec![tower.coords_over_k(&tower.one())];
    let mut p = tower.one();
    loop {
        p = tower.mul(&p, x);
        let v = tower.coords_over_k(&p);
        if let Some(lam) = express(tower, &cols, &v) {
            let mut coeffs: Vec<FieldElement> = lam.iter().map(|c| tower.neg(c)).collect();
            coeffs.push(tower.one());
            return UPoly::new(tower, coeffs);
        }
        cols.push(v);
    }
}

/// Characteristic polynomial over K of multiplication by `x` on L.
pub fn char_poly(tower: &FieldTower, x: &FieldElement) -> UPoly<FieldElement> {
    let g = UPoly::linear(tower, x);
    norm_poly_to(tower, &g, tower.base_mark())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub pass: bool,
    pub detail: String,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NiceBasisReport {
    pub pass: bool,
    /// Number of transcendental members of the basis.
    pub r: usize,
    pub n: usize,
    pub generates: Clause,
    pub transcendence: Clause,
    pub independence: Clause,
}

/// Checks the nice-basis conditions for `candidates` (elements of L):
/// they generate L over K, the first r are a transcendence basis (r = 0 in
/// the finite case), and they are linearly independent over K.
pub fn validate_nice_basis(tower: &FieldTower, candidates: &[FieldElement]) -> NiceBasisReport {
    let dim = tower.extension_degree();
    let names: Vec<String> = candidates.iter().map(|c| format!("({})", tower.to_string_of(c))).collect();

    let in_k: Vec<String> =
        candidates.iter().zip(&names).filter(|(c, _)| tower.is_in_base(c)).map(|(_, n)| format!("{n} lies in K")).collect();

    // K-span closure of the monomials in the candidates is K[candidates] = K(candidates)
    let mut cols: Vec<Vec<FieldElement>> = vec![tower.coords_over_k(&tower.one())];
    let mut elems: Vec<(FieldElement, Vec<u32>)> = vec![(tower.one(), vec![0; candidates.len()])];
    let mut queue = 0;
    while queue < elems.len() && cols.len() < dim {
        let (v, e) = elems[queue].clone();
        queue += 1;
        for (j, c) in candidates.iter().enumerate() {
            let w = tower.mul(&v, c);
            let wc = tower.coords_over_k(&w);
            if express(tower, &cols, &wc).is_none() {
                cols.push(wc);
                let mut e2 = e.clone();
                e2[j] += 1;
                elems.push((w, e2));
            }
        }
    }
    let generated = cols.len();
    let generates = if generated == dim {
        let mut witnesses = Vec::new();
        for i in tower.base_mark()..tower.num_algebraics() {
            let target = tower.coords_over_k(&tower.generator(i));
            let lam = express(tower, &cols, &target).expect("the span is all of L");
            let terms: Vec<String> = lam
                .iter()
                .zip(&elems)
                .filter(|(l, _)| !l.is_zero())
                .map(|(l, (_, e))| {
                    let mono: Vec<String> = e
                        .iter()
                        .zip(&names)
                        .filter(|(&k, _)| k > 0)
                        .map(|(&k, n)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
                        .collect();
                    let coeff = tower.to_string_of(l);
                    match (coeff.as_str(), mono.is_empty()) {
                        (_, true) => format!("({coeff})"),
                        ("1", false) => mono.join("*"),
                        _ => format!("({coeff})*{}", mono.join("*")),
                    }
                })
                .collect();
            witnesses.push(format!("{} = {}", tower.generator_name(i), terms.join(" + ")));
        }
        Clause { pass: true, detail: format!("K(candidates) has degree {dim} over K, equal to [L:K]"), witnesses }
    } else {
        Clause {
            pass: false,
            detail: format!("K(candidates) has degree {generated} over K but [L:K] = {dim}"),
            witnesses: in_k,
        }
    };

    let transcendence = Clause {
        pass: true,
        detail: "r = 0: L is algebraic over K, so the transcendental part is empty".into(),
        witnesses: Vec::new(),
    };

    let independence = if candidates.is_empty() {
        Clause { pass: true, detail: "empty list".into(), witnesses: Vec::new() }
    } else {
        let m = k_matrix(tower, &candidates.iter().map(|c| tower.coords_over_k(c)).collect::<Vec<_>>());
        let rk = rank(tower, &m);
        Clause {
            pass: rk == candidates.len(),
            detail: format!("rank over K is {rk} for {} candidates", candidates.len()),
            witnesses: Vec::new(),
        }
    };

    NiceBasisReport {
        pass: generates.pass && transcendence.pass && independence.pass,
        r: 0,
        n: candidates.len(),
        generates,
        transcendence,
        independence,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorSplitting {
    pub generator: String,
    pub min_poly: String,
    pub degree: usize,
    pub roots_in_l: usize,
    pub splits: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiGaloisReport {
    pub verdict: bool,
    /// The check covers the L-level generators only.
    pub scope: &'static str,
    pub generators: Vec<GeneratorSplitting>,
}

/// Whether the minimal polynomial over K of every L-level generator splits
/// into linear factors over L.
pub fn quasi_galois_check(tower: &FieldTower, cfg: &Config) -> Result<QuasiGaloisReport> {
    let mut generators = Vec::new();
    for i in tower.base_mark()..tower.num_algebraics() {
        let m = min_poly(tower, &tower.generator(i));
        let roots = roots_in_tower(tower, &m, cfg)?;
        generators.push(GeneratorSplitting {
            generator: tower.generator_name(i).to_string(),
            min_poly: tower.poly_to_string(&m, "x"),
            degree: m.deg(),
            roots_in_l: roots.len(),
            splits: roots.len() == m.deg(),
        });
    }
    Ok(QuasiGaloisReport {
        verdict: generators.iter().all(|g| g.splits),
        scope: "certified-on-generators",
        generators,
    })
}
