//! Exact enumeration of Gal(L/K), the fixed-field certificate, and orbits.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_poly::linalg::rank;
use crate::exact_poly::{Field, UPoly};
use crate::field_tower::{roots_in_tower, FieldElement, FieldTower};
use crate::Config;

/// A K-automorphism of L, given by the images of the L-level generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldAutomorphism {
    images: Vec<FieldElement>,
}

impl FieldAutomorphism {
    pub fn identity(tower: &FieldTower) -> Self {
        FieldAutomorphism { images: (tower.base_mark()..tower.num_algebraics()).map(|i| tower.generator(i)).collect() }
    }

    pub fn images(&self) -> &[FieldElement] {
        &self.images
    }

    /// `generator -> image` strings.
    pub fn describe(&self, tower: &FieldTower) -> Vec<(String, String)> {
        self.images
            .iter()
            .enumerate()
            .map(|(j, x)| (tower.generator_name(tower.base_mark() + j).to_string(), tower.to_string_of(x)))
            .collect()
    }
}

/// Applies a partial map sending the first `images.len()` L-level generators
/// to `images`; `x` must not involve later generators.
fn apply_partial(tower: &FieldTower, images: &[FieldElement], x: &FieldElement) -> FieldElement {
    let base = tower.base_mark();
    let mut powers: Vec<Vec<FieldElement>> = images.iter().map(|im| vec![tower.one(), im.clone()]).collect();
    let mut acc = tower.zero();
    for (m, c) in x.coords() {
        let mut km = m.clone();
        km[base..].iter_mut().for_each(|e| *e = 0);
        let mut term = tower.monomial(km, c.clone());
        for (j, &e) in m[base..].iter().enumerate() {
            if e == 0 {
                continue;
            }
            assert!(j < images.len(), "element involves an unmapped generator");
            while powers[j].len() <= e as usize {
                let next = tower.mul(powers[j].last().expect("nonempty"), &images[j]);
                powers[j].push(next);
            }
            term = tower.mul(&term, &powers[j][e as usize]);
        }
        acc = tower.add(&acc, &term);
    }
    acc
}

pub fn apply_aut(tower: &FieldTower, sigma: &FieldAutomorphism, x: &FieldElement) -> FieldElement {
    apply_partial(tower, &sigma.images, x)
}

/// Gal(L/K) with element 0 the identity and `table[i][j]` the index of `σ_i ∘ σ_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisGroup {
    elements: Vec<FieldAutomorphism>,
    table: Vec<Vec<usize>>,
}

impl GaloisGroup {
    pub fn trivial(tower: &FieldTower) -> Self {
        GaloisGroup { elements: vec![FieldAutomorphism::identity(tower)], table: vec![vec![0]] }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[FieldAutomorphism] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &FieldAutomorphism {
        &self.elements[i]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.table[i].iter().position(|&k| k == 0).expect("group table")
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = i;
        let mut n = 1;
        while k != 0 {
            k = self.table[i][k];
            n += 1;
        }
        n
    }

    /// A pair `(i, j)` with `σ_i σ_j != σ_j σ_i`, if the group is not abelian.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.order();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| self.table[i][j] != self.table[j][i])
    }

    pub fn is_abelian(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order()).any(|i| self.element_order(i) == self.order())
    }

    /// Checks identity, Latin-square rows and columns, and associativity
    /// (all triples up to order 8, a deterministic sample of 500 otherwise).
    pub fn verify_table(&self) -> bool {
        let n = self.order();
        let perm = |v: Vec<usize>| {
            let mut v = v;
            v.sort();
            v == (0..n).collect::<Vec<_>>()
        };
        if (0..n).any(|i| self.table[0][i] != i || self.table[i][0] != i) {
            return false;
        }
        if !(0..n).all(|i| perm(self.table[i].clone()) && perm((0..n).map(|j| self.table[j][i]).collect())) {
            return false;
        }
        let assoc = |a: usize, b: usize, c: usize| self.table[self.table[a][b]][c] == self.table[a][self.table[b][c]];
        if n <= 8 {
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| assoc(a, b, c))))
        } else {
            (0..500usize).all(|k| assoc(k % n, (k * 7 + 3) % n, (k * 13 + 5) % n))
        }
    }
}

/// Enumerates Gal(L/K) by extending embeddings one generator at a time; the
/// candidate images of a generator are the roots in L of its minimal
/// polynomial transported by the partial map.
pub fn enumerate_gal(tower: &FieldTower, cfg: &Config) -> Result<GaloisGroup> {
    let base = tower.base_mark();
    let mut partial: Vec<Vec<FieldElement>> = vec![Vec::new()];
    for i in base..tower.num_algebraics() {
        let m = tower.min_poly_of(i);
        let mut next = Vec::new();
        for p in &partial {
            let transported = UPoly::new(tower, m.coeffs().iter().map(|c| apply_partial(tower, p, c)).collect());
            for r in roots_in_tower(tower, &transported, cfg)? {
                let mut q = p.clone();
                q.push(r);
                next.push(q);
            }
        }
        partial = next;
    }
    let identity = FieldAutomorphism::identity(tower);
    let mut elements: Vec<FieldAutomorphism> = partial.into_iter().map(|images| FieldAutomorphism { images }).collect();
    elements.sort();
    let pos = elements.iter().position(|e| *e == identity).ok_or_else(|| Error::Internal("identity not enumerated".into()))?;
    let id = elements.remove(pos);
    elements.insert(0, id);

    let index: BTreeMap<&FieldAutomorphism, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut table = vec![vec![0; elements.len()]; elements.len()];
    for (i, s) in elements.iter().enumerate() {
        for (j, t) in elements.iter().enumerate() {
            let comp = FieldAutomorphism { images: t.images.iter().map(|x| apply_aut(tower, s, x)).collect() };
            table[i][j] = *index.get(&comp).ok_or_else(|| Error::Internal("enumerated set is not closed under composition".into()))?;
        }
    }
    let g = GaloisGroup { elements, table };
    if !g.verify_table() {
        return Err(Error::Internal("composition table is not a group table".into()));
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedFieldVerdict {
    pub is_galois: bool,
    /// Dimension over K of the subspace of L fixed by every element of G.
    pub fixed_dimension: usize,
    pub degree: usize,
    pub group_order: usize,
}

/// Decides whether K is the fixed field of G: the joint kernel of the
/// K-linear maps `σ - id` on L must be K·1.
pub fn fixed_field_certify(g: &GaloisGroup, tower: &FieldTower) -> FixedFieldVerdict {
    let basis = tower.k_basis();
    let dim = basis.len();
    let basis_elems: Vec<FieldElement> = basis.iter().map(|m| tower.monomial(m.clone(), crate::field_tower::RatFunc::one(tower.transcendentals()))).collect();
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for sigma in g.elements().iter().skip(1) {
        let cols: Vec<Vec<FieldElement>> = basis_elems
            .iter()
            .map(|b| tower.coords_over_k(&tower.sub(&apply_aut(tower, sigma, b), b)))
            .collect();
        for r in 0..dim {
            rows.push(cols.iter().map(|c| c[r].clone()).collect());
        }
    }
    let rk = if rows.is_empty() { 0 } else { rank(tower, &rows) };
    let fixed_dimension = dim - rk;
    FixedFieldVerdict { is_galois: fixed_dimension == 1, fixed_dimension, degree: dim, group_order: g.order() }
}

/// `{σ(x) : σ ∈ G, x ∈ xs}`, deduplicated, in order of first appearance
/// (inputs outer, group elements inner).
pub fn orbit(g: &GaloisGroup, tower: &FieldTower, xs: &[FieldElement]) -> Vec<FieldElement> {
    let mut out: Vec<FieldElement> = Vec::new();
    for x in xs {
        for s in g.elements() {
            let y = apply_aut(tower, s, x);
            if !out.contains(&y) {
                out.push(y);
            }
        }
    }
    out
}
