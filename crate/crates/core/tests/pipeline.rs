use std::path::PathBuf;

use galmodel::aut_checker::{compute_aut, iso_check, qgc_check};
use galmodel::exact_poly::{Field, UPoly};
use galmodel::field_tower::{roots_in_tower, tower_build, FieldElement, FieldTower, TowerSpec};
use galmodel::galois_engine::{apply_aut, enumerate_gal, orbit};
use galmodel::pipeline::{run, Command};
use galmodel::scheme_builder::{build_model, parse_model_input, validate_cover, verify_model, Ambient, CoverComplex, ModelSpec, Tristate};
use galmodel::Config;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sample(name: &str) -> ModelSpec {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../samples").join(format!("{name}.json"));
    parse_model_input(&std::fs::read_to_string(path).unwrap()).unwrap()
}

const SAMPLES: [(&str, i32); 7] =
    [("sqrt2", 0), ("s3", 0), ("zeta5", 0), ("elliptic", 0), ("trivial", 0), ("cube_root", 3), ("s3_cube_root_chart", 3)];

#[test]
fn every_sample_reports_its_expected_status() {
    for (name, code) in SAMPLES {
        let r = run(&sample(name), &Config::default(), Command::Report, false);
        assert_eq!(r.exit_code(), code, "{name}: {}", r.status.message);
    }
}

#[test]
fn reports_are_deterministic() {
    for (name, _) in SAMPLES {
        let spec = sample(name);
        let a = run(&spec, &Config::default(), Command::Report, false).to_json();
        let b = run(&spec, &Config::default(), Command::Report, false).to_json();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn constructed_models_satisfy_their_invariants() {
    let cfg = Config::default();
    for name in ["sqrt2", "s3", "zeta5", "elliptic", "trivial"] {
        let spec = sample(name);
        let tower = tower_build(&spec.tower, &cfg).unwrap();
        let g = enumerate_gal(&tower, &cfg).unwrap();
        let nice: Vec<FieldElement> = spec.nice_basis.iter().map(|e| tower.nf(e).unwrap()).collect();
        let base = tower.base_tower();
        let cover_y = CoverComplex::from_spec(&spec.cover, &base, Ambient::K, &cfg).unwrap();
        assert_eq!(validate_cover(&cover_y, &base, &cfg).unwrap().verdict, Tristate::True, "{name}");
        let model = build_model(&cover_y, &tower, &g, &nice, &cfg).unwrap();
        assert_eq!(model.cover_x.len(), cover_y.len(), "{name}");

        for s in g.elements() {
            for d in &model.delta.delta {
                assert!(model.delta.delta.contains(&apply_aut(&tower, s, d)), "{name}: Δ not G-stable");
            }
        }

        let check = verify_model(&model, &cover_y, &tower, &cfg).unwrap();
        assert!(check.contains_y.iter().all(|i| i.holds), "{name}");
        assert!(check.delta_stable && check.generators_stable && check.affine && check.reduced, "{name}");
        assert_eq!(check.verdict, Tristate::True, "{name}");

        let aut = compute_aut(&model, &tower, &cfg).unwrap();
        assert!(iso_check(&aut, &g).pass, "{name}");
        assert_eq!(qgc_check(&model, &g, &tower, &cfg).unwrap().verdict, Tristate::True, "{name}");
    }
}

#[test]
fn qgc_verdict_is_monotone_in_degree_bound() {
    let rank = |t: Tristate| match t {
        Tristate::Refuted => 0,
        Tristate::Inconclusive => 1,
        Tristate::True => 2,
    };
    for name in ["sqrt2", "elliptic"] {
        let spec = sample(name);
        let mut last = 0;
        for bound in 1..=4 {
            let cfg = Config { degree_bound: bound, ..Config::default() };
            let r = run(&spec, &cfg, Command::CheckQgc, false);
            let v = rank(r.verdicts.qgc.unwrap());
            assert!(v >= last, "{name} at bound {bound}");
            last = v;
        }
    }
}

fn s3() -> FieldTower {
    tower_build(&TowerSpec::number_field(&[("c", "c^3 - 2"), ("w", "w^2 + w + 1")]), &Config::default()).unwrap()
}

fn random_element(t: &FieldTower, rng: &mut ChaCha8Rng) -> FieldElement {
    let mut x = t.zero();
    for m in t.full_basis() {
        if rng.gen_bool(0.5) {
            x = t.add(&x, &t.monomial(m, galmodel::field_tower::RatFunc::constant(t.transcendentals(), galmodel::exact_poly::q(rng.gen_range(-3..=3)))));
        }
    }
    x
}

#[test]
fn roots_in_tower_finds_planted_roots() {
    let t = s3();
    let cfg = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let planted: Vec<FieldElement> = (0..rng.gen_range(1..=2)).map(|_| random_element(&t, &mut rng)).collect();
        // x^2 - 3 has no root in Q(c, w); the norm stays under the default degree cap
        let mut f = UPoly::new(&t, vec![t.from_rational(&galmodel::exact_poly::q(-3)), t.zero(), t.one()]);
        for r in &planted {
            f = f.mul(&t, &UPoly::new(&t, vec![t.neg(r), t.one()]));
        }
        let roots = roots_in_tower(&t, &f, &cfg).unwrap();
        assert!(roots.len() <= f.deg());
        for r in &roots {
            assert!(f.eval(&t, r).is_zero());
        }
        for r in &planted {
            assert!(roots.contains(r));
        }
    }
}

#[test]
fn orbits_are_group_stable() {
    let t = s3();
    let g = enumerate_gal(&t, &Config::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let xs: Vec<FieldElement> = (0..2).map(|_| random_element(&t, &mut rng)).collect();
        let o = orbit(&g, &t, &xs);
        for s in g.elements() {
            for y in &o {
                assert!(o.contains(&apply_aut(&t, s, y)));
            }
        }
        assert!(o.len() <= 2 * g.order());
    }
}
