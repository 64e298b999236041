//! Invariants over seeded random inputs.

use proptest::prelude::*;
use rand::Rng;

use halflat::assoc::{
    a_normal_form, act_on_omega_module, decompose_potential, is_a_module_spec, iso_decide, redexes, rewrite_to_normal,
    simplicity_witness, BElement, OmegaSpec, Target, WeightModule,
};
use halflat::checks::heisenberg_bracket;
use halflat::config::Config;
use halflat::json::{
    aelement_to_json, laurent_to_json, omega_spec_to_json, parse_aelement, parse_laurent, parse_omega_spec,
    parse_velement, velement_to_json,
};
use halflat::probes;
use halflat::rational::q;
use halflat::suites::run_verification;
use halflat::vertex::Adjoint;
use halflat::zhu::{zhu_circ, zhu_reduce};
use halflat::{Charge, LatticeConfig, LaurentPoly};

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}

/// A random spec on `ν = 3`: `μ ∈ 1..=4`, `f_j` supported on the Laurent
/// variables, `a_j` nonzero.
fn random_spec(seed: u64) -> OmegaSpec {
    let mut rng = probes::rng(seed);
    let nu = 3;
    let mu = rng.gen_range(1..=nu + 1);
    let lv = mu - 1;
    let support: Vec<usize> = (0..lv).collect();
    let f = (0..lv).map(|_| probes::laurent(&mut rng, nu, lv, &support, 3, 2)).collect();
    let a = (0..nu + 1 - mu).map(|_| probes::rational(&mut rng)).collect();
    OmegaSpec::new(nu, mu, f, a).unwrap()
}

/// `f_j = D_j P + P_j(t_j)` for random `P` and one-variable `P_j`.
fn closed_spec(seed: u64) -> (OmegaSpec, LaurentPoly, Vec<LaurentPoly>) {
    let mut rng = probes::sub_rng(seed, "closed");
    let (nu, lv) = (3, 2);
    let p = probes::laurent(&mut rng, nu, lv, &[0, 1], 4, 2);
    let parts: Vec<LaurentPoly> = (0..lv).map(|j| probes::laurent(&mut rng, nu, lv, &[j], 2, 2)).collect();
    let f = (0..lv).map(|j| p.degree_derivation(j).add(&parts[j])).collect();
    let a = vec![probes::rational(&mut rng)];
    (OmegaSpec::new(nu, lv + 1, f, a).unwrap(), p, parts)
}

proptest! {
    #![proptest_config(cases(24))]

    #[test]
    fn heisenberg_bracket_on_random_states(seed in any::<u64>(), m in -4i64..=4, n in -4i64..=4) {
        let cfg = LatticeConfig::new(2, 1).unwrap();
        let ctx = Adjoint::adjoint(cfg);
        let mut rng = probes::rng(seed);
        let s = probes::velement(&mut rng, &cfg, 2, 3);
        let dirs = [cfg.c(0), cfg.c(1), cfg.d(0), cfg.d(1)];
        let h = &dirs[rng.gen_range(0..4)];
        let h2 = &dirs[rng.gen_range(0..4)];
        prop_assert!(heisenberg_bracket(&ctx, h, m, h2, n, &s).is_ok());
    }

    #[test]
    fn omega_modules_are_representations(seed in any::<u64>()) {
        let spec = random_spec(seed);
        let mut rng = probes::sub_rng(seed, "rep");
        let x = probes::word(&mut rng, 3, 2);
        let y = probes::word(&mut rng, 3, 2);
        let support: Vec<usize> = (0..3).collect();
        let m = probes::laurent(&mut rng, 3, spec.laurent_vars(), &support, 3, 2);
        let lhs = act_on_omega_module(&x.mul(&y), &m, &spec).unwrap();
        let rhs = act_on_omega_module(&x, &act_on_omega_module(&y, &m, &spec).unwrap(), &spec).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rewriting_is_confluent(seed in any::<u64>(), k in prop::sample::select(vec![1i64, 2, -1])) {
        let cfg = LatticeConfig::new(2, k).unwrap();
        let mut rng = probes::rng(seed);
        let mut x = BElement::zero();
        for _ in 0..3 {
            let len = rng.gen_range(1..=5);
            x = x.add(&probes::word(&mut rng, 2, len));
        }
        for target in [Target::A, Target::B] {
            let first = rewrite_to_normal(&cfg, &x, target, |_| 0);
            let last = rewrite_to_normal(&cfg, &x, target, |rs| rs.len() - 1);
            let mut pick = probes::sub_rng(seed, "pick");
            let random = rewrite_to_normal(&cfg, &x, target, |rs| pick.gen_range(0..rs.len()));
            prop_assert_eq!(&first, &last);
            prop_assert_eq!(&first, &random);
            for (w, _) in first.terms() {
                prop_assert!(redexes(w, target).is_empty());
            }
        }
        prop_assert_eq!(a_normal_form(&cfg, &x).to_belement(), rewrite_to_normal(&cfg, &x, Target::A, |_| 0));
    }

    #[test]
    fn iso_decide_is_reflexive_symmetric_and_recovers_shifts(seed in any::<u64>()) {
        let spec = random_spec(seed);
        let lv = spec.laurent_vars();
        prop_assert_eq!(iso_decide(&spec, &spec).map(|i| i.shifts), Some(vec![0; lv]));

        let mut rng = probes::sub_rng(seed, "shift");
        let shifts = probes::int_vector(&mut rng, lv, 4);
        let g = spec
            .f()
            .iter()
            .zip(&shifts)
            .map(|(f, &n)| f.add(&LaurentPoly::constant(3, lv, q(n))))
            .collect();
        let shifted = OmegaSpec::new(3, spec.mu(), g, spec.a().to_vec()).unwrap();
        prop_assert_eq!(iso_decide(&spec, &shifted).map(|i| i.shifts), Some(shifts.clone()));
        let back: Vec<i64> = shifts.iter().map(|n| -n).collect();
        prop_assert_eq!(iso_decide(&shifted, &spec).map(|i| i.shifts), Some(back));
    }

    #[test]
    fn potentials_round_trip(seed in any::<u64>()) {
        let (spec, _, _) = closed_spec(seed);
        prop_assert!(is_a_module_spec(&spec).is_a_module);
        let pot = decompose_potential(&spec).expect("closed specs decompose");
        for (j, f) in spec.f().iter().enumerate() {
            prop_assert_eq!(&pot.p.degree_derivation(j).add(&pot.parts[j]), f);
            prop_assert!(pot.parts[j].terms().all(|(e, _)| e.iter().enumerate().all(|(i, &x)| i == j || x == 0)));
        }
    }

    #[test]
    fn potentials_exist_exactly_for_a_modules(seed in any::<u64>()) {
        let spec = random_spec(seed);
        prop_assert_eq!(decompose_potential(&spec).is_some(), is_a_module_spec(&spec).is_a_module);
    }

    #[test]
    fn witnesses_replay_to_a_nonzero_multiple_of_omega(seed in any::<u64>()) {
        let spec = random_spec(seed);
        let mut rng = probes::sub_rng(seed, "witness");
        let support: Vec<usize> = (0..3).collect();
        let f = probes::laurent(&mut rng, 3, spec.laurent_vars(), &support, 3, 2);
        let f = spec.element(&f);
        prop_assume!(f.as_ref().is_ok_and(|f| !f.is_zero()));
        let f = f.unwrap();
        let w = simplicity_witness(&spec, &f).unwrap();
        prop_assert!(w.scalar != q(0));
        prop_assert_eq!(w.replay(&spec, &f).unwrap(), spec.one_poly().scale(&w.scalar));
    }

    #[test]
    fn weight_module_cyclic_spans_are_invariant(seed in any::<u64>()) {
        let cfg = LatticeConfig::new(2, 1).unwrap();
        let mut rng = probes::rng(seed);
        let lambda = (0..2).map(|_| probes::rational(&mut rng)).collect();
        let module = WeightModule::new(cfg, lambda).unwrap();
        let w = probes::charge(&mut rng, 2, 3);
        let window: Vec<Charge> = (0..6).map(|_| probes::charge(&mut rng, 2, 2)).collect();
        prop_assert!(module.cyclic_span_is_invariant(&w, &window));
    }
}

proptest! {
    #![proptest_config(cases(12))]

    #[test]
    fn circ_products_vanish_in_zhu(seed in any::<u64>()) {
        let cfg = LatticeConfig::new(2, 1).unwrap();
        let mut rng = probes::rng(seed);
        let u = probes::homogeneous_velement(&mut rng, &cfg, 1, 2);
        let v = probes::velement(&mut rng, &cfg, 2, 2);
        prop_assert!(zhu_reduce(&cfg, &zhu_circ(&cfg, &u, &v)).is_zero());
    }

    #[test]
    fn json_documents_round_trip(seed in any::<u64>()) {
        let cfg = LatticeConfig::new(2, 1).unwrap();
        let mut rng = probes::rng(seed);
        let v = probes::velement(&mut rng, &cfg, 3, 3);
        prop_assert_eq!(parse_velement(&velement_to_json(&v), &cfg).unwrap(), v);

        let p = probes::laurent(&mut rng, 3, 2, &[0, 1, 2], 4, 3);
        prop_assert_eq!(parse_laurent(&laurent_to_json(&p), 3, 2, "f").unwrap(), p);

        let a = probes::aelement(&mut rng, 2, 3, 2, 2);
        prop_assert_eq!(parse_aelement(&aelement_to_json(&a), 2).unwrap(), a);

        let spec = random_spec(seed);
        prop_assert_eq!(parse_omega_spec(&omega_spec_to_json(&spec), 3).unwrap(), spec);
    }
}

proptest! {
    #![proptest_config(cases(4))]

    #[test]
    fn reports_are_byte_identical_for_a_seed(seed in any::<u64>()) {
        let config = Config { seed, probe_count: 8, ..Config::default() };
        for suite in ["omega-relations", "classification"] {
            let a = run_verification(suite, &config).unwrap();
            let b = run_verification(suite, &config).unwrap();
            prop_assert!(a.passed(), "{}", a.summary());
            prop_assert_eq!(a.to_json().to_string(), b.to_json().to_string());
        }
    }
}
