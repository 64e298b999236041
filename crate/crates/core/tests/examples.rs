//! Worked examples through the public API. Hand-derived values are written
//! out in full next to each assertion.

use halflat::assoc::{
    a_normal_form, act_on_omega_module, act_on_weight_module, b_normal_form, decompose_potential, is_a_module_spec,
    iso_decide, simplicity_witness, BElement, OmegaSpec, WeightModule,
};
use halflat::bridge::{build_module_context, t_operator, vacuum_basis, z_operator, AnyModule};
use halflat::checks::{borcherds_check, locality_check, ModeCache};
use halflat::fock::{FockMonomial, State, VElement, Weight};
use halflat::json::{parse_element, ElementKind, Parsed};
use halflat::rational::{frac, q};
use halflat::vertex::{nth_product, Adjoint};
use halflat::zhu::{o_action_on_v0, zhu_circ, zhu_generalized, zhu_iso_check, zhu_reduce, zhu_star, ZhuNormalForm};
use halflat::{Charge, LatticeConfig, LatticeVector, LaurentPoly, Rational};

fn cfg(nu: usize, k: i64) -> LatticeConfig {
    LatticeConfig::new(nu, k).unwrap()
}

fn e(alpha: &[i64]) -> VElement {
    VElement::exp(Charge(alpha.to_vec()))
}

fn mono(pairs: &[(usize, u32)]) -> FockMonomial {
    FockMonomial::from_pairs(pairs)
}

fn t(nvars: usize, lv: usize, exps: &[i64]) -> LaurentPoly {
    LaurentPoly::monomial(nvars, lv, exps.to_vec(), q(1)).unwrap()
}

#[test]
fn pairings() {
    let c = cfg(2, 1);
    assert_eq!(c.pairing(&c.c(0), &c.d(0)).unwrap(), q(1));
    assert_eq!(c.pairing(&c.c(0), &c.c(1)).unwrap(), q(0));
    let v = c.c(0).add(&c.d(0));
    assert_eq!(c.pairing(&v, &v).unwrap(), q(2));
}

#[test]
fn laurent_shift_and_degree_derivation() {
    assert_eq!(t(2, 0, &[1, 0]).shift(0, 1).unwrap(), t(2, 0, &[1, 0]).sub(&LaurentPoly::one(2, 0)));
    // (t₂ − 3)² = t₂² − 6t₂ + 9
    let expected = t(2, 0, &[0, 2]).sub(&t(2, 0, &[0, 1]).scale(&q(6))).add(&LaurentPoly::constant(2, 0, q(9)));
    assert_eq!(t(2, 0, &[0, 2]).shift(1, 3).unwrap(), expected);
    assert_eq!(LaurentPoly::constant(2, 0, q(5)).shift(1, 4).unwrap(), LaurentPoly::constant(2, 0, q(5)));
    let p = t(2, 1, &[-2, 1]);
    assert_eq!(p.degree_derivation(0), p.scale(&q(-2)));
    assert!(t(2, 1, &[0, 1]).degree_derivation(0).is_zero());
}

#[test]
fn heisenberg_action_and_weights() {
    let c = cfg(2, 1);
    let ad = Adjoint::adjoint(c);
    let vac = VElement::vacuum(2);
    assert!(ad.heisenberg(&c.c(0), 3, &vac).is_zero());
    assert_eq!(ad.heisenberg(&c.c(0), 1, &VElement::mode(2, c.d_dir(0), 1)), vac);
    assert_eq!(ad.heisenberg(&c.d(0), 0, &e(&[1, 0])), e(&[1, 0]));

    assert_eq!(vac.weight(), Weight::Homogeneous(0));
    assert_eq!(e(&[1, 0]).weight(), Weight::Homogeneous(0));
    let s = State::basis(mono(&[(c.c_dir(0), 2), (c.d_dir(0), 1)]), Charge(vec![0, 1]));
    assert_eq!(s.weight(), Weight::Homogeneous(3));
    assert_eq!(ad.virasoro(0, &s), s.scale(&q(3)));
}

#[test]
fn products_in_v() {
    for k in [1, 2] {
        let c = cfg(2, k);
        let d1 = VElement::mode(2, c.d_dir(0), 1);
        let c1 = VElement::mode(2, c.c_dir(0), 1);
        assert_eq!(nth_product(&c, &d1, 0, &e(&[1, 0])), e(&[1, 0]).scale(&q(k)));
        assert_eq!(nth_product(&c, &c1, 1, &d1), VElement::vacuum(2).scale(&q(k)));
    }
    let c = cfg(2, 1);
    assert_eq!(nth_product(&c, &e(&[1, 0]), -1, &e(&[0, 1])), e(&[1, 1]));
    assert_eq!(
        nth_product(&c, &e(&[1, 0]), -2, &e(&[0, 1])),
        State::basis(mono(&[(c.c_dir(0), 1)]), Charge(vec![1, 1]))
    );
    let vac = VElement::vacuum(2);
    let w = State::basis(mono(&[(c.d_dir(1), 2)]), Charge(vec![1, -1]));
    for n in -3..=3 {
        let expected = if n == -1 { w.clone() } else { State::zero() };
        assert_eq!(nth_product(&c, &vac, n, &w), expected);
    }
}

#[test]
fn virasoro_on_the_vacuum() {
    for nu in 1..=3 {
        let ad = Adjoint::adjoint(cfg(nu, 1));
        let vac = VElement::vacuum(nu);
        for n in -1..=3 {
            assert!(ad.virasoro(n, &vac).is_zero());
        }
        assert_eq!(ad.virasoro(2, &ad.virasoro(-2, &vac)), vac.scale(&q(nu as i64)));
    }
}

#[test]
fn exponential_modes_on_a_module() {
    // λ = d₁ with k = 1 gives (c₁, λ) = 1
    let c = cfg(2, 1);
    let ctx = build_module_context(c, c.d(0), AnyModule::Weight(WeightModule::lattice(c))).unwrap();
    let w0 = State::vacuum_of(vec![0i64, 0]);
    assert_eq!(ctx.y_coefficient(&e(&[1, 0]), -2, &w0), State::vacuum_of(vec![1, 0]));
    assert!(ctx.y_coefficient(&e(&[1, 0]), -1, &w0).is_zero());
}

#[test]
fn locality_orders() {
    let c = cfg(2, 1);
    let ad = Adjoint::adjoint(c);
    let cache = ModeCache::new(&ad);
    let probes = [VElement::vacuum(2), e(&[0, 1]), VElement::mode(2, c.c_dir(1), 2)];
    let c1 = VElement::mode(2, c.c_dir(0), 1);
    let d1 = VElement::mode(2, c.d_dir(0), 1);
    assert!(locality_check(&cache, &c1, &d1, 2, 3, &probes).is_ok());
    assert!(locality_check(&cache, &c1, &d1, 1, 3, &probes).is_err());
    assert!(locality_check(&cache, &c1, &e(&[0, 1]), 1, 3, &probes).is_ok());
    assert!(locality_check(&cache, &e(&[1, 0]), &e(&[0, 1]), 0, 3, &probes).is_ok());
}

#[test]
fn borcherds_examples() {
    let c = cfg(2, 1);
    let ad = Adjoint::adjoint(c);
    let cache = ModeCache::new(&ad);
    let vac = VElement::vacuum(2);
    let d1 = VElement::mode(2, c.d_dir(0), 1);
    let w = VElement::mode(2, c.c_dir(1), 1);
    for m in -2..=2 {
        for n in -2..=2 {
            for k in -2..=2 {
                assert!(borcherds_check(&cache, &cache, &vac, &vac, &vac, (m, n, k)).is_ok());
                assert!(borcherds_check(&cache, &cache, &d1, &e(&[1, 0]), &e(&[0, 1]), (m, n, k)).is_ok());
                assert!(borcherds_check(&cache, &cache, &d1, &e(&[1, 0]), &w, (m, n, k)).is_ok());
            }
        }
    }
}

#[test]
fn heisenberg_exponential_commutator() {
    // [h_n, (e^α)_m] = (h, α) (e^α)_{m+n} with h = d₁ + 2c₂, α = c₁ − c₂: (h, α) = 1 − 2·0 = 1
    let c = cfg(2, 1);
    let ad = Adjoint::adjoint(c);
    let h = VElement::mode(2, c.d_dir(0), 1).add(&VElement::mode(2, c.c_dir(1), 1).scale(&q(2)));
    let ea = e(&[1, -1]);
    let probes = [VElement::vacuum(2), e(&[0, 2]), VElement::mode(2, c.d_dir(1), 1)];
    for w in &probes {
        for n in -2..=2 {
            for m in -3..=2 {
                let lhs = ad.y_coefficient(&h, n, &ad.y_coefficient(&ea, m, w)).sub(&ad.y_coefficient(
                    &ea,
                    m,
                    &ad.y_coefficient(&h, n, w),
                ));
                assert_eq!(lhs, ad.y_coefficient(&ea, m + n, w));
            }
        }
    }
}

#[test]
fn algebra_relations() {
    let c = cfg(2, 1);
    let d1 = BElement::d(0);
    let ec1 = BElement::e(Charge(vec![1, 0]));
    let expected = ec1.mul(&d1).add(&ec1);
    assert_eq!(b_normal_form(&c, &d1.mul(&ec1)).to_belement(), b_normal_form(&c, &expected).to_belement());
    assert_eq!(b_normal_form(&c, &ec1.mul(&BElement::e(Charge(vec![-1, 0])))).to_belement(), BElement::one());
    let d2d1 = BElement::d(1).mul(&BElement::d(0));
    assert_eq!(a_normal_form(&c, &d2d1), a_normal_form(&c, &BElement::d(0).mul(&BElement::d(1))));
    assert_ne!(
        b_normal_form(&c, &d2d1).to_belement(),
        b_normal_form(&c, &BElement::d(0).mul(&BElement::d(1))).to_belement()
    );
}

#[test]
fn weight_module_actions() {
    let c = cfg(2, 1);
    let module = WeightModule::new(c, vec![frac(1, 3), q(0)]).unwrap();
    let at = |a: &[i64]| [(Charge(a.to_vec()), q(1))].into();
    assert_eq!(act_on_weight_module(&BElement::e(Charge(vec![0, 1])), &at(&[1, 0]), &module), at(&[1, 1]));
    // (d₁, λ' + c₁) = 1/3 + 1
    let got = act_on_weight_module(&BElement::d(0), &at(&[1, 0]), &module);
    assert_eq!(got, [(Charge(vec![1, 0]), frac(4, 3))].into());

    let one = cfg(1, 1);
    let half = WeightModule::new(one, vec![frac(1, 2)]).unwrap();
    let got = act_on_weight_module(&BElement::d(0), &[(Charge(vec![0]), q(1))].into(), &half);
    assert_eq!(got, [(Charge(vec![0]), frac(1, 2))].into());
}

#[test]
fn omega_module_actions() {
    let a2 = frac(5, 2);
    let spec = OmegaSpec::new(2, 2, vec![t(2, 1, &[1, 0])], vec![a2.clone()]).unwrap();
    let one = spec.one_poly();
    assert_eq!(spec.e_action(&Charge(vec![0, 1]), &one).unwrap(), one.scale(&a2));
    let t1 = t(2, 1, &[1, 0]);
    assert_eq!(spec.d_action(0, &t1).unwrap(), t1.add(&t(2, 1, &[2, 0])));
    let f = t(2, 1, &[-1, 2]).add(&one.scale(&q(3)));
    assert_eq!(spec.d_action(1, &f).unwrap(), f.mul(&t(2, 1, &[0, 1])));
}

#[test]
fn a_module_criterion_and_potentials() {
    let bad = OmegaSpec::new(2, 3, vec![t(2, 2, &[0, 1]), t(2, 2, &[1, 0])], vec![]).unwrap();
    let v = is_a_module_spec(&bad);
    assert!(!v.is_a_module);
    assert_eq!(v.witness, Some((0, 1)));
    let t1t2 = t(2, 2, &[1, 1]);
    let good = OmegaSpec::new(2, 3, vec![t1t2.clone(), t1t2.clone()], vec![]).unwrap();
    assert!(is_a_module_spec(&good).is_a_module);
    assert!(is_a_module_spec(&OmegaSpec::new(2, 1, vec![], vec![q(1), q(2)]).unwrap()).is_a_module);

    let p = decompose_potential(&good).unwrap();
    assert_eq!(p.p, t1t2);
    assert!(p.parts.iter().all(|x| x.is_zero()));

    let f1 = t(2, 2, &[1, 0]).scale(&q(2)).add(&t(2, 2, &[1, 2]));
    let f2 = t(2, 2, &[1, 2]).scale(&q(2));
    let p = decompose_potential(&OmegaSpec::new(2, 3, vec![f1, f2], vec![]).unwrap()).unwrap();
    assert_eq!(p.p, t(2, 2, &[1, 2]));
    assert_eq!(p.parts, vec![t(2, 2, &[1, 0]).scale(&q(2)), LaurentPoly::zero(2, 2)]);

    let constant = OmegaSpec::new(2, 2, vec![LaurentPoly::constant(2, 1, frac(2, 7))], vec![q(1)]).unwrap();
    let p = decompose_potential(&constant).unwrap();
    assert!(p.p.is_zero());
    assert_eq!(p.parts, vec![LaurentPoly::constant(2, 1, frac(2, 7))]);
}

#[test]
fn isomorphism_examples() {
    let s = |f: LaurentPoly, a: i64| OmegaSpec::new(2, 2, vec![f], vec![q(a)]).unwrap();
    let t1 = t(2, 1, &[1, 0]);
    let iso = iso_decide(&s(t1.clone(), 2), &s(t1.add(&LaurentPoly::constant(2, 1, q(3))), 2)).unwrap();
    assert_eq!(iso.shifts, vec![3]);
    assert!(iso_decide(&s(t1.clone(), 2), &s(t1.clone(), 3)).is_none());
    assert!(iso_decide(&s(t1.clone(), 2), &s(t1.add(&LaurentPoly::constant(2, 1, frac(1, 2))), 2)).is_none());
}

#[test]
fn simplicity_witnesses() {
    let spec = OmegaSpec::new(1, 1, vec![], vec![q(3)]).unwrap();
    let w = simplicity_witness(&spec, &spec.one_poly()).unwrap();
    assert!(w.steps.is_empty());
    assert_eq!(w.scalar, q(1));

    let w = simplicity_witness(&spec, &t(1, 0, &[1])).unwrap();
    assert_eq!(w.steps.len(), 1);
    assert_eq!(w.replay(&spec, &t(1, 0, &[1])).unwrap(), spec.one_poly().scale(&q(-1)));

    // ν = 2, μ = 2, f = t₁t₂: e_{−c₁}(d₁ − e_{c₁}) then a₂⁻¹e_{c₂} − 1 ends at −ω
    let a2 = q(2);
    let spec = OmegaSpec::new(2, 2, vec![t(2, 1, &[1, 0])], vec![a2.clone()]).unwrap();
    let f = t(2, 1, &[1, 1]);
    let first = BElement::e(Charge(vec![-1, 0])).mul(&BElement::d(0).sub(&BElement::e(Charge(vec![1, 0]))));
    let second = BElement::e(Charge(vec![0, 1])).scale(&(q(1) / a2)).sub(&BElement::one());
    let by_hand = act_on_omega_module(&second, &act_on_omega_module(&first, &f, &spec).unwrap(), &spec).unwrap();
    assert_eq!(by_hand, spec.one_poly().scale(&q(-1)));
    let w = simplicity_witness(&spec, &f).unwrap();
    assert_eq!(w.steps.len(), 2);
    assert_eq!(w.scalar, q(-1));
    assert_eq!(w.replay(&spec, &f).unwrap(), by_hand);
}

#[test]
fn module_contexts() {
    let lattice = |c: LatticeConfig| AnyModule::Weight(WeightModule::lattice(c));
    let c1 = cfg(2, 1);
    assert!(build_module_context(c1, c1.d(0), lattice(c1)).is_ok());
    let c2 = cfg(2, 2);
    let half_d1 = c2.d(0).scale(&frac(1, 2));
    let ctx = build_module_context(c2, half_d1, lattice(c2)).unwrap();
    assert_eq!(ctx.z_power(&Charge(vec![1, 0])), 1);
    assert!(build_module_context(c1, c1.d(0).scale(&frac(1, 2)), lattice(c1)).is_err());
}

#[test]
fn vacuum_space_and_z_operators() {
    let c = cfg(2, 1);
    let lambda = c.d(0).add(&c.d(1));
    let spec = OmegaSpec::new(2, 2, vec![t(2, 1, &[1, 0])], vec![q(2)]).unwrap();
    let ctx = build_module_context(c, lambda.clone(), AnyModule::Omega(spec.clone())).unwrap();
    let slice = vec![vec![0i64, 0], vec![-1, 1], vec![2, 0]];
    let vacua = vacuum_basis(&ctx, 4, &slice);
    assert_eq!(vacua.len(), slice.len());
    assert!(vacua.iter().all(|v| v.max_fock_weight() == 0));

    let w = State::vacuum_of(vec![-1i64, 1]);
    let wpoly = t(2, 1, &[-1, 1]);
    for alpha in [Charge(vec![1, 0]), Charge(vec![0, -1]), Charge(vec![2, 1])] {
        let pairing = c.charge_pairing(&alpha, &lambda);
        let special = -1 - halflat::rational::as_integer(&pairing).unwrap();
        let ew = spec.e_action(&alpha, &wpoly).unwrap();
        let expected: State<Vec<i64>> = ew
            .terms()
            .map(|(exps, coeff)| (FockMonomial::vacuum(), exps.clone(), coeff.clone()))
            .fold(State::zero(), |mut s, (m, b, x)| {
                s.add_term(m, b, x);
                s
            });
        for n in special - 3..=special + 3 {
            let z = z_operator(&ctx, &alpha, n, &w);
            if n == special {
                assert_eq!(z, expected);
            } else {
                assert!(z.is_zero(), "Z(α,{n}) ≠ 0");
            }
        }
        assert_eq!(t_operator(&ctx, &alpha, &w).unwrap(), expected);
    }
    let zero = Charge(vec![0, 0]);
    assert_eq!(t_operator(&ctx, &zero, &w).unwrap(), w);
    for n in -3..=3 {
        let z = z_operator(&ctx, &zero, n, &w);
        assert_eq!(z, if n == -1 { w.clone() } else { State::zero() });
    }
}

#[test]
fn zhu_products_and_reduction() {
    let c = cfg(2, 1);
    let alpha = Charge(vec![1, -1]);
    let beta = Charge(vec![0, 2]);
    let (ea, eb) = (VElement::exp(alpha.clone()), VElement::exp(beta.clone()));
    assert_eq!(zhu_star(&c, &ea, &eb), VElement::exp(alpha.add(&beta)));
    let v = VElement::mode(2, c.d_dir(1), 2).add(&eb);
    assert_eq!(zhu_star(&c, &VElement::vacuum(2), &v), v);

    // d₁(−1)𝟏 * e^α = d₁(−1)e^α + (d₁, α)e^α, (d₁, α) = 1
    let d1 = VElement::mode(2, c.d_dir(0), 1);
    let expected = State::basis(mono(&[(c.d_dir(0), 1)]), alpha.clone()).add(&ea);
    assert_eq!(zhu_star(&c, &d1, &ea), expected);

    // e^α ∘ e^β = α(−1) e^{α+β} = c₁(−1)e^{α+β} − c₂(−1)e^{α+β}
    let mut circ = State::zero();
    circ.add_term(mono(&[(c.c_dir(0), 1)]), alpha.add(&beta), q(1));
    circ.add_term(mono(&[(c.c_dir(1), 1)]), alpha.add(&beta), q(-1));
    assert_eq!(zhu_circ(&c, &ea, &eb), circ);
    assert!(zhu_circ(&c, &VElement::vacuum(2), &v).is_zero());
    assert!(zhu_reduce(&c, &zhu_generalized(&c, &d1, &eb, 1)).is_zero());

    let d1m2 = State::basis(mono(&[(c.d_dir(0), 2)]), alpha.clone());
    let d1m1 = State::basis(mono(&[(c.d_dir(0), 1)]), alpha.clone());
    assert_eq!(zhu_reduce(&c, &d1m2), zhu_reduce(&c, &d1m1.scale(&q(-1))));
    assert!(zhu_reduce(&c, &State::basis(mono(&[(c.c_dir(0), 1), (c.d_dir(0), 1)]), Charge(vec![0, 0]))).is_zero());
    let mut nf = ZhuNormalForm::default();
    nf.add_term(vec![0, 0], Charge(vec![1, 0]), q(1));
    assert_eq!(zhu_reduce(&c, &e(&[1, 0])), nf);
}

#[test]
fn zhu_isomorphism_examples() {
    use halflat::assoc::AElement;
    for k in [1, 2] {
        let c = cfg(2, k);
        let ec = |a: &[i64]| AElement::basis(vec![0, 0], Charge(a.to_vec()));
        let d = |i: usize| {
            let mut dexp = vec![0, 0];
            dexp[i] = 1;
            AElement::basis(dexp, Charge(vec![0, 0]))
        };
        let pairs = [(ec(&[1, 0]), ec(&[0, 1])), (d(0), ec(&[1, 0])), (d(0), d(1))];
        assert!(zhu_iso_check(&c, &pairs).is_ok());

        // d₁(−1) * e^{c₁} − e^{c₁} * d₁(−1) reduces to k e^{c₁}
        let d1 = VElement::mode(2, c.d_dir(0), 1);
        let diff = zhu_star(&c, &d1, &e(&[1, 0])).sub(&zhu_star(&c, &e(&[1, 0]), &d1));
        let mut nf = ZhuNormalForm::default();
        nf.add_term(vec![0, 0], Charge(vec![1, 0]), q(k));
        assert_eq!(zhu_reduce(&c, &diff), nf);
    }
}

#[test]
fn o_action_on_laurent_monomials() {
    let c = cfg(2, 1);
    let p = t(2, 2, &[3, 1]);
    assert_eq!(o_action_on_v0(&c, &VElement::mode(2, c.d_dir(0), 1), &p).unwrap(), p.scale(&q(3)));
    assert_eq!(o_action_on_v0(&c, &e(&[1, 0]), &p).unwrap(), t(2, 2, &[4, 1]));
    assert_eq!(o_action_on_v0(&c, &VElement::vacuum(2), &p).unwrap(), p);
}

#[test]
fn json_documents() {
    let c = cfg(2, 1);
    let Parsed::VElement(v) =
        parse_element(r#"{"terms":[{"coeff":"1","fock":[],"charge":[1,0]}]}"#, ElementKind::VElement, &c).unwrap()
    else {
        panic!("wrong kind")
    };
    assert_eq!(v, e(&[1, 0]));
    let Parsed::VElement(v) =
        parse_element(r#"{"terms":[{"coeff":"1/2","fock":[[2,1]],"charge":[0,0]}]}"#, ElementKind::VElement, &c)
            .unwrap()
    else {
        panic!("wrong kind")
    };
    assert_eq!(v, VElement::mode(2, c.d_dir(0), 1).scale(&frac(1, 2)));
    let err = parse_element(r#"{"terms":[{"coeff":"1","fock":[],"charge":[1,0,0]}]}"#, ElementKind::VElement, &c)
        .unwrap_err();
    assert!(err.to_string().contains("terms[0].charge"));
}

#[test]
fn rational_helpers_are_exact() {
    let x: Rational = frac(6, -4);
    assert_eq!(x, frac(-3, 2));
    assert_eq!(LatticeVector::from_ints(&[1, 0], &[0, 2]).nu(), 2);
}
