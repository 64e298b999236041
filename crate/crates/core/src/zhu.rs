//! The Zhu algebra `A(V) = V / O(V)`: the products `u * v` and `u ∘ v`,
//! reduction to the normal form `C[d_1(−1),…,d_ν(−1)] ⊗ C[L_C]`, the map
//! `I: A → A(V)`, and the zero-mode action on `V_0 ≅ C[t_1^{±1},…,t_ν^{±1}]`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::assoc::AElement;
use crate::error::{Error, Result};
use crate::fock::{Factor, FockMonomial, VElement};
use crate::lattice::{Charge, LatticeConfig};
use crate::laurent::LaurentPoly;
use crate::rational::{binomial, q, Rational};
use crate::vertex::Adjoint;

/// `Σ_i C(wt u, i) u_{i−offset} v`, summed over the homogeneous parts of `u`.
fn residue_product(ctx: &Adjoint, u: &VElement, v: &VElement, offset: i64) -> VElement {
    let mut out = VElement::zero();
    for (wt, part) in u.homogeneous_parts() {
        for i in 0..=wt {
            out.add_scaled(&ctx.y_coefficient(&part, i as i64 - offset, v), &binomial(wt as i64, i));
        }
    }
    out
}

/// `u * v = Res_z (1+z)^{wt u} z^{−1} Y(u,z) v`.
pub fn zhu_star(cfg: &LatticeConfig, u: &VElement, v: &VElement) -> VElement {
    residue_product(&Adjoint::adjoint(*cfg), u, v, 1)
}

/// `u ∘ v = Res_z (1+z)^{wt u} z^{−2} Y(u,z) v`.
pub fn zhu_circ(cfg: &LatticeConfig, u: &VElement, v: &VElement) -> VElement {
    residue_product(&Adjoint::adjoint(*cfg), u, v, 2)
}

/// `Res_z (1+z)^{wt u} z^{−2−n} Y(u,z) v`, which lies in `O(V)` for `n ≥ 0`.
pub fn zhu_generalized(cfg: &LatticeConfig, u: &VElement, v: &VElement, n: u32) -> VElement {
    residue_product(&Adjoint::adjoint(*cfg), u, v, 2 + n as i64)
}

/// A class in `A(V)`, written `Σ c · d(−1)^k e^α` and keyed by `(k, α)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ZhuNormalForm {
    pub terms: BTreeMap<(Vec<u32>, Charge), Rational>,
}

impl ZhuNormalForm {
    pub fn add_term(&mut self, dexp: Vec<u32>, alpha: Charge, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (dexp, alpha);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The representative `Σ c · d_1(−1)^{k_1}···d_ν(−1)^{k_ν} e^α` in `V`.
    pub fn to_velement(&self, cfg: &LatticeConfig) -> VElement {
        let mut out = VElement::zero();
        for ((dexp, alpha), c) in &self.terms {
            let mut factors = Vec::new();
            for (j, &n) in dexp.iter().enumerate() {
                factors.extend(std::iter::repeat_n(Factor { dir: cfg.d_dir(j), mode: 1 }, n as usize));
            }
            out.add_term(FockMonomial::new(factors), alpha.clone(), c.clone());
        }
        out
    }

    /// The same data read as `Σ c · e_α d^k ∈ A`.
    pub fn to_aelement(&self) -> AElement {
        AElement { terms: self.terms.clone() }
    }
}

impl fmt::Display for ZhuNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((dexp, alpha), c)| {
                let ds: String = dexp
                    .iter()
                    .enumerate()
                    .filter(|(_, &n)| n > 0)
                    .map(|(j, &n)| if n == 1 { format!("d{}(-1)", j + 1) } else { format!("d{}(-1)^{n}", j + 1) })
                    .collect();
                format!("({c}){ds}e^{alpha}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Reduction modulo `O(V)`: `h(−m) ≡ (−1)^{m−1} h(−1)`, then every term
/// with a factor in a `c`-direction vanishes because `α(−1) w ∈ O(V)` for
/// `α ∈ L_C`.
pub fn zhu_reduce(cfg: &LatticeConfig, v: &VElement) -> ZhuNormalForm {
    let mut out = ZhuNormalForm::default();
    for (mono, alpha, c) in v.iter() {
        if mono.has_c_factor(cfg) {
            continue;
        }
        let mut dexp = vec![0u32; cfg.nu];
        let mut sign = 1i64;
        for f in mono.factors() {
            dexp[f.dir - cfg.nu] += 1;
            if f.mode % 2 == 0 {
                sign = -sign;
            }
        }
        out.add_term(dexp, alpha.clone(), c * q(sign));
    }
    out
}

/// `I(e_α d_1^{k_1}···d_ν^{k_ν}) = d_1(−1)^{k_1}···d_ν(−1)^{k_ν} e^α`.
pub fn zhu_embed(cfg: &LatticeConfig, a: &AElement) -> VElement {
    ZhuNormalForm { terms: a.terms.clone() }.to_velement(cfg)
}

/// The first probe pair on which `I` fails to be multiplicative, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZhuIsoFailure {
    pub index: usize,
    pub expected: String,
    pub got: String,
}

/// `zhu_reduce(I(a) * I(b)) = I(a b)` for every probe pair.
pub fn zhu_iso_check(cfg: &LatticeConfig, pairs: &[(AElement, AElement)]) -> std::result::Result<(), ZhuIsoFailure> {
    for (index, (a, b)) in pairs.iter().enumerate() {
        let got = zhu_reduce(cfg, &zhu_star(cfg, &zhu_embed(cfg, a), &zhu_embed(cfg, b)));
        let expected = zhu_reduce(cfg, &zhu_embed(cfg, &a.mul(cfg, b)));
        if got != expected {
            return Err(ZhuIsoFailure { index, expected: expected.to_string(), got: got.to_string() });
        }
    }
    Ok(())
}

/// Residuals of the three defining relations of `A(V)` for the given
/// `i, j, α, β`:
///
/// * `e^α * e^β − e^{α+β}`,
/// * `d_i(−1) * e^α − e^α * d_i(−1) − (d_i, α) e^α`,
/// * `d_i(−1) * d_j(−1) − d_j(−1) * d_i(−1)`,
///
/// each reduced modulo `O(V)`.
pub fn zhu_relations(cfg: &LatticeConfig, i: usize, j: usize, alpha: &Charge, beta: &Charge) -> [ZhuNormalForm; 3] {
    let (ea, eb) = (VElement::exp(alpha.clone()), VElement::exp(beta.clone()));
    let di = VElement::mode(cfg.nu, cfg.d_dir(i), 1);
    let dj = VElement::mode(cfg.nu, cfg.d_dir(j), 1);
    let first = zhu_star(cfg, &ea, &eb).sub(&VElement::exp(alpha.add(beta)));
    let second = zhu_star(cfg, &di, &ea).sub(&zhu_star(cfg, &ea, &di)).sub(&ea.scale(&q(cfg.k * alpha.0[i])));
    let third = zhu_star(cfg, &di, &dj).sub(&zhu_star(cfg, &dj, &di));
    [zhu_reduce(cfg, &first), zhu_reduce(cfg, &second), zhu_reduce(cfg, &third)]
}

/// `o(v) p` for `v = Σ c · (Fock-homogeneous part)`, where `o(u) = u_{wt u − 1}`
/// acts on `V_0 = span{e^β}`, identified with Laurent polynomials via
/// `e^β ↔ t^β`.
pub fn o_action_on_v0(cfg: &LatticeConfig, v: &VElement, p: &LaurentPoly) -> Result<LaurentPoly> {
    if p.nvars() != cfg.nu {
        return Err(Error::RankMismatch { expected: cfg.nu, got: p.nvars() });
    }
    let ctx = Adjoint::adjoint(*cfg);
    let mut out = LaurentPoly::zero(cfg.nu, cfg.nu);
    for (wt, part) in v.homogeneous_parts() {
        for (exps, c) in p.terms() {
            let image = ctx.y_coefficient(&part, wt as i64 - 1, &VElement::exp(Charge(exps.clone())));
            for (mono, beta, c2) in image.iter() {
                assert!(mono.is_vacuum(), "o(v) preserves the weight-zero space");
                out = out.add(&LaurentPoly::monomial(cfg.nu, cfg.nu, beta.0.clone(), c2 * c)?);
            }
        }
    }
    Ok(out)
}

/// Every exponent vector in `[−r, r]^ν`.
pub fn v0_probe_monomials(nu: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..nu {
        out = out.into_iter().flat_map(|e| (-r..=r).map(move |x| [e.clone(), vec![x]].concat())).collect();
    }
    out
}

/// True when `o(v)` is nonzero on some probe monomial.
pub fn o_action_is_nonzero(cfg: &LatticeConfig, v: &VElement, probes: &[Vec<i64>]) -> Result<bool> {
    for e in probes {
        let p = LaurentPoly::monomial(cfg.nu, cfg.nu, e.clone(), Rational::from_integer(1.into()))?;
        if !o_action_on_v0(cfg, v, &p)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockMonomial;

    fn cfg(nu: usize, k: i64) -> LatticeConfig {
        LatticeConfig::new(nu, k).unwrap()
    }

    #[test]
    fn star_examples() {
        let c = cfg(2, 1);
        let (a, b) = (Charge(vec![1, 0]), Charge(vec![0, -1]));
        let (ea, eb) = (VElement::exp(a.clone()), VElement::exp(b.clone()));
        assert_eq!(zhu_star(&c, &ea, &eb), VElement::exp(a.add(&b)));
        let v = VElement::basis(FockMonomial::from_pairs(&[(3, 2)]), b.clone());
        assert_eq!(zhu_star(&c, &VElement::vacuum(2), &v), v);

        let d1 = VElement::mode(2, c.d_dir(0), 1);
        let expected = VElement::basis(FockMonomial::from_pairs(&[(c.d_dir(0), 1)]), a.clone()).add(&ea);
        assert_eq!(zhu_star(&c, &d1, &ea), expected);
    }

    #[test]
    fn circ_examples() {
        let c = cfg(2, 1);
        let (a, b) = (Charge(vec![1, 0]), Charge(vec![1, 1]));
        let got = zhu_circ(&c, &VElement::exp(a.clone()), &VElement::exp(b.clone()));
        let expected = VElement::basis(FockMonomial::from_pairs(&[(c.c_dir(0), 1)]), a.add(&b));
        assert_eq!(got, expected);
        let v = VElement::mode(2, 3, 1);
        assert!(zhu_circ(&c, &VElement::vacuum(2), &v).is_zero());
        let u = VElement::mode(2, c.d_dir(1), 2);
        assert!(zhu_reduce(&c, &zhu_generalized(&c, &u, &VElement::exp(a), 1)).is_zero());
    }

    #[test]
    fn reduce_examples() {
        let c = cfg(2, 1);
        let alpha = Charge(vec![0, 1]);
        let v = VElement::basis(FockMonomial::from_pairs(&[(c.d_dir(0), 2)]), alpha.clone());
        let mut expected = ZhuNormalForm::default();
        expected.add_term(vec![1, 0], alpha.clone(), q(-1));
        assert_eq!(zhu_reduce(&c, &v), expected);
        let cd = VElement::basis(FockMonomial::from_pairs(&[(0, 1), (2, 1)]), Charge::zero(2));
        assert!(zhu_reduce(&c, &cd).is_zero());
        let mut plain = ZhuNormalForm::default();
        plain.add_term(vec![0, 0], alpha.clone(), q(1));
        assert_eq!(zhu_reduce(&c, &VElement::exp(alpha)), plain);
    }

    #[test]
    fn relations_hold() {
        for k in [1, 2] {
            let c = cfg(2, k);
            for (alpha, beta) in [(Charge(vec![1, 0]), Charge(vec![0, 1])), (Charge(vec![-1, 2]), Charge(vec![1, -1]))]
            {
                for i in 0..2 {
                    for j in 0..2 {
                        for r in zhu_relations(&c, i, j, &alpha, &beta) {
                            assert!(r.is_zero(), "{r}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn embedding_is_multiplicative_on_generators() {
        let c = cfg(2, 1);
        let e = |a: Vec<i64>| AElement::basis(vec![0, 0], Charge(a));
        let d = |j: usize| {
            let mut dexp = vec![0, 0];
            dexp[j] = 1;
            AElement::basis(dexp, Charge::zero(2))
        };
        let pairs = vec![(e(vec![1, 0]), e(vec![0, 1])), (d(0), e(vec![1, 0])), (e(vec![1, 0]), d(0)), (d(0), d(1))];
        zhu_iso_check(&c, &pairs).unwrap();

        let commutator = zhu_star(&c, &zhu_embed(&c, &d(0)), &zhu_embed(&c, &e(vec![1, 0]))).sub(&zhu_star(
            &c,
            &zhu_embed(&c, &e(vec![1, 0])),
            &zhu_embed(&c, &d(0)),
        ));
        let mut expected = ZhuNormalForm::default();
        expected.add_term(vec![0, 0], Charge(vec![1, 0]), q(1));
        assert_eq!(zhu_reduce(&c, &commutator), expected);
    }

    #[test]
    fn zero_mode_action() {
        let c = cfg(2, 1);
        let p = LaurentPoly::monomial(2, 2, vec![3, 1], q(1)).unwrap();
        let d1 = VElement::mode(2, c.d_dir(0), 1);
        assert_eq!(o_action_on_v0(&c, &d1, &p).unwrap(), p.scale(&q(3)));
        let e1 = VElement::exp(Charge(vec![1, 0]));
        assert_eq!(o_action_on_v0(&c, &e1, &p).unwrap(), p.mul(&LaurentPoly::var(2, 2, 0)));
        assert_eq!(o_action_on_v0(&c, &VElement::vacuum(2), &p).unwrap(), p);
    }

    #[test]
    fn injectivity_probe_small() {
        let c = cfg(1, 1);
        let probes = v0_probe_monomials(1, 3);
        // d(−1)^2 − d(−1): o acts as D(D − 1), nonzero away from t^0, t^1
        let v = zhu_embed(&c, &AElement::basis(vec![2], Charge(vec![0])))
            .sub(&zhu_embed(&c, &AElement::basis(vec![1], Charge(vec![0]))));
        assert!(o_action_is_nonzero(&c, &v, &probes).unwrap());
    }
}
