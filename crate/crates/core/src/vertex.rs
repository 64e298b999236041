//! Vertex operators `Y(v, z)` on `V` and `Y_{λ,W}(v, z)` on `V_{λ,W}`.
//!
//! For a basis vector `u = α_1(−n_1)···α_s(−n_s) e^α` the operator is the
//! normal-ordered product
//!
//! ```text
//! :∂^{(n_1−1)}α_1(z) ··· ∂^{(n_s−1)}α_s(z) · E^−(−α,z) E^+(−α,z) e^α z^α:
//! ```
//!
//! with every `α_i(m)`, `m < 0`, to the left and every `α_i(m)`, `m ≥ 0`
//! (including the zero mode) to the right. Coefficients of `Y(u,z)w` are
//! extracted by pushing `w` through the annihilating half first: that half
//! yields a finite Laurent polynomial in `z`, and the creating half only
//! raises powers of `z`, so a requested coefficient needs finitely many
//! terms.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::assoc::{BModule, WeightModule};
use crate::error::Result;
use crate::fock::{Factor, FockMonomial, State, VElement};
use crate::lattice::{Charge, LatticeConfig, LatticeVector};
use crate::rational::{binomial, frac, q, Rational};

/// A truncated formal Laurent series in `z` with state coefficients,
/// keyed by the exponent of `z`.
pub type Series<B> = BTreeMap<i64, State<B>>;

fn series_add<B: Ord + Clone>(series: &mut Series<B>, exp: i64, state: &State<B>, scale: &Rational) {
    if state.is_zero() || scale.is_zero() {
        return;
    }
    let slot = series.entry(exp).or_default();
    slot.add_scaled(state, scale);
    if slot.is_zero() {
        series.remove(&exp);
    }
}

fn merge_series<B: Ord + Clone>(into: &mut Series<B>, from: Series<B>) {
    for (exp, state) in from {
        series_add(into, exp, &state, &Rational::one());
    }
}

/// Where vertex operators act: on `V` itself, or on `V_{λ,W} = M(1) ⊗ W`.
#[derive(Debug, Clone)]
pub struct OperatorContext<W: BModule> {
    cfg: LatticeConfig,
    module: W,
    lambda: LatticeVector,
    /// `(c_i, λ)`, the exponents realizing `z^α ↦ z^{(α,λ)}`.
    z_shift: Vec<i64>,
    adjoint: bool,
}

/// The adjoint context: `V` acting on itself.
pub type Adjoint = OperatorContext<WeightModule>;

impl Adjoint {
    pub fn adjoint(cfg: LatticeConfig) -> Self {
        let lambda = cfg.zero();
        let z_shift = cfg.lc_pairings(&lambda).expect("zero vector pairs integrally");
        // (L_C, L_C) = 0, so z^α is the identity on V.
        assert!(z_shift.iter().all(|&s| s == 0));
        OperatorContext { cfg, module: WeightModule::lattice(cfg), lambda, z_shift, adjoint: true }
    }
}

impl<W: BModule> OperatorContext<W> {
    /// The module context for `V_{λ,W}`; `λ` must lie in `(1/k) L_D`.
    pub fn module(cfg: LatticeConfig, lambda: LatticeVector, module: W) -> Result<Self> {
        cfg.check(&lambda)?;
        if lambda.c.iter().any(|x| !x.is_zero()) {
            return Err(crate::Error::InvalidConfig("λ must lie in (1/k)L_D (zero c-coordinates)".into()));
        }
        let z_shift = cfg.lc_pairings(&lambda)?;
        Ok(OperatorContext { cfg, module, lambda, z_shift, adjoint: false })
    }

    pub fn cfg(&self) -> &LatticeConfig {
        &self.cfg
    }

    pub fn module_ref(&self) -> &W {
        &self.module
    }

    pub fn lambda(&self) -> &LatticeVector {
        &self.lambda
    }

    pub fn is_adjoint(&self) -> bool {
        self.adjoint
    }

    /// The exponent of `z^α`, i.e. `(α, λ)`.
    pub fn z_power(&self, alpha: &Charge) -> i64 {
        alpha.0.iter().zip(&self.z_shift).map(|(m, s)| m * s).sum()
    }

    /// `h_dir(n)` on a single basis term.
    fn dir_mode_term(
        &self,
        dir: usize,
        n: i64,
        mono: &FockMonomial,
        b: &W::Basis,
    ) -> Vec<(FockMonomial, W::Basis, Rational)> {
        let cfg = &self.cfg;
        if n < 0 {
            return vec![(mono.with(Factor { dir, mode: (-n) as u32 }), b.clone(), Rational::one())];
        }
        if n > 0 {
            let partner = (dir + cfg.nu) % cfg.dims();
            let target = Factor { dir: partner, mode: n as u32 };
            let mult = mono.multiplicity(target);
            if mult == 0 {
                return Vec::new();
            }
            let coeff = q(n * cfg.dir_pairing(dir, partner) * mult as i64);
            return vec![(mono.without(target).unwrap(), b.clone(), coeff)];
        }
        if cfg.is_c_dir(dir) {
            let s = self.z_shift[dir];
            if s == 0 {
                return Vec::new();
            }
            return vec![(mono.clone(), b.clone(), q(s))];
        }
        self.module.act_d(dir - cfg.nu, b).into_iter().map(|(b2, c)| (mono.clone(), b2, c)).collect()
    }

    /// `h_dir(n) s` for a basis direction.
    pub fn dir_mode(&self, dir: usize, n: i64, s: &State<W::Basis>) -> State<W::Basis> {
        s.map_terms(|m, b| self.dir_mode_term(dir, n, m, b))
    }

    /// `h(n) s` for an arbitrary `h ∈ h`; in a module the zero mode splits as
    /// `(h_C, λ) + 1 ⊗ h_D`.
    pub fn heisenberg(&self, h: &LatticeVector, n: i64, s: &State<W::Basis>) -> State<W::Basis> {
        let mut out = State::zero();
        for dir in 0..self.cfg.dims() {
            let coeff = h.coord(dir);
            if !coeff.is_zero() {
                out.add_scaled(&self.dir_mode(dir, n, s), coeff);
            }
        }
        out
    }

    /// `e^α` acting as `1 ⊗ e_α`.
    pub(crate) fn apply_exp(&self, alpha: &Charge, s: &State<W::Basis>) -> State<W::Basis> {
        s.map_terms(|m, b| self.module.act_e(alpha, b).into_iter().map(|(b2, c)| (m.clone(), b2, c)).collect())
    }

    /// `α(n)` for `α ∈ L_C`.
    pub(crate) fn charge_mode(&self, alpha: &Charge, n: i64, s: &State<W::Basis>) -> State<W::Basis> {
        let mut out = State::zero();
        for (i, &m) in alpha.0.iter().enumerate() {
            if m != 0 {
                out.add_scaled(&self.dir_mode(self.cfg.c_dir(i), n, s), &q(m));
            }
        }
        out
    }

    /// `u_n v` bound: `u_n w = 0` for every `n ≥ truncation_bound(u, w)`.
    pub fn truncation_bound(&self, u: &VElement, w: &State<W::Basis>) -> i64 {
        let wmax = w.max_fock_weight() as i64;
        u.iter().map(|(mono, alpha, _)| mono.weight() as i64 + wmax - self.z_power(alpha)).max().unwrap_or(i64::MIN)
    }

    /// All coefficients of `Y(u, z) w` at exponents `≤ max_exp`.
    pub fn y_series(&self, u: &VElement, w: &State<W::Basis>, max_exp: i64) -> Series<W::Basis> {
        let mut out: Series<W::Basis> = BTreeMap::new();
        if w.is_zero() {
            return out;
        }
        for (mono, alpha, coeff) in u.iter() {
            let part = self.basis_series(mono, alpha, w, max_exp);
            for (exp, state) in part {
                series_add(&mut out, exp, &state, coeff);
            }
        }
        out
    }

    fn basis_series(&self, mono: &FockMonomial, alpha: &Charge, w: &State<W::Basis>, max_exp: i64) -> Series<W::Basis> {
        // Each factor contributes either its annihilating or its creating
        // half; the key records which factors were deferred to creation.
        let factors = mono.factors();
        let mut groups: BTreeMap<u64, Series<W::Basis>> = BTreeMap::new();
        groups.insert(0, [(0, w.clone())].into());
        for (idx, f) in factors.iter().enumerate() {
            let width = f.mode as i64;
            let mut next_groups: BTreeMap<u64, Series<W::Basis>> = BTreeMap::new();
            for (mask, series) in groups {
                let mut annihilated: Series<W::Basis> = BTreeMap::new();
                for (&p, s) in &series {
                    let top = s.max_fock_weight() as i64;
                    for m in 0..=top {
                        let coeff = binomial(-m - 1, f.mode - 1);
                        let hs = self.dir_mode(f.dir, m, s);
                        series_add(&mut annihilated, p - m - width, &hs, &coeff);
                    }
                }
                if !annihilated.is_empty() {
                    merge_series(next_groups.entry(mask).or_default(), annihilated);
                }
                merge_series(next_groups.entry(mask | (1 << idx)).or_default(), series);
            }
            groups = next_groups;
        }

        let mut total: Series<W::Basis> = BTreeMap::new();
        for (mask, series) in groups {
            let deferred: Vec<&Factor> =
                factors.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, f)| f).collect();
            merge_series(&mut total, self.finish_series(series, alpha, &deferred, max_exp));
        }
        total
    }

    /// Applies `e^α z^α`, `E^+(−α,z)`, `E^−(−α,z)` and the deferred creating
    /// halves, keeping exponents `≤ max_exp`.
    fn finish_series(
        &self,
        series: Series<W::Basis>,
        alpha: &Charge,
        deferred: &[&Factor],
        max_exp: i64,
    ) -> Series<W::Basis> {
        let shift = self.z_power(alpha);
        let mut series: Series<W::Basis> = series
            .into_iter()
            .map(|(p, s)| (p + shift, self.apply_exp(alpha, &s)))
            .filter(|(_, s)| !s.is_zero())
            .collect();

        // E^+(−α, z) = exp(−Σ_{m>0} α(m) z^{−m} / m)
        // The modes commute, so the exponential factors as Π_m exp(−α(m) z^{−m}/m).
        if !alpha.is_zero() {
            let top = series.values().map(|s| s.max_fock_weight() as i64).max().unwrap_or(0);
            for m in 1..=top {
                series = self.exponentiate(&series, |s, out| {
                    let am = self.charge_mode(alpha, m, s.1);
                    series_add(out, s.0 - m, &am, &frac(-1, m));
                });
            }
        }

        // Creating operators only raise the z-power.
        series.retain(|&p, _| p <= max_exp);
        if series.is_empty() {
            return series;
        }

        // E^−(−α, z) = exp(Σ_{m>0} α(−m) z^m / m)
        if !alpha.is_zero() {
            let lowest = *series.keys().next().expect("nonempty");
            for m in 1..=(max_exp - lowest) {
                series = self.exponentiate(&series, |s, out| {
                    if s.0 + m <= max_exp {
                        let am = self.charge_mode(alpha, -m, s.1);
                        series_add(out, s.0 + m, &am, &frac(1, m));
                    }
                });
            }
        }

        // creating halves: Σ_{j ≥ n} C(j−1, n−1) α(−j) z^{j−n}
        for f in deferred {
            let width = f.mode as i64;
            let mut next: Series<W::Basis> = BTreeMap::new();
            for (&p, s) in &series {
                for j in width..=(max_exp - p + width) {
                    let coeff = binomial(j - 1, f.mode - 1);
                    let hs = self.dir_mode(f.dir, -j, s);
                    series_add(&mut next, p + j - width, &hs, &coeff);
                }
            }
            series = next;
        }
        series
    }

    /// `Σ_k X^k / k!` applied to a series, where `step` adds `X(z^p s)` to its
    /// output. Stops when a power of `X` vanishes.
    pub(crate) fn exponentiate(
        &self,
        series: &Series<W::Basis>,
        step: impl Fn((i64, &State<W::Basis>), &mut Series<W::Basis>),
    ) -> Series<W::Basis> {
        let mut total = series.clone();
        let mut term = series.clone();
        let mut order = 1i64;
        while !term.is_empty() {
            let mut next: Series<W::Basis> = BTreeMap::new();
            for (&p, s) in &term {
                step((p, s), &mut next);
            }
            let inv = frac(1, order);
            next = next.into_iter().map(|(p, s)| (p, s.scale(&inv))).collect();
            for (p, s) in &next {
                series_add(&mut total, *p, s, &Rational::one());
            }
            term = next;
            order += 1;
        }
        total
    }

    /// `u_n w`, the coefficient of `z^{−n−1}` in `Y(u, z) w`.
    pub fn y_coefficient(&self, u: &VElement, n: i64, w: &State<W::Basis>) -> State<W::Basis> {
        let exp = -n - 1;
        self.y_series(u, w, exp).remove(&exp).unwrap_or_default()
    }

    /// Every nonzero `u_n w` with `n ≥ n_min`, keyed by `n`.
    pub fn y_modes(&self, u: &VElement, w: &State<W::Basis>, n_min: i64) -> BTreeMap<i64, State<W::Basis>> {
        self.y_series(u, w, -n_min - 1).into_iter().map(|(p, s)| (-p - 1, s)).collect()
    }

    /// `L(n) s = ω_{n+1} s`.
    pub fn virasoro(&self, n: i64, s: &State<W::Basis>) -> State<W::Basis> {
        self.y_coefficient(&conformal_vector(&self.cfg), n + 1, s)
    }
}

/// `ω = (1/k) Σ_i c_i(−1) d_i(−1) 𝟏`, equal to `½ Σ β_r(−1)²` over an
/// orthonormal basis because the Gram matrix is hyperbolic.
pub fn conformal_vector(cfg: &LatticeConfig) -> VElement {
    let mut omega = VElement::zero();
    for i in 0..cfg.nu {
        omega.add_term(
            FockMonomial::from_pairs(&[(cfg.c_dir(i), 1), (cfg.d_dir(i), 1)]),
            Charge::zero(cfg.nu),
            frac(1, cfg.k),
        );
    }
    omega
}

/// `u_n v` in `V`.
pub fn nth_product(cfg: &LatticeConfig, u: &VElement, n: i64, v: &VElement) -> VElement {
    Adjoint::adjoint(*cfg).y_coefficient(u, n, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::Weight;

    fn cfg(nu: usize, k: i64) -> LatticeConfig {
        LatticeConfig::new(nu, k).unwrap()
    }

    fn mono(pairs: &[(usize, u32)], charge: &[i64]) -> VElement {
        VElement::basis(FockMonomial::from_pairs(pairs), Charge(charge.to_vec()))
    }

    #[test]
    fn heisenberg_examples() {
        let c = cfg(2, 1);
        let ad = Adjoint::adjoint(c);
        let vac = VElement::vacuum(2);
        assert!(ad.heisenberg(&c.c(0), 3, &vac).is_zero());
        let d1 = VElement::mode(2, c.d_dir(0), 1);
        assert_eq!(ad.heisenberg(&c.c(0), 1, &d1), vac);
        let e = VElement::exp(Charge(vec![1, 0]));
        assert_eq!(ad.heisenberg(&c.d(0), 0, &e), e);
        assert!(ad.heisenberg(&c.c(0), 0, &e).is_zero());
    }

    #[test]
    fn vacuum_field_is_identity() {
        let c = cfg(2, 1);
        let ad = Adjoint::adjoint(c);
        let w = mono(&[(0, 2), (3, 1)], &[1, -1]);
        let vac = VElement::vacuum(2);
        for n in -3..=3 {
            let expected = if n == -1 { w.clone() } else { VElement::zero() };
            assert_eq!(ad.y_coefficient(&vac, n, &w), expected);
        }
    }

    #[test]
    fn heisenberg_field_zero_mode_on_exponential() {
        for k in [1, 2, -1] {
            let c = cfg(2, k);
            let d1 = VElement::mode(2, c.d_dir(0), 1);
            let e = VElement::exp(Charge(vec![1, 0]));
            assert_eq!(nth_product(&c, &d1, 0, &e), e.scale(&q(k)));
        }
    }

    #[test]
    fn exponential_products() {
        let c = cfg(2, 1);
        let e1 = VElement::exp(Charge(vec![1, 0]));
        let e2 = VElement::exp(Charge(vec![0, 1]));
        assert_eq!(nth_product(&c, &e1, -1, &e2), VElement::exp(Charge(vec![1, 1])));
        assert_eq!(nth_product(&c, &e1, -2, &e2), mono(&[(c.c_dir(0), 1)], &[1, 1]));
        for m in 0..4 {
            assert!(nth_product(&c, &e1, m, &e2).is_zero());
        }
    }

    #[test]
    fn heisenberg_pairing_product() {
        for k in [1, 3] {
            let c = cfg(2, k);
            let c1 = VElement::mode(2, c.c_dir(0), 1);
            let d1 = VElement::mode(2, c.d_dir(0), 1);
            assert_eq!(nth_product(&c, &c1, 1, &d1), VElement::vacuum(2).scale(&q(k)));
            assert!(nth_product(&c, &c1, 2, &d1).is_zero());
            assert!(nth_product(&c, &c1, 0, &d1).is_zero());
        }
    }

    #[test]
    fn virasoro_on_vacuum() {
        for nu in 1..=3 {
            let c = cfg(nu, 2);
            let ad = Adjoint::adjoint(c);
            let vac = VElement::vacuum(nu);
            for n in -1..=3 {
                assert!(ad.virasoro(n, &vac).is_zero(), "L({n})1 ≠ 0");
            }
            let l2 = ad.virasoro(-2, &vac);
            assert_eq!(ad.virasoro(2, &l2), vac.scale(&q(nu as i64)));
        }
    }

    #[test]
    fn l0_is_the_weight() {
        let c = cfg(2, 1);
        let ad = Adjoint::adjoint(c);
        let v = mono(&[(c.c_dir(0), 2), (c.d_dir(0), 1)], &[0, 1]);
        let Weight::Homogeneous(w) = v.weight() else { panic!() };
        assert_eq!(w, 3);
        assert_eq!(ad.virasoro(0, &v), v.scale(&q(3)));
    }

    #[test]
    fn module_exponential_leading_power() {
        use crate::assoc::WeightModule;
        let c = cfg(1, 1);
        let ctx = OperatorContext::module(c, c.d(0), WeightModule::lattice(c)).unwrap();
        let w0 = State::vacuum_of(Charge(vec![0]));
        let e = VElement::exp(Charge(vec![1]));
        assert_eq!(ctx.y_coefficient(&e, -2, &w0), State::vacuum_of(Charge(vec![1])));
        assert!(ctx.y_coefficient(&e, -1, &w0).is_zero());
        assert_eq!(ctx.truncation_bound(&e, &w0), -1);
    }

    #[test]
    fn creation_axiom_samples() {
        let c = cfg(2, 1);
        let ad = Adjoint::adjoint(c);
        let vac = VElement::vacuum(2);
        let samples = [
            mono(&[(0, 1), (2, 2)], &[1, 0]),
            mono(&[(3, 3)], &[-1, 2]),
            mono(&[], &[0, -1]),
            mono(&[(1, 1), (1, 1), (2, 1)], &[0, 0]),
        ];
        for u in &samples {
            for n in 0..4 {
                assert!(ad.y_coefficient(u, n, &vac).is_zero());
            }
            assert_eq!(&ad.y_coefficient(u, -1, &vac), u);
        }
    }
}
