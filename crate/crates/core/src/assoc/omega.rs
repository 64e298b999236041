//! The modules `M_ω = C[t_1^{±1},…,t_{μ−1}^{±1}, t_μ,…,t_ν] ω` for
//! `ω = ω(f_1,…,f_{μ−1} | a_μ,…,a_ν)`, with
//!
//! * `e_α · fω = [Π_{i<μ} t_i^{m_i} · Π_{i≥μ} (a_i e^{−∂_i})^{m_i} f] ω`,
//! * `d_j · fω = (t_j ∂_j f + f_j f) ω` for `j < μ`,
//! * `d_j · fω = t_j f ω` for `j ≥ μ`.
//!
//! Only `k = 1` is supported.

use num_traits::{One, Zero};

use super::{BElement, BModule, Gen, ModVec};
use crate::error::{Error, Result};
use crate::lattice::{Charge, LatticeConfig};
use crate::laurent::{Exponents, LaurentPoly};
use crate::rational::{pow, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaSpec {
    cfg: LatticeConfig,
    mu: usize,
    f: Vec<LaurentPoly>,
    a: Vec<Rational>,
}

/// `M_ω` viewed as a module over `B`; the spec carries everything needed.
pub type OmegaModule = OmegaSpec;

impl OmegaSpec {
    /// `mu` is 1-based, in `1..=ν+1`; `f` has `μ−1` entries and
    /// `a` has `ν−μ+1`.
    pub fn new(nu: usize, mu: usize, f: Vec<LaurentPoly>, a: Vec<Rational>) -> Result<Self> {
        let cfg = LatticeConfig::new(nu, 1)?;
        if mu == 0 || mu > nu + 1 {
            return Err(Error::InvalidOmegaSpec(format!("mu = {mu} outside 1..={}", nu + 1)));
        }
        if f.len() != mu - 1 {
            return Err(Error::InvalidOmegaSpec(format!("expected {} f-polynomials, got {}", mu - 1, f.len())));
        }
        if a.len() != nu + 1 - mu {
            return Err(Error::InvalidOmegaSpec(format!("expected {} a-values, got {}", nu + 1 - mu, a.len())));
        }
        if let Some(i) = a.iter().position(Zero::is_zero) {
            return Err(Error::InvalidOmegaSpec(format!("a_{} must be nonzero", mu + i)));
        }
        let laurent_vars = mu - 1;
        let mut normalized = Vec::with_capacity(f.len());
        for (j, fj) in f.into_iter().enumerate() {
            if fj.nvars() != nu {
                return Err(Error::InvalidOmegaSpec(format!(
                    "f_{} has {} variables, expected {nu}",
                    j + 1,
                    fj.nvars()
                )));
            }
            if (laurent_vars..nu).any(|v| fj.depends_on(v)) {
                return Err(Error::InvalidOmegaSpec(format!("f_{} may only involve t_1..t_{}", j + 1, laurent_vars)));
            }
            normalized.push(fj.with_laurent_vars(laurent_vars)?);
        }
        Ok(OmegaSpec { cfg, mu, f: normalized, a })
    }

    pub fn nu(&self) -> usize {
        self.cfg.nu
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    /// Number of Laurent variables, `μ − 1`.
    pub fn laurent_vars(&self) -> usize {
        self.mu - 1
    }

    pub fn f(&self) -> &[LaurentPoly] {
        &self.f
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    /// `a_j` for a polynomial variable `j ≥ μ − 1` (zero-based).
    pub fn a_of(&self, j: usize) -> &Rational {
        &self.a[j - self.laurent_vars()]
    }

    pub fn zero_poly(&self) -> LaurentPoly {
        LaurentPoly::zero(self.nu(), self.laurent_vars())
    }

    pub fn one_poly(&self) -> LaurentPoly {
        LaurentPoly::one(self.nu(), self.laurent_vars())
    }

    /// Brings `f` into this module's variable layout, rejecting cutoff violations.
    pub fn element(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        if f.nvars() != self.nu() {
            return Err(Error::RankMismatch { expected: self.nu(), got: f.nvars() });
        }
        f.with_laurent_vars(self.laurent_vars())
    }

    pub fn e_action(&self, alpha: &Charge, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.cfg.check_charge(alpha)?;
        let lv = self.laurent_vars();
        let mut mono = vec![0i64; self.nu()];
        mono[..lv].copy_from_slice(&alpha.0[..lv]);
        let mut g = f.mul_monomial(&mono)?;
        for j in lv..self.nu() {
            let m = alpha.0[j];
            if m != 0 {
                g = g.shift(j, m)?.scale(&pow(self.a_of(j), m));
            }
        }
        Ok(g)
    }

    pub fn d_action(&self, j: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
        if j >= self.nu() {
            return Err(Error::VariableOutOfRange { var: j + 1, nvars: self.nu() });
        }
        if j < self.laurent_vars() {
            Ok(f.degree_derivation(j).add(&self.f[j].mul(f)))
        } else {
            let mut mono = vec![0i64; self.nu()];
            mono[j] = 1;
            f.mul_monomial(&mono)
        }
    }

    pub fn gen_action(&self, g: &Gen, f: &LaurentPoly) -> Result<LaurentPoly> {
        match g {
            Gen::E(alpha) => self.e_action(alpha, f),
            Gen::D(j) => self.d_action(*j, f),
        }
    }

    /// `mult(p)`: multiplication by a Laurent polynomial in the first `μ−1`
    /// variables, written as a combination of `e_α`.
    pub fn multiplication_element(&self, p: &LaurentPoly) -> Result<BElement> {
        let lv = self.laurent_vars();
        let mut out = BElement::zero();
        for (exps, c) in p.terms() {
            if exps[lv..].iter().any(|&x| x != 0) {
                return Err(Error::InvalidOmegaSpec("multiplier involves a polynomial variable".into()));
            }
            let charge = Charge(exps.clone());
            let word = if charge.is_zero() { Vec::new() } else { vec![Gen::E(charge)] };
            out.add_term(word, c.clone());
        }
        Ok(out)
    }

    pub fn to_modvec(f: &LaurentPoly) -> ModVec<Exponents> {
        f.terms().map(|(e, c)| (e.clone(), c.clone())).collect()
    }

    pub fn from_modvec(&self, v: &ModVec<Exponents>) -> Result<LaurentPoly> {
        LaurentPoly::from_terms(self.nu(), self.laurent_vars(), v.iter().map(|(e, c)| (e.clone(), c.clone())))
    }
}

impl BModule for OmegaSpec {
    type Basis = Exponents;

    fn cfg(&self) -> &LatticeConfig {
        &self.cfg
    }

    fn act_e(&self, alpha: &Charge, b: &Exponents) -> Vec<(Exponents, Rational)> {
        let mono = LaurentPoly::monomial(self.nu(), self.laurent_vars(), b.clone(), Rational::one())
            .expect("module basis monomial respects the cutoff");
        self.e_action(alpha, &mono)
            .expect("e-action on a valid monomial")
            .terms()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect()
    }

    fn act_d(&self, j: usize, b: &Exponents) -> Vec<(Exponents, Rational)> {
        let mono = LaurentPoly::monomial(self.nu(), self.laurent_vars(), b.clone(), Rational::one())
            .expect("module basis monomial respects the cutoff");
        self.d_action(j, &mono)
            .expect("d-action on a valid monomial")
            .terms()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect()
    }
}

/// `x · m` on `M_ω`, applying each word right to left.
pub fn act_on_omega_module(x: &BElement, m: &LaurentPoly, spec: &OmegaSpec) -> Result<LaurentPoly> {
    let m = spec.element(m)?;
    let mut out = spec.zero_poly();
    for (word, c) in x.terms() {
        let mut g = m.clone();
        for gen in word.iter().rev() {
            g = spec.gen_action(gen, &g)?;
        }
        out = out.add(&g.scale(c));
    }
    Ok(out)
}
