use num_traits::Zero;

use super::{act, BElement, BModule, ModVec};
use crate::lattice::{Charge, LatticeConfig, LatticeVector};
use crate::rational::{q, Rational};

/// The weight module `C[L_C + λ]` for `λ ∈ h_C`. Basis vectors are the
/// offsets `α ∈ L_C` standing for `e^{λ+α}`; `e_β` adds `β` and `d_j` acts
/// by the scalar `(d_j, λ + α)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightModule {
    cfg: LatticeConfig,
    lambda: Vec<Rational>,
}

impl WeightModule {
    /// `lambda` holds the c-coordinates of `λ`.
    pub fn new(cfg: LatticeConfig, lambda: Vec<Rational>) -> crate::Result<Self> {
        if lambda.len() != cfg.nu {
            return Err(crate::Error::RankMismatch { expected: cfg.nu, got: lambda.len() });
        }
        Ok(WeightModule { cfg, lambda })
    }

    /// `C[L_C]` itself (`λ = 0`), the charge lattice of `V`.
    pub fn lattice(cfg: LatticeConfig) -> Self {
        WeightModule { cfg, lambda: vec![Rational::zero(); cfg.nu] }
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    /// The weight `λ + α` of a basis vector, as an element of `h_C`.
    pub fn weight_of(&self, alpha: &Charge) -> LatticeVector {
        LatticeVector {
            c: self.lambda.iter().zip(&alpha.0).map(|(l, a)| l + q(*a)).collect(),
            d: vec![Rational::zero(); self.cfg.nu],
        }
    }

    /// True when the span of `{e_α w}` is closed under every generator,
    /// checked on the generators `e_{±c_i}`, `d_i` applied to the offsets in
    /// `window`.
    pub fn cyclic_span_is_invariant(&self, w: &Charge, window: &[Charge]) -> bool {
        for alpha in window {
            let v: ModVec<Charge> = [(w.add(alpha), Rational::from_integer(1.into()))].into();
            for j in 0..self.cfg.nu {
                let d_image = act(self, &BElement::d(j), &v);
                if d_image.keys().any(|b| b != &w.add(alpha)) {
                    return false;
                }
                for sign in [1, -1] {
                    let e_image = act(self, &BElement::e(Charge::unit(self.cfg.nu, j, sign)), &v);
                    // every image is again of the form e_β w
                    if e_image.len() != 1 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl BModule for WeightModule {
    type Basis = Charge;

    fn cfg(&self) -> &LatticeConfig {
        &self.cfg
    }

    fn act_e(&self, alpha: &Charge, b: &Charge) -> Vec<(Charge, Rational)> {
        vec![(b.add(alpha), Rational::from_integer(1.into()))]
    }

    fn act_d(&self, j: usize, b: &Charge) -> Vec<(Charge, Rational)> {
        let value = q(self.cfg.k) * (&self.lambda[j] + q(b.0[j]));
        if value.is_zero() {
            Vec::new()
        } else {
            vec![(b.clone(), value)]
        }
    }
}

pub fn act_on_weight_module(x: &BElement, m: &ModVec<Charge>, module: &WeightModule) -> ModVec<Charge> {
    act(module, x, m)
}
