//! The algebras `B` and `A`, weight modules `C[L_C + λ]`, the modules
//! `M_ω`, and the classification algorithms for `M_ω`.

mod algebra;
mod classify;
mod omega;
mod weight;

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_traits::Zero;

pub use algebra::{
    a_normal_form, b_normal_form, redexes, rewrite_at, rewrite_to_normal, AElement, BElement, BNormal, Gen, Redex,
    Target, Word,
};
pub use classify::{
    brute_force_isomorphic, decompose_potential, is_a_module_spec, iso_decide, simplicity_witness, AModuleVerdict,
    Isomorphism, Potential, Witness,
};
pub use omega::{act_on_omega_module, OmegaModule, OmegaSpec};
pub use weight::{act_on_weight_module, WeightModule};

use crate::lattice::{Charge, LatticeConfig};
use crate::rational::Rational;

/// A `B`-module presented by the action of the generators `e_α` and `d_j`
/// on a basis. Modules used to build `V_{λ,W}` must be `A`-modules, i.e.
/// the `d_j` must commute.
pub trait BModule {
    type Basis: Ord + Clone + Debug + Hash;

    fn cfg(&self) -> &LatticeConfig;

    fn act_e(&self, alpha: &Charge, b: &Self::Basis) -> Vec<(Self::Basis, Rational)>;

    fn act_d(&self, j: usize, b: &Self::Basis) -> Vec<(Self::Basis, Rational)>;
}

/// A finite linear combination of module basis vectors.
pub type ModVec<B> = BTreeMap<B, Rational>;

pub(crate) fn modvec_add<B: Ord>(v: &mut ModVec<B>, b: B, c: Rational) {
    if !c.is_zero() {
        *v.entry(b).or_insert_with(Rational::zero) += c;
    }
}

pub(crate) fn modvec_clean<B: Ord>(mut v: ModVec<B>) -> ModVec<B> {
    v.retain(|_, c| !c.is_zero());
    v
}

/// Applies one generator.
pub fn act_gen<M: BModule>(module: &M, g: &Gen, v: &ModVec<M::Basis>) -> ModVec<M::Basis> {
    let mut out = ModVec::new();
    for (b, c) in v {
        let image = match g {
            Gen::E(alpha) => module.act_e(alpha, b),
            Gen::D(j) => module.act_d(*j, b),
        };
        for (b2, c2) in image {
            modvec_add(&mut out, b2, c2 * c);
        }
    }
    modvec_clean(out)
}

/// Applies a word; the rightmost generator acts first.
pub fn act_word<M: BModule>(module: &M, word: &[Gen], v: &ModVec<M::Basis>) -> ModVec<M::Basis> {
    word.iter().rev().fold(v.clone(), |acc, g| act_gen(module, g, &acc))
}

/// Applies a linear combination of words.
pub fn act<M: BModule>(module: &M, x: &BElement, v: &ModVec<M::Basis>) -> ModVec<M::Basis> {
    let mut out = ModVec::new();
    for (word, c) in x.terms() {
        for (b, c2) in act_word(module, word, v) {
            modvec_add(&mut out, b, c2 * c);
        }
    }
    modvec_clean(out)
}
