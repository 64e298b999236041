//! Seeded random probes. All draws are uniform over small ranges:
//! nonzero numerators in `[−3, 3]`, denominators in `[1, 3]`, charges and
//! exponents in `[−r, r]`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assoc::{AElement, BElement, Gen};
use crate::fock::{Factor, FockMonomial, State, VElement};
use crate::lattice::{Charge, LatticeConfig};
use crate::laurent::LaurentPoly;
use crate::rational::{frac, Rational};

pub type ProbeRng = ChaCha8Rng;

pub fn rng(seed: u64) -> ProbeRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A derived generator, so that probe families do not shift each other.
pub fn sub_rng(seed: u64, family: &str) -> ProbeRng {
    let tag = family.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ tag)
}

pub fn rational(rng: &mut ProbeRng) -> Rational {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-3..=3);
    }
    frac(n, rng.gen_range(1..=3))
}

pub fn int_vector(rng: &mut ProbeRng, len: usize, r: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-r..=r)).collect()
}

pub fn charge(rng: &mut ProbeRng, nu: usize, r: i64) -> Charge {
    Charge(int_vector(rng, nu, r))
}

/// A monomial of Fock degree exactly `degree`, with random directions.
pub fn fock_monomial(rng: &mut ProbeRng, dims: usize, degree: u32) -> FockMonomial {
    let mut left = degree;
    let mut factors = Vec::new();
    while left > 0 {
        let mode = rng.gen_range(1..=left);
        factors.push(Factor { dir: rng.gen_range(0..dims), mode });
        left -= mode;
    }
    FockMonomial::new(factors)
}

/// Up to `terms` terms with Fock degree `≤ max_degree` and charges in `[−2, 2]`.
pub fn velement(rng: &mut ProbeRng, cfg: &LatticeConfig, terms: usize, max_degree: u32) -> VElement {
    let mut v = VElement::zero();
    while v.is_zero() {
        for _ in 0..rng.gen_range(1..=terms) {
            let deg = rng.gen_range(0..=max_degree);
            v.add_term(fock_monomial(rng, cfg.dims(), deg), charge(rng, cfg.nu, 2), rational(rng));
        }
    }
    v
}

/// Like [`velement`] but Fock-homogeneous of a random degree.
pub fn homogeneous_velement(rng: &mut ProbeRng, cfg: &LatticeConfig, terms: usize, max_degree: u32) -> VElement {
    let deg = rng.gen_range(0..=max_degree);
    let mut v = VElement::zero();
    while v.is_zero() {
        for _ in 0..rng.gen_range(1..=terms) {
            v.add_term(fock_monomial(rng, cfg.dims(), deg), charge(rng, cfg.nu, 2), rational(rng));
        }
    }
    v
}

/// A state of `M(1) ⊗ W` over the given basis labels.
pub fn module_state<B: Ord + Clone>(
    rng: &mut ProbeRng,
    dims: usize,
    basis: &[B],
    terms: usize,
    max_degree: u32,
) -> State<B> {
    let mut s = State::zero();
    while s.is_zero() {
        for _ in 0..rng.gen_range(1..=terms) {
            let deg = rng.gen_range(0..=max_degree);
            let b = basis.choose(rng).expect("nonempty basis").clone();
            s.add_term(fock_monomial(rng, dims, deg), b, rational(rng));
        }
    }
    s
}

/// A Laurent polynomial whose first `laurent_vars` exponents lie in `[−r, r]`
/// and the rest in `[0, r]`; only the variables listed in `support` occur.
pub fn laurent(
    rng: &mut ProbeRng,
    nvars: usize,
    laurent_vars: usize,
    support: &[usize],
    terms: usize,
    r: i64,
) -> LaurentPoly {
    let mut p = LaurentPoly::zero(nvars, laurent_vars);
    while p.is_zero() {
        for _ in 0..rng.gen_range(1..=terms) {
            let mut exps = vec![0i64; nvars];
            for &j in support {
                exps[j] = if j < laurent_vars { rng.gen_range(-r..=r) } else { rng.gen_range(0..=r) };
            }
            let term =
                LaurentPoly::monomial(nvars, laurent_vars, exps, rational(rng)).expect("exponents respect the cutoff");
            p = p.add(&term);
        }
    }
    p
}

/// A random word of the given length in `e_{α}` (`|α_i| ≤ 2`) and `d_j`.
pub fn word(rng: &mut ProbeRng, nu: usize, len: usize) -> BElement {
    let w = (0..len)
        .map(|_| if rng.gen_bool(0.5) { Gen::E(charge(rng, nu, 2)) } else { Gen::D(rng.gen_range(0..nu)) })
        .collect();
    BElement::term(w, rational(rng))
}

/// A random element of `A` with total `d`-degree `≤ max_d` and charges in `[−r, r]`.
pub fn aelement(rng: &mut ProbeRng, nu: usize, terms: usize, max_d: u32, r: i64) -> AElement {
    let mut a = AElement::zero();
    while a.is_zero() {
        for _ in 0..rng.gen_range(1..=terms) {
            let total = rng.gen_range(0..=max_d);
            let mut dexp = vec![0u32; nu];
            for _ in 0..total {
                dexp[rng.gen_range(0..nu)] += 1;
            }
            a.add_term(dexp, charge(rng, nu, r), rational(rng));
        }
    }
    a
}
