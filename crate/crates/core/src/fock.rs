//! The Heisenberg Fock space `M(1)` and finite linear combinations of
//! `M(1) ⊗ X`, where `X` is the charge lattice `C[L_C]` (for `V`) or the
//! basis of an `A`-module `W` (for `V_{λ,W}`).

use std::cmp::Reverse;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::lattice::{Charge, LatticeConfig};
use crate::rational::{q, Rational};

/// One creation operator `h_dir(−mode)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub dir: usize,
    pub mode: u32,
}

/// A product `α_1(−n_1)···α_s(−n_s)` of basis-direction creation
/// operators, kept sorted by mode (descending) then direction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockMonomial(Vec<Factor>);

fn canonical_key(f: &Factor) -> (Reverse<u32>, usize) {
    (Reverse(f.mode), f.dir)
}

impl FockMonomial {
    pub fn vacuum() -> Self {
        FockMonomial(Vec::new())
    }

    /// Builds from unordered factors; panics on a zero mode.
    pub fn new(mut factors: Vec<Factor>) -> Self {
        assert!(factors.iter().all(|f| f.mode >= 1), "creation modes are positive");
        factors.sort_by_key(canonical_key);
        FockMonomial(factors)
    }

    pub fn from_pairs(pairs: &[(usize, u32)]) -> Self {
        Self::new(pairs.iter().map(|&(dir, mode)| Factor { dir, mode }).collect())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|f| f.mode).sum()
    }

    pub fn multiplicity(&self, factor: Factor) -> usize {
        self.0.iter().filter(|&&f| f == factor).count()
    }

    pub fn with(&self, factor: Factor) -> FockMonomial {
        let mut out = self.0.clone();
        let at = out.partition_point(|f| canonical_key(f) < canonical_key(&factor));
        out.insert(at, factor);
        FockMonomial(out)
    }

    pub fn without(&self, factor: Factor) -> Option<FockMonomial> {
        let at = self.0.iter().position(|&f| f == factor)?;
        let mut out = self.0.clone();
        out.remove(at);
        Some(FockMonomial(out))
    }

    /// Distinct factors with their multiplicities.
    pub fn distinct(&self) -> Vec<(Factor, usize)> {
        let mut out: Vec<(Factor, usize)> = Vec::new();
        for &f in &self.0 {
            match out.last_mut() {
                Some((g, n)) if *g == f => *n += 1,
                _ => out.push((f, 1)),
            }
        }
        out
    }

    pub fn has_c_factor(&self, cfg: &LatticeConfig) -> bool {
        self.0.iter().any(|f| cfg.is_c_dir(f.dir))
    }

    pub fn fmt_with(&self, cfg: &LatticeConfig) -> String {
        self.0
            .iter()
            .map(|f| {
                let (name, i) = if cfg.is_c_dir(f.dir) { ('c', f.dir) } else { ('d', f.dir - cfg.nu) };
                format!("{name}{}(-{})", i + 1, f.mode)
            })
            .collect::<Vec<_>>()
            .join("")
    }
}

/// Every Fock monomial over `dims` directions of exact weight `weight`.
pub fn monomials_of_weight(dims: usize, weight: u32) -> Vec<FockMonomial> {
    fn go(dims: usize, remaining: u32, max_key: Option<Factor>, acc: &mut Vec<Factor>, out: &mut Vec<FockMonomial>) {
        if remaining == 0 {
            out.push(FockMonomial::new(acc.clone()));
            return;
        }
        for mode in (1..=remaining).rev() {
            for dir in 0..dims {
                let f = Factor { dir, mode };
                // enumerate factors in non-decreasing canonical order to avoid repeats
                if let Some(prev) = max_key {
                    if canonical_key(&f) < canonical_key(&prev) {
                        continue;
                    }
                }
                acc.push(f);
                go(dims, remaining - mode, Some(f), acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(dims, weight, None, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// A finitely supported combination of `FockMonomial ⊗ B` with rational
/// coefficients and no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct State<B: Ord> {
    terms: BTreeMap<(FockMonomial, B), Rational>,
}

/// An element of `V = M(1) ⊗ C[L_C]`.
pub type VElement = State<Charge>;

impl<B: Ord> Default for State<B> {
    fn default() -> Self {
        State { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> State<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(mono: FockMonomial, b: B) -> Self {
        Self::term(mono, b, Rational::one())
    }

    pub fn term(mono: FockMonomial, b: B, c: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(mono, b, c);
        s
    }

    /// `1 ⊗ b`.
    pub fn vacuum_of(b: B) -> Self {
        Self::basis(FockMonomial::vacuum(), b)
    }

    pub fn add_term(&mut self, mono: FockMonomial, b: B, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((mono, b)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &State<B>, s: &Rational) {
        if s.is_zero() {
            return;
        }
        if s.is_one() {
            return self.add_assign(other);
        }
        for ((m, b), c) in &other.terms {
            self.add_term(m.clone(), b.clone(), c * s);
        }
    }

    pub fn add_assign(&mut self, other: &State<B>) {
        for ((m, b), c) in &other.terms {
            self.add_term(m.clone(), b.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &State<B>) -> State<B> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &State<B>) -> State<B> {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn scale(&self, s: &Rational) -> State<B> {
        let mut out = Self::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockMonomial, &B, &Rational)> {
        self.terms.iter().map(|((m, b), c)| (m, b, c))
    }

    pub fn coeff(&self, mono: &FockMonomial, b: &B) -> Rational {
        self.terms.get(&(mono.clone(), b.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest Fock weight among the terms (0 when empty).
    pub fn max_fock_weight(&self) -> u32 {
        self.terms.keys().map(|(m, _)| m.weight()).max().unwrap_or(0)
    }

    /// The common Fock weight, or `None` if the terms disagree (or the state is zero).
    pub fn fock_weight(&self) -> Option<u32> {
        let mut weights = self.terms.keys().map(|(m, _)| m.weight());
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    /// Splits into Fock-homogeneous components, keyed by weight.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, State<B>> {
        let mut out: BTreeMap<u32, State<B>> = BTreeMap::new();
        for ((m, b), c) in &self.terms {
            out.entry(m.weight()).or_default().add_term(m.clone(), b.clone(), c.clone());
        }
        out
    }

    /// Applies a linear map defined on basis terms.
    pub fn map_terms<C: Ord + Clone>(
        &self,
        mut f: impl FnMut(&FockMonomial, &B) -> Vec<(FockMonomial, C, Rational)>,
    ) -> State<C> {
        let mut out = State::zero();
        for ((m, b), c) in &self.terms {
            for (m2, b2, c2) in f(m, b) {
                out.add_term(m2, b2, c2 * c);
            }
        }
        out
    }

    /// Keeps only the Fock-vacuum part `1 ⊗ W`, as a map on `B`.
    pub fn vacuum_part(&self) -> BTreeMap<B, Rational> {
        self.terms.iter().filter(|((m, _), _)| m.is_vacuum()).map(|((_, b), c)| (b.clone(), c.clone())).collect()
    }
}

impl VElement {
    /// The vacuum vector `𝟏`.
    pub fn vacuum(nu: usize) -> Self {
        Self::vacuum_of(Charge::zero(nu))
    }

    /// `e^α`.
    pub fn exp(alpha: Charge) -> Self {
        Self::vacuum_of(alpha)
    }

    /// `h_dir(−mode) 𝟏`.
    pub fn mode(nu: usize, dir: usize, mode: u32) -> Self {
        Self::basis(FockMonomial::from_pairs(&[(dir, mode)]), Charge::zero(nu))
    }

    /// `L(0)` weight: Fock degree plus `½(α, α) = 0` for `α ∈ L_C`.
    pub fn weight(&self) -> Weight {
        match self.fock_weight() {
            Some(w) => Weight::Homogeneous(w),
            None if self.is_zero() => Weight::Homogeneous(0),
            None => Weight::Inhomogeneous,
        }
    }

    pub fn fmt_with(&self, cfg: &LatticeConfig) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.iter()
            .map(|(m, a, c)| {
                let charge = if a.is_zero() { "1".to_string() } else { format!("e^{a}") };
                let fock = m.fmt_with(cfg);
                if c == &q(1) {
                    format!("{fock}{charge}")
                } else {
                    format!("({c}){fock}{charge}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Homogeneous(u32),
    Inhomogeneous,
}

impl<B: Ord + Clone + fmt::Debug> fmt::Display for State<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(m, b, c)| format!("({c})·{m:?}⊗{b:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials_are_canonical() {
        let a = FockMonomial::from_pairs(&[(0, 1), (2, 3), (1, 1)]);
        let b = FockMonomial::from_pairs(&[(1, 1), (0, 1), (2, 3)]);
        assert_eq!(a, b);
        assert_eq!(a.weight(), 5);
        assert_eq!(a.with(Factor { dir: 0, mode: 2 }), FockMonomial::from_pairs(&[(0, 2), (0, 1), (2, 3), (1, 1)]));
        assert_eq!(a.without(Factor { dir: 2, mode: 3 }).unwrap(), FockMonomial::from_pairs(&[(0, 1), (1, 1)]));
        assert!(a.without(Factor { dir: 3, mode: 3 }).is_none());
    }

    #[test]
    fn weight_examples() {
        let cfg = LatticeConfig::new(2, 1).unwrap();
        assert_eq!(VElement::vacuum(2).weight(), Weight::Homogeneous(0));
        assert_eq!(VElement::exp(Charge(vec![1, 0])).weight(), Weight::Homogeneous(0));
        let v = VElement::basis(FockMonomial::from_pairs(&[(cfg.c_dir(0), 2), (cfg.d_dir(0), 1)]), Charge(vec![0, 1]));
        assert_eq!(v.weight(), Weight::Homogeneous(3));
        let mixed = v.add(&VElement::vacuum(2));
        assert_eq!(mixed.weight(), Weight::Inhomogeneous);
    }

    #[test]
    fn weight_space_sizes() {
        // colored partitions: Π (1 - q^n)^{-dims}
        assert_eq!(monomials_of_weight(1, 4).len(), 5);
        assert_eq!(monomials_of_weight(2, 3).len(), 10);
        assert_eq!(monomials_of_weight(4, 2).len(), 14);
        assert_eq!(monomials_of_weight(4, 0), vec![FockMonomial::vacuum()]);
    }
}
