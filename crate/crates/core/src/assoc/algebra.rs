//! Words in the generators `e_α`, `d_j` and their straightening to normal
//! form, using
//!
//! * `e_0 = 1`, `e_α e_β = e_{α+β}`,
//! * `d_j e_α = e_α d_j + (d_j, α) e_α`,
//! * in `A` only: `d_i d_j = d_j d_i`.
//!
//! Normal words have at most one (nonzero) `e`-factor, on the left.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::lattice::{Charge, LatticeConfig};
use crate::rational::{q, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    E(Charge),
    /// `d_j`, zero-based.
    D(usize),
}

pub type Word = Vec<Gen>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    B,
    A,
}

/// A finite linear combination of (not necessarily normal) words.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BElement {
    terms: BTreeMap<Word, Rational>,
}

impl BElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(word: Word) -> Self {
        Self::term(word, Rational::one())
    }

    pub fn term(word: Word, c: Rational) -> Self {
        let mut x = Self::zero();
        x.add_term(word, c);
        x
    }

    pub fn e(alpha: Charge) -> Self {
        Self::word(vec![Gen::E(alpha)])
    }

    pub fn d(j: usize) -> Self {
        Self::word(vec![Gen::D(j)])
    }

    pub fn add_term(&mut self, word: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(word.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &BElement) -> BElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BElement) -> BElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> BElement {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * s);
        }
        out
    }

    /// Concatenation product `self · other`.
    pub fn mul(&self, other: &BElement) -> BElement {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    /// Total number of generator occurrences, the size measure for probes.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }
}

impl fmt::Display for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let body: Vec<String> = w
                    .iter()
                    .map(|g| match g {
                        Gen::E(a) => format!("e{a}"),
                        Gen::D(j) => format!("d{}", j + 1),
                    })
                    .collect();
                if body.is_empty() {
                    format!("{c}")
                } else {
                    format!("({c}){}", body.join("·"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A reducible position in a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Redex {
    /// `e_0` at this position.
    Unit(usize),
    /// `e_α e_β` starting at this position.
    Merge(usize),
    /// `d_j e_α` starting at this position.
    Straighten(usize),
    /// `d_i d_j` with `i > j` (only in `A`).
    Swap(usize),
}

pub fn redexes(word: &[Gen], target: Target) -> Vec<Redex> {
    let mut out = Vec::new();
    for (i, g) in word.iter().enumerate() {
        if let Gen::E(a) = g {
            if a.is_zero() {
                out.push(Redex::Unit(i));
            }
        }
        if let Some(next) = word.get(i + 1) {
            match (g, next) {
                (Gen::E(_), Gen::E(_)) => out.push(Redex::Merge(i)),
                (Gen::D(_), Gen::E(_)) => out.push(Redex::Straighten(i)),
                (Gen::D(a), Gen::D(b)) if target == Target::A && a > b => out.push(Redex::Swap(i)),
                _ => {}
            }
        }
    }
    out
}

/// One rewriting step at `redex`.
pub fn rewrite_at(cfg: &LatticeConfig, word: &[Gen], redex: Redex) -> Vec<(Word, Rational)> {
    let splice = |at: usize, width: usize, middle: Vec<Gen>| -> Word {
        let mut w = word[..at].to_vec();
        w.extend(middle);
        w.extend_from_slice(&word[at + width..]);
        w
    };
    match redex {
        Redex::Unit(i) => vec![(splice(i, 1, vec![]), Rational::one())],
        Redex::Merge(i) => {
            let (Gen::E(a), Gen::E(b)) = (&word[i], &word[i + 1]) else { unreachable!("merge redex") };
            vec![(splice(i, 2, vec![Gen::E(a.add(b))]), Rational::one())]
        }
        Redex::Straighten(i) => {
            let (Gen::D(j), Gen::E(a)) = (&word[i], &word[i + 1]) else { unreachable!("straighten redex") };
            let pairing = q(cfg.k * a.0[*j]);
            let mut out = vec![(splice(i, 2, vec![Gen::E(a.clone()), Gen::D(*j)]), Rational::one())];
            if !pairing.is_zero() {
                out.push((splice(i, 2, vec![Gen::E(a.clone())]), pairing));
            }
            out
        }
        Redex::Swap(i) => vec![(splice(i, 2, vec![word[i + 1].clone(), word[i].clone()]), Rational::one())],
    }
}

/// Rewrites until no redex remains; `pick` chooses which redex to fire.
pub fn rewrite_to_normal(
    cfg: &LatticeConfig,
    x: &BElement,
    target: Target,
    mut pick: impl FnMut(&[Redex]) -> usize,
) -> BElement {
    let mut pending: Vec<(Word, Rational)> = x.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    let mut done = BElement::zero();
    while let Some((word, c)) = pending.pop() {
        let rs = redexes(&word, target);
        if rs.is_empty() {
            done.add_term(word, c);
            continue;
        }
        let chosen = rs[pick(&rs).min(rs.len() - 1)];
        for (w, c2) in rewrite_at(cfg, &word, chosen) {
            pending.push((w, c2 * &c));
        }
    }
    done
}

fn split_normal_word(word: &[Gen]) -> (Option<Charge>, Vec<usize>) {
    let mut charge = None;
    let mut ds = Vec::new();
    for g in word {
        match g {
            Gen::E(a) => charge = Some(a.clone()),
            Gen::D(j) => ds.push(*j),
        }
    }
    (charge, ds)
}

/// Normal form in `B`: `Σ c · e_α d_{j_1}···d_{j_r}` with ordered `d`-words.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BNormal {
    pub terms: BTreeMap<(Charge, Vec<usize>), Rational>,
}

impl BNormal {
    pub fn to_belement(&self) -> BElement {
        let mut out = BElement::zero();
        for ((alpha, ds), c) in &self.terms {
            let mut w = Vec::new();
            if !alpha.is_zero() {
                w.push(Gen::E(alpha.clone()));
            }
            w.extend(ds.iter().map(|&j| Gen::D(j)));
            out.add_term(w, c.clone());
        }
        out
    }
}

/// Normal form in `A`: `Σ c · e_α d_1^{k_1}···d_ν^{k_ν}`, keyed by
/// `(d-exponents, α)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct AElement {
    pub terms: BTreeMap<(Vec<u32>, Charge), Rational>,
}

impl AElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(dexp: Vec<u32>, alpha: Charge) -> Self {
        Self::term(dexp, alpha, Rational::one())
    }

    pub fn term(dexp: Vec<u32>, alpha: Charge, c: Rational) -> Self {
        let mut x = Self::zero();
        x.add_term(dexp, alpha, c);
        x
    }

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

    pub fn to_belement(&self) -> BElement {
        let mut out = BElement::zero();
        for ((dexp, alpha), c) in &self.terms {
            let mut w = Vec::new();
            if !alpha.is_zero() {
                w.push(Gen::E(alpha.clone()));
            }
            for (j, &n) in dexp.iter().enumerate() {
                w.extend(std::iter::repeat_n(Gen::D(j), n as usize));
            }
            out.add_term(w, c.clone());
        }
        out
    }

    pub fn mul(&self, cfg: &LatticeConfig, other: &AElement) -> AElement {
        a_normal_form(cfg, &self.to_belement().mul(&other.to_belement()))
    }

    pub fn add(&self, other: &AElement) -> AElement {
        let mut out = self.clone();
        for ((d, a), c) in &other.terms {
            out.add_term(d.clone(), a.clone(), c.clone());
        }
        out
    }
}

pub fn b_normal_form(cfg: &LatticeConfig, x: &BElement) -> BNormal {
    let normal = rewrite_to_normal(cfg, x, Target::B, |_| 0);
    let mut out = BNormal::default();
    for (w, c) in normal.terms() {
        let (charge, ds) = split_normal_word(w);
        let key = (charge.unwrap_or_else(|| Charge::zero(cfg.nu)), ds);
        *out.terms.entry(key).or_insert_with(Rational::zero) += c;
    }
    out.terms.retain(|_, c| !c.is_zero());
    out
}

pub fn a_normal_form(cfg: &LatticeConfig, x: &BElement) -> AElement {
    let normal = rewrite_to_normal(cfg, x, Target::A, |_| 0);
    let mut out = AElement::zero();
    for (w, c) in normal.terms() {
        let (charge, ds) = split_normal_word(w);
        let mut dexp = vec![0u32; cfg.nu];
        for j in ds {
            dexp[j] += 1;
        }
        out.add_term(dexp, charge.unwrap_or_else(|| Charge::zero(cfg.nu)), c.clone());
    }
    out
}
