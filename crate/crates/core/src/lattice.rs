//! The rank-2ν lattice `L = L_C + L_D` with `(c_i, d_j) = k δ_ij` and
//! `(c_i, c_j) = (d_i, d_j) = 0`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{as_integer, q, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeConfig {
    pub nu: usize,
    pub k: i64,
}

impl LatticeConfig {
    pub fn new(nu: usize, k: i64) -> Result<Self> {
        if nu == 0 {
            return Err(Error::InvalidConfig("nu must be at least 1".into()));
        }
        if k == 0 {
            return Err(Error::InvalidConfig("k must be nonzero".into()));
        }
        Ok(LatticeConfig { nu, k })
    }

    /// Number of Heisenberg directions `c_1..c_ν, d_1..d_ν`.
    pub fn dims(&self) -> usize {
        2 * self.nu
    }

    pub fn c_dir(&self, i: usize) -> usize {
        i
    }

    pub fn d_dir(&self, i: usize) -> usize {
        self.nu + i
    }

    pub fn is_c_dir(&self, dir: usize) -> bool {
        dir < self.nu
    }

    /// Bilinear form on basis directions.
    pub fn dir_pairing(&self, a: usize, b: usize) -> i64 {
        if a.abs_diff(b) == self.nu {
            self.k
        } else {
            0
        }
    }

    pub fn zero(&self) -> LatticeVector {
        LatticeVector { c: vec![Rational::zero(); self.nu], d: vec![Rational::zero(); self.nu] }
    }

    /// Basis vector for a direction index (`c_i` for `i < ν`, `d_{i-ν}` otherwise).
    pub fn basis(&self, dir: usize) -> LatticeVector {
        let mut v = self.zero();
        if dir < self.nu {
            v.c[dir] = Rational::one();
        } else {
            v.d[dir - self.nu] = Rational::one();
        }
        v
    }

    pub fn c(&self, i: usize) -> LatticeVector {
        self.basis(self.c_dir(i))
    }

    pub fn d(&self, i: usize) -> LatticeVector {
        self.basis(self.d_dir(i))
    }

    pub fn pairing(&self, u: &LatticeVector, v: &LatticeVector) -> Result<Rational> {
        self.check(u)?;
        self.check(v)?;
        let k = q(self.k);
        let mut acc = Rational::zero();
        for i in 0..self.nu {
            acc += &u.c[i] * &v.d[i] + &u.d[i] * &v.c[i];
        }
        Ok(acc * k)
    }

    /// `(α, v)` for an integral `α ∈ L_C`.
    pub fn charge_pairing(&self, alpha: &Charge, v: &LatticeVector) -> Rational {
        let mut acc = Rational::zero();
        for (m, d) in alpha.0.iter().zip(&v.d) {
            acc += q(*m) * d;
        }
        acc * q(self.k)
    }

    pub fn check(&self, v: &LatticeVector) -> Result<()> {
        if v.c.len() != self.nu {
            return Err(Error::RankMismatch { expected: self.nu, got: v.c.len() });
        }
        if v.d.len() != self.nu {
            return Err(Error::RankMismatch { expected: self.nu, got: v.d.len() });
        }
        Ok(())
    }

    pub fn check_charge(&self, alpha: &Charge) -> Result<()> {
        if alpha.0.len() != self.nu {
            return Err(Error::RankMismatch { expected: self.nu, got: alpha.0.len() });
        }
        Ok(())
    }

    /// True when `(c_i, v) ∈ Z` for every `i`, i.e. `v` pairs integrally with `L_C`.
    pub fn pairs_integrally_with_lc(&self, v: &LatticeVector) -> bool {
        (0..self.nu).all(|i| (q(self.k) * &v.d[i]).is_integer())
    }

    /// True when `v ∈ (1/k) L_D`.
    pub fn in_dual_ld(&self, v: &LatticeVector) -> bool {
        v.c.iter().all(Zero::is_zero) && self.pairs_integrally_with_lc(v)
    }

    /// The integer exponents `(c_i, λ)` used for `z^α ↦ z^{(α,λ)}`.
    pub fn lc_pairings(&self, lambda: &LatticeVector) -> Result<Vec<i64>> {
        self.check(lambda)?;
        (0..self.nu)
            .map(|i| {
                let value = q(self.k) * &lambda.d[i];
                as_integer(&value)
                    .ok_or_else(|| Error::NonIntegralPairing { alpha: format!("c{}", i + 1), value: value.to_string() })
            })
            .collect()
    }
}

/// A rational vector `Σ c_i·c_i + Σ d_i·d_i` in `h = C ⊗ L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    pub c: Vec<Rational>,
    pub d: Vec<Rational>,
}

impl LatticeVector {
    pub fn from_ints(c: &[i64], d: &[i64]) -> Self {
        LatticeVector { c: c.iter().map(|&x| q(x)).collect(), d: d.iter().map(|&x| q(x)).collect() }
    }

    pub fn nu(&self) -> usize {
        self.c.len()
    }

    /// Coordinate along a direction index.
    pub fn coord(&self, dir: usize) -> &Rational {
        let nu = self.nu();
        if dir < nu {
            &self.c[dir]
        } else {
            &self.d[dir - nu]
        }
    }

    pub fn in_lc(&self) -> bool {
        self.d.iter().all(Zero::is_zero) && self.c.iter().all(|x| x.is_integer())
    }

    pub fn in_ld(&self) -> bool {
        self.c.iter().all(Zero::is_zero) && self.d.iter().all(|x| x.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().chain(&self.d).all(Zero::is_zero)
    }

    /// The `L_C` element with these c-coordinates, if integral and d-free.
    pub fn to_charge(&self) -> Option<Charge> {
        if !self.d.iter().all(Zero::is_zero) {
            return None;
        }
        self.c.iter().map(as_integer).collect::<Option<Vec<_>>>().map(Charge)
    }

    pub fn c_part(&self) -> LatticeVector {
        LatticeVector { c: self.c.clone(), d: vec![Rational::zero(); self.nu()] }
    }

    pub fn d_part(&self) -> LatticeVector {
        LatticeVector { c: vec![Rational::zero(); self.nu()], d: self.d.clone() }
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector {
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
            d: self.d.iter().zip(&other.d).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> LatticeVector {
        LatticeVector { c: self.c.iter().map(|a| a * s).collect(), d: self.d.iter().map(|a| a * s).collect() }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, coords) in [("c", &self.c), ("d", &self.d)] {
            for (i, x) in coords.iter().enumerate() {
                if !x.is_zero() {
                    parts.push(format!("{x}·{name}{}", i + 1));
                }
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// An element `Σ m_i c_i` of `L_C`, stored by its integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Charge(pub Vec<i64>);

impl Charge {
    pub fn zero(nu: usize) -> Self {
        Charge(vec![0; nu])
    }

    pub fn unit(nu: usize, i: usize, m: i64) -> Self {
        let mut v = vec![0; nu];
        v[i] = m;
        Charge(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn add(&self, other: &Charge) -> Charge {
        Charge(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Charge {
        Charge(self.0.iter().map(|a| -a).collect())
    }

    pub fn to_vector(&self) -> LatticeVector {
        LatticeVector::from_ints(&self.0, &vec![0; self.0.len()])
    }

    /// `Σ |m_i|`.
    pub fn norm1(&self) -> i64 {
        self.0.iter().map(|m| m.abs()).sum()
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", body.join(","))
    }
}
