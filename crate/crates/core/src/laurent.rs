//! Sparse multivariate Laurent polynomials over `Q`.
//!
//! Variables `t_1..t_n` are indexed from zero internally. The first
//! `laurent_vars` variables may carry negative exponents; the rest are
//! polynomial variables and must keep exponents `≥ 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial, pow, q, Rational};

pub type Exponents = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    laurent_vars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize, laurent_vars: usize) -> Self {
        assert!(laurent_vars <= nvars, "cutoff beyond the number of variables");
        LaurentPoly { nvars, laurent_vars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, laurent_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars, laurent_vars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize, laurent_vars: usize) -> Self {
        Self::constant(nvars, laurent_vars, Rational::one())
    }

    /// `c · t^exps`, validated against the cutoff.
    pub fn monomial(nvars: usize, laurent_vars: usize, exps: Exponents, c: Rational) -> Result<Self> {
        let mut p = Self::zero(nvars, laurent_vars);
        p.check_exponents(&exps)?;
        p.add_term(exps, c);
        Ok(p)
    }

    /// The variable `t_{j+1}`.
    pub fn var(nvars: usize, laurent_vars: usize, j: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[j] = 1;
        let mut p = Self::zero(nvars, laurent_vars);
        p.add_term(exps, Rational::one());
        p
    }

    pub fn from_terms(
        nvars: usize,
        laurent_vars: usize,
        terms: impl IntoIterator<Item = (Exponents, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars, laurent_vars);
        for (exps, c) in terms {
            p.check_exponents(&exps)?;
            p.add_term(exps, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn laurent_vars(&self) -> usize {
        self.laurent_vars
    }

    /// Same terms, reinterpreted with a different cutoff.
    pub fn with_laurent_vars(&self, laurent_vars: usize) -> Result<Self> {
        let mut p = Self::zero(self.nvars, laurent_vars);
        for (e, c) in &self.terms {
            p.check_exponents(e)?;
            p.terms.insert(e.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value when the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn check_exponents(&self, exps: &[i64]) -> Result<()> {
        if exps.len() != self.nvars {
            return Err(Error::RankMismatch { expected: self.nvars, got: exps.len() });
        }
        match (self.laurent_vars..self.nvars).find(|&j| exps[j] < 0) {
            Some(var) => Err(Error::CutoffViolation { var: var + 1 }),
            None => Ok(()),
        }
    }

    fn check_var(&self, j: usize) -> Result<()> {
        if j >= self.nvars {
            return Err(Error::VariableOutOfRange { var: j + 1, nvars: self.nvars });
        }
        Ok(())
    }

    pub(crate) fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn compatible(&self, other: &LaurentPoly) {
        assert_eq!(self.nvars, other.nvars, "Laurent polynomials over different variable sets");
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        self.compatible(other);
        let mut out = self.clone();
        out.laurent_vars = self.laurent_vars.max(other.laurent_vars);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> LaurentPoly {
        let mut out = Self::zero(self.nvars, self.laurent_vars);
        if s.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect();
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        self.compatible(other);
        let mut out = Self::zero(self.nvars, self.laurent_vars.max(other.laurent_vars));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Multiplies by the monomial `t^exps`; fails if a polynomial variable
    /// would acquire a negative exponent.
    pub fn mul_monomial(&self, exps: &[i64]) -> Result<LaurentPoly> {
        let mut out = Self::zero(self.nvars, self.laurent_vars);
        for (e, c) in &self.terms {
            let shifted: Exponents = e.iter().zip(exps).map(|(a, b)| a + b).collect();
            out.check_exponents(&shifted)?;
            out.terms.insert(shifted, c.clone());
        }
        Ok(out)
    }

    /// Substitutes `t_j ↦ t_j − m` (the shift `e^{−m∂_j}`), for any integer `m`.
    pub fn shift(&self, j: usize, m: i64) -> Result<LaurentPoly> {
        self.check_var(j)?;
        if m == 0 {
            return Ok(self.clone());
        }
        let mut out = Self::zero(self.nvars, self.laurent_vars);
        let minus_m = q(-m);
        for (e, c) in &self.terms {
            let deg = e[j];
            if deg < 0 {
                return Err(Error::CutoffViolation { var: j + 1 });
            }
            // (t - m)^deg = Σ_r C(deg, r) t^r (-m)^(deg-r)
            for r in 0..=deg {
                let mut exps = e.clone();
                exps[j] = r;
                let coeff = c * binomial(deg, r as u32) * pow(&minus_m, deg - r);
                out.add_term(exps, coeff);
            }
        }
        Ok(out)
    }

    /// The degree derivation `D_j = t_j ∂/∂t_j`.
    pub fn degree_derivation(&self, j: usize) -> LaurentPoly {
        let mut out = Self::zero(self.nvars, self.laurent_vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * q(e[j]));
        }
        out
    }

    /// `∂/∂t_j`; fails if a polynomial variable would go negative
    /// (impossible for genuine polynomial variables, whose constant terms vanish).
    pub fn partial(&self, j: usize) -> Result<LaurentPoly> {
        self.check_var(j)?;
        let mut out = Self::zero(self.nvars, self.laurent_vars);
        for (e, c) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[j] -= 1;
            out.check_exponents(&exps)?;
            out.add_term(exps, c * q(e[j]));
        }
        Ok(out)
    }

    /// Largest exponent of `t_j`; `0` for the zero polynomial.
    pub fn deg_plus(&self, j: usize) -> i64 {
        self.terms.keys().map(|e| e[j]).max().unwrap_or(0)
    }

    /// Smallest exponent of `t_j`; `0` for the zero polynomial.
    pub fn deg_minus(&self, j: usize) -> i64 {
        self.terms.keys().map(|e| e[j]).min().unwrap_or(0)
    }

    pub fn depends_on(&self, j: usize) -> bool {
        self.terms.keys().any(|e| e[j] != 0)
    }

    /// Total degree over the polynomial variables only.
    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|e| e.iter().sum::<i64>()).max().unwrap_or(0)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (j, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, "·t{}", j + 1)?,
                    _ => write!(f, "·t{}^{}", j + 1, x)?,
                }
            }
        }
        Ok(())
    }
}
