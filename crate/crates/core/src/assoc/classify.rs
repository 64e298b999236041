//! Classification algorithms for `M_ω`: the `A`-module criterion and its
//! potential decomposition, the isomorphism decision with its explicit
//! intertwiner, an independent brute-force intertwiner search, and
//! constructive simplicity witnesses.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::{act_on_omega_module, BElement, Gen, OmegaSpec};
use crate::error::Result;
use crate::lattice::Charge;
use crate::laurent::{Exponents, LaurentPoly};
use crate::linalg::{rank, SparseRow};
use crate::rational::{as_integer, q, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AModuleVerdict {
    pub is_a_module: bool,
    /// First pair `(i, j)` (zero-based) with `D_i f_j ≠ D_j f_i`.
    pub witness: Option<(usize, usize)>,
}

/// `M_ω` is an `A`-module iff `D_i f_j = D_j f_i` for all `i, j < μ`.
pub fn is_a_module_spec(spec: &OmegaSpec) -> AModuleVerdict {
    let f = spec.f();
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            if f[j].degree_derivation(i) != f[i].degree_derivation(j) {
                return AModuleVerdict { is_a_module: false, witness: Some((i, j)) };
            }
        }
    }
    AModuleVerdict { is_a_module: true, witness: None }
}

/// `f_j = D_j P + P_j(t_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential {
    pub p: LaurentPoly,
    pub parts: Vec<LaurentPoly>,
}

fn is_pure_in(exps: &[i64], i: usize) -> bool {
    exps.iter().enumerate().all(|(j, &x)| j == i || x == 0)
}

/// Splits each `f_i` into the monomials of `C[t_i^{±1}]` (which go to `P_i`)
/// and mixed monomials, whose coefficients divided by their `t_i`-exponent
/// build `P`. Returns `None` exactly when no such decomposition exists.
pub fn decompose_potential(spec: &OmegaSpec) -> Option<Potential> {
    let f = spec.f();
    let mut coeffs: BTreeMap<Exponents, Rational> = BTreeMap::new();
    for (i, fi) in f.iter().enumerate() {
        for (exps, c) in fi.terms() {
            if is_pure_in(exps, i) || exps[i] == 0 {
                continue;
            }
            coeffs.entry(exps.clone()).or_insert_with(|| c / q(exps[i]));
        }
    }
    let p = LaurentPoly::from_terms(spec.nu(), spec.laurent_vars(), coeffs).ok()?;
    let mut parts = Vec::with_capacity(f.len());
    for (j, fj) in f.iter().enumerate() {
        let rest = fj.sub(&p.degree_derivation(j));
        if rest.terms().any(|(e, _)| !is_pure_in(e, j)) {
            return None;
        }
        parts.push(rest);
    }
    Some(Potential { p, parts })
}

/// Data of an isomorphism `M_{ω_1} → M_{ω_2}` with `g_j = f_j + N_j`,
/// realized by `φ(f ω_1) = t_1^{−N_1}···t_{μ−1}^{−N_{μ−1}} f ω_2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub shifts: Vec<i64>,
}

impl Isomorphism {
    pub fn apply(&self, target: &OmegaSpec, f: &LaurentPoly) -> Result<LaurentPoly> {
        let mut mono = vec![0i64; target.nu()];
        for (j, n) in self.shifts.iter().enumerate() {
            mono[j] = -n;
        }
        target.element(f)?.mul_monomial(&mono)
    }

    /// Checks `φ(x · m) = x · φ(m)` for every pair of probe element and probe vector.
    pub fn intertwines(
        &self,
        source: &OmegaSpec,
        target: &OmegaSpec,
        elements: &[BElement],
        probes: &[LaurentPoly],
    ) -> Result<bool> {
        for x in elements {
            for m in probes {
                let lhs = self.apply(target, &act_on_omega_module(x, m, source)?)?;
                let rhs = act_on_omega_module(x, &self.apply(target, m)?, target)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Decides `M_{ω_1} ≅ M_{ω_2}`: equal `μ`, equal `a`-lists, and every
/// `g_j − f_j` a constant integer.
pub fn iso_decide(s1: &OmegaSpec, s2: &OmegaSpec) -> Option<Isomorphism> {
    if s1.nu() != s2.nu() || s1.mu() != s2.mu() || s1.a() != s2.a() {
        return None;
    }
    let mut shifts = Vec::with_capacity(s1.f().len());
    for (f, g) in s1.f().iter().zip(s2.f()) {
        let diff = g.sub(f).as_constant()?;
        shifts.push(as_integer(&diff)?);
    }
    Some(Isomorphism { shifts })
}

/// All monomials of `spec`'s ring with Laurent exponents in `[−r, r]` and
/// polynomial exponents in `[0, r]`.
fn monomial_box(spec: &OmegaSpec, r: i64) -> Vec<Exponents> {
    let mut out: Vec<Exponents> = vec![Vec::new()];
    for j in 0..spec.nu() {
        let lo = if j < spec.laurent_vars() { -r } else { 0 };
        out = out
            .into_iter()
            .flat_map(|e| {
                (lo..=r).map(move |x| {
                    let mut e2 = e.clone();
                    e2.push(x);
                    e2
                })
            })
            .collect();
    }
    out
}

/// The element `x_e` with `x_e · ω = t^e ω`: an exponential for the
/// Laurent part, then `d_j^{e_j}` for the polynomial variables.
fn cyclic_lift(spec: &OmegaSpec, e: &[i64]) -> BElement {
    let lv = spec.laurent_vars();
    let mut word = Vec::new();
    let mut charge = vec![0i64; spec.nu()];
    charge[..lv].copy_from_slice(&e[..lv]);
    let charge = Charge(charge);
    if !charge.is_zero() {
        word.push(Gen::E(charge));
    }
    for (j, &n) in e.iter().enumerate().skip(lv) {
        word.extend(std::iter::repeat_n(Gen::D(j), n as usize));
    }
    BElement::word(word)
}

/// Independent check of `M_{ω_1} ≅ M_{ω_2}` by linear algebra: searches for
/// a nonzero `h = φ(ω_1)` among monomials in a box of radius `r` such that
/// `φ(t^e ω_1) := x_e · h` commutes with every generator on every monomial
/// of the same box whose image stays inside the box. Nonzero maps between
/// simple modules are isomorphisms.
pub fn brute_force_isomorphic(s1: &OmegaSpec, s2: &OmegaSpec, r: i64) -> Result<bool> {
    if s1.nu() != s2.nu() {
        return Ok(false);
    }
    let nu = s1.nu();
    let domain = monomial_box(s1, r);
    let in_domain: std::collections::HashSet<&Exponents> = domain.iter().collect();
    let unknowns = monomial_box(s2, r);

    let mut gens = Vec::new();
    for j in 0..nu {
        gens.push(BElement::d(j));
        gens.push(BElement::e(Charge::unit(nu, j, 1)));
        gens.push(BElement::e(Charge::unit(nu, j, -1)));
    }

    let mut lifted: HashMap<(Exponents, usize), LaurentPoly> = HashMap::new();
    let mut lift = |e: &Exponents, u: usize| -> Result<LaurentPoly> {
        if let Some(p) = lifted.get(&(e.clone(), u)) {
            return Ok(p.clone());
        }
        let hu = LaurentPoly::monomial(nu, s2.laurent_vars(), unknowns[u].clone(), Rational::one())?;
        let p = act_on_omega_module(&cyclic_lift(s1, e), &hu, s2)?;
        lifted.insert((e.clone(), u), p.clone());
        Ok(p)
    };

    let mut rows: Vec<SparseRow> = Vec::new();
    for e in &domain {
        let m = LaurentPoly::monomial(nu, s1.laurent_vars(), e.clone(), Rational::one())?;
        for g in &gens {
            let gm = act_on_omega_module(g, &m, s1)?;
            if gm.terms().any(|(e2, _)| !in_domain.contains(e2)) {
                continue;
            }
            // residual polynomial per unknown, then one equation per monomial
            let mut eqs: BTreeMap<Exponents, SparseRow> = BTreeMap::new();
            for u in 0..unknowns.len() {
                let mut residual = act_on_omega_module(g, &lift(e, u)?, s2)?.neg();
                for (e2, c) in gm.terms() {
                    residual = residual.add(&lift(e2, u)?.scale(c));
                }
                for (mono, c) in residual.terms() {
                    eqs.entry(mono.clone()).or_default().insert(u, c.clone());
                }
            }
            rows.extend(eqs.into_values());
        }
    }
    Ok(rank(rows) < unknowns.len())
}

/// A sequence of `B`-elements which, applied in order, reduce `f ω` to
/// `scalar · ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub steps: Vec<BElement>,
    pub scalar: Rational,
}

impl Witness {
    pub fn replay(&self, spec: &OmegaSpec, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.steps.iter().try_fold(spec.element(f)?, |g, x| act_on_omega_module(x, &g, spec))
    }
}

/// Constructive reduction of a nonzero `f ω` to a nonzero multiple of `ω`:
/// each Laurent variable is cleared by a positive monomial shift followed
/// by repeated `e_{−c_j}(d_j − mult(f_j))` (which acts as `∂_j`), and each
/// polynomial variable by the difference operator `a_j^{−1} e_{c_j} − 1`,
/// which lowers its degree by one.
pub fn simplicity_witness(spec: &OmegaSpec, f: &LaurentPoly) -> Result<Witness> {
    let nu = spec.nu();
    let mut g = spec.element(f)?;
    if g.is_zero() {
        return Err(crate::Error::InvalidOmegaSpec("simplicity witness needs a nonzero vector".into()));
    }
    let mut steps = Vec::new();
    let mut push = |x: BElement, g: &mut LaurentPoly| -> Result<()> {
        *g = act_on_omega_module(&x, g, spec)?;
        steps.push(x);
        Ok(())
    };

    for j in 0..spec.laurent_vars() {
        let low = g.deg_minus(j);
        if low < 0 {
            push(BElement::e(Charge::unit(nu, j, -low)), &mut g)?;
        }
        let derivative =
            BElement::e(Charge::unit(nu, j, -1)).mul(&BElement::d(j).sub(&spec.multiplication_element(&spec.f()[j])?));
        while g.depends_on(j) {
            push(derivative.clone(), &mut g)?;
        }
    }
    for j in spec.laurent_vars()..nu {
        let difference = BElement::e(Charge::unit(nu, j, 1)).scale(&spec.a_of(j).recip()).sub(&BElement::one());
        while g.depends_on(j) {
            push(difference.clone(), &mut g)?;
        }
    }
    let scalar = g.as_constant().expect("every variable has been cleared");
    debug_assert!(!scalar.is_zero());
    Ok(Witness { steps, scalar })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn var(nu: usize, lv: usize, j: usize) -> LaurentPoly {
        LaurentPoly::var(nu, lv, j)
    }

    fn konst(nu: usize, lv: usize, c: Rational) -> LaurentPoly {
        LaurentPoly::constant(nu, lv, c)
    }

    #[test]
    fn a_module_criterion_examples() {
        let bad = OmegaSpec::new(2, 3, vec![var(2, 2, 1), var(2, 2, 0)], vec![]).unwrap();
        assert_eq!(is_a_module_spec(&bad), AModuleVerdict { is_a_module: false, witness: Some((0, 1)) });
        assert!(decompose_potential(&bad).is_none());

        let t1t2 = var(2, 2, 0).mul(&var(2, 2, 1));
        let good = OmegaSpec::new(2, 3, vec![t1t2.clone(), t1t2.clone()], vec![]).unwrap();
        assert!(is_a_module_spec(&good).is_a_module);
        let pot = decompose_potential(&good).unwrap();
        assert_eq!(pot.p, t1t2);
        assert!(pot.parts.iter().all(LaurentPoly::is_zero));

        let trivial = OmegaSpec::new(2, 1, vec![], vec![q(1), q(2)]).unwrap();
        assert!(is_a_module_spec(&trivial).is_a_module);
        assert_eq!(decompose_potential(&trivial).unwrap().parts.len(), 0);
    }

    #[test]
    fn potential_examples() {
        let lam = frac(3, 4);
        let s = OmegaSpec::new(1, 2, vec![konst(1, 1, lam.clone())], vec![]).unwrap();
        let pot = decompose_potential(&s).unwrap();
        assert!(pot.p.is_zero());
        assert_eq!(pot.parts[0], konst(1, 1, lam));

        let (t1, t2) = (var(2, 2, 0), var(2, 2, 1));
        let t1t2sq = t1.mul(&t2).mul(&t2);
        let f1 = t1.scale(&q(2)).add(&t1t2sq);
        let f2 = t1t2sq.scale(&q(2));
        let s = OmegaSpec::new(2, 3, vec![f1, f2], vec![]).unwrap();
        let pot = decompose_potential(&s).unwrap();
        assert_eq!(pot.p, t1t2sq);
        assert_eq!(pot.parts, vec![t1.scale(&q(2)), LaurentPoly::zero(2, 2)]);
    }

    fn spec(f1: LaurentPoly, a2: Rational) -> OmegaSpec {
        OmegaSpec::new(2, 2, vec![f1], vec![a2]).unwrap()
    }

    #[test]
    fn iso_examples() {
        let t1 = var(2, 1, 0);
        let s1 = spec(t1.clone(), q(2));
        let s2 = spec(t1.add(&konst(2, 1, q(3))), q(2));
        let iso = iso_decide(&s1, &s2).unwrap();
        assert_eq!(iso.shifts, vec![3]);
        let probes = vec![t1.clone(), var(2, 1, 1), konst(2, 1, q(1)), t1.mul(&var(2, 1, 1)).scale(&q(-2))];
        let elements =
            vec![BElement::d(0), BElement::d(1), BElement::e(Charge(vec![1, -1])), BElement::e(Charge(vec![0, 2]))];
        assert!(iso.intertwines(&s1, &s2, &elements, &probes).unwrap());
        assert!(brute_force_isomorphic(&s1, &s2, 3).unwrap());

        let s3 = spec(t1.clone(), q(3));
        assert!(iso_decide(&s1, &s3).is_none());
        assert!(!brute_force_isomorphic(&s1, &s3, 3).unwrap());

        let s4 = spec(t1.add(&konst(2, 1, frac(1, 2))), q(2));
        assert!(iso_decide(&s1, &s4).is_none());
        assert!(!brute_force_isomorphic(&s1, &s4, 3).unwrap());
    }

    #[test]
    fn witness_examples() {
        let s = OmegaSpec::new(1, 1, vec![], vec![q(4)]).unwrap();
        let one = s.one_poly();
        let w = simplicity_witness(&s, &one).unwrap();
        assert!(w.steps.is_empty());
        assert_eq!(w.scalar, q(1));

        let w = simplicity_witness(&s, &var(1, 0, 0)).unwrap();
        assert_eq!(w.steps.len(), 1);
        assert_eq!(w.scalar, q(-1));
        assert_eq!(w.replay(&s, &var(1, 0, 0)).unwrap(), one.scale(&q(-1)));

        let s = spec(var(2, 1, 0), q(5));
        let f = var(2, 1, 0).mul(&var(2, 1, 1));
        let w = simplicity_witness(&s, &f).unwrap();
        assert_eq!(w.steps.len(), 2);
        assert_eq!(w.scalar, q(-1));
        assert_eq!(w.replay(&s, &f).unwrap(), s.one_poly().scale(&q(-1)));
    }
}
