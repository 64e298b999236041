//! Coefficientwise identity checkers. Every check reduces to finitely many
//! calls of [`OperatorContext::y_coefficient`] and reports the first
//! nonzero residual it meets.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use crate::assoc::BModule;
use crate::fock::{State, VElement};
use crate::lattice::{Charge, LatticeVector};
use crate::rational::{binomial, factorial, frac, q, Rational};
use crate::vertex::{nth_product, Adjoint, OperatorContext};

/// Where a check failed and what was left over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub at: String,
    pub residual: String,
}

pub type Verdict = std::result::Result<(), Discrepancy>;

fn expect_zero<B: Ord + Clone + std::fmt::Debug>(residual: &State<B>, at: impl FnOnce() -> String) -> Verdict {
    if residual.is_zero() {
        Ok(())
    } else {
        Err(Discrepancy { at: at(), residual: residual.to_string() })
    }
}

/// Lowest computed index and the modes `n ↦ u_n w` from there up, per `(u, w)`.
type ModeTables<B> = HashMap<(VElement, State<B>), (i64, BTreeMap<i64, State<B>>)>;

/// Memoized mode tables `n ↦ u_n w` for repeated coefficient requests.
pub struct ModeCache<'a, W: BModule> {
    ctx: &'a OperatorContext<W>,
    table: RefCell<ModeTables<W::Basis>>,
}

impl<'a, W: BModule> ModeCache<'a, W> {
    pub fn new(ctx: &'a OperatorContext<W>) -> Self {
        ModeCache { ctx, table: RefCell::new(HashMap::new()) }
    }

    pub fn ctx(&self) -> &OperatorContext<W> {
        self.ctx
    }

    /// `u_n w`.
    pub fn coeff(&self, u: &VElement, n: i64, w: &State<W::Basis>) -> State<W::Basis> {
        if u.is_zero() || w.is_zero() || n >= self.ctx.truncation_bound(u, w) {
            return State::zero();
        }
        let key = (u.clone(), w.clone());
        if let Some((lo, modes)) = self.table.borrow().get(&key) {
            if *lo <= n {
                return modes.get(&n).cloned().unwrap_or_default();
            }
        }
        let lo = n - 1;
        let modes = self.ctx.y_modes(u, w, lo);
        let out = modes.get(&n).cloned().unwrap_or_default();
        self.table.borrow_mut().insert(key, (lo, modes));
        out
    }

    /// `u_p (v_q w)`.
    pub fn compose(&self, u: &VElement, p: i64, v: &VElement, q: i64, w: &State<W::Basis>) -> State<W::Basis> {
        let inner = self.coeff(v, q, w);
        self.coeff(u, p, &inner)
    }
}

/// `[h(m), h'(n)] s = m (h, h') δ_{m+n,0} s`.
pub fn heisenberg_bracket<W: BModule>(
    ctx: &OperatorContext<W>,
    h: &LatticeVector,
    m: i64,
    h2: &LatticeVector,
    n: i64,
    s: &State<W::Basis>,
) -> Verdict {
    let lhs = ctx.heisenberg(h, m, &ctx.heisenberg(h2, n, s)).sub(&ctx.heisenberg(h2, n, &ctx.heisenberg(h, m, s)));
    let expected = if m + n == 0 {
        let pairing = ctx.cfg().pairing(h, h2).expect("vectors of the context lattice");
        s.scale(&(q(m) * pairing))
    } else {
        State::zero()
    };
    expect_zero(&lhs.sub(&expected), || format!("[h({m}), h'({n})]"))
}

/// The order-`order` locality identity
/// `Σ_j C(K, j) (−1)^j [u_{a+K−j}, v_{b+j}] w = 0` for all `a, b` in `window`.
pub fn locality_check<W: BModule>(
    cache: &ModeCache<'_, W>,
    u: &VElement,
    v: &VElement,
    order: u32,
    window: i64,
    probes: &[State<W::Basis>],
) -> Verdict {
    let k = order as i64;
    for (pi, w) in probes.iter().enumerate() {
        for a in -window..=window {
            for b in -window..=window {
                let mut acc = State::zero();
                for j in 0..=order {
                    let c = binomial(k, j) * if j % 2 == 0 { q(1) } else { q(-1) };
                    let (p, r) = (a + k - j as i64, b + j as i64);
                    let bracket = cache.compose(u, p, v, r, w).sub(&cache.compose(v, r, u, p, w));
                    acc.add_scaled(&bracket, &c);
                }
                expect_zero(&acc, || format!("probe {pi}, a={a}, b={b}"))?;
            }
        }
    }
    Ok(())
}

/// Both sides of the component Jacobi identity
///
/// ```text
/// Σ_i (−1)^i C(n,i) [u_{m+n−i} v_{k+i} w − (−1)^n v_{n+k−i} u_{m+i} w]
///   = Σ_i C(m,i) (u_{n+i} v)_{m+k−i} w
/// ```
///
/// Products `u_{n+i} v` are taken in `V`.
pub fn borcherds_sides<W: BModule>(
    cache: &ModeCache<'_, W>,
    adjoint: &ModeCache<'_, crate::assoc::WeightModule>,
    u: &VElement,
    v: &VElement,
    w: &State<W::Basis>,
    (m, n, k): (i64, i64, i64),
) -> (State<W::Basis>, State<W::Basis>) {
    let ctx = cache.ctx();
    let sign_n = if n.rem_euclid(2) == 0 { q(1) } else { q(-1) };
    let mut lhs = State::zero();
    let first = (ctx.truncation_bound(v, w) - k).max(0);
    for i in 0..first {
        let c = binomial(n, i as u32) * if i % 2 == 0 { q(1) } else { q(-1) };
        lhs.add_scaled(&cache.compose(u, m + n - i, v, k + i, w), &c);
    }
    let second = (ctx.truncation_bound(u, w) - m).max(0);
    for i in 0..second {
        let c = binomial(n, i as u32) * if i % 2 == 0 { q(1) } else { q(-1) };
        lhs.add_scaled(&cache.compose(v, n + k - i, u, m + i, w), &(-c * &sign_n));
    }
    let mut rhs = State::zero();
    let third = (adjoint.ctx().truncation_bound(u, v) - n).max(0);
    for i in 0..third {
        let uv = adjoint.coeff(u, n + i, v);
        rhs.add_scaled(&cache.coeff(&uv, m + k - i, w), &binomial(m, i as u32));
    }
    (lhs, rhs)
}

pub fn borcherds_check<W: BModule>(
    cache: &ModeCache<'_, W>,
    adjoint: &ModeCache<'_, crate::assoc::WeightModule>,
    u: &VElement,
    v: &VElement,
    w: &State<W::Basis>,
    mnk: (i64, i64, i64),
) -> Verdict {
    let (lhs, rhs) = borcherds_sides(cache, adjoint, u, v, w, mnk);
    expect_zero(&lhs.sub(&rhs), || format!("(m,n,k)={mnk:?}"))
}

/// `[L(m), L(n)] s = (m−n) L(m+n) s + (m³−m)/6 δ_{m+n,0} ν s`.
pub fn virasoro_bracket<W: BModule>(ctx: &OperatorContext<W>, m: i64, n: i64, s: &State<W::Basis>) -> Verdict {
    let lhs = ctx.virasoro(m, &ctx.virasoro(n, s)).sub(&ctx.virasoro(n, &ctx.virasoro(m, s)));
    let mut rhs = ctx.virasoro(m + n, s).scale(&q(m - n));
    if m + n == 0 {
        rhs.add_scaled(s, &(frac(m * m * m - m, 6) * q(ctx.cfg().nu as i64)));
    }
    expect_zero(&lhs.sub(&rhs), || format!("[L({m}), L({n})]"))
}

/// `(L(−1) u)_n w = −n u_{n−1} w` for `n` in the window.
pub fn d_derivative_check<W: BModule>(
    cache: &ModeCache<'_, W>,
    u: &VElement,
    window: i64,
    probes: &[State<W::Basis>],
) -> Verdict {
    let du = Adjoint::adjoint(*cache.ctx().cfg()).virasoro(-1, u);
    for (pi, w) in probes.iter().enumerate() {
        for n in -window..=window {
            let lhs = cache.coeff(&du, n, w);
            let rhs = cache.coeff(u, n - 1, w).scale(&q(-n));
            expect_zero(&lhs.sub(&rhs), || format!("probe {pi}, n={n}"))?;
        }
    }
    Ok(())
}

/// `u_n 𝟏 = 0` for `n ≥ 0` and `u_{−1} 𝟏 = u`.
pub fn creation_check(ctx: &Adjoint, u: &VElement, window: i64) -> Verdict {
    let vac = VElement::vacuum(ctx.cfg().nu);
    for n in 0..=window {
        expect_zero(&ctx.y_coefficient(u, n, &vac), || format!("u_{n} 1"))?;
    }
    expect_zero(&ctx.y_coefficient(u, -1, &vac).sub(u), || "u_{-1} 1 - u".into())
}

/// `u_n w = 0` for every `n` at or above the computed bound; `window`
/// extra modes below the bound are expanded alongside.
pub fn truncation_check<W: BModule>(
    ctx: &OperatorContext<W>,
    u: &VElement,
    w: &State<W::Basis>,
    window: i64,
) -> Verdict {
    let bound = ctx.truncation_bound(u, w);
    if u.is_zero() || w.is_zero() {
        return Ok(());
    }
    let modes = ctx.y_modes(u, w, bound - window);
    match modes.keys().next_back() {
        Some(&top) if top >= bound => {
            Err(Discrepancy { at: format!("n={top} ≥ bound {bound}"), residual: modes[&top].to_string() })
        }
        _ => Ok(()),
    }
}

/// `(e^α)_m e^β = 0` for `m ≥ 0`, and for `m < 0` equals the Fock part of
/// `L(−1)^{−m−1} e^α / (−m−1)!` carried to charge `α + β`.
pub fn exponential_ladder(ctx: &Adjoint, alpha: &Charge, beta: &Charge, depth: i64) -> Verdict {
    let cfg = ctx.cfg();
    let (ea, eb) = (VElement::exp(alpha.clone()), VElement::exp(beta.clone()));
    for m in 0..=depth {
        expect_zero(&nth_product(cfg, &ea, m, &eb), || format!("(e^α)_{m} e^β"))?;
    }
    let mut power = ea.clone();
    for j in 0..depth {
        let m = -j - 1;
        let scale = Rational::one() / Rational::from_integer(factorial(j as u32));
        let expected = power.map_terms(|mono, charge| vec![(mono.clone(), charge.add(beta), scale.clone())]);
        expect_zero(&nth_product(cfg, &ea, m, &eb).sub(&expected), || format!("(e^α)_{m} e^β"))?;
        power = ctx.virasoro(-1, &power);
    }
    Ok(())
}

/// Smallest order `≤ max_order` at which the locality identity holds on the window.
pub fn minimal_locality_order<W: BModule>(
    cache: &ModeCache<'_, W>,
    u: &VElement,
    v: &VElement,
    max_order: u32,
    window: i64,
    probes: &[State<W::Basis>],
) -> Option<u32> {
    (0..=max_order).find(|&k| locality_check(cache, u, v, k, window, probes).is_ok())
}
