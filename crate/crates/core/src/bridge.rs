//! From `A`-modules to `V`-modules and back: `V_{λ,W} = M(1) ⊗ W`, its
//! vacuum space `Ω`, the operators `Z(α, z)` and `T_α = Z(α, z) z^{−α}`, and
//! the recovered `A`-action `d ↦ d(0)`, `e_α ↦ T_α` on `Ω`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::assoc::{BModule, OmegaSpec, WeightModule};
use crate::checks::{Discrepancy, Verdict};
use crate::error::{Error, Result};
use crate::fock::{monomials_of_weight, FockMonomial, State, VElement};
use crate::lattice::{Charge, LatticeConfig, LatticeVector};
use crate::linalg::{nullspace, SparseRow};
use crate::rational::{as_integer, frac, q, Rational};
use crate::vertex::{OperatorContext, Series};

/// Either kind of `A`-module; basis vectors are integer vectors (offsets
/// `α` for weight modules, exponent vectors for `M_ω`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyModule {
    Weight(WeightModule),
    Omega(OmegaSpec),
}

impl BModule for AnyModule {
    type Basis = Vec<i64>;

    fn cfg(&self) -> &LatticeConfig {
        match self {
            AnyModule::Weight(m) => m.cfg(),
            AnyModule::Omega(m) => m.cfg(),
        }
    }

    fn act_e(&self, alpha: &Charge, b: &Vec<i64>) -> Vec<(Vec<i64>, Rational)> {
        match self {
            AnyModule::Weight(m) => m.act_e(alpha, &Charge(b.clone())).into_iter().map(|(c, x)| (c.0, x)).collect(),
            AnyModule::Omega(m) => m.act_e(alpha, b),
        }
    }

    fn act_d(&self, j: usize, b: &Vec<i64>) -> Vec<(Vec<i64>, Rational)> {
        match self {
            AnyModule::Weight(m) => m.act_d(j, &Charge(b.clone())).into_iter().map(|(c, x)| (c.0, x)).collect(),
            AnyModule::Omega(m) => m.act_d(j, b),
        }
    }
}

/// The operator context of `V_{λ,W}`.
pub type ModuleContext = OperatorContext<AnyModule>;

/// An element of `V_{λ,W}`.
pub type ModuleElement = State<Vec<i64>>;

/// Validates `λ` and `W` and returns the context of `V_{λ,W}`. `M_ω`
/// modules are accepted only when they are `A`-modules.
pub fn build_module_context(cfg: LatticeConfig, lambda: LatticeVector, module: AnyModule) -> Result<ModuleContext> {
    if module.cfg() != &cfg {
        return Err(Error::InvalidConfig(format!(
            "module built for (ν={}, k={}), context is (ν={}, k={})",
            module.cfg().nu,
            module.cfg().k,
            cfg.nu,
            cfg.k
        )));
    }
    if let AnyModule::Omega(spec) = &module {
        if let Some((i, j)) = crate::assoc::is_a_module_spec(spec).witness {
            return Err(Error::InvalidOmegaSpec(format!(
                "not an A-module: D_{} f_{} ≠ D_{} f_{}",
                i + 1,
                j + 1,
                j + 1,
                i + 1
            )));
        }
    }
    OperatorContext::module(cfg, lambda, module)
}

/// A basis of the vacuum vectors among `M(1)_{≤ degree_bound} ⊗ span(slice)`,
/// found by solving `h(n) v = 0` for all basis directions and `n > 0`.
pub fn vacuum_basis<W: BModule>(
    ctx: &OperatorContext<W>,
    degree_bound: u32,
    slice: &[W::Basis],
) -> Vec<State<W::Basis>> {
    let dims = ctx.cfg().dims();
    let mut out = Vec::new();
    for degree in 0..=degree_bound {
        let monos = monomials_of_weight(dims, degree);
        let unknowns: Vec<(FockMonomial, W::Basis)> =
            slice.iter().flat_map(|b| monos.iter().map(move |m| (m.clone(), b.clone()))).collect();
        let mut rows: BTreeMap<(usize, i64, FockMonomial, W::Basis), SparseRow> = BTreeMap::new();
        for (col, (m, b)) in unknowns.iter().enumerate() {
            let v = State::basis(m.clone(), b.clone());
            for dir in 0..dims {
                for n in 1..=degree as i64 {
                    for (m2, b2, c) in ctx.dir_mode(dir, n, &v).iter() {
                        rows.entry((dir, n, m2.clone(), b2.clone())).or_default().insert(col, c.clone());
                    }
                }
            }
        }
        for vec in nullspace(rows.into_values().collect(), unknowns.len()) {
            let mut s = State::zero();
            for (col, c) in vec.iter().enumerate() {
                let (m, b) = &unknowns[col];
                s.add_term(m.clone(), b.clone(), c.clone());
            }
            out.push(s);
        }
    }
    out
}

/// True when every positive Heisenberg mode kills `v`.
pub fn is_vacuum_vector<W: BModule>(ctx: &OperatorContext<W>, v: &State<W::Basis>) -> bool {
    let top = v.max_fock_weight() as i64;
    (0..ctx.cfg().dims()).all(|dir| (1..=top.max(1)).all(|n| ctx.dir_mode(dir, n, v).is_zero()))
}

/// `Z(α, n) w`, the coefficient of `z^{−n−1}` in
/// `E^−(α, z) Y(e^α, z) E^+(α, z) w`.
pub fn z_operator<W: BModule>(
    ctx: &OperatorContext<W>,
    alpha: &Charge,
    n: i64,
    w: &State<W::Basis>,
) -> State<W::Basis> {
    let target = -n - 1;
    let ea = VElement::exp(alpha.clone());

    // E^+(α, z) = exp(Σ_{m>0} α(m) z^{−m} / m)
    let start: Series<W::Basis> = [(0, w.clone())].into();
    let plus = ctx.exponentiate(&start, |s, out| {
        let top = s.1.max_fock_weight() as i64;
        for m in 1..=top {
            let am = ctx.charge_mode(alpha, m, s.1);
            add_to(out, s.0 - m, &am, &frac(1, m));
        }
    });

    let mut series: Series<W::Basis> = BTreeMap::new();
    for (p, s) in &plus {
        for (e, ys) in ctx.y_series(&ea, s, target - p) {
            add_to(&mut series, p + e, &ys, &Rational::one());
        }
    }

    // E^−(α, z) = exp(−Σ_{m>0} α(−m) z^m / m)
    let minus = ctx.exponentiate(&series, |s, out| {
        for m in 1..=(target - s.0) {
            let am = ctx.charge_mode(alpha, -m, s.1);
            add_to(out, s.0 + m, &am, &frac(-1, m));
        }
    });
    minus.get(&target).cloned().unwrap_or_default()
}

fn add_to<B: Ord + Clone>(series: &mut Series<B>, exp: i64, state: &State<B>, scale: &Rational) {
    if state.is_zero() {
        return;
    }
    let slot = series.entry(exp).or_default();
    slot.add_scaled(state, scale);
    if slot.is_zero() {
        series.remove(&exp);
    }
}

/// The eigenvalues of `c_1(0), …, c_ν(0)` on `w`, or an error when `w` is
/// not a simultaneous eigenvector.
pub fn sector_of<W: BModule>(ctx: &OperatorContext<W>, w: &State<W::Basis>) -> Result<Vec<Rational>> {
    let cfg = ctx.cfg();
    let (mono, b, c0) = w.iter().next().ok_or_else(|| Error::MixedSector("zero vector has no sector".into()))?;
    let mut out = Vec::with_capacity(cfg.nu);
    for i in 0..cfg.nu {
        let image = ctx.dir_mode(cfg.c_dir(i), 0, w);
        let eigen = image.coeff(mono, b) / c0;
        if image != w.scale(&eigen) {
            return Err(Error::MixedSector(format!("not an eigenvector of c_{}(0)", i + 1)));
        }
        out.push(eigen);
    }
    Ok(out)
}

/// `T_α w = Z(α, n) w` with `−n−1 = (α, λ')`, where `λ'` is the sector of `w`.
pub fn t_operator<W: BModule>(
    ctx: &OperatorContext<W>,
    alpha: &Charge,
    w: &State<W::Basis>,
) -> Result<State<W::Basis>> {
    if w.is_zero() {
        return Ok(State::zero());
    }
    let sector = sector_of(ctx, w)?;
    let power: Rational = alpha.0.iter().zip(&sector).map(|(m, s)| q(*m) * s).sum();
    let power = as_integer(&power).ok_or_else(|| Error::MixedSector(format!("z-power {power} is not an integer")))?;
    Ok(z_operator(ctx, alpha, -1 - power, w))
}

/// Recovered action tables on `1 ⊗ slice` compared with the original
/// `W`-action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    /// Number of table entries compared.
    pub entries: usize,
    pub mismatch: Option<Discrepancy>,
}

fn module_vector<B: Ord + Clone>(image: Vec<(B, Rational)>) -> State<B> {
    let mut s = State::zero();
    for (b, c) in image {
        s.add_term(FockMonomial::vacuum(), b, c);
    }
    s
}

/// Tabulates `d_j(0)` and `T_{±c_i}` on `1 ⊗ b` for every `b` in the slice
/// and compares with `d_j · b` and `e_{±c_i} · b` in `W`.
pub fn recover_a_module<W: BModule>(ctx: &OperatorContext<W>, slice: &[W::Basis]) -> Result<RoundTrip> {
    let cfg = ctx.cfg();
    let module = ctx.module_ref();
    let mut entries = 0;
    for b in slice {
        let w = State::vacuum_of(b.clone());
        for j in 0..cfg.nu {
            entries += 1;
            let got = ctx.dir_mode(cfg.d_dir(j), 0, &w);
            let expected = module_vector(module.act_d(j, b));
            if got != expected {
                return Ok(RoundTrip {
                    entries,
                    mismatch: Some(Discrepancy {
                        at: format!("d_{}(0) on {b:?}", j + 1),
                        residual: got.sub(&expected).to_string(),
                    }),
                });
            }
            for sign in [1, -1] {
                entries += 1;
                let alpha = Charge::unit(cfg.nu, j, sign);
                let got = t_operator(ctx, &alpha, &w)?;
                let expected = module_vector(module.act_e(&alpha, b));
                if got != expected {
                    return Ok(RoundTrip {
                        entries,
                        mismatch: Some(Discrepancy {
                            at: format!("T_{alpha} on {b:?}"),
                            residual: got.sub(&expected).to_string(),
                        }),
                    });
                }
            }
        }
    }
    Ok(RoundTrip { entries, mismatch: None })
}

fn mismatch<B: Ord + Clone + std::fmt::Debug>(lhs: &State<B>, rhs: &State<B>, at: impl FnOnce() -> String) -> Verdict {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Discrepancy { at: at(), residual: lhs.sub(rhs).to_string() })
    }
}

/// `T_α T_β w = T_{α+β} w`.
pub fn t_composition<W: BModule>(
    ctx: &OperatorContext<W>,
    alpha: &Charge,
    beta: &Charge,
    w: &State<W::Basis>,
) -> Result<Verdict> {
    let lhs = t_operator(ctx, alpha, &t_operator(ctx, beta, w)?)?;
    let rhs = t_operator(ctx, &alpha.add(beta), w)?;
    Ok(mismatch(&lhs, &rhs, || format!("T_{alpha} T_{beta}")))
}

/// `[d_j(0), T_α] w = (d_j, α) T_α w`.
pub fn d_t_commutator<W: BModule>(
    ctx: &OperatorContext<W>,
    j: usize,
    alpha: &Charge,
    w: &State<W::Basis>,
) -> Result<Verdict> {
    let cfg = ctx.cfg();
    let d = cfg.d_dir(j);
    let tw = t_operator(ctx, alpha, w)?;
    let lhs = ctx.dir_mode(d, 0, &tw).sub(&t_operator(ctx, alpha, &ctx.dir_mode(d, 0, w))?);
    let rhs = tw.scale(&q(cfg.k * alpha.0[j]));
    Ok(mismatch(&lhs, &rhs, || format!("[d_{}(0), T_{alpha}]", j + 1)))
}

/// The identities for `Z(α, n)` on `w`:
///
/// 1. `[β(0), Z(α, n)] = (β, α) Z(α, n)`,
/// 2. `[β(m), Z(α, n)] = 0` for `m ≠ 0`, `|m| ≤ window`,
/// 3. `(−n−1) Z(α, n) w = Z(α, n) α(0) w`,
///
/// for every basis direction `β` and `|n| ≤ window`.
pub fn z_identities<W: BModule>(ctx: &OperatorContext<W>, alpha: &Charge, w: &State<W::Basis>, window: i64) -> Verdict {
    let cfg = ctx.cfg();
    let alpha_vec = alpha.to_vector();
    for n in -window..=window {
        let zw = z_operator(ctx, alpha, n, w);
        for dir in 0..cfg.dims() {
            let beta = cfg.basis(dir);
            let pairing = cfg.pairing(&beta, &alpha_vec).expect("same lattice");
            for m in -window..=window {
                let lhs = ctx.dir_mode(dir, m, &zw).sub(&z_operator(ctx, alpha, n, &ctx.dir_mode(dir, m, w)));
                let rhs = if m == 0 { zw.scale(&pairing) } else { State::zero() };
                mismatch(&lhs, &rhs, || format!("[h_{dir}({m}), Z({alpha}, {n})]"))?;
            }
        }
        let a0w = ctx.heisenberg(&alpha_vec, 0, w);
        mismatch(&zw.scale(&q(-n - 1)), &z_operator(ctx, alpha, n, &a0w), || {
            format!("z-derivative of Z({alpha}, {n})")
        })?;
    }
    Ok(())
}

/// Each Fock component of every `u_n s`, `s ∈ M(1) ⊗ Ω`, lies again in `Ω`.
pub fn omega_invariance<W: BModule>(
    ctx: &OperatorContext<W>,
    u: &VElement,
    s: &State<W::Basis>,
    window: i64,
) -> Verdict {
    for (n, image) in ctx.y_modes(u, s, -window) {
        let mut by_mono: BTreeMap<FockMonomial, State<W::Basis>> = BTreeMap::new();
        for (mono, b, c) in image.iter() {
            by_mono.entry(mono.clone()).or_default().add_term(FockMonomial::vacuum(), b.clone(), c.clone());
        }
        for (mono, w) in by_mono {
            if !is_vacuum_vector(ctx, &w) {
                return Err(Discrepancy { at: format!("u_{n}, Fock part {mono:?}"), residual: w.to_string() });
            }
        }
    }
    Ok(())
}

/// Every vacuum vector is a `c_i(0)`-eigenvector with integral eigenvalues,
/// i.e. of weight `λ' ∈ (1/k) L_D`. Returns the coordinates of `λ'`.
pub fn weight_coherence<W: BModule>(ctx: &OperatorContext<W>, w: &State<W::Basis>) -> Result<LatticeVector> {
    let cfg = ctx.cfg();
    let sector = sector_of(ctx, w)?;
    let mut d = Vec::with_capacity(cfg.nu);
    for (i, s) in sector.iter().enumerate() {
        if as_integer(s).is_none() {
            return Err(Error::NonIntegralPairing { alpha: format!("c_{}", i + 1), value: s.to_string() });
        }
        d.push(s / q(cfg.k));
    }
    Ok(LatticeVector { c: vec![Rational::zero(); cfg.nu], d })
}
