//! JSON documents for elements, specs, module contexts and witnesses.
//! Parsers name the offending field (`terms[2].charge`) in every error.
//!
//! * `VElement` / `ModuleElement`:
//!   `{"terms":[{"coeff":"p/q","fock":[[dir,mode],…],"charge":[…]}]}`; for
//!   module elements `charge` holds the `W`-basis label.
//! * `LaurentPoly`: `[{"coeff":"p/q","exponents":[e_1,…,e_ν]}]`.
//! * `OmegaSpec`: `{"mu":μ,"f":[LaurentPoly…],"a":["p/q"…]}`.
//! * `AElement` / `ZhuNormalForm`: `{"terms":[{"coeff":"p/q","d":[k_1,…],"charge":[…]}]}`.
//! * `ModuleContext`: `{"lambda":["p/q"…],"W":{"kind":"weight","lambda":["p/q"…]}}`
//!   or `{"lambda":[…],"W":{"kind":"omega","mu":…,"f":[…],"a":[…]}}`.

use serde_json::{json, Map, Value};

use crate::assoc::{AElement, BElement, Gen, OmegaSpec, WeightModule, Witness};
use crate::bridge::{build_module_context, AnyModule, ModuleContext, ModuleElement};
use crate::error::{Error, Result};
use crate::fock::{Factor, FockMonomial, State, VElement};
use crate::lattice::{Charge, LatticeConfig, LatticeVector};
use crate::laurent::LaurentPoly;
use crate::rational::{parse_rational, Rational};
use crate::zhu::ZhuNormalForm;

fn field<'a>(obj: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    obj.as_object()
        .ok_or_else(|| Error::schema(path, "expected an object"))?
        .get(key)
        .ok_or_else(|| Error::schema(join(path, key), "missing field"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::schema(path, "expected an array"))
}

fn int(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| Error::schema(path, "expected an integer"))
}

fn rational(v: &Value, path: &str) -> Result<Rational> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => return Err(Error::schema(path, "expected a rational string \"p/q\"")),
    };
    parse_rational(&text).map_err(|e| match e {
        Error::Schema { reason, .. } => Error::schema(path, reason),
        other => other,
    })
}

fn int_vector(v: &Value, len: usize, path: &str) -> Result<Vec<i64>> {
    let items = array(v, path)?;
    if items.len() != len {
        return Err(Error::schema(path, format!("expected {len} entries, got {}", items.len())));
    }
    items.iter().enumerate().map(|(i, x)| int(x, &format!("{path}[{i}]"))).collect()
}

fn rational_vector(v: &Value, len: Option<usize>, path: &str) -> Result<Vec<Rational>> {
    let items = array(v, path)?;
    if let Some(len) = len {
        if items.len() != len {
            return Err(Error::schema(path, format!("expected {len} entries, got {}", items.len())));
        }
    }
    items.iter().enumerate().map(|(i, x)| rational(x, &format!("{path}[{i}]"))).collect()
}

fn fock(v: &Value, dims: usize, path: &str) -> Result<FockMonomial> {
    let mut factors = Vec::new();
    for (i, pair) in array(v, path)?.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let items = array(pair, &p)?;
        if items.len() != 2 {
            return Err(Error::schema(&p, "expected [dir, mode]"));
        }
        let dir = int(&items[0], &format!("{p}[0]"))?;
        let mode = int(&items[1], &format!("{p}[1]"))?;
        if dir < 0 || dir as usize >= dims {
            return Err(Error::schema(format!("{p}[0]"), format!("direction must lie in 0..{dims}")));
        }
        if mode < 1 || mode > u32::MAX as i64 {
            return Err(Error::schema(format!("{p}[1]"), "mode must be a positive integer"));
        }
        factors.push(Factor { dir: dir as usize, mode: mode as u32 });
    }
    Ok(FockMonomial::new(factors))
}

fn terms(v: &Value) -> Result<&Vec<Value>> {
    array(field(v, "terms", "")?, "terms")
}

fn state_terms(v: &Value, cfg: &LatticeConfig, label_len: usize) -> Result<State<Vec<i64>>> {
    let mut s = State::zero();
    for (i, t) in terms(v)?.iter().enumerate() {
        let p = format!("terms[{i}]");
        let c = rational(field(t, "coeff", &p)?, &join(&p, "coeff"))?;
        let m = fock(field(t, "fock", &p)?, cfg.dims(), &join(&p, "fock"))?;
        let b = int_vector(field(t, "charge", &p)?, label_len, &join(&p, "charge"))?;
        s.add_term(m, b, c);
    }
    Ok(s)
}

pub fn parse_velement(v: &Value, cfg: &LatticeConfig) -> Result<VElement> {
    Ok(state_terms(v, cfg, cfg.nu)?
        .map_terms(|m, b| vec![(m.clone(), Charge(b.clone()), Rational::from_integer(1.into()))]))
}

pub fn parse_module_element(v: &Value, cfg: &LatticeConfig) -> Result<ModuleElement> {
    state_terms(v, cfg, cfg.nu)
}

fn state_to_json<B: Ord + Clone>(s: &State<B>, label: impl Fn(&B) -> Vec<i64>) -> Value {
    let terms: Vec<Value> = s
        .iter()
        .map(|(m, b, c)| {
            let fock: Vec<Value> = m.factors().iter().map(|f| json!([f.dir, f.mode])).collect();
            json!({"coeff": c.to_string(), "fock": fock, "charge": label(b)})
        })
        .collect();
    json!({ "terms": terms })
}

pub fn velement_to_json(v: &VElement) -> Value {
    state_to_json(v, |c| c.0.clone())
}

pub fn module_element_to_json(v: &ModuleElement) -> Value {
    state_to_json(v, Clone::clone)
}

pub fn parse_laurent(v: &Value, nvars: usize, laurent_vars: usize, path: &str) -> Result<LaurentPoly> {
    let mut p = LaurentPoly::zero(nvars, laurent_vars);
    for (i, t) in array(v, path)?.iter().enumerate() {
        let tp = format!("{path}[{i}]");
        let c = rational(field(t, "coeff", &tp)?, &join(&tp, "coeff"))?;
        let exps = int_vector(field(t, "exponents", &tp)?, nvars, &join(&tp, "exponents"))?;
        let term = LaurentPoly::monomial(nvars, laurent_vars, exps, c)
            .map_err(|e| Error::schema(join(&tp, "exponents"), e.to_string()))?;
        p = p.add(&term);
    }
    Ok(p)
}

pub fn laurent_to_json(p: &LaurentPoly) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!({"coeff": c.to_string(), "exponents": e})).collect())
}

pub fn parse_omega_spec(v: &Value, nu: usize) -> Result<OmegaSpec> {
    let mu = int(field(v, "mu", "")?, "mu")?;
    if mu < 1 || mu as usize > nu + 1 {
        return Err(Error::schema("mu", format!("must lie in 1..={}", nu + 1)));
    }
    let mu = mu as usize;
    let fs = array(field(v, "f", "")?, "f")?;
    let f = fs
        .iter()
        .enumerate()
        .map(|(i, x)| parse_laurent(x, nu, mu - 1, &format!("f[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let a = rational_vector(field(v, "a", "")?, None, "a")?;
    OmegaSpec::new(nu, mu, f, a)
}

pub fn omega_spec_to_json(spec: &OmegaSpec) -> Value {
    json!({
        "mu": spec.mu(),
        "f": spec.f().iter().map(laurent_to_json).collect::<Vec<_>>(),
        "a": spec.a().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

pub fn parse_aelement(v: &Value, nu: usize) -> Result<AElement> {
    let mut a = AElement::zero();
    for (i, t) in terms(v)?.iter().enumerate() {
        let p = format!("terms[{i}]");
        let c = rational(field(t, "coeff", &p)?, &join(&p, "coeff"))?;
        let d = int_vector(field(t, "d", &p)?, nu, &join(&p, "d"))?;
        if d.iter().any(|&x| x < 0) {
            return Err(Error::schema(join(&p, "d"), "d-exponents must be nonnegative"));
        }
        let alpha = int_vector(field(t, "charge", &p)?, nu, &join(&p, "charge"))?;
        a.add_term(d.into_iter().map(|x| x as u32).collect(), Charge(alpha), c);
    }
    Ok(a)
}

fn graded_to_json<'a>(terms: impl Iterator<Item = (&'a (Vec<u32>, Charge), &'a Rational)>) -> Value {
    let terms: Vec<Value> = terms.map(|((d, a), c)| json!({"coeff": c.to_string(), "d": d, "charge": a.0})).collect();
    json!({ "terms": terms })
}

pub fn aelement_to_json(a: &AElement) -> Value {
    graded_to_json(a.terms.iter())
}

pub fn zhu_to_json(z: &ZhuNormalForm) -> Value {
    graded_to_json(z.terms.iter())
}

pub fn parse_module_context(v: &Value, cfg: LatticeConfig) -> Result<ModuleContext> {
    let d = rational_vector(field(v, "lambda", "")?, Some(cfg.nu), "lambda")?;
    let lambda = LatticeVector { c: vec![Rational::from_integer(0.into()); cfg.nu], d };
    let w = field(v, "W", "")?;
    let kind = field(w, "kind", "W")?.as_str().ok_or_else(|| Error::schema("W.kind", "expected a string"))?;
    let module = match kind {
        "weight" => {
            let c = rational_vector(field(w, "lambda", "W")?, Some(cfg.nu), "W.lambda")?;
            AnyModule::Weight(WeightModule::new(cfg, c)?)
        }
        "omega" => {
            if cfg.k != 1 {
                return Err(Error::schema("W.kind", "omega modules require k = 1"));
            }
            AnyModule::Omega(parse_omega_spec(w, cfg.nu)?)
        }
        other => return Err(Error::schema("W.kind", format!("unknown module kind `{other}`"))),
    };
    build_module_context(cfg, lambda, module)
}

pub fn belement_to_json(x: &BElement) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .map(|(w, c)| {
            let word: Vec<Value> = w
                .iter()
                .map(|g| match g {
                    Gen::E(a) => json!({ "e": a.0 }),
                    Gen::D(j) => json!({ "d": j }),
                })
                .collect();
            json!({"coeff": c.to_string(), "word": word})
        })
        .collect();
    Value::Array(terms)
}

pub fn parse_belement(v: &Value, nu: usize, path: &str) -> Result<BElement> {
    let mut x = BElement::zero();
    for (i, t) in array(v, path)?.iter().enumerate() {
        let tp = format!("{path}[{i}]");
        let c = rational(field(t, "coeff", &tp)?, &join(&tp, "coeff"))?;
        let mut word = Vec::new();
        for (k, g) in array(field(t, "word", &tp)?, &join(&tp, "word"))?.iter().enumerate() {
            let gp = format!("{tp}.word[{k}]");
            let obj: &Map<String, Value> =
                g.as_object().ok_or_else(|| Error::schema(&gp, "expected {\"e\":[…]} or {\"d\":j}"))?;
            if let Some(a) = obj.get("e") {
                word.push(Gen::E(Charge(int_vector(a, nu, &join(&gp, "e"))?)));
            } else if let Some(j) = obj.get("d") {
                let j = int(j, &join(&gp, "d"))?;
                if j < 0 || j as usize >= nu {
                    return Err(Error::schema(join(&gp, "d"), format!("index must lie in 0..{nu}")));
                }
                word.push(Gen::D(j as usize));
            } else {
                return Err(Error::schema(&gp, "expected {\"e\":[…]} or {\"d\":j}"));
            }
        }
        x.add_term(word, c);
    }
    Ok(x)
}

/// `{"steps":[B-element…], "scalar":"p/q"}`; steps apply in order.
pub fn witness_to_json(w: &Witness) -> Value {
    json!({
        "steps": w.steps.iter().map(belement_to_json).collect::<Vec<_>>(),
        "scalar": w.scalar.to_string(),
    })
}

pub fn parse_witness(v: &Value, nu: usize) -> Result<Witness> {
    let steps = array(field(v, "steps", "")?, "steps")?
        .iter()
        .enumerate()
        .map(|(i, s)| parse_belement(s, nu, &format!("steps[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let scalar = rational(field(v, "scalar", "")?, "scalar")?;
    Ok(Witness { steps, scalar })
}

/// Which schema to read a document with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    VElement,
    Module,
    OmegaSpec,
    AElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    VElement(VElement),
    Module(ModuleElement),
    OmegaSpec(OmegaSpec),
    AElement(AElement),
}

pub fn parse_element(text: &str, kind: ElementKind, cfg: &LatticeConfig) -> Result<Parsed> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::schema("", format!("invalid JSON: {e}")))?;
    Ok(match kind {
        ElementKind::VElement => Parsed::VElement(parse_velement(&v, cfg)?),
        ElementKind::Module => Parsed::Module(parse_module_element(&v, cfg)?),
        ElementKind::OmegaSpec => Parsed::OmegaSpec(parse_omega_spec(&v, cfg.nu)?),
        ElementKind::AElement => Parsed::AElement(parse_aelement(&v, cfg.nu)?),
    })
}
