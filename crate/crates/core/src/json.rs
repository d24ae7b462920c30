//! JSON interchange for classes, `A^1`-classes, resolution data and
//! presentations.
//!
//! Structural problems (wrong shapes, non-integers) are parse errors; values
//! that parse but violate a descriptor constraint (an orbit of size 0) are
//! validation errors raised by normalization.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::a1::{A1Class, BasePoint};
use crate::class::{normalize, AtomFactor, MuClass, Opaque, RawClass, RawFactor, RawTerm};
use crate::epoly::EPoly;
use crate::error::{Error, Result};
use crate::laurent::LaurentInt;
use crate::vanishing::{Component, Generator, Locus, Presentation, SncDatum, Stratum, VanishingCycles};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn int_to_json(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integer literal is valid JSON"))
}

fn int_from_json(v: &Value, what: &str) -> Result<BigInt> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(parse_err(format!("{what}: expected an integer, got {v}"))),
    };
    BigInt::from_str(text.trim()).map_err(|_| parse_err(format!("{what}: '{text}' is not an integer")))
}

fn small_int(v: &Value, what: &str) -> Result<i64> {
    let big = int_from_json(v, what)?;
    i64::try_from(&big).map_err(|_| parse_err(format!("{what}: {big} is out of range")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err(format!("{what}: expected an object")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what}: expected an array")))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| parse_err(format!("{what}: missing field '{key}'")))
}

fn string(v: &Value, what: &str) -> Result<String> {
    v.as_str()
        .map(str::to_string)
        .ok_or_else(|| parse_err(format!("{what}: expected a string")))
}

// Laurent coefficients: {"<exp>": <int>, ...}

pub fn laurent_to_json(p: &LaurentInt) -> Value {
    let map: Map<String, Value> = p.terms().map(|(e, c)| (e.to_string(), int_to_json(c))).collect();
    Value::Object(map)
}

pub fn laurent_from_json(v: &Value) -> Result<LaurentInt> {
    let mut out = LaurentInt::zero();
    for (k, c) in object(v, "coeff")? {
        let exp = i64::from_str(k.trim())
            .map_err(|_| parse_err(format!("coeff: exponent key '{k}' is not an integer")))?;
        out.add_term(exp, int_from_json(c, "coeff")?);
    }
    Ok(out)
}

// E-polynomials: {"(i,j)": <int>, ...}

pub fn epoly_to_json(e: &EPoly) -> Value {
    let map: Map<String, Value> =
        e.terms().map(|((i, j), c)| (format!("({i},{j})"), int_to_json(c))).collect();
    Value::Object(map)
}

pub fn epoly_from_json(v: &Value) -> Result<EPoly> {
    let mut out = EPoly::zero();
    for (k, c) in object(v, "epoly")? {
        let bad = || parse_err(format!("epoly: key '{k}' is not of the form (i,j)"));
        let inner = k.trim().strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
        let (i, j) = inner.split_once(',').ok_or_else(bad)?;
        let i = i64::from_str(i.trim()).map_err(|_| bad())?;
        let j = i64::from_str(j.trim()).map_err(|_| bad())?;
        out.add_term(i, j, int_from_json(c, "epoly")?);
    }
    Ok(out)
}

// Classes

fn opaque_to_json(o: &Opaque) -> Value {
    let mut m = Map::new();
    m.insert("tag".into(), Value::String(o.tag.clone()));
    m.insert("chi".into(), int_to_json(&o.chi));
    if let Some(e) = &o.epoly {
        m.insert("epoly".into(), epoly_to_json(e));
    }
    if o.equivariant {
        m.insert("equivariant".into(), Value::Bool(true));
    }
    json!({ "opq": Value::Object(m) })
}

fn factor_to_json(f: &AtomFactor) -> Value {
    match f {
        AtomFactor::Orb(d) => json!({ "orb": d }),
        AtomFactor::Fermat { n, r } => json!({ "FER": [n, r] }),
        AtomFactor::FermatTrivial { n, r } => json!({ "fer": [n, r] }),
        AtomFactor::Opaque(o) => opaque_to_json(o),
    }
}

fn pair(v: &Value, what: &str) -> Result<(i64, i64)> {
    match array(v, what)?.as_slice() {
        [a, b] => Ok((small_int(a, what)?, small_int(b, what)?)),
        _ => Err(parse_err(format!("{what}: expected [n, r]"))),
    }
}

fn opaque_from_json(v: &Value) -> Result<Opaque> {
    let m = object(v, "opq")?;
    let equivariant = match m.get("equivariant") {
        None => false,
        Some(b) => b.as_bool().ok_or_else(|| parse_err("opq: 'equivariant' must be a boolean"))?,
    };
    Ok(Opaque {
        tag: string(field(m, "tag", "opq")?, "opq tag")?,
        chi: int_from_json(field(m, "chi", "opq")?, "opq chi")?,
        epoly: m.get("epoly").map(epoly_from_json).transpose()?,
        equivariant,
    })
}

fn raw_factor_from_json(v: &Value) -> Result<RawFactor> {
    let m = object(v, "factor")?;
    if m.len() != 1 {
        return Err(parse_err(format!("factor: expected exactly one key, got {v}")));
    }
    let (k, body) = m.iter().next().expect("one entry");
    match k.as_str() {
        "orb" => Ok(RawFactor::Orb(small_int(body, "orb")?)),
        "gm" => Ok(RawFactor::Torus(small_int(body, "gm")?)),
        "FER" => pair(body, "FER").map(|(n, r)| RawFactor::Fermat { n, r }),
        "fer" => pair(body, "fer").map(|(n, r)| RawFactor::FermatTrivial { n, r }),
        "opq" => opaque_from_json(body).map(RawFactor::Opaque),
        other => Err(parse_err(format!("factor: unknown kind '{other}'"))),
    }
}

pub fn class_to_json(c: &MuClass) -> Value {
    let terms: Vec<Value> = c
        .terms()
        .map(|(atom, p)| {
            let factors: Vec<Value> = atom.factors().iter().map(factor_to_json).collect();
            json!({ "coeff": laurent_to_json(p), "factors": factors })
        })
        .collect();
    json!({ "terms": terms })
}

pub fn raw_class_from_json(v: &Value) -> Result<RawClass> {
    let m = object(v, "class")?;
    let mut terms = Vec::new();
    for t in array(field(m, "terms", "class")?, "class terms")? {
        let tm = object(t, "term")?;
        let coeff = match tm.get("coeff") {
            Some(c) => laurent_from_json(c)?,
            None => LaurentInt::one(),
        };
        let factors = match tm.get("factors") {
            Some(fs) => array(fs, "factors")?.iter().map(raw_factor_from_json).collect::<Result<_>>()?,
            None => Vec::new(),
        };
        terms.push(RawTerm { coeff, factors });
    }
    Ok(RawClass { terms })
}

/// Parses and normalizes.
pub fn class_from_json(v: &Value) -> Result<MuClass> {
    normalize(&raw_class_from_json(v)?)
}

// A^1-classes

pub fn point_to_json(a: &BasePoint) -> Value {
    Value::String(a.to_string())
}

pub fn point_from_json(v: &Value) -> Result<BasePoint> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => n.to_string().parse(),
        _ => Err(parse_err(format!("point: expected a rational string or integer, got {v}"))),
    }
}

pub fn a1_to_json(f: &A1Class) -> Value {
    let support: Vec<Value> = f
        .points()
        .map(|(a, c)| json!({ "point": point_to_json(a), "class": class_to_json(c) }))
        .collect();
    json!({ "support": support })
}

pub fn a1_from_json(v: &Value) -> Result<A1Class> {
    let m = object(v, "a1 class")?;
    let mut out = A1Class::zero();
    for entry in array(field(m, "support", "a1 class")?, "support")? {
        let e = object(entry, "support entry")?;
        let point = point_from_json(field(e, "point", "support entry")?)?;
        let class = class_from_json(field(e, "class", "support entry")?)?;
        out.add_at(point, &class);
    }
    Ok(out)
}

// Resolution data

pub fn datum_to_json(d: &SncDatum) -> Value {
    let components: Vec<Value> =
        d.components.iter().map(|c| json!({ "id": c.id, "m": c.multiplicity })).collect();
    let strata: Vec<Value> = d
        .strata
        .iter()
        .map(|s| {
            json!({
                "I": s.index_set.iter().collect::<Vec<_>>(),
                "base": class_to_json(&s.base),
                "cover": class_to_json(&s.cover),
                "locus": s.locus.as_str(),
            })
        })
        .collect();
    json!({
        "components": components,
        "strata": strata,
        "fiber_regular": class_to_json(&d.fiber_regular),
        "fiber_singular": class_to_json(&d.fiber_singular),
    })
}

fn locus_from_json(v: &Value) -> Result<Locus> {
    match v.as_str() {
        Some("regular") => Ok(Locus::Regular),
        Some("singular") => Ok(Locus::Singular),
        _ => Err(parse_err(format!("locus: expected \"regular\" or \"singular\", got {v}"))),
    }
}

pub fn datum_from_json(v: &Value) -> Result<SncDatum> {
    let m = object(v, "datum")?;
    let mut components = Vec::new();
    for c in array(field(m, "components", "datum")?, "components")? {
        let cm = object(c, "component")?;
        let mult = small_int(field(cm, "m", "component")?, "multiplicity")?;
        let multiplicity = u64::try_from(mult)
            .map_err(|_| Error::Validation(format!("multiplicity must be nonnegative, got {mult}")))?;
        components.push(Component { id: string(field(cm, "id", "component")?, "component id")?, multiplicity });
    }
    let mut strata = Vec::new();
    for s in array(field(m, "strata", "datum")?, "strata")? {
        let sm = object(s, "stratum")?;
        let index_set = array(field(sm, "I", "stratum")?, "stratum I")?
            .iter()
            .map(|id| string(id, "stratum I"))
            .collect::<Result<_>>()?;
        strata.push(Stratum {
            index_set,
            base: class_from_json(field(sm, "base", "stratum")?)?,
            cover: class_from_json(field(sm, "cover", "stratum")?)?,
            locus: locus_from_json(field(sm, "locus", "stratum")?)?,
        });
    }
    Ok(SncDatum {
        components,
        strata,
        fiber_regular: class_from_json(field(m, "fiber_regular", "datum")?)?,
        fiber_singular: class_from_json(field(m, "fiber_singular", "datum")?)?,
    })
}

pub fn vanishing_to_json(v: &VanishingCycles) -> Value {
    json!({ "phi": class_to_json(&v.phi), "phi_regular": class_to_json(&v.phi_regular) })
}

// Generators and presentations

pub fn generator_to_json(g: &Generator) -> Value {
    match g {
        Generator::Resolved { criticals } => {
            let cs: Vec<Value> = criticals
                .iter()
                .map(|(a, d)| json!({ "point": point_to_json(a), "datum": datum_to_json(d) }))
                .collect();
            json!({ "resolved": { "criticals": cs } })
        }
        Generator::Constant { value, fiber_class } => json!({
            "constant": { "value": point_to_json(value), "fiber_class": class_to_json(fiber_class) }
        }),
        Generator::SmoothProper => json!("smooth_proper"),
    }
}

pub fn generator_from_json(v: &Value) -> Result<Generator> {
    if v.as_str() == Some("smooth_proper") {
        return Ok(Generator::SmoothProper);
    }
    let m = object(v, "generator")?;
    if let Some(r) = m.get("resolved") {
        let rm = object(r, "resolved")?;
        let mut criticals = Vec::new();
        for c in array(field(rm, "criticals", "resolved")?, "criticals")? {
            let cm = object(c, "critical")?;
            criticals.push((
                point_from_json(field(cm, "point", "critical")?)?,
                datum_from_json(field(cm, "datum", "critical")?)?,
            ));
        }
        return Ok(Generator::Resolved { criticals });
    }
    if let Some(c) = m.get("constant") {
        let cm = object(c, "constant")?;
        return Ok(Generator::Constant {
            value: point_from_json(field(cm, "value", "constant")?)?,
            fiber_class: class_from_json(field(cm, "fiber_class", "constant")?)?,
        });
    }
    if m.contains_key("smooth_proper") {
        return Ok(Generator::SmoothProper);
    }
    Err(parse_err("generator: expected 'resolved', 'constant' or \"smooth_proper\""))
}

pub fn presentation_to_json(p: &Presentation) -> Value {
    let terms: Vec<Value> = p
        .terms
        .iter()
        .map(|(c, g)| json!({ "coeff": c, "generator": generator_to_json(g) }))
        .collect();
    json!({ "terms": terms })
}

pub fn presentation_from_json(v: &Value) -> Result<Presentation> {
    let m = object(v, "presentation")?;
    let mut terms = Vec::new();
    for t in array(field(m, "terms", "presentation")?, "presentation terms")? {
        let tm = object(t, "presentation term")?;
        let coeff = match tm.get("coeff") {
            Some(c) => small_int(c, "presentation coeff")?,
            None => 1,
        };
        terms.push((coeff, generator_from_json(field(tm, "generator", "presentation term")?)?));
    }
    Ok(Presentation { terms })
}
