//! Canonical JSON/text encodings shared by the CLI and the serialization
//! surface: rationals as decimal-free `"num/den"` strings, vectors as arrays
//! of those, root systems with their Gram data. All output is deterministic
//! (struct field order, sorted sets, canonical rational strings).

use crate::linalg::{is_int, Rat};
use crate::rootsys::{RootSystem, Vector};
use crate::{Error, Result};
use num::bigint::BigInt;
use serde_json::{json, Value};
use std::str::FromStr;

/// Canonical string form of a rational: `"n"` for integers, `"n/d"` otherwise
/// (always reduced, denominator positive).
pub fn rat_string(x: &Rat) -> String {
    if is_int(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse a rational from `"n"`, `"n/d"` or a JSON integer.
pub fn rat_from_value(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::invalid(format!("non-integer numeric literal {n}")))?;
            Ok(Rat::from(BigInt::from(i)))
        }
        Value::String(s) => rat_from_str(s),
        _ => Err(Error::invalid(format!("expected rational, got {v}"))),
    }
}

pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num = BigInt::from_str(n.trim())
            .map_err(|_| Error::invalid(format!("bad numerator in {s:?}")))?;
        let den = BigInt::from_str(d.trim())
            .map_err(|_| Error::invalid(format!("bad denominator in {s:?}")))?;
        if den == BigInt::from(0) {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Rat::new(num, den))
    } else {
        let num =
            BigInt::from_str(s).map_err(|_| Error::invalid(format!("bad rational {s:?}")))?;
        Ok(Rat::from(num))
    }
}

pub fn vector_to_value(v: &Vector) -> Value {
    Value::Array(v.coords.iter().map(|c| Value::String(rat_string(c))).collect())
}

pub fn vector_from_value(v: &Value, rank: usize) -> Result<Vector> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::invalid(format!("expected coordinate array, got {v}")))?;
    if arr.len() != rank {
        return Err(Error::invalid(format!(
            "expected {rank} coordinates, got {}",
            arr.len()
        )));
    }
    Ok(Vector::new(
        arr.iter().map(rat_from_value).collect::<Result<Vec<_>>>()?,
    ))
}

/// Integer coordinate array for roots.
pub fn root_coords_value(rs: &RootSystem, root: usize) -> Value {
    Value::Array(
        rs.roots[root]
            .iter()
            .map(|&c| Value::Number(c.into()))
            .collect(),
    )
}

/// Look up a root by its coordinate array (integers or rational strings).
pub fn root_from_value(rs: &RootSystem, v: &Value) -> Result<usize> {
    let vec = vector_from_value(v, rs.rank)?;
    rs.index_of_vector(&vec)
        .ok_or_else(|| Error::invalid(format!("{vec} is not a root of the system")))
}

/// Documented JSON form of a root system: schema version, type string when
/// known, Gram matrix, and the root list (integer coordinates, positives
/// first).
pub fn root_system_to_value(rs: &RootSystem) -> Value {
    json!({
        "schema": 1,
        "type": rs.cartan_type.as_ref().map(|t| t.to_string()),
        "rank": rs.rank,
        "gram": rs.gram.iter()
            .map(|row| Value::Array(row.iter().map(|x| Value::String(rat_string(x))).collect()))
            .collect::<Vec<_>>(),
        "n_positive": rs.n_positive,
        "roots": (0..rs.num_roots()).map(|r| root_coords_value(rs, r)).collect::<Vec<_>>(),
    })
}

// --- schemas for the subgroup parameterisations -----------------------------

use crate::affine::{AffRoot, AlcoveIneq, ExtAffElement};
use crate::refsub::{AdmComponent, AdmKind, AdmissibleLattice, GFPair, PsiXPair};
use std::collections::{BTreeMap, BTreeSet};

/// `{"schema":1, "gamma":[[coords]...], "f":[ints]}`, labels aligned with
/// the member order.
pub fn gf_to_value(rs: &RootSystem, p: &GFPair) -> Value {
    json!({
        "schema": 1,
        "gamma": p.gamma.iter().map(|&r| root_coords_value(rs, r)).collect::<Vec<_>>(),
        "f": p.gamma.iter().map(|&r| Value::Number(p.f[&r].into())).collect::<Vec<_>>(),
    })
}

pub fn gf_from_value(rs: &RootSystem, v: &Value) -> Result<GFPair> {
    let gamma_v = v
        .get("gamma")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::invalid("missing \"gamma\" array"))?;
    let f_v = v
        .get("f")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::invalid("missing \"f\" array"))?;
    if gamma_v.len() != f_v.len() {
        return Err(Error::invalid("\"gamma\" and \"f\" must have equal length"));
    }
    let mut gamma = BTreeSet::new();
    let mut f = BTreeMap::new();
    for (gv, fv) in gamma_v.iter().zip(f_v) {
        let root = root_from_value(rs, gv)?;
        let label = fv
            .as_i64()
            .ok_or_else(|| Error::invalid("labels must be integers"))?;
        if gamma.contains(&root) {
            return Err(Error::invalid("duplicate member in \"gamma\""));
        }
        gamma.insert(root);
        f.insert(root, label);
    }
    crate::refsub::validate_gf(rs, &gamma, &f)
}

/// `{"schema":1, "psi":[[coords]...], "a":[rationals], "xprime":[{kind,m}...]}`.
/// The `psi` list may give generators; the subsystem closure is taken.
/// `xprime` entries follow the component order of the closed subsystem
/// (blocks sorted by smallest root index).
pub fn psix_to_value(rs: &RootSystem, p: &PsiXPair) -> Value {
    json!({
        "schema": 1,
        "psi": p.psi.iter().map(|&r| root_coords_value(rs, r)).collect::<Vec<_>>(),
        "a": vector_to_value(&p.a),
        "xprime": p.xprime.comps.iter().map(|c| json!({
            "kind": match c.kind { AdmKind::Zero => "zero", AdmKind::P => "P", AdmKind::PCirc => "Pcirc" },
            "m": c.m,
        })).collect::<Vec<_>>(),
    })
}

pub fn psix_from_value(rs: &RootSystem, v: &Value) -> Result<PsiXPair> {
    let psi_v = v
        .get("psi")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::invalid("missing \"psi\" array"))?;
    let mut psi = BTreeSet::new();
    for rv in psi_v {
        psi.insert(root_from_value(rs, rv)?);
    }
    let a = vector_from_value(
        v.get("a").ok_or_else(|| Error::invalid("missing \"a\""))?,
        rs.rank,
    )?;
    let x_v = v
        .get("xprime")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::invalid("missing \"xprime\" array"))?;
    let mut comps = Vec::new();
    for cv in x_v {
        let kind = match cv.get("kind").and_then(Value::as_str) {
            Some("zero") => AdmKind::Zero,
            Some("P") => AdmKind::P,
            Some("Pcirc") => AdmKind::PCirc,
            other => {
                return Err(Error::invalid(format!(
                    "xprime kind must be \"zero\", \"P\" or \"Pcirc\", got {other:?}"
                )))
            }
        };
        let m = cv.get("m").and_then(Value::as_i64).unwrap_or(0);
        comps.push(AdmComponent { kind, m });
    }
    crate::refsub::validate_psix(rs, &psi, &a, &AdmissibleLattice { comps })
}

pub fn affroot_to_value(rs: &RootSystem, x: &AffRoot) -> Value {
    json!({ "root": root_coords_value(rs, x.root), "level": x.level })
}

pub fn ineq_to_value(i: &AlcoveIneq) -> Value {
    json!({
        "normal": vector_to_value(&i.normal),
        "constant": rat_string(&i.constant),
        "strict": i.strict,
    })
}

pub fn extaff_to_value(e: &ExtAffElement) -> Value {
    json!({
        "matrix": e.w.matrix.iter()
            .map(|row| Value::Array(row.iter().map(|&x| Value::Number(x.into())).collect()))
            .collect::<Vec<_>>(),
        "translation": vector_to_value(&e.gamma),
    })
}
