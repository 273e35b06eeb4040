//! JSON schemas for every externally visible object. Scalars travel as
//! exact strings ("p/q", "p/q+r/si", "w,x,y,z"), matrices as row-major
//! arrays of such strings. All emitters are byte-stable for equal inputs.

use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::ftriple::{FQuatTriple, GroupElement};
use crate::matrix::Matrix;
use crate::models::{Decomposition, FactorSpec};
use crate::pencil::{CokernelPart, Pair, SheafReport, SplittingType};
use crate::scalar::{GaussianRational, Quaternion, Rational};
use crate::structures::HypercomplexStructure;
use crate::subspace::Subspace;
use crate::{QMatrix, QSubspace};

fn parse_err(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, got {v}"))
}

pub fn rational_matrix_to_json(m: &QMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    m.row(r)
                        .iter()
                        .map(|x| Value::String(x.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn rational_matrix_from_json(v: &Value, cols_hint: Option<usize>) -> Result<QMatrix> {
    let rows = v.as_array().ok_or_else(|| parse_err("matrix array", v))?;
    if rows.is_empty() {
        return Ok(Matrix::zero(0, cols_hint.unwrap_or(0)));
    }
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(rows.len());
    for row in rows {
        let cells = row.as_array().ok_or_else(|| parse_err("matrix row", row))?;
        let mut r = Vec::with_capacity(cells.len());
        for cell in cells {
            let s = cell.as_str().ok_or_else(|| parse_err("rational string", cell))?;
            r.push(crate::scalar::parse_rational(s)?);
        }
        out.push(r);
    }
    let cols = out[0].len();
    if out.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("ragged matrix rows".into()));
    }
    if let Some(hint) = cols_hint {
        if cols != hint {
            return Err(Error::Parse(format!(
                "matrix has {cols} columns, expected {hint}"
            )));
        }
    }
    Ok(Matrix::from_rows(out))
}

pub fn gaussian_matrix_to_json(m: &Matrix<GaussianRational>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    m.row(r)
                        .iter()
                        .map(|x| Value::String(x.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn structure_to_json(s: &HypercomplexStructure) -> Value {
    json!({
        "dim": s.dim(),
        "I": rational_matrix_to_json(s.i_op()),
        "J": rational_matrix_to_json(s.j_op()),
        "K": rational_matrix_to_json(s.k_op()),
    })
}

pub fn structure_from_json(v: &Value) -> Result<HypercomplexStructure> {
    let obj = v.as_object().ok_or_else(|| parse_err("structure object", v))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("dim", v))? as usize;
    if dim == 0 {
        return Ok(HypercomplexStructure::trivial());
    }
    let get = |key: &str| -> Result<QMatrix> {
        rational_matrix_from_json(
            obj.get(key)
                .ok_or_else(|| Error::Parse(format!("missing {key}")))?,
            Some(dim),
        )
    };
    HypercomplexStructure::new(get("I")?, get("J")?, get("K")?)
}

pub fn subspace_to_json(s: &QSubspace) -> Value {
    rational_matrix_to_json(s.basis())
}

pub fn subspace_from_json(v: &Value, ambient: usize) -> Result<QSubspace> {
    let basis = rational_matrix_from_json(v, Some(ambient))?;
    if basis.rows() == 0 {
        return Ok(Subspace::zero(ambient));
    }
    Ok(Subspace::span(ambient, &basis))
}

pub fn pair_to_json(p: &Pair) -> Value {
    json!({
        "structure": structure_to_json(p.structure()),
        "subspace": subspace_to_json(p.subspace()),
    })
}

pub fn pair_from_json(v: &Value) -> Result<Pair> {
    let obj = v.as_object().ok_or_else(|| parse_err("pair object", v))?;
    let structure = structure_from_json(
        obj.get("structure")
            .ok_or_else(|| Error::Parse("missing structure".into()))?,
    )?;
    let subspace = subspace_from_json(
        obj.get("subspace")
            .ok_or_else(|| Error::Parse("missing subspace".into()))?,
        structure.dim(),
    )?;
    Pair::new(structure, subspace)
}

pub fn splitting_to_json(s: &SplittingType) -> Value {
    Value::Array(s.degrees().iter().map(|&d| json!(d)).collect())
}

fn splitting_from_json(v: &Value) -> Result<SplittingType> {
    let arr = v.as_array().ok_or_else(|| parse_err("degree array", v))?;
    let mut degrees = Vec::with_capacity(arr.len());
    for d in arr {
        degrees.push(d.as_i64().ok_or_else(|| parse_err("degree", d))?);
    }
    Ok(SplittingType::new(degrees))
}

pub fn report_to_json(r: &SheafReport) -> Value {
    let plus = match &r.plus {
        CokernelPart::Bundle(s) => splitting_to_json(s),
        CokernelPart::Torsion(factors) => json!({ "torsion": factors }),
    };
    json!({
        "cr": r.is_cr,
        "cocr": r.is_co_cr,
        "minus": splitting_to_json(&r.minus),
        "plus": plus,
    })
}

pub fn report_from_json(v: &Value) -> Result<SheafReport> {
    let obj = v.as_object().ok_or_else(|| parse_err("report object", v))?;
    let is_cr = obj
        .get("cr")
        .and_then(Value::as_bool)
        .ok_or_else(|| parse_err("cr flag", v))?;
    let is_co_cr = obj
        .get("cocr")
        .and_then(Value::as_bool)
        .ok_or_else(|| parse_err("cocr flag", v))?;
    let minus = splitting_from_json(
        obj.get("minus")
            .ok_or_else(|| Error::Parse("missing minus".into()))?,
    )?;
    let plus_v = obj
        .get("plus")
        .ok_or_else(|| Error::Parse("missing plus".into()))?;
    let plus = if plus_v.is_array() {
        CokernelPart::Bundle(splitting_from_json(plus_v)?)
    } else {
        let factors = plus_v
            .get("torsion")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("torsion marker", plus_v))?;
        CokernelPart::Torsion(
            factors
                .iter()
                .map(|f| {
                    f.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| parse_err("factor string", f))
                })
                .collect::<Result<Vec<_>>>()?,
        )
    };
    Ok(SheafReport {
        is_cr,
        is_co_cr,
        minus,
        plus,
    })
}

pub fn decomposition_to_json(d: &Decomposition) -> Value {
    Value::Array(
        d.factors()
            .iter()
            .map(|f| {
                let (tag, k) = match f {
                    FactorSpec::CoV(k) => ("CoV", *k),
                    FactorSpec::CoVp(k) => ("CoVp", *k),
                    FactorSpec::CrV(k) => ("CrV", *k),
                    FactorSpec::CrVp(k) => ("CrVp", *k),
                };
                json!({ "tag": tag, "k": k })
            })
            .collect(),
    )
}

pub fn decomposition_from_json(v: &Value) -> Result<Decomposition> {
    let arr = v.as_array().ok_or_else(|| parse_err("factor array", v))?;
    let mut factors = Vec::with_capacity(arr.len());
    for f in arr {
        factors.push(factor_from_json(f)?);
    }
    Decomposition::new(factors)
}

pub fn factor_from_json(v: &Value) -> Result<FactorSpec> {
    let tag = v
        .get("tag")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("factor tag", v))?;
    let k = v
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("factor index", v))? as u32;
    factor_from_parts(tag, k)
}

pub fn factor_from_parts(tag: &str, k: u32) -> Result<FactorSpec> {
    let f = match tag {
        "CoV" => FactorSpec::CoV(k),
        "CoVp" => FactorSpec::CoVp(k),
        "CrV" => FactorSpec::CrV(k),
        "CrVp" => FactorSpec::CrVp(k),
        other => return Err(Error::Parse(format!("unknown factor tag {other:?}"))),
    };
    f.validate()?;
    Ok(f)
}

pub fn triple_to_json(t: &FQuatTriple) -> Value {
    json!({
        "structure": structure_to_json(t.structure()),
        "u": subspace_to_json(t.u()),
        "v": subspace_to_json(t.v()),
    })
}

pub fn triple_from_json(v: &Value) -> Result<FQuatTriple> {
    let obj = v.as_object().ok_or_else(|| parse_err("triple object", v))?;
    let structure = structure_from_json(
        obj.get("structure")
            .ok_or_else(|| Error::Parse("missing structure".into()))?,
    )?;
    let dim = structure.dim();
    let u = subspace_from_json(
        obj.get("u").ok_or_else(|| Error::Parse("missing u".into()))?,
        dim,
    )?;
    let v_sub = subspace_from_json(
        obj.get("v").ok_or_else(|| Error::Parse("missing v".into()))?,
        dim,
    )?;
    FQuatTriple::new(structure, u, v_sub)
}

fn quaternion_matrix_to_json(m: &Matrix<Quaternion>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    m.row(r)
                        .iter()
                        .map(|q| Value::String(q.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn quaternion_matrix_from_json(v: &Value) -> Result<Matrix<Quaternion>> {
    let rows = v.as_array().ok_or_else(|| parse_err("quaternion matrix", v))?;
    if rows.is_empty() {
        return Ok(Matrix::zero(0, 0));
    }
    let mut out: Vec<Vec<Quaternion>> = Vec::with_capacity(rows.len());
    for row in rows {
        let cells = row.as_array().ok_or_else(|| parse_err("matrix row", row))?;
        let mut r = Vec::with_capacity(cells.len());
        for cell in cells {
            let s = cell
                .as_str()
                .ok_or_else(|| parse_err("quaternion string", cell))?;
            r.push(Quaternion::from_str(s)?);
        }
        out.push(r);
    }
    Ok(Matrix::from_rows(out))
}

pub fn group_element_to_json(g: &GroupElement) -> Value {
    json!({
        "A": rational_matrix_to_json(g.a()),
        "q": g.q().to_string(),
        "B": quaternion_matrix_to_json(g.b()),
    })
}

pub fn group_element_from_json(v: &Value) -> Result<GroupElement> {
    let obj = v.as_object().ok_or_else(|| parse_err("group element", v))?;
    let a = rational_matrix_from_json(
        obj.get("A").ok_or_else(|| Error::Parse("missing A".into()))?,
        None,
    )?;
    let q = Quaternion::from_str(
        obj.get("q")
            .and_then(Value::as_str)
            .ok_or_else(|| parse_err("q string", v))?,
    )?;
    let b = quaternion_matrix_from_json(
        obj.get("B").ok_or_else(|| Error::Parse("missing B".into()))?,
    )?;
    GroupElement::new(a, q, b)
}

/// Structured error document for the CLI: names the originating module.
pub fn error_to_json(e: &Error) -> Value {
    let mut obj = Map::new();
    obj.insert("module".into(), Value::String(e.module().into()));
    obj.insert("error".into(), Value::String(e.to_string()));
    if let Error::TorsionDetected { factors } = e {
        obj.insert(
            "torsion".into(),
            Value::Array(factors.iter().map(|f| Value::String(f.clone())).collect()),
        );
    }
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::model_v;
    use crate::pencil::analyze_pair;

    #[test]
    fn pair_round_trip() {
        let p = model_v(2).unwrap();
        let v = pair_to_json(&p);
        let back = pair_from_json(&v).unwrap();
        assert_eq!(&back, &p);
    }

    #[test]
    fn report_round_trip() {
        let p = model_v(1).unwrap();
        let r = analyze_pair(&p).unwrap();
        let v = report_to_json(&r);
        assert_eq!(report_from_json(&v).unwrap(), r);
        assert_eq!(v["cocr"], Value::Bool(true));
        assert_eq!(v["plus"], json!([2]));
    }

    #[test]
    fn torsion_report_round_trip() {
        let r = SheafReport {
            is_cr: false,
            is_co_cr: false,
            minus: SplittingType::empty(),
            plus: CokernelPart::Torsion(vec!["z".into(), "inf^1".into()]),
        };
        let v = report_to_json(&r);
        assert_eq!(report_from_json(&v).unwrap(), r);
    }

    #[test]
    fn decomposition_round_trip() {
        let d = Decomposition::new(vec![FactorSpec::CoV(2), FactorSpec::CoVp(0)]).unwrap();
        let v = decomposition_to_json(&d);
        assert_eq!(decomposition_from_json(&v).unwrap(), d);
    }

    #[test]
    fn triple_round_trip() {
        let t = crate::models::model_f_triple(1, 1).unwrap();
        let v = triple_to_json(&t);
        assert_eq!(&triple_from_json(&v).unwrap(), &t);
    }

    #[test]
    fn group_element_round_trip() {
        use crate::scalar::rat_int;
        let g = GroupElement::new(
            Matrix::identity(1),
            Quaternion::from_ints(0, 0, 1, 0),
            Matrix::from_rows(vec![vec![Quaternion::from_ints(1, 2, 0, 0)]]),
        )
        .unwrap();
        let v = group_element_to_json(&g);
        let back = group_element_from_json(&v).unwrap();
        assert_eq!(back.q(), g.q());
        assert_eq!(back.a()[(0, 0)], rat_int(1));
    }

    #[test]
    fn malformed_inputs_are_parse_errors() {
        assert!(matches!(
            pair_from_json(&json!({"structure": 3})),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            rational_matrix_from_json(&json!([["1", "2"], ["3"]]), None),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            factor_from_parts("Nope", 1),
            Err(Error::Parse(_))
        ));
    }
}
