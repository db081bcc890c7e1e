//! A JSON form of Hall and iHall elements that parses back to the same
//! element: each term carries the full `kQ`-module, so class ids never leak
//! into the output.

use std::str::FromStr;

use ihall_core::exactarith::QuadCoeff;
use ihall_core::hallcore::{HallAlgebra, HallElement};
use ihall_core::ihallalg::{IHall, IHallElement};
use ihall_core::repmod::{ModCat, RepSpec};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// `rational + v * v_part` with `v^2 = q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub rational: String,
    pub v_part: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub module: RepSpecJson,
    /// Torus exponent; empty for plain Hall elements.
    pub alpha: Vec<i64>,
    pub coeff: CoeffJson,
}

/// Module data as in module files: dimensions per vertex, matrices per arrow.
pub type RepSpecJson = serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub q: u32,
    pub terms: Vec<TermJson>,
}

fn coeff_json(c: &QuadCoeff) -> CoeffJson {
    CoeffJson {
        rational: c.a.to_string(),
        v_part: c.b.to_string(),
    }
}

fn coeff_parse(c: &CoeffJson, q: u32) -> Result<QuadCoeff, CliError> {
    let num = |s: &str| BigRational::from_str(s).map_err(|e| CliError::Input(format!("coefficient `{s}`: {e}")));
    Ok(QuadCoeff::new(num(&c.rational)?, num(&c.v_part)?, q))
}

fn module_json(cat: &ModCat, id: usize) -> Result<RepSpecJson, CliError> {
    let rep = &cat.class(id).rep;
    serde_json::from_str(&rep.to_json(&cat.bq)).map_err(|e| CliError::Internal(e.to_string()))
}

fn module_id(cat: &ModCat, m: &RepSpecJson) -> Result<usize, CliError> {
    let spec: RepSpec = serde_json::from_value(m.clone()).map_err(|e| CliError::Input(e.to_string()))?;
    let rep = spec.build(&cat.bq, cat.q)?;
    Ok(cat.identify(&rep)?)
}

pub fn ihall_to_json(h: &IHall, x: &IHallElement) -> Result<ElementJson, CliError> {
    let terms = x
        .terms
        .iter()
        .map(|((id, alpha), c)| {
            Ok(TermJson {
                module: module_json(&h.kq, *id)?,
                alpha: alpha.clone(),
                coeff: coeff_json(c),
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(ElementJson { q: h.q(), terms })
}

pub fn ihall_from_json(h: &IHall, e: &ElementJson) -> Result<IHallElement, CliError> {
    if e.q != h.q() {
        return Err(CliError::Input(format!("element over q = {}, algebra over q = {}", e.q, h.q())));
    }
    let mut x = IHallElement::zero();
    for t in &e.terms {
        if t.alpha.len() != h.n() {
            return Err(CliError::Input(format!("torus exponent {:?} has the wrong length", t.alpha)));
        }
        let id = module_id(&h.kq, &t.module)?;
        x.add_term((id, t.alpha.clone()), &coeff_parse(&t.coeff, e.q)?);
    }
    Ok(x)
}

pub fn hall_to_json(h: &HallAlgebra, x: &HallElement) -> Result<ElementJson, CliError> {
    let terms = x
        .terms
        .iter()
        .map(|(id, c)| {
            Ok(TermJson {
                module: module_json(&h.cat, *id)?,
                alpha: Vec::new(),
                coeff: coeff_json(c),
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(ElementJson { q: h.q(), terms })
}

pub fn hall_from_json(h: &HallAlgebra, e: &ElementJson) -> Result<HallElement, CliError> {
    if e.q != h.q() {
        return Err(CliError::Input(format!("element over q = {}, algebra over q = {}", e.q, h.q())));
    }
    let mut x = HallElement::zero();
    for t in &e.terms {
        if !t.alpha.is_empty() {
            return Err(CliError::Input("Hall elements carry no torus part".into()));
        }
        x.add_term(module_id(&h.cat, &t.module)?, &coeff_parse(&t.coeff, e.q)?);
    }
    Ok(x)
}
