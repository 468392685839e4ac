//! JSON encoding of polynomials.
//!
//! ```json
//! {"vars":["X","Y"],"terms":[{"e":[2,0],"c":"1/1"},{"e":[0,2],"c":"-1/1"}]}
//! {"vars":["X","Y","t"],"terms":[{"e":[1,1],"c":[[1,"1/1"]]}]}
//! ```
//!
//! Terms are written in lexicographic exponent order and coefficients in
//! reduced `num/den` form, so encoding a decoded document reproduces it
//! byte for byte whenever the input was itself canonical.

use serde::{Deserialize, Serialize};

use super::poly::{BiPoly, Exponent, ParamPoly};
use super::rational::{format_rational, parse_rational, Rational};
use super::tpoly::TPoly;

#[derive(Debug, thiserror::Error)]
pub enum PolyJsonError {
    #[error("malformed polynomial JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unsupported variable list {0:?}; expected [\"X\",\"Y\"] or [\"X\",\"Y\",\"t\"]")]
    Vars(Vec<String>),
    #[error("coefficient {0:?} is not a rational literal")]
    Coefficient(String),
    #[error("exponent ({0},{1}) appears more than once")]
    Duplicate(u32, u32),
    #[error("t-power {0} appears more than once in one coefficient")]
    DuplicateTPower(u32),
    #[error("expected a {expected} coefficient for variables {vars:?}")]
    Kind { expected: &'static str, vars: Vec<String> },
}

#[derive(Serialize, Deserialize)]
struct Doc {
    vars: Vec<String>,
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    e: [u32; 2],
    c: CoeffDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffDoc {
    Scalar(String),
    Series(Vec<(u32, String)>),
}

/// A polynomial of either kind, as read from a file.
#[derive(Debug, Clone, PartialEq)]
pub enum Polynomial {
    Bi(BiPoly),
    Param(ParamPoly),
}

impl Polynomial {
    pub fn hessian(&self) -> Polynomial {
        match self {
            Polynomial::Bi(p) => Polynomial::Bi(p.hessian()),
            Polynomial::Param(p) => Polynomial::Param(p.hessian()),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Polynomial::Bi(p) => bipoly_to_json(p),
            Polynomial::Param(p) => parampoly_to_json(p),
        }
    }
}

fn parse_coeff(s: &str) -> Result<Rational, PolyJsonError> {
    parse_rational(s).map_err(|_| PolyJsonError::Coefficient(s.to_string()))
}

fn check_unique(seen: &mut std::collections::BTreeSet<Exponent>, e: Exponent) -> Result<(), PolyJsonError> {
    if !seen.insert(e) {
        return Err(PolyJsonError::Duplicate(e.i, e.j));
    }
    Ok(())
}

pub fn parse_polynomial(text: &str) -> Result<Polynomial, PolyJsonError> {
    let doc: Doc = serde_json::from_str(text)?;
    let vars: Vec<&str> = doc.vars.iter().map(String::as_str).collect();
    let mut seen = std::collections::BTreeSet::new();
    match vars.as_slice() {
        ["X", "Y"] => {
            let mut p = BiPoly::zero();
            for t in &doc.terms {
                let e = Exponent::new(t.e[0], t.e[1]);
                check_unique(&mut seen, e)?;
                let CoeffDoc::Scalar(c) = &t.c else {
                    return Err(PolyJsonError::Kind { expected: "scalar", vars: doc.vars.clone() });
                };
                p.add_term(e, parse_coeff(c)?);
            }
            Ok(Polynomial::Bi(p))
        }
        ["X", "Y", "t"] => {
            let mut p = ParamPoly::zero();
            for t in &doc.terms {
                let e = Exponent::new(t.e[0], t.e[1]);
                check_unique(&mut seen, e)?;
                let CoeffDoc::Series(series) = &t.c else {
                    return Err(PolyJsonError::Kind { expected: "t-series", vars: doc.vars.clone() });
                };
                let mut powers = std::collections::BTreeSet::new();
                let mut c = TPoly::zero();
                for (k, v) in series {
                    if !powers.insert(*k) {
                        return Err(PolyJsonError::DuplicateTPower(*k));
                    }
                    c.add_term(*k, parse_coeff(v)?);
                }
                p.add_term(e, c);
            }
            Ok(Polynomial::Param(p))
        }
        _ => Err(PolyJsonError::Vars(doc.vars.clone())),
    }
}

pub fn parse_bipoly(text: &str) -> Result<BiPoly, PolyJsonError> {
    match parse_polynomial(text)? {
        Polynomial::Bi(p) => Ok(p),
        Polynomial::Param(_) => {
            Err(PolyJsonError::Kind { expected: "scalar", vars: vec!["X".into(), "Y".into(), "t".into()] })
        }
    }
}

pub fn parse_parampoly(text: &str) -> Result<ParamPoly, PolyJsonError> {
    match parse_polynomial(text)? {
        Polynomial::Param(p) => Ok(p),
        Polynomial::Bi(p) => Ok(p.to_param()),
    }
}

pub fn bipoly_value(p: &BiPoly) -> serde_json::Value {
    serde_json::to_value(Doc {
        vars: vec!["X".into(), "Y".into()],
        terms: p.terms().map(|(e, c)| TermDoc { e: [e.i, e.j], c: CoeffDoc::Scalar(format_rational(c)) }).collect(),
    })
    .expect("polynomial document serializes")
}

pub fn parampoly_value(p: &ParamPoly) -> serde_json::Value {
    serde_json::to_value(Doc {
        vars: vec!["X".into(), "Y".into(), "t".into()],
        terms: p
            .terms()
            .map(|(e, c)| TermDoc {
                e: [e.i, e.j],
                c: CoeffDoc::Series(c.terms().map(|(k, v)| (k, format_rational(v))).collect()),
            })
            .collect(),
    })
    .expect("polynomial document serializes")
}

pub fn bipoly_to_json(p: &BiPoly) -> String {
    bipoly_value(p).to_string()
}

pub fn parampoly_to_json(p: &ParamPoly) -> String {
    parampoly_value(p).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::poly::bipoly;

    #[test]
    fn canonical_bipoly_text() {
        let p = bipoly(&[(0, 2, -1), (2, 0, 1)]);
        let s = bipoly_to_json(&p);
        assert_eq!(s, r#"{"vars":["X","Y"],"terms":[{"e":[0,2],"c":"-1/1"},{"e":[2,0],"c":"1/1"}]}"#);
        assert_eq!(parse_polynomial(&s).unwrap(), Polynomial::Bi(p));
    }

    #[test]
    fn param_round_trip() {
        let s =
            r#"{"vars":["X","Y","t"],"terms":[{"e":[0,0],"c":[[0,"1/1"]]},{"e":[1,1],"c":[[1,"-3/2"],[4,"1/1"]]}]}"#;
        let p = parse_polynomial(s).unwrap();
        assert_eq!(p.to_json(), s);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(parse_polynomial("{").is_err());
        assert!(parse_polynomial(r#"{"vars":["X"],"terms":[]}"#).is_err());
        assert!(parse_polynomial(r#"{"vars":["X","Y"],"terms":[{"e":[1,0],"c":"x"}]}"#).is_err());
        assert!(parse_polynomial(r#"{"vars":["X","Y"],"terms":[{"e":[1,0],"c":"1"},{"e":[1,0],"c":"2"}]}"#).is_err());
        assert!(parse_polynomial(r#"{"vars":["X","Y"],"terms":[{"e":[1,0],"c":[[0,"1"]]}]}"#).is_err());
    }

    #[test]
    fn noncanonical_input_is_normalized() {
        let p = parse_polynomial(r#"{"vars":["X","Y"],"terms":[{"e":[1,0],"c":"2/4"},{"e":[0,0],"c":"0"}]}"#).unwrap();
        assert_eq!(p.to_json(), r#"{"vars":["X","Y"],"terms":[{"e":[1,0],"c":"1/2"}]}"#);
    }
}
