//! JSON form: `{"vars": [...], "terms": [{"exp": [...], "num": "..", "den": ".."}]}`
//! with terms leading-first in graded-lex order.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{AlgError, Coef, LaurentPoly, RationalFn, VarSet};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i32>,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

impl From<&LaurentPoly> for PolyJson {
    fn from(p: &LaurentPoly) -> Self {
        PolyJson {
            vars: p.vars().names().to_vec(),
            terms: p
                .terms()
                .map(|(m, c)| TermJson {
                    exp: m.exponents().to_vec(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }
}

impl PolyJson {
    pub fn into_poly(self, vars: Option<&VarSet>) -> Result<LaurentPoly, AlgError> {
        let vs = match vars {
            Some(v) if v.names() == self.vars.as_slice() => v.clone(),
            Some(_) => return Err(AlgError::VarSetMismatch),
            None => VarSet::new(self.vars)?,
        };
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            let n: BigInt = t.num.parse().map_err(|_| AlgError::Parse(t.num.clone()))?;
            let d: BigInt = t.den.parse().map_err(|_| AlgError::Parse(t.den.clone()))?;
            if d == BigInt::from(0) {
                return Err(AlgError::DivisionByZero);
            }
            terms.push((t.exp, Coef::new(n, d)));
        }
        LaurentPoly::from_terms(&vs, terms)
    }
}

impl TryFrom<PolyJson> for LaurentPoly {
    type Error = AlgError;
    fn try_from(j: PolyJson) -> Result<Self, AlgError> {
        j.into_poly(None)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        LaurentPoly::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl Serialize for RationalFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalJson {
            num: self.num().into(),
            den: self.den().into(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFn {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = RationalJson::deserialize(d)?;
        let num = j.num.into_poly(None).map_err(serde::de::Error::custom)?;
        let den = j
            .den
            .into_poly(Some(num.vars()))
            .map_err(serde::de::Error::custom)?;
        RationalFn::new(num, den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_json_layout() {
        let v = VarSet::new(["x_1", "x_2"]).unwrap();
        let p = LaurentPoly::parse("x_1^-1 + x_1^-1 * x_2", &v).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"vars":["x_1","x_2"],"terms":[{"exp":[-1,1],"num":"1","den":"1"},{"exp":[-1,0],"num":"1","den":"1"}]}"#
        );
    }

    #[test]
    fn rejects_zero_denominator_and_bad_lengths() {
        let bad = r#"{"vars":["x"],"terms":[{"exp":[1],"num":"1","den":"0"}]}"#;
        assert!(serde_json::from_str::<LaurentPoly>(bad).is_err());
        let bad = r#"{"vars":["x"],"terms":[{"exp":[1,2],"num":"1","den":"1"}]}"#;
        assert!(serde_json::from_str::<LaurentPoly>(bad).is_err());
    }

    #[test]
    fn unnormalized_input_is_normalized() {
        let j = r#"{"vars":["x"],"terms":[{"exp":[1],"num":"2","den":"4"},{"exp":[1],"num":"-1","den":"2"},{"exp":[0],"num":"3","den":"1"}]}"#;
        let p: LaurentPoly = serde_json::from_str(j).unwrap();
        assert_eq!(p.to_string(), "3");
    }
}
