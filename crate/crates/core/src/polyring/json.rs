//! JSON wire format.
//!
//! Polynomial: `{"vars":["x","y"],"terms":[{"c":"3/2","e":[1,0]}, ...]}`
//! with coefficients as decimal strings (`num` or `num/den`) and terms in
//! canonical decreasing order.
//!
//! Ideal: `{"ring":{"vars":[...]},"generators":[<polynomial>, ...]}`; the
//! ring of an ideal read from JSON uses degrevlex.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{format_rational, parse_rational, Monomial, PolyRing, Polynomial, TermOrder};
use crate::error::{Error, Result};
use crate::grobner::Ideal;

#[derive(Serialize, Deserialize)]
struct TermJson {
    c: String,
    e: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl PolyJson {
    fn of(p: &Polynomial) -> PolyJson {
        PolyJson {
            vars: p.ring().vars().to_vec(),
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| TermJson { c: format_rational(c), e: m.exponents().to_vec() })
                .collect(),
        }
    }

    /// Rebuild in `ring`; the embedded variable list must match exactly.
    fn into_polynomial(self, ring: &PolyRing) -> Result<Polynomial> {
        if self.vars != ring.vars() {
            return Err(Error::Parse(format!(
                "polynomial variables {:?} do not match ring variables {:?}",
                self.vars,
                ring.vars()
            )));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            if t.e.len() != ring.nvars() {
                return Err(Error::Parse(format!(
                    "exponent vector of length {} in a ring with {} variables",
                    t.e.len(),
                    ring.nvars()
                )));
            }
            terms.push((Monomial::new(t.e), parse_rational(&t.c)?));
        }
        Ok(Polynomial::from_terms(ring, terms))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::of(self).serialize(serializer)
    }
}

impl Polynomial {
    /// Serialize to the JSON wire form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::of(self)).expect("serializable")
    }

    /// Parse the JSON wire form into a polynomial of `ring`.
    pub fn from_json(ring: &PolyRing, s: &str) -> Result<Polynomial> {
        let pj: PolyJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("polynomial JSON: {e}")))?;
        pj.into_polynomial(ring)
    }
}

#[derive(Serialize, Deserialize)]
struct RingJson {
    vars: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    ring: RingJson,
    generators: Vec<PolyJson>,
}

/// Serialize an ideal to the JSON wire form.
pub fn ideal_to_json(ideal: &Ideal) -> String {
    let ij = IdealJson {
        ring: RingJson { vars: ideal.ring().vars().to_vec() },
        generators: ideal.generators().iter().map(PolyJson::of).collect(),
    };
    serde_json::to_string(&ij).expect("serializable")
}

/// Parse the JSON wire form of an ideal; the ring uses degrevlex.
pub fn ideal_from_json(s: &str) -> Result<Ideal> {
    let ij: IdealJson =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("ideal JSON: {e}")))?;
    let ring = PolyRing::new(&ij.ring.vars, TermOrder::DegRevLex)?;
    let gens = ij
        .generators
        .into_iter()
        .map(|pj| pj.into_polynomial(&ring))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&ring, gens)
}

/// Deserializer helper for containers that embed polynomials (matrices):
/// reads the `PolyJson` and defers ring reconciliation to the container.
pub(crate) struct RawPoly {
    pub vars: Vec<String>,
    pub terms: Vec<(Vec<u32>, String)>,
}

impl RawPoly {
    pub(crate) fn into_polynomial(self, ring: &PolyRing) -> Result<Polynomial> {
        PolyJson {
            vars: self.vars,
            terms: self.terms.into_iter().map(|(e, c)| TermJson { c, e }).collect(),
        }
        .into_polynomial(ring)
    }
}

impl<'de> Deserialize<'de> for RawPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pj = PolyJson::deserialize(deserializer)?;
        for t in &pj.terms {
            parse_rational(&t.c).map_err(|e| D::Error::custom(e.to_string()))?;
        }
        Ok(RawPoly {
            vars: pj.vars,
            terms: pj.terms.into_iter().map(|t| (t.e, t.c)).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_roundtrip() {
        let r = PolyRing::new(&["x", "y"], TermOrder::DegRevLex).unwrap();
        let f = super::super::parse_polynomial(&r, "-1/2*x^3 + 4*x*y - y + 7").unwrap();
        let js = f.to_json();
        let back = Polynomial::from_json(&r, &js).unwrap();
        assert_eq!(back, f);
        // canonical output is stable
        assert_eq!(Polynomial::from_json(&r, &js).unwrap().to_json(), js);
        // explicit shape
        assert_eq!(
            r.var(0).to_json(),
            r#"{"vars":["x","y"],"terms":[{"c":"1","e":[1,0]}]}"#
        );
    }

    #[test]
    fn polynomial_json_validation() {
        let r = PolyRing::new(&["x", "y"], TermOrder::DegRevLex).unwrap();
        // wrong variable list
        let bad = r#"{"vars":["x"],"terms":[]}"#;
        assert!(Polynomial::from_json(&r, bad).is_err());
        // malformed coefficient
        let bad = r#"{"vars":["x","y"],"terms":[{"c":"a","e":[1,0]}]}"#;
        assert!(Polynomial::from_json(&r, bad).is_err());
        // exponent length mismatch
        let bad = r#"{"vars":["x","y"],"terms":[{"c":"1","e":[1]}]}"#;
        assert!(Polynomial::from_json(&r, bad).is_err());
    }

    #[test]
    fn ideal_roundtrip() {
        let r = PolyRing::new(&["u", "v", "w"], TermOrder::DegRevLex).unwrap();
        let f = super::super::parse_polynomial(&r, "u*v - w").unwrap();
        let i = Ideal::new(&r, vec![f]).unwrap();
        let js = ideal_to_json(&i);
        let back = ideal_from_json(&js).unwrap();
        assert_eq!(back.ring(), i.ring());
        assert_eq!(back.generators(), i.generators());
        assert_eq!(ideal_to_json(&back), js);
    }
}
