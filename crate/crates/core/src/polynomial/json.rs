//! `{"n_vars": n, "terms": [{"exps": {"3": 2}, "coeff": 1}, …]}`
//!
//! Terms are written in canonical order, exponent keys in numeric order.
//! Coefficients beyond `u64` are written as decimal strings.

use std::collections::HashMap;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Monomial, Polynomial};

struct Exps<'a>(&'a Monomial);

impl Serialize for Exps<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.length()))?;
        for &(i, e) in self.0.pairs() {
            map.serialize_entry(&i.to_string(), &e)?;
        }
        map.end()
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Exps(self).serialize(s)
    }
}

struct Coeff(u128);

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match u64::try_from(self.0) {
            Ok(v) => s.serialize_u64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct Term<'a>(&'a Monomial, u128);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Term", 2)?;
        st.serialize_field("exps", &Exps(self.0))?;
        st.serialize_field("coeff", &Coeff(self.1))?;
        st.end()
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<Term<'_>> = self.terms().map(|(m, c)| Term(m, c)).collect();
        let mut st = s.serialize_struct("Polynomial", 2)?;
        st.serialize_field("n_vars", &self.n_vars)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoeff {
    Num(u64),
    Str(String),
}

fn default_coeff() -> RawCoeff {
    RawCoeff::Num(1)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    exps: HashMap<String, u32>,
    #[serde(default = "default_coeff")]
    coeff: RawCoeff,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolynomial {
    n_vars: usize,
    terms: Vec<RawTerm>,
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawPolynomial::deserialize(d)?;
        let mut p = Polynomial::zero(raw.n_vars);
        for t in raw.terms {
            let coeff = match t.coeff {
                RawCoeff::Num(v) => v as u128,
                RawCoeff::Str(s) => s.parse::<u128>().map_err(D::Error::custom)?,
            };
            if coeff == 0 {
                return Err(D::Error::custom("zero coefficient"));
            }
            let mut pairs = Vec::with_capacity(t.exps.len());
            for (k, e) in t.exps {
                let i: u32 = k
                    .parse()
                    .map_err(|_| D::Error::custom(format!("variable key {k:?} is not an index")))?;
                if e == 0 {
                    return Err(D::Error::custom(format!("zero exponent for x{i}")));
                }
                pairs.push((i, e));
            }
            let m = Monomial::from_pairs(pairs).map_err(D::Error::custom)?;
            p.add_term(m, coeff).map_err(D::Error::custom)?;
        }
        Ok(p)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let exps = HashMap::<String, u32>::deserialize(d)?;
        let mut pairs = Vec::with_capacity(exps.len());
        for (k, e) in exps {
            let i: u32 = k
                .parse()
                .map_err(|_| D::Error::custom(format!("variable key {k:?} is not an index")))?;
            if e == 0 {
                return Err(D::Error::custom(format!("zero exponent for x{i}")));
            }
            pairs.push((i, e));
        }
        Monomial::from_pairs(pairs).map_err(D::Error::custom)
    }
}
