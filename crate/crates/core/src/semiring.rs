//! The six concrete semirings over (extended) integers.
//!
//! | id        | ⊕   | ⊗   | 0   | 1 | carrier        |
//! |-----------|-----|-----|-----|---|----------------|
//! | nat-arith | +   | ×   | 0   | 1 | ℕ              |
//! | bool      | ∨   | ∧   | 0   | 1 | {0,1}          |
//! | min-nat   | min | +   | +∞  | 0 | ℕ ∪ {+∞}       |
//! | min-int   | min | +   | +∞  | 0 | ℤ ∪ {+∞}       |
//! | max-nat   | max | +   | −∞  | 0 | ℕ ∪ {−∞}       |
//! | max-int   | max | +   | −∞  | 0 | ℤ ∪ {−∞}       |
//!
//! Arithmetic is exact; overflow is reported, never wrapped.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An integer extended by the two signed infinities.
///
/// The derived order is `NegInf < Fin(_) < PosInf`, which is what the
/// tropical `min`/`max` operations need.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
    PosInf,
}

impl ExtInt {
    pub const ZERO: ExtInt = ExtInt::Fin(0);
    pub const ONE: ExtInt = ExtInt::Fin(1);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Fin(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Fin(v) => Some(v),
            _ => None,
        }
    }

    /// `x ↦ −x`, swapping the infinities.
    pub fn negate(self) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::PosInf,
            ExtInt::PosInf => ExtInt::NegInf,
            ExtInt::Fin(v) => ExtInt::Fin(-v),
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Fin(v)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => f.write_str("-inf"),
            ExtInt::PosInf => f.write_str("+inf"),
            ExtInt::Fin(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for ExtInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "∞" | "+∞" => Ok(ExtInt::PosInf),
            "-inf" | "−inf" | "-∞" | "−∞" => Ok(ExtInt::NegInf),
            t => t
                .parse::<i64>()
                .map(ExtInt::Fin)
                .map_err(|_| Error::Input(format!("not an extended integer: {s:?}"))),
        }
    }
}

// Finite values are JSON numbers, infinities the strings "+inf" / "-inf".
impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtInt::Fin(v) => s.serialize_i64(*v),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(ExtInt::Fin(v)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SemiringId {
    NatArith,
    Bool,
    MinNat,
    MinInt,
    MaxNat,
    MaxInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiringFlags {
    pub additively_idempotent: bool,
    pub multiplicatively_idempotent: bool,
    pub zero_characteristic: bool,
}

impl SemiringId {
    pub const ALL: [SemiringId; 6] = [
        SemiringId::NatArith,
        SemiringId::Bool,
        SemiringId::MinNat,
        SemiringId::MinInt,
        SemiringId::MaxNat,
        SemiringId::MaxInt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemiringId::NatArith => "nat-arith",
            SemiringId::Bool => "bool",
            SemiringId::MinNat => "min-nat",
            SemiringId::MinInt => "min-int",
            SemiringId::MaxNat => "max-nat",
            SemiringId::MaxInt => "max-int",
        }
    }

    pub fn flags(self) -> SemiringFlags {
        SemiringFlags {
            additively_idempotent: self != SemiringId::NatArith,
            multiplicatively_idempotent: self == SemiringId::Bool,
            zero_characteristic: true,
        }
    }

    pub fn is_min(self) -> bool {
        matches!(self, SemiringId::MinNat | SemiringId::MinInt)
    }

    pub fn is_max(self) -> bool {
        matches!(self, SemiringId::MaxNat | SemiringId::MaxInt)
    }

    pub fn is_tropical(self) -> bool {
        self.is_min() || self.is_max()
    }

    /// Additive and multiplicative identities.
    pub fn constants(self) -> (ExtInt, ExtInt) {
        (self.zero(), self.one())
    }

    pub fn zero(self) -> ExtInt {
        match self {
            SemiringId::NatArith | SemiringId::Bool => ExtInt::Fin(0),
            SemiringId::MinNat | SemiringId::MinInt => ExtInt::PosInf,
            SemiringId::MaxNat | SemiringId::MaxInt => ExtInt::NegInf,
        }
    }

    pub fn one(self) -> ExtInt {
        match self {
            SemiringId::NatArith | SemiringId::Bool => ExtInt::Fin(1),
            _ => ExtInt::Fin(0),
        }
    }

    pub fn contains(self, a: ExtInt) -> bool {
        match (self, a) {
            (SemiringId::NatArith, ExtInt::Fin(v)) => v >= 0,
            (SemiringId::Bool, ExtInt::Fin(v)) => v == 0 || v == 1,
            (SemiringId::MinNat, ExtInt::Fin(v)) | (SemiringId::MaxNat, ExtInt::Fin(v)) => v >= 0,
            (SemiringId::MinInt, ExtInt::Fin(_)) | (SemiringId::MaxInt, ExtInt::Fin(_)) => true,
            (SemiringId::MinNat | SemiringId::MinInt, ExtInt::PosInf) => true,
            (SemiringId::MaxNat | SemiringId::MaxInt, ExtInt::NegInf) => true,
            _ => false,
        }
    }

    pub fn check(self, a: ExtInt) -> Result<ExtInt> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::Domain { semiring: self, value: a })
        }
    }

    /// `a ⊕ b`.
    pub fn add(self, a: ExtInt, b: ExtInt) -> Result<ExtInt> {
        self.check(a)?;
        self.check(b)?;
        Ok(match self {
            SemiringId::NatArith => ExtInt::Fin(fin_add(a, b)?),
            SemiringId::Bool => ExtInt::Fin(((a == ExtInt::ONE) || (b == ExtInt::ONE)) as i64),
            SemiringId::MinNat | SemiringId::MinInt => a.min(b),
            SemiringId::MaxNat | SemiringId::MaxInt => a.max(b),
        })
    }

    /// `a ⊗ b`.
    pub fn mul(self, a: ExtInt, b: ExtInt) -> Result<ExtInt> {
        self.check(a)?;
        self.check(b)?;
        Ok(match self {
            SemiringId::NatArith => {
                let (x, y) = (a.finite().unwrap_or(0), b.finite().unwrap_or(0));
                ExtInt::Fin(x.checked_mul(y).ok_or(Error::Overflow("semiring product"))?)
            }
            SemiringId::Bool => ExtInt::Fin(((a == ExtInt::ONE) && (b == ExtInt::ONE)) as i64),
            _ => {
                let zero = self.zero();
                if a == zero || b == zero {
                    zero
                } else {
                    ExtInt::Fin(fin_add(a, b)?)
                }
            }
        })
    }

    /// `a ⊗ a ⊗ … ⊗ a` (`k` factors); `pow(a, 0)` is the unit.
    pub fn pow(self, a: ExtInt, k: u32) -> Result<ExtInt> {
        self.check(a)?;
        if k == 0 {
            return Ok(self.one());
        }
        Ok(match self {
            SemiringId::NatArith => {
                let x = a.finite().unwrap_or(0);
                ExtInt::Fin(x.checked_pow(k).ok_or(Error::Overflow("semiring power"))?)
            }
            SemiringId::Bool => a,
            _ => match a {
                ExtInt::Fin(v) => ExtInt::Fin(
                    v.checked_mul(k as i64)
                        .ok_or(Error::Overflow("tropical power"))?,
                ),
                inf => inf,
            },
        })
    }

    /// The `n`-fold sum `1 ⊕ 1 ⊕ … ⊕ 1`.
    pub fn unit_multiple(self, n: u64) -> Result<ExtInt> {
        let mut acc = self.zero();
        for _ in 0..n {
            acc = self.add(acc, self.one())?;
        }
        Ok(acc)
    }
}

fn fin_add(a: ExtInt, b: ExtInt) -> Result<i64> {
    match (a, b) {
        (ExtInt::Fin(x), ExtInt::Fin(y)) => x.checked_add(y).ok_or(Error::Overflow("semiring sum")),
        _ => Err(Error::Internal(format!("finite addition of {a} and {b}"))),
    }
}

impl fmt::Display for SemiringId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemiringId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SemiringId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown semiring {s:?}")))
    }
}

/// Outcome of [`axiom_suite`].
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub semiring: SemiringId,
    pub passed: bool,
    pub first_violation: Option<String>,
    pub triples_checked: usize,
    /// `a ⊕ a = a` held on every sample.
    pub additively_idempotent: bool,
    /// `a ⊗ a = a` held on every sample.
    pub multiplicatively_idempotent: bool,
}

/// Checks the semiring axioms on every triple of `samples`.
pub fn axiom_suite(id: SemiringId, samples: &[ExtInt]) -> AxiomReport {
    let mut report = AxiomReport {
        semiring: id,
        passed: true,
        first_violation: None,
        triples_checked: 0,
        additively_idempotent: true,
        multiplicatively_idempotent: true,
    };
    let fail = |report: &mut AxiomReport, msg: String| {
        if report.first_violation.is_none() {
            report.first_violation = Some(msg);
        }
        report.passed = false;
    };
    let (zero, one) = id.constants();

    for &a in samples {
        if !id.contains(a) {
            fail(&mut report, format!("sample {a} not in carrier"));
            continue;
        }
        match (id.add(a, a), id.mul(a, a)) {
            (Ok(s), Ok(p)) => {
                report.additively_idempotent &= s == a;
                report.multiplicatively_idempotent &= p == a;
            }
            (Err(e), _) | (_, Err(e)) => fail(&mut report, format!("{a}: {e}")),
        }
        let unit_laws = (|| -> Result<Option<String>> {
            if id.add(a, zero)? != a {
                return Ok(Some(format!("{a} ⊕ 0 ≠ {a}")));
            }
            if id.mul(a, one)? != a {
                return Ok(Some(format!("{a} ⊗ 1 ≠ {a}")));
            }
            if id.mul(a, zero)? != zero {
                return Ok(Some(format!("{a} ⊗ 0 ≠ 0")));
            }
            Ok(None)
        })();
        match unit_laws {
            Ok(Some(msg)) => fail(&mut report, msg),
            Err(e) => fail(&mut report, format!("{a}: {e}")),
            Ok(None) => {}
        }
    }

    for &a in samples {
        for &b in samples {
            for &c in samples {
                if !(id.contains(a) && id.contains(b) && id.contains(c)) {
                    continue;
                }
                report.triples_checked += 1;
                match check_triple(id, a, b, c) {
                    Ok(None) => {}
                    Ok(Some(msg)) => fail(&mut report, msg),
                    Err(e) => fail(&mut report, format!("({a}, {b}, {c}): {e}")),
                }
            }
        }
    }
    report
}

fn check_triple(id: SemiringId, a: ExtInt, b: ExtInt, c: ExtInt) -> Result<Option<String>> {
    if id.add(id.add(a, b)?, c)? != id.add(a, id.add(b, c)?)? {
        return Ok(Some(format!("⊕ not associative on ({a}, {b}, {c})")));
    }
    if id.mul(id.mul(a, b)?, c)? != id.mul(a, id.mul(b, c)?)? {
        return Ok(Some(format!("⊗ not associative on ({a}, {b}, {c})")));
    }
    if id.add(a, b)? != id.add(b, a)? {
        return Ok(Some(format!("⊕ not commutative on ({a}, {b})")));
    }
    if id.mul(a, b)? != id.mul(b, a)? {
        return Ok(Some(format!("⊗ not commutative on ({a}, {b})")));
    }
    if id.mul(a, id.add(b, c)?)? != id.add(id.mul(a, b)?, id.mul(a, c)?)? {
        return Ok(Some(format!("⊗ does not distribute on ({a}, {b}, {c})")));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ExtInt::*;

    #[test]
    fn min_nat_arithmetic() {
        let id = SemiringId::MinNat;
        assert_eq!(id.add(Fin(3), Fin(5)).unwrap(), Fin(3));
        assert_eq!(id.mul(Fin(3), Fin(5)).unwrap(), Fin(8));
        assert_eq!(id.mul(Fin(3), PosInf).unwrap(), PosInf);
        assert!(matches!(id.add(Fin(-1), Fin(2)), Err(Error::Domain { .. })));
        assert!(matches!(id.add(NegInf, Fin(2)), Err(Error::Domain { .. })));
    }

    #[test]
    fn max_int_identity() {
        assert_eq!(SemiringId::MaxInt.add(NegInf, Fin(7)).unwrap(), Fin(7));
        assert_eq!(SemiringId::MaxInt.mul(NegInf, Fin(-7)).unwrap(), NegInf);
    }

    #[test]
    fn bool_and() {
        assert_eq!(SemiringId::Bool.mul(Fin(1), Fin(1)).unwrap(), Fin(1));
        assert_eq!(SemiringId::Bool.add(Fin(0), Fin(1)).unwrap(), Fin(1));
        assert!(SemiringId::Bool.add(Fin(2), Fin(1)).is_err());
    }

    #[test]
    fn constants_table() {
        assert_eq!(SemiringId::MinNat.constants(), (PosInf, Fin(0)));
        assert_eq!(SemiringId::MaxInt.constants(), (NegInf, Fin(0)));
        assert_eq!(SemiringId::NatArith.constants(), (Fin(0), Fin(1)));
        assert_eq!(SemiringId::Bool.constants(), (Fin(0), Fin(1)));
    }

    #[test]
    fn additive_identity_everywhere() {
        for id in SemiringId::ALL {
            for v in [-2, 0, 1, 5] {
                let a = Fin(v);
                if id.contains(a) {
                    assert_eq!(id.add(a, id.zero()).unwrap(), a, "{id}");
                }
            }
        }
    }

    #[test]
    fn overflow_is_checked() {
        assert!(matches!(
            SemiringId::NatArith.mul(Fin(i64::MAX), Fin(2)),
            Err(Error::Overflow(_))
        ));
        assert!(matches!(
            SemiringId::MinInt.mul(Fin(i64::MAX), Fin(1)),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn axiom_suite_examples() {
        let r = axiom_suite(SemiringId::MinNat, &[Fin(0), Fin(1), Fin(2), PosInf]);
        assert!(r.passed, "{:?}", r.first_violation);
        assert!(r.additively_idempotent);

        let r = axiom_suite(SemiringId::Bool, &[Fin(0), Fin(1)]);
        assert!(r.passed);
        assert!(r.multiplicatively_idempotent);

        let r = axiom_suite(SemiringId::NatArith, &[Fin(0), Fin(1), Fin(2), Fin(3)]);
        assert!(r.passed);
        assert!(!r.additively_idempotent);
        assert!(!r.multiplicatively_idempotent);
    }

    #[test]
    fn axiom_suite_flags_carrier_violation() {
        let r = axiom_suite(SemiringId::MaxNat, &[Fin(0), PosInf]);
        assert!(!r.passed);
    }

    #[test]
    fn flags_are_unique_where_expected() {
        let non_idem: Vec<_> = SemiringId::ALL
            .into_iter()
            .filter(|id| !id.flags().additively_idempotent)
            .collect();
        assert_eq!(non_idem, vec![SemiringId::NatArith]);
        let mul_idem: Vec<_> = SemiringId::ALL
            .into_iter()
            .filter(|id| id.flags().multiplicatively_idempotent)
            .collect();
        assert_eq!(mul_idem, vec![SemiringId::Bool]);
        assert_eq!(SemiringId::MinInt.flags(), SemiringId::MaxInt.flags());
    }

    #[test]
    fn zero_characteristic_up_to_64() {
        for id in SemiringId::ALL {
            for n in 1..=64 {
                assert_ne!(id.unit_multiple(n).unwrap(), id.zero(), "{id} n={n}");
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for id in SemiringId::ALL {
            assert_eq!(id.name().parse::<SemiringId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.name()));
        }
    }

    #[test]
    fn ext_int_json() {
        let v: Vec<ExtInt> = serde_json::from_str(r#"[3, "+inf", "-inf", -2]"#).unwrap();
        assert_eq!(v, vec![Fin(3), PosInf, NegInf, Fin(-2)]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"[3,"+inf","-inf",-2]"#);
    }
}
