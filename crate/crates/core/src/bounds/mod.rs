//! Lower-bound certificates.
//!
//! Every certificate names the measure it bounds, the digest of the
//! polynomial it talks about and a witness that [`check_witness`] can
//! re-verify without trusting the code that produced it.
//!
//! Where an argument only guarantees that *some* parameter in a range works
//! (the split degree of the rectangle bound, the degree sequence of the
//! depth bound), the certificate takes the minimum over the whole range.

mod depth;
mod expander;
mod klfree;
mod rectangle;
mod schnorr;
mod transfer;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use depth::{ceil_log2, depth_decrease, depth_lower_bound};
pub use expander::{
    expander_bound, matching_number, max_induced_matching, mixedness_check, product_rectangle_cap,
    MatchingWitness, RectangleCapReport,
};
pub use klfree::{kl_bound, kl_free_check, KlCheck};
pub use rectangle::{rectangle_bound, RectangleRow};
pub use schnorr::{
    compatibility_graph, max_clique, max_separated, progress_measure_suite, random_enrichments,
    schnorr_measure, separated_check, Enrichment, ProgressReport, ProgressStep, SchnorrMode,
};
pub use transfer::transfer;

use crate::circuit::Measure;
use crate::error::{Error, Result};
use crate::generators::{gen_fg, Graph};
use crate::polynomial::{Monomial, Polynomial};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertKind {
    Schnorr,
    KlFree,
    Rectangle,
    Expander,
    Depth,
    Transfer,
}

/// The complexity measure a certificate bounds from below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureId {
    /// Minimum size of a circuit producing the polynomial.
    ProduceSize,
    /// Minimum size of a (min,+) circuit computing it.
    MinSize,
    /// Minimum size of a (max,+) circuit computing it.
    MaxSize,
    /// Minimum size of a multilinear boolean circuit computing it.
    MultilinearBoolSize,
    /// Minimum size of a monotone boolean circuit computing it.
    BoolSize,
    /// Minimum depth of a circuit producing it.
    Depth,
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasureId::ProduceSize => "produce-size",
            MeasureId::MinSize => "min-size",
            MeasureId::MaxSize => "max-size",
            MeasureId::MultilinearBoolSize => "multilinear-bool-size",
            MeasureId::BoolSize => "bool-size",
            MeasureId::Depth => "depth",
        })
    }
}

impl std::str::FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::Input(format!("unknown measure {s:?}")))
    }
}

/// Which licensed inequality a transfer step uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransferTag {
    /// Over an additively idempotent semiring computing is no harder than
    /// producing: `A(f) ≤ A[f] = R[f]`.
    IdempotentProduce,
    /// For multilinear `f`: `Mult_B(f) ≥ Min(f) ≥ R[lenv f]` and
    /// `Max(f) ≥ R[henv f]`.
    Envelope,
    /// For homogeneous multilinear `f`: `Mult_B(f) = Min(f) = Max(f) = R[f]`.
    HomogeneousMultilinear,
    /// Zero-characteristic semirings are no weaker than the boolean one:
    /// `A(f) ≥ B(f)`.
    ZeroCharacteristic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub from: MeasureId,
    pub to: MeasureId,
    pub tag: TransferTag,
    /// Digest of the polynomial the `from` bound is about.
    pub from_subject: String,
}

/// The polynomial a certificate talks about, by content digest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subject {
    pub digest: String,
    pub n_vars: usize,
    pub terms: usize,
}

impl Subject {
    pub fn of(f: &Polynomial) -> Subject {
        Subject { digest: digest(f), n_vars: f.n_vars(), terms: f.len() }
    }
}

/// SHA-256 of the canonical JSON encoding, hex.
pub fn digest(f: &Polynomial) -> String {
    let bytes = serde_json::to_vec(f).expect("polynomial serialization is infallible");
    hex::encode(Sha256::digest(&bytes))
}

/// An exact rational as decimal numerator and denominator strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRational {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for ExactRational {
    fn from(q: &BigRational) -> Self {
        ExactRational { num: q.numer().to_string(), den: q.denom().to_string() }
    }
}

impl ExactRational {
    pub fn to_rational(&self) -> Result<BigRational> {
        let num: BigInt = self.num.parse().map_err(|_| Error::Input(format!("bad numerator {}", self.num)))?;
        let den: BigInt = self.den.parse().map_err(|_| Error::Input(format!("bad denominator {}", self.den)))?;
        if den == BigInt::from(0) {
            return Err(Error::Input("zero denominator".into()));
        }
        Ok(BigRational::new(num, den))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    Schnorr {
        exact: bool,
        /// A separated sub-polynomial of size `value + 1`.
        separated: Vec<Monomial>,
    },
    KlFree {
        k: u64,
        l: u64,
        terms: u64,
        /// How freeness was established.
        note: String,
    },
    Rectangle {
        measure: Measure,
        m: u64,
        /// The minimizing split degree.
        r: u64,
        density_r: u64,
        density_m_minus_r: u64,
        window: Vec<RectangleRow>,
    },
    Expander {
        graph: Graph,
        matching: MatchingWitness,
    },
    Depth {
        degree: u64,
        steps: u64,
        sequence: Vec<u64>,
        decreases: Vec<ExactRational>,
        product: ExactRational,
        log2_ceil: i64,
    },
    Transfer {
        source: Box<Certificate>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub kind: CertKind,
    pub value: u64,
    pub applies_to: MeasureId,
    pub subject: Subject,
    pub witness: Witness,
    pub chain: Vec<ChainStep>,
    pub note: String,
}

impl Certificate {
    pub(crate) fn new(kind: CertKind, value: u64, applies_to: MeasureId, f: &Polynomial, witness: Witness, note: &str) -> Self {
        Certificate {
            schema_version: SCHEMA_VERSION,
            kind,
            value,
            applies_to,
            subject: Subject::of(f),
            witness,
            chain: Vec::new(),
            note: note.to_string(),
        }
    }

    pub fn is_about(&self, f: &Polynomial) -> bool {
        self.subject.digest == digest(f)
    }
}

/// Result of re-verifying a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub ok: bool,
    pub detail: String,
}

impl WitnessCheck {
    fn pass(detail: impl Into<String>) -> Self {
        WitnessCheck { ok: true, detail: detail.into() }
    }

    fn fail(detail: impl Into<String>) -> Self {
        WitnessCheck { ok: false, detail: detail.into() }
    }
}

/// Re-verifies `cert` against `f` by recomputation, independently of how the
/// certificate was found.
pub fn check_witness(f: &Polynomial, cert: &Certificate) -> Result<WitnessCheck> {
    if cert.schema_version != SCHEMA_VERSION {
        return Ok(WitnessCheck::fail(format!("schema version {}", cert.schema_version)));
    }
    if !cert.is_about(f) {
        return Ok(WitnessCheck::fail("subject digest does not match the polynomial"));
    }
    match &cert.witness {
        Witness::Schnorr { separated, .. } => {
            if cert.applies_to != MeasureId::ProduceSize {
                return Ok(WitnessCheck::fail("schnorr certificates bound produce-size"));
            }
            if separated.iter().any(|p| !f.contains_monomial(p)) {
                return Ok(WitnessCheck::fail("separated set is not a sub-polynomial"));
            }
            let mut uniq = separated.clone();
            uniq.sort();
            uniq.dedup();
            if uniq.len() != separated.len() {
                return Ok(WitnessCheck::fail("separated set repeats a monomial"));
            }
            if !separated_check(f, separated)? {
                return Ok(WitnessCheck::fail("witness set is not separated"));
            }
            let expect = separated.len().saturating_sub(1) as u64;
            Ok(if expect == cert.value {
                WitnessCheck::pass(format!("{} monomials pairwise separated", separated.len()))
            } else {
                WitnessCheck::fail(format!("value {} but witness gives {expect}", cert.value))
            })
        }
        Witness::KlFree { k, l, .. } => {
            let check = kl_free_check(f, *k, *l)?;
            if !check.free {
                return Ok(WitnessCheck::fail("polynomial is not (k,l)-free"));
            }
            let expect = klfree::kl_value(f.len() as u64, *k, *l);
            Ok(if expect == cert.value {
                WitnessCheck::pass("freeness re-established by exhaustive search")
            } else {
                WitnessCheck::fail(format!("value {} but formula gives {expect}", cert.value))
            })
        }
        Witness::Rectangle { measure, .. } => {
            let fresh = rectangle_bound(f, *measure)?;
            Ok(if fresh.value == cert.value && fresh.witness == cert.witness {
                WitnessCheck::pass("densities recomputed")
            } else {
                WitnessCheck::fail("recomputed densities disagree")
            })
        }
        Witness::Expander { graph, matching } => {
            if gen_fg(graph)? != *f {
                return Ok(WitnessCheck::fail("polynomial is not the parity polynomial of the graph"));
            }
            if !expander::matching_witness_valid(graph, matching) {
                return Ok(WitnessCheck::fail("partition or matching invalid"));
            }
            let exact = matching_number(graph)?;
            if exact.value != matching.value {
                return Ok(WitnessCheck::fail("matching number is not minimal"));
            }
            Ok(if expander::expander_value(matching.value) == cert.value {
                WitnessCheck::pass("matching recomputed")
            } else {
                WitnessCheck::fail("value does not follow from the matching number")
            })
        }
        Witness::Depth { sequence, product, log2_ceil, .. } => {
            let Some(actual) = depth::sequence_product(f, sequence)? else {
                return Ok(WitnessCheck::fail("degree sequence is not admissible"));
            };
            if actual != product.to_rational()? || ceil_log2(&actual) != *log2_ceil {
                return Ok(WitnessCheck::fail("decrease product does not match the sequence"));
            }
            let fresh = depth_lower_bound(f)?;
            Ok(if fresh.value == cert.value {
                WitnessCheck::pass("densities and minimizing sequence recomputed")
            } else {
                WitnessCheck::fail(format!("value {} but recomputation gives {}", cert.value, fresh.value))
            })
        }
        Witness::Transfer { .. } => transfer::check_transfer(f, cert),
    }
}
