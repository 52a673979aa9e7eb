//! Moving a bound from one measure (or polynomial) to another along a
//! licensed inequality. Side conditions are checked structurally.

use super::{check_witness, digest, CertKind, Certificate, ChainStep, MeasureId, TransferTag, Witness, WitnessCheck};
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;

use MeasureId::*;

fn is_circuit_size(m: MeasureId) -> bool {
    matches!(m, ProduceSize | MinSize | MaxSize | MultilinearBoolSize)
}

/// Which polynomial the source bound is about, relative to `f`.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Relation {
    Same,
    LowerEnvelope,
    HigherEnvelope,
}

fn relation(cert: &Certificate, f: &Polynomial) -> Result<Option<Relation>> {
    if cert.is_about(f) {
        return Ok(Some(Relation::Same));
    }
    if f.is_empty() {
        return Ok(None);
    }
    if cert.subject.digest == digest(&f.lower_envelope()?) {
        return Ok(Some(Relation::LowerEnvelope));
    }
    if cert.subject.digest == digest(&f.higher_envelope()?) {
        return Ok(Some(Relation::HigherEnvelope));
    }
    Ok(None)
}

/// The licensed step from `from` (about `rel` of `f`) to `to` (about `f`).
fn license(f: &Polynomial, rel: Relation, from: MeasureId, to: MeasureId) -> Result<TransferTag> {
    let multilinear = f.is_multilinear();
    let homogeneous = f.is_homogeneous();
    match rel {
        Relation::Same => {
            // R[f] ≥ A(f) for additively idempotent A
            if to == ProduceSize && matches!(from, MinSize | MaxSize | BoolSize | MultilinearBoolSize) {
                return Ok(TransferTag::IdempotentProduce);
            }
            if is_circuit_size(from) && is_circuit_size(to) && multilinear && homogeneous {
                return Ok(TransferTag::HomogeneousMultilinear);
            }
            if from == BoolSize && matches!(to, MinSize | MaxSize) {
                return Ok(TransferTag::ZeroCharacteristic);
            }
            // Mult_B(f) ≥ Min(f) for multilinear f
            if from == MinSize && to == MultilinearBoolSize && multilinear {
                return Ok(TransferTag::Envelope);
            }
            if from == ProduceSize && is_circuit_size(to) {
                return Err(Error::precondition(format!(
                    "moving a produce-size bound to {to} needs f homogeneous and multilinear; \
                     otherwise go through the envelope of f"
                )));
            }
        }
        Relation::LowerEnvelope | Relation::HigherEnvelope => {
            if from != ProduceSize {
                return Err(Error::precondition("envelope steps start from a produce-size bound"));
            }
            if !multilinear {
                return Err(Error::precondition("envelope steps need a multilinear polynomial"));
            }
            let allowed: &[MeasureId] = if rel == Relation::LowerEnvelope {
                &[MinSize, MultilinearBoolSize, ProduceSize]
            } else {
                &[MaxSize, ProduceSize]
            };
            if allowed.contains(&to) {
                return Ok(TransferTag::Envelope);
            }
        }
    }
    Err(Error::precondition(format!("no licensed step from {from} to {to}")))
}

/// A certificate for `target` of `f`, derived from `cert`, which must be about
/// `f` itself or about one of its envelopes.
pub fn transfer(cert: &Certificate, f: &Polynomial, target: MeasureId) -> Result<Certificate> {
    let rel = relation(cert, f)?
        .ok_or_else(|| Error::precondition("certificate is about neither f nor an envelope of f"))?;
    let tag = license(f, rel, cert.applies_to, target)?;
    let mut chain = cert.chain.clone();
    chain.push(ChainStep { from: cert.applies_to, to: target, tag, from_subject: cert.subject.digest.clone() });
    let mut out = Certificate::new(
        CertKind::Transfer,
        cert.value,
        target,
        f,
        Witness::Transfer { source: Box::new(cert.clone()) },
        "bound carried along the recorded chain",
    );
    out.chain = chain;
    Ok(out)
}

pub(crate) fn check_transfer(f: &Polynomial, cert: &Certificate) -> Result<WitnessCheck> {
    let Witness::Transfer { source } = &cert.witness else {
        return Ok(WitnessCheck::fail("not a transfer certificate"));
    };
    let Some(rel) = relation(source, f)? else {
        return Ok(WitnessCheck::fail("source is about neither f nor an envelope of f"));
    };
    let g = match rel {
        Relation::Same => f.clone(),
        Relation::LowerEnvelope => f.lower_envelope()?,
        Relation::HigherEnvelope => f.higher_envelope()?,
    };
    let inner = check_witness(&g, source)?;
    if !inner.ok {
        return Ok(WitnessCheck::fail(format!("source: {}", inner.detail)));
    }
    let redo = match transfer(source, f, cert.applies_to) {
        Ok(c) => c,
        Err(e) => return Ok(WitnessCheck::fail(format!("step not licensed: {e}"))),
    };
    Ok(if redo.value == cert.value && redo.chain == cert.chain {
        WitnessCheck::pass(format!("{} step(s) licensed; source: {}", cert.chain.len(), inner.detail))
    } else {
        WitnessCheck::fail("value or chain differs from the licensed derivation")
    })
}
