//! Structural multilinearity and homogeneity, computed without expansion.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{Circuit, Gate};
use crate::equivalence;
use crate::error::{Error, Result};
use crate::semiring::{ExtInt, SemiringId};

impl Circuit {
    /// Gates whose produced polynomial reaches some output monomial: the
    /// gate is nonempty and has a path to an output along which every
    /// product gate's other input is nonempty.
    pub fn useful_gates(&self) -> Vec<bool> {
        let nonempty = self.gate_nonempty();
        let mut useful = vec![false; self.gates.len()];
        for &o in &self.outputs {
            useful[o] = nonempty[o];
        }
        for id in (0..self.gates.len()).rev() {
            if !useful[id] {
                continue;
            }
            match self.gates[id] {
                Gate::Sum { l, r } => {
                    useful[l] |= nonempty[l];
                    useful[r] |= nonempty[r];
                }
                Gate::Prod { l, r } => {
                    // both inputs are nonempty because the gate is
                    useful[l] = true;
                    useful[r] = true;
                }
                _ => {}
            }
        }
        useful
    }

    /// Variables occurring in the polynomial produced at each gate.
    pub fn gate_supports(&self) -> Vec<BTreeSet<u32>> {
        let nonempty = self.gate_nonempty();
        let mut sup: Vec<BTreeSet<u32>> = Vec::with_capacity(self.gates.len());
        for (id, g) in self.gates.iter().enumerate() {
            let s = if !nonempty[id] {
                BTreeSet::new()
            } else {
                match *g {
                    Gate::Var { i } => BTreeSet::from([i]),
                    Gate::Zero | Gate::One => BTreeSet::new(),
                    Gate::Sum { l, r } | Gate::Prod { l, r } => {
                        sup[l].union(&sup[r]).copied().collect()
                    }
                }
            };
            sup.push(s);
        }
        sup
    }

    /// Every useful product gate multiplies polynomials over disjoint sets
    /// of variables.
    pub fn is_multilinear_circuit(&self) -> bool {
        let useful = self.useful_gates();
        let sup = self.gate_supports();
        self.gates.iter().enumerate().all(|(id, g)| match *g {
            Gate::Prod { l, r } if useful[id] => sup[l].is_disjoint(&sup[r]),
            _ => true,
        })
    }

    /// Every useful gate produces a homogeneous polynomial.
    pub fn is_homogeneous_circuit(&self) -> bool {
        let useful = self.useful_gates();
        let lo = self.gate_min_degrees();
        let hi = self.gate_max_degrees();
        (0..self.gates.len()).all(|id| !useful[id] || lo[id] == hi[id])
    }
}

/// Outcome of [`multilinearity_transfer_check`].
#[derive(Clone, Debug, Serialize)]
pub struct MultilinearityReport {
    pub semiring: SemiringId,
    /// The circuit agrees on the whole grid with a multilinear polynomial.
    pub computes_multilinear: bool,
    pub structurally_multilinear: bool,
    /// A circuit computing a multilinear polynomial that fails the
    /// structural test. Never expected.
    pub counterexample: bool,
}

/// Over the arithmetic semiring, max-plus over ℕ and both integer tropical
/// semirings, a circuit that computes a multilinear polynomial must itself be
/// multilinear. Checks this for one circuit on an exhaustive grid.
pub fn multilinearity_transfer_check(c: &Circuit, id: SemiringId, domain: &[ExtInt], cap: usize) -> Result<MultilinearityReport> {
    if !matches!(
        id,
        SemiringId::NatArith | SemiringId::MaxNat | SemiringId::MinInt | SemiringId::MaxInt
    ) {
        return Err(Error::precondition(format!("no multilinearity transfer over {id}")));
    }
    c.single_output()?;
    let f = c.produce(cap)?.remove(0);
    let candidate = if f.is_multilinear() {
        Some(f.clone())
    } else if id == SemiringId::MaxNat && !f.is_empty() {
        Some(f.lmax()?).filter(|h| h.is_multilinear())
    } else {
        None
    };
    let computes_multilinear = match candidate {
        Some(h) => equivalence::agree_on_grid(c, &h, id, domain)?,
        None => false,
    };
    let structurally_multilinear = c.is_multilinear_circuit();
    Ok(MultilinearityReport {
        semiring: id,
        computes_multilinear,
        structurally_multilinear,
        counterexample: computes_multilinear && !structurally_multilinear,
    })
}
