//! Fanin-2 circuits over `{variable, 0, 1, ⊕, ⊗}`.
//!
//! Gates are stored in topological order: every gate refers only to gates
//! with smaller ids. The size of a circuit is its number of ⊕ and ⊗ gates.

mod decompose;
mod dot;
mod produce;
mod structure;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

pub use decompose::{Cut, CutPart, Measure, SopPart, WhichEnvelope};
pub use produce::{ParseGraph, ParseNode};
pub use structure::{multilinearity_transfer_check, MultilinearityReport};

use crate::error::{Error, Result};
use crate::semiring::{ExtInt, SemiringId};

pub type GateId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Gate {
    Var { i: u32 },
    Zero,
    One,
    Sum { l: GateId, r: GateId },
    Prod { l: GateId, r: GateId },
}

impl Gate {
    pub fn inputs(&self) -> Option<(GateId, GateId)> {
        match *self {
            Gate::Sum { l, r } | Gate::Prod { l, r } => Some((l, r)),
            _ => None,
        }
    }

    pub fn is_input(&self) -> bool {
        self.inputs().is_none()
    }

    pub fn is_sum(&self) -> bool {
        matches!(self, Gate::Sum { .. })
    }

    pub fn is_prod(&self) -> bool {
        matches!(self, Gate::Prod { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCircuit")]
pub struct Circuit {
    n_vars: usize,
    gates: Vec<Gate>,
    outputs: Vec<GateId>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCircuit {
    n_vars: usize,
    gates: Vec<Gate>,
    outputs: Vec<GateId>,
}

impl TryFrom<RawCircuit> for Circuit {
    type Error = Error;

    fn try_from(raw: RawCircuit) -> Result<Self> {
        Circuit::from_parts(raw.n_vars, raw.gates, raw.outputs)
    }
}

/// Structural problems found by [`Circuit::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Circuit {
    /// An empty builder. Gates are appended with [`Circuit::push`] and
    /// friends; outputs must be set before the circuit is used.
    pub fn builder(n_vars: usize) -> Self {
        Circuit { n_vars, gates: Vec::new(), outputs: Vec::new() }
    }

    /// Builds and validates in one step.
    pub fn from_parts(n_vars: usize, gates: Vec<Gate>, outputs: Vec<GateId>) -> Result<Self> {
        let c = Circuit { n_vars, gates, outputs };
        let report = c.validate();
        if report.is_valid() {
            Ok(c)
        } else {
            Err(Error::InvalidCircuit(report.violations))
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        if self.outputs.is_empty() {
            v.push("no output gates".to_string());
        }
        for &o in &self.outputs {
            if o >= self.gates.len() {
                v.push(format!("output {o} is not a gate"));
            }
        }
        for (id, g) in self.gates.iter().enumerate() {
            match *g {
                Gate::Var { i } if i as usize >= self.n_vars => {
                    v.push(format!("gate {id}: variable x{i} outside universe {}", self.n_vars))
                }
                Gate::Sum { l, r } | Gate::Prod { l, r } => {
                    for x in [l, r] {
                        if x == id {
                            v.push(format!("gate {id} refers to itself (cycle)"));
                        } else if x > id {
                            v.push(format!("gate {id} refers to later gate {x}"));
                        }
                    }
                }
                _ => {}
            }
        }
        v.dedup();
        ValidationReport { violations: v }
    }

    /// Appends a gate, checking that it refers only to existing gates.
    pub fn push(&mut self, g: Gate) -> Result<GateId> {
        let id = self.gates.len();
        match g {
            Gate::Var { i } if i as usize >= self.n_vars => {
                return Err(Error::range(format!("variable x{i} outside universe")))
            }
            Gate::Sum { l, r } | Gate::Prod { l, r } if l >= id || r >= id => {
                return Err(Error::range(format!("gate {id} refers to a missing gate")))
            }
            _ => {}
        }
        self.gates.push(g);
        Ok(id)
    }

    /// Panics when `i` is outside the universe.
    pub fn var(&mut self, i: u32) -> GateId {
        self.push(Gate::Var { i }).expect("variable in universe")
    }

    pub fn zero(&mut self) -> GateId {
        self.push(Gate::Zero).expect("constant gate")
    }

    pub fn one(&mut self) -> GateId {
        self.push(Gate::One).expect("constant gate")
    }

    /// Panics when an input does not exist yet.
    pub fn sum(&mut self, l: GateId, r: GateId) -> GateId {
        self.push(Gate::Sum { l, r }).expect("inputs precede the gate")
    }

    /// Panics when an input does not exist yet.
    pub fn prod(&mut self, l: GateId, r: GateId) -> GateId {
        self.push(Gate::Prod { l, r }).expect("inputs precede the gate")
    }

    pub fn set_outputs(&mut self, outputs: Vec<GateId>) -> Result<()> {
        self.outputs = outputs;
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidCircuit(report.violations))
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, id: GateId) -> Result<Gate> {
        self.gates
            .get(id)
            .copied()
            .ok_or_else(|| Error::range(format!("gate {id} does not exist")))
    }

    pub fn outputs(&self) -> &[GateId] {
        &self.outputs
    }

    pub(crate) fn single_output(&self) -> Result<GateId> {
        match self.outputs.as_slice() {
            [o] => Ok(*o),
            _ => Err(Error::precondition(format!(
                "operation needs a single output, circuit has {}",
                self.outputs.len()
            ))),
        }
    }

    /// The circuit restricted to one of its outputs.
    pub fn with_output(&self, k: usize) -> Result<Circuit> {
        let o = *self
            .outputs
            .get(k)
            .ok_or_else(|| Error::range(format!("output index {k} out of range")))?;
        Ok(Circuit { n_vars: self.n_vars, gates: self.gates.clone(), outputs: vec![o] })
    }

    /// Number of ⊕ and ⊗ gates.
    pub fn size(&self) -> usize {
        self.gates.iter().filter(|g| !g.is_input()).count()
    }

    pub fn n_product_gates(&self) -> usize {
        self.gates.iter().filter(|g| g.is_prod()).count()
    }

    pub fn n_sum_gates(&self) -> usize {
        self.gates.iter().filter(|g| g.is_sum()).count()
    }

    /// Longest input-to-gate edge count for every gate.
    pub fn gate_depths(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.gates.len()];
        for (id, g) in self.gates.iter().enumerate() {
            if let Some((l, r)) = g.inputs() {
                d[id] = 1 + d[l].max(d[r]);
            }
        }
        d
    }

    /// Largest number of edges on an input-output path.
    pub fn depth(&self) -> usize {
        let d = self.gate_depths();
        self.outputs.iter().map(|&o| d[o]).max().unwrap_or(0)
    }

    /// Gates with a directed path to some output (outputs included).
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.gates.len()];
        for &o in &self.outputs {
            seen[o] = true;
        }
        for id in (0..self.gates.len()).rev() {
            if seen[id] {
                if let Some((l, r)) = self.gates[id].inputs() {
                    seen[l] = true;
                    seen[r] = true;
                }
            }
        }
        seen
    }

    /// Drops gates that no output depends on; the relative order of the
    /// remaining gates is kept.
    pub fn prune(&self) -> Circuit {
        let seen = self.reachable();
        let mut map = vec![usize::MAX; self.gates.len()];
        let mut gates = Vec::new();
        for (id, g) in self.gates.iter().enumerate() {
            if !seen[id] {
                continue;
            }
            map[id] = gates.len();
            gates.push(match *g {
                Gate::Sum { l, r } => Gate::Sum { l: map[l], r: map[r] },
                Gate::Prod { l, r } => Gate::Prod { l: map[l], r: map[r] },
                other => other,
            });
        }
        let outputs = self.outputs.iter().map(|&o| map[o]).collect();
        Circuit { n_vars: self.n_vars, gates, outputs }
    }

    /// Consumers of every gate; a gate feeding both inputs of `v` lists `v`
    /// twice.
    pub fn consumers(&self) -> Vec<Vec<GateId>> {
        let mut out = vec![Vec::new(); self.gates.len()];
        for (id, g) in self.gates.iter().enumerate() {
            if let Some((l, r)) = g.inputs() {
                out[l].push(id);
                out[r].push(id);
            }
        }
        out
    }

    /// Evaluates every output over `id`.
    pub fn eval(&self, id: SemiringId, assignment: &[ExtInt]) -> Result<Vec<ExtInt>> {
        let vals = self.eval_all(id, assignment)?;
        Ok(self.outputs.iter().map(|&o| vals[o]).collect())
    }

    /// Values at every gate.
    pub fn eval_all(&self, id: SemiringId, assignment: &[ExtInt]) -> Result<Vec<ExtInt>> {
        if assignment.len() != self.n_vars {
            return Err(Error::UniverseMismatch { left: self.n_vars, right: assignment.len() });
        }
        for &a in assignment {
            id.check(a)?;
        }
        let mut vals = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match *g {
                Gate::Var { i } => assignment[i as usize],
                Gate::Zero => id.zero(),
                Gate::One => id.one(),
                Gate::Sum { l, r } => id.add(vals[l], vals[r])?,
                Gate::Prod { l, r } => id.mul(vals[l], vals[r])?,
            };
            vals.push(v);
        }
        Ok(vals)
    }

    /// Minimum degree of the polynomial produced at each gate, computed
    /// without expansion; `+∞` marks gates producing the empty polynomial.
    pub fn gate_min_degrees(&self) -> Vec<ExtInt> {
        let mut d: Vec<ExtInt> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match *g {
                Gate::Var { .. } => ExtInt::Fin(1),
                Gate::One => ExtInt::Fin(0),
                Gate::Zero => ExtInt::PosInf,
                Gate::Sum { l, r } => d[l].min(d[r]),
                Gate::Prod { l, r } => ext_add(d[l], d[r], ExtInt::PosInf),
            };
            d.push(v);
        }
        d
    }

    /// Maximum degree per gate; `−∞` marks empty gates.
    pub fn gate_max_degrees(&self) -> Vec<ExtInt> {
        let mut d: Vec<ExtInt> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match *g {
                Gate::Var { .. } => ExtInt::Fin(1),
                Gate::One => ExtInt::Fin(0),
                Gate::Zero => ExtInt::NegInf,
                Gate::Sum { l, r } => d[l].max(d[r]),
                Gate::Prod { l, r } => ext_add(d[l], d[r], ExtInt::NegInf),
            };
            d.push(v);
        }
        d
    }

    /// Whether each gate produces a nonempty polynomial.
    pub fn gate_nonempty(&self) -> Vec<bool> {
        self.gate_min_degrees().into_iter().map(|d| d != ExtInt::PosInf).collect()
    }

    /// `F_{g=0}`: gate `g` replaced by the constant 0, ids unchanged.
    pub fn restrict_gate_zero(&self, g: GateId) -> Result<Circuit> {
        self.gate(g)?;
        let mut c = self.clone();
        c.gates[g] = Gate::Zero;
        Ok(c)
    }

    /// Rebuilds the circuit with shared identical gates merged. Used by
    /// generators to keep constant and variable gates unique.
    pub fn dedup(&self) -> Circuit {
        let mut seen: HashMap<Gate, GateId> = HashMap::new();
        let mut map: Vec<GateId> = Vec::with_capacity(self.gates.len());
        let mut gates = Vec::new();
        for g in &self.gates {
            let g = match *g {
                Gate::Sum { l, r } => {
                    let (l, r) = (map[l], map[r]);
                    Gate::Sum { l: l.min(r), r: l.max(r) }
                }
                Gate::Prod { l, r } => {
                    let (l, r) = (map[l], map[r]);
                    Gate::Prod { l: l.min(r), r: l.max(r) }
                }
                other => other,
            };
            let id = *seen.entry(g).or_insert_with(|| {
                gates.push(g);
                gates.len() - 1
            });
            map.push(id);
        }
        let outputs = self.outputs.iter().map(|&o| map[o]).collect();
        Circuit { n_vars: self.n_vars, gates, outputs }
    }
}

fn ext_add(a: ExtInt, b: ExtInt, absorbing: ExtInt) -> ExtInt {
    match (a, b) {
        (ExtInt::Fin(x), ExtInt::Fin(y)) => ExtInt::Fin(x + y),
        _ => absorbing,
    }
}
