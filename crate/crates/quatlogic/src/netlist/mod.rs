//! Fan-in-bounded gate netlists: a DAG of typed gates with named inputs and
//! outputs, plus the tree construction that realizes a wide AND/OR/MIN/MAX
//! with the fewest gates at the least depth.

mod lower;
mod qnet;

use std::fmt;

use thiserror::Error;

use crate::algebra::{apply_dyadic, apply_unary, OperatorKind, Qudit};
use crate::sop::SopForm;
use crate::table::{row_count, vector_from_index, QFunction, TableError};

pub use lower::{lower_sop, LowerOptions};
pub use qnet::QnetError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetlistError {
    #[error("fan-in limit must be at least 2, got {0}")]
    BadFanIn(usize),
    #[error("{op} takes {expected} input(s), got {actual}")]
    BadArity {
        op: OperatorKind,
        expected: usize,
        actual: usize,
    },
    #[error("{op} fan-in {actual} exceeds the limit of {limit}")]
    FanInExceeded {
        op: OperatorKind,
        actual: usize,
        limit: usize,
    },
    #[error("gate g{0} does not exist")]
    UnknownGate(usize),
    #[error("duplicate input name `{0}`")]
    DuplicateInput(String),
    #[error("invalid input name `{0}`")]
    BadInputName(String),
    #[error("duplicate output name `{0}`")]
    DuplicateOutput(String),
    #[error("input `{0}` is not bound")]
    UnboundInput(String),
    #[error("binding names unknown input `{0}`")]
    UnknownBinding(String),
    #[error("{0} cannot head a reduction tree (expected AND, OR, MIN or MAX)")]
    BadTreeKind(OperatorKind),
    #[error("reduction tree needs at least one input")]
    EmptyTree,
    #[error("expected exactly one output, netlist has {0}")]
    NotSingleOutput(usize),
    #[error("MIN/MAX lowering is valid for form-I expressions only")]
    MinMaxOnForm2,
    #[error(transparent)]
    Table(#[from] TableError),
}

/// Index of a gate within its netlist.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GateId(pub usize);

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    Input {
        name: String,
    },
    Const {
        value: Qudit,
    },
    Logic {
        op: OperatorKind,
        inputs: Vec<GateId>,
    },
}

impl Gate {
    pub fn is_logic(&self) -> bool {
        matches!(self, Gate::Logic { .. })
    }
}

/// A gate DAG. Gates only reference earlier gates, so the vector order is a
/// topological order. `v1` bounds AND/MIN fan-in, `v2` bounds OR/MAX.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Netlist {
    gates: Vec<Gate>,
    outputs: Vec<(String, GateId)>,
    v1: usize,
    v2: usize,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if !(first.is_ascii_alphabetic() || first == '_') {
        return false;
    }
    if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return false;
    }
    // `g<digits>` is reserved for gate references in the text format
    !(name.starts_with('g') && name.len() > 1 && name[1..].bytes().all(|b| b.is_ascii_digit()))
}

impl Netlist {
    pub fn new(v1: usize, v2: usize) -> Result<Netlist, NetlistError> {
        if v1 < 2 {
            return Err(NetlistError::BadFanIn(v1));
        }
        if v2 < 2 {
            return Err(NetlistError::BadFanIn(v2));
        }
        Ok(Netlist {
            gates: Vec::new(),
            outputs: Vec::new(),
            v1,
            v2,
        })
    }

    pub fn fanin_limits(&self) -> (usize, usize) {
        (self.v1, self.v2)
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[(String, GateId)] {
        &self.outputs
    }

    pub fn input_names(&self) -> Vec<&str> {
        self.gates
            .iter()
            .filter_map(|g| match g {
                Gate::Input { name } => Some(name.as_str()),
                _ => None,
            })
            .collect()
    }

    pub fn add_input(&mut self, name: &str) -> Result<GateId, NetlistError> {
        if !valid_name(name) {
            return Err(NetlistError::BadInputName(name.to_string()));
        }
        if self.input_names().contains(&name) {
            return Err(NetlistError::DuplicateInput(name.to_string()));
        }
        self.gates.push(Gate::Input {
            name: name.to_string(),
        });
        Ok(GateId(self.gates.len() - 1))
    }

    /// Adds a constant source, reusing an existing gate of the same value.
    pub fn add_const(&mut self, value: Qudit) -> GateId {
        for (idx, gate) in self.gates.iter().enumerate() {
            if matches!(gate, Gate::Const { value: v } if *v == value) {
                return GateId(idx);
            }
        }
        self.gates.push(Gate::Const { value });
        GateId(self.gates.len() - 1)
    }

    fn fanin_limit(&self, op: OperatorKind) -> Option<usize> {
        match op {
            OperatorKind::And | OperatorKind::Min => Some(self.v1),
            OperatorKind::Or | OperatorKind::Max => Some(self.v2),
            _ => None,
        }
    }

    pub fn add_gate(
        &mut self,
        op: OperatorKind,
        inputs: Vec<GateId>,
    ) -> Result<GateId, NetlistError> {
        for id in &inputs {
            if id.0 >= self.gates.len() {
                return Err(NetlistError::UnknownGate(id.0));
            }
        }
        match self.fanin_limit(op) {
            Some(limit) => {
                if inputs.len() < 2 {
                    return Err(NetlistError::BadArity {
                        op,
                        expected: 2,
                        actual: inputs.len(),
                    });
                }
                if inputs.len() > limit {
                    return Err(NetlistError::FanInExceeded {
                        op,
                        actual: inputs.len(),
                        limit,
                    });
                }
            }
            None => {
                let expected = if op.is_unary() { 1 } else { 2 };
                if inputs.len() != expected {
                    return Err(NetlistError::BadArity {
                        op,
                        expected,
                        actual: inputs.len(),
                    });
                }
            }
        }
        self.gates.push(Gate::Logic { op, inputs });
        Ok(GateId(self.gates.len() - 1))
    }

    pub fn add_unary(&mut self, op: OperatorKind, a: GateId) -> Result<GateId, NetlistError> {
        self.add_gate(op, vec![a])
    }

    pub fn add_binary(
        &mut self,
        op: OperatorKind,
        a: GateId,
        b: GateId,
    ) -> Result<GateId, NetlistError> {
        self.add_gate(op, vec![a, b])
    }

    /// Reduces `inputs` under an AND/OR/MIN/MAX tree bounded by `fanin`.
    ///
    /// Uses exactly `ceil((n-1)/(fanin-1))` gates within `ceil(log_fanin n)`
    /// depth: the first gate absorbs the division remainder (taking
    /// `(n-2) mod (fanin-1) + 2` of the leftmost inputs) and every later
    /// gate is full, combining the least-deep pending values first.
    /// A single input is returned unchanged.
    pub fn add_tree(
        &mut self,
        op: OperatorKind,
        inputs: &[GateId],
        fanin: usize,
    ) -> Result<GateId, NetlistError> {
        if self.fanin_limit(op).is_none() {
            return Err(NetlistError::BadTreeKind(op));
        }
        if inputs.is_empty() {
            return Err(NetlistError::EmptyTree);
        }
        if fanin < 2 {
            return Err(NetlistError::BadFanIn(fanin));
        }
        if inputs.len() == 1 {
            return Ok(inputs[0]);
        }
        let mut queue: std::collections::VecDeque<GateId> = inputs.iter().copied().collect();
        let first = (inputs.len() - 2) % (fanin - 1) + 2;
        let group: Vec<GateId> = queue.drain(..first).collect();
        queue.push_back(self.add_gate(op, group)?);
        while queue.len() > 1 {
            let group: Vec<GateId> = queue.drain(..fanin).collect();
            queue.push_back(self.add_gate(op, group)?);
        }
        Ok(queue[0])
    }

    pub fn set_output(&mut self, name: &str, id: GateId) -> Result<(), NetlistError> {
        if id.0 >= self.gates.len() {
            return Err(NetlistError::UnknownGate(id.0));
        }
        if !valid_name(name) {
            return Err(NetlistError::BadInputName(name.to_string()));
        }
        if self.outputs.iter().any(|(n, _)| n == name) {
            return Err(NetlistError::DuplicateOutput(name.to_string()));
        }
        self.outputs.push((name.to_string(), id));
        Ok(())
    }

    /// Evaluates every output for one set of input bindings.
    pub fn simulate(
        &self,
        bindings: &[(String, Qudit)],
    ) -> Result<Vec<(String, Qudit)>, NetlistError> {
        let inputs = self.input_names();
        for (name, _) in bindings {
            if !inputs.contains(&name.as_str()) {
                return Err(NetlistError::UnknownBinding(name.clone()));
            }
        }
        let mut values = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let value = match gate {
                Gate::Input { name } => bindings
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, v)| *v)
                    .ok_or_else(|| NetlistError::UnboundInput(name.clone()))?,
                Gate::Const { value } => *value,
                Gate::Logic { op, inputs } => eval_gate(*op, inputs, &values),
            };
            values.push(value);
        }
        Ok(self
            .outputs
            .iter()
            .map(|(name, id)| (name.clone(), values[id.0]))
            .collect())
    }

    /// Number of logic gates; input and constant sources are not counted.
    pub fn gate_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_logic()).count()
    }

    /// Number of logic gates of one kind.
    pub fn gate_count_of(&self, kind: OperatorKind) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Logic { op, .. } if *op == kind))
            .count()
    }

    /// Fan-in of each logic gate of one kind.
    pub fn fanins_of(&self, kind: OperatorKind) -> Vec<usize> {
        self.gates
            .iter()
            .filter_map(|g| match g {
                Gate::Logic { op, inputs } if *op == kind => Some(inputs.len()),
                _ => None,
            })
            .collect()
    }

    /// Longest logic-gate path from any source to any output; sources sit
    /// at depth 0.
    pub fn depth(&self) -> usize {
        let mut depths = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let depth = match gate {
                Gate::Input { .. } | Gate::Const { .. } => 0,
                Gate::Logic { inputs, .. } => {
                    1 + inputs.iter().map(|id| depths[id.0]).max().unwrap_or(0)
                }
            };
            depths.push(depth);
        }
        self.outputs
            .iter()
            .map(|(_, id)| depths[id.0])
            .max()
            .unwrap_or(0)
    }

    /// Returns a copy with every AND replaced by MIN and every OR by MAX.
    pub fn substitute_minmax(&self) -> Netlist {
        let mut out = self.clone();
        for gate in &mut out.gates {
            if let Gate::Logic { op, .. } = gate {
                *op = match *op {
                    OperatorKind::And => OperatorKind::Min,
                    OperatorKind::Or => OperatorKind::Max,
                    other => other,
                };
            }
        }
        out
    }

    /// Exhaustively tabulates a single-output netlist; the inputs map to
    /// truth-table variables in declaration order.
    pub fn tabulate(&self) -> Result<QFunction, NetlistError> {
        if self.outputs.len() != 1 {
            return Err(NetlistError::NotSingleOutput(self.outputs.len()));
        }
        Ok(self.tabulate_outputs()?.remove(0).1)
    }

    /// Exhaustively tabulates every output.
    pub fn tabulate_outputs(&self) -> Result<Vec<(String, QFunction)>, NetlistError> {
        let input_ids: Vec<usize> = self
            .gates
            .iter()
            .enumerate()
            .filter(|(_, g)| matches!(g, Gate::Input { .. }))
            .map(|(idx, _)| idx)
            .collect();
        let arity = input_ids.len();
        let rows = row_count(arity);
        let mut tables: Vec<Vec<Qudit>> = vec![Vec::with_capacity(rows); self.outputs.len()];
        let mut values = vec![Qudit::ZERO; self.gates.len()];
        for row in 0..rows {
            let vector = vector_from_index(arity, row);
            for (slot, id) in vector.iter().zip(&input_ids) {
                values[*id] = *slot;
            }
            for (idx, gate) in self.gates.iter().enumerate() {
                match gate {
                    Gate::Input { .. } => {}
                    Gate::Const { value } => values[idx] = *value,
                    Gate::Logic { op, inputs } => values[idx] = eval_gate(*op, inputs, &values),
                }
            }
            for (table, (_, id)) in tables.iter_mut().zip(&self.outputs) {
                table.push(values[id.0]);
            }
        }
        let mut out = Vec::with_capacity(self.outputs.len());
        for ((name, _), table) in self.outputs.iter().zip(tables) {
            out.push((name.clone(), QFunction::from_rows(arity, table)?));
        }
        Ok(out)
    }

    /// Serializes to the `.qnet` text format.
    pub fn to_qnet(&self) -> String {
        qnet::write(self)
    }

    /// Parses the `.qnet` text format.
    pub fn parse_qnet(text: &str) -> Result<Netlist, QnetError> {
        qnet::parse(text)
    }
}

fn eval_gate(op: OperatorKind, inputs: &[GateId], values: &[Qudit]) -> Qudit {
    if op.is_unary() {
        apply_unary(op, values[inputs[0].0]).unwrap()
    } else {
        let mut acc = values[inputs[0].0];
        for id in &inputs[1..] {
            acc = apply_dyadic(op, acc, values[id.0]).unwrap();
        }
        acc
    }
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Smallest d with base^d >= n.
fn ceil_log(base: usize, n: usize) -> usize {
    let mut depth = 0;
    let mut capacity = 1usize;
    while capacity < n {
        capacity = capacity.saturating_mul(base);
        depth += 1;
    }
    depth
}

/// A worst-case gate-count and depth bound for one SOP form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SopBounds {
    pub gates: usize,
    pub depth: usize,
}

/// Worst-case bound for lowering a form-I expression of `arity` variables:
/// `4n` equality literals at `eq_gates` apiece, a full AND tree of `n`
/// literals plus the weight constant for each of the `4^n` min-terms, and
/// one OR tree over all min-terms.
pub fn form1_bounds(
    arity: usize,
    v1: usize,
    v2: usize,
    eq_gates: usize,
    eq_depth: usize,
) -> SopBounds {
    let n = arity;
    let rows = row_count(n);
    SopBounds {
        gates: 4 * n * eq_gates + rows * ceil_div(n, v1 - 1) + ceil_div(rows - 1, v2 - 1),
        depth: eq_depth + ceil_log(v1, n + 1) + ceil_log(v2, rows),
    }
}

/// Worst-case bound for lowering a form-II expression of `arity` variables:
/// `3n` literal gates at depth 2, `2^(2n)` min-terms of up to `2n` literals,
/// an OR tree of up to `2^(2n-1)` terms per half, and three gates to mask
/// each half with its weight and merge them.
pub fn form2_bounds(arity: usize, v1: usize, v2: usize) -> SopBounds {
    let n = arity;
    let minterms = 1usize << (2 * n);
    let half = minterms / 2;
    SopBounds {
        gates: 3 * n + minterms * ceil_div(2 * n - 1, v1 - 1) + 2 * ceil_div(half - 1, v2 - 1) + 3,
        depth: 2 + ceil_log(v1, 2 * n) + ceil_log(v2, half) + 2,
    }
}

/// Theoretical bounds paired with the measured size of a lowered netlist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub gate_bound: usize,
    pub depth_bound: usize,
    pub gates: usize,
    pub depth: usize,
}

impl BoundsReport {
    pub fn measure(netlist: &Netlist, bounds: SopBounds) -> BoundsReport {
        BoundsReport {
            gate_bound: bounds.gates,
            depth_bound: bounds.depth,
            gates: netlist.gate_count(),
            depth: netlist.depth(),
        }
    }

    pub fn within_bounds(&self) -> bool {
        self.gates <= self.gate_bound && self.depth <= self.depth_bound
    }
}

/// The truth table that maximizes the term count of one SOP form.
///
/// For form-II both binary halves are the checkerboard (the odd-parity
/// indicator over the 2n-bit row index), so the output is 3 on odd-parity
/// rows and 0 elsewhere. For form-I the table avoids 0 and 3 entirely; the
/// 2-variable fixture is pinned and larger arities draw a reproducible
/// {1,2} table from a fixed per-arity seed.
pub fn worst_case_table(arity: usize, form: SopForm) -> Result<QFunction, TableError> {
    match form {
        SopForm::Form2 => QFunction::tabulate(arity, |x| {
            let row = crate::table::row_index(x);
            if (row.count_ones() & 1) == 1 {
                Qudit::THREE
            } else {
                Qudit::ZERO
            }
        }),
        SopForm::Form1 => {
            if arity == 2 {
                let rows = [2, 1, 2, 1, 1, 2, 1, 2, 2, 1, 1, 2, 1, 2, 2, 1]
                    .iter()
                    .map(|&v| Qudit::new(v).unwrap())
                    .collect();
                return QFunction::from_rows(2, rows);
            }
            use rand_core::{RngCore, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5EED_0000 + arity as u64);
            QFunction::tabulate(arity, |_| {
                Qudit::new(1 + (rng.next_u32() & 1) as u8).unwrap()
            })
        }
    }
}
