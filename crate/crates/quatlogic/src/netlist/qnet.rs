//! The `.qnet` netlist text format.
//!
//! ```text
//! quatnet 1
//! fanin 2 2
//! input S
//! const g1 0
//! g2 = EQ S g1
//! output L0 g2
//! ```
//!
//! Declarations appear in gate-id order; `g<id>` ids are strictly
//! increasing; operands are `g<id>` or input names; `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{OperatorKind, Qudit};

use super::{Gate, GateId, Netlist, NetlistError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QnetError {
    #[error("line {line}: expected header `quatnet 1`")]
    BadMagic { line: usize },
    #[error("line {line}: expected `fanin <v1> <v2>`")]
    BadFanin { line: usize },
    #[error("line {line}: unrecognized declaration")]
    BadLine { line: usize },
    #[error("line {line}: gate ids must be strictly increasing")]
    NonIncreasingId { line: usize },
    #[error("line {line}: unknown operator `{token}`")]
    BadKind { line: usize, token: String },
    #[error("line {line}: unknown operand `{token}`")]
    UnknownOperand { line: usize, token: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: NetlistError },
    #[error("missing `quatnet` header")]
    MissingHeader,
}

pub fn write(netlist: &Netlist) -> String {
    let mut out = String::new();
    let (v1, v2) = netlist.fanin_limits();
    writeln!(out, "quatnet 1").unwrap();
    writeln!(out, "fanin {v1} {v2}").unwrap();
    let operand = |id: &GateId| match &netlist.gates()[id.0] {
        Gate::Input { name } => name.clone(),
        _ => id.to_string(),
    };
    for (idx, gate) in netlist.gates().iter().enumerate() {
        match gate {
            Gate::Input { name } => writeln!(out, "input {name}").unwrap(),
            Gate::Const { value } => writeln!(out, "const g{idx} {value}").unwrap(),
            Gate::Logic { op, inputs } => {
                write!(out, "g{idx} = {}", op.token()).unwrap();
                for id in inputs {
                    write!(out, " {}", operand(id)).unwrap();
                }
                out.push('\n');
            }
        }
    }
    for (name, id) in netlist.outputs() {
        writeln!(out, "output {name} {}", operand(id)).unwrap();
    }
    out
}

pub fn parse(text: &str) -> Result<Netlist, QnetError> {
    let mut netlist: Option<Netlist> = None;
    let mut saw_magic = false;
    let mut ids: HashMap<usize, GateId> = HashMap::new();
    let mut names: HashMap<String, GateId> = HashMap::new();
    let mut last_id: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if !saw_magic {
            if tokens == ["quatnet", "1"] {
                saw_magic = true;
                continue;
            }
            return Err(QnetError::BadMagic { line });
        }
        let Some(nl) = netlist.as_mut() else {
            if tokens.len() == 3 && tokens[0] == "fanin" {
                let v1 = tokens[1].parse::<usize>().ok();
                let v2 = tokens[2].parse::<usize>().ok();
                if let (Some(v1), Some(v2)) = (v1, v2) {
                    netlist = Some(
                        Netlist::new(v1, v2)
                            .map_err(|source| QnetError::Invalid { line, source })?,
                    );
                    continue;
                }
            }
            return Err(QnetError::BadFanin { line });
        };

        let resolve = |token: &str,
                       ids: &HashMap<usize, GateId>,
                       names: &HashMap<String, GateId>|
         -> Result<GateId, QnetError> {
            if let Some(id) = parse_gate_ref(token) {
                return ids.get(&id).copied().ok_or(QnetError::UnknownOperand {
                    line,
                    token: token.to_string(),
                });
            }
            names.get(token).copied().ok_or(QnetError::UnknownOperand {
                line,
                token: token.to_string(),
            })
        };

        match tokens.as_slice() {
            ["input", name] => {
                let id = nl
                    .add_input(name)
                    .map_err(|source| QnetError::Invalid { line, source })?;
                names.insert(name.to_string(), id);
            }
            ["const", gate_ref, value] => {
                let declared = parse_gate_ref(gate_ref).ok_or(QnetError::BadLine { line })?;
                check_increasing(&mut last_id, declared, line)?;
                let value = value
                    .parse::<u8>()
                    .ok()
                    .and_then(|v| Qudit::new(v).ok())
                    .ok_or(QnetError::BadLine { line })?;
                ids.insert(declared, nl.add_const(value));
            }
            ["output", name, operand] => {
                let id = resolve(operand, &ids, &names)?;
                nl.set_output(name, id)
                    .map_err(|source| QnetError::Invalid { line, source })?;
            }
            [gate_ref, "=", kind, operands @ ..] => {
                let declared = parse_gate_ref(gate_ref).ok_or(QnetError::BadLine { line })?;
                check_increasing(&mut last_id, declared, line)?;
                let op = OperatorKind::from_token(kind).ok_or_else(|| QnetError::BadKind {
                    line,
                    token: kind.to_string(),
                })?;
                let mut inputs = Vec::with_capacity(operands.len());
                for token in operands {
                    inputs.push(resolve(token, &ids, &names)?);
                }
                let id = nl
                    .add_gate(op, inputs)
                    .map_err(|source| QnetError::Invalid { line, source })?;
                ids.insert(declared, id);
            }
            _ => return Err(QnetError::BadLine { line }),
        }
    }
    if !saw_magic {
        return Err(QnetError::MissingHeader);
    }
    netlist.ok_or(QnetError::MissingHeader)
}

fn parse_gate_ref(token: &str) -> Option<usize> {
    let digits = token.strip_prefix('g')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn check_increasing(
    last: &mut Option<usize>,
    declared: usize,
    line: usize,
) -> Result<(), QnetError> {
    if let Some(prev) = *last {
        if declared <= prev {
            return Err(QnetError::NonIncreasingId { line });
        }
    }
    *last = Some(declared);
    Ok(())
}
