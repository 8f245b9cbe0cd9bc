//! Lowering of sum-of-products expressions to fan-in-bounded netlists.
//!
//! Form-I: each distinct equality literal is computed once, every min-term
//! gets an AND tree over its literals plus the weight constant, and one OR
//! tree merges the terms. Form-II: at most three literal gates per variable
//! (NOT, BITSWAP, BITSWAP of NOT), an AND tree per product, one OR tree per
//! weight half, a weight-masking AND per half and a final OR. Peephole
//! inverter terms feed the final OR directly.

use std::collections::HashMap;

use crate::algebra::{OperatorKind, Qudit};
use crate::sop::{Form1Term, Form2Term, InverterKind, LiteralShape, SopBody, SopExpr, SopForm};

use super::{GateId, Netlist, NetlistError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LowerOptions {
    /// AND/MIN fan-in limit.
    pub v1: usize,
    /// OR/MAX fan-in limit.
    pub v2: usize,
    /// Realize each equality literal from XOR, BITSWAP, outward inverters
    /// and AND instead of an atomic EQ gate.
    pub expand_equality: bool,
    /// Emit MIN/MAX gates in place of AND/OR (form-I only).
    pub use_minmax: bool,
}

impl Default for LowerOptions {
    fn default() -> LowerOptions {
        LowerOptions {
            v1: 2,
            v2: 2,
            expand_equality: false,
            use_minmax: false,
        }
    }
}

struct Lowerer<'a> {
    netlist: Netlist,
    options: &'a LowerOptions,
    inputs: Vec<GateId>,
    eq_cache: HashMap<(usize, u8), GateId>,
    shape_cache: HashMap<(usize, LiteralShape), GateId>,
    inverter_cache: HashMap<(usize, bool), GateId>,
}

impl<'a> Lowerer<'a> {
    fn new(arity: usize, options: &'a LowerOptions) -> Result<Lowerer<'a>, NetlistError> {
        let mut netlist = Netlist::new(options.v1, options.v2)?;
        let mut inputs = Vec::with_capacity(arity);
        for i in 1..=arity {
            inputs.push(netlist.add_input(&format!("X{i}"))?);
        }
        Ok(Lowerer {
            netlist,
            options,
            inputs,
            eq_cache: HashMap::new(),
            shape_cache: HashMap::new(),
            inverter_cache: HashMap::new(),
        })
    }

    fn equality_literal(&mut self, var: usize, constant: Qudit) -> Result<GateId, NetlistError> {
        if let Some(&id) = self.eq_cache.get(&(var, constant.value())) {
            return Ok(id);
        }
        let c = self.netlist.add_const(constant);
        let x = self.inputs[var];
        let id = if self.options.expand_equality {
            let diff = self.netlist.add_binary(OperatorKind::Xor, x, c)?;
            let abs = self.netlist.add_unary(OperatorKind::Outward, diff)?;
            let swapped = self.netlist.add_unary(OperatorKind::Bitswap, diff)?;
            let abs_swapped = self.netlist.add_unary(OperatorKind::Outward, swapped)?;
            self.netlist
                .add_binary(OperatorKind::And, abs, abs_swapped)?
        } else {
            self.netlist.add_binary(OperatorKind::Equality, x, c)?
        };
        self.eq_cache.insert((var, constant.value()), id);
        Ok(id)
    }

    fn shaped_literal(&mut self, var: usize, shape: LiteralShape) -> Result<GateId, NetlistError> {
        if shape == LiteralShape::Plain {
            return Ok(self.inputs[var]);
        }
        if let Some(&id) = self.shape_cache.get(&(var, shape)) {
            return Ok(id);
        }
        let id = match shape {
            LiteralShape::Plain => unreachable!(),
            LiteralShape::Not => self
                .netlist
                .add_unary(OperatorKind::Not, self.inputs[var])?,
            LiteralShape::Swap => self
                .netlist
                .add_unary(OperatorKind::Bitswap, self.inputs[var])?,
            LiteralShape::SwapNot => {
                let not = self.shaped_literal(var, LiteralShape::Not)?;
                self.netlist.add_unary(OperatorKind::Bitswap, not)?
            }
        };
        self.shape_cache.insert((var, shape), id);
        Ok(id)
    }

    fn inverter(&mut self, kind: InverterKind, var: usize) -> Result<GateId, NetlistError> {
        let key = (var, matches!(kind, InverterKind::Inward));
        if let Some(&id) = self.inverter_cache.get(&key) {
            return Ok(id);
        }
        let op = match kind {
            InverterKind::Inward => OperatorKind::Inward,
            InverterKind::Outward => OperatorKind::Outward,
        };
        let id = self.netlist.add_unary(op, self.inputs[var])?;
        self.inverter_cache.insert(key, id);
        Ok(id)
    }

    fn and_tree(&mut self, inputs: &[GateId]) -> Result<GateId, NetlistError> {
        self.netlist
            .add_tree(OperatorKind::And, inputs, self.options.v1)
    }

    fn or_tree(&mut self, inputs: &[GateId]) -> Result<GateId, NetlistError> {
        self.netlist
            .add_tree(OperatorKind::Or, inputs, self.options.v2)
    }

    fn lower_form1(&mut self, terms: &[Form1Term]) -> Result<GateId, NetlistError> {
        let mut roots = Vec::with_capacity(terms.len());
        for term in terms {
            let root = match term {
                Form1Term::Minterm(p) => {
                    let mut tree_inputs = Vec::with_capacity(p.literals.len() + 1);
                    for lit in &p.literals {
                        tree_inputs.push(self.equality_literal(lit.var, lit.constant)?);
                    }
                    tree_inputs.push(self.netlist.add_const(p.weight));
                    self.and_tree(&tree_inputs)?
                }
                Form1Term::Inverter {
                    kind,
                    var,
                    cofactor,
                } => {
                    let mut tree_inputs = Vec::with_capacity(cofactor.len() + 1);
                    tree_inputs.push(self.inverter(*kind, *var)?);
                    for lit in cofactor {
                        tree_inputs.push(self.equality_literal(lit.var, lit.constant)?);
                    }
                    self.and_tree(&tree_inputs)?
                }
            };
            roots.push(root);
        }
        if roots.is_empty() {
            Ok(self.netlist.add_const(Qudit::ZERO))
        } else {
            self.or_tree(&roots)
        }
    }

    fn lower_form2(&mut self, terms: &[Form2Term]) -> Result<GateId, NetlistError> {
        let mut low_roots = Vec::new();
        let mut high_roots = Vec::new();
        let mut inverter_roots = Vec::new();
        for term in terms {
            match term {
                Form2Term::Product(p) => {
                    let root = if p.literals.is_empty() {
                        self.netlist.add_const(Qudit::THREE)
                    } else {
                        let mut tree_inputs = Vec::with_capacity(p.literals.len());
                        for lit in &p.literals {
                            tree_inputs.push(self.shaped_literal(lit.var, lit.shape)?);
                        }
                        self.and_tree(&tree_inputs)?
                    };
                    if p.weight == Qudit::ONE {
                        low_roots.push(root);
                    } else {
                        high_roots.push(root);
                    }
                }
                Form2Term::Inverter {
                    kind,
                    var,
                    cofactor,
                } => {
                    let mut tree_inputs = Vec::with_capacity(cofactor.len() + 1);
                    tree_inputs.push(self.inverter(*kind, *var)?);
                    for lit in cofactor {
                        tree_inputs.push(self.shaped_literal(lit.var, lit.shape)?);
                    }
                    inverter_roots.push(self.and_tree(&tree_inputs)?);
                }
            }
        }
        let mut merged = Vec::new();
        if !low_roots.is_empty() {
            let or = self.or_tree(&low_roots)?;
            let weight = self.netlist.add_const(Qudit::ONE);
            merged.push(self.netlist.add_binary(OperatorKind::And, or, weight)?);
        }
        if !high_roots.is_empty() {
            let or = self.or_tree(&high_roots)?;
            let weight = self.netlist.add_const(Qudit::TWO);
            merged.push(self.netlist.add_binary(OperatorKind::And, or, weight)?);
        }
        merged.extend(inverter_roots);
        if merged.is_empty() {
            Ok(self.netlist.add_const(Qudit::ZERO))
        } else {
            self.or_tree(&merged)
        }
    }
}

/// Lowers an expression to a netlist with inputs `X1..Xn` and output `F`.
pub fn lower_sop(expr: &SopExpr, options: &LowerOptions) -> Result<Netlist, NetlistError> {
    let minmax = options.use_minmax || expr.uses_minmax();
    if minmax && expr.form() == SopForm::Form2 {
        return Err(NetlistError::MinMaxOnForm2);
    }
    let mut lowerer = Lowerer::new(expr.arity(), options)?;
    let root = match expr.body() {
        SopBody::Form1(terms) => lowerer.lower_form1(terms)?,
        SopBody::Form2(terms) => lowerer.lower_form2(terms)?,
    };
    let mut netlist = lowerer.netlist;
    netlist.set_output("F", root)?;
    if minmax {
        netlist = netlist.substitute_minmax();
    }
    Ok(netlist)
}
