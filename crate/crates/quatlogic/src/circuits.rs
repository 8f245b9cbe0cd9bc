//! Generators for the library circuits: equality realizations, unary
//! equality, bitswap built from equality literals, decoder, demultiplexer,
//! multiplexer, and the reference MIN/MAX expressions.

use thiserror::Error;

use crate::algebra::{OperatorKind, Qudit};
use crate::netlist::{GateId, Netlist, NetlistError};
use crate::sop::{Form2Literal, Form2Product, LiteralShape, SopExpr};
use crate::table::{row_count, vector_from_index};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("selector count must be at least 1")]
    ZeroSelectors,
    #[error(transparent)]
    Netlist(#[from] NetlistError),
}

/// The five two-input equality realizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqualityVariant {
    /// Four-term sum of products over the shaped literals of both operands.
    Sop,
    /// XNOR of the operands AND-ed with its own bitswap.
    XnorAnd,
    /// NOR of the operands' XOR and its bitswap.
    Nor,
    /// AND of the outward-inverted XOR and the outward-inverted bitswap.
    OutwardAnd,
    /// Outward inversion of the OR of the XOR and its bitswap.
    OutwardOr,
}

impl EqualityVariant {
    pub const ALL: [EqualityVariant; 5] = [
        EqualityVariant::Sop,
        EqualityVariant::XnorAnd,
        EqualityVariant::Nor,
        EqualityVariant::OutwardAnd,
        EqualityVariant::OutwardOr,
    ];
}

/// Builds a two-input netlist computing the equality operator.
pub fn equality_netlist(
    variant: EqualityVariant,
    v1: usize,
    v2: usize,
) -> Result<Netlist, CircuitError> {
    let mut nl = Netlist::new(v1, v2)?;
    let a = nl.add_input("A")?;
    let b = nl.add_input("B")?;
    let root = match variant {
        EqualityVariant::Sop => {
            let not_a = nl.add_unary(OperatorKind::Not, a)?;
            let swap_a = nl.add_unary(OperatorKind::Bitswap, a)?;
            let swapnot_a = nl.add_unary(OperatorKind::Bitswap, not_a)?;
            let not_b = nl.add_unary(OperatorKind::Not, b)?;
            let swap_b = nl.add_unary(OperatorKind::Bitswap, b)?;
            let swapnot_b = nl.add_unary(OperatorKind::Bitswap, not_b)?;
            let products = [
                [swapnot_a, not_a, swapnot_b, not_b],
                [swapnot_a, a, swapnot_b, b],
                [swap_a, not_a, swap_b, not_b],
                [swap_a, a, swap_b, b],
            ];
            let mut roots = Vec::with_capacity(4);
            for product in products {
                roots.push(nl.add_tree(OperatorKind::And, &product, v1)?);
            }
            nl.add_tree(OperatorKind::Or, &roots, v2)?
        }
        EqualityVariant::XnorAnd => {
            let same = nl.add_binary(OperatorKind::Xnor, a, b)?;
            let swapped = nl.add_unary(OperatorKind::Bitswap, same)?;
            nl.add_binary(OperatorKind::And, same, swapped)?
        }
        EqualityVariant::Nor => {
            let diff = nl.add_binary(OperatorKind::Xor, a, b)?;
            let swapped = nl.add_unary(OperatorKind::Bitswap, diff)?;
            nl.add_binary(OperatorKind::Nor, diff, swapped)?
        }
        EqualityVariant::OutwardAnd => {
            let diff = nl.add_binary(OperatorKind::Xor, a, b)?;
            let abs = nl.add_unary(OperatorKind::Outward, diff)?;
            let swapped = nl.add_unary(OperatorKind::Bitswap, diff)?;
            let abs_swapped = nl.add_unary(OperatorKind::Outward, swapped)?;
            nl.add_binary(OperatorKind::And, abs, abs_swapped)?
        }
        EqualityVariant::OutwardOr => {
            let diff = nl.add_binary(OperatorKind::Xor, a, b)?;
            let swapped = nl.add_unary(OperatorKind::Bitswap, diff)?;
            let either = nl.add_binary(OperatorKind::Or, diff, swapped)?;
            nl.add_unary(OperatorKind::Outward, either)?
        }
    };
    nl.set_output("E", root)?;
    Ok(nl)
}

/// Single-input netlist computing `E(A, constant)`. Comparing against 0 or
/// 3 takes two gates (a bitswap plus a NOR or AND); 1 and 2 fall back to a
/// generic equality gate against a constant source.
pub fn unary_equality(constant: Qudit) -> Result<Netlist, CircuitError> {
    let mut nl = Netlist::new(2, 2)?;
    let a = nl.add_input("A")?;
    let root = match constant.value() {
        0 => {
            let swapped = nl.add_unary(OperatorKind::Bitswap, a)?;
            nl.add_binary(OperatorKind::Nor, a, swapped)?
        }
        3 => {
            let swapped = nl.add_unary(OperatorKind::Bitswap, a)?;
            nl.add_binary(OperatorKind::And, a, swapped)?
        }
        _ => {
            let c = nl.add_const(constant);
            nl.add_binary(OperatorKind::Equality, a, c)?
        }
    };
    nl.set_output("E", root)?;
    Ok(nl)
}

/// Single-input netlist computing the bitswap from equality literals only:
/// `E(A,1).2 + E(A,2).1 + E(A,3)`.
pub fn bitswap_from_equality() -> Result<Netlist, CircuitError> {
    let mut nl = Netlist::new(2, 2)?;
    let a = nl.add_input("A")?;
    let one = nl.add_const(Qudit::ONE);
    let two = nl.add_const(Qudit::TWO);
    let three = nl.add_const(Qudit::THREE);
    let eq_one = nl.add_binary(OperatorKind::Equality, a, one)?;
    let eq_two = nl.add_binary(OperatorKind::Equality, a, two)?;
    let eq_three = nl.add_binary(OperatorKind::Equality, a, three)?;
    let low_to_high = nl.add_binary(OperatorKind::And, eq_one, two)?;
    let high_to_low = nl.add_binary(OperatorKind::And, eq_two, one)?;
    let root = nl.add_tree(OperatorKind::Or, &[low_to_high, high_to_low, eq_three], 2)?;
    nl.set_output("F", root)?;
    Ok(nl)
}

fn selector_inputs(nl: &mut Netlist, n: usize) -> Result<Vec<GateId>, CircuitError> {
    let mut inputs = Vec::with_capacity(n);
    if n == 1 {
        inputs.push(nl.add_input("S")?);
    } else {
        for i in 1..=n {
            inputs.push(nl.add_input(&format!("S{i}"))?);
        }
    }
    Ok(inputs)
}

/// One equality gate per (selector, constant) pair, in selector-major
/// order; every decoder output reuses these shared literals.
fn selector_literals(
    nl: &mut Netlist,
    selectors: &[GateId],
) -> Result<Vec<[GateId; 4]>, CircuitError> {
    let mut literals = Vec::with_capacity(selectors.len());
    for &s in selectors {
        let mut row = [GateId(0); 4];
        for value in Qudit::ALL {
            let c = nl.add_const(value);
            row[value.value() as usize] = nl.add_binary(OperatorKind::Equality, s, c)?;
        }
        literals.push(row);
    }
    Ok(literals)
}

/// n-selector decoder with `4^n` one-hot outputs `L0..`: output `Lj` is 3
/// exactly when the selectors spell the base-4 digits of `j`.
pub fn decoder(n: usize, v1: usize) -> Result<Netlist, CircuitError> {
    if n == 0 {
        return Err(CircuitError::ZeroSelectors);
    }
    let mut nl = Netlist::new(v1, 2)?;
    let selectors = selector_inputs(&mut nl, n)?;
    if n == 1 {
        for value in Qudit::ALL {
            let c = nl.add_const(value);
            let eq = nl.add_binary(OperatorKind::Equality, selectors[0], c)?;
            nl.set_output(&format!("L{value}"), eq)?;
        }
        return Ok(nl);
    }
    let literals = selector_literals(&mut nl, &selectors)?;
    for j in 0..row_count(n) {
        let digits = vector_from_index(n, j);
        let term: Vec<GateId> = digits
            .iter()
            .enumerate()
            .map(|(i, d)| literals[i][d.value() as usize])
            .collect();
        let root = nl.add_tree(OperatorKind::And, &term, v1)?;
        nl.set_output(&format!("L{j}"), root)?;
    }
    Ok(nl)
}

/// The decoder with every equality literal realized from the plain
/// operator set instead of an atomic EQ gate. Comparison against 0 is
/// `NOR(S, ~S)`, against 3 is `AND(S, ~S)`, and the middle constants share
/// one `XOR(S, 1)`: its AND with its own bitswap is `E(S,2)`, and the same
/// structure over its complement is `E(S,1)`.
pub fn decoder_expanded(n: usize, v1: usize) -> Result<Netlist, CircuitError> {
    if n == 0 {
        return Err(CircuitError::ZeroSelectors);
    }
    let mut nl = Netlist::new(v1, 2)?;
    let selectors = selector_inputs(&mut nl, n)?;
    let mut literals = Vec::with_capacity(n);
    for &s in &selectors {
        let swapped = nl.add_unary(OperatorKind::Bitswap, s)?;
        let eq_zero = nl.add_binary(OperatorKind::Nor, s, swapped)?;
        let eq_three = nl.add_binary(OperatorKind::And, s, swapped)?;
        let one = nl.add_const(Qudit::ONE);
        let x = nl.add_binary(OperatorKind::Xor, s, one)?;
        let nx = nl.add_unary(OperatorKind::Not, x)?;
        let nx_swapped = nl.add_unary(OperatorKind::Bitswap, nx)?;
        let eq_one = nl.add_binary(OperatorKind::And, nx, nx_swapped)?;
        let x_swapped = nl.add_unary(OperatorKind::Bitswap, x)?;
        let eq_two = nl.add_binary(OperatorKind::And, x, x_swapped)?;
        literals.push([eq_zero, eq_one, eq_two, eq_three]);
    }
    if n == 1 {
        for value in Qudit::ALL {
            nl.set_output(&format!("L{value}"), literals[0][value.value() as usize])?;
        }
        return Ok(nl);
    }
    for j in 0..row_count(n) {
        let digits = vector_from_index(n, j);
        let term: Vec<GateId> = digits
            .iter()
            .enumerate()
            .map(|(i, d)| literals[i][d.value() as usize])
            .collect();
        let root = nl.add_tree(OperatorKind::And, &term, v1)?;
        nl.set_output(&format!("L{j}"), root)?;
    }
    Ok(nl)
}

/// n-selector demultiplexer: the decoder with the data input `D` joined
/// into every output AND, so `Lj` carries `D` on the selected line.
pub fn demux(n: usize, v1: usize) -> Result<Netlist, CircuitError> {
    if n == 0 {
        return Err(CircuitError::ZeroSelectors);
    }
    let mut nl = Netlist::new(v1, 2)?;
    let selectors = selector_inputs(&mut nl, n)?;
    let data = nl.add_input("D")?;
    let literals = selector_literals(&mut nl, &selectors)?;
    for j in 0..row_count(n) {
        let digits = vector_from_index(n, j);
        let mut term: Vec<GateId> = digits
            .iter()
            .enumerate()
            .map(|(i, d)| literals[i][d.value() as usize])
            .collect();
        term.push(data);
        let root = nl.add_tree(OperatorKind::And, &term, v1)?;
        nl.set_output(&format!("L{j}"), root)?;
    }
    Ok(nl)
}

/// n-selector multiplexer over `4^n` data inputs `D0..`; the output `M`
/// follows the selected data line.
pub fn mux(n: usize, v1: usize, v2: usize) -> Result<Netlist, CircuitError> {
    if n == 0 {
        return Err(CircuitError::ZeroSelectors);
    }
    let mut nl = Netlist::new(v1, v2)?;
    let selectors = selector_inputs(&mut nl, n)?;
    let data: Vec<GateId> = (0..row_count(n))
        .map(|j| nl.add_input(&format!("D{j}")))
        .collect::<Result<_, _>>()?;
    let literals = selector_literals(&mut nl, &selectors)?;
    let mut terms = Vec::with_capacity(row_count(n));
    for (j, &data_line) in data.iter().enumerate() {
        let digits = vector_from_index(n, j);
        let mut term: Vec<GateId> = digits
            .iter()
            .enumerate()
            .map(|(i, d)| literals[i][d.value() as usize])
            .collect();
        term.push(data_line);
        terms.push(nl.add_tree(OperatorKind::And, &term, v1)?);
    }
    let root = nl.add_tree(OperatorKind::Or, &terms, v2)?;
    nl.set_output("M", root)?;
    Ok(nl)
}

fn lit(var: usize, shape: LiteralShape) -> Form2Literal {
    Form2Literal { var, shape }
}

/// The reference two-input MIN expression, kept as a fixture to
/// cross-validate synthesis:
/// `(A.B + ~A.~NOT(B).B + ~B.~NOT(A).A).1 + (A.B).2`.
pub fn min_reference() -> SopExpr {
    use LiteralShape::{Plain, Swap, SwapNot};
    SopExpr::form2(
        2,
        vec![
            Form2Product {
                literals: vec![lit(0, Plain), lit(1, Plain)],
                weight: Qudit::ONE,
            },
            Form2Product {
                literals: vec![lit(0, Swap), lit(1, SwapNot), lit(1, Plain)],
                weight: Qudit::ONE,
            },
            Form2Product {
                literals: vec![lit(1, Swap), lit(0, SwapNot), lit(0, Plain)],
                weight: Qudit::ONE,
            },
            Form2Product {
                literals: vec![lit(0, Plain), lit(1, Plain)],
                weight: Qudit::TWO,
            },
        ],
    )
    .expect("fixture is well formed")
}

/// The reference two-input MAX expression:
/// `(~A.A + ~B.B + ~NOT(A).B + ~NOT(B).A).1 + (A + B).2`.
pub fn max_reference() -> SopExpr {
    use LiteralShape::{Plain, Swap, SwapNot};
    SopExpr::form2(
        2,
        vec![
            Form2Product {
                literals: vec![lit(0, Swap), lit(0, Plain)],
                weight: Qudit::ONE,
            },
            Form2Product {
                literals: vec![lit(1, Swap), lit(1, Plain)],
                weight: Qudit::ONE,
            },
            Form2Product {
                literals: vec![lit(0, SwapNot), lit(1, Plain)],
                weight: Qudit::ONE,
            },
            Form2Product {
                literals: vec![lit(1, SwapNot), lit(0, Plain)],
                weight: Qudit::ONE,
            },
            Form2Product {
                literals: vec![lit(0, Plain)],
                weight: Qudit::TWO,
            },
            Form2Product {
                literals: vec![lit(1, Plain)],
                weight: Qudit::TWO,
            },
        ],
    )
    .expect("fixture is well formed")
}
