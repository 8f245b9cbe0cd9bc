//! Four-valued logic levels and the operator set defined over them.
//!
//! A [`Qudit`] is a logic level in `{0, 1, 2, 3}`, viewed as a packed pair
//! of bits `<a1, a0>` with magnitude `2*a1 + a0`. Most dyadic operators act
//! bitwise on the packed pair; bitswap exchanges the two bits; the inward
//! and outward inverters invert and then snap to the asymmetric or absolute
//! levels respectively.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("logic level {0} out of range (expected 0..=3)")]
    InvalidLevel(u8),
    #[error("{0} is not a unary operator")]
    NotUnary(OperatorKind),
    #[error("{0} is not a dyadic operator")]
    NotDyadic(OperatorKind),
}

/// A single quaternary digit.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Qudit(u8);

impl Qudit {
    pub const ZERO: Qudit = Qudit(0);
    pub const ONE: Qudit = Qudit(1);
    pub const TWO: Qudit = Qudit(2);
    pub const THREE: Qudit = Qudit(3);

    /// All four levels in ascending order.
    pub const ALL: [Qudit; 4] = [Qudit(0), Qudit(1), Qudit(2), Qudit(3)];

    pub fn new(value: u8) -> Result<Qudit, AlgebraError> {
        if value <= 3 {
            Ok(Qudit(value))
        } else {
            Err(AlgebraError::InvalidLevel(value))
        }
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    /// Builds a level from its high and low bit: `2*high + low`.
    pub const fn pack(high: bool, low: bool) -> Qudit {
        Qudit((high as u8) << 1 | low as u8)
    }

    /// Splits a level into its `(high, low)` bit pair.
    pub const fn unpack(self) -> (bool, bool) {
        (self.0 & 2 != 0, self.0 & 1 != 0)
    }

    /// True for the absolute levels 0 and 3, whose bit pair survives a swap.
    pub const fn is_symmetric(self) -> bool {
        self.0 == 0 || self.0 == 3
    }

    /// Bitwise complement of the pair: `0<->3`, `1<->2`.
    pub const fn complement(self) -> Qudit {
        Qudit(3 - self.0)
    }

    /// Exchanges the two packed bits: fixes 0 and 3, swaps 1 and 2.
    pub const fn bitswap(self) -> Qudit {
        Qudit((self.0 >> 1) | ((self.0 & 1) << 1))
    }

    /// Inverts, then maps the absolute levels to the nearest asymmetric
    /// level: the result is `<!a1, a1>`, always 1 or 2.
    pub const fn inward(self) -> Qudit {
        let a1 = self.0 >> 1;
        Qudit((1 - a1) << 1 | a1)
    }

    /// Inverts, then maps the asymmetric levels to the nearest absolute
    /// level: the result is `<!a1, !a1>`, always 0 or 3.
    pub const fn outward(self) -> Qudit {
        if self.0 >> 1 == 0 {
            Qudit(3)
        } else {
            Qudit(0)
        }
    }

    pub const fn and(self, other: Qudit) -> Qudit {
        Qudit(self.0 & other.0)
    }

    pub const fn or(self, other: Qudit) -> Qudit {
        Qudit(self.0 | other.0)
    }

    pub const fn xor(self, other: Qudit) -> Qudit {
        Qudit(self.0 ^ other.0)
    }

    pub const fn xnor(self, other: Qudit) -> Qudit {
        self.xor(other).complement()
    }

    pub const fn nand(self, other: Qudit) -> Qudit {
        self.and(other).complement()
    }

    pub const fn nor(self, other: Qudit) -> Qudit {
        self.or(other).complement()
    }

    /// Returns 3 when both operands are equal, 0 otherwise.
    pub const fn equality(self, other: Qudit) -> Qudit {
        if self.0 == other.0 {
            Qudit(3)
        } else {
            Qudit(0)
        }
    }

    pub const fn min(self, other: Qudit) -> Qudit {
        if self.0 <= other.0 {
            self
        } else {
            other
        }
    }

    pub const fn max(self, other: Qudit) -> Qudit {
        if self.0 >= other.0 {
            self
        } else {
            other
        }
    }
}

impl BitAnd for Qudit {
    type Output = Qudit;
    fn bitand(self, rhs: Qudit) -> Qudit {
        self.and(rhs)
    }
}

impl BitOr for Qudit {
    type Output = Qudit;
    fn bitor(self, rhs: Qudit) -> Qudit {
        self.or(rhs)
    }
}

impl BitXor for Qudit {
    type Output = Qudit;
    fn bitxor(self, rhs: Qudit) -> Qudit {
        self.xor(rhs)
    }
}

impl fmt::Display for Qudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Qudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u8> for Qudit {
    type Error = AlgebraError;
    fn try_from(value: u8) -> Result<Qudit, AlgebraError> {
        Qudit::new(value)
    }
}

/// The operator vocabulary. NAND, NOR and XNOR are derived operators,
/// defined as the complement of AND, OR and XOR respectively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OperatorKind {
    Not,
    Bitswap,
    Inward,
    Outward,
    And,
    Or,
    Xor,
    Xnor,
    Equality,
    Min,
    Max,
    Nand,
    Nor,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 13] = [
        OperatorKind::Not,
        OperatorKind::Bitswap,
        OperatorKind::Inward,
        OperatorKind::Outward,
        OperatorKind::And,
        OperatorKind::Or,
        OperatorKind::Xor,
        OperatorKind::Xnor,
        OperatorKind::Equality,
        OperatorKind::Min,
        OperatorKind::Max,
        OperatorKind::Nand,
        OperatorKind::Nor,
    ];

    pub const fn is_unary(self) -> bool {
        matches!(
            self,
            OperatorKind::Not
                | OperatorKind::Bitswap
                | OperatorKind::Inward
                | OperatorKind::Outward
        )
    }

    /// Upper-case token used in the netlist text format.
    pub const fn token(self) -> &'static str {
        match self {
            OperatorKind::Not => "NOT",
            OperatorKind::Bitswap => "BITSWAP",
            OperatorKind::Inward => "INWARD",
            OperatorKind::Outward => "OUTWARD",
            OperatorKind::And => "AND",
            OperatorKind::Or => "OR",
            OperatorKind::Xor => "XOR",
            OperatorKind::Xnor => "XNOR",
            OperatorKind::Equality => "EQ",
            OperatorKind::Min => "MIN",
            OperatorKind::Max => "MAX",
            OperatorKind::Nand => "NAND",
            OperatorKind::Nor => "NOR",
        }
    }

    pub fn from_token(token: &str) -> Option<OperatorKind> {
        OperatorKind::ALL.into_iter().find(|op| op.token() == token)
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Applies a unary operator; rejects dyadic tags.
pub fn apply_unary(op: OperatorKind, a: Qudit) -> Result<Qudit, AlgebraError> {
    match op {
        OperatorKind::Not => Ok(a.complement()),
        OperatorKind::Bitswap => Ok(a.bitswap()),
        OperatorKind::Inward => Ok(a.inward()),
        OperatorKind::Outward => Ok(a.outward()),
        _ => Err(AlgebraError::NotUnary(op)),
    }
}

/// Applies a dyadic operator; rejects unary tags.
pub fn apply_dyadic(op: OperatorKind, a: Qudit, b: Qudit) -> Result<Qudit, AlgebraError> {
    match op {
        OperatorKind::And => Ok(a.and(b)),
        OperatorKind::Or => Ok(a.or(b)),
        OperatorKind::Xor => Ok(a.xor(b)),
        OperatorKind::Xnor => Ok(a.xnor(b)),
        OperatorKind::Equality => Ok(a.equality(b)),
        OperatorKind::Min => Ok(a.min(b)),
        OperatorKind::Max => Ok(a.max(b)),
        OperatorKind::Nand => Ok(a.nand(b)),
        OperatorKind::Nor => Ok(a.nor(b)),
        _ => Err(AlgebraError::NotDyadic(op)),
    }
}
