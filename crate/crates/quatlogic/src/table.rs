//! Completely specified n-variable quaternary functions as truth tables.
//!
//! Tables are stored in canonical row order: the row index of an input
//! vector `(x1, .., xn)` is `sum x_i * 4^(n-i)`, i.e. the vector read as a
//! base-4 number with `x1` most significant. All file I/O and fixtures use
//! this order.

use std::error::Error as StdError;
use std::fmt::Write as _;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::algebra::Qudit;

/// Largest supported arity; a table for arity n has 4^n rows.
pub const MAX_ARITY: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("arity {0} out of range (expected 1..={MAX_ARITY})")]
    ArityOutOfRange(usize),
    #[error("expected {expected} rows for arity {arity}, got {actual}")]
    RowCountMismatch {
        arity: usize,
        expected: usize,
        actual: usize,
    },
    #[error("input vector has {actual} values, function takes {expected}")]
    ArityMismatch { expected: usize, actual: usize },
}

#[derive(Debug, Error)]
#[error("evaluator failed at input {input:?}")]
pub struct TabulateError<E: StdError + 'static> {
    pub input: Vec<Qudit>,
    #[source]
    pub source: E,
}

/// Errors raised while parsing the `.qtt` truth-table text format.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QttError {
    #[error("line {line}: expected header `vars <n>`")]
    BadHeader { line: usize },
    #[error("line {line}: invalid base-4 digit `{token}`")]
    BadDigit { line: usize, token: String },
    #[error("line {line}: expected {expected} columns, got {actual}")]
    BadColumnCount {
        line: usize,
        expected: usize,
        actual: usize,
    },
    #[error("line {line}: row out of order (expected inputs for row {expected})")]
    RowOutOfOrder { line: usize, expected: usize },
    #[error("line {line}: unexpected data after last row")]
    TrailingData { line: usize },
    #[error("missing rows: expected {expected}, got {actual}")]
    MissingRows { expected: usize, actual: usize },
    #[error("missing trailing newline")]
    MissingTrailingNewline,
    #[error(transparent)]
    Table(#[from] TableError),
}

fn check_arity(arity: usize) -> Result<(), TableError> {
    if (1..=MAX_ARITY).contains(&arity) {
        Ok(())
    } else {
        Err(TableError::ArityOutOfRange(arity))
    }
}

/// Number of truth-table rows for a given arity.
pub fn row_count(arity: usize) -> usize {
    1usize << (2 * arity)
}

/// Canonical row index of an input vector; `x[0]` is most significant.
pub fn row_index(x: &[Qudit]) -> usize {
    x.iter().fold(0, |acc, q| acc * 4 + q.value() as usize)
}

/// Inverse of [`row_index`] for a fixed arity.
pub fn vector_from_index(arity: usize, row: usize) -> Vec<Qudit> {
    let mut values = vec![Qudit::ZERO; arity];
    let mut rest = row;
    for slot in values.iter_mut().rev() {
        *slot = Qudit::new((rest % 4) as u8).unwrap();
        rest /= 4;
    }
    values
}

/// Iterates all input vectors of the given arity in canonical row order.
pub fn input_vectors(arity: usize) -> impl Iterator<Item = Vec<Qudit>> {
    (0..row_count(arity)).map(move |row| vector_from_index(arity, row))
}

/// A completely specified quaternary function of `arity` variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QFunction {
    arity: usize,
    outputs: Vec<Qudit>,
}

/// Non-zero rows of a function, grouped by output value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MintermPartition {
    pub ones: Vec<Vec<Qudit>>,
    pub twos: Vec<Vec<Qudit>>,
    pub threes: Vec<Vec<Qudit>>,
}

impl MintermPartition {
    /// Input vectors whose output equals `value` (1, 2 or 3).
    pub fn for_value(&self, value: Qudit) -> &[Vec<Qudit>] {
        match value.value() {
            1 => &self.ones,
            2 => &self.twos,
            3 => &self.threes,
            _ => &[],
        }
    }
}

impl QFunction {
    pub fn from_rows(arity: usize, outputs: Vec<Qudit>) -> Result<QFunction, TableError> {
        check_arity(arity)?;
        let expected = row_count(arity);
        if outputs.len() != expected {
            return Err(TableError::RowCountMismatch {
                arity,
                expected,
                actual: outputs.len(),
            });
        }
        Ok(QFunction { arity, outputs })
    }

    pub fn constant(arity: usize, value: Qudit) -> Result<QFunction, TableError> {
        check_arity(arity)?;
        Ok(QFunction {
            arity,
            outputs: vec![value; row_count(arity)],
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn outputs(&self) -> &[Qudit] {
        &self.outputs
    }

    pub fn row_count(&self) -> usize {
        self.outputs.len()
    }

    pub fn eval_row(&self, row: usize) -> Qudit {
        self.outputs[row]
    }

    pub fn eval(&self, x: &[Qudit]) -> Result<Qudit, TableError> {
        if x.len() != self.arity {
            return Err(TableError::ArityMismatch {
                expected: self.arity,
                actual: x.len(),
            });
        }
        Ok(self.outputs[row_index(x)])
    }

    /// Tabulates an evaluator exhaustively over all 4^n inputs. This is the
    /// brute-force oracle used to check expressions and netlists.
    pub fn tabulate(
        arity: usize,
        mut eval: impl FnMut(&[Qudit]) -> Qudit,
    ) -> Result<QFunction, TableError> {
        check_arity(arity)?;
        let outputs = input_vectors(arity).map(|x| eval(&x)).collect();
        Ok(QFunction { arity, outputs })
    }

    /// Like [`QFunction::tabulate`] but propagates evaluator failures along
    /// with the offending input vector.
    pub fn try_tabulate<E: StdError + 'static>(
        arity: usize,
        mut eval: impl FnMut(&[Qudit]) -> Result<Qudit, E>,
    ) -> Result<QFunction, TabulateError<E>> {
        check_arity(arity).expect("arity out of range");
        let mut outputs = Vec::with_capacity(row_count(arity));
        for x in input_vectors(arity) {
            match eval(&x) {
                Ok(q) => outputs.push(q),
                Err(source) => return Err(TabulateError { input: x, source }),
            }
        }
        Ok(QFunction { arity, outputs })
    }

    /// Deterministic pseudorandom table: ChaCha8 keyed by `seed`, each entry
    /// drawn as `next_u32() & 3` in canonical row order.
    pub fn random(arity: usize, seed: u64) -> Result<QFunction, TableError> {
        check_arity(arity)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let outputs = (0..row_count(arity))
            .map(|_| Qudit::new((rng.next_u32() & 3) as u8).unwrap())
            .collect();
        Ok(QFunction { arity, outputs })
    }

    /// Splits the non-zero rows by output value, each group sorted by
    /// ascending row index.
    pub fn partition(&self) -> MintermPartition {
        let mut partition = MintermPartition {
            ones: Vec::new(),
            twos: Vec::new(),
            threes: Vec::new(),
        };
        for (row, out) in self.outputs.iter().enumerate() {
            let bucket = match out.value() {
                1 => &mut partition.ones,
                2 => &mut partition.twos,
                3 => &mut partition.threes,
                _ => continue,
            };
            bucket.push(vector_from_index(self.arity, row));
        }
        partition
    }

    /// Serializes to the `.qtt` text format.
    pub fn to_qtt(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vars {}", self.arity).unwrap();
        for (row, value) in self.outputs.iter().enumerate() {
            for x in vector_from_index(self.arity, row) {
                write!(out, "{x} ").unwrap();
            }
            writeln!(out, "{value}").unwrap();
        }
        out
    }

    /// Parses the `.qtt` text format. Rows must appear in canonical order;
    /// `#` starts a comment line; the file must end with a newline.
    pub fn parse_qtt(text: &str) -> Result<QFunction, QttError> {
        if !text.ends_with('\n') {
            return Err(QttError::MissingTrailingNewline);
        }
        let mut arity = None;
        let mut outputs: Vec<Qudit> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            let Some(n) = arity else {
                if tokens.len() == 2 && tokens[0] == "vars" {
                    if let Ok(n) = tokens[1].parse::<usize>() {
                        check_arity(n)?;
                        arity = Some(n);
                        continue;
                    }
                }
                return Err(QttError::BadHeader { line });
            };
            if outputs.len() == row_count(n) {
                return Err(QttError::TrailingData { line });
            }
            if tokens.len() != n + 1 {
                return Err(QttError::BadColumnCount {
                    line,
                    expected: n + 1,
                    actual: tokens.len(),
                });
            }
            let mut digits = Vec::with_capacity(n + 1);
            for token in &tokens {
                let digit = token
                    .parse::<u8>()
                    .ok()
                    .and_then(|d| Qudit::new(d).ok())
                    .ok_or_else(|| QttError::BadDigit {
                        line,
                        token: token.to_string(),
                    })?;
                digits.push(digit);
            }
            let expected_row = outputs.len();
            if row_index(&digits[..n]) != expected_row {
                return Err(QttError::RowOutOfOrder {
                    line,
                    expected: expected_row,
                });
            }
            outputs.push(digits[n]);
        }
        let n = arity.ok_or(QttError::BadHeader { line: 1 })?;
        if outputs.len() != row_count(n) {
            return Err(QttError::MissingRows {
                expected: row_count(n),
                actual: outputs.len(),
            });
        }
        Ok(QFunction { arity: n, outputs })
    }
}
