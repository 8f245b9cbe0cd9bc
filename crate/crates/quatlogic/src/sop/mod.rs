//! Sum-of-products synthesis for quaternary functions.
//!
//! Two expression forms are supported. Form-I is a sum of weighted equality
//! min-terms: one full product of `E(Xi, c)` literals per non-zero truth
//! table row, AND-ed with the row's output value. Form-II splits the
//! function into two binary half-functions (the low output bit, and the
//! high output bit re-read through a bitswap), minimizes each half exactly
//! as binary logic, and maps the binary literals back onto quaternary
//! literal shapes; the weight-1 half rebuilds the low bit and the weight-2
//! half the high bit.

pub mod minimize;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::Qudit;
use crate::table::{QFunction, TableError};

pub use minimize::{
    minimize_exact, prime_implicants, BinaryFunction, Cube, MinimizeError, MAX_MINIMIZE_BITS,
};

/// Form-II synthesis is bounded by the exact binary minimizer (2n bits).
pub const MAX_FORM2_ARITY: usize = MAX_MINIMIZE_BITS / 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SopError {
    #[error("min-term weight must be 1, 2 or 3")]
    ZeroWeight,
    #[error("form-II product weight must be 1 or 2")]
    BadForm2Weight,
    #[error("form-I product must contain exactly one literal per variable")]
    BadForm1Product,
    #[error("literal variable X{0} out of range")]
    VarOutOfRange(usize),
    #[error("product contains complementary literals on the same variable")]
    ComplementaryLiterals,
    #[error("input vector has {actual} values, expression takes {expected}")]
    ArityMismatch { expected: usize, actual: usize },
    #[error("arity {0} exceeds the form-II synthesis limit of {MAX_FORM2_ARITY}")]
    Form2ArityLimit(usize),
    #[error("MIN/MAX substitution is valid for form-I expressions only")]
    MinMaxOnForm2,
    #[error("cannot serialize expression: {0}")]
    NotSerializable(&'static str),
    #[error(transparent)]
    Minimize(#[from] MinimizeError),
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SopForm {
    Form1,
    Form2,
}

/// An equality literal `E(X(var+1), constant)`; variables are 0-based
/// internally and rendered 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Form1Literal {
    pub var: usize,
    pub constant: Qudit,
}

/// A full form-I min-term: one equality literal per variable, AND-ed with a
/// non-zero weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form1Product {
    pub literals: Vec<Form1Literal>,
    pub weight: Qudit,
}

/// The four literal shapes of form-II: `X`, `NOT X`, `BITSWAP X` and
/// `BITSWAP (NOT X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LiteralShape {
    Plain,
    Not,
    Swap,
    SwapNot,
}

impl LiteralShape {
    pub fn apply(self, x: Qudit) -> Qudit {
        match self {
            LiteralShape::Plain => x,
            LiteralShape::Not => x.complement(),
            LiteralShape::Swap => x.bitswap(),
            LiteralShape::SwapNot => x.complement().bitswap(),
        }
    }

    fn token(self) -> &'static str {
        match self {
            LiteralShape::Plain => "",
            LiteralShape::Not => "N",
            LiteralShape::Swap => "S",
            LiteralShape::SwapNot => "SN",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Form2Literal {
    pub var: usize,
    pub shape: LiteralShape,
}

/// A form-II product: shaped literals AND-ed with a weight of 1 or 2. An
/// empty literal list is the tautology product (the bare weight).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form2Product {
    pub literals: Vec<Form2Literal>,
    pub weight: Qudit,
}

/// The two functional inverters that peephole rewriting can introduce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverterKind {
    Inward,
    Outward,
}

impl InverterKind {
    pub fn apply(self, x: Qudit) -> Qudit {
        match self {
            InverterKind::Inward => x.inward(),
            InverterKind::Outward => x.outward(),
        }
    }
}

/// One term of a form-I expression: either a weighted min-term, or a
/// functional-inverter product introduced by peephole rewriting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Form1Term {
    Minterm(Form1Product),
    Inverter {
        kind: InverterKind,
        var: usize,
        cofactor: Vec<Form1Literal>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Form2Term {
    Product(Form2Product),
    Inverter {
        kind: InverterKind,
        var: usize,
        cofactor: Vec<Form2Literal>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SopBody {
    Form1(Vec<Form1Term>),
    Form2(Vec<Form2Term>),
}

/// Record of one applied peephole rewrite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeepholeRewrite {
    pub inverter: InverterKind,
    pub var: usize,
}

/// A form-I or form-II sum-of-products expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SopExpr {
    arity: usize,
    body: SopBody,
    rewrites: Vec<PeepholeRewrite>,
    minmax: bool,
}

/// The two binary halves of form-II: `Low` carries weight 1 and rebuilds
/// the low output bit, `High` carries weight 2 and rebuilds the high bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form2Half {
    Low,
    High,
}

fn check_var(arity: usize, var: usize) -> Result<(), SopError> {
    if var < arity {
        Ok(())
    } else {
        Err(SopError::VarOutOfRange(var + 1))
    }
}

fn validate_form1_product(arity: usize, product: &mut Form1Product) -> Result<(), SopError> {
    if product.weight == Qudit::ZERO {
        return Err(SopError::ZeroWeight);
    }
    if product.literals.len() != arity {
        return Err(SopError::BadForm1Product);
    }
    product.literals.sort_by_key(|lit| lit.var);
    for (i, lit) in product.literals.iter().enumerate() {
        check_var(arity, lit.var)?;
        if lit.var != i {
            return Err(SopError::BadForm1Product);
        }
    }
    Ok(())
}

fn validate_form2_product(arity: usize, product: &Form2Product) -> Result<(), SopError> {
    if product.weight != Qudit::ONE && product.weight != Qudit::TWO {
        return Err(SopError::BadForm2Weight);
    }
    for (i, lit) in product.literals.iter().enumerate() {
        check_var(arity, lit.var)?;
        for other in &product.literals[i + 1..] {
            if other.var != lit.var {
                continue;
            }
            let pair = (lit.shape.min(other.shape), lit.shape.max(other.shape));
            if pair == (LiteralShape::Plain, LiteralShape::Not)
                || pair == (LiteralShape::Swap, LiteralShape::SwapNot)
            {
                return Err(SopError::ComplementaryLiterals);
            }
        }
    }
    Ok(())
}

fn check_expr_arity(arity: usize) -> Result<(), SopError> {
    if (1..=crate::table::MAX_ARITY).contains(&arity) {
        Ok(())
    } else {
        Err(SopError::Table(TableError::ArityOutOfRange(arity)))
    }
}

impl SopExpr {
    /// Builds a form-I expression from full weighted min-terms.
    pub fn form1(arity: usize, mut products: Vec<Form1Product>) -> Result<SopExpr, SopError> {
        check_expr_arity(arity)?;
        for product in &mut products {
            validate_form1_product(arity, product)?;
        }
        Ok(SopExpr {
            arity,
            body: SopBody::Form1(products.into_iter().map(Form1Term::Minterm).collect()),
            rewrites: Vec::new(),
            minmax: false,
        })
    }

    /// Builds a form-II expression from weighted shaped products.
    pub fn form2(arity: usize, products: Vec<Form2Product>) -> Result<SopExpr, SopError> {
        check_expr_arity(arity)?;
        for product in &products {
            validate_form2_product(arity, product)?;
        }
        Ok(SopExpr {
            arity,
            body: SopBody::Form2(products.into_iter().map(Form2Term::Product).collect()),
            rewrites: Vec::new(),
            minmax: false,
        })
    }

    pub fn form(&self) -> SopForm {
        match self.body {
            SopBody::Form1(_) => SopForm::Form1,
            SopBody::Form2(_) => SopForm::Form2,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn body(&self) -> &SopBody {
        &self.body
    }

    pub fn term_count(&self) -> usize {
        match &self.body {
            SopBody::Form1(terms) => terms.len(),
            SopBody::Form2(terms) => terms.len(),
        }
    }

    pub fn rewrites(&self) -> &[PeepholeRewrite] {
        &self.rewrites
    }

    pub fn uses_minmax(&self) -> bool {
        self.minmax
    }

    /// Marks a form-I expression for MIN/MAX lowering. Within a form-I
    /// min-term every partial value is 0, 3 or the single weight, and at
    /// most one term is non-zero at a time, so MIN agrees with AND and MAX
    /// with OR everywhere the expression evaluates them. Not valid for
    /// form-II, where product values mix 1s and 2s.
    pub fn with_minmax(mut self) -> Result<SopExpr, SopError> {
        if self.form() == SopForm::Form2 {
            return Err(SopError::MinMaxOnForm2);
        }
        self.minmax = true;
        Ok(self)
    }

    /// Evaluates the expression at one input vector.
    pub fn eval(&self, x: &[Qudit]) -> Result<Qudit, SopError> {
        if x.len() != self.arity {
            return Err(SopError::ArityMismatch {
                expected: self.arity,
                actual: x.len(),
            });
        }
        let and = |a: Qudit, b: Qudit| if self.minmax { a.min(b) } else { a.and(b) };
        let or = |a: Qudit, b: Qudit| if self.minmax { a.max(b) } else { a.or(b) };
        let mut acc = Qudit::ZERO;
        match &self.body {
            SopBody::Form1(terms) => {
                for term in terms {
                    let value = match term {
                        Form1Term::Minterm(p) => {
                            let mut v = p.weight;
                            for lit in &p.literals {
                                v = and(v, x[lit.var].equality(lit.constant));
                            }
                            v
                        }
                        Form1Term::Inverter {
                            kind,
                            var,
                            cofactor,
                        } => {
                            let mut v = kind.apply(x[*var]);
                            for lit in cofactor {
                                v = and(v, x[lit.var].equality(lit.constant));
                            }
                            v
                        }
                    };
                    acc = or(acc, value);
                }
            }
            SopBody::Form2(terms) => {
                for term in terms {
                    let value = match term {
                        Form2Term::Product(p) => {
                            let mut v = p.weight;
                            for lit in &p.literals {
                                v = and(v, lit.shape.apply(x[lit.var]));
                            }
                            v
                        }
                        Form2Term::Inverter {
                            kind,
                            var,
                            cofactor,
                        } => {
                            let mut v = kind.apply(x[*var]);
                            for lit in cofactor {
                                v = and(v, lit.shape.apply(x[lit.var]));
                            }
                            v
                        }
                    };
                    acc = or(acc, value);
                }
            }
        }
        Ok(acc)
    }

    /// Tabulates the expression exhaustively.
    pub fn to_function(&self) -> Result<QFunction, SopError> {
        let table = QFunction::tabulate(self.arity, |x| self.eval(x).unwrap())?;
        Ok(table)
    }

    /// Rewrites SOP-encoded functional inverters into inverter terms.
    ///
    /// Form-I: four min-terms over a common cofactor whose weights and
    /// constants on one variable spell the inward inverter collapse into a
    /// single inward term; two weight-3 min-terms with constants 0 and 1
    /// collapse into an outward term. Form-II: a weight-2 product with a
    /// NOT literal pairs with a weight-1 product over the same cofactor
    /// holding the matching SWAP (inward) or SWAP-NOT (outward) literal.
    /// The result always evaluates identically; no match returns the
    /// expression unchanged.
    pub fn peephole_inverters(&self) -> SopExpr {
        let mut result = match &self.body {
            SopBody::Form1(terms) => self.peephole_form1(terms),
            SopBody::Form2(terms) => self.peephole_form2(terms),
        };
        result.arity = self.arity;
        result.minmax = self.minmax;
        let mut rewrites = self.rewrites.clone();
        rewrites.extend(result.rewrites.clone());
        std::mem::swap(&mut result.rewrites, &mut rewrites);
        if !result.rewrites.is_empty() && self.arity <= MAX_FORM2_ARITY {
            let before = QFunction::tabulate(self.arity, |x| self.eval(x).unwrap()).unwrap();
            let after = QFunction::tabulate(self.arity, |x| result.eval(x).unwrap()).unwrap();
            assert_eq!(before, after, "peephole rewrite changed the truth table");
        }
        result
    }

    fn peephole_form1(&self, terms: &[Form1Term]) -> SopExpr {
        // signature of a min-term within a (var, cofactor) group
        let mut consumed = vec![false; terms.len()];
        let mut replacements: BTreeMap<usize, Form1Term> = BTreeMap::new();
        let mut rewrites = Vec::new();
        for var in 0..self.arity {
            let mut groups: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
            for (idx, term) in terms.iter().enumerate() {
                if let Form1Term::Minterm(p) = term {
                    let key: Vec<u8> = p
                        .literals
                        .iter()
                        .filter(|lit| lit.var != var)
                        .map(|lit| lit.constant.value())
                        .collect();
                    groups.entry(key).or_default().push(idx);
                }
            }
            for (_, members) in groups {
                let find = |consumed: &[bool], constant: u8, weight: u8| {
                    members.iter().copied().find(|&idx| {
                        if consumed[idx] {
                            return false;
                        }
                        let Form1Term::Minterm(p) = &terms[idx] else {
                            return false;
                        };
                        p.weight.value() == weight && p.literals[var].constant.value() == constant
                    })
                };
                // inward: constants 0,1 at weight 2 plus constants 2,3 at weight 1
                let inward: Option<Vec<usize>> = [(0, 2), (1, 2), (2, 1), (3, 1)]
                    .iter()
                    .map(|&(c, w)| find(&consumed, c, w))
                    .collect();
                if let Some(matched) = inward {
                    let anchor = *matched.iter().min().unwrap();
                    for idx in &matched {
                        consumed[*idx] = true;
                    }
                    replacements.insert(
                        anchor,
                        Form1Term::Inverter {
                            kind: InverterKind::Inward,
                            var,
                            cofactor: cofactor_form1(&terms[anchor], var),
                        },
                    );
                    rewrites.push(PeepholeRewrite {
                        inverter: InverterKind::Inward,
                        var,
                    });
                    continue;
                }
                // outward: constants 0,1 both at weight 3
                let outward: Option<Vec<usize>> = [(0, 3), (1, 3)]
                    .iter()
                    .map(|&(c, w)| find(&consumed, c, w))
                    .collect();
                if let Some(matched) = outward {
                    let anchor = *matched.iter().min().unwrap();
                    for idx in &matched {
                        consumed[*idx] = true;
                    }
                    replacements.insert(
                        anchor,
                        Form1Term::Inverter {
                            kind: InverterKind::Outward,
                            var,
                            cofactor: cofactor_form1(&terms[anchor], var),
                        },
                    );
                    rewrites.push(PeepholeRewrite {
                        inverter: InverterKind::Outward,
                        var,
                    });
                }
            }
        }
        let new_terms = rebuild_terms(terms, &consumed, replacements);
        SopExpr {
            arity: self.arity,
            body: SopBody::Form1(new_terms),
            rewrites,
            minmax: false,
        }
    }

    fn peephole_form2(&self, terms: &[Form2Term]) -> SopExpr {
        let mut consumed = vec![false; terms.len()];
        let mut replacements: BTreeMap<usize, Form2Term> = BTreeMap::new();
        let mut rewrites = Vec::new();
        for idx in 0..terms.len() {
            if consumed[idx] {
                continue;
            }
            let Form2Term::Product(p) = &terms[idx] else {
                continue;
            };
            if p.weight != Qudit::TWO {
                continue;
            }
            'lits: for (pos, lit) in p.literals.iter().enumerate() {
                if lit.shape != LiteralShape::Not {
                    continue;
                }
                let mut cofactor = p.literals.clone();
                cofactor.remove(pos);
                for (kind, partner_shape) in [
                    (InverterKind::Inward, LiteralShape::Swap),
                    (InverterKind::Outward, LiteralShape::SwapNot),
                ] {
                    let mut partner_lits = cofactor.clone();
                    partner_lits.push(Form2Literal {
                        var: lit.var,
                        shape: partner_shape,
                    });
                    let partner = terms.iter().enumerate().find(|(j, t)| {
                        *j != idx
                            && !consumed[*j]
                            && matches!(t, Form2Term::Product(q)
                                if q.weight == Qudit::ONE
                                    && same_literals(&q.literals, &partner_lits))
                    });
                    if let Some((j, _)) = partner {
                        consumed[idx] = true;
                        consumed[j] = true;
                        replacements.insert(
                            idx.min(j),
                            Form2Term::Inverter {
                                kind,
                                var: lit.var,
                                cofactor,
                            },
                        );
                        rewrites.push(PeepholeRewrite {
                            inverter: kind,
                            var: lit.var,
                        });
                        break 'lits;
                    }
                }
            }
        }
        let new_terms = rebuild_terms(terms, &consumed, replacements);
        SopExpr {
            arity: self.arity,
            body: SopBody::Form2(new_terms),
            rewrites,
            minmax: false,
        }
    }

    /// Serializes to the `.qsop` text format. Expressions carrying peephole
    /// rewrites or the MIN/MAX mark have no text form and are rejected.
    pub fn to_qsop(&self) -> Result<String, SopError> {
        if self.minmax {
            return Err(SopError::NotSerializable(
                "expression is marked for MIN/MAX lowering",
            ));
        }
        let mut out = String::new();
        let form = match self.form() {
            SopForm::Form1 => 1,
            SopForm::Form2 => 2,
        };
        writeln!(out, "form {form}").unwrap();
        writeln!(out, "vars {}", self.arity).unwrap();
        match &self.body {
            SopBody::Form1(terms) => {
                for term in terms {
                    let Form1Term::Minterm(p) = term else {
                        return Err(SopError::NotSerializable(
                            "expression contains functional-inverter terms",
                        ));
                    };
                    write!(out, "term {}", p.weight).unwrap();
                    for lit in &p.literals {
                        write!(out, " E(X{},{})", lit.var + 1, lit.constant).unwrap();
                    }
                    out.push('\n');
                }
            }
            SopBody::Form2(terms) => {
                for term in terms {
                    let Form2Term::Product(p) = term else {
                        return Err(SopError::NotSerializable(
                            "expression contains functional-inverter terms",
                        ));
                    };
                    write!(out, "term {}", p.weight).unwrap();
                    for lit in &p.literals {
                        let shape = lit.shape.token();
                        if shape.is_empty() {
                            write!(out, " X{}", lit.var + 1).unwrap();
                        } else {
                            write!(out, " {shape}(X{})", lit.var + 1).unwrap();
                        }
                    }
                    out.push('\n');
                }
            }
        }
        Ok(out)
    }

    /// Parses the `.qsop` text format.
    pub fn parse_qsop(text: &str) -> Result<SopExpr, QsopError> {
        parse_qsop(text)
    }
}

fn cofactor_form1(term: &Form1Term, var: usize) -> Vec<Form1Literal> {
    let Form1Term::Minterm(p) = term else {
        unreachable!("anchor is always a min-term");
    };
    p.literals
        .iter()
        .copied()
        .filter(|lit| lit.var != var)
        .collect()
}

fn same_literals(a: &[Form2Literal], b: &[Form2Literal]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a: Vec<Form2Literal> = a.to_vec();
    let mut b: Vec<Form2Literal> = b.to_vec();
    a.sort();
    b.sort();
    a == b
}

fn rebuild_terms<T: Clone>(
    terms: &[T],
    consumed: &[bool],
    mut replacements: BTreeMap<usize, T>,
) -> Vec<T> {
    let mut out = Vec::with_capacity(terms.len());
    for (idx, term) in terms.iter().enumerate() {
        if let Some(replacement) = replacements.remove(&idx) {
            out.push(replacement);
        } else if !consumed[idx] {
            out.push(term.clone());
        }
    }
    out
}

/// Builds the form-I min-term that takes value `weight` at `values` and 0
/// everywhere else.
pub fn minterm_form1(values: &[Qudit], weight: Qudit) -> Result<Form1Product, SopError> {
    if weight == Qudit::ZERO {
        return Err(SopError::ZeroWeight);
    }
    Ok(Form1Product {
        literals: values
            .iter()
            .enumerate()
            .map(|(var, &constant)| Form1Literal { var, constant })
            .collect(),
        weight,
    })
}

/// Form-I synthesis: one weighted min-term per non-zero row, in ascending
/// row order. The constant-0 function yields the empty expression.
pub fn synthesize_form1(f: &QFunction) -> SopExpr {
    let mut products = Vec::new();
    for (row, &out) in f.outputs().iter().enumerate() {
        if out == Qudit::ZERO {
            continue;
        }
        let values = crate::table::vector_from_index(f.arity(), row);
        products.push(minterm_form1(&values, out).unwrap());
    }
    SopExpr::form1(f.arity(), products).unwrap()
}

/// Splits a function into its binary halves: the low half is true where the
/// output's low bit is set, the high half where the high bit is set. The
/// binary row index concatenates the per-variable bit pairs with the first
/// variable most significant, which coincides with the canonical row index.
pub fn decompose_form2(f: &QFunction) -> (BinaryFunction, BinaryFunction) {
    let bits = 2 * f.arity();
    let mut low = Vec::new();
    let mut high = Vec::new();
    for (row, out) in f.outputs().iter().enumerate() {
        if out.value() & 1 != 0 {
            low.push(row as u32);
        }
        if out.value() & 2 != 0 {
            high.push(row as u32);
        }
    }
    (
        BinaryFunction::new(bits, low).unwrap(),
        BinaryFunction::new(bits, high).unwrap(),
    )
}

/// Maps binary cubes over 2n bits back onto quaternary literal shapes for
/// one half. Low half: low bit -> plain/not, high bit -> swap/swap-not,
/// weight 1. High half: low bit -> swap/swap-not, high bit -> plain/not,
/// weight 2. Literals come out ordered by variable, high bit first.
pub fn transform_half(cubes: &[Cube], half: Form2Half, arity: usize) -> Vec<Form2Product> {
    let bits = 2 * arity;
    let weight = match half {
        Form2Half::Low => Qudit::ONE,
        Form2Half::High => Qudit::TWO,
    };
    cubes
        .iter()
        .map(|cube| {
            let literals = cube
                .literals(bits)
                .into_iter()
                .map(|(bit, positive)| {
                    let var = arity - 1 - bit / 2;
                    let high_bit = bit % 2 == 1;
                    let shape = match (half, high_bit, positive) {
                        (Form2Half::Low, false, true) => LiteralShape::Plain,
                        (Form2Half::Low, false, false) => LiteralShape::Not,
                        (Form2Half::Low, true, true) => LiteralShape::Swap,
                        (Form2Half::Low, true, false) => LiteralShape::SwapNot,
                        (Form2Half::High, false, true) => LiteralShape::Swap,
                        (Form2Half::High, false, false) => LiteralShape::SwapNot,
                        (Form2Half::High, true, true) => LiteralShape::Plain,
                        (Form2Half::High, true, false) => LiteralShape::Not,
                    };
                    Form2Literal { var, shape }
                })
                .collect();
            Form2Product { literals, weight }
        })
        .collect()
}

/// Form-II synthesis: decompose, minimize each half exactly, transform the
/// literals and concatenate (low half first).
pub fn synthesize_form2(f: &QFunction) -> Result<SopExpr, SopError> {
    if f.arity() > MAX_FORM2_ARITY {
        return Err(SopError::Form2ArityLimit(f.arity()));
    }
    let (low, high) = decompose_form2(f);
    let low_cover = minimize_exact(&low)?;
    let high_cover = minimize_exact(&high)?;
    let mut products = transform_half(&low_cover, Form2Half::Low, f.arity());
    products.extend(transform_half(&high_cover, Form2Half::High, f.arity()));
    SopExpr::form2(f.arity(), products)
}

/// Errors raised while parsing the `.qsop` text format.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QsopError {
    #[error("line {line}: expected header `form 1` or `form 2`")]
    BadFormHeader { line: usize },
    #[error("line {line}: expected header `vars <n>`")]
    BadVarsHeader { line: usize },
    #[error("line {line}: expected `term <weight> <literal>..`")]
    BadTerm { line: usize },
    #[error("line {line}: invalid literal `{token}`")]
    BadLiteral { line: usize, token: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: SopError },
    #[error("missing `form` header")]
    MissingForm,
    #[error("missing `vars` header")]
    MissingVars,
}

fn parse_qsop(text: &str) -> Result<SopExpr, QsopError> {
    let mut form: Option<SopForm> = None;
    let mut arity: Option<usize> = None;
    let mut form1_products: Vec<Form1Product> = Vec::new();
    let mut form2_products: Vec<Form2Product> = Vec::new();
    let mut term_lines: Vec<usize> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if form.is_none() {
            form = match tokens.as_slice() {
                ["form", "1"] => Some(SopForm::Form1),
                ["form", "2"] => Some(SopForm::Form2),
                _ => return Err(QsopError::BadFormHeader { line }),
            };
            continue;
        }
        if arity.is_none() {
            if tokens.len() == 2 && tokens[0] == "vars" {
                if let Ok(n) = tokens[1].parse::<usize>() {
                    if (1..=crate::table::MAX_ARITY).contains(&n) {
                        arity = Some(n);
                        continue;
                    }
                }
            }
            return Err(QsopError::BadVarsHeader { line });
        }
        if tokens.first() != Some(&"term") || tokens.len() < 2 {
            return Err(QsopError::BadTerm { line });
        }
        let weight = tokens[1]
            .parse::<u8>()
            .ok()
            .and_then(|w| Qudit::new(w).ok())
            .ok_or(QsopError::BadTerm { line })?;
        term_lines.push(line);
        match form.unwrap() {
            SopForm::Form1 => {
                let mut literals = Vec::new();
                for token in &tokens[2..] {
                    literals.push(parse_form1_literal(token).ok_or_else(|| {
                        QsopError::BadLiteral {
                            line,
                            token: token.to_string(),
                        }
                    })?);
                }
                form1_products.push(Form1Product { literals, weight });
            }
            SopForm::Form2 => {
                let mut literals = Vec::new();
                for token in &tokens[2..] {
                    literals.push(parse_form2_literal(token).ok_or_else(|| {
                        QsopError::BadLiteral {
                            line,
                            token: token.to_string(),
                        }
                    })?);
                }
                form2_products.push(Form2Product { literals, weight });
            }
        }
    }

    let form = form.ok_or(QsopError::MissingForm)?;
    let arity = arity.ok_or(QsopError::MissingVars)?;
    match form {
        SopForm::Form1 => {
            for (product, &line) in form1_products.iter_mut().zip(&term_lines) {
                validate_form1_product(arity, product)
                    .map_err(|source| QsopError::Invalid { line, source })?;
            }
            Ok(SopExpr::form1(arity, form1_products).expect("products validated"))
        }
        SopForm::Form2 => {
            for (product, &line) in form2_products.iter().zip(&term_lines) {
                validate_form2_product(arity, product)
                    .map_err(|source| QsopError::Invalid { line, source })?;
            }
            Ok(SopExpr::form2(arity, form2_products).expect("products validated"))
        }
    }
}

fn parse_var(token: &str) -> Option<usize> {
    let rest = token.strip_prefix('X')?;
    let index: usize = rest.parse().ok()?;
    if index == 0 {
        return None;
    }
    Some(index - 1)
}

fn parse_form1_literal(token: &str) -> Option<Form1Literal> {
    let inner = token.strip_prefix("E(")?.strip_suffix(')')?;
    let (var_token, const_token) = inner.split_once(',')?;
    let var = parse_var(var_token)?;
    let constant = const_token
        .parse::<u8>()
        .ok()
        .and_then(|c| Qudit::new(c).ok())?;
    Some(Form1Literal { var, constant })
}

fn parse_form2_literal(token: &str) -> Option<Form2Literal> {
    if let Some(var) = parse_var(token) {
        return Some(Form2Literal {
            var,
            shape: LiteralShape::Plain,
        });
    }
    for (prefix, shape) in [
        ("N(", LiteralShape::Not),
        ("S(", LiteralShape::Swap),
        ("SN(", LiteralShape::SwapNot),
    ] {
        if let Some(inner) = token.strip_prefix(prefix).and_then(|t| t.strip_suffix(')')) {
            return Some(Form2Literal {
                var: parse_var(inner)?,
                shape,
            });
        }
    }
    None
}
