//! Parser and evaluator for scalar formulas of the arc-length variable `s`.
//!
//! The grammar is conventional infix with byte-offset error reporting:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('-')? power
//! power  := atom ('^' factor)?          // '^' is right-associative
//! atom   := number | 'pi' | 'e' | 's' | ident '(' expr ')' | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus, which binds tighter than `*` and `/`,
//! which bind tighter than `+` and `-`. Same-precedence binary operators are
//! left-associative. Numeric literals are decimal with an optional exponent;
//! `pi` and `e` are named constants. There is no implicit multiplication:
//! `2s` is a syntax error.
//!
//! Expressions are immutable after parsing and evaluation is pure, so a
//! parsed [`ScalarExpr`] can be evaluated concurrently from many threads.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::EvalError;
#[cfg(not(feature = "std"))]
use crate::math::FloatExt;

/// Unary operations: negation and the supported function set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Abs,
    Arccos,
    Arctan,
}

impl UnaryOp {
    fn function_name(self) -> Option<&'static str> {
        Some(match self {
            UnaryOp::Neg => return None,
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Tan => "tan",
            UnaryOp::Exp => "exp",
            UnaryOp::Log => "log",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Abs => "abs",
            UnaryOp::Arccos => "arccos",
            UnaryOp::Arctan => "arctan",
        })
    }
}

/// Binary arithmetic operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinaryOp::Add | BinaryOp::Sub => 1,
            BinaryOp::Mul | BinaryOp::Div => 2,
            BinaryOp::Pow => 4,
        }
    }
}

/// A parsed scalar formula of the arc-length variable `s`.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarExpr {
    /// A numeric literal or a named constant (`pi`, `e`).
    Number(f64),
    /// The free variable `s`.
    Var,
    /// Negation or a function application.
    Unary(UnaryOp, Box<ScalarExpr>),
    /// An infix binary operation.
    Binary(BinaryOp, Box<ScalarExpr>, Box<ScalarExpr>),
}

/// Parse failure with the byte offset of the offending input.
#[derive(Debug, Clone, PartialEq)]
pub enum ParseError {
    /// Input was empty or all whitespace.
    Empty,
    /// Unexpected token; `expected` lists what would have been accepted.
    Syntax {
        offset: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    /// An identifier that is neither `s`, a constant, nor a known function.
    UnknownIdentifier { offset: usize, name: String },
    /// A character outside the grammar's alphabet.
    UnexpectedChar { offset: usize, ch: char },
    /// A numeric literal that does not scan as a float.
    InvalidNumber { offset: usize, text: String },
}

impl ParseError {
    /// Byte offset of the error in the source text.
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Empty => 0,
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::UnexpectedChar { offset, .. }
            | ParseError::InvalidNumber { offset, .. } => *offset,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Empty => write!(f, "empty expression"),
            ParseError::Syntax {
                offset,
                expected,
                found,
            } => {
                write!(f, "syntax error at offset {offset}: expected ")?;
                for (i, e) in expected.iter().enumerate() {
                    if i > 0 {
                        let sep = if i + 1 == expected.len() { " or " } else { ", " };
                        write!(f, "{sep}")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ", found {found}")
            }
            ParseError::UnknownIdentifier { offset, name } => {
                write!(f, "unknown identifier `{name}` at offset {offset}")
            }
            ParseError::UnexpectedChar { offset, ch } => {
                write!(f, "unexpected character `{ch}` at offset {offset}")
            }
            ParseError::InvalidNumber { offset, text } => {
                write!(f, "invalid number `{text}` at offset {offset}")
            }
        }
    }
}

impl core::error::Error for ParseError {}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n:?}`"),
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::Plus => "`+`".to_owned(),
            Tok::Minus => "`-`".to_owned(),
            Tok::Star => "`*`".to_owned(),
            Tok::Slash => "`/`".to_owned(),
            Tok::Caret => "`^`".to_owned(),
            Tok::LParen => "`(`".to_owned(),
            Tok::RParen => "`)`".to_owned(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                let end = scan_number(bytes, start);
                let slice = &text[start..end];
                let value: f64 = slice.parse().map_err(|_| ParseError::InvalidNumber {
                    offset: start,
                    text: slice.to_owned(),
                })?;
                toks.push((Tok::Num(value), start));
                i = end;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_owned()), start));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::UnexpectedChar { offset: i, ch });
            }
        }
    }
    Ok(toks)
}

/// Scans a numeric literal starting at `start`; returns the end offset.
///
/// Accepts `123`, `1.5`, `.5`, `2.`, with an optional exponent (`1e-3`).
/// An `e` not followed by digits is left to the identifier lexer, so `2*e`
/// still sees the constant.
fn scan_number(bytes: &[u8], start: usize) -> usize {
    let mut i = start;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
    }
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        if j < bytes.len() && bytes[j].is_ascii_digit() {
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            i = j;
        }
    }
    i
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

const ATOM_EXPECTED: &[&str] = &[
    "a number",
    "`s`",
    "`pi`",
    "`e`",
    "a function name",
    "`(`",
];

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    eof: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.eof, |(_, o)| *o)
    }

    fn found(&self) -> String {
        self.toks
            .get(self.pos)
            .map_or_else(|| "end of input".to_owned(), |(t, _)| t.describe())
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, expected: &[&'static str]) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            expected: expected.to_vec(),
            found: self.found(),
        }
    }

    fn expr(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinaryOp::Add,
                Some(Tok::Minus) => BinaryOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = ScalarExpr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ScalarExpr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinaryOp::Mul,
                Some(Tok::Slash) => BinaryOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.factor()?;
            lhs = ScalarExpr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ScalarExpr, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            let inner = self.power()?;
            Ok(ScalarExpr::Unary(UnaryOp::Neg, Box::new(inner)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<ScalarExpr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let exponent = self.factor()?;
            Ok(ScalarExpr::Binary(
                BinaryOp::Pow,
                Box::new(base),
                Box::new(exponent),
            ))
        } else {
            Ok(base)
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if matches!(self.peek(), Some(Tok::RParen)) {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(&["`)`"]))
        }
    }

    fn atom(&mut self) -> Result<ScalarExpr, ParseError> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(value)) => {
                self.bump();
                Ok(ScalarExpr::Number(value))
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.bump();
                match name.as_str() {
                    "s" => Ok(ScalarExpr::Var),
                    "pi" => Ok(ScalarExpr::Number(core::f64::consts::PI)),
                    "e" => Ok(ScalarExpr::Number(core::f64::consts::E)),
                    _ => {
                        let op = function_by_name(&name)
                            .ok_or(ParseError::UnknownIdentifier { offset, name })?;
                        if !matches!(self.peek(), Some(Tok::LParen)) {
                            return Err(self.syntax(&["`(`"]));
                        }
                        self.bump();
                        let arg = self.expr()?;
                        self.expect_rparen()?;
                        Ok(ScalarExpr::Unary(op, Box::new(arg)))
                    }
                }
            }
            _ => Err(self.syntax(ATOM_EXPECTED)),
        }
    }
}

fn function_by_name(name: &str) -> Option<UnaryOp> {
    Some(match name {
        "sin" => UnaryOp::Sin,
        "cos" => UnaryOp::Cos,
        "tan" => UnaryOp::Tan,
        "exp" => UnaryOp::Exp,
        "log" => UnaryOp::Log,
        "sqrt" => UnaryOp::Sqrt,
        "abs" => UnaryOp::Abs,
        "arccos" => UnaryOp::Arccos,
        "arctan" => UnaryOp::Arctan,
        _ => return None,
    })
}

// ---------------------------------------------------------------------------
// Evaluation and printing
// ---------------------------------------------------------------------------

impl ScalarExpr {
    /// Parses an infix formula of `s`.
    pub fn parse(text: &str) -> Result<ScalarExpr, ParseError> {
        let toks = tokenize(text)?;
        if toks.is_empty() {
            return Err(ParseError::Empty);
        }
        let mut parser = Parser {
            toks,
            pos: 0,
            eof: text.len(),
        };
        let expr = parser.expr()?;
        if parser.peek().is_some() {
            return Err(parser.syntax(&["an operator", "end of input"]));
        }
        Ok(expr)
    }

    /// Evaluates the expression at `s`.
    ///
    /// Out-of-domain sub-evaluations (negative radicand, non-positive log,
    /// `arccos` outside `[-1, 1]`) and non-finite intermediate results are
    /// reported as an [`EvalError`] naming the offending node, never as a
    /// quiet NaN.
    pub fn eval(&self, s: f64) -> Result<f64, EvalError> {
        let value = match self {
            ScalarExpr::Number(n) => return Ok(*n),
            ScalarExpr::Var => return Ok(s),
            ScalarExpr::Unary(op, inner) => {
                let x = inner.eval(s)?;
                match op {
                    UnaryOp::Neg => -x,
                    UnaryOp::Sin => x.sin(),
                    UnaryOp::Cos => x.cos(),
                    UnaryOp::Tan => x.tan(),
                    UnaryOp::Exp => x.exp(),
                    UnaryOp::Log => {
                        if x <= 0.0 {
                            return Err(self.domain_error(x, "logarithm of a non-positive value"));
                        }
                        x.ln()
                    }
                    UnaryOp::Sqrt => {
                        if x < 0.0 {
                            return Err(self.domain_error(x, "square root of a negative value"));
                        }
                        x.sqrt()
                    }
                    UnaryOp::Abs => x.abs(),
                    UnaryOp::Arccos => {
                        if !(-1.0..=1.0).contains(&x) {
                            return Err(self.domain_error(x, "arccos argument outside [-1, 1]"));
                        }
                        x.acos()
                    }
                    UnaryOp::Arctan => x.atan(),
                }
            }
            ScalarExpr::Binary(op, lhs, rhs) => {
                let a = lhs.eval(s)?;
                let b = rhs.eval(s)?;
                match op {
                    BinaryOp::Add => a + b,
                    BinaryOp::Sub => a - b,
                    BinaryOp::Mul => a * b,
                    BinaryOp::Div => a / b,
                    BinaryOp::Pow => a.powf(b),
                }
            }
        };
        if !value.is_finite() {
            return Err(self.domain_error(s, "result is not finite"));
        }
        Ok(value)
    }

    fn domain_error(&self, arg: f64, reason: &'static str) -> EvalError {
        EvalError {
            node: self.to_string(),
            arg,
            reason,
        }
    }

    /// Precedence level used by the printer; atoms are highest.
    fn print_precedence(&self) -> u8 {
        match self {
            // A negative literal prints with a leading minus, so it binds
            // like a negation.
            ScalarExpr::Number(n) if *n < 0.0 => 3,
            ScalarExpr::Number(_) | ScalarExpr::Var => 5,
            ScalarExpr::Unary(UnaryOp::Neg, _) => 3,
            ScalarExpr::Unary(..) => 5,
            ScalarExpr::Binary(op, ..) => op.precedence(),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let needs_parens = self.print_precedence() < min_prec;
        if needs_parens {
            write!(f, "(")?;
        }
        match self {
            ScalarExpr::Number(n) => write!(f, "{n:?}")?,
            ScalarExpr::Var => write!(f, "s")?,
            ScalarExpr::Unary(UnaryOp::Neg, inner) => {
                write!(f, "-")?;
                inner.fmt_prec(f, 4)?;
            }
            ScalarExpr::Unary(op, inner) => {
                let name = op.function_name().unwrap_or("?");
                write!(f, "{name}(")?;
                inner.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            ScalarExpr::Binary(op, lhs, rhs) => {
                let prec = op.precedence();
                let (lmin, rmin) = match op {
                    // '^' requires an atom on the left and accepts a factor
                    // (e.g. a negation) on the right.
                    BinaryOp::Pow => (5, 3),
                    _ => (prec, prec + 1),
                };
                lhs.fmt_prec(f, lmin)?;
                write!(f, "{}", op.symbol())?;
                rhs.fmt_prec(f, rmin)?;
            }
        }
        if needs_parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
