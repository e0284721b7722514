//! Parser for the small expression language used by the CLI.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor (("*"|"/") factor)*
//! factor := atom ("^" atom)?
//! atom   := number | "x" | ident "(" expr ")" | "(" expr ")"
//! ident  := exp | sin | cos | sqrt | abs
//! ```
//!
//! An optional sign is accepted at the head of every `expr` so forms like
//! `exp(-x^2/2)` parse; the exponent of `^` is a single atom, so chained
//! powers need parentheses.  Errors carry the byte position they were
//! detected at.

use crate::error::{Error, Result};
use crate::func::FunctionHandle;
use std::fmt;

/// Built-in unary functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Exp,
    Sin,
    Cos,
    Sqrt,
    Abs,
}

impl Builtin {
    fn from_name(name: &str) -> Option<Builtin> {
        match name {
            "exp" => Some(Builtin::Exp),
            "sin" => Some(Builtin::Sin),
            "cos" => Some(Builtin::Cos),
            "sqrt" => Some(Builtin::Sqrt),
            "abs" => Some(Builtin::Abs),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Builtin::Exp => "exp",
            Builtin::Sin => "sin",
            Builtin::Cos => "cos",
            Builtin::Sqrt => "sqrt",
            Builtin::Abs => "abs",
        }
    }

    fn apply(self, v: f64) -> f64 {
        match self {
            Builtin::Exp => v.exp(),
            Builtin::Sin => v.sin(),
            Builtin::Cos => v.cos(),
            Builtin::Sqrt => v.sqrt(),
            Builtin::Abs => v.abs(),
        }
    }
}

/// Binary operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Builtin, Box<Expr>),
}

impl Expr {
    /// Evaluate at a point.  IEEE semantics throughout: division by zero
    /// and sqrt of negatives produce inf/NaN rather than errors.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Var => x,
            Expr::Neg(e) => -e.eval(x),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(x), b.eval(x));
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                    BinOp::Pow => a.powf(b),
                }
            }
            Expr::Call(f, e) => f.apply(e.eval(x)),
        }
    }
}

/// Fully parenthesized rendering; always re-parses to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Var => write!(f, "x"),
            Expr::Neg(e) => write!(f, "(0 - {e})"),
            Expr::Bin(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Call(b, e) => write!(f, "{}({e})", b.name()),
        }
    }
}

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

struct Lexer<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next token with the byte position it starts at; None at end.
    fn next(&mut self) -> Result<Option<(usize, Tok)>> {
        self.skip_ws();
        if self.pos >= self.bytes.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.bytes[self.pos];
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' | b'.' => {
                return self.lex_number(start).map(|t| Some((start, t)));
            }
            c if c.is_ascii_alphabetic() => {
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = &self.text[start..self.pos];
                return Ok(Some((start, Tok::Ident(name.to_string()))));
            }
            other => {
                return Err(Error::Syntax {
                    position: start,
                    message: format!("unexpected character `{}`", other as char),
                });
            }
        };
        self.pos += 1;
        Ok(Some((start, tok)))
    }

    fn lex_number(&mut self, start: usize) -> Result<Tok> {
        let mut saw_digit = false;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
            saw_digit = true;
        }
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b'.' {
            self.pos += 1;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
                saw_digit = true;
            }
        }
        if !saw_digit {
            return Err(Error::Syntax {
                position: start,
                message: "malformed number".to_string(),
            });
        }
        if self.pos < self.bytes.len() && matches!(self.bytes[self.pos], b'e' | b'E') {
            let mark = self.pos;
            self.pos += 1;
            if self.pos < self.bytes.len() && matches!(self.bytes[self.pos], b'+' | b'-') {
                self.pos += 1;
            }
            if self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            } else {
                // `e` belongs to something else (an identifier cannot start
                // mid-number, so treat as malformed exponent).
                self.pos = mark;
            }
        }
        let slice = &self.text[start..self.pos];
        match slice.parse::<f64>() {
            // Overflow to inf would produce a literal the grammar cannot
            // spell back, breaking the rendering round-trip.
            Ok(v) if v.is_finite() => Ok(Tok::Num(v)),
            _ => Err(Error::Syntax {
                position: start,
                message: format!("malformed number `{slice}`"),
            }),
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.idx)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.idx).cloned();
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut node = match self.peek() {
            Some((_, Tok::Minus)) => {
                self.bump();
                Expr::Neg(Box::new(self.term()?))
            }
            Some((_, Tok::Plus)) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            let op = match self.peek() {
                Some((_, Tok::Plus)) => BinOp::Add,
                Some((_, Tok::Minus)) => BinOp::Sub,
                _ => break,
            };
            self.bump();
            node = Expr::Bin(op, Box::new(node), Box::new(self.term()?));
        }
        Ok(node)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut node = self.factor()?;
        loop {
            let op = match self.peek() {
                Some((_, Tok::Star)) => BinOp::Mul,
                Some((_, Tok::Slash)) => BinOp::Div,
                _ => break,
            };
            self.bump();
            node = Expr::Bin(op, Box::new(node), Box::new(self.factor()?));
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if matches!(self.peek(), Some((_, Tok::Caret))) {
            self.bump();
            let exponent = self.atom()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let position = self.here();
        match self.bump() {
            Some((_, Tok::Num(v))) => Ok(Expr::Num(v)),
            Some((pos, Tok::Ident(name))) => {
                if name == "x" {
                    return Ok(Expr::Var);
                }
                let Some(builtin) = Builtin::from_name(&name) else {
                    return Err(Error::UnknownIdentifier {
                        position: pos,
                        name,
                    });
                };
                self.expect_lparen()?;
                let arg = self.expr()?;
                self.expect_rparen()?;
                Ok(Expr::Call(builtin, Box::new(arg)))
            }
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Some((pos, tok)) => Err(Error::Syntax {
                position: pos,
                message: format!("expected a value, found `{tok:?}`"),
            }),
            None => Err(Error::Syntax {
                position,
                message: "unexpected end of input".to_string(),
            }),
        }
    }

    fn expect_lparen(&mut self) -> Result<()> {
        match self.bump() {
            Some((_, Tok::LParen)) => Ok(()),
            other => Err(Error::Syntax {
                position: other.map(|(p, _)| p).unwrap_or(self.end),
                message: "expected `(`".to_string(),
            }),
        }
    }

    fn expect_rparen(&mut self) -> Result<()> {
        match self.bump() {
            Some((_, Tok::RParen)) => Ok(()),
            other => Err(Error::Syntax {
                position: other.map(|(p, _)| p).unwrap_or(self.end),
                message: "expected `)`".to_string(),
            }),
        }
    }
}

/// Parse expression text to a tree.
pub fn parse(text: &str) -> Result<Expr> {
    let mut lexer = Lexer::new(text);
    let mut toks = Vec::new();
    while let Some(t) = lexer.next()? {
        toks.push(t);
    }
    let mut parser = Parser {
        toks,
        idx: 0,
        end: text.len(),
    };
    let expr = parser.expr()?;
    if let Some((pos, tok)) = parser.peek() {
        return Err(Error::Syntax {
            position: *pos,
            message: format!("trailing input starting with `{tok:?}`"),
        });
    }
    Ok(expr)
}

/// Parse expression text into an evaluable [`FunctionHandle`].
pub fn parse_expression(text: &str) -> Result<FunctionHandle> {
    let ast = parse(text)?;
    Ok(FunctionHandle::from_real(move |x| ast.eval(x)))
}
