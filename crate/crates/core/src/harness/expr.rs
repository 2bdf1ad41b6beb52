//! A minimal function-expression grammar for the CLI: literals, `x`,
//! `+ - * / ^`, and the calls `abs`, `exp`, `ln`, `sin`, `cos`,
//! `arccos`, `pospart`. Parsed and evaluated in-process; nothing is
//! delegated to an external evaluator.

use crate::projections::{FunctionSpec, Smoothness};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum UnaryFn {
    Abs,
    Exp,
    Ln,
    Sin,
    Cos,
    Arccos,
    Pospart,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Parsed expression tree in the single variable x.
#[derive(Debug, Clone)]
pub enum Expr {
    Num(f64),
    Var,
    Neg(Box<Expr>),
    Call(UnaryFnTag, Box<Expr>),
    Bin(BinOpTag, Box<Expr>, Box<Expr>),
}

// Public wrappers keep the enum internals private while letting Expr be
// matched on externally if ever needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnaryFnTag(UnaryFn);
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinOpTag(BinOp);

impl Expr {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Var => x,
            Expr::Neg(e) => -e.eval(x),
            Expr::Call(UnaryFnTag(f), e) => {
                let v = e.eval(x);
                match f {
                    UnaryFn::Abs => v.abs(),
                    UnaryFn::Exp => v.exp(),
                    UnaryFn::Ln => v.ln(),
                    UnaryFn::Sin => v.sin(),
                    UnaryFn::Cos => v.cos(),
                    UnaryFn::Arccos => v.acos(),
                    UnaryFn::Pospart => v.max(0.0),
                }
            }
            Expr::Bin(BinOpTag(op), a, b) => {
                let (a, b) = (a.eval(x), b.eval(x));
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                    BinOp::Pow => a.powf(b),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                i += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '.') {
                    i += 1;
                }
                // Optional exponent part.
                if i < bytes.len() && (bytes[i] == 'e' || bytes[i] == 'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == '+' || bytes[j] == '-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text: String = bytes[start..i].iter().collect();
                let value = text
                    .parse::<f64>()
                    .map_err(|_| Error::domain(format!("bad numeric literal '{text}'")))?;
                tokens.push(Token::Num(value));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word: String = bytes[start..i].iter().collect();
                if word == "x" {
                    tokens.push(Token::X);
                } else {
                    tokens.push(Token::Ident(word));
                }
            }
            other => {
                return Err(Error::domain(format!(
                    "unexpected character '{other}' in expression"
                )))
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, token: Token) -> Result<()> {
        match self.advance() {
            Some(t) if t == token => Ok(()),
            other => Err(Error::domain(format!(
                "expected {token:?}, found {other:?}"
            ))),
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.advance();
                    let rhs = self.term()?;
                    lhs = Expr::Bin(BinOpTag(BinOp::Add), Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Minus) => {
                    self.advance();
                    let rhs = self.term()?;
                    lhs = Expr::Bin(BinOpTag(BinOp::Sub), Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // term := factor (('*' | '/') factor)*
    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.advance();
                    let rhs = self.factor()?;
                    lhs = Expr::Bin(BinOpTag(BinOp::Mul), Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Slash) => {
                    self.advance();
                    let rhs = self.factor()?;
                    lhs = Expr::Bin(BinOpTag(BinOp::Div), Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // factor := '-' factor | power
    fn factor(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Token::Minus) {
            self.advance();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    // power := primary ('^' factor)?   (right associative)
    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.peek() == Some(&Token::Caret) {
            self.advance();
            let exponent = self.factor()?;
            return Ok(Expr::Bin(
                BinOpTag(BinOp::Pow),
                Box::new(base),
                Box::new(exponent),
            ));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.advance() {
            Some(Token::Num(v)) => Ok(Expr::Num(v)),
            Some(Token::X) => Ok(Expr::Var),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Some(Token::Ident(name)) => {
                let f = match name.as_str() {
                    "abs" => UnaryFn::Abs,
                    "exp" => UnaryFn::Exp,
                    "ln" => UnaryFn::Ln,
                    "sin" => UnaryFn::Sin,
                    "cos" => UnaryFn::Cos,
                    "arccos" => UnaryFn::Arccos,
                    "pospart" => UnaryFn::Pospart,
                    other => {
                        return Err(Error::domain(format!("unknown function '{other}'")))
                    }
                };
                self.expect(Token::LParen)?;
                let arg = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(Expr::Call(UnaryFnTag(f), Box::new(arg)))
            }
            other => Err(Error::domain(format!(
                "unexpected token {other:?} in expression"
            ))),
        }
    }
}

/// Parses an expression in x.
pub fn parse(src: &str) -> Result<Expr> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(Error::domain("empty expression"));
    }
    let mut parser = Parser { tokens, pos: 0 };
    let expr = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::domain(format!(
            "trailing tokens after expression: {:?}",
            &parser.tokens[parser.pos..]
        )));
    }
    Ok(expr)
}

/// Compiles an expression into a function spec. Expressions carry no
/// declared breakpoints, so the conservative piecewise-analytic
/// quadrature path is used.
pub fn compile(src: &str) -> Result<FunctionSpec> {
    let expr = parse(src)?;
    FunctionSpec::new(src, Smoothness::PiecewiseAnalytic, vec![], move |x| {
        expr.eval(x)
    })
}
