//! Polynomial expressions over named variables.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := uint | ident | '(' expr ')'
//! ```
//!
//! There is no unary minus and no implicit multiplication: `2x` is rejected.
//! Identifiers name generators of a ring of functions, or the variable `x`.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Interprets the leaves and operations of an [`Expr`] in some carrier `T`.
pub trait Evaluator<T> {
    fn constant(&self, n: &BigInt) -> T;
    fn variable(&self, name: &str) -> Result<T>;
    fn add(&self, a: &T, b: &T) -> T;
    fn sub(&self, a: &T, b: &T) -> T;
    fn mul(&self, a: &T, b: &T) -> T;
}

impl Expr {
    pub fn var(name: &str) -> Self {
        Expr::Var(name.to_string())
    }

    pub fn int(n: i64) -> Self {
        Expr::Int(BigInt::from(n))
    }

    pub fn variables(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => {
                out.insert(v);
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Pow(a, _) => a.collect_vars(out),
        }
    }

    /// Fails with `UnknownGenerator` on the first identifier not in `allowed`.
    pub fn check_identifiers(&self, allowed: &[&str]) -> Result<()> {
        match self.variables().into_iter().find(|v| !allowed.contains(v)) {
            Some(v) => Err(Error::UnknownGenerator(v.to_string())),
            None => Ok(()),
        }
    }

    pub fn eval<T: Clone>(&self, ev: &impl Evaluator<T>) -> Result<T> {
        Ok(match self {
            Expr::Int(n) => ev.constant(n),
            Expr::Var(v) => ev.variable(v)?,
            Expr::Add(a, b) => ev.add(&a.eval(ev)?, &b.eval(ev)?),
            Expr::Sub(a, b) => ev.sub(&a.eval(ev)?, &b.eval(ev)?),
            Expr::Mul(a, b) => ev.mul(&a.eval(ev)?, &b.eval(ev)?),
            Expr::Pow(a, e) => {
                let base = a.eval(ev)?;
                let mut acc = ev.constant(&BigInt::from(1));
                let mut sq = base;
                let mut e = *e;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = ev.mul(&acc, &sq);
                    }
                    e >>= 1;
                    if e > 0 {
                        sq = ev.mul(&sq, &sq);
                    }
                }
                acc
            }
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Pow(..) => 3,
            Expr::Int(_) | Expr::Var(_) => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Add(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " + ")?;
                b.fmt_at(f, 2)
            }
            Expr::Sub(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " - ")?;
                b.fmt_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, "*")?;
                b.fmt_at(f, 3)
            }
            Expr::Pow(a, e) => {
                a.fmt_at(f, 4)?;
                write!(f, "^{e}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    tok: Tok,
    tok_pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self> {
        let mut p = Self { src, pos: 0, tok: Tok::End, tok_pos: 0 };
        p.bump()?;
        Ok(p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.tok_pos, msg: msg.into() })
    }

    fn bump(&mut self) -> Result<()> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.tok_pos = self.pos;
        if self.pos >= bytes.len() {
            self.tok = Tok::End;
            return Ok(());
        }
        let c = bytes[self.pos];
        let start = self.pos;
        if c.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: BigInt = self.src[start..self.pos].parse().expect("digits");
            self.tok = Tok::Int(n);
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            self.tok = Tok::Ident(self.src[start..self.pos].to_string());
        } else if b"+-*^()".contains(&c) {
            self.pos += 1;
            self.tok = Tok::Sym(c as char);
        } else {
            let ch = self.src[start..].chars().next().unwrap_or('?');
            return Err(Error::Syntax { pos: start, msg: format!("unexpected character `{ch}`") });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.tok {
                Tok::Sym('+') => {
                    self.bump()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.tok == Tok::Sym('*') {
            self.bump()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        if matches!(self.tok, Tok::Int(_) | Tok::Ident(_) | Tok::Sym('(')) {
            return self.err("implicit multiplication is not allowed");
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.tok != Tok::Sym('^') {
            return Ok(base);
        }
        self.bump()?;
        let Tok::Int(n) = &self.tok else {
            return self.err("expected a non-negative integer exponent");
        };
        let Ok(e) = u32::try_from(n) else {
            return self.err("exponent too large");
        };
        self.bump()?;
        if self.tok == Tok::Sym('^') {
            return self.err("chained exponents need parentheses");
        }
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Expr> {
        match core::mem::replace(&mut self.tok, Tok::End) {
            Tok::Int(n) => {
                self.bump()?;
                Ok(Expr::Int(n))
            }
            Tok::Ident(name) => {
                self.bump()?;
                Ok(Expr::Var(name))
            }
            Tok::Sym('(') => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::Sym(')') {
                    return self.err("expected `)`");
                }
                self.bump()?;
                Ok(inner)
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Sym(c) => {
                self.tok = Tok::Sym(c);
                self.err(format!("unexpected `{c}`"))
            }
        }
    }
}

/// Parses the full input as one expression.
pub fn parse_expression(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    match &p.tok {
        Tok::End => Ok(e),
        Tok::Sym(')') => p.err("unbalanced `)`"),
        _ => p.err("unexpected trailing input"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    struct IntEval(i64);

    impl Evaluator<BigInt> for IntEval {
        fn constant(&self, n: &BigInt) -> BigInt {
            n.clone()
        }
        fn variable(&self, name: &str) -> Result<BigInt> {
            if name == "x" { Ok(BigInt::from(self.0)) } else { Err(Error::UnknownGenerator(name.to_string())) }
        }
        fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
            a + b
        }
        fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
            a - b
        }
        fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
            a * b
        }
    }

    #[test]
    fn parses_polynomial() {
        let e = parse_expression("x^2 + 3*x - 1").unwrap();
        assert_eq!(e.to_string(), "x^2 + 3*x - 1");
        for x in -5..5 {
            assert_eq!(e.eval(&IntEval(x)).unwrap(), BigInt::from(x * x + 3 * x - 1));
        }
    }

    #[test]
    fn syntax_errors() {
        let src = "((x+1)";
        assert!(matches!(parse_expression(src), Err(Error::Syntax { pos, .. }) if pos == src.len()));
        assert!(matches!(parse_expression("2x"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_expression("x^-1"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expression("x + "), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expression("x)"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_expression("x $ 1"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expression("x^2^3"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn unknown_identifier() {
        let e = parse_expression("g1 + g7").unwrap();
        assert_eq!(e.check_identifiers(&["g1"]), Err(Error::UnknownGenerator("g7".to_string())));
        assert_eq!(e.check_identifiers(&["g1", "g7"]), Ok(()));
    }

    #[test]
    fn keeps_structural_parentheses() {
        for src in ["a - (b - c)", "a*(b*c)", "(a + b)^2", "(a^2)^3", "2*(x + 1) - (x - 1)*(x + 1)"] {
            assert_eq!(parse_expression(src).unwrap().to_string(), src);
        }
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0u32..50).prop_map(|n| Expr::int(n as i64)),
            prop::sample::select(&["x", "g1", "y_2"][..]).prop_map(Expr::var),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner, 0u32..5).prop_map(|(a, e)| Expr::Pow(Box::new(a), e)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let printed = e.to_string();
            let reparsed = parse_expression(&printed).unwrap();
            prop_assert_eq!(&reparsed, &e);
            prop_assert_eq!(reparsed.to_string(), printed);
        }
    }
}
