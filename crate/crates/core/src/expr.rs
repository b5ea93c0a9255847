//! Dirac candidates `d: Γ → ℝ` given as small expression trees over the
//! coordinates.
//!
//! Grammar: `+ - * ^`, parentheses, integer/decimal literals, `g(k,i)` for a
//! coordinate, and the functions `abs(x)`, `max(x, …)`, `min(x, …)`,
//! `pow(x, y)`. The shorthand `sumabs` expands to `Σ |g(k,i)|`.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{Coord, CoordSystem, LatticePoint};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    Coord(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Abs(Box<Expr>),
    Max(Vec<Expr>),
    Min(Vec<Expr>),
}

impl Expr {
    pub fn eval(&self, p: &LatticePoint) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Coord(s) => p.get(*s) as f64,
            Expr::Neg(a) => -a.eval(p),
            Expr::Add(a, b) => a.eval(p) + b.eval(p),
            Expr::Sub(a, b) => a.eval(p) - b.eval(p),
            Expr::Mul(a, b) => a.eval(p) * b.eval(p),
            Expr::Pow(a, b) => a.eval(p).powf(b.eval(p)),
            Expr::Abs(a) => a.eval(p).abs(),
            Expr::Max(xs) => xs.iter().map(|x| x.eval(p)).fold(f64::NEG_INFINITY, f64::max),
            Expr::Min(xs) => xs.iter().map(|x| x.eval(p)).fold(f64::INFINITY, f64::min),
        }
    }
}

/// A diagonal operator `D e_γ = d(γ) e_γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiracCandidate {
    source: String,
    expr: Expr,
}

impl DiracCandidate {
    pub fn parse(text: &str, sys: &CoordSystem) -> Result<Self> {
        let expanded;
        let text = if text.contains("sumabs") {
            expanded = text.replace("sumabs", &sum_abs_text(sys));
            expanded.as_str()
        } else {
            text
        };
        let mut p = Parser { src: text.as_bytes(), pos: 0, sys };
        let expr = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(Self { source: text.to_string(), expr })
    }

    /// `d(γ) = Σ_{(k,i)} |γ(k,i)|`.
    pub fn sum_abs(sys: &CoordSystem) -> Self {
        Self::parse(&sum_abs_text(sys), sys).expect("generated expression parses")
    }

    pub fn constant(c: f64) -> Self {
        Self { source: c.to_string(), expr: Expr::Const(c) }
    }

    pub fn eval(&self, p: &LatticePoint) -> f64 {
        self.expr.eval(p)
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    /// Points of `points` where `d` vanishes.
    pub fn zeros<'a>(&self, points: &'a [LatticePoint]) -> Vec<&'a LatticePoint> {
        points.iter().filter(|p| self.eval(p) == 0.0).collect()
    }
}

impl fmt::Display for DiracCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

fn sum_abs_text(sys: &CoordSystem) -> String {
    let terms: Vec<String> = sys.coords().iter().map(|c| format!("abs(g({},{}))", c.string, c.index)).collect();
    format!("({})", terms.join(" + "))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sys: &'a CoordSystem,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Expr(format!("{msg} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat(b'*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            return Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("bad number"))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn args(&mut self) -> Result<Vec<Expr>> {
        self.expect(b'(')?;
        let mut out = vec![self.expr()?];
        while self.eat(b',') {
            out.push(self.expr()?);
        }
        self.expect(b')')?;
        Ok(out)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Const(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                match name.as_str() {
                    "g" => {
                        self.expect(b'(')?;
                        self.skip_ws();
                        let k = self.number()? as usize;
                        self.expect(b',')?;
                        self.skip_ws();
                        let i = self.number()? as usize;
                        self.expect(b')')?;
                        Ok(Expr::Coord(self.sys.require_slot(Coord::new(k, i))?))
                    }
                    "abs" => {
                        let mut a = self.args()?;
                        if a.len() != 1 {
                            return Err(self.err("abs takes one argument"));
                        }
                        Ok(Expr::Abs(Box::new(a.remove(0))))
                    }
                    "pow" => {
                        let mut a = self.args()?;
                        if a.len() != 2 {
                            return Err(self.err("pow takes two arguments"));
                        }
                        let e = a.remove(1);
                        Ok(Expr::Pow(Box::new(a.remove(0)), Box::new(e)))
                    }
                    "max" => Ok(Expr::Max(self.args()?)),
                    "min" => Ok(Expr::Min(self.args()?)),
                    _ => Err(self.err(&format!("unknown function '{name}'"))),
                }
            }
            _ => Err(self.err("expected expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::WeylDecomposition;

    #[test]
    fn parse_and_eval() {
        let d = WeylDecomposition::from_word_text("(s1 s2)(s1)", 2).unwrap();
        let sys = d.coords();
        let p = sys.parse_point("(2,1)=3, (0,1)=-2").unwrap();
        let e = |s: &str| DiracCandidate::parse(s, sys).unwrap().eval(&p);
        assert_eq!(e("g(2,1) + 2*g(0,1)"), -1.0);
        assert_eq!(e("abs(g(0,1))"), 2.0);
        assert_eq!(e("max(g(2,1), g(0,1), 7)"), 7.0);
        assert_eq!(e("min(g(2,1), g(0,1))"), -2.0);
        assert_eq!(e("2^g(2,1)"), 8.0);
        assert_eq!(e("pow(2, g(0,1))"), 0.25);
        assert_eq!(e("-g(2,1) - -1"), -2.0);
        assert_eq!(e("sumabs"), 5.0);
        assert_eq!(DiracCandidate::sum_abs(sys).eval(&p), 5.0);
    }

    #[test]
    fn parse_errors() {
        let d = WeylDecomposition::from_word_text("s1", 1).unwrap();
        let sys = d.coords();
        assert!(matches!(DiracCandidate::parse("g(3,3)", sys), Err(Error::UnknownCoord(_))));
        assert!(matches!(DiracCandidate::parse("foo(1)", sys), Err(Error::Expr(_))));
        assert!(matches!(DiracCandidate::parse("1 +", sys), Err(Error::Expr(_))));
        assert!(matches!(DiracCandidate::parse("1 2", sys), Err(Error::Expr(_))));
    }
}
