//! Small infix reader for fractions such as `(1-x*q^6)/((1-x*q^7)^2*(1-x^2*q^13))`.
//! Division is only accepted by expressions that split into binomials.

use num_bigint::BigInt;

use super::poly::{LaurentPoly, Ring};
use super::ratfunc::RatFunc;
use super::SymError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

#[derive(Debug, Clone)]
enum Ast {
    Num(BigInt),
    Var(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i32),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, SymError> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push((st, Tok::Num(t.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push((st, Tok::Ident(cs[st..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(SymError::Parse { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: &str) -> Result<T, SymError> {
        Err(SymError::Parse { pos: self.at(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ast, SymError> {
        let mut a = self.term()?;
        loop {
            if self.eat('+') {
                a = Ast::Add(Box::new(a), Box::new(self.term()?));
            } else if self.eat('-') {
                a = Ast::Sub(Box::new(a), Box::new(self.term()?));
            } else {
                return Ok(a);
            }
        }
    }

    fn term(&mut self) -> Result<Ast, SymError> {
        let mut a = self.unary()?;
        loop {
            if self.eat('*') {
                a = Ast::Mul(Box::new(a), Box::new(self.unary()?));
            } else if self.eat('/') {
                a = Ast::Div(Box::new(a), Box::new(self.unary()?));
            } else {
                return Ok(a);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast, SymError> {
        if self.eat('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast, SymError> {
        let a = self.atom()?;
        if self.eat('^') {
            let paren = self.eat('(');
            let neg = self.eat('-');
            let k = match self.peek() {
                Some(Tok::Num(n)) => {
                    let k: i32 = n.try_into().map_err(|_| SymError::Parse {
                        pos: self.at(),
                        msg: "exponent too large".into(),
                    })?;
                    self.pos += 1;
                    k
                }
                _ => return self.err("expected integer exponent"),
            };
            if paren && !self.eat(')') {
                return self.err("expected ')'");
            }
            return Ok(Ast::Pow(Box::new(a), if neg { -k } else { k }));
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Ast, SymError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Ast::Num(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Ast::Var(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }
}

fn eval(ring: &Ring, a: &Ast) -> Result<RatFunc, SymError> {
    Ok(match a {
        Ast::Num(n) => RatFunc::from_poly(LaurentPoly::constant(ring, n.clone())),
        Ast::Var(v) => RatFunc::from_poly(ring.var(v)?),
        Ast::Neg(x) => -eval(ring, x)?,
        Ast::Add(x, y) => eval(ring, x)? + eval(ring, y)?,
        Ast::Sub(x, y) => eval(ring, x)? - eval(ring, y)?,
        Ast::Mul(x, y) => eval(ring, x)? * eval(ring, y)?,
        Ast::Pow(x, k) => {
            if *k < 0 {
                divide(ring, RatFunc::one(ring), x, -*k)?
            } else {
                eval(ring, x)?.pow(*k)?
            }
        }
        Ast::Div(x, y) => divide(ring, eval(ring, x)?, y, 1)?,
    })
}

/// Divide `acc` by `d^k`, splitting products so each leaf is a binomial.
fn divide(ring: &Ring, acc: RatFunc, d: &Ast, k: i32) -> Result<RatFunc, SymError> {
    match d {
        Ast::Mul(x, y) => {
            let a = divide(ring, acc, x, k)?;
            divide(ring, a, y, k)
        }
        Ast::Pow(x, e) if *e >= 0 => divide(ring, acc, x, k * e),
        Ast::Neg(x) => Ok(-divide(ring, acc, x, k)?),
        _ => {
            let v = eval(ring, d)?;
            let mut a = acc;
            for _ in 0..k {
                a = a.div(&v)?;
            }
            Ok(a)
        }
    }
}

/// Parse an expression over `ring`.
pub fn parse(ring: &Ring, s: &str) -> Result<RatFunc, SymError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, len: s.len() };
    let a = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    eval(ring, &a)
}

/// Parse an expression that must be a Laurent polynomial.
pub fn parse_poly(ring: &Ring, s: &str) -> Result<LaurentPoly, SymError> {
    let r = parse(ring, s)?;
    r.as_poly()
        .cloned()
        .ok_or_else(|| SymError::Parse { pos: 0, msg: format!("not a polynomial: {s}") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factoring_step() {
        let r = Ring::new(&["x", "q"]);
        let a = parse_poly(&r, "(1-x*q^8)*(1+x^2*q^13)").unwrap();
        let b = parse_poly(&r, "1+x^2*q^13-x*q^8-x^3*q^21").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn division_by_products() {
        let r = Ring::new(&["x", "q"]);
        let f = parse(&r, "(1-x*q^7)^2*(1-x^2*q^13)/((1-x*q^7)^2*(1-x^2*q^13))").unwrap();
        assert_eq!(f, RatFunc::one(&r));
        let g = parse(&r, "1/(1-q^-1)").unwrap();
        let h = parse(&r, "-q/(1-q)").unwrap();
        assert_eq!(g, h);
        let k = parse(&r, "(1-x)^-2").unwrap();
        assert_eq!(k, parse(&r, "1/(1-x)/(1-x)").unwrap());
    }

    #[test]
    fn errors_carry_position() {
        let r = Ring::new(&["x"]);
        assert!(matches!(parse(&r, "x + y"), Err(SymError::UnknownVariable(_))));
        assert!(matches!(parse(&r, "(x"), Err(SymError::Parse { .. })));
        assert!(matches!(parse(&r, "1/(1+x+x^2)"), Err(SymError::NotBinomial(_))));
    }
}
