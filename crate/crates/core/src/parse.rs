//! Text grammar for polynomials: integers mod p, `T`, `x`, the field generator `a`,
//! `+ - * ^` and parentheses. Juxtaposition multiplies (`2T` = `2*T`).

use crate::bivariate::BiPoly;
use crate::error::{AlgebraError, Result};
use crate::field::{FiniteField, Fq};
use crate::poly::{FqPoly, Poly};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Var(char),
    Op(char),
}

struct Lexed {
    toks: Vec<(Tok, usize, usize)>,
    end: (usize, usize),
}

fn lex(s: &str) -> Result<Lexed> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut v: u64 = 0;
            while let Some(&d) = chars.peek() {
                let Some(dv) = d.to_digit(10) else { break };
                v = v.checked_mul(10).and_then(|v| v.checked_add(dv as u64)).ok_or(AlgebraError::Parse {
                    line,
                    col,
                    msg: "integer literal too large".into(),
                })?;
                chars.next();
                col += 1;
            }
            toks.push((Tok::Num(v), pos.0, pos.1));
            continue;
        }
        match c {
            'T' | 'x' | 'a' => toks.push((Tok::Var(c), line, col)),
            '+' | '-' | '*' | '^' | '(' | ')' => toks.push((Tok::Op(c), line, col)),
            _ => {
                return Err(AlgebraError::Parse { line, col, msg: format!("unexpected character '{c}'") });
            }
        }
        chars.next();
        col += 1;
    }
    Ok(Lexed { toks, end: (line, col) })
}

struct Parser<'a> {
    field: &'a Fq,
    lx: Lexed,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.lx.toks.get(self.pos).map(|t| (t.1, t.2)).unwrap_or(self.lx.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(AlgebraError::Parse { line, col, msg: msg.into() })
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let t = self.unary()?;
                    acc = acc.mul(&t);
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::Op('(')) => {
                    let t = self.power()?;
                    acc = acc.mul(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<BiPoly> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if let Some(Tok::Op('+')) = self.peek() {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<BiPoly> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(e)) => {
                    self.pos += 1;
                    if e > 4096 {
                        return self.err("exponent too large");
                    }
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BiPoly> {
        let k = self.field;
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                let c = k.from_int((v % k.characteristic()) as i64);
                Ok(BiPoly::from_a(Poly::constant(k, c)))
            }
            Some(Tok::Var('T')) => {
                self.pos += 1;
                Ok(BiPoly::from_a(Poly::var(k)))
            }
            Some(Tok::Var('x')) => {
                self.pos += 1;
                Ok(BiPoly::x(k))
            }
            Some(Tok::Var('a')) => match k.generator() {
                Some(g) => {
                    self.pos += 1;
                    Ok(BiPoly::from_a(Poly::constant(k, g)))
                }
                None => self.err("generator 'a' used over a prime field"),
            },
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse a polynomial in T and x.
pub fn parse_bivariate(field: &Fq, s: &str) -> Result<BiPoly> {
    let lx = lex(s)?;
    let mut p = Parser { field, lx, pos: 0 };
    if p.lx.toks.is_empty() {
        return p.err("empty polynomial");
    }
    let e = p.expr()?;
    if p.pos != p.lx.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parse a polynomial in T alone.
pub fn parse_poly(field: &Fq, s: &str) -> Result<FqPoly> {
    let b = parse_bivariate(field, s)?;
    if b.degree_x().unwrap_or(0) > 0 {
        let col = s.find('x').map(|i| i + 1).unwrap_or(1);
        return Err(AlgebraError::Parse { line: 1, col, msg: "variable x not allowed here".into() });
    }
    Ok(b.coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let k = Fq::new(3).unwrap();
        for s in ["x^2 - T^3", "1 - x + x^3", "x^3 + (T + 1)*x + 2*T^2", "-(x - T)^2"] {
            let f = parse_bivariate(&k, s).unwrap();
            let g = parse_bivariate(&k, &f.to_string()).unwrap();
            assert_eq!(f, g);
        }
    }

    #[test]
    fn reduces_mod_p() {
        let k = Fq::new(3).unwrap();
        let f = parse_bivariate(&k, "x^2 - 4T").unwrap();
        assert_eq!(f.to_string(), "x^2 + 2*T");
        let g = parse_bivariate(&k, "2T x").unwrap();
        assert_eq!(g.to_string(), "2*T*x");
    }

    #[test]
    fn generator() {
        let k = Fq::new(9).unwrap();
        let f = parse_bivariate(&k, "x^2 - a*T").unwrap();
        assert_eq!(parse_bivariate(&k, &f.to_string()).unwrap(), f);
        assert!(parse_bivariate(&Fq::new(3).unwrap(), "x - a").is_err());
    }

    #[test]
    fn error_positions() {
        let k = Fq::new(3).unwrap();
        match parse_bivariate(&k, "x^2 + ?") {
            Err(AlgebraError::Parse { line, col, .. }) => assert_eq!((line, col), (1, 7)),
            e => panic!("{e:?}"),
        }
        match parse_bivariate(&k, "x^2 +\n (T") {
            Err(AlgebraError::Parse { line, .. }) => assert_eq!(line, 2),
            e => panic!("{e:?}"),
        }
    }
}
