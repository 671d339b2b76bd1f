//! Equations between sums of triangular numbers, squares and constants,
//! optionally parametrised by `x`.
//!
//! ```text
//! equation := sum "=" sum
//! sum      := term ("+" term)*
//! term     := INT | [INT] "T_" index | [INT] base "^2"
//! index    := INT | "x" | "{" lin "}"
//! base     := INT | "x" | "(" lin ")"
//! lin      := INT | [INT] "x" [("+" | "-") INT]
//! ```

use std::fmt;

use crate::error::{Error, Result};

/// `a*x + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lin {
    pub a: i64,
    pub b: i64,
}

impl Lin {
    fn at(self, x: i64) -> i64 {
        self.a * x + self.b
    }

    /// Least `x >= 0` with `a*x + b >= 0`; `None` if there is none.
    fn least_nonneg(self) -> Option<i64> {
        match self.a {
            0 => (self.b >= 0).then_some(0),
            a if a > 0 => Some((-self.b).div_euclid(a) + i64::from((-self.b).rem_euclid(a) != 0)).map(|x| x.max(0)),
            _ => (self.b >= 0).then_some(0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    Const,
    Tri(Lin),
    Sq(Lin),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub atom: Atom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub text: String,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

fn tri(n: i64) -> i64 {
    n * (n + 1) / 2
}

impl Term {
    fn value(self, x: i64) -> Option<i64> {
        match self.atom {
            Atom::Const => Some(self.coeff),
            Atom::Tri(l) => (l.at(x) >= 0).then(|| self.coeff * tri(l.at(x))),
            Atom::Sq(l) => (l.at(x) >= 0).then(|| self.coeff * l.at(x) * l.at(x)),
        }
    }

    fn lin(self) -> Option<Lin> {
        match self.atom {
            Atom::Const => None,
            Atom::Tri(l) | Atom::Sq(l) => Some(l),
        }
    }
}

impl Equation {
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let lhs = p.sum()?;
        p.expect(b'=')?;
        let rhs = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return p.err("trailing input");
        }
        Ok(Equation { text: s.trim().to_string(), lhs, rhs })
    }

    pub fn is_parametric(&self) -> bool {
        self.terms().any(|t| t.lin().is_some_and(|l| l.a != 0))
    }

    fn terms(&self) -> impl Iterator<Item = &Term> {
        self.lhs.iter().chain(&self.rhs)
    }

    /// Least `x` at which every index and base is non-negative.
    pub fn min_x(&self) -> Option<i64> {
        self.terms().filter_map(|t| t.lin()).try_fold(0, |m, l| l.least_nonneg().map(|v| m.max(v)))
    }

    /// Both sides at `x`, or `None` if an index or base is negative there.
    pub fn sides(&self, x: i64) -> Option<(i64, i64)> {
        let sum = |ts: &[Term]| ts.iter().map(|t| t.value(x)).sum::<Option<i64>>();
        Some((sum(&self.lhs)?, sum(&self.rhs)?))
    }

    /// Largest coefficient-1 index (for `T`) or base (for squares) on the
    /// right-hand side at `x`.
    pub fn max_unit_arg(&self, square: bool, x: i64) -> Option<i64> {
        self.rhs
            .iter()
            .filter(|t| t.coeff == 1)
            .filter_map(|t| match (t.atom, square) {
                (Atom::Tri(l), false) | (Atom::Sq(l), true) => Some(l.at(x)),
                _ => None,
            })
            .max()
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
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

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected `{}`", c as char))
        }
    }

    fn int(&mut self) -> Option<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn lin(&mut self) -> Result<Lin> {
        let k = self.int();
        if !self.eat(b'x') {
            return k.map(|b| Lin { a: 0, b }).map_or_else(|| self.err("expected integer or x"), Ok);
        }
        let a = k.unwrap_or(1);
        let sign = if self.eat(b'+') {
            1
        } else if self.eat(b'-') {
            -1
        } else {
            return Ok(Lin { a, b: 0 });
        };
        match self.int() {
            Some(b) => Ok(Lin { a, b: sign * b }),
            None => self.err("expected integer offset"),
        }
    }

    fn index(&mut self) -> Result<Lin> {
        if self.eat(b'{') {
            let l = self.lin()?;
            self.expect(b'}')?;
            Ok(l)
        } else if self.eat(b'x') {
            Ok(Lin { a: 1, b: 0 })
        } else {
            self.int().map(|b| Lin { a: 0, b }).map_or_else(|| self.err("expected index"), Ok)
        }
    }

    fn square(&mut self, base: Lin) -> Result<Atom> {
        if self.eat_str("^2") {
            Ok(Atom::Sq(base))
        } else {
            self.err("expected `^2`")
        }
    }

    fn term(&mut self) -> Result<Term> {
        let lead = self.int();
        if self.eat_str("T_") {
            return Ok(Term { coeff: lead.unwrap_or(1), atom: Atom::Tri(self.index()?) });
        }
        if self.eat(b'(') {
            let base = self.lin()?;
            self.expect(b')')?;
            return Ok(Term { coeff: lead.unwrap_or(1), atom: self.square(base)? });
        }
        if self.eat(b'x') {
            return Ok(Term { coeff: lead.unwrap_or(1), atom: self.square(Lin { a: 1, b: 0 })? });
        }
        match lead {
            Some(n) if self.peek() == Some(b'^') => Ok(Term { coeff: 1, atom: self.square(Lin { a: 0, b: n })? }),
            Some(n) => Ok(Term { coeff: n, atom: Atom::Const }),
            None => self.err("expected a term"),
        }
    }

    fn sum(&mut self) -> Result<Vec<Term>> {
        let mut terms = vec![self.term()?];
        while self.eat(b'+') {
            terms.push(self.term()?);
        }
        Ok(terms)
    }
}
