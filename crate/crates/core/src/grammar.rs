//! Text syntax for summands and ternary forms.
//!
//! ```text
//! term := INT "*" kind ["@int"] | kind ["@int"] | "0"
//! kind := "sq" | "tri" | "p(" INT ")" | "pbar(" INT ")"
//!       | "gp(" INT "," INT ")" | "gpneg(" INT "," INT ")"
//! form := term "+" term ["+" term]
//! ```
//!
//! A two-term form is padded with the zero summand. Whitespace is ignored.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::generators::{Domain, Generator, GeneratorKind, TernaryForm};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Self { src: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected `{tok}`"))
        }
    }

    fn peek_int(&mut self) -> bool {
        self.skip_ws();
        self.pos < self.src.len() && self.src[self.pos].is_ascii_digit()
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| Error::Parse { pos: start, msg: format!("integer {text} out of range") })
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn term(&mut self, strict: bool) -> Result<Generator> {
        let start = self.pos;
        let mut coeff = 1;
        if self.peek_int() {
            let n = self.int()?;
            if !self.eat("*") {
                if n == 0 {
                    return Ok(Generator::zero());
                }
                return self.err("expected `*` after coefficient");
            }
            coeff = n;
        }
        let kind = if self.eat("sq") {
            GeneratorKind::Square
        } else if self.eat("tri") {
            GeneratorKind::Triangular
        } else if self.eat("pbar(") {
            let m = self.int()?;
            self.expect(")")?;
            GeneratorKind::SecondPolygonal(m)
        } else if self.eat("p(") {
            let m = self.int()?;
            self.expect(")")?;
            GeneratorKind::Polygonal(m)
        } else if self.eat("gpneg(") || self.eat("gp(") {
            let reflected = self.src[..self.pos].ends_with(b"gpneg(");
            let c = self.int()?;
            self.expect(",")?;
            let d = self.int()?;
            self.expect(")")?;
            if reflected {
                GeneratorKind::ReflectedGenPoly { c, d }
            } else {
                GeneratorKind::GenPoly { c, d }
            }
        } else {
            return self.err("expected one of sq, tri, p(m), pbar(m), gp(c,d)");
        };
        if strict && !kind.is_strict() {
            return Err(Error::Parse { pos: start, msg: format!("{kind:?} has d dividing c") });
        }
        let domain = if self.eat("@int") { Domain::Integers } else { Domain::Naturals };
        Generator::new(kind, coeff, domain).map_err(|e| Error::Parse { pos: start, msg: e.to_string() })
    }
}

/// Parses a single summand such as `2*gp(3,2)` or `pbar(5)@int`.
pub fn parse_term(s: &str, strict: bool) -> Result<Generator> {
    let mut cur = Cursor::new(s);
    let g = cur.term(strict)?;
    if !cur.at_end() {
        return cur.err("trailing input");
    }
    Ok(g)
}

/// Parses a two- or three-term form. With `strict`, `gp(c,d)` with `d | c`
/// is rejected.
pub fn parse_form(s: &str, strict: bool) -> Result<TernaryForm> {
    let mut cur = Cursor::new(s);
    let mut terms = vec![cur.term(strict)?];
    while terms.len() < 3 && cur.eat("+") {
        terms.push(cur.term(strict)?);
    }
    if !cur.at_end() {
        return cur.err("trailing input");
    }
    match terms.as_slice() {
        [a, b] => Ok(TernaryForm::two_term(*a, *b)),
        [a, b, c] => Ok(TernaryForm::new([*a, *b, *c])),
        _ => Err(Error::Parse { pos: 0, msg: "a form needs two or three terms".into() }),
    }
}

impl FromStr for TernaryForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_form(s, false)
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_term(s, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let f = parse_form("1*tri + 2*tri + gp(1,2)", false).unwrap();
        assert_eq!(f.pretty(), "T_x+2T_y+z(z+3)/2");
        let f = parse_form("1*sq + 1*sq + 1*sq", false).unwrap();
        assert_eq!(f.pretty(), "x^2+y^2+z^2");
        let f = parse_form("1*tri + p(5) + pbar(5)", false).unwrap();
        assert_eq!(f.pretty(), "T_x+p_5(y)+pbar_5(z)");
        let f = parse_form("tri+sq", false).unwrap();
        assert!(f.terms()[2].is_zero());
        let f = parse_form("sq@int + gp(1,2)@int + 0", false).unwrap();
        assert_eq!(f.terms()[0].domain(), Domain::Integers);
        assert_eq!(f.terms()[1].domain(), Domain::Integers);
    }

    #[test]
    fn errors_carry_position() {
        match parse_form("1*tri + 2*foo + sq", false) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_form("1*tri", false).is_err());
        assert!(parse_form("tri + tri + tri + tri", false).is_err());
        assert!(parse_form("p(2) + tri", false).is_err());
        assert!(parse_form("3 tri + sq", false).is_err());
    }

    #[test]
    fn strict_rejects_divisible() {
        assert!(parse_form("tri + tri + gp(4,2)", false).is_ok());
        assert!(parse_form("tri + tri + gp(4,2)", true).is_err());
        assert!(parse_form("tri + tri + gp(3,2)", true).is_ok());
    }

    fn arb_generator() -> impl Strategy<Value = Generator> {
        let kind = prop_oneof![
            Just(GeneratorKind::Square),
            Just(GeneratorKind::Triangular),
            (3u32..30).prop_map(GeneratorKind::Polygonal),
            (3u32..30).prop_map(GeneratorKind::SecondPolygonal),
            (1u32..40, 1u32..10).prop_map(|(c, d)| GeneratorKind::GenPoly { c, d }),
            (1u32..40, 1u32..10).prop_map(|(c, d)| GeneratorKind::ReflectedGenPoly { c, d }),
            Just(GeneratorKind::Zero),
        ];
        let domain = prop_oneof![Just(Domain::Naturals), Just(Domain::Integers)];
        (kind, 1u32..20, domain).prop_map(|(k, coeff, dom)| {
            if k == GeneratorKind::Zero {
                Generator::zero()
            } else {
                Generator::new(k, coeff, dom).unwrap()
            }
        })
    }

    proptest! {
        #[test]
        fn canonical_printer_round_trips(a in arb_generator(), b in arb_generator(), c in arb_generator()) {
            let f = TernaryForm::new([a, b, c]);
            let back: TernaryForm = f.to_string().parse().unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
