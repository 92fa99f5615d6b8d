//! Text expressions: signed sums of `*`-separated factors.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := INT ['/' INT] | 'i' | NAME ['^' INT] | '(' expr ')' ['^' INT]
//! ```
//!
//! `i` denotes the imaginary unit unless the algebra has a generator of that
//! name. A generator of square-zero type may occur at most once among the
//! explicit factors of a term.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Algebra, Element, GenId};
use crate::field::{FieldKind, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownGenerator(String),
    SquareZeroExponent(String),
    Juxtaposition,
    UnexpectedToken(String),
    UnexpectedEnd,
    ZeroDenominator,
    ImaginaryUnitOutsideField,
    BadExponent,
}

/// A parse failure; `offset` is the byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnknownGenerator(n) => write!(f, "unknown generator {n:?}")?,
            ParseErrorKind::SquareZeroExponent(n) => {
                write!(f, "square-zero generator {n:?} raised to a power above 1")?
            }
            ParseErrorKind::Juxtaposition => f.write_str("missing '*' between factors")?,
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected {t:?}")?,
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input")?,
            ParseErrorKind::ZeroDenominator => f.write_str("zero denominator")?,
            ParseErrorKind::ImaginaryUnitOutsideField => f.write_str("imaginary unit in an algebra over Q")?,
            ParseErrorKind::BadExponent => f.write_str("exponent must be a small non-negative integer")?,
        }
        write!(f, " at column {}", self.offset + 1)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Int(n) => n.to_string(),
            Tok::Name(s) => s.clone(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }

    fn is_operand(&self) -> bool {
        matches!(self, Tok::Int(_) | Tok::Name(_) | Tok::LParen)
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos] as char;
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let tok = if c.is_ascii_digit() {
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            Tok::Int(text[start..pos].parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            Tok::Name(text[start..pos].to_string())
        } else {
            pos += c.len_utf8();
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    let ch = text[start..].chars().next().unwrap_or(c);
                    return Err(ParseError { kind: ParseErrorKind::UnexpectedToken(ch.to_string()), offset: start });
                }
            }
        };
        if let (Some((prev, _)), true) = (out.last(), tok.is_operand()) {
            if matches!(prev, Tok::Int(_) | Tok::Name(_) | Tok::RParen) {
                return Err(ParseError { kind: ParseErrorKind::Juxtaposition, offset: start });
            }
        }
        out.push((tok, start));
    }
    Ok(out)
}

struct Parser<'a> {
    alg: &'a Arc<Algebra>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, o)| o).unwrap_or(self.end)
    }

    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError { kind, offset: self.offset() })
    }

    fn unexpected<T>(&self) -> Result<T, ParseError> {
        match self.peek() {
            Some(t) => self.err(ParseErrorKind::UnexpectedToken(t.text())),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expr(&mut self) -> Result<Element, ParseError> {
        let mut acc = Element::zero(self.alg);
        let mut negative = match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if negative { acc - t } else { acc + t };
            match self.peek() {
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Element, ParseError> {
        let mut acc = Element::one(self.alg);
        let mut seen_square_zero: Vec<GenId> = Vec::new();
        loop {
            let f = self.factor(&mut seen_square_zero)?;
            acc = acc * f;
            if self.peek() != Some(&Tok::Star) {
                return Ok(acc);
            }
            self.pos += 1;
        }
    }

    fn exponent(&mut self) -> Result<Option<u32>, ParseError> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(None);
        }
        self.pos += 1;
        match self.peek() {
            Some(Tok::Int(n)) => {
                let e = u32::try_from(n.clone()).ok().filter(|&e| e <= 4096);
                match e {
                    Some(e) => {
                        self.pos += 1;
                        Ok(Some(e))
                    }
                    None => self.err(ParseErrorKind::BadExponent),
                }
            }
            _ => self.unexpected(),
        }
    }

    fn factor(&mut self, seen_square_zero: &mut Vec<GenId>) -> Result<Element, ParseError> {
        let start = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(num)) => {
                self.pos += 1;
                let mut value = BigRational::from_integer(num);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(den)) => {
                            if den == BigInt::from(0) {
                                return self.err(ParseErrorKind::ZeroDenominator);
                            }
                            self.pos += 1;
                            value /= BigRational::from_integer(den);
                        }
                        _ => return self.unexpected(),
                    }
                }
                Ok(Element::scalar(self.alg, Scalar::from_rational(value)))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                let id = match self.alg.id_of(&name) {
                    Some(id) => id,
                    None if name == "i" => {
                        if self.alg.field() != FieldKind::Gaussian {
                            return Err(ParseError { kind: ParseErrorKind::ImaginaryUnitOutsideField, offset: start });
                        }
                        let e = self.exponent()?.unwrap_or(1);
                        return Ok(Element::scalar(self.alg, Scalar::i()).pow(e));
                    }
                    None => return Err(ParseError { kind: ParseErrorKind::UnknownGenerator(name), offset: start }),
                };
                let e = self.exponent()?.unwrap_or(1);
                if self.alg.generator(id).is_square_zero() && e > 0 {
                    if e > 1 || seen_square_zero.contains(&id) {
                        return Err(ParseError { kind: ParseErrorKind::SquareZeroExponent(name), offset: start });
                    }
                    seen_square_zero.push(id);
                }
                Ok(Element::generator(self.alg, id).pow(e))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.unexpected();
                }
                self.pos += 1;
                let e = self.exponent()?.unwrap_or(1);
                Ok(inner.pow(e))
            }
            _ => self.unexpected(),
        }
    }
}

impl Element {
    /// Parse an expression in the given algebra.
    pub fn parse(alg: &Arc<Algebra>, text: &str) -> Result<Element, ParseError> {
        let toks = tokenize(text)?;
        let mut p = Parser { alg, toks, pos: 0, end: text.len() };
        if p.peek().is_none() {
            return p.err(ParseErrorKind::UnexpectedEnd);
        }
        let e = p.expr()?;
        if p.peek().is_some() {
            return p.unexpected();
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::Generator;
    use proptest::prelude::*;

    fn sugra() -> Arc<Algebra> {
        Algebra::new(
            FieldKind::Gaussian,
            vec![
                Generator::even("e0", 1),
                Generator::even("e1", 1),
                Generator::odd("psi1", 1),
                Generator::odd("psi2", 1),
                Generator::even("x4", 4),
                Generator::even("x7", 7),
            ],
        )
        .unwrap()
    }

    fn kind(r: Result<Element, ParseError>) -> ParseErrorKind {
        r.unwrap_err().kind
    }

    #[test]
    fn evident_element() {
        let a = sugra();
        let e = Element::parse(&a, "x4^2 - 2*x7").unwrap();
        let x4 = Element::named(&a, "x4").unwrap();
        let x7 = Element::named(&a, "x7").unwrap();
        assert_eq!(e, &x4 * &x4 - x7.scale(&Scalar::from_int(2)));
    }

    #[test]
    fn sign_rule_in_parsing() {
        let a = sugra();
        let e = Element::parse(&a, "1/2*psi1*psi2 + 1/2*psi2*psi1").unwrap();
        assert_eq!(e.to_string(), "psi1*psi2");
        let f = Element::parse(&a, "e0*e1 + e1*e0").unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let a = sugra();
        let err = Element::parse(&a, "e0*e0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::SquareZeroExponent("e0".into()));
        assert_eq!(err.offset, 3);
        assert_eq!(kind(Element::parse(&a, "e0^2")), ParseErrorKind::SquareZeroExponent("e0".into()));
        let err = Element::parse(&a, "x4 + foo").unwrap_err();
        assert_eq!(err, ParseError { kind: ParseErrorKind::UnknownGenerator("foo".into()), offset: 5 });
        assert_eq!(kind(Element::parse(&a, "2x4")), ParseErrorKind::Juxtaposition);
        assert_eq!(kind(Element::parse(&a, "x4 x7")), ParseErrorKind::Juxtaposition);
        assert_eq!(kind(Element::parse(&a, "x4 +")), ParseErrorKind::UnexpectedEnd);
        assert_eq!(kind(Element::parse(&a, "")), ParseErrorKind::UnexpectedEnd);
        assert_eq!(kind(Element::parse(&a, "1/0*x4")), ParseErrorKind::ZeroDenominator);
        assert!(matches!(kind(Element::parse(&a, "x4 ) ")), ParseErrorKind::UnexpectedToken(_)));
        assert!(matches!(kind(Element::parse(&a, "x4 # 2")), ParseErrorKind::UnexpectedToken(_)));
        let q = Algebra::new(FieldKind::Rational, vec![Generator::even("x", 2)]).unwrap();
        assert_eq!(kind(Element::parse(&q, "i*x")), ParseErrorKind::ImaginaryUnitOutsideField);
        assert_eq!(err_text(&a, "x4 + foo"), "unknown generator \"foo\" at column 6");
    }

    fn err_text(a: &Arc<Algebra>, s: &str) -> String {
        Element::parse(a, s).unwrap_err().to_string()
    }

    #[test]
    fn whitespace_and_parentheses() {
        let a = sugra();
        let e = Element::parse(&a, " ( 1/2 + 1/3*i ) * x4 -(x7)").unwrap();
        assert_eq!(e.to_string(), "(1/2 + 1/3*i)*x4 - x7");
        assert!(Element::parse(&a, "(e0 + e1)^2").unwrap().is_zero());
        let sq = Element::parse(&a, "(e0 + x4)^2").unwrap();
        assert_eq!(sq.to_string(), "2*e0*x4 + x4^2");
        assert_eq!(Element::parse(&a, "-3").unwrap().to_string(), "-3");
        assert_eq!(Element::parse(&a, "-i*e0").unwrap().to_string(), "-i*e0");
    }

    fn arb_element(a: Arc<Algebra>) -> impl Strategy<Value = Element> {
        let n = a.len();
        proptest::collection::vec(
            (-5i64..=5, 1i64..=4, -3i64..=3, proptest::collection::vec((0..n, 1u32..=2), 0..4)),
            0..5,
        )
        .prop_map(move |terms| {
            let mut acc = Element::zero(&a);
            for (num, den, im, prod) in terms {
                let c = Scalar::from_ratio(num, den) + Scalar::from_int(im) * Scalar::i();
                let prod: Vec<_> =
                    prod.into_iter().map(|(g, e)| (g, if a.generator(g).is_square_zero() { 1 } else { e })).collect();
                acc = acc + Element::from_product(&a, c, &prod);
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e in arb_element(sugra())) {
            let a = e.algebra().clone();
            let printed = e.to_string();
            let back = Element::parse(&a, &printed).unwrap();
            prop_assert_eq!(back, e);
        }
    }
}
