//! Exact coefficient arithmetic.
//!
//! Every coefficient in the engine is a [`Scalar`], an element of the Gaussian
//! rationals ℚ(i) stored as a pair of reduced big rationals. The rational field
//! ℚ is the subfield with zero imaginary part; algebras carry a [`FieldKind`]
//! tag saying which of the two fields their coefficients live in.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed scalar literal {0:?}")]
    Malformed(String),
}

/// The coefficient field of an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    /// The rationals ℚ.
    Rational,
    /// The Gaussian rationals ℚ(i).
    Gaussian,
}

impl FieldKind {
    pub fn contains(self, s: &Scalar) -> bool {
        match self {
            FieldKind::Rational => s.is_real(),
            FieldKind::Gaussian => true,
        }
    }

    /// Tag used by the algebra file format.
    pub fn tag(self) -> &'static str {
        match self {
            FieldKind::Rational => "Q",
            FieldKind::Gaussian => "Qi",
        }
    }

    pub fn from_tag(tag: &str) -> Option<FieldKind> {
        match tag {
            "Q" => Some(FieldKind::Rational),
            "Qi" => Some(FieldKind::Gaussian),
            _ => None,
        }
    }
}

/// An element `re + im*i` of ℚ(i).
///
/// Both parts are kept as reduced fractions with positive denominators, so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Scalar {
        Scalar { re, im }
    }

    pub fn zero() -> Scalar {
        Scalar { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn i() -> Scalar {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    pub fn from_ratio(num: i64, den: i64) -> Scalar {
        Scalar { re: BigRational::new(BigInt::from(num), BigInt::from(den)), im: BigRational::zero() }
    }

    pub fn from_rational(re: BigRational) -> Scalar {
        Scalar { re, im: BigRational::zero() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True iff the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar { re: self.re.clone(), im: -&self.im }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        if rhs.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if rhs.im.is_zero() {
            return Ok(Scalar { re: &self.re / &rhs.re, im: &self.im / &rhs.re });
        }
        let norm = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        let num = self * &rhs.conj();
        Ok(Scalar { re: num.re / &norm, im: num.im / norm })
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        Scalar::one().checked_div(self)
    }

    /// A crude size measure (total bit length of all numerators and
    /// denominators), used to choose cheap pivots.
    pub fn height(&self) -> u64 {
        let bits = |q: &BigRational| q.numer().bits() + q.denom().bits();
        bits(&self.re) + if self.im.is_zero() { 0 } else { bits(&self.im) }
    }

    /// Whether printing this scalar as a product factor needs parentheses.
    pub(crate) fn is_compound(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Scalar {
        Scalar::from_rational(q)
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Writes `q*i`, `i` or `-i`.
fn fmt_imag(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_one() {
        write!(f, "i")
    } else if (-q).is_one() {
        write!(f, "-i")
    } else {
        fmt_rational(q, f)?;
        write!(f, "*i")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rational(&self.re, f),
            (true, false) => fmt_imag(&self.im, f),
            (false, false) => {
                fmt_rational(&self.re, f)?;
                if self.im.is_negative() {
                    write!(f, " - ")?;
                    fmt_imag(&-&self.im, f)
                } else {
                    write!(f, " + ")?;
                    fmt_imag(&self.im, f)
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (n.trim(), d.trim());
            let body = n.strip_prefix('-').unwrap_or(n);
            if !digits(body) || !digits(d) {
                return None;
            }
            let den: BigInt = d.parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, den))
        }
        None => {
            let body = s.strip_prefix('-').unwrap_or(s);
            if !digits(body) {
                return None;
            }
            Some(BigRational::from_integer(s.parse().ok()?))
        }
    }
}

/// One signed summand of a scalar literal: either real or imaginary.
fn parse_part(s: &str, negative: bool) -> Option<Scalar> {
    let s = s.trim();
    let sign = |q: BigRational| if negative { -q } else { q };
    if s == "i" {
        return Some(Scalar { re: BigRational::zero(), im: sign(BigRational::one()) });
    }
    if let Some(coef) = s.strip_suffix("*i") {
        let q = parse_rational(coef)?;
        return Some(Scalar { re: BigRational::zero(), im: sign(q) });
    }
    Some(Scalar::from_rational(sign(parse_rational(s)?)))
}

impl FromStr for Scalar {
    type Err = FieldError;

    /// Parses `p/q`, `p/q*i`, `i`, and `p/q + r/s*i` (either sign).
    fn from_str(text: &str) -> Result<Scalar, FieldError> {
        let malformed = || FieldError::Malformed(text.to_string());
        let s = text.trim();
        let (first_neg, rest) = match s.strip_prefix('-') {
            Some(r) => (true, r.trim_start()),
            None => (false, s),
        };
        // Split at a binary '+' or '-' separating the real and imaginary part.
        let split = rest.char_indices().find(|&(_, c)| c == '+' || c == '-');
        let value = match split {
            None => parse_part(rest, first_neg).ok_or_else(malformed)?,
            Some((pos, op)) => {
                let a = parse_part(&rest[..pos], first_neg).ok_or_else(malformed)?;
                let b = parse_part(&rest[pos + 1..], op == '-').ok_or_else(malformed)?;
                if !a.im.is_zero() || !b.re.is_zero() {
                    return Err(malformed());
                }
                a + b
            }
        };
        Ok(value)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -&self.re, im: -&self.im }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => Scalar::from_rational(&self.re * &rhs.re),
            (true, false) => Scalar { re: &self.re * &rhs.re, im: &self.re * &rhs.im },
            (false, true) => Scalar { re: &self.re * &rhs.re, im: &self.im * &rhs.re },
            (false, false) => {
                Scalar { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
            }
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for a fallible
/// variant.
impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division by zero")
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&s("1/2") + &s("1/3"), s("5/6"));
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn gaussian_quotient() {
        let q = s("1 + i").checked_div(&s("1 - i")).unwrap();
        assert_eq!(q, Scalar::i());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(s("3").checked_div(&Scalar::zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn reality() {
        assert!(s("3/4").is_real());
        assert!(!Scalar::i().is_real());
        assert!((&Scalar::i() - &Scalar::i()).is_real());
    }

    #[test]
    fn canonical_form() {
        assert_eq!(s("2/4"), s("1/2"));
        assert_eq!(s("-3/6"), s("-1/2"));
        assert_eq!(s("6/3").to_string(), "2");
    }

    #[test]
    fn printing_is_bit_exact() {
        for text in ["0", "-7", "5/6", "i", "-i", "3/4*i", "1/2 + 1/3*i", "-1/2 - i", "2 + i"] {
            assert_eq!(s(text).to_string(), text);
        }
    }

    #[test]
    fn malformed_literals_are_rejected() {
        for text in ["", "1/0", "x", "1/2 + 3", "i + i", "1 + + 2", "2i"] {
            assert!(text.parse::<Scalar>().is_err(), "{text:?}");
        }
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-20i64..20, 1i64..12, -20i64..20, 1i64..12).prop_map(|(a, b, c, d)| {
            Scalar::new(BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()))
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
            }
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn print_parse_round_trip(a in arb_scalar()) {
            prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
        }
    }
}
