//! Free (ℤ, ℤ/2)-bigraded commutative algebras on named generators.
//!
//! For homogeneous `x`, `y` the commutation rule is
//! `x y = (-1)^(|x||y| + p(x)p(y)) y x`, where `|x|` is the cohomological
//! degree and `p(x)` the super parity. A generator whose degree plus parity
//! bit is odd squares to zero ("square-zero type"); all others generate a
//! polynomial ring ("polynomial type").

mod element;
mod monomial;
mod parse;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::FieldKind;

pub use element::Element;

pub(crate) fn element_in(e: &Element, alg: &Arc<Algebra>) -> bool {
    element::same_algebra(e.algebra(), alg)
}
pub use monomial::Monomial;
pub use parse::{ParseError, ParseErrorKind};

/// Dense generator index, `0..n` in declaration order.
pub type GenId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(bit: u32) -> Parity {
        if bit.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }

    pub fn from_name(name: &str) -> Option<Parity> {
        match name {
            "even" => Some(Parity::Even),
            "odd" => Some(Parity::Odd),
            _ => None,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub parity: Parity,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32, parity: Parity) -> Generator {
        Generator { name: name.into(), degree, parity }
    }

    pub fn even(name: impl Into<String>, degree: u32) -> Generator {
        Generator::new(name, degree, Parity::Even)
    }

    pub fn odd(name: impl Into<String>, degree: u32) -> Generator {
        Generator::new(name, degree, Parity::Odd)
    }

    pub fn is_square_zero(&self) -> bool {
        (self.degree + self.parity.bit()) % 2 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GcaError {
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
    #[error("generator {0:?} has degree 0; generators must have degree >= 1")]
    DegreeZero(String),
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("coefficient {0} is not in the field {1:?}")]
    CoefficientOutsideField(String, FieldKind),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
}

/// The underlying graded algebra of a presentation: an ordered generator list
/// plus a coefficient field.
#[derive(Debug, Clone)]
pub struct Algebra {
    field: FieldKind,
    gens: Vec<Generator>,
    index: HashMap<String, GenId>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Algebra) -> bool {
        self.field == other.field && self.gens == other.gens
    }
}

impl Eq for Algebra {}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Algebra {
    pub fn new(field: FieldKind, gens: Vec<Generator>) -> Result<Arc<Algebra>, GcaError> {
        let mut index = HashMap::with_capacity(gens.len());
        for (id, g) in gens.iter().enumerate() {
            if !valid_name(&g.name) || (field == FieldKind::Gaussian && g.name == "i") {
                return Err(GcaError::InvalidName(g.name.clone()));
            }
            if g.degree == 0 {
                return Err(GcaError::DegreeZero(g.name.clone()));
            }
            if index.insert(g.name.clone(), id).is_some() {
                return Err(GcaError::DuplicateName(g.name.clone()));
            }
        }
        Ok(Arc::new(Algebra { field, gens, index }))
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.gens[id]
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn id_of(&self, name: &str) -> Option<GenId> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<GenId, GcaError> {
        self.id_of(name).ok_or_else(|| GcaError::UnknownGenerator(name.to_string()))
    }

    /// Sign exponent (mod 2) for moving `x^ex` past `y^ey`.
    #[inline]
    pub(crate) fn swap_weight(&self, x: GenId, ex: u32, y: GenId, ey: u32) -> u32 {
        let (gx, gy) = (&self.gens[x], &self.gens[y]);
        (ex * ey * (gx.degree * gy.degree + gx.parity.bit() * gy.parity.bit())) & 1
    }

    /// The same algebra with a new generator appended.
    pub fn extended(&self, g: Generator) -> Result<Arc<Algebra>, GcaError> {
        let mut gens = self.gens.clone();
        gens.push(g);
        Algebra::new(self.field, gens)
    }

    /// All canonical monomials of the given degree (and parity, if given),
    /// in the canonical monomial order.
    pub fn monomial_basis(&self, degree: u32, parity: Option<Parity>) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current: Vec<(u32, u32)> = Vec::new();
        self.enumerate(0, degree, &mut current, &mut out);
        if let Some(p) = parity {
            out.retain(|m| m.parity(self) == p);
        }
        out
    }

    fn enumerate(&self, next: GenId, remaining: u32, current: &mut Vec<(u32, u32)>, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            out.push(Monomial::from_sorted(self, current.iter().copied()));
            return;
        }
        if next == self.gens.len() {
            return;
        }
        let g = &self.gens[next];
        let max = if g.is_square_zero() { 1 } else { remaining / g.degree };
        for e in (0..=max.min(remaining / g.degree)).rev() {
            if e > 0 {
                current.push((next as u32, e));
            }
            self.enumerate(next + 1, remaining - e * g.degree, current, out);
            if e > 0 {
                current.pop();
            }
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.field.tag())?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:({},{})", g.name, g.degree, g.parity)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls4() -> Arc<Algebra> {
        Algebra::new(FieldKind::Rational, vec![Generator::even("x4", 4), Generator::even("x7", 7)]).unwrap()
    }

    fn names(alg: &Algebra, basis: &[Monomial]) -> Vec<String> {
        basis.iter().map(|m| m.display(alg).to_string()).collect()
    }

    #[test]
    fn square_zero_classification() {
        assert!(Generator::even("e", 1).is_square_zero());
        assert!(!Generator::odd("psi", 1).is_square_zero());
        assert!(!Generator::even("x", 4).is_square_zero());
        assert!(Generator::odd("w", 2).is_square_zero());
    }

    #[test]
    fn basis_of_sphere_model() {
        let alg = ls4();
        assert_eq!(names(&alg, &alg.monomial_basis(8, None)), ["x4^2"]);
        assert_eq!(names(&alg, &alg.monomial_basis(11, None)), ["x4*x7"]);
        assert!(alg.monomial_basis(1, None).is_empty());
        assert_eq!(names(&alg, &alg.monomial_basis(0, None)), ["1"]);
    }

    #[test]
    fn basis_order_prefers_earlier_generators() {
        let alg = Algebra::new(
            FieldKind::Rational,
            vec![Generator::even("a", 2), Generator::even("b", 2), Generator::even("y", 3)],
        )
        .unwrap();
        assert_eq!(names(&alg, &alg.monomial_basis(4, None)), ["a^2", "a*b", "b^2"]);
    }

    #[test]
    fn invalid_algebras_are_rejected() {
        let dup = Algebra::new(FieldKind::Rational, vec![Generator::even("x", 2), Generator::even("x", 3)]);
        assert_eq!(dup.unwrap_err(), GcaError::DuplicateName("x".into()));
        let zero = Algebra::new(FieldKind::Rational, vec![Generator::even("t", 0)]);
        assert_eq!(zero.unwrap_err(), GcaError::DegreeZero("t".into()));
        let imag = Algebra::new(FieldKind::Gaussian, vec![Generator::even("i", 2)]);
        assert!(matches!(imag, Err(GcaError::InvalidName(_))));
        assert!(Algebra::new(FieldKind::Rational, vec![Generator::even("2x", 2)]).is_err());
    }

    #[test]
    fn parity_filter() {
        let alg = Algebra::new(
            FieldKind::Rational,
            vec![Generator::even("e", 1), Generator::odd("p", 1), Generator::odd("q", 1)],
        )
        .unwrap();
        let even = alg.monomial_basis(2, Some(Parity::Even));
        let odd = alg.monomial_basis(2, Some(Parity::Odd));
        assert_eq!(names(&alg, &even), ["p^2", "p*q", "q^2"]);
        assert_eq!(names(&alg, &odd), ["e*p", "e*q"]);
    }
}
