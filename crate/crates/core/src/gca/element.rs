use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::monomial::Monomial;
use super::{Algebra, GcaError, GenId, Parity};
use crate::field::Scalar;

/// A finite linear combination of canonical monomials with nonzero exact
/// coefficients, tied to its algebra.
#[derive(Clone)]
pub struct Element {
    alg: Arc<Algebra>,
    terms: BTreeMap<Monomial, Scalar>,
}

pub(crate) fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Element {
    fn eq(&self, other: &Element) -> bool {
        same_algebra(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero(alg: &Arc<Algebra>) -> Element {
        Element { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &Arc<Algebra>) -> Element {
        Element::scalar(alg, Scalar::one())
    }

    pub fn scalar(alg: &Arc<Algebra>, c: Scalar) -> Element {
        Element::from_monomial(alg, Monomial::one(), c)
    }

    pub fn from_monomial(alg: &Arc<Algebra>, m: Monomial, c: Scalar) -> Element {
        let mut e = Element::zero(alg);
        e.add_term(m, c);
        e
    }

    pub fn generator(alg: &Arc<Algebra>, id: GenId) -> Element {
        Element::from_monomial(alg, Monomial::generator(alg, id), Scalar::one())
    }

    pub fn named(alg: &Arc<Algebra>, name: &str) -> Result<Element, GcaError> {
        Ok(Element::generator(alg, alg.lookup(name)?))
    }

    /// The signed canonical form of an ordered product of generator powers.
    pub fn from_product(alg: &Arc<Algebra>, c: Scalar, product: &[(GenId, u32)]) -> Element {
        match Monomial::from_product(alg, product) {
            Some((m, neg)) => Element::from_monomial(alg, m, if neg { -c } else { c }),
            None => Element::zero(alg),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Monomial, &Scalar)> + DoubleEndedIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Scalar)> {
        self.terms.into_iter()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Same as [`Element::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add_signed(&mut self, m: Monomial, c: &Scalar, negative: bool) {
        self.add_term(m, if negative { -c } else { c.clone() });
    }

    fn check(&self, other: &Element) -> Result<(), GcaError> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(GcaError::AlgebraMismatch)
        }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element, GcaError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element, GcaError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Element) -> Result<Element, GcaError> {
        self.check(other)?;
        let mut out = Element::zero(&self.alg);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, neg)) = ma.mul(mb, &self.alg) {
                    out.add_signed(m, &(ca * cb), neg);
                }
            }
        }
        Ok(out)
    }

    /// `self * c * m` for a single monomial `m` of this algebra.
    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Element {
        let mut out = Element::zero(&self.alg);
        for (ma, ca) in &self.terms {
            if let Some((p, neg)) = ma.mul(m, &self.alg) {
                out.add_signed(p, &(ca * c), neg);
            }
        }
        out
    }

    /// `c * m * self` for a single monomial `m` of this algebra.
    pub fn monomial_mul(&self, m: &Monomial, c: &Scalar) -> Element {
        let mut out = Element::zero(&self.alg);
        for (mb, cb) in &self.terms {
            if let Some((p, neg)) = m.mul(mb, &self.alg) {
                out.add_signed(p, &(c * cb), neg);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero(&self.alg);
        }
        Element { alg: self.alg.clone(), terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Element {
        let mut out = Element::one(&self.alg);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Common `(degree, parity)` of all terms, or `None` for a zero or
    /// inhomogeneous element.
    pub fn bidegree(&self) -> Option<(u32, Parity)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let bd = (first.degree(), Parity::from_bit(first.parity_bit()));
        it.all(|m| m.degree() == bd.0 && m.parity_bit() == bd.1.bit()).then_some(bd)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.bidegree().is_some()
    }

    /// The ℤ-degree of a homogeneous nonzero element.
    pub fn degree(&self) -> Result<u32, GcaError> {
        self.bidegree().map(|(d, _)| d).ok_or(GcaError::NotHomogeneous)
    }

    /// True when every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The part of this element in ℤ-degree `degree`.
    pub fn component(&self, degree: u32) -> Element {
        Element {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn mentions(&self, id: GenId) -> bool {
        self.terms.keys().any(|m| m.contains(id))
    }

    /// Apply the algebra morphism determined by generator images, which all
    /// live in `target`.
    pub fn substitute(&self, target: &Arc<Algebra>, images: &[Element]) -> Element {
        let mut cache: BTreeMap<(GenId, u32), Element> = BTreeMap::new();
        let mut out = Element::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Element::scalar(target, c.clone());
            for (id, e) in m.factors() {
                let p = cache.entry((id, e)).or_insert_with(|| images[id].pow(e));
                acc = &acc * &*p;
                if acc.is_zero() {
                    break;
                }
            }
            for (mm, cc) in acc.terms {
                out.add_term(mm, cc);
            }
        }
        out
    }

    /// Rename generators into another algebra by an id map. Factors are
    /// re-sorted with the Koszul sign.
    pub fn relabel(&self, target: &Arc<Algebra>, map: impl Fn(GenId) -> GenId) -> Element {
        let mut out = Element::zero(target);
        let mut buf = Vec::new();
        for (m, c) in &self.terms {
            buf.clear();
            buf.extend(m.factors().map(|(id, e)| (map(id), e)));
            if let Some((mm, neg)) = Monomial::from_product(target, &buf) {
                out.add_signed(mm, c, neg);
            }
        }
        out
    }

    /// Extend `images` (one optional element per generator) to the unique
    /// derivation of odd ℤ-degree on this algebra. Generators without an
    /// image are sent to zero. All images must live in this algebra.
    ///
    /// The sign passing a prefix of degree `k` is `(-1)^k`; for polynomial
    /// generators `D(x^e) = e * D(x) * x^(e-1)`.
    pub fn odd_derivation(&self, images: &dyn Fn(GenId) -> Option<Element>) -> Element {
        let mut out = Element::zero(&self.alg);
        let mut cache: BTreeMap<GenId, Option<Element>> = BTreeMap::new();
        for (m, c) in &self.terms {
            for k in 0..m.factor_len() {
                let (prefix, id, e, _) = m.split_at(&self.alg, k);
                let img = cache.entry(id).or_insert_with(|| images(id));
                let Some(img) = img else { continue };
                if img.is_zero() {
                    continue;
                }
                let rest = m.lower_at(&self.alg, k).factors_from(&self.alg, &prefix);
                let mut coeff = c * &Scalar::from_int(e as i64);
                if prefix.degree() % 2 == 1 {
                    coeff = -coeff;
                }
                let middle = img.monomial_mul(&prefix, &Scalar::one());
                for (mm, cc) in middle.mul_monomial(&rest, &coeff).terms {
                    out.add_term(mm, cc);
                }
            }
        }
        out
    }
}

impl Monomial {
    /// The factors of `self` not in `prefix`, assuming `prefix` is an initial
    /// segment of `self`.
    fn factors_from(&self, alg: &Algebra, prefix: &Monomial) -> Monomial {
        let skip = prefix.factor_len();
        Monomial::from_sorted(alg, self.factors().skip(skip).map(|(id, e)| (id as u32, e)))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                self.$checked(rhs).expect("element operands belong to different algebras")
            }
        }
        impl $tr<Element> for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Element> for Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                (&self).$method(rhs)
            }
        }
        impl $tr<Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { alg: self.alg.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (negative, magnitude) =
                if !c.is_compound() && c.to_string().starts_with('-') { (true, -c) } else { (false, c.clone()) };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let coeff = if magnitude.is_compound() { format!("({magnitude})") } else { magnitude.to_string() };
            if m.is_one() {
                f.write_str(&coeff)?;
            } else if magnitude.is_one() {
                write!(f, "{}", m.display(&self.alg))?;
            } else {
                write!(f, "{coeff}*{}", m.display(&self.alg))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}
