//! Differentials on free bigraded algebras: presentations, morphisms,
//! cocycle checks and windowed cohomology.
//!
//! The differential is extended from generators by the Leibniz rule
//! `d(xy) = d(x) y + (-1)^|x| x d(y)`, where only the Z-degree enters the sign.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{FieldKind, Scalar};
use crate::gca::{Algebra, Element, GcaError, GenId, Generator, Monomial, Parity, ParseError};
use crate::linalg::{EchelonBasis, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DgcaError {
    #[error(transparent)]
    Gca(#[from] GcaError),
    #[error("expected {expected} generator images, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("d({generator}) = {image} is not of degree {degree} and parity {parity}")]
    DegreeMismatch { generator: String, image: String, degree: u32, parity: Parity },
    #[error("d^2({generator}) = {residual} is not zero")]
    NotSquareZero { generator: String, residual: Element },
    #[error("cannot parse {context}: {error}")]
    Parse { context: String, error: ParseError },
    #[error("element {0} is not homogeneous")]
    NotHomogeneous(String),
}

/// A witness that `d^2 != 0`: the first generator with nonzero `d(d g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFailure {
    pub generator: GenId,
    pub residual: Element,
}

/// A semifree DGCA: an [`Algebra`] with one differential image per generator.
#[derive(Clone)]
pub struct Presentation {
    alg: Arc<Algebra>,
    d: Vec<Element>,
    square: Result<(), SquareFailure>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Presentation) -> bool {
        self.alg == other.alg && self.d == other.d
    }
}

impl Eq for Presentation {}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Presentation({}", self.alg)?;
        for (g, dg) in self.alg.generators().iter().zip(&self.d) {
            if !dg.is_zero() {
                write!(f, "; d{} = {}", g.name, dg)?;
            }
        }
        write!(f, ")")
    }
}

impl Presentation {
    /// Check degrees and parities of the generator images and record whether
    /// `d^2 = 0`. Use [`Presentation::verified`] to also require `d^2 = 0`.
    pub fn new(alg: Arc<Algebra>, d: Vec<Element>) -> Result<Presentation, DgcaError> {
        if d.len() != alg.len() {
            return Err(DgcaError::WrongArity { expected: alg.len(), got: d.len() });
        }
        for (g, dg) in alg.generators().iter().zip(&d) {
            if !crate::gca::element_in(dg, &alg) {
                return Err(GcaError::AlgebraMismatch.into());
            }
            if !dg.is_zero() && dg.bidegree() != Some((g.degree + 1, g.parity)) {
                return Err(DgcaError::DegreeMismatch {
                    generator: g.name.clone(),
                    image: dg.to_string(),
                    degree: g.degree + 1,
                    parity: g.parity,
                });
            }
        }
        let mut p = Presentation { alg, d, square: Ok(()) };
        p.square = p.compute_square();
        Ok(p)
    }

    pub fn verified(alg: Arc<Algebra>, d: Vec<Element>) -> Result<Presentation, DgcaError> {
        let p = Presentation::new(alg, d)?;
        match &p.square {
            Ok(()) => Ok(p),
            Err(f) => Err(DgcaError::NotSquareZero {
                generator: p.alg.generator(f.generator).name.clone(),
                residual: f.residual.clone(),
            }),
        }
    }

    /// Build from generator declarations and `(name, expression)` pairs for
    /// the nonzero differentials, requiring `d^2 = 0`.
    pub fn parse(field: FieldKind, gens: Vec<Generator>, diffs: &[(&str, &str)]) -> Result<Presentation, DgcaError> {
        let alg = Algebra::new(field, gens)?;
        let mut d = vec![Element::zero(&alg); alg.len()];
        for &(name, expr) in diffs {
            let id = alg.lookup(name)?;
            d[id] =
                Element::parse(&alg, expr).map_err(|error| DgcaError::Parse { context: format!("d{name}"), error })?;
        }
        Presentation::verified(alg, d)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn generators(&self) -> &[Generator] {
        self.alg.generators()
    }

    /// `d` of the generator `id`.
    pub fn d_gen(&self, id: GenId) -> &Element {
        &self.d[id]
    }

    pub fn differentials(&self) -> &[Element] {
        &self.d
    }

    pub fn gen(&self, name: &str) -> Result<Element, DgcaError> {
        Ok(Element::named(&self.alg, name)?)
    }

    pub fn element(&self, text: &str) -> Result<Element, DgcaError> {
        Element::parse(&self.alg, text).map_err(|error| DgcaError::Parse { context: format!("{text:?}"), error })
    }

    pub fn apply_d(&self, a: &Element) -> Result<Element, DgcaError> {
        if !crate::gca::element_in(a, &self.alg) {
            return Err(GcaError::AlgebraMismatch.into());
        }
        Ok(self.d(a))
    }

    /// The differential; panics if `a` belongs to another algebra.
    pub fn d(&self, a: &Element) -> Element {
        assert!(crate::gca::element_in(a, &self.alg), "element of a different algebra");
        a.odd_derivation(&|id| Some(self.d[id].clone()))
    }

    fn compute_square(&self) -> Result<(), SquareFailure> {
        for (id, dg) in self.d.iter().enumerate() {
            let dd = self.d(dg);
            if !dd.is_zero() {
                return Err(SquareFailure { generator: id, residual: dd });
            }
        }
        Ok(())
    }

    pub fn verify_d_squared(&self) -> Result<(), SquareFailure> {
        self.square.clone()
    }

    pub fn is_verified(&self) -> bool {
        self.square.is_ok()
    }

    pub fn is_cocycle(&self, a: &Element) -> Result<bool, DgcaError> {
        if !a.is_homogeneous() {
            return Err(DgcaError::NotHomogeneous(a.to_string()));
        }
        Ok(self.apply_d(a)?.is_zero())
    }

    /// The presentation with one more generator appended.
    pub fn extended(&self, g: Generator, dg: Element) -> Result<Presentation, DgcaError> {
        let alg = self.alg.extended(g)?;
        let n = self.alg.len();
        let mut d: Vec<Element> = self.d.iter().map(|e| e.relabel(&alg, |i| i)).collect();
        d.push(dg.relabel(&alg, |i| i));
        debug_assert_eq!(d.len(), n + 1);
        Presentation::new(alg, d)
    }

    /// Matrix of `d` from `C^degree` to `C^(degree+1)` restricted to one parity.
    pub fn differential_matrix(&self, degree: u32, parity: Parity) -> (Vec<Monomial>, Vec<Monomial>, Matrix) {
        let src = self.alg.monomial_basis(degree, Some(parity));
        let tgt = self.alg.monomial_basis(degree + 1, Some(parity));
        let index: BTreeMap<&Monomial, usize> = tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for (j, mono) in src.iter().enumerate() {
            let image = self.d(&Element::from_monomial(&self.alg, mono.clone(), Scalar::one()));
            for (t, c) in image.terms() {
                m.set(index[t], j, c.clone());
            }
        }
        (src, tgt, m)
    }

    /// Cohomology in degrees `0..=max_degree`. The top degree uses the full
    /// differential into `max_degree + 1`, so every reported dimension is exact.
    pub fn cohomology(&self, max_degree: u32) -> CohomologyReport {
        let mut dims = vec![0; max_degree as usize + 1];
        let mut reps = vec![Vec::new(); max_degree as usize + 1];
        for parity in [Parity::Even, Parity::Odd] {
            // Image of d from the previous degree, in the basis of the current one.
            let mut prev_image: Vec<Vec<Scalar>> = Vec::new();
            for n in 0..=max_degree {
                let (src, tgt, m) = self.differential_matrix(n, parity);
                let mut span = EchelonBasis::new();
                for v in &prev_image {
                    span.insert(v);
                }
                for v in m.kernel() {
                    if span.insert(&v) {
                        dims[n as usize] += 1;
                        reps[n as usize].push(vector_element(&self.alg, &src, &v));
                    }
                }
                prev_image = (0..m.cols()).map(|j| m.column(j)).collect();
                debug_assert!(prev_image.iter().all(|c| c.len() == tgt.len()));
            }
        }
        CohomologyReport { max_degree, dims, representatives: reps }
    }
}

pub(crate) fn vector_element(alg: &Arc<Algebra>, basis: &[Monomial], v: &[Scalar]) -> Element {
    let mut e = Element::zero(alg);
    for (m, c) in basis.iter().zip(v) {
        if !c.is_zero() {
            e = e + Element::from_monomial(alg, m.clone(), c.clone());
        }
    }
    e
}

/// Cohomology dimensions and representative cocycles in a degree window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub max_degree: u32,
    pub dims: Vec<usize>,
    pub representatives: Vec<Vec<Element>>,
}

impl CohomologyReport {
    pub fn window_note(&self) -> String {
        format!("degrees 0..={}; nothing is claimed above degree {}", self.max_degree, self.max_degree)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismFailure {
    Degree { generator: String, image: Element },
    Differential { generator: String, image_of_d: Element, d_of_image: Element },
}

impl fmt::Display for MorphismFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismFailure::Degree { generator, image } => {
                write!(f, "image {image} of {generator} has the wrong bidegree")
            }
            MorphismFailure::Differential { generator, image_of_d, d_of_image } => {
                write!(f, "f(d{generator}) = {image_of_d} but d(f({generator})) = {d_of_image}")
            }
        }
    }
}

/// A map of presentations given by generator images, `CE(source) -> CE(target)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Presentation,
    target: Presentation,
    images: Vec<Element>,
}

impl Morphism {
    pub fn new(source: Presentation, target: Presentation, images: Vec<Element>) -> Result<Morphism, DgcaError> {
        if images.len() != source.alg.len() {
            return Err(DgcaError::WrongArity { expected: source.alg.len(), got: images.len() });
        }
        if images.iter().any(|e| !crate::gca::element_in(e, &target.alg)) {
            return Err(GcaError::AlgebraMismatch.into());
        }
        Ok(Morphism { source, target, images })
    }

    /// Images given as `(source generator, target expression)`; unlisted
    /// generators map to zero.
    pub fn parse(source: &Presentation, target: &Presentation, images: &[(&str, &str)]) -> Result<Morphism, DgcaError> {
        let mut v = vec![Element::zero(&target.alg); source.alg.len()];
        for &(name, expr) in images {
            v[source.alg.lookup(name)?] = target.element(expr)?;
        }
        Morphism::new(source.clone(), target.clone(), v)
    }

    pub fn identity(p: &Presentation) -> Morphism {
        let images = (0..p.alg.len()).map(|i| Element::generator(&p.alg, i)).collect();
        Morphism { source: p.clone(), target: p.clone(), images }
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, id: GenId) -> &Element {
        &self.images[id]
    }

    pub fn apply(&self, a: &Element) -> Element {
        assert!(crate::gca::element_in(a, &self.source.alg), "element of a different algebra");
        a.substitute(&self.target.alg, &self.images)
    }

    /// `other ∘ self`, i.e. first `self`, then `other`.
    pub fn then(&self, other: &Morphism) -> Result<Morphism, DgcaError> {
        if self.target != other.source {
            return Err(GcaError::AlgebraMismatch.into());
        }
        let images = self.images.iter().map(|e| other.apply(e)).collect();
        Morphism::new(self.source.clone(), other.target.clone(), images)
    }

    pub fn verify(&self) -> Result<(), MorphismFailure> {
        for (id, g) in self.source.generators().iter().enumerate() {
            let img = &self.images[id];
            if !img.is_zero() && img.bidegree() != Some((g.degree, g.parity)) {
                return Err(MorphismFailure::Degree { generator: g.name.clone(), image: img.clone() });
            }
            let lhs = self.apply(self.source.d_gen(id));
            let rhs = self.target.d(img);
            if lhs != rhs {
                return Err(MorphismFailure::Differential {
                    generator: g.name.clone(),
                    image_of_d: lhs,
                    d_of_image: rhs,
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls4() -> Presentation {
        Presentation::parse(
            FieldKind::Rational,
            vec![Generator::even("x4", 4), Generator::even("x7", 7)],
            &[("x7", "x4^2")],
        )
        .unwrap()
    }

    fn btfold() -> Presentation {
        Presentation::parse(
            FieldKind::Rational,
            vec![Generator::even("x2c", 2), Generator::even("x2t", 2), Generator::even("y3", 3)],
            &[("y3", "x2c*x2t")],
        )
        .unwrap()
    }

    fn cyc_b2u1() -> Presentation {
        Presentation::parse(
            FieldKind::Rational,
            vec![Generator::even("x3", 3), Generator::even("y2", 2), Generator::even("z2", 2)],
            &[("x3", "z2*y2")],
        )
        .unwrap()
    }

    #[test]
    fn apply_d_examples() {
        let p = ls4();
        assert_eq!(p.d(&p.gen("x7").unwrap()).to_string(), "x4^2");
        assert_eq!(p.d(&p.element("x4*x7").unwrap()).to_string(), "x4^3");
        let b = btfold();
        assert_eq!(b.d(&b.gen("y3").unwrap()).to_string(), "x2c*x2t");
    }

    #[test]
    fn d_squared_examples() {
        assert!(ls4().verify_d_squared().is_ok());
        let gens = || vec![Generator::even("a2", 2), Generator::even("b3", 3), Generator::even("c4", 4)];
        // A degree-violating assignment is rejected before d^2 is considered.
        let bad = Presentation::parse(FieldKind::Rational, gens(), &[("a2", "c4")]);
        assert!(matches!(bad, Err(DgcaError::DegreeMismatch { ref generator, .. }) if generator == "a2"));
        // Degree-correct but d^2 a2 = a2^2.
        let alg = Algebra::new(FieldKind::Rational, gens()).unwrap();
        let d = vec![Element::parse(&alg, "b3").unwrap(), Element::parse(&alg, "a2^2").unwrap(), Element::zero(&alg)];
        let p = Presentation::new(alg, d).unwrap();
        let fail = p.verify_d_squared().unwrap_err();
        assert_eq!(fail.generator, 0);
        assert_eq!(fail.residual.to_string(), "a2^2");
    }

    #[test]
    fn cocycles() {
        let p = ls4();
        assert!(p.is_cocycle(&p.gen("x4").unwrap()).unwrap());
        assert!(!p.is_cocycle(&p.gen("x7").unwrap()).unwrap());
        let inhom = p.element("x4 + x7").unwrap();
        assert!(matches!(p.is_cocycle(&inhom), Err(DgcaError::NotHomogeneous(_))));
        let p1 = Presentation::parse(
            FieldKind::Rational,
            vec![
                Generator::even("y1c", 1),
                Generator::even("x2c", 2),
                Generator::even("x2t", 2),
                Generator::even("y3", 3),
            ],
            &[("y1c", "x2c"), ("y3", "x2c*x2t")],
        )
        .unwrap();
        assert!(p1.is_cocycle(&p1.element("y3 - y1c*x2t").unwrap()).unwrap());
    }

    #[test]
    fn phi1_is_a_morphism() {
        let (src, tgt) = (cyc_b2u1(), btfold());
        let phi = Morphism::parse(&src, &tgt, &[("x3", "y3"), ("y2", "x2t"), ("z2", "x2c")]).unwrap();
        assert_eq!(phi.verify(), Ok(()));
        let bad = Morphism::parse(&src, &tgt, &[("x3", "y3"), ("y2", "x2c"), ("z2", "x2c")]).unwrap();
        match bad.verify() {
            Err(MorphismFailure::Differential { generator, .. }) => assert_eq!(generator, "x3"),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(Morphism::identity(&tgt).verify(), Ok(()));
    }

    #[test]
    fn cohomology_examples() {
        let r = ls4().cohomology(11);
        assert_eq!(r.dims, vec![1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0]);
        let t1 = Presentation::parse(FieldKind::Rational, vec![Generator::even("t1", 1)], &[]).unwrap();
        assert_eq!(t1.cohomology(1).dims, vec![1, 1]);
        let contractible = Presentation::parse(
            FieldKind::Rational,
            vec![Generator::even("y1", 1), Generator::even("x2", 2)],
            &[("y1", "x2")],
        )
        .unwrap();
        assert_eq!(contractible.cohomology(2).dims, vec![1, 0, 0]);
        let b = btfold().cohomology(3);
        assert_eq!(b.dims, vec![1, 0, 2, 0]);
        for (n, reps) in b.representatives.iter().enumerate() {
            for r in reps {
                assert_eq!(r.degree().unwrap(), n as u32);
                assert!(btfold().d(r).is_zero());
            }
        }
    }
}
