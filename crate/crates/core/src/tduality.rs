//! T-duality configurations and the Fourier-Mukai data they determine.
//!
//! A configuration on `g` is a pair of 2-cocycles `c1`, `c2` with a degree-3
//! element `h3` such that `d h3 = c1 c2`; equivalently a morphism
//! `CE(btfold) -> CE(g)`. From it one gets the two circle extensions
//! `g1 = g[e1]` (`d e1 = c1`) and `g2 = g[f1]` (`d f1 = c2`), the twists
//! `a1 = h3 - e1 c2` and `a2 = h3 - c1 f1`, and the kernel `b = e1 f1` on the
//! fiber product.

use thiserror::Error;

use crate::constructions::{extension_fiber_product, ConstructionError, ExtensionFiberProduct};
use crate::dgca::{DgcaError, Morphism, Presentation};
use crate::field::FieldKind;
use crate::gca::{element_in, Element, Generator, Parity};
use crate::twisted::{FmQuintuple, TwistSpec, TwistedError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TDualityError {
    #[error("not closed: first (d c1 = {residual})")]
    FirstNotClosed { residual: Element },
    #[error("not closed: second (d c2 = {residual})")]
    SecondNotClosed { residual: Element },
    #[error("dh3 mismatch: residual = {residual}")]
    H3Mismatch { residual: Element },
    #[error("{which} must be a homogeneous element of bidegree ({degree}, even), got {element}")]
    Bidegree { which: &'static str, degree: u32, element: String },
    #[error("configuration elements must belong to the base presentation")]
    WrongAlgebra,
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Twisted(#[from] TwistedError),
    #[error(transparent)]
    Dgca(#[from] DgcaError),
}

/// The T-fold algebra `R[x2c, x2t, y3]` with `d y3 = x2c x2t`.
pub fn btfold() -> Presentation {
    Presentation::parse(
        FieldKind::Rational,
        vec![Generator::even("x2c", 2), Generator::even("x2t", 2), Generator::even("y3", 3)],
        &[("y3", "x2c*x2t")],
    )
    .expect("btfold is a valid presentation")
}

/// Sullivan model of the `n`-sphere: `R[x_n]` for odd `n`, and
/// `R[x_n, x_{2n-1}]` with `d x_{2n-1} = x_n^2` for even `n`. The circle is
/// `R[t1]`.
pub fn sphere_model(n: u32) -> Result<Presentation, DgcaError> {
    if n == 0 {
        return Err(DgcaError::Gca(crate::gca::GcaError::DegreeZero("x0".into())));
    }
    if n == 1 {
        return Presentation::parse(FieldKind::Rational, vec![Generator::even("t1", 1)], &[]);
    }
    let x = format!("x{n}");
    if n % 2 == 1 {
        return Presentation::parse(FieldKind::Rational, vec![Generator::even(&x, n)], &[]);
    }
    let top = format!("x{}", 2 * n - 1);
    let square = format!("{x}^2");
    Presentation::parse(
        FieldKind::Rational,
        vec![Generator::even(&x, n), Generator::even(&top, 2 * n - 1)],
        &[(top.as_str(), square.as_str())],
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TDualityConfig {
    base: Presentation,
    c1: Element,
    c2: Element,
    h3: Element,
}

fn check_bidegree(which: &'static str, e: &Element, degree: u32) -> Result<(), TDualityError> {
    if e.is_zero() || e.bidegree() == Some((degree, Parity::Even)) {
        Ok(())
    } else {
        Err(TDualityError::Bidegree { which, degree, element: e.to_string() })
    }
}

pub fn validate_config(
    base: &Presentation,
    c1: &Element,
    c2: &Element,
    h3: &Element,
) -> Result<TDualityConfig, TDualityError> {
    if ![c1, c2, h3].iter().all(|e| element_in(e, base.algebra())) {
        return Err(TDualityError::WrongAlgebra);
    }
    check_bidegree("first", c1, 2)?;
    check_bidegree("second", c2, 2)?;
    check_bidegree("h3", h3, 3)?;
    let d1 = base.d(c1);
    if !d1.is_zero() {
        return Err(TDualityError::FirstNotClosed { residual: d1 });
    }
    let d2 = base.d(c2);
    if !d2.is_zero() {
        return Err(TDualityError::SecondNotClosed { residual: d2 });
    }
    let residual = base.d(h3) - c1 * c2;
    if !residual.is_zero() {
        return Err(TDualityError::H3Mismatch { residual });
    }
    Ok(TDualityConfig { base: base.clone(), c1: c1.clone(), c2: c2.clone(), h3: h3.clone() })
}

/// The derived data of a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TDualityQuintuple {
    config: TDualityConfig,
    fiber_product: ExtensionFiberProduct,
    quintuple: FmQuintuple,
}

impl TDualityConfig {
    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn first(&self) -> &Element {
        &self.c1
    }

    pub fn second(&self) -> &Element {
        &self.c2
    }

    pub fn h3(&self) -> &Element {
        &self.h3
    }

    /// The classifying morphism `CE(btfold) -> CE(g)`.
    pub fn classifying_morphism(&self) -> Morphism {
        Morphism::new(btfold(), self.base.clone(), vec![self.c1.clone(), self.c2.clone(), self.h3.clone()])
            .expect("validated configuration")
    }

    /// Builds both extensions (fiber generators named `names.0`, `names.1`),
    /// the twists and the kernel, re-verifying every relation.
    pub fn derive_quintuple(&self, names: (&str, &str)) -> Result<TDualityQuintuple, TDualityError> {
        let fp = extension_fiber_product(&self.base, &self.c1, &self.c2, names)?;
        let (e1, f1) = (fp.first().fiber_element(), fp.second().fiber_element());
        let g1 = fp.first();
        let g2 = fp.second();
        let a1 = g1.pullback(&self.h3) - &e1 * &g1.pullback(&self.c2);
        let a2 = g2.pullback(&self.h3) - &g2.pullback(&self.c1) * &f1;
        let a1 = TwistSpec::new(g1.total(), &a1)?;
        let a2 = TwistSpec::new(g2.total(), &a2)?;
        let b = fp.over_first().pullback(&e1) * fp.over_second().pullback(&f1);
        let quintuple = FmQuintuple::new(fp.over_first().clone(), fp.over_second().clone(), a1, a2, b)?;
        Ok(TDualityQuintuple { config: self.clone(), fiber_product: fp, quintuple })
    }
}

impl TDualityQuintuple {
    pub fn config(&self) -> &TDualityConfig {
        &self.config
    }

    pub fn fiber_product(&self) -> &ExtensionFiberProduct {
        &self.fiber_product
    }

    pub fn quintuple(&self) -> &FmQuintuple {
        &self.quintuple
    }

    pub fn a1(&self) -> &Element {
        self.quintuple.twist1().twist()
    }

    pub fn a2(&self) -> &Element {
        self.quintuple.twist2().twist()
    }

    pub fn kernel(&self) -> &Element {
        self.quintuple.kernel()
    }

    /// `d b - (pi1^* a1 - pi2^* a2)`, zero by construction.
    pub fn kernel_residual(&self) -> Element {
        let q = &self.quintuple;
        q.total().d(q.kernel()) - (q.side1().pullback(self.a1()) - q.side2().pullback(self.a2()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{adjunction_inverse, adjunction_transpose, cyclify, CycNames};

    #[test]
    fn btfold_cohomology() {
        let h = btfold().cohomology(3);
        assert_eq!(h.dims, vec![1, 0, 2, 0]);
    }

    #[test]
    fn btfold_cocycles_not_cohomologous() {
        // There are no degree-1 cochains, so a nonzero closed degree-2
        // element cannot be exact.
        let g = btfold();
        let diff = g.element("x2c - x2t").unwrap();
        assert!(g.algebra().monomial_basis(1, None).is_empty());
        assert!(g.is_cocycle(&diff).unwrap());
        assert!(!diff.is_zero());
    }

    #[test]
    fn btfold_is_cyclification_of_b2u1() {
        let b2u1 = Presentation::parse(FieldKind::Rational, vec![Generator::even("x3", 3)], &[]).unwrap();
        let cyc = cyclify(&b2u1, &CycNames { shifted: vec!["y2".into()], canonical: "z2".into() }).unwrap();
        let g = btfold();
        let phi1 = Morphism::parse(cyc.presentation(), &g, &[("x3", "y3"), ("y2", "x2t"), ("z2", "x2c")]).unwrap();
        let inv = Morphism::parse(&g, cyc.presentation(), &[("x2c", "z2"), ("x2t", "y2"), ("y3", "x3")]).unwrap();
        phi1.verify().unwrap();
        inv.verify().unwrap();
        assert_eq!(phi1.then(&inv).unwrap(), Morphism::identity(cyc.presentation()));
        assert_eq!(inv.then(&phi1).unwrap(), Morphism::identity(&g));
        let q = validate_config(&g, &g.gen("x2c").unwrap(), &g.gen("x2t").unwrap(), &g.gen("y3").unwrap())
            .unwrap()
            .derive_quintuple(("y1c", "y1t"))
            .unwrap();
        let ext = q.fiber_product().first();
        let a1 = Morphism::new(b2u1.clone(), ext.total().clone(), vec![q.a1().clone()]).unwrap();
        assert_eq!(adjunction_transpose(ext, &cyc, &a1).unwrap(), phi1);
        assert_eq!(adjunction_inverse(ext, &cyc, &phi1).unwrap(), a1);
    }

    #[test]
    fn validation_errors() {
        let g = btfold();
        let (c, t) = (g.gen("x2c").unwrap(), g.gen("x2t").unwrap());
        let zero = Element::zero(g.algebra());
        let err = validate_config(&g, &c, &t, &zero).unwrap_err();
        assert_eq!(err.to_string(), "dh3 mismatch: residual = -x2c*x2t");
        assert!(validate_config(&g, &zero, &zero, &zero).is_ok());
        let p = crate::constructions::central_extension(&g, &c, "y1c").unwrap();
        let pt = p.total();
        assert!(matches!(
            validate_config(
                pt,
                &pt.gen("y1c").unwrap(),
                &zero.relabel(pt.algebra(), |i| i),
                &Element::zero(pt.algebra())
            ),
            Err(TDualityError::Bidegree { which: "first", .. })
        ));
        assert!(matches!(validate_config(pt, &c, &t, &zero), Err(TDualityError::WrongAlgebra)));
    }

    #[test]
    fn first_and_second_not_closed() {
        let h = Presentation::parse(
            FieldKind::Rational,
            vec![Generator::even("y1", 1), Generator::even("x2", 2), Generator::even("z1", 1)],
            &[("z1", "x2")],
        )
        .unwrap();
        let good = h.element("x2").unwrap();
        let bad = h.element("y1*z1").unwrap();
        let zero = Element::zero(h.algebra());
        assert_eq!(
            validate_config(&h, &bad, &good, &zero).unwrap_err().to_string(),
            "not closed: first (d c1 = -y1*x2)"
        );
        assert!(matches!(validate_config(&h, &good, &bad, &zero), Err(TDualityError::SecondNotClosed { .. })));
    }

    #[test]
    fn btfold_quintuple() {
        let g = btfold();
        let cfg = validate_config(&g, &g.gen("x2c").unwrap(), &g.gen("x2t").unwrap(), &g.gen("y3").unwrap()).unwrap();
        let q = cfg.derive_quintuple(("y1c", "y1t")).unwrap();
        let fp = q.fiber_product();
        assert_eq!(q.a1(), &fp.first().total().element("y3 - y1c*x2t").unwrap());
        assert_eq!(q.a2(), &fp.second().total().element("y3 - x2c*y1t").unwrap());
        assert_eq!(q.kernel(), &fp.total().element("y1c*y1t").unwrap());
        assert!(q.kernel_residual().is_zero());
        let m = cfg.classifying_morphism();
        assert_eq!(m, Morphism::identity(&g));
    }

    #[test]
    fn sphere_models() {
        let s4 = sphere_model(4).unwrap();
        assert_eq!(s4.d(&s4.gen("x7").unwrap()), s4.element("x4^2").unwrap());
        let s3 = sphere_model(3).unwrap();
        assert_eq!(s3.generators(), &[Generator::even("x3", 3)]);
        assert!(s3.d(&s3.gen("x3").unwrap()).is_zero());
        assert_eq!(sphere_model(1).unwrap().generators(), &[Generator::even("t1", 1)]);
        assert!(sphere_model(0).is_err());
    }
}
