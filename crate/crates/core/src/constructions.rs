//! Central extensions, fiber integration, loop algebras, cyclification and
//! the hofiber/cyclification adjunction.

use std::sync::Arc;

use thiserror::Error;

use crate::dgca::{DgcaError, Morphism, MorphismFailure, Presentation};
use crate::gca::{Algebra, Element, GenId, Generator, Parity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Dgca(#[from] DgcaError),
    #[error("cocycle is not closed: d(c) = {residual}")]
    NotClosed { residual: Element },
    #[error("element {0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("classifying cocycle must have degree >= 2 and even parity, got ({degree}, {parity})")]
    BadCocycle { degree: u32, parity: Parity },
    #[error("fiber generator {0} is not of square-zero type; a + y*b decomposition is not unique")]
    FiberNotSquareZero(String),
    #[error("shifting generator {0} would produce a generator of degree 0")]
    ShiftToDegreeZero(String),
    #[error("generator name {0:?} is already in use")]
    NameCollision(String),
    #[error("expected an extension by a 2-cocycle, got a fiber of degree {0}")]
    NotDegreeTwo(u32),
    #[error("{context}: {failure}")]
    Morphism { context: String, failure: MorphismFailure },
    #[error("{0}")]
    Mismatch(String),
}

/// A projection `total -> base` on the L-infinity side, presented dually as an
/// inclusion `CE(base) -> CE(total)` identifying the base generators with a
/// subset of the total generators. The remaining generators are the fibers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    base: Presentation,
    total: Presentation,
    embed: Vec<GenId>,
    fibers: Vec<GenId>,
    to_base: Vec<Option<GenId>>,
}

impl Projection {
    /// `embed[i]` is the total generator identified with base generator `i`;
    /// `fibers` lists the other total generators in integration order.
    pub fn new(
        base: Presentation,
        total: Presentation,
        embed: Vec<GenId>,
        fibers: Vec<GenId>,
    ) -> Result<Projection, ConstructionError> {
        let n = total.algebra().len();
        let mut to_base = vec![None; n];
        let mut seen = vec![false; n];
        if embed.len() != base.algebra().len() || embed.len() + fibers.len() != n {
            return Err(ConstructionError::Mismatch("projection does not partition the generators".into()));
        }
        for &t in embed.iter().chain(&fibers) {
            if t >= n || std::mem::replace(&mut seen[t], true) {
                return Err(ConstructionError::Mismatch("projection does not partition the generators".into()));
            }
        }
        for (i, &t) in embed.iter().enumerate() {
            let (gb, gt) = (base.algebra().generator(i), total.algebra().generator(t));
            if gb.degree != gt.degree || gb.parity != gt.parity {
                return Err(ConstructionError::Mismatch(format!(
                    "base generator {} and total generator {} differ in bidegree",
                    gb.name, gt.name
                )));
            }
            to_base[t] = Some(i);
        }
        let p = Projection { base, total, embed, fibers, to_base };
        p.inclusion()
            .verify()
            .map_err(|failure| ConstructionError::Morphism { context: "pullback".into(), failure })?;
        Ok(p)
    }

    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn total(&self) -> &Presentation {
        &self.total
    }

    pub fn fibers(&self) -> &[GenId] {
        &self.fibers
    }

    pub fn embedding(&self) -> &[GenId] {
        &self.embed
    }

    /// Sum of the fiber degrees: the amount by which integration lowers degree.
    pub fn fiber_degree(&self) -> u32 {
        self.fibers.iter().map(|&f| self.total.algebra().generator(f).degree).sum()
    }

    pub fn inclusion(&self) -> Morphism {
        let alg = self.total.algebra();
        let images = self.embed.iter().map(|&t| Element::generator(alg, t)).collect();
        Morphism::new(self.base.clone(), self.total.clone(), images).expect("images live in the total algebra")
    }

    /// Pull back an element of the base.
    pub fn pullback(&self, a: &Element) -> Element {
        a.relabel(self.total.algebra(), |i| self.embed[i])
    }

    /// Restrict a fiber-free element of the total algebra to the base.
    /// Terms mentioning a fiber generator are dropped.
    pub fn restrict(&self, a: &Element) -> Element {
        let mut out = Element::zero(self.base.algebra());
        for (m, c) in a.terms() {
            if m.factors().all(|(id, _)| self.to_base[id].is_some()) {
                let e = Element::from_monomial(a.algebra(), m.clone(), c.clone());
                out = out + e.relabel(self.base.algebra(), |id| self.to_base[id].expect("base generator"));
            }
        }
        out
    }

    /// Fiber integration: for each fiber `y` in order, `a + y*b |-> b`.
    pub fn integrate(&self, omega: &Element) -> Result<Element, ConstructionError> {
        let mut cur = omega.clone();
        for &y in &self.fibers {
            cur = integrate_generator(&cur, y)?;
        }
        Ok(self.restrict(&cur))
    }
}

/// Write `omega = a + y*b` with `y` moved to the front and return `b`, still
/// as an element of the same algebra.
pub fn integrate_generator(omega: &Element, y: GenId) -> Result<Element, ConstructionError> {
    let alg = omega.algebra();
    let gy = alg.generator(y);
    if !gy.is_square_zero() {
        return Err(ConstructionError::FiberNotSquareZero(gy.name.clone()));
    }
    let mut out = Element::zero(alg);
    for (m, c) in omega.terms() {
        if !m.contains(y) {
            continue;
        }
        let mut sign = 0;
        let mut rest = Vec::with_capacity(4);
        for (id, e) in m.factors() {
            if id == y {
                continue;
            }
            if id < y {
                let g = alg.generator(id);
                sign ^= (e * (g.degree * gy.degree + g.parity.bit() * gy.parity.bit())) & 1;
            }
            rest.push((id, e));
        }
        let c = if sign == 1 { -c } else { c.clone() };
        out = out + Element::from_product(alg, c, &rest);
    }
    Ok(out)
}

/// The differential of the shifted complex, `d[-1] = -d`.
pub fn shifted_complex_d(p: &Presentation, omega: &Element) -> Element {
    -p.d(omega)
}

/// `CE(g)[y]` with `dy = c` for a closed even cocycle `c` of degree >= 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralExtension {
    cocycle: Element,
    projection: Projection,
    y: GenId,
}

pub fn central_extension(base: &Presentation, c: &Element, name: &str) -> Result<CentralExtension, ConstructionError> {
    let (degree, parity) = match c.bidegree() {
        Some(bd) => bd,
        None if c.is_zero() => {
            return Err(ConstructionError::Mismatch(
                "the zero cocycle has no degree; use central_extension_of_degree".into(),
            ))
        }
        None => return Err(ConstructionError::NotHomogeneous(c.to_string())),
    };
    if degree < 2 || parity != Parity::Even {
        return Err(ConstructionError::BadCocycle { degree, parity });
    }
    central_extension_of_degree(base, c, degree, name)
}

/// As [`central_extension`], with the cocycle degree given explicitly so that
/// the zero cocycle is allowed.
pub fn central_extension_of_degree(
    base: &Presentation,
    c: &Element,
    degree: u32,
    name: &str,
) -> Result<CentralExtension, ConstructionError> {
    if degree < 2 || (!c.is_zero() && c.bidegree() != Some((degree, Parity::Even))) {
        return Err(ConstructionError::BadCocycle { degree, parity: c.bidegree().map_or(Parity::Even, |b| b.1) });
    }
    let dc = base.apply_d(c)?;
    if !dc.is_zero() {
        return Err(ConstructionError::NotClosed { residual: dc });
    }
    if base.algebra().id_of(name).is_some() {
        return Err(ConstructionError::NameCollision(name.into()));
    }
    let total = base.extended(Generator::even(name, degree - 1), c.clone())?;
    let n = base.algebra().len();
    let projection = Projection::new(base.clone(), total, (0..n).collect(), vec![n])?;
    Ok(CentralExtension { cocycle: c.clone(), projection, y: n })
}

impl CentralExtension {
    pub fn base(&self) -> &Presentation {
        self.projection.base()
    }

    pub fn total(&self) -> &Presentation {
        self.projection.total()
    }

    pub fn cocycle(&self) -> &Element {
        &self.cocycle
    }

    pub fn fiber(&self) -> GenId {
        self.y
    }

    pub fn fiber_element(&self) -> Element {
        Element::generator(self.total().algebra(), self.y)
    }

    pub fn projection(&self) -> &Projection {
        &self.projection
    }

    pub fn pullback(&self, a: &Element) -> Element {
        self.projection.pullback(a)
    }

    pub fn fiber_integrate(&self, omega: &Element) -> Result<Element, ConstructionError> {
        self.projection.integrate(omega)
    }

    /// `(a, b)` with `omega = pi^*(a) + y * pi^*(b)`.
    pub fn decompose(&self, omega: &Element) -> Result<(Element, Element), ConstructionError> {
        let b = self.fiber_integrate(omega)?;
        let a = self.projection.restrict(omega);
        Ok((a, b))
    }
}

/// Names for the generators adjoined by loop and cyclification constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycNames {
    /// One name per input generator, for its shift.
    pub shifted: Vec<String>,
    /// The canonical degree-2 generator.
    pub canonical: String,
}

impl CycNames {
    /// `s<name>` for shifts and `x2` for the canonical class.
    pub fn default_for(p: &Presentation) -> CycNames {
        CycNames { shifted: p.generators().iter().map(|g| format!("s{}", g.name)).collect(), canonical: "x2".into() }
    }
}

/// The loop algebra `L g`: generators `g_i` followed by their shifts `s g_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopAlgebra {
    input: Presentation,
    presentation: Presentation,
}

fn shifted_algebra(p: &Presentation, names: &[String], extra: Option<&str>) -> Result<Arc<Algebra>, ConstructionError> {
    let mut gens = p.generators().to_vec();
    if names.len() != gens.len() {
        return Err(ConstructionError::Mismatch("one shifted name per generator is required".into()));
    }
    for (g, name) in p.generators().iter().zip(names) {
        if g.degree <= 1 {
            return Err(ConstructionError::ShiftToDegreeZero(g.name.clone()));
        }
        gens.push(Generator::new(name.clone(), g.degree - 1, g.parity));
    }
    if let Some(x2) = extra {
        gens.push(Generator::even(x2, 2));
    }
    let mut seen = std::collections::HashSet::new();
    for g in &gens {
        if !seen.insert(g.name.as_str()) {
            return Err(ConstructionError::NameCollision(g.name.clone()));
        }
    }
    Ok(Algebra::new(p.algebra().field(), gens).map_err(DgcaError::from)?)
}

/// The shift derivation `s`: `g_i |-> s g_i`, zero on shifted and extra generators.
fn shift(alg: &Arc<Algebra>, n: usize, a: &Element) -> Element {
    a.odd_derivation(&|id| (id < n).then(|| Element::generator(alg, n + id)))
}

/// Differentials `d g_i` (relabelled) and `d s g_i = -s(d g_i)`.
fn loop_differentials(p: &Presentation, alg: &Arc<Algebra>) -> Vec<Element> {
    let n = p.algebra().len();
    let dg: Vec<Element> = p.differentials().iter().map(|e| e.relabel(alg, |i| i)).collect();
    let ds: Vec<Element> = dg.iter().map(|e| -shift(alg, n, e)).collect();
    dg.into_iter().chain(ds).collect()
}

pub fn loopify(p: &Presentation, shifted: &[String]) -> Result<LoopAlgebra, ConstructionError> {
    let alg = shifted_algebra(p, shifted, None)?;
    let d = loop_differentials(p, &alg);
    let presentation = Presentation::verified(alg, d)?;
    Ok(LoopAlgebra { input: p.clone(), presentation })
}

impl LoopAlgebra {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn input(&self) -> &Presentation {
        &self.input
    }

    pub fn shift(&self, a: &Element) -> Element {
        shift(self.presentation.algebra(), self.input.algebra().len(), a)
    }
}

/// `cyc(g)`: the loop algebra with a canonical closed generator `x2` and
/// `d g_i = d_L g_i + x2 * s g_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclification {
    input: Presentation,
    presentation: Presentation,
}

pub fn cyclify(p: &Presentation, names: &CycNames) -> Result<Cyclification, ConstructionError> {
    let alg = shifted_algebra(p, &names.shifted, Some(&names.canonical))?;
    let n = p.algebra().len();
    let x2 = Element::generator(&alg, 2 * n);
    let mut d = loop_differentials(p, &alg);
    for (i, di) in d.iter_mut().enumerate().take(n) {
        *di = &*di + &(&x2 * &Element::generator(&alg, n + i));
    }
    d.push(Element::zero(&alg));
    let presentation = Presentation::verified(alg, d)?;
    Ok(Cyclification { input: p.clone(), presentation })
}

impl Cyclification {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn input(&self) -> &Presentation {
        &self.input
    }

    pub fn shifted_id(&self, i: GenId) -> GenId {
        self.input.algebra().len() + i
    }

    pub fn canonical_id(&self) -> GenId {
        2 * self.input.algebra().len()
    }

    pub fn canonical(&self) -> Element {
        Element::generator(self.presentation.algebra(), self.canonical_id())
    }

    pub fn shift(&self, a: &Element) -> Element {
        shift(self.presentation.algebra(), self.input.algebra().len(), a)
    }

    /// The original generator `i` as an element of `cyc(g)`.
    pub fn original(&self, i: GenId) -> Element {
        Element::generator(self.presentation.algebra(), i)
    }
}

fn require_degree_two(ext: &CentralExtension) -> Result<(), ConstructionError> {
    let deg = ext.total().algebra().generator(ext.fiber()).degree;
    if deg != 1 {
        return Err(ConstructionError::NotDegreeTwo(deg + 1));
    }
    Ok(())
}

/// Transpose of `phi: CE(h) -> CE(g^)` across the adjunction, a morphism
/// `CE(cyc(h)) -> CE(g)` sending `x2` to the classifying cocycle:
/// `h |-> a`, `s h |-> -b` where `phi(h) = a + y*b`.
pub fn adjunction_transpose(
    ext: &CentralExtension,
    cyc: &Cyclification,
    phi: &Morphism,
) -> Result<Morphism, ConstructionError> {
    require_degree_two(ext)?;
    if phi.target() != ext.total() || phi.source() != cyc.input() {
        return Err(ConstructionError::Mismatch("morphism does not match the extension and cyclification".into()));
    }
    phi.verify().map_err(|failure| ConstructionError::Morphism { context: "input morphism".into(), failure })?;
    let n = cyc.input().algebra().len();
    let mut images = vec![Element::zero(ext.base().algebra()); 2 * n + 1];
    for i in 0..n {
        let (a, b) = ext.decompose(phi.image(i))?;
        images[i] = a;
        images[n + i] = -b;
    }
    images[2 * n] = ext.cocycle().clone();
    let psi = Morphism::new(cyc.presentation().clone(), ext.base().clone(), images)?;
    psi.verify().map_err(|failure| ConstructionError::Morphism { context: "transpose".into(), failure })?;
    Ok(psi)
}

/// Inverse of [`adjunction_transpose`]: `h |-> psi(h) - y * psi(s h)`.
pub fn adjunction_inverse(
    ext: &CentralExtension,
    cyc: &Cyclification,
    psi: &Morphism,
) -> Result<Morphism, ConstructionError> {
    require_degree_two(ext)?;
    if psi.target() != ext.base() || psi.source() != cyc.presentation() {
        return Err(ConstructionError::Mismatch("morphism does not match the extension and cyclification".into()));
    }
    let n = cyc.input().algebra().len();
    if psi.image(2 * n) != ext.cocycle() {
        return Err(ConstructionError::Mismatch("the canonical class must map to the classifying cocycle".into()));
    }
    let y = ext.fiber_element();
    let images = (0..n).map(|i| ext.pullback(psi.image(i)) - &y * &ext.pullback(psi.image(n + i))).collect();
    let phi = Morphism::new(cyc.input().clone(), ext.total().clone(), images)?;
    phi.verify().map_err(|failure| ConstructionError::Morphism { context: "inverse transpose".into(), failure })?;
    Ok(phi)
}

/// Fiber integration of a cocycle computed through the adjunction: the
/// cocycle `omega` of degree `n+1` on `g^` is a morphism from `R[x_{n+1}]`,
/// its transpose lands on `cyc(R[x_{n+1}])`, and restricting along
/// `x_n |-> -s x_{n+1}` gives a cocycle of degree `n` on `g`.
pub fn fiber_integration_via_cyclification(
    ext: &CentralExtension,
    omega: &Element,
) -> Result<Element, ConstructionError> {
    require_degree_two(ext)?;
    let Some((degree, Parity::Even)) = omega.bidegree() else {
        if omega.is_zero() {
            return Ok(Element::zero(ext.base().algebra()));
        }
        return Err(ConstructionError::NotHomogeneous(omega.to_string()));
    };
    let field = ext.base().algebra().field();
    let h = Presentation::parse(field, vec![Generator::even("x", degree)], &[])?;
    let phi = Morphism::new(h.clone(), ext.total().clone(), vec![omega.clone()])?;
    let cyc = cyclify(&h, &CycNames { shifted: vec!["sx".into()], canonical: "w".into() })?;
    let psi = adjunction_transpose(ext, &cyc, &phi)?;
    Ok(-psi.image(cyc.shifted_id(0)))
}

/// `CE(g)[e, f]` with `de = c1`, `df = c2`, together with both single
/// extensions and the projections of the total onto each of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionFiberProduct {
    first: CentralExtension,
    second: CentralExtension,
    over_first: Projection,
    over_second: Projection,
}

pub fn extension_fiber_product(
    base: &Presentation,
    c1: &Element,
    c2: &Element,
    names: (&str, &str),
) -> Result<ExtensionFiberProduct, ConstructionError> {
    let degree = |c: &Element| c.bidegree().map_or(2, |b| b.0);
    let first = central_extension_of_degree(base, c1, degree(c1), names.0)?;
    let second = central_extension_of_degree(base, c2, degree(c2), names.1)?;
    let joint = central_extension_of_degree(first.total(), &first.pullback(c2), degree(c2), names.1)?;
    let n = base.algebra().len();
    let total = joint.total().clone();
    let over_first = joint.projection().clone();
    let mut embed: Vec<GenId> = (0..n).collect();
    embed.push(n + 1);
    let over_second = Projection::new(second.total().clone(), total, embed, vec![n])?;
    Ok(ExtensionFiberProduct { first, second, over_first, over_second })
}

impl ExtensionFiberProduct {
    pub fn base(&self) -> &Presentation {
        self.first.base()
    }

    pub fn total(&self) -> &Presentation {
        self.over_first.total()
    }

    pub fn first(&self) -> &CentralExtension {
        &self.first
    }

    pub fn second(&self) -> &CentralExtension {
        &self.second
    }

    /// The total as an extension of the first single extension; its fiber is
    /// the second new generator.
    pub fn over_first(&self) -> &Projection {
        &self.over_first
    }

    pub fn over_second(&self) -> &Projection {
        &self.over_second
    }

    /// Both sides of `p2^* p1_* = pi2_* pi1^*` on an element of the first
    /// extension.
    pub fn beck_chevalley_sides(&self, omega: &Element) -> Result<(Element, Element), ConstructionError> {
        let lhs = self.second.pullback(&self.first.fiber_integrate(omega)?);
        let rhs = self.over_second.integrate(&self.over_first.pullback(omega))?;
        Ok((lhs, rhs))
    }

    pub fn beck_chevalley_check(&self, omega: &Element) -> Result<bool, ConstructionError> {
        let (l, r) = self.beck_chevalley_sides(omega)?;
        Ok(l == r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldKind;

    fn btfold() -> Presentation {
        Presentation::parse(
            FieldKind::Rational,
            vec![Generator::even("x2c", 2), Generator::even("x2t", 2), Generator::even("y3", 3)],
            &[("y3", "x2c*x2t")],
        )
        .unwrap()
    }

    fn ls4() -> Presentation {
        Presentation::parse(
            FieldKind::Rational,
            vec![Generator::even("x4", 4), Generator::even("x7", 7)],
            &[("x7", "x4^2")],
        )
        .unwrap()
    }

    fn p1() -> CentralExtension {
        let b = btfold();
        central_extension(&b, &b.gen("x2c").unwrap(), "y1c").unwrap()
    }

    #[test]
    fn extension_of_btfold_is_p1() {
        let ext = p1();
        let t = ext.total();
        let names: Vec<_> = t.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["x2c", "x2t", "y3", "y1c"]);
        assert_eq!(t.d(&t.gen("y1c").unwrap()).to_string(), "x2c");
        assert!(t.is_verified());
    }

    #[test]
    fn extension_errors() {
        let b = btfold();
        let err = central_extension(&b, &b.gen("y3").unwrap(), "z").unwrap_err();
        assert_eq!(err, ConstructionError::NotClosed { residual: b.element("x2c*x2t").unwrap() });
        assert!(matches!(
            central_extension(&b, &b.gen("x2c").unwrap(), "y3"),
            Err(ConstructionError::NameCollision(_))
        ));
        let zero = central_extension_of_degree(&b, &Element::zero(b.algebra()), 4, "w3").unwrap();
        assert!(zero.total().d_gen(zero.fiber()).is_zero());
    }

    #[test]
    fn fiber_integration_examples() {
        let ext = p1();
        let t = ext.total();
        assert!(ext.fiber_integrate(&t.gen("x2c").unwrap()).unwrap().is_zero());
        let b = ext.fiber_integrate(&t.element("y1c*x2t").unwrap()).unwrap();
        assert_eq!(b, ext.base().gen("x2t").unwrap());
        // y3*y1c = -y1c*y3
        let b = ext.fiber_integrate(&t.element("y3*y1c").unwrap()).unwrap();
        assert_eq!(b, -ext.base().gen("y3").unwrap());
    }

    #[test]
    fn shifted_differential() {
        let p = ls4();
        assert!(shifted_complex_d(&p, &p.gen("x4").unwrap()).is_zero());
        assert_eq!(shifted_complex_d(&p, &p.gen("x7").unwrap()), -p.element("x4^2").unwrap());
        let b = btfold();
        assert_eq!(shifted_complex_d(&b, &b.gen("y3").unwrap()), -b.element("x2c*x2t").unwrap());
    }

    #[test]
    fn loop_of_sphere() {
        let p = ls4();
        let l = loopify(&p, &CycNames::default_for(&p).shifted).unwrap();
        let lp = l.presentation();
        assert!(lp.d(&lp.gen("sx4").unwrap()).is_zero());
        assert_eq!(lp.d(&lp.gen("sx7").unwrap()), lp.element("-2*x4*sx4").unwrap());
        let empty = Presentation::parse(FieldKind::Rational, vec![], &[]).unwrap();
        assert!(loopify(&empty, &[]).unwrap().presentation().generators().is_empty());
        let b2u1 = Presentation::parse(FieldKind::Rational, vec![Generator::even("x3", 3)], &[]).unwrap();
        let l = loopify(&b2u1, &["y2".into()]).unwrap();
        assert!(l.presentation().differentials().iter().all(Element::is_zero));
        let t1 = Presentation::parse(FieldKind::Rational, vec![Generator::even("t1", 1)], &[]).unwrap();
        assert_eq!(loopify(&t1, &["st1".into()]).unwrap_err(), ConstructionError::ShiftToDegreeZero("t1".into()));
    }

    #[test]
    fn cyclification_of_b2u1() {
        let b2u1 = Presentation::parse(FieldKind::Rational, vec![Generator::even("x3", 3)], &[]).unwrap();
        let c = cyclify(&b2u1, &CycNames { shifted: vec!["y2".into()], canonical: "z2".into() }).unwrap();
        let expected = Presentation::parse(
            FieldKind::Rational,
            vec![Generator::even("x3", 3), Generator::even("y2", 2), Generator::even("z2", 2)],
            &[("x3", "z2*y2")],
        )
        .unwrap();
        assert_eq!(c.presentation(), &expected);
        let empty = Presentation::parse(FieldKind::Rational, vec![], &[]).unwrap();
        let c0 = cyclify(&empty, &CycNames::default_for(&empty)).unwrap();
        assert_eq!(c0.presentation().generators(), &[Generator::even("x2", 2)]);
    }

    #[test]
    fn cyclification_of_sphere() {
        let p = ls4();
        let names = CycNames { shifted: vec!["y3".into(), "y6".into()], canonical: "x2".into() };
        let c = cyclify(&p, &names).unwrap();
        let cp = c.presentation();
        assert_eq!(cp.d(&cp.gen("x4").unwrap()), cp.element("x2*y3").unwrap());
        assert_eq!(cp.d(&cp.gen("y6").unwrap()), cp.element("-2*y3*x4").unwrap());
        assert_eq!(cp.d(&cp.gen("x7").unwrap()), cp.element("x4^2 + x2*y6").unwrap());
    }

    fn a31(ext: &CentralExtension) -> Element {
        ext.total().element("y3 - y1c*x2t").unwrap()
    }

    fn b3u1() -> Presentation {
        Presentation::parse(FieldKind::Rational, vec![Generator::even("x3", 3)], &[]).unwrap()
    }

    #[test]
    fn transpose_of_a31_is_phi1() {
        let ext = p1();
        let h = b3u1();
        let cyc = cyclify(&h, &CycNames { shifted: vec!["y2".into()], canonical: "z2".into() }).unwrap();
        let phi = Morphism::new(h.clone(), ext.total().clone(), vec![a31(&ext)]).unwrap();
        let psi = adjunction_transpose(&ext, &cyc, &phi).unwrap();
        let phi1 =
            Morphism::parse(cyc.presentation(), ext.base(), &[("x3", "y3"), ("y2", "x2t"), ("z2", "x2c")]).unwrap();
        assert_eq!(psi, phi1);
        assert_eq!(adjunction_inverse(&ext, &cyc, &psi).unwrap(), phi);
    }

    #[test]
    fn zero_morphism_transpose() {
        let ext = p1();
        let h = b3u1();
        let cyc = cyclify(&h, &CycNames { shifted: vec!["y2".into()], canonical: "z2".into() }).unwrap();
        let zero = Morphism::new(h, ext.total().clone(), vec![Element::zero(ext.total().algebra())]).unwrap();
        let psi = adjunction_transpose(&ext, &cyc, &zero).unwrap();
        assert!(psi.image(0).is_zero() && psi.image(1).is_zero());
        assert_eq!(psi.image(2), ext.cocycle());
    }

    #[test]
    fn integration_through_cyclification_agrees() {
        let ext = p1();
        let t = ext.total();
        let w = a31(&ext);
        assert_eq!(fiber_integration_via_cyclification(&ext, &w).unwrap(), ext.fiber_integrate(&w).unwrap());
        assert_eq!(fiber_integration_via_cyclification(&ext, &w).unwrap(), -ext.base().gen("x2t").unwrap());
        assert!(fiber_integration_via_cyclification(&ext, &t.gen("x2t").unwrap()).unwrap().is_zero());
        let torus =
            Presentation::parse(FieldKind::Rational, vec![Generator::even("e1", 1), Generator::even("e2", 1)], &[])
                .unwrap();
        let heis = central_extension(&torus, &torus.element("e1*e2").unwrap(), "y").unwrap();
        let y_c = heis.total().element("y*e1").unwrap();
        assert_eq!(fiber_integration_via_cyclification(&heis, &y_c).unwrap(), torus.gen("e1").unwrap());
    }

    #[test]
    fn fiber_product_restricts_to_single_extensions() {
        let b = btfold();
        let fp = extension_fiber_product(&b, &b.gen("x2c").unwrap(), &b.gen("x2t").unwrap(), ("e1c", "e1t")).unwrap();
        assert_eq!(fp.over_first().base(), fp.first().total());
        assert_eq!(fp.over_second().base(), fp.second().total());
        let t = fp.total();
        let names: Vec<_> = t.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["x2c", "x2t", "y3", "e1c", "e1t"]);
        let g1 = fp.first().total();
        let omega = g1.element("x2t^2 + e1c*y3").unwrap();
        let (l, r) = fp.beck_chevalley_sides(&omega).unwrap();
        assert_eq!(l, r);
        assert_eq!(l, fp.second().total().gen("y3").unwrap());
        assert!(fp.beck_chevalley_check(&g1.gen("x2c").unwrap()).unwrap());
    }
}
