//! Twisted Laurent complexes and Fourier-Mukai transforms.
//!
//! A twisted cochain of total degree `k` is a finite sum `sum_m u^m w_m` with
//! `deg u = 2`, so `w_m` has degree `k - 2m`. The twisted differential is
//! `d_a = d + u^-1 a`, i.e. `(d_a w)_m = d w_m + a w_(m+1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::constructions::{ConstructionError, Projection};
use crate::dgca::{vector_element, DgcaError, Presentation};
use crate::field::Scalar;
use crate::gca::{element_in, Algebra, Element, GenId, Generator, Monomial, Parity};
use crate::linalg::{EchelonBasis, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistedError {
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Dgca(#[from] DgcaError),
    #[error("component {element} at u^{power} is not homogeneous of degree {expected} and even parity")]
    BadComponent { power: i64, element: String, expected: i64 },
    #[error("cochain does not live over the expected presentation")]
    WrongAlgebra,
    #[error("twist must be a closed degree-3 even element: {0}")]
    BadTwist(String),
    #[error("kernel {0} is not nilpotent; exp(u^-1 b) would not terminate")]
    NotNilpotent(String),
    #[error("kernel relation fails: d b - (pi1^* a1 - pi2^* a2) = {residual}")]
    KernelRelation { residual: Element },
    #[error("{0}")]
    Mismatch(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct TwistedCochain {
    alg: Arc<Algebra>,
    degree: i64,
    comps: BTreeMap<i64, Element>,
}

impl TwistedCochain {
    pub fn zero(alg: &Arc<Algebra>, degree: i64) -> TwistedCochain {
        TwistedCochain { alg: alg.clone(), degree, comps: BTreeMap::new() }
    }

    /// Validates that each component at `u^m` has degree `degree - 2m` and
    /// even parity. Zero components are dropped; repeated powers are summed.
    pub fn new(
        alg: &Arc<Algebra>,
        degree: i64,
        comps: impl IntoIterator<Item = (i64, Element)>,
    ) -> Result<TwistedCochain, TwistedError> {
        let mut out = TwistedCochain::zero(alg, degree);
        for (m, e) in comps {
            if !element_in(&e, alg) {
                return Err(TwistedError::WrongAlgebra);
            }
            let expected = degree - 2 * m;
            if !e.is_zero() && e.bidegree() != u32::try_from(expected).ok().map(|d| (d, Parity::Even)) {
                return Err(TwistedError::BadComponent { power: m, element: e.to_string(), expected });
            }
            out.add_component(m, e);
        }
        Ok(out)
    }

    /// `u^power * e` for a homogeneous even element `e`.
    pub fn monomial(e: Element, power: i64) -> Result<TwistedCochain, TwistedError> {
        let alg = e.algebra().clone();
        let deg =
            e.degree().map_err(|_| TwistedError::BadComponent { power, element: e.to_string(), expected: -1 })? as i64;
        TwistedCochain::new(&alg, deg + 2 * power, [(power, e)])
    }

    fn add_component(&mut self, m: i64, e: Element) {
        if e.is_zero() {
            return;
        }
        let slot = self.comps.entry(m).or_insert_with(|| Element::zero(&self.alg));
        *slot = &*slot + &e;
        if slot.is_zero() {
            self.comps.remove(&m);
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn component(&self, m: i64) -> Element {
        self.comps.get(&m).cloned().unwrap_or_else(|| Element::zero(&self.alg))
    }

    pub fn components(&self) -> impl Iterator<Item = (i64, &Element)> {
        self.comps.iter().map(|(&m, e)| (m, e))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Multiply by `u^k`.
    pub fn shift_u(&self, k: i64) -> TwistedCochain {
        TwistedCochain {
            alg: self.alg.clone(),
            degree: self.degree + 2 * k,
            comps: self.comps.iter().map(|(&m, e)| (m + k, e.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> TwistedCochain {
        let mut out = TwistedCochain::zero(&self.alg, self.degree);
        for (&m, e) in &self.comps {
            out.add_component(m, e.scale(c));
        }
        out
    }

    pub fn checked_add(&self, other: &TwistedCochain) -> Result<TwistedCochain, TwistedError> {
        if !Arc::ptr_eq(&self.alg, &other.alg) && self.alg != other.alg {
            return Err(TwistedError::WrongAlgebra);
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(TwistedError::Mismatch("adding cochains of different degrees".into()));
        }
        let mut out = if self.is_zero() { other.clone() } else { self.clone() };
        if !self.is_zero() {
            for (&m, e) in &other.comps {
                out.add_component(m, e.clone());
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &TwistedCochain) -> Result<TwistedCochain, TwistedError> {
        self.checked_add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Apply an element map componentwise, shifting the total degree.
    fn map(&self, alg: &Arc<Algebra>, degree: i64, f: impl Fn(&Element) -> Element) -> TwistedCochain {
        let mut out = TwistedCochain::zero(alg, degree);
        for (&m, e) in &self.comps {
            out.add_component(m, f(e));
        }
        out
    }

    fn try_map(
        &self,
        alg: &Arc<Algebra>,
        degree: i64,
        f: impl Fn(&Element) -> Result<Element, TwistedError>,
    ) -> Result<TwistedCochain, TwistedError> {
        let mut out = TwistedCochain::zero(alg, degree);
        for (&m, e) in &self.comps {
            out.add_component(m, f(e)?);
        }
        Ok(out)
    }
}

impl fmt::Display for TwistedCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, e)) in self.comps.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "u^{m}*({e})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TwistedCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistedCochain[deg {}]({self})", self.degree)
    }
}

/// A presentation with a twisting class `a` of degree 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistSpec {
    pres: Presentation,
    a: Element,
}

impl TwistSpec {
    /// Requires `a` to be zero or a closed degree-3 even element.
    pub fn new(pres: &Presentation, a: &Element) -> Result<TwistSpec, TwistedError> {
        let t = TwistSpec::unchecked(pres, a)?;
        let da = pres.d(a);
        if !da.is_zero() {
            return Err(TwistedError::BadTwist(format!("d(a) = {da}")));
        }
        Ok(t)
    }

    /// Allows a twist that is not closed; `d_a` then fails to square to zero.
    pub fn unchecked(pres: &Presentation, a: &Element) -> Result<TwistSpec, TwistedError> {
        if !element_in(a, pres.algebra()) {
            return Err(TwistedError::WrongAlgebra);
        }
        if !a.is_zero() && a.bidegree() != Some((3, Parity::Even)) {
            return Err(TwistedError::BadTwist(format!("{a} is not of bidegree (3, even)")));
        }
        Ok(TwistSpec { pres: pres.clone(), a: a.clone() })
    }

    pub fn untwisted(pres: &Presentation) -> TwistSpec {
        TwistSpec { pres: pres.clone(), a: Element::zero(pres.algebra()) }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn twist(&self) -> &Element {
        &self.a
    }
}

pub fn twisted_d(t: &TwistSpec, w: &TwistedCochain) -> Result<TwistedCochain, TwistedError> {
    if !element_in(&Element::zero(&w.alg), t.pres.algebra()) {
        return Err(TwistedError::WrongAlgebra);
    }
    let mut out = TwistedCochain::zero(&w.alg, w.degree + 1);
    for (&m, e) in &w.comps {
        out.add_component(m, t.pres.d(e));
        out.add_component(m - 1, &t.a * e);
    }
    Ok(out)
}

/// Multiplication by `exp(u^-1 b)`: `(G w)_m = sum_j b^j / j! * w_(m+j)`.
/// `b` must be nilpotent, which is checked by requiring every monomial of `b`
/// to contain a square-zero generator.
pub fn gauge_transform(b: &Element, w: &TwistedCochain) -> Result<TwistedCochain, TwistedError> {
    let powers = exp_powers(b)?;
    if !element_in(b, &w.alg) {
        return Err(TwistedError::WrongAlgebra);
    }
    let mut out = TwistedCochain::zero(&w.alg, w.degree);
    for (&m, e) in &w.comps {
        for (j, bj) in powers.iter().enumerate() {
            out.add_component(m - j as i64, bj * e);
        }
    }
    Ok(out)
}

/// `[1, b, b^2/2, ...]` up to the last nonzero power.
fn exp_powers(b: &Element) -> Result<Vec<Element>, TwistedError> {
    if !b.is_zero() && b.bidegree() != Some((2, Parity::Even)) {
        return Err(TwistedError::Mismatch(format!("kernel {b} is not of bidegree (2, even)")));
    }
    let alg = b.algebra();
    let nilpotent = b.terms().all(|(m, _)| m.factors().any(|(id, _)| alg.generator(id).is_square_zero()));
    if !nilpotent {
        return Err(TwistedError::NotNilpotent(b.to_string()));
    }
    let mut out = vec![Element::one(alg)];
    let mut j = 1;
    loop {
        let next = (out.last().expect("nonempty") * b).scale(&Scalar::from_ratio(1, j));
        if next.is_zero() {
            return Ok(out);
        }
        out.push(next);
        j += 1;
    }
}

/// Result of [`twisted_cohomology`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedCohomology {
    pub class: u32,
    pub window: u32,
    pub dim: usize,
    pub cocycle_dim: usize,
    pub boundary_dim: usize,
    pub representatives: Vec<TwistedCochain>,
}

impl TwistedCohomology {
    pub fn window_note(&self) -> String {
        format!(
            "cochains of total degree {} with components of degree 0..={}; boundaries only from cochains in the same window whose image stays inside it",
            self.class, self.window
        )
    }
}

type Key = (u32, Monomial);

fn window_basis(alg: &Algebra, class: u32, lo: u32, hi: u32) -> Vec<Key> {
    let mut out = Vec::new();
    for n in lo..=hi {
        if n % 2 == class % 2 {
            out.extend(alg.monomial_basis(n, Some(Parity::Even)).into_iter().map(|m| (n, m)));
        }
    }
    out
}

/// Matrix of `d_a` from the window `C^k_W` (k = class) into all degrees
/// reachable, and the target keys.
fn twisted_matrix(t: &TwistSpec, class: u32, window: u32) -> (Vec<Key>, Vec<Key>, Matrix) {
    let alg = t.pres.algebra();
    let src = window_basis(alg, class, 0, window);
    let tgt = window_basis(alg, class + 1, 0, window + 3);
    let index: BTreeMap<&Key, usize> = tgt.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = Matrix::zeros(tgt.len(), src.len());
    for (j, (n, mono)) in src.iter().enumerate() {
        let e = Element::from_monomial(alg, mono.clone(), Scalar::one());
        for (img, deg) in [(t.pres.d(&e), n + 1), (&t.a * &e, n + 3)] {
            for (mm, c) in img.terms() {
                m.set(index[&(deg, mm.clone())], j, c.clone());
            }
        }
    }
    (src, tgt, m)
}

fn keys_to_cochain(alg: &Arc<Algebra>, class: u32, keys: &[Key], v: &[Scalar]) -> TwistedCochain {
    let mut by_degree: BTreeMap<u32, (Vec<Monomial>, Vec<Scalar>)> = BTreeMap::new();
    for ((n, m), c) in keys.iter().zip(v) {
        if !c.is_zero() {
            let slot = by_degree.entry(*n).or_default();
            slot.0.push(m.clone());
            slot.1.push(c.clone());
        }
    }
    let mut out = TwistedCochain::zero(alg, class as i64);
    for (n, (ms, cs)) in by_degree {
        out.add_component((class as i64 - n as i64) / 2, vector_element(alg, &ms, &cs));
    }
    out
}

/// Cohomology of the twisted complex in total degree `class` (0 or 1; the
/// complex is 2-periodic via multiplication by `u`), truncated to components
/// of degree at most `window`.
pub fn twisted_cohomology(t: &TwistSpec, class: u32, window: u32) -> TwistedCohomology {
    let class = class % 2;
    let (src, _, dk) = twisted_matrix(t, class, window);
    let (prev_src, prev_tgt, dprev) = twisted_matrix(t, class + 1, window);
    // Keep only preimages whose boundary stays in the window.
    let overflow: Vec<usize> = (0..prev_tgt.len()).filter(|&i| prev_tgt[i].0 > window).collect();
    let inside: Vec<usize> = (0..prev_tgt.len()).filter(|&i| prev_tgt[i].0 <= window).collect();
    let overflow_rows = Matrix::from_rows(overflow.iter().map(|&i| dprev.row(i).to_vec()).collect());
    let admissible: Vec<Vec<Scalar>> = if overflow.is_empty() {
        (0..prev_src.len())
            .map(|j| {
                let mut v = vec![Scalar::zero(); prev_src.len()];
                v[j] = Scalar::one();
                v
            })
            .collect()
    } else if prev_src.is_empty() {
        Vec::new()
    } else {
        overflow_rows.kernel()
    };
    debug_assert!(inside.iter().map(|&i| &prev_tgt[i]).eq(src.iter()));
    let mut span = EchelonBasis::new();
    for v in &admissible {
        let image = dprev.apply(v);
        let restricted: Vec<Scalar> = inside.iter().map(|&i| image[i].clone()).collect();
        span.insert(&restricted);
    }
    let boundary_dim = span.dim();
    let kernel = dk.kernel();
    let cocycle_dim = kernel.len();
    let mut representatives = Vec::new();
    for v in &kernel {
        if span.insert(v) {
            representatives.push(keys_to_cochain(t.pres.algebra(), class, &src, v));
        }
    }
    TwistedCohomology { class, window, dim: representatives.len(), cocycle_dim, boundary_dim, representatives }
}

/// A basis of the `d_a`-closed cochains of total degree `class` whose
/// components have degree at most `window`.
pub fn twisted_cocycles(t: &TwistSpec, class: u32, window: u32) -> Vec<TwistedCochain> {
    let class = class % 2;
    let (src, _, dk) = twisted_matrix(t, class, window);
    dk.kernel().iter().map(|v| keys_to_cochain(t.pres.algebra(), class, &src, v)).collect()
}

/// A twisted cochain's coordinates in the window basis of its class.
pub fn window_coordinates(w: &TwistedCochain, window: u32) -> Option<Vec<Scalar>> {
    let class = w.degree.rem_euclid(2) as u32;
    let keys = window_basis(&w.alg, class, 0, window);
    let index: BTreeMap<&Key, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut v = vec![Scalar::zero(); keys.len()];
    for (&m, e) in &w.comps {
        let n = w.degree - 2 * m;
        for (mono, c) in e.terms() {
            let key = (u32::try_from(n).ok()?, mono.clone());
            v[*index.get(&key)?] = c.clone();
        }
    }
    Some(v)
}

/// Basis cochains of total degree `degree` whose components have degree at
/// most `window`, one per window basis monomial.
pub fn window_basis_cochains(alg: &Arc<Algebra>, degree: i64, window: u32) -> Vec<TwistedCochain> {
    let class = degree.rem_euclid(2) as u32;
    window_basis(alg, class, 0, window)
        .into_iter()
        .map(|(n, m)| {
            let e = Element::from_monomial(alg, m, Scalar::one());
            TwistedCochain::new(alg, degree, [((degree - n as i64) / 2, e)]).expect("homogeneous basis element")
        })
        .collect()
}

/// The data of a Fourier-Mukai transform: two projections out of a common
/// total presentation, twists on both bases and a kernel `b` on the total
/// with `d b = pi1^* a1 - pi2^* a2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmQuintuple {
    side1: Projection,
    side2: Projection,
    a1: TwistSpec,
    a2: TwistSpec,
    b: Element,
}

impl FmQuintuple {
    pub fn new(
        side1: Projection,
        side2: Projection,
        a1: TwistSpec,
        a2: TwistSpec,
        b: Element,
    ) -> Result<FmQuintuple, TwistedError> {
        if side1.total() != side2.total() {
            return Err(TwistedError::Mismatch("the two projections have different totals".into()));
        }
        if a1.presentation() != side1.base() || a2.presentation() != side2.base() {
            return Err(TwistedError::Mismatch("twists do not live on the projection bases".into()));
        }
        if !element_in(&b, side1.total().algebra()) {
            return Err(TwistedError::WrongAlgebra);
        }
        exp_powers(&b)?;
        let residual = side1.total().d(&b) - (side1.pullback(a1.twist()) - side2.pullback(a2.twist()));
        if !residual.is_zero() {
            return Err(TwistedError::KernelRelation { residual });
        }
        Ok(FmQuintuple { side1, side2, a1, a2, b })
    }

    pub fn side1(&self) -> &Projection {
        &self.side1
    }

    pub fn side2(&self) -> &Projection {
        &self.side2
    }

    pub fn total(&self) -> &Presentation {
        self.side1.total()
    }

    pub fn twist1(&self) -> &TwistSpec {
        &self.a1
    }

    pub fn twist2(&self) -> &TwistSpec {
        &self.a2
    }

    pub fn kernel(&self) -> &Element {
        &self.b
    }

    /// The quintuple read backwards with kernel `-b`.
    pub fn reversed(&self) -> FmQuintuple {
        FmQuintuple {
            side1: self.side2.clone(),
            side2: self.side1.clone(),
            a1: self.a2.clone(),
            a2: self.a1.clone(),
            b: -&self.b,
        }
    }

    /// `w |-> pi2_*(exp(u^-1 b) pi1^* w)`.
    pub fn transform(&self, w: &TwistedCochain) -> Result<TwistedCochain, TwistedError> {
        if !element_in(&Element::zero(&w.alg), self.side1.base().algebra()) {
            return Err(TwistedError::WrongAlgebra);
        }
        let total = self.total().algebra();
        let pulled = w.map(total, w.degree, |e| self.side1.pullback(e));
        let kerneled = gauge_transform(&self.b, &pulled)?;
        let f = self.side2.fiber_degree() as i64;
        kerneled.try_map(self.side2.base().algebra(), w.degree - f, |e| Ok(self.side2.integrate(e)?))
    }

    /// The inverse `u * Phi_{-b}` (valid when each side has a single
    /// degree-1 fiber).
    pub fn inverse_transform(&self, w: &TwistedCochain) -> Result<TwistedCochain, TwistedError> {
        Ok(self.reversed().transform(w)?.shift_u(1))
    }

    /// Compare `d_a2(Phi w)` with `Phi(d_a1 w)`: returns `Some(s)` when
    /// `d_a2 Phi w = s * Phi d_a1 w` for `s` in {1, -1}, `Some(0)` when both
    /// vanish, and `None` otherwise.
    pub fn intertwining_sign(&self, w: &TwistedCochain) -> Result<Option<i8>, TwistedError> {
        let lhs = twisted_d(&self.a2, &self.transform(w)?)?;
        let rhs = self.transform(&twisted_d(&self.a1, w)?)?;
        Ok(match (lhs.is_zero(), rhs.is_zero()) {
            (true, true) => Some(0),
            _ if lhs == rhs => Some(1),
            _ if lhs == rhs.scale(&Scalar::from_int(-1)) => Some(-1),
            _ => None,
        })
    }
}

pub fn fm_transform(q: &FmQuintuple, w: &TwistedCochain) -> Result<TwistedCochain, TwistedError> {
    q.transform(w)
}

/// Compose `q: g1 <- h -> g2` with `r: g2 <- h' -> g3` over the fiber
/// product `H = CE(g2)[F1, F2]` of `h` and `h'` over `g2`. Fiber generator
/// names that collide are suffixed `_1` and `_2`.
pub fn compose_fm(q: &FmQuintuple, r: &FmQuintuple) -> Result<FmQuintuple, TwistedError> {
    if q.side2.base() != r.side1.base() || q.a2 != r.a1 {
        return Err(TwistedError::Mismatch(
            "second side of the first transform must match the first side of the second".into(),
        ));
    }
    let g2 = q.side2.base();
    let (h, h2) = (q.total(), r.total());
    let f1 = q.side2.fibers();
    let f2 = r.side1.fibers();
    let n2 = g2.algebra().len();
    let name = |alg: &Algebra, id: GenId| alg.generator(id).name.clone();
    let f1_names: Vec<String> = f1.iter().map(|&i| name(h.algebra(), i)).collect();
    let f2_names: Vec<String> = f2.iter().map(|&i| name(h2.algebra(), i)).collect();
    let mut gens: Vec<Generator> = g2.generators().to_vec();
    for (k, &i) in f1.iter().enumerate() {
        let mut g = h.algebra().generator(i).clone();
        if f2_names.contains(&f1_names[k]) {
            g.name = format!("{}_1", g.name);
        }
        gens.push(g);
    }
    for (k, &i) in f2.iter().enumerate() {
        let mut g = h2.algebra().generator(i).clone();
        if f1_names.contains(&f2_names[k]) {
            g.name = format!("{}_2", g.name);
        }
        gens.push(g);
    }
    let alg = Algebra::new(g2.algebra().field(), gens).map_err(DgcaError::from)?;
    // Generator maps from h and h' into H.
    let mut hmap = vec![0; h.algebra().len()];
    for (i, &t) in q.side2.embedding().iter().enumerate() {
        hmap[t] = i;
    }
    for (k, &t) in f1.iter().enumerate() {
        hmap[t] = n2 + k;
    }
    let mut h2map = vec![0; h2.algebra().len()];
    for (i, &t) in r.side1.embedding().iter().enumerate() {
        h2map[t] = i;
    }
    for (k, &t) in f2.iter().enumerate() {
        h2map[t] = n2 + f1.len() + k;
    }
    let mut d: Vec<Element> = g2.differentials().iter().map(|e| e.relabel(&alg, |i| i)).collect();
    d.extend(f1.iter().map(|&t| h.d_gen(t).relabel(&alg, |i| hmap[i])));
    d.extend(f2.iter().map(|&t| h2.d_gen(t).relabel(&alg, |i| h2map[i])));
    let big = Presentation::verified(alg, d)?;
    let f1_ids: Vec<GenId> = (n2..n2 + f1.len()).collect();
    let f2_ids: Vec<GenId> = (n2 + f1.len()..n2 + f1.len() + f2.len()).collect();
    let q1 = Projection::new(h.clone(), big.clone(), hmap.clone(), f2_ids.clone())?;
    let q2 = Projection::new(h2.clone(), big.clone(), h2map.clone(), f1_ids.clone())?;
    let side1 = Projection::new(
        q.side1.base().clone(),
        big.clone(),
        q.side1.embedding().iter().map(|&t| hmap[t]).collect(),
        f2_ids.iter().copied().chain(q.side1.fibers().iter().map(|&t| hmap[t])).collect(),
    )?;
    let side2 = Projection::new(
        r.side2.base().clone(),
        big,
        r.side2.embedding().iter().map(|&t| h2map[t]).collect(),
        f1_ids.iter().copied().chain(r.side2.fibers().iter().map(|&t| h2map[t])).collect(),
    )?;
    let b = q1.pullback(&q.b) + q2.pullback(&r.b);
    FmQuintuple::new(side1, side2, q.a1.clone(), r.a2.clone(), b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::extension_fiber_product;
    use crate::field::FieldKind;

    fn btfold() -> Presentation {
        Presentation::parse(
            FieldKind::Rational,
            vec![Generator::even("x2c", 2), Generator::even("x2t", 2), Generator::even("y3", 3)],
            &[("y3", "x2c*x2t")],
        )
        .unwrap()
    }

    fn quintuple() -> FmQuintuple {
        let g = btfold();
        let fp = extension_fiber_product(&g, &g.gen("x2c").unwrap(), &g.gen("x2t").unwrap(), ("y1c", "y1t")).unwrap();
        let g1 = fp.first().total();
        let g2 = fp.second().total();
        let a1 = TwistSpec::new(g1, &g1.element("y3 - y1c*x2t").unwrap()).unwrap();
        let a2 = TwistSpec::new(g2, &g2.element("y3 - x2c*y1t").unwrap()).unwrap();
        let b = fp.total().element("y1c*y1t").unwrap();
        FmQuintuple::new(fp.over_first().clone(), fp.over_second().clone(), a1, a2, b).unwrap()
    }

    fn cochain(p: &Presentation, degree: i64, comps: &[(i64, &str)]) -> TwistedCochain {
        TwistedCochain::new(p.algebra(), degree, comps.iter().map(|&(m, s)| (m, p.element(s).unwrap()))).unwrap()
    }

    #[test]
    fn untwisted_differential_is_componentwise() {
        let g = btfold();
        let t = TwistSpec::untwisted(&g);
        let w = cochain(&g, 3, &[(0, "y3"), (1, "0")]);
        assert_eq!(twisted_d(&t, &w).unwrap(), cochain(&g, 4, &[(0, "x2c*x2t")]));
    }

    #[test]
    fn twisted_d_of_one() {
        let g = btfold();
        let a = g.element("x2c*y3 - x2t*y3").unwrap();
        let g5 = TwistSpec::unchecked(&g, &Element::zero(g.algebra())).unwrap();
        assert!(twisted_d(&g5, &cochain(&g, 0, &[(0, "1")])).unwrap().is_zero());
        assert!(TwistSpec::new(&g, &a).is_err());
        let q = quintuple();
        let t = q.twist1();
        let one = cochain(t.presentation(), 0, &[(0, "1")]);
        let got = twisted_d(t, &one).unwrap();
        assert_eq!(got, TwistedCochain::monomial(t.twist().clone(), -1).unwrap());
    }

    #[test]
    fn bad_components_are_rejected() {
        let g = btfold();
        let r = TwistedCochain::new(g.algebra(), 2, [(0, g.gen("y3").unwrap())]);
        assert!(matches!(r, Err(TwistedError::BadComponent { .. })));
    }

    #[test]
    fn gauge_examples() {
        let q = quintuple();
        let h = q.total();
        let b = q.kernel();
        let one = cochain(h, 0, &[(0, "1")]);
        assert_eq!(gauge_transform(b, &one).unwrap(), cochain(h, 0, &[(0, "1"), (-1, "y1c*y1t")]));
        let w = cochain(h, 2, &[(0, "x2c"), (1, "1")]);
        assert_eq!(gauge_transform(&Element::zero(h.algebra()), &w).unwrap(), w);
        let g = btfold();
        let err = gauge_transform(&g.gen("x2c").unwrap(), &cochain(&g, 0, &[(0, "1")]));
        assert!(matches!(err, Err(TwistedError::NotNilpotent(_))));
    }

    #[test]
    fn fm_examples() {
        let q = quintuple();
        let g1 = q.side1().base();
        let g2 = q.side2().base();
        let one = cochain(g1, 0, &[(0, "1")]);
        assert_eq!(q.transform(&one).unwrap(), cochain(g2, -1, &[(-1, "y1t")]));
        let e = cochain(g1, 1, &[(0, "y1c")]);
        assert_eq!(q.transform(&e).unwrap(), cochain(g2, 0, &[(0, "1")]));
        assert!(q.transform(&cochain(g2, 0, &[(0, "1")])).is_err() || g1 == g2);
    }

    #[test]
    fn inverse_on_samples() {
        let q = quintuple();
        let g1 = q.side1().base();
        let w = cochain(g1, 4, &[(0, "x2t^2 + y1c*y3"), (1, "x2c"), (2, "1")]);
        let back = q.inverse_transform(&q.transform(&w).unwrap()).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn reversal_composite_kernel() {
        let q = quintuple();
        let c = compose_fm(&q, &q.reversed()).unwrap();
        let h = c.total();
        let names: Vec<_> = h.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["x2c", "x2t", "y3", "y1t", "y1c_1", "y1c_2"]);
        assert_eq!(c.kernel(), &h.element("(y1c_1 - y1c_2)*y1t").unwrap());
        let g1 = q.side1().base();
        let w = cochain(g1, 3, &[(0, "y3 + y1c*x2t"), (1, "y1c")]);
        let seq = q.reversed().transform(&q.transform(&w).unwrap()).unwrap();
        assert_eq!(c.transform(&w).unwrap(), seq);
    }

    #[test]
    fn windowed_cocycles_are_closed() {
        let q = quintuple();
        for class in 0..2 {
            let z = twisted_cocycles(q.twist1(), class, 6);
            assert!(!z.is_empty());
            for w in &z {
                assert!(twisted_d(q.twist1(), w).unwrap().is_zero());
                assert!(twisted_d(q.twist2(), &q.transform(w).unwrap()).unwrap().is_zero());
            }
            let h = twisted_cohomology(q.twist1(), class, 6);
            assert_eq!(h.cocycle_dim, z.len());
        }
    }

    #[test]
    fn twisted_cohomology_untwisted_matches_dgca() {
        let g = btfold();
        let t = TwistSpec::untwisted(&g);
        let h = g.cohomology(8);
        for class in 0..2u32 {
            let expected: usize = (0..=8).filter(|n| n % 2 == class as usize).map(|n| h.dims[n]).sum();
            assert_eq!(twisted_cohomology(&t, class, 8).dim, expected, "class {class}");
        }
    }
}
