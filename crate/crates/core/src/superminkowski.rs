//! Clifford data for Spin(8,1), the super-Minkowski presentations and the
//! string cocycles they carry.
//!
//! The nine real 16x16 gamma matrices are Kronecker products of four 2x2
//! matrices from `{1, x, z, e}` with `x = [[0,1],[1,0]]`, `z = [[1,0],[0,-1]]`
//! and `e = [[0,-1],[1,0]]`. A deterministic backtracking search picks one
//! symmetric word (`gamma_0`, squaring to `+1`) and eight antisymmetric words
//! (squaring to `-1`) that pairwise anticommute, so
//! `gamma_a gamma_b + gamma_b gamma_a = -2 eta_ab` with `eta` mostly plus.
//!
//! On the 32-dimensional spinors `Gamma^a = [[0, g_a], [g_a, 0]]`,
//! `Gamma9A = [[0, 1], [-1, 0]]`, `Gamma9B = [[0, 1], [1, 0]]` and
//! `Gamma10 = diag(i, -i)`. The charge conjugation matrix and the index
//! lowering convention are picked from a short candidate list by requiring
//! every bilinear to be symmetric and `d mu81 = c2A c2B` to hold exactly.
//!
//! Generator naming: `e0`..`e8` (degree 1, even), `psi0`..`psi31` (degree 1,
//! odd), and the extension generators `e9A`, `e9B`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::check::Check;
use crate::constructions::{central_extension, CentralExtension, ConstructionError};
use crate::dgca::{DgcaError, Presentation};
use crate::field::{FieldKind, Scalar};
use crate::gca::{Algebra, Element, GenId, Generator};
use crate::linalg::Matrix;
use crate::random::Sampler;
use crate::tduality::{validate_config, TDualityError};
use crate::twisted::TwistedError;

pub const SPINOR_DIM: usize = 32;
const HALF: usize = 16;
const VECTOR_DIM: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuperError {
    #[error("no gamma matrices found by the word search")]
    NoGammaWords,
    #[error("gamma invariant failed: {0}")]
    Invariant(String),
    #[error("no charge-conjugation convention satisfies the invariants; tried: {0}")]
    NoConvention(String),
    #[error("element {name} has non-real coefficients: {element}")]
    NotReal { name: String, element: String },
    #[error(transparent)]
    Dgca(#[from] DgcaError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    TDuality(#[from] TDualityError),
    #[error(transparent)]
    Twisted(#[from] TwistedError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Letter {
    One,
    X,
    Z,
    E,
}

impl Letter {
    const ALL: [Letter; 4] = [Letter::One, Letter::X, Letter::Z, Letter::E];

    fn matrix(self) -> Matrix {
        match self {
            Letter::One => Matrix::from_int_rows(&[&[1, 0], &[0, 1]]),
            Letter::X => Matrix::from_int_rows(&[&[0, 1], &[1, 0]]),
            Letter::Z => Matrix::from_int_rows(&[&[1, 0], &[0, -1]]),
            Letter::E => Matrix::from_int_rows(&[&[0, -1], &[1, 0]]),
        }
    }

    fn symbol(self) -> char {
        match self {
            Letter::One => '1',
            Letter::X => 'x',
            Letter::Z => 'z',
            Letter::E => 'e',
        }
    }
}

pub type Word = [Letter; 4];

pub fn word_string(w: &Word) -> String {
    w.iter().map(|l| l.symbol()).collect()
}

pub fn word_matrix(w: &Word) -> Matrix {
    w.iter().fold(Matrix::identity(1), |acc, l| acc.kron(&l.matrix()))
}

/// Each word squares to `(-1)^(number of e factors)`.
fn word_square_sign(w: &Word) -> i64 {
    if w.iter().filter(|&&l| l == Letter::E).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Two words anticommute iff an odd number of positions hold distinct
/// non-identity letters.
fn words_anticommute(a: &Word, b: &Word) -> bool {
    a.iter().zip(b).filter(|(x, y)| **x != Letter::One && **y != Letter::One && x != y).count() % 2 == 1
}

/// First `gamma_0` (symmetric, not the identity) and eight antisymmetric
/// words, all pairwise anticommuting, in the lexicographic order of words
/// over `1 < x < z < e`.
pub fn search_gamma_words() -> Option<[Word; VECTOR_DIM]> {
    let words: Vec<Word> =
        (0..256).map(|n: usize| std::array::from_fn(|k| Letter::ALL[(n >> (2 * (3 - k))) & 3])).collect();
    let identity = [Letter::One; 4];
    let symmetric: Vec<&Word> = words.iter().filter(|w| word_square_sign(w) == 1 && **w != identity).collect();
    let antisymmetric: Vec<&Word> = words.iter().filter(|w| word_square_sign(w) == -1).collect();

    fn extend(chosen: &mut Vec<Word>, pool: &[&Word], start: usize) -> bool {
        if chosen.len() == VECTOR_DIM {
            return true;
        }
        for k in start..pool.len() {
            if chosen.iter().all(|c| words_anticommute(c, pool[k])) {
                chosen.push(*pool[k]);
                if extend(chosen, pool, k + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    for g0 in symmetric {
        let mut chosen = vec![*g0];
        if extend(&mut chosen, &antisymmetric, 0) {
            return chosen.try_into().ok();
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChargeConjugation {
    Gamma0,
    Gamma0Gamma9A,
    Gamma0Gamma9B,
    Gamma0Gamma10,
}

impl ChargeConjugation {
    pub const ALL: [ChargeConjugation; 4] = [
        ChargeConjugation::Gamma0,
        ChargeConjugation::Gamma0Gamma9A,
        ChargeConjugation::Gamma0Gamma9B,
        ChargeConjugation::Gamma0Gamma10,
    ];
}

impl fmt::Display for ChargeConjugation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChargeConjugation::Gamma0 => "C = Gamma^0",
            ChargeConjugation::Gamma0Gamma9A => "C = Gamma^0 Gamma9A",
            ChargeConjugation::Gamma0Gamma9B => "C = Gamma^0 Gamma9B",
            ChargeConjugation::Gamma0Gamma10 => "C = Gamma^0 Gamma10",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Lowering {
    MostlyPlus,
    MostlyMinus,
}

impl fmt::Display for Lowering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lowering::MostlyPlus => "lowering with eta = diag(-1, +1, ..., +1)",
            Lowering::MostlyMinus => "lowering with eta = diag(+1, -1, ..., -1)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConventionAttempt {
    pub charge: ChargeConjugation,
    pub lowering: Lowering,
    pub accepted: bool,
    pub outcome: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaData {
    words: [Word; VECTOR_DIM],
    gamma: Vec<Matrix>,
    eta: [i64; VECTOR_DIM],
    upper: Vec<Matrix>,
    g9a: Matrix,
    g9b: Matrix,
    g10: Matrix,
    charge: ChargeConjugation,
    lowering: Lowering,
    c: Matrix,
    attempts: Vec<ConventionAttempt>,
}

impl GammaData {
    /// Matrices from the word search, with the charge conjugation and
    /// lowering given explicitly (no convention search).
    pub fn with_convention(charge: ChargeConjugation, lowering: Lowering) -> Result<GammaData, SuperError> {
        let words = search_gamma_words().ok_or(SuperError::NoGammaWords)?;
        let gamma: Vec<Matrix> = words.iter().map(word_matrix).collect();
        let zero = Matrix::zeros(HALF, HALF);
        let one = Matrix::identity(HALF);
        let upper: Vec<Matrix> = gamma.iter().map(|g| Matrix::block(&zero, g, g, &zero)).collect();
        let g9a = Matrix::block(&zero, &one, &one.scale(&Scalar::from_int(-1)), &zero);
        let g9b = Matrix::block(&zero, &one, &one, &zero);
        let i = Scalar::i();
        let g10 = Matrix::block(&one.scale(&i), &zero, &zero, &one.scale(&-&i));
        let mut eta = [1; VECTOR_DIM];
        eta[0] = -1;
        let c = match charge {
            ChargeConjugation::Gamma0 => upper[0].clone(),
            ChargeConjugation::Gamma0Gamma9A => upper[0].mul(&g9a),
            ChargeConjugation::Gamma0Gamma9B => upper[0].mul(&g9b),
            ChargeConjugation::Gamma0Gamma10 => upper[0].mul(&g10),
        };
        Ok(GammaData { words, gamma, eta, upper, g9a, g9b, g10, charge, lowering, c, attempts: Vec::new() })
    }

    pub fn words(&self) -> &[Word; VECTOR_DIM] {
        &self.words
    }

    /// The 16x16 matrix `gamma_a`.
    pub fn gamma(&self, a: usize) -> &Matrix {
        &self.gamma[a]
    }

    pub fn eta(&self) -> &[i64; VECTOR_DIM] {
        &self.eta
    }

    /// `Gamma^a`, 32x32.
    pub fn upper(&self, a: usize) -> &Matrix {
        &self.upper[a]
    }

    /// `Gamma_a = eta_aa Gamma^a` under the chosen lowering.
    pub fn lower(&self, a: usize) -> Matrix {
        let sign = match self.lowering {
            Lowering::MostlyPlus => self.eta[a],
            Lowering::MostlyMinus => -self.eta[a],
        };
        self.upper[a].scale(&Scalar::from_int(sign))
    }

    pub fn gamma9a(&self) -> &Matrix {
        &self.g9a
    }

    pub fn gamma9b(&self) -> &Matrix {
        &self.g9b
    }

    pub fn gamma10(&self) -> &Matrix {
        &self.g10
    }

    pub fn charge_conjugation(&self) -> &Matrix {
        &self.c
    }

    pub fn convention(&self) -> (ChargeConjugation, Lowering) {
        (self.charge, self.lowering)
    }

    pub fn attempts(&self) -> &[ConventionAttempt] {
        &self.attempts
    }

    pub fn symmetry(&self, m: &Matrix) -> Symmetry {
        let cm = self.c.mul(m);
        if cm.is_symmetric() {
            Symmetry::Symmetric
        } else if cm.is_antisymmetric() {
            Symmetry::Antisymmetric
        } else {
            Symmetry::Neither
        }
    }

    /// The matrices whose bilinears enter `de^a`, `c2A`, `c2B` and `mu81`.
    fn bilinear_matrices(&self) -> Vec<(String, Matrix)> {
        let mut out: Vec<(String, Matrix)> =
            (0..VECTOR_DIM).map(|a| (format!("C Gamma^{a}"), self.upper[a].clone())).collect();
        out.push(("C Gamma9A".into(), self.g9a.clone()));
        out.push(("C Gamma9B".into(), self.g9b.clone()));
        out.extend((0..VECTOR_DIM).map(|a| (format!("C Gamma_{a} Gamma10"), self.lower(a).mul(&self.g10))));
        out.push(("C Gamma9A Gamma10".into(), self.g9a.mul(&self.g10)));
        out
    }

    /// Every structural invariant: the 45 anticommutators, the block forms,
    /// `Gamma9B = i Gamma9A Gamma10`, the extended anticommutation of
    /// `Gamma9A` and `Gamma10` with the `Gamma^a`, and the symmetry of every
    /// bilinear matrix.
    pub fn verify(&self) -> Vec<Check> {
        let mut out = Vec::new();
        let id16 = Matrix::identity(HALF);
        for a in 0..VECTOR_DIM {
            for b in a..VECTOR_DIM {
                let anti = self.gamma[a].mul(&self.gamma[b]).add(&self.gamma[b].mul(&self.gamma[a]));
                let expected =
                    if a == b { id16.scale(&Scalar::from_int(-2 * self.eta[a])) } else { Matrix::zeros(HALF, HALF) };
                out.push(Check::new(
                    format!("anticommutator gamma_{a} gamma_{b}"),
                    anti == expected,
                    if a == b { format!("= {}*I", -2 * self.eta[a]) } else { "= 0".into() },
                ));
            }
        }
        let zero = Matrix::zeros(HALF, HALF);
        for a in 0..VECTOR_DIM {
            let u = &self.upper[a];
            let ok = u.sub_block(0, 0) == zero
                && u.sub_block(1, 1) == zero
                && u.sub_block(0, 1) == self.gamma[a]
                && u.sub_block(1, 0) == self.gamma[a];
            out.push(Check::new(format!("block form Gamma^{a}"), ok, "[[0, gamma], [gamma, 0]]"));
        }
        let minus = Scalar::from_int(-1);
        let i = Scalar::i();
        let blocks = |m: &Matrix| [m.sub_block(0, 0), m.sub_block(0, 1), m.sub_block(1, 0), m.sub_block(1, 1)];
        out.push(Check::new(
            "block form Gamma9A",
            blocks(&self.g9a) == [zero.clone(), id16.clone(), id16.scale(&minus), zero.clone()],
            "[[0, I], [-I, 0]]",
        ));
        out.push(Check::new(
            "block form Gamma9B",
            blocks(&self.g9b) == [zero.clone(), id16.clone(), id16.clone(), zero.clone()],
            "[[0, I], [I, 0]]",
        ));
        out.push(Check::new(
            "block form Gamma10",
            blocks(&self.g10) == [id16.scale(&i), zero.clone(), zero.clone(), id16.scale(&-&i)],
            "diag(iI, -iI)",
        ));
        let residual = self.g9b.sub(&self.g9a.mul(&self.g10).scale(&i));
        out.push(Check::new("Gamma9B = i Gamma9A Gamma10", residual.is_zero(), "difference is the zero matrix"));
        let id32 = Matrix::identity(SPINOR_DIM);
        for (name, m) in [("Gamma9A", &self.g9a), ("Gamma10", &self.g10)] {
            out.push(Check::new(format!("{name}^2 = -I"), m.mul(m) == id32.scale(&minus), ""));
            let ok = self.upper.iter().all(|u| u.mul(m).add(&m.mul(u)).is_zero());
            out.push(Check::new(format!("{name} anticommutes with every Gamma^a"), ok, ""));
        }
        out.push(Check::new(
            "Gamma9A anticommutes with Gamma10",
            self.g9a.mul(&self.g10).add(&self.g10.mul(&self.g9a)).is_zero(),
            "",
        ));
        for (name, m) in self.bilinear_matrices() {
            let s = self.symmetry(&m);
            out.push(Check::new(format!("{name} symmetric"), s == Symmetry::Symmetric, format!("{s:?}")));
        }
        out
    }
}

/// The three super-Minkowski presentations and the string cocycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperMinkowski {
    gamma: GammaData,
    base: Presentation,
    iia: CentralExtension,
    iib: CentralExtension,
    c2a: Element,
    c2b: Element,
    mu81: Element,
    mu_iia: Element,
    mu_iib: Element,
}

fn psi_id(alpha: usize) -> GenId {
    VECTOR_DIM + alpha
}

/// `scale * (C M)_(alpha beta) psi^alpha psi^beta` in `alg`, whose
/// generators must start with `e0..e8, psi0..psi31`.
fn bilinear_in(alg: &Arc<Algebra>, c: &Matrix, m: &Matrix, scale: &Scalar) -> Element {
    let cm = c.mul(m);
    let mut out = Element::zero(alg);
    for alpha in 0..SPINOR_DIM {
        for beta in alpha..SPINOR_DIM {
            let coeff =
                if alpha == beta { cm.get(alpha, alpha).clone() } else { cm.get(alpha, beta) + cm.get(beta, alpha) };
            if coeff.is_zero() {
                continue;
            }
            let product =
                if alpha == beta { vec![(psi_id(alpha), 2)] } else { vec![(psi_id(alpha), 1), (psi_id(beta), 1)] };
            out = out + Element::from_product(alg, &coeff * scale, &product);
        }
    }
    out
}

fn certify_real(name: &str, e: &Element) -> Result<(), SuperError> {
    if e.is_real() {
        Ok(())
    } else {
        Err(SuperError::NotReal { name: name.into(), element: e.to_string() })
    }
}

impl SuperMinkowski {
    /// Assemble the presentations and cocycles for fixed gamma data. The
    /// identity `d mu81 = c2A c2B` is not assumed here.
    pub fn assemble(gamma: GammaData) -> Result<SuperMinkowski, SuperError> {
        let mut gens: Vec<Generator> = (0..VECTOR_DIM).map(|a| Generator::even(format!("e{a}"), 1)).collect();
        gens.extend((0..SPINOR_DIM).map(|alpha| Generator::odd(format!("psi{alpha}"), 1)));
        let alg = Algebra::new(FieldKind::Gaussian, gens).map_err(DgcaError::from)?;
        let one = Scalar::one();
        let mut d: Vec<Element> = Vec::new();
        for a in 0..VECTOR_DIM {
            let de = bilinear_in(&alg, &gamma.c, &gamma.upper[a], &one);
            certify_real(&format!("de{a}"), &de)?;
            d.push(de);
        }
        d.extend((0..SPINOR_DIM).map(|_| Element::zero(&alg)));
        let base = Presentation::verified(alg.clone(), d)?;
        let c2a = bilinear_in(&alg, &gamma.c, &gamma.g9a, &one);
        let c2b = bilinear_in(&alg, &gamma.c, &gamma.g9b, &one);
        certify_real("c2A", &c2a)?;
        certify_real("c2B", &c2b)?;
        let minus_i = -&Scalar::i();
        let mut mu81 = Element::zero(&alg);
        for a in 0..VECTOR_DIM {
            let bil = bilinear_in(&alg, &gamma.c, &gamma.lower(a).mul(&gamma.g10), &minus_i);
            mu81 = mu81 + bil * Element::generator(&alg, a);
        }
        certify_real("mu81", &mu81)?;
        let iia = central_extension(&base, &c2a, "e9A")?;
        let iib = central_extension(&base, &c2b, "e9B")?;
        let bil_a = bilinear_in(iia.total().algebra(), &gamma.c, &gamma.g9a.mul(&gamma.g10), &minus_i);
        let mu_iia = iia.pullback(&mu81) + bil_a * iia.fiber_element();
        let mu_iib = iib.pullback(&mu81) - iib.pullback(&c2a) * iib.fiber_element();
        certify_real("mu_IIA", &mu_iia)?;
        certify_real("mu_IIB", &mu_iib)?;
        Ok(SuperMinkowski { gamma, base, iia, iib, c2a, c2b, mu81, mu_iia, mu_iib })
    }

    pub fn gamma(&self) -> &GammaData {
        &self.gamma
    }

    /// `R^{8,1|16+16}`.
    pub fn base(&self) -> &Presentation {
        &self.base
    }

    /// `R^{9,1|16+16bar}`, the extension by `c2A` with fiber `e9A`.
    pub fn iia(&self) -> &CentralExtension {
        &self.iia
    }

    /// `R^{9,1|16+16}`, the extension by `c2B` with fiber `e9B`.
    pub fn iib(&self) -> &CentralExtension {
        &self.iib
    }

    pub fn c2a(&self) -> &Element {
        &self.c2a
    }

    pub fn c2b(&self) -> &Element {
        &self.c2b
    }

    pub fn mu81(&self) -> &Element {
        &self.mu81
    }

    pub fn mu_iia(&self) -> &Element {
        &self.mu_iia
    }

    pub fn mu_iib(&self) -> &Element {
        &self.mu_iib
    }

    /// `scale * psibar M psi` on the base presentation.
    pub fn bilinear(&self, m: &Matrix, scale: &Scalar) -> Element {
        bilinear_in(self.base.algebra(), &self.gamma.c, m, scale)
    }

    /// `d mu81 - c2A c2B`.
    pub fn quartic_residual(&self) -> Element {
        self.base.d(&self.mu81) - &self.c2a * &self.c2b
    }

    /// Presentation and cocycle identities.
    pub fn verify(&self) -> Vec<Check> {
        let mut out = Vec::new();
        for (name, p) in
            [("R^{8,1|16+16}", &self.base), ("R^{9,1|16+16bar}", self.iia.total()), ("R^{9,1|16+16}", self.iib.total())]
        {
            let detail = match p.verify_d_squared() {
                Ok(()) => "d^2 = 0".to_string(),
                Err(f) => format!("d^2 fails at generator {}: {}", f.generator, f.residual),
            };
            out.push(Check::new(format!("d^2 = 0 on {name}"), p.verify_d_squared().is_ok(), detail));
        }
        let de9a = self.iia.total().d(&self.iia.fiber_element());
        out.push(Check::equal("de9A = psibar Gamma9A psi", &de9a, &self.iia.pullback(&self.c2a)));
        let de9b = self.iib.total().d(&self.iib.fiber_element());
        out.push(Check::equal("de9B = psibar Gamma9B psi", &de9b, &self.iib.pullback(&self.c2b)));
        out.push(Check::new(
            "c2A, c2B linearly independent cocycles",
            independent(&self.c2a, &self.c2b) && self.base.d(&self.c2a).is_zero() && self.base.d(&self.c2b).is_zero(),
            format!("{} and {} terms", self.c2a.len(), self.c2b.len()),
        ));
        let reals = [&self.c2a, &self.c2b, &self.mu81, &self.mu_iia, &self.mu_iib];
        out.push(Check::new(
            "bilinears and mu cocycles have real coefficients",
            reals.iter().all(|e| e.is_real()) && self.base.differentials().iter().all(Element::is_real),
            "",
        ));
        out.push(Check::residual("d mu81 = c2A c2B", &self.quartic_residual()));
        out.push(Check::residual("d mu_IIA = 0", &self.iia.total().d(&self.mu_iia)));
        out.push(Check::residual("d mu_IIB = 0", &self.iib.total().d(&self.mu_iib)));
        let alt = self.iia.pullback(&self.mu81) - self.iia.fiber_element() * self.iia.pullback(&self.c2b);
        out.push(Check::equal("mu81 - e9A c2B = mu_IIA", &alt, &self.mu_iia));
        out
    }

    /// The super T-duality pipeline: derive the quintuple from
    /// `(c2A, c2B, mu81)`, compare it with the IIA/IIB data, and check
    /// `u Phi_{-b} Phi_b = id` (and the reverse composite) on `samples`
    /// random cochains with components of degree at most `window`.
    pub fn hori(&self, seed: u64, samples: usize, window: u32) -> Result<Vec<Check>, SuperError> {
        let cfg = validate_config(&self.base, &self.c2a, &self.c2b, &self.mu81)?;
        let q = cfg.derive_quintuple(("e9A", "e9B"))?;
        let mut out = vec![Check::pass("T-duality configuration (c2A, c2B, mu81)", "dmu81 = c2A c2B")];
        out.push(Check::equal("a1 = mu_IIA", q.a1(), &self.mu_iia));
        out.push(Check::equal("a2 = mu_IIB", q.a2(), &self.mu_iib));
        let fp = q.fiber_product();
        out.push(Check::equal("kernel = e9A e9B", q.kernel(), &fp.total().element("e9A*e9B")?));
        out.push(Check::residual("kernel relation", &q.kernel_residual()));
        let phi = q.quintuple();
        let mut sampler = Sampler::new(seed);
        let (mut forward, mut backward) = (0, 0);
        let mut failure = None;
        for k in 0..samples {
            let degree = (k % 4) as i64 - 1;
            let w = sampler.cochain(phi.side1().base().algebra(), degree, window, 3);
            if phi.inverse_transform(&phi.transform(&w)?)? == w {
                forward += 1;
            } else {
                failure.get_or_insert(format!("u Phi_-b Phi_b fails on {w}"));
            }
            let v = sampler.cochain(phi.side2().base().algebra(), degree, window, 3);
            if phi.transform(&phi.inverse_transform(&v)?)? == v {
                backward += 1;
            } else {
                failure.get_or_insert(format!("Phi_b u Phi_-b fails on {v}"));
            }
        }
        out.push(Check::new(
            format!("u Phi_-b Phi_b = id on {samples} random cochains"),
            forward == samples,
            failure.clone().unwrap_or_else(|| format!("{forward}/{samples}, window {window}, seed {seed}")),
        ));
        out.push(Check::new(
            format!("Phi_b u Phi_-b = id on {samples} random cochains"),
            backward == samples,
            failure.unwrap_or_else(|| format!("{backward}/{samples}, window {window}, seed {seed}")),
        ));
        Ok(out)
    }
}

fn independent(a: &Element, b: &Element) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    let (m, c) = a.terms().next().expect("nonzero");
    let ratio = b.coefficient(m).checked_div(c).expect("nonzero coefficient");
    a.scale(&ratio) != *b
}

/// Try each charge conjugation candidate with each lowering, in order, and
/// keep the first whose bilinear matrices are all symmetric and for which
/// `d mu81 = c2A c2B` holds exactly.
pub fn build_superminkowski() -> Result<SuperMinkowski, SuperError> {
    let mut attempts = Vec::new();
    for charge in ChargeConjugation::ALL {
        for lowering in [Lowering::MostlyPlus, Lowering::MostlyMinus] {
            let gamma = GammaData::with_convention(charge, lowering)?;
            if attempts.is_empty() {
                if let Some(bad) = gamma.verify().into_iter().find(|c| !c.passed && !c.name.ends_with("symmetric")) {
                    return Err(SuperError::Invariant(format!("{}: {}", bad.name, bad.detail)));
                }
            }
            let asymmetric: Vec<String> = gamma
                .bilinear_matrices()
                .into_iter()
                .filter(|(_, m)| gamma.symmetry(m) != Symmetry::Symmetric)
                .map(|(name, _)| name)
                .collect();
            let outcome = if !asymmetric.is_empty() {
                format!("rejected: not symmetric: {}", asymmetric.join(", "))
            } else {
                match SuperMinkowski::assemble(gamma.clone()) {
                    Err(e) => format!("rejected: {e}"),
                    Ok(s) => {
                        let r = s.quartic_residual();
                        if r.is_zero() {
                            attempts.push(ConventionAttempt {
                                charge,
                                lowering,
                                accepted: true,
                                outcome: "accepted".into(),
                            });
                            let mut s = s;
                            s.gamma.attempts = attempts;
                            return Ok(s);
                        }
                        format!("rejected: d mu81 - c2A c2B has {} terms", r.len())
                    }
                }
            };
            attempts.push(ConventionAttempt { charge, lowering, accepted: false, outcome });
        }
    }
    let summary = attempts.iter().map(|a| format!("{} / {}: {}", a.charge, a.lowering, a.outcome)).collect::<Vec<_>>();
    Err(SuperError::NoConvention(summary.join("; ")))
}

/// The gamma data with the convention selected by [`build_superminkowski`].
pub fn build_gamma() -> Result<GammaData, SuperError> {
    Ok(build_superminkowski()?.gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn sm() -> &'static SuperMinkowski {
        static SM: OnceLock<SuperMinkowski> = OnceLock::new();
        SM.get_or_init(|| build_superminkowski().unwrap())
    }

    #[test]
    fn word_search_result() {
        let words: Vec<String> = search_gamma_words().unwrap().iter().map(word_string).collect();
        assert_eq!(words, ["111x", "111e", "11ez", "1exz", "xezz", "zezz", "e1zz", "exxz", "ezxz"]);
    }

    #[test]
    fn word_rules_match_matrices() {
        let words = search_gamma_words().unwrap();
        for a in &words {
            let m = word_matrix(a);
            assert_eq!(m.mul(&m), Matrix::identity(16).scale(&Scalar::from_int(word_square_sign(a))));
            for b in &words {
                let (ma, mb) = (word_matrix(a), word_matrix(b));
                assert_eq!(ma.mul(&mb).add(&mb.mul(&ma)).is_zero(), a != b && words_anticommute(a, b));
            }
        }
    }

    #[test]
    fn gamma_invariants() {
        let s = sm();
        let checks = s.gamma().verify();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(checks.iter().filter(|c| c.name.starts_with("anticommutator")).count(), 45);
        let g = s.gamma();
        assert_eq!(g.gamma(1).mul(g.gamma(1)), Matrix::identity(16).scale(&Scalar::from_int(-1)));
        assert_eq!(g.gamma(0).mul(g.gamma(0)), Matrix::identity(16));
        assert_eq!(g.convention(), (ChargeConjugation::Gamma0, Lowering::MostlyPlus));
    }

    #[test]
    fn bilinear_examples() {
        let s = sm();
        let g = s.gamma();
        assert_eq!(s.bilinear(g.gamma9a(), &Scalar::one()), *s.c2a());
        // C is symmetric, so M = I gives a nonzero bilinear.
        assert!(!s.bilinear(&Matrix::identity(SPINOR_DIM), &Scalar::one()).is_zero());
        let e = g.upper(1).mul(g.upper(2));
        assert_eq!(g.symmetry(&e), Symmetry::Antisymmetric);
        assert!(s.bilinear(&e, &Scalar::one()).is_zero());
    }

    #[test]
    fn presentations_and_cocycles() {
        let checks = sm().verify();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn rejected_conventions_are_recorded() {
        let wrong = GammaData::with_convention(ChargeConjugation::Gamma0, Lowering::MostlyMinus).unwrap();
        let s = SuperMinkowski::assemble(wrong).unwrap();
        assert!(!s.quartic_residual().is_zero());
        let attempts = sm().gamma().attempts();
        assert_eq!(attempts.len(), 1);
        assert!(attempts[0].accepted);
    }

    #[test]
    fn hori_small_sample() {
        let checks = sm().hori(11, 6, 3).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }
}
