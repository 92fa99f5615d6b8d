//! Seeded sampling of homogeneous elements, closed elements and twisted
//! cochains for randomized checks. The same seed always gives the same
//! samples.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dgca::Presentation;
use crate::field::{FieldKind, Scalar};
use crate::gca::{Algebra, Element, GenId, Monomial, Parity};
use crate::twisted::TwistedCochain;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A nonzero coefficient: mostly small integers, sometimes a fraction,
    /// and over Q(i) sometimes with an imaginary part.
    pub fn coefficient(&mut self, field: FieldKind) -> Scalar {
        let small = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            if rng.gen_bool(0.2) {
                Scalar::from_ratio(n, rng.gen_range(2..=4))
            } else {
                Scalar::from_int(n)
            }
        };
        let re = small(&mut self.rng);
        if field == FieldKind::Gaussian && self.rng.gen_bool(0.25) {
            let im = small(&mut self.rng);
            &re + &(&im * &Scalar::i())
        } else {
            re
        }
    }

    /// A random monomial of the given degree (and parity, if given), or
    /// `None` if none was found.
    pub fn monomial(&mut self, alg: &Algebra, degree: u32, parity: Option<Parity>) -> Option<Monomial> {
        if degree == 0 {
            return (parity != Some(Parity::Odd)).then(Monomial::one);
        }
        for _ in 0..64 {
            let mut remaining = degree;
            let mut factors: Vec<(GenId, u32)> = Vec::new();
            while remaining > 0 {
                let choices: Vec<GenId> = (0..alg.len())
                    .filter(|&id| {
                        let g = alg.generator(id);
                        g.degree <= remaining && !(g.is_square_zero() && factors.iter().any(|&(f, _)| f == id))
                    })
                    .collect();
                let Some(&id) = choices.choose(&mut self.rng) else { break };
                remaining -= alg.generator(id).degree;
                factors.push((id, 1));
            }
            if remaining > 0 {
                continue;
            }
            let Some((m, _)) = Monomial::from_product(alg, &factors) else { continue };
            if parity.is_none_or(|p| m.parity(alg) == p) {
                return Some(m);
            }
        }
        None
    }

    /// A homogeneous element with up to `max_terms` terms; zero if no
    /// monomial of that bidegree was found.
    pub fn element(&mut self, alg: &Arc<Algebra>, degree: u32, parity: Option<Parity>, max_terms: usize) -> Element {
        let parity = parity.or_else(|| {
            let p = self.monomial(alg, degree, None)?.parity(alg);
            Some(p)
        });
        let mut out = Element::zero(alg);
        let terms = self.rng.gen_range(1..=max_terms.max(1));
        for _ in 0..terms {
            if let Some(m) = self.monomial(alg, degree, parity) {
                let c = self.coefficient(alg.field());
                out = out + Element::from_monomial(alg, m, c);
            }
        }
        out
    }

    /// A closed element of the given bidegree: `d` of a random element plus a
    /// random combination of the supplied closed representatives.
    pub fn closed_element(
        &mut self,
        p: &Presentation,
        degree: u32,
        parity: Parity,
        representatives: &[Element],
        max_terms: usize,
    ) -> Element {
        let alg = p.algebra();
        let mut out =
            if degree > 0 { p.d(&self.element(alg, degree - 1, Some(parity), max_terms)) } else { Element::zero(alg) };
        for r in representatives {
            if r.bidegree() == Some((degree, parity)) && self.rng.gen_bool(0.6) {
                out = out + r.scale(&self.coefficient(alg.field()));
            }
        }
        out
    }

    /// A twisted cochain of total degree `degree` with components of degree
    /// at most `window`.
    pub fn cochain(&mut self, alg: &Arc<Algebra>, degree: i64, window: u32, max_terms: usize) -> TwistedCochain {
        let mut comps = Vec::new();
        for n in 0..=window {
            if (degree - n as i64) % 2 != 0 || !self.rng.gen_bool(0.7) {
                continue;
            }
            let e = self.element(alg, n, Some(Parity::Even), max_terms);
            comps.push(((degree - n as i64) / 2, e));
        }
        TwistedCochain::new(alg, degree, comps).expect("components are homogeneous and even")
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty choice")
    }

    pub fn range(&mut self, lo: u32, hi: u32) -> u32 {
        self.rng.gen_range(lo..=hi)
    }
}
