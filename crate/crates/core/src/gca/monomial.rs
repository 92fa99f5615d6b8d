use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::{Algebra, GenId, Parity};

pub(crate) type Factors = SmallVec<[(u32, u32); 4]>;

/// A canonical monomial: factors sorted strictly ascending by generator id,
/// square-zero generators appearing with exponent 1 only.
///
/// Monomials are ordered by total degree first, then by exponent vector with
/// larger exponents on earlier generators coming first, so that in degree 4
/// over `a, b` of degree 2 the order is `a^2 < a*b < b^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    parity: u8,
    factors: Factors,
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (&(ia, ea), &(ib, eb)) in self.factors.iter().zip(other.factors.iter()) {
                if ia != ib {
                    return ia.cmp(&ib);
                }
                if ea != eb {
                    return eb.cmp(&ea);
                }
            }
            other.factors.len().cmp(&self.factors.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { degree: 0, parity: 0, factors: Factors::new() }
    }

    pub fn generator(alg: &Algebra, id: GenId) -> Monomial {
        Monomial::from_sorted(alg, [(id as u32, 1)])
    }

    /// Build from factors already in canonical order. Exponents must be
    /// positive and respect the square-zero rule.
    pub(crate) fn from_sorted(alg: &Algebra, factors: impl IntoIterator<Item = (u32, u32)>) -> Monomial {
        let factors: Factors = factors.into_iter().collect();
        let (mut degree, mut parity) = (0u32, 0u32);
        for &(id, e) in &factors {
            let g = alg.generator(id as usize);
            debug_assert!(e >= 1 && (e == 1 || !g.is_square_zero()));
            degree += e * g.degree;
            parity += e * g.parity.bit();
        }
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Monomial { degree, parity: (parity & 1) as u8, factors }
    }

    /// Canonicalize an arbitrary ordered product of generator powers.
    /// Returns `None` when the product vanishes, else the monomial and
    /// whether the reordering introduced a minus sign.
    pub fn from_product(alg: &Algebra, product: &[(GenId, u32)]) -> Option<(Monomial, bool)> {
        let mut items: Vec<(u32, u32)> = product.iter().filter(|&&(_, e)| e > 0).map(|&(g, e)| (g as u32, e)).collect();
        let mut sign = 0u32;
        for i in 1..items.len() {
            let mut j = i;
            while j > 0 && items[j - 1].0 > items[j].0 {
                let (a, b) = (items[j - 1], items[j]);
                sign ^= alg.swap_weight(a.0 as usize, a.1, b.0 as usize, b.1);
                items.swap(j - 1, j);
                j -= 1;
            }
        }
        let mut merged: Factors = Factors::new();
        for (id, e) in items {
            match merged.last_mut() {
                Some(last) if last.0 == id => last.1 += e,
                _ => merged.push((id, e)),
            }
        }
        if merged.iter().any(|&(id, e)| e > 1 && alg.generator(id as usize).is_square_zero()) {
            return None;
        }
        Some((Monomial::from_sorted(alg, merged), sign == 1))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn parity(&self, _alg: &Algebra) -> Parity {
        Parity::from_bit(self.parity as u32)
    }

    pub(crate) fn parity_bit(&self) -> u32 {
        self.parity as u32
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// `(generator id, exponent)` pairs in ascending id order.
    pub fn factors(&self) -> impl ExactSizeIterator<Item = (GenId, u32)> + '_ {
        self.factors.iter().map(|&(id, e)| (id as usize, e))
    }

    pub fn exponent(&self, id: GenId) -> u32 {
        self.factors.binary_search_by_key(&(id as u32), |&(g, _)| g).map(|k| self.factors[k].1).unwrap_or(0)
    }

    pub fn contains(&self, id: GenId) -> bool {
        self.exponent(id) > 0
    }

    /// Product `self * other`; `None` if it vanishes, otherwise the
    /// canonical monomial and whether a minus sign arose.
    pub fn mul(&self, other: &Monomial, alg: &Algebra) -> Option<(Monomial, bool)> {
        if other.factors.is_empty() {
            return Some((self.clone(), false));
        }
        if self.factors.is_empty() {
            return Some((other.clone(), false));
        }
        let left = &self.factors;
        // Suffix sums over the left factors of exponent-weighted degree and
        // parity bits, to charge each right factor for the factors it passes.
        let mut suffix = SmallVec::<[(u32, u32); 8]>::from_elem((0, 0), left.len() + 1);
        for k in (0..left.len()).rev() {
            let g = alg.generator(left[k].0 as usize);
            let e = left[k].1;
            suffix[k] = (suffix[k + 1].0 + e * g.degree, suffix[k + 1].1 + e * g.parity.bit());
        }
        let mut out = Factors::with_capacity(left.len() + other.factors.len());
        let mut sign = 0u32;
        let (mut i, mut j) = (0, 0);
        while i < left.len() && j < other.factors.len() {
            let (a, ea) = left[i];
            let (b, eb) = other.factors[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    let g = alg.generator(b as usize);
                    let (d, p) = suffix[i];
                    sign ^= (eb * (g.degree * d + g.parity.bit() * p)) & 1;
                    out.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    let g = alg.generator(b as usize);
                    if g.is_square_zero() {
                        return None;
                    }
                    let (d, p) = suffix[i + 1];
                    sign ^= (eb * (g.degree * d + g.parity.bit() * p)) & 1;
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&left[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Some((
            Monomial { degree: self.degree + other.degree, parity: self.parity ^ other.parity, factors: out },
            sign == 1,
        ))
    }

    /// Split at factor position `k`: returns (prefix, generator id, exponent,
    /// suffix) where prefix holds the factors before `k`.
    pub(crate) fn split_at(&self, alg: &Algebra, k: usize) -> (Monomial, GenId, u32, Monomial) {
        let (id, e) = self.factors[k];
        let prefix = Monomial::from_sorted(alg, self.factors[..k].iter().copied());
        let suffix = Monomial::from_sorted(alg, self.factors[k + 1..].iter().copied());
        (prefix, id as usize, e, suffix)
    }

    /// The monomial with the exponent of the factor at position `k` lowered by one.
    pub(crate) fn lower_at(&self, alg: &Algebra, k: usize) -> Monomial {
        let mut f = self.factors.clone();
        if f[k].1 == 1 {
            f.remove(k);
        } else {
            f[k].1 -= 1;
        }
        Monomial::from_sorted(alg, f)
    }

    pub(crate) fn factor_len(&self) -> usize {
        self.factors.len()
    }

    pub fn display<'a>(&'a self, alg: &'a Algebra) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, alg }
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    alg: &'a Algebra,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.factors.is_empty() {
            return f.write_str("1");
        }
        for (k, &(id, e)) in self.m.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            f.write_str(&self.alg.generator(id as usize).name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
