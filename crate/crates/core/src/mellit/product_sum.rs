//! Lazily expanded sums of factored products.
//!
//! Every coefficient produced by the plethystic logarithm of the hook series
//! is a rational combination of products of hook terms and their power
//! substitutions. [`ProductSum`] keeps exactly that shape: a map from a
//! multiset of factors (with signed exponents) to a rational coefficient.
//! Ring operations only touch factor lists; the polynomial expansion happens
//! once, in [`ProductSum::normalize`].
//!
//! Denominator binomials `z^m - q^n` are split into homogenized cyclotomic
//! pieces `Φ_e(z^a, q^l)` with `gcd(a, l) = 1`, since
//! `x^d - y^d = Π_{e | d} Φ_e(x, y)`. Power substitution maps such pieces to
//! products of pieces on the same base `(a, l)`, so denominators of all
//! terms share a small common multiple.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::algebra::{AlgebraError, LaurentPoly, Monomial, Rational, SeriesCoeff, VarId};

/// One factor of a product.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Factor {
    /// `Φ_index(z^z_exp, Q^q_exp)` with `Q` the image of `q`.
    Cyclo { z_exp: u32, q_exp: u32, index: u32 },
    /// A sign-normalized polynomial (used for numerator binomials).
    Poly(LaurentPoly),
}

type Key = Vec<(Factor, i32)>;

/// A finite sum `Σ c_i Π_j f_ij^{e_ij}` of factored products.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductSum {
    genus: usize,
    // Image of `q` in the polynomial ring; cyclotomic factors are realized
    // against it. Must be a monomial with coefficient 1 so that power
    // substitution commutes with the realization.
    q_image: Monomial,
    terms: BTreeMap<Key, Rational>,
}

impl ProductSum {
    pub fn zero(genus: usize, q_image: Monomial) -> Self {
        ProductSum {
            genus,
            q_image,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(genus: usize, q_image: Monomial) -> Self {
        let mut s = Self::zero(genus, q_image);
        s.terms.insert(Vec::new(), Rational::ONE);
        s
    }

    /// A single product `c · Π f^e`.
    pub fn product(
        genus: usize,
        q_image: Monomial,
        c: Rational,
        factors: impl IntoIterator<Item = (Factor, i32)>,
    ) -> Self {
        let mut s = Self::zero(genus, q_image);
        let mut c = c;
        let mut key: Key = Vec::new();
        for (f, e) in factors {
            let f = match f {
                Factor::Poly(p) => {
                    assert_eq!(p.genus(), genus);
                    let (p, flipped) = p.sign_normalized();
                    if flipped && e % 2 != 0 {
                        c = -c;
                    }
                    Factor::Poly(p)
                }
                cyclo => cyclo,
            };
            key = mul_keys(&key, &[(f, e)]);
        }
        if !c.is_zero() {
            s.terms.insert(key, c);
        }
        s
    }

    /// `(z^z_exp - Q^q_exp)^e` as cyclotomic pieces.
    pub fn binomial_power(z_exp: u32, q_exp: u32, e: i32) -> Vec<(Factor, i32)> {
        assert!(z_exp + q_exp > 0, "z^0 - q^0 vanishes");
        let d = gcd(z_exp, q_exp);
        divisors(d)
            .into_iter()
            .map(|index| {
                (
                    Factor::Cyclo {
                        z_exp: z_exp / d,
                        q_exp: q_exp / d,
                        index,
                    },
                    e,
                )
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_ring(&self, other: &Self) {
        assert_eq!(self.genus, other.genus, "product sums over different rings");
        assert_eq!(self.q_image, other.q_image, "product sums over different rings");
    }

    fn insert(&mut self, key: Key, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Realizes one factor as a polynomial.
    pub fn realize(&self, f: &Factor) -> LaurentPoly {
        match f {
            Factor::Poly(p) => p.clone(),
            Factor::Cyclo { z_exp, q_exp, index } => {
                let coeffs = cyclotomic(*index);
                let deg = coeffs.len() as i32 - 1;
                let x = Monomial::var(VarId::Z, *z_exp as i32);
                let y = self.q_image.pow(*q_exp as i32);
                let terms = coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(j, c)| (x.pow(j as i32).mul(&y.pow(deg - j as i32)), Rational::from_i64(*c)));
                LaurentPoly::from_terms(self.genus, terms)
            }
        }
    }

    /// Expands to a Laurent polynomial, failing if the sum is not one.
    ///
    /// All terms are brought over the least common multiple of their
    /// cyclotomic denominators, summed, and the common denominator is then
    /// cancelled factor by factor with exact division.
    pub fn normalize(&self) -> Result<LaurentPoly, AlgebraError> {
        let mut common: BTreeMap<&Factor, i32> = BTreeMap::new();
        for key in self.terms.keys() {
            for (f, e) in key {
                if *e < 0 {
                    assert!(
                        matches!(f, Factor::Cyclo { .. }),
                        "only cyclotomic factors may sit in a denominator"
                    );
                    let slot = common.entry(f).or_insert(0);
                    *slot = (*slot).max(-e);
                }
            }
        }
        let mut realized: BTreeMap<&Factor, LaurentPoly> = BTreeMap::new();
        for key in self.terms.keys() {
            for (f, _) in key {
                realized.entry(f).or_insert_with(|| self.realize(f));
            }
        }

        let mut parts: Vec<LaurentPoly> = Vec::with_capacity(self.terms.len());
        for (key, c) in &self.terms {
            let mut exps: BTreeMap<&Factor, i32> = common.iter().map(|(f, e)| (*f, *e)).collect();
            for (f, e) in key {
                *exps.entry(f).or_insert(0) += e;
            }
            // Cyclotomic pieces (few variables) first, numerator binomials last,
            // so the large intermediate products appear as late as possible.
            let mut ordered: Vec<(&Factor, i32)> = exps.into_iter().filter(|(_, e)| *e > 0).collect();
            ordered.sort_by_key(|(f, _)| matches!(f, Factor::Poly(_)));
            let mut acc = LaurentPoly::constant(self.genus, c.clone());
            for (f, e) in ordered {
                let p = &realized[f];
                for _ in 0..e {
                    acc = &acc * p;
                }
            }
            parts.push(acc);
        }
        let mut sum = sum_all(parts, self.genus);

        for (f, e) in common {
            let d = &realized[f];
            for _ in 0..e {
                sum = sum.exact_divide(d).map_err(|err| match err {
                    AlgebraError::NotDivisible { divisor, remainder } => {
                        AlgebraError::NotPolynomial { divisor, remainder }
                    }
                    other => other,
                })?;
            }
        }
        Ok(sum)
    }
}

fn sum_all(mut parts: Vec<LaurentPoly>, genus: usize) -> LaurentPoly {
    if parts.is_empty() {
        return LaurentPoly::zero(genus);
    }
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a + &b),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.pop().unwrap()
}

/// Product of two sorted factor lists, adding exponents.
fn mul_keys(a: &[(Factor, i32)], b: &[(Factor, i32)]) -> Key {
    let mut out: Key = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push(b[j].clone());
            j += 1;
        } else {
            let e = a[i].1 + b[j].1;
            if e != 0 {
                out.push((a[i].0.clone(), e));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SeriesCoeff for ProductSum {
    fn zero_like(&self) -> Self {
        Self::zero(self.genus, self.q_image)
    }

    fn one_like(&self) -> Self {
        Self::one(self.genus, self.q_image)
    }

    fn add(&self, other: &Self) -> Self {
        self.same_ring(other);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        let mut out = self.zero_like();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                out.insert(mul_keys(ka, kb), ca * cb);
            }
        }
        out
    }

    fn scale(&self, c: &Rational) -> Self {
        let mut out = self.zero_like();
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        out
    }

    fn adams(&self, k: u32) -> Self {
        let mut out = self.zero_like();
        for (key, c) in &self.terms {
            let mut c = c.clone();
            let mut new_key: Key = Vec::new();
            for (f, e) in key {
                match f {
                    Factor::Cyclo { z_exp, q_exp, index } => {
                        let pieces: Key = cyclotomic_adams(*index, k)
                            .into_iter()
                            .map(|m| {
                                (
                                    Factor::Cyclo {
                                        z_exp: *z_exp,
                                        q_exp: *q_exp,
                                        index: m,
                                    },
                                    *e,
                                )
                            })
                            .collect();
                        new_key = mul_keys(&new_key, &sorted(pieces));
                    }
                    Factor::Poly(p) => {
                        let (p, flipped) = p.substitute_powers(k).sign_normalized();
                        if flipped && e % 2 != 0 {
                            c = -c;
                        }
                        new_key = mul_keys(&new_key, &[(Factor::Poly(p), *e)]);
                    }
                }
            }
            out.insert(new_key, c);
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Structural: a single empty product with coefficient 1.
    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Vec::new()).is_some_and(|c| c.is_one())
    }
}

fn sorted(mut k: Key) -> Key {
    k.sort_by(|a, b| a.0.cmp(&b.0));
    k
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Indices `m` with `Φ_n(x^k) = Π_m Φ_m(x)`: the primitive `m`-th roots of
/// unity `ω` are exactly those with `ω^k` primitive of order `n`.
pub fn cyclotomic_adams(n: u32, k: u32) -> Vec<u32> {
    divisors(n * k).into_iter().filter(|&m| m / gcd(m, k) == n).collect()
}

/// Integer coefficients of the cyclotomic polynomial `Φ_n`, lowest degree first.
pub fn cyclotomic(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1
    let mut p = alloc::vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        p = div_monic(&p, &cyclotomic(d));
    }
    p
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let qd = rem.len() - 1 - dd;
    let mut quot = alloc::vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build::*;
    use alloc::vec;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(2), vec![1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn adams_on_cyclotomic_indices() {
        // Φ_1(x^2) = x^2 - 1 = Φ_1 Φ_2; Φ_2(x^2) = Φ_4; Φ_3(x^2) = Φ_3 Φ_6.
        assert_eq!(cyclotomic_adams(1, 2), vec![1, 2]);
        assert_eq!(cyclotomic_adams(2, 2), vec![4]);
        assert_eq!(cyclotomic_adams(3, 2), vec![3, 6]);
        assert_eq!(cyclotomic_adams(2, 3), vec![2, 6]);
    }

    #[test]
    fn binomial_splitting_realizes_the_binomial() {
        let g = 0;
        let qm = Monomial::var(VarId::Q, 1);
        for (a, l) in [(1, 0), (0, 1), (2, 2), (4, 6), (3, 1), (6, 4)] {
            let s = ProductSum::product(g, qm, Rational::ONE, ProductSum::binomial_power(a, l, 1));
            let expected = &z(g).pow(a) - &q(g).pow(l);
            // The product equals z^a - q^l; normalize with no denominators just expands.
            assert_eq!(s.normalize().unwrap(), expected, "z^{a} - q^{l}");
        }
    }

    #[test]
    fn adams_commutes_with_realization() {
        let g = 1;
        let qm = Monomial::var(VarId::Q, 1);
        let num = Factor::Poly(&z(g) - &alpha(g, 1));
        let mut factors = vec![(num, 1)];
        factors.extend(ProductSum::binomial_power(2, 2, 1));
        let s = ProductSum::product(g, qm, Rational::new(3, 2), factors);
        for k in 1..=4 {
            let lhs = s.adams(k).normalize().unwrap();
            let rhs = s.normalize().unwrap().substitute_powers(k);
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    #[test]
    fn normalization_cancels_and_detects_failure() {
        let g = 0;
        let qm = Monomial::var(VarId::Q, 1);
        // (z^2 - 1) / (z - 1) = z + 1
        let mut f = ProductSum::binomial_power(2, 0, 1);
        f.extend(ProductSum::binomial_power(1, 0, -1));
        let s = ProductSum::product(g, qm, Rational::ONE, f);
        assert_eq!(s.normalize().unwrap(), &z(g) + &c(g, 1));
        // 1 / (z - 1) is not a polynomial.
        let s = ProductSum::product(g, qm, Rational::ONE, ProductSum::binomial_power(1, 0, -1));
        assert!(matches!(s.normalize(), Err(AlgebraError::NotPolynomial { .. })));
        // 1/(z-1) - 1/(z-1) = 0 cancels structurally.
        let neg = s.scale(&Rational::from_i64(-1));
        assert!(s.add(&neg).is_zero());
    }
}
