//! The hook-term generating series and its plethystic logarithm.
//!
//! `Σ_r H_{g,r} T^r = (z-1)(1-q) · Log Σ_μ T^{|μ|} 𝓗_μ`, where
//!
//! ```text
//! 𝓗_μ = Π_{□∈μ} Π_i (z^{a+1} - α_i q^l)(z^a - α_i^{-1} q^{l+1})
//!               / ((z^{a+1} - q^l)(z^a - q^{l+1}))
//! ```
//!
//! and `A_{g,r} = H_{g,r}|_{z=1}`.
//!
//! Two engines compute the same coefficients. [`h_poly_reference`] runs the
//! logarithm over [`FactoredRational`] coefficients and is only practical
//! for small inputs. [`h_poly`] runs it over [`ProductSum`] coefficients,
//! which postpone all expansion to a single normalization per rank.

pub mod product_sum;

use alloc::vec::Vec;

use crate::algebra::{AlgebraError, FactoredRational, LaurentPoly, Monomial, Rational, TSeries, VarId, MAX_GENUS};
use crate::partitions::{enumerate_partitions, Partition};
pub use product_sum::{cyclotomic, cyclotomic_adams, Factor, ProductSum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MellitError {
    #[error("genus must lie in 1..={MAX_GENUS}, got {0}")]
    InvalidGenus(usize),
    #[error("rank must be at least 1")]
    InvalidRank,
    #[error("coefficient of T^{rank} is not a Laurent polynomial: {source}")]
    NotPolynomial { rank: usize, source: AlgebraError },
    #[error("coefficient of T^{rank} carries a negative power of q")]
    NegativeQPower { rank: usize },
}

/// Where the variables `q` and `α_i` of the hook terms are sent.
///
/// Images are monomials with coefficient 1, so the map commutes with every
/// power substitution `ψ_k` and may be applied before the logarithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    /// Number of `α` variables of the target ring.
    pub ring_genus: usize,
    pub q: Monomial,
    /// One image per `α_i`.
    pub alphas: Vec<Monomial>,
}

impl Realization {
    /// The identity: `q ↦ q`, `α_i ↦ α_i`.
    pub fn generic(g: usize) -> Self {
        Realization {
            ring_genus: g,
            q: Monomial::var(VarId::Q, 1),
            alphas: (1..=g as u8).map(|i| Monomial::var(VarId::Alpha(i), 1)).collect(),
        }
    }

    /// `q ↦ s·u²`, `α_i ↦ s·u` for `i ≤ g-b` and `α_i ↦ s` otherwise.
    ///
    /// Setting `s = -1` afterwards gives the real specialization
    /// `q = -t`, `α_i ∈ {-t^{1/2}, -1}`. The sign has to stay formal while
    /// `ψ_k` is applied, since `ψ_k(-u) = -u^k` but `(-u)^k` differs for even `k`.
    pub fn real_signed(g: usize, b: usize) -> Self {
        assert!(b <= g);
        let su = Monomial::from_pairs(&[(VarId::S, 1), (VarId::U, 1)]);
        let s = Monomial::var(VarId::S, 1);
        Realization {
            ring_genus: 0,
            q: Monomial::from_pairs(&[(VarId::S, 1), (VarId::U, 2)]),
            alphas: (0..g).map(|i| if i < g - b { su } else { s }).collect(),
        }
    }

    fn numerator_binomials(&self, a: u32, l: u32) -> Vec<LaurentPoly> {
        let g = self.ring_genus;
        let mut out = Vec::with_capacity(2 * self.alphas.len());
        for alpha in &self.alphas {
            let lhs = Monomial::var(VarId::Z, a as i32 + 1);
            out.push(LaurentPoly::binomial(g, lhs, alpha.mul(&self.q.pow(l as i32))));
            let lhs = Monomial::var(VarId::Z, a as i32);
            out.push(LaurentPoly::binomial(
                g,
                lhs,
                alpha.inverse().mul(&self.q.pow(l as i32 + 1)),
            ));
        }
        out
    }

    fn denominator_binomials(&self, a: u32, l: u32) -> [LaurentPoly; 2] {
        let g = self.ring_genus;
        [
            LaurentPoly::binomial(g, Monomial::var(VarId::Z, a as i32 + 1), self.q.pow(l as i32)),
            LaurentPoly::binomial(g, Monomial::var(VarId::Z, a as i32), self.q.pow(l as i32 + 1)),
        ]
    }
}

/// `𝓗_μ` as a rational function with its binomial denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct HookTerm {
    pub partition: Partition,
    pub value: FactoredRational,
}

fn arm_legs(mu: &Partition) -> impl Iterator<Item = (u32, u32)> + '_ {
    mu.boxes().map(move |b| {
        let (a, l) = mu.arm_leg(b).expect("box of the diagram");
        (a as u32, l as u32)
    })
}

/// `𝓗_μ` over the generic ring in `q, z, α_1..α_g`.
pub fn hook_term(mu: &Partition, g: usize) -> HookTerm {
    hook_term_in(mu, &Realization::generic(g))
}

/// `𝓗_μ` with `q` and the `α_i` replaced by their images.
pub fn hook_term_in(mu: &Partition, re: &Realization) -> HookTerm {
    let mut num = LaurentPoly::one(re.ring_genus);
    let mut den = Vec::new();
    for (a, l) in arm_legs(mu) {
        for p in re.numerator_binomials(a, l) {
            num = &num * &p;
        }
        den.extend(re.denominator_binomials(a, l));
    }
    let value = FactoredRational::new(num, den).expect("hook denominators are binomials");
    HookTerm {
        partition: mu.clone(),
        value,
    }
}

/// `Σ_{|μ|=n} T^n 𝓗_μ` for `n ≤ order`, each degree over its own common denominator.
pub fn omega_series(g: usize, order: usize) -> TSeries<FactoredRational> {
    omega_series_in(&Realization::generic(g), order)
}

fn omega_series_in(re: &Realization, order: usize) -> TSeries<FactoredRational> {
    let coeffs = (0..=order)
        .map(|n| {
            enumerate_partitions(n)
                .iter()
                .map(|mu| hook_term_in(mu, re).value)
                .fold(FactoredRational::zero(re.ring_genus), |acc, h| acc.add(&h))
        })
        .collect();
    TSeries::new(coeffs)
}

/// `𝓗_μ` as a single lazy product.
fn hook_product(mu: &Partition, re: &Realization) -> ProductSum {
    let mut factors = Vec::new();
    for (a, l) in arm_legs(mu) {
        factors.extend(re.numerator_binomials(a, l).into_iter().map(|p| (Factor::Poly(p), 1)));
        factors.extend(ProductSum::binomial_power(a + 1, l, -1));
        factors.extend(ProductSum::binomial_power(a, l + 1, -1));
    }
    ProductSum::product(re.ring_genus, re.q, Rational::ONE, factors)
}

/// The hook series with lazy coefficients.
pub fn omega_series_lazy(re: &Realization, order: usize) -> TSeries<ProductSum> {
    let coeffs = (0..=order)
        .map(|n| {
            enumerate_partitions(n)
                .iter()
                .map(|mu| hook_product(mu, re))
                .fold(ProductSum::zero(re.ring_genus, re.q), |acc, h| {
                    crate::algebra::SeriesCoeff::add(&acc, &h)
                })
        })
        .collect();
    TSeries::new(coeffs)
}

/// `H_{g,r}` as a Laurent polynomial in `q, z, α_i^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPoly {
    pub genus: usize,
    pub rank: usize,
    pub value: LaurentPoly,
}

/// `A_{g,r} = H_{g,r}(q, 1, α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct APoly {
    pub genus: usize,
    pub rank: usize,
    pub value: LaurentPoly,
}

fn check_inputs(g: usize, r: usize) -> Result<(), MellitError> {
    if g == 0 || g > MAX_GENUS {
        return Err(MellitError::InvalidGenus(g));
    }
    if r == 0 {
        return Err(MellitError::InvalidRank);
    }
    Ok(())
}

fn check_q_powers(p: &LaurentPoly, rank: usize) -> Result<(), MellitError> {
    match p.degree_range(VarId::Q) {
        Some((lo, _)) if lo < 0 => Err(MellitError::NegativeQPower { rank }),
        _ => Ok(()),
    }
}

/// `(z-1)(1-q)` as lazy cyclotomic factors.
fn prefactor(re: &Realization) -> ProductSum {
    let mut f = ProductSum::binomial_power(1, 0, 1);
    f.extend(ProductSum::binomial_power(0, 1, 1));
    ProductSum::product(re.ring_genus, re.q, Rational::ONE, f)
}

/// `H_{g,r}` under a realization, for every rank `1..=max_rank` at once.
///
/// The logarithm is taken once; each rank is then normalized separately.
pub fn h_polys_in(re: &Realization, max_rank: usize) -> Result<Vec<LaurentPoly>, MellitError> {
    use crate::algebra::SeriesCoeff;
    if max_rank == 0 {
        return Err(MellitError::InvalidRank);
    }
    let log = omega_series_lazy(re, max_rank)
        .pleth_log()
        .expect("hook series has constant term 1");
    let pre = prefactor(re);
    (1..=max_rank)
        .map(|r| {
            let value = pre
                .mul(log.coeff(r))
                .normalize()
                .map_err(|source| MellitError::NotPolynomial { rank: r, source })?;
            check_q_powers(&value, r)?;
            Ok(value)
        })
        .collect()
}

/// `H_{g,r}` through the lazy product-sum engine.
pub fn h_poly(g: usize, r: usize) -> Result<HPoly, MellitError> {
    check_inputs(g, r)?;
    let value = h_polys_in(&Realization::generic(g), r)?
        .pop()
        .expect("one entry per rank");
    Ok(HPoly {
        genus: g,
        rank: r,
        value,
    })
}

/// `H_{g,r}` for every rank up to `max_rank`.
pub fn h_polys(g: usize, max_rank: usize) -> Result<Vec<HPoly>, MellitError> {
    check_inputs(g, max_rank)?;
    let values = h_polys_in(&Realization::generic(g), max_rank)?;
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(i, value)| HPoly {
            genus: g,
            rank: i + 1,
            value,
        })
        .collect())
}

/// `H_{g,r}` through plain factored rational functions: the logarithm acts
/// on numerator/denominator pairs and each sum is brought over a common
/// denominator immediately. Slow; kept as an independent check of [`h_poly`].
pub fn h_poly_reference(g: usize, r: usize) -> Result<HPoly, MellitError> {
    check_inputs(g, r)?;
    let log = omega_series(g, r).pleth_log().expect("hook series has constant term 1");
    let pre = (&LaurentPoly::var(g, VarId::Z) - &LaurentPoly::one(g))
        * (&LaurentPoly::one(g) - &LaurentPoly::var(g, VarId::Q));
    let value = log
        .coeff(r)
        .mul_poly(&pre)
        .normalize()
        .map_err(|source| MellitError::NotPolynomial { rank: r, source })?;
    check_q_powers(&value, r)?;
    Ok(HPoly {
        genus: g,
        rank: r,
        value,
    })
}

impl HPoly {
    /// Sets `z = 1`.
    pub fn at_z_one(&self) -> APoly {
        APoly {
            genus: self.genus,
            rank: self.rank,
            value: self.value.eval_var(VarId::Z, &Rational::ONE),
        }
    }
}

pub fn a_poly(g: usize, r: usize) -> Result<APoly, MellitError> {
    Ok(h_poly(g, r)?.at_z_one())
}

/// `A_{g,r}` for every rank up to `max_rank`.
pub fn a_polys(g: usize, max_rank: usize) -> Result<Vec<APoly>, MellitError> {
    Ok(h_polys(g, max_rank)?.iter().map(HPoly::at_z_one).collect())
}

/// `Π_i (z - α_i)(1 - α_i^{-1} q)`, the rank-one value of `H`.
pub fn rank_one_h(g: usize) -> LaurentPoly {
    let z = LaurentPoly::var(g, VarId::Z);
    let q = LaurentPoly::var(g, VarId::Q);
    let one = LaurentPoly::one(g);
    let mut acc = one.clone();
    for i in 1..=g as u8 {
        let a = LaurentPoly::var(g, VarId::Alpha(i));
        let a_inv = LaurentPoly::monomial(g, Monomial::var(VarId::Alpha(i), -1), Rational::ONE);
        acc = acc * (&z - &a) * (&one - &(&a_inv * &q));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build::*;
    use crate::algebra::SeriesCoeff;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn hook_term_of_empty_and_single_box() {
        let g = 2;
        assert!(hook_term(&Partition::empty(), g)
            .value
            .equals(&FactoredRational::one(g)));
        let h = hook_term(&part(&[1]), g).value;
        let expected = FactoredRational::new(rank_one_h(g), [&z(g) - &c(g, 1), &c(g, 1) - &q(g)]).unwrap();
        assert!(h.equals(&expected));
        assert_eq!(h.denominator().len(), 2);
    }

    #[test]
    fn hook_term_of_a_row_of_two() {
        let g = 1;
        let a = alpha(g, 1);
        let ai = alpha_inv(g, 1);
        let one = c(g, 1);
        let num = (&z(g).pow(2) - &a) * (&z(g) - &(&ai * &q(g))) * (&z(g) - &a) * (&one - &(&ai * &q(g)));
        let den = [&z(g).pow(2) - &one, &z(g) - &q(g), &z(g) - &one, &one - &q(g)];
        let expected = FactoredRational::new(num, den).unwrap();
        assert!(hook_term(&part(&[2]), g).value.equals(&expected));
    }

    #[test]
    fn omega_low_coefficients() {
        let g = 1;
        let s = omega_series(g, 2);
        assert!(s.coeff(0).equals(&FactoredRational::one(g)));
        assert!(s.coeff(1).equals(&hook_term(&part(&[1]), g).value));
        let two = hook_term(&part(&[2]), g).value.add(&hook_term(&part(&[1, 1]), g).value);
        assert!(s.coeff(2).equals(&two));
    }

    #[test]
    fn lazy_hook_products_agree_with_factored_terms() {
        let g = 1;
        let re = Realization::generic(g);
        for n in 0..=3 {
            for mu in enumerate_partitions(n) {
                let lazy = hook_product(&mu, &re);
                let h = hook_term(&mu, g).value;
                // Multiply both by the factored denominator and compare numerators.
                let den = h.denominator_product();
                let lhs = lazy
                    .mul(&ProductSum::product(g, re.q, Rational::ONE, [(Factor::Poly(den), 1)]))
                    .normalize()
                    .unwrap();
                assert_eq!(lhs, h.numerator().clone(), "{mu}");
            }
        }
    }

    #[test]
    fn rank_one_is_the_product_of_numerator_binomials() {
        for g in 1..=4 {
            assert_eq!(h_poly(g, 1).unwrap().value, rank_one_h(g), "g = {g}");
        }
    }

    #[test]
    fn lazy_and_reference_engines_agree() {
        for (g, r) in [(1, 1), (1, 2), (1, 3), (2, 2)] {
            let lazy = h_poly(g, r).unwrap();
            let reference = h_poly_reference(g, r).unwrap();
            assert_eq!(lazy, reference, "g = {g}, r = {r}");
        }
    }

    #[test]
    fn a_poly_at_rank_one() {
        let g = 2;
        let expected = rank_one_h(g).eval_var(VarId::Z, &Rational::ONE);
        assert_eq!(a_poly(g, 1).unwrap().value, expected);
    }

    #[test]
    fn invalid_inputs() {
        assert_eq!(h_poly(0, 1), Err(MellitError::InvalidGenus(0)));
        assert_eq!(h_poly(1, 0), Err(MellitError::InvalidRank));
        assert!(matches!(h_poly(MAX_GENUS + 1, 1), Err(MellitError::InvalidGenus(_))));
    }

    #[test]
    fn pleth_exp_inverts_pleth_log_on_the_hook_series() {
        let s = omega_series(1, 3);
        let back = s.pleth_log().unwrap().pleth_exp().unwrap();
        for n in 0..=3 {
            assert!(back.coeff(n).equals(s.coeff(n)), "coefficient {n}");
        }
    }
}
