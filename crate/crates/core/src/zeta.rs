//! Betti series of the real points of symmetric products of a real curve.
//!
//! All closed forms are rational functions in `z` with polynomial
//! coefficients in `t`; they are expanded as truncated power series by
//! multiplying with the inverse series of the denominator.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::algebra::{LaurentPoly, Monomial, MonomialMap, Rational, VarId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZetaError {
    #[error("b = {b} exceeds g = {g}")]
    InvalidTopology { g: usize, b: usize },
    #[error("substituted zeta function differs from the closed form: {lhs} != {rhs}")]
    Mismatch {
        lhs: Box<LaurentPoly>,
        rhs: Box<LaurentPoly>,
    },
}

/// `Σ_{n ≤ R} c_n z^n` with coefficients polynomials in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeries {
    coeffs: Vec<LaurentPoly>,
}

fn t_pow(e: u32) -> LaurentPoly {
    LaurentPoly::monomial(0, Monomial::var(VarId::T, e as i32), Rational::ONE)
}

fn konst(c: i64) -> LaurentPoly {
    LaurentPoly::constant(0, Rational::from_i64(c))
}

impl ZSeries {
    /// The polynomial `Σ c_i z^i`, truncated at order `order`.
    pub fn from_poly(coeffs: &[LaurentPoly], order: usize) -> Self {
        let mut v: Vec<LaurentPoly> = (0..=order).map(|_| LaurentPoly::zero(0)).collect();
        for (i, c) in coeffs.iter().enumerate().take(order + 1) {
            v[i] = c.clone();
        }
        ZSeries { coeffs: v }
    }

    /// `1 + c z^k`.
    fn binomial(c: LaurentPoly, k: usize, order: usize) -> Self {
        let mut v = alloc::vec![LaurentPoly::zero(0); k + 1];
        v[0] = konst(1);
        v[k] = c;
        Self::from_poly(&v, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &LaurentPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        let r = self.order();
        let coeffs = (0..=r)
            .map(|n| {
                (0..=n).fold(LaurentPoly::zero(0), |acc, i| {
                    acc + &self.coeffs[i] * &other.coeffs[n - i]
                })
            })
            .collect();
        ZSeries { coeffs }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(self.one_like(), |acc, _| acc.mul(self))
    }

    fn one_like(&self) -> Self {
        Self::from_poly(&[konst(1)], self.order())
    }

    /// Inverse of a series with constant term 1.
    pub fn inverse(&self) -> Self {
        assert!(self.coeffs[0].is_one(), "inverse needs constant term 1");
        let r = self.order();
        let mut inv: Vec<LaurentPoly> = Vec::with_capacity(r + 1);
        inv.push(konst(1));
        for n in 1..=r {
            let s = (1..=n).fold(LaurentPoly::zero(0), |acc, i| acc + &self.coeffs[i] * &inv[n - i]);
            inv.push(-s);
        }
        ZSeries { coeffs: inv }
    }

    /// `self / den`, for `den` with constant term 1.
    pub fn div(&self, den: &Self) -> Self {
        self.mul(&den.inverse())
    }
}

/// `(1-tz)^e / ((1-z)(1-t²z))`; with `e = g' + 1` this is Macdonald's
/// formula for the symmetric products of `N_{g'}`.
fn macdonald(e: u32, order: usize) -> ZSeries {
    let num = ZSeries::binomial(-t_pow(1), 1, order).pow(e);
    let den = ZSeries::binomial(konst(-1), 1, order).mul(&ZSeries::binomial(-t_pow(2), 1, order));
    num.div(&den)
}

/// `Σ_m P_t(Sym^m N_{g'}) z^m` up to `z^order`, where `N_{g'}` is the
/// non-orientable surface double covered by a genus-`g'` surface.
pub fn sym_nonorientable_series(g_prime: usize, order: usize) -> ZSeries {
    macdonald(g_prime as u32 + 1, order)
}

fn check(g: usize, b: usize) -> Result<(), ZetaError> {
    if b > g {
        return Err(ZetaError::InvalidTopology { g, b });
    }
    Ok(())
}

/// `(1-tz²)^{g-b} (1+z)^b (1-tz)^b / ((1-z)(1+tz))` for a curve whose real
/// points are `b + 1` circles.
pub fn real_sym_series(g: usize, b: usize, order: usize) -> Result<ZSeries, ZetaError> {
    check(g, b)?;
    let b32 = b as u32;
    let num = ZSeries::binomial(-t_pow(1), 2, order)
        .pow((g - b) as u32)
        .mul(&ZSeries::binomial(konst(1), 1, order).pow(b32))
        .mul(&ZSeries::binomial(-t_pow(1), 1, order).pow(b32));
    let den = ZSeries::binomial(konst(-1), 1, order).mul(&ZSeries::binomial(t_pow(1), 1, order));
    Ok(num.div(&den))
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

/// `Σ_{k+2s=n} C(b+1, k) (1-t)^k P_t(Sym^s N_{g-k})`, term by term.
///
/// For `k = b + 1 = g + 1` the surface `N_{-1}` enters only through the
/// formal exponent `g - k + 1 = 0` of Macdonald's formula.
pub fn component_sum_series(g: usize, b: usize, order: usize) -> Result<ZSeries, ZetaError> {
    check(g, b)?;
    let a = b + 1;
    let one_minus_t = &konst(1) - &t_pow(1);
    let mut coeffs: Vec<LaurentPoly> = (0..=order).map(|_| LaurentPoly::zero(0)).collect();
    for k in 0..=a.min(order) {
        let sym = macdonald((g + 1 - k) as u32, (order - k) / 2);
        let weight = one_minus_t.pow(k as u32).scale(&Rational::from_i64(binom(a, k)));
        for s in 0..=(order - k) / 2 {
            coeffs[k + 2 * s] = &coeffs[k + 2 * s] + &(&weight * sym.coeff(s));
        }
    }
    Ok(ZSeries { coeffs })
}

/// `(1-tz²)^{g+1} / ((1-z²)(1-t²z²))`, the series for a curve without real points.
pub fn empty_locus_series(g: usize, order: usize) -> ZSeries {
    let num = ZSeries::binomial(-t_pow(1), 2, order).pow(g as u32 + 1);
    let den = ZSeries::binomial(konst(-1), 2, order).mul(&ZSeries::binomial(-t_pow(2), 2, order));
    num.div(&den)
}

/// Substitutes `q = -t`, `α_i = -t^{1/2}` (`i ≤ g-b`) and `α_i = -1` into
/// the formal zeta function `Π (1-α_i z)(1-α_i^{-1} q z) / ((1-z)(1-qz))`
/// and checks it against the closed form of [`real_sym_series`], by
/// comparing cross-multiplied polynomials in `u = t^{1/2}` and `z`.
pub fn zeta_substitution_check(g: usize, b: usize) -> Result<(), ZetaError> {
    check(g, b)?;
    let gen = |v| LaurentPoly::var(g, v);
    let one_g = LaurentPoly::one(g);
    let (z, q) = (gen(VarId::Z), gen(VarId::Q));
    let mut num = one_g.clone();
    for i in 1..=g as u8 {
        let a = gen(VarId::Alpha(i));
        let a_inv = LaurentPoly::monomial(g, Monomial::var(VarId::Alpha(i), -1), Rational::ONE);
        num = num * (&one_g - &(&a * &z)) * (&one_g - &(&(&a_inv * &q) * &z));
    }
    let den = (&one_g - &z) * (&one_g - &(&q * &z));

    let minus = Rational::from_i64(-1);
    let mut map = MonomialMap::identity().with(VarId::Q, minus.clone(), Monomial::var(VarId::U, 2));
    for i in 1..=g {
        let image = if i <= g - b {
            Monomial::var(VarId::U, 1)
        } else {
            Monomial::ONE
        };
        map.set(VarId::Alpha(i as u8), minus.clone(), image);
    }
    let (num, den) = (num.substitute(&map, 0), den.substitute(&map, 0));

    let one = LaurentPoly::one(0);
    let zz = LaurentPoly::var(0, VarId::Z);
    let t = LaurentPoly::monomial(0, Monomial::var(VarId::U, 2), Rational::ONE);
    let closed_num = (&one - &(&t * &zz.pow(2))).pow((g - b) as u32)
        * (&one + &zz).pow(b as u32)
        * (&one - &(&t * &zz)).pow(b as u32);
    let closed_den = (&one - &zz) * (&one + &(&t * &zz));

    let lhs = &num * &closed_den;
    let rhs = &closed_num * &den;
    if lhs == rhs {
        Ok(())
    } else {
        Err(ZetaError::Mismatch {
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        })
    }
}
