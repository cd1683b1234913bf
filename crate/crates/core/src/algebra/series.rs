//! Truncated power series in an auxiliary variable `T`, with ordinary and
//! plethystic logarithm/exponential.

use alloc::vec::Vec;

use super::factored::FactoredRational;
use super::poly::LaurentPoly;
use super::rational::Rational;
use super::AlgebraError;

/// Coefficient ring of a [`TSeries`]: a commutative ring with exact rational
/// scaling and Adams operations `ψ_k`.
pub trait SeriesCoeff: Clone {
    /// Zero in the same ring as `self`.
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn adams(&self, k: u32) -> Self;
    fn is_zero(&self) -> bool;
    /// Whether the value equals one (exactly, as a function).
    fn is_one(&self) -> bool;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from_i64(-1)))
    }
}

impl SeriesCoeff for LaurentPoly {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero(self.genus())
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one(self.genus())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        LaurentPoly::scale(self, c)
    }
    fn adams(&self, k: u32) -> Self {
        self.substitute_powers(k)
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        LaurentPoly::is_one(self)
    }
}

impl SeriesCoeff for FactoredRational {
    fn zero_like(&self) -> Self {
        FactoredRational::zero(self.genus())
    }
    fn one_like(&self) -> Self {
        FactoredRational::one(self.genus())
    }
    fn add(&self, other: &Self) -> Self {
        FactoredRational::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        FactoredRational::mul(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        FactoredRational::scale(self, c)
    }
    fn adams(&self, k: u32) -> Self {
        self.substitute_powers(k)
    }
    fn is_zero(&self) -> bool {
        FactoredRational::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.equals(&self.one_like())
    }
}

/// `Σ_{n=0}^{R} c_n T^n`, truncated at order `R`.
#[derive(Clone, Debug, PartialEq)]
pub struct TSeries<C> {
    coeffs: Vec<C>,
}

impl<C: SeriesCoeff> TSeries<C> {
    /// Series with the given coefficients `c_0..c_R`. Panics if empty.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant coefficient");
        TSeries { coeffs }
    }

    /// Truncation order `R`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    fn zero(&self) -> C {
        self.coeffs[0].zero_like()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        TSeries::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect())
    }

    /// Product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        let r = self.order();
        let coeffs = (0..=r)
            .map(|n| {
                (0..=n).fold(self.zero(), |acc, i| {
                    let (a, b) = (&self.coeffs[i], &other.coeffs[n - i]);
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc.add(&a.mul(b))
                    }
                })
            })
            .collect();
        TSeries::new(coeffs)
    }

    /// Ordinary logarithm of a series with constant term 1.
    ///
    /// Uses `n L_n = n s_n - Σ_{k=1}^{n-1} k L_k s_{n-k}`, which is the
    /// coefficient form of `L' = s'/s` and agrees with
    /// `Σ_m (-1)^{m+1} (s-1)^m / m` term by term.
    pub fn log(&self) -> Result<Self, AlgebraError> {
        if !self.coeffs[0].is_one() {
            return Err(AlgebraError::ConstantTermNotOne);
        }
        let r = self.order();
        let mut out: Vec<C> = Vec::with_capacity(r + 1);
        out.push(self.zero());
        for n in 1..=r {
            let mut acc = self.coeffs[n].scale(&Rational::from_i64(n as i64));
            for k in 1..n {
                let (l, s) = (&out[k], &self.coeffs[n - k]);
                if l.is_zero() || s.is_zero() {
                    continue;
                }
                acc = acc.sub(&l.mul(s).scale(&Rational::from_i64(k as i64)));
            }
            out.push(acc.scale(&Rational::new(1, n as i64)));
        }
        Ok(TSeries::new(out))
    }

    /// Ordinary exponential of a series with constant term 0.
    pub fn exp(&self) -> Result<Self, AlgebraError> {
        if !self.coeffs[0].is_zero() {
            return Err(AlgebraError::ConstantTermNotZero);
        }
        let r = self.order();
        let mut out: Vec<C> = Vec::with_capacity(r + 1);
        out.push(self.coeffs[0].one_like());
        for n in 1..=r {
            let mut acc = self.zero();
            for k in 1..=n {
                let (l, e) = (&self.coeffs[k], &out[n - k]);
                if l.is_zero() || e.is_zero() {
                    continue;
                }
                acc = acc.add(&l.mul(e).scale(&Rational::from_i64(k as i64)));
            }
            out.push(acc.scale(&Rational::new(1, n as i64)));
        }
        Ok(TSeries::new(out))
    }

    /// `ψ_k` on the whole series: coefficients by `ψ_k`, `T ↦ T^k`.
    pub fn adams(&self, k: u32) -> Self {
        assert!(k >= 1);
        let mut out: Vec<C> = (0..=self.order()).map(|_| self.zero()).collect();
        for (n, c) in self.coeffs.iter().enumerate() {
            let m = n * k as usize;
            if m > self.order() {
                break;
            }
            out[m] = c.adams(k);
        }
        TSeries::new(out)
    }

    /// Plethystic logarithm `Log s = Σ_k μ(k)/k · ψ_k(log s)`.
    pub fn pleth_log(&self) -> Result<Self, AlgebraError> {
        let log = self.log()?;
        Ok(mobius_combine(&log, |k| {
            let mu = mobius(k);
            (mu != 0).then(|| Rational::new(mu, k as i64))
        }))
    }

    /// Plethystic exponential `Exp f = exp(Σ_k ψ_k(f)/k)`, for constant term 0.
    pub fn pleth_exp(&self) -> Result<Self, AlgebraError> {
        if !self.coeffs[0].is_zero() {
            return Err(AlgebraError::ConstantTermNotZero);
        }
        mobius_combine(self, |k| Some(Rational::new(1, k as i64))).exp()
    }
}

/// `Σ_k w(k) ψ_k(s)` truncated at the order of `s` (for `s_0 = 0`).
fn mobius_combine<C: SeriesCoeff>(s: &TSeries<C>, weight: impl Fn(usize) -> Option<Rational>) -> TSeries<C> {
    let r = s.order();
    let mut out: Vec<C> = (0..=r).map(|_| s.zero()).collect();
    for n in 1..=r {
        let mut acc = s.zero();
        for k in (1..=n).filter(|k| n % k == 0) {
            let Some(w) = weight(k) else { continue };
            let c = &s.coeffs[n / k];
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&c.adams(k as u32).scale(&w));
        }
        out[n] = acc;
    }
    TSeries::new(out)
}

/// The Möbius function.
pub fn mobius(n: usize) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Free-function form of [`TSeries::log`].
pub fn series_log<C: SeriesCoeff>(s: &TSeries<C>) -> Result<TSeries<C>, AlgebraError> {
    s.log()
}

/// Free-function form of [`TSeries::exp`].
pub fn series_exp<C: SeriesCoeff>(s: &TSeries<C>) -> Result<TSeries<C>, AlgebraError> {
    s.exp()
}

/// Free-function form of [`TSeries::pleth_log`].
pub fn pleth_log<C: SeriesCoeff>(s: &TSeries<C>) -> Result<TSeries<C>, AlgebraError> {
    s.pleth_log()
}

/// Free-function form of [`TSeries::pleth_exp`].
pub fn pleth_exp<C: SeriesCoeff>(s: &TSeries<C>) -> Result<TSeries<C>, AlgebraError> {
    s.pleth_exp()
}
