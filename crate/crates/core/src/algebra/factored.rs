//! Rational functions kept as a numerator over a multiset of binomials.

use alloc::vec::Vec;
use core::fmt;

use super::poly::LaurentPoly;
use super::rational::Rational;
use super::AlgebraError;

/// A two-term denominator factor with multiplicity.
///
/// The stored polynomial is sign-normalized (positive leading coefficient)
/// so that equal factors are recognised structurally.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinomialFactor {
    poly: LaurentPoly,
    multiplicity: u32,
}

impl BinomialFactor {
    /// Wraps a two-term polynomial. The returned flag is `true` when the sign
    /// was flipped to normalize it (the caller owes a factor `(-1)^mult`).
    pub fn new(poly: LaurentPoly, multiplicity: u32) -> Result<(Self, bool), AlgebraError> {
        if poly.len() != 2 {
            return Err(AlgebraError::NotBinomial(poly.len()));
        }
        assert!(multiplicity > 0);
        let (poly, flipped) = poly.sign_normalized();
        Ok((BinomialFactor { poly, multiplicity }, flipped))
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }
}

/// `num / Π den`. Not canonical: equal functions may have different
/// representations; compare with [`FactoredRational::equals`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactoredRational {
    num: LaurentPoly,
    // Sorted by polynomial, one entry per distinct factor.
    den: Vec<BinomialFactor>,
}

impl FactoredRational {
    pub fn from_poly(num: LaurentPoly) -> Self {
        FactoredRational { num, den: Vec::new() }
    }

    pub fn zero(genus: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(genus))
    }

    pub fn one(genus: usize) -> Self {
        Self::from_poly(LaurentPoly::one(genus))
    }

    /// `num / Π factors`; each factor must be a two-term polynomial.
    pub fn new(num: LaurentPoly, factors: impl IntoIterator<Item = LaurentPoly>) -> Result<Self, AlgebraError> {
        let mut out = Self::from_poly(num);
        for f in factors {
            if f.genus() != out.genus() {
                return Err(AlgebraError::ArityMismatch {
                    left: out.genus(),
                    right: f.genus(),
                });
            }
            let (bf, flipped) = BinomialFactor::new(f, 1)?;
            if flipped {
                out.num = -out.num;
            }
            out.push_factor(bf.poly, 1);
        }
        Ok(out)
    }

    fn push_factor(&mut self, poly: LaurentPoly, mult: u32) {
        match self.den.binary_search_by(|f| f.poly.terms().cmp(poly.terms())) {
            Ok(i) => self.den[i].multiplicity += mult,
            Err(i) => self.den.insert(
                i,
                BinomialFactor {
                    poly,
                    multiplicity: mult,
                },
            ),
        }
    }

    pub fn genus(&self) -> usize {
        self.num.genus()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &[BinomialFactor] {
        &self.den
    }

    /// The expanded denominator polynomial.
    pub fn denominator_product(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.genus());
        for f in &self.den {
            acc = &acc * &f.poly.pow(f.multiplicity);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn neg(&self) -> Self {
        FactoredRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FactoredRational {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        FactoredRational {
            num: &self.num * p,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = FactoredRational {
            num: &self.num * &other.num,
            den: self.den.clone(),
        };
        for f in &other.den {
            out.push_factor(f.poly.clone(), f.multiplicity);
        }
        out
    }

    /// Sum over the least common multiple of the two factor multisets.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut lcm = self.den.clone();
        for f in &other.den {
            match lcm.binary_search_by(|g| g.poly.terms().cmp(f.poly.terms())) {
                Ok(i) => lcm[i].multiplicity = lcm[i].multiplicity.max(f.multiplicity),
                Err(i) => lcm.insert(i, f.clone()),
            }
        }
        let lift = |x: &Self| {
            let mut n = x.num.clone();
            for f in &lcm {
                let have = x.den.iter().find(|g| g.poly == f.poly).map_or(0, |g| g.multiplicity);
                for _ in have..f.multiplicity {
                    n = &n * &f.poly;
                }
            }
            n
        };
        let num = &lift(self) + &lift(other);
        FactoredRational { num, den: lcm }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `ψ_k` on numerator and on each factor separately.
    pub fn substitute_powers(&self, k: u32) -> Self {
        let mut out = Self::from_poly(self.num.substitute_powers(k));
        for f in &self.den {
            let (p, flipped) = f.poly.substitute_powers(k).sign_normalized();
            if flipped && f.multiplicity % 2 == 1 {
                out.num = -out.num;
            }
            out.push_factor(p, f.multiplicity);
        }
        out
    }

    /// Equality as rational functions (cross-multiplication).
    pub fn equals(&self, other: &Self) -> bool {
        self.sub(other).num.is_zero()
    }

    /// Cancels every denominator factor into the numerator by exact division.
    ///
    /// Fails with [`AlgebraError::NotPolynomial`] when some factor does not
    /// divide what is left of the numerator.
    pub fn normalize(&self) -> Result<LaurentPoly, AlgebraError> {
        let mut n = self.num.clone();
        for f in &self.den {
            for _ in 0..f.multiplicity {
                n = n.exact_divide(&f.poly).map_err(|e| match e {
                    AlgebraError::NotDivisible { divisor, remainder } => {
                        AlgebraError::NotPolynomial { divisor, remainder }
                    }
                    other => other,
                })?;
            }
        }
        Ok(n)
    }
}

/// Free-function form of [`FactoredRational::normalize`].
pub fn rational_normalize(f: &FactoredRational) -> Result<LaurentPoly, AlgebraError> {
    f.normalize()
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        if !self.den.is_empty() {
            f.write_str(" / ")?;
            for (i, d) in self.den.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "({})", d.poly)?;
                if d.multiplicity > 1 {
                    write!(f, "^{}", d.multiplicity)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::poly::build::*;
    use super::*;

    #[test]
    fn normalize_examples() {
        let one = c(0, 1);
        let f = FactoredRational::new(&z(0).pow(2) - &one, [&z(0) - &one]).unwrap();
        assert_eq!(f.normalize().unwrap(), &z(0) + &one);
        let p = &q(0) + &z(0);
        assert_eq!(FactoredRational::from_poly(p.clone()).normalize().unwrap(), p);
    }

    #[test]
    fn sign_normalization_is_tracked() {
        // (1 - z^2) / (1 - z) = 1 + z, with the factor stored as (z - 1).
        let one = c(0, 1);
        let f = FactoredRational::new(&one - &z(0).pow(2), [&one - &z(0)]).unwrap();
        assert_eq!(f.denominator()[0].poly(), &(&z(0) - &one));
        assert_eq!(f.normalize().unwrap(), &one + &z(0));
    }

    #[test]
    fn not_polynomial_is_reported() {
        let one = c(0, 1);
        let f = FactoredRational::new(&one + &z(0), [&z(0) - &one]).unwrap();
        assert!(matches!(f.normalize(), Err(AlgebraError::NotPolynomial { .. })));
    }

    #[test]
    fn rejects_non_binomial_factors() {
        assert_eq!(
            FactoredRational::new(c(0, 1), [z(0)]),
            Err(AlgebraError::NotBinomial(1))
        );
    }

    #[test]
    fn addition_over_lcm() {
        // 1/(z-1) + 1/(z+1) = 2z / (z^2 - 1)
        let one = c(0, 1);
        let a = FactoredRational::new(one.clone(), [&z(0) - &one]).unwrap();
        let b = FactoredRational::new(one.clone(), [&z(0) + &one]).unwrap();
        let s = a.add(&b);
        let expected = FactoredRational::new(z(0).scale(&Rational::from_i64(2)), [&z(0).pow(2) - &one]).unwrap();
        assert!(s.equals(&expected));
        assert!(!s.equals(&a));
    }

    #[test]
    fn power_substitution_on_factors() {
        let one = c(0, 1);
        let f = FactoredRational::new(one.clone(), [&one - &q(0)]).unwrap();
        let g = f.substitute_powers(2);
        let expected = FactoredRational::new(one.clone(), [&one - &q(0).pow(2)]).unwrap();
        assert!(g.equals(&expected));
        assert_eq!(g.denominator()[0].poly(), &(&q(0).pow(2) - &one));
    }
}
