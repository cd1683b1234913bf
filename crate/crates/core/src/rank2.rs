//! The explicit rank-two formula
//! `P_t = 2^b t^{4g-3} (1-t)^g f(t^{1/2}, 1)` with
//!
//! ```text
//! f(u, z) = (z²+u)^{g-b} (z-u)^{g-b} (z²+1)^b (z-u²)^b / ((z²-1)(z+u²))
//!         + (z-u³)^{g-b} (1+u³)^{g-b} (z-u²)^b (1+u⁴)^b / ((z+u²)(1-u⁴))
//!         - (z+u)^{g-b} (1-u)^{g-b} (z+1)^b (1-u²)^b / (2(z-1)(1+u²))
//!         - (z-u)^{g-b} (1+u)^{g-b} (z-1)^b (1+u²)^b / (2(z+1)(1-u²))
//! ```
//!
//! where `t = u²`. The first and third terms have poles at `z = 1` that
//! cancel in the sum; `f(u, 1)` is read as the value of the sum after
//! cancelling them.

use alloc::vec::Vec;

use crate::algebra::{AlgebraError, FactoredRational, LaurentPoly, Monomial, Rational, VarId};
use crate::specialization::{BettiResult, CurveTopology, FieldCase, Pipeline, SpecializationError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Rank2Error {
    #[error("poles at z = 1 do not cancel: {0}")]
    PoleAtOne(AlgebraError),
    #[error("value at z = 1 is not a polynomial in u: {0}")]
    NotPolynomial(AlgebraError),
    #[error("odd power of u in the rank-two value: {0}")]
    OddUPower(LaurentPoly),
    #[error("invalid curve topology: {0}")]
    InvalidTopology(&'static str),
}

/// The four summands of `f(u, z)`, in display order.
#[derive(Clone, Debug, PartialEq)]
pub struct RankTwoForm {
    pub g: usize,
    pub b: usize,
    pub terms: Vec<FactoredRational>,
}

fn v(var: VarId, e: i32) -> LaurentPoly {
    LaurentPoly::monomial(0, Monomial::var(var, e), Rational::ONE)
}

fn z(e: i32) -> LaurentPoly {
    v(VarId::Z, e)
}

fn u(e: i32) -> LaurentPoly {
    v(VarId::U, e)
}

fn one() -> LaurentPoly {
    LaurentPoly::one(0)
}

pub fn f_rank2(g: usize, b: usize) -> Result<RankTwoForm, Rank2Error> {
    CurveTopology::circles(g, b)
        .validated_b()
        .map_err(|_| Rank2Error::InvalidTopology("need 1 <= g and 0 <= b <= g"))?;
    let (m, b32) = ((g - b) as u32, b as u32);
    let term = |num: LaurentPoly, den: [LaurentPoly; 2], scale: Rational| {
        FactoredRational::new(num.scale(&scale), den).expect("binomial denominators")
    };
    let half = Rational::new(-1, 2);
    let terms = alloc::vec![
        term(
            (&z(2) + &u(1)).pow(m) * (&z(1) - &u(1)).pow(m) * (&z(2) + &one()).pow(b32) * (&z(1) - &u(2)).pow(b32),
            [&z(2) - &one(), &z(1) + &u(2)],
            Rational::ONE,
        ),
        term(
            (&z(1) - &u(3)).pow(m) * (&one() + &u(3)).pow(m) * (&z(1) - &u(2)).pow(b32) * (&one() + &u(4)).pow(b32),
            [&z(1) + &u(2), &one() - &u(4)],
            Rational::ONE,
        ),
        term(
            (&z(1) + &u(1)).pow(m) * (&one() - &u(1)).pow(m) * (&z(1) + &one()).pow(b32) * (&one() - &u(2)).pow(b32),
            [&z(1) - &one(), &one() + &u(2)],
            half.clone(),
        ),
        term(
            (&z(1) - &u(1)).pow(m) * (&one() + &u(1)).pow(m) * (&z(1) - &one()).pow(b32) * (&one() + &u(2)).pow(b32),
            [&z(1) + &one(), &one() - &u(2)],
            half,
        ),
    ];
    Ok(RankTwoForm { g, b, terms })
}

impl RankTwoForm {
    /// `f(u, 1)` as a polynomial in `u`.
    ///
    /// The summands are put over a common denominator, the factors vanishing
    /// at `z = 1` are divided out of the numerator exactly, and only then is
    /// `z` set to 1 and the remaining denominator divided out.
    pub fn at_z_one(&self) -> Result<LaurentPoly, Rank2Error> {
        let sum = self.terms.iter().fold(FactoredRational::zero(0), |acc, t| acc.add(t));
        let one_r = Rational::ONE;
        let mut num = sum.numerator().clone();
        let mut rest = Vec::new();
        for f in sum.denominator() {
            let vanishes = f.poly().eval_var(VarId::Z, &one_r).is_zero();
            for _ in 0..f.multiplicity() {
                if vanishes {
                    num = num.exact_divide(f.poly()).map_err(Rank2Error::PoleAtOne)?;
                } else {
                    rest.push(f.poly().eval_var(VarId::Z, &one_r));
                }
            }
        }
        let mut value = num.eval_var(VarId::Z, &one_r);
        for d in rest {
            value = value.exact_divide(&d).map_err(Rank2Error::NotPolynomial)?;
        }
        Ok(value)
    }
}

/// The rank-two real Betti polynomial from the closed formula, with the
/// prefactor `2^b t^{4g-3} (1-t)^g` exactly as displayed.
pub fn p_rank2(g: usize, b: usize) -> Result<BettiResult, Rank2Error> {
    rank2_with_sign(g, b, 1)
}

/// [`p_rank2`] with `t^{4g-3}` replaced by `(-t)^{4g-3}`, the power the
/// general specialization formula gives at rank two. Equals `-p_rank2`.
pub fn p_rank2_signed(g: usize, b: usize) -> Result<BettiResult, Rank2Error> {
    rank2_with_sign(g, b, -1)
}

fn rank2_with_sign(g: usize, b: usize, sign: i64) -> Result<BettiResult, Rank2Error> {
    let f = f_rank2(g, b)?.at_z_one()?;
    let prefactor = (&one() - &u(2)).pow(g as u32).mul_monomial(
        &Monomial::var(VarId::U, 2 * (4 * g as i32 - 3)),
        &Rational::from_i64(sign << b),
    );
    let in_u = &prefactor * &f;
    let mut terms = Vec::with_capacity(in_u.len());
    for (m, c) in in_u.terms() {
        let e = m.get(VarId::U);
        if e % 2 != 0 {
            return Err(Rank2Error::OddUPower(in_u.clone()));
        }
        terms.push((Monomial::var(VarId::T, e / 2), c.clone()));
    }
    Ok(BettiResult {
        curve: CurveTopology::circles(g, b),
        r: 2,
        d: None,
        poly: LaurentPoly::from_terms(0, terms),
        field: FieldCase::Real,
        pipeline: Pipeline::ClosedFormR2,
    })
}

impl From<Rank2Error> for SpecializationError {
    fn from(e: Rank2Error) -> Self {
        match e {
            Rank2Error::InvalidTopology(msg) => SpecializationError::InvalidTopology(msg),
            other => SpecializationError::Rank2(other),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_terms_with_displayed_denominators() {
        let f = f_rank2(1, 0).unwrap();
        assert_eq!(f.terms.len(), 4);
        let dens: Vec<LaurentPoly> = f.terms.iter().map(|t| t.denominator_product()).collect();
        // Denominators are sign-normalized, so compare up to sign.
        let expected = [
            (&z(2) - &one()) * (&z(1) + &u(2)),
            (&z(1) + &u(2)) * (&one() - &u(4)),
            (&z(1) - &one()) * (&one() + &u(2)),
            (&z(1) + &one()) * (&one() - &u(2)),
        ];
        for (d, e) in dens.iter().zip(&expected) {
            assert!(d == e || *d == -e, "{d} vs {e}");
        }
    }

    #[test]
    fn numerator_degrees_follow_the_display() {
        // Total degree in (z, u) of each numerator for g = 2, b = 1.
        let f = f_rank2(2, 1).unwrap();
        let total = |p: &LaurentPoly| {
            p.terms()
                .iter()
                .map(|(m, _)| m.get(VarId::Z) + m.get(VarId::U))
                .max()
                .unwrap()
        };
        let degs: Vec<i32> = f.terms.iter().map(|t| total(t.numerator())).collect();
        assert_eq!(degs, [2 + 1 + 2 + 2, 3 + 3 + 2 + 4, 1 + 1 + 1 + 2, 1 + 1 + 1 + 2]);
    }

    #[test]
    fn closed_form_against_specialization() {
        use crate::specialization::real_betti;
        for g in 1..=3 {
            for b in 0..=g {
                let spec = real_betti(g, b, 2).unwrap().poly;
                assert_eq!(p_rank2_signed(g, b).unwrap().poly, spec, "g={g} b={b}");
                assert_eq!(p_rank2(g, b).unwrap().poly, -spec, "g={g} b={b}");
            }
        }
    }

    #[test]
    fn rejects_invalid_topology() {
        assert!(matches!(f_rank2(2, 3), Err(Rank2Error::InvalidTopology(_))));
        assert!(matches!(p_rank2(0, 0), Err(Rank2Error::InvalidTopology(_))));
    }
}
