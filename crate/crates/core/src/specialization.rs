//! Betti polynomials from `A_{g,r}` by specializing its variables.
//!
//! Real case: `P_t = (-t)^{(g-1)r²+1} A_{g,r}(q = -t, α_i = -t^{1/2} (i ≤ g-b), α_i = -1)`.
//! Complex case: `P_t = t^{2(g-1)r²+2} A_{g,r}(q = t², α_i = t)`.
//!
//! Half powers of `t` live in the variable `u` with `t = u²`; a real result
//! is converted to `t` only after checking that every power of `u` is even.

use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{LaurentPoly, Monomial, MonomialMap, Rational, VarId};
use crate::mellit::{self, APoly, MellitError, Realization};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecializationError {
    #[error("real specialization left an odd power of u: {0}")]
    OddUPower(LaurentPoly),
    #[error("invalid curve topology: {0}")]
    InvalidTopology(&'static str),
    #[error("rank {r} and degree {d} are not coprime")]
    NonCoprime { r: usize, d: i64 },
    #[error("rank {r} is not supported by the {pipeline} pipeline")]
    UnsupportedRank { r: usize, pipeline: Pipeline },
    #[error(transparent)]
    Mellit(#[from] MellitError),
    #[error(transparent)]
    Rank2(crate::rank2::Rank2Error),
}

/// Genus and real locus of a real curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveTopology {
    pub g: usize,
    pub real_locus: RealLocus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RealLocus {
    /// `b + 1` disjoint circles.
    Circles(usize),
    Empty,
}

impl CurveTopology {
    pub fn circles(g: usize, b: usize) -> Self {
        CurveTopology {
            g,
            real_locus: RealLocus::Circles(b),
        }
    }

    /// The `b` of a curve whose real points form `b + 1` circles, after
    /// checking `g ≥ 1` and the Harnack bound `b ≤ g`.
    pub fn validated_b(&self) -> Result<usize, SpecializationError> {
        match self.real_locus {
            RealLocus::Empty => Err(SpecializationError::InvalidTopology(
                "no specialization is known for a curve without real points",
            )),
            RealLocus::Circles(b) if b > self.g => Err(SpecializationError::InvalidTopology(
                "b must not exceed g (at most g + 1 real circles)",
            )),
            RealLocus::Circles(_) if self.g == 0 => {
                Err(SpecializationError::InvalidTopology("genus must be at least 1"))
            }
            RealLocus::Circles(b) => Ok(b),
        }
    }
}

impl fmt::Display for CurveTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.real_locus {
            RealLocus::Circles(b) => write!(f, "g={} b={}", self.g, b),
            RealLocus::Empty => write!(f, "g={} empty", self.g),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldCase {
    Real,
    Complex,
}

/// How a result was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pipeline {
    /// Normalize `A_{g,r}` in all variables, then substitute.
    Generic,
    /// Substitute before the logarithm, keeping the sign formal.
    FastSpecialized,
    /// The explicit rank-two formula, signed as in the general formula.
    ClosedFormR2,
}

impl fmt::Display for FieldCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldCase::Real => "real",
            FieldCase::Complex => "complex",
        })
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pipeline::Generic => "generic",
            Pipeline::FastSpecialized => "fast-specialized",
            Pipeline::ClosedFormR2 => "closed-form-r2",
        })
    }
}

/// A signed compactly supported Poincaré polynomial in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiResult {
    pub curve: CurveTopology,
    pub r: usize,
    /// Recorded only; the polynomial does not depend on it.
    pub d: Option<i64>,
    pub poly: LaurentPoly,
    pub field: FieldCase,
    pub pipeline: Pipeline,
}

impl BettiResult {
    /// Records the degree after checking `gcd(r, d) = 1`.
    pub fn with_degree(mut self, d: i64) -> Result<Self, SpecializationError> {
        check_coprime(self.r, d)?;
        self.d = Some(d);
        Ok(self)
    }

    /// `(exponent, coefficient)` pairs in ascending order.
    pub fn coefficients(&self) -> Vec<(i32, Rational)> {
        self.poly.univariate_coeffs(VarId::T)
    }

    pub fn degree(&self) -> Option<i32> {
        self.poly.degree_in(VarId::T)
    }
}

pub fn check_coprime(r: usize, d: i64) -> Result<(), SpecializationError> {
    let (mut a, mut b) = (r as u64, d.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    if a == 1 {
        Ok(())
    } else {
        Err(SpecializationError::NonCoprime { r, d })
    }
}

/// `(2g-2)r² + 2`, the complex dimension of the moduli space and the
/// `t`-degree of the real Betti polynomial.
pub fn expected_real_degree(g: usize, r: usize) -> i32 {
    (2 * g as i32 - 2) * (r * r) as i32 + 2
}

fn real_exponent(g: usize, r: usize) -> i32 {
    (g as i32 - 1) * (r * r) as i32 + 1
}

/// `u^{2k} ↦ t^k`, failing on any odd power.
fn u_to_t(p: &LaurentPoly) -> Result<LaurentPoly, SpecializationError> {
    let mut terms = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let e = m.get(VarId::U);
        if e % 2 != 0 {
            return Err(SpecializationError::OddUPower(p.clone()));
        }
        let mut m = *m;
        m.set(VarId::U, 0);
        m.set(VarId::T, m.get(VarId::T) + e / 2);
        terms.push((m, c.clone()));
    }
    Ok(LaurentPoly::from_terms(0, terms))
}

/// `(-t)^{(g-1)r²+1} A(-u², -u, …, -1, …)` with `t = u²`.
pub fn real_from_a(a: &APoly, b: usize) -> Result<LaurentPoly, SpecializationError> {
    let g = a.genus;
    CurveTopology::circles(g, b).validated_b()?;
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
    let spec = a.value.substitute(&map, 0);
    real_prefactor(spec, g, a.rank)
}

fn real_prefactor(spec: LaurentPoly, g: usize, r: usize) -> Result<LaurentPoly, SpecializationError> {
    let e = real_exponent(g, r);
    let sign = if e % 2 == 0 { 1 } else { -1 };
    let scaled = spec.mul_monomial(&Monomial::var(VarId::U, 2 * e), &Rational::from_i64(sign));
    u_to_t(&scaled)
}

/// `t^{2(g-1)r²+2} A(t², t, …, t)`.
pub fn complex_from_a(a: &APoly) -> LaurentPoly {
    let g = a.genus;
    let mut map = MonomialMap::identity().with(VarId::Q, Rational::ONE, Monomial::var(VarId::T, 2));
    for i in 1..=g {
        map.set(VarId::Alpha(i as u8), Rational::ONE, Monomial::var(VarId::T, 1));
    }
    let spec = a.value.substitute(&map, 0);
    spec.mul_monomial(&Monomial::var(VarId::T, 2 * real_exponent(g, a.rank)), &Rational::ONE)
}

fn validate(g: usize, b: usize, r: usize) -> Result<(), SpecializationError> {
    CurveTopology::circles(g, b).validated_b()?;
    if r == 0 {
        return Err(MellitError::InvalidRank.into());
    }
    Ok(())
}

/// Real Betti polynomials for ranks `1..=max_rank` by the fast path.
///
/// `H` is computed with `q ↦ s·u²` and `α_i ↦ s·u` or `s`; then `z = 1`
/// and finally `s = -1`.
pub fn specialize_alpha_early(g: usize, b: usize, max_rank: usize) -> Result<Vec<LaurentPoly>, SpecializationError> {
    validate(g, b, max_rank)?;
    let hs = mellit::h_polys_in(&Realization::real_signed(g, b), max_rank)?;
    hs.into_iter()
        .enumerate()
        .map(|(i, h)| {
            let spec = h
                .eval_var(VarId::Z, &Rational::ONE)
                .eval_var(VarId::S, &Rational::from_i64(-1));
            real_prefactor(spec, g, i + 1)
        })
        .collect()
}

fn real_result(g: usize, b: usize, r: usize, poly: LaurentPoly, pipeline: Pipeline) -> BettiResult {
    BettiResult {
        curve: CurveTopology::circles(g, b),
        r,
        d: None,
        poly,
        field: FieldCase::Real,
        pipeline,
    }
}

/// The real Betti polynomial by the fast specialized path.
pub fn real_betti(g: usize, b: usize, r: usize) -> Result<BettiResult, SpecializationError> {
    real_betti_with(g, b, r, Pipeline::FastSpecialized)
}

/// The real Betti polynomial by a chosen path.
pub fn real_betti_with(g: usize, b: usize, r: usize, pipeline: Pipeline) -> Result<BettiResult, SpecializationError> {
    validate(g, b, r)?;
    let poly = match pipeline {
        Pipeline::Generic => real_from_a(&mellit::a_poly(g, r)?, b)?,
        Pipeline::FastSpecialized => specialize_alpha_early(g, b, r)?.pop().expect("one entry per rank"),
        Pipeline::ClosedFormR2 if r == 2 => return Ok(crate::rank2::p_rank2_signed(g, b)?),
        Pipeline::ClosedFormR2 => return Err(SpecializationError::UnsupportedRank { r, pipeline }),
    };
    Ok(real_result(g, b, r, poly, pipeline))
}

/// The real Betti polynomial computed from a known `A_{g,r}`.
pub fn real_betti_from(a: &APoly, b: usize) -> Result<BettiResult, SpecializationError> {
    let poly = real_from_a(a, b)?;
    Ok(real_result(a.genus, b, a.rank, poly, Pipeline::Generic))
}

/// The complex Betti polynomial computed from a known `A_{g,r}`.
pub fn complex_betti_from(a: &APoly) -> BettiResult {
    BettiResult {
        curve: CurveTopology::circles(a.genus, 0),
        r: a.rank,
        d: None,
        poly: complex_from_a(a),
        field: FieldCase::Complex,
        pipeline: Pipeline::Generic,
    }
}

pub fn complex_betti(g: usize, r: usize) -> Result<BettiResult, SpecializationError> {
    Ok(complex_betti_from(&mellit::a_poly(g, r)?))
}

/// Builds a polynomial in `t` from `(exponent, coefficient)` pairs.
pub fn t_poly(coeffs: &[(i32, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(
        0,
        coeffs
            .iter()
            .map(|&(e, c)| (Monomial::var(VarId::T, e), Rational::from_i64(c))),
    )
}
