//! Executable checks of the identities the Betti polynomials must satisfy.
//!
//! Every check returns a [`CheckReport`]; failures are data, so a grid run
//! always completes and lists every violation.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{LaurentPoly, Monomial, MonomialMap, Rational, VarId};
use crate::mellit::{self, APoly};
use crate::rank2;
use crate::specialization::{self, expected_real_degree, real_from_a, Pipeline};
use crate::zeta;

/// The kinds of check, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Polynomiality,
    Symmetry,
    RankOneFactor,
    Divisibility,
    Degree,
    PipelineAgreement,
    RankTwoClosedForm,
    ZetaSubstitution,
    ComponentSum,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Polynomiality => "polynomiality",
            CheckKind::Symmetry => "symmetry",
            CheckKind::RankOneFactor => "rank-one-factor",
            CheckKind::Divisibility => "divisibility",
            CheckKind::Degree => "degree",
            CheckKind::PipelineAgreement => "pipeline-agreement",
            CheckKind::RankTwoClosedForm => "rank2-closed-form",
            CheckKind::ZetaSubstitution => "zeta-substitution",
            CheckKind::ComponentSum => "component-sum",
        }
    }
}

/// Both sides of a failed comparison, in canonical text form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub left: String,
    pub right: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub kind: CheckKind,
    pub g: usize,
    pub b: Option<usize>,
    pub r: Option<usize>,
    pub passed: bool,
    /// Present exactly when the check failed.
    pub witness: Option<Witness>,
    /// Extra output of a passing check (the quotient of a divisibility check).
    pub detail: Option<String>,
}

impl CheckReport {
    fn pass(kind: CheckKind, g: usize, b: Option<usize>, r: Option<usize>) -> Self {
        CheckReport {
            kind,
            g,
            b,
            r,
            passed: true,
            witness: None,
            detail: None,
        }
    }

    fn fail(
        kind: CheckKind,
        g: usize,
        b: Option<usize>,
        r: Option<usize>,
        left: String,
        right: String,
        note: &str,
    ) -> Self {
        CheckReport {
            kind,
            g,
            b,
            r,
            passed: false,
            witness: Some(Witness {
                left,
                right,
                note: note.to_string(),
            }),
            detail: None,
        }
    }

    fn compare(
        kind: CheckKind,
        g: usize,
        b: Option<usize>,
        r: Option<usize>,
        left: &LaurentPoly,
        right: &LaurentPoly,
        note: &str,
    ) -> Self {
        if left == right {
            Self::pass(kind, g, b, r)
        } else {
            Self::fail(kind, g, b, r, left.to_canonical(), right.to_canonical(), note)
        }
    }

    fn error(kind: CheckKind, g: usize, b: Option<usize>, r: Option<usize>, err: impl fmt::Display) -> Self {
        Self::fail(
            kind,
            g,
            b,
            r,
            "error".to_string(),
            err.to_string(),
            "computation failed",
        )
    }

    fn sort_key(&self) -> (CheckKind, usize, Option<usize>, Option<usize>) {
        (self.kind, self.g, self.b, self.r)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} g={}",
            if self.passed { "PASS" } else { "FAIL" },
            self.kind.name(),
            self.g
        )?;
        if let Some(b) = self.b {
            write!(f, " b={b}")?;
        }
        if let Some(r) = self.r {
            write!(f, " r={r}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, ": {}\n  left:  {}\n  right: {}", w.note, w.left, w.right)?;
        }
        Ok(())
    }
}

/// `2^b (1-t)^g`.
pub fn component_factor(g: usize, b: usize) -> LaurentPoly {
    let one = LaurentPoly::one(0);
    (&one - &LaurentPoly::var(0, VarId::T))
        .pow(g as u32)
        .scale(&Rational::from_i64(1 << b))
}

/// Divides a real Betti polynomial by `2^b (1-t)^g` and checks the quotient
/// has integer coefficients.
pub fn divisibility_of(poly: &LaurentPoly, g: usize, b: usize, r: usize) -> CheckReport {
    let kind = CheckKind::Divisibility;
    match poly.exact_divide(&component_factor(g, b)) {
        Ok(q) if q.all_coefficients_integer() => {
            let mut rep = CheckReport::pass(kind, g, Some(b), Some(r));
            rep.detail = Some(q.to_canonical());
            rep
        }
        Ok(q) => CheckReport::fail(
            kind,
            g,
            Some(b),
            Some(r),
            q.to_canonical(),
            String::new(),
            "quotient has non-integer coefficients",
        ),
        Err(e) => CheckReport::error(kind, g, Some(b), Some(r), e),
    }
}

pub fn check_divisibility(g: usize, b: usize, r: usize) -> CheckReport {
    match specialization::real_betti(g, b, r) {
        Ok(res) => divisibility_of(&res.poly, g, b, r),
        Err(e) => CheckReport::error(CheckKind::Divisibility, g, Some(b), Some(r), e),
    }
}

pub fn degree_of(poly: &LaurentPoly, g: usize, b: usize, r: usize) -> CheckReport {
    let expected = expected_real_degree(g, r);
    match poly.degree_in(VarId::T) {
        Some(d) if d == expected => CheckReport::pass(CheckKind::Degree, g, Some(b), Some(r)),
        d => CheckReport::fail(
            CheckKind::Degree,
            g,
            Some(b),
            Some(r),
            alloc::format!("{d:?}"),
            alloc::format!("Some({expected})"),
            "top t-degree differs from (2g-2)r^2+2",
        ),
    }
}

pub fn check_degree(g: usize, b: usize, r: usize) -> CheckReport {
    match specialization::real_betti(g, b, r) {
        Ok(res) => degree_of(&res.poly, g, b, r),
        Err(e) => CheckReport::error(CheckKind::Degree, g, Some(b), Some(r), e),
    }
}

/// The images of `A` under the generators of its symmetry group: adjacent
/// transpositions of the `α_i` and `α_i ↦ q α_i^{-1}`.
fn symmetry_images(a: &APoly) -> Vec<(String, LaurentPoly)> {
    let g = a.genus;
    let mut out = Vec::new();
    for i in 1..g {
        let (x, y) = (VarId::Alpha(i as u8), VarId::Alpha(i as u8 + 1));
        out.push((alloc::format!("swap a{i} a{}", i + 1), a.value.swap_vars(x, y)));
    }
    for i in 1..=g {
        let ai = VarId::Alpha(i as u8);
        let image = Monomial::from_pairs(&[(VarId::Q, 1), (ai, -1)]);
        let map = MonomialMap::identity().with(ai, Rational::ONE, image);
        out.push((alloc::format!("a{i} -> q/a{i}"), a.value.substitute(&map, g)));
    }
    out
}

pub fn symmetry_of(a: &APoly) -> CheckReport {
    for (name, image) in symmetry_images(a) {
        if image != a.value {
            return CheckReport::fail(
                CheckKind::Symmetry,
                a.genus,
                None,
                Some(a.rank),
                image.to_canonical(),
                a.value.to_canonical(),
                &name,
            );
        }
    }
    CheckReport::pass(CheckKind::Symmetry, a.genus, None, Some(a.rank))
}

pub fn check_symmetry(g: usize, r: usize) -> CheckReport {
    match mellit::a_poly(g, r) {
        Ok(a) => symmetry_of(&a),
        Err(e) => CheckReport::error(CheckKind::Symmetry, g, None, Some(r), e),
    }
}

/// `A_{g,r}` is divisible by `Π_i (1-α_i)(1-α_i^{-1} q)`.
pub fn rank_one_factor_of(a: &APoly) -> CheckReport {
    let factor = mellit::rank_one_h(a.genus).eval_var(VarId::Z, &Rational::ONE);
    match a.value.exact_divide(&factor) {
        Ok(_) => CheckReport::pass(CheckKind::RankOneFactor, a.genus, None, Some(a.rank)),
        Err(e) => CheckReport::error(CheckKind::RankOneFactor, a.genus, None, Some(a.rank), e),
    }
}

fn rank2_check(g: usize, b: usize, real: &LaurentPoly) -> CheckReport {
    let kind = CheckKind::RankTwoClosedForm;
    let (signed, literal) = match (rank2::p_rank2_signed(g, b), rank2::p_rank2(g, b)) {
        (Ok(s), Ok(l)) => (s.poly, l.poly),
        (Err(e), _) | (_, Err(e)) => return CheckReport::error(kind, g, Some(b), Some(2), e),
    };
    if literal != -&signed {
        return CheckReport::fail(
            kind,
            g,
            Some(b),
            Some(2),
            literal.to_canonical(),
            signed.to_canonical(),
            "sign variants disagree",
        );
    }
    CheckReport::compare(
        kind,
        g,
        Some(b),
        Some(2),
        &signed,
        real,
        "closed form (signed prefactor) vs specialization",
    )
}

/// One unit of suite work: everything that depends on a single genus.
///
/// `A_{g,r}` is computed once for all `r ≤ max_r`, and the fast path once
/// per `b`, so the tasks of a grid are independent and may run in parallel.
pub fn genus_task(g: usize, max_r: usize) -> Vec<CheckReport> {
    let mut out = Vec::new();
    if max_r == 0 {
        return out;
    }
    let a_polys = match mellit::a_polys(g, max_r) {
        Ok(v) => {
            for a in &v {
                out.push(CheckReport::pass(CheckKind::Polynomiality, g, None, Some(a.rank)));
            }
            v
        }
        Err(e) => {
            out.push(CheckReport::error(CheckKind::Polynomiality, g, None, None, e));
            Vec::new()
        }
    };
    for a in &a_polys {
        out.push(symmetry_of(a));
        out.push(rank_one_factor_of(a));
    }
    for b in 0..=g {
        let fast = match specialization::specialize_alpha_early(g, b, max_r) {
            Ok(v) => v,
            Err(e) => {
                out.push(CheckReport::error(CheckKind::PipelineAgreement, g, Some(b), None, e));
                continue;
            }
        };
        for (i, poly) in fast.iter().enumerate() {
            let r = i + 1;
            out.push(divisibility_of(poly, g, b, r));
            out.push(degree_of(poly, g, b, r));
            if let Some(a) = a_polys.get(i) {
                out.push(match real_from_a(a, b) {
                    Ok(generic) => CheckReport::compare(
                        CheckKind::PipelineAgreement,
                        g,
                        Some(b),
                        Some(r),
                        &generic,
                        poly,
                        "generic vs fast-specialized",
                    ),
                    Err(e) => CheckReport::error(CheckKind::PipelineAgreement, g, Some(b), Some(r), e),
                });
            }
            if r == 2 {
                out.push(rank2_check(g, b, poly));
            }
        }
        out.push(match zeta::zeta_substitution_check(g, b) {
            Ok(()) => CheckReport::pass(CheckKind::ZetaSubstitution, g, Some(b), None),
            Err(e) => CheckReport::error(CheckKind::ZetaSubstitution, g, Some(b), None, e),
        });
        out.push(component_sum_check(g, b, 10));
    }
    out
}

pub fn component_sum_check(g: usize, b: usize, order: usize) -> CheckReport {
    let kind = CheckKind::ComponentSum;
    match (
        zeta::real_sym_series(g, b, order),
        zeta::component_sum_series(g, b, order),
    ) {
        (Ok(closed), Ok(sum)) => {
            for n in 0..=order {
                if closed.coeff(n) != sum.coeff(n) {
                    return CheckReport::fail(
                        kind,
                        g,
                        Some(b),
                        None,
                        closed.coeff(n).to_canonical(),
                        sum.coeff(n).to_canonical(),
                        "closed form vs component sum",
                    );
                }
            }
            CheckReport::pass(kind, g, Some(b), None)
        }
        (Err(e), _) | (_, Err(e)) => CheckReport::error(kind, g, Some(b), None, e),
    }
}

/// Puts reports in the canonical order: by check, then `g`, `b`, `r`.
pub fn sort_reports(reports: &mut [CheckReport]) {
    reports.sort_by_key(|r| r.sort_key());
}

/// Runs every check over `1 ≤ g ≤ max_g`, `0 ≤ b ≤ g`, `1 ≤ r ≤ max_r`.
pub fn run_suite(max_g: usize, max_r: usize) -> Vec<CheckReport> {
    let mut out: Vec<CheckReport> = (1..=max_g).flat_map(|g| genus_task(g, max_r)).collect();
    sort_reports(&mut out);
    out
}

/// The pipeline a report's real polynomial came from.
pub const SUITE_PIPELINE: Pipeline = Pipeline::FastSpecialized;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid_is_empty() {
        assert!(run_suite(0, 3).is_empty());
        assert!(run_suite(2, 0).is_empty());
    }

    #[test]
    fn small_grid_passes() {
        let reports = run_suite(2, 2);
        for r in &reports {
            assert!(r.passed, "{r}");
        }
        // zeta checks cover every b ≤ g.
        let zeta = reports.iter().filter(|r| r.kind == CheckKind::ZetaSubstitution).count();
        assert_eq!(zeta, 2 + 3);
        let mut sorted = reports.clone();
        sort_reports(&mut sorted);
        assert_eq!(sorted, reports);
    }

    #[test]
    fn rank_one_quotient() {
        for g in 1..=3 {
            for b in 0..=g {
                let rep = check_divisibility(g, b, 1);
                assert!(rep.passed);
                let sign = if g % 2 == 0 { 1 } else { -1 };
                let expected = LaurentPoly::monomial(0, Monomial::var(VarId::T, g as i32), Rational::from_i64(sign));
                assert_eq!(rep.detail.unwrap(), expected.to_canonical());
                assert!(check_degree(g, b, 1).passed);
            }
        }
    }

    #[test]
    fn symmetry_at_rank_one_and_two() {
        assert!(check_symmetry(2, 1).passed);
        assert!(check_symmetry(2, 2).passed);
    }

    #[test]
    fn failures_carry_witnesses() {
        let a = APoly {
            genus: 2,
            rank: 1,
            value: LaurentPoly::var(2, VarId::Alpha(1)),
        };
        let rep = symmetry_of(&a);
        assert!(!rep.passed);
        let w = rep.witness.unwrap();
        assert_eq!(w.right, a.value.to_canonical());
        assert!(!degree_of(&LaurentPoly::one(0), 1, 0, 1).passed);
    }
}
