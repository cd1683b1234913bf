//! Sparse multivariate Laurent polynomials with exact rational coefficients.

use alloc::boxed::Box;
use alloc::collections::BinaryHeap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::monomial::{Monomial, VarId, MAX_GENUS, MAX_VARS};
use super::rational::Rational;
use super::AlgebraError;

type Term = (Monomial, Rational);

/// A Laurent polynomial in `q, z, u, t, s, α_1..α_g`.
///
/// Terms are kept sorted ascending by monomial with no zero coefficients, so
/// structural equality is value equality. `genus` fixes the arity: monomials
/// never mention `α_i` with `i > genus`, and binary operations require equal
/// genus.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    genus: u8,
    terms: Vec<Term>,
}

impl LaurentPoly {
    pub fn zero(genus: usize) -> Self {
        assert!(genus <= MAX_GENUS, "genus {genus} exceeds {MAX_GENUS}");
        LaurentPoly {
            genus: genus as u8,
            terms: Vec::new(),
        }
    }

    pub fn one(genus: usize) -> Self {
        Self::constant(genus, Rational::ONE)
    }

    pub fn constant(genus: usize, c: Rational) -> Self {
        Self::monomial(genus, Monomial::ONE, c)
    }

    pub fn var(genus: usize, v: VarId) -> Self {
        Self::monomial(genus, Monomial::var(v, 1), Rational::ONE)
    }

    pub fn monomial(genus: usize, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(genus);
        assert!(m.max_alpha() <= genus, "monomial {m} exceeds genus {genus}");
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// `a - b` for two monomials.
    pub fn binomial(genus: usize, a: Monomial, b: Monomial) -> Self {
        Self::from_terms(genus, [(a, Rational::ONE), (b, Rational::from_i64(-1))])
    }

    /// Builds from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(genus: usize, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut v: Vec<Term> = terms.into_iter().collect();
        for (m, _) in &v {
            assert!(m.max_alpha() <= genus, "monomial {m} exceeds genus {genus}");
        }
        v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<Term> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += &c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|l| l.1.is_zero()) {
            out.pop();
        }
        let mut p = Self::zero(genus);
        p.terms = out;
        p
    }

    /// Builds from terms already strictly ascending and nonzero.
    fn from_sorted(genus: u8, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        LaurentPoly { genus, terms }
    }

    pub fn genus(&self) -> usize {
        self.genus as usize
    }

    /// The same polynomial regarded in a ring with `genus` alpha variables.
    /// Panics if an `α_i` with `i > genus` occurs.
    pub fn with_genus(mut self, genus: usize) -> Self {
        assert!(genus <= MAX_GENUS);
        assert!(
            self.terms.iter().all(|(m, _)| m.max_alpha() <= genus),
            "polynomial uses alpha variables beyond genus {genus}"
        );
        self.genus = genus as u8;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Terms in descending monomial order (the canonical print order).
    pub fn terms_desc(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().rev()
    }

    /// Leading term under the lexicographic order.
    pub fn leading(&self) -> Option<&Term> {
        self.terms.last()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        match self.terms.binary_search_by(|t| t.0.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::ZERO,
        }
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::ONE)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// `(min, max)` exponent of `v` over all terms; `None` for zero.
    pub fn degree_range(&self, v: VarId) -> Option<(i32, i32)> {
        let slot = v.slot();
        let mut it = self.terms.iter().map(|(m, _)| m.exp_at(slot));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    pub fn degree_in(&self, v: VarId) -> Option<i32> {
        self.degree_range(v).map(|r| r.1)
    }

    pub fn all_coefficients_integer(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    fn check_arity(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.genus != other.genus {
            return Err(AlgebraError::ArityMismatch {
                left: self.genus as usize,
                right: other.genus as usize,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_arity(other)?;
        Ok(Self::from_sorted(
            self.genus,
            merge(&self.terms, other.terms.iter().cloned()),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_arity(other)?;
        Ok(Self::from_sorted(
            self.genus,
            merge(&self.terms, other.terms.iter().map(|(m, c)| (*m, -c))),
        ))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_arity(other)?;
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let terms = match small.len() {
            0 => Vec::new(),
            1..=4 => mul_by_merging(&small.terms, &big.terms),
            _ => mul_with_heap(&small.terms, &big.terms),
        };
        Ok(Self::from_sorted(self.genus, terms))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.genus());
        }
        let terms = self.terms.iter().map(|(m, x)| (*m, x * c)).collect();
        Self::from_sorted(self.genus, terms)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        assert!(m.max_alpha() <= self.genus());
        if c.is_zero() {
            return Self::zero(self.genus());
        }
        let terms = self.terms.iter().map(|(x, a)| (x.mul(m), a * c)).collect();
        Self::from_sorted(self.genus, terms)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.genus());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d`.
    ///
    /// Succeeds iff some Laurent polynomial `r` with `r * d == self` exists and
    /// `r` keeps non-negative powers of `q, z, u, t` wherever `self` does.
    /// Otherwise fails with [`AlgebraError::NotDivisible`], carrying the
    /// remainder left by the division attempt.
    pub fn exact_divide(&self, d: &Self) -> Result<Self, AlgebraError> {
        self.check_arity(d)?;
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.genus()));
        }
        if d.len() == 1 {
            let (m, c) = &d.terms[0];
            let inv = c.inv().expect("nonzero coefficient");
            let q = self.mul_monomial(&m.inverse(), &inv);
            return match self.first_bad_exponent(&q) {
                None => Ok(q),
                Some(_) => Err(self.not_divisible(d, &Self::zero(self.genus()))),
            };
        }
        let bounds = QuotientBox::new(self, d);

        // Quotient terms are produced in descending order. Each non-leading
        // divisor term j contributes the stream q[k] * d[j] (k = 0, 1, ...),
        // which is itself descending, so the next monomial of the running
        // remainder is the maximum over the dividend and these streams.
        let d_desc: Vec<&Term> = d.terms.iter().rev().collect();
        let (lead_m, lead_c) = d_desc[0];
        let lead_inv = lead_c.inv().expect("nonzero coefficient");
        let tail = &d_desc[1..];
        let mut cursor = vec_of(tail.len(), 0usize);
        let mut quotient: Vec<Term> = Vec::new();
        let mut p_iter = self.terms.iter().rev().peekable();

        loop {
            let mut best: Option<Monomial> = p_iter.peek().map(|t| t.0);
            for (j, (dm, _)) in tail.iter().enumerate() {
                if cursor[j] < quotient.len() {
                    let m = quotient[cursor[j]].0.mul(dm);
                    if best.is_none_or(|b| m > b) {
                        best = Some(m);
                    }
                }
            }
            let Some(m) = best else { break };
            let mut acc = Rational::ZERO;
            if let Some((pm, pc)) = p_iter.peek() {
                if *pm == m {
                    acc += pc;
                    p_iter.next();
                }
            }
            for (j, (dm, dc)) in tail.iter().enumerate() {
                if cursor[j] < quotient.len() {
                    let (qm, qc) = &quotient[cursor[j]];
                    if qm.mul(dm) == m {
                        acc -= &(qc * dc);
                        cursor[j] += 1;
                    }
                }
            }
            if acc.is_zero() {
                continue;
            }
            let qm = m.div(lead_m);
            if !bounds.contains(&qm) {
                quotient.reverse();
                let partial = Self::from_sorted(self.genus, quotient);
                return Err(self.not_divisible(d, &partial));
            }
            quotient.push((qm, &acc * &lead_inv));
        }
        quotient.reverse();
        Ok(Self::from_sorted(self.genus, quotient))
    }

    fn first_bad_exponent(&self, q: &Self) -> Option<VarId> {
        for v in [VarId::Q, VarId::Z, VarId::U, VarId::T] {
            let src_ok = self.degree_range(v).is_none_or(|(lo, _)| lo >= 0);
            let q_ok = q.degree_range(v).is_none_or(|(lo, _)| lo >= 0);
            if src_ok && !q_ok {
                return Some(v);
            }
        }
        None
    }

    fn not_divisible(&self, d: &Self, partial_quotient: &Self) -> AlgebraError {
        let remainder = self - &(partial_quotient * d);
        AlgebraError::NotDivisible {
            divisor: Box::new(d.clone()),
            remainder: Box::new(remainder),
        }
    }

    /// The Adams operation `ψ_k`: every variable `v` replaced by `v^k`.
    pub fn substitute_powers(&self, k: u32) -> Self {
        assert!(k >= 1, "power substitution needs k >= 1");
        if k == 1 {
            return self.clone();
        }
        // Scaling exponent vectors by k > 0 preserves the lexicographic order.
        let terms = self.terms.iter().map(|(m, c)| (m.pow(k as i32), c.clone())).collect();
        Self::from_sorted(self.genus, terms)
    }

    /// Substitutes each variable by a scaled monomial `v ↦ c_v · m_v`.
    ///
    /// `images[slot]` gives the image of the variable in that slot; `None`
    /// keeps the variable. Coefficients of variables that occur with negative
    /// exponents must be invertible. The result lives in genus `target_genus`.
    pub fn substitute(&self, images: &MonomialMap, target_genus: usize) -> Self {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut mono = Monomial::ONE;
            let mut coeff = c.clone();
            for (v, e) in m.iter() {
                match &images.images[v.slot()] {
                    None => mono = mono.mul(&Monomial::var(v, e)),
                    Some((ic, im)) => {
                        mono = mono.mul(&im.pow(e));
                        if !ic.is_one() {
                            coeff = &coeff * &ic.pow(e);
                        }
                    }
                }
            }
            out.push((mono, coeff));
        }
        Self::from_terms(target_genus, out)
    }

    /// Sets `v = value` for a rational `value` (nonzero if `v` has negative powers).
    pub fn eval_var(&self, v: VarId, value: &Rational) -> Self {
        let mut map = MonomialMap::identity();
        map.set(v, value.clone(), Monomial::ONE);
        self.substitute(&map, self.genus())
    }

    /// Evaluates a polynomial whose only variable is `v` at `value`.
    pub fn eval_univariate(&self, v: VarId, value: &Rational) -> Rational {
        let e = self.eval_var(v, value);
        assert!(e.is_constant(), "polynomial is not univariate in {v}");
        e.constant_term()
    }

    /// Coefficients of a polynomial in a single variable `v`, as
    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn univariate_coeffs(&self, v: VarId) -> Vec<(i32, Rational)> {
        let mut out: Vec<(i32, Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                assert_eq!(*m, Monomial::var(v, m.get(v)), "polynomial is not univariate in {v}");
                (m.get(v), c.clone())
            })
            .collect();
        out.sort_by_key(|t| t.0);
        out
    }

    /// Drops every term whose exponent of `v` exceeds `max_exp`.
    pub fn truncate_in(&self, v: VarId, max_exp: i32) -> Self {
        let slot = v.slot();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp_at(slot) <= max_exp)
            .cloned()
            .collect();
        Self::from_sorted(self.genus, terms)
    }

    /// Coefficient of `v^e`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: VarId, e: i32) -> Self {
        let slot = v.slot();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp_at(slot) == e)
            .map(|(m, c)| {
                let mut m = *m;
                m.set(v, 0);
                (m, c.clone())
            })
            .collect::<Vec<_>>();
        Self::from_terms(self.genus(), terms)
    }

    /// Exchanges two variables.
    pub fn swap_vars(&self, a: VarId, b: VarId) -> Self {
        Self::from_terms(self.genus(), self.terms.iter().map(|(m, c)| (m.swap(a, b), c.clone())))
    }

    /// Multiplies out the sign: the same polynomial with `sign` factored so
    /// that the leading coefficient is positive.
    pub fn sign_normalized(&self) -> (Self, bool) {
        match self.leading() {
            Some((_, c)) if c.is_negative() => (-self, true),
            _ => (self.clone(), false),
        }
    }

    /// Canonical text form: terms in descending monomial order joined by
    /// `" + "`, each written `num/den` or `num/den*monomial`.
    pub fn to_canonical(&self) -> String {
        if self.is_zero() {
            return "0/1".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms_desc().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            s.push_str(&c.canonical());
            if !m.is_one() {
                s.push('*');
                s.push_str(&m.to_string());
            }
        }
        s
    }

    /// Parses the canonical text form in a ring of the given genus.
    pub fn parse_canonical(genus: usize, text: &str) -> Result<Self, AlgebraError> {
        let text = text.trim();
        let bad = |why: &str| AlgebraError::Parse(alloc::format!("{why}: `{text}`"));
        let mut terms = Vec::new();
        for piece in text.split(" + ") {
            let mut factors = piece.split('*');
            let coeff: Rational = factors
                .next()
                .ok_or_else(|| bad("empty term"))?
                .parse()
                .map_err(|_| bad("bad coefficient"))?;
            let mut m = Monomial::ONE;
            for f in factors {
                let (name, exp) = match f.split_once('^') {
                    Some((n, e)) => (n, e.parse::<i32>().map_err(|_| bad("bad exponent"))?),
                    None => (f, 1),
                };
                let v = VarId::parse(name).ok_or_else(|| bad("unknown variable"))?;
                if let VarId::Alpha(i) = v {
                    if i as usize > genus {
                        return Err(bad("alpha index exceeds genus"));
                    }
                }
                m = m.mul(&Monomial::var(v, exp));
            }
            terms.push((m, coeff));
        }
        Ok(Self::from_terms(genus, terms))
    }
}

fn vec_of<T: Clone>(n: usize, v: T) -> Vec<T> {
    alloc::vec![v; n]
}

/// Per-variable exponent window every quotient monomial must fall in: for
/// an exact product, the min and max exponent of each variable add.
struct QuotientBox {
    lo: [i32; MAX_VARS],
    hi: [i32; MAX_VARS],
}

impl QuotientBox {
    fn new(p: &LaurentPoly, d: &LaurentPoly) -> Self {
        let mut lo = [0; MAX_VARS];
        let mut hi = [0; MAX_VARS];
        for s in 0..MAX_VARS {
            let v = VarId::from_slot(s);
            let (plo, phi) = p.degree_range(v).unwrap();
            let (dlo, dhi) = d.degree_range(v).unwrap();
            lo[s] = plo - dlo;
            hi[s] = phi - dhi;
            if !v.is_laurent() && plo >= 0 {
                lo[s] = lo[s].max(0);
            }
        }
        QuotientBox { lo, hi }
    }

    fn contains(&self, m: &Monomial) -> bool {
        (0..MAX_VARS).all(|s| {
            let e = m.exp_at(s);
            self.lo[s] <= e && e <= self.hi[s]
        })
    }
}

/// Sorted merge of `a` with an ascending stream `b`, summing equal monomials.
fn merge(a: &[Term], b: impl Iterator<Item = Term>) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len());
    let mut ai = a.iter().peekable();
    let mut bi = b.peekable();
    loop {
        match (ai.peek(), bi.peek()) {
            (None, None) => break,
            (Some(_), None) => out.push(ai.next().unwrap().clone()),
            (None, Some(_)) => out.push(bi.next().unwrap()),
            (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                core::cmp::Ordering::Less => out.push(ai.next().unwrap().clone()),
                core::cmp::Ordering::Greater => out.push(bi.next().unwrap()),
                core::cmp::Ordering::Equal => {
                    let (m, c) = ai.next().unwrap();
                    let (_, d) = bi.next().unwrap();
                    let s = c + &d;
                    if !s.is_zero() {
                        out.push((*m, s));
                    }
                }
            },
        }
    }
    out
}

fn merge_owned(a: Vec<Term>, b: Vec<Term>) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ai = a.into_iter().peekable();
    let mut bi = b.into_iter().peekable();
    loop {
        match (ai.peek(), bi.peek()) {
            (None, None) => break,
            (Some(_), None) => out.extend(ai.by_ref()),
            (None, Some(_)) => out.extend(bi.by_ref()),
            (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                core::cmp::Ordering::Less => out.push(ai.next().unwrap()),
                core::cmp::Ordering::Greater => out.push(bi.next().unwrap()),
                core::cmp::Ordering::Equal => {
                    let (m, mut c) = ai.next().unwrap();
                    let (_, d) = bi.next().unwrap();
                    c += &d;
                    if !c.is_zero() {
                        out.push((m, c));
                    }
                }
            },
        }
    }
    out
}

// Multiplying a sorted list by one monomial keeps it sorted, so a product
// with a short factor is a merge of a few shifted copies.
fn mul_by_merging(small: &[Term], big: &[Term]) -> Vec<Term> {
    let mut parts: Vec<Vec<Term>> = small
        .iter()
        .map(|(sm, sc)| big.iter().map(|(bm, bc)| (bm.mul(sm), bc * sc)).collect())
        .collect();
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(merge_owned(a, b)),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.pop().unwrap_or_default()
}

// Heap multiplication: one cursor per term of the shorter factor, producing
// the product in ascending order with O(len(small)) working memory.
fn mul_with_heap(small: &[Term], big: &[Term]) -> Vec<Term> {
    let mut heap: BinaryHeap<Reverse<(Monomial, usize, usize)>> = small
        .iter()
        .enumerate()
        .map(|(i, (m, _))| Reverse((m.mul(&big[0].0), i, 0)))
        .collect();
    let mut out: Vec<Term> = Vec::new();
    while let Some(Reverse((m, i, j))) = heap.pop() {
        let c = &small[i].1 * &big[j].1;
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 += &c,
            _ => {
                if out.last().is_some_and(|l| l.1.is_zero()) {
                    out.pop();
                }
                out.push((m, c));
            }
        }
        if j + 1 < big.len() {
            heap.push(Reverse((small[i].0.mul(&big[j + 1].0), i, j + 1)));
        }
    }
    if out.last().is_some_and(|l| l.1.is_zero()) {
        out.pop();
    }
    out
}

/// Images of variables under a monomial substitution `v ↦ c · m`.
#[derive(Clone, Debug)]
pub struct MonomialMap {
    images: [Option<(Rational, Monomial)>; MAX_VARS],
}

impl MonomialMap {
    pub fn identity() -> Self {
        MonomialMap {
            images: core::array::from_fn(|_| None),
        }
    }

    pub fn set(&mut self, v: VarId, c: Rational, m: Monomial) -> &mut Self {
        self.images[v.slot()] = Some((c, m));
        self
    }

    pub fn with(mut self, v: VarId, c: Rational, m: Monomial) -> Self {
        self.set(v, c, m);
        self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[g={}]({})", self.genus, self.to_canonical())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    /// Panics on arity mismatch; see [`LaurentPoly::checked_add`].
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("polynomial arity mismatch")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("polynomial arity mismatch")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("polynomial arity mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        LaurentPoly::from_sorted(self.genus, terms)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Shorthand used throughout the crate and its tests.
pub mod build {
    use super::*;

    pub fn q(g: usize) -> LaurentPoly {
        LaurentPoly::var(g, VarId::Q)
    }
    pub fn z(g: usize) -> LaurentPoly {
        LaurentPoly::var(g, VarId::Z)
    }
    pub fn u(g: usize) -> LaurentPoly {
        LaurentPoly::var(g, VarId::U)
    }
    pub fn t(g: usize) -> LaurentPoly {
        LaurentPoly::var(g, VarId::T)
    }
    pub fn alpha(g: usize, i: u8) -> LaurentPoly {
        LaurentPoly::var(g, VarId::Alpha(i))
    }
    pub fn alpha_inv(g: usize, i: u8) -> LaurentPoly {
        LaurentPoly::monomial(g, Monomial::var(VarId::Alpha(i), -1), Rational::ONE)
    }
    pub fn c(g: usize, v: i64) -> LaurentPoly {
        LaurentPoly::constant(g, Rational::from_i64(v))
    }
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;

    #[test]
    fn add_cancels() {
        // (1 - t) + t = 1
        let p = &c(0, 1) - &t(0);
        assert_eq!(&p + &t(0), c(0, 1));
        // p + 0 = p
        assert_eq!(&p + &LaurentPoly::zero(0), p);
        // (z - α1) + α1 = z
        assert_eq!(&(&z(1) - &alpha(1, 1)) + &alpha(1, 1), z(1));
    }

    #[test]
    fn mul_small_products() {
        let one = c(0, 1);
        assert_eq!(&(&one + &u(0)) * &(&one - &u(0)), &one - &u(0).pow(2));
        let p = &(&z(0) * &q(0)) + &c(0, 3);
        assert_eq!(&p * &one, p);
        assert_eq!(&(&z(0) - &one) * &(&z(0) + &one), &z(0).pow(2) - &one);
    }

    #[test]
    fn heap_and_merge_multiplication_agree() {
        let a = (&(&c(2, 1) + &z(2)) + &(&alpha(2, 1) + &q(2))).pow(3);
        let b = (&(&c(2, 2) - &alpha_inv(2, 2)) + &(&z(2) * &q(2))).pow(2);
        let heap = LaurentPoly::from_sorted(2, mul_with_heap(&a.terms, &b.terms));
        let merged = LaurentPoly::from_sorted(2, mul_by_merging(&a.terms, &b.terms));
        assert_eq!(heap, merged);
        assert_eq!(&a * &b, heap);
    }

    #[test]
    fn exact_division_examples() {
        let one = c(0, 1);
        let num = &one - &t(0).pow(2);
        assert_eq!(num.exact_divide(&(&one - &t(0))).unwrap(), &one + &t(0));
        let num = &z(0).pow(2) - &one;
        assert_eq!(num.exact_divide(&(&z(0) - &one)).unwrap(), &z(0) + &one);
        let err = (&one + &t(0)).exact_divide(&(&one - &t(0))).unwrap_err();
        match err {
            AlgebraError::NotDivisible { remainder, .. } => assert!(!remainder.is_zero()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn division_respects_polynomial_variables() {
        // z / z^2 would need z^-1.
        assert!(z(0).exact_divide(&z(0).pow(2)).is_err());
        // α is Laurent, so α / α^2 = α^-1.
        assert_eq!(alpha(1, 1).exact_divide(&alpha(1, 1).pow(2)).unwrap(), alpha_inv(1, 1));
        // Laurent divisor with a negative alpha power.
        let d = &c(1, 1) - &(&alpha_inv(1, 1) * &q(1));
        let p = &d * &(&z(1) - &alpha(1, 1));
        assert_eq!(p.exact_divide(&d).unwrap(), &z(1) - &alpha(1, 1));
    }

    #[test]
    fn division_by_zero_and_arity() {
        assert_eq!(
            c(0, 1).exact_divide(&LaurentPoly::zero(0)),
            Err(AlgebraError::DivisionByZero)
        );
        assert!(matches!(
            c(0, 1).checked_add(&c(1, 1)),
            Err(AlgebraError::ArityMismatch { left: 0, right: 1 })
        ));
    }

    #[test]
    fn substitute_powers_examples() {
        let p = &z(1) - &alpha(1, 1);
        assert_eq!(p.substitute_powers(2), &z(1).pow(2) - &alpha(1, 1).pow(2));
        assert_eq!(p.substitute_powers(1), p);
        let f = &z(0).pow(2) - &q(0);
        assert_eq!(f.substitute_powers(3), &z(0).pow(6) - &q(0).pow(3));
    }

    #[test]
    fn canonical_round_trip() {
        let p = &(&q(2).pow(2) * &alpha_inv(2, 1)).scale(&Rational::new(-3, 2)) + &c(2, 7);
        let s = p.to_canonical();
        assert_eq!(s, "-3/2*q^2*a1^-1 + 7/1");
        assert_eq!(LaurentPoly::parse_canonical(2, &s).unwrap(), p);
        assert_eq!(LaurentPoly::parse_canonical(0, "0/1").unwrap(), LaurentPoly::zero(0));
        assert!(LaurentPoly::parse_canonical(1, "1/1*a2").is_err());
    }

    #[test]
    fn monomial_substitution_with_negative_powers() {
        // α^-1 q with q = -u^2, α = -u gives u.
        let p = &alpha_inv(1, 1) * &q(1);
        let map = MonomialMap::identity()
            .with(VarId::Q, Rational::from_i64(-1), Monomial::var(VarId::U, 2))
            .with(VarId::Alpha(1), Rational::from_i64(-1), Monomial::var(VarId::U, 1));
        assert_eq!(p.substitute(&map, 0), u(0));
    }
}
