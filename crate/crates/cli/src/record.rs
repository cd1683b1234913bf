use serde::{Deserialize, Serialize};

use higgs_betti_core::algebra::{LaurentPoly, Monomial, Rational, VarId};
use higgs_betti_core::specialization::{BettiResult, FieldCase, RealLocus};
use higgs_betti_core::ENGINE_VERSION;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub g: usize,
    /// `None` for the complex case.
    pub b: Option<usize>,
    pub r: usize,
    pub d: Option<i64>,
    pub field: String,
}

/// One computed polynomial, as printed by `compute` and `table`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub params: Params,
    /// `[exponent, coefficient]` pairs in ascending exponent order.
    pub poly: Vec<(i32, String)>,
    pub pipeline: String,
    pub engine_version: String,
    pub wall_ms: u64,
}

impl OutputRecord {
    pub fn new(res: &BettiResult, wall_ms: u64) -> Self {
        let b = match (res.field, res.curve.real_locus) {
            (FieldCase::Real, RealLocus::Circles(b)) => Some(b),
            _ => None,
        };
        OutputRecord {
            params: Params {
                g: res.curve.g,
                b,
                r: res.r,
                d: res.d,
                field: res.field.to_string(),
            },
            poly: res
                .coefficients()
                .into_iter()
                .map(|(e, c)| (e, c.to_string()))
                .collect(),
            pipeline: res.pipeline.to_string(),
            engine_version: ENGINE_VERSION.to_string(),
            wall_ms,
        }
    }

    /// The polynomial in `t`, parsed back from its coefficient strings.
    pub fn polynomial(&self) -> Result<LaurentPoly, CliError> {
        let mut terms = Vec::with_capacity(self.poly.len());
        for (e, c) in &self.poly {
            let c: Rational = c
                .parse()
                .map_err(|_| CliError::Invalid(format!("bad coefficient `{c}` in record")))?;
            terms.push((Monomial::var(VarId::T, *e), c));
        }
        Ok(LaurentPoly::from_terms(0, terms))
    }

    pub fn coefficients(&self) -> Result<Vec<(i32, Rational)>, CliError> {
        Ok(self.polynomial()?.univariate_coeffs(VarId::T))
    }
}
