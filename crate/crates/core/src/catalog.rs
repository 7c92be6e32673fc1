//! Named test functions.
//!
//! Grammar: `const:<c>`, `cos:<a>`, `gauss-bump`, `erf-step[:<w>]`,
//! `hermite:<i>[,<j>...]`, `expansion:<path>`. All families except
//! `hermite` and `expansion` are one-dimensional.

use std::fmt;
use std::path::Path;

use serde::Serialize;
use statrs::function::erf::erf;

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::hermite::{hermite_eval, project, HermiteExpansion, MultiIndex};
use crate::quadrature::QuadratureRule;

pub const GRAMMAR: &str =
    "const:<c> | cos:<a> | gauss-bump | erf-step[:<w>] | hermite:<i>[,<j>...] | expansion:<path>";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    ClosedForm,
    Spectral,
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CatalogFunction {
    Const(f64),
    Cos(f64),
    GaussBump,
    /// `erf(x / w)`
    ErfStep(f64),
    Hermite(MultiIndex),
    Expansion(HermiteExpansion),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub dimension: usize,
    pub bounded: bool,
    pub oracle_kind: OracleKind,
    pub function: CatalogFunction,
}

fn parse_err(name: &str) -> Error {
    Error::Parse {
        input: name.to_owned(),
        grammar: GRAMMAR,
    }
}

fn parse_real(name: &str, s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| parse_err(name))
}

impl CatalogEntry {
    pub fn parse(name: &str) -> Result<Self> {
        let (family, arg) = match name.split_once(':') {
            Some((f, a)) => (f, Some(a)),
            None => (name, None),
        };
        let entry = |dimension, bounded, oracle_kind, function| CatalogEntry {
            name: name.to_owned(),
            dimension,
            bounded,
            oracle_kind,
            function,
        };
        match (family, arg) {
            ("const", Some(a)) => Ok(entry(1, true, OracleKind::ClosedForm, CatalogFunction::Const(parse_real(name, a)?))),
            ("cos", Some(a)) => Ok(entry(1, true, OracleKind::ClosedForm, CatalogFunction::Cos(parse_real(name, a)?))),
            ("gauss-bump", None) => Ok(entry(1, true, OracleKind::ClosedForm, CatalogFunction::GaussBump)),
            ("erf-step", arg) => {
                let w = match arg {
                    Some(a) => parse_real(name, a)?,
                    None => 1.0,
                };
                if !(w > 0.0) {
                    return Err(parse_err(name));
                }
                Ok(entry(1, true, OracleKind::Spectral, CatalogFunction::ErfStep(w)))
            }
            ("hermite", Some(a)) => {
                let entries = a
                    .split(',')
                    .map(|p| p.trim().parse::<u32>().map_err(|_| parse_err(name)))
                    .collect::<Result<Vec<_>>>()?;
                let nu = MultiIndex::new(entries);
                Ok(entry(nu.dim(), nu.degree() == 0, OracleKind::ClosedForm, CatalogFunction::Hermite(nu)))
            }
            ("expansion", Some(path)) if !path.is_empty() => {
                let e = HermiteExpansion::load(Path::new(path))?;
                let bounded = e.max_level() == 0;
                Ok(entry(e.dim(), bounded, OracleKind::Spectral, CatalogFunction::Expansion(e)))
            }
            _ => Err(parse_err(name)),
        }
    }

    /// The Hermite expansion: exact for constants, Hermite polynomials and
    /// stored expansions, otherwise projected with `rule` up to `degree_cap`.
    pub fn to_expansion(&self, degree_cap: usize, rule: &QuadratureRule) -> Result<HermiteExpansion> {
        match &self.function {
            CatalogFunction::Const(c) => Ok(HermiteExpansion::constant(1, degree_cap, *c)),
            CatalogFunction::Hermite(nu) => {
                if nu.degree() > degree_cap {
                    return Err(Error::invalid(format!(
                        "{} exceeds degree cap {degree_cap}",
                        self.name
                    )));
                }
                HermiteExpansion::basis(nu.clone(), degree_cap)
            }
            CatalogFunction::Expansion(e) => Ok(e.clone()),
            _ => project(self, degree_cap, rule),
        }
    }
}

impl ScalarField for CatalogEntry {
    fn dim(&self) -> usize {
        self.dimension
    }

    fn value(&self, x: &[f64]) -> f64 {
        match &self.function {
            CatalogFunction::Const(c) => *c,
            CatalogFunction::Cos(a) => (a * x[0]).cos(),
            CatalogFunction::GaussBump => (-x[0] * x[0]).exp(),
            CatalogFunction::ErfStep(w) => erf(x[0] / w),
            CatalogFunction::Hermite(nu) => hermite_eval(nu, x),
            CatalogFunction::Expansion(e) => e.eval(x),
        }
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
