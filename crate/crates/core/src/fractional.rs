//! Bessel and Riesz fractional integrals and derivatives with respect to the
//! Gaussian measure.
//!
//! Every operator here is a function of `(-L)^{1/2}` and therefore acts on
//! chaos level `n` by a scalar. The spectral representation applies the
//! closed-form multiplier; the integral representation evaluates the
//! subordinated `s`-integral numerically, per chaos level for expansions or
//! once per point for pointwise evaluation. The two representations of the
//! Bessel operators are *different* operators:
//!
//! | kind              | spectral          | integral          |
//! |-------------------|-------------------|-------------------|
//! | Bessel potential  | `(1+n)^{-β/2}`    | `(1+√n)^{-β}`     |
//! | Riesz potential   | `n^{-β/2}`        | `n^{-β/2}`        |
//! | Riesz derivative  | `n^{β/2}`         | `n^{β/2}`         |
//! | Bessel derivative | `(1+n)^{β/2}`     | `(1+√n)^{β}`      |
//!
//! Integral representations, with `u(s) = P_s f(x)`:
//!
//! * potentials: `(1/Γ(β)) ∫_0^∞ s^{β-1} w(s) u(s) ds`, `w = e^{-s}` (Bessel)
//!   or `1` (Riesz, mean-zero input only);
//! * derivatives: `(1/c^k_β) ∫_0^∞ s^{-β-1} Δ_s^k(w·u, 0) ds` with `k` the
//!   smallest integer above `β` and
//!   `c^k_β = ∫_0^∞ s^{-β-1} (e^{-s} - 1)^k ds`.
//!
//! On an expansion, `u` restricted to level `n` is `e^{-√n s}`, so every
//! integrand is a finite exponential sum `v(s) = Σ c_i e^{-r_i s}`
//! ([`ExpProfile`]). The `s`-axis is split into a series head on
//! `(0, 10⁻⁴)`, an adaptive middle on the log axis, and an analytic tail
//! beyond `S = 50/(1+√n)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::{gamma, gamma_ur};

use crate::error::{Error, Result};
use crate::forward_diff::{binomial_row, forward_difference_detailed, ForwardDifferenceQuery};
use crate::hermite::{project, HermiteExpansion};
use crate::quadrature::{integrate_interval_with, AdaptiveConfig, QuadratureRule};
use crate::semigroup::Operand;

pub const DEFAULT_TOL: f64 = 1e-11;
/// Below this `s` the integrands are replaced by their Taylor series.
pub const SERIES_CUTOFF: f64 = 1e-4;
const TAIL_SCALE: f64 = 50.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FractionalKind {
    BesselPotential,
    RieszPotential,
    RieszDerivative,
    BesselDerivative,
}

impl FractionalKind {
    pub const ALL: [FractionalKind; 4] = [
        FractionalKind::BesselPotential,
        FractionalKind::RieszPotential,
        FractionalKind::RieszDerivative,
        FractionalKind::BesselDerivative,
    ];

    pub fn is_derivative(self) -> bool {
        matches!(
            self,
            FractionalKind::RieszDerivative | FractionalKind::BesselDerivative
        )
    }

    pub fn is_bessel(self) -> bool {
        matches!(
            self,
            FractionalKind::BesselPotential | FractionalKind::BesselDerivative
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FractionalKind::BesselPotential => "bessel_potential",
            FractionalKind::RieszPotential => "riesz_potential",
            FractionalKind::RieszDerivative => "riesz_derivative",
            FractionalKind::BesselDerivative => "bessel_derivative",
        }
    }
}

impl fmt::Display for FractionalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FractionalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FractionalKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s || k.as_str().replace('_', "-") == s)
            .ok_or(Error::Parse {
                input: s.to_owned(),
                grammar: "bessel_potential | riesz_potential | riesz_derivative | bessel_derivative",
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    Spectral,
    Integral,
}

impl Representation {
    pub fn as_str(self) -> &'static str {
        match self {
            Representation::Spectral => "spectral",
            Representation::Integral => "integral",
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Representation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral" => Ok(Representation::Spectral),
            "integral" | "subordinated" => Ok(Representation::Integral),
            _ => Err(Error::Parse {
                input: s.to_owned(),
                grammar: "spectral | integral",
            }),
        }
    }
}

/// Report label; the two Bessel forms are kept apart by name.
pub fn representation_label(kind: FractionalKind, rep: Representation) -> &'static str {
    match (kind.is_bessel(), rep) {
        (true, Representation::Spectral) => "bessel.spectral",
        (true, Representation::Integral) => "bessel.subordinated",
        (false, Representation::Spectral) => "riesz.spectral",
        (false, Representation::Integral) => "riesz.integral",
    }
}

/// Smallest integer strictly greater than `beta`.
pub fn difference_order(beta: f64) -> usize {
    beta.floor() as usize + 1
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FractionalSpec {
    kind: FractionalKind,
    beta: f64,
    k: usize,
    representation: Representation,
    tol: f64,
}

impl FractionalSpec {
    pub fn new(kind: FractionalKind, beta: f64, representation: Representation) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::invalid(format!("order β must be > 0, got {beta}")));
        }
        Ok(FractionalSpec {
            kind,
            beta,
            k: difference_order(beta),
            representation,
            tol: DEFAULT_TOL,
        })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn kind(&self) -> FractionalKind {
        self.kind
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn label(&self) -> &'static str {
        representation_label(self.kind, self.representation)
    }
}

/// A finite exponential sum `v(s) = Σ c_i e^{-r_i s}` with rates `r_i ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpProfile {
    terms: Vec<(f64, f64)>,
}

impl ExpProfile {
    /// `(rate, coefficient)` pairs; rates must be non-negative.
    pub fn new(terms: Vec<(f64, f64)>) -> Result<Self> {
        if terms.iter().any(|(r, c)| !(*r >= 0.0 && r.is_finite() && c.is_finite())) {
            return Err(Error::invalid("profile rates must be finite and ≥ 0"));
        }
        Ok(ExpProfile { terms })
    }

    pub fn single(rate: f64) -> Result<Self> {
        Self::new(vec![(rate, 1.0)])
    }

    pub fn value(&self, s: f64) -> f64 {
        self.terms.iter().map(|(r, c)| c * (-r * s).exp()).sum()
    }

    /// `v^{(j)}(0)`
    pub fn derivative_at_zero(&self, j: usize) -> f64 {
        self.terms
            .iter()
            .map(|(r, c)| c * (-r).powi(j as i32))
            .sum()
    }

    /// `lim_{s→∞} v(s)`
    pub fn limit(&self) -> f64 {
        self.terms
            .iter()
            .filter(|(r, _)| *r == 0.0)
            .map(|(_, c)| c)
            .sum()
    }

    /// `Δ_s^k(v, 0) = Σ c_i (e^{-r_i s} - 1)^k`
    pub fn difference_at_zero(&self, s: f64, k: usize) -> f64 {
        self.terms
            .iter()
            .map(|(r, c)| c * (-r * s).exp_m1().powi(k as i32))
            .sum()
    }

    fn min_positive_rate(&self) -> Option<f64> {
        self.terms
            .iter()
            .filter(|(r, c)| *r > 0.0 && *c != 0.0)
            .map(|(r, _)| *r)
            .min_by(f64::total_cmp)
    }
}

/// An `s`-integral value with its error budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FractionalIntegral {
    pub value: f64,
    pub error: f64,
    /// Middle-region evaluations whose forward difference lost nearly all
    /// significant digits.
    pub cancellations: usize,
}

/// Tail cutoff `S = 50/(1+√n)` for chaos level `n` (`n = 0` maps to 50).
pub fn tail_cutoff(n: usize) -> f64 {
    TAIL_SCALE / (1.0 + (n as f64).sqrt())
}

fn middle_config(tol: f64) -> AdaptiveConfig {
    AdaptiveConfig {
        rel_tol: tol,
        abs_tol: tol,
        max_subdivisions: 200,
    }
}

/// `∫_0^∞ s^{β-1} v(s) ds`; `v` must vanish at infinity.
pub fn potential_integral(
    profile: &ExpProfile,
    beta: f64,
    cutoff: f64,
    tol: f64,
) -> Result<FractionalIntegral> {
    if !(beta > 0.0) {
        return Err(Error::invalid("β must be positive"));
    }
    if profile.limit() != 0.0 {
        return Err(Error::PreconditionViolation(
            "potential integral diverges: the input has a nonzero mean".into(),
        ));
    }
    let eps = SERIES_CUTOFF.min(cutoff * 0.5);
    // head: Σ_m v^{(m)}(0)/m! · ε^{β+m}/(β+m)
    let mut head = 0.0;
    let mut fact = 1.0;
    for m in 0..3 {
        if m > 0 {
            fact *= m as f64;
        }
        let mf = m as f64;
        head += profile.derivative_at_zero(m) / fact * eps.powf(beta + mf) / (beta + mf);
    }
    let head_err = (profile.derivative_at_zero(3) / 6.0).abs() * eps.powf(beta + 3.0) / (beta + 3.0);

    let (lo, hi) = (eps.ln(), cutoff.ln());
    let panels = ((hi - lo) / 2.0).ceil().max(1.0) as usize;
    let mid = integrate_interval_with(
        |u| {
            let s = u.exp();
            s.powf(beta) * profile.value(s)
        },
        lo,
        hi,
        panels,
        &middle_config(tol),
    )?;

    // tail: Σ c Γ(β) Q(β, rS) / r^β
    let g = gamma(beta);
    let tail: f64 = profile
        .terms
        .iter()
        .filter(|(r, c)| *r > 0.0 && *c != 0.0)
        .map(|(r, c)| c * g * gamma_ur(beta, r * cutoff) / r.powf(beta))
        .sum();

    Ok(FractionalIntegral {
        value: head + mid.value + tail,
        error: head_err + mid.error,
        cancellations: 0,
    })
}

/// `∫_0^∞ s^{-β-1} Δ_s^k(v, 0) ds` for `0 < β < k`.
pub fn difference_integral(
    profile: &ExpProfile,
    beta: f64,
    k: usize,
    cutoff: f64,
    tol: f64,
) -> Result<FractionalIntegral> {
    if !(beta > 0.0 && beta < k as f64) {
        return Err(Error::invalid(format!("need 0 < β < k, got β={beta}, k={k}")));
    }
    let kf = k as f64;
    let eps = SERIES_CUTOFF.min(cutoff * 0.5);
    // Δ_s^k v(0) = s^k v^{(k)}(0) [1 + (k/2) sD + k(3k+1)/24 (sD)² + k²(k+1)/48 (sD)³ + …]
    let coeffs = [1.0, kf / 2.0, kf * (3.0 * kf + 1.0) / 24.0];
    let mut head = 0.0;
    for (m, a) in coeffs.iter().enumerate() {
        let p = kf - beta + m as f64;
        head += a * profile.derivative_at_zero(k + m) * eps.powf(p) / p;
    }
    let p3 = kf - beta + 3.0;
    let head_err =
        (kf * kf * (kf + 1.0) / 48.0 * profile.derivative_at_zero(k + 3)).abs() * eps.powf(p3) / p3;

    let mut cancellations = 0usize;
    let r_max = profile.terms.iter().fold(0.0_f64, |m, (r, _)| m.max(*r));
    let (lo, hi) = (eps.ln(), cutoff.ln());
    let panels = ((hi - lo) / 2.0).ceil().max(1.0) as usize;
    let mid = integrate_interval_with(
        |u| {
            let s = u.exp();
            let diff = if s * r_max < 1.0 {
                // Δ_s^k e^{-r·}(0) = (e^{-rs} - 1)^k, free of cancellation
                profile.difference_at_zero(s, k)
            } else {
                let q = ForwardDifferenceQuery::new(0.0, s, k).expect("s > 0 on the log axis");
                let d = forward_difference_detailed(|x| profile.value(x), &q);
                if d.cancelled {
                    cancellations += 1;
                }
                d.value
            };
            s.powf(-beta) * diff
        },
        lo,
        hi,
        panels,
        &middle_config(tol),
    )?;

    // tail: the constant part of Δ integrates exactly; decaying parts are bounded
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let constant = sign * (profile.derivative_at_zero(0) - profile.limit());
    let tail = constant * cutoff.powf(-beta) / beta;
    let binom = binomial_row(k);
    let mut tail_err = 0.0;
    for (j, c) in binom.iter().enumerate().take(k) {
        for (r, coef) in &profile.terms {
            if *r > 0.0 {
                let a = r * (k - j) as f64;
                tail_err +=
                    *c as f64 * coef.abs() * cutoff.powf(-beta - 1.0) * (-a * cutoff).exp() / a;
            }
        }
    }

    Ok(FractionalIntegral {
        value: head + mid.value + tail,
        error: head_err + mid.error + tail_err,
        cancellations,
    })
}

/// `c^k_β = ∫_0^∞ u^{-β-1} (e^{-u} - 1)^k du` by quadrature.
pub fn c_beta_constant(beta: f64, k: usize) -> Result<f64> {
    c_beta_with_tol(beta, k, 1e-12)
}

fn c_beta_with_tol(beta: f64, k: usize, tol: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < k as f64) {
        return Err(Error::invalid(format!("need 0 < β < k, got β={beta}, k={k}")));
    }
    Ok(difference_integral(&ExpProfile::single(1.0)?, beta, k, tail_cutoff(1), tol)?.value)
}

/// `Σ_{j=1}^k C(k,j) (-1)^{k-j} j^β Γ(-β)`, the analytic continuation of the
/// termwise integrals; undefined at integer `β`.
pub fn c_beta_analytic(beta: f64, k: usize) -> Result<f64> {
    if !(beta > 0.0 && beta < k as f64) {
        return Err(Error::invalid(format!("need 0 < β < k, got β={beta}, k={k}")));
    }
    if beta.fract() == 0.0 {
        return Err(Error::invalid(format!(
            "Γ(-β) has a pole at integer β = {beta}; use the quadrature path"
        )));
    }
    let g = gamma(-beta);
    Ok(binomial_row(k)
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| {
            let sign = if (k - j) % 2 == 0 { 1.0 } else { -1.0 };
            sign * c as f64 * (j as f64).powf(beta) * g
        })
        .sum())
}

/// Closed-form multiplier of the operator on chaos level `n`.
pub fn eigenvalue_oracle(
    kind: FractionalKind,
    beta: f64,
    n: usize,
    representation: Representation,
) -> Result<f64> {
    let nf = n as f64;
    let root = nf.sqrt();
    Ok(match (kind, representation) {
        (FractionalKind::BesselPotential, Representation::Spectral) => (1.0 + nf).powf(-beta / 2.0),
        (FractionalKind::BesselPotential, Representation::Integral) => (1.0 + root).powf(-beta),
        (FractionalKind::RieszPotential, Representation::Spectral) => {
            if n == 0 {
                0.0
            } else {
                nf.powf(-beta / 2.0)
            }
        }
        (FractionalKind::RieszPotential, Representation::Integral) => {
            if n == 0 {
                return Err(Error::UndefinedInput(
                    "the Riesz potential integral diverges on constants".into(),
                ));
            }
            nf.powf(-beta / 2.0)
        }
        (FractionalKind::RieszDerivative, _) => {
            if n == 0 {
                0.0
            } else {
                nf.powf(beta / 2.0)
            }
        }
        (FractionalKind::BesselDerivative, Representation::Spectral) => (1.0 + nf).powf(beta / 2.0),
        (FractionalKind::BesselDerivative, Representation::Integral) => (1.0 + root).powf(beta),
    })
}

/// Shared state for integral-representation evaluations of one spec.
struct IntegralEvaluator {
    spec: FractionalSpec,
    normalizer: f64,
}

impl IntegralEvaluator {
    fn new(spec: &FractionalSpec) -> Result<Self> {
        let normalizer = if spec.kind.is_derivative() {
            c_beta_with_tol(spec.beta, spec.k, spec.tol.min(1e-12))?
        } else {
            gamma(spec.beta)
        };
        Ok(IntegralEvaluator {
            spec: *spec,
            normalizer,
        })
    }

    fn rate(&self, n: usize) -> f64 {
        let root = (n as f64).sqrt();
        if self.spec.kind.is_bessel() {
            1.0 + root
        } else {
            root
        }
    }

    fn integrate(&self, profile: &ExpProfile, cutoff: f64) -> Result<FractionalIntegral> {
        let raw = if self.spec.kind.is_derivative() {
            difference_integral(profile, self.spec.beta, self.spec.k, cutoff, self.spec.tol)?
        } else {
            potential_integral(profile, self.spec.beta, cutoff, self.spec.tol)?
        };
        Ok(FractionalIntegral {
            value: raw.value / self.normalizer,
            error: raw.error / self.normalizer.abs(),
            cancellations: raw.cancellations,
        })
    }

    fn level(&self, n: usize) -> Result<FractionalIntegral> {
        if self.spec.kind == FractionalKind::RieszPotential && n == 0 {
            return Err(Error::UndefinedInput(
                "the Riesz potential integral diverges on constants".into(),
            ));
        }
        self.integrate(&ExpProfile::single(self.rate(n))?, tail_cutoff(n))
    }
}

/// Multiplier on chaos level `n` in the representation chosen by `spec`; the
/// integral form is evaluated numerically.
pub fn level_eigenvalue(spec: &FractionalSpec, n: usize) -> Result<f64> {
    match spec.representation {
        Representation::Spectral => eigenvalue_oracle(spec.kind, spec.beta, n, Representation::Spectral),
        Representation::Integral => Ok(IntegralEvaluator::new(spec)?.level(n)?.value),
    }
}

/// Integral-form multiplier on level `n` with its error budget.
pub fn integral_eigenvalue(spec: &FractionalSpec, n: usize) -> Result<FractionalIntegral> {
    IntegralEvaluator::new(spec)?.level(n)
}

/// Applies the operator to an expansion, level by level.
pub fn apply(spec: &FractionalSpec, e: &HermiteExpansion) -> Result<HermiteExpansion> {
    match spec.representation {
        Representation::Spectral => {
            e.try_scale_levels(|n| eigenvalue_oracle(spec.kind, spec.beta, n, Representation::Spectral))
        }
        Representation::Integral => {
            if spec.kind == FractionalKind::RieszPotential {
                check_mean_zero(e)?;
            }
            let ev = IntegralEvaluator::new(spec)?;
            e.try_scale_levels(|n| {
                if n == 0 && spec.kind == FractionalKind::RieszPotential {
                    // mean already checked to be zero
                    Ok(0.0)
                } else {
                    Ok(ev.level(n)?.value)
                }
            })
        }
    }
}

fn check_mean_zero(e: &HermiteExpansion) -> Result<()> {
    let c0 = e.coefficient(&crate::hermite::MultiIndex::zero(e.dim()));
    if c0.abs() > 1e-12 * (1.0 + e.l2_norm_squared().sqrt()) {
        return Err(Error::PreconditionViolation(format!(
            "Riesz potential integral form needs a mean-zero input (f̂(0) = {c0:e}); apply remove_mean first"
        )));
    }
    Ok(())
}

/// Pointwise evaluation at `x` with a single `s`-integral over the whole
/// exponential profile `s ↦ P_s f(x)` (no per-level split).
pub fn apply_at_point(spec: &FractionalSpec, e: &HermiteExpansion, x: &[f64]) -> Result<f64> {
    match spec.representation {
        Representation::Spectral => Ok(apply(spec, e)?.eval(x)),
        Representation::Integral => {
            if spec.kind == FractionalKind::RieszPotential {
                check_mean_zero(e)?;
            }
            let ev = IntegralEvaluator::new(spec)?;
            let levels = e.level_values(x);
            let mut terms = Vec::new();
            let mut n_min = None;
            for (n, &c) in levels.iter().enumerate() {
                if c == 0.0 || (n == 0 && spec.kind == FractionalKind::RieszPotential) {
                    continue;
                }
                if n > 0 && n_min.is_none() {
                    n_min = Some(n);
                }
                terms.push((ev.rate(n), c));
            }
            if terms.is_empty() {
                return Ok(0.0);
            }
            let profile = ExpProfile::new(terms)?;
            let cutoff = match profile.min_positive_rate() {
                Some(_) => tail_cutoff(n_min.unwrap_or(0)),
                None => tail_cutoff(0),
            };
            Ok(ev.integrate(&profile, cutoff)?.value)
        }
    }
}

/// Projection settings for pointwise inputs.
#[derive(Clone, Debug)]
pub struct ProjectionConfig {
    pub rule: QuadratureRule,
    pub degree_cap: usize,
}

fn apply_operand(
    expected: FractionalKind,
    f: Operand<'_>,
    spec: &FractionalSpec,
    proj: &ProjectionConfig,
) -> Result<HermiteExpansion> {
    if spec.kind != expected {
        return Err(Error::invalid(format!(
            "spec of kind {} passed to the {} operator",
            spec.kind, expected
        )));
    }
    match f {
        Operand::Expansion(e) => apply(spec, e),
        Operand::Field(field) => apply(spec, &project(field, proj.degree_cap, &proj.rule)?),
    }
}

/// `𝒥_β`; pointwise inputs are projected onto Hermite expansions first.
pub fn bessel_potential(f: Operand<'_>, spec: &FractionalSpec, proj: &ProjectionConfig) -> Result<HermiteExpansion> {
    apply_operand(FractionalKind::BesselPotential, f, spec, proj)
}

/// `I_β = (-L)^{-β/2} Π_0`
pub fn riesz_potential(f: Operand<'_>, spec: &FractionalSpec, proj: &ProjectionConfig) -> Result<HermiteExpansion> {
    apply_operand(FractionalKind::RieszPotential, f, spec, proj)
}

/// `D^β = (-L)^{β/2}`
pub fn riesz_derivative(f: Operand<'_>, spec: &FractionalSpec, proj: &ProjectionConfig) -> Result<HermiteExpansion> {
    apply_operand(FractionalKind::RieszDerivative, f, spec, proj)
}

/// `𝒟^β = (I - L)^{β/2}` (spectral) or its subordinated analogue.
pub fn bessel_derivative(f: Operand<'_>, spec: &FractionalSpec, proj: &ProjectionConfig) -> Result<HermiteExpansion> {
    apply_operand(FractionalKind::BesselDerivative, f, spec, proj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::MultiIndex;
    use crate::quadrature::gauss_hermite_rule;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn basis(n: u32) -> HermiteExpansion {
        HermiteExpansion::basis(MultiIndex::new(vec![n]), 12).unwrap()
    }

    fn spec(kind: FractionalKind, beta: f64, rep: Representation) -> FractionalSpec {
        FractionalSpec::new(kind, beta, rep).unwrap()
    }

    #[test]
    fn order_derivation() {
        assert_eq!(difference_order(0.5), 1);
        assert_eq!(difference_order(1.0), 2);
        assert_eq!(difference_order(1.5), 2);
        assert_eq!(difference_order(2.5), 3);
        assert!(FractionalSpec::new(FractionalKind::RieszDerivative, 0.0, Representation::Spectral).is_err());
    }

    #[test]
    fn c_beta_values() {
        let want = -2.0 * PI.sqrt();
        assert_relative_eq!(c_beta_analytic(0.5, 1).unwrap(), want, max_relative = 1e-13);
        assert_relative_eq!(c_beta_constant(0.5, 1).unwrap(), want, max_relative = 1e-9);
        // (2^{1.5} − 2) Γ(−1.5), Γ(−1.5) = 4√π/3
        let want = (2f64.powf(1.5) - 2.0) * 4.0 * PI.sqrt() / 3.0;
        assert_relative_eq!(c_beta_constant(1.5, 2).unwrap(), want, max_relative = 1e-9);
        assert!((want - 1.95780).abs() < 1e-5);
        // integer β: limit of (2^β − 2)Γ(−β) at β = 1 is 2 ln 2
        assert_relative_eq!(c_beta_constant(1.0, 2).unwrap(), 2.0 * 2f64.ln(), max_relative = 1e-9);
        assert!(c_beta_analytic(1.0, 2).is_err());
        assert!(c_beta_constant(2.0, 2).is_err());
    }

    #[test]
    fn c_beta_sign() {
        for &(beta, k) in &[(0.2, 1), (0.9, 1), (0.5, 2), (1.5, 2), (1.99, 2), (2.5, 3), (0.3, 3)] {
            let c = c_beta_constant(beta, k).unwrap();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!(sign * c > 0.0, "β={beta} k={k}: {c}");
        }
    }

    #[test]
    fn spectral_examples() {
        let s = spec(FractionalKind::BesselPotential, 1.0, Representation::Spectral);
        let out = bessel_potential(Operand::Expansion(&basis(1)), &s, &proj()).unwrap();
        assert_relative_eq!(out.coefficient(&MultiIndex::new(vec![1])), 0.5f64.sqrt(), max_relative = 1e-15);

        let s = spec(FractionalKind::RieszPotential, 2.0, Representation::Spectral);
        let out = riesz_potential(Operand::Expansion(&basis(4)), &s, &proj()).unwrap();
        assert_relative_eq!(out.coefficient(&MultiIndex::new(vec![4])), 0.25, max_relative = 1e-15);
        let c = HermiteExpansion::constant(1, 4, 3.0);
        assert!(riesz_potential(Operand::Expansion(&c), &s, &proj()).unwrap().iter().all(|(_, v)| v == 0.0));

        let s = spec(FractionalKind::RieszDerivative, 0.5, Representation::Spectral);
        let e = HermiteExpansion::basis(MultiIndex::new(vec![1, 1]), 4).unwrap();
        let out = riesz_derivative(Operand::Expansion(&e), &s, &proj()).unwrap();
        assert_relative_eq!(out.coefficient(&MultiIndex::new(vec![1, 1])), 2f64.powf(0.25), max_relative = 1e-15);

        let s = spec(FractionalKind::BesselDerivative, 1.0, Representation::Spectral);
        let out = bessel_derivative(Operand::Expansion(&basis(1)), &s, &proj()).unwrap();
        assert_relative_eq!(out.coefficient(&MultiIndex::new(vec![1])), 2f64.sqrt(), max_relative = 1e-15);
    }

    fn proj() -> ProjectionConfig {
        ProjectionConfig {
            rule: gauss_hermite_rule(64).unwrap(),
            degree_cap: 40,
        }
    }

    #[test]
    fn integral_examples() {
        let s = spec(FractionalKind::BesselPotential, 1.0, Representation::Integral);
        assert!((level_eigenvalue(&s, 1).unwrap() - 0.5).abs() <= 1e-6);
        assert!((level_eigenvalue(&s, 0).unwrap() - 1.0).abs() <= 1e-9);

        let s = spec(FractionalKind::RieszDerivative, 1.5, Representation::Integral);
        assert_eq!(s.k(), 2);
        assert!((level_eigenvalue(&s, 1).unwrap() - 1.0).abs() <= 1e-5);
        assert!(level_eigenvalue(&s, 0).unwrap().abs() <= 1e-12);

        let s = spec(FractionalKind::BesselDerivative, 1.0, Representation::Integral);
        assert!((level_eigenvalue(&s, 1).unwrap() - 2.0).abs() <= 1e-5);
        let s = spec(FractionalKind::BesselDerivative, 0.7, Representation::Integral);
        assert!((level_eigenvalue(&s, 0).unwrap() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn riesz_potential_needs_mean_zero() {
        let s = spec(FractionalKind::RieszPotential, 0.5, Representation::Integral);
        let c = HermiteExpansion::constant(1, 4, 1.0);
        assert!(matches!(apply(&s, &c), Err(Error::PreconditionViolation(_))));
        assert!(matches!(
            eigenvalue_oracle(FractionalKind::RieszPotential, 0.5, 0, Representation::Integral),
            Err(Error::UndefinedInput(_))
        ));
    }

    #[test]
    fn pointwise_matches_spectral_on_centred_cosine() {
        let p = proj();
        let cos = crate::field::FnField::new(1, |x: &[f64]| x[0].cos());
        let e = project(&cos, 40, &p.rule).unwrap().remove_mean();
        let si = spec(FractionalKind::RieszPotential, 0.5, Representation::Integral);
        let ss = spec(FractionalKind::RieszPotential, 0.5, Representation::Spectral);
        let a = apply_at_point(&si, &e, &[0.4]).unwrap();
        let b = apply(&ss, &e).unwrap().eval(&[0.4]);
        assert!((a - b).abs() <= 1e-6, "{a} vs {b}");
    }

    #[test]
    fn constants_under_derivatives() {
        let c = HermiteExpansion::constant(1, 4, 2.5);
        for rep in [Representation::Spectral, Representation::Integral] {
            let s = spec(FractionalKind::RieszDerivative, 0.4, rep);
            let out = apply(&s, &c).unwrap();
            assert!(out.iter().all(|(_, v)| v.abs() < 1e-12));
        }
    }

    #[test]
    fn kind_mismatch_rejected() {
        let s = spec(FractionalKind::RieszDerivative, 0.4, Representation::Spectral);
        assert!(bessel_potential(Operand::Expansion(&basis(1)), &s, &proj()).is_err());
    }

    #[test]
    fn parse_names() {
        assert_eq!("riesz-derivative".parse::<FractionalKind>().unwrap(), FractionalKind::RieszDerivative);
        assert_eq!("integral".parse::<Representation>().unwrap(), Representation::Integral);
        assert!("laplace".parse::<FractionalKind>().is_err());
    }
}
#[cfg(test)]
mod dbg { use super::*; #[test] fn d(){ let mut worst=0.0f64; for k in FractionalKind::ALL { for &b in &[0.3,0.5,1.0,1.5,1.9,2.5] { let s=FractionalSpec::new(k,b,Representation::Integral).unwrap(); for n in 0..=9 { if k==FractionalKind::RieszPotential && n==0 {continue;} let got=level_eigenvalue(&s,n).unwrap(); let want=eigenvalue_oracle(k,b,n,Representation::Integral).unwrap(); let e=if want==0.0 {got.abs()} else {((got-want)/want).abs()}; if e>1e-9 {println!("\n{k} {b} {n} {got} {want} {e:e}");} worst=worst.max(e);} } } println!("\nworst {worst:e}"); } }
