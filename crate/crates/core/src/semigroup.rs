//! The Ornstein-Uhlenbeck semigroup `T_t` and the Poisson-Hermite semigroup
//! `P_t` in spectral, kernel and subordination form.
//!
//! * spectral: `T_t` scales chaos level `n` by `e^{-nt}`, `P_t` by
//!   `e^{-√n t}`; `∂ᵏ_t P_t` by `(-√n)^k e^{-√n t}`.
//! * kernel: `T_t` integrates the Mehler kernel (a Gaussian in `y`, so the
//!   affine substitution `y = e^{-t}x + √(1-e^{-2t}) z` turns it into a
//!   Gauss-Hermite sum), `P_t` integrates `p(t,x,y)` over a truncated box.
//! * subordination: `P_t f(x) = ∫_0^∞ g(t,s) T_s f(x) ds` with the one-sided
//!   stable density `g(t,s) = t e^{-t²/4s} / (2√π s^{3/2})`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::hermite::HermiteExpansion;
use crate::quadrature::{
    gauss_hermite_rule, integrate_halfline_with, integrate_with_breaks, AdaptiveConfig,
    HalflineTransform, QuadratureRule, RuleKind, TensorGrid, DEFAULT_NODES, MAX_TENSOR_DIM,
};

/// Highest `t`-derivative of `p(t,x,y)` with a hand-derived integrand.
pub const MAX_KERNEL_DERIVATIVE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Spectral,
    Kernel,
    Subordination,
}

/// How `T_t`/`P_t` (or `∂ᵏ_t P_t`) is evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SemigroupQuery {
    t: f64,
    method: Method,
    derivative_order: usize,
}

impl SemigroupQuery {
    pub fn new(t: f64, method: Method, derivative_order: usize) -> Result<Self> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::invalid(format!("time must be finite and ≥ 0, got {t}")));
        }
        if t == 0.0 && (method != Method::Spectral || derivative_order > 0) {
            return Err(Error::invalid(
                "t = 0 is only meaningful for the spectral identity",
            ));
        }
        Ok(SemigroupQuery {
            t,
            method,
            derivative_order,
        })
    }

    pub fn spectral(t: f64) -> Result<Self> {
        Self::new(t, Method::Spectral, 0)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn derivative_order(&self) -> usize {
        self.derivative_order
    }
}

/// Input to a semigroup or fractional operator.
#[derive(Clone, Copy)]
pub enum Operand<'a> {
    Expansion(&'a HermiteExpansion),
    Field(&'a dyn ScalarField),
}

impl Operand<'_> {
    fn dim(&self) -> usize {
        match self {
            Operand::Expansion(e) => e.dim(),
            Operand::Field(f) => f.dim(),
        }
    }

    fn value(&self, x: &[f64]) -> f64 {
        match self {
            Operand::Expansion(e) => e.eval(x),
            Operand::Field(f) => f.value(x),
        }
    }
}

/// Output of an operator: a new expansion (spectral paths) or values at the
/// requested points (quadrature paths).
#[derive(Clone, Debug, PartialEq)]
pub enum Image {
    Expansion(HermiteExpansion),
    Values(Vec<f64>),
}

impl Image {
    pub fn into_expansion(self) -> Option<HermiteExpansion> {
        match self {
            Image::Expansion(e) => Some(e),
            Image::Values(_) => None,
        }
    }

    pub fn into_values(self) -> Option<Vec<f64>> {
        match self {
            Image::Values(v) => Some(v),
            Image::Expansion(_) => None,
        }
    }
}

/// Parameter of the one-sided stable law of order 1/2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StableMeasureParams {
    t: f64,
}

impl StableMeasureParams {
    pub fn new(t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::invalid(format!("stable parameter must be > 0, got {t}")));
        }
        Ok(StableMeasureParams { t })
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

/// `g(t,s) = t/(2√π) · e^{-t²/4s} / s^{3/2}`.
pub fn stable_density(p: StableMeasureParams, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::invalid(format!("stable density needs s > 0, got {s}")));
    }
    Ok(stable_density_unchecked(p.t, s))
}

fn stable_density_unchecked(t: f64, s: f64) -> f64 {
    t / (2.0 * PI.sqrt()) * (-t * t / (4.0 * s)).exp() * s.powf(-1.5)
}

/// Mehler kernel of `T_t` against Lebesgue measure `dy`.
pub fn mehler_kernel(t: f64, x: &[f64], y: &[f64]) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::invalid(format!("Mehler kernel needs t > 0, got {t}")));
    }
    if x.len() != y.len() {
        return Err(Error::invalid("x and y dimensions differ"));
    }
    let d = x.len() as f64;
    let r = (-t).exp();
    let one_minus = -(-2.0 * t).exp_m1();
    let dist2: f64 = x.iter().zip(y).map(|(xi, yi)| (yi - r * xi).powi(2)).sum();
    Ok((-dist2 / one_minus).exp() / (PI * one_minus).powf(d / 2.0))
}

/// `e^{-√n t}` times `(-√n)^k`: the action of `∂ᵏ_t P_t` on chaos level `n`.
pub fn poisson_factor(n: usize, t: f64, k: usize) -> f64 {
    let root = (n as f64).sqrt();
    if k == 0 {
        (-root * t).exp()
    } else {
        (-root).powi(k as i32) * (-root * t).exp()
    }
}

pub fn ou_spectral(e: &HermiteExpansion, t: f64) -> HermiteExpansion {
    e.scale_levels(|n| (-(n as f64) * t).exp())
}

pub fn ph_spectral(e: &HermiteExpansion, t: f64, k: usize) -> HermiteExpansion {
    e.scale_levels(|n| poisson_factor(n, t, k))
}

/// `∂ᵏ/∂tᵏ [t e^{-t²/4s}]`, the only `t`-dependent factor of the
/// Poisson-Hermite kernel integrand.
fn time_factor(k: usize, t: f64, s: f64) -> f64 {
    let a = 1.0 / (4.0 * s);
    let e = (-a * t * t).exp();
    let t2 = t * t;
    match k {
        0 => t * e,
        1 => (1.0 - 2.0 * a * t2) * e,
        2 => (-6.0 * a * t + 4.0 * a * a * t2 * t) * e,
        3 => (-6.0 * a + 24.0 * a * a * t2 - 8.0 * a * a * a * t2 * t2) * e,
        _ => unreachable!("k ≤ {MAX_KERNEL_DERIVATIVE} checked by callers"),
    }
}

/// The `s`-integrand of `∂ᵏ_t p(t,x,y)` after `s = -log r`.
fn kernel_integrand(k: usize, t: f64, x: &[f64], y: &[f64], s: f64) -> f64 {
    let d = x.len() as f64;
    let r = (-s).exp();
    let one_minus = -(-2.0 * s).exp_m1();
    let dist2: f64 = x.iter().zip(y).map(|(xi, yi)| (yi - r * xi).powi(2)).sum();
    let gauss = (-dist2 / one_minus).exp();
    if gauss == 0.0 {
        return 0.0;
    }
    let tf = time_factor(k, t, s);
    if tf == 0.0 {
        return 0.0;
    }
    let norm = 1.0 / (2.0 * PI.powf((d + 1.0) / 2.0));
    norm * tf * s.powf(-1.5) * gauss * one_minus.powf(-d / 2.0)
}

/// Poisson-Hermite kernel `p(t,x,y)`.
pub fn ph_kernel(t: f64, x: &[f64], y: &[f64], tol: f64) -> Result<f64> {
    check_kernel_args(t, x, y)?;
    integrate_halfline_with(
        |s| kernel_integrand(0, t, x, y, s),
        HalflineTransform::None,
        &AdaptiveConfig::with_tol(tol),
    )
    .map(|e| e.value)
}

/// `∂ᵏ_t p(t,x,y)` for `1 ≤ k ≤ 3`, differentiating under the integral.
pub fn ph_kernel_time_derivative(t: f64, x: &[f64], y: &[f64], k: usize, tol: f64) -> Result<f64> {
    check_kernel_args(t, x, y)?;
    if k == 0 {
        return Err(Error::invalid("derivative order must be ≥ 1"));
    }
    if k > MAX_KERNEL_DERIVATIVE {
        return Err(Error::UnsupportedCombination(format!(
            "kernel t-derivative of order {k}; only k ≤ {MAX_KERNEL_DERIVATIVE} is implemented"
        )));
    }
    integrate_halfline_with(
        |s| kernel_integrand(k, t, x, y, s),
        HalflineTransform::None,
        &AdaptiveConfig::with_tol(tol),
    )
    .map(|e| e.value)
}

fn check_kernel_args(t: f64, x: &[f64], y: &[f64]) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::invalid(format!("kernel needs t > 0, got {t}")));
    }
    if x.len() != y.len() || x.is_empty() || x.len() > MAX_TENSOR_DIM {
        return Err(Error::invalid("x and y must share a dimension in 1..=3"));
    }
    Ok(())
}

/// Truncation radius for `y`-integrals centred at `x`.
pub fn truncation_radius(x: &[f64]) -> f64 {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    8.0 + 2.0 * norm
}

/// `(1/2√π) ∫_0^∞ |∂ᵏ_t[t e^{-t²/4s}]| s^{-3/2} ds`: the dimension-free bound
/// on `∫|∂ᵏ_t p(t,x,y)| dy` obtained by moving the absolute value inside the
/// `s`-integral.
pub fn tonelli_bound(t: f64, k: usize, tol: f64) -> Result<f64> {
    if k > MAX_KERNEL_DERIVATIVE {
        return Err(Error::UnsupportedCombination(format!("order {k}")));
    }
    let v = integrate_halfline_with(
        |s| time_factor(k, t, s).abs() * s.powf(-1.5),
        HalflineTransform::None,
        &AdaptiveConfig::with_tol(tol),
    )?;
    Ok(v.value / (2.0 * PI.sqrt()))
}

/// Result of [`kernel_derivative_l1`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelL1 {
    /// `∫_{[-R,R]^d} |∂ᵏ_t p(t,x,y)| dy`
    pub value: f64,
    /// Upper bound on the mass outside the box.
    pub tail_bound: f64,
    pub radius: f64,
    pub tonelli_bound: f64,
}

/// `∫ |∂ᵏ_t p(t,x,·)| dy` over the box `|y_i| ≤ R`, `R = 8 + 2|x|`.
pub fn kernel_derivative_l1(t: f64, x: &[f64], k: usize, tol: f64) -> Result<KernelL1> {
    if !(1..=MAX_KERNEL_DERIVATIVE).contains(&k) {
        return Err(Error::invalid(format!(
            "derivative order {k} outside 1..={MAX_KERNEL_DERIVATIVE}"
        )));
    }
    check_kernel_args(t, x, x)?;
    let radius = truncation_radius(x);
    let y_cfg = AdaptiveConfig {
        rel_tol: tol.max(1e-12),
        abs_tol: tol.max(1e-12) * 1e-2,
        max_subdivisions: 400,
    };
    let s_tol = (tol * 1e-2).max(1e-12);
    let value = box_integral(x, radius, t, &y_cfg, &mut |y| {
        ph_kernel_time_derivative(t, x, y, k, s_tol).map(f64::abs)
    })?;
    let tonelli = tonelli_bound(t, k, s_tol)?;
    // each Mehler slice is N(r x, (1 - r²)/2) per coordinate
    let escape: f64 = x.iter().map(|xi| erfc(radius - xi.abs())).sum();
    Ok(KernelL1 {
        value,
        tail_bound: tonelli * escape.min(1.0),
        radius,
        tonelli_bound: tonelli,
    })
}

/// Nested adaptive integral over `[-R, R]^d`, with breakpoints at `0`, `x_i`
/// and `x_i ± t` in every coordinate.
fn box_integral(
    x: &[f64],
    radius: f64,
    t: f64,
    cfg: &AdaptiveConfig,
    f: &mut dyn FnMut(&[f64]) -> Result<f64>,
) -> Result<f64> {
    let d = x.len();
    let mut y = vec![0.0; d];
    box_level(0, x, radius, t, cfg, &mut y, f)
}

fn box_level(
    level: usize,
    x: &[f64],
    radius: f64,
    t: f64,
    cfg: &AdaptiveConfig,
    y: &mut Vec<f64>,
    f: &mut dyn FnMut(&[f64]) -> Result<f64>,
) -> Result<f64> {
    let xi = x[level];
    let mut breaks = vec![-radius, radius, 0.0, xi, xi - t, xi + t];
    breaks.retain(|b| b.abs() <= radius);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let mut failure = None;
    let est = integrate_with_breaks(
        |yi| {
            if failure.is_some() {
                return 0.0;
            }
            y[level] = yi;
            let r = if level + 1 == x.len() {
                f(y)
            } else {
                let mut inner = y.clone();
                box_level(level + 1, x, radius, t, cfg, &mut inner, f)
            };
            match r {
                Ok(v) => v,
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        &breaks,
        cfg,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(est?.value)
}

/// Quadrature-backed evaluation of both semigroups.
pub struct Semigroup {
    rule: QuadratureRule,
    grids: [OnceLock<TensorGrid>; MAX_TENSOR_DIM],
    tol: f64,
}

impl Semigroup {
    /// `rule` must be a Gauss-Hermite rule; `tol` drives the `s`-integrals.
    pub fn new(rule: QuadratureRule, tol: f64) -> Result<Self> {
        if rule.kind != RuleKind::GaussHermite {
            return Err(Error::invalid("semigroup needs a Gauss-Hermite rule"));
        }
        if !(tol > 0.0) {
            return Err(Error::invalid("tolerance must be positive"));
        }
        Ok(Semigroup {
            rule,
            grids: Default::default(),
            tol,
        })
    }

    pub fn with_nodes(nodes: usize, tol: f64) -> Result<Self> {
        Self::new(gauss_hermite_rule(nodes)?, tol)
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    fn grid(&self, dim: usize) -> Result<&TensorGrid> {
        if dim == 0 || dim > MAX_TENSOR_DIM {
            return Err(Error::invalid(format!("dimension {dim} outside 1..=3")));
        }
        if let Some(g) = self.grids[dim - 1].get() {
            return Ok(g);
        }
        let g = TensorGrid::new(&self.rule, dim)?;
        Ok(self.grids[dim - 1].get_or_init(|| g))
    }

    fn s_config(&self) -> AdaptiveConfig {
        AdaptiveConfig {
            max_subdivisions: 200,
            ..AdaptiveConfig::with_tol(self.tol)
        }
    }

    /// `T_t f(x)` by Gauss-Hermite quadrature of the Mehler kernel.
    pub fn ou_kernel_at(&self, f: Operand<'_>, t: f64, x: &[f64]) -> Result<f64> {
        if x.len() != f.dim() {
            return Err(Error::invalid("point dimension differs from the function's"));
        }
        if t == 0.0 {
            return Ok(f.value(x));
        }
        let r = (-t).exp();
        let spread = (-(-2.0 * t).exp_m1()).sqrt();
        let grid = self.grid(x.len())?;
        let mut y = vec![0.0; x.len()];
        grid.integrate(|z| {
            for ((yi, xi), zi) in y.iter_mut().zip(x).zip(z) {
                *yi = r * xi + spread * zi;
            }
            f.value(&y)
        })
    }

    /// `P_t f(x) = ∫_0^∞ g(t,s) T_s f(x) ds`.
    pub fn ph_subordinated_at(&self, f: Operand<'_>, t: f64, x: &[f64]) -> Result<f64> {
        let mut failure = None;
        let est = integrate_halfline_with(
            |s| {
                if failure.is_some() {
                    return 0.0;
                }
                let g = stable_density_unchecked(t, s);
                if g == 0.0 {
                    return 0.0;
                }
                match self.ou_kernel_at(f, s, x) {
                    Ok(v) => g * v,
                    Err(e) => {
                        failure = Some(e);
                        0.0
                    }
                }
            },
            HalflineTransform::None,
            &self.s_config(),
        );
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(est?.value)
    }

    /// `∂ᵏ_t P_t f(x) = ∫ ∂ᵏ_t p(t,x,y) f(y) dy` over the truncated box.
    pub fn ph_kernel_at(&self, f: Operand<'_>, t: f64, k: usize, x: &[f64]) -> Result<f64> {
        if x.len() != f.dim() {
            return Err(Error::invalid("point dimension differs from the function's"));
        }
        if k > MAX_KERNEL_DERIVATIVE {
            return Err(Error::UnsupportedCombination(format!(
                "kernel method with derivative order {k}"
            )));
        }
        check_kernel_args(t, x, x)?;
        let y_cfg = AdaptiveConfig {
            rel_tol: self.tol * 10.0,
            abs_tol: self.tol * 10.0,
            max_subdivisions: 400,
        };
        let s_tol = self.tol * 0.1;
        box_integral(x, truncation_radius(x), t, &y_cfg, &mut |y| {
            let fy = f.value(y);
            if fy == 0.0 {
                return Ok(0.0);
            }
            let p = if k == 0 {
                ph_kernel(t, x, y, s_tol)?
            } else {
                ph_kernel_time_derivative(t, x, y, k, s_tol)?
            };
            Ok(p * fy)
        })
    }

    /// Applies `T_t`: spectral on expansions, or Mehler-kernel values at
    /// `points`.
    pub fn ou_apply(&self, f: Operand<'_>, q: &SemigroupQuery, points: &[Vec<f64>]) -> Result<Image> {
        if q.derivative_order != 0 {
            return Err(Error::invalid("ou_apply takes derivative order 0"));
        }
        match (q.method, f) {
            (Method::Spectral, Operand::Expansion(e)) => Ok(Image::Expansion(ou_spectral(e, q.t))),
            (Method::Spectral, Operand::Field(_)) => Err(Error::invalid(
                "spectral method needs a Hermite expansion input",
            )),
            (Method::Kernel, _) => points
                .iter()
                .map(|x| self.ou_kernel_at(f, q.t, x))
                .collect::<Result<Vec<_>>>()
                .map(Image::Values),
            (Method::Subordination, _) => Err(Error::invalid(
                "the Ornstein-Uhlenbeck semigroup has no subordination form",
            )),
        }
    }

    /// Applies `∂ᵏ_t P_t` with `k = q.derivative_order`.
    pub fn ph_apply(&self, f: Operand<'_>, q: &SemigroupQuery, points: &[Vec<f64>]) -> Result<Image> {
        let k = q.derivative_order;
        match (q.method, f) {
            (Method::Spectral, Operand::Expansion(e)) => Ok(Image::Expansion(ph_spectral(e, q.t, k))),
            (Method::Spectral, Operand::Field(_)) => Err(Error::invalid(
                "spectral method needs a Hermite expansion input",
            )),
            (Method::Subordination, _) if k > 0 => Err(Error::UnsupportedCombination(
                "t-derivatives are not available through subordination".into(),
            )),
            (Method::Subordination, _) => points
                .iter()
                .map(|x| self.ph_subordinated_at(f, q.t, x))
                .collect::<Result<Vec<_>>>()
                .map(Image::Values),
            (Method::Kernel, _) => points
                .iter()
                .map(|x| self.ph_kernel_at(f, q.t, k, x))
                .collect::<Result<Vec<_>>>()
                .map(Image::Values),
        }
    }
}

impl Default for Semigroup {
    fn default() -> Self {
        Semigroup::with_nodes(DEFAULT_NODES, 1e-10).expect("default rule is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FnField;
    use crate::hermite::{hermite_eval, HermitePolynomial, MultiIndex};
    use crate::quadrature::integrate_interval;
    use approx::assert_relative_eq;

    fn h(n: &[u32]) -> HermitePolynomial {
        HermitePolynomial(MultiIndex::new(n.to_vec()))
    }

    #[test]
    fn query_validation() {
        assert!(SemigroupQuery::new(0.0, Method::Spectral, 0).is_ok());
        assert!(SemigroupQuery::new(0.0, Method::Kernel, 0).is_err());
        assert!(SemigroupQuery::new(0.0, Method::Spectral, 1).is_err());
        assert!(SemigroupQuery::new(-1.0, Method::Spectral, 0).is_err());
    }

    #[test]
    fn mehler_values() {
        let t = 2f64.ln();
        let v = mehler_kernel(t, &[0.0], &[0.0]).unwrap();
        assert_relative_eq!(v, 1.0 / (PI.sqrt() * 0.75f64.sqrt()), max_relative = 1e-14);
        let far = mehler_kernel(60.0, &[1.3], &[0.0]).unwrap();
        assert_relative_eq!(far, 1.0 / PI.sqrt(), max_relative = 1e-12);
        assert!(mehler_kernel(0.0, &[0.0], &[0.0]).is_err());
    }

    #[test]
    fn mehler_is_probability_kernel() {
        for &t in &[0.1, 1.0] {
            for &x in &[0.0, 1.5] {
                let r = (-t as f64).exp();
                let m = integrate_interval(
                    |y| mehler_kernel(t, &[x], &[y]).unwrap(),
                    r * x - 12.0,
                    r * x + 12.0,
                    1e-12,
                )
                .unwrap();
                assert!((m - 1.0).abs() <= 1e-8, "t={t} x={x}: {m}");
            }
        }
    }

    #[test]
    fn stable_density_properties() {
        let p = StableMeasureParams::new(1.0).unwrap();
        let total = crate::quadrature::integrate_halfline(
            |s| stable_density(p, s).unwrap(),
            HalflineTransform::None,
            1e-12,
        )
        .unwrap();
        assert!((total - 1.0).abs() <= 1e-8);
        assert!(stable_density(p, 0.0).is_err());
        for &s in &[0.01, 0.3, 2.0, 50.0] {
            let lhs = stable_density(StableMeasureParams::new(2.0).unwrap(), 4.0 * s).unwrap() * 4.0;
            assert_relative_eq!(lhs, stable_density(p, s).unwrap(), max_relative = 1e-14);
        }
    }

    #[test]
    fn stable_density_mode() {
        // golden-section search on log g(1, s)
        let p = StableMeasureParams::new(1.0).unwrap();
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let (mut a, mut b) = (0.01, 1.0);
        for _ in 0..200 {
            let c = b - phi * (b - a);
            let d = a + phi * (b - a);
            if stable_density(p, c).unwrap() > stable_density(p, d).unwrap() {
                b = d;
            } else {
                a = c;
            }
        }
        assert!((0.5 * (a + b) - 1.0 / 6.0).abs() <= 1e-6);
    }

    #[test]
    fn spectral_factors() {
        let e = HermiteExpansion::basis(MultiIndex::new(vec![3]), 5).unwrap();
        let out = ou_spectral(&e, 0.4);
        assert_relative_eq!(out.coefficient(&MultiIndex::new(vec![3])), (-1.2f64).exp());
        let e4 = HermiteExpansion::basis(MultiIndex::new(vec![4]), 5).unwrap();
        let p = ph_spectral(&e4, 0.3, 0);
        assert_relative_eq!(p.coefficient(&MultiIndex::new(vec![4])), (-0.6f64).exp());
        let p2 = ph_spectral(&e4, 0.3, 2);
        assert_relative_eq!(
            p2.coefficient(&MultiIndex::new(vec![4])),
            4.0 * (-0.6f64).exp(),
            max_relative = 1e-15
        );
        assert_eq!(poisson_factor(0, 1.0, 1), 0.0);
        assert_eq!(poisson_factor(0, 1.0, 0), 1.0);
    }

    #[test]
    fn ou_kernel_matches_spectral() {
        let sg = Semigroup::with_nodes(32, 1e-10).unwrap();
        let f = h(&[2]);
        for &x in &[-1.7, 0.0, 0.6, 2.0] {
            let v = sg.ou_kernel_at(Operand::Field(&f), 0.5, &[x]).unwrap();
            let want = (-1.0f64).exp() * hermite_eval(&MultiIndex::new(vec![2]), &[x]);
            assert!((v - want).abs() <= 1e-7);
        }
        let one = FnField::new(1, |_| 1.0);
        assert_relative_eq!(sg.ou_kernel_at(Operand::Field(&one), 3.0, &[0.4]).unwrap(), 1.0, max_relative = 1e-13);
    }

    #[test]
    fn ph_kernel_mass_and_eigen() {
        for &t in &[0.25, 1.0] {
            for &x in &[0.0, 1.0] {
                let m = integrate_interval(
                    |y| ph_kernel(t, &[x], &[y], 1e-12).unwrap(),
                    -10.0,
                    10.0,
                    1e-11,
                )
                .unwrap();
                assert!((m - 1.0).abs() <= 1e-7, "t={t} x={x}: {m}");
            }
        }
        let sg = Semigroup::with_nodes(32, 1e-10).unwrap();
        let f = h(&[2]);
        let v = sg.ph_kernel_at(Operand::Field(&f), 0.5, 0, &[1.0]).unwrap();
        let want = (-(2f64.sqrt()) * 0.5).exp() * hermite_eval(&MultiIndex::new(vec![2]), &[1.0]);
        assert!((v - want).abs() <= 1e-6, "{v} vs {want}");
    }

    #[test]
    fn kernel_positive() {
        let pts = [(0.05, 0.3, -2.0), (0.7, -1.0, 1.1), (3.0, 2.0, 0.0), (0.2, 0.0, 0.0)];
        for (t, x, y) in pts {
            assert!(ph_kernel(t, &[x], &[y], 1e-10).unwrap() > 0.0);
        }
    }

    #[test]
    fn time_derivative_matches_finite_difference() {
        let (t, x, y) = (0.8, 0.3, -0.4);
        let h = 1e-3;
        let fd = (ph_kernel(t + h, &[x], &[y], 1e-13).unwrap()
            - ph_kernel(t - h, &[x], &[y], 1e-13).unwrap())
            / (2.0 * h);
        let d1 = ph_kernel_time_derivative(t, &[x], &[y], 1, 1e-13).unwrap();
        assert!((fd - d1).abs() <= 1e-5 * d1.abs());
        for k in 2..=3 {
            let fd = (ph_kernel_time_derivative(t + h, &[x], &[y], k - 1, 1e-13).unwrap()
                - ph_kernel_time_derivative(t - h, &[x], &[y], k - 1, 1e-13).unwrap())
                / (2.0 * h);
            let dk = ph_kernel_time_derivative(t, &[x], &[y], k, 1e-13).unwrap();
            assert!((fd - dk).abs() <= 1e-5 * dk.abs().max(1e-3), "k={k}: {fd} vs {dk}");
        }
        assert!(matches!(
            ph_kernel_time_derivative(t, &[x], &[y], 4, 1e-10),
            Err(Error::UnsupportedCombination(_))
        ));
    }

    #[test]
    fn time_derivative_mass_and_sign() {
        let mass = integrate_interval(
            |y| ph_kernel_time_derivative(0.5, &[0.0], &[y], 1, 1e-12).unwrap(),
            -10.0,
            10.0,
            1e-11,
        )
        .unwrap();
        assert!(mass.abs() <= 1e-7);
        let sg = Semigroup::with_nodes(32, 1e-10).unwrap();
        let f = h(&[1]);
        let v = sg.ph_kernel_at(Operand::Field(&f), 0.6, 1, &[1.0]).unwrap();
        let want = -(-0.6f64).exp() * hermite_eval(&MultiIndex::new(vec![1]), &[1.0]);
        assert!((v - want).abs() <= 1e-6, "{v} vs {want}");
    }

    #[test]
    fn tonelli_closed_form() {
        // (1/2√π)(2/t)·2√2 e^{-1/2}
        let want_t = 2.0 * (2.0 / PI).sqrt() * (-0.5f64).exp();
        for &t in &[0.1, 0.5, 2.0] {
            let b = tonelli_bound(t, 1, 1e-12).unwrap();
            assert_relative_eq!(t * b, want_t, max_relative = 1e-8);
        }
    }

    #[test]
    fn subordination_matches_spectral_on_cosine() {
        let sg = Semigroup::default();
        let cos = FnField::new(1, |x: &[f64]| x[0].cos());
        let v = sg.ph_subordinated_at(Operand::Field(&cos), 0.5, &[0.7]).unwrap();
        let e = crate::hermite::project(&cos, 40, sg.rule()).unwrap();
        let want = ph_spectral(&e, 0.5, 0).eval(&[0.7]);
        assert!((v - want).abs() <= 1e-6, "{v} vs {want}");
    }

    #[test]
    fn method_input_mismatch() {
        let sg = Semigroup::with_nodes(8, 1e-8).unwrap();
        let f = h(&[1]);
        let q = SemigroupQuery::spectral(0.3).unwrap();
        assert!(sg.ou_apply(Operand::Field(&f), &q, &[]).is_err());
        let q = SemigroupQuery::new(0.3, Method::Subordination, 1).unwrap();
        assert!(matches!(
            sg.ph_apply(Operand::Field(&f), &q, &[vec![0.0]]),
            Err(Error::UnsupportedCombination(_))
        ));
    }
}
