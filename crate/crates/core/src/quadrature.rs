//! Integration against the Gaussian measure and over the half-line.
//!
//! Two families of rules live here:
//!
//! * Gauss-Hermite rules for `∫ e^{-x²} f(x) dx`, tensorized up to three
//!   dimensions and normalized to the probability measure
//!   `dγ(x) = π^{-d/2} e^{-|x|²} dx`.
//! * An adaptive Gauss-Kronrod (7/15) integrator with dyadic bisection, used
//!   on finite intervals and, after the substitution `s = e^u`, on `(0, ∞)`.
//!   Integrands of the form `e^{-t²/4s} s^{-γ}` are smooth on the log axis, so
//!   power-type endpoint singularities turn into exponential tails there.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const DEFAULT_ABS_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_SUBDIVISIONS: usize = 60;
/// Default Gauss-Hermite node count per dimension.
pub const DEFAULT_NODES: usize = 64;
pub const MAX_TENSOR_DIM: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleKind {
    GaussHermite,
    AdaptiveHalfline,
}

/// A one-dimensional rule plus the tolerances used when it drives an
/// adaptive integration.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: RuleKind,
    pub order: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureRule {
    /// The 15-point Kronrod rule on `[-1, 1]` that drives the adaptive
    /// integrators.
    pub fn adaptive_halfline() -> Self {
        let mut nodes = Vec::with_capacity(15);
        let mut weights = Vec::with_capacity(15);
        for i in 0..7 {
            nodes.push(-XGK[i]);
            weights.push(WGK[i]);
        }
        nodes.push(0.0);
        weights.push(WGK[7]);
        for i in (0..7).rev() {
            nodes.push(XGK[i]);
            weights.push(WGK[i]);
        }
        QuadratureRule {
            nodes,
            weights,
            kind: RuleKind::AdaptiveHalfline,
            order: 15,
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: DEFAULT_ABS_TOL,
            max_subdivisions: DEFAULT_MAX_SUBDIVISIONS,
        }
    }

    pub fn adaptive_config(&self) -> AdaptiveConfig {
        AdaptiveConfig {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }

    /// `∫_ℝ e^{-x²} f(x) dx` with the raw (unnormalized) weights.
    pub fn apply_1d(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Gauss-Hermite nodes and weights for `∫ e^{-x²} f(x) dx ≈ Σ wᵢ f(xᵢ)`.
///
/// Roots are found by Newton iteration on the orthonormal Hermite recurrence,
/// started from the classical asymptotic guesses; nodes come back ascending.
pub fn gauss_hermite_rule(m: usize) -> Result<QuadratureRule> {
    if m == 0 {
        return Err(Error::invalid("Gauss-Hermite rule needs at least one node"));
    }
    let pim4 = PI.powf(-0.25);
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    let mf = m as f64;
    let half = (m + 1) / 2;
    let mut z = 0.0_f64;
    for i in 0..half {
        z = match i {
            0 => (2.0 * mf + 1.0).sqrt() - 1.85575 * (2.0 * mf + 1.0).powf(-0.16667),
            1 => z - 1.14 * mf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for iter in 0..200 {
            let (p1, p2) = orthonormal_pair(m, z, pim4);
            pp = (2.0 * mf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
            if iter == 199 {
                return Err(Error::ConvergenceFailure {
                    estimate: z,
                    error_bound: (z - z1).abs(),
                });
            }
        }
        // derivative at the converged root
        let (_, p2) = orthonormal_pair(m, z, pim4);
        if p2 != 0.0 {
            pp = (2.0 * mf).sqrt() * p2;
        }
        x[i] = z;
        x[m - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[m - 1 - i] = w[i];
    }
    // descending from the Newton sweep; flip to ascending
    x.reverse();
    w.reverse();
    if m % 2 == 1 {
        x[m / 2] = 0.0;
    }
    Ok(QuadratureRule {
        nodes: x,
        weights: w,
        kind: RuleKind::GaussHermite,
        order: m,
        rel_tol: DEFAULT_REL_TOL,
        abs_tol: DEFAULT_ABS_TOL,
        max_subdivisions: DEFAULT_MAX_SUBDIVISIONS,
    })
}

/// Values of the orthonormal (w.r.t. `e^{-x²}`) Hermite functions of degree
/// `m` and `m - 1` at `z`.
fn orthonormal_pair(m: usize, z: f64, pim4: f64) -> (f64, f64) {
    let mut p1 = pim4;
    let mut p2 = 0.0;
    for j in 0..m {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
    }
    (p1, p2)
}

/// Tensor-product nodes of a Gauss-Hermite rule, with weights normalized so
/// that they sum to one (the Gaussian probability measure).
#[derive(Clone, Debug)]
pub struct TensorGrid {
    dim: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl TensorGrid {
    pub fn new(rule: &QuadratureRule, dim: usize) -> Result<Self> {
        if rule.kind != RuleKind::GaussHermite {
            return Err(Error::invalid("tensor grids need a Gauss-Hermite rule"));
        }
        if dim == 0 || dim > MAX_TENSOR_DIM {
            return Err(Error::invalid(format!(
                "dimension {dim} outside 1..={MAX_TENSOR_DIM}"
            )));
        }
        let m = rule.nodes.len();
        let count = m.pow(dim as u32);
        let norm = PI.powf(-(dim as f64) / 2.0);
        let mut points = Vec::with_capacity(count * dim);
        let mut weights = Vec::with_capacity(count);
        let mut idx = vec![0usize; dim];
        for _ in 0..count {
            let mut w = norm;
            for &i in &idx {
                points.push(rule.nodes[i]);
                w *= rule.weights[i];
            }
            weights.push(w);
            // odometer, last coordinate fastest
            for slot in idx.iter_mut().rev() {
                *slot += 1;
                if *slot < m {
                    break;
                }
                *slot = 0;
            }
        }
        Ok(TensorGrid {
            dim,
            points,
            weights,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.points
            .chunks_exact(self.dim)
            .zip(self.weights.iter().copied())
    }

    /// `∫ f dγ`, failing on the first non-finite integrand value.
    pub fn integrate(&self, mut f: impl FnMut(&[f64]) -> f64) -> Result<f64> {
        let mut acc = 0.0;
        for (p, w) in self.iter() {
            let v = f(p);
            if !v.is_finite() {
                return Err(Error::Evaluation {
                    point: p.to_vec(),
                    value: v,
                });
            }
            acc += w * v;
        }
        Ok(acc)
    }
}

/// `∫_{ℝ^d} f dγ` by the tensorized rule.
pub fn integrate_gaussian(
    f: impl Fn(&[f64]) -> f64,
    dim: usize,
    rule: &QuadratureRule,
) -> Result<f64> {
    TensorGrid::new(rule, dim)?.integrate(f)
}

// ---------------------------------------------------------------------------
// adaptive Gauss-Kronrod

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
pub struct AdaptiveConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for AdaptiveConfig {
    fn default() -> Self {
        AdaptiveConfig {
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: DEFAULT_ABS_TOL,
            max_subdivisions: DEFAULT_MAX_SUBDIVISIONS,
        }
    }
}

impl AdaptiveConfig {
    /// Accept when the error estimate is at most `tol·(1 + |result|)`.
    pub fn with_tol(tol: f64) -> Self {
        AdaptiveConfig {
            rel_tol: tol,
            abs_tol: tol,
            ..Default::default()
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol + self.rel_tol * value.abs()
    }
}

/// An integral value with its estimated absolute error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Clone, Copy, Debug)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_mass: f64,
    splittable: bool,
}

fn gk15(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation {
                point: vec![x],
                value: v,
            })
        }
    };
    let fc = eval(center)?;
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    let mut splittable = true;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && error <= floor {
        error = floor;
        splittable = false;
    }
    if (b - a).abs() <= 1e3 * f64::EPSILON * a.abs().max(b.abs()).max(1e-300) {
        splittable = false;
    }
    Ok(Segment {
        a,
        b,
        value,
        error,
        abs_mass: resabs,
        splittable,
    })
}

/// Bisection driver: repeatedly halves the panel with the largest error
/// (leftmost on ties) until the summed error meets the configured target.
fn refine(
    f: &mut dyn FnMut(f64) -> f64,
    mut segs: Vec<Segment>,
    cfg: &AdaptiveConfig,
) -> Result<Estimate> {
    let mut splits = 0usize;
    loop {
        let value: f64 = segs.iter().map(|s| s.value).sum();
        let error: f64 = segs.iter().map(|s| s.error).sum();
        if error <= cfg.target(value) {
            return Ok(Estimate { value, error });
        }
        let worst = segs
            .iter()
            .enumerate()
            .filter(|(_, s)| s.splittable)
            .fold(None::<(usize, f64)>, |best, (i, s)| match best {
                Some((_, e)) if e >= s.error => best,
                _ => Some((i, s.error)),
            });
        let Some((idx, _)) = worst else {
            // only roundoff-limited panels remain
            let floor: f64 = segs.iter().map(|s| 50.0 * f64::EPSILON * s.abs_mass).sum();
            if error <= floor.max(cfg.target(value)) * 10.0 {
                return Ok(Estimate { value, error });
            }
            return Err(Error::ConvergenceFailure {
                estimate: value,
                error_bound: error,
            });
        };
        if splits >= cfg.max_subdivisions {
            return Err(Error::ConvergenceFailure {
                estimate: value,
                error_bound: error,
            });
        }
        let s = segs[idx];
        let mid = 0.5 * (s.a + s.b);
        let left = gk15(f, s.a, mid)?;
        let right = gk15(f, mid, s.b)?;
        segs[idx] = left;
        segs.insert(idx + 1, right);
        splits += 1;
    }
}

/// Adaptive `∫_a^b f(x) dx`, starting from `initial_panels` equal panels.
pub fn integrate_interval_with(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    initial_panels: usize,
    cfg: &AdaptiveConfig,
) -> Result<Estimate> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::invalid("interval endpoints must be finite"));
    }
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    }
    let n = initial_panels.max(1);
    let h = (b - a) / n as f64;
    let mut segs = Vec::with_capacity(n);
    for i in 0..n {
        let lo = a + h * i as f64;
        let hi = if i + 1 == n { b } else { a + h * (i + 1) as f64 };
        segs.push(gk15(&mut f, lo, hi)?);
    }
    refine(&mut f, segs, cfg)
}

/// Adaptive `∫_a^b f(x) dx` with a breakpoint list; each gap becomes one
/// initial panel.
pub fn integrate_with_breaks(
    mut f: impl FnMut(f64) -> f64,
    breaks: &[f64],
    cfg: &AdaptiveConfig,
) -> Result<Estimate> {
    let mut segs = Vec::with_capacity(breaks.len());
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            segs.push(gk15(&mut f, w[0], w[1])?);
        }
    }
    if segs.is_empty() {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    }
    refine(&mut f, segs, cfg)
}

pub fn integrate_interval(f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    integrate_interval_with(f, a, b, 1, &AdaptiveConfig::with_tol(tol)).map(|e| e.value)
}

/// Change of variables applied before a half-line integration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalflineTransform {
    /// `g` lives on `(0, ∞)` already.
    None,
    /// `g` lives on `(0, 1)`; substitute `r = e^{-s}` (i.e. `s = -log r`).
    LogUnitInterval,
    /// Substitute `s = 1/v`, `ds = v^{-2} dv`; the `v = t²/4s` family of
    /// substitutions is this map up to a constant scale.
    InverseSquare,
}

const LOG_PANEL: f64 = 2.0;
const LOG_CORE: f64 = 6.0;
const LOG_LIMIT: f64 = 230.0;

/// `∫_0^∞ g`, or `∫_0^1 g` for [`HalflineTransform::LogUnitInterval`].
pub fn integrate_halfline(
    g: impl Fn(f64) -> f64,
    transform: HalflineTransform,
    tol: f64,
) -> Result<f64> {
    integrate_halfline_with(g, transform, &AdaptiveConfig::with_tol(tol)).map(|e| e.value)
}

/// Half-line integration on the log axis `s = e^u`.
///
/// Panels of width 2 cover `u ∈ [-6, 6]`; the window then grows outward one
/// panel at a time until two consecutive edge panels carry negligible mass,
/// and the result is refined by bisection.
pub fn integrate_halfline_with(
    mut g: impl FnMut(f64) -> f64,
    transform: HalflineTransform,
    cfg: &AdaptiveConfig,
) -> Result<Estimate> {
    if !(cfg.rel_tol > 0.0 || cfg.abs_tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let mut h = |s: f64| -> f64 {
        match transform {
            HalflineTransform::None => g(s),
            HalflineTransform::LogUnitInterval => {
                let r = (-s).exp();
                if r == 0.0 {
                    0.0
                } else {
                    g(r) * r
                }
            }
            HalflineTransform::InverseSquare => {
                let inv = 1.0 / s;
                g(inv) * inv * inv
            }
        }
    };
    let mut f = |u: f64| -> f64 {
        let s = u.exp();
        let v = h(s) * s;
        // underflowed tails (0 * inf) count as zero mass
        if v.is_nan() && (s == 0.0 || s.is_infinite()) {
            0.0
        } else {
            v
        }
    };

    let mut segs = Vec::new();
    let mut u = -LOG_CORE;
    while u < LOG_CORE - 1e-12 {
        segs.push(gk15(&mut f, u, u + LOG_PANEL)?);
        u += LOG_PANEL;
    }
    let core: f64 = segs.iter().map(|s| s.value).sum();
    let core_mass: f64 = segs.iter().map(|s| s.abs_mass).sum();
    let negligible = 1e-3 * cfg.target(core.abs().max(1e-3 * core_mass));

    // grow right
    let mut hi = LOG_CORE;
    let mut quiet = 0;
    while quiet < 2 {
        if hi >= LOG_LIMIT {
            let value: f64 = segs.iter().map(|s| s.value).sum();
            return Err(Error::ConvergenceFailure {
                estimate: value,
                error_bound: segs.last().map_or(f64::INFINITY, |s| s.abs_mass),
            });
        }
        let seg = gk15(&mut f, hi, hi + LOG_PANEL)?;
        quiet = if seg.abs_mass <= negligible { quiet + 1 } else { 0 };
        segs.push(seg);
        hi += LOG_PANEL;
    }
    // grow left
    let mut lo = -LOG_CORE;
    let mut left = Vec::new();
    quiet = 0;
    while quiet < 2 {
        if lo <= -LOG_LIMIT {
            let value: f64 = segs.iter().chain(&left).map(|s| s.value).sum();
            return Err(Error::ConvergenceFailure {
                estimate: value,
                error_bound: left.last().map_or(f64::INFINITY, |s: &Segment| s.abs_mass),
            });
        }
        let seg = gk15(&mut f, lo - LOG_PANEL, lo)?;
        quiet = if seg.abs_mass <= negligible { quiet + 1 } else { 0 };
        left.push(seg);
        lo -= LOG_PANEL;
    }
    left.reverse();
    left.extend(segs);
    refine(&mut f, left, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn one_point_rule() {
        let r = gauss_hermite_rule(1).unwrap();
        assert_eq!(r.nodes, vec![0.0]);
        assert_relative_eq!(r.weights[0], PI.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn zero_nodes_rejected() {
        assert!(matches!(
            gauss_hermite_rule(0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn twenty_point_moments() {
        let r = gauss_hermite_rule(20).unwrap();
        let sqrt_pi = statrs::function::gamma::gamma(0.5);
        assert_relative_eq!(r.apply_1d(|_| 1.0), sqrt_pi, max_relative = 1e-12);
        let half = statrs::function::gamma::gamma(1.5);
        assert_relative_eq!(r.apply_1d(|x| x * x), half, max_relative = 1e-12);
    }

    #[test]
    fn rule_is_symmetric_and_sorted() {
        for m in [2, 7, 64, 100] {
            let r = gauss_hermite_rule(m).unwrap();
            assert!(r.weights.iter().all(|&w| w > 0.0));
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
            for i in 0..m {
                assert_relative_eq!(r.nodes[i], -r.nodes[m - 1 - i], epsilon = 1e-13);
            }
            let total: f64 = r.weights.iter().sum();
            assert_relative_eq!(total, PI.sqrt(), max_relative = r.rel_tol);
        }
    }

    #[test]
    fn tensor_grid_probability() {
        let r = gauss_hermite_rule(8).unwrap();
        for d in 1..=3 {
            let v = integrate_gaussian(|_| 1.0, d, &r).unwrap();
            assert_relative_eq!(v, 1.0, max_relative = 1e-13);
        }
        assert!(TensorGrid::new(&r, 4).is_err());
        assert!(TensorGrid::new(&r, 0).is_err());
    }

    #[test]
    fn non_finite_integrand_reports_node() {
        let r = gauss_hermite_rule(3).unwrap();
        let err = integrate_gaussian(|x| 1.0 / x[0], 1, &r).unwrap_err();
        match err {
            Error::Evaluation { point, .. } => assert_eq!(point, vec![0.0]),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn halfline_gamma_values() {
        let sqrt_pi = PI.sqrt();
        let v = integrate_halfline(|v| (-v).exp() / v.sqrt(), HalflineTransform::None, 1e-11)
            .unwrap();
        assert_relative_eq!(v, sqrt_pi, max_relative = 1e-9);
        let v = integrate_halfline(|v| (-v).exp() * v.sqrt(), HalflineTransform::None, 1e-11)
            .unwrap();
        assert_relative_eq!(v, sqrt_pi / 2.0, max_relative = 1e-9);
    }

    #[test]
    fn unit_interval_transform() {
        // ∫_0^1 r^{-1/2} dr = 2
        let v = integrate_halfline(|r| r.powf(-0.5), HalflineTransform::LogUnitInterval, 1e-11)
            .unwrap();
        assert_relative_eq!(v, 2.0, max_relative = 1e-9);
    }

    #[test]
    fn divergent_integrand_fails() {
        let err = integrate_halfline(|s| 1.0 / (1.0 + s), HalflineTransform::None, 1e-10)
            .unwrap_err();
        assert!(matches!(err, Error::ConvergenceFailure { .. }));
    }

    #[test]
    fn exhausted_budget_carries_estimate() {
        let cfg = AdaptiveConfig {
            rel_tol: 1e-15,
            abs_tol: 0.0,
            max_subdivisions: 2,
        };
        let err = integrate_interval_with(|x| x.abs().sqrt(), -1.0, 2.0, 1, &cfg).unwrap_err();
        match err {
            Error::ConvergenceFailure { estimate, .. } => {
                assert!((estimate - (2.0 / 3.0) * (1.0 + 2f64.powf(1.5))).abs() < 1e-2)
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn finite_interval() {
        let v = integrate_interval(|x| x.cos(), 0.0, 1.0, 1e-13).unwrap();
        assert_relative_eq!(v, 1f64.sin(), max_relative = 1e-13);
    }
}
