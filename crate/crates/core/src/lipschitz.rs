//! Grid estimators for Gaussian Lipschitz seminorms and numerical probes of
//! the associated inclusion and boundedness statements.
//!
//! Everything operates on Hermite expansions: `∂ⁿ_t P_t f` acts on chaos
//! level `m` by `(-√m)ⁿ e^{-√m t}`, so the chaos components `J_m f(x)` are
//! tabulated once per grid point and every time slice is a weighted sum of
//! the table. Sup-norms are proxies: a grid maximum over `[-R, R]^d` plus a
//! local golden-section refinement. They are lower bounds of the true norm.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::fractional::{apply, FractionalKind, FractionalSpec, Representation};
use crate::hermite::HermiteExpansion;
use crate::semigroup::poisson_factor;

pub const DEFAULT_X_RADIUS: f64 = 3.0;
pub const DEFAULT_X_COUNT: usize = 121;
pub const DEFAULT_T_MIN: f64 = 0.0125;
pub const DEFAULT_T_MAX: f64 = 4.0;
pub const DEFAULT_T_COUNT: usize = 16;
/// Comparability window for `A_{α,k} / A_{α,l}`.
pub const COMPARABILITY_WINDOW: f64 = 50.0;
/// Largest relative change of a boundedness ratio under one grid refinement.
pub const MAX_REFINEMENT_DRIFT: f64 = 0.25;

const GOLDEN_ITERATIONS: usize = 60;

/// Smallest integer strictly greater than `alpha`.
pub fn smoothness_order(alpha: f64) -> usize {
    alpha.floor() as usize + 1
}

/// `count` log-spaced points from `min` to `max` inclusive.
pub fn log_grid(min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    if !(min > 0.0 && max > min && max.is_finite()) || count < 2 {
        return Err(Error::invalid(format!(
            "need 0 < t_min < t_max and at least two points, got [{min}, {max}] × {count}"
        )));
    }
    let (a, b) = (min.ln(), max.ln());
    Ok((0..count)
        .map(|i| match i {
            0 => min,
            _ if i + 1 == count => max,
            _ => (a + (b - a) * i as f64 / (count - 1) as f64).exp(),
        })
        .collect())
}

pub fn default_t_grid() -> Vec<f64> {
    log_grid(DEFAULT_T_MIN, DEFAULT_T_MAX, DEFAULT_T_COUNT).expect("valid default grid")
}

/// Inserts the geometric midpoint between neighbouring times.
pub fn refine_t_grid(t_grid: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * t_grid.len());
    for w in t_grid.windows(2) {
        out.push(w[0]);
        out.push((w[0] * w[1]).sqrt());
    }
    out.extend(t_grid.last());
    out
}

/// Tensor grid of `count` equispaced points per axis on `[-radius, radius]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct XGrid {
    radius: f64,
    count: usize,
}

impl XGrid {
    pub fn new(radius: f64, count: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid(format!("x radius must be positive, got {radius}")));
        }
        if count < 3 {
            return Err(Error::invalid(format!("need at least 3 grid points per axis, got {count}")));
        }
        Ok(XGrid { radius, count })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Halves the spacing.
    pub fn refined(&self) -> XGrid {
        XGrid {
            radius: self.radius,
            count: 2 * self.count - 1,
        }
    }

    fn spacing(&self) -> f64 {
        2.0 * self.radius / (self.count - 1) as f64
    }

    fn axis(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.radius } else { -self.radius + h * i as f64 })
            .collect()
    }

    /// Row-major points of the `dim`-fold tensor grid.
    pub fn points(&self, dim: usize) -> Vec<Vec<f64>> {
        let axis = self.axis();
        let total = self.count.pow(dim as u32);
        (0..total)
            .map(|mut flat| {
                let mut p = vec![0.0; dim];
                for slot in p.iter_mut().rev() {
                    *slot = axis[flat % self.count];
                    flat /= self.count;
                }
                p
            })
            .collect()
    }
}

impl Default for XGrid {
    fn default() -> Self {
        XGrid {
            radius: DEFAULT_X_RADIUS,
            count: DEFAULT_X_COUNT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupNorm {
    pub value: f64,
    pub argmax: Vec<f64>,
    /// The maximiser sits on the edge of the box, so the function may keep
    /// growing outside it.
    pub unbounded_suspect: bool,
}

fn golden_max(g: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..GOLDEN_ITERATIONS {
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    if gc >= gd {
        (c, gc)
    } else {
        (d, gd)
    }
}

/// Grid maximum of `|values|` followed by one coordinate-wise golden-section
/// pass of `|eval|` around the grid maximiser.
fn refine_sup(values: &[f64], points: &[Vec<f64>], grid: &XGrid, eval: &dyn Fn(&[f64]) -> f64) -> SupNorm {
    let r = grid.radius;
    let on_edge = |p: &[f64]| p.iter().any(|xi| xi.abs() >= r);
    // interior points win ties so flat functions are not flagged
    let (mut best, mut arg) = (0.0_f64, points.first().cloned().unwrap_or_default());
    let mut interior_best = 0.0_f64;
    for (v, p) in values.iter().zip(points) {
        let edge = on_edge(p);
        if !edge {
            interior_best = interior_best.max(v.abs());
        }
        if v.abs() > best || (v.abs() == best && !edge && on_edge(&arg)) {
            best = v.abs();
            arg = p.clone();
        }
    }
    let unbounded_suspect = best > interior_best;
    if best > 0.0 {
        let h = grid.spacing();
        for i in 0..arg.len() {
            let lo = (arg[i] - h).max(-r);
            let hi = (arg[i] + h).min(r);
            let base = arg.clone();
            let g = move |xi: f64| {
                let mut p = base.clone();
                p[i] = xi;
                eval(&p).abs()
            };
            let (x, v) = golden_max(&g, lo, hi);
            if v > best {
                best = v;
                arg[i] = x;
            }
        }
    }
    SupNorm {
        value: best,
        argmax: arg,
        unbounded_suspect,
    }
}

/// Sup-norm proxy of `f` on `[-x_radius, x_radius]^d` with `grid_points` per
/// axis and one refinement pass. A lower bound of `‖f‖∞`.
pub fn sup_norm_estimate(f: &dyn ScalarField, x_radius: f64, grid_points: usize) -> Result<SupNorm> {
    let grid = XGrid::new(x_radius, grid_points)?;
    let points = grid.points(f.dim());
    let values: Vec<f64> = points.iter().map(|p| f.value(p)).collect();
    Ok(refine_sup(&values, &points, &grid, &|x| f.value(x)))
}

/// `J_m f(x)` for every grid point `x` and chaos level `m`.
pub struct ChaosTable<'a> {
    expansion: &'a HermiteExpansion,
    grid: XGrid,
    points: Vec<Vec<f64>>,
    levels: Vec<Vec<f64>>,
}

impl<'a> ChaosTable<'a> {
    pub fn new(expansion: &'a HermiteExpansion, grid: XGrid) -> Self {
        let points = grid.points(expansion.dim());
        let levels = points.iter().map(|p| expansion.level_values(p)).collect();
        ChaosTable {
            expansion,
            grid,
            points,
            levels,
        }
    }

    /// Sup-norm proxy of `Σ_m w_m J_m f`.
    pub fn sup(&self, weights: &[f64]) -> SupNorm {
        let combine = |lv: &[f64]| lv.iter().zip(weights).map(|(a, w)| a * w).sum::<f64>();
        let values: Vec<f64> = self.levels.iter().map(|lv| combine(lv)).collect();
        refine_sup(&values, &self.points, &self.grid, &|x| {
            combine(&self.expansion.level_values(x))
        })
    }

    fn max_level(&self) -> usize {
        self.expansion.degree_cap()
    }

    /// Sup-norm proxy of `∂ⁿ_t P_t f`.
    pub fn poisson_derivative_sup(&self, t: f64, n: usize) -> f64 {
        let w: Vec<f64> = (0..=self.max_level()).map(|m| poisson_factor(m, t, n)).collect();
        self.sup(&w).value
    }

    /// Sup-norm proxy of `(P_t - I)ⁿ f`.
    pub fn difference_sup(&self, t: f64, n: usize) -> f64 {
        let w: Vec<f64> = (0..=self.max_level())
            .map(|m| (-(m as f64).sqrt() * t).exp_m1().powi(n as i32))
            .collect();
        self.sup(&w).value
    }

    pub fn identity_sup(&self) -> SupNorm {
        self.sup(&vec![1.0; self.max_level() + 1])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeminormRow {
    pub t: f64,
    pub supnorm: f64,
    pub weighted: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LipschitzEstimate {
    pub alpha: f64,
    /// Order of the time derivative.
    pub n: usize,
    pub t_grid: Vec<f64>,
    pub x_radius: f64,
    pub a_alpha: f64,
    pub sup_norm_f: f64,
    pub per_t_rows: Vec<SeminormRow>,
    /// `t^{n-α}·supnorm` still increases at the smallest `t`.
    pub non_convergence: bool,
    pub unbounded_suspect: bool,
    pub supnorm_is_grid_proxy: bool,
}

impl LipschitzEstimate {
    /// `‖f‖∞ + A_α(f)` on the proxies.
    pub fn norm(&self) -> f64 {
        self.sup_norm_f + self.a_alpha
    }
}

fn check_t_grid(t_grid: &[f64]) -> Result<Vec<f64>> {
    if t_grid.is_empty() || t_grid.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(Error::invalid("t grid must be non-empty and positive"));
    }
    let mut ts = t_grid.to_vec();
    ts.sort_by(f64::total_cmp);
    Ok(ts)
}

/// `A_α(f) ≈ max_t t^{n-α} ‖∂ⁿ_t P_t f‖_grid` with `n` the smallest integer
/// above `α`.
pub fn seminorm_estimate(
    f: &HermiteExpansion,
    alpha: f64,
    t_grid: &[f64],
    grid: XGrid,
) -> Result<LipschitzEstimate> {
    seminorm_estimate_with_order(f, alpha, smoothness_order(alpha), t_grid, grid)
}

/// Same as [`seminorm_estimate`] with an explicit derivative order `n > α`.
pub fn seminorm_estimate_with_order(
    f: &HermiteExpansion,
    alpha: f64,
    n: usize,
    t_grid: &[f64],
    grid: XGrid,
) -> Result<LipschitzEstimate> {
    let table = ChaosTable::new(f, grid);
    estimate_from_table(&table, alpha, n, t_grid)
}

fn estimate_from_table(table: &ChaosTable<'_>, alpha: f64, n: usize, t_grid: &[f64]) -> Result<LipschitzEstimate> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::invalid(format!("α must be positive, got {alpha}")));
    }
    if (n as f64) <= alpha {
        return Err(Error::invalid(format!("derivative order {n} must exceed α = {alpha}")));
    }
    let ts = check_t_grid(t_grid)?;
    let rows: Vec<SeminormRow> = ts
        .iter()
        .map(|&t| {
            let supnorm = table.poisson_derivative_sup(t, n);
            SeminormRow {
                t,
                supnorm,
                weighted: t.powf(n as f64 - alpha) * supnorm,
            }
        })
        .collect();
    let a_alpha = rows.iter().fold(0.0_f64, |m, r| m.max(r.weighted));
    let non_convergence = rows.len() >= 2 && rows[0].weighted > rows[1].weighted;
    let f_sup = table.identity_sup();
    Ok(LipschitzEstimate {
        alpha,
        n,
        t_grid: ts,
        x_radius: table.grid.radius,
        a_alpha,
        sup_norm_f: f_sup.value,
        per_t_rows: rows,
        non_convergence,
        unbounded_suspect: f_sup.unbounded_suspect,
        supnorm_is_grid_proxy: true,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModulusRow {
    pub t: f64,
    pub difference_sup: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModulusProbe {
    pub alpha: f64,
    pub n: usize,
    pub rows: Vec<ModulusRow>,
    pub max_ratio: f64,
    /// Ratio at the smallest `t` stays within twice the maximum over the
    /// remaining grid.
    pub non_exploding: bool,
    pub sup_norm_f: f64,
    /// `‖(P_t - I)ⁿ f‖ ≤ 2ⁿ ‖f‖ + 1e-8` on every row.
    pub ceiling_holds: bool,
    pub seminorm: f64,
}

/// Rows `(t, ‖(P_t - I)ⁿ f‖_grid, ratio to t^α)`.
pub fn modulus_probe(f: &HermiteExpansion, alpha: f64, t_grid: &[f64], grid: XGrid) -> Result<ModulusProbe> {
    if alpha.fract() == 0.0 {
        return Err(Error::invalid(format!("α must not be an integer, got {alpha}")));
    }
    let n = smoothness_order(alpha);
    let table = ChaosTable::new(f, grid);
    let est = estimate_from_table(&table, alpha, n, t_grid)?;
    let rows: Vec<ModulusRow> = est
        .t_grid
        .iter()
        .map(|&t| {
            let d = table.difference_sup(t, n);
            ModulusRow {
                t,
                difference_sup: d,
                ratio: d / t.powf(alpha),
            }
        })
        .collect();
    let max_ratio = rows.iter().fold(0.0_f64, |m, r| m.max(r.ratio));
    let rest = rows.iter().skip(1).fold(0.0_f64, |m, r| m.max(r.ratio));
    let non_exploding = rows[0].ratio.is_finite() && (rows.len() == 1 || rows[0].ratio <= 2.0 * rest);
    let ceiling = 2f64.powi(n as i32) * est.sup_norm_f + 1e-8;
    Ok(ModulusProbe {
        alpha,
        n,
        max_ratio,
        non_exploding,
        sup_norm_f: est.sup_norm_f,
        ceiling_holds: rows.iter().all(|r| r.difference_sup <= ceiling),
        rows,
        seminorm: est.a_alpha,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceProbe {
    pub alpha: f64,
    pub k: usize,
    pub l: usize,
    pub a_k: f64,
    pub a_l: f64,
    /// `None` when both seminorms vanish.
    pub ratio: Option<f64>,
    pub comparable: bool,
}

/// Compares `A_{α,k}` and `A_{α,l}` on one grid.
pub fn derivative_equivalence_probe(
    f: &HermiteExpansion,
    alpha: f64,
    k: usize,
    l: usize,
    t_grid: &[f64],
    grid: XGrid,
) -> Result<EquivalenceProbe> {
    let table = ChaosTable::new(f, grid);
    let a_k = estimate_from_table(&table, alpha, k, t_grid)?.a_alpha;
    let a_l = estimate_from_table(&table, alpha, l, t_grid)?.a_alpha;
    let (ratio, comparable) = if a_k == 0.0 && a_l == 0.0 {
        (None, true)
    } else {
        let r = a_k / a_l;
        (
            Some(r),
            r.is_finite() && (1.0 / COMPARABILITY_WINDOW..=COMPARABILITY_WINDOW).contains(&r),
        )
    };
    Ok(EquivalenceProbe {
        alpha,
        k,
        l,
        a_k,
        a_l,
        ratio,
        comparable,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InclusionProbe {
    pub alpha1: f64,
    pub alpha2: f64,
    /// Common derivative order, the one required by `α₂`.
    pub n: usize,
    pub a_alpha1: f64,
    pub a_alpha2: f64,
    /// `max_{t ≥ 1} tⁿ ‖∂ⁿ_t P_t f‖`; zero when the grid has no `t ≥ 1`.
    pub c_inclusion: f64,
    pub holds: bool,
}

/// Row-wise check of `A_{α₁} ≤ max(A_{α₂}, C)`: for `t < 1` the weight
/// `t^{n-α₁}` is below `t^{n-α₂}`, for `t ≥ 1` it is below `tⁿ`.
pub fn inclusion_probe(
    f: &HermiteExpansion,
    alpha1: f64,
    alpha2: f64,
    t_grid: &[f64],
    grid: XGrid,
) -> Result<InclusionProbe> {
    if !(alpha1 > 0.0 && alpha1 <= alpha2) {
        return Err(Error::invalid(format!("need 0 < α₁ ≤ α₂, got {alpha1}, {alpha2}")));
    }
    let n = smoothness_order(alpha2);
    let table = ChaosTable::new(f, grid);
    let e1 = estimate_from_table(&table, alpha1, n, t_grid)?;
    let e2 = estimate_from_table(&table, alpha2, n, t_grid)?;
    let c_inclusion = e1
        .per_t_rows
        .iter()
        .filter(|r| r.t >= 1.0)
        .fold(0.0_f64, |m, r| m.max(r.t.powi(n as i32) * r.supnorm));
    let bound = e2.a_alpha.max(c_inclusion);
    Ok(InclusionProbe {
        alpha1,
        alpha2,
        n,
        a_alpha1: e1.a_alpha,
        a_alpha2: e2.a_alpha,
        c_inclusion,
        holds: e1.a_alpha <= bound * (1.0 + 1e-12),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundednessRow {
    pub name: String,
    pub source_norm: f64,
    pub target_seminorm: f64,
    pub target_norm: f64,
    /// `target_norm / source_norm` (zero when both vanish).
    pub ratio: f64,
    pub refined_ratio: f64,
    pub drift: f64,
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundednessProbe {
    pub kind: FractionalKind,
    pub representation: Representation,
    pub beta: f64,
    pub alpha: f64,
    pub target_alpha: f64,
    pub rows: Vec<BoundednessRow>,
    pub max_drift_allowed: f64,
}

impl BoundednessProbe {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.stable)
    }
}

/// Target exponent: `α + β` for potentials, `α - β` for derivatives.
pub fn target_alpha(kind: FractionalKind, alpha: f64, beta: f64) -> Result<f64> {
    if kind.is_derivative() {
        if beta >= alpha {
            return Err(Error::invalid(format!(
                "a derivative of order β = {beta} needs α > β, got α = {alpha}"
            )));
        }
        Ok(alpha - beta)
    } else {
        Ok(alpha + beta)
    }
}

fn ratio_for(
    spec: &FractionalSpec,
    f: &HermiteExpansion,
    alpha: f64,
    target: f64,
    t_grid: &[f64],
    grid: XGrid,
) -> Result<(f64, f64, f64)> {
    let source = seminorm_estimate(f, alpha, t_grid, grid)?.norm();
    let input = if spec.kind() == FractionalKind::RieszPotential
        && spec.representation() == Representation::Integral
    {
        f.remove_mean()
    } else {
        f.clone()
    };
    let image = apply(spec, &input)?;
    let est = seminorm_estimate(&image, target, t_grid, grid)?;
    let ratio = if source == 0.0 {
        if est.norm() == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        est.norm() / source
    };
    Ok((ratio, est.a_alpha, est.norm()))
}

/// For each input, the ratio of the image's target-space norm to the source
/// norm, recomputed once on refined `t` and `x` grids.
pub fn operator_boundedness_probe(
    spec: &FractionalSpec,
    f_suite: &[(String, HermiteExpansion)],
    alpha: f64,
    t_grid: &[f64],
    grid: XGrid,
) -> Result<BoundednessProbe> {
    let target = target_alpha(spec.kind(), alpha, spec.beta())?;
    let fine_t = refine_t_grid(&check_t_grid(t_grid)?);
    let fine_x = grid.refined();
    let mut rows = Vec::with_capacity(f_suite.len());
    for (name, f) in f_suite {
        let (ratio, target_seminorm, target_norm) = ratio_for(spec, f, alpha, target, t_grid, grid)?;
        let (refined_ratio, _, _) = ratio_for(spec, f, alpha, target, &fine_t, fine_x)?;
        let drift = if ratio == refined_ratio {
            0.0
        } else {
            (refined_ratio - ratio).abs() / ratio.abs().max(refined_ratio.abs())
        };
        rows.push(BoundednessRow {
            name: name.clone(),
            source_norm: seminorm_estimate(f, alpha, t_grid, grid)?.norm(),
            target_seminorm,
            target_norm,
            ratio,
            refined_ratio,
            drift,
            stable: ratio.is_finite() && drift <= MAX_REFINEMENT_DRIFT,
        });
    }
    Ok(BoundednessProbe {
        kind: spec.kind(),
        representation: spec.representation(),
        beta: spec.beta(),
        alpha,
        target_alpha: target,
        rows,
        max_drift_allowed: MAX_REFINEMENT_DRIFT,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FnField;
    use crate::hermite::{project, MultiIndex};
    use crate::quadrature::gauss_hermite_rule;
    use approx::assert_relative_eq;

    fn cos_expansion(a: f64) -> HermiteExpansion {
        let f = FnField::new(1, move |x: &[f64]| (a * x[0]).cos());
        project(&f, 40, &gauss_hermite_rule(64).unwrap()).unwrap()
    }

    #[test]
    fn grids() {
        let g = default_t_grid();
        assert_eq!(g.len(), 16);
        assert_eq!(g[0], 0.0125);
        assert_eq!(g[15], 4.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        let r = refine_t_grid(&g);
        assert_eq!(r.len(), 31);
        let x = XGrid::new(3.0, 5).unwrap();
        assert_eq!(x.points(2).len(), 25);
        assert_eq!(x.points(1), vec![vec![-3.0], vec![-1.5], vec![0.0], vec![1.5], vec![3.0]]);
        assert!(XGrid::new(3.0, 2).is_err());
        assert_eq!(smoothness_order(0.5), 1);
        assert_eq!(smoothness_order(1.0), 2);
    }

    #[test]
    fn sup_norm_examples() {
        let c = FnField::new(1, |_: &[f64]| -2.5);
        assert_eq!(sup_norm_estimate(&c, 3.0, 11).unwrap().value, 2.5);

        let cos = FnField::new(1, |x: &[f64]| (x[0] - 0.01).cos());
        let s = sup_norm_estimate(&cos, 3.5, 12).unwrap();
        assert!((s.value - 1.0).abs() < 1e-6);
        assert!(!s.unbounded_suspect);

        let h1 = crate::hermite::HermitePolynomial(MultiIndex::new(vec![1]));
        let s = sup_norm_estimate(&h1, 3.0, 121).unwrap();
        assert_relative_eq!(s.value, 3.0 * 2f64.sqrt(), max_relative = 1e-12);
        assert!(s.unbounded_suspect);
    }

    #[test]
    fn constant_has_zero_seminorm() {
        let c = HermiteExpansion::constant(1, 10, 3.0);
        let e = seminorm_estimate(&c, 0.5, &default_t_grid(), XGrid::default()).unwrap();
        assert_eq!(e.a_alpha, 0.0);
        assert_eq!(e.sup_norm_f, 3.0);
        let m = modulus_probe(&c, 0.5, &default_t_grid(), XGrid::default()).unwrap();
        assert!(m.rows.iter().all(|r| r.difference_sup == 0.0));
    }

    #[test]
    fn cos_seminorm_is_stable() {
        let f = cos_expansion(1.0);
        let t = default_t_grid();
        let coarse = seminorm_estimate(&f, 0.5, &t, XGrid::default()).unwrap();
        let fine_t = refine_t_grid(&refine_t_grid(&t));
        let fine = seminorm_estimate(&f, 0.5, &fine_t, XGrid::default()).unwrap();
        assert!(coarse.a_alpha > 0.0 && coarse.a_alpha.is_finite());
        assert!((fine.a_alpha - coarse.a_alpha).abs() <= 0.1 * coarse.a_alpha);
        assert!((coarse.sup_norm_f - 1.0).abs() < 1e-6);
        assert!(coarse.per_t_rows.windows(2).all(|w| w[0].t < w[1].t));
    }

    #[test]
    fn weighting_relation_between_alphas() {
        let f = cos_expansion(1.0);
        let t = default_t_grid();
        let a5 = seminorm_estimate(&f, 0.5, &t, XGrid::default()).unwrap();
        let a9 = seminorm_estimate(&f, 0.9, &t, XGrid::default()).unwrap();
        for (r5, r9) in a5.per_t_rows.iter().zip(&a9.per_t_rows) {
            assert_eq!(r5.supnorm, r9.supnorm);
            assert_relative_eq!(r9.weighted, r5.weighted * r5.t.powf(-0.4), max_relative = 1e-12);
        }
        let min_w = t.iter().fold(f64::INFINITY, |m, &s| m.min(s.powf(-0.4)));
        assert!(a9.a_alpha >= a5.a_alpha * min_w);
    }

    #[test]
    fn homogeneity() {
        let f = cos_expansion(2.0);
        let t = default_t_grid();
        let a = seminorm_estimate(&f, 0.5, &t, XGrid::default()).unwrap();
        let b = seminorm_estimate(&f.scaled(2.0), 0.5, &t, XGrid::default()).unwrap();
        assert_eq!(b.a_alpha, 2.0 * a.a_alpha);
    }

    #[test]
    fn spectral_derivative_matches_finite_difference() {
        let f = cos_expansion(1.0);
        let x = [0.3];
        let t = 0.5;
        let h = 1e-3;
        let p = |t: f64| crate::semigroup::ph_spectral(&f, t, 0).eval(&x);
        let fd = (p(t + h) - p(t - h)) / (2.0 * h);
        let exact = crate::semigroup::ph_spectral(&f, t, 1).eval(&x);
        assert!((fd - exact).abs() <= 1e-5 * exact.abs());
    }

    #[test]
    fn modulus_cos() {
        let f = cos_expansion(1.0);
        let t = log_grid(0.0125, 0.4, 6).unwrap();
        let m = modulus_probe(&f, 0.5, &t, XGrid::default()).unwrap();
        assert!(m.non_exploding);
        assert!(m.ceiling_holds);
        let m2 = modulus_probe(&f, 1.5, &default_t_grid(), XGrid::default()).unwrap();
        assert_eq!(m2.n, 2);
        assert!(m2.ceiling_holds);
        assert!(modulus_probe(&f, 1.0, &t, XGrid::default()).is_err());
    }

    #[test]
    fn equivalence_cos() {
        let f = cos_expansion(1.0);
        let p = derivative_equivalence_probe(&f, 0.5, 1, 2, &default_t_grid(), XGrid::default()).unwrap();
        assert!(p.comparable, "{p:?}");
        let q = derivative_equivalence_probe(&f.scaled(2.0), 0.5, 1, 2, &default_t_grid(), XGrid::default()).unwrap();
        assert_eq!(q.a_k, 2.0 * p.a_k);
        assert_eq!(q.ratio, p.ratio);
        let c = HermiteExpansion::constant(1, 4, 1.0);
        let z = derivative_equivalence_probe(&c, 0.5, 1, 2, &default_t_grid(), XGrid::default()).unwrap();
        assert_eq!(z.ratio, None);
        assert!(z.comparable);
    }

    #[test]
    fn inclusion_rows() {
        let f = cos_expansion(1.0);
        let p = inclusion_probe(&f, 0.3, 0.8, &default_t_grid(), XGrid::default()).unwrap();
        assert!(p.holds);
        assert!(p.c_inclusion > 0.0);
        let d = inclusion_probe(&f, 0.5, 0.5, &default_t_grid(), XGrid::default()).unwrap();
        assert_eq!(d.a_alpha1, d.a_alpha2);
    }

    #[test]
    fn boundedness_probes() {
        let suite = vec![
            ("cos:1".to_owned(), cos_expansion(1.0)),
            ("const:1".to_owned(), HermiteExpansion::constant(1, 40, 1.0)),
        ];
        let t = default_t_grid();
        let d = FractionalSpec::new(FractionalKind::RieszDerivative, 0.3, Representation::Spectral).unwrap();
        let p = operator_boundedness_probe(&d, &suite, 0.9, &t, XGrid::default()).unwrap();
        assert!(p.passed(), "{p:?}");
        assert_eq!(p.rows[1].target_norm, 0.0);
        let j = FractionalSpec::new(FractionalKind::BesselPotential, 0.5, Representation::Spectral).unwrap();
        let p = operator_boundedness_probe(&j, &suite, 0.4, &t, XGrid::default()).unwrap();
        assert!(p.passed(), "{p:?}");
        assert!((p.target_alpha - 0.9).abs() < 1e-15);
        let bad = FractionalSpec::new(FractionalKind::RieszDerivative, 0.9, Representation::Spectral).unwrap();
        assert!(operator_boundedness_probe(&bad, &suite, 0.9, &t, XGrid::default()).is_err());
    }
}
