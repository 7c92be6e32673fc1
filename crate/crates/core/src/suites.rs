//! Verification suites: each one turns a module's oracles and invariants
//! into report rows. Errors inside a check become failed rows; a suite never
//! aborts once its configuration is valid.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::forward_diff::{
    difference_bound_probe, forward_difference, forward_difference_detailed, nested_integral_form,
    ForwardDifferenceQuery, Polynomial,
};
use crate::fractional::{
    apply, apply_at_point, c_beta_analytic, c_beta_constant, eigenvalue_oracle, integral_eigenvalue,
    FractionalKind, FractionalSpec, Representation,
};
use crate::hermite::{hermite_eval, HermiteExpansion, HermitePolynomial, MultiIndex};
use crate::lipschitz::{
    derivative_equivalence_probe, inclusion_probe, log_grid, modulus_probe, operator_boundedness_probe,
    refine_t_grid, seminorm_estimate, smoothness_order, sup_norm_estimate, XGrid, COMPARABILITY_WINDOW,
    MAX_REFINEMENT_DRIFT,
};
use crate::quadrature::{gauss_hermite_rule, QuadratureRule};
use crate::report::{utc_timestamp, ReportRow, VerificationReport};
use crate::semigroup::{kernel_derivative_l1, ph_spectral, Operand, Semigroup};

/// Gauss-Hermite nodes used by the eigenfunction suite; exact for the
/// degree ≤ 4 test polynomials.
pub const EIGEN_NODES: usize = 12;
/// Relative slack on the kernel-derivative bound.
pub const KERNEL_BOUND_SLACK: f64 = 0.05;
/// Bound constant for `t·‖∂_t p(t,x,·)‖₁`.
pub const KERNEL_BOUND_CONSTANT: f64 = 2.0;
/// Same constant under the `t²/(4s)` reading of the splitting step.
pub const KERNEL_BOUND_CONSTANT_ALT: f64 = 1.5;
/// Largest allowed `max/min` of `t·‖∂_t p‖₁` over the `t` grid.
pub const KERNEL_SCALING_SPREAD: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Eigen,
    KernelBound,
    ForwardDiff,
    Fractional,
    Lipschitz,
    Boundedness,
    All,
}

impl Suite {
    pub const MEMBERS: [Suite; 6] = [
        Suite::Eigen,
        Suite::KernelBound,
        Suite::ForwardDiff,
        Suite::Fractional,
        Suite::Lipschitz,
        Suite::Boundedness,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Eigen => "eigen",
            Suite::KernelBound => "kernel-bound",
            Suite::ForwardDiff => "forward-diff",
            Suite::Fractional => "fractional",
            Suite::Lipschitz => "lipschitz",
            Suite::Boundedness => "boundedness",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::MEMBERS
            .into_iter()
            .chain([Suite::All])
            .find(|m| m.as_str() == s)
            .ok_or(Error::Parse {
                input: s.to_owned(),
                grammar: "eigen | kernel-bound | forward-diff | fractional | lipschitz | boundedness | all",
            })
    }
}

/// Everything a run depends on; echoed verbatim into the report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub functions: Vec<String>,
    pub alpha: f64,
    pub beta: f64,
    /// Extra fractional operator checked on top of the fixed tables.
    pub kind: Option<FractionalKind>,
    pub representation: Option<Representation>,
    pub t_min: f64,
    pub t_max: f64,
    pub t_count: usize,
    pub x_radius: f64,
    pub x_count: usize,
    pub degree_cap: usize,
    pub nodes: usize,
    pub tol: f64,
    pub seed: u64,
    pub eigen_nodes: usize,
    pub kernel_bound_slack: f64,
    pub comparability_window: f64,
    pub max_refinement_drift: f64,
    pub supnorm_is_grid_proxy: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            functions: ["cos:1", "cos:2", "gauss-bump", "erf-step", "const:1"]
                .map(String::from)
                .to_vec(),
            alpha: 0.5,
            beta: 0.5,
            kind: None,
            representation: None,
            t_min: crate::lipschitz::DEFAULT_T_MIN,
            t_max: crate::lipschitz::DEFAULT_T_MAX,
            t_count: crate::lipschitz::DEFAULT_T_COUNT,
            x_radius: crate::lipschitz::DEFAULT_X_RADIUS,
            x_count: crate::lipschitz::DEFAULT_X_COUNT,
            degree_cap: 40,
            nodes: crate::quadrature::DEFAULT_NODES,
            tol: 1e-10,
            seed: 0,
            eigen_nodes: EIGEN_NODES,
            kernel_bound_slack: KERNEL_BOUND_SLACK,
            comparability_window: COMPARABILITY_WINDOW,
            max_refinement_drift: MAX_REFINEMENT_DRIFT,
            supnorm_is_grid_proxy: true,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::invalid(format!("alpha must be positive, got {}", self.alpha)));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::invalid(format!("beta must be positive, got {}", self.beta)));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::invalid(format!("tol must lie in (0, 1), got {}", self.tol)));
        }
        if self.degree_cap == 0 {
            return Err(Error::invalid("degree cap must be positive"));
        }
        self.t_grid()?;
        self.x_grid()?;
        gauss_hermite_rule(self.nodes)?;
        for f in &self.functions {
            CatalogEntry::parse(f)?;
        }
        Ok(())
    }

    pub fn t_grid(&self) -> Result<Vec<f64>> {
        log_grid(self.t_min, self.t_max, self.t_count)
    }

    pub fn x_grid(&self) -> Result<XGrid> {
        XGrid::new(self.x_radius, self.x_count)
    }
}

/// Row collector for one suite.
struct Rows {
    suite: &'static str,
    rows: Vec<ReportRow>,
}

impl Rows {
    fn new(suite: Suite) -> Self {
        Rows {
            suite: suite.as_str(),
            rows: Vec::new(),
        }
    }

    /// Runs `check`; an error becomes a failed row named `name`.
    fn check(&mut self, name: &str, inputs: &str, check: impl FnOnce(&str) -> Result<Vec<ReportRow>>) {
        match check(self.suite) {
            Ok(rows) => self.rows.extend(rows),
            Err(e) => self.rows.push(ReportRow::errored(self.suite, name, inputs, &e)),
        }
    }

    fn push(&mut self, row: ReportRow) {
        self.rows.push(row);
    }
}

fn fmt_point(x: &[f64]) -> String {
    let parts: Vec<String> = x.iter().map(|v| format!("{v}")).collect();
    format!("({})", parts.join(","))
}

/// Runs one suite (or all of them) and assembles the report.
pub fn run_suite(suite: Suite, config: &RunConfig) -> Result<VerificationReport<RunConfig>> {
    config.validate()?;
    let members: Vec<Suite> = match suite {
        Suite::All => Suite::MEMBERS.to_vec(),
        s => vec![s],
    };
    let mut rows = Vec::new();
    for s in members {
        rows.extend(suite_rows(s, config)?);
    }
    Ok(VerificationReport::new(suite.as_str(), utc_timestamp(), config.clone(), rows))
}

fn suite_rows(suite: Suite, config: &RunConfig) -> Result<Vec<ReportRow>> {
    let mut rows = Rows::new(suite);
    match suite {
        Suite::Eigen => eigen(&mut rows, config)?,
        Suite::KernelBound => kernel_bound(&mut rows, config),
        Suite::ForwardDiff => forward_diff(&mut rows, config)?,
        Suite::Fractional => fractional(&mut rows, config)?,
        Suite::Lipschitz => lipschitz(&mut rows, config)?,
        Suite::Boundedness => boundedness(&mut rows, config)?,
        Suite::All => unreachable!("expanded by run_suite"),
    }
    Ok(rows.rows)
}

fn projection_rule(config: &RunConfig) -> Result<QuadratureRule> {
    gauss_hermite_rule(config.nodes)
}

// ---------------------------------------------------------------- eigen

const EIGEN_TOL: f64 = 1e-6;
const EIGEN_ABS_TOL: f64 = 1e-9;

/// Worst point of a grid comparison, by the larger of `rel/tol` and
/// `abs/abs_tol` after taking the more lenient of the two.
fn worst_point(
    suite: &str,
    name: &str,
    points: &[Vec<f64>],
    mut computed: impl FnMut(&[f64]) -> Result<f64>,
    oracle: impl Fn(&[f64]) -> f64,
    inputs: &str,
) -> Result<ReportRow> {
    let mut worst: Option<(f64, ReportRow)> = None;
    for x in points {
        let c = computed(x)?;
        let o = oracle(x);
        let row = ReportRow::equal(
            suite,
            name,
            format!("{inputs} x={}", fmt_point(x)),
            c,
            o,
            EIGEN_TOL,
            EIGEN_ABS_TOL,
        );
        let score = (row.rel_err / EIGEN_TOL).min(row.abs_err / EIGEN_ABS_TOL);
        let score = if score.is_nan() { f64::INFINITY } else { score };
        if worst.as_ref().map_or(true, |(s, _)| score > *s) {
            worst = Some((score, row));
        }
    }
    worst
        .map(|(_, r)| r.with_note(format!("worst of {} grid points", points.len())))
        .ok_or_else(|| Error::invalid("empty grid"))
}

fn eigen(rows: &mut Rows, config: &RunConfig) -> Result<()> {
    let sg = Semigroup::with_nodes(config.eigen_nodes, config.tol)?;
    let grid = XGrid::new(2.0, 11)?;
    for d in 1..=2 {
        let points = grid.points(d);
        for nu in MultiIndex::up_to(d, 4) {
            let h = HermitePolynomial(nu.clone());
            let n = nu.degree() as f64;
            for t in [0.25, 1.0] {
                let inputs = format!("d={d} nu={nu} t={t}");
                let ou_factor = (-n * t).exp();
                rows.check("ou.kernel", &inputs, |s| {
                    Ok(vec![worst_point(
                        s,
                        "ou.kernel",
                        &points,
                        |x| sg.ou_kernel_at(Operand::Field(&h), t, x),
                        |x| ou_factor * hermite_eval(&nu, x),
                        &inputs,
                    )?])
                });
                let ph_factor = (-n.sqrt() * t).exp();
                rows.check("poisson.subordination", &inputs, |s| {
                    Ok(vec![worst_point(
                        s,
                        "poisson.subordination",
                        &points,
                        |x| sg.ph_subordinated_at(Operand::Field(&h), t, x),
                        |x| ph_factor * hermite_eval(&nu, x),
                        &inputs,
                    )?])
                });
                if d == 1 {
                    rows.check("poisson.kernel", &inputs, |s| {
                        Ok(vec![worst_point(
                            s,
                            "poisson.kernel",
                            &points,
                            |x| sg.ph_kernel_at(Operand::Field(&h), t, 0, x),
                            |x| ph_factor * hermite_eval(&nu, x),
                            &inputs,
                        )?])
                    });
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------- kernel-bound

fn kernel_bound(rows: &mut Rows, config: &RunConfig) {
    let tol = config.tol.max(1e-8);
    let slack = config.kernel_bound_slack;
    let ts = [0.1, 0.5, 1.0, 2.0];
    let mut scaled = Vec::new();
    for &t in &ts {
        let inputs = format!("d=1 x=0 k=1 t={t}");
        rows.check("k1.scaled_l1", &inputs, |s| {
            let l1 = kernel_derivative_l1(t, &[0.0], 1, tol)?;
            let v = t * (l1.value + l1.tail_bound);
            scaled.push(v);
            let closed = 2.0 * (2.0 / PI).sqrt() * (-0.5f64).exp();
            Ok(vec![
                ReportRow::at_most(s, "k1.scaled_l1", inputs.as_str(), v, KERNEL_BOUND_CONSTANT, slack),
                ReportRow::equal(s, "k1.tonelli_closed_form", inputs.as_str(), t * l1.tonelli_bound, closed, 1e-7, 0.0),
                ReportRow::at_most(s, "k1.below_tonelli", inputs.as_str(), l1.value, l1.tonelli_bound, 1e-6),
            ])
        });
    }
    if scaled.len() == ts.len() {
        let max = scaled.iter().cloned().fold(f64::MIN, f64::max);
        let min = scaled.iter().cloned().fold(f64::MAX, f64::min);
        let inputs = "d=1 x=0 k=1 t∈{0.1,0.5,1,2}";
        rows.push(
            ReportRow::at_most(rows.suite, "k1.max_scaled_l1.reading_t2_over_4s", inputs, max, KERNEL_BOUND_CONSTANT_ALT, slack)
                .with_note("bound constant under the t²/(4s) reading of the splitting step"),
        );
        rows.push(
            ReportRow::at_most(rows.suite, "k1.scaling_spread", inputs, max / min, KERNEL_SCALING_SPREAD, 0.0)
                .flagged()
                .with_note(format!(
                    "informational: t·‖∂p‖₁ falls from {:.4} at t=0.1 to {:.4} at t=2; the 1/t rate is an upper bound, not attained for t ≳ 1",
                    scaled[0],
                    scaled[scaled.len() - 1]
                )),
        );
    }
    let k2_bound = 4.0 * KERNEL_BOUND_CONSTANT * KERNEL_BOUND_CONSTANT;
    for &t in &ts {
        let inputs = format!("d=1 x=0 k=2 t={t}");
        rows.check("k2.scaled_l1", &inputs, |s| {
            let l1 = kernel_derivative_l1(t, &[0.0], 2, tol)?;
            Ok(vec![ReportRow::at_most(
                s,
                "k2.scaled_l1",
                inputs.as_str(),
                t * t * (l1.value + l1.tail_bound),
                k2_bound,
                slack,
            )])
        });
    }
}

// ---------------------------------------------------------- forward-diff

const POLY_TOL: f64 = 1e-12;

fn random_polynomial(rng: &mut ChaCha8Rng) -> Polynomial {
    let degree = rng.gen_range(0..=6);
    Polynomial::new((0..=degree).map(|_| rng.gen_range(-1.0..=1.0)).collect())
}

fn forward_diff(rows: &mut Rows, config: &RunConfig) -> Result<()> {
    // definition examples
    rows.check("example.quadratic", "f=t² k=2 t=0.7 s=0.3", |s| {
        let q = ForwardDifferenceQuery::new(0.7, 0.3, 2)?;
        Ok(vec![ReportRow::equal(s, "example.quadratic", "f=t² k=2 t=0.7 s=0.3", forward_difference(|t| t * t, &q), 0.18, POLY_TOL, 1e-15)])
    });
    rows.check("example.exponential", "f=e^{-t} k=3 t=0.5 s=0.2", |s| {
        let q = ForwardDifferenceQuery::new(0.5, 0.2, 3)?;
        let oracle = (-0.5f64).exp() * (-0.2f64).exp_m1().powi(3);
        Ok(vec![ReportRow::equal(s, "example.exponential", "f=e^{-t} k=3 t=0.5 s=0.2", forward_difference(|t| (-t).exp(), &q), oracle, 1e-12, 0.0)])
    });

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for i in 0..20 {
        let p = random_polynomial(&mut rng);
        let k = rng.gen_range(2..=5usize);
        let t = rng.gen_range(0.0..2.0);
        let s_inc = rng.gen_range(0.05..1.0);
        let inputs = format!("sample={i} deg={} k={k} t={t:.6} s={s_inc:.6}", p.degree());
        // (i) Δ^k = Δ(Δ^{k-1})
        rows.check("identity_i.polynomial", &inputs, |s| {
            let q = ForwardDifferenceQuery::new(t, s_inc, k)?;
            let direct = forward_difference_detailed(|x| p.eval(x), &q);
            let inner = ForwardDifferenceQuery::new(0.0, s_inc, k - 1)?;
            let nested = forward_difference(
                |tau| {
                    let qi = ForwardDifferenceQuery::new(tau, s_inc, k - 1).unwrap_or(inner);
                    forward_difference(|x| p.eval(x), &qi)
                },
                &ForwardDifferenceQuery::new(t, s_inc, 1)?,
            );
            let scale = direct.max_term.max(1.0);
            Ok(vec![ReportRow::equal(s, "identity_i.polynomial", inputs.as_str(), direct.value, nested, POLY_TOL, POLY_TOL * scale)])
        });
        // (iii-b) ∂^j_t Δ^k f = Δ^k f^{(j)}
        let j = 1 + i % 2;
        rows.check("identity_iii_b.polynomial", &inputs, |s| {
            let q = ForwardDifferenceQuery::new(t, s_inc, k)?;
            let lhs = p.forward_difference(s_inc, k).nth_derivative(j);
            let dj = p.nth_derivative(j);
            let rhs = forward_difference_detailed(|x| dj.eval(x), &q);
            let scale = rhs.max_term.max(1.0);
            Ok(vec![ReportRow::equal(s, "identity_iii_b.polynomial", format!("{inputs} j={j}"), lhs.eval(t), rhs.value, POLY_TOL, POLY_TOL * scale)])
        });
    }

    // (ii) nested integral form
    rows.check("identity_ii.cubic", "f=t³ k=2 t=1 s=0.5", |s| {
        let q = ForwardDifferenceQuery::new(1.0, 0.5, 2)?;
        let nested = nested_integral_form(|v| 6.0 * v, &q, 1e-13)?;
        Ok(vec![ReportRow::equal(s, "identity_ii.cubic", "f=t³ k=2 t=1 s=0.5", nested, forward_difference(|t| t * t * t, &q), POLY_TOL, 0.0)])
    });
    rows.check("identity_ii.exponential", "f=e^{-t} k=2 t=0.4 s=0.3", |s| {
        let q = ForwardDifferenceQuery::new(0.4, 0.3, 2)?;
        let nested = nested_integral_form(|v| (-v).exp(), &q, 1e-12)?;
        Ok(vec![ReportRow::equal(s, "identity_ii.exponential", "f=e^{-t} k=2 t=0.4 s=0.3", nested, forward_difference(|t| (-t).exp(), &q), 1e-8, 0.0)])
    });
    for k in 1..=4 {
        let inputs = format!("f=t⁶-2t³+t k={k} t=0.3 s=0.4");
        rows.check("identity_ii.polynomial", &inputs, |s| {
            let p = Polynomial::new(vec![0.0, 1.0, 0.0, -2.0, 0.0, 0.0, 1.0]);
            let dk = p.nth_derivative(k);
            let q = ForwardDifferenceQuery::new(0.3, 0.4, k)?;
            let nested = nested_integral_form(|v| dk.eval(v), &q, 1e-13)?;
            Ok(vec![ReportRow::equal(s, "identity_ii.polynomial", inputs.as_str(), nested, forward_difference(|x| p.eval(x), &q), POLY_TOL, 1e-15)])
        });
    }

    // (iii-a) ∂_s Δ_s^k f(t) = k Δ_s^{k-1}(f', t+s)
    type Pair = (&'static str, fn(f64) -> f64, fn(f64) -> f64);
    let smooth: [Pair; 3] = [
        ("e^{t}", |t| t.exp(), |t| t.exp()),
        ("e^{-t}", |t| (-t).exp(), |t| -(-t).exp()),
        ("cos", f64::cos, |t| -t.sin()),
    ];
    for (label, f, df) in smooth {
        for k in 1..=3usize {
            let (t, s_inc, h) = (0.4, 0.3, 1e-4);
            let inputs = format!("f={label} k={k} t={t} s={s_inc}");
            rows.check("identity_iii_a", &inputs, |s| {
                let at = |si: f64| -> Result<f64> { Ok(forward_difference(f, &ForwardDifferenceQuery::new(t, si, k)?)) };
                let lhs = (at(s_inc + h)? - at(s_inc - h)?) / (2.0 * h);
                let rhs = if k == 1 {
                    df(t + s_inc)
                } else {
                    k as f64 * forward_difference(df, &ForwardDifferenceQuery::new(t + s_inc, s_inc, k - 1)?)
                };
                Ok(vec![ReportRow::equal(s, "identity_iii_a", inputs.as_str(), lhs, rhs, 1e-6, 1e-12)])
            });
        }
    }
    // (iii-b) on exponentials, t-derivative by central difference
    for (label, f, df) in smooth {
        let (t, s_inc, h, k) = (0.4, 0.3, 1e-4, 2usize);
        let inputs = format!("f={label} k={k} j=1 t={t} s={s_inc}");
        rows.check("identity_iii_b.smooth", &inputs, |s| {
            let at = |ti: f64| -> Result<f64> { Ok(forward_difference(f, &ForwardDifferenceQuery::new(ti, s_inc, k)?)) };
            let lhs = (at(t + h)? - at(t - h)?) / (2.0 * h);
            let rhs = forward_difference(df, &ForwardDifferenceQuery::new(t, s_inc, k)?);
            Ok(vec![ReportRow::equal(s, "identity_iii_b.smooth", inputs.as_str(), lhs, rhs, 1e-6, 1e-12)])
        });
    }

    // bound |Δ_s^k f(t)| ≤ C s^k t^{-k+δ}
    rows.check("bound.sqrt", "f=t^0.5 k=1 δ=0.5", |s| {
        let p = difference_bound_probe(f64::sqrt, 1, 0.5, &[0.5, 1.0, 2.0], &[0.1, 0.5])?;
        Ok(vec![ReportRow::at_most(s, "bound.sqrt", "f=t^0.5 k=1 δ=0.5 t∈{0.5,1,2} s/t∈{0.1,0.5}", p.max_ratio, 0.5, 1e-12)])
    });
    rows.check("bound.exponential", "f=e^{-t} k=2 δ=0", |s| {
        let p = difference_bound_probe(|t| (-t).exp(), 2, 0.0, &[0.5, 1.0, 2.0], &[0.1, 0.5])?;
        Ok(vec![ReportRow::at_most(s, "bound.exponential", "f=e^{-t} k=2 δ=0 t∈{0.5,1,2} s/t∈{0.1,0.5}", p.max_ratio, 1.0, 1e-12)])
    });
    rows.check("bound.low_degree", "f=1+2t-t² k=3 δ=0.5", |s| {
        let p = difference_bound_probe(|t| 1.0 + 2.0 * t - t * t, 3, 0.5, &[0.5, 1.0, 2.0], &[0.1, 0.5])?;
        Ok(vec![ReportRow::equal(s, "bound.low_degree", "f=1+2t-t² k=3 δ=0.5", p.max_ratio, 0.0, 0.0, 1e-9)])
    });

    // (P_t - I)^k f(x) = Δ_t^k(u(x,·), 0) with u(x,s) = P_s f(x), spectrally
    let rule = projection_rule(config)?;
    let cos = CatalogEntry::parse("cos:1")?.to_expansion(config.degree_cap.min(40), &rule)?;
    for k in 1..=3usize {
        for t in [0.1, 0.5, 1.0] {
            for x in [-1.0, 0.0, 0.7] {
                let inputs = format!("f=cos:1 k={k} t={t} x={x}");
                rows.check("semigroup_binomial", &inputs, |s| {
                    let u = |si: f64| ph_spectral(&cos, si, 0).eval(&[x]);
                    let lhs = forward_difference(u, &ForwardDifferenceQuery::new(0.0, t, k)?);
                    let rhs = cos
                        .scale_levels(|n| (-(n as f64).sqrt() * t).exp_m1().powi(k as i32))
                        .eval(&[x]);
                    Ok(vec![ReportRow::equal(s, "semigroup_binomial", inputs.as_str(), lhs, rhs, 1e-8, 1e-13)])
                });
            }
        }
    }
    Ok(())
}

// ------------------------------------------------------------ fractional

const FRACTIONAL_TOL: f64 = 1e-5;

fn fractional(rows: &mut Rows, config: &RunConfig) -> Result<()> {
    let levels = [1usize, 2, 4, 9];
    let betas = [0.5, 1.0, 1.5];
    for kind in FractionalKind::ALL {
        for beta in betas {
            for rep in [Representation::Integral, Representation::Spectral] {
                let spec = FractionalSpec::new(kind, beta, rep)?;
                let name = format!("eigenvalue.{}.{}", kind, spec.label());
                for n in levels {
                    let inputs = format!("n={n} beta={beta} k={}", spec.k());
                    rows.check(&name, &inputs, |s| {
                        let oracle = eigenvalue_oracle(kind, beta, n, rep)?;
                        let (value, tol) = match rep {
                            Representation::Integral => (integral_eigenvalue(&spec, n)?.value, FRACTIONAL_TOL),
                            Representation::Spectral => {
                                let e = HermiteExpansion::basis(MultiIndex::new(vec![n as u32]), n)?;
                                (apply(&spec, &e)?.coefficient(&MultiIndex::new(vec![n as u32])), 1e-15)
                            }
                        };
                        Ok(vec![ReportRow::equal(s, &name, inputs.as_str(), value, oracle, tol, 0.0)])
                    });
                }
            }
        }
    }

    // the two Bessel forms at (n, β) = (1, 1)
    rows.check("bessel.mismatch", "n=1 beta=1", |s| {
        let sp = FractionalSpec::new(FractionalKind::BesselPotential, 1.0, Representation::Spectral)?;
        let si = FractionalSpec::new(FractionalKind::BesselPotential, 1.0, Representation::Integral)?;
        let e = HermiteExpansion::basis(MultiIndex::new(vec![1]), 1)?;
        let spectral = apply(&sp, &e)?.coefficient(&MultiIndex::new(vec![1]));
        let subordinated = integral_eigenvalue(&si, 1)?.value;
        let inputs = "bessel_potential n=1 beta=1";
        Ok(vec![
            ReportRow::equal(s, "bessel.spectral", inputs, spectral, 0.5f64.sqrt(), 1e-15, 0.0),
            ReportRow::equal(s, "bessel.subordinated", inputs, subordinated, 0.5, FRACTIONAL_TOL, 0.0),
            ReportRow::equal(s, "bessel.spectral_minus_subordinated", inputs, spectral - subordinated, 0.5f64.sqrt() - 0.5, FRACTIONAL_TOL, 0.0)
                .with_note("the spectral and subordinated Bessel potentials are different operators"),
        ])
    });

    // Riesz forms agree across representations on levels 1..=9
    for kind in [FractionalKind::RieszPotential, FractionalKind::RieszDerivative] {
        for beta in [0.5, 1.5] {
            let name = format!("representation_agreement.{kind}");
            let inputs = format!("beta={beta} n=1..=9");
            rows.check(&name, &inputs, |s| {
                let si = FractionalSpec::new(kind, beta, Representation::Integral)?;
                let mut worst = (0.0, 0.0, 0.0);
                for n in 1..=9 {
                    let a = integral_eigenvalue(&si, n)?.value;
                    let b = eigenvalue_oracle(kind, beta, n, Representation::Spectral)?;
                    if (a - b).abs() / b >= worst.0 {
                        worst = ((a - b).abs() / b, a, b);
                    }
                }
                Ok(vec![ReportRow::equal(s, &name, inputs.as_str(), worst.1, worst.2, FRACTIONAL_TOL, 0.0)
                    .with_note("worst chaos level")])
            });
        }
    }

    // normalising constants
    for (k, beta) in [(1usize, 0.5), (2, 1.5), (3, 2.5)] {
        let inputs = format!("k={k} beta={beta}");
        rows.check("c_beta.analytic", &inputs, |s| {
            Ok(vec![ReportRow::equal(s, "c_beta.analytic", inputs.as_str(), c_beta_constant(beta, k)?, c_beta_analytic(beta, k)?, 1e-7, 0.0)])
        });
    }
    rows.check("c_beta.closed_form", "k=1 beta=0.5", |s| {
        Ok(vec![ReportRow::equal(s, "c_beta.closed_form", "k=1 beta=0.5", c_beta_constant(0.5, 1)?, -2.0 * PI.sqrt(), 1e-7, 0.0)])
    });
    rows.check("c_beta.integer_limit", "k=2 beta=1", |s| {
        Ok(vec![ReportRow::equal(s, "c_beta.integer_limit", "k=2 beta=1", c_beta_constant(1.0, 2)?, 2.0 * 2f64.ln(), 1e-7, 0.0)])
    });

    // algebraic laws on expansions
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(1));
    let cap = 12;
    let random = HermiteExpansion::from_entries(
        2,
        cap,
        MultiIndex::up_to(2, cap).into_iter().map(|nu| (nu, rng.gen_range(-1.0..=1.0))),
    )?;
    let input_label = format!("random d=2 N={cap} seed={}", config.seed);
    rows.check("law.poisson_semigroup", &input_label, |s| {
        let a = ph_spectral(&ph_spectral(&random, 0.3, 0), 0.7, 0);
        let b = ph_spectral(&random, 1.0, 0);
        Ok(vec![ReportRow::equal(s, "law.poisson_semigroup", format!("{input_label} t1=0.3 t2=0.7"), a.max_abs_diff(&b), 0.0, 0.0, 1e-15)])
    });
    rows.check("law.bessel_composition", &input_label, |s| {
        let spec = |b| FractionalSpec::new(FractionalKind::BesselPotential, b, Representation::Spectral);
        let a = apply(&spec(0.4)?, &apply(&spec(0.9)?, &random)?)?;
        let b = apply(&spec(1.3)?, &random)?;
        Ok(vec![ReportRow::equal(s, "law.bessel_composition", format!("{input_label} b1=0.4 b2=0.9"), a.max_abs_diff(&b), 0.0, 0.0, 1e-15)])
    });
    for beta in [0.5, 1.5] {
        rows.check("law.riesz_inverse", &input_label, |s| {
            let pot = FractionalSpec::new(FractionalKind::RieszPotential, beta, Representation::Spectral)?;
            let der = FractionalSpec::new(FractionalKind::RieszDerivative, beta, Representation::Spectral)?;
            let a = apply(&der, &apply(&pot, &random)?)?;
            Ok(vec![ReportRow::equal(s, "law.riesz_inverse", format!("{input_label} beta={beta}"), a.max_abs_diff(&random.remove_mean()), 0.0, 0.0, 1e-14)])
        });
    }

    // k = 2 forward-difference assembly
    for n in [1usize, 2, 4] {
        let inputs = format!("n={n} beta=1.5 k=2");
        rows.check("riesz_derivative.k2_path", &inputs, |s| {
            let spec = FractionalSpec::new(FractionalKind::RieszDerivative, 1.5, Representation::Integral)?;
            let e = HermiteExpansion::basis(MultiIndex::new(vec![n as u32]), n)?;
            let v = apply(&spec, &e)?.coefficient(&MultiIndex::new(vec![n as u32]));
            Ok(vec![ReportRow::equal(s, "riesz_derivative.k2_path", inputs.as_str(), v, (n as f64).powf(0.75), FRACTIONAL_TOL, 0.0)])
        });
    }

    // pointwise integral against spectral on Π₀cos
    let rule = projection_rule(config)?;
    let cos = CatalogEntry::parse("cos:1")?.to_expansion(config.degree_cap, &rule)?.remove_mean();
    rows.check("riesz_potential.pointwise", "f=Π₀cos beta=0.5 x=0.4", |s| {
        let si = FractionalSpec::new(FractionalKind::RieszPotential, 0.5, Representation::Integral)?;
        let ss = FractionalSpec::new(FractionalKind::RieszPotential, 0.5, Representation::Spectral)?;
        let a = apply_at_point(&si, &cos, &[0.4])?;
        let b = apply(&ss, &cos)?.eval(&[0.4]);
        Ok(vec![ReportRow::equal(s, "riesz_potential.pointwise", "f=Π₀cos beta=0.5 x=0.4", a, b, 1e-6, 1e-6)])
    });

    // constants
    for kind in FractionalKind::ALL {
        for rep in [Representation::Spectral, Representation::Integral] {
            if kind == FractionalKind::RieszPotential && rep == Representation::Integral {
                continue;
            }
            let name = format!("constant.{kind}.{rep}");
            rows.check(&name, "f=const:1 beta=0.7", |s| {
                let spec = FractionalSpec::new(kind, 0.7, rep)?;
                let one = HermiteExpansion::constant(1, 4, 1.0);
                let v = apply(&spec, &one)?.coefficient(&MultiIndex::zero(1));
                let want = eigenvalue_oracle(kind, 0.7, 0, rep)?;
                Ok(vec![ReportRow::equal(s, &name, "f=const:1 beta=0.7", v, want, 1e-9, 1e-12)])
            });
        }
    }

    // operator chosen on the command line
    if let Some(kind) = config.kind {
        let reps = match config.representation {
            Some(r) => vec![r],
            None => vec![Representation::Spectral, Representation::Integral],
        };
        for rep in reps {
            let spec = FractionalSpec::new(kind, config.beta, rep)?;
            let name = format!("requested.{kind}.{}", spec.label());
            for n in 0..=9usize {
                if kind == FractionalKind::RieszPotential && rep == Representation::Integral && n == 0 {
                    continue;
                }
                let inputs = format!("n={n} beta={}", config.beta);
                rows.check(&name, &inputs, |s| {
                    let oracle = eigenvalue_oracle(kind, config.beta, n, rep)?;
                    let e = HermiteExpansion::basis(MultiIndex::new(vec![n as u32]), n)?;
                    let v = apply(&spec, &e)?.coefficient(&MultiIndex::new(vec![n as u32]));
                    Ok(vec![ReportRow::equal(s, &name, inputs.as_str(), v, oracle, FRACTIONAL_TOL, 1e-12)])
                });
            }
        }
    }
    Ok(())
}

// ------------------------------------------------------------- lipschitz

/// Known `sup |f|` on `[-R, R]` for the closed-form catalog families.
fn sup_oracle(entry: &CatalogEntry, radius: f64) -> Option<f64> {
    use crate::catalog::CatalogFunction::*;
    match &entry.function {
        Const(c) => Some(c.abs()),
        Cos(_) | GaussBump => Some(1.0),
        ErfStep(w) => Some(statrs::function::erf::erf(radius / w)),
        _ => None,
    }
}

fn lipschitz(rows: &mut Rows, config: &RunConfig) -> Result<()> {
    let rule = projection_rule(config)?;
    let grid = config.x_grid()?;
    let ts = config.t_grid()?;
    let alpha = config.alpha;
    let n = smoothness_order(alpha);
    // a second exponent with the same derivative order
    let alpha2 = alpha + 0.8 * (n as f64 - alpha);
    for name in &config.functions {
        let entry = CatalogEntry::parse(name)?;
        let e = match entry.to_expansion(config.degree_cap, &rule) {
            Ok(e) => e,
            Err(err) => {
                rows.push(ReportRow::errored(rows.suite, "projection", name.as_str(), &err));
                continue;
            }
        };
        let base = format!("f={name} alpha={alpha}");

        rows.check("sup_norm", &base, |s| {
            let direct = sup_norm_estimate(&entry, grid.radius(), grid.count())?;
            let via = sup_norm_estimate(&e, grid.radius(), grid.count())?;
            let mut out = vec![ReportRow::equal(s, "sup_norm.projection", base.as_str(), via.value, direct.value, 1e-4, 1e-6)];
            if let Some(o) = sup_oracle(&entry, grid.radius()) {
                out.push(ReportRow::equal(s, "sup_norm.oracle", base.as_str(), direct.value, o, 1e-6, 1e-12));
            }
            if direct.unbounded_suspect || !entry.bounded {
                out.push(
                    ReportRow::finite(s, "sup_norm.unbounded_suspect", base.as_str(), direct.value)
                        .flagged()
                        .with_note(format!("maximiser at {} on the grid boundary", fmt_point(&direct.argmax))),
                );
            }
            Ok(out)
        });

        rows.check("seminorm", &base, |s| {
            let est = seminorm_estimate(&e, alpha, &ts, grid)?;
            let fine = seminorm_estimate(&e, alpha, &refine_t_grid(&refine_t_grid(&ts)), grid)?;
            let doubled = seminorm_estimate(&e.scaled(2.0), alpha, &ts, grid)?;
            let drift = if est.a_alpha == fine.a_alpha { 0.0 } else { (fine.a_alpha - est.a_alpha).abs() / est.a_alpha.max(fine.a_alpha) };
            let mut out = vec![
                ReportRow::finite(s, "seminorm.finite", base.as_str(), est.a_alpha),
                ReportRow::at_most(s, "seminorm.t_refinement_drift", base.as_str(), drift, 0.10, 0.0),
                ReportRow::equal(s, "seminorm.homogeneity", format!("{base} c=2"), doubled.a_alpha, 2.0 * est.a_alpha, 0.0, 0.0),
            ];
            if est.non_convergence {
                out.push(
                    ReportRow::finite(s, "seminorm.non_convergence", base.as_str(), est.per_t_rows[0].weighted)
                        .flagged()
                        .with_note("weighted derivative still increasing at the smallest t"),
                );
            }
            let est2 = seminorm_estimate(&e, alpha2, &ts, grid)?;
            let min_w = ts.iter().fold(f64::INFINITY, |m, &t| m.min(t.powf(alpha - alpha2)));
            out.push(ReportRow::at_least(s, "seminorm.weighting_relation", format!("{base} alpha2={alpha2}"), est2.a_alpha, est.a_alpha * min_w, 1e-12));
            Ok(out)
        });

        rows.check("derivative_equivalence", &base, |s| {
            let p = derivative_equivalence_probe(&e, alpha, n, n + 1, &ts, grid)?;
            let inputs = format!("{base} k={n} l={}", n + 1);
            Ok(match p.ratio {
                Some(r) => vec![
                    ReportRow::finite(s, "derivative_equivalence.a_k", inputs.as_str(), p.a_k),
                    ReportRow::finite(s, "derivative_equivalence.a_l", inputs.as_str(), p.a_l),
                    ReportRow::at_most(s, "derivative_equivalence.ratio_upper", inputs.as_str(), r, config.comparability_window, 0.0),
                    ReportRow::at_least(s, "derivative_equivalence.ratio_lower", inputs.as_str(), r, 1.0 / config.comparability_window, 0.0),
                ],
                None => vec![ReportRow::equal(s, "derivative_equivalence.both_zero", inputs.as_str(), p.a_k + p.a_l, 0.0, 0.0, 0.0)],
            })
        });

        if alpha.fract() != 0.0 {
            rows.check("modulus", &base, |s| {
                let m = modulus_probe(&e, alpha, &ts, grid)?;
                let rest = m.rows.iter().skip(1).fold(0.0_f64, |a, r| a.max(r.ratio));
                let worst_diff = m.rows.iter().fold(0.0_f64, |a, r| a.max(r.difference_sup));
                let ceiling = 2f64.powi(m.n as i32) * m.sup_norm_f + 1e-8;
                Ok(vec![
                    ReportRow::finite(s, "modulus.max_ratio", base.as_str(), m.max_ratio),
                    ReportRow::at_most(s, "modulus.smallest_t_ratio", base.as_str(), m.rows[0].ratio, 2.0 * rest, 0.0)
                        .with_note("ratio at the smallest t against twice the maximum over the other t"),
                    ReportRow::at_most(s, "modulus.ceiling", base.as_str(), worst_diff, ceiling, 0.0),
                ])
            });
        }

        rows.check("inclusion", &base, |s| {
            let p = inclusion_probe(&e, alpha, alpha2, &ts, grid)?;
            Ok(vec![ReportRow::at_most(
                s,
                "inclusion",
                format!("f={name} alpha1={alpha} alpha2={alpha2}"),
                p.a_alpha1,
                p.a_alpha2.max(p.c_inclusion),
                1e-12,
            )])
        });

        rows.check("spectral_derivative_consistency", &base, |s| {
            let x = vec![0.5; e.dim()];
            let mut out = Vec::new();
            for &t in [ts[ts.len() / 3], ts[2 * ts.len() / 3]].iter() {
                let h = 1e-3 * t;
                let p = |tt: f64, k| ph_spectral(&e, tt, k).eval(&x);
                let fd = match n {
                    1 => (p(t + h, 0) - p(t - h, 0)) / (2.0 * h),
                    _ => (p(t + h, n - 1) - p(t - h, n - 1)) / (2.0 * h),
                };
                out.push(ReportRow::equal(s, "spectral_derivative_consistency", format!("f={name} n={n} t={t:.6} x={}", fmt_point(&x)), p(t, n), fd, 1e-5, 1e-9));
            }
            Ok(out)
        });
    }
    Ok(())
}

// ----------------------------------------------------------- boundedness

fn boundedness(rows: &mut Rows, config: &RunConfig) -> Result<()> {
    let rule = projection_rule(config)?;
    let grid = config.x_grid()?;
    let ts = config.t_grid()?;
    let mut suite_fs = Vec::new();
    for name in &config.functions {
        match CatalogEntry::parse(name)?.to_expansion(config.degree_cap, &rule) {
            Ok(e) => suite_fs.push((name.clone(), e)),
            Err(err) => rows.push(ReportRow::errored(rows.suite, "projection", name.as_str(), &err)),
        }
    }
    let mut ops = vec![
        (FractionalKind::BesselPotential, 0.5, 0.4, Representation::Spectral),
        (FractionalKind::BesselPotential, 0.5, 0.4, Representation::Integral),
        (FractionalKind::RieszPotential, 0.5, 0.4, Representation::Spectral),
        (FractionalKind::RieszDerivative, 0.3, 0.9, Representation::Spectral),
        (FractionalKind::BesselDerivative, 0.3, 0.9, Representation::Spectral),
        (FractionalKind::RieszDerivative, 1.2, 1.5, Representation::Spectral),
    ];
    if let Some(kind) = config.kind {
        ops.push((kind, config.beta, config.alpha, config.representation.unwrap_or(Representation::Spectral)));
    }
    for (kind, beta, alpha, rep) in ops {
        let label = format!("{kind}.{} beta={beta} alpha={alpha}", crate::fractional::representation_label(kind, rep));
        rows.check("boundedness", &label, |s| {
            let spec = FractionalSpec::new(kind, beta, rep)?;
            let probe = operator_boundedness_probe(&spec, &suite_fs, alpha, &ts, grid)?;
            let mut out = Vec::new();
            for r in &probe.rows {
                let inputs = format!("{label} target_alpha={} f={}", probe.target_alpha, r.name);
                out.push(ReportRow::finite(s, "boundedness.ratio", inputs.as_str(), r.ratio));
                out.push(ReportRow::at_most(s, "boundedness.refinement_drift", inputs.as_str(), r.drift, config.max_refinement_drift, 0.0));
            }
            Ok(out)
        });
    }
    Ok(())
}
