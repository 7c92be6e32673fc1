//! k-th order forward differences
//! `Δ_s^k(f,t) = Σ_{j=0}^k C(k,j) (-1)^j f(t + (k-j)s)` and the identities
//! that connect them to derivatives and to powers of `P_t - I`.

use crate::error::{Error, Result};
use crate::quadrature::{integrate_interval_with, AdaptiveConfig};

/// Largest order whose binomial row fits exactly in `u64`.
pub const MAX_ORDER: usize = 64;
pub const MAX_NESTED_ORDER: usize = 4;
/// `|Δ| < CANCELLATION_RATIO · max|term|` marks a cancellative evaluation.
pub const CANCELLATION_RATIO: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ForwardDifferenceQuery {
    t: f64,
    s: f64,
    k: usize,
}

impl ForwardDifferenceQuery {
    pub fn new(t: f64, s: f64, k: usize) -> Result<Self> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::invalid(format!("base point must be ≥ 0, got {t}")));
        }
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::invalid(format!("increment must be > 0, got {s}")));
        }
        if k == 0 || k > MAX_ORDER {
            return Err(Error::invalid(format!("order {k} outside 1..={MAX_ORDER}")));
        }
        Ok(ForwardDifferenceQuery { t, s, k })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// `[C(k,0), …, C(k,k)]` by Pascal's rule in exact integers.
pub fn binomial_row(k: usize) -> Vec<u64> {
    assert!(k <= MAX_ORDER, "binomial row {k} overflows u64");
    let mut row = vec![1u64];
    for _ in 0..k {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(1);
        next.extend(row.windows(2).map(|w| w[0] + w[1]));
        next.push(1);
        row = next;
    }
    row
}

/// Value of a difference with its cancellation diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DifferenceValue {
    pub value: f64,
    pub max_term: f64,
    pub cancelled: bool,
}

fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Terms `C(k,j)(-1)^j f(t + (k-j)s)` in order `j = 0..k`.
fn terms(f: &mut dyn FnMut(f64) -> f64, q: &ForwardDifferenceQuery) -> Vec<f64> {
    binomial_row(q.k)
        .into_iter()
        .enumerate()
        .map(|(j, c)| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * c as f64 * f(q.t + (q.k - j) as f64 * q.s)
        })
        .collect()
}

pub fn forward_difference(mut f: impl FnMut(f64) -> f64, q: &ForwardDifferenceQuery) -> f64 {
    pairwise_sum(&terms(&mut f, q))
}

pub fn forward_difference_detailed(
    mut f: impl FnMut(f64) -> f64,
    q: &ForwardDifferenceQuery,
) -> DifferenceValue {
    let ts = terms(&mut f, q);
    let value = pairwise_sum(&ts);
    let max_term = ts.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    DifferenceValue {
        value,
        max_term,
        cancelled: max_term > 0.0 && value.abs() < CANCELLATION_RATIO * max_term,
    }
}

/// `∫_t^{t+s} ∫_{v_1}^{v_1+s} ⋯ ∫_{v_{k-1}}^{v_{k-1}+s} f^{(k)}(v_k) dv_k ⋯ dv_1`,
/// which equals `Δ_s^k(f,t)`.
pub fn nested_integral_form(
    mut f_deriv_k: impl FnMut(f64) -> f64,
    q: &ForwardDifferenceQuery,
    tol: f64,
) -> Result<f64> {
    if q.k > MAX_NESTED_ORDER {
        return Err(Error::invalid(format!(
            "nested form limited to k ≤ {MAX_NESTED_ORDER}"
        )));
    }
    let cfg = AdaptiveConfig {
        max_subdivisions: 100,
        ..AdaptiveConfig::with_tol(tol)
    };
    nested_level(&mut f_deriv_k, q.k, q.t, q.s, &cfg)
}

fn nested_level(
    f: &mut dyn FnMut(f64) -> f64,
    remaining: usize,
    lo: f64,
    s: f64,
    cfg: &AdaptiveConfig,
) -> Result<f64> {
    if remaining == 1 {
        return integrate_interval_with(|v| f(v), lo, lo + s, 1, cfg).map(|e| e.value);
    }
    let mut failure = None;
    let est = integrate_interval_with(
        |v| {
            if failure.is_some() {
                return 0.0;
            }
            match nested_level(f, remaining - 1, v, s, cfg) {
                Ok(x) => x,
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        lo,
        lo + s,
        1,
        cfg,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(est?.value)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundRow {
    pub t: f64,
    pub s: f64,
    pub difference: f64,
    /// `s^k t^{-k+δ}`
    pub scale: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundProbe {
    pub k: usize,
    pub delta: f64,
    pub rows: Vec<BoundRow>,
    pub max_ratio: f64,
}

/// Ratios `|Δ_s^k(f,t)| / (s^k t^{-k+δ})` over `t ∈ t_grid` and
/// `s = c·t` for `c ∈ s_over_t`.
pub fn difference_bound_probe(
    mut f: impl FnMut(f64) -> f64,
    k: usize,
    delta: f64,
    t_grid: &[f64],
    s_over_t: &[f64],
) -> Result<BoundProbe> {
    if !(delta < k as f64) {
        return Err(Error::invalid(format!("need δ < k, got δ={delta}, k={k}")));
    }
    let mut rows = Vec::with_capacity(t_grid.len() * s_over_t.len());
    for &t in t_grid {
        if !(t > 0.0) {
            return Err(Error::invalid("t grid must be positive"));
        }
        for &c in s_over_t {
            let s = c * t;
            let q = ForwardDifferenceQuery::new(t, s, k)?;
            let difference = forward_difference(&mut f, &q);
            let scale = s.powi(k as i32) * t.powf(-(k as f64) + delta);
            rows.push(BoundRow {
                t,
                s,
                difference,
                scale,
                ratio: difference.abs() / scale,
            });
        }
    }
    let max_ratio = rows.iter().fold(0.0_f64, |m, r| m.max(r.ratio));
    Ok(BoundProbe {
        k,
        delta,
        rows,
        max_ratio,
    })
}

/// Dense polynomial with ascending coefficients; used as an exact
/// reference for the difference identities.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::new(vec![0.0]);
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| i as f64 * c)
                .collect(),
        )
    }

    pub fn nth_derivative(&self, j: usize) -> Polynomial {
        (0..j).fold(self.clone(), |p, _| p.derivative())
    }

    /// Coefficients of `t ↦ p(t + c)` (repeated synthetic division).
    pub fn shifted(&self, c: f64) -> Polynomial {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                a[j] += c * a[j + 1];
            }
        }
        Polynomial::new(a)
    }

    /// The polynomial `t ↦ Δ_s^k(p, t)` assembled symbolically.
    pub fn forward_difference(&self, s: f64, k: usize) -> Polynomial {
        let mut out = vec![0.0; self.coeffs.len().max(1)];
        for (j, c) in binomial_row(k).into_iter().enumerate() {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let shifted = self.shifted((k - j) as f64 * s);
            for (o, v) in out.iter_mut().zip(shifted.coeffs) {
                *o += sign * c as f64 * v;
            }
        }
        Polynomial::new(out)
    }
}
