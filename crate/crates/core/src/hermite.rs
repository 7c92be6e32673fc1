//! Normalized multi-index Hermite polynomials and truncated Fourier-Hermite
//! expansions.
//!
//! `h_ν(x) = Π_i H_{ν_i}(x_i) / (2^{|ν|} ν!)^{1/2}` is orthonormal in
//! `L²(γ)`. Values are produced by the normalized three-term recurrence
//!
//! ```text
//! h_0 = 1,  h_1 = √2 x,  h_{n+1} = √(2/(n+1)) x h_n − √(n/(n+1)) h_{n−1}
//! ```
//!
//! which is the physicists' recurrence with the factorial scaling folded in,
//! so nothing overflows for degrees in the low hundreds.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::quadrature::{QuadratureRule, TensorGrid};

pub const DEFAULT_DEGREE_CAP_1D: usize = 40;
pub const DEFAULT_DEGREE_CAP_2D: usize = 20;

/// A multi-index `ν = (ν_1, …, ν_d)`.
///
/// Ordered graded-lexicographically: by total degree, then by the entries
/// with the first coordinate most significant and larger powers first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|ν|`
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&v| v as usize).sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `ν! = Π ν_i!` as a float.
    pub fn factorial(&self) -> f64 {
        self.0
            .iter()
            .map(|&n| (1..=n).map(f64::from).product::<f64>())
            .product()
    }

    /// All multi-indices of dimension `dim` and total degree `n`, in order.
    pub fn of_degree(dim: usize, n: usize) -> Vec<MultiIndex> {
        fn rec(dim: usize, left: usize, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if dim == 1 {
                prefix.push(left as u32);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for first in (0..=left).rev() {
                prefix.push(first as u32);
                rec(dim - 1, left - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if dim == 0 {
            return out;
        }
        rec(dim, n, &mut Vec::with_capacity(dim), &mut out);
        out
    }

    /// All multi-indices with `|ν| ≤ cap`, in graded-lex order.
    pub fn up_to(dim: usize, cap: usize) -> Vec<MultiIndex> {
        (0..=cap).flat_map(|n| Self::of_degree(dim, n)).collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

/// `[h_0(x), …, h_n(x)]` for the one-dimensional normalized polynomials.
pub fn hermite_table(x: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    out.push(std::f64::consts::SQRT_2 * x);
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// `h_ν(x)`; `x` must have the same length as `ν`.
pub fn hermite_eval(nu: &MultiIndex, x: &[f64]) -> f64 {
    debug_assert_eq!(nu.dim(), x.len());
    nu.entries()
        .iter()
        .zip(x)
        .map(|(&n, &xi)| hermite_table(xi, n as usize)[n as usize])
        .product()
}

/// A single `h_ν` as a [`ScalarField`].
#[derive(Clone, Debug)]
pub struct HermitePolynomial(pub MultiIndex);

impl ScalarField for HermitePolynomial {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        hermite_eval(&self.0, x)
    }
}

/// Truncated Fourier-Hermite coefficient table `{f̂(ν) : |ν| ≤ N}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteExpansion {
    dim: usize,
    degree_cap: usize,
    coefficients: BTreeMap<MultiIndex, f64>,
}

impl HermiteExpansion {
    pub fn zero(dim: usize, degree_cap: usize) -> Self {
        HermiteExpansion {
            dim,
            degree_cap,
            coefficients: BTreeMap::new(),
        }
    }

    /// Builds an expansion from `(ν, f̂(ν))` pairs, rejecting indices of the
    /// wrong length or above the cap.
    pub fn from_entries(
        dim: usize,
        degree_cap: usize,
        entries: impl IntoIterator<Item = (MultiIndex, f64)>,
    ) -> Result<Self> {
        let mut e = Self::zero(dim, degree_cap);
        for (nu, c) in entries {
            e.set(nu, c)?;
        }
        Ok(e)
    }

    /// The expansion of a single `h_ν` (coefficient one).
    pub fn basis(nu: MultiIndex, degree_cap: usize) -> Result<Self> {
        let dim = nu.dim();
        Self::from_entries(dim, degree_cap, [(nu, 1.0)])
    }

    pub fn constant(dim: usize, degree_cap: usize, c: f64) -> Self {
        let mut e = Self::zero(dim, degree_cap);
        if c != 0.0 {
            e.coefficients.insert(MultiIndex::zero(dim), c);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn set(&mut self, nu: MultiIndex, c: f64) -> Result<()> {
        if nu.dim() != self.dim {
            return Err(Error::invalid(format!(
                "multi-index {nu} has length {}, expansion dimension is {}",
                nu.dim(),
                self.dim
            )));
        }
        if nu.degree() > self.degree_cap {
            return Err(Error::invalid(format!(
                "multi-index {nu} exceeds degree cap {}",
                self.degree_cap
            )));
        }
        self.coefficients.insert(nu, c);
        Ok(())
    }

    /// `f̂(ν)`, zero when not stored.
    pub fn coefficient(&self, nu: &MultiIndex) -> f64 {
        self.coefficients.get(nu).copied().unwrap_or(0.0)
    }

    /// Stored coefficients in graded-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, f64)> + '_ {
        self.coefficients.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Largest stored chaos level with a nonzero coefficient.
    pub fn max_level(&self) -> usize {
        self.iter()
            .filter(|(_, c)| *c != 0.0)
            .map(|(nu, _)| nu.degree())
            .max()
            .unwrap_or(0)
    }

    /// Partial sum `Σ_{|ν|≤N} f̂(ν) h_ν(x)`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.level_values(x).iter().sum()
    }

    /// `[J_0 f(x), …, J_N f(x)]`.
    pub fn level_values(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.dim);
        let tables: Vec<Vec<f64>> = x
            .iter()
            .map(|&xi| hermite_table(xi, self.degree_cap))
            .collect();
        let mut levels = vec![0.0; self.degree_cap + 1];
        for (nu, c) in self.iter() {
            let h: f64 = nu
                .entries()
                .iter()
                .zip(&tables)
                .map(|(&n, t)| t[n as usize])
                .product();
            levels[nu.degree()] += c * h;
        }
        levels
    }

    /// `J_n`: keeps exactly the coefficients with `|ν| = n`.
    pub fn chaos_project(&self, n: usize) -> Result<Self> {
        if n > self.degree_cap {
            return Err(Error::invalid(format!(
                "chaos level {n} above degree cap {}",
                self.degree_cap
            )));
        }
        Ok(HermiteExpansion {
            dim: self.dim,
            degree_cap: self.degree_cap,
            coefficients: self
                .coefficients
                .iter()
                .filter(|(nu, _)| nu.degree() == n)
                .map(|(nu, &c)| (nu.clone(), c))
                .collect(),
        })
    }

    /// `Π_0 f = f − ∫ f dγ`: zeroes the constant coefficient.
    pub fn remove_mean(&self) -> Self {
        let mut out = self.clone();
        out.coefficients.remove(&MultiIndex::zero(self.dim));
        out
    }

    /// Multiplies every chaos level `n` by `factor(n)`.
    pub fn scale_levels(&self, mut factor: impl FnMut(usize) -> f64) -> Self {
        let mut cache: Vec<Option<f64>> = vec![None; self.degree_cap + 1];
        let coefficients = self
            .coefficients
            .iter()
            .map(|(nu, &c)| {
                let n = nu.degree();
                let s = *cache[n].get_or_insert_with(|| factor(n));
                (nu.clone(), c * s)
            })
            .collect();
        HermiteExpansion {
            dim: self.dim,
            degree_cap: self.degree_cap,
            coefficients,
        }
    }

    /// Same as [`scale_levels`](Self::scale_levels) with a fallible factor.
    pub fn try_scale_levels(&self, mut factor: impl FnMut(usize) -> Result<f64>) -> Result<Self> {
        let mut table = vec![0.0; self.degree_cap + 1];
        let mut present = vec![false; self.degree_cap + 1];
        for nu in self.coefficients.keys() {
            present[nu.degree()] = true;
        }
        for (n, p) in present.iter().enumerate() {
            if *p {
                table[n] = factor(n)?;
            }
        }
        Ok(self.scale_levels(|n| table[n]))
    }

    pub fn scaled(&self, c: f64) -> Self {
        self.scale_levels(|_| c)
    }

    /// Coefficientwise sum; dimensions must match, the cap is the larger one.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::invalid("dimension mismatch in expansion sum"));
        }
        let mut out = self.clone();
        out.degree_cap = self.degree_cap.max(other.degree_cap);
        for (nu, c) in other.iter() {
            *out.coefficients.entry(nu.clone()).or_insert(0.0) += c;
        }
        Ok(out)
    }

    /// Largest coefficientwise difference (missing entries count as zero).
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut keys: Vec<&MultiIndex> = self.coefficients.keys().collect();
        keys.extend(other.coefficients.keys());
        keys.into_iter()
            .map(|nu| (self.coefficient(nu) - other.coefficient(nu)).abs())
            .fold(0.0, f64::max)
    }

    /// `Σ f̂(ν)²`
    pub fn l2_norm_squared(&self) -> f64 {
        self.iter().map(|(_, c)| c * c).sum()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&ExpansionFile::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: ExpansionFile = serde_json::from_str(s)?;
        file.try_into()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&s)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

impl ScalarField for HermiteExpansion {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.eval(x)
    }
}

/// Computes `f̂(ν) = ∫ f h_ν dγ` for every `|ν| ≤ degree_cap` on the tensor
/// Gauss-Hermite grid of `rule`.
pub fn project(
    f: &dyn ScalarField,
    degree_cap: usize,
    rule: &QuadratureRule,
) -> Result<HermiteExpansion> {
    let dim = f.dim();
    let grid = TensorGrid::new(rule, dim)?;
    let indices = MultiIndex::up_to(dim, degree_cap);
    let mut sums = vec![0.0; indices.len()];
    for (p, w) in grid.iter() {
        let v = f.value(p);
        if !v.is_finite() {
            return Err(Error::Evaluation {
                point: p.to_vec(),
                value: v,
            });
        }
        let tables: Vec<Vec<f64>> = p.iter().map(|&xi| hermite_table(xi, degree_cap)).collect();
        let wv = w * v;
        for (s, nu) in sums.iter_mut().zip(&indices) {
            let h: f64 = nu
                .entries()
                .iter()
                .zip(&tables)
                .map(|(&n, t)| t[n as usize])
                .product();
            *s += wv * h;
        }
    }
    HermiteExpansion::from_entries(dim, degree_cap, indices.into_iter().zip(sums))
}

/// On-disk expansion format: `{d, N, entries: [{nu: [...], c: float}]}`.
#[derive(Serialize, Deserialize)]
struct ExpansionFile {
    d: usize,
    #[serde(rename = "N")]
    n: usize,
    entries: Vec<ExpansionEntry>,
}

#[derive(Serialize, Deserialize)]
struct ExpansionEntry {
    nu: Vec<u32>,
    c: f64,
}

impl From<&HermiteExpansion> for ExpansionFile {
    fn from(e: &HermiteExpansion) -> Self {
        ExpansionFile {
            d: e.dim,
            n: e.degree_cap,
            entries: e
                .iter()
                .map(|(nu, c)| ExpansionEntry {
                    nu: nu.entries().to_vec(),
                    c,
                })
                .collect(),
        }
    }
}

impl TryFrom<ExpansionFile> for HermiteExpansion {
    type Error = Error;

    fn try_from(f: ExpansionFile) -> Result<Self> {
        HermiteExpansion::from_entries(
            f.d,
            f.n,
            f.entries
                .into_iter()
                .map(|e| (MultiIndex::new(e.nu), e.c)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FnField;
    use crate::quadrature::gauss_hermite_rule;
    use approx::assert_relative_eq;

    /// Physicists' Hermite polynomials straight from the unnormalized
    /// recurrence, used as an independent reference.
    fn physicists(n: usize, x: f64) -> f64 {
        let (mut a, mut b) = (1.0, 2.0 * x);
        if n == 0 {
            return a;
        }
        for k in 1..n {
            let c = 2.0 * x * b - 2.0 * k as f64 * a;
            a = b;
            b = c;
        }
        b
    }

    fn normalized_reference(n: usize, x: f64) -> f64 {
        let fact: f64 = (1..=n).map(|k| k as f64).product();
        physicists(n, x) / (2f64.powi(n as i32) * fact).sqrt()
    }

    #[test]
    fn small_degree_values() {
        assert_eq!(hermite_eval(&MultiIndex::new(vec![0]), &[3.7]), 1.0);
        assert_eq!(hermite_eval(&MultiIndex::new(vec![1]), &[0.0]), 0.0);
        assert_relative_eq!(
            hermite_eval(&MultiIndex::new(vec![2]), &[1.0]),
            2.0 / 8f64.sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            hermite_eval(&MultiIndex::new(vec![3]), &[1.0]),
            -4.0 / 48f64.sqrt(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn recurrence_matches_unnormalized_reference() {
        for n in 0..25 {
            for &x in &[-2.3, -0.4, 0.0, 0.9, 3.1] {
                let got = hermite_table(x, n)[n];
                let want = normalized_reference(n, x);
                assert!((got - want).abs() <= 1e-11 * want.abs().max(1.0), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn grlex_order() {
        let idx = MultiIndex::up_to(2, 2);
        let want: Vec<Vec<u32>> = vec![
            vec![0, 0],
            vec![1, 0],
            vec![0, 1],
            vec![2, 0],
            vec![1, 1],
            vec![0, 2],
        ];
        assert_eq!(idx.iter().map(|m| m.entries().to_vec()).collect::<Vec<_>>(), want);
        let mut sorted = idx.clone();
        sorted.sort();
        assert_eq!(sorted, idx);
        assert_eq!(MultiIndex::up_to(3, 4).len(), 35);
    }

    #[test]
    fn project_basis_polynomial() {
        let rule = gauss_hermite_rule(64).unwrap();
        let f = HermitePolynomial(MultiIndex::new(vec![2]));
        let e = project(&f, 4, &rule).unwrap();
        for (nu, c) in e.iter() {
            let want = if nu.entries() == [2] { 1.0 } else { 0.0 };
            assert!((c - want).abs() <= 1e-10, "{nu}: {c}");
        }
    }

    #[test]
    fn project_constant() {
        let rule = gauss_hermite_rule(32).unwrap();
        let e = project(&FnField::new(1, |_| 1.0), 6, &rule).unwrap();
        assert_relative_eq!(e.coefficient(&MultiIndex::zero(1)), 1.0, max_relative = 1e-13);
        assert!(e.remove_mean().iter().all(|(_, c)| c.abs() < 1e-12));
    }

    #[test]
    fn project_cosine_generating_function() {
        let rule = gauss_hermite_rule(64).unwrap();
        let e = project(&FnField::new(1, |x| x[0].cos()), 12, &rule).unwrap();
        for (nu, c) in e.iter() {
            if nu.degree() % 2 == 1 {
                assert!(c.abs() < 1e-13);
            }
        }
        let c2 = e.coefficient(&MultiIndex::new(vec![2]));
        assert!((c2 + (-0.25f64).exp() / (2.0 * 2f64.sqrt())).abs() <= 1e-8);
    }

    #[test]
    fn eval_round_trip_and_trivia() {
        let e = HermiteExpansion::basis(MultiIndex::new(vec![3]), 5).unwrap();
        assert_relative_eq!(
            e.eval(&[0.7]),
            hermite_eval(&MultiIndex::new(vec![3]), &[0.7]),
            epsilon = 1e-10
        );
        assert_eq!(HermiteExpansion::zero(1, 4).eval(&[1.3]), 0.0);
        let two = HermiteExpansion::constant(1, 4, 2.0);
        for x in [-3.0, 0.0, 5.0] {
            assert_eq!(two.eval(&[x]), 2.0);
        }
    }

    #[test]
    fn chaos_projection() {
        let e = HermiteExpansion::from_entries(
            1,
            4,
            (0..=4).map(|n| (MultiIndex::new(vec![n]), 1.0 + n as f64)),
        )
        .unwrap();
        let j0 = e.chaos_project(0).unwrap();
        assert_eq!(j0, HermiteExpansion::constant(1, 4, 1.0));
        let h2 = HermiteExpansion::basis(MultiIndex::new(vec![2]), 4).unwrap();
        assert_eq!(h2.chaos_project(2).unwrap(), h2);
        let mut total = HermiteExpansion::zero(1, 4);
        for n in 0..=4 {
            total = total.add(&e.chaos_project(n).unwrap()).unwrap();
        }
        assert_eq!(total.max_abs_diff(&e), 0.0);
        assert!(matches!(e.chaos_project(5), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn mean_removal() {
        let e = HermiteExpansion::from_entries(
            1,
            3,
            [(MultiIndex::new(vec![0]), 3.0), (MultiIndex::new(vec![2]), -1.5)],
        )
        .unwrap();
        let m = e.remove_mean();
        assert_eq!(m.coefficient(&MultiIndex::zero(1)), 0.0);
        assert_eq!(m.coefficient(&MultiIndex::new(vec![2])), -1.5);
        assert_eq!(m.remove_mean(), m);
        let h = HermiteExpansion::basis(MultiIndex::new(vec![1, 2]), 3).unwrap();
        assert_eq!(h.remove_mean(), h);
    }

    #[test]
    fn rejects_bad_indices() {
        let mut e = HermiteExpansion::zero(2, 3);
        assert!(e.set(MultiIndex::new(vec![1]), 1.0).is_err());
        assert!(e.set(MultiIndex::new(vec![2, 2]), 1.0).is_err());
    }

    #[test]
    fn json_format() {
        let e = HermiteExpansion::from_entries(
            2,
            2,
            [(MultiIndex::new(vec![0, 1]), 0.1), (MultiIndex::new(vec![1, 0]), -2.5)],
        )
        .unwrap();
        let s = e.to_json().unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["d"], 2);
        assert_eq!(v["N"], 2);
        // graded-lex: (1,0) precedes (0,1)
        assert_eq!(v["entries"][0]["nu"], serde_json::json!([1, 0]));
        assert_eq!(HermiteExpansion::from_json(&s).unwrap(), e);
    }
}
