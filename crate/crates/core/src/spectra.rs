//! Exact and floating spectra, the closed-form Hadamard eigenvalues, and the
//! Hoffman lower bound on the quantum chromatic number.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{ensure_size, Error, Result};
use crate::graph::{require_multiple_of_four, CayleyGraphSpec, Component, DenseGraph};
use crate::strategy::{verify_strategy, Sampling, StrategyReport, DEFAULT_TOLERANCE};
use crate::transform::walsh_hadamard;

/// Largest group dimension handled by the character transform.
pub const MAX_TRANSFORM_DIM: usize = 24;
/// Largest matrix handed to the dense eigensolver.
pub const MAX_DENSE_SPECTRUM_SIZE: usize = 4096;
/// Default clustering tolerance for [`dense_spectrum`], relative to the
/// matrix 1-norm.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Exact spectrum: eigenvalue -> multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExactSpectrum {
    entries: BTreeMap<BigInt, BigUint>,
}

impl ExactSpectrum {
    /// Collects `(value, multiplicity)` pairs, merging repeated values and
    /// dropping zero multiplicities.
    pub fn from_pairs<V, M>(pairs: impl IntoIterator<Item = (V, M)>) -> Self
    where
        V: Into<BigInt>,
        M: Into<BigUint>,
    {
        let mut s = Self::default();
        for (v, m) in pairs {
            s.add(v.into(), m.into());
        }
        s
    }

    pub(crate) fn add(&mut self, value: BigInt, mult: BigUint) {
        if mult.is_zero() {
            return;
        }
        *self.entries.entry(value).or_default() += mult;
    }

    /// Entries in descending eigenvalue order.
    pub fn iter(&self) -> impl Iterator<Item = (&BigInt, &BigUint)> {
        self.entries.iter().rev()
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn multiplicity(&self, value: &BigInt) -> BigUint {
        self.entries.get(value).cloned().unwrap_or_default()
    }

    /// Number of eigenvalues counted with multiplicity.
    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Sum of eigenvalues with multiplicity; zero for irreflexive graphs.
    pub fn trace(&self) -> BigInt {
        self.entries
            .iter()
            .map(|(v, m)| v * BigInt::from(m.clone()))
            .sum()
    }

    /// Sum of squared eigenvalues with multiplicity; twice the edge count.
    pub fn second_moment(&self) -> BigInt {
        self.entries
            .iter()
            .map(|(v, m)| v * v * BigInt::from(m.clone()))
            .sum()
    }

    pub fn max(&self) -> Option<&BigInt> {
        self.entries.keys().next_back()
    }

    pub fn min(&self) -> Option<&BigInt> {
        self.entries.keys().next()
    }

    /// All eigenvalues zero (or no eigenvalues): the graph has no edges.
    pub fn is_trivial(&self) -> bool {
        self.entries.keys().all(|v| v.is_zero())
    }

    /// Removes `count` copies of `value`; fails if fewer are present.
    pub fn remove(&mut self, value: &BigInt, count: &BigUint) -> Result<()> {
        let have = self.multiplicity(value);
        if &have < count {
            return Err(Error::Parameter(format!(
                "spectrum holds {have} copies of {value}, cannot remove {count}"
            )));
        }
        let left = have - count;
        if left.is_zero() {
            self.entries.remove(value);
        } else {
            self.entries.insert(value.clone(), left);
        }
        Ok(())
    }

    /// `{"entries": [{"value": "...", "mult": m}, ...], "source": "..."}`.
    pub fn to_json(&self, source: &str) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .iter()
            .map(|(v, m)| {
                serde_json::json!({
                    "value": v.to_string(),
                    "mult": biguint_json(m),
                })
            })
            .collect();
        let mut map = serde_json::Map::new();
        map.insert("entries".into(), entries.into());
        map.insert("source".into(), source.into());
        serde_json::Value::Object(map)
    }
}

pub(crate) fn biguint_json(m: &BigUint) -> serde_json::Value {
    match m.to_u64() {
        Some(x) => x.into(),
        None => m.to_string().into(),
    }
}

/// Floating spectrum from the dense eigensolver, descending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FloatSpectrum {
    pub entries: Vec<(f64, usize)>,
}

impl FloatSpectrum {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn max(&self) -> Option<f64> {
        self.entries.first().map(|e| e.0)
    }

    pub fn min(&self) -> Option<f64> {
        self.entries.last().map(|e| e.0)
    }

    /// Largest `|float - exact|` over paired eigenvalues when the two spectra
    /// have identical distinct-value counts and multiplicities; `None` if the
    /// multiplicity structure differs.
    pub fn deviation_from(&self, exact: &ExactSpectrum) -> Option<f64> {
        if self.entries.len() != exact.distinct() {
            return None;
        }
        let mut worst = 0.0f64;
        for ((fv, fm), (ev, em)) in self.entries.iter().zip(exact.iter()) {
            if BigUint::from(*fm) != *em {
                return None;
            }
            let ev = ev.to_f64()?;
            worst = worst.max((fv - ev).abs());
        }
        Some(worst)
    }

    /// Same multiset as `exact`, every value within `tol`.
    pub fn matches(&self, exact: &ExactSpectrum, tol: f64) -> bool {
        self.deviation_from(exact).is_some_and(|d| d <= tol)
    }

    pub fn to_json(&self, source: &str) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|&(v, m)| serde_json::json!({ "value": round_sig(v), "mult": m }))
            .collect();
        let mut map = serde_json::Map::new();
        map.insert("entries".into(), entries.into());
        map.insert("source".into(), source.into());
        serde_json::Value::Object(map)
    }
}

/// Rounds to 12 significant digits; `-0.0` becomes `0.0`.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Eigenvalue of every character, indexed by mask in the spec's
/// `group_dim`-bit coordinates: `lambda(S) = sum_{c in C} chi_S(c)`.
pub fn character_eigenvalues(spec: &CayleyGraphSpec) -> Result<Vec<i64>> {
    let k = spec.group_dim();
    ensure_size("group dimension for character transform", k, MAX_TRANSFORM_DIM)?;
    let mut data = vec![0i64; 1usize << k];
    for c in spec.coordinate_connection() {
        data[c as usize] = 1;
    }
    walsh_hadamard(&mut data);
    Ok(data)
}

/// Exact Cayley graph spectrum from the character transform.
pub fn spectrum_by_characters(spec: &CayleyGraphSpec) -> Result<ExactSpectrum> {
    let values = character_eigenvalues(spec)?;
    let mut counts: HashMap<i64, u64> = HashMap::new();
    for v in values {
        *counts.entry(v).or_default() += 1;
    }
    Ok(ExactSpectrum::from_pairs(counts))
}

/// Eigenvalue of `H_N` for a character of weight `r`:
/// `0` for odd `r`, otherwise
/// `(-1)^{r/2} r! (N-r)! / ((N/2)! (r/2)! ((N-r)/2)!)`.
pub fn lambda_closed_form(n: usize, r: usize) -> Result<BigInt> {
    require_multiple_of_four(n)?;
    if r > n {
        return Err(Error::Parameter(format!(
            "character weight {r} exceeds Hadamard order {n}"
        )));
    }
    if r % 2 == 1 {
        return Ok(BigInt::zero());
    }
    let (n, r) = (n as u64, r as u64);
    let num = factorial(r) * factorial(n - r);
    let den = factorial(n / 2) * factorial(r / 2) * factorial((n - r) / 2);
    let (q, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    let q = BigInt::from(q);
    Ok(if (r / 2) % 2 == 1 { -q } else { q })
}

/// Spectrum of `H_N` from the closed form. Characters of weight `r` occur
/// `binom(N-1, r)` times on the even component (`r < N`) and `binom(N, r)`
/// times on the full graph.
pub fn hadamard_spectrum_closed_form(n: usize, component: Component) -> Result<ExactSpectrum> {
    require_multiple_of_four(n)?;
    let mut s = ExactSpectrum::default();
    for r in 0..=n {
        let mult = match component {
            Component::Even => binomial(n as u64 - 1, r as u64),
            Component::Full => binomial(n as u64, r as u64),
        };
        s.add(lambda_closed_form(n, r)?, mult);
    }
    Ok(s)
}

/// `(binom(N, N/2), -binom(N, N/2)/(N-1))`.
pub fn hadamard_extremes(n: usize) -> Result<(BigInt, BigInt)> {
    require_multiple_of_four(n)?;
    let top = BigInt::from(binomial(n as u64, n as u64 / 2));
    let (q, rem) = top.div_rem(&BigInt::from(n - 1));
    if !rem.is_zero() {
        return Err(Error::Invariant(format!(
            "binom({n}, {}) not divisible by {}",
            n / 2,
            n - 1
        )));
    }
    Ok((top, -q))
}

/// Hoffman bound `1 + lambda_max / |lambda_min|` and its integer ceiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoffmanReport {
    pub lambda_max: BigInt,
    pub lambda_min: BigInt,
    pub ratio_bound: BigRational,
    pub integer_bound: BigInt,
}

impl HoffmanReport {
    pub fn from_extremes(lambda_max: BigInt, lambda_min: BigInt) -> Result<Self> {
        if !lambda_min.is_negative() || !lambda_max.is_positive() {
            return Err(Error::UndefinedBound(format!(
                "need lambda_max > 0 > lambda_min, got {lambda_max} and {lambda_min}"
            )));
        }
        let ratio_bound = BigRational::one()
            + BigRational::new(lambda_max.clone(), lambda_min.abs());
        let integer_bound = ratio_bound.ceil().to_integer();
        Ok(Self {
            lambda_max,
            lambda_min,
            ratio_bound,
            integer_bound,
        })
    }

    pub fn ratio_f64(&self) -> f64 {
        self.ratio_bound.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("lambda_max".into(), self.lambda_max.to_string().into());
        map.insert("lambda_min".into(), self.lambda_min.to_string().into());
        map.insert("ratio".into(), self.ratio_bound.to_string().into());
        map.insert("ratio_decimal".into(), round_sig(self.ratio_f64()).into());
        map.insert("integer_bound".into(), self.integer_bound.to_string().into());
        serde_json::Value::Object(map)
    }
}

pub fn hoffman_bound(s: &ExactSpectrum) -> Result<HoffmanReport> {
    if s.is_trivial() {
        return Err(Error::UndefinedBound(
            "spectrum is all zero (edgeless graph)".into(),
        ));
    }
    let (max, min) = (s.max().unwrap().clone(), s.min().unwrap().clone());
    HoffmanReport::from_extremes(max, min)
}

/// Eigenvalues of a symmetric matrix, clustered into multiplicities.
/// Consecutive sorted eigenvalues closer than `tol * max(1, ||A||_1)` are
/// merged; each cluster reports its mean.
pub fn dense_spectrum_of_matrix(m: &nalgebra::DMatrix<f64>, tol: f64) -> Result<FloatSpectrum> {
    if m.nrows() != m.ncols() {
        return Err(Error::Invariant(format!(
            "matrix is {}x{}, not square",
            m.nrows(),
            m.ncols()
        )));
    }
    ensure_size("matrix order for dense eigensolver", m.nrows(), MAX_DENSE_SPECTRUM_SIZE)?;
    if m != &m.transpose() {
        return Err(Error::Invariant("matrix is not symmetric".into()));
    }
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::Parameter(format!("tolerance must be non-negative, got {tol}")));
    }
    if m.nrows() == 0 {
        return Ok(FloatSpectrum { entries: vec![] });
    }
    let norm1 = m
        .column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let gap = tol * norm1.max(1.0);
    let mut eig: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    let mut entries: Vec<(f64, usize)> = Vec::new();
    let mut cluster_sum = eig[0];
    let mut cluster_len = 1usize;
    let mut last = eig[0];
    for &x in &eig[1..] {
        if last - x <= gap {
            cluster_sum += x;
            cluster_len += 1;
        } else {
            entries.push((cluster_sum / cluster_len as f64, cluster_len));
            cluster_sum = x;
            cluster_len = 1;
        }
        last = x;
    }
    entries.push((cluster_sum / cluster_len as f64, cluster_len));
    Ok(FloatSpectrum { entries })
}

/// Dense eigensolver spectrum of a graph's adjacency matrix.
pub fn dense_spectrum(g: &DenseGraph, tol: f64) -> Result<FloatSpectrum> {
    ensure_size("graph order for dense eigensolver", g.size(), MAX_DENSE_SPECTRUM_SIZE)?;
    dense_spectrum_of_matrix(&g.adjacency_matrix(), tol)
}

/// How the upper bound of [`hadamard_quantum_chromatic`] is witnessed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessPolicy {
    /// Exhaustive verification for `N <= 8`, 10^5 sampled tuples (seed 42)
    /// up to `N = 64`, nothing beyond.
    Default,
    Verify(Sampling),
    Skip,
}

/// Exact `chi_q(H_N)` with both bounds that pin it down.
#[derive(Debug, Clone, PartialEq)]
pub struct ChromaticRecord {
    pub n: usize,
    pub value: usize,
    pub lower: HoffmanReport,
    pub upper: usize,
    pub witness: Option<StrategyReport>,
}

impl ChromaticRecord {
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("n".into(), self.n.into());
        map.insert("chi_q".into(), self.value.into());
        map.insert("lower_bound".into(), self.lower.to_json());
        map.insert("upper_bound".into(), self.upper.into());
        map.insert(
            "upper_witness".into(),
            self.witness
                .as_ref()
                .map_or(serde_json::Value::Null, |w| w.to_json()),
        );
        serde_json::Value::Object(map)
    }
}

/// `chi_q(H_N) = N`: the Hoffman bound from the exact extremes meets the
/// `N`-color strategy, which is verified numerically when in range.
pub fn hadamard_quantum_chromatic(n: usize) -> Result<ChromaticRecord> {
    hadamard_quantum_chromatic_with(n, WitnessPolicy::Default)
}

pub fn hadamard_quantum_chromatic_with(n: usize, policy: WitnessPolicy) -> Result<ChromaticRecord> {
    require_multiple_of_four(n)?;
    let (max, min) = hadamard_extremes(n)?;
    let lower = HoffmanReport::from_extremes(max, min)?;
    let sampling = match policy {
        WitnessPolicy::Skip => None,
        WitnessPolicy::Verify(s) => Some(s),
        WitnessPolicy::Default if n <= 8 => Some(Sampling::Exhaustive),
        WitnessPolicy::Default if n <= 64 => Some(Sampling::Sampled {
            count: 100_000,
            seed: 42,
        }),
        WitnessPolicy::Default => None,
    };
    let witness = sampling
        .map(|s| verify_strategy(n, s, DEFAULT_TOLERANCE))
        .transpose()?;
    if let Some(w) = &witness {
        if !w.passed() {
            return Err(Error::Invariant(format!(
                "{n}-color strategy failed verification"
            )));
        }
    }
    if lower.integer_bound != BigInt::from(n) {
        return Err(Error::Invariant(format!(
            "Hoffman bound {} does not meet the upper bound {n}",
            lower.integer_bound
        )));
    }
    Ok(ChromaticRecord {
        n,
        value: n,
        lower,
        upper: n,
        witness,
    })
}
