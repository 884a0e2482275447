//! The `N`-color quantum strategy for the Hadamard graph `H_N`.
//!
//! Vertex `x` (read in the 0/1 convention, entries `x_j`) and color `alpha`
//! are assigned the unit vector with coordinates
//! `omega^{j alpha} (-1)^{x_j} / sqrt(N)` and the rank-one projector onto it.
//! Alice measures `E_x^alpha`, Bob the entrywise conjugate, on the maximally
//! entangled state `(1/sqrt N) sum_j |j>|j>`. The joint probability is
//! `|S|^2 / N^3` with `S = sum_l omega^{l (alpha - beta)} (-1)^{x_l + y_l}`,
//! which vanishes for `alpha = beta` on orthogonal vertices and for
//! `alpha != beta` on equal vertices.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{ensure_len, ensure_size, Error, Result};
use crate::graph::{require_multiple_of_four, DenseGraph};
use crate::group::{Convention, GroupElement};
use crate::spectra::round_sig;

/// Default residual tolerance for a PASS verdict.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Largest `N` for which projectors are materialised.
pub const MAX_STRATEGY_N: usize = 64;
/// Largest `N` accepted by the tensor-contraction oracle.
pub const MAX_ORACLE_N: usize = 32;
/// Largest `N * |V|` for the block-diagonal color PVM.
pub const MAX_BLOCKDIAG_DIM: usize = 4096;
/// Largest `N` for exhaustive verification over all vertex pairs.
pub const MAX_EXHAUSTIVE_N: usize = 8;
// completeness and projection checks in sampled mode use this many vertices
const SAMPLED_PVM_VERTICES: usize = 512;

/// The strategy for a fixed `N` and primitive root `omega = exp(2 pi i k / N)`.
#[derive(Debug, Clone)]
pub struct QuantumColoring {
    n: usize,
    root_power: usize,
    // unit circle at angles 2 pi m / N, so every phase is looked up exactly
    roots: Vec<Complex64>,
}

impl QuantumColoring {
    /// Strategy with `omega = exp(2 pi i / N)`.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_root_power(n, 1)
    }

    /// Strategy with `omega = exp(2 pi i k / N)`; `k` must be coprime to `N`.
    pub fn with_root_power(n: usize, k: usize) -> Result<Self> {
        let s = Self::with_root_power_unchecked(n, k)?;
        if k.gcd(&n) != 1 {
            return Err(Error::Parameter(format!(
                "root power {k} is not coprime to {n}, root is not primitive"
            )));
        }
        Ok(s)
    }

    /// Accepts any root power, including non-primitive ones. Used for
    /// negative controls: the resulting operators do not form a valid PVM.
    pub fn with_root_power_unchecked(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("strategy needs N >= 1".into()));
        }
        ensure_size("strategy order N", n, MAX_STRATEGY_N)?;
        let roots = (0..n)
            .map(|m| Complex64::from_polar(1.0, std::f64::consts::TAU * m as f64 / n as f64))
            .collect();
        Ok(Self {
            n,
            root_power: k % n,
            roots,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root_power(&self) -> usize {
        self.root_power
    }

    /// `omega^e`.
    fn omega(&self, e: i64) -> Complex64 {
        let n = self.n as i64;
        let idx = (e.rem_euclid(n) * self.root_power as i64).rem_euclid(n);
        self.roots[idx as usize]
    }

    fn check_vertex(&self, x: &GroupElement) -> Result<()> {
        ensure_len(self.n, x.len())
    }

    fn check_color(&self, c: usize) -> Result<()> {
        if c >= self.n {
            return Err(Error::Parameter(format!(
                "color {c} out of range 0..{}",
                self.n
            )));
        }
        Ok(())
    }

    /// `(-1)^{x_j}` with `x_j` the 0/1 entry.
    fn signs(x: &GroupElement) -> Vec<f64> {
        x.entries(Convention::ZeroOne)
            .into_iter()
            .map(|e| if e == 1 { -1.0 } else { 1.0 })
            .collect()
    }

    pub fn measurement_vector(&self, x: &GroupElement, color: usize) -> Result<MeasurementVector> {
        self.check_vertex(x)?;
        self.check_color(color)?;
        let scale = 1.0 / (self.n as f64).sqrt();
        let coords = Self::signs(x)
            .into_iter()
            .enumerate()
            .map(|(j, sign)| self.omega((j * color) as i64) * (sign * scale))
            .collect();
        Ok(MeasurementVector {
            coords,
            vertex: *x,
            color,
        })
    }

    pub fn projector(&self, x: &GroupElement, color: usize) -> Result<ColorProjector> {
        let v = self.measurement_vector(x, color)?;
        // E[k][j] = conj(c_k) c_j
        let matrix = DMatrix::from_fn(self.n, self.n, |k, j| v.coords[k].conj() * v.coords[j]);
        Ok(ColorProjector {
            matrix,
            vertex: *x,
            color,
        })
    }

    /// The `N` projectors assigned to vertex `x`, one per color.
    pub fn pvm(&self, x: &GroupElement) -> Result<Vec<ColorProjector>> {
        (0..self.n).map(|a| self.projector(x, a)).collect()
    }

    /// `<psi| E_x^alpha (x) conj(E_y^beta) |psi>` in closed form.
    pub fn correlation(&self, x: &GroupElement, y: &GroupElement, alpha: usize, beta: usize) -> Result<f64> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        self.check_color(alpha)?;
        self.check_color(beta)?;
        let delta = alpha as i64 - beta as i64;
        let diff = x.bits() ^ y.bits();
        let mut s = Complex64::new(0.0, 0.0);
        for l in 0..self.n {
            let phase = self.omega(l as i64 * delta);
            if (diff >> l) & 1 == 1 {
                s -= phase;
            } else {
                s += phase;
            }
        }
        let n = self.n as f64;
        Ok(s.norm_sqr() / (n * n * n))
    }

    /// Same quantity by explicit tensor contraction on the `N^2`-dimensional
    /// shared state; the imaginary part is numerical noise.
    pub fn correlation_oracle(
        &self,
        x: &GroupElement,
        y: &GroupElement,
        alpha: usize,
        beta: usize,
    ) -> Result<Complex64> {
        ensure_size("strategy order N for the contraction oracle", self.n, MAX_ORACLE_N)?;
        let n = self.n;
        let alice = self.projector(x, alpha)?.matrix;
        let bob = self.projector(y, beta)?.matrix.map(|z| z.conj());
        let amp = 1.0 / (n as f64).sqrt();
        let mut psi = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            psi[j * n + j] = Complex64::new(amp, 0.0);
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for k in 0..n {
            for kp in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    for jp in 0..n {
                        acc += alice[(k, j)] * bob[(kp, jp)] * psi[j * n + jp];
                    }
                }
                out[k * n + kp] = acc;
            }
        }
        Ok(psi.iter().zip(&out).map(|(p, o)| p.conj() * o).sum())
    }
}

/// `<~E_x^alpha|` as a coordinate vector.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementVector {
    pub coords: Vec<Complex64>,
    pub vertex: GroupElement,
    pub color: usize,
}

impl MeasurementVector {
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColorProjector {
    pub matrix: DMatrix<Complex64>,
    pub vertex: GroupElement,
    pub color: usize,
}

impl ColorProjector {
    /// Worst of `||E - E^dag||`, `||E^2 - E||` and `|tr E - 1|`.
    pub fn projection_residual(&self) -> f64 {
        let e = &self.matrix;
        let herm = (e - e.adjoint()).norm();
        let idem = (e * e - e).norm();
        let trace = (e.trace() - Complex64::new(1.0, 0.0)).norm();
        herm.max(idem).max(trace)
    }
}

/// `||sum_a E_a - I||` (Frobenius).
fn completeness_residual(projectors: &[ColorProjector], n: usize) -> f64 {
    let mut sum = DMatrix::<Complex64>::identity(n, n) * Complex64::new(-1.0, 0.0);
    for p in projectors {
        sum += &p.matrix;
    }
    sum.norm()
}

pub fn build_pvm(n: usize, x: &GroupElement) -> Result<Vec<ColorProjector>> {
    QuantumColoring::new(n)?.pvm(x)
}

pub fn correlation(n: usize, x: &GroupElement, y: &GroupElement, alpha: usize, beta: usize) -> Result<f64> {
    require_multiple_of_four(n)?;
    QuantumColoring::new(n)?.correlation(x, y, alpha, beta)
}

pub fn correlation_oracle(
    n: usize,
    x: &GroupElement,
    y: &GroupElement,
    alpha: usize,
    beta: usize,
) -> Result<Complex64> {
    QuantumColoring::new(n)?.correlation_oracle(x, y, alpha, beta)
}

/// Which vertex pairs a verification run covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Sampling {
    /// Every vertex and every ordered vertex pair.
    Exhaustive,
    /// `count` random tuples `(x, y ~ x, alpha, beta != alpha)`.
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyReport {
    pub n: usize,
    pub root_power: usize,
    pub sampling: Sampling,
    pub tolerance: f64,
    pub max_completeness_residual: f64,
    pub max_projection_residual: f64,
    pub max_adjacent_violation: f64,
    pub max_synchronous_violation: f64,
    pub max_normalization_residual: f64,
    pub pairs_checked: u64,
}

impl StrategyReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.max_completeness_residual,
            self.max_projection_residual,
            self.max_adjacent_violation,
            self.max_synchronous_violation,
            self.max_normalization_residual,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.max_residual() <= self.tolerance
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (mode, count, seed) = match self.sampling {
            Sampling::Exhaustive => ("exhaustive", None, None),
            Sampling::Sampled { count, seed } => ("sampled", Some(count), Some(seed)),
        };
        let mut map = serde_json::Map::new();
        map.insert("n".into(), self.n.into());
        map.insert("root_power".into(), self.root_power.into());
        map.insert("sampling".into(), mode.into());
        map.insert("sample_count".into(), count.into());
        map.insert("seed".into(), seed.into());
        map.insert("tolerance".into(), round_sig(self.tolerance).into());
        for (key, value) in [
            ("max_completeness_residual", self.max_completeness_residual),
            ("max_projection_residual", self.max_projection_residual),
            ("max_adjacent_violation", self.max_adjacent_violation),
            ("max_synchronous_violation", self.max_synchronous_violation),
            ("max_normalization_residual", self.max_normalization_residual),
        ] {
            map.insert(key.into(), round_sig(value).into());
        }
        map.insert("pairs_checked".into(), self.pairs_checked.into());
        map.insert("verdict".into(), self.verdict().into());
        serde_json::Value::Object(map)
    }
}

#[derive(Default)]
struct Maxima {
    completeness: f64,
    projection: f64,
    adjacent: f64,
    synchronous: f64,
    normalization: f64,
}

impl Maxima {
    fn check_pvm(&mut self, coloring: &QuantumColoring, x: &GroupElement) -> Result<()> {
        let pvm = coloring.pvm(x)?;
        self.completeness = self.completeness.max(completeness_residual(&pvm, coloring.n));
        for p in &pvm {
            self.projection = self.projection.max(p.projection_residual());
        }
        Ok(())
    }

    fn check_normalization(&mut self, coloring: &QuantumColoring, x: &GroupElement, y: &GroupElement) -> Result<()> {
        let mut total = 0.0;
        for a in 0..coloring.n {
            for b in 0..coloring.n {
                total += coloring.correlation(x, y, a, b)?;
            }
        }
        self.normalization = self.normalization.max((total - 1.0).abs());
        Ok(())
    }
}

/// Verifies the `N`-color strategy for `H_N` with the default root.
pub fn verify_strategy(n: usize, sampling: Sampling, tolerance: f64) -> Result<StrategyReport> {
    verify_coloring(&QuantumColoring::new(n)?, sampling, tolerance)
}

/// Checks PVM completeness and projector structure, the coloring condition
/// on adjacent vertices, synchronicity on equal vertices, and normalisation
/// of the joint distribution.
pub fn verify_coloring(coloring: &QuantumColoring, sampling: Sampling, tolerance: f64) -> Result<StrategyReport> {
    let n = coloring.n;
    require_multiple_of_four(n)?;
    let half = (n / 2) as u32;
    let mut m = Maxima::default();
    let pairs_checked;
    match sampling {
        Sampling::Exhaustive => {
            if n > MAX_EXHAUSTIVE_N {
                return Err(Error::Parameter(format!(
                    "exhaustive verification supports N <= {MAX_EXHAUSTIVE_N}, got {n}; use sampling"
                )));
            }
            let vertices: Vec<GroupElement> = (0..1u64 << n)
                .map(|b| GroupElement::new(b, n))
                .collect::<Result<_>>()?;
            for x in &vertices {
                m.check_pvm(coloring, x)?;
                for y in &vertices {
                    m.check_normalization(coloring, x, y)?;
                    if (x.bits() ^ y.bits()).count_ones() == half {
                        for a in 0..n {
                            m.adjacent = m.adjacent.max(coloring.correlation(x, y, a, a)?);
                        }
                    }
                }
                for a in 0..n {
                    for b in (0..n).filter(|&b| b != a) {
                        m.synchronous = m.synchronous.max(coloring.correlation(x, x, a, b)?);
                    }
                }
            }
            pairs_checked = 1u64 << (2 * n);
        }
        Sampling::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let positions: Vec<usize> = (0..n).collect();
            let word_mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            for i in 0..count {
                let x = GroupElement::new(rng.gen::<u64>() & word_mask, n)?;
                let flips = positions
                    .choose_multiple(&mut rng, n / 2)
                    .fold(0u64, |acc, &p| acc | (1 << p));
                let y = GroupElement::new(x.bits() ^ flips, n)?;
                let a = rng.gen_range(0..n);
                let b = (a + rng.gen_range(1..n)) % n;
                m.adjacent = m.adjacent.max(coloring.correlation(&x, &y, a, a)?);
                m.synchronous = m.synchronous.max(coloring.correlation(&x, &x, a, b)?);
                m.check_normalization(coloring, &x, &y)?;
                if i < SAMPLED_PVM_VERTICES {
                    m.check_pvm(coloring, &x)?;
                }
            }
            pairs_checked = count as u64;
        }
    }
    Ok(StrategyReport {
        n,
        root_power: coloring.root_power,
        sampling,
        tolerance,
        max_completeness_residual: m.completeness,
        max_projection_residual: m.projection,
        max_adjacent_violation: m.adjacent,
        max_synchronous_violation: m.synchronous,
        max_normalization_residual: m.normalization,
        pairs_checked,
    })
}

/// Block-diagonal operator `diag(B_1, ..., B_n)` stored by blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDiagonal {
    pub blocks: Vec<DMatrix<Complex64>>,
}

impl BlockDiagonal {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.nrows()).sum()
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        let mut off = 0;
        for b in &self.blocks {
            m.view_mut((off, off), (b.nrows(), b.ncols())).copy_from(b);
            off += b.nrows();
        }
        m
    }
}

/// The color PVM `P_alpha = diag(E_1^alpha, ..., E_n^alpha)` over a labeled
/// graph, with its verification residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockDiagPvm {
    pub n: usize,
    pub vertices: usize,
    pub projectors: Vec<BlockDiagonal>,
    /// `||sum_a P_a - I||`.
    pub completeness_residual: f64,
    /// Worst of `||P_a^2 - P_a||`, `||P_a - P_a^dag||`.
    pub projection_residual: f64,
    /// Worst `||P_a P_b||` over `a != b`.
    pub orthogonality_residual: f64,
    /// Worst `||P_a (E_{x,y} (x) I_N) P_a||` over edges and colors.
    pub max_edge_residual: f64,
    pub edges_checked: usize,
    pub tolerance: f64,
}

impl BlockDiagPvm {
    pub fn passed(&self) -> bool {
        [
            self.completeness_residual,
            self.projection_residual,
            self.orthogonality_residual,
            self.max_edge_residual,
        ]
        .iter()
        .all(|&r| r <= self.tolerance)
    }
}

/// `P_a (E_{x,y} (x) I_N) P_a`: the only non-zero block sits at `(x, y)`
/// and equals `E_x^a E_y^a`.
pub fn edge_term_block(p: &BlockDiagonal, x: usize, y: usize) -> DMatrix<Complex64> {
    &p.blocks[x] * &p.blocks[y]
}

pub fn build_color_pvm_blockdiag(
    coloring: &QuantumColoring,
    g: &DenseGraph,
    tolerance: f64,
) -> Result<BlockDiagPvm> {
    let n = coloring.n;
    let labels = g
        .labels()
        .ok_or_else(|| Error::Parameter("block-diagonal PVM needs a labeled graph".into()))?;
    ensure_size("block-diagonal dimension N*|V|", n * g.size(), MAX_BLOCKDIAG_DIM)?;
    for l in labels {
        ensure_len(n, l.len())?;
    }
    let mut projectors = Vec::with_capacity(n);
    for a in 0..n {
        let blocks = labels
            .iter()
            .map(|x| coloring.projector(x, a).map(|p| p.matrix))
            .collect::<Result<Vec<_>>>()?;
        projectors.push(BlockDiagonal { blocks });
    }

    let mut completeness = 0.0f64;
    for v in 0..g.size() {
        let mut sum = DMatrix::<Complex64>::identity(n, n) * Complex64::new(-1.0, 0.0);
        for p in &projectors {
            sum += &p.blocks[v];
        }
        completeness = completeness.max(sum.norm());
    }
    // Frobenius norms of block-diagonal operators add in squares
    let block_norm = |f: &dyn Fn(usize) -> f64| (0..g.size()).map(|v| f(v).powi(2)).sum::<f64>().sqrt();
    let mut projection = 0.0f64;
    let mut orthogonality = 0.0f64;
    for (a, p) in projectors.iter().enumerate() {
        let idem = block_norm(&|v| (&p.blocks[v] * &p.blocks[v] - &p.blocks[v]).norm());
        let herm = block_norm(&|v| (&p.blocks[v] - p.blocks[v].adjoint()).norm());
        projection = projection.max(idem).max(herm);
        for q in projectors.iter().skip(a + 1) {
            orthogonality = orthogonality.max(block_norm(&|v| (&p.blocks[v] * &q.blocks[v]).norm()));
        }
    }
    let mut edge = 0.0f64;
    let mut edges_checked = 0;
    for (x, y) in g.edges() {
        for (u, v) in [(x, y), (y, x)] {
            for p in &projectors {
                edge = edge.max(edge_term_block(p, u, v).norm());
            }
            edges_checked += 1;
        }
    }
    Ok(BlockDiagPvm {
        n,
        vertices: g.size(),
        projectors,
        completeness_residual: completeness,
        projection_residual: projection,
        orthogonality_residual: orthogonality,
        max_edge_residual: edge,
        edges_checked,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_hadamard, Component, HadamardParams};

    fn el(bits: u64, n: usize) -> GroupElement {
        GroupElement::new(bits, n).unwrap()
    }

    #[test]
    fn pvm_is_complete_for_four() {
        for b in 0..16 {
            let x = el(b, 4);
            let pvm = build_pvm(4, &x).unwrap();
            assert!(completeness_residual(&pvm, 4) <= 1e-12);
            for p in &pvm {
                assert!(p.projection_residual() <= 1e-12);
            }
        }
    }

    #[test]
    fn all_zero_vertex_color_zero_is_uniform() {
        // x = all zeros in the 0/1 convention is the all -1 word
        let x = GroupElement::from_entries(&[0, 0, 0, 0], Convention::ZeroOne).unwrap();
        let e = QuantumColoring::new(4).unwrap().projector(&x, 0).unwrap();
        for z in e.matrix.iter() {
            assert!((z - Complex64::new(0.25, 0.0)).norm() <= 1e-15);
        }
    }

    #[test]
    fn vectors_are_unit() {
        let c = QuantumColoring::new(8).unwrap();
        for b in [0u64, 0b1011_0010, 255] {
            for a in 0..8 {
                assert!((c.measurement_vector(&el(b, 8), a).unwrap().norm() - 1.0).abs() <= 1e-12);
                let tr = c.projector(&el(b, 8), a).unwrap().matrix.trace();
                assert!((tr - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(build_pvm(0, &el(0, 1)), Err(Error::Parameter(_))));
        let c = QuantumColoring::new(4).unwrap();
        assert!(matches!(c.correlation(&el(0, 4), &el(0, 4), 4, 0), Err(Error::Parameter(_))));
        assert!(matches!(c.correlation(&el(0, 4), &el(0, 5), 0, 0), Err(Error::Dimension { .. })));
        assert!(QuantumColoring::with_root_power(8, 2).is_err());
        assert!(QuantumColoring::with_root_power(8, 3).is_ok());
        assert!(matches!(verify_strategy(12, Sampling::Exhaustive, 1e-9), Err(Error::Parameter(_))));
        assert!(matches!(verify_strategy(6, Sampling::Exhaustive, 1e-9), Err(Error::Parameter(_))));
    }

    #[test]
    fn correlation_special_cases() {
        let n = 8;
        let x = el(0b1100_1010, n);
        let y = el(0b1100_1010 ^ 0b0111_1000, n);
        assert!((correlation(n, &x, &x, 3, 3).unwrap() - 1.0 / n as f64).abs() <= 1e-15);
        for a in 0..n {
            assert!(correlation(n, &x, &y, a, a).unwrap() <= 1e-15);
            for b in (0..n).filter(|&b| b != a) {
                assert!(correlation(n, &x, &x, a, b).unwrap() <= 1e-15);
            }
        }
        let z = correlation_oracle(4, &el(5, 4), &el(5, 4), 1, 1).unwrap();
        assert!((z.re - 0.25).abs() <= 1e-12 && z.im.abs() <= 1e-12);
    }

    #[test]
    fn oracle_marginals_sum_to_one() {
        let c = QuantumColoring::new(4).unwrap();
        let (x, y) = (el(0b0110, 4), el(0b1011, 4));
        let total: Complex64 = (0..4)
            .flat_map(|a| (0..4).map(move |b| (a, b)))
            .map(|(a, b)| c.correlation_oracle(&x, &y, a, b).unwrap())
            .sum();
        assert!((total - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
    }

    #[test]
    fn exhaustive_four_passes() {
        let r = verify_strategy(4, Sampling::Exhaustive, DEFAULT_TOLERANCE).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.max_residual() <= 1e-10);
        assert_eq!(r.pairs_checked, 256);
    }

    #[test]
    fn other_primitive_roots_also_win() {
        for k in [1, 3, 5, 7] {
            let c = QuantumColoring::with_root_power(8, k).unwrap();
            let r = verify_coloring(&c, Sampling::Sampled { count: 500, seed: 7 }, DEFAULT_TOLERANCE).unwrap();
            assert!(r.passed(), "k={k}: {r:?}");
        }
    }

    #[test]
    fn non_primitive_root_fails() {
        let c = QuantumColoring::with_root_power_unchecked(4, 2).unwrap();
        let r = verify_coloring(&c, Sampling::Exhaustive, DEFAULT_TOLERANCE).unwrap();
        assert!(!r.passed());
        assert!(r.max_completeness_residual > 0.5);
        assert!(r.max_synchronous_violation > 0.1);
    }

    #[test]
    fn block_diag_dense_agrees_with_blocks() {
        let g = build_hadamard(HadamardParams::new(4, Component::Even)).unwrap();
        let c = QuantumColoring::new(4).unwrap();
        let pvm = build_color_pvm_blockdiag(&c, &g, 1e-10).unwrap();
        assert!(pvm.passed());
        let dim = pvm.projectors[0].dim();
        assert_eq!(dim, 32);
        // dense route: P_a (E_xy (x) I) P_a with explicit Kronecker products
        let eye = DMatrix::<Complex64>::identity(4, 4);
        let mut sum = DMatrix::<Complex64>::zeros(dim, dim);
        for p in &pvm.projectors {
            sum += p.to_dense();
        }
        assert!((sum - DMatrix::<Complex64>::identity(dim, dim)).norm() <= 1e-12);
        for (x, y) in g.edges() {
            let mut exy = DMatrix::<Complex64>::zeros(8, 8);
            exy[(x, y)] = Complex64::new(1.0, 0.0);
            let lifted = exy.kronecker(&eye);
            for p in &pvm.projectors {
                let d = p.to_dense();
                assert!((&d * &lifted * &d).norm() <= 1e-10);
            }
        }
    }
}
