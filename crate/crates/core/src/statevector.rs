//! Dense statevector simulation.
//!
//! Amplitudes are stored in big-endian index order: basis index `i` is the
//! bitstring of `i` with the first qubit as its most significant bit. A
//! prefix of `j` qubits with value `k` followed by a suffix `x` on the
//! remaining `n - j` qubits is therefore the index `k * 2^(n-j) + x`.
//!
//! Measurement sampling is reproducible: a shot stream is drawn from
//! `ChaCha8Rng::seed_from_u64(seed)`, each shot takes one `f64` uniform in
//! `[0, 1)`, scales it by the total probability mass and selects the first
//! basis index whose cumulative probability exceeds it (inverse CDF).

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::bits::format_bits;
use crate::error::{invalid, Error, Result};

/// Largest register the simulator will allocate.
pub const MAX_QUBITS: usize = 14;

/// Tolerance for the normalization and unitarity invariants.
pub const INVARIANT_TOLERANCE: f64 = 1e-9;

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("qubit count must be positive"));
    }
    if n > MAX_QUBITS {
        return Err(Error::Resource(format!(
            "{n} qubits exceeds the cap of {MAX_QUBITS}"
        )));
    }
    Ok(())
}

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(invalid(format!("dimension {dim} is not a power of two >= 2")));
    }
    let n = dim.trailing_zeros() as usize;
    check_qubits(n)?;
    Ok(n)
}

/// A normalized pure state on `n_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// `|0...0>` on `n` qubits.
pub fn zero_state(n: usize) -> Result<Statevector> {
    check_qubits(n)?;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
    amplitudes[0] = Complex64::new(1.0, 0.0);
    Ok(Statevector {
        n_qubits: n,
        amplitudes,
    })
}

impl Statevector {
    /// Build a state from raw amplitudes; the length must be a power of two
    /// and the squared norm must be 1 within [`INVARIANT_TOLERANCE`].
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n_qubits = qubits_for_dim(amplitudes.len())?;
        let state = Self {
            n_qubits,
            amplitudes,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > INVARIANT_TOLERANCE {
            return Err(invalid(format!("amplitudes have squared norm {norm}, expected 1")));
        }
        Ok(state)
    }

    pub(crate) fn from_raw(n_qubits: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n_qubits);
        Self {
            n_qubits,
            amplitudes,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    /// Born-rule probabilities `|amplitude|^2`, in index order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(Complex64::norm_sqr).collect()
    }

    /// `U |self>`.
    pub fn apply(&self, op: &UnitaryOperator) -> Result<Statevector> {
        if op.dim() != self.dim() {
            return Err(invalid(format!(
                "operator dimension {} does not match state dimension {}",
                op.dim(),
                self.dim()
            )));
        }
        Ok(Self::from_raw(self.n_qubits, op.mul_vec(&self.amplitudes)))
    }

    /// Tensor product `self ⊗ other`, with `self` on the leading qubits.
    pub fn kron(&self, other: &Statevector) -> Result<Statevector> {
        check_qubits(self.n_qubits + other.n_qubits)?;
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ok(Self::from_raw(self.n_qubits + other.n_qubits, amplitudes))
    }

    /// Multiply every amplitude whose index satisfies `mask` by `e^{i phase}`.
    pub fn apply_conditional_phase<F>(&self, mask: F, phase: f64) -> Statevector
    where
        F: Fn(usize) -> bool,
    {
        let mut out = self.clone();
        out.phase_in_place(mask, phase);
        out
    }

    pub(crate) fn phase_in_place<F>(&mut self, mask: F, phase: f64)
    where
        F: Fn(usize) -> bool,
    {
        let factor = Complex64::from_polar(1.0, phase);
        for (index, amp) in self.amplitudes.iter_mut().enumerate() {
            if mask(index) {
                *amp *= factor;
            }
        }
    }

    /// Total probability of the basis states selected by `mask`.
    pub fn probability_of<F>(&self, mask: F) -> f64
    where
        F: Fn(usize) -> bool,
    {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(index, _)| mask(*index))
            .map(|(_, amp)| amp.norm_sqr())
            .fold(0.0, |acc, p| acc + p)
    }

    /// Draw `shots` basis indices from the exact output distribution.
    pub fn sample_indices(&self, shots: u64, seed: u64) -> Result<Vec<usize>> {
        if shots == 0 {
            return Err(invalid("shots must be positive"));
        }
        let cdf: Vec<f64> = self
            .amplitudes
            .iter()
            .scan(0.0, |acc, amp| {
                *acc += amp.norm_sqr();
                Some(*acc)
            })
            .collect();
        let total = *cdf.last().expect("state is never empty");
        let last = cdf.len() - 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok((0..shots)
            .map(|_| {
                let u = rng.random::<f64>() * total;
                cdf.partition_point(|&c| c <= u).min(last)
            })
            .collect())
    }

    /// Measure every qubit `shots` times.
    pub fn measure_all(&self, shots: u64, seed: u64) -> Result<Histogram> {
        let samples = self.sample_indices(shots, seed)?;
        Ok(Histogram::from_indices(self.n_qubits, &samples))
    }
}

/// Measurement outcome counts keyed by bitstring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    pub n_qubits: usize,
    pub shots: u64,
    pub counts: BTreeMap<String, u64>,
}

impl Histogram {
    pub fn from_indices(n_qubits: usize, samples: &[usize]) -> Self {
        let mut counts = BTreeMap::new();
        for &index in samples {
            *counts.entry(format_bits(index, n_qubits)).or_insert(0) += 1;
        }
        Self {
            n_qubits,
            shots: samples.len() as u64,
            counts,
        }
    }

    pub fn count(&self, bitstring: &str) -> u64 {
        self.counts.get(bitstring).copied().unwrap_or(0)
    }

    pub fn frequency(&self, bitstring: &str) -> f64 {
        self.count(bitstring) as f64 / self.shots as f64
    }
}

/// A dense unitary matrix acting on a register of `n_qubits` qubits.
///
/// Entries are stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryOperator {
    n_qubits: usize,
    dim: usize,
    entries: Vec<Complex64>,
}

impl UnitaryOperator {
    /// Build from row-major entries, checking `U^dagger U = I` within
    /// [`INVARIANT_TOLERANCE`].
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        let n_qubits = qubits_for_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(invalid(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let op = Self {
            n_qubits,
            dim,
            entries,
        };
        let deviation = op.unitarity_deviation();
        if deviation > INVARIANT_TOLERANCE {
            return Err(invalid(format!(
                "matrix is not unitary (max |U^dagger U - I| = {deviation:e})"
            )));
        }
        Ok(op)
    }

    pub(crate) fn from_raw(dim: usize, entries: Vec<Complex64>) -> Self {
        debug_assert!(dim.is_power_of_two() && entries.len() == dim * dim);
        Self {
            n_qubits: dim.trailing_zeros() as usize,
            dim,
            entries,
        }
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_qubits(n)?;
        Ok(Self::diagonal_raw(vec![Complex64::new(1.0, 0.0); 1 << n]))
    }

    /// `H^{⊗n}`: entry `(r, c)` is `(-1)^{popcount(r & c)} / sqrt(2^n)`.
    pub fn hadamard(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let dim = 1usize << n;
        let scale = (dim as f64).sqrt().recip();
        let entries = (0..dim * dim)
            .map(|idx| {
                let (r, c) = (idx / dim, idx % dim);
                let sign = if (r & c).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                Complex64::new(sign * scale, 0.0)
            })
            .collect();
        Ok(Self::from_raw(dim, entries))
    }

    /// Diagonal operator; every entry must have unit modulus.
    pub fn diagonal(diag: Vec<Complex64>) -> Result<Self> {
        qubits_for_dim(diag.len())?;
        if let Some(bad) = diag
            .iter()
            .find(|d| (d.norm() - 1.0).abs() > INVARIANT_TOLERANCE)
        {
            return Err(invalid(format!("diagonal entry {bad} is not a phase")));
        }
        Ok(Self::diagonal_raw(diag))
    }

    pub(crate) fn diagonal_raw(diag: Vec<Complex64>) -> Self {
        let dim = diag.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i * dim + i] = d;
        }
        Self::from_raw(dim, entries)
    }

    /// Haar-random unitary on `n` qubits.
    ///
    /// Draws a matrix of i.i.d. standard complex Gaussians and orthonormalizes
    /// its columns with modified Gram-Schmidt. The implied QR factor has a
    /// positive real diagonal, which makes the result Haar distributed.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_qubits(n)?;
        let dim = 1usize << n;
        let mut columns: Vec<Vec<Complex64>> = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                    .collect()
            })
            .collect();
        for c in 0..dim {
            let (done, rest) = columns.split_at_mut(c);
            let col = &mut rest[0];
            for prev in done.iter() {
                let overlap: Complex64 = prev.iter().zip(col.iter()).map(|(p, v)| p.conj() * v).sum();
                for (v, p) in col.iter_mut().zip(prev) {
                    *v -= overlap * p;
                }
            }
            let norm = col.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
            for v in col.iter_mut() {
                *v /= norm;
            }
        }
        let entries = (0..dim * dim)
            .map(|idx| columns[idx % dim][idx / dim])
            .collect();
        Ok(Self::from_raw(dim, entries))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.dim).map(|row| self.get(row, col)).collect()
    }

    pub fn adjoint(&self) -> Self {
        let dim = self.dim;
        let entries = (0..dim * dim)
            .map(|idx| self.get(idx % dim, idx / dim).conj())
            .collect();
        Self::from_raw(dim, entries)
    }

    /// Matrix product `self * rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &UnitaryOperator) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(invalid(format!(
                "cannot compose operators of dimension {} and {}",
                self.dim, rhs.dim
            )));
        }
        let dim = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let lhs = self.get(r, k);
                if lhs == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &mut entries[r * dim..(r + 1) * dim];
                for (out, b) in row.iter_mut().zip(&rhs.entries[k * dim..(k + 1) * dim]) {
                    *out += lhs * b;
                }
            }
        }
        Ok(Self::from_raw(dim, entries))
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self::from_raw(self.dim, self.entries.iter().map(|e| e * factor).collect())
    }

    pub(crate) fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.entries
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Kronecker product `self ⊗ rhs`; `self` acts on the leading qubits.
    pub fn kron(&self, rhs: &UnitaryOperator) -> Result<Self> {
        check_qubits(self.n_qubits + rhs.n_qubits)?;
        let dim = self.dim * rhs.dim;
        let mut entries = Vec::with_capacity(dim * dim);
        for r1 in 0..self.dim {
            for r2 in 0..rhs.dim {
                for c1 in 0..self.dim {
                    let a = self.get(r1, c1);
                    entries.extend(rhs.entries[r2 * rhs.dim..(r2 + 1) * rhs.dim].iter().map(|b| a * b));
                }
            }
        }
        Ok(Self::from_raw(dim, entries))
    }

    /// Largest elementwise modulus of `U^dagger U - I`.
    pub fn unitarity_deviation(&self) -> f64 {
        let dim = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let dot: Complex64 = (0..dim).map(|k| self.get(k, i).conj() * self.get(k, j)).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - expected).norm());
            }
        }
        worst
    }

    /// Largest elementwise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &UnitaryOperator) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `U1 ⊗ U2`, with `U1` on the prefix qubits.
pub fn kron(u1: &UnitaryOperator, u2: &UnitaryOperator) -> Result<UnitaryOperator> {
    u1.kron(u2)
}

impl fmt::Display for Statevector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (index, amp) in self.amplitudes.iter().enumerate() {
            writeln!(f, "{}: {:+.6}{:+.6}i", format_bits(index, self.n_qubits), amp.re, amp.im)?;
        }
        Ok(())
    }
}
