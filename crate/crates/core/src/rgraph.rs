//! Erdős–Rényi sampling and the matrices built from a graph.
//!
//! Sampling uses ChaCha8 seeded through `SeedableRng::seed_from_u64`, which is
//! specified bit-for-bit by `rand_core` and therefore identical on every
//! platform. Pairs `(i, j)` with `i < j` are visited row by row; the pair is an
//! edge when the next `u64` drawn is below `⌊p·2⁶⁴⌋` (always for `p = 1`).
//!
//! Independent trials use disjoint substreams: trial `t` of a campaign with
//! master seed `s` samples with seed [`substream_seed`]`(s, t)`.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};

/// SplitMix64 finalizer applied to `master + trial`.
pub fn substream_seed(master: u64, trial: u64) -> u64 {
    let mut z = master
        .wrapping_add(trial)
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `σ = √(p(1−p))`, the standard deviation of one adjacency entry.
pub fn sigma(p: f64) -> f64 {
    libm::sqrt(p * (1.0 - p))
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// One draw of `G(n, p)`, stored as a packed upper-triangular bitset.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphSample {
    n: usize,
    p: f64,
    seed: Option<u64>,
    bits: Vec<u64>,
    edge_count: usize,
}

impl GraphSample {
    /// Samples `G(n, p)`; every unordered pair is an edge independently with
    /// probability `p`.
    pub fn sample(n: usize, p: f64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyOrder);
        }
        check_probability(p)?;
        let mut g = Self::blank(n, p, Some(seed));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // 2^64 * p, saturating; p = 1 must accept every draw
        let threshold = if p >= 1.0 {
            None
        } else {
            Some((p * 18_446_744_073_709_551_616.0) as u64)
        };
        let mut idx = 0;
        for i in 0..n {
            for _ in (i + 1)..n {
                let draw = rng.next_u64();
                let present = match threshold {
                    None => true,
                    Some(t) => draw < t,
                };
                if present {
                    g.bits[idx / 64] |= 1 << (idx % 64);
                    g.edge_count += 1;
                }
                idx += 1;
            }
        }
        Ok(g)
    }

    /// Builds a graph from an explicit edge list. The result carries no seed.
    ///
    /// Self-loops, duplicates and out-of-range endpoints are ignored.
    pub fn from_edges(n: usize, p: f64, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyOrder);
        }
        check_probability(p)?;
        let mut g = Self::blank(n, p, None);
        for &(a, b) in edges {
            if a == b || a >= n || b >= n {
                continue;
            }
            let idx = g.pair_index(a.min(b), a.max(b));
            if g.bits[idx / 64] & (1 << (idx % 64)) == 0 {
                g.bits[idx / 64] |= 1 << (idx % 64);
                g.edge_count += 1;
            }
        }
        Ok(g)
    }

    /// `Kₙ`, labelled with `p = 1`.
    pub fn complete(n: usize) -> Result<Self> {
        Self::sample(n, 1.0, 0).map(|mut g| {
            g.seed = None;
            g
        })
    }

    /// The edgeless graph, labelled with `p = 0`.
    pub fn empty(n: usize) -> Result<Self> {
        Self::from_edges(n, 0.0, &[])
    }

    fn blank(n: usize, p: f64, seed: Option<u64>) -> Self {
        let pairs = n * (n - 1) / 2;
        GraphSample {
            n,
            p,
            seed,
            bits: vec![0; pairs.div_ceil(64)],
            edge_count: 0,
        }
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `None` for graphs built from explicit edges.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == j || i >= self.n || j >= self.n {
            return false;
        }
        let idx = self.pair_index(i.min(j), i.max(j));
        self.bits[idx / 64] & (1 << (idx % 64)) != 0
    }

    /// Edges as `(i, j)` with `i < j`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| ((i + 1)..n).map(move |j| (i, j)))
            .enumerate()
            .filter(move |(idx, _)| self.bits[idx / 64] & (1 << (idx % 64)) != 0)
            .map(|(_, e)| e)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for (i, j) in self.edges() {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    /// `2|E| / n`.
    pub fn average_degree(&self) -> f64 {
        2.0 * self.edge_count as f64 / self.n as f64
    }
}

/// Dense real symmetric matrix in row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyOrder);
        }
        Ok(SymMatrix {
            n,
            entries: vec![0.0; n * n],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            m.entries[i * n + i] = 1.0;
        }
        Ok(m)
    }

    /// `J − I`: ones off the diagonal.
    pub fn ones_off_diagonal(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| if i == j { 0.0 } else { 1.0 })
    }

    /// Builds the matrix from its lower triangle (`j ≤ i`), mirroring it so
    /// the storage is exactly symmetric.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            for j in 0..=i {
                let v = f(i, j);
                m.entries[i * n + j] = v;
                m.entries[j * n + i] = v;
            }
        }
        Ok(m)
    }

    /// Takes row-major storage; the upper triangle is overwritten by the lower.
    pub fn from_row_major(n: usize, mut entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyOrder);
        }
        if entries.len() != n * n {
            return Err(Error::OrderMismatch {
                left: n * n,
                right: entries.len(),
            });
        }
        for i in 0..n {
            for j in 0..i {
                entries[j * n + i] = entries[i * n + j];
            }
        }
        Ok(SymMatrix { n, entries })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.entries[i * self.n + i]).sum()
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|x| x.is_finite())
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &SymMatrix) -> Result<SymMatrix> {
        self.combine(other, -1.0)
    }

    fn combine(&self, other: &SymMatrix, sign: f64) -> Result<SymMatrix> {
        if self.n != other.n {
            return Err(Error::OrderMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + sign * b)
            .collect();
        Ok(SymMatrix { n: self.n, entries })
    }

    pub fn scaled(&self, c: f64) -> SymMatrix {
        SymMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| c * x).collect(),
        }
    }

    /// `M + c·I`.
    pub fn shifted(&self, c: f64) -> SymMatrix {
        let mut m = self.clone();
        for i in 0..self.n {
            m.entries[i * self.n + i] += c;
        }
        m
    }

    /// `M + c·(J − I)`.
    pub fn plus_off_diagonal(&self, c: f64) -> SymMatrix {
        let mut m = self.clone();
        for (k, x) in m.entries.iter_mut().enumerate() {
            if k / self.n != k % self.n {
                *x += c;
            }
        }
        m
    }

    /// `P·M·Pᵀ` where `perm[i]` is the source row of row `i`.
    pub fn permuted(&self, perm: &[usize]) -> Result<SymMatrix> {
        if perm.len() != self.n {
            return Err(Error::OrderMismatch {
                left: self.n,
                right: perm.len(),
            });
        }
        Self::from_fn(self.n, |i, j| self.get(perm[i], perm[j]))
    }
}

/// `A(G)`: 0/1 symmetric with zero diagonal.
pub fn adjacency(g: &GraphSample) -> SymMatrix {
    let n = g.n();
    let mut m = SymMatrix::zeros(n).expect("graph order is positive");
    for (i, j) in g.edges() {
        m.entries[i * n + j] = 1.0;
        m.entries[j * n + i] = 1.0;
    }
    m
}

/// `L(G) = D(G) − A(G)`.
pub fn laplacian(g: &GraphSample) -> SymMatrix {
    let n = g.n();
    let mut m = adjacency(g).scaled(-1.0);
    for (i, d) in g.degrees().into_iter().enumerate() {
        m.entries[i * n + i] = d as f64;
    }
    m
}

/// `𝓛(G) = L(G) − (2|E|/n)·I`, the trace-free Laplacian whose spectrum
/// defines the Laplacian energy.
pub fn gutman_matrix(g: &GraphSample) -> SymMatrix {
    laplacian(g).shifted(-g.average_degree())
}

/// `Ā = A − p(J − I)`. `p` should be the sampling probability of `g`; it is
/// taken explicitly so callers may mis-center on purpose.
pub fn centered_adjacency(g: &GraphSample, p: f64) -> SymMatrix {
    adjacency(g).plus_off_diagonal(-p)
}

/// `L₁ = 𝓛(G) + p(J − I)`.
pub fn l1_matrix(g: &GraphSample, p: f64) -> SymMatrix {
    gutman_matrix(g).plus_off_diagonal(p)
}

/// `L₂ = L(G) − (n−1)p·I + p(J − I)`.
pub fn l2_matrix(g: &GraphSample, p: f64) -> SymMatrix {
    let n = g.n() as f64;
    laplacian(g).shifted(-(n - 1.0) * p).plus_off_diagonal(p)
}

/// `Δₙ = (σ√n)⁻¹ (2|E|/n − (n−1)p)`, the diagonal shift with
/// `(σ√n)⁻¹ L₂ = (σ√n)⁻¹ L₁ + Δₙ·I`.
pub fn centering_drift(g: &GraphSample, p: f64) -> Result<f64> {
    check_probability(p)?;
    let s = sigma(p);
    if s == 0.0 {
        return Err(Error::DegenerateSigma(p));
    }
    let n = g.n() as f64;
    Ok((g.average_degree() - (n - 1.0) * p) / (s * libm::sqrt(n)))
}
