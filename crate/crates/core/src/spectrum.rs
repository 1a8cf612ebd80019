//! Small real symmetric matrices over labeled hydrogen states, and their
//! eigendecomposition.
//!
//! The matrix is split into independent blocks (connected components of the
//! nonzero off-diagonal pattern). Blocks of size one and two are solved in
//! closed form; larger blocks fall back to cyclic Jacobi rotations.
//!
//! Output convention: eigenpairs sorted by descending eigenvalue; within a
//! degenerate cluster, by the index of the first nonzero coefficient. Every
//! eigenvector has its first nonzero coefficient positive.

use crate::error::{Error, Result};
use crate::hydrogen::QuantumNumbers;
use crate::units::{constants, Dimension, Quantity, System};

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationMatrix {
    basis: Vec<QuantumNumbers>,
    entries: Vec<f64>,
    system: System,
}

impl PerturbationMatrix {
    /// `rows` is row-major and must be `basis.len()` square. Entries are
    /// energies in `system`.
    pub fn new(basis: Vec<QuantumNumbers>, rows: Vec<Vec<f64>>, system: System) -> Result<Self> {
        let dim = basis.len();
        let cols = rows.first().map_or(0, Vec::len);
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::ShapeMismatch {
                basis: dim,
                rows: rows.len(),
                cols,
            });
        }
        Ok(Self {
            basis,
            entries: rows.into_iter().flatten().collect(),
            system,
        })
    }

    pub fn zeros(basis: Vec<QuantumNumbers>, system: System) -> Self {
        let dim = basis.len();
        Self {
            basis,
            entries: vec![0.0; dim * dim],
            system,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QuantumNumbers] {
        &self.basis
    }

    pub fn system(&self) -> System {
        self.system
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        let d = self.dim();
        self.entries[row * d + col] = value;
    }

    /// Sets both `(row, col)` and `(col, row)`.
    pub fn set_symmetric(&mut self, row: usize, col: usize, value: f64) {
        self.set(row, col, value);
        self.set(col, row, value);
    }

    pub fn element(&self, row: usize, col: usize) -> Quantity {
        Quantity::new(self.get(row, col), Dimension::Energy, self.system)
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| i == j || self.get(i, j) == 0.0))
    }

    /// First pair `(i, j)` whose asymmetry exceeds `rel_tol * max|m|`.
    fn asymmetry(&self, rel_tol: f64) -> Option<(usize, usize, f64)> {
        let tol = rel_tol * self.max_abs();
        let d = self.dim();
        for i in 0..d {
            for j in (i + 1)..d {
                let a = (self.get(i, j) - self.get(j, i)).abs();
                if a > tol {
                    return Some((i, j, a));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self, rel_tol: f64) -> bool {
        self.asymmetry(rel_tol).is_none()
    }

    pub fn to_system(&self, system: System) -> PerturbationMatrix {
        if system == self.system {
            return self.clone();
        }
        let unit = constants().hartree;
        let factor = match system {
            System::Si => unit,
            System::Atomic => 1.0 / unit,
        };
        PerturbationMatrix {
            basis: self.basis.clone(),
            entries: self.entries.iter().map(|v| v * factor).collect(),
            system,
        }
    }

    fn check_same_shape(&self, other: &PerturbationMatrix) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::ShapeMismatch {
                basis: self.dim(),
                rows: other.dim(),
                cols: other.dim(),
            });
        }
        if self.system != other.system {
            return Err(Error::UnitMismatch {
                lhs_dim: Dimension::Energy,
                lhs_sys: self.system,
                rhs_dim: Dimension::Energy,
                rhs_sys: other.system,
            });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &PerturbationMatrix) -> Result<Vec<f64>> {
        self.check_same_shape(other)?;
        let d = self.dim();
        let mut out = vec![0.0; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Entries of `[self, other]` (units: energy^2 in the shared system).
    pub fn commutator(&self, other: &PerturbationMatrix) -> Result<Vec<f64>> {
        let ab = self.matmul(other)?;
        let ba = other.matmul(self)?;
        Ok(ab.iter().zip(&ba).map(|(x, y)| x - y).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    /// Coefficients over the matrix basis.
    pub vector: Vec<f64>,
}

impl EigenPair {
    fn first_nonzero(&self) -> usize {
        self.vector
            .iter()
            .position(|c| c.abs() > 1e-12)
            .unwrap_or(self.vector.len())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub pairs: Vec<EigenPair>,
    pub basis: Vec<QuantumNumbers>,
    pub system: System,
}

impl EigenDecomposition {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    pub fn eigenvalue(&self, index: usize) -> Quantity {
        Quantity::new(self.pairs[index].value, Dimension::Energy, self.system)
    }

    /// `sum_i lambda_i v_i v_i^T`, row-major.
    pub fn reconstruct(&self) -> Vec<f64> {
        let d = self.basis.len();
        let mut out = vec![0.0; d * d];
        for p in &self.pairs {
            for i in 0..d {
                for j in 0..d {
                    out[i * d + j] += p.value * p.vector[i] * p.vector[j];
                }
            }
        }
        out
    }

    /// Projector onto the span of all eigenvectors whose eigenvalue lies
    /// within `tol` of `value`.
    pub fn projector(&self, value: f64, tol: f64) -> Vec<f64> {
        let d = self.basis.len();
        let mut out = vec![0.0; d * d];
        for p in self.pairs.iter().filter(|p| (p.value - value).abs() <= tol) {
            for i in 0..d {
                for j in 0..d {
                    out[i * d + j] += p.vector[i] * p.vector[j];
                }
            }
        }
        out
    }
}

const SYMMETRY_TOL: f64 = 1e-14;

pub fn diagonalize(m: &PerturbationMatrix) -> Result<EigenDecomposition> {
    if let Some((row, col, asymmetry)) = m.asymmetry(SYMMETRY_TOL) {
        return Err(Error::NotSymmetric {
            row,
            col,
            asymmetry,
        });
    }
    let d = m.dim();
    let mut pairs = Vec::with_capacity(d);
    for block in blocks(m) {
        let local = match block.len() {
            1 => vec![(m.get(block[0], block[0]), vec![1.0])],
            2 => solve_2x2(
                m.get(block[0], block[0]),
                m.get(block[0], block[1]),
                m.get(block[1], block[1]),
            ),
            _ => jacobi(m, &block),
        };
        for (value, coeffs) in local {
            let mut vector = vec![0.0; d];
            for (k, &i) in block.iter().enumerate() {
                vector[i] = coeffs[k];
            }
            pairs.push(EigenPair { value, vector });
        }
    }
    for p in &mut pairs {
        fix_phase(&mut p.vector);
    }
    sort_pairs(&mut pairs, m.max_abs());
    Ok(EigenDecomposition {
        pairs,
        basis: m.basis.clone(),
        system: m.system,
    })
}

/// Connected components of the off-diagonal sparsity graph.
fn blocks(m: &PerturbationMatrix) -> Vec<Vec<usize>> {
    let d = m.dim();
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut i = i;
        while p[i] != r {
            let next = p[i];
            p[i] = r;
            i = next;
        }
        r
    }
    for i in 0..d {
        for j in (i + 1)..d {
            if m.get(i, j) != 0.0 || m.get(j, i) != 0.0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b.max(a)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of = vec![usize::MAX; d];
    for i in 0..d {
        let r = find(&mut parent, i);
        if root_of[r] == usize::MAX {
            root_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_of[r]].push(i);
    }
    groups
}

/// Eigenpairs of `[[a, b], [b, d]]` with `b != 0`.
fn solve_2x2(a: f64, b: f64, d: f64) -> Vec<(f64, Vec<f64>)> {
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let radius = half.hypot(b);
    let mut out = Vec::with_capacity(2);
    for lambda in [mean + radius, mean - radius] {
        // pick the better conditioned of the two null-space candidates
        let c1 = [b, lambda - a];
        let c2 = [lambda - d, b];
        let c = if c1[0].hypot(c1[1]) >= c2[0].hypot(c2[1]) {
            c1
        } else {
            c2
        };
        let norm = c[0].hypot(c[1]);
        out.push((lambda, vec![c[0] / norm, c[1] / norm]));
    }
    out
}

fn jacobi(m: &PerturbationMatrix, block: &[usize]) -> Vec<(f64, Vec<f64>)> {
    let n = block.len();
    let mut a: Vec<f64> = block
        .iter()
        .flat_map(|&i| block.iter().map(move |&j| (i, j)))
        .map(|(i, j)| m.get(i, j))
        .collect();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale = a.iter().fold(0.0f64, |s, x| s.max(x.abs()));
    for _sweep in 0..64 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].powi(2))
            .sum();
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    (0..n)
        .map(|j| (a[j * n + j], (0..n).map(|i| v[i * n + j]).collect()))
        .collect()
}

fn fix_phase(v: &mut [f64]) {
    if let Some(first) = v.iter().copied().find(|c| c.abs() > 1e-12) {
        if first < 0.0 {
            v.iter_mut().for_each(|c| *c = -*c);
        }
    }
    // exact zeros stay +0.0
    v.iter_mut().for_each(|c| {
        if *c == 0.0 {
            *c = 0.0
        }
    });
}

fn sort_pairs(pairs: &mut [EigenPair], scale: f64) {
    pairs.sort_by(|a, b| b.value.total_cmp(&a.value));
    let tol = 1e-12 * scale;
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && (pairs[start].value - pairs[end].value).abs() <= tol {
            end += 1;
        }
        pairs[start..end].sort_by_key(EigenPair::first_nonzero);
        start = end;
    }
}
