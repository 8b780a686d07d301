use std::fmt;
use std::str::FromStr;

use faer::{c64, Mat, MatRef, Side};
use gqfi_core::gaussian::Moments;

use super::build::{FockDensityMatrix, TwoModeBasis};
use crate::{Error, Result};

/// Eigenvalues below this are treated as zero.
const EIGEN_FLOOR: f64 = 1e-14;
/// Pairs with `p_j + p_k` at or below this are left out of the QFI sum.
const PAIR_FLOOR: f64 = 1e-12;

/// `H = (a†a - b†b)/2`, diagonal in the Fock basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGenerator {
    pub diagonal: Vec<f64>,
}

impl PhaseGenerator {
    pub fn new(basis: TwoModeBasis) -> Self {
        PhaseGenerator {
            diagonal: basis
                .states()
                .map(|(n1, n2)| (n1 as f64 - n2 as f64) / 2.0)
                .collect(),
        }
    }

    pub fn matrix(&self) -> Mat<c64> {
        let n = self.diagonal.len();
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                c64::new(self.diagonal[i], 0.0)
            } else {
                c64::new(0.0, 0.0)
            }
        })
    }
}

/// `I = 2 Σ_{jk} (p_j - p_k)²/(p_j + p_k) |<j|H|k>|²` over the spectrum of `ρ`.
///
/// The spectrum of `ρ_φ` does not depend on `φ` (the family is unitary), so
/// the eigenvalue-derivative term is absent. Eigenpairs come from the thin
/// SVD of the factor `V` (`ρ = V V†`); pairs with one index in the null space
/// are summed in closed form through `<j|H²|j> - Σ_{k in support} |<j|H|k>|²`.
pub fn qfi_spectral(rho: &FockDensityMatrix, generator: &PhaseGenerator) -> Result<f64> {
    let svd = rho
        .factor()
        .thin_svd()
        .map_err(|_| Error::LinearAlgebra("SVD did not converge"))?;
    let sigma = svd.S().column_vector();
    let u = svd.U();
    let probs: Vec<f64> = (0..sigma.nrows())
        .map(|j| sigma[j].re * sigma[j].re)
        .take_while(|&p| p > EIGEN_FLOOR)
        .collect();
    let support = u.subcols(0, probs.len());
    Ok(spectral_sum(&probs, support, &generator.diagonal, true))
}

/// [`qfi_spectral`] by full diagonalization of a dense `ρ`; a reference for
/// the factored version.
pub fn qfi_spectral_dense(rho: MatRef<'_, c64>, generator: &PhaseGenerator) -> Result<f64> {
    let eig = rho
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::LinearAlgebra("eigendecomposition did not converge"))?;
    let s = eig.S().column_vector();
    let probs: Vec<f64> = (0..s.nrows()).map(|j| s[j].re.max(0.0)).collect();
    Ok(spectral_sum(&probs, eig.U(), &generator.diagonal, false))
}

/// QFI sum over eigenvectors `u` (columns) with eigenvalues `probs`. With
/// `complete_null_space`, the columns span only the support and the
/// remaining pairs are added in closed form.
fn spectral_sum(probs: &[f64], u: MatRef<'_, c64>, h: &[f64], complete_null_space: bool) -> f64 {
    let hu = Mat::from_fn(u.nrows(), u.ncols(), |i, j| u[(i, j)] * h[i]);
    let hjk = u.adjoint() * &hu;
    let mut total = 0.0;
    for (j, &pj) in probs.iter().enumerate() {
        let mut in_support = 0.0;
        for (k, &pk) in probs.iter().enumerate() {
            let amp = hjk[(j, k)].norm_sqr();
            in_support += amp;
            if pj + pk > PAIR_FLOOR {
                total += 2.0 * (pj - pk).powi(2) / (pj + pk) * amp;
            }
        }
        if complete_null_space && pj > PAIR_FLOOR {
            let h2: f64 = (0..u.nrows()).map(|i| h[i] * h[i] * u[(i, j)].norm_sqr()).sum();
            total += 4.0 * pj * (h2 - in_support).max(0.0);
        }
    }
    total
}

/// Uhlmann fidelity `(tr √(√ρ₁ ρ₂ √ρ₁))²`.
///
/// With `ρ_i = V_i V_i†` the trace norm `||√ρ₁ √ρ₂||₁` equals the sum of the
/// singular values of `V₁† V₂`, which is what is evaluated.
pub fn uhlmann_fidelity(rho_1: &FockDensityMatrix, rho_2: &FockDensityMatrix) -> Result<f64> {
    if rho_1.n_max() != rho_2.n_max() {
        return Err(Error::CutoffMismatch {
            left: rho_1.n_max(),
            right: rho_2.n_max(),
        });
    }
    let overlap = rho_1.factor().adjoint() * rho_2.factor();
    let singular = overlap
        .singular_values()
        .map_err(|_| Error::LinearAlgebra("SVD did not converge"))?;
    Ok(singular.iter().sum::<f64>().powi(2))
}

/// Uhlmann fidelity of dense density matrices through Hermitian square
/// roots; eigenvalues below `1e-14` are set to zero.
pub fn uhlmann_fidelity_dense(rho_1: MatRef<'_, c64>, rho_2: MatRef<'_, c64>) -> Result<f64> {
    if rho_1.nrows() != rho_2.nrows() {
        return Err(Error::CutoffMismatch {
            left: rho_1.nrows(),
            right: rho_2.nrows(),
        });
    }
    let root = hermitian_sqrt(rho_1)?;
    let inner = &root * rho_2 * &root;
    let eig = inner
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|_| Error::LinearAlgebra("eigendecomposition did not converge"))?;
    let trace: f64 = eig.iter().filter(|&&e| e > EIGEN_FLOOR).map(|e| e.sqrt()).sum();
    Ok(trace * trace)
}

fn hermitian_sqrt(m: MatRef<'_, c64>) -> Result<Mat<c64>> {
    let eig = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::LinearAlgebra("eigendecomposition did not converge"))?;
    let s = eig.S().column_vector();
    let u = eig.U();
    let scaled = Mat::from_fn(u.nrows(), u.ncols(), |i, j| {
        let e = s[j].re;
        u[(i, j)] * if e > EIGEN_FLOOR { e.sqrt() } else { 0.0 }
    });
    Ok(&scaled * u.adjoint())
}

/// The operators whose expectation values [`moment`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentOp {
    A,
    A2,
    NumA,
    B,
    B2,
    NumB,
    AB,
    ABdag,
}

impl MomentOp {
    pub const ALL: [MomentOp; 8] = [
        MomentOp::A,
        MomentOp::A2,
        MomentOp::NumA,
        MomentOp::B,
        MomentOp::B2,
        MomentOp::NumB,
        MomentOp::AB,
        MomentOp::ABdag,
    ];

    pub fn id(self) -> &'static str {
        match self {
            MomentOp::A => "a",
            MomentOp::A2 => "a2",
            MomentOp::NumA => "ada",
            MomentOp::B => "b",
            MomentOp::B2 => "b2",
            MomentOp::NumB => "bdb",
            MomentOp::AB => "ab",
            MomentOp::ABdag => "abd",
        }
    }

    /// Powers `(k_a, k_b)` of the lowering operators and `(c_a, c_b)` of the
    /// raising ones, applied as `a†^{c_a} b†^{c_b} a^{k_a} b^{k_b}`.
    fn powers(self) -> ([usize; 2], [usize; 2]) {
        match self {
            MomentOp::A => ([1, 0], [0, 0]),
            MomentOp::A2 => ([2, 0], [0, 0]),
            MomentOp::NumA => ([1, 0], [1, 0]),
            MomentOp::B => ([0, 1], [0, 0]),
            MomentOp::B2 => ([0, 2], [0, 0]),
            MomentOp::NumB => ([0, 1], [0, 1]),
            MomentOp::AB => ([1, 1], [0, 0]),
            MomentOp::ABdag => ([1, 0], [0, 1]),
        }
    }
}

impl fmt::Display for MomentOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for MomentOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let op = match s {
            "a" => MomentOp::A,
            "a2" | "a^2" => MomentOp::A2,
            "ada" | "a+a" | "n_a" => MomentOp::NumA,
            "b" => MomentOp::B,
            "b2" | "b^2" => MomentOp::B2,
            "bdb" | "b+b" | "n_b" => MomentOp::NumB,
            "ab" => MomentOp::AB,
            "abd" | "ab+" => MomentOp::ABdag,
            _ => return Err(Error::UnknownOperator(s.to_owned())),
        };
        Ok(op)
    }
}

/// `tr(ρ · op)` with the truncated ladder operators. Every operator in
/// [`MomentOp`] maps the truncated space into itself, so this is exact on it.
pub fn moment(rho: &FockDensityMatrix, op: MomentOp) -> c64 {
    let basis = rho.basis();
    let ([ka, kb], [ca, cb]) = op.powers();
    let falling = |n: usize, k: usize| (0..k).map(|i| (n - i) as f64).product::<f64>().sqrt();
    // op|n₁,n₂> = coeff |m₁,m₂>
    let mut entries = Vec::new();
    for (idx, (n1, n2)) in basis.states().enumerate() {
        if n1 < ka || n2 < kb {
            continue;
        }
        let (l1, l2) = (n1 - ka, n2 - kb);
        let (m1, m2) = (l1 + ca, l2 + cb);
        if m1 + m2 > basis.n_max() {
            continue;
        }
        let coeff = falling(n1, ka) * falling(n2, kb) * falling(m1, ca) * falling(m2, cb);
        entries.push((idx, basis.index(m1, m2), coeff));
    }
    let v = rho.factor();
    let mut total = c64::new(0.0, 0.0);
    for col in 0..v.ncols() {
        for &(from, to, coeff) in &entries {
            total += v[(to, col)].conj() * v[(from, col)] * coeff;
        }
    }
    total
}

/// The eight moments in the order of [`Moments`].
pub fn moments(rho: &FockDensityMatrix) -> Moments {
    let m = |op| moment(rho, op);
    Moments {
        a: m(MomentOp::A),
        a2: m(MomentOp::A2),
        ad_a: m(MomentOp::NumA),
        b: m(MomentOp::B),
        b2: m(MomentOp::B2),
        bd_b: m(MomentOp::NumB),
        ab: m(MomentOp::AB),
        a_bd: m(MomentOp::ABdag),
    }
}
