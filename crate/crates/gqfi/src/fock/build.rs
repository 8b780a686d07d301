use std::f64::consts::FRAC_PI_4;

use faer::{c64, Mat, MatRef, Side};
use gqfi_core::{ChannelConfig, ModeParams, ProductStateParams};

use super::expm::expm;
use crate::{Error, Result};

/// Largest truncation leakage [`build_fock_input`] accepts.
pub const INPUT_LEAKAGE_LIMIT: f64 = 1e-8;
/// Leakage targeted by [`choose_cutoff`] for oracle comparisons.
pub const ORACLE_LEAKAGE: f64 = 1e-12;
/// Largest total photon-number cutoff the dense oracle will use.
pub const MAX_CUTOFF: usize = 100;
/// Extra single-mode levels kept while exponentiating, so that the edge of
/// the truncated generators does not reach the retained amplitudes.
const PAD: usize = 40;
/// Kraus branches with squared norm below this are dropped (and counted as
/// leakage).
const PRUNE: f64 = 1e-24;
/// Eigenvalues of the output state at or below this are dropped.
pub const COMPRESS_FLOOR: f64 = 1e-15;

/// Two-mode Fock states `|n₁, n₂>` with `n₁ + n₂ ≤ n_max`, ordered by total
/// photon number and then by `n₂`.
///
/// Beam splitter, loss and phase all map this space into itself, so the only
/// truncation error is the weight of the input state outside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoModeBasis {
    n_max: usize,
}

impl TwoModeBasis {
    pub fn new(n_max: usize) -> Self {
        TwoModeBasis { n_max }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        (self.n_max + 1) * (self.n_max + 2) / 2
    }

    /// Offset of the block with total photon number `total`.
    pub fn sector_offset(total: usize) -> usize {
        total * (total + 1) / 2
    }

    pub fn index(&self, n1: usize, n2: usize) -> usize {
        debug_assert!(n1 + n2 <= self.n_max);
        Self::sector_offset(n1 + n2) + n2
    }

    /// `(n₁, n₂)` in index order.
    pub fn states(&self) -> impl Iterator<Item = (usize, usize)> {
        (0..=self.n_max).flat_map(|total| (0..=total).map(move |n2| (total - n2, n2)))
    }
}

/// Starting cutoff `max(16, ⌈N̄ + 6√(N̄+1)⌉)`; [`choose_cutoff`] grows it
/// until the leakage target is met.
pub fn cutoff_rule(n_bar: f64) -> usize {
    16.max((n_bar + 6.0 * (n_bar + 1.0).sqrt()).ceil() as usize)
}

fn padded_dim(n_max: usize) -> usize {
    2 * (n_max + 1) + PAD
}

/// Lowering operator on the first `dim` levels.
pub(crate) fn lowering(dim: usize) -> Mat<c64> {
    Mat::from_fn(dim, dim, |i, j| {
        if j == i + 1 {
            c64::new((j as f64).sqrt(), 0.0)
        } else {
            c64::new(0.0, 0.0)
        }
    })
}

/// `R(ω) D(α) S(ξ)|0>` on the first `dim` levels, each factor the
/// exponential of its truncated generator.
pub fn single_mode_amplitudes(mode: &ModeParams, dim: usize) -> Vec<c64> {
    let a = lowering(dim);
    let ad = a.adjoint().to_owned();
    let a2 = &a * &a;
    let ad2 = &ad * &ad;
    let xi = c64::from_polar(mode.r, mode.theta);
    let alpha = c64::from_polar(mode.alpha_abs, mode.beta);

    // S = exp(½(ξ* a² - ξ a†²)), D = exp(α a† - α* a), R = exp(iω a†a)
    let squeeze = Mat::from_fn(dim, dim, |i, j| (xi.conj() * a2[(i, j)] - xi * ad2[(i, j)]) * 0.5);
    let displace = Mat::from_fn(dim, dim, |i, j| alpha * ad[(i, j)] - alpha.conj() * a[(i, j)]);
    let rotate = Mat::from_fn(dim, dim, |i, j| {
        if i == j {
            c64::new(0.0, mode.omega * i as f64)
        } else {
            c64::new(0.0, 0.0)
        }
    });

    let mut v = Mat::<c64>::zeros(dim, 1);
    v[(0, 0)] = c64::new(1.0, 0.0);
    for generator in [squeeze, displace, rotate] {
        v = expm(generator.as_ref()) * &v;
    }
    (0..dim).map(|n| v[(n, 0)]).collect()
}

/// Weight of `p_a ⊗ p_b` on `n₁ + n₂ > n_max`, summed from the tails.
fn total_leakage(pa: &[f64], pb: &[f64], n_max: usize) -> f64 {
    let mut tail_b = vec![0.0; pb.len()];
    let mut acc = 0.0;
    for k in (0..pb.len()).rev() {
        tail_b[k] = acc;
        acc += pb[k];
    }
    let total_b = acc;
    pa.iter()
        .enumerate()
        .map(|(n1, p)| {
            let tail = if n1 > n_max {
                total_b
            } else {
                tail_b.get(n_max - n1).copied().unwrap_or(0.0)
            };
            p * tail
        })
        .sum()
}

fn populations(v: &[c64]) -> Vec<f64> {
    v.iter().map(|z| z.norm_sqr()).collect()
}

/// Smallest total cutoff at or above [`cutoff_rule`] whose truncation
/// leakage is below `tol`.
pub fn choose_cutoff(params: &ProductStateParams, tol: f64) -> Result<usize> {
    params.validate()?;
    let rule = cutoff_rule(params.mean_photons());
    let mut guess = rule.min(MAX_CUTOFF);
    loop {
        let dim = padded_dim(guess);
        let pa = populations(&single_mode_amplitudes(&params.a, dim));
        let pb = populations(&single_mode_amplitudes(&params.b, dim));
        let upper = (2 * guess + 1).min(MAX_CUTOFF);
        if let Some(n) = (rule..=upper).find(|&n| total_leakage(&pa, &pb, n) < tol) {
            return Ok(n);
        }
        if guess >= MAX_CUTOFF {
            return Err(Error::CutoffTooLarge { max: MAX_CUTOFF });
        }
        guess = (2 * guess).min(MAX_CUTOFF);
    }
}

/// Normalized two-mode input amplitudes on a truncated space.
#[derive(Debug, Clone)]
pub struct FockInput {
    pub basis: TwoModeBasis,
    pub amplitudes: Vec<c64>,
    /// Input weight outside the truncated space (removed by renormalizing).
    pub leakage: f64,
}

/// The product input state on the space `n₁ + n₂ ≤ n_max`.
///
/// Fails if more than [`INPUT_LEAKAGE_LIMIT`] of the norm lies outside it.
pub fn build_fock_input(params: &ProductStateParams, n_max: usize) -> Result<FockInput> {
    params.validate()?;
    let dim = padded_dim(n_max);
    let va = single_mode_amplitudes(&params.a, dim);
    let vb = single_mode_amplitudes(&params.b, dim);
    let leakage = total_leakage(&populations(&va), &populations(&vb), n_max);
    if leakage > INPUT_LEAKAGE_LIMIT {
        let suggested = choose_cutoff(params, INPUT_LEAKAGE_LIMIT).unwrap_or(MAX_CUTOFF);
        return Err(Error::Leakage {
            leakage,
            n_max,
            limit: INPUT_LEAKAGE_LIMIT,
            suggested,
        });
    }
    let basis = TwoModeBasis::new(n_max);
    let mut amplitudes: Vec<c64> = basis.states().map(|(n1, n2)| va[n1] * vb[n2]).collect();
    let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    amplitudes.iter_mut().for_each(|z| *z /= norm);
    Ok(FockInput {
        basis,
        amplitudes,
        leakage,
    })
}

/// Two-mode density matrix `ρ = V V†`, kept as the factor `V` whose columns
/// are the (unnormalized) branches produced by the channels.
#[derive(Debug, Clone)]
pub struct FockDensityMatrix {
    basis: TwoModeBasis,
    factor: Mat<c64>,
    /// Norm lost to truncation and branch pruning.
    pub leakage: f64,
}

impl FockDensityMatrix {
    pub fn pure(input: &FockInput) -> Self {
        let factor = Mat::from_fn(input.amplitudes.len(), 1, |i, _| input.amplitudes[i]);
        FockDensityMatrix {
            basis: input.basis,
            factor,
            leakage: input.leakage,
        }
    }

    pub fn basis(&self) -> TwoModeBasis {
        self.basis
    }

    pub fn n_max(&self) -> usize {
        self.basis.n_max
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn factor(&self) -> MatRef<'_, c64> {
        self.factor.as_ref()
    }

    /// Dense `ρ`.
    pub fn rho(&self) -> Mat<c64> {
        &self.factor * self.factor.adjoint()
    }

    pub fn trace(&self) -> f64 {
        self.factor.squared_norm_l2()
    }

    /// Same `ρ` with an orthogonal factor whose columns are the eigenvectors
    /// scaled by the square roots of their eigenvalues, in decreasing order.
    /// Eigenvalues at or below `floor` are dropped and their weight is added
    /// to the leakage.
    ///
    /// The spectrum comes from the smaller of `V†V` and `V V†`. In the first
    /// case the new columns are `V w_j`, which carry an absolute error of
    /// order machine epsilon even for tiny eigenvalues.
    pub fn compressed(&self, floor: f64) -> Result<Self> {
        let v = self.factor.as_ref();
        let total = self.trace();
        let (from_gram, gram) = if v.ncols() <= v.nrows() {
            (true, v.adjoint() * v)
        } else {
            (false, v * v.adjoint())
        };
        let eig = gram
            .self_adjoint_eigen(Side::Lower)
            .map_err(|_| Error::LinearAlgebra("eigendecomposition did not converge"))?;
        let p = eig.S().column_vector();
        let w = eig.U();
        let mut kept: Vec<usize> = (0..p.nrows()).filter(|&j| p[j].re > floor).collect();
        kept.sort_by(|&i, &j| p[j].re.total_cmp(&p[i].re));
        let basis_vectors = Mat::from_fn(w.nrows(), kept.len(), |i, j| {
            let col = kept[j];
            if from_gram {
                w[(i, col)]
            } else {
                w[(i, col)] * p[col].re.sqrt()
            }
        });
        let factor = if from_gram {
            v * &basis_vectors
        } else {
            basis_vectors
        };
        let kept_weight: f64 = kept.iter().map(|&j| p[j].re).sum();
        Ok(FockDensityMatrix {
            basis: self.basis,
            factor,
            leakage: self.leakage + (total - kept_weight).max(0.0),
        })
    }
}


/// `exp(-iπ/4 (a†b + ab†))` on the block with `total` photons, basis
/// `|total - k, k>`.
pub fn beam_splitter_block(total: usize) -> Mat<c64> {
    let n = total + 1;
    let generator = Mat::from_fn(n, n, |i, j| {
        let (n1, n2) = ((total - j) as f64, j as f64);
        // a†b lowers k, ab† raises it
        let amp = if i + 1 == j {
            ((n1 + 1.0) * n2).sqrt()
        } else if i == j + 1 {
            (n1 * (n2 + 1.0)).sqrt()
        } else {
            0.0
        };
        c64::new(0.0, -FRAC_PI_4 * amp)
    });
    expm(generator.as_ref())
}

/// 50:50 beam splitter, block by block in total photon number.
pub fn apply_beam_splitter(rho: &FockDensityMatrix) -> FockDensityMatrix {
    let mut factor = Mat::<c64>::zeros(rho.dim(), rho.factor.ncols());
    for total in 0..=rho.n_max() {
        let (offset, len) = (TwoModeBasis::sector_offset(total), total + 1);
        let block = beam_splitter_block(total) * rho.factor.subrows(offset, len);
        factor.subrows_mut(offset, len).copy_from(&block);
    }
    FockDensityMatrix {
        factor,
        ..rho.clone()
    }
}

/// `⟨n - p| K_p |n⟩ = √C(n,p) (1-η)^{p/2} η^{(n-p)/2}` for `n, p ≤ n_max`.
fn kraus_table(eta: f64, n_max: usize) -> Vec<Vec<f64>> {
    let mut binom = vec![vec![1.0f64; 1]; n_max + 1];
    for n in 1..=n_max {
        let prev = &binom[n - 1];
        let row: Vec<f64> = (0..=n)
            .map(|p| {
                let left = if p > 0 { prev[p - 1] } else { 0.0 };
                let right = prev.get(p).copied().unwrap_or(0.0);
                left + right
            })
            .collect();
        binom[n] = row;
    }
    (0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|p| {
                    binom[n][p].sqrt()
                        * (1.0 - eta).powf(p as f64 / 2.0)
                        * eta.powf((n - p) as f64 / 2.0)
                })
                .collect()
        })
        .collect()
}

/// Single-mode loss Kraus operators `K_p = (1-η)^{p/2} η^{a†a/2} a^p/√p!`
/// for `p = 0..=cutoff`, on `cutoff + 1` levels.
pub fn kraus_operators(eta: f64, cutoff: usize) -> Result<Vec<Mat<c64>>> {
    ChannelConfig::symmetric(eta, 0.0)?;
    let table = kraus_table(eta, cutoff);
    Ok((0..=cutoff)
        .map(|p| {
            Mat::from_fn(cutoff + 1, cutoff + 1, |i, j| {
                if j >= p && i == j - p {
                    c64::new(table[j][p], 0.0)
                } else {
                    c64::new(0.0, 0.0)
                }
            })
        })
        .collect())
}

/// Loss on both modes, `ρ -> Σ_{p,q} K_{a,p} K_{b,q} ρ K_{b,q}† K_{a,p}†`.
pub fn loss_channel(rho: &FockDensityMatrix, eta_a: f64, eta_b: f64) -> Result<FockDensityMatrix> {
    ChannelConfig::new(eta_a, eta_b, 0.0)?;
    let basis = rho.basis;
    let n_max = basis.n_max;
    let (ka, kb) = (kraus_table(eta_a, n_max), kraus_table(eta_b, n_max));
    let states: Vec<(usize, usize)> = basis.states().collect();

    let mut branches: Vec<Vec<c64>> = Vec::new();
    let mut dropped = 0.0;
    for col in 0..rho.factor.ncols() {
        let v = rho.factor.col(col);
        for p in 0..=n_max {
            for q in 0..=n_max - p {
                let mut w = vec![c64::new(0.0, 0.0); basis.dim()];
                let mut weight = 0.0;
                for (idx, &(n1, n2)) in states.iter().enumerate() {
                    if n1 >= p && n2 >= q {
                        let k = ka[n1][p] * kb[n2][q];
                        if k != 0.0 {
                            let z = v[idx] * k;
                            w[basis.index(n1 - p, n2 - q)] = z;
                            weight += z.norm_sqr();
                        }
                    }
                }
                if weight > PRUNE {
                    branches.push(w);
                } else {
                    dropped += weight;
                }
            }
        }
    }
    let factor = Mat::from_fn(basis.dim(), branches.len(), |i, j| branches[j][i]);
    Ok(FockDensityMatrix {
        basis,
        factor,
        leakage: rho.leakage + dropped,
    })
}

/// `U = exp(iφ(a†a - b†b)/2)`.
pub fn apply_phase(rho: &FockDensityMatrix, phi: f64) -> FockDensityMatrix {
    let phases: Vec<c64> = rho
        .basis
        .states()
        .map(|(n1, n2)| c64::from_polar(1.0, phi * (n1 as f64 - n2 as f64) / 2.0))
        .collect();
    let factor = Mat::from_fn(rho.dim(), rho.factor.ncols(), |i, j| phases[i] * rho.factor[(i, j)]);
    FockDensityMatrix {
        factor,
        ..rho.clone()
    }
}

/// `ρ_f = U K_a K_b B ρ_in B† K_b† K_a† U†` summed over Kraus indices.
pub fn output_density_matrix(
    params: &ProductStateParams,
    cfg: &ChannelConfig,
    n_max: usize,
) -> Result<FockDensityMatrix> {
    cfg.validate()?;
    let input = FockDensityMatrix::pure(&build_fock_input(params, n_max)?);
    let mixed = loss_channel(&apply_beam_splitter(&input), cfg.eta_a, cfg.eta_b)?;
    Ok(apply_phase(&mixed.compressed(COMPRESS_FLOOR)?, cfg.phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> f64 {
        (1..=n).map(|k| k as f64).product()
    }

    #[test]
    fn basis_indexing() {
        let basis = TwoModeBasis::new(5);
        assert_eq!(basis.dim(), 21);
        for (idx, (n1, n2)) in basis.states().enumerate() {
            assert_eq!(basis.index(n1, n2), idx);
        }
    }

    #[test]
    fn squeezed_vacuum_amplitudes() {
        let (r, theta) = (0.6f64, 0.9f64);
        let v = single_mode_amplitudes(&ModeParams::squeezed(r, theta), 80);
        for k in 0..15 {
            let expected = c64::from_polar(r.tanh().powi(k as i32), k as f64 * (theta + std::f64::consts::PI))
                * (factorial(2 * k).sqrt() / (2f64.powi(k as i32) * factorial(k)) / r.cosh().sqrt());
            assert!((v[2 * k] - expected).norm() < 1e-13, "k = {k}");
            assert!(v[2 * k + 1].norm() < 1e-15);
        }
    }

    #[test]
    fn coherent_amplitudes_are_poissonian() {
        let (abs, beta, omega) = (1.0f64, 0.4f64, 0.3f64);
        let mode = ModeParams {
            omega,
            ..ModeParams::coherent(abs, beta)
        };
        let v = single_mode_amplitudes(&mode, 60);
        for n in 0..20 {
            let expected = c64::from_polar(
                (-abs * abs / 2.0).exp() * abs.powi(n as i32) / factorial(n).sqrt(),
                n as f64 * (beta + omega),
            );
            assert!((v[n] - expected).norm() < 1e-14);
        }
        let mean: f64 = v.iter().enumerate().map(|(n, z)| n as f64 * z.norm_sqr()).sum();
        assert!((mean - 1.0).abs() < 1e-13);
    }

    #[test]
    fn squeezed_mean_photons() {
        let v = single_mode_amplitudes(&ModeParams::squeezed(1.0, 0.0), 200);
        let mean: f64 = v.iter().enumerate().map(|(n, z)| n as f64 * z.norm_sqr()).sum();
        assert!((mean - 1.0f64.sinh().powi(2)).abs() < 1e-10);
    }

    #[test]
    fn vacuum_input() {
        let input = build_fock_input(&ProductStateParams::vacuum(), 3).unwrap();
        assert_eq!(input.amplitudes[0], c64::new(1.0, 0.0));
        assert!(input.amplitudes[1..].iter().all(|z| z.norm() == 0.0));
        assert_eq!(input.leakage, 0.0);
    }

    #[test]
    fn leakage_is_checked() {
        let err = build_fock_input(&ProductStateParams::dsv(1.0), 10).unwrap_err();
        assert!(matches!(err, Error::Leakage { suggested, .. } if suggested > 10));
    }

    #[test]
    fn cutoff_grows_with_squeezing() {
        let small = choose_cutoff(&ProductStateParams::dsv(0.2), ORACLE_LEAKAGE).unwrap();
        let large = choose_cutoff(&ProductStateParams::dsv(0.55), ORACLE_LEAKAGE).unwrap();
        assert!(small >= 16 && large > small);
        let input = build_fock_input(&ProductStateParams::dsv(0.55), large).unwrap();
        assert!(input.leakage < ORACLE_LEAKAGE);
        assert!(matches!(
            choose_cutoff(&ProductStateParams::dsv(3.0), ORACLE_LEAKAGE),
            Err(Error::CutoffTooLarge { .. })
        ));
    }

    #[test]
    fn beam_splitter_is_unitary_and_sector_preserving() {
        for total in [1, 4, 9] {
            let u = beam_splitter_block(total);
            let prod = u.adjoint() * &u;
            for i in 0..=total {
                for j in 0..=total {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((prod[(i, j)] - c64::new(expected, 0.0)).norm() < 1e-13);
                }
            }
        }
        // |1,0> -> (|1,0> - i|0,1>)/√2
        let u = beam_splitter_block(1);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((u[(0, 0)] - c64::new(h, 0.0)).norm() < 1e-14);
        assert!((u[(1, 0)] - c64::new(0.0, -h)).norm() < 1e-14);
    }

    #[test]
    fn kraus_completeness() {
        let cutoff = 25;
        for eta in [0.0, 0.3, 0.77, 1.0] {
            let ks = kraus_operators(eta, cutoff).unwrap();
            let mut sum = Mat::<c64>::zeros(cutoff + 1, cutoff + 1);
            for k in &ks {
                sum += k.adjoint() * k;
            }
            for i in 0..=cutoff {
                for j in 0..=cutoff {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((sum[(i, j)] - c64::new(expected, 0.0)).norm() < 1e-10);
                }
            }
        }
        assert!(kraus_operators(1.5, 3).is_err());
    }

    #[test]
    fn loss_limits() {
        let p = ProductStateParams::dsdv(0.8, 0.3);
        let n_max = choose_cutoff(&p, ORACLE_LEAKAGE).unwrap();
        let rho = apply_beam_splitter(&FockDensityMatrix::pure(&build_fock_input(&p, n_max).unwrap()));
        let same = loss_channel(&rho, 1.0, 1.0).unwrap();
        assert_eq!(same.factor().ncols(), 1);
        assert!((same.rho() - rho.rho()).norm_max() < 1e-15);

        let dark = loss_channel(&rho, 0.0, 0.0).unwrap();
        let dense = dark.rho();
        assert!((dense[(0, 0)] - c64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((dark.trace() - 1.0).abs() < 1e-12);

        let lossy = loss_channel(&rho, 0.6, 0.35).unwrap();
        assert!((lossy.trace() - 1.0).abs() < 1e-12);
        assert!(loss_channel(&rho, -0.1, 0.5).is_err());
    }

    #[test]
    fn phase_commutes_with_loss() {
        let p = ProductStateParams::dsv(0.4);
        let n_max = choose_cutoff(&p, ORACLE_LEAKAGE).unwrap();
        let rho = apply_beam_splitter(&FockDensityMatrix::pure(&build_fock_input(&p, n_max).unwrap()));
        let after = apply_phase(&loss_channel(&rho, 0.7, 0.7).unwrap(), 0.9).rho();
        let before = loss_channel(&apply_phase(&rho, 0.9), 0.7, 0.7).unwrap().rho();
        assert!((after - before).norm_max() < 1e-12);
    }

    #[test]
    fn vacuum_stays_vacuum() {
        let cfg = ChannelConfig::new(0.4, 0.9, 1.1).unwrap();
        let rho = output_density_matrix(&ProductStateParams::vacuum(), &cfg, 4).unwrap().rho();
        assert!((rho[(0, 0)] - c64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((rho.squared_norm_l2() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn output_is_a_density_matrix() {
        let p = ProductStateParams::dsdv(0.7, 0.3);
        let cfg = ChannelConfig::symmetric(0.6, 0.4).unwrap();
        let rho = output_density_matrix(&p, &cfg, 24).unwrap();
        let dense = rho.rho();
        assert!((dense.clone() - dense.adjoint()).norm_max() < 1e-14);
        let eig = dense.self_adjoint_eigenvalues(faer::Side::Lower).unwrap();
        assert!(eig.iter().all(|&e| e > -1e-10));
        assert!((eig.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn compression_keeps_the_state() {
        let p = ProductStateParams::dsv(0.4);
        let input = FockDensityMatrix::pure(&build_fock_input(&p, 20).unwrap());
        let mixed = loss_channel(&apply_beam_splitter(&input), 0.6, 0.8).unwrap();
        let small = mixed.compressed(1e-18).unwrap();
        assert!(small.factor().ncols() < mixed.factor().ncols());
        assert!((small.rho() - mixed.rho()).norm_max() < 1e-9);
        let gram = small.factor().adjoint() * small.factor();
        for i in 0..gram.nrows() {
            for j in 0..i {
                assert!(gram[(i, j)].norm() < 1e-12);
            }
        }
    }
}
