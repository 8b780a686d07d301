#[allow(unused_imports)] // unused when a dependency links std
use num_traits::Float;

use crate::gaussian::{
    interferometer_output, symplectic_eigenvalues, symplectic_squares, ChannelConfig,
    GaussianState, ProductStateParams,
};
use crate::linalg::Mat4;
use crate::{Error, Result};

/// Default finite-difference step for [`qfi_fidelity_limit`].
pub const DEFAULT_FIDELITY_STEP: f64 = 3e-3;

/// Uhlmann fidelity of two two-mode Gaussian states,
///
/// ```text
/// F = 4 exp(-δd† (Σ₁+Σ₂)⁻¹ δd) / (√Γ + √Λ - √((√Γ + √Λ)² - Δ))
/// ```
///
/// with `Δ = |Σ₁+Σ₂|`, `Γ = |1 + KΣ₁KΣ₂|`, `Λ = |Σ₁+K||Σ₂+K|`.
///
/// `|Σ+K|` equals `∏(τ_j² - 1)` over the symplectic spectrum and is evaluated
/// that way: it vanishes on pure states and a direct determinant would leave
/// rounding noise that `√Λ` amplifies. For the same reason the radicand
/// `(√Γ + √Λ)² - Δ` is set to zero when it is below rounding level.
pub fn fidelity_gaussian(s1: &GaussianState, s2: &GaussianState) -> Result<f64> {
    symplectic_eigenvalues(s1)?;
    symplectic_eigenvalues(s2)?;
    let k = Mat4::k();
    let sum = s1.sigma + s2.sigma;
    let delta = sum.det().re;
    let gamma = (Mat4::identity() + k * s1.sigma * k * s2.sigma).det().re;
    let lambda = purity_factor(&s1.sigma) * purity_factor(&s2.sigma);
    let domain = || Error::FidelityDomain {
        gamma,
        lambda,
        delta,
    };
    if !(delta > 0.0) || gamma < 0.0 {
        return Err(domain());
    }

    let dd = s1.d - s2.d;
    let exponent = dd.dot(&sum.inverse()?.mul_vec(&dd)).re;

    let s = gamma.sqrt() + lambda.sqrt();
    let radicand = s * s - delta;
    let floor = 64.0 * f64::EPSILON * (s * s).max(delta);
    let root = if radicand.abs() <= floor {
        0.0
    } else if radicand < 0.0 {
        return Err(domain());
    } else {
        radicand.sqrt()
    };
    // s - √(s² - Δ) = Δ / (s + √(s² - Δ))
    let f = 4.0 * (-exponent).exp() * (s + root) / delta;
    if !(0.0..=1.0 + 1e-9).contains(&f) {
        return Err(Error::FidelityRange { value: f });
    }
    Ok(f)
}

/// `|Σ + K| = ∏(τ_j² - 1)`
fn purity_factor(sigma: &Mat4) -> f64 {
    let (s1, s2) = symplectic_squares(sigma);
    ((s1 - 1.0) * (s2 - 1.0)).max(0.0)
}

/// QFI as the limit `8 (1 - √F(ρ_φ, ρ_{φ+ε})) / ε²`, from steps `ε` and
/// `ε/2` combined by one Richardson step.
///
/// Fails with [`Error::NotConverged`] if the two estimates differ by more
/// than a quarter of the extrapolated value.
pub fn qfi_fidelity_limit(
    params: &ProductStateParams,
    cfg: &ChannelConfig,
    epsilon: f64,
) -> Result<f64> {
    if !(1e-6..=1e-2).contains(&epsilon) {
        return Err(Error::Epsilon { epsilon });
    }
    let here = interferometer_output(params, cfg)?;
    let estimate = |h: f64| -> Result<f64> {
        let there = interferometer_output(params, &cfg.with_phi(cfg.phi + h))?;
        let f = fidelity_gaussian(&here, &there)?;
        // 1 - √F = (1 - F) / (1 + √F)
        Ok(8.0 * (1.0 - f) / (1.0 + f.sqrt()) / (h * h))
    };
    let coarse = estimate(epsilon)?;
    let fine = estimate(epsilon / 2.0)?;
    let extrapolated = (4.0 * fine - coarse) / 3.0;
    if (coarse - fine).abs() > 0.25 * extrapolated.abs() + 1e-12 {
        return Err(Error::NotConverged { coarse, fine });
    }
    Ok(extrapolated)
}
