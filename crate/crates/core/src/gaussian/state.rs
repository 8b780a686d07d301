use core::f64::consts::FRAC_1_SQRT_2;

#[allow(unused_imports)] // unused when a dependency links std
use num_traits::Float;

use super::params::{check_eta, ChannelConfig, ModeParams, ProductStateParams};
use crate::linalg::{c, cis, Mat4, Vec4, C64};
use crate::{Error, Result};

/// Tolerance on `τ ≥ 1` for a covariance matrix to count as physical.
pub const PHYSICALITY_TOL: f64 = 1e-9;

/// First moments `d = <u>` and covariance `Σ_ij = <{δu_i, δu_j†}>` for
/// `u = (a, b, a†, b†)`. The vacuum is `d = 0`, `Σ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianState {
    pub d: Vec4,
    pub sigma: Mat4,
}

/// `∂/∂φ` of the first moments and the covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDerivative {
    pub d_dot: Vec4,
    pub sigma_dot: Mat4,
}

/// The normally ordered moments an experiment would report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub a: C64,
    pub a2: C64,
    pub ad_a: C64,
    pub b: C64,
    pub b2: C64,
    pub bd_b: C64,
    pub ab: C64,
    pub a_bd: C64,
}

impl Moments {
    pub fn as_array(&self) -> [C64; 8] {
        [
            self.a, self.a2, self.ad_a, self.b, self.b2, self.bd_b, self.ab, self.a_bd,
        ]
    }

    pub fn max_abs_diff(&self, other: &Moments) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array().iter())
            .fold(0.0, |m, (x, y)| m.max((x - y).norm()))
    }
}

impl GaussianState {
    pub fn vacuum() -> Self {
        GaussianState {
            d: Vec4::zero(),
            sigma: Mat4::identity(),
        }
    }

    /// Applies the mode map `(a, b) -> m (a, b)`, i.e. `u -> (m ⊕ m*) u`.
    pub fn transform(&self, m: [[C64; 2]; 2]) -> Self {
        let l = mode_map(m);
        GaussianState {
            d: l.mul_vec(&self.d),
            sigma: self.sigma.congruence(&l),
        }
    }

    pub fn hermitian_deviation(&self) -> f64 {
        self.sigma.hermitian_deviation()
    }

    /// Largest violation of `d[2] = conj(d[0])`, `d[3] = conj(d[1])`.
    pub fn moment_conjugacy_deviation(&self) -> f64 {
        (self.d[2] - self.d[0].conj())
            .norm()
            .max((self.d[3] - self.d[1].conj()).norm())
    }

    pub fn max_abs_diff(&self, other: &GaussianState) -> f64 {
        self.d
            .max_abs_diff(&other.d)
            .max(self.sigma.max_abs_diff(&other.sigma))
    }

    /// Mean total photon number `<a†a> + <b†b>`.
    pub fn mean_photons(&self) -> f64 {
        let m = self.moments();
        m.ad_a.re + m.bd_b.re
    }

    /// Normally ordered moments recovered from `(d, Σ)`.
    pub fn moments(&self) -> Moments {
        let (d, s) = (&self.d, &self.sigma);
        Moments {
            a: d[0],
            a2: d[0] * d[0] + s[(0, 2)] * 0.5,
            ad_a: d[0].conj() * d[0] + (s[(0, 0)] - 1.0) * 0.5,
            b: d[1],
            b2: d[1] * d[1] + s[(1, 3)] * 0.5,
            bd_b: d[1].conj() * d[1] + (s[(1, 1)] - 1.0) * 0.5,
            ab: d[0] * d[1] + s[(0, 3)] * 0.5,
            a_bd: d[0] * d[1].conj() + s[(0, 1)] * 0.5,
        }
    }
}

fn mode_map(m: [[C64; 2]; 2]) -> Mat4 {
    let mut l = Mat4::zero();
    for i in 0..2 {
        for j in 0..2 {
            l[(i, j)] = m[i][j];
            l[(i + 2, j + 2)] = m[i][j].conj();
        }
    }
    l
}

/// Single-mode `<a>`, `<{δa, δa†}>` and `<{δa, δa}>` of `R(ω) D(α) S(ξ)|0>`.
fn single_mode_moments(m: &ModeParams) -> (C64, f64, C64) {
    let mean = cis(m.omega + m.beta) * m.alpha_abs;
    let normal = (2.0 * m.r).cosh();
    let anomalous = -cis(m.theta + 2.0 * m.omega) * (2.0 * m.r).sinh();
    (mean, normal, anomalous)
}

/// Moments of `R_a D_a S_a|0> ⊗ R_b D_b S_b|0>`.
pub fn build_input_state(params: &ProductStateParams) -> Result<GaussianState> {
    params.validate()?;
    let (ma, na, sa) = single_mode_moments(&params.a);
    let (mb, nb, sb) = single_mode_moments(&params.b);
    let d = Vec4([ma, mb, ma.conj(), mb.conj()]);
    let mut sigma = Mat4::real_diag([na, nb, na, nb]);
    // Σ_{0,2} = <{δa, (a†)†}> = <{δa, δa}>
    sigma[(0, 2)] = sa;
    sigma[(2, 0)] = sa.conj();
    sigma[(1, 3)] = sb;
    sigma[(3, 1)] = sb.conj();
    Ok(GaussianState { d, sigma })
}

/// 50:50 beam splitter `exp(-iπ/4 (a†b + ab†))`: `a -> (a - ib)/√2`,
/// `b -> (b - ia)/√2`.
pub fn apply_beam_splitter(state: &GaussianState) -> GaussianState {
    let t = c(FRAC_1_SQRT_2, 0.0);
    let r = c(0.0, -FRAC_1_SQRT_2);
    state.transform([[t, r], [r, t]])
}

/// Photon loss with per-arm transmissivities:
/// `d -> E d`, `Σ -> E Σ E + (1 - E²)` with `E = diag(√η_a, √η_b, √η_a, √η_b)`.
pub fn apply_loss(state: &GaussianState, eta_a: f64, eta_b: f64) -> Result<GaussianState> {
    check_eta(eta_a)?;
    check_eta(eta_b)?;
    let e = [eta_a.sqrt(), eta_b.sqrt(), eta_a.sqrt(), eta_b.sqrt()];
    let d = Vec4(core::array::from_fn(|i| state.d[i] * e[i]));
    let mut sigma = Mat4::from_fn(|i, j| state.sigma[(i, j)] * (e[i] * e[j]));
    for (i, ei) in e.iter().enumerate() {
        sigma[(i, i)] += 1.0 - ei * ei;
    }
    Ok(GaussianState { d, sigma })
}

/// Symmetric phase shift `R_a(φ/2) R_b(-φ/2)`: `a -> e^{iφ/2} a`,
/// `b -> e^{-iφ/2} b`.
///
/// At `φ = 2π` the covariance is unchanged but both first moments flip sign.
pub fn apply_phase(state: &GaussianState, phi: f64) -> GaussianState {
    let zero = c(0.0, 0.0);
    state.transform([[cis(phi / 2.0), zero], [zero, cis(-phi / 2.0)]])
}

/// Input preparation, beam splitter, loss and phase, in that order.
pub fn interferometer_output(
    params: &ProductStateParams,
    cfg: &ChannelConfig,
) -> Result<GaussianState> {
    cfg.validate()?;
    let input = build_input_state(params)?;
    let mixed = apply_beam_splitter(&input);
    let lossy = apply_loss(&mixed, cfg.eta_a, cfg.eta_b)?;
    Ok(apply_phase(&lossy, cfg.phi))
}

/// The phase generator acting on `u`: `u̇ = G u` with
/// `G = diag(i/2, -i/2, -i/2, i/2)`.
fn phase_generator() -> [C64; 4] {
    [c(0.0, 0.5), c(0.0, -0.5), c(0.0, -0.5), c(0.0, 0.5)]
}

/// Exact `∂/∂φ` of a state whose last step is [`apply_phase`].
///
/// `ḋ = G d` and `Σ̇ = G Σ - Σ G` (`G` is anti-Hermitian and diagonal).
pub fn phase_derivative(state: &GaussianState) -> StateDerivative {
    let g = phase_generator();
    StateDerivative {
        d_dot: Vec4(core::array::from_fn(|i| g[i] * state.d[i])),
        sigma_dot: Mat4::from_fn(|i, j| (g[i] - g[j]) * state.sigma[(i, j)]),
    }
}

/// Analytic `∂/∂φ` of [`interferometer_output`].
pub fn state_derivative(
    params: &ProductStateParams,
    cfg: &ChannelConfig,
) -> Result<StateDerivative> {
    Ok(phase_derivative(&interferometer_output(params, cfg)?))
}

/// Symplectic eigenvalues `τ₁ ≥ τ₂` of `Σ` from `A = KΣ`:
/// `τ = ½ √(tr A² ± √((tr A²)² - 16 |A|))`.
///
/// The discriminant equals `4 tr B²` with `B = A² - ¼ tr A²`, which is how it
/// is evaluated: `A²` is a multiple of the identity when `τ₁ = τ₂`, so `B`
/// vanishes to rounding there, while `(tr A²)² - 16|A|` would leave an
/// `O(ε)` residue whose square root is `O(√ε)`.
///
/// Fails with [`Error::NonPhysical`] when `τ₂ < 1 - 1e-9`.
pub fn symplectic_eigenvalues(state: &GaussianState) -> Result<(f64, f64)> {
    let (t1, t2) = symplectic_pair(&state.sigma);
    if !(t1 >= 1.0 - PHYSICALITY_TOL) {
        return Err(Error::NonPhysical { index: 1, tau: t1 });
    }
    if !(t2 >= 1.0 - PHYSICALITY_TOL) {
        return Err(Error::NonPhysical { index: 2, tau: t2 });
    }
    Ok((t1, t2))
}

/// `(τ₁², τ₂²)` without the physicality check.
pub(crate) fn symplectic_squares(sigma: &Mat4) -> (f64, f64) {
    let a = Mat4::k() * *sigma;
    let a2 = a * a;
    let mean = a2.trace().re / 4.0;
    let b = a2 - Mat4::identity().scale(mean);
    // τ₁² - τ₂²
    let split = b.trace_of_product(&b).re.max(0.0).sqrt();
    (mean + split / 2.0, mean - split / 2.0)
}

fn symplectic_pair(sigma: &Mat4) -> (f64, f64) {
    let (s1, s2) = symplectic_squares(sigma);
    (s1.max(0.0).sqrt(), s2.max(0.0).sqrt())
}
