#[allow(unused_imports)] // unused when a dependency links std
use num_traits::Float;

use crate::gaussian::{
    interferometer_output, state_derivative, symplectic_eigenvalues, ChannelConfig,
    GaussianState, ProductStateParams, StateDerivative,
};
use crate::linalg::Mat4;
use crate::{Error, Result};

/// Which denominator the `τ̇` term of the general formula uses.
///
/// The term is proportional to `τ̇₁², τ̇₂²` and vanishes whenever the
/// symplectic spectrum does not depend on the phase, which is the case for
/// every state produced by [`interferometer_output`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TauTermForm {
    /// `τ̇₂²/(τ₂⁴ - 1) - τ̇₁²/(τ₁⁴ - 1)`
    #[default]
    Symmetric,
    /// `τ̇₂²/(τ₂⁴ - 1) - τ̇₁²/(τ₁² - 1)`, as commonly printed.
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QfiOptions {
    pub tau_form: TauTermForm,
    /// States with `||A| - 1|` below this are treated as pure.
    pub near_pure_threshold: f64,
    /// Extra-loss steps `δ` used to take the pure-state limit.
    pub regularization_steps: [f64; 2],
}

impl Default for QfiOptions {
    fn default() -> Self {
        QfiOptions {
            tau_form: TauTermForm::Symmetric,
            near_pure_threshold: 1e-6,
            regularization_steps: [1e-4, 5e-5],
        }
    }
}

/// The quantum Fisher information split into its covariance and displacement
/// contributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QfiBreakdown {
    pub i_total: f64,
    /// Covariance contribution, `τ̇` term included.
    pub i_matrix_part: f64,
    /// `2 ḋ† Σ⁻¹ ḋ`
    pub i_displacement_part: f64,
    /// The `τ̇` term alone (already part of `i_matrix_part`).
    pub tau_term: f64,
    pub tau_1: f64,
    pub tau_2: f64,
    /// True when the state was pure enough to need the `δ → 0` limit.
    pub regularized: bool,
}

/// Negative totals beyond this are reported as an internal error.
const NEGATIVE_TOL: f64 = 1e-8;

pub fn qfi_general(state: &GaussianState, deriv: &StateDerivative) -> Result<QfiBreakdown> {
    qfi_general_with(state, deriv, &QfiOptions::default())
}

/// QFI of a two-mode Gaussian family from `(d, Σ)` and their `φ`-derivatives:
///
/// ```text
/// I = 1/(2(|A|-1)) { |A| tr[(A⁻¹Ȧ)²] + √|1+A²| tr[((1+A²)⁻¹Ȧ)²]
///                    + 4(τ₁² - τ₂²)(τ̇₂²/(τ₂⁴-1) - τ̇₁²/(τ₁⁴-1)) } + 2 ḋ†Σ⁻¹ḋ
/// ```
///
/// with `A = KΣ`. The first part is `0/0` for pure states. When
/// `||A| - 1|` is below `opts.near_pure_threshold` it is evaluated on the
/// state after extra uniform loss `1 - δ` for the two configured `δ` and
/// extrapolated linearly to `δ = 0`.
pub fn qfi_general_with(
    state: &GaussianState,
    deriv: &StateDerivative,
    opts: &QfiOptions,
) -> Result<QfiBreakdown> {
    let (tau_1, tau_2) = symplectic_eigenvalues(state)?;
    let sigma_inv = state.sigma.inverse()?;
    let d_dot = &deriv.d_dot;
    let i_displacement_part = 2.0 * d_dot.dot(&sigma_inv.mul_vec(d_dot)).re;

    let det_a = state.sigma.det().re;
    let frozen = deriv.sigma_dot.max_abs() <= 1e-14 * state.sigma.max_abs();
    let (i_matrix_part, tau_term, regularized) = if frozen {
        (0.0, 0.0, false)
    } else if (det_a - 1.0).abs() < opts.near_pure_threshold {
        let [d1, d2] = opts.regularization_steps;
        let at = |delta: f64| {
            let sigma = state.sigma.scale(1.0 - delta) + Mat4::identity().scale(delta);
            matrix_part(&sigma, &deriv.sigma_dot.scale(1.0 - delta), opts.tau_form)
        };
        let (m1, t1) = at(d1)?;
        let (m2, t2) = at(d2)?;
        let extrapolate = |f1: f64, f2: f64| (d1 * f2 - d2 * f1) / (d1 - d2);
        (extrapolate(m1, m2), extrapolate(t1, t2), true)
    } else {
        let (m, t) = matrix_part(&state.sigma, &deriv.sigma_dot, opts.tau_form)?;
        (m, t, false)
    };

    let i_total = i_matrix_part + i_displacement_part;
    if !i_total.is_finite() || i_total < -NEGATIVE_TOL {
        return Err(Error::NegativeQfi { value: i_total });
    }
    Ok(QfiBreakdown {
        i_total,
        i_matrix_part,
        i_displacement_part,
        tau_term,
        tau_1,
        tau_2,
        regularized,
    })
}

/// Covariance part of the formula and, separately, its `τ̇` term.
fn matrix_part(sigma: &Mat4, sigma_dot: &Mat4, form: TauTermForm) -> Result<(f64, f64)> {
    let k = Mat4::k();
    let a = k * *sigma;
    let a_dot = k * *sigma_dot;
    let det_a = a.det().re;
    let a_inv = sigma.inverse()? * k;
    let one_plus_a2 = Mat4::identity() + a * a;
    let b = one_plus_a2.inverse()?;

    let x = a_inv * a_dot;
    let y = b * a_dot;
    let first = det_a * x.trace_of_product(&x).re;
    let second = one_plus_a2.det().re.max(0.0).sqrt() * y.trace_of_product(&y).re;
    let tau = tau_rate_term(&a, &a_dot, &a_inv, det_a, form);

    let denom = 2.0 * (det_a - 1.0);
    Ok(((first + second + tau) / denom, tau / denom))
}

/// `4(τ₁² - τ₂²)(τ̇₂²/(τ₂⁴-1) - τ̇₁²/(τ₁⁴-1))` with `τ̇` obtained by
/// differentiating the trace/determinant expression for `τ`.
fn tau_rate_term(a: &Mat4, a_dot: &Mat4, a_inv: &Mat4, det_a: f64, form: TauTermForm) -> f64 {
    let t = a.trace_of_product(a).re;
    let t_dot = 2.0 * a.trace_of_product(a_dot).re;
    let det_dot = det_a * a_inv.trace_of_product(a_dot).re;
    let disc = t * t - 16.0 * det_a;
    if disc <= 1e-10 * t * t {
        // degenerate spectrum: the (τ₁² - τ₂²) prefactor vanishes
        return 0.0;
    }
    let s = disc.sqrt();
    let s_dot = (t * t_dot - 8.0 * det_dot) / s;
    let (sq1, sq2) = ((t + s) / 4.0, (t - s) / 4.0);
    let (tau1, tau2) = (sq1.sqrt(), sq2.max(0.0).sqrt());
    let rate1 = (t_dot + s_dot) / 4.0 / (2.0 * tau1);
    let rate2 = (t_dot - s_dot) / 4.0 / (2.0 * tau2);
    let ratio = |rate: f64, den: f64| {
        if rate * rate <= 1e-24 {
            0.0
        } else {
            rate * rate / den
        }
    };
    let den1 = match form {
        TauTermForm::Symmetric => sq1 * sq1 - 1.0,
        TauTermForm::AsPrinted => sq1 - 1.0,
    };
    4.0 * (sq1 - sq2) * (ratio(rate2, sq2 * sq2 - 1.0) - ratio(rate1, den1))
}

/// [`qfi_general`] on the interferometer output with the analytic derivative.
pub fn qfi_pipeline(params: &ProductStateParams, cfg: &ChannelConfig) -> Result<QfiBreakdown> {
    let state = interferometer_output(params, cfg)?;
    let deriv = state_derivative(params, cfg)?;
    qfi_general(&state, &deriv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{phase_derivative, ModeParams};
    use crate::linalg::{c, Vec4};
    use crate::qfi::qfi_dsv;
    use core::f64::consts::PI;

    #[test]
    fn dsv_half_loss() {
        let cfg = ChannelConfig::symmetric(0.5, 0.3).unwrap();
        let q = qfi_pipeline(&ProductStateParams::dsv_with_mean_photons(2.0), &cfg).unwrap();
        assert!((q.i_total - 4.0 / 3.0).abs() < 1e-10, "{}", q.i_total);
        assert!(q.i_displacement_part.abs() < 1e-15);
        assert!(q.tau_term.abs() < 1e-12);
        assert!(!q.regularized);
    }

    #[test]
    fn vacuum_has_no_information() {
        for eta in [0.0, 0.4, 1.0] {
            let cfg = ChannelConfig::symmetric(eta, 1.3).unwrap();
            let q = qfi_pipeline(&ProductStateParams::vacuum(), &cfg).unwrap();
            assert_eq!(q.i_total, 0.0);
        }
    }

    #[test]
    fn lossless_dsv_is_regularized() {
        let p = ProductStateParams::dsv_with_mean_photons(2.0);
        let q = qfi_pipeline(&p, &ChannelConfig::lossless(0.2)).unwrap();
        assert!(q.regularized);
        assert!((q.i_total - 8.0).abs() < 8e-6, "{}", q.i_total);
    }

    #[test]
    fn coherent_input_is_shot_noise_limited() {
        for eta in [0.2, 0.7, 1.0] {
            let p = ProductStateParams {
                a: ModeParams::coherent(1.7, 0.4),
                b: ModeParams::coherent(0.3, 2.0),
            };
            let cfg = ChannelConfig::symmetric(eta, 0.1).unwrap();
            let q = qfi_pipeline(&p, &cfg).unwrap();
            assert_eq!(q.i_matrix_part, 0.0);
            assert!((q.i_total - eta * p.mean_photons()).abs() < 1e-12);
        }
    }

    #[test]
    fn tau_term_vanishes_on_pipeline() {
        let p = ProductStateParams {
            a: ModeParams {
                omega: 0.3,
                alpha_abs: 0.8,
                beta: 1.0,
                r: 0.9,
                theta: 0.2,
            },
            b: ModeParams {
                omega: 1.1,
                alpha_abs: 1.2,
                beta: 2.0,
                r: 0.4,
                theta: 2.7,
            },
        };
        for cfg in [
            ChannelConfig::symmetric(0.6, 0.4).unwrap(),
            ChannelConfig::new(0.3, 0.9, 2.0).unwrap(),
        ] {
            let q = qfi_pipeline(&p, &cfg).unwrap();
            assert!(q.tau_term.abs() < 1e-12, "{}", q.tau_term);
            let printed = QfiOptions {
                tau_form: TauTermForm::AsPrinted,
                ..Default::default()
            };
            let state = interferometer_output(&p, &cfg).unwrap();
            let alt = qfi_general_with(&state, &phase_derivative(&state), &printed).unwrap();
            assert!((alt.i_total - q.i_total).abs() < 1e-12 * q.i_total);
        }
    }

    #[test]
    fn tau_term_nonzero_for_purity_changing_family() {
        // A thermal mode whose temperature moves with the parameter.
        let sigma = Mat4::real_diag([3.0, 1.5, 3.0, 1.5]);
        let state = GaussianState {
            d: Vec4::zero(),
            sigma,
        };
        let deriv = StateDerivative {
            d_dot: Vec4::zero(),
            sigma_dot: Mat4::real_diag([1.0, 0.0, 1.0, 0.0]),
        };
        let q = qfi_general(&state, &deriv).unwrap();
        assert!(q.tau_term.abs() > 1e-3);
        // single-mode thermal state: I = (dτ)²/(τ² - 1)
        let expected = 1.0 / (9.0 - 1.0);
        assert!((q.i_total - expected).abs() < 1e-12, "{}", q.i_total);
    }

    #[test]
    fn singular_covariance_is_an_error() {
        let state = GaussianState {
            d: Vec4([c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
            sigma: Mat4::real_diag([1e7, 1e-7, 1e7, 1e-7]),
        };
        let deriv = phase_derivative(&state);
        assert!(qfi_general(&state, &deriv).is_err());
    }

    #[test]
    fn phase_independence() {
        let p = ProductStateParams {
            a: ModeParams {
                omega: 0.2,
                alpha_abs: 1.1,
                beta: 0.5,
                r: 0.7,
                theta: 1.9,
            },
            b: ModeParams {
                omega: 2.2,
                alpha_abs: 0.6,
                beta: 4.0,
                r: 1.2,
                theta: 0.1,
            },
        };
        let base = qfi_pipeline(&p, &ChannelConfig::symmetric(0.8, 0.0).unwrap())
            .unwrap()
            .i_total;
        for phi in [0.7, PI, 2.1] {
            let q = qfi_pipeline(&p, &ChannelConfig::symmetric(0.8, phi).unwrap()).unwrap();
            assert!((q.i_total - base).abs() < 1e-10 * base);
        }
    }

    #[test]
    fn general_matches_dsv_formula_grid() {
        for i in 1..=6 {
            let r = 0.25 * i as f64;
            for j in 0..6 {
                let eta = 0.3 + 0.13 * j as f64;
                let p = ProductStateParams::dsv(r);
                let cfg = ChannelConfig::symmetric(eta, 0.5).unwrap();
                let q = qfi_pipeline(&p, &cfg).unwrap().i_total;
                let expected = qfi_dsv(p.mean_photons(), eta);
                assert!((q - expected).abs() < 1e-9 * expected, "r={r} eta={eta}");
            }
        }
    }
}
