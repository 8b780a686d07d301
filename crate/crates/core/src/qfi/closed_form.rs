use core::f64::consts::PI;
use core::fmt;

#[allow(unused_imports)] // unused when a dependency links std
use num_traits::Float;

use crate::gaussian::{check_eta, ModeParams, ProductStateParams};
use crate::{Error, Result};

/// Cosine tolerance when checking the optimality conditions.
pub const PHASE_TOL: f64 = 1e-9;

/// The three phase conditions under which the QFI reaches its maximum over
/// input phases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseCondition {
    /// `cos(θ_a - θ_b + 2ω_a - 2ω_b) = -1`, binding when both modes are squeezed.
    Squeezing,
    /// `cos(θ_b - 2(β_a + ω_a - ω_b)) = 1`, binding when `|α_a| > 0` and `r_b > 0`.
    DisplacementA,
    /// `cos(θ_a - 2(β_b - ω_a + ω_b)) = 1`, binding when `|α_b| > 0` and `r_a > 0`.
    DisplacementB,
}

impl PhaseCondition {
    pub const ALL: [PhaseCondition; 3] = [
        PhaseCondition::Squeezing,
        PhaseCondition::DisplacementA,
        PhaseCondition::DisplacementB,
    ];

    pub fn target(self) -> f64 {
        match self {
            PhaseCondition::Squeezing => -1.0,
            _ => 1.0,
        }
    }

    pub fn cosine(self, p: &ProductStateParams) -> f64 {
        let (a, b) = (&p.a, &p.b);
        match self {
            PhaseCondition::Squeezing => (a.theta - b.theta + 2.0 * a.omega - 2.0 * b.omega).cos(),
            PhaseCondition::DisplacementA => (b.theta - 2.0 * (a.beta + a.omega - b.omega)).cos(),
            PhaseCondition::DisplacementB => (a.theta - 2.0 * (b.beta - a.omega + b.omega)).cos(),
        }
    }

    /// Whether the condition affects the QFI for these magnitudes.
    pub fn binds(self, p: &ProductStateParams) -> bool {
        match self {
            PhaseCondition::Squeezing => p.a.r > 0.0 && p.b.r > 0.0,
            PhaseCondition::DisplacementA => p.a.alpha_abs > 0.0 && p.b.r > 0.0,
            PhaseCondition::DisplacementB => p.b.alpha_abs > 0.0 && p.a.r > 0.0,
        }
    }
}

impl fmt::Display for PhaseCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhaseCondition::Squeezing => "cos(theta_a - theta_b + 2 omega_a - 2 omega_b) = -1",
            PhaseCondition::DisplacementA => "cos(theta_b - 2(beta_a + omega_a - omega_b)) = 1",
            PhaseCondition::DisplacementB => "cos(theta_a - 2(beta_b - omega_a + omega_b)) = 1",
        })
    }
}

/// First binding condition violated by more than `tol`, if any.
pub fn violated_condition(p: &ProductStateParams, tol: f64) -> Option<(PhaseCondition, f64)> {
    PhaseCondition::ALL.into_iter().find_map(|c| {
        let cos = c.cosine(p);
        (c.binds(p) && (cos - c.target()).abs() > tol).then_some((c, cos))
    })
}

/// Optimal phases for given `ω_a, ω_b, θ_a`; magnitudes are kept.
pub fn optimal_phase_family(
    p: &ProductStateParams,
    omega_a: f64,
    omega_b: f64,
    theta_a: f64,
) -> ProductStateParams {
    let theta_b = theta_a + 2.0 * omega_a - 2.0 * omega_b + PI;
    let mode = |m: &ModeParams, omega, beta, theta| ModeParams {
        omega,
        beta,
        theta,
        ..*m
    };
    ProductStateParams {
        a: mode(&p.a, omega_a, theta_b / 2.0 - omega_a + omega_b, theta_a),
        b: mode(&p.b, omega_b, theta_a / 2.0 + omega_a - omega_b, theta_b),
    }
    .canonical()
}

/// `ω_a = ω_b = θ_a = β_b = 0`, `θ_b = π`, `β_a = π/2`.
pub fn optimal_phases(p: &ProductStateParams) -> ProductStateParams {
    optimal_phase_family(p, 0.0, 0.0, 0.0)
}

/// Maximal QFI over input phases for equal losses `η`:
///
/// ```text
/// I = η { [η cosh 2r_a + η cosh 2r_b + (1-η) cosh(2r_a - 2r_b) - η - 1] sinh²(r_a + r_b)
///         / [(1 - 2η + 2η²)(cosh 2r_a + cosh 2r_b) + 2η(1-η) cosh 2r_a cosh 2r_b - 2(1 - η(1-η))]
///       + [e^{r_a+r_b}(|α_a|² + |α_b|²) - 2η(e^{r_b} sinh r_a |α_a|² + e^{r_a} sinh r_b |α_b|²)]
///         / [(cosh r_a + (1-2η) sinh r_a)(cosh r_b + (1-2η) sinh r_b)] }
/// ```
///
/// The squeezing fraction is `0/0` when both modes are unsqueezed; it is
/// evaluated in terms of `x_j = cosh 2r_j - 1` and `y = cosh(2r_a - 2r_b) - 1`,
/// where it reads `[η(x_a + x_b) + (1-η)y] sinh²(r_a + r_b) / [x_a + x_b + 2η(1-η)x_a x_b]`,
/// and set to zero at `r_a = r_b = 0`.
pub fn qfi_optimal(r_a: f64, r_b: f64, alpha_a: f64, alpha_b: f64, eta: f64) -> f64 {
    let xa = 2.0 * r_a.sinh().powi(2);
    let xb = 2.0 * r_b.sinh().powi(2);
    let y = 2.0 * (r_a - r_b).sinh().powi(2);
    let den = xa + xb + 2.0 * eta * (1.0 - eta) * xa * xb;
    let squeezing = if den > 0.0 {
        (eta * (xa + xb) + (1.0 - eta) * y) * (r_a + r_b).sinh().powi(2) / den
    } else {
        0.0
    };
    let (a2, b2) = (alpha_a * alpha_a, alpha_b * alpha_b);
    let displacement = ((r_a + r_b).exp() * (a2 + b2)
        - 2.0 * eta * (r_b.exp() * r_a.sinh() * a2 + r_a.exp() * r_b.sinh() * b2))
        / ((r_a.cosh() + (1.0 - 2.0 * eta) * r_a.sinh())
            * (r_b.cosh() + (1.0 - 2.0 * eta) * r_b.sinh()));
    eta * (squeezing + displacement)
}

/// [`qfi_optimal`] after checking that `params` satisfies every binding
/// phase condition.
pub fn qfi_closed_form(params: &ProductStateParams, eta: f64) -> Result<f64> {
    params.validate()?;
    check_eta(eta)?;
    if let Some((condition, cosine)) = violated_condition(params, PHASE_TOL) {
        return Err(Error::NonOptimalPhases { condition, cosine });
    }
    let (a, b) = (&params.a, &params.b);
    Ok(qfi_optimal(a.r, b.r, a.alpha_abs, b.alpha_abs, eta))
}

/// Dual squeezed vacuum: `η² N̄(N̄+2) / (1 + (1-η)ηN̄)`.
pub fn qfi_dsv(n_bar: f64, eta: f64) -> f64 {
    eta * eta * n_bar * (n_bar + 2.0) / (1.0 + (1.0 - eta) * eta * n_bar)
}

/// Dual squeezed displaced vacuum with `|α_a| = |α_b| = α` and `r_a = r_b = r`:
/// `η { 2e^{2r}α²/(η + e^{2r}(1-η)) + η sinh²2r / (1 + η(1-η)(cosh 2r - 1)) }`.
pub fn qfi_dsdv(alpha: f64, r: f64, eta: f64) -> f64 {
    let e2r = (2.0 * r).exp();
    eta * (2.0 * e2r * alpha * alpha / (eta + e2r * (1.0 - eta))
        + eta * (2.0 * r).sinh().powi(2) / (1.0 + eta * (1.0 - eta) * ((2.0 * r).cosh() - 1.0)))
}

/// `J = √(I/(ηN̄))` for the dual squeezed vacuum.
pub fn j_dsv(n_bar: f64, eta: f64) -> f64 {
    (qfi_dsv(n_bar, eta) / (eta * n_bar)).sqrt()
}
