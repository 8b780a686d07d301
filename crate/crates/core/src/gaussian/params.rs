use core::f64::consts::{FRAC_PI_2, PI, TAU};

#[allow(unused_imports)] // unused when a dependency links std
use num_traits::Float;

use crate::{Error, Result};

/// One input mode, `R(ω) D(α) S(ξ)|0>` with `α = |α| e^{iβ}` and `ξ = r e^{iθ}`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModeParams {
    /// Rotation phase ω.
    pub omega: f64,
    /// Displacement magnitude |α|.
    pub alpha_abs: f64,
    /// Displacement phase β.
    pub beta: f64,
    /// Squeezing magnitude r.
    pub r: f64,
    /// Squeezing phase θ.
    pub theta: f64,
}

impl ModeParams {
    pub fn squeezed(r: f64, theta: f64) -> Self {
        ModeParams {
            r,
            theta,
            ..Default::default()
        }
    }

    pub fn coherent(alpha_abs: f64, beta: f64) -> Self {
        ModeParams {
            alpha_abs,
            beta,
            ..Default::default()
        }
    }

    /// `|α|² + sinh²(r)`
    pub fn mean_photons(&self) -> f64 {
        self.alpha_abs * self.alpha_abs + self.r.sinh().powi(2)
    }

    fn validate(&self, mode: char) -> Result<()> {
        let names: [&'static str; 5] = if mode == 'a' {
            ["omega_a", "alpha_abs_a", "beta_a", "r_a", "theta_a"]
        } else {
            ["omega_b", "alpha_abs_b", "beta_b", "r_b", "theta_b"]
        };
        let values = [self.omega, self.alpha_abs, self.beta, self.r, self.theta];
        for (name, value) in names.into_iter().zip(values) {
            if !value.is_finite() {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        for (name, value) in [(names[1], self.alpha_abs), (names[3], self.r)] {
            if value < 0.0 {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        Ok(())
    }

    fn canonical(&self) -> Self {
        ModeParams {
            omega: wrap_angle(self.omega),
            beta: wrap_angle(self.beta),
            theta: wrap_angle(self.theta),
            ..*self
        }
    }
}

/// The ten real parameters of a two-mode Gaussian product input.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProductStateParams {
    pub a: ModeParams,
    pub b: ModeParams,
}

impl ProductStateParams {
    pub fn new(a: ModeParams, b: ModeParams) -> Result<Self> {
        let p = ProductStateParams { a, b };
        p.validate()?;
        Ok(p)
    }

    pub fn vacuum() -> Self {
        Self::default()
    }

    /// Dual squeezed vacuum `|r> ⊗ |-r>`.
    pub fn dsv(r: f64) -> Self {
        ProductStateParams {
            a: ModeParams::squeezed(r, 0.0),
            b: ModeParams::squeezed(r, PI),
        }
    }

    /// Dual squeezed vacuum with total mean photon number `n_bar = 2 sinh²(r)`.
    pub fn dsv_with_mean_photons(n_bar: f64) -> Self {
        Self::dsv((n_bar / 2.0).sqrt().asinh())
    }

    /// Dual squeezed, displaced vacuum `|iα, r> ⊗ |α, -r>`.
    pub fn dsdv(alpha: f64, r: f64) -> Self {
        ProductStateParams {
            a: ModeParams {
                alpha_abs: alpha,
                beta: FRAC_PI_2,
                ..ModeParams::squeezed(r, 0.0)
            },
            b: ModeParams {
                alpha_abs: alpha,
                ..ModeParams::squeezed(r, PI)
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.a.validate('a')?;
        self.b.validate('b')
    }

    /// Copy with every phase reduced into `[0, 2π)`.
    pub fn canonical(&self) -> Self {
        ProductStateParams {
            a: self.a.canonical(),
            b: self.b.canonical(),
        }
    }

    pub fn mean_photons(&self) -> f64 {
        self.a.mean_photons() + self.b.mean_photons()
    }
}

/// Interferometer settings: per-arm transmissivities and the phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    pub eta_a: f64,
    pub eta_b: f64,
    pub phi: f64,
}

impl ChannelConfig {
    pub fn new(eta_a: f64, eta_b: f64, phi: f64) -> Result<Self> {
        check_eta(eta_a)?;
        check_eta(eta_b)?;
        if !phi.is_finite() {
            return Err(Error::InvalidParameter {
                name: "phi",
                value: phi,
            });
        }
        Ok(ChannelConfig { eta_a, eta_b, phi })
    }

    pub fn symmetric(eta: f64, phi: f64) -> Result<Self> {
        Self::new(eta, eta, phi)
    }

    pub fn lossless(phi: f64) -> Self {
        ChannelConfig {
            eta_a: 1.0,
            eta_b: 1.0,
            phi,
        }
    }

    pub fn with_phi(&self, phi: f64) -> Self {
        ChannelConfig { phi, ..*self }
    }

    pub fn is_symmetric(&self) -> bool {
        self.eta_a == self.eta_b
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.eta_a, self.eta_b, self.phi).map(|_| ())
    }
}

/// Angle reduced to `[0, 2π)`.
fn wrap_angle(x: f64) -> f64 {
    let w = x - TAU * (x / TAU).floor();
    if w >= TAU {
        0.0
    } else {
        w
    }
}

pub(crate) fn check_eta(eta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&eta) {
        Ok(())
    } else {
        Err(Error::Transmissivity { value: eta })
    }
}

/// `N̄ = |α_a|² + sinh²(r_a) + |α_b|² + sinh²(r_b)`
pub fn mean_photon_input(params: &ProductStateParams) -> f64 {
    params.mean_photons()
}
