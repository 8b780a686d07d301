//! Closed-form output moments, covariance matrix and symplectic spectrum of
//! the interferometer, written out term by term.
//!
//! These are an independent route to the same numbers the operator pipeline
//! in [`super::state`] produces and exist so the two can be compared.

#[allow(unused_imports)] // unused when a dependency links std
use num_traits::Float;

use super::params::{ChannelConfig, ProductStateParams};
use super::state::Moments;
use crate::linalg::{c, cis, Mat4, C64};

/// `<a>, <a²>, <a†a>, <b>, <b²>, <b†b>, <ab>, <ab†>` at the output.
pub fn output_moments(p: &ProductStateParams, cfg: &ChannelConfig) -> Moments {
    let (a, b) = (&p.a, &p.b);
    let (ea, eb, phi) = (cfg.eta_a, cfg.eta_b, cfg.phi);
    let i = c(0.0, 1.0);

    let za = cis(a.beta + a.omega) * a.alpha_abs;
    let zb = cis(b.beta + b.omega) * b.alpha_abs;
    let sq_a = cis(a.theta + 2.0 * a.omega) * (a.r.cosh() * a.r.sinh());
    let sq_b = cis(b.theta + 2.0 * b.omega) * (b.r.cosh() * b.r.sinh());
    let sh2 = a.r.sinh().powi(2) + b.r.sinh().powi(2);
    let pop = a.alpha_abs.powi(2) + b.alpha_abs.powi(2) + sh2;
    let rel = a.beta - b.beta + a.omega - b.omega;
    let cross = 2.0 * a.alpha_abs * b.alpha_abs;

    let mode_a = za - i * zb;
    let mode_b = zb - i * za;
    Moments {
        a: cis(phi / 2.0) * mode_a * (ea.sqrt() / 2f64.sqrt()),
        a2: cis(phi) * (mode_a * mode_a - sq_a + sq_b) * (ea / 2.0),
        ad_a: c(ea / 2.0 * (pop - cross * rel.sin()), 0.0),
        b: cis(-phi / 2.0) * mode_b * (eb.sqrt() / 2f64.sqrt()),
        b2: cis(-phi) * (mode_b * mode_b + sq_a - sq_b) * (eb / 2.0),
        bd_b: c(eb / 2.0 * (pop + cross * rel.sin()), 0.0),
        ab: -i * 0.5
            * (ea * eb).sqrt()
            * (cis(2.0 * (a.beta + a.omega)) * a.alpha_abs.powi(2)
                + cis(2.0 * (b.beta + b.omega)) * b.alpha_abs.powi(2)
                - sq_a
                - sq_b),
        a_bd: i * 0.5
            * cis(phi)
            * (ea * eb).sqrt()
            * (c(
                a.alpha_abs.powi(2) - b.alpha_abs.powi(2) + a.r.sinh().powi(2)
                    - b.r.sinh().powi(2),
                0.0,
            ) - i * (cross * rel.cos())),
    }
}

/// The `P, Q, R, S` entries of the equal-loss covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceEntries {
    pub p: C64,
    pub q: C64,
    pub r: C64,
    pub s: C64,
}

pub fn covariance_entries(p: &ProductStateParams, eta: f64, phi: f64) -> CovarianceEntries {
    let (a, b) = (&p.a, &p.b);
    let ch_a = (2.0 * a.r).cosh();
    let ch_b = (2.0 * b.r).cosh();
    let sa = cis(a.theta + 2.0 * a.omega) * (2.0 * a.r).sinh();
    let sb = cis(b.theta + 2.0 * b.omega) * (2.0 * b.r).sinh();
    CovarianceEntries {
        p: c(2.0 * (1.0 - eta) + eta * (ch_a + ch_b), 0.0),
        q: c(0.0, eta) * cis(phi) * (ch_a - ch_b),
        r: (sa - sb) * eta,
        s: c(0.0, eta) * (sa + sb),
    }
}

/// The equal-loss output covariance assembled from `P, Q, R, S`, including
/// the overall `½` (so the vacuum is the identity).
pub fn output_covariance(p: &ProductStateParams, eta: f64, phi: f64) -> Mat4 {
    let CovarianceEntries { p: pp, q, r, s } = covariance_entries(p, eta, phi);
    let (e, em) = (cis(phi), cis(-phi));
    let rows = [
        [pp, q, -e * r, s],
        [q.conj(), pp, s, em * r],
        [-em * r.conj(), s.conj(), pp, q.conj()],
        [s.conj(), e * r.conj(), q, pp],
    ];
    Mat4(rows).scale(0.5)
}

/// `τ_j = √(1 + 2η(1 - η)(cosh 2r_j - 1))` for equal losses.
pub fn symplectic_eigenvalues(p: &ProductStateParams, eta: f64) -> (f64, f64) {
    let tau = |r: f64| (1.0 + 2.0 * eta * (1.0 - eta) * ((2.0 * r).cosh() - 1.0)).sqrt();
    let (t1, t2) = (tau(p.a.r), tau(p.b.r));
    (t1.max(t2), t1.min(t2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{interferometer_output, symplectic_eigenvalues as from_trace, ModeParams};
    use core::f64::consts::PI;
    use rand::{Rng, SeedableRng};

    fn random_params(rng: &mut impl Rng) -> ProductStateParams {
        let mut mode = || ModeParams {
            omega: rng.random_range(0.0..2.0 * PI),
            alpha_abs: rng.random_range(0.0..2.0),
            beta: rng.random_range(0.0..2.0 * PI),
            r: rng.random_range(0.0..1.5),
            theta: rng.random_range(0.0..2.0 * PI),
        };
        let (a, b) = (mode(), mode());
        ProductStateParams { a, b }
    }

    #[test]
    fn moments_agree_with_pipeline() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for k in 0..200 {
            let p = random_params(&mut rng);
            let eta = [0.3, 0.7, 1.0][k % 3];
            let cfg = ChannelConfig::symmetric(eta, rng.random_range(0.0..2.0 * PI)).unwrap();
            let state = interferometer_output(&p, &cfg).unwrap();
            let dev = state.moments().max_abs_diff(&output_moments(&p, &cfg));
            assert!(dev < 1e-11, "point {k}: {dev}");
        }
    }

    #[test]
    fn moments_agree_with_unequal_losses() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(12);
        for _ in 0..50 {
            let p = random_params(&mut rng);
            let cfg = ChannelConfig::new(0.35, 0.9, 1.3).unwrap();
            let state = interferometer_output(&p, &cfg).unwrap();
            assert!(state.moments().max_abs_diff(&output_moments(&p, &cfg)) < 1e-11);
        }
    }

    #[test]
    fn covariance_agrees_with_pipeline() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(13);
        for _ in 0..100 {
            let p = random_params(&mut rng);
            let eta = rng.random_range(0.0..=1.0);
            let phi = rng.random_range(-PI..PI);
            let cfg = ChannelConfig::symmetric(eta, phi).unwrap();
            let state = interferometer_output(&p, &cfg).unwrap();
            let dev = state.sigma.max_abs_diff(&output_covariance(&p, eta, phi));
            assert!(dev < 1e-12, "{dev}");
        }
    }

    #[test]
    fn dsv_entries() {
        let r = 0.6;
        let e = covariance_entries(&ProductStateParams::dsv(r), 1.0, 0.4);
        assert_eq!(e.q.norm(), 0.0);
        assert!((e.r - c(2.0 * (2.0 * r).sinh(), 0.0)).norm() < 1e-14);
        assert!(e.s.norm() < 1e-14);
    }

    #[test]
    fn symplectic_formula_matches_trace_route() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(14);
        for _ in 0..100 {
            let p = random_params(&mut rng);
            let eta = rng.random_range(0.0..=1.0);
            let cfg = ChannelConfig::symmetric(eta, 0.7).unwrap();
            let state = interferometer_output(&p, &cfg).unwrap();
            let (t1, t2) = from_trace(&state).unwrap();
            let (f1, f2) = symplectic_eigenvalues(&p, eta);
            assert!((t1 - f1).abs() < 1e-10 && (t2 - f2).abs() < 1e-10);
        }
    }

    #[test]
    fn dsv_half_loss_symplectic() {
        // cosh 2r = 3
        let r = 3f64.acosh() / 2.0;
        let (t1, t2) = symplectic_eigenvalues(&ProductStateParams::dsv(r), 0.5);
        assert!((t1 - 2f64.sqrt()).abs() < 1e-12 && (t2 - 2f64.sqrt()).abs() < 1e-12);
    }
}
