//! Variance of the phase generator `H = (n₁ - n₂)/2` for two-mode pure states
//! `Σ C_{N,n} |N, n>`, with `N = n₁ + n₂` and `n = n₁ - n₂`.
//!
//! For a fixed distribution `p_N` of the total photon number the variance is
//! maximised by putting all weight of each `N` on `n = ±N`. A two-point
//! distribution then has any prescribed mean and an arbitrarily large `ΔH`.

use alloc::collections::BTreeMap;

#[allow(unused_imports)] // unused when a dependency links std
use num_traits::Float;

use crate::linalg::{c, C64};
use crate::{Error, Result};

const NORM_TOL: f64 = 1e-12;

/// Probability `p_N` of each total photon number `N` (finite support).
#[derive(Debug, Clone, PartialEq)]
pub struct TotalPhotonDistribution {
    probs: BTreeMap<u64, f64>,
}

impl TotalPhotonDistribution {
    pub fn new(entries: impl IntoIterator<Item = (u64, f64)>) -> Result<Self> {
        let mut probs = BTreeMap::new();
        for (n, p) in entries {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::Distribution {
                    reason: "probabilities must be finite and nonnegative",
                });
            }
            if p > 0.0 {
                *probs.entry(n).or_insert(0.0) += p;
            }
        }
        let total: f64 = probs.values().sum();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::Distribution {
                reason: "probabilities must sum to 1",
            });
        }
        Ok(TotalPhotonDistribution { probs })
    }

    /// All weight on one total photon number.
    pub fn point(n: u64) -> Self {
        TotalPhotonDistribution {
            probs: BTreeMap::from([(n, 1.0)]),
        }
    }

    pub fn get(&self, n: u64) -> f64 {
        self.probs.get(&n).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.probs.iter().map(|(&n, &p)| (n, p))
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(n, p)| n as f64 * p).sum()
    }
}

/// Sparse amplitudes `C_{N,n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeCoefficients {
    amps: BTreeMap<(u64, i64), C64>,
}

impl TwoModeCoefficients {
    pub fn new(entries: impl IntoIterator<Item = ((u64, i64), C64)>) -> Result<Self> {
        let mut amps = BTreeMap::new();
        for ((total, diff), amp) in entries {
            let bad = |reason| Err(Error::Coefficients {
                total,
                diff,
                reason,
            });
            if diff.unsigned_abs() > total {
                return bad("|n| must not exceed N");
            }
            if (total as i64 - diff) % 2 != 0 {
                return bad("n and N must have the same parity");
            }
            if !(amp.re.is_finite() && amp.im.is_finite()) {
                return bad("amplitude is not finite");
            }
            *amps.entry((total, diff)).or_insert(c(0.0, 0.0)) += amp;
        }
        let norm: f64 = amps.values().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Coefficients {
                total: 0,
                diff: 0,
                reason: "squared amplitudes must sum to 1",
            });
        }
        Ok(TwoModeCoefficients { amps })
    }

    /// The single basis state `|N, n>`.
    pub fn basis_state(total: u64, diff: i64) -> Result<Self> {
        Self::new([((total, diff), c(1.0, 0.0))])
    }

    pub fn get(&self, total: u64, diff: i64) -> C64 {
        self.amps.get(&(total, diff)).copied().unwrap_or(c(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u64, i64), C64)> + '_ {
        self.amps.iter().map(|(&k, &v)| (k, v))
    }

    /// `p_N = Σ_n |C_{N,n}|²`
    pub fn total_distribution(&self) -> TotalPhotonDistribution {
        let mut probs = BTreeMap::new();
        for ((total, _), amp) in self.iter() {
            *probs.entry(total).or_insert(0.0) += amp.norm_sqr();
        }
        probs.retain(|_, p| *p > 0.0);
        TotalPhotonDistribution { probs }
    }
}

/// `|C_{N,±N}|² = p_N/2`, all interior amplitudes zero.
pub fn max_variance_coeffs(dist: &TotalPhotonDistribution) -> TwoModeCoefficients {
    let mut amps = BTreeMap::new();
    for (n, p) in dist.iter() {
        if n == 0 {
            amps.insert((0, 0), c(p.sqrt(), 0.0));
        } else {
            let half = c((p / 2.0).sqrt(), 0.0);
            amps.insert((n, n as i64), half);
            amps.insert((n, -(n as i64)), half);
        }
    }
    TwoModeCoefficients { amps }
}

/// `(ΔH)² = ¼ Σ|C_{N,n}|² n² - (½ Σ|C_{N,n}|² n)²`
pub fn variance_h(coeffs: &TwoModeCoefficients) -> f64 {
    let (mut second, mut first) = (0.0, 0.0);
    for ((_, diff), amp) in coeffs.iter() {
        let (w, n) = (amp.norm_sqr(), diff as f64);
        second += w * n * n;
        first += w * n;
    }
    0.25 * second - (0.5 * first).powi(2)
}

/// A state with mean photon number `n_bar` and `ΔH ≥ kappa`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnboundedDemo {
    pub distribution: TotalPhotonDistribution,
    /// The upper support point `N`.
    pub total: u64,
    pub delta_h: f64,
    pub mean: f64,
}

/// Two-point distribution `p_0 = 1 - N̄/N`, `p_N = N̄/N` with
/// `N = max(⌈4κ²/N̄⌉, ⌈N̄⌉)`, so that `ΔH = √(N̄N)/2 ≥ κ`.
pub fn unbounded_demo(n_bar: f64, kappa: f64) -> Result<UnboundedDemo> {
    for (name, value) in [("n_bar", n_bar), ("kappa", kappa)] {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidParameter { name, value });
        }
    }
    let mut total = (4.0 * kappa * kappa / n_bar).ceil().max(n_bar.ceil()).max(1.0) as u64;
    loop {
        let p = n_bar / total as f64;
        let distribution = TotalPhotonDistribution::new([(0, 1.0 - p), (total, p)])?;
        let delta_h = variance_h(&max_variance_coeffs(&distribution)).sqrt();
        if delta_h >= kappa {
            let mean = distribution.mean();
            return Ok(UnboundedDemo {
                distribution,
                total,
                delta_h,
                mean,
            });
        }
        // only reachable through rounding in the ceiling
        total += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use rand::{Rng, SeedableRng};

    #[test]
    fn vacuum_has_no_variance() {
        let coeffs = max_variance_coeffs(&TotalPhotonDistribution::point(0));
        assert_eq!(coeffs.get(0, 0), c(1.0, 0.0));
        assert_eq!(variance_h(&coeffs), 0.0);
    }

    #[test]
    fn point_distributions() {
        let two = max_variance_coeffs(&TotalPhotonDistribution::point(2));
        assert!((two.get(2, 2).norm_sqr() - 0.5).abs() < 1e-15);
        assert!((two.get(2, -2).norm_sqr() - 0.5).abs() < 1e-15);
        assert!((variance_h(&two) - 1.0).abs() < 1e-15);
        let four = max_variance_coeffs(&TotalPhotonDistribution::point(4));
        assert!((variance_h(&four) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn basis_states_are_eigenstates() {
        for (n, d) in [(0, 0), (3, 1), (5, -5), (6, 2)] {
            assert_eq!(variance_h(&TwoModeCoefficients::basis_state(n, d).unwrap()), 0.0);
        }
        assert!(TwoModeCoefficients::basis_state(3, 2).is_err());
        assert!(TwoModeCoefficients::basis_state(1, 3).is_err());
    }

    #[test]
    fn maximal_variance_is_quarter_second_moment() {
        let dist = TotalPhotonDistribution::new([(1, 0.2), (3, 0.5), (6, 0.3)]).unwrap();
        let coeffs = max_variance_coeffs(&dist);
        let expected = 0.25 * (0.2 + 0.5 * 9.0 + 0.3 * 36.0);
        assert!((variance_h(&coeffs) - expected).abs() < 1e-14);
        for (n, p) in coeffs.total_distribution().iter() {
            assert!((p - dist.get(n)).abs() < 1e-15);
        }
    }

    #[test]
    fn distribution_validation() {
        assert!(TotalPhotonDistribution::new([(1, 0.5), (2, 0.4)]).is_err());
        assert!(TotalPhotonDistribution::new([(1, -0.1), (2, 1.1)]).is_err());
        assert!(TotalPhotonDistribution::new([(1, f64::NAN)]).is_err());
    }

    #[test]
    fn mixed_mean_uses_two_term_formula() {
        let h = 0.5f64.sqrt();
        let coeffs = TwoModeCoefficients::new([((2, 2), c(h, 0.0)), ((2, 0), c(0.0, h))]).unwrap();
        // H takes values 1 and 0 with equal weight
        assert!((variance_h(&coeffs) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn brute_force_never_beats_extreme_weights() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let raw: Vec<f64> = (0..4).map(|_| rng.random_range(0.0..1.0)).collect();
            let sum: f64 = raw.iter().sum();
            let dist =
                TotalPhotonDistribution::new(raw.iter().enumerate().map(|(n, p)| (n as u64, p / sum)))
                    .unwrap();
            let bound = variance_h(&max_variance_coeffs(&dist));
            for _ in 0..50 {
                let mut entries = Vec::new();
                for (total, p) in dist.iter() {
                    let diffs: Vec<i64> = (0..=total).map(|k| total as i64 - 2 * k as i64).collect();
                    let w: Vec<f64> = diffs.iter().map(|_| rng.random_range(0.0..1.0f64).powi(3)).collect();
                    let ws: f64 = w.iter().sum();
                    for (d, wi) in diffs.iter().zip(&w) {
                        let phase = rng.random_range(0.0..6.3);
                        entries.push(((total, *d), crate::linalg::cis(phase) * (p * wi / ws).sqrt()));
                    }
                }
                let coeffs = TwoModeCoefficients::new(entries).unwrap();
                assert!(variance_h(&coeffs) <= bound + 1e-9);
            }
        }
    }

    #[test]
    fn demo_examples() {
        let d = unbounded_demo(1.0, 10.0).unwrap();
        assert_eq!(d.total, 400);
        assert!((d.delta_h - 10.0).abs() < 1e-12);
        assert!((d.mean - 1.0).abs() < 1e-12);

        let d = unbounded_demo(2.0, 100.0).unwrap();
        assert!(d.delta_h >= 100.0);
        assert!((d.mean - 2.0).abs() < 1e-12);

        let d = unbounded_demo(0.5, 1e-9).unwrap();
        assert_eq!(d.total, 1);
        assert!((d.delta_h - 0.5f64.sqrt() / 2.0).abs() < 1e-15);

        // N̄ above the bare ceiling still gives a valid distribution
        let d = unbounded_demo(7.5, 0.1).unwrap();
        assert_eq!(d.total, 8);
        assert!((d.mean - 7.5).abs() < 1e-12);

        assert!(unbounded_demo(0.0, 1.0).is_err());
        assert!(unbounded_demo(1.0, -1.0).is_err());
    }

    #[test]
    fn demo_sweep() {
        for n_bar in [0.1, 1.0, 3.3, 17.0] {
            for kappa in [0.01, 0.7, 5.0, 123.4] {
                let d = unbounded_demo(n_bar, kappa).unwrap();
                assert!(d.delta_h >= kappa);
                assert!((d.mean - n_bar).abs() < 1e-12 * n_bar.max(1.0));
            }
        }
    }
}
