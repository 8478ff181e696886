//! Forward and inverse DGFT, hard low-pass filtering and the Monte-Carlo
//! denoising experiment.

use std::ops::Deref;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{check_len, GraphSignal};
use crate::matrix::norm;
use crate::select::DgftBasis;

/// Spectral coefficients `x̃ = Uᵀ x`; entry `k` belongs to frequency `f_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSignal(pub Vec<f64>);

impl Deref for SpectrumSignal {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for SpectrumSignal {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// Ideal low-pass filter keeping the `window` lowest-frequency components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterSpec {
    window: usize,
}

impl FilterSpec {
    pub fn new(window: usize, n: usize) -> Result<Self> {
        if window == 0 || window > n {
            return Err(Error::WindowOutOfRange { window, n });
        }
        Ok(Self { window })
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Gain of spectral component `i` (0-based).
    pub fn gain(&self, i: usize) -> f64 {
        if i < self.window {
            1.0
        } else {
            0.0
        }
    }
}

pub fn forward(b: &DgftBasis, x: &GraphSignal) -> Result<SpectrumSignal> {
    x.check_len(b.len())?;
    Ok(SpectrumSignal(b.u.tr_mul_vec(x)))
}

pub fn inverse(b: &DgftBasis, xt: &SpectrumSignal) -> Result<GraphSignal> {
    check_len(b.len(), xt.len())?;
    Ok(GraphSignal(b.u.mul_vec(xt)))
}

/// `x̂ = U H̃ Uᵀ y`.
pub fn lowpass(b: &DgftBasis, y: &GraphSignal, spec: &FilterSpec) -> Result<GraphSignal> {
    if spec.window > b.len() {
        return Err(Error::WindowOutOfRange {
            window: spec.window,
            n: b.len(),
        });
    }
    let mut coeffs = forward(b, y)?;
    for (i, c) in coeffs.0.iter_mut().enumerate() {
        *c *= spec.gain(i);
    }
    inverse(b, &coeffs)
}

/// Unit-norm signal whose spectrum decays as `c · exp(−f_k)`.
pub fn smooth_signal(b: &DgftBasis) -> GraphSignal {
    let mut coeffs: Vec<f64> = b.frequencies.iter().map(|f| (-f).exp()).collect();
    let c = 1.0 / norm(&coeffs);
    coeffs.iter_mut().for_each(|v| *v *= c);
    GraphSignal(b.u.mul_vec(&coeffs))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialError {
    /// `‖x̂ − x‖ / ‖x‖`
    pub filtered: f64,
    /// `‖n‖ / ‖x‖`
    pub unfiltered: f64,
}

impl TrialError {
    pub fn ratio(&self) -> f64 {
        self.filtered / self.unfiltered
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenoiseReport {
    pub trials: usize,
    pub window: usize,
    pub noise_var: f64,
    pub mean_ratio: f64,
    pub per_trial: Vec<TrialError>,
}

/// Recovers the smooth signal from `y = x + n`, `n ~ N(0, noise_var · I)`,
/// with the windowed filter and reports the average of `e_f / e`.
///
/// Trial `t` draws its noise from the ChaCha stream `t` of `seed`, so the
/// result does not depend on how trials are scheduled.
pub fn denoise_experiment(
    b: &DgftBasis,
    spec: &FilterSpec,
    trials: usize,
    noise_var: f64,
    seed: u64,
) -> Result<DenoiseReport> {
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    if !(noise_var.is_finite() && noise_var > 0.0) {
        return Err(Error::InvalidParams(format!(
            "noise variance must be positive, got {noise_var}"
        )));
    }
    FilterSpec::new(spec.window, b.len())?;

    let x = smooth_signal(b);
    let x_norm = norm(&x);
    let normal =
        Normal::new(0.0, noise_var.sqrt()).map_err(|e| Error::InvalidParams(e.to_string()))?;

    let per_trial = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let noise: Vec<f64> = (0..x.len()).map(|_| normal.sample(&mut rng)).collect();
            let y = GraphSignal(x.iter().zip(&noise).map(|(a, n)| a + n).collect());
            let x_hat = lowpass(b, &y, spec)?;
            let diff: Vec<f64> = x_hat.iter().zip(x.iter()).map(|(a, b)| a - b).collect();
            Ok(TrialError {
                filtered: norm(&diff) / x_norm,
                unfiltered: norm(&noise) / x_norm,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mean_ratio = per_trial.iter().map(TrialError::ratio).sum::<f64>() / trials as f64;
    Ok(DenoiseReport {
        trials,
        window: spec.window,
        noise_var,
        mean_ratio,
        per_trial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{construct, parse_digraph, DgftOptions};

    fn basis(text: &str) -> DgftBasis {
        construct(&parse_digraph(text).unwrap(), &DgftOptions::default())
            .unwrap()
            .basis
    }

    const GRAPH: &str = "0 1 1\n1 2 0.5\n2 3 2\n3 4 1\n4 0 1\n1 3 0.3\n2 0 1\n4 2 0.8";

    #[test]
    fn forward_of_basis_column_is_unit_vector() {
        let b = basis(GRAPH);
        for k in 0..b.len() {
            let xt = forward(&b, &GraphSignal(b.column(k))).unwrap();
            for (i, c) in xt.iter().enumerate() {
                let want = if i == k { 1.0 } else { 0.0 };
                assert!((c - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn constant_signal_hits_first_component() {
        let b = basis(GRAPH);
        let n = b.len();
        let xt = forward(&b, &GraphSignal::constant(n, 1.0 / (n as f64).sqrt())).unwrap();
        assert!((xt[0] - 1.0).abs() < 1e-12);
        assert!(xt[1..].iter().all(|c| c.abs() < 1e-12));
    }

    #[test]
    fn inverse_examples() {
        let b = basis(GRAPH);
        let mut e = vec![0.0; b.len()];
        e[2] = 1.0;
        let x = inverse(&b, &SpectrumSignal(e)).unwrap();
        assert!(x
            .iter()
            .zip(b.column(2))
            .all(|(a, b)| (a - b).abs() < 1e-15));
        let zero = inverse(&b, &SpectrumSignal(vec![0.0; b.len()])).unwrap();
        assert!(zero.iter().all(|&v| v == 0.0));
        assert!(inverse(&b, &SpectrumSignal(vec![0.0; 2])).is_err());
        assert!(forward(&b, &GraphSignal(vec![0.0; 7])).is_err());
    }

    #[test]
    fn lowpass_examples() {
        let b = basis(GRAPH);
        let n = b.len();
        let y = GraphSignal(vec![0.3, -1.0, 2.0, 0.5, 0.1]);

        let full = lowpass(&b, &y, &FilterSpec::new(n, n).unwrap()).unwrap();
        assert!(full
            .iter()
            .zip(y.iter())
            .all(|(a, b)| (a - b).abs() < 1e-12));

        let mean = y.iter().sum::<f64>() / n as f64;
        let dc = lowpass(&b, &y, &FilterSpec::new(1, n).unwrap()).unwrap();
        assert!(dc.iter().all(|v| (v - mean).abs() < 1e-12));

        let top = GraphSignal(b.column(n - 1));
        let rejected = lowpass(&b, &top, &FilterSpec::new(n - 1, n).unwrap()).unwrap();
        assert!(rejected.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn window_bounds() {
        assert_eq!(
            FilterSpec::new(0, 3),
            Err(Error::WindowOutOfRange { window: 0, n: 3 })
        );
        assert!(FilterSpec::new(4, 3).is_err());
        let b = basis("0 1\n1 2");
        let wide = FilterSpec::new(5, 5).unwrap();
        assert!(lowpass(&b, &GraphSignal(vec![1.0; 3]), &wide).is_err());
    }

    #[test]
    fn smooth_signal_single_edge() {
        let b = basis("0 1");
        let x = smooth_signal(&b);
        assert!((norm(&x) - 1.0).abs() < 1e-12);
        let xt = forward(&b, &x).unwrap();
        assert!((xt[1] / xt[0] - (-2.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn smooth_signal_coefficient_ratios() {
        let b = basis(GRAPH);
        let xt = forward(&b, &smooth_signal(&b)).unwrap();
        for j in 0..b.len() {
            for k in 0..b.len() {
                let want = (b.frequencies[k] - b.frequencies[j]).exp();
                assert!((xt[j] / xt[k] - want).abs() < 1e-9 * want.max(1.0));
            }
        }
    }

    #[test]
    fn denoise_identity_window() {
        let b = basis(GRAPH);
        let n = b.len();
        let r = denoise_experiment(&b, &FilterSpec::new(n, n).unwrap(), 50, 0.01, 3).unwrap();
        assert!((r.mean_ratio - 1.0).abs() < 1e-12);
        assert_eq!(r.per_trial.len(), 50);
        assert!(r.per_trial.iter().all(|t| t.unfiltered > 0.0));
    }

    #[test]
    fn denoise_rejects_bad_params() {
        let b = basis(GRAPH);
        let spec = FilterSpec::new(2, 5).unwrap();
        for var in [0.0, -1.0, f64::NAN] {
            assert!(matches!(
                denoise_experiment(&b, &spec, 10, var, 0),
                Err(Error::InvalidParams(_))
            ));
        }
        assert!(denoise_experiment(&b, &spec, 0, 0.01, 0).is_err());
    }

    #[test]
    fn denoise_is_seeded() {
        let b = basis(GRAPH);
        let spec = FilterSpec::new(2, 5).unwrap();
        let a = denoise_experiment(&b, &spec, 40, 0.01, 11).unwrap();
        let c = denoise_experiment(&b, &spec, 40, 0.01, 11).unwrap();
        let d = denoise_experiment(&b, &spec, 40, 0.01, 12).unwrap();
        assert_eq!(a, c);
        assert_ne!(a.mean_ratio, d.mean_ratio);
    }
}
