//! Monte-Carlo validation of the scheme's power-level behaviour at finite SNR.
//!
//! Transmitters only know channel estimates whose error variance scales as
//! `P^(-alpha)`. Zero-forcing computed from those estimates leaves residual
//! interference at power `P^(1-alpha)` while desired signals keep full power
//! `P`; in the second phase the common and private streams decode at rates
//! `(1-alpha) log P` and `alpha log P`. This module estimates those four
//! exponents by regressing sample averages against `log P`.
//!
//! Unlike the bound modules everything here is `f64`: the quantities are
//! statistical by nature. Channels are drawn circularly-symmetric complex
//! Gaussian with unit variance, the standard non-degenerate model; the
//! high-SNR exponents do not depend on that choice.

use crate::rational::{to_f64, Rational};
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinksimError {
    #[error("transmit power must exceed 1, got {0}")]
    PowerTooSmall(f64),
    #[error("cannot null at {nulled} terminals with {holders} beamforming relays")]
    InfeasibleNulling { nulled: usize, holders: usize },
    #[error("estimate submatrix is singular")]
    SingularEstimates,
    #[error("mu = {0} must be a corner multiple of 1/M")]
    NonCornerMu(String),
    #[error("zero-forcing validation needs mu M >= 1")]
    NoCache,
    #[error("need at least {required} strictly increasing power points, got {got}")]
    BadPowerGrid { required: usize, got: usize },
    #[error("need at least one trial")]
    NoTrials,
}

/// One draw of the network channels at transmit power `p`.
///
/// True gains decompose entrywise into estimate plus error; estimates have
/// unit variance and errors have variance `sigma2 = p^(-alpha)` (hence
/// `sigma2 < 1` whenever `alpha > 0`, and exactly 1 with no channel
/// knowledge). Indices are 0-based.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    pub p: f64,
    pub sigma2: f64,
    pub bs_rn_est: Vec<Complex64>,
    pub bs_rn_err: Vec<Complex64>,
    pub bs_ue_est: Vec<Complex64>,
    pub bs_ue_err: Vec<Complex64>,
    /// Relay-to-terminal gains, `rn_ue_est[k][m]`.
    pub rn_ue_est: Vec<Vec<Complex64>>,
    pub rn_ue_err: Vec<Vec<Complex64>>,
}

impl ChannelRealization {
    pub fn ues(&self) -> usize {
        self.bs_ue_est.len()
    }

    pub fn rns(&self) -> usize {
        self.bs_rn_est.len()
    }

    pub fn bs_rn_true(&self, m: usize) -> Complex64 {
        self.bs_rn_est[m] + self.bs_rn_err[m]
    }

    pub fn bs_ue_true(&self, k: usize) -> Complex64 {
        self.bs_ue_est[k] + self.bs_ue_err[k]
    }

    pub fn rn_ue_true(&self, k: usize, m: usize) -> Complex64 {
        self.rn_ue_est[k][m] + self.rn_ue_err[k][m]
    }
}

/// Which sampled quantity an exponent estimate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    DesiredSignal,
    ResidualInterference,
    CommonRate,
    PrivateRate,
}

impl Quantity {
    pub const ALL: [Quantity; 4] = [
        Quantity::DesiredSignal,
        Quantity::ResidualInterference,
        Quantity::CommonRate,
        Quantity::PrivateRate,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Quantity::DesiredSignal => "desired_signal",
            Quantity::ResidualInterference => "residual_interference",
            Quantity::CommonRate => "common_rate",
            Quantity::PrivateRate => "private_rate",
        }
    }

    /// Expected high-SNR slope at channel quality `alpha`.
    pub fn target(&self, alpha: f64) -> f64 {
        match self {
            Quantity::DesiredSignal => 1.0,
            Quantity::ResidualInterference => 1.0 - alpha,
            Quantity::CommonRate => 1.0 - alpha,
            Quantity::PrivateRate => alpha,
        }
    }
}

/// Slope of the regression of average log power (or log rate) on `log P`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentEstimate {
    pub quantity: Quantity,
    pub slope: f64,
    pub stderr: f64,
    pub trials: u32,
}

fn complex_gaussian<R: Rng>(rng: &mut R, variance: f64) -> Complex64 {
    let scale = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * scale, im * scale)
}

/// Draws estimates (unit variance) and independent errors (variance
/// `p^(-alpha)`) for every link. Deterministic for a fixed seed; the
/// sampling order is part of the output contract.
pub fn draw_channels(
    ues: usize,
    rns: usize,
    alpha: &Rational,
    p: f64,
    seed: u64,
) -> Result<ChannelRealization, LinksimError> {
    if p <= 1.0 {
        return Err(LinksimError::PowerTooSmall(p));
    }
    let sigma2 = p.powf(-to_f64(alpha));
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let bs_rn_est = (0..rns).map(|_| complex_gaussian(&mut rng, 1.0)).collect();
    let bs_ue_est = (0..ues).map(|_| complex_gaussian(&mut rng, 1.0)).collect();
    let rn_ue_est = (0..ues)
        .map(|_| (0..rns).map(|_| complex_gaussian(&mut rng, 1.0)).collect())
        .collect();
    let bs_rn_err = (0..rns)
        .map(|_| complex_gaussian(&mut rng, sigma2))
        .collect();
    let bs_ue_err = (0..ues)
        .map(|_| complex_gaussian(&mut rng, sigma2))
        .collect();
    let rn_ue_err = (0..ues)
        .map(|_| {
            (0..rns)
                .map(|_| complex_gaussian(&mut rng, sigma2))
                .collect()
        })
        .collect();
    Ok(ChannelRealization {
        p,
        sigma2,
        bs_rn_est,
        bs_rn_err,
        bs_ue_est,
        bs_ue_err,
        rn_ue_est,
        rn_ue_err,
    })
}

/// Gaussian elimination with partial pivoting on a small complex system.
fn solve(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = a.len();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| {
                a[i][col]
                    .norm_sqr()
                    .partial_cmp(&a[j][col].norm_sqr())
                    .unwrap()
            })
            .unwrap();
        if a[pivot_row][col].norm_sqr() < 1e-24 {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in (col + 1)..n {
            let factor = a[row][col] / a[col][col];
            for c in col..n {
                let delta = factor * a[col][c];
                a[row][c] -= delta;
            }
            let delta = factor * b[col];
            b[row] -= delta;
        }
    }
    let mut x = vec![Complex64::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for c in (row + 1)..n {
            acc -= a[row][c] * x[c];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Residual power of one zero-forced multicast symbol at each nulled
/// terminal.
///
/// The base station carries the symbol while the cache-holding relays
/// transmit cancellation weights solved from the channel estimates alone.
/// Amplitudes are scaled so the busiest node transmits at exactly power `p`;
/// the returned values are `|true channel x beamformer|^2` times that scale.
pub fn zf_residual_power(
    real: &ChannelRealization,
    nulled_ues: &[usize],
    holders: &[usize],
) -> Result<Vec<f64>, LinksimError> {
    let psi = nulled_ues.len();
    if psi > holders.len() {
        return Err(LinksimError::InfeasibleNulling {
            nulled: psi,
            holders: holders.len(),
        });
    }
    if psi == 0 {
        return Ok(Vec::new());
    }
    // active holders: first psi of the set; estimated system H w = -g
    let active = &holders[..psi];
    let a: Vec<Vec<Complex64>> = nulled_ues
        .iter()
        .map(|&k| active.iter().map(|&m| real.rn_ue_est[k][m]).collect())
        .collect();
    let b: Vec<Complex64> = nulled_ues.iter().map(|&k| -real.bs_ue_est[k]).collect();
    let w = solve(a, b).ok_or(LinksimError::SingularEstimates)?;

    // busiest node (base station amplitude is 1) saturates the power budget
    let max_load = w.iter().map(|c| c.norm()).fold(1.0f64, f64::max);
    let scale = real.p / (max_load * max_load);
    Ok(nulled_ues
        .iter()
        .map(|&k| {
            let mut gain = real.bs_ue_true(k);
            for (i, &m) in active.iter().enumerate() {
                gain += real.rn_ue_true(k, m) * w[i];
            }
            gain.norm_sqr() * scale
        })
        .collect())
}

/// Received power of one terminal's own phase-one symbol.
///
/// The symbol's cache holders beamform it with unit estimated gain at the
/// target and nulls at the other served terminals; the true received power
/// keeps the full exponent of `p`.
pub fn desired_signal_power(
    real: &ChannelRealization,
    target_ue: usize,
    other_ues: &[usize],
    holders: &[usize],
) -> Result<f64, LinksimError> {
    let constraints = other_ues.len() + 1;
    if constraints > holders.len() {
        return Err(LinksimError::InfeasibleNulling {
            nulled: constraints,
            holders: holders.len(),
        });
    }
    let active = &holders[..constraints];
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(constraints);
    let mut rhs = Vec::with_capacity(constraints);
    rows.push(active.iter().map(|&m| real.rn_ue_est[target_ue][m]).collect());
    rhs.push(Complex64::new(1.0, 0.0));
    for &k in other_ues {
        rows.push(active.iter().map(|&m| real.rn_ue_est[k][m]).collect());
        rhs.push(Complex64::zero());
    }
    let v = solve(rows, rhs).ok_or(LinksimError::SingularEstimates)?;
    let max_load = v.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if max_load == 0.0 {
        return Err(LinksimError::SingularEstimates);
    }
    let scale = real.p / (max_load * max_load);
    let mut gain = Complex64::zero();
    for (i, &m) in active.iter().enumerate() {
        gain += real.rn_ue_true(target_ue, m) * v[i];
    }
    Ok(gain.norm_sqr() * scale)
}

/// Per-terminal `(common, private)` SINRs of one phase-two channel use.
///
/// The base station sends the common symbol at power `p/2`; each served
/// terminal's private symbol rides a unit-norm zero-forcing vector over the
/// base station plus the first `mu M` relays, at power `p^alpha / (2 psi')`.
/// Common decodes first treating all privates as noise; privates decode
/// after the common is cancelled.
fn phase2_sinrs(
    real: &ChannelRealization,
    served: &[usize],
    cache_units: usize,
    alpha: f64,
) -> Result<Vec<(f64, f64)>, LinksimError> {
    let psi_prime = served.len();
    // antenna 0 is the base station, antennas 1..=cache_units are relays
    let antennas = 1 + cache_units;
    let cols = psi_prime.min(antennas);
    let est_row = |k: usize| -> Vec<Complex64> {
        (0..cols)
            .map(|a| {
                if a == 0 {
                    real.bs_ue_est[k]
                } else {
                    real.rn_ue_est[k][a - 1]
                }
            })
            .collect()
    };
    let true_entry = |k: usize, a: usize| -> Complex64 {
        if a == 0 {
            real.bs_ue_true(k)
        } else {
            real.rn_ue_true(k, a - 1)
        }
    };

    // unit-norm beamformers with estimated nulls at the other served terminals
    let mut beams: Vec<Vec<Complex64>> = Vec::with_capacity(psi_prime);
    for (j, _) in served.iter().enumerate() {
        let rows: Vec<Vec<Complex64>> = served.iter().map(|&k| est_row(k)).collect();
        let rhs: Vec<Complex64> = (0..psi_prime)
            .map(|i| {
                if i == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::zero()
                }
            })
            .collect();
        let v = solve(rows, rhs).ok_or(LinksimError::SingularEstimates)?;
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(LinksimError::SingularEstimates);
        }
        beams.push(v.into_iter().map(|c| c / norm).collect());
    }

    let common_power = real.p / 2.0;
    let private_power = real.p.powf(alpha) / (2.0 * psi_prime as f64);
    let mut out = Vec::with_capacity(psi_prime);
    for (i, &k) in served.iter().enumerate() {
        let received: Vec<f64> = beams
            .iter()
            .map(|v| {
                let mut gain = Complex64::zero();
                for (a, weight) in v.iter().enumerate() {
                    gain += true_entry(k, a) * weight;
                }
                gain.norm_sqr() * private_power
            })
            .collect();
        let total_private: f64 = received.iter().sum();
        let common_received = real.bs_ue_true(k).norm_sqr() * common_power;
        let common_sinr = common_received / (1.0 + total_private);
        let private_sinr = received[i] / (1.0 + total_private - received[i]);
        out.push((common_sinr, private_sinr));
    }
    Ok(out)
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Stable per-trial seed: independent of execution order, so parallel or
/// sequential evaluation sees the same trial-to-stream mapping.
fn derive_seed(seed: u64, power_index: u64, trial: u64, attempt: u64) -> u64 {
    mix(mix(mix(seed ^ mix(power_index)) ^ mix(trial)) ^ mix(attempt))
}

fn regress(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - x_mean) * (y - y_mean))
        .sum();
    let slope = sxy / sxx;
    let stderr = if xs.len() > 2 {
        let intercept = y_mean - slope * x_mean;
        let ss_res: f64 = xs
            .iter()
            .zip(ys)
            .map(|(x, y)| (y - (intercept + slope * x)).powi(2))
            .sum();
        (ss_res / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    (slope, stderr)
}

/// Estimates the four power-level exponents by Monte-Carlo regression.
///
/// For each power in `p_list` the function averages the log of each sampled
/// quantity over `trials` independent channel draws, then regresses those
/// averages against `log P`. Averaging logs rather than powers keeps the
/// heavy-tailed zero-forcing weights from dominating the sample mean.
/// Singular estimate draws are re-drawn deterministically.
pub fn estimate_exponents(
    ues: u32,
    rns: u32,
    mu: &Rational,
    alpha: &Rational,
    p_list: &[f64],
    trials: u32,
    seed: u64,
) -> Result<Vec<ExponentEstimate>, LinksimError> {
    if p_list.len() < 3 || p_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LinksimError::BadPowerGrid {
            required: 3,
            got: p_list.len(),
        });
    }
    if trials == 0 {
        return Err(LinksimError::NoTrials);
    }
    let scaled = mu * crate::rational::rat_int(rns as i64);
    if !scaled.is_integer() {
        return Err(LinksimError::NonCornerMu(mu.to_string()));
    }
    let cache_units = to_f64(&scaled).round() as usize;
    if cache_units == 0 {
        return Err(LinksimError::NoCache);
    }
    let k = ues as usize;
    let m = rns as usize;
    let alpha_f = to_f64(alpha);
    let psi = k.min(cache_units);
    let psi_prime = k.min(1 + cache_units);
    let holders: Vec<usize> = (0..cache_units.min(m)).collect();
    let nulled: Vec<usize> = (0..psi).collect();
    let served: Vec<usize> = (0..psi_prime).collect();
    let other_ues: Vec<usize> = served.iter().copied().filter(|&u| u != 0).take(psi - 1).collect();

    let xs: Vec<f64> = p_list.iter().map(|p| p.ln()).collect();
    let mut means = vec![Vec::with_capacity(p_list.len()); Quantity::ALL.len()];
    for (pi, &p) in p_list.iter().enumerate() {
        if p <= 1.0 {
            return Err(LinksimError::PowerTooSmall(p));
        }
        let mut sums = [0.0f64; 4];
        let mut counts = [0u64; 4];
        for trial in 0..trials as u64 {
            let mut attempt = 0u64;
            let samples = loop {
                let trial_seed = derive_seed(seed, pi as u64, trial, attempt);
                let real = draw_channels(k, m, alpha, p, trial_seed)?;
                let outcome = (|| -> Result<_, LinksimError> {
                    let desired = desired_signal_power(&real, 0, &other_ues, &holders)?;
                    let residuals = zf_residual_power(&real, &nulled, &holders)?;
                    let rates = phase2_sinrs(&real, &served, cache_units, alpha_f)?;
                    Ok((desired, residuals, rates))
                })();
                match outcome {
                    Ok(samples) => break samples,
                    Err(LinksimError::SingularEstimates) if attempt < 64 => {
                        attempt += 1;
                    }
                    Err(e) => return Err(e),
                }
            };
            let (desired, residuals, rates) = samples;
            sums[0] += desired.ln();
            counts[0] += 1;
            for r in residuals {
                sums[1] += r.ln();
                counts[1] += 1;
            }
            for (common, private) in rates {
                sums[2] += (1.0 + common).ln();
                sums[3] += (1.0 + private).ln();
                counts[2] += 1;
                counts[3] += 1;
            }
        }
        for q in 0..4 {
            means[q].push(sums[q] / counts[q] as f64);
        }
    }

    Ok(Quantity::ALL
        .iter()
        .enumerate()
        .map(|(qi, &quantity)| {
            let (slope, stderr) = regress(&xs, &means[qi]);
            ExponentEstimate {
                quantity,
                slope,
                stderr,
                trials,
            }
        })
        .collect())
}
