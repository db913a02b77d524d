//! Least-squares fits of resonance traces.
//!
//! Two models are supported:
//!
//! - Lorentzian peak `A0 (κ/2)² / ((ω − f0)² + (κ/2)²) + B`, with `Q_L = f0/κ`,
//! - hanger dip `A |1 − (Q_L/Q_c) / (1 + 2i Q_L (ω − f0)/f0)|`, with
//!   `1/Q_i = 1/Q_L − 1/Q_c`.
//!
//! The solver is Levenberg–Marquardt with a central-difference Jacobian.
//! Frequencies enter the models relative to the initial centre and
//! linewidth, so the problem is well scaled for any `Q_L`.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // supplies libm-backed float methods when std is absent
use num_traits::Float;

use crate::error::{Error, Result};

pub const MIN_POINTS: usize = 10;
pub const MIN_SPAN_LINEWIDTHS: f64 = 3.0;
pub const MAX_ITERATIONS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResonanceModel {
    Lorentzian,
    Hanger,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceFit {
    pub model: ResonanceModel,
    /// Hz
    pub f0: f64,
    pub q_l: f64,
    /// Only the hanger model separates intrinsic from coupling loss.
    pub q_i: Option<f64>,
    pub q_c: Option<f64>,
    /// Off-resonant level (hanger) or peak height above background (Lorentzian).
    pub amplitude: f64,
    /// Lorentzian offset `B`.
    pub background: Option<f64>,
    /// `sqrt(Σ (model − data)²)`.
    pub residual_norm: f64,
    pub iterations: usize,
}

/// Centre frequency and linewidth that map raw parameters to the models.
#[derive(Debug, Clone, Copy)]
struct Frame {
    center: f64,
    width: f64,
}

fn model_value(model: ResonanceModel, frame: Frame, p: &[f64; 4], omega: f64) -> f64 {
    let detune = omega - frame.center - p[1] * frame.width;
    match model {
        ResonanceModel::Lorentzian => {
            let half = 0.5 * frame.width * p[2].exp();
            let x = detune / half;
            p[0] / (1.0 + x * x) + p[3]
        }
        ResonanceModel::Hanger => {
            // Q_L = (center / width) e^{q}
            let f0 = frame.center + p[1] * frame.width;
            let q_l = frame.center / frame.width * p[2].exp();
            let denom = Complex64::new(1.0, 2.0 * q_l * detune / f0);
            p[0] * (Complex64::new(1.0, 0.0) - p[3] / denom).norm()
        }
    }
}

fn residuals(model: ResonanceModel, frame: Frame, p: &[f64; 4], omega: &[f64], y: &[f64], out: &mut [f64]) {
    for ((r, &w), &v) in out.iter_mut().zip(omega).zip(y) {
        *r = model_value(model, frame, p, w) - v;
    }
}

/// Solves the 4×4 system `a x = b` by Gaussian elimination with partial
/// pivoting. `None` when singular.
fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col] == 0.0 || !a[piv][col].is_finite() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            let pivot_row = a[col];
            for (dst, src) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= f * src;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let s: f64 = (row + 1..4).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

fn sum_sq(r: &[f64]) -> f64 {
    r.iter().map(|v| v * v).sum()
}

/// Levenberg–Marquardt minimization of the squared residual.
fn levenberg_marquardt(
    model: ResonanceModel,
    frame: Frame,
    mut p: [f64; 4],
    omega: &[f64],
    y: &[f64],
) -> Result<([f64; 4], f64, usize)> {
    let n = omega.len();
    let mut r = vec_of(n);
    let mut trial = vec_of(n);
    let mut plus = vec_of(n);
    let mut minus = vec_of(n);
    let mut jac = [vec_of(n), vec_of(n), vec_of(n), vec_of(n)];
    residuals(model, frame, &p, omega, y, &mut r);
    let mut cost = sum_sq(&r);
    let mut mu = 1e-3;

    for iter in 1..=MAX_ITERATIONS {
        for j in 0..4 {
            let h = match j {
                0 => 1e-6 * p[0].abs().max(f64::MIN_POSITIVE),
                3 if model == ResonanceModel::Hanger => 1e-6 * p[3].abs().max(1e-3),
                3 => 1e-6 * p[0].abs().max(p[3].abs()).max(f64::MIN_POSITIVE),
                _ => 1e-6,
            };
            let (mut pp, mut pm) = (p, p);
            pp[j] += h;
            pm[j] -= h;
            residuals(model, frame, &pp, omega, y, &mut plus);
            residuals(model, frame, &pm, omega, y, &mut minus);
            for i in 0..n {
                jac[j][i] = (plus[i] - minus[i]) / (2.0 * h);
            }
        }
        let mut jtj = [[0.0; 4]; 4];
        let mut jtr = [0.0; 4];
        for a in 0..4 {
            jtr[a] = jac[a].iter().zip(&r).map(|(x, y)| x * y).sum();
            for b in a..4 {
                let v: f64 = jac[a].iter().zip(&jac[b]).map(|(x, y)| x * y).sum();
                jtj[a][b] = v;
                jtj[b][a] = v;
            }
        }

        loop {
            let mut lhs = jtj;
            for (d, row) in lhs.iter_mut().enumerate() {
                row[d] += mu * jtj[d][d].max(1e-300);
            }
            let step = solve4(lhs, [-jtr[0], -jtr[1], -jtr[2], -jtr[3]]);
            let Some(step) = step else {
                mu *= 4.0;
                if mu > 1e20 {
                    return Ok((p, cost, iter));
                }
                continue;
            };
            let cand = [p[0] + step[0], p[1] + step[1], p[2] + step[2], p[3] + step[3]];
            residuals(model, frame, &cand, omega, y, &mut trial);
            let new_cost = sum_sq(&trial);
            if new_cost.is_finite() && new_cost < cost {
                let reduction = (cost - new_cost) / cost;
                p = cand;
                core::mem::swap(&mut r, &mut trial);
                cost = new_cost;
                mu = (mu / 3.0).max(1e-15);
                if reduction < 1e-13 {
                    return Ok((p, cost, iter));
                }
                break;
            }
            mu *= 4.0;
            if mu > 1e20 {
                // no downhill step exists at working precision
                return Ok((p, cost, iter));
            }
        }
        if cost == 0.0 {
            return Ok((p, cost, iter));
        }
    }
    Err(Error::FitNoConvergence(MAX_ITERATIONS))
}

fn vec_of(n: usize) -> Vec<f64> {
    alloc::vec![0.0; n]
}

/// Centred moving average used only to stabilize the initial guesses.
fn smooth(y: &[f64]) -> Vec<f64> {
    let half = y.len() / 200;
    if half == 0 {
        return y.to_vec();
    }
    (0..y.len())
        .map(|i| {
            let (lo, hi) = (i.saturating_sub(half), (i + half + 1).min(y.len()));
            y[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect()
}

fn edge_level(y: &[f64]) -> f64 {
    let k = (y.len() / 20).max(1);
    let left: f64 = y[..k].iter().sum::<f64>() / k as f64;
    let right: f64 = y[y.len() - k..].iter().sum::<f64>() / k as f64;
    0.5 * (left + right)
}

/// Full width of the feature centred at `center`, measured where `y`
/// crosses `level` on either side, interpolating linearly.
fn width_at(omega: &[f64], y: &[f64], center: usize, level: f64) -> Option<f64> {
    let inside = y[center] < level;
    let crossed = |v: f64| (v < level) != inside;
    let cross = |i: usize, j: usize| {
        let t = (level - y[i]) / (y[j] - y[i]);
        omega[i] + t * (omega[j] - omega[i])
    };
    let left = (1..=center).rev().find(|&i| crossed(y[i - 1])).map(|i| cross(i, i - 1));
    let right = (center + 1..y.len()).find(|&i| crossed(y[i])).map(|i| cross(i - 1, i));
    let c = omega[center];
    match (left, right) {
        (Some(l), Some(r)) => Some(r - l),
        (Some(l), None) => Some(2.0 * (c - l)),
        (None, Some(r)) => Some(2.0 * (r - c)),
        (None, None) => None,
    }
}

fn check_trace(omega: &[f64], amplitude: &[f64]) -> Result<()> {
    if omega.len() != amplitude.len() {
        return Err(Error::OutOfRange { name: "trace", reason: "frequency and amplitude lengths differ" });
    }
    if omega.len() < MIN_POINTS {
        return Err(Error::IllConditioned("fewer than 10 points"));
    }
    if omega.iter().chain(amplitude).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("trace"));
    }
    if omega.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::OutOfRange { name: "trace", reason: "frequencies must be strictly increasing" });
    }
    let (lo, hi) = amplitude.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    if hi - lo <= 1e-12 * lo.abs().max(hi.abs()) {
        return Err(Error::IllConditioned("flat trace"));
    }
    Ok(())
}

/// Fits `model` to a trace of amplitudes sampled at strictly increasing
/// frequencies `omega` (Hz).
pub fn fit_resonance(omega: &[f64], amplitude: &[f64], model: ResonanceModel) -> Result<ResonanceFit> {
    check_trace(omega, amplitude)?;
    let smoothed = smooth(amplitude);
    let base = edge_level(&smoothed);
    let (center, start, level) = match model {
        ResonanceModel::Hanger => {
            let (imin, &ymin) =
                smoothed.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).expect("nonempty trace");
            let depth = (1.0 - ymin / base).clamp(1e-3, 0.999);
            let level = base * (((1.0 - depth).powi(2) + 1.0) / 2.0).sqrt();
            (imin, [base, 0.0, 0.0, depth], level)
        }
        ResonanceModel::Lorentzian => {
            let (imax, &ymax) =
                smoothed.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).expect("nonempty trace");
            (imax, [ymax - base, 0.0, 0.0, base], base + 0.5 * (ymax - base))
        }
    };
    let width = width_at(omega, &smoothed, center, level).ok_or(Error::IllConditioned("linewidth not resolved"))?;
    let span = omega[omega.len() - 1] - omega[0];
    if width.is_nan() || width <= 0.0 || span < MIN_SPAN_LINEWIDTHS * width {
        return Err(Error::IllConditioned("trace spans fewer than 3 linewidths"));
    }
    let frame = Frame { center: omega[center], width };

    let (p, cost, iterations) = levenberg_marquardt(model, frame, start, omega, amplitude)?;
    let f0 = frame.center + p[1] * frame.width;
    if !(omega[0]..=omega[omega.len() - 1]).contains(&f0) {
        return Err(Error::IllConditioned("fitted resonance lies outside the trace"));
    }
    let residual_norm = cost.sqrt();
    Ok(match model {
        ResonanceModel::Lorentzian => {
            let kappa = frame.width * p[2].exp();
            ResonanceFit {
                model,
                f0,
                q_l: f0 / kappa,
                q_i: None,
                q_c: None,
                amplitude: p[0],
                background: Some(p[3]),
                residual_norm,
                iterations,
            }
        }
        ResonanceModel::Hanger => {
            let q_l = frame.center / frame.width * p[2].exp();
            let depth = p[3];
            if depth.is_nan() || depth <= 0.0 {
                return Err(Error::IllConditioned("fitted coupling depth is not positive"));
            }
            let q_i = if depth < 1.0 { q_l / (1.0 - depth) } else { f64::INFINITY };
            ResonanceFit {
                model,
                f0,
                q_l,
                q_i: Some(q_i),
                q_c: Some(q_l / depth),
                amplitude: p[0],
                background: None,
                residual_norm,
                iterations,
            }
        }
    })
}

/// Hanger transmission `|S21|` with unit off-resonant level.
pub fn hanger_s21(omega: f64, f0: f64, q_l: f64, q_c: f64) -> f64 {
    let denom = Complex64::new(1.0, 2.0 * q_l * (omega - f0) / f0);
    (Complex64::new(1.0, 0.0) - (q_l / q_c) / denom).norm()
}

/// Lorentzian peak of height `a0` and full width `kappa` on background `b`.
pub fn lorentzian(omega: f64, f0: f64, kappa: f64, a0: f64, b: f64) -> f64 {
    let x = 2.0 * (omega - f0) / kappa;
    a0 / (1.0 + x * x) + b
}
