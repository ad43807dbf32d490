// Copyright 2026 The mfqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


//! Weighted fit of `p_log = c2 p^2 + c3 p^3 + c4 p^4` and its crossing with
//! `p_log = p`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitPoint {
    pub p: f64,
    pub p_log: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub covariance: [[f64; 3]; 3],
    /// Root of `p_log(p) = p`, if one was found.
    pub p_th: Option<f64>,
    pub p_th_err: Option<f64>,
    /// The root lies outside the sampled range.
    pub extrapolated: bool,
    pub p_min: f64,
    pub p_max: f64,
}

impl FitResult {
    pub fn eval(&self, p: f64) -> f64 {
        p * p * (self.c2 + p * (self.c3 + p * self.c4))
    }

    fn slope(&self, p: f64) -> f64 {
        p * (2.0 * self.c2 + p * (3.0 * self.c3 + 4.0 * p * self.c4))
    }
}

/// Points with zero rate or non-positive sigma carry no weight and are dropped.
pub fn fit_pseudo_threshold(points: &[FitPoint]) -> Result<FitResult> {
    let pts: Vec<&FitPoint> = points.iter().filter(|q| q.p > 0.0 && q.sigma > 0.0).collect();
    if pts.len() < 4 {
        return Err(Error::InvalidArgument(format!(
            "fit needs at least 4 points with positive rate and error, got {}",
            pts.len()
        )));
    }
    // Work in x = p / scale so the normal matrix stays well conditioned.
    let scale = pts.iter().map(|q| q.p).fold(0.0, f64::max);
    let mut a = [[0.0; 3]; 3];
    let mut b = [0.0; 3];
    for q in &pts {
        let x = q.p / scale;
        let row = [x * x, x * x * x, x * x * x * x];
        let w = 1.0 / (q.sigma * q.sigma);
        for i in 0..3 {
            b[i] += w * row[i] * q.p_log;
            for j in 0..3 {
                a[i][j] += w * row[i] * row[j];
            }
        }
    }
    let inv = invert3(&a).ok_or_else(|| Error::InvalidArgument("singular fit".into()))?;
    let mut c = [0.0; 3];
    for i in 0..3 {
        c[i] = (0..3).map(|j| inv[i][j] * b[j]).sum();
    }
    // Back to coefficients of p: c_k(p) = c_k(x) / scale^k.
    let f = [scale.powi(2), scale.powi(3), scale.powi(4)];
    let mut cov = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            cov[i][j] = inv[i][j] / (f[i] * f[j]);
        }
    }
    let p_min = pts.iter().map(|q| q.p).fold(f64::INFINITY, f64::min);
    let mut fit = FitResult {
        c2: c[0] / f[0],
        c3: c[1] / f[1],
        c4: c[2] / f[2],
        covariance: cov,
        p_th: None,
        p_th_err: None,
        extrapolated: false,
        p_min,
        p_max: scale,
    };
    let root = crossing(&fit, p_min, scale)
        .map(|r| (r, false))
        .or_else(|| crossing(&fit, p_min / 100.0, scale * 100.0).map(|r| (r, true)));
    if let Some((r, extrapolated)) = root {
        let g = [r * r, r * r * r, r * r * r * r];
        let mut var = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                var += g[i] * cov[i][j] * g[j];
            }
        }
        let d = fit.slope(r) - 1.0;
        fit.p_th = Some(r);
        fit.p_th_err = (d != 0.0).then(|| var.sqrt() / d.abs());
        fit.extrapolated = extrapolated;
    }
    Ok(fit)
}

/// First upward crossing of `p_log(p) - p` on a log grid over `[lo, hi]`,
/// refined by bisection.
fn crossing(fit: &FitResult, lo: f64, hi: f64) -> Option<f64> {
    const STEPS: usize = 400;
    let g = |p: f64| fit.eval(p) - p;
    let ratio = (hi / lo).powf(1.0 / STEPS as f64);
    let mut a = lo;
    for _ in 0..STEPS {
        let b = (a * ratio).min(hi);
        if g(a) < 0.0 && g(b) >= 0.0 {
            let (mut x, mut y) = (a, b);
            for _ in 0..200 {
                let m = 0.5 * (x + y);
                if g(m) < 0.0 {
                    x = m;
                } else {
                    y = m;
                }
            }
            return Some(0.5 * (x + y));
        }
        a = b;
    }
    None
}

fn invert3(m: &[[f64; 3]; 3]) -> Option<[[f64; 3]; 3]> {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if det.abs() < 1e-300 || !det.is_finite() {
        return None;
    }
    let mut inv = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            inv[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / det;
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(f: impl Fn(f64) -> f64, ps: &[f64]) -> Vec<FitPoint> {
        ps.iter()
            .map(|&p| FitPoint {
                p,
                p_log: f(p),
                sigma: 0.01 * f(p),
            })
            .collect()
    }

    #[test]
    fn pure_quadratic_crosses_at_one_half() {
        let pts = exact(|p| 2.0 * p * p, &[0.1, 0.2, 0.3, 0.4, 0.6, 0.8]);
        let f = fit_pseudo_threshold(&pts).unwrap();
        assert!((f.c2 - 2.0).abs() < 1e-9 && f.c3.abs() < 1e-8 && f.c4.abs() < 1e-8);
        assert!((f.p_th.unwrap() - 0.5).abs() < 1e-9);
        assert!(!f.extrapolated);
    }

    #[test]
    fn quadratic_plus_cubic_matches_the_closed_form_root() {
        let pts = exact(|p| 100.0 * p * p + 1000.0 * p * p * p, &[1e-3, 2e-3, 5e-3, 1e-2, 2e-2]);
        let f = fit_pseudo_threshold(&pts).unwrap();
        let root = (-100.0 + (100.0f64 * 100.0 + 4000.0).sqrt()) / 2000.0;
        assert!((root - 0.00916).abs() < 1e-5);
        assert!((f.p_th.unwrap() - root).abs() < 1e-9 * root.max(1.0));
    }

    #[test]
    fn no_crossing_is_reported_as_none() {
        let pts = exact(|p| 1e-3 * p * p, &[1e-3, 2e-3, 5e-3, 1e-2]);
        let f = fit_pseudo_threshold(&pts).unwrap();
        assert!(f.p_th.is_none());
    }

    #[test]
    fn too_few_points_is_an_error() {
        let pts = exact(|p| p * p, &[0.1, 0.2, 0.3]);
        assert!(fit_pseudo_threshold(&pts).is_err());
    }
}
