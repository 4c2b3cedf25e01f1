//! Least-squares slope fits on log-log data.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope; zero for two points or a perfect fit.
    pub slope_stderr: f64,
}

impl LogLogFit {
    /// Slope positive by more than `k` standard errors.
    pub fn grows(&self, k: f64) -> bool {
        self.slope > k * self.slope_stderr && self.slope > 0.0
    }
}

/// Fits `ln y = intercept + slope · ln x`.
pub fn fit_loglog(xs: &[f64], ys: &[f64]) -> Result<LogLogFit> {
    ensure!(xs.len() == ys.len(), Dimension, "{} abscissae for {} values", xs.len(), ys.len());
    ensure!(xs.len() >= 2, InvalidParameter, "need at least two points for a slope");
    ensure!(
        xs.iter().chain(ys).all(|&v| v > 0.0 && v.is_finite()),
        InvalidParameter,
        "log-log fit needs positive finite data"
    );
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    ensure!(sxx > 0.0, InvalidParameter, "abscissae must not all coincide");
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let slope_stderr = if lx.len() > 2 {
        let rss: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
        (rss / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok(LogLogFit { slope, intercept, slope_stderr })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let xs = [2.0, 4.0, 8.0, 16.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-0.25)).collect();
        let f = fit_loglog(&xs, &ys).unwrap();
        assert!((f.slope + 0.25).abs() < 1e-12);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-12);
        assert!(f.slope_stderr < 1e-12);
        assert!(!f.grows(3.0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(fit_loglog(&[1.0], &[1.0]).is_err());
        assert!(fit_loglog(&[1.0, 2.0], &[1.0, -1.0]).is_err());
        assert!(fit_loglog(&[2.0, 2.0], &[1.0, 3.0]).is_err());
    }
}
