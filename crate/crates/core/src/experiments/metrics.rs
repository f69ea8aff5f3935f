//! Error metrics over independent trials.

/// Mean relative error E|x̂ − x|/x. `None` when the true value is zero.
pub fn mre(estimates: &[f64], truth: f64) -> Option<f64> {
    if truth == 0.0 || estimates.is_empty() {
        return None;
    }
    let sum: f64 = estimates.iter().map(|x| (x - truth).abs()).sum();
    Some(sum / estimates.len() as f64 / truth)
}

/// sqrt(E[(x̂ − x)²]) / x. `None` when the true value is zero.
pub fn nrmse(estimates: &[f64], truth: f64) -> Option<f64> {
    if truth == 0.0 || estimates.is_empty() {
        return None;
    }
    let mse: f64 = estimates.iter().map(|x| (x - truth).powi(2)).sum::<f64>() / estimates.len() as f64;
    Some(mse.sqrt() / truth)
}

/// Sample mean and standard error of the mean.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
