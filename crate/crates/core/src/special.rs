//! Log-space gamma ratios.

use statrs::function::gamma::ln_gamma;

/// `ln Γ(a) − ln Γ(b)` for `a, b > 0`.
///
/// When `a − b` is an integer the ratio is a finite product and is summed
/// term by term, which keeps full relative accuracy even when both
/// arguments are in the hundreds.
pub fn ln_gamma_ratio(a: f64, b: f64) -> f64 {
    assert!(a > 0.0 && b > 0.0, "ln_gamma_ratio needs positive arguments");
    let diff = a - b;
    if diff == diff.round() && diff.abs() <= 4096.0 {
        let k = diff.round() as i64;
        let (lo, steps, sign) = if k >= 0 { (b, k, 1.0) } else { (a, -k, -1.0) };
        // Γ(lo + steps) / Γ(lo) = Π_{i<steps} (lo + i)
        let s: f64 = (0..steps).map(|i| (lo + i as f64).ln()).sum();
        return sign * s;
    }
    ln_gamma(a) - ln_gamma(b)
}

/// `ln k!` for integer `k`.
pub fn ln_factorial(k: u32) -> f64 {
    (2..=k).map(|i| f64::from(i).ln()).sum()
}
