//! Fixed deterministic point sets on the closed disk.
//!
//! Residual checks and symbolic equality tests compare functions on these
//! sets, so their construction is part of the observable contract: the same
//! inputs always see the same probe points.

use num_complex::Complex64;

/// Radical-inverse (van der Corput) sequence value in the given base.
fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let b = base as f64;
    while i > 0 {
        f /= b;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// `n` low-discrepancy interior points: radius `0.95 * sqrt(h2)`, angle
/// `2*pi*h3`, with `(h2, h3)` the Halton pair in bases 2 and 3 at indices
/// `1..=n`.
pub fn interior_points(n: usize) -> Vec<Complex64> {
    (1..=n as u64)
        .map(|i| {
            let r = 0.95 * radical_inverse(i, 2).sqrt();
            let a = std::f64::consts::TAU * radical_inverse(i, 3);
            Complex64::from_polar(r, a)
        })
        .collect()
}

/// The `n` boundary points `exp(2*pi*i*k/n)`, `k = 0..n`.
pub fn boundary_points(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64))
        .collect()
}

/// 32-point residual validation set: 16 interior plus 16 boundary points.
pub fn validation_points() -> Vec<Complex64> {
    let mut pts = interior_points(16);
    pts.extend(boundary_points(16));
    pts
}

/// 64-point symbolic equality set: 32 interior plus 32 boundary points.
pub fn equality_points() -> Vec<Complex64> {
    let mut pts = interior_points(32);
    pts.extend(boundary_points(32));
    pts
}
