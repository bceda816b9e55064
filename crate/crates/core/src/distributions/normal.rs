//! Standard normal CDF and quantile.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};

/// Standard normal CDF, `0.5 * erfc(-z / sqrt(2))`.
///
/// Accurate in relative terms deep into the lower tail; use
/// [`normal_sf`] rather than `1 - normal_cdf(z)` for the upper tail.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * FRAC_1_SQRT_2)
}

/// Standard normal survival function `1 - Φ(z)`.
pub fn normal_sf(z: f64) -> f64 {
    0.5 * libm::erfc(z * FRAC_1_SQRT_2)
}

/// Standard normal density.
pub fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

const A: [f64; 6] = [
    -3.969683028665376e+01,
    2.209460984245205e+02,
    -2.759285104469687e+02,
    1.383_577_518_672_69e2,
    -3.066479806614716e+01,
    2.506628277459239e+00,
];
const B: [f64; 5] = [
    -5.447609879822406e+01,
    1.615858368580409e+02,
    -1.556989798598866e+02,
    6.680131188771972e+01,
    -1.328068155288572e+01,
];
const C: [f64; 6] = [
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e+00,
    -2.549732539343734e+00,
    4.374664141464968e+00,
    2.938163982698783e+00,
];
const D: [f64; 4] = [
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e+00,
    3.754408661907416e+00,
];
const P_LOW: f64 = 0.02425;

/// Rational approximation (Acklam, relative error ~1.2e-9) refined by one
/// Halley step against `normal_cdf`. Requires `0 < p <= 0.5`.
fn lower_half_quantile(p: f64) -> f64 {
    let z = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    };
    // Relative residual form keeps the step well conditioned in the far tail.
    let e = normal_cdf(z) - p;
    let u = e * (2.0 * PI).sqrt() * (0.5 * z * z).exp();
    z - u / (1.0 + 0.5 * z * u)
}

/// Inverse of the standard normal CDF on the open interval (0, 1).
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "normal_quantile needs p in (0,1), got {p}"
        )));
    }
    Ok(quantile_unchecked(p))
}

/// Upper-tail quantile: `z` with `1 - Φ(z) = q`. Keeps full precision when `q`
/// is tiny, where `normal_quantile(1 - q)` would lose it to cancellation.
pub fn normal_quantile_upper(q: f64) -> Result<f64> {
    normal_quantile(q).map(|z| -z)
}

pub(crate) fn quantile_unchecked(p: f64) -> f64 {
    if p <= 0.5 {
        lower_half_quantile(p)
    } else {
        // 1 - p is exact for p in [0.5, 1).
        -lower_half_quantile(1.0 - p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Taylor series of erf; independent of libm. Adequate to ~1e-14 for |x| <= 3.
    fn erf_series(x: f64) -> f64 {
        let mut sum = 0.0;
        let mut term = x;
        let mut n = 0u32;
        while term.abs() > 1e-30 || n < 10 {
            sum += term / (2 * n + 1) as f64;
            n += 1;
            term *= -x * x / n as f64;
        }
        2.0 / PI.sqrt() * sum
    }

    fn bisect_quantile(p: f64) -> f64 {
        let (mut lo, mut hi) = (-40.0f64, 40.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if normal_cdf(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn cdf_at_zero() {
        assert_eq!(normal_cdf(0.0), 0.5);
    }

    #[test]
    fn cdf_symmetry() {
        for i in -80..=80 {
            let z = i as f64 * 0.1;
            assert!(
                (normal_cdf(z) + normal_cdf(-z) - 1.0).abs() <= 1e-14,
                "z={z}"
            );
        }
    }

    #[test]
    fn cdf_against_series() {
        for i in -30..=30 {
            let z = i as f64 * 0.1;
            let oracle = 0.5 * (1.0 + erf_series(z / 2f64.sqrt()));
            assert!((normal_cdf(z) - oracle).abs() <= 1e-12, "z={z}");
        }
        // Φ(3) = 0.998650101968369905... (50-digit reference)
        assert!((normal_cdf(3.0) - 0.998_650_101_968_369_9).abs() <= 1e-12);
    }

    #[test]
    fn quantile_known_values() {
        assert_eq!(normal_quantile(0.5).unwrap(), 0.0);
        let z = normal_quantile(0.975).unwrap();
        assert!((z - bisect_quantile(0.975)).abs() < 1e-12);
        assert!((z - 1.959_963_984_540_054).abs() < 1e-12);
    }

    #[test]
    fn quantile_symmetry() {
        for &p in &[1e-12, 1e-6, 0.01, 0.2, 0.3, 0.49] {
            // 1 - upper is exact, so the pair is an exact reflection.
            let upper = 1.0 - p;
            let s = normal_quantile(1.0 - upper).unwrap() + normal_quantile(upper).unwrap();
            assert!(s.abs() <= 1e-12, "p={p} sum={s}");
        }
    }

    #[test]
    fn quantile_domain() {
        for p in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(normal_quantile(p), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn upper_quantile_in_far_tail() {
        let z = normal_quantile_upper(1e-300).unwrap();
        assert!(((normal_sf(z) - 1e-300) / 1e-300).abs() < 1e-9);
    }
}
