//! Bernoulli KL divergence and its one-sided inverses.

use crate::error::{Error, Result};

/// Hard cap on bisection halvings. The interval has width <= 1, so 200
/// halvings resolve any f64 in [0, 1].
pub const BISECTION_CAP: usize = 200;

fn check_unit(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must lie in [0,1], got {x}")))
    }
}

/// `p ln(p/q) + (1-p) ln((1-p)/(1-q))`, with `0 ln 0 = 0` and `+inf` when
/// `q` is 0 or 1 but `p` differs from it.
pub fn bernoulli_kl(p: f64, q: f64) -> Result<f64> {
    check_unit("p", p)?;
    check_unit("q", q)?;
    Ok(kl_unchecked(p, q))
}

#[inline]
pub(crate) fn kl_unchecked(p: f64, q: f64) -> f64 {
    if p == q {
        return 0.0;
    }
    let mut kl = 0.0;
    if p > 0.0 {
        if q == 0.0 {
            return f64::INFINITY;
        }
        kl += p * (p / q).ln();
    }
    if p < 1.0 {
        if q == 1.0 {
            return f64::INFINITY;
        }
        kl += (1.0 - p) * ((1.0 - p) / (1.0 - q)).ln();
    }
    // Rounding can leave a tiny negative value when p and q are adjacent.
    kl.max(0.0)
}

fn check_budget(budget: f64) -> Result<()> {
    if budget >= 0.0 && !budget.is_nan() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "KL budget must be >= 0, got {budget}"
        )))
    }
}

/// Largest `a` in `[p, 1]` with `KL(p, a) <= budget`.
///
/// Returns 1 when the budget exceeds every finite value of `KL(p, ·)` on the
/// f64 grid below 1.
pub fn kl_upper_inverse(p: f64, budget: f64) -> Result<f64> {
    check_unit("p", p)?;
    check_budget(budget)?;
    Ok(upper_unchecked(p, budget))
}

pub(crate) fn upper_unchecked(p: f64, budget: f64) -> f64 {
    if budget == 0.0 || p == 1.0 {
        return p;
    }
    if budget == f64::INFINITY {
        return 1.0;
    }
    let (mut lo, mut hi) = (p, 1.0);
    let mut halvings = 0;
    while halvings < BISECTION_CAP {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if kl_unchecked(p, mid) > budget {
            hi = mid;
        } else {
            lo = mid;
        }
        halvings += 1;
    }
    debug_assert!(
        hi - lo <= f64::EPSILON,
        "upper KL inversion did not converge"
    );
    if kl_unchecked(p, hi) <= budget {
        hi
    } else {
        lo
    }
}

/// Smallest `a` in `[0, p]` with `KL(p, a) <= budget`.
pub fn kl_lower_inverse(p: f64, budget: f64) -> Result<f64> {
    check_unit("p", p)?;
    check_budget(budget)?;
    Ok(lower_unchecked(p, budget))
}

pub(crate) fn lower_unchecked(p: f64, budget: f64) -> f64 {
    if budget == 0.0 || p == 0.0 {
        return p;
    }
    if budget == f64::INFINITY {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, p);
    let mut halvings = 0;
    while halvings < BISECTION_CAP {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if kl_unchecked(p, mid) > budget {
            lo = mid;
        } else {
            hi = mid;
        }
        halvings += 1;
    }
    debug_assert!(
        hi - lo <= f64::EPSILON,
        "lower KL inversion did not converge"
    );
    if kl_unchecked(p, lo) <= budget {
        lo
    } else {
        hi
    }
}
