//! Standard normal tail functions and signal-strength calibration.

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};

/// `P(Z <= x)` for a standard normal `Z`.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / SQRT_2)
}

/// `P(Z > x)` for a standard normal `Z`.
pub fn normal_sf(x: f64) -> f64 {
    0.5 * libm::erfc(x / SQRT_2)
}

/// Two-sided p-value `2 * P(Z > |z|)`.
pub fn two_sided_pvalue(z: f64) -> f64 {
    libm::erfc(z.abs() / SQRT_2)
}

/// Upper quantile: the `x` with `normal_sf(x) = p`, by bisection.
pub fn normal_isf(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::NoConvergence(format!("upper quantile of p={p}")));
    }
    let (mut lo, mut hi) = (-40.0_f64, 40.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if normal_sf(mid) > p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Power of a two-sided level-`level` z-test when the statistic has mean `mu`.
pub fn two_sided_power(mu: f64, level: f64) -> Result<f64> {
    let z = normal_isf(level / 2.0)?;
    Ok(normal_cdf(-z - mu) + normal_sf(z - mu))
}

/// Signal mean `mu >= 0` at which a two-sided test at `level` has the given power.
pub fn calibrate_mu(power: f64, level: f64) -> Result<f64> {
    const TOL: f64 = 1e-10;
    if !(power > 0.0 && power < 1.0) {
        return Err(Error::NoConvergence(format!("power {power} outside (0, 1)")));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::NoConvergence(format!("level {level} outside (0, 1)")));
    }
    let z = normal_isf(level / 2.0)?;
    let power_at = |mu: f64| normal_cdf(-z - mu) + normal_sf(z - mu);
    let base = power_at(0.0);
    if (base - power).abs() <= TOL {
        return Ok(0.0);
    }
    if power < base {
        return Err(Error::NoConvergence(format!(
            "power {power} is below the null rejection rate {base}"
        )));
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while power_at(hi) < power {
        hi *= 2.0;
        if hi > 1e3 {
            return Err(Error::NoConvergence(format!("no bracket for power {power}")));
        }
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        let p = power_at(mid);
        if (p - power).abs() <= TOL || mid == lo || mid == hi {
            return Ok(mid);
        }
        if p < power {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence(format!(
        "bisection for power {power} did not settle"
    )))
}
