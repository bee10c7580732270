//! Thin wrappers over `libm` so the crate stays `no_std`, plus a few small
//! numeric helpers shared by the solvers.

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

/// Integer power by repeated multiplication; exact for the small exponents
/// used throughout (trial counts, focal cardinalities).
pub fn powi(x: f64, mut n: u32) -> f64 {
    let mut base = x;
    let mut acc = 1.0;
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    acc
}

/// Standard normal cumulative distribution function.
#[inline]
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / core::f64::consts::SQRT_2)
}

/// `ln` with the floor used inside entropy objectives; keeps gradients finite
/// next to the boundary of the simplex.
#[inline]
pub fn ln_floored(x: f64) -> f64 {
    ln(if x < 1e-12 { 1e-12 } else { x })
}

/// `x ln x` with the convention `0 ln 0 = 0`.
#[inline]
pub fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * ln(x)
    }
}

#[inline]
pub fn max(a: f64, b: f64) -> f64 {
    if a > b {
        a
    } else {
        b
    }
}

#[inline]
pub fn min(a: f64, b: f64) -> f64 {
    if a < b {
        a
    } else {
        b
    }
}

/// Sup-norm of a slice.
pub fn sup_norm(xs: &[f64]) -> f64 {
    let mut m = 0.0;
    for &x in xs {
        let a = abs(x);
        if a > m {
            m = a;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powi_matches_repeated_multiplication() {
        assert_eq!(powi(0.6, 6), 0.6 * 0.6 * 0.6 * 0.6 * 0.6 * 0.6);
        assert_eq!(powi(2.0, 10), 1024.0);
        assert_eq!(powi(3.5, 0), 1.0);
    }

    #[test]
    fn normal_cdf_reference_values() {
        assert!(abs(normal_cdf(0.0) - 0.5) < 1e-15);
        assert!(abs(normal_cdf(1.96) - 0.975002104851780) < 1e-12);
        assert!(abs(normal_cdf(-1.0) - 0.158655253931457) < 1e-12);
    }
}
