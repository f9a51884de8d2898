//! Thin wrappers over `libm` so the whole crate uses one deterministic set of
//! transcendental functions regardless of the `std` feature.

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn tanh(x: f64) -> f64 {
    libm::tanh(x)
}

#[inline]
pub(crate) fn erf(x: f64) -> f64 {
    libm::erf(x)
}

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

/// Numerically stable logistic function.
#[inline]
pub(crate) fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + exp(-x))
    } else {
        let e = exp(x);
        e / (1.0 + e)
    }
}

/// log(1 + exp(x)) without overflow; the per-example cross-entropy is
/// softplus(-logit) for label 1 and softplus(logit) for label 0.
#[inline]
pub(crate) fn softplus(x: f64) -> f64 {
    if x > 30.0 {
        x
    } else if x < -30.0 {
        exp(x)
    } else {
        ln(1.0 + exp(x))
    }
}

/// Exact GELU, `x * Phi(x)` with the Gaussian CDF via `erf`.
#[inline]
pub(crate) fn gelu(x: f64) -> f64 {
    0.5 * x * (1.0 + erf(x / core::f64::consts::SQRT_2))
}

/// Derivative of exact GELU: `Phi(x) + x * phi(x)`.
#[inline]
pub(crate) fn gelu_grad(x: f64) -> f64 {
    let phi_cdf = 0.5 * (1.0 + erf(x / core::f64::consts::SQRT_2));
    let phi_pdf = exp(-0.5 * x * x) / sqrt(2.0 * core::f64::consts::PI);
    phi_cdf + x * phi_pdf
}

/// Regularized incomplete beta function I_x(a, b), via the standard
/// continued-fraction expansion (Lentz's method).
pub(crate) fn betainc(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * ln(x) + b * ln(1.0 - x);
    // The continued fraction converges fast for x < (a+1)/(a+b+2); use the
    // symmetry I_x(a,b) = 1 - I_{1-x}(b,a) otherwise.
    if x < (a + 1.0) / (a + b + 2.0) {
        exp(ln_front) * beta_cf(a, b, x) / a
    } else {
        1.0 - betainc(b, a, 1.0 - x)
    }
}

fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 300;
    const EPS: f64 = 1e-15;
    const TINY: f64 = 1e-300;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

#[inline]
fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sigmoid_basics() {
        assert_eq!(sigmoid(0.0), 0.5);
        assert!(sigmoid(40.0) > 0.999_999);
        assert!(sigmoid(-40.0) < 1e-6);
        assert_relative_eq!(sigmoid(2.0) + sigmoid(-2.0), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn gelu_matches_reference_points() {
        // Reference values from the exact formula evaluated independently.
        assert_relative_eq!(gelu(0.0), 0.0, epsilon = 1e-15);
        assert_relative_eq!(gelu(1.0), 0.8413447460685429, epsilon = 1e-12);
        assert_relative_eq!(gelu(-1.0), -0.15865525393145707, epsilon = 1e-12);
    }

    #[test]
    fn gelu_grad_matches_finite_differences() {
        let h = 1e-6;
        for &x in &[-3.0, -1.0, -0.1, 0.0, 0.5, 2.0] {
            let numeric = (gelu(x + h) - gelu(x - h)) / (2.0 * h);
            assert_relative_eq!(gelu_grad(x), numeric, epsilon = 1e-8);
        }
    }

    #[test]
    fn betainc_reference_points() {
        // scipy.special.betainc values.
        assert_relative_eq!(betainc(0.5, 0.5, 0.5), 0.5, epsilon = 1e-12);
        assert_relative_eq!(betainc(2.0, 3.0, 0.4), 0.5248, epsilon = 1e-10);
        assert_relative_eq!(betainc(5.0, 1.0, 0.9), 0.59049, epsilon = 1e-10);
        assert_eq!(betainc(1.0, 1.0, 0.0), 0.0);
        assert_eq!(betainc(1.0, 1.0, 1.0), 1.0);
    }
}
