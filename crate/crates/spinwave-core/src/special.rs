//! Special-function kernels: Bessel functions of the first kind, log-gamma,
//! the regularized incomplete beta function, and a bracketing root finder.
//!
//! These are written from scratch (power series, Lanczos approximation, Lentz
//! continued fractions) so that closed-form expressions elsewhere in the crate
//! can be cross-checked against direct-summation routes that share no code
//! with them.

/// Bessel function of the first kind J_m(x), integer order.
///
/// Power series J_m(x) = Σ_k (−1)^k (x/2)^{2k+m} / (k! (k+m)!), with the
/// reflections J_{−m}(x) = (−1)^m J_m(x) and J_m(−x) = (−1)^m J_m(x).
/// Accurate to ~1e−15 absolute for |x| ≲ 15, which covers every modulation
/// depth used here (χ ≤ 3 in practice).
pub fn bessel_j(m: i32, x: f64) -> f64 {
    let mut sign = 1.0;
    let m = if m < 0 {
        if m % 2 != 0 {
            sign = -sign;
        }
        -m
    } else {
        m
    } as u32;
    let x = if x < 0.0 {
        if m % 2 != 0 {
            sign = -sign;
        }
        -x
    } else {
        x
    };
    let half = 0.5 * x;
    // Leading term (x/2)^m / m!, built incrementally to avoid overflow pairing.
    let mut term = 1.0;
    for k in 1..=m {
        term *= half / k as f64;
    }
    let q = -half * half;
    let mut sum = term;
    for k in 1..200u32 {
        term *= q / (k as f64 * (k + m) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-30) {
            break;
        }
    }
    sign * sum
}

/// Natural log of the gamma function for x > 0.
///
/// Lanczos approximation (g = 7, 9 coefficients); relative error below 1e−13
/// over the positive axis, with the reflection formula covering x < 0.5.
pub fn ln_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // Reflection: Γ(x)Γ(1−x) = π / sin(πx).
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = COEF[0];
    for (i, c) in COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Regularized incomplete beta function I_x(a, b) for a, b > 0 and x ∈ [0, 1].
///
/// Continued-fraction evaluation (modified Lentz), switched through the
/// symmetry I_x(a,b) = 1 − I_{1−x}(b,a) when x > (a+1)/(a+b+2) so the fraction
/// always converges quickly.
pub fn regularized_beta(x: f64, a: f64, b: f64) -> f64 {
    assert!(a > 0.0 && b > 0.0, "beta parameters must be positive");
    assert!((0.0..=1.0).contains(&x), "x must lie in [0, 1]");
    if x == 0.0 {
        return 0.0;
    }
    if x == 1.0 {
        return 1.0;
    }
    let front = (a * x.ln() + b * (1.0 - x).ln() + ln_gamma(a + b)
        - ln_gamma(a)
        - ln_gamma(b))
    .exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(x, a, b) / a
    } else {
        1.0 - front * beta_cf(1.0 - x, b, a) / b
    }
}

/// Continued fraction for the incomplete beta (Lentz's method).
fn beta_cf(x: f64, a: f64, b: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-15;
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
    for m in 1..300 {
        let m = m as f64;
        let m2 = 2.0 * m;
        // Even step.
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
        // Odd step.
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

/// Find a root of `f` inside [lo, hi] by bisection.
///
/// Requires a sign change over the bracket; returns the midpoint once the
/// bracket width falls below `tol`.
pub fn bisect(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Option<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Reference values from scipy.special (jv, gammaln, betainc).
    #[test]
    fn bessel_matches_references() {
        assert!((bessel_j(0, 1.0) - 0.7651976865579666).abs() < 1e-14);
        assert!((bessel_j(1, 1.0) - 0.44005058574493355).abs() < 1e-14);
        assert!((bessel_j(2, 1.0) - 0.1149034849319005).abs() < 1e-14);
        assert!((bessel_j(3, 2.0) - 0.12894324947440208).abs() < 1e-14);
        assert!((bessel_j(0, 5.0) - -0.17759677131433835).abs() < 1e-13);
        assert!((bessel_j(4, 7.0) - 0.15779814466136782).abs() < 1e-13);
        // First zeros of J0 and J1.
        assert!(bessel_j(0, 2.404825557695773).abs() < 1e-13);
        assert!(bessel_j(1, 3.8317059702075123).abs() < 1e-13);
    }

    #[test]
    fn bessel_parity() {
        for m in -4..=4i32 {
            for &x in &[0.3, 1.7, 4.2] {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                assert!((bessel_j(-m, x) - sign * bessel_j(m, x)).abs() < 1e-15);
                assert!((bessel_j(m, -x) - sign * bessel_j(m, x)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn ln_gamma_matches_references() {
        assert!((ln_gamma(0.5) - 0.5723649429247).abs() < 1e-12);
        assert!((ln_gamma(10.0) - 12.801827480081469).abs() < 1e-11);
        assert!((ln_gamma(4000.5) - 29177.11748852465).abs() / 29177.0 < 1e-13);
        // Γ(n) = (n−1)! for small integers.
        assert!((ln_gamma(5.0) - 24f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn beta_matches_references() {
        assert!((regularized_beta(0.3, 2.0, 5.0) - 0.5798250000000003).abs() < 1e-13);
        assert!((regularized_beta(0.5, 2.0, 3.0) - 0.6875).abs() < 1e-13);
        assert!((regularized_beta(0.002, 3.0, 3998.0) - 0.9863103837727876).abs() < 1e-11);
        assert!((regularized_beta(0.9, 7.5, 0.5) - 0.2162483651372664).abs() < 1e-12);
    }

    #[test]
    fn root_finder_hits_bessel_zeros() {
        let z0 = bisect(|x| bessel_j(0, x), 2.0, 3.0, 1e-13).unwrap();
        assert!((z0 - 2.404825557695773).abs() < 1e-12);
        let eq = bisect(|x| bessel_j(0, x) - bessel_j(1, x), 1.0, 2.0, 1e-13).unwrap();
        assert!((eq - 1.434695650819563).abs() < 1e-12);
    }

    proptest! {
        // I_x(a,1) = x^a and I_x(1,b) = 1 − (1−x)^b.
        #[test]
        fn beta_degenerate_forms(x in 0.01f64..0.99, a in 0.2f64..20.0) {
            let lhs = regularized_beta(x, a, 1.0);
            prop_assert!((lhs - x.powf(a)).abs() < 1e-12);
            let lhs = regularized_beta(x, 1.0, a);
            prop_assert!((lhs - (1.0 - (1.0 - x).powf(a))).abs() < 1e-12);
        }

        // Symmetry I_x(a,b) = 1 − I_{1−x}(b,a).
        #[test]
        fn beta_symmetry(x in 0.01f64..0.99, a in 0.2f64..30.0, b in 0.2f64..30.0) {
            let lhs = regularized_beta(x, a, b);
            let rhs = 1.0 - regularized_beta(1.0 - x, b, a);
            prop_assert!((lhs - rhs).abs() < 1e-11);
        }

        // Monotone in x.
        #[test]
        fn beta_monotone(x in 0.02f64..0.95, a in 0.5f64..10.0, b in 0.5f64..10.0) {
            prop_assert!(regularized_beta(x + 0.01, a, b) >= regularized_beta(x, a, b) - 1e-13);
        }
    }
}
