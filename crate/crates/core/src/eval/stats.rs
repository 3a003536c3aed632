use crate::{Error, Result};

/// `100 · (value − baseline) / baseline`.
pub fn relative_improvement(baseline: f64, value: f64) -> Result<f64> {
    if baseline.is_nan() || baseline <= 0.0 {
        return Err(Error::InvalidInput(format!("baseline must be positive, got {baseline}")));
    }
    Ok(100.0 * (value - baseline) / baseline)
}

/// Signed percentage with two decimals, e.g. `+5.88%` or `-9.68%`. A value
/// that rounds to zero prints as `+0.00%`.
pub fn format_improvement(percent: f64) -> String {
    let s = format!("{percent:+.2}%");
    if s == "-0.00%" {
        "+0.00%".to_string()
    } else {
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTestResult {
    pub t: f64,
    pub degrees_of_freedom: usize,
    pub p_two_tailed: f64,
}

/// Paired two-tailed t-test on `a − b`. A zero-variance difference gives
/// `t = 0, p = 1` when its mean is zero and `t = ±∞, p = 0` otherwise.
pub fn paired_t_test(a: &[f64], b: &[f64]) -> Result<TTestResult> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "paired samples differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::InvalidInput("a paired t-test needs at least two pairs".into()));
    }
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mean = d.iter().sum::<f64>() / n as f64;
    let var = d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let df = n - 1;
    if var == 0.0 {
        return Ok(if mean == 0.0 {
            TTestResult {
                t: 0.0,
                degrees_of_freedom: df,
                p_two_tailed: 1.0,
            }
        } else {
            TTestResult {
                t: f64::INFINITY.copysign(mean),
                degrees_of_freedom: df,
                p_two_tailed: 0.0,
            }
        });
    }
    let t = mean / (var.sqrt() / (n as f64).sqrt());
    let nu = df as f64;
    let p = incomplete_beta(nu / 2.0, 0.5, nu / (nu + t * t));
    Ok(TTestResult {
        t,
        degrees_of_freedom: df,
        p_two_tailed: p.clamp(0.0, 1.0),
    })
}

/// CDF of Student's t with `nu` degrees of freedom.
pub fn student_t_cdf(t: f64, nu: f64) -> f64 {
    if t.is_infinite() {
        return if t > 0.0 { 1.0 } else { 0.0 };
    }
    let tail = 0.5 * incomplete_beta(nu / 2.0, 0.5, nu / (nu + t * t));
    if t > 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Regularised incomplete beta `I_x(a, b)`.
fn incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = libm::lgamma(a + b) - libm::lgamma(a) - libm::lgamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

/// Continued fraction for the incomplete beta, modified Lentz evaluation.
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-15;
    let (qab, qap, qam) = (a + b, a + 1.0, a - 1.0);
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=300 {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn improvements() {
        assert_eq!(format_improvement(relative_improvement(0.868, 0.919).unwrap()), "+5.88%");
        assert_eq!(format_improvement(relative_improvement(0.868, 0.784).unwrap()), "-9.68%");
        assert_eq!(format_improvement(relative_improvement(0.5, 0.5).unwrap()), "+0.00%");
        assert_eq!(format_improvement(-0.001), "+0.00%");
        assert!(relative_improvement(0.0, 0.5).is_err());
    }

    #[test]
    fn t_test_values() {
        let r = paired_t_test(&[1.0, 2.0, 3.0, 4.0], &[0.0; 4]).unwrap();
        assert!((r.t - 15f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.degrees_of_freedom, 3);
        // two-tailed p for t = sqrt(15), 3 df
        assert!((r.p_two_tailed - 0.030_466_291_662_170_96).abs() < 1e-9, "{}", r.p_two_tailed);
        let same = paired_t_test(&[0.3, 0.4], &[0.3, 0.4]).unwrap();
        assert_eq!((same.t, same.p_two_tailed), (0.0, 1.0));
        let shift = paired_t_test(&[1.5; 4], &[0.5; 4]).unwrap();
        assert_eq!((shift.t, shift.p_two_tailed), (f64::INFINITY, 0.0));
        assert!(paired_t_test(&[1.0], &[0.0]).is_err());
    }

    #[test]
    fn t_cdf_reference_points() {
        // one degree of freedom is Cauchy: F(t) = 1/2 + atan(t)/π
        for t in [-3.0, -0.5, 0.0, 0.7, 12.0] {
            let cauchy = 0.5 + f64::atan(t) / std::f64::consts::PI;
            assert!((student_t_cdf(t, 1.0) - cauchy).abs() < 1e-12);
        }
        // two degrees of freedom: F(t) = 1/2 + t / (2 sqrt(2 + t²))
        for t in [-2.0f64, 0.3, 5.0] {
            let exact = 0.5 + t / (2.0 * (2.0 + t * t).sqrt());
            assert!((student_t_cdf(t, 2.0) - exact).abs() < 1e-12);
        }
    }
}
