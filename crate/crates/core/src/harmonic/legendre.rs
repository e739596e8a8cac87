use crate::error::{LinnikError, Result};

/// `P_0(t), …, P_{m_max}(t)` by the three-term recurrence
/// `(m+1) P_{m+1} = (2m+1) t P_m − m P_{m−1}`.
pub fn legendre_eval(m_max: usize, t: f64) -> Result<Vec<f64>> {
    if !(t.abs() <= 1.0) {
        return Err(LinnikError::domain("t", t, "[-1, 1]"));
    }
    Ok(legendre_table(m_max, t))
}

pub(crate) fn legendre_table(m_max: usize, t: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(m_max + 1);
    p.push(1.0);
    if m_max >= 1 {
        p.push(t);
    }
    for m in 1..m_max {
        let mf = m as f64;
        let next = ((2.0 * mf + 1.0) * t * p[m] - mf * p[m - 1]) / (mf + 1.0);
        p.push(next);
    }
    p
}

/// Single `P_m(t)`, no table kept.
pub fn legendre(m: usize, t: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, t);
    if m == 0 {
        return 1.0;
    }
    for k in 1..m {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * t * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};

    /// Coefficients of `P_m` from Rodrigues' formula
    /// `P_m = (1/(2^m m!)) dᵐ/dtᵐ (t² − 1)ᵐ`, exactly.
    fn rodrigues(m: usize) -> Vec<BigRational> {
        // (t² − 1)^m = Σ_k C(m,k) (−1)^{m−k} t^{2k}
        let mut coeffs = vec![BigRational::zero(); 2 * m + 1];
        let mut binom = BigInt::one();
        for k in 0..=m {
            let sign = if (m - k) % 2 == 0 { 1 } else { -1 };
            coeffs[2 * k] = BigRational::from(binom.clone() * sign);
            binom = binom * BigInt::from(m - k) / BigInt::from(k + 1);
        }
        for _ in 0..m {
            coeffs = (1..coeffs.len())
                .map(|i| coeffs[i].clone() * BigRational::from(BigInt::from(i)))
                .collect();
        }
        let mut norm = BigInt::one();
        for k in 1..=m {
            norm *= BigInt::from(2 * k);
        }
        let norm = BigRational::from(norm);
        coeffs.into_iter().map(|c| c / norm.clone()).collect()
    }

    fn horner(coeffs: &[BigRational], t: f64) -> f64 {
        coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + c.to_f64().unwrap())
    }

    #[test]
    fn endpoint_and_low_degree() {
        assert!(legendre_eval(50, 1.0).unwrap().iter().all(|&v| v == 1.0));
        assert_eq!(legendre_eval(2, 0.0).unwrap()[2], -0.5);
        assert!(legendre_eval(3, 1.5).is_err());
        assert!(legendre_eval(3, f64::NAN).is_err());
    }

    #[test]
    fn matches_rodrigues() {
        let p = legendre_eval(10, 0.3).unwrap();
        assert!((p[10] - horner(&rodrigues(10), 0.3)).abs() < 1e-12);
        for m in 0..15 {
            for &t in &[-0.9, -0.2, 0.0, 0.45, 0.77] {
                assert!((legendre(m, t) - horner(&rodrigues(m), t)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bounded_by_one() {
        for i in 0..=200 {
            let t = -1.0 + i as f64 / 100.0;
            assert!(legendre_eval(300, t).unwrap().iter().all(|v| v.abs() <= 1.0 + 1e-12));
        }
    }
}
