use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;

/// Largest `n` for which [`hecke_power_expansion`] is checked routinely.
pub const HECKE_MAX: u32 = 200;
/// Largest `n` for [`lambda_square_power_expansion`].
pub const LAMBDA_SQUARE_MAX: u32 = 100;
/// Largest `β` for [`s_beta`].
pub const S_BETA_MAX: u32 = 1000;

/// Reference values `S_0, …, S_10` as `(numerator, denominator)`.
pub const REFERENCE_S_BETA: [(i64, i64); 11] = [
    (1, 1),
    (0, 1),
    (1, 2),
    (-1, 3),
    (-3, 8),
    (-11, 30),
    (-7, 48),
    (-33, 280),
    (-181, 5760),
    (-2113, 45360),
    (-2843, 403200),
];

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u32, k: i64) -> BigInt {
    if k < 0 || k > n as i64 {
        return BigInt::zero();
    }
    let k = (k as u32).min(n - k as u32);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `λ(p^k) = Σ_{j=0}^{k} α^{k−2j}`.
pub fn chebyshev_lambda(k: u32) -> LaurentPoly {
    LaurentPoly::from_terms((0..=k).map(|j| (k as i64 - 2 * j as i64, BigInt::one())))
}

/// Coordinates of a symmetric Laurent polynomial in the basis
/// `{λ(p^k)}_{k ≥ 0}`, found by repeatedly cancelling the leading term.
///
/// Returns `None` when the input is not symmetric under `α ↦ α⁻¹`.
pub fn chebyshev_coordinates(poly: &LaurentPoly) -> Option<BTreeMap<u32, BigInt>> {
    if !poly.is_symmetric() {
        return None;
    }
    let mut rest = poly.clone();
    let mut out = BTreeMap::new();
    while let Some(top) = rest.max_exponent() {
        if top < 0 {
            return None;
        }
        let c = rest.coeff(top);
        rest = &rest - &chebyshev_lambda(top as u32).scale(&c);
        out.insert(top as u32, c);
    }
    Some(out)
}

/// Coefficient of `λ(1)` in the `λ(p^k)` basis: `[α⁰] − [α²]`.
///
/// `λ(p^k)` contains `α⁰` iff `k` is even and `α²` iff `k ≥ 2` is even, so
/// only `λ(1)` contributes to the difference.
pub fn lambda_one_coefficient(poly: &LaurentPoly) -> BigInt {
    poly.coeff(0) - poly.coeff(2)
}

/// `λ(p)^n = Σ_i c_i λ(p^{n−2i})`, `i = 0..=⌊n/2⌋`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionCoeffs {
    pub degree: u32,
    pub coeffs: Vec<BigInt>,
}

impl ExpansionCoeffs {
    /// Right-hand side as a Laurent polynomial.
    pub fn to_poly(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &chebyshev_lambda(self.degree - 2 * i as u32).scale(c);
        }
        acc
    }

    /// Exact check of `(α + α⁻¹)^n = Σ_i c_i λ(p^{n−2i})`.
    pub fn verify(&self) -> bool {
        self.to_poly() == chebyshev_lambda(1).pow(self.degree)
    }

    /// Both sides at `α = 1`, where `λ(p^k) = k + 1`: `2^n = Σ c_i (n−2i+1)`.
    pub fn verify_at_one(&self) -> bool {
        let rhs: BigInt = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigInt::from(self.degree - 2 * i as u32 + 1))
            .sum();
        rhs == BigInt::one() << self.degree as usize
    }
}

/// Closed form `c_i = C(n, i) − C(n, i−1)`.
pub fn hecke_power_expansion(n: u32) -> ExpansionCoeffs {
    let coeffs = (0..=(n / 2) as i64)
        .map(|i| binomial(n, i) - binomial(n, i - 1))
        .collect();
    ExpansionCoeffs { degree: n, coeffs }
}

/// The same coefficients obtained by peeling `(α + α⁻¹)^n` in the
/// `λ(p^k)` basis, independent of the binomial formula.
pub fn hecke_power_expansion_by_division(n: u32) -> ExpansionCoeffs {
    let coords = chebyshev_coordinates(&chebyshev_lambda(1).pow(n)).expect("symmetric");
    let coeffs = (0..=n / 2)
        .map(|i| coords.get(&(n - 2 * i)).cloned().unwrap_or_default())
        .collect();
    ExpansionCoeffs { degree: n, coeffs }
}

/// Main-term coefficient `(2/(β+2)) C(β, β/2)` for even `β`, `0` for odd.
pub fn petersson_main_coeff(beta: u32) -> BigRational {
    if beta % 2 == 1 {
        return BigRational::zero();
    }
    BigRational::new(
        BigInt::from(2) * binomial(beta, (beta / 2) as i64),
        BigInt::from(beta + 2),
    )
}

/// `λ(p²)^n` in the basis `{λ(p^{2k})}`, keyed by `k`.
pub fn lambda_square_power_expansion(n: u32) -> BTreeMap<u32, BigInt> {
    let coords = chebyshev_coordinates(&chebyshev_lambda(2).pow(n)).expect("symmetric");
    coords
        .into_iter()
        .map(|(k, c)| {
            debug_assert!(k % 2 == 0, "odd-index term in λ(p²)^n");
            (k / 2, c)
        })
        .collect()
}

/// `Σ_{k=0}^{β} (−1)^k C(β, k) C(k, ⌊k/2⌋)`.
pub fn f2_coeff(beta: u32) -> BigInt {
    (0..=beta)
        .map(|k| {
            let t = binomial(beta, k as i64) * binomial(k, (k / 2) as i64);
            if k % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

/// Signed `S_β = Σ_{k=0}^{β} (−1)^k / ((β−k)! (⌊k/2⌋!)²)`.
pub fn s_beta(beta: u32) -> BigRational {
    // Every denominator divides β! (⌊β/2⌋!)², so sum over that and reduce once.
    let half = factorial(beta / 2);
    let denom = factorial(beta) * &half * &half;
    BigRational::new(s_beta_numerator(beta, &half), denom)
}

fn s_beta_numerator(beta: u32, half_factorial: &BigInt) -> BigInt {
    let mut falling = BigInt::one(); // β!/(β−k)!
    let mut acc = BigInt::zero();
    let mut floor_fact = BigInt::one(); // ⌊k/2⌋!
    for k in 0..=beta {
        if k > 0 {
            falling *= beta - k + 1;
            if k % 2 == 0 {
                floor_fact *= k / 2;
            }
        }
        let ratio = half_factorial / &floor_fact;
        let term = &falling * &ratio * &ratio;
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `β! · S_β = Σ_k (−1)^k C(β, k) k! / (⌊k/2⌋!)²`, computed as an integer
/// directly from binomials.
pub fn s_beta_scaled(beta: u32) -> BigInt {
    (0..=beta)
        .map(|k| {
            let half = factorial(k / 2);
            let t = binomial(beta, k as i64) * factorial(k) / (&half * &half);
            if k % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

/// `|S_β| ≤ 1`.
pub fn s_beta_within_unit(beta: u32) -> bool {
    let s = s_beta(beta);
    s.numer().abs() <= *s.denom()
}

/// Number of compositions of `2N` into `r ≤ N − 1` even positive parts.
pub fn even_composition_count(n: u32) -> BigInt {
    // ways[r][s]: compositions of s into r even parts; parts are 2, 4, …
    let total = 2 * n as usize;
    let mut by_len = vec![BigInt::zero(); total + 1];
    by_len[0] = BigInt::one();
    let mut count = BigInt::zero();
    for _r in 1..n {
        let mut next = vec![BigInt::zero(); total + 1];
        for (s, ways) in by_len.iter().enumerate() {
            if ways.is_zero() {
                continue;
            }
            for part in (2..=total - s).step_by(2) {
                next[s + part] += ways;
            }
        }
        count += &next[total];
        by_len = next;
    }
    count
}

/// `2^{N−1}`.
pub fn even_composition_bound(n: u32) -> BigInt {
    BigInt::one() << (n.saturating_sub(1)) as usize
}

/// `β!`-scaled cross-check helper: `f2_coeff(β) / β!`.
pub fn f2_over_factorial(beta: u32) -> BigRational {
    BigRational::new(f2_coeff(beta), factorial(beta))
}
