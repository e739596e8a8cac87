//! Quadratic characters, prime sums and the explicit-formula weight.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{LinnikError, Result};
use crate::lattice::is_squarefree;

/// Default absolute constants in the first-moment exponent `U(n, m)`.
pub const DEFAULT_C1: f64 = 48.0;
pub const DEFAULT_C2: f64 = 600.0;

/// Ceiling for [`PrimeSieve`].
pub const SIEVE_CEILING: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArithmeticParams {
    pub d: u64,
    pub x: f64,
    pub lambda0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl ArithmeticParams {
    pub fn new(d: u64, x: f64) -> Result<Self> {
        if d == 0 {
            return Err(LinnikError::domain("d", 0.0, "d ≥ 1"));
        }
        if !(x >= 2.0) {
            return Err(LinnikError::domain("x", x, "x ≥ 2"));
        }
        Ok(ArithmeticParams {
            d,
            x,
            lambda0: lambda0_solve(),
            c1: DEFAULT_C1,
            c2: DEFAULT_C2,
        })
    }
}

/// Jacobi symbol `(a | m)` for odd `m ≥ 1`.
pub fn jacobi(a: u64, m: u64) -> i8 {
    debug_assert!(m % 2 == 1);
    let mut a = a % m;
    let mut m = m;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && matches!(m % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut m);
        a %= m;
    }
    if m == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol `(a | m)` for `m ≥ 1`.
pub fn kronecker(a: i64, m: u64) -> i8 {
    assert!(m >= 1, "Kronecker symbol needs m ≥ 1");
    let tz = m.trailing_zeros();
    let mut sign = 1i8;
    if tz > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a | 2) = +1 for a ≡ ±1, −1 for a ≡ ±3 (mod 8)
        if tz % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            sign = -1;
        }
    }
    let odd = m >> tz;
    if odd == 1 {
        return sign;
    }
    sign * jacobi(a.rem_euclid(odd as i64) as u64, odd)
}

/// `χ_{−d}(m) = (−d | m)`.
///
/// Completely multiplicative in `m`. The period divides `4d` except when
/// `d ≡ 1 (mod 4)`: then `−d ≡ 3 (mod 4)` and only the restriction to odd
/// `m` is periodic.
pub fn kronecker_chi(d: u64, m: u64) -> i8 {
    kronecker(-(d as i64), m)
}

/// Whether `disc` is the discriminant of a quadratic field.
pub fn is_fundamental_discriminant(disc: i64) -> bool {
    if disc == 0 || disc == 1 {
        return false;
    }
    match disc.rem_euclid(4) {
        1 => is_squarefree(disc.unsigned_abs()),
        0 => {
            let k = disc / 4;
            matches!(k.rem_euclid(4), 2 | 3) && is_squarefree(k.unsigned_abs())
        }
        _ => false,
    }
}

fn lambda0_residual(l: f64) -> f64 {
    (-l).exp() - l - 0.5 * l * l
}

/// Root of `e^{−λ} = λ + λ²/2` in `(0, 1)` by bisection.
pub fn lambda0_bisect() -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if lambda0_residual(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Root of `e^{−λ} = λ + λ²/2` by Newton's method, falling back to the
/// bracket midpoint whenever a step leaves `(0, 1)`.
pub fn lambda0_solve() -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut l = 0.5;
    for _ in 0..100 {
        let f = lambda0_residual(l);
        if f > 0.0 {
            lo = l;
        } else {
            hi = l;
        }
        let df = -(-l).exp() - 1.0 - l;
        let mut next = l - f / df;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - l).abs() < 1e-16 {
            return next;
        }
        l = next;
    }
    l
}

/// `W(n, x) = n^{−λ₀/log x} · log(x/n) / log x` for `2 ≤ n ≤ x`.
pub fn weight_w(n_arg: f64, x: f64) -> Result<f64> {
    if !(n_arg >= 2.0) {
        return Err(LinnikError::domain("n", n_arg, "[2, x]"));
    }
    if n_arg > x {
        return Err(LinnikError::domain("n", n_arg, "[2, x]"));
    }
    Ok(weight_with(lambda0_solve(), n_arg, x))
}

pub(crate) fn weight_with(lambda0: f64, n_arg: f64, x: f64) -> f64 {
    let lx = x.ln();
    (-lambda0 * n_arg.ln() / lx).exp() * (x / n_arg).ln() / lx
}

/// Odd-only bit-packed sieve of Eratosthenes.
#[derive(Debug, Clone)]
pub struct PrimeSieve {
    limit: u64,
    // bit i ↔ 2i + 1 is composite
    composite: Vec<u64>,
}

impl PrimeSieve {
    pub fn new(limit: u64) -> Result<Self> {
        if limit > SIEVE_CEILING {
            return Err(LinnikError::CeilingExceeded {
                n: limit,
                ceiling: SIEVE_CEILING,
            });
        }
        let slots = (limit / 2 + 1) as usize;
        let mut composite = vec![0u64; slots.div_ceil(64)];
        composite[0] |= 1; // 1 is not prime
        let mut p = 3u64;
        while p * p <= limit {
            let i = (p / 2) as usize;
            if composite[i / 64] >> (i % 64) & 1 == 0 {
                let mut q = p * p;
                while q <= limit {
                    let j = (q / 2) as usize;
                    composite[j / 64] |= 1 << (j % 64);
                    q += 2 * p;
                }
            }
            p += 2;
        }
        Ok(PrimeSieve { limit, composite })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_prime(&self, n: u64) -> bool {
        if n > self.limit {
            panic!("{n} is beyond the sieve limit {}", self.limit);
        }
        match n {
            0 | 1 => false,
            2 => true,
            _ if n % 2 == 0 => false,
            _ => {
                let i = (n / 2) as usize;
                self.composite[i / 64] >> (i % 64) & 1 == 0
            }
        }
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        let odd = (1..=self.limit / 2)
            .map(|i| 2 * i + 1)
            .filter(move |&n| n <= self.limit && self.is_prime(n));
        (self.limit >= 2).then_some(2).into_iter().chain(odd)
    }
}

/// `Σ_{p ≤ x} (1 + χ_{−d}(p)) / p`.
pub fn prime_sum_chi(x: f64, d: u64) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(LinnikError::domain("x", x, "x ≥ 2"));
    }
    let sieve = PrimeSieve::new(x.floor() as u64)?;
    Ok(prime_sum_chi_with(&sieve, d))
}

/// [`prime_sum_chi`] over every prime of a prebuilt sieve.
pub fn prime_sum_chi_with(sieve: &PrimeSieve, d: u64) -> f64 {
    sieve
        .primes()
        .map(|p| (1.0 + kronecker_chi(d, p) as f64) / p as f64)
        .sum()
}

/// Partial Dirichlet series for `L(1, χ_{−d})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LPartialSum {
    pub d: u64,
    pub cutoff: u64,
    pub value: f64,
    /// Abel-summation bound on the omitted tail.
    pub tail_bound: f64,
    pub fundamental: bool,
}

/// `Σ_{m ≤ cutoff} χ_{−d}(m) / m`.
///
/// The tail is bounded by `2B/(cutoff + 1)`, with `B` the largest partial
/// character sum over one period `4d`. For `d ≡ 1 (mod 4)` the symbol is not
/// periodic and the bound is reported as `+∞`.
pub fn l_one_chi(d: u64, cutoff: u64) -> Result<LPartialSum> {
    if d == 0 {
        return Err(LinnikError::domain("d", 0.0, "d ≥ 1"));
    }
    if cutoff < 1000 {
        return Err(LinnikError::domain("cutoff", cutoff as f64, "cutoff ≥ 1000"));
    }
    let mut value = 0.0;
    // Summed from the small end: later terms are below the rounding of the
    // running sum anyway.
    for m in 1..=cutoff {
        let c = kronecker_chi(d, m);
        if c != 0 {
            value += c as f64 / m as f64;
        }
    }
    let period = 4 * d;
    let mut run = 0i64;
    let mut worst = 0i64;
    for m in 1..=period {
        run += kronecker_chi(d, m) as i64;
        worst = worst.max(run.abs());
    }
    let tail_bound = if run == 0 && d % 4 != 1 {
        2.0 * worst as f64 / (cutoff + 1) as f64
    } else {
        f64::INFINITY
    };
    Ok(LPartialSum {
        d,
        cutoff,
        value,
        tail_bound,
        fundamental: is_fundamental_discriminant(-(d as i64)),
    })
}

/// `M = σ^{−1/2} exp(−2 log n / log log n)`, the split between small and
/// large degrees.
pub fn threshold_m(n: f64, sigma: f64) -> Result<f64> {
    if !(n >= 16.0) {
        return Err(LinnikError::domain("n", n, "n ≥ 16"));
    }
    if !(sigma > 0.0 && sigma < 4.0 * PI) {
        return Err(LinnikError::domain("sigma", sigma, "(0, 4π)"));
    }
    let ln = n.ln();
    Ok(sigma.powf(-0.5) * (-2.0 * ln / ln.ln()).exp())
}

fn u_ratio(n: f64, m: f64) -> Result<f64> {
    if !(n >= 16.0) {
        return Err(LinnikError::domain("n", n, "n ≥ 16"));
    }
    if !(m >= 2.0) {
        return Err(LinnikError::domain("m", m, "m ≥ 2"));
    }
    Ok((0.5 * n.ln() / m.ln()).max(1.0))
}

/// `U(n, m) = C₁ t e^{C₂ t}` with `t = max(1, log n / (2 log m))`.
///
/// Overflows to `+∞` for the default constants once `t ≳ 1.2`; see
/// [`ln_u_bound`].
pub fn u_bound(n: f64, m: f64, c1: f64, c2: f64) -> Result<f64> {
    let t = u_ratio(n, m)?;
    Ok(c1 * t * (c2 * t).exp())
}

/// `log U(n, m)`, finite for all admissible inputs.
pub fn ln_u_bound(n: f64, m: f64, c1: f64, c2: f64) -> Result<f64> {
    let t = u_ratio(n, m)?;
    Ok(c1.ln() + t.ln() + c2 * t)
}
