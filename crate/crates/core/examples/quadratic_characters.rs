//! The character χ₋d, prime sums, partial L(1, χ₋d) and the weight W(n, x).

use linnik::arithmetic::{
    is_fundamental_discriminant, kronecker_chi, l_one_chi, lambda0_solve, prime_sum_chi,
    threshold_m, weight_w,
};

fn main() -> linnik::Result<()> {
    let l0 = lambda0_solve();
    println!("λ₀ = {l0:.15}");

    for d in [3u64, 4, 7, 8, 20, 23] {
        let chi: Vec<i8> = (1..=12).map(|m| kronecker_chi(d, m)).collect();
        let l = l_one_chi(d, 200_000)?;
        println!(
            "d = {d:>2} fundamental {:<5} χ(1..12) = {chi:?}  L(1) ≈ {:.6} (tail ≤ {:.1e})  Σ(1+χ(p))/p to 10⁴ = {:.4}",
            is_fundamental_discriminant(-(d as i64)),
            l.value,
            l.tail_bound,
            prime_sum_chi(1e4, d)?
        );
    }

    let x = 1e6;
    for n in [2.0, 10.0, 1e3, 1e5, x] {
        println!("W({n:e}, {x:e}) = {:.6}", weight_w(n, x)?);
    }
    println!("M(n = 10⁶, σ = 0.1) = {:.6}", threshold_m(1e6, 0.1)?);
    Ok(())
}
