//! Exact identities for λ(p^k) = (α^{k+1} − α^{−k−1}) / (α − α^{−1}).

use linnik::exact::{
    chebyshev_lambda, f2_coeff, hecke_power_expansion, hecke_power_expansion_by_division,
    lambda_one_coefficient, petersson_main_coeff, s_beta, s_beta_within_unit,
};

fn main() {
    println!("λ(p^3) = {}", chebyshev_lambda(3));
    println!("λ(p)^4 = {}", chebyshev_lambda(1).pow(4));

    let e = hecke_power_expansion(6);
    println!("λ(p)^6 coefficients {:?}", e.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    assert_eq!(e, hecke_power_expansion_by_division(6));
    assert!(e.verify());

    println!("β   λ(1)-coeff of λ(p)^β   Petersson main term");
    for beta in 0..=10u32 {
        let c = lambda_one_coefficient(&chebyshev_lambda(1).pow(beta));
        println!("{beta:>2}  {c:>20}   {}", petersson_main_coeff(beta));
    }

    println!("β  f2_coeff  S_β");
    for beta in 0..=10u32 {
        println!("{beta:>2}  {:>8}  {}", f2_coeff(beta), s_beta(beta));
    }
    let all = (0..=200).all(s_beta_within_unit);
    println!("|S_β| ≤ 1 for β ≤ 200: {all}");
}
