use linnik::geometry::CapSpec;
use linnik::harmonic::harmonic_variance;
use linnik::lattice::enumerate_points;
use linnik::mc::estimate_variance;

#[test]
fn std_error_scales_as_inverse_sqrt_samples() {
    let c = enumerate_points(389).unwrap();
    let cap = CapSpec::for_count_exponent(c.count(), 0.5).unwrap();
    let small = estimate_variance(&c, &cap, 20_000, 8).unwrap();
    let large = estimate_variance(&c, &cap, 80_000, 9).unwrap();
    let ratio = small.std_error / large.std_error;
    assert!((ratio - 2.0).abs() < 0.2, "ratio {ratio}");
}

#[test]
fn seeds_give_consistent_estimates() {
    let c = enumerate_points(101).unwrap();
    let cap = CapSpec::for_count_exponent(c.count(), 0.5).unwrap();
    let a = estimate_variance(&c, &cap, 30_000, 1).unwrap();
    let b = estimate_variance(&c, &cap, 30_000, 2).unwrap();
    assert_ne!(a.variance, b.variance);
    let se = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
    assert!((a.variance - b.variance).abs() < 4.0 * se);
}

#[test]
fn monte_carlo_agrees_with_spectrum_on_several_caps() {
    let c = enumerate_points(389).unwrap();
    for r in [0.2, 0.5, 1.2] {
        let cap = CapSpec::new(linnik::Vec3::E3, r).unwrap();
        let mc = estimate_variance(&c, &cap, 40_000, 3).unwrap();
        let sp = harmonic_variance(&c, &cap, 6000).unwrap();
        let gap = (mc.variance - sp.variance_spectral).abs();
        assert!(gap <= 3.0 * (mc.std_error + sp.truncation_bound), "R = {r}: {mc:?} {sp:?}");
    }
}
