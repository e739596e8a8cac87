//! Haar-random rotations: the rotated pole is uniform on the sphere, so the
//! fraction landing in a cap matches its area fraction.

use linnik::geometry::{sample_rotation, stream_rng, CapSpec, Vec3};

fn main() -> linnik::Result<()> {
    let mut rng = stream_rng(2024, 0);
    let cap = CapSpec::new(Vec3::E3, 1.0)?;
    let samples = 200_000;
    let mut hits = 0usize;
    let mut worst_defect = 0.0f64;
    for _ in 0..samples {
        let g = sample_rotation(&mut rng);
        worst_defect = worst_defect.max(g.orthogonality_defect());
        if g.pole_image().dot(&cap.center) > cap.radius.cos() {
            hits += 1;
        }
    }
    let frac = hits as f64 / samples as f64;
    let sd = (cap.area_fraction() * (1.0 - cap.area_fraction()) / samples as f64).sqrt();
    println!("cap R = 1: hit fraction {frac:.5}, area fraction {:.5} (sd {sd:.5})", cap.area_fraction());
    println!("largest |gᵀg − I| entry: {worst_defect:.2e}");
    Ok(())
}
