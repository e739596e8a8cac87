//! Lists the solutions of x² + y² + z² = n and how n is classified.
//!
//! ```text
//! cargo run --example enumerate -- 101
//! ```

use linnik::lattice::{admissibility, cube_symmetries, enumerate_points, is_legendre_excluded};

fn main() -> linnik::Result<()> {
    let n: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(101);
    let config = enumerate_points(n)?;
    let flags = admissibility(n);

    println!("n = {n}: N_n = {}", config.count());
    println!(
        "squarefree {}, n mod 8 = {}, admissible {}, primitive solutions {}",
        flags.squarefree, flags.mod8, flags.admissible, flags.has_primitive
    );
    if config.is_empty() {
        println!("no points (Legendre obstruction: {})", is_legendre_excluded(n));
        return Ok(());
    }

    // Orbits of the 48 signed permutations partition the solution set.
    let group = cube_symmetries();
    let mut seen = std::collections::BTreeSet::new();
    let mut orbits = Vec::new();
    for p in &config.points {
        if seen.contains(p) {
            continue;
        }
        let orbit: std::collections::BTreeSet<_> =
            group.iter().map(|g| linnik::lattice::apply_symmetry(g, p)).collect();
        orbits.push((orbit.iter().next_back().copied().unwrap(), orbit.len()));
        seen.extend(orbit);
    }
    println!("{} orbits under the cube group:", orbits.len());
    for (rep, size) in orbits {
        println!("  ({:>3}, {:>3}, {:>3})  size {size}", rep.x, rep.y, rep.z);
    }
    Ok(())
}
